//! Deterministic random generators for the verification suites.
//!
//! Every case derives its own stream cipher seed from the root seed and the
//! case index, so results are independent of thread count and scheduling.

use rand_chacha::ChaCha8Rng;
use rand::{Rng, SeedableRng};

use crate::arith::{rat, Rational};
use crate::forms::{FormClass, FormTerm, LogForm};
use crate::hochschild::{ChainClass, ChainElement, Tensor};
use crate::modpair::{ModulusPair, Monomial, Multidegree};

/// SplitMix64 finalizer; decorrelates consecutive indices.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn case_seed(root: u64, index: u64) -> u64 {
    mix(root ^ mix(index.wrapping_add(1)))
}

pub fn case_rng(root: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(case_seed(root, index))
}

pub fn random_pair(rng: &mut ChaCha8Rng, max_s: usize, max_t: usize, max_r: i64) -> ModulusPair {
    let s = rng.random_range(0..=max_s);
    let t = rng.random_range(0..=max_t);
    let r = (0..s).map(|_| rng.random_range(1..=max_r)).collect();
    ModulusPair::new(s, t, r).expect("generated parameters are valid")
}

/// Multidegree with x-components in `[-window, window]` and y-components in
/// `[0, window]`.
pub fn random_multidegree(rng: &mut ChaCha8Rng, pair: &ModulusPair, window: i64) -> Multidegree {
    let dx = (0..pair.s()).map(|_| rng.random_range(-window..=window)).collect();
    let dy = (0..pair.t()).map(|_| rng.random_range(0..=window)).collect();
    Multidegree::new(dx, dy)
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Rational {
    let mut n = 0;
    while n == 0 {
        n = rng.random_range(-3..=3);
    }
    let d = if rng.random_bool(0.25) { 2 } else { 1 };
    rat(n, d)
}

/// A single tensor whose componentwise exponent sums satisfy `class`
/// membership: exponents are drawn freely in a window, then the first
/// factor absorbs whatever correction the class floor requires.
pub fn random_tensor(
    rng: &mut ChaCha8Rng,
    pair: &ModulusPair,
    n: usize,
    window: i64,
    class: ChainClass,
) -> Tensor {
    assert!(class != ChainClass::Full, "generate into a bounded class");
    let factors = n + 1;
    let mut tensor: Tensor = (0..factors)
        .map(|_| {
            let i = (0..pair.s()).map(|_| rng.random_range(-window..=window)).collect();
            let k = (0..pair.t()).map(|_| rng.random_range(0..=window)).collect();
            Monomial::new(i, k)
        })
        .collect();
    for j in 0..pair.s() {
        let floor = if class == ChainClass::P { 0 } else { pair.pole_bound(j) };
        let sum: i64 = tensor.iter().map(|m| m.i[j]).sum();
        if sum < floor {
            tensor[0].i[j] += floor - sum;
        }
    }
    tensor
}

pub fn random_chain(
    rng: &mut ChaCha8Rng,
    pair: &ModulusPair,
    n: usize,
    window: i64,
    class: ChainClass,
) -> ChainElement {
    let mut out = ChainElement::zero(pair.clone(), n);
    for _ in 0..rng.random_range(1..=3) {
        let t = random_tensor(rng, pair, n, window, class);
        let c = random_coeff(rng);
        out.add_term(t, c);
    }
    out
}

/// A form with 1 to 3 terms of exterior degree `q`, each inside `class`.
pub fn random_form(
    rng: &mut ChaCha8Rng,
    pair: &ModulusPair,
    q: usize,
    window: i64,
    class: FormClass,
) -> LogForm {
    assert!(class != FormClass::Full, "generate into a bounded class");
    assert!(q <= pair.top_degree());
    let mut out = LogForm::zero(pair.clone(), q);
    for _ in 0..rng.random_range(1..=3) {
        // Choose q slots out of the s + t available ones.
        let mut universe: Vec<(u8, usize)> = (0..pair.s())
            .map(|j| (0u8, j))
            .chain((0..pair.t()).map(|l| (1u8, l)))
            .collect();
        for pos in 0..q {
            let pick = rng.random_range(pos..universe.len());
            universe.swap(pos, pick);
        }
        let mut dlog: Vec<usize> = Vec::new();
        let mut dy: Vec<usize> = Vec::new();
        for &(kind, idx) in &universe[..q] {
            if kind == 0 {
                dlog.push(idx);
            } else {
                dy.push(idx);
            }
        }
        dlog.sort_unstable();
        dy.sort_unstable();
        let i = (0..pair.s())
            .map(|j| {
                let floor = if class == FormClass::POmega { 0 } else { pair.pole_bound(j) };
                rng.random_range(floor..=floor + window)
            })
            .collect();
        let k = (0..pair.t()).map(|_| rng.random_range(0..=window)).collect();
        let term = FormTerm { monomial: Monomial::new(i, k), dlog, dy };
        out.add_term(term, random_coeff(rng));
    }
    out
}

/// Distributes `deg` over `n + 1` factors so the tensor is homogeneous of
/// that exact multidegree and lies in the bounded-pole chain class.
pub fn homogeneous_tensor(
    rng: &mut ChaCha8Rng,
    pair: &ModulusPair,
    n: usize,
    deg: &Multidegree,
) -> Tensor {
    let factors = n + 1;
    let mut tensor: Tensor =
        (0..factors).map(|_| Monomial::new(vec![0; pair.s()], vec![0; pair.t()])).collect();
    for j in 0..pair.s() {
        let mut rem = deg.dx[j];
        for f in 0..factors - 1 {
            let part = rem.signum() * rng.random_range(0..=rem.abs().min(2));
            tensor[f].i[j] = part;
            rem -= part;
        }
        tensor[factors - 1].i[j] = rem;
    }
    for l in 0..pair.t() {
        let mut rem = deg.dy[l];
        for f in 0..factors - 1 {
            let part = rng.random_range(0..=rem);
            tensor[f].k[l] = part;
            rem -= part;
        }
        tensor[factors - 1].k[l] = rem;
    }
    tensor
}
