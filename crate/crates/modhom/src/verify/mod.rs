//! Randomized and bounded-exhaustive verification of the structural
//! theorems: operator identities, membership closure, comparison-map round
//! trips, differential structure, dual-route cyclic dimensions, repletion
//! splittings, and the homology probe.
//!
//! Every case is a pure function of the configuration and its index; suites
//! fan out over a thread pool but reports are byte-identical regardless of
//! thread count.

pub mod gen;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::IntMatrix;
use crate::forms::{basis_of, FormClass, LogForm};
use crate::hochschild::{hkr_eps, ChainClass, ChainElement};
use crate::homology::{
    cyclic_dims_bicomplex, cyclic_dims_formula, hkr_cycle_probe, CyclicVariant, GradedComplex,
    ProbeOutcome,
};
use crate::modpair::{ModulusPair, Monomial, Multidegree};
use crate::monoids::{replete_bar_predicate, FgAbMonoid, MonoidMap, RepletionIso};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

/// Knobs shared by all suites.  The windows bound exponents of generated
/// objects; sizes bound the modulus pairs that get drawn.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: u64,
    pub max_s: usize,
    pub max_t: usize,
    pub max_r: i64,
    pub max_n: usize,
    pub exponent_window: i64,
    pub multidegree_window: i64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 17,
            samples: 200,
            max_s: 2,
            max_t: 2,
            max_r: 3,
            max_n: 4,
            exponent_window: 2,
            multidegree_window: 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteStatus {
    Pass,
    Fail,
    Skipped,
}

/// One failed case, addressable for replay: `run_case` with the same
/// configuration and index reproduces it exactly.
#[derive(Clone, Debug, Serialize)]
pub struct FailureRecord {
    pub case: u64,
    pub seed: u64,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub status: SuiteStatus,
    pub cases: u64,
    pub failures: Vec<FailureRecord>,
    #[serde(skip)]
    pub elapsed_secs: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.status != SuiteStatus::Fail
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Closure,
    Derham,
    HkrRoundtrip,
    CyclicOracle,
    Repletion,
    Probe,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Identities,
        Suite::Closure,
        Suite::Derham,
        Suite::HkrRoundtrip,
        Suite::CyclicOracle,
        Suite::Repletion,
        Suite::Probe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Closure => "closure",
            Suite::Derham => "derham",
            Suite::HkrRoundtrip => "hkr_roundtrip",
            Suite::CyclicOracle => "cyclic_oracle",
            Suite::Repletion => "repletion",
            Suite::Probe => "probe",
        }
    }

    /// Suites whose checks lean on facts the identities suite establishes.
    fn depends_on_identities(self) -> bool {
        matches!(self, Suite::HkrRoundtrip | Suite::CyclicOracle | Suite::Probe)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, VerifyError> {
        Suite::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
    }
}

/// Runs one suite, fanning cases out over the current rayon pool.  Failures
/// come back ordered by case index.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> SuiteReport {
    let start = Instant::now();
    let failures: Vec<FailureRecord> = (0..cfg.samples)
        .into_par_iter()
        .filter_map(|index| run_case(suite, cfg, index))
        .collect();
    SuiteReport {
        suite: suite.name().to_string(),
        status: if failures.is_empty() { SuiteStatus::Pass } else { SuiteStatus::Fail },
        cases: cfg.samples,
        failures,
        elapsed_secs: start.elapsed().as_secs_f64(),
    }
}

/// Runs every suite.  If the operator identities fail there is no point
/// interpreting the comparison-map or homology suites, so those are skipped.
pub fn run_all(cfg: &SuiteConfig) -> Vec<SuiteReport> {
    let identities = run_suite(Suite::Identities, cfg);
    let identities_ok = identities.passed();
    let mut out = vec![identities];
    for suite in Suite::ALL.into_iter().skip(1) {
        if suite.depends_on_identities() && !identities_ok {
            out.push(SuiteReport {
                suite: suite.name().to_string(),
                status: SuiteStatus::Skipped,
                cases: 0,
                failures: Vec::new(),
                elapsed_secs: 0.0,
            });
        } else {
            out.push(run_suite(suite, cfg));
        }
    }
    out
}

/// Runs a single case; `None` means it passed.  This is the replay entry
/// point for any reported failure.
pub fn run_case(suite: Suite, cfg: &SuiteConfig, index: u64) -> Option<FailureRecord> {
    let mut rng = gen::case_rng(cfg.seed, index);
    let outcome = match suite {
        Suite::Identities => case_identities(&mut rng, cfg),
        Suite::Closure => case_closure(&mut rng, cfg),
        Suite::Derham => case_derham(&mut rng, cfg),
        Suite::HkrRoundtrip => case_hkr_roundtrip(&mut rng, cfg),
        Suite::CyclicOracle => case_cyclic_oracle(&mut rng, cfg),
        Suite::Repletion => case_repletion(&mut rng, cfg),
        Suite::Probe => case_probe(&mut rng, cfg),
    };
    outcome.err().map(|detail| FailureRecord {
        case: index,
        seed: gen::case_seed(cfg.seed, index),
        detail,
    })
}

fn case_identities(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Result<(), String> {
    let pair = gen::random_pair(rng, cfg.max_s, cfg.max_t, cfg.max_r);
    let n = rng.random_range(1..=cfg.max_n);
    let z = gen::random_chain(rng, &pair, n, cfg.exponent_window, ChainClass::M);
    if !z.hochschild_b().hochschild_b().is_zero() {
        return Err(format!("b^2 != 0 on {pair} chain {z}"));
    }
    if !z.connes_b().connes_b().is_zero() {
        return Err(format!("B^2 != 0 on {pair} chain {z}"));
    }
    let anti = z.hochschild_b().connes_b().add(&z.connes_b().hochschild_b());
    if !anti.is_zero() {
        return Err(format!("bB + Bb != 0 on {pair} chain {z}"));
    }
    let mut rotated = z.clone();
    for _ in 0..=n {
        rotated = rotated.cyclic_t();
    }
    if rotated != z {
        return Err(format!("t^(n+1) != id on {pair} chain {z}"));
    }
    if n >= 2 {
        let j = rng.random_range(1..=n);
        let i = rng.random_range(0..j);
        if z.face(j).face(i) != z.face(i).face(j - 1) {
            return Err(format!("d_{i} d_{j} != d_{} d_{i} on {pair} chain {z}", j - 1));
        }
    }
    let i = rng.random_range(0..=n);
    if z.degeneracy(i).face(i) != z {
        return Err(format!("d_{i} s_{i} != id on {pair} chain {z}"));
    }
    Ok(())
}

fn chain_class_of(rng: &mut ChaCha8Rng) -> ChainClass {
    if rng.random_bool(0.5) {
        ChainClass::P
    } else {
        ChainClass::M
    }
}

fn case_closure(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Result<(), String> {
    let pair = gen::random_pair(rng, cfg.max_s, cfg.max_t, cfg.max_r);
    let n = rng.random_range(1..=cfg.max_n);
    let class = chain_class_of(rng);
    let z = gen::random_chain(rng, &pair, n, cfg.exponent_window, class);
    let ops: [(&str, ChainElement); 3] =
        [("b", z.hochschild_b()), ("B", z.connes_b()), ("t", z.cyclic_t())];
    for (name, image) in ops {
        if image.classify() > class {
            return Err(format!("{name} leaves {class}: {z} maps to {image}"));
        }
    }
    let i = rng.random_range(0..=n);
    if z.face(i).classify() > class || z.degeneracy(i).classify() > class {
        return Err(format!("face or degeneracy {i} leaves {class} on {z}"));
    }
    // Products: the second factor is always ring-valued, the class of the
    // first bounds the product.
    let m = rng.random_range(0..=1);
    let w = gen::random_chain(rng, &pair, m, cfg.exponent_window, ChainClass::P);
    if z.shuffle(&w).classify() > class {
        return Err(format!("shuffle leaves {class}: {z} x {w}"));
    }
    let form_class = match class {
        ChainClass::P => FormClass::POmega,
        _ => FormClass::MOmega,
    };
    if z.hkr_e().classify() > form_class {
        return Err(format!("e leaves {form_class} on {z}"));
    }
    let q = rng.random_range(0..=pair.top_degree());
    let omega = gen::random_form(rng, &pair, q, cfg.exponent_window, form_class);
    if omega.de_rham_d().classify() > form_class {
        return Err(format!("d leaves {form_class} on {omega}"));
    }
    let chain_bound = match form_class {
        FormClass::POmega => ChainClass::P,
        _ => ChainClass::M,
    };
    let back = hkr_eps(&omega).map_err(|e| e.to_string())?;
    if back.classify() > chain_bound {
        return Err(format!("eps leaves the class of {omega}"));
    }
    Ok(())
}

fn case_derham(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Result<(), String> {
    let pair = gen::random_pair(rng, cfg.max_s, cfg.max_t, cfg.max_r);
    let top = pair.top_degree();
    let q = rng.random_range(0..=top);
    let omega = gen::random_form(rng, &pair, q, cfg.exponent_window, FormClass::MOmega);
    if !omega.de_rham_d().de_rham_d().is_zero() {
        return Err(format!("d^2 != 0 on {omega}"));
    }
    // Multidegree preservation, checked on a single term.
    if let Some((term, _)) = omega.terms().next() {
        let single = LogForm::from_term(pair.clone(), term.clone(), crate::arith::rat_int(1));
        let deg = term.multidegree();
        if !single.de_rham_d().is_homogeneous_of(&deg) {
            return Err(format!("d moved the multidegree of {term}"));
        }
    }
    // Graded Leibniz rule.
    let q2 = rng.random_range(0..=top - q);
    let eta = gen::random_form(rng, &pair, q2, cfg.exponent_window, FormClass::POmega);
    let lhs = omega.wedge(&eta).de_rham_d();
    let sign = crate::arith::rat_int(if q % 2 == 0 { 1 } else { -1 });
    let rhs = omega
        .de_rham_d()
        .wedge(&eta)
        .add(&omega.wedge(&eta.de_rham_d()).scale(&sign));
    if lhs != rhs {
        return Err(format!("Leibniz fails for ({omega}) ^ ({eta})"));
    }
    Ok(())
}

fn case_hkr_roundtrip(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Result<(), String> {
    let pair = gen::random_pair(rng, cfg.max_s, cfg.max_t, cfg.max_r);
    let q = rng.random_range(0..=pair.top_degree());
    let omega = gen::random_form(rng, &pair, q, cfg.exponent_window, FormClass::MOmega);
    let back = hkr_eps(&omega).map_err(|e| e.to_string())?.hkr_e();
    if back != omega {
        return Err(format!("e(eps(w)) != w for {omega}, got {back}"));
    }
    let n = rng.random_range(1..=cfg.max_n);
    let u = gen::random_chain(rng, &pair, n, cfg.exponent_window, ChainClass::M);
    if !u.hochschild_b().hkr_e().is_zero() {
        return Err(format!("e(b(u)) != 0 for {u}"));
    }
    if u.connes_b().hkr_e() != u.hkr_e().de_rham_d() {
        return Err(format!("e(B(u)) != d(e(u)) for {u}"));
    }
    Ok(())
}

fn case_cyclic_oracle(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Result<(), String> {
    let pair = gen::random_pair(rng, cfg.max_s, cfg.max_t, cfg.max_r);
    let deg = gen::random_multidegree(rng, &pair, cfg.multidegree_window);
    let complex =
        GradedComplex::build(&pair, FormClass::MOmega, &deg).map_err(|e| e.to_string())?;
    let top = pair.top_degree() as i64;
    for variant in CyclicVariant::ALL {
        for n in -2..=top + 3 {
            let formula = cyclic_dims_formula(&complex, variant, n);
            let oracle = cyclic_dims_bicomplex(&complex, variant, n);
            if formula != oracle {
                return Err(format!(
                    "{variant}_{n} on {pair} at {deg}: formula {formula}, bicomplex {oracle}"
                ));
            }
        }
    }
    // Two-periodicity of the periodic theory.
    for n in 0..=1 {
        let a = cyclic_dims_formula(&complex, CyclicVariant::HP, n);
        let b = cyclic_dims_formula(&complex, CyclicVariant::HP, n + 2);
        if a != b {
            return Err(format!("HP not two-periodic on {pair} at {deg}"));
        }
    }
    // Euler characteristic of the complex equals that of its cohomology.
    let chi_dim: i64 = (0..=top).map(|qq| sign(qq) * complex.dim(qq) as i64).sum();
    let chi_h: i64 = (0..=top).map(|qq| sign(qq) * complex.betti(qq) as i64).sum();
    if chi_dim != chi_h {
        return Err(format!("Euler characteristic mismatch on {pair} at {deg}"));
    }
    Ok(())
}

fn sign(q: i64) -> i64 {
    if q % 2 == 0 {
        1
    } else {
        -1
    }
}

fn case_repletion(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Result<(), String> {
    // A random monoid map P -> M with valid generator images.
    let m_nat = rng.random_range(0..=2);
    let m_int = rng.random_range(if m_nat == 0 { 1 } else { 0 }..=2);
    let target = FgAbMonoid::new(m_nat, m_int);
    let p_nat = rng.random_range(0..=2);
    let p_int = rng.random_range(0..=2);
    let source = FgAbMonoid::new(p_nat, p_int);
    let mut mat = IntMatrix::zero(target.dim(), source.dim());
    for col in 0..source.dim() {
        for row in 0..target.dim() {
            let e: i64 = if row < m_nat {
                if col < p_nat {
                    rng.random_range(0..=2)
                } else {
                    0
                }
            } else {
                rng.random_range(-2..=2)
            };
            mat.set(row, col, BigInt::from(e));
        }
    }
    let map = MonoidMap::new(source, target, mat).map_err(|e| e.to_string())?;
    let n = rng.random_range(1..=4);
    let iso = RepletionIso::new(map, n).map_err(|e| e.to_string())?;

    // A replete tuple: free group entries, first slot fixed up so the total
    // lands in the target monoid.
    let dim = target.dim();
    let mut tuple: Vec<Vec<BigInt>> = (0..n)
        .map(|_| (0..dim).map(|_| BigInt::from(rng.random_range(-3..=3i64))).collect())
        .collect();
    for coord in 0..m_nat {
        let total: BigInt = tuple.iter().map(|g| g[coord].clone()).sum();
        if total.is_negative() {
            tuple[0][coord] -= &total;
        }
    }
    if !iso.membership(&tuple) {
        return Err(format!("fixed-up tuple escaped the repletion: {tuple:?}"));
    }

    let (total, classes) = iso.forward(&tuple);
    if !target.contains(&total) {
        return Err(format!("forward total left the monoid: {total:?}"));
    }
    let back = iso.backward(&total, &classes);
    if !iso.equal_mod_relations(&tuple, &back) {
        return Err(format!("backward(forward) differs mod relations: {tuple:?} vs {back:?}"));
    }
    let (total2, classes2) = iso.forward(&back);
    if total2 != total || classes2 != classes {
        return Err(format!("forward(backward) not the identity on split data: {tuple:?}"));
    }

    // The bar predicate agrees with the chain-level membership class.
    let pair = gen::random_pair(rng, cfg.max_s, cfg.max_t, cfg.max_r);
    let slots = rng.random_range(1..=3);
    let tensor: Vec<Monomial> = (0..slots)
        .map(|_| {
            let i = (0..pair.s()).map(|_| rng.random_range(-2..=2)).collect();
            let k = (0..pair.t()).map(|_| rng.random_range(0..=2)).collect();
            Monomial::new(i, k)
        })
        .collect();
    let predicate = replete_bar_predicate(&pair, &tensor);
    let class = ChainElement::from_tensor(pair.clone(), tensor.clone(), crate::arith::rat_int(1))
        .classify();
    if predicate != (class <= ChainClass::P) {
        return Err(format!("bar predicate disagrees with chain class on {pair}: {tensor:?}"));
    }
    Ok(())
}

fn case_probe(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Result<(), String> {
    // Small pairs only: the candidate span grows as a product over slots.
    let mut pair = gen::random_pair(rng, cfg.max_s.min(1), cfg.max_t.min(1), cfg.max_r);
    if pair.s() + pair.t() == 0 {
        pair = ModulusPair::new(0, 1, vec![]).expect("valid");
    }
    let n = if pair.s() + pair.t() >= 2 { 1 } else { rng.random_range(1..=2) };
    let window = cfg.multidegree_window;
    let dx: Vec<i64> = (0..pair.s())
        .map(|j| rng.random_range(pair.pole_bound(j).max(-window)..=window))
        .collect();
    let dy: Vec<i64> = (0..pair.t()).map(|_| rng.random_range(0..=window)).collect();
    let deg = Multidegree::new(dx, dy);

    let from_form = |rng: &mut ChaCha8Rng| -> Result<Option<ChainElement>, String> {
        let terms = basis_of(&pair, FormClass::MOmega, n, &deg).map_err(|e| e.to_string())?;
        if terms.is_empty() {
            return Ok(None);
        }
        let pick = rng.random_range(0..terms.len());
        let omega = LogForm::from_term(pair.clone(), terms[pick].clone(), crate::arith::rat_int(1));
        Ok(Some(hkr_eps(&omega).map_err(|e| e.to_string())?))
    };
    let from_boundary = |rng: &mut ChaCha8Rng| -> ChainElement {
        let u = gen::homogeneous_tensor(rng, &pair, n + 1, &deg);
        ChainElement::from_tensor(pair.clone(), u, crate::arith::rat_int(1)).hochschild_b()
    };

    let mode = rng.random_range(0..4);
    let mut z = match mode {
        0 => from_form(rng)?.unwrap_or_else(|| from_boundary(rng)),
        1 => from_boundary(rng),
        2 => {
            let b = from_boundary(rng);
            match from_form(rng)? {
                Some(e) => b.add(&e),
                None => b,
            }
        }
        _ => {
            // Rotation, kept only when it is still a cycle.
            let base = from_form(rng)?.unwrap_or_else(|| from_boundary(rng));
            let rotated = base.cyclic_t();
            if rotated.hochschild_b().is_zero() {
                rotated
            } else {
                base
            }
        }
    };
    if z.classify() > ChainClass::M {
        return Err(format!("generated probe input left the bounded class: {z}"));
    }
    if z.is_zero() {
        z = from_boundary(rng);
    }
    for bound in 0..=4 {
        match hkr_cycle_probe(&z, bound).map_err(|e| e.to_string())? {
            ProbeOutcome::Confirmed => return Ok(()),
            ProbeOutcome::Inconclusive => continue,
        }
    }
    Err(format!("probe stayed inconclusive through pole bound 4 on {pair}: {z}"))
}

/// Exhaustive check of the lowest-degree comparison isomorphism over a
/// factor-exponent window: `e . eps` is the identity on every degree-one
/// form basis element, and every degree-one tensor basis element is
/// confirmed homologous to the antisymmetrization of its own form image.
/// Returns the number of objects checked.
pub fn degree_one_isomorphism_check(
    pair: &ModulusPair,
    window: i64,
    max_pole_bound: i64,
) -> Result<usize, String> {
    let mut checked = 0;
    let degrees = enumerate_multidegrees(pair, window);
    for deg in &degrees {
        for term in basis_of(pair, FormClass::MOmega, 1, deg).map_err(|e| e.to_string())? {
            let omega = LogForm::from_term(pair.clone(), term.clone(), crate::arith::rat_int(1));
            let back = hkr_eps(&omega).map_err(|e| e.to_string())?.hkr_e();
            if back != omega {
                return Err(format!("e(eps) != id on form {omega}"));
            }
            checked += 1;
        }
        // Degree-one tensors with both factor exponents inside the window.
        for (a, b) in factor_pairs(pair, deg, window) {
            let z = ChainElement::from_tensor(
                pair.clone(),
                vec![a, b],
                crate::arith::rat_int(1),
            );
            if z.classify() > ChainClass::M {
                continue;
            }
            let mut confirmed = false;
            for bound in 0..=max_pole_bound {
                match hkr_cycle_probe(&z, bound).map_err(|e| e.to_string())? {
                    ProbeOutcome::Confirmed => {
                        confirmed = true;
                        break;
                    }
                    ProbeOutcome::Inconclusive => continue,
                }
            }
            if !confirmed {
                return Err(format!("degree-one tensor not confirmed: {z}"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// All multidegrees with x-components in `[-window, window]` and
/// y-components in `[0, window]`.
pub fn enumerate_multidegrees(pair: &ModulusPair, window: i64) -> Vec<Multidegree> {
    let mut out = vec![Multidegree::zero(pair.s(), pair.t())];
    for j in 0..pair.s() {
        let mut next = Vec::new();
        for deg in out {
            for v in -window..=window {
                let mut d = deg.clone();
                d.dx[j] = v;
                next.push(d);
            }
        }
        out = next;
    }
    for l in 0..pair.t() {
        let mut next = Vec::new();
        for deg in out {
            for v in 0..=window {
                let mut d = deg.clone();
                d.dy[l] = v;
                next.push(d);
            }
        }
        out = next;
    }
    out
}

/// All two-factor splittings of `deg` with every exponent in the window.
fn factor_pairs(pair: &ModulusPair, deg: &Multidegree, window: i64) -> Vec<(Monomial, Monomial)> {
    let mut splits_x: Vec<Vec<(i64, i64)>> = Vec::new();
    for j in 0..pair.s() {
        splits_x.push(
            (-window..=window)
                .filter_map(|a| {
                    let b = deg.dx[j] - a;
                    (-window..=window).contains(&b).then_some((a, b))
                })
                .collect(),
        );
    }
    let mut splits_y: Vec<Vec<(i64, i64)>> = Vec::new();
    for l in 0..pair.t() {
        splits_y.push(
            (0..=deg.dy[l]).map(|a| (a, deg.dy[l] - a)).collect(),
        );
    }
    let mut out = vec![(
        Monomial::new(vec![0; pair.s()], vec![0; pair.t()]),
        Monomial::new(vec![0; pair.s()], vec![0; pair.t()]),
    )];
    for (j, split) in splits_x.iter().enumerate() {
        let mut next = Vec::new();
        for (a, b) in &out {
            for &(va, vb) in split {
                let mut a2 = a.clone();
                let mut b2 = b.clone();
                a2.i[j] = va;
                b2.i[j] = vb;
                next.push((a2, b2));
            }
        }
        out = next;
    }
    for (l, split) in splits_y.iter().enumerate() {
        let mut next = Vec::new();
        for (a, b) in &out {
            for &(va, vb) in split {
                let mut a2 = a.clone();
                let mut b2 = b.clone();
                a2.k[l] = va;
                b2.k[l] = vb;
                next.push((a2, b2));
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> SuiteConfig {
        SuiteConfig { samples: 40, ..SuiteConfig::default() }
    }

    #[test]
    fn every_suite_passes_at_small_sample_counts() {
        let cfg = small_cfg();
        for suite in Suite::ALL {
            let report = run_suite(suite, &cfg);
            assert_eq!(report.status, SuiteStatus::Pass, "{}: {:?}", suite, report.failures);
            assert_eq!(report.cases, 40);
        }
    }

    #[test]
    fn reports_are_independent_of_thread_count() {
        let cfg = small_cfg();
        let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let quad = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        for suite in [Suite::Identities, Suite::CyclicOracle] {
            let a = single.install(|| run_suite(suite, &cfg));
            let b = quad.install(|| run_suite(suite, &cfg));
            assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("nonsense".parse::<Suite>().is_err());
    }

    #[test]
    fn run_all_reports_every_suite_once() {
        let cfg = SuiteConfig { samples: 10, ..SuiteConfig::default() };
        let reports = run_all(&cfg);
        assert_eq!(reports.len(), Suite::ALL.len());
        assert!(reports.iter().all(|r| r.status == SuiteStatus::Pass));
    }

    #[test]
    fn degree_one_isomorphism_on_tiny_windows() {
        let pair = ModulusPair::new(1, 0, vec![2]).unwrap();
        let checked = degree_one_isomorphism_check(&pair, 1, 3).unwrap();
        assert!(checked > 0);
        let pair = ModulusPair::new(0, 1, vec![]).unwrap();
        assert!(degree_one_isomorphism_check(&pair, 1, 2).unwrap() > 0);
    }

    #[test]
    fn multidegree_enumeration_counts() {
        let pair = ModulusPair::new(2, 1, vec![1, 1]).unwrap();
        // (2w + 1)^s * (w + 1)^t with w = 1.
        assert_eq!(enumerate_multidegrees(&pair, 1).len(), 9 * 2);
    }
}
