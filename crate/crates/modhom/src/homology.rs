//! Per-multidegree homological computations.
//!
//! Everything is graded by the exponent lattice, so each multidegree yields a
//! finite cochain complex of forms whose differential matrices are exact
//! rational data.  Cyclic dimensions are computed two independent ways: a
//! closed formula in terms of ranks of the form differentials, and a direct
//! homology computation on truncated-column total complexes assembled as
//! block matrices.  Agreement of the two is one of the central checks this
//! crate exists to run.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{Rational, SparseMatrixQ};
use crate::forms::{basis_of, FormClass, FormTerm, FormsError, LogForm};
use crate::hochschild::{hkr_eps, ChainClass, ChainElement, ChainError, Tensor};
use crate::modpair::{ModulusPair, Monomial, Multidegree};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error(transparent)]
    Forms(#[from] FormsError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error("probe input is not a cycle")]
    NotCycle,
    #[error("probe input is not pole-bounded")]
    NotPoleBounded,
    #[error("probe input mixes multidegrees")]
    Inhomogeneous,
}

/// Which cyclic-style theory a dimension refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CyclicVariant {
    HC,
    HCMinus,
    HP,
}

impl CyclicVariant {
    pub const ALL: [CyclicVariant; 3] = [CyclicVariant::HC, CyclicVariant::HCMinus, CyclicVariant::HP];
}

impl fmt::Display for CyclicVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CyclicVariant::HC => write!(f, "HC"),
            CyclicVariant::HCMinus => write!(f, "HCminus"),
            CyclicVariant::HP => write!(f, "HP"),
        }
    }
}

/// The forms complex of one pole class in one multidegree: ordered bases in
/// every exterior degree and exact differential matrices between them.
/// `d * d = 0` is checked at construction.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    pair: ModulusPair,
    deg: Multidegree,
    class: FormClass,
    bases: Vec<Vec<FormTerm>>,
    mats: Vec<SparseMatrixQ>,
    ranks: Vec<usize>,
}

impl GradedComplex {
    pub fn build(
        pair: &ModulusPair,
        class: FormClass,
        deg: &Multidegree,
    ) -> Result<Self, HomologyError> {
        let top = pair.top_degree();
        let mut bases = Vec::with_capacity(top + 1);
        for q in 0..=top {
            bases.push(basis_of(pair, class, q, deg)?);
        }
        let mut mats = Vec::with_capacity(top + 1);
        for q in 0..=top {
            let target: BTreeMap<&FormTerm, usize> = if q + 1 <= top {
                bases[q + 1].iter().enumerate().map(|(i, t)| (t, i)).collect()
            } else {
                BTreeMap::new()
            };
            let rows = if q + 1 <= top { bases[q + 1].len() } else { 0 };
            let mut mat = SparseMatrixQ::zero(rows, bases[q].len());
            for (col, term) in bases[q].iter().enumerate() {
                let image = LogForm::from_term(pair.clone(), term.clone(), Rational::from_integer(1.into()))
                    .de_rham_d();
                for (t, c) in image.terms() {
                    let row = *target
                        .get(t)
                        .expect("differential stays in the class and multidegree");
                    mat.set(row, col, c.clone());
                }
            }
            mats.push(mat);
        }
        for q in 0..top {
            debug_assert!(mats[q + 1].mul(&mats[q]).is_zero(), "d^2 = 0");
        }
        let ranks = mats.iter().map(|m| m.rank()).collect();
        Ok(GradedComplex { pair: pair.clone(), deg: deg.clone(), class, bases, mats, ranks })
    }

    pub fn pair(&self) -> &ModulusPair {
        &self.pair
    }

    pub fn multidegree(&self) -> &Multidegree {
        &self.deg
    }

    pub fn class(&self) -> FormClass {
        self.class
    }

    pub fn top(&self) -> usize {
        self.pair.top_degree()
    }

    pub fn basis(&self, q: usize) -> &[FormTerm] {
        &self.bases[q]
    }

    pub fn d_matrix(&self, q: usize) -> &SparseMatrixQ {
        &self.mats[q]
    }

    /// Dimension of the degree-`q` piece; zero outside `0..=top`.
    pub fn dim(&self, q: i64) -> usize {
        if q < 0 || q > self.top() as i64 {
            0
        } else {
            self.bases[q as usize].len()
        }
    }

    /// Rank of `d: degree q -> q + 1`; zero outside the complex.
    pub fn rank_d(&self, q: i64) -> usize {
        if q < 0 || q > self.top() as i64 {
            0
        } else {
            self.ranks[q as usize]
        }
    }

    pub fn kernel_dim(&self, q: i64) -> usize {
        self.dim(q) - self.rank_d(q)
    }

    /// Cohomology dimension at `q`.
    pub fn betti(&self, q: i64) -> usize {
        self.dim(q) - self.rank_d(q) - self.rank_d(q - 1)
    }

    /// Dimension of `degree q / d(degree q-1)`.
    pub fn coker_dim(&self, q: i64) -> usize {
        self.dim(q) - self.rank_d(q - 1)
    }
}

/// One multidegree's dimension table, keyed by homological degree.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DimensionReport {
    pub pair: ModulusPair,
    pub deg: Multidegree,
    pub variant: String,
    pub dims: BTreeMap<i64, usize>,
}

/// Hochschild dimension in one multidegree: the degree-`n` basis count of the
/// pole-bounded forms (the comparison map is an isomorphism, so no matrix
/// work is needed).
pub fn hh_dimension(pair: &ModulusPair, deg: &Multidegree, n: usize) -> Result<usize, HomologyError> {
    Ok(basis_of(pair, FormClass::MOmega, n, deg)?.len())
}

/// de Rham cohomology dimensions of the pole-bounded complex.
pub fn derham_report(pair: &ModulusPair, deg: &Multidegree) -> Result<DimensionReport, HomologyError> {
    let complex = GradedComplex::build(pair, FormClass::MOmega, deg)?;
    let dims = (0..=pair.top_degree() as i64).map(|q| (q, complex.betti(q))).collect();
    Ok(DimensionReport {
        pair: pair.clone(),
        deg: deg.clone(),
        variant: "deRham".to_string(),
        dims,
    })
}

/// Closed formula for the cyclic-style dimensions in terms of ranks of the
/// form differentials:
/// * `HC_n  = dim(O^n / d O^{n-1}) + sum_{j >= 1} H^{n-2j}`
/// * `HC-_n = dim ker(d_n) + sum_{j >= 1} H^{n+2j}`
/// * `HP_n  = sum_{q = n mod 2} H^q`
pub fn cyclic_dims_formula(complex: &GradedComplex, variant: CyclicVariant, n: i64) -> usize {
    let top = complex.top() as i64;
    match variant {
        CyclicVariant::HC => {
            if n < 0 {
                return 0;
            }
            let mut total = complex.coker_dim(n);
            let mut q = n - 2;
            while q >= 0 {
                total += complex.betti(q);
                q -= 2;
            }
            total
        }
        CyclicVariant::HCMinus => {
            let mut total = complex.kernel_dim(n);
            let mut q = n + 2;
            while q <= top {
                total += complex.betti(q);
                q += 2;
            }
            total
        }
        CyclicVariant::HP => {
            let parity = n.rem_euclid(2);
            (0..=top).filter(|q| q.rem_euclid(2) == parity).map(|q| complex.betti(q)).sum()
        }
    }
}

/// Column summands of the total complex in homological degree `m`: pairs
/// `(p, q)` with `q = 2p - m`.  Column `p` carries the forms complex
/// truncated to degrees `<= p` for `HC`, `>= p` for `HC-`, untruncated for
/// `HP`; truncation simply omits summands, which silently zeroes the maps
/// across the cut.
fn bicomplex_summands(top: i64, variant: CyclicVariant, m: i64) -> Vec<(i64, usize)> {
    let mut out = Vec::new();
    for q in 0..=top {
        if (m + q).rem_euclid(2) != 0 {
            continue;
        }
        let p = (m + q) / 2;
        let ok = match variant {
            CyclicVariant::HP => true,
            CyclicVariant::HC => p >= 0 && q <= p,
            CyclicVariant::HCMinus => q >= p,
        };
        if ok {
            out.push((p, q as usize));
        }
    }
    out
}

/// Independent cross-check: assemble the total complex of the two-periodic
/// column bicomplex around degree `n` as honest block matrices and compute
/// its homology by exact rank computations.
pub fn cyclic_dims_bicomplex(complex: &GradedComplex, variant: CyclicVariant, n: i64) -> usize {
    let top = complex.top() as i64;
    let layer = |m: i64| -> Vec<(i64, usize)> { bicomplex_summands(top, variant, m) };

    let offsets = |summands: &[(i64, usize)]| -> (Vec<usize>, usize) {
        let mut offs = Vec::with_capacity(summands.len());
        let mut total = 0;
        for &(_, q) in summands {
            offs.push(total);
            total += complex.dim(q as i64);
        }
        (offs, total)
    };

    let boundary = |from: &[(i64, usize)], to: &[(i64, usize)]| -> SparseMatrixQ {
        let (from_offs, from_dim) = offsets(from);
        let (to_offs, to_dim) = offsets(to);
        let mut mat = SparseMatrixQ::zero(to_dim, from_dim);
        for (src_idx, &(p, q)) in from.iter().enumerate() {
            if let Some(dst_idx) = to.iter().position(|&(tp, tq)| tp == p && tq == q + 1) {
                mat.insert_block(to_offs[dst_idx], from_offs[src_idx], complex.d_matrix(q));
            }
        }
        mat
    };

    let here = layer(n);
    let below = layer(n - 1);
    let above = layer(n + 1);
    let dim_here: usize = here.iter().map(|&(_, q)| complex.dim(q as i64)).sum();
    let out = boundary(&here, &below);
    let into = boundary(&above, &here);
    debug_assert!(out.mul(&into).is_zero(), "total differential squares to zero");
    dim_here - out.rank() - into.rank()
}

/// Dimension table for one variant over a homological degree range, using
/// the closed formula or the bicomplex oracle.
pub fn cyclic_report(
    pair: &ModulusPair,
    deg: &Multidegree,
    variant: CyclicVariant,
    n_range: impl Iterator<Item = i64>,
    use_bicomplex: bool,
) -> Result<DimensionReport, HomologyError> {
    let complex = GradedComplex::build(pair, FormClass::MOmega, deg)?;
    let dims = n_range
        .map(|n| {
            let d = if use_bicomplex {
                cyclic_dims_bicomplex(&complex, variant, n)
            } else {
                cyclic_dims_formula(&complex, variant, n)
            };
            (n, d)
        })
        .collect();
    Ok(DimensionReport {
        pair: pair.clone(),
        deg: deg.clone(),
        variant: variant.to_string(),
        dims,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeOutcome {
    Confirmed,
    Inconclusive,
}

impl fmt::Display for ProbeOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbeOutcome::Confirmed => write!(f, "confirmed"),
            ProbeOutcome::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Hard cap on the candidate space the probe will materialize; larger
/// searches report `Inconclusive` rather than thrash.
const PROBE_SPAN_CAP: usize = 20_000;

/// Decides whether the cycle `z` is homologous to the antisymmetrized tensor
/// of its own form image, by exactly solving `b(w) = z - eps(e(z))` with `w`
/// ranging over all tensors of the same multidegree whose factor x-exponents
/// stay at or above `-pole_bound`.  A solution confirms; absence of one in
/// the bounded span is only ever `Inconclusive`, never a refutation.
pub fn hkr_cycle_probe(
    z: &ChainElement,
    pole_bound: i64,
) -> Result<ProbeOutcome, HomologyError> {
    if z.classify() == ChainClass::Full {
        return Err(HomologyError::NotPoleBounded);
    }
    if !z.hochschild_b().is_zero() {
        return Err(HomologyError::NotCycle);
    }
    if z.is_zero() {
        return Ok(ProbeOutcome::Confirmed);
    }
    let Some(deg) = z.multidegree() else {
        return Err(HomologyError::Inhomogeneous);
    };
    let target = z.sub(&hkr_eps(&z.hkr_e())?);
    if target.is_zero() {
        return Ok(ProbeOutcome::Confirmed);
    }

    let pair = z.pair().clone();
    let factors = z.degree() + 2;
    // Per-slot compositions of the multidegree into factor exponents.
    let mut slot_choices: Vec<Vec<Vec<i64>>> = Vec::new();
    for j in 0..pair.s() {
        slot_choices.push(bounded_compositions(deg.dx[j], factors, -pole_bound));
    }
    for l in 0..pair.t() {
        slot_choices.push(bounded_compositions(deg.dy[l], factors, 0));
    }
    let mut span_size: usize = 1;
    for c in &slot_choices {
        if c.is_empty() {
            return Ok(ProbeOutcome::Inconclusive);
        }
        span_size = span_size.saturating_mul(c.len());
        if span_size > PROBE_SPAN_CAP {
            return Ok(ProbeOutcome::Inconclusive);
        }
    }

    // Enumerate candidate tensors by an odometer over per-slot choices.
    let s = pair.s();
    let mut candidates: Vec<Tensor> = Vec::with_capacity(span_size);
    let mut idx = vec![0usize; slot_choices.len()];
    loop {
        let tensor: Tensor = (0..factors)
            .map(|f| {
                let i = (0..s).map(|j| slot_choices[j][idx[j]][f]).collect();
                let k = (s..slot_choices.len()).map(|l| slot_choices[l][idx[l]][f]).collect();
                Monomial::new(i, k)
            })
            .collect();
        candidates.push(tensor);
        let mut slot = 0;
        loop {
            if slot == idx.len() {
                break;
            }
            idx[slot] += 1;
            if idx[slot] < slot_choices[slot].len() {
                break;
            }
            idx[slot] = 0;
            slot += 1;
        }
        if slot == idx.len() {
            break;
        }
    }

    let images: Vec<ChainElement> = candidates
        .iter()
        .map(|t| ChainElement::from_tensor(pair.clone(), t.clone(), Rational::from_integer(1.into())).hochschild_b())
        .collect();
    let mut keys: BTreeSet<Tensor> = target.terms().map(|(t, _)| t.clone()).collect();
    for image in &images {
        keys.extend(image.terms().map(|(t, _)| t.clone()));
    }
    let row_of: BTreeMap<&Tensor, usize> = keys.iter().enumerate().map(|(i, t)| (t, i)).collect();

    let mut mat = SparseMatrixQ::zero(keys.len(), images.len());
    for (col, image) in images.iter().enumerate() {
        for (t, c) in image.terms() {
            mat.set(row_of[t], col, c.clone());
        }
    }
    let mut rhs = vec![Rational::zero(); keys.len()];
    for (t, c) in target.terms() {
        rhs[row_of[t]] = c.clone();
    }
    match mat.solve(&rhs).expect("shapes agree") {
        Some(_) => Ok(ProbeOutcome::Confirmed),
        None => Ok(ProbeOutcome::Inconclusive),
    }
}

/// All ways to write `total` as `parts` integers, each at least `lo`.
fn bounded_compositions(total: i64, parts: usize, lo: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts);
    fn rec(total: i64, parts: usize, lo: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if parts == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if parts == 1 {
            if total >= lo {
                cur.push(total);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let hi = total - lo * (parts as i64 - 1);
        let mut v = lo;
        while v <= hi {
            cur.push(v);
            rec(total - v, parts - 1, lo, cur, out);
            cur.pop();
            v += 1;
        }
    }
    rec(total, parts, lo, &mut cur, &mut out);
    out
}
