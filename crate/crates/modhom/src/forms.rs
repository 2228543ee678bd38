//! Differential forms with logarithmic poles, written in the monomial basis
//! `x^i y^k dlog x_S ^ dy_T` with `S`, `T` strict subsets of the variable
//! slots.  In this basis `dx_j = x_j dlog x_j`, so the differential never
//! changes the x-exponent vector and every operation here preserves the
//! multidegree of each term (the y-slot of a `dy_l` factor counts toward the
//! multidegree).

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{rat_int, Rational};
use crate::modpair::{ModulusPair, Monomial, Multidegree};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormsError {
    #[error("basis enumeration needs a pole-bounded class, not the full module")]
    UnboundedClass,
    #[error("negative y-degree component {0}")]
    NegativeYDegree(i64),
}

/// Pole classes, tightest first.  `POmega` is the subalgebra generated by the
/// ring and its dlogs (all x-exponents non-negative); `MOmega` relaxes each
/// x-exponent bound to `1 - r_j`; `Full` is the whole localized module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FormClass {
    POmega,
    MOmega,
    Full,
}

impl FormClass {
    /// Lower bound on x-exponents for membership, `None` when unbounded.
    fn x_bound(self, pair: &ModulusPair, j: usize) -> Option<i64> {
        match self {
            FormClass::POmega => Some(0),
            FormClass::MOmega => Some(pair.pole_bound(j)),
            FormClass::Full => None,
        }
    }
}

impl fmt::Display for FormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormClass::POmega => write!(f, "P"),
            FormClass::MOmega => write!(f, "M"),
            FormClass::Full => write!(f, "FULL"),
        }
    }
}

/// Basis form `x^i y^k dlog x_S ^ dy_T`.  Slot lists are strictly increasing
/// and 0-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormTerm {
    pub monomial: Monomial,
    pub dlog: Vec<usize>,
    pub dy: Vec<usize>,
}

impl FormTerm {
    pub fn new(monomial: Monomial, dlog: Vec<usize>, dy: Vec<usize>) -> Self {
        debug_assert!(dlog.windows(2).all(|w| w[0] < w[1]), "dlog slots sorted");
        debug_assert!(dy.windows(2).all(|w| w[0] < w[1]), "dy slots sorted");
        FormTerm { monomial, dlog, dy }
    }

    pub fn degree(&self) -> usize {
        self.dlog.len() + self.dy.len()
    }

    /// Multidegree including the `dy` factors' y-weights.
    pub fn multidegree(&self) -> Multidegree {
        let mut deg = self.monomial.multidegree();
        for &l in &self.dy {
            deg.dy[l] += 1;
        }
        deg
    }

    /// Factor word used for basis ordering: dlog slots then dy slots.
    fn word(&self) -> Vec<(u8, usize)> {
        self.dlog
            .iter()
            .map(|&j| (0u8, j))
            .chain(self.dy.iter().map(|&l| (1u8, l)))
            .collect()
    }
}

impl fmt::Display for FormTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.monomial.is_unit() {
            parts.push(self.monomial.to_string());
        }
        for &j in &self.dlog {
            parts.push(format!("dlogx{}", j + 1));
        }
        for &l in &self.dy {
            parts.push(format!("dy{}", l + 1));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl Serialize for FormTerm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Finite rational combination of basis forms of one exterior degree.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogForm {
    pair: ModulusPair,
    degree: usize,
    terms: BTreeMap<FormTerm, Rational>,
}

impl LogForm {
    pub fn zero(pair: ModulusPair, degree: usize) -> Self {
        LogForm { pair, degree, terms: BTreeMap::new() }
    }

    pub fn from_term(pair: ModulusPair, term: FormTerm, coeff: Rational) -> Self {
        let mut form = LogForm::zero(pair, term.degree());
        form.add_term(term, coeff);
        form
    }

    /// The monomial `m` as a 0-form.
    pub fn from_monomial(pair: ModulusPair, m: Monomial) -> Self {
        Self::from_term(pair, FormTerm::new(m, vec![], vec![]), Rational::one())
    }

    pub fn pair(&self) -> &ModulusPair {
        &self.pair
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormTerm, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, term: &FormTerm) -> Rational {
        self.terms.get(term).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, term: FormTerm, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(term.degree(), self.degree, "term degree");
        debug_assert_eq!(term.monomial.i.len(), self.pair.s(), "x slots");
        debug_assert_eq!(term.monomial.k.len(), self.pair.t(), "y slots");
        debug_assert!(term.monomial.k.iter().all(|&e| e >= 0), "y-exponents stay non-negative");
        let entry = self.terms.entry(term.clone()).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&term);
        }
    }

    pub fn add(&self, other: &LogForm) -> LogForm {
        assert_eq!(self.pair, other.pair, "pair mismatch");
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> LogForm {
        let mut out = LogForm::zero(self.pair.clone(), self.degree);
        if c.is_zero() {
            return out;
        }
        for (t, v) in self.terms() {
            out.terms.insert(t.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, other: &LogForm) -> LogForm {
        self.add(&other.scale(&rat_int(-1)))
    }

    /// Tightest pole class containing every term.
    pub fn classify(&self) -> FormClass {
        for class in [FormClass::POmega, FormClass::MOmega] {
            let ok = self.terms.keys().all(|term| {
                term.monomial
                    .i
                    .iter()
                    .enumerate()
                    .all(|(j, &e)| e >= class.x_bound(&self.pair, j).unwrap())
            });
            if ok {
                return class;
            }
        }
        FormClass::Full
    }

    /// True when every term has the given multidegree.
    pub fn is_homogeneous_of(&self, deg: &Multidegree) -> bool {
        self.terms.keys().all(|t| &t.multidegree() == deg)
    }

    /// The common multidegree of all terms, if one exists (zero forms have
    /// every multidegree, reported as `None`).
    pub fn multidegree(&self) -> Option<Multidegree> {
        let mut it = self.terms.keys().map(|t| t.multidegree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Exterior product.  Terms sharing a dlog or dy slot multiply to zero;
    /// the sign reorders the concatenated factor words into sorted order.
    pub fn wedge(&self, other: &LogForm) -> LogForm {
        assert_eq!(self.pair, other.pair, "pair mismatch");
        let mut out = LogForm::zero(self.pair.clone(), self.degree + other.degree);
        for (t1, c1) in self.terms() {
            for (t2, c2) in other.terms() {
                if !disjoint(&t1.dlog, &t2.dlog) || !disjoint(&t1.dy, &t2.dy) {
                    continue;
                }
                let sign = merge_sign(&t1.word(), &t2.word());
                let term = FormTerm::new(
                    t1.monomial.mul(&t2.monomial),
                    merge(&t1.dlog, &t2.dlog),
                    merge(&t1.dy, &t2.dy),
                );
                out.add_term(term, c1 * c2 * rat_int(sign));
            }
        }
        out
    }

    /// The differential in the dlog basis:
    /// `d(x^i y^k w) = sum_j i_j x^i y^k dlogx_j ^ w + sum_l k_l x^i y^{k-e_l} dy_l ^ w`.
    /// Multidegree of every term is preserved.
    pub fn de_rham_d(&self) -> LogForm {
        let mut out = LogForm::zero(self.pair.clone(), self.degree + 1);
        for (term, coeff) in self.terms() {
            for j in 0..self.pair.s() {
                let e = term.monomial.i[j];
                if e == 0 || term.dlog.binary_search(&j).is_ok() {
                    continue;
                }
                let pos = term.dlog.partition_point(|&x| x < j);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                let new = FormTerm::new(
                    term.monomial.clone(),
                    insert_sorted(&term.dlog, j),
                    term.dy.clone(),
                );
                out.add_term(new, coeff * rat_int(e * sign));
            }
            for l in 0..self.pair.t() {
                let e = term.monomial.k[l];
                if e == 0 || term.dy.binary_search(&l).is_ok() {
                    continue;
                }
                let pos = term.dlog.len() + term.dy.partition_point(|&x| x < l);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                let new = FormTerm::new(
                    term.monomial.shift_y(l, -1),
                    term.dlog.clone(),
                    insert_sorted(&term.dy, l),
                );
                out.add_term(new, coeff * rat_int(e * sign));
            }
        }
        out
    }
}

impl fmt::Display for LogForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms()
            .map(|(term, coeff)| {
                let body = term.to_string();
                if coeff.is_one() {
                    body
                } else {
                    let c = if coeff.is_integer() && coeff.numer().sign() != num_bigint::Sign::Minus
                    {
                        coeff.to_string()
                    } else {
                        format!("({coeff})")
                    };
                    if body == "1" {
                        c
                    } else {
                        format!("{c}*{body}")
                    }
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_err())
}

fn merge(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
    out.sort_unstable();
    out
}

fn insert_sorted(list: &[usize], v: usize) -> Vec<usize> {
    let mut out = list.to_vec();
    let pos = out.partition_point(|&x| x < v);
    out.insert(pos, v);
    out
}

/// Sign of sorting the concatenation of two internally sorted factor words:
/// count cross pairs out of order.  All factors are degree-one, so the sign
/// is the parity of that count.
fn merge_sign(w1: &[(u8, usize)], w2: &[(u8, usize)]) -> i64 {
    let inversions =
        w1.iter().map(|a| w2.iter().filter(|b| *b < a).count()).sum::<usize>();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Ordered basis of the degree-`q` forms of one multidegree inside a
/// pole-bounded class.  The x-exponent of every basis term equals `deg.dx`;
/// the choice is which slots contribute `dlog` factors versus `dy` factors.
pub fn basis_of(
    pair: &ModulusPair,
    class: FormClass,
    q: usize,
    deg: &Multidegree,
) -> Result<Vec<FormTerm>, FormsError> {
    if class == FormClass::Full {
        return Err(FormsError::UnboundedClass);
    }
    assert_eq!(deg.dx.len(), pair.s(), "multidegree x slots");
    assert_eq!(deg.dy.len(), pair.t(), "multidegree y slots");
    if let Some(&bad) = deg.dy.iter().find(|&&e| e < 0) {
        return Err(FormsError::NegativeYDegree(bad));
    }
    let in_class = deg
        .dx
        .iter()
        .enumerate()
        .all(|(j, &e)| e >= class.x_bound(pair, j).unwrap());
    if !in_class {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    for dy_count in 0..=q.min(pair.t()) {
        let dlog_count = q - dy_count;
        if dlog_count > pair.s() {
            continue;
        }
        for t_slots in (0..pair.t()).combinations(dy_count) {
            if t_slots.iter().any(|&l| deg.dy[l] < 1) {
                continue;
            }
            let mut k = deg.dy.clone();
            for &l in &t_slots {
                k[l] -= 1;
            }
            let monom = Monomial::new(deg.dx.clone(), k);
            for s_slots in (0..pair.s()).combinations(dlog_count) {
                out.push(FormTerm::new(monom.clone(), s_slots, t_slots.clone()));
            }
        }
    }
    out.sort_by(|a, b| a.word().cmp(&b.word()));
    Ok(out)
}
