//! Hochschild chains with monomial entries and the cyclic operators.
//!
//! A degree-`n` chain is a rational combination of tensors with `n + 1`
//! monomial factors from the localized ring (y-exponents stay non-negative;
//! x-exponents are unrestricted).  Faces multiply adjacent factors, the last
//! face wrapping around, so the componentwise sum of factor exponents is
//! preserved by everything in this module; that sum is the chain's
//! multidegree and also decides its pole class.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{rat_int, Rational};
use crate::forms::{FormClass, FormTerm, LogForm};
use crate::modpair::{ModulusPair, Monomial, Multidegree};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("form has unbounded poles; only pole-bounded forms map to chains")]
    UnboundedForm,
    #[error("cannot parse chain `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

/// Pole classes of chains, tightest first.  A tensor is in `P` when the
/// componentwise sum of its factor exponents is non-negative, in `M` when
/// that sum clears the pole bound `1 - r`, and `Full` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChainClass {
    P,
    M,
    Full,
}

impl fmt::Display for ChainClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainClass::P => write!(f, "P_HH"),
            ChainClass::M => write!(f, "M_HH"),
            ChainClass::Full => write!(f, "FULL_HH"),
        }
    }
}

/// Monomial tensor; index 0 is the coefficient slot.
pub type Tensor = Vec<Monomial>;

/// Finite rational combination of monomial tensors of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainElement {
    pair: ModulusPair,
    degree: usize,
    terms: BTreeMap<Tensor, Rational>,
}

impl ChainElement {
    pub fn zero(pair: ModulusPair, degree: usize) -> Self {
        ChainElement { pair, degree, terms: BTreeMap::new() }
    }

    pub fn from_tensor(pair: ModulusPair, tensor: Tensor, coeff: Rational) -> Self {
        assert!(!tensor.is_empty(), "tensor needs at least the coefficient slot");
        let mut chain = ChainElement::zero(pair, tensor.len() - 1);
        chain.add_term(tensor, coeff);
        chain
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

    pub fn terms(&self) -> impl Iterator<Item = (&Tensor, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, tensor: Tensor, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        assert_eq!(tensor.len(), self.degree + 1, "factor count");
        for m in &tensor {
            assert_eq!(m.i.len(), self.pair.s(), "x slots");
            assert_eq!(m.k.len(), self.pair.t(), "y slots");
            assert!(m.k.iter().all(|&e| e >= 0), "factors keep y-exponents non-negative");
        }
        let entry = self.terms.entry(tensor.clone()).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&tensor);
        }
    }

    pub fn add(&self, other: &ChainElement) -> ChainElement {
        assert_eq!(self.pair, other.pair, "pair mismatch");
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> ChainElement {
        let mut out = ChainElement::zero(self.pair.clone(), self.degree);
        if c.is_zero() {
            return out;
        }
        for (t, v) in self.terms() {
            out.terms.insert(t.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, other: &ChainElement) -> ChainElement {
        self.add(&other.scale(&rat_int(-1)))
    }

    /// Face `d_idx`: multiplies factors `idx` and `idx + 1`; the last face
    /// wraps the final factor into the coefficient slot.
    pub fn face(&self, idx: usize) -> ChainElement {
        let n = self.degree;
        assert!(n >= 1, "faces need degree >= 1");
        assert!(idx <= n, "face index out of range");
        let mut out = ChainElement::zero(self.pair.clone(), n - 1);
        for (tensor, coeff) in self.terms() {
            let mut new = Vec::with_capacity(n);
            if idx < n {
                new.extend_from_slice(&tensor[..idx]);
                new.push(tensor[idx].mul(&tensor[idx + 1]));
                new.extend_from_slice(&tensor[idx + 2..]);
            } else {
                new.push(tensor[n].mul(&tensor[0]));
                new.extend_from_slice(&tensor[1..n]);
            }
            out.add_term(new, coeff.clone());
        }
        out
    }

    /// Degeneracy `s_idx`: inserts a unit factor after position `idx`.
    pub fn degeneracy(&self, idx: usize) -> ChainElement {
        assert!(idx <= self.degree, "degeneracy index out of range");
        let unit = self.pair.unit();
        let mut out = ChainElement::zero(self.pair.clone(), self.degree + 1);
        for (tensor, coeff) in self.terms() {
            let mut new = tensor.clone();
            new.insert(idx + 1, unit.clone());
            out.add_term(new, coeff.clone());
        }
        out
    }

    /// The Hochschild boundary `b = sum_i (-1)^i d_i`; zero on degree 0.
    pub fn hochschild_b(&self) -> ChainElement {
        if self.degree == 0 {
            return ChainElement::zero(self.pair.clone(), 0);
        }
        let mut out = ChainElement::zero(self.pair.clone(), self.degree - 1);
        for idx in 0..=self.degree {
            let sign = if idx % 2 == 0 { 1 } else { -1 };
            out = out.add(&self.face(idx).scale(&rat_int(sign)));
        }
        out
    }

    /// Unsigned cyclic rotation `(m_0, ..., m_n) -> (m_n, m_0, ..., m_{n-1})`.
    pub fn cyclic_t(&self) -> ChainElement {
        let mut out = ChainElement::zero(self.pair.clone(), self.degree);
        for (tensor, coeff) in self.terms() {
            let mut new = tensor.clone();
            new.rotate_right(1);
            out.add_term(new, coeff.clone());
        }
        out
    }

    /// The degree-raising cyclic differential
    /// `B = (1 - (-1)^{n+1} t) t s_n N` with `N = sum_i (-1)^{n i} t^i`.
    pub fn connes_b(&self) -> ChainElement {
        let n = self.degree;
        let mut norm = ChainElement::zero(self.pair.clone(), n);
        let mut rotated = self.clone();
        for i in 0..=n {
            let sign = if (n * i) % 2 == 0 { 1 } else { -1 };
            norm = norm.add(&rotated.scale(&rat_int(sign)));
            rotated = rotated.cyclic_t();
        }
        let u = norm.degeneracy(n).cyclic_t();
        let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
        u.sub(&u.cyclic_t().scale(&rat_int(sign)))
    }

    /// Signed shuffle product.  Coefficient slots multiply; the letters of
    /// both tensors interleave in all order-preserving ways.
    pub fn shuffle(&self, other: &ChainElement) -> ChainElement {
        assert_eq!(self.pair, other.pair, "pair mismatch");
        let p = self.degree;
        let q = other.degree;
        let mut out = ChainElement::zero(self.pair.clone(), p + q);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let head = a[0].mul(&b[0]);
                for slots in (0..p + q).combinations(p) {
                    let inversions: usize =
                        slots.iter().enumerate().map(|(i, &pos)| pos - i).sum();
                    let sign = if inversions % 2 == 0 { 1 } else { -1 };
                    let mut word: Vec<Option<Monomial>> = vec![None; p + q];
                    for (i, &pos) in slots.iter().enumerate() {
                        word[pos] = Some(a[i + 1].clone());
                    }
                    let mut rest = b[1..].iter();
                    let mut tensor = Vec::with_capacity(p + q + 1);
                    tensor.push(head.clone());
                    for slot in word {
                        tensor.push(match slot {
                            Some(m) => m,
                            None => rest.next().unwrap().clone(),
                        });
                    }
                    out.add_term(tensor, ca * cb * rat_int(sign));
                }
            }
        }
        out
    }

    /// Tightest pole class containing every tensor, judged on componentwise
    /// sums of factor exponents.
    pub fn classify(&self) -> ChainClass {
        let sums: Vec<Vec<i64>> = self.terms.keys().map(|t| factor_sum_x(t)).collect();
        for (class, bound) in [
            (ChainClass::P, vec![0; self.pair.s()]),
            (ChainClass::M, (0..self.pair.s()).map(|j| self.pair.pole_bound(j)).collect()),
        ] {
            if sums.iter().all(|s| s.iter().zip(&bound).all(|(a, b)| a >= b)) {
                return class;
            }
        }
        ChainClass::Full
    }

    /// True when every tensor has the given multidegree (componentwise sum
    /// of factor exponents).
    pub fn is_homogeneous_of(&self, deg: &Multidegree) -> bool {
        self.terms.keys().all(|t| &tensor_multidegree(t) == deg)
    }

    /// Common multidegree of all tensors, `None` for zero or mixed chains.
    pub fn multidegree(&self) -> Option<Multidegree> {
        let mut it = self.terms.keys().map(|t| tensor_multidegree(t));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// The comparison map to forms: `(1/n!) m_0 dm_1 ^ ... ^ dm_n`.
    /// Pole-bounded chains land in pole-bounded forms of the same
    /// multidegree.
    pub fn hkr_e(&self) -> LogForm {
        let n = self.degree;
        let fact: i64 = (1..=n as i64).product();
        let scale = rat_int(1) / rat_int(fact.max(1));
        let mut out = LogForm::zero(self.pair.clone(), n);
        for (tensor, coeff) in self.terms() {
            let mut form = LogForm::from_term(
                self.pair.clone(),
                FormTerm::new(tensor[0].clone(), vec![], vec![]),
                coeff * &scale,
            );
            for m in &tensor[1..] {
                let dm = LogForm::from_monomial(self.pair.clone(), m.clone()).de_rham_d();
                form = form.wedge(&dm);
            }
            out = out.add(&form);
        }
        out
    }
}

fn factor_sum_x(tensor: &Tensor) -> Vec<i64> {
    let s = tensor[0].i.len();
    let mut sum = vec![0i64; s];
    for m in tensor {
        for (acc, &e) in sum.iter_mut().zip(&m.i) {
            *acc += e;
        }
    }
    sum
}

/// Componentwise sum of factor exponents.
pub fn tensor_multidegree(tensor: &Tensor) -> Multidegree {
    let mut deg = tensor[0].multidegree();
    for m in &tensor[1..] {
        deg = deg.add(&m.multidegree());
    }
    deg
}

/// The comparison map from pole-bounded forms to chains: a basis term
/// `c x^i y^k dlog x_S ^ dy_T` splits into the carrier `x^{i - e_S} y^k`
/// followed by the antisymmetrized word of its letters
/// (`x_j` for `j` in `S`, then `y_l` for `l` in `T`).
pub fn hkr_eps(form: &LogForm) -> Result<ChainElement, ChainError> {
    if form.classify() == FormClass::Full {
        return Err(ChainError::UnboundedForm);
    }
    let pair = form.pair().clone();
    let q = form.degree();
    let mut out = ChainElement::zero(pair.clone(), q);
    for (term, coeff) in form.terms() {
        let mut carrier = term.monomial.clone();
        let mut letters: Vec<Monomial> = Vec::with_capacity(q);
        for &j in &term.dlog {
            carrier = carrier.shift_x(j, -1);
            letters.push(pair.x_gen(j));
        }
        for &l in &term.dy {
            letters.push(pair.y_gen(l));
        }
        for perm in (0..q).permutations(q) {
            let sign = perm_parity(&perm);
            let mut tensor = Vec::with_capacity(q + 1);
            tensor.push(carrier.clone());
            tensor.extend(perm.iter().map(|&idx| letters[idx].clone()));
            out.add_term(tensor, coeff * rat_int(sign));
        }
    }
    Ok(out)
}

fn perm_parity(perm: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl fmt::Display for ChainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms()
            .map(|(tensor, coeff)| {
                let body =
                    tensor.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" (x) ");
                if coeff.is_one() {
                    body
                } else {
                    let c = if coeff.is_integer() && coeff.numer().sign() != num_bigint::Sign::Minus
                    {
                        coeff.to_string()
                    } else {
                        format!("({coeff})")
                    };
                    format!("{c}*{body}")
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// Parses sums of scaled tensors: `x1^-1*y1 (x) x1^2`, `3/2*x1 (x) y1`,
/// terms joined by ` + ` or ` - `.
pub fn parse_chain(pair: &ModulusPair, input: &str) -> Result<ChainElement, ChainError> {
    let err = |reason: String| ChainError::Parse { input: input.to_string(), reason };
    let normalized = input.trim();
    if normalized.is_empty() {
        return Err(err("empty".into()));
    }
    // Split into signed summands on spaced plus/minus so monomial exponents
    // like x1^-2 survive.
    let mut summands: Vec<(i64, String)> = Vec::new();
    let mut rest = normalized;
    let mut sign = 1i64;
    loop {
        let plus = rest.find(" + ");
        let minus = rest.find(" - ");
        let (cut, next_sign) = match (plus, minus) {
            (Some(a), Some(b)) if a < b => (Some(a), 1),
            (Some(_), Some(b)) => (Some(b), -1),
            (Some(a), None) => (Some(a), 1),
            (None, Some(b)) => (Some(b), -1),
            (None, None) => (None, 1),
        };
        match cut {
            Some(pos) => {
                summands.push((sign, rest[..pos].to_string()));
                sign = next_sign;
                rest = &rest[pos + 3..];
            }
            None => {
                summands.push((sign, rest.to_string()));
                break;
            }
        }
    }

    let mut chain: Option<ChainElement> = None;
    for (sgn, summand) in summands {
        let factors: Vec<&str> = summand.split(" (x) ").map(str::trim).collect();
        if factors.iter().any(|f| f.is_empty()) {
            return Err(err("empty tensor factor".into()));
        }
        // A leading rational on the first factor, as in `3/2*x1` or `(-1)*x1`.
        let mut coeff = rat_int(sgn);
        let mut first = factors[0].to_string();
        if let Some((head, tail)) = first.split_once('*') {
            let head_txt = head.trim().trim_start_matches('(').trim_end_matches(')');
            if !head_txt.starts_with('x') && !head_txt.starts_with('y') {
                let c: Rational = head_txt
                    .parse()
                    .map_err(|_| err(format!("bad coefficient `{head}`")))?;
                coeff *= c;
                first = tail.to_string();
            }
        } else {
            let bare = first.trim().trim_start_matches('(').trim_end_matches(')');
            if !bare.starts_with('x') && !bare.starts_with('y') && bare != "1" {
                return Err(err(format!("bad tensor factor `{first}`")));
            }
        }
        let mut tensor = Vec::with_capacity(factors.len());
        tensor.push(
            pair.parse_monomial(&first)
                .map_err(|e| err(e.to_string()))?,
        );
        for f in &factors[1..] {
            tensor.push(pair.parse_monomial(f).map_err(|e| err(e.to_string()))?);
        }
        if tensor.iter().any(|m| m.k.iter().any(|&e| e < 0)) {
            return Err(err("factors must have non-negative y-exponents".into()));
        }
        let term = ChainElement::from_tensor(pair.clone(), tensor, coeff);
        chain = Some(match chain {
            None => term,
            Some(acc) => {
                if acc.degree() != term.degree() {
                    return Err(err("mixed tensor lengths".into()));
                }
                acc.add(&term)
            }
        });
    }
    Ok(chain.expect("at least one summand"))
}
