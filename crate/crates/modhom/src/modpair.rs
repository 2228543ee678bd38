//! Modulus pairs and the monomials of their coefficient rings.
//!
//! A pair is `A = k[x_1..x_s, y_1..y_t]` together with the monomial
//! `f = x_1^{r_1} * ... * x_s^{r_s}`.  Inverting `f` inverts exactly the
//! x-variables, so monomials of the localization carry integer x-exponents
//! and non-negative y-exponents.  The bounded-pole module `(sqrt(f))/f`
//! consists of the monomials with `i_j >= 1 - r_j` in every x-slot.

use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PairError {
    #[error("invalid modulus pair: {0}")]
    InvalidPair(String),
    #[error("cannot parse monomial `{input}`: {reason}")]
    ParseMonomial { input: String, reason: String },
    #[error("cannot parse multidegree `{input}`: {reason}")]
    ParseDegree { input: String, reason: String },
}

/// The pair `(k[x, y], x^r)`.  `r` has one multiplicity per x-variable,
/// each at least 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ModulusPair {
    s: usize,
    t: usize,
    r: Vec<i64>,
}

impl ModulusPair {
    pub fn new(s: usize, t: usize, r: Vec<i64>) -> Result<Self, PairError> {
        if r.len() != s {
            return Err(PairError::InvalidPair(format!(
                "expected {} multiplicities, got {}",
                s,
                r.len()
            )));
        }
        if let Some(bad) = r.iter().find(|&&m| m < 1) {
            return Err(PairError::InvalidPair(format!("multiplicity {bad} < 1")));
        }
        Ok(ModulusPair { s, t, r })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn r(&self) -> &[i64] {
        &self.r
    }

    /// Top form degree: one slot per variable.
    pub fn top_degree(&self) -> usize {
        self.s + self.t
    }

    /// Lower bound `1 - r_j` on x-exponents of bounded-pole monomials.
    pub fn pole_bound(&self, j: usize) -> i64 {
        1 - self.r[j]
    }

    pub fn unit(&self) -> Monomial {
        Monomial::unit(self.s, self.t)
    }

    /// The generator `x_{j+1}` (0-based slot).
    pub fn x_gen(&self, j: usize) -> Monomial {
        assert!(j < self.s, "x index out of range");
        let mut m = self.unit();
        m.i[j] = 1;
        m
    }

    /// The generator `y_{l+1}` (0-based slot).
    pub fn y_gen(&self, l: usize) -> Monomial {
        assert!(l < self.t, "y index out of range");
        let mut m = self.unit();
        m.k[l] = 1;
        m
    }

    fn check_lengths(&self, m: &Monomial) {
        assert_eq!(m.i.len(), self.s, "monomial x-exponent length");
        assert_eq!(m.k.len(), self.t, "monomial y-exponent length");
    }

    /// Membership in the polynomial ring `A` itself.
    pub fn in_ring(&self, m: &Monomial) -> bool {
        self.check_lengths(m);
        m.i.iter().all(|&e| e >= 0) && m.k.iter().all(|&e| e >= 0)
    }

    /// True when the monomial involves only x-variables, i.e. becomes a unit
    /// after inverting `f`.
    pub fn is_unit_monomial(&self, m: &Monomial) -> bool {
        self.check_lengths(m);
        m.k.iter().all(|&e| e == 0)
    }

    /// Membership in the bounded-pole module `(sqrt(f))/f = x^{1-r} * A`.
    pub fn in_mo(&self, m: &Monomial) -> bool {
        self.check_lengths(m);
        m.i.iter().zip(&self.r).all(|(&e, &mult)| e >= 1 - mult)
            && m.k.iter().all(|&e| e >= 0)
    }

    /// Parses `x1^-2*x2^3*y1` syntax; `1` is the unit monomial.
    pub fn parse_monomial(&self, input: &str) -> Result<Monomial, PairError> {
        let err = |reason: &str| PairError::ParseMonomial {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let body = input.trim();
        if body.is_empty() {
            return Err(err("empty"));
        }
        let mut m = self.unit();
        if body == "1" {
            return Ok(m);
        }
        for factor in body.split('*') {
            let factor = factor.trim();
            let rest = factor
                .strip_prefix('x')
                .map(|r| ('x', r))
                .or_else(|| factor.strip_prefix('y').map(|r| ('y', r)));
            let Some((var, rest)) = rest else {
                return Err(err(&format!("factor `{factor}` must start with x or y")));
            };
            let (idx_str, exp) = match rest.split_once('^') {
                Some((idx, e)) => {
                    let exp: i64 = e
                        .parse()
                        .map_err(|_| err(&format!("bad exponent `{e}`")))?;
                    (idx, exp)
                }
                None => (rest, 1),
            };
            let idx: usize = idx_str
                .parse()
                .map_err(|_| err(&format!("bad index `{idx_str}`")))?;
            let bound = if var == 'x' { self.s } else { self.t };
            if idx == 0 || idx > bound {
                return Err(err(&format!("{var}{idx} out of range (1..={bound})")));
            }
            if var == 'x' {
                m.i[idx - 1] += exp;
            } else {
                m.k[idx - 1] += exp;
            }
        }
        Ok(m)
    }

    /// Parses a multidegree given as `s + t` comma-separated integers,
    /// x-degrees first.
    pub fn parse_multidegree(&self, input: &str) -> Result<Multidegree, PairError> {
        let err = |reason: String| PairError::ParseDegree { input: input.to_string(), reason };
        let parts: Result<Vec<i64>, _> =
            input.split(',').map(|p| p.trim().parse::<i64>()).collect();
        let parts = parts.map_err(|e| err(e.to_string()))?;
        if parts.len() != self.s + self.t {
            return Err(err(format!("expected {} components, got {}", self.s + self.t, parts.len())));
        }
        Ok(Multidegree {
            dx: parts[..self.s].to_vec(),
            dy: parts[self.s..].to_vec(),
        })
    }
}

impl fmt::Display for ModulusPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "s={},t={},r=[{}]",
            self.s,
            self.t,
            self.r.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}

/// Monomial `x^i * y^k` of the localized ring.  Plain exponent data; which
/// submodule it lies in is decided by the pair's predicates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub i: Vec<i64>,
    pub k: Vec<i64>,
}

impl Monomial {
    pub fn new(i: Vec<i64>, k: Vec<i64>) -> Self {
        Monomial { i, k }
    }

    pub fn unit(s: usize, t: usize) -> Self {
        Monomial { i: vec![0; s], k: vec![0; t] }
    }

    pub fn is_unit(&self) -> bool {
        self.i.iter().all(|&e| e == 0) && self.k.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.i.len(), other.i.len(), "x length");
        assert_eq!(self.k.len(), other.k.len(), "y length");
        Monomial {
            i: self.i.iter().zip(&other.i).map(|(a, b)| a + b).collect(),
            k: self.k.iter().zip(&other.k).map(|(a, b)| a + b).collect(),
        }
    }

    /// Multiplies by `x_j^by`.
    pub fn shift_x(&self, j: usize, by: i64) -> Monomial {
        let mut m = self.clone();
        m.i[j] += by;
        m
    }

    /// Multiplies by `y_l^by`.
    pub fn shift_y(&self, l: usize, by: i64) -> Monomial {
        let mut m = self.clone();
        m.k[l] += by;
        m
    }

    pub fn multidegree(&self) -> Multidegree {
        Multidegree { dx: self.i.clone(), dy: self.k.clone() }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, &e) in self.i.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", j + 1)),
                _ => parts.push(format!("x{}^{}", j + 1, e)),
            }
        }
        for (l, &e) in self.k.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("y{}", l + 1)),
                _ => parts.push(format!("y{}^{}", l + 1, e)),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Multidegree in the exponent lattice: x-part and y-part kept separate.
/// Every complex in this crate is a direct sum over these.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multidegree {
    pub dx: Vec<i64>,
    pub dy: Vec<i64>,
}

impl Multidegree {
    pub fn new(dx: Vec<i64>, dy: Vec<i64>) -> Self {
        Multidegree { dx, dy }
    }

    pub fn zero(s: usize, t: usize) -> Self {
        Multidegree { dx: vec![0; s], dy: vec![0; t] }
    }

    pub fn add(&self, other: &Multidegree) -> Multidegree {
        Multidegree {
            dx: self.dx.iter().zip(&other.dx).map(|(a, b)| a + b).collect(),
            dy: self.dy.iter().zip(&other.dy).map(|(a, b)| a + b).collect(),
        }
    }

    /// Total y-degree, the grading weight that survives setting all x-degrees
    /// aside.
    pub fn total_dy(&self) -> i64 {
        self.dy.iter().sum()
    }

    pub fn flat(&self) -> Vec<i64> {
        self.dx.iter().chain(self.dy.iter()).copied().collect()
    }
}

impl Serialize for Multidegree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let flat = self.flat();
        let mut seq = serializer.serialize_seq(Some(flat.len()))?;
        for v in flat {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dx = self.dx.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        let dy = self.dy.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({dx};{dy})")
    }
}
