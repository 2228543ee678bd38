//! Finitely generated commutative monoids of the shape `N^a + Z^b`, maps
//! between them, and the repletion of induced bar pieces.
//!
//! The n-fold sum of `M` amalgamated over `P` has group completion
//! `(M^gp)^n / L`, where `L` is the lattice of tuples `(phi q_1, ..., phi q_n)`
//! with `q_1 + ... + q_n = 0`; telescoping shows `L` is spanned by vectors
//! that add `phi(p)` in one slot and subtract it in the last.  The repletion
//! keeps exactly the classes whose total lies in `M`, and it splits as
//! `M + (M^gp / P^gp)^{n-1}` via the total together with the classes of the
//! trailing slots.  Both directions of that splitting are implemented here
//! and every quotient computation runs through an exact Smith decomposition.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{smith_normal_form, IntMatrix, Snf};
use crate::modpair::{ModulusPair, Monomial};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MonoidError {
    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),
    #[error("invalid monoid map: {0}")]
    InvalidMap(String),
    #[error("cannot parse monoid `{0}`")]
    Parse(String),
}

/// The monoid `N^nat + Z^int`, coordinates listed free-monoid part first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FgAbMonoid {
    nat: usize,
    int: usize,
}

impl FgAbMonoid {
    pub fn new(nat: usize, int: usize) -> Self {
        FgAbMonoid { nat, int }
    }

    pub fn nat_rank(&self) -> usize {
        self.nat
    }

    pub fn int_rank(&self) -> usize {
        self.int
    }

    pub fn dim(&self) -> usize {
        self.nat + self.int
    }

    pub fn is_group(&self) -> bool {
        self.nat == 0
    }

    /// Group completion `Z^{nat + int}`.
    pub fn group_completion(&self) -> FgAbMonoid {
        FgAbMonoid { nat: 0, int: self.dim() }
    }

    /// Membership of a lattice vector: only the `N`-coordinates constrain.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim(), "vector length");
        v[..self.nat].iter().all(|e| !e.is_negative())
    }

    pub fn contains_i64(&self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.dim(), "vector length");
        v[..self.nat].iter().all(|&e| e >= 0)
    }

    /// Parses `N^2+Z^1`, `N`, `Z^3`, or `0`.
    pub fn parse(input: &str) -> Result<Self, MonoidError> {
        let body = input.trim();
        if body == "0" {
            return Ok(FgAbMonoid::new(0, 0));
        }
        let mut nat = 0;
        let mut int = 0;
        for part in body.split('+') {
            let part = part.trim();
            let (letter, count) = match part.split_once('^') {
                Some((l, c)) => {
                    let c: usize =
                        c.parse().map_err(|_| MonoidError::Parse(input.to_string()))?;
                    (l.trim(), c)
                }
                None => (part, 1),
            };
            match letter {
                "N" => nat += count,
                "Z" => int += count,
                _ => return Err(MonoidError::Parse(input.to_string())),
            }
        }
        Ok(FgAbMonoid::new(nat, int))
    }
}

impl fmt::Display for FgAbMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.nat, self.int) {
            (0, 0) => write!(f, "0"),
            (n, 0) => write!(f, "N^{n}"),
            (0, z) => write!(f, "Z^{z}"),
            (n, z) => write!(f, "N^{n}+Z^{z}"),
        }
    }
}

/// Monoid map `P -> M`, stored as the integer matrix of the induced map on
/// group completions (`dim M` rows, `dim P` columns).
#[derive(Clone, Debug)]
pub struct MonoidMap {
    source: FgAbMonoid,
    target: FgAbMonoid,
    matrix: IntMatrix,
}

impl MonoidMap {
    /// Validates that generators of `P` land in `M`: `N`-generator images
    /// need non-negative `N`-coordinates, and `Z`-generator images (being
    /// invertible) need vanishing `N`-coordinates.
    pub fn new(
        source: FgAbMonoid,
        target: FgAbMonoid,
        matrix: IntMatrix,
    ) -> Result<Self, MonoidError> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(MonoidError::InvalidMap(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        for col in 0..source.dim() {
            for row in 0..target.nat_rank() {
                let e = matrix.get(row, col);
                if col < source.nat_rank() {
                    if e.is_negative() {
                        return Err(MonoidError::InvalidMap(format!(
                            "N-generator {col} maps to negative N-coordinate {row}"
                        )));
                    }
                } else if !e.is_zero() {
                    return Err(MonoidError::InvalidMap(format!(
                        "Z-generator {col} maps to nonzero N-coordinate {row}"
                    )));
                }
            }
        }
        Ok(MonoidMap { source, target, matrix })
    }

    pub fn source(&self) -> FgAbMonoid {
        self.source
    }

    pub fn target(&self) -> FgAbMonoid {
        self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(v)
    }
}

/// Membership in the repletion of the `n`-fold induced sum: the tuple of
/// group elements is replete-bar admissible exactly when its total lies in
/// the target monoid.
pub fn rep_membership(map: &MonoidMap, tuple: &[Vec<BigInt>]) -> bool {
    assert!(!tuple.is_empty(), "tuple needs at least one slot");
    let dim = map.target().dim();
    let mut total = vec![BigInt::zero(); dim];
    for g in tuple {
        assert_eq!(g.len(), dim, "slot dimension");
        for (acc, e) in total.iter_mut().zip(g) {
            *acc += e;
        }
    }
    map.target().contains(&total)
}

/// The splitting of the replete `n`-fold bar piece as
/// `M + (M^gp / P^gp)^{n-1}`, with explicit mutually inverse maps.
#[derive(Clone, Debug)]
pub struct RepletionIso {
    map: MonoidMap,
    n: usize,
    snf: Snf,
}

impl RepletionIso {
    pub fn new(map: MonoidMap, n: usize) -> Result<Self, MonoidError> {
        if n == 0 {
            return Err(MonoidError::InvalidMonoid("need at least one bar slot".into()));
        }
        let snf = smith_normal_form(map.matrix());
        Ok(RepletionIso { map, n, snf })
    }

    pub fn map(&self) -> &MonoidMap {
        &self.map
    }

    pub fn slots(&self) -> usize {
        self.n
    }

    /// Torsion orders in `M^gp / P^gp`: the invariant factors of the map's
    /// matrix (1 entries contribute trivial summands).
    pub fn quotient_invariant_factors(&self) -> Vec<BigInt> {
        self.snf.invariant_factors()
    }

    /// Rank of the free part of `M^gp / P^gp`.
    pub fn quotient_free_rank(&self) -> usize {
        self.map.target().dim() - self.snf.rank()
    }

    pub fn membership(&self, tuple: &[Vec<BigInt>]) -> bool {
        assert_eq!(tuple.len(), self.n, "slot count");
        rep_membership(&self.map, tuple)
    }

    /// Canonical form of `[g]` in `M^gp / P^gp`: rotate to Smith coordinates
    /// and reduce each torsion coordinate to `0 <= c < d_i`.
    pub fn class_of(&self, g: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(g.len(), self.map.target().dim(), "vector length");
        let mut c = self.snf.u.mul_vec(g);
        for (idx, d) in self.snf.d.diagonal().iter().enumerate() {
            if !d.is_zero() {
                c[idx] = c[idx].mod_floor(d);
            }
        }
        c
    }

    /// Set-theoretic section of the quotient map: lifts a canonical form
    /// back through the Smith rotation.
    pub fn section(&self, class: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(class.len(), self.map.target().dim(), "class length");
        self.snf.u_inv.mul_vec(class)
    }

    /// Forward direction of the splitting: the total (an element of `M`) and
    /// the quotient classes of slots `2..n`.
    pub fn forward(&self, tuple: &[Vec<BigInt>]) -> (Vec<BigInt>, Vec<Vec<BigInt>>) {
        assert!(self.membership(tuple), "tuple is not replete-bar admissible");
        let dim = self.map.target().dim();
        let mut total = vec![BigInt::zero(); dim];
        for g in tuple {
            for (acc, e) in total.iter_mut().zip(g) {
                *acc += e;
            }
        }
        let classes = tuple[1..].iter().map(|g| self.class_of(g)).collect();
        (total, classes)
    }

    /// Backward direction: lift each class through the section and balance
    /// the first slot so the total is exactly `m`.
    pub fn backward(&self, m: &[BigInt], classes: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        assert_eq!(m.len(), self.map.target().dim(), "total length");
        assert_eq!(classes.len(), self.n - 1, "class count");
        assert!(self.map.target().contains(m), "total must lie in the monoid");
        let lifts: Vec<Vec<BigInt>> = classes.iter().map(|c| self.section(c)).collect();
        let mut first: Vec<BigInt> = m.to_vec();
        for lift in &lifts {
            for (acc, e) in first.iter_mut().zip(lift) {
                *acc -= e;
            }
        }
        let mut tuple = vec![first];
        tuple.extend(lifts);
        tuple
    }

    /// Equality of repletion elements: the difference must lie in the
    /// relation lattice `L`.  Exact integer solve, no heuristics.
    pub fn equal_mod_relations(&self, a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> bool {
        assert_eq!(a.len(), self.n, "slot count");
        assert_eq!(b.len(), self.n, "slot count");
        let dm = self.map.target().dim();
        let dp = self.map.source().dim();
        let mut diff = Vec::with_capacity(self.n * dm);
        for (ga, gb) in a.iter().zip(b) {
            assert_eq!(ga.len(), dm);
            assert_eq!(gb.len(), dm);
            for (x, y) in ga.iter().zip(gb) {
                diff.push(x - y);
            }
        }
        if self.n == 1 {
            return diff.iter().all(|e| e.is_zero());
        }
        // L is spanned by phi(e_g) placed in slot i and subtracted from the
        // last slot, for i < n-1 and each generator g of P^gp.
        let mut lattice = IntMatrix::zero(self.n * dm, (self.n - 1) * dp);
        for slot in 0..self.n - 1 {
            for gen in 0..dp {
                let col = slot * dp + gen;
                for row in 0..dm {
                    let e = self.map.matrix().get(row, gen).clone();
                    lattice.set(slot * dm + row, col, e.clone());
                    lattice.set((self.n - 1) * dm + row, col, -e);
                }
            }
        }
        lattice.solve(&diff).is_some()
    }
}

/// Converts an i64 lattice vector for the BigInt-based repletion API.
pub fn to_lattice(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&e| BigInt::from(e)).collect()
}

/// Converts back, panicking outside i64 range (desk-scale inputs only).
pub fn from_lattice(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|e| e.to_i64().expect("lattice coordinate fits i64")).collect()
}

/// Replete-bar admissibility of a monomial tensor over a modulus pair: every
/// factor lies in the localized ring (y-exponents non-negative) and the
/// componentwise sum of x-exponents is non-negative.  This is exactly the
/// condition cutting the unlocalized chain model out of the localized one.
pub fn replete_bar_predicate(pair: &ModulusPair, tensor: &[Monomial]) -> bool {
    assert!(!tensor.is_empty(), "tensor needs at least one factor");
    for m in tensor {
        assert_eq!(m.i.len(), pair.s(), "x slots");
        assert_eq!(m.k.len(), pair.t(), "y slots");
        if m.k.iter().any(|&e| e < 0) {
            return false;
        }
    }
    let mut sum = vec![0i64; pair.s()];
    for m in tensor {
        for (acc, &e) in sum.iter_mut().zip(&m.i) {
            *acc += e;
        }
    }
    sum.iter().all(|&e| e >= 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        to_lattice(v)
    }

    #[test]
    fn monoid_membership_and_completion() {
        let m = FgAbMonoid::new(2, 1);
        assert!(m.contains(&big(&[0, 3, -5])));
        assert!(!m.contains(&big(&[-1, 0, 0])));
        assert_eq!(m.group_completion(), FgAbMonoid::new(0, 3));
        assert!(m.group_completion().contains(&big(&[-1, -1, -1])));
    }

    #[test]
    fn monoid_parse_display() {
        for text in ["N^2+Z^1", "N^3", "Z^2", "0"] {
            let m = FgAbMonoid::parse(text).unwrap();
            assert_eq!(m.to_string(), text);
        }
        assert_eq!(FgAbMonoid::parse("N"), Ok(FgAbMonoid::new(1, 0)));
        assert_eq!(FgAbMonoid::parse("N+N+Z"), Ok(FgAbMonoid::new(2, 1)));
        assert!(FgAbMonoid::parse("Q^2").is_err());
    }

    #[test]
    fn map_validation() {
        let p = FgAbMonoid::new(1, 0);
        let m = FgAbMonoid::new(1, 1);
        assert!(MonoidMap::new(p, m, IntMatrix::from_rows(&[vec![2], vec![-3]])).is_ok());
        assert!(MonoidMap::new(p, m, IntMatrix::from_rows(&[vec![-2], vec![0]])).is_err());
        // A Z-generator cannot hit the N-part.
        let pz = FgAbMonoid::new(0, 1);
        assert!(MonoidMap::new(pz, m, IntMatrix::from_rows(&[vec![1], vec![0]])).is_err());
        assert!(MonoidMap::new(pz, m, IntMatrix::from_rows(&[vec![0], vec![5]])).is_ok());
        // Shape mismatch.
        assert!(MonoidMap::new(p, m, IntMatrix::from_rows(&[vec![1]])).is_err());
    }

    #[test]
    fn quotient_presentation_hand_examples() {
        // Z / 2Z: N --2--> Z.
        let map = MonoidMap::new(
            FgAbMonoid::new(1, 0),
            FgAbMonoid::new(0, 1),
            IntMatrix::from_rows(&[vec![2]]),
        )
        .unwrap();
        let iso = RepletionIso::new(map, 2).unwrap();
        assert_eq!(iso.quotient_invariant_factors(), vec![BigInt::from(2)]);
        assert_eq!(iso.quotient_free_rank(), 0);
        assert_eq!(iso.class_of(&big(&[5])), big(&[1]));
        assert_eq!(iso.class_of(&big(&[-4])), big(&[0]));

        // Z^2 / (1,1)Z is free of rank 1.
        let map = MonoidMap::new(
            FgAbMonoid::new(1, 0),
            FgAbMonoid::new(2, 0),
            IntMatrix::from_rows(&[vec![1], vec![1]]),
        )
        .unwrap();
        let iso = RepletionIso::new(map, 2).unwrap();
        assert_eq!(iso.quotient_invariant_factors(), vec![BigInt::from(1)]);
        assert_eq!(iso.quotient_free_rank(), 1);
        // Classes agree exactly on the diagonal's cosets.
        assert_eq!(iso.class_of(&big(&[3, 1])), iso.class_of(&big(&[4, 2])));
        assert_ne!(iso.class_of(&big(&[3, 1])), iso.class_of(&big(&[3, 2])));
    }

    #[test]
    fn repletion_round_trip_hand_example() {
        // M = N over P = N by multiplication by 2 (the r = 2 pole picture),
        // two bar slots.
        let map = MonoidMap::new(
            FgAbMonoid::new(1, 0),
            FgAbMonoid::new(1, 0),
            IntMatrix::from_rows(&[vec![2]]),
        )
        .unwrap();
        let iso = RepletionIso::new(map, 2).unwrap();
        let tuple = vec![big(&[3]), big(&[-1])];
        assert!(iso.membership(&tuple));
        let (total, classes) = iso.forward(&tuple);
        assert_eq!(total, big(&[2]));
        assert_eq!(classes, vec![big(&[1])]);
        let back = iso.backward(&total, &classes);
        assert_eq!(back, vec![big(&[1]), big(&[1])]);
        // (3, -1) and (1, 1) differ by (2, -2) = (phi(1), -phi(1)).
        assert!(iso.equal_mod_relations(&tuple, &back));
        // (3, 0) is NOT the same repletion element as (1, 1).
        assert!(!iso.equal_mod_relations(&vec![big(&[3]), big(&[0])], &back));
    }

    #[test]
    fn repletion_with_torsion_and_free_part() {
        // M^gp = Z^2, P = Z mapping to (2, 0): quotient = Z/2 + Z.
        let map = MonoidMap::new(
            FgAbMonoid::new(0, 1),
            FgAbMonoid::new(0, 2),
            IntMatrix::from_rows(&[vec![2], vec![0]]),
        )
        .unwrap();
        let iso = RepletionIso::new(map, 3).unwrap();
        assert_eq!(iso.quotient_invariant_factors(), vec![BigInt::from(2)]);
        assert_eq!(iso.quotient_free_rank(), 1);
        let tuple = vec![big(&[1, 2]), big(&[3, -1]), big(&[-2, 4])];
        assert!(iso.membership(&tuple));
        let (total, classes) = iso.forward(&tuple);
        assert_eq!(total, big(&[2, 5]));
        let back = iso.backward(&total, &classes);
        assert!(iso.membership(&back));
        assert!(iso.equal_mod_relations(&tuple, &back));
        let (total2, classes2) = iso.forward(&back);
        assert_eq!(total, total2);
        assert_eq!(classes, classes2);
    }

    #[test]
    fn single_slot_repletion_is_the_monoid() {
        let map = MonoidMap::new(
            FgAbMonoid::new(1, 0),
            FgAbMonoid::new(1, 0),
            IntMatrix::from_rows(&[vec![3]]),
        )
        .unwrap();
        let iso = RepletionIso::new(map, 1).unwrap();
        assert!(iso.membership(&[big(&[4])]));
        assert!(!iso.membership(&[big(&[-1])]));
        assert!(iso.equal_mod_relations(&[big(&[4])], &[big(&[4])]));
        assert!(!iso.equal_mod_relations(&[big(&[4])], &[big(&[1])]));
    }

    #[test]
    fn membership_sees_only_the_nat_part() {
        // Z-coordinates never obstruct membership.
        let map = MonoidMap::new(
            FgAbMonoid::new(1, 0),
            FgAbMonoid::new(1, 1),
            IntMatrix::from_rows(&[vec![1], vec![1]]),
        )
        .unwrap();
        assert!(rep_membership(&map, &[big(&[2, -9]), big(&[-1, -3])]));
        assert!(!rep_membership(&map, &[big(&[-2, 0]), big(&[1, 0])]));
    }

    #[test]
    fn replete_bar_predicate_examples() {
        let pair = ModulusPair::new(1, 0, vec![2]).unwrap();
        let xm1 = Monomial::new(vec![-1], vec![]);
        let x2 = Monomial::new(vec![2], vec![]);
        let one = Monomial::new(vec![0], vec![]);
        assert!(replete_bar_predicate(&pair, &[xm1.clone(), x2]));
        assert!(!replete_bar_predicate(&pair, &[xm1, one]));

        let pair = ModulusPair::new(1, 1, vec![1]).unwrap();
        let neg_y = Monomial::new(vec![1], vec![-1]);
        let pos = Monomial::new(vec![0], vec![2]);
        assert!(!replete_bar_predicate(&pair, &[neg_y, pos.clone()]));
        assert!(replete_bar_predicate(&pair, &[pos.clone(), pos]));
    }
}
