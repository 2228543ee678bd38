//! Property-based invariants for the arithmetic layer and the text formats.
//! The domain-specific theorems get their own randomized suites; what lives
//! here are the mechanical contracts those suites stand on.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::collection::vec;
use proptest::prelude::*;

use modhom::arith::{rat, smith_normal_form, IntMatrix, Rational, SparseMatrixQ};
use modhom::forms::{basis_of, FormClass};
use modhom::modpair::{ModulusPair, Monomial, Multidegree};

fn int_matrix(rows: usize, cols: usize, entries: &[i64]) -> IntMatrix {
    let mut m = IntMatrix::zero(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, BigInt::from(entries[i * cols + j]));
        }
    }
    m
}

fn is_identity(m: &IntMatrix) -> bool {
    (0..m.rows()).all(|i| {
        (0..m.cols()).all(|j| {
            let want = if i == j { BigInt::one() } else { BigInt::zero() };
            m.get(i, j) == &want
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn smith_decomposition_is_exact(
        rows in 1..4usize,
        cols in 1..4usize,
        entries in vec(-9..9i64, 16),
    ) {
        let m = int_matrix(rows, cols, &entries);
        let snf = smith_normal_form(&m);
        prop_assert_eq!(&snf.u.mul(&m).mul(&snf.v), &snf.d);
        prop_assert!(snf.d.is_diagonal());
        prop_assert!(is_identity(&snf.u.mul(&snf.u_inv)));
        prop_assert!(is_identity(&snf.v.mul(&snf.v_inv)));
        let factors = snf.invariant_factors();
        for pair in factors.windows(2) {
            prop_assert!((&pair[1] % &pair[0]).is_zero(), "divisibility chain");
        }
    }

    #[test]
    fn integer_solve_solutions_check_out(
        rows in 1..4usize,
        cols in 1..4usize,
        entries in vec(-6..6i64, 16),
        coeffs in vec(-4..4i64, 4),
    ) {
        let m = int_matrix(rows, cols, &entries);
        // Build a right hand side that is certainly solvable, then verify
        // whatever solution comes back.
        let x: Vec<BigInt> = coeffs.iter().take(cols).map(|&c| BigInt::from(c)).collect();
        let rhs = m.mul_vec(&x);
        let solved = m.solve(&rhs);
        prop_assert!(solved.is_some(), "a constructed system must be solvable");
        prop_assert_eq!(m.mul_vec(&solved.unwrap()), rhs);
    }

    #[test]
    fn rational_rank_nullity_and_kernel(
        rows in 1..5usize,
        cols in 1..5usize,
        entries in vec(-5..5i64, 25),
    ) {
        let mut m = SparseMatrixQ::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = entries[i * cols + j];
                if e != 0 {
                    m.set(i, j, rat(e, 1));
                }
            }
        }
        let rank = m.rank();
        prop_assert!(rank <= rows.min(cols));
        let kernel = m.kernel_basis();
        prop_assert_eq!(rank + kernel.len(), cols, "rank-nullity");
        for v in &kernel {
            let image = m.mul_vec(v);
            prop_assert!(image.iter().all(Rational::is_zero), "kernel vector maps to zero");
        }
    }

    #[test]
    fn rational_solve_verifies(
        rows in 1..5usize,
        cols in 1..5usize,
        entries in vec(-5..5i64, 25),
        coeffs in vec(-3..3i64, 5),
    ) {
        let mut m = SparseMatrixQ::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = entries[i * cols + j];
                if e != 0 {
                    m.set(i, j, rat(e, 1));
                }
            }
        }
        let x: Vec<Rational> = coeffs.iter().take(cols).map(|&c| rat(c, 1)).collect();
        let rhs = m.mul_vec(&x);
        let solved = m.solve(&rhs).expect("shapes agree");
        prop_assert!(solved.is_some());
        prop_assert_eq!(m.mul_vec(&solved.unwrap()), rhs);
    }

    #[test]
    fn monomial_text_round_trips(
        i in vec(-5..5i64, 2),
        k in vec(0..5i64, 2),
    ) {
        let pair = ModulusPair::new(2, 2, vec![2, 3]).unwrap();
        let m = Monomial::new(i, k);
        let rendered = m.to_string();
        let parsed = pair.parse_monomial(&rendered).unwrap();
        prop_assert_eq!(parsed, m);
    }

    #[test]
    fn multidegree_text_round_trips(
        dx in vec(-7..7i64, 2),
        dy in vec(0..7i64, 1),
    ) {
        let pair = ModulusPair::new(2, 1, vec![1, 2]).unwrap();
        let deg = Multidegree::new(dx, dy);
        let text = deg
            .flat()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",");
        prop_assert_eq!(pair.parse_multidegree(&text).unwrap(), deg);
    }

    #[test]
    fn form_bases_answer_the_query_exactly(
        s in 0..3usize,
        t in 0..3usize,
        r_seed in vec(1..4i64, 3),
        dx in vec(-2..3i64, 3),
        dy in vec(0..3i64, 3),
        q_seed in 0..6usize,
    ) {
        let r: Vec<i64> = r_seed.iter().take(s).copied().collect();
        let pair = ModulusPair::new(s, t, r).unwrap();
        let q = q_seed % (pair.top_degree() + 1);
        let deg = Multidegree::new(
            dx.iter().take(s).copied().collect(),
            dy.iter().take(t).copied().collect(),
        );
        let basis = basis_of(&pair, FormClass::MOmega, q, &deg).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for term in &basis {
            prop_assert_eq!(term.degree(), q);
            prop_assert_eq!(term.multidegree(), deg.clone());
            for j in 0..s {
                prop_assert!(term.monomial.i[j] >= pair.pole_bound(j), "pole bound");
            }
            for l in 0..t {
                prop_assert!(term.monomial.k[l] >= 0);
            }
            prop_assert!(seen.insert(term.clone()), "no duplicates");
        }
    }
}
