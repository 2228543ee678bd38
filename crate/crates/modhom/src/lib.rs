//! Exact computations for monomial modulus pairs: the Laurent coefficient
//! ring `k[x^{±1}, y]` carved out by a monomial `f = x^r`, its bounded-pole
//! differential forms with log poles, and the Hochschild / cyclic side of the
//! same picture.
//!
//! Everything is multigraded by the exponent lattice, so every question about
//! dimensions, differentials, and comparison maps restricts to finite
//! rational linear algebra in a single multidegree.  All arithmetic is exact
//! (arbitrary-precision rationals and integers); there are no floats anywhere.
//!
//! Module map:
//! * [`arith`]: rationals, sparse exact linear algebra, Smith normal form.
//! * [`modpair`]: modulus pairs, monomials, multidegrees, membership tests.
//! * [`forms`]: log differential forms in the `dlog x` / `dy` basis.
//! * [`hochschild`]: monomial tensor chains and the operators `b`, `t`, `B`,
//!   the shuffle product, and the comparison maps to and from forms.
//! * [`homology`]: per-multidegree complexes, de Rham cohomology, cyclic
//!   dimension formulas and their independent bicomplex cross-check.
//! * [`monoids`]: finitely generated commutative monoids, group completion,
//!   and the repletion of induced monoids with its explicit splitting.
//! * [`verify`]: seeded, deterministic property suites over all of the above.

pub mod arith;
pub mod forms;
pub mod hochschild;
pub mod homology;
pub mod modpair;
pub mod monoids;
pub mod verify;

pub use arith::{IntMatrix, Rational, SparseMatrixQ};
pub use monoids::{FgAbMonoid, MonoidMap, RepletionIso};
pub use hochschild::{ChainClass, ChainElement};
pub use verify::{run_all, run_case, run_suite, Suite, SuiteConfig, SuiteReport, SuiteStatus};
pub use homology::{cyclic_dims_bicomplex, cyclic_dims_formula, cyclic_report, derham_report, hh_dimension, hkr_cycle_probe, CyclicVariant, DimensionReport, GradedComplex, ProbeOutcome};
pub use forms::{FormClass, FormTerm, LogForm};
pub use modpair::{ModulusPair, Monomial, Multidegree};
