//! Exact-arithmetic computation of characteristic varieties for complements
//! of divisors with isolated non-normal crossings.
//!
//! A divisor on a smooth simply connected projective variety whose
//! non-normal-crossings locus is a finite set of points has a complement
//! whose first nontrivial higher homotopy group (in the expected degree) is
//! a finitely generated module over the group ring of the first homology.
//! The support loci of that module — the characteristic varieties — are
//! finite unions of translated subtori of the character torus, and they are
//! computable: this crate carries out the computation with big-integer and
//! big-rational arithmetic only, so every reported dimension, membership
//! verdict, and polytope vertex is exact.
//!
//! The pieces fit together as follows.
//!
//! * [`ring`] — sparse Laurent polynomials, characters of the torus
//!   `(Q/Z)^r` with values in cyclotomic fields, and exact cyclotomic
//!   arithmetic used when a complex is specialized at a character.
//! * [`intmat`] — Hermite and Smith normal forms, saturated integer kernels,
//!   and integer/rational solvers; the foundation for lattice bookkeeping.
//! * [`complex`] — finite free complexes over Laurent rings: Koszul models
//!   for cones over generic arrangements (and their weighted variants),
//!   products with a circle, specialization at characters, and homology
//!   dimensions.
//! * [`homology`] — divisor-level data: first homology of the complement via
//!   intersection pairings and Smith normal form.
//! * [`modpres`] — presentations of the homotopy module, Fitting-ideal
//!   generators, characteristic-variety membership tests, translated
//!   subtori in canonical form, pullbacks along maps of character tori, and
//!   grid verification of candidate components.
//! * [`polytope`] — rational polytopes in the unit cube, faces cut by
//!   hyperplanes, local polytopes attached to ordinary singular points, and
//!   global polytopes with their region decomposition.
//! * [`covers`] — homology of finite abelian covers by character-eigenspace
//!   decomposition, branched covers of the line with exact eigenspace
//!   dimensions of holomorphic forms, and the comparison between face data
//!   and eigenspace dimensions.
//! * [`zeta`] — motivic zeta functions assembled from resolution data,
//!   topological and Hodge realizations, and limits at infinity compared
//!   with homology of local systems.
//! * [`fixtures`] — the worked examples (generic cones, cones over curves,
//!   arrangements of planes through a point, an eight-plane configuration
//!   with four-fold points) shared by the test suites and the CLI.
//!
//! Everything downstream of a character evaluation happens in `Q(zeta_m)`
//! for the exact order `m` of the character; no floating point enters at
//! any stage.

pub mod complex;
pub mod covers;
pub mod error;
pub mod fixtures;
pub mod homology;
pub mod intmat;
pub mod modpres;
pub mod polytope;
pub mod ring;
pub mod zeta;

pub use error::{Error, Result};
