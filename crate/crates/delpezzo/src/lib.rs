//! Exact-arithmetic verification toolkit for low-degree del Pezzo surfaces.
//!
//! Everything here computes over arbitrary-precision rationals; no floating
//! point enters any verdict. The crate is organized around five concerns:
//!
//! * [`picard`] — intersection theory on the lattice Z^{1,n} with the
//!   diagonal form (+1, -1, …, -1): class enumeration ((-1)-classes, conic
//!   fiber classes, roots), nef/ample tests against the curve cone,
//!   inverse nef values and adjoint classifications, Weyl reflections,
//!   blowup transforms, and crepant-pullback coefficient solving.
//! * [`cylinder`] — anticanonical (and pluri-anticanonical) decomposition
//!   certificates: exact verification, coefficient-bound checks, parametric
//!   one-parameter families with exact admissible intervals, pencil
//!   consistency, and the degree-3 pencil condition battery.
//! * [`lnd`] (with [`poly`] and [`groebner`]) — sparse multivariate
//!   polynomials over the rationals, locally nilpotent derivation calculus,
//!   ideal preservation via Gröbner normal forms, gradings, slice search,
//!   kernel-multiple scaling, and denominator clearing.
//! * [`dualgraph`] — weighted dual graphs of curve configurations: blowup /
//!   blowdown rewriting scripts, isomorphism, negative definiteness, fiber
//!   multiplicities, and fiber sanity checks.
//! * [`nfdescent`] — the integer system coupling a plane-curve degree, a
//!   twist parameter, and a multiplicity multiset: verification, elementary
//!   transformations, normalization, constraint audit, descent, and a
//!   bounded exhaustive search (parallel over the degree when the
//!   `parallel` feature is enabled; a sequential engine is always built).
//!
//! The [`io`] module reads the JSON fixture formats consumed by the
//! command-line front end and by the test corpus.

pub mod rational;
pub mod matrix;
pub mod picard;
pub mod poly;
pub mod groebner;
pub mod lnd;
pub mod cylinder;
pub mod dualgraph;
pub mod nfdescent;
pub mod io;

pub use rational::Rat;
