//! Ideal matrices, cyclic lattices, and smoothing-parameter bounds.
//!
//! This crate works in the quotient ring `R = Z[x]/<phi>` (and its rational
//! extension `Q[x]/<phi>`) for a monic integer polynomial `phi` with nonzero
//! constant term.  Polynomials of degree below `n = deg phi` are identified
//! with coefficient column vectors, lowest degree first, and multiplication
//! by `x` becomes multiplication by the rotation matrix of `phi`.  On top of
//! that correspondence the crate builds:
//!
//! * **`polyring`** — arithmetic in `Q[x]/<phi>`: reduction, convolution-style
//!   multiplication, extended gcd, modular inverses, and the complex roots of
//!   `phi` needed for spectral formulas.
//! * **`idealmat`** — the ideal matrix `H*(f) = [f, Hf, ..., H^{n-1}f]` and
//!   its algebra: the ring homomorphism property, determinants through root
//!   products, inverses, and the circulant transpose identity.
//! * **`lattice`** — exact rational lattice bases: Gram matrices, duals,
//!   Gram-Schmidt, shortest vectors by exhaustive enumeration, sums and
//!   sublattice indices through Hermite normal forms.
//! * **`cyclic`** — lattices closed under the rotation `H`: construction from
//!   module generators, cyclicity tests, and prime-spot certificates for
//!   principal ideal lattices.
//! * **`smoothing`** — Gaussian mass sums over lattices, the smoothing
//!   parameter `eta_eps` by bisection, three upper bounds on it, and a
//!   discrete Gaussian sampler with a statistical self-check.
//!
//! All algebra away from root finding and spectral estimates is carried out
//! in exact `BigRational` arithmetic, so equalities asserted by the API are
//! true equalities, not float coincidences.

pub mod cyclic;
pub mod error;
pub mod idealmat;
pub mod lattice;
pub mod linalg;
pub mod polyring;
pub mod rat;
pub mod smoothing;
pub mod symeig;

pub use error::{Error, Result};
pub use rat::Rational;
