//! Lattices closed under the rotation map of a quotient ring.
//!
//! A lattice `L` in `Q^n` is *cyclic* for a modulus `phi` when `H . v` stays
//! in `L` for every `v` in `L`, `H` the rotation matrix.  The minimal cyclic
//! lattice containing a vector `g` is spanned by the columns of the ideal
//! matrix `H*(g)`; sums of such lattices realize arbitrary finitely
//! generated modules as lattices.  A *prime spot* is a generator coprime to
//! the modulus — exactly the case where `H*(g)` is invertible — and its
//! certificate carries the modular inverse `u` and the derived vector
//! `T_g = t(H . u-bar)`, whose root evaluations control the dual of the
//! minimal lattice.

use crate::error::{Error, Result};
use crate::idealmat::{conjugate, ideal_matrix};
use crate::lattice::{canonical_basis_from_generators, membership, LatticeBasis};
use crate::polyring::{ring_mul, xgcd, QuotientContext, RingElement};
use crate::rat::Rational;

/// Witness that `g` is a prime spot: the inverse `u`, the vector `T_g`, and
/// the magnitudes of `T_g` at the roots of the modulus.
///
/// `ring_mul(u, g) = 1` holds exactly by construction.  For the circulant
/// modulus `x^n - 1` every `|T_g(theta_i)|` equals `1/|g(theta-bar_i)|` and
/// is therefore strictly positive.
#[derive(Clone, Debug)]
pub struct PrimeSpotCertificate {
    g: RingElement,
    u: RingElement,
    tg: RingElement,
    tg_values: Vec<f64>,
    tg_min: f64,
}

impl PrimeSpotCertificate {
    pub fn g(&self) -> &RingElement {
        &self.g
    }

    /// The modular inverse of `g`.
    pub fn u(&self) -> &RingElement {
        &self.u
    }

    /// `T_g = t(H . u-bar)` — the reversed inverse, rotated once.
    pub fn tg(&self) -> &RingElement {
        &self.tg
    }

    /// `|T_g(w_i)|` at the context roots, in root order.
    pub fn tg_values(&self) -> &[f64] {
        &self.tg_values
    }

    pub fn tg_min(&self) -> f64 {
        self.tg_min
    }
}

/// A cyclic lattice: a validated basis together with the ring it is cyclic
/// for and the module generators it was built from.
#[derive(Clone, Debug)]
pub struct CyclicLattice {
    basis: LatticeBasis,
    ctx: QuotientContext,
    generators: Vec<RingElement>,
}

impl CyclicLattice {
    pub fn basis(&self) -> &LatticeBasis {
        &self.basis
    }

    pub fn ctx(&self) -> &QuotientContext {
        &self.ctx
    }

    pub fn generators(&self) -> &[RingElement] {
        &self.generators
    }

    /// Wraps an existing basis after verifying it really is cyclic for the
    /// ring; the basis columns become the recorded generators.
    pub fn from_basis(basis: LatticeBasis, ctx: &QuotientContext) -> Result<Self> {
        if !is_cyclic(&basis, ctx)? {
            return Err(Error::NotMember);
        }
        let generators: Result<Vec<RingElement>> = (0..basis.rank())
            .map(|j| ctx.element_from_vector(&basis.column(j)))
            .collect();
        Ok(CyclicLattice { basis, ctx: ctx.clone(), generators: generators? })
    }
}

/// The smallest cyclic lattice containing `g`: the span of the columns of
/// `H*(g)`.  Full rank exactly when `g` is a prime spot; otherwise the
/// independent columns are extracted, so lower-rank results are fine.
pub fn minimal_cyclic_lattice(g: &RingElement) -> Result<CyclicLattice> {
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let ctx = g.ctx().clone();
    let cols = ideal_matrix(g).entries().columns();
    let basis = canonical_basis_from_generators(ctx.n(), &cols)?;
    Ok(CyclicLattice { basis, ctx, generators: vec![g.clone()] })
}

/// The cyclic lattice generated by a finite set of module generators:
/// the sum of their minimal cyclic lattices, computed in one Hermite
/// normal form pass over all ideal-matrix columns.
pub fn module_to_lattice(generators: &[RingElement]) -> Result<CyclicLattice> {
    let nonzero: Vec<&RingElement> = generators.iter().filter(|g| !g.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return Err(Error::ZeroInput);
    };
    let ctx = first.ctx().clone();
    let mut cols: Vec<Vec<Rational>> = Vec::new();
    for g in &nonzero {
        if g.ctx() != &ctx {
            return Err(Error::ContextMismatch);
        }
        cols.extend(ideal_matrix(g).entries().columns());
    }
    let basis = canonical_basis_from_generators(ctx.n(), &cols)?;
    Ok(CyclicLattice { basis, ctx, generators: generators.to_vec() })
}

/// True iff the lattice is closed under the rotation map: `H . beta` is a
/// member for every basis column `beta` (closure extends to the whole
/// lattice by linearity).
pub fn is_cyclic(l: &LatticeBasis, ctx: &QuotientContext) -> Result<bool> {
    if l.ambient_dim() != ctx.n() {
        return Err(Error::DimensionMismatch { expected: ctx.n(), got: l.ambient_dim() });
    }
    for j in 0..l.rank() {
        let rotated = ctx.rotation().mul_vec(&l.column(j));
        if membership(l, &rotated)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tests coprimality of `g` with the modulus and assembles the certificate.
/// A failure carries the offending gcd as witness.
pub fn is_prime_spot(g: &RingElement) -> Result<PrimeSpotCertificate> {
    let ctx = g.ctx();
    let (d, u_raw, _) = xgcd(g.rep(), ctx.phi())?;
    if d.degree() != 0 {
        return Err(Error::NotPrimeSpot { gcd: d });
    }
    let u = ctx.element(u_raw);
    debug_assert_eq!(ring_mul(&u, g).unwrap(), ctx.one_element());
    let ubar = conjugate(&u);
    let shifted = ctx.rotation().mul_vec(&ubar.value().to_vector());
    let tg = ctx.element_from_vector(&shifted)?;
    let tg_values: Vec<f64> =
        ctx.roots().iter().map(|w| tg.rep().eval_complex(*w).norm()).collect();
    let tg_min = tg_values.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(PrimeSpotCertificate { g: g.clone(), u, tg, tg_values, tg_min })
}

/// Verifies the product-lattice inclusion: every column of
/// `H*(beta_1) ... H*(beta_m)` must be a member of each minimal cyclic
/// lattice `L(H*(beta_i))`.  Returns the verdict; `false` signals a broken
/// implementation, not a property of the inputs.
pub fn product_inclusion_check(betas: &[RingElement]) -> Result<bool> {
    assert!(betas.len() >= 2, "inclusion check needs at least two factors");
    if betas.iter().any(|b| b.is_zero()) {
        // The product matrix is zero and the zero vector is in every
        // lattice.
        return Ok(true);
    }
    let mut product = ideal_matrix(&betas[0]).entries().clone();
    for b in &betas[1..] {
        if b.ctx() != betas[0].ctx() {
            return Err(Error::ContextMismatch);
        }
        product = product.matmul(ideal_matrix(b).entries());
    }
    for b in betas {
        let factor = minimal_cyclic_lattice(b)?;
        for j in 0..product.cols() {
            let col = product.column(j);
            if col.iter().all(num::Zero::is_zero) {
                continue;
            }
            if membership(factor.basis(), &col)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
