//! Ideal matrices: the matrix algebra image of the quotient ring.
//!
//! For `f` in `Q[x]/<phi>` the ideal matrix `H*(f)` stacks the columns
//! `f, Hf, ..., H^{n-1}f`, where `H` is the rotation matrix of the modulus.
//! Equivalently `H*(f) = f(H)`, which makes `f -> H*(f)` an injective ring
//! homomorphism: products of ideal matrices are ideal matrices of ring
//! products, determinants factor through root evaluations, and inverses come
//! from modular inverses.  For `phi = x^n - 1` these are exactly the
//! circulant matrices, and the transpose is again an ideal matrix.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polyring::{inverse_mod_phi, QuotientContext, RingElement};
use crate::rat::Rational;

/// The matrix `H*(f)` together with its generator.
#[derive(Clone, PartialEq, Debug)]
pub struct IdealMatrix {
    entries: Matrix,
    generator: RingElement,
}

impl IdealMatrix {
    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn generator(&self) -> &RingElement {
        &self.generator
    }

    pub fn ctx(&self) -> &QuotientContext {
        self.generator.ctx()
    }
}

/// Coefficient vector of an element reversed end to end — the conjugation
/// `g -> g-bar`.  An involution: conjugating twice gives the element back.
#[derive(Clone, PartialEq, Debug)]
pub struct ConjugateVector {
    value: RingElement,
}

impl ConjugateVector {
    pub fn value(&self) -> &RingElement {
        &self.value
    }
}

/// The rotation (companion) matrix `H` of the modulus: ones on the
/// subdiagonal, negated lower coefficients of `phi` in the last column.
/// `H*v` is the coefficient vector of `x*v(x)` in the ring.
pub fn rotation_matrix(ctx: &QuotientContext) -> Matrix {
    ctx.rotation().clone()
}

/// The ideal matrix `H*(f)`: column `k` is `H^k * f`.
pub fn ideal_matrix(f: &RingElement) -> IdealMatrix {
    let ctx = f.ctx();
    let n = ctx.n();
    let v = f.to_vector();
    let columns: Vec<Vec<Rational>> =
        (0..n).map(|k| ctx.rotation_power(k).mul_vec(&v)).collect();
    IdealMatrix { entries: Matrix::from_columns(&columns), generator: f.clone() }
}

/// The convolution-style product `f * g = H*(f) . g`, computed literally as
/// a matrix-vector product.  Agrees with [`crate::polyring::ring_mul`] —
/// the two routes are kept separate so tests can compare them.
pub fn conv_product(f: &RingElement, g: &RingElement) -> Result<RingElement> {
    if f.ctx() != g.ctx() {
        return Err(Error::ContextMismatch);
    }
    let image = ideal_matrix(f).entries.mul_vec(&g.to_vector());
    f.ctx().element_from_vector(&image)
}

/// Exact and spectral determinants of `H*(f)`.
///
/// The exact value comes from fraction-free elimination; the spectral value
/// is the product of `f` evaluated at the root approximations of the
/// modulus (real up to roundoff, so the real part is returned).  The two
/// agree to about six digits and tests hold them to that.
pub fn ideal_det(f: &RingElement) -> (Rational, f64) {
    let exact = ideal_matrix(f).entries.det();
    let mut spectral = num::complex::Complex64::new(1.0, 0.0);
    for w in f.ctx().roots() {
        spectral *= f.rep().eval_complex(*w);
    }
    (exact, spectral.re)
}

/// Inverse of an ideal matrix, which is itself ideal: `H*(f)^{-1} = H*(u)`
/// for `u` the modular inverse of `f`.  Fails with `NotCoprime` when `f`
/// shares a factor with the modulus.
pub fn ideal_inverse(f: &RingElement) -> Result<IdealMatrix> {
    let u = inverse_mod_phi(f)?;
    Ok(ideal_matrix(&u))
}

/// Reverses the coefficient vector of `g`.
pub fn conjugate(g: &RingElement) -> ConjugateVector {
    let mut v = g.to_vector();
    v.reverse();
    let value = g
        .ctx()
        .element_from_vector(&v)
        .expect("reversal preserves length");
    ConjugateVector { value }
}

/// For `phi = x^n - 1`: the ideal matrix `H*(H . g-bar)`, which equals the
/// transpose of `H*(g)` entry for entry (checked exactly).  Other moduli
/// have no such closed form and return `UnsupportedModulus`.
pub fn circulant_transpose(g: &RingElement) -> Result<IdealMatrix> {
    let ctx = g.ctx();
    if !ctx.is_circulant() {
        return Err(Error::UnsupportedModulus);
    }
    let gbar = conjugate(g);
    let shifted = ctx.rotation().mul_vec(&gbar.value().to_vector());
    let h_gbar = ctx.element_from_vector(&shifted)?;
    let result = ideal_matrix(&h_gbar);
    debug_assert_eq!(
        result.entries,
        ideal_matrix(g).entries.transpose(),
        "transpose identity must hold for x^n - 1"
    );
    Ok(result)
}
