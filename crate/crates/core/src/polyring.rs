//! Polynomials over the rationals and arithmetic in `Q[x]/<phi>`.
//!
//! A [`Poly`] is a dense coefficient vector, lowest degree first, with no
//! stored trailing zeros; the zero polynomial has degree `-1`.  A
//! [`QuotientContext`] fixes a modulus `phi` — monic, integer, nonzero
//! constant term, squarefree — and caches everything derived from it: the
//! rotation (companion) matrix `H`, its powers up to `H^{n-1}`, and floating
//! approximations of the complex roots.  A [`RingElement`] is an eagerly
//! reduced residue tied to its context.
//!
//! All ring arithmetic is exact rational arithmetic; floating point appears
//! only in the root approximations.

use std::fmt;
use std::sync::Arc;

use num::complex::Complex64;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rat::{format_rational, to_f64, Rational};

/// Dense univariate polynomial with exact rational coefficients, lowest
/// degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    /// Builds a polynomial from coefficients (lowest degree first), trimming
    /// trailing zeros.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Poly { coeffs }
    }

    /// Convenience constructor from integer coefficients, lowest first.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| crate::rat::rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the stored degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree, with the convention `deg 0 = -1`.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division: returns `(q, r)` with `self = q*d + r` and
    /// `deg r < deg d`.  Panics on a zero divisor.
    pub fn divmod(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.degree() < d.degree() {
            return (Poly::zero(), self.clone());
        }
        let dn = d.coeffs.len() - 1;
        let lead_inv = d.coeffs[dn].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dn];
        for k in (dn..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] * &lead_inv;
            for j in 0..dn {
                let v = &d.coeffs[j] * &q;
                rem[k - dn + j] -= v;
            }
            rem[k] = Rational::zero();
            quot[k - dn] = q;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * crate::rat::rat(i as i64 + 1))
                .collect(),
        )
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Floating evaluation at a complex point by Horner's rule.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + Complex64::new(to_f64(c), 0.0);
        }
        acc
    }

    /// Scales the polynomial so the leading coefficient is one.  The zero
    /// polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{}", format_rational(&mag))?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{}*x", format_rational(&mag))?,
                (_, true) => write!(f, "x^{}", k)?,
                (_, false) => write!(f, "{}*x^{}", format_rational(&mag), k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

/// Extended Euclid over `Q[x]`: returns `(d, u, v)` with `u*a + v*b = d`,
/// where `d = gcd(a, b)` is monic (or a constant 1 when the gcd is a unit).
pub fn xgcd(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r2) = r0.divmod(&r1);
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = s0.sub(&q.mul(&s1));
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = t0.sub(&q.mul(&t1));
        t0 = std::mem::replace(&mut t1, t2);
    }
    let lead = r0.leading().expect("gcd of non-zero inputs is nonzero").clone();
    let inv = lead.recip();
    Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
}

/// Monic gcd of two polynomials, via [`xgcd`].
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    Ok(xgcd(a, b)?.0)
}

/// True iff the polynomial has no repeated complex root, i.e.
/// `gcd(p, p')` is constant.  Exact rational Euclid; the zero polynomial
/// reports `false`.
pub fn is_squarefree(p: &Poly) -> bool {
    if p.is_zero() {
        return false;
    }
    if p.degree() == 0 {
        return true;
    }
    match poly_gcd(p, &p.derivative()) {
        Ok(g) => g.degree() == 0,
        Err(_) => false,
    }
}

struct ContextInner {
    phi: Poly,
    n: usize,
    rotation: Matrix,
    h_powers: Vec<Matrix>,
    roots: Vec<Complex64>,
}

/// The quotient ring `Q[x]/<phi>` for a validated modulus, with the rotation
/// matrix, its powers, and root approximations cached at construction.
///
/// Cloning is cheap (shared immutable innards); two contexts compare equal
/// exactly when their moduli are equal.
#[derive(Clone)]
pub struct QuotientContext {
    inner: Arc<ContextInner>,
}

impl PartialEq for QuotientContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.phi == other.inner.phi
    }
}
impl Eq for QuotientContext {}

impl fmt::Debug for QuotientContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientContext(phi = {})", self.inner.phi)
    }
}

/// Roots are accepted when the modulus evaluates this close to zero.
pub const ROOT_TOLERANCE: f64 = 1e-12;
/// Iteration cap for the simultaneous root refinement.
pub const ROOT_MAX_ITERATIONS: usize = 200;

impl QuotientContext {
    /// Validates the modulus and builds the ring.
    ///
    /// Requirements, each with its own error: degree at least one, monic
    /// with integer coefficients, nonzero constant term, squarefree.
    pub fn new(phi: Poly) -> Result<Self> {
        if phi.degree() < 1 {
            return Err(Error::DegreeTooSmall);
        }
        if !phi.is_integer() || !phi.leading().is_some_and(|l| l.is_one()) {
            return Err(Error::NotMonic);
        }
        if phi.coeff(0).is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        if !is_squarefree(&phi) {
            return Err(Error::NotSquarefree);
        }
        let n = phi.degree() as usize;
        // Companion form: sub-diagonal of ones, last column the negated
        // lower coefficients, so that H*v realizes x*v(x) mod phi.
        let mut rotation = Matrix::zeros(n, n);
        for i in 1..n {
            rotation[(i, i - 1)] = Rational::one();
        }
        for i in 0..n {
            rotation[(i, n - 1)] = -phi.coeff(i);
        }
        let mut h_powers = Vec::with_capacity(n);
        h_powers.push(Matrix::identity(n));
        for k in 1..n {
            let next = rotation.matmul(&h_powers[k - 1]);
            h_powers.push(next);
        }
        let roots = find_roots(&phi)?;
        Ok(QuotientContext { inner: Arc::new(ContextInner { phi, n, rotation, h_powers, roots }) })
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn phi(&self) -> &Poly {
        &self.inner.phi
    }

    /// The rotation (companion) matrix `H` of the modulus.
    pub fn rotation(&self) -> &Matrix {
        &self.inner.rotation
    }

    /// Cached `H^k` for `0 <= k < n`.
    pub fn rotation_power(&self, k: usize) -> &Matrix {
        &self.inner.h_powers[k]
    }

    /// Floating approximations of the `n` complex roots of the modulus,
    /// sorted by principal argument in `[0, 2*pi)`, then by modulus.
    pub fn roots(&self) -> &[Complex64] {
        &self.inner.roots
    }

    /// `Some(r)` when the modulus is the binomial `x^n - r`.
    pub fn power_residue(&self) -> Option<Rational> {
        let phi = &self.inner.phi;
        if (1..self.inner.n).any(|k| !phi.coeff(k).is_zero()) {
            return None;
        }
        Some(-phi.coeff(0))
    }

    /// True when the modulus is `x^n - 1`, the circulant case.
    pub fn is_circulant(&self) -> bool {
        self.power_residue().is_some_and(|r| r.is_one())
    }

    /// Reduces a polynomial into the ring.
    pub fn element(&self, p: Poly) -> RingElement {
        let (_, rep) = p.divmod(&self.inner.phi);
        RingElement { ctx: self.clone(), rep }
    }

    /// Element from a length-`n` coefficient vector, lowest degree first.
    pub fn element_from_vector(&self, v: &[Rational]) -> Result<RingElement> {
        if v.len() != self.inner.n {
            return Err(Error::DimensionMismatch { expected: self.inner.n, got: v.len() });
        }
        Ok(self.element(Poly::new(v.to_vec())))
    }

    pub fn zero_element(&self) -> RingElement {
        self.element(Poly::zero())
    }

    pub fn one_element(&self) -> RingElement {
        self.element(Poly::one())
    }
}

/// Residue class in `Q[x]/<phi>`, stored as its unique representative of
/// degree below `n`.  Interchangeable with its length-`n` coefficient
/// vector.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    ctx: QuotientContext,
    rep: Poly,
}

impl RingElement {
    pub fn ctx(&self) -> &QuotientContext {
        &self.ctx
    }

    pub fn rep(&self) -> &Poly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.rep.is_integer()
    }

    /// The length-`n` coefficient column vector, lowest degree first.
    pub fn to_vector(&self) -> Vec<Rational> {
        (0..self.ctx.n()).map(|k| self.rep.coeff(k)).collect()
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.check_ctx(other)?;
        Ok(RingElement { ctx: self.ctx.clone(), rep: self.rep.add(&other.rep) })
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.check_ctx(other)?;
        Ok(RingElement { ctx: self.ctx.clone(), rep: self.rep.sub(&other.rep) })
    }

    pub fn neg(&self) -> RingElement {
        RingElement { ctx: self.ctx.clone(), rep: self.rep.neg() }
    }

    pub fn scale(&self, k: &Rational) -> RingElement {
        RingElement { ctx: self.ctx.clone(), rep: self.rep.scale(k) }
    }

    fn check_ctx(&self, other: &RingElement) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({} mod {})", self.rep, self.ctx.phi())
    }
}

/// Reduces an arbitrary polynomial into the quotient ring.
pub fn reduce_mod_phi(p: &Poly, ctx: &QuotientContext) -> RingElement {
    ctx.element(p.clone())
}

/// Product in the quotient ring: polynomial multiplication followed by
/// reduction.  Exact, commutative, with `1` as identity.
pub fn ring_mul(a: &RingElement, b: &RingElement) -> Result<RingElement> {
    a.check_ctx(b)?;
    Ok(a.ctx.element(a.rep.mul(&b.rep)))
}

/// The unique `u` with `u*f = 1` in the quotient ring, or `NotCoprime`
/// carrying `gcd(f, phi)` when no inverse exists.
pub fn inverse_mod_phi(f: &RingElement) -> Result<RingElement> {
    let (d, u, _) = xgcd(&f.rep, f.ctx.phi())?;
    if d.degree() != 0 {
        return Err(Error::NotCoprime { gcd: d });
    }
    // d is the monic constant 1, so u * f = 1 mod phi already.
    Ok(f.ctx.element(u))
}

/// Floating approximations of the roots of the context modulus.
pub fn complex_roots(ctx: &QuotientContext) -> &[Complex64] {
    ctx.roots()
}

/// Number of subspaces of `R^n` invariant under the rotation map, i.e. the
/// number of monic real divisors of the modulus: every subset of real roots
/// combined with every subset of conjugate pairs, `2^(r + c)` in total.
///
/// Roots with imaginary part below `1e-9` count as real; the rest must pair
/// up with a conjugate within the same tolerance.
pub fn count_cyclic_subspaces(ctx: &QuotientContext) -> u128 {
    const PAIR_TOL: f64 = 1e-9;
    let mut real = 0usize;
    let mut complex = 0usize;
    for w in ctx.roots() {
        if w.im.abs() < PAIR_TOL {
            real += 1;
        } else {
            complex += 1;
        }
    }
    debug_assert!(
        complex.is_multiple_of(2),
        "complex roots of a real polynomial must pair up"
    );
    let pairs = complex / 2;
    for w in ctx.roots().iter().filter(|w| w.im.abs() >= PAIR_TOL) {
        let mate = ctx
            .roots()
            .iter()
            .any(|v| (v - w.conj()).norm() < PAIR_TOL);
        debug_assert!(mate, "unpaired complex root {w}");
    }
    1u128 << (real + pairs)
}

/// Roots of a validated modulus: closed form for binomials `x^n - r`,
/// simultaneous (Aberth-style) iteration otherwise.
fn find_roots(phi: &Poly) -> Result<Vec<Complex64>> {
    let n = phi.degree() as usize;
    let binomial = (1..n).all(|k| phi.coeff(k).is_zero());
    let roots = if binomial {
        let r = -phi.coeff(0);
        closed_form_binomial_roots(n, &r)
    } else {
        aberth_roots(phi)?
    };
    for w in &roots {
        let residual = phi.eval_complex(*w).norm();
        if residual >= ROOT_TOLERANCE {
            return Err(Error::RootIteration { iterations: ROOT_MAX_ITERATIONS });
        }
    }
    Ok(roots)
}

/// The `n` complex roots of `x^n = r`, `r` nonzero: modulus `|r|^(1/n)`,
/// arguments spaced `2*pi/n` apart starting from `arg(r)/n`.
fn closed_form_binomial_roots(n: usize, r: &Rational) -> Vec<Complex64> {
    let rf = to_f64(r);
    let modulus = rf.abs().powf(1.0 / n as f64);
    let base = if rf >= 0.0 { 0.0 } else { std::f64::consts::PI / n as f64 };
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(modulus, base + 2.0 * std::f64::consts::PI * k as f64 / n as f64)
        })
        .collect();
    sort_roots(&mut roots);
    roots
}

/// Simultaneous root iteration for a squarefree monic polynomial: all roots
/// are refined together, which sidesteps deflation error entirely.
fn aberth_roots(phi: &Poly) -> Result<Vec<Complex64>> {
    let n = phi.degree() as usize;
    let deriv = phi.derivative();
    // Cauchy bound: every root lies within 1 + max |a_k| of the origin
    // (monic), so seed the iteration on a circle of that radius with an
    // angular offset that avoids real-axis symmetry traps.
    let bound = 1.0
        + phi.coeffs()[..n]
            .iter()
            .map(|c| to_f64(c).abs())
            .fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                bound,
                2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4,
            )
        })
        .collect();
    for _ in 0..ROOT_MAX_ITERATIONS {
        let mut worst = 0.0f64;
        for k in 0..n {
            let pz = phi.eval_complex(z[k]);
            let dz = deriv.eval_complex(z[k]);
            if dz.norm() == 0.0 {
                // Nudge off a critical point; squarefree inputs make this
                // transient.
                z[k] += Complex64::new(1e-6, 1e-6);
                worst = f64::MAX;
                continue;
            }
            let w = pz / dz;
            let mut s = Complex64::new(0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != k {
                    s += (z[k] - zj).finv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * s;
            let step = if denom.norm() == 0.0 { w } else { w / denom };
            z[k] -= step;
            worst = worst.max(step.norm());
        }
        if worst < 1e-14 * (1.0 + bound) {
            break;
        }
    }
    sort_roots(&mut z);
    Ok(z)
}

fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| {
        let ka = (a.arg().rem_euclid(2.0 * std::f64::consts::PI), a.norm());
        let kb = (b.arg().rem_euclid(2.0 * std::f64::consts::PI), b.norm());
        ka.partial_cmp(&kb).unwrap()
    });
}
