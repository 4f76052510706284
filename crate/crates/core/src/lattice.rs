//! Exact rational lattice bases and the operations built on them.
//!
//! A [`LatticeBasis`] holds an `n x m` rational matrix whose columns are
//! independent basis vectors (checked exactly through `det(B'B) != 0`).
//! On top of it: Gram matrices and determinants, dual bases, exact
//! Gram-Schmidt, shortest vectors by depth-first ellipsoid enumeration,
//! lattice sums through integer Hermite normal forms, sublattice indices,
//! and membership tests.
//!
//! Enumeration prunes with floating-point bounds inflated by a relative
//! margin, then accepts or rejects candidates by exact rational norms, so
//! float roundoff can cost only wasted work, never a wrong answer.

use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{bigint_det, dot, norm_sq, row_hnf_bigint, Matrix};
use crate::rat::{denominator_lcm, to_f64, Rational};
use crate::symeig::symmetric_eigenvalues;

/// Node budget for every exhaustive enumeration in the crate.
pub const ENUM_BUDGET: u64 = 10_000_000;

/// Basis of a rank-`m` lattice in `Q^n`, columns as basis vectors, with the
/// Gram matrix and its determinant cached at construction.
#[derive(Clone, PartialEq, Debug)]
pub struct LatticeBasis {
    b: Matrix,
    gram: Matrix,
    gram_det: Rational,
}

impl LatticeBasis {
    /// Validates column independence exactly; `RankDeficient` otherwise.
    pub fn new(b: Matrix) -> Result<Self> {
        if b.cols() > b.rows() {
            return Err(Error::DimensionMismatch { expected: b.rows(), got: b.cols() });
        }
        let gram = b.transpose().matmul(&b);
        let gram_det = gram.det();
        if gram_det.is_zero() {
            return Err(Error::RankDeficient);
        }
        Ok(LatticeBasis { b, gram, gram_det })
    }

    pub fn from_columns(columns: &[Vec<Rational>]) -> Result<Self> {
        Self::new(Matrix::from_columns(columns))
    }

    /// Convenience constructor from integer column vectors.
    pub fn from_integer_columns(columns: &[Vec<i64>]) -> Result<Self> {
        let cols: Vec<Vec<Rational>> = columns
            .iter()
            .map(|c| c.iter().map(|&x| crate::rat::rat(x)).collect())
            .collect();
        Self::from_columns(&cols)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.b
    }

    /// Ambient dimension `n`.
    pub fn ambient_dim(&self) -> usize {
        self.b.rows()
    }

    /// Rank `m` (number of basis vectors).
    pub fn rank(&self) -> usize {
        self.b.cols()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient_dim()
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_integer()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        self.b.column(j)
    }

    /// The Gram matrix `B'B`.
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Exact `det(B'B)`, always positive.
    pub fn gram_determinant(&self) -> &Rational {
        &self.gram_det
    }

    /// The lattice determinant `d(L) = sqrt(det(B'B))` as a float.
    pub fn determinant(&self) -> f64 {
        to_f64(&self.gram_det).sqrt()
    }

    /// The lattice `k . L` (every vector scaled by nonzero `k`).
    pub fn scaled(&self, k: &Rational) -> LatticeBasis {
        assert!(!k.is_zero(), "scaling a lattice by zero");
        LatticeBasis::new(self.b.scale(k)).expect("scaling preserves rank")
    }
}

/// Gram matrix together with its exact determinant and floating spectrum.
#[derive(Clone, Debug)]
pub struct GramSpectrum {
    pub gram: Matrix,
    pub det_gram: Rational,
    /// Eigenvalues of `B'B`, ascending; all positive for a valid basis.
    pub eigenvalues: Vec<f64>,
    /// Smallest eigenvalue `delta`.
    pub eigen_min: f64,
}

/// Spectrum of the Gram matrix by Jacobi rotations.
pub fn gram_spectrum(l: &LatticeBasis) -> GramSpectrum {
    let m = l.rank();
    let gf: Vec<Vec<f64>> =
        (0..m).map(|i| (0..m).map(|j| to_f64(&l.gram[(i, j)])).collect()).collect();
    let eigenvalues = symmetric_eigenvalues(&gf);
    let eigen_min = eigenvalues[0];
    GramSpectrum { gram: l.gram.clone(), det_gram: l.gram_det.clone(), eigenvalues, eigen_min }
}

/// Exact Gram determinant and the lattice determinant `d(L)`.
pub fn gram_det(l: &LatticeBasis) -> (Rational, f64) {
    (l.gram_det.clone(), l.determinant())
}

/// Dual basis `(B')^{-1}` of a full-rank lattice.  Exact; dualizing twice
/// returns the original matrix.
pub fn dual_basis(l: &LatticeBasis) -> Result<LatticeBasis> {
    if !l.is_full_rank() {
        return Err(Error::NotFullRank);
    }
    let inv = l.b.inverse().expect("full-rank basis is invertible");
    LatticeBasis::new(inv.transpose())
}

/// Exact Gram-Schmidt orthogonalization of the basis columns (not
/// normalized).  Pairwise orthogonality is exact; spans of prefixes are
/// preserved.
pub fn gram_schmidt(l: &LatticeBasis) -> Vec<Vec<Rational>> {
    orthogonalize(l).0
}

/// Exact squared lengths `|b*_i|^2` of the Gram-Schmidt vectors.
pub fn gram_schmidt_norms_sq(l: &LatticeBasis) -> Vec<Rational> {
    orthogonalize(l).1
}

/// Gram-Schmidt data: orthogonal vectors, their squared norms, and the
/// projection coefficients `mu[i][j] = <b_j, b*_i> / |b*_i|^2` for `i < j`.
fn orthogonalize(l: &LatticeBasis) -> (Vec<Vec<Rational>>, Vec<Rational>, Vec<Vec<Rational>>) {
    let m = l.rank();
    let mut bstar: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut norms: Vec<Rational> = Vec::with_capacity(m);
    let mut mu = vec![vec![Rational::zero(); m]; m];
    for j in 0..m {
        let mut v = l.column(j);
        for i in 0..j {
            let coef = dot(&l.column(j), &bstar[i]) / &norms[i];
            for (vk, bk) in v.iter_mut().zip(&bstar[i]) {
                *vk -= &coef * bk;
            }
            mu[i][j] = coef;
        }
        let c = norm_sq(&v);
        debug_assert!(!c.is_zero(), "independent columns cannot orthogonalize to zero");
        bstar.push(v);
        norms.push(c);
    }
    (bstar, norms, mu)
}

/// `sqrt(delta)` for `delta` the least eigenvalue of `B'B` — a lower bound
/// on the minimum distance.
pub fn eigen_lower_bound(l: &LatticeBasis) -> f64 {
    gram_spectrum(l).eigen_min.max(0.0).sqrt()
}

/// Shortest nonzero vector by exhaustive enumeration.
///
/// Returns `(lambda_1, witness)` where the witness is the integer
/// coefficient vector of a shortest vector, sign-normalized (first nonzero
/// coefficient positive) and lexicographically smallest among ties.  The
/// search radius starts at `min(radius_hint, shortest basis column)` and
/// doubles if a too-small hint excluded every nonzero vector.
pub fn min_distance(l: &LatticeBasis, radius_hint: f64) -> Result<(f64, Vec<BigInt>)> {
    let (best_sq, witness) = min_distance_sq(l, radius_hint)?;
    Ok((to_f64(&best_sq).sqrt(), witness.into_iter().map(BigInt::from).collect()))
}

/// Exact squared minimum distance and its witness; see [`min_distance`].
pub fn min_distance_sq(l: &LatticeBasis, radius_hint: f64) -> Result<(Rational, Vec<i64>)> {
    let m = l.rank();
    let shortest_col_sq = (0..m)
        .map(|j| norm_sq(&l.column(j)))
        .min()
        .expect("at least one column");
    let mut r2 = to_f64(&shortest_col_sq);
    if radius_hint.is_finite() && radius_hint >= 0.0 {
        r2 = r2.min(radius_hint * radius_hint);
    }
    let geom = EnumGeometry::new(l, &vec![Rational::zero(); m]);
    let mut budget = Budget::new(ENUM_BUDGET);
    loop {
        let mut best: Option<(Rational, Vec<i64>)> = None;
        let mut bound = r2 * (1.0 + 1e-9) + 1e-307;
        geom.search(&mut budget, &mut bound, &mut |q, exact_sq| {
            if q.iter().all(|&x| x == 0) {
                return None;
            }
            let canon = canonical_sign(q);
            match &best {
                Some((b, w)) if exact_sq > *b || (exact_sq == *b && canon >= *w) => None,
                _ => {
                    let shrink = to_f64(&exact_sq) * (1.0 + 1e-9);
                    best = Some((exact_sq, canon));
                    Some(shrink)
                }
            }
        })?;
        if let Some(found) = best {
            return Ok(found);
        }
        // The hint excluded everything; widen and rerun.
        r2 *= 4.0;
    }
}

fn canonical_sign(q: &[i64]) -> Vec<i64> {
    match q.iter().find(|&&x| x != 0) {
        Some(&first) if first < 0 => q.iter().map(|&x| -x).collect(),
        _ => q.to_vec(),
    }
}

/// All lattice points within (floating) squared distance `radius_sq` of the
/// rational center, as `(exact |Bq - c|^2, q)` pairs.  The center must lie
/// in the column span.  The float boundary is inflated by a relative margin,
/// so points within the exact radius are never lost to roundoff; a few just
/// beyond it may be included.
pub(crate) fn enumerate_around(
    l: &LatticeBasis,
    center: &[Rational],
    radius_sq: f64,
    budget: u64,
) -> Result<Vec<(Rational, Vec<i64>)>> {
    if center.len() != l.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: l.ambient_dim(), got: center.len() });
    }
    let t = l
        .b
        .solve(center)
        .ok_or(Error::NotMember)?;
    let geom = EnumGeometry::new(l, &t);
    let mut b = Budget::new(budget);
    let mut bound = radius_sq * (1.0 + 1e-9) + 1e-307;
    let mut out = Vec::new();
    geom.search(&mut b, &mut bound, &mut |q, exact_sq| {
        out.push((exact_sq, q.to_vec()));
        None
    })?;
    Ok(out)
}

struct Budget {
    left: u64,
    cap: u64,
}

impl Budget {
    fn new(cap: u64) -> Self {
        Budget { left: cap, cap }
    }

    fn spend(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(Error::EnumerationBudget { budget: self.cap });
        }
        self.left -= 1;
        Ok(())
    }
}

/// Shared geometry for depth-first ellipsoid enumeration: float Gram-Schmidt
/// profile for pruning plus the exact basis and center for leaf evaluation.
struct EnumGeometry<'a> {
    l: &'a LatticeBasis,
    /// Center coordinates in the basis, exact and float.
    t_exact: Vec<Rational>,
    t: Vec<f64>,
    mu: Vec<Vec<f64>>,
    c: Vec<f64>,
}

impl<'a> EnumGeometry<'a> {
    fn new(l: &'a LatticeBasis, t_exact: &[Rational]) -> Self {
        let (_, norms, mu) = orthogonalize(l);
        EnumGeometry {
            l,
            t_exact: t_exact.to_vec(),
            t: t_exact.iter().map(to_f64).collect(),
            mu: mu.iter().map(|row| row.iter().map(to_f64).collect()).collect(),
            c: norms.iter().map(to_f64).collect(),
        }
    }

    /// Depth-first search over integer coefficient vectors `q` with
    /// `|B(q - t)|^2` under the float bound.  At each leaf the exact squared
    /// norm is computed and handed to `leaf`; returning `Some(r2)` shrinks
    /// the search bound (used by shortest-vector search).
    fn search(
        &self,
        budget: &mut Budget,
        bound: &mut f64,
        leaf: &mut impl FnMut(&[i64], Rational) -> Option<f64>,
    ) -> Result<()> {
        let m = self.l.rank();
        let mut q = vec![0i64; m];
        self.descend(m, 0.0, &mut q, budget, bound, leaf)
    }

    fn descend(
        &self,
        level: usize,
        acc: f64,
        q: &mut Vec<i64>,
        budget: &mut Budget,
        bound: &mut f64,
        leaf: &mut impl FnMut(&[i64], Rational) -> Option<f64>,
    ) -> Result<()> {
        if level == 0 {
            let exact = self.exact_norm_sq(q);
            if let Some(shrunk) = leaf(q, exact) {
                *bound = shrunk;
            }
            return Ok(());
        }
        let i = level - 1;
        // Offset of q_i's ellipsoid slice given the outer coordinates.
        let mut z = 0.0f64;
        for j in level..self.mu[i].len() {
            z += self.mu[i][j] * (q[j] as f64 - self.t[j]);
        }
        let center = self.t[i] - z;
        let rem = (*bound - acc).max(0.0);
        let radius = (rem / self.c[i]).sqrt();
        let slack = 1e-9 * (1.0 + center.abs() + radius);
        let lo = (center - radius - slack).ceil() as i64;
        let hi = (center + radius + slack).floor() as i64;
        for qi in lo..=hi {
            budget.spend()?;
            let d = qi as f64 - center;
            let acc_next = acc + self.c[i] * d * d;
            if acc_next > *bound * (1.0 + 1e-12) {
                continue;
            }
            q[i] = qi;
            self.descend(level - 1, acc_next, q, budget, bound, leaf)?;
        }
        q[i] = 0;
        Ok(())
    }

    /// Exact `|B(q - t)|^2`.
    fn exact_norm_sq(&self, q: &[i64]) -> Rational {
        let diff: Vec<Rational> = q
            .iter()
            .zip(&self.t_exact)
            .map(|(&qi, ti)| Rational::from(BigInt::from(qi)) - ti)
            .collect();
        let v = self.l.b.mul_vec(&diff);
        norm_sq(&v)
    }
}

/// Basis of the sum `L1 + L2`: concatenate the bases, clear denominators,
/// canonicalize the integer row span by Hermite normal form, and scale
/// back.  The result is in canonical form, so equal lattices produce equal
/// bases.
pub fn lattice_sum(l1: &LatticeBasis, l2: &LatticeBasis) -> Result<LatticeBasis> {
    if l1.ambient_dim() != l2.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: l1.ambient_dim(),
            got: l2.ambient_dim(),
        });
    }
    let mut gens: Vec<Vec<Rational>> = l1.b.columns();
    gens.extend(l2.b.columns());
    canonical_basis_from_generators(l1.ambient_dim(), &gens)
}

/// Canonical basis of the lattice generated by arbitrary rational vectors
/// (not necessarily independent).  Fails with `RankDeficient` when all
/// generators are zero.
pub fn canonical_basis_from_generators(
    n: usize,
    generators: &[Vec<Rational>],
) -> Result<LatticeBasis> {
    let mut flat = Vec::new();
    for g in generators {
        if g.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: g.len() });
        }
        flat.extend(g.iter().cloned());
    }
    let scale = denominator_lcm(&flat);
    let rows: Vec<Vec<BigInt>> = generators
        .iter()
        .map(|g| g.iter().map(|x| x.numer() * (&scale / x.denom())).collect())
        .collect();
    let hnf = row_hnf_bigint(rows);
    if hnf.is_empty() {
        return Err(Error::RankDeficient);
    }
    let cols: Vec<Vec<Rational>> = hnf
        .iter()
        .map(|row| row.iter().map(|x| Rational::new(x.clone(), scale.clone())).collect())
        .collect();
    LatticeBasis::from_columns(&cols)
}

/// Index `|L/N|` of a full-rank sublattice `N` of `L`: the absolute
/// determinant of the integer change-of-basis matrix, equal to
/// `d(N)/d(L)` and always a positive integer.
pub fn quotient_index(l: &LatticeBasis, n_sub: &LatticeBasis) -> Result<Rational> {
    if l.ambient_dim() != n_sub.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: l.ambient_dim(),
            got: n_sub.ambient_dim(),
        });
    }
    if l.rank() != n_sub.rank() {
        return Err(Error::RankMismatch);
    }
    let mut coeff_cols: Vec<Vec<BigInt>> = Vec::with_capacity(n_sub.rank());
    for j in 0..n_sub.rank() {
        match membership(l, &n_sub.column(j))? {
            Some(x) => coeff_cols.push(x),
            None => return Err(Error::NotSublattice { column: j }),
        }
    }
    let m = n_sub.rank();
    let rows: Vec<Vec<BigInt>> =
        (0..m).map(|i| (0..m).map(|j| coeff_cols[j][i].clone()).collect()).collect();
    let det = bigint_det(rows).abs();
    debug_assert!(!det.is_zero(), "equal-rank sublattice has invertible coordinates");
    Ok(Rational::from(det))
}

/// Tests whether `v` lies in the lattice: solves `Bx = v` exactly and
/// checks the solution is integral.  Returns the integer coefficients on
/// success.
pub fn membership(l: &LatticeBasis, v: &[Rational]) -> Result<Option<Vec<BigInt>>> {
    if v.len() != l.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: l.ambient_dim(), got: v.len() });
    }
    let Some(x) = l.b.solve(v) else {
        return Ok(None);
    };
    if x.iter().all(|c| c.denom().is_one()) {
        Ok(Some(x.into_iter().map(|c| c.numer().clone()).collect()))
    } else {
        Ok(None)
    }
}
