//! Eigenvalues of small symmetric matrices by cyclic Jacobi rotations.
//!
//! The crate only ever needs full spectra of Gram matrices — symmetric,
//! positive semidefinite, and small — so the classic Jacobi sweep is the
//! right tool: a page of code, unconditionally stable, and accurate to a few
//! ulps for well-conditioned spectra.  Each sweep zeroes every off-diagonal
//! pair once; convergence is quadratic once the off-diagonal mass is small.

/// Eigenvalues of a symmetric matrix, sorted ascending.
///
/// The input is read as its symmetric part; asymmetry beyond roundoff is a
/// programming error and panics.
pub fn symmetric_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    for row in a {
        assert_eq!(row.len(), n, "matrix must be square");
    }
    let mut scale = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            scale = scale.max(a[i][j].abs());
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            assert!(
                (a[i][j] - a[j][i]).abs() <= 1e-9 * (1.0 + scale),
                "matrix is not symmetric"
            );
        }
    }
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| 0.5 * (a[i][j] + a[j][i])).collect())
        .collect();

    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                off += m[i][j] * m[i][j];
            }
        }
        if off.sqrt() <= 1e-15 * (1.0 + scale) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p][q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let (app, aqq) = (m[p][p], m[q][q]);
                m[p][p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
                m[q][q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
                m[p][q] = 0.0;
                m[q][p] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let (akp, akq) = (m[k][p], m[k][q]);
                    m[k][p] = c * akp - s * akq;
                    m[p][k] = m[k][p];
                    m[k][q] = s * akp + c * akq;
                    m[q][k] = m[k][q];
                }
            }
        }
    }

    let mut eig: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eig
}
