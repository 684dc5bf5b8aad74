//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, and the
//! spectral functions built on it.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Default Hermiticity tolerance for spectral routines that take no explicit one.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Off-diagonal Frobenius norm (relative to `max(1, ||m||_F)`) at which a sweep loop stops.
pub const JACOBI_OFF_TOL: f64 = 1e-12;

/// Maximum number of full Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors
/// stored as the columns of `eigenvectors`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Column `i` of the eigenvector matrix.
    pub fn eigenvector(&self, i: usize) -> Vec<Complex64> {
        self.eigenvectors.column(i)
    }

    /// `V diag(f(lambda)) V^dag` for already-mapped eigenvalues.
    pub fn compose(&self, values: &[f64]) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &lam) in values.iter().enumerate() {
                    if lam != 0.0 {
                        acc += v[(i, k)] * v[(j, k)].conj() * lam;
                    }
                }
                if i == j {
                    out[(i, i)] = Complex64::new(acc.re, 0.0);
                } else {
                    out[(i, j)] = acc;
                    out[(j, i)] = acc.conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.compose(&self.eigenvalues)
    }
}

/// Diagonalizes a Hermitian matrix.
///
/// Sweeps visit the strict upper triangle in row-major order, so identical
/// inputs always produce bit-identical spectra. Ties in the final ascending
/// sort keep their original diagonal order.
pub fn hermitian_eig(m: &ComplexMatrix, tol: f64) -> Result<Spectrum> {
    m.check_hermitian(tol)?;
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_OFF_TOL * m.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    loop {
        let off = a.off_diagonal_norm();
        if off < threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));

    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            eigenvectors[(r, dst)] = v[(r, src)];
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// One unitary rotation annihilating `a[p][q]`; accumulates it into `v`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let b = a[(p, q)];
    let g = b.norm();
    if g < f64::MIN_POSITIVE {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // G = diag(1, e^{-i phase}) R, with R the real rotation for the phase-stripped block.
    let phase = b.conj() / g;
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = phase * -s;
    let g_qq = phase * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(app - t * g, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * g, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// Applies a real function to a Hermitian matrix through its spectrum.
///
/// `f` must return a finite value at every eigenvalue, otherwise a
/// [`Error::Domain`] is returned. Removable conventions such as
/// `0 log 0 = 0` belong inside `f` (see [`xlog2x`]).
pub fn hermitian_func<F: Fn(f64) -> f64>(m: &ComplexMatrix, f: F) -> Result<ComplexMatrix> {
    let spectrum = hermitian_eig(m, HERMITIAN_TOL)?;
    let mapped = spectrum
        .eigenvalues
        .iter()
        .map(|&lam| {
            let y = f(lam);
            if y.is_finite() {
                Ok(y)
            } else {
                Err(Error::Domain { eigenvalue: lam })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(spectrum.compose(&mapped))
}

/// `x log2 x` with the continuous extension `0 log 0 = 0`.
pub fn xlog2x(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// `(1/2) ||a - b||_1`, from the eigenvalues of the Hermitian difference.
pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let diff = a.try_sub(b)?;
    let spectrum = hermitian_eig(&diff, HERMITIAN_TOL)?;
    Ok(0.5 * spectrum.eigenvalues.iter().map(|x| x.abs()).sum::<f64>())
}

/// Hilbert-Schmidt (Frobenius) distance.
pub fn frobenius_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    Ok(a.try_sub(b)?.frobenius_norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_spectrum() {
        let s = hermitian_eig(&ComplexMatrix::identity(3), 1e-12).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, 1.0, 1.0]);
        assert_eq!(s.eigenvectors, ComplexMatrix::identity(3));
    }

    #[test]
    fn pauli_x_spectrum() {
        let sx = ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let s = hermitian_eig(&sx, 1e-12).unwrap();
        assert_abs_diff_eq!(s.eigenvalues[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.eigenvalues[1], 1.0, epsilon = 1e-14);
        assert!((&s.reconstruct() - &sx).frobenius_norm() < 1e-14);
    }

    #[test]
    fn pauli_y_spectrum() {
        let sy = ComplexMatrix::from_vec(2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap();
        let s = hermitian_eig(&sy, 1e-12).unwrap();
        assert_abs_diff_eq!(s.eigenvalues[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.eigenvalues[1], 1.0, epsilon = 1e-14);
        assert!(s.eigenvectors.unitarity_deviation() < 1e-14);
        assert!((&s.reconstruct() - &sy).frobenius_norm() < 1e-14);
    }

    #[test]
    fn diagonal_state_sorted_ascending() {
        let rho = ComplexMatrix::from_diagonal(&[0.75, 0.25]);
        let s = hermitian_eig(&rho, 1e-12).unwrap();
        assert_eq!(s.eigenvalues, vec![0.25, 0.75]);
        // column 0 pairs with the smaller eigenvalue
        assert_eq!(s.eigenvector(0), vec![c(0., 0.), c(1., 0.)]);
    }

    #[test]
    fn ties_keep_original_order() {
        let m = ComplexMatrix::from_diagonal(&[2.0, 1.0, 2.0, 1.0]);
        let s = hermitian_eig(&m, 1e-12).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, 1.0, 2.0, 2.0]);
        let cols: Vec<usize> = (0..4)
            .map(|k| (0..4).find(|&r| s.eigenvectors[(r, k)].norm() > 0.5).unwrap())
            .collect();
        assert_eq!(cols, vec![1, 3, 0, 2]);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, &[1.0, 2.0, 0.0, 1.0]).unwrap();
        assert!(matches!(hermitian_eig(&m, 1e-10), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn deterministic() {
        let m = ComplexMatrix::from_vec(
            3,
            vec![
                c(2., 0.),
                c(0.3, 0.1),
                c(-0.2, 0.5),
                c(0.3, -0.1),
                c(1., 0.),
                c(0.7, 0.),
                c(-0.2, -0.5),
                c(0.7, 0.),
                c(-1., 0.),
            ],
        )
        .unwrap();
        let a = hermitian_eig(&m, 1e-12).unwrap();
        let b = hermitian_eig(&m, 1e-12).unwrap();
        assert_eq!(a, b);
        assert!((&a.reconstruct() - &m).frobenius_norm() < 1e-12);
    }

    #[test]
    fn func_examples() {
        let sq = hermitian_func(&ComplexMatrix::from_diagonal(&[2.0, 3.0]), |x| x * x).unwrap();
        assert_eq!(sq, ComplexMatrix::from_diagonal(&[4.0, 9.0]));

        let lg = hermitian_func(&ComplexMatrix::from_diagonal(&[0.5, 0.5]), f64::log2).unwrap();
        assert_eq!(lg, ComplexMatrix::from_diagonal(&[-1.0, -1.0]));

        let ent = hermitian_func(&ComplexMatrix::from_diagonal(&[1.0, 0.0]), xlog2x).unwrap();
        assert_eq!(ent, ComplexMatrix::from_diagonal(&[0.0, 0.0]));
    }

    #[test]
    fn func_domain_errors() {
        let m = ComplexMatrix::from_diagonal(&[0.5, -0.25]);
        assert_eq!(hermitian_func(&m, f64::log2), Err(Error::Domain { eigenvalue: -0.25 }));
        // log of an exact zero has no removable convention either
        let m = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        assert_eq!(hermitian_func(&m, f64::log2), Err(Error::Domain { eigenvalue: 0.0 }));
    }

    #[test]
    fn trace_distance_examples() {
        let d0 = ComplexMatrix::from_diagonal(&[0.5, 0.5]);
        assert_eq!(trace_distance(&d0, &d0).unwrap(), 0.0);
        let z0 = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        let z1 = ComplexMatrix::from_diagonal(&[0.0, 1.0]);
        assert_eq!(trace_distance(&z0, &z1).unwrap(), 1.0);
        let rz = ComplexMatrix::from_diagonal(&[0.75, 0.25]);
        assert_abs_diff_eq!(trace_distance(&rz, &d0).unwrap(), 0.25, epsilon = 1e-15);
        assert!(matches!(
            trace_distance(&d0, &ComplexMatrix::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn frobenius_distance_examples() {
        let a = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        let b = ComplexMatrix::from_diagonal(&[0.0, 1.0]);
        assert_eq!(frobenius_distance(&a, &a).unwrap(), 0.0);
        assert_abs_diff_eq!(frobenius_distance(&a, &b).unwrap(), 2f64.sqrt(), epsilon = 1e-15);
        let rx0 = ComplexMatrix::from_real(2, &[0.5, 0.5, 0.5, 0.5]).unwrap();
        let d0 = ComplexMatrix::from_diagonal(&[0.5, 0.5]);
        assert_abs_diff_eq!(frobenius_distance(&rx0, &d0).unwrap(), 0.5f64.sqrt(), epsilon = 1e-15);
    }
}
