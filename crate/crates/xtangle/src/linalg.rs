//! Dense complex matrices for the two-qubit Hilbert space, plus the small
//! set of operations the rest of the crate needs: Hermitian
//! diagonalization, partial trace, partial transpose, entropy, purity,
//! and rank counting.
//!
//! The basis is the computational product basis ordered
//! `|00>, |01>, |10>, |11>`, so a composite index reads `2a + b` with `a`
//! the first qubit and `b` the second.

use num_complex::Complex;

use crate::tol;

pub type C64 = Complex<f64>;

/// 4x4 complex matrix in the two-qubit product basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix4(pub(crate) [[C64; 4]; 4]);

/// 2x2 complex matrix for a single-qubit reduced state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub(crate) [[C64; 2]; 2]);

/// Which qubit a partial trace keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

impl Matrix4 {
    pub fn zeros() -> Self {
        Matrix4([[C64::new(0.0, 0.0); 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            m.0[i][i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: [[C64; 4]; 4]) -> Self {
        Matrix4(rows)
    }

    pub fn from_real(rows: [[f64; 4]; 4]) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = C64::new(rows[i][j], 0.0);
            }
        }
        m
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[row][col]
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2] + self.0[3][3]
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..4 {
                    acc += self.0[i][k] * other.0[k][j];
                }
                m.0[i][j] = acc;
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] += other.0[i][j];
            }
        }
        m
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] -= other.0[i][j];
            }
        }
        m
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut m = *self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] *= factor;
            }
        }
        m
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                acc += self.0[i][j].norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Largest deviation between an entry and the conjugate of its mirror.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        worst
    }

    /// Averages the matrix with its adjoint, removing roundoff-scale
    /// Hermiticity defects.
    pub fn symmetrized(&self) -> Self {
        self.add(&self.adjoint()).scale(0.5)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix4 {
    type Output = C64;

    fn index(&self, (row, col): (usize, usize)) -> &C64 {
        &self.0[row][col]
    }
}

impl Matrix2 {
    pub fn zeros() -> Self {
        Matrix2([[C64::new(0.0, 0.0); 2]; 2])
    }

    pub fn from_rows(rows: [[C64; 2]; 2]) -> Self {
        Matrix2(rows)
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[row][col]
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    /// Eigenvalues of a Hermitian 2x2 matrix, descending.
    pub fn eigenvalues_hermitian(&self) -> [f64; 2] {
        let tr = self.0[0][0].re + self.0[1][1].re;
        let det = self.0[0][0].re * self.0[1][1].re - self.0[0][1].norm_sqr();
        let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
        [0.5 * (tr + disc), 0.5 * (tr - disc)]
    }

    pub fn purity(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                acc += self.0[i][j].norm_sqr();
            }
        }
        acc
    }
}

impl std::ops::Index<(usize, usize)> for Matrix2 {
    type Output = C64;

    fn index(&self, (row, col): (usize, usize)) -> &C64 {
        &self.0[row][col]
    }
}

/// Traces out one qubit of a two-qubit matrix, keeping the other.
pub fn partial_trace(m: &Matrix4, keep: Subsystem) -> Matrix2 {
    let mut out = Matrix2::zeros();
    match keep {
        Subsystem::First => {
            for a in 0..2 {
                for ap in 0..2 {
                    let mut acc = C64::new(0.0, 0.0);
                    for b in 0..2 {
                        acc += m.0[2 * a + b][2 * ap + b];
                    }
                    out.0[a][ap] = acc;
                }
            }
        }
        Subsystem::Second => {
            for b in 0..2 {
                for bp in 0..2 {
                    let mut acc = C64::new(0.0, 0.0);
                    for a in 0..2 {
                        acc += m.0[2 * a + b][2 * a + bp];
                    }
                    out.0[b][bp] = acc;
                }
            }
        }
    }
    out
}

/// Transposes the second-qubit indices: the (a b, a' b') entry of the
/// result is the (a b', a' b) entry of the input. Applying it twice gives
/// the original matrix back.
pub fn partial_transpose_second(m: &Matrix4) -> Matrix4 {
    let mut out = Matrix4::zeros();
    for a in 0..2 {
        for b in 0..2 {
            for ap in 0..2 {
                for bp in 0..2 {
                    out.0[2 * a + b][2 * ap + bp] = m.0[2 * a + bp][2 * ap + b];
                }
            }
        }
    }
    out
}

/// Eigenvalues (descending) and matching eigenvectors of a Hermitian
/// matrix.
#[derive(Debug, Clone, Copy)]
pub struct Spectrum {
    pub eigenvalues: [f64; 4],
    /// `eigenvectors[k]` is the unit eigenvector for `eigenvalues[k]`.
    pub eigenvectors: [[C64; 4]; 4],
}

impl Spectrum {
    /// Rebuilds the matrix as the eigenvalue-weighted sum of projectors.
    pub fn reconstruct(&self) -> Matrix4 {
        let mut m = Matrix4::zeros();
        for k in 0..4 {
            let v = &self.eigenvectors[k];
            for i in 0..4 {
                for j in 0..4 {
                    m.0[i][j] += self.eigenvalues[k] * v[i] * v[j].conj();
                }
            }
        }
        m
    }

    /// Frobenius distance between the reconstruction and `original`.
    pub fn residual(&self, original: &Matrix4) -> f64 {
        self.reconstruct().sub(original).frobenius_norm()
    }
}

/// Diagonalizes a Hermitian 4x4 matrix with cyclic complex Jacobi
/// rotations.
///
/// Each rotation zeroes one off-diagonal pair exactly; sweeps repeat until
/// the off-diagonal Frobenius mass drops below a threshold relative to the
/// input norm. Convergence for Hermitian input is quadratic, so the sweep
/// cap is never reached in practice.
pub fn eigensystem_hermitian(m: &Matrix4) -> Spectrum {
    let mut a = m.symmetrized().0;
    let mut v = Matrix4::identity().0;

    let threshold = tol::JACOBI_OFF * m.frobenius_norm().max(1.0);
    let skip = threshold / 10.0;

    for _sweep in 0..64 {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        for p in 0..4 {
            for q in (p + 1)..4 {
                let r = a[p][q].norm();
                if r <= skip {
                    continue;
                }
                let phase = a[p][q] / r;
                let alpha = a[p][p].re;
                let beta = a[q][q].re;
                let tau = (alpha - beta) / (2.0 * r);
                let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                a[p][p] = C64::new(c * c * alpha + s * s * beta + 2.0 * c * s * r, 0.0);
                a[q][q] = C64::new(s * s * alpha + c * c * beta - 2.0 * c * s * r, 0.0);
                a[p][q] = C64::new(0.0, 0.0);
                a[q][p] = C64::new(0.0, 0.0);
                for j in 0..4 {
                    if j == p || j == q {
                        continue;
                    }
                    let njp = c * phase * a[j][p] + s * a[j][q];
                    let njq = -s * phase * a[j][p] + c * a[j][q];
                    a[j][p] = njp;
                    a[j][q] = njq;
                    a[p][j] = njp.conj();
                    a[q][j] = njq.conj();
                }
                for j in 0..4 {
                    let vjp = c * phase * v[j][p] + s * v[j][q];
                    let vjq = -s * phase * v[j][p] + c * v[j][q];
                    v[j][p] = vjp;
                    v[j][q] = vjq;
                }
            }
        }
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a[j][j].re.partial_cmp(&a[i][i].re).unwrap());

    let mut eigenvalues = [0.0; 4];
    let mut eigenvectors = [[C64::new(0.0, 0.0); 4]; 4];
    for (k, &col) in order.iter().enumerate() {
        eigenvalues[k] = a[col][col].re;
        for j in 0..4 {
            eigenvectors[k][j] = v[j][col];
        }
    }
    Spectrum {
        eigenvalues,
        eigenvectors,
    }
}

fn off_diagonal_norm(a: &[[C64; 4]; 4]) -> f64 {
    let mut acc = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                acc += a[i][j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Von Neumann entropy in bits of a probability spectrum. Zero and
/// roundoff-negative eigenvalues contribute nothing.
pub fn von_neumann_entropy(eigenvalues: &[f64]) -> f64 {
    let mut acc = 0.0;
    for &lambda in eigenvalues {
        if lambda > 0.0 {
            acc -= lambda * lambda.log2();
        }
    }
    acc
}

/// Purity of a Hermitian matrix: the trace of its square, computed as the
/// squared Frobenius norm.
pub fn purity(m: &Matrix4) -> f64 {
    let mut acc = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            acc += m.0[i][j].norm_sqr();
        }
    }
    acc
}

/// Number of eigenvalues above `threshold`.
pub fn numerical_rank(eigenvalues: &[f64], threshold: f64) -> usize {
    eigenvalues.iter().filter(|&&l| l > threshold).count()
}
