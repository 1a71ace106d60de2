//! Two-qubit density matrices and the X-shaped subfamily, together with
//! the standard families built on top of them: Bell states, Bell-diagonal
//! mixtures, Werner states, and their multi-coefficient generalization.
//!
//! An X state keeps nonzero entries only on the diagonal and the
//! anti-diagonal: populations `r11..r44` plus the outer coherence
//! `x e^{i theta}` between `|00>` and `|11>` and the inner coherence
//! `y e^{i phi}` between `|01>` and `|10>`. Positivity pins the coherence
//! magnitudes under the geometric means of the paired populations,
//! `x0 = sqrt(r11 r44)` and `y0 = sqrt(r22 r33)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{CoherenceBounds, CoherencePoint};
use crate::linalg::{
    self, partial_trace, Matrix2, Matrix4, Spectrum, Subsystem, C64,
};
use crate::tol;

/// The four Bell states, indexed 1 to 4 in the order
/// `Phi+, Phi-, Psi+, Psi-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl Bell {
    pub const ALL: [Bell; 4] = [Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus];

    pub fn from_index(index: u64) -> Result<Bell> {
        match index {
            1 => Ok(Bell::PhiPlus),
            2 => Ok(Bell::PhiMinus),
            3 => Ok(Bell::PsiPlus),
            4 => Ok(Bell::PsiMinus),
            other => Err(Error::BadBellIndex(other)),
        }
    }

    pub fn index(self) -> u64 {
        match self {
            Bell::PhiPlus => 1,
            Bell::PhiMinus => 2,
            Bell::PsiPlus => 3,
            Bell::PsiMinus => 4,
        }
    }

    /// Amplitudes in the product basis `|00>, |01>, |10>, |11>`.
    pub fn ket(self) -> [C64; 4] {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let (a, b, sign) = match self {
            Bell::PhiPlus => (0, 3, 1.0),
            Bell::PhiMinus => (0, 3, -1.0),
            Bell::PsiPlus => (1, 2, 1.0),
            Bell::PsiMinus => (1, 2, -1.0),
        };
        let mut ket = [C64::new(0.0, 0.0); 4];
        ket[a] = C64::new(h, 0.0);
        ket[b] = C64::new(sign * h, 0.0);
        ket
    }

    pub fn projector(self) -> Matrix4 {
        let ket = self.ket();
        let mut m = Matrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = ket[i] * ket[j].conj();
            }
        }
        m
    }

    pub fn xstate(self) -> XState {
        let mut weights = [0.0; 4];
        weights[(self.index() - 1) as usize] = 1.0;
        XState::from_bell_mixture(weights)
            .expect("a single Bell state is a valid mixture")
    }
}

/// A validated two-qubit density matrix: Hermitian, unit trace, positive
/// semidefinite. The eigendecomposition computed during validation is kept
/// alongside the (symmetrized) matrix.
#[derive(Debug, Clone, Copy)]
pub struct DensityMatrix4 {
    matrix: Matrix4,
    spectrum: Spectrum,
}

impl DensityMatrix4 {
    pub fn new(m: Matrix4) -> Result<Self> {
        let defect = m.hermiticity_defect();
        if defect > tol::HERMITICITY {
            return Err(Error::NotHermitian(defect));
        }
        let matrix = m.symmetrized();
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol::TRACE {
            return Err(Error::TraceNotOne(trace - 1.0));
        }
        let spectrum = linalg::eigensystem_hermitian(&matrix);
        let min = spectrum.eigenvalues[3];
        if min < -tol::PSD_FLOOR {
            return Err(Error::NotPositiveSemidefinite(min));
        }
        Ok(DensityMatrix4 { matrix, spectrum })
    }

    /// Wraps a matrix already known to satisfy the density-matrix
    /// constraints, skipping the checks but still diagonalizing.
    pub(crate) fn from_trusted(m: Matrix4) -> Self {
        let matrix = m.symmetrized();
        let spectrum = linalg::eigensystem_hermitian(&matrix);
        DensityMatrix4 { matrix, spectrum }
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.matrix
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        self.spectrum.eigenvalues
    }

    pub fn purity(&self) -> f64 {
        linalg::purity(&self.matrix)
    }

    pub fn entropy(&self) -> f64 {
        linalg::von_neumann_entropy(&self.spectrum.eigenvalues)
    }

    pub fn rank(&self) -> usize {
        linalg::numerical_rank(&self.spectrum.eigenvalues, tol::RANK)
    }

    pub fn reduced(&self, keep: Subsystem) -> Matrix2 {
        partial_trace(&self.matrix, keep)
    }

    /// Attempts to read the state as a rank-one projector.
    pub fn factorize(&self) -> Factorization {
        let purity = self.purity();
        if (purity - 1.0).abs() > tol::PURITY_ONE {
            return Factorization::Mixed { purity };
        }
        let mut amplitudes = self.spectrum.eigenvectors[0];
        // Gauge choice: rotate the global phase so the first
        // non-negligible amplitude is real and positive.
        for k in 0..4 {
            let norm = amplitudes[k].norm();
            if norm > 1e-8 {
                let phase = amplitudes[k].conj() / norm;
                for a in &mut amplitudes {
                    *a *= phase;
                }
                break;
            }
        }
        let mut projector = Matrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                projector.0[i][j] = amplitudes[i] * amplitudes[j].conj();
            }
        }
        let residual = projector.sub(&self.matrix).frobenius_norm();
        Factorization::Pure(PureAmplitudes {
            amplitudes,
            residual,
        })
    }
}

/// Outcome of asking whether a density matrix is a pure-state projector.
#[derive(Debug, Clone, Copy)]
pub enum Factorization {
    Pure(PureAmplitudes),
    Mixed { purity: f64 },
}

/// Ket amplitudes recovered from a rank-one density matrix, with the
/// global phase fixed so the first non-negligible amplitude is real and
/// positive. `residual` is the Frobenius distance between the recovered
/// projector and the input.
#[derive(Debug, Clone, Copy)]
pub struct PureAmplitudes {
    pub amplitudes: [C64; 4],
    pub residual: f64,
}

/// A validated X state stored in polar form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    r11: f64,
    r22: f64,
    r33: f64,
    r44: f64,
    x: f64,
    theta: f64,
    y: f64,
    phi: f64,
}

impl XState {
    /// Builds an X state from populations, coherence magnitudes, and
    /// coherence phases, rejecting anything that is not a density matrix.
    pub fn new(populations: [f64; 4], x: f64, theta: f64, y: f64, phi: f64) -> Result<XState> {
        let mut pops = [0.0; 4];
        for (index, &p) in populations.iter().enumerate() {
            if p < -tol::PSD_FLOOR {
                return Err(Error::NegativePopulation { index, value: p });
            }
            pops[index] = p.max(0.0);
        }
        let sum: f64 = pops.iter().sum();
        if !((sum - 1.0).abs() <= tol::TRACE) {
            return Err(Error::TraceNotOne(sum - 1.0));
        }
        for (name, value) in [("x", x), ("theta", theta), ("y", y), ("phi", phi)] {
            if !value.is_finite() {
                return Err(Error::ParamOutOfRange {
                    name,
                    value,
                    min: f64::NEG_INFINITY,
                    max: f64::INFINITY,
                });
            }
        }
        let x0 = (pops[0] * pops[3]).sqrt();
        let y0 = (pops[1] * pops[2]).sqrt();
        if x < 0.0 {
            return Err(Error::ParamOutOfRange {
                name: "x",
                value: x,
                min: 0.0,
                max: x0,
            });
        }
        if y < 0.0 {
            return Err(Error::ParamOutOfRange {
                name: "y",
                value: y,
                min: 0.0,
                max: y0,
            });
        }
        if x > x0 + tol::PSD_FLOOR {
            return Err(Error::CoherenceTooLarge {
                label: "outer",
                value: x,
                bound: x0,
            });
        }
        if y > y0 + tol::PSD_FLOOR {
            return Err(Error::CoherenceTooLarge {
                label: "inner",
                value: y,
                bound: y0,
            });
        }
        Ok(XState {
            r11: pops[0],
            r22: pops[1],
            r33: pops[2],
            r44: pops[3],
            x,
            theta: if x == 0.0 { 0.0 } else { theta },
            y,
            phi: if y == 0.0 { 0.0 } else { phi },
        })
    }

    /// Diagonal (fully dephased) state with the given populations.
    pub fn diagonal(populations: [f64; 4]) -> Result<XState> {
        XState::new(populations, 0.0, 0.0, 0.0, 0.0)
    }

    /// Convex mixture of the four Bell states with the given weights.
    pub fn from_bell_mixture(weights: [f64; 4]) -> Result<XState> {
        let mut w = [0.0; 4];
        for (index, &b) in weights.iter().enumerate() {
            if b < -tol::PSD_FLOOR {
                return Err(Error::NegativeWeight { index, value: b });
            }
            w[index] = b.max(0.0);
        }
        let sum: f64 = w.iter().sum();
        if !((sum - 1.0).abs() <= tol::TRACE) {
            return Err(Error::WeightSumNotOne(sum));
        }
        let outer = (w[0] - w[1]) / 2.0;
        let inner = (w[2] - w[3]) / 2.0;
        XState::new(
            [
                (w[0] + w[1]) / 2.0,
                (w[2] + w[3]) / 2.0,
                (w[2] + w[3]) / 2.0,
                (w[0] + w[1]) / 2.0,
            ],
            outer.abs(),
            if outer >= 0.0 { 0.0 } else { PI },
            inner.abs(),
            if inner >= 0.0 { 0.0 } else { PI },
        )
    }

    /// Werner state: the Bell state `bell` with weight `(1 + 3q)/4` mixed
    /// against the other three with weight `(1 - q)/4` each. Valid for
    /// `q` in `[-1/3, 1]`.
    pub fn werner(bell: Bell, q: f64) -> Result<XState> {
        if !((-1.0 / 3.0..=1.0).contains(&q)) {
            return Err(Error::ParamOutOfRange {
                name: "q",
                value: q,
                min: -1.0 / 3.0,
                max: 1.0,
            });
        }
        let mut weights = [(1.0 - q) / 4.0; 4];
        weights[(bell.index() - 1) as usize] = (1.0 + 3.0 * q) / 4.0;
        XState::from_bell_mixture(weights)
    }

    /// Werner state generalized to four independent Bell coefficients on
    /// top of a maximally mixed background: with `s` the coefficient sum,
    /// the state is `sum_k q_k |b_k><b_k| + (1 - s)/4 I`. Each `q_k` must
    /// lie in `[(s-1)/4, (s+3)/4]` and `s` may not exceed
    /// `1 + min_k q_k`.
    pub fn generalized_werner(q: [f64; 4]) -> Result<XState> {
        const SLACK: f64 = 1e-12;
        let s: f64 = q.iter().sum();
        let lo = (s - 1.0) / 4.0;
        let hi = (s + 3.0) / 4.0;
        for (index, &qk) in q.iter().enumerate() {
            if qk < lo - SLACK || qk > hi + SLACK {
                return Err(Error::CoefficientOutOfRange {
                    index,
                    value: qk,
                    lo,
                    hi,
                });
            }
        }
        let q_min = q.iter().cloned().fold(f64::INFINITY, f64::min);
        if s > 1.0 + q_min + SLACK {
            return Err(Error::MixednessBound {
                s,
                bound: 1.0 + q_min,
            });
        }
        let background = (1.0 - s) / 4.0;
        let weights = [
            q[0] + background,
            q[1] + background,
            q[2] + background,
            q[3] + background,
        ];
        XState::from_bell_mixture(weights)
    }

    pub fn populations(&self) -> [f64; 4] {
        [self.r11, self.r22, self.r33, self.r44]
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Positivity bound on the outer coherence.
    pub fn x0(&self) -> f64 {
        (self.r11 * self.r44).sqrt()
    }

    /// Positivity bound on the inner coherence.
    pub fn y0(&self) -> f64 {
        (self.r22 * self.r33).sqrt()
    }

    /// Outer coherence as a complex entry.
    pub fn r14(&self) -> C64 {
        C64::from_polar(self.x, self.theta)
    }

    /// Inner coherence as a complex entry.
    pub fn r23(&self) -> C64 {
        C64::from_polar(self.y, self.phi)
    }

    pub fn point(&self) -> CoherencePoint {
        CoherencePoint {
            x: self.x,
            y: self.y,
        }
    }

    pub fn bounds(&self) -> CoherenceBounds {
        CoherenceBounds {
            x0: self.x0(),
            y0: self.y0(),
        }
    }

    pub fn to_matrix(&self) -> Matrix4 {
        let mut m = Matrix4::zeros();
        m.0[0][0] = C64::new(self.r11, 0.0);
        m.0[1][1] = C64::new(self.r22, 0.0);
        m.0[2][2] = C64::new(self.r33, 0.0);
        m.0[3][3] = C64::new(self.r44, 0.0);
        m.0[0][3] = self.r14();
        m.0[3][0] = self.r14().conj();
        m.0[1][2] = self.r23();
        m.0[2][1] = self.r23().conj();
        m
    }

    pub fn to_density(&self) -> DensityMatrix4 {
        DensityMatrix4::from_trusted(self.to_matrix())
    }

    /// Reads an X state back out of a validated density matrix, rejecting
    /// matrices with mass outside the X pattern.
    pub fn from_density(d: &DensityMatrix4) -> Result<XState> {
        let m = d.matrix();
        for (row, col) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
            let magnitude = m.get(row, col).norm();
            if magnitude > tol::X_SHAPE {
                return Err(Error::NotXShaped {
                    row,
                    col,
                    magnitude,
                });
            }
        }
        let outer = m.get(0, 3);
        let inner = m.get(1, 2);
        XState::new(
            [
                m.get(0, 0).re,
                m.get(1, 1).re,
                m.get(2, 2).re,
                m.get(3, 3).re,
            ],
            outer.norm(),
            outer.arg(),
            inner.norm(),
            inner.arg(),
        )
    }

    /// Validates an arbitrary matrix and reads it as an X state.
    pub fn from_matrix(m: &Matrix4) -> Result<XState> {
        XState::from_density(&DensityMatrix4::new(*m)?)
    }

    /// Spectrum from the closed form: the outer block contributes
    /// `((r11 + r44) +- sqrt((r11 - r44)^2 + 4 x^2)) / 2`, the inner
    /// block the same with `r22, r33, y`.
    pub fn spectrum_closed_form(&self) -> Spectrum {
        let mut pairs: Vec<(f64, [C64; 4])> = Vec::with_capacity(4);
        let blocks = [
            (self.r11, self.r44, self.x, self.theta, 0usize, 3usize),
            (self.r22, self.r33, self.y, self.phi, 1usize, 2usize),
        ];
        for (a, d, mag, phase, i, j) in blocks {
            let mid = 0.5 * (a + d);
            let disc = 0.5 * ((a - d).powi(2) + 4.0 * mag * mag).sqrt();
            for (branch, lambda) in [(0, mid + disc), (1, mid - disc)] {
                let coherence = C64::from_polar(mag, phase);
                // Two algebraically equivalent eigenvector forms; take the
                // better conditioned one.
                let first = [coherence, C64::new(lambda - a, 0.0)];
                let second = [C64::new(lambda - d, 0.0), coherence.conj()];
                let n1 = first[0].norm_sqr() + first[1].norm_sqr();
                let n2 = second[0].norm_sqr() + second[1].norm_sqr();
                let mut vec = [C64::new(0.0, 0.0); 4];
                if n1.max(n2) < 1e-30 {
                    // Fully degenerate block: any basis of it works.
                    let position = if branch == 0 { i } else { j };
                    vec[position] = C64::new(1.0, 0.0);
                } else {
                    let (chosen, norm) = if n1 >= n2 {
                        (first, n1.sqrt())
                    } else {
                        (second, n2.sqrt())
                    };
                    vec[i] = chosen[0] / norm;
                    vec[j] = chosen[1] / norm;
                }
                pairs.push((lambda, vec));
            }
        }
        pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        let mut eigenvalues = [0.0; 4];
        let mut eigenvectors = [[C64::new(0.0, 0.0); 4]; 4];
        for (k, (lambda, vec)) in pairs.into_iter().enumerate() {
            eigenvalues[k] = lambda;
            eigenvectors[k] = vec;
        }
        Spectrum {
            eigenvalues,
            eigenvectors,
        }
    }

    pub fn purity(&self) -> f64 {
        self.r11 * self.r11
            + self.r22 * self.r22
            + self.r33 * self.r33
            + self.r44 * self.r44
            + 2.0 * self.x * self.x
            + 2.0 * self.y * self.y
    }
}

/// How the two single-qubit marginals of a state compare.
#[derive(Debug, Clone, Copy)]
pub struct SubsystemBalance {
    /// `(r11 - r44)(r22 - r33) + |r13 + r24|^2 - |r12 + r34|^2`; equals
    /// the determinant difference of the two reduced states, so both
    /// marginals carry the same entropy exactly when this vanishes.
    pub asymmetry: f64,
    pub spectrum_first: [f64; 2],
    pub spectrum_second: [f64; 2],
    pub entropy_first: f64,
    pub entropy_second: f64,
    pub entropies_equal: bool,
}

/// Compares the reduced states of the two qubits.
pub fn subsystem_balance(d: &DensityMatrix4) -> SubsystemBalance {
    let m = d.matrix();
    let asymmetry = (m.get(0, 0).re - m.get(3, 3).re) * (m.get(1, 1).re - m.get(2, 2).re)
        + (m.get(0, 2) + m.get(1, 3)).norm_sqr()
        - (m.get(0, 1) + m.get(2, 3)).norm_sqr();
    let first = d.reduced(Subsystem::First).eigenvalues_hermitian();
    let second = d.reduced(Subsystem::Second).eigenvalues_hermitian();
    SubsystemBalance {
        asymmetry,
        spectrum_first: first,
        spectrum_second: second,
        entropy_first: linalg::von_neumann_entropy(&first),
        entropy_second: linalg::von_neumann_entropy(&second),
        entropies_equal: asymmetry.abs() <= tol::DELTA_ENTROPY,
    }
}
