//! Entanglement measures: Wootters concurrence (general spin-flip route
//! and the X-state closed form), entanglement of formation,
//! positive-partial-transpose verdicts, and robustness against blending
//! with the maximally mixed state.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    self, CoherenceBounds, CoherencePoint, RegionClass,
};
use crate::linalg::{self, Matrix4, Spectrum, Subsystem};
use crate::state::{DensityMatrix4, XState};
use crate::tol;

/// Binary entropy in bits; zero outside the open unit interval.
pub fn binary_entropy(z: f64) -> f64 {
    if z <= 0.0 || z >= 1.0 {
        return 0.0;
    }
    -z * z.log2() - (1.0 - z) * (1.0 - z).log2()
}

/// Entanglement of formation as a function of concurrence:
/// `h((1 + sqrt(1 - C^2)) / 2)` in bits.
pub fn entanglement_of_formation(concurrence: f64) -> Result<f64> {
    const SLACK: f64 = 1e-9;
    if !(-SLACK..=1.0 + SLACK).contains(&concurrence) {
        return Err(Error::ParamOutOfRange {
            name: "concurrence",
            value: concurrence,
            min: 0.0,
            max: 1.0,
        });
    }
    let c = concurrence.clamp(0.0, 1.0);
    Ok(binary_entropy(0.5 * (1.0 + (1.0 - c * c).sqrt())))
}

/// Spin flip `rho -> (sy x sy) rho* (sy x sy)`, written entrywise: the
/// tensor square of `sigma_y` is the anti-diagonal `(-1, 1, 1, -1)`.
fn spin_flip(m: &Matrix4) -> Matrix4 {
    const F: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];
    let mut out = Matrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            out.0[i][j] = F[i] * F[j] * m.get(3 - i, 3 - j).conj();
        }
    }
    out
}

/// Positive square root from a spectral decomposition, with roundoff
/// negatives clamped to zero.
fn sqrt_psd(spectrum: &Spectrum) -> Matrix4 {
    let mut m = Matrix4::zeros();
    for k in 0..4 {
        let root = spectrum.eigenvalues[k].max(0.0).sqrt();
        let v = &spectrum.eigenvectors[k];
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] += root * v[i] * v[j].conj();
            }
        }
    }
    m
}

/// Descending square roots of the spin-flip spectrum: the eigenvalues of
/// `sqrt(rho) rho~ sqrt(rho)` with `rho~` the spin-flipped state. This
/// Hermitian product shares its spectrum with the usual non-Hermitian
/// `rho rho~`.
pub fn concurrence_roots(d: &DensityMatrix4) -> [f64; 4] {
    let sqrt = sqrt_psd(d.spectrum());
    let product = sqrt.mul(&spin_flip(d.matrix())).mul(&sqrt);
    let eigenvalues = linalg::eigensystem_hermitian(&product).eigenvalues;
    let mut roots = eigenvalues.map(|l| l.max(0.0).sqrt());
    roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
    roots
}

/// Wootters concurrence of an arbitrary two-qubit state.
pub fn concurrence(d: &DensityMatrix4) -> f64 {
    let r = concurrence_roots(d);
    (r[0] - r[1] - r[2] - r[3]).max(0.0)
}

/// Concurrence of an X state from its closed-form spin-flip roots
/// `{x0 + x, x0 - x, y0 + y, y0 - y}`.
pub fn concurrence_x(state: &XState) -> f64 {
    let mut roots = [
        state.x0() + state.x(),
        (state.x0() - state.x()).abs(),
        state.y0() + state.y(),
        (state.y0() - state.y()).abs(),
    ];
    roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
    (roots[0] - roots[1] - roots[2] - roots[3]).max(0.0)
}

/// Outcome of the partial-transpose separability test.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PptVerdict {
    pub entangled: bool,
    pub min_eigenvalue: f64,
}

/// Applies the partial-transpose criterion: the state is entangled
/// exactly when the transposed matrix has an eigenvalue below
/// `-tolerance`.
pub fn ppt_verdict(d: &DensityMatrix4, tolerance: f64) -> PptVerdict {
    let transposed = linalg::partial_transpose_second(d.matrix());
    let eigenvalues = linalg::eigensystem_hermitian(&transposed).eigenvalues;
    let min_eigenvalue = eigenvalues[3];
    PptVerdict {
        entangled: min_eigenvalue < -tolerance,
        min_eigenvalue,
    }
}

/// Convex blend `(1 - omega) state + omega I/4`. The result stays
/// X-shaped: populations move toward 1/4, coherences scale by
/// `1 - omega`.
pub fn blend_with_maximally_mixed(state: &XState, omega: f64) -> Result<XState> {
    if !(0.0..=1.0).contains(&omega) {
        return Err(Error::ParamOutOfRange {
            name: "omega",
            value: omega,
            min: 0.0,
            max: 1.0,
        });
    }
    let keep = 1.0 - omega;
    let background = omega / 4.0;
    let p = state.populations();
    XState::new(
        [
            keep * p[0] + background,
            keep * p[1] + background,
            keep * p[2] + background,
            keep * p[3] + background,
        ],
        keep * state.x(),
        state.theta(),
        keep * state.y(),
        state.phi(),
    )
}

/// Minimal maximally-mixed admixture that kills the entanglement.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RobustnessReport {
    /// `L / (L + 1/4)`, zero for separable states.
    pub omega0: f64,
    /// The measure the threshold was computed from.
    pub l: f64,
}

/// Robustness threshold of an X state.
pub fn robustness(state: &XState) -> RobustnessReport {
    let l = geometry::l_measure(state.point(), state.bounds());
    let omega0 = if l > 0.0 { l / (l + 0.25) } else { 0.0 };
    RobustnessReport { omega0, l }
}

/// Root of the linear decay `(1 - omega) l - omega / 4` by bisection:
/// the entangled excess shrinks with the blend weight while the mixed
/// background grows at rate 1/4. Cross-checks the closed-form threshold.
pub fn robustness_bisection(l: f64) -> f64 {
    if l <= 0.0 {
        return 0.0;
    }
    let decay = |omega: f64| (1.0 - omega) * l - omega / 4.0;
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if decay(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Geometric quantities available only for X-shaped states.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct XMeasures {
    pub point: CoherencePoint,
    pub bounds: CoherenceBounds,
    pub l: f64,
    pub l_max: f64,
    pub closest_separable: CoherencePoint,
    pub region: RegionClass,
    pub robustness: RobustnessReport,
}

/// Computes the geometric bundle for an X state.
pub fn x_measures(state: &XState) -> Result<XMeasures> {
    let (point, bounds) = geometry::to_point(state)?;
    let l = geometry::l_measure(point, bounds);
    let region = geometry::classify(point, bounds, tol::GEOMETRY)?;
    Ok(XMeasures {
        point,
        bounds,
        l,
        l_max: geometry::l_max(bounds),
        closest_separable: geometry::closest_separable(point, bounds),
        region,
        robustness: robustness(state),
    })
}

/// Everything the library can say about one state.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MeasureReport {
    pub concurrence: f64,
    pub entanglement_of_formation: f64,
    pub ppt: PptVerdict,
    pub rank: usize,
    pub purity: f64,
    pub entropy_first: f64,
    pub entropy_second: f64,
    /// Present only when the state is X-shaped.
    pub x: Option<XMeasures>,
}

/// Aggregates all measures for a state. Non-X states get the general
/// measures with the geometric bundle absent.
pub fn full_report(d: &DensityMatrix4) -> Result<MeasureReport> {
    let c = concurrence(d);
    let x = match XState::from_density(d) {
        Ok(state) => {
            let bundle = x_measures(&state)?;
            debug_assert!(
                (bundle.l - c).abs() <= 1e-8,
                "geometric measure {} disagrees with concurrence {}",
                bundle.l,
                c
            );
            Some(bundle)
        }
        Err(Error::NotXShaped { .. }) => None,
        Err(other) => return Err(other),
    };
    let first = d.reduced(Subsystem::First).eigenvalues_hermitian();
    let second = d.reduced(Subsystem::Second).eigenvalues_hermitian();
    Ok(MeasureReport {
        concurrence: c,
        entanglement_of_formation: entanglement_of_formation(c)?,
        ppt: ppt_verdict(d, tol::PSD_FLOOR),
        rank: d.rank(),
        purity: d.purity(),
        entropy_first: linalg::von_neumann_entropy(&first),
        entropy_second: linalg::von_neumann_entropy(&second),
        x,
    })
}
