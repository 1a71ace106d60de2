//! Resonant atom-cavity dynamics: two identical two-level atoms, each
//! locked in its own cavity with the same photon number, starting from a
//! Bell state of the atom pair. Tracing out both fields leaves a
//! time-dependent X state of the atoms whose entanglement and subsystem
//! entropy the rest of the crate can analyze; the envelope through the
//! entropy minima gives the observed upper bound on the entanglement
//! curves.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{self, RegionClass};
use crate::linalg::{Matrix4, C64};
use crate::measures;
use crate::state::{Bell, XState};
use crate::tol;

/// Physical configuration of the paired atom-cavity system.
#[derive(Debug, Clone, Copy)]
pub struct CavityParams {
    gamma: f64,
    photons: u32,
    initial: Bell,
}

impl CavityParams {
    /// `gamma` is the coupling rate (inverse time units), `photons` the
    /// Fock occupation of each cavity, `initial` the Bell state the atom
    /// pair starts in.
    pub fn new(gamma: f64, photons: u32, initial: Bell) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::ParamOutOfRange {
                name: "gamma",
                value: gamma,
                min: 0.0,
                max: f64::INFINITY,
            });
        }
        Ok(CavityParams {
            gamma,
            photons,
            initial,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn photons(&self) -> u32 {
        self.photons
    }

    pub fn initial(&self) -> Bell {
        self.initial
    }
}

/// Uniform sampling times `start + k * step` covering `[start, end]`.
#[derive(Debug, Clone, Copy)]
pub struct TimeGrid {
    start: f64,
    end: f64,
    step: f64,
}

impl TimeGrid {
    pub fn new(start: f64, end: f64, step: f64) -> Result<Self> {
        let valid = start.is_finite()
            && end.is_finite()
            && step.is_finite()
            && start >= 0.0
            && end > start
            && step > 0.0
            && step <= end - start;
        if !valid {
            return Err(Error::BadTimeGrid { start, end, step });
        }
        Ok(TimeGrid { start, end, step })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn times(&self) -> Vec<f64> {
        let count = ((self.end - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|k| self.start + k as f64 * self.step)
            .collect()
    }
}

/// Atom-pair state at time `t`, fields traced out.
///
/// The third Bell state evolves by the closed-form coefficients: with
/// `ca = cos(g t sqrt(n+1))`, `cb = cos(g t sqrt(n))` and the matching
/// sines, the inner coherence is `ca^2 cb^2 / 2`, its positivity bound
/// adds `sa^2 sb^2 / 2`, and the outer populations are `ca^2 sb^2` and
/// `sa^2 cb^2`. The other Bell states go through the amplitude-level
/// evolution, which makes no closed-form assumptions.
pub fn rho_2at(params: &CavityParams, t: f64) -> Result<XState> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::ParamOutOfRange {
            name: "t",
            value: t,
            min: 0.0,
            max: f64::INFINITY,
        });
    }
    match params.initial {
        Bell::PsiPlus => closed_form_psi_plus(params, t),
        _ => evolve_brute(params, t),
    }
}

fn closed_form_psi_plus(params: &CavityParams, t: f64) -> Result<XState> {
    let n = params.photons as f64;
    let high = params.gamma * t * (n + 1.0).sqrt();
    let low = params.gamma * t * n.sqrt();
    let (ca, sa) = (high.cos(), high.sin());
    let (cb, sb) = (low.cos(), low.sin());
    let y = 0.5 * ca * ca * cb * cb;
    let y0 = y + 0.5 * sa * sa * sb * sb;
    let r11 = ca * ca * sb * sb;
    let r44 = sa * sa * cb * cb;
    XState::new([r11, y0, y0, r44], 0.0, 0.0, y, 0.0)
}

/// Evolves the full four-component pure state amplitude by amplitude and
/// traces out both fields numerically. Works for any initial Bell state;
/// serves as the independent oracle for the closed form.
///
/// Under the resonant pair interaction, an excited atom at photon number
/// `m` rotates into the ground state at `m + 1`, and a ground atom at
/// `m >= 1` rotates into the excited state at `m - 1`, both at angle
/// `g t sqrt(max(m, m+1))`. Photon numbers therefore stay within
/// `n - 1 ..= n + 1`, indexed below by the offset `m - n + 1`.
pub fn evolve_brute(params: &CavityParams, t: f64) -> Result<XState> {
    let n = params.photons;
    let zero = C64::new(0.0, 0.0);

    // Branches of one atom-cavity pair starting at photon number n:
    // (atom level, photon offset, amplitude), with level 0 = excited.
    let pair_branches = |excited: bool| -> Vec<(usize, usize, C64)> {
        let mut branches = Vec::with_capacity(2);
        if excited {
            let angle = params.gamma * t * ((n + 1) as f64).sqrt();
            branches.push((0, 1, C64::new(angle.cos(), 0.0)));
            branches.push((1, 2, C64::new(0.0, -angle.sin())));
        } else {
            let angle = params.gamma * t * (n as f64).sqrt();
            branches.push((1, 1, C64::new(angle.cos(), 0.0)));
            if n > 0 {
                branches.push((0, 0, C64::new(0.0, -angle.sin())));
            }
        }
        branches
    };

    // Joint amplitudes indexed by (atom1, offset1, atom2, offset2).
    let index = |a1: usize, o1: usize, a2: usize, o2: usize| ((a1 * 3 + o1) * 2 + a2) * 3 + o2;
    let mut amps = [zero; 36];
    let ket = params.initial.ket();
    for (component, &weight) in ket.iter().enumerate() {
        if weight.norm() == 0.0 {
            continue;
        }
        let first = pair_branches(component / 2 == 0);
        let second = pair_branches(component % 2 == 0);
        for &(a1, o1, amp1) in &first {
            for &(a2, o2, amp2) in &second {
                // Grouping the branch amplitudes first keeps entries that
                // mirror under swapping the two pairs bit-identical, so the
                // inner populations of the reduced state match exactly.
                amps[index(a1, o1, a2, o2)] += weight * (amp1 * amp2);
            }
        }
    }

    let mut reduced = Matrix4::zeros();
    for a in 0..2 {
        for b in 0..2 {
            for ap in 0..2 {
                for bp in 0..2 {
                    let mut acc = zero;
                    for o1 in 0..3 {
                        for o2 in 0..3 {
                            acc += amps[index(a, o1, b, o2)]
                                * amps[index(ap, o1, bp, o2)].conj();
                        }
                    }
                    reduced.0[2 * a + b][2 * ap + bp] = acc;
                }
            }
        }
    }
    XState::from_matrix(&reduced)
}

/// Subsystem entropy of an X state. Both reduced states are diagonal
/// with the same spectrum whenever the inner populations match, so one
/// binary entropy covers both.
pub fn subsystem_entropy(state: &XState) -> f64 {
    let p = state.populations();
    measures::binary_entropy(p[0] + p[1])
}

/// One time point of a dynamics run.
#[derive(Debug, Clone, Copy)]
pub struct DynamicsSample {
    pub t: f64,
    pub l: f64,
    pub concurrence: f64,
    pub entanglement_of_formation: f64,
    pub entropy: f64,
    pub ppt_entangled: bool,
    pub rank: usize,
    pub x: f64,
    pub y: f64,
    pub x0: f64,
    pub y0: f64,
    pub region: RegionClass,
}

/// A sampled dynamics run, optionally carrying the entropy-minima
/// envelope aligned with the samples.
#[derive(Debug, Clone)]
pub struct DynamicsTrace {
    pub params: CavityParams,
    pub samples: Vec<DynamicsSample>,
    pub envelope: Option<Vec<(f64, f64)>>,
}

/// Evaluates the model over the grid.
pub fn sweep(params: &CavityParams, grid: &TimeGrid) -> Result<DynamicsTrace> {
    let times = grid.times();
    let mut samples = Vec::with_capacity(times.len());
    for t in times {
        let state = rho_2at(params, t)?;
        let density = state.to_density();
        let (point, bounds) = geometry::to_point(&state)?;
        let l = geometry::l_measure(point, bounds);
        let region = geometry::classify(point, bounds, tol::GEOMETRY)?;
        let entropy = subsystem_entropy(&state);
        let p = state.populations();
        debug_assert!(
            (entropy - measures::binary_entropy(p[0] + p[2])).abs() <= 1e-12,
            "subsystem entropies split at t = {t}"
        );
        samples.push(DynamicsSample {
            t,
            l,
            concurrence: measures::concurrence(&density),
            entanglement_of_formation: measures::entanglement_of_formation(l)?,
            entropy,
            ppt_entangled: measures::ppt_verdict(&density, tol::PSD_FLOOR).entangled,
            rank: density.rank(),
            x: point.x,
            y: point.y,
            x0: bounds.x0,
            y0: bounds.y0,
            region,
        });
    }
    Ok(DynamicsTrace {
        params: *params,
        samples,
        envelope: None,
    })
}

fn model_entropy(params: &CavityParams, t: f64) -> f64 {
    let state = rho_2at(params, t).expect("parameters were validated when the trace was built");
    subsystem_entropy(&state)
}

/// Golden-section minimizer, shrinking `[lo, hi]` to width 1e-8.
fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const RATIO: f64 = 0.618033988749894903;
    let mut c = hi - RATIO * (hi - lo);
    let mut d = lo + RATIO * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > 1e-8 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - RATIO * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + RATIO * (hi - lo);
            fd = f(d);
        }
    }
    let t = 0.5 * (lo + hi);
    (t, f(t))
}

/// Builds the entropy-minima envelope, sampled on the trace grid.
///
/// Strict local minima of the sampled entropy are refined against the
/// continuous model by golden-section search, then joined by linear
/// interpolation. The trace endpoints enter as interpolation nodes at
/// their sampled entropy values, so the envelope starts and ends on the
/// curve instead of extending the outermost minima flat; near `t = 0`
/// the entropy and the measures all start from the same point, and a
/// flat extension would cut below them. A trace with constant entropy
/// gets a constant envelope; otherwise fewer than two interior minima
/// leave nothing to interpolate and is reported as degenerate.
pub fn extract_min_envelope(trace: &DynamicsTrace) -> Result<Vec<(f64, f64)>> {
    let samples = &trace.samples;
    if samples.len() < 3 {
        return Err(Error::EnvelopeDegenerate { minima: 0 });
    }
    let entropies: Vec<f64> = samples.iter().map(|s| s.entropy).collect();
    let spread = entropies.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - entropies.iter().cloned().fold(f64::INFINITY, f64::min);
    if spread <= 1e-12 {
        return Ok(samples.iter().map(|s| (s.t, s.entropy)).collect());
    }

    let minima: Vec<usize> = (1..samples.len() - 1)
        .filter(|&i| entropies[i] < entropies[i - 1] && entropies[i] < entropies[i + 1])
        .collect();
    if minima.len() < 2 {
        return Err(Error::EnvelopeDegenerate {
            minima: minima.len(),
        });
    }

    let mut nodes = Vec::with_capacity(minima.len() + 2);
    nodes.push((samples[0].t, samples[0].entropy));
    for &i in &minima {
        let refined = golden_min(
            |t| model_entropy(&trace.params, t),
            samples[i - 1].t,
            samples[i + 1].t,
        );
        nodes.push(refined);
    }
    nodes.push((samples[samples.len() - 1].t, samples[samples.len() - 1].entropy));
    nodes.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    let mut envelope = Vec::with_capacity(samples.len());
    let mut segment = 0;
    for sample in samples {
        while segment + 2 < nodes.len() && nodes[segment + 1].0 < sample.t {
            segment += 1;
        }
        let (t_left, v_left) = nodes[segment];
        let (t_right, v_right) = nodes[segment + 1];
        let value = if sample.t <= t_left {
            v_left
        } else if sample.t >= t_right {
            v_right
        } else {
            v_left + (v_right - v_left) * (sample.t - t_left) / (t_right - t_left)
        };
        envelope.push((sample.t, value));
    }
    Ok(envelope)
}

/// Extracts the envelope and stores it on the trace.
pub fn attach_min_envelope(trace: &mut DynamicsTrace) -> Result<()> {
    trace.envelope = Some(extract_min_envelope(trace)?);
    Ok(())
}

/// Result of testing the envelope against the entanglement curves.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EnvelopeCheck {
    pub holds: bool,
    /// Largest signed excess of the measure or the formation entropy
    /// over the envelope; negative when the bound holds with margin.
    pub worst_violation: f64,
    pub at_t: f64,
}

/// Verifies that the envelope stays above both the measure and the
/// formation entropy at every sample.
pub fn check_envelope_bound(trace: &DynamicsTrace, tolerance: f64) -> Result<EnvelopeCheck> {
    let envelope = trace.envelope.as_ref().ok_or(Error::EnvelopeMissing)?;
    let mut worst = f64::NEG_INFINITY;
    let mut at_t = trace.samples.first().map_or(0.0, |s| s.t);
    for (sample, &(_, bound)) in trace.samples.iter().zip(envelope) {
        let excess = (sample.l - bound).max(sample.entanglement_of_formation - bound);
        if excess > worst {
            worst = excess;
            at_t = sample.t;
        }
    }
    Ok(EnvelopeCheck {
        holds: worst <= tolerance,
        worst_violation: worst,
        at_t,
    })
}
