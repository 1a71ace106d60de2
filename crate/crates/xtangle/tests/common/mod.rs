//! Deterministic samplers shared by the integration suites.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use xtangle::{C64, DensityMatrix4, Matrix4, XState};

/// Uniform point on the probability simplex via exponential spacings.
pub fn simplex_populations(rng: &mut StdRng) -> [f64; 4] {
    let mut draws = [0.0; 4];
    let mut total = 0.0;
    for d in &mut draws {
        *d = -f64::ln(1.0 - rng.gen::<f64>());
        total += *d;
    }
    draws.map(|d| d / total)
}

/// X state with populations uniform on the simplex, coherence magnitudes
/// uniform inside their positivity bounds, and uniform phases.
pub fn random_x_state(rng: &mut StdRng) -> XState {
    let p = simplex_populations(rng);
    let x0 = (p[0] * p[3]).sqrt();
    let y0 = (p[1] * p[2]).sqrt();
    let x = rng.gen::<f64>() * x0;
    let y = rng.gen::<f64>() * y0;
    let theta = rng.gen::<f64>() * std::f64::consts::TAU;
    let phi = rng.gen::<f64>() * std::f64::consts::TAU;
    XState::new(p, x, theta, y, phi).expect("sampled inside the admissible set")
}

fn standard_normal(rng: &mut StdRng) -> f64 {
    let u1 = 1.0 - rng.gen::<f64>();
    let u2 = rng.gen::<f64>();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Haar-uniform four-component ket.
pub fn random_pure_ket(rng: &mut StdRng) -> [C64; 4] {
    loop {
        let mut ket = [C64::new(0.0, 0.0); 4];
        for a in &mut ket {
            *a = C64::new(standard_normal(rng), standard_normal(rng));
        }
        let norm = ket.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for a in &mut ket {
                *a /= norm;
            }
            return ket;
        }
    }
}

pub fn projector(ket: &[C64; 4]) -> Matrix4 {
    let mut rows = [[C64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            rows[i][j] = ket[i] * ket[j].conj();
        }
    }
    Matrix4::from_rows(rows)
}

/// Convex mixture of two to four random projectors, resampled until the
/// numerical rank is at least two.
pub fn random_mixed_density(rng: &mut StdRng) -> DensityMatrix4 {
    loop {
        let parts = 2 + (rng.gen::<f64>() * 3.0) as usize;
        let mut weights = [0.0; 4];
        let mut total = 0.0;
        for w in weights.iter_mut().take(parts) {
            *w = 0.1 + rng.gen::<f64>();
            total += *w;
        }
        let mut rows = [[C64::new(0.0, 0.0); 4]; 4];
        for w in weights.iter().take(parts) {
            let ket = random_pure_ket(rng);
            for i in 0..4 {
                for j in 0..4 {
                    rows[i][j] += (w / total) * ket[i] * ket[j].conj();
                }
            }
        }
        let density = DensityMatrix4::new(Matrix4::from_rows(rows))
            .expect("a convex mixture of projectors is a valid state");
        if density.rank() >= 2 {
            return density;
        }
    }
}

/// Applies the same global-phase gauge the factorization routine uses:
/// the first non-negligible amplitude becomes real and positive.
pub fn gauge_fixed(mut ket: [C64; 4]) -> [C64; 4] {
    for k in 0..4 {
        let norm = ket[k].norm();
        if norm > 1e-8 {
            let phase = ket[k].conj() / norm;
            for a in &mut ket {
                *a *= phase;
            }
            break;
        }
    }
    ket
}
