//! Randomized verification that a certificate-induced map transports the
//! bimodule structure: inner products must pull back through the algebra
//! map and the two-sided actions must intertwine.
//!
//! Test elements are low-frequency complex waves rather than i.i.d. noise:
//! every nearest-sample read of an i.i.d. table costs an O(1) error no
//! matter how fine the grid, which would drown honest certificates. A
//! bounded-frequency wave has bounded slope, so the interpolation penalty
//! shrinks with the grid step and a failing residual means a failing
//! certificate.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::certificate::CorrMap;
use super::{
    inner_product, left_action, right_action, AlgebraElement, CorrElement, CorrSpace, SampleGrid,
};

/// Residual summary of the isomorphism checks. `pass` means both maxima
/// stayed within `tol`.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    /// Max over basis and random pairs of ‖⟨Vξ,Vη⟩ − β(⟨ξ,η⟩)‖∞.
    pub inner_residual: f64,
    /// Max over random triples of ‖V(b₁·ξ·b₂) − β(b₁)·V(ξ)·β(b₂)‖∞.
    pub bimodule_residual: f64,
    pub trials: usize,
    pub tol: f64,
    pub pass: bool,
}

/// A seeded band-limited element: one complex amplitude, integer frequency
/// vector and phase per path, evaluated as a plane wave over the fiber.
pub fn random_corr_element(space: &CorrSpace, seed: u64) -> CorrElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = space.zero();
    for (i, _) in space.paths().iter().enumerate() {
        let vi = space.fiber_vertex(i);
        let scale = space.grid().sets()[vi].ambient().diameter().max(1e-12);
        let dim = space.grid().samples(vi).first().map_or(1, |p| p.len());
        let amp = random_amplitude(&mut rng);
        let freq: Vec<f64> = (0..dim).map(|_| rng.gen_range(-3..=3i32) as f64).collect();
        let phase: f64 = rng.gen();
        for (j, p) in space.grid().samples(vi).iter().enumerate() {
            out.values[space.flat(i, j)] = amp * wave(&freq, p, scale, phase);
        }
    }
    out
}

/// A seeded band-limited algebra element: one wave per vertex.
pub fn random_algebra_element(grid: &SampleGrid, seed: u64) -> AlgebraElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = AlgebraElement::zero(grid);
    for vi in 0..grid.sets().len() {
        let scale = grid.sets()[vi].ambient().diameter().max(1e-12);
        let dim = grid.samples(vi).first().map_or(1, |p| p.len());
        let amp = random_amplitude(&mut rng);
        let freq: Vec<f64> = (0..dim).map(|_| rng.gen_range(-3..=3i32) as f64).collect();
        let phase: f64 = rng.gen();
        for (j, p) in grid.samples(vi).iter().enumerate() {
            out.values[vi][j] = amp * wave(&freq, p, scale, phase);
        }
    }
    out
}

fn random_amplitude(rng: &mut ChaCha8Rng) -> Complex64 {
    // Uniform in the unit square scaled to modulus at most 1.
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) / 2.0f64.sqrt()
}

fn wave(freq: &[f64], p: &[f64], scale: f64, phase: f64) -> Complex64 {
    let dot: f64 = freq.iter().zip(p).map(|(k, x)| k * x).sum();
    Complex64::from_polar(1.0, std::f64::consts::TAU * (dot / scale + phase))
}

/// Checks the two defining identities of an isomorphism on all edge-basis
/// pairs plus `trials` seeded random elements, and reports the worst
/// residuals. The basis pairs are always included: a wrong edge
/// assignment already shows up there with an O(1) residual.
pub fn verify_isomorphism(
    vmap: &CorrMap,
    s1: &CorrSpace,
    s2: &CorrSpace,
    trials: usize,
    tol: f64,
    seed: u64,
) -> VerifyReport {
    let mut inner_residual = 0.0f64;
    let mut bimodule_residual = 0.0f64;

    let check_pair = |xi: &CorrElement, eta: &CorrElement| -> f64 {
        let lhs = inner_product(s1, &vmap.apply(s1, s2, xi), &vmap.apply(s1, s2, eta))
            .expect("orders match");
        let rhs = vmap.beta(&inner_product(s2, xi, eta).expect("orders match"));
        lhs.sub(&rhs).sup_norm()
    };

    let basis: Vec<CorrElement> = s2.mw().graph().edge_ids().map(|e| s2.delta(&[e])).collect();
    for xi in &basis {
        for eta in &basis {
            inner_residual = inner_residual.max(check_pair(xi, eta));
        }
    }

    for t in 0..trials {
        let base = seed.wrapping_add(1 + 4 * t as u64);
        let xi = random_corr_element(s2, base);
        let eta = random_corr_element(s2, base + 1);
        inner_residual = inner_residual.max(check_pair(&xi, &eta));

        let b1 = random_algebra_element(s2.grid(), base + 2);
        let b2 = random_algebra_element(s2.grid(), base + 3);
        let sandwiched = left_action(s2, &b1, &right_action(s2, &xi, &b2));
        let lhs = vmap.apply(s1, s2, &sandwiched);
        let v_xi = vmap.apply(s1, s2, &xi);
        let rhs = right_action(
            s1,
            &left_action(s1, &vmap.beta(&b1), &v_xi),
            &vmap.beta(&b2),
        );
        bimodule_residual = bimodule_residual.max(lhs.sub(&rhs).sup_norm());
    }

    VerifyReport {
        inner_residual,
        bimodule_residual,
        trials,
        tol,
        pass: inner_residual <= tol && bimodule_residual <= tol,
    }
}
