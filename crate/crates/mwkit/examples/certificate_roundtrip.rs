//! Build, verify, and invert a conjugacy certificate by hand.
//!
//!     cargo run --release --example certificate_roundtrip
//!
//! The middle-thirds system is conjugate to itself under the mirror
//! f(x) = 1 - x, which swaps the two edge maps. This example writes that
//! certificate down, checks its defining relation on every covering sample
//! (refutation), builds the induced map on the edge-indexed module and
//! verifies it preserves inner products and bimodule actions, and finally
//! recovers the edge swap back from the map's matrix — closing the loop.

use mwkit::attractor::solve_invariant_list;
use mwkit::config::load_config;
use mwkit::correspondence::{
    build_v, extract_conjugacy, permutation_field, refute_certificate, verify_isomorphism,
    w_matrix, AffinePair, ConjugacyCertificate, CorrSpace, MapDescriptor, SampleGrid,
};
use mwkit::graph::EdgeId;
use mwkit::mw::AffineMap;
use mwkit::structure::classify_disconnected;
use nalgebra::{DMatrix, DVector};
use std::path::Path;

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/cantor.cfg");
    let mw = load_config(&path).unwrap().build().unwrap();
    let k = solve_invariant_list(&mw, 3f64.powi(-6), 256).unwrap();
    let grid = SampleGrid::from_invariant_list(&k);

    // The mirror x -> 1 - x, with the single cover piece "everything" and
    // the edge assignment that swaps edge 0 (x/3) with edge 1 (x/3 + 2/3).
    let mirror = AffineMap::new(
        DMatrix::from_element(1, 1, -1.0),
        DVector::from_element(1, 1.0),
    )
    .unwrap();
    let cert = ConjugacyCertificate {
        f: MapDescriptor::Affine(vec![AffinePair::from_forward(mirror).unwrap()]),
        cover: vec![grid.sets().to_vec()],
        sigmas: vec![vec![EdgeId(1), EdgeId(0)]],
    };

    // 1. Replay the defining relation f^-1(psi_sigma(e)(f(x))) = phi_e(x).
    let refutation = refute_certificate(&cert, &mw, &mw, &grid, &grid, 1e-12);
    println!(
        "refutation: max residual {:.3e} over {} samples -> pass = {}",
        refutation.max_residual,
        refutation.rows.iter().map(|r| r.samples).sum::<usize>(),
        refutation.pass
    );

    // 2. Build the induced module map and verify it behaves isometrically.
    let vmap = build_v(&cert, &mw, &mw, &grid, &grid).unwrap();
    let s = CorrSpace::new(&mw, &grid, 1);
    let report = verify_isomorphism(&vmap, &s, &s, 100, 1e-9, 42);
    println!(
        "verify: inner residual {:.3e}, bimodule residual {:.3e} -> pass = {}",
        report.inner_residual, report.bimodule_residual, report.pass
    );

    // 3. Recover the permutation from the map's matrix in the edge bases.
    let w = w_matrix(&vmap, &s, &s);
    let recovered = extract_conjugacy(&w, cert.f.clone(), &mw, &grid).unwrap();
    let class = classify_disconnected(&mw, &k, 2).unwrap();
    let field = permutation_field(&recovered, &grid, &class).unwrap();
    let sigma = field.sigma_at(0, 0);
    println!(
        "extraction: sigma = ({} {}) on {} samples in {} cover piece(s)",
        sigma[0].0,
        sigma[1].0,
        grid.samples(0).len(),
        recovered.cover.len()
    );
}
