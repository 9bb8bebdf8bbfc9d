//! The coding map: addresses to points and back.
//!
//!     cargo run --release --example coding
//!
//! A finite edge path pins the point down to its cylinder, whose diameter
//! shrinks geometrically with the path length; the coding map returns the
//! cylinder center once the diameter is below the requested accuracy. The
//! inverse direction lists every depth-n prefix whose cylinder passes near
//! a given point.

use mwkit::attractor::solve_invariant_list;
use mwkit::config::load_config;
use mwkit::graph::{EdgeId, FinitePath, VertexId};
use mwkit::symbolic::{address_of, coding_map, cylinder, intertwine_residual};
use std::path::Path;

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/cantor.cfg");
    let cfg = load_config(&path).unwrap();
    let mw = cfg.build().unwrap();
    let k = solve_invariant_list(&mw, 3f64.powi(-6), 256).unwrap();
    let g = mw.graph();

    // Periodic addresses of the middle-thirds system: edge 0 is x/3,
    // edge 1 is x/3 + 2/3, so 0^∞ ↦ 0, 1^∞ ↦ 1, 0 1^∞ ↦ 1/3.
    for (label, edges) in [
        ("0^40   ", vec![EdgeId(0); 40]),
        ("1^40   ", vec![EdgeId(1); 40]),
        ("0 1^39 ", {
            let mut e = vec![EdgeId(0)];
            e.extend(vec![EdgeId(1); 39]);
            e
        }),
    ] {
        let alpha = FinitePath::new(g, edges).unwrap();
        let p = coding_map(&mw, &k, &alpha, 1e-9).unwrap();
        let cyl = cylinder(&mw, &k, &alpha).unwrap();
        println!(
            "pi({label}) = {:.12}   cylinder diameter <= {:.3e}",
            p[0], cyl.diameter_bound
        );
    }

    // The coding map intertwines edge concatenation with the edge maps:
    // pi(e alpha) = phi_e(pi(alpha)).
    let alpha = FinitePath::new(g, vec![EdgeId(1); 40]).unwrap();
    let r = intertwine_residual(&mw, &k, EdgeId(0), &alpha, 1e-9).unwrap();
    println!("|pi(0 1^40) - phi_0(pi(1^40))| = {r:.3e}");

    // Inverse coding: which depth-6 prefixes pass near 0.7?
    let slack = 1e-9 + k.sets()[0].cell_diameter();
    let addrs = address_of(&mw, &k, VertexId(0), &[0.7], 6, slack).unwrap();
    for a in &addrs {
        let digits: Vec<String> = a.edges().iter().map(|e| e.0.to_string()).collect();
        println!("0.7 has depth-6 address {}", digits.join(""));
    }
}
