//! Decide whether sibling edge images are pairwise disjoint.
//!
//!     cargo run --release --example classify_systems
//!
//! Disjointness makes the coding map a homeomorphism, and is what the
//! isomorphism decision procedure needs. The classifier measures gaps
//! between image coverings, refines touching pairs, and either certifies a
//! positive gap, exhibits an overlap witness, or gives up honestly.

use mwkit::attractor::solve_invariant_list;
use mwkit::config::load_config;
use std::path::Path;

fn main() {
    for name in ["cantor.cfg", "tent.cfg", "sierpinski.cfg", "graph-pair.cfg"] {
        let path = Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("configs")
            .join(name);
        let cfg = load_config(&path).unwrap();
        let mw = cfg.build().unwrap();
        let h = cfg.params.resolution.unwrap_or(2f64.powi(-8));
        let k = solve_invariant_list(&mw, h, 256).unwrap();
        let class = mwkit::structure::classify_disconnected(&mw, &k, 2).unwrap();
        println!(
            "{:<16} verdict: {}",
            cfg.name.unwrap_or_default(),
            class.verdict
        );
        for g in &class.gaps {
            println!(
                "  vertex {} edges ({}, {}): gap {:.4}",
                g.vertex.0, g.e.0, g.f.0, g.gap
            );
        }
        if let Some((v, p)) = &class.witness {
            println!("  overlap witness at vertex {}: {:?}", v.0, p);
        }
    }
}
