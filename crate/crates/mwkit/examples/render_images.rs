//! Rasterize invariant sets to PPM images, two ways.
//!
//!     cargo run --release --example render_images
//!
//! Covering mode paints the solved grid covering (an outer approximation);
//! cloud mode plots a seeded random orbit (points on the set itself, up to
//! burn-in). Images land in the system temp directory.

use mwkit::attractor::{chaos_game, solve_invariant_list};
use mwkit::config::load_config;
use mwkit::geometry::Aabb;
use mwkit::render::{render_cloud, render_covering};
use std::path::Path;

fn main() {
    let dir = std::env::temp_dir();
    for name in ["sierpinski.cfg", "sierpinski-phi.cfg", "cantor.cfg"] {
        let path = Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("configs")
            .join(name);
        let cfg = load_config(&path).unwrap();
        let mw = cfg.build().unwrap();
        let stem = Path::new(name).file_stem().unwrap().to_string_lossy();

        let h = if mw.dim() == 1 {
            3f64.powi(-6)
        } else {
            2f64.powi(-7)
        };
        let k = solve_invariant_list(&mw, h, 256).unwrap();
        let img = render_covering(k.sets(), 512, 512);
        let out = dir.join(format!("{stem}-covering.ppm"));
        img.write_ppm(std::fs::File::create(&out).unwrap()).unwrap();
        println!(
            "{} ({}x{}, {:.1}% inked)",
            out.display(),
            img.width(),
            img.height(),
            100.0 * img.set_ratio()
        );

        let clouds = chaos_game(&mw, 60_000, 50, 7).unwrap();
        let ambients: Vec<Aabb> = mw
            .graph()
            .vertices()
            .iter()
            .map(|&v| mw.ambient_of(v).clone())
            .collect();
        let img = render_cloud(&clouds, &ambients, 512, 512);
        let out = dir.join(format!("{stem}-cloud.ppm"));
        img.write_ppm(std::fs::File::create(&out).unwrap()).unwrap();
        println!(
            "{} ({}x{}, {:.1}% inked)",
            out.display(),
            img.width(),
            img.height(),
            100.0 * img.set_ratio()
        );
    }
}
