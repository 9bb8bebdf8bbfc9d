//! Deterministic rasterization to binary portable pixmaps (P6).
//!
//! Two modes: `covering` paints every pixel whose center lies in an occupied
//! grid cell of a box covering, and `cloud` plots chaos-game sample points.
//! Multi-vertex systems render as side-by-side panels, one per vertex, in
//! graph order. Output depends only on the inputs (and the seed that
//! produced a cloud), so identical runs produce byte-identical files —
//! images are compared byte-for-byte in tests.

use std::io::Write;

use crate::geometry::{Aabb, TaggedBoxSet, TaggedPointCloud};

/// An 8-bit RGB raster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    width: usize,
    height: usize,
    /// Row-major, top row first, 3 bytes per pixel.
    pixels: Vec<u8>,
}

const BG: [u8; 3] = [255, 255, 255];
const FG: [u8; 3] = [0, 0, 0];

impl Image {
    pub fn blank(width: usize, height: usize) -> Image {
        assert!(width > 0 && height > 0, "image must have positive size");
        Image {
            width,
            height,
            pixels: [BG; 1].repeat(width * height).concat(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn set(&mut self, x: usize, y: usize, rgb: [u8; 3]) {
        assert!(x < self.width && y < self.height);
        let i = 3 * (y * self.width + x);
        self.pixels[i..i + 3].copy_from_slice(&rgb);
    }

    pub fn get(&self, x: usize, y: usize) -> [u8; 3] {
        let i = 3 * (y * self.width + x);
        [self.pixels[i], self.pixels[i + 1], self.pixels[i + 2]]
    }

    /// Fraction of non-background pixels.
    pub fn set_ratio(&self) -> f64 {
        let set = self
            .pixels
            .chunks_exact(3)
            .filter(|p| p != &BG.as_slice())
            .count();
        set as f64 / (self.width * self.height) as f64
    }

    /// Writes the binary portable-pixmap encoding (`P6`, 8-bit).
    pub fn write_ppm(&self, mut w: impl Write) -> std::io::Result<()> {
        write!(w, "P6\n{} {}\n255\n", self.width, self.height)?;
        w.write_all(&self.pixels)
    }

    /// The full file as bytes, for byte-identity checks.
    pub fn ppm_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_ppm(&mut out).expect("writing to memory");
        out
    }
}

/// Where each vertex's ambient box lands inside the image: equal-width
/// panels left to right, each mapped with an aspect-preserving fit.
struct Panel {
    x0: usize,
    width: usize,
    height: usize,
    ambient: Aabb,
}

impl Panel {
    fn layout(ambients: &[Aabb], width: usize, height: usize) -> Vec<Panel> {
        let n = ambients.len().max(1);
        let w = width / n;
        assert!(w > 0, "image too narrow for {n} panels");
        ambients
            .iter()
            .enumerate()
            .map(|(i, a)| Panel {
                x0: i * w,
                width: w,
                height,
                ambient: a.clone(),
            })
            .collect()
    }

    /// Ambient-space point under a pixel center; `None` outside the box
    /// (letterboxing from aspect preservation).
    fn point_at(&self, px: usize, py: usize) -> Option<Vec<f64>> {
        let a = &self.ambient;
        let ext = |i: usize| a.hi()[i] - a.lo()[i];
        // 1-D sets draw as a full-height strip; the y axis carries nothing.
        let (ex, ey) = match a.dim() {
            1 => (ext(0), 0.0),
            _ => (ext(0), ext(1)),
        };
        let scale = {
            let sx = self.width as f64 / ex.max(1e-300);
            if ey > 0.0 {
                sx.min(self.height as f64 / ey)
            } else {
                sx
            }
        };
        // Center the drawn region inside the panel.
        let ox = (self.width as f64 - scale * ex) / 2.0;
        let oy = (self.height as f64 - scale * ey) / 2.0;
        let cx = (px - self.x0) as f64 + 0.5;
        let cy = py as f64 + 0.5;
        let x = a.lo()[0] + (cx - ox) / scale;
        // Row 0 is the top of the image but the high end of the y axis.
        let y = if a.dim() >= 2 {
            a.lo()[1] + (self.height as f64 - cy - oy) / scale
        } else {
            0.0
        };
        let mut p = vec![x];
        if a.dim() >= 2 {
            p.push(y);
        }
        if a.dim() >= 3 {
            // Project 3-D sets along the last axis onto its midpoint plane.
            p.push((a.lo()[2] + a.hi()[2]) / 2.0);
        }
        if !a.contains(&p, 0.0) {
            return None;
        }
        Some(p)
    }

    /// Pixel under an ambient-space point, inverse of [`Panel::point_at`].
    fn pixel_of(&self, p: &[f64]) -> Option<(usize, usize)> {
        let a = &self.ambient;
        let ext = |i: usize| a.hi()[i] - a.lo()[i];
        let (ex, ey) = match a.dim() {
            1 => (ext(0), 0.0),
            _ => (ext(0), ext(1)),
        };
        let scale = {
            let sx = self.width as f64 / ex.max(1e-300);
            if ey > 0.0 {
                sx.min(self.height as f64 / ey)
            } else {
                sx
            }
        };
        let ox = (self.width as f64 - scale * ex) / 2.0;
        let oy = (self.height as f64 - scale * ey) / 2.0;
        let cx = ox + scale * (p[0] - a.lo()[0]);
        let cy = if a.dim() >= 2 {
            self.height as f64 - oy - scale * (p[1] - a.lo()[1])
        } else {
            self.height as f64 / 2.0
        };
        let (px, py) = (cx.floor(), cy.floor());
        if px < 0.0 || py < 0.0 || px >= self.width as f64 || py >= self.height as f64 {
            return None;
        }
        Some((self.x0 + px as usize, py as usize))
    }
}

/// Rasterizes box coverings: a pixel is set iff its center lies in an
/// occupied cell of its panel's covering. With the pixel grid at least as
/// fine as the box grid, the set-pixel fraction of a panel tracks the
/// covering's area fraction.
pub fn render_covering(sets: &[TaggedBoxSet], width: usize, height: usize) -> Image {
    let ambients: Vec<Aabb> = sets.iter().map(|s| s.ambient().clone()).collect();
    let panels = Panel::layout(&ambients, width, height);
    let mut img = Image::blank(width, height);
    for (set, panel) in sets.iter().zip(&panels) {
        for px in panel.x0..panel.x0 + panel.width {
            for py in 0..panel.height {
                let Some(p) = panel.point_at(px, py) else {
                    continue;
                };
                let Some(cell) = set.cell_of_point(&p) else {
                    continue;
                };
                if set.contains_cell(&cell) {
                    img.set(px, py, FG);
                }
            }
        }
    }
    img
}

/// Plots sample clouds, one point per pixel hit.
pub fn render_cloud(
    clouds: &[TaggedPointCloud],
    ambients: &[Aabb],
    width: usize,
    height: usize,
) -> Image {
    assert_eq!(clouds.len(), ambients.len());
    let panels = Panel::layout(ambients, width, height);
    let mut img = Image::blank(width, height);
    for (cloud, panel) in clouds.iter().zip(&panels) {
        for p in &cloud.points {
            if let Some((px, py)) = panel.pixel_of(p) {
                img.set(px, py, FG);
            }
        }
    }
    img
}
