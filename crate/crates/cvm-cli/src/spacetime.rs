//! Space-time diagrams: one row per time sample, one column per vertex, as
//! a binary P6 pixmap with a fixed palette, or interface-only rendering
//! (black pixel wherever adjacent opinions differ).

use anyhow::{bail, Result};

/// Fixed palette for the first twelve opinions; larger F falls back to a
/// deterministic hue wheel.
pub const PALETTE: [(u8, u8, u8); 12] = [
    (230, 57, 70),
    (69, 123, 157),
    (42, 157, 143),
    (233, 196, 106),
    (144, 103, 198),
    (244, 162, 97),
    (38, 70, 83),
    (160, 196, 86),
    (199, 81, 146),
    (94, 84, 142),
    (120, 120, 120),
    (0, 0, 0),
];

pub fn opinion_color(opinion: u8, f: u32) -> (u8, u8, u8) {
    let idx = usize::from(opinion - 1);
    if idx < PALETTE.len() {
        PALETTE[idx]
    } else {
        // evenly spaced hues, full saturation
        let h = (idx as f64) / (f as f64) * 6.0;
        let x = (255.0 * (1.0 - (h % 2.0 - 1.0).abs())) as u8;
        match h as u32 % 6 {
            0 => (255, x, 0),
            1 => (x, 255, 0),
            2 => (0, 255, x),
            3 => (0, x, 255),
            4 => (x, 0, 255),
            _ => (255, 0, x),
        }
    }
}

/// Number of wrap-around interfaces in one snapshot (columns whose right
/// neighbor differs); equals the number of particle-occupied edges.
pub fn interface_count(row: &[u8]) -> usize {
    let n = row.len();
    (0..n).filter(|&i| row[i] != row[(i + 1) % n]).count()
}

/// Render snapshots into P6 bytes. `interfaces_only` paints a black pixel
/// at column `i` iff vertices `i` and `i+1` (cyclically) disagree, on a
/// white background.
pub fn render_p6(snapshots: &[Vec<u8>], f: u32, interfaces_only: bool) -> Result<Vec<u8>> {
    let Some(first) = snapshots.first() else {
        bail!("no snapshots to render");
    };
    let width = first.len();
    if snapshots.iter().any(|row| row.len() != width) {
        bail!("snapshots have inconsistent widths");
    }
    let mut out = format!("P6\n{} {}\n255\n", width, snapshots.len()).into_bytes();
    out.reserve(3 * width * snapshots.len());
    for row in snapshots {
        if interfaces_only {
            for i in 0..width {
                let boundary = row[i] != row[(i + 1) % width];
                let v = if boundary { 0u8 } else { 255u8 };
                out.extend_from_slice(&[v, v, v]);
            }
        } else {
            for &o in row {
                let (r, g, b) = opinion_color(o, f);
                out.extend_from_slice(&[r, g, b]);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cvm::edges::EdgeConfiguration;
    use cvm::{Configuration, Graph};
    use std::sync::Arc;

    #[test]
    fn monochromatic_rows_render_flat_without_interfaces() {
        let rows = vec![vec![2u8; 8], vec![2u8; 8]];
        let ppm = render_p6(&rows, 3, false).unwrap();
        assert!(ppm.starts_with(b"P6\n8 2\n255\n"));
        let body = &ppm[b"P6\n8 2\n255\n".len()..];
        let c = opinion_color(2, 3);
        assert!(body.chunks(3).all(|px| px == [c.0, c.1, c.2]));
        assert_eq!(interface_count(&rows[0]), 0);

        let mask = render_p6(&rows, 3, true).unwrap();
        let body = &mask[b"P6\n8 2\n255\n".len()..];
        assert!(body.iter().all(|&v| v == 255));
    }

    #[test]
    fn interface_pixels_match_occupied_edges() {
        let opinions = vec![1u8, 1, 3, 2, 2, 4, 4, 1];
        let graph = Arc::new(Graph::cycle(opinions.len() as u32).unwrap());
        let config = Configuration::new(graph, opinions.clone(), 4).unwrap();
        let edges = EdgeConfiguration::project(&config, 1).unwrap();
        assert_eq!(interface_count(&opinions), edges.occupied_edges());

        let ppm = render_p6(&[opinions.clone()], 4, true).unwrap();
        let body = &ppm[format!("P6\n{} 1\n255\n", opinions.len()).len()..];
        let black = body.chunks(3).filter(|px| px[0] == 0).count();
        assert_eq!(black, edges.occupied_edges());
    }

    #[test]
    fn wide_opinion_sets_get_distinct_colors() {
        let f = 20u32;
        let mut seen = std::collections::HashSet::new();
        for j in 1..=f as u8 {
            seen.insert(opinion_color(j, f));
        }
        assert!(seen.len() >= 18);
    }
}
