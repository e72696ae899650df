//! Static raster output for two-dimensional patches.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::substitution::{Letter, Patch};

const PALETTE: [&str; 10] =
    ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#1f78b4", "#b2df8a", "#fb9a99"];

/// Bounding box `(xmin, xmax, ymin, ymax)` and the letter index of each cell.
struct Grid {
    bounds: (i64, i64, i64, i64),
    cells: Vec<(i64, i64, usize)>,
    letters: Vec<Letter>,
}

fn grid(p: &Patch) -> Option<Grid> {
    let letters: Vec<Letter> = {
        let mut v: Vec<Letter> = p.values().cloned().collect();
        v.sort();
        v.dedup();
        v
    };
    let index: BTreeMap<&Letter, usize> = letters.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut cells = Vec::with_capacity(p.len());
    for (u, a) in p {
        let c = u.to_i64()?;
        if c.len() != 2 {
            return None;
        }
        cells.push((c[0], c[1], index[a]));
    }
    let xs = cells.iter().map(|c| c.0);
    let ys = cells.iter().map(|c| c.1);
    let bounds = (xs.clone().min()?, xs.max()?, ys.clone().min()?, ys.max()?);
    Some(Grid { bounds, cells, letters })
}

/// SVG with one square per cell, `y` pointing up, and a legend. `None`
/// for empty or non-planar patches.
pub fn patch_to_svg(p: &Patch, cell: u32) -> Option<String> {
    let g = grid(p)?;
    let (x0, x1, y0, y1) = g.bounds;
    let c = cell as i64;
    let (w, h) = ((x1 - x0 + 1) * c, (y1 - y0 + 1) * c);
    let legend_h = 16 * g.letters.len() as i64 + 8;
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{}" shape-rendering="crispEdges">"#, h + legend_h).ok()?;
    for &(x, y, i) in &g.cells {
        writeln!(
            s,
            r#"<rect x="{}" y="{}" width="{c}" height="{c}" fill="{}"/>"#,
            (x - x0) * c,
            (y1 - y) * c,
            PALETTE[i % PALETTE.len()]
        )
        .ok()?;
    }
    for (i, a) in g.letters.iter().enumerate() {
        let y = h + 8 + 16 * i as i64;
        writeln!(s, r#"<rect x="4" y="{y}" width="12" height="12" fill="{}"/>"#, PALETTE[i % PALETTE.len()]).ok()?;
        writeln!(s, r#"<text x="20" y="{}" font-family="monospace" font-size="12">{a}</text>"#, y + 11).ok()?;
    }
    s.push_str("</svg>\n");
    Some(s)
}

/// Plain PGM (P2), one pixel per cell; cells outside the patch are white.
pub fn patch_to_pgm(p: &Patch) -> Option<String> {
    let g = grid(p)?;
    let (x0, x1, y0, y1) = g.bounds;
    let (w, h) = ((x1 - x0 + 1) as usize, (y1 - y0 + 1) as usize);
    let mut px = vec![255u32; w * h];
    let n = g.letters.len().max(1) as u32;
    for &(x, y, i) in &g.cells {
        px[(y1 - y) as usize * w + (x - x0) as usize] = 200 * i as u32 / n;
    }
    let mut s = format!("P2\n{w} {h}\n255\n");
    for r in px.chunks(w) {
        let line: Vec<String> = r.iter().map(u32::to_string).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    Some(s)
}

/// Character grid, `y` pointing up, letters shown as `a`, `b`, ... in
/// sorted order and `.` outside the patch; followed by the legend.
pub fn patch_to_text(p: &Patch) -> Option<String> {
    let g = grid(p)?;
    let (x0, x1, y0, y1) = g.bounds;
    let w = (x1 - x0 + 1) as usize;
    let mut rows = vec![vec!['.'; w]; (y1 - y0 + 1) as usize];
    let glyph = |i: usize| char::from_digit(10 + (i % 26) as u32, 36).unwrap_or('?');
    for &(x, y, i) in &g.cells {
        rows[(y1 - y) as usize][(x - x0) as usize] = glyph(i);
    }
    let mut s: String = rows.into_iter().map(|r| r.into_iter().collect::<String>() + "\n").collect();
    for (i, a) in g.letters.iter().enumerate() {
        writeln!(s, "{} = {a}", glyph(i)).ok()?;
    }
    Some(s)
}
