use std::fmt::Write;

use super::dynamics::{Basin, Dynamics};
use super::grid::GridCell;

const CELL: f64 = 48.0;
const MARGIN: f64 = 60.0;

fn sorted_unique(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Scatter of grid cells: `λ` across, `p` down; an `x` marks a stable small
/// oligarchy and a circle (labelled with its size) a stable committee.
pub fn grid_svg(cells: &[GridCell]) -> String {
    let lambdas = sorted_unique(cells.iter().map(|c| c.lambda));
    let ps = sorted_unique(cells.iter().map(|c| c.p));
    let width = 2.0 * MARGIN + CELL * lambdas.len() as f64;
    let height = 2.0 * MARGIN + CELL * ps.len() as f64;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<rect width="{width}" height="{height}" fill="white"/>"#
    )
    .unwrap();
    let x_of =
        |l: f64| MARGIN + CELL * (lambdas.iter().position(|&v| v == l).unwrap() as f64 + 0.5);
    let y_of = |p: f64| MARGIN + CELL * (ps.iter().position(|&v| v == p).unwrap() as f64 + 0.5);
    for &l in &lambdas {
        writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{l}</text>"#,
            x_of(l),
            height - MARGIN / 2.0
        )
        .unwrap();
    }
    for &p in &ps {
        writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{p}</text>"#,
            MARGIN - 8.0,
            y_of(p) + 4.0
        )
        .unwrap();
    }
    writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">lambda</text>"#,
        width / 2.0,
        height - 8.0
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="14" y="{:.1}" transform="rotate(-90 14 {:.1})">p</text>"#,
        height / 2.0,
        height / 2.0
    )
    .unwrap();
    for c in cells {
        let (x, y) = (x_of(c.lambda), y_of(c.p));
        if c.class.small {
            let d = CELL * 0.15;
            writeln!(
                out,
                r#"<path d="M{:.1} {:.1}L{:.1} {:.1}M{:.1} {:.1}L{:.1} {:.1}" stroke="black" stroke-width="2"/>"#,
                x - d - 8.0, y - d, x + d - 8.0, y + d, x - d - 8.0, y + d, x + d - 8.0, y - d
            )
            .unwrap();
        }
        if let Some(size) = c.largest_committee() {
            writeln!(
                out,
                r#"<circle cx="{:.1}" cy="{y:.1}" r="{:.1}" fill="none" stroke="blue" stroke-width="2"/>"#,
                x + 8.0,
                CELL * 0.2
            )
            .unwrap();
            writeln!(
                out,
                r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-size="8">{size}</text>"#,
                x + 8.0,
                y + 3.0
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

fn basin_color(b: Basin) -> &'static str {
    match b {
        Basin::Dictatorship => "green",
        Basin::Oligarchy => "red",
        Basin::Committee => "blue",
        Basin::CommitteeAndOligarchy => "purple",
        Basin::Mixed => "orange",
        Basin::Unstable => "lightgray",
    }
}

/// One ribbon over starting sizes `1..=n`, coloured by basin of attraction;
/// stable sizes get a black tick.
pub fn dynamics_svg(d: &Dynamics) -> String {
    let n = d.config.n;
    let step = (800.0 / n as f64).max(1.0);
    let width = 2.0 * MARGIN + step * n as f64;
    let height = 140.0;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height}" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<rect width="{width:.1}" height="{height}" fill="white"/>"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{MARGIN}" y="20">lambda={} p={} n={}</text>"#,
        d.config.lambda, d.config.p, n
    )
    .unwrap();
    for (k, basin) in d.basins().into_iter().enumerate() {
        writeln!(
            out,
            r#"<rect x="{:.2}" y="40" width="{:.2}" height="40" fill="{}"/>"#,
            MARGIN + step * k as f64,
            step,
            basin_color(basin)
        )
        .unwrap();
    }
    for &s in &d.stable {
        let x = MARGIN + step * (s as f64 - 0.5);
        writeln!(
            out,
            r#"<line x1="{x:.2}" y1="82" x2="{x:.2}" y2="94" stroke="black"/>"#
        )
        .unwrap();
    }
    writeln!(out, r#"<text x="{MARGIN}" y="112">1</text>"#).unwrap();
    writeln!(
        out,
        r#"<text x="{:.1}" y="112" text-anchor="end">{n}</text>"#,
        width - MARGIN
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jury::{stable_grid, JuryConfig, JuryModel, TieRule};

    #[test]
    fn grid_markers() {
        let cells = stable_grid(
            &[0.1, 0.9],
            &[0.6, 0.95],
            60,
            1e-12,
            TieRule::StrictMajority,
        )
        .unwrap();
        let svg = grid_svg(&cells);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(
            svg.matches("<circle").count(),
            cells
                .iter()
                .filter(|c| c.largest_committee().is_some())
                .count()
        );
        assert_eq!(
            svg.matches("<path").count(),
            cells.iter().filter(|c| c.class.small).count()
        );
    }

    #[test]
    fn ribbon_has_a_cell_per_size() {
        let d = Dynamics::new(&JuryModel::new(JuryConfig::new(40, 0.6, 0.6).unwrap()).unwrap());
        let svg = dynamics_svg(&d);
        assert_eq!(svg.matches(r#"height="40""#).count(), 40);
    }
}
