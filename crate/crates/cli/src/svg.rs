//! Minimal SVG heatmap of a sweep table: one cell per `(α, λ)`, colored by
//! growth between the small and the large family, admissible cells outlined.

use std::fmt::Write;

use herzlab::operators::{SweepTable, STABILITY_LIMIT};

const CELL: f64 = 28.0;
const MARGIN: f64 = 60.0;

fn distinct(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// White at growth 1, red at the stability limit and above.
fn color(growth: f64) -> String {
    let t = ((growth - 1.0) / (STABILITY_LIMIT - 1.0)).clamp(0.0, 1.0);
    let gb = (255.0 * (1.0 - t)).round() as u8;
    format!("#ff{gb:02x}{gb:02x}")
}

pub fn heatmap(table: &SweepTable) -> String {
    let alphas = distinct(table.cells.iter().map(|c| c.alpha));
    let lambdas = distinct(table.cells.iter().map(|c| c.lambda));
    let w = MARGIN * 2.0 + CELL * alphas.len() as f64;
    let h = MARGIN * 2.0 + CELL * lambdas.len() as f64;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="sans-serif" font-size="10">"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN}" y="20">{} sweep: growth from family {} to {} (δ₂ = {:.4})</text>"#,
        table.operator, table.small_size, table.large_size, table.delta2
    );
    for c in &table.cells {
        let i = alphas.iter().position(|a| *a == c.alpha).unwrap_or(0);
        let j = lambdas.iter().position(|l| *l == c.lambda).unwrap_or(0);
        let x = MARGIN + CELL * i as f64;
        // λ grows upward
        let y = MARGIN + CELL * (lambdas.len() - 1 - j) as f64;
        let stroke = if c.admissible {
            r#" stroke="black" stroke-width="1.5""#
        } else {
            ""
        };
        let _ = writeln!(
            s,
            r#"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{}"{stroke}><title>α={} λ={} growth={:.4}</title></rect>"#,
            color(c.growth),
            c.alpha,
            c.lambda,
            c.growth
        );
    }
    for (i, a) in alphas.iter().enumerate() {
        let x = MARGIN + CELL * (i as f64 + 0.5);
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="{}" text-anchor="middle">{a}</text>"#,
            h - MARGIN + 14.0
        );
    }
    for (j, l) in lambdas.iter().enumerate() {
        let y = MARGIN + CELL * (lambdas.len() - 1 - j) as f64 + CELL * 0.6;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{y}" text-anchor="end">{l}</text>"#,
            MARGIN - 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">α</text>"#,
        w / 2.0,
        h - 20.0
    );
    let _ = writeln!(s, r#"<text x="14" y="{}">λ</text>"#, h / 2.0);
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use herzlab::operators::SweepCell;

    #[test]
    fn one_rect_per_cell() {
        let cell = |alpha, lambda, growth| SweepCell {
            alpha,
            lambda,
            admissible: alpha < 0.3,
            sup_small: 1.0,
            sup_large: growth,
            growth,
            stable: growth < STABILITY_LIMIT,
        };
        let table = SweepTable {
            operator: "hardy".into(),
            delta2: 0.5,
            small_size: 10,
            large_size: 40,
            lebesgue_sup: 2.0,
            cells: vec![
                cell(0.1, 0.0, 1.0),
                cell(0.4, 0.0, 2.0),
                cell(0.1, 0.05, 1.2),
            ],
            pass: true,
        };
        let svg = heatmap(&table);
        assert_eq!(svg.matches("<rect").count(), 3);
        assert!(svg.contains("#ffffff") && svg.contains("#ff0000"));
        assert_eq!(svg.matches("stroke=\"black\"").count(), 2);
    }
}
