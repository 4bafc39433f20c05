//! Text rendering of experiment results: one table per combination and a
//! best-per-split summary where each winning value is tagged with its combo.

use std::fmt::Write;

use super::experiment::{format_pct, CellResult, ExperimentResults};
use crate::evaluation::format_2dp;
use crate::fusion::Combo;

const METRICS: [&str; 4] = ["Accuracy", "Precision", "Recall", "F-Measure"];

fn metric(c: &CellResult, i: usize) -> f64 {
    [c.accuracy, c.precision, c.recall, c.f_measure][i]
}

/// `"50-50"` style label.
pub fn split_label(train_pct: f64) -> String {
    format!("{}-{}", format_pct(train_pct), format_pct(100.0 - train_pct))
}

fn combo_title(combo: Combo) -> &'static str {
    match combo {
        Combo::C => "Color",
        Combo::T => "Texture",
        Combo::S => "Shape",
        Combo::CT => "Color+Texture",
        Combo::CS => "Color+Shape",
        Combo::TS => "Texture+Shape",
        Combo::CTS => "Color+Texture+Shape",
    }
}

fn ordered_unique<T: PartialEq + Copy>(items: impl Iterator<Item = T>) -> Vec<T> {
    let mut out = Vec::new();
    for i in items {
        if !out.contains(&i) {
            out.push(i);
        }
    }
    out
}

/// Per train percentage (first-seen order) and metric, the cell holding the
/// maximum. Ties keep the earlier cell.
pub fn best_per_split(results: &ExperimentResults) -> Vec<(f64, [&CellResult; 4])> {
    let pcts = ordered_unique(results.cells.iter().map(|c| c.train_pct));
    pcts.into_iter()
        .map(|pct| {
            let row: Vec<&CellResult> = results.cells.iter().filter(|c| c.train_pct == pct).collect();
            let best = std::array::from_fn(|m| {
                row.iter()
                    .copied()
                    .reduce(|a, b| if metric(b, m) > metric(a, m) { b } else { a })
                    .expect("every percentage has a cell")
            });
            (pct, best)
        })
        .collect()
}

fn table(out: &mut String, title: &str, header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let _ = writeln!(out, "{title}");
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, w))| if i == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect::<Vec<_>>()
            .join("  ")
    };
    let _ = writeln!(out, "{}", line(header.to_vec()));
    let _ = writeln!(
        out,
        "{}",
        "-".repeat(widths.iter().sum::<usize>() + 2 * (widths.len() - 1))
    );
    for r in rows {
        let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
    }
    out.push('\n');
}

pub fn render_report(results: &ExperimentResults) -> String {
    let mut out = String::new();
    let header = ["Train-Test %", METRICS[0], METRICS[1], METRICS[2], METRICS[3]];
    for combo in ordered_unique(results.cells.iter().map(|c| c.combo)) {
        let rows: Vec<Vec<String>> = results
            .cells
            .iter()
            .filter(|c| c.combo == combo)
            .map(|c| {
                let mut r = vec![split_label(c.train_pct)];
                r.extend((0..4).map(|m| format_2dp(metric(c, m))));
                r
            })
            .collect();
        table(
            &mut out,
            &format!("{} features ({combo})", combo_title(combo)),
            &header,
            &rows,
        );
    }
    let best: Vec<Vec<String>> = best_per_split(results)
        .into_iter()
        .map(|(pct, cells)| {
            let mut r = vec![split_label(pct)];
            r.extend((0..4).map(|m| format!("{} ({})", format_2dp(metric(cells[m], m)), cells[m].combo)));
            r
        })
        .collect();
    table(&mut out, "Best per split", &header, &best);
    out
}
