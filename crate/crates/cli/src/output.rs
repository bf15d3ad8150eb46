//! Output formats and small rendering helpers.

use clap::ValueEnum;
use planechar::character::HilbertTable;
use planechar::BettiSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Canonical machine format.
    Json,
    /// Tab-separated rows for spreadsheet triage.
    Tsv,
    /// Human-readable report mirroring the usual notation.
    Text,
}

pub fn json_line<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output types serialize")
}

/// `(n_0, ..., n_{s-1})`.
pub fn character_text(entries: &[i64]) -> String {
    let inner: Vec<String> = entries.iter().map(|n| n.to_string()).collect();
    format!("({})", inner.join(", "))
}

/// The resolution display `0 -> O(-b) ... -> O(-a) ... -> I -> 0` with
/// exponents collecting repeated twists.
pub fn resolution_text(betti: &BettiSequence) -> String {
    format!(
        "0 -> {} -> {} -> I -> 0",
        twist_sum(betti.syzygies()),
        twist_sum(betti.gens())
    )
}

fn twist_sum(degrees: &[i64]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < degrees.len() {
        let d = degrees[i];
        let mut count = 0;
        while i < degrees.len() && degrees[i] == d {
            count += 1;
            i += 1;
        }
        if count == 1 {
            parts.push(format!("O(-{d})"));
        } else {
            parts.push(format!("O(-{d})^{count}"));
        }
    }
    parts.join(" + ")
}

/// Aligned rows `n / H / delta / h0 / h1` over the table window.
pub fn table_text(table: &HilbertTable) -> String {
    let window = table.window();
    let mut rows = vec![
        ("n", (0..=window).collect::<Vec<i64>>()),
        ("H", (0..=window).map(|n| table.h(n)).collect()),
        ("delta", (0..=window).map(|n| table.delta(n)).collect()),
        ("h0", (0..=window).map(|n| table.h0(n)).collect()),
        ("h1", (0..=window).map(|n| table.h1(n)).collect()),
    ];
    let width = rows
        .iter()
        .flat_map(|(_, vals)| vals.iter())
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for (label, vals) in rows.drain(..) {
        out.push_str(&format!("{label:<6}"));
        for v in vals {
            out.push_str(&format!(" {v:>width$}"));
        }
        out.push('\n');
    }
    out
}

/// One TSV line from string-ish cells.
pub fn tsv_row<S: AsRef<str>>(cells: &[S]) -> String {
    cells
        .iter()
        .map(|c| c.as_ref().to_string())
        .collect::<Vec<_>>()
        .join("\t")
}
