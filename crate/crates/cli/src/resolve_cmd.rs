//! `resolve`: measure an explicit ideal with the linear-algebra oracle.

use planechar::field::Field;
use planechar::poly::{parse_poly, HomogPoly};
use planechar::resolve::{GradedIdeal, ResolutionReport};

use crate::inputs::{self, Input};
use crate::output::{self, Format};
use crate::{CmdResult, Failure};

pub fn run<F: Field>(field: &F, arg: &str, format: Format) -> CmdResult {
    let text = match inputs::resolve(arg)? {
        Input::Single(t) => t,
        Input::Batch(lines) => lines.join(","),
    };
    let gens = parse_generators(field, &text)?;
    let ideal =
        GradedIdeal::new(field.clone(), gens).map_err(|e| Failure::Invalid(e.to_string()))?;
    let report = ideal
        .syzygy_betti()
        .map_err(|e| Failure::Invalid(format!("cannot resolve the input ideal: {e}")))?;

    Ok(match format {
        Format::Json => output::json_line(&report),
        Format::Tsv => tsv(&report),
        Format::Text => text_block(field, &ideal, &report),
    })
}

/// Accepts a JSON array of polynomial strings or a comma-separated list in
/// the polynomial text format.
fn parse_generators<F: Field>(field: &F, text: &str) -> Result<Vec<HomogPoly<F>>, Failure> {
    let pieces: Vec<String> = if text.trim_start().starts_with('[') {
        serde_json::from_str(text)
            .map_err(|e| Failure::Invalid(format!("invalid generator list: {e}")))?
    } else {
        text.split(',').map(str::to_string).collect()
    };
    pieces
        .iter()
        .map(|p| parse_poly(field, p).map_err(|e| Failure::Invalid(e.to_string())))
        .collect()
}

fn tsv(r: &ResolutionReport) -> String {
    let mut rows = Vec::new();
    for (d, count) in &r.alpha {
        rows.push(output::tsv_row(&[
            "alpha",
            &d.to_string(),
            &count.to_string(),
        ]));
    }
    for (d, count) in &r.beta {
        rows.push(output::tsv_row(&[
            "beta",
            &d.to_string(),
            &count.to_string(),
        ]));
    }
    rows.push(output::tsv_row(&["a", &output::json_line(&r.betti.gens())]));
    rows.push(output::tsv_row(&[
        "b",
        &output::json_line(&r.betti.syzygies()),
    ]));
    rows.push(output::tsv_row(&["deg", &r.hilbert.degree().to_string()]));
    let h: Vec<String> = r.hilbert.h_values().iter().map(|v| v.to_string()).collect();
    rows.push(output::tsv_row(
        &std::iter::once("H".to_string())
            .chain(h)
            .collect::<Vec<_>>(),
    ));
    rows.join("\n")
}

fn text_block<F: Field>(
    field: &F,
    ideal: &GradedIdeal<F>,
    r: &ResolutionReport,
) -> String {
    let mut out = String::new();
    let minimal = ideal.minimal_generators().minimal;
    out.push_str("minimal generators:\n");
    for g in &minimal {
        out.push_str(&format!("  {}\n", g.text(field)));
    }
    out.push_str(&format!("resolution: {}\n", output::resolution_text(&r.betti)));
    out.push_str(&format!("degree: {}\n", r.hilbert.degree()));
    out.push_str(&output::table_text(&r.hilbert));
    out
}
