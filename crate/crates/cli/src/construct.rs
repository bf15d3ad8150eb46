//! `construct`: the explicit matrix, its minors and the rank probe.

use planechar::betti::minimal_betti;
use planechar::character::NumericalCharacter;
use planechar::field::Field;
use planechar::hilbert_burch::{
    build_exi_matrix, maximal_minors, rank_drop_probe, BurchError, GradedMatrix, ProbeReport,
    DEFAULT_PROBE_TRIALS,
};
use planechar::BettiSequence;
use serde::Serialize;

use crate::inputs::{self, Input};
use crate::output::{self, Format};
use crate::{CmdResult, Failure};

#[derive(Serialize)]
struct MatrixOut {
    row_degrees: Vec<i64>,
    col_degrees: Vec<i64>,
    entries: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct ProbeOut {
    trials: usize,
    seed: u64,
    special_point_rank: usize,
    expected_rank: usize,
    certified: bool,
}

#[derive(Serialize)]
struct Report {
    betti: BettiSequence,
    matrix: MatrixOut,
    generators: Vec<String>,
    probe: ProbeOut,
}

pub fn run<F: Field>(
    field: &F,
    character: Option<&str>,
    betti: Option<&str>,
    certify: bool,
    seed: u64,
    format: Format,
) -> CmdResult {
    // Either value may be inline, @file, or '-' (stdin; one input per line
    // for batch mode).
    let (arg, is_character) = match (character, betti) {
        (Some(text), None) => (text, true),
        (None, Some(text)) => (text, false),
        _ => {
            return Err(Failure::Invalid(
                "pass exactly one of --character or --betti".to_string(),
            ))
        }
    };
    match inputs::resolve(arg)? {
        Input::Single(text) => construct_one(field, &text, is_character, certify, seed, format),
        Input::Batch(lines) => {
            let mut blocks = Vec::with_capacity(lines.len());
            for line in &lines {
                blocks.push(construct_one(field, line, is_character, certify, seed, format)?);
            }
            Ok(blocks.join("\n"))
        }
    }
}

fn construct_one<F: Field>(
    field: &F,
    text: &str,
    is_character: bool,
    certify: bool,
    seed: u64,
    format: Format,
) -> CmdResult {
    let bs: BettiSequence = if is_character {
        let c: NumericalCharacter = serde_json::from_str(text)
            .map_err(|e| Failure::Invalid(format!("invalid character `{text}`: {e}")))?;
        minimal_betti(&c)
    } else {
        serde_json::from_str(text)
            .map_err(|e| Failure::Invalid(format!("invalid Betti data `{text}`: {e}")))?
    };

    let matrix = build_exi_matrix(field, &bs).map_err(|e| match e {
        BurchError::NotRealizable(r) => Failure::Invalid(format!("not realizable: {r}")),
        other => Failure::Invalid(other.to_string()),
    })?;
    let probe = rank_drop_probe(field, &matrix, DEFAULT_PROBE_TRIALS, seed, certify)
        .map_err(|e| Failure::Violation(e.to_string()))?;
    let gens = maximal_minors(field, &matrix).map_err(|e| Failure::Violation(e.to_string()))?;

    let report = Report {
        betti: bs,
        matrix: matrix_out(field, &matrix),
        generators: gens.gens().iter().map(|g| g.text(field)).collect(),
        probe: probe_out(&probe),
    };

    Ok(match format {
        Format::Json => output::json_line(&report),
        Format::Tsv => tsv(&report),
        Format::Text => text_block(&report),
    })
}

fn matrix_out<F: Field>(field: &F, matrix: &GradedMatrix<F>) -> MatrixOut {
    MatrixOut {
        row_degrees: matrix.row_degrees().to_vec(),
        col_degrees: matrix.col_degrees().to_vec(),
        entries: (0..matrix.rows())
            .map(|i| {
                (0..matrix.cols())
                    .map(|j| matrix.entry_text(field, i, j))
                    .collect()
            })
            .collect(),
    }
}

fn probe_out(p: &ProbeReport) -> ProbeOut {
    ProbeOut {
        trials: p.trials,
        seed: p.seed,
        special_point_rank: p.special_point_rank,
        expected_rank: p.expected_rank,
        certified: p.certified,
    }
}

fn tsv(r: &Report) -> String {
    let mut rows = vec![
        output::tsv_row(&["a", &output::json_line(&r.betti.gens())]),
        output::tsv_row(&["b", &output::json_line(&r.betti.syzygies())]),
    ];
    for row in &r.matrix.entries {
        rows.push(output::tsv_row(
            &std::iter::once("matrix".to_string())
                .chain(row.iter().cloned())
                .collect::<Vec<_>>(),
        ));
    }
    for g in &r.generators {
        rows.push(output::tsv_row(&["generator", g]));
    }
    rows.push(output::tsv_row(&[
        "probe",
        &format!(
            "trials={} seed={} special_rank={} expected={} certified={}",
            r.probe.trials,
            r.probe.seed,
            r.probe.special_point_rank,
            r.probe.expected_rank,
            r.probe.certified
        ),
    ]));
    rows.join("\n")
}

fn text_block(r: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("resolution: {}\n", output::resolution_text(&r.betti)));
    let width = r
        .matrix
        .entries
        .iter()
        .flatten()
        .map(String::len)
        .max()
        .unwrap_or(1);
    out.push_str("matrix:\n");
    for row in &r.matrix.entries {
        let cells: Vec<String> = row.iter().map(|e| format!("{e:>width$}")).collect();
        out.push_str(&format!("  [ {} ]\n", cells.join("  ")));
    }
    out.push_str("generators:\n");
    for g in &r.generators {
        out.push_str(&format!("  {g}\n"));
    }
    out.push_str(&format!(
        "rank probe: rank {} at (1:0:0), rank {} at {} sample points (seed {}){}\n",
        r.probe.special_point_rank,
        r.probe.expected_rank,
        r.probe.trials,
        r.probe.seed,
        if r.probe.certified {
            ", certified symbolically"
        } else {
            ""
        }
    ));
    out
}
