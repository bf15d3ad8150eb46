//! `analyze`: the full combinatorial report on one character (or a batch).

use planechar::betti::{classify, minimal_betti, Verdict};
use planechar::character::{HilbertTable, NumericalCharacter};
use planechar::BettiSequence;
use serde::Serialize;

use crate::inputs::{self, Input};
use crate::output::{self, Format};
use crate::{CmdResult, Failure};

#[derive(Serialize)]
struct Report {
    character: NumericalCharacter,
    s: usize,
    degree: i64,
    connected: bool,
    table: HilbertTable,
    decomposition: Vec<(i64, NumericalCharacter)>,
    betti: BettiSequence,
    verdict: Verdict,
}

pub fn run(arg: &str, format: Format) -> CmdResult {
    match inputs::resolve(arg)? {
        Input::Single(text) => analyze_one(&text, format),
        Input::Batch(lines) => {
            let mut blocks = Vec::with_capacity(lines.len());
            for line in &lines {
                blocks.push(analyze_one(line, format)?);
            }
            Ok(match format {
                Format::Text => blocks.join("\n"),
                _ => blocks.join("\n"),
            })
        }
    }
}

fn analyze_one(text: &str, format: Format) -> CmdResult {
    let character: NumericalCharacter = serde_json::from_str(text)
        .map_err(|e| Failure::Invalid(format!("invalid character `{text}`: {e}")))?;
    let table = character
        .hilbert_table(character.default_window())
        .expect("default window reaches the head");
    let report = Report {
        s: character.length(),
        degree: character.degree(),
        connected: character.is_connected(),
        decomposition: character.decompose(),
        betti: minimal_betti(&character),
        verdict: classify(&character),
        table,
        character,
    };
    if !report.verdict.consistent() {
        return Err(Failure::Violation(format!(
            "verdict sides disagree for {}: {}",
            report.character,
            output::json_line(&report.verdict)
        )));
    }
    Ok(match format {
        Format::Json => output::json_line(&report),
        Format::Tsv => tsv(&report),
        Format::Text => text_block(&report),
    })
}

fn tsv(r: &Report) -> String {
    let rows = vec![
        output::tsv_row(&["character", &output::json_line(&r.character)]),
        output::tsv_row(&["s", &r.s.to_string()]),
        output::tsv_row(&["degree", &r.degree.to_string()]),
        output::tsv_row(&["connected", &r.connected.to_string()]),
        output::tsv_row(&["H", &join(r.table.h_values())]),
        output::tsv_row(&["decomposition", &output::json_line(&r.decomposition)]),
        output::tsv_row(&["betti", &output::json_line(&r.betti)]),
        output::tsv_row(&["smoothable", &r.verdict.smoothable.to_string()]),
    ];
    rows.join("\n")
}

fn join(values: &[i64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn text_block(r: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "chi = {}    s = {}    degree = {}\n",
        output::character_text(r.character.entries()),
        r.s,
        r.degree
    ));
    out.push_str(&output::table_text(&r.table));
    match r.verdict.witness {
        None => out.push_str("connected: yes\n"),
        Some(t) => out.push_str(&format!("connected: no (gap at t = {t})\n")),
    }
    let pieces: Vec<String> = r
        .decomposition
        .iter()
        .map(|(shift, piece)| format!("shift {shift}: {}", output::character_text(piece.entries())))
        .collect();
    out.push_str(&format!("decomposition: {}\n", pieces.join("; ")));
    out.push_str(&format!("resolution: {}\n", output::resolution_text(&r.betti)));
    // The smooth/integral-surface statements are reported as labels only;
    // nothing geometric is computed.
    if r.verdict.smoothable {
        out.push_str(&format!(
            "verdict: smoothable (connected character; the general such curve lies on a smooth, \
             hence integral, surface of degree {})\n",
            r.s
        ));
    } else {
        out.push_str(&format!(
            "verdict: not smoothable (non-connected character; no integral degree-{} surface \
             contains such a curve)\n",
            r.s
        ));
    }
    out
}
