//! `enumerate`: one verdict row per character in a window.

use clap::ValueEnum;
use planechar::betti::{classify, minimal_betti, Verdict};
use planechar::character::{enumerate_characters, NumericalCharacter};
use planechar::BettiSequence;
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{self, Format};
use crate::{CmdResult, Failure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Filter {
    All,
    Connected,
    Nonconnected,
}

#[derive(Serialize)]
struct Row {
    character: NumericalCharacter,
    s: usize,
    degree: i64,
    betti: BettiSequence,
    #[serde(flatten)]
    verdict: Verdict,
}

pub fn run(s_max: usize, d_max: i64, filter: Filter, format: Format) -> CmdResult {
    if s_max == 0 || d_max < 1 {
        return Err(Failure::Invalid(
            "enumeration needs s_max >= 1 and d_max >= 1".to_string(),
        ));
    }
    let characters: Vec<NumericalCharacter> = enumerate_characters(s_max, d_max).collect();
    // Classify in parallel, then filter sequentially: collect preserves the
    // enumeration order, so output stays deterministic for any --jobs.
    let mut rows: Vec<Row> = characters
        .into_par_iter()
        .map(|c| Row {
            s: c.length(),
            degree: c.degree(),
            betti: minimal_betti(&c),
            verdict: classify(&c),
            character: c,
        })
        .collect();
    rows.retain(|row| match filter {
        Filter::All => true,
        Filter::Connected => row.verdict.connected,
        Filter::Nonconnected => !row.verdict.connected,
    });

    if let Some(bad) = rows.iter().find(|r| !r.verdict.consistent()) {
        return Err(Failure::Violation(format!(
            "verdict sides disagree for {}",
            bad.character
        )));
    }

    Ok(match format {
        Format::Json => {
            let lines: Vec<String> = rows.iter().map(output::json_line).collect();
            lines.join("\n")
        }
        Format::Tsv => {
            let mut lines = vec![output::tsv_row(&[
                "character",
                "s",
                "degree",
                "a",
                "b",
                "connected",
                "sauer",
                "smoothable",
                "witness",
            ])];
            for r in &rows {
                lines.push(output::tsv_row(&[
                    output::json_line(&r.character),
                    r.s.to_string(),
                    r.degree.to_string(),
                    output::json_line(&r.betti.gens()),
                    output::json_line(&r.betti.syzygies()),
                    r.verdict.connected.to_string(),
                    r.verdict.sauer_ok.to_string(),
                    r.verdict.smoothable.to_string(),
                    r.verdict
                        .witness
                        .map_or("-".to_string(), |t| t.to_string()),
                ]));
            }
            lines.join("\n")
        }
        Format::Text => {
            let mut lines = Vec::with_capacity(rows.len());
            for r in &rows {
                lines.push(format!(
                    "{:<18} s={} d={:<3} {}",
                    output::character_text(r.character.entries()),
                    r.s,
                    r.degree,
                    if r.verdict.smoothable {
                        "smoothable"
                    } else {
                        "NOT smoothable"
                    }
                ));
            }
            lines.join("\n")
        }
    })
}
