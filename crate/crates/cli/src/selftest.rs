//! `selftest`: every cross-check of the calculus over a window, sharded
//! across the worker pool, merged deterministically.

use planechar::betti::{
    betti_to_character, betti_to_hilbert, minimal_betti, remark_checks, sauer_condition,
};
use planechar::character::{enumerate_characters, NumericalCharacter};
use planechar::field::Field;
use planechar::hilbert_burch::{
    build_exi_matrix, maximal_minors, rank_drop_probe, DEFAULT_PROBE_TRIALS,
};
use planechar::resolve::GradedIdeal;
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{self, Format};
use crate::{CmdResult, Failure};

const CHECKS: [&str; 6] = [
    "connectedness equals the Betti-side criterion",
    "character <-> Betti round-trip",
    "Hilbert routes agree",
    "Betti/character relations",
    "splitting and decomposition",
    "construct -> resolve round-trip",
];

#[derive(Serialize)]
struct CheckLine {
    name: &'static str,
    cases: usize,
    failures: usize,
}

#[derive(Serialize)]
struct Summary {
    s_max: usize,
    d_max: i64,
    characters: usize,
    checks: Vec<CheckLine>,
    pass: bool,
}

pub fn run<F: Field>(
    field: &F,
    s_max: usize,
    d_max: i64,
    seed: u64,
    format: Format,
) -> CmdResult {
    if s_max == 0 || d_max < 1 {
        return Err(Failure::Invalid(
            "selftest needs s_max >= 1 and d_max >= 1".to_string(),
        ));
    }
    let characters: Vec<NumericalCharacter> = enumerate_characters(s_max, d_max).collect();
    let per_char: Vec<Vec<(usize, String)>> = characters
        .par_iter()
        .map(|c| check_character(field, c, seed))
        .collect();

    let mut failures: Vec<Vec<String>> = vec![Vec::new(); CHECKS.len()];
    for (c, result) in characters.iter().zip(&per_char) {
        for (check, message) in result {
            failures[*check].push(format!("{c}: {message}"));
        }
    }

    let summary = Summary {
        s_max,
        d_max,
        characters: characters.len(),
        checks: CHECKS
            .iter()
            .enumerate()
            .map(|(i, name)| CheckLine {
                name,
                cases: characters.len(),
                failures: failures[i].len(),
            })
            .collect(),
        pass: failures.iter().all(|f| f.is_empty()),
    };

    if !summary.pass {
        let mut dump = String::from("selftest FAILED\n");
        for (i, name) in CHECKS.iter().enumerate() {
            if failures[i].is_empty() {
                continue;
            }
            dump.push_str(&format!("{name}: {} failures\n", failures[i].len()));
            for example in failures[i].iter().take(3) {
                dump.push_str(&format!("  {example}\n"));
            }
        }
        return Err(Failure::Violation(dump));
    }

    Ok(match format {
        Format::Json => output::json_line(&summary),
        Format::Tsv => {
            let mut rows = vec![output::tsv_row(&["check", "cases", "failures"])];
            for line in &summary.checks {
                rows.push(output::tsv_row(&[
                    line.name.to_string(),
                    line.cases.to_string(),
                    line.failures.to_string(),
                ]));
            }
            rows.push(output::tsv_row(&[
                "selftest",
                &summary.characters.to_string(),
                "PASS",
            ]));
            rows.join("\n")
        }
        Format::Text => {
            let width = CHECKS.iter().map(|n| n.len()).max().unwrap();
            let mut lines = Vec::new();
            for line in &summary.checks {
                lines.push(format!(
                    "{:<width$}  {:>6} cases  {:>3} failures",
                    line.name, line.cases, line.failures
                ));
            }
            lines.push(format!(
                "selftest: PASS ({} characters, s <= {}, d <= {})",
                summary.characters, s_max, d_max
            ));
            lines.join("\n")
        }
    })
}

/// All six checks on one character; returns `(check index, message)` per
/// failure. Everything is exact, so any failure at all is a bug or a broken
/// mathematical claim.
fn check_character<F: Field>(
    field: &F,
    c: &NumericalCharacter,
    seed: u64,
) -> Vec<(usize, String)> {
    let mut failures = Vec::new();
    let bs = minimal_betti(c);

    // 0: connectedness against the Betti-side criterion.
    let sauer = sauer_condition(&bs);
    if sauer.holds != c.is_connected() {
        failures.push((0, format!("connected = {}, criterion = {}", c.is_connected(), sauer.holds)));
    }
    if !sauer.boundary_equalities.is_empty() {
        failures.push((0, format!("boundary equality at p = {:?}", sauer.boundary_equalities)));
    }

    // 1: character -> Betti -> character.
    if !bs.is_realizable() {
        failures.push((1, format!("{bs} not realizable")));
    }
    match betti_to_character(&bs) {
        Ok(back) if back == *c => {}
        Ok(back) => failures.push((1, format!("round-trip gave {back}"))),
        Err(e) => failures.push((1, e.to_string())),
    }

    // 2: the two Hilbert routes and the closed-form h1.
    let window = c.default_window();
    let table = c.hilbert_table(window).expect("window reaches the head");
    match betti_to_hilbert(&bs, window) {
        Ok(from_betti) if from_betti == table => {}
        Ok(_) => failures.push((2, "tables disagree".to_string())),
        Err(e) => failures.push((2, e.to_string())),
    }
    if (0..=window).any(|n| table.h1(n) != c.h1(n)) {
        failures.push((2, "closed-form h1 disagrees with the table".to_string()));
    }

    // 3: relations between the character and its Betti data.
    let remark = remark_checks(c, &bs);
    if !remark.all_pass() {
        failures.push((3, format!("{remark:?}")));
    }

    // 4: splitting and decomposition.
    let pieces = c.decompose();
    if pieces.is_empty() || (pieces.len() == 1) != c.is_connected() {
        failures.push((4, "piece count disagrees with connectedness".to_string()));
    }
    let mut rebuilt = Vec::new();
    for (shift, piece) in &pieces {
        if !piece.is_connected() {
            failures.push((4, format!("piece {piece} not connected")));
        }
        rebuilt.extend(piece.entries().iter().map(|&n| n + shift));
    }
    if rebuilt != c.entries() {
        failures.push((4, "decomposition does not rebuild the character".to_string()));
    }
    if let Some(t) = c.first_gap() {
        let split = c.split_at(t).expect("gap exists");
        if split.top.degree() + split.residual.degree() != c.degree() {
            failures.push((4, format!("degrees do not add at t = {t}")));
        }
    }

    // 5: construct the ideal and measure it back.
    match construct_and_resolve(field, c, seed) {
        Ok((hilbert_ok, betti_ok)) => {
            if !hilbert_ok {
                failures.push((5, "oracle Hilbert table disagrees".to_string()));
            }
            if !betti_ok {
                failures.push((5, "oracle resolution disagrees".to_string()));
            }
        }
        Err(e) => failures.push((5, e)),
    }

    failures
}

fn construct_and_resolve<F: Field>(
    field: &F,
    c: &NumericalCharacter,
    seed: u64,
) -> Result<(bool, bool), String> {
    let bs = minimal_betti(c);
    let matrix = build_exi_matrix(field, &bs).map_err(|e| e.to_string())?;
    rank_drop_probe(field, &matrix, DEFAULT_PROBE_TRIALS, seed, false).map_err(|e| e.to_string())?;
    let gens = maximal_minors(field, &matrix).map_err(|e| e.to_string())?;
    let ideal = GradedIdeal::new(field.clone(), gens.into_gens()).map_err(|e| e.to_string())?;
    let report = ideal.syzygy_betti().map_err(|e| e.to_string())?;
    let predicted = c
        .hilbert_table(c.head() + 2)
        .expect("window reaches the head");
    Ok((report.hilbert == predicted, report.betti == bs))
}
