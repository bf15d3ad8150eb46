//! Explicit Hilbert-Burch matrices for realizable Betti data.
//!
//! For realizable degree data the tridiagonal monomial matrix below has the
//! prescribed degree pattern, its maximal minors generate the ideal of a
//! zero-dimensional subscheme supported at `(1:0:0)`, and away from that
//! point the matrix keeps full rank. Building it and extracting the minors
//! turns abstract degree data into an ideal the resolution oracle can chew
//! on.

use std::fmt;

use crate::betti::{BettiSequence, Realizability};
use crate::field::Field;
use crate::linalg::ScalarMatrix;
use crate::poly::{self, HomogPoly, PolyError};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BurchError {
    NotRealizable(Realizability),
    /// Entry shape or degree pattern violated at `(row, col)`.
    PatternViolation {
        row: usize,
        col: usize,
        detail: String,
    },
    BadShape {
        rows: usize,
        cols: usize,
    },
    /// The evaluated matrix had the wrong rank at the reported point.
    RankClaimViolated {
        point: String,
        rank: usize,
        expected: usize,
    },
    Poly(PolyError),
}

impl fmt::Display for BurchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BurchError::NotRealizable(r) => write!(f, "Betti data is not realizable: {r}"),
            BurchError::PatternViolation { row, col, detail } => {
                write!(f, "degree pattern violated at ({row}, {col}): {detail}")
            }
            BurchError::BadShape { rows, cols } => {
                write!(f, "a graded matrix needs one more row than columns, got {rows}x{cols}")
            }
            BurchError::RankClaimViolated {
                point,
                rank,
                expected,
            } => write!(f, "rank {rank} instead of {expected} at {point}"),
            BurchError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for BurchError {}

impl From<PolyError> for BurchError {
    fn from(e: PolyError) -> Self {
        BurchError::Poly(e)
    }
}

/// A `(k+1) x k` matrix of homogeneous polynomials with a graded degree
/// pattern: entry `(i, j)` is homogeneous of degree `b_j - a_i` and is a
/// structural zero (`None`) whenever that degree is not positive — in
/// particular on equal degrees, where minimality forces the entry to vanish.
#[derive(Debug, Clone)]
pub struct GradedMatrix<F: Field> {
    row_degrees: Vec<i64>,
    col_degrees: Vec<i64>,
    entries: Vec<Vec<Option<HomogPoly<F>>>>,
}

impl<F: Field> PartialEq for GradedMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.row_degrees == other.row_degrees
            && self.col_degrees == other.col_degrees
            && self.entries == other.entries
    }
}

impl<F: Field> GradedMatrix<F> {
    pub fn new(
        field: &F,
        row_degrees: Vec<i64>,
        col_degrees: Vec<i64>,
        entries: Vec<Vec<Option<HomogPoly<F>>>>,
    ) -> Result<Self, BurchError> {
        if row_degrees.len() != col_degrees.len() + 1
            || entries.len() != row_degrees.len()
            || entries.iter().any(|r| r.len() != col_degrees.len())
        {
            return Err(BurchError::BadShape {
                rows: entries.len(),
                cols: entries.first().map_or(col_degrees.len(), |r| r.len()),
            });
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                let degree = col_degrees[j] - row_degrees[i];
                match entry {
                    Some(_) if degree <= 0 => {
                        return Err(BurchError::PatternViolation {
                            row: i,
                            col: j,
                            detail: format!(
                                "pattern degree {degree} is not positive, entry must be zero"
                            ),
                        });
                    }
                    Some(p) if p.degree() != degree => {
                        return Err(BurchError::PatternViolation {
                            row: i,
                            col: j,
                            detail: format!("degree {} against pattern {degree}", p.degree()),
                        });
                    }
                    Some(p) if p.is_zero(field) => {
                        return Err(BurchError::PatternViolation {
                            row: i,
                            col: j,
                            detail: "zero entries are structural (use None)".to_string(),
                        });
                    }
                    _ => {}
                }
            }
        }
        Ok(GradedMatrix {
            row_degrees,
            col_degrees,
            entries,
        })
    }

    /// Row degrees `a`, ascending; one per generator.
    pub fn row_degrees(&self) -> &[i64] {
        &self.row_degrees
    }

    /// Column degrees `b`, ascending; one per syzygy.
    pub fn col_degrees(&self) -> &[i64] {
        &self.col_degrees
    }

    pub fn rows(&self) -> usize {
        self.row_degrees.len()
    }

    pub fn cols(&self) -> usize {
        self.col_degrees.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&HomogPoly<F>> {
        self.entries[i][j].as_ref()
    }

    /// The j-th column as polynomials (structural zeros become zero
    /// polynomials of the pattern degree).
    pub fn column(&self, field: &F, j: usize) -> Vec<HomogPoly<F>> {
        (0..self.rows())
            .map(|i| match &self.entries[i][j] {
                Some(p) => p.clone(),
                None => HomogPoly::zero(field, (self.col_degrees[j] - self.row_degrees[i]).max(0)),
            })
            .collect()
    }

    /// Scalar matrix of values at a point of the plane.
    pub fn evaluate_at(&self, field: &F, point: &[F::Elem; 3]) -> ScalarMatrix<F> {
        let mut m = ScalarMatrix::zero(field, self.rows(), self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                if let Some(p) = &self.entries[i][j] {
                    m.set(i, j, p.eval(point, field));
                }
            }
        }
        m
    }

    pub fn entry_text(&self, field: &F, i: usize, j: usize) -> String {
        match &self.entries[i][j] {
            Some(p) => p.text(field),
            None => "0".to_string(),
        }
    }
}

/// Builds the tridiagonal monomial matrix realizing realizable degree data:
/// column `j` carries `x1^(b_j - a_j)` on the diagonal, `x2^(b_j - a_(j+1))`
/// below it and `x0^(b_j - a_(j-1))` above it (absent for the first column).
/// Realizability makes all three exponents positive, so the matrix is
/// minimal by construction.
pub fn build_exi_matrix<F: Field>(
    field: &F,
    bs: &BettiSequence,
) -> Result<GradedMatrix<F>, BurchError> {
    match bs.realizability() {
        Realizability::Realizable => {}
        other => return Err(BurchError::NotRealizable(other)),
    }
    let a = bs.gens();
    let b = bs.syzygies();
    let k = bs.k();
    let power = |var: usize, exp: i64| {
        let mut e = [0u32; 3];
        e[var] = exp as u32;
        Some(HomogPoly::monomial(field, e))
    };
    let mut entries: Vec<Vec<Option<HomogPoly<F>>>> = vec![vec![None; k]; k + 1];
    for j in 0..k {
        entries[j][j] = power(1, b[j] - a[j]);
        entries[j + 1][j] = power(2, b[j] - a[j + 1]);
        if j > 0 {
            entries[j - 1][j] = power(0, b[j] - a[j - 1]);
        }
    }
    GradedMatrix::new(field, a.to_vec(), b.to_vec(), entries)
}

/// The signed maximal minors of a graded matrix, which generate the ideal it
/// resolves. `gens[i]` has degree `a_i`.
#[derive(Debug, Clone)]
pub struct GeneratorSet<F: Field> {
    gens: Vec<HomogPoly<F>>,
    source: GradedMatrix<F>,
}

impl<F: Field> GeneratorSet<F> {
    pub fn gens(&self) -> &[HomogPoly<F>] {
        &self.gens
    }

    pub fn into_gens(self) -> Vec<HomogPoly<F>> {
        self.gens
    }

    pub fn source(&self) -> &GradedMatrix<F> {
        &self.source
    }
}

/// Deletes row `i` and takes the determinant, with sign `(-1)^i`, for each
/// row. The signs make the generator column literally a syzygy of the
/// transpose: every matrix column annihilates the signed minors, which the
/// resolution oracle rediscovers as the degree-`b_j` kernel elements.
pub fn maximal_minors<F: Field>(
    field: &F,
    matrix: &GradedMatrix<F>,
) -> Result<GeneratorSet<F>, BurchError> {
    let mut gens = Vec::with_capacity(matrix.rows());
    for i in 0..matrix.rows() {
        let sub_entries: Vec<Vec<Option<HomogPoly<F>>>> = (0..matrix.rows())
            .filter(|&r| r != i)
            .map(|r| matrix.entries[r].clone())
            .collect();
        let sub_rows: Vec<i64> = (0..matrix.rows())
            .filter(|&r| r != i)
            .map(|r| matrix.row_degrees[r])
            .collect();
        let minor = poly::det(field, &sub_entries, &sub_rows, &matrix.col_degrees)?;
        debug_assert_eq!(minor.degree(), matrix.row_degrees[i]);
        gens.push(if i % 2 == 0 { minor } else { minor.neg(field) });
    }
    Ok(GeneratorSet {
        gens,
        source: matrix.clone(),
    })
}

/// Outcome of the rank probe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    pub trials: usize,
    pub seed: u64,
    /// Rank at the special point `(1:0:0)`; always below the column count.
    pub special_point_rank: usize,
    /// Column count, the rank away from the special point.
    pub expected_rank: usize,
    /// Whether the pure-power certification ran (see
    /// [`rank_drop_probe`]'s `certify`).
    pub certified: bool,
}

/// Default probe trial count; enough to make an accidental miss implausible
/// while keeping sweeps fast.
pub const DEFAULT_PROBE_TRIALS: usize = 25;

/// Checks the rank claim behind the construction: the matrix drops rank at
/// `(1:0:0)` and nowhere else.
///
/// The point check is exact. Away from the point the default check is
/// probabilistic: `trials` pseudorandom points, none of them the special
/// point, all of which must see full rank. With `certify` the claim is
/// instead settled deterministically: the first and last signed minors are
/// (up to sign) pure powers of `x2` and `x1`, so any rank drop forces
/// `x1 = x2 = 0`, which is the special point; the probe verifies those two
/// minor identities symbolically.
pub fn rank_drop_probe<F: Field>(
    field: &F,
    matrix: &GradedMatrix<F>,
    trials: usize,
    seed: u64,
    certify: bool,
) -> Result<ProbeReport, BurchError> {
    let k = matrix.cols();
    let special = [field.one(), field.zero(), field.zero()];
    let special_rank = matrix.evaluate_at(field, &special).rank(field);
    if special_rank >= k {
        return Err(BurchError::RankClaimViolated {
            point: "(1:0:0)".to_string(),
            rank: special_rank,
            expected: k - 1,
        });
    }

    let mut rng = SplitMix64::new(seed);
    for _ in 0..trials {
        let point = loop {
            let coords = [
                field.from_i64(rng.range_i64(-100, 100)),
                field.from_i64(rng.range_i64(-100, 100)),
                field.from_i64(rng.range_i64(-100, 100)),
            ];
            // Skip the special point's orbit (x1 = x2 = 0) and the origin.
            if !(field.is_zero(&coords[1]) && field.is_zero(&coords[2])) {
                break coords;
            }
        };
        let rank = matrix.evaluate_at(field, &point).rank(field);
        if rank != k {
            let rendered: Vec<String> = point.iter().map(|c| field.format(c)).collect();
            return Err(BurchError::RankClaimViolated {
                point: format!("({})", rendered.join(":")),
                rank,
                expected: k,
            });
        }
    }

    if certify {
        certify_pure_power_minors(field, matrix)?;
    }

    Ok(ProbeReport {
        trials,
        seed,
        special_point_rank: special_rank,
        expected_rank: k,
        certified: certify,
    })
}

/// The deterministic half of the rank claim. Any point where the rank drops
/// kills every maximal minor, so it suffices that two of them already cut
/// out the special point: the minor deleting the first row is triangular
/// with `x2` powers on its diagonal, hence a pure `x2` power, and on the
/// line `x2 = 0` the minor deleting the last row becomes bidiagonal with
/// `x1` powers, hence a pure `x1` power there. Both are symbolic identities.
fn certify_pure_power_minors<F: Field>(
    field: &F,
    matrix: &GradedMatrix<F>,
) -> Result<(), BurchError> {
    let gens = maximal_minors(field, matrix)?;
    let first = &gens.gens()[0];
    let last = gens.gens().last().unwrap();
    let a_first = matrix.row_degrees[0];
    let a_last = *matrix.row_degrees.last().unwrap();
    let matches_up_to_sign = |p: &HomogPoly<F>, q: &HomogPoly<F>| p == q || *p == q.neg(field);

    let x2_power: HomogPoly<F> = HomogPoly::monomial(field, [0, 0, a_first as u32]);
    if !matches_up_to_sign(first, &x2_power) {
        return Err(BurchError::RankClaimViolated {
            point: format!("minor 1 is {}, not a pure x2 power", first.text(field)),
            rank: 0,
            expected: 0,
        });
    }

    let x1_power: HomogPoly<F> = HomogPoly::monomial(field, [0, a_last as u32, 0]);
    let restricted = restrict_to_x2_zero(field, last);
    if !matches_up_to_sign(&restricted, &x1_power) {
        return Err(BurchError::RankClaimViolated {
            point: format!(
                "last minor restricts to {} on x2 = 0, not a pure x1 power",
                restricted.text(field)
            ),
            rank: 0,
            expected: 0,
        });
    }
    Ok(())
}

/// Keeps only the terms free of `x2`.
fn restrict_to_x2_zero<F: Field>(field: &F, p: &HomogPoly<F>) -> HomogPoly<F> {
    let monos = poly::monomials(p.degree());
    let mut out = HomogPoly::zero(field, p.degree());
    for (idx, coeff) in p.coeffs().iter().enumerate() {
        if monos[idx][2] == 0 && !field.is_zero(coeff) {
            out = out.add(&HomogPoly::monomial(field, monos[idx]).scale(coeff, field), field);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betti::{minimal_betti, BettiSequence};
    use crate::character::NumericalCharacter;
    use crate::field::PrimeField;

    fn fp() -> PrimeField {
        PrimeField::default()
    }

    fn betti(a: &[i64], b: &[i64]) -> BettiSequence {
        BettiSequence::new(a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn exi_matrix_for_4_2() {
        let f = fp();
        let m = build_exi_matrix(&f, &betti(&[2, 2, 4], &[3, 5])).unwrap();
        assert_eq!(m.rows(), 3);
        assert_eq!(m.cols(), 2);
        assert_eq!(m.entry_text(&f, 0, 0), "x1");
        assert_eq!(m.entry_text(&f, 0, 1), "x0^3");
        assert_eq!(m.entry_text(&f, 1, 0), "x2");
        assert_eq!(m.entry_text(&f, 1, 1), "x1^3");
        assert_eq!(m.entry_text(&f, 2, 0), "0");
        assert_eq!(m.entry_text(&f, 2, 1), "x2");
    }

    #[test]
    fn exi_matrix_for_one_point() {
        let f = fp();
        let m = build_exi_matrix(&f, &betti(&[1, 1], &[2])).unwrap();
        assert_eq!(m.entry_text(&f, 0, 0), "x1");
        assert_eq!(m.entry_text(&f, 1, 0), "x2");
    }

    #[test]
    fn exi_matrix_rejects_unrealizable_data() {
        let f = fp();
        assert!(matches!(
            build_exi_matrix(&f, &betti(&[1, 1], &[3])),
            Err(BurchError::NotRealizable(Realizability::SumMismatch { .. }))
        ));
    }

    #[test]
    fn minors_of_named_matrices() {
        let f = fp();
        let m = build_exi_matrix(&f, &betti(&[2, 2, 4], &[3, 5])).unwrap();
        let gens = maximal_minors(&f, &m).unwrap();
        let texts: Vec<String> = gens.gens().iter().map(|p| p.text(&f)).collect();
        assert_eq!(texts, vec!["x2^2", "-x1*x2", "x1^4 - x0^3*x2"]);

        let m = build_exi_matrix(&f, &betti(&[1, 1], &[2])).unwrap();
        let gens = maximal_minors(&f, &m).unwrap();
        let texts: Vec<String> = gens.gens().iter().map(|p| p.text(&f)).collect();
        assert_eq!(texts, vec!["x2", "-x1"]);

        let m = build_exi_matrix(&f, &betti(&[2, 2], &[4])).unwrap();
        let gens = maximal_minors(&f, &m).unwrap();
        let texts: Vec<String> = gens.gens().iter().map(|p| p.text(&f)).collect();
        assert_eq!(texts, vec!["x2^2", "-x1^2"]);
    }

    #[test]
    fn minor_degrees_match_row_degrees() {
        let f = fp();
        for entries in [vec![4i64, 2], vec![6, 3, 3], vec![5, 5, 3], vec![7, 3]] {
            let chi = NumericalCharacter::new(entries).unwrap();
            let bs = minimal_betti(&chi);
            let m = build_exi_matrix(&f, &bs).unwrap();
            let gens = maximal_minors(&f, &m).unwrap();
            for (g, &a) in gens.gens().iter().zip(bs.gens()) {
                assert_eq!(g.degree(), a);
                assert!(!g.is_zero(&f));
            }
        }
    }

    #[test]
    fn columns_annihilate_signed_minors() {
        let f = fp();
        let bs = betti(&[2, 2, 4], &[3, 5]);
        let m = build_exi_matrix(&f, &bs).unwrap();
        let gens = maximal_minors(&f, &m).unwrap();
        for j in 0..m.cols() {
            let col = m.column(&f, j);
            let mut acc = HomogPoly::zero(&f, bs.syzygies()[j]);
            for (entry, g) in col.iter().zip(gens.gens()) {
                if !entry.is_zero(&f) {
                    acc = acc.add(&entry.mul(g, &f), &f);
                }
            }
            assert!(acc.is_zero(&f), "column {j} is not a syzygy");
        }
    }

    #[test]
    fn rank_probe_on_named_matrices() {
        let f = fp();
        let m = build_exi_matrix(&f, &betti(&[2, 2, 4], &[3, 5])).unwrap();
        let report = rank_drop_probe(&f, &m, DEFAULT_PROBE_TRIALS, 7, true).unwrap();
        assert_eq!(report.special_point_rank, 1);
        assert_eq!(report.expected_rank, 2);
        assert!(report.certified);

        // Direct spot checks from the construction.
        let at_special = m.evaluate_at(&f, &[f.one(), f.zero(), f.zero()]);
        assert_eq!(at_special.rank(&f), 1);
        let at_ones = m.evaluate_at(&f, &[f.one(), f.one(), f.one()]);
        assert_eq!(at_ones.rank(&f), 2);

        let m = build_exi_matrix(&f, &betti(&[1, 1], &[2])).unwrap();
        let at_point = m.evaluate_at(&f, &[f.zero(), f.one(), f.zero()]);
        assert_eq!(at_point.rank(&f), 1);
    }

    #[test]
    fn pattern_validation_rejects_misplaced_entries() {
        let f = fp();
        // Degree-zero slot must stay structurally zero.
        let entries = vec![
            vec![Some(HomogPoly::monomial(&f, [0, 1, 0]))],
            vec![Some(HomogPoly::monomial(&f, [0, 0, 0]))],
        ];
        assert!(matches!(
            GradedMatrix::new(&f, vec![1, 2], vec![2], entries),
            Err(BurchError::PatternViolation { row: 1, col: 0, .. })
        ));
    }
}
