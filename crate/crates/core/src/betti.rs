//! Betti-sequence calculus.
//!
//! The ideal of a zero-dimensional subscheme of the plane has a length-one
//! minimal resolution with generator degrees `a_1 <= ... <= a_{k+1}` and
//! syzygy degrees `b_1 <= ... <= b_k`. This module converts between that
//! data and the numerical character, decides which degree data is realizable
//! by an actual subscheme, and classifies connectedness / smoothability on
//! the Betti side. Everything is stored ascending; published displays often
//! order descending, which only permutes the indices in the inequalities.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::character::{CharError, HilbertTable, NumericalCharacter, TableError};
use crate::poly::monomial_count;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BettiError {
    /// No syzygy degrees at all (`k = 0`).
    Empty,
    /// `len(a) != len(b) + 1`.
    LengthMismatch { gens: usize, syzygies: usize },
    NotNondecreasing { which: &'static str, index: usize },
    /// Generator degrees start at 1, syzygy degrees at 2.
    DegreeOutOfRange { which: &'static str, index: usize },
    /// The Hilbert function computed from the degree data goes negative or
    /// its first difference is inconsistent: the input is not realizable.
    NegativeDimension { degree: i64 },
    /// The computed Hilbert function keeps growing: the degree data does not
    /// describe a zero-dimensional subscheme.
    NotStabilized { window: i64 },
    WindowTooSmall { required: i64, given: i64 },
    NotACharacter(CharError),
}

impl fmt::Display for BettiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BettiError::Empty => write!(f, "a Betti sequence needs at least one syzygy degree"),
            BettiError::LengthMismatch { gens, syzygies } => write!(
                f,
                "{gens} generator degrees against {syzygies} syzygy degrees; need one more generator than syzygies"
            ),
            BettiError::NotNondecreasing { which, index } => {
                write!(f, "{which} degrees must be nondecreasing (violated at index {index})")
            }
            BettiError::DegreeOutOfRange { which, index } => {
                write!(f, "{which} degree at index {index} is out of range")
            }
            BettiError::NegativeDimension { degree } => write!(
                f,
                "inconsistent Hilbert data at degree {degree}; the Betti sequence is not realizable"
            ),
            BettiError::NotStabilized { window } => write!(
                f,
                "Hilbert function still grows at degree {window}; generator and syzygy degrees do not balance"
            ),
            BettiError::WindowTooSmall { required, given } => {
                write!(f, "window up to {given} is too small, need at least {required}")
            }
            BettiError::NotACharacter(e) => write!(f, "recovered sequence is not a character: {e}"),
        }
    }
}

impl std::error::Error for BettiError {}

/// Graded Betti data `(a_1..a_{k+1}; b_1..b_k)` of a length-one resolution,
/// stored ascending.
///
/// Construction checks shape and monotonicity only. The sum condition
/// `sum(b) = sum(a)` and the interlacing `b_j > a_{j+1}` are what
/// [`BettiSequence::realizability`] decides, so sequences violating them
/// must be representable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawBetti", into = "RawBetti")]
pub struct BettiSequence {
    a: Vec<i64>,
    b: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawBetti {
    a: Vec<i64>,
    b: Vec<i64>,
}

impl TryFrom<RawBetti> for BettiSequence {
    type Error = BettiError;

    fn try_from(raw: RawBetti) -> Result<Self, BettiError> {
        BettiSequence::new(raw.a, raw.b)
    }
}

impl From<BettiSequence> for RawBetti {
    fn from(bs: BettiSequence) -> RawBetti {
        RawBetti { a: bs.a, b: bs.b }
    }
}

impl fmt::Display for BettiSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a = {:?}, b = {:?}", self.a, self.b)
    }
}

impl BettiSequence {
    pub fn new(a: Vec<i64>, b: Vec<i64>) -> Result<Self, BettiError> {
        if b.is_empty() {
            return Err(BettiError::Empty);
        }
        if a.len() != b.len() + 1 {
            return Err(BettiError::LengthMismatch {
                gens: a.len(),
                syzygies: b.len(),
            });
        }
        for (which, seq, min) in [("generator", &a, 1i64), ("syzygy", &b, 2i64)] {
            for (i, &v) in seq.iter().enumerate() {
                if v < min {
                    return Err(BettiError::DegreeOutOfRange { which, index: i });
                }
                if i > 0 && seq[i - 1] > v {
                    return Err(BettiError::NotNondecreasing { which, index: i });
                }
            }
        }
        Ok(BettiSequence { a, b })
    }

    /// Generator degrees, ascending.
    pub fn gens(&self) -> &[i64] {
        &self.a
    }

    /// Syzygy degrees, ascending.
    pub fn syzygies(&self) -> &[i64] {
        &self.b
    }

    /// The number of syzygies `k`; there are `k + 1` generators.
    pub fn k(&self) -> usize {
        self.b.len()
    }

    /// `b_k`, the largest syzygy degree.
    pub fn top_syzygy(&self) -> i64 {
        *self.b.last().unwrap()
    }

    /// Appends an equal degree to both sides: a ghost pair, invisible to the
    /// Hilbert function.
    pub fn with_ghost_pair(&self, t: i64) -> Result<BettiSequence, BettiError> {
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        a.insert(a.partition_point(|&x| x <= t), t);
        b.insert(b.partition_point(|&x| x <= t), t);
        BettiSequence::new(a, b)
    }

    /// Decides conditions (b) and (c) for the degree data to be the Betti
    /// sequence of an actual zero-dimensional subscheme: the sums agree and
    /// `b_j > a_{j+1}` for every `j`.
    pub fn realizability(&self) -> Realizability {
        let sum_gens: i64 = self.a.iter().sum();
        let sum_syzygies: i64 = self.b.iter().sum();
        if sum_gens != sum_syzygies {
            return Realizability::SumMismatch {
                sum_gens,
                sum_syzygies,
            };
        }
        for j in 0..self.k() {
            if self.b[j] <= self.a[j + 1] {
                return Realizability::SyzygyNotAboveNextGenerator { index: j + 1 };
            }
        }
        Realizability::Realizable
    }

    pub fn is_realizable(&self) -> bool {
        matches!(self.realizability(), Realizability::Realizable)
    }
}

/// Outcome of the realizability test, carrying the first violated clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realizability {
    Realizable,
    /// Condition (b) fails: generator and syzygy degrees do not sum equally.
    SumMismatch { sum_gens: i64, sum_syzygies: i64 },
    /// Condition (c) fails at the 1-based index `j`: `b_j <= a_{j+1}`.
    SyzygyNotAboveNextGenerator { index: usize },
}

impl fmt::Display for Realizability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Realizability::Realizable => write!(f, "realizable"),
            Realizability::SumMismatch {
                sum_gens,
                sum_syzygies,
            } => write!(
                f,
                "sum condition fails: generator degrees sum to {sum_gens}, syzygy degrees to {sum_syzygies}"
            ),
            Realizability::SyzygyNotAboveNextGenerator { index } => {
                write!(f, "interlacing fails at j = {index}: b_j <= a_(j+1)")
            }
        }
    }
}

/// Multiset of character entries: `c(n) = #{ i : n_i = n }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountFunction {
    counts: BTreeMap<i64, usize>,
    length: usize,
}

impl CountFunction {
    pub fn of(chi: &NumericalCharacter) -> Self {
        let mut counts = BTreeMap::new();
        for &n in chi.entries() {
            *counts.entry(n).or_insert(0) += 1;
        }
        CountFunction {
            counts,
            length: chi.length(),
        }
    }

    pub fn count(&self, n: i64) -> usize {
        self.counts.get(&n).copied().unwrap_or(0)
    }

    /// Total count; equals the character length.
    pub fn total(&self) -> usize {
        self.length
    }
}

/// Entry multiset of a character.
pub fn counts(chi: &NumericalCharacter) -> CountFunction {
    CountFunction::of(chi)
}

/// The ghost-free Betti sequence of a character: `alpha_s = c(s) + 1` and,
/// for `n > s`, whichever of `alpha_n`, `beta_n` the difference
/// `c(n) - c(n-1)` forces, the other being zero. This is the unique solution
/// with no generator and syzygy in a common degree; actual minimal
/// resolutions can differ from it only by ghost pairs.
pub fn minimal_betti(chi: &NumericalCharacter) -> BettiSequence {
    let c = CountFunction::of(chi);
    let s = chi.length() as i64;
    let mut a = vec![s; c.count(s) + 1];
    let mut b = Vec::new();
    for n in s + 1..=chi.head() + 1 {
        let diff = c.count(n) as i64 - c.count(n - 1) as i64;
        if diff > 0 {
            a.extend(std::iter::repeat(n).take(diff as usize));
        } else if diff < 0 {
            b.extend(std::iter::repeat(n).take(-diff as usize));
        }
    }
    BettiSequence::new(a, b).expect("character Betti data is well formed")
}

/// Hilbert table of the degree data over `[0, n_max]`, from the free-module
/// Euler characteristic: `h^0(n) = sum of C(n - a_i + 2, 2) minus
/// sum of C(n - b_j + 2, 2)`. Any inconsistency in the resulting table
/// means the input cannot come from an actual subscheme.
pub fn betti_to_hilbert(bs: &BettiSequence, n_max: i64) -> Result<HilbertTable, BettiError> {
    let required = bs.top_syzygy() - 1;
    if n_max < required {
        return Err(BettiError::WindowTooSmall {
            required,
            given: n_max,
        });
    }
    let mut h = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let h0: i64 = bs.a.iter().map(|&ai| monomial_count(n - ai)).sum::<i64>()
            - bs.b.iter().map(|&bj| monomial_count(n - bj)).sum::<i64>();
        let hn = monomial_count(n) - h0;
        if hn < 0 {
            return Err(BettiError::NegativeDimension { degree: n });
        }
        h.push(hn);
    }
    HilbertTable::from_h(h).map_err(|e| match e {
        TableError::NotStabilized => BettiError::NotStabilized { window: n_max },
        TableError::NegativeValue { degree }
        | TableError::Decreasing { degree }
        | TableError::ExceedsAmbient { degree } => BettiError::NegativeDimension { degree },
        TableError::Empty => BettiError::WindowTooSmall {
            required,
            given: n_max,
        },
    })
}

/// Recovers the character from realizable degree data by inverting the
/// conjugate-partition relation on the first difference of the Hilbert
/// function. Left inverse of [`minimal_betti`].
pub fn betti_to_character(bs: &BettiSequence) -> Result<NumericalCharacter, BettiError> {
    let table = betti_to_hilbert(bs, bs.top_syzygy())?;
    // The length is the first degree where the difference drops below the
    // full ambient growth.
    let s = (0..=table.window())
        .find(|&n| table.delta(n) != n + 1)
        .expect("the difference vanishes at the end of the window");
    // delta(i) counts entries >= i + 1, so entry l is the number of indices
    // i >= s whose difference still exceeds l, shifted up by s.
    let entries: Vec<i64> = (0..s)
        .map(|l| s + (s..=table.window()).filter(|&i| table.delta(i) > l).count() as i64)
        .collect();
    NumericalCharacter::new(entries).map_err(BettiError::NotACharacter)
}

/// Verdict of the Betti-side smoothability test.
///
/// `holds` is the ascending-index reading of the classical criterion:
/// `b_n >= a_{n+2}` for `1 <= n <= k - 1`, vacuous for `k = 1`. A strict
/// violation `b_p < a_{p+2}` pins the first failure. Boundary equalities
/// `b_p = a_{p+2}` never occur for ghost-free sequences (generator and
/// syzygy degrees are disjoint there) but are reported for audit on general
/// inputs, where the non-connectedness reading uses `<=`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SauerReport {
    pub holds: bool,
    /// First 1-based `p` with `b_p < a_{p+2}`.
    pub strict_violation: Option<usize>,
    /// All 1-based `p` with `b_p = a_{p+2}`.
    pub boundary_equalities: Vec<usize>,
}

impl SauerReport {
    /// First `p` with `b_p <= a_{p+2}`, the reading that detects
    /// non-connectedness.
    pub fn le_witness(&self) -> Option<usize> {
        match (self.strict_violation, self.boundary_equalities.first()) {
            (Some(p), Some(&q)) => Some(p.min(q)),
            (Some(p), None) => Some(p),
            (None, Some(&q)) => Some(q),
            (None, None) => None,
        }
    }
}

/// Checks `b_n >= a_{n+2}` across the resolution.
pub fn sauer_condition(bs: &BettiSequence) -> SauerReport {
    let mut strict_violation = None;
    let mut boundary_equalities = Vec::new();
    for p in 1..bs.k() {
        let b_p = bs.b[p - 1];
        let a_p2 = bs.a[p + 1];
        if b_p < a_p2 && strict_violation.is_none() {
            strict_violation = Some(p);
        }
        if b_p == a_p2 {
            boundary_equalities.push(p);
        }
    }
    SauerReport {
        holds: strict_violation.is_none(),
        strict_violation,
        boundary_equalities,
    }
}

/// The combined classification of a character: connectedness, the Betti-side
/// criterion, and smoothability of the associated arithmetically
/// Cohen-Macaulay space curves. The three answers always agree; `witness` is
/// the first gap index when they are all negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub connected: bool,
    #[serde(rename = "sauer")]
    pub sauer_ok: bool,
    pub smoothable: bool,
    pub witness: Option<i64>,
}

impl Verdict {
    /// The equivalence the whole calculus rests on; a `false` here would be
    /// a bug, and the self-test sweeps check it exhaustively.
    pub fn consistent(&self) -> bool {
        self.connected == self.sauer_ok && self.connected == self.smoothable
    }
}

pub fn classify(chi: &NumericalCharacter) -> Verdict {
    let connected = chi.is_connected();
    let sauer_ok = sauer_condition(&minimal_betti(chi)).holds;
    let verdict = Verdict {
        connected,
        sauer_ok,
        smoothable: connected,
        witness: chi.first_gap().map(|t| t as i64),
    };
    debug_assert!(verdict.consistent(), "classification mismatch for {chi}");
    verdict
}

/// What the degree bound says about a curve of degree `d` on an integral
/// surface of degree `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorollaryOutcome {
    Smoothable,
    /// The hypothesis gives no information either way.
    Inconclusive,
}

impl fmt::Display for CorollaryOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorollaryOutcome::Smoothable => write!(f, "smoothable"),
            CorollaryOutcome::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Degree criterion: a curve of degree `d > s(s-1)` on an integral surface
/// of degree `s` is smoothable. Without the surface hypothesis the bound
/// says nothing.
pub fn corollary_check(d: i64, s: i64, on_integral_surface: bool) -> CorollaryOutcome {
    debug_assert!(d >= 1 && s >= 1);
    if on_integral_surface && d > s * (s - 1) {
        CorollaryOutcome::Smoothable
    } else {
        CorollaryOutcome::Inconclusive
    }
}

/// Pass/fail record for the standard relations between a character and its
/// Betti sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemarkReport {
    /// `a_1 = s`.
    pub first_gen_is_length: bool,
    /// `a_2 = n_{s-1}`.
    pub second_gen_is_tail: bool,
    /// `b_k = n_0 + 1`.
    pub top_syzygy_is_head_plus_one: bool,
    /// `#{ b_j = b_k } = #{ n_i = n_0 } = h^1` at twist `b_k - 3`.
    pub top_multiplicities_match: bool,
    /// `a_{k+1} <= n_0`.
    pub gens_bounded_by_head: bool,
}

impl RemarkReport {
    pub fn all_pass(&self) -> bool {
        self.first_gen_is_length
            && self.second_gen_is_tail
            && self.top_syzygy_is_head_plus_one
            && self.top_multiplicities_match
            && self.gens_bounded_by_head
    }
}

/// Checks the relations on a `(character, Betti sequence)` pair that are
/// supposed to describe the same subscheme.
pub fn remark_checks(chi: &NumericalCharacter, bs: &BettiSequence) -> RemarkReport {
    let s = chi.length() as i64;
    let top = bs.top_syzygy();
    let top_syzygy_count = bs.b.iter().filter(|&&x| x == top).count();
    let head_count = chi.entries().iter().filter(|&&n| n == chi.head()).count();
    RemarkReport {
        first_gen_is_length: bs.a[0] == s,
        second_gen_is_tail: bs.a[1] == chi.tail(),
        top_syzygy_is_head_plus_one: top == chi.head() + 1,
        top_multiplicities_match: top_syzygy_count == head_count
            && head_count as i64 == chi.h1(top - 3),
        gens_bounded_by_head: *bs.a.last().unwrap() <= chi.head(),
    }
}
