//! The resolution oracle.
//!
//! Everything here is measured from an explicit ideal by exact linear
//! algebra, with no help from the character-side formulas: per-degree ideal
//! dimensions from incremental echelon spans, Hilbert functions of the
//! quotient, minimal generator counts by trimming, and minimal syzygy counts
//! from explicit kernels. The combinatorial calculus and this module reach
//! the same numbers along unrelated routes, which is the point.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::betti::BettiSequence;
use crate::character::{HilbertTable, TableError};
use crate::field::Field;
use crate::linalg::{EchelonSpan, ScalarMatrix};
use crate::poly::{monomial_count, monomial_index, monomials, HomogPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolveError {
    /// Zero polynomials cannot be generators.
    ZeroGenerator { index: usize },
    /// The quotient Hilbert function is still moving at the window end.
    NotStabilized { window: i64 },
    /// The quotient Hilbert function decreases: the input is not the
    /// saturated ideal of a subscheme and the tabulation is meaningless.
    InconsistentQuotient { degree: i64 },
    /// A principal ideal cuts out a curve, not points.
    NotZeroDimensional,
    /// The generators admit relations beyond a length-one resolution
    /// (detected at the reported degree): the input cannot be the saturated
    /// ideal of a zero-dimensional subscheme.
    UnexpectedDepth { degree: i64 },
}

impl fmt::Display for ResolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolveError::ZeroGenerator { index } => {
                write!(f, "generator {index} is the zero polynomial")
            }
            ResolveError::NotStabilized { window } => write!(
                f,
                "Hilbert function has not stabilized by degree {window}; widen the window"
            ),
            ResolveError::InconsistentQuotient { degree } => write!(
                f,
                "quotient Hilbert function decreases at degree {degree}; the ideal is not saturated"
            ),
            ResolveError::NotZeroDimensional => {
                write!(f, "a single generator cuts out a curve, not a zero-dimensional subscheme")
            }
            ResolveError::UnexpectedDepth { degree } => write!(
                f,
                "relations beyond a length-one resolution detected at degree {degree}"
            ),
        }
    }
}

impl std::error::Error for ResolveError {}

/// Per-degree echelon spans of the ideal, grown degree by degree: the
/// degree-`n` slice is spanned by the variable shifts of the degree-`n-1`
/// slice plus the input generators of degree `n`.
struct SliceCache<F: Field> {
    spans: Vec<EchelonSpan<F>>,
    /// Dimension contributed by the shifts alone, before degree-`n` input
    /// generators; the difference counts minimal generators.
    from_prev: Vec<usize>,
    /// Which input generators grew their slice, in the sorted order.
    kept: Vec<bool>,
}

/// A homogeneous ideal presented by explicit generators, with cached
/// per-degree slice data.
pub struct GradedIdeal<F: Field> {
    field: F,
    gens: Vec<HomogPoly<F>>,
    cache: RefCell<SliceCache<F>>,
}

/// Minimal generator data of an ideal: per-degree counts and the trimmed
/// generator list itself.
#[derive(Debug, Clone)]
pub struct GeneratorProfile<F: Field> {
    pub alpha: BTreeMap<i64, usize>,
    pub minimal: Vec<HomogPoly<F>>,
}

/// The measured resolution of an ideal: per-degree minimal generator counts
/// `alpha`, per-degree minimal syzygy counts `beta`, the assembled Betti
/// sequence and the quotient Hilbert table.
#[derive(Debug, Clone, Serialize)]
pub struct ResolutionReport {
    pub alpha: BTreeMap<i64, usize>,
    pub beta: BTreeMap<i64, usize>,
    pub betti: BettiSequence,
    pub hilbert: HilbertTable,
}

impl<F: Field> GradedIdeal<F> {
    pub fn new(field: F, gens: Vec<HomogPoly<F>>) -> Result<Self, ResolveError> {
        for (index, g) in gens.iter().enumerate() {
            if g.is_zero(&field) {
                return Err(ResolveError::ZeroGenerator { index });
            }
        }
        let mut gens = gens;
        gens.sort_by_key(|g| g.degree());
        let kept = vec![false; gens.len()];
        Ok(GradedIdeal {
            field,
            gens,
            cache: RefCell::new(SliceCache {
                spans: Vec::new(),
                from_prev: Vec::new(),
                kept,
            }),
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Generators in ascending degree order.
    pub fn generators(&self) -> &[HomogPoly<F>] {
        &self.gens
    }

    /// Extends the cached slices through degree `n`.
    fn ensure_slices(&self, n: i64) {
        let mut cache = self.cache.borrow_mut();
        while (cache.spans.len() as i64) <= n {
            let d = cache.spans.len() as i64;
            let mut span = EchelonSpan::new(monomial_count(d) as usize);
            if d > 0 {
                let shift = ShiftTables::new(d - 1);
                let prev_rows: Vec<Vec<F::Elem>> = cache.spans[(d - 1) as usize]
                    .basis()
                    .iter()
                    .map(|r| r.to_vec())
                    .collect();
                for row in &prev_rows {
                    for var in 0..3 {
                        span.insert(&self.field, shift.apply(&self.field, row, var));
                    }
                }
            }
            let from_prev = span.dim();
            let mut kept_updates = Vec::new();
            for (gi, g) in self.gens.iter().enumerate() {
                if g.degree() != d {
                    continue;
                }
                let grew = span.insert(&self.field, g.coeffs().to_vec());
                kept_updates.push((gi, grew));
            }
            for (gi, grew) in kept_updates {
                cache.kept[gi] = grew;
            }
            cache.spans.push(span);
            cache.from_prev.push(from_prev);
        }
    }

    /// Dimension of the degree-`n` slice of the ideal.
    pub fn ideal_dimension(&self, n: i64) -> usize {
        assert!(n >= 0);
        self.ensure_slices(n);
        self.cache.borrow().spans[n as usize].dim()
    }

    /// Hilbert function of the quotient on `[0, n_max]`:
    /// `H(n) = C(n+2, 2) - dim I_n`. The window must reach the stabilized
    /// value, which is read off as the degree of the subscheme.
    pub fn hilbert_of_quotient(&self, n_max: i64) -> Result<HilbertTable, ResolveError> {
        assert!(n_max >= 0);
        self.ensure_slices(n_max);
        let h: Vec<i64> = (0..=n_max)
            .map(|n| monomial_count(n) - self.ideal_dimension(n) as i64)
            .collect();
        HilbertTable::from_h(h).map_err(|e| match e {
            TableError::NotStabilized | TableError::Empty => {
                ResolveError::NotStabilized { window: n_max }
            }
            TableError::Decreasing { degree }
            | TableError::NegativeValue { degree }
            | TableError::ExceedsAmbient { degree } => {
                ResolveError::InconsistentQuotient { degree }
            }
        })
    }

    /// Minimal generator counts `alpha_d = dim I_d - dim(R_1 * I_(d-1))`,
    /// together with the trimmed generator list (input generators that grow
    /// their degree slice, in order).
    pub fn minimal_generators(&self) -> GeneratorProfile<F> {
        let top = self.gens.iter().map(|g| g.degree()).max().unwrap_or(0);
        self.ensure_slices(top);
        let cache = self.cache.borrow();
        let mut alpha = BTreeMap::new();
        let mut minimal = Vec::new();
        for (g, &kept) in self.gens.iter().zip(&cache.kept) {
            if kept {
                *alpha.entry(g.degree()).or_insert(0) += 1;
                minimal.push(g.clone());
            }
        }
        GeneratorProfile { alpha, minimal }
    }

    /// Basis of the degree-`d` syzygies of the trimmed generators, as
    /// coefficient tuples: entry `i` of a basis vector is the polynomial
    /// multiplying the `i`-th minimal generator (zero of degree 0 when the
    /// generator's degree exceeds `d`).
    pub fn syzygy_space(&self, d: i64) -> Vec<Vec<HomogPoly<F>>> {
        let profile = self.minimal_generators();
        let degrees: Vec<i64> = profile.minimal.iter().map(|g| g.degree()).collect();
        let kernel = syzygy_kernel(&self.field, &profile.minimal, d);
        kernel
            .into_iter()
            .map(|v| {
                let mut out = Vec::with_capacity(degrees.len());
                let mut offset = 0usize;
                for &a in &degrees {
                    if d - a < 0 {
                        out.push(HomogPoly::zero(&self.field, 0));
                        continue;
                    }
                    let len = monomial_count(d - a) as usize;
                    out.push(HomogPoly::from_coeffs(d - a, v[offset..offset + len].to_vec()));
                    offset += len;
                }
                out
            })
            .collect()
    }

    /// Measures the whole minimal resolution: trims the generators, walks
    /// the syzygy kernels degree by degree counting new elements by
    /// dimension, and cross-checks the result against the measured Hilbert
    /// function at every degree. Only ideals with a length-one resolution
    /// pass; anything deeper is reported as such.
    pub fn syzygy_betti(&self) -> Result<ResolutionReport, ResolveError> {
        let profile = self.minimal_generators();
        let r = profile.minimal.len();
        if r < 2 {
            return Err(ResolveError::NotZeroDimensional);
        }
        let degrees: Vec<i64> = profile.minimal.iter().map(|g| g.degree()).collect();

        // Find the stabilized Hilbert table. Degrees of points cut out by a
        // codimension-two ideal are bounded by the product of the two
        // smallest generator degrees, which caps the search.
        let cap = degrees[0] * degrees[1] + 2;
        let mut window = *degrees.last().unwrap() + 2;
        let hilbert = loop {
            match self.hilbert_of_quotient(window) {
                Ok(t) => break t,
                Err(ResolveError::NotStabilized { .. }) if window < cap => {
                    window = (window + 4).min(cap);
                }
                Err(e) => return Err(e),
            }
        };

        // First degree with the stabilized value; resolution data for a
        // saturated points ideal lives strictly below stab + 3, so that
        // degree acts as the empty guard.
        let stab = (0..=hilbert.window())
            .find(|&n| hilbert.h(n) == hilbert.degree())
            .expect("table contains its stabilized value");
        let guard = stab + 3;
        self.ensure_slices(guard);
        let hilbert = self.hilbert_of_quotient(guard)?;

        let mut beta: BTreeMap<i64, usize> = BTreeMap::new();
        let mut prev_kernel: Vec<Vec<F::Elem>> = Vec::new();
        for d in degrees[0]..=guard {
            let kernel = syzygy_kernel(&self.field, &profile.minimal, d);

            // Span of the shifted previous kernel inside the current one.
            let ncols: usize = degrees
                .iter()
                .map(|&a| monomial_count(d - a).max(0) as usize)
                .sum();
            let mut old = EchelonSpan::new(ncols);
            for w in &prev_kernel {
                for var in 0..3 {
                    old.insert(&self.field, shift_blocks(&self.field, w, &degrees, d - 1, var));
                }
            }
            let fresh = kernel.len() as i64 - old.dim() as i64;
            assert!(fresh >= 0, "old syzygies escaped the kernel at degree {d}");
            if fresh > 0 {
                if d == guard {
                    return Err(ResolveError::UnexpectedDepth { degree: d });
                }
                beta.insert(d, fresh as usize);
            }
            prev_kernel = kernel;
        }

        // Euler-characteristic consistency at every degree: a length-one
        // resolution with these counts must reproduce the measured slices.
        let blist: Vec<i64> = beta
            .iter()
            .flat_map(|(&deg, &count)| std::iter::repeat(deg).take(count))
            .collect();
        for d in 0..=guard {
            let predicted: i64 = degrees.iter().map(|&a| monomial_count(d - a)).sum::<i64>()
                - blist.iter().map(|&b| monomial_count(d - b)).sum::<i64>();
            if predicted != self.ideal_dimension(d) as i64 {
                return Err(ResolveError::UnexpectedDepth { degree: d });
            }
        }
        if blist.len() != r - 1 {
            return Err(ResolveError::UnexpectedDepth { degree: guard });
        }

        let betti = BettiSequence::new(degrees.clone(), blist)
            .expect("measured resolution data is well formed");
        Ok(ResolutionReport {
            alpha: profile.alpha,
            beta,
            betti,
            hilbert,
        })
    }
}

/// Index maps for multiplying a degree-`d` coefficient vector by each
/// variable.
struct ShiftTables {
    tables: [Vec<usize>; 3],
    target_len: usize,
}

impl ShiftTables {
    fn new(d: i64) -> Self {
        let monos = monomials(d);
        let target_len = monomial_count(d + 1) as usize;
        let tables = std::array::from_fn(|var| {
            monos
                .iter()
                .map(|&e| {
                    let mut shifted = e;
                    shifted[var] += 1;
                    monomial_index(d + 1, shifted)
                })
                .collect()
        });
        ShiftTables { tables, target_len }
    }

    fn apply<F: Field>(&self, field: &F, row: &[F::Elem], var: usize) -> Vec<F::Elem> {
        let mut out = vec![field.zero(); self.target_len];
        for (idx, coeff) in row.iter().enumerate() {
            if !field.is_zero(coeff) {
                out[self.tables[var][idx]] = coeff.clone();
            }
        }
        out
    }
}

/// Kernel of the degree-`d` evaluation map
/// `(m_1, ..., m_r) -> sum of m_i * g_i`: columns are monomial multiples of
/// the generators expressed in the degree-`d` monomial basis.
fn syzygy_kernel<F: Field>(field: &F, gens: &[HomogPoly<F>], d: i64) -> Vec<Vec<F::Elem>> {
    let nrows = monomial_count(d) as usize;
    let mut columns: Vec<Vec<F::Elem>> = Vec::new();
    for g in gens {
        let md = d - g.degree();
        if md < 0 {
            continue;
        }
        let gen_monos = monomials(g.degree());
        for m in monomials(md) {
            let mut col = vec![field.zero(); nrows];
            for (idx, coeff) in g.coeffs().iter().enumerate() {
                if field.is_zero(coeff) {
                    continue;
                }
                let e = gen_monos[idx];
                let target = [e[0] + m[0], e[1] + m[1], e[2] + m[2]];
                col[monomial_index(d, target)] = coeff.clone();
            }
            columns.push(col);
        }
    }
    if columns.is_empty() {
        return Vec::new();
    }
    let ncols = columns.len();
    let mut matrix = ScalarMatrix::zero(field, nrows, ncols);
    for (j, col) in columns.into_iter().enumerate() {
        for (i, v) in col.into_iter().enumerate() {
            matrix.set(i, j, v);
        }
    }
    matrix.kernel_basis(field)
}

/// Multiplies a block vector over generator degrees `a` (blocks of source
/// degree `d - a_i`) by the variable `var`, producing the block vector one
/// degree up.
fn shift_blocks<F: Field>(
    field: &F,
    v: &[F::Elem],
    degrees: &[i64],
    d: i64,
    var: usize,
) -> Vec<F::Elem> {
    let target_total: usize = degrees
        .iter()
        .map(|&a| monomial_count(d + 1 - a).max(0) as usize)
        .sum();
    let mut out = vec![field.zero(); target_total];
    let mut src_offset = 0usize;
    let mut dst_offset = 0usize;
    for &a in degrees {
        let src_deg = d - a;
        let dst_len = monomial_count(d + 1 - a).max(0) as usize;
        if src_deg >= 0 {
            let src_len = monomial_count(src_deg) as usize;
            let monos = monomials(src_deg);
            for (idx, coeff) in v[src_offset..src_offset + src_len].iter().enumerate() {
                if !field.is_zero(coeff) {
                    let mut e = monos[idx];
                    e[var] += 1;
                    out[dst_offset + monomial_index(src_deg + 1, e)] = coeff.clone();
                }
            }
            src_offset += src_len;
        }
        dst_offset += dst_len;
    }
    debug_assert_eq!(src_offset, v.len());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::parse_poly;

    fn fp() -> PrimeField {
        PrimeField::default()
    }

    fn ideal(gens: &[&str]) -> GradedIdeal<PrimeField> {
        let f = fp();
        let polys = gens.iter().map(|s| parse_poly(&f, s).unwrap()).collect();
        GradedIdeal::new(f, polys).unwrap()
    }

    #[test]
    fn slice_dimensions() {
        let i = ideal(&["x1", "x2"]);
        assert_eq!(i.ideal_dimension(2), 5);

        let i = ideal(&["x2^2", "x1*x2", "x1^4 - x0^3*x2"]);
        assert_eq!(i.ideal_dimension(3), 5);

        let i = ideal(&["x2^2", "x1^2"]);
        assert_eq!(i.ideal_dimension(2), 2);
    }

    #[test]
    fn quotient_hilbert_functions() {
        let i = ideal(&["x1", "x2"]);
        let t = i.hilbert_of_quotient(4).unwrap();
        assert!(t.h_values().iter().all(|&v| v == 1));

        let i = ideal(&["x2^2", "x1*x2", "x1^4 - x0^3*x2"]);
        let t = i.hilbert_of_quotient(5).unwrap();
        assert_eq!(t.h_values(), &[1, 3, 4, 5, 5, 5]);

        let i = ideal(&["x2^2", "x1^2"]);
        let t = i.hilbert_of_quotient(4).unwrap();
        assert_eq!(t.h_values(), &[1, 3, 4, 4, 4]);
    }

    #[test]
    fn window_must_reach_stabilization() {
        let i = ideal(&["x2^2", "x1*x2", "x1^4 - x0^3*x2"]);
        assert!(matches!(
            i.hilbert_of_quotient(2),
            Err(ResolveError::NotStabilized { window: 2 })
        ));
    }

    #[test]
    fn trimming_redundant_generators() {
        let i = ideal(&["x1", "x2", "x1^2"]);
        let profile = i.minimal_generators();
        assert_eq!(profile.alpha.get(&1), Some(&2));
        assert_eq!(profile.alpha.get(&2), None);
        assert_eq!(profile.minimal.len(), 2);
    }

    #[test]
    fn generator_profiles() {
        let i = ideal(&["x2^2", "x1*x2", "x1^4 - x0^3*x2"]);
        let profile = i.minimal_generators();
        assert_eq!(profile.alpha.get(&2), Some(&2));
        assert_eq!(profile.alpha.get(&4), Some(&1));

        let i = ideal(&["x2^2", "x1^2"]);
        assert_eq!(i.minimal_generators().alpha.get(&2), Some(&2));
    }

    #[test]
    fn koszul_syzygy_of_two_coordinates() {
        let i = ideal(&["x1", "x2"]);
        let report = i.syzygy_betti().unwrap();
        assert_eq!(report.beta.get(&2), Some(&1));
        assert_eq!(report.betti.gens(), &[1, 1]);
        assert_eq!(report.betti.syzygies(), &[2]);
    }

    #[test]
    fn named_exi_ideal_resolution() {
        let i = ideal(&["x2^2", "x1*x2", "x1^4 - x0^3*x2"]);
        let report = i.syzygy_betti().unwrap();
        assert_eq!(report.betti.gens(), &[2, 2, 4]);
        assert_eq!(report.betti.syzygies(), &[3, 5]);
        assert_eq!(report.hilbert.degree(), 5);
    }

    #[test]
    fn complete_intersection_koszul_degree() {
        let i = ideal(&["x2^2", "x1^2"]);
        let report = i.syzygy_betti().unwrap();
        assert_eq!(report.betti.syzygies(), &[4]);
    }

    #[test]
    fn ghost_pairs_in_genuine_minimal_resolutions() {
        use crate::betti::sauer_condition;

        // Same Hilbert function as the complete intersection of two conics,
        // but the resolution carries a generator and a syzygy both in
        // degree 3: Hilbert data determines Betti numbers only up to such
        // repeated pairs, and the oracle must measure them faithfully.
        let i = ideal(&["x0^2", "x0*x1", "x1^3"]);
        let report = i.syzygy_betti().unwrap();
        assert_eq!(report.betti.gens(), &[2, 2, 3]);
        assert_eq!(report.betti.syzygies(), &[3, 4]);
        assert_eq!(report.hilbert.h_values(), &[1, 3, 4, 4, 4, 4]);
        // The b_1 = a_3 boundary is flagged for audit; the criterion still
        // holds, matching the connected character (3, 2) of this Hilbert
        // function.
        let sauer = sauer_condition(&report.betti);
        assert!(sauer.holds);
        assert_eq!(sauer.boundary_equalities, vec![1]);
    }

    #[test]
    fn rejects_zero_generators_and_principal_ideals() {
        let f = fp();
        let zero = HomogPoly::zero(&f, 2);
        assert!(matches!(
            GradedIdeal::new(f.clone(), vec![zero]),
            Err(ResolveError::ZeroGenerator { index: 0 })
        ));
        let i = ideal(&["x1^3"]);
        assert!(matches!(i.syzygy_betti(), Err(ResolveError::NotZeroDimensional)));
    }

    #[test]
    fn depth_violations_are_detected() {
        // Drop x1*x2 from the ideal of the (4,2) subscheme but keep all its
        // multiples: the Hilbert function still looks like five points
        // (1, 3, 5, 5, ...) yet the ideal is not saturated, so the
        // resolution has length two and the oracle must say so.
        let i = ideal(&["x2^2", "x0*x1*x2", "x1^2*x2", "x1^4 - x0^3*x2"]);
        assert!(matches!(i.syzygy_betti(), Err(ResolveError::UnexpectedDepth { .. })));
    }

    #[test]
    fn unstabilized_inputs_are_detected() {
        // x0 * (x0, x1, x2) cuts out a line with an embedded point; the
        // quotient Hilbert function grows forever.
        let i = ideal(&["x0^2", "x0*x1", "x0*x2"]);
        assert!(matches!(i.syzygy_betti(), Err(ResolveError::NotStabilized { .. })));
    }

    #[test]
    fn syzygy_space_contains_matrix_columns() {
        use crate::betti::BettiSequence;
        use crate::hilbert_burch::{build_exi_matrix, maximal_minors};

        let f = fp();
        let bs = BettiSequence::new(vec![2, 2, 4], vec![3, 5]).unwrap();
        let matrix = build_exi_matrix(&f, &bs).unwrap();
        let gens = maximal_minors(&f, &matrix).unwrap();
        let i = GradedIdeal::new(f.clone(), gens.gens().to_vec()).unwrap();

        let degrees: Vec<i64> = i
            .minimal_generators()
            .minimal
            .iter()
            .map(|g| g.degree())
            .collect();
        // Flatten a block vector over the generators, skipping generators
        // whose degree exceeds the syzygy degree.
        let flatten = |blocks: &[HomogPoly<PrimeField>], d: i64| -> Vec<u64> {
            blocks
                .iter()
                .zip(&degrees)
                .filter(|(_, &a)| d - a >= 0)
                .flat_map(|(p, _)| p.coeffs().iter().copied())
                .collect()
        };
        for (j, &bj) in bs.syzygies().iter().enumerate() {
            let space = i.syzygy_space(bj);
            assert!(!space.is_empty());
            let ncols: usize = degrees.iter().map(|&a| monomial_count(bj - a) as usize).sum();
            let mut span = EchelonSpan::new(ncols);
            for w in &space {
                span.insert(&f, flatten(w, bj));
            }
            let col = matrix.column(&f, j);
            assert!(
                span.contains(&f, &flatten(&col, bj)),
                "column {j} not among degree-{bj} syzygies"
            );
        }
    }

    #[test]
    fn rational_mode_agrees_on_the_named_ideal() {
        let q = Rationals;
        let gens = ["x2^2", "x1*x2", "x1^4 - x0^3*x2"]
            .iter()
            .map(|s| parse_poly(&q, s).unwrap())
            .collect();
        let i = GradedIdeal::new(q, gens).unwrap();
        let report = i.syzygy_betti().unwrap();
        assert_eq!(report.betti.gens(), &[2, 2, 4]);
        assert_eq!(report.betti.syzygies(), &[3, 5]);
        assert_eq!(report.hilbert.h_values(), &[1, 3, 4, 5, 5, 5, 5]);
    }
}
