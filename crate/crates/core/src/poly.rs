//! Dense homogeneous polynomials in `x0, x1, x2` and determinants of
//! polynomial matrices.
//!
//! A degree-`d` polynomial is a coefficient vector over the lexicographically
//! ordered monomials of degree `d` (exponent of `x0` descending first), so
//! the zero polynomial of each degree has its own slot. Degrees never exceed
//! a few dozen here, which makes the dense representation the simple and
//! fast choice.

use std::fmt;

use crate::field::Field;

/// Binomial coefficient `C(m, 2)`, zero for `m < 2`. Overflow-checked: the
/// calculus never needs values outside `i64`.
pub fn binom2(m: i64) -> i64 {
    if m < 2 {
        0
    } else {
        m.checked_mul(m - 1).expect("binomial overflow") / 2
    }
}

/// Number of monomials of degree `d` in three variables, `C(d+2, 2)`; zero
/// for negative `d`.
pub fn monomial_count(d: i64) -> i64 {
    binom2(d + 2)
}

/// All exponent triples `(e0, e1, e2)` with `e0 + e1 + e2 = d`, in
/// lexicographic order with `e0` descending: `x0^d` first, `x2^d` last.
pub fn monomials(d: i64) -> Vec<[u32; 3]> {
    assert!(d >= 0);
    let d = d as u32;
    let mut out = Vec::with_capacity(monomial_count(d as i64) as usize);
    for e0 in (0..=d).rev() {
        for e1 in (0..=d - e0).rev() {
            out.push([e0, e1, d - e0 - e1]);
        }
    }
    out
}

/// Position of an exponent triple inside `monomials(d)`.
pub fn monomial_index(d: i64, e: [u32; 3]) -> usize {
    debug_assert_eq!(e[0] as i64 + e[1] as i64 + e[2] as i64, d);
    let rest = d - e[0] as i64; // e1 + e2
    (binom2(rest + 1) + rest - e[1] as i64) as usize
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// A matrix entry is not homogeneous of the degree its position demands.
    DegreeMismatch {
        row: usize,
        col: usize,
        expected: i64,
        found: i64,
    },
    NotSquare {
        rows: usize,
        cols: usize,
    },
    Parse {
        input: String,
        reason: String,
    },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DegreeMismatch {
                row,
                col,
                expected,
                found,
            } => write!(
                f,
                "entry ({row}, {col}) has degree {found}, the pattern demands {expected}"
            ),
            PolyError::NotSquare { rows, cols } => {
                write!(f, "determinant of a {rows}x{cols} matrix")
            }
            PolyError::Parse { input, reason } => write!(f, "cannot parse `{input}`: {reason}"),
        }
    }
}

impl std::error::Error for PolyError {}

/// A homogeneous polynomial of a fixed degree.
#[derive(Debug, Clone)]
pub struct HomogPoly<F: Field> {
    degree: i64,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for HomogPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.coeffs == other.coeffs
    }
}

impl<F: Field> HomogPoly<F> {
    pub fn zero(field: &F, degree: i64) -> Self {
        assert!(degree >= 0);
        HomogPoly {
            degree,
            coeffs: vec![field.zero(); monomial_count(degree) as usize],
        }
    }

    /// The single monomial `x0^e0 x1^e1 x2^e2` with coefficient one.
    pub fn monomial(field: &F, e: [u32; 3]) -> Self {
        let degree = e.iter().map(|&x| x as i64).sum();
        let mut p = Self::zero(field, degree);
        p.coeffs[monomial_index(degree, e)] = field.one();
        p
    }

    /// Wraps a raw coefficient vector in the monomial-basis order of
    /// [`monomials`].
    pub fn from_coeffs(degree: i64, coeffs: Vec<F::Elem>) -> Self {
        assert_eq!(coeffs.len() as i64, monomial_count(degree));
        HomogPoly { degree, coeffs }
    }

    /// Builds from `(coefficient, exponents)` terms, all of the same degree;
    /// repeated monomials accumulate.
    pub fn from_terms(field: &F, degree: i64, terms: &[(i64, [u32; 3])]) -> Self {
        let mut p = Self::zero(field, degree);
        for &(c, e) in terms {
            let idx = monomial_index(degree, e);
            p.coeffs[idx] = field.add(&p.coeffs[idx], &field.from_i64(c));
        }
        p
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, e: [u32; 3]) -> &F::Elem {
        &self.coeffs[monomial_index(self.degree, e)]
    }

    pub fn is_zero(&self, field: &F) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }

    pub fn add(&self, other: &Self, field: &F) -> Self {
        assert_eq!(self.degree, other.degree);
        HomogPoly {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self, field: &F) -> Self {
        assert_eq!(self.degree, other.degree);
        HomogPoly {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| field.sub(a, b))
                .collect(),
        }
    }

    pub fn neg(&self, field: &F) -> Self {
        HomogPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| field.neg(a)).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem, field: &F) -> Self {
        HomogPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| field.mul(a, c)).collect(),
        }
    }

    /// Exact coefficient convolution; degrees add.
    pub fn mul(&self, other: &Self, field: &F) -> Self {
        let degree = self.degree + other.degree;
        let mut out = Self::zero(field, degree);
        let self_monos = monomials(self.degree);
        let other_monos = monomials(other.degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            let ea = self_monos[i];
            for (j, b) in other.coeffs.iter().enumerate() {
                if field.is_zero(b) {
                    continue;
                }
                let eb = other_monos[j];
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                let idx = monomial_index(degree, e);
                out.coeffs[idx] = field.add(&out.coeffs[idx], &field.mul(a, b));
            }
        }
        out
    }

    /// Value at a point of the plane.
    pub fn eval(&self, point: &[F::Elem; 3], field: &F) -> F::Elem {
        let monos = monomials(self.degree);
        let mut acc = field.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if field.is_zero(c) {
                continue;
            }
            let mut term = c.clone();
            for v in 0..3 {
                for _ in 0..monos[i][v] {
                    term = field.mul(&term, &point[v]);
                }
            }
            acc = field.add(&acc, &term);
        }
        acc
    }

    /// Human-readable sum of monomials, e.g. `x1^4 - x0^3*x2`. Terms appear
    /// in ascending lexicographic exponent order, which is fixed, so output
    /// is deterministic.
    pub fn text(&self, field: &F) -> String {
        let monos = monomials(self.degree);
        let mut s = String::new();
        for idx in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[idx];
            if field.is_zero(c) {
                continue;
            }
            let mono = monomial_text(monos[idx]);
            let (sign, mag) = match field.lift(c) {
                Some(v) if v < 0 => ("-", coeff_text(field, &field.neg(c), &mono)),
                Some(_) => ("+", coeff_text(field, c, &mono)),
                None => ("+", coeff_text(field, c, &mono)),
            };
            if s.is_empty() {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(if sign == "-" { " - " } else { " + " });
            }
            s.push_str(&mag);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

fn coeff_text<F: Field>(field: &F, c: &F::Elem, mono: &str) -> String {
    let rendered = match field.lift(c) {
        Some(1) => None,
        Some(v) => Some(v.to_string()),
        None => Some(field.format(c)),
    };
    match (rendered, mono.is_empty()) {
        (None, true) => "1".to_string(),
        (None, false) => mono.to_string(),
        (Some(r), true) => r,
        (Some(r), false) => format!("{r}*{mono}"),
    }
}

fn monomial_text(e: [u32; 3]) -> String {
    let mut parts = Vec::new();
    for (v, &exp) in e.iter().enumerate() {
        match exp {
            0 => {}
            1 => parts.push(format!("x{v}")),
            _ => parts.push(format!("x{v}^{exp}")),
        }
    }
    parts.join("*")
}

/// Parses the text format produced by [`HomogPoly::text`]: signed terms of
/// `coef*x0^e0*x1^e1*x2^e2` factors. The input must be homogeneous.
pub fn parse_poly<F: Field>(field: &F, input: &str) -> Result<HomogPoly<F>, PolyError> {
    let err = |reason: &str| PolyError::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty polynomial"));
    }

    // Split into signed terms.
    let mut terms: Vec<(i64, String)> = Vec::new();
    let mut sign = 1i64;
    let mut cur = String::new();
    for (i, ch) in compact.chars().enumerate() {
        match ch {
            '+' | '-' => {
                if i == 0 {
                    sign = if ch == '-' { -1 } else { 1 };
                } else if cur.is_empty() {
                    return Err(err("two consecutive signs"));
                } else {
                    terms.push((sign, std::mem::take(&mut cur)));
                    sign = if ch == '-' { -1 } else { 1 };
                }
            }
            _ => cur.push(ch),
        }
    }
    if cur.is_empty() {
        return Err(err("trailing sign"));
    }
    terms.push((sign, cur));

    let mut parsed: Vec<(i64, [u32; 3])> = Vec::new();
    for (sign, term) in terms {
        let mut coeff = 1i64;
        let mut exps = [0u32; 3];
        let mut saw_factor = false;
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(err("empty factor"));
            }
            if factor.chars().next().unwrap().is_ascii_digit() {
                let c: i64 = factor.parse().map_err(|_| err("bad coefficient"))?;
                coeff = coeff.checked_mul(c).ok_or_else(|| err("coefficient overflow"))?;
                saw_factor = true;
                continue;
            }
            let rest = factor
                .strip_prefix('x')
                .ok_or_else(|| err("expected a coefficient or x0/x1/x2 factor"))?;
            let (var, exp) = match rest.split_once('^') {
                Some((v, e)) => (v, e.parse::<u32>().map_err(|_| err("bad exponent"))?),
                None => (rest, 1),
            };
            let v: usize = var.parse().map_err(|_| err("bad variable"))?;
            if v > 2 {
                return Err(err("variables are x0, x1, x2"));
            }
            exps[v] += exp;
            saw_factor = true;
        }
        if !saw_factor {
            return Err(err("empty term"));
        }
        parsed.push((sign * coeff, exps));
    }

    let degree: i64 = parsed[0].1.iter().map(|&e| e as i64).sum();
    for (_, e) in &parsed {
        if e.iter().map(|&x| x as i64).sum::<i64>() != degree {
            return Err(err("terms of unequal degree; input must be homogeneous"));
        }
    }
    Ok(HomogPoly::from_terms(field, degree, &parsed))
}

/// Determinant of a square matrix of homogeneous polynomials with a graded
/// degree pattern: entry `(i, j)` is zero or homogeneous of degree
/// `col_degrees[j] - row_degrees[i]`. Expansion picks the sparsest row or
/// column at each step; the result is homogeneous of degree
/// `sum(col_degrees) - sum(row_degrees)`.
pub fn det<F: Field>(
    field: &F,
    entries: &[Vec<Option<HomogPoly<F>>>],
    row_degrees: &[i64],
    col_degrees: &[i64],
) -> Result<HomogPoly<F>, PolyError> {
    let n = row_degrees.len();
    if col_degrees.len() != n || entries.len() != n || entries.iter().any(|r| r.len() != n) {
        return Err(PolyError::NotSquare {
            rows: entries.len(),
            cols: entries.first().map_or(col_degrees.len(), |r| r.len()),
        });
    }
    for (i, row) in entries.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if let Some(p) = e {
                let expected = col_degrees[j] - row_degrees[i];
                if p.degree() != expected || expected < 0 {
                    return Err(PolyError::DegreeMismatch {
                        row: i,
                        col: j,
                        expected,
                        found: p.degree(),
                    });
                }
            }
        }
    }
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    Ok(det_rec(field, entries, &rows, &cols, row_degrees, col_degrees))
}

fn det_rec<F: Field>(
    field: &F,
    entries: &[Vec<Option<HomogPoly<F>>>],
    rows: &[usize],
    cols: &[usize],
    row_degrees: &[i64],
    col_degrees: &[i64],
) -> HomogPoly<F> {
    let target: i64 = cols.iter().map(|&j| col_degrees[j]).sum::<i64>()
        - rows.iter().map(|&i| row_degrees[i]).sum::<i64>();
    if rows.len() == 1 {
        return match &entries[rows[0]][cols[0]] {
            Some(p) => p.clone(),
            None => HomogPoly::zero(field, target),
        };
    }

    // Pick the row or column with the most structural zeros.
    let zeros_in_row = |r: usize| cols.iter().filter(|&&c| entries[r][c].is_none()).count();
    let zeros_in_col = |c: usize| rows.iter().filter(|&&r| entries[r][c].is_none()).count();
    let best_row = (0..rows.len()).max_by_key(|&k| zeros_in_row(rows[k])).unwrap();
    let best_col = (0..cols.len()).max_by_key(|&k| zeros_in_col(cols[k])).unwrap();

    let mut acc = HomogPoly::zero(field, target);
    if zeros_in_row(rows[best_row]) >= zeros_in_col(cols[best_col]) {
        let r = rows[best_row];
        let sub_rows: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
        for (k, &c) in cols.iter().enumerate() {
            let Some(pivot) = &entries[r][c] else { continue };
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = det_rec(field, entries, &sub_rows, &sub_cols, row_degrees, col_degrees);
            let term = pivot.mul(&minor, field);
            acc = if (best_row + k) % 2 == 0 {
                acc.add(&term, field)
            } else {
                acc.sub(&term, field)
            };
        }
    } else {
        let c = cols[best_col];
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        for (k, &r) in rows.iter().enumerate() {
            let Some(pivot) = &entries[r][c] else { continue };
            let sub_rows: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
            let minor = det_rec(field, entries, &sub_rows, &sub_cols, row_degrees, col_degrees);
            let term = pivot.mul(&minor, field);
            acc = if (k + best_col) % 2 == 0 {
                acc.add(&term, field)
            } else {
                acc.sub(&term, field)
            };
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::rng::SplitMix64;

    fn fp() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn monomial_orders() {
        assert_eq!(monomials(0), vec![[0, 0, 0]]);
        assert_eq!(monomials(1), vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(monomials(2).len(), 6);
        for d in 0..8 {
            let list = monomials(d);
            assert_eq!(list.len() as i64, monomial_count(d));
            for (i, &e) in list.iter().enumerate() {
                assert_eq!(monomial_index(d, e), i);
            }
        }
    }

    #[test]
    fn product_of_variables() {
        let f = fp();
        let x1 = HomogPoly::monomial(&f, [0, 1, 0]);
        let x2 = HomogPoly::monomial(&f, [0, 0, 1]);
        let p = x1.mul(&x2, &f);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.text(&f), "x1*x2");
    }

    #[test]
    fn square_of_binomial() {
        let f = fp();
        let sum = HomogPoly::from_terms(&f, 1, &[(1, [0, 1, 0]), (1, [0, 0, 1])]);
        let sq = sum.mul(&sum, &f);
        let expected =
            HomogPoly::from_terms(&f, 2, &[(1, [0, 2, 0]), (2, [0, 1, 1]), (1, [0, 0, 2])]);
        assert_eq!(sq, expected);
        assert_eq!(sq.text(&f), "x2^2 + 2*x1*x2 + x1^2");
    }

    #[test]
    fn multiplying_by_zero_keeps_the_degree_slot() {
        let f = fp();
        let x0 = HomogPoly::monomial(&f, [1, 0, 0]);
        let zero3 = HomogPoly::zero(&f, 3);
        let p = x0.mul(&zero3, &f);
        assert_eq!(p.degree(), 4);
        assert!(p.is_zero(&f));
        assert_eq!(p.text(&f), "0");
    }

    #[test]
    fn mul_is_commutative_associative_and_degree_additive() {
        let f = fp();
        let mut rng = SplitMix64::new(11);
        for _ in 0..30 {
            let da = rng.range_i64(0, 3);
            let db = rng.range_i64(0, 3);
            let dc = rng.range_i64(0, 2);
            let rand_poly = |rng: &mut SplitMix64, d: i64| {
                let mut p = HomogPoly::zero(&f, d);
                for idx in 0..p.coeffs.len() {
                    p.coeffs[idx] = f.from_i64(rng.range_i64(-5, 5));
                }
                p
            };
            let a = rand_poly(&mut rng, da);
            let b = rand_poly(&mut rng, db);
            let c = rand_poly(&mut rng, dc);
            assert_eq!(a.mul(&b, &f), b.mul(&a, &f));
            assert_eq!(a.mul(&b, &f).mul(&c, &f), a.mul(&b.mul(&c, &f), &f));
            assert_eq!(a.mul(&b, &f).degree(), da + db);
        }
    }

    #[test]
    fn det_upper_triangular_2x2() {
        let f = fp();
        // [[x2, x1^3], [0, x2]] with row degrees (2, 4), column degrees (3, 5)
        let entries = vec![
            vec![
                Some(HomogPoly::monomial(&f, [0, 0, 1])),
                Some(HomogPoly::monomial(&f, [0, 3, 0])),
            ],
            vec![None, Some(HomogPoly::monomial(&f, [0, 0, 1]))],
        ];
        let d = det(&f, &entries, &[2, 4], &[3, 5]).unwrap();
        assert_eq!(d, HomogPoly::monomial(&f, [0, 0, 2]));
    }

    #[test]
    fn det_dense_2x2() {
        let f = fp();
        // [[x1, x0^3], [x2, x1^3]] -> x1^4 - x0^3*x2
        let entries = vec![
            vec![
                Some(HomogPoly::monomial(&f, [0, 1, 0])),
                Some(HomogPoly::monomial(&f, [3, 0, 0])),
            ],
            vec![
                Some(HomogPoly::monomial(&f, [0, 0, 1])),
                Some(HomogPoly::monomial(&f, [0, 3, 0])),
            ],
        ];
        let d = det(&f, &entries, &[2, 2], &[3, 5]).unwrap();
        let expected = HomogPoly::from_terms(&f, 4, &[(1, [0, 4, 0]), (-1, [3, 0, 1])]);
        assert_eq!(d, expected);
        assert_eq!(d.text(&f), "x1^4 - x0^3*x2");
    }

    #[test]
    fn det_1x1() {
        let f = fp();
        let entries = vec![vec![Some(HomogPoly::monomial(&f, [1, 0, 0]))]];
        let d = det(&f, &entries, &[0], &[1]).unwrap();
        assert_eq!(d.text(&f), "x0");
    }

    #[test]
    fn det_rejects_pattern_violations() {
        let f = fp();
        let entries = vec![
            vec![Some(HomogPoly::monomial(&f, [1, 0, 0])), None],
            vec![None, Some(HomogPoly::monomial(&f, [2, 0, 0]))],
        ];
        let e = det(&f, &entries, &[0, 0], &[1, 1]).unwrap_err();
        assert!(matches!(e, PolyError::DegreeMismatch { row: 1, col: 1, .. }));
    }

    #[test]
    fn det_is_alternating_and_linear_in_rows() {
        let f = fp();
        let mut rng = SplitMix64::new(23);
        for _ in 0..20 {
            let rand_lin = |rng: &mut SplitMix64| {
                Some(HomogPoly::from_terms(
                    &f,
                    1,
                    &[
                        (rng.range_i64(-4, 4), [1, 0, 0]),
                        (rng.range_i64(-4, 4), [0, 1, 0]),
                        (rng.range_i64(-4, 4), [0, 0, 1]),
                    ],
                ))
            };
            let mut m: Vec<Vec<Option<HomogPoly<PrimeField>>>> =
                (0..3).map(|_| (0..3).map(|_| rand_lin(&mut rng)).collect()).collect();
            let rdeg = [0, 0, 0];
            let cdeg = [1, 1, 1];
            let d0 = det(&f, &m, &rdeg, &cdeg).unwrap();

            // Swapping two rows negates.
            m.swap(0, 2);
            let d1 = det(&f, &m, &rdeg, &cdeg).unwrap();
            assert_eq!(d1, d0.neg(&f));
            m.swap(0, 2);

            // Scaling a row scales the determinant.
            let c = f.from_i64(3);
            let scaled: Vec<Option<HomogPoly<PrimeField>>> = m[1]
                .iter()
                .map(|e| e.as_ref().map(|p| p.scale(&c, &f)))
                .collect();
            let unscaled = std::mem::replace(&mut m[1], scaled);
            let d2 = det(&f, &m, &rdeg, &cdeg).unwrap();
            assert_eq!(d2, d0.scale(&c, &f));
            m[1] = unscaled;
        }
    }

    #[test]
    fn text_round_trips_through_parser() {
        let f = fp();
        let p = HomogPoly::from_terms(&f, 4, &[(1, [0, 4, 0]), (-1, [3, 0, 1])]);
        let parsed = parse_poly(&f, &p.text(&f)).unwrap();
        assert_eq!(parsed, p);

        let q = parse_poly(&f, "2*x0^2 - 3*x1*x2 + x2^2").unwrap();
        assert_eq!(q.degree(), 2);
        assert_eq!(*q.coeff([2, 0, 0]), f.from_i64(2));
        assert_eq!(*q.coeff([0, 1, 1]), f.from_i64(-3));

        let r = Rationals;
        let over_q = parse_poly(&r, "x1^4 - x0^3*x2").unwrap();
        assert_eq!(over_q.text(&r), "x1^4 - x0^3*x2");
    }

    #[test]
    fn parser_rejects_malformed_input() {
        let f = fp();
        assert!(parse_poly(&f, "").is_err());
        assert!(parse_poly(&f, "x3").is_err());
        assert!(parse_poly(&f, "x0 + x1^2").is_err()); // inhomogeneous
        assert!(parse_poly(&f, "x0 ++ x1").is_err());
        assert!(parse_poly(&f, "x0 *").is_err());
    }

    #[test]
    fn eval_at_points() {
        let f = fp();
        let p = HomogPoly::from_terms(&f, 4, &[(1, [0, 4, 0]), (-1, [3, 0, 1])]);
        let one = f.one();
        assert_eq!(p.eval(&[one, one, one], &f), f.from_i64(0));
        assert_eq!(
            p.eval(&[f.from_i64(2), f.from_i64(1), f.from_i64(1)], &f),
            f.from_i64(-7)
        );
    }
}
