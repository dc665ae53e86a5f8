//! Multigraded Hilbert functions and polynomials.
//!
//! The Hilbert polynomial of a filtration of total degree `d` is written in
//! the signed binomial basis
//!
//! ```text
//! P(n) = Σ_{|α| ≤ d} (−1)^{d−|α|} e_α · C(n_1+α_1−1, α_1) ⋯ C(n_s+α_s−1, α_s)
//! ```
//!
//! and fitted by exact interpolation on the principal lattice
//! `{offset + β : |β| ≤ d}`, which is unisolvent for total degree `d`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FiltrationError, FitError};
use crate::filtration::{Filtration, FiltrationSpec};
use crate::index::{GridBox, MultiIndex};
use crate::staircase::colength;
use crate::upward::{Certification, UpwardClosedSet};

/// `H(n) = λ(R/F(n))`.
pub fn hilbert_value(f: &Filtration, n: &MultiIndex) -> Result<u64, FiltrationError> {
    let ideal = f.evaluate(n)?;
    Ok(colength(&ideal)?)
}

/// Exact colengths over a box, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertTable {
    pub spec: FiltrationSpec,
    #[serde(rename = "box")]
    pub grid: GridBox,
    pub values: Vec<u64>,
}

impl HilbertTable {
    pub fn get(&self, n: &MultiIndex) -> Option<u64> {
        self.grid.linear_index(n).map(|i| self.values[i])
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.grid.arity() != self.spec.grading_rank() {
            return Err("box arity differs from the grading rank".into());
        }
        if self.values.len() != self.grid.len() {
            return Err(format!(
                "expected {} values, found {}",
                self.grid.len(),
                self.values.len()
            ));
        }
        Ok(())
    }
}

pub fn hilbert_function(f: &Filtration, grid: &GridBox) -> Result<HilbertTable, FiltrationError> {
    let values = evaluate_on(f, &grid.points().collect::<Vec<_>>())?;
    Ok(HilbertTable {
        spec: f.spec().clone(),
        grid: grid.clone(),
        values,
    })
}

fn evaluate_on(f: &Filtration, points: &[MultiIndex]) -> Result<Vec<u64>, FiltrationError> {
    points.par_iter().map(|n| hilbert_value(f, n)).collect()
}

/// Generalized binomial coefficient `C(x, k)` for any integer `x`.
pub fn binomial(x: i128, k: u32) -> i128 {
    let mut r: i128 = 1;
    for i in 0..k as i128 {
        r = r * (x - i) / (i + 1);
    }
    r
}

/// All `α ∈ ℕ^s` with `|α| ≤ degree`, sorted.
pub fn basis_exponents(s: usize, degree: usize) -> Vec<MultiIndex> {
    fn rec(s: usize, left: i64, prefix: &mut Vec<i64>, out: &mut Vec<MultiIndex>) {
        if prefix.len() == s {
            out.push(MultiIndex::from_slice(prefix));
            return;
        }
        for a in 0..=left {
            prefix.push(a);
            rec(s, left - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(s, degree as i64, &mut Vec::with_capacity(s), &mut out);
    out.sort();
    out
}

/// `∏ C(n_i + α_i − 1, α_i)`.
pub fn basis_value(alpha: &MultiIndex, n: &MultiIndex) -> i128 {
    alpha
        .iter()
        .zip(n.iter())
        .map(|(a, x)| binomial(x as i128 + a as i128 - 1, a as u32))
        .product()
}

fn sign(degree: usize, alpha: &MultiIndex) -> i128 {
    if (degree as i64 - alpha.total()) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Where a polynomial was fitted and how far it was verified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitRecord {
    pub offset: MultiIndex,
    pub margin: i64,
}

/// A numerical polynomial in the signed binomial basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PolyRepr", into = "PolyRepr")]
pub struct HilbertPolynomial {
    s: usize,
    degree: usize,
    coeffs: BTreeMap<MultiIndex, i64>,
    fit: Option<FitRecord>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    s: usize,
    d: usize,
    coefficients: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    fit: Option<FitRecord>,
}

impl From<HilbertPolynomial> for PolyRepr {
    fn from(p: HilbertPolynomial) -> Self {
        PolyRepr {
            s: p.s,
            d: p.degree,
            coefficients: p.coeffs.iter().map(|(a, c)| (a.to_key(), *c)).collect(),
            fit: p.fit,
        }
    }
}

impl TryFrom<PolyRepr> for HilbertPolynomial {
    type Error = String;
    fn try_from(r: PolyRepr) -> Result<Self, String> {
        let mut coeffs = BTreeMap::new();
        for (k, c) in r.coefficients {
            let alpha = MultiIndex::parse_list(&k)?;
            if alpha.arity() != r.s || alpha.has_negative() || alpha.total() > r.d as i64 {
                return Err(format!("invalid exponent key {k:?}"));
            }
            coeffs.insert(alpha, c);
        }
        HilbertPolynomial::new(r.s, r.d, coeffs, r.fit)
    }
}

impl HilbertPolynomial {
    /// Missing coefficients are zero.
    pub fn new(
        s: usize,
        degree: usize,
        mut coeffs: BTreeMap<MultiIndex, i64>,
        fit: Option<FitRecord>,
    ) -> Result<Self, String> {
        if s == 0 {
            return Err("arity must be positive".into());
        }
        for alpha in basis_exponents(s, degree) {
            coeffs.entry(alpha).or_insert(0);
        }
        if coeffs.len() != basis_exponents(s, degree).len() {
            return Err("coefficient outside the basis".into());
        }
        Ok(HilbertPolynomial {
            s,
            degree,
            coeffs,
            fit,
        })
    }

    pub fn arity(&self) -> usize {
        self.s
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &BTreeMap<MultiIndex, i64> {
        &self.coeffs
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> i64 {
        self.coeffs.get(alpha).copied().unwrap_or(0)
    }

    pub fn fit_record(&self) -> Option<&FitRecord> {
        self.fit.as_ref()
    }

    pub fn evaluate(&self, n: &MultiIndex) -> i128 {
        assert_eq!(n.arity(), self.s, "evaluation point has the wrong arity");
        self.coeffs
            .iter()
            .filter(|(_, &c)| c != 0)
            .map(|(alpha, &c)| sign(self.degree, alpha) * c as i128 * basis_value(alpha, n))
            .sum()
    }

    /// `e_α` for `|α| = d`.
    pub fn top_coefficients(&self) -> BTreeMap<MultiIndex, i64> {
        self.coeffs
            .iter()
            .filter(|(a, _)| a.total() == self.degree as i64)
            .map(|(a, c)| (a.clone(), *c))
            .collect()
    }

    /// Classical Hilbert–Samuel coefficients `e_0, …, e_d` (single grading only).
    pub fn hilbert_samuel_coefficients(&self) -> Option<Vec<i64>> {
        if self.s != 1 {
            return None;
        }
        Some(
            (0..=self.degree)
                .map(|i| self.coefficient(&MultiIndex::from([(self.degree - i) as i64])))
                .collect(),
        )
    }

    /// Renders e.g. `4C(r+1,2)+4C(s+1,2)+4rs-r-s`.
    pub fn formula(&self) -> String {
        let names = grading_names(self.s);
        let joiner = if names.iter().all(|n| n.chars().count() == 1) {
            ""
        } else {
            "*"
        };
        let mut terms: Vec<(&MultiIndex, i128)> = self
            .coeffs
            .iter()
            .filter(|(_, &c)| c != 0)
            .map(|(a, &c)| (a, sign(self.degree, a) * c as i128))
            .collect();
        terms.sort_by(|(a, _), (b, _)| {
            let support = |x: &MultiIndex| x.iter().filter(|&v| v > 0).count();
            b.total()
                .cmp(&a.total())
                .then(support(a).cmp(&support(b)))
                .then(b.cmp(a))
        });
        let mut out = String::new();
        for (alpha, c) in terms {
            let factors: Vec<String> = alpha
                .iter()
                .zip(&names)
                .filter(|(a, _)| *a > 0)
                .map(|(a, name)| {
                    if a == 1 {
                        name.clone()
                    } else {
                        format!("C({name}+{},{a})", a - 1)
                    }
                })
                .collect();
            let body = factors.join(joiner);
            let term = match (body.is_empty(), c) {
                (true, _) => c.to_string(),
                (false, 1) => body,
                (false, -1) => format!("-{body}"),
                (false, _) => format!("{c}{body}"),
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            out.push('0');
        }
        let args = names.join(",");
        let mut full = String::new();
        let _ = write!(full, "P({args})={out}");
        full
    }
}

/// Names of the grading variables used when printing polynomials.
pub fn grading_names(s: usize) -> Vec<String> {
    match s {
        1 => vec!["n".into()],
        2 => vec!["r".into(), "s".into()],
        3 => vec!["r".into(), "s".into(), "t".into()],
        _ => (1..=s).map(|i| format!("n{i}")).collect(),
    }
}

/// Default fitting offset `(r + d + 1)·e` for a stabilization bound `r`.
pub fn default_fit_offset(s: usize, d: usize, stabilization: Option<&MultiIndex>) -> MultiIndex {
    let r = stabilization
        .map(|b| b.iter().max().unwrap_or(0))
        .unwrap_or(0);
    MultiIndex::splat(s, r + d as i64 + 1)
}

/// Points used by [`fit_numerical_polynomial`]: the interpolation lattice
/// followed by the two verification grids.
fn fit_points(
    s: usize,
    degree: usize,
    offset: &MultiIndex,
    margin: i64,
) -> (Vec<MultiIndex>, Vec<MultiIndex>) {
    let interp: Vec<MultiIndex> = basis_exponents(s, degree)
        .iter()
        .map(|b| offset + b)
        .collect();
    let side = degree as i64 + 1;
    let first = GridBox::new(offset.clone(), offset.shift_all(side));
    let shifted_lo = offset.shift_all(margin);
    let second = GridBox::new(shifted_lo.clone(), shifted_lo.shift_all(side));
    let mut verify: Vec<MultiIndex> = first.points().collect();
    verify.extend(second.points());
    (interp, verify)
}

/// Fits a numerical polynomial of total degree `degree` to `values`.
///
/// Interpolates on `{offset + β : |β| ≤ degree}`, then checks the result on
/// the product grids `[offset, offset + (degree+1)e]` and
/// `[offset + margin·e, offset + (margin+degree+1)e]`.
pub fn fit_numerical_polynomial<F>(
    s: usize,
    degree: usize,
    offset: &MultiIndex,
    margin: i64,
    mut values: F,
) -> Result<HilbertPolynomial, FitError>
where
    F: FnMut(&MultiIndex) -> Result<i128, FitError>,
{
    let alphas = basis_exponents(s, degree);
    let (interp, verify) = fit_points(s, degree, offset, margin);
    let size = alphas.len();

    let mut matrix: Vec<Vec<BigRational>> = Vec::with_capacity(size);
    for p in &interp {
        let mut row: Vec<BigRational> = alphas
            .iter()
            .map(|a| BigRational::from_integer(BigInt::from(sign(degree, a) * basis_value(a, p))))
            .collect();
        row.push(BigRational::from_integer(BigInt::from(values(p)?)));
        matrix.push(row);
    }
    let solution = solve(matrix, size).ok_or(FitError::Singular)?;

    let mut coeffs = BTreeMap::new();
    for (alpha, value) in alphas.iter().zip(solution) {
        if !value.is_integer() {
            return Err(FitError::NonIntegral {
                alpha: alpha.clone(),
                value: value.to_string(),
            });
        }
        let c = value.to_integer().to_i64().ok_or(FitError::Overflow)?;
        coeffs.insert(alpha.clone(), c);
    }
    let poly = HilbertPolynomial::new(
        s,
        degree,
        coeffs,
        Some(FitRecord {
            offset: offset.clone(),
            margin,
        }),
    )
    .map_err(|_| FitError::Singular)?;

    for p in &verify {
        let expected = values(p)?;
        let got = poly.evaluate(p);
        if got != expected {
            return Err(FitError::VerificationFailed {
                at: p.clone(),
                polynomial: got,
                hilbert: expected,
            });
        }
    }
    if poly.top_coefficients().values().all(|&c| c == 0) {
        return Err(FitError::DegreeDeficient(degree));
    }
    Ok(poly)
}

/// Gauss–Jordan elimination on an augmented square system.
fn solve(mut m: Vec<Vec<BigRational>>, n: usize) -> Option<Vec<BigRational>> {
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v /= &p;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
    }
    debug_assert!(m.iter().enumerate().all(|(r, row)| row[r].is_one()));
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

fn tabulate(
    f: &Filtration,
    points: impl IntoIterator<Item = MultiIndex>,
) -> Result<HashMap<MultiIndex, u64>, FiltrationError> {
    let pts: Vec<MultiIndex> = points.into_iter().collect();
    let vals = evaluate_on(f, &pts)?;
    Ok(pts.into_iter().zip(vals).collect())
}

/// Fits the Hilbert polynomial of `f` (total degree `d`).
pub fn fit_polynomial(
    f: &Filtration,
    offset: &MultiIndex,
    margin: i64,
) -> Result<HilbertPolynomial, FitError> {
    let s = f.grading_rank();
    let d = f.ambient_dim();
    let (interp, verify) = fit_points(s, d, offset, margin);
    let table = tabulate(f, interp.into_iter().chain(verify))?;
    fit_numerical_polynomial(s, d, offset, margin, |n| Ok(table[n] as i128))
}

/// Retries [`fit_polynomial`] with offsets `start, start + e, …` until
/// the fit verifies or `max_tries` offsets have failed.
pub fn fit_polynomial_from(
    f: &Filtration,
    start: &MultiIndex,
    margin: i64,
    max_tries: usize,
) -> Result<HilbertPolynomial, FitError> {
    let mut last = None;
    for k in 0..max_tries.max(1) {
        match fit_polynomial(f, &start.shift_all(k as i64), margin) {
            Ok(p) => return Ok(p),
            Err(e @ (FitError::VerificationFailed { .. } | FitError::NonIntegral { .. })) => {
                last = Some(e)
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// The mixed multiplicities `e_α`, `|α| = d`; each must be positive.
pub fn mixed_multiplicities(p: &HilbertPolynomial) -> Result<BTreeMap<MultiIndex, i64>, FitError> {
    let top = p.top_coefficients();
    for (alpha, &value) in &top {
        if value <= 0 {
            return Err(FitError::NonPositiveMultiplicity {
                alpha: alpha.clone(),
                value,
            });
        }
    }
    Ok(top)
}

/// Fits `n ↦ λ(F(n)/F(n+e)) = H(n+e) − H(n)` with total degree `d − 1`.
pub fn graded_difference_polynomial(
    f: &Filtration,
    offset: &MultiIndex,
    margin: i64,
) -> Result<HilbertPolynomial, FitError> {
    let s = f.grading_rank();
    let d = f.ambient_dim();
    if d == 0 {
        return Err(FitError::DegreeDeficient(0));
    }
    let (interp, verify) = fit_points(s, d - 1, offset, margin);
    let needed: Vec<MultiIndex> = interp
        .iter()
        .chain(verify.iter())
        .flat_map(|n| [n.clone(), n.shift_all(1)])
        .collect();
    let table = tabulate(f, needed)?;
    fit_numerical_polynomial(s, d - 1, offset, margin, |n| {
        Ok(table[&n.shift_all(1)] as i128 - table[n] as i128)
    })
}

/// `D(n) = P(n) − H(n)` over `grid`, row-major.
pub fn difference_table(
    f: &Filtration,
    p: &HilbertPolynomial,
    grid: &GridBox,
) -> Result<Vec<i128>, FiltrationError> {
    let points: Vec<MultiIndex> = grid.points().collect();
    let h = evaluate_on(f, &points)?;
    Ok(points
        .iter()
        .zip(h)
        .map(|(n, hv)| p.evaluate(n) - hv as i128)
        .collect())
}

/// Postulation vectors visible from `grid`: the `n` such that `P = H` on
/// the whole cone above `n` within `grid` grown by `margin`.
pub fn postulation_set(
    f: &Filtration,
    p: &HilbertPolynomial,
    grid: &GridBox,
    margin: i64,
) -> Result<UpwardClosedSet, FiltrationError> {
    let scan = grid.extend_upper(margin.max(0));
    let diff = difference_table(f, p, &scan)?;
    let holds: Vec<bool> = diff.iter().map(|&v| v == 0).collect();
    Ok(UpwardClosedSet::from_scan(
        grid.clone(),
        &scan,
        &holds,
        Certification::Heuristic {
            margin: margin.max(0),
        },
    ))
}

/// Single-graded postulation number over a box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostulationNumber {
    /// Largest `n` in the box with `P(n) ≠ H(n)`; `None` stands for −∞.
    pub value: Option<i64>,
    /// `P ≠ H` at the top of the box, so the box is too small to conclude.
    pub box_too_small: bool,
}

pub fn postulation_number(
    f: &Filtration,
    p: &HilbertPolynomial,
    lo: i64,
    hi: i64,
) -> Result<PostulationNumber, FiltrationError> {
    assert_eq!(f.grading_rank(), 1, "postulation numbers are single-graded");
    let grid = GridBox::new(MultiIndex::from([lo]), MultiIndex::from([hi]));
    let diff = difference_table(f, p, &grid)?;
    let value = diff.iter().rposition(|&v| v != 0).map(|i| lo + i as i64);
    Ok(PostulationNumber {
        value,
        box_too_small: value == Some(hi),
    })
}
