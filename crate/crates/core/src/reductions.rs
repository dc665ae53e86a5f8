//! Complete and joint reductions with monomial data.
//!
//! A complete reduction is an `s×d` matrix `(a_ij)` with `a_ij ∈ I_i`; its
//! column products `y_j = a_1j⋯a_sj` must satisfy `(y)F(n) = F(n+e)` for all
//! large `n`. Reduction vectors are found by scanning a box; the tail past
//! the box follows from stabilization: if `(y)F(n) = F(n+e)` and
//! `F(m+e_i) = I_i F(m)` for `m ∈ {n, n+e}`, then
//! `(y)F(n+e_i) = I_i (y)F(n) = I_i F(n+e) = F(n+e+e_i)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FiltrationError, ReductionError};
use crate::filtration::{Filtration, StabilizationCertificate};
use crate::index::{GridBox, MultiIndex};
use crate::monomial::{default_variable_names, Monomial, MonomialIdeal};
use crate::upward::{Certification, UpwardClosedSet};

/// An `s×d` matrix of monomials with `a_ij ∈ I_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CandidateRepr", into = "CandidateRepr")]
pub struct CompleteReductionCandidate {
    matrix: Vec<Vec<Monomial>>,
}

#[derive(Serialize, Deserialize)]
struct CandidateRepr {
    matrix: Vec<Vec<Monomial>>,
    #[serde(default, skip_deserializing)]
    y: Vec<Monomial>,
}

impl From<CompleteReductionCandidate> for CandidateRepr {
    fn from(c: CompleteReductionCandidate) -> Self {
        let y = c.ys();
        CandidateRepr {
            matrix: c.matrix,
            y,
        }
    }
}

impl TryFrom<CandidateRepr> for CompleteReductionCandidate {
    type Error = String;
    fn try_from(r: CandidateRepr) -> Result<Self, String> {
        CompleteReductionCandidate::from_matrix(r.matrix).map_err(|e| e.to_string())
    }
}

impl CompleteReductionCandidate {
    /// Shape checks only; use [`CompleteReductionCandidate::new`] to also
    /// check membership against a filtration.
    pub fn from_matrix(matrix: Vec<Vec<Monomial>>) -> Result<Self, ReductionError> {
        let s = matrix.len();
        if s == 0 {
            return Err(ReductionError::Shape("matrix has no rows".into()));
        }
        let d = matrix[0].len();
        if d == 0 {
            return Err(ReductionError::Shape("matrix has no columns".into()));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != d {
                return Err(ReductionError::Shape(format!(
                    "row {i} has {} entries, expected {d}",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|m| m.dim() != d) {
                return Err(ReductionError::Shape(format!(
                    "entry {:?} in row {i} is not in {d} variables",
                    bad.exponents()
                )));
            }
        }
        Ok(CompleteReductionCandidate { matrix })
    }

    /// Checks the shape against `f` and that `a_ij ∈ I_i` for every entry.
    pub fn new(f: &Filtration, matrix: Vec<Vec<Monomial>>) -> Result<Self, ReductionError> {
        let c = Self::from_matrix(matrix)?;
        c.validate_against(f)?;
        Ok(c)
    }

    pub fn validate_against(&self, f: &Filtration) -> Result<(), ReductionError> {
        if self.rows() != f.grading_rank() || self.cols() != f.ambient_dim() {
            return Err(ReductionError::Shape(format!(
                "expected a {}×{} matrix, found {}×{}",
                f.grading_rank(),
                f.ambient_dim(),
                self.rows(),
                self.cols()
            )));
        }
        let names = default_variable_names(self.cols());
        for (i, row) in self.matrix.iter().enumerate() {
            for a in row {
                if !f.ideal(i).contains_monomial(a) {
                    return Err(ReductionError::NotInIdeal {
                        row: i,
                        entry: a.display_with(&names).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix[0].len()
    }

    pub fn matrix(&self) -> &[Vec<Monomial>] {
        &self.matrix
    }

    /// Column products `y_j`.
    pub fn ys(&self) -> Vec<Monomial> {
        (0..self.cols())
            .map(|j| {
                let mut exps = vec![0u32; self.cols()];
                for row in &self.matrix {
                    for (e, &x) in exps.iter_mut().zip(row[j].exponents()) {
                        *e = e.saturating_add(x);
                    }
                }
                Monomial::new(exps)
            })
            .collect()
    }

    /// The ideal `(y_1, …, y_d)`.
    pub fn y_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.cols(), self.ys()).expect("columns share the dimension")
    }
}

/// `(y)·F(n) = F(n + e)`, evaluated at `n⁺`.
pub fn check_complete_reduction_at(
    f: &Filtration,
    cand: &CompleteReductionCandidate,
    n: &MultiIndex,
) -> Result<bool, ReductionError> {
    check_with_ideal(f, &cand.y_ideal(), n)
}

fn check_with_ideal(
    f: &Filtration,
    y: &MonomialIdeal,
    n: &MultiIndex,
) -> Result<bool, ReductionError> {
    let n = n.plus_part();
    let here = f.evaluate(&n)?;
    let lhs = y.product(&here).map_err(FiltrationError::from)?;
    let rhs = f.evaluate(&n.shift_all(1))?;
    Ok(lhs == *rhs)
}

/// A stabilization certificate over `[0, hi]`, if one exists there.
pub fn stabilization_certificate(
    f: &Filtration,
    hi: &MultiIndex,
) -> Option<StabilizationCertificate> {
    f.stabilization_bounds(hi).ok()
}

/// Complete reduction vectors of `cand` visible in `[0, hi]`.
///
/// The result is `Certified` when `F` stabilizes inside the box, and
/// `Heuristic { margin: 0 }` otherwise. An empty set means the candidate is
/// not a complete reduction within the box.
pub fn reduction_vector_set(
    f: &Filtration,
    cand: &CompleteReductionCandidate,
    hi: &MultiIndex,
) -> Result<UpwardClosedSet, ReductionError> {
    let cert = stabilization_certificate(f, hi);
    reduction_vector_set_with(f, cand, hi, cert)
}

pub fn reduction_vector_set_with(
    f: &Filtration,
    cand: &CompleteReductionCandidate,
    hi: &MultiIndex,
    cert: Option<StabilizationCertificate>,
) -> Result<UpwardClosedSet, ReductionError> {
    cand.validate_against(f)?;
    let grid = GridBox::up_to(hi.clone());
    let holds = reduction_scan(f, &cand.y_ideal(), &grid)?;
    let certification = match cert {
        Some(c) if hi.dominates(&c.bounds) => Certification::Certified(c),
        _ => Certification::Heuristic { margin: 0 },
    };
    Ok(UpwardClosedSet::from_scan(
        grid.clone(),
        &grid,
        &holds,
        certification,
    ))
}

fn reduction_scan(
    f: &Filtration,
    y: &MonomialIdeal,
    grid: &GridBox,
) -> Result<Vec<bool>, ReductionError> {
    let points: Vec<MultiIndex> = grid.points().collect();
    points
        .par_iter()
        .map(|n| check_with_ideal(f, y, n))
        .collect()
}

/// A joint reduction of type `q`: `q_i` elements of `I_i`, `|q| = d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JointReductionCandidate {
    pub q: MultiIndex,
    pub elements: Vec<Vec<Monomial>>,
}

impl JointReductionCandidate {
    pub fn new(f: &Filtration, elements: Vec<Vec<Monomial>>) -> Result<Self, ReductionError> {
        if elements.len() != f.grading_rank() {
            return Err(ReductionError::Shape(format!(
                "expected {} rows, found {}",
                f.grading_rank(),
                elements.len()
            )));
        }
        let q = MultiIndex::new(elements.iter().map(|r| r.len() as i64).collect::<Vec<_>>());
        if q.total() != f.ambient_dim() as i64 {
            return Err(ReductionError::Shape(format!(
                "type {q} must have total {}",
                f.ambient_dim()
            )));
        }
        let names = default_variable_names(f.ambient_dim());
        for (i, row) in elements.iter().enumerate() {
            for a in row {
                if a.dim() != f.ambient_dim() || !f.ideal(i).contains_monomial(a) {
                    return Err(ReductionError::NotInIdeal {
                        row: i,
                        entry: if a.dim() == f.ambient_dim() {
                            a.display_with(&names).to_string()
                        } else {
                            format!("{:?}", a.exponents())
                        },
                    });
                }
            }
        }
        Ok(JointReductionCandidate { q, elements })
    }
}

/// `Σ_i (a_i1, …, a_iq_i)·F(n − e_i) = F(n)`, with every argument taken at `⁺`.
pub fn check_joint_reduction_at(
    f: &Filtration,
    cand: &JointReductionCandidate,
    n: &MultiIndex,
) -> Result<bool, ReductionError> {
    let d = f.ambient_dim();
    let mut sum = MonomialIdeal::zero(d);
    for (i, row) in cand.elements.iter().enumerate() {
        if row.is_empty() {
            continue;
        }
        let below = f.evaluate(&n.offset(i, -1))?;
        let part = below.times_monomials(row).map_err(FiltrationError::from)?;
        sum = sum.sum(&part).map_err(FiltrationError::from)?;
    }
    Ok(sum == *f.evaluate(n)?)
}

/// Outcome of [`nakayama_descent_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NakayamaReport {
    pub y: Vec<Monomial>,
    #[serde(rename = "box")]
    pub grid: GridBox,
    pub checked: usize,
    /// Points where `(y)F(n − e) = F(n)`.
    pub descents: Vec<MultiIndex>,
    /// Points where the two sides of the biconditional disagree.
    pub violations: Vec<MultiIndex>,
}

impl NakayamaReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.checked != self.grid.len() {
            return Err("checked count differs from the box size".into());
        }
        for n in self.descents.iter().chain(&self.violations) {
            if !self.grid.contains(n) {
                return Err(format!("{n} lies outside {}", self.grid));
            }
        }
        Ok(())
    }
}

/// For each `n` in `grid`, compares
/// `(y)F(n−e) + F(n+e) = F(n)` with `(y)F(n−e) = F(n)`.
pub fn nakayama_descent_check(
    f: &Filtration,
    y: &[Monomial],
    grid: &GridBox,
) -> Result<NakayamaReport, ReductionError> {
    let d = f.ambient_dim();
    if let Some(bad) = y.iter().find(|m| m.dim() != d) {
        return Err(ReductionError::Shape(format!(
            "{:?} is not in {d} variables",
            bad.exponents()
        )));
    }
    let yi = MonomialIdeal::new(d, y.to_vec()).map_err(FiltrationError::from)?;
    let points: Vec<MultiIndex> = grid.points().collect();
    let outcomes: Vec<(bool, bool)> = points
        .par_iter()
        .map(|n| -> Result<(bool, bool), ReductionError> {
            let here = f.evaluate(n)?;
            let below = f.evaluate(&n.shift_all(-1))?;
            let above = f.evaluate(&n.shift_all(1))?;
            let descended = yi.product(&below).map_err(FiltrationError::from)?;
            let with_tail = descended.sum(&above).map_err(FiltrationError::from)?;
            Ok((with_tail == *here, descended == *here))
        })
        .collect::<Result<_, _>>()?;
    let mut descents = Vec::new();
    let mut violations = Vec::new();
    for (n, (lhs, rhs)) in points.into_iter().zip(outcomes) {
        if rhs {
            descents.push(n.clone());
        }
        if lhs != rhs {
            violations.push(n);
        }
    }
    Ok(NakayamaReport {
        y: y.to_vec(),
        grid: grid.clone(),
        checked: grid.len(),
        descents,
        violations,
    })
}

/// Limits for [`search_complete_reductions`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Largest total degree allowed for any `y_j`.
    pub degree_bound: u64,
    /// Scan box `[0, hi]` used to decide whether a candidate reduces.
    pub hi: MultiIndex,
    /// Candidates examined before giving up.
    pub cap: usize,
}

impl SearchOptions {
    pub fn new(s: usize, degree_bound: u64) -> Self {
        SearchOptions {
            degree_bound,
            hi: MultiIndex::splat(s, 4),
            cap: 256,
        }
    }
}

/// A candidate found by the search, with its reduction vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    pub candidate: CompleteReductionCandidate,
    pub reductions: UpwardClosedSet,
}

/// Monomial complete reductions with every `deg y_j ≤ degree_bound`.
///
/// `F(n+e)` is m-primary, so `(y)` must be too, and `d` monomials generate
/// an m-primary ideal only when they are powers of distinct variables.
/// Column `j` is therefore `(x_j^{c_1j}, …, x_j^{c_sj})` with `x_j^{c_ij} ∈ I_i`.
/// Among matrices sharing a y-tuple the one putting all surplus degree in
/// the last row is kept. Candidates are tried by ascending `Σ deg y_j`, then
/// lexicographically.
pub fn search_complete_reductions(
    f: &Filtration,
    opts: &SearchOptions,
) -> Result<Vec<SearchHit>, ReductionError> {
    let s = f.grading_rank();
    let d = f.ambient_dim();
    let pure: Vec<Vec<u32>> = (0..s)
        .map(|i| f.ideal(i).pure_power_exponents())
        .collect::<Result<_, _>>()
        .map_err(FiltrationError::from)?;
    let floor: Vec<u64> = (0..d)
        .map(|j| pure.iter().map(|row| row[j] as u64).sum())
        .collect();
    if floor.iter().any(|&m| m > opts.degree_bound) {
        return Ok(Vec::new());
    }

    let mut tuples: Vec<Vec<u64>> = vec![Vec::new()];
    for &lo in &floor {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (lo..=opts.degree_bound).map(move |c| {
                    let mut next = t.clone();
                    next.push(c);
                    next
                })
            })
            .collect();
    }
    tuples.sort_by(|a, b| {
        a.iter()
            .sum::<u64>()
            .cmp(&b.iter().sum::<u64>())
            .then_with(|| a.cmp(b))
    });

    let cert = stabilization_certificate(f, &opts.hi);
    let mut hits = Vec::new();
    for t in tuples.into_iter().take(opts.cap) {
        let matrix: Vec<Vec<Monomial>> = (0..s)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let c = if i + 1 == s {
                            t[j] - floor[j] + pure[i][j] as u64
                        } else {
                            pure[i][j] as u64
                        };
                        Monomial::pure_power(d, j, c as u32)
                    })
                    .collect()
            })
            .collect();
        let candidate = CompleteReductionCandidate::new(f, matrix)?;
        let reductions = reduction_vector_set_with(f, &candidate, &opts.hi, cert.clone())?;
        if !reductions.is_empty() {
            hits.push(SearchHit {
                candidate,
                reductions,
            });
        }
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::FiltrationSpec;

    fn powers(ideals: &[&str], d: usize) -> Filtration {
        let ideals = ideals
            .iter()
            .map(|t| MonomialIdeal::parse(t, d).unwrap())
            .collect();
        Filtration::new(FiltrationSpec::powers(ideals).unwrap())
    }

    fn example1() -> Filtration {
        powers(&["X + Y + Z", "X^2 + X*Y + X*Z + Y^2 + Y*Z + Z^2"], 3)
    }

    fn example2() -> Filtration {
        powers(&["X^2 + X*Y + Y^2", "X^2 + Y^2"], 2)
    }

    fn pp(d: usize, axis: usize, k: u32) -> Monomial {
        Monomial::pure_power(d, axis, k)
    }

    fn candidate(f: &Filtration, rows: &[&[u32]]) -> CompleteReductionCandidate {
        let d = f.ambient_dim();
        let matrix = rows
            .iter()
            .map(|r| r.iter().enumerate().map(|(j, &k)| pp(d, j, k)).collect())
            .collect();
        CompleteReductionCandidate::new(f, matrix).unwrap()
    }

    #[test]
    fn example2_checks() {
        let f = example2();
        let c = candidate(&f, &[&[2, 2], &[2, 2]]);
        assert_eq!(c.ys(), vec![pp(2, 0, 4), pp(2, 1, 4)]);
        assert!(check_complete_reduction_at(&f, &c, &MultiIndex::from([1, 1])).unwrap());
        assert!(!check_complete_reduction_at(&f, &c, &MultiIndex::from([0, 0])).unwrap());
        let set = reduction_vector_set(&f, &c, &MultiIndex::from([5, 5])).unwrap();
        assert!(set.is_certified());
        assert_eq!(
            set.minimal_elements,
            vec![MultiIndex::from([1, 1]), MultiIndex::from([2, 0])]
        );
    }

    #[test]
    fn example1_checks() {
        let f = example1();
        let c = candidate(&f, &[&[1, 1, 1], &[2, 2, 2]]);
        assert!(check_complete_reduction_at(&f, &c, &MultiIndex::from([2, 2])).unwrap());
        let set = reduction_vector_set(&f, &c, &MultiIndex::from([4, 4])).unwrap();
        assert!(set.contains(&MultiIndex::from([2, 2])));
        // (X^3,Y^3,Z^3)·m^k = m^{k+3} iff k ≥ 4
        assert_eq!(
            set.minimal_elements,
            vec![
                MultiIndex::from([0, 2]),
                MultiIndex::from([2, 1]),
                MultiIndex::from([4, 0])
            ]
        );
    }

    #[test]
    fn entries_must_lie_in_their_ideal() {
        let f = example2();
        let bad = vec![
            vec![pp(2, 0, 1), pp(2, 1, 2)],
            vec![pp(2, 0, 2), pp(2, 1, 2)],
        ];
        assert!(matches!(
            CompleteReductionCandidate::new(&f, bad),
            Err(ReductionError::NotInIdeal { row: 0, .. })
        ));
        let one = vec![
            vec![Monomial::one(2), pp(2, 1, 2)],
            vec![pp(2, 0, 2), pp(2, 1, 2)],
        ];
        assert!(CompleteReductionCandidate::new(&f, one).is_err());
        assert!(CompleteReductionCandidate::new(&f, vec![vec![pp(2, 0, 2)]]).is_err());
    }

    #[test]
    fn joint_reduction_examples() {
        let f = powers(&["X^2 + X*Y + Y^2"], 2);
        let j = JointReductionCandidate::new(&f, vec![vec![pp(2, 0, 2), pp(2, 1, 2)]]).unwrap();
        assert!(check_joint_reduction_at(&f, &j, &MultiIndex::from([2])).unwrap());
        assert!(!check_joint_reduction_at(&f, &j, &MultiIndex::from([1])).unwrap());

        let m = powers(&["X + Y"], 2);
        let j = JointReductionCandidate::new(&m, vec![vec![pp(2, 0, 1), pp(2, 1, 1)]]).unwrap();
        assert!(check_joint_reduction_at(&m, &j, &MultiIndex::from([1])).unwrap());

        let e1 = example1();
        let j = JointReductionCandidate::new(
            &e1,
            vec![vec![pp(3, 0, 1), pp(3, 1, 1), pp(3, 2, 1)], vec![]],
        )
        .unwrap();
        assert_eq!(j.q, MultiIndex::from([3, 0]));
        assert!(check_joint_reduction_at(&e1, &j, &MultiIndex::from([1, 0])).unwrap());

        assert!(JointReductionCandidate::new(&e1, vec![vec![pp(3, 0, 1)], vec![]]).is_err());
    }

    #[test]
    fn nakayama_clean_on_powers() {
        let f = example2();
        let y = vec![pp(2, 0, 4), pp(2, 1, 4)];
        let grid = GridBox::new(MultiIndex::from([1, 1]), MultiIndex::from([5, 5]));
        let r = nakayama_descent_check(&f, &y, &grid).unwrap();
        assert!(r.is_clean());
        assert!(r.descents.contains(&MultiIndex::from([2, 2])));
        r.validate().unwrap();

        // boundary points route through (n − e)⁺
        let r = nakayama_descent_check(&f, &y, &GridBox::up_to(MultiIndex::from([3, 3]))).unwrap();
        assert!(r.is_clean());
    }

    #[test]
    fn nakayama_detects_non_admissible_table() {
        // F = R, m, m, m, m^3: I·F(3) ⊄ F(4), and F(3) ⊄ m·F(2)
        let m = MonomialIdeal::maximal(2);
        let spec =
            FiltrationSpec::user_table(vec![m.clone()], MultiIndex::from([4]), |n| match n[0] {
                0 => MonomialIdeal::unit(2),
                4 => m.power(3).unwrap(),
                _ => m.clone(),
            })
            .unwrap();
        let f = Filtration::new(spec);
        let y = vec![pp(2, 0, 1), pp(2, 1, 1)];
        let r = nakayama_descent_check(&f, &y, &GridBox::up_to(MultiIndex::from([6]))).unwrap();
        assert_eq!(r.violations, vec![MultiIndex::from([2])]);
    }

    #[test]
    fn search_finds_the_pure_power_matrices() {
        let f = example2();
        let hits = search_complete_reductions(&f, &SearchOptions::new(2, 5)).unwrap();
        let first = &hits[0].candidate;
        assert_eq!(first.ys(), vec![pp(2, 0, 4), pp(2, 1, 4)]);
        assert_eq!(first.matrix()[0], vec![pp(2, 0, 2), pp(2, 1, 2)]);

        let e1 = example1();
        let hits = search_complete_reductions(&e1, &SearchOptions::new(2, 3)).unwrap();
        assert_eq!(hits.len(), 1);
        assert_eq!(
            hits[0].candidate.matrix(),
            &[
                vec![pp(3, 0, 1), pp(3, 1, 1), pp(3, 2, 1)],
                vec![pp(3, 0, 2), pp(3, 1, 2), pp(3, 2, 2)]
            ]
        );

        let m = powers(&["X + Y"], 2);
        let hits = search_complete_reductions(&m, &SearchOptions::new(1, 1)).unwrap();
        assert_eq!(hits[0].candidate.ys(), vec![pp(2, 0, 1), pp(2, 1, 1)]);
        assert_eq!(
            hits[0].reductions.minimal_elements,
            vec![MultiIndex::from([0])]
        );
    }

    #[test]
    fn search_can_come_up_empty() {
        // (X^3, Y^3) is not a reduction of (X^3, XY, Y^3)
        let f = powers(&["X^3 + X*Y + Y^3"], 2);
        let hits = search_complete_reductions(&f, &SearchOptions::new(1, 3)).unwrap();
        assert!(hits.is_empty());
    }

    #[test]
    fn candidate_json_roundtrip() {
        let f = example2();
        let c = candidate(&f, &[&[2, 2], &[2, 2]]);
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.contains("\"y\":[[4,0],[0,4]]"));
        let back: CompleteReductionCandidate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}
