//! ℤ^s-graded filtrations of m-primary monomial ideals.
//!
//! Two families are built in, `F(n) = I^{n⁺}` and `F(n) = closure(I^{n⁺})`.
//! A third family takes an explicit ideal for each point of a box and extends
//! it beyond the box by `F(n + e_i) = I_i·F(n)`; it exists to build synthetic
//! (possibly non-admissible) filtrations.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closure::closure_of_product;
use crate::error::FiltrationError;
use crate::index::{GridBox, MultiIndex};
use crate::monomial::MonomialIdeal;

pub const DEFAULT_CACHE_BOUND: usize = 1 << 16;

/// Explicit ideals on `[0, hi]`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UserTable {
    pub hi: MultiIndex,
    pub entries: Vec<MonomialIdeal>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Powers,
    ClosureOfPowers,
    UserTable(UserTable),
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Powers => "powers",
            Family::ClosureOfPowers => "closure_of_powers",
            Family::UserTable(_) => "user_table",
        }
    }
}

/// `s` m-primary ideals in a common ring plus the rule defining `F(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub struct FiltrationSpec {
    ideals: Vec<MonomialIdeal>,
    family: Family,
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    ideals: Vec<MonomialIdeal>,
    family: Family,
}

impl From<FiltrationSpec> for SpecRepr {
    fn from(s: FiltrationSpec) -> Self {
        SpecRepr {
            ideals: s.ideals,
            family: s.family,
        }
    }
}

impl TryFrom<SpecRepr> for FiltrationSpec {
    type Error = FiltrationError;
    fn try_from(r: SpecRepr) -> Result<Self, FiltrationError> {
        FiltrationSpec::new(r.ideals, r.family)
    }
}

impl FiltrationSpec {
    pub fn new(ideals: Vec<MonomialIdeal>, family: Family) -> Result<Self, FiltrationError> {
        let first = ideals.first().ok_or(FiltrationError::Empty)?;
        let d = first.ambient_dim();
        for (index, ideal) in ideals.iter().enumerate() {
            if ideal.ambient_dim() != d {
                return Err(crate::error::IdealError::ArityMismatch {
                    expected: d,
                    found: ideal.ambient_dim(),
                }
                .into());
            }
            if !ideal.is_m_primary() || ideal.is_unit() {
                return Err(FiltrationError::NotMPrimary { index });
            }
        }
        if let Family::UserTable(table) = &family {
            let s = ideals.len();
            if table.hi.arity() != s {
                return Err(FiltrationError::GradingArity {
                    expected: s,
                    found: table.hi.arity(),
                });
            }
            let grid = GridBox::up_to(table.hi.clone());
            if table.entries.len() != grid.len() {
                let missing = grid.point_at(table.entries.len().min(grid.len().saturating_sub(1)));
                return Err(FiltrationError::MissingTableEntry(missing));
            }
            for e in &table.entries {
                if e.ambient_dim() != d {
                    return Err(crate::error::IdealError::ArityMismatch {
                        expected: d,
                        found: e.ambient_dim(),
                    }
                    .into());
                }
            }
        }
        Ok(FiltrationSpec { ideals, family })
    }

    pub fn powers(ideals: Vec<MonomialIdeal>) -> Result<Self, FiltrationError> {
        Self::new(ideals, Family::Powers)
    }

    pub fn closure_of_powers(ideals: Vec<MonomialIdeal>) -> Result<Self, FiltrationError> {
        Self::new(ideals, Family::ClosureOfPowers)
    }

    /// A table filtration; `entry(n)` is called for every `n` in `[0, hi]`.
    pub fn user_table(
        ideals: Vec<MonomialIdeal>,
        hi: MultiIndex,
        mut entry: impl FnMut(&MultiIndex) -> MonomialIdeal,
    ) -> Result<Self, FiltrationError> {
        let grid = GridBox::up_to(hi.clone());
        let entries = grid.points().map(|n| entry(&n)).collect();
        Self::new(ideals, Family::UserTable(UserTable { hi, entries }))
    }

    /// `s`.
    pub fn grading_rank(&self) -> usize {
        self.ideals.len()
    }

    /// `d`.
    pub fn ambient_dim(&self) -> usize {
        self.ideals[0].ambient_dim()
    }

    pub fn ideals(&self) -> &[MonomialIdeal] {
        &self.ideals
    }

    pub fn family(&self) -> &Family {
        &self.family
    }
}

/// Memoizing evaluator for a [`FiltrationSpec`].
///
/// Safe to share between threads; lookups take a read lock only.
pub struct Filtration {
    spec: FiltrationSpec,
    products: RwLock<HashMap<MultiIndex, Arc<MonomialIdeal>>>,
    values: RwLock<HashMap<MultiIndex, Arc<MonomialIdeal>>>,
    cache_bound: usize,
}

impl Filtration {
    pub fn new(spec: FiltrationSpec) -> Self {
        Self::with_cache_bound(spec, DEFAULT_CACHE_BOUND)
    }

    pub fn with_cache_bound(spec: FiltrationSpec, cache_bound: usize) -> Self {
        Filtration {
            spec,
            products: RwLock::new(HashMap::new()),
            values: RwLock::new(HashMap::new()),
            cache_bound,
        }
    }

    pub fn spec(&self) -> &FiltrationSpec {
        &self.spec
    }

    pub fn grading_rank(&self) -> usize {
        self.spec.grading_rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.spec.ambient_dim()
    }

    pub fn ideal(&self, i: usize) -> &MonomialIdeal {
        &self.spec.ideals[i]
    }

    fn check_arity(&self, n: &MultiIndex) -> Result<(), FiltrationError> {
        if n.arity() != self.grading_rank() {
            return Err(FiltrationError::GradingArity {
                expected: self.grading_rank(),
                found: n.arity(),
            });
        }
        Ok(())
    }

    fn lookup(
        cache: &RwLock<HashMap<MultiIndex, Arc<MonomialIdeal>>>,
        key: &MultiIndex,
    ) -> Option<Arc<MonomialIdeal>> {
        cache.read().expect("cache lock poisoned").get(key).cloned()
    }

    fn store(
        &self,
        cache: &RwLock<HashMap<MultiIndex, Arc<MonomialIdeal>>>,
        key: MultiIndex,
        value: Arc<MonomialIdeal>,
    ) {
        let mut map = cache.write().expect("cache lock poisoned");
        if map.len() < self.cache_bound {
            map.insert(key, value);
        }
    }

    /// `I^n = I_1^{n_1}⋯I_s^{n_s}` for `n ≥ 0`.
    pub fn product_ideal(&self, n: &MultiIndex) -> Result<Arc<MonomialIdeal>, FiltrationError> {
        self.check_arity(n)?;
        let n = n.plus_part();
        if let Some(hit) = Self::lookup(&self.products, &n) {
            return Ok(hit);
        }
        let value = match (0..n.arity()).find(|&i| n[i] > 0) {
            None => Arc::new(MonomialIdeal::unit(self.ambient_dim())),
            Some(i) => {
                let prev = self.product_ideal(&n.offset(i, -1))?;
                Arc::new(self.spec.ideals[i].product(&prev)?)
            }
        };
        self.store(&self.products, n, value.clone());
        Ok(value)
    }

    /// `F(n)`, evaluated at `n⁺`.
    pub fn evaluate(&self, n: &MultiIndex) -> Result<Arc<MonomialIdeal>, FiltrationError> {
        self.check_arity(n)?;
        let n = n.plus_part();
        match &self.spec.family {
            Family::Powers => self.product_ideal(&n),
            Family::ClosureOfPowers => {
                if let Some(hit) = Self::lookup(&self.values, &n) {
                    return Ok(hit);
                }
                let product = self.product_ideal(&n)?;
                let factors: Vec<(&MonomialIdeal, u32)> = self
                    .spec
                    .ideals
                    .iter()
                    .zip(n.iter())
                    .map(|(i, k)| (i, k as u32))
                    .collect();
                let value = Arc::new(closure_of_product(&factors, &product)?);
                self.store(&self.values, n, value.clone());
                Ok(value)
            }
            Family::UserTable(table) => {
                if let Some(hit) = Self::lookup(&self.values, &n) {
                    return Ok(hit);
                }
                let clamped = n.componentwise_min(&table.hi);
                let grid = GridBox::up_to(table.hi.clone());
                let idx = grid
                    .linear_index(&clamped)
                    .ok_or_else(|| FiltrationError::MissingTableEntry(clamped.clone()))?;
                let base = &table.entries[idx];
                let excess = &n - &clamped;
                let value = if excess.total() == 0 {
                    Arc::new(base.clone())
                } else {
                    Arc::new(self.product_ideal(&excess)?.product(base)?)
                };
                self.store(&self.values, n, value.clone());
                Ok(value)
            }
        }
    }

    /// Scans `[0, hi]` for `F(n + e_i) = I_i·F(n)`.
    ///
    /// For each axis the returned bound is the least `r_i` such that the
    /// equality holds at every scanned `n` with `n_i ≥ r_i`. Fails when the
    /// equality breaks on the top layer `n_i = hi_i`.
    pub fn stabilization_bounds(
        &self,
        hi: &MultiIndex,
    ) -> Result<StabilizationCertificate, FiltrationError> {
        self.check_arity(hi)?;
        if (0..hi.arity()).any(|i| hi[i] < 2) {
            return Err(FiltrationError::BoxTooSmall(hi.clone()));
        }
        let grid = GridBox::up_to(hi.clone());
        let s = self.grading_rank();
        let points: Vec<MultiIndex> = grid.points().collect();
        let violations: Vec<(MultiIndex, usize)> = points
            .par_iter()
            .map(|n| -> Result<Vec<(MultiIndex, usize)>, FiltrationError> {
                let here = self.evaluate(n)?;
                let mut bad = Vec::new();
                for i in 0..s {
                    let next = self.evaluate(&n.offset(i, 1))?;
                    let pushed = self.spec.ideals[i].product(&here)?;
                    if *next != pushed {
                        bad.push((n.clone(), i));
                    }
                }
                Ok(bad)
            })
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect();

        let mut bounds = vec![0i64; s];
        let mut worst: Vec<Option<MultiIndex>> = vec![None; s];
        for (n, i) in violations {
            if n[i] + 1 > bounds[i] {
                bounds[i] = n[i] + 1;
                worst[i] = Some(n);
            }
        }
        for i in 0..s {
            if bounds[i] > hi[i] {
                return Err(FiltrationError::NoStabilization {
                    at: worst[i].clone().expect("violation recorded"),
                    axis: i,
                });
            }
        }
        Ok(StabilizationCertificate {
            bounds: MultiIndex::new(bounds),
            verified_box: hi.clone(),
        })
    }
}

/// `F(n + e_i) = I_i·F(n)` was verified for every `n` in `[0, verified_box]`
/// with `n_i ≥ bounds_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationCertificate {
    pub bounds: MultiIndex,
    pub verified_box: MultiIndex,
}

impl StabilizationCertificate {
    /// Whether the certified equality applies at `n` along axis `i`.
    pub fn covers(&self, n: &MultiIndex, i: usize) -> bool {
        n[i] >= self.bounds[i] && GridBox::up_to(self.verified_box.clone()).contains(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(d: usize) -> MonomialIdeal {
        MonomialIdeal::maximal(d)
    }

    #[test]
    fn powers_family_evaluation() {
        let spec = FiltrationSpec::powers(vec![m(3), m(3).power(2).unwrap()]).unwrap();
        let f = Filtration::new(spec);
        assert_eq!(
            *f.evaluate(&MultiIndex::from([1, 1])).unwrap(),
            m(3).power(3).unwrap()
        );
        assert!(f.evaluate(&MultiIndex::from([-3, -3])).unwrap().is_unit());
        assert_eq!(
            f.evaluate(&MultiIndex::from([-1, 2])).unwrap(),
            f.evaluate(&MultiIndex::from([0, 2])).unwrap()
        );
        assert!(f.evaluate(&MultiIndex::from([1])).is_err());
    }

    #[test]
    fn closure_family_evaluation() {
        let j = MonomialIdeal::parse("X^2 + Y^2", 2).unwrap();
        let f = Filtration::new(FiltrationSpec::closure_of_powers(vec![j]).unwrap());
        assert_eq!(
            *f.evaluate(&MultiIndex::from([1])).unwrap(),
            MonomialIdeal::parse("X^2 + X*Y + Y^2", 2).unwrap()
        );
        assert!(f.evaluate(&MultiIndex::from([0])).unwrap().is_unit());
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(FiltrationSpec::powers(vec![]), Err(FiltrationError::Empty));
        let not_primary = MonomialIdeal::parse("X^2 + X*Y", 2).unwrap();
        assert_eq!(
            FiltrationSpec::powers(vec![m(2), not_primary]),
            Err(FiltrationError::NotMPrimary { index: 1 })
        );
        assert!(FiltrationSpec::powers(vec![m(2), m(3)]).is_err());
        assert!(FiltrationSpec::powers(vec![MonomialIdeal::unit(2)]).is_err());
    }

    #[test]
    fn stabilization_for_powers_is_immediate() {
        let spec =
            FiltrationSpec::powers(vec![m(2).power(2).unwrap(), MonomialIdeal::diagonal(2, 2)])
                .unwrap();
        let cert = Filtration::new(spec)
            .stabilization_bounds(&MultiIndex::from([4, 4]))
            .unwrap();
        assert_eq!(cert.bounds, MultiIndex::from([0, 0]));
    }

    #[test]
    fn stabilization_for_closures() {
        let j = MonomialIdeal::parse("X^2 + Y^2", 2).unwrap();
        let f = Filtration::new(FiltrationSpec::closure_of_powers(vec![j]).unwrap());
        let cert = f.stabilization_bounds(&MultiIndex::from([6])).unwrap();
        // closure(J) = m^2 but J·closure(J^0) = J, so the bound is 1
        assert_eq!(cert.bounds, MultiIndex::from([1]));
        let m2 = m(2).power(2).unwrap();
        for n in 1..=6u32 {
            let lhs = m2.power(n + 1).unwrap();
            let rhs = MonomialIdeal::parse("X^2 + Y^2", 2)
                .unwrap()
                .product(&m2.power(n).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }

        let f = Filtration::new(
            FiltrationSpec::closure_of_powers(vec![m(3), m(3).power(2).unwrap()]).unwrap(),
        );
        let cert = f.stabilization_bounds(&MultiIndex::from([5, 5])).unwrap();
        assert_eq!(cert.bounds, MultiIndex::from([0, 0]));
    }

    #[test]
    fn stabilization_box_precondition() {
        let f = Filtration::new(FiltrationSpec::powers(vec![m(2)]).unwrap());
        assert!(matches!(
            f.stabilization_bounds(&MultiIndex::from([1])),
            Err(FiltrationError::BoxTooSmall(_))
        ));
    }

    #[test]
    fn user_table_extends_by_multiplication() {
        let spec = FiltrationSpec::user_table(vec![m(2)], MultiIndex::from([3]), |n| {
            m(2).power(n[0] as u32).unwrap()
        })
        .unwrap();
        let f = Filtration::new(spec);
        assert_eq!(
            *f.evaluate(&MultiIndex::from([7])).unwrap(),
            m(2).power(7).unwrap()
        );
    }

    #[test]
    fn user_table_without_stabilization_is_reported() {
        // F(n) = m for 1 ≤ n ≤ 3, multiplicative afterwards
        let spec = FiltrationSpec::user_table(vec![m(2)], MultiIndex::from([3]), |n| {
            if n[0] == 0 {
                MonomialIdeal::unit(2)
            } else {
                m(2)
            }
        })
        .unwrap();
        let f = Filtration::new(spec);
        match f.stabilization_bounds(&MultiIndex::from([2])) {
            Err(FiltrationError::NoStabilization { at, axis }) => {
                assert_eq!(at, MultiIndex::from([2]));
                assert_eq!(axis, 0);
            }
            other => panic!("unexpected {other:?}"),
        }
        // beyond the table the extension is multiplicative
        let cert = f.stabilization_bounds(&MultiIndex::from([5])).unwrap();
        assert_eq!(cert.bounds, MultiIndex::from([3]));
    }

    #[test]
    fn serde_roundtrip_revalidates() {
        let spec = FiltrationSpec::powers(vec![m(2), MonomialIdeal::diagonal(2, 2)]).unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        let back: FiltrationSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        let bad = json.replace("\"generators\":[[1,0],[0,1]]", "\"generators\":[[1,0]]");
        assert!(serde_json::from_str::<FiltrationSpec>(&bad).is_err());
    }
}
