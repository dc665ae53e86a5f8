//! Integral closure of monomial ideals through the Newton polyhedron.
//!
//! A monomial `x^p` lies in the integral closure of `I_1^{w_1}⋯I_s^{w_s}` iff
//! `p` lies in `w_1·NP(I_1) + ⋯ + w_s·NP(I_s)`, where `NP(I)` is
//! `conv(gens(I)) + ℝ^d_{≥0}`. Membership is the exact feasibility of
//!
//! ```text
//! Σ_i Σ_k λ_{ik} g_{ik} ≤ p,   Σ_k λ_{ik} = w_i,   λ ≥ 0.
//! ```

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::IdealError;
use crate::lp::{int, FeasibilityProblem};
use crate::monomial::{Monomial, MonomialIdeal};

/// Whether `point` lies in the weighted Minkowski sum of Newton polyhedra.
pub fn in_newton_polyhedron(factors: &[(&MonomialIdeal, u32)], point: &Monomial) -> bool {
    let active: Vec<(&MonomialIdeal, u32)> =
        factors.iter().copied().filter(|(_, w)| *w > 0).collect();
    if active.is_empty() {
        return true;
    }
    let d = point.dim();
    let vars: usize = active.iter().map(|(i, _)| i.len()).sum();
    let mut prob = FeasibilityProblem::new(vars);
    for axis in 0..d {
        let mut row = Vec::with_capacity(vars);
        for (ideal, _) in &active {
            for g in ideal.generators() {
                row.push(int(g.exponents()[axis] as i64));
            }
        }
        prob.add_upper(row, int(point.exponents()[axis] as i64));
    }
    let mut offset = 0;
    for (ideal, w) in &active {
        let mut row = vec![BigRational::zero(); vars];
        for slot in row.iter_mut().skip(offset).take(ideal.len()) {
            *slot = int(1);
        }
        offset += ideal.len();
        prob.add_equal(row, int(*w as i64));
    }
    prob.is_feasible()
}

/// The integral closure of `A`.
pub fn integral_closure(a: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
    closure_of_product(&[(a, 1)], a)
}

/// The integral closure of `∏ I_i^{w_i}`; `product` must be that product.
pub fn closure_of_product(
    factors: &[(&MonomialIdeal, u32)],
    product: &MonomialIdeal,
) -> Result<MonomialIdeal, IdealError> {
    if product.is_zero() {
        return Err(IdealError::ZeroIdeal("integral closure"));
    }
    if product.is_unit() {
        return Ok(product.clone());
    }
    let d = product.ambient_dim();
    let mut bounds = vec![0u32; d];
    for g in product.generators() {
        for (b, &e) in bounds.iter_mut().zip(g.exponents()) {
            *b = (*b).max(e);
        }
    }

    // Enumerate the box in canonical order so every new generator is found
    // before the points it divides.
    let mut candidates: Vec<Monomial> = Vec::new();
    let total: usize = bounds.iter().map(|&b| b as usize + 1).product();
    let mut point = vec![0u32; d];
    for _ in 0..total {
        let m = Monomial::from_slice(&point);
        if !product.contains_monomial(&m) {
            candidates.push(m);
        }
        for axis in (0..d).rev() {
            point[axis] += 1;
            if point[axis] <= bounds[axis] {
                break;
            }
            point[axis] = 0;
        }
    }
    candidates.sort_by(|a, b| a.canonical_cmp(b));

    let mut found: Vec<Monomial> = Vec::new();
    for c in candidates {
        if found.iter().any(|f| f.divides(&c)) {
            continue;
        }
        if in_newton_polyhedron(factors, &c) {
            found.push(c);
        }
    }
    let mut gens = product.generators().to_vec();
    gens.extend(found);
    MonomialIdeal::new(d, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_ideal_closes_to_power_of_maximal() {
        let a = MonomialIdeal::parse("X^2 + Y^2", 2).unwrap();
        let c = integral_closure(&a).unwrap();
        assert_eq!(c, MonomialIdeal::parse("X^2 + X*Y + Y^2", 2).unwrap());
    }

    #[test]
    fn principal_and_maximal_powers_are_closed() {
        let x = MonomialIdeal::parse("X", 2).unwrap();
        assert_eq!(integral_closure(&x).unwrap(), x);
        for d in 1..=3 {
            for k in 1..=4 {
                let mk = MonomialIdeal::maximal(d).power(k).unwrap();
                assert_eq!(integral_closure(&mk).unwrap(), mk, "d={d} k={k}");
            }
        }
    }

    #[test]
    fn non_m_primary_ideal() {
        // (X^2, Y^2)·X: closure is X·(X^2, XY, Y^2)
        let a = MonomialIdeal::parse("X^3 + X*Y^2", 2).unwrap();
        let c = integral_closure(&a).unwrap();
        assert_eq!(c, MonomialIdeal::parse("X^3 + X^2*Y + X*Y^2", 2).unwrap());
    }

    #[test]
    fn zero_ideal_is_rejected() {
        assert_eq!(
            integral_closure(&MonomialIdeal::zero(2)),
            Err(IdealError::ZeroIdeal("integral closure"))
        );
    }

    #[test]
    fn minkowski_weights() {
        let a = MonomialIdeal::parse("X^2 + Y^2", 2).unwrap();
        let a3 = a.power(3).unwrap();
        let via_power = integral_closure(&a3).unwrap();
        let via_weights = closure_of_product(&[(&a, 3)], &a3).unwrap();
        assert_eq!(via_power, via_weights);
        assert_eq!(via_power, MonomialIdeal::maximal(2).power(6).unwrap());
    }
}
