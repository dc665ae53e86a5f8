//! Counting standard monomials: the colength λ(R/A) of an m-primary
//! monomial ideal.
//!
//! Every lattice point outside the box ∏[0, N_i) lies in `A`, where `X_i^{N_i}`
//! is the minimal pure power on axis `i`. [`colength`] walks the box column by
//! column: for each point of the first `d−1` axes it finds the lowest last
//! coordinate that enters the staircase (a prefix minimum over generators),
//! and the column contributes that many standard monomials. The two other
//! routes exist as cross-checks.

use crate::error::IdealError;
use crate::monomial::{Monomial, MonomialIdeal};

/// λ(R/A).
pub fn colength(ideal: &MonomialIdeal) -> Result<u64, IdealError> {
    let bounds = ideal.pure_power_exponents()?;
    let d = bounds.len();
    if bounds.contains(&0) {
        return Ok(0);
    }
    if d == 1 {
        return Ok(bounds[0] as u64);
    }
    let front = &bounds[..d - 1];
    let cells: usize = front.iter().map(|&b| b as usize).product();
    let cap = bounds[d - 1];
    let mut height = vec![cap; cells];

    for g in ideal.generators() {
        let e = g.exponents();
        if e[..d - 1].iter().zip(front).any(|(x, b)| x >= b) {
            continue;
        }
        let idx = flat_index(&e[..d - 1], front);
        height[idx] = height[idx].min(e[d - 1]);
    }

    // prefix minimum along each front axis
    let mut stride = 1usize;
    for axis in (0..d - 1).rev() {
        let side = front[axis] as usize;
        for idx in 0..cells {
            if !(idx / stride).is_multiple_of(side) {
                let prev = height[idx - stride];
                if prev < height[idx] {
                    height[idx] = prev;
                }
            }
        }
        stride *= side;
    }
    Ok(height.iter().map(|&h| h as u64).sum())
}

fn flat_index(point: &[u32], sides: &[u32]) -> usize {
    point
        .iter()
        .zip(sides)
        .fold(0usize, |acc, (&p, &s)| acc * s as usize + p as usize)
}

/// λ(R/A) by testing every point of the full d-dimensional box.
pub fn colength_box_scan(ideal: &MonomialIdeal) -> Result<u64, IdealError> {
    let bounds = ideal.pure_power_exponents()?;
    let d = bounds.len();
    if bounds.contains(&0) {
        return Ok(0);
    }
    let total: usize = bounds.iter().map(|&b| b as usize).product();
    let mut point = vec![0u32; d];
    let mut count = 0u64;
    for _ in 0..total {
        let m = Monomial::from_slice(&point);
        if !ideal.contains_monomial(&m) {
            count += 1;
        }
        for axis in (0..d).rev() {
            point[axis] += 1;
            if point[axis] < bounds[axis] {
                break;
            }
            point[axis] = 0;
        }
    }
    Ok(count)
}

/// λ(R/A) by inclusion–exclusion over least common multiples of generators.
///
/// Counts the box points lying in the union of the generators' upper cones and
/// subtracts from the box volume. Exponential in the number of generators.
pub fn colength_inclusion_exclusion(ideal: &MonomialIdeal) -> Result<u64, IdealError> {
    let bounds = ideal.pure_power_exponents()?;
    let d = bounds.len();
    let gens = ideal.generators();
    assert!(
        gens.len() <= 20,
        "inclusion-exclusion is limited to 20 generators"
    );
    let volume: i128 = bounds.iter().map(|&b| b as i128).product();
    let mut inside: i128 = 0;
    for mask in 1u32..(1u32 << gens.len()) {
        let mut lcm = vec![0u32; d];
        for (k, g) in gens.iter().enumerate() {
            if mask & (1 << k) != 0 {
                for (l, &e) in lcm.iter_mut().zip(g.exponents()) {
                    *l = (*l).max(e);
                }
            }
        }
        let cone: i128 = lcm
            .iter()
            .zip(&bounds)
            .map(|(&l, &b)| (b as i128 - l as i128).max(0))
            .product();
        if mask.count_ones() % 2 == 1 {
            inside += cone;
        } else {
            inside -= cone;
        }
    }
    Ok((volume - inside) as u64)
}
