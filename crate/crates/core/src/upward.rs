//! Upward-closed subsets of ℤ^s represented by their minimal elements.

use serde::{Deserialize, Serialize};

use crate::filtration::StabilizationCertificate;
use crate::index::{minimal_elements, GridBox, MultiIndex};

/// How far a box-relative scan vouches for the tail outside the box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    /// The tail follows from the scan by propagating ideal equalities through
    /// the stabilization certificate.
    Certified(StabilizationCertificate),
    /// The scan looked `margin` steps past the box; nothing is proved beyond.
    Heuristic { margin: i64 },
}

/// An upward-closed set, as seen from a finite box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpwardClosedSet {
    pub arity: usize,
    pub minimal_elements: Vec<MultiIndex>,
    #[serde(rename = "box")]
    pub grid: GridBox,
    pub certification: Certification,
}

impl UpwardClosedSet {
    /// Builds the set of `n` in `grid` such that `holds` is true on the
    /// whole upward cone of `n` inside `scan`. `holds` is indexed row-major
    /// over `scan`, which must contain `grid` and share its lower corner.
    pub fn from_scan(
        grid: GridBox,
        scan: &GridBox,
        holds: &[bool],
        certification: Certification,
    ) -> Self {
        assert_eq!(grid.lo, scan.lo, "scan box must share the lower corner");
        assert!(
            scan.hi.dominates(&grid.hi),
            "scan box must contain the grid"
        );
        let cone = cone_closure(scan, holds);
        let arity = grid.arity();
        let members = grid.points().filter(|n| {
            let idx = scan.linear_index(n).expect("grid inside scan");
            cone[idx]
        });
        let minimal = minimal_elements(members.filter(|n| {
            (0..arity).all(|i| {
                let below = n.offset(i, -1);
                !grid.contains(&below) || !cone[scan.linear_index(&below).unwrap()]
            })
        }));
        UpwardClosedSet {
            arity,
            minimal_elements: minimal,
            grid,
            certification,
        }
    }

    pub fn contains(&self, n: &MultiIndex) -> bool {
        self.minimal_elements.iter().any(|m| n.dominates(m))
    }

    pub fn is_empty(&self) -> bool {
        self.minimal_elements.is_empty()
    }

    pub fn is_certified(&self) -> bool {
        matches!(self.certification, Certification::Certified(_))
    }

    /// Checks the representation invariants.
    pub fn validate(&self) -> Result<(), String> {
        if self.grid.arity() != self.arity {
            return Err("box arity differs from set arity".into());
        }
        for (k, a) in self.minimal_elements.iter().enumerate() {
            if a.arity() != self.arity {
                return Err(format!("minimal element {a} has the wrong arity"));
            }
            if !self.grid.contains(a) {
                return Err(format!("minimal element {a} lies outside {}", self.grid));
            }
            for b in &self.minimal_elements[k + 1..] {
                if a.dominates(b) || b.dominates(a) {
                    return Err(format!("minimal elements {a} and {b} are comparable"));
                }
            }
        }
        Ok(())
    }
}

/// `cone[n] = holds[n] ∧ cone[n + e_i]` for every `i` with `n + e_i` in the box.
pub(crate) fn cone_closure(scan: &GridBox, holds: &[bool]) -> Vec<bool> {
    assert_eq!(holds.len(), scan.len());
    let s = scan.arity();
    let mut strides = vec![1usize; s];
    for i in (0..s.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * scan.side(i + 1);
    }
    let mut cone = holds.to_vec();
    for idx in (0..holds.len()).rev() {
        if !cone[idx] {
            continue;
        }
        for i in 0..s {
            let coord = (idx / strides[i]) % scan.side(i);
            if coord + 1 < scan.side(i) && !cone[idx + strides[i]] {
                cone[idx] = false;
                break;
            }
        }
    }
    cone
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn staircase_set_from_scan() {
        // holds iff n1 + n2 >= 2 and n1 >= 1
        let grid = GridBox::up_to(MultiIndex::from([4, 4]));
        let holds: Vec<bool> = grid
            .points()
            .map(|n| n[0] >= 1 && n[0] + n[1] >= 2)
            .collect();
        let set = UpwardClosedSet::from_scan(
            grid.clone(),
            &grid,
            &holds,
            Certification::Heuristic { margin: 0 },
        );
        assert_eq!(
            set.minimal_elements,
            vec![MultiIndex::from([1, 1]), MultiIndex::from([2, 0])]
        );
        set.validate().unwrap();
        assert!(set.contains(&MultiIndex::from([3, 7])));
        assert!(!set.contains(&MultiIndex::from([0, 7])));
    }

    #[test]
    fn cone_requires_everything_above() {
        // a single failure at (3,3) removes its whole lower cone
        let grid = GridBox::up_to(MultiIndex::from([4, 4]));
        let holds: Vec<bool> = grid
            .points()
            .map(|n| n != MultiIndex::from([3, 3]))
            .collect();
        let set = UpwardClosedSet::from_scan(
            grid.clone(),
            &grid,
            &holds,
            Certification::Heuristic { margin: 0 },
        );
        assert_eq!(
            set.minimal_elements,
            vec![MultiIndex::from([0, 4]), MultiIndex::from([4, 0])]
        );
    }

    #[test]
    fn scan_beyond_the_grid() {
        let grid = GridBox::new(MultiIndex::from([-2]), MultiIndex::from([3]));
        let scan = grid.extend_upper(2);
        let holds: Vec<bool> = scan.points().map(|n| n[0] != 4).collect();
        let set =
            UpwardClosedSet::from_scan(grid, &scan, &holds, Certification::Heuristic { margin: 2 });
        assert!(set.is_empty());
    }

    #[test]
    fn validate_catches_comparable_elements() {
        let set = UpwardClosedSet {
            arity: 2,
            minimal_elements: vec![MultiIndex::from([1, 1]), MultiIndex::from([2, 1])],
            grid: GridBox::up_to(MultiIndex::from([3, 3])),
            certification: Certification::Heuristic { margin: 0 },
        };
        assert!(set.validate().is_err());
    }
}
