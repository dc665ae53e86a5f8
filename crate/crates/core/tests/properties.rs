mod common;

use common::m_primary_strategy;
use multirees::{
    binomial, check_complete_reduction_at, colength, colength_box_scan,
    colength_inclusion_exclusion, fit_numerical_polynomial, fit_polynomial, integral_closure,
    mixed_multiplicities, nakayama_descent_check, postulation_set, reduction_vector_set,
    search_complete_reductions, Certification, Filtration, FiltrationSpec, GridBox,
    HilbertPolynomial, Monomial, MonomialIdeal, MultiIndex, SearchOptions, UpwardClosedSet,
};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn dim_and_ideal() -> impl Strategy<Value = MonomialIdeal> {
    (1usize..=3).prop_flat_map(|d| m_primary_strategy(d, 6, 4))
}

fn pair_in_same_dim() -> impl Strategy<Value = (MonomialIdeal, MonomialIdeal)> {
    (1usize..=3).prop_flat_map(|d| (m_primary_strategy(d, 4, 3), m_primary_strategy(d, 4, 3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn colength_routes_agree(a in dim_and_ideal()) {
        let h = colength(&a).unwrap();
        prop_assert_eq!(h, colength_box_scan(&a).unwrap());
        prop_assert_eq!(h, colength_inclusion_exclusion(&a).unwrap());
    }

    #[test]
    fn generators_are_an_antichain(a in dim_and_ideal()) {
        let g = a.generators();
        for (i, x) in g.iter().enumerate() {
            for (j, y) in g.iter().enumerate() {
                prop_assert!(i == j || !x.divides(y));
            }
        }
        let reparsed = MonomialIdeal::from_exponents(a.ambient_dim(), &a.exponent_lists()).unwrap();
        prop_assert_eq!(reparsed, a);
    }

    #[test]
    fn ideal_operation_laws((a, b) in pair_in_same_dim()) {
        let ab = a.product(&b).unwrap();
        prop_assert_eq!(&ab, &b.product(&a).unwrap());
        let sum = a.sum(&b).unwrap();
        let cap = a.intersection(&b).unwrap();
        prop_assert!(sum.contains(&a).unwrap() && sum.contains(&b).unwrap());
        prop_assert!(a.contains(&cap).unwrap() && b.contains(&cap).unwrap());
        prop_assert!(cap.contains(&ab).unwrap());
        // (A:B)·B ⊆ A and A ⊆ (AB : B)
        let colon = a.colon(&b).unwrap();
        prop_assert!(a.contains(&colon.product(&b).unwrap()).unwrap());
        prop_assert!(ab.colon(&b).unwrap().contains(&a).unwrap());
        // λ(R/A∩B) + λ(R/A+B) = λ(R/A) + λ(R/B)
        prop_assert_eq!(
            colength(&cap).unwrap() + colength(&sum).unwrap(),
            colength(&a).unwrap() + colength(&b).unwrap()
        );
    }

    #[test]
    fn integral_closure_is_a_closure(a in (1usize..=2).prop_flat_map(|d| m_primary_strategy(d, 5, 3))) {
        let c = integral_closure(&a).unwrap();
        prop_assert!(c.contains(&a).unwrap());
        prop_assert_eq!(integral_closure(&c).unwrap(), c.clone());
        // closure of A^2 contains (closure of A)^2
        let c2 = integral_closure(&a.power(2).unwrap()).unwrap();
        prop_assert!(c2.contains(&c.power(2).unwrap()).unwrap());
    }

    #[test]
    fn fit_recovers_random_polynomials(
        s in 1usize..=2,
        degree in 0usize..=3,
        seed in prop::collection::vec(-20i64..=20, 10),
        offset in -3i64..=3,
    ) {
        let alphas = multirees::hilbert::basis_exponents(s, degree);
        let mut coeffs: BTreeMap<MultiIndex, i64> = alphas.iter().cloned().zip(seed.iter().copied()).collect();
        let top = MultiIndex::new({ let mut v = vec![0; s]; v[0] = degree as i64; v });
        coeffs.insert(top, 7);
        let p = HilbertPolynomial::new(s, degree, coeffs, None).unwrap();
        let got = fit_numerical_polynomial(s, degree, &MultiIndex::splat(s, offset), 2, |n| Ok(p.evaluate(n))).unwrap();
        prop_assert_eq!(got.coefficients(), p.coefficients());
    }

    #[test]
    fn upward_closed_sets_from_random_scans(bits in prop::collection::vec(any::<bool>(), 36)) {
        let grid = GridBox::up_to(MultiIndex::from([5, 5]));
        let set = UpwardClosedSet::from_scan(grid.clone(), &grid, &bits, Certification::Heuristic { margin: 0 });
        set.validate().unwrap();
        for n in grid.points() {
            let expected = grid.points().filter(|m| m.dominates(&n)).all(|m| bits[grid.linear_index(&m).unwrap()]);
            prop_assert_eq!(set.contains(&n), expected, "at {}", n);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn mixed_multiplicities_are_positive((a, b) in (1usize..=2).prop_flat_map(|d| (m_primary_strategy(d, 3, 2), m_primary_strategy(d, 3, 2)))) {
        let d = a.ambient_dim();
        let f = Filtration::new(FiltrationSpec::powers(vec![a, b]).unwrap());
        let p = fit_polynomial(&f, &MultiIndex::splat(2, d as i64 + 1), 2).unwrap();
        let mm = mixed_multiplicities(&p).unwrap();
        prop_assert_eq!(mm.len(), d + 1);
    }

    #[test]
    fn nakayama_and_first_quadrant((a, b) in (2usize..=2).prop_flat_map(|d| (m_primary_strategy(d, 3, 2), m_primary_strategy(d, 3, 2)))) {
        let f = Filtration::new(FiltrationSpec::powers(vec![a, b]).unwrap());
        let hits = search_complete_reductions(&f, &SearchOptions::new(2, 8)).unwrap();
        let y = match hits.first() {
            Some(h) => h.candidate.ys(),
            None => vec![Monomial::pure_power(2, 0, 6), Monomial::pure_power(2, 1, 6)],
        };
        let report = nakayama_descent_check(&f, &y, &GridBox::up_to(MultiIndex::from([4, 4]))).unwrap();
        prop_assert!(report.is_clean(), "violations {:?}", report.violations);

        let p = fit_polynomial(&f, &MultiIndex::from([3, 3]), 2).unwrap();
        let grid = GridBox::new(MultiIndex::from([-2, -2]), MultiIndex::from([5, 5]));
        let post = postulation_set(&f, &p, &grid, 2).unwrap();
        prop_assert!(post.minimal_elements.iter().all(|n| n.is_nonnegative()), "{:?}", post.minimal_elements);
    }

    #[test]
    fn reduction_sets_propagate((a, b) in (2usize..=2).prop_flat_map(|d| (m_primary_strategy(d, 3, 2), m_primary_strategy(d, 3, 2)))) {
        let f = Filtration::new(FiltrationSpec::powers(vec![a, b]).unwrap());
        let hi = MultiIndex::from([4, 4]);
        for hit in search_complete_reductions(&f, &SearchOptions::new(2, 8)).unwrap() {
            let set = reduction_vector_set(&f, &hit.candidate, &hi).unwrap();
            prop_assert!(set.is_certified());
            // membership is checked past the box to exercise the certified tail
            for n in GridBox::up_to(MultiIndex::from([6, 6])).points() {
                let member = set.contains(&n);
                let holds = check_complete_reduction_at(&f, &hit.candidate, &n).unwrap();
                prop_assert!(!member || holds, "member {} fails the check", n);
            }
        }
    }
}

#[test]
fn binomial_matches_pascal() {
    for x in -6i128..=8 {
        for k in 1u32..=4 {
            assert_eq!(
                binomial(x, k),
                binomial(x - 1, k) + binomial(x - 1, k - 1),
                "C({x},{k})"
            );
        }
    }
}
