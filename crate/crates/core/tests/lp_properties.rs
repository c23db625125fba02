use exhauster::lp::{lp_feasible, lp_solve, strict_margin};
use exhauster::{LinearConstraint, LpOutcome, OptSense, Vector};
use proptest::prelude::*;

fn boxed(dim: usize, bound: f64) -> Vec<LinearConstraint> {
    (0..dim)
        .flat_map(|i| {
            let e = Vector::unit(dim, i);
            [
                LinearConstraint::le(e.clone(), bound),
                LinearConstraint::ge(e, -bound),
            ]
        })
        .collect()
}

fn constraints(dim: usize, count: usize) -> impl Strategy<Value = Vec<LinearConstraint>> {
    prop::collection::vec(
        (prop::collection::vec(-2.0..2.0f64, dim), -1.0..2.0f64),
        count,
    )
    .prop_map(|rows| {
        rows.into_iter()
            .map(|(a, b)| LinearConstraint::le(Vector::from(a), b))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn optimal_points_are_feasible_and_unbeaten(
        rows in constraints(2, 4),
        c in prop::collection::vec(-3.0..3.0f64, 2),
    ) {
        let mut all = boxed(2, 3.0);
        all.extend(rows);
        let c = Vector::from(c);
        match lp_solve(&c, &all, OptSense::Maximize).unwrap() {
            LpOutcome::Optimal { point, value } => {
                for row in &all {
                    prop_assert!(row.violation(&point) <= 1e-7);
                }
                prop_assert!((c.dot(&point) - value).abs() <= 1e-7);
                // No feasible grid point beats the optimum.
                for i in 0..=30 {
                    for j in 0..=30 {
                        let x = Vector::from([-3.0 + 0.2 * i as f64, -3.0 + 0.2 * j as f64]);
                        if all.iter().all(|r| r.violation(&x) <= 0.0) {
                            prop_assert!(c.dot(&x) <= value + 1e-7);
                        }
                    }
                }
            }
            LpOutcome::Infeasible => {
                for i in 0..=30 {
                    for j in 0..=30 {
                        let x = Vector::from([-3.0 + 0.2 * i as f64, -3.0 + 0.2 * j as f64]);
                        prop_assert!(all.iter().any(|r| r.violation(&x) > 0.0));
                    }
                }
            }
            LpOutcome::Unbounded => prop_assert!(false, "boxed program reported unbounded"),
        }
    }

    #[test]
    fn minimum_is_negated_maximum(
        rows in constraints(3, 5),
        c in prop::collection::vec(-3.0..3.0f64, 3),
    ) {
        let mut all = boxed(3, 2.0);
        all.extend(rows);
        let c = Vector::from(c);
        let min = lp_solve(&c, &all, OptSense::Minimize).unwrap();
        let max = lp_solve(&-&c, &all, OptSense::Maximize).unwrap();
        match (min.value(), max.value()) {
            (Some(a), Some(b)) => prop_assert!((a + b).abs() <= 1e-7),
            (None, None) => {}
            other => prop_assert!(false, "outcomes disagree: {other:?}"),
        }
    }

    #[test]
    fn feasibility_agrees_with_solve(rows in constraints(2, 5)) {
        let mut all = boxed(2, 3.0);
        all.extend(rows);
        let feasible = lp_feasible(2, &all).unwrap();
        let solved = lp_solve(&Vector::zeros(2), &all, OptSense::Minimize).unwrap();
        prop_assert_eq!(feasible.is_some(), solved.point().is_some());
        if let Some(x) = feasible {
            for row in &all {
                prop_assert!(row.violation(&x) <= 1e-7);
            }
        }
    }

    #[test]
    fn strict_margin_is_nonnegative_and_homogeneous(
        forms in prop::collection::vec(prop::collection::vec(-2.0..2.0f64, 2), 1..5),
        scale in 0.1..10.0f64,
    ) {
        let forms: Vec<Vector> = forms.into_iter().map(Vector::from).collect();
        let base = strict_margin(&forms).unwrap();
        prop_assert!(base.value >= -1e-9);
        prop_assert!(base.point.norm_inf() <= 1.0 + 1e-9);
        let scaled: Vec<Vector> = forms.iter().map(|d| d.scaled(scale)).collect();
        let other = strict_margin(&scaled).unwrap();
        prop_assert!((other.value - scale * base.value).abs() <= 1e-7 * scale.max(1.0));
        // The reported point attains the value.
        let attained = forms.iter().map(|d| d.dot(&base.point)).fold(f64::INFINITY, f64::min);
        prop_assert!((attained - base.value).abs() <= 1e-7);
        // Grid oracle over the box.
        let mut best = f64::NEG_INFINITY;
        for i in 0..=40 {
            for j in 0..=40 {
                let x = Vector::from([-1.0 + 0.05 * i as f64, -1.0 + 0.05 * j as f64]);
                best = best.max(forms.iter().map(|d| d.dot(&x)).fold(f64::INFINITY, f64::min));
            }
        }
        prop_assert!(best <= base.value + 1e-7);
    }
}
