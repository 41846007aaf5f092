use proptest::prelude::*;

use kurtbound::appendix::{generate_base, search_outlier_in, BaseShape};
use kurtbound::distributions::{normal_cdf, normal_quantile, student_t_cdf, student_t_quantile};
use kurtbound::output::{Cell, OutputDocument, Precision};
use kurtbound::series::parse_returns_csv;
use kurtbound::validator::{max_safe_history_with_ceiling, required_tail_factor, validate_model};
use kurtbound::{feasible_kurtosis_range, solve_extreme_point};

fn feasible_pair() -> impl Strategy<Value = (f64, f64)> {
    (0.8f64..7.0, 0.001f64..1.0).prop_map(|(log_n, frac)| {
        let n = 10f64.powf(log_n).round().max(6.0);
        let r = feasible_kurtosis_range(n).unwrap();
        (n, r.kappa_min + frac * (r.kappa_max - r.kappa_min))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn solution_satisfies_quadratic((n, kappa) in feasible_pair()) {
        let s = solve_extreme_point(n, kappa).unwrap();
        prop_assert!(s.a > 0.0 && s.a <= (n - 1.0).sqrt());
        prop_assert!(s.b_squared >= 0.0);
        prop_assert!(s.quadratic_residual().abs() < 1e-8 * kappa.max(1.0) * n);
    }

    #[test]
    fn safe_history_is_the_crossing(k in 3.0f64..40.0, kappa in 3.0f64..20.0) {
        let h = max_safe_history_with_ceiling(k, kappa, 10_000_000).unwrap();
        if let Some(n) = h.bounded() {
            prop_assert!(required_tail_factor(n as f64, kappa).unwrap() <= k);
            prop_assert!(required_tail_factor(n as f64 + 1.0, kappa).unwrap() > k);
        }
    }

    #[test]
    fn verdict_flips_around_required((n, kappa) in feasible_pair(), d in 1e-6f64..5.0) {
        let need = required_tail_factor(n, kappa).unwrap();
        let above = validate_model(need + d, n as u64, kappa).unwrap();
        prop_assert!(above.pass && above.margin > 0.0);
        if need - d > 0.0 {
            let below = validate_model(need - d, n as u64, kappa).unwrap();
            prop_assert!(!below.pass && below.margin < 0.0);
            prop_assert!((above.margin + below.margin).abs() < 1e-9 * need.max(1.0));
        }
    }

    #[test]
    fn outlier_statistic_is_affine_invariant(
        shape in prop::sample::select(BaseShape::ALL.to_vec()),
        m in 40usize..400,
        scale in 0.01f64..100.0,
        shift in -50.0f64..50.0,
    ) {
        let base = generate_base(shape, m).unwrap();
        let moved: Vec<f64> = base.iter().map(|x| scale * x + shift).collect();
        let a0 = search_outlier_in(&base, 8.0).unwrap().a_statistic;
        let a1 = search_outlier_in(&moved, 8.0).unwrap().a_statistic;
        prop_assert!((a0 - a1).abs() < 1e-6 * a0, "{} vs {}", a0, a1);
    }

    #[test]
    fn csv_round_trip(values in prop::collection::vec(-1e6f64..1e6, 5..60)) {
        let mut doc = OutputDocument::new("r", ["value"]);
        for &v in &values {
            doc.push_row(vec![Cell::Number(v)]).unwrap();
        }
        let text = doc.to_csv(Precision::Full).unwrap();
        let (parsed, dates) = parse_returns_csv(text.as_bytes()).unwrap();
        prop_assert_eq!(parsed, values);
        prop_assert!(dates.is_none());
    }

    #[test]
    fn quantile_round_trip(p in 1e-10f64..(1.0 - 1e-10), dof in 1u32..60) {
        let q = student_t_quantile(p, dof).unwrap();
        prop_assert!((student_t_cdf(q, dof as f64) - p).abs() < 1e-9);
        let z = normal_quantile(p).unwrap();
        prop_assert!((normal_cdf(z) - p).abs() < 1e-9);
    }
}
