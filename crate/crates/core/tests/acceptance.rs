//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::Command;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use kurtbound::appendix::{comparison_table, BaseShape};
use kurtbound::chebyshev::{
    bhattacharyya_at_extreme_point, bhattacharyya_bound, even_moment_endpoint,
    zelen_at_extreme_point, zelen_bound,
};
use kurtbound::distributions::{
    normal_quantile, student_t_cdf, student_t_quantile, TailFactorQuery, TailModel,
};
use kurtbound::output::{Cell, OutputDocument, Precision};
use kurtbound::series::parse_returns_csv;
use kurtbound::validator::max_safe_history;
use kurtbound::{
    construct_distribution, feasible_kurtosis_range, oracle_moments, solve_extreme_point,
    third_moment, Error,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

const KAPPAS: [f64; 4] = [7.0, 10.0, 13.0, 16.0];

fn check_close(what: &str, got: f64, want: f64, tol: f64) -> Outcome {
    if (got - want).abs() <= tol {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, want {want} ± {tol}"))
    }
}

fn check_rel(what: &str, got: f64, want: f64, rel: f64) -> Outcome {
    let scale = want.abs().max(f64::MIN_POSITIVE);
    if ((got - want) / scale).abs() <= rel {
        Ok(())
    } else {
        Err(format!(
            "{what}: got {got}, want {want} (relative tolerance {rel})"
        ))
    }
}

fn a(n: f64, kappa: f64) -> Result<f64, String> {
    solve_extreme_point(n, kappa)
        .map(|s| s.a)
        .map_err(|e| format!("a({n}, {kappa}): {e}"))
}

fn table_1() -> Outcome {
    let rows: [(f64, [f64; 4]); 7] = [
        (250.0, [6.296, 6.952, 7.46, 7.881]),
        (500.0, [7.464, 8.247, 8.853, 9.355]),
        (1_000.0, [8.855, 9.789, 10.511, 11.109]),
        (10_000.0, [15.682, 17.349, 18.638, 19.705]),
        (100_000.0, [27.849, 30.817, 33.113, 35.011]),
        (1_000_000.0, [49.502, 54.781, 58.865, 62.241]),
        (833_208.0, [47.296, 52.339, 56.241, 59.467]),
    ];
    let start = Instant::now();
    for (n, printed) in rows {
        for (kappa, want) in KAPPAS.into_iter().zip(printed) {
            check_close(&format!("a({n}, {kappa})"), a(n, kappa)?, want, 0.01)?;
        }
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs_f64() >= 1.0 {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(())
}

fn table_2() -> Outcome {
    let horizons = [250.0, 500.0, 1_000.0, 10_000.0, 100_000.0, 1_000_000.0];
    let t_cells: [[f64; 4]; 6] = [
        [6.322, 4.908, 4.262, 3.898],
        [8.053, 5.951, 5.030, 4.524],
        [10.215, 7.173, 5.893, 5.208],
        [22.204, 13.034, 9.678, 8.025],
        [47.928, 23.332, 15.547, 12.032],
        [103.299, 41.578, 24.771, 17.83],
    ];
    let a_cells: [[f64; 2]; 6] = [
        [6.023, 4.828],
        [7.138, 5.709],
        [8.466, 6.760],
        [14.987, 11.934],
        [26.610, 21.171],
        [47.298, 37.619],
    ];
    for (i, &n) in horizons.iter().enumerate() {
        for (j, dof) in [3u32, 4, 5, 6].into_iter().enumerate() {
            let k = TailFactorQuery::new(n, TailModel::StudentT { dof })
                .and_then(|q| q.tail_factor())
                .map_err(|e| e.to_string())?;
            check_close(&format!("t({dof}) at N = {n}"), k, t_cells[i][j], 0.01)?;
        }
        check_close(&format!("a({n}, 6)"), a(n, 6.0)?, a_cells[i][0], 0.01)?;
        check_close(&format!("a({n}, 3)"), a(n, 3.0)?, a_cells[i][1], 0.01)?;
    }
    let ps = [
        1e-8,
        1e-6,
        1e-3,
        0.05,
        0.3,
        0.5,
        0.7,
        0.95,
        0.999,
        1.0 - 1e-6,
        1.0 - 1e-8,
    ];
    for dof in [1u32, 2, 3, 4, 5, 6, 10, 30, 1000] {
        for p in ps {
            let q = student_t_quantile(p, dof).map_err(|e| e.to_string())?;
            let back = student_t_cdf(q, dof as f64);
            if (back - p).abs() >= 1e-9 {
                return Err(format!(
                    "round trip dof = {dof}, p = {p}: CDF(Q(p)) = {back}"
                ));
            }
        }
    }
    Ok(())
}

fn normal_example() -> Outcome {
    let q = normal_quantile(1.0 - 1e-6).map_err(|e| e.to_string())?;
    check_close("normal quantile at 1 - 1e-6", q, 4.753, 0.001)
}

fn table_4() -> Outcome {
    let rows: [(f64, [f64; 4]); 6] = [
        (250.0, [6.468, 7.071, 7.550, 7.953]),
        (500.0, [7.692, 8.409, 8.979, 9.457]),
        (1_000.0, [9.147, 10.000, 10.678, 11.247]),
        (10_000.0, [16.266, 17.783, 18.988, 20.000]),
        (100_000.0, [28.925, 31.623, 33.766, 35.566]),
        (1_000_000.0, [51.437, 56.234, 60.046, 63.246]),
    ];
    for (n, printed) in rows {
        for (kappa, want) in KAPPAS.into_iter().zip(printed) {
            let t = even_moment_endpoint(n, kappa)
                .map_err(|e| e.to_string())?
                .threshold_t;
            check_close(&format!("(κN)^(1/4) at ({n}, {kappa})"), t, want, 0.001)?;
            let an = a(n, kappa)?;
            if t <= an {
                return Err(format!("dominance fails at ({n}, {kappa}): {t} <= {an}"));
            }
        }
    }
    Ok(())
}

fn table_7() -> Outcome {
    for n in [250.0, 500.0, 1_000.0, 10_000.0, 100_000.0, 1_000_000.0] {
        for kappa in KAPPAS {
            let b = zelen_at_extreme_point(n, kappa).map_err(|e| e.to_string())?;
            let one_in = b.one_in_n.ok_or("missing 1-in-n")?;
            check_close(&format!("Zelen 1-in at ({n}, {kappa})"), one_in, n, 3.0)?;
        }
    }
    Ok(())
}

fn table_8() -> Outcome {
    let rows: [(f64, [f64; 4]); 5] = [
        (1e4, [0.003453, 0.002974, 0.002646, 0.002407]),
        (1e5, [0.001099, 0.000945, 0.00084, 0.000764]),
        (1e6, [0.000349, 0.000299, 0.000266, 0.000242]),
        (1e7, [0.00011, 0.000095, 0.000084, 0.000076]),
        (1e8, [0.000035, 0.00003, 0.000027, 0.000024]),
    ];
    for (n, printed) in rows {
        for (kappa, want) in KAPPAS.into_iter().zip(printed) {
            let p = bhattacharyya_at_extreme_point(n, kappa)
                .map_err(|e| e.to_string())?
                .probability
                .ok_or("missing probability")?;
            check_rel(&format!("Bhattacharyya at ({n}, {kappa})"), p, want, 0.02)?;
            if n >= 1e5 && p <= 10.0 / n {
                return Err(format!("bound {p} not above 10/N at ({n}, {kappa})"));
            }
        }
    }
    Ok(())
}

fn breach_horizons() -> Outcome {
    for (k, kappa, printed) in [
        (13.115, 7.0, 5_000u64),
        (16.765, 10.0, 9_000),
        (19.579, 13.0, 12_250),
        (21.886, 16.0, 15_250),
    ] {
        let n = max_safe_history(k, kappa)
            .map_err(|e| e.to_string())?
            .bounded()
            .ok_or_else(|| format!("no bounded history for ({k}, {kappa})"))?;
        if n.abs_diff(printed) > 500 {
            return Err(format!("({k}, {kappa}): {n} vs {printed}"));
        }
    }
    Ok(())
}

fn appendix_table() -> Outcome {
    let printed: [(usize, [f64; 4]); 7] = [
        (500, [9.35, 9.30, 9.30, 9.26]),
        (1000, [11.10, 11.03, 11.04, 10.99]),
        (2000, [13.19, 13.10, 13.10, 13.04]),
        (3000, [14.59, 14.49, 14.49, 14.42]),
        (4000, [15.68, 15.56, 15.56, 15.49]),
        (5000, [16.57, 16.45, 16.45, 16.37]),
        (10000, [19.70, 19.55, 19.55, 19.45]),
    ];
    let counts: Vec<usize> = printed.iter().map(|r| r.0).collect();
    let rows = comparison_table(&counts, 16.0).map_err(|e| e.to_string())?;
    for (row, (m, want)) in rows.iter().zip(printed) {
        for (shape, w) in BaseShape::ALL.into_iter().zip(want) {
            check_close(&format!("{} at {m}", shape.name()), row.get(shape), w, 0.02)?;
        }
        let others = [row.trimodal, row.two_thirds, row.uniform];
        if others.iter().any(|&v| v > row.bimodal) {
            return Err(format!("bimodal not largest at {m}"));
        }
        let lowest = others.iter().cloned().fold(f64::INFINITY, f64::min);
        if (row.bimodal - lowest) / row.bimodal > 0.015 {
            return Err(format!("shapes differ by more than 1.5% at {m}"));
        }
    }
    Ok(())
}

fn oracle_suite() -> Outcome {
    for n in [11u64, 101, 1001, 10001] {
        let range = feasible_kurtosis_range(n as f64).map_err(|e| e.to_string())?;
        let width = range.kappa_max - range.kappa_min;
        for frac in [0.05, 0.25, 0.5, 0.75, 1.0] {
            let kappa = range.kappa_min + frac * width;
            let sol = solve_extreme_point(n as f64, kappa).map_err(|e| e.to_string())?;
            let data = construct_distribution(n, kappa).map_err(|e| e.to_string())?;
            let m = oracle_moments(&data).map_err(|e| e.to_string())?;
            let at = format!("N = {n}, κ = {kappa}");
            check_close(&format!("mean {at}"), m.mean, 0.0, 1e-9)?;
            check_rel(&format!("variance {at}"), m.variance, 1.0, 1e-9)?;
            check_rel(&format!("θ₃ {at}"), m.skewness, third_moment(&sol), 1e-9)?;
            check_rel(&format!("κ {at}"), m.kurtosis, kappa, 1e-9)?;
            let max = data
                .iter()
                .map(|x| (x - m.mean) / m.sigma())
                .fold(f64::MIN, f64::max);
            check_rel(&format!("max/σ {at}"), max, sol.a, 1e-9)?;
        }
    }
    Ok(())
}

fn property_suite() -> Outcome {
    // monotonicity in N and κ over random feasible pairs
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = (0.8f64..7.0, 0.01f64..0.99, 0.0f64..1.0);
    runner
        .run(&strategy, |(log_n, frac, step)| {
            let n = 10f64.powf(log_n).round().max(6.0);
            let r = feasible_kurtosis_range(n).unwrap();
            let kappa = r.kappa_min + frac * (r.kappa_max - r.kappa_min);
            let here = solve_extreme_point(n, kappa).unwrap().a;
            let next_n = solve_extreme_point(n + 1.0, kappa).unwrap().a;
            prop_assert!(next_n > here, "a not increasing in N at ({}, {})", n, kappa);
            let k2 = kappa + step * (r.kappa_max - kappa);
            let next_k = solve_extreme_point(n, k2).unwrap().a;
            prop_assert!(
                next_k >= here,
                "a not increasing in κ at ({}, {})",
                n,
                kappa
            );
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    // Samuelson recovery at κ_max
    for n in [5.0, 6.0, 11.0, 250.0, 10_000.0, 1e6, 1e8] {
        let kmax = feasible_kurtosis_range(n)
            .map_err(|e| e.to_string())?
            .kappa_max;
        check_rel(
            &format!("a at κ_max, N = {n}"),
            a(n, kmax)?,
            (n - 1.0).sqrt(),
            1e-9,
        )?;
    }

    // domain rejection
    let rejected = [
        matches!(
            zelen_bound(0.5, 0.0, 3.0),
            Err(Error::ZelenThreshold { .. })
        ),
        matches!(
            zelen_bound(2.0, 2.0, 10.0),
            Err(Error::ZelenThreshold { .. })
        ),
        matches!(zelen_bound(3.0, 0.0, 1.0), Err(Error::MomentInfeasible(_))),
        matches!(zelen_bound(3.0, 1.0, 1.5), Err(Error::MomentInfeasible(_))),
        matches!(
            bhattacharyya_bound(1.0, 0.5, 5.0),
            Err(Error::BhattacharyyaThreshold(_))
        ),
        matches!(
            bhattacharyya_bound(3.0, 2.0, 4.0),
            Err(Error::BhattacharyyaMoments(_))
        ),
        bhattacharyya_bound(f64::NAN, 0.0, 3.0).is_err(),
        zelen_bound(3.0, 0.0, 3.0).is_ok() && bhattacharyya_bound(3.0, 0.0, 3.0).is_ok(),
    ];
    if let Some(i) = rejected.iter().position(|ok| !ok) {
        return Err(format!("domain check #{i} did not behave as expected"));
    }

    // CSV round trip at full precision
    let values: Vec<f64> = construct_distribution(101, 7.0).map_err(|e| e.to_string())?;
    let mut doc = OutputDocument::new("series", ["date", "value"]);
    for (i, &v) in values.iter().enumerate() {
        doc.push_row(vec![Cell::text(format!("2020-01-{i:03}")), Cell::Number(v)])
            .map_err(|e| e.to_string())?;
    }
    let csv = doc.to_csv(Precision::Full).map_err(|e| e.to_string())?;
    let (parsed, dates) = parse_returns_csv(csv.as_bytes()).map_err(|e| e.to_string())?;
    if parsed != values || dates.map(|d| d.len()) != Some(values.len()) {
        return Err("CSV round trip changed the series".into());
    }

    // end-to-end exit code on the FAIL case
    let out = Command::new(env!("CARGO_BIN_EXE_kurtbound"))
        .args([
            "validate",
            "--tail-factor",
            "7",
            "--history",
            "500",
            "--kurtosis",
            "7",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    match out.status.code() {
        Some(2) => {}
        other => return Err(format!("validate FAIL case exited with {other:?}")),
    }
    if !String::from_utf8_lossy(&out.stdout).contains("verdict,FAIL") {
        return Err("validate output lacks the FAIL verdict".into());
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 shock table a(N, kappa)", table_1),
        ("2 Student-t tail factors and quantile round trip", table_2),
        ("3 normal quantile at 1 - 1e-6", normal_example),
        ("4 fourth-moment Chebyshev endpoint", table_4),
        ("5 Zelen one-in-N", table_7),
        ("6 Bhattacharyya probabilities", table_8),
        ("7 breach horizons", breach_horizons),
        ("8 alternative base shapes", appendix_table),
        ("9 constructed-dataset oracle", oracle_suite),
        ("10 properties and CLI exit code", property_suite),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("PASS  criterion {name}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
