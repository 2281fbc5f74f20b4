//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use common::{q, Q};
use tableau_descents::characters::{
    character_via_descent_weights, joint_descent_probabilities, normalized_character,
    r22_frobenius, r2_frobenius, weight_sum_2, weight_sum_22, weight_sum_3,
};
use tableau_descents::{
    count_syt, enumerate_syt, expected_descent_statistic, expected_maj, hecke_exponents,
    maj_generating_function, mn_character, moments_from_genfun, run_concentration_experiment,
    sample_tableaux, variance_descent_statistic, variance_maj, ConcentrationConfig, CycleType,
    DescentFunction, QPolynomial, RandomSource,
};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cap() -> u64 {
    u64::MAX
}

fn cycle(mu: &[usize]) -> CycleType {
    CycleType::new(common::shape(mu))
}

fn rows_of(t: &tableau_descents::StandardTableau) -> Vec<usize> {
    (1..=t.n()).map(|m| t.row_of(m).unwrap() - 1).collect()
}

fn ac1() -> Check {
    let start = Instant::now();
    let mut shapes = 0;
    for n in 1..=9 {
        let parts = common::partitions(n);
        if n == 9 {
            ensure(parts.len() == 30, || format!("{} partitions of 9", parts.len()))?;
        }
        for p in parts {
            let lambda = common::shape(&p);
            let listed = enumerate_syt(&lambda, cap()).map_err(|e| e.to_string())?.count();
            let formula = count_syt(&lambda).map_err(|e| e.to_string())?;
            let oracle = common::tableaux(&p).len();
            ensure(
                formula == listed.into() && listed == oracle,
                || format!("{lambda}: listed {listed}, formula {formula}, oracle {oracle}"),
            )?;
            shapes += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("{shapes} shapes, {elapsed:.2?}"))
}

fn ac2() -> Check {
    for n in 1..=9 {
        for p in common::partitions(n) {
            let all = common::tableaux(&p);
            let top = all.iter().map(|t| common::maj(t)).max().unwrap_or(0);
            let mut coeffs = vec![0u64; top + 1];
            for t in &all {
                coeffs[common::maj(t)] += 1;
            }
            let brute = QPolynomial::from_coeffs(coeffs);
            let g = maj_generating_function(&common::shape(&p)).map_err(|e| e.to_string())?;
            ensure(g == brute, || format!("{p:?}: {g} vs {brute}"))?;
        }
    }
    let mut shapes = 0;
    for n in 1..=20 {
        for p in common::partitions(n) {
            let lambda = common::shape(&p);
            let at_one = maj_generating_function(&lambda).map_err(|e| e.to_string())?.eval_at_one();
            let count = count_syt(&lambda).map_err(|e| e.to_string())?;
            ensure(
                at_one == BigInt::from(count.clone())
                    && count == common::hook_product_count(&p),
                || format!("{lambda}: g(1) = {at_one}, count {count}"),
            )?;
            shapes += 1;
        }
    }
    Ok(format!("coefficientwise through n=9, g(1) on {shapes} shapes through n=20"))
}

fn ac3() -> Check {
    for n in 1..=12 {
        let maj_values: Vec<Q> = (1..=n.max(2) as i64).map(|i| q(i, 1)).collect();
        for p in common::partitions(n) {
            let lambda = common::shape(&p);
            let (e, v) = (expected_maj(&lambda), variance_maj(&lambda));
            let g = moments_from_genfun(&lambda).map_err(|e| e.to_string())?;
            ensure(g.mean == e && g.variance == v, || {
                format!("{lambda}: closed ({e}, {v}) vs generating function ({}, {})", g.mean, g.variance)
            })?;
            if n <= 8 {
                let (me, mv) = common::enumerated_mean_var(&p, &maj_values);
                ensure(me == e && mv == v, || format!("{lambda}: closed ({e}, {v}) vs enumeration ({me}, {mv})"))?;
            }
        }
    }
    let anchor = common::shape(&[2, 2]);
    ensure(
        expected_maj(&anchor) == q(3, 1) && variance_maj(&anchor) == q(1, 1),
        || "(2,2) anchor".into(),
    )?;
    Ok("enumeration through n=8, generating function through n=12, (2,2) -> 3, 1".into())
}

fn ac4_ac8(variance: bool) -> Check {
    let mut cases = 0;
    for n in 1..=8 {
        for p in common::partitions(n) {
            let lambda = common::shape(&p);
            for tf in common::test_functions(n.saturating_sub(1)) {
                let (me, mv) = common::enumerated_mean_var(&p, &tf.values);
                let got = if variance {
                    variance_descent_statistic(&lambda, &tf.f)
                } else {
                    expected_descent_statistic(&lambda, &tf.f)
                }
                .map_err(|e| e.to_string())?;
                let want = if variance { mv } else { me };
                ensure(got == want, || format!("{lambda} {}: {got} vs enumeration {want}", tf.name))?;
                cases += 1;
            }
        }
    }
    let lambda = common::shape(&[5, 4, 2, 1]);
    let anchor = common::shape(&[2, 2]);
    if variance {
        let v = variance_descent_statistic(&anchor, &DescentFunction::Des).map_err(|e| e.to_string())?;
        ensure(v == q(1, 4), || format!("(2,2) Var[des] = {v}"))?;
        Ok(format!("{cases} cases, (2,2) Var[des] = 1/4"))
    } else {
        let d = expected_descent_statistic(&lambda, &DescentFunction::Des).map_err(|e| e.to_string())?;
        let m = expected_descent_statistic(&lambda, &DescentFunction::Maj).map_err(|e| e.to_string())?;
        ensure(d == q(5, 1) && m == q(30, 1), || format!("(5,4,2,1): E[des] = {d}, E[maj] = {m}"))?;
        Ok(format!("{cases} cases, (5,4,2,1) E[des] = 5, E[maj] = 30"))
    }
}

fn ac5() -> Check {
    let mut cases = 0;
    for n in 2..=8 {
        for p in common::partitions(n) {
            let lambda = common::shape(&p);
            let err = |e: tableau_descents::Error| e.to_string();
            let chi2 = mn_character(&lambda, &cycle(&common::cycle_type(&[2], n))).map_err(err)?;
            ensure(chi2 == common::character(&p, &common::cycle_type(&[2], n)), || {
                format!("{lambda}: character at (2,1..) disagrees with the border-strip oracle")
            })?;
            for i in 1..n {
                let s = weight_sum_2(&lambda, i, cap()).map_err(err)?;
                ensure(s == chi2, || format!("{lambda} i={i}: weight sum {s}, character {chi2}"))?;
                cases += 1;
            }
            if n >= 3 {
                let mu = common::cycle_type(&[3], n);
                let chi3 = mn_character(&lambda, &cycle(&mu)).map_err(err)?;
                ensure(chi3 == common::character(&p, &mu), || format!("{lambda}: (3,1..) oracle"))?;
                for i in 1..n - 1 {
                    let s = weight_sum_3(&lambda, i, cap()).map_err(err)?;
                    ensure(s == chi3, || format!("{lambda} i={i}: weight sum {s}, character {chi3}"))?;
                    cases += 1;
                }
            }
            if n >= 4 {
                let mu = common::cycle_type(&[2, 2], n);
                let chi22 = mn_character(&lambda, &cycle(&mu)).map_err(err)?;
                ensure(chi22 == common::character(&p, &mu), || format!("{lambda}: (2,2,1..) oracle"))?;
                for i in 1..n {
                    for j in i + 2..n {
                        let s = weight_sum_22(&lambda, i, j, cap()).map_err(err)?;
                        ensure(s == chi22, || {
                            format!("{lambda} i={i} j={j}: weight sum {s}, character {chi22}")
                        })?;
                        cases += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{cases} index choices through n=8"))
}

fn ac6() -> Check {
    let mut pairs = 0;
    for n in 1..=7 {
        let classes = common::partitions(n);
        let mut table = Vec::new();
        for p in &classes {
            let lambda = common::shape(p);
            let mut row = Vec::new();
            for m in &classes {
                let a = character_via_descent_weights(&lambda, &cycle(m), cap()).map_err(|e| e.to_string())?;
                let b = mn_character(&lambda, &cycle(m)).map_err(|e| e.to_string())?;
                let c = common::character(p, m);
                ensure(a == b && b == c, || format!("λ={p:?} μ={m:?}: weights {a}, MN {b}, oracle {c}"))?;
                row.push(Q::from_integer(b));
                pairs += 1;
            }
            table.push(row);
        }
        let z: Vec<Q> = classes
            .iter()
            .map(|m| Q::from_integer(BigInt::from(common::centralizer(m))))
            .collect();
        for (a, ra) in table.iter().enumerate() {
            for (b, rb) in table.iter().enumerate() {
                let inner: Q = ra.iter().zip(rb).zip(&z).map(|((x, y), zz)| x * y / zz).sum();
                let want = if a == b { q(1, 1) } else { Q::zero() };
                ensure(inner == want, || format!("n={n}: rows {a}, {b} inner product {inner}"))?;
            }
        }
    }
    Ok(format!("{pairs} (λ, μ) pairs through n=7, tables orthonormal"))
}

fn ac7() -> Check {
    let mut cases = 0;
    for n in 4..=10 {
        for p in common::partitions(n) {
            let lambda = common::shape(&p);
            let err = |e: tableau_descents::Error| e.to_string();
            let f = Q::from_integer(BigInt::from(common::hook_product_count(&p)));
            let t2 = Q::from_integer(common::character(&p, &common::cycle_type(&[2], n))) / &f;
            let t22 = Q::from_integer(common::character(&p, &common::cycle_type(&[2, 2], n))) / &f;
            let r2 = r2_frobenius(&lambda).map_err(err)?;
            let r22 = r22_frobenius(&lambda).map_err(err)?;
            let m2 = normalized_character(&lambda, &cycle(&common::cycle_type(&[2], n))).map_err(err)?;
            let m22 = normalized_character(&lambda, &cycle(&common::cycle_type(&[2, 2], n))).map_err(err)?;
            ensure(r2 == m2 && m2 == t2 && r22 == m22 && m22 == t22, || {
                format!("{lambda}: frobenius ({r2}, {r22}), MN ({m2}, {m22}), oracle ({t2}, {t22})")
            })?;
            if n > 8 {
                continue;
            }
            let pr = joint_descent_probabilities(&lambda).map_err(err)?;
            let all = common::tableaux(&p);
            let total = all.len() as i64;
            let freq = |pred: &dyn Fn(&[usize]) -> bool| {
                q(all.iter().filter(|t| pred(&common::descents(t))).count() as i64, total)
            };
            for i in 1..n {
                let f2 = freq(&|d| d.contains(&i));
                ensure(f2 == pr.p2, || format!("{lambda} i={i}: P2 {} vs {f2}", pr.p2))?;
                if i + 1 < n {
                    let f3 = freq(&|d| d.contains(&i) && d.contains(&(i + 1)));
                    ensure(f3 == pr.p3, || format!("{lambda} i={i}: P3 {} vs {f3}", pr.p3))?;
                }
                for j in i + 2..n {
                    let f22 = freq(&|d| d.contains(&i) && d.contains(&j));
                    ensure(f22 == pr.p22, || format!("{lambda} i={i} j={j}: P22 {} vs {f22}", pr.p22))?;
                }
                cases += 1;
            }
        }
    }
    Ok(format!("probabilities through n=8 ({cases} positions), ratios through n=10"))
}

fn ac9() -> Check {
    let mut worst = 0.0f64;
    for (k, p) in [[3usize, 2, 0], [2, 2, 1], [3, 1, 1]].iter().enumerate() {
        let parts: Vec<usize> = p.iter().copied().filter(|&x| x > 0).collect();
        let lambda = common::shape(&parts);
        let all = common::tableaux(&parts);
        let f = all.len();
        let samples = 200 * f;
        let src = RandomSource::new(9_000 + k as u64, 0);
        let drawn = sample_tableaux(&lambda, samples, &src, 2).map_err(|e| e.to_string())?;
        let mut counts = vec![0usize; f];
        for t in &drawn {
            let rows = rows_of(t);
            let idx = all.iter().position(|a| *a == rows).ok_or("sampled tableau not in list")?;
            counts[idx] += 1;
        }
        let expected = samples as f64 / f as f64;
        let stat: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        let q999 = ChiSquared::new((f - 1) as f64).unwrap().inverse_cdf(0.999);
        ensure(stat < q999, || format!("{lambda}: chi-square {stat:.3} >= {q999:.3}"))?;
        worst = worst.max(stat / q999);

        let again = sample_tableaux(&lambda, samples, &src, 1).map_err(|e| e.to_string())?;
        let bytes = |v: &[tableau_descents::StandardTableau]| serde_json::to_vec(v).unwrap();
        ensure(bytes(&drawn) == bytes(&again), || format!("{lambda}: rerun differs"))?;
    }
    Ok(format!("largest statistic / quantile = {worst:.3}, reruns byte-identical"))
}

fn ac10() -> Check {
    let start = Instant::now();
    let lambda = common::shape(&[200, 200]);
    let f = DescentFunction::Maj;
    let mut cfg = ConcentrationConfig::new(0.5, 0.1, 1000, 2026).map_err(|e| e.to_string())?;
    cfg.workers = 4;
    let report = run_concentration_experiment(&cfg, &lambda, &f).map_err(|e| e.to_string())?;
    let n = 400f64;
    let t = n.powf(-0.4);
    let e = expected_descent_statistic(&lambda, &f).map_err(|e| e.to_string())?;
    let v = variance_descent_statistic(&lambda, &f).map_err(|e| e.to_string())?;
    let ratio = (&v / (&e * &e)).to_f64().unwrap();
    let bound = ratio / (t * t);
    let e_f = e.to_f64().unwrap();
    let outside = report.samples.iter().filter(|&&x| (x / e_f - 1.0).abs() > t).count();
    let fraction = outside as f64 / report.samples.len() as f64;
    ensure(report.samples.len() == 1000, || "sample count".into())?;
    ensure(fraction <= bound + 0.01, || format!("fraction {fraction} > bound {bound} + 0.01"))?;

    let mut scaled = Vec::new();
    for m in [50usize, 100, 200, 400] {
        let two_row = common::shape(&[m / 2, m / 2]);
        for g in [DescentFunction::Des, DescentFunction::Maj] {
            let e = expected_descent_statistic(&two_row, &g).map_err(|e| e.to_string())?;
            let v = variance_descent_statistic(&two_row, &g).map_err(|e| e.to_string())?;
            let s = (Q::from_integer(m.into()) * v / (&e * &e)).to_f64().unwrap();
            ensure(s <= 40.0, || format!("{two_row} {}: n Var/E^2 = {s}", g.label()))?;
            if matches!(g, DescentFunction::Maj) {
                scaled.push(format!("{s:.3}"));
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "outside fraction {fraction:.3} <= {:.3}; n Var/E^2 for maj: [{}]; {elapsed:.2?}",
        bound + 0.01,
        scaled.join(", ")
    ))
}

fn ac11() -> Check {
    let r = hecke_exponents(&common::shape(&[2, 2]), true, cap()).map_err(|e| e.to_string())?;
    let omega = r.omega_exponents.clone().unwrap_or_default();
    ensure(
        r.maj_exponent == q(3, 1) && r.des_exponent == q(3, 2) && omega == vec![0, 2],
        || format!("{r:?}"),
    )?;
    let all = common::tableaux(&[2, 2]);
    let mut from_oracle: Vec<usize> = all.iter().map(|t| common::maj(t) % 4).collect();
    from_oracle.sort();
    ensure(from_oracle == omega, || format!("oracle multiset {from_oracle:?}"))?;
    Ok("(3, 3/2, {0, 2})".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Check); 11] = [
        ("AC1", "hook formula matches enumeration", ac1),
        ("AC2", "maj generating function", ac2),
        ("AC3", "maj mean and variance", ac3),
        ("AC4", "expectation of descent statistics", || ac4_ac8(false)),
        ("AC5", "descent weight sums", ac5),
        ("AC6", "characters from descent weights", ac6),
        ("AC7", "joint descent probabilities and ratios", ac7),
        ("AC8", "variance of descent statistics", || ac4_ac8(true)),
        ("AC9", "sampler uniformity and determinism", ac9),
        ("AC10", "concentration at desk scale", ac10),
        ("AC11", "Hecke exponents", ac11),
    ];
    let mut failed = 0;
    for (id, what, check) in criteria {
        match check() {
            Ok(detail) => println!("[PASS] {id} {what}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {id} {what}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
