//! Acceptance gate: every criterion at its stated tolerance and time budget.
//! Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

use freeclt::algebra::{binomial, catalan, double_factorial_odd, factorial, rational, Rational};
use freeclt::analytic::{
    dt_action_on_psi, eigen_cauchy_transform, eigen_density, free_convolve, pde_theorem_check, semicircle_g,
    stieltjes_density, transition_omega, AnalyticMeasure, Complex64 as C, EigenParameter, Grid, Polynomial,
    StieltjesOptions, BETA,
};
use freeclt::clt::{build_lin_matrix, eigencheck, iterate_t};
use freeclt::cumulants::{
    bernoulli_moments, cumulants_to_moments, cumulants_to_moments_by_partitions, moments_to_cumulants,
    moments_to_cumulants_by_partitions, normal_moments,
};
use freeclt::partitions::{count_profile, BlockProfile, DEFAULT_MAX_GROUND_SIZE};
use freeclt::special::{
    chebyshev_quadrature_moments, fourier_identity_holds, lemma_fn_identity, rothe_identity,
    DEFAULT_QUADRATURE_NODES,
};
use freeclt::{Flavor, Kind, QSqrt2, Sequence};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn kreweras() -> Outcome {
    let mut checked = 0;
    for n in 1..=13usize {
        for k in 0..=(13 - n) / 2 {
            let p = BlockProfile::new(n, k).map_err(|e| e.to_string())?;
            let brute = count_profile(p, Flavor::Free, DEFAULT_MAX_GROUND_SIZE).map_err(|e| e.to_string())?;
            let want = binomial((n + 2 * k) as u64, k as u64);
            ensure(brute == want, || format!("n={n} k={k}: {brute} != {want}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} profiles"))
}

fn classical_count() -> Outcome {
    let mut checked = 0;
    for n in 1..=13usize {
        for k in 0..=(13 - n) / 2 {
            let p = BlockProfile::new(n, k).map_err(|e| e.to_string())?;
            let brute = count_profile(p, Flavor::Classical, DEFAULT_MAX_GROUND_SIZE).map_err(|e| e.to_string())?;
            let want = factorial((n + 2 * k) as u64) / (BigInt::from(n) * factorial(k as u64) * (BigInt::from(1) << k));
            ensure(brute == want, || format!("n={n} k={k}: {brute} != {want}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} profiles"))
}

fn random_rationals(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    (0..len)
        .map(|_| rational(rng.gen_range(-40..=40), rng.gen_range(1..=12)))
        .collect()
}

fn transform_bijection() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let err = |e: freeclt::Error| e.to_string();
    for i in 0..500 {
        let flavor = Flavor::ALL[i % 2];
        let len = rng.gen_range(1..=10);
        let xs = random_rationals(&mut rng, len);
        let m = Sequence::from_rationals(flavor, Kind::Moments, xs.clone()).map_err(err)?;
        let back = cumulants_to_moments(&moments_to_cumulants(&m).map_err(err)?).map_err(err)?;
        ensure(back == m, || format!("m -> c -> m failed for {flavor} {xs:?}"))?;
        let c = Sequence::from_rationals(flavor, Kind::Cumulants, xs.clone()).map_err(err)?;
        let back = moments_to_cumulants(&cumulants_to_moments(&c).map_err(err)?).map_err(err)?;
        ensure(back == c, || format!("c -> m -> c failed for {flavor} {xs:?}"))?;
    }
    let mut oracle_checks = 0;
    for flavor in Flavor::ALL {
        for len in 1..=12 {
            let xs = random_rationals(&mut rng, len);
            let c = Sequence::from_rationals(flavor, Kind::Cumulants, xs.clone()).map_err(err)?;
            let fast = cumulants_to_moments(&c).map_err(err)?;
            let slow = cumulants_to_moments_by_partitions(&c, DEFAULT_MAX_GROUND_SIZE).map_err(err)?;
            ensure(fast == slow, || format!("{flavor} c -> m paths differ at length {len}"))?;
            let m = Sequence::from_rationals(flavor, Kind::Moments, xs).map_err(err)?;
            let fast = moments_to_cumulants(&m).map_err(err)?;
            let slow = moments_to_cumulants_by_partitions(&m, DEFAULT_MAX_GROUND_SIZE).map_err(err)?;
            ensure(fast == slow, || format!("{flavor} m -> c paths differ at length {len}"))?;
            oracle_checks += 2;
        }
    }
    Ok(format!("1000 round trips, {oracle_checks} oracle comparisons"))
}

fn eigen_relation() -> Outcome {
    for flavor in Flavor::ALL {
        let verdicts = eigencheck(flavor, 16).map_err(|e| e.to_string())?;
        for v in &verdicts {
            let want = QSqrt2::sqrt2().pow(2) * QSqrt2::beta().pow(v.column as u32);
            ensure(v.eigenvalue == want, || format!("{flavor} column {}: eigenvalue {}", v.column, v.eigenvalue))?;
            ensure(v.exact, || format!("{flavor} column {} is not an exact eigenvector", v.column))?;
        }
    }
    Ok("32 columns exact".into())
}

fn clt_decay() -> Outcome {
    let err = |e: freeclt::Error| e.to_string();
    for flavor in Flavor::ALL {
        let start = bernoulli_moments(flavor, 10);
        let report = iterate_t(&start, 8).map_err(err)?;
        let c0 = moments_to_cumulants(&start).map_err(err)?;
        for step in &report.history {
            for k in 1..=10usize {
                // 2^{n(1 - k/2)} = (2·β^k)^n with β = √2/2
                let factor = (QSqrt2::from_int(2) * QSqrt2::beta().pow(k as u32)).pow(step.step as u32);
                let want = &factor * c0.get(k).unwrap();
                ensure(step.cumulants.get(k).unwrap() == &want, || {
                    format!("{flavor} step {} c_{k} = {} != {want}", step.step, step.cumulants.get(k).unwrap())
                })?;
            }
        }
        ensure(report.decay_exact, || format!("{flavor}: decay flag false"))?;
        ensure(report.gaps_strictly_decreasing(), || format!("{flavor}: gaps not strictly decreasing"))?;
        let limit = normal_moments(flavor, 10);
        for k in 1..=10usize {
            let want = if k % 2 == 1 {
                BigInt::from(0)
            } else {
                match flavor {
                    Flavor::Free => catalan((k / 2) as u64),
                    Flavor::Classical => double_factorial_odd((k / 2) as u64),
                }
            };
            ensure(limit.get(k).unwrap() == &QSqrt2::from_rational(Rational::from_integer(want.clone())), || {
                format!("{flavor} limit m_{k} != {want}")
            })?;
            let gap = |n: usize| (report.history[n].moments.get(k).unwrap() - limit.get(k).unwrap()).abs();
            ensure(gap(8) <= gap(0), || format!("{flavor} m_{k} does not approach the limit"))?;
        }
    }
    Ok("k <= 10, n <= 8, both flavors".into())
}

fn fourier() -> Outcome {
    let a = build_lin_matrix(Flavor::Classical, 30).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for n in 1..=30usize {
        for k in 0..=(30 - n) / 2 {
            let lhs = a.get(n + 2 * k, n) / Rational::from_integer(factorial((n + 2 * k) as u64));
            let rhs = rational(1, n as i64)
                / Rational::from_integer(factorial(k as u64) * (BigInt::from(1) << k));
            ensure(lhs == rhs, || format!("n={n} k={k}: {lhs} != {rhs}"))?;
            checked += 1;
        }
        ensure(fourier_identity_holds(n, 30).map_err(|e| e.to_string())?, || {
            format!("series identity fails for n={n}")
        })?;
    }
    Ok(format!("{checked} entries"))
}

fn lemma_rothe() -> Outcome {
    for n in 1..=6 {
        ensure(lemma_fn_identity(n, 30).map_err(|e| e.to_string())?, || format!("lemma fails for n={n}"))?;
    }
    let mut checked = 0;
    for n in 1..=10 {
        for m in 1..=10 {
            for t in 0..=10 {
                let (lhs, rhs) = rothe_identity(n, m, t).map_err(|e| e.to_string())?;
                ensure(lhs == rhs, || format!("n={n} m={m} t={t}: {lhs} != {rhs}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("lemma n <= 6, {checked} Rothe cases"))
}

fn table(m: &AnalyticMeasure) -> (&[f64], &[f64]) {
    match m {
        AnalyticMeasure::DensityTable { grid, values } => (grid, values),
        _ => panic!("free_convolve returns a density table"),
    }
}

fn free_convolution() -> Outcome {
    let chi = AnalyticMeasure::standard_semicircle();
    let grid = Grid::new(-3.0, 3.0, 601).map_err(|e| e.to_string())?;
    let out = free_convolve(&chi, &chi, &grid).map_err(|e| e.to_string())?;
    let (xs, vs) = table(&out);
    let r = 2.0 * std::f64::consts::SQRT_2;
    let semi = |x: f64| {
        if x.abs() >= r {
            0.0
        } else {
            2.0 / (PI * r * r) * (r * r - x * x).sqrt()
        }
    };
    let sup = xs.iter().zip(vs).map(|(&x, &v)| (v - semi(x)).abs()).fold(0.0, f64::max);
    ensure(sup <= 1e-3, || format!("semicircle sup error {sup:.3e}"))?;

    let cauchy = AnalyticMeasure::standard_cauchy();
    let grid = Grid::new(-10.0, 10.0, 100).map_err(|e| e.to_string())?;
    let out = free_convolve(&cauchy, &cauchy, &grid).map_err(|e| e.to_string())?;
    let (xs, vs) = table(&out);
    let cauchy2 = |x: f64| 2.0 / (PI * (x * x + 4.0));
    let worst = xs.iter().zip(vs).map(|(&x, &v)| (v - cauchy2(x)).abs()).fold(0.0, f64::max);
    ensure(worst <= 1e-4, || format!("Cauchy pointwise error {worst:.3e}"))?;
    Ok(format!("semicircle sup {sup:.2e}, Cauchy max {worst:.2e}"))
}

fn upper_grid(n_re: usize, n_im: usize) -> Vec<C> {
    let mut out = Vec::new();
    for i in 0..n_re {
        for j in 0..n_im {
            let re = -3.0 + 6.0 * i as f64 / (n_re - 1) as f64;
            let im = 0.25 * 3f64.powi(j as i32);
            out.push(C::new(re, im));
        }
    }
    out
}

fn pde() -> Outcome {
    let chi = AnalyticMeasure::standard_semicircle();
    let points = upper_grid(5, 4);
    let mut worst: f64 = 0.0;
    for k in 1..=3 {
        let psi = Polynomial::monomial(k);
        for &z in &points {
            let r = pde_theorem_check(&chi, &psi, z).map_err(|e| e.to_string())?.residual;
            ensure(r <= 1e-6, || format!("psi = w^{k}, z = {z}: residual {r:.3e}"))?;
            worst = worst.max(r);
        }
    }
    Ok(format!("{} points, max residual {worst:.2e}", points.len()))
}

fn section_bridge() -> Outcome {
    let a = build_lin_matrix(Flavor::Free, 12).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for n in 1..=4usize {
        let quad = chebyshev_quadrature_moments(n, n + 8, DEFAULT_QUADRATURE_NODES).map_err(|e| e.to_string())?;
        for (j, q) in quad.iter().enumerate() {
            let exact = a.get(j + 1, n);
            let exact = exact.numer().to_string().parse::<f64>().unwrap() / exact.denom().to_string().parse::<f64>().unwrap();
            let e = (q - exact).abs();
            ensure(e <= 1e-8, || format!("n={n} order {}: {q} vs {exact}", j + 1))?;
            worst = worst.max(e);
        }
    }
    let params = [
        EigenParameter::integer(2),
        EigenParameter::integer(3),
        EigenParameter::new(1.5, 0.5, 0.25).map_err(|e| e.to_string())?,
        EigenParameter::new(-0.5, 0.0, 0.0).map_err(|e| e.to_string())?,
    ];
    let opts = StieltjesOptions::default();
    let mut worst_st: f64 = 0.0;
    for p in &params {
        for i in 0..10 {
            let t = -1.8 + 3.6 * i as f64 / 9.0;
            let got = stieltjes_density(|z| eigen_cauchy_transform(p, z), t, &opts).map_err(|e| e.to_string())?;
            let want = eigen_density(p, t).map_err(|e| e.to_string())? / PI;
            let e = (got - want).abs();
            ensure(e <= 1e-4, || format!("{p:?} t={t}: {got} vs {want}"))?;
            worst_st = worst_st.max(e);
        }
    }
    Ok(format!("moments max {worst:.1e}, boundary values max {worst_st:.1e}"))
}

fn omega() -> Outcome {
    let points = upper_grid(10, 5);
    let mut worst: f64 = 0.0;
    for &z in &points {
        let w = transition_omega(z).map_err(|e| e.to_string())?;
        let r = (semicircle_g(w) - BETA * semicircle_g(z)).norm();
        ensure(r <= 1e-9, || format!("z={z}: conjugacy residual {r:.3e}"))?;
        worst = worst.max(r);
    }
    let chi = AnalyticMeasure::standard_semicircle();
    let mut worst_rel: f64 = 0.0;
    for n in 1..=5i32 {
        let psi = |z: C| chi.derivative(z) * chi.evaluate(z).powi(n - 1);
        let lambda = 2f64.powf(1.0 - n as f64 / 2.0);
        for &z in &upper_grid(5, 4) {
            let got = dt_action_on_psi(&psi, z).map_err(|e| e.to_string())?;
            let want = lambda * psi(z);
            let rel = (got - want).norm() / want.norm();
            ensure(rel <= 1e-6, || format!("n={n} z={z}: relative error {rel:.3e}"))?;
            worst_rel = worst_rel.max(rel);
        }
    }
    Ok(format!(
        "{} points residual {worst:.1e}, eigen max rel {worst_rel:.1e}",
        points.len()
    ))
}

struct Criterion {
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { name: "Kreweras noncrossing profile count", budget: secs(60), run: kreweras },
        Criterion { name: "classical profile count", budget: secs(60), run: classical_count },
        Criterion { name: "moment-cumulant bijection and oracle agreement", budget: None, run: transform_bijection },
        Criterion { name: "exact eigen relation of DT at the normal law", budget: secs(30), run: eigen_relation },
        Criterion { name: "central limit cumulant decay", budget: None, run: clt_decay },
        Criterion { name: "Fourier identity of classical columns", budget: None, run: fourier },
        Criterion { name: "Lemma and Rothe identities", budget: None, run: lemma_rothe },
        Criterion { name: "free additive convolution", budget: secs(60), run: free_convolution },
        Criterion { name: "transport equation residual", budget: None, run: pde },
        Criterion { name: "Chebyshev moments and boundary values", budget: None, run: section_bridge },
        Criterion { name: "transition function conjugacy", budget: None, run: omega },
    ];
    let mut failures = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS  {:>2}  {}  ({elapsed:.2?})  {detail}", i + 1, c.name),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {:>2}  {}  ({elapsed:.2?})  {detail}", i + 1, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
