//! Fast versions of the exact identity suites, for checking an installed build.

use crate::Failure;
use freeclt::algebra::{binomial, factorial, rational, Rational};
use freeclt::clt::{build_lin_matrix, eigencheck, iterate_t};
use freeclt::cumulants::{
    bernoulli_moments, cumulants_to_moments, cumulants_to_moments_by_partitions, moments_to_cumulants,
};
use freeclt::partitions::{count_profile, BlockProfile, DEFAULT_MAX_GROUND_SIZE};
use freeclt::special::{lemma_fn_identity, rothe_identity};
use freeclt::{Flavor, Kind, QSqrt2, Sequence};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Suite = fn(u64) -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn s(e: freeclt::Error) -> String {
    e.to_string()
}

fn profile_counts(_: u64) -> Result<String, String> {
    let mut n_checked = 0;
    for n in 1..=10usize {
        for k in 0..=(10 - n) / 2 {
            let p = BlockProfile::new(n, k).map_err(s)?;
            let free = count_profile(p, Flavor::Free, DEFAULT_MAX_GROUND_SIZE).map_err(s)?;
            ensure(free == binomial((n + 2 * k) as u64, k as u64), || format!("free n={n} k={k}"))?;
            let classical = count_profile(p, Flavor::Classical, DEFAULT_MAX_GROUND_SIZE).map_err(s)?;
            let want = factorial((n + 2 * k) as u64) / (BigInt::from(n) * factorial(k as u64) * (BigInt::from(1) << k));
            ensure(classical == want, || format!("classical n={n} k={k}"))?;
            n_checked += 2;
        }
    }
    Ok(format!("{n_checked} profiles"))
}

fn transforms(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..200 {
        let flavor = Flavor::ALL[i % 2];
        let len = rng.gen_range(1..=8);
        let xs: Vec<Rational> = (0..len).map(|_| rational(rng.gen_range(-20..=20), rng.gen_range(1..=9))).collect();
        let m = Sequence::from_rationals(flavor, Kind::Moments, xs.clone()).map_err(s)?;
        let c = moments_to_cumulants(&m).map_err(s)?;
        ensure(cumulants_to_moments(&c).map_err(s)? == m, || format!("round trip {flavor} {xs:?}"))?;
        let slow = cumulants_to_moments_by_partitions(&c, DEFAULT_MAX_GROUND_SIZE).map_err(s)?;
        ensure(slow == m, || format!("partition sum {flavor} {xs:?}"))?;
    }
    Ok("200 random sequences".into())
}

fn eigenvectors(_: u64) -> Result<String, String> {
    for flavor in Flavor::ALL {
        let v = eigencheck(flavor, 12).map_err(s)?;
        ensure(v.iter().all(|v| v.exact), || format!("{flavor} eigencheck"))?;
    }
    Ok("24 columns".into())
}

fn cumulant_decay(_: u64) -> Result<String, String> {
    for flavor in Flavor::ALL {
        let report = iterate_t(&bernoulli_moments(flavor, 8), 6).map_err(s)?;
        ensure(report.decay_exact, || format!("{flavor} decay"))?;
        ensure(report.gaps_strictly_decreasing(), || format!("{flavor} gaps"))?;
        for step in &report.history {
            let c4 = step.cumulants.get(4).expect("length 8");
            let c4_0 = report.history[0].cumulants.get(4).expect("length 8");
            // 2^{n(1-4/2)} = 2^{-n}
            let want = c4_0.scale(&Rational::new(1.into(), BigInt::from(1) << step.step));
            ensure(*c4 == want, || format!("{flavor} c_4 at step {}", step.step))?;
        }
    }
    Ok("Bernoulli start, 6 steps".into())
}

fn fourier(_: u64) -> Result<String, String> {
    let a = build_lin_matrix(Flavor::Classical, 20).map_err(s)?;
    for n in 1..=20usize {
        for k in 0..=(20 - n) / 2 {
            let lhs = a.get(n + 2 * k, n) / Rational::from_integer(factorial((n + 2 * k) as u64));
            let rhs = rational(1, n as i64) / Rational::from_integer(factorial(k as u64) * (BigInt::from(1) << k));
            ensure(lhs == rhs, || format!("n={n} k={k}"))?;
        }
    }
    Ok("n + 2k <= 20".into())
}

fn series_identities(_: u64) -> Result<String, String> {
    for n in 1..=4 {
        ensure(lemma_fn_identity(n, 20).map_err(s)?, || format!("lemma n={n}"))?;
    }
    for n in 1..=6 {
        for m in 1..=6 {
            for t in 0..=6 {
                let (l, r) = rothe_identity(n, m, t).map_err(s)?;
                ensure(l == r, || format!("Rothe n={n} m={m} t={t}"))?;
            }
        }
    }
    ensure(QSqrt2::sqrt2().pow(2) == QSqrt2::from_int(2), || "sqrt2".into())?;
    Ok("lemma n <= 4, Rothe n, m, t <= 6".into())
}

pub fn run(seed: u64) -> Result<String, Failure> {
    let suites: [(&str, Suite); 6] = [
        ("profile counts", profile_counts),
        ("moment-cumulant transforms", transforms),
        ("eigenvectors of the linearization", eigenvectors),
        ("cumulant decay", cumulant_decay),
        ("Fourier coefficients", fourier),
        ("series identities", series_identities),
    ];
    let mut report = String::new();
    let mut failed = false;
    for (name, suite) in suites {
        match suite(seed) {
            Ok(detail) => report.push_str(&format!("ok    {name}: {detail}\n")),
            Err(detail) => {
                failed = true;
                report.push_str(&format!("FAIL  {name}: {detail}\n"));
            }
        }
    }
    if failed {
        Err(Failure::Check(report))
    } else {
        Ok(report)
    }
}
