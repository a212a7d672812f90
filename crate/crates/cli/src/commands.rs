use crate::args::*;
use crate::manifest::Inputs;
use crate::{selftest, Failure};
use freeclt::algebra::format_rational;
use freeclt::analytic::{
    eigen_density, free_convolve, pde_theorem_check, AnalyticMeasure, EigenParameter,
};
use freeclt::clt::{build_lin_matrix, eigencheck, iterate_t};
use freeclt::cumulants::{cumulants_to_moments, moments_to_cumulants};
use freeclt::partitions::{count_profile, profile_closed_form, BlockProfile};
use freeclt::special::{
    chebyshev_density_moments, chebyshev_eigen_density, hermite_density_moments, hermite_eigen_density,
};
use freeclt::{wire, Error, Flavor, Sequence};
use serde_json::json;

/// Longest moment list `eigenfn` will build.
const MAX_ORDERS: usize = 256;
/// Most steps `clt iterate` will take.
const MAX_STEPS: usize = 256;
/// Half-width of the sampling window for classical eigenfunctions.
const HERMITE_WINDOW: f64 = 8.0;

pub fn seed_of(cmd: &Command) -> Option<u64> {
    match cmd {
        Command::Selftest(a) => Some(a.seed),
        _ => None,
    }
}

pub fn execute(cmd: &Command, inputs: &mut Inputs) -> Result<String, Failure> {
    match cmd {
        Command::Partitions(PartitionsCmd::Count(a)) => count(a),
        Command::Transform(a) => transform(a, inputs),
        Command::Clt(CltCmd::Iterate(a)) => iterate(a, inputs),
        Command::Clt(CltCmd::Matrix(a)) => matrix(a),
        Command::Clt(CltCmd::Eigencheck(a)) => check_eigen(a),
        Command::Eigenfn(a) => eigenfn(a),
        Command::Analytic(AnalyticCmd::Freeconv(a)) => freeconv(a, inputs),
        Command::Analytic(AnalyticCmd::Pdecheck(a)) => pdecheck(a, inputs),
        Command::Analytic(AnalyticCmd::Eigden(a)) => eigden(a),
        Command::Selftest(a) => selftest::run(a.seed),
    }
}

fn count(a: &CountArgs) -> Result<String, Failure> {
    let profile = BlockProfile::new(a.n, a.k)?;
    let flavor = a.flavor.into();
    let value = if a.oracle {
        count_profile(profile, flavor, a.max_ground_size)?
    } else {
        profile_closed_form(profile, flavor)
    };
    Ok(format!("{value}\n"))
}

fn read_sequence(path: &std::path::Path, flavor: Flavor, inputs: &mut Inputs) -> Result<Sequence, Failure> {
    let seq = wire::parse_sequence(&inputs.read(path)?)?;
    if seq.flavor() != flavor {
        return Err(Error::Mismatch(format!("input flavor is {}, --flavor is {flavor}", seq.flavor())).into());
    }
    Ok(seq)
}

fn transform(a: &TransformArgs, inputs: &mut Inputs) -> Result<String, Failure> {
    let seq = read_sequence(&a.input, a.flavor.into(), inputs)?;
    let out = match a.direction {
        Direction::M2c => moments_to_cumulants(&seq)?,
        Direction::C2m => cumulants_to_moments(&seq)?,
    };
    Ok(wire::sequence_to_json(&out) + "\n")
}

fn iterate(a: &IterateArgs, inputs: &mut Inputs) -> Result<String, Failure> {
    if a.steps > MAX_STEPS {
        return Err(Error::SizeLimit { requested: a.steps, limit: MAX_STEPS }.into());
    }
    let seq = read_sequence(&a.input, a.flavor.into(), inputs)?;
    let report = iterate_t(&seq, a.steps)?;
    Ok(wire::clt_report_to_json(&report) + "\n")
}

fn check_size(size: usize, limit: usize) -> Result<(), Failure> {
    if size > limit {
        return Err(Error::SizeLimit { requested: size, limit }.into());
    }
    Ok(())
}

fn matrix(a: &MatrixArgs) -> Result<String, Failure> {
    check_size(a.size, a.max_size)?;
    let m = build_lin_matrix(a.flavor.into(), a.size)?;
    Ok(if a.csv {
        wire::matrix_csv(&m)
    } else {
        wire::matrix_to_json(&m) + "\n"
    })
}

fn check_eigen(a: &EigencheckArgs) -> Result<String, Failure> {
    check_size(a.size, a.max_size)?;
    let flavor = a.flavor.into();
    let verdicts = eigencheck(flavor, a.size)?;
    let payload = wire::eigen_verdicts_to_json(flavor, &verdicts) + "\n";
    if verdicts.iter().all(|v| v.exact) {
        Ok(payload)
    } else {
        Err(Failure::Check(payload))
    }
}

fn eigenfn(a: &EigenfnArgs) -> Result<String, Failure> {
    check_size(a.orders.max(a.n), MAX_ORDERS)?;
    let flavor: Flavor = a.flavor.into();
    let moments = match flavor {
        Flavor::Classical => hermite_density_moments(a.n, a.orders)?,
        Flavor::Free => chebyshev_density_moments(a.n, a.orders)?,
    };
    let moments: Vec<String> = moments.entries().iter().map(|q| format_rational(q.rat())).collect();
    let density = match a.density_samples {
        None => None,
        Some(0) => return Err(Error::InvalidArgument("--density-samples must be positive".into()).into()),
        Some(m) => {
            check_size(m, 1_000_000)?;
            let samples = (0..m)
                .map(|i| {
                    let frac = (i as f64 + 0.5) / m as f64;
                    let (x, v) = match flavor {
                        // Midpoints keep the free samples off the endpoint singularities.
                        Flavor::Classical => {
                            let x = -HERMITE_WINDOW + 2.0 * HERMITE_WINDOW * frac;
                            (x, hermite_eigen_density(a.n, x)?)
                        }
                        Flavor::Free => {
                            let t = -2.0 + 4.0 * frac;
                            (t, chebyshev_eigen_density(a.n, t)?)
                        }
                    };
                    Ok([x, v])
                })
                .collect::<Result<Vec<[f64; 2]>, Error>>()?;
            Some(samples)
        }
    };
    Ok(json!({"flavor": flavor, "n": a.n, "moments": moments, "density": density}).to_string() + "\n")
}

fn read_descriptor(path: &std::path::Path, inputs: &mut Inputs) -> Result<AnalyticMeasure, Failure> {
    Ok(wire::parse_descriptor(&inputs.read(path)?)?)
}

fn freeconv(a: &FreeconvArgs, inputs: &mut Inputs) -> Result<String, Failure> {
    let mu = read_descriptor(&a.a, inputs)?;
    let nu = read_descriptor(&a.b, inputs)?;
    match free_convolve(&mu, &nu, &a.grid)? {
        AnalyticMeasure::DensityTable { grid, values } => Ok(wire::density_csv(&grid, &values)),
        _ => unreachable!("free_convolve returns a density table"),
    }
}

fn pdecheck(a: &PdecheckArgs, inputs: &mut Inputs) -> Result<String, Failure> {
    let nu = match &a.nu {
        Some(path) => read_descriptor(path, inputs)?,
        None => AnalyticMeasure::standard_semicircle(),
    };
    let check = pde_theorem_check(&nu, &a.psi, a.z)?;
    Ok(wire::format_f64(check.residual) + "\n")
}

fn eigden(a: &EigdenArgs) -> Result<String, Failure> {
    let p = EigenParameter::new(a.x, a.y, a.phi)?;
    let points = a.grid.points();
    let values = points
        .iter()
        .map(|&t| match eigen_density(&p, t) {
            Ok(v) => Ok(v),
            Err(Error::Singularity(_)) => Ok(f64::NAN),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<f64>, Error>>()?;
    Ok(wire::density_csv(&points, &values))
}
