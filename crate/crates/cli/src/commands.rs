use crate::args::{
    AdjointArgs, CertifyArgs, Cli, Command, Format, GenArgs, InputArgs, LatticeArgs, MethodArg,
    Output, RoundtripArgs, SystemArgs,
};
use anyhow::{anyhow, bail, Context, Result};
use gabor_forge_core::equivalence::{circulant_from, is_hadamard, to_cyclic_root};
use gabor_forge_core::frame::{
    build_system, certify_bruteforce, certify_gram, certify_sparsity, gram_direct, reconstruct,
    GaborSystem,
};
use gabor_forge_core::lattice::{adjoint, cyclic_subgroup, product_subgroup};
use gabor_forge_core::sequences::{
    gen_bjorck, gen_bjorck_saffari_sq, gen_chu, gen_kronecker, gen_milewski, gen_p4, gen_wiener,
    normalize_rotation, verify_cazac,
};
use gabor_forge_core::tf::dpaf;
use gabor_forge_core::{io, Family, Sequence, TFSubgroup, TightnessReport, Tolerances, C64};
use serde_json::json;
use std::path::Path;

pub const TOL_ENV: &str = "GABOR_FORGE_TOL";

pub fn run(cli: &Cli) -> Result<u8> {
    let tol = tolerances(cli.tol_zero)?;
    match &cli.command {
        Command::Gen(args) => gen(args, &tol),
        Command::Verify(args) => verify(args, &tol),
        Command::Dpaf(args) => dpaf_cmd(args),
        Command::Adjoint(args) => adjoint_cmd(args),
        Command::Certify(args) => certify(args, &tol),
        Command::Gram(args) => gram(args, &tol),
        Command::Roundtrip(args) => roundtrip(args, &tol),
    }
}

/// `--tol-zero` wins over the environment, which wins over the default.
fn tolerances(flag: Option<f64>) -> Result<Tolerances> {
    let value = match flag {
        Some(v) => Some(v),
        None => match std::env::var(TOL_ENV) {
            Ok(s) => Some(
                s.trim()
                    .parse::<f64>()
                    .with_context(|| format!("{TOL_ENV}={s:?} is not a number"))?,
            ),
            Err(_) => None,
        },
    };
    match value {
        None => Ok(Tolerances::default()),
        Some(v) if v.is_finite() && v > 0.0 => Ok(Tolerances::with_zero(v)),
        Some(v) => bail!("zero tolerance must be positive and finite, got {v}"),
    }
}

fn emit(out: &Output, text: &str) -> Result<()> {
    match &out.output {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_sequence(path: &Path) -> Result<Sequence> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    if text.trim().is_empty() {
        bail!("{} is empty", path.display());
    }
    io::parse_sequence(&text).with_context(|| format!("invalid sequence file {}", path.display()))
}

fn require<T: Copy>(value: Option<T>, flag: &str, family: &str) -> Result<T> {
    value.ok_or_else(|| anyhow!("--{flag} is required for family {family}"))
}

fn gen(args: &GenArgs, tol: &Tolerances) -> Result<u8> {
    let family: Family = args.family.parse()?;
    let name = family.as_str();
    let phi = match family {
        Family::Chu => gen_chu(require(args.n, "n", name)?)?,
        Family::P4 => gen_p4(require(args.n, "n", name)?)?,
        Family::Wiener => gen_wiener(require(args.n, "n", name)?, require(args.s, "s", name)?)?,
        Family::Bjorck => gen_bjorck(require(args.p, "p", name)?)?,
        Family::BjorckSaffariSq => {
            let c = match &args.base {
                Some(path) => read_sequence(path)?,
                None => {
                    let n = require(args.n, "n", name)?;
                    if n % 2 == 1 {
                        gen_chu(n)?
                    } else {
                        gen_p4(n)?
                    }
                }
            };
            let sigma = args.sigma.clone().unwrap_or_else(|| (0..c.len()).collect());
            gen_bjorck_saffari_sq(c.entries(), &sigma, tol)?
        }
        Family::Milewski => {
            let v = match &args.base {
                Some(path) => read_sequence(path)?,
                None => {
                    let m = require(args.m, "m", name)?;
                    if m % 2 == 1 {
                        gen_chu(m)?
                    } else {
                        gen_p4(m)?
                    }
                }
            };
            gen_milewski(&v, require(args.n, "n", name)?, tol)?
        }
        Family::Kronecker => {
            let u = read_sequence(
                args.u
                    .as_deref()
                    .ok_or_else(|| anyhow!("--u is required for family kronecker"))?,
            )?;
            let v = read_sequence(
                args.v
                    .as_deref()
                    .ok_or_else(|| anyhow!("--v is required for family kronecker"))?,
            )?;
            gen_kronecker(u.entries(), v.entries(), tol)?
        }
        Family::Custom => bail!("family custom cannot be generated"),
    };
    let text = match args.out.format {
        Format::Json => io::to_string(&io::sequence_to_json(&phi)),
        Format::Csv => io::sequence_to_csv(&phi),
    };
    emit(&args.out, &text)?;
    Ok(0)
}

fn verify(args: &InputArgs, tol: &Tolerances) -> Result<u8> {
    let phi = read_sequence(&args.input)?;
    let report = verify_cazac(&phi, tol);
    let hadamard = is_hadamard(&circulant_from(&phi), tol);
    let root_verified = normalize_rotation(&phi)
        .and_then(|p| to_cyclic_root(&p, tol))
        .map(|r| r.verified)
        .unwrap_or(false);
    let fields = [
        ("n", json!(phi.len())),
        ("is_ca", json!(report.is_ca)),
        ("is_zac", json!(report.is_zac)),
        ("is_cazac", json!(report.is_cazac())),
        (
            "max_amplitude_deviation",
            io::num(report.max_amplitude_deviation),
        ),
        (
            "max_autocorrelation_magnitude",
            io::num(report.max_autocorrelation_magnitude),
        ),
        ("circulant_is_hadamard", json!(hadamard.is_hadamard)),
        ("cyclic_root_verified", json!(root_verified)),
    ];
    let text = match args.out.format {
        Format::Json => io::to_string(&serde_json::Value::Object(
            fields
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        )),
        Format::Csv => fields.iter().map(|(k, v)| format!("{k},{v}\n")).collect(),
    };
    emit(&args.out, &text)?;
    Ok(0)
}

fn dpaf_cmd(args: &InputArgs) -> Result<u8> {
    let a = dpaf(read_sequence(&args.input)?.entries());
    let text = match args.out.format {
        Format::Json => io::to_string(&io::dpaf_to_json(&a)),
        Format::Csv => io::dpaf_magnitude_csv(&a),
    };
    emit(&args.out, &text)?;
    Ok(0)
}

fn pair(values: &[usize], flag: &str) -> Result<(usize, usize)> {
    match values {
        [k, l] => Ok((*k, *l)),
        _ => bail!("--{flag} expects two comma-separated integers"),
    }
}

/// Builds the subgroup; `n` is the ambient length when known.
fn lattice(spec: &LatticeArgs, n: Option<usize>) -> Result<TFSubgroup> {
    if let Some(values) = &spec.product {
        let [a, b, np] = values.as_slice() else {
            bail!("--product expects a,b,N'");
        };
        let size = a * b * np;
        if let Some(n) = n {
            if n != size {
                bail!(
                    "--product {a},{b},{np} describes N = {size}, but the sequence has length {n}"
                );
            }
        }
        return Ok(product_subgroup(size, *a, *b, *np)?);
    }
    if let Some(values) = &spec.cyclic {
        let generator = pair(values, "cyclic")?;
        let n = n.ok_or_else(|| anyhow!("--cyclic needs the lattice size (--n)"))?;
        if n == 0 {
            bail!("lattice size must be positive");
        }
        return Ok(cyclic_subgroup(n, generator));
    }
    let path = spec
        .explicit
        .as_deref()
        .expect("clap enforces one lattice flag");
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let g = io::parse_subgroup(&text)
        .with_context(|| format!("invalid subgroup file {}", path.display()))?;
    if let Some(n) = n {
        if g.n() != n {
            bail!(
                "subgroup has N = {}, but the sequence has length {n}",
                g.n()
            );
        }
    }
    Ok(g)
}

fn adjoint_cmd(args: &AdjointArgs) -> Result<u8> {
    let g = lattice(&args.lattice, args.n)?;
    let adj = adjoint(&g);
    let text = match args.out.format {
        Format::Json => io::to_string(&io::subgroup_to_json(&adj)),
        Format::Csv => io::subgroup_to_csv(&adj),
    };
    emit(&args.out, &text)?;
    Ok(0)
}

fn system(args: &SystemArgs) -> Result<(Sequence, TFSubgroup, GaborSystem)> {
    let phi = read_sequence(&args.input)?;
    let lambda = lattice(&args.lattice, Some(phi.len()))?;
    let sys = build_system(&phi, &lambda)?;
    Ok((phi, lambda, sys))
}

fn agree(reports: &[TightnessReport]) -> bool {
    let first = &reports[0];
    reports.iter().all(|r| {
        r.is_tight == first.is_tight
            && r.is_frame == first.is_frame
            && (!r.is_tight
                || (r.frame_bound - first.frame_bound).abs() <= 1e-9 * first.frame_bound)
    })
}

fn certify(args: &CertifyArgs, tol: &Tolerances) -> Result<u8> {
    if args.system.out.format != Format::Json {
        bail!("certify writes JSON reports only");
    }
    let (phi, lambda, sys) = system(&args.system)?;
    let sparsity = || certify_sparsity(&phi, &lambda, tol);
    let (value, code) = match args.method {
        MethodArg::Sparsity => (io::report_to_json(&sparsity()?), 0),
        MethodArg::Gram => (io::report_to_json(&certify_gram(&sys, tol)), 0),
        MethodArg::Bruteforce => (io::report_to_json(&certify_bruteforce(&sys, tol)), 0),
        MethodArg::All => {
            let reports = [
                sparsity()?,
                certify_gram(&sys, tol),
                certify_bruteforce(&sys, tol),
            ];
            let ok = agree(&reports);
            if !ok {
                eprintln!("error: certifiers disagree");
            }
            (io::reports_to_json(&reports, ok), if ok { 0 } else { 1 })
        }
    };
    emit(&args.system.out, &io::to_string(&value))?;
    Ok(code)
}

fn gram(args: &SystemArgs, tol: &Tolerances) -> Result<u8> {
    let (phi, _, sys) = system(args)?;
    let g = gram_direct(&sys);
    let text = match args.out.format {
        Format::Json => {
            let mut v = io::gram_to_json(&g);
            v["rank"] = json!(certify_gram(&sys, tol).gram_rank);
            io::to_string(&v)
        }
        Format::Csv => io::gram_support_csv(&g, tol.zero * phi.norm_sq()),
    };
    emit(&args.out, &text)?;
    Ok(0)
}

fn roundtrip(args: &RoundtripArgs, tol: &Tolerances) -> Result<u8> {
    let (phi, lambda, sys) = system(&args.system)?;
    let x: Vec<C64> = match &args.x {
        Some(path) => read_sequence(path)?.into_entries(),
        None => {
            let mut x = vec![C64::new(0.0, 0.0); phi.len()];
            x[0] = C64::new(1.0, 0.0);
            x
        }
    };
    let report = certify_sparsity(&phi, &lambda, tol)?;
    let y = reconstruct(&sys, &report, &x).context("reconstruction needs a tight frame")?;
    let max_error = x
        .iter()
        .zip(&y)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let y = Sequence::custom(y)?;
    let text = match args.system.out.format {
        Format::Json => io::to_string(&json!({
            "frame_bound": io::num(report.frame_bound),
            "max_error": io::num(max_error),
            "entries": io::sequence_to_json(&y)["entries"].clone(),
        })),
        Format::Csv => io::sequence_to_csv(&y),
    };
    emit(&args.system.out, &text)?;
    Ok(0)
}
