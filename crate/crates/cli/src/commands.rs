use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::Parser;
use psc_core::bec::{polar_code_bec, simulate_fer, simulate_fer_sweep, FerEstimate, SimConfig};
use psc_core::codefile::{parse_code, serialize_code};
use psc_core::psc::{
    bound_curve, check_conjecture, construct, verify_symmetry, BoundPoint, Construction, DesignSpec, RemovalKind,
};
use psc_core::symmetry::{is_invariant, is_weakly_decreasing, VariablePermutation};
use psc_core::{code_params, reed_muller, MonomialCode};

use crate::manifest::{sidecar, strip_flag, Manifest};
use crate::parse::{design_spec, epsilon_grid, usize_list};
use crate::{
    BoundArgs, Cli, Command, ConjectureArgs, ConstructArgs, ReplayArgs, SimulateArgs, VerifyArgs,
};

pub const FER_HEADER: &str = "code_id,n,k,dmin,epsilon,trials,failures,fer,ci_low,ci_high,seed";

pub fn run(cli: Cli, args: &[String]) -> Result<()> {
    let mut args = args.to_vec();
    let (name, outputs) = match &cli.command {
        Command::Replay(r) => return replay(r),
        Command::Construct(a) => ("construct", construct_cmd(a)?),
        Command::Bound(a) => ("bound", bound_cmd(a)?),
        Command::Simulate(a) => {
            // the worker count shapes the random streams, so pin it
            if !args.iter().any(|x| x == "--workers" || x.starts_with("--workers=")) {
                args.extend(["--workers".to_string(), a.workers.to_string()]);
            }
            ("simulate", simulate_cmd(a)?)
        }
        Command::Verify(a) => ("verify", verify_cmd(a)?),
        Command::Conjecture(a) => ("conjecture", conjecture_cmd(a)?),
    };
    let path = cli.manifest.clone().or_else(|| outputs.first().map(|o| sidecar(o, ".manifest.json")));
    if let Some(path) = path {
        let manifest = Manifest {
            tool: "psc-lab".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: name.into(),
            args,
            config: serde_json::to_value(&cli)?,
            outputs,
        };
        manifest.write(&path)?;
    }
    Ok(())
}

fn replay(r: &ReplayArgs) -> Result<()> {
    let manifest = Manifest::read(&r.manifest_file)?;
    let mut args = manifest.args;
    if let Some(out) = &r.out {
        args = strip_flag(&strip_flag(&args, "--out"), "--manifest");
        args.extend(["--out".to_string(), out.display().to_string()]);
    }
    ensure!(args.first().map(String::as_str) != Some("replay"), "manifest records another replay");
    let cli = Cli::try_parse_from(std::iter::once("psc-lab".to_string()).chain(args.iter().cloned()))
        .map_err(|e| anyhow::anyhow!("manifest arguments rejected: {e}"))?;
    run(cli, &args)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn read_code(path: &Path) -> Result<MonomialCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_code(&text).with_context(|| format!("parsing {}", path.display()))
}

fn summary(c: &Construction) -> Result<String> {
    let p = code_params(&c.code)?;
    Ok(format!("({},{},{}) kproj={}", p.n, p.k, p.dmin, c.trace.k_proj))
}

fn construct_cmd(a: &ConstructArgs) -> Result<Vec<PathBuf>> {
    let spec = DesignSpec::new(a.m, a.t, a.k, a.d.unwrap_or(a.m))?;
    let c = construct(&spec)?;
    let line = summary(&c)?;
    let code_text = serialize_code(&c.code);
    match &a.out {
        Some(out) => {
            let trace_path = sidecar(out, ".trace");
            write_file(out, &code_text)?;
            write_file(&trace_path, &format!("{}summary {line}\n", c.trace.log()))?;
            println!("{line}");
            Ok(vec![out.clone(), trace_path])
        }
        None => {
            let mut text = format!("# {spec}\n{code_text}");
            for l in c.trace.log().lines() {
                let _ = writeln!(text, "# {l}");
            }
            let _ = writeln!(text, "# {line}");
            print!("{text}");
            Ok(Vec::new())
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<Vec<PathBuf>> {
    match out {
        Some(path) => {
            write_file(path, text)?;
            Ok(vec![path.clone()])
        }
        None => {
            print!("{text}");
            Ok(Vec::new())
        }
    }
}

fn bound_cmd(a: &BoundArgs) -> Result<Vec<PathBuf>> {
    let ts = match &a.t {
        Some(list) => usize_list(list)?,
        None => (1..=a.m).collect(),
    };
    let d = a.d.unwrap_or(a.m);
    let mut text = format!("{}\n", BoundPoint::CSV_HEADER);
    for t in ts {
        for p in bound_curve(a.m, t, d)? {
            let _ = writeln!(text, "{}", p.csv_row());
        }
    }
    emit(a.out.as_ref(), &text)
}

enum Source {
    Fixed(MonomialCode),
    AdaptivePolar { m: usize, k: usize },
}

fn simulate_cmd(a: &SimulateArgs) -> Result<Vec<PathBuf>> {
    ensure!(a.workers >= 1, "need at least one worker");
    let grid = epsilon_grid(&a.epsilon)?;
    let mut sources: Vec<(String, Source)> = Vec::new();
    for path in &a.codes {
        let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "code".into());
        sources.push((id, Source::Fixed(read_code(path)?)));
    }
    for pair in a.rm.chunks(2) {
        let (r, m) = (pair[0], pair[1]);
        sources.push((format!("rm_{r}_{m}"), Source::Fixed(reed_muller(r, m)?)));
    }
    for text in &a.specs {
        let spec = design_spec(text)?;
        let id = format!("psc_m{}_t{}_k{}_d{}", spec.m, spec.t, spec.k, spec.d);
        sources.push((id, Source::Fixed(construct(&spec)?.code)));
    }
    for pair in a.polar.chunks(2) {
        let (m, k) = (pair[0], pair[1]);
        if a.polar_adaptive {
            sources.push((format!("polar_m{m}_k{k}"), Source::AdaptivePolar { m, k }));
        } else {
            let Some(eps) = a.polar_design else {
                bail!("--polar needs --polar-adaptive or --polar-design");
            };
            sources.push((format!("polar_m{m}_k{k}_e{eps}"), Source::Fixed(polar_code_bec(m, k, eps)?)));
        }
    }
    ensure!(!sources.is_empty(), "no code given; use --code, --rm, --spec or --polar");

    let cfg = SimConfig::new(a.trials, a.seed).with_workers(a.workers);
    let mut text = format!("{FER_HEADER}\n");
    let mut row = |id: &str, code: &MonomialCode, est: &FerEstimate| -> Result<()> {
        let p = code_params(code)?;
        let _ = writeln!(
            text,
            "{id},{},{},{},{},{},{},{},{},{},{}",
            p.n, p.k, p.dmin, est.epsilon, est.trials, est.failures, est.fer, est.ci_low, est.ci_high, a.seed
        );
        Ok(())
    };
    for (id, source) in &sources {
        match source {
            Source::Fixed(code) => {
                for est in simulate_fer_sweep(code, &grid, &cfg)? {
                    row(id, code, &est)?;
                }
            }
            Source::AdaptivePolar { m, k } => {
                for &eps in &grid {
                    let code = polar_code_bec(*m, *k, eps)?;
                    row(id, &code, &simulate_fer(&code, eps, &cfg)?)?;
                }
            }
        }
    }
    emit(a.out.as_ref(), &text)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Invariance under all permutations of the first `t` variables, checked on
/// a transposition and a `t`-cycle, which together generate the group.
fn target_invariant(code: &MonomialCode, t: usize) -> Result<bool> {
    if t < 2 {
        return Ok(true);
    }
    let m = code.m();
    let swap = VariablePermutation::transposition(m, 0, 1);
    let cycle = VariablePermutation::new((0..m).map(|j| if j < t { (j + 1) % t } else { j }).collect())?;
    Ok(is_invariant(code, &swap)? && is_invariant(code, &cycle)?)
}

fn verify_cmd(a: &VerifyArgs) -> Result<Vec<PathBuf>> {
    let code = read_code(&a.file)?;
    let m = code.m();
    let ts = match &a.t {
        Some(list) => usize_list(list)?,
        None => (1..=m).collect(),
    };
    for &t in &ts {
        ensure!((1..=m).contains(&t), "order t = {t} outside 1..={m}");
    }
    let p = code_params(&code)?;
    let report = verify_symmetry(&code);
    println!("code n={} k={} dmin={}", p.n, p.k, p.dmin);
    println!("{report}");
    println!("weakly decreasing: {}", yes(is_weakly_decreasing(&code)));
    for t in ts {
        println!(
            "t={t} targets equal: {} invariant over target permutations: {} partially symmetric: {}",
            yes(report.targets_equal(t)),
            yes(target_invariant(&code, t)?),
            yes(report.is_partially_symmetric(t)),
        );
    }
    Ok(Vec::new())
}

fn used_subgraph(c: &Construction) -> bool {
    c.trace.records.iter().any(|r| matches!(r.kind, RemovalKind::Subgraph { .. }))
}

fn conjecture_cmd(a: &ConjectureArgs) -> Result<Vec<PathBuf>> {
    if a.sweep {
        ensure!((2..=8).contains(&a.max_m), "--max-m must lie in 2..=8");
        let (mut total, mut holding) = (0, 0);
        for m in 2..=a.max_m {
            for t in 2..=m {
                for d in 1..=m {
                    for point in bound_curve(m, t, d)?.iter().filter(|p| p.k > 0) {
                        let spec = DesignSpec::new(m, t, point.k, d)?;
                        let c = construct(&spec)?;
                        if !used_subgraph(&c) {
                            continue;
                        }
                        let report = check_conjecture(&c.code, t)?;
                        total += 1;
                        holding += usize::from(report.holds());
                        let bad = report.counterexamples().count();
                        println!("{spec} pairs={} inequivalent={bad} holds={}", report.pairs.len(), report.holds());
                    }
                }
            }
        }
        println!("codes={total} holding={holding}");
        return Ok(Vec::new());
    }
    let (code, t) = match (&a.spec, &a.code) {
        (Some(text), _) => {
            let spec = design_spec(text)?;
            (construct(&spec)?.code, a.t.unwrap_or(spec.t))
        }
        (None, Some(path)) => (read_code(path)?, a.t.expect("clap enforces -t")),
        (None, None) => bail!("give --spec, --code with -t, or --sweep"),
    };
    println!("{}", check_conjecture(&code, t)?);
    Ok(Vec::new())
}
