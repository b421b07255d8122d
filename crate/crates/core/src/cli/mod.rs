//! Batch commands behind the `slice-afd` binary. Each command writes its human-readable
//! output to the given writer and returns the process exit code.

pub mod signal;
pub mod verify;

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::afd::{afd_decompose, rate_report, AfdReport, SearchConfig};
use crate::error::{Error, Result};
use crate::quat::Quaternion;

pub use signal::{Signal, SignalSpec};
pub use verify::{run_suite, Check, Suite};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Directory against which relative output paths are resolved.
pub const OUT_DIR_ENV: &str = "SLICE_AFD_OUT_DIR";

/// Search settings from an optional JSON file, with `rho_max` overriding the file.
pub fn load_config(path: Option<&Path>, rho_max: Option<f64>) -> Result<SearchConfig> {
    let mut cfg = match path {
        Some(p) => {
            let text =
                std::fs::read_to_string(p).map_err(|e| Error::Input(format!("cannot read {}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", p.display())))?
        }
        None => SearchConfig::default(),
    };
    if let Some(rho) = rho_max {
        cfg.rho_max = rho;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// `given` or `default`, placed under `$SLICE_AFD_OUT_DIR` when relative and the variable is set.
pub fn output_path(given: Option<&Path>, default: &str) -> PathBuf {
    let p = given.map_or_else(|| PathBuf::from(default), Path::to_path_buf);
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if p.is_relative() => PathBuf::from(dir).join(p),
        _ => p,
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, contents).map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))
}

fn finite_or_overflow(values: impl IntoIterator<Item = f64>, what: &str) -> Result<()> {
    if values.into_iter().all(f64::is_finite) {
        Ok(())
    } else {
        Err(Error::Overflow(format!("{what} contains non-finite values")))
    }
}

#[derive(Clone, Debug)]
pub struct DecomposeArgs {
    pub input: PathBuf,
    pub iters: usize,
    pub energy_tol: f64,
    pub config: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub rho_max: Option<f64>,
    pub trunc_order: Option<usize>,
}

/// Energy-decay CSV: `m,remainder_norm,bound`, with the bound `M/sqrt(m)` left empty
/// when no mass is known.
pub fn decay_csv(remainder_norms: &[f64], mass: Option<f64>) -> String {
    let mut s = String::from("m,remainder_norm,bound\n");
    for (i, rn) in remainder_norms.iter().enumerate() {
        let m = i + 1;
        let bound = mass
            .map(|m_| format!("{:e}", m_ / (m as f64).sqrt()))
            .unwrap_or_default();
        let _ = writeln!(s, "{m},{rn:e},{bound}");
    }
    s
}

pub fn cmd_decompose(args: &DecomposeArgs, stdout: &mut dyn Write) -> Result<i32> {
    let cfg = load_config(args.config.as_deref(), args.rho_max)?;
    if args.energy_tol.is_nan() || args.energy_tol < 0.0 {
        return Err(Error::Input("energy tolerance must be non-negative".into()));
    }
    let signal = SignalSpec::load(&args.input)?.realize(args.trunc_order)?;
    let state = afd_decompose(&signal.series, args.iters, args.energy_tol, &cfg);
    let report = AfdReport::new(&state, &cfg, signal.mass());
    finite_or_overflow(
        report
            .remainder_norms
            .iter()
            .chain(&report.energies)
            .copied()
            .chain(report.coeffs.iter().flat_map(|c| c.to_array())),
        "decomposition",
    )?;

    let out = output_path(args.out.as_deref(), "afd_report.json");
    let csv = output_path(args.csv.as_deref(), "afd_decay.csv");
    write_file(&out, &(serde_json::to_string_pretty(&report)? + "\n"))?;
    write_file(&csv, &decay_csv(&report.remainder_norms, report.mass))?;
    writeln!(
        stdout,
        "steps={} relative_remainder={:.6e} report={} csv={}",
        report.steps,
        state.relative_remainder(),
        out.display(),
        csv.display()
    )?;
    Ok(EXIT_SUCCESS)
}

/// Prints one line per property plus a tally; exit 1 if anything failed.
pub fn cmd_verify(suite: Suite, seed: u64, out: Option<&Path>, stdout: &mut dyn Write) -> Result<i32> {
    let checks = run_suite(suite, seed);
    let mut text = String::new();
    for c in &checks {
        let _ = writeln!(text, "{c}");
    }
    let passed = checks.iter().filter(|c| c.pass()).count();
    let _ = writeln!(text, "verify {}: {passed}/{} passed", suite.name(), checks.len());
    stdout.write_all(text.as_bytes())?;
    if out.is_some() {
        write_file(&output_path(out, ""), &text)?;
    }
    Ok(if passed == checks.len() {
        EXIT_SUCCESS
    } else {
        EXIT_FAILURE
    })
}

#[derive(Clone, Debug)]
pub struct RateArgs {
    pub input: PathBuf,
    pub iters: usize,
    pub energy_tol: f64,
    pub config: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub rho_max: Option<f64>,
    pub trunc_order: Option<usize>,
}

/// Writes `m,remainder_norm,bound,pass`; exit 1 if any row breaks the bound.
pub fn cmd_rate(args: &RateArgs, stdout: &mut dyn Write) -> Result<i32> {
    let cfg = load_config(args.config.as_deref(), args.rho_max)?;
    let signal = SignalSpec::load(&args.input)?.realize(args.trunc_order)?;
    let atoms = signal
        .atoms
        .ok_or_else(|| Error::Input("rate needs an atoms input: the bound requires the mass M".into()))?;
    let rep = rate_report(&atoms, args.iters, args.energy_tol, signal.series.order(), &cfg)?;
    finite_or_overflow(rep.rows.iter().map(|r| r.remainder_norm), "remainder norms")?;

    let mut csv = String::from("m,remainder_norm,bound,pass\n");
    for row in &rep.rows {
        let _ = writeln!(csv, "{},{:e},{:e},{}", row.m, row.remainder_norm, row.bound, row.pass);
    }
    let path = output_path(args.csv.as_deref(), "rate.csv");
    write_file(&path, &csv)?;
    let failed = rep.rows.iter().filter(|r| !r.pass).count();
    writeln!(
        stdout,
        "mass={:.6e} norm={:.6e} rows={} failed={} csv={}",
        rep.mass,
        rep.signal_norm,
        rep.rows.len(),
        failed,
        path.display()
    )?;
    Ok(if rep.all_pass() { EXIT_SUCCESS } else { EXIT_FAILURE })
}

/// Parses `w,x,y,z`.
pub fn parse_quaternion(text: &str) -> Result<Quaternion> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Input(format!("point {text:?}: {e}")))?;
    match parts[..] {
        [w, x, y, z] => Ok(Quaternion::new(w, x, y, z)),
        _ => Err(Error::Input(format!("point {text:?} needs four components w,x,y,z"))),
    }
}

#[derive(Clone, Debug)]
pub struct EvalArgs {
    pub input: PathBuf,
    pub point: Quaternion,
    pub trunc_order: Option<usize>,
    pub out: Option<PathBuf>,
}

/// Prints `{"point":[..],"value":[..]}` for a point of the closed unit ball.
pub fn cmd_eval(args: &EvalArgs, stdout: &mut dyn Write) -> Result<i32> {
    let q = args.point;
    if !q.is_finite() || q.norm() > 1.0 {
        return Err(Error::Domain(format!("point {q} lies outside the closed unit ball")));
    }
    let signal = SignalSpec::load(&args.input)?.realize(args.trunc_order)?;
    let value = signal.series.eval(q);
    finite_or_overflow(value.to_array(), "value")?;
    let line = serde_json::json!({ "point": q, "value": value }).to_string() + "\n";
    stdout.write_all(line.as_bytes())?;
    if args.out.is_some() {
        write_file(&output_path(args.out.as_deref(), ""), &line)?;
    }
    Ok(EXIT_SUCCESS)
}

/// Maps a command outcome to an exit code, reporting errors on `stderr`.
pub fn exit_code(result: Result<i32>, stderr: &mut dyn Write) -> i32 {
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_parsing() {
        assert_eq!(
            parse_quaternion("1, -2,0.5,0").unwrap(),
            Quaternion::new(1.0, -2.0, 0.5, 0.0)
        );
        assert!(parse_quaternion("1,2,3").is_err());
        assert!(parse_quaternion("1,2,x,4").is_err());
    }

    #[test]
    fn csv_bound_column() {
        let csv = decay_csv(&[2.0, 1.0], Some(4.0));
        assert_eq!(csv, "m,remainder_norm,bound\n1,2e0,4e0\n2,1e0,2.82842712474619e0\n");
        assert_eq!(decay_csv(&[0.5], None), "m,remainder_norm,bound\n1,5e-1,\n");
    }

    #[test]
    fn config_overrides() {
        let cfg = load_config(None, Some(0.8)).unwrap();
        assert_eq!(cfg.rho_max, 0.8);
        assert!(load_config(None, Some(1.5)).is_err());
    }
}
