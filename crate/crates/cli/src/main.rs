//! `ucjc`: generate, compile, simulate, sample and verify IQP / 1-UCJ'
//! circuits over JSON files. Every command is deterministic given its full
//! argument vector; exit codes are 0 pass, 1 verification fail, 2 input
//! error, 3 capacity.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ucjc_core::compile::{compile_iqp, decode_distribution, PairEncoding};
use ucjc_core::dist::Distribution;
use ucjc_core::fermion::fock_oracle_unitary;
use ucjc_core::io::{
    counts_to_json, distribution_to_json, parse_iqp_json, parse_ucj_json, IqpJson, ReportJson,
    StateJson, UcjJson,
};
use ucjc_core::verify::{random_state, run_fermion_invariants, run_ucj_invariants, sample};
use ucjc_core::{rng, Error, IqpCircuit64, Ucj1Compiled64};

/// Classical-simulability context for verify output: a multiplicative error
/// below √2 keeps the compiled circuit in the regime where exact sampling is
/// as hard as for the source circuit. Reported as context only.
const HARDNESS_THRESHOLD: f64 = std::f64::consts::SQRT_2;

#[derive(Parser)]
#[command(name = "ucjc", version, about = "IQP → 1-UCJ' compiler and verifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum CircuitKind {
    Iqp,
    Ucj,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded random IQP instance as JSON
    GenIqp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Probability that each (α,β) pair carries a nonzero weight
        #[arg(long, default_value_t = 1.0)]
        density: f64,
        /// Output path (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compile an IQP JSON file to a 1-UCJ' JSON file
    Compile {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Simulate a circuit file and print its state or distribution
    Simulate {
        kind: CircuitKind,
        file: PathBuf,
        /// Print the full statevector instead of the distribution
        #[arg(long, conflicts_with = "dist")]
        state: bool,
        /// Print the outcome distribution (default)
        #[arg(long)]
        dist: bool,
    },
    /// Draw seeded shots from a circuit file (kind auto-detected)
    Sample {
        file: PathBuf,
        #[arg(long)]
        shots: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Check that a compiled file reproduces an IQP file
    Verify {
        iqp: PathBuf,
        ucj: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Run the compiler/ansatz property suite for a given width
    CheckInvariants {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        trials: usize,
    },
    /// Compare the fast kernel against the dense Fock oracle
    OracleCheck {
        #[arg(long)]
        modes: usize,
        #[arg(long)]
        gates: usize,
        #[arg(long)]
        seed: u64,
    },
}

/// stdout writer tolerant of closed pipes (e.g. `ucjc ... | head`).
fn print_out(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Capacity { .. } | Error::OracleCap { .. } => 3,
        Error::Leakage { .. } => 1,
        _ => 2,
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code_for(&e))
}

fn read(path: &PathBuf) -> Result<String, ExitCode> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn emit(text: &str, output: Option<&PathBuf>) -> ExitCode {
    match output {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        None => {
            print_out(text.trim_end());
            ExitCode::SUCCESS
        }
    }
}

fn load_iqp(path: &PathBuf) -> Result<IqpCircuit64, ExitCode> {
    let text = read(path)?;
    parse_iqp_json(&text).and_then(|j| j.into_circuit()).map_err(|e| fail(e))
}

fn load_ucj(path: &PathBuf) -> Result<Ucj1Compiled64, ExitCode> {
    let text = read(path)?;
    parse_ucj_json(&text).and_then(|j| j.into_circuit()).map_err(|e| fail(e))
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable");
    out.push('\n');
    out
}

fn cmd_gen_iqp(n: usize, seed: u64, density: f64, output: Option<&PathBuf>) -> ExitCode {
    if n < 1 {
        return fail(Error::InvalidCircuit("n must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&density) {
        return fail(Error::InvalidCircuit(format!("density {density} outside [0, 1]")));
    }
    let circuit = rng::random_iqp::<f64>(n, seed, density);
    emit(&pretty(&IqpJson::from(&circuit)), output)
}

fn cmd_compile(input: &PathBuf, output: &PathBuf) -> ExitCode {
    match load_iqp(input) {
        Ok(c) => emit(&pretty(&UcjJson::from(&compile_iqp(&c))), Some(output)),
        Err(code) => code,
    }
}

fn cmd_simulate(kind: CircuitKind, file: &PathBuf, state: bool) -> ExitCode {
    match kind {
        CircuitKind::Iqp => {
            let c = match load_iqp(file) {
                Ok(c) => c,
                Err(code) => return code,
            };
            if state {
                match c.state() {
                    Ok(s) => emit(&pretty(&StateJson::from_state(&s)), None),
                    Err(e) => fail(e),
                }
            } else {
                match c.distribution() {
                    Ok(d) => emit(&pretty(&distribution_to_json(&d)), None),
                    Err(e) => fail(e),
                }
            }
        }
        CircuitKind::Ucj => {
            let c = match load_ucj(file) {
                Ok(c) => c,
                Err(code) => return code,
            };
            let s = match c.simulate() {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            if state {
                emit(&pretty(&StateJson::from_state(&s)), None)
            } else {
                // distribution over decoded outcomes; errors out on leakage
                let enc = PairEncoding::new(c.reference_n);
                match decode_distribution(&Distribution::from_statevector(&s), &enc) {
                    Ok((d, _)) => emit(&pretty(&distribution_to_json(&d)), None),
                    Err(e) => fail(e),
                }
            }
        }
    }
}

fn circuit_distribution(file: &PathBuf) -> Result<Distribution<f64>, ExitCode> {
    let text = read(file)?;
    // detect the kind from the schema: UCJ files carry "modes"
    if let Ok(j) = parse_ucj_json(&text) {
        if text.contains("\"modes\"") {
            let c = j.into_circuit::<f64>().map_err(|e| fail(e))?;
            let s = c.simulate().map_err(|e| fail(e))?;
            let enc = PairEncoding::new(c.reference_n);
            let (d, _) = decode_distribution(&Distribution::from_statevector(&s), &enc)
                .map_err(|e| fail(e))?;
            return Ok(d);
        }
    }
    let c = parse_iqp_json(&text).and_then(|j| j.into_circuit::<f64>()).map_err(|e| fail(e))?;
    c.distribution().map_err(|e| fail(e))
}

fn cmd_sample(file: &PathBuf, shots: u64, seed: u64) -> ExitCode {
    let d = match circuit_distribution(file) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let counts: BTreeMap<u64, u64> = sample(&d, shots, seed);
    emit(&pretty(&counts_to_json(&counts, d.width())), None)
}

fn cmd_verify(iqp_path: &PathBuf, ucj_path: &PathBuf, tol: f64) -> ExitCode {
    let iqp = match load_iqp(iqp_path) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let ucj = match load_ucj(ucj_path) {
        Ok(c) => c,
        Err(code) => return code,
    };
    match ucjc_core::verify::verify_pair(&iqp, &ucj, tol) {
        Ok(report) => {
            let mut json = serde_json::to_value(ReportJson::from(&report)).expect("serializable");
            // context only: multiplicative error below √2 preserves sampling
            // hardness; it is never a pass/fail bound
            json["hardness_threshold"] = serde_json::json!(HARDNESS_THRESHOLD);
            json["below_hardness_threshold"] =
                serde_json::json!(report.mult_error < HARDNESS_THRESHOLD);
            print_out(&serde_json::to_string_pretty(&json).expect("serializable"));
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(e),
    }
}

#[derive(serde::Serialize)]
struct PropertyJson {
    name: &'static str,
    passed: usize,
    trials: usize,
}

fn cmd_check_invariants(n: usize, seed: u64, trials: usize) -> ExitCode {
    if n < 1 {
        return fail(Error::InvalidCircuit("n must be at least 1".into()));
    }
    let results = run_ucj_invariants(n, seed, trials);
    let all = results.iter().all(|r| r.all_passed());
    let json: Vec<PropertyJson> = results
        .iter()
        .map(|r| PropertyJson { name: r.name, passed: r.passed, trials: r.trials })
        .collect();
    print_out(&serde_json::to_string_pretty(&json).expect("serializable"));
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_oracle_check(modes: usize, gates: usize, seed: u64) -> ExitCode {
    if modes < 2 {
        return fail(Error::InvalidCircuit("oracle check needs at least 2 modes".into()));
    }
    let sequence = rng::random_gate_sequence::<f64>(modes, gates, seed);
    let init = random_state(modes, seed ^ 0x0f0f_0f0f);
    let mut fast = init.clone();
    for g in &sequence {
        if let Err(e) = fast.apply(g) {
            return fail(e);
        }
    }
    let dense = match fock_oracle_unitary(&sequence, modes) {
        Ok(u) => u,
        Err(e) => return fail(e),
    };
    let expect = dense.mul_vec(init.amplitudes());
    let gap = fast
        .amplitudes()
        .iter()
        .zip(&expect)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);

    let properties = run_fermion_invariants(modes, seed, 25);
    let all = properties.iter().all(|r| r.all_passed());
    let json = serde_json::json!({
        "modes": modes,
        "gates": gates,
        "linf_gap": gap,
        "properties": properties
            .iter()
            .map(|r| serde_json::json!({"name": r.name, "passed": r.passed, "trials": r.trials}))
            .collect::<Vec<_>>(),
    });
    print_out(&serde_json::to_string_pretty(&json).expect("serializable"));
    if gap < 1e-10 && all {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::GenIqp { n, seed, density, output } => {
            cmd_gen_iqp(n, seed, density, output.as_ref())
        }
        Command::Compile { input, output } => cmd_compile(&input, &output),
        Command::Simulate { kind, file, state, dist: _ } => cmd_simulate(kind, &file, state),
        Command::Sample { file, shots, seed } => cmd_sample(&file, shots, seed),
        Command::Verify { iqp, ucj, tol } => cmd_verify(&iqp, &ucj, tol),
        Command::CheckInvariants { n, seed, trials } => cmd_check_invariants(n, seed, trials),
        Command::OracleCheck { modes, gates, seed } => cmd_oracle_check(modes, gates, seed),
    }
}
