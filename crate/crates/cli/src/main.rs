use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use syncorr::classical::DEFAULT_FUNCTION_CAP;
use syncorr::io::{self, AnyCorrelation};
use syncorr::polytope::{
    affine_dimension, bell_values, classical_polytope_3_2, dd_enumerate, sync_ns_polytope_3_2, w_coordinates, BellFunctional,
    BellReport, VPolytope,
};
use syncorr::quantum::{correlation_me, tsirelson_certificate, SignPattern};
use syncorr::search::minimize;
use syncorr::{classical_membership, ClassicalCertificate, Correlation, Scalar, DEFAULT_TOL};

mod reproduce;

const EXIT_CLASSICAL: u8 = 0;
const EXIT_FAILURE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_NONCLASSICAL: u8 = 10;
const EXIT_SIGNALING: u8 = 11;

#[derive(Parser)]
#[command(name = "syncorr", version, about = "Synchronous correlations: membership, polytopes, quantum strategies")]
struct Cli {
    /// Float tolerance.
    #[arg(long, global = true, env = "SYNCORR_TOL", default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Ns,
    Classical,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a correlation file. Exit 0 classical, 10 nonclassical nonsignaling, 11 signaling, 2 invalid.
    Check {
        path: PathBuf,
        /// Include the membership certificate.
        #[arg(long)]
        certificate: bool,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the vertices of a 3x2 polytope in w-coordinates.
    Vertices {
        #[arg(long)]
        game: String,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate PVMs on the maximally entangled state.
    QuantumEval {
        #[arg(long)]
        pvms: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Minimize a Bell slack over the qubit family.
    Optimize {
        #[arg(long, value_parser = parse_target)]
        target: BellFunctional,
        #[arg(long, default_value_t = 128)]
        grid: usize,
        #[arg(long, default_value_t = 1e-10)]
        refine: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute every reference claim and print a pass/fail table.
    Reproduce {
        #[arg(long, required = true)]
        all: bool,
    },
}

fn parse_target(s: &str) -> Result<BellFunctional, String> {
    BellFunctional::parse(s).ok_or_else(|| format!("unknown functional {s:?}, expected J0..J3"))
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INVALID)
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn bell_text<T: Scalar>(r: &BellReport<T>) -> String {
    let vals: Vec<String> = BellFunctional::ALL.iter().map(|j| format!("{j} = {}", r.value(*j))).collect();
    let verdict = match r.violated {
        Some(j) => format!("violates {j} by {}", r.magnitude),
        None => "no Bell inequality violated".to_string(),
    };
    format!("{}  ({verdict})", vals.join("  "))
}

struct CheckOutcome {
    value: Value,
    text: String,
    code: u8,
}

fn check_report<T: Scalar>(p: &Correlation<T>, tol: f64, certificate: bool) -> Result<CheckOutcome, String> {
    let sync = p.is_synchronous(tol);
    let ns = p.is_nonsignaling(tol);
    let sym = p.is_symmetric(tol);
    let cert = if sync && ns {
        Some(classical_membership(p, DEFAULT_FUNCTION_CAP, tol).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let classical = cert.as_ref().map(ClassicalCertificate::is_classical);
    let bell = (sync && ns && p.shape().n() == 3 && p.shape().m() == 2)
        .then(|| bell_values(&w_coordinates(p).expect("3x2"), tol));
    let code = match (ns, classical) {
        (false, _) => EXIT_SIGNALING,
        (true, Some(true)) => EXIT_CLASSICAL,
        _ => EXIT_NONCLASSICAL,
    };

    let mut text = format!(
        "shape          {}\nmode           {:?}\nstochastic     yes\nsynchronous    {}\nnonsignaling   {}\nsymmetric      {}\nclassical      {}\n",
        p.shape(),
        T::MODE,
        yes(sync),
        yes(ns),
        yes(sym),
        classical.map_or("n/a", yes)
    );
    if let Some(r) = &bell {
        text.push_str(&format!("bell           {}\n", bell_text(r)));
    }
    let cert_value = match (&cert, certificate) {
        (Some(ClassicalCertificate::Classical(mu)), true) => {
            text.push_str("certificate    mixture of functions\n");
            for (f, w) in mu.iter() {
                text.push_str(&format!("  f = {f:?}  weight {w}\n"));
            }
            json!({"kind": "distribution", "distribution": io::distribution_to_value(mu)})
        }
        (Some(ClassicalCertificate::NotClassical(g)), true) => {
            text.push_str(&format!("certificate    separating functional with bound {}\n", g.bound));
            json!({"kind": "separating_functional", "functional": io::functional_to_value(g)})
        }
        _ => Value::Null,
    };
    let value = json!({
        "shape": p.shape().to_string(),
        "mode": T::MODE,
        "verdicts": {
            "stochastic": true,
            "synchronous": sync,
            "nonsignaling": ns,
            "symmetric": sym,
            "classical": classical,
        },
        "bell": bell.as_ref().map(io::bell_report_to_value),
        "certificate": cert_value,
        "exit_code": code,
    });
    Ok(CheckOutcome { value, text, code })
}

fn cmd_check(path: &Path, tol: f64, certificate: bool, json_out: bool) -> ExitCode {
    let raw = match read(path) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let parsed = match io::any_correlation_from_json(&raw, tol) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let outcome = match &parsed {
        AnyCorrelation::Rational(p) => check_report(p, tol, certificate),
        AnyCorrelation::Float(p) => check_report(p, tol, certificate),
    };
    let mut outcome = match outcome {
        Ok(o) => o,
        Err(e) => return fail(e),
    };
    let digest = format!("sha256:{:x}", Sha256::digest(raw.as_bytes()));
    if json_out {
        outcome.value["input"] = Value::String(digest);
        println!("{}", serde_json::to_string_pretty(&outcome.value).expect("json"));
    } else {
        print!("input          {digest}\n{}", outcome.text);
    }
    ExitCode::from(outcome.code)
}

fn w_text(v: &[syncorr::Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn cmd_vertices(game: &str, which: Which, json_out: bool) -> ExitCode {
    if game.trim() != "3x2" {
        return fail(format!("unsupported game {game:?}; only 3x2 is available"));
    }
    let (h, label) = match which {
        Which::Ns => (sync_ns_polytope_3_2(), "ns"),
        Which::Classical => (classical_polytope_3_2(), "classical"),
    };
    let v: VPolytope = match dd_enumerate(&h) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let dim = affine_dimension(&v).expect("nonempty");
    if json_out {
        let mut value = io::vpolytope_to_value(&v);
        value["game"] = json!("3x2");
        value["which"] = json!(label);
        value["coordinates"] = json!("w");
        value["affine_dimension"] = json!(dim);
        println!("{}", serde_json::to_string_pretty(&value).expect("json"));
    } else {
        println!("{} vertices, affine dimension {dim}", v.len());
        for x in v.vertices() {
            println!("{}", w_text(x));
        }
    }
    ExitCode::SUCCESS
}

fn cmd_quantum_eval(path: &Path, tol: f64, json_out: bool) -> ExitCode {
    let fam = match read(path).and_then(|s| io::pvm_from_json(&s, tol).map_err(|e| e.to_string())) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let p = match correlation_me(&fam, tol) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let three_two = fam.n() == 3 && fam.m() == 2;
    let w = three_two.then(|| w_coordinates(&p).expect("3x2"));
    let bell = w.as_ref().map(|w| bell_values(w, tol));
    let certs: Vec<Value> = if three_two {
        SignPattern::ALL
            .iter()
            .map(|&s| match tsirelson_certificate(&fam, s, tol) {
                Ok(c) => json!({"functional": c.functional, "signs": s.signs(), "value": c.value, "residual": c.residual}),
                Err(e) => json!({"functional": s.functional(), "signs": s.signs(), "error": e.to_string()}),
            })
            .collect()
    } else {
        vec![]
    };
    if json_out {
        let value = json!({
            "correlation": io::correlation_to_value(&p),
            "synchronous": p.is_synchronous(tol),
            "w": w.as_ref().map(io::w_to_value),
            "bell": bell.as_ref().map(io::bell_report_to_value),
            "certificates": certs,
        });
        println!("{}", serde_json::to_string_pretty(&value).expect("json"));
    } else {
        println!("d = {}, n = {}, m = {}", fam.d(), fam.n(), fam.m());
        println!("{p}");
        if let (Some(w), Some(r)) = (&w, &bell) {
            let parts: Vec<String> = w.w.iter().map(|x| format!("{x:.12}")).collect();
            println!("w      ({})", parts.join(", "));
            println!("bell   {}", bell_text(r));
            for c in &certs {
                println!("cert   {c}");
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_optimize(target: BellFunctional, grid: usize, refine: f64, out: Option<&Path>) -> ExitCode {
    let r = match minimize(target, grid, refine) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let text = io::search_result_to_json(&r);
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                return fail(format!("{}: {e}", path.display()));
            }
            println!(
                "{target}: min slack {:.12} at {} argmin(s), {} distinct matrix(es); written to {}",
                r.min_value,
                r.argmin.len(),
                r.distinct_matrices,
                path.display()
            );
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.tol >= 0.0) {
        return fail(format!("tolerance must be nonnegative, got {}", cli.tol));
    }
    match cli.command {
        Command::Check { path, certificate, json } => cmd_check(&path, cli.tol, certificate, json),
        Command::Vertices { game, which, json } => cmd_vertices(&game, which, json),
        Command::QuantumEval { pvms, json } => cmd_quantum_eval(&pvms, cli.tol, json),
        Command::Optimize { target, grid, refine, out } => cmd_optimize(target, grid, refine, out.as_deref()),
        Command::Reproduce { all: _ } => {
            let rows = reproduce::run_all();
            print!("{}", reproduce::format_table(&rows));
            if rows.iter().all(|r| r.pass) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILURE)
            }
        }
    }
}
