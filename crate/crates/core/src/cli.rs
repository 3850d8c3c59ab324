//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when an input or a check is rejected, 2 on an
//! internal-consistency error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cyclotomic::RootOfUnity;
use crate::error::{Error, Result};
use crate::greentab::{ennola_check, green_table, NuInputs};
use crate::oracle::{brute_centralizer, brute_symmetric_character, compute_c_lambda, count_flags, CLambdaConfig};
use crate::partitions::Partition;
use crate::reductive::{Characteristic, GroupKind, GroupSpec};
use crate::solver::{load_external_system, omega_matrix, solve, solve_series};
use crate::springer::{enumerate_block, enumerate_series, series_for};
use crate::verify::{nu_from_oracle, run as run_criterion, CRITERIA};

#[derive(Parser, Debug)]
#[command(name = "gengreen", version, about = "Generalized Green functions of GL_n, U_n, SL_n and SU_n")]
struct Cli {
    /// Worker threads for the oracle enumerations.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Gl,
    U,
    Sl,
    Su,
}

impl From<Kind> for GroupKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Gl => GroupKind::GlSplit,
            Kind::U => GroupKind::GlNonsplit,
            Kind::Sl => GroupKind::SlSplit,
            Kind::Su => GroupKind::SlNonsplit,
        }
    }
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    n: usize,
    /// Characteristic: a prime, or `generic`.
    #[arg(long, default_value = "generic")]
    p: String,
}

impl GroupArgs {
    fn spec(&self) -> Result<GroupSpec> {
        let p: Characteristic = self.p.parse()?;
        GroupSpec::new(self.kind.into(), self.n, p)
    }
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// The series, by its `d`.
    #[arg(long, default_value_t = 1)]
    series: usize,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[command(flatten)]
    series: SeriesArgs,
    /// Residue of `q` modulo `n'`.
    #[arg(long)]
    q_residue: Option<i64>,
    /// `LAMBDA=EXP/ORDER`, e.g. `2,2=1/2` for `nu = -1`; repeatable.
    #[arg(long)]
    nu: Vec<String>,
    /// Fill in every `nu` not given with `--nu` from the explicit
    /// construction over a field of this odd order.
    #[arg(long)]
    nu_q: Option<u32>,
}

impl TableArgs {
    fn nu(&self, spec: &GroupSpec, d: usize) -> Result<NuInputs> {
        let mut nu = parse_nu(&self.nu)?;
        if let Some(q) = self.nu_q {
            let np = spec.n_prime() as i64;
            if let Some(r) = self.q_residue {
                if (q as i64 - r).rem_euclid(np) != 0 {
                    return Err(Error::Invalid(format!("--nu-q {q} is not congruent to --q-residue {r} modulo {np}")));
                }
            }
            for (lam, v) in nu_from_oracle(spec, d, q)? {
                nu.entry(lam).or_insert(v);
            }
        }
        Ok(nu)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the series.
    Series(GroupArgs),
    /// The data of one series.
    Block(SeriesArgs),
    /// The matrix `Omega` of one series.
    Omega(SeriesArgs),
    /// Solve `tP Lambda P = Omega`.
    Solve {
        #[arg(long, value_enum, required_unless_present = "external")]
        kind: Option<Kind>,
        #[arg(long, required_unless_present = "external")]
        n: Option<usize>,
        #[arg(long, default_value = "generic")]
        p: String,
        #[arg(long, default_value_t = 1)]
        series: usize,
        /// Solve a system read from this JSON file instead.
        #[arg(long, conflicts_with_all = ["kind", "n"])]
        external: Option<PathBuf>,
    },
    /// The Green function table.
    Green(TableArgs),
    /// Compare the non-split form with the split form at `-q`.
    Ennola(TableArgs),
    /// Brute-force oracles over small finite fields.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
    /// Run acceptance checks.
    Verify {
        /// `all`, or a comma-separated list of criterion ids.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Count stable partial flags with regular subquotients.
    Flags {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = 1)]
        d: usize,
    },
    /// Order of the centralizer in `GL_n(F_q)` by enumeration.
    Centralizer {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        lambda: String,
    },
    /// The twisting element `c_lambda` and `nu`.
    Clambda {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        d: usize,
        /// Use the split Frobenius instead of the hermitian one.
        #[arg(long)]
        split: bool,
        /// Signs `a_k`, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        signs: Vec<i8>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// A symmetric group character value from the module model.
    Char {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        rho: String,
    },
}

enum Output {
    Json(Value),
    Text(String),
    /// Printed, then exit 1 (a check ran and failed).
    Failed(String),
}

fn parse_nu(items: &[String]) -> Result<NuInputs> {
    let mut nu = NuInputs::new();
    for item in items {
        let (lam, root) =
            item.split_once('=').ok_or_else(|| Error::Parse(format!("nu {item:?}: expected LAMBDA=EXP/ORDER")))?;
        let (e, o) = root.split_once('/').ok_or_else(|| Error::Parse(format!("nu {item:?}: expected EXP/ORDER")))?;
        let e: i64 = e.trim().parse().map_err(|_| Error::Parse(format!("nu exponent {e:?}")))?;
        let o: u32 = o.trim().parse().map_err(|_| Error::Parse(format!("nu order {o:?}")))?;
        if o == 0 {
            return Err(Error::Invalid("nu order must be positive".into()));
        }
        nu.insert(lam.parse()?, RootOfUnity::new(e, o));
    }
    Ok(nu)
}

fn partition(s: &str) -> Result<Partition> {
    s.parse()
}

fn oracle_json(input: Value, count: Value, start: Instant) -> Output {
    Output::Json(json!({ "input": input, "count": count, "runtime_ms": start.elapsed().as_millis() as u64 }))
}

fn run_oracle(which: &OracleCommand) -> Result<Output> {
    let start = Instant::now();
    Ok(match which {
        OracleCommand::Flags { q, lambda, d } => {
            let c = count_flags(*q, &partition(lambda)?, *d)?;
            oracle_json(json!({"oracle": "flags", "q": q, "lambda": lambda, "d": d}), json!(c.to_string()), start)
        }
        OracleCommand::Centralizer { q, lambda } => {
            let c = brute_centralizer(*q, &partition(lambda)?)?;
            oracle_json(json!({"oracle": "centralizer", "q": q, "lambda": lambda}), json!(c.to_string()), start)
        }
        OracleCommand::Clambda { q, lambda, d, split, signs, seed } => {
            if let Some(s) = signs.iter().find(|s| s.abs() != 1) {
                return Err(Error::Invalid(format!("sign {s} is not +1 or -1")));
            }
            let cfg = CLambdaConfig { twisted: !split, signs: signs.clone(), seed: *seed };
            let c = compute_c_lambda(*q, &partition(lambda)?, *d, &cfg)?;
            oracle_json(
                json!({"oracle": "clambda", "q": q, "lambda": lambda, "d": d, "twisted": !split, "signs": signs, "seed": seed}),
                json!({"class": c.class, "d": c.d, "nu": c.nu.to_string()}),
                start,
            )
        }
        OracleCommand::Char { mu, rho } => {
            let v = brute_symmetric_character(&partition(mu)?, &partition(rho)?)?;
            oracle_json(json!({"oracle": "char", "mu": mu, "rho": rho}), json!(v), start)
        }
    })
}

fn run_verify(suite: &str, max_n: usize) -> Result<Output> {
    let ids: Vec<u8> = if suite == "all" {
        CRITERIA.iter().map(|c| c.0).collect()
    } else {
        suite
            .split(',')
            .map(|s| s.trim().parse::<u8>().map_err(|_| Error::Parse(format!("criterion id {s:?}"))))
            .collect::<Result<_>>()?
    };
    let mut lines = Vec::new();
    let mut failed = false;
    let mut internal = false;
    for id in ids {
        let r = run_criterion(id, max_n)?;
        failed |= !r.pass;
        internal |= r.internal;
        lines.push(r.to_string());
    }
    let text = lines.join("\n") + "\n";
    if internal {
        return Err(Error::Internal(text));
    }
    Ok(if failed { Output::Failed(text) } else { Output::Text(text) })
}

fn dispatch(cli: &Cli) -> Result<Output> {
    Ok(match &cli.command {
        Command::Series(g) => {
            let s = g.spec()?;
            Output::Json(json!({"group": s.to_string(), "n_prime": s.n_prime(), "series": enumerate_series(&s)}))
        }
        Command::Block(a) => {
            let s = a.group.spec()?;
            let series = series_for(&s, a.series)?;
            Output::Json(json!({"group": s.to_string(), "series": series, "data": enumerate_block(&s, &series)?}))
        }
        Command::Omega(a) => {
            let s = a.group.spec()?;
            Output::Json(omega_matrix(&s, &series_for(&s, a.series)?)?.to_json())
        }
        Command::Solve { kind, n, p, series, external } => match (kind, n, external) {
            (_, _, Some(path)) => {
                let doc = std::fs::read_to_string(path)
                    .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
                let sys = solve(&load_external_system(&doc)?)?;
                sys.verify()?;
                Output::Json(sys.to_json())
            }
            (Some(kind), Some(n), None) => {
                let s = GroupArgs { kind: *kind, n: *n, p: p.clone() }.spec()?;
                Output::Json(solve_series(&s, &series_for(&s, *series)?)?.to_json())
            }
            _ => return Err(Error::Invalid("solve needs --kind, --n and --series, or --external".into())),
        },
        Command::Green(t) => {
            let s = t.series.group.spec()?;
            let series = series_for(&s, t.series.series)?;
            let np = s.n_prime() as i64;
            let r = t.q_residue.unwrap_or(if s.twisted() { np - 1 } else { 1 }).rem_euclid(np);
            let table = green_table(&s, &series, r, &t.nu(&s, series.d)?)?;
            match cli.format {
                Format::Json => Output::Json(table.to_json()),
                Format::Csv => Output::Text(table.to_csv()),
            }
        }
        Command::Ennola(t) => {
            let s = t.series.group.spec()?;
            let series = series_for(&s, t.series.series)?;
            let rep = ennola_check(&s, &series, t.q_residue, &t.nu(&s, series.d)?)?;
            let v = serde_json::to_value(&rep).map_err(|e| Error::Internal(e.to_string()))?;
            if rep.passed() {
                Output::Json(v)
            } else {
                Output::Failed(serde_json::to_string_pretty(&v).unwrap() + "\n")
            }
        }
        Command::Oracle { which } => run_oracle(which)?,
        Command::Verify { suite, max_n } => run_verify(suite, *max_n)?,
    })
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Error::Internal(e.to_string()))
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_internal() {
        2
    } else {
        1
    }
}

/// Parse `args` (including the program name), run, and return the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    if cli.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return 1;
    }
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    if cli.format == Format::Csv && !matches!(cli.command, Command::Green(_)) {
        eprintln!("error: --format csv is only available for `green`");
        return 1;
    }
    let (text, code) = match dispatch(&cli) {
        Ok(Output::Json(v)) => (serde_json::to_string_pretty(&v).unwrap() + "\n", 0),
        Ok(Output::Text(t)) => (t, 0),
        Ok(Output::Failed(t)) => (t, 1),
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    match emit(&cli, &text) {
        Ok(()) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
