use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use frobdim::corpus::verify_corpus;
use frobdim::frobenius::{ext_frobenius, tor_frobenius, tor_frobenius_via_pushforward, FrobTable, TableKind};
use frobdim::groebner::DEFAULT_STEP_BUDGET;
use frobdim::input::{read_input, InputFile};
use frobdim::report::{Report, RingBlock};
use frobdim::{decide_flat_dimension, minimal_free_resolution, projective_dimension_oracle, Error};

#[derive(Parser)]
#[command(name = "frobdim", version, about = "Decide finite flat dimension from Frobenius Tor/Ext vanishing")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Reduction-step budget per Gröbner computation.
    #[arg(long, global = true, default_value_t = DEFAULT_STEP_BUDGET)]
    budget: u64,
    /// Seed for extra random modules in verify-corpus.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    Twist,
    Pushforward,
}

#[derive(Subcommand)]
enum Command {
    /// Ring invariants.
    Invariants { file: PathBuf },
    /// Tor_i(ᵉR, M) over the configured window and e list.
    TorTable {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "twist")]
        route: Route,
    },
    /// Ext^i(ᵉR, M) over the configured window and e list.
    ExtTable { file: PathBuf },
    /// Run the criteria and report a verdict.
    Decide { file: PathBuf },
    /// Exact projective dimension and Betti numbers.
    Oracle { file: PathBuf },
    /// Check every corpus file for verdict/oracle consistency.
    VerifyCorpus { dir: PathBuf },
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::ResourceExceeded(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn ring_block(f: &InputFile) -> Result<RingBlock, Error> {
    Ok(RingBlock::new(&f.ring, f.ring.invariants()?))
}

fn tables(f: &InputFile, kind: TableKind, route: Route) -> Result<Vec<FrobTable>, Error> {
    let cfg = f.criteria.validated()?;
    let window = cfg.window.unwrap_or(f.ring.invariants()?.r_window);
    let t = usize::try_from(cfg.t)
        .ok()
        .filter(|&t| t >= 1)
        .ok_or_else(|| Error::Precondition("module tables need t >= 1".into()))?;
    cfg.e_list
        .iter()
        .map(|&e| match (kind, route) {
            (TableKind::Ext, _) => ext_frobenius(&f.module, t, window, e),
            (TableKind::Tor, Route::Twist) => tor_frobenius(&f.module, t, window, e),
            (TableKind::Tor, Route::Pushforward) => {
                let mut cells = std::collections::BTreeMap::new();
                for i in t..t + window {
                    cells.insert((i as i64, e), tor_frobenius_via_pushforward(&f.module, i, e)?);
                }
                Ok(FrobTable { kind, e, t: t as i64, window, cells })
            }
        })
        .collect()
}

fn run(cli: &Cli) -> Result<(Report, u8), Error> {
    let load = |p: &PathBuf| read_input(p, cli.budget);
    Ok(match &cli.command {
        Command::Invariants { file } => {
            let f = load(file)?;
            let mut r = Report::new("invariants");
            r.ring = Some(ring_block(&f)?);
            (r, 0)
        }
        Command::TorTable { file, route } => {
            let f = load(file)?;
            let mut r = Report::new("tor-table");
            r.ring = Some(ring_block(&f)?);
            r.add_tables(&tables(&f, TableKind::Tor, *route)?);
            (r, 0)
        }
        Command::ExtTable { file } => {
            let f = load(file)?;
            let mut r = Report::new("ext-table");
            r.ring = Some(ring_block(&f)?);
            r.add_tables(&tables(&f, TableKind::Ext, Route::Twist)?);
            (r, 0)
        }
        Command::Decide { file } => {
            let f = load(file)?;
            let v = decide_flat_dimension(&f.ring, &f.module, &f.criteria)?;
            let mut r = Report::new("decide");
            r.ring = Some(ring_block(&f)?);
            r.add_tables(&v.tables);
            let code = if v.resource_exhausted { 2 } else { 0 };
            r.verdict = Some(v);
            (r, code)
        }
        Command::Oracle { file } => {
            let f = load(file)?;
            let pd = projective_dimension_oracle(&f.module)?;
            let depth = f.ring.invariants()?.depth;
            let res = minimal_free_resolution(&f.module, depth + 1)?;
            let mut r = Report::new("oracle");
            r.ring = Some(ring_block(&f)?);
            r.oracle_pd = Some(pd);
            r.betti = Some(res.betti);
            (r, 0)
        }
        Command::VerifyCorpus { dir } => {
            let report = verify_corpus(dir, cli.budget, cli.seed)?;
            let code = report.exit_code() as u8;
            let mut r = Report::new("verify-corpus");
            r.corpus = Some(report);
            (r, code)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((report, code)) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::from(code)
        }
        Err(e) => fail(&e),
    }
}
