use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use demand_tf::exact::{dp_max_weight_with, dp_solve_with, oracle_solve_with, ExactLimits};
use demand_tf::fas::minimum_fas;
use demand_tf::fixer::{
    solve_fpt_with, solve_with_rounds_with, solve_xp_with, FixerError, FixerLimits,
};
use demand_tf::model::{
    check_solution, simulate, validate_instance, Seeding, ValidatedInstance,
};

use demand_tf_cli::format::{parse_instance, serialize_instance, ParsedFile};
use demand_tf_cli::gen::{gen_instance, GenMode, GenParams};
use demand_tf_cli::reduce::reduce_tf;
use demand_tf_cli::render::{render_bracket, RenderFormat};

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 10;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "demand-tf", about = "Fix single-elimination brackets so demanded matches are played", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance and print a seeding on success (exit 0 yes, 10 no)
    Solve {
        #[arg(long, value_enum)]
        algo: Algo,
        /// Maximize total weight of played demands instead of requiring all
        /// (dp only; missing weights default to 1)
        #[arg(long)]
        weighted: bool,
        /// Require a round constraint on every demand
        #[arg(long)]
        rounds_strict: bool,
        /// Also print the realized bracket
        #[arg(long, value_enum)]
        render: Option<RenderArg>,
        /// Override the player-count guard
        #[arg(long)]
        max_n: Option<usize>,
        /// Override the feedback-arc-set guard (xp/fpt)
        #[arg(long)]
        max_k: Option<usize>,
        file: PathBuf,
    },
    /// Generate a seeded instance to stdout
    Gen {
        #[arg(long)]
        n: usize,
        /// Arcs reversed in the acyclic base order
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        demands: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Yes)]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rewrite a tournament-fixing instance (target line) as a demand instance
    Reduce { file: PathBuf },
    /// Check a seeding against an instance (exit 0 ok, 10 violated)
    Verify {
        file: PathBuf,
        /// Space-separated player ids
        #[arg(long)]
        seeding: String,
    },
    /// Print a minimum feedback arc set and the strength order
    Fas { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Oracle,
    Dp,
    Xp,
    Fpt,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Yes,
    Uniform,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderArg {
    Text,
    Dot,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Solve { algo, weighted, rounds_strict, render, max_n, max_k, file } => {
            let vi = load_demand_instance(&file)?;
            if rounds_strict {
                if let Some(&(u, v)) = vi.demands().iter().find(|d| !vi.rounds().contains_key(d)) {
                    return Err(format!("--rounds-strict: demand ({u},{v}) has no round line"));
                }
            }
            solve(&vi, algo, weighted, render, max_n, max_k)
        }
        Command::Gen { n, k, demands, mode, seed } => {
            let mode = match mode {
                ModeArg::Yes => GenMode::Yes,
                ModeArg::Uniform => GenMode::Uniform,
            };
            let inst = gen_instance(&GenParams { n, k_target: k, demands, mode, seed })
                .map_err(|e| e.to_string())?;
            print!("{}", serialize_instance(&inst));
            Ok(EXIT_YES)
        }
        Command::Reduce { file } => {
            let text = read(&file)?;
            match parse_instance(&text).map_err(|e| format!("{}: {e}", file.display()))? {
                ParsedFile::Tf(tf) => {
                    let inst = reduce_tf(&tf).map_err(|e| e.to_string())?;
                    print!("{}", serialize_instance(&inst));
                    Ok(EXIT_YES)
                }
                ParsedFile::Demand(_) => {
                    Err("reduce expects a tournament-fixing file with a target line".into())
                }
            }
        }
        Command::Verify { file, seeding } => {
            let vi = load_demand_instance(&file)?;
            let ids: Vec<usize> = seeding
                .split_whitespace()
                .map(|s| s.parse::<usize>().map_err(|_| format!("bad seeding entry '{s}'")))
                .collect::<Result<_, _>>()?;
            let seeding = Seeding::new(ids).map_err(|e| e.to_string())?;
            let report = check_solution(&vi, &seeding).map_err(|e| e.to_string())?;
            if report.ok {
                println!("ok");
                Ok(EXIT_YES)
            } else {
                for (u, v) in &report.missed {
                    println!("missed {u} {v}");
                }
                for (u, v) in &report.round_violations {
                    println!("wrong-round {u} {v}");
                }
                Ok(EXIT_NO)
            }
        }
        Command::Fas { file } => {
            let text = read(&file)?;
            let t = match parse_instance(&text).map_err(|e| format!("{}: {e}", file.display()))? {
                ParsedFile::Demand(inst) => inst.tournament,
                ParsedFile::Tf(tf) => tf.tournament,
            };
            let fs = minimum_fas(&t);
            println!("k {}", fs.k());
            let sigma: Vec<String> = fs
                .order()
                .players_strongest_first()
                .iter()
                .map(|v| v.to_string())
                .collect();
            println!("sigma {}", sigma.join(" "));
            for (u, v) in fs.arcs() {
                println!("feedback {u} {v}");
            }
            Ok(EXIT_YES)
        }
    }
}

fn solve(
    vi: &ValidatedInstance,
    algo: Algo,
    weighted: bool,
    render: Option<RenderArg>,
    max_n: Option<usize>,
    max_k: Option<usize>,
) -> Result<u8, String> {
    let mut exact_limits = ExactLimits::default();
    if let Some(n) = max_n {
        exact_limits.oracle_max_n = n;
        exact_limits.dp_max_n = n;
    }
    let mut fixer_limits = FixerLimits::default();
    if let Some(n) = max_n {
        fixer_limits.max_n = n;
    }
    if let Some(k) = max_k {
        fixer_limits.max_k = k;
    }

    if weighted {
        if !matches!(algo, Algo::Dp) {
            return Err("--weighted requires --algo dp".into());
        }
        let weights: BTreeMap<_, _> = vi
            .demands()
            .iter()
            .map(|&d| (d, vi.weights().get(&d).copied().unwrap_or(1)))
            .collect();
        let (best, seeding) =
            dp_max_weight_with(vi, &weights, &exact_limits).map_err(|e| e.to_string())?;
        println!("{seeding}");
        println!("weight {best}");
        print_render(vi, &seeding, render)?;
        return Ok(EXIT_YES);
    }

    let outcome = match algo {
        Algo::Oracle => oracle_solve_with(vi, &exact_limits).map_err(|e| e.to_string())?,
        Algo::Dp => dp_solve_with(vi, &exact_limits).map_err(|e| e.to_string())?,
        Algo::Xp => {
            let run = if vi.rounds().is_empty() {
                solve_xp_with(vi, &fixer_limits)
            } else {
                solve_with_rounds_with(vi, &fixer_limits)
            };
            match run {
                Ok(s) => s,
                // contradictory pins cannot be satisfied by any seeding
                Err(FixerError::RoundConflict(_)) => None,
                Err(e) => return Err(e.to_string()),
            }
        }
        Algo::Fpt => solve_fpt_with(vi, &fixer_limits).map_err(|e| e.to_string())?,
    };
    match outcome {
        Some(seeding) => {
            println!("{seeding}");
            print_render(vi, &seeding, render)?;
            Ok(EXIT_YES)
        }
        None => {
            eprintln!("no seeding realizes the demands");
            Ok(EXIT_NO)
        }
    }
}

fn print_render(
    vi: &ValidatedInstance,
    seeding: &Seeding,
    render: Option<RenderArg>,
) -> Result<(), String> {
    let Some(which) = render else {
        return Ok(());
    };
    let sim = simulate(vi.tournament(), seeding).map_err(|e| e.to_string())?;
    let format = match which {
        RenderArg::Text => RenderFormat::Text,
        RenderArg::Dot => RenderFormat::Dot,
    };
    let out = render_bracket(&sim.sba, vi.demands(), format).map_err(|e| e.to_string())?;
    print!("{out}");
    Ok(())
}

fn load_demand_instance(file: &PathBuf) -> Result<ValidatedInstance, String> {
    let text = read(file)?;
    match parse_instance(&text).map_err(|e| format!("{}: {e}", file.display()))? {
        ParsedFile::Demand(inst) => validate_instance(inst).map_err(|e| e.to_string()),
        ParsedFile::Tf(_) => {
            Err("this is a tournament-fixing file; run `reduce` first".into())
        }
    }
}

fn read(file: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))
}
