//! Command-line front end: every pipeline stage as a subcommand with
//! scriptable output. Exit codes: 0 success, 1 analysis error, 2 usage
//! error, 3 property-suite failure.

use clap::{Parser, Subcommand};
use omega_robust::*;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "omega-robust")]
#[command(about = "Robustness machinery for ω-regular languages given as parity automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an automaton and report its shape.
    Validate { file: PathBuf },
    /// Lower every state rank to its minimum.
    Minimize {
        file: PathBuf,
        /// Output path (stdout if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Right-congruence classes with shortlex representatives.
    Classes { file: PathBuf },
    /// Rank of a period infix after a spoke.
    InfixRank {
        file: PathBuf,
        /// Spoke word (may be empty).
        #[arg(short, long, default_value = "")]
        u: String,
        /// Infix word (may be empty).
        #[arg(short, long, default_value = "")]
        v: String,
    },
    /// Natural rank of a lasso word SPOKE;PERIOD.
    WordRank {
        file: PathBuf,
        #[arg(short, long)]
        word: String,
    },
    /// Per-letter analysis table of a lasso word.
    Letters {
        file: PathBuf,
        #[arg(short, long)]
        word: String,
        /// Number of positions.
        #[arg(short, long, default_value_t = 10)]
        n: usize,
    },
    /// Construct the vigor DPA.
    Vigor {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Construct the robustness (forgetful) DPA.
    Robust {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Robustness value of a lasso word.
    Value {
        file: PathBuf,
        #[arg(short, long)]
        word: String,
        /// Decomposition mode: as-given | shortest | loop-entry.
        #[arg(long, default_value = "shortest")]
        dcmp: String,
    },
    /// Compare the robustness of two lasso words.
    Compare {
        file: PathBuf,
        #[arg(long)]
        w1: String,
        #[arg(long)]
        w2: String,
        #[arg(long, default_value = "shortest")]
        dcmp: String,
    },
    /// DOT export (plain or forgetful documents).
    Dot {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Inclusion-measure diagnostic.
    Wagner { file: PathBuf },
    /// Run the bounded-exhaustive property suite against an automaton.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_spoke: usize,
        #[arg(long, default_value_t = 4)]
        max_period: usize,
    },
}

fn learn_options() -> LearnOptions {
    let mut opts = LearnOptions::default();
    if let Ok(depth) = std::env::var("OMEGA_ROBUST_EQ_DEPTH") {
        if let Ok(d) = depth.parse::<usize>() {
            opts.depth = Some(d);
        }
    }
    opts
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| AutError::BadHeader {
        line: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })
}

fn read_dpa(path: &PathBuf) -> Result<Dpa> {
    parse_dpa(&read_file(path)?)
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| AutError::BadHeader {
            line: 0,
            msg: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_mode(s: &str) -> Result<DecompMode> {
    s.parse()
        .map_err(|e: String| AutError::BadHeader { line: 0, msg: e })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Validate { file } => {
            let aut = read_dpa(&file)?;
            println!(
                "ok: {} states, {} symbols, initial {}",
                aut.states(),
                aut.alphabet.len(),
                aut.initial
            );
        }
        Command::Minimize { file, output } => {
            let min = minimize_ranks(&read_dpa(&file)?)?;
            emit(&output, &serialize_dpa(&min))?;
        }
        Command::Classes { file } => {
            let an = Analyzer::new(&read_dpa(&file)?)?;
            for (c, rep) in an.classes.representatives.iter().enumerate() {
                let rep_txt = if rep.is_empty() {
                    "<eps>".to_string()
                } else {
                    an.aut.alphabet.render_ids(rep)
                };
                println!(
                    "class {c}: representative {rep_txt} states {:?}",
                    an.classes.members[c]
                );
            }
        }
        Command::InfixRank { file, u, v } => {
            let an = Analyzer::new(&read_dpa(&file)?)?;
            let spoke = an.aut.alphabet.parse_word(&u)?;
            let infix = an.aut.alphabet.parse_word(&v)?;
            let q = an.aut.run_ids(an.aut.initial, &spoke);
            println!("{}", an.infix_rank_states(q, &infix));
        }
        Command::WordRank { file, word } => {
            let an = Analyzer::new(&read_dpa(&file)?)?;
            let w = LassoWord::parse(&an.aut.alphabet, &word)?;
            println!("{}", an.word_rank(&w)?);
        }
        Command::Letters { file, word, n } => {
            let an = Analyzer::new(&read_dpa(&file)?)?;
            let w = LassoWord::parse(&an.aut.alphabet, &word)?;
            let gray = an.infix_rank(&FiniteWord::empty(), &FiniteWord::empty())?;
            let rows = letter_table(&an, &w, n)?;
            let colors = color::letter_colors(&an, &w, n)?;
            println!("{:>3} {:>7} {:>12} {:>6} {:>9} {:>5} {:>7}", "k", "letter", "influential", "reset", "dom-suf", "rank", "color");
            println!("{:>3} {:>7} {:>12} {:>6} {:>9} {:>5} {:>7}", 0, "-", "-", 0, "<eps>", gray, "-");
            for (row, color) in rows.iter().zip(colors.iter()) {
                let dom = if row.dom_suffix.is_empty() {
                    "<eps>".to_string()
                } else {
                    an.aut
                        .alphabet
                        .render_ids(&an.aut.alphabet.word_ids(&row.dom_suffix)?)
                };
                println!(
                    "{:>3} {:>7} {:>12} {:>6} {:>9} {:>5} {:>7}",
                    row.index,
                    row.letter.token(),
                    if row.influential { "T" } else { "F" },
                    row.reset_point,
                    dom,
                    row.letter_rank.to_string(),
                    color.to_string()
                );
            }
        }
        Command::Vigor { file, output } => {
            let build = build_vigor(&read_dpa(&file)?, learn_options())?;
            emit(&output, &serialize_dpa(&build.vigor))?;
        }
        Command::Robust { file, output } => {
            let machine = RobustnessMachine::with_options(&read_dpa(&file)?, learn_options())?;
            emit(&output, &serialize_forgetful(&machine.robust))?;
        }
        Command::Value { file, word, dcmp } => {
            let aut = read_dpa(&file)?;
            let mode = parse_mode(&dcmp)?;
            let machine = RobustnessMachine::with_options(&aut, learn_options())?;
            let w = LassoWord::parse(&aut.alphabet, &word)?;
            println!("{}", machine.robustness_value(&w, mode)?);
        }
        Command::Compare { file, w1, w2, dcmp } => {
            let aut = read_dpa(&file)?;
            let mode = parse_mode(&dcmp)?;
            let machine = RobustnessMachine::with_options(&aut, learn_options())?;
            let a = LassoWord::parse(&aut.alphabet, &w1)?;
            let b = LassoWord::parse(&aut.alphabet, &w2)?;
            let (ord, va, vb) = machine.compare(&a, &b, mode)?;
            let sign = match ord {
                std::cmp::Ordering::Greater => ">",
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
            };
            println!("{sign}");
            println!("w1: {va}");
            println!("w2: {vb}");
        }
        Command::Dot { file, output } => {
            let text = read_file(&file)?;
            let dot = match parse_dpa(&text) {
                Ok(aut) => export_dot(&aut),
                Err(_) => export_dot_forgetful(&parse_forgetful(&text)?),
            };
            emit(&output, &dot)?;
        }
        Command::Wagner { file } => {
            println!("{}", wagner_class(&read_dpa(&file)?)?);
        }
        Command::Oracle {
            file,
            max_spoke,
            max_period,
        } => {
            let aut = read_dpa(&file)?;
            let bounds = Bounds {
                max_spoke,
                max_period,
            };
            let report = run_suite_fixture("input", &aut, bounds)?;
            println!("{}", report.json_lines());
            eprintln!("{}", report.text_summary());
            if !report.failures().is_empty() {
                return Ok(ExitCode::from(3));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
