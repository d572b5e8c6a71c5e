use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tm_cli::{
    parse_schedule, render_json, run_corpus, to_dot, CorpusError, RenderError, RenderLevel,
    RenderOptions,
};
use tm_import::{
    import_context, import_fsm, initial_node, parse_context, parse_fsm, SYMBOL_SPACING,
};
use tm_sim::{conformance, run};
use tm_validate::{validate_all, Severity, ValidationReport};

const EXIT_OK: u8 = 0;
const EXIT_VALIDATION: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_EXHAUSTED: u8 = 3;
const EXIT_CONFORMANCE: u8 = 4;
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(name = "tm", version, about = "Model, check, simulate, and draw thimac systems")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a model file and print its canonical text form
    Parse { file: PathBuf },
    /// Report rule findings across all three model levels
    Validate {
        file: PathBuf,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Run a model under a stimulus schedule and report the trace
    Sim {
        file: PathBuf,
        /// Stimulus file: `tick node label` lines
        #[arg(long)]
        schedule: PathBuf,
        /// Tick budget for the run
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
        max_ticks: u64,
        /// Emit diagnostics and trace as JSON
        #[arg(long)]
        json: bool,
    },
    /// Redraft a state machine or context diagram as a model
    Import {
        /// State-machine input (`states:`/`initial:`/`alphabet:`/`trans:` lines)
        #[arg(long, value_name = "FILE", conflicts_with = "ctx", required_unless_present = "ctx")]
        fsm: Option<PathBuf>,
        /// Context-diagram input (`system:`/`entity:`/`flow:` lines)
        #[arg(long, value_name = "FILE")]
        ctx: Option<PathBuf>,
        /// Output model file (stdout when omitted)
        #[arg(short, long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Export a model level as DOT
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "static")]
        level: LevelArg,
        /// Collapse release/transfer/receive hand-off chains to single arrows
        #[arg(long)]
        elide_rtr: bool,
        /// Events to emphasize (dynamic and behavioral levels)
        #[arg(long, value_delimiter = ',')]
        highlight: Vec<String>,
        /// Output DOT file (stdout when omitted)
        #[arg(short, long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Run every fixture in a directory and compare expected completions
    Corpus { dir: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LevelArg {
    Static,
    Dynamic,
    Behavioral,
}

impl From<LevelArg> for RenderLevel {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::Static => RenderLevel::Static,
            LevelArg::Dynamic => RenderLevel::Dynamic,
            LevelArg::Behavioral => RenderLevel::Behavioral,
        }
    }
}

fn use_color() -> bool {
    std::env::var("TM_COLOR").as_deref() == Ok("1")
}

fn paint(word: &str, code: &str) -> String {
    if use_color() {
        format!("\x1b[{code}m{word}\x1b[0m")
    } else {
        word.to_owned()
    }
}

fn severity_word(severity: Severity) -> String {
    match severity {
        Severity::Error => paint("error", "31"),
        Severity::Warning => paint("warning", "33"),
    }
}

fn report_lines(report: &ValidationReport) -> String {
    let mut out = String::new();
    for d in &report.diagnostics {
        let subjects = d.subjects.join(" ");
        out.push_str(&format!(
            "{} {} {}: {}\n",
            severity_word(d.severity),
            d.rule,
            subjects,
            d.message
        ));
    }
    out.push_str(&format!(
        "{} error(s), {} warning(s)\n",
        report.error_count, report.warning_count
    ));
    out
}

fn read_input(path: &Path) -> Result<String, u8> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        EXIT_IO
    })
}

fn load_model(path: &Path) -> Result<tm_core::Model, u8> {
    let text = read_input(path)?;
    tm_dsl::parse(&text).map_err(|errors| {
        for e in &errors {
            eprintln!("{}: {e}", path.display());
        }
        EXIT_PARSE
    })
}

fn write_output(out: Option<&Path>, content: &str) -> Result<(), u8> {
    match out {
        Some(path) => fs::write(path, content).map_err(|e| {
            eprintln!("{}: {e}", path.display());
            EXIT_IO
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::from(EXIT_OK),
        Err(code) => ExitCode::from(code),
    }
}

fn dispatch(cli: Cli) -> Result<(), u8> {
    match cli.cmd {
        Cmd::Parse { file } => {
            let model = load_model(&file)?;
            let text = tm_dsl::serialize(&model).map_err(|e| {
                eprintln!("{}: {e}", file.display());
                EXIT_IO
            })?;
            print!("{text}");
            Ok(())
        }

        Cmd::Validate { file, json } => {
            let model = load_model(&file)?;
            let report = validate_all(&model);
            if json {
                print!("{}", render_json(&model.name, &report, None));
            } else {
                print!("{}", report_lines(&report));
            }
            if report.has_errors() {
                Err(EXIT_VALIDATION)
            } else {
                Ok(())
            }
        }

        Cmd::Sim {
            file,
            schedule,
            max_ticks,
            json,
        } => {
            let model = load_model(&file)?;
            let report = validate_all(&model);
            if report.has_errors() {
                eprint!("{}", report_lines(&report));
                return Err(EXIT_VALIDATION);
            }
            let stimuli = parse_schedule(&read_input(&schedule)?).map_err(|e| {
                eprintln!("{}: {e}", schedule.display());
                EXIT_PARSE
            })?;
            let trace = run(&model, &stimuli, max_ticks).map_err(|e| {
                eprintln!("{}: {e}", schedule.display());
                EXIT_PARSE
            })?;
            let conf = conformance(&trace, &model);
            if json {
                print!("{}", render_json(&model.name, &report, Some(&trace)));
            } else {
                print!("{}", trace.render_log());
                for v in &conf.violations {
                    println!("{} {v}", paint("violation:", "31"));
                }
                for w in &conf.warnings {
                    println!("{} {w}", paint("window:", "33"));
                }
                if trace.exhausted {
                    println!("budget of {max_ticks} tick(s) exhausted with work remaining");
                } else {
                    println!(
                        "quiet at tick {}: {} execution(s), {} completion(s)",
                        trace.final_state.tick,
                        trace.executions.len(),
                        trace.completions.len()
                    );
                }
            }
            if trace.exhausted {
                Err(EXIT_EXHAUSTED)
            } else if !conf.violations.is_empty() {
                Err(EXIT_CONFORMANCE)
            } else {
                Ok(())
            }
        }

        Cmd::Import { fsm, ctx, out } => {
            let text = if let Some(path) = fsm {
                let src = read_input(&path)?;
                let spec = parse_fsm(&src).map_err(|e| {
                    eprintln!("{}: {e}", path.display());
                    EXIT_PARSE
                })?;
                let model = import_fsm(&spec).map_err(|e| {
                    eprintln!("{}: {e}", path.display());
                    EXIT_VALIDATION
                })?;
                let body = tm_dsl::serialize(&model).expect("imports serialize");
                format!(
                    "// start: stimulate {} with label \"{}\" at tick 0 to set the initial state\n\
                     // symbols: one stimulus per {} ticks, so each hand-off quiesces before the next\n\
                     // note: the tick-0 bootstrap completes the initial state's event with no preceding\n\
                     // symbol, so a conformance check may flag that one completion\n{body}",
                    initial_node(&spec),
                    spec.initial,
                    SYMBOL_SPACING
                )
            } else {
                let path = ctx.expect("clap requires one input");
                let src = read_input(&path)?;
                let spec = parse_context(&src).map_err(|e| {
                    eprintln!("{}: {e}", path.display());
                    EXIT_PARSE
                })?;
                let model = import_context(&spec).map_err(|e| {
                    eprintln!("{}: {e}", path.display());
                    EXIT_VALIDATION
                })?;
                tm_dsl::serialize(&model).expect("imports serialize")
            };
            write_output(out.as_deref(), &text)
        }

        Cmd::Render {
            file,
            level,
            elide_rtr,
            highlight,
            out,
        } => {
            let model = load_model(&file)?;
            let opts = RenderOptions {
                level: level.into(),
                elide_rtr,
                highlight,
            };
            let dot = to_dot(&model, &opts).map_err(|e| match e {
                RenderError::Invalid { report } => {
                    eprint!("{}", report_lines(&report));
                    EXIT_VALIDATION
                }
                RenderError::UnknownHighlight { .. } => {
                    eprintln!("{}: {e}", file.display());
                    EXIT_VALIDATION
                }
            })?;
            write_output(out.as_deref(), &dot)
        }

        Cmd::Corpus { dir } => {
            let report = run_corpus(&dir).map_err(|e| {
                eprintln!("{e}");
                match e {
                    CorpusError::NoFixtures(_) => EXIT_VALIDATION,
                    CorpusError::Io(..) => EXIT_IO,
                }
            })?;
            print!("{}", report.render(use_color()));
            if report.all_passed() {
                Ok(())
            } else {
                Err(EXIT_VALIDATION)
            }
        }
    }
}
