//! The corpus harness: every `.tm` file in a directory is parsed, validated,
//! simulated under its sibling `.schedule`, conformance-checked, and its
//! completion sequence compared against the sibling `.expected` file. One
//! line per fixture, nonzero exit on any mismatch — the repeatable proof
//! that the shipped models still do what their write-ups say.

use std::fs;
use std::path::{Path, PathBuf};

use tm_sim::{conformance, run};
use tm_validate::validate_all;

use crate::schedule::parse_schedule;

/// Tick budget per fixture; generous for desk-sized models.
pub const CORPUS_MAX_TICKS: u64 = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureOutcome {
    pub name: String,
    /// `None` means pass; otherwise the failure detail, possibly multi-line.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusReport {
    pub outcomes: Vec<FixtureOutcome>,
}

impl CorpusReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.detail.is_none())
    }

    pub fn render(&self, color: bool) -> String {
        let paint = |word: &str, code: &str| {
            if color {
                format!("\x1b[{code}m{word}\x1b[0m")
            } else {
                word.to_owned()
            }
        };
        let mut out = String::new();
        let mut passed = 0;
        for o in &self.outcomes {
            match &o.detail {
                None => {
                    passed += 1;
                    out.push_str(&format!("fixture {}: {}\n", o.name, paint("PASS", "32")));
                }
                Some(detail) => {
                    out.push_str(&format!("fixture {}: {}\n", o.name, paint("FAIL", "31")));
                    for line in detail.lines() {
                        out.push_str(&format!("  {line}\n"));
                    }
                }
            }
        }
        out.push_str(&format!(
            "corpus: {passed} passed, {} failed\n",
            self.outcomes.len() - passed
        ));
        out
    }
}

#[derive(Debug)]
pub enum CorpusError {
    NoFixtures(PathBuf),
    Io(PathBuf, std::io::Error),
}

impl std::fmt::Display for CorpusError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CorpusError::NoFixtures(dir) => write!(f, "no fixtures found in {}", dir.display()),
            CorpusError::Io(path, err) => write!(f, "{}: {err}", path.display()),
        }
    }
}

impl std::error::Error for CorpusError {}

fn read(path: &Path) -> Result<String, CorpusError> {
    fs::read_to_string(path).map_err(|e| CorpusError::Io(path.to_owned(), e))
}

/// Completion lines in the `.expected` format: `tick event`, one per line.
pub fn render_completions(completions: &[(u64, String)]) -> String {
    completions
        .iter()
        .map(|(tick, event)| format!("{tick} {event}\n"))
        .collect()
}

fn parse_expected(text: &str) -> Vec<(String, String)> {
    text.lines()
        .map(|raw| raw.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .filter_map(|l| {
            let mut words = l.split_whitespace();
            Some((words.next()?.to_owned(), words.next()?.to_owned()))
        })
        .collect()
}

fn check_fixture(dir: &Path, stem: &str) -> Result<Option<String>, CorpusError> {
    let text = read(&dir.join(format!("{stem}.tm")))?;
    let model = match tm_dsl::parse(&text) {
        Ok(m) => m,
        Err(errors) => {
            let lines: Vec<String> = errors.iter().map(|e| format!("parse: {e}")).collect();
            return Ok(Some(lines.join("\n")));
        }
    };

    let report = validate_all(&model);
    if report.has_errors() {
        let mut detail = format!("validation: {} error(s)", report.error_count);
        for d in &report.diagnostics {
            detail.push_str(&format!("\n{d}"));
        }
        return Ok(Some(detail));
    }

    let schedule_path = dir.join(format!("{stem}.schedule"));
    let schedule = if schedule_path.exists() {
        match parse_schedule(&read(&schedule_path)?) {
            Ok(s) => s,
            Err(e) => return Ok(Some(format!("schedule: {e}"))),
        }
    } else {
        Vec::new()
    };

    let trace = match run(&model, &schedule, CORPUS_MAX_TICKS) {
        Ok(t) => t,
        Err(e) => return Ok(Some(format!("simulation: {e}"))),
    };
    if trace.exhausted {
        return Ok(Some(format!(
            "simulation: budget of {CORPUS_MAX_TICKS} ticks exhausted"
        )));
    }

    let conf = conformance(&trace, &model);
    if !conf.violations.is_empty() {
        let mut detail = format!("conformance: {} violation(s)", conf.violations.len());
        for v in &conf.violations {
            detail.push_str(&format!("\n{v}"));
        }
        return Ok(Some(detail));
    }

    let expected_path = dir.join(format!("{stem}.expected"));
    if !expected_path.exists() {
        return Ok(Some(format!("missing expectation file {stem}.expected")));
    }
    let expected = parse_expected(&read(&expected_path)?);
    let actual: Vec<(String, String)> = trace
        .completions
        .iter()
        .map(|(tick, event)| (tick.to_string(), event.clone()))
        .collect();
    if expected != actual {
        let fmt = |rows: &[(String, String)]| {
            if rows.is_empty() {
                "(none)".to_owned()
            } else {
                rows.iter()
                    .map(|(t, e)| format!("{t} {e}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            }
        };
        return Ok(Some(format!(
            "completions differ\nexpected: {}\n  actual: {}",
            fmt(&expected),
            fmt(&actual)
        )));
    }
    Ok(None)
}

pub fn run_corpus(dir: &Path) -> Result<CorpusReport, CorpusError> {
    let entries = fs::read_dir(dir).map_err(|e| CorpusError::Io(dir.to_owned(), e))?;
    let mut stems: Vec<String> = entries
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "tm"))
        .filter_map(|p| p.file_stem().map(|s| s.to_string_lossy().into_owned()))
        .collect();
    stems.sort();
    if stems.is_empty() {
        return Err(CorpusError::NoFixtures(dir.to_owned()));
    }

    let mut outcomes = Vec::new();
    for stem in stems {
        let detail = check_fixture(dir, &stem)?;
        outcomes.push(FixtureOutcome { name: stem, detail });
    }
    Ok(CorpusReport { outcomes })
}
