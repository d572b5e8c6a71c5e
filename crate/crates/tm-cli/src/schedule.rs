//! Stimulus schedule files: one `tick node label` line per stimulus, `#`
//! comments, blank lines ignored. The label is the rest of the line
//! (whitespace-normalized) and may be empty.

use tm_sim::Stimulus;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ScheduleParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ScheduleParseError {}

pub fn parse_schedule(text: &str) -> Result<Vec<Stimulus>, ScheduleParseError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let (Some(tick), Some(node)) = (words.next(), words.next()) else {
            return Err(ScheduleParseError {
                line: line_no,
                message: format!("expected `tick node label`, found `{line}`"),
            });
        };
        let tick: u64 = tick.parse().map_err(|_| ScheduleParseError {
            line: line_no,
            message: format!("`{tick}` is not a tick number"),
        })?;
        out.push(Stimulus {
            tick,
            node: node.to_owned(),
            label: words.collect::<Vec<_>>().join(" "),
        });
    }
    Ok(out)
}
