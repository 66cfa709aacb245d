use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use unicurve::sections::MapKind;

use crate::CliError;

/// An inclusive range written `a` or `a..b`; `b < a` denotes the empty range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn single(v: usize) -> Self {
        Span { start: v, end: v }
    }

    pub fn values(&self) -> RangeInclusive<usize> {
        self.start..=self.end
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad bound {t:?}: {e}"))
        };
        match s.split_once("..") {
            Some((a, b)) => Ok(Span::new(parse(a)?, parse(b.trim_start_matches('='))?)),
            None => parse(s).map(Span::single),
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start == self.end {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}..{}", self.start, self.end)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    VerifyPresentation,
    Classify { map: MapKind },
    Chars { expression: String },
    Report,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyPresentation => "verify-presentation",
            Command::Classify { .. } => "classify",
            Command::Chars { .. } => "chars",
            Command::Report => "report",
        }
    }

    /// Grid used when `--g` / `--n` are not given.
    pub fn default_grid(&self) -> (Span, Span) {
        match self {
            Command::VerifyPresentation => (Span::new(1, 5), Span::new(1, 4)),
            Command::Classify { .. } => (Span::new(4, 6), Span::new(0, 3)),
            Command::Chars { .. } => (Span::single(3), Span::single(0)),
            Command::Report => (Span::new(2, 5), Span::new(0, 3)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub g: Span,
    pub n: Span,
    pub cutoff: usize,
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
    #[serde(skip)]
    pub format: Format,
    #[serde(skip)]
    pub jobs: usize,
    #[serde(skip)]
    pub timings: bool,
}

/// Standing assumption on `(g, n)`.
pub fn hyperbolic(g: usize, n: usize) -> bool {
    2 * g + n > 2
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        let (g, n) = command.default_grid();
        RunConfig {
            command,
            g,
            n,
            cutoff: unicurve::presentation::DEFAULT_CUTOFF,
            cache_dir: None,
            format: Format::Text,
            jobs: 0,
            timings: false,
        }
    }

    pub fn with_grid(mut self, g: Span, n: Span) -> Self {
        self.g = g;
        self.n = n;
        self
    }

    /// Reject configurations no case of which can run.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.cutoff < 2 {
            return Err(CliError::Config(format!(
                "cutoff must be at least 2, got {}",
                self.cutoff
            )));
        }
        if self.g.start == 0 && self.g.end >= self.g.start {
            return Err(CliError::Config("genus must be at least 1".into()));
        }
        if matches!(self.command, Command::Chars { .. }) {
            return Ok(());
        }
        let cases = self.all_cases();
        if !cases.is_empty() && cases.iter().all(|&(g, n)| !hyperbolic(g, n)) {
            return Err(CliError::Config(format!(
                "no case in g={}, n={} satisfies 2g-2+n > 0",
                self.g, self.n
            )));
        }
        Ok(())
    }

    /// Every `(g, n)` of the grid in row-major order.
    pub fn all_cases(&self) -> Vec<(usize, usize)> {
        self.g
            .values()
            .flat_map(|g| self.n.values().map(move |n| (g, n)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans_parse() {
        assert_eq!("4".parse::<Span>().unwrap(), Span::single(4));
        assert_eq!("2..5".parse::<Span>().unwrap(), Span::new(2, 5));
        assert_eq!("2..=5".parse::<Span>().unwrap(), Span::new(2, 5));
        assert!("a..3".parse::<Span>().is_err());
        assert_eq!(Span::new(5, 4).values().count(), 0);
        assert_eq!(Span::new(2, 5).to_string(), "2..5");
    }

    #[test]
    fn grid_policy() {
        let cfg = RunConfig::new(Command::Report).with_grid(Span::single(1), Span::single(0));
        assert!(matches!(cfg.validate(), Err(CliError::Config(_))));
        let mixed = RunConfig::new(Command::Report).with_grid(Span::new(1, 2), Span::new(0, 1));
        assert!(mixed.validate().is_ok());
        let empty = RunConfig::new(Command::Report).with_grid(Span::new(3, 2), Span::single(1));
        assert!(empty.validate().is_ok());
        assert!(hyperbolic(1, 1) && !hyperbolic(1, 0) && hyperbolic(2, 0));
    }
}
