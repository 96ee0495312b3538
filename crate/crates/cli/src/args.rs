use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "prank", version, about = "Exact p-ranks of y^m = x^n + 1 and related curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// p-rank of a single curve
    Prank(PrankArgs),
    /// Closed forms of a family table next to the counter
    Table(TableArgs),
    /// Run a verification suite
    Verify(VerifyArgs),
    /// Counter results over a grid of (p, m, n)
    Sweep(SweepArgs),
    /// Supersingularity report for y^m = x^n + 1
    Classify(ClassifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Md,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveKind {
    /// y^m = x^n + 1
    Fermat,
    /// y^2 = x^n + 1
    Cn,
    /// y^2 = x(x^n + 1)
    Dn,
    Dgz,
    Bks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Naive,
    Dp,
    Oracle,
    Closed,
}

#[derive(Debug, Args)]
pub struct PrankArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub h: Option<u32>,
    #[arg(long, value_enum, default_value = "fermat")]
    pub curve: CurveKind,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
}

/// Which family table to print; numbers 1-5 or the names below.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    FermatFamilies,
    ZeroFamilies,
    HyperFamilies,
    HyperDelta,
    TwistedDelta,
}

impl TableId {
    pub const ALL: [TableId; 5] = [
        TableId::FermatFamilies,
        TableId::ZeroFamilies,
        TableId::HyperFamilies,
        TableId::HyperDelta,
        TableId::TwistedDelta,
    ];

    pub fn number(self) -> u8 {
        match self {
            TableId::FermatFamilies => 1,
            TableId::ZeroFamilies => 2,
            TableId::HyperFamilies => 3,
            TableId::HyperDelta => 4,
            TableId::TwistedDelta => 5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TableId::FermatFamilies => "fermat-families",
            TableId::ZeroFamilies => "zero-families",
            TableId::HyperFamilies => "hyper-families",
            TableId::HyperDelta => "hyper-delta",
            TableId::TwistedDelta => "twisted-delta",
        }
    }
}

impl FromStr for TableId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TableId::ALL
            .into_iter()
            .find(|t| s == t.name() || s == t.number().to_string())
            .ok_or_else(|| {
                let names: Vec<_> = TableId::ALL.iter().map(|t| t.name()).collect();
                format!("unknown table '{s}' (use 1-5 or one of {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlphaCases {
    /// smallest n for each item
    First,
    /// every n up to --max-n
    All,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub table: TableId,
    #[arg(long)]
    pub p: u64,
    /// exponent range for the hyperelliptic shapes
    #[arg(long, default_value = "1..1")]
    pub r: InclusiveRange,
    #[arg(long, value_enum, default_value = "first")]
    pub alpha_cases: AlphaCases,
    /// search bound on n for the correction-term tables
    #[arg(long, default_value_t = 1000)]
    pub max_n: u64,
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Formulas,
    Oracle,
    Sets,
    KaniRosen,
    CongruenceBox,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub max_genus: Option<u128>,
    #[arg(long, default_value_t = 13)]
    pub max_p: u64,
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub p_list: Vec<u64>,
    #[arg(long)]
    pub m_range: InclusiveRange,
    #[arg(long)]
    pub n_range: InclusiveRange,
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub m: u64,
    #[arg(long)]
    pub n: u64,
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
}

/// `a..b` or `a..=b` (both inclusive) or a single value `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InclusiveRange {
    pub start: u64,
    pub end: u64,
}

impl InclusiveRange {
    pub fn iter(self) -> impl Iterator<Item = u64> {
        self.start..=self.end
    }
}

impl FromStr for InclusiveRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("bad range bound '{x}': {e}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(format!("empty range {s}"));
        }
        Ok(InclusiveRange { start, end })
    }
}

impl fmt::Display for InclusiveRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        let r: InclusiveRange = "2..6".parse().unwrap();
        assert_eq!(r.iter().count(), 5);
        assert_eq!("2..=6".parse::<InclusiveRange>().unwrap(), r);
        assert_eq!("4".parse::<InclusiveRange>().unwrap().iter().collect::<Vec<_>>(), vec![4]);
        assert!("6..2".parse::<InclusiveRange>().is_err());
        assert!("a..2".parse::<InclusiveRange>().is_err());
    }

    #[test]
    fn tables_by_number_or_name() {
        for t in TableId::ALL {
            assert_eq!(t.number().to_string().parse::<TableId>().unwrap(), t);
            assert_eq!(t.name().parse::<TableId>().unwrap(), t);
        }
        assert!("6".parse::<TableId>().is_err());
    }
}
