use clap::{Args, Parser, Subcommand, ValueEnum};
use current::LieData;
use scalars::BigRational;
use winterp::Param;

use crate::suites::Suite;
use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "wcalc", version, about = "Exact computations in interpolated W-algebras and vacuum modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The λ-bracket of two generators of W(gl_T) or W(po_T).
    Bracket { i: i64, j: i64 },
    /// A Segal-Sugawara vector of degree M.
    Ssvec {
        m: u32,
        #[arg(long, value_enum, default_value = "anti")]
        variant: VariantArg,
    },
    /// Runs a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Diagram operations.
    Diagram {
        #[command(subcommand)]
        op: DiagramOp,
    },
    /// The operator, generators and bracket table of a W-algebra as JSON.
    Dump {
        /// Number of generators in the bracket table.
        #[arg(long, default_value_t = 3)]
        table: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum DiagramOp {
    /// `y ∘ x` for `x: BOTTOM → MIDDLE` and `y: MIDDLE → TOP`.
    Compose { bottom: String, middle: String, top: String, x: String, y: String },
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    #[arg(long, global = true, value_enum, default_value = "glT")]
    pub family: FamilyArg,
    /// `n` for gl_n; `n` for so_{2n+1} and sp_{2n}; `N` for diagrams.
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    /// Evaluate the rank parameter at a rational value such as `3` or `5/2`.
    #[arg(long, global = true, conflicts_with = "symbolic_t")]
    pub t_eval: Option<String>,
    /// Keep the rank parameter symbolic (the default when `--t-eval` is absent).
    #[arg(long, global = true)]
    pub symbolic_t: bool,
    #[arg(long, global = true, default_value_t = 8)]
    pub horizon: i64,
    #[arg(long, global = true, default_value_t = 2)]
    pub max_mode: u32,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Perturbs the inputs of a suite so that it must fail.
    #[arg(long, global = true, hide = true)]
    pub corrupt: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyArg {
    #[value(name = "glT")]
    GlT,
    #[value(name = "poT")]
    PoT,
    Gl,
    So,
    Sp,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariantArg {
    Anti,
    Sym,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Validated options shared by all subcommands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub family: FamilyArg,
    pub rank: Option<usize>,
    pub param: Param,
    /// `--symbolic-t` was given explicitly.
    pub symbolic_t: bool,
    pub horizon: i64,
    pub max_mode: u32,
    pub format: Format,
    pub seed: u64,
    pub corrupt: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            family: FamilyArg::GlT,
            rank: None,
            param: Param::Symbolic,
            symbolic_t: false,
            horizon: 8,
            max_mode: 2,
            format: Format::Text,
            seed: 0,
            corrupt: false,
        }
    }
}

impl RunConfig {
    pub fn from_opts(o: &Opts) -> Result<Self, CliError> {
        let param = match &o.t_eval {
            Some(s) => Param::Value(
                s.trim().parse::<BigRational>().map_err(|_| CliError::Usage(format!("bad --t-eval value {s}")))?,
            ),
            None => Param::Symbolic,
        };
        if o.rank == Some(0) {
            return Err(CliError::Usage("--rank must be positive".into()));
        }
        if o.horizon < 1 {
            return Err(CliError::Usage("--horizon must be positive".into()));
        }
        Ok(RunConfig {
            family: o.family,
            rank: o.rank,
            param,
            symbolic_t: o.symbolic_t,
            horizon: o.horizon,
            max_mode: o.max_mode,
            format: o.format,
            seed: o.seed,
            corrupt: o.corrupt,
        })
    }

    pub fn with_family(mut self, family: FamilyArg) -> Self {
        self.family = family;
        self
    }

    pub fn with_rank(mut self, rank: usize) -> Self {
        self.rank = Some(rank);
        self
    }

    pub fn with_param(mut self, param: Param) -> Self {
        self.param = param;
        self
    }

    pub fn with_horizon(mut self, horizon: i64) -> Self {
        self.horizon = horizon;
        self
    }

    pub fn rank_or(&self, default: usize) -> usize {
        self.rank.unwrap_or(default)
    }

    /// The finite-dimensional Lie algebra named by `--family` and `--rank`.
    pub fn lie(&self) -> Result<LieData, CliError> {
        let r = self.rank_or(2);
        match self.family {
            FamilyArg::Gl => Ok(LieData::gl(r)),
            FamilyArg::So => Ok(LieData::so(2 * r + 1)),
            FamilyArg::Sp => Ok(LieData::sp(2 * r)?),
            f => Err(CliError::Usage(format!("{f:?} is not a Lie algebra family; use gl, so or sp"))),
        }
    }

    pub fn integer_param(&self) -> Option<i64> {
        match &self.param {
            Param::Value(q) if q.is_integer() => q.to_integer().try_into().ok(),
            _ => None,
        }
    }
}
