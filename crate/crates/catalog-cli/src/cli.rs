//! Command-line surface over the tower, law, and catalog operations.
//!
//! Dispatch is funneled through [`cli_dispatch`], which takes argv and a
//! sink for standard output and returns the process exit code: 0 for
//! success, 1 when a check ran to completion with FAIL verdicts, 2 for
//! usage or execution errors.  Keeping the sink injectable lets tests
//! assert byte-for-byte output stability.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use distributive_verify::{verify_law, Law, TheoryStack};
use globular_core::{theta_hom, TableOfDimensions};
use soa_engine::{
    admissible_pairs, build_tower, read_tower, serialize_manifest, write_tower, FragmentBounds,
    Tower, TowerMode,
};
use strict_oracle::{crosscheck_strict, strict_hom_count};
use theory_kernel::{Presentation, TheoryMode};

use crate::catalog::identify_cells;
use crate::error::CliError;

#[derive(Parser)]
#[command(
    name = "catalog-cli",
    version,
    about = "Build bounded coherator towers, check diagram laws, and catalog named cells"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a tower and write its manifest and stages to a directory.
    Build {
        /// Tower construction: fc, ic, or strict.
        #[arg(long, value_parser = TowerMode::from_str)]
        mode: TowerMode,
        /// Stages to build on top of the base theory.
        #[arg(long)]
        stages: u32,
        #[command(flatten)]
        bounds: BoundArgs,
        /// Output directory; created if missing.
        #[arg(long)]
        out: PathBuf,
    },
    /// Check one law family at the given indices and print the report.
    Verify {
        /// unit-triangle, naturality, pentagons, yang-baxter, monad, or
        /// completability.
        #[arg(long, value_parser = Law::from_str)]
        law: Law,
        /// Comma-separated indices, e.g. 0,1 or 0,1,2.
        #[arg(long, value_delimiter = ',')]
        indices: Vec<u8>,
        /// Theory mode the stack is built in: weak or strict.
        #[arg(long, value_parser = parse_theory_mode, default_value = "weak")]
        mode: TheoryMode,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Print the named-cell catalog of a tower's top stage.
    Catalog {
        /// Tower construction: fc, ic, or strict.
        #[arg(long, value_parser = TowerMode::from_str, default_value = "ic")]
        mode: TowerMode,
        /// Stages to build; identification needs at least 2.
        #[arg(long, default_value_t = 2)]
        stages: u32,
        /// Read a previously written tower instead of building one.
        #[arg(long, conflicts_with_all = ["mode", "stages"])]
        tower: Option<PathBuf>,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Count hom sets between tables, or strict classes at a dimension.
    Hom {
        /// Domain table, e.g. (1,0,1); prints every morphism into --to.
        #[arg(long, value_parser = TableOfDimensions::from_str, requires = "to", conflicts_with = "strict")]
        from: Option<TableOfDimensions>,
        /// Codomain table for the morphism listing.
        #[arg(long, value_parser = TableOfDimensions::from_str, requires = "from")]
        to: Option<TableOfDimensions>,
        /// Count strict classes over --arity at --dim by the closed form.
        #[arg(long, requires_all = ["arity", "dim"])]
        strict: bool,
        /// Arity table for the strict count.
        #[arg(long, value_parser = TableOfDimensions::from_str, requires = "strict")]
        arity: Option<TableOfDimensions>,
        /// Dimension for the strict count.
        #[arg(long, requires = "strict")]
        dim: Option<u8>,
        /// Tower directory to cross-check the strict count against.
        #[arg(long, requires = "strict")]
        tower: Option<PathBuf>,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// List the admissible pairs at one dimension over the base theory.
    Pairs {
        /// Dimension of the paired operations.
        #[arg(long)]
        dim: u8,
        #[command(flatten)]
        bounds: BoundArgs,
    },
}

/// Truncation bounds, shared by every subcommand.
#[derive(Args, Clone, Copy)]
struct BoundArgs {
    /// Longest table of dimensions, counted in entries.
    #[arg(long, default_value_t = 3)]
    max_arity_len: usize,
    /// Highest cell dimension the fragment tracks.
    #[arg(long, default_value_t = 3)]
    max_dim: u8,
    /// Deepest term nesting enumerated over any arity.
    #[arg(long, default_value_t = 2)]
    max_depth: u16,
    /// Lifting rounds per layer before the iteration bound is reported.
    #[arg(long, default_value_t = 4)]
    max_iter: u32,
}

impl BoundArgs {
    fn bounds(self) -> FragmentBounds {
        FragmentBounds::new(self.max_arity_len, self.max_dim, self.max_depth, self.max_iter)
    }
}

fn parse_theory_mode(s: &str) -> Result<TheoryMode, String> {
    match s {
        "weak" => Ok(TheoryMode::Weak),
        "strict" => Ok(TheoryMode::Strict),
        other => Err(format!("unknown theory mode `{other}`, expected weak|strict")),
    }
}

/// Parses argv, runs the chosen subcommand, and writes its canonical output
/// to `out`.  Errors are written to the same sink so batch runs capture one
/// stream.
pub fn cli_dispatch<I, T, W>(argv: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            2
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<bool, CliError> {
    match command {
        Command::Build {
            mode,
            stages,
            bounds,
            out: dir,
        } => {
            let tower = build_tower(mode, stages, &bounds.bounds())?;
            write_tower(&tower, &dir)?;
            write!(out, "{}", serialize_manifest(&tower))?;
            writeln!(out, "wrote {}", dir.display())?;
            Ok(true)
        }
        Command::Verify {
            law,
            indices,
            mode,
            bounds,
        } => {
            let mut stack = TheoryStack::new(mode, bounds.bounds());
            let report = verify_law(law, &indices, &mut stack)?;
            writeln!(out, "{report}")?;
            Ok(report.pass())
        }
        Command::Catalog {
            mode,
            stages,
            tower,
            bounds,
        } => {
            let tower = load_or_build(tower, mode, stages, &bounds.bounds())?;
            let catalog = identify_cells(&tower)?;
            write!(out, "{}", catalog.to_tsv())?;
            Ok(true)
        }
        Command::Hom {
            from,
            to,
            strict,
            arity,
            dim,
            tower,
            bounds,
        } => {
            if let (Some(from), Some(to)) = (from, to) {
                let morphisms = theta_hom(&from, &to);
                for m in &morphisms {
                    writeln!(out, "{m}")?;
                }
                writeln!(out, "hom {from} -> {to}: {}", morphisms.len())?;
                return Ok(true);
            }
            if strict {
                let arity = arity.expect("clap enforces --arity with --strict");
                let dim = dim.expect("clap enforces --dim with --strict");
                let count = strict_hom_count(&arity, dim)?;
                writeln!(out, "strict-homs arity={arity} dim={dim} count={count}")?;
                let Some(dir) = tower else { return Ok(true) };
                let tower = read_tower(&dir)?;
                let report = crosscheck_strict(&tower, &arity, dim, bounds.bounds().max_depth)?;
                writeln!(out, "{report}")?;
                return Ok(report.pass());
            }
            Err(CliError::Usage(
                "hom needs either --from and --to, or --strict with --arity and --dim".into(),
            ))
        }
        Command::Pairs { dim, bounds } => {
            let mut base = Presentation::new(TheoryMode::Weak);
            let pairs = admissible_pairs(&mut base, dim, &bounds.bounds());
            for pair in &pairs {
                writeln!(out, "{}", pair.text(&base))?;
            }
            writeln!(out, "total {}", pairs.len())?;
            Ok(true)
        }
    }
}

fn load_or_build(
    dir: Option<PathBuf>,
    mode: TowerMode,
    stages: u32,
    bounds: &FragmentBounds,
) -> Result<Tower, CliError> {
    match dir {
        Some(dir) => Ok(read_tower(&dir)?),
        None => Ok(build_tower(mode, stages, bounds)?),
    }
}
