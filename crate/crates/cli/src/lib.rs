//! Command-line front end for `kdecomp-core`.
//!
//! [`run`] parses arguments, dispatches one command and writes the report to
//! `out`. Diagnostics go to `err`. The return value is the process exit code:
//! 0 on success, 1 when a verification fails, 2 on usage or input errors.

mod render;
mod table;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kdecomp_core::abelian::FGAbelianGroup;
use kdecomp_core::assembler::{
    decompose_laurent, decompose_relative_vc, dihedral_report, ft_oracle_compare, iterated_nk,
    kregular_check, verify_fold_counting, AssemblerError, SymbolDiff,
};
use kdecomp_core::cellular::{homology, mapping_torus_homology, torus_complex, ChainComplex, ChainMap};
use kdecomp_core::{GradedSymbol, IntMatrix, RingTable};
use serde::{Deserialize, Serialize};

pub use table::{load_table, parse_table, TableError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "kdecomp", version, about = "Exact K-theory decompositions for Laurent polynomial rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose K_q R[Z^n] into K and Nil summands.
    DecomposeLaurent(DecomposeArgs),
    /// The relative term over the maximal cyclic subgroups of Z^n.
    DecomposeRelative(DecomposeArgs),
    /// The iterated Nil group N^n K_q R (n >= 2 needs --assume-conjecture).
    NkIter(ConjectureArgs),
    /// Check whether K_q R[t_1..t_n] = K_q R follows from the table.
    Kregular(TableArgs),
    /// Compare the closed form against the iterated fundamental theorem.
    VerifyFt(ConjectureArgs),
    /// Check the fold-map counting identity fiber by fiber.
    VerifyFold(FoldArgs),
    /// Identification chain for the infinite dihedral case.
    Dihedral(DihedralArgs),
    /// Torus homology and the Klein bottle as a mapping torus.
    HomologyDemo(DemoArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Number of Laurent variables.
    #[arg(long)]
    n: usize,
    /// K-theory degree.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    q: i64,
    /// `symbolic`, `regular`, or a path to a JSON table file.
    #[arg(long, default_value = "symbolic")]
    table: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[command(flatten)]
    common: TableArgs,
    /// Max-norm bound on subgroup generators.
    #[arg(long, default_value_t = 3)]
    height: u64,
}

#[derive(Args, Debug)]
struct ConjectureArgs {
    #[command(flatten)]
    decompose: DecomposeArgs,
    /// Allow the conjectural rewrite of N^m K over M_+.
    #[arg(long)]
    assume_conjecture: bool,
}

#[derive(Args, Debug)]
struct FoldArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    q: i64,
    #[arg(long, default_value_t = 3)]
    height: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct DihedralArgs {
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    q: i64,
    /// Concrete group standing in for the twisted Nil group, e.g. "Z + Z/4".
    #[arg(long)]
    stand_in: Option<FGAbelianGroup>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct DemoArgs {
    /// Torus dimension.
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// JSON body of `verify-ft`.
#[derive(Debug, Serialize, Deserialize)]
pub struct FtComparison {
    pub n: usize,
    pub q: i64,
    pub height: u64,
    pub table: String,
    pub oracle: Vec<(GradedSymbol, u64)>,
    pub closed: Vec<(GradedSymbol, u64)>,
    pub diff: Vec<SymbolDiff>,
    pub passed: bool,
}

/// JSON body of `homology-demo`.
#[derive(Debug, Serialize, Deserialize)]
pub struct HomologyDemo {
    pub torus_dim: usize,
    pub torus: Vec<FGAbelianGroup>,
    pub klein_bottle: Vec<FGAbelianGroup>,
}

enum Failure {
    Usage(String),
    Computation(String),
}

impl From<AssemblerError> for Failure {
    fn from(e: AssemblerError) -> Self {
        match e {
            AssemblerError::ConjectureRequired(_)
            | AssemblerError::InvalidArgument(_)
            | AssemblerError::InsufficientTable(_) => Failure::Usage(e.to_string()),
            _ => Failure::Computation(e.to_string()),
        }
    }
}

impl From<TableError> for Failure {
    fn from(e: TableError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok((text, passed)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_FAILED;
            }
            if passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Computation(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILED
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn emit<T: Serialize>(format: Format, v: &T, text: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Json => json(v),
        Format::Text => text(v),
    }
}

fn table_of(args: &TableArgs) -> Result<RingTable, Failure> {
    Ok(load_table(&args.table)?)
}

fn multiplicity_list(m: BTreeMap<GradedSymbol, u64>) -> Vec<(GradedSymbol, u64)> {
    m.into_iter().collect()
}

fn dispatch(cmd: Command) -> Result<(String, bool), Failure> {
    Ok(match cmd {
        Command::DecomposeLaurent(a) => {
            let t = table_of(&a.common)?;
            let r = decompose_laurent(a.common.n, a.common.q, &t, a.height)?;
            (emit(a.common.format, &r, render::decomposition), true)
        }
        Command::DecomposeRelative(a) => {
            let t = table_of(&a.common)?;
            let r = decompose_relative_vc(a.common.n, a.common.q, &t, a.height)?;
            (emit(a.common.format, &r, render::decomposition), true)
        }
        Command::NkIter(a) => {
            let d = &a.decompose;
            let t = table_of(&d.common)?;
            let r = iterated_nk(d.common.n, d.common.q, &t, a.assume_conjecture, d.height)?;
            (emit(d.common.format, &r, render::decomposition), true)
        }
        Command::Kregular(a) => {
            let t = table_of(&a)?;
            let v = kregular_check(a.n, a.q, &t)?;
            (emit(a.format, &v, render::kregular), true)
        }
        Command::VerifyFt(a) => {
            let d = &a.decompose;
            let t = table_of(&d.common)?;
            let c = ft_oracle_compare(d.common.n, d.common.q, &t, a.assume_conjecture, d.height)?;
            let body = FtComparison {
                n: d.common.n,
                q: d.common.q,
                height: d.height,
                table: t.name().to_string(),
                oracle: multiplicity_list(c.oracle.multiplicities()),
                closed: multiplicity_list(c.closed.multiplicities()),
                passed: c.passed(),
                diff: c.diff,
            };
            let passed = body.passed;
            (emit(d.common.format, &body, render::ft_comparison), passed)
        }
        Command::VerifyFold(a) => {
            let r = verify_fold_counting(a.n, a.q, a.height)?;
            let passed = r.passed;
            (emit(a.format, &r, render::fold), passed)
        }
        Command::Dihedral(a) => {
            let r = dihedral_report(a.q, a.stand_in.as_ref())?;
            let passed = r.passed();
            (emit(a.format, &r, render::dihedral), passed)
        }
        Command::HomologyDemo(a) => {
            let d = homology_demo(a.n)?;
            (emit(a.format, &d, render::homology_demo), true)
        }
    })
}

fn homology_demo(k: usize) -> Result<HomologyDemo, Failure> {
    let fail = |e: kdecomp_core::cellular::CellularError| Failure::Computation(e.to_string());
    let torus = homology(&torus_complex(k)).map_err(fail)?;
    let circle = ChainComplex::circle();
    let flip = ChainMap {
        components: vec![IntMatrix::from_rows(&[[1]]), IntMatrix::from_rows(&[[-1]])],
    };
    let klein_bottle = mapping_torus_homology(&circle, &flip).map_err(fail)?;
    Ok(HomologyDemo {
        torus_dim: k,
        torus,
        klein_bottle,
    })
}
