//! Command line front end for the symbolic engine: builds bracket tables,
//! constructs the invariant catalog, verifies centrality of stored elements,
//! counts independent invariants at random points, and sweeps the
//! closed-form coefficient identity.
//!
//! Exit codes: 0 when every requested check verified, 1 when a check ran and
//! found a genuine mathematical violation, 2 for usage and configuration
//! errors (including malformed input files).

use clap::{Args, Parser, Subcommand, ValueEnum};
use galcas::casimir::{
    build_catalog, identity_check, pfaffian_casimir, quartic_casimir, trace_casimir,
};
use galcas::count::{expected_catalog_size, invariant_count, matrix_row_major, sampled_matrix};
use galcas::verify::is_central;
use galcas::{Algebra, AlgebraSpec, HalfInt, RankReport, UEAElement};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "galcas",
    version,
    about = "Symbolic Casimir invariants of the centrally extended conformal Galilei algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the result to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Flags choosing one algebra of the family.
#[derive(Args)]
struct SpecArgs {
    /// Half-integer or integer parameter l, written like 1/2, 3/2, or 2.
    #[arg(long)]
    l: HalfInt,

    /// Spatial dimension d.
    #[arg(long)]
    d: u32,

    /// Include the central element.
    #[arg(long)]
    extended: bool,
}

impl SpecArgs {
    fn algebra(&self) -> Result<Algebra, String> {
        let spec =
            AlgebraSpec::new(self.l, self.d, self.extended).map_err(|e| e.to_string())?;
        Ok(Algebra::new(spec))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the Jacobi identity over every triple of basis generators.
    Jacobi(SpecArgs),

    /// Construct Casimir invariants of the extended algebra.
    #[command(subcommand)]
    Casimir(CasimirCmd),

    /// Check a JSON element file for centrality.
    Verify {
        /// Path to an element serialized as JSON.
        file: PathBuf,

        #[command(flatten)]
        spec: SpecArgs,
    },

    /// Count functionally independent invariants from sampled generic ranks.
    Count {
        #[command(flatten)]
        spec: SpecArgs,

        /// Number of random points to sample.
        #[arg(long, default_value_t = 5)]
        trials: u32,

        /// Seed for the sampling stream.
        #[arg(long, default_value_t = 42)]
        seed: u64,

        /// Also write the commutator matrix at the first sampled point to
        /// this file, as JSON with exact row-major entries.
        #[arg(long, value_name = "PATH")]
        emit_matrix: Option<PathBuf>,
    },

    /// Sweep the closed-form bracket coefficient identity over l values.
    Identity {
        /// Check a single l instead of the default sweep.
        #[arg(long)]
        l: Option<HalfInt>,
    },

    /// Print algebra dimensions over the parameter grid.
    Dims,
}

#[derive(Subcommand)]
enum CasimirCmd {
    /// The quartic invariant built from the dressed sl(2) triple.
    Quartic(SpecArgs),

    /// The trace of the 2k-th power of the dressed rotation matrix.
    Trace {
        #[command(flatten)]
        spec: SpecArgs,

        /// Half the power of the rotation matrix under the trace.
        #[arg(long, default_value_t = 1)]
        k: u32,
    },

    /// The Pfaffian of the dressed rotation matrix (even d only).
    Pfaffian(SpecArgs),

    /// Every invariant the construction yields for this algebra.
    Catalog(SpecArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok(Outcome { payload, verified }) => {
            if let Err(msg) = emit(&out, &payload) {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
            if verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

struct Outcome {
    payload: String,
    /// False when a check ran and found a mathematical violation.
    verified: bool,
}

fn emit(out: &Option<PathBuf>, payload: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, payload)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<Outcome, String> {
    match cli.command {
        Command::Jacobi(spec) => jacobi(&spec.algebra()?, cli.format),
        Command::Casimir(cmd) => casimir(cmd, cli.format),
        Command::Verify { file, spec } => verify(&file, &spec.algebra()?, cli.format),
        Command::Count { spec, trials, seed, emit_matrix } => {
            count(&spec.algebra()?, trials, seed, emit_matrix.as_deref(), cli.format)
        }
        Command::Identity { l } => identity(l, cli.format),
        Command::Dims => dims(cli.format),
    }
}

fn jacobi(alg: &Algebra, format: Format) -> Result<Outcome, String> {
    let report = alg.jacobi_check();
    let payload = match format {
        Format::Json => json(&report),
        Format::Text => {
            let mut s = String::new();
            let spec = alg.spec();
            writeln!(s, "algebra: l={}, d={}{}", spec.l(), spec.d(), ext_tag(spec)).unwrap();
            writeln!(s, "dimension: {}", alg.dimension()).unwrap();
            writeln!(s, "triples checked: {}", report.checked).unwrap();
            writeln!(s, "violations: {}", report.violations.len()).unwrap();
            for v in &report.violations {
                writeln!(s, "  [{}, {}, {}] residual: {}", v.a, v.b, v.c, v.residual).unwrap();
            }
            s
        }
    };
    Ok(Outcome { payload, verified: report.ok() })
}

fn element_text(name: &str, element: &UEAElement) -> String {
    format!(
        "{name}: {} terms, degree {}\n{element}\n",
        element.num_terms(),
        element.degree()
    )
}

fn casimir(cmd: CasimirCmd, format: Format) -> Result<Outcome, String> {
    let (name, spec) = match &cmd {
        CasimirCmd::Quartic(s) => ("quartic".to_string(), s),
        CasimirCmd::Trace { spec, k } => (format!("trace{k}"), spec),
        CasimirCmd::Pfaffian(s) => ("pfaffian".to_string(), s),
        CasimirCmd::Catalog(s) => ("catalog".to_string(), s),
    };
    let alg = spec.algebra()?;
    let payload = match &cmd {
        CasimirCmd::Catalog(_) => {
            let catalog = build_catalog(&alg).map_err(|e| e.to_string())?;
            match format {
                Format::Json => json(&catalog),
                Format::Text => catalog
                    .named()
                    .iter()
                    .map(|(n, e)| element_text(n, e))
                    .collect(),
            }
        }
        _ => {
            let element = match &cmd {
                CasimirCmd::Quartic(_) => quartic_casimir(&alg),
                CasimirCmd::Trace { k, .. } => trace_casimir(&alg, *k),
                CasimirCmd::Pfaffian(_) => pfaffian_casimir(&alg),
                CasimirCmd::Catalog(_) => unreachable!(),
            }
            .map_err(|e| e.to_string())?;
            match format {
                Format::Json => json(&element),
                Format::Text => element_text(&name, &element),
            }
        }
    };
    Ok(Outcome { payload, verified: true })
}

fn verify(file: &Path, alg: &Algebra, format: Format) -> Result<Outcome, String> {
    let raw = std::fs::read_to_string(file)
        .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    let element: UEAElement = serde_json::from_str(&raw)
        .map_err(|e| format!("{} is not a valid element: {e}", file.display()))?;
    alg.validate_element(&element)
        .map_err(|e| format!("{} does not fit the algebra: {e}", file.display()))?;
    let report = is_central(alg, &element).map_err(|e| e.to_string())?;
    let payload = match format {
        Format::Json => json(&report),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "element: {} terms, degree {}", element.num_terms(), element.degree())
                .unwrap();
            writeln!(s, "central: {}", if report.central { "yes" } else { "no" }).unwrap();
            for w in &report.witnesses {
                writeln!(s, "  [element, {}] = {}", w.generator, w.residual).unwrap();
            }
            s
        }
    };
    Ok(Outcome { payload, verified: report.central })
}

/// Rank report extended with the catalog comparison for extended algebras.
#[derive(Serialize)]
struct CountOutput {
    #[serde(flatten)]
    report: RankReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    catalog_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reconciliation_offset: Option<i64>,
}

fn count(
    alg: &Algebra,
    trials: u32,
    seed: u64,
    emit_matrix: Option<&Path>,
    format: Format,
) -> Result<Outcome, String> {
    let report = invariant_count(alg, trials, seed).map_err(|e| e.to_string())?;
    if !report.ranks_stable() {
        eprintln!(
            "warning: sampled ranks vary across trials ({:?}); the generic rank is taken \
             as the maximum, consider more trials or another seed",
            report.ranks
        );
    }
    if let Some(path) = emit_matrix {
        let matrix = sampled_matrix(alg, seed).map_err(|e| e.to_string())?;
        #[derive(Serialize)]
        struct MatrixFile {
            rows: usize,
            cols: usize,
            entries: Vec<String>,
        }
        let file = MatrixFile {
            rows: matrix.len(),
            cols: matrix.len(),
            entries: matrix_row_major(&matrix),
        };
        std::fs::write(path, json(&file))
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }

    let (catalog_size, offset) = if alg.spec().extended() {
        let size = expected_catalog_size(alg.spec().d());
        (Some(size), Some(report.invariant_count as i64 - size as i64))
    } else {
        (None, None)
    };
    let output = CountOutput { report, catalog_size, reconciliation_offset: offset };
    let payload = match format {
        Format::Json => json(&output),
        Format::Text => {
            let spec = alg.spec();
            let mut s = String::new();
            writeln!(s, "algebra: l={}, d={}{}", spec.l(), spec.d(), ext_tag(spec)).unwrap();
            writeln!(s, "dimension: {}", output.report.dim).unwrap();
            writeln!(s, "trials: {}  seed: {}", output.report.trials, output.report.seed)
                .unwrap();
            let ranks: Vec<String> =
                output.report.ranks.iter().map(|r| r.to_string()).collect();
            writeln!(s, "sampled ranks: {}", ranks.join(" ")).unwrap();
            writeln!(s, "generic rank: {}", output.report.generic_rank).unwrap();
            writeln!(s, "invariant count: {}", output.report.invariant_count).unwrap();
            if let (Some(size), Some(off)) = (output.catalog_size, output.reconciliation_offset)
            {
                writeln!(s, "catalog size: {size}").unwrap();
                writeln!(s, "reconciliation offset (central charge): {off}").unwrap();
            }
            s
        }
    };
    Ok(Outcome { payload, verified: true })
}

#[derive(Serialize)]
struct IdentityFailure {
    l: String,
    alpha: String,
    n: i8,
    residual: String,
}

#[derive(Serialize)]
struct IdentityOutput {
    l_values: Vec<String>,
    checked: usize,
    failures: Vec<IdentityFailure>,
}

fn identity(single: Option<HalfInt>, format: Format) -> Result<Outcome, String> {
    let ls: Vec<HalfInt> = match single {
        Some(l) => {
            if l.twice() < 1 {
                return Err(format!("l must be positive, got {l}"));
            }
            vec![l]
        }
        None => match grid_from_env()? {
            Some(grid) => {
                let mut ls = Vec::new();
                for (l, _) in grid {
                    if !ls.contains(&l) {
                        ls.push(l);
                    }
                }
                ls
            }
            None => (1..=10).map(HalfInt::from_twice).collect(),
        },
    };

    let mut output = IdentityOutput {
        l_values: ls.iter().map(|l| l.to_string()).collect(),
        checked: 0,
        failures: Vec::new(),
    };
    for &l in &ls {
        let t = l.twice();
        for ta in (-t..=t).step_by(2) {
            let alpha = HalfInt::from_twice(ta);
            for n in -1..=1i8 {
                // The two corners of the tower are outside the identity's domain.
                if (n == 1 && alpha == l) || (n == -1 && alpha == -l) {
                    continue;
                }
                let residual = identity_check(l, alpha, n).map_err(|e| e.to_string())?;
                output.checked += 1;
                if residual != galcas::rational(0, 1) {
                    output.failures.push(IdentityFailure {
                        l: l.to_string(),
                        alpha: alpha.to_string(),
                        n,
                        residual: residual.to_string(),
                    });
                }
            }
        }
    }
    let verified = output.failures.is_empty();
    let payload = match format {
        Format::Json => json(&output),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "l values: {}", output.l_values.join(" ")).unwrap();
            writeln!(s, "points checked: {}", output.checked).unwrap();
            writeln!(s, "nonzero residuals: {}", output.failures.len()).unwrap();
            for f in &output.failures {
                writeln!(s, "  l={}, alpha={}, n={}: {}", f.l, f.alpha, f.n, f.residual)
                    .unwrap();
            }
            s
        }
    };
    Ok(Outcome { payload, verified })
}

#[derive(Serialize)]
struct DimRow {
    l: String,
    d: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    extended: Option<usize>,
    centerless: usize,
}

fn dims(format: Format) -> Result<Outcome, String> {
    let grid = match grid_from_env()? {
        Some(grid) => grid,
        None => default_grid(),
    };
    let mut rows = Vec::new();
    for (l, d) in grid {
        let centerless = AlgebraSpec::new(l, d, false)
            .map_err(|e| e.to_string())?
            .dimension();
        let extended = AlgebraSpec::new(l, d, true).ok().map(|s| s.dimension());
        rows.push(DimRow { l: l.to_string(), d, extended, centerless });
    }
    let payload = match format {
        Format::Json => json(&rows),
        Format::Text => {
            let mut s = String::from("l     d  extended  centerless\n");
            for row in &rows {
                let ext = row
                    .extended
                    .map(|n| n.to_string())
                    .unwrap_or_else(|| "-".into());
                writeln!(s, "{:<5} {:<2} {:>8}  {:>10}", row.l, row.d, ext, row.centerless)
                    .unwrap();
            }
            s
        }
    };
    Ok(Outcome { payload, verified: true })
}

fn ext_tag(spec: &AlgebraSpec) -> &'static str {
    if spec.extended() {
        ", extended"
    } else {
        ", centerless"
    }
}

fn default_grid() -> Vec<(HalfInt, u32)> {
    let mut grid = Vec::new();
    for twice in [1, 3, 5] {
        for d in 1..=5 {
            grid.push((HalfInt::from_twice(twice), d));
        }
    }
    grid.push((HalfInt::from_int(1), 2));
    grid.push((HalfInt::from_int(2), 2));
    grid
}

/// Parses the GALCAS_GRID override, a comma list of l:d entries like
/// "1/2:3,5/2:1". Returns None when the variable is unset.
fn grid_from_env() -> Result<Option<Vec<(HalfInt, u32)>>, String> {
    let raw = match std::env::var("GALCAS_GRID") {
        Ok(v) => v,
        Err(std::env::VarError::NotPresent) => return Ok(None),
        Err(e) => return Err(format!("GALCAS_GRID: {e}")),
    };
    let mut grid = Vec::new();
    for entry in raw.split(',') {
        let entry = entry.trim();
        let (l, d) = entry
            .split_once(':')
            .ok_or_else(|| format!("GALCAS_GRID entry '{entry}' is not of the form l:d"))?;
        let l: HalfInt = l
            .trim()
            .parse()
            .map_err(|e| format!("GALCAS_GRID entry '{entry}': {e}"))?;
        let d: u32 = d
            .trim()
            .parse()
            .map_err(|e| format!("GALCAS_GRID entry '{entry}': {e}"))?;
        if l.twice() < 1 {
            return Err(format!("GALCAS_GRID entry '{entry}': l must be positive"));
        }
        if d < 1 {
            return Err(format!("GALCAS_GRID entry '{entry}': d must be at least 1"));
        }
        grid.push((l, d));
    }
    if grid.is_empty() {
        return Err("GALCAS_GRID is set but empty".into());
    }
    Ok(Some(grid))
}
