//! Command-line entry point: exhaustive verification, table emission,
//! regularity checking and factor description with machine-readable
//! output.
//!
//! Exit codes: 0 on success, 1 on configuration or input errors, 2 when a
//! verification run records a failed pair, 3 when a checked character is
//! not regular.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use suffreg_core::regularity::{
    extend_character, is_g_regular, is_m_regular, CharacterRep, OrbitKind, RegularityVerdict,
};
use suffreg_core::roots::{FactorType, RootSystem};
use suffreg_core::tables::{self, TableId};
use suffreg_core::verify::{verify_factor, FullReport, RunOptions};
use suffreg_core::weight::Weight;
use suffreg_core::weyl::{word_string, word_to_element};

#[derive(Parser)]
#[command(
    name = "suffreg",
    about = "Exact verification of the forced-pairing characterization on Hermitian factor types, \
             and sufficient-regularity checks for infinitesimal characters",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exhaustive rank-based verification for one factor type.
    Verify(VerifyArgs),
    /// Emit the E6/E7 coset-representative tables as CSV.
    EmitTables(EmitTablesArgs),
    /// Decide sufficient regularity of an infinitesimal character.
    CheckRegularity(CheckRegularityArgs),
    /// Print the combinatorial profile of a factor type.
    Describe(DescribeArgs),
}

#[derive(Args)]
struct FactorArgs {
    /// Factor type: a, b, c, d-r, d-h, e6, e7.
    #[arg(long = "type")]
    ftype: String,
    /// Rank n (classical types).
    #[arg(long)]
    rank: Option<usize>,
    /// Distinguished node r (type a only).
    #[arg(long)]
    node: Option<usize>,
}

impl FactorArgs {
    fn parse(&self) -> Result<FactorType> {
        FactorType::from_parts(&self.ftype, self.rank, self.node).map_err(anyhow::Error::msg)
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    factor: FactorArgs,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    workers: Option<usize>,
    /// Work budget |W|·|differences| for classical instances.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u128,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Checkpoint file; an interrupted run restarts from the completed
    /// outer-layer jobs recorded there.
    #[arg(long)]
    resume: Option<PathBuf>,
    /// Suppress progress lines on standard error.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct EmitTablesArgs {
    #[command(flatten)]
    factor: FactorArgs,
    /// Which table for e7: 2 (orbit of the middle-layer weight) or
    /// 3 (orbit of the top-layer weight). e6 has the single table 1.
    #[arg(long)]
    table: Option<u8>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckRegularityArgs {
    /// Input JSON path, or - for standard input.
    #[arg(long, default_value = "-")]
    input: String,
    /// Extend each factor's character to a regular Levi character and
    /// re-verify it.
    #[arg(long)]
    extend: bool,
    /// Orbit-closure cap (default: the Weyl group order).
    #[arg(long)]
    orbit_cap: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DescribeArgs {
    #[command(flatten)]
    factor: FactorArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: &Option<PathBuf>, payload: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, payload)
            .with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(payload.as_bytes())?;
        }
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let ftype = args.factor.parse()?;
    let rs = RootSystem::build(ftype)?;
    let workers = args
        .workers
        .or_else(|| std::thread::available_parallelism().ok().map(usize::from))
        .unwrap_or(1);
    if workers == 0 {
        bail!("--workers must be at least 1");
    }
    if args.budget == 0 {
        bail!("--budget must be at least 1");
    }
    let opts = RunOptions {
        workers,
        checkpoint: args.resume.clone(),
        progress: !args.quiet,
    };
    let budget = match ftype {
        FactorType::E6 | FactorType::E7 => None,
        _ => Some(args.budget),
    };
    let report = verify_factor(&rs, &opts, budget)?;
    let payload = match args.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Text => render_report_text(&report),
        Format::Csv => bail!("verify does not support csv output"),
    };
    emit(&args.out, &payload)?;
    Ok(if report.success {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn render_report_text(report: &FullReport) -> String {
    let mut s = String::new();
    s.push_str(&format!("factor:            {}\n", report.factor));
    s.push_str(&format!("pairs total:       {}\n", report.pairs_total));
    s.push_str(&format!("  no solution:     {}\n", report.pairs_no_solution));
    s.push_str(&format!("  forced root:     {}\n", report.pairs_forced));
    s.push_str(&format!(
        "eliminations:      {} (method-equivalent; actual full eliminations {})\n",
        report.eliminations_total, report.eliminations_actual
    ));
    s.push_str(&format!("elimination bound: {}\n", report.eliminations_bound));
    s.push_str(&format!(
        "if direction:      {}\n",
        if report.if_direction.success { "ok" } else { "FAILED" }
    ));
    s.push_str(&format!(
        "converse:          {}\n",
        if report.converse_membership.success { "ok" } else { "FAILED" }
    ));
    s.push_str(&format!("elapsed:           {} ms\n", report.elapsed_ms));
    s.push_str(&format!(
        "result:            {}\n",
        if report.success { "SUCCESS" } else { "FAILURE" }
    ));
    for f in &report.failures {
        s.push_str(&format!("failed pair: w = {}, diff {}\n", f.w, f.diff_index));
    }
    s
}

fn cmd_emit_tables(args: &EmitTablesArgs) -> Result<ExitCode> {
    if args.format != Format::Csv {
        bail!("emit-tables only supports csv output");
    }
    let ftype = args.factor.parse()?;
    let (rs, id) = match (ftype, args.table) {
        (FactorType::E6, None | Some(1)) => (RootSystem::build(ftype)?, TableId::E6Top),
        (FactorType::E7, Some(2)) => (RootSystem::build(ftype)?, TableId::E7Mid),
        (FactorType::E7, None | Some(3)) => (RootSystem::build(ftype)?, TableId::E7Top),
        (FactorType::E6 | FactorType::E7, Some(t)) => {
            bail!("no table {t} for {}", ftype)
        }
        _ => bail!("emit-tables requires --type e6 or e7"),
    };
    emit(&args.out, &render_table_csv(&rs, id)?)?;
    Ok(ExitCode::SUCCESS)
}

/// CSV rows (coordinates..., length, word) in the table's row order; the
/// weights are recomputed by applying each row's word to the base weight.
fn render_table_csv(rs: &RootSystem, id: TableId) -> Result<String> {
    let rows = tables::rows(id);
    let base = rows[0].weight();
    let dim = rs.ambient_dim();
    let mut out = String::new();
    for i in 1..=dim {
        out.push_str(&format!("c{i},"));
    }
    out.push_str("length,word\n");
    for k in 0..rows.len() {
        let word = tables::row_word(rows, k);
        let weight = word_to_element(rs, &word)
            .map_err(|e| anyhow::anyhow!("{e}"))?
            .apply(&base);
        for x in &weight.0 {
            out.push_str(&format!("{x},"));
        }
        out.push_str(&format!("{},{}\n", word.len(), word_string(&word)));
    }
    Ok(out)
}

#[derive(serde::Deserialize)]
struct RegularityInput {
    factors: Vec<FactorInput>,
    orbit_kind: OrbitKind,
}

#[derive(serde::Deserialize)]
struct FactorInput {
    #[serde(flatten)]
    ftype: FactorType,
    noncompact: bool,
    weight: Vec<String>,
}

#[derive(serde::Serialize)]
struct FactorOutput {
    factor: String,
    noncompact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<RegularityVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extension: Option<ExtensionOutput>,
}

#[derive(serde::Serialize)]
struct ExtensionOutput {
    weight: Weight,
    verdict: RegularityVerdict,
}

#[derive(serde::Serialize)]
struct RegularityOutput {
    orbit_kind: OrbitKind,
    regular: bool,
    factors: Vec<FactorOutput>,
}

fn cmd_check_regularity(args: &CheckRegularityArgs) -> Result<ExitCode> {
    let text = if args.input == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(&args.input).with_context(|| format!("reading {}", args.input))?
    };
    let input: RegularityInput = serde_json::from_str(&text).context("parsing input JSON")?;
    if input.factors.is_empty() {
        bail!("no factors in input");
    }

    let mut outputs = Vec::new();
    // A character is regular exactly when every noncompact factor's
    // component is; compact factors carry no condition.
    let mut regular = true;
    for fi in &input.factors {
        fi.ftype.validate().map_err(anyhow::Error::msg)?;
        let rs = RootSystem::build(fi.ftype)?;
        if fi.weight.len() != rs.ambient_dim() {
            bail!(
                "factor {} expects {} coordinates, got {}",
                fi.ftype,
                rs.ambient_dim(),
                fi.weight.len()
            );
        }
        let coords: Result<Vec<_>, _> = fi.weight.iter().map(|s| s.parse()).collect();
        let weight = Weight(coords.map_err(|e| anyhow::anyhow!("bad scalar: {e}"))?);
        if !fi.noncompact {
            outputs.push(FactorOutput {
                factor: fi.ftype.to_string(),
                noncompact: false,
                verdict: None,
                extension: None,
            });
            continue;
        }
        let ch = CharacterRep {
            weight,
            orbit_kind: input.orbit_kind,
        };
        let (verdict, extension) = if args.extend {
            if input.orbit_kind != OrbitKind::GOrbit {
                bail!("--extend expects a g_orbit character");
            }
            let ext = extend_character(&rs, &ch)?;
            let recheck = is_m_regular(&rs, &ext);
            (
                None,
                Some(ExtensionOutput {
                    weight: ext.weight,
                    verdict: recheck,
                }),
            )
        } else {
            let v = match input.orbit_kind {
                OrbitKind::GOrbit => is_g_regular(&rs, &ch, args.orbit_cap)?,
                OrbitKind::MOrbit => is_m_regular(&rs, &ch),
            };
            (Some(v), None)
        };
        let factor_regular = verdict
            .as_ref()
            .map(|v| v.regular)
            .or_else(|| extension.as_ref().map(|x| x.verdict.regular))
            .unwrap_or(true);
        regular &= factor_regular;
        outputs.push(FactorOutput {
            factor: fi.ftype.to_string(),
            noncompact: true,
            verdict,
            extension,
        });
    }

    let output = RegularityOutput {
        orbit_kind: input.orbit_kind,
        regular,
        factors: outputs,
    };
    emit(&args.out, &(serde_json::to_string_pretty(&output)? + "\n"))?;
    Ok(if regular {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

#[derive(serde::Serialize)]
struct DescribeOutput {
    #[serde(rename = "type")]
    ftype: String,
    rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    node: Option<usize>,
    #[serde(rename = "W")]
    weyl_order: u64,
    #[serde(rename = "dimV0")]
    dim_v0: u64,
    d: u64,
    roots: usize,
    lambda0: Weight,
    h_vee: u64,
    h_vee_identity_holds: bool,
    bound: u64,
}

fn cmd_describe(args: &DescribeArgs) -> Result<ExitCode> {
    let ftype = args.factor.parse()?;
    let rs = RootSystem::build(ftype)?;
    let as_u64 = |v: u128, what: &str| -> Result<u64> {
        u64::try_from(v).map_err(|_| anyhow::anyhow!("{what} too large for this rank"))
    };
    let output = DescribeOutput {
        ftype: ftype.code().to_owned(),
        rank: ftype.rank(),
        node: match ftype {
            FactorType::A { node, .. } => Some(node),
            _ => None,
        },
        weyl_order: as_u64(ftype.weyl_order(), "Weyl group order")?,
        dim_v0: as_u64(ftype.dim_v0(), "dim V0")?,
        d: as_u64(ftype.nstd_count(), "n_std size")?,
        roots: rs.all_roots.len(),
        lambda0: rs.lambda0.clone(),
        h_vee: ftype.dual_coxeter(),
        h_vee_identity_holds: rs.dual_coxeter_identity_holds(),
        bound: as_u64(ftype.elimination_bound(), "elimination bound")?,
    };
    emit(&args.out, &(serde_json::to_string_pretty(&output)? + "\n"))?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not configuration errors.
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match &cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::EmitTables(args) => cmd_emit_tables(args),
        Command::CheckRegularity(args) => cmd_check_regularity(args),
        Command::Describe(args) => cmd_describe(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
