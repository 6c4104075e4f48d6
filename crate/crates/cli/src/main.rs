//! `zerosum`: command line front end for the zero-sum toolkit.
//!
//! Exit codes: 0 = mathematical success (witness found / PASS / search
//! exhausted), 1 = mathematical negative (no witness / FAIL), 2 = usage or
//! input error, 3 = node budget exhausted before the search finished.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use zerosum_core::egz::{
    acceptable_length_witness, davenport_witness, egz_witness, gen_witness, AcceptableOutcome,
    ResidueSequence, ZeroSumSubseqWitness,
};
use zerosum_core::group::{GroupSpec, GroupSubset};
use zerosum_core::lemmas::{verify_all, verify_statement, LemmaReport, Verdict, VerifyParams};
use zerosum_core::partitions::{choose, count_box_partitions, enumerate_box_partitions};
use zerosum_core::search::{
    find_zero_sum_subset, max_free_set, resume_free_search, SearchCheckpoint, SearchConfig,
    SearchOutcome,
};
use zerosum_core::sumset::{
    classify_form, pairwise_sumset, restricted_sumset, unrestricted_sumset, ResidueSet,
};
use zerosum_core::Error;

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "zerosum",
    version,
    about = "Zero-sum invariants of small finite abelian groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute g(G), the least size forcing an exponent-length zero-sum subset
    G(SearchArgs),
    /// Find the largest zero-sum-free subset of a group
    FreeSearch(SearchArgs),
    /// Look for a fixed-cardinality zero-sum subset of a given set
    ZeroSum(ZeroSumArgs),
    /// Sumset computations over a single modulus
    Sumset(SumsetArgs),
    /// Constructive witnesses for residue-sequence statements
    Egz(EgzArgs),
    /// Run registered statement verifiers
    Verify(VerifyArgs),
    /// Bounded partition counts and binomial coefficients
    Partitions(PartitionArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Args)]
struct SearchArgs {
    /// Group, as NxN (e.g. 6x6) or a single modulus
    #[arg(long)]
    group: String,
    /// Worker thread count
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Node budget; 0 means unlimited
    #[arg(long, default_value_t = 0)]
    budget: u64,
    /// File to write a checkpoint to if the budget interrupts the search
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Checkpoint file to continue from
    #[arg(long)]
    resume: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Args)]
struct ZeroSumArgs {
    /// Group, as NxN or a single modulus
    #[arg(long)]
    group: String,
    /// Subset literal, e.g. "0,0;0,1;1,5"
    #[arg(long)]
    set: String,
    /// Subset cardinality to look for; defaults to the group exponent
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SumsetMode {
    Restricted,
    Unrestricted,
    Pairwise,
    Classify,
}

#[derive(Args)]
struct SumsetArgs {
    /// Modulus m of Z_m
    #[arg(long)]
    group: String,
    /// Residue set literal, e.g. "0,1,3"; pass twice for pairwise mode
    #[arg(long = "set", action = clap::ArgAction::Append, required = true)]
    sets: Vec<String>,
    /// Number of summands (restricted / unrestricted modes)
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum)]
    mode: SumsetMode,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EgzMode {
    /// n-term zero sum in a length 2n-1 sequence
    Egz,
    /// nonempty zero-sum subsequence
    Davenport,
    /// N-term zero sum using the repeated head value but not only it
    Gen,
    /// zero-sum subsequence of length neither 2 nor the modulus
    Acceptable,
}

#[derive(Args)]
struct EgzArgs {
    /// Modulus m of Z_m
    #[arg(long)]
    group: String,
    /// Sequence literal, e.g. "3,1,4,1,5"
    #[arg(long)]
    seq: String,
    #[arg(long, value_enum)]
    mode: EgzMode,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Args)]
#[command(group = ArgGroup::new("target").required(true).args(["id", "all"]))]
struct VerifyArgs {
    /// Statement id to verify
    #[arg(long)]
    id: Option<String>,
    /// Verify every registered statement
    #[arg(long)]
    all: bool,
    /// Seed for statements with sampled domains
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Args)]
struct PartitionArgs {
    /// Total to partition
    #[arg(long)]
    total: Option<u32>,
    /// Maximum number of parts
    #[arg(long)]
    parts: Option<usize>,
    /// Largest allowed part
    #[arg(long)]
    max_part: Option<u32>,
    /// List the partitions as well as counting them
    #[arg(long)]
    list: bool,
    /// Binomial coefficient instead, as "N,K"
    #[arg(long)]
    choose: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

// ---------------------------------------------------------------------------
// Report shapes. Field order is the serialized order; every field is
// semantic (no timings or node counts), so equal runs give equal bytes.

#[derive(Serialize, Deserialize)]
struct GReport {
    group: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    g: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    lower: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    upper: Option<usize>,
    max_free_size: usize,
    example_set: String,
    exhausted: bool,
}

#[derive(Serialize, Deserialize)]
struct FreeReport {
    group: String,
    max_free_size: usize,
    example_set: String,
    exhausted: bool,
}

#[derive(Serialize, Deserialize)]
struct ZeroSumReport {
    witness: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    sum: Option<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct SumsetReport {
    modulus: u32,
    mode: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    result: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    cardinality: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    form: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct SeqWitnessReport {
    /// Witness values in position order; None when no witness exists.
    witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    positions: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    lengths_checked: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct PartitionReport {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    total: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    parts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    max_part: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    partitions: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    choose: Option<u64>,
}

fn main() -> ExitCode {
    // Die silently on a closed pipe (e.g. `zerosum ... | head`) instead of
    // panicking inside println.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::G(args) => run_g(&args),
        Command::FreeSearch(args) => run_free_search(&args),
        Command::ZeroSum(args) => run_zero_sum(&args),
        Command::Sumset(args) => run_sumset(&args),
        Command::Egz(args) => run_egz(&args),
        Command::Verify(args) => run_verify(&args),
        Command::Partitions(args) => run_partitions(&args),
    }
}

fn core_err(e: Error) -> String {
    e.to_string()
}

fn to_json<T: Serialize>(report: &T) -> Result<String, String> {
    serde_json::to_string(report).map_err(|e| format!("serialization failed: {e}"))
}

// ---------------------------------------------------------------------------
// g / free-search

fn search_config(args: &SearchArgs) -> Result<SearchConfig, String> {
    if args.workers == 0 {
        return Err("--workers must be at least 1".into());
    }
    Ok(SearchConfig {
        workers: args.workers,
        node_budget: args.budget,
        ..SearchConfig::default()
    })
}

/// Runs or resumes the exhaustive search and persists a checkpoint when the
/// budget interrupts it.
fn searched_outcome(args: &SearchArgs, group: &GroupSpec) -> Result<SearchOutcome, String> {
    let config = search_config(args)?;
    let outcome = if let Some(path) = &args.resume {
        let text = fs::read_to_string(path)
            .map_err(|e| format!("cannot read checkpoint {}: {e}", path.display()))?;
        let cp = SearchCheckpoint::parse(&text).map_err(core_err)?;
        resume_free_search(group, &config, &cp).map_err(core_err)?
    } else {
        max_free_set(group, &config).map_err(core_err)?
    };
    if let (Some(cp), Some(path)) = (&outcome.checkpoint, &args.checkpoint) {
        fs::write(path, cp.to_text())
            .map_err(|e| format!("cannot write checkpoint {}: {e}", path.display()))?;
    }
    Ok(outcome)
}

fn run_g(args: &SearchArgs) -> Result<u8, String> {
    let group = GroupSpec::parse(&args.group).map_err(core_err)?;
    let outcome = searched_outcome(args, &group)?;
    let report = &outcome.report;
    let (g_exact, lower, upper) = if report.exhausted {
        (Some(report.max_free_size + 1), None, None)
    } else {
        (
            None,
            Some(report.max_free_size + 1),
            Some(group.order() + 1),
        )
    };
    let out = GReport {
        group: group.to_string(),
        g: g_exact,
        lower,
        upper,
        max_free_size: report.max_free_size,
        example_set: report.example_set.to_string(),
        exhausted: report.exhausted,
    };
    match args.format {
        Format::Json => println!("{}", to_json(&out)?),
        Format::Human => {
            if let Some(g) = out.g {
                println!("g = {g}");
            } else {
                println!(
                    "g in [{}, {}] (search not exhausted)",
                    out.lower.unwrap(),
                    out.upper.unwrap()
                );
            }
            println!("free set ({}): {}", out.max_free_size, out.example_set);
        }
    }
    Ok(if report.exhausted {
        EXIT_OK
    } else {
        EXIT_BUDGET
    })
}

fn run_free_search(args: &SearchArgs) -> Result<u8, String> {
    let group = GroupSpec::parse(&args.group).map_err(core_err)?;
    let outcome = searched_outcome(args, &group)?;
    let report = &outcome.report;
    let out = FreeReport {
        group: group.to_string(),
        max_free_size: report.max_free_size,
        example_set: report.example_set.to_string(),
        exhausted: report.exhausted,
    };
    match args.format {
        Format::Json => println!("{}", to_json(&out)?),
        Format::Human => {
            println!("max_free_size = {}", out.max_free_size);
            println!("example_set = {}", out.example_set);
            println!("exhausted = {}", out.exhausted);
        }
    }
    Ok(if report.exhausted {
        EXIT_OK
    } else {
        EXIT_BUDGET
    })
}

// ---------------------------------------------------------------------------
// zero-sum

fn run_zero_sum(args: &ZeroSumArgs) -> Result<u8, String> {
    let group = GroupSpec::parse(&args.group).map_err(core_err)?;
    let x = GroupSubset::parse(&group, &args.set).map_err(core_err)?;
    let e = args.k.unwrap_or_else(|| group.exponent());
    let found = find_zero_sum_subset(&x, e).map_err(core_err)?;
    match found {
        Some(w) => {
            let coords: Vec<Vec<u32>> = w.elements().iter().map(|e| e.coords().to_vec()).collect();
            let out = ZeroSumReport {
                witness: Some(coords),
                sum: Some(group.identity().coords().to_vec()),
            };
            match args.format {
                Format::Json => println!("{}", to_json(&out)?),
                Format::Human => {
                    let text: Vec<String> = w.elements().iter().map(|e| e.to_string()).collect();
                    println!("witness: {}", text.join(";"));
                }
            }
            Ok(EXIT_OK)
        }
        None => {
            match args.format {
                Format::Json => {
                    let out = ZeroSumReport {
                        witness: None,
                        sum: None,
                    };
                    println!("{}", to_json(&out)?);
                }
                Format::Human => println!("none"),
            }
            Ok(EXIT_NEGATIVE)
        }
    }
}

// ---------------------------------------------------------------------------
// sumset

fn single_modulus(group: &str) -> Result<u32, String> {
    let spec = GroupSpec::parse(group).map_err(core_err)?;
    if spec.rank() != 1 {
        return Err(format!(
            "this subcommand takes a single modulus, got group {spec}"
        ));
    }
    Ok(spec.moduli()[0])
}

fn run_sumset(args: &SumsetArgs) -> Result<u8, String> {
    let m = single_modulus(&args.group)?;
    let need_sets = if args.mode == SumsetMode::Pairwise {
        2
    } else {
        1
    };
    if args.sets.len() != need_sets {
        return Err(format!(
            "this mode takes exactly {need_sets} --set argument(s), got {}",
            args.sets.len()
        ));
    }
    let a = ResidueSet::parse(m, &args.sets[0]).map_err(core_err)?;
    let (mode, k, result, form) = match args.mode {
        SumsetMode::Restricted | SumsetMode::Unrestricted => {
            let k = args.k.ok_or_else(|| "this mode requires --k".to_string())?;
            let s = if args.mode == SumsetMode::Restricted {
                restricted_sumset(&a, k).map_err(core_err)?
            } else {
                unrestricted_sumset(&a, k).map_err(core_err)?
            };
            let name = if args.mode == SumsetMode::Restricted {
                "restricted"
            } else {
                "unrestricted"
            };
            (name, Some(k), Some(s), None)
        }
        SumsetMode::Pairwise => {
            if args.k.is_some() {
                return Err("pairwise mode does not take --k".into());
            }
            let b = ResidueSet::parse(m, &args.sets[1]).map_err(core_err)?;
            let s = pairwise_sumset(&a, &b).map_err(core_err)?;
            ("pairwise", None, Some(s), None)
        }
        SumsetMode::Classify => {
            if args.k.is_some() {
                return Err("classify mode does not take --k".into());
            }
            let f = classify_form(&a).map_err(core_err)?;
            ("classify", None, None, Some(f.to_string()))
        }
    };
    let out = SumsetReport {
        modulus: m,
        mode: mode.to_string(),
        k,
        result: result.as_ref().map(|s| s.to_string()),
        cardinality: result.as_ref().map(|s| s.cardinality()),
        form,
    };
    match args.format {
        Format::Json => println!("{}", to_json(&out)?),
        Format::Human => match (&out.result, &out.form) {
            (Some(r), _) => println!("result = {} ({} residues)", r, out.cardinality.unwrap()),
            (None, Some(f)) => println!("form = {f}"),
            _ => unreachable!("every mode fills result or form"),
        },
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// egz

fn seq_witness_report(w: &ZeroSumSubseqWitness, seq: &ResidueSequence) -> SeqWitnessReport {
    let values: Vec<String> = w.values(seq).iter().map(|v| v.to_string()).collect();
    SeqWitnessReport {
        witness: Some(values.join(",")),
        positions: Some(w.positions().to_vec()),
        length: Some(w.len()),
        lengths_checked: None,
    }
}

fn emit_seq_witness(format: Format, report: &SeqWitnessReport) -> Result<u8, String> {
    match format {
        Format::Json => println!("{}", to_json(report)?),
        Format::Human => match &report.witness {
            Some(values) => {
                let positions: Vec<String> = report
                    .positions
                    .as_ref()
                    .unwrap()
                    .iter()
                    .map(|p| p.to_string())
                    .collect();
                println!("witness: {values} (positions {})", positions.join(","));
            }
            None => match &report.lengths_checked {
                Some(lengths) => {
                    let l: Vec<String> = lengths.iter().map(|v| v.to_string()).collect();
                    println!("none (lengths checked: {})", l.join(","));
                }
                None => println!("none"),
            },
        },
    }
    Ok(if report.witness.is_some() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn run_egz(args: &EgzArgs) -> Result<u8, String> {
    let m = single_modulus(&args.group)?;
    let seq = ResidueSequence::parse(m, &args.seq).map_err(core_err)?;
    let report = match args.mode {
        EgzMode::Egz => seq_witness_report(&egz_witness(&seq, m).map_err(core_err)?, &seq),
        EgzMode::Gen => seq_witness_report(&gen_witness(&seq, m).map_err(core_err)?, &seq),
        EgzMode::Davenport => match davenport_witness(&seq) {
            Ok(w) => seq_witness_report(&w, &seq),
            Err(Error::NoGuarantee { .. }) => SeqWitnessReport {
                witness: None,
                positions: None,
                length: None,
                lengths_checked: None,
            },
            Err(e) => return Err(core_err(e)),
        },
        EgzMode::Acceptable => match acceptable_length_witness(&seq).map_err(core_err)? {
            AcceptableOutcome::Found(w) => seq_witness_report(&w, &seq),
            AcceptableOutcome::AbsentVerified { lengths_checked } => SeqWitnessReport {
                witness: None,
                positions: None,
                length: None,
                lengths_checked: Some(lengths_checked),
            },
        },
    };
    emit_seq_witness(args.format, &report)
}

// ---------------------------------------------------------------------------
// verify

fn human_lemma_lines(r: &LemmaReport, out: &mut String) {
    let verdict = r.verdict.to_string();
    out.push_str(&format!(
        "{verdict:<8}{:<20}{:>9} cases{:>8} ms",
        r.id, r.cases_checked, r.wall_time_ms
    ));
    if let Some(seed) = r.seed {
        out.push_str(&format!("  (seed {seed})"));
    }
    out.push('\n');
    if r.verdict != Verdict::Pass {
        out.push_str(&format!("        domain: {}\n", r.domain));
    }
    for c in &r.counterexamples {
        out.push_str(&format!("        counterexample: {c}\n"));
    }
}

fn run_verify(args: &VerifyArgs) -> Result<u8, String> {
    let params = VerifyParams { seed: args.seed };
    let reports: Vec<LemmaReport> = if args.all {
        verify_all(&params).map_err(core_err)?
    } else {
        let id = args.id.as_ref().expect("clap enforces the target group");
        vec![verify_statement(id, &params).map_err(core_err)?]
    };
    match args.format {
        Format::Json => {
            if args.all {
                println!("{}", to_json(&reports)?);
            } else {
                println!("{}", to_json(&reports[0])?);
            }
        }
        Format::Human => {
            let mut out = String::new();
            for r in &reports {
                human_lemma_lines(r, &mut out);
            }
            print!("{out}");
        }
    }
    Ok(if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    })
}

// ---------------------------------------------------------------------------
// partitions

fn parse_choose(text: &str) -> Result<(u64, u64), String> {
    let (n, k) = text
        .split_once(',')
        .ok_or_else(|| format!("--choose takes N,K, got {text:?}"))?;
    let n = n
        .trim()
        .parse()
        .map_err(|_| format!("--choose N {n:?} is not a number"))?;
    let k = k
        .trim()
        .parse()
        .map_err(|_| format!("--choose K {k:?} is not a number"))?;
    Ok((n, k))
}

fn fits_u64(v: u128, what: &str) -> Result<u64, String> {
    u64::try_from(v).map_err(|_| format!("{what} exceeds 64 bits"))
}

fn run_partitions(args: &PartitionArgs) -> Result<u8, String> {
    if let Some(choose_text) = &args.choose {
        if args.total.is_some() || args.parts.is_some() || args.max_part.is_some() || args.list {
            return Err("--choose does not combine with partition flags".into());
        }
        let (n, k) = parse_choose(choose_text)?;
        let value = fits_u64(choose(n, k), "binomial")?;
        let out = PartitionReport {
            total: None,
            parts: None,
            max_part: None,
            count: None,
            partitions: None,
            n: Some(n),
            k: Some(k),
            choose: Some(value),
        };
        match args.format {
            Format::Json => println!("{}", to_json(&out)?),
            Format::Human => println!("C({n},{k}) = {value}"),
        }
        return Ok(EXIT_OK);
    }
    let (total, parts, max_part) = match (args.total, args.parts, args.max_part) {
        (Some(t), Some(p), Some(m)) => (t, p, m),
        _ => {
            return Err("partitions needs --total, --parts and --max-part (or --choose N,K)".into())
        }
    };
    let count = fits_u64(count_box_partitions(total, parts, max_part), "count")?;
    let listed = if args.list {
        let rows: Vec<String> = enumerate_box_partitions(total, parts, max_part)
            .iter()
            .map(|p| {
                let parts: Vec<String> = p.parts().iter().map(|v| v.to_string()).collect();
                parts.join("+")
            })
            .collect();
        Some(rows)
    } else {
        None
    };
    let out = PartitionReport {
        total: Some(total),
        parts: Some(parts),
        max_part: Some(max_part),
        count: Some(count),
        partitions: listed,
        n: None,
        k: None,
        choose: None,
    };
    match args.format {
        Format::Json => println!("{}", to_json(&out)?),
        Format::Human => {
            println!("count = {count}");
            if let Some(rows) = &out.partitions {
                for row in rows {
                    println!("{row}");
                }
            }
        }
    }
    Ok(EXIT_OK)
}
