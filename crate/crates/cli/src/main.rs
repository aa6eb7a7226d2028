//! collatz: exact structure tables, type classification and inverse
//! conversion on the command line.
//!
//! Exit codes: 0 success, 2 usage or data error, 3 structural property
//! failure (incomplete table, broken proportion trend), 4 order cap
//! exceeded. Reports go to stdout or --output; verdict lines go to
//! stderr so file bytes stay stable.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use collatz_core::classify;
use collatz_core::export;
use collatz_core::inverse;
use collatz_core::structure::ParityWord;
use collatz_core::tables;
use collatz_core::{Error as CoreError, Natural, Rational, DEFAULT_ORDER_CAP};

#[derive(Parser)]
#[command(
    name = "collatz",
    version,
    about = "Exact arrangement tables, classification and inversion for Syracuse sequences"
)]
struct Cli {
    /// Worker threads for table construction (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build arrangement tables: chromoforms, chromologues, decompositions.
    Table(TableArgs),
    /// Classify sequences or words; count and trend the two types.
    Classify(ClassifyArgs),
    /// Convert words back to generators; analyze periodic words.
    Invert(InvertArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Args)]
struct TableArgs {
    /// First generator of the underlying progression.
    #[arg(long, default_value = "1", value_parser = parse_natural)]
    first: Natural,
    /// Order n: sequence length, 2^n rows for a chromoform.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    order: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Emit the packed parity-word table instead of the term matrix.
    #[arg(long, conflicts_with_all = ["decompose", "chromologue", "blocks"])]
    structural: bool,
    /// Split the chromoform by the parity of the first iterate.
    #[arg(long, conflicts_with_all = ["chromologue", "blocks"])]
    decompose: bool,
    /// Build the isoform family led by this fundamental instead.
    #[arg(long, value_parser = parse_natural, conflicts_with = "blocks")]
    chromologue: Option<Natural>,
    /// Row count of the chromologue prefix.
    #[arg(long, requires = "chromologue", default_value_t = 8)]
    rows: u64,
    /// Extend a chromologue of 2^k rows by k further steps.
    #[arg(long, requires = "chromologue", value_parser = clap::value_parser!(u64).range(1..=62))]
    prolong: Option<u64>,
    /// Emit this many consecutive chromoform blocks.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    blocks: Option<u64>,
    /// Glyphs for odd and even cells in text format, as a two-character string.
    #[arg(long, value_parser = parse_glyphs, default_value = "#.")]
    glyphs: (char, char),
    /// Override the row-count guard (env COLLATZ_ORDER_CAP, default 24).
    #[arg(long)]
    order_cap: Option<u64>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Generator to classify, or fundamental for --reversal.
    #[arg(long, value_parser = parse_natural)]
    gen: Option<Natural>,
    /// Sequence order.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    order: Option<u64>,
    /// Classify this generated word (form G:0110...).
    #[arg(long, value_parser = parse_word, conflicts_with_all = ["gen", "counts", "trend", "reversal"])]
    word: Option<ParityWord>,
    /// Count type A and type B words of --order.
    #[arg(long, conflicts_with_all = ["trend", "reversal", "gen"])]
    counts: bool,
    /// Comma-separated orders; fails with exit 3 if r_A stops falling past order 8.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["reversal", "gen", "order"])]
    trend: Option<Vec<u64>>,
    /// Locate the reversal point of the chromologue led by --gen.
    #[arg(long, requires = "gen")]
    reversal: bool,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Decimal digits when rendering exact rationals.
    #[arg(long, default_value_t = 20)]
    digits: usize,
}

#[derive(Args)]
struct InvertArgs {
    /// Inclusive word (form I:0110...) to convert to its generator class.
    #[arg(long, value_parser = parse_word, conflicts_with_all = ["base", "cycle", "density"])]
    word: Option<ParityWord>,
    /// Period word for a sliding-growth table.
    #[arg(long, value_parser = parse_word, conflicts_with_all = ["cycle", "density"])]
    base: Option<ParityWord>,
    /// Optional tail appended after the repeated base.
    #[arg(long, value_parser = parse_word, requires = "base")]
    tail: Option<ParityWord>,
    /// Number of base repetitions in the growth table.
    #[arg(long, requires = "base", value_parser = clap::value_parser!(u64).range(1..))]
    repeat: Option<u64>,
    /// Period word to test for a stable integer cycle.
    #[arg(long, value_parser = parse_word, conflicts_with = "density")]
    cycle: Option<ParityWord>,
    /// Lower-bound report for the window of non-convertible prefixes.
    #[arg(long, requires_all = ["order", "r"])]
    density: bool,
    /// Window order for --density.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    order: Option<u64>,
    /// Ratio in (0,1) for --density, written num/den.
    #[arg(long, value_parser = parse_ratio)]
    r: Option<Rational>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Decimal digits when rendering exact rationals.
    #[arg(long, default_value_t = 20)]
    digits: usize,
}

fn parse_natural(s: &str) -> Result<Natural, String> {
    let value: Natural = s
        .parse()
        .map_err(|_| format!("not a natural number: {s}"))?;
    if value == Natural::ZERO {
        return Err("generators start at 1".into());
    }
    Ok(value)
}

fn parse_word(s: &str) -> Result<ParityWord, String> {
    s.parse::<ParityWord>().map_err(|e| e.to_string())
}

fn parse_glyphs(s: &str) -> Result<(char, char), String> {
    let mut chars = s.chars();
    match (chars.next(), chars.next(), chars.next()) {
        (Some(one), Some(zero), None) if one != zero => Ok((one, zero)),
        _ => Err("expected two distinct characters, odd glyph first".into()),
    }
}

fn parse_ratio(s: &str) -> Result<Rational, String> {
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let num: BigInt = num
        .trim()
        .parse()
        .map_err(|_| format!("bad numerator: {s}"))?;
    let den: BigInt = den
        .trim()
        .parse()
        .map_err(|_| format!("bad denominator: {s}"))?;
    if den == BigInt::ZERO {
        return Err("denominator is zero".into());
    }
    Ok(Rational::new(num, den))
}

enum Failure {
    Usage(String),
    Domain(CoreError),
    Check(String),
    Io(std::io::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => 2,
            Failure::Domain(CoreError::OrderCapExceeded { .. }) => 4,
            Failure::Domain(CoreError::TrendViolation { .. }) => 3,
            Failure::Domain(_) => 2,
            Failure::Check(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Check(m) => m.clone(),
            Failure::Domain(e) => e.to_string(),
            Failure::Io(e) => e.to_string(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure::Domain(e)
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure::Usage(message.into())
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    use std::io::Write;
    match output {
        Some(path) => std::fs::write(path, content).map_err(Failure::Io),
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(Failure::Io),
    }
}

fn order_cap(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var("COLLATZ_ORDER_CAP") {
        Ok(raw) => raw
            .parse()
            .map_err(|_| usage(format!("COLLATZ_ORDER_CAP is not a number: {raw}"))),
        Err(_) => Ok(DEFAULT_ORDER_CAP),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let result = match cli.command {
        Command::Table(args) => run_table(args),
        Command::Classify(args) => run_classify(args),
        Command::Invert(args) => run_invert(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run_table(args: TableArgs) -> Result<(), Failure> {
    let cap = order_cap(args.order_cap)?;
    let (one, zero) = args.glyphs;

    if let Some(fundamental) = &args.chromologue {
        if args.rows == 0 {
            return Err(usage("chromologues need at least one row"));
        }
        let family = tables::build_chromologue(fundamental, args.order, args.rows);
        if let Some(extension) = args.prolong {
            let prolonged = tables::prolong_chromologue(&family, extension)?;
            let content = match args.format {
                Format::Csv => export::prolonged_csv(&prolonged),
                Format::Json => export::prolonged_json(&prolonged),
                Format::Text => export::prolonged_text(&prolonged, one, zero),
            };
            emit(&args.output, &content)?;
            if !tables::verify_completeness(&prolonged.suffix_structural()) {
                return Err(Failure::Check(format!(
                    "suffix completeness FAIL (extension {extension})"
                )));
            }
            eprintln!("suffix completeness PASS (extension {extension})");
        } else {
            let content = match args.format {
                Format::Csv => export::chromologue_csv(&family),
                Format::Json => export::chromologue_json(&family),
                Format::Text => export::chromologue_text(&family, one, zero),
            };
            emit(&args.output, &content)?;
            eprintln!(
                "isoformy PASS ({} rows share word {})",
                family.row_count(),
                family.characteristic_word()
            );
        }
        return Ok(());
    }

    if let Some(count) = args.blocks {
        let blocks = tables::polychromoform_prefix_with_cap(&args.first, args.order, count, cap)?;
        let content = match args.format {
            Format::Csv => export::polychromoform_csv(&blocks),
            Format::Json => export::polychromoform_json(&blocks),
            Format::Text => {
                let mut grid = String::new();
                for block in &blocks {
                    grid.push_str(&export::chromoform_text(block, one, zero));
                }
                grid
            }
        };
        emit(&args.output, &content)?;
        let reference = tables::structural_matrix(&blocks[0]);
        if !tables::verify_completeness(&reference)
            || blocks[1..]
                .iter()
                .any(|block| tables::structural_matrix(block) != reference)
        {
            return Err(Failure::Check(format!(
                "block isoformy FAIL (order {})",
                args.order
            )));
        }
        eprintln!(
            "completeness PASS ({count} identical blocks of order {})",
            args.order
        );
        return Ok(());
    }

    if args.decompose {
        let matrix = tables::build_chromoform_with_cap(&args.first, args.order, cap)?;
        let split = tables::decompose_perfect(&matrix)?;
        let content = match args.format {
            Format::Csv => export::decomposition_csv(&split),
            Format::Json => export::decomposition_json(&split),
            Format::Text => export::decomposition_text(&split, one, zero),
        };
        emit(&args.output, &content)?;
        for half in [&split.even_t1, &split.odd_t1] {
            if !tables::verify_completeness(&half.reduced_structural()) {
                return Err(Failure::Check(format!(
                    "decomposition completeness FAIL (order {})",
                    args.order
                )));
            }
        }
        eprintln!(
            "decomposition completeness PASS (both halves, reduced order {})",
            args.order - 1
        );
        return Ok(());
    }

    if args.structural {
        let matrix = tables::structural_matrix_direct_with_cap(&args.first, args.order, cap)?;
        let content = match args.format {
            Format::Csv => export::structural_csv(&matrix, &args.first),
            Format::Json => export::structural_json(&matrix, &args.first),
            Format::Text => export::structural_text(&matrix, &args.first, one, zero),
        };
        emit(&args.output, &content)?;
        if !tables::verify_completeness(&matrix) {
            return Err(Failure::Check(format!(
                "completeness FAIL (first {}, order {})",
                args.first, args.order
            )));
        }
        eprintln!(
            "completeness PASS ({} distinct words of order {})",
            matrix.row_count(),
            args.order
        );
        return Ok(());
    }

    let matrix = tables::build_chromoform_with_cap(&args.first, args.order, cap)?;
    let content = match args.format {
        Format::Csv => export::chromoform_csv(&matrix),
        Format::Json => export::chromoform_json(&matrix),
        Format::Text => export::chromoform_text(&matrix, one, zero),
    };
    emit(&args.output, &content)?;
    if !tables::verify_completeness(&tables::structural_matrix(&matrix)) {
        return Err(Failure::Check(format!(
            "completeness FAIL (first {}, order {})",
            args.first, args.order
        )));
    }
    eprintln!(
        "completeness PASS ({} distinct words of order {})",
        matrix.row_count(),
        args.order
    );
    Ok(())
}

fn run_classify(args: ClassifyArgs) -> Result<(), Failure> {
    if let Some(orders) = &args.trend {
        let rows = classify::proportion_trend(orders)?;
        let content = match args.format.unwrap_or(Format::Csv) {
            Format::Json => export::trend_json(&rows, args.digits),
            _ => export::trend_csv(&rows, args.digits),
        };
        return emit(&args.output, &content);
    }

    if args.counts {
        let order = args.order.ok_or_else(|| usage("--counts needs --order"))?;
        let counts = classify::count_types(order)?;
        return emit(&args.output, &export::counts_json(&counts, args.digits));
    }

    if args.reversal {
        let fundamental = args.gen.as_ref().expect("clap enforces --gen");
        let order = args
            .order
            .ok_or_else(|| usage("--reversal needs --order"))?;
        let info = classify::chromologue_reversal_point(fundamental, order)?;
        return emit(
            &args.output,
            &export::reversal_json(fundamental, order, &info),
        );
    }

    if let Some(word) = &args.word {
        let (principal, info) = classify::classify_word(word)?;
        return emit(
            &args.output,
            &export::word_class_json(word, principal, info.as_ref()),
        );
    }

    if let Some(generator) = &args.gen {
        let order = args.order.ok_or_else(|| usage("--gen needs --order"))?;
        let class = classify::classify_sequence(generator, order);
        return emit(
            &args.output,
            &export::sequence_class_json(generator, order, &class),
        );
    }

    Err(usage(
        "nothing to do: pass --gen, --word, --counts, --trend or --reversal",
    ))
}

fn run_invert(args: InvertArgs) -> Result<(), Failure> {
    if args.density {
        let order = args.order.expect("clap enforces --order");
        let ratio = args.r.as_ref().expect("clap enforces --r");
        let report = inverse::nonconvertible_bound(order, ratio)?;
        return emit(&args.output, &export::density_json(&report, args.digits));
    }

    if let Some(word) = &args.cycle {
        let analysis = inverse::cycle_fixed_point(word)?;
        return emit(&args.output, &export::cycle_json(&analysis));
    }

    if let Some(base) = &args.base {
        let repeat = args.repeat.ok_or_else(|| usage("--base needs --repeat"))?;
        let rows = inverse::minimal_generator_growth(base, args.tail.as_ref(), repeat)?;
        let content = match args.format.unwrap_or(Format::Csv) {
            Format::Json => export::growth_json(&rows),
            _ => export::growth_csv(&rows),
        };
        return emit(&args.output, &content);
    }

    if let Some(word) = &args.word {
        let solution = inverse::generator_for_word(word)?;
        return emit(&args.output, &export::residue_json(word, &solution));
    }

    Err(usage(
        "nothing to do: pass --word, --base, --cycle or --density",
    ))
}
