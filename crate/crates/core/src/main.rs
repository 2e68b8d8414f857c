use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use borelpaths_core::arith::choose2;
use borelpaths_core::enumerate::{enumerate_degree2, enumerate_degree_d};
use borelpaths_core::export::{cache_line, export_csv, export_shift_csv, VerdictCache};
use borelpaths_core::hilbert::{
    chain_f_vector, hf_bruteforce, hf_table_from_fvector, hilbert_polynomial_from_fvector,
    multiplicity_bruteforce, BruteLimits,
};
use borelpaths_core::multiplicity::diagonal_path_counts;
use borelpaths_core::verify::{
    cross_check, shift_table, verdict, Classification, VerdictRecord, DEFAULT_EXHAUSTIVE_CAP,
};
use borelpaths_core::{
    borel_closure, lex_multiplicity, lex_segment, partition_to_stable_set, path_count,
    revlex_multiplicity, revlex_segment, subpartition_count, BigNat, Error, Monomial, SegmentSpec,
    StableSet, StrictPartition,
};

const DEFAULT_MEMORY_CAP: u64 = 2 << 30;

/// Strongly stable monomial sets, path-counting multiplicities and Hilbert functions.
#[derive(Debug, Parser)]
#[command(name = "borelpaths", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = "BORELPATHS_THREADS")]
    threads: Option<usize>,
    /// Write data to FILE instead of stdout.
    #[arg(long, global = true, env = "BORELPATHS_OUTPUT")]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json, env = "BORELPATHS_FORMAT")]
    format: Format,
    /// JSON-lines verdict cache; `verify` resumes from it.
    #[arg(long, global = true, env = "BORELPATHS_CACHE")]
    cache: Option<PathBuf>,
    /// Memory cap in bytes for product-set computations.
    #[arg(long, global = true, default_value_t = DEFAULT_MEMORY_CAP, env = "BORELPATHS_MEM_CAP")]
    mem_cap: u64,
    /// Largest n for exhaustive searches.
    #[arg(long, global = true, default_value_t = DEFAULT_EXHAUSTIVE_CAP, env = "BORELPATHS_CAP")]
    cap: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Dp,
    Closed,
    Subpartition,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List strongly stable sets of a given size.
    Enumerate(EnumerateArgs),
    /// Multiplicity (number of maximal NE-paths) of a diagram or segment.
    Mult(MultArgs),
    /// Hilbert function and polynomial.
    Hilbert(HilbertArgs),
    /// Exhaustive Lex/RevLex minimality check for one n.
    Verify(VerifyArgs),
    /// Closed-form Lex/RevLex winners for every r, n = 4..=n_max.
    ShiftTable(ShiftArgs),
    /// Cross-check every independent method on small diagrams.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: u32,
    /// Size of the set; the whole window C(n,2) < u <= C(n+1,2) when omitted (degree 2).
    #[arg(long)]
    u: Option<u64>,
    #[arg(long, short = 'd', default_value_t = 2)]
    degree: u32,
    /// Include the multiplicity of every set.
    #[arg(long)]
    annotate: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("shape").required(true).args(["partition", "lex", "revlex"])))]
struct MultArgs {
    #[arg(long, value_name = "PARTS")]
    partition: Option<StrictPartition>,
    #[arg(long, num_args = 2, value_names = ["N", "U"])]
    lex: Option<Vec<u64>>,
    #[arg(long, num_args = 2, value_names = ["N", "U"])]
    revlex: Option<Vec<u64>>,
    #[arg(long, value_enum, default_value_t = Method::Dp)]
    method: Method,
}

#[derive(Debug, Args)]
struct HilbertArgs {
    /// Degree-2 set given by its partition.
    #[arg(long, value_name = "PARTS", conflicts_with = "generators")]
    partition: Option<StrictPartition>,
    /// Any-degree set given by comma-separated generators, e.g. "x3*x5*x6".
    #[arg(long, value_name = "MONOMIALS", requires = "n")]
    generators: Option<String>,
    /// Number of variables for --generators.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, default_value_t = 7)]
    i_max: u32,
    /// Include the Hilbert polynomial.
    #[arg(long)]
    poly: bool,
    /// Also compute the values from explicit product sets.
    #[arg(long)]
    brute: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    n: u32,
}

#[derive(Debug, Args)]
struct ShiftArgs {
    #[arg(long, default_value_t = 100)]
    n_max: u32,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long, default_value_t = 12)]
    n_max: u32,
}

/// Failure reported to the user, with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Validation(_) | Error::Range(_) | Error::UnsupportedDegree(_) => 2,
            Error::Resource(_) | Error::Inconclusive(_) => 3,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        Failure {
            code: 3,
            message: format!("i/o: {err}"),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let opts = &cli.global;
    if let Some(threads) = opts.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|err| usage(format!("--threads: {err}")))?;
    }
    let mut out: Box<dyn Write> = match &opts.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let code = match &cli.command {
        Command::Enumerate(args) => enumerate(args, opts, &mut out)?,
        Command::Mult(args) => mult(args, &mut out)?,
        Command::Hilbert(args) => hilbert(args, opts, &mut out)?,
        Command::Verify(args) => verify(args, opts, &mut out)?,
        Command::ShiftTable(args) => shift(args, opts, &mut out)?,
        Command::Oracle(args) => oracle(args, opts, &mut out)?,
    };
    out.flush()?;
    Ok(code)
}

fn segment(values: &[u64]) -> Result<SegmentSpec, Failure> {
    let n =
        u32::try_from(values[0]).map_err(|_| usage(format!("n = {} is too large", values[0])))?;
    Ok(SegmentSpec::new(n, values[1])?)
}

fn enumerate(args: &EnumerateArgs, opts: &GlobalOpts, out: &mut dyn Write) -> Outcome {
    if args.degree == 2 {
        let sizes = match args.u {
            Some(u) => u..=u,
            None => choose2(u64::from(args.n)) + 1..=choose2(u64::from(args.n) + 1),
        };
        if opts.format == Format::Csv {
            writeln!(
                out,
                "{}",
                if args.annotate {
                    "n,u,parts,e"
                } else {
                    "n,u,parts"
                }
            )?;
        }
        for u in sizes {
            for p in enumerate_degree2(args.n, u)? {
                let e = args.annotate.then(|| path_count(&p));
                match opts.format {
                    Format::Json => {
                        let mut line = json!({"n": args.n, "u": u, "parts": p.parts()});
                        if let Some(e) = e {
                            line["e"] = Value::String(e.to_string());
                        }
                        writeln!(out, "{line}")?;
                    }
                    Format::Csv => {
                        let tail = e.map(|e| format!(",{e}")).unwrap_or_default();
                        writeln!(out, "{},{u},\"{p}\"{tail}", args.n)?;
                    }
                    Format::Table => {
                        let tail = e.map(|e| format!("  e={e}")).unwrap_or_default();
                        writeln!(out, "{:>4} {:>6}  {p}{tail}", args.n, u)?;
                    }
                }
            }
        }
        return Ok(0);
    }
    let u = args
        .u
        .ok_or_else(|| usage("--u is required for degree other than 2"))?;
    let limits = BruteLimits {
        memory_cap: opts.mem_cap,
        ..BruteLimits::default()
    };
    if opts.format == Format::Csv {
        writeln!(
            out,
            "{}",
            if args.annotate {
                "n,d,u,generators,e"
            } else {
                "n,d,u,generators"
            }
        )?;
    }
    for set in enumerate_degree_d(args.n, args.degree, u)? {
        let gens: Vec<String> = set.generators().iter().map(ToString::to_string).collect();
        let e = match args.annotate {
            true => Some(multiplicity_bruteforce(&set, 3, limits)?.e),
            false => None,
        };
        match opts.format {
            Format::Json => {
                let mut line = json!({"n": args.n, "d": args.degree, "u": u, "generators": gens});
                if let Some(e) = e {
                    line["e"] = Value::String(e.to_string());
                }
                writeln!(out, "{line}")?;
            }
            Format::Csv => {
                let tail = e.map(|e| format!(",{e}")).unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{u},\"{}\"{tail}",
                    args.n,
                    args.degree,
                    gens.join(",")
                )?;
            }
            Format::Table => {
                let tail = e.map(|e| format!("  e={e}")).unwrap_or_default();
                writeln!(out, "st({}){tail}", gens.join(", "))?;
            }
        }
    }
    Ok(0)
}

fn mult(args: &MultArgs, out: &mut dyn Write) -> Outcome {
    let (shape, closed): (StrictPartition, Option<BigNat>) =
        match (&args.partition, &args.lex, &args.revlex) {
            (Some(p), _, _) => (p.clone(), None),
            (_, Some(v), _) => {
                let spec = segment(v)?;
                (lex_segment(spec), Some(lex_multiplicity(spec)))
            }
            (_, _, Some(v)) => {
                let spec = segment(v)?;
                (revlex_segment(spec), Some(revlex_multiplicity(spec)))
            }
            _ => unreachable!("clap requires one shape"),
        };
    let closed_or_err = || {
        closed
            .clone()
            .ok_or_else(|| usage("closed forms need --lex or --revlex"))
    };
    match args.method {
        Method::Dp => writeln!(out, "{}", path_count(&shape))?,
        Method::Subpartition => writeln!(out, "{}", subpartition_count(&shape))?,
        Method::Closed => writeln!(out, "{}", closed_or_err()?)?,
        Method::All => {
            let dp = path_count(&shape);
            let sub = subpartition_count(&shape);
            writeln!(out, "partition    {shape}")?;
            writeln!(out, "dp           {dp}")?;
            writeln!(out, "subpartition {sub}")?;
            let mut agree = dp == sub;
            if let Some(c) = &closed {
                writeln!(out, "closed       {c}")?;
                agree &= *c == dp;
            }
            writeln!(out, "agree        {agree}")?;
            if !agree {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn decimal_list<'a>(values: impl IntoIterator<Item = &'a BigNat>) -> Vec<String> {
    values.into_iter().map(ToString::to_string).collect()
}

fn parse_generators(text: &str, n: u32) -> Result<StableSet, Failure> {
    let gens: Vec<Monomial> = text
        .split(',')
        .map(|g| Monomial::parse(g, n))
        .collect::<Result<_, _>>()?;
    Ok(borel_closure(&gens, n)?)
}

fn hilbert(args: &HilbertArgs, opts: &GlobalOpts, out: &mut dyn Write) -> Outcome {
    let limits = BruteLimits {
        memory_cap: opts.mem_cap,
        ..BruteLimits::default()
    };
    let report = match (&args.partition, &args.generators) {
        (Some(p), _) => {
            let f = chain_f_vector(p);
            let table = hf_table_from_fvector(&f, u64::from(args.i_max));
            let mut report = json!({
                "parts": p.parts(),
                "hf": decimal_list(&table.values),
                "e": path_count(p).to_string(),
                "diag_counts": decimal_list(&diagonal_path_counts(p)),
            });
            if args.poly {
                let poly = hilbert_polynomial_from_fvector(&f, p.n());
                report["poly_num"] = json!(poly
                    .numerators
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>());
                report["poly_den"] = Value::String(poly.denominator.to_string());
            }
            if args.brute {
                let brute = hf_bruteforce(&partition_to_stable_set(p), args.i_max, opts.mem_cap)?;
                report["hf_brute"] = json!(decimal_list(&brute.values));
                report["agree"] = Value::Bool(brute == table);
            }
            report
        }
        (None, Some(text)) => {
            let n = args.n.expect("clap requires --n");
            let set = parse_generators(text, n)?;
            let table = hf_bruteforce(&set, args.i_max, opts.mem_cap)?;
            let mut report = json!({
                "generators": set.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "size": set.len(),
                "hf": decimal_list(&table.values),
            });
            if args.brute || args.poly {
                let m = multiplicity_bruteforce(&set, 3, limits)?;
                report["e"] = Value::String(m.e.to_string());
                report["stabilized_at"] = json!(m.stabilized_at);
            }
            report
        }
        (None, None) => return Err(usage("give --partition or --generators")),
    };
    match opts.format {
        Format::Json => writeln!(out, "{report}")?,
        Format::Csv | Format::Table => {
            let hf = report["hf"].as_array().expect("hf list");
            if opts.format == Format::Csv {
                writeln!(out, "i,hf")?;
            }
            for (i, v) in hf.iter().enumerate() {
                let v = v.as_str().expect("decimal");
                match opts.format {
                    Format::Csv => writeln!(out, "{i},{v}")?,
                    _ => writeln!(out, "{i:>4}  {v}")?,
                }
            }
        }
    }
    Ok(0)
}

fn verify(args: &VerifyArgs, opts: &GlobalOpts, out: &mut dyn Write) -> Outcome {
    if args.n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    if args.n > opts.cap {
        return Err(Error::Resource(format!(
            "n = {} exceeds the exhaustive cap {}; pass --cap to raise it",
            args.n, opts.cap
        ))
        .into());
    }
    let mut cache = opts.cache.as_ref().map(VerdictCache::open).transpose()?;
    let specs: Vec<SegmentSpec> = (1..=args.n)
        .map(|r| SegmentSpec::from_r(args.n, r).expect("r in 1..=n"))
        .collect();
    let mut records: Vec<VerdictRecord> = Vec::with_capacity(specs.len());
    let mut missing = Vec::new();
    for spec in &specs {
        match cache.as_ref().and_then(|c| c.get(spec.n, spec.u)) {
            Some(rec) => records.push(rec.clone()),
            None => missing.push(*spec),
        }
    }
    if !missing.is_empty() {
        let (tx, rx) = std::sync::mpsc::channel();
        let computed = std::thread::scope(|scope| -> Result<Vec<VerdictRecord>, Failure> {
            scope.spawn(move || {
                use rayon::prelude::*;
                missing.into_par_iter().for_each_with(tx, |tx, spec| {
                    let _ = tx.send(verdict(spec));
                });
            });
            let mut fresh = Vec::new();
            for rec in rx {
                if let Some(cache) = cache.as_mut() {
                    cache.insert(rec.clone())?;
                }
                fresh.push(rec);
            }
            Ok(fresh)
        })?;
        records.extend(computed);
    }
    records.sort_by_key(|r| r.u);

    match opts.format {
        Format::Json => {
            for rec in &records {
                writeln!(out, "{}", cache_line(rec))?;
            }
        }
        Format::Csv => write!(out, "{}", export_csv(&records))?,
        Format::Table => {
            writeln!(
                out,
                "{:>4} {:>4} {:>6}  {:<18} e_min",
                "n", "r", "u", "winner"
            )?;
            for rec in &records {
                writeln!(
                    out,
                    "{:>4} {:>4} {:>6}  {:<18} {}",
                    rec.n,
                    rec.r,
                    rec.u,
                    rec.classification.to_string(),
                    rec.e_min
                )?;
            }
        }
    }
    let others: Vec<&VerdictRecord> = records.iter().filter(|r| r.is_counterexample()).collect();
    for rec in &others {
        eprintln!(
            "counterexample at n = {}, u = {}: winners {:?}",
            rec.n,
            rec.u,
            rec.winners
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        );
    }
    let tally = |c: Classification| records.iter().filter(|r| r.classification == c).count();
    eprintln!(
        "n = {}: {} sizes, LEX {}, REVLEX {}, TIE {}, UNIQUE {}, OTHER {}",
        args.n,
        records.len(),
        tally(Classification::Lex),
        tally(Classification::Revlex),
        tally(Classification::TieLexRevlex),
        tally(Classification::UniqueSingleSet),
        others.len()
    );
    Ok(if others.is_empty() { 0 } else { 4 })
}

fn shift(args: &ShiftArgs, opts: &GlobalOpts, out: &mut dyn Write) -> Outcome {
    let rows = shift_table(args.n_max)?;
    match opts.format {
        Format::Json => {
            for row in &rows {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(row).expect("rows serialize")
                )?;
            }
        }
        Format::Csv => write!(out, "{}", export_shift_csv(&rows))?,
        Format::Table => {
            for row in &rows {
                writeln!(out, "{:>5}  {}", row.n, row.pattern)?;
            }
        }
    }
    let worst = rows.iter().map(|r| r.flips()).max().unwrap_or(0);
    let violations = rows.iter().filter(|r| r.violates_flip_bound()).count();
    eprintln!(
        "n = 4..={}: at most {worst} flips per n, {violations} rows with more than 3",
        args.n_max
    );
    Ok(0)
}

fn oracle(args: &OracleArgs, opts: &GlobalOpts, out: &mut dyn Write) -> Outcome {
    if args.n_max > opts.cap {
        return Err(Error::Resource(format!(
            "n_max = {} exceeds the exhaustive cap {}",
            args.n_max, opts.cap
        ))
        .into());
    }
    let checks = cross_check(args.n_max, opts.mem_cap)?;
    let mut all = true;
    for check in &checks {
        all &= check.passed();
        match opts.format {
            Format::Json => writeln!(
                out,
                "{}",
                serde_json::to_string(check).expect("checks serialize")
            )?,
            _ => writeln!(
                out,
                "{} {} ({} cases, {} failures)",
                if check.passed() { "PASS" } else { "FAIL" },
                check.name,
                check.cases,
                check.failures
            )?,
        }
    }
    Ok(if all { 0 } else { 1 })
}
