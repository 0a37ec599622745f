//! Command-line front end. All numeric output is exact ("p/q"); every
//! subcommand has a `--json` mode. Exit codes: 0 success, 1 domain or
//! arithmetic error, 2 usage error.

use std::cmp::Ordering;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use gnum::bisection::{self, interval_chain, Interval};
use gnum::dedekind_set;
use gnum::hyperreal::parse_hyperreal;
use gnum::randomness::{self, Alpha, BatteryConfig, NullCoverSpec, StringSet};
use gnum::sequences::{self, format_rational, DigitString, Rational, SequenceSpec};
use gnum::Error;

#[derive(Parser)]
#[command(name = "gnum", version, about = "Exact bisection encodings, infinitesimal arithmetic, and randomness tooling")]
struct Cli {
    /// Emit machine-readable JSON instead of one-line text
    #[arg(long, global = true)]
    json: bool,
    /// Bisection depth for chain-based commands
    #[arg(long, global = true, default_value_t = 64)]
    depth: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bit-encode a rational relative to an interval
    Encode {
        #[arg(long)]
        value: String,
        #[arg(long)]
        lo: String,
        #[arg(long)]
        hi: String,
    },
    /// Replay a bit string into its interval chain
    Decode {
        #[arg(long)]
        bits: String,
        #[arg(long)]
        lo: String,
        #[arg(long)]
        hi: String,
    },
    /// Exact value of an eventually periodic sequence spec
    Value {
        #[arg(long)]
        spec: String,
    },
    /// Nonterminating positional expansion of a rational in [0, 1]
    Expand {
        #[arg(long)]
        value: String,
        #[arg(long)]
        base: u32,
    },
    /// Change of basis for a sequence spec, value-preserving
    Convert {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        to: u32,
    },
    /// Hyperreal field operations
    #[command(subcommand)]
    Hyper(HyperCommand),
    /// Bisection-limit set classification over the hyperreal field
    #[command(subcommand)]
    Dedekind(DedekindCommand),
    /// Measures, covers, batteries, and the relativity witness
    #[command(subcommand)]
    Rand(RandCommand),
}

#[derive(Subcommand)]
enum HyperCommand {
    /// Evaluate an expression to canonical form; std(...) takes the standard part
    Eval { expr: String },
    /// Zero | Infinitesimal | Appreciable | Unbounded
    Classify { expr: String },
    /// less | equal | greater
    Compare { left: String, right: String },
}

#[derive(Subcommand)]
enum DedekindCommand {
    /// Case tag, symbolic cardinality, and standard limit for an endpoint pair
    Classify {
        #[arg(long)]
        lo: String,
        #[arg(long)]
        hi: String,
        #[arg(long)]
        spec: String,
    },
    /// Exact membership of a point in every chain interval up to --depth
    Member {
        #[arg(long)]
        point: String,
        #[arg(long)]
        lo: String,
        #[arg(long)]
        hi: String,
        #[arg(long)]
        spec: String,
    },
}

#[derive(Subcommand)]
enum RandCommand {
    /// Statistical proxy battery over binary sample files or an inline sample
    Battery(BatteryArgs),
    /// Exact cylinder measure of a finite string set
    Measure {
        #[arg(long)]
        base: u32,
        /// Comma-separated digit strings, e.g. "0,11"
        #[arg(long)]
        strings: String,
    },
    /// Validate a finite Martin-Löf cover, optionally against a target spec
    VerifyCover {
        #[arg(long)]
        file: String,
        #[arg(long)]
        target: Option<String>,
    },
    /// Relativity-of-randomness witness for nested intervals
    Witness {
        #[arg(long)]
        a1: String,
        #[arg(long)]
        b1: String,
        #[arg(long)]
        a2: String,
        #[arg(long)]
        b2: String,
        #[arg(long)]
        spec: String,
    },
}

#[derive(Args)]
struct BatteryArgs {
    /// Sample files (ASCII '0'/'1', whitespace ignored); repeatable
    #[arg(long = "file")]
    files: Vec<String>,
    /// Inline binary sample
    #[arg(long)]
    sample: Option<String>,
    #[arg(long, default_value = "0.01")]
    alpha: String,
    /// Comma-separated block sizes for the block-frequency test
    #[arg(long, default_value = "8,16")]
    block_sizes: String,
    /// Parallel jobs across sample files
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn parse_spec(text: &str) -> Result<SequenceSpec, Error> {
    serde_json::from_str(text).map_err(|e| Error::domain(format!("invalid spec JSON: {e}")))
}

fn rat(text: &str) -> Result<Rational, Error> {
    sequences::parse_rational(text)
}

/// `hyper eval` accepts an optional top-level std(...) wrapper around the
/// core grammar.
fn eval_hyper(text: &str) -> Result<String, Error> {
    let trimmed = text.trim();
    if let Some(inner) = trimmed.strip_prefix("std(").and_then(|s| s.strip_suffix(')')) {
        let x = parse_hyperreal(inner)?;
        return Ok(format_rational(&x.std_part()?));
    }
    Ok(parse_hyperreal(trimmed)?.to_string())
}

fn interval_json(iv: &Interval<Rational>) -> serde_json::Value {
    json!([format_rational(iv.lo()), format_rational(iv.hi())])
}

fn run(cli: &Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Encode { value, lo, hi } => {
            let bits = bisection::encode(&rat(value)?, &rat(lo)?, &rat(hi)?, cli.depth)?;
            if cli.json {
                println!("{}", json!({ "bits": bits.to_string() }));
            } else {
                println!("{bits}");
            }
        }
        Command::Decode { bits, lo, hi } => {
            let bits = DigitString::parse(2, bits)?;
            let chain = interval_chain(rat(lo)?, rat(hi)?, &bits)?;
            let last = chain.last();
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "start": interval_json(chain.start()),
                        "final": interval_json(last),
                        "steps": chain.steps().iter().map(interval_json).collect::<Vec<_>>(),
                    })
                );
            } else {
                println!("[{}, {}]", format_rational(last.lo()), format_rational(last.hi()));
            }
        }
        Command::Value { spec } => {
            let value = parse_spec(spec)?.value_exact();
            if cli.json {
                println!("{}", json!({ "value": format_rational(&value) }));
            } else {
                println!("{}", format_rational(&value));
            }
        }
        Command::Expand { value, base } => {
            let spec = sequences::expand(&rat(value)?, *base)?;
            print_spec(cli.json, &spec);
        }
        Command::Convert { spec, to } => {
            let converted = sequences::change_basis(&parse_spec(spec)?, *to)?;
            print_spec(cli.json, &converted);
        }
        Command::Hyper(cmd) => run_hyper(cli, cmd)?,
        Command::Dedekind(cmd) => run_dedekind(cli, cmd)?,
        Command::Rand(cmd) => run_rand(cli, cmd)?,
    }
    Ok(())
}

fn print_spec(as_json: bool, spec: &SequenceSpec) {
    if as_json {
        println!("{}", serde_json::to_string(spec).expect("spec serializes"));
    } else {
        let pre = spec.prefix(spec.preamble().len()).to_string();
        let per: String = spec
            .period()
            .iter()
            .map(|&d| char::from(b'0' + d))
            .collect();
        println!("base {} preamble \"{}\" period \"{}\"", spec.base(), pre, per);
    }
}

fn run_hyper(cli: &Cli, cmd: &HyperCommand) -> Result<(), Error> {
    match cmd {
        HyperCommand::Eval { expr } => {
            let result = eval_hyper(expr)?;
            if cli.json {
                println!("{}", json!({ "result": result }));
            } else {
                println!("{result}");
            }
        }
        HyperCommand::Classify { expr } => {
            let class = parse_hyperreal(expr)?.classify();
            if cli.json {
                println!("{}", json!({ "class": class.to_string() }));
            } else {
                println!("{class}");
            }
        }
        HyperCommand::Compare { left, right } => {
            let ord = match parse_hyperreal(left)?.compare(&parse_hyperreal(right)?) {
                Ordering::Less => "less",
                Ordering::Equal => "equal",
                Ordering::Greater => "greater",
            };
            if cli.json {
                println!("{}", json!({ "ordering": ord }));
            } else {
                println!("{ord}");
            }
        }
    }
    Ok(())
}

fn run_dedekind(cli: &Cli, cmd: &DedekindCommand) -> Result<(), Error> {
    match cmd {
        DedekindCommand::Classify { lo, hi, spec } => {
            let descriptor = dedekind_set::classify_dedekind_set(
                &parse_hyperreal(lo)?,
                &parse_hyperreal(hi)?,
                &parse_spec(spec)?,
            )?;
            if cli.json {
                println!("{}", descriptor.to_json());
            } else {
                let limit = descriptor
                    .std_limit
                    .as_ref()
                    .map_or("none".to_string(), format_rational);
                println!(
                    "{} cardinality {} std_limit {} contains_all_reals {}",
                    descriptor.case_tag,
                    descriptor.cardinality,
                    limit,
                    descriptor.contains_all_reals
                );
            }
        }
        DedekindCommand::Member { point, lo, hi, spec } => {
            let member = dedekind_set::membership_at_depth(
                &parse_hyperreal(point)?,
                &parse_hyperreal(lo)?,
                &parse_hyperreal(hi)?,
                &parse_spec(spec)?,
                cli.depth,
            )?;
            if cli.json {
                println!("{}", json!({ "member": member, "depth": cli.depth }));
            } else {
                println!("{member}");
            }
        }
    }
    Ok(())
}

fn run_rand(cli: &Cli, cmd: &RandCommand) -> Result<(), Error> {
    match cmd {
        RandCommand::Battery(args) => run_battery(cli, args)?,
        RandCommand::Measure { base, strings } => {
            let texts: Vec<&str> = strings.split(',').filter(|s| !s.is_empty()).collect();
            let set = StringSet::parse(*base, &texts)?;
            let measure = randomness::cylinder_measure(&set);
            if cli.json {
                println!("{}", json!({ "measure": format_rational(&measure) }));
            } else {
                println!("{}", format_rational(&measure));
            }
        }
        RandCommand::VerifyCover { file, target } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Error::domain(format!("cannot read {file}: {e}")))?;
            let cover: NullCoverSpec = serde_json::from_str(&text)
                .map_err(|e| Error::domain(format!("invalid cover JSON: {e}")))?;
            let target = target.as_deref().map(parse_spec).transpose()?;
            let report = randomness::verify_null_cover(&cover, target.as_ref())?;
            if cli.json {
                println!("{}", report.to_json());
            } else {
                println!(
                    "valid {} levels {}{}",
                    report.valid,
                    report.level_measures.len(),
                    report
                        .covered_at
                        .as_ref()
                        .map(|_| format!(" rejects_target {}", report.rejects_target()))
                        .unwrap_or_default()
                );
            }
        }
        RandCommand::Witness { a1, b1, a2, b2, spec } => {
            let witness = randomness::relative_random_witness(
                &rat(a1)?,
                &rat(b1)?,
                &rat(a2)?,
                &rat(b2)?,
                &parse_spec(spec)?,
            )?;
            if cli.json {
                println!("{}", witness.to_json());
            } else {
                println!(
                    "w {} expansions_differ {}",
                    format_rational(&witness.w),
                    witness.expansions_differ
                );
            }
        }
    }
    Ok(())
}

fn parse_sample(text: &str) -> Result<DigitString, Error> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    DigitString::parse(2, &cleaned)
}

fn battery_config(args: &BatteryArgs) -> Result<BatteryConfig, Error> {
    let alpha = Alpha::parse(&args.alpha)?;
    let block_sizes = args
        .block_sizes
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::domain(format!("invalid block size {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BatteryConfig { alpha, block_sizes })
}

fn run_battery(cli: &Cli, args: &BatteryArgs) -> Result<(), Error> {
    let config = battery_config(args)?;
    let mut inputs: Vec<(String, String)> = Vec::new();
    if let Some(sample) = &args.sample {
        inputs.push(("<inline>".into(), sample.clone()));
    }
    for file in &args.files {
        let text = std::fs::read_to_string(file)
            .map_err(|e| Error::domain(format!("cannot read {file}: {e}")))?;
        inputs.push((file.clone(), text));
    }
    if inputs.is_empty() {
        return Err(Error::domain("no sample given: use --sample or --file"));
    }
    let jobs = args.jobs.max(1);
    // independent pure jobs per sample file
    let reports: Vec<Result<(String, randomness::RandomnessReport), Error>> =
        std::thread::scope(|scope| {
            let handles: Vec<_> = inputs
                .chunks(inputs.len().div_ceil(jobs))
                .map(|chunk| {
                    let config = &config;
                    scope.spawn(move || {
                        chunk
                            .iter()
                            .map(|(name, text)| {
                                let sample = parse_sample(text)?;
                                let report = randomness::battery(&sample, config)?;
                                Ok((name.clone(), report))
                            })
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("battery job")).collect()
        });
    let mut failed = false;
    let mut json_out = Vec::new();
    for result in reports {
        let (name, report) = result?;
        if cli.json {
            json_out.push(json!({ "input": name, "report": report }));
        } else {
            println!(
                "{name}: {} ({} tests, alpha {})",
                if report.all_pass { "pass" } else { "REJECT" },
                report.tests.len(),
                report.alpha
            );
            for t in &report.tests {
                println!("  {}: {} (statistic {}, threshold {})", t.name, if t.pass { "pass" } else { "fail" }, t.statistic, t.threshold);
            }
        }
        failed |= !report.all_pass;
    }
    if cli.json {
        println!("{}", serde_json::Value::Array(json_out));
    }
    let _ = failed; // rejection is a result, not an error: exit 0 either way
    Ok(())
}
