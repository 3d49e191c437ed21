//! `groupoid`: command-line front end for the groupoid toolkit.
//!
//! Exit codes: 0 when the property holds or a witness is found, 1 when it fails or
//! nothing is found, 2 on usage, parse, or capacity errors.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use groupoid::extension::enumerate_rm_extensions;
use groupoid::fixtures;
use groupoid::identities::{
    is_associative, is_cancellative, is_commutative, is_idempotent, is_left_cancellative, is_medial, is_quasigroup,
    is_right_cancellative, is_right_modular, is_union_of_groups, PropertyReport,
};
use groupoid::inflation::{candidate_subgroupoids, find_gen_inflation, find_retraction, RetractionWitness};
use groupoid::morphisms::{canonical_form, is_isomorphic};
use groupoid::search::golden::{compare_golden, format_golden, parse_golden};
use groupoid::search::harness::verify_paper;
use groupoid::search::{hunt_open_question, EnumerationConstraints, Enumerator, HuntBounds, HuntMode, Requirement};
use groupoid::{ElementSet, Error, Magma};

#[derive(Parser)]
#[command(
    name = "groupoid",
    version,
    about = "Finite groupoid toolkit: identities, isomorphism, inflations, enumeration"
)]
struct Cli {
    /// Worker threads for parallel searches (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check identities of a table, one line per property.
    Check {
        /// Table file, or @NAME for a bundled fixture.
        #[arg(long)]
        file: String,
        /// Properties to check (default: all).
        #[arg(long = "property", value_name = "NAME", value_delimiter = ',')]
        properties: Vec<String>,
    },
    /// Print an isomorphism between two tables, or `not isomorphic`.
    Iso {
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
    },
    /// Print the canonical (least relabeled) table.
    Canon {
        #[arg(long)]
        file: String,
    },
    /// Search for an inflation (retraction) or generalised inflation over a subgroupoid.
    Inflation {
        #[arg(long)]
        file: String,
        /// Comma-separated elements of the subgroupoid, or `auto` to try every candidate.
        #[arg(long, default_value = "auto")]
        sub: String,
        /// Search for a generalised inflation instead of an inflation.
        #[arg(long)]
        generalised: bool,
    },
    /// Print every right modular one-point extension of a right modular table.
    Extend {
        #[arg(long)]
        file: String,
        /// Keep one table per isomorphism class.
        #[arg(long)]
        dedupe: bool,
    },
    /// Enumerate tables under identity constraints.
    Enumerate(EnumerateArgs),
    /// Run every verification harness and print a claim-by-claim table.
    VerifyPaper {
        /// Directory for violating instances, written as table files.
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Compare the measured counts against this golden file.
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Write the measured counts to this golden file.
        #[arg(long)]
        write_golden: Option<PathBuf>,
    },
    /// Bounded search for generalised inflations that are not inflations.
    Hunt {
        /// right-modular or commutative-semigroup.
        #[arg(long, default_value = "right-modular")]
        mode: String,
        /// Largest subgroupoid order (default depends on the mode).
        #[arg(long)]
        max_sub: Option<usize>,
        /// Largest number of elements outside the subgroupoid (default depends on the mode).
        #[arg(long)]
        max_outside: Option<usize>,
        /// Number of counterexamples to print in full.
        #[arg(long, default_value_t = 3)]
        show: usize,
        /// Directory for all counterexamples, written as table files.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Bundled fixtures.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    order: usize,
    /// Required property (right-modular, idempotent, associative, non-associative,
    /// commutative, cancellative); repeatable.
    #[arg(long = "require", value_name = "NAME", value_delimiter = ',')]
    require: Vec<String>,
    /// Keep this table fixed on the leading elements.
    #[arg(long)]
    extend: Option<String>,
    /// Restrict free cells to the first K elements.
    #[arg(long, value_name = "K")]
    values: Option<usize>,
    /// Print only the number of tables.
    #[arg(long)]
    count: bool,
    /// Keep one table per isomorphism class.
    #[arg(long)]
    dedupe: bool,
}

#[derive(Subcommand)]
enum FixtureAction {
    /// List the bundled fixture names.
    List,
    /// Write every fixture to DIR/NAME.tbl.
    Export {
        #[arg(long)]
        output_dir: PathBuf,
    },
}

/// Failure modes mapped onto exit codes.
enum Failure {
    /// Exit 1: the property fails or nothing was found.
    Negative,
    /// Exit 2: usage, parse, I/O, or capacity error.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn negative_unless(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn load(source: &str) -> Result<Magma, Failure> {
    if let Some(name) = source.strip_prefix('@') {
        return fixtures::by_name(name).ok_or_else(|| {
            Failure::Usage(format!(
                "unknown fixture {name:?} (available: {})",
                fixtures::NAMES.join(", ")
            ))
        });
    }
    let text = fs::read_to_string(source).map_err(|e| Failure::Usage(format!("{source}: {e}")))?;
    Magma::parse_table(&text).map_err(|e| Failure::Usage(format!("{source}: {e}")))
}

fn write_file(path: &Path, text: &str) -> Outcome {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

const PROPERTIES: [&str; 10] = [
    "right-modular",
    "medial",
    "associative",
    "commutative",
    "idempotent",
    "right-cancellative",
    "left-cancellative",
    "cancellative",
    "quasigroup",
    "union-of-groups",
];

fn check_property(m: &Magma, name: &str) -> Result<PropertyReport, Failure> {
    Ok(match name {
        "right-modular" => is_right_modular(m),
        "medial" => is_medial(m),
        "associative" => is_associative(m),
        "commutative" => is_commutative(m),
        "idempotent" => is_idempotent(m),
        "right-cancellative" => is_right_cancellative(m),
        "left-cancellative" => is_left_cancellative(m),
        "cancellative" => is_cancellative(m),
        "quasigroup" => is_quasigroup(m),
        "union-of-groups" => is_union_of_groups(m)?,
        _ => {
            return Err(Failure::Usage(format!(
                "unknown property {name:?} (known: {})",
                PROPERTIES.join(", ")
            )))
        }
    })
}

fn cmd_check(file: &str, properties: &[String]) -> Outcome {
    let m = load(file)?;
    let names: Vec<&str> = if properties.is_empty() {
        PROPERTIES.to_vec()
    } else {
        properties.iter().map(String::as_str).collect()
    };
    let reports = names
        .iter()
        .map(|n| check_property(&m, n))
        .collect::<Result<Vec<_>, _>>()?;
    let mut all = true;
    for (name, r) in names.iter().zip(&reports) {
        println!("{name}: {}", r.describe(&m));
        all &= r.holds;
    }
    negative_unless(all)
}

fn cmd_iso(first: &str, second: &str) -> Outcome {
    let (a, b) = (load(first)?, load(second)?);
    match is_isomorphic(&a, &b)? {
        Some(p) => {
            let pairs: Vec<String> = (0..a.order())
                .map(|x| format!("{} -> {}", a.name(x), b.name(p.apply(x))))
                .collect();
            println!("{}", pairs.join(", "));
            Ok(())
        }
        None => {
            println!("not isomorphic");
            Err(Failure::Negative)
        }
    }
}

fn cmd_canon(file: &str) -> Outcome {
    print!("{}", canonical_form(&load(file)?)?.format_table());
    Ok(())
}

fn format_retraction(g: &Magma, w: &RetractionWitness) -> String {
    let mut s = String::from("retraction:\n");
    for (x, &u) in w.retraction.iter().enumerate() {
        s.push_str(&format!("{} -> {}\n", g.name(x), g.name(u)));
    }
    s
}

fn cmd_inflation(file: &str, sub: &str, generalised: bool) -> Outcome {
    let g = load(file)?;
    let subs: Vec<ElementSet> = if sub == "auto" {
        candidate_subgroupoids(&g)
    } else {
        let s = g.parse_set(sub)?;
        g.check_closed(&s)?;
        vec![s]
    };
    for s in subs {
        let found = if generalised {
            find_gen_inflation(&g, &s)?.map(|w| w.format(&g))
        } else {
            find_retraction(&g, &s)?.map(|w| format_retraction(&g, &w))
        };
        if let Some(text) = found {
            println!("subgroupoid {}", g.format_set(&s));
            print!("{text}");
            return Ok(());
        }
    }
    println!("none");
    Err(Failure::Negative)
}

fn cmd_extend(file: &str, dedupe: bool) -> Outcome {
    let g = load(file)?;
    let found = enumerate_rm_extensions(&g, dedupe)?;
    let tables: Vec<String> = found.iter().map(|(_, m)| m.format_table()).collect();
    print!("{}", tables.join("\n"));
    negative_unless(!found.is_empty())
}

fn cmd_enumerate(args: &EnumerateArgs) -> Outcome {
    let mut c = EnumerationConstraints::new(args.order);
    for r in &args.require {
        c = c.require(r.parse::<Requirement>()?);
    }
    if let Some(base) = &args.extend {
        c = c.extending(&load(base)?)?;
    }
    if let Some(k) = args.values {
        if k == 0 || k > args.order {
            return Err(Failure::Usage(format!("--values must be in 1..={}", args.order)));
        }
        c = c.with_free_values(ElementSet::prefix(args.order, k));
    }
    let e = Enumerator::new(&c)?;
    if args.count && !args.dedupe {
        let n = e.count();
        println!("{n}");
        return negative_unless(n > 0);
    }
    let mut tables = e.collect();
    if args.dedupe {
        tables = if tables.is_empty() {
            tables
        } else {
            groupoid::search::harness::iso_classes(&tables)
        };
    }
    if args.count {
        println!("{}", tables.len());
    } else {
        let text: Vec<String> = tables.iter().map(Magma::format_table).collect();
        print!("{}", text.join("\n"));
    }
    negative_unless(!tables.is_empty())
}

fn cmd_verify_paper(output_dir: Option<&Path>, golden: Option<&Path>, write: Option<&Path>) -> Outcome {
    let start = Instant::now();
    let (claims, reports) = verify_paper();
    let width = claims.iter().map(|c| c.id.len()).max().unwrap_or(0);
    for c in &claims {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let detail = if c.detail.is_empty() {
            String::new()
        } else {
            format!(" ({})", c.detail)
        };
        println!("{status}  {:width$}  {}{detail}", c.id, c.claim);
    }
    let mut counts = BTreeMap::new();
    for r in &reports {
        counts.extend(r.pinned_counts());
        eprintln!("{}: {:.2?}", r.name, r.elapsed);
    }
    eprintln!("total: {:.2?}", start.elapsed());
    if let Some(dir) = output_dir {
        for r in &reports {
            for path in r
                .dump_violations(dir)
                .map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?
            {
                println!("violation written to {}", path.display());
            }
        }
    }
    if let Some(path) = write {
        write_file(
            path,
            &format_golden(
                &counts,
                &format!("groupoid verify-paper --write-golden {}", path.display()),
            ),
        )?;
    }
    let mut golden_ok = true;
    if let Some(path) = golden {
        let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let expected = parse_golden(&text)?;
        let diffs = compare_golden(&expected, &counts);
        for d in &diffs {
            println!("golden mismatch: {d}");
        }
        golden_ok = diffs.is_empty();
    }
    let passed = claims.iter().filter(|c| c.passed).count();
    println!("{passed}/{} claims pass", claims.len());
    negative_unless(passed == claims.len() && golden_ok)
}

fn cmd_hunt(
    mode: &str,
    max_sub: Option<usize>,
    max_outside: Option<usize>,
    show: usize,
    output_dir: Option<&Path>,
) -> Outcome {
    let mode: HuntMode = mode.parse()?;
    let default = HuntBounds::default_for(mode);
    let bounds = HuntBounds {
        max_sub: max_sub.unwrap_or(default.max_sub),
        max_outside: max_outside.unwrap_or(default.max_outside),
    };
    let report = hunt_open_question(bounds, mode)?;
    print!("{}", report.certificate(show));
    eprintln!("elapsed: {:.2?}", report.elapsed);
    if let Some(dir) = output_dir {
        for (i, c) in report.counterexamples.iter().enumerate() {
            let text = format!("# subgroupoid {}\n{}", c.g.format_set(&c.sub), c.g.format_table());
            write_file(&dir.join(format!("hunt-{mode}-{i}.tbl")), &text)?;
        }
    }
    negative_unless(!report.counterexamples.is_empty())
}

fn cmd_fixtures(action: &FixtureAction) -> Outcome {
    match action {
        FixtureAction::List => {
            for name in fixtures::NAMES {
                println!("{name}");
            }
        }
        FixtureAction::Export { output_dir } => {
            for (name, m) in fixtures::all() {
                let path = output_dir.join(format!("{name}.tbl"));
                write_file(&path, &m.format_table())?;
                println!("{}", path.display());
            }
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Check { file, properties } => cmd_check(file, properties),
        Command::Iso { first, second } => cmd_iso(first, second),
        Command::Canon { file } => cmd_canon(file),
        Command::Inflation { file, sub, generalised } => cmd_inflation(file, sub, *generalised),
        Command::Extend { file, dedupe } => cmd_extend(file, *dedupe),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::VerifyPaper {
            output_dir,
            golden,
            write_golden,
        } => cmd_verify_paper(output_dir.as_deref(), golden.as_deref(), write_golden.as_deref()),
        Command::Hunt {
            mode,
            max_sub,
            max_outside,
            show,
            output_dir,
        } => cmd_hunt(mode, *max_sub, *max_outside, *show, output_dir.as_deref()),
        Command::Fixtures { action } => cmd_fixtures(action),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if n == 0 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
