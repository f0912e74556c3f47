mod input;
mod render;

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use serde_json::{json, Value};

use gyrogroup::catalog::standard_catalog;
use gyrogroup::io::serialize_table_as;
use gyrogroup::iso::{enumerate_automorphisms_capped, find_isomorphism_capped};
use gyrogroup::theorems::{
    check_corollary4, check_functor, check_theorem1, check_theorem2, check_theorem3, ReportError,
};
use gyrogroup::{
    associated_gyro, build_gyrogroup, is_gyrocommutative, parse_preset_list, parse_table_any, screen,
    validate_group, verify_gyrogroup, Morphism, OpTable, ScreenOptions, SearchLimits, Subject,
    TableFormat, TheoremReport, TheoremTag,
};

use input::{Failure, Input, Loader, Source, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};
use render::{combine, report_exit_code, Format, Sink};

#[derive(Debug, Parser)]
#[command(name = "gyro", version)]
#[command(about = "Gyrogroups a⊙b = a²ba⁻¹ of finite groups: construction, axiom checks and isomorphism search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Args)]
struct Common {
    /// Built-in group, e.g. dihedral:4 or direct_product:4,2 (repeatable)
    #[arg(long = "preset", value_name = "NAME:ARGS")]
    presets: Vec<String>,
    /// Table file in text or JSON form, "-" for stdin (repeatable)
    #[arg(long = "in", value_name = "PATH")]
    inputs: Vec<PathBuf>,
    /// Permutation generator file; the generated group is used (repeatable)
    #[arg(long = "gens", value_name = "PATH")]
    gens: Vec<PathBuf>,
    /// Write output here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest order for isomorphism and automorphism searches. For
    /// `screen`, filters the built-in catalog instead.
    #[arg(long, value_name = "N", value_parser = positive)]
    max_order: Option<usize>,
    /// Largest group generated from a --gens file
    #[arg(long, value_name = "N", value_parser = positive, default_value_t = 4096)]
    cap: usize,
    /// Worker threads (default: all cores for screen, 1 otherwise)
    #[arg(long, value_name = "K", value_parser = positive)]
    jobs: Option<usize>,
    /// Timing and search statistics on stderr
    #[arg(short, long)]
    verbose: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the ⊙ table of a group
    Gyro {
        #[command(flatten)]
        common: Common,
    },
    /// Check the gyrogroup axioms on a table
    Verify {
        /// Check the ⊙ table of the input group rather than the table itself
        #[arg(long)]
        associated: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Whether the ⊙ operation of a group is gyrocommutative
    Gyrocomm {
        #[command(flatten)]
        common: Common,
    },
    /// First isomorphism between two tables, or none
    Iso {
        /// Compare the ⊙ tables of the two groups
        #[arg(long)]
        gyro: bool,
        #[command(flatten)]
        common: Common,
    },
    /// All automorphisms of a table
    Aut {
        /// Use the ⊙ table of the group
        #[arg(long)]
        gyro: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run one check: 1 gyrogroup criterion, 2 gyrocommutativity, 3 isomorphism
    /// transfer (two inputs), 4 automorphism equality
    Theorem {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        number: u8,
        #[command(flatten)]
        common: Common,
    },
    /// Check that a group homomorphism also preserves ⊙
    Functor {
        /// Images of 0, 1, ..., separated by spaces or commas
        #[arg(long, value_name = "IMAGES")]
        map: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run every applicable check over a set of groups
    Screen {
        /// Include the built-in catalog (filtered by --max-order)
        #[arg(long)]
        builtin: bool,
        /// Comma-separated preset list
        #[arg(long = "presets", value_name = "LIST")]
        preset_list: Option<String>,
        /// Every file in this directory, in name order
        #[arg(long, value_name = "DIR")]
        dir: Option<PathBuf>,
        /// Skip pairs whose order is divisible by 3
        #[arg(long)]
        no_explore: bool,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Gyro { common }
            | Command::Verify { common, .. }
            | Command::Gyrocomm { common }
            | Command::Iso { common, .. }
            | Command::Aut { common, .. }
            | Command::Theorem { common, .. }
            | Command::Functor { common, .. }
            | Command::Screen { common, .. } => common,
        }
    }
}

/// `--preset`, `--in` and `--gens` merged in command-line order.
fn ordered_sources(common: &Common, m: &ArgMatches) -> Vec<Source> {
    let mut tagged: Vec<(usize, Source)> = Vec::new();
    let indices = |id: &str| m.indices_of(id).map(Iterator::collect::<Vec<_>>).unwrap_or_default();
    tagged.extend(indices("presets").into_iter().zip(&common.presets).map(|(i, s)| (i, Source::Preset(s.clone()))));
    tagged.extend(indices("inputs").into_iter().zip(&common.inputs).map(|(i, p)| (i, Source::File(p.clone()))));
    tagged.extend(indices("gens").into_iter().zip(&common.gens).map(|(i, p)| (i, Source::Gens(p.clone()))));
    tagged.sort_by_key(|(i, _)| *i);
    tagged.into_iter().map(|(_, s)| s).collect()
}

struct Outcome {
    output: String,
    code: i32,
}

struct Ctx<'a> {
    common: &'a Common,
    sources: Vec<Source>,
}

impl Ctx<'_> {
    fn limits(&self) -> SearchLimits {
        match self.common.max_order {
            Some(n) => SearchLimits { iso_max_order: n, aut_max_order: n },
            None => SearchLimits::default(),
        }
    }

    fn inputs(&self, expected: Option<usize>) -> Result<Vec<Input>, Failure> {
        let got = self.sources.len();
        match expected {
            Some(k) if got != k => {
                return Err(Failure::Usage(format!("expected {k} input(s), got {got}")));
            }
            None if got == 0 => return Err(Failure::Usage("no input given".into())),
            _ => {}
        }
        Loader::new(self.common.cap).load_all(&self.sources)
    }

    fn groups(&self, expected: Option<usize>) -> Result<Vec<Subject>, Failure> {
        self.inputs(expected)?
            .into_iter()
            .map(|i| i.into_group().map(|(name, g)| Subject::new(name, g)))
            .collect()
    }

    fn verbose(&self, msg: impl FnOnce() -> String) {
        if self.common.verbose {
            eprintln!("gyro: {}", msg());
        }
    }
}

fn labels(t: &OpTable, ids: &[usize]) -> Vec<String> {
    ids.iter().map(|&x| t.label(x)).collect()
}

fn cmd_gyro(ctx: &Ctx) -> Result<Outcome, Failure> {
    let s = ctx.groups(Some(1))?.remove(0);
    let format = match ctx.common.format {
        Format::Text => TableFormat::Text,
        Format::Structured => TableFormat::Structured,
    };
    Ok(Outcome { output: serialize_table_as(&associated_gyro(&s.group), format), code: EXIT_OK })
}

fn cmd_verify(ctx: &Ctx, associated: bool) -> Result<Outcome, Failure> {
    let input = ctx.inputs(Some(1))?.remove(0);
    let (name, table) = if associated {
        let (name, g) = input.into_group()?;
        (name, associated_gyro(&g))
    } else {
        (input.name, input.table)
    };
    let rep = verify_gyrogroup(&table);
    let failures: Vec<Value> = rep
        .failures
        .iter()
        .map(|f| json!({ "axiom": f.axiom, "witness": labels(&table, &f.witness) }))
        .collect();
    let record = json!({
        "subject": name,
        "operation": if associated { "gyro" } else { "table" },
        "passed": rep.passed,
        "failures": failures,
        "unchecked": rep.unchecked,
        "identity": rep.identity.map(|e| table.label(e)),
        "nontrivial_gyrations": rep.nontrivial_gyrations,
    });
    let mut sink = Sink::new(ctx.common.format);
    sink.record(&record);
    Ok(Outcome { output: sink.text, code: if rep.passed { EXIT_OK } else { EXIT_NEGATIVE } })
}

fn cmd_gyrocomm(ctx: &Ctx) -> Result<Outcome, Failure> {
    let s = ctx.groups(Some(1))?.remove(0);
    let gyro = build_gyrogroup(&s.group)?;
    let r = is_gyrocommutative(&gyro);
    let record = json!({
        "subject": s.name,
        "gyrocommutative": r.holds(),
        "commutative": s.group.is_abelian(),
        "witness": r.witness().map(|w| labels(s.group.table(), w)),
    });
    let mut sink = Sink::new(ctx.common.format);
    sink.record(&record);
    Ok(Outcome { output: sink.text, code: if r.holds() { EXIT_OK } else { EXIT_NEGATIVE } })
}

fn tables(ctx: &Ctx, expected: usize, gyro: bool) -> Result<Vec<Input>, Failure> {
    let inputs = ctx.inputs(Some(expected))?;
    if !gyro {
        return Ok(inputs);
    }
    inputs
        .into_iter()
        .map(|i| {
            let (name, g) = i.into_group()?;
            Ok(Input { name, table: associated_gyro(&g) })
        })
        .collect()
}

fn cmd_iso(ctx: &Ctx, gyro: bool) -> Result<Outcome, Failure> {
    let t = tables(ctx, 2, gyro)?;
    let start = Instant::now();
    let (found, stats) = find_isomorphism_capped(&t[0].table, &t[1].table, &ctx.limits())?;
    ctx.verbose(|| format!("search: {} nodes, {} prunes, {:?}", stats.nodes, stats.prunes, start.elapsed()));
    let record = json!({
        "subjects": [t[0].name, t[1].name],
        "operation": if gyro { "gyro" } else { "table" },
        "isomorphic": found.is_some(),
        "isomorphism": match &found {
            Some(f) => json!(f.images()),
            None => json!("none"),
        },
        "stats": stats,
    });
    let mut sink = Sink::new(ctx.common.format);
    sink.record(&record);
    Ok(Outcome { output: sink.text, code: if found.is_some() { EXIT_OK } else { EXIT_NEGATIVE } })
}

fn cmd_aut(ctx: &Ctx, gyro: bool) -> Result<Outcome, Failure> {
    let t = tables(ctx, 1, gyro)?.remove(0);
    let start = Instant::now();
    let (auts, stats) = enumerate_automorphisms_capped(&t.table, &ctx.limits())?;
    ctx.verbose(|| format!("search: {} nodes, {} prunes, {:?}", stats.nodes, stats.prunes, start.elapsed()));
    let maps: Vec<&[usize]> = auts.iter().map(Morphism::images).collect();
    let record = json!({
        "subject": t.name,
        "operation": if gyro { "gyro" } else { "table" },
        "count": auts.len(),
        "automorphisms": maps,
        "stats": stats,
    });
    let mut sink = Sink::new(ctx.common.format);
    sink.record(&record);
    Ok(Outcome { output: sink.text, code: EXIT_OK })
}

fn emit_reports(ctx: &Ctx, reports: &[TheoremReport]) -> Outcome {
    let mut sink = Sink::new(ctx.common.format);
    for r in reports {
        sink.report(r);
    }
    Outcome { output: sink.text, code: combine(reports.iter().map(report_exit_code)) }
}

fn names(subjects: &[&Subject]) -> Vec<String> {
    subjects.iter().map(|s| s.name.clone()).collect()
}

fn cmd_theorem(ctx: &Ctx, number: u8) -> Result<Outcome, Failure> {
    let limits = ctx.limits();
    let reports: Vec<TheoremReport> = match number {
        1 => ctx.groups(None)?.iter().map(check_theorem1).collect(),
        2 => ctx
            .groups(None)?
            .iter()
            .map(|s| {
                check_theorem2(s).unwrap_or_else(|e| TheoremReport::failed(TheoremTag::Theorem2, names(&[s]), &e))
            })
            .collect(),
        3 => {
            let g = ctx.groups(Some(2))?;
            let rep = check_theorem3(&g[0], &g[1], &limits)
                .unwrap_or_else(|e| TheoremReport::failed(TheoremTag::Theorem3, names(&[&g[0], &g[1]]), &e));
            vec![rep]
        }
        _ => ctx
            .groups(None)?
            .iter()
            .map(|s| {
                check_corollary4(s, &limits)
                    .unwrap_or_else(|e| TheoremReport::failed(TheoremTag::Corollary4, names(&[s]), &e))
            })
            .collect(),
    };
    Ok(emit_reports(ctx, &reports))
}

fn parse_map(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Failure::Usage(format!("--map: {t:?} is not an element id"))))
        .collect()
}

fn cmd_functor(ctx: &Ctx, map: &str) -> Result<Outcome, Failure> {
    let g = ctx.groups(Some(2))?;
    let f = Morphism::new(parse_map(map)?, g[1].group.order())?;
    if f.domain_size() != g[0].group.order() {
        return Err(Failure::Usage(format!(
            "--map has {} images but {} has order {}",
            f.domain_size(),
            g[0].name,
            g[0].group.order()
        )));
    }
    let rep = check_functor(&f, &g[0], &g[1])
        .unwrap_or_else(|e| TheoremReport::failed(TheoremTag::Functor, names(&[&g[0], &g[1]]), &e));
    Ok(emit_reports(ctx, &[rep]))
}

fn input_record(name: String, kind: &str, message: String) -> Box<TheoremReport> {
    Box::new(TheoremReport {
        theorem: TheoremTag::Input,
        subjects: vec![name],
        hypothesis: true,
        predicate: None,
        brute_force: None,
        agreement: None,
        witnesses: Vec::new(),
        details: Default::default(),
        stats: None,
        error: Some(ReportError { kind: kind.to_string(), message }),
    })
}

fn load_dir(dir: &PathBuf) -> Result<Vec<Result<Subject, Box<TheoremReport>>>, Failure> {
    let io = |e: std::io::Error| Failure::Io { path: dir.display().to_string(), message: e.to_string() };
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io)?;
    paths.retain(|p| p.is_file());
    paths.sort();
    Ok(paths
        .into_iter()
        .map(|p| {
            let name = p.display().to_string();
            let table = fs::read_to_string(&p)
                .map_err(|e| input_record(name.clone(), "IoError", e.to_string()))?;
            parse_table_any(&table)
                .and_then(validate_group)
                .map(|g| Subject::new(name.clone(), g))
                .map_err(|e| input_record(name, e.kind(), e.to_string()))
        })
        .collect())
}

fn cmd_screen(
    ctx: &Ctx,
    builtin: bool,
    preset_list: Option<&str>,
    dir: Option<&PathBuf>,
    explore: bool,
) -> Result<Outcome, Failure> {
    let mut subjects: Vec<Subject> = Vec::new();
    let mut input_errors: Vec<TheoremReport> = Vec::new();
    if builtin {
        for p in standard_catalog() {
            if ctx.common.max_order.is_some_and(|m| p.order().unwrap_or(usize::MAX) > m) {
                continue;
            }
            subjects.push(Subject::from_preset(&p)?);
        }
    }
    if let Some(list) = preset_list {
        for p in parse_preset_list(list)? {
            subjects.push(Subject::from_preset(&p).map_err(Failure::from)?);
        }
    }
    if !ctx.sources.is_empty() {
        subjects.extend(ctx.groups(None)?);
    }
    if let Some(dir) = dir {
        for item in load_dir(dir)? {
            match item {
                Ok(s) => subjects.push(s),
                Err(rep) => input_errors.push(*rep),
            }
        }
    }
    if subjects.is_empty() && input_errors.is_empty() {
        return Err(Failure::Usage("nothing to screen: give --builtin, --presets, --preset, --in or --dir".into()));
    }

    let start = Instant::now();
    let options = ScreenOptions { explore, ..ScreenOptions::default() };
    let reports = screen(&subjects, &options);
    ctx.verbose(|| format!("screened {} groups in {:?}", subjects.len(), start.elapsed()));

    let mut sink = Sink::new(ctx.common.format);
    let all: Vec<&TheoremReport> = input_errors.iter().chain(&reports).collect();
    for r in &all {
        sink.report(r);
    }
    let exploratory = |r: &TheoremReport| r.theorem == TheoremTag::Exploration;
    let count = |f: &dyn Fn(&TheoremReport) -> bool| all.iter().filter(|r| f(r)).count();
    let disagreements = count(&|r| r.agreement == Some(false));
    sink.record(&json!({
        "summary": {
            "records": all.len(),
            "agreements": count(&|r| r.agreement == Some(true)),
            "disagreements": disagreements,
            "hypothesis_failures": count(&|r| !r.hypothesis && r.error.is_none() && !exploratory(r)),
            "errors": count(&|r| r.error.is_some()),
            "unasserted": count(&|r| r.error.is_none() && exploratory(r)),
        }
    }));
    Ok(Outcome { output: sink.text, code: if disagreements == 0 { EXIT_OK } else { EXIT_NEGATIVE } })
}

fn run(cli: &Cli, matches: &ArgMatches) -> Result<Outcome, Failure> {
    let common = cli.command.common();
    let sub = matches.subcommand().map(|(_, m)| m).expect("a subcommand is required");
    let ctx = Ctx { common, sources: ordered_sources(common, sub) };

    let jobs = match (&cli.command, common.jobs) {
        (_, Some(k)) => Some(k),
        (Command::Screen { .. }, None) => None,
        (_, None) => Some(1),
    };
    if let Some(k) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| Failure::Usage(format!("cannot start {k} worker threads: {e}")))?;
    }

    match &cli.command {
        Command::Gyro { .. } => cmd_gyro(&ctx),
        Command::Verify { associated, .. } => cmd_verify(&ctx, *associated),
        Command::Gyrocomm { .. } => cmd_gyrocomm(&ctx),
        Command::Iso { gyro, .. } => cmd_iso(&ctx, *gyro),
        Command::Aut { gyro, .. } => cmd_aut(&ctx, *gyro),
        Command::Theorem { number, .. } => cmd_theorem(&ctx, *number),
        Command::Functor { map, .. } => cmd_functor(&ctx, map),
        Command::Screen { builtin, preset_list, dir, no_explore, .. } => {
            cmd_screen(&ctx, *builtin, preset_list.as_deref(), dir.as_ref(), !no_explore)
        }
    }
}

fn main() {
    let matches = Cli::command().get_matches();
    let cli = Cli::from_arg_matches(&matches).unwrap_or_else(|e| e.exit());

    let code = match run(&cli, &matches) {
        Ok(outcome) => {
            let written = match &cli.command.common().out {
                Some(path) => fs::write(path, &outcome.output)
                    .map_err(|e| Failure::Io { path: path.display().to_string(), message: e.to_string() }),
                None => {
                    print!("{}", outcome.output);
                    Ok(())
                }
            };
            match written {
                Ok(()) => outcome.code,
                Err(f) => {
                    eprintln!("gyro: {}: {f}", f.kind());
                    EXIT_INPUT
                }
            }
        }
        Err(f) => {
            eprintln!("gyro: {}: {f}", f.kind());
            f.exit_code()
        }
    };
    std::process::exit(code);
}
