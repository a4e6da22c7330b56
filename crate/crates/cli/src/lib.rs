//! Command-line front end: argument parsing, rendering and the result cache.

mod cache;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use cache::Cache;
use sact_core::factors::{class_factors, standard_factors};
use sact_core::lifting::{FreeReport, SelfNormalReport};
use sact_core::{
    cyclic_factor, decide_lift, enumerate_weak_classes, free_action_analysis, max_order_bound, obstruction_report,
    self_normalizing, weakly_generates, CyclicDataSet, DataSetKind, Error, Family, GroupDataSet, GroupSpec,
    InvolutionDescent, LiftVerdict, Perm, SearchBudget,
};

#[derive(Parser, Debug)]
#[command(
    name = "sact",
    version,
    about = "Alternating and symmetric group actions on closed surfaces"
)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", env = "SACT_FORMAT", global = true)]
    format: Format,
    /// Directory of the result cache; caching is off when unset.
    #[arg(long, env = "SACT_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, env = "SACT_BUDGET_NODES", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget_nodes: Option<u64>,
    #[arg(long, env = "SACT_BUDGET_SECONDS", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget_seconds: Option<u64>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, env = "SACT_JOBS", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weak conjugacy classes at a genus with their standard cyclic factors.
    Classify {
        #[arg(long, env = "SACT_GENUS")]
        genus: u64,
        #[command(flatten)]
        groups: GroupChoice,
    },
    /// Whether two cyclic data sets have conjugates generating the group.
    Weakgen {
        #[arg(long, env = "SACT_GROUP")]
        group: GroupSpec,
        /// Cyclic data set of the first generator.
        #[arg(long = "f")]
        d_f: CyclicDataSet,
        /// Cyclic data set of the second generator.
        #[arg(long = "g")]
        d_g: CyclicDataSet,
    },
    /// Cyclic factors of a data set.
    Factor {
        #[arg(long, env = "SACT_GROUP")]
        group: GroupSpec,
        data_set: String,
        /// Only this element; otherwise the standard pair and every class.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Lifting verdict for an alternating data set and an involution descent.
    Lift {
        data_set: String,
        /// Degree-2 cyclic data set of the involution on the quotient.
        #[arg(long, required_unless_present = "self_normalizing")]
        d: Option<CyclicDataSet>,
        /// Permutation of the cone points, e.g. `(3 4)`.
        #[arg(long, default_value = "()")]
        pi: String,
        /// Run every admissible descent instead.
        #[arg(long)]
        self_normalizing: bool,
    },
    /// Free alternating actions and their symmetric extensions.
    Free {
        #[arg(long)]
        n: usize,
        #[arg(long, env = "SACT_GENUS")]
        genus: u64,
        /// Search for a `(1; 2, 2)` extension when `k = 1`.
        #[arg(long)]
        search: bool,
    },
    /// Irreducible and hyperelliptic elements among all weak classes.
    Obstructions {
        #[arg(long, env = "SACT_GENUS")]
        genus: u64,
        #[command(flatten)]
        groups: GroupChoice,
    },
    /// Inspect or clear the result cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(clap::Args, Debug)]
#[group(required = true, multiple = false)]
struct GroupChoice {
    #[arg(long, env = "SACT_GROUP")]
    group: Option<GroupSpec>,
    /// Every `A_n` and `Σ_n` (n >= 4) within the Hurwitz bound.
    #[arg(long)]
    all: bool,
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    List,
    Clear,
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return e.exit_code() as u8;
        }
    };
    match run(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(Error::BudgetExhausted { .. }) => 3,
        Some(Error::NegativeMultiplicity { .. } | Error::NonIntegral(_) | Error::Internal(_)) => 4,
        Some(_) => 2,
        None => 4,
    }
}

fn budget(cli: &Cli) -> SearchBudget {
    let mut b = SearchBudget::default();
    if let Some(n) = cli.budget_nodes {
        b.max_nodes = n;
    }
    if let Some(s) = cli.budget_seconds {
        b.max_seconds = Some(s);
    }
    b
}

fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    if let Some(j) = cli.jobs {
        // a second in-process run finds the pool already built
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j as usize).build_global();
    }
    let cache = Cache::new(cli.cache_dir.clone());
    let budget = budget(cli);
    match &cli.command {
        Command::Classify { genus, groups } => classify(out, err, cli.format, &cache, &budget, *genus, groups),
        Command::Weakgen { group, d_f, d_g } => {
            let w = weakly_generates(d_f, d_g, group, &budget)?;
            let json = serde_json::json!({
                "group": group.to_string(),
                "f": d_f.to_string(),
                "g": d_g.to_string(),
                "weakly_generates": w.is_some(),
                "witness": w.as_ref().map(|w| serde_json::json!({
                    "data_set": w.data_set.to_string(),
                    "sigma": w.sigma.to_string(),
                    "tau": w.tau.to_string(),
                })),
            });
            let text = match &w {
                Some(w) => format!("yes\ndata set {}\nsigma {}\ntau {}\n", w.data_set, w.sigma, w.tau),
                None => "no\n".to_string(),
            };
            let rows = vec![vec![
                group.to_string(),
                d_f.to_string(),
                d_g.to_string(),
                w.is_some().to_string(),
                w.as_ref().map(|w| w.data_set.to_string()).unwrap_or_default(),
            ]];
            emit(
                out,
                cli.format,
                &text,
                &json,
                &["group", "f", "g", "weakly_generates", "witness"],
                &rows,
            )?;
            Ok(0)
        }
        Command::Factor { group, data_set, sigma } => factor(out, cli.format, group, data_set, sigma.as_deref()),
        Command::Lift {
            data_set,
            d,
            pi,
            self_normalizing: sn,
        } => lift(out, cli.format, &budget, data_set, d.as_ref(), pi, *sn),
        Command::Free { n, genus, search } => {
            let r = free_action_analysis(*n, *genus, *search, &budget)?;
            let text = free_text(&r);
            let json = r.to_json();
            let row = vec![
                n.to_string(),
                genus.to_string(),
                r.k.map(|k| k.to_string()).unwrap_or_default(),
                json["verdict"].as_str().unwrap_or_default().to_string(),
                json["symmetric_witness"]["text"]
                    .as_str()
                    .unwrap_or_default()
                    .to_string(),
                json["descent"].as_str().unwrap_or_default().to_string(),
            ];
            emit(
                out,
                cli.format,
                &text,
                &json,
                &["n", "genus", "k", "verdict", "symmetric_witness", "descent"],
                &[row],
            )?;
            Ok(0)
        }
        Command::Obstructions { genus, groups } => obstructions(out, cli.format, &budget, *genus, groups),
        Command::Cache { action } => {
            let Some(dir) = cache.dir() else {
                bail!("no cache directory configured")
            };
            match action {
                CacheAction::List => {
                    for p in cache.entries()? {
                        writeln!(out, "{}", p.display())?;
                    }
                }
                CacheAction::Clear => writeln!(out, "removed {} entries from {}", cache.clear()?, dir.display())?,
            }
            Ok(0)
        }
    }
}

fn emit(
    out: &mut dyn Write,
    format: Format,
    text: &str,
    json: &serde_json::Value,
    header: &[&str],
    rows: &[Vec<String>],
) -> Result<()> {
    match format {
        Format::Text => write!(out, "{text}")?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(json)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(header)?;
            for r in rows {
                w.write_record(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Columns padded to their widest cell.
fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(i, s)| {
                if i + 1 == r.len() {
                    s.clone()
                } else {
                    format!("{s}{}", " ".repeat(widths[i] - s.chars().count()))
                }
            })
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn selected_groups(genus: u64, groups: &GroupChoice) -> Result<Vec<GroupSpec>> {
    if let Some(g) = groups.group {
        return Ok(vec![g]);
    }
    let hurwitz = 84 * genus.saturating_sub(1) as u128;
    let mut out = Vec::new();
    for family in [Family::Alt, Family::Sym] {
        for n in 4.. {
            let g = GroupSpec::new(family, n)?;
            if g.order() > hurwitz {
                break;
            }
            out.push(g);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct ClassRow {
    group: String,
    signature: String,
    data_set: String,
    d_sigma: String,
    d_tau: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct GroupListing {
    group: String,
    complete: bool,
    rows: Vec<ClassRow>,
}

fn list_group(cache: &Cache, budget: &SearchBudget, group: &GroupSpec, genus: u64) -> Result<GroupListing> {
    let key = Cache::key(&[
        "classify",
        &group.to_string(),
        &genus.to_string(),
        env!("CARGO_PKG_VERSION"),
        &budget.fingerprint(),
    ]);
    if let Some(hit) = cache.get::<GroupListing>(&key) {
        return Ok(hit);
    }
    let list = enumerate_weak_classes(group, genus, budget)?;
    let mut rows = Vec::new();
    for w in &list.classes {
        let ds = w.data_set.as_ref().context("weak class without a data set")?;
        let (ds_sigma, ds_tau) = standard_factors(ds)?;
        rows.push(ClassRow {
            group: display_group(group),
            signature: w.signature.to_string(),
            data_set: ds.to_string(),
            d_sigma: ds_sigma.to_string(),
            d_tau: ds_tau.to_string(),
        });
    }
    let listing = GroupListing {
        group: display_group(group),
        complete: list.complete(),
        rows,
    };
    if listing.complete {
        cache.put(&key, &listing)?;
    }
    Ok(listing)
}

fn display_group(g: &GroupSpec) -> String {
    match g.family {
        Family::Sym => format!("Σ{}", g.n),
        _ => g.to_string(),
    }
}

fn classify(
    out: &mut dyn Write,
    err: &mut dyn Write,
    format: Format,
    cache: &Cache,
    budget: &SearchBudget,
    genus: u64,
    groups: &GroupChoice,
) -> Result<u8> {
    if genus < 2 {
        bail!(Error::Parse(format!("genus {genus} is below 2")));
    }
    let mut listings = Vec::new();
    for g in selected_groups(genus, groups)? {
        if DataSetKind::of(&g).is_none() {
            bail!(Error::NotApplicable(format!("classification of {g}")));
        }
        listings.push(list_group(cache, budget, &g, genus)?);
    }
    let complete = listings.iter().all(|l| l.complete);
    let rows: Vec<&ClassRow> = listings.iter().flat_map(|l| &l.rows).collect();
    let mut table = vec![vec![
        "group".to_string(),
        "data set".to_string(),
        "[D_σ; D_τ]".to_string(),
    ]];
    for r in &rows {
        table.push(vec![
            r.group.clone(),
            r.data_set.clone(),
            format!("[{}; {}]", r.d_sigma, r.d_tau),
        ]);
    }
    let mut text = format!("genus {genus}: {} weak classes\n", rows.len());
    text.push_str(&aligned(&table));
    for l in listings.iter().filter(|l| !l.complete) {
        text.push_str(&format!("incomplete: {} (search budget exhausted)\n", l.group));
    }
    let json = serde_json::json!({
        "genus": genus,
        "complete": complete,
        "groups": listings,
    });
    let csv_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.group.clone(),
                r.signature.clone(),
                r.data_set.clone(),
                r.d_sigma.clone(),
                r.d_tau.clone(),
            ]
        })
        .collect();
    emit(
        out,
        format,
        &text,
        &json,
        &["group", "signature", "data_set", "d_sigma", "d_tau"],
        &csv_rows,
    )?;
    if complete {
        Ok(0)
    } else {
        writeln!(err, "search budget exhausted; output is partial")?;
        Ok(3)
    }
}

fn factor(out: &mut dyn Write, format: Format, group: &GroupSpec, data_set: &str, sigma: Option<&str>) -> Result<u8> {
    let kind = DataSetKind::of(group).context(Error::NotApplicable(format!("data sets for {group}")))?;
    let ds = GroupDataSet::parse(kind, data_set)?;
    let g = ds.validate()?;
    let mut table = vec![vec!["element".to_string(), "class".to_string(), "factor".to_string()]];
    if let Some(s) = sigma {
        let p = Perm::parse(s, group.degree())?;
        let f = cyclic_factor(&ds, &p)?;
        let class = group.class_key(&p)?;
        table.push(vec![p.to_string(), class.to_string(), f.to_string()]);
    } else {
        let (fs, ft) = standard_factors(&ds)?;
        let (s, t) = group.standard_generators();
        table.push(vec![s.to_string(), group.class_key(&s)?.to_string(), fs.to_string()]);
        table.push(vec![t.to_string(), group.class_key(&t)?.to_string(), ft.to_string()]);
        for (k, rep, f) in class_factors(&ds)? {
            table.push(vec![rep.to_string(), k.to_string(), f.to_string()]);
        }
    }
    let text = format!("{ds} (genus {g})\n{}", aligned(&table));
    let json = serde_json::json!({
        "data_set": ds.to_json(),
        "genus": g,
        "factors": table[1..].iter().map(|r| serde_json::json!({
            "element": r[0], "class": r[1], "factor": r[2],
        })).collect::<Vec<_>>(),
    });
    emit(out, format, &text, &json, &["element", "class", "factor"], &table[1..])?;
    Ok(0)
}

fn lift(
    out: &mut dyn Write,
    format: Format,
    budget: &SearchBudget,
    data_set: &str,
    d: Option<&CyclicDataSet>,
    pi: &str,
    all: bool,
) -> Result<u8> {
    let ds = GroupDataSet::parse(DataSetKind::Alternating, data_set)?;
    if all {
        let r: SelfNormalReport = self_normalizing(&ds, budget)?;
        let mut text = format!(
            "{ds}\nsufficient condition: {}\nexhaustive: {}\nself-normalizing: {}\n",
            r.sufficient_condition,
            match r.exhaustive {
                Some(b) => b.to_string(),
                None => "undetermined".to_string(),
            },
            r.self_normalizing()
        );
        for l in &r.lifts {
            text.push_str(&format!("lifts: {l}\n"));
        }
        for u in &r.undetermined {
            text.push_str(&format!("undetermined: {u}\n"));
        }
        let mut json = serde_json::to_value(&r)?;
        json["data_set"] = ds.to_string().into();
        json["self_normalizing"] = r.self_normalizing().into();
        let row = vec![
            ds.to_string(),
            r.sufficient_condition.to_string(),
            r.exhaustive.map(|b| b.to_string()).unwrap_or_default(),
            r.self_normalizing().to_string(),
        ];
        emit(
            out,
            format,
            &text,
            &json,
            &["data_set", "sufficient_condition", "exhaustive", "self_normalizing"],
            &[row],
        )?;
        return Ok(0);
    }
    let d = d.context("missing --d")?.clone();
    let r = ds.expanded().len();
    let pi = Perm::parse(pi, r)?;
    let inv = InvolutionDescent::new(d, pi);
    let verdict = decide_lift(&ds, &inv, budget)?;
    let text = format!("{ds} with {inv}\n{verdict}\n");
    let mut json = verdict.to_json();
    json["data_set"] = ds.to_string().into();
    json["d"] = inv.d.to_string().into();
    json["pi"] = inv.pi.to_string().into();
    let witness = match &verdict {
        LiftVerdict::Wls { witness } => witness.to_string(),
        LiftVerdict::WeakLiftableOnly { witness } => witness.to_string(),
        _ => String::new(),
    };
    let row = vec![
        ds.to_string(),
        inv.d.to_string(),
        inv.pi.to_string(),
        verdict.name().to_string(),
        witness,
    ];
    emit(
        out,
        format,
        &text,
        &json,
        &["data_set", "d", "pi", "verdict", "witness"],
        &[row],
    )?;
    Ok(
        if matches!(verdict, LiftVerdict::Undetermined { .. }) && verdict.to_string().contains("budget") {
            3
        } else {
            0
        },
    )
}

fn free_text(r: &FreeReport) -> String {
    let json = r.to_json();
    let mut s = format!("n = {}, g = {}\n", r.n, r.g);
    match r.k {
        Some(k) => s.push_str(&format!("k = {k}, free class {}\n", r.free_alt.as_ref().unwrap())),
        None => s.push_str("no free A_n class at this genus\n"),
    }
    s.push_str(&format!("verdict: {}\n", json["verdict"].as_str().unwrap_or_default()));
    if let Some(w) = json["symmetric_witness"]["text"].as_str() {
        s.push_str(&format!("symmetric witness: {w}\n"));
    }
    if let Some(d) = json["descent"].as_str() {
        s.push_str(&format!("descent: {d}\n"));
    }
    s
}

fn obstructions(
    out: &mut dyn Write,
    format: Format,
    budget: &SearchBudget,
    genus: u64,
    groups: &GroupChoice,
) -> Result<u8> {
    let mut table = vec![vec![
        "group".to_string(),
        "data set".to_string(),
        "class".to_string(),
        "factor".to_string(),
        "flags".to_string(),
    ]];
    let mut reports = Vec::new();
    let mut bounds = Vec::new();
    for g in selected_groups(genus, groups)? {
        let r = obstruction_report(&g, genus, budget)?;
        for row in &r.rows {
            let mut flags = Vec::new();
            if row.irreducible {
                flags.push("irreducible");
            }
            if row.hyperelliptic {
                flags.push("hyperelliptic");
            }
            table.push(vec![
                display_group(&g),
                row.data_set.clone(),
                row.class.clone(),
                row.factor.clone(),
                flags.join(","),
            ]);
        }
        bounds.push(max_order_bound(&g, genus, budget)?);
        reports.push(r);
    }
    let irreducible: usize = reports.iter().map(|r| r.irreducible().count()).sum();
    let hyper: usize = reports.iter().map(|r| r.hyperelliptic().count()).sum();
    let complete = reports.iter().all(|r| r.complete);
    let mut text = aligned(&table);
    text.push_str(&format!(
        "irreducible factors: {irreducible}\nhyperelliptic factors: {hyper}\n"
    ));
    for b in &bounds {
        text.push_str(&format!(
            "{}: max element order {}, |H|/max = {}, within Hurwitz: {}\n",
            b.group, b.landau, b.order_over_landau, b.within_hurwitz
        ));
    }
    let json = serde_json::json!({
        "genus": genus,
        "complete": complete,
        "irreducible": irreducible,
        "hyperelliptic": hyper,
        "reports": reports,
        "order_bounds": bounds,
    });
    emit(
        out,
        format,
        &text,
        &json,
        &["group", "data_set", "class", "factor", "flags"],
        &table[1..],
    )?;
    Ok(if complete { 0 } else { 3 })
}
