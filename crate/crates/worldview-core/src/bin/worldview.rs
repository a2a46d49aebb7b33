//! Command-line front end: `cluster`, `eval`, `svo`, and `dump-tree`
//! subcommands over the library pipeline. Exit codes: 0 success, 1 runtime
//! failure, 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use worldview_core::config::RunConfig;
use worldview_core::corpus::CorpusFormat;
use worldview_core::pipeline::{clean_corpus, extract_tuples, load_slang, run_cluster, run_eval};
use worldview_core::report::{render_tagcloud, to_json};
use worldview_core::svosst::build_tree;
use worldview_core::wordnet::LexicalDatabase;
use worldview_core::worldview::{top_k, TrustConfig};

#[derive(Parser)]
#[command(
    name = "worldview",
    version,
    about = "Cluster short posts into trust-scored world views"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and write the JSON report and HTML tag cloud.
    Cluster(ClusterArgs),
    /// Compare SVOSSTC against the k-means baseline on a labeled corpus.
    Eval(EvalArgs),
    /// Print extracted SVO tuples, one tab-separated line per tuple.
    Svo(CommonArgs),
    /// Print the semantic suffix tree as indented text.
    DumpTree(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Input corpus file (JSONL or CSV).
    #[arg(long)]
    input: PathBuf,

    /// Input format (`jsonl` or `csv`); inferred from the extension when omitted.
    #[arg(long)]
    format: Option<String>,

    /// WordNet database directory (index.*/data.*/*.exc files).
    #[arg(long, env = "WORLDVIEW_WORDNET")]
    wordnet: PathBuf,

    /// Extra slang dictionary (TSV: phrase<TAB>expansion) replacing the built-in table.
    #[arg(long)]
    slang: Option<PathBuf>,

    /// Worker threads for per-tweet stages (0 = automatic).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct ClusterArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Trust configuration file (TOML).
    #[arg(long)]
    trust_config: Option<PathBuf>,

    /// Drop merged views smaller than this (overrides the trust config).
    #[arg(long)]
    min_cluster_size: Option<usize>,

    /// How many views the summary table prints.
    #[arg(long, default_value_t = 3)]
    top_k: usize,

    /// JSON report output path.
    #[arg(long, default_value = "worldviews.json")]
    out_json: PathBuf,

    /// HTML tag cloud output path.
    #[arg(long, default_value = "tagcloud.html")]
    out_html: PathBuf,

    /// Also write the suffix tree dump to this path.
    #[arg(long)]
    dump_tree: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Cluster count for the k-means baseline.
    #[arg(long, default_value_t = 3)]
    k: usize,

    /// Seed for the k-means baseline.
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Drop merged views smaller than this before scoring purity.
    #[arg(long)]
    min_cluster_size: Option<usize>,

    /// External assignment file (JSONL of {"id", "cluster"}) to score alongside.
    #[arg(long)]
    import: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("worldview: {e}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Cluster(args) => cmd_cluster(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Svo(args) => cmd_svo(args),
        Command::DumpTree(args) => cmd_dump_tree(args),
    }
}

/// Resolve the corpus format from the flag or the file extension. A bad or
/// unresolvable format is a usage problem, reported with exit code 2.
fn resolve_format(common: &CommonArgs) -> Result<CorpusFormat, ExitCode> {
    if let Some(raw) = &common.format {
        return CorpusFormat::from_str(raw).map_err(|e| {
            eprintln!("worldview: {e}");
            ExitCode::from(2)
        });
    }
    CorpusFormat::from_path(&common.input).ok_or_else(|| {
        eprintln!(
            "worldview: cannot infer format of {:?}; pass --format jsonl|csv",
            common.input
        );
        ExitCode::from(2)
    })
}

/// Configure the global thread pool when `--jobs` asks for a fixed width.
fn configure_jobs(jobs: usize) -> anyhow::Result<()> {
    if jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()?;
    }
    Ok(())
}

fn base_config(common: &CommonArgs) -> Result<RunConfig, ExitCode> {
    let format = resolve_format(common)?;
    let mut config = RunConfig::new(common.input.clone(), format, common.wordnet.clone());
    config.slang_path = common.slang.clone();
    config.jobs = common.jobs;
    Ok(config)
}

fn cmd_cluster(args: ClusterArgs) -> anyhow::Result<ExitCode> {
    let mut config = match base_config(&args.common) {
        Ok(c) => c,
        Err(code) => return Ok(code),
    };
    config.trust = match &args.trust_config {
        Some(path) => TrustConfig::from_path(path)?,
        None => TrustConfig::default(),
    };
    if let Some(min) = args.min_cluster_size {
        config.trust.min_cluster_size = min;
    }
    config.top_k = args.top_k;
    config.out_json = args.out_json;
    config.out_html = args.out_html;
    configure_jobs(config.jobs)?;

    let run = run_cluster(&config)?;
    if run.corpus.is_empty() {
        eprintln!("worldview: warning: corpus is empty; writing an empty report");
    }

    std::fs::write(&config.out_json, to_json(&run.document))?;
    std::fs::write(
        &config.out_html,
        render_tagcloud(&run.document, config.font_min, config.font_max),
    )?;
    if let Some(path) = &args.dump_tree {
        std::fs::write(path, run.tree.dump())?;
    }

    println!(
        "{} tweets → {} tuples → {} world views",
        run.corpus.len(),
        run.tuples.len(),
        run.views.len()
    );
    if !run.views.is_empty() {
        println!("{:<44} {:>8} {:>8} {:>7}", "label", "members", "no-rt", "s");
        for view in top_k(&run.views, config.top_k) {
            let s = view.trust.map(|t| t.s).unwrap_or_default();
            println!(
                "{:<44} {:>8} {:>8} {:>7.3}",
                view.label(),
                view.members.len(),
                view.member_count_no_rt,
                s
            );
        }
    }
    println!(
        "wrote {} and {}",
        config.out_json.display(),
        config.out_html.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_eval(args: EvalArgs) -> anyhow::Result<ExitCode> {
    let mut config = match base_config(&args.common) {
        Ok(c) => c,
        Err(code) => return Ok(code),
    };
    config.k = args.k;
    config.seed = args.seed;
    if let Some(min) = args.min_cluster_size {
        config.trust.min_cluster_size = min;
    }
    config.import = args.import;
    configure_jobs(config.jobs)?;

    let entries = run_eval(&config)?;
    println!(
        "{:<12} {:>7} {:>9} {:>20}",
        "algorithm", "purity", "clusters", "sizes"
    );
    for entry in &entries {
        let sizes = entry
            .cluster_sizes
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",");
        println!(
            "{:<12} {:>7.3} {:>9} {:>20}",
            entry.algorithm, entry.purity, entry.cluster_count, sizes
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_svo(args: CommonArgs) -> anyhow::Result<ExitCode> {
    let config = match base_config(&args) {
        Ok(c) => c,
        Err(code) => return Ok(code),
    };
    configure_jobs(config.jobs)?;

    let corpus = worldview_core::corpus::load_corpus(&config.input, config.format)?;
    let slang = load_slang(&config)?;
    let db = LexicalDatabase::load(&config.wordnet_dir)?;
    let clean = clean_corpus(&corpus, &slang);
    let tuples = extract_tuples(&db, &clean);

    for tuple in &tuples {
        let verb = if tuple.negated {
            format!("!{}", tuple.verb)
        } else {
            tuple.verb.clone()
        };
        println!(
            "{}\t{}\t{}\t{}",
            tuple.tweet_id, tuple.subject, verb, tuple.object
        );
    }
    let with_tuples: std::collections::BTreeSet<&str> =
        tuples.iter().map(|t| t.tweet_id.as_str()).collect();
    eprintln!(
        "{} tuples from {} tweets ({} tweets yielded none)",
        tuples.len(),
        corpus.len(),
        corpus.len() - with_tuples.len()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_dump_tree(args: CommonArgs) -> anyhow::Result<ExitCode> {
    let config = match base_config(&args) {
        Ok(c) => c,
        Err(code) => return Ok(code),
    };
    configure_jobs(config.jobs)?;

    let corpus = worldview_core::corpus::load_corpus(&config.input, config.format)?;
    let slang = load_slang(&config)?;
    let db = LexicalDatabase::load(&config.wordnet_dir)?;
    let clean = clean_corpus(&corpus, &slang);
    let tuples = extract_tuples(&db, &clean);
    let tree = build_tree(&tuples);
    print!("{}", tree.dump());
    Ok(ExitCode::SUCCESS)
}
