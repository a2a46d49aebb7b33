//! End-to-end wiring: corpus → cleaning → SVO extraction → suffix tree →
//! merged world views → report document. Per-tweet stages run in parallel;
//! results are collected in input order so output is deterministic regardless
//! of thread count.

use rayon::prelude::*;

use crate::cleaning::{clean_pipeline, CleanTweet, SlangDictionary};
use crate::config::RunConfig;
use crate::corpus::{load_corpus, Corpus};
use crate::error::Result;
use crate::eval::{
    assignment_to_partition, eval_entry, gold_labels, import_assignment, kmeans_cosine,
    vectorize_tfidf, views_to_partition, EvalEntry,
};
use crate::report::{build_report, ReportDocument};
use crate::svo::{SvoExtractor, SvoTuple};
use crate::svosst::{build_tree, SvoSuffixTree};
use crate::wordnet::LexicalDatabase;
use crate::worldview::{merge_clusters, score_trust, WorldView};

/// Everything a clustering run produces, kept around for inspection.
pub struct ClusterRun {
    pub corpus: Corpus,
    pub clean: Vec<CleanTweet>,
    pub tuples: Vec<SvoTuple>,
    pub tree: SvoSuffixTree,
    pub views: Vec<WorldView>,
    pub document: ReportDocument,
}

/// Clean every tweet, in parallel, preserving corpus order.
pub fn clean_corpus(corpus: &Corpus, slang: &SlangDictionary) -> Vec<CleanTweet> {
    corpus
        .tweets
        .par_iter()
        .map(|tweet| clean_pipeline(tweet, slang))
        .collect()
}

/// Extract SVO tuples from cleaned tweets, in parallel, preserving order.
pub fn extract_tuples(db: &LexicalDatabase, clean: &[CleanTweet]) -> Vec<SvoTuple> {
    let extractor = SvoExtractor::new(db);
    clean
        .par_iter()
        .map(|tweet| extractor.svo_pipeline(tweet))
        .collect::<Vec<Vec<SvoTuple>>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Load the slang dictionary named by the config, or the built-in table.
pub fn load_slang(config: &RunConfig) -> Result<SlangDictionary> {
    match &config.slang_path {
        Some(path) => SlangDictionary::from_path(path),
        None => Ok(SlangDictionary::builtin().clone()),
    }
}

/// Run the full clustering pipeline described by `config`.
///
/// An empty corpus is not an error: it produces a document with zero views.
/// A corpus whose every view consists solely of retweets fails trust scoring,
/// as does an invalid trust configuration.
pub fn run_cluster(config: &RunConfig) -> Result<ClusterRun> {
    config.trust.validate()?;
    let corpus = load_corpus(&config.input, config.format)?;
    let slang = load_slang(config)?;
    let db = LexicalDatabase::load(&config.wordnet_dir)?;

    let clean = clean_corpus(&corpus, &slang);
    let tuples = extract_tuples(&db, &clean);
    let tree = build_tree(&tuples);
    let views = merge_clusters(&tree.base_clusters(), config.trust.min_cluster_size);
    let views = if views.is_empty() {
        views
    } else {
        score_trust(views, &corpus, &config.trust)?
    };
    let document = build_report(&views, &corpus, &clean, db.version(), &config.digest())?;

    Ok(ClusterRun {
        corpus,
        clean,
        tuples,
        tree,
        views,
        document,
    })
}

/// Run the evaluation harness: SVOSSTC and the k-means baseline on a labeled
/// corpus, plus any imported external assignment.
pub fn run_eval(config: &RunConfig) -> Result<Vec<EvalEntry>> {
    let corpus = load_corpus(&config.input, config.format)?;
    let gold = gold_labels(&corpus)?;
    let slang = load_slang(config)?;
    let db = LexicalDatabase::load(&config.wordnet_dir)?;

    let clean = clean_corpus(&corpus, &slang);
    let tuples = extract_tuples(&db, &clean);
    let tree = build_tree(&tuples);
    let views = merge_clusters(&tree.base_clusters(), config.trust.min_cluster_size);

    let mut entries = Vec::new();
    entries.push(eval_entry(
        "svosstc",
        &views_to_partition(&views, &corpus),
        &gold,
    )?);

    let matrix = vectorize_tfidf(&clean)?;
    let assignment = kmeans_cosine(&matrix, config.k, config.seed, config.max_iter)?;
    entries.push(eval_entry(
        "kmeans",
        &assignment_to_partition(&assignment),
        &gold,
    )?);

    if let Some(path) = &config.import {
        let name = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("import");
        let external = import_assignment(path)?;
        entries.push(eval_entry(
            name,
            &assignment_to_partition(&external),
            &gold,
        )?);
    }

    Ok(entries)
}
