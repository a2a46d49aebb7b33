//! Evaluation harness: a seeded spherical k-means baseline over tf·idf
//! vectors, the purity metric, and adapters that turn world views or external
//! assignment files into partitions the metric can score.

use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cleaning::CleanTweet;
use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::worldview::WorldView;

/// Tweets as L2-normalized tf·idf rows over a sorted vocabulary.
#[derive(Debug, Clone, PartialEq)]
pub struct TfidfMatrix {
    /// Token → column, in sorted token order.
    pub vocabulary: BTreeMap<String, usize>,
    /// One row per tweet, parallel to `tweet_ids`. Nonempty rows have unit
    /// Euclidean norm; tweets with no tokens are all-zero.
    pub rows: Vec<Vec<f64>>,
    pub tweet_ids: Vec<String>,
}

impl TfidfMatrix {
    /// True when the tweet at `row` had no tokens at all.
    pub fn is_empty_row(&self, row: usize) -> bool {
        self.rows[row].iter().all(|&w| w == 0.0)
    }

    /// Indices of rows with at least one token.
    fn nonempty_rows(&self) -> Vec<usize> {
        (0..self.rows.len())
            .filter(|&i| !self.is_empty_row(i))
            .collect()
    }
}

/// A hard partition of tweets into `k` clusters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assignment {
    pub cluster_of: BTreeMap<String, usize>,
    pub k: usize,
    pub seed: u64,
}

/// Clusters as a map from cluster index to member tweet ids.
pub type Partition = BTreeMap<usize, BTreeSet<String>>;

/// Vectorize cleaned tweets: term frequency times smoothed inverse document
/// frequency `ln((1+N)/(1+df)) + 1`, rows L2-normalized. The vocabulary keeps
/// every token, stop words included, in sorted order.
pub fn vectorize_tfidf(clean: &[CleanTweet]) -> Result<TfidfMatrix> {
    if clean.is_empty() {
        return Err(Error::EmptyCorpus);
    }

    let mut df: BTreeMap<&str, usize> = BTreeMap::new();
    for tweet in clean {
        let unique: BTreeSet<&str> = tweet.words().collect();
        for word in unique {
            *df.entry(word).or_insert(0) += 1;
        }
    }
    let vocabulary: BTreeMap<String, usize> = df
        .keys()
        .enumerate()
        .map(|(col, &word)| (word.to_string(), col))
        .collect();
    let n = clean.len() as f64;
    let idf: Vec<f64> = df
        .values()
        .map(|&d| ((1.0 + n) / (1.0 + d as f64)).ln() + 1.0)
        .collect();

    let rows: Vec<Vec<f64>> = clean
        .par_iter()
        .map(|tweet| {
            let mut row = vec![0.0; vocabulary.len()];
            for word in tweet.words() {
                let col = vocabulary[word];
                row[col] += idf[col];
            }
            let norm = row.iter().map(|w| w * w).sum::<f64>().sqrt();
            if norm > 0.0 {
                for w in &mut row {
                    *w /= norm;
                }
            }
            row
        })
        .collect();

    Ok(TfidfMatrix {
        vocabulary,
        rows,
        tweet_ids: clean.iter().map(|t| t.tweet_id.clone()).collect(),
    })
}

/// Spherical k-means under cosine similarity, seeded and deterministic.
///
/// Initial centroids are `k` distinct nonempty rows drawn with the seeded
/// generator; each iteration assigns every row to the centroid with the
/// highest dot product (ties to the lower index; all-zero rows land in
/// cluster 0) and recomputes centroids as renormalized means. A cluster that
/// loses all its rows keeps its previous centroid. Stops when assignments
/// stabilize or after `max_iter` iterations.
pub fn kmeans_cosine(m: &TfidfMatrix, k: usize, seed: u64, max_iter: usize) -> Result<Assignment> {
    let nonempty = m.nonempty_rows();
    if k < 1 || k > nonempty.len() {
        return Err(Error::KOutOfRange {
            k,
            max: nonempty.len(),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = rand::seq::index::sample(&mut rng, nonempty.len(), k);
    let mut centroids: Vec<Vec<f64>> = picks.iter().map(|i| m.rows[nonempty[i]].clone()).collect();

    let mut assignment = vec![0usize; m.rows.len()];
    for _ in 0..max_iter {
        let next: Vec<usize> = m
            .rows
            .iter()
            .map(|row| nearest_centroid(row, &centroids))
            .collect();
        let stable = next == assignment;
        assignment = next;

        let mut sums = vec![vec![0.0; m.vocabulary.len()]; k];
        let mut counts = vec![0usize; k];
        for (row, &cluster) in m.rows.iter().zip(&assignment) {
            counts[cluster] += 1;
            for (acc, w) in sums[cluster].iter_mut().zip(row) {
                *acc += w;
            }
        }
        for (cluster, sum) in sums.into_iter().enumerate() {
            if counts[cluster] == 0 {
                continue;
            }
            let norm = sum.iter().map(|w| w * w).sum::<f64>().sqrt();
            if norm > 0.0 {
                centroids[cluster] = sum.into_iter().map(|w| w / norm).collect();
            }
        }
        if stable {
            break;
        }
    }

    Ok(Assignment {
        cluster_of: m
            .tweet_ids
            .iter()
            .cloned()
            .zip(assignment.iter().copied())
            .collect(),
        k,
        seed,
    })
}

fn nearest_centroid(row: &[f64], centroids: &[Vec<f64>]) -> usize {
    let mut best = 0usize;
    let mut best_dot = f64::NEG_INFINITY;
    for (i, centroid) in centroids.iter().enumerate() {
        let dot: f64 = row.iter().zip(centroid).map(|(a, b)| a * b).sum();
        if dot > best_dot {
            best_dot = dot;
            best = i;
        }
    }
    best
}

/// The spherical k-means objective: total cosine similarity of rows to their
/// cluster's renormalized mean. Non-decreasing across iterations.
pub fn kmeans_objective(m: &TfidfMatrix, assignment: &Assignment) -> f64 {
    let mut sums: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for (id, row) in m.tweet_ids.iter().zip(&m.rows) {
        let cluster = assignment.cluster_of[id];
        let sum = sums.entry(cluster).or_insert_with(|| vec![0.0; row.len()]);
        for (acc, w) in sum.iter_mut().zip(row) {
            *acc += w;
        }
    }
    let centroids: BTreeMap<usize, Vec<f64>> = sums
        .into_iter()
        .map(|(cluster, sum)| {
            let norm = sum.iter().map(|w| w * w).sum::<f64>().sqrt();
            let centroid = if norm > 0.0 {
                sum.into_iter().map(|w| w / norm).collect()
            } else {
                sum
            };
            (cluster, centroid)
        })
        .collect();
    m.tweet_ids
        .iter()
        .zip(&m.rows)
        .map(|(id, row)| {
            let centroid = &centroids[&assignment.cluster_of[id]];
            row.iter().zip(centroid).map(|(a, b)| a * b).sum::<f64>()
        })
        .sum()
}

/// Purity of a partition against gold labels: the fraction of tweets that
/// belong to their cluster's majority class. Every assigned tweet must carry
/// a gold label.
pub fn purity(partition: &Partition, gold: &BTreeMap<String, String>) -> Result<f64> {
    let mut total = 0usize;
    let mut agreeing = 0usize;
    let mut missing = 0usize;
    for members in partition.values() {
        let mut by_class: BTreeMap<&str, usize> = BTreeMap::new();
        total += members.len();
        for id in members {
            match gold.get(id) {
                Some(class) => *by_class.entry(class).or_insert(0) += 1,
                None => missing += 1,
            }
        }
        agreeing += by_class.values().copied().max().unwrap_or(0);
    }
    if missing > 0 {
        return Err(Error::MissingLabels { missing, total });
    }
    if total == 0 {
        return Err(Error::EmptyCorpus);
    }
    Ok(agreeing as f64 / total as f64)
}

/// Adapt overlapping world views to a hard partition: each corpus tweet goes
/// to its largest containing view (ties to the lexicographically smaller
/// label); tweets in no view share one extra cluster at index `views.len()`.
pub fn views_to_partition(views: &[WorldView], corpus: &Corpus) -> Partition {
    let mut order: Vec<usize> = (0..views.len()).collect();
    order.sort_by(|&a, &b| {
        views[b]
            .members
            .len()
            .cmp(&views[a].members.len())
            .then(views[a].label_path.cmp(&views[b].label_path))
    });

    let mut partition: Partition = BTreeMap::new();
    for tweet in &corpus.tweets {
        let cluster = order
            .iter()
            .position(|&v| views[v].members.contains(&tweet.id))
            .unwrap_or(views.len());
        partition
            .entry(cluster)
            .or_default()
            .insert(tweet.id.clone());
    }
    partition
}

/// View an [`Assignment`] as a [`Partition`].
pub fn assignment_to_partition(assignment: &Assignment) -> Partition {
    let mut partition: Partition = BTreeMap::new();
    for (id, &cluster) in &assignment.cluster_of {
        partition.entry(cluster).or_default().insert(id.clone());
    }
    partition
}

/// Gold labels keyed by tweet id; errors when the corpus has none.
pub fn gold_labels(corpus: &Corpus) -> Result<BTreeMap<String, String>> {
    let labels = corpus.gold_labels.as_ref().ok_or(Error::MissingLabels {
        missing: corpus.len(),
        total: corpus.len(),
    })?;
    Ok(corpus
        .tweets
        .iter()
        .zip(labels)
        .map(|(t, l)| (t.id.clone(), l.clone()))
        .collect())
}

/// One scored algorithm in an evaluation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalEntry {
    pub algorithm: String,
    pub purity: f64,
    pub cluster_count: usize,
    /// Cluster sizes, largest first.
    pub cluster_sizes: Vec<usize>,
}

/// Score one partition against the gold labels.
pub fn eval_entry(
    algorithm: &str,
    partition: &Partition,
    gold: &BTreeMap<String, String>,
) -> Result<EvalEntry> {
    let mut sizes: Vec<usize> = partition.values().map(BTreeSet::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(EvalEntry {
        algorithm: algorithm.to_string(),
        purity: purity(partition, gold)?,
        cluster_count: partition.len(),
        cluster_sizes: sizes,
    })
}

#[derive(Deserialize)]
struct ImportRecord {
    id: String,
    cluster: usize,
}

/// Read an external assignment from JSONL records `{"id": ..., "cluster": ...}`.
pub fn import_assignment(path: &Path) -> Result<Assignment> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut cluster_of = BTreeMap::new();
    let mut max_cluster = 0usize;
    for (i, line) in std::io::BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: ImportRecord = serde_json::from_str(&line).map_err(|e| Error::Malformed {
            path: path.to_path_buf(),
            line: i + 1,
            message: e.to_string(),
        })?;
        max_cluster = max_cluster.max(record.cluster);
        if cluster_of
            .insert(record.id.clone(), record.cluster)
            .is_some()
        {
            return Err(Error::Malformed {
                path: path.to_path_buf(),
                line: i + 1,
                message: format!("duplicate assignment for tweet {:?}", record.id),
            });
        }
    }
    if cluster_of.is_empty() {
        return Err(Error::Malformed {
            path: path.to_path_buf(),
            line: 0,
            message: "no assignment records".to_string(),
        });
    }
    Ok(Assignment {
        k: max_cluster + 1,
        cluster_of,
        seed: 0,
    })
}
