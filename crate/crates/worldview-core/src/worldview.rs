//! World views: base clusters merged by doc-set containment, then scored for
//! corroboration-based trustworthiness.
//!
//! Merging repeatedly collapses any pair of clusters where one's document set
//! contains the other's, keeping the *larger* member set and the *more
//! specific* label — so `David kill John` absorbs the redundant `John`
//! cluster instead of surviving alongside it. The trust score combines a
//! view's relative size with the presence of trusted news agencies among its
//! authors: `s = w_size·x + w_agency·c`, all three in [0, 1].

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::svosst::BaseCluster;

/// A merged cluster: a labeled set of tweets telling one version of events.
#[derive(Debug, Clone, PartialEq)]
pub struct WorldView {
    /// Label segments from the suffix tree, most general to most specific;
    /// negated verbs carry a `!` mark.
    pub label_path: Vec<String>,
    /// Member tweet ids.
    pub members: BTreeSet<String>,
    /// Members that are not retweets. Equals `members.len()` until
    /// [`score_trust`] recomputes it against the corpus.
    pub member_count_no_rt: usize,
    /// Trust components, filled by [`score_trust`].
    pub trust: Option<TrustScore>,
}

impl WorldView {
    /// The display label: path segments joined by spaces.
    pub fn label(&self) -> String {
        self.label_path.join(" ")
    }
}

/// The trust components of one world view.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrustScore {
    /// Relative size: non-retweet members over the largest view's count.
    pub x: f64,
    /// Trusted-agency fraction: trusted-authored members over the number of
    /// trusted handles, capped at 1.
    pub c: f64,
    /// Combined score `w_size·x + w_agency·c`.
    pub s: f64,
    pub w_size: f64,
    pub w_agency: f64,
}

/// Scoring configuration, loadable from a TOML file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrustConfig {
    /// Handles whose authorship counts as agency corroboration. Matched
    /// case-insensitively against tweet authors.
    pub trusted_handles: BTreeSet<String>,
    pub w_size: f64,
    pub w_agency: f64,
    /// Views smaller than this are dropped after merging (1 keeps all).
    pub min_cluster_size: usize,
}

impl Default for TrustConfig {
    fn default() -> Self {
        TrustConfig {
            trusted_handles: ["@ABC", "@BBCNews", "@CBSNews", "@CNN", "@Reuters"]
                .into_iter()
                .map(String::from)
                .collect(),
            w_size: 0.5,
            w_agency: 0.5,
            min_cluster_size: 1,
        }
    }
}

impl TrustConfig {
    /// Load and validate a config from a TOML file. Absent keys fall back to
    /// the defaults; unknown keys are rejected.
    pub fn from_path(path: &Path) -> Result<TrustConfig> {
        let raw = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let config: TrustConfig =
            toml::from_str(&raw).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    /// Check the weight and handle invariants.
    pub fn validate(&self) -> Result<()> {
        if self.w_size < 0.0 || self.w_agency < 0.0 {
            return Err(Error::Config(format!(
                "weights must be nonnegative (w_size={}, w_agency={})",
                self.w_size, self.w_agency
            )));
        }
        if (self.w_size + self.w_agency - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!(
                "weights must sum to 1 (w_size={}, w_agency={})",
                self.w_size, self.w_agency
            )));
        }
        if self.trusted_handles.is_empty() {
            return Err(Error::Config(
                "trusted_handles must not be empty".to_string(),
            ));
        }
        Ok(())
    }
}

/// Merge base clusters into world views by doc-set containment.
///
/// Repeatedly, while any pair exists where one doc set contains the other,
/// the pair becomes one view whose members are the larger set and whose label
/// is the more specific one: the longer label path wins, ties go to the label
/// of the view with more members, then to the lexicographically smaller
/// label. Views smaller than `min_cluster_size` are dropped afterwards.
pub fn merge_clusters(base: &[BaseCluster], min_cluster_size: usize) -> Vec<WorldView> {
    let mut views: Vec<(Vec<String>, BTreeSet<String>)> = base
        .iter()
        .map(|c| (c.label_path.clone(), c.doc_set.clone()))
        .collect();

    'merge: loop {
        for i in 0..views.len() {
            for j in (i + 1)..views.len() {
                let contained = {
                    let (a, b) = (&views[i].1, &views[j].1);
                    if a.len() <= b.len() {
                        a.is_subset(b)
                    } else {
                        b.is_subset(a)
                    }
                };
                if contained {
                    let b = views.remove(j);
                    let a = std::mem::take(&mut views[i]);
                    views[i] = merge_pair(a, b);
                    continue 'merge;
                }
            }
        }
        break;
    }

    views
        .into_iter()
        .filter(|(_, members)| members.len() >= min_cluster_size)
        .map(|(label_path, members)| {
            let count = members.len();
            WorldView {
                label_path,
                members,
                member_count_no_rt: count,
                trust: None,
            }
        })
        .collect()
}

type RawView = (Vec<String>, BTreeSet<String>);

/// Combine a containing pair: larger member set, more specific label.
fn merge_pair(a: RawView, b: RawView) -> RawView {
    use std::cmp::Ordering;

    let label = match (a.0.len().cmp(&b.0.len())).then(a.1.len().cmp(&b.1.len())) {
        Ordering::Greater => a.0.clone(),
        Ordering::Less => b.0.clone(),
        Ordering::Equal => a.0.clone().min(b.0.clone()),
    };
    let members = if a.1.len() >= b.1.len() { a.1 } else { b.1 };
    (label, members)
}

/// Score every view's trustworthiness against the corpus.
///
/// `n_i` counts non-retweet members; `x_i = n_i / max(n)`; `t_i` counts
/// members authored by trusted handles; `c_i = min(1, t_i / |trusted|)`;
/// `s_i = w_size·x_i + w_agency·c_i`. Views come back sorted by `n_i`
/// descending (ties: more members, then smaller label). Errors when every
/// view is empty after retweet exclusion, which would divide by zero.
pub fn score_trust(
    views: Vec<WorldView>,
    corpus: &Corpus,
    config: &TrustConfig,
) -> Result<Vec<WorldView>> {
    config.validate()?;
    if views.is_empty() {
        return Ok(views);
    }

    let by_id: BTreeMap<&str, &crate::corpus::Tweet> =
        corpus.tweets.iter().map(|t| (t.id.as_str(), t)).collect();
    let trusted: BTreeSet<String> = config
        .trusted_handles
        .iter()
        .map(|h| h.to_lowercase())
        .collect();

    let mut counted: Vec<(WorldView, usize)> = Vec::with_capacity(views.len());
    for mut view in views {
        let mut n = 0usize;
        let mut t = 0usize;
        for id in &view.members {
            let tweet = by_id.get(id.as_str()).ok_or_else(|| {
                Error::Internal(format!("world view member {id:?} is not in the corpus"))
            })?;
            if !tweet.is_retweet {
                n += 1;
            }
            if trusted.contains(&tweet.author.to_lowercase()) {
                t += 1;
            }
        }
        view.member_count_no_rt = n;
        counted.push((view, t));
    }

    let max_n = counted
        .iter()
        .map(|(v, _)| v.member_count_no_rt)
        .max()
        .unwrap_or(0);
    if max_n == 0 {
        return Err(Error::EmptyAfterRetweetExclusion);
    }

    let mut scored: Vec<WorldView> = counted
        .into_iter()
        .map(|(mut view, t)| {
            let x = view.member_count_no_rt as f64 / max_n as f64;
            let c = (t as f64 / config.trusted_handles.len() as f64).min(1.0);
            let s = config.w_size * x + config.w_agency * c;
            view.trust = Some(TrustScore {
                x,
                c,
                s,
                w_size: config.w_size,
                w_agency: config.w_agency,
            });
            view
        })
        .collect();

    scored.sort_by(|a, b| {
        b.member_count_no_rt
            .cmp(&a.member_count_no_rt)
            .then(b.members.len().cmp(&a.members.len()))
            .then(a.label_path.cmp(&b.label_path))
    });
    Ok(scored)
}

/// The `k` largest views by member count; ties broken by label.
pub fn top_k(views: &[WorldView], k: usize) -> Vec<WorldView> {
    let mut ranked: Vec<&WorldView> = views.iter().collect();
    ranked.sort_by(|a, b| {
        b.members
            .len()
            .cmp(&a.members.len())
            .then(a.label_path.cmp(&b.label_path))
    });
    ranked.into_iter().take(k).cloned().collect()
}
