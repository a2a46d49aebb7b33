//! Shared helpers for the acceptance suite: fixture paths, corpus
//! generators, and a from-scratch re-implementation of the suffix-tree
//! semantics used as a reference oracle.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::rngs::StdRng;
use rand::Rng;

use worldview_core::svo::SvoTuple;
use worldview_core::wordnet::{LexicalDatabase, SynKey};

pub fn wordnet_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/wordnet")
}

pub fn corpora_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpora")
}

pub fn db() -> LexicalDatabase {
    LexicalDatabase::load(&wordnet_dir()).expect("fixture wordnet loads")
}

// ---------------------------------------------------------------------------
// Reference oracle: an independent, boxed-node re-implementation of suffix
// insertion and base-cluster collection. Same contract, different machinery —
// recursive ownership instead of an arena — so index bookkeeping bugs in the
// real tree cannot hide here.

struct NaiveNode {
    segment: String,
    synsets: BTreeSet<SynKey>,
    negated: bool,
    children: Vec<NaiveNode>,
    terminals: Vec<String>,
}

fn naive_insert(
    children: &mut Vec<NaiveNode>,
    items: &[(&str, &BTreeSet<SynKey>, bool)],
    id: &str,
) {
    let (word, synsets, negated) = items[0];
    let found = children
        .iter()
        .position(|c| c.negated == negated && !c.synsets.is_disjoint(synsets));
    let idx = match found {
        Some(i) => i,
        None => {
            children.push(NaiveNode {
                segment: if negated {
                    format!("!{word}")
                } else {
                    word.to_string()
                },
                synsets: synsets.clone(),
                negated,
                children: Vec::new(),
                terminals: Vec::new(),
            });
            children.len() - 1
        }
    };
    if items.len() == 1 {
        children[idx].terminals.push(id.to_string());
    } else {
        naive_insert(&mut children[idx].children, &items[1..], id);
    }
}

fn naive_collect(
    nodes: &[NaiveNode],
    path: &mut Vec<String>,
    out: &mut Vec<(Vec<String>, BTreeSet<String>)>,
) -> BTreeSet<String> {
    let mut docs = BTreeSet::new();
    for node in nodes {
        path.push(node.segment.clone());
        let mut own: BTreeSet<String> = node.terminals.iter().cloned().collect();
        own.extend(naive_collect(&node.children, path, out));
        out.push((path.clone(), own.clone()));
        path.pop();
        docs.extend(own);
    }
    docs
}

/// Base clusters per the reference implementation, in the same post-order
/// (children before parents, siblings in creation order) the tree promises.
pub fn naive_clusters(tuples: &[SvoTuple]) -> Vec<(Vec<String>, BTreeSet<String>)> {
    let mut roots: Vec<NaiveNode> = Vec::new();
    for tuple in tuples {
        let items: [(&str, &BTreeSet<SynKey>, bool); 3] = [
            (&tuple.subject, &tuple.subject_syn, false),
            (&tuple.verb, &tuple.verb_syn, tuple.negated),
            (&tuple.object, &tuple.object_syn, false),
        ];
        for start in 0..items.len() {
            naive_insert(&mut roots, &items[start..], &tuple.tweet_id);
        }
    }
    let mut out = Vec::new();
    naive_collect(&roots, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// Random tuple corpora for the oracle comparison. Words draw small synset
// sets from a shared pool, so overlap, polarity splits, and first-match
// ambiguity all occur often.

fn lexicon(
    rng: &mut StdRng,
    prefix: &str,
    n: usize,
    pool: &[SynKey],
) -> Vec<(String, BTreeSet<SynKey>)> {
    (0..n)
        .map(|i| {
            let size = rng.gen_range(1..=3);
            let mut set = BTreeSet::new();
            while set.len() < size {
                set.insert(pool[rng.gen_range(0..pool.len())].clone());
            }
            (format!("{prefix}{i}"), set)
        })
        .collect()
}

pub fn gen_tuples(rng: &mut StdRng) -> Vec<SvoTuple> {
    let pool: Vec<SynKey> = (0..12)
        .map(|i| SynKey::pseudo(&format!("sense{i}")))
        .collect();
    let subjects = lexicon(rng, "subj", 8, &pool);
    let verbs = lexicon(rng, "verb", 6, &pool);
    let objects = lexicon(rng, "obj", 8, &pool);

    let n = rng.gen_range(1..=40);
    (0..n)
        .map(|i| {
            let (subject, subject_syn) = subjects[rng.gen_range(0..subjects.len())].clone();
            let (verb, verb_syn) = verbs[rng.gen_range(0..verbs.len())].clone();
            let (object, object_syn) = objects[rng.gen_range(0..objects.len())].clone();
            SvoTuple {
                subject,
                verb,
                object,
                negated: rng.gen_bool(0.3),
                tweet_id: format!("t{i}"),
                subject_syn,
                verb_syn,
                object_syn,
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Labeled incident corpus: three disjoint news stories whose texts are known
// to parse into clean tuples, with retweet prefixes, URLs, and hashtags mixed
// in to exercise the cleaning stages.

const BOSTON: &[&str] = &[
    "Police confirm explosion",
    "Officers confirmed the detonation",
    "Police corroborated the explosion near the finish line",
    "RT @BBCNews: Police confirm explosion in Boston",
];

const PADDINGTON: &[&str] = &[
    "There is no service running at Paddington",
    "Services are currently unable to run at Paddington",
    "Service never runs at Paddington",
    "Service cannot run at Paddington",
    "No service is running at Paddington",
    "Service is not running at Paddington",
    "Trains cannot run at Paddington",
    "Trains are not running at Paddington",
];

const TUNISIA: &[&str] = &[
    "Gunman attacks the resort in Tunisia",
    "Shooter assaulted a hotel",
    "The gunman attacked a resort",
    "Shooter assaults the resort",
    "The gunman attacked the hotel in Tunisia",
];

/// Write `total` labeled tweets round-robin across the three stories.
pub fn write_incident_corpus(path: &Path, total: usize) {
    let groups: [(&str, &str, &[&str]); 3] = [
        ("bos", "boston", BOSTON),
        ("pad", "paddington", PADDINGTON),
        ("tun", "tunisia", TUNISIA),
    ];
    let mut file = std::fs::File::create(path).expect("create corpus file");
    for i in 0..total {
        let (prefix, label, texts) = groups[i % 3];
        let base = texts[(i / 3) % texts.len()];
        let mut text = base.to_string();
        if i % 5 == 0 {
            text.push_str(" http://t.co/x9Y2");
        }
        // A leading hashtag adds a stray nominal but can never become a
        // subject or object head (heads are the nominals nearest the verb).
        if i % 11 == 0 {
            text = format!("#tube {text}");
        }
        if i % 7 == 0 && !text.starts_with("RT ") {
            text = format!("RT @CNN: {text}");
        }
        let author = if i % 13 == 0 {
            "@Reuters".to_string()
        } else {
            format!("@user{}", i % 37)
        };
        let record = serde_json::json!({
            "id": format!("{prefix}{i}"),
            "author": author,
            "text": text,
            "label": label,
        });
        writeln!(file, "{record}").expect("write corpus line");
    }
}

// ---------------------------------------------------------------------------

/// Coefficient of determination for the least-squares line through
/// `(xs, ys)`.
pub fn linear_r2(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = cov / var;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - (slope * x + intercept)).powi(2))
        .sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    1.0 - ss_res / ss_tot
}
