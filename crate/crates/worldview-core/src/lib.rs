//! Clustering engine that groups short social-media posts into "world views":
//! clusters labeled by a subject–verb–object reading of the text rather than
//! by bag-of-words distance.
//!
//! The pipeline runs in stages, each usable on its own:
//!
//! 1. [`corpus`] loads tweets from JSONL or CSV.
//! 2. [`cleaning`] normalizes the raw text (entities, accents, hashtags,
//!    mentions, URLs, slang) while tracking character offsets back into the
//!    original post.
//! 3. [`wordnet`] provides the lexical database: synsets, morphological
//!    normalization, and attestation checks, parsed from WordNet database
//!    files on disk.
//! 4. [`svo`] tags parts of speech, segments clauses, and extracts
//!    subject–verb–object tuples with a negation flag.
//! 5. [`svosst`] inserts the tuples into a depth-3 semantic suffix tree whose
//!    nodes match on synset overlap, and reads base clusters off the tree.
//! 6. [`worldview`] merges base clusters into final world views and scores
//!    each view's trustworthiness.
//! 7. [`eval`] compares the result against a k-means baseline by cluster
//!    purity; [`report`] serializes runs to JSON and renders the tag cloud.

pub mod cleaning;
pub mod config;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod pipeline;
pub mod report;
pub mod svo;
pub mod svosst;
pub mod wordnet;
pub mod worldview;

pub use cleaning::{clean_pipeline, CleanTweet, SlangDictionary};
pub use config::RunConfig;
pub use corpus::{load_corpus, Corpus, CorpusFormat, Tweet};
pub use error::{Error, Result};
pub use pipeline::{run_cluster, run_eval, ClusterRun};
pub use report::{build_report, render_tagcloud, to_json, ReportDocument};
pub use svo::{SvoExtractor, SvoTuple};
pub use svosst::{build_tree, BaseCluster, SvoSuffixTree};
pub use wordnet::{LexicalDatabase, Pos, SynKey, Synset, SynsetId};
pub use worldview::{merge_clusters, score_trust, top_k, TrustConfig, TrustScore, WorldView};
