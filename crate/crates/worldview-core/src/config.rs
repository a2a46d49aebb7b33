//! The fully resolved run configuration and its digest.
//!
//! The digest is a SHA-256 over the canonical JSON form of every value that
//! can influence the *content* of the report artifacts. Plumbing stays out:
//! thread count never changes output bytes (the determinism contract promises
//! byte-identical reports across `--jobs` settings), and where a report is
//! written does not change what it says.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::corpus::CorpusFormat;
use crate::worldview::TrustConfig;

/// Everything a run needs, with all defaults already applied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub input: PathBuf,
    pub format: CorpusFormat,
    pub wordnet_dir: PathBuf,
    /// Extra slang dictionary; `None` uses the built-in table.
    pub slang_path: Option<PathBuf>,
    pub trust: TrustConfig,
    /// k-means baseline parameters.
    pub k: usize,
    pub seed: u64,
    pub max_iter: usize,
    pub top_k: usize,
    pub out_json: PathBuf,
    pub out_html: PathBuf,
    pub font_min: u32,
    pub font_max: u32,
    /// External assignment file for `eval`.
    pub import: Option<PathBuf>,
    /// Worker threads for per-tweet stages; 0 means the library default.
    /// Excluded from the digest.
    pub jobs: usize,
}

impl RunConfig {
    /// A config with the documented defaults for everything except the input
    /// and WordNet locations.
    pub fn new(input: PathBuf, format: CorpusFormat, wordnet_dir: PathBuf) -> RunConfig {
        RunConfig {
            input,
            format,
            wordnet_dir,
            slang_path: None,
            trust: TrustConfig::default(),
            k: 3,
            seed: 42,
            max_iter: 100,
            top_k: 3,
            out_json: PathBuf::from("worldviews.json"),
            out_html: PathBuf::from("tagcloud.html"),
            font_min: crate::report::DEFAULT_FONT_MIN,
            font_max: crate::report::DEFAULT_FONT_MAX,
            import: None,
            jobs: 0,
        }
    }

    /// SHA-256 hex digest of the canonical JSON form. Changes iff a value
    /// that can affect report content changes; output locations, the console
    /// row count (`top_k`), the eval-only `import`, and `jobs` are excluded.
    pub fn digest(&self) -> String {
        let mut value = serde_json::to_value(self).expect("config serializes");
        let map = value
            .as_object_mut()
            .expect("config serializes to an object");
        for plumbing in ["jobs", "out_json", "out_html", "top_k", "import"] {
            map.remove(plumbing);
        }
        let canonical = serde_json::to_string(&value).expect("canonical form serializes");
        let mut hasher = Sha256::new();
        hasher.update(canonical.as_bytes());
        let hash = hasher.finalize();
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> RunConfig {
        RunConfig::new(
            PathBuf::from("corpus.jsonl"),
            CorpusFormat::Jsonl,
            PathBuf::from("dict"),
        )
    }

    #[test]
    fn digest_is_stable_across_calls() {
        let c = config();
        assert_eq!(c.digest(), c.digest());
        assert_eq!(c.digest().len(), 64);
    }

    #[test]
    fn digest_ignores_plumbing_but_tracks_everything_else() {
        let base = config();
        let mut threaded = config();
        threaded.jobs = 4;
        assert_eq!(base.digest(), threaded.digest());

        let mut moved = config();
        moved.out_json = PathBuf::from("/elsewhere/report.json");
        moved.out_html = PathBuf::from("/elsewhere/cloud.html");
        moved.top_k = 10;
        assert_eq!(base.digest(), moved.digest());

        let mut reseeded = config();
        reseeded.seed = 43;
        assert_ne!(base.digest(), reseeded.digest());

        let mut other_input = config();
        other_input.input = PathBuf::from("other.jsonl");
        assert_ne!(base.digest(), other_input.digest());

        let mut other_trust = config();
        other_trust.trust.min_cluster_size = 2;
        assert_ne!(base.digest(), other_trust.digest());
    }

    #[test]
    fn config_round_trips_through_json() {
        let c = config();
        let json = serde_json::to_string(&c).unwrap();
        let parsed: RunConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, c);
    }
}
