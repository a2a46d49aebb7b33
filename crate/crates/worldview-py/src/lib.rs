//! Python bindings for the worldview engine.
//!
//! The module exposes one stateful entry point, [`Engine`], which loads the
//! WordNet database and slang table once and then cleans, extracts, clusters,
//! and renders without touching the filesystem again. Results cross the
//! boundary as small frozen classes (`SvoTuple`, `WorldView`) rather than
//! dictionaries, so typos fail loudly on the Python side.

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use worldview_core::cleaning::{clean_pipeline, CleanTweet, SlangDictionary};
use worldview_core::corpus::{Corpus, Tweet};
use worldview_core::report::{build_report, render_tagcloud, to_json};
use worldview_core::svo::SvoExtractor;
use worldview_core::svosst::{build_tree, SvoSuffixTree};
use worldview_core::wordnet::LexicalDatabase;
use worldview_core::worldview::{merge_clusters, score_trust, TrustConfig, WorldView};
use worldview_core::Error;

/// What one in-memory clustering pass produces.
struct Clustered {
    clean: Vec<CleanTweet>,
    tree: SvoSuffixTree,
    views: Vec<WorldView>,
}

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Io { .. } => PyIOError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// One extracted subject–verb–object tuple.
#[pyclass(frozen, get_all, name = "SvoTuple", module = "worldview")]
#[derive(Clone)]
struct PySvoTuple {
    tweet_id: String,
    subject: String,
    verb: String,
    object: String,
    negated: bool,
}

#[pymethods]
impl PySvoTuple {
    fn __repr__(&self) -> String {
        let mark = if self.negated { "!" } else { "" };
        format!(
            "SvoTuple({}, {} {}{} {})",
            self.tweet_id, self.subject, mark, self.verb, self.object
        )
    }
}

/// One merged world view with its trust components.
#[pyclass(frozen, get_all, name = "WorldView", module = "worldview")]
#[derive(Clone)]
struct PyWorldView {
    label: String,
    members: Vec<String>,
    member_count_no_rt: usize,
    x: f64,
    c: f64,
    s: f64,
}

#[pymethods]
impl PyWorldView {
    fn __repr__(&self) -> String {
        format!(
            "WorldView({:?}, members={}, s={:.3})",
            self.label,
            self.members.len(),
            self.s
        )
    }
}

/// The clustering engine: WordNet plus a slang table, loaded once.
#[pyclass(frozen, module = "worldview")]
struct Engine {
    db: LexicalDatabase,
    slang: SlangDictionary,
    trust: TrustConfig,
}

impl Engine {
    fn corpus_from(&self, tweets: Vec<(String, String, String)>) -> Corpus {
        Corpus::from_parts(
            tweets
                .iter()
                .map(|(id, author, text)| (id.as_str(), author.as_str(), text.as_str())),
        )
    }

    fn views_for(&self, corpus: &Corpus) -> PyResult<Clustered> {
        let clean: Vec<_> = corpus
            .tweets
            .iter()
            .map(|t| clean_pipeline(t, &self.slang))
            .collect();
        let extractor = SvoExtractor::new(&self.db);
        let tuples: Vec<_> = clean
            .iter()
            .flat_map(|t| extractor.svo_pipeline(t))
            .collect();
        let tree = build_tree(&tuples);
        let views = merge_clusters(&tree.base_clusters(), self.trust.min_cluster_size);
        let views = if views.is_empty() {
            views
        } else {
            score_trust(views, corpus, &self.trust).map_err(to_py_err)?
        };
        Ok(Clustered { clean, tree, views })
    }
}

#[pymethods]
impl Engine {
    /// Load WordNet from `wordnet_dir`; `slang_path` replaces the built-in
    /// slang table, and `trust_config` (TOML) replaces the default scoring.
    #[new]
    #[pyo3(signature = (wordnet_dir, slang_path=None, trust_config=None))]
    fn new(
        wordnet_dir: std::path::PathBuf,
        slang_path: Option<std::path::PathBuf>,
        trust_config: Option<std::path::PathBuf>,
    ) -> PyResult<Engine> {
        let db = LexicalDatabase::load(&wordnet_dir).map_err(to_py_err)?;
        let slang = match slang_path {
            Some(path) => SlangDictionary::from_path(&path).map_err(to_py_err)?,
            None => SlangDictionary::builtin().clone(),
        };
        let trust = match trust_config {
            Some(path) => TrustConfig::from_path(&path).map_err(to_py_err)?,
            None => TrustConfig::default(),
        };
        trust.validate().map_err(to_py_err)?;
        Ok(Engine { db, slang, trust })
    }

    /// The version line of the loaded WordNet database.
    fn wordnet_version(&self) -> String {
        self.db.version().to_string()
    }

    /// Clean one tweet text: syntax, tweet, and slang stages.
    fn clean(&self, text: &str) -> String {
        let tweet = Tweet::new("py0".into(), "@py".into(), text.into());
        clean_pipeline(&tweet, &self.slang).clean_text
    }

    /// Extract SVO tuples from one tweet text.
    fn extract(&self, text: &str) -> Vec<PySvoTuple> {
        let tweet = Tweet::new("py0".into(), "@py".into(), text.into());
        let clean = clean_pipeline(&tweet, &self.slang);
        SvoExtractor::new(&self.db)
            .svo_pipeline(&clean)
            .into_iter()
            .map(|t| PySvoTuple {
                tweet_id: t.tweet_id,
                subject: t.subject,
                verb: t.verb,
                object: t.object,
                negated: t.negated,
            })
            .collect()
    }

    /// Cluster `(id, author, text)` tweets into trust-scored world views.
    fn cluster(&self, tweets: Vec<(String, String, String)>) -> PyResult<Vec<PyWorldView>> {
        let corpus = self.corpus_from(tweets);
        let run = self.views_for(&corpus)?;
        Ok(run
            .views
            .into_iter()
            .map(|v| {
                let trust = v.trust.unwrap_or(worldview_core::worldview::TrustScore {
                    x: 0.0,
                    c: 0.0,
                    s: 0.0,
                    w_size: self.trust.w_size,
                    w_agency: self.trust.w_agency,
                });
                PyWorldView {
                    label: v.label(),
                    members: v.members.iter().cloned().collect(),
                    member_count_no_rt: v.member_count_no_rt,
                    x: trust.x,
                    c: trust.c,
                    s: trust.s,
                }
            })
            .collect())
    }

    /// Render the HTML tag cloud for `(id, author, text)` tweets.
    #[pyo3(signature = (tweets, font_min=14, font_max=40))]
    fn render_html(
        &self,
        tweets: Vec<(String, String, String)>,
        font_min: u32,
        font_max: u32,
    ) -> PyResult<String> {
        let corpus = self.corpus_from(tweets);
        let run = self.views_for(&corpus)?;
        let document = build_report(&run.views, &corpus, &run.clean, self.db.version(), "")
            .map_err(to_py_err)?;
        Ok(render_tagcloud(&document, font_min, font_max))
    }

    /// The JSON report for `(id, author, text)` tweets.
    fn report_json(&self, tweets: Vec<(String, String, String)>) -> PyResult<String> {
        let corpus = self.corpus_from(tweets);
        let run = self.views_for(&corpus)?;
        let document = build_report(&run.views, &corpus, &run.clean, self.db.version(), "")
            .map_err(to_py_err)?;
        Ok(to_json(&document))
    }

    /// The semantic suffix tree for `(id, author, text)` tweets, as
    /// indented text.
    fn dump_tree(&self, tweets: Vec<(String, String, String)>) -> PyResult<String> {
        let corpus = self.corpus_from(tweets);
        let run = self.views_for(&corpus)?;
        Ok(run.tree.dump())
    }
}

#[pymodule]
fn worldview(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Engine>()?;
    m.add_class::<PySvoTuple>()?;
    m.add_class::<PyWorldView>()?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
