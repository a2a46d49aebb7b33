//! Corpus loading and retweet detection.
//!
//! A corpus is an ordered list of posts ("tweets"), each with a unique id, an
//! author handle, and a raw text body. Input comes from JSON Lines (one
//! object per line with keys `id`, `author`, `text`, and optional `label`) or
//! from CSV with an `id,author,text[,label]` header. Gold labels are only
//! used by the evaluation harness; they must cover every tweet or none.

use std::collections::HashSet;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single post as loaded from disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tweet {
    /// Unique identifier within the corpus.
    pub id: String,
    /// Author handle, e.g. `@BBCNews`.
    pub author: String,
    /// Raw UTF-8 post body.
    pub text: String,
    /// True iff the text begins with a retweet prefix (`RT @handle:` or
    /// `RT @handle `, case-insensitive on `RT`).
    pub is_retweet: bool,
    /// The handle named in the retweet prefix, when one parses.
    pub retweet_of_author: Option<String>,
}

/// An ordered, immutable tweet collection with optional gold labels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    /// Tweets in input order.
    pub tweets: Vec<Tweet>,
    /// Per-tweet class labels, parallel to `tweets`; present only when every
    /// input record carried a `label` field.
    pub gold_labels: Option<Vec<String>>,
}

/// Supported on-disk corpus encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusFormat {
    /// JSON Lines: one object per line.
    Jsonl,
    /// RFC 4180 CSV with a header row.
    Csv,
}

impl CorpusFormat {
    /// Guess the format from a file extension (`.jsonl`/`.json` vs `.csv`).
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()? {
            "jsonl" | "json" | "ndjson" => Some(CorpusFormat::Jsonl),
            "csv" => Some(CorpusFormat::Csv),
            _ => None,
        }
    }
}

impl std::str::FromStr for CorpusFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "jsonl" => Ok(CorpusFormat::Jsonl),
            "csv" => Ok(CorpusFormat::Csv),
            other => Err(format!(
                "unknown corpus format {other:?} (expected jsonl or csv)"
            )),
        }
    }
}

/// One record as it appears on disk, before retweet detection.
#[derive(Debug, Clone, Deserialize)]
struct RawRecord {
    id: String,
    author: String,
    text: String,
    #[serde(default)]
    label: Option<String>,
}

/// Decide whether `text` is a retweet and extract the source handle.
///
/// A post is a retweet iff it begins, case-insensitively on the `RT` marker,
/// with `RT @<handle>:` or `RT @<handle> ` where `<handle>` is one or more
/// word characters. Returns the handle including its `@`.
pub fn detect_retweet(text: &str) -> (bool, Option<String>) {
    let bytes = text.as_bytes();
    if bytes.len() < 5
        || !bytes[0].eq_ignore_ascii_case(&b'r')
        || !bytes[1].eq_ignore_ascii_case(&b't')
    {
        return (false, None);
    }
    if bytes[2] != b' ' || bytes[3] != b'@' {
        return (false, None);
    }
    let rest = &text[4..];
    let handle_len = rest
        .bytes()
        .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
        .count();
    if handle_len == 0 {
        return (false, None);
    }
    match rest.as_bytes().get(handle_len) {
        Some(b':') | Some(b' ') => (true, Some(format!("@{}", &rest[..handle_len]))),
        _ => (false, None),
    }
}

impl Corpus {
    /// Build a corpus from raw `(id, author, text)` triples, applying retweet
    /// detection. Intended for tests and embedding; file input should use
    /// [`load_corpus`].
    pub fn from_parts<I, S>(parts: I) -> Corpus
    where
        I: IntoIterator<Item = (S, S, S)>,
        S: Into<String>,
    {
        let tweets = parts
            .into_iter()
            .map(|(id, author, text)| Tweet::new(id.into(), author.into(), text.into()))
            .collect();
        Corpus {
            tweets,
            gold_labels: None,
        }
    }

    /// Number of tweets.
    pub fn len(&self) -> usize {
        self.tweets.len()
    }

    /// True when the corpus holds no tweets.
    pub fn is_empty(&self) -> bool {
        self.tweets.is_empty()
    }

    /// Look up a tweet by id (linear; corpora are modest and this is rare).
    pub fn get(&self, id: &str) -> Option<&Tweet> {
        self.tweets.iter().find(|t| t.id == id)
    }
}

impl Tweet {
    /// Construct a tweet, deriving the retweet fields from the text.
    pub fn new(id: String, author: String, text: String) -> Tweet {
        let (is_retweet, retweet_of_author) = detect_retweet(&text);
        Tweet {
            id,
            author,
            text,
            is_retweet,
            retweet_of_author,
        }
    }
}

/// Load a corpus from `path` in the given format.
///
/// Input order is preserved, retweet detection is applied to every record,
/// duplicate ids and malformed records are reported with their line number,
/// and gold labels must cover all records or none.
pub fn load_corpus(path: &Path, format: CorpusFormat) -> Result<Corpus> {
    let mut file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut raw = String::new();
    file.read_to_string(&mut raw)
        .map_err(|e| Error::io(path, e))?;

    let records = match format {
        CorpusFormat::Jsonl => parse_jsonl(path, &raw)?,
        CorpusFormat::Csv => parse_csv(path, &raw)?,
    };
    assemble(path, records)
}

fn parse_jsonl(path: &Path, raw: &str) -> Result<Vec<(usize, RawRecord)>> {
    let mut records = Vec::new();
    for (i, line) in raw.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: RawRecord = serde_json::from_str(line).map_err(|e| Error::Malformed {
            path: path.to_path_buf(),
            line: i + 1,
            message: e.to_string(),
        })?;
        records.push((i + 1, record));
    }
    Ok(records)
}

fn parse_csv(path: &Path, raw: &str) -> Result<Vec<(usize, RawRecord)>> {
    let mut reader = csv::Reader::from_reader(raw.as_bytes());
    let mut records = Vec::new();
    for result in reader.deserialize::<RawRecord>() {
        let record = result.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or_default();
            Error::Malformed {
                path: path.to_path_buf(),
                line,
                message: e.to_string(),
            }
        })?;
        records.push((records.len() + 2, record)); // +2: header row is line 1
    }
    Ok(records)
}

fn assemble(path: &Path, records: Vec<(usize, RawRecord)>) -> Result<Corpus> {
    let mut seen: HashSet<String> = HashSet::with_capacity(records.len());
    let mut tweets = Vec::with_capacity(records.len());
    let mut labels = Vec::with_capacity(records.len());
    let mut labeled = 0usize;

    for (line, record) in records {
        if !seen.insert(record.id.clone()) {
            return Err(Error::DuplicateId {
                path: path.to_path_buf(),
                line,
                id: record.id,
            });
        }
        if let Some(label) = &record.label {
            labeled += 1;
            labels.push(label.clone());
        }
        tweets.push(Tweet::new(record.id, record.author, record.text));
    }

    let gold_labels = match labeled {
        0 => None,
        n if n == tweets.len() => Some(labels),
        n => {
            return Err(Error::Malformed {
                path: path.to_path_buf(),
                line: 0,
                message: format!(
                    "gold labels must cover every record or none ({n} of {} labeled)",
                    tweets.len()
                ),
            })
        }
    };

    Ok(Corpus {
        tweets,
        gold_labels,
    })
}
