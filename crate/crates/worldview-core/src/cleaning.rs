//! The three-stage text cleaning pipeline: syntax cleaning, tweet cleaning,
//! and slang expansion.
//!
//! Raw post text is converted to plain-ASCII natural language in a fixed
//! order: [`clean_syntax`] unescapes HTML entities, transliterates accented
//! characters, and drops symbol punctuation; [`clean_tweet`] removes Twitter
//! artifacts (URLs, mentions, emoticons, retweet prefixes, hashtag marks)
//! and records each removal; [`expand_slang`] replaces colloquial tokens with
//! standard English. Clause delimiters (`. , : ; ! ?`) and apostrophes
//! survive cleaning because later stages segment clauses and look up
//! contractions; stop words are never removed, since the tagger needs them.
//!
//! Every clean word carries a byte offset back into the original text
//! (`span_map`), so reports can point at the source of any extracted word.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use crate::corpus::Tweet;
use crate::error::{Error, Result};

/// Kind of artifact removed by the tweet-cleaning stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RemovedKind {
    /// A URL token (`http://…`, `https://…`, `www.…`).
    Url,
    /// An `@handle` mention, including any trailing punctuation.
    Mention,
    /// The `#` marker of a hashtag; the word itself is kept.
    HashtagMark,
    /// An ASCII emoticon from the built-in inventory.
    Emoticon,
    /// The leading `RT` of a retweet prefix.
    RtPrefix,
}

/// One removed artifact with its text and byte offset in the original tweet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovedArtifact {
    pub kind: RemovedKind,
    pub text: String,
    pub offset: usize,
}

/// Cleaned tweet text with per-word pointers back into the raw text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleanTweet {
    /// Id of the tweet this text came from.
    pub tweet_id: String,
    /// Space-joined clean words; pure ASCII.
    pub clean_text: String,
    /// Byte offset into the original text for each word of `clean_text`.
    /// Words introduced by a multi-word slang expansion share the offset of
    /// the token they replaced.
    pub span_map: Vec<usize>,
    /// Artifacts removed by the tweet-cleaning stage, in scan order.
    pub removed: Vec<RemovedArtifact>,
}

impl CleanTweet {
    /// True when cleaning reduced the tweet to nothing. Empty tweets are
    /// retained (not dropped) so corpus counts stay stable for trust math.
    pub fn is_empty(&self) -> bool {
        self.clean_text.is_empty()
    }

    /// The clean words in order, parallel to `span_map`.
    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.clean_text.split_whitespace()
    }
}

/// Dictionary mapping colloquial tokens to standard-English expansions.
#[derive(Debug, Clone, Default)]
pub struct SlangDictionary {
    entries: BTreeMap<String, String>,
}

impl SlangDictionary {
    /// The dictionary bundled with the crate (`resources/slang.tsv`).
    pub fn builtin() -> &'static SlangDictionary {
        static BUILTIN: OnceLock<SlangDictionary> = OnceLock::new();
        BUILTIN.get_or_init(|| {
            SlangDictionary::parse("builtin slang.tsv", include_str!("../resources/slang.tsv"))
                .expect("bundled slang.tsv must parse")
        })
    }

    /// Load a dictionary from a `token<TAB>expansion` file; `#` starts a
    /// comment and blank lines are ignored.
    pub fn from_path(path: &Path) -> Result<SlangDictionary> {
        let raw = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        SlangDictionary::parse(&path.display().to_string(), &raw)
    }

    fn parse(source: &str, raw: &str) -> Result<SlangDictionary> {
        let mut entries = BTreeMap::new();
        for (i, line) in raw.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let (token, expansion) = line.split_once('\t').ok_or_else(|| Error::Malformed {
                path: source.into(),
                line: i + 1,
                message: "expected token<TAB>expansion".to_string(),
            })?;
            let token = token.trim().to_lowercase();
            let expansion = expansion.trim().to_string();
            if token.is_empty() || expansion.is_empty() {
                return Err(Error::Malformed {
                    path: source.into(),
                    line: i + 1,
                    message: "token and expansion must be nonempty".to_string(),
                });
            }
            entries.insert(token, expansion);
        }
        Ok(SlangDictionary { entries })
    }

    /// Look up the expansion for a lowercase token.
    pub fn get(&self, token: &str) -> Option<&str> {
        self.entries.get(token).map(String::as_str)
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// True when the dictionary has no entries.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Iterate over `(token, expansion)` pairs in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

/// ASCII emoticons removed by the tweet-cleaning stage (whole-token match).
pub const EMOTICONS: &[&str] = &[
    ":)", ":-)", ":(", ":-(", ":D", ":-D", ":P", ":-P", ":p", ":-p", ";)", ";-)", ";P", ";D", ";(",
    ":/", ":-/", ":\\", ":-\\", ":|", ":-|", ":o", ":O", ":-o", ":-O", ":*", ":-*", ":'(", ":'-(",
    ":')", "D:", "D-:", "xD", "XD", "=)", "=(", "=D", "=P", "=/", "=\\", "=]", "=[", ":]", ":[",
    ":>", ":<", ":3", ":x", ":X", ":s", ":S", "<3", "</3", "^_^", "^^", "-_-", "o_O", "O_o", "o_o",
    "O_O", "T_T", ";_;", ">:(", ">:-(", "B)", "B-)", "8)", "8-)", "c:", ":c", ":C",
];

fn is_emoticon(token: &str) -> bool {
    EMOTICONS.contains(&token)
}

/// A clean-text word plus the byte offset of its source in the original text.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Token {
    text: String,
    offset: usize,
}

/// Punctuation that survives cleaning: clause delimiters plus apostrophe.
fn is_kept_punct(c: char) -> bool {
    matches!(c, '.' | ',' | ':' | ';' | '!' | '?' | '\'')
}

/// Transliterate one non-ASCII character, or drop it.
fn fold_char(c: char) -> Option<&'static str> {
    Some(match c {
        '\u{2019}' | '\u{2018}' | '\u{00b4}' | '`' => "'",
        '\u{2026}' => ".",
        'à' | 'á' | 'â' | 'ã' | 'ä' | 'å' => "a",
        'À' | 'Á' | 'Â' | 'Ã' | 'Ä' | 'Å' => "A",
        'è' | 'é' | 'ê' | 'ë' => "e",
        'È' | 'É' | 'Ê' | 'Ë' => "E",
        'ì' | 'í' | 'î' | 'ï' => "i",
        'Ì' | 'Í' | 'Î' | 'Ï' => "I",
        'ò' | 'ó' | 'ô' | 'õ' | 'ö' | 'ø' => "o",
        'Ò' | 'Ó' | 'Ô' | 'Õ' | 'Ö' | 'Ø' => "O",
        'ù' | 'ú' | 'û' | 'ü' => "u",
        'Ù' | 'Ú' | 'Û' | 'Ü' => "U",
        'ç' => "c",
        'Ç' => "C",
        'ñ' => "n",
        'Ñ' => "N",
        'ý' | 'ÿ' => "y",
        'š' => "s",
        'Š' => "S",
        'ž' => "z",
        'Ž' => "Z",
        'ß' => "ss",
        'æ' => "ae",
        'Æ' => "Ae",
        'œ' => "oe",
        'Œ' => "Oe",
        _ => return None,
    })
}

/// Decode the few HTML entities that occur in feeds into `(char, offset)`
/// pairs, where the offset is the byte position of the entity (or character)
/// in the original text.
fn decode_entities(text: &str) -> Vec<(char, usize)> {
    let mut out = Vec::with_capacity(text.len());
    let bytes = text.as_bytes();
    let mut iter = text.char_indices().peekable();
    while let Some((i, c)) = iter.next() {
        if c != '&' {
            out.push((c, i));
            continue;
        }
        let rest = &text[i..];
        let end = rest.find(';').filter(|&e| e <= 10);
        let Some(end) = end else {
            out.push((c, i));
            continue;
        };
        let entity = &rest[1..end];
        let decoded = match entity {
            "amp" => Some('&'),
            "lt" => Some('<'),
            "gt" => Some('>'),
            "quot" => Some('"'),
            "apos" => Some('\''),
            "nbsp" => Some(' '),
            _ => entity
                .strip_prefix('#')
                .and_then(|num| {
                    if let Some(hex) = num.strip_prefix('x').or_else(|| num.strip_prefix('X')) {
                        u32::from_str_radix(hex, 16).ok()
                    } else {
                        num.parse::<u32>().ok()
                    }
                })
                .and_then(char::from_u32),
        };
        match decoded {
            Some(d) => {
                out.push((d, i));
                // Skip the entity body: advance past `end` bytes plus ';'.
                while let Some(&(j, _)) = iter.peek() {
                    if j <= i + end {
                        iter.next();
                    } else {
                        break;
                    }
                }
                debug_assert!(i + end < bytes.len());
            }
            None => out.push((c, i)),
        }
    }
    out
}

/// True for tokens that must pass through syntax cleaning untouched so the
/// tweet-cleaning stage can see them whole.
fn is_protected(token: &str) -> bool {
    let lower_ascii = token.to_ascii_lowercase();
    lower_ascii.starts_with("http://")
        || lower_ascii.starts_with("https://")
        || lower_ascii.starts_with("www.")
        || (token.starts_with('@') && token.len() > 1)
        || is_emoticon(token)
}

/// Tokenize and syntax-clean raw text: entities decoded, accents folded to
/// ASCII, symbol punctuation dropped, clause punctuation and apostrophes
/// kept. URLs, mentions, and emoticons pass through whole for the next stage.
fn syntax_tokens(text: &str) -> Vec<Token> {
    let decoded = decode_entities(text);
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < decoded.len() {
        while i < decoded.len() && decoded[i].0.is_whitespace() {
            i += 1;
        }
        let start = i;
        while i < decoded.len() && !decoded[i].0.is_whitespace() {
            i += 1;
        }
        if start == i {
            continue;
        }
        let raw: String = decoded[start..i].iter().map(|&(c, _)| c).collect();
        let offset = decoded[start].1;
        if is_protected(&raw) {
            tokens.push(Token { text: raw, offset });
            continue;
        }
        // Hashtags keep their marker for the next stage but the word part is
        // normalized like any other token.
        let (prefix, body) = match raw.strip_prefix('#') {
            Some(body) if !body.is_empty() => ("#", body),
            _ => ("", raw.as_str()),
        };
        let mut clean = String::with_capacity(body.len());
        for c in body.chars() {
            if c.is_ascii_alphanumeric() || is_kept_punct(c) {
                clean.push(c);
            } else if let Some(mapped) = fold_char(c) {
                clean.push_str(mapped);
            }
        }
        if prefix.is_empty() && clean.is_empty() {
            continue;
        }
        tokens.push(Token {
            text: format!("{prefix}{clean}"),
            offset,
        });
    }
    tokens
}

/// Remove Twitter artifacts from syntax-cleaned tokens, recording each.
fn tweet_clean_tokens(tokens: Vec<Token>) -> (Vec<Token>, Vec<RemovedArtifact>) {
    let mut kept = Vec::with_capacity(tokens.len());
    let mut removed = Vec::new();
    let retweet_prefix = tokens.len() >= 2
        && tokens[0].text.eq_ignore_ascii_case("rt")
        && tokens[1].text.starts_with('@');

    for (i, token) in tokens.into_iter().enumerate() {
        if i == 0 && retweet_prefix {
            removed.push(RemovedArtifact {
                kind: RemovedKind::RtPrefix,
                text: token.text,
                offset: token.offset,
            });
            continue;
        }
        let lower_ascii = token.text.to_ascii_lowercase();
        if lower_ascii.starts_with("http://")
            || lower_ascii.starts_with("https://")
            || lower_ascii.starts_with("www.")
        {
            removed.push(RemovedArtifact {
                kind: RemovedKind::Url,
                text: token.text,
                offset: token.offset,
            });
            continue;
        }
        if token.text.starts_with('@') {
            removed.push(RemovedArtifact {
                kind: RemovedKind::Mention,
                text: token.text,
                offset: token.offset,
            });
            continue;
        }
        if is_emoticon(&token.text) {
            removed.push(RemovedArtifact {
                kind: RemovedKind::Emoticon,
                text: token.text,
                offset: token.offset,
            });
            continue;
        }
        if let Some(body) = token.text.strip_prefix('#') {
            let marks = token.text.len() - token.text.trim_start_matches('#').len();
            removed.push(RemovedArtifact {
                kind: RemovedKind::HashtagMark,
                text: token.text[..marks].to_string(),
                offset: token.offset,
            });
            let body = body.trim_start_matches('#');
            if !body.is_empty() {
                kept.push(Token {
                    text: body.to_string(),
                    offset: token.offset + marks,
                });
            }
            continue;
        }
        kept.push(token);
    }
    (kept, removed)
}

/// Expand slang tokens via whole-word, case-insensitive dictionary lookup.
/// Trailing clause punctuation is preserved on the last expansion word.
fn expand_slang_tokens(tokens: Vec<Token>, dict: &SlangDictionary) -> Vec<Token> {
    let mut out = Vec::with_capacity(tokens.len());
    for token in tokens {
        let core_end = token
            .text
            .rfind(|c: char| !matches!(c, '.' | ',' | ':' | ';' | '!' | '?'))
            .map(|i| i + token.text[i..].chars().next().map_or(1, char::len_utf8))
            .unwrap_or(0);
        let (core, trailing) = token.text.split_at(core_end);
        match dict.get(&core.to_lowercase()) {
            Some(expansion) if !core.is_empty() => {
                let words: Vec<&str> = expansion.split_whitespace().collect();
                for (i, word) in words.iter().enumerate() {
                    let mut text = (*word).to_string();
                    if i + 1 == words.len() {
                        text.push_str(trailing);
                    }
                    out.push(Token {
                        text,
                        offset: token.offset,
                    });
                }
            }
            _ => out.push(token),
        }
    }
    out
}

fn join_tokens(tokens: &[Token]) -> String {
    tokens
        .iter()
        .map(|t| t.text.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Syntax-clean raw text: HTML entities unescaped, characters transliterated
/// or stripped to ASCII, punctuation removed except clause delimiters and
/// apostrophes, whitespace collapsed to single spaces.
pub fn clean_syntax(text: &str) -> String {
    join_tokens(&syntax_tokens(text))
}

/// Remove URLs, emoticons, mentions, hashtag marks, and retweet prefixes
/// from (syntax-cleaned) text; returns the remaining text and the removal
/// list with original spans.
pub fn clean_tweet(text: &str) -> (String, Vec<RemovedArtifact>) {
    let tokens = split_with_offsets(text);
    let (kept, removed) = tweet_clean_tokens(tokens);
    (join_tokens(&kept), removed)
}

/// Replace every whole-word, case-insensitive dictionary hit with its
/// expansion; non-hits are unchanged.
pub fn expand_slang(text: &str, dict: &SlangDictionary) -> String {
    let tokens = split_with_offsets(text);
    join_tokens(&expand_slang_tokens(tokens, dict))
}

fn split_with_offsets(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut rest = text;
    let mut base = 0;
    while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
        let after = &rest[start..];
        let end = after.find(char::is_whitespace).unwrap_or(after.len());
        tokens.push(Token {
            text: after[..end].to_string(),
            offset: base + start,
        });
        base += start + end;
        rest = &after[end..];
    }
    tokens
}

/// Run the full cleaning pipeline (syntax → tweet → slang) over one tweet.
///
/// A tweet that cleans to nothing yields a `CleanTweet` with empty
/// `clean_text` rather than being dropped.
pub fn clean_pipeline(tweet: &Tweet, dict: &SlangDictionary) -> CleanTweet {
    let tokens = syntax_tokens(&tweet.text);
    let (tokens, removed) = tweet_clean_tokens(tokens);
    let tokens = expand_slang_tokens(tokens, dict);
    CleanTweet {
        tweet_id: tweet.id.clone(),
        clean_text: join_tokens(&tokens),
        span_map: tokens.iter().map(|t| t.offset).collect(),
        removed,
    }
}
