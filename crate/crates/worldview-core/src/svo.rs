//! Part-of-speech tagging, clause segmentation, negation detection, and
//! Subject-Verb-Object tuple extraction.
//!
//! The tagger is lexicon-first: a built-in closed-class word list decides
//! determiners, pronouns, prepositions, conjunctions, auxiliaries, and
//! negation tokens; WordNet attestation decides the open classes. Ambiguous
//! words (attested at several parts of speech) are resolved by a second
//! left-to-right pass of positional rules — determiner/adjective precedes
//! noun, auxiliary precedes verb, infinitive "to" precedes verb, a clause
//! gets at most one rule-assigned main verb — with a fixed priority order as
//! the fallback. The tagger is deterministic and self-contained; it is not a
//! general-purpose tagger and its limits are deliberate.
//!
//! Extraction then takes, per clause, the head of the last noun group before
//! the main verb as subject and the head of the first noun group after it as
//! object, normalizes all three slots ([`LexicalDatabase::lemmatize`], verbs
//! to present tense), attaches synset sets (pseudo-synsets for words WordNet
//! does not know), and flags negation.

use std::collections::BTreeSet;
use std::ops::Range;

use crate::cleaning::CleanTweet;
use crate::wordnet::{LexicalDatabase, Pos, SynKey};

/// Part-of-speech tag assigned to one token.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tag {
    Noun,
    Verb,
    Aux,
    Adj,
    Adv,
    Det,
    Pron,
    Prep,
    Conj,
    Neg,
    Punct,
    Other,
}

impl Tag {
    fn pos(self) -> Option<Pos> {
        match self {
            Tag::Noun => Some(Pos::Noun),
            Tag::Verb => Some(Pos::Verb),
            Tag::Adj => Some(Pos::Adj),
            Tag::Adv => Some(Pos::Adv),
            _ => None,
        }
    }
}

/// One tagged token of clean text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedToken {
    /// The token as it appears in the clean text (punctuation attached).
    pub surface: String,
    /// Base form: lemmatized for open-class tags, lowercased core otherwise.
    pub lemma: String,
    pub tag: Tag,
    /// Byte offset into the original tweet text.
    pub span: usize,
}

/// One extracted Subject-Verb-Object tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvoTuple {
    pub subject: String,
    /// Present-tense verb lemma (the negation mark lives in `negated`).
    pub verb: String,
    pub object: String,
    pub negated: bool,
    pub tweet_id: String,
    pub subject_syn: BTreeSet<SynKey>,
    pub verb_syn: BTreeSet<SynKey>,
    pub object_syn: BTreeSet<SynKey>,
}

const DETERMINERS: &[&str] = &[
    "a", "an", "the", "this", "these", "those", "each", "every", "some", "any", "several", "many",
    "few", "both", "all", "most", "much", "another", "such", "which", "what", "whose",
];

const PRONOUNS: &[&str] = &[
    "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us", "them", "who", "whom",
    "there", "that",
];

const PREPOSITIONS: &[&str] = &[
    "at", "in", "on", "of", "for", "to", "with", "from", "by", "about", "near", "after", "before",
    "during", "against", "between", "into", "over", "under", "around", "behind", "off", "across",
    "toward", "towards",
];

const CONJUNCTIONS: &[&str] = &["and", "but", "or", "nor", "so", "yet"];

const AUXILIARIES: &[&str] = &[
    "am", "is", "are", "was", "were", "be", "been", "being", "has", "have", "had", "do", "does",
    "did", "will", "would", "can", "could", "shall", "should", "may", "might", "must",
];

/// Negation tokens (fixed list): not, no, never, n't, cannot, unable, without.
pub const NEGATIONS: &[&str] = &["not", "no", "never", "n't", "cannot", "unable", "without"];

/// Negation words an auxiliary may be separated from its verb by. "no" and
/// "without" negate nominals, not verbs, so they end the scan instead.
const VERBAL_NEGATIONS: &[&str] = &["not", "never", "n't", "cannot", "unable"];

fn closed_class(core: &str) -> Option<Tag> {
    if NEGATIONS.contains(&core) {
        Some(Tag::Neg)
    } else if DETERMINERS.contains(&core) {
        Some(Tag::Det)
    } else if PRONOUNS.contains(&core) {
        Some(Tag::Pron)
    } else if PREPOSITIONS.contains(&core) {
        Some(Tag::Prep)
    } else if CONJUNCTIONS.contains(&core) {
        Some(Tag::Conj)
    } else if AUXILIARIES.contains(&core) {
        Some(Tag::Aux)
    } else {
        None
    }
}

/// Strip clause punctuation from both ends of a token; the tags look at the
/// core, clause segmentation at the trailing punctuation.
fn token_core(surface: &str) -> &str {
    surface.trim_matches(|c: char| matches!(c, '.' | ',' | ':' | ';' | '!' | '?'))
}

fn ends_clause(surface: &str) -> bool {
    surface
        .chars()
        .last()
        .is_some_and(|c| matches!(c, '.' | ':' | ';' | '!'))
}

/// Attestation profile of a word across the four open classes.
#[derive(Debug, Clone, Copy, Default)]
struct OpenClass {
    noun: bool,
    verb: bool,
    adj: bool,
    adv: bool,
}

impl OpenClass {
    fn count(self) -> usize {
        usize::from(self.noun)
            + usize::from(self.verb)
            + usize::from(self.adj)
            + usize::from(self.adv)
    }

    fn sole_tag(self) -> Option<Tag> {
        if self.count() != 1 {
            return None;
        }
        Some(self.priority_tag())
    }

    /// Fixed fallback priority: noun > verb > adj > adv.
    fn priority_tag(self) -> Tag {
        if self.noun {
            Tag::Noun
        } else if self.verb {
            Tag::Verb
        } else if self.adj {
            Tag::Adj
        } else {
            Tag::Adv
        }
    }
}

/// Extracts SVO tuples against a loaded lexical database.
pub struct SvoExtractor<'a> {
    db: &'a LexicalDatabase,
}

impl<'a> SvoExtractor<'a> {
    pub fn new(db: &'a LexicalDatabase) -> SvoExtractor<'a> {
        SvoExtractor { db }
    }

    /// Tag every whitespace token of clean text. Spans are byte offsets into
    /// `clean_text` itself; [`SvoExtractor::svo_pipeline`] substitutes the
    /// original-tweet offsets from the span map.
    pub fn tag_pos(&self, clean_text: &str) -> Vec<TaggedToken> {
        let mut words = Vec::new();
        let mut pos = 0;
        for word in clean_text.split_whitespace() {
            let offset = clean_text[pos..].find(word).expect("word comes from text") + pos;
            pos = offset + word.len();
            words.push((word.to_string(), offset));
        }
        self.tag_words(words)
    }

    fn tag_words(&self, words: Vec<(String, usize)>) -> Vec<TaggedToken> {
        struct Slot {
            surface: String,
            core_lower: String,
            span: usize,
            tag: Option<Tag>,
            open: OpenClass,
        }

        // Pass 1: closed-class lookup, unambiguous open-class words, and
        // -ing/-ed forms that WordNet attests as verbs.
        let mut slots: Vec<Slot> = words
            .into_iter()
            .map(|(surface, span)| {
                let core = token_core(&surface);
                let core_lower = core.to_lowercase();
                let mut open = OpenClass::default();
                let tag = if core.is_empty() {
                    Some(Tag::Punct)
                } else if let Some(tag) = closed_class(&core_lower) {
                    Some(tag)
                } else if core.chars().all(|c| c.is_ascii_digit()) {
                    Some(Tag::Other)
                } else {
                    open = OpenClass {
                        noun: self.db.is_attested(core, Pos::Noun),
                        verb: self.db.is_attested(core, Pos::Verb),
                        adj: self.db.is_attested(core, Pos::Adj),
                        adv: self.db.is_attested(core, Pos::Adv),
                    };
                    if open.count() == 0 {
                        if core_lower.ends_with("ly") {
                            Some(Tag::Adv)
                        } else {
                            Some(Tag::Noun)
                        }
                    } else if let Some(sole) = open.sole_tag() {
                        Some(sole)
                    } else if open.verb
                        && (core_lower.ends_with("ing") || core_lower.ends_with("ed"))
                    {
                        Some(Tag::Verb)
                    } else {
                        None
                    }
                };
                Slot {
                    surface,
                    core_lower,
                    span,
                    tag,
                    open,
                }
            })
            .collect();

        // Pass 2: resolve the remaining ambiguous words left to right within
        // provisional clauses (clause punctuation bounds the context used).
        let mut start = 0;
        while start < slots.len() {
            let mut end = start;
            while end < slots.len() {
                let boundary =
                    slots[end].tag == Some(Tag::Punct) || ends_clause(&slots[end].surface);
                end += 1;
                if boundary {
                    break;
                }
            }
            for i in start..end {
                if slots[i].tag.is_some() {
                    continue;
                }
                let open = slots[i].open;
                let tag = 'rule: {
                    // (a) After a determiner or adjective, prefer noun.
                    if i > start {
                        if let Some(prev) = slots[i - 1].tag {
                            if matches!(prev, Tag::Det | Tag::Adj) {
                                if open.noun {
                                    break 'rule Tag::Noun;
                                }
                                if open.adj {
                                    break 'rule Tag::Adj;
                                }
                            }
                        }
                    }
                    if open.verb {
                        // (b) An auxiliary reaching this word through adverbs,
                        // verbal negations, and infinitive "to" makes it a verb
                        // ("is running", "are currently unable to run").
                        for j in (start..i).rev() {
                            let skip = slots[j].tag == Some(Tag::Adv)
                                || VERBAL_NEGATIONS.contains(&slots[j].core_lower.as_str())
                                || slots[j].core_lower == "to";
                            if skip {
                                continue;
                            }
                            if slots[j].tag == Some(Tag::Aux) {
                                break 'rule Tag::Verb;
                            }
                            break;
                        }
                        // (c) Infinitive marker directly before.
                        if i > start && slots[i - 1].core_lower == "to" {
                            break 'rule Tag::Verb;
                        }
                        // (d) First verb slot of the clause: something to act
                        // as subject came earlier and no verb is tagged yet
                        // (pass-1 verbs later in the clause count).
                        let clause_has_verb =
                            slots[start..end].iter().any(|s| s.tag == Some(Tag::Verb));
                        let earlier_nominal = slots[start..i]
                            .iter()
                            .any(|s| matches!(s.tag, Some(Tag::Noun) | Some(Tag::Pron)));
                        if !clause_has_verb && earlier_nominal {
                            break 'rule Tag::Verb;
                        }
                    }
                    // (e) Fallback priority.
                    open.priority_tag()
                };
                slots[i].tag = Some(tag);
            }
            start = end;
        }

        slots
            .into_iter()
            .map(|slot| {
                let tag = slot.tag.expect("both passes assign a tag");
                let lemma = match tag.pos() {
                    Some(pos) => {
                        let core = token_core(&slot.surface);
                        self.db.lemmatize(core, pos)
                    }
                    None if slot.core_lower.is_empty() => slot.surface.clone(),
                    None => slot.core_lower.clone(),
                };
                TaggedToken {
                    surface: slot.surface,
                    lemma,
                    tag,
                    span: slot.span,
                }
            })
            .collect()
    }

    /// Extract the tuple of one tagged clause: the head of the last noun
    /// group before the main verb, the first non-auxiliary verb (present
    /// tense), and the head of the first noun group after it. Returns nothing
    /// when any slot is unfillable.
    pub fn extract_svo(&self, clause: &[TaggedToken], tweet_id: &str) -> Option<SvoTuple> {
        let verb_idx = clause.iter().position(|t| t.tag == Tag::Verb)?;
        let subject = noun_groups(&clause[..verb_idx]).pop()?;
        let object = noun_groups(&clause[verb_idx + 1..]).into_iter().next()?;

        let verb_token = &clause[verb_idx];
        let verb = self.db.to_present(&verb_token.lemma);
        let negated = detect_negation(clause, verb_idx);

        let syn = |token: &TaggedToken| -> BTreeSet<SynKey> {
            if token.tag == Tag::Pron {
                BTreeSet::from([SynKey::pseudo(&token.lemma)])
            } else {
                self.db.synsets_or_pseudo(&token.lemma, Pos::Noun)
            }
        };

        Some(SvoTuple {
            subject: subject.lemma.clone(),
            object: object.lemma.clone(),
            subject_syn: syn(subject),
            object_syn: syn(object),
            verb_syn: self.db.synsets_or_pseudo(&verb, Pos::Verb),
            verb,
            negated,
            tweet_id: tweet_id.to_string(),
        })
    }

    /// Run tagging, clause segmentation, and extraction over one clean tweet,
    /// stamping each tuple with the tweet id. Spans refer to the original
    /// tweet text via the clean tweet's span map.
    pub fn svo_pipeline(&self, clean: &CleanTweet) -> Vec<SvoTuple> {
        let words: Vec<(String, usize)> = clean
            .words()
            .map(str::to_string)
            .zip(clean.span_map.iter().copied())
            .collect();
        let tokens = self.tag_words(words);
        segment_clauses(&tokens)
            .into_iter()
            .filter_map(|range| self.extract_svo(&tokens[range], &clean.tweet_id))
            .collect()
    }
}

/// A noun group's head token: the last noun or pronoun of a contiguous run
/// of determiner/adjective/noun/pronoun tokens. A determiner starts a new
/// group and a pronoun forms a group of its own.
fn noun_groups(tokens: &[TaggedToken]) -> Vec<&TaggedToken> {
    let mut heads: Vec<&TaggedToken> = Vec::new();
    // Head-so-far of the currently open group; groups whose run contains no
    // noun or pronoun (a bare determiner or adjective) contribute no head.
    let mut current: Option<&TaggedToken> = None;
    for token in tokens {
        match token.tag {
            // A determiner starts a fresh group.
            Tag::Det => {
                heads.extend(current.take());
            }
            // A pronoun is a group of its own.
            Tag::Pron => {
                heads.extend(current.take());
                heads.push(token);
            }
            Tag::Adj => {}
            Tag::Noun => {
                current = Some(token);
            }
            // Anything else ends the group.
            _ => {
                heads.extend(current.take());
            }
        }
    }
    heads.extend(current.take());
    heads
}

/// Split tagged tokens into clause spans: a hard break after clause
/// punctuation (`. : ; !`), and a break at a coordinating conjunction with a
/// non-auxiliary verb on both sides. The conjunction closes the left clause;
/// no token is lost.
pub fn segment_clauses(tokens: &[TaggedToken]) -> Vec<Range<usize>> {
    let mut clauses = Vec::new();
    let mut seg_start = 0;
    for i in 0..tokens.len() {
        let hard = tokens[i].tag == Tag::Punct || ends_clause(&tokens[i].surface);
        if hard || i + 1 == tokens.len() {
            let seg_end = i + 1;
            let mut clause_start = seg_start;
            for k in seg_start..seg_end {
                if tokens[k].tag != Tag::Conj {
                    continue;
                }
                let left = tokens[clause_start..k].iter().any(|t| t.tag == Tag::Verb);
                let right = tokens[k + 1..seg_end].iter().any(|t| t.tag == Tag::Verb);
                if left && right {
                    clauses.push(clause_start..k + 1);
                    clause_start = k + 1;
                }
            }
            if clause_start < seg_end {
                clauses.push(clause_start..seg_end);
            }
            seg_start = seg_end;
        }
    }
    clauses
}

/// True when a negation token scopes the clause's main verb: anywhere before
/// it, or within two tokens after it.
pub fn detect_negation(clause: &[TaggedToken], verb_idx: usize) -> bool {
    clause
        .iter()
        .enumerate()
        .any(|(i, t)| t.tag == Tag::Neg && i <= verb_idx + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cleaning::{clean_pipeline, SlangDictionary};
    use crate::corpus::Tweet;
    use crate::wordnet::LexicalDatabase;
    use std::path::PathBuf;

    fn db() -> &'static LexicalDatabase {
        use std::sync::OnceLock;
        static DB: OnceLock<LexicalDatabase> = OnceLock::new();
        DB.get_or_init(|| {
            let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/wordnet");
            LexicalDatabase::load(&dir).expect("fixture loads")
        })
    }

    fn tags(text: &str) -> Vec<Tag> {
        SvoExtractor::new(db())
            .tag_pos(text)
            .iter()
            .map(|t| t.tag)
            .collect()
    }

    fn tuples(text: &str) -> Vec<SvoTuple> {
        let tweet = Tweet::new("t".into(), "@u".into(), text.into());
        let clean = clean_pipeline(&tweet, SlangDictionary::builtin());
        SvoExtractor::new(db()).svo_pipeline(&clean)
    }

    fn triple(t: &SvoTuple) -> (String, String, String) {
        (t.subject.clone(), t.verb.clone(), t.object.clone())
    }

    #[test]
    fn tags_p1() {
        assert_eq!(
            tags("David ate lunch"),
            vec![Tag::Noun, Tag::Verb, Tag::Noun]
        );
    }

    #[test]
    fn tags_t1() {
        assert_eq!(
            tags("the FAA issued a flight restriction"),
            vec![
                Tag::Det,
                Tag::Noun,
                Tag::Verb,
                Tag::Det,
                Tag::Noun,
                Tag::Noun
            ]
        );
    }

    #[test]
    fn tags_empty() {
        assert!(tags("").is_empty());
    }

    #[test]
    fn tags_t2() {
        assert_eq!(
            tags("New images show suspect: Massachusetts police released several images"),
            vec![
                Tag::Adj,
                Tag::Noun,
                Tag::Verb,
                Tag::Noun,
                Tag::Noun,
                Tag::Noun,
                Tag::Verb,
                Tag::Det,
                Tag::Noun,
            ]
        );
    }

    #[test]
    fn aux_chain_resolves_verb() {
        assert_eq!(
            tags("services are currently unable to run"),
            vec![
                Tag::Noun,
                Tag::Aux,
                Tag::Adv,
                Tag::Neg,
                Tag::Prep,
                Tag::Verb
            ]
        );
    }

    #[test]
    fn nominal_negation_does_not_make_service_a_verb() {
        assert_eq!(
            tags("there is no service running at Paddington"),
            vec![
                Tag::Pron,
                Tag::Aux,
                Tag::Neg,
                Tag::Noun,
                Tag::Verb,
                Tag::Prep,
                Tag::Noun,
            ]
        );
    }

    #[test]
    fn tagging_is_deterministic() {
        let text = "Massachusetts police released several images";
        assert_eq!(tags(text), tags(text));
    }

    #[test]
    fn segments_t2_into_two_clauses() {
        let tokens = SvoExtractor::new(db())
            .tag_pos("New images show suspect: Massachusetts police released several images");
        let clauses = segment_clauses(&tokens);
        assert_eq!(clauses.len(), 2);
        assert_eq!(clauses[0], 0..4);
        assert_eq!(clauses[1], 4..9);
    }

    #[test]
    fn single_clause_stays_whole() {
        let tokens = SvoExtractor::new(db()).tag_pos("David ate lunch");
        assert_eq!(segment_clauses(&tokens), vec![0..3]);
    }

    #[test]
    fn conjunction_between_verbs_splits() {
        let tokens = SvoExtractor::new(db()).tag_pos("police arrived and medics helped");
        let clauses = segment_clauses(&tokens);
        assert_eq!(clauses.len(), 2);
        assert_eq!(clauses[0], 0..3);
        assert_eq!(clauses[1], 3..5);
    }

    #[test]
    fn conjunction_without_two_verbs_does_not_split() {
        let tokens = SvoExtractor::new(db()).tag_pos("police released images and names");
        assert_eq!(segment_clauses(&tokens).len(), 1);
    }

    #[test]
    fn no_token_is_lost_in_segmentation() {
        for text in [
            "New images show suspect: Massachusetts police released several images",
            "police arrived and medics helped",
            "David ate lunch",
        ] {
            let tokens = SvoExtractor::new(db()).tag_pos(text);
            let clauses = segment_clauses(&tokens);
            let covered: usize = clauses.iter().map(|c| c.len()).sum();
            assert_eq!(covered, tokens.len());
            for pair in clauses.windows(2) {
                assert_eq!(pair[0].end, pair[1].start);
            }
        }
    }

    #[test]
    fn negation_examples() {
        let ex = SvoExtractor::new(db());
        let tokens = ex.tag_pos("services are currently unable to run");
        let verb = tokens.iter().position(|t| t.tag == Tag::Verb).unwrap();
        assert!(detect_negation(&tokens, verb));

        let tokens = ex.tag_pos("there is no service running at Paddington");
        let verb = tokens.iter().position(|t| t.tag == Tag::Verb).unwrap();
        assert!(detect_negation(&tokens, verb));

        let tokens = ex.tag_pos("police confirm explosion");
        let verb = tokens.iter().position(|t| t.tag == Tag::Verb).unwrap();
        assert!(!detect_negation(&tokens, verb));
    }

    #[test]
    fn extracts_p1() {
        let got = tuples("David ate lunch");
        assert_eq!(got.len(), 1);
        assert_eq!(
            triple(&got[0]),
            ("David".into(), "eat".into(), "lunch".into())
        );
        assert!(!got[0].negated);
        assert_eq!(got[0].tweet_id, "t");
    }

    #[test]
    fn extracts_t1_from_raw_retweet() {
        let got = tuples("RT @ABC: The FAA issued a flight restriction http://t.co/x");
        assert_eq!(got.len(), 1);
        assert_eq!(
            triple(&got[0]),
            ("FAA".into(), "issue".into(), "restriction".into())
        );
    }

    #[test]
    fn extracts_both_t2_tuples() {
        let got = tuples("New images show suspect: Massachusetts police released several images");
        let triples: Vec<_> = got.iter().map(triple).collect();
        assert_eq!(
            triples,
            vec![
                ("image".into(), "show".into(), "suspect".into()),
                ("police".into(), "release".into(), "image".into()),
            ]
        );
    }

    #[test]
    fn unfillable_subject_yields_nothing() {
        assert!(tuples("quickly ran away").is_empty());
    }

    #[test]
    fn empty_clean_text_yields_nothing() {
        assert!(tuples("").is_empty());
        assert!(tuples("http://a.b").is_empty());
    }

    #[test]
    fn negated_service_tuple() {
        let got = tuples("no service running at Paddington");
        assert_eq!(got.len(), 1);
        assert_eq!(
            triple(&got[0]),
            ("service".into(), "run".into(), "Paddington".into())
        );
        assert!(got[0].negated);
    }

    #[test]
    fn verbs_are_present_tense_and_fixed() {
        for text in [
            "David ate lunch",
            "Massachusetts police released several images",
            "Trains are running at Waterloo",
            "Service never runs at Paddington",
        ] {
            for tuple in tuples(text) {
                assert_eq!(db().to_present(&tuple.verb), tuple.verb, "{text}");
            }
        }
    }

    #[test]
    fn pronoun_subject_gets_pseudo_synset() {
        let got = tuples("they closed the station");
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].subject, "they");
        assert_eq!(got[0].subject_syn, BTreeSet::from([SynKey::pseudo("they")]));
    }

    #[test]
    fn spans_point_into_the_original_tweet() {
        let raw = "RT @x: David ate lunch";
        let tweet = Tweet::new("t".into(), "@u".into(), raw.into());
        let clean = clean_pipeline(&tweet, SlangDictionary::builtin());
        let tokens = {
            let words: Vec<(String, usize)> = clean
                .words()
                .map(str::to_string)
                .zip(clean.span_map.iter().copied())
                .collect();
            SvoExtractor::new(db()).tag_words(words)
        };
        assert_eq!(tokens[0].surface, "David");
        assert!(raw[tokens[0].span..].starts_with("David"));
        assert!(raw[tokens[1].span..].starts_with("ate"));
    }

    /// Hand-labeled clause fixture: text, subject, verb, object, negated
    /// ('-' marks "no tuple expected").
    #[test]
    fn agrees_with_hand_labeled_clauses() {
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/clauses.tsv");
        let raw = std::fs::read_to_string(&path).expect("clause fixture exists");
        let ex = SvoExtractor::new(db());
        let mut checked = 0;
        for (i, line) in raw.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            assert_eq!(cols.len(), 5, "line {}: expected 5 columns", i + 1);
            let (text, subject, verb, object, negated) =
                (cols[0], cols[1], cols[2], cols[3], cols[4]);
            let tweet = Tweet::new(format!("c{i}"), "@u".into(), text.to_string());
            let clean = clean_pipeline(&tweet, SlangDictionary::builtin());
            let got = ex.svo_pipeline(&clean);
            if subject == "-" {
                assert!(
                    got.is_empty(),
                    "line {}: {text:?} should yield no tuple",
                    i + 1
                );
            } else {
                assert!(
                    !got.is_empty(),
                    "line {}: {text:?} should yield a tuple",
                    i + 1
                );
                let t = &got[0];
                assert_eq!(t.subject, subject, "line {}: subject of {text:?}", i + 1);
                assert_eq!(t.verb, verb, "line {}: verb of {text:?}", i + 1);
                assert_eq!(t.object, object, "line {}: object of {text:?}", i + 1);
                assert_eq!(
                    t.negated,
                    negated == "true",
                    "line {}: negation of {text:?}",
                    i + 1
                );
            }
            checked += 1;
        }
        assert!(
            checked >= 50,
            "expected at least 50 labeled clauses, got {checked}"
        );
    }

    /// Negation soundness: within the fixture, any clause containing a
    /// negation token scoped to its main verb must yield a negated tuple.
    #[test]
    fn negation_soundness_on_fixture() {
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/clauses.tsv");
        let raw = std::fs::read_to_string(&path).expect("clause fixture exists");
        let ex = SvoExtractor::new(db());
        for line in raw.lines() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let text = line.split('\t').next().unwrap();
            let tweet = Tweet::new("n".into(), "@u".into(), text.to_string());
            let clean = clean_pipeline(&tweet, SlangDictionary::builtin());
            let tokens = ex.tag_pos(&clean.clean_text);
            for range in segment_clauses(&tokens) {
                let clause = &tokens[range];
                let Some(verb_idx) = clause.iter().position(|t| t.tag == Tag::Verb) else {
                    continue;
                };
                if let Some(tuple) = ex.extract_svo(clause, "n") {
                    if detect_negation(clause, verb_idx) {
                        assert!(tuple.negated, "clause of {text:?} lost its negation");
                    }
                }
            }
        }
    }
}
