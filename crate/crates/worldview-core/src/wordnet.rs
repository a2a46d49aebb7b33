//! Native reader for Princeton WordNet database files (wndb format) and the
//! morphology layer built on top of them.
//!
//! [`LexicalDatabase::load`] parses `index.{noun,verb,adj,adv}`,
//! `data.{noun,verb,adj,adv}`, and `{noun,verb,adj,adv}.exc` from a dict
//! directory into an immutable in-memory database. Loading is all-or-nothing:
//! any malformed line fails the load with file and line number, and every
//! synset offset referenced by an index entry must resolve to a parsed data
//! line at exactly that byte position.
//!
//! On top of the raw tables sit morphy-style lemmatization (exception list
//! first, then suffix detachment; first attested candidate wins),
//! [`LexicalDatabase::synsets`] lookup with inflection handling, and
//! [`LexicalDatabase::to_present`] for verb tense normalization. Words absent
//! from WordNet are given a singleton pseudo-synset keyed by their lowercase
//! surface form (see [`SynKey`]) so proper nouns still match themselves.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

/// Part of speech, matching the four WordNet databases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pos {
    Noun,
    Verb,
    Adj,
    Adv,
}

impl Pos {
    pub const ALL: [Pos; 4] = [Pos::Noun, Pos::Verb, Pos::Adj, Pos::Adv];

    /// File-name component: `index.noun`, `verb.exc`, …
    pub fn file_key(self) -> &'static str {
        match self {
            Pos::Noun => "noun",
            Pos::Verb => "verb",
            Pos::Adj => "adj",
            Pos::Adv => "adv",
        }
    }

    fn idx(self) -> usize {
        match self {
            Pos::Noun => 0,
            Pos::Verb => 1,
            Pos::Adj => 2,
            Pos::Adv => 3,
        }
    }

    /// The synset-type character used in index files.
    fn index_char(self) -> char {
        match self {
            Pos::Noun => 'n',
            Pos::Verb => 'v',
            Pos::Adj => 'a',
            Pos::Adv => 'r',
        }
    }

    /// Whether a data-file `ss_type` character belongs to this database.
    /// Satellite adjectives (`s`) live in `data.adj`.
    fn accepts_ss_type(self, c: char) -> bool {
        match self {
            Pos::Adj => c == 'a' || c == 's',
            other => c == other.index_char(),
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.file_key())
    }
}

/// Identifier of one synset: part of speech plus database byte offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SynsetId {
    pub pos: Pos,
    pub offset: u64,
}

impl fmt::Display for SynsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:08}", self.pos, self.offset)
    }
}

/// One synset: its id, member words, and gloss.
#[derive(Debug, Clone)]
pub struct Synset {
    pub id: SynsetId,
    pub words: Vec<String>,
    pub gloss: String,
}

/// Key used for semantic matching: either a real WordNet synset or a
/// pseudo-synset for a word WordNet does not know. A pseudo key matches only
/// an identical pseudo key, so unknown proper nouns ("Paddington") still
/// cluster with themselves across tweets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SynKey {
    Db(SynsetId),
    Pseudo(String),
}

impl SynKey {
    /// Pseudo-synset for an out-of-vocabulary word (lowercased).
    pub fn pseudo(word: &str) -> SynKey {
        SynKey::Pseudo(word.to_lowercase())
    }
}

impl fmt::Display for SynKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SynKey::Db(id) => write!(f, "{id}"),
            SynKey::Pseudo(word) => write!(f, "~{word}"),
        }
    }
}

/// Morphy suffix-detachment rules per part of speech: `(suffix, replacement)`
/// applied in order when the word is strictly longer than the suffix.
fn detachments(pos: Pos) -> &'static [(&'static str, &'static str)] {
    match pos {
        Pos::Noun => &[
            ("s", ""),
            ("ses", "s"),
            ("ves", "f"),
            ("xes", "x"),
            ("zes", "z"),
            ("ches", "ch"),
            ("shes", "sh"),
            ("men", "man"),
            ("ies", "y"),
        ],
        Pos::Verb => &[
            ("s", ""),
            ("ies", "y"),
            ("es", "e"),
            ("es", ""),
            ("ed", "e"),
            ("ed", ""),
            ("ing", "e"),
            ("ing", ""),
        ],
        Pos::Adj => &[("er", ""), ("est", ""), ("er", "e"), ("est", "e")],
        Pos::Adv => &[],
    }
}

#[derive(Debug, Default)]
struct PosData {
    /// lemma (lowercase) → synset offsets, in index-file order.
    lemmas: BTreeMap<String, Vec<SynsetId>>,
    /// inflected form → base forms, in exception-file order.
    exceptions: BTreeMap<String, Vec<String>>,
}

/// Immutable, fully parsed WordNet database. Safe to share across threads.
#[derive(Debug)]
pub struct LexicalDatabase {
    version: String,
    synsets: BTreeMap<SynsetId, Synset>,
    by_pos: [PosData; 4],
    unresolved: Vec<(Pos, String)>,
}

impl LexicalDatabase {
    /// Load a wndb-format dict directory. All twelve files must be present
    /// and parse cleanly; otherwise the load fails as a whole.
    pub fn load(dir: &Path) -> Result<LexicalDatabase> {
        let mut missing: Vec<String> = Vec::new();
        for pos in Pos::ALL {
            for name in [
                format!("index.{}", pos.file_key()),
                format!("data.{}", pos.file_key()),
                format!("{}.exc", pos.file_key()),
            ] {
                if !dir.join(&name).is_file() {
                    missing.push(name);
                }
            }
        }
        if !missing.is_empty() {
            missing.sort();
            return Err(Error::WordnetMissing {
                dir: dir.to_path_buf(),
                missing,
            });
        }

        let mut db = LexicalDatabase {
            version: String::new(),
            synsets: BTreeMap::new(),
            by_pos: Default::default(),
            unresolved: Vec::new(),
        };

        for pos in Pos::ALL {
            db.load_data_file(&dir.join(format!("data.{}", pos.file_key())), pos)?;
        }
        for pos in Pos::ALL {
            db.load_index_file(&dir.join(format!("index.{}", pos.file_key())), pos)?;
        }
        for pos in Pos::ALL {
            db.load_exc_file(&dir.join(format!("{}.exc", pos.file_key())), pos)?;
        }

        // Flag exception entries whose base forms are all absent from the
        // index; they are kept (morphy skips unattested candidates anyway).
        for pos in Pos::ALL {
            for (inflected, bases) in &db.by_pos[pos.idx()].exceptions {
                if !bases
                    .iter()
                    .any(|b| db.by_pos[pos.idx()].lemmas.contains_key(b))
                {
                    db.unresolved.push((pos, inflected.clone()));
                }
            }
        }
        if db.version.is_empty() {
            db.version = "unknown".to_string();
        }
        Ok(db)
    }

    /// Database version extracted from the file headers (e.g. "3.0").
    pub fn version(&self) -> &str {
        &self.version
    }

    /// Number of distinct synsets.
    pub fn synset_count(&self) -> usize {
        self.synsets.len()
    }

    /// Number of (lemma, pos) index entries.
    pub fn lemma_count(&self) -> usize {
        self.by_pos.iter().map(|p| p.lemmas.len()).sum()
    }

    /// Look up a synset by id.
    pub fn synset(&self, id: SynsetId) -> Option<&Synset> {
        self.synsets.get(&id)
    }

    /// Exception entries whose base forms are not in the index, flagged at
    /// load time.
    pub fn unresolved_exceptions(&self) -> &[(Pos, String)] {
        &self.unresolved
    }

    /// All senses of a word at a part of speech, after morphy normalization
    /// of the input form. Unknown words yield the empty set.
    pub fn synsets(&self, word: &str, pos: Pos) -> BTreeSet<SynsetId> {
        let lower = word.to_lowercase();
        let mut out = BTreeSet::new();
        let data = &self.by_pos[pos.idx()];
        if let Some(ids) = data.lemmas.get(&lower) {
            out.extend(ids.iter().copied());
        }
        for candidate in self.morphy_candidates(&lower, pos) {
            if let Some(ids) = data.lemmas.get(&candidate) {
                out.extend(ids.iter().copied());
            }
        }
        out
    }

    /// True when the word (or a morphy form of it) has at least one sense at
    /// this part of speech.
    pub fn is_attested(&self, word: &str, pos: Pos) -> bool {
        let lower = word.to_lowercase();
        let data = &self.by_pos[pos.idx()];
        data.lemmas.contains_key(&lower)
            || self
                .morphy_candidates(&lower, pos)
                .iter()
                .any(|c| data.lemmas.contains_key(c))
    }

    /// Senses of a word, or its pseudo-synset when WordNet has none.
    pub fn synsets_or_pseudo(&self, word: &str, pos: Pos) -> BTreeSet<SynKey> {
        let ids = self.synsets(word, pos);
        if ids.is_empty() {
            BTreeSet::from([SynKey::pseudo(word)])
        } else {
            ids.into_iter().map(SynKey::Db).collect()
        }
    }

    /// Morphy candidate base forms for an already-lowercased word: exception
    /// bases first (file order), then detachment-rule outputs (rule order),
    /// deduplicated. Candidates are not filtered by attestation.
    pub fn morphy_candidates(&self, lower: &str, pos: Pos) -> Vec<String> {
        let mut candidates: Vec<String> = Vec::new();
        if let Some(bases) = self.by_pos[pos.idx()].exceptions.get(lower) {
            for base in bases {
                if !candidates.iter().any(|c| c == base) {
                    candidates.push(base.clone());
                }
            }
        }
        for &(suffix, replacement) in detachments(pos) {
            if lower.len() > suffix.len() && lower.ends_with(suffix) {
                let stem = &lower[..lower.len() - suffix.len()];
                let candidate = format!("{stem}{replacement}");
                if !candidates.iter().any(|c| c == &candidate) {
                    candidates.push(candidate);
                }
            }
        }
        candidates
    }

    /// Reduce a word to its base form: the first morphy candidate attested in
    /// the index, or the input unchanged when nothing is attested. Input case
    /// is preserved whenever the chosen base equals the lowercased input.
    pub fn lemmatize(&self, word: &str, pos: Pos) -> String {
        let lower = word.to_lowercase();
        for candidate in self.morphy_candidates(&lower, pos) {
            if self.by_pos[pos.idx()].lemmas.contains_key(&candidate) {
                return if candidate == lower {
                    word.to_string()
                } else {
                    candidate
                };
            }
        }
        word.to_string()
    }

    /// Normalize a verb to present tense. The exception lists carry the
    /// irregular table (was/is/are → be, gave → give, …), so this is
    /// lemmatization at the verb part of speech.
    pub fn to_present(&self, verb: &str) -> String {
        self.lemmatize(verb, Pos::Verb)
    }

    fn load_data_file(&mut self, path: &Path, pos: Pos) -> Result<()> {
        let contents = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut byte = 0usize;
        for (i, raw) in contents.split_inclusive('\n').enumerate() {
            let line_start = byte;
            byte += raw.len();
            let line = raw.trim_end_matches('\n').trim_end_matches('\r');
            if line.starts_with(' ') {
                self.scan_header(line);
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let synset = parse_data_line(line, line_start, pos, path, i + 1)?;
            if self.synsets.insert(synset.id, synset.clone()).is_some() {
                return Err(Error::WordnetParse {
                    path: path.to_path_buf(),
                    line: i + 1,
                    message: format!("duplicate synset offset {}", synset.id.offset),
                });
            }
        }
        Ok(())
    }

    fn load_index_file(&mut self, path: &Path, pos: Pos) -> Result<()> {
        let contents = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        for (i, line) in contents.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.starts_with(' ') {
                self.scan_header(line);
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let (lemma, ids) = parse_index_line(line, pos, path, i + 1)?;
            for id in &ids {
                if !self.synsets.contains_key(id) {
                    return Err(Error::WordnetParse {
                        path: path.to_path_buf(),
                        line: i + 1,
                        message: format!(
                            "index entry {lemma:?} references offset {:08} not present in data.{}",
                            id.offset,
                            pos.file_key()
                        ),
                    });
                }
            }
            if self.by_pos[pos.idx()]
                .lemmas
                .insert(lemma.clone(), ids)
                .is_some()
            {
                return Err(Error::WordnetParse {
                    path: path.to_path_buf(),
                    line: i + 1,
                    message: format!("duplicate index lemma {lemma:?}"),
                });
            }
        }
        Ok(())
    }

    fn load_exc_file(&mut self, path: &Path, pos: Pos) -> Result<()> {
        let contents = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        for (i, line) in contents.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.is_empty() || line.starts_with(' ') {
                continue;
            }
            let mut fields = line.split_whitespace().map(str::to_string);
            let inflected = fields.next().unwrap_or_default();
            let bases: Vec<String> = fields.collect();
            if inflected.is_empty() || bases.is_empty() {
                return Err(Error::WordnetParse {
                    path: path.to_path_buf(),
                    line: i + 1,
                    message: "expected: inflected-form base-form...".to_string(),
                });
            }
            self.by_pos[pos.idx()]
                .exceptions
                .entry(inflected)
                .or_default()
                .extend(bases);
        }
        Ok(())
    }

    fn scan_header(&mut self, line: &str) {
        if !self.version.is_empty() {
            return;
        }
        if let Some(start) = line.find("WordNet ") {
            let rest = &line[start + "WordNet ".len()..];
            if let Some(end) = rest.find(" Copyright") {
                self.version = rest[..end].to_string();
            }
        }
    }
}

/// Cursor over whitespace-separated fields with contextual error reporting.
struct Fields<'a> {
    iter: std::str::SplitWhitespace<'a>,
    path: &'a Path,
    line: usize,
}

impl<'a> Fields<'a> {
    fn new(line: &'a str, path: &'a Path, line_no: usize) -> Fields<'a> {
        Fields {
            iter: line.split_whitespace(),
            path,
            line: line_no,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::WordnetParse {
            path: self.path.to_path_buf(),
            line: self.line,
            message: message.into(),
        }
    }

    fn next(&mut self, what: &str) -> Result<&'a str> {
        self.iter
            .next()
            .ok_or_else(|| self.err(format!("missing field: {what}")))
    }

    fn next_usize(&mut self, what: &str, radix: u32) -> Result<usize> {
        let field = self.next(what)?;
        usize::from_str_radix(field, radix).map_err(|_| {
            self.err(format!(
                "field {what} is not a base-{radix} integer: {field:?}"
            ))
        })
    }

    fn next_u64(&mut self, what: &str) -> Result<u64> {
        let field = self.next(what)?;
        field
            .parse::<u64>()
            .map_err(|_| self.err(format!("field {what} is not an integer: {field:?}")))
    }

    fn next_char(&mut self, what: &str) -> Result<char> {
        let field = self.next(what)?;
        let mut chars = field.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Ok(c),
            _ => Err(self.err(format!("field {what} must be one character: {field:?}"))),
        }
    }

    fn finish(mut self) -> Result<()> {
        match self.iter.next() {
            None => Ok(()),
            Some(extra) => Err(self.err(format!("unexpected trailing field: {extra:?}"))),
        }
    }
}

/// Strip the adjective syntax markers `(p)`, `(a)`, `(ip)` from a data-file
/// member word.
fn strip_markers(word: &str) -> &str {
    for marker in ["(p)", "(a)", "(ip)"] {
        if let Some(stripped) = word.strip_suffix(marker) {
            return stripped;
        }
    }
    word
}

fn parse_data_line(
    line: &str,
    line_start: usize,
    pos: Pos,
    path: &Path,
    line_no: usize,
) -> Result<Synset> {
    let (head, gloss) = line.split_once('|').ok_or_else(|| Error::WordnetParse {
        path: path.to_path_buf(),
        line: line_no,
        message: "data line has no gloss separator '|'".to_string(),
    })?;
    let mut f = Fields::new(head, path, line_no);

    let offset = f.next_u64("synset_offset")?;
    if offset != line_start as u64 {
        return Err(f.err(format!(
            "declared offset {offset:08} does not match file position {line_start}"
        )));
    }
    let _lex_filenum = f.next("lex_filenum")?;
    let ss_type = f.next_char("ss_type")?;
    if !pos.accepts_ss_type(ss_type) {
        return Err(f.err(format!(
            "ss_type {ss_type:?} does not belong in data.{}",
            pos.file_key()
        )));
    }
    let w_cnt = f.next_usize("w_cnt", 16)?;
    if w_cnt == 0 {
        return Err(f.err("synset has no member words"));
    }
    let mut words = Vec::with_capacity(w_cnt);
    for _ in 0..w_cnt {
        let word = f.next("word")?;
        f.next_usize("lex_id", 16)?;
        words.push(strip_markers(word).to_string());
    }
    let p_cnt = f.next_usize("p_cnt", 10)?;
    for _ in 0..p_cnt {
        f.next("pointer_symbol")?;
        f.next_u64("pointer_offset")?;
        f.next_char("pointer_pos")?;
        let src_trg = f.next("source/target")?;
        if src_trg.len() != 4 || !src_trg.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(f.err(format!(
                "source/target must be four hex digits: {src_trg:?}"
            )));
        }
    }
    // Verb data lines append frame references: f_cnt then `+ f_num w_num`.
    if let Some(first) = f.iter.clone().next() {
        let f_cnt: usize = first
            .parse()
            .map_err(|_| f.err(format!("expected frame count, found {first:?}")))?;
        f.next("f_cnt")?;
        for _ in 0..f_cnt {
            let plus = f.next("frame marker")?;
            if plus != "+" {
                return Err(f.err(format!("expected frame marker '+', found {plus:?}")));
            }
            f.next_usize("f_num", 10)?;
            f.next_usize("w_num", 16)?;
        }
    }
    f.finish()?;

    Ok(Synset {
        id: SynsetId { pos, offset },
        words,
        gloss: gloss.trim().to_string(),
    })
}

fn parse_index_line(
    line: &str,
    pos: Pos,
    path: &Path,
    line_no: usize,
) -> Result<(String, Vec<SynsetId>)> {
    let mut f = Fields::new(line, path, line_no);
    let lemma = f.next("lemma")?.to_string();
    let pos_char = f.next_char("pos")?;
    if pos_char != pos.index_char() {
        return Err(f.err(format!(
            "pos field {pos_char:?} does not belong in index.{}",
            pos.file_key()
        )));
    }
    let synset_cnt = f.next_usize("synset_cnt", 10)?;
    if synset_cnt == 0 {
        return Err(f.err("synset_cnt must be positive"));
    }
    let p_cnt = f.next_usize("p_cnt", 10)?;
    for _ in 0..p_cnt {
        f.next("ptr_symbol")?;
    }
    let _sense_cnt = f.next_usize("sense_cnt", 10)?;
    let _tagsense_cnt = f.next_usize("tagsense_cnt", 10)?;
    let mut ids = Vec::with_capacity(synset_cnt);
    for _ in 0..synset_cnt {
        let offset = f.next_u64("synset_offset")?;
        ids.push(SynsetId { pos, offset });
    }
    f.finish()?;
    Ok((lemma, ids))
}

/// Cardinality of the intersection of two synset-key sets.
pub fn synset_overlap<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> usize {
    a.intersection(b).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn fixture_dir() -> PathBuf {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/wordnet")
    }

    fn db() -> &'static LexicalDatabase {
        use std::sync::OnceLock;
        static DB: OnceLock<LexicalDatabase> = OnceLock::new();
        DB.get_or_init(|| LexicalDatabase::load(&fixture_dir()).expect("fixture loads"))
    }

    #[test]
    fn load_reports_version() {
        assert_eq!(db().version(), "3.0");
    }

    #[test]
    fn synonyms_share_a_synset() {
        let car = db().synsets("car", Pos::Noun);
        let automobile = db().synsets("automobile", Pos::Noun);
        assert!(!car.is_empty());
        assert!(synset_overlap(&car, &automobile) >= 1);
    }

    #[test]
    fn unrelated_nouns_do_not_overlap() {
        let car = db().synsets("car", Pos::Noun);
        let explosion = db().synsets("explosion", Pos::Noun);
        assert_eq!(synset_overlap(&car, &explosion), 0);
    }

    #[test]
    fn overlap_of_a_set_with_itself_is_its_size() {
        let s = db().synsets("run", Pos::Verb);
        assert!(!s.is_empty());
        assert_eq!(synset_overlap(&s, &s), s.len());
    }

    #[test]
    fn unknown_word_has_no_synsets() {
        assert!(db().synsets("xqzt", Pos::Noun).is_empty());
    }

    #[test]
    fn inflected_form_resolves_to_base_senses() {
        assert_eq!(
            db().synsets("issued", Pos::Verb),
            db().synsets("issue", Pos::Verb)
        );
    }

    #[test]
    fn lemmatize_examples() {
        assert_eq!(db().lemmatize("images", Pos::Noun), "image");
        assert_eq!(db().lemmatize("gave", Pos::Verb), "give");
        assert_eq!(db().lemmatize("image", Pos::Noun), "image");
        assert_eq!(db().lemmatize("feet", Pos::Noun), "foot");
        assert_eq!(db().lemmatize("men", Pos::Noun), "man");
    }

    #[test]
    fn lemmatize_preserves_surface_case() {
        assert_eq!(db().lemmatize("David", Pos::Noun), "David");
        assert_eq!(db().lemmatize("FAA", Pos::Noun), "FAA");
        // "news" must not detach to "new": not attested as a noun.
        assert_eq!(db().lemmatize("News", Pos::Noun), "News");
        assert_eq!(db().lemmatize("Massachusetts", Pos::Noun), "Massachusetts");
    }

    #[test]
    fn lemmatize_leaves_unknown_words_alone() {
        assert_eq!(db().lemmatize("xqzt", Pos::Noun), "xqzt");
        assert_eq!(db().lemmatize("paddington", Pos::Noun), "paddington");
    }

    #[test]
    fn to_present_examples() {
        assert_eq!(db().to_present("gave"), "give");
        assert_eq!(db().to_present("released"), "release");
        assert_eq!(db().to_present("show"), "show");
        assert_eq!(db().to_present("was"), "be");
        assert_eq!(db().to_present("is"), "be");
        assert_eq!(db().to_present("are"), "be");
        assert_eq!(db().to_present("running"), "run");
        assert_eq!(db().to_present("runs"), "run");
        assert_eq!(db().to_present("ate"), "eat");
        assert_eq!(db().to_present("confirmed"), "confirm");
        assert_eq!(db().to_present("operating"), "operate");
    }

    #[test]
    fn lemmatize_and_to_present_are_idempotent() {
        for word in ["images", "gave", "released", "running", "leaves", "axes"] {
            for pos in Pos::ALL {
                let once = db().lemmatize(word, pos);
                assert_eq!(db().lemmatize(&once, pos), once, "{word} at {pos}");
            }
            let once = db().to_present(word);
            assert_eq!(db().to_present(&once), once);
        }
    }

    #[test]
    fn every_indexed_lemma_has_synsets() {
        for pos in Pos::ALL {
            for (lemma, ids) in &db().by_pos[pos.idx()].lemmas {
                assert!(!ids.is_empty());
                assert!(
                    !db().synsets(lemma, pos).is_empty(),
                    "indexed lemma {lemma:?} at {pos} must have senses"
                );
            }
        }
    }

    #[test]
    fn every_index_reference_resolves() {
        for pos in Pos::ALL {
            for ids in db().by_pos[pos.idx()].lemmas.values() {
                for id in ids {
                    let synset = db().synset(*id).expect("referenced synset exists");
                    assert!(!synset.words.is_empty());
                }
            }
        }
    }

    #[test]
    fn unresolved_exceptions_are_flagged_consistently() {
        for (pos, inflected) in db().unresolved_exceptions() {
            let bases = &db().by_pos[pos.idx()].exceptions[inflected];
            assert!(
                bases
                    .iter()
                    .all(|b| !db().by_pos[pos.idx()].lemmas.contains_key(b)),
                "{inflected:?} flagged but has an attested base"
            );
        }
        // The irregulars the pipeline depends on must all resolve.
        for word in ["ate", "was", "is", "are", "gave", "ran", "men", "feet"] {
            assert!(
                !db().unresolved_exceptions().iter().any(|(_, w)| w == word),
                "{word:?} must resolve"
            );
        }
    }

    #[test]
    fn pseudo_synsets_cover_unknown_words() {
        let a = db().synsets_or_pseudo("Paddington", Pos::Noun);
        let b = db().synsets_or_pseudo("paddington", Pos::Noun);
        assert_eq!(a, b);
        assert_eq!(synset_overlap(&a, &b), 1);
        let known = db().synsets_or_pseudo("car", Pos::Noun);
        assert_eq!(synset_overlap(&a, &known), 0);
        assert!(known.iter().all(|k| matches!(k, SynKey::Db(_))));
    }

    #[test]
    fn attestation_follows_synsets() {
        assert!(db().is_attested("issued", Pos::Verb));
        assert!(db().is_attested("ate", Pos::Verb));
        assert!(db().is_attested("ate", Pos::Noun)); // Ate, the Greek goddess
        assert!(!db().is_attested("paddington", Pos::Noun));
        assert!(!db().is_attested("gunman", Pos::Verb));
    }

    #[test]
    fn missing_directory_lists_missing_files() {
        let dir = tempfile::tempdir().unwrap();
        let err = LexicalDatabase::load(dir.path()).unwrap_err();
        match err {
            Error::WordnetMissing { missing, .. } => {
                assert_eq!(missing.len(), 12);
                assert!(missing.contains(&"index.noun".to_string()));
                assert!(missing.contains(&"adv.exc".to_string()));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    fn copy_fixture_to(dir: &Path) {
        for entry in std::fs::read_dir(fixture_dir()).unwrap() {
            let entry = entry.unwrap();
            std::fs::copy(entry.path(), dir.join(entry.file_name())).unwrap();
        }
    }

    #[test]
    fn truncated_data_file_reports_line_number() {
        let dir = tempfile::tempdir().unwrap();
        copy_fixture_to(dir.path());
        let data_path = dir.path().join("data.noun");
        let full = std::fs::read_to_string(&data_path).unwrap();
        // Cut the file in the middle of the final line's head so the line
        // loses structure (not merely gloss text).
        let trimmed = full.trim_end_matches('\n');
        let last_start = trimmed.rfind('\n').map_or(0, |p| p + 1);
        let bar = full[last_start..].find('|').unwrap() + last_start;
        std::fs::write(&data_path, &full[..bar - 5]).unwrap();
        let err = LexicalDatabase::load(dir.path()).unwrap_err();
        match err {
            Error::WordnetParse { path, line, .. } => {
                assert!(path.ends_with("data.noun"));
                assert!(line > 0);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn index_reference_to_missing_synset_fails_the_load() {
        let dir = tempfile::tempdir().unwrap();
        copy_fixture_to(dir.path());
        let index_path = dir.path().join("index.adv");
        let mut contents = std::fs::read_to_string(&index_path).unwrap();
        contents.push_str("zzzz r 1 0 1 0 99999999  \n");
        std::fs::write(&index_path, contents).unwrap();
        let err = LexicalDatabase::load(dir.path()).unwrap_err();
        match err {
            Error::WordnetParse { path, message, .. } => {
                assert!(path.ends_with("index.adv"));
                assert!(message.contains("99999999"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn malformed_index_line_reports_position() {
        let dir = tempfile::tempdir().unwrap();
        copy_fixture_to(dir.path());
        let index_path = dir.path().join("index.adj");
        let mut contents = std::fs::read_to_string(&index_path).unwrap();
        let lines_before = contents.lines().count();
        contents.push_str("broken a x\n");
        std::fs::write(&index_path, contents).unwrap();
        let err = LexicalDatabase::load(dir.path()).unwrap_err();
        match err {
            Error::WordnetParse { line, .. } => assert_eq!(line, lines_before + 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    /// Build a miniature dict in wndb format, with pointers and verb frames,
    /// to exercise the full line grammar (the bundled fixture carries no
    /// pointers).
    #[test]
    fn parses_pointer_and_frame_fields() {
        let dir = tempfile::tempdir().unwrap();
        let header = "  1 WordNet 3.0 Copyright 2006 by Princeton University.  \n";

        // data.noun: two synsets that point at each other.
        let mut data_noun = String::from(header);
        let first = header.len();
        let line1 =
            format!("{first:08} 03 n 02 car 0 auto 0 001 @ 00000000 n 0000 | a vehicle  \n");
        let second = first + line1.len();
        let line1 = line1.replace("@ 00000000", &format!("@ {second:08}"));
        let line2 = format!("{second:08} 03 n 01 machine 0 001 ~ {first:08} n 0000 | a device  \n");
        data_noun.push_str(&line1);
        data_noun.push_str(&line2);
        std::fs::write(dir.path().join("data.noun"), &data_noun).unwrap();
        std::fs::write(
            dir.path().join("index.noun"),
            format!("{header}car n 1 1 @ 1 0 {first:08}  \nmachine n 1 0 1 0 {second:08}  \n"),
        )
        .unwrap();

        // data.verb: one synset with two frames.
        let mut data_verb = String::from(header);
        let voff = header.len();
        let vline =
            format!("{voff:08} 29 v 01 drive 0 000 02 + 02 00 + 11 00 | operate a vehicle  \n");
        data_verb.push_str(&vline);
        std::fs::write(dir.path().join("data.verb"), &data_verb).unwrap();
        std::fs::write(
            dir.path().join("index.verb"),
            format!("{header}drive v 1 0 1 0 {voff:08}  \n"),
        )
        .unwrap();

        for pos in ["adj", "adv"] {
            std::fs::write(dir.path().join(format!("data.{pos}")), header).unwrap();
            std::fs::write(dir.path().join(format!("index.{pos}")), header).unwrap();
        }
        for pos in ["noun", "verb", "adj", "adv"] {
            std::fs::write(dir.path().join(format!("{pos}.exc")), "").unwrap();
        }

        let mini = LexicalDatabase::load(dir.path()).unwrap();
        assert_eq!(mini.version(), "3.0");
        assert_eq!(mini.synset_count(), 3);
        let car = mini.synsets("car", Pos::Noun);
        assert_eq!(car.len(), 1);
        let synset = mini.synset(*car.iter().next().unwrap()).unwrap();
        assert_eq!(synset.words, vec!["car", "auto"]);
        assert_eq!(synset.gloss, "a vehicle");
        assert_eq!(mini.lemmatize("drives", Pos::Verb), "drive");
    }

    #[test]
    fn adjective_markers_are_stripped() {
        assert_eq!(strip_markers("galore(ip)"), "galore");
        assert_eq!(strip_markers("bad"), "bad");
        assert_eq!(strip_markers("alive(p)"), "alive");
    }
}
