#!/usr/bin/env python3
"""Build the vocabulary-restricted WordNet fixture shipped with the test suite.

Reads a full Princeton WordNet 3.0 database directory (wndb format) and a
vocabulary file, and writes a small but format-faithful subset:

- index.{noun,verb,adj,adv}: the index lines for vocabulary lemmas, with
  synset offsets remapped to their positions in the subset data files.
- data.{noun,verb,adj,adv}: every synset referenced by a kept index line,
  re-offset, with inter-synset pointers dropped (p_cnt becomes 000) since the
  subset cannot guarantee pointer targets exist. Member words, lexicographer
  ids, verb frames, and glosses are copied verbatim.
- {noun,verb,adj,adv}.exc: exception lines mentioning a vocabulary word;
  their base forms are added to the vocabulary transitively so lemmatization
  candidates stay attested.

The original license header (lines starting with two spaces) is preserved at
the top of every index/data file, exactly as wndb readers expect.

Usage:
    python3 tools/make_wordnet_fixture.py <full-dict-dir> <vocab-file> <out-dir>
"""

import sys
from pathlib import Path

POS_FILES = {"n": "noun", "v": "verb", "a": "adj", "r": "adv"}

NOUN_RULES = [("s", ""), ("ses", "s"), ("sses", "ss"), ("xes", "x"), ("zes", "z"),
              ("ches", "ch"), ("shes", "sh"), ("men", "man"), ("ies", "y")]
VERB_RULES = [("s", ""), ("ies", "y"), ("es", "e"), ("es", ""),
              ("ed", "e"), ("ed", ""), ("ing", "e"), ("ing", "")]
ADJ_RULES = [("er", ""), ("est", ""), ("er", "e"), ("est", "e")]
RULES = {"n": NOUN_RULES, "v": VERB_RULES, "a": ADJ_RULES, "r": []}


def read_vocab(path):
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            words.add(line.lower())
    return words


def split_header(path):
    header, body = [], []
    for line in path.read_text(encoding="utf-8").splitlines(keepends=True):
        (header if line.startswith("  ") else body).append(line)
    return header, body


def build(full_dir, vocab_path, out_dir):
    full_dir, out_dir = Path(full_dir), Path(out_dir)
    vocab = read_vocab(vocab_path)
    out_dir.mkdir(parents=True, exist_ok=True)

    # Pass 1: exception files; close the vocabulary over base forms.
    exc_lines = {}
    for pos, name in POS_FILES.items():
        kept = []
        for line in (full_dir / f"{name}.exc").read_text(encoding="utf-8").splitlines():
            words = line.split()
            if words and any(w in vocab for w in words):
                kept.append(line)
                vocab.update(words)
        exc_lines[pos] = kept

    # Pass 2: index lines for vocabulary lemmas; collect referenced offsets.
    index_rows = {}   # pos -> list of (lemma, fields)
    wanted = {}       # pos -> set of old offsets
    for pos, name in POS_FILES.items():
        rows, offs = [], set()
        _, body = split_header(full_dir / f"index.{name}")
        for line in body:
            fields = line.split()
            if not fields or fields[0] not in vocab:
                continue
            p_cnt = int(fields[3])
            offsets = fields[6 + p_cnt:]
            rows.append((fields, offsets))
            offs.update(offsets)
        index_rows[pos] = rows
        wanted[pos] = offs

    # Pass 3: data lines, re-offset, pointers dropped.
    for pos, name in POS_FILES.items():
        header, body = split_header(full_dir / f"data.{name}")
        kept = []
        for line in body:
            off = line.split(" ", 1)[0]
            if off in wanted[pos]:
                kept.append(line.rstrip("\n"))
        found = {l.split(" ", 1)[0] for l in kept}
        missing = wanted[pos] - found
        assert not missing, f"data.{name}: unresolved offsets {sorted(missing)[:5]}"

        # Rewrite each line: new offset + pointer section dropped.
        rewritten = []
        for line in kept:
            fields = line.split(" ")
            old_off, lex_filenum, ss_type = fields[0], fields[1], fields[2]
            w_cnt = int(fields[3], 16)
            i = 4 + 2 * w_cnt                      # past "word lex_id" pairs
            words = fields[4:i]
            p_cnt = int(fields[i])
            i += 1 + 4 * p_cnt                     # past "sym offset pos st" quads
            rest = fields[i:]                      # verb frames + "|" + gloss
            new = [old_off, lex_filenum, ss_type, fields[3], *words, "000", *rest]
            rewritten.append((old_off, " ".join(new)))

        # Assign new offsets: byte position of each line start in the new file.
        header_text = "".join(header)
        remap, out_lines, pos_cursor = {}, [], len(header_text.encode("utf-8"))
        for old_off, text in rewritten:
            new_off = f"{pos_cursor:08d}"
            remap[old_off] = new_off
            final = new_off + text[8:] + "  \n"
            out_lines.append(final)
            pos_cursor += len(final.encode("utf-8"))
        (out_dir / f"data.{name}").write_text(header_text + "".join(out_lines),
                                              encoding="utf-8")

        # Rewrite the index with remapped offsets.
        idx_header, _ = split_header(full_dir / f"index.{name}")
        idx_out = []
        for fields, offsets in index_rows[pos]:
            p_cnt = int(fields[3])
            head = fields[: 6 + p_cnt]
            idx_out.append(" ".join(head + [remap[o] for o in offsets]) + "  \n")
        (out_dir / f"index.{name}").write_text("".join(idx_header) + "".join(idx_out),
                                               encoding="utf-8")

        (out_dir / f"{name}.exc").write_text(
            "".join(l + "\n" for l in exc_lines[pos]), encoding="utf-8")

    return vocab


# ---------------------------------------------------------------------------
# Validation: re-read the subset with an independent mini-reader and assert
# the lexical facts the test suite depends on.

def load_subset(d):
    idx, exc = {}, {}
    for pos, name in POS_FILES.items():
        table = {}
        for line in (d / f"index.{name}").read_text(encoding="utf-8").splitlines():
            if line.startswith("  "):
                continue
            f = line.split()
            p_cnt = int(f[3])
            table[f[0]] = f[6 + p_cnt:]
        idx[pos] = table
        table = {}
        for line in (d / f"{name}.exc").read_text(encoding="utf-8").splitlines():
            f = line.split()
            if f:
                table[f[0]] = f[1:]
        exc[pos] = table
    return idx, exc


def morphy(idx, exc, word, pos):
    w = word.lower()
    cands = list(exc[pos].get(w, []))
    for suf, add in RULES[pos]:
        if w.endswith(suf) and len(w) > len(suf):
            cands.append(w[: len(w) - len(suf)] + add)
    for c in cands:
        if c in idx[pos]:
            return c
    return w


def validate(out_dir):
    d = Path(out_dir)
    idx, exc = load_subset(d)

    # Every index offset resolves to a data line at exactly that byte position,
    # and the line's first field equals the offset.
    for pos, name in POS_FILES.items():
        blob = (d / f"data.{name}").read_bytes()
        for lemma, offsets in idx[pos].items():
            for off in offsets:
                at = int(off)
                line = blob[at:blob.index(b"\n", at)].decode("utf-8")
                assert line.startswith(off + " "), (lemma, off, line[:40])

    def synsets(word, pos):
        return set(idx[pos].get(morphy(idx, exc, word, pos), []))

    def ov(a, b, pos):
        return len(synsets(a, pos) & synsets(b, pos))

    must = [("car", "automobile", "n"), ("explosion", "detonation", "n"),
            ("gunman", "shooter", "n"), ("lunch", "luncheon", "n"),
            ("confirm", "corroborate", "v"), ("attack", "assault", "v"),
            ("run", "operate", "v"), ("drive", "motor", "v")]
    for a, b, p in must:
        assert ov(a, b, p) >= 1, f"lost overlap {a}~{b}"

    disjoint_n = [(a, b) for a in ["police", "officer", "explosion", "detonation"]
                  for b in ["service", "train", "gunman", "shooter", "resort", "hotel"]]
    disjoint_n += [(a, b) for a in ["service", "train"]
                   for b in ["gunman", "shooter", "resort", "hotel"]]
    for a, b in disjoint_n:
        assert ov(a, b, "n") == 0, f"unexpected noun overlap {a}~{b}"
    disjoint_v = [(a, b) for a in ["confirm", "corroborate"]
                  for b in ["run", "operate", "attack", "assault"]]
    disjoint_v += [(a, b) for a in ["run", "operate"] for b in ["attack", "assault"]]
    for a, b in disjoint_v:
        assert ov(a, b, "v") == 0, f"unexpected verb overlap {a}~{b}"

    traces = [("images", "n", "image"), ("men", "n", "man"), ("ate", "v", "eat"),
              ("gave", "v", "give"), ("was", "v", "be"), ("running", "v", "run"),
              ("issued", "v", "issue"), ("released", "v", "release"),
              ("services", "n", "service"), ("news", "n", "news")]
    for w, p, want in traces:
        got = morphy(idx, exc, w, p)
        assert got == want, f"morphy({w},{p}) = {got}, want {want}"

    assert "paddington" not in idx["n"] and "new" not in idx["n"]
    assert "faa" in idx["n"] and "ate" in idx["n"]
    total = sum(len(t) for t in idx.values())
    size = sum((d / f).stat().st_size for f in
               [f"{k}.{n}" for n in POS_FILES.values() for k in ("index", "data")])
    print(f"fixture OK: {total} index entries, {size} bytes of index+data")


if __name__ == "__main__":
    if len(sys.argv) != 4:
        sys.exit(__doc__)
    build(sys.argv[1], sys.argv[2], sys.argv[3])
    validate(sys.argv[3])
