//! Depth-3 semantic suffix tree over subject–verb–object tuples.
//!
//! Every tuple (S, V, O) is inserted three times — as the suffixes (S, V, O),
//! (V, O), and (O) — so that tweets sharing only a verb–object pair, or only
//! an object, still meet in the tree. Descent compares *meanings*, not
//! strings: a child node matches an incoming item when their synset sets
//! overlap in at least one sense and their negation polarity is equal. The
//! first matching child in creation order wins; when nothing matches, a new
//! child is created and its synsets are fixed from the incoming item, never
//! widened afterwards.
//!
//! Each node then names a base cluster: the set of tweets whose suffix paths
//! pass through it, labeled by the words along the path from the root.
//! Negated verb nodes render with a `!` mark (`Service !run Paddington`).

use std::collections::BTreeSet;

use crate::svo::SvoTuple;
use crate::wordnet::{synset_overlap, SynKey};

/// A terminal label: which tweet ended a suffix at this node, and which of
/// the three suffixes it was (0 = full tuple, 1 = verb–object, 2 = object).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocLabel {
    pub tweet_id: String,
    pub suffix_start: usize,
}

/// One tree node. The display word and synsets are those of the item that
/// created the node; later items that merge into it leave both untouched.
#[derive(Debug, Clone)]
pub struct SstNode {
    word: String,
    synsets: BTreeSet<SynKey>,
    negated: bool,
    depth: usize,
    children: Vec<usize>,
    doc_labels: Vec<DocLabel>,
}

impl SstNode {
    /// The display word chosen when the node was created.
    pub fn word(&self) -> &str {
        &self.word
    }

    /// Whether this node sits on the negated side of a polarity split.
    pub fn negated(&self) -> bool {
        self.negated
    }

    /// Distance from the root (the root itself is depth 0).
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Terminal labels attached to this node, in insertion order.
    pub fn doc_labels(&self) -> &[DocLabel] {
        &self.doc_labels
    }

    /// Child node indices in creation order.
    pub fn children(&self) -> &[usize] {
        &self.children
    }

    /// The label segment this node contributes to a path: its word, with a
    /// `!` mark when the node is negated.
    pub fn label_segment(&self) -> String {
        if self.negated {
            format!("!{}", self.word)
        } else {
            self.word.clone()
        }
    }
}

/// A base cluster read off one tree node: the label path from the root and
/// the set of tweet ids whose suffixes pass through the node's subtree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseCluster {
    pub label_path: Vec<String>,
    pub doc_set: BTreeSet<String>,
}

impl BaseCluster {
    /// The human-readable label: path segments joined by spaces.
    pub fn label(&self) -> String {
        self.label_path.join(" ")
    }
}

/// The suffix tree itself. Nodes live in an arena; index 0 is the root.
#[derive(Debug, Clone)]
pub struct SvoSuffixTree {
    nodes: Vec<SstNode>,
}

impl Default for SvoSuffixTree {
    fn default() -> Self {
        Self::new()
    }
}

impl SvoSuffixTree {
    pub fn new() -> Self {
        SvoSuffixTree {
            nodes: vec![SstNode {
                word: String::new(),
                synsets: BTreeSet::new(),
                negated: false,
                depth: 0,
                children: Vec::new(),
                doc_labels: Vec::new(),
            }],
        }
    }

    /// Number of nodes excluding the root.
    pub fn node_count(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn node(&self, idx: usize) -> &SstNode {
        &self.nodes[idx]
    }

    pub fn root(&self) -> &SstNode {
        &self.nodes[0]
    }

    /// Insert one tuple as its three suffixes. Only the verb item carries the
    /// tuple's negation polarity; subjects and objects are always positive.
    pub fn insert(&mut self, tuple: &SvoTuple) {
        let items: [(&str, &BTreeSet<SynKey>, bool); 3] = [
            (&tuple.subject, &tuple.subject_syn, false),
            (&tuple.verb, &tuple.verb_syn, tuple.negated),
            (&tuple.object, &tuple.object_syn, false),
        ];
        for start in 0..items.len() {
            let mut cur = 0usize;
            for (word, synsets, negated) in &items[start..] {
                cur = self.step(cur, word, synsets, *negated);
            }
            self.nodes[cur].doc_labels.push(DocLabel {
                tweet_id: tuple.tweet_id.clone(),
                suffix_start: start,
            });
        }
    }

    /// Descend from `from` along an item: reuse the first child (in creation
    /// order) whose synsets overlap the item's and whose polarity matches, or
    /// create a new child.
    fn step(
        &mut self,
        from: usize,
        word: &str,
        synsets: &BTreeSet<SynKey>,
        negated: bool,
    ) -> usize {
        for &child in &self.nodes[from].children {
            let node = &self.nodes[child];
            if node.negated == negated && synset_overlap(&node.synsets, synsets) >= 1 {
                return child;
            }
        }
        let depth = self.nodes[from].depth + 1;
        let idx = self.nodes.len();
        self.nodes.push(SstNode {
            word: word.to_string(),
            synsets: synsets.clone(),
            negated,
            depth,
            children: Vec::new(),
            doc_labels: Vec::new(),
        });
        self.nodes[from].children.push(idx);
        idx
    }

    /// Read one base cluster off every non-root node, in post-order (children
    /// before parents, children in creation order). A node's doc set is the
    /// union of the terminal labels in its subtree.
    pub fn base_clusters(&self) -> Vec<BaseCluster> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect(0, &mut path, &mut out);
        out
    }

    fn collect(
        &self,
        idx: usize,
        path: &mut Vec<String>,
        out: &mut Vec<BaseCluster>,
    ) -> BTreeSet<String> {
        let node = &self.nodes[idx];
        if idx != 0 {
            path.push(node.label_segment());
        }
        let mut docs: BTreeSet<String> =
            node.doc_labels.iter().map(|l| l.tweet_id.clone()).collect();
        for &child in &node.children {
            docs.extend(self.collect(child, path, out));
        }
        if idx != 0 {
            out.push(BaseCluster {
                label_path: path.clone(),
                doc_set: docs.clone(),
            });
            path.pop();
        }
        docs
    }

    /// Total number of terminal labels across all nodes. Always three per
    /// inserted tuple.
    pub fn doc_label_count(&self) -> usize {
        self.nodes.iter().map(|n| n.doc_labels.len()).sum()
    }

    /// Render the tree as indented text, children in creation order. Each
    /// line shows the label segment, the node's depth, and any terminal
    /// labels as `tweet_id:suffix_start`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        self.dump_node(0, &mut out);
        out
    }

    fn dump_node(&self, idx: usize, out: &mut String) {
        let node = &self.nodes[idx];
        if idx == 0 {
            out.push_str(".\n");
        } else {
            for _ in 0..node.depth {
                out.push_str("  ");
            }
            out.push_str(&node.label_segment());
            if !node.doc_labels.is_empty() {
                out.push_str(" [");
                for (i, label) in node.doc_labels.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    out.push_str(&label.tweet_id);
                    out.push(':');
                    out.push_str(&label.suffix_start.to_string());
                }
                out.push(']');
            }
            out.push('\n');
        }
        for &child in &node.children {
            self.dump_node(child, out);
        }
    }
}

/// Build a tree from a batch of tuples, in order.
pub fn build_tree(tuples: &[SvoTuple]) -> SvoSuffixTree {
    let mut tree = SvoSuffixTree::new();
    for tuple in tuples {
        tree.insert(tuple);
    }
    tree
}
