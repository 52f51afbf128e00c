//! Classify VPs into attachment configurations and pull out their heads.
//!
//! A VP matches when it is `[VP V NP PP*]` and every NP is either a base NP
//! (leaves only) or a base NP followed by one or more PPs. A PP is one or
//! more leaves, the first preposition among them being its head, followed
//! by a single NP. Anything else, including left-recursive NP stacks and
//! VPs with more than three PPs, is a no-match.

use thiserror::Error;

use super::config::{AttachmentSite, Configuration};
use super::record::{Heads, Normalization, TupleRecord};
use super::tree::{category, ParseError, Tree};

const MAX_PPS: usize = 3;

/// A VP matched to the taxonomy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VpMatch {
    pub config: Configuration,
    pub heads: Heads,
    pub final_noun: String,
}

fn is_verb_tag(tag: &str) -> bool {
    category(tag).starts_with('V')
}

fn is_noun_tag(tag: &str) -> bool {
    category(tag).starts_with('N')
}

fn is_prep_tag(tag: &str) -> bool {
    matches!(category(tag), "P" | "IN" | "TO")
}

#[derive(Default)]
struct Walk<'t> {
    nouns: Vec<&'t str>,
    preps: Vec<&'t str>,
    sites: Vec<AttachmentSite>,
}

impl<'t> Walk<'t> {
    /// Returns the 1-based index of the NP's head noun.
    fn np(&mut self, np: &'t Tree) -> Option<usize> {
        if np.is_leaf() || np.category() != "NP" {
            return None;
        }
        let children = np.children();
        if children.iter().all(Tree::is_leaf) {
            return self.base_np(np);
        }
        let (first, rest) = children.split_first()?;
        if first.is_leaf() || first.category() != "NP" || !first.children().iter().all(Tree::is_leaf) {
            return None;
        }
        let head = self.base_np(first)?;
        let site = AttachmentSite::noun(head)?;
        for pp in rest {
            self.pp(pp, site)?;
        }
        Some(head)
    }

    fn base_np(&mut self, np: &'t Tree) -> Option<usize> {
        let head = np.children().iter().rev().find(|leaf| is_noun_tag(leaf.label())).and_then(Tree::token)?;
        self.nouns.push(head);
        Some(self.nouns.len())
    }

    fn pp(&mut self, pp: &'t Tree, site: AttachmentSite) -> Option<()> {
        if pp.is_leaf() || pp.category() != "PP" || self.preps.len() == MAX_PPS {
            return None;
        }
        let (object, leaves) = pp.children().split_last()?;
        if leaves.is_empty() || !leaves.iter().all(Tree::is_leaf) {
            return None;
        }
        let head = leaves.iter().find(|l| is_prep_tag(l.label())).and_then(Tree::token)?;
        self.preps.push(head);
        self.sites.push(site);
        self.np(object).map(|_| ())
    }
}

/// Match a VP subtree against the 2/5/14 configuration shapes.
pub fn classify_vp(vp: &Tree) -> Option<VpMatch> {
    if vp.is_leaf() || vp.category() != "VP" {
        return None;
    }
    let children = vp.children();
    let np_at = children.iter().position(|c| !c.is_leaf())?;
    let verb = children[..np_at].iter().find(|c| is_verb_tag(c.label())).and_then(Tree::token)?;

    let mut walk = Walk::default();
    if walk.np(&children[np_at])? != 1 {
        return None;
    }
    for pp in &children[np_at + 1..] {
        walk.pp(pp, AttachmentSite::Verb)?;
    }

    let config = Configuration::from_sites(&walk.sites)?;
    let noun = |k: usize| walk.nouns.get(k - 1).map(|s| s.to_string());
    let prep = |k: usize| walk.preps.get(k - 1).map(|s| s.to_string());
    let heads = Heads {
        v: verb.to_string(),
        n1: noun(1)?,
        p1: prep(1)?,
        n2: noun(2).filter(|_| walk.preps.len() >= 2),
        p2: prep(2),
        n3: noun(3).filter(|_| walk.preps.len() >= 3),
        p3: prep(3),
    };
    let final_noun = noun(walk.preps.len() + 1)?;
    Some(VpMatch { config, heads, final_noun })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("tree {tree_index}: {source}")]
pub struct ExtractError {
    pub tree_index: usize,
    pub source: ParseError,
}

fn normalize(heads: Heads, policy: Normalization) -> Heads {
    let f = |w: String| policy.apply(&w);
    Heads {
        v: f(heads.v),
        n1: f(heads.n1),
        p1: f(heads.p1),
        n2: heads.n2.map(f),
        p2: heads.p2.map(f),
        n3: heads.n3.map(f),
        p3: heads.p3.map(f),
    }
}

/// Records for every matching VP of one tree; ids count all VP nodes in
/// pre-order, matched or not.
pub fn tuples_of_tree(tree: &Tree, tree_index: usize, policy: Normalization) -> Vec<TupleRecord> {
    tree.preorder()
        .filter(|n| !n.is_leaf() && n.category() == "VP")
        .enumerate()
        .filter_map(|(vp_index, vp)| {
            let m = classify_vp(vp)?;
            Some(TupleRecord {
                id: format!("t{tree_index}.v{vp_index}"),
                config: m.config,
                heads: normalize(m.heads, policy),
                final_noun: Some(policy.apply(&m.final_noun)),
            })
        })
        .collect()
}

/// One record per matched VP, in input order.
pub fn extract_tuples<I>(trees: I, policy: Normalization) -> Result<Vec<TupleRecord>, ExtractError>
where
    I: IntoIterator<Item = Result<Tree, ParseError>>,
{
    let mut out = Vec::new();
    for (tree_index, tree) in trees.into_iter().enumerate() {
        let tree = tree.map_err(|source| ExtractError { tree_index, source })?;
        out.extend(tuples_of_tree(&tree, tree_index, policy));
    }
    Ok(out)
}

/// Rebuild a canonical bracketing for a configuration, using `heads` and
/// `final_noun` as leaves. Inverse of [`classify_vp`] on its image.
pub fn bracketing_for(config: Configuration, heads: &Heads, final_noun: &str) -> Tree {
    let sites = config.sites();
    let noun_count = sites.len() + 1;
    let noun_word = |k: usize| {
        if k == noun_count {
            final_noun.to_string()
        } else {
            heads.noun(k).unwrap_or("?").to_string()
        }
    };
    // PPs hanging off each attachment point, by noun index (0 = verb).
    let mut attached: Vec<Vec<usize>> = vec![Vec::new(); noun_count + 1];
    for (i, site) in sites.iter().enumerate() {
        attached[site.noun_index().unwrap_or(0)].push(i + 1);
    }

    fn np(k: usize, attached: &[Vec<usize>], noun_word: &dyn Fn(usize) -> String, heads: &Heads) -> Tree {
        let base = Tree::node("NP", vec![Tree::leaf("DT", "the"), Tree::leaf("NN", noun_word(k))]);
        if attached[k].is_empty() {
            return base;
        }
        let mut children = vec![base];
        children.extend(attached[k].iter().map(|&i| pp(i, attached, noun_word, heads)));
        Tree::node("NP", children)
    }

    fn pp(i: usize, attached: &[Vec<usize>], noun_word: &dyn Fn(usize) -> String, heads: &Heads) -> Tree {
        let p = heads.preposition(i).unwrap_or("?");
        Tree::node("PP", vec![Tree::leaf("IN", p), np(i + 1, attached, noun_word, heads)])
    }

    let mut children = vec![Tree::leaf("VB", heads.v.clone()), np(1, &attached, &noun_word, heads)];
    children.extend(attached[0].iter().map(|&i| pp(i, &attached, &noun_word, heads)));
    Tree::node("VP", children)
}
