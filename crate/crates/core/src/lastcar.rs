//! The last-car decomposition of peeling trees and its inverse.
//!
//! Starting from a marked leaf (a 0-leaf for quadrangulations, the loop leaf
//! for triangulations), every label on the branch up to the root drops by 1.
//! The leaf, its parent and its sibling collapse into one marked vertex,
//! branch vertices that reach 0 are cut off, and a root labeled 1 is removed.
//! The pieces are listed from the one nearest to the leaf to the one holding
//! the root.

use serde_json::{json, Value};

use crate::error::{domain, usage, Error, Result};
use crate::trees::{validate, Family, LabeledTree, Mark, NodePath, Side};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSequence {
    pub family: Family,
    /// Root label of the tree the sequence came from.
    pub root_label: usize,
    pub trees: Vec<LabeledTree>,
}

impl TreeSequence {
    /// Side bit of the contracted vertex in the first tree.
    pub fn side(&self) -> Option<Side> {
        let first = self.trees.first()?;
        let path = first.find_mark()?;
        match first.node(&path)?.mark {
            Mark::MarkedVertex(side) => side,
            _ => None,
        }
    }

    /// Total number of 0-leaves over all pieces.
    pub fn zero_leaves(&self) -> usize {
        self.trees.iter().map(LabeledTree::leaf_count).sum()
    }

    pub fn to_json(&self) -> Value {
        let trees: Vec<String> = self.trees.iter().map(ToString::to_string).collect();
        let side = self.side().map(|s| match s {
            Side::Left => "L",
            Side::Right => "R",
        });
        json!({
            "family": self.family.name(),
            "root_label": self.root_label,
            "trees": trees,
            "side": side,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let family = match v["family"].as_str() {
            Some("quad") => Family::Quad,
            Some("tri") => Family::Tri,
            _ => return Err(usage("sequence JSON needs \"family\": \"quad\" or \"tri\"")),
        };
        let root_label = v["root_label"]
            .as_u64()
            .ok_or_else(|| usage("sequence JSON needs an integer \"root_label\""))?
            as usize;
        let trees = v["trees"]
            .as_array()
            .ok_or_else(|| usage("sequence JSON needs a \"trees\" array"))?
            .iter()
            .map(|t| {
                t.as_str()
                    .ok_or_else(|| usage("trees are given in text notation"))?
                    .parse::<LabeledTree>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TreeSequence { family, root_label, trees })
    }
}

fn unmarked(mut t: LabeledTree) -> LabeledTree {
    t.mark = Mark::None;
    t
}

/// Decomposes `tree` at the leaf found at `path`.
pub fn decompose(family: Family, tree: &LabeledTree, path: &[usize]) -> Result<TreeSequence> {
    validate(family, tree, tree.label).into_result()?;
    let leaf = tree.node(path).ok_or_else(|| domain("mark path leaves the tree"))?;
    let expected_mark = match family {
        Family::Quad => leaf.is_leaf() && leaf.label == 0 && leaf.mark != Mark::LoopLeaf,
        Family::Tri => leaf.mark == Mark::LoopLeaf,
    };
    if !expected_mark {
        return Err(domain(match family {
            Family::Quad => "the marked node must be a 0-leaf",
            Family::Tri => "the marked node must be the loop leaf",
        }));
    }
    if leaf.mark == Mark::None && tree.mark_count() > 0 {
        let other = tree.marked_paths().into_iter().find(|m| m.as_slice() != path);
        return Err(domain(format!("unexpected second mark at {other:?}")));
    }
    let Some((&last, upper)) = path.split_last() else {
        return Err(domain("the marked leaf cannot be the root"));
    };
    let p = tree.label;
    if family == Family::Quad && p == 1 && upper.is_empty() {
        return Err(Error::BaseCase("the two-vertex quadrangulation has no decomposition".into()));
    }

    let mut nodes = Vec::with_capacity(path.len());
    let mut node = tree;
    nodes.push(node);
    for &i in upper {
        node = &node.children[i];
        nodes.push(node);
    }
    let parent = nodes[upper.len()];
    let side = match family {
        Family::Quad if last == 0 => Some(Side::Left),
        Family::Quad => Some(Side::Right),
        Family::Tri => None,
    };
    let mut cur = parent.children[1 - last].clone().with_mark(Mark::MarkedVertex(side));
    debug_assert_eq!(cur.label + 1, parent.label);

    let mut trees = Vec::new();
    for i in (0..upper.len()).rev() {
        let v = nodes[i];
        if i > 0 && v.label == 1 {
            trees.push(cur);
            cur = LabeledTree::leaf(0).with_mark(Mark::MarkedLeaf);
            continue;
        }
        if i == 0 && v.label == 1 {
            break;
        }
        let children = match v.children.len() {
            1 => vec![cur],
            _ if upper[i] == 0 => vec![cur, v.children[1].clone()],
            _ => vec![v.children[0].clone(), cur],
        };
        cur = LabeledTree { label: v.label - 1, mark: Mark::None, children };
    }
    trees.push(cur);
    Ok(TreeSequence { family, root_label: p, trees })
}

/// Decomposes a tree carrying its own mark: a `MarkedLeaf` for
/// quadrangulations, a `LoopLeaf` for triangulations.
pub fn decompose_at(family: Family, tree: &LabeledTree) -> Result<TreeSequence> {
    let marks = tree.marked_paths();
    let [path] = marks.as_slice() else {
        return Err(domain(format!("expected one marked leaf, found {}", marks.len())));
    };
    decompose(family, tree, path)
}

fn single_mark(t: &LabeledTree, want: fn(Mark) -> bool, what: &str) -> Result<NodePath> {
    fn walk(t: &LabeledTree, path: &mut NodePath, found: &mut Option<(NodePath, Mark)>) -> bool {
        if t.mark != Mark::None {
            if found.is_some() {
                return false;
            }
            *found = Some((path.clone(), t.mark));
        }
        t.children.iter().enumerate().all(|(i, c)| {
            path.push(i);
            let ok = walk(c, path, found);
            path.pop();
            ok
        })
    }
    let mut found = None;
    match (walk(t, &mut Vec::new(), &mut found), found) {
        (true, Some((m, mark))) if want(mark) => Ok(m),
        _ => Err(domain(format!("tree {t} must carry exactly one {what}"))),
    }
}

/// Inverse of [`decompose`]; the result carries the mark on the leaf.
pub fn glue(seq: &TreeSequence) -> Result<LabeledTree> {
    glue_owned(seq.clone())
}

/// [`glue`] consuming its input.
pub fn glue_owned(seq: TreeSequence) -> Result<LabeledTree> {
    let family = seq.family;
    let p = seq.root_label;
    let k = seq.trees.len();
    for (i, t) in seq.trees.iter().enumerate() {
        let ok = if i + 1 < k { t.label == 1 } else { t.label + 1 == p || (p == 1 && t.label == 1) };
        if !ok {
            return Err(domain(format!("piece {i} has root label {}", t.label)));
        }
    }

    let mut pieces = seq.trees.into_iter();
    let mut cur = pieces.next().ok_or_else(|| domain("empty sequence"))?;
    let mut path = single_mark(&cur, |m| matches!(m, Mark::MarkedVertex(_)), "marked vertex")?;
    for mut next in pieces {
        let mut port = single_mark(&next, |m| m == Mark::MarkedLeaf, "marked leaf")?;
        *next.node_mut(&port).expect("port") = LabeledTree::unary(0, cur);
        port.push(0);
        port.append(&mut path);
        path = port;
        cur = next;
    }

    let side = match cur.node(&path).expect("mark path").mark {
        Mark::MarkedVertex(s) => s,
        _ => unreachable!(),
    };
    let restored = |x: LabeledTree| -> Result<LabeledTree> {
        let label = x.label + 1;
        let x = unmarked(x);
        Ok(match (family, side) {
            (Family::Quad, Some(Side::Left)) => {
                LabeledTree::binary(label, LabeledTree::leaf(0).with_mark(Mark::MarkedLeaf), x)
            }
            (Family::Quad, Some(Side::Right)) => {
                LabeledTree::binary(label, x, LabeledTree::leaf(0).with_mark(Mark::MarkedLeaf))
            }
            (Family::Tri, None) => {
                LabeledTree::binary(label, LabeledTree::leaf(1).with_mark(Mark::LoopLeaf), x)
            }
            _ => return Err(domain("side bit does not match the family")),
        })
    };
    let mut node = &mut cur;
    for &i in &path {
        node.label += 1;
        node = &mut node.children[i];
    }
    let x = std::mem::replace(node, LabeledTree::leaf(0));
    *node = restored(x)?;
    if cur.label != p {
        if p != 1 {
            return Err(domain(format!("glued root label {} differs from {p}", cur.label)));
        }
        cur = LabeledTree::unary(1, cur);
    }
    validate(family, &cur, p).into_result()?;
    Ok(cur)
}

/// Decomposition of a tree with a `DistinguishedLeaf(r)`, `r ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MarkedDecomposition {
    /// No branch vertex below the root has label 1. Every branch label,
    /// the leaf included, drops by 1 and a root labeled 1 is removed.
    Whole { p: usize, tree: LabeledTree },
    /// Split at the deepest branch vertex labeled 1. `upper` is the
    /// `Whole` transform of the subtree hanging there (root label 1) and
    /// `lower` keeps the rest with a `DistinguishedLeaf(1)` in its place.
    Cut { upper: LabeledTree, lower: LabeledTree },
}

fn dist_path(t: &LabeledTree) -> Result<(NodePath, usize)> {
    let path = single_mark(t, |m| matches!(m, Mark::DistinguishedLeaf(_)), "distinguished leaf")?;
    match t.node(&path).expect("mark path").mark {
        Mark::DistinguishedLeaf(r) => Ok((path, r)),
        _ => unreachable!(),
    }
}

fn whole(tree: &LabeledTree, path: &[usize], p: usize) -> Result<LabeledTree> {
    if path.is_empty() && p == 1 {
        return Err(domain("a lone distinguished leaf labeled 1 has no decomposition"));
    }
    let mut t = tree.clone();
    let mut node = &mut t;
    for &i in path {
        node.label -= 1;
        node = &mut node.children[i];
    }
    node.label -= 1;
    node.mark = if node.label == 0 { Mark::MarkedLeaf } else { Mark::DistinguishedLeaf(node.label) };
    if p == 1 {
        t = t.children.pop().expect("unary root");
    }
    Ok(t)
}

fn whole_inverse(tree: &LabeledTree, p: usize) -> Result<LabeledTree> {
    let path = single_mark(
        tree,
        |m| matches!(m, Mark::MarkedLeaf | Mark::DistinguishedLeaf(_)),
        "marked or distinguished leaf",
    )?;
    let mut t = tree.clone();
    let mut node = &mut t;
    for &i in &path {
        node.label += 1;
        node = &mut node.children[i];
    }
    node.label += 1;
    node.mark = Mark::DistinguishedLeaf(node.label);
    if p == 1 {
        t = LabeledTree::unary(1, t);
    }
    if t.label != p {
        return Err(domain(format!("restored root label {} differs from {p}", t.label)));
    }
    Ok(t)
}

pub fn decompose_marked(family: Family, tree: &LabeledTree) -> Result<MarkedDecomposition> {
    validate(family, tree, tree.label).into_result()?;
    let (path, r) = dist_path(tree)?;
    if r == 0 {
        return Err(domain("the distinguished leaf needs a label r ≥ 1"));
    }
    let cut = (1..path.len()).rev().find(|&i| tree.node(&path[..i]).expect("branch").label == 1);
    match cut {
        None => Ok(MarkedDecomposition::Whole { p: tree.label, tree: whole(tree, &path, tree.label)? }),
        Some(i) => {
            let sub = tree.node(&path[..i]).expect("branch");
            let upper = whole(sub, &path[i..], 1)?;
            let mut lower = tree.clone();
            *lower.node_mut(&path[..i]).expect("branch") =
                LabeledTree::leaf(1).with_mark(Mark::DistinguishedLeaf(1));
            Ok(MarkedDecomposition::Cut { upper, lower })
        }
    }
}

pub fn glue_marked(family: Family, d: &MarkedDecomposition) -> Result<LabeledTree> {
    let t = match d {
        MarkedDecomposition::Whole { p, tree } => whole_inverse(tree, *p)?,
        MarkedDecomposition::Cut { upper, lower } => {
            let sub = whole_inverse(upper, 1)?;
            let (path, r) = dist_path(lower)?;
            if r != 1 {
                return Err(domain("the lower piece must hold a distinguished leaf labeled 1"));
            }
            let mut t = lower.clone();
            *t.node_mut(&path).expect("mark path") = sub;
            t
        }
    };
    validate(family, &t, t.label).into_result()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> LabeledTree {
        s.parse().unwrap()
    }

    #[test]
    fn deep_leaf_contracts_into_single_piece() {
        let tree = t("1(2(0,1(0!leaf,0)))");
        let seq = decompose_at(Family::Quad, &tree).unwrap();
        assert_eq!(seq.trees, vec![t("1(0,0!vertex:L)")]);
        assert_eq!(seq.zero_leaves(), 3 + 1 - 2);
        assert_eq!(glue(&seq).unwrap(), tree);
    }

    #[test]
    fn singleton_left_side_glues_back() {
        let seq = TreeSequence {
            family: Family::Quad,
            root_label: 1,
            trees: vec![t("1(0,0!vertex:L)")],
        };
        assert_eq!(glue(&seq).unwrap(), t("1(2(0,1(0!leaf,0)))"));
    }

    #[test]
    fn quad_base_case_is_rejected() {
        let err = decompose_at(Family::Quad, &t("1(0!leaf,0)")).unwrap_err();
        assert!(matches!(err, Error::BaseCase(_)));
    }

    #[test]
    fn wrong_marks_are_domain_errors() {
        assert!(matches!(decompose(Family::Tri, &t("1(2(0,0))"), &[0, 0]), Err(Error::Domain(_))));
        assert!(matches!(decompose_at(Family::Quad, &t("1(2(0,1(0,0)))")), Err(Error::Domain(_))));
    }

    #[test]
    fn cuts_produce_several_pieces() {
        // Root 1 is removed, the vertex labeled 1 in the middle is cut.
        let tree = t("1(2(0,1(2(3(0!leaf,2(0,1(0,0)))))))");
        let seq = decompose_at(Family::Quad, &tree).unwrap();
        assert_eq!(seq.trees.len(), 2);
        assert_eq!(seq.trees[0].label, 1);
        assert_eq!(seq.trees[1].label, 1);
        let k = seq.trees.len();
        assert_eq!(seq.zero_leaves(), tree.leaf_count() + k - 2);
        assert_eq!(glue(&seq).unwrap(), tree);
    }

    #[test]
    fn triangulation_loop_at_root() {
        let tree = t("1(1!loop,0)");
        let seq = decompose_at(Family::Tri, &tree).unwrap();
        assert_eq!(seq.trees, vec![t("0!vertex")]);
        assert_eq!(glue(&seq).unwrap(), tree);
    }

    #[test]
    fn sequence_json_round_trip() {
        let seq = decompose_at(Family::Quad, &t("1(2(0,1(0!leaf,0)))")).unwrap();
        let v = seq.to_json();
        assert_eq!(v["side"], "L");
        assert_eq!(TreeSequence::from_json(&v).unwrap(), seq);
    }

    #[test]
    fn marked_whole_and_cut() {
        let chain = t("1(2(3!dist:3))");
        let d = decompose_marked(Family::Quad, &chain).unwrap();
        assert_eq!(d, MarkedDecomposition::Whole { p: 1, tree: t("1(2!dist:2)") });
        assert_eq!(glue_marked(Family::Quad, &d).unwrap(), chain);

        let r1 = t("2(0,1!dist:1)");
        let d = decompose_marked(Family::Quad, &r1).unwrap();
        assert_eq!(d, MarkedDecomposition::Whole { p: 2, tree: t("1(0,0!leaf)") });
        assert_eq!(glue_marked(Family::Quad, &d).unwrap(), r1);

        let cut = t("2(0,1(2!dist:2))");
        let d = decompose_marked(Family::Quad, &cut).unwrap();
        assert_eq!(
            d,
            MarkedDecomposition::Cut { upper: t("1!dist:1"), lower: t("2(0,1!dist:1)") }
        );
        assert_eq!(glue_marked(Family::Quad, &d).unwrap(), cut);

        assert!(decompose_marked(Family::Quad, &t("1!dist:1")).is_err());
    }
}
