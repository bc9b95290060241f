//! Labeled plane trees encoding peeling explorations.
//!
//! A node has zero, one or two children. Quadrangulation trees follow the
//! rules `ℓ → ℓ+1` (unary) and `ℓ → (ℓ₁, ℓ₂)` with `ℓ₁+ℓ₂+1 = ℓ`;
//! triangulation trees use `ℓ₁+ℓ₂+2 = ℓ` for the binary case. Leaves are
//! labeled 0, apart from the two special marks that carry a label.

mod dp;
mod gen;
mod notation;

use std::fmt;

use crate::error::{domain, Result};

pub use dp::{
    count_marked_trees_dp, count_special_trees_dp, count_trees_dp, MarkedCounts, SpecialCounts,
    TreeCounts,
};
pub use gen::{
    enumerate_distinguished_trees, enumerate_loop_trees, enumerate_trees, for_each_loop_tree,
    for_each_tree, marked_leaf_variants,
    TreeIter,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Quad,
    Tri,
}

impl Family {
    /// Amount by which the children of a binary node fall short of it.
    pub fn split_gap(self) -> usize {
        match self {
            Family::Quad => 1,
            Family::Tri => 2,
        }
    }

    /// Largest root label admitted for `n` zero-leaves.
    pub fn label_bound(self, n: usize) -> usize {
        match self {
            Family::Quad => (2 * n).saturating_sub(2),
            Family::Tri => (3 * n).saturating_sub(3),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Quad => "quad",
            Family::Tri => "tri",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mark {
    #[default]
    None,
    /// A 0-leaf selected for the last-car decomposition or used as a gluing port.
    MarkedLeaf,
    /// The vertex produced by contracting the marked leaf with its parent and
    /// sibling. Quadrangulation trees remember on which side the leaf was.
    MarkedVertex(Option<Side>),
    /// A leaf carrying the label `r` of the second boundary.
    DistinguishedLeaf(usize),
    /// The label-1 leaf of a distinguished loop in a triangulation tree.
    LoopLeaf,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledTree {
    pub label: usize,
    pub mark: Mark,
    pub children: Vec<LabeledTree>,
}

/// Position of a node as the list of child indices from the root.
pub type NodePath = Vec<usize>;

/// Result of [`validate`]; `failure` names the first violated rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validation {
    pub failure: Option<Diagnostic>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: NodePath,
    pub rule: String,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }

    pub fn into_result(self) -> Result<()> {
        match self.failure {
            None => Ok(()),
            Some(d) => Err(domain(format!("invalid tree at {:?}: {}", d.path, d.rule))),
        }
    }
}

impl LabeledTree {
    pub fn leaf(label: usize) -> Self {
        LabeledTree { label, mark: Mark::None, children: Vec::new() }
    }

    pub fn unary(label: usize, child: LabeledTree) -> Self {
        LabeledTree { label, mark: Mark::None, children: vec![child] }
    }

    pub fn binary(label: usize, left: LabeledTree, right: LabeledTree) -> Self {
        LabeledTree { label, mark: Mark::None, children: vec![left, right] }
    }

    pub fn with_mark(mut self, mark: Mark) -> Self {
        self.mark = mark;
        self
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn node(&self, path: &[usize]) -> Option<&LabeledTree> {
        path.iter().try_fold(self, |t, &i| t.children.get(i))
    }

    pub fn node_mut(&mut self, path: &[usize]) -> Option<&mut LabeledTree> {
        path.iter().try_fold(self, |t, &i| t.children.get_mut(i))
    }

    /// Total number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(LabeledTree::size).sum::<usize>()
    }

    /// Number of leaves labeled 0, marked or not.
    pub fn leaf_count(&self) -> usize {
        if self.is_leaf() {
            usize::from(self.label == 0)
        } else {
            self.children.iter().map(LabeledTree::leaf_count).sum()
        }
    }

    /// Number of marked nodes.
    pub fn mark_count(&self) -> usize {
        usize::from(self.mark != Mark::None)
            + self.children.iter().map(LabeledTree::mark_count).sum::<usize>()
    }

    /// Path of the first marked node in preorder.
    pub fn find_mark(&self) -> Option<NodePath> {
        fn walk(t: &LabeledTree, path: &mut NodePath) -> bool {
            if t.mark != Mark::None {
                return true;
            }
            for (i, c) in t.children.iter().enumerate() {
                path.push(i);
                if walk(c, path) {
                    return true;
                }
                path.pop();
            }
            false
        }
        let mut path = Vec::new();
        walk(self, &mut path).then_some(path)
    }

    /// Paths of all marked nodes in preorder.
    pub fn marked_paths(&self) -> Vec<NodePath> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_marked(&mut path, &mut out);
        out
    }

    fn collect_marked(&self, path: &mut NodePath, out: &mut Vec<NodePath>) {
        if self.mark != Mark::None {
            out.push(path.clone());
        }
        for (i, c) in self.children.iter().enumerate() {
            path.push(i);
            c.collect_marked(path, out);
            path.pop();
        }
    }

    /// Paths of all 0-leaves in preorder.
    pub fn zero_leaf_paths(&self) -> Vec<NodePath> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_zero_leaves(&mut path, &mut out);
        out
    }

    fn collect_zero_leaves(&self, path: &mut NodePath, out: &mut Vec<NodePath>) {
        if self.is_leaf() {
            if self.label == 0 {
                out.push(path.clone());
            }
            return;
        }
        for (i, c) in self.children.iter().enumerate() {
            path.push(i);
            c.collect_zero_leaves(path, out);
            path.pop();
        }
    }
}

/// Checks the local rules, the root label and the mark constraints.
pub fn validate(family: Family, tree: &LabeledTree, root_label: usize) -> Validation {
    let fail = |path: &[usize], rule: String| Validation {
        failure: Some(Diagnostic { path: path.to_vec(), rule }),
    };
    if tree.label != root_label {
        return fail(&[], format!("root label {} differs from {root_label}", tree.label));
    }
    let mut path = Vec::new();
    match first_violation(family, tree, &mut path, &mut 0) {
        Some(rule) => fail(&path, rule),
        None => Validation { failure: None },
    }
}

/// Preorder search; on failure `path` is left pointing at the culprit.
fn first_violation(
    family: Family,
    t: &LabeledTree,
    path: &mut NodePath,
    marks: &mut usize,
) -> Option<String> {
    if t.mark != Mark::None {
        *marks += 1;
        if *marks > 1 {
            return Some("more than one marked node".into());
        }
    }
    if let Some(rule) = local_violation(family, t) {
        return Some(rule);
    }
    for (i, c) in t.children.iter().enumerate() {
        path.push(i);
        if let Some(rule) = first_violation(family, c, path, marks) {
            return Some(rule);
        }
        path.pop();
    }
    None
}

fn local_violation(family: Family, t: &LabeledTree) -> Option<String> {
    let l = t.label;
    match t.mark {
        Mark::MarkedLeaf if !(t.is_leaf() && l == 0) => {
            return Some("a marked leaf must be a leaf labeled 0".into())
        }
        Mark::DistinguishedLeaf(r) if !(t.is_leaf() && l == r) => {
            return Some(format!("a distinguished leaf must be a leaf labeled {r}"))
        }
        Mark::LoopLeaf if !(family == Family::Tri && t.is_leaf() && l == 1) => {
            return Some("a loop leaf must be a triangulation leaf labeled 1".into())
        }
        _ => {}
    }
    match t.children.as_slice() {
        [] => {
            let special = matches!(t.mark, Mark::DistinguishedLeaf(_) | Mark::LoopLeaf);
            if l != 0 && !special {
                return Some(format!("leaf labeled {l} instead of 0"));
            }
        }
        [c] => {
            if l == 0 {
                return Some("inner vertex labeled 0".into());
            }
            if c.label != l + 1 {
                return Some(format!("unary child labeled {} under {l}", c.label));
            }
        }
        [a, b] => {
            if l == 0 {
                return Some("inner vertex labeled 0".into());
            }
            if b.mark == Mark::LoopLeaf {
                return Some("a loop leaf is stored as the left child".into());
            }
            if a.mark == Mark::LoopLeaf {
                if b.label + 1 != l {
                    return Some(format!("loop vertex {l} has sibling labeled {}", b.label));
                }
            } else if a.label + b.label + family.split_gap() != l {
                return Some(format!("children {} and {} do not split {l}", a.label, b.label));
            }
        }
        _ => return Some(format!("{} children", t.children.len())),
    }
    None
}

/// Number of inner vertices of a valid tree (2n−p−2 or 3n−p−3 for plain trees).
pub fn inner_count(family: Family, tree: &LabeledTree) -> Result<usize> {
    validate(family, tree, tree.label).into_result()?;
    Ok(count_inner(tree))
}

fn count_inner(t: &LabeledTree) -> usize {
    if t.is_leaf() {
        0
    } else {
        1 + t.children.iter().map(count_inner).sum::<usize>()
    }
}

/// Number of leaves labeled 0.
pub fn leaf_count(tree: &LabeledTree) -> usize {
    tree.leaf_count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> LabeledTree {
        s.parse().unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(validate(Family::Quad, &t("1(0,0)"), 1).is_valid());
        let q3 = t("1(2(0,1(0,0)))");
        assert!(validate(Family::Quad, &q3, 1).is_valid());
        assert_eq!(q3.leaf_count(), 3);
        let t2 = t("1(2(0,0))");
        assert!(validate(Family::Tri, &t2, 1).is_valid());
        assert_eq!(t2.leaf_count(), 2);
    }

    #[test]
    fn validate_reports_first_violation() {
        let v = validate(Family::Quad, &t("1(2(0,0))"), 1);
        assert_eq!(v.failure.unwrap().path, vec![0]);
        let v = validate(Family::Quad, &t("1(0,0)"), 2);
        assert!(v.failure.unwrap().rule.contains("root label"));
        let v = validate(Family::Tri, &t("2(0,1!loop)"), 2);
        assert!(v.failure.unwrap().rule.contains("left child"));
        let v = validate(Family::Quad, &t("2(0!leaf,1(0!leaf,0))"), 2);
        assert!(v.failure.unwrap().rule.contains("more than one"));
        assert!(!validate(Family::Quad, &t("1(1,0)"), 1).is_valid());
        assert!(validate(Family::Tri, &t("1(1!loop,0)"), 1).is_valid());
    }

    #[test]
    fn inner_counts() {
        assert_eq!(inner_count(Family::Quad, &t("1(2(0,1(0,0)))")).unwrap(), 3);
        assert_eq!(inner_count(Family::Tri, &t("1(2(0,0))")).unwrap(), 2);
        assert_eq!(inner_count(Family::Quad, &t("0")).unwrap(), 0);
        assert_eq!(leaf_count(&t("0")), 1);
        assert!(inner_count(Family::Quad, &t("1(2(0,0))")).is_err());
    }
}
