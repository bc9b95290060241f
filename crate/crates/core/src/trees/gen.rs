//! Exhaustive streaming generation of peeling trees.
//!
//! Trees are produced lazily by nested iterators; the DP tables prune every
//! branch that cannot yield a tree. For a given root the order is: unary
//! child, loop vertex, then binary splits by increasing left label and
//! increasing left leaf count.

use std::collections::HashMap;
use std::rc::Rc;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use super::dp::{MarkedCounts, SpecialCounts, TreeCounts};
use super::{Family, LabeledTree, Mark, NodePath};
use crate::par::ExecMode;

pub type TreeIter = Box<dyn Iterator<Item = LabeledTree> + Send>;

type Shared = Arc<Vec<LabeledTree>>;

type Thunk = Box<dyn FnOnce() -> TreeIter + Send>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    Plain,
    Loop,
    Dist,
}

struct Ctx {
    family: Family,
    plain: TreeCounts,
    dist: Option<MarkedCounts>,
    loops: Option<SpecialCounts>,
    cache: Mutex<HashMap<(Kind, usize, usize), Shared>>,
}

/// Subtree lists up to this length are kept and cloned on reuse.
const CACHE_LIMIT: u32 = 50_000;

impl Ctx {
    fn count(&self, kind: Kind, p: usize, n: usize) -> &crate::series::Integer {
        match kind {
            Kind::Plain => self.plain.get(p, n),
            Kind::Dist => self.dist.as_ref().expect("distinguished table").get(p, n),
            Kind::Loop => self.loops.as_ref().expect("loop table").get(p, n),
        }
    }

    fn exists(&self, kind: Kind, p: usize, n: usize) -> bool {
        !self.count(kind, p, n).is_zero()
    }

    fn cached(self: &Arc<Self>, kind: Kind, p: usize, n: usize) -> Option<Shared> {
        if self.count(kind, p, n) > &CACHE_LIMIT.into() {
            return None;
        }
        if let Some(v) = self.cache.lock().expect("cache lock").get(&(kind, p, n)) {
            return Some(v.clone());
        }
        let list = Arc::new(fresh(self.clone(), kind, p, n).collect::<Vec<_>>());
        self.cache.lock().expect("cache lock").insert((kind, p, n), list.clone());
        Some(list)
    }
}

fn gen(ctx: Arc<Ctx>, kind: Kind, p: usize, n: usize) -> TreeIter {
    if let Some(list) = ctx.cached(kind, p, n) {
        return Box::new((0..list.len()).map(move |i| list[i].clone()));
    }
    fresh(ctx, kind, p, n)
}

fn fresh(ctx: Arc<Ctx>, kind: Kind, p: usize, n: usize) -> TreeIter {
    if !ctx.exists(kind, p, n) {
        return Box::new(std::iter::empty());
    }
    let mut parts: Vec<Thunk> = Vec::new();
    if kind == Kind::Dist && p == ctx.dist.as_ref().map_or(usize::MAX, MarkedCounts::r) && n == 0 {
        let leaf = LabeledTree::leaf(p).with_mark(Mark::DistinguishedLeaf(p));
        parts.push(Box::new(move || Box::new(std::iter::once(leaf))));
    }
    if p == 0 {
        if kind == Kind::Plain {
            parts.push(Box::new(|| Box::new(std::iter::once(LabeledTree::leaf(0)))));
        }
        return Box::new(parts.into_iter().flat_map(|f| f()));
    }

    if ctx.exists(kind, p + 1, n) {
        let c = ctx.clone();
        parts.push(Box::new(move || {
            Box::new(gen(c, kind, p + 1, n).map(move |t| LabeledTree::unary(p, t)))
        }));
    }
    if kind == Kind::Loop && ctx.exists(Kind::Plain, p - 1, n) {
        let c = ctx.clone();
        parts.push(Box::new(move || {
            let loop_leaf = LabeledTree::leaf(1).with_mark(Mark::LoopLeaf);
            Box::new(
                gen(c, Kind::Plain, p - 1, n)
                    .map(move |t| LabeledTree::binary(p, loop_leaf.clone(), t)),
            )
        }));
    }

    let gap = ctx.family.split_gap();
    if p >= gap {
        let combos: &[(Kind, Kind)] = match kind {
            Kind::Plain => &[(Kind::Plain, Kind::Plain)],
            Kind::Loop => &[(Kind::Loop, Kind::Plain), (Kind::Plain, Kind::Loop)],
            Kind::Dist => &[(Kind::Dist, Kind::Plain), (Kind::Plain, Kind::Dist)],
        };
        for p1 in 0..=p - gap {
            let p2 = p - gap - p1;
            for n1 in 0..=n {
                for &(kl, kr) in combos {
                    let n2 = n - n1;
                    let left_ok = n1 >= 1 || kl == Kind::Dist;
                    let right_ok = n2 >= 1 || kr == Kind::Dist;
                    if !(left_ok && right_ok && ctx.exists(kl, p1, n1) && ctx.exists(kr, p2, n2)) {
                        continue;
                    }
                    let c = ctx.clone();
                    parts.push(Box::new(move || {
                        let c2 = c.clone();
                        Box::new(gen(c, kl, p1, n1).flat_map(move |l| {
                            gen(c2.clone(), kr, p2, n2)
                                .map(move |r| LabeledTree::binary(p, l.clone(), r))
                        }))
                    }));
                }
            }
        }
    }
    Box::new(parts.into_iter().flat_map(|f| f()))
}

type Hole = (NodePath, Kind, usize, usize);

#[derive(Debug, Clone, Copy)]
enum Choice {
    DistLeaf,
    ZeroLeaf,
    Unary,
    LoopVertex,
    Split { kl: Kind, p1: usize, n1: usize, kr: Kind, p2: usize, n2: usize },
}

impl Ctx {
    /// Ways to fill a hole, in generation order.
    fn choices(&self, kind: Kind, p: usize, n: usize) -> Vec<Choice> {
        let mut out = Vec::new();
        if kind == Kind::Dist && p == self.dist.as_ref().map_or(usize::MAX, MarkedCounts::r) && n == 0 {
            out.push(Choice::DistLeaf);
        }
        if p == 0 {
            if kind == Kind::Plain {
                out.push(Choice::ZeroLeaf);
            }
            return out;
        }
        if self.exists(kind, p + 1, n) {
            out.push(Choice::Unary);
        }
        if kind == Kind::Loop && self.exists(Kind::Plain, p - 1, n) {
            out.push(Choice::LoopVertex);
        }
        let gap = self.family.split_gap();
        if p >= gap {
            let combos: &[(Kind, Kind)] = match kind {
                Kind::Plain => &[(Kind::Plain, Kind::Plain)],
                Kind::Loop => &[(Kind::Loop, Kind::Plain), (Kind::Plain, Kind::Loop)],
                Kind::Dist => &[(Kind::Dist, Kind::Plain), (Kind::Plain, Kind::Dist)],
            };
            for p1 in 0..=p - gap {
                let p2 = p - gap - p1;
                for n1 in 0..=n {
                    for &(kl, kr) in combos {
                        let n2 = n - n1;
                        let left_ok = n1 >= 1 || kl == Kind::Dist;
                        let right_ok = n2 >= 1 || kr == Kind::Dist;
                        if left_ok && right_ok && self.exists(kl, p1, n1) && self.exists(kr, p2, n2) {
                            out.push(Choice::Split { kl, p1, n1, kr, p2, n2 });
                        }
                    }
                }
            }
        }
        out
    }
}

struct Filler<'a> {
    ctx: &'a Ctx,
    /// Choice lists indexed by kind, root label and leaf count.
    choices: Vec<Option<Rc<[Choice]>>>,
    max_p: usize,
    max_n: usize,
}

impl Filler<'_> {
    /// Fills the last hole in every possible way, in the same order as
    /// [`gen`], and hands each completed tree to `f`.
    fn fill(&mut self, root: &mut LabeledTree, holes: &mut Vec<Hole>, f: &mut dyn FnMut(&LabeledTree)) {
        let Some((path, kind, p, n)) = holes.pop() else {
            f(root);
            return;
        };
        let choices = self.choices_for(kind, p, n);
        // A zero leaf is already in place and needs no hole.
        let push = |holes: &mut Vec<Hole>, i: usize, kind: Kind, p: usize, n: usize| {
            if kind == Kind::Plain && p == 0 {
                return 0;
            }
            let mut c = path.clone();
            c.push(i);
            holes.push((c, kind, p, n));
            1
        };
        for &choice in choices.iter() {
            let slot = root.node_mut(&path).expect("hole");
            let pushed = match choice {
                Choice::DistLeaf => {
                    *slot = LabeledTree::leaf(p).with_mark(Mark::DistinguishedLeaf(p));
                    0
                }
                Choice::ZeroLeaf => {
                    *slot = LabeledTree::leaf(0);
                    0
                }
                Choice::Unary => {
                    *slot = LabeledTree::unary(p, LabeledTree::leaf(0));
                    push(holes, 0, kind, p + 1, n)
                }
                Choice::LoopVertex => {
                    let loop_leaf = LabeledTree::leaf(1).with_mark(Mark::LoopLeaf);
                    *slot = LabeledTree::binary(p, loop_leaf, LabeledTree::leaf(0));
                    push(holes, 1, Kind::Plain, p - 1, n)
                }
                Choice::Split { kl, p1, n1, kr, p2, n2 } => {
                    *slot = LabeledTree::binary(p, LabeledTree::leaf(0), LabeledTree::leaf(0));
                    push(holes, 1, kr, p2, n2) + push(holes, 0, kl, p1, n1)
                }
            };
            self.fill(root, holes, f);
            holes.truncate(holes.len() - pushed);
        }
        holes.push((path, kind, p, n));
    }

    fn choices_for(&mut self, kind: Kind, p: usize, n: usize) -> Rc<[Choice]> {
        let k = match kind {
            Kind::Plain => 0,
            Kind::Loop => 1,
            Kind::Dist => 2,
        };
        let i = (k * (self.max_p + 1) + p) * (self.max_n + 1) + n;
        let ctx = self.ctx;
        self.choices[i].get_or_insert_with(|| ctx.choices(kind, p, n).into()).clone()
    }
}

fn visit(ctx: &Ctx, kind: Kind, p: usize, n: usize, mut f: impl FnMut(&LabeledTree)) {
    if ctx.exists(kind, p, n) {
        let mut root = LabeledTree::leaf(0);
        // Labels never exceed the root label plus the tree size.
        let r = ctx.dist.as_ref().map_or(0, MarkedCounts::r);
        let max_p = p.max(r) + 3 * n + 4;
        let choices = vec![None; 3 * (max_p + 1) * (n + 1)];
        let mut filler = Filler { ctx, choices, max_p, max_n: n };
        filler.fill(&mut root, &mut vec![(Vec::new(), kind, p, n)], &mut f);
    }
}

/// Calls `f` on every tree [`enumerate_trees`] yields, reusing one buffer.
pub fn for_each_tree(family: Family, p: usize, n: usize, f: impl FnMut(&LabeledTree)) {
    let plain = TreeCounts::new(family, n, ExecMode::Sequential);
    let ctx = Ctx { family, plain, dist: None, loops: None, cache: Mutex::default() };
    visit(&ctx, Kind::Plain, p, n, f);
}

/// Calls `f` on every tree [`enumerate_loop_trees`] yields, reusing one buffer.
pub fn for_each_loop_tree(p: usize, n: usize, f: impl FnMut(&LabeledTree)) {
    let plain = TreeCounts::new(Family::Tri, n, ExecMode::Sequential);
    let loops = SpecialCounts::new(&plain, 1, n);
    let ctx = Ctx { family: Family::Tri, plain, dist: None, loops: Some(loops), cache: Mutex::default() };
    visit(&ctx, Kind::Loop, p, n, f);
}

/// All plain trees with root label `p` and `n` zero-leaves.
pub fn enumerate_trees(family: Family, p: usize, n: usize) -> TreeIter {
    let plain = TreeCounts::new(family, n, ExecMode::Sequential);
    let ctx = Ctx { family, plain, dist: None, loops: None, cache: Mutex::default() };
    gen(Arc::new(ctx), Kind::Plain, p, n)
}

/// Triangulation trees with one loop vertex `ℓ → (1!loop, ℓ−1)`.
pub fn enumerate_loop_trees(p: usize, n: usize) -> TreeIter {
    let plain = TreeCounts::new(Family::Tri, n, ExecMode::Sequential);
    let loops = SpecialCounts::new(&plain, 1, n);
    let ctx = Ctx { family: Family::Tri, plain, dist: None, loops: Some(loops), cache: Mutex::default() };
    gen(Arc::new(ctx), Kind::Loop, p, n)
}

/// Trees with one `DistinguishedLeaf(r)` besides `n` zero-leaves.
pub fn enumerate_distinguished_trees(family: Family, p: usize, r: usize, n: usize) -> TreeIter {
    let plain = TreeCounts::new(family, n.max(1), ExecMode::Sequential);
    let dist = MarkedCounts::new(&plain, r, n);
    let ctx = Ctx { family, plain, dist: Some(dist), loops: None, cache: Mutex::default() };
    gen(Arc::new(ctx), Kind::Dist, p, n)
}

/// One copy of `tree` per zero-leaf, with that leaf marked.
pub fn marked_leaf_variants(tree: &LabeledTree) -> Vec<LabeledTree> {
    tree.zero_leaf_paths()
        .into_iter()
        .map(|path| {
            let mut t = tree.clone();
            t.node_mut(&path).expect("leaf path").mark = Mark::MarkedLeaf;
            t
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Integer;
    use crate::trees::{count_marked_trees_dp, count_trees_dp, validate};

    fn texts(it: TreeIter) -> Vec<String> {
        it.map(|t| t.to_string()).collect()
    }

    #[test]
    fn small_listings() {
        assert_eq!(texts(enumerate_trees(Family::Quad, 1, 2)), ["1(0,0)"]);
        assert_eq!(
            texts(enumerate_trees(Family::Quad, 1, 3)),
            ["1(2(0,1(0,0)))", "1(2(1(0,0),0))"]
        );
        assert_eq!(texts(enumerate_trees(Family::Tri, 1, 2)), ["1(2(0,0))"]);
        assert_eq!(texts(enumerate_trees(Family::Quad, 0, 1)), ["0"]);
    }

    #[test]
    fn generation_matches_dp() {
        for family in [Family::Quad, Family::Tri] {
            for n in 1..=5 {
                for p in 0..=family.label_bound(n) + 1 {
                    let trees: Vec<_> = enumerate_trees(family, p, n).collect();
                    assert_eq!(Integer::from(trees.len()), count_trees_dp(family, p, n));
                    for t in &trees {
                        assert!(validate(family, t, p).is_valid(), "{t}");
                        assert_eq!(t.leaf_count(), n);
                    }
                }
            }
        }
    }

    #[test]
    fn distinguished_generation_matches_dp() {
        for family in [Family::Quad, Family::Tri] {
            for n in 0..=3 {
                for r in 0..=3 {
                    for p in 0..=8 {
                        let k = enumerate_distinguished_trees(family, p, r, n).count();
                        assert_eq!(Integer::from(k), count_marked_trees_dp(family, p, r, n));
                    }
                }
            }
        }
    }

    #[test]
    fn visitors_match_iterators() {
        for family in [Family::Quad, Family::Tri] {
            for n in 1..=5 {
                for p in 0..=family.label_bound(n) + 1 {
                    let mut seen = Vec::new();
                    for_each_tree(family, p, n, |t| seen.push(t.clone()));
                    assert_eq!(seen, enumerate_trees(family, p, n).collect::<Vec<_>>());
                }
            }
        }
        for n in 1..=4 {
            for p in 1..=3 * n {
                let mut seen = Vec::new();
                for_each_loop_tree(p, n, |t| seen.push(t.clone()));
                assert_eq!(seen, enumerate_loop_trees(p, n).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn loop_trees_are_valid() {
        let trees: Vec<_> = enumerate_loop_trees(1, 2).collect();
        assert!(trees.iter().any(|t| t.to_string() == "1(2(1!loop,1(2(0,0))))"));
        for t in trees {
            assert!(validate(Family::Tri, &t, 1).is_valid(), "{t}");
            assert_eq!(t.marked_paths().len(), 1);
        }
    }
}
