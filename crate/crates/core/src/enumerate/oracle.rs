//! Cross-checks of the solvers against the tree oracles, and exhaustive
//! round trips of the bijections.

use std::collections::HashSet;

use num_traits::Zero;

use super::one::{
    quad_boundary_table_tutte, quad_boundary_table_with, quad_counts_with, tri_boundary_table_with,
    tri_counts_with,
};
use crate::error::{usage, Result};
use crate::lastcar::{decompose, decompose_marked, glue, glue_marked, glue_owned, TreeSequence};
use crate::maps::{build_map_from_tree, canonical_code, peel_to_tree, validate_map};
use crate::par::{fold_iter, map_range, ExecMode};
use crate::series::Integer;
use crate::trees::{
    enumerate_distinguished_trees, enumerate_trees, for_each_loop_tree,
    for_each_tree, validate, Family,
    LabeledTree, Mark, SpecialCounts, TreeCounts,
};

/// Largest leaf count for which trees are generated exhaustively in
/// [`oracle_compare`] and maps are rebuilt in [`oracle_roundtrip`].
pub const EXHAUSTIVE_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub n: usize,
    pub p: usize,
    /// Source name and value for every method consulted on the cell.
    pub values: Vec<(&'static str, Integer)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareReport {
    pub family: Family,
    pub max_n: usize,
    pub cells: usize,
    pub mismatch: Option<Mismatch>,
}

/// Compares every (n, p) cell across the solvers, the tree DP and, for
/// small n, exhaustive generation.
pub fn oracle_compare(family: Family, max_n: usize, mode: ExecMode) -> Result<CompareReport> {
    if max_n < 2 {
        return Err(usage("oracle comparison needs --max-n of at least 2"));
    }
    let dp = TreeCounts::new(family, max_n, mode);
    let (uni, tables): (_, Vec<(&'static str, crate::series::BiSeries)>) = match family {
        Family::Quad => {
            let q = quad_counts_with(max_n, mode)?;
            let solved = quad_boundary_table_with(max_n, mode)?;
            let ladder = quad_boundary_table_tutte(&q)?;
            (q, vec![("bivariate", solved), ("ladder", ladder)])
        }
        Family::Tri => {
            let t = tri_counts_with(max_n, mode)?;
            (t, vec![("bivariate", tri_boundary_table_with(max_n, mode)?.series)])
        }
    };
    let mut cells = 0;
    for n in 1..=max_n {
        let bound = family.label_bound(n);
        let generated: Vec<Option<usize>> = map_range(mode, 0..bound + 1, |p| {
            (n <= EXHAUSTIVE_LIMIT).then(|| enumerate_trees(family, p, n).count())
        });
        for (p, generated) in generated.into_iter().enumerate() {
            let expected = dp.get(p, n);
            let mut values = vec![("dp", expected.clone())];
            for (name, t) in &tables {
                values.push((*name, t.coeff(n, p)));
            }
            if p == 1 && n >= 2 {
                values.push(("recursion", uni.coeff(n)));
            }
            if let Some(k) = generated {
                values.push(("generated", Integer::from(k)));
            }
            cells += 1;
            if values.iter().any(|(_, v)| v != expected) {
                return Ok(CompareReport { family, max_n, cells, mismatch: Some(Mismatch { n, p, values }) });
            }
        }
    }
    Ok(CompareReport { family, max_n, cells, mismatch: None })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RoundTripReport {
    pub decompositions: usize,
    pub marked_decompositions: usize,
    pub maps: usize,
    pub failures: Vec<String>,
}

impl RoundTripReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(mut self, other: RoundTripReport) -> Self {
        self.decompositions += other.decompositions;
        self.marked_decompositions += other.marked_decompositions;
        self.maps += other.maps;
        if self.failures.len() < 10 {
            self.failures.extend(other.failures.into_iter().take(10 - self.failures.len()));
        }
        self
    }

    fn fail(mut self, msg: String) -> Self {
        if self.failures.len() < 10 {
            self.failures.push(msg);
        }
        self
    }
}

/// Number of zero-leaves a decomposition must produce.
fn expected_leaves(family: Family, n: usize, k: usize) -> usize {
    match family {
        Family::Quad => n + k - 2,
        Family::Tri => n + k - 1,
    }
}

fn check_lastcar(family: Family, tree: &LabeledTree, path: &[usize], n: usize) -> Result<(), String> {
    let seq = decompose(family, tree, path).map_err(|e| format!("{tree}: {e}"))?;
    for piece in &seq.trees {
        if let Some(d) = validate(family, piece, piece.label).failure {
            return Err(format!("{tree}: piece {piece} breaks {}", d.rule));
        }
    }
    let k = seq.trees.len();
    if seq.zero_leaves() != expected_leaves(family, n, k) {
        return Err(format!("{tree}: {} leaves over {k} pieces", seq.zero_leaves()));
    }
    let flipped = (family == Family::Quad).then(|| flip_side(&seq));
    let back = glue_owned(seq).map_err(|e| format!("{tree}: glue failed: {e}"))?;
    let restored = match family {
        Family::Quad => {
            let mut marked = tree.clone();
            marked.node_mut(path).expect("leaf").mark = Mark::MarkedLeaf;
            back == marked
        }
        Family::Tri => back == *tree,
    };
    if !restored {
        return Err(format!("{tree}: glued back to {back}"));
    }
    if let Some(flipped) = flipped {
        let other = glue(&flipped).map_err(|e| format!("{tree}: flipped glue failed: {e}"))?;
        let again = crate::lastcar::decompose_at(family, &other)
            .map_err(|e| format!("{other}: {e}"))?;
        if again != flipped {
            return Err(format!("{tree}: flipped side does not round-trip"));
        }
    }
    Ok(())
}

fn flip_side(seq: &TreeSequence) -> TreeSequence {
    let mut out = seq.clone();
    let first = &mut out.trees[0];
    let path = first.marked_paths().remove(0);
    let node = first.node_mut(&path).expect("mark");
    if let Mark::MarkedVertex(Some(s)) = node.mark {
        node.mark = Mark::MarkedVertex(Some(s.flip()));
    }
    out
}

fn lastcar_sweep(family: Family, max_n: usize, mode: ExecMode) -> RoundTripReport {
    let mut report = RoundTripReport::default();
    for n in 1..=max_n {
        let bound = match family {
            Family::Quad => family.label_bound(n),
            Family::Tri => family.label_bound(n) + 1,
        };
        let parts = map_range(mode, 1..bound + 1, |p| {
            let mut acc = RoundTripReport::default();
            let mut step = |tree: &LabeledTree| {
                let paths = match family {
                    Family::Quad => tree.zero_leaf_paths(),
                    Family::Tri => tree.find_mark().into_iter().collect(),
                };
                for path in &paths {
                    if family == Family::Quad && p == 1 && n == 2 {
                        continue;
                    }
                    acc.decompositions += 1;
                    if let Err(e) = check_lastcar(family, tree, path, n) {
                        acc = std::mem::take(&mut acc).fail(e);
                    }
                }
            };
            match family {
                Family::Quad => for_each_tree(family, p, n, &mut step),
                Family::Tri => for_each_loop_tree(p, n, &mut step),
            }
            acc
        });
        for part in parts {
            report = report.merge(part);
        }
    }
    report
}

fn marked_sweep(family: Family, max_n: usize, max_r: usize) -> RoundTripReport {
    let mut report = RoundTripReport::default();
    for n in 0..=max_n {
        for r in 1..=max_r {
            for p in 1..=(3 * (n + r + 2)) {
                for tree in enumerate_distinguished_trees(family, p, r, n) {
                    if p == 1 && r == 1 && n == 0 {
                        continue;
                    }
                    report.marked_decompositions += 1;
                    let res = decompose_marked(family, &tree)
                        .and_then(|d| glue_marked(family, &d))
                        .map_err(|e| e.to_string());
                    match res {
                        Ok(back) if back == tree => {}
                        Ok(back) => report = report.fail(format!("{tree}: glued back to {back}")),
                        Err(e) => report = report.fail(format!("{tree}: {e}")),
                    }
                }
            }
        }
    }
    report
}

fn map_sweep(family: Family, max_n: usize, mode: ExecMode) -> RoundTripReport {
    let mut report = RoundTripReport::default();
    let dp = TreeCounts::new(family, max_n, mode);
    for n in 1..=max_n {
        for p in 0..=family.label_bound(n) {
            let step = |(mut acc, mut codes): (RoundTripReport, Vec<Vec<u8>>), tree: LabeledTree| {
                acc.maps += 1;
                let res = build_map_from_tree(family, &tree).map_err(|e| e.to_string()).and_then(|m| {
                    if let Some(f) = validate_map(family, &m).failure {
                        return Err(format!("invalid map: {f}"));
                    }
                    if m.vertex_count() != n || m.perimeter(family) != p {
                        return Err("vertex count or perimeter is off".into());
                    }
                    let back = peel_to_tree(family, &m).map_err(|e| e.to_string())?;
                    if back != tree {
                        return Err(format!("peeled back to {back}"));
                    }
                    Ok(canonical_code(&m))
                });
                match res {
                    Ok(code) => codes.push(code),
                    Err(e) => acc = acc.fail(format!("{tree}: {e}")),
                }
                (acc, codes)
            };
            let combine = |(a, mut ca): (RoundTripReport, Vec<Vec<u8>>), (b, cb): (RoundTripReport, Vec<Vec<u8>>)| {
                ca.extend(cb);
                (a.merge(b), ca)
            };
            let (part, codes) = fold_iter(
                mode,
                enumerate_trees(family, p, n),
                (RoundTripReport::default(), Vec::new()),
                step,
                combine,
            );
            report = report.merge(part);
            let distinct: HashSet<&Vec<u8>> = codes.iter().collect();
            if distinct.len() != codes.len() {
                report = report.fail(format!("isomorphic maps among ({n}, {p})"));
            }
            if Integer::from(distinct.len()) != *dp.get(p, n) {
                report = report.fail(format!("{} maps for ({n}, {p}), expected {}", distinct.len(), dp.get(p, n)));
            }
        }
    }
    report
}

/// Last-car round trips up to `max_n`, marked-leaf round trips and map
/// round trips up to [`EXHAUSTIVE_LIMIT`].
pub fn oracle_roundtrip(family: Family, max_n: usize, mode: ExecMode) -> Result<RoundTripReport> {
    if max_n < 2 {
        return Err(usage("round trips need --max-n of at least 2"));
    }
    let small = max_n.min(EXHAUSTIVE_LIMIT);
    let report = lastcar_sweep(family, max_n, mode)
        .merge(marked_sweep(family, small.min(4), 3))
        .merge(map_sweep(family, small, mode));
    Ok(report)
}

/// Marked-leaf decomposition sweep on its own.
pub fn lastcar_roundtrip(family: Family, max_n: usize, mode: ExecMode) -> RoundTripReport {
    lastcar_sweep(family, max_n, mode)
}

/// Map round trips on their own.
pub fn map_roundtrip(family: Family, max_n: usize, mode: ExecMode) -> RoundTripReport {
    map_sweep(family, max_n, mode)
}

/// Number of loop trees, used to size the triangulation sweep.
pub fn loop_tree_count(max_n: usize) -> Integer {
    let plain = TreeCounts::new(Family::Tri, max_n, ExecMode::Sequential);
    let loops = SpecialCounts::new(&plain, 1, max_n);
    let mut total = Integer::zero();
    for n in 1..=max_n {
        for p in 0..=3 * (n + 3) {
            total += loops.get(p, n);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_comparisons_agree() {
        for family in [Family::Quad, Family::Tri] {
            let r = oracle_compare(family, 5, ExecMode::Sequential).unwrap();
            assert_eq!(r.mismatch, None);
        }
        assert!(oracle_compare(Family::Tri, 1, ExecMode::Sequential).is_err());
    }

    #[test]
    fn small_round_trips_pass() {
        for family in [Family::Quad, Family::Tri] {
            let r = oracle_roundtrip(family, 4, ExecMode::Sequential).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
            assert!(r.decompositions > 0 && r.maps > 0 && r.marked_decompositions > 0);
        }
    }
}
