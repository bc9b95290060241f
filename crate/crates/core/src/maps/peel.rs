//! Peeling explorations and their inverse.
//!
//! One peeling step deletes the root edge. If the face on its other side is
//! internal, that face merges into the boundary and the new root is the next
//! dart counterclockwise around the root's origin (a reveal). Otherwise the
//! edge is a bridge and the map splits: the component holding the root's
//! origin goes left, the other one right.

use super::{opposite, validate_map, PlanarMap};
use crate::error::{domain, Result};
use crate::trees::{validate, Family, LabeledTree, Mark};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeelEvent {
    Reveal,
    /// Perimeters of the left and right components.
    Split(usize, usize),
}

impl PlanarMap {
    /// Copy of the map where the darts of edge `e` are detached.
    fn without_edge(&self, e: usize) -> PlanarMap {
        let mut m = self.clone();
        for d in [2 * e, 2 * e + 1] {
            let prev = m.sigma_inv(d);
            if prev != d {
                m.vertex_next[prev] = m.vertex_next[d];
                m.vertex_next[d] = d;
            }
        }
        m
    }

    fn component_or_vertex(&self, start: usize, detached: usize) -> PlanarMap {
        if self.sigma(start) == start && start / 2 == detached {
            PlanarMap::vertex_map()
        } else {
            self.component(start)
        }
    }
}

fn step(family: Family, map: &PlanarMap) -> (PeelEvent, Vec<PlanarMap>) {
    let r = map.root().expect("peeling needs an edge");
    let rb = opposite(r);
    let rest = map.without_edge(r / 2);
    if !map.face_of(r).contains(&rb) {
        let sub = rest.component(map.sigma(r));
        return (PeelEvent::Reveal, vec![sub]);
    }
    let left = rest.component_or_vertex(map.sigma(r), r / 2);
    let right = rest.component_or_vertex(map.sigma(rb), r / 2);
    let event = PeelEvent::Split(left.perimeter(family), right.perimeter(family));
    (event, vec![left, right])
}

/// Peels the root edge of a valid map with a boundary.
pub fn peel_step(family: Family, map: &PlanarMap) -> Result<(PeelEvent, Vec<PlanarMap>)> {
    check_bounded(family, map)?;
    if map.root().is_none() {
        return Err(domain("the vertex map has nothing to peel"));
    }
    Ok(step(family, map))
}

fn check_bounded(family: Family, map: &PlanarMap) -> Result<()> {
    if let Some(msg) = validate_map(family, map).failure {
        return Err(domain(format!("invalid map: {msg}")));
    }
    if !map.has_boundary() {
        return Err(domain("peeling needs a map with a boundary"));
    }
    Ok(())
}

/// The peeling tree of a map with a boundary.
pub fn peel_to_tree(family: Family, map: &PlanarMap) -> Result<LabeledTree> {
    check_bounded(family, map)?;
    let tree = tree_of(family, map);
    validate(family, &tree, map.perimeter(family)).into_result()?;
    Ok(tree)
}

fn tree_of(family: Family, map: &PlanarMap) -> LabeledTree {
    if map.root().is_none() {
        return LabeledTree::leaf(0);
    }
    let label = map.perimeter(family);
    let (_, subs) = step(family, map);
    let mut children: Vec<LabeledTree> = subs.iter().map(|m| tree_of(family, m)).collect();
    match children.len() {
        1 => LabeledTree::unary(label, children.pop().expect("one child")),
        _ => LabeledTree { label, mark: Mark::None, children },
    }
}

/// Rebuilds the map whose peeling tree is `tree`.
pub fn build_map_from_tree(family: Family, tree: &LabeledTree) -> Result<PlanarMap> {
    validate(family, tree, tree.label).into_result()?;
    if !tree.marked_paths().is_empty() {
        return Err(domain("maps are built from unmarked trees"));
    }
    Ok(build(family, tree))
}

fn build(family: Family, t: &LabeledTree) -> PlanarMap {
    match t.children.as_slice() {
        [] => PlanarMap::vertex_map(),
        [child] => {
            let mut m = build(family, child);
            let a = m.root().expect("a unary child has edges");
            let face_len = match family {
                Family::Quad => 3,
                Family::Tri => 2,
            };
            let mut c = a;
            for _ in 1..face_len {
                c = m.phi(c);
            }
            let x = opposite(c);
            let (r, rb) = (m.dart_count(), m.dart_count() + 1);
            let pred = m.sigma_inv(a);
            m.vertex_next.extend([a, 0]);
            m.vertex_next[pred] = r;
            m.vertex_next[rb] = m.vertex_next[x];
            m.vertex_next[x] = rb;
            m.root = Some(r);
            m
        }
        [l, rt] => {
            let m1 = build(family, l);
            let m2 = build(family, rt);
            let offset = m1.dart_count();
            let mut sigma = m1.vertex_next.clone();
            sigma.extend(m2.vertex_next.iter().map(|d| d + offset));
            let (r, rb) = (sigma.len(), sigma.len() + 1);
            sigma.extend([r, rb]);
            let mut m = PlanarMap { vertex_next: sigma, root: Some(r), boundary: true };
            if let Some(a1) = m1.root() {
                let pred = m.sigma_inv(a1);
                m.vertex_next[pred] = r;
                m.vertex_next[r] = a1;
            }
            if let Some(a2) = m2.root().map(|d| d + offset) {
                let pred = m.sigma_inv(a2);
                m.vertex_next[pred] = rb;
                m.vertex_next[rb] = a2;
            }
            m
        }
        _ => unreachable!("validated trees have at most two children"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{are_isomorphic, canonical_code};
    use crate::trees::enumerate_trees;

    fn t(s: &str) -> LabeledTree {
        s.parse().unwrap()
    }

    #[test]
    fn edge_map_peels_to_smallest_tree() {
        let m = PlanarMap::edge_map(true);
        assert_eq!(peel_to_tree(Family::Quad, &m).unwrap(), t("1(0,0)"));
        assert_eq!(peel_to_tree(Family::Tri, &m).unwrap(), t("2(0,0)"));
        let (event, subs) = peel_step(Family::Quad, &m).unwrap();
        assert_eq!(event, PeelEvent::Split(0, 0));
        assert_eq!(subs, vec![PlanarMap::vertex_map(), PlanarMap::vertex_map()]);
        assert_eq!(build_map_from_tree(Family::Quad, &t("1(0,0)")).unwrap(), m);
    }

    #[test]
    fn the_two_smallest_quadrangulations_differ() {
        let maps: Vec<_> = enumerate_trees(Family::Quad, 1, 3)
            .map(|t| build_map_from_tree(Family::Quad, &t).unwrap())
            .collect();
        assert_eq!(maps.len(), 2);
        assert!(!are_isomorphic(&maps[0], &maps[1]));
        for m in &maps {
            assert!(validate_map(Family::Quad, m).is_valid());
            assert_eq!(m.vertex_count(), 3);
        }
    }

    #[test]
    fn triangulation_round_trip() {
        for p in 1..=3 {
            for tree in enumerate_trees(Family::Tri, p, 4) {
                let m = build_map_from_tree(Family::Tri, &tree).unwrap();
                assert!(validate_map(Family::Tri, &m).is_valid(), "{tree}");
                assert_eq!(peel_to_tree(Family::Tri, &m).unwrap(), tree);
            }
        }
    }

    #[test]
    fn large_quadrangulation_bookkeeping() {
        let tree = enumerate_trees(Family::Quad, 6, 12).nth(1000).unwrap();
        let m = build_map_from_tree(Family::Quad, &tree).unwrap();
        assert_eq!(m.vertex_count(), 12);
        assert_eq!(m.perimeter(Family::Quad), 6);
        assert_eq!(m.edge_count(), 2 * 12 - 6 - 2);
        let back = peel_to_tree(Family::Quad, &m).unwrap();
        assert_eq!(back, tree);
        assert_eq!(canonical_code(&build_map_from_tree(Family::Quad, &back).unwrap()), canonical_code(&m));
    }

    #[test]
    fn unbounded_maps_cannot_be_peeled() {
        assert!(peel_step(Family::Quad, &PlanarMap::edge_map(false)).is_err());
        assert!(build_map_from_tree(Family::Quad, &t("1(0!leaf,0)")).is_err());
    }
}
