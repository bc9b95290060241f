//! Root transforms turning maps without boundary into maps with a small
//! boundary. New darts are appended, so the inverses recover the exact
//! input by deleting the last edges.

use super::{opposite, validate_map, PlanarMap};
use crate::error::{domain, Result};
use crate::trees::Family;

fn check(family: Family, map: &PlanarMap) -> Result<()> {
    match validate_map(family, map).failure {
        Some(msg) => Err(domain(format!("invalid map: {msg}"))),
        None => Ok(()),
    }
}

/// Adds a parallel copy `s` of dart `d` so that `d`, `s̄` bound a 2-gon
/// to the right of `d`. Returns `s`.
fn double(m: &mut PlanarMap, d: usize) -> usize {
    let (s, sb) = (m.dart_count(), m.dart_count() + 1);
    let pred = m.sigma_inv(d);
    m.vertex_next.extend([d, sb]);
    m.vertex_next[pred] = s;
    let db = opposite(d);
    m.vertex_next[sb] = m.vertex_next[db];
    m.vertex_next[db] = sb;
    s
}

/// Opens the root edge of a quadrangulation without boundary into a 2-gon
/// to the right of the root. The edge map only gains its boundary.
pub fn root_transform_quad(map: &PlanarMap) -> Result<PlanarMap> {
    check(Family::Quad, map)?;
    if map.has_boundary() {
        return Err(domain("the map already has a boundary"));
    }
    let mut m = map.clone();
    m.boundary = true;
    if m.dart_count() > 2 {
        double(&mut m, map.root().expect("rooted"));
    }
    Ok(m)
}

pub fn root_transform_quad_inverse(map: &PlanarMap) -> Result<PlanarMap> {
    check(Family::Quad, map)?;
    if map.boundary_degree() != 2 {
        return Err(domain("the boundary must be a 2-gon"));
    }
    let mut m = map.clone();
    m.boundary = false;
    if m.dart_count() > 2 {
        let r = m.root().expect("rooted");
        m.remove_edge(m.phi(r) / 2);
    }
    Ok(m)
}

/// Doubles dart `d` and places a loop inside the new 2-gon, with the 1-gon
/// to the right of the loop dart. A map without boundary is rooted on the
/// loop; for a map with a boundary the root is kept, moving to the copy of
/// `d` when `d` was the root. The edge map only receives the loop.
pub fn root_transform_tri(map: &PlanarMap, d: usize) -> Result<PlanarMap> {
    check(Family::Tri, map)?;
    if d >= map.dart_count() {
        return Err(domain(format!("dart {d} does not exist")));
    }
    let mut m = map.clone();
    let bare_edge = !map.has_boundary() && map.dart_count() == 2;
    let copy = (!bare_edge).then(|| double(&mut m, d));
    let (l, lb) = (m.dart_count(), m.dart_count() + 1);
    let pred = m.sigma_inv(d);
    m.vertex_next.extend([d, l]);
    m.vertex_next[pred] = lb;
    if !map.has_boundary() {
        m.boundary = true;
        m.root = Some(l);
    } else if map.root() == Some(d) {
        m.root = copy;
    }
    Ok(m)
}

/// Removes the loop at dart `l` and the doubled edge beside it. Returns the
/// map and the distinguished dart.
pub fn root_transform_tri_inverse(map: &PlanarMap, l: usize) -> Result<(PlanarMap, usize)> {
    if l >= map.dart_count() || map.phi(l) != l {
        return Err(domain("the dart does not bound a 1-gon on its right"));
    }
    let d = map.sigma(l);
    let lb = opposite(l);
    let unbounded = map.root() == Some(l);
    let mut m = map.clone();
    let copy = m.sigma_inv(lb);
    if unbounded && m.dart_count() == 4 {
        m.remove_edge(l / 2);
        m.root = Some(d);
        m.boundary = false;
        return Ok((m, d));
    }
    if copy / 2 == d / 2 || m.sigma(opposite(d)) != opposite(copy) {
        return Err(domain("the loop does not sit in a doubled edge"));
    }
    let was_root = m.root() == Some(copy);
    // The loop and the copy are the last two edges, so `d` keeps its id.
    let last = m.edge_count() - 1;
    if l / 2 != last || copy / 2 != last - 1 {
        return Err(domain("the loop and its doubled edge must be the newest edges"));
    }
    m.remove_edge(l / 2);
    m.remove_edge(copy / 2);
    if unbounded {
        m.root = Some(d);
        m.boundary = false;
    } else if was_root {
        m.root = Some(d);
    }
    Ok((m, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{build_map_from_tree, peel_to_tree};
    use crate::trees::{enumerate_trees, LabeledTree};

    #[test]
    fn quad_edge_map_gains_a_boundary() {
        let m = root_transform_quad(&PlanarMap::edge_map(false)).unwrap();
        assert_eq!(m, PlanarMap::edge_map(true));
        assert_eq!(root_transform_quad_inverse(&m).unwrap(), PlanarMap::edge_map(false));
    }

    #[test]
    fn quad_transform_adds_one_edge_and_face() {
        // Spheres are obtained by closing a 2-gon boundary of a tree map.
        for tree in enumerate_trees(Family::Quad, 1, 4) {
            let bounded = build_map_from_tree(Family::Quad, &tree).unwrap();
            let sphere = root_transform_quad_inverse(&bounded).unwrap();
            assert!(validate_map(Family::Quad, &sphere).is_valid());
            assert_eq!(sphere.edge_count(), 2 * 4 - 4);
            let again = root_transform_quad(&sphere).unwrap();
            assert_eq!(again.edge_count(), sphere.edge_count() + 1);
            assert_eq!(again.face_count(), sphere.face_count() + 1);
            assert_eq!(again.vertex_count(), sphere.vertex_count());
            assert_eq!(peel_to_tree(Family::Quad, &again).unwrap(), tree);
            assert_eq!(root_transform_quad_inverse(&again).unwrap(), sphere);
        }
    }

    #[test]
    fn tri_edge_map_becomes_a_one_gon() {
        let m = root_transform_tri(&PlanarMap::edge_map(false), 0).unwrap();
        assert!(validate_map(Family::Tri, &m).is_valid());
        assert_eq!(m.edge_count(), 3 * 2 - 4);
        assert_eq!(m.boundary_degree(), 1);
        let t: LabeledTree = "1(2(0,0))".parse().unwrap();
        assert_eq!(peel_to_tree(Family::Tri, &m).unwrap(), t);
        let (back, d) = root_transform_tri_inverse(&m, m.root().unwrap()).unwrap();
        assert_eq!((back, d), (PlanarMap::edge_map(false), 0));
    }

    #[test]
    fn tri_transform_twice_gives_a_distinguished_loop() {
        let t: LabeledTree = "1(2(3(0,1(2(0,0)))))".parse().unwrap();
        let bounded = build_map_from_tree(Family::Tri, &t).unwrap();
        assert!(validate_map(Family::Tri, &bounded).is_valid());
        for d in 0..bounded.dart_count() {
            let m = root_transform_tri(&bounded, d).unwrap();
            let l = m.dart_count() - 2;
            // Apart from the boundary, only the loop's 1-gon is not a triangle.
            let outer = m.face_of(m.root().unwrap());
            for face in m.faces() {
                if !outer.contains(&face[0]) && !face.contains(&l) {
                    assert_eq!(face.len(), 3);
                }
            }
            assert_eq!(m.edge_count(), bounded.edge_count() + 2);
            assert_eq!(m.face_count(), bounded.face_count() + 2);
            assert_eq!(m.boundary_degree(), bounded.boundary_degree());
            assert_eq!(m.face_of(l).len(), 1);
            assert_eq!(root_transform_tri_inverse(&m, l).unwrap(), (bounded.clone(), d));
        }
    }
}
