//! Rooted planar maps as rotation systems on darts.
//!
//! Dart `d` and `d ^ 1` form an edge. `vertex_next` turns counterclockwise
//! around the origin of a dart, and the face to the right of `d` continues
//! with `vertex_next[d ^ 1]`. The boundary, when present, is the face to the
//! right of the root. The vertex map has no dart and no root.

mod code;
mod peel;
mod transform;

use serde_json::{json, Value};

use crate::error::{usage, Result};
use crate::trees::Family;

pub use code::{are_isomorphic, canonical_code, canonical_hex};
pub use peel::{build_map_from_tree, peel_step, peel_to_tree, PeelEvent};
pub use transform::{
    root_transform_quad, root_transform_quad_inverse, root_transform_tri,
    root_transform_tri_inverse,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarMap {
    vertex_next: Vec<usize>,
    root: Option<usize>,
    boundary: bool,
}

#[inline]
pub fn opposite(d: usize) -> usize {
    d ^ 1
}

impl PlanarMap {
    pub fn vertex_map() -> Self {
        PlanarMap { vertex_next: Vec::new(), root: None, boundary: true }
    }

    /// Two vertices joined by one edge.
    pub fn edge_map(boundary: bool) -> Self {
        PlanarMap { vertex_next: vec![0, 1], root: Some(0), boundary }
    }

    /// Builds a map from its rotation, checking that it is a permutation on
    /// an even number of darts.
    pub fn from_parts(vertex_next: Vec<usize>, root: Option<usize>, boundary: bool) -> Result<Self> {
        let n = vertex_next.len();
        if !n.is_multiple_of(2) {
            return Err(usage("a map needs an even number of darts"));
        }
        let mut seen = vec![false; n];
        for &d in &vertex_next {
            if d >= n || std::mem::replace(&mut seen[d], true) {
                return Err(usage("vertex_next is not a permutation"));
            }
        }
        match root {
            None if n > 0 => return Err(usage("a map with edges needs a root")),
            Some(r) if r >= n => return Err(usage("root dart out of range")),
            _ => {}
        }
        Ok(PlanarMap { vertex_next, root, boundary })
    }

    pub fn dart_count(&self) -> usize {
        self.vertex_next.len()
    }

    pub fn edge_count(&self) -> usize {
        self.dart_count() / 2
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn has_boundary(&self) -> bool {
        self.boundary
    }

    pub fn vertex_next(&self) -> &[usize] {
        &self.vertex_next
    }

    pub fn sigma(&self, d: usize) -> usize {
        self.vertex_next[d]
    }

    pub fn sigma_inv(&self, d: usize) -> usize {
        let mut e = d;
        while self.vertex_next[e] != d {
            e = self.vertex_next[e];
        }
        e
    }

    /// Next dart along the face to the right of `d`.
    pub fn phi(&self, d: usize) -> usize {
        self.vertex_next[opposite(d)]
    }

    fn orbit(&self, d: usize, step: impl Fn(usize) -> usize) -> Vec<usize> {
        let mut out = vec![d];
        let mut e = step(d);
        while e != d {
            out.push(e);
            e = step(e);
        }
        out
    }

    /// Darts of the face to the right of `d`, starting at `d`.
    pub fn face_of(&self, d: usize) -> Vec<usize> {
        self.orbit(d, |e| self.phi(e))
    }

    /// Darts leaving the origin of `d`, counterclockwise from `d`.
    pub fn vertex_of(&self, d: usize) -> Vec<usize> {
        self.orbit(d, |e| self.sigma(e))
    }

    fn cycles(&self, step: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.dart_count()];
        let mut out = Vec::new();
        for d in 0..self.dart_count() {
            if seen[d] {
                continue;
            }
            let c = self.orbit(d, &step);
            for &e in &c {
                seen[e] = true;
            }
            out.push(c);
        }
        out
    }

    pub fn faces(&self) -> Vec<Vec<usize>> {
        self.cycles(|e| self.phi(e))
    }

    pub fn vertex_count(&self) -> usize {
        if self.dart_count() == 0 {
            1
        } else {
            self.cycles(|e| self.sigma(e)).len()
        }
    }

    pub fn face_count(&self) -> usize {
        if self.dart_count() == 0 {
            1
        } else {
            self.faces().len()
        }
    }

    /// Degree of the boundary face; 0 for the vertex map.
    pub fn boundary_degree(&self) -> usize {
        self.root.map_or(0, |r| self.face_of(r).len())
    }

    /// Peeling-tree label of the boundary: half the degree for
    /// quadrangulations, the degree for triangulations.
    pub fn perimeter(&self, family: Family) -> usize {
        match family {
            Family::Quad => self.boundary_degree() / 2,
            Family::Tri => self.boundary_degree(),
        }
    }

    fn is_connected(&self) -> bool {
        let Some(root) = self.root else { return true };
        let mut seen = vec![false; self.dart_count()];
        let mut stack = vec![root];
        seen[root] = true;
        let mut count = 1;
        while let Some(d) = stack.pop() {
            for e in [opposite(d), self.sigma(d)] {
                if !seen[e] {
                    seen[e] = true;
                    count += 1;
                    stack.push(e);
                }
            }
        }
        count == self.dart_count()
    }

    /// Replaces the rotation of edge `e` by skipping its darts and moves the
    /// last edge into slot `e`, so that only the last edge's ids change.
    /// The root is remapped; the caller decides what happens when it is removed.
    pub(crate) fn remove_edge(&mut self, e: usize) {
        let (a, b) = (2 * e, 2 * e + 1);
        for d in [a, b] {
            let prev = self.sigma_inv(d);
            let next = self.vertex_next[d];
            if prev != d {
                self.vertex_next[prev] = next;
            }
            self.vertex_next[d] = d;
        }
        let last = self.edge_count() - 1;
        let rename = |d: usize| if d / 2 == last { 2 * e + (d & 1) } else { d };
        if e != last {
            for d in [2 * last, 2 * last + 1] {
                self.vertex_next[2 * e + (d & 1)] = rename(self.vertex_next[d]);
            }
            for s in self.vertex_next.iter_mut() {
                *s = rename(*s);
            }
        }
        self.vertex_next.truncate(2 * last);
        self.root = self.root.filter(|&r| r / 2 != e).map(rename);
    }

    /// The connected component of `start` as a map rooted at `start`.
    /// Darts are renumbered in discovery order.
    pub(crate) fn component(&self, start: usize) -> PlanarMap {
        let mut new_edge = vec![usize::MAX; self.edge_count()];
        let mut order = Vec::new();
        let mut stack = vec![start];
        while let Some(d) = stack.pop() {
            if new_edge[d / 2] != usize::MAX {
                continue;
            }
            new_edge[d / 2] = order.len();
            order.push(d / 2);
            for e in [d, opposite(d)] {
                stack.push(self.sigma(e));
            }
        }
        let id = |d: usize| 2 * new_edge[d / 2] + (d & 1);
        let mut vertex_next = vec![0; 2 * order.len()];
        for &e in &order {
            for d in [2 * e, 2 * e + 1] {
                vertex_next[id(d)] = id(self.sigma(d));
            }
        }
        PlanarMap { vertex_next, root: Some(id(start)), boundary: true }
    }

    pub fn to_json(&self) -> Value {
        let opposite: Vec<usize> = (0..self.dart_count()).map(opposite).collect();
        json!({
            "darts": self.dart_count(),
            "opposite": opposite,
            "vertex_next": self.vertex_next,
            "root": self.root,
            "boundary": self.boundary,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let ints = |key: &str| -> Result<Vec<usize>> {
            v[key]
                .as_array()
                .ok_or_else(|| usage(format!("map JSON needs a \"{key}\" array")))?
                .iter()
                .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| usage("darts are integers")))
                .collect()
        };
        let vertex_next = ints("vertex_next")?;
        let opp = ints("opposite")?;
        if opp.len() != vertex_next.len() || opp.iter().enumerate().any(|(d, &o)| o != opposite(d)) {
            return Err(usage("opposite must pair darts 2k and 2k+1"));
        }
        let root = match &v["root"] {
            Value::Null => None,
            r => Some(r.as_u64().ok_or_else(|| usage("root must be an integer or null"))? as usize),
        };
        let boundary = v["boundary"].as_bool().unwrap_or(true);
        Self::from_parts(vertex_next, root, boundary)
    }
}

/// Outcome of [`validate_map`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapValidation {
    pub failure: Option<String>,
}

impl MapValidation {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks connectivity, genus 0, face degrees and the boundary.
pub fn validate_map(family: Family, map: &PlanarMap) -> MapValidation {
    let fail = |msg: String| MapValidation { failure: Some(msg) };
    if map.dart_count() == 0 {
        return MapValidation { failure: None };
    }
    if !map.is_connected() {
        return fail("the map is not connected".into());
    }
    let (v, e, f) = (map.vertex_count(), map.edge_count(), map.face_count());
    if v + f != e + 2 {
        return fail(format!("Euler characteristic {v} - {e} + {f} is not 2"));
    }
    let root = map.root.expect("rooted");
    if map.dart_count() == 2 && !map.boundary {
        return MapValidation { failure: None };
    }
    let want = match family {
        Family::Quad => 4,
        Family::Tri => 3,
    };
    let outer = map.boundary.then(|| map.face_of(root));
    for face in map.faces() {
        if outer.as_ref().is_some_and(|o| o.contains(&face[0])) {
            continue;
        }
        if face.len() != want {
            return fail(format!("face {face:?} has degree {}", face.len()));
        }
    }
    if family == Family::Quad && !map.boundary_degree().is_multiple_of(2) {
        return fail("the boundary of a quadrangulation has even degree".into());
    }
    MapValidation { failure: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_maps_are_valid() {
        let edge = PlanarMap::edge_map(true);
        assert!(validate_map(Family::Quad, &edge).is_valid());
        assert_eq!(edge.perimeter(Family::Quad), 1);
        assert_eq!(edge.vertex_count(), 2);
        let vertex = PlanarMap::vertex_map();
        assert!(validate_map(Family::Quad, &vertex).is_valid());
        assert_eq!(vertex.perimeter(Family::Quad), 0);
        assert_eq!(vertex.vertex_count(), 1);
    }

    #[test]
    fn pentagon_is_rejected() {
        // A 5-cycle with the root on one of its two faces, both pentagons.
        let mut sigma = vec![0; 10];
        for i in 0..5 {
            let out = 2 * i;
            let back = 2 * ((i + 4) % 5) + 1;
            sigma[out] = back;
            sigma[back] = out;
        }
        let m = PlanarMap::from_parts(sigma, Some(0), true).unwrap();
        let v = validate_map(Family::Quad, &m);
        assert!(v.failure.unwrap().contains("degree 5"));
    }

    #[test]
    fn from_parts_rejects_non_permutations() {
        assert!(PlanarMap::from_parts(vec![0, 0], Some(0), true).is_err());
        assert!(PlanarMap::from_parts(vec![0], Some(0), true).is_err());
        assert!(PlanarMap::from_parts(vec![1, 0], None, true).is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = PlanarMap::edge_map(false);
        assert_eq!(PlanarMap::from_json(&m.to_json()).unwrap(), m);
        let v = PlanarMap::vertex_map();
        assert_eq!(PlanarMap::from_json(&v.to_json()).unwrap(), v);
    }
}
