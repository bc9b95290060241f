//! Root-preserving canonical codes.
//!
//! Darts are numbered in breadth-first order from the root, exploring the
//! opposite dart before the rotation successor. Because a rooted map has no
//! nontrivial automorphism, the resulting sequence of (opposite, successor)
//! numbers identifies the map up to root-preserving isomorphism.

use std::collections::VecDeque;

use super::{opposite, PlanarMap};

/// Code words: dart count, boundary flag, then one pair per dart, each
/// written as a little-endian `u32`.
pub fn canonical_code(map: &PlanarMap) -> Vec<u8> {
    let n = map.dart_count();
    let mut words: Vec<u32> = vec![n as u32, u32::from(map.has_boundary())];
    if let Some(root) = map.root() {
        let mut label = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        label[root] = 0;
        while let Some(d) = queue.pop_front() {
            order.push(d);
            for e in [opposite(d), map.sigma(d)] {
                if label[e] == u32::MAX {
                    label[e] = (order.len() + queue.len()) as u32;
                    queue.push_back(e);
                }
            }
        }
        for d in order {
            words.push(label[opposite(d)]);
            words.push(label[map.sigma(d)]);
        }
    }
    words.iter().flat_map(|w| w.to_le_bytes()).collect()
}

/// Lowercase hex rendering of [`canonical_code`].
pub fn canonical_hex(map: &PlanarMap) -> String {
    canonical_code(map).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn are_isomorphic(a: &PlanarMap, b: &PlanarMap) -> bool {
    canonical_code(a) == canonical_code(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeling_keeps_the_code() {
        // A path with two edges, rooted at the middle vertex.
        let a = PlanarMap::from_parts(vec![2, 1, 0, 3], Some(0), true).unwrap();
        let b = PlanarMap::from_parts(vec![0, 3, 2, 1], Some(1), true).unwrap();
        assert!(are_isomorphic(&a, &b));
        let c = PlanarMap::from_parts(vec![0, 3, 2, 1], Some(2), true).unwrap();
        assert!(!are_isomorphic(&a, &c));
    }

    #[test]
    fn vertex_map_sentinel() {
        assert_eq!(canonical_hex(&PlanarMap::vertex_map()), "0000000001000000");
    }
}
