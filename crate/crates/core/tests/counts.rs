use map_peel::enumerate::{
    oracle_compare, quad_boundary_table, quad_counts, quad_two_boundary, tri_counts,
    tri_two_boundary,
};
use map_peel::trees::{count_special_trees_dp, count_trees_dp};
use map_peel::{ExecMode, Family, Integer};
use num_traits::One;

fn factorial(k: u64) -> Integer {
    (1..=k).fold(Integer::one(), |acc, i| acc * i)
}

fn double_factorial(k: u64) -> Integer {
    (1..=k).rev().step_by(2).fold(Integer::one(), |acc, i| acc * i)
}

/// Rooted quadrangulations with k faces: 2·3^k (2k)! / (k! (k+2)!).
fn quads_with_faces(k: u64) -> Integer {
    Integer::from(2) * Integer::from(3).pow(k as u32) * factorial(2 * k)
        / (factorial(k) * factorial(k + 2))
}

/// Rooted triangulations with 2k faces: 2^(2k+1) (3k)!! / ((k+2)! k!!).
fn triangulations_with_faces(k: u64) -> Integer {
    Integer::from(2).pow(2 * k as u32 + 1) * double_factorial(3 * k)
        / (factorial(k + 2) * double_factorial(k))
}

#[test]
fn small_quadrangulation_counts() {
    let q = quad_counts(6).unwrap();
    let expected: Vec<Integer> = [1, 2, 9, 54, 378].into_iter().map(Integer::from).collect();
    assert_eq!(q.coeffs()[2..], expected[..]);
}

#[test]
fn small_triangulation_counts() {
    let t = tri_counts(5).unwrap();
    let expected: Vec<Integer> = [1, 4, 32, 336].into_iter().map(Integer::from).collect();
    assert_eq!(t.coeffs()[2..], expected[..]);
}

#[test]
fn quadrangulations_follow_the_closed_form() {
    let q = quad_counts(120).unwrap();
    for n in 2..=120u64 {
        assert_eq!(q.coeff(n as usize), quads_with_faces(n - 2), "n = {n}");
    }
}

#[test]
fn triangulations_follow_the_closed_form() {
    let t = tri_counts(120).unwrap();
    for n in 2..=120u64 {
        assert_eq!(t.coeff(n as usize), triangulations_with_faces(n - 2), "n = {n}");
    }
}

#[test]
fn orders_below_the_base_case_are_rejected() {
    assert!(quad_counts(1).is_err());
    assert!(tri_counts(0).is_err());
    assert!(oracle_compare(Family::Quad, 1, ExecMode::Sequential).is_err());
}

#[test]
fn boundary_tables_agree_with_the_tree_counts() {
    for family in [Family::Quad, Family::Tri] {
        let report = oracle_compare(family, 7, ExecMode::Sequential).unwrap();
        assert_eq!(report.mismatch, None, "{family}");
    }
    let q = quad_boundary_table(6).unwrap();
    for n in 1..=6 {
        for p in 0..=q.ybound(n) {
            assert_eq!(q.coeff(n, p), count_trees_dp(Family::Quad, p, n));
        }
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let seq = oracle_compare(Family::Tri, 6, ExecMode::Sequential).unwrap();
    let par = oracle_compare(Family::Tri, 6, ExecMode::Parallel).unwrap();
    assert_eq!(seq, par);
}

#[test]
fn two_boundary_tables_match_the_special_transition_counts() {
    let quad = quad_two_boundary(5, 6, 4).unwrap();
    let tri = tri_two_boundary(5, 9, 4).unwrap();
    assert_eq!(quad.get(&[2, 1, 1]), Some(&Integer::one()));
    for (family, table) in [(Family::Quad, &quad), (Family::Tri, &tri)] {
        assert!(!table.is_empty());
        for (key, v) in table.iter() {
            let [n, p, q] = key else { panic!("key arity") };
            assert_eq!(*v, count_special_trees_dp(family, *p, *q, *n), "{family} {key:?}");
        }
    }
}
