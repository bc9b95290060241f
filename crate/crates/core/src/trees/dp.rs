//! Polynomial-time tree counting by dynamic programming on (label, leaves).
//!
//! Within a row of fixed leaf count the unary rule raises the label, so each
//! row is solved from its label bound downward; binary splits only look at
//! rows with fewer leaves.

use num_traits::Zero;

use super::Family;
use crate::par::{map_range, ExecMode};
use crate::series::Integer;

static ZERO: std::sync::LazyLock<Integer> = std::sync::LazyLock::new(Integer::zero);

fn cell(rows: &[Vec<Integer>], p: isize, n: usize) -> &Integer {
    if p < 0 {
        return &ZERO;
    }
    rows.get(n).and_then(|r| r.get(p as usize)).unwrap_or(&ZERO)
}

/// Number of plain peeling trees with root label `p` and `n` zero-leaves.
#[derive(Debug, Clone)]
pub struct TreeCounts {
    family: Family,
    rows: Vec<Vec<Integer>>,
}

impl TreeCounts {
    pub fn new(family: Family, max_n: usize, mode: ExecMode) -> Self {
        let gap = family.split_gap();
        let mut rows: Vec<Vec<Integer>> = vec![vec![Integer::zero()]];
        for n in 1..=max_n {
            let bound = family.label_bound(n);
            let done = &rows;
            let split = map_range(mode, 0..bound + 1, |p| {
                let mut s = Integer::zero();
                if p < gap {
                    return s;
                }
                for p1 in 0..=p - gap {
                    let p2 = (p - gap - p1) as isize;
                    for n1 in 1..n {
                        let a = cell(done, p1 as isize, n1);
                        if a.is_zero() {
                            continue;
                        }
                        let b = cell(done, p2, n - n1);
                        if !b.is_zero() {
                            s += a * b;
                        }
                    }
                }
                s
            });
            let mut row = vec![Integer::zero(); bound + 1];
            let mut acc = Integer::zero();
            for p in (1..=bound).rev() {
                acc += &split[p];
                row[p] = acc.clone();
            }
            row[0] = Integer::from(u8::from(n == 1));
            rows.push(row);
        }
        TreeCounts { family, rows }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// Count for `(p, n)`; zero outside the computed range.
    pub fn get(&self, p: usize, n: usize) -> &Integer {
        cell(&self.rows, p as isize, n)
    }

    fn get_signed(&self, p: isize, n: usize) -> &Integer {
        cell(&self.rows, p, n)
    }
}

/// Trees with one extra leaf `DistinguishedLeaf(r)` that does not count as a
/// zero-leaf. Row `n` is indexed by the root label.
#[derive(Debug, Clone)]
pub struct MarkedCounts {
    r: usize,
    rows: Vec<Vec<Integer>>,
}

impl MarkedCounts {
    pub fn new(plain: &TreeCounts, r: usize, max_n: usize) -> Self {
        assert!(plain.max_n() >= max_n, "plain counts must cover the leaf range");
        let gap = plain.family().split_gap();
        let mut rows: Vec<Vec<Integer>> = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let bound = 3 * (n + r + 2);
            let mut row = vec![Integer::zero(); bound + 2];
            for p in (0..=bound).rev() {
                let mut s = Integer::from(u8::from(p == r && n == 0));
                if p >= 1 {
                    s += &row[p + 1];
                }
                if p >= gap {
                    for p1 in 0..=p - gap {
                        let p2 = p - gap - p1;
                        for n1 in 0..n {
                            let a = cell(&rows, p1 as isize, n1);
                            if !a.is_zero() {
                                s += a * plain.get(p2, n - n1);
                            }
                        }
                        for n1 in 1..=n {
                            let a = plain.get(p1, n1);
                            if !a.is_zero() {
                                s += a * cell(&rows, p2 as isize, n - n1);
                            }
                        }
                    }
                }
                row[p] = s;
            }
            row.pop();
            rows.push(row);
        }
        MarkedCounts { r, rows }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn get(&self, p: usize, n: usize) -> &Integer {
        cell(&self.rows, p as isize, n)
    }
}

/// Trees with exactly one special unary step `ℓ → ℓ+q−1` (Quad) or
/// `ℓ → ℓ+q−2` (Tri) taken from a vertex labeled `ℓ ≥ 1`.
#[derive(Debug, Clone)]
pub struct SpecialCounts {
    q: usize,
    rows: Vec<Vec<Integer>>,
}

impl SpecialCounts {
    pub fn new(plain: &TreeCounts, q: usize, max_n: usize) -> Self {
        assert!(plain.max_n() >= max_n, "plain counts must cover the leaf range");
        let gap = plain.family().split_gap();
        let shift = q as isize - gap as isize;
        let mut rows: Vec<Vec<Integer>> = vec![vec![Integer::zero()]];
        for n in 1..=max_n {
            let bound = 3 * (n + q + 2);
            let mut row = vec![Integer::zero(); bound + 2];
            for p in (1..=bound).rev() {
                let mut s = plain.get_signed(p as isize + shift, n).clone();
                s += &row[p + 1];
                if p >= gap {
                    for p1 in 0..=p - gap {
                        let p2 = p - gap - p1;
                        for n1 in 1..n {
                            let a = cell(&rows, p1 as isize, n1);
                            if !a.is_zero() {
                                s += a * plain.get(p2, n - n1);
                            }
                            let b = plain.get(p1, n1);
                            if !b.is_zero() {
                                s += b * cell(&rows, p2 as isize, n - n1);
                            }
                        }
                    }
                }
                row[p] = s;
            }
            row.pop();
            rows.push(row);
        }
        SpecialCounts { q, rows }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn get(&self, p: usize, n: usize) -> &Integer {
        cell(&self.rows, p as isize, n)
    }
}

pub fn count_trees_dp(family: Family, p: usize, n: usize) -> Integer {
    TreeCounts::new(family, n, ExecMode::Sequential).get(p, n).clone()
}

pub fn count_marked_trees_dp(family: Family, p: usize, r: usize, n: usize) -> Integer {
    let plain = TreeCounts::new(family, n, ExecMode::Sequential);
    MarkedCounts::new(&plain, r, n).get(p, n).clone()
}

pub fn count_special_trees_dp(family: Family, p: usize, q: usize, n: usize) -> Integer {
    let plain = TreeCounts::new(family, n, ExecMode::Sequential);
    SpecialCounts::new(&plain, q, n).get(p, n).clone()
}
