//! Two-boundary counts through the marked-leaf tables A and B.

use num_traits::Zero;

use super::one::{quad_boundary_table, tri_boundary_table};
use super::table::CountTable;
use crate::error::Result;
use crate::series::{BiSeries, Integer};

/// Dense `[p][r][n]` storage for the marked-leaf recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedTable {
    cells: Vec<Vec<Vec<Integer>>>,
}

impl MarkedTable {
    /// Value of the cell; zero for indices outside the table or p = 0.
    pub fn get(&self, p: usize, r: usize, n: usize) -> Integer {
        self.cells
            .get(p)
            .and_then(|x| x.get(r))
            .and_then(|x| x.get(n))
            .cloned()
            .unwrap_or_default()
    }

    pub fn to_count_table(&self) -> CountTable {
        let mut t = CountTable::new(&["p", "r", "n"]);
        for (p, by_r) in self.cells.iter().enumerate().skip(1) {
            for (r, by_n) in by_r.iter().enumerate() {
                for (n, v) in by_n.iter().enumerate() {
                    t.insert(&[p, r, n], v.clone());
                }
            }
        }
        t
    }
}

/// Runs `X_n^{(p,r)} = X_n^{(max(p−1,1),r−1)} + Σ_{k=0}^{n−1} X_k^{(1,r−1)}X_{n−k}^{(p,1)}`
/// with bases `X_0^{(p,r)} = [r ≥ p]` and `X_n^{(p,0)} = (n+1)·one[n+1][p]`.
fn marked_recursion(one: &BiSeries, pmax: usize, rmax: usize, nmax: usize) -> MarkedTable {
    let mut c = vec![vec![vec![Integer::zero(); nmax + 1]; rmax + 1]; pmax + 1];
    for r in 0..=rmax {
        for p in 1..=pmax {
            for n in 0..=nmax {
                let v = if n == 0 {
                    Integer::from(u8::from(r >= p))
                } else if r == 0 {
                    one.coeff(n + 1, p) * (n + 1)
                } else {
                    let mut s = c[(p - 1).max(1)][r - 1][n].clone();
                    for k in 0..n {
                        let a = &c[1][r - 1][k];
                        if a.is_zero() {
                            continue;
                        }
                        let b = &c[p][1][n - k];
                        if !b.is_zero() {
                            s += a * b;
                        }
                    }
                    s
                };
                c[p][r][n] = v;
            }
        }
    }
    MarkedTable { cells: c }
}

/// A_n^{(p,r)} for `1 ≤ p ≤ pmax`, `r ≤ rmax`, `n ≤ nmax`.
pub fn a_table(pmax: usize, rmax: usize, nmax: usize) -> Result<MarkedTable> {
    let q = quad_boundary_table(nmax + 1)?;
    Ok(marked_recursion(&q, pmax, rmax.max(1), nmax))
}

/// B_n^{(p,r)}, the triangulation analogue of [`a_table`].
pub fn b_table(pmax: usize, rmax: usize, nmax: usize) -> Result<MarkedTable> {
    let t = tri_boundary_table(nmax + 1)?;
    Ok(marked_recursion(&t.series, pmax, rmax.max(1), nmax))
}

/// Q_n^{(p,q)} = Σ_{r=1}^{n} Σ_{k=0}^{n−r−q} A_k^{(p,r)} Q_{n−k}^{(r+q−1)}.
pub fn quad_two(a: &MarkedTable, q1: &BiSeries, n: usize, p: usize, q: usize) -> Integer {
    let mut s = Integer::zero();
    for r in 1..=n {
        let Some(top) = n.checked_sub(r + q) else { continue };
        for k in 0..=top {
            let x = a.get(p, r, k);
            if !x.is_zero() {
                s += x * q1.coeff(n - k, r + q - 1);
            }
        }
    }
    s
}

/// T_n^{(p,q)} = Σ_{r=1}^{2n−q} Σ_{k=0}^{n−⌊(r+q)/2⌋+1} B_k^{(p,r)} T_{n−k}^{(r+q−2)}.
pub fn tri_two(b: &MarkedTable, t1: &BiSeries, n: usize, p: usize, q: usize) -> Integer {
    let mut s = Integer::zero();
    let rtop = (2 * n).saturating_sub(q);
    for r in 1..=rtop {
        let Some(label) = (r + q).checked_sub(2) else { continue };
        let Some(ktop) = (n + 1).checked_sub((r + q) / 2) else { continue };
        for k in 0..=ktop.min(n) {
            let x = b.get(p, r, k);
            if !x.is_zero() {
                s += x * t1.coeff(n - k, label);
            }
        }
    }
    s
}

/// Q_n^{(p,q)} for `2 ≤ n ≤ nmax`, `1 ≤ p ≤ pmax`, `1 ≤ q ≤ qmax`.
pub fn quad_two_boundary(nmax: usize, pmax: usize, qmax: usize) -> Result<CountTable> {
    let a = a_table(pmax, nmax, nmax)?;
    let q1 = quad_boundary_table(nmax.max(1))?;
    let mut out = CountTable::new(&["n", "p", "q"]);
    for n in 2..=nmax {
        for p in 1..=pmax {
            for q in 1..=qmax {
                out.insert(&[n, p, q], quad_two(&a, &q1, n, p, q));
            }
        }
    }
    Ok(out)
}

/// T_n^{(p,q)} for `2 ≤ n ≤ nmax`, `1 ≤ p ≤ pmax`, `1 ≤ q ≤ qmax`.
pub fn tri_two_boundary(nmax: usize, pmax: usize, qmax: usize) -> Result<CountTable> {
    let b = b_table(pmax, 2 * nmax, nmax)?;
    let t1 = tri_boundary_table(nmax.max(1))?.series;
    let mut out = CountTable::new(&["n", "p", "q"]);
    for n in 2..=nmax {
        for p in 1..=pmax {
            for q in 1..=qmax {
                out.insert(&[n, p, q], tri_two(&b, &t1, n, p, q));
            }
        }
    }
    Ok(out)
}
