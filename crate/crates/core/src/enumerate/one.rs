//! One-boundary solvers: the univariate recursions and the bivariate
//! coefficient recursions.

use num_traits::Zero;

use crate::error::{usage, Error, Result};
use crate::par::{map_range, sum_range, ExecMode};
use crate::series::{exact_divide, BiSeries, Integer, UniSeries};
use crate::trees::{Family, TreeCounts};

fn int(v: i64) -> Integer {
    Integer::from(v)
}

fn check_min(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(usage(format!("order {n} is below the base case {min}")));
    }
    Ok(())
}

/// Σ_{k=lo}^{hi} w(k)·c[k]·c[lo+hi−k], pairing `k` with its mirror.
fn mirrored_sum(
    mode: ExecMode,
    c: &[Integer],
    lo: usize,
    hi: usize,
    w: impl Fn(usize) -> i64 + Sync + Send,
) -> Integer {
    if hi < lo {
        return Integer::zero();
    }
    let half = (hi - lo) / 2;
    sum_range(mode, 0..half + 1, |i| {
        let (k, j) = (lo + i, hi - i);
        let prod = &c[k] * &c[j];
        if k == j {
            prod * w(k)
        } else {
            prod * (w(k) + w(j))
        }
    })
}

/// Coefficients Q₂..Q_N of quadrangulations from the last-car recursion
/// `nQ_n = Σ_{k=2}^{n−1} k(n+1−k)Q_kQ_{n+1−k} + (4n−10)Q_{n−1}`.
pub fn quad_counts(order: usize) -> Result<UniSeries> {
    quad_counts_with(order, ExecMode::default())
}

pub fn quad_counts_with(order: usize, mode: ExecMode) -> Result<UniSeries> {
    check_min(order, 2)?;
    let mut q = vec![Integer::zero(); order + 1];
    q[2] = int(1);
    for n in 3..=order {
        let m = n as i64;
        let mut s = mirrored_sum(mode, &q, 2, n - 1, |k| k as i64 * (m + 1 - k as i64));
        s += &q[n - 1] * (4 * m - 10);
        q[n] = exact_divide(&s, &int(m))?;
    }
    UniSeries::from_coeffs(order, q)
}

/// Coefficients T₂..T_N of triangulations from
/// `(n−2)T_n = Σ_{k=2}^{n−1} (3k−4)(n+1−k)T_kT_{n+1−k}`.
pub fn tri_counts(order: usize) -> Result<UniSeries> {
    tri_counts_with(order, ExecMode::default())
}

pub fn tri_counts_with(order: usize, mode: ExecMode) -> Result<UniSeries> {
    check_min(order, 2)?;
    let mut t = vec![Integer::zero(); order + 1];
    t[2] = int(1);
    for n in 3..=order {
        let m = n as i64;
        let s = mirrored_sum(mode, &t, 2, n - 1, |k| (3 * k as i64 - 4) * (m + 1 - k as i64));
        t[n] = exact_divide(&s, &int(m - 2))?;
    }
    UniSeries::from_coeffs(order, t)
}

/// Incrementally built coefficients of `(F• − F)/(1 − F•/x)` where `F` is
/// the column `[y¹]` of a one-boundary table.
struct Kernel {
    f: Vec<Integer>,
    k: Vec<Integer>,
}

impl Kernel {
    fn new() -> Self {
        Kernel { f: vec![Integer::zero(); 2], k: vec![Integer::zero(); 2] }
    }

    /// Records `F_j` for the next index j.
    fn push_f(&mut self, v: Integer) {
        self.f.push(v);
    }

    /// Sum of the terms of `K_j` not involving `F_j`.
    fn rest(&self, j: usize) -> Integer {
        let mut s = Integer::zero();
        for i in 1..j.saturating_sub(1) {
            let u = &self.f[i + 1] * (i + 1);
            if !u.is_zero() && !self.k[j - i].is_zero() {
                s += u * &self.k[j - i];
            }
        }
        s
    }

    /// Appends `K_j` once `F_j` is known.
    fn extend(&mut self) {
        let j = self.k.len();
        let v = &self.f[j] * (j - 1) + self.rest(j);
        self.k.push(v);
    }

    fn get(&self, j: usize) -> &Integer {
        &self.k[j]
    }
}

/// The table Q_n^{(p)}, `p ≤ n`, solved from the bivariate equation
/// `𝐐• = x + 6y𝐐•K + 2xy(3𝐐• − 2𝐐 − y∂_y𝐐)`.
pub fn quad_boundary_table(order: usize) -> Result<BiSeries> {
    quad_boundary_table_with(order, ExecMode::default())
}

pub fn quad_boundary_table_with(order: usize, mode: ExecMode) -> Result<BiSeries> {
    check_min(order, 1)?;
    let mut q = BiSeries::zero(order, |n| n);
    let mut kernel = Kernel::new();
    q.set(1, 0, int(1));
    for n in 2..=order {
        if n >= 3 {
            kernel.extend();
        }
        let prev = &q;
        let kern = &kernel;
        let row = map_range(mode, 0..n + 1, |p| -> Result<Integer> {
            if p == 0 {
                return Ok(Integer::zero());
            }
            let mut s = Integer::zero();
            for m in 1..n.saturating_sub(1) {
                let c = prev.coeff(m, p - 1);
                if !c.is_zero() {
                    s += c * m * kern.get(n - m) * 6;
                }
            }
            s += prev.coeff(n - 1, p - 1) * (2 * (3 * n as i64 - 4 - p as i64));
            exact_divide(&s, &int(n as i64))
        });
        for (p, v) in row.into_iter().enumerate() {
            q.set(n, p, v?);
        }
        kernel.push_f(q.coeff(n, 1));
    }
    Ok(q)
}

/// The same table from Tutte's ladder `Q^{(p+1)} = Q^{(p)} − Σ_{a+b=p−1}
/// Q^{(a)}Q^{(b)}` seeded with `Q^{(0)} = x` and `Q^{(1)} = seed`.
pub fn quad_boundary_table_tutte(seed: &UniSeries) -> Result<BiSeries> {
    let order = seed.order();
    check_min(order, 1)?;
    let mut cols = vec![UniSeries::monomial(order, 1, 1), seed.clone()];
    for p in 1..order {
        let mut next = cols[p].clone();
        let top = p - 1;
        for a in 0..=top / 2 {
            let b = top - a;
            let prod = cols[a].mul(&cols[b])?;
            let prod = if a == b { prod } else { prod.scale(2) };
            next = next.sub(&prod)?;
        }
        cols.push(next);
    }
    let mut out = BiSeries::zero(order, |n| n);
    for (p, col) in cols.iter().enumerate() {
        for n in 0..=order {
            let c = col.coeff(n);
            if p > n {
                if !c.is_zero() {
                    return Err(Error::Integrity(format!(
                        "ladder produced {c} at x^{n} y^{p}, beyond the label bound"
                    )));
                }
            } else {
                out.set(n, p, c);
            }
        }
    }
    Ok(out)
}

/// How a cell of the triangulation table was obtained when the equation
/// does not determine it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellSource {
    /// Seeded with T₂ = 1; the equation reduces to 0 = 0 there.
    Seed,
    /// Taken from the tree-count oracle; the equation's consistency
    /// constraint was checked.
    OracleFilled,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    pub n: usize,
    pub p: usize,
    pub source: CellSource,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriBoundaryTable {
    pub series: BiSeries,
    pub annotations: Vec<Annotation>,
}

/// The table T_n^{(p)}, `p ≤ 3n−3`, solved from the coefficient form
/// `(6n−2p−6)T_n^{(p)} + pT_n^{(p−1)} = 4Σ_m mT_m^{(p−1)}K_{n+1−m} + (4n−p−2)T_n^{(p−1)}`.
pub fn tri_boundary_table(order: usize) -> Result<TriBoundaryTable> {
    tri_boundary_table_with(order, ExecMode::default())
}

pub fn tri_boundary_table_with(order: usize, mode: ExecMode) -> Result<TriBoundaryTable> {
    check_min(order, 1)?;
    let oracle = TreeCounts::new(Family::Tri, order, mode);
    let mut t = BiSeries::zero(order, |n| (3 * n).saturating_sub(3));
    let mut kernel = Kernel::new();
    let mut annotations = Vec::new();
    t.set(1, 0, int(1));
    for n in 2..=order {
        let nn = n as i64;
        // p = 1: K_n involves T_n itself, so its term moves to the left.
        let t1 = if n == 2 {
            annotations.push(Annotation { n, p: 1, source: CellSource::Seed });
            int(1)
        } else {
            exact_divide(&(kernel.rest(n) * 4), &int(2 * nn - 4))?
        };
        t.set(n, 1, t1.clone());
        kernel.push_f(t1);
        kernel.extend();
        let top = 3 * n - 3;
        for p in 2..=top {
            let pp = p as i64;
            let prev = t.coeff(n, p - 1);
            let tab = &t;
            let kern = &kernel;
            let mut rhs = sum_range(mode, 2..n, |m| {
                let c = tab.coeff(m, p - 1);
                if c.is_zero() {
                    c
                } else {
                    c * m * kern.get(n + 1 - m) * 4
                }
            });
            rhs += &prev * (4 * nn - 2 * pp - 2);
            let div = 6 * nn - 2 * pp - 6;
            if div == 0 {
                if !rhs.is_zero() {
                    return Err(Error::Integrity(format!(
                        "degenerate cell ({n}, {p}) violates its constraint"
                    )));
                }
                annotations.push(Annotation { n, p, source: CellSource::OracleFilled });
                t.set(n, p, oracle.get(p, n).clone());
            } else {
                t.set(n, p, exact_divide(&rhs, &int(div))?);
            }
        }
    }
    Ok(TriBoundaryTable { series: t, annotations })
}
