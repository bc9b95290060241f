//! Residual checks of the generating-function equations.
//!
//! Each check evaluates both sides to a common truncation order and reports
//! the first coefficient where they differ. Bivariate checks run on tables
//! that were not produced by the equation under test: the ladder table for
//! quadrangulations and the tree-count table for triangulations.

use serde_json::{json, Value};

use super::one::{quad_boundary_table_tutte, quad_counts, tri_boundary_table, tri_counts};
use crate::error::{usage, Result};
use crate::par::{map_slice, ExecMode};
use crate::series::{BiSeries, Integer, UniSeries};
use crate::trees::{Family, TreeCounts};

pub const IDENTITIES: [&str; 8] = [
    "quad-lastcar",
    "quad-kp",
    "tri-lastcar",
    "tri-kp",
    "quad-boundary",
    "tri-boundary",
    "quad-column",
    "tri-columns",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub n: usize,
    pub p: Option<usize>,
    pub lhs: Integer,
    pub rhs: Integer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: String,
    pub order: usize,
    pub first_failure: Option<Failure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }

    pub fn to_json(&self) -> Value {
        let failure = self.first_failure.as_ref().map(|f| {
            json!({ "n": f.n, "p": f.p, "lhs": f.lhs.to_string(), "rhs": f.rhs.to_string() })
        });
        json!({
            "identity": self.identity,
            "order": self.order,
            "status": if self.passed() { "pass" } else { "fail" },
            "first_failure": failure,
        })
    }
}

fn uni_failure(lhs: &UniSeries, rhs: &UniSeries) -> Option<Failure> {
    lhs.first_difference(rhs)
        .map(|n| Failure { n, p: None, lhs: lhs.coeff(n), rhs: rhs.coeff(n) })
}

fn bi_failure(lhs: &BiSeries, rhs: &BiSeries) -> Option<Failure> {
    lhs.first_difference(rhs)
        .map(|(n, p)| Failure { n, p: Some(p), lhs: lhs.coeff(n, p), rhs: rhs.coeff(n, p) })
}

/// `F/x` truncated to `order`; `f` must reach `order + 1`.
fn over_x(f: &UniSeries, order: usize) -> Result<UniSeries> {
    UniSeries::from_coeffs(order, (1..=order + 1).map(|n| f.coeff(n)))
}

fn truncate(f: &UniSeries, order: usize) -> Result<UniSeries> {
    UniSeries::from_coeffs(order, f.coeffs()[..=order].iter().cloned())
}

/// `(F• − F)/(1 − F•/x)` at `order`, from `f` known to `order + 1`.
fn kernel(f: &UniSeries, order: usize) -> Result<UniSeries> {
    let fb = f.point_x();
    let num = truncate(&fb, order)?.sub(&truncate(f, order)?)?;
    num.geom_div(&over_x(&fb, order)?)
}

fn x_term(order: usize, k: usize) -> UniSeries {
    UniSeries::monomial(order, k, 1)
}

fn quad_lastcar(order: usize) -> Result<Option<Failure>> {
    let q = quad_counts(order + 1)?;
    let k = kernel(&q, order)?;
    let lhs = truncate(&q.point_x(), order)?;
    let rhs = x_term(order, 2).scale(2).add(&k.shift_x().scale(6))?;
    Ok(uni_failure(&lhs, &rhs))
}

fn quad_kp(order: usize) -> Result<Option<Failure>> {
    let q = quad_counts(order)?;
    let qb = q.point_x();
    let lhs = qb.sub(&q)?;
    let w = qb.scale(2).sub(&q.scale(3))?;
    let rhs = w.shift_x().scale(4).add(&w.mul(&w)?.scale(3))?.add(&x_term(order, 2))?;
    Ok(uni_failure(&lhs, &rhs))
}

fn tri_lastcar(order: usize) -> Result<Option<Failure>> {
    let t = tri_counts(order + 1)?;
    let k = kernel(&t, order)?;
    let t0 = truncate(&t, order)?;
    let lhs = t0.point_x().scale(3).sub(&t0.scale(4))?;
    Ok(uni_failure(&lhs, &k.scale(2)))
}

fn tri_kp(order: usize) -> Result<Option<Failure>> {
    let t = tri_counts(order)?;
    let tb = t.point_x();
    let lhs = tb.sub(&t)?;
    let w = tb.scale(6).sub(&t.scale(8))?.add(&x_term(order, 1))?;
    Ok(uni_failure(&lhs, &w.mul(&w)?))
}

fn quad_boundary(order: usize) -> Result<Option<Failure>> {
    let q1 = quad_counts(order + 1)?;
    let k = kernel(&q1, order)?;
    let q = quad_boundary_table_tutte(&truncate(&q1, order)?)?;
    let qb = q.point_x();
    let x = BiSeries::from_uni(&x_term(order, 1));
    let inner = qb.scale(3).sub(&q.scale(2))?.sub(&q.point_y())?;
    let rhs = x
        .add(&qb.mul_uni(&k)?.shift_y().scale(6))?
        .add(&inner.shift_y().shift_x().scale(2))?;
    Ok(bi_failure(&qb, &rhs))
}

fn tri_boundary(order: usize) -> Result<Option<Failure>> {
    let t1 = tri_counts(order + 1)?;
    let k = kernel(&t1, order)?;
    let counts = TreeCounts::new(Family::Tri, order, ExecMode::default());
    let mut t = BiSeries::zero(order, |n| (3 * n).saturating_sub(3));
    for n in 1..=order {
        for p in 0..=(3 * n).saturating_sub(3) {
            t.set(n, p, counts.get(p, n).clone());
        }
    }
    let tb = t.point_x();
    // Both sides multiplied by x.
    let lhs = tb
        .scale(6)
        .sub(&t.point_y().scale(2))?
        .sub(&t.scale(6))?
        .add(&t.shift_y().point_y())?
        .shift_x();
    let inner = tb.scale(4).sub(&t.scale(3))?.sub(&t.point_y())?;
    let rhs = tb.mul_uni(&k)?.shift_y().scale(4).add(&inner.shift_y().shift_x())?;
    Ok(bi_failure(&lhs, &rhs))
}

fn quad_column(order: usize) -> Result<Option<Failure>> {
    let q = quad_counts(order)?;
    let table = super::one::quad_boundary_table(order)?;
    Ok(uni_failure(&table.column(1), &q))
}

/// `[y¹]𝐓 = [y²]𝐓 = 𝔗` and `[y³]𝐓 = 𝔗 − x²`: the x² term of 𝔗 is the edge
/// map, whose perimeter 2 admits no third boundary edge.
fn tri_columns(order: usize) -> Result<Option<Failure>> {
    let t = tri_counts(order)?;
    let table = tri_boundary_table(order)?.series;
    for (p, expected) in [(1, t.clone()), (2, t.clone()), (3, t.sub(&x_term(order, 2))?)] {
        let col = table.column(p);
        if let Some(n) = col.first_difference(&expected) {
            return Ok(Some(Failure {
                n,
                p: Some(p),
                lhs: col.coeff(n),
                rhs: expected.coeff(n),
            }));
        }
    }
    Ok(None)
}

/// Runs one named check at truncation order `order`.
pub fn verify_identity(name: &str, order: usize) -> Result<IdentityReport> {
    if order < 2 {
        return Err(usage("identity checks need an order of at least 2"));
    }
    let failure = match name {
        "quad-lastcar" => quad_lastcar(order)?,
        "quad-kp" => quad_kp(order)?,
        "tri-lastcar" => tri_lastcar(order)?,
        "tri-kp" => tri_kp(order)?,
        "quad-boundary" => quad_boundary(order)?,
        "tri-boundary" => tri_boundary(order)?,
        "quad-column" => quad_column(order)?,
        "tri-columns" => tri_columns(order)?,
        _ => return Err(usage(format!("unknown identity {name:?}"))),
    };
    Ok(IdentityReport { identity: name.to_string(), order, first_failure: failure })
}

/// All checks, evaluated independently of each other.
pub fn verify_all(order: usize, mode: ExecMode) -> Result<Vec<IdentityReport>> {
    map_slice(mode, &IDENTITIES, |name| verify_identity(name, order)).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_expanded_examples() {
        let q = UniSeries::from_coeffs(5, [0, 0, 1, 2, 9, 54]).unwrap();
        let k = kernel(&q, 4).unwrap();
        assert_eq!(k, UniSeries::from_coeffs(4, [0, 0, 1, 6, 45]).unwrap());
        let lhs = truncate(&q.point_x(), 5).unwrap();
        assert_eq!(lhs, UniSeries::from_coeffs(5, [0, 0, 2, 6, 36, 270]).unwrap());
    }

    #[test]
    fn every_identity_passes_at_small_order() {
        for name in IDENTITIES {
            let r = verify_identity(name, 8).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.first_failure);
        }
    }

    #[test]
    fn unknown_name_is_usage_error() {
        assert!(matches!(verify_identity("nope", 5), Err(crate::Error::Usage(_))));
    }

    #[test]
    fn report_json_shape() {
        let r = IdentityReport {
            identity: "quad-kp".into(),
            order: 4,
            first_failure: Some(Failure { n: 3, p: None, lhs: 4.into(), rhs: 5.into() }),
        };
        assert_eq!(
            r.to_json().to_string(),
            r#"{"first_failure":{"lhs":"4","n":3,"p":null,"rhs":"5"},"identity":"quad-kp","order":4,"status":"fail"}"#
        );
    }
}
