//! Truncated formal power series with exact integer coefficients.
//!
//! [`UniSeries`] holds the coefficients of x^0..=x^N. [`BiSeries`] holds,
//! for every x-degree n ≤ N, a y-polynomial of finite length. Mixed-operand
//! operations require equal x-truncation orders; nothing is silently
//! re-truncated.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{domain, usage, Error, Result};

pub type Integer = BigInt;

/// `v / d`, failing unless the division is exact.
pub fn exact_divide(v: &Integer, d: &Integer) -> Result<Integer> {
    if d.is_zero() {
        return Err(domain(format!("division of {v} by zero")));
    }
    let (q, r) = v.div_rem(d);
    if !r.is_zero() {
        return Err(Error::Integrity(format!("{v} is not divisible by {d}")));
    }
    Ok(q)
}

fn check_order(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(usage(format!("mismatched truncation orders {a} and {b}")));
    }
    Ok(())
}

fn parse_int(v: &Value) -> Result<Integer> {
    let s = v
        .as_str()
        .ok_or_else(|| usage("coefficients must be decimal strings"))?;
    s.parse::<Integer>()
        .map_err(|_| usage(format!("invalid integer {s:?}")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniSeries {
    coeffs: Vec<Integer>,
}

impl UniSeries {
    pub fn zero(order: usize) -> Self {
        UniSeries { coeffs: vec![Integer::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, 1)
    }

    /// `c·x^k`, or zero when `k` exceeds the order.
    pub fn monomial(order: usize, k: usize, c: i64) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = Integer::from(c);
        }
        s
    }

    /// Builds a series from leading coefficients; missing ones are zero.
    pub fn from_coeffs<I, T>(order: usize, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<Integer>,
    {
        let mut s = Self::zero(order);
        for (n, c) in coeffs.into_iter().enumerate() {
            let c = c.into();
            if n > order {
                if c.is_zero() {
                    continue;
                }
                return Err(usage(format!("coefficient at x^{n} exceeds order {order}")));
            }
            s.coeffs[n] = c;
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    /// Coefficient of x^n; zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Integer {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, n: usize, c: Integer) {
        assert!(n <= self.order(), "x^{n} is beyond the truncation order");
        self.coeffs[n] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_order(self.order(), other.order())?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(UniSeries { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_order(self.order(), other.order())?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(UniSeries { coeffs })
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = Integer::from(c);
        UniSeries { coeffs: self.coeffs.iter().map(|a| a * &c).collect() }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_order(self.order(), other.order())?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Multiplication by x (the top coefficient falls off).
    pub fn shift_x(&self) -> Self {
        let mut out = Self::zero(self.order());
        for n in 1..=self.order() {
            out.coeffs[n] = self.coeffs[n - 1].clone();
        }
        out
    }

    /// The pointing operator x·d/dx.
    pub fn point_x(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * Integer::from(n))
            .collect();
        UniSeries { coeffs }
    }

    /// `self / (1 - u)` for `u` without constant term.
    pub fn geom_div(&self, u: &Self) -> Result<Self> {
        check_order(self.order(), u.order())?;
        if !u.coeffs[0].is_zero() {
            return Err(domain("geometric division needs a divisor series without constant term"));
        }
        // out = self + u·out, solved coefficient by coefficient.
        let n = self.order();
        let mut out = Self::zero(n);
        for k in 0..=n {
            let mut c = self.coeffs[k].clone();
            for i in 1..=k {
                if !u.coeffs[i].is_zero() {
                    c += &u.coeffs[i] * &out.coeffs[k - i];
                }
            }
            out.coeffs[k] = c;
        }
        Ok(out)
    }

    /// Smallest index where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let top = self.order().max(other.order());
        (0..=top).find(|&n| self.coeff(n) != other.coeff(n))
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        json!({ "order": self.order(), "coeffs": coeffs })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let order = v["order"]
            .as_u64()
            .ok_or_else(|| usage("series JSON needs an integer \"order\""))? as usize;
        let arr = v["coeffs"]
            .as_array()
            .ok_or_else(|| usage("series JSON needs a \"coeffs\" array"))?;
        if arr.len() != order + 1 {
            return Err(usage(format!("expected {} coefficients, found {}", order + 1, arr.len())));
        }
        let coeffs = arr.iter().map(parse_int).collect::<Result<Vec<_>>>()?;
        Ok(UniSeries { coeffs })
    }
}

/// Bivariate series: row `n` holds the y-polynomial multiplying x^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries {
    rows: Vec<Vec<Integer>>,
}

impl BiSeries {
    /// Zero series whose row `n` has room for y^0..=y^ybound(n).
    pub fn zero(order_x: usize, ybound: impl Fn(usize) -> usize) -> Self {
        let rows = (0..=order_x).map(|n| vec![Integer::zero(); ybound(n) + 1]).collect();
        BiSeries { rows }
    }

    /// Embeds a univariate series as the y^0 column.
    pub fn from_uni(a: &UniSeries) -> Self {
        BiSeries { rows: a.coeffs().iter().map(|c| vec![c.clone()]).collect() }
    }

    pub fn order_x(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn ybound(&self, n: usize) -> usize {
        self.rows[n].len() - 1
    }

    pub fn row(&self, n: usize) -> &[Integer] {
        &self.rows[n]
    }

    /// Coefficient of x^n y^p; zero outside the stored range.
    pub fn coeff(&self, n: usize, p: usize) -> Integer {
        self.rows.get(n).and_then(|r| r.get(p)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, n: usize, p: usize, c: Integer) {
        let row = &mut self.rows[n];
        if p >= row.len() {
            row.resize(p + 1, Integer::zero());
        }
        row[p] = c;
    }

    /// `[y^p]` as a univariate series.
    pub fn column(&self, p: usize) -> UniSeries {
        let mut s = UniSeries::zero(self.order_x());
        for n in 0..=self.order_x() {
            s.coeffs[n] = self.coeff(n, p);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Zero::is_zero)
    }

    fn zip_rows(&self, other: &Self, f: impl Fn(&Integer, &Integer) -> Integer) -> Result<Self> {
        check_order(self.order_x(), other.order_x())?;
        let zero = Integer::zero();
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let len = a.len().max(b.len());
                (0..len)
                    .map(|p| f(a.get(p).unwrap_or(&zero), b.get(p).unwrap_or(&zero)))
                    .collect()
            })
            .collect();
        Ok(BiSeries { rows })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_rows(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_rows(other, |a, b| a - b)
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = Integer::from(c);
        BiSeries { rows: self.rows.iter().map(|r| r.iter().map(|a| a * &c).collect()).collect() }
    }

    /// Truncated product in x, full product in y.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_order(self.order_x(), other.order_x())?;
        let order = self.order_x();
        let mut rows: Vec<Vec<Integer>> = vec![vec![Integer::zero()]; order + 1];
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in other.rows[..=order - i].iter().enumerate() {
                let out = &mut rows[i + j];
                let need = a.len() + b.len() - 1;
                if out.len() < need {
                    out.resize(need, Integer::zero());
                }
                for (p, ca) in a.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (q, cb) in b.iter().enumerate() {
                        if !cb.is_zero() {
                            out[p + q] += ca * cb;
                        }
                    }
                }
            }
        }
        Ok(BiSeries { rows })
    }

    /// Product with a series in x alone.
    pub fn mul_uni(&self, u: &UniSeries) -> Result<Self> {
        self.mul(&BiSeries::from_uni(u))
    }

    /// Multiplication by x.
    pub fn shift_x(&self) -> Self {
        let mut rows = Vec::with_capacity(self.rows.len());
        rows.push(vec![Integer::zero()]);
        rows.extend(self.rows[..self.order_x()].iter().cloned());
        BiSeries { rows }
    }

    /// Multiplication by y.
    pub fn shift_y(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| std::iter::once(Integer::zero()).chain(r.iter().cloned()).collect())
            .collect();
        BiSeries { rows }
    }

    /// x·∂/∂x.
    pub fn point_x(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(n, r)| {
                let n = Integer::from(n);
                r.iter().map(|c| c * &n).collect()
            })
            .collect();
        BiSeries { rows }
    }

    /// y·∂/∂y.
    pub fn point_y(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().enumerate().map(|(p, c)| c * Integer::from(p)).collect())
            .collect();
        BiSeries { rows }
    }

    /// ∂/∂y.
    pub fn partial_y(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out: Vec<Integer> =
                    r.iter().enumerate().skip(1).map(|(p, c)| c * Integer::from(p)).collect();
                if out.is_empty() {
                    out.push(Integer::zero());
                }
                out
            })
            .collect();
        BiSeries { rows }
    }

    /// First (n, p) in lexicographic order where the series differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        let top = self.order_x().max(other.order_x());
        for n in 0..=top {
            let len = |s: &Self| s.rows.get(n).map_or(0, Vec::len);
            let width = len(self).max(len(other));
            for p in 0..width {
                if self.coeff(n, p) != other.coeff(n, p) {
                    return Some((n, p));
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> =
            self.rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        json!({ "order_x": self.order_x(), "rows": rows })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let order = v["order_x"]
            .as_u64()
            .ok_or_else(|| usage("series JSON needs an integer \"order_x\""))? as usize;
        let arr = v["rows"].as_array().ok_or_else(|| usage("series JSON needs a \"rows\" array"))?;
        if arr.len() != order + 1 {
            return Err(usage(format!("expected {} rows, found {}", order + 1, arr.len())));
        }
        let rows = arr
            .iter()
            .map(|r| {
                let r = r.as_array().ok_or_else(|| usage("each row must be an array"))?;
                if r.is_empty() {
                    return Err(usage("rows cannot be empty"));
                }
                r.iter().map(parse_int).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BiSeries { rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(order: usize, c: &[i64]) -> UniSeries {
        UniSeries::from_coeffs(order, c.iter().copied()).unwrap()
    }

    // Leading coefficients of the quadrangulation series.
    fn frak_q() -> UniSeries {
        s(5, &[0, 0, 1, 2, 9, 54])
    }

    fn frak_t() -> UniSeries {
        s(5, &[0, 0, 1, 4, 32, 336])
    }

    #[test]
    fn add_examples() {
        assert_eq!(s(4, &[0, 0, 1]).add(&s(4, &[0, 0, 0, 2])).unwrap(), s(4, &[0, 0, 1, 2]));
        let a = s(4, &[0, 0, 1, 2]);
        assert_eq!(a.add(&UniSeries::zero(4)).unwrap(), a);
        assert_eq!(a.add(&s(4, &[0, 0, 1])).unwrap(), s(4, &[0, 0, 2, 2]));
    }

    #[test]
    fn mismatched_orders_are_usage_errors() {
        let err = s(3, &[1]).add(&s(4, &[1])).unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
        assert!(matches!(s(3, &[1]).mul(&s(4, &[1])), Err(Error::Usage(_))));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(s(5, &[0, 0, 1]).mul(&s(5, &[0, 0, 1])).unwrap(), s(5, &[0, 0, 0, 0, 1]));
        let q = s(5, &[0, 0, 1, 2, 9]);
        assert_eq!(q.mul(&q).unwrap(), s(5, &[0, 0, 0, 0, 1, 4]));
        assert_eq!(q.mul(&UniSeries::one(5)).unwrap(), q);
    }

    #[test]
    fn point_x_examples() {
        assert_eq!(s(4, &[0, 0, 1, 2, 9]).point_x(), s(4, &[0, 0, 2, 6, 36]));
        assert!(s(4, &[7]).point_x().is_zero());
        assert_eq!(s(4, &[0, 1]).point_x(), s(4, &[0, 1]));
    }

    #[test]
    fn geom_div_examples() {
        assert_eq!(s(4, &[0, 0, 1]).geom_div(&s(4, &[0, 2])).unwrap(), s(4, &[0, 0, 1, 2, 4]));

        let q = frak_q();
        let qb = q.point_x();
        let k = qb.sub(&q).unwrap().geom_div(&qb_over_x(&q)).unwrap();
        assert_eq!(k.coeffs()[..5], s(5, &[0, 0, 1, 6, 45]).coeffs()[..5]);

        let t = frak_t();
        let tb = t.point_x();
        let k = tb.sub(&t).unwrap().geom_div(&qb_over_x(&t)).unwrap();
        assert_eq!(k, s(5, &[0, 0, 1, 10, 128, 1848]));
    }

    // 𝔔•/x computed by hand-shifting; the top coefficient needs x^{N+1}, so
    // only the first N entries are trusted.
    fn qb_over_x(q: &UniSeries) -> UniSeries {
        let qb = q.point_x();
        let mut out = UniSeries::zero(q.order());
        for n in 0..q.order() {
            out.set(n, qb.coeff(n + 1));
        }
        out
    }

    #[test]
    fn geom_div_rejects_constant_term() {
        assert!(matches!(s(3, &[1]).geom_div(&s(3, &[1, 1])), Err(Error::Domain(_))));
    }

    #[test]
    fn coeff_and_exact_divide() {
        assert_eq!(frak_q().coeff(5), Integer::from(54));
        assert_eq!(frak_q().coeff(99), Integer::zero());
        assert_eq!(exact_divide(&36.into(), &4.into()).unwrap(), Integer::from(9));
        assert!(matches!(exact_divide(&7.into(), &2.into()), Err(Error::Integrity(_))));
        assert!(matches!(exact_divide(&7.into(), &0.into()), Err(Error::Domain(_))));
    }

    #[test]
    fn bivariate_derivatives() {
        let mut a = BiSeries::zero(2, |n| n);
        a.set(1, 1, 1.into());
        a.set(2, 2, 1.into());
        // x y + x^2 y^2
        let py = a.point_y();
        assert_eq!(py.coeff(2, 2), Integer::from(2));
        assert_eq!(py.coeff(1, 1), Integer::from(1));
        let dy = a.partial_y();
        assert_eq!(dy.coeff(1, 0), Integer::from(1));
        assert_eq!(dy.coeff(2, 1), Integer::from(2));
        let flat = BiSeries::from_uni(&s(2, &[1, 2, 3]));
        assert!(flat.point_y().is_zero());
    }

    #[test]
    fn json_round_trip() {
        let q = frak_q();
        assert_eq!(UniSeries::from_json(&q.to_json()).unwrap(), q);
        let text = q.to_json().to_string();
        assert_eq!(text, r#"{"coeffs":["0","0","1","2","9","54"],"order":5}"#);
        let mut b = BiSeries::zero(3, |n| n);
        b.set(3, 2, Integer::from(-12));
        assert_eq!(BiSeries::from_json(&b.to_json()).unwrap(), b);
    }

    fn arb(order: usize) -> impl Strategy<Value = UniSeries> {
        proptest::collection::vec(-50i64..50, order + 1)
            .prop_map(move |c| UniSeries::from_coeffs(order, c).unwrap())
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb(6), b in arb(6), c in arb(6)) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        }

        #[test]
        fn geom_div_inverts_one_minus_u(a in arb(7), mut u in arb(7)) {
            u.set(0, Integer::zero());
            let q = a.geom_div(&u).unwrap();
            let one_minus_u = UniSeries::one(7).sub(&u).unwrap();
            prop_assert_eq!(q.mul(&one_minus_u).unwrap(), a);
        }

        #[test]
        fn leibniz(a in arb(7), b in arb(7)) {
            let lhs = a.mul(&b).unwrap().point_x();
            let rhs = a.point_x().mul(&b).unwrap().add(&a.mul(&b.point_x()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn coeff_out_of_range_is_zero(a in arb(4), n in 5usize..100) {
            prop_assert_eq!(a.coeff(n), Integer::zero());
        }
    }
}
