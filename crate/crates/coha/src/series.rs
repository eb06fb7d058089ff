//! Truncated Laurent series in `s` and formal series over dimension
//! vectors.
//!
//! A [`LaurentTrunc`] carries its own validity order: coefficients are
//! exact for every exponent up to `order` and unknown beyond it. Every
//! operation propagates the order honestly, so consumers can tell
//! exactly how far a computed series can be trusted instead of relying
//! on a global truncation convention.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::CohaError;
use crate::quiver::DimVector;
use crate::rational::{Q, RatFunc};
use crate::Result;

/// Order value meaning "exact at every exponent".
pub const ORDER_EXACT: i64 = i64::MAX / 4;

fn clamp_order(x: i128) -> i64 {
    if x >= ORDER_EXACT as i128 {
        ORDER_EXACT
    } else {
        x as i64
    }
}

/// Laurent polynomial in `s` known exactly through exponent `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentTrunc {
    coeffs: BTreeMap<i64, Q>,
    order: i64,
}

impl LaurentTrunc {
    pub fn zero() -> Self {
        LaurentTrunc {
            coeffs: BTreeMap::new(),
            order: ORDER_EXACT,
        }
    }

    pub fn one() -> Self {
        LaurentTrunc::monomial(0, Q::one())
    }

    /// Exact monomial c * s^k.
    pub fn monomial(k: i64, c: Q) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        LaurentTrunc {
            coeffs,
            order: ORDER_EXACT,
        }
    }

    pub fn from_coeffs(pairs: Vec<(i64, Q)>, order: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, c) in pairs {
            if k <= order && !c.is_zero() {
                coeffs.insert(k, c);
            }
        }
        LaurentTrunc { coeffs, order }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order == ORDER_EXACT
    }

    pub fn coeff(&self, k: i64) -> Q {
        self.coeffs.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Q> {
        &self.coeffs
    }

    /// True when no known coefficient is nonzero. An inexact series may
    /// still differ from zero beyond its order.
    pub fn is_zero_through_order(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.coeffs.is_empty() && self.is_exact()
    }

    pub fn is_exactly_one(&self) -> bool {
        self.is_exact() && self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Earliest exponent at which the series could be nonzero,
    /// including the unknown tail.
    fn min_possible(&self) -> i128 {
        match self.min_exponent() {
            Some(k) => k as i128,
            None => self.order as i128 + 1,
        }
    }

    /// Declares validity only through `order`, dropping later terms.
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        LaurentTrunc {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&k, _)| k <= order)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
            order,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut coeffs = BTreeMap::new();
        for (&k, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if k > order {
                continue;
            }
            let entry = coeffs.entry(k).or_insert_with(Q::zero);
            *entry += c;
        }
        coeffs.retain(|_, c: &mut Q| !c.is_zero());
        LaurentTrunc { coeffs, order }
    }

    pub fn neg(&self) -> Self {
        LaurentTrunc {
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c.clone())).collect(),
            order: self.order,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return LaurentTrunc {
                coeffs: BTreeMap::new(),
                order: self.order,
            };
        }
        LaurentTrunc {
            coeffs: self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect(),
            order: self.order,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_exactly_zero() || other.is_exactly_zero() {
            return LaurentTrunc::zero();
        }
        let order = clamp_order(
            (self.order as i128 + other.min_possible())
                .min(other.order as i128 + self.min_possible()),
        );
        let mut coeffs = BTreeMap::new();
        for (&ka, ca) in &self.coeffs {
            for (&kb, cb) in &other.coeffs {
                let k = ka + kb;
                if k > order {
                    continue;
                }
                let entry = coeffs.entry(k).or_insert_with(Q::zero);
                *entry += ca * cb;
            }
        }
        coeffs.retain(|_, c: &mut Q| !c.is_zero());
        LaurentTrunc { coeffs, order }
    }

    pub fn div_nat(&self, n: u64) -> Self {
        assert!(n > 0);
        self.scale(&(Q::one() / Q::from_integer(n.into())))
    }

    /// Substitutes s -> s^m (m >= 1).
    pub fn subst_s_power(&self, m: i64) -> Self {
        assert!(m >= 1);
        let order = if self.is_exact() {
            ORDER_EXACT
        } else {
            clamp_order(m as i128 * (self.order as i128 + 1) - 1)
        };
        LaurentTrunc {
            coeffs: self.coeffs.iter().map(|(&k, c)| (k * m, c.clone())).collect(),
            order,
        }
    }

    /// Multiplies by the geometric expansion of 1/(1 - q^m) up to `cap`,
    /// i.e. by 1 + s^{2m} + s^{4m} + ...; the result is valid through
    /// min(order, cap).
    pub fn mul_geometric_inverse(&self, m: i64, cap: i64) -> Self {
        assert!(m >= 1);
        let order = self.order.min(cap);
        let mut coeffs: BTreeMap<i64, Q> = BTreeMap::new();
        for (&k, c) in &self.coeffs {
            let mut e = k;
            while e <= order {
                let entry = coeffs.entry(e).or_insert_with(Q::zero);
                *entry += c;
                e += 2 * m;
            }
        }
        coeffs.retain(|_, c: &mut Q| !c.is_zero());
        LaurentTrunc { coeffs, order }
    }

    /// Multiplies by (1 - q^m) exactly.
    pub fn mul_one_minus_q_power(&self, m: i64) -> Self {
        let shifted = LaurentTrunc {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&k, _)| k + 2 * m <= self.order)
                .map(|(&k, c)| (k + 2 * m, c.clone()))
                .collect(),
            order: self.order,
        };
        self.sub(&shifted)
    }

    /// Agreement of two series through the smaller of their orders.
    pub fn eq_through_orders(&self, other: &Self) -> bool {
        let order = self.order.min(other.order);
        let keys: std::collections::BTreeSet<i64> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .filter(|&k| k <= order)
            .collect();
        keys.into_iter().all(|k| self.coeff(k) == other.coeff(k))
    }
}

/// Coefficient domains a formal t-series can carry.
pub trait Coeff: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale_q(&self, c: &Q) -> Self;
}

impl Coeff for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self == &RatFunc::one()
    }
    fn add(&self, other: &Self) -> Self {
        RatFunc::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFunc::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc::mul(self, other)
    }
    fn scale_q(&self, c: &Q) -> Self {
        RatFunc::mul(self, &RatFunc::from_q(c.clone()))
    }
}

impl Coeff for LaurentTrunc {
    fn zero() -> Self {
        LaurentTrunc::zero()
    }
    fn one() -> Self {
        LaurentTrunc::one()
    }
    fn is_zero(&self) -> bool {
        self.is_exactly_zero()
    }
    fn is_one(&self) -> bool {
        self.is_exactly_one()
    }
    fn add(&self, other: &Self) -> Self {
        LaurentTrunc::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        LaurentTrunc::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        LaurentTrunc::mul(self, other)
    }
    fn scale_q(&self, c: &Q) -> Self {
        self.scale(c)
    }
}

/// Formal series over dimension vectors, truncated at a total bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TSeries<C: Coeff> {
    nvertices: usize,
    bound: u32,
    coeffs: BTreeMap<DimVector, C>,
    truncated: bool,
}

impl<C: Coeff> TSeries<C> {
    pub fn new(nvertices: usize, bound: u32) -> Self {
        TSeries {
            nvertices,
            bound,
            coeffs: BTreeMap::new(),
            truncated: false,
        }
    }

    pub fn one(nvertices: usize, bound: u32) -> Self {
        let mut s = TSeries::new(nvertices, bound);
        s.set(DimVector::zero(nvertices), C::one());
        s
    }

    pub fn nvertices(&self) -> usize {
        self.nvertices
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// True when some product discarded terms beyond the total bound.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn set(&mut self, d: DimVector, c: C) {
        assert_eq!(d.len(), self.nvertices);
        assert!(d.total() <= self.bound, "coefficient beyond the bound");
        if c.is_zero() {
            self.coeffs.remove(&d);
        } else {
            self.coeffs.insert(d, c);
        }
    }

    pub fn get(&self, d: &DimVector) -> C {
        self.coeffs.get(d).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<DimVector, C> {
        &self.coeffs
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.nvertices != other.nvertices || self.bound != other.bound {
            return Err(CohaError::TruncationBounds(
                "series have different shapes or bounds".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.truncated |= other.truncated;
        for (d, c) in &other.coeffs {
            let sum = out.get(d).add(c);
            out.set(d.clone(), sum);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.truncated |= other.truncated;
        for (d, c) in &other.coeffs {
            let diff = out.get(d).sub(c);
            out.set(d.clone(), diff);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out: TSeries<C> = TSeries::new(self.nvertices, self.bound);
        out.truncated = self.truncated || other.truncated;
        for (da, ca) in &self.coeffs {
            for (db, cb) in &other.coeffs {
                if da.total() + db.total() > self.bound {
                    out.truncated = true;
                    continue;
                }
                let d = da.add(db);
                let sum = out.get(&d).add(&ca.mul(cb));
                out.set(d, sum);
            }
        }
        Ok(out)
    }

    /// log of a series with constant term exactly 1.
    pub fn log(&self) -> Result<Self> {
        let c0 = self.get(&DimVector::zero(self.nvertices));
        if !c0.is_one() {
            return Err(CohaError::NonUnitConstantTerm);
        }
        let mut u = self.clone();
        u.set(DimVector::zero(self.nvertices), C::zero());
        let mut out = TSeries::new(self.nvertices, self.bound);
        out.truncated = self.truncated;
        let mut power = u.clone();
        for m in 1..=(self.bound.max(1)) {
            let sign = if m % 2 == 1 { Q::one() } else { -Q::one() };
            let factor = sign / Q::from_integer(m.into());
            let mut contrib = power.clone();
            for c in contrib.coeffs.values_mut() {
                *c = c.scale_q(&factor);
            }
            contrib.coeffs.retain(|_, c| !c.is_zero());
            out = out.add(&contrib)?;
            if m < self.bound {
                power = power.mul(&u)?;
            }
        }
        Ok(out)
    }

    /// exp of a series with no constant term.
    pub fn exp(&self) -> Result<Self> {
        let c0 = self.get(&DimVector::zero(self.nvertices));
        if !c0.is_zero() {
            return Err(CohaError::NonUnitConstantTerm);
        }
        let mut out = TSeries::one(self.nvertices, self.bound);
        out.truncated = self.truncated;
        let mut term = TSeries::one(self.nvertices, self.bound);
        for m in 1..=(self.bound.max(1)) {
            term = term.mul(self)?;
            for c in term.coeffs.values_mut() {
                *c = c.scale_q(&(Q::one() / Q::from_integer(m.into())));
            }
            term.coeffs.retain(|_, c| !c.is_zero());
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

impl TSeries<LaurentTrunc> {
    /// Coefficientwise agreement through the per-coefficient orders.
    pub fn eq_through_orders(&self, other: &Self) -> bool {
        let keys: std::collections::BTreeSet<DimVector> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .cloned()
            .collect();
        keys.into_iter()
            .all(|d| self.get(&d).eq_through_orders(&other.get(&d)))
    }
}

/// All dimension vectors over `nvertices` vertices with total at most
/// `bound`, ordered by total then lexicographically.
pub fn dimvectors_up_to(nvertices: usize, bound: u32) -> Vec<DimVector> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvertices];
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<DimVector>) {
        if pos + 1 == cur.len() {
            for v in 0..=left {
                cur[pos] = v;
                out.push(DimVector::new(cur.clone()));
            }
            cur[pos] = 0;
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(pos + 1, left - v, cur, out);
        }
        cur[pos] = 0;
    }
    if nvertices == 0 {
        out.push(DimVector::new(vec![]));
        return out;
    }
    rec(0, bound, &mut cur, &mut out);
    out.sort_by_key(|d| (d.total(), d.entries().to_vec()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_int;

    fn dv(entries: &[u32]) -> DimVector {
        DimVector::new(entries.to_vec())
    }

    #[test]
    fn laurent_orders_propagate() {
        let a = LaurentTrunc::from_coeffs(vec![(0, q_int(1)), (2, q_int(1))], 6);
        let b = LaurentTrunc::from_coeffs(vec![(-2, q_int(1)), (0, q_int(3))], 4);
        let prod = a.mul(&b);
        // unknown tail of a (>= 7) hits min exponent -2 of b
        assert_eq!(prod.order(), 4);
        assert_eq!(prod.coeff(-2), q_int(1));
        assert_eq!(prod.coeff(0), q_int(4));
        let sum = a.add(&b);
        assert_eq!(sum.order(), 4);
    }

    #[test]
    fn laurent_exact_zero_annihilates() {
        let a = LaurentTrunc::from_coeffs(vec![(5, q_int(2))], 8);
        assert!(a.mul(&LaurentTrunc::zero()).is_exactly_zero());
    }

    #[test]
    fn geometric_inverse_round_trip() {
        // f / (1 - q^2) * (1 - q^2) agrees with f through the cap
        let f = LaurentTrunc::from_coeffs(vec![(-1, q_int(1)), (3, q_int(2))], ORDER_EXACT);
        let g = f.mul_geometric_inverse(2, 10).mul_one_minus_q_power(2);
        assert!(g.eq_through_orders(&f.truncate(10)));
    }

    #[test]
    fn subst_power_orders() {
        let f = LaurentTrunc::from_coeffs(vec![(1, q_int(1))], 3);
        let g = f.subst_s_power(2);
        // exact through 2*(3+1)-1 = 7
        assert_eq!(g.order(), 7);
        assert_eq!(g.coeff(2), q_int(1));
    }

    #[test]
    fn tseries_product() {
        // (1 + t)(1 - t) = 1 - t^2
        let mut a = TSeries::<RatFunc>::one(1, 3);
        a.set(dv(&[1]), RatFunc::one());
        let mut b = TSeries::<RatFunc>::one(1, 3);
        b.set(dv(&[1]), RatFunc::from_int(-1));
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.get(&dv(&[0])), RatFunc::one());
        assert!(prod.get(&dv(&[1])).is_zero());
        assert_eq!(prod.get(&dv(&[2])), RatFunc::from_int(-1));
        assert!(prod.get(&dv(&[3])).is_zero());
    }

    #[test]
    fn log_of_geometric_series() {
        // log(1/(1-t)) = sum t^m / m
        let bound = 5u32;
        let mut geo = TSeries::<RatFunc>::new(1, bound);
        for m in 0..=bound {
            geo.set(dv(&[m]), RatFunc::one());
        }
        let log = geo.log().unwrap();
        for m in 1..=bound {
            assert_eq!(
                log.get(&dv(&[m])),
                RatFunc::from_q(Q::new(1.into(), (m as i64).into()))
            );
        }
    }

    #[test]
    fn exp_log_round_trip() {
        let mut p = TSeries::<RatFunc>::one(2, 3);
        p.set(dv(&[1, 0]), RatFunc::from_int(2));
        p.set(dv(&[0, 1]), RatFunc::from_int(-1));
        p.set(dv(&[1, 1]), RatFunc::from_int(5));
        let back = p.log().unwrap().exp().unwrap();
        assert_eq!(p.coeffs(), back.coeffs());
    }

    #[test]
    fn log_requires_unit_constant() {
        let p = TSeries::<RatFunc>::new(1, 2);
        assert!(matches!(p.log(), Err(CohaError::NonUnitConstantTerm)));
    }

    #[test]
    fn dimvector_enumeration() {
        let all = dimvectors_up_to(2, 2);
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], dv(&[0, 0]));
        assert!(all.windows(2).all(|w| w[0].total() <= w[1].total()));
    }
}
