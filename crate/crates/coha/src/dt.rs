//! Generating series of the CoHa and extraction of the
//! Donaldson-Thomas invariants c_{(d,k)} from its product expansion,
//! together with the integrality/positivity verification.
//!
//! The infinite product over n >= 0 is absorbed analytically: taking
//! logs turns each factor family into F_d(s^m) / (m (1 - q^m)) with
//! F_d(s) = sum_k (-1)^{k-1} c_{(d,k)} s^k, so the exponents can be
//! peeled off the logarithm of the series one weight at a time.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::CohaError;
use crate::poly::graded_basis;
use crate::quiver::{DimVector, Quiver};
use crate::rational::Q;
use crate::series::{dimvectors_up_to, LaurentTrunc, TSeries};
use crate::Result;

/// Extracted exponents with their validity bounds. Reads outside the
/// bounds are not representable: the table only ever contains entries
/// with total(d) <= d_bound and k <= k_bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DTTable {
    entries: BTreeMap<(DimVector, i64), Q>,
    pub d_bound: u32,
    pub k_bound: i64,
}

impl DTTable {
    pub fn from_entries(entries: Vec<(DimVector, i64, Q)>, d_bound: u32, k_bound: i64) -> Self {
        let mut map = BTreeMap::new();
        for (d, k, c) in entries {
            if !c.is_zero() {
                map.insert((d, k), c);
            }
        }
        DTTable {
            entries: map,
            d_bound,
            k_bound,
        }
    }

    pub fn get(&self, d: &DimVector, k: i64) -> Result<Q> {
        if d.total() > self.d_bound || k > self.k_bound {
            return Err(CohaError::TruncationBounds(format!(
                "entry ({:?}, {}) outside validity bounds (D = {}, K = {})",
                d.entries(),
                k,
                self.d_bound,
                self.k_bound
            )));
        }
        Ok(self
            .entries
            .get(&(d.clone(), k))
            .cloned()
            .unwrap_or_else(Q::zero))
    }

    pub fn entries(&self) -> &BTreeMap<(DimVector, i64), Q> {
        &self.entries
    }
}

/// The generating series of the CoHa: coefficient
/// (-s)^{chi(d,d)} prod_i prod_{v=1}^{d_i} (1 - q^v)^{-1} at t^d,
/// with the geometric expansions carried through s-order `n_order`.
pub fn coha_series(q: &Quiver, d_bound: u32, n_order: i64) -> Result<TSeries<LaurentTrunc>> {
    if !q.is_symmetric() {
        return Err(CohaError::NonSymmetric(
            "the generating series identity needs a symmetric quiver".into(),
        ));
    }
    let nv = q.vertex_count();
    let mut out = TSeries::one(nv, d_bound);
    for d in dimvectors_up_to(nv, d_bound) {
        if d.is_zero() {
            continue;
        }
        let chi = q.euler_form(&d, &d)?;
        let sign = if chi.rem_euclid(2) == 0 {
            Q::one()
        } else {
            -Q::one()
        };
        let mut coeff = LaurentTrunc::monomial(chi, sign).truncate(n_order);
        for i in 0..nv {
            for v in 1..=d.entry(i) {
                coeff = coeff.mul_geometric_inverse(v as i64, n_order);
            }
        }
        out.set(d, coeff);
    }
    Ok(out)
}

/// The same series reassembled from graded-basis counts:
/// sum_k (-1)^k dim H_{(d,k)} s^k with k = 2*polydeg + chi(d,d).
pub fn graded_dims_series(q: &Quiver, d_bound: u32, n_order: i64) -> Result<TSeries<LaurentTrunc>> {
    if !q.is_symmetric() {
        return Err(CohaError::NonSymmetric(
            "the refined grading needs a symmetric quiver".into(),
        ));
    }
    let nv = q.vertex_count();
    let mut out = TSeries::one(nv, d_bound);
    for d in dimvectors_up_to(nv, d_bound) {
        if d.is_zero() {
            continue;
        }
        let chi = q.euler_form(&d, &d)?;
        let sign = if chi.rem_euclid(2) == 0 {
            Q::one()
        } else {
            -Q::one()
        };
        let mut pairs = Vec::new();
        let mut j = 0usize;
        loop {
            let k = 2 * j as i64 + chi;
            if k > n_order {
                break;
            }
            let dim = graded_basis(&d, j).len();
            if dim > 0 {
                pairs.push((k, sign.clone() * Q::from_integer(dim.into())));
            }
            j += 1;
        }
        out.set(d, LaurentTrunc::from_coeffs(pairs, n_order));
    }
    Ok(out)
}

/// Peels the product-expansion exponents off `series`: for each weight e
/// in increasing total, F_e = (1 - q) (M_e - corrections from proper
/// multiples), and c_{(e,k)} = (-1)^{k-1} [s^k] F_e.
pub fn dt_extract(series: &TSeries<LaurentTrunc>, d_bound: u32, k_bound: i64) -> Result<DTTable> {
    if d_bound > series.bound() {
        return Err(CohaError::TruncationBounds(format!(
            "requested weights through total {}, series only carries {}",
            d_bound,
            series.bound()
        )));
    }
    let nv = series.nvertices();
    let constant = series.get(&DimVector::zero(nv));
    if !constant.is_exactly_one() {
        return Err(CohaError::NonUnitConstantTerm);
    }
    let log = series.log()?;
    let mut f_polys: BTreeMap<DimVector, LaurentTrunc> = BTreeMap::new();
    let mut entries = Vec::new();
    for e in dimvectors_up_to(nv, d_bound) {
        if e.is_zero() {
            continue;
        }
        let m_e = log.get(&e).neg();
        let mut acc = m_e;
        for m in 2..=(e.total() as i64) {
            let Some(base) = e.divided_by(m as u32) else {
                continue;
            };
            if base.is_zero() {
                continue;
            }
            let f_base = f_polys
                .get(&base)
                .expect("weights processed in increasing total order");
            let cap = acc.order();
            let correction = f_base
                .subst_s_power(m)
                .mul_geometric_inverse(m, cap)
                .div_nat(m as u64);
            acc = acc.sub(&correction);
        }
        let f_e = acc.mul_one_minus_q_power(1);
        if f_e.order() < k_bound {
            return Err(CohaError::TruncationBounds(format!(
                "exponents at weight {:?} only valid through s-order {}, need {}; raise the series truncation",
                e.entries(),
                f_e.order(),
                k_bound
            )));
        }
        for (&k, c) in f_e.coeffs() {
            if k > k_bound {
                continue;
            }
            let value = if (k - 1).rem_euclid(2) == 0 {
                c.clone()
            } else {
                -c.clone()
            };
            entries.push((e.clone(), k, value));
        }
        f_polys.insert(e, f_e);
    }
    Ok(DTTable::from_entries(entries, d_bound, k_bound))
}

/// Rebuilds the series from an extracted table by exponentiating the
/// absorbed product form; coefficients are valid through the table's
/// k-bound and can be compared to the source with `eq_through_orders`.
pub fn product_form_series(
    table: &DTTable,
    nv: usize,
    d_bound: u32,
) -> Result<TSeries<LaurentTrunc>> {
    let mut log: TSeries<LaurentTrunc> = TSeries::new(nv, d_bound);
    // group the table back into F_d polynomials, valid through k_bound
    let mut f_polys: BTreeMap<DimVector, Vec<(i64, Q)>> = BTreeMap::new();
    for ((d, k), c) in table.entries() {
        let signed = if (k - 1).rem_euclid(2) == 0 {
            c.clone()
        } else {
            -c.clone()
        };
        f_polys.entry(d.clone()).or_default().push((*k, signed));
    }
    let f_polys: BTreeMap<DimVector, LaurentTrunc> = f_polys
        .into_iter()
        .map(|(d, pairs)| (d, LaurentTrunc::from_coeffs(pairs, table.k_bound)))
        .collect();
    for (d, f) in &f_polys {
        if d.is_zero() {
            continue;
        }
        let mut m = 1i64;
        loop {
            let scaled = d.scaled(m as u32);
            if scaled.total() > d_bound {
                break;
            }
            let contribution = f
                .subst_s_power(m)
                .mul_geometric_inverse(m, table.k_bound)
                .div_nat(m as u64)
                .neg();
            let sum = log.get(&scaled).add(&contribution);
            log.set(scaled, sum);
            m += 1;
        }
    }
    log.exp()
}

/// A table entry rejected by the integrality/positivity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EfimovViolation {
    pub d: DimVector,
    pub k: i64,
    pub value: Q,
    pub reason: String,
}

/// Flags every exponent that is not a nonnegative integer; an empty
/// report is a pass.
pub fn efimov_check(table: &DTTable) -> Vec<EfimovViolation> {
    let mut out = Vec::new();
    for ((d, k), value) in table.entries() {
        if !value.is_integer() {
            out.push(EfimovViolation {
                d: d.clone(),
                k: *k,
                value: value.clone(),
                reason: "not an integer".into(),
            });
        } else if value.is_negative() {
            out.push(EfimovViolation {
                d: d.clone(),
                k: *k,
                value: value.clone(),
                reason: "negative".into(),
            });
        }
    }
    out
}
