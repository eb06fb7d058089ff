//! Point counts over finite fields: the integration map of the
//! completed Hall algebra, the Harder-Narasimhan recursion for
//! semi-stable counts on symmetric quivers, and independent brute-force
//! oracles over small prime fields.
//!
//! Counts are carried as rational functions in `s = q^{1/2}`; evenness
//! in s is asserted before any substitution q = prime.

use std::collections::BTreeMap;


use crate::error::CohaError;
use crate::quiver::{hn_types, DimVector, Quiver, Stability};
use crate::rational::{Q, RatFunc};
use crate::series::{dimvectors_up_to, TSeries};
use crate::Result;

/// One weighted semi-stable count: (-s)^{chi(d,d)} #R_d^sst / #G_d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub d: DimVector,
    pub value: RatFunc,
}

/// #GL_m(F_q) = prod_{v=0}^{m-1} (q^m - q^v) as a polynomial in q.
pub fn gl_count(m: u32) -> RatFunc {
    let mut acc = RatFunc::one();
    for v in 0..m {
        let factor = RatFunc::q_power(m as i64).sub(&RatFunc::q_power(v as i64));
        acc = acc.mul(&factor);
    }
    acc
}

/// #G_d = prod over vertices of #GL_{d_i}.
pub fn group_count(d: &DimVector) -> RatFunc {
    let mut acc = RatFunc::one();
    for i in 0..d.len() {
        acc = acc.mul(&gl_count(d.entry(i)));
    }
    acc
}

/// The unrestricted integrand coefficient
/// B_d = (-s)^{chi(d,d)} q^{dim R_d} / #G_d.
pub fn naive_coeff(q: &Quiver, d: &DimVector) -> Result<RatFunc> {
    let chi = q.euler_form(d, d)?;
    let rep_dim = q.rep_space_dim(d)?;
    Ok(RatFunc::neg_s_power(chi)
        .mul(&RatFunc::q_power(rep_dim))
        .div(&group_count(d)))
}

/// The closed form (-s)^{-chi(d,d)} prod_i prod_{v=1}^{d_i}
/// (1 - q^{-v})^{-1}, used as an independent comparator.
pub fn naive_coeff_closed_form(q: &Quiver, d: &DimVector) -> Result<RatFunc> {
    let chi = q.euler_form(d, d)?;
    let mut acc = RatFunc::neg_s_power(-chi);
    for i in 0..d.len() {
        for v in 1..=d.entry(i) {
            let factor = RatFunc::one().sub(&RatFunc::q_power(-(v as i64)));
            acc = acc.div(&factor);
        }
    }
    Ok(acc)
}

/// Memoized solver for the semi-stable coefficients A_d of a symmetric
/// quiver: B_d = sum over HN types of prod_k A_{d^k}.
pub struct SstCounter {
    quiver: Quiver,
    theta: Stability,
    memo: BTreeMap<DimVector, RatFunc>,
}

impl SstCounter {
    pub fn new(quiver: Quiver, theta: Stability) -> Result<Self> {
        if !quiver.is_symmetric() {
            return Err(CohaError::NonSymmetric(
                "the integration map is an algebra homomorphism only for symmetric quivers".into(),
            ));
        }
        if theta.len() != quiver.vertex_count() {
            return Err(CohaError::KeyMismatch(format!(
                "stability has {} entries for a quiver with {} vertices",
                theta.len(),
                quiver.vertex_count()
            )));
        }
        Ok(SstCounter {
            quiver,
            theta,
            memo: BTreeMap::new(),
        })
    }

    /// A_d = B_d - sum over HN types with >= 2 parts of prod_k A_{d^k}.
    pub fn sst_coeff(&mut self, d: &DimVector) -> Result<RatFunc> {
        if d.is_zero() {
            return Err(CohaError::ZeroDimVector);
        }
        if let Some(v) = self.memo.get(d) {
            return Ok(v.clone());
        }
        let b = naive_coeff(&self.quiver, d)?;
        let mut correction = RatFunc::zero();
        for t in hn_types(&self.theta, d)? {
            if t.parts.len() < 2 {
                continue;
            }
            let mut prod = RatFunc::one();
            for part in &t.parts {
                prod = prod.mul(&self.sst_coeff(part)?);
            }
            correction = correction.add(&prod);
        }
        let a = b.sub(&correction);
        self.memo.insert(d.clone(), a.clone());
        Ok(a)
    }

    pub fn count_result(&mut self, d: &DimVector) -> Result<CountResult> {
        Ok(CountResult {
            d: d.clone(),
            value: self.sst_coeff(d)?,
        })
    }

    /// The semi-stable point count #R_d^sst as a rational function of q.
    /// A_d * #G_d / (-s)^{chi(d,d)} is always even in s.
    pub fn sst_point_count(&mut self, d: &DimVector) -> Result<RatFunc> {
        let a = self.sst_coeff(d)?;
        let chi = self.quiver.euler_form(d, d)?;
        Ok(a.mul(&group_count(d)).div(&RatFunc::neg_s_power(chi)))
    }
}

/// Series of integration coefficients: A_d at every d of slope mu with
/// total(d) <= bound, or B_d for every d when mu is None.
pub fn integration_series(
    q: &Quiver,
    theta: &Stability,
    mu: Option<&Q>,
    bound: u32,
) -> Result<TSeries<RatFunc>> {
    let mut counter = SstCounter::new(q.clone(), theta.clone())?;
    let mut out = TSeries::one(q.vertex_count(), bound);
    for d in dimvectors_up_to(q.vertex_count(), bound) {
        if d.is_zero() {
            continue;
        }
        match mu {
            None => out.set(d.clone(), naive_coeff(q, &d)?),
            Some(mu) => {
                if &theta.slope(&d)? == mu {
                    let a = counter.sst_coeff(&d)?;
                    out.set(d.clone(), a);
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------
// Brute-force oracles over F_p
// ---------------------------------------------------------------------

const ENTRY_GUARD: usize = 10;

/// A subspace of F_p^n held as a reduced row-echelon basis.
#[derive(Debug, Clone)]
struct Subspace {
    n: usize,
    rows: Vec<Vec<u8>>, // RREF rows, possibly empty
}

impl Subspace {
    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    /// Membership via reduction against the echelon rows.
    fn contains(&self, v: &[u8], p: u8) -> bool {
        let mut v = v.to_vec();
        for row in &self.rows {
            let pivot = row.iter().position(|&x| x != 0).expect("nonzero row");
            if v[pivot] != 0 {
                let c = v[pivot];
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = (*x + (p - c) * r % p) % p;
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }
}

/// Every subspace of F_p^n, one echelon representative each.
fn enumerate_subspaces(n: usize, p: u8) -> Vec<Subspace> {
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations_usize(n, k) {
            // free entries: to the right of each pivot, in non-pivot columns
            let mut free_positions = Vec::new();
            for (r, &pc) in pivots.iter().enumerate() {
                for col in (pc + 1)..n {
                    if !pivots.contains(&col) {
                        free_positions.push((r, col));
                    }
                }
            }
            let total = free_positions.len();
            let mut counter = vec![0u8; total];
            loop {
                let mut rows = vec![vec![0u8; n]; k];
                for (r, &pc) in pivots.iter().enumerate() {
                    rows[r][pc] = 1;
                }
                for (idx, &(r, col)) in free_positions.iter().enumerate() {
                    rows[r][col] = counter[idx];
                }
                out.push(Subspace { n, rows });
                // advance base-p counter
                let mut pos = 0;
                loop {
                    if pos == total {
                        break;
                    }
                    counter[pos] += 1;
                    if counter[pos] < p {
                        break;
                    }
                    counter[pos] = 0;
                    pos += 1;
                }
                if pos == total {
                    break;
                }
            }
        }
    }
    out
}

fn combinations_usize(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Matrix-vector product over F_p; `mat` has `rows x cols` entries in
/// row-major order.
fn matvec(mat: &[u8], rows: usize, cols: usize, v: &[u8], p: u8) -> Vec<u8> {
    let mut out = vec![0u8; rows];
    for r in 0..rows {
        let mut acc: u32 = 0;
        for c in 0..cols {
            acc += mat[r * cols + c] as u32 * v[c] as u32;
        }
        out[r] = (acc % p as u32) as u8;
    }
    out
}

fn check_prime(p: u8) -> Result<()> {
    if p == 2 || p == 3 {
        Ok(())
    } else {
        Err(CohaError::OutOfRange(format!(
            "oracle supports primes 2 and 3, got {}",
            p
        )))
    }
}

struct RepEnumerator {
    // one matrix per arrow, row-major, sizes (d_target x d_source)
    shapes: Vec<(usize, usize)>,
    entries: Vec<u8>,
    p: u8,
    exhausted: bool,
}

impl RepEnumerator {
    fn new(q: &Quiver, d: &DimVector, p: u8) -> Result<Self> {
        let shapes: Vec<(usize, usize)> = q
            .arrows()
            .iter()
            .map(|&(s, t)| (d.entry(t) as usize, d.entry(s) as usize))
            .collect();
        let total: usize = shapes.iter().map(|&(r, c)| r * c).sum();
        if total > ENTRY_GUARD {
            return Err(CohaError::SizeGuard(format!(
                "{} matrix entries exceed the limit of {}",
                total, ENTRY_GUARD
            )));
        }
        Ok(RepEnumerator {
            shapes,
            entries: vec![0u8; total],
            p,
            exhausted: false,
        })
    }

    /// Slices of the current entry vector, one per arrow.
    fn matrices(&self) -> Vec<&[u8]> {
        let mut out = Vec::with_capacity(self.shapes.len());
        let mut offset = 0usize;
        for &(r, c) in &self.shapes {
            out.push(&self.entries[offset..offset + r * c]);
            offset += r * c;
        }
        out
    }

    fn advance(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        let mut pos = 0usize;
        loop {
            if pos == self.entries.len() {
                self.exhausted = true;
                return false;
            }
            self.entries[pos] += 1;
            if self.entries[pos] < self.p {
                return true;
            }
            self.entries[pos] = 0;
            pos += 1;
        }
    }
}

/// Exact #R_d^sst(F_p) by enumeration: every tuple of arrow matrices is
/// kept unless some nonzero invariant subspace tuple has slope greater
/// than slope(d).
pub fn brute_force_sst_count(
    q: &Quiver,
    theta: &Stability,
    d: &DimVector,
    p: u8,
) -> Result<u64> {
    check_prime(p)?;
    if d.is_zero() {
        return Ok(1);
    }
    let slope_d = theta.slope(d)?;
    // per-vertex subspaces and their tuples with slope above slope(d)
    let per_vertex: Vec<Vec<Subspace>> = (0..q.vertex_count())
        .map(|i| enumerate_subspaces(d.entry(i) as usize, p))
        .collect();
    let mut killers: Vec<Vec<&Subspace>> = Vec::new();
    let mut stack: Vec<&Subspace> = Vec::new();
    collect_tuples(&per_vertex, 0, &mut stack, &mut |tuple| {
        let dims = DimVector::new(tuple.iter().map(|u| u.dim() as u32).collect());
        if dims.is_zero() {
            return;
        }
        let mu = theta.slope(&dims).expect("nonzero dims");
        if mu > slope_d {
            killers.push(tuple.to_vec());
        }
    });

    let mut reps = RepEnumerator::new(q, d, p)?;
    let arrows = q.arrows().to_vec();
    let mut count = 0u64;
    loop {
        let mats = reps.matrices();
        let destabilized = killers.iter().any(|tuple| {
            arrows.iter().enumerate().all(|(ai, &(src, tgt))| {
                let (rows, cols) = reps.shapes[ai];
                tuple[src].rows.iter().all(|basis_vec| {
                    let image = matvec(mats[ai], rows, cols, basis_vec, p);
                    tuple[tgt].contains(&image, p)
                })
            })
        });
        if !destabilized {
            count += 1;
        }
        if !reps.advance() {
            break;
        }
    }
    Ok(count)
}

fn collect_tuples<'a>(
    per_vertex: &'a [Vec<Subspace>],
    pos: usize,
    stack: &mut Vec<&'a Subspace>,
    visit: &mut impl FnMut(&[&'a Subspace]),
) {
    if pos == per_vertex.len() {
        visit(stack);
        return;
    }
    for sub in &per_vertex[pos] {
        stack.push(sub);
        collect_tuples(per_vertex, pos + 1, stack, visit);
        stack.pop();
    }
}

/// Exact #\hat{R}_d^st(F_p) at trivial stability: pairs (M, f) such
/// that no proper invariant subspace tuple contains the image of f.
pub fn brute_force_framed_stable_count(
    q: &Quiver,
    framing: &DimVector,
    d: &DimVector,
    p: u8,
) -> Result<u64> {
    check_prime(p)?;
    if framing.len() != q.vertex_count() || d.len() != q.vertex_count() {
        return Err(CohaError::KeyMismatch(
            "framing and dimension vector must match the quiver".into(),
        ));
    }
    let framing_entries: usize = (0..q.vertex_count())
        .map(|i| (d.entry(i) * framing.entry(i)) as usize)
        .sum();
    let rep_entries: usize = q
        .arrows()
        .iter()
        .map(|&(s, t)| (d.entry(s) * d.entry(t)) as usize)
        .sum();
    if rep_entries + framing_entries > ENTRY_GUARD {
        return Err(CohaError::SizeGuard(format!(
            "{} matrix entries exceed the limit of {}",
            rep_entries + framing_entries,
            ENTRY_GUARD
        )));
    }

    let per_vertex: Vec<Vec<Subspace>> = (0..q.vertex_count())
        .map(|i| enumerate_subspaces(d.entry(i) as usize, p))
        .collect();
    // proper subspace tuples only
    let mut proper: Vec<Vec<&Subspace>> = Vec::new();
    let mut stack: Vec<&Subspace> = Vec::new();
    collect_tuples(&per_vertex, 0, &mut stack, &mut |tuple| {
        if tuple.iter().any(|u| !u.is_full()) {
            proper.push(tuple.to_vec());
        }
    });

    let framing_shapes: Vec<(usize, usize)> = (0..q.vertex_count())
        .map(|i| (d.entry(i) as usize, framing.entry(i) as usize))
        .collect();
    let arrows = q.arrows().to_vec();

    let mut count = 0u64;
    let mut reps = RepEnumerator::new(q, d, p)?;
    loop {
        // enumerate framing maps for the current representation
        let mut fr = vec![0u8; framing_entries];
        loop {
            let mats = reps.matrices();
            let unstable = proper.iter().any(|tuple| {
                let invariant = arrows.iter().enumerate().all(|(ai, &(src, tgt))| {
                    let (rows, cols) = reps.shapes[ai];
                    tuple[src].rows.iter().all(|basis_vec| {
                        let image = matvec(mats[ai], rows, cols, basis_vec, p);
                        tuple[tgt].contains(&image, p)
                    })
                });
                if !invariant {
                    return false;
                }
                // does the tuple contain every framing column?
                let mut offset = 0usize;
                framing_shapes.iter().enumerate().all(|(i, &(rows, cols))| {
                    let block = &fr[offset..offset + rows * cols];
                    offset += rows * cols;
                    (0..cols).all(|c| {
                        let column: Vec<u8> = (0..rows).map(|r| block[r * cols + c]).collect();
                        tuple[i].contains(&column, p)
                    })
                })
            });
            if !unstable {
                count += 1;
            }
            // advance framing counter
            let mut pos = 0usize;
            loop {
                if pos == fr.len() {
                    break;
                }
                fr[pos] += 1;
                if fr[pos] < p {
                    break;
                }
                fr[pos] = 0;
                pos += 1;
            }
            if pos == fr.len() {
                break;
            }
        }
        if !reps.advance() {
            break;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_int;
    use num_traits::Zero;

    fn dv(entries: &[u32]) -> DimVector {
        DimVector::new(entries.to_vec())
    }

    #[test]
    fn gl_counts() {
        assert_eq!(gl_count(0), RatFunc::one());
        // q - 1
        assert_eq!(
            gl_count(1),
            RatFunc::q_power(1).sub(&RatFunc::one())
        );
        // (q^2 - 1)(q^2 - q), and #GL_2(F_2) = 6 by direct enumeration
        let g2 = gl_count(2);
        let expect = RatFunc::q_power(2)
            .sub(&RatFunc::one())
            .mul(&RatFunc::q_power(2).sub(&RatFunc::q_power(1)));
        assert_eq!(g2, expect);
        assert_eq!(g2.eval_at_q(&q_int(2)).unwrap(), q_int(count_gl2_f2()));
    }

    fn count_gl2_f2() -> i64 {
        let mut count = 0i64;
        for bits in 0..16u32 {
            let (a, b, c, d) = (bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1);
            if (a * d + b * c) % 2 == 1 {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn naive_coeff_examples() {
        let pt = Quiver::point();
        assert_eq!(naive_coeff(&pt, &dv(&[0])).unwrap(), RatFunc::one());
        // point, d=1: -s / (q - 1)
        let b1 = naive_coeff(&pt, &dv(&[1])).unwrap();
        let expect = RatFunc::neg_s_power(1).div(&RatFunc::q_power(1).sub(&RatFunc::one()));
        assert_eq!(b1, expect);
        // loop, d=1: q / (q - 1)
        let lp = Quiver::loops(1);
        let b1 = naive_coeff(&lp, &dv(&[1])).unwrap();
        let expect = RatFunc::q_power(1).div(&RatFunc::q_power(1).sub(&RatFunc::one()));
        assert_eq!(b1, expect);
    }

    #[test]
    fn naive_coeff_matches_closed_form() {
        for q in [Quiver::point(), Quiver::loops(1), Quiver::loops(2), Quiver::a_tilde_1()] {
            for d in dimvectors_up_to(q.vertex_count(), 3) {
                assert_eq!(
                    naive_coeff(&q, &d).unwrap(),
                    naive_coeff_closed_form(&q, &d).unwrap(),
                    "mismatch at {:?}",
                    d
                );
            }
        }
    }

    #[test]
    fn sst_examples() {
        let q = Quiver::a_tilde_1();
        let theta = Stability::from_ints(&[1, -1]);
        let mut counter = SstCounter::new(q.clone(), theta.clone()).unwrap();
        // (1,1): q/(q-1)
        let a = counter.sst_coeff(&dv(&[1, 1])).unwrap();
        let expect = RatFunc::q_power(1).div(&RatFunc::q_power(1).sub(&RatFunc::one()));
        assert_eq!(a, expect);
        // (2,1): no semi-stable representations
        assert!(counter.sst_coeff(&dv(&[2, 1])).unwrap().is_zero());
        // trivial stability reduces to the naive coefficient
        let mut trivial = SstCounter::new(q.clone(), Stability::zero(2)).unwrap();
        for d in dimvectors_up_to(2, 3) {
            if d.is_zero() {
                continue;
            }
            assert_eq!(
                trivial.sst_coeff(&d).unwrap(),
                naive_coeff(&q, &d).unwrap()
            );
        }
    }

    #[test]
    fn sst_rejects_nonsymmetric() {
        let q = Quiver::new(vec!["a", "b"], vec![("a", "b")]).unwrap();
        assert!(matches!(
            SstCounter::new(q, Stability::zero(2)),
            Err(CohaError::NonSymmetric(_))
        ));
    }

    #[test]
    fn sst_closed_form_balanced() {
        // A_{(m,m)} * #G / (-s)^0 = q^{m^2} #GL_m
        let q = Quiver::a_tilde_1();
        let theta = Stability::from_ints(&[1, -1]);
        let mut counter = SstCounter::new(q, theta).unwrap();
        for m in 1..=3u32 {
            let d = dv(&[m, m]);
            let count = counter.sst_point_count(&d).unwrap();
            let expect = RatFunc::q_power((m * m) as i64).mul(&gl_count(m));
            assert_eq!(count, expect);
        }
    }

    #[test]
    fn sst_vanishing_mixed_slopes() {
        let q = Quiver::a_tilde_1();
        let theta = Stability::from_ints(&[1, -1]);
        let mut counter = SstCounter::new(q, theta).unwrap();
        for d in dimvectors_up_to(2, 5) {
            let (m, n) = (d.entry(0), d.entry(1));
            if m != n && m != 0 && n != 0 {
                assert!(
                    counter.sst_coeff(&d).unwrap().is_zero(),
                    "expected vanishing at {:?}",
                    d
                );
            }
        }
    }

    #[test]
    fn integration_series_slope_one_matches_point_quiver() {
        // A_{(m,0)} equals the point-quiver series coefficient at q^{-1}
        let q = Quiver::a_tilde_1();
        let theta = Stability::from_ints(&[1, -1]);
        let series = integration_series(&q, &theta, Some(&q_int(1)), 3).unwrap();
        for m in 1..=3u32 {
            let a = series.get(&dv(&[m, 0]));
            let mut expect = RatFunc::neg_s_power(-((m * m) as i64));
            for v in 1..=m {
                expect = expect.div(&RatFunc::one().sub(&RatFunc::q_power(-(v as i64))));
            }
            assert_eq!(a, expect, "mismatch at m = {}", m);
            // nothing on other slopes
            assert!(series.get(&dv(&[m, m])).is_zero() || m == 0);
        }
    }

    #[test]
    fn integration_series_slope_zero_matches_loop_quiver() {
        let q = Quiver::a_tilde_1();
        let theta = Stability::from_ints(&[1, -1]);
        let series = integration_series(&q, &theta, Some(&Q::zero()), 6).unwrap();
        for m in 1..=3u32 {
            let a = series.get(&dv(&[m, m]));
            // loop-quiver coefficient at q^{-1}: prod (1 - q^{-v})^{-1}
            let mut expect = RatFunc::one();
            for v in 1..=m {
                expect = expect.div(&RatFunc::one().sub(&RatFunc::q_power(-(v as i64))));
            }
            assert_eq!(a, expect, "mismatch at m = {}", m);
        }
    }

    #[test]
    fn integration_series_empty_slope_is_one() {
        let q = Quiver::a_tilde_1();
        let theta = Stability::from_ints(&[1, -1]);
        let series = integration_series(&q, &theta, Some(&q_int(7)), 3).unwrap();
        assert_eq!(series, TSeries::one(2, 3));
    }

    #[test]
    fn reineke_factorization() {
        // B_d = sum over all HN types of prod_k A_{d^k}
        let atilde = Quiver::a_tilde_1();
        let theta = Stability::from_ints(&[1, -1]);
        let mut counter = SstCounter::new(atilde.clone(), theta.clone()).unwrap();
        for d in dimvectors_up_to(2, 4) {
            if d.is_zero() {
                continue;
            }
            let mut total = RatFunc::zero();
            for t in hn_types(&theta, &d).unwrap() {
                let mut prod = RatFunc::one();
                for part in &t.parts {
                    prod = prod.mul(&counter.sst_coeff(part).unwrap());
                }
                total = total.add(&prod);
            }
            assert_eq!(total, naive_coeff(&atilde, &d).unwrap(), "at {:?}", d);
        }
    }

    #[test]
    fn subspace_enumeration_counts() {
        // F_2^2: 1 + 3 + 1; F_3^2: 1 + 4 + 1
        assert_eq!(enumerate_subspaces(2, 2).len(), 5);
        assert_eq!(enumerate_subspaces(2, 3).len(), 6);
        // Gaussian binomial [3 choose 1]_2 = 7
        let subs = enumerate_subspaces(3, 2);
        assert_eq!(subs.iter().filter(|s| s.dim() == 1).count(), 7);
    }

    #[test]
    fn brute_force_sst_examples() {
        let q = Quiver::a_tilde_1();
        let theta = Stability::from_ints(&[1, -1]);
        // (1,1) over F_2: pairs (a, b) with a != 0
        assert_eq!(brute_force_sst_count(&q, &theta, &dv(&[1, 1]), 2).unwrap(), 2);
        // (1,0) over F_3: the unique representation is semi-stable
        assert_eq!(brute_force_sst_count(&q, &theta, &dv(&[1, 0]), 3).unwrap(), 1);
        // loop quiver at trivial stability: everything is semi-stable
        let lp = Quiver::loops(1);
        assert_eq!(
            brute_force_sst_count(&lp, &Stability::zero(1), &dv(&[1]), 2).unwrap(),
            2
        );
        // guard
        assert!(matches!(
            brute_force_sst_count(&q, &theta, &dv(&[3, 3]), 2),
            Err(CohaError::SizeGuard(_))
        ));
    }

    #[test]
    fn brute_force_framed_examples() {
        let lp = Quiver::loops(1);
        // n=1, d=1 over F_2: (b, f) with f != 0
        assert_eq!(
            brute_force_framed_stable_count(&lp, &dv(&[1]), &dv(&[1]), 2).unwrap(),
            2
        );
        // no framing: the zero subspace contains im f
        assert_eq!(
            brute_force_framed_stable_count(&lp, &dv(&[0]), &dv(&[1]), 2).unwrap(),
            0
        );
        // n=1, d=2 over F_2: cyclic vectors, q^2 * #GL_2 at q=2
        assert_eq!(
            brute_force_framed_stable_count(&lp, &dv(&[1]), &dv(&[2]), 2).unwrap(),
            24
        );
    }

    #[test]
    fn oracle_agreement_small() {
        let q = Quiver::a_tilde_1();
        let theta = Stability::from_ints(&[1, -1]);
        let mut counter = SstCounter::new(q.clone(), theta.clone()).unwrap();
        for d in dimvectors_up_to(2, 3) {
            if d.is_zero() {
                continue;
            }
            let symbolic = counter.sst_point_count(&d).unwrap();
            assert!(symbolic.is_even_in_s(), "odd point count at {:?}", d);
            for p in [2u8, 3u8] {
                let expected = symbolic.eval_at_q(&q_int(p as i64)).unwrap();
                let actual = brute_force_sst_count(&q, &theta, &d, p).unwrap();
                assert_eq!(expected, q_int(actual as i64), "at {:?}, p = {}", d, p);
            }
        }
    }
}
