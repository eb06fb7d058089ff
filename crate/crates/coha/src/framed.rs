//! Cyclic-module presentations coming from framed stable moduli: the
//! Chern-class ideal generators, graded dimensions of the quotient
//! modules for non-commutative Hilbert schemes, and the closed-form
//! comparators used to test them.

use std::collections::BTreeMap;


use crate::engine::{coha_mul, Bidegree, CohaElement};
use crate::error::CohaError;
use crate::poly::{graded_basis, rank_of_span, Alphabet, SymPoly};
use crate::quiver::{sub_dimvectors, DimVector, Quiver};
use crate::Result;

/// Framing multiplicities, one per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramingDatum(pub DimVector);

impl FramingDatum {
    pub fn entries(&self) -> &DimVector {
        &self.0
    }
}

/// Dimensions per polynomial degree, up to a cutoff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDims {
    dims: BTreeMap<usize, usize>,
    cutoff: usize,
}

impl GradedDims {
    pub fn new(dims: BTreeMap<usize, usize>, cutoff: usize) -> Self {
        debug_assert!(dims.keys().all(|&k| k <= cutoff));
        GradedDims { dims, cutoff }
    }

    pub fn get(&self, k: usize) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..=self.cutoff).map(|k| (k, self.get(k)))
    }
}

/// The ideal generator at weight q: the product over vertices of the
/// top Chern class of the rank-q_i tautological bundle, raised to the
/// framing multiplicity. In Chern roots this is
/// prod_i (x_{i,1} ... x_{i,q_i})^{n_i}.
pub fn chern_generator(
    quiver: &Quiver,
    framing: &FramingDatum,
    q: &DimVector,
) -> Result<CohaElement> {
    if q.is_zero() {
        return Err(CohaError::ZeroDimVector);
    }
    if framing.0.len() != quiver.vertex_count() || q.len() != quiver.vertex_count() {
        return Err(CohaError::KeyMismatch(
            "framing and weight must match the quiver".into(),
        ));
    }
    let alphabet = Alphabet::from_dim(q);
    let mut body = SymPoly::one(alphabet.clone());
    for i in 0..quiver.vertex_count() {
        let n_i = framing.0.entry(i);
        if n_i == 0 || q.entry(i) == 0 {
            continue;
        }
        let lambda = vec![n_i; q.entry(i) as usize];
        let top_power = crate::poly::monomial_sym_at(&alphabet, i, &lambda)?;
        body = body.mul(&top_power)?;
    }
    CohaElement::new(quiver.clone(), q.clone(), body)
}

/// Spanning vectors of the degree-k component of the kernel
/// sum_{p+q=d, q != 0} H_p * (e_q^n cup H_q).
pub fn hilb_ideal_span(
    quiver: &Quiver,
    framing: &FramingDatum,
    d: &DimVector,
    k: usize,
) -> Result<Vec<SymPoly>> {
    let mut span = Vec::new();
    for qd in sub_dimvectors(d) {
        if qd.is_zero() {
            continue;
        }
        let p = d.checked_sub(&qd).expect("sub-dimension vector");
        let shift: i64 = (0..quiver.vertex_count())
            .map(|i| framing.0.entry(i) as i64 * qd.entry(i) as i64)
            .sum();
        let chi_pq = quiver.euler_form(&p, &qd)?;
        // deg(b_p * (e cup b_q)) = deg b_p + shift + deg b_q - chi(p, q)
        let forced = k as i64 + chi_pq - shift;
        if forced < 0 {
            continue;
        }
        let generator = chern_generator(quiver, framing, &qd)?;
        for tp in 0..=(forced as usize) {
            let tq = forced as usize - tp;
            for b_p in graded_basis(&p, tp) {
                for b_q in graded_basis(&qd, tq) {
                    let cup = generator.body().mul(&b_q)?;
                    let right = CohaElement::new(quiver.clone(), qd.clone(), cup)?;
                    let left = CohaElement::new(quiver.clone(), p.clone(), b_p.clone())?;
                    let product = coha_mul(&left, &right)?;
                    if !product.is_zero() {
                        debug_assert_eq!(product.body().homogeneous_degree()?, k);
                        span.push(product.body().clone());
                    }
                }
            }
        }
    }
    Ok(span)
}

/// Per-degree rank of the Chern-class ideal inside H_d.
pub fn hilb_ideal_dims(
    quiver: &Quiver,
    framing: &FramingDatum,
    d: &DimVector,
    polydeg_max: usize,
) -> Result<GradedDims> {
    let mut dims = BTreeMap::new();
    for k in 0..=polydeg_max {
        let span = hilb_ideal_span(quiver, framing, d, k)?;
        let rank = rank_of_span(&span, d, k)?;
        if rank > 0 {
            dims.insert(k, rank);
        }
    }
    Ok(GradedDims::new(dims, polydeg_max))
}

/// Graded dimensions of the cyclic module H_d / ideal, i.e. of the
/// cohomology of the non-commutative Hilbert scheme in polynomial
/// degree k (cohomological degree 2k).
pub fn hilb_module_dims(
    quiver: &Quiver,
    framing: &FramingDatum,
    d: &DimVector,
    polydeg_max: usize,
) -> Result<GradedDims> {
    let ideal = hilb_ideal_dims(quiver, framing, d, polydeg_max)?;
    let mut dims = BTreeMap::new();
    for k in 0..=polydeg_max {
        let full = graded_basis(d, k).len();
        let dim = full - ideal.get(k);
        if dim > 0 {
            dims.insert(k, dim);
        }
    }
    Ok(GradedDims::new(dims, polydeg_max))
}

/// Bigraded dimension at weight d of the free super-commutative algebra
/// on the given generators; odd-parity generators square to zero and
/// parity is the weight parity eps. Keyed by cohomological degree k.
pub fn free_supercomm_dims(
    quiver: &Quiver,
    generators: &[Bidegree],
    d: &DimVector,
    k_max: i64,
) -> Result<BTreeMap<i64, usize>> {
    for g in generators {
        if g.d.is_zero() {
            return Err(CohaError::OutOfRange(
                "free algebra on a weight-zero generator is infinite at fixed weight".into(),
            ));
        }
    }
    let odd: Vec<bool> = generators
        .iter()
        .map(|g| crate::engine::parity(quiver, &g.d))
        .collect::<Result<_>>()?;
    let mut out: BTreeMap<i64, usize> = BTreeMap::new();
    let mut stack_k = 0i64;
    rec_count(
        generators,
        &odd,
        0,
        d.clone(),
        &mut stack_k,
        k_max,
        &mut out,
    );
    Ok(out)
}

fn rec_count(
    generators: &[Bidegree],
    odd: &[bool],
    pos: usize,
    remaining: DimVector,
    k_acc: &mut i64,
    k_max: i64,
    out: &mut BTreeMap<i64, usize>,
) {
    if pos == generators.len() {
        if remaining.is_zero() && *k_acc <= k_max {
            *out.entry(*k_acc).or_insert(0) += 1;
        }
        return;
    }
    let g = &generators[pos];
    let mut mult = 0u32;
    loop {
        let used = g.d.scaled(mult);
        let Some(rest) = remaining.checked_sub(&used) else {
            break;
        };
        *k_acc += g.k * mult as i64;
        rec_count(generators, odd, pos + 1, rest, k_acc, k_max, out);
        *k_acc -= g.k * mult as i64;
        if odd[pos] && mult == 1 {
            break;
        }
        mult += 1;
    }
}

/// Generator lists for the closing identifications of the two-vertex
/// cycle: bidegrees ((1,0), 2i+1), ((1,1), 2i), ((0,1), 2i+1) with the
/// index i below the respective bound.
pub fn atilde_generators(plus_bound: usize, diag_bound: usize, minus_bound: usize) -> Vec<Bidegree> {
    let mut out = Vec::new();
    for i in 0..plus_bound {
        out.push(Bidegree {
            d: DimVector::new(vec![1, 0]),
            k: 2 * i as i64 + 1,
        });
    }
    for i in 0..diag_bound {
        out.push(Bidegree {
            d: DimVector::new(vec![1, 1]),
            k: 2 * i as i64,
        });
    }
    for i in 0..minus_bound {
        out.push(Bidegree {
            d: DimVector::new(vec![0, 1]),
            k: 2 * i as i64 + 1,
        });
    }
    out
}

/// Framed-module dimensions over the semi-stable algebra of the
/// two-vertex cycle at stability (1, -1), through the identifications
/// with point- and loop-quiver Hilbert modules.
pub fn atilde_framed_dims(
    r: u32,
    s: u32,
    d: &DimVector,
    polydeg_max: usize,
) -> Result<GradedDims> {
    if d.len() != 2 {
        return Err(CohaError::KeyMismatch(
            "weight must belong to the two-vertex quiver".into(),
        ));
    }
    let (m, n) = (d.entry(0), d.entry(1));
    let point = Quiver::point();
    let lp = Quiver::loops(1);
    if n == 0 && m > 0 {
        hilb_module_dims(
            &point,
            &FramingDatum(DimVector::new(vec![r])),
            &DimVector::new(vec![m]),
            polydeg_max,
        )
    } else if m == 0 && n > 0 {
        hilb_module_dims(
            &point,
            &FramingDatum(DimVector::new(vec![s])),
            &DimVector::new(vec![n]),
            polydeg_max,
        )
    } else if m == n {
        hilb_module_dims(
            &lp,
            &FramingDatum(DimVector::new(vec![r + s])),
            &DimVector::new(vec![m]),
            polydeg_max,
        )
    } else {
        Err(CohaError::WrongSlope(format!(
            "no semi-stable locus at weight ({}, {})",
            m, n
        )))
    }
}

/// True when `element` lies in the span of the ideal at its degree.
pub fn ideal_contains(
    quiver: &Quiver,
    framing: &FramingDatum,
    d: &DimVector,
    element: &SymPoly,
) -> Result<bool> {
    if element.is_zero() {
        return Ok(true);
    }
    let k = element.homogeneous_degree()?;
    let span = hilb_ideal_span(quiver, framing, d, k)?;
    let base_rank = rank_of_span(&span, d, k)?;
    let mut extended = span;
    extended.push(element.clone());
    let new_rank = rank_of_span(&extended, d, k)?;
    Ok(new_rank == base_rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{brute_force_framed_stable_count, group_count};
    use crate::poly::MPoly;
    use crate::rational::{q_int, Q};
    use num_traits::One;

    fn dv(entries: &[u32]) -> DimVector {
        DimVector::new(entries.to_vec())
    }

    fn fr(entries: &[u32]) -> FramingDatum {
        FramingDatum(dv(entries))
    }

    #[test]
    fn chern_generator_examples() {
        let lp = Quiver::loops(1);
        let e = chern_generator(&lp, &fr(&[3]), &dv(&[2])).unwrap();
        // (x1 x2)^3
        let alphabet = Alphabet::new(vec![2]);
        let x1 = MPoly::var(alphabet.clone(), 0, 0);
        let x2 = MPoly::var(alphabet.clone(), 0, 1);
        let mut expect = MPoly::one(alphabet);
        for _ in 0..3 {
            expect = expect.mul(&x1).unwrap().mul(&x2).unwrap();
        }
        assert_eq!(e.body(), &SymPoly::from_raw(&expect).unwrap());
        // zero framing: the unit body
        let e0 = chern_generator(&lp, &fr(&[0]), &dv(&[2])).unwrap();
        assert!(e0.body().homogeneous_degree().unwrap() == 0);
        // two-vertex cycle at weight (1,1): x^r y^s
        let at = Quiver::a_tilde_1();
        let e = chern_generator(&at, &fr(&[2, 1]), &dv(&[1, 1])).unwrap();
        let alphabet = Alphabet::new(vec![1, 1]);
        let x = MPoly::var(alphabet.clone(), 0, 0);
        let y = MPoly::var(alphabet.clone(), 1, 0);
        let expect = x.mul(&x).unwrap().mul(&y).unwrap();
        assert_eq!(e.body(), &SymPoly::from_raw(&expect).unwrap());
        // q = 0 errors
        assert!(chern_generator(&lp, &fr(&[1]), &dv(&[0])).is_err());
    }

    #[test]
    fn ideal_dims_point_quiver() {
        let pt = Quiver::point();
        let ideal = hilb_ideal_dims(&pt, &fr(&[2]), &dv(&[1]), 3).unwrap();
        assert_eq!(ideal.get(0), 0);
        assert_eq!(ideal.get(1), 0);
        assert_eq!(ideal.get(2), 1);
        assert_eq!(ideal.get(3), 1);
        // weight zero has no splittings with q != 0
        let ideal = hilb_ideal_dims(&pt, &fr(&[2]), &dv(&[0]), 2).unwrap();
        assert_eq!(ideal.total(), 0);
    }

    #[test]
    fn ideal_dims_loop_quiver() {
        let lp = Quiver::loops(1);
        // x * Q[x]: dims 0, 1, 1, ... from degree 1
        let ideal = hilb_ideal_dims(&lp, &fr(&[1]), &dv(&[1]), 4).unwrap();
        assert_eq!(ideal.get(0), 0);
        for k in 1..=4 {
            assert_eq!(ideal.get(k), 1);
        }
    }

    #[test]
    fn module_dims_point_quiver() {
        let pt = Quiver::point();
        // weight 1 of the exterior algebra on 2 generators
        let dims = hilb_module_dims(&pt, &fr(&[2]), &dv(&[1]), 4).unwrap();
        assert_eq!(dims.total(), 2);
        assert_eq!(dims.get(0), 1);
        assert_eq!(dims.get(1), 1);
        // weight 3 vanishes
        let dims = hilb_module_dims(&pt, &fr(&[2]), &dv(&[3]), 6).unwrap();
        assert_eq!(dims.total(), 0);
    }

    #[test]
    fn module_dims_loop_quiver() {
        let lp = Quiver::loops(1);
        // weight 2 of Q[psi_0, psi_1]: psi_0^2, psi_0 psi_1, psi_1^2
        let dims = hilb_module_dims(&lp, &fr(&[2]), &dv(&[2]), 4).unwrap();
        assert_eq!(dims.get(0), 1);
        assert_eq!(dims.get(1), 1);
        assert_eq!(dims.get(2), 1);
        assert_eq!(dims.total(), 3);
    }

    #[test]
    fn exterior_totals() {
        let pt = Quiver::point();
        for n in 0..=3u32 {
            for d in 0..=3u32 {
                let cutoff = (n as usize) * (d as usize);
                let dims = hilb_module_dims(&pt, &fr(&[n]), &dv(&[d]), cutoff).unwrap();
                assert_eq!(dims.total(), binomial(n as usize, d as usize), "n={} d={}", n, d);
            }
        }
    }

    fn binomial(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let mut acc = 1usize;
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        acc
    }

    #[test]
    fn free_supercomm_examples() {
        let pt = Quiver::point();
        // generators psi_0, psi_1 at weight 2: the single monomial
        // psi_0 psi_1 in bidegree (2, 4)
        let gens = vec![
            Bidegree { d: dv(&[1]), k: 1 },
            Bidegree { d: dv(&[1]), k: 3 },
        ];
        let dims = free_supercomm_dims(&pt, &gens, &dv(&[2]), 10).unwrap();
        assert_eq!(dims, BTreeMap::from([(4, 1)]));
        // empty generator list at weight zero
        let dims = free_supercomm_dims(&pt, &[], &dv(&[0]), 4).unwrap();
        assert_eq!(dims, BTreeMap::from([(0, 1)]));
        // two-vertex cycle with framing (1,1): weight (1,1) at k = 0 is
        // spanned by the diagonal generator alone
        let at = Quiver::a_tilde_1();
        let gens = atilde_generators(1, 2, 1);
        let dims = free_supercomm_dims(&at, &gens, &dv(&[1, 1]), 0).unwrap();
        assert_eq!(dims.get(&0).copied().unwrap_or(0), 1);
    }

    #[test]
    fn loop_module_matches_polynomial_algebra() {
        // free commutative algebra on generators of degrees 0..n-1
        let lp = Quiver::loops(1);
        for n in 1..=3usize {
            let gens: Vec<Bidegree> = (0..n)
                .map(|i| Bidegree {
                    d: dv(&[1]),
                    k: 2 * i as i64,
                })
                .collect();
            for d in 1..=3u32 {
                let module = hilb_module_dims(&lp, &fr(&[n as u32]), &dv(&[d]), 6).unwrap();
                let free = free_supercomm_dims(&lp, &gens, &dv(&[d]), 12).unwrap();
                for k in 0..=6usize {
                    let free_dim = free.get(&(2 * k as i64)).copied().unwrap_or(0);
                    assert_eq!(module.get(k), free_dim, "n={} d={} k={}", n, d, k);
                }
            }
        }
    }

    #[test]
    fn atilde_framed_examples() {
        // framing (1,1) at weight (1,1): Q[psi_0, psi_1] in weight 1
        let dims = atilde_framed_dims(1, 1, &dv(&[1, 1]), 3).unwrap();
        assert_eq!(dims.get(0), 1);
        assert_eq!(dims.get(1), 1);
        assert_eq!(dims.total(), 2);
        // framing (1,0) at weight (0,1): no generators survive
        let dims = atilde_framed_dims(1, 0, &dv(&[0, 1]), 3).unwrap();
        assert_eq!(dims.total(), 0);
        // framing (2,0) at weight (1,0): two exterior generators
        let dims = atilde_framed_dims(2, 0, &dv(&[1, 0]), 3).unwrap();
        assert_eq!(dims.total(), 2);
        // mixed unbalanced slope errors
        assert!(matches!(
            atilde_framed_dims(1, 1, &dv(&[2, 1]), 3),
            Err(CohaError::WrongSlope(_))
        ));
    }

    #[test]
    fn atilde_ideal_matches_presentation() {
        // the Chern ideal of the (1,1) framing agrees degreewise with
        // the complement of the free algebra on the surviving
        // generators
        let at = Quiver::a_tilde_1();
        let framing = fr(&[1, 1]);
        let (r, s) = (1usize, 1usize);
        let gens = atilde_generators(r, r + s, s);
        for d in [dv(&[1, 0]), dv(&[0, 1]), dv(&[1, 1]), dv(&[2, 1])] {
            let chi = at.euler_form(&d, &d).unwrap();
            let ideal = hilb_ideal_dims(&at, &framing, &d, 4).unwrap();
            let free = free_supercomm_dims(&at, &gens, &d, 2 * 4 + chi).unwrap();
            for k in 0..=4usize {
                let full = graded_basis(&d, k).len();
                let quotient = free.get(&(2 * k as i64 + chi)).copied().unwrap_or(0);
                assert_eq!(
                    ideal.get(k),
                    full - quotient,
                    "d={:?} k={}",
                    d.entries(),
                    k
                );
            }
        }
    }

    #[test]
    fn witness_chain() {
        // e^{(1,1),(r,s)} cup phi_i is congruent to phi_{i+r+s} modulo
        // the ideal
        let at = Quiver::a_tilde_1();
        let (r, s) = (1u32, 1u32);
        let framing = fr(&[r, s]);
        let d = dv(&[1, 1]);
        for i in 0..=1usize {
            let e = chern_generator(&at, &framing, &d).unwrap();
            let phi_i = diagonal_power(i);
            let lhs = e.body().mul(&phi_i).unwrap();
            let rhs = diagonal_power(i + (r + s) as usize);
            let diff = lhs.sub(&rhs).unwrap();
            assert!(ideal_contains(&at, &framing, &d, &diff).unwrap(), "i={}", i);
        }
    }

    fn diagonal_power(k: usize) -> SymPoly {
        let alphabet = Alphabet::new(vec![1, 1]);
        let x = MPoly::var(alphabet.clone(), 0, 0);
        let mut raw = MPoly::one(alphabet);
        for _ in 0..k {
            raw = raw.mul(&x).unwrap();
        }
        SymPoly::from_raw(&raw).unwrap()
    }

    #[test]
    fn point_count_reciprocity() {
        // #framed-stable / #G = sum_k dim_k p^{dim Hilb - k}
        let lp = Quiver::loops(1);
        for p in [2u8, 3u8] {
            reciprocity_at(&lp, p);
        }
    }

    fn reciprocity_at(lp: &Quiver, p: u8) {
        for n in 1..=2u32 {
            for d in 1..=2u32 {
                let count =
                    brute_force_framed_stable_count(lp, &dv(&[n]), &dv(&[d]), p).unwrap();
                let g = group_count(&dv(&[d]))
                    .eval_at_q(&q_int(p as i64))
                    .unwrap();
                let lhs = q_int(count as i64) / g;
                let hilb_dim = (n * d) as i64;
                let dims = hilb_module_dims(lp, &fr(&[n]), &dv(&[d]), (n * d) as usize).unwrap();
                let mut rhs = Q::from_integer(0.into());
                for (k, dim) in dims.iter() {
                    if dim == 0 {
                        continue;
                    }
                    let power = hilb_dim - k as i64;
                    assert!(power >= 0);
                    let mut term = Q::one();
                    for _ in 0..power {
                        term *= q_int(p as i64);
                    }
                    rhs += term * q_int(dim as i64);
                }
                assert_eq!(lhs, rhs, "n={} d={}", n, d);
            }
        }
    }
}
