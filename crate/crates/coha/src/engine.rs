//! CoHa elements and the shuffle product, bigrading and sign twist,
//! kernel-span dimensions for the Harder-Narasimhan quotient, and the
//! explicit identifications available for the symmetric two-vertex
//! cycle quiver.

use std::collections::BTreeMap;

use crate::error::CohaError;
use crate::poly::{graded_basis, partition_count, rank_of_span, Alphabet, MPoly, SymPoly};
use crate::quiver::{hn_types, DimVector, Quiver, Stability};
use crate::rational::Q;
use crate::Result;

/// An element of the CoHa: a per-vertex-symmetric polynomial sitting in
/// the weight-d component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohaElement {
    quiver: Quiver,
    d: DimVector,
    body: SymPoly,
}

impl CohaElement {
    pub fn new(quiver: Quiver, d: DimVector, body: SymPoly) -> Result<Self> {
        if d.len() != quiver.vertex_count() {
            return Err(CohaError::KeyMismatch(format!(
                "dimension vector has {} entries for a quiver with {} vertices",
                d.len(),
                quiver.vertex_count()
            )));
        }
        if body.alphabet().sizes() != d.entries() {
            return Err(CohaError::AlphabetMismatch(format!(
                "body alphabet {:?} does not match dimension vector {:?}",
                body.alphabet().sizes(),
                d.entries()
            )));
        }
        Ok(CohaElement { quiver, d, body })
    }

    pub fn from_raw(quiver: Quiver, d: DimVector, raw: &MPoly) -> Result<Self> {
        let body = SymPoly::from_raw(raw)?;
        CohaElement::new(quiver, d, body)
    }

    /// The unit: 1 in weight zero.
    pub fn unit(quiver: Quiver) -> Self {
        let d = DimVector::zero(quiver.vertex_count());
        let body = SymPoly::one(Alphabet::from_dim(&d));
        CohaElement { quiver, d, body }
    }

    /// The element with body x^k at the unit weight of `vertex`.
    pub fn power_generator(quiver: Quiver, vertex: usize, k: usize) -> Self {
        let mut entries = vec![0u32; quiver.vertex_count()];
        entries[vertex] = 1;
        let d = DimVector::new(entries);
        let alphabet = Alphabet::from_dim(&d);
        let x = MPoly::var(alphabet.clone(), vertex, 0);
        let mut raw = MPoly::one(alphabet);
        for _ in 0..k {
            raw = raw.mul(&x).expect("same alphabet");
        }
        let body = SymPoly::from_raw(&raw).expect("single variable is symmetric");
        CohaElement { quiver, d, body }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dim(&self) -> &DimVector {
        &self.d
    }

    pub fn body(&self) -> &SymPoly {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn scale(&self, c: &Q) -> Self {
        CohaElement {
            quiver: self.quiver.clone(),
            d: self.d.clone(),
            body: self.body.scale(c),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.quiver != other.quiver || self.d != other.d {
            return Err(CohaError::AlphabetMismatch(
                "cannot add elements of different weights".into(),
            ));
        }
        Ok(CohaElement {
            quiver: self.quiver.clone(),
            d: self.d.clone(),
            body: self.body.add(&other.body)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-<Q as num_traits::One>::one()))
    }
}

/// Weight and cohomological degree of a homogeneous element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bidegree {
    pub d: DimVector,
    pub k: i64,
}

/// bidegree(f) = (d, 2n + chi(d,d)) for a body homogeneous of
/// polynomial degree n.
pub fn bidegree(f: &CohaElement) -> Result<Bidegree> {
    let n = f.body.homogeneous_degree()? as i64;
    let chi = f.quiver.euler_form(&f.d, &f.d)?;
    Ok(Bidegree {
        d: f.d.clone(),
        k: 2 * n + chi,
    })
}

// ---------------------------------------------------------------------
// Shuffle product
// ---------------------------------------------------------------------

/// All size-k subsets of 0..n in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
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

fn complement(subset: &[usize], n: usize) -> Vec<usize> {
    let mut mask = vec![false; n];
    for &i in subset {
        mask[i] = true;
    }
    (0..n).filter(|&i| !mask[i]).collect()
}

/// Parity contribution of one shuffle: pairs (a, b) with a selected,
/// b not, a > b.
fn shuffle_inversions(subset: &[usize], comp: &[usize]) -> usize {
    let mut inv = 0;
    for &a in subset {
        for &b in comp {
            if a > b {
                inv += 1;
            }
        }
    }
    inv
}

/// The shuffle product. All shuffle terms are assembled over the full
/// per-vertex Vandermonde as a common denominator, summed as
/// polynomials, and divided out exactly at the end; a nonzero remainder
/// would indicate a bug and surfaces as `DivisionFailure`.
pub fn coha_mul(f: &CohaElement, g: &CohaElement) -> Result<CohaElement> {
    if f.quiver != g.quiver {
        return Err(CohaError::AlphabetMismatch(
            "elements live over different quivers".into(),
        ));
    }
    let quiver = &f.quiver;
    let nv = quiver.vertex_count();
    let d = &f.d;
    let e = &g.d;
    let de = d.add(e);
    let target = Alphabet::from_dim(&de);

    let f_raw = f.body.to_raw();
    let g_raw = g.body.to_raw();

    // per-vertex slot selections for the f-variables
    let per_vertex: Vec<Vec<Vec<usize>>> = (0..nv)
        .map(|i| combinations((d.entry(i) + e.entry(i)) as usize, d.entry(i) as usize))
        .collect();

    let mut numerator = MPoly::zero(target.clone());
    let mut selection = vec![0usize; nv];
    'selections: loop {
        let subsets: Vec<&Vec<usize>> = (0..nv).map(|i| &per_vertex[i][selection[i]]).collect();
        let comps: Vec<Vec<usize>> = (0..nv)
            .map(|i| complement(subsets[i], (d.entry(i) + e.entry(i)) as usize))
            .collect();

        // inject f and g into their slots
        let mut f_map = Vec::with_capacity(f_raw.alphabet().total_vars());
        for (i, subset) in subsets.iter().enumerate() {
            for &slot in subset.iter() {
                f_map.push(target.var(i, slot));
            }
        }
        let mut g_map = Vec::with_capacity(g_raw.alphabet().total_vars());
        for (i, comp) in comps.iter().enumerate() {
            for &slot in comp.iter() {
                g_map.push(target.var(i, slot));
            }
        }
        let mut term = f_raw
            .remap(target.clone(), &f_map)
            .mul(&g_raw.remap(target.clone(), &g_map))?;

        // permuted numerator factor: for each arrow i -> j, one factor
        // (x_{j,b} - x_{i,a}) per f-slot a at i and g-slot b at j
        for &(src, tgt) in quiver.arrows() {
            for &a in subsets[src].iter() {
                for &b in comps[tgt].iter() {
                    term = term.mul(&MPoly::linear_diff(
                        target.clone(),
                        target.var(tgt, b),
                        target.var(src, a),
                    ))?;
                }
            }
        }

        // complementary Vandermonde blocks restore the common denominator
        let mut sign_flips = 0usize;
        for i in 0..nv {
            sign_flips += shuffle_inversions(subsets[i], &comps[i]);
            for group in [subsets[i].as_slice(), comps[i].as_slice()] {
                for (p_idx, &p) in group.iter().enumerate() {
                    for &q_slot in group.iter().skip(p_idx + 1) {
                        term = term.mul(&MPoly::linear_diff(
                            target.clone(),
                            target.var(i, q_slot),
                            target.var(i, p),
                        ))?;
                    }
                }
            }
        }
        if sign_flips % 2 == 1 {
            term = term.neg();
        }
        numerator = numerator.add(&term)?;

        // advance the mixed-radix selection counter
        let mut pos = nv;
        loop {
            if pos == 0 {
                break 'selections;
            }
            pos -= 1;
            selection[pos] += 1;
            if selection[pos] < per_vertex[pos].len() {
                continue 'selections;
            }
            selection[pos] = 0;
        }
    }

    // one exact division by the full Vandermonde
    let mut quotient = numerator;
    for i in 0..nv {
        let sz = (d.entry(i) + e.entry(i)) as usize;
        for p in 0..sz {
            for q_slot in (p + 1)..sz {
                quotient = quotient.div_linear(target.var(i, q_slot), target.var(i, p))?;
            }
        }
    }
    let body = SymPoly::from_raw(&quotient)?;
    CohaElement::new(quiver.clone(), de, body)
}

// ---------------------------------------------------------------------
// Sign twist
// ---------------------------------------------------------------------

/// Mod-2 bilinear form making the twisted product super-commutative on
/// a symmetric quiver. Stored as the strictly upper triangle of an
/// off-diagonal splitting of chi(d,e) + eps(d)eps(e).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignTwist {
    upper: Vec<Vec<bool>>, // upper[i][j] meaningful for i < j
}

impl SignTwist {
    /// psi(d, e) mod 2.
    pub fn psi(&self, d: &DimVector, e: &DimVector) -> bool {
        let mut acc = 0u64;
        for i in 0..d.len() {
            for j in (i + 1)..e.len() {
                if self.upper[i][j] {
                    acc += d.entry(i) as u64 * e.entry(j) as u64;
                }
            }
        }
        acc % 2 == 1
    }
}

fn unit_dim(n: usize, i: usize) -> DimVector {
    let mut entries = vec![0u32; n];
    entries[i] = 1;
    DimVector::new(entries)
}

/// Parity eps(d) = chi(d,d) mod 2.
pub fn parity(q: &Quiver, d: &DimVector) -> Result<bool> {
    Ok(q.euler_form(d, d)?.rem_euclid(2) == 1)
}

/// Builds one valid sign twist: with c_i = chi(e_i,e_i) mod 2, the form
/// B(d,e) = chi(d,e) + (sum c_i d_i)(sum c_j e_j) is symmetric with zero
/// diagonal mod 2, and its strictly upper part satisfies
/// psi(d,e) + psi(e,d) = chi(d,e) + eps(d)eps(e).
pub fn build_sign_twist(q: &Quiver) -> Result<SignTwist> {
    if !q.is_symmetric() {
        return Err(CohaError::NonSymmetric(
            "the sign twist exists only for symmetric quivers".into(),
        ));
    }
    let n = q.vertex_count();
    let units: Vec<DimVector> = (0..n).map(|i| unit_dim(n, i)).collect();
    let c: Vec<bool> = (0..n)
        .map(|i| {
            q.euler_form(&units[i], &units[i])
                .map(|x| x.rem_euclid(2) == 1)
        })
        .collect::<Result<_>>()?;
    let mut upper = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let chi_ij = q.euler_form(&units[i], &units[j])?.rem_euclid(2) == 1;
            upper[i][j] = chi_ij ^ (c[i] && c[j]);
        }
    }
    let twist = SignTwist { upper };
    if cfg!(debug_assertions) {
        // defining congruence on all 0/1 generators
        for d_bits in 0..(1u32 << n) {
            for e_bits in 0..(1u32 << n) {
                let d = DimVector::new((0..n).map(|i| (d_bits >> i) & 1).collect());
                let e = DimVector::new((0..n).map(|i| (e_bits >> i) & 1).collect());
                let lhs = twist.psi(&d, &e) ^ twist.psi(&e, &d);
                let rhs = (q.euler_form(&d, &e)?.rem_euclid(2) == 1)
                    ^ (parity(q, &d)? && parity(q, &e)?);
                debug_assert_eq!(lhs, rhs, "sign twist congruence failed");
            }
        }
    }
    Ok(twist)
}

/// The twisted product (-1)^{psi(d,e)} f * g. Both factors must be
/// homogeneous.
pub fn twisted_mul(f: &CohaElement, g: &CohaElement, psi: &SignTwist) -> Result<CohaElement> {
    f.body.homogeneous_degree()?;
    g.body.homogeneous_degree()?;
    let product = coha_mul(f, g)?;
    if psi.psi(&f.d, &g.d) {
        Ok(product.scale(&-Q::from_integer(1.into())))
    } else {
        Ok(product)
    }
}

// ---------------------------------------------------------------------
// Harder-Narasimhan kernel spans
// ---------------------------------------------------------------------

/// For each polynomial degree k <= polydeg_max, the dimension of the
/// span of all products H_{d^1} * ... * H_{d^r} over HN types with at
/// least two parts, inside the degree-k component of H_d.
pub fn hn_kernel_dims(
    q: &Quiver,
    theta: &Stability,
    d: &DimVector,
    polydeg_max: usize,
) -> Result<BTreeMap<usize, usize>> {
    if d.is_zero() {
        return Err(CohaError::ZeroDimVector);
    }
    let types: Vec<_> = hn_types(theta, d)?
        .into_iter()
        .filter(|t| t.parts.len() >= 2)
        .collect();
    let mut out = BTreeMap::new();
    for k in 0..=polydeg_max {
        let mut span: Vec<SymPoly> = Vec::new();
        for t in &types {
            let r = t.parts.len();
            let mut pair_chi: i64 = 0;
            for a in 0..r {
                for b in (a + 1)..r {
                    pair_chi += q.euler_form(&t.parts[a], &t.parts[b])?;
                }
            }
            // deg(b_1 * ... * b_r) = sum deg b_j - sum_{a<b} chi(d^a, d^b)
            let forced = k as i64 + pair_chi;
            if forced < 0 {
                continue;
            }
            for degs in compositions(forced as usize, r) {
                let factor_bases: Vec<Vec<SymPoly>> = t
                    .parts
                    .iter()
                    .zip(&degs)
                    .map(|(part, &deg)| graded_basis(part, deg))
                    .collect();
                if factor_bases.iter().any(|b| b.is_empty()) {
                    continue;
                }
                let mut products: Vec<CohaElement> = factor_bases[0]
                    .iter()
                    .map(|b| CohaElement::new(q.clone(), t.parts[0].clone(), b.clone()))
                    .collect::<Result<_>>()?;
                for (part, basis) in t.parts.iter().zip(&factor_bases).skip(1) {
                    let mut next = Vec::with_capacity(products.len() * basis.len());
                    for acc in &products {
                        for b in basis {
                            let factor = CohaElement::new(q.clone(), part.clone(), b.clone())?;
                            next.push(coha_mul(acc, &factor)?);
                        }
                    }
                    products = next;
                }
                for p in products {
                    if !p.is_zero() {
                        debug_assert_eq!(p.body.homogeneous_degree()?, k);
                        span.push(p.body);
                    }
                }
            }
        }
        out.insert(k, rank_of_span(&span, d, k)?);
    }
    Ok(out)
}

/// Weak compositions of n into r nonnegative parts.
fn compositions(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r == 0 {
        if n == 0 {
            out.push(vec![]);
        }
        return out;
    }
    let mut cur = vec![0usize; r];
    fn rec(pos: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(pos + 1, left - v, cur, out);
        }
    }
    rec(0, n, &mut cur, &mut out);
    out
}

// ---------------------------------------------------------------------
// Explicit identifications for the symmetric two-vertex cycle
// ---------------------------------------------------------------------

/// Graded dimensions of the semi-stable component at weight d for the
/// two-vertex cycle with stability (1, -1): symmetric polynomials in m
/// variables on the pure and balanced slopes, zero elsewhere. Weight
/// zero counts as the unit line.
pub fn atilde_sst_dims(d: &DimVector, polydeg_max: usize) -> BTreeMap<usize, usize> {
    assert_eq!(d.len(), 2, "weight must belong to the two-vertex quiver");
    let (m, n) = (d.entry(0), d.entry(1));
    let vars = if n == 0 {
        Some(m)
    } else if m == 0 {
        Some(n)
    } else if m == n {
        Some(m)
    } else {
        None
    };
    let mut out = BTreeMap::new();
    for k in 0..=polydeg_max {
        let dim = match vars {
            Some(v) => partition_count(k, v as usize),
            None => 0,
        };
        out.insert(k, dim);
    }
    out
}

/// Lifts an index word through the slope-zero section: the product of
/// the weight-(1,1) elements with bodies x^{k_j}.
pub fn psi0_embed(word: &[usize]) -> Result<CohaElement> {
    let quiver = Quiver::a_tilde_1();
    let mut acc = CohaElement::unit(quiver.clone());
    for &k in word {
        let factor = CohaElement::new(
            quiver.clone(),
            DimVector::new(vec![1, 1]),
            diagonal_power_body(k),
        )?;
        acc = coha_mul(&acc, &factor)?;
    }
    Ok(acc)
}

fn diagonal_power_body(k: usize) -> SymPoly {
    let alphabet = Alphabet::new(vec![1, 1]);
    let x = MPoly::var(alphabet.clone(), 0, 0);
    let mut raw = MPoly::one(alphabet);
    for _ in 0..k {
        raw = raw.mul(&x).expect("same alphabet");
    }
    SymPoly::from_raw(&raw).expect("powers of one variable are symmetric")
}

/// Sends x_i and y_i to t_i on a balanced weight (m, m); the image is a
/// symmetric polynomial in m variables.
pub fn restrict_diagonal(f: &CohaElement) -> Result<SymPoly> {
    let (m, n) = (f.d.entry(0), f.d.entry(1));
    if m != n {
        return Err(CohaError::WrongSlope(format!(
            "diagonal restriction needs a balanced weight, got ({}, {})",
            m, n
        )));
    }
    let raw = f.body.to_raw();
    let source = f.body.alphabet();
    let target = Alphabet::new(vec![m]);
    let mut map = Vec::with_capacity(source.total_vars());
    for i in 0..m as usize {
        map.push(i); // x_i -> t_i
    }
    for i in 0..m as usize {
        map.push(i); // y_i -> t_i
    }
    SymPoly::from_raw(&raw.remap(target, &map))
}

/// Bigraded dimensions of H_d straight from graded-basis counts:
/// map k -> dim at cohomological degree k = 2*polydeg + chi(d,d).
pub fn coha_bigraded_dims(q: &Quiver, d: &DimVector, k_max: i64) -> Result<BTreeMap<i64, usize>> {
    let chi = q.euler_form(d, d)?;
    let mut out = BTreeMap::new();
    let mut j = 0usize;
    loop {
        let k = 2 * j as i64 + chi;
        if k > k_max {
            break;
        }
        let dim = graded_basis(d, j).len();
        if dim > 0 {
            out.insert(k, dim);
        }
        j += 1;
    }
    Ok(out)
}

/// Bigraded dimensions at weight (m, n) of the weight-decorated tensor
/// product point x loop x point, the factors contributing through
/// (a, c, b) -> (a + c, c + b).
pub fn tensor_factor_dims(d: &DimVector, k_max: i64) -> BTreeMap<i64, usize> {
    assert_eq!(d.len(), 2, "weight must belong to the two-vertex quiver");
    let (m, n) = (d.entry(0), d.entry(1));
    let mut out: BTreeMap<i64, usize> = BTreeMap::new();
    for c in 0..=m.min(n) {
        let a = (m - c) as i64;
        let b = (n - c) as i64;
        let base = a * a + b * b;
        // point factors carry k = 2j + a^2, the loop factor k = 2j
        let mut j_total = 0i64;
        loop {
            let k = base + 2 * j_total;
            if k > k_max {
                break;
            }
            let mut dim = 0usize;
            for ja in 0..=j_total {
                for jc in 0..=(j_total - ja) {
                    let jb = j_total - ja - jc;
                    dim += partition_count(ja as usize, a as usize)
                        * partition_count(jc as usize, c as usize)
                        * partition_count(jb as usize, b as usize);
                }
            }
            if dim > 0 {
                *out.entry(k).or_insert(0) += dim;
            }
            j_total += 1;
        }
    }
    out
}
