//! Multivariate polynomials over per-vertex alphabets, their symmetric
//! (orbit-canonical) form, classical symmetric-function constructors,
//! graded bases, and exact rank computation.
//!
//! A quiver with dimension vector d carries one alphabet per vertex:
//! vertex i owns the variables x_{i,1}, ..., x_{i,d_i}. Raw polynomials
//! ([`MPoly`]) are sparse maps from flat exponent vectors to rational
//! coefficients. Symmetric polynomials ([`SymPoly`]) store one orbit
//! representative per term, with per-vertex exponent blocks sorted
//! descending.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::CohaError;
use crate::quiver::{DimVector, Quiver};
use crate::rational::{format_q, Q};
use crate::Result;

type Mono = Vec<u16>;

/// Alphabet layout: number of variables per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    sizes: Vec<u32>,
}

impl Alphabet {
    pub fn new(sizes: Vec<u32>) -> Self {
        Alphabet { sizes }
    }

    pub fn from_dim(d: &DimVector) -> Self {
        Alphabet {
            sizes: d.entries().to_vec(),
        }
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn vertex_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn total_vars(&self) -> usize {
        self.sizes.iter().map(|&x| x as usize).sum()
    }

    pub fn offset(&self, vertex: usize) -> usize {
        self.sizes[..vertex].iter().map(|&x| x as usize).sum()
    }

    /// Flat index of x_{vertex, slot} with slot 0-based.
    pub fn var(&self, vertex: usize, slot: usize) -> usize {
        debug_assert!(slot < self.sizes[vertex] as usize);
        self.offset(vertex) + slot
    }

    pub fn dim(&self) -> DimVector {
        DimVector::new(self.sizes.clone())
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    alphabet: Alphabet,
    terms: BTreeMap<Mono, Q>,
}

impl MPoly {
    pub fn zero(alphabet: Alphabet) -> Self {
        MPoly {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(alphabet: Alphabet, c: Q) -> Self {
        let mut p = MPoly::zero(alphabet);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.alphabet.total_vars()], c);
        }
        p
    }

    pub fn one(alphabet: Alphabet) -> Self {
        MPoly::constant(alphabet, Q::one())
    }

    /// The variable x_{vertex, slot} (slot 0-based).
    pub fn var(alphabet: Alphabet, vertex: usize, slot: usize) -> Self {
        let mut mono = vec![0u16; alphabet.total_vars()];
        mono[alphabet.var(vertex, slot)] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(mono, Q::one());
        MPoly { alphabet, terms }
    }

    /// x_a - x_b for flat variable indices a, b.
    pub fn linear_diff(alphabet: Alphabet, a: usize, b: usize) -> Self {
        let n = alphabet.total_vars();
        let mut terms = BTreeMap::new();
        let mut ma = vec![0u16; n];
        ma[a] = 1;
        let mut mb = vec![0u16; n];
        mb[b] = 1;
        terms.insert(ma, Q::one());
        terms.insert(mb, -Q::one());
        MPoly { alphabet, terms }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: &Mono) -> Q {
        self.terms.get(mono).cloned().unwrap_or_else(Q::zero)
    }

    fn insert_add(&mut self, mono: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    fn check_alphabet(&self, other: &Self) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(CohaError::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet.sizes, other.alphabet.sizes
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MPoly {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return MPoly::zero(self.alphabet.clone());
        }
        MPoly {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let mut out = MPoly::zero(self.alphabet.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mono: Mono = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.insert_add(mono, ca * cb);
            }
        }
        Ok(out)
    }

    /// Moves the polynomial into `target`, sending flat variable v to
    /// `map[v]`. The map need not be injective; exponents accumulate.
    pub fn remap(&self, target: Alphabet, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.alphabet.total_vars());
        let n = target.total_vars();
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut mono = vec![0u16; n];
            for (v, &e) in m.iter().enumerate() {
                mono[map[v]] += e;
            }
            out.insert_add(mono, c.clone());
        }
        out
    }

    pub fn max_total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    /// Total degree, if all terms share it; the zero polynomial counts
    /// as homogeneous of degree 0.
    pub fn homogeneous_degree(&self) -> Result<usize> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d: usize = m.iter().map(|&e| e as usize).sum();
            match deg {
                None => deg = Some(d),
                Some(existing) if existing != d => return Err(CohaError::InhomogeneousBody),
                _ => {}
            }
        }
        Ok(deg.unwrap_or(0))
    }

    /// Synthetic division by x_a - x_b (flat indices); the remainder
    /// must vanish.
    pub fn div_linear(&self, a: usize, b: usize) -> Result<Self> {
        // Split off x_a: coefficients c_k live in the same alphabet with
        // the x_a exponent cleared.
        let mut by_dega: BTreeMap<u16, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m[a];
            let mut rest = m.clone();
            rest[a] = 0;
            by_dega
                .entry(k)
                .or_insert_with(|| MPoly::zero(self.alphabet.clone()))
                .insert_add(rest, c.clone());
        }
        let top = match by_dega.keys().next_back() {
            None => return Ok(MPoly::zero(self.alphabet.clone())),
            Some(&k) => k,
        };
        let xb = {
            let mut mono = vec![0u16; self.alphabet.total_vars()];
            mono[b] = 1;
            let mut terms = BTreeMap::new();
            terms.insert(mono, Q::one());
            MPoly {
                alphabet: self.alphabet.clone(),
                terms,
            }
        };
        let zero = MPoly::zero(self.alphabet.clone());
        let mut quotient_parts: BTreeMap<u16, MPoly> = BTreeMap::new();
        let mut carry = zero.clone(); // q_k while scanning k from top down
        for k in (1..=top).rev() {
            let c_k = by_dega.get(&k).unwrap_or(&zero);
            let q_km1 = c_k.add(&xb.mul(&carry)?)?;
            quotient_parts.insert(k - 1, q_km1.clone());
            carry = q_km1;
        }
        let c_0 = by_dega.get(&0).unwrap_or(&zero);
        let remainder = c_0.add(&xb.mul(&carry)?)?;
        if !remainder.is_zero() {
            return Err(CohaError::DivisionFailure(format!(
                "linear divisor x{} - x{}",
                a, b
            )));
        }
        let mut out = MPoly::zero(self.alphabet.clone());
        for (k, part) in quotient_parts {
            for (m, c) in part.terms {
                let mut mono = m;
                mono[a] += k;
                out.insert_add(mono, c);
            }
        }
        Ok(out)
    }

    fn lead(&self) -> Option<(&Mono, &Q)> {
        self.terms.iter().next_back()
    }

    /// General exact division; errors with the remainder description if
    /// `self` is not a multiple of `div`.
    pub fn exact_div(&self, div: &Self) -> Result<Self> {
        self.check_alphabet(div)?;
        if div.is_zero() {
            return Err(CohaError::DivisionFailure("division by zero".into()));
        }
        let (dm, dc) = div.lead().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quo = MPoly::zero(self.alphabet.clone());
        while let Some((rm, rc)) = rem.lead() {
            let mut tm = Vec::with_capacity(rm.len());
            for (x, y) in rm.iter().zip(&dm) {
                match x.checked_sub(*y) {
                    Some(e) => tm.push(e),
                    None => {
                        return Err(CohaError::DivisionFailure(format!(
                            "leading monomial not divisible; {} terms remain",
                            rem.num_terms()
                        )))
                    }
                }
            }
            let tc = rc.clone() / dc.clone();
            let mut tpoly = MPoly::zero(self.alphabet.clone());
            tpoly.terms.insert(tm, tc);
            rem = rem.sub(&tpoly.mul(div)?)?;
            quo = quo.add(&tpoly)?;
        }
        Ok(quo)
    }
}

// ---------------------------------------------------------------------
// Symmetric polynomials
// ---------------------------------------------------------------------

/// Per-vertex-symmetric polynomial in orbit-canonical storage: each term
/// key has its vertex blocks sorted descending and carries the
/// coefficient of that representative monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPoly {
    alphabet: Alphabet,
    terms: BTreeMap<Mono, Q>,
}

fn canonical_rep(alphabet: &Alphabet, mono: &Mono) -> Mono {
    let mut out = mono.clone();
    let mut start = 0usize;
    for &sz in alphabet.sizes() {
        let end = start + sz as usize;
        out[start..end].sort_unstable_by(|a, b| b.cmp(a));
        start = end;
    }
    out
}

/// Distinct permutations of one block (multiset permutations).
fn block_arrangements(block: &[u16]) -> Vec<Vec<u16>> {
    let mut counts: BTreeMap<u16, usize> = BTreeMap::new();
    for &e in block {
        *counts.entry(e).or_insert(0) += 1;
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(block.len());
    fn rec(
        counts: &mut BTreeMap<u16, usize>,
        cur: &mut Vec<u16>,
        len: usize,
        out: &mut Vec<Vec<u16>>,
    ) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let keys: Vec<u16> = counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&k, _)| k)
            .collect();
        for k in keys {
            *counts.get_mut(&k).unwrap() -= 1;
            cur.push(k);
            rec(counts, cur, len, out);
            cur.pop();
            *counts.get_mut(&k).unwrap() += 1;
        }
    }
    rec(&mut counts, &mut cur, block.len(), &mut out);
    out
}

fn orbit_size(alphabet: &Alphabet, rep: &Mono) -> usize {
    let mut size = 1usize;
    let mut start = 0usize;
    for &sz in alphabet.sizes() {
        let end = start + sz as usize;
        let block = &rep[start..end];
        let mut counts: BTreeMap<u16, usize> = BTreeMap::new();
        for &e in block {
            *counts.entry(e).or_insert(0) += 1;
        }
        // d! / prod(mult!)
        let mut factorial = 1usize;
        for i in 1..=block.len() {
            factorial *= i;
        }
        for (_, mult) in counts {
            let mut f = 1usize;
            for i in 1..=mult {
                f *= i;
            }
            factorial /= f;
        }
        size *= factorial.max(1);
        start = end;
    }
    size
}

impl SymPoly {
    pub fn zero(alphabet: Alphabet) -> Self {
        SymPoly {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: Alphabet) -> Self {
        SymPoly::constant(alphabet, Q::one())
    }

    pub fn constant(alphabet: Alphabet, c: Q) -> Self {
        let mut p = SymPoly::zero(alphabet);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.alphabet.total_vars()], c);
        }
        p
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn dim(&self) -> DimVector {
        self.alphabet.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> std::collections::btree_map::Iter<'_, Mono, Q> {
        self.terms.iter()
    }

    pub fn coeff_of_rep(&self, rep: &Mono) -> Q {
        self.terms.get(rep).cloned().unwrap_or_else(Q::zero)
    }

    /// Accepts a raw polynomial that is already invariant under every
    /// per-vertex permutation; errors otherwise.
    pub fn from_raw(p: &MPoly) -> Result<Self> {
        let mut groups: BTreeMap<Mono, Vec<(&Mono, &Q)>> = BTreeMap::new();
        for (m, c) in p.terms() {
            groups
                .entry(canonical_rep(&p.alphabet, m))
                .or_default()
                .push((m, c));
        }
        let mut terms = BTreeMap::new();
        for (rep, members) in groups {
            let expected = orbit_size(&p.alphabet, &rep);
            if members.len() != expected {
                return Err(CohaError::NonSymmetric(format!(
                    "orbit of {:?} has {} of {} monomials",
                    rep,
                    members.len(),
                    expected
                )));
            }
            let c0 = members[0].1.clone();
            for (_, c) in &members {
                if **c != c0 {
                    return Err(CohaError::NonSymmetric(format!(
                        "orbit of {:?} carries unequal coefficients",
                        rep
                    )));
                }
            }
            terms.insert(rep, c0);
        }
        Ok(SymPoly {
            alphabet: p.alphabet.clone(),
            terms,
        })
    }

    /// Expands every orbit back to a raw polynomial.
    pub fn to_raw(&self) -> MPoly {
        let mut out = MPoly::zero(self.alphabet.clone());
        for (rep, c) in &self.terms {
            for mono in orbit_monomials(&self.alphabet, rep) {
                out.insert_add(mono, c.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.alphabet != other.alphabet {
            return Err(CohaError::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet.sizes, other.alphabet.sizes
            )));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            match out.terms.get_mut(m) {
                Some(existing) => {
                    *existing += c;
                    if existing.is_zero() {
                        out.terms.remove(m);
                    }
                }
                None => {
                    out.terms.insert(m.clone(), c.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SymPoly {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return SymPoly::zero(self.alphabet.clone());
        }
        SymPoly {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    /// Exact product; symmetry of the result is re-verified on the way
    /// back to canonical storage.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        SymPoly::from_raw(&self.to_raw().mul(&other.to_raw())?)
    }

    pub fn homogeneous_degree(&self) -> Result<usize> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d: usize = m.iter().map(|&e| e as usize).sum();
            match deg {
                None => deg = Some(d),
                Some(existing) if existing != d => return Err(CohaError::InhomogeneousBody),
                _ => {}
            }
        }
        Ok(deg.unwrap_or(0))
    }

    pub fn max_total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as usize).sum())
            .max()
            .unwrap_or(0)
    }
}

fn orbit_monomials(alphabet: &Alphabet, rep: &Mono) -> Vec<Mono> {
    let mut per_vertex: Vec<Vec<Vec<u16>>> = Vec::new();
    let mut start = 0usize;
    for &sz in alphabet.sizes() {
        let end = start + sz as usize;
        per_vertex.push(block_arrangements(&rep[start..end]));
        start = end;
    }
    let mut out: Vec<Mono> = vec![Vec::with_capacity(alphabet.total_vars())];
    for arrangements in per_vertex {
        let mut next = Vec::with_capacity(out.len() * arrangements.len());
        for prefix in &out {
            for arr in &arrangements {
                let mut m = prefix.clone();
                m.extend_from_slice(arr);
                next.push(m);
            }
        }
        out = next;
    }
    out
}

/// Averages a raw polynomial over all per-vertex permutations. This is
/// an idempotent projection: symmetric input comes back unchanged.
pub fn symmetrize(p: &MPoly) -> SymPoly {
    let mut sums: BTreeMap<Mono, Q> = BTreeMap::new();
    for (m, c) in p.terms() {
        let rep = canonical_rep(p.alphabet(), m);
        *sums.entry(rep).or_insert_with(Q::zero) += c;
    }
    let mut terms = BTreeMap::new();
    for (rep, total) in sums {
        let size = orbit_size(p.alphabet(), &rep);
        let avg = total / Q::from_integer(size.into());
        if !avg.is_zero() {
            terms.insert(rep, avg);
        }
    }
    SymPoly {
        alphabet: p.alphabet().clone(),
        terms,
    }
}

/// Exact division wrapper at the symmetric level: divides the raw
/// expansions and errors on a nonzero remainder.
pub fn exact_divide(f: &MPoly, g: &MPoly) -> Result<MPoly> {
    f.exact_div(g)
}

// ---------------------------------------------------------------------
// Classical constructors
// ---------------------------------------------------------------------

/// Partitions of n into at most `max_parts` parts, each at most
/// `max_part`, in descending lexicographic order.
pub fn partitions(n: usize, max_parts: usize, max_part: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    fn rec(n: usize, max_parts: usize, cap: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        if max_parts == 0 {
            return;
        }
        let hi = n.min(cap);
        for part in (1..=hi).rev() {
            cur.push(part as u32);
            rec(n - part, max_parts - 1, part, cur, out);
            cur.pop();
        }
    }
    rec(n, max_parts, max_part, &mut cur, &mut out);
    out
}

/// Number of partitions of n into at most `max_parts` parts.
pub fn partition_count(n: usize, max_parts: usize) -> usize {
    partitions(n, max_parts, n.max(1)).len()
}

/// Monomial symmetric polynomial m_lambda placed at one vertex of a
/// multi-vertex alphabet (1 on the other alphabets).
pub fn monomial_sym_at(alphabet: &Alphabet, vertex: usize, lambda: &[u32]) -> Result<SymPoly> {
    if lambda.len() > alphabet.sizes()[vertex] as usize {
        return Err(CohaError::PartitionTooLong);
    }
    let mut rep = vec![0u16; alphabet.total_vars()];
    let off = alphabet.offset(vertex);
    for (i, &part) in lambda.iter().enumerate() {
        rep[off + i] = u16::try_from(part)
            .map_err(|_| CohaError::OutOfRange("partition part too large".into()))?;
    }
    let mut terms = BTreeMap::new();
    terms.insert(rep, Q::one());
    Ok(SymPoly {
        alphabet: alphabet.clone(),
        terms,
    })
}

/// Monomial symmetric polynomial in a single alphabet of d variables.
pub fn monomial_sym(lambda: &[u32], d: u32) -> Result<SymPoly> {
    monomial_sym_at(&Alphabet::new(vec![d]), 0, lambda)
}

/// k-th elementary symmetric polynomial in d variables.
pub fn elementary_sym(k: u32, d: u32) -> Result<SymPoly> {
    if k > d {
        return Err(CohaError::OutOfRange(format!("e_{} needs {} variables", k, d)));
    }
    monomial_sym(&vec![1u32; k as usize], d)
}

/// Schur polynomial via the bialternant ratio: the alternant of
/// lambda + delta divided exactly by the Vandermonde determinant.
pub fn schur(lambda: &[u32], d: u32) -> Result<SymPoly> {
    if lambda.len() > d as usize {
        return Err(CohaError::PartitionTooLong);
    }
    let alphabet = Alphabet::new(vec![d]);
    let n = d as usize;
    // exponents lambda_j + (d - 1 - j), padded with zeros
    let mut mu = vec![0u16; n];
    for j in 0..n {
        let lam = if j < lambda.len() { lambda[j] } else { 0 };
        mu[j] = u16::try_from(lam as usize + (n - 1 - j))
            .map_err(|_| CohaError::OutOfRange("partition part too large".into()))?;
    }
    let mut alternant = MPoly::zero(alphabet.clone());
    let mut perm: Vec<usize> = (0..n).collect();
    permute_signed(&mut perm, 0, &mut |sigma, sign| {
        let mut mono = vec![0u16; n];
        for (i, &j) in sigma.iter().enumerate() {
            mono[i] = mu[j];
        }
        let c = if sign { Q::one() } else { -Q::one() };
        alternant.insert_add(mono, c);
    });
    // divide by prod_{a<b}(x_b - x_a) and fix the sign relative to the
    // determinant convention prod_{a<b}(x_a - x_b)
    let mut quotient = alternant;
    for a in 0..n {
        for b in (a + 1)..n {
            quotient = quotient.div_linear(b, a)?;
        }
    }
    let pairs = n * n.saturating_sub(1) / 2;
    if pairs % 2 == 1 {
        quotient = quotient.neg();
    }
    SymPoly::from_raw(&quotient)
}

/// Visits every permutation with its sign (true = even).
fn permute_signed(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize], bool)) {
    fn rec(perm: &mut Vec<usize>, k: usize, parity: bool, visit: &mut impl FnMut(&[usize], bool)) {
        let n = perm.len();
        if k == n {
            visit(perm, parity);
            return;
        }
        for i in k..n {
            perm.swap(k, i);
            let p = if i == k { parity } else { !parity };
            rec(perm, k + 1, p, visit);
            perm.swap(k, i);
        }
    }
    rec(perm, k, true, visit);
}

/// Basis of the degree-`polydeg` component of the product of per-vertex
/// symmetric polynomial rings: all products of monomial symmetric
/// functions with total degree `polydeg`, in a fixed deterministic order.
pub fn graded_basis(d: &DimVector, polydeg: usize) -> Vec<SymPoly> {
    let alphabet = Alphabet::from_dim(d);
    let v = d.len();
    let mut out = Vec::new();
    let mut degs = vec![0usize; v];
    fn rec(
        alphabet: &Alphabet,
        d: &DimVector,
        vertex: usize,
        remaining: usize,
        degs: &mut Vec<usize>,
        out: &mut Vec<SymPoly>,
    ) {
        if vertex == d.len() {
            if remaining == 0 {
                let mut combos: Vec<SymPoly> = vec![SymPoly::one(alphabet.clone())];
                for (i, &deg_i) in degs.iter().enumerate() {
                    let parts = partitions(deg_i, d.entry(i) as usize, deg_i.max(1));
                    let mut next = Vec::new();
                    for base in &combos {
                        for lam in &parts {
                            let m = monomial_sym_at(alphabet, i, lam).expect("len checked");
                            next.push(base.mul(&m).expect("same alphabet"));
                        }
                    }
                    combos = next;
                    if combos.is_empty() {
                        return;
                    }
                }
                out.extend(combos);
            }
            return;
        }
        for deg_i in 0..=remaining {
            degs[vertex] = deg_i;
            rec(alphabet, d, vertex + 1, remaining - deg_i, degs, out);
        }
        degs[vertex] = 0;
    }
    rec(&alphabet, d, 0, polydeg, &mut degs, &mut out);
    out
}

/// Rank over the rationals of the span of homogeneous symmetric
/// polynomials of the stated degree, via exact Gaussian elimination in
/// monomial-orbit coordinates.
pub fn rank_of_span(vectors: &[SymPoly], d: &DimVector, polydeg: usize) -> Result<usize> {
    let alphabet = Alphabet::from_dim(d);
    let mut columns: BTreeMap<Mono, usize> = BTreeMap::new();
    let mut rows: Vec<BTreeMap<usize, Q>> = Vec::new();
    for v in vectors {
        if *v.alphabet() != alphabet {
            return Err(CohaError::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                v.alphabet().sizes,
                alphabet.sizes
            )));
        }
        if !v.is_zero() && v.homogeneous_degree()? != polydeg {
            return Err(CohaError::InhomogeneousBody);
        }
        let mut row = BTreeMap::new();
        for (rep, c) in v.terms() {
            let next = columns.len();
            let idx = *columns.entry(rep.clone()).or_insert(next);
            row.insert(idx, c.clone());
        }
        rows.push(row);
    }
    Ok(rank_of_rows(rows, columns.len()))
}

fn rank_of_rows(rows: Vec<BTreeMap<usize, Q>>, ncols: usize) -> usize {
    let mut dense: Vec<Vec<Q>> = rows
        .into_iter()
        .map(|r| {
            let mut row = vec![Q::zero(); ncols];
            for (i, c) in r {
                row[i] = c;
            }
            row
        })
        .collect();
    let mut rank = 0usize;
    for col in 0..ncols {
        let pivot = (rank..dense.len()).find(|&r| !dense[r][col].is_zero());
        let Some(pivot) = pivot else { continue };
        dense.swap(rank, pivot);
        let inv = Q::one() / dense[rank][col].clone();
        for entry in dense[rank][col..].iter_mut() {
            *entry *= inv.clone();
        }
        let pivot_row = dense[rank].clone();
        for (r, row) in dense.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col].clone();
                for (entry, pivot_entry) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *entry -= factor.clone() * pivot_entry.clone();
                }
            }
        }
        rank += 1;
        if rank == dense.len() {
            break;
        }
    }
    rank
}

// ---------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------

/// Prints the fully expanded polynomial as `c * x[v,i]^e * ...` terms
/// joined by ` + `, with rationals as `p/q` and 1-based variable slots.
pub fn format_poly(q: &Quiver, p: &MPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let names = q.vertex_names();
    let alphabet = p.alphabet();
    let mut parts = Vec::new();
    for (mono, c) in p.terms() {
        let mut factors = vec![format_q(c)];
        for (vertex, &sz) in alphabet.sizes().iter().enumerate() {
            let off = alphabet.offset(vertex);
            for slot in 0..sz as usize {
                let e = mono[off + slot];
                if e == 0 {
                    continue;
                }
                let var = format!("x[{},{}]", names[vertex], slot + 1);
                if e == 1 {
                    factors.push(var);
                } else {
                    factors.push(format!("{}^{}", var, e));
                }
            }
        }
        parts.push(factors.join(" * "));
    }
    parts.join(" + ")
}

/// Parses the text format back into a raw polynomial over the alphabet
/// of `d`.
pub fn parse_poly(q: &Quiver, d: &DimVector, text: &str) -> Result<MPoly> {
    let alphabet = Alphabet::from_dim(d);
    if d.len() != q.vertex_count() {
        return Err(CohaError::KeyMismatch(format!(
            "dimension vector has {} entries for a quiver with {} vertices",
            d.len(),
            q.vertex_count()
        )));
    }
    let mut out = MPoly::zero(alphabet.clone());
    let text = text.trim();
    if text.is_empty() || text == "0" {
        return Ok(out);
    }
    for term in text.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(CohaError::Parse("empty term".into()));
        }
        let mut coeff = Q::one();
        let mut mono = vec![0u16; alphabet.total_vars()];
        for factor in term.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(CohaError::Parse(format!("empty factor in {:?}", term)));
            }
            if factor.starts_with('x') {
                let (var_part, exp) = match factor.split_once('^') {
                    None => (factor, 1u16),
                    Some((v, e)) => (
                        v.trim(),
                        e.trim()
                            .parse::<u16>()
                            .map_err(|_| CohaError::Parse(format!("bad exponent in {:?}", factor)))?,
                    ),
                };
                let inner = var_part
                    .strip_prefix("x[")
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| {
                        CohaError::Parse(format!("expected x[vertex,index], got {:?}", var_part))
                    })?;
                let (name, idx) = inner.split_once(',').ok_or_else(|| {
                    CohaError::Parse(format!("expected x[vertex,index], got {:?}", var_part))
                })?;
                let vertex = q
                    .vertex_names()
                    .iter()
                    .position(|n| n == name.trim())
                    .ok_or_else(|| {
                        CohaError::Parse(format!("unknown vertex {:?} in variable", name.trim()))
                    })?;
                let idx: usize = idx
                    .trim()
                    .parse()
                    .map_err(|_| CohaError::Parse(format!("bad variable index in {:?}", factor)))?;
                if idx == 0 || idx > d.entry(vertex) as usize {
                    return Err(CohaError::Parse(format!(
                        "variable index {} out of range for vertex {:?} (dimension {})",
                        idx,
                        q.vertex_names()[vertex],
                        d.entry(vertex)
                    )));
                }
                mono[alphabet.var(vertex, idx - 1)] += exp;
            } else {
                coeff *= crate::quiver::parse_rational(factor)?;
            }
        }
        out.insert_add(mono, coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q_int, q_ratio};
    use crate::rng::SplitMix64;
    use num_traits::Signed;

    fn single(d: u32) -> Alphabet {
        Alphabet::new(vec![d])
    }

    fn x(alphabet: &Alphabet, vertex: usize, slot: usize) -> MPoly {
        MPoly::var(alphabet.clone(), vertex, slot)
    }

    #[test]
    fn mul_square_of_sum() {
        let a = single(2);
        let sum = x(&a, 0, 0).add(&x(&a, 0, 1)).unwrap();
        let sq = sum.mul(&sum).unwrap();
        let mut expect = MPoly::zero(a.clone());
        expect = expect.add(&x(&a, 0, 0).mul(&x(&a, 0, 0)).unwrap()).unwrap();
        expect = expect
            .add(&x(&a, 0, 0).mul(&x(&a, 0, 1)).unwrap().scale(&q_int(2)))
            .unwrap();
        expect = expect.add(&x(&a, 0, 1).mul(&x(&a, 0, 1)).unwrap()).unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn unit_law_and_m1_square() {
        let a = single(2);
        let m1 = monomial_sym(&[1], 2).unwrap();
        assert_eq!(m1.mul(&SymPoly::one(a)).unwrap(), m1);
        let product = m1.mul(&m1).unwrap();
        let expect = monomial_sym(&[2], 2)
            .unwrap()
            .add(&monomial_sym(&[1, 1], 2).unwrap().scale(&q_int(2)))
            .unwrap();
        assert_eq!(product, expect);
    }

    #[test]
    fn exact_divide_examples() {
        let a = single(2);
        let x1 = x(&a, 0, 0);
        let x2 = x(&a, 0, 1);
        let num = x2.mul(&x2).unwrap().sub(&x1.mul(&x1).unwrap()).unwrap();
        let den = x2.sub(&x1).unwrap();
        assert_eq!(exact_divide(&num, &den).unwrap(), x2.add(&x1).unwrap());
        // sign flip
        let flipped = x1.sub(&x2).unwrap();
        assert_eq!(
            exact_divide(&den, &flipped).unwrap(),
            MPoly::constant(a.clone(), -Q::one())
        );
        // failure carries an error, not a panic
        assert!(matches!(
            exact_divide(&x1, &den),
            Err(CohaError::DivisionFailure(_))
        ));
    }

    #[test]
    fn exact_divide_random_round_trip() {
        let mut rng = SplitMix64::new(7);
        let a = single(3);
        for _ in 0..100 {
            let f = random_poly(&a, &mut rng);
            let mut g = random_poly(&a, &mut rng);
            if g.is_zero() {
                g = MPoly::one(a.clone());
            }
            let prod = f.mul(&g).unwrap();
            assert_eq!(prod.exact_div(&g).unwrap(), f);
        }
    }

    fn random_poly(a: &Alphabet, rng: &mut SplitMix64) -> MPoly {
        let mut p = MPoly::zero(a.clone());
        let nterms = rng.next_below(4) + 1;
        for _ in 0..nterms {
            let mut mono = vec![0u16; a.total_vars()];
            for e in mono.iter_mut() {
                *e = rng.next_below(3) as u16;
            }
            let c = q_int(rng.next_signed(5));
            p.insert_add(mono, c);
        }
        p
    }

    #[test]
    fn div_linear_matches_general() {
        let mut rng = SplitMix64::new(21);
        let a = single(3);
        for _ in 0..50 {
            let f = random_poly(&a, &mut rng);
            let factor = MPoly::linear_diff(a.clone(), 2, 0);
            let prod = f.mul(&factor).unwrap();
            assert_eq!(prod.div_linear(2, 0).unwrap(), f);
            assert_eq!(prod.exact_div(&factor).unwrap(), f);
        }
    }

    #[test]
    fn symmetrize_examples() {
        let a = single(2);
        // x1 -> (x1 + x2)/2
        let s = symmetrize(&x(&a, 0, 0));
        let half_e1 = monomial_sym(&[1], 2).unwrap().scale(&q_ratio(1, 2));
        assert_eq!(s, half_e1);
        // symmetric input unchanged, projection idempotent
        let m21 = monomial_sym(&[2, 1], 2).unwrap();
        assert_eq!(symmetrize(&m21.to_raw()), m21);
        // x1^2 x2 + x1
        let p = x(&a, 0, 0)
            .mul(&x(&a, 0, 0))
            .unwrap()
            .mul(&x(&a, 0, 1))
            .unwrap()
            .add(&x(&a, 0, 0))
            .unwrap();
        let expect = monomial_sym(&[2, 1], 2)
            .unwrap()
            .scale(&q_ratio(1, 2))
            .add(&monomial_sym(&[1], 2).unwrap().scale(&q_ratio(1, 2)))
            .unwrap();
        assert_eq!(symmetrize(&p), expect);
    }

    #[test]
    fn from_raw_rejects_asymmetric() {
        let a = single(2);
        assert!(matches!(
            SymPoly::from_raw(&x(&a, 0, 0)),
            Err(CohaError::NonSymmetric(_))
        ));
    }

    #[test]
    fn symmetry_survives_arithmetic() {
        // applying a transposition to the raw expansion leaves it fixed
        let mut rng = SplitMix64::new(3);
        let a = Alphabet::new(vec![2, 2]);
        for _ in 0..20 {
            let f = random_sym(&a, &mut rng);
            let g = random_sym(&a, &mut rng);
            let prod = f.mul(&g).unwrap();
            let raw = prod.to_raw();
            let mut map: Vec<usize> = (0..a.total_vars()).collect();
            // swap the two variables at a random vertex
            let v = rng.next_below(2);
            map.swap(a.var(v, 0), a.var(v, 1));
            let swapped = raw.remap(a.clone(), &map);
            assert_eq!(raw, swapped);
        }
    }

    fn random_sym(a: &Alphabet, rng: &mut SplitMix64) -> SymPoly {
        let d = a.dim();
        let deg = rng.next_below(3);
        let basis = graded_basis(&d, deg);
        let mut out = SymPoly::zero(a.clone());
        for b in basis {
            out = out.add(&b.scale(&q_int(rng.next_signed(3)))).unwrap();
        }
        out
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur(&[], 3).unwrap(), SymPoly::one(single(3)));
        assert_eq!(schur(&[1], 2).unwrap(), monomial_sym(&[1], 2).unwrap());
        assert_eq!(schur(&[2, 1], 2).unwrap(), monomial_sym(&[2, 1], 2).unwrap());
        assert!(matches!(schur(&[1, 1, 1], 2), Err(CohaError::PartitionTooLong)));
    }

    #[test]
    fn monomial_and_elementary() {
        assert_eq!(
            monomial_sym(&[1, 1], 2).unwrap(),
            elementary_sym(2, 2).unwrap()
        );
        let m21 = monomial_sym(&[2, 1], 3).unwrap();
        assert_eq!(m21.to_raw().num_terms(), 6);
        assert!(elementary_sym(3, 2).is_err());
    }

    #[test]
    fn graded_basis_counts() {
        assert_eq!(graded_basis(&DimVector::new(vec![2]), 2).len(), 2);
        assert_eq!(graded_basis(&DimVector::new(vec![3, 1]), 0).len(), 1);
        assert_eq!(graded_basis(&DimVector::new(vec![1, 1]), 1).len(), 2);
    }

    #[test]
    fn graded_basis_generating_series() {
        // sum_k #basis(d, k) q^k = prod_{v=1..d} (1 - q^v)^{-1}, checked
        // against a direct bounded-parts counting recurrence
        for d in 1..=4u32 {
            for k in 0..=8usize {
                let basis = graded_basis(&DimVector::new(vec![d]), k).len();
                assert_eq!(basis, count_partitions_max_parts(k, d as usize));
            }
        }
    }

    fn count_partitions_max_parts(n: usize, m: usize) -> usize {
        // partitions of n into at most m parts == partitions with parts <= m,
        // via the classical DP on largest part
        let mut table = vec![vec![0usize; n + 1]; m + 1];
        for row in table.iter_mut() {
            row[0] = 1;
        }
        for part in 1..=m {
            for total in 1..=n {
                table[part][total] = table[part - 1][total]
                    + if total >= part { table[part][total - part] } else { 0 };
            }
        }
        table[m][n]
    }

    #[test]
    fn rank_examples() {
        let d = DimVector::new(vec![2]);
        let f = monomial_sym(&[2], 2).unwrap();
        let g = monomial_sym(&[1, 1], 2).unwrap();
        assert_eq!(rank_of_span(&[f.clone(), f.scale(&q_int(2))], &d, 2).unwrap(), 1);
        assert_eq!(rank_of_span(&[], &d, 2).unwrap(), 0);
        let h = f.add(&g).unwrap();
        assert_eq!(rank_of_span(&[f, g, h], &d, 2).unwrap(), 2);
    }

    #[test]
    fn rank_rejects_mismatches() {
        let d = DimVector::new(vec![2]);
        let f = monomial_sym(&[2], 2).unwrap();
        // wrong degree
        assert!(matches!(
            rank_of_span(std::slice::from_ref(&f), &d, 1),
            Err(CohaError::InhomogeneousBody)
        ));
        // wrong alphabet
        assert!(matches!(
            rank_of_span(&[f], &DimVector::new(vec![3]), 2),
            Err(CohaError::AlphabetMismatch(_))
        ));
    }

    #[test]
    fn rank_of_basis_is_full() {
        for deg in 0..=4usize {
            let d = DimVector::new(vec![2, 1]);
            let basis = graded_basis(&d, deg);
            assert_eq!(rank_of_span(&basis, &d, deg).unwrap(), basis.len());
        }
    }

    #[test]
    fn littlewood_richardson_positivity() {
        // schur * schur decomposes with nonnegative integer coefficients
        for d in 1..=3u32 {
            let lambdas: Vec<Vec<u32>> = (0..=3usize)
                .flat_map(|n| partitions(n, d as usize, n.max(1)))
                .collect();
            for la in &lambdas {
                for mu in &lambdas {
                    let prod = schur(la, d).unwrap().mul(&schur(mu, d).unwrap()).unwrap();
                    for (_, c) in decompose_in_schur_basis(prod, d) {
                        assert!(c.is_integer() && !c.is_negative());
                    }
                }
            }
        }
    }

    fn decompose_in_schur_basis(mut p: SymPoly, d: u32) -> Vec<(Vec<u32>, Q)> {
        let mut out = Vec::new();
        while !p.is_zero() {
            let (rep, c) = p
                .terms()
                .next_back()
                .map(|(m, c)| (m.clone(), c.clone()))
                .unwrap();
            let lambda: Vec<u32> = rep.iter().map(|&e| e as u32).filter(|&e| e > 0).collect();
            let s = schur(&lambda, d).unwrap();
            p = p.sub(&s.scale(&c)).unwrap();
            out.push((lambda, c));
        }
        out
    }

    #[test]
    fn text_format_round_trip() {
        let q = Quiver::a_tilde_1();
        let d = DimVector::new(vec![2, 1]);
        let text = "1/2 * x[a,1]^2 * x[b,1] + -3 * x[a,2]";
        let p = parse_poly(&q, &d, text).unwrap();
        let printed = format_poly(&q, &p);
        let reparsed = parse_poly(&q, &d, &printed).unwrap();
        assert_eq!(p, reparsed);
        assert!(parse_poly(&q, &d, "x[c,1]").is_err());
        assert!(parse_poly(&q, &d, "x[b,2]").is_err());
    }
}
