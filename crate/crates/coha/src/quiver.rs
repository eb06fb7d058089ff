//! Quiver data model: vertices, arrows, Euler form, stability and slope
//! arithmetic, framed quivers, and Harder-Narasimhan type enumeration.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::CohaError;
use crate::rational::{q_int, Q};
use crate::Result;

/// A finite oriented graph. Vertices are named; arrows are stored as
/// (source, target) index pairs, so multiplicities and loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new<S: Into<String>>(vertices: Vec<S>, arrows: Vec<(S, S)>) -> Result<Self> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        for i in 0..vertices.len() {
            for j in (i + 1)..vertices.len() {
                if vertices[i] == vertices[j] {
                    return Err(CohaError::Parse(format!(
                        "duplicate vertex {:?}",
                        vertices[i]
                    )));
                }
            }
        }
        let index = |name: &str| -> Result<usize> {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| CohaError::Parse(format!("arrow endpoint {:?} is not a vertex", name)))
        };
        let mut idx_arrows = Vec::new();
        for (s, t) in arrows {
            let (s, t) = (s.into(), t.into());
            idx_arrows.push((index(&s)?, index(&t)?));
        }
        Ok(Quiver {
            vertices,
            arrows: idx_arrows,
        })
    }

    /// Single vertex, no arrows.
    pub fn point() -> Self {
        Quiver {
            vertices: vec!["a".to_string()],
            arrows: vec![],
        }
    }

    /// Single vertex with `m` loops.
    pub fn loops(m: usize) -> Self {
        Quiver {
            vertices: vec!["a".to_string()],
            arrows: vec![(0, 0); m],
        }
    }

    /// Two vertices with one arrow each way.
    pub fn a_tilde_1() -> Self {
        Quiver {
            vertices: vec!["a".to_string(), "b".to_string()],
            arrows: vec![(0, 1), (1, 0)],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    fn arrow_multiplicity(&self, from: usize, to: usize) -> usize {
        self.arrows.iter().filter(|&&(s, t)| s == from && t == to).count()
    }

    /// True iff every ordered vertex pair carries as many arrows one way
    /// as the other.
    pub fn is_symmetric(&self) -> bool {
        let n = self.vertex_count();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.arrow_multiplicity(i, j) != self.arrow_multiplicity(j, i) {
                    return false;
                }
            }
        }
        true
    }

    fn check_dim(&self, d: &DimVector) -> Result<()> {
        if d.len() != self.vertex_count() {
            return Err(CohaError::KeyMismatch(format!(
                "expected {} entries, got {}",
                self.vertex_count(),
                d.len()
            )));
        }
        Ok(())
    }

    /// The Euler form: sum_i d_i e_i - sum_{arrows i->j} d_i e_j.
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        self.check_dim(d)?;
        self.check_dim(e)?;
        let mut acc: i64 = 0;
        for i in 0..self.vertex_count() {
            acc += d.entry(i) as i64 * e.entry(i) as i64;
        }
        for &(s, t) in &self.arrows {
            acc -= d.entry(s) as i64 * e.entry(t) as i64;
        }
        Ok(acc)
    }

    /// dim R_d = sum over arrows i->j of d_i d_j.
    pub fn rep_space_dim(&self, d: &DimVector) -> Result<i64> {
        self.check_dim(d)?;
        Ok(self
            .arrows
            .iter()
            .map(|&(s, t)| d.entry(s) as i64 * d.entry(t) as i64)
            .sum())
    }

    /// Adds the framing vertex with n_i arrows from it to vertex i.
    pub fn framed(&self, n: &DimVector) -> Result<Quiver> {
        self.check_dim(n)?;
        let framing_name = "∞".to_string();
        if self.vertices.contains(&framing_name) {
            return Err(CohaError::Parse(
                "quiver already contains the framing vertex name".into(),
            ));
        }
        let mut vertices = self.vertices.clone();
        vertices.push(framing_name);
        let inf = vertices.len() - 1;
        let mut arrows = self.arrows.clone();
        for i in 0..self.vertex_count() {
            for _ in 0..n.entry(i) {
                arrows.push((inf, i));
            }
        }
        Ok(Quiver { vertices, arrows })
    }
}

/// Nonnegative integer per vertex, stored densely in vertex order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimVector {
    entries: Vec<u32>,
}

impl DimVector {
    pub fn new(entries: Vec<u32>) -> Self {
        DimVector { entries }
    }

    pub fn zero(n: usize) -> Self {
        DimVector {
            entries: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, i: usize) -> u32 {
        self.entries[i]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn total(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        DimVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise difference; None if any entry would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.len(), other.len());
        let mut entries = Vec::with_capacity(self.len());
        for (a, b) in self.entries.iter().zip(&other.entries) {
            entries.push(a.checked_sub(*b)?);
        }
        Some(DimVector { entries })
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    /// Componentwise quotient by an integer m >= 1, if exact.
    pub fn divided_by(&self, m: u32) -> Option<Self> {
        let mut entries = Vec::with_capacity(self.len());
        for &a in &self.entries {
            if a % m != 0 {
                return None;
            }
            entries.push(a / m);
        }
        Some(DimVector { entries })
    }

    pub fn scaled(&self, m: u32) -> Self {
        DimVector {
            entries: self.entries.iter().map(|&a| a * m).collect(),
        }
    }
}

/// All e with 0 <= e_i <= d_i componentwise, in lexicographic order.
pub fn sub_dimvectors(d: &DimVector) -> Vec<DimVector> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; d.len()];
    loop {
        out.push(DimVector::new(cur.clone()));
        // lexicographic successor within the box
        let mut i = d.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < d.entry(i) {
                cur[i] += 1;
                for e in cur.iter_mut().skip(i + 1) {
                    *e = 0;
                }
                break;
            }
        }
    }
}

/// A stability condition: one exact rational weight per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stability {
    theta: Vec<Q>,
}

impl Stability {
    pub fn new(theta: Vec<Q>) -> Self {
        Stability { theta }
    }

    pub fn zero(n: usize) -> Self {
        Stability {
            theta: vec![Q::zero(); n],
        }
    }

    pub fn from_ints(theta: &[i64]) -> Self {
        Stability {
            theta: theta.iter().map(|&x| q_int(x)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn weights(&self) -> &[Q] {
        &self.theta
    }

    pub fn pairing(&self, d: &DimVector) -> Result<Q> {
        if d.len() != self.theta.len() {
            return Err(CohaError::KeyMismatch(format!(
                "stability has {} entries, dimension vector {}",
                self.theta.len(),
                d.len()
            )));
        }
        let mut acc = Q::zero();
        for (w, &x) in self.theta.iter().zip(d.entries()) {
            acc += w * q_int(x as i64);
        }
        Ok(acc)
    }

    /// slope(d) = theta(d) / total(d); undefined at d = 0.
    pub fn slope(&self, d: &DimVector) -> Result<Q> {
        if d.is_zero() {
            return Err(CohaError::UndefinedSlope);
        }
        Ok(self.pairing(d)? / q_int(d.total() as i64))
    }
}

/// A Harder-Narasimhan type: nonzero parts with strictly decreasing slopes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HNType {
    pub parts: Vec<DimVector>,
}

impl HNType {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    fn flattened(&self) -> Vec<u32> {
        self.parts
            .iter()
            .flat_map(|p| p.entries().iter().copied())
            .collect()
    }
}

/// All ordered tuples of nonzero dimension vectors summing to d with
/// strictly decreasing slopes, the one-part type included. Brute-force
/// enumeration over compositions; output sorted lexicographically on the
/// flattened parts.
pub fn hn_types(theta: &Stability, d: &DimVector) -> Result<Vec<HNType>> {
    if d.is_zero() {
        return Err(CohaError::ZeroDimVector);
    }
    if theta.len() != d.len() {
        return Err(CohaError::KeyMismatch(format!(
            "stability has {} entries, dimension vector {}",
            theta.len(),
            d.len()
        )));
    }
    let mut out = Vec::new();
    let mut prefix: Vec<DimVector> = Vec::new();
    collect_types(theta, d, None, &mut prefix, &mut out)?;
    out.sort_by_key(|t| t.flattened());
    Ok(out)
}

fn collect_types(
    theta: &Stability,
    remaining: &DimVector,
    slope_bound: Option<&Q>,
    prefix: &mut Vec<DimVector>,
    out: &mut Vec<HNType>,
) -> Result<()> {
    if remaining.is_zero() {
        out.push(HNType {
            parts: prefix.clone(),
        });
        return Ok(());
    }
    for part in sub_dimvectors(remaining) {
        if part.is_zero() {
            continue;
        }
        let mu = theta.slope(&part)?;
        if let Some(bound) = slope_bound {
            if &mu >= bound {
                continue;
            }
        }
        let rest = remaining.checked_sub(&part).expect("part <= remaining");
        prefix.push(part);
        collect_types(theta, &rest, Some(&mu), prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

// ---------------------------------------------------------------------
// JSON wire formats
// ---------------------------------------------------------------------

/// Parses `{"vertices": ["a","b"], "arrows": [{"from":"a","to":"b"}]}`.
pub fn quiver_from_json(text: &str) -> Result<Quiver> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CohaError::Parse(format!("quiver JSON: {}", e)))?;
    let obj = v
        .as_object()
        .ok_or_else(|| CohaError::Parse("quiver JSON: expected object".into()))?;
    let verts = obj
        .get("vertices")
        .and_then(|x| x.as_array())
        .ok_or_else(|| CohaError::Parse("quiver JSON: missing \"vertices\" array".into()))?;
    let mut vertices = Vec::new();
    for v in verts {
        vertices.push(
            v.as_str()
                .ok_or_else(|| CohaError::Parse("quiver JSON: vertex names must be strings".into()))?
                .to_string(),
        );
    }
    let arrows_v = obj
        .get("arrows")
        .and_then(|x| x.as_array())
        .ok_or_else(|| CohaError::Parse("quiver JSON: missing \"arrows\" array".into()))?;
    let mut arrows = Vec::new();
    for a in arrows_v {
        let from = a
            .get("from")
            .and_then(|x| x.as_str())
            .ok_or_else(|| CohaError::Parse("quiver JSON: arrow missing \"from\"".into()))?;
        let to = a
            .get("to")
            .and_then(|x| x.as_str())
            .ok_or_else(|| CohaError::Parse("quiver JSON: arrow missing \"to\"".into()))?;
        arrows.push((from.to_string(), to.to_string()));
    }
    Quiver::new(vertices, arrows)
}

pub fn quiver_to_json(q: &Quiver) -> serde_json::Value {
    serde_json::json!({
        "vertices": q.vertex_names(),
        "arrows": q
            .arrows()
            .iter()
            .map(|&(s, t)| serde_json::json!({"from": q.vertex_names()[s], "to": q.vertex_names()[t]}))
            .collect::<Vec<_>>(),
    })
}

/// Parses `{"a":1,"b":2}`; the keys must be exactly the vertex set.
pub fn dimvector_from_json(q: &Quiver, text: &str) -> Result<DimVector> {
    let v: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| CohaError::Parse(format!("dimension vector JSON: {}", e)))?;
    let obj = v
        .as_object()
        .ok_or_else(|| CohaError::Parse("dimension vector JSON: expected object".into()))?;
    check_keys(q, obj.keys())?;
    let mut entries = Vec::with_capacity(q.vertex_count());
    for name in q.vertex_names() {
        let x = obj
            .get(name)
            .and_then(|x| x.as_u64())
            .ok_or_else(|| {
                CohaError::Parse(format!(
                    "dimension vector JSON: entry {:?} must be a nonnegative integer",
                    name
                ))
            })?;
        entries.push(u32::try_from(x).map_err(|_| {
            CohaError::Parse(format!("dimension vector JSON: entry {:?} too large", name))
        })?);
    }
    Ok(DimVector::new(entries))
}

pub fn dimvector_to_json(q: &Quiver, d: &DimVector) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for (name, &x) in q.vertex_names().iter().zip(d.entries()) {
        map.insert(name.clone(), serde_json::json!(x));
    }
    serde_json::Value::Object(map)
}

/// Parses `{"a":"1","b":"-1/2"}`; rationals come as strings `p/q`.
pub fn stability_from_json(q: &Quiver, text: &str) -> Result<Stability> {
    let v: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| CohaError::Parse(format!("stability JSON: {}", e)))?;
    let obj = v
        .as_object()
        .ok_or_else(|| CohaError::Parse("stability JSON: expected object".into()))?;
    check_keys(q, obj.keys())?;
    let mut theta = Vec::with_capacity(q.vertex_count());
    for name in q.vertex_names() {
        let s = obj.get(name).and_then(|x| x.as_str()).ok_or_else(|| {
            CohaError::Parse(format!(
                "stability JSON: entry {:?} must be a rational string \"p/q\"",
                name
            ))
        })?;
        theta.push(parse_rational(s)?);
    }
    Ok(Stability::new(theta))
}

pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<num_bigint::BigInt> {
        t.trim()
            .parse()
            .map_err(|_| CohaError::Parse(format!("bad rational {:?}", s)))
    };
    match s.split_once('/') {
        None => Ok(Q::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(CohaError::Parse(format!("zero denominator in {:?}", s)));
            }
            Ok(Q::new(parse_int(n)?, den))
        }
    }
}

fn check_keys<'a>(q: &Quiver, keys: impl Iterator<Item = &'a String>) -> Result<()> {
    let mut seen: BTreeMap<&str, bool> = q
        .vertex_names()
        .iter()
        .map(|n| (n.as_str(), false))
        .collect();
    for k in keys {
        match seen.get_mut(k.as_str()) {
            Some(flag) => *flag = true,
            None => {
                return Err(CohaError::KeyMismatch(format!(
                    "{:?} is not a vertex of the quiver",
                    k
                )))
            }
        }
    }
    for (name, flag) in seen {
        if !flag {
            return Err(CohaError::KeyMismatch(format!("missing vertex {:?}", name)));
        }
    }
    Ok(())
}

/// Compact `a:1,b:2` rendering used in tables.
pub fn dim_label(q: &Quiver, d: &DimVector) -> String {
    q.vertex_names()
        .iter()
        .zip(d.entries())
        .map(|(n, x)| format!("{}:{}", n, x))
        .collect::<Vec<_>>()
        .join(",")
}
