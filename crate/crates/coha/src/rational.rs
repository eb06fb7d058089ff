//! Exact scalars: rational numbers and rational functions in the formal
//! variable `s`, where `q = s^2`.
//!
//! Point counts over a finite field with q elements enter the algebra
//! through the prefactor `(-q^{1/2})^{chi}`, so half-powers of q are
//! unavoidable. We work throughout with `s = q^{1/2}` and convert back
//! to q only after checking that a value is even in s.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::CohaError;
use crate::Result;

/// Exact rational scalar used for every coefficient in the crate.
pub type Q = num_rational::BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_ratio(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Dense univariate polynomial in `s` over the rationals.
///
/// Coefficient of `s^i` sits at index `i`; trailing zeros are trimmed, so
/// the zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SPoly {
    coeffs: Vec<Q>,
}

impl SPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SPoly { coeffs }
    }

    pub fn zero() -> Self {
        SPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        SPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        SPoly::new(vec![c])
    }

    /// `c * s^k` for `k >= 0`.
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut coeffs = vec![Q::zero(); k + 1];
        coeffs[k] = c;
        SPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        SPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return SPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        SPoly::new(out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        SPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn divrem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        let lead = div.coeff(dd);
        let mut rem = self.clone();
        let mut quo = vec![Q::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.coeff(rd) / lead.clone();
            quo[rd - dd] = factor.clone();
            let shifted = div.mul(&SPoly::monomial(factor, rd - dd));
            rem = rem.sub(&shifted);
        }
        (SPoly::new(quo), rem)
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    fn make_monic(&self) -> Self {
        match self.degree() {
            None => SPoly::zero(),
            Some(d) => {
                let lead = self.coeff(d);
                self.scale(&(Q::one() / lead))
            }
        }
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Substitutes `s -> -s`.
    pub fn flip_sign(&self) -> Self {
        SPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    fn is_even(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % 2 == 0 || c.is_zero())
    }

    fn is_odd(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % 2 == 1 || c.is_zero())
    }

    /// For an even polynomial, returns p with p(q) = self(s), q = s^2.
    fn compress_even(&self) -> Self {
        debug_assert!(self.is_even());
        SPoly::new(self.coeffs.iter().step_by(2).cloned().collect())
    }

    /// Divides by s; requires zero constant term.
    fn shift_down(&self) -> Self {
        debug_assert!(self.coeff(0).is_zero());
        if self.is_zero() {
            return SPoly::zero();
        }
        SPoly::new(self.coeffs[1..].to_vec())
    }

    fn fmt_with_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag_one = mag.is_one();
            if i == 0 {
                out.push_str(&format_q(&mag));
            } else {
                if !mag_one {
                    out.push_str(&format_q(&mag));
                    out.push('*');
                }
                out.push_str(var);
                if i > 1 {
                    out.push_str(&format!("^{}", i));
                }
            }
        }
        out
    }
}

/// Prints a rational as `p` or `p/q`.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Rational function in `s` with rational coefficients, stored reduced
/// with a monic denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: SPoly,
    den: SPoly,
}

impl RatFunc {
    pub fn new(num: SPoly, den: SPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let mut rf = RatFunc { num, den };
        rf.reduce();
        rf
    }

    pub fn zero() -> Self {
        RatFunc {
            num: SPoly::zero(),
            den: SPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: SPoly::one(),
            den: SPoly::one(),
        }
    }

    pub fn from_poly(p: SPoly) -> Self {
        RatFunc {
            num: p,
            den: SPoly::one(),
        }
    }

    pub fn from_q(c: Q) -> Self {
        RatFunc::from_poly(SPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_q(q_int(n))
    }

    /// `c * s^k`, any integer k.
    pub fn s_monomial(c: Q, k: i64) -> Self {
        if k >= 0 {
            RatFunc::from_poly(SPoly::monomial(c, k as usize))
        } else {
            RatFunc {
                num: SPoly::constant(c),
                den: SPoly::monomial(Q::one(), (-k) as usize),
            }
        }
    }

    /// `q^k = s^{2k}`, any integer k.
    pub fn q_power(k: i64) -> Self {
        RatFunc::s_monomial(Q::one(), 2 * k)
    }

    /// `(-s)^k`, any integer k.
    pub fn neg_s_power(k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 0 {
            Q::one()
        } else {
            -Q::one()
        };
        RatFunc::s_monomial(sign, k)
    }

    pub fn numer(&self) -> &SPoly {
        &self.num
    }

    pub fn denom(&self) -> &SPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = SPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree() != Some(0) {
            let (n, rn) = self.num.divrem(&g);
            let (d, rd) = self.den.divrem(&g);
            debug_assert!(rn.is_zero() && rd.is_zero());
            self.num = n;
            self.den = d;
        }
        // keep the denominator monic
        let lead = self.den.coeff(self.den.degree().unwrap());
        if !lead.is_one() {
            let inv = Q::one() / lead;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero rational function");
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn inv(&self) -> Self {
        RatFunc::one().div(self)
    }

    /// True iff f(s) = f(-s) as rational functions.
    pub fn is_even_in_s(&self) -> bool {
        let flipped = RatFunc::new(self.num.flip_sign(), self.den.flip_sign());
        *self == flipped
    }

    /// Rewrites an even rational function as a rational function of
    /// `q = s^2`; the returned pair (num, den) is in the variable q.
    pub fn as_q_function(&self) -> Result<(SPoly, SPoly)> {
        if !self.is_even_in_s() {
            return Err(CohaError::Parse(format!(
                "rational function is not even in s: {}",
                self
            )));
        }
        // In reduced form an even function has num and den either both
        // even or both odd (leading denominator coefficient is 1, so the
        // sign mismatch under s -> -s is shared).
        let (mut n, mut d) = (self.num.clone(), self.den.clone());
        if n.is_zero() {
            return Ok((SPoly::zero(), SPoly::one()));
        }
        if n.is_odd() && d.is_odd() {
            n = n.shift_down();
            d = d.shift_down();
        }
        if !(n.is_even() && d.is_even()) {
            return Err(CohaError::Parse(format!(
                "even rational function with mixed-parity reduced form: {}",
                self
            )));
        }
        Ok((n.compress_even(), d.compress_even()))
    }

    /// Evaluates an even rational function at a rational value of q.
    pub fn eval_at_q(&self, q: &Q) -> Result<Q> {
        let (n, d) = self.as_q_function()?;
        let dv = d.eval(q);
        if dv.is_zero() {
            return Err(CohaError::OutOfRange(format!(
                "denominator vanishes at q = {}",
                format_q(q)
            )));
        }
        Ok(n.eval(q) / dv)
    }

    /// Evaluates at a rational value of s.
    pub fn eval_at_s(&self, s: &Q) -> Result<Q> {
        let dv = self.den.eval(s);
        if dv.is_zero() {
            return Err(CohaError::OutOfRange(format!(
                "denominator vanishes at s = {}",
                format_q(s)
            )));
        }
        Ok(self.num.eval(s) / dv)
    }
}

impl std::fmt::Display for RatFunc {
    /// Even functions print in q, everything else in s.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (num_s, den_s, var) = match self.as_q_function() {
            Ok((n, d)) => (n, d, "q"),
            Err(_) => (self.num.clone(), self.den.clone(), "s"),
        };
        if den_s.degree() == Some(0) && den_s.coeff(0).is_one() {
            write!(f, "{}", num_s.fmt_with_var(var))
        } else {
            write!(
                f,
                "({})/({})",
                num_s.fmt_with_var(var),
                den_s.fmt_with_var(var)
            )
        }
    }
}
