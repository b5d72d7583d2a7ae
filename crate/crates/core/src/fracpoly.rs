//! Exact arithmetic for fractional-exponent Laurent polynomials.
//!
//! [`FracPoly`] is a finitely supported map from exact rational exponents to
//! arbitrary-precision integer coefficients; it carries every spectrum-like
//! quantity in this crate. [`BivarPoly`] adds an integer exponent in a second
//! variable `u` and carries spectral pairs `Σ t^α · u^w`.
//!
//! Values are immutable after construction and all operations are pure, so
//! both types are safe to share across threads.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational exponent.
pub type Exp = BigRational;
/// Exact integer coefficient.
pub type Coeff = BigInt;

/// Build an exponent `p/q` from machine integers.
pub fn exp(p: i64, q: i64) -> Exp {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// A polynomial `Σ c_α t^α` with rational exponents and integer coefficients.
///
/// Invariants: no stored coefficient is zero, and exponents (BTreeMap keys)
/// are kept in lowest terms with positive denominator, which `BigRational`
/// guarantees. Equality is key-by-key coefficient equality.
///
/// ```
/// use nspec_core::fracpoly::{exp, FracPoly};
/// let p = FracPoly::term(exp(1, 2), 1) + FracPoly::term(exp(1, 1), 1);
/// let q = FracPoly::one() + FracPoly::term(exp(1, 1), 1);
/// let product = &p * &q;
/// assert_eq!(product.to_string(), "t^(1/2) + t + t^(3/2) + t^2");
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FracPoly {
    terms: BTreeMap<Exp, Coeff>,
}

impl FracPoly {
    /// The zero polynomial (empty map).
    pub fn zero() -> Self {
        FracPoly::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        FracPoly::term(Exp::zero(), 1)
    }

    /// A single term `c · t^α`; the zero coefficient yields the zero polynomial.
    pub fn term(alpha: Exp, c: impl Into<Coeff>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(alpha, c);
        }
        FracPoly { terms }
    }

    /// Sum of monomials `t^α` over an exponent iterator (all coefficients 1).
    pub fn from_exponents<I: IntoIterator<Item = Exp>>(iter: I) -> Self {
        let mut p = FracPoly::zero();
        for alpha in iter {
            p.add_term(alpha, Coeff::one());
        }
        p
    }

    /// Add `c · t^α` in place, dropping the key if the coefficient cancels.
    pub fn add_term(&mut self, alpha: Exp, c: Coeff) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct exponents.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `t^α` (zero if absent).
    pub fn coeff(&self, alpha: &Exp) -> Coeff {
        self.terms.get(alpha).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Terms in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&Exp, &Coeff)> {
        self.terms.iter()
    }

    /// `p(t^{-1}) · t^n`, i.e. each exponent `α ↦ n − α`.
    pub fn reflect(&self, n: i64) -> FracPoly {
        let n = Exp::from_integer(BigInt::from(n));
        let terms = self
            .terms
            .iter()
            .map(|(a, c)| (&n - a, c.clone()))
            .collect();
        FracPoly { terms }
    }

    /// Reduce every exponent mod ℤ into `[0, 1)`, summing collisions.
    pub fn phi(&self) -> FracPoly {
        let mut out = FracPoly::zero();
        for (a, c) in &self.terms {
            out.add_term(a - a.floor(), c.clone());
        }
        out
    }

    /// Keep exactly the terms with exponent `≤ c`.
    pub fn slice_le(&self, c: &Exp) -> FracPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(a, _)| *a <= c)
            .map(|(a, v)| (a.clone(), v.clone()))
            .collect();
        FracPoly { terms }
    }

    /// Sum of coefficients, i.e. `p(1)`.
    pub fn mass(&self) -> Coeff {
        self.terms.values().sum()
    }

    /// Multiply by a single monomial `t^α`.
    pub fn shift(&self, alpha: &Exp) -> FracPoly {
        let terms = self
            .terms
            .iter()
            .map(|(a, c)| (a + alpha, c.clone()))
            .collect();
        FracPoly { terms }
    }

    /// Multiply every coefficient by an integer.
    pub fn scale(&self, c: impl Into<Coeff>) -> FracPoly {
        let c = c.into();
        if c.is_zero() {
            return FracPoly::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(a, v)| (a.clone(), v * &c))
            .collect();
        FracPoly { terms }
    }

    /// `1 + t + … + t^{k−1}`; zero when `k ≤ 0`.
    pub fn geometric(k: i64) -> FracPoly {
        let mut p = FracPoly::zero();
        for j in 0..k {
            p.add_term(Exp::from_integer(BigInt::from(j)), Coeff::one());
        }
        p
    }

    /// `(1 − t)^k` for `k ≥ 0` by binomial expansion.
    pub fn one_minus_t_pow(k: u32) -> FracPoly {
        let mut p = FracPoly::one();
        let step = FracPoly::one() - FracPoly::term(Exp::one(), 1);
        for _ in 0..k {
            p = &p * &step;
        }
        p
    }

    /// Smallest exponent, if any.
    pub fn min_exp(&self) -> Option<&Exp> {
        self.terms.keys().next()
    }

    /// Largest exponent, if any.
    pub fn max_exp(&self) -> Option<&Exp> {
        self.terms.keys().next_back()
    }

    /// Expand into a weakly increasing list of exponents, each repeated by
    /// its multiplicity. Fails if any coefficient is negative.
    pub fn to_multiset(&self) -> Result<Vec<Exp>> {
        let mut out = Vec::new();
        for (a, c) in &self.terms {
            if c.is_negative() {
                return Err(Error::Invariant(format!(
                    "negative multiplicity {c} at exponent {a} where a genuine spectrum was expected"
                )));
            }
            let mut k = c.clone();
            while k.is_positive() {
                out.push(a.clone());
                k -= 1;
            }
        }
        Ok(out)
    }
}

impl Add for &FracPoly {
    type Output = FracPoly;
    fn add(self, rhs: &FracPoly) -> FracPoly {
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }
}

impl Add for FracPoly {
    type Output = FracPoly;
    fn add(self, rhs: FracPoly) -> FracPoly {
        &self + &rhs
    }
}

impl Sub for &FracPoly {
    type Output = FracPoly;
    fn sub(self, rhs: &FracPoly) -> FracPoly {
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), -c.clone());
        }
        out
    }
}

impl Sub for FracPoly {
    type Output = FracPoly;
    fn sub(self, rhs: FracPoly) -> FracPoly {
        &self - &rhs
    }
}

impl Neg for &FracPoly {
    type Output = FracPoly;
    fn neg(self) -> FracPoly {
        let terms = self
            .terms
            .iter()
            .map(|(a, c)| (a.clone(), -c.clone()))
            .collect();
        FracPoly { terms }
    }
}

impl Mul for &FracPoly {
    type Output = FracPoly;
    fn mul(self, rhs: &FracPoly) -> FracPoly {
        let mut out = FracPoly::zero();
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.add_term(a + b, c * d);
            }
        }
        out
    }
}

impl Mul for FracPoly {
    type Output = FracPoly;
    fn mul(self, rhs: FracPoly) -> FracPoly {
        &self * &rhs
    }
}

fn fmt_exp(alpha: &Exp) -> String {
    if alpha.is_integer() {
        alpha.numer().to_string()
    } else {
        format!("({alpha})")
    }
}

impl fmt::Display for FracPoly {
    /// Canonical rendering, terms ascending by exponent: `1 - t^(1/2) + 2*t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if a.is_zero() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                if a.is_one() {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{}", fmt_exp(a))?;
                }
            } else if a.is_one() {
                write!(f, "{mag}*t")?;
            } else {
                write!(f, "{mag}*t^{}", fmt_exp(a))?;
            }
        }
        Ok(())
    }
}

fn mult_json(c: &Coeff) -> serde_json::Value {
    match i64::try_from(c.clone()) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(c.to_string()),
    }
}

impl Serialize for FracPoly {
    /// JSON form: ascending array of `{"alpha": "p/q", "mult": m}` with
    /// fractions in lowest terms and positive denominators.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            alpha: String,
            mult: serde_json::Value,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (a, c) in &self.terms {
            seq.serialize_element(&Term {
                alpha: a.to_string(),
                mult: mult_json(c),
            })?;
        }
        seq.end()
    }
}

/// A polynomial `Σ c · t^α u^w` with rational `t`-exponents and integer
/// `u`-exponents. Specializing `u := 1` yields a [`FracPoly`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(Exp, i64), Coeff>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly::default()
    }

    /// A single term `c · t^α u^w`.
    pub fn term(alpha: Exp, w: i64, c: impl Into<Coeff>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((alpha, w), c);
        }
        BivarPoly { terms }
    }

    /// Embed a `t`-polynomial with `u`-exponent 0.
    pub fn from_frac(p: &FracPoly) -> Self {
        let terms = p
            .terms
            .iter()
            .map(|(a, c)| ((a.clone(), 0), c.clone()))
            .collect();
        BivarPoly { terms }
    }

    pub fn add_term(&mut self, alpha: Exp, w: i64, c: Coeff) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry((alpha, w)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Exp, i64), &Coeff)> {
        self.terms.iter()
    }

    /// Smallest `u`-exponent present.
    pub fn min_u(&self) -> Option<i64> {
        self.terms.keys().map(|(_, w)| *w).min()
    }

    /// Largest `u`-exponent present.
    pub fn max_u(&self) -> Option<i64> {
        self.terms.keys().map(|(_, w)| *w).max()
    }

    /// Set `u := 1`, summing coefficients per `t`-exponent.
    pub fn specialize_u(&self) -> FracPoly {
        let mut out = FracPoly::zero();
        for ((a, _), c) in &self.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }
}

/// Map each term `c · t^j` of `r` to `c · t^j · u^{k−2j}`, i.e. evaluate
/// `r(t/u²) · u^k`. The input must have integer exponents only; a fractional
/// exponent signals misuse of a combinatorial polynomial and is rejected.
pub fn inflate(r: &FracPoly, k: i64) -> Result<BivarPoly> {
    let mut out = BivarPoly::zero();
    for (a, c) in &r.terms {
        if !a.is_integer() {
            return Err(Error::NonIntegerExponent { exp: a.to_string() });
        }
        let j: i64 = a.numer().try_into().map_err(|_| Error::Invariant(
            format!("combinatorial exponent {a} does not fit in a machine integer"),
        ))?;
        out.add_term(a.clone(), k - 2 * j, c.clone());
    }
    Ok(out)
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for ((a, w), c) in &rhs.terms {
            out.add_term(a.clone(), *w, c.clone());
        }
        out
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for ((a, w), c) in &rhs.terms {
            out.add_term(a.clone(), *w, -c.clone());
        }
        out
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for ((a, v), c) in &self.terms {
            for ((b, w), d) in &rhs.terms {
                out.add_term(a + b, v + w, c * d);
            }
        }
        out
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, w), c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() {
                parts.push(mag.to_string());
            }
            if !a.is_zero() {
                parts.push(if a.is_one() {
                    "t".into()
                } else {
                    format!("t^{}", fmt_exp(a))
                });
            }
            match *w {
                0 => {}
                1 => parts.push("u".into()),
                _ => parts.push(format!("u^{w}")),
            }
            if parts.is_empty() {
                parts.push("1".into());
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for BivarPoly {
    /// JSON form: ascending array of `{"alpha": "p/q", "w": k, "mult": m}`.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            alpha: String,
            w: i64,
            mult: String,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for ((a, w), c) in &self.terms {
            seq.serialize_element(&Term {
                alpha: a.to_string(),
                w: *w,
                mult: c.to_string(),
            })?;
        }
        seq.end()
    }
}
