//! Parsing of human-written polynomial expressions into a [`Support`], plus
//! the JSON support format.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! poly   := ['-'] term (('+'|'-') term)*
//! term   := [coeff '*'] factor ('*' factor)*
//! factor := var ['^' posint]
//! var    := 'x' | 'y' | 'z' | 'w' | 'x1'..'x9'
//! coeff  := integer | integer '/' integer
//! ```
//!
//! Coefficients are recorded for echo and rendering only; every downstream
//! computation uses the bare support set and assumes generic (non-degenerate)
//! coefficients.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on any single exponent accepted by the parser.
pub const DEFAULT_MAX_EXPONENT: i64 = 1_000_000;

/// Largest ambient dimension accepted anywhere in the crate.
pub const MAX_DIMENSION: usize = 4;

/// A finite set of exponent vectors in ℕⁿ together with the coefficients the
/// input carried. The combinatorics downstream ignores the coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    n: usize,
    points: Vec<Vec<i64>>,
    coeffs: BTreeMap<Vec<i64>, BigRational>,
}

impl Support {
    /// Validate and canonicalize (points sorted lexicographically). Missing
    /// coefficients default to 1.
    pub fn new(
        n: usize,
        mut points: Vec<Vec<i64>>,
        coeffs: BTreeMap<Vec<i64>, BigRational>,
    ) -> Result<Self> {
        if n == 0 || n > MAX_DIMENSION {
            return Err(Error::InvalidSupport(format!(
                "dimension must be between 1 and {MAX_DIMENSION}, got {n}"
            )));
        }
        if points.is_empty() {
            return Err(Error::InvalidSupport("empty support".into()));
        }
        points.sort();
        points.dedup();
        for p in &points {
            if p.len() != n {
                return Err(Error::InvalidSupport(format!(
                    "point {p:?} does not have {n} entries"
                )));
            }
            if p.iter().any(|&x| x < 0) {
                return Err(Error::InvalidSupport(format!(
                    "point {p:?} has a negative entry"
                )));
            }
            if p.iter().all(|&x| x == 0) {
                return Err(Error::InvalidSupport(
                    "the zero exponent vector is not allowed: the germ must vanish at the origin"
                        .into(),
                ));
            }
        }
        let mut full = BTreeMap::new();
        for p in &points {
            let c = coeffs.get(p).cloned().unwrap_or_else(BigRational::one);
            if c.is_zero() {
                return Err(Error::InvalidSupport(format!(
                    "zero coefficient recorded at {p:?}"
                )));
            }
            full.insert(p.clone(), c);
        }
        Ok(Support {
            n,
            points,
            coeffs: full,
        })
    }

    /// Support from bare points with all coefficients 1.
    pub fn from_points(n: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        Support::new(n, points, BTreeMap::new())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Exponent vectors, sorted lexicographically.
    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn coeff(&self, point: &[i64]) -> Option<&BigRational> {
        self.coeffs.get(point)
    }

    /// The set `I_f` of axes not met by the support: axis `i` is in the gap
    /// set iff no support point is a positive multiple of `e_i`.
    pub fn axis_gaps(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| {
                !self.points.iter().any(|p| {
                    p.iter()
                        .enumerate()
                        .all(|(j, &x)| if j == i { x > 0 } else { x == 0 })
                })
            })
            .collect()
    }

    /// Restriction to the coordinate subspace spanned by `axes` (strictly
    /// increasing indices): keeps the points supported there, re-embedded in
    /// dimension `axes.len()`. `None` when no point survives.
    pub fn restrict(&self, axes: &[usize]) -> Option<Support> {
        let kept: Vec<Vec<i64>> = self
            .points
            .iter()
            .filter(|p| {
                p.iter()
                    .enumerate()
                    .all(|(j, &x)| axes.contains(&j) || x == 0)
            })
            .map(|p| axes.iter().map(|&j| p[j]).collect())
            .collect();
        if kept.is_empty() {
            return None;
        }
        Some(Support::from_points(axes.len(), kept).expect("restriction of a valid support"))
    }

    /// Forget coordinate `i`, projecting every point to dimension n−1.
    pub fn project_out(&self, i: usize) -> Result<Support> {
        if self.n < 2 {
            return Err(Error::WrongDimension {
                expected: "at least 2".into(),
                got: self.n,
            });
        }
        let pts: Vec<Vec<i64>> = self
            .points
            .iter()
            .map(|p| {
                p.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        // Distinct points can collide after projection; generic coefficients
        // keep the combined coefficient nonzero, so only dedup is needed.
        Support::from_points(self.n - 1, pts)
    }

    /// Canonical text rendering; `parse_polynomial(render(s)) == s`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (idx, p) in self.points.iter().enumerate() {
            let c = &self.coeffs[p];
            if idx == 0 {
                if c.is_negative() {
                    out.push_str("- ");
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() {
                factors.push(mag.to_string());
            }
            for (j, &e) in p.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let var = var_name(j, self.n);
                if e == 1 {
                    factors.push(var);
                } else {
                    let mut f = var;
                    let _ = write!(f, "^{e}");
                    factors.push(f);
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// JSON object `{"n": 3, "support": [[4,0,0], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "n": self.n, "support": self.points })
    }

    /// Parse the JSON support form.
    pub fn from_json(text: &str) -> Result<Support> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            support: Vec<Vec<i64>>,
        }
        let raw: Raw = serde_json::from_str(text)
            .map_err(|e| Error::InvalidSupport(format!("bad JSON: {e}")))?;
        for p in &raw.support {
            for &x in p {
                if x > DEFAULT_MAX_EXPONENT {
                    return Err(Error::ExponentOverflow {
                        value: x,
                        bound: DEFAULT_MAX_EXPONENT,
                    });
                }
            }
        }
        Support::from_points(raw.n, raw.support)
    }
}

impl Serialize for Support {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Support", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("support", &self.points)?;
        st.end()
    }
}

fn var_name(index: usize, n: usize) -> String {
    if n <= 4 {
        ["x", "y", "z", "w"][index].to_string()
    } else {
        format!("x{}", index + 1)
    }
}

/// Parse a polynomial expression with the default exponent bound.
pub fn parse_polynomial(text: &str) -> Result<Support> {
    parse_polynomial_with_limit(text, DEFAULT_MAX_EXPONENT)
}

/// Parse with an explicit exponent bound.
pub fn parse_polynomial_with_limit(text: &str, max_exp: i64) -> Result<Support> {
    Parser {
        bytes: text.as_bytes(),
        pos: 0,
        max_exp,
    }
    .parse()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    max_exp: i64,
}

impl<'a> Parser<'a> {
    fn parse(mut self) -> Result<Support> {
        let mut monomials: BTreeMap<Vec<i64>, BigRational> = BTreeMap::new();
        let mut max_var = 0usize;

        self.skip_ws();
        let mut sign = if self.eat(b'-') {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        loop {
            let (coeff, exps) = self.term()?;
            let contribution = &sign * coeff;
            max_var = max_var.max(exps.len());
            let entry = monomials.entry(exps).or_insert_with(BigRational::zero);
            *entry += contribution;
            self.skip_ws();
            if self.at_end() {
                break;
            }
            if self.eat(b'+') {
                sign = BigRational::one();
            } else if self.eat(b'-') {
                sign = -BigRational::one();
            } else {
                return self.err("expected '+', '-' or end of input");
            }
        }

        monomials.retain(|_, c| !c.is_zero());
        if monomials.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let n = max_var.max(1);
        let mut points = Vec::new();
        let mut coeffs = BTreeMap::new();
        for (mut exps, c) in monomials {
            exps.resize(n, 0);
            points.push(exps.clone());
            coeffs.insert(exps, c);
        }
        Support::new(n, points, coeffs)
    }

    /// One term: optional coefficient, at least one variable factor.
    /// Exponent vectors come back trimmed to the highest used variable.
    fn term(&mut self) -> Result<(BigRational, Vec<i64>)> {
        self.skip_ws();
        let mut coeff = BigRational::one();
        let mut exps: Vec<i64> = Vec::new();

        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            coeff = self.rational()?;
            self.skip_ws();
            if !self.eat(b'*') {
                return self.err("expected '*' after coefficient");
            }
        }
        loop {
            self.skip_ws();
            let var = self.variable()?;
            let e = if self.eat(b'^') { self.posint()? } else { 1 };
            if var + 1 > exps.len() {
                exps.resize(var + 1, 0);
            }
            exps[var] = exps[var]
                .checked_add(e)
                .filter(|&v| v <= self.max_exp)
                .ok_or(Error::ExponentOverflow {
                    value: exps[var].saturating_add(e),
                    bound: self.max_exp,
                })?;
            self.skip_ws();
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((coeff, exps))
    }

    fn variable(&mut self) -> Result<usize> {
        let start = self.pos;
        match self.next() {
            Some(b'x') => {
                // x may carry a digit suffix: x1..x9
                if let Some(d @ b'1'..=b'9') = self.peek() {
                    self.pos += 1;
                    Ok((d - b'1') as usize)
                } else {
                    Ok(0)
                }
            }
            Some(b'y') => Ok(1),
            Some(b'z') => Ok(2),
            Some(b'w') => Ok(3),
            _ => {
                self.pos = start;
                self.err("expected a variable (x, y, z, w or x1..x9)")
            }
        }
    }

    fn posint(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a positive integer exponent");
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let v: i64 = text.parse().map_err(|_| Error::ExponentOverflow {
            value: i64::MAX,
            bound: self.max_exp,
        })?;
        if v == 0 {
            self.pos = start;
            return self.err("exponent must be positive");
        }
        if v > self.max_exp {
            return Err(Error::ExponentOverflow {
                value: v,
                bound: self.max_exp,
            });
        }
        Ok(v)
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.integer()?;
        self.skip_ws();
        if self.eat(b'/') {
            let den = self.integer()?;
            if den.is_zero() {
                return self.err("zero denominator");
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(text.parse().expect("digits parse as BigInt"))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }
}
