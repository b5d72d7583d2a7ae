//! Shared oracles for the integration suites. Everything here recomputes
//! expected values by routes independent of the library internals: closed
//! product formulas, denominator-grid enumeration, and basic-solution
//! feasibility for hull membership.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use nspec_core::fracpoly::{exp, Exp, FracPoly};

/// Spectrum of a sum of pure powers `x_1^{a_1} + … + x_n^{a_n}`:
/// the product `Π_k (Σ_{i=1}^{a_k−1} t^{i/a_k})`.
pub fn brieskorn_spectrum(exponents: &[i64]) -> FracPoly {
    let mut out = FracPoly::one();
    for &a in exponents {
        let factor = FracPoly::from_exponents((1..a).map(|i| exp(i, a)));
        out = out * factor;
    }
    out
}

/// Spectrum of the hyperbolic `T_{p,q,r}` singularity
/// `x^p + y^q + z^r + x y z` (with `1/p + 1/q + 1/r < 1`):
/// `{1, 2} ∪ {1 + j/p} ∪ {1 + j/q} ∪ {1 + j/r}`.
pub fn t_pqr_spectrum(p: i64, q: i64, r: i64) -> FracPoly {
    let mut out = FracPoly::term(exp(1, 1), 1) + FracPoly::term(exp(2, 1), 1);
    for &e in &[p, q, r] {
        for j in 1..e {
            out.add_term(exp(e + j, e), BigInt::one());
        }
    }
    out
}

/// Open/half-open parallelepiped polynomials of a simplex with the given
/// vertex list, by denominator-grid enumeration: scan scaled coordinates
/// `y ∈ [0,D)^m` over a common denominator `D` and keep the integral points.
pub fn grid_parallelepiped(vertices: &[Vec<i64>]) -> (FracPoly, FracPoly) {
    let m = vertices.len();
    let n = vertices[0].len();
    // Common denominator: |det| of some m independent coordinate rows.
    let d = pivot_det(vertices);
    assert!(d > 0, "vertices must be linearly independent");
    let mut q = FracPoly::zero();
    let mut qhat = FracPoly::zero();
    let mut y = vec![0i128; m];
    loop {
        // ν = Σ y_k ξ_k / D must be integral in every coordinate.
        let integral = (0..n).all(|c| {
            let s: i128 = (0..m).map(|k| y[k] * vertices[k][c] as i128).sum();
            s % d == 0
        });
        if integral {
            let grading = Exp::new(BigInt::from(y.iter().sum::<i128>()), BigInt::from(d));
            qhat.add_term(grading.clone(), BigInt::one());
            if y.iter().all(|&v| v > 0) {
                q.add_term(grading, BigInt::one());
            }
        }
        let mut i = 0;
        loop {
            if i == m {
                return (q, qhat);
            }
            if y[i] < d - 1 {
                y[i] += 1;
                break;
            }
            y[i] = 0;
            i += 1;
        }
    }
}

fn pivot_det(vertices: &[Vec<i64>]) -> i128 {
    let m = vertices.len();
    let n = vertices[0].len();
    let mut best = 0i128;
    // Try all m-subsets of coordinate rows.
    let mut rows: Vec<usize> = (0..m).collect();
    fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            subsets(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    subsets(n, m, 0, &mut Vec::new(), &mut all);
    for rowset in all {
        let mat: Vec<Vec<i128>> = rows
            .iter()
            .map(|&k| rowset.iter().map(|&c| vertices[k][c] as i128).collect())
            .collect();
        let d = det(&mat).abs();
        if d != 0 {
            best = d;
            break;
        }
    }
    rows.clear();
    best
}

pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => {
            let mut total = 0i128;
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                total += sign * m[0][j] * det(&minor);
            }
            total
        }
    }
}

/// Exact membership of a rational point in `conv(points) + ℝ₊ⁿ`, by
/// enumerating basic solutions of the feasibility system
/// `λ ≥ 0, Σλ = 1, Σ λ_i p_i ≤ target`.
pub fn in_hull_plus_orthant(points: &[Vec<i64>], target: &[BigRational]) -> bool {
    let m = points.len();
    let n = target.len();
    // Constraint list: the normalization row is always active; pick m−1 more
    // active constraints from the λ_i = 0 rows and the n inequality rows.
    // Constraint indices: 0..m are λ_i = 0; m..m+n are Σλ p[..][c] = target.
    let total = m + n;
    let mut choice: Vec<usize> = Vec::new();
    fn rec(
        total: usize,
        need: usize,
        start: usize,
        choice: &mut Vec<usize>,
        points: &[Vec<i64>],
        target: &[BigRational],
    ) -> bool {
        if choice.len() == need {
            return check_basic(choice, points, target);
        }
        for i in start..total {
            choice.push(i);
            if rec(total, need, i + 1, choice, points, target) {
                choice.pop();
                return true;
            }
            choice.pop();
        }
        false
    }
    if m == 1 {
        // Single point: plain domination.
        return (0..n).all(|c| BigRational::from_integer(points[0][c].into()) <= target[c]);
    }
    rec(total, m - 1, 0, &mut choice, points, target)
}

/// Solve the m×m system given the active set and test feasibility.
fn check_basic(active: &[usize], points: &[Vec<i64>], target: &[BigRational]) -> bool {
    let m = points.len();
    let n = target.len();
    // Rows: normalization + active constraints. Unknowns: λ_0..λ_{m−1}.
    let mut a: Vec<Vec<BigRational>> = Vec::new();
    let mut b: Vec<BigRational> = Vec::new();
    a.push(vec![BigRational::one(); m]);
    b.push(BigRational::one());
    for &c in active {
        if c < m {
            let mut row = vec![BigRational::zero(); m];
            row[c] = BigRational::one();
            a.push(row);
            b.push(BigRational::zero());
        } else {
            let coord = c - m;
            a.push(
                (0..m)
                    .map(|i| BigRational::from_integer(points[i][coord].into()))
                    .collect(),
            );
            b.push(target[coord].clone());
        }
    }
    let Some(lambda) = solve_square(&a, &b) else {
        return false;
    };
    if lambda.iter().any(|l| l.is_negative()) {
        return false;
    }
    // All original inequalities must hold.
    for c in 0..n {
        let mut s = BigRational::zero();
        for i in 0..m {
            s += &lambda[i] * BigRational::from_integer(points[i][c].into());
        }
        if s > target[c] {
            return false;
        }
    }
    true
}

fn solve_square(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = a[0].len();
    if rows < cols {
        return None;
    }
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivot_row = 0;
    for c in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| !m[r][c].is_zero()) else {
            return None;
        };
        m.swap(pivot_row, p);
        let inv = m[pivot_row][c].clone();
        for x in m[pivot_row].iter_mut() {
            *x /= inv.clone();
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for c2 in 0..=cols {
                    let sub = &m[pivot_row][c2] * &f;
                    m[r][c2] -= sub;
                }
            }
        }
        pivot_row += 1;
    }
    // Consistency of any remaining rows.
    for r in pivot_row..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    Some((0..cols).map(|c| m[c][cols].clone()).collect())
}

/// Rational point constructor for hull tests.
pub fn rat_point(coords: &[i64]) -> Vec<BigRational> {
    coords
        .iter()
        .map(|&c| BigRational::from_integer(c.into()))
        .collect()
}

/// Expected spectrum polynomial from a list of `(numerator, denominator,
/// multiplicity)` triples.
pub fn poly(terms: &[(i64, i64, i64)]) -> FracPoly {
    let mut out = FracPoly::zero();
    for &(n, d, c) in terms {
        out.add_term(exp(n, d), BigInt::from(c));
    }
    out
}
