//! Exact integer linear algebra on small matrices (ambient dimension ≤ 5).
//!
//! Everything here runs in `i128`. Coordinates are bounded by the parse-time
//! exponent cap, so cofactor and Bareiss intermediates stay far below the
//! `i128` range for the matrix sizes this crate produces.

use num_integer::Integer;

/// gcd of a slice, 0 for the empty/zero slice.
pub fn gcd_all(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, &x| g.gcd(&x))
}

/// Divide a vector by the gcd of its entries (zero vector unchanged).
pub fn primitive(mut v: Vec<i128>) -> Vec<i128> {
    let g = gcd_all(&v);
    if g > 1 {
        for x in &mut v {
            *x /= g;
        }
    }
    v
}

/// Determinant by cofactor expansion; fine for n ≤ 5.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
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

/// Rank by fraction-free Bareiss elimination; intermediate entries stay
/// bounded by minor determinants.
pub fn rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut r = 0;
    let mut prev = 1i128;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c];
        for i in r + 1..nrows {
            for j in 0..ncols {
                if j == c {
                    continue;
                }
                m[i][j] = (m[i][j] * pivot - m[i][c] * m[r][j]) / prev;
            }
            m[i][c] = 0;
        }
        prev = pivot;
        r += 1;
        if r == nrows {
            break;
        }
    }
    r
}

/// Null-space normal of `k` vectors in `k+1` dimensions via cofactors:
/// `w_i = (−1)^i · det(matrix with column i removed)`. Returns the zero
/// vector when the input has rank < k.
pub fn cofactor_normal(rows: &[Vec<i128>]) -> Vec<i128> {
    let k = rows.len();
    let dim = k + 1;
    let mut w = vec![0i128; dim];
    for i in 0..dim {
        let minor: Vec<Vec<i128>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != i)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let sign = if i % 2 == 0 { 1 } else { -1 };
        w[i] = sign * det(&minor);
    }
    w
}

/// Adjugate of a square matrix: `adj(m) · m = det(m) · I`.
fn adjugate(m: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = m.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i128>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c]).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = sign * det(&minor);
        }
    }
    adj
}

/// Precomputed exact solver for `M·x = b` where `M` is `nrows × ncols` with
/// full column rank. Solutions come back as `(numerators, denominator)` with
/// positive denominator; `None` means the system is inconsistent.
pub struct ExactSolver {
    matrix: Vec<Vec<i128>>,
    pivot_rows: Vec<usize>,
    adj: Vec<Vec<i128>>,
    /// Determinant of the pivot submatrix, normalized positive.
    pub det: i128,
}

impl ExactSolver {
    /// Returns `None` when the columns are linearly dependent.
    pub fn new(matrix: Vec<Vec<i128>>) -> Option<Self> {
        let nrows = matrix.len();
        let ncols = if nrows == 0 { 0 } else { matrix[0].len() };
        if ncols == 0 {
            return Some(ExactSolver {
                matrix,
                pivot_rows: Vec::new(),
                adj: Vec::new(),
                det: 1,
            });
        }
        let pivot_rows = independent_rows(&matrix, ncols)?;
        let sub: Vec<Vec<i128>> = pivot_rows.iter().map(|&r| matrix[r].clone()).collect();
        let mut d = det(&sub);
        debug_assert!(d != 0);
        let mut adj = adjugate(&sub);
        if d < 0 {
            d = -d;
            for row in &mut adj {
                for x in row.iter_mut() {
                    *x = -*x;
                }
            }
        }
        Some(ExactSolver {
            matrix,
            pivot_rows,
            adj,
            det: d,
        })
    }

    /// Solve for the scaled solution `y = det · x`; checks consistency on all
    /// non-pivot rows.
    pub fn solve_scaled(&self, b: &[i128]) -> Option<Vec<i128>> {
        let ncols = self.adj.len();
        let mut y = vec![0i128; ncols];
        for i in 0..ncols {
            let mut acc = 0i128;
            for (j, &r) in self.pivot_rows.iter().enumerate() {
                acc += self.adj[i][j] * b[r];
            }
            y[i] = acc;
        }
        for (r, row) in self.matrix.iter().enumerate() {
            if self.pivot_rows.contains(&r) {
                continue;
            }
            let lhs: i128 = row.iter().zip(&y).map(|(&m, &v)| m * v).sum();
            if lhs != self.det * b[r] {
                return None;
            }
        }
        Some(y)
    }
}

/// Choose `ncols` linearly independent rows, if they exist.
fn independent_rows(matrix: &[Vec<i128>], ncols: usize) -> Option<Vec<usize>> {
    let mut chosen: Vec<usize> = Vec::with_capacity(ncols);
    for r in 0..matrix.len() {
        if chosen.len() == ncols {
            break;
        }
        let mut trial: Vec<Vec<i128>> = chosen.iter().map(|&i| matrix[i].clone()).collect();
        trial.push(matrix[r].clone());
        if rank(&trial) == trial.len() {
            chosen.push(r);
        }
    }
    (chosen.len() == ncols).then_some(chosen)
}

/// Basis of the saturation `ℤ^n ∩ ℚ-span(rows)`.
///
/// Diagonalize by unimodular row and column operations; column operations are
/// mirrored inversely on a tracking matrix `W` so that the row lattice of the
/// input equals the lattice spanned by `sᵢ·wᵢ`, making `{wᵢ : sᵢ ≠ 0}` a basis
/// of the saturation. This is the elementary-divisor (Smith form) routine the
/// lattice-distance computation relies on.
pub fn saturation_basis(rows: &[Vec<i128>], ncols: usize) -> Vec<Vec<i128>> {
    let mut b: Vec<Vec<i128>> = rows.to_vec();
    let nrows = b.len();
    let mut w: Vec<Vec<i128>> = (0..ncols)
        .map(|i| (0..ncols).map(|j| i128::from(i == j)).collect())
        .collect();
    if nrows == 0 {
        return Vec::new();
    }

    let mut pivot = 0usize;
    while pivot < nrows.min(ncols) {
        // Find the nonzero entry of smallest magnitude in the working block.
        let mut best: Option<(usize, usize)> = None;
        for i in pivot..nrows {
            for j in pivot..ncols {
                if b[i][j] != 0
                    && best.is_none_or(|(bi, bj): (usize, usize)| {
                        b[i][j].abs() < b[bi][bj].abs()
                    })
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        b.swap(pivot, bi);
        if bj != pivot {
            for row in &mut b {
                row.swap(pivot, bj);
            }
            w.swap(pivot, bj);
        }
        let mut clean = true;
        // Row reduction (no tracking needed).
        for i in pivot + 1..nrows {
            if b[i][pivot] != 0 {
                let q = b[i][pivot].div_euclid(b[pivot][pivot]);
                if q != 0 {
                    for j in 0..ncols {
                        b[i][j] -= q * b[pivot][j];
                    }
                }
                if b[i][pivot] != 0 {
                    clean = false;
                }
            }
        }
        // Column reduction: col_j -= q·col_pivot mirrors as
        // row_pivot(W) += q·row_j(W).
        for j in pivot + 1..ncols {
            if b[pivot][j] != 0 {
                let q = b[pivot][j].div_euclid(b[pivot][pivot]);
                if q != 0 {
                    for row in b.iter_mut() {
                        row[j] -= q * row[pivot];
                    }
                    for k in 0..ncols {
                        let add = q * w[j][k];
                        w[pivot][k] += add;
                    }
                }
                if b[pivot][j] != 0 {
                    clean = false;
                }
            }
        }
        if clean {
            pivot += 1;
        }
    }

    let rank = (0..nrows.min(ncols)).take_while(|&i| b[i][i] != 0).count();
    w.truncate(rank);
    w
}

/// Index `[L : L']` of the sublattice spanned by `sub_rows` inside the
/// lattice spanned by `basis_rows` (both full rank `m`). Panics if the
/// sub-rows do not lie in the lattice of the basis rows — callers guarantee
/// containment.
pub fn lattice_index(basis_rows: &[Vec<i128>], sub_rows: &[Vec<i128>]) -> i128 {
    let m = basis_rows.len();
    assert_eq!(sub_rows.len(), m);
    if m == 0 {
        return 1;
    }
    // Solve xᵀ·basis = sub row by row: columns of the system are basis rows.
    let ncols = basis_rows[0].len();
    let matrix: Vec<Vec<i128>> = (0..ncols)
        .map(|c| basis_rows.iter().map(|row| row[c]).collect())
        .collect();
    let solver = ExactSolver::new(matrix).expect("basis rows are independent");
    let mut coords: Vec<Vec<i128>> = Vec::with_capacity(m);
    for sub in sub_rows {
        let y = solver
            .solve_scaled(sub)
            .expect("sublattice vector outside the span of the basis");
        let row: Vec<i128> = y
            .iter()
            .map(|&v| {
                assert!(
                    v % solver.det == 0,
                    "sublattice vector is not an integer combination of the basis"
                );
                v / solver.det
            })
            .collect();
        coords.push(row);
    }
    det(&coords).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cofactor_normal_is_orthogonal() {
        let rows = vec![vec![3, 0, 0, 1], vec![0, 2, 1, 1], vec![0, 0, 4, 1]];
        let w = cofactor_normal(&rows);
        for r in &rows {
            let dot: i128 = r.iter().zip(&w).map(|(a, b)| a * b).sum();
            assert_eq!(dot, 0);
        }
    }

    #[test]
    fn solver_detects_inconsistency() {
        // Columns (1,0,1) and (0,1,1); target (1,1,3) is off the plane.
        let m = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        let s = ExactSolver::new(m).unwrap();
        assert_eq!(s.solve_scaled(&[1, 1, 2]), Some(vec![1, 1]));
        assert_eq!(s.solve_scaled(&[1, 1, 3]), None);
    }

    #[test]
    fn saturation_of_scaled_vector() {
        // span{(2,4,6)} ∩ ℤ³ is generated by (1,2,3)
        let basis = saturation_basis(&[vec![2, 4, 6]], 3);
        assert_eq!(basis.len(), 1);
        assert_eq!(primitive(basis[0].clone()), vec![1, 2, 3].into_iter().map(i128::from).collect::<Vec<_>>());
    }

    #[test]
    fn saturation_of_plane() {
        // span{(3,0,0),(0,2,1)} ∩ ℤ³ = {(a,2c,c)} has index-1 basis of rank 2
        let rows = vec![vec![3, 0, 0], vec![0, 2, 1]];
        let sat = saturation_basis(&rows, 3);
        assert_eq!(sat.len(), 2);
        // Both original rows are integer combinations of the saturation,
        // and the index of the row lattice inside the saturation is 3.
        assert_eq!(lattice_index(&sat, &rows), 3);
    }

    #[test]
    fn lattice_index_gcd_case() {
        // ⟨(2,4,6)⟩ inside its saturation ⟨(1,2,3)⟩ has index 2
        let sat = saturation_basis(&[vec![2, 4, 6]], 3);
        assert_eq!(lattice_index(&sat, &[vec![2, 4, 6]]), 2);
    }
}
