//! Per-face lattice polynomials and invariants.
//!
//! For a compact simplicial face σ with vertices ξ₀,…,ξ_d, every lattice
//! point of the parallelepiped spanned by the ξ_k has a unique expansion
//! `ν = Σ c_k ξ_k` (the vertices are linearly independent because the affine
//! span of a compact face avoids the origin). The grading never needs an
//! explicit linear form: the exponent of ν is `Σ c_k`, which agrees with any
//! linear form taking the value 1 on σ.
//!
//! * `q_σ`  sums `t^{Σc_k}` over interior points, all `c_k ∈ (0,1)`;
//! * `q̂_σ` sums over the half-open box, all `c_k ∈ [0,1)`;
//! * `q_∅ = q̂_∅ = 1`.
//!
//! The lattice distance δ_σ is the index of the subgroup generated by the
//! lattice points of the affine span inside the lattice of the linear span,
//! computed by the elementary-divisor routine in [`crate::linalg`]. For a
//! vertex it collapses to the gcd of the coordinates; for an ambient facet it
//! equals the primitive facet offset, which is asserted as a cross-check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fracpoly::{Coeff, Exp, FracPoly};
use crate::linalg::{self, ExactSolver};
use crate::newton::{Face, FaceFilter, NewtonPolyhedron};

/// Guard against runaway box scans; desk-scale inputs stay far below this.
const MAX_SCAN_VOLUME: u128 = 200_000_000;

/// Bundle of everything the formulas consume for one face.
#[derive(Clone, Debug)]
pub struct FaceInvariants {
    /// Lattice distance δ_σ.
    pub delta: i64,
    /// `|det|` of the vertex matrix, for simplicial faces of dimension n−1.
    pub det: Option<i64>,
    /// μ(σ) = det(σ)/δ_σ.
    pub mu: Option<i64>,
    pub q: FracPoly,
    pub qhat: FracPoly,
    /// μ(σ)·Σ_{k<δ} t^{k/δ}, for (n−1)-dimensional faces.
    pub s: Option<FracPoly>,
    /// Lattice length `l(σ) = |ℤⁿ ∩ σ| − 1`, for 1-dimensional faces.
    pub l: Option<i64>,
    /// Number of interior compact 1-faces through this vertex.
    pub beta: Option<i64>,
}

/// Open and half-open parallelepiped generating polynomials `(q_σ, q̂_σ)`.
pub fn face_parallelepiped(poly: &NewtonPolyhedron, face: &Face) -> Result<(FracPoly, FracPoly)> {
    if face.is_empty_face() {
        return Ok((FracPoly::one(), FracPoly::one()));
    }
    if !face.compact {
        return Err(Error::NotCompact);
    }
    if face.vertices.len() as i64 != face.dim + 1 {
        return Err(Error::NotSimplicial {
            face: format!("{:?}", vertex_coords(poly, face)),
            vertices: face.vertices.len(),
            dim: face.dim,
        });
    }

    let verts = vertex_coords(poly, face);
    let n = poly.dim();

    // Columns of the system are the vertices.
    let matrix: Vec<Vec<i128>> = (0..n)
        .map(|r| verts.iter().map(|v| v[r] as i128).collect())
        .collect();
    let solver = ExactSolver::new(matrix)
        .ok_or_else(|| Error::Invariant("compact face with dependent vertices".into()))?;
    let det = solver.det;

    // Scan the integer box bounded by the componentwise vertex sum.
    let bounds: Vec<i128> = (0..n)
        .map(|r| verts.iter().map(|v| v[r] as i128).sum())
        .collect();
    let volume: u128 = bounds.iter().map(|&b| (b as u128) + 1).product();
    if volume > MAX_SCAN_VOLUME {
        return Err(Error::ScanTooLarge { volume });
    }

    let mut q = FracPoly::zero();
    let mut qhat = FracPoly::zero();
    let mut nu = vec![0i128; n];
    loop {
        if let Some(y) = solver.solve_scaled(&nu) {
            let half_open = y.iter().all(|&c| 0 <= c && c < det);
            if half_open {
                let degree_num: i128 = y.iter().sum();
                let alpha = Exp::new(BigInt::from(degree_num), BigInt::from(det));
                qhat.add_term(alpha.clone(), Coeff::one());
                if y.iter().all(|&c| c > 0) {
                    q.add_term(alpha, Coeff::one());
                }
            }
        }
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == n {
                return Ok((q, qhat));
            }
            if nu[i] < bounds[i] {
                nu[i] += 1;
                break;
            }
            nu[i] = 0;
            i += 1;
        }
    }
}

/// `q_σ` alone (open parallelepiped).
pub fn face_q(poly: &NewtonPolyhedron, face: &Face) -> Result<FracPoly> {
    Ok(face_parallelepiped(poly, face)?.0)
}

/// Lattice points of the open parallelepiped together with their gradings,
/// `(ν, Σ c_k)` for `ν = Σ c_k ξ_k`, `c_k ∈ (0,1)`. Used where the points
/// themselves matter, not just the generating polynomial.
pub fn face_open_points(
    poly: &NewtonPolyhedron,
    face: &Face,
) -> Result<Vec<(Vec<i64>, Exp)>> {
    if face.is_empty_face() {
        return Ok(Vec::new());
    }
    if !face.compact {
        return Err(Error::NotCompact);
    }
    if face.vertices.len() as i64 != face.dim + 1 {
        return Err(Error::NotSimplicial {
            face: format!("{:?}", vertex_coords(poly, face)),
            vertices: face.vertices.len(),
            dim: face.dim,
        });
    }
    let verts = vertex_coords(poly, face);
    let n = poly.dim();
    let matrix: Vec<Vec<i128>> = (0..n)
        .map(|r| verts.iter().map(|v| v[r] as i128).collect())
        .collect();
    let solver = ExactSolver::new(matrix)
        .ok_or_else(|| Error::Invariant("compact face with dependent vertices".into()))?;
    let det = solver.det;
    let bounds: Vec<i128> = (0..n)
        .map(|r| verts.iter().map(|v| v[r] as i128).sum())
        .collect();
    let volume: u128 = bounds.iter().map(|&b| (b as u128) + 1).product();
    if volume > MAX_SCAN_VOLUME {
        return Err(Error::ScanTooLarge { volume });
    }
    let mut out = Vec::new();
    let mut nu = vec![0i128; n];
    loop {
        if let Some(y) = solver.solve_scaled(&nu) {
            if y.iter().all(|&c| 0 < c && c < det) {
                let degree_num: i128 = y.iter().sum();
                let alpha = Exp::new(BigInt::from(degree_num), BigInt::from(det));
                out.push((nu.iter().map(|&x| x as i64).collect(), alpha));
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            if nu[i] < bounds[i] {
                nu[i] += 1;
                break;
            }
            nu[i] = 0;
            i += 1;
        }
    }
}

/// `q̂_σ` alone (half-open parallelepiped).
pub fn face_qhat(poly: &NewtonPolyhedron, face: &Face) -> Result<FracPoly> {
    Ok(face_parallelepiped(poly, face)?.1)
}

/// Lattice distance δ_σ of a compact face.
pub fn face_delta(poly: &NewtonPolyhedron, face: &Face) -> Result<i64> {
    if face.is_empty_face() {
        return Ok(1);
    }
    if !face.compact {
        return Err(Error::NotCompact);
    }
    let verts = vertex_coords(poly, face);
    let n = poly.dim();
    let rows: Vec<Vec<i128>> = verts
        .iter()
        .map(|v| v.iter().map(|&x| x as i128).collect())
        .collect();

    // Lattice of the linear span.
    let linear_basis = linalg::saturation_basis(&rows, n);

    // Subgroup generated by the lattice points of the affine span: one base
    // point plus the saturated direction lattice.
    let mut sub_rows: Vec<Vec<i128>> = vec![rows[0].clone()];
    if rows.len() > 1 {
        let dirs: Vec<Vec<i128>> = rows[1..]
            .iter()
            .map(|r| r.iter().zip(&rows[0]).map(|(a, b)| a - b).collect())
            .collect();
        sub_rows.extend(linalg::saturation_basis(&dirs, n));
    }
    if sub_rows.len() != linear_basis.len() {
        return Err(Error::Invariant(
            "affine lattice rank does not match linear span rank".into(),
        ));
    }
    let delta = linalg::lattice_index(&linear_basis, &sub_rows);
    let delta = i64::try_from(delta)
        .map_err(|_| Error::Invariant("lattice distance exceeds machine range".into()))?;

    // Cross-checks: gcd shortcut for vertices, primitive facet offset for
    // ambient (n−1)-faces.
    if face.dim == 0 {
        let g = linalg::gcd_all(&rows[0]);
        debug_assert_eq!(delta as i128, g);
    }
    if face.dim == poly.dim() as i64 - 1 {
        if let Some(&fid) = face.facet_ids.first() {
            debug_assert_eq!(delta, poly.facets()[fid].offset);
        }
    }
    Ok(delta)
}

/// `|det|` of the square vertex matrix of a simplicial face of dimension
/// n−1 in its ambient space.
pub fn face_det(poly: &NewtonPolyhedron, face: &Face) -> Result<i64> {
    let n = poly.dim();
    if face.dim != n as i64 - 1 {
        return Err(Error::WrongFaceDimension {
            expected: n as i64 - 1,
            got: face.dim,
        });
    }
    if face.vertices.len() != n {
        return Err(Error::NotSimplicial {
            face: format!("{:?}", vertex_coords(poly, face)),
            vertices: face.vertices.len(),
            dim: face.dim,
        });
    }
    let m: Vec<Vec<i128>> = vertex_coords(poly, face)
        .iter()
        .map(|v| v.iter().map(|&x| x as i128).collect())
        .collect();
    let d = linalg::det(&m).abs();
    i64::try_from(d).map_err(|_| Error::Invariant("determinant exceeds machine range".into()))
}

/// `s_σ(t) = μ(σ) Σ_{k=0}^{δ−1} t^{k/δ}` for a compact simplicial face of
/// dimension n−1.
pub fn face_s(poly: &NewtonPolyhedron, face: &Face) -> Result<FracPoly> {
    if !face.compact {
        return Err(Error::NotCompact);
    }
    let det = face_det(poly, face)?;
    let delta = face_delta(poly, face)?;
    if det % delta != 0 {
        return Err(Error::Invariant(format!(
            "det {det} not divisible by lattice distance {delta}"
        )));
    }
    let mu = det / delta;
    let mut s = FracPoly::zero();
    for k in 0..delta {
        s.add_term(Exp::new(BigInt::from(k), BigInt::from(delta)), Coeff::from(mu));
    }
    Ok(s)
}

/// Lattice length of a 1-dimensional face: lattice points on the segment
/// minus one, i.e. the gcd of the primitive direction.
pub fn face_lattice_length(poly: &NewtonPolyhedron, face: &Face) -> Result<i64> {
    if face.dim != 1 {
        return Err(Error::WrongFaceDimension {
            expected: 1,
            got: face.dim,
        });
    }
    let verts = vertex_coords(poly, face);
    let dir: Vec<i128> = verts[1]
        .iter()
        .zip(verts[0].iter())
        .map(|(&a, &b)| (a - b) as i128)
        .collect();
    Ok(linalg::gcd_all(&dir) as i64)
}

/// Number of interior compact 1-faces whose closure contains the vertex.
pub fn vertex_beta(poly: &NewtonPolyhedron, face: &Face) -> Result<i64> {
    if face.dim != 0 {
        return Err(Error::WrongFaceDimension {
            expected: 0,
            got: face.dim,
        });
    }
    Ok(poly
        .faces_of_dim(1, FaceFilter::InteriorCompact)
        .into_iter()
        .filter(|e| poly.face_le(face, e))
        .count() as i64)
}

/// All invariants applicable to one compact face.
pub fn face_lattice_invariants(poly: &NewtonPolyhedron, face: &Face) -> Result<FaceInvariants> {
    let (q, qhat) = face_parallelepiped(poly, face)?;
    let delta = face_delta(poly, face)?;
    let is_top = face.dim == poly.dim() as i64 - 1;
    let det = if is_top { Some(face_det(poly, face)?) } else { None };
    let mu = det.map(|d| d / delta);
    let s = if is_top { Some(face_s(poly, face)?) } else { None };
    let l = if face.dim == 1 {
        Some(face_lattice_length(poly, face)?)
    } else {
        None
    };
    let beta = if face.dim == 0 {
        Some(vertex_beta(poly, face)?)
    } else {
        None
    };
    Ok(FaceInvariants {
        delta,
        det,
        mu,
        q,
        qhat,
        s,
        l,
        beta,
    })
}

/// Per-polyhedron cache of `(q, q̂, δ)` for every compact face, indexed by
/// face id. Built once by the spectrum pipelines so repeated box scans are
/// avoided.
pub struct FaceTable {
    q: Vec<Option<FracPoly>>,
    qhat: Vec<Option<FracPoly>>,
    delta: Vec<Option<i64>>,
}

impl FaceTable {
    pub fn build(poly: &NewtonPolyhedron) -> Result<FaceTable> {
        let count = poly.faces().len();
        let mut q = vec![None; count];
        let mut qhat = vec![None; count];
        let mut delta = vec![None; count];
        for face in poly.faces() {
            if !face.compact {
                continue;
            }
            let (fq, fqhat) = face_parallelepiped(poly, face)?;
            q[face.id] = Some(fq);
            qhat[face.id] = Some(fqhat);
            delta[face.id] = Some(face_delta(poly, face)?);
        }
        Ok(FaceTable { q, qhat, delta })
    }

    pub fn q(&self, face: &Face) -> &FracPoly {
        self.q[face.id].as_ref().expect("compact face")
    }

    pub fn qhat(&self, face: &Face) -> &FracPoly {
        self.qhat[face.id].as_ref().expect("compact face")
    }

    pub fn delta(&self, face: &Face) -> i64 {
        self.delta[face.id].expect("compact face")
    }

    /// Eigenvalue classes `k/δ_σ mod 1` over all compact faces, sorted.
    pub fn eigen_classes(&self) -> Vec<BigRational> {
        let mut set = std::collections::BTreeSet::new();
        for d in self.delta.iter().flatten() {
            for k in 0..*d {
                set.insert(BigRational::new(BigInt::from(k), BigInt::from(*d)));
            }
        }
        set.into_iter().collect()
    }
}

fn vertex_coords<'a>(poly: &'a NewtonPolyhedron, face: &Face) -> Vec<&'a Vec<i64>> {
    poly.face_points(face)
}
