//! Non-isolated surface case: supports whose gap set `I_f` is nonempty.
//!
//! The generic linear form `ℓ` enters only through its polyhedron:
//! `Γ₊(f + ℓ^r)` is modeled as `conv(Γ₊(f) ∪ {r·e_i : i ∈ I_f})`. Every
//! lattice point of degree `r` lies in the convex hull of the axial points
//! `r·e_i`, so at the polyhedral level a generic form of degree `r`
//! contributes exactly the axial vertices — nothing else of the form
//! survives the hull.
//!
//! "r sufficiently large" is realized by stabilization: start at
//! `1 + 3·(max coordinate sum)` and double until the vertex 2-face counts
//! and the boundary-face bookkeeping agree for two consecutive values.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::facepoly::{self, FaceTable};
use crate::fracpoly::{Coeff, Exp, FracPoly};
use crate::linalg::ExactSolver;
use crate::newton::{Face, FaceFilter, NewtonPolyhedron};
use crate::polyparse::Support;
use crate::spectrum;

/// Transversal-slice data for one axis in the gap set.
#[derive(Clone, Debug)]
pub struct SliceData {
    /// 0-based axis index in `I_f`.
    pub axis: usize,
    /// Support of the slice in n−1 variables (coordinate `axis` forgotten).
    pub support: Support,
    /// Milnor number of the slice; may be zero for a smooth transversal type.
    pub mu: BigInt,
    /// Slice spectral numbers, weakly increasing, `mu` of them.
    pub alphas: Vec<Exp>,
    /// Twist exponents in `[0,1)`, parallel to `alphas`; filled by
    /// [`slice_beta`].
    pub betas: Option<Vec<Exp>>,
}

/// The stabilized augmented polyhedron `Γ₊(f + ℓ^r)` and the bookkeeping
/// read off it.
#[derive(Clone, Debug)]
pub struct AugmentedData {
    /// Accepted exponent; doubling it changes none of the outputs below.
    pub r: i64,
    pub support: Support,
    pub polyhedron: NewtonPolyhedron,
    /// `(axis, r·e_axis)` for each axis in the gap set.
    pub new_vertices: Vec<(usize, Vec<i64>)>,
    /// For each vertex of `Γ₊(f)` (by coordinates): the number of
    /// 2-dimensional faces of the augmented polyhedron containing it.
    pub gamma_tilde: BTreeMap<Vec<i64>, usize>,
    /// Boundary compact faces of `Γ₊(f)`, as (sorted vertex coordinates,
    /// axis) pairs — a multiset: one entry per recession direction whose
    /// augmented face the entry came from.
    pub bcf: Vec<(Vec<Vec<i64>>, usize)>,
}

type RState = (BTreeMap<Vec<i64>, usize>, Vec<(Vec<Vec<i64>>, usize)>);

/// The pairwise coordinate-plane condition: for every pair of axes the
/// support meets the plane they span. For a three-variable support this is
/// exactly the convenience of every transversal slice.
pub fn plane_condition(support: &Support) -> Result<()> {
    let n = support.dim();
    for i in 0..n {
        for j in i + 1..n {
            let ok = support.points().iter().any(|p| {
                p.iter()
                    .enumerate()
                    .all(|(k, &x)| k == i || k == j || x == 0)
            });
            if !ok {
                return Err(Error::PlaneCondition { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(())
}

fn axial_point(n: usize, axis: usize, r: i64) -> Vec<i64> {
    let mut p = vec![0i64; n];
    p[axis] = r;
    p
}

fn augmented_support(support: &Support, gaps: &[usize], r: i64) -> Support {
    let mut pts = support.points().to_vec();
    for &i in gaps {
        pts.push(axial_point(support.dim(), i, r));
    }
    Support::from_points(support.dim(), pts).expect("augmented support is valid")
}

fn state_at(
    support: &Support,
    orig: &NewtonPolyhedron,
    gaps: &[usize],
    r: i64,
) -> Result<(Support, NewtonPolyhedron, RState)> {
    let aug_support = augmented_support(support, gaps, r);
    let aug = NewtonPolyhedron::build(&aug_support);
    let new_coords: BTreeMap<Vec<i64>, usize> = gaps
        .iter()
        .map(|&i| (axial_point(support.dim(), i, r), i))
        .collect();

    // Every added point must come out as a vertex.
    for coords in new_coords.keys() {
        let found = aug
            .vertices()
            .any(|v| v == coords);
        if !found {
            return Err(Error::Invariant(format!(
                "axial point {coords:?} is not a vertex of the augmented polyhedron"
            )));
        }
    }

    // 2-face counts for the original vertices.
    let mut gamma_tilde = BTreeMap::new();
    for v in orig.faces_of_dim(0, FaceFilter::Compact) {
        let coords = orig.face_points(v)[0].clone();
        let aug_vertex = aug
            .faces_of_dim(0, FaceFilter::Compact)
            .into_iter()
            .find(|f| aug.face_points(f)[0] == &coords)
            .ok_or_else(|| {
                Error::Invariant(format!(
                    "original vertex {coords:?} is not a vertex of the augmented polyhedron"
                ))
            })?;
        let count = aug.vertex_gamma(aug_vertex)?;
        gamma_tilde.insert(coords, count);
    }

    // New interior compact faces of dimension 1 and 2, mapped back to the
    // opposite face of the original polyhedron.
    let mut bcf: Vec<(Vec<Vec<i64>>, usize)> = Vec::new();
    for face in aug.faces() {
        if face.is_empty_face() || !face.compact || !face.interior {
            continue;
        }
        if face.dim != 1 && face.dim != 2 {
            continue;
        }
        let coords: Vec<Vec<i64>> = aug.face_points(face).into_iter().cloned().collect();
        let fresh: Vec<usize> = coords
            .iter()
            .filter_map(|c| new_coords.get(c).copied())
            .collect();
        match fresh.len() {
            0 => continue,
            1 => {}
            _ => {
                return Err(Error::Invariant(format!(
                    "compact face contains two axial vertices at r = {r}; the plane condition should exclude this"
                )))
            }
        }
        let axis = fresh[0];
        let mut tau_coords: Vec<Vec<i64>> = coords
            .into_iter()
            .filter(|c| !new_coords.contains_key(c))
            .collect();
        tau_coords.sort();
        // The opposite face must exist in the original polyhedron.
        let tau = find_face_by_coords(orig, &tau_coords).ok_or_else(|| {
            Error::Invariant(format!(
                "opposite face {tau_coords:?} of an augmented face is not a face of the original polyhedron"
            ))
        })?;
        if tau.dim != face.dim - 1 {
            return Err(Error::Invariant(format!(
                "opposite face {tau_coords:?} has dimension {} but the augmented face has dimension {}",
                tau.dim, face.dim
            )));
        }
        bcf.push((tau_coords, axis));
    }
    bcf.sort();

    Ok((aug_support, aug, (gamma_tilde, bcf)))
}

fn find_face_by_coords<'a>(
    poly: &'a NewtonPolyhedron,
    coords: &[Vec<i64>],
) -> Option<&'a Face> {
    poly.compact_faces().find(|f| {
        let mut fc: Vec<Vec<i64>> = poly.face_points(f).into_iter().cloned().collect();
        fc.sort();
        fc == coords
    })
}

/// Build `Γ₊(f + ℓ^r)` for increasing `r` until the outputs stabilize.
pub fn augment(support: &Support) -> Result<AugmentedData> {
    if support.dim() != 3 {
        return Err(Error::WrongDimension {
            expected: "3".into(),
            got: support.dim(),
        });
    }
    let gaps = support.axis_gaps();
    if gaps.is_empty() {
        return Err(Error::Convenient);
    }
    plane_condition(support)?;

    let orig = NewtonPolyhedron::build(support);
    let max_sum: i64 = support
        .points()
        .iter()
        .map(|p| p.iter().sum::<i64>())
        .max()
        .unwrap_or(1);
    let mut r = 1 + 3 * max_sum;
    let (mut cur_support, mut cur_poly, mut cur_state) = state_at(support, &orig, &gaps, r)?;
    for _ in 0..12 {
        let next_r = 2 * r;
        let (next_support, next_poly, next_state) = state_at(support, &orig, &gaps, next_r)?;
        if next_state == cur_state {
            let (gamma_tilde, bcf) = cur_state;
            let aug = AugmentedData {
                r,
                support: cur_support,
                polyhedron: cur_poly,
                new_vertices: gaps
                    .iter()
                    .map(|&i| (i, axial_point(support.dim(), i, r)))
                    .collect(),
                gamma_tilde,
                bcf,
            };
            aug.polyhedron.require_simplicial()?;
            return Ok(aug);
        }
        r = next_r;
        cur_support = next_support;
        cur_poly = next_poly;
        cur_state = next_state;
    }
    Err(Error::Invariant(
        "augmented polyhedron failed to stabilize after 12 doublings".into(),
    ))
}

/// The boundary-compact-face multiset resolved against the original
/// polyhedron: `(face, axis)` pairs.
pub fn bcf_enumerate<'a>(
    orig: &'a NewtonPolyhedron,
    aug: &AugmentedData,
) -> Result<Vec<(&'a Face, usize)>> {
    aug.bcf
        .iter()
        .map(|(coords, axis)| {
            find_face_by_coords(orig, coords)
                .map(|f| (f, *axis))
                .ok_or_else(|| {
                    Error::Invariant(format!("boundary face {coords:?} not found"))
                })
        })
        .collect()
}

/// Report wrapper around the surface Hodge spectrum.
#[derive(Clone, Debug)]
pub struct SurfaceReport {
    pub spectrum: FracPoly,
    pub augmented_r: i64,
    pub gamma_tilde: BTreeMap<Vec<i64>, usize>,
    pub bcf: Vec<(Vec<Vec<i64>>, usize)>,
    /// True when reading the boundary faces as a plain set (instead of the
    /// axis-indexed multiset) would change the spectrum; the multiset value
    /// is the one reported.
    pub bcf_set_reading_differs: bool,
    pub warnings: Vec<String>,
}

/// Hodge spectrum of a non-isolated three-variable support:
///
/// ```text
/// Sp' = Σ_{ICF} (Σ_{j<c_σ} t^j) q_σ + |ICF⁰| (t + t²)
///     + Σ_{CF⁰} (γ̃_σ − 3) q_σ t
///     − Σ_{BCF} (Σ_{j≤c_σ−2} t^j) q_σ − |BCF⁰| t
/// ```
///
/// with the boundary sum taken over the axis-indexed multiset.
pub fn hodge_spectrum_surface(support: &Support) -> Result<FracPoly> {
    Ok(surface_report(support)?.spectrum)
}

/// Full surface computation, keeping the augmented data and warnings.
pub fn surface_report(support: &Support) -> Result<SurfaceReport> {
    if support.dim() != 3 {
        return Err(Error::WrongDimension {
            expected: "3".into(),
            got: support.dim(),
        });
    }
    let orig = NewtonPolyhedron::build(support);
    orig.require_simplicial()?;
    if support.axis_gaps().is_empty() {
        return Err(Error::Convenient);
    }
    plane_condition(support)?;
    let aug = augment(support)?;
    let table = FaceTable::build(&orig)?;

    let mut sp = FracPoly::zero();
    let mut interior_vertices = 0i64;
    for face in orig.faces() {
        if face.is_empty_face() || !face.compact || !face.interior {
            continue;
        }
        let c = 3 - face.dim;
        sp = sp + FracPoly::geometric(c) * table.q(face).clone();
        if face.dim == 0 {
            interior_vertices += 1;
        }
    }
    sp = sp
        + FracPoly::geometric(2)
            .shift(&Exp::one())
            .scale(interior_vertices);

    for v in orig.faces_of_dim(0, FaceFilter::Compact) {
        let coords = orig.face_points(v)[0].clone();
        let gamma = *aug.gamma_tilde.get(&coords).ok_or_else(|| {
            Error::Invariant(format!("no 2-face count for vertex {coords:?}"))
        })? as i64;
        sp = sp + table.q(v).shift(&Exp::one()).scale(gamma - 3);
    }

    let resolved = bcf_enumerate(&orig, &aug)?;
    let boundary_term = |faces: &[(&Face, usize)]| -> FracPoly {
        let mut out = FracPoly::zero();
        let mut zero_dim = 0i64;
        for (tau, _) in faces {
            let c = 3 - tau.dim;
            out = out + FracPoly::geometric(c - 1) * table.q(tau).clone();
            if tau.dim == 0 {
                zero_dim += 1;
            }
        }
        out + FracPoly::term(Exp::one(), zero_dim)
    };
    let multiset_term = boundary_term(&resolved);
    let mut dedup: Vec<(&Face, usize)> = Vec::new();
    let mut seen = BTreeSet::new();
    for (tau, axis) in &resolved {
        if seen.insert(tau.id) {
            dedup.push((tau, *axis));
        }
    }
    let set_term = boundary_term(&dedup);
    let spectrum = &sp - &multiset_term;
    let differs = multiset_term != set_term;
    let mut warnings = Vec::new();
    if differs {
        warnings.push(
            "boundary faces counted per recession axis; reading them as a plain set would \
             change the spectrum"
                .into(),
        );
    }
    Ok(SurfaceReport {
        spectrum,
        augmented_r: aug.r,
        gamma_tilde: aug.gamma_tilde,
        bcf: aug.bcf,
        bcf_set_reading_differs: differs,
        warnings,
    })
}

/// Spectra of the transversal slices for every axis in the gap set.
///
/// Accepts two- and three-variable supports; the slices live in one less
/// variable. Under the plane condition every slice is convenient.
pub fn slice_spectra(support: &Support) -> Result<Vec<SliceData>> {
    let n = support.dim();
    if n != 2 && n != 3 {
        return Err(Error::WrongDimension {
            expected: "2 or 3".into(),
            got: n,
        });
    }
    let gaps = support.axis_gaps();
    if gaps.is_empty() {
        return Err(Error::Convenient);
    }
    if n == 3 {
        plane_condition(support)?;
    }
    let mut out = Vec::new();
    for &axis in &gaps {
        let slice_support = support.project_out(axis)?;
        let slice_poly = NewtonPolyhedron::build(&slice_support);
        let sp = spectrum::isolated_spectrum_any(&slice_poly)?;
        let alphas = sp.to_multiset()?;
        out.push(SliceData {
            axis,
            support: slice_support,
            mu: sp.mass(),
            alphas,
            betas: None,
        });
    }
    Ok(out)
}

fn project_point(p: &[i64], axis: usize) -> Vec<i64> {
    p.iter()
        .enumerate()
        .filter(|(j, _)| *j != axis)
        .map(|(_, &x)| x)
        .collect()
}

/// Nonnegative cone coordinates of `target` over the given column vectors,
/// or `None` if the columns are dependent, the system is inconsistent, or a
/// coefficient is negative.
fn cone_coefficients(columns: &[Vec<i64>], target: &[i64]) -> Option<Vec<BigRational>> {
    let nrows = target.len();
    let matrix: Vec<Vec<i128>> = (0..nrows)
        .map(|r| columns.iter().map(|c| c[r] as i128).collect())
        .collect();
    let solver = ExactSolver::new(matrix)?;
    let b: Vec<i128> = target.iter().map(|&x| x as i128).collect();
    let y = solver.solve_scaled(&b)?;
    if y.iter().any(|&c| c < 0) {
        return None;
    }
    Some(
        y.iter()
            .map(|&c| BigRational::new(BigInt::from(c), BigInt::from(solver.det)))
            .collect(),
    )
}

/// Is `p` a point of the closed compact face `tau` (convex hull of its
/// vertices)?
fn point_in_face(poly: &NewtonPolyhedron, tau: &Face, p: &[i64]) -> bool {
    let verts = poly.face_points(tau);
    let nrows = p.len() + 1;
    let matrix: Vec<Vec<i128>> = (0..nrows)
        .map(|r| {
            verts
                .iter()
                .map(|v| if r < p.len() { v[r] as i128 } else { 1 })
                .collect()
        })
        .collect();
    let Some(solver) = ExactSolver::new(matrix) else {
        return false;
    };
    let mut b: Vec<i128> = p.iter().map(|&x| x as i128).collect();
    b.push(1);
    match solver.solve_scaled(&b) {
        Some(y) => y.iter().all(|&c| c >= 0),
        None => false,
    }
}

/// Fill the twist exponents `β` of one slice.
///
/// For each slice spectral number `α ≤ 1` the witness is a lattice point of
/// an open face parallelepiped (or an interior vertex for the `t`-terms) of
/// the slice polyhedron. The witness is lifted through the cone of a compact
/// face of the full polyhedron projecting into the slice boundary; the
/// fractional part of minus the lifted coordinate is `β`. Spectral numbers
/// above 1 are filled through the conjugation pairing `α + α' = 2`,
/// `β + β' ∈ ℤ`.
pub fn slice_beta(support: &Support, data: &SliceData) -> Result<SliceData> {
    let n = support.dim();
    let axis = data.axis;
    let orig = NewtonPolyhedron::build(support);
    let slice_poly = NewtonPolyhedron::build(&data.support);
    let ns = slice_poly.dim();
    let one = Exp::one();

    // Witnesses: (grading, point) for every open-parallelepiped lattice
    // point of an interior compact face with grading ≤ 1; in two slice
    // variables each interior vertex additionally witnesses a spectral
    // number exactly 1 (the interior-vertex term of the plane spectrum,
    // absent in one variable).
    let mut witnesses: Vec<(Exp, Vec<i64>)> = Vec::new();
    for face in slice_poly.faces() {
        if face.is_empty_face() || !face.compact || !face.interior {
            continue;
        }
        for (point, grading) in facepoly::face_open_points(&slice_poly, face)? {
            if grading <= one {
                witnesses.push((grading, point));
            }
        }
        if face.dim == 0 && ns == 2 {
            let coords = slice_poly.face_points(face)[0].clone();
            witnesses.push((one.clone(), coords));
        }
    }
    witnesses.sort();

    let small: Vec<&Exp> = data.alphas.iter().filter(|a| **a <= one).collect();
    if small.len() != witnesses.len()
        || small
            .iter()
            .zip(&witnesses)
            .any(|(a, (g, _))| **a != *g)
    {
        return Err(Error::Invariant(format!(
            "witness gradings {:?} do not match the slice spectral numbers at most 1",
            witnesses.iter().map(|(g, _)| g.to_string()).collect::<Vec<_>>()
        )));
    }

    // Candidate cones: compact top faces of the slice, compact (n−2)-faces
    // of the full polyhedron, in canonical order.
    let slice_tops = slice_poly.faces_of_dim(ns as i64 - 1, FaceFilter::Compact);
    let lift_faces = orig.faces_of_dim(n as i64 - 2, FaceFilter::Compact);

    let mut betas: Vec<Option<Exp>> = vec![None; data.alphas.len()];
    for (w_idx, (alpha, point)) in witnesses.iter().enumerate() {
        let mut found = None;
        'search: for tau in &slice_tops {
            // The witness must lie in the cone of tau.
            let tau_verts: Vec<Vec<i64>> = slice_poly
                .face_points(tau)
                .into_iter()
                .cloned()
                .collect();
            if cone_coefficients(&tau_verts, point).is_none() {
                continue;
            }
            for lift in &lift_faces {
                let lift_verts: Vec<Vec<i64>> =
                    orig.face_points(lift).into_iter().cloned().collect();
                let projected: Vec<Vec<i64>> = lift_verts
                    .iter()
                    .map(|v| project_point(v, axis))
                    .collect();
                if !projected.iter().all(|p| point_in_face(&slice_poly, tau, p)) {
                    continue;
                }
                let Some(coeffs) = cone_coefficients(&projected, point) else {
                    continue;
                };
                // Lift: the projected coefficients applied to the full
                // vertices determine the forgotten coordinate.
                let mut lifted = BigRational::zero();
                for (c, v) in coeffs.iter().zip(&lift_verts) {
                    lifted += c * BigRational::from_integer(BigInt::from(v[axis]));
                }
                let neg = -lifted;
                let beta = &neg - neg.floor();
                found = Some(beta);
                break 'search;
            }
        }
        let Some(beta) = found else {
            return Err(Error::LiftNotFound {
                axis: axis + 1,
                alpha: alpha.to_string(),
            });
        };
        betas[w_idx] = Some(beta);
    }

    // Pair the spectral numbers above 1 by conjugation: index j pairs with
    // mu − 1 − j in the sorted list.
    let mu = data.alphas.len();
    for j in 0..mu {
        if betas[j].is_some() {
            continue;
        }
        let partner = mu - 1 - j;
        let two = Exp::from_integer(BigInt::from(2));
        if &data.alphas[j] + &data.alphas[partner] != two {
            return Err(Error::Invariant(format!(
                "conjugation pairing broken: {} + {} != 2",
                data.alphas[j], data.alphas[partner]
            )));
        }
        let pb = betas[partner]
            .clone()
            .ok_or_else(|| Error::Invariant("partner twist exponent missing".into()))?;
        let b = if pb.is_zero() {
            Exp::zero()
        } else {
            Exp::one() - pb
        };
        betas[j] = Some(b);
    }

    Ok(SliceData {
        axis: data.axis,
        support: data.support.clone(),
        mu: data.mu.clone(),
        alphas: data.alphas.clone(),
        betas: Some(betas.into_iter().map(Option::unwrap).collect()),
    })
}

/// `Σ_{i,j} Σ_{k=0}^{r−1} t^{α_{i,j} + β_{i,j}/r + k/r}`.
pub fn yomdin_series(slices: &[SliceData], r: i64) -> Result<FracPoly> {
    if r < 2 {
        return Err(Error::Invariant(format!("series exponent r = {r} < 2")));
    }
    let r_big = Exp::from_integer(BigInt::from(r));
    let mut out = FracPoly::zero();
    for slice in slices {
        let betas = slice.betas.as_ref().ok_or_else(|| {
            Error::Invariant("twist exponents not filled before the series".into())
        })?;
        for (alpha, beta) in slice.alphas.iter().zip(betas) {
            for k in 0..r {
                let e = alpha + (beta + Exp::from_integer(BigInt::from(k))) / &r_big;
                out.add_term(e, Coeff::one());
            }
        }
    }
    Ok(out)
}

/// End-to-end consistency report for the Yomdin-series relation.
#[derive(Clone, Debug)]
pub struct YomdinReport {
    pub r_small: i64,
    pub r_large: i64,
    /// The direct Hodge-spectrum value the differences must reproduce.
    pub surface_spectrum: FracPoly,
    pub difference_small: FracPoly,
    pub difference_large: FracPoly,
    pub ok: bool,
}

fn augmented_spectrum(support: &Support, gaps: &[usize], r: i64) -> Result<FracPoly> {
    let aug_support = augmented_support(support, gaps, r);
    let poly = NewtonPolyhedron::build(&aug_support);
    match support.dim() {
        2 => spectrum::spectrum_plane(&poly),
        3 => Ok(spectrum::spectrum_isolated(&poly)?.sp),
        n => Err(Error::WrongDimension {
            expected: "2 or 3".into(),
            got: n,
        }),
    }
}

/// Check that `Sp_{f+ℓ^r} − series(r)` is independent of `r` and equals the
/// direct Hodge-spectrum formula, at two stabilized values of `r`.
pub fn yomdin_crosscheck(support: &Support) -> Result<YomdinReport> {
    let n = support.dim();
    let gaps = support.axis_gaps();
    if gaps.is_empty() {
        return Err(Error::Convenient);
    }
    let mut slices = slice_spectra(support)?;
    for s in &mut slices {
        *s = slice_beta(support, s)?;
    }

    let (surface_spectrum, r_small) = match n {
        2 => {
            let poly = NewtonPolyhedron::build(support);
            let max_sum: i64 = support
                .points()
                .iter()
                .map(|p| p.iter().sum::<i64>())
                .max()
                .unwrap_or(1);
            (spectrum::hodge_spectrum_plane(&poly)?, 1 + 3 * max_sum)
        }
        3 => {
            let aug = augment(support)?;
            (hodge_spectrum_surface(support)?, aug.r)
        }
        other => {
            return Err(Error::WrongDimension {
                expected: "2 or 3".into(),
                got: other,
            })
        }
    };
    let r_large = 2 * r_small;

    let sp_small = augmented_spectrum(support, &gaps, r_small)?;
    let sp_large = augmented_spectrum(support, &gaps, r_large)?;
    let difference_small = sp_small - yomdin_series(&slices, r_small)?;
    let difference_large = sp_large - yomdin_series(&slices, r_large)?;
    let ok = difference_small == surface_spectrum && difference_large == surface_spectrum;
    Ok(YomdinReport {
        r_small,
        r_large,
        surface_spectrum,
        difference_small,
        difference_large,
        ok,
    })
}
