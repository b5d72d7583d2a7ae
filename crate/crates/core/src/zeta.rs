//! Monodromy zeta data: the facet sums `M*` per coordinate restriction, the
//! inclusion–exclusion `M` over all coordinate subsets, and the end-to-end
//! identity `φ(Sp) = M` used as a machine cross-check.
//!
//! The empty restriction contributes the constant 1. That value is forced by
//! checking the identity on one-variable powers: for `x^a` the full subset
//! gives `Σ_{k<a} t^{k/a}` while `φ(Sp) = Σ_{0<k<a} t^{k/a}`, so the ∅ term
//! must cancel exactly the constant.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::facepoly;
use crate::fracpoly::FracPoly;
use crate::newton::{FaceFilter, NewtonPolyhedron};
use crate::polyparse::Support;
use crate::spectrum;

/// All `M*` values by coordinate subset plus the alternating sum.
#[derive(Clone, Debug)]
pub struct ZetaReport {
    pub mstar_by_subset: BTreeMap<Vec<usize>, FracPoly>,
    pub m: FracPoly,
}

/// `M*` of the restriction of the support to the coordinate subspace spanned
/// by `axes`: the sum of `s_σ` over the top-dimensional compact faces of the
/// restricted polyhedron. The empty subset yields 1.
pub fn mstar(support: &Support, axes: &[usize]) -> Result<FracPoly> {
    if axes.is_empty() {
        return Ok(FracPoly::one());
    }
    let restricted = support.restrict(axes).ok_or_else(|| Error::EmptyRestriction {
        subset: axes
            .iter()
            .map(|i| format!("x{}", i + 1))
            .collect::<Vec<_>>()
            .join(","),
    })?;
    let poly = NewtonPolyhedron::build(&restricted);
    poly.require_simplicial()?;
    let m = axes.len() as i64;
    let mut out = FracPoly::zero();
    for face in poly.faces_of_dim(m - 1, FaceFilter::Compact) {
        out = out + facepoly::face_s(&poly, face)?;
    }
    Ok(out)
}

/// Inclusion–exclusion over all `2ⁿ` coordinate subsets:
/// `M = Σ_I (−1)^{n−|I|} M*_I`, including ∅ and the full set.
pub fn mzeta(support: &Support) -> Result<FracPoly> {
    Ok(zeta_report(support)?.m)
}

/// Like [`mzeta`] but keeping every per-subset value.
pub fn zeta_report(support: &Support) -> Result<ZetaReport> {
    let n = support.dim();
    let poly = NewtonPolyhedron::build(support);
    poly.require_convenient()?;
    let mut mstar_by_subset = BTreeMap::new();
    let mut m = FracPoly::zero();
    for mask in 0u32..(1 << n) {
        let axes: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let value = mstar(support, &axes)?;
        let sign = if (n - axes.len()) % 2 == 0 { 1 } else { -1 };
        m = m + value.scale(sign);
        mstar_by_subset.insert(axes, value);
    }
    Ok(ZetaReport { mstar_by_subset, m })
}

/// Check `φ(Sp) = M` on a convenient simplicial support of dimension ≤ 3.
/// Returns whether the identity holds together with the discrepancy
/// `φ(Sp) − M` for diagnostics.
pub fn verify_zeta_identity(support: &Support) -> Result<(bool, FracPoly)> {
    let poly = NewtonPolyhedron::build(support);
    let sp = spectrum::isolated_spectrum_any(&poly)?;
    let m = mzeta(support)?;
    let discrepancy = sp.phi() - m;
    Ok((discrepancy.is_zero(), discrepancy))
}
