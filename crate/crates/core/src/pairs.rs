//! Spectral pairs `Σ t^{α_i} u^{w_i}` and monodromy Jordan-block counts for
//! simplicial convenient three-variable supports.
//!
//! Both bivariate formulas here belong to a family proved mutually
//! equivalent, not proved true; outputs are labeled conjectural and the
//! crate doubles as a falsification harness. Any internal disagreement is
//! surfaced as a structured finding, never patched.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::facepoly::{self, FaceTable};
use crate::fracpoly::{inflate, BivarPoly, Coeff, Exp};
use crate::newton::{FaceFilter, NewtonPolyhedron};
use crate::spectrum;

/// A monodromy eigenvalue `λ = e^{2πi·l}` represented by `l ∈ [0,1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EigenClass(Exp);

impl EigenClass {
    pub fn new(l: Exp) -> Result<EigenClass> {
        if l < Exp::zero() || l >= Exp::from_integer(BigInt::from(1)) {
            return Err(Error::Invariant(format!(
                "eigenvalue exponent {l} outside [0,1)"
            )));
        }
        Ok(EigenClass(l))
    }

    pub fn l(&self) -> &Exp {
        &self.0
    }

    /// Is `λ^δ = 1`, i.e. `δ·l ∈ ℤ`?
    pub fn divides(&self, delta: i64) -> bool {
        (&self.0 * BigRational::from_integer(BigInt::from(delta))).is_integer()
    }

    pub fn is_unipotent(&self) -> bool {
        self.0.is_zero()
    }
}

/// Jordan-block counts by eigenvalue class; absent keys mean zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanCounts {
    /// Size-3 blocks for `λ ≠ 1`.
    pub n3: BTreeMap<Exp, i64>,
    /// Size-2 blocks for `λ ≠ 1`.
    pub n2: BTreeMap<Exp, i64>,
    /// Size-2 blocks for `λ = 1`.
    pub n2_unipotent: i64,
}

fn require_pairs_input(poly: &NewtonPolyhedron) -> Result<FaceTable> {
    if poly.dim() != 3 {
        return Err(Error::WrongDimension {
            expected: "3".into(),
            got: poly.dim(),
        });
    }
    poly.require_simplicial()?;
    poly.require_convenient()?;
    FaceTable::build(poly)
}

/// Spectral pairs from the interior faces and vertex defect:
///
/// ```text
/// Σ_{ICF} (Σ_{j<c_σ} t^j u^{−2j}) q_σ u^{c_σ+1}
///   + |ICF⁰| (t u³ + t² u)
///   + Σ_{CF⁰} (γ_σ − 3) q_σ t u²
/// ```
pub fn pairs_conjectural(poly: &NewtonPolyhedron) -> Result<BivarPoly> {
    let table = require_pairs_input(poly)?;
    let mut out = BivarPoly::zero();
    let mut interior_vertices = 0i64;
    for face in poly.faces() {
        if face.is_empty_face() || !face.compact || !face.interior {
            continue;
        }
        let c = 3 - face.dim;
        let mut ladder = BivarPoly::zero();
        for j in 0..c {
            ladder.add_term(Exp::from_integer(BigInt::from(j)), -2 * j, Coeff::from(1));
        }
        let q = BivarPoly::from_frac(table.q(face));
        let shift = BivarPoly::term(Exp::zero(), c + 1, 1);
        out = &out + &(&(&ladder * &q) * &shift);
        if face.dim == 0 {
            interior_vertices += 1;
        }
    }
    let mut hook = BivarPoly::term(Exp::from_integer(BigInt::from(1)), 3, interior_vertices);
    hook.add_term(
        Exp::from_integer(BigInt::from(2)),
        1,
        Coeff::from(interior_vertices),
    );
    out = &out + &hook;
    for v in poly.faces_of_dim(0, FaceFilter::Compact) {
        let gamma = poly.vertex_gamma(v)? as i64;
        let q = table.q(v).shift(&Exp::from_integer(BigInt::from(1)));
        let term = &BivarPoly::from_frac(&q.scale(gamma - 3)) * &BivarPoly::term(Exp::zero(), 2, 1);
        out = &out + &term;
    }
    Ok(out)
}

/// Spectral pairs by weighting the combinatorial polynomials:
/// `Σ_τ r_τ(t/u²) u^{5−d(τ)} q_τ(t)` over all compact faces including ∅.
/// A negative final `u`-exponent means the weights left `[0,4]` and is a
/// hard error.
pub fn pairs_steenbrink(poly: &NewtonPolyhedron) -> Result<BivarPoly> {
    let table = require_pairs_input(poly)?;
    let mut out = BivarPoly::zero();
    for tau in poly.faces() {
        if !tau.compact {
            continue;
        }
        let r = spectrum::combinatorial_r(poly, tau)?;
        let weighted = inflate(&r, 5 - tau.cone_dim())?;
        out = &out + &(&weighted * &BivarPoly::from_frac(table.q(tau)));
    }
    if out.min_u().is_some_and(|w| w < 0) {
        return Err(Error::ConjectureViolation(format!(
            "negative modified weight in spectral pairs: {out}"
        )));
    }
    Ok(out)
}

/// Jordan-block counts predicted from the face lattice:
/// `n_{λ,3} = |ICF⁰_λ|`, `n_{λ,2} = Σ_{ICF¹_λ} l(σ) − Σ_{CF⁰_λ} β_σ` for
/// `λ ≠ 1`, and `n_{1,2}` the number of strictly positive lattice points on
/// the union of interior compact edges. A negative `n_{λ,2}` is reported as
/// a conjecture violation, never clamped.
pub fn jordan_counts(poly: &NewtonPolyhedron) -> Result<JordanCounts> {
    let table = require_pairs_input(poly)?;
    let mut n3: BTreeMap<Exp, i64> = BTreeMap::new();
    let mut n2: BTreeMap<Exp, i64> = BTreeMap::new();

    for l in table.eigen_classes() {
        let class = EigenClass::new(l.clone())?;
        if class.is_unipotent() {
            continue;
        }
        let c3 = poly
            .faces_of_dim(0, FaceFilter::InteriorCompact)
            .into_iter()
            .filter(|v| class.divides(table.delta(v)))
            .count() as i64;
        let mut c2 = 0i64;
        for edge in poly.faces_of_dim(1, FaceFilter::InteriorCompact) {
            if class.divides(table.delta(edge)) {
                c2 += facepoly::face_lattice_length(poly, edge)?;
            }
        }
        for v in poly.faces_of_dim(0, FaceFilter::Compact) {
            if class.divides(table.delta(v)) {
                c2 -= facepoly::vertex_beta(poly, v)?;
            }
        }
        if c2 < 0 {
            return Err(Error::ConjectureViolation(format!(
                "negative size-2 Jordan count {c2} for eigenvalue exponent {l}"
            )));
        }
        if c3 != 0 {
            n3.insert(l.clone(), c3);
        }
        if c2 != 0 {
            n2.insert(l, c2);
        }
    }

    // Unipotent size-2 blocks: distinct strictly positive lattice points on
    // the closed interior compact edges.
    let mut points: BTreeSet<Vec<i64>> = BTreeSet::new();
    for edge in poly.faces_of_dim(1, FaceFilter::InteriorCompact) {
        let verts = poly.face_points(edge);
        let (a, b) = (verts[0], verts[1]);
        let dir: Vec<i128> = b.iter().zip(a).map(|(&x, &y)| (x - y) as i128).collect();
        let g = crate::linalg::gcd_all(&dir);
        for k in 0..=g {
            let p: Vec<i64> = a
                .iter()
                .enumerate()
                .map(|(c, &x)| x + ((dir[c] / g * k) as i64))
                .collect();
            if p.iter().all(|&x| x > 0) {
                points.insert(p);
            }
        }
    }

    Ok(JordanCounts {
        n3,
        n2,
        n2_unipotent: points.len() as i64,
    })
}

/// The alternative count of size-2 blocks for `λ ≠ 1`, read off the interior
/// edge polynomials: `Σ_{σ∈ICF¹_λ} (m_{σ,1−l} + m_{σ,2−l})` where `m_{σ,α}`
/// is the coefficient of `t^α` in `q_σ`.
pub fn jordan_counts_via_q(poly: &NewtonPolyhedron, class: &EigenClass) -> Result<i64> {
    let table = require_pairs_input(poly)?;
    if class.is_unipotent() {
        return Err(Error::Invariant(
            "the q-coefficient count applies to eigenvalues different from 1".into(),
        ));
    }
    let one = Exp::from_integer(BigInt::from(1));
    let two = Exp::from_integer(BigInt::from(2));
    let mut total = BigInt::zero();
    for edge in poly.faces_of_dim(1, FaceFilter::InteriorCompact) {
        if !class.divides(table.delta(edge)) {
            continue;
        }
        let q = table.q(edge);
        total += q.coeff(&(&one - class.l()));
        total += q.coeff(&(&two - class.l()));
    }
    i64::try_from(total).map_err(|_| Error::Invariant("count exceeds machine range".into()))
}

/// Every eigenvalue class `k/δ_σ mod 1` arising from some compact face.
pub fn eigen_classes(poly: &NewtonPolyhedron) -> Result<Vec<EigenClass>> {
    let table = FaceTable::build(poly)?;
    table.eigen_classes().into_iter().map(EigenClass::new).collect()
}

/// Convenience bundle for reporting: both pair polynomials, their equality,
/// the specialization check against the spectrum, and the Jordan counts.
#[derive(Clone, Debug)]
pub struct PairsReport {
    pub conjectural: BivarPoly,
    pub steenbrink: BivarPoly,
    pub equal: bool,
    pub specializes_to_spectrum: bool,
    pub jordan: JordanCounts,
    /// `(l, from face counts, from q coefficients)` for every class where
    /// the two size-2 counts disagree — conjecture findings.
    pub jordan_findings: Vec<(Exp, i64, i64)>,
}

pub fn pairs_report(poly: &NewtonPolyhedron) -> Result<PairsReport> {
    let conjectural = pairs_conjectural(poly)?;
    let steenbrink = pairs_steenbrink(poly)?;
    let equal = conjectural == steenbrink;
    let sp = spectrum::spectrum_isolated(poly)?.sp;
    let specializes_to_spectrum =
        conjectural.specialize_u() == sp && steenbrink.specialize_u() == sp;
    let jordan = jordan_counts(poly)?;
    let mut jordan_findings = Vec::new();
    let table = FaceTable::build(poly)?;
    for l in table.eigen_classes() {
        let class = EigenClass::new(l.clone())?;
        if class.is_unipotent() {
            continue;
        }
        let via_q = jordan_counts_via_q(poly, &class)?;
        let direct = jordan.n2.get(&l).copied().unwrap_or(0);
        if via_q != direct {
            jordan_findings.push((l, direct, via_q));
        }
    }
    Ok(PairsReport {
        conjectural,
        steenbrink,
        equal,
        specializes_to_spectrum,
        jordan,
        jordan_findings,
    })
}
