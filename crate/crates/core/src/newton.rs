//! The Newton polyhedron `Γ₊(f) = conv{ν + ℝ₊ⁿ : ν ∈ supp f}` and its full
//! face lattice, compact and non-compact faces alike.
//!
//! Geometry goes through a single homogenization: the cone in ℝⁿ⁺¹ generated
//! by `(ν, 1)` for every support point and `(e_i, 0)` for every axis. Faces
//! of `Γ₊` are the cone faces not inside the hyperplane `last = 0`; a face is
//! compact iff it contains no ray generator. Facet candidates come from
//! exhaustive n-subsets of the generators with exact integer arithmetic —
//! desk-scale supports make this cheap and bit-exact.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linalg;
use crate::polyparse::Support;

/// Supporting inequality `normal · ν ≥ offset` with a primitive componentwise
/// nonnegative normal. Coordinate facets are exactly those with offset 0.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

/// Which faces a query should return.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceFilter {
    All,
    Compact,
    InteriorCompact,
}

/// A face of the polyhedron, described by the vertices and recession rays it
/// contains. The empty face is materialized with `dim = -1` so the cone
/// dimension `d(σ) = dim σ + 1` needs no special casing in summations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// Indices into `NewtonPolyhedron::support` (vertices only), sorted.
    pub vertices: Vec<usize>,
    /// Axis indices of recession rays, sorted; empty iff compact.
    pub recession: Vec<usize>,
    pub dim: i64,
    pub compact: bool,
    /// Not contained in any coordinate hyperplane.
    pub interior: bool,
    /// Number of coordinates not identically zero on the face, `k(σ)`.
    pub k: usize,
    /// Facets whose hyperplane contains this face.
    pub facet_ids: Vec<usize>,
}

impl Face {
    /// Cone dimension `d(σ) = dim σ + 1`, with `d(∅) = 0`.
    pub fn cone_dim(&self) -> i64 {
        self.dim + 1
    }

    pub fn is_empty_face(&self) -> bool {
        self.dim < 0
    }
}

#[derive(Clone, Debug)]
pub struct NewtonPolyhedron {
    n: usize,
    support: Vec<Vec<i64>>,
    /// Support indices that are vertices of the polyhedron.
    vertex_ids: Vec<usize>,
    facets: Vec<Facet>,
    faces: Vec<Face>,
}

/// Generator of the homogenized cone.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Gen {
    Point(usize),
    Ray(usize),
}

impl NewtonPolyhedron {
    /// Build the polyhedron and enumerate every face.
    pub fn build(support: &Support) -> NewtonPolyhedron {
        let n = support.dim();
        let points: Vec<Vec<i64>> = support.points().to_vec();
        let gens: Vec<(Gen, Vec<i128>)> = points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let mut v: Vec<i128> = p.iter().map(|&x| x as i128).collect();
                v.push(1);
                (Gen::Point(i), v)
            })
            .chain((0..n).map(|i| {
                let mut v = vec![0i128; n + 1];
                v[i] = 1;
                (Gen::Ray(i), v)
            }))
            .collect();

        // Candidate facet normals from all n-subsets of generators.
        let mut normals: BTreeSet<Vec<i128>> = BTreeSet::new();
        let mut subset = vec![0usize; n];
        enumerate_subsets(gens.len(), n, &mut subset, 0, 0, &mut |chosen| {
            let rows: Vec<Vec<i128>> = chosen.iter().map(|&i| gens[i].1.clone()).collect();
            let w = linalg::cofactor_normal(&rows);
            if w.iter().all(|&x| x == 0) {
                return;
            }
            let mut pos = false;
            let mut neg = false;
            for (_, g) in &gens {
                let dot: i128 = g.iter().zip(&w).map(|(a, b)| a * b).sum();
                if dot > 0 {
                    pos = true;
                } else if dot < 0 {
                    neg = true;
                }
            }
            if pos && neg {
                return;
            }
            let mut w = linalg::primitive(w);
            if neg {
                for x in &mut w {
                    *x = -*x;
                }
            }
            normals.insert(w);
        });

        // Keep supporting hyperplanes whose contact set has cone dimension n:
        // those are the facets. Hyperplanes with zero spatial part support
        // only the recession cone (the face at infinity) and dehomogenize to
        // nothing.
        let mut facets: Vec<Facet> = Vec::new();
        let mut facet_contacts: Vec<BTreeSet<usize>> = Vec::new();
        for w in normals {
            if w[..n].iter().all(|&x| x == 0) {
                continue;
            }
            let contact: BTreeSet<usize> = gens
                .iter()
                .enumerate()
                .filter(|(_, (_, g))| g.iter().zip(&w).map(|(a, b)| a * b).sum::<i128>() == 0)
                .map(|(i, _)| i)
                .collect();
            let rows: Vec<Vec<i128>> = contact.iter().map(|&i| gens[i].1.clone()).collect();
            if linalg::rank(&rows) != n {
                continue;
            }
            let normal: Vec<i64> = w[..n]
                .iter()
                .map(|&x| i64::try_from(x).expect("facet normal exceeds machine range"))
                .collect();
            let offset = i64::try_from(-w[n]).expect("facet offset exceeds machine range");
            facets.push(Facet { normal, offset });
            facet_contacts.push(contact);
        }

        // Close the facet contact sets under intersection: every proper face
        // of the cone is an intersection of facets.
        let mut face_sets: BTreeSet<BTreeSet<usize>> = facet_contacts.iter().cloned().collect();
        loop {
            let snapshot: Vec<BTreeSet<usize>> = face_sets.iter().cloned().collect();
            let before = face_sets.len();
            for i in 0..snapshot.len() {
                for j in i + 1..snapshot.len() {
                    let inter: BTreeSet<usize> =
                        snapshot[i].intersection(&snapshot[j]).copied().collect();
                    face_sets.insert(inter);
                }
            }
            if face_sets.len() == before {
                break;
            }
        }

        // A support point is a vertex iff its minimal face — the intersection
        // of all facets through it — has rank 1. Point generators are never
        // collinear with each other or with a ray, so rank 1 means the face
        // is exactly the ray spanned by this generator.
        let mut vertex_ids: Vec<usize> = Vec::new();
        for (gi, (gen, _)) in gens.iter().enumerate() {
            let Gen::Point(pi) = gen else { continue };
            let mut minimal: Option<BTreeSet<usize>> = None;
            for contact in &facet_contacts {
                if contact.contains(&gi) {
                    minimal = Some(match minimal {
                        None => contact.clone(),
                        Some(m) => m.intersection(contact).copied().collect(),
                    });
                }
            }
            let is_vertex = minimal.is_some_and(|m| {
                let rows: Vec<Vec<i128>> = m.iter().map(|&i| gens[i].1.clone()).collect();
                linalg::rank(&rows) == 1
            });
            if is_vertex {
                vertex_ids.push(*pi);
            }
        }
        vertex_ids.sort_unstable();

        // Materialize faces of Γ₊: cone faces containing at least one point
        // generator. Canonical order: by (dim, vertices, recession).
        struct ProtoFace {
            vertices: Vec<usize>,
            recession: Vec<usize>,
            dim: i64,
            gens: BTreeSet<usize>,
        }
        let mut protos: Vec<ProtoFace> = Vec::new();
        for set in &face_sets {
            let has_point = set.iter().any(|&i| matches!(gens[i].0, Gen::Point(_)));
            if !has_point {
                continue;
            }
            let rows: Vec<Vec<i128>> = set.iter().map(|&i| gens[i].1.clone()).collect();
            let dim = linalg::rank(&rows) as i64 - 1;
            let mut vertices: Vec<usize> = set
                .iter()
                .filter_map(|&i| match gens[i].0 {
                    Gen::Point(pi) if vertex_ids.contains(&pi) => Some(pi),
                    _ => None,
                })
                .collect();
            vertices.sort_unstable();
            let mut recession: Vec<usize> = set
                .iter()
                .filter_map(|&i| match gens[i].0 {
                    Gen::Ray(ax) => Some(ax),
                    _ => None,
                })
                .collect();
            recession.sort_unstable();
            protos.push(ProtoFace {
                vertices,
                recession,
                dim,
                gens: set.clone(),
            });
        }
        protos.sort_by(|a, b| {
            (a.dim, &a.vertices, &a.recession).cmp(&(b.dim, &b.vertices, &b.recession))
        });

        let mut faces: Vec<Face> = Vec::with_capacity(protos.len() + 1);
        faces.push(Face {
            id: 0,
            vertices: Vec::new(),
            recession: Vec::new(),
            dim: -1,
            compact: true,
            interior: false,
            k: 0,
            facet_ids: (0..facets.len()).collect(),
        });
        for proto in protos {
            let id = faces.len();
            let compact = proto.recession.is_empty();
            let k = (0..n)
                .filter(|&coord| {
                    proto.vertices.iter().any(|&v| points[v][coord] != 0)
                        || proto.recession.contains(&coord)
                })
                .count();
            let interior = k == n;
            let facet_ids: Vec<usize> = facet_contacts
                .iter()
                .enumerate()
                .filter(|(_, contact)| proto.gens.is_subset(contact))
                .map(|(fi, _)| fi)
                .collect();
            faces.push(Face {
                id,
                vertices: proto.vertices,
                recession: proto.recession,
                dim: proto.dim,
                compact,
                interior,
                k,
                facet_ids,
            });
        }

        NewtonPolyhedron {
            n,
            support: points,
            vertex_ids,
            facets,
            faces,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// All support points (sorted lexicographically).
    pub fn support(&self) -> &[Vec<i64>] {
        &self.support
    }

    /// Coordinates of the polyhedron's vertices.
    pub fn vertices(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.vertex_ids.iter().map(|&i| &self.support[i])
    }

    pub fn vertex_ids(&self) -> &[usize] {
        &self.vertex_ids
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Every face including the empty face (id 0, dim −1). Non-compact faces
    /// are present with their recession rays.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    /// The empty face.
    pub fn empty_face(&self) -> &Face {
        &self.faces[0]
    }

    /// Vertex coordinate vectors of a face.
    pub fn face_points(&self, face: &Face) -> Vec<&Vec<i64>> {
        face.vertices.iter().map(|&i| &self.support[i]).collect()
    }

    /// Faces of one dimension, optionally restricted to compact or
    /// interior-compact ones. The empty face never matches.
    pub fn faces_of_dim(&self, dim: i64, filter: FaceFilter) -> Vec<&Face> {
        self.faces
            .iter()
            .filter(|f| f.dim == dim && !f.is_empty_face())
            .filter(|f| match filter {
                FaceFilter::All => true,
                FaceFilter::Compact => f.compact,
                FaceFilter::InteriorCompact => f.compact && f.interior,
            })
            .collect()
    }

    /// Compact faces (excluding ∅) in canonical order.
    pub fn compact_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| f.compact && !f.is_empty_face())
    }

    /// Containment `τ ≤ σ` via vertex and recession subsets; the empty face
    /// is contained in every face.
    pub fn face_le(&self, tau: &Face, sigma: &Face) -> bool {
        if tau.is_empty_face() {
            return true;
        }
        is_subset(&tau.vertices, &sigma.vertices) && is_subset(&tau.recession, &sigma.recession)
    }

    /// Faces of `sigma` (all `τ ≤ sigma` including ∅ and `sigma` itself).
    pub fn subfaces(&self, sigma: &Face) -> Vec<&Face> {
        self.faces.iter().filter(|t| self.face_le(t, sigma)).collect()
    }

    /// Compact faces containing `tau`, including `tau` itself (used for the
    /// combinatorial polynomials `r_τ`).
    pub fn compact_superfaces(&self, tau: &Face) -> Vec<&Face> {
        self.faces
            .iter()
            .filter(|s| s.compact && self.face_le(tau, s))
            .collect()
    }

    /// Every compact `k`-face has exactly `k+1` vertices.
    pub fn is_simplicial(&self) -> bool {
        self.compact_faces()
            .all(|f| f.vertices.len() as i64 == f.dim + 1)
    }

    /// First non-simplicial compact face, for error reporting.
    pub fn first_non_simplicial(&self) -> Option<&Face> {
        self.compact_faces()
            .find(|f| f.vertices.len() as i64 != f.dim + 1)
    }

    /// The polyhedron meets every coordinate axis.
    pub fn is_convenient(&self) -> bool {
        self.missing_axis().is_none()
    }

    /// Axes not met by the support (the gap set `I_f`).
    pub fn axis_gaps(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| {
                !self.support.iter().any(|p| {
                    p.iter()
                        .enumerate()
                        .all(|(j, &x)| if j == i { x > 0 } else { x == 0 })
                })
            })
            .collect()
    }

    /// Some axis not met by the support, if any.
    pub fn missing_axis(&self) -> Option<usize> {
        self.axis_gaps().into_iter().next()
    }

    /// Require simpliciality, reporting the offending face.
    pub fn require_simplicial(&self) -> Result<()> {
        match self.first_non_simplicial() {
            None => Ok(()),
            Some(f) => Err(Error::NotSimplicial {
                face: format!(
                    "{:?}",
                    self.face_points(f).iter().map(|p| (*p).clone()).collect::<Vec<_>>()
                ),
                vertices: f.vertices.len(),
                dim: f.dim,
            }),
        }
    }

    /// Require convenience, reporting a missing axis.
    pub fn require_convenient(&self) -> Result<()> {
        match self.missing_axis() {
            None => Ok(()),
            Some(axis) => Err(Error::NotConvenient { axis: axis + 1 }),
        }
    }

    /// Number of 2-dimensional faces, compact or not, whose closure contains
    /// the vertex `v`.
    pub fn vertex_gamma(&self, v: &Face) -> Result<usize> {
        if v.dim != 0 {
            return Err(Error::WrongFaceDimension {
                expected: 0,
                got: v.dim,
            });
        }
        Ok(self
            .faces
            .iter()
            .filter(|f| f.dim == 2 && self.face_le(v, f))
            .count())
    }

    /// Newton order `v_f(x^ν) = min { a·(1+ν)/a₀ : facets with a₀ > 0 }`.
    /// Needs a convenient polyhedron, otherwise the order can be infinite.
    pub fn newton_order(&self, nu: &[i64]) -> Result<BigRational> {
        self.require_convenient()?;
        assert_eq!(nu.len(), self.n);
        let mut best: Option<BigRational> = None;
        for facet in &self.facets {
            if facet.offset <= 0 {
                continue;
            }
            let num: i128 = facet
                .normal
                .iter()
                .zip(nu)
                .map(|(&a, &x)| (a as i128) * (1 + x as i128))
                .sum();
            let val = BigRational::new(BigInt::from(num), BigInt::from(facet.offset));
            best = Some(match best {
                None => val,
                Some(b) if val < b => val,
                Some(b) => b,
            });
        }
        best.ok_or_else(|| Error::Invariant("polyhedron has no positive-offset facet".into()))
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Enumerate all k-subsets of {0..n-1}, invoking the callback on each.
fn enumerate_subsets(
    n: usize,
    k: usize,
    buf: &mut Vec<usize>,
    depth: usize,
    start: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        f(buf);
        return;
    }
    for i in start..n {
        if n - i < k - depth {
            break;
        }
        buf[depth] = i;
        enumerate_subsets(n, k, buf, depth + 1, i + 1, f);
    }
}
