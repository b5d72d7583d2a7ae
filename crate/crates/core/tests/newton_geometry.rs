//! Face-lattice construction checked against hand hulls and a brute-force
//! membership oracle.

mod common;

use num_bigint::BigInt;
use num_rational::BigRational;

use nspec_core::corpus::generate_corpus;
use nspec_core::fracpoly::exp;
use nspec_core::newton::{FaceFilter, NewtonPolyhedron};
use nspec_core::polyparse::{parse_polynomial, Support};

fn support(points: &[&[i64]]) -> Support {
    Support::from_points(points[0].len(), points.iter().map(|p| p.to_vec()).collect()).unwrap()
}

fn build(points: &[&[i64]]) -> NewtonPolyhedron {
    NewtonPolyhedron::build(&support(points))
}

#[test]
fn two_point_surface_support() {
    // {(3,0,0),(0,2,1)}: both points are vertices, the segment joining them
    // is the unique maximal compact face, and there is no compact 2-face.
    let poly = build(&[&[3, 0, 0], &[0, 2, 1]]);
    let verts: Vec<_> = poly.vertices().cloned().collect();
    assert_eq!(verts, vec![vec![0, 2, 1], vec![3, 0, 0]]);
    assert_eq!(poly.faces_of_dim(1, FaceFilter::Compact).len(), 1);
    assert!(poly.faces_of_dim(2, FaceFilter::Compact).is_empty());
    // The edge lies in no coordinate plane.
    assert_eq!(poly.faces_of_dim(1, FaceFilter::InteriorCompact).len(), 1);
}

#[test]
fn t444_hull() {
    // Three compact facets, each a triangle on a plane of type ν₁+ν₂+2ν₃ = 4.
    let poly = build(&[&[4, 0, 0], &[0, 4, 0], &[0, 0, 4], &[1, 1, 1]]);
    let compact_facets = poly.faces_of_dim(2, FaceFilter::Compact);
    assert_eq!(compact_facets.len(), 3);
    let mut normals: Vec<(Vec<i64>, i64)> = poly
        .facets()
        .iter()
        .filter(|f| f.offset > 0)
        .map(|f| (f.normal.clone(), f.offset))
        .collect();
    normals.sort();
    assert_eq!(
        normals,
        vec![
            (vec![1, 1, 2], 4),
            (vec![1, 2, 1], 4),
            (vec![2, 1, 1], 4),
        ]
    );
    assert_eq!(poly.vertices().count(), 4);
    assert!(poly.is_simplicial());
    assert!(poly.is_convenient());
}

#[test]
fn t444_interior_faces_and_gamma() {
    let poly = build(&[&[4, 0, 0], &[0, 4, 0], &[0, 0, 4], &[1, 1, 1]]);
    let interior_vertices = poly.faces_of_dim(0, FaceFilter::InteriorCompact);
    assert_eq!(interior_vertices.len(), 1);
    assert_eq!(poly.face_points(interior_vertices[0])[0], &vec![1, 1, 1]);

    let center = interior_vertices[0];
    assert_eq!(poly.vertex_gamma(center).unwrap(), 3);

    let axial = poly
        .faces_of_dim(0, FaceFilter::Compact)
        .into_iter()
        .find(|v| poly.face_points(v)[0] == &vec![4, 0, 0])
        .unwrap();
    assert_eq!(poly.vertex_gamma(axial).unwrap(), 4);
}

#[test]
fn quadratic_cone_gamma() {
    let poly = build(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
    let v = poly
        .faces_of_dim(0, FaceFilter::Compact)
        .into_iter()
        .find(|v| poly.face_points(v)[0] == &vec![2, 0, 0])
        .unwrap();
    assert_eq!(poly.vertex_gamma(v).unwrap(), 3);
    // All edges lie in coordinate planes.
    assert!(poly.faces_of_dim(1, FaceFilter::InteriorCompact).is_empty());
}

#[test]
fn plane_segment_hull() {
    // {(a,0),(0,b)}: one compact edge, two vertices.
    let poly = build(&[&[5, 0], &[0, 3]]);
    assert_eq!(poly.vertices().count(), 2);
    assert_eq!(poly.faces_of_dim(1, FaceFilter::Compact).len(), 1);
    assert!(poly.is_convenient());
}

#[test]
fn single_point_support_is_degenerate_orthant() {
    let poly = build(&[&[2, 3]]);
    assert_eq!(poly.vertices().count(), 1);
    assert!(poly.faces_of_dim(1, FaceFilter::Compact).is_empty());
    // Two non-compact boundary rays.
    assert_eq!(poly.faces_of_dim(1, FaceFilter::All).len(), 2);
}

#[test]
fn simpliciality_flags() {
    // Remark-family member with a quadrilateral compact 2-face.
    let f16 = parse_polynomial(
        "x^16 + y^12 + z^13 + x^4*y^2 + x^2*y^4 + x^6*z^3 + x^3*z^6 + y^3*z + y*z^3",
    )
    .unwrap();
    assert!(!NewtonPolyhedron::build(&f16).is_simplicial());

    let quad = parse_polynomial("x^2 + y^2 + x*z + y*z + z^4").unwrap();
    assert!(!NewtonPolyhedron::build(&quad).is_simplicial());

    // n = 2 is always simplicial.
    let s = parse_polynomial("x^4*y^2 + x^2*y^3").unwrap();
    let poly = NewtonPolyhedron::build(&s);
    assert!(poly.is_simplicial());
    assert!(!poly.is_convenient());
}

#[test]
fn axis_gap_examples() {
    assert_eq!(support(&[&[3, 0, 0], &[0, 2, 1]]).axis_gaps(), vec![1, 2]);
    assert_eq!(support(&[&[4, 6]]).axis_gaps(), vec![0, 1]);
    assert!(support(&[&[2, 0], &[0, 2]]).axis_gaps().is_empty());
}

#[test]
fn newton_order_values() {
    // {(3,0),(0,3)}, ν = 0: (1+1)/3 on the facet ν₁+ν₂ ≥ 3.
    let poly = build(&[&[3, 0], &[0, 3]]);
    assert_eq!(poly.newton_order(&[0, 0]).unwrap(), exp(2, 3));

    // Pure powers: v_f(1) = 1/a + 1/b + 1/c.
    let poly = build(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
    assert_eq!(
        poly.newton_order(&[0, 0, 0]).unwrap(),
        exp(1, 2) + exp(1, 3) + exp(1, 5)
    );

    // Scaling a vertex: for ν = δ·ν' − 1 the shifted point 1 + ν = δ·ν'
    // sits on δ times the boundary, so the order is exactly δ.
    let poly = build(&[&[4, 0, 0], &[0, 4, 0], &[0, 0, 4], &[1, 1, 1]]);
    // ν' = (1,1,1), δ = 2: 1 + (1,1,1) = 2·(1,1,1).
    assert_eq!(poly.newton_order(&[1, 1, 1]).unwrap(), exp(2, 1));

    // Non-convenient input is rejected.
    let poly = build(&[&[4, 2], &[2, 3]]);
    assert!(poly.newton_order(&[0, 0]).is_err());
}

#[test]
fn h_representation_is_sound_and_faces_graded() {
    for s in generate_corpus(3, 15) {
        let poly = NewtonPolyhedron::build(&s);
        for p in poly.support() {
            for facet in poly.facets() {
                let dot: i64 = facet.normal.iter().zip(p).map(|(a, x)| a * x).sum();
                assert!(dot >= facet.offset, "support point violates a facet");
            }
        }
        // Gradedness: every k-face with k ≥ 1 contains a (k−1)-face.
        for f in poly.faces() {
            if f.dim < 1 {
                continue;
            }
            let has_sub = poly
                .faces()
                .iter()
                .any(|g| g.dim == f.dim - 1 && poly.face_le(g, f));
            assert!(has_sub, "face of dim {} without a subface", f.dim);
        }
        // Every vertex of a 3-dimensional polyhedron lies on at least three
        // 2-faces.
        for v in poly.faces_of_dim(0, FaceFilter::Compact) {
            assert!(poly.vertex_gamma(v).unwrap() >= 3);
        }
        // Ridges lie on exactly two facets.
        for f in poly.faces() {
            if f.dim == poly.dim() as i64 - 2 && !f.is_empty_face() {
                assert_eq!(f.facet_ids.len(), 2, "ridge not on exactly 2 facets");
            }
        }
    }
}

#[test]
fn vertices_match_brute_force_oracle() {
    let supports: Vec<Support> = vec![
        support(&[&[3, 0, 0], &[0, 2, 1]]),
        support(&[&[4, 0, 0], &[0, 4, 0], &[0, 0, 4], &[1, 1, 1]]),
        support(&[&[4, 2], &[2, 3]]),
        support(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5], &[1, 1, 1], &[2, 2, 2]]),
    ];
    for s in supports.into_iter().chain(generate_corpus(11, 6)) {
        let poly = NewtonPolyhedron::build(&s);
        let points = s.points();
        for (i, p) in points.iter().enumerate() {
            let others: Vec<Vec<i64>> = points
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| q.clone())
                .collect();
            let expected_vertex = others.is_empty()
                || !common::in_hull_plus_orthant(&others, &common::rat_point(p));
            let got_vertex = poly.vertices().any(|v| v == p);
            assert_eq!(
                expected_vertex, got_vertex,
                "vertex disagreement at {p:?} in {points:?}"
            );
        }
    }
}

#[test]
fn h_and_v_representations_agree_on_sampled_points() {
    for s in generate_corpus(19, 5) {
        let poly = NewtonPolyhedron::build(&s);
        let pts = s.points();
        // Sample a small box around the interesting region.
        for x in 0..8 {
            for y in 0..8 {
                for z in 0..8 {
                    let p = [x, y, z];
                    let h_member = poly.facets().iter().all(|f| {
                        f.normal.iter().zip(&p).map(|(a, v)| a * v).sum::<i64>() >= f.offset
                    });
                    let v_member = common::in_hull_plus_orthant(pts, &common::rat_point(&p));
                    assert_eq!(h_member, v_member, "membership mismatch at {p:?}");
                }
            }
        }
    }
}

#[test]
fn build_is_independent_of_point_order() {
    let a = Support::from_points(
        3,
        vec![vec![4, 0, 0], vec![0, 4, 0], vec![0, 0, 4], vec![1, 1, 1]],
    )
    .unwrap();
    let b = Support::from_points(
        3,
        vec![vec![1, 1, 1], vec![0, 0, 4], vec![4, 0, 0], vec![0, 4, 0]],
    )
    .unwrap();
    let pa = NewtonPolyhedron::build(&a);
    let pb = NewtonPolyhedron::build(&b);
    assert_eq!(pa.facets(), pb.facets());
    assert_eq!(pa.faces().len(), pb.faces().len());
    for (fa, fb) in pa.faces().iter().zip(pb.faces()) {
        assert_eq!(fa.dim, fb.dim);
        assert_eq!(
            pa.face_points(fa)
                .into_iter()
                .cloned()
                .collect::<Vec<_>>(),
            pb.face_points(fb).into_iter().cloned().collect::<Vec<_>>()
        );
    }
}

#[test]
fn face_k_counts_nonvanishing_coordinates() {
    let poly = build(&[&[3, 0, 0], &[0, 2, 1]]);
    for f in poly.faces() {
        if f.is_empty_face() {
            assert_eq!(f.k, 0);
            continue;
        }
        let pts = poly.face_points(f);
        for coord in 0..3 {
            let nonzero = pts.iter().any(|p| p[coord] != 0) || f.recession.contains(&coord);
            // k is the count of such coordinates.
            let _ = nonzero;
        }
        let expected = (0..3)
            .filter(|&c| pts.iter().any(|p| p[c] != 0) || f.recession.contains(&c))
            .count();
        assert_eq!(f.k, expected);
    }
}

#[test]
fn newton_order_uses_shifted_point() {
    // v_f is ≥ 1 exactly on the Jacobian-ideal side: v(1) for x^2+y^2 is 1.
    let poly = build(&[&[2, 0], &[0, 2]]);
    assert_eq!(
        poly.newton_order(&[0, 0]).unwrap(),
        BigRational::from_integer(BigInt::from(1))
    );
}
