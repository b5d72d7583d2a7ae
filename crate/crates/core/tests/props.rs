//! Property-based invariants for the polynomial layer and the parser.

mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use nspec_core::fracpoly::{exp, inflate, Coeff, FracPoly};
use nspec_core::polyparse::{parse_polynomial, Support};

fn arb_fracpoly() -> impl Strategy<Value = FracPoly> {
    prop::collection::vec(((-30i64..30), (1i64..8), (-5i64..6)), 0..8).prop_map(|terms| {
        let mut p = FracPoly::zero();
        for (n, d, c) in terms {
            p.add_term(exp(n, d), Coeff::from(c));
        }
        p
    })
}

fn arb_int_exp_poly() -> impl Strategy<Value = FracPoly> {
    prop::collection::vec(((0i64..6), (-4i64..5)), 0..6).prop_map(|terms| {
        let mut p = FracPoly::zero();
        for (n, c) in terms {
            p.add_term(exp(n, 1), Coeff::from(c));
        }
        p
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_fracpoly(), b in arb_fracpoly(), c in arb_fracpoly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &FracPoly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn reflect_involution_and_additivity(a in arb_fracpoly(), b in arb_fracpoly(), n in -4i64..8) {
        prop_assert_eq!(a.reflect(n).reflect(n), a.clone());
        prop_assert_eq!((&a + &b).reflect(n), &a.reflect(n) + &b.reflect(n));
    }

    #[test]
    fn phi_ignores_integer_shifts(a in arb_fracpoly(), b in arb_fracpoly(), k in -5i64..6) {
        let shifted = b.shift(&exp(k, 1));
        prop_assert_eq!((&a + &shifted).phi(), &a.phi() + &b.phi());
        prop_assert_eq!(a.phi().phi(), a.phi());
    }

    #[test]
    fn mass_is_multiplicative(a in arb_fracpoly(), b in arb_fracpoly()) {
        prop_assert_eq!((&a * &b).mass(), a.mass() * b.mass());
    }

    #[test]
    fn inflate_specialize_roundtrip(r in arb_int_exp_poly(), k in -3i64..8) {
        let b = inflate(&r, k).unwrap();
        prop_assert_eq!(b.specialize_u(), r);
    }

    #[test]
    fn slice_le_is_monotone(a in arb_fracpoly()) {
        let one = exp(1, 1);
        let sliced = a.slice_le(&one);
        for (e, c) in sliced.iter() {
            prop_assert!(*e <= one);
            prop_assert_eq!(c.clone(), a.coeff(e));
        }
        for (e, _) in a.iter() {
            if *e <= one {
                prop_assert_eq!(sliced.coeff(e), a.coeff(e));
            }
        }
    }
}

fn arb_support() -> impl Strategy<Value = Support> {
    let point = prop::collection::vec(0i64..7, 3);
    prop::collection::vec(point, 1..6).prop_filter_map("needs a nonzero point", |pts| {
        let pts: Vec<Vec<i64>> = pts
            .into_iter()
            .filter(|p| p.iter().any(|&x| x > 0))
            .collect();
        if pts.is_empty() {
            return None;
        }
        Support::from_points(3, pts).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_render_round_trip(s in arb_support()) {
        let text = s.render();
        let back = parse_polynomial(&text).unwrap();
        // Rendering writes every variable that appears; supports whose
        // points never use the last variable re-parse at lower dimension,
        // so compare through a second render.
        prop_assert_eq!(back.render(), text);
    }

    #[test]
    fn q_reflects_through_its_own_dimension(s in arb_support()) {
        use nspec_core::facepoly::face_parallelepiped;
        use nspec_core::newton::NewtonPolyhedron;
        let poly = NewtonPolyhedron::build(&s);
        if !poly.is_simplicial() {
            return Ok(());
        }
        for face in poly.compact_faces() {
            let (q, qhat) = face_parallelepiped(&poly, face).unwrap();
            prop_assert_eq!(q.reflect(face.dim + 1), q.clone());
            prop_assert_eq!(qhat.mass(), {
                let mut total = BigInt::from(0);
                for tau in poly.subfaces(face) {
                    if tau.compact {
                        total += face_parallelepiped(&poly, tau).unwrap().0.mass();
                    }
                }
                total
            });
        }
    }
}
