use algebroid_core::algebroid::{presets, AlgebroidMorphism};
use algebroid_core::ce::{self, pullback_form, AlgForm, Blade};
use algebroid_core::chern_weil::{char_class, CharacteristicClass, GConnection};
use algebroid_core::groupoid::{convolve, trace, FiniteGroupoid};
use algebroid_core::scalar::rational::int;
use algebroid_core::{AlgebroidPresentation, Expr, Poly, Scalar};
use num_rational::BigRational;
use proptest::prelude::*;

fn poly(nvars: usize, max_degree: u32) -> impl Strategy<Value = Poly> {
    let term = (prop::collection::vec(0..=max_degree, nvars), -4i64..=4);
    prop::collection::vec(term, 0..5).prop_map(move |terms| {
        let terms = terms
            .into_iter()
            .filter(|(e, _)| e.iter().sum::<u32>() <= max_degree)
            .map(|(e, c)| (e, int(c)));
        Poly::from_terms(nvars, terms).unwrap()
    })
}

fn form(rank: usize, nvars: usize, degree: usize) -> impl Strategy<Value = AlgForm<Poly>> {
    let blades = Blade::all_of_degree(rank, degree);
    prop::collection::vec(poly(nvars, 2), blades.len())
        .prop_map(move |coeffs| AlgForm::from_terms(rank, nvars, blades.clone().into_iter().zip(coeffs)))
}

fn connection(rank: usize, nvars: usize, m: usize) -> impl Strategy<Value = GConnection<Poly>> {
    prop::collection::vec(prop::collection::vec(prop::collection::vec(poly(nvars, 1), m), m), rank)
        .prop_map(move |omega| GConnection::new(rank, nvars, omega).unwrap())
}

fn algebroids() -> Vec<AlgebroidPresentation<Poly>> {
    vec![
        presets::su2(),
        presets::aff1(),
        AlgebroidPresentation::tangent(3),
        presets::so2_plane(),
        presets::so3_space(),
    ]
}

/// An index into [`algebroids`] with a homogeneous form on that algebroid.
fn algebroid_form() -> impl Strategy<Value = (usize, AlgForm<Poly>)> {
    (0..algebroids().len()).prop_flat_map(|which| {
        let alg = &algebroids()[which];
        let (r, n) = (alg.rank(), alg.base_dim());
        (0..=r)
            .prop_flat_map(move |degree| form(r, n, degree))
            .prop_map(move |f| (which, f))
    })
}

fn point(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.5f64..1.5, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poly_ring_axioms(a in poly(2, 3), b in poly(2, 3), c in poly(2, 3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &Poly::one(2), a);
    }

    #[test]
    fn derivative_is_a_derivation(a in poly(3, 3), b in poly(3, 3), i in 0usize..3) {
        let lhs = (&a * &b).derive(i).unwrap();
        let rhs = &(&a.derive(i).unwrap() * &b) + &(&a * &b.derive(i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn poly_and_expr_agree(a in poly(3, 4), p in point(3)) {
        let exact = a.eval_f64(&p).unwrap();
        let via_expr = a.to_expr().eval(&p).unwrap();
        prop_assert!((exact - via_expr).abs() <= 1e-12 * (1.0 + exact.abs()));
    }

    #[test]
    fn expr_derivative_matches_finite_differences(a in poly(2, 2), b in poly(2, 2), p in point(2), i in 0usize..2) {
        let (ea, eb) = (a.to_expr(), b.to_expr());
        let e = ea.sin().mul(&eb.mul(&Expr::from_int(1, 2).div(&Expr::from_int(4, 2))).exp())
            .add(&ea.mul(&ea).add(&Expr::one(2)).sqrt());
        let h = 1e-5;
        let mut plus = p.clone();
        let mut minus = p.clone();
        plus[i] += h;
        minus[i] -= h;
        let fd = (e.eval(&plus).unwrap() - e.eval(&minus).unwrap()) / (2.0 * h);
        let exact = e.derive(i).unwrap().eval(&p).unwrap();
        prop_assert!((fd - exact).abs() <= 1e-6 * (1.0 + exact.abs()), "fd {} vs {}", fd, exact);
    }

    #[test]
    fn d_squared_vanishes((which, f) in algebroid_form()) {
        let alg = &algebroids()[which];
        prop_assert!(ce::d(alg, &ce::d(alg, &f).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn wedge_is_associative_and_graded_commutative(
        a in form(4, 2, 1), b in form(4, 2, 2), c in form(4, 2, 1)
    ) {
        let ab_c = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let a_bc = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap());
        prop_assert_eq!(a.wedge(&c).unwrap(), c.wedge(&a).unwrap().neg());
    }

    #[test]
    fn d_is_a_graded_derivation(a in form(3, 3, 1), b in form(3, 3, 1), which in 0usize..2) {
        let alg = if which == 0 { AlgebroidPresentation::tangent(3) } else { presets::so3_space() };
        let lhs = ce::d(&alg, &a.wedge(&b).unwrap()).unwrap();
        let rhs = ce::d(&alg, &a).unwrap().wedge(&b).unwrap()
            .sub(&a.wedge(&ce::d(&alg, &b).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_along_the_anchor_commutes_with_d(f in form(3, 3, 1), g in form(3, 3, 2)) {
        let a = presets::so3_space::<Poly>();
        let t = AlgebroidPresentation::tangent_named(a.coords().to_vec());
        let rho = AlgebroidMorphism::anchor_of(&a);
        for x in [&f, &g] {
            let lhs = ce::d(&a, &pullback_form(&rho, x, 3).unwrap()).unwrap();
            let rhs = pullback_form(&rho, &ce::d(&t, x).unwrap(), 3).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn chern_character_is_additive_and_multiplicative(
        c1 in connection(4, 0, 2), c2 in connection(4, 0, 1)
    ) {
        let alg = presets::abelian::<Poly>(4);
        let ch = |c: &GConnection<Poly>| char_class(&alg, c, CharacteristicClass::Ch, 4, None).unwrap().form;
        let (ch1, ch2) = (ch(&c1), ch(&c2));
        prop_assert_eq!(ch(&c1.direct_sum(&c2).unwrap()), ch1.add(&ch2).unwrap());
        prop_assert_eq!(ch(&c1.tensor(&c2).unwrap()), ch1.wedge_truncated(&ch2, 4).unwrap());
    }

    #[test]
    fn classes_are_closed_and_natural(conn in connection(2, 2, 2)) {
        let t = AlgebroidPresentation::<Poly>::tangent(2);
        let a = presets::so2_plane::<Poly>();
        let rho = AlgebroidMorphism::anchor_of(&a);
        let pulled = conn.pullback(&rho, 2).unwrap();
        for class in [CharacteristicClass::TotalChern, CharacteristicClass::Ch, CharacteristicClass::Todd] {
            let on_t = char_class(&t, &conn, class, 2, None).unwrap().form;
            prop_assert!(ce::d(&t, &on_t).unwrap().is_zero());
            let on_a = char_class(&a, &pulled, class, 1, None).unwrap().form;
            prop_assert_eq!(pullback_form(&rho, &on_t, 2).unwrap().truncated(1), on_a);
        }
    }

    #[test]
    fn convolution_is_associative_and_trace_cyclic(
        f in prop::collection::vec(-3i64..=3, 12),
        g in prop::collection::vec(-3i64..=3, 12),
        h in prop::collection::vec(-3i64..=3, 12),
        w in (1i64..5, 1i64..5),
    ) {
        let grp = FiniteGroupoid::pair(3).disjoint_union(&FiniteGroupoid::cyclic(3));
        let lift = |v: &[i64]| -> Vec<BigRational> { v.iter().map(|&c| int(c)).collect() };
        let (f, g, h) = (lift(&f), lift(&g), lift(&h));
        let fg_h = convolve(&grp, &convolve(&grp, &f, &g).unwrap(), &h).unwrap();
        let f_gh = convolve(&grp, &f, &convolve(&grp, &g, &h).unwrap()).unwrap();
        prop_assert_eq!(fg_h, f_gh);
        let weights = vec![int(w.0), int(w.0), int(w.0), int(w.1)];
        let fg = trace(&grp, &convolve(&grp, &f, &g).unwrap(), &weights).unwrap();
        let gf = trace(&grp, &convolve(&grp, &g, &f).unwrap(), &weights).unwrap();
        prop_assert_eq!(fg, gf);
    }
}
