use std::sync::Arc;

use proptest::prelude::*;

use nilpoly_core::builtins;
use nilpoly_core::exactalg::{
    in_span, rat, Derivation, Monomial, Polynomial, Rational, RationalMatrix, Ring,
};
use nilpoly_core::groupchart::{dilate, Chart};
use nilpoly_core::liecore::{apply_symbolic_matrix, AlgebraElement, FreeNilpotent, LieAlgebra};
use nilpoly_core::spoly::{degree_bound, spoly_basis, vandermonde_fit, SPolyProblem};

fn aff_ring() -> Arc<Ring> {
    builtins::aff_plus().ring
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// Polynomials in `x, y^{±1}, L`.
fn laurent_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0i32..3, -2i32..3, 0i32..3), small_rational()), 0..5).prop_map(|terms| {
        let ring = aff_ring();
        Polynomial::from_terms(
            &ring,
            terms
                .into_iter()
                .map(|((a, b, c), q)| (Monomial::from_exponents(vec![a, b, c]), q)),
        )
        .unwrap()
    })
}

fn poly_in(ring: Arc<Ring>, max_exp: i32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let n = ring.len();
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), small_rational()), 0..=max_terms)
        .prop_map(move |terms| {
            Polynomial::from_terms(&ring, terms.into_iter().map(|(e, q)| (Monomial::from_exponents(e), q))).unwrap()
        })
}

fn nilpotent_builtin() -> impl Strategy<Value = LieAlgebra> {
    prop::sample::select(vec!["heisenberg", "engel", "f23", "free3_2"]).prop_map(|n| builtins::by_name(n).unwrap())
}

fn rational_vec(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small_rational(), n)
}

fn constants(ring: &Arc<Ring>, v: &[Rational]) -> Vec<Polynomial> {
    v.iter().map(|c| Polynomial::constant(ring, c.clone())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(f in laurent_poly(), g in laurent_poly(), h in laurent_poly()) {
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn laurent_inverse(k in 1u32..5) {
        let ring = aff_ring();
        let y = Polynomial::parse(&ring, "y").unwrap();
        let inv = Polynomial::parse(&ring, "y^-1").unwrap();
        prop_assert_eq!(&y.pow(k) * &inv.pow(k), Polynomial::one(&ring));
    }

    #[test]
    fn display_parse_round_trip(f in laurent_poly()) {
        prop_assert_eq!(Polynomial::parse(f.ring(), &f.to_string()).unwrap(), f);
    }

    #[test]
    fn leibniz_rule(f in laurent_poly(), g in laurent_poly(), p in laurent_poly(), q in laurent_poly()) {
        let ring = aff_ring();
        let zero = Polynomial::zero(&ring);
        let d = Derivation::new(&ring, vec![p, q, zero]).unwrap();
        let lhs = d.apply(&(&f * &g)).unwrap();
        let rhs = &(&d.apply(&f).unwrap() * &g) + &(&f * &d.apply(&g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..6)) {
        let m = RationalMatrix::from_rows(5, rows.iter().map(|r| r.iter().map(|&c| rat(c, 1)).collect()).collect()).unwrap();
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), 5);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|c| *c == rat(0, 1)));
        }
    }

    #[test]
    fn bch_associative_on_rational_points(
        a in nilpotent_builtin(),
        seed in prop::collection::vec(small_rational(), 18),
    ) {
        let n = a.dim();
        let chart = Chart::first(&a).unwrap();
        let ring = Ring::new(&["c"]);
        let p = constants(&ring, &seed[..n]);
        let q = constants(&ring, &seed[n..2 * n]);
        let r = constants(&ring, &seed[2 * n..3 * n]);
        let bch = chart.bch();
        let left = bch.product(&bch.product(&p, &q).unwrap(), &r).unwrap();
        let right = bch.product(&p, &bch.product(&q, &r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let zero = vec![Polynomial::zero(&ring); n];
        let inv: Vec<Polynomial> = p.iter().map(|c| -c).collect();
        prop_assert_eq!(bch.product(&p, &inv).unwrap(), zero);
    }

    #[test]
    fn ad_is_automorphism(a in nilpotent_builtin(), x in rational_vec(6), y in rational_vec(6), z in rational_vec(6)) {
        let n = a.dim();
        let ring = Ring::new(&["c"]);
        let m = a.ad_exp(&constants(&ring, &x[..n])).unwrap();
        let (y, z) = (AlgebraElement::new(y[..n].to_vec()), AlgebraElement::new(z[..n].to_vec()));
        let image = |v: &AlgebraElement| apply_symbolic_matrix(&m, &v.to_symbolic(&ring));
        let lhs = image(&a.bracket(&y, &z).unwrap());
        let rhs = a.bracket_symbolic(&image(&y), &image(&z)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hall_basis_embeds(m in 2usize..4, s in 2usize..4) {
        let big = FreeNilpotent::new(m, s).unwrap();
        let small = FreeNilpotent::new(m, s - 1).unwrap();
        let d = small.dim();
        prop_assert!(big.algebra.check_jacobi().is_ok());
        let restricted: Vec<_> = big
            .algebra
            .constants()
            .into_iter()
            .filter(|&(i, j, k, _)| i < d && j < d && k < d)
            .collect();
        prop_assert_eq!(restricted, small.algebra.constants());
    }

    #[test]
    fn fields_are_left_invariant(a in nilpotent_builtin(), g in rational_vec(6), i in 0usize..6) {
        // X(f o L_g) = (X f) o L_g for f a coordinate function and g rational.
        let chart = Chart::second(&a).unwrap();
        let n = a.dim();
        let i = i % n;
        let ring = chart.ring().clone();
        let g = constants(&ring, &g[..n]);
        let x: Vec<Polynomial> = (0..n).map(|k| Polynomial::var(&ring, k)).collect();
        let moved = chart.point_from_first(
            &chart.bch().product(&g, &chart.point_to_first(&x).unwrap()).unwrap(),
        ).unwrap();
        let field = &chart.fields()[i];
        for f in (0..n).map(|k| Polynomial::var(&ring, k)) {
            let translated = f.compose(&ring, &moved).unwrap();
            let lhs = field.apply(&translated).unwrap();
            let rhs = field.apply(&f).unwrap().compose(&ring, &moved).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn homogeneous_fields_lower_degree(
        name in prop::sample::select(vec!["heisenberg", "engel", "f23"]),
        exps in prop::collection::vec(0i32..3, 5),
        i in 0usize..5,
    ) {
        let a = builtins::by_name(name).unwrap();
        let chart = Chart::second(&a).unwrap();
        let n = a.dim();
        let w = chart.weights().unwrap().to_vec();
        let mono = Monomial::from_exponents(exps[..n].to_vec());
        let d = mono.weighted_degree(&w);
        let f = Polynomial::monomial(chart.ring(), mono, rat(1, 1));
        let i = i % n;
        let g = chart.fields()[i].apply(&f).unwrap();
        for m in g.terms().keys() {
            prop_assert_eq!(m.weighted_degree(&w), d - w[i] as i64);
        }
    }

    #[test]
    fn chart_conversion_round_trip(f in poly_in(Chart::second(&builtins::f23()).unwrap().ring().clone(), 2, 4)) {
        let chart = Chart::second(&builtins::f23()).unwrap();
        let there = chart.function_to_first(&f).unwrap();
        prop_assert_eq!(chart.function_from_first(&there).unwrap(), f);
    }

    #[test]
    fn bound_is_monotone(k in 1u64..5, s in 1u64..5, l in 1u64..6) {
        let base = degree_bound(k, s, l).unwrap();
        for (k2, s2, l2) in [(k + 1, s, l), (k, s + 1, l), (k, s, l + 1)] {
            prop_assert!(degree_bound(k2, s2, l2).unwrap().nu >= base.nu);
        }
    }

    #[test]
    fn vandermonde_recovers_coefficients(coeffs in rational_vec(4), times in prop::collection::btree_set(-8i64..=8, 4)) {
        let samples: Vec<(Rational, Rational)> = times
            .iter()
            .map(|&t| {
                let t = rat(t, 1);
                let mut value = rat(0, 1);
                for c in coeffs.iter().rev() {
                    value = value * &t + c;
                }
                (t, value)
            })
            .collect();
        prop_assert_eq!(vandermonde_fit(&samples, 4).unwrap(), coeffs);
    }
}

fn small_problems() -> Vec<(LieAlgebra, Vec<(usize, u32)>)> {
    let h = builtins::heisenberg();
    let e = builtins::engel();
    vec![
        (h.clone(), vec![(0, 2), (1, 2)]),
        (h.clone(), vec![(0, 1), (1, 3)]),
        (h, vec![(0, 3), (1, 1)]),
        (e.clone(), vec![(0, 1), (1, 2)]),
        (e.clone(), vec![(0, 2), (1, 1)]),
        (e, vec![(0, 2), (1, 2)]),
        (builtins::f23(), vec![(0, 1), (1, 2)]),
    ]
}

#[test]
fn chart_covariance() {
    for (a, s) in small_problems() {
        let dirs: Vec<_> = s.iter().map(|&(i, k)| (a.basis_element(i), k)).collect();
        let second = Chart::second(&a).unwrap();
        let first = Chart::first(&a).unwrap();
        let in_second = spoly_basis(&SPolyProblem::per_direction(second.clone(), dirs.clone()).unwrap()).unwrap();
        let in_first = spoly_basis(&SPolyProblem::per_direction(first, dirs).unwrap()).unwrap();
        let converted: Vec<_> = in_second.basis.iter().map(|p| second.function_to_first(p).unwrap()).collect();
        assert!(
            nilpoly_core::exactalg::same_span(&converted, &in_first.basis).unwrap(),
            "{} {s:?}",
            a.name()
        );
    }
}

#[test]
fn dilation_components_stay_in_space() {
    for (a, s) in small_problems() {
        let chart = Chart::second(&a).unwrap();
        let dirs: Vec<_> = s.iter().map(|&(i, k)| (a.basis_element(i), k)).collect();
        let sol = spoly_basis(&SPolyProblem::per_direction(chart.clone(), dirs).unwrap()).unwrap();
        let w = chart.weights().unwrap();
        for f in &sol.basis {
            for (d, part) in f.homogeneous_components(w) {
                assert!(in_span(&part, &sol.basis).unwrap(), "{} component {d} of {f}", a.name());
                // Each component is an eigenvector of the dilation.
                let lr = chart.ring().extended(&["lambda"]);
                let lambda = Polynomial::var(&lr, chart.dim());
                let p = part.embed_prefix(&lr);
                assert_eq!(dilate(&chart, &lambda, &p).unwrap(), &lambda.pow(d as u32) * &p);
            }
        }
    }
}
