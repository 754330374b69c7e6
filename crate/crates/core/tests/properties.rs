use num_complex::Complex64;
use proptest::prelude::*;

use suq2::clebsch::index_set;
use suq2::dqg::AlgElement;
use suq2::dual::DualElement;
use suq2::report::{Check, ConfigEcho, Report, RunConfig};
use suq2::reps::{build_rep, relation_residuals, Sign};
use suq2::verify;
use suq2::words::{coproduct_then_left, coproduct_then_right, formal_antipode, formal_star, AlgPoly, Generator, Word};
use suq2::{Params, QuantumGroup, RepIndex, Weight};

fn t_strategy() -> impl Strategy<Value = f64> {
    0.05f64..0.8
}

fn word_strategy() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(Generator::ALL.to_vec()), 0..4).prop_map(Word)
}

fn poly_strategy() -> impl Strategy<Value = AlgPoly> {
    prop::collection::vec((word_strategy(), -2.0f64..2.0, -2.0f64..2.0), 1..4).prop_map(|terms| {
        terms.into_iter().fold(AlgPoly::zero(), |acc, (w, re, im)| &acc + &AlgPoly::term(w, Complex64::new(re, im)))
    })
}

fn matrix_strategy(d: usize) -> impl Strategy<Value = suq2::linalg::CMat> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d * d)
        .prop_map(move |v| suq2::linalg::CMat::from_fn(d, d, |i, j| Complex64::new(v[i * d + j].0, v[i * d + j].1)))
}

fn element_strategy(twice_max: u32) -> impl Strategy<Value = AlgElement> {
    let parts: Vec<_> = (0..=twice_max).map(|tw| matrix_strategy(tw as usize + 1)).collect();
    parts.prop_map(|ms| AlgElement::from_components(ms.into_iter().enumerate().map(|(i, m)| (RepIndex::from_twice(i as u32), m))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weight_positions_round_trip(twice in 0u32..12) {
        let n = RepIndex::from_twice(twice);
        for (p, j) in n.weights().enumerate() {
            prop_assert_eq!(n.position(j), Some(p));
            prop_assert_eq!(n.weight_at(p), j);
        }
        prop_assert_eq!(n.position(Weight(twice as i32 + 2)), None);
    }

    #[test]
    fn index_set_dimensions_add_up(a in 0u32..10, b in 0u32..10) {
        let (n, m) = (RepIndex::from_twice(a), RepIndex::from_twice(b));
        let total: usize = index_set(n, m).iter().map(|k| k.dim()).sum();
        prop_assert_eq!(total, n.dim() * m.dim());
    }

    #[test]
    fn representations_satisfy_relations(t in t_strategy(), twice in 0u32..8, minus in any::<bool>()) {
        let p = Params::new(t).unwrap();
        let sign = if minus { Sign::Minus } else { Sign::Plus };
        let rep = build_rep(&p, RepIndex::from_twice(twice), sign).unwrap();
        let worst = relation_residuals(&p, rep.q(), rep.e(), rep.f(), p.coupling()).into_iter().fold(0.0, f64::max);
        prop_assert!(worst < 1e-9, "{}", worst);
    }

    #[test]
    fn formal_coproduct_is_coassociative(x in poly_strategy()) {
        prop_assert_eq!(coproduct_then_left(&x), coproduct_then_right(&x));
    }

    #[test]
    fn formal_star_antipode_involution(x in poly_strategy(), t in t_strategy()) {
        let lambda = t.exp();
        let back = formal_star(&formal_antipode(&formal_star(&formal_antipode(&x, lambda)), lambda));
        prop_assert!(back.distance(&x) < 1e-12);
    }

    #[test]
    fn decompositions_are_complete(t in t_strategy(), a in 0u32..5, b in 0u32..5) {
        let qg = QuantumGroup::new(Params::new(t).unwrap());
        let d = qg.decompose(RepIndex::from_twice(a), RepIndex::from_twice(b)).unwrap();
        prop_assert!(d.completeness_residual() < 1e-10);
        prop_assert!(d.orthogonality_residual() < 1e-10);
    }

    #[test]
    fn hopf_laws_on_random_elements(t in t_strategy(), a in element_strategy(3), b in element_strategy(3)) {
        let qg = QuantumGroup::new(Params::new(t).unwrap());
        let window: Vec<RepIndex> = RepIndex::up_to(RepIndex::HALF).collect();
        let (h, one) = (RepIndex::HALF, RepIndex::from_twice(2));
        prop_assert!(verify::counit_law_residual(&qg, &a, &window).unwrap() < 1e-10);
        prop_assert!(verify::antipode_law_residual(&qg, &a, h).unwrap() < 1e-9);
        prop_assert!(verify::homomorphism_residual(&qg, &a, &b, h, one).unwrap() < 1e-9);
        prop_assert!(verify::coassociativity_residual(&qg, &a, h, h, h).unwrap() < 1e-9);
        prop_assert!(verify::antipode_identities_residual(&qg, &a, &b) < 1e-9);
    }

    #[test]
    fn integrals_are_faithful_on_positive_elements(t in t_strategy(), a in element_strategy(3)) {
        let qg = QuantumGroup::new(Params::new(t).unwrap());
        let positive = a.star().mul(&a);
        let phi = qg.left_integral(&positive);
        let psi = qg.right_integral(&positive);
        prop_assert!(phi.re > 0.0 && phi.im.abs() < 1e-10 * phi.re);
        prop_assert!(psi.re > 0.0 && psi.im.abs() < 1e-10 * psi.re);
    }

    #[test]
    fn haar_state_is_positive_on_linear_u_words(t in t_strategy(), coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 5)) {
        let qg = QuantumGroup::new(Params::new(t).unwrap());
        let u = qg.u_matrix();
        let mut b = DualElement::unit().scale(Complex64::new(coeffs[0].0, coeffs[0].1));
        for (idx, (re, im)) in coeffs[1..].iter().enumerate() {
            b = b.add(&u.get(idx / 2, idx % 2).scale(Complex64::new(*re, *im)));
        }
        let value = qg.dual_haar(&qg.dual_mul(&qg.dual_star(&b), &b).unwrap());
        prop_assert!(value.re >= -1e-12 && value.im.abs() < 1e-12, "{}", value);
    }

    #[test]
    fn report_json_round_trips(residuals in prop::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), 1..6), t in t_strategy()) {
        let config = RunConfig { t, ..RunConfig::default() };
        let checks = residuals.iter().enumerate().map(|(i, r)| Check::new(format!("c{i}"), "x", *r, 1e-9)).collect();
        let report = Report::new("prop", &config, checks, Vec::new());
        let parsed = Report::from_json(&report.to_json().unwrap()).unwrap();
        prop_assert_eq!(&parsed, &report);
        prop_assert_eq!(parsed.config, ConfigEcho::from(&config));
    }
}
