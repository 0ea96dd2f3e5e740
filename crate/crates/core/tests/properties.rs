use momenta::poissongeo::{OneForm, PoissonStructure};
use momenta::starprod::{HbarSeries, StarProduct};
use momenta::symexpr::{parse_expr, rat, Monomial, Polynomial, RatFunc, Vars};
use proptest::prelude::*;

fn canonical() -> Vars {
    Vars::new(&["q", "p"]).unwrap()
}

fn so3() -> Vars {
    Vars::new(&["x", "y", "z"]).unwrap()
}

fn poly(n: usize, max_terms: usize, max_deg: u32) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), -4i64..=4), 1..=max_terms)
}

fn build(vars: &Vars, terms: &[(Vec<u32>, i64)]) -> RatFunc {
    RatFunc::from_poly(Polynomial::from_terms(vars, terms.iter().map(|(e, c)| (Monomial(e.clone()), rat(*c, 1)))))
}

fn denominator(vars: &Vars, terms: &[(Vec<u32>, i64)]) -> RatFunc {
    build(vars, terms) * build(vars, terms) + RatFunc::one(vars)
}

fn canonical_pi(v: &Vars) -> PoissonStructure {
    let z = RatFunc::zero(v);
    let o = RatFunc::one(v);
    PoissonStructure::new(v, vec![vec![z.clone(), o.clone()], vec![-o, z]]).unwrap()
}

fn so3_pi(v: &Vars) -> PoissonStructure {
    let x = |i| RatFunc::var(v, i);
    let z = RatFunc::zero(v);
    PoissonStructure::new(
        v,
        vec![vec![z.clone(), x(2), -x(1)], vec![-x(2), z.clone(), x(0)], vec![x(1), -x(0), z]],
    )
    .unwrap()
}

fn moyal(order: usize) -> StarProduct {
    let m = vec![vec![rat(0, 1), rat(1, 1)], vec![rat(-1, 1), rat(0, 1)]];
    StarProduct::moyal(&canonical(), m, order).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ring_laws(a in poly(2, 3, 2), b in poly(2, 3, 2), c in poly(2, 3, 2), d in poly(2, 2, 1)) {
        let v = canonical();
        let (f, g) = (build(&v, &a) / denominator(&v, &d), build(&v, &b));
        let h = build(&v, &c);
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        if !f.is_zero() {
            prop_assert!((&f / &f).is_one());
        }
    }

    #[test]
    fn print_parse_round_trip(a in poly(2, 4, 3), d in poly(2, 2, 2)) {
        let v = canonical();
        let f = build(&v, &a) / denominator(&v, &d);
        let back = parse_expr(&f.to_string(), &v).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_string(), f.to_string());
    }

    #[test]
    fn derivative_is_a_derivation(a in poly(2, 3, 2), b in poly(2, 3, 2), d in poly(2, 2, 1)) {
        let v = canonical();
        let f = build(&v, &a) / denominator(&v, &d);
        let g = build(&v, &b);
        for i in 0..2 {
            prop_assert_eq!((&f * &g).derivative(i), &(&f.derivative(i) * &g) + &(&f * &g.derivative(i)));
        }
    }

    #[test]
    fn poisson_bracket_laws(a in poly(3, 2, 2), b in poly(3, 2, 2), c in poly(3, 2, 2)) {
        let v = so3();
        let pi = so3_pi(&v);
        let (f, g, h) = (build(&v, &a), build(&v, &b), build(&v, &c));
        prop_assert_eq!(pi.bracket(&f, &g), -pi.bracket(&g, &f));
        prop_assert_eq!(pi.bracket(&f, &(&g * &h)), &(&pi.bracket(&f, &g) * &h) + &(&g * &pi.bracket(&f, &h)));
        prop_assert!(pi.jacobiator(&f, &g, &h).is_zero());
    }

    #[test]
    fn koszul_bracket_of_exact_forms(a in poly(3, 2, 2), b in poly(3, 2, 2)) {
        let v = so3();
        let pi = so3_pi(&v);
        let (f, g) = (build(&v, &a), build(&v, &b));
        let lhs = pi.koszul_bracket(&OneForm::exact(&f), &OneForm::exact(&g));
        prop_assert_eq!(lhs, OneForm::exact(&pi.bracket(&f, &g)));
    }

    #[test]
    fn moyal_associative_with_poisson_first_order(a in poly(2, 2, 2), b in poly(2, 2, 2), c in poly(2, 2, 2)) {
        let v = canonical();
        let sp = moyal(4);
        let s = |t: &[(Vec<u32>, i64)]| HbarSeries::exact(build(&v, t), 4);
        let (f, g, h) = (s(&a), s(&b), s(&c));
        let left = sp.multiply(&sp.multiply(&f, &g).unwrap(), &h).unwrap();
        let right = sp.multiply(&f, &sp.multiply(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left.first_difference(&right).unwrap(), None);
        let pi = canonical_pi(&v);
        let fg = build(&v, &a);
        let gg = build(&v, &b);
        let p1 = sp.bidiff(1, &fg, &gg).unwrap() - sp.bidiff(1, &gg, &fg).unwrap();
        prop_assert_eq!(p1, pi.bracket(&fg, &gg));
    }

    #[test]
    fn raising_order_keeps_the_prefix(a in poly(2, 3, 3), b in poly(2, 3, 3)) {
        let v = canonical();
        let f = build(&v, &a);
        let g = build(&v, &b);
        let low = moyal(2);
        let high = moyal(3);
        let pl = low.multiply(&HbarSeries::exact(f.clone(), 2), &HbarSeries::exact(g.clone(), 2)).unwrap();
        let ph = high.multiply(&HbarSeries::exact(f, 3), &HbarSeries::exact(g, 3)).unwrap();
        prop_assert_eq!(ph.truncate(pl.known_order()), pl.clone());
        prop_assert!(ph.agrees_with(&pl));
    }
}
