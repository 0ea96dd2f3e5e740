// Quantum actions built from star-commutators, and the relation they realize.

use std::sync::Arc;

use momenta::hscalar::HScalar;
use momenta::momentum::{
    check_bracket_representation, check_eq_br, check_hopf_action, higher_action_apply, quantum_action_apply,
    semiclassical_limit, QuantumActionData,
};
use momenta::poissongeo::PoissonStructure;
use momenta::quantumgroup::{DeformedCoproduct, Presentation, UTensor};
use momenta::starprod::{HbarSeries, StarProduct};
use momenta::symexpr::{int, parse_expr, RatFunc, Vars};

fn presentation(rel: &str) -> momenta::Result<Arc<Presentation>> {
    let basis = vec!["xi".to_string(), "eta".to_string()];
    let r = Presentation::parse_normal(&basis, rel)?;
    Presentation::new(&basis, [((0, 1), r)], Some(3))
}

pub fn run() -> momenta::Result<()> {
    let v = Vars::new(&["q", "p"])?;
    let star = StarProduct::moyal(&v, vec![vec![int(0), int(1)], vec![int(-1), int(0)]], 4)?;
    let a = HbarSeries::parse("1 + q", &v, 4)?;
    let b = HbarSeries::parse("-p", &v, 4)?;
    let ainv = star.inverse(&a)?;
    let qa = QuantumActionData::from_pairs(star.clone(), &["xi", "eta"], vec![(a.clone(), b.clone()), (a.clone(), ainv)])?;

    let f = HbarSeries::parse("p", &v, 4)?;
    println!("xi . q = {}", quantum_action_apply(&qa, 0, &HbarSeries::parse("q", &v, 4)?)?);
    println!("xi . p = {}", quantum_action_apply(&qa, 0, &f)?);
    println!("eta . p = {}", quantum_action_apply(&qa, 1, &f)?);
    println!("(xi, eta) . (p, p) = {}", higher_action_apply(&qa, &[0, 1], &[f.clone(), f])?);

    let z = RatFunc::zero(&v);
    let one = RatFunc::one(&v);
    let pi = PoissonStructure::new(&v, vec![vec![z.clone(), one.clone()], vec![-one, z]])?;
    for (g, x) in semiclassical_limit(&qa, &pi).iter().enumerate() {
        let comps: Vec<String> = x.comps().iter().map(|c| c.to_string()).collect();
        println!("semiclassical field of {}: {comps:?}", qa.names()[g]);
    }

    let samples: Vec<RatFunc> =
        ["q", "p", "p^2", "q*p + 1"].iter().map(|s| parse_expr(s, &v)).collect::<momenta::Result<_>>()?;
    println!("{}", check_eq_br(&star, &a, &b, &samples).headline());

    let stated = presentation("3*eta - h*eta^2")?;
    let r = check_bracket_representation(&qa, &stated, &samples);
    println!("{}", r.headline());
    for n in &r.notes {
        println!("  note: {n}");
    }
    let realized = presentation("-eta + h*eta^2")?;
    println!("{}", check_bracket_representation(&qa, &realized, &samples).headline());

    let images = vec![
        UTensor::parse(&realized, "xi(x)1 - h*eta(x)xi + 1(x)xi")?,
        UTensor::parse(&realized, "eta(x)1 - h*eta(x)eta + 1(x)eta")?,
    ];
    let d = DeformedCoproduct::new(&realized, images, vec![HScalar::zero(), HScalar::zero()])?;
    let pairs: Vec<(RatFunc, RatFunc)> = samples.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    println!("{}", check_hopf_action(&qa, &d, &pairs).headline());
    Ok(())
}

#[allow(dead_code)]
fn main() -> momenta::Result<()> {
    run()
}
