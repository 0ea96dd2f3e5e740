// Moyal and explicit star products on h-series, with associativity checks.

use momenta::poissongeo::PoissonStructure;
use momenta::sample::Sampler;
use momenta::starprod::{check_associativity, check_first_order, HbarSeries, StarProduct};
use momenta::symexpr::{int, parse_expr, RatFunc, Vars};

pub fn run() -> momenta::Result<()> {
    let v = Vars::new(&["q", "p"])?;
    let star = StarProduct::moyal(&v, vec![vec![int(0), int(1)], vec![int(-1), int(0)]], 3)?;

    let q = HbarSeries::parse("q", &v, 3)?;
    let p = HbarSeries::parse("p", &v, 3)?;
    println!("q * p = {}", star.multiply(&q, &p)?);
    println!("[q, p] = {}", star.commutator(&q, &p)?);

    let a = HbarSeries::parse("1 + q + h*p", &v, 3)?;
    let ainv = star.inverse(&a)?;
    println!("(1 + q + h*p)^-1 = {ainv}");
    println!("a * a^-1 = {}", star.multiply(&a, &ainv)?);

    let f = parse_expr("q^2", &v)?;
    let g = parse_expr("p^2", &v)?;
    for n in 0..=2 {
        println!("P_{n}(q^2, p^2) = {}", star.bidiff(n, &f, &g)?);
    }

    let z = RatFunc::zero(&v);
    let one = RatFunc::one(&v);
    let pi = PoissonStructure::new(&v, vec![vec![z.clone(), one.clone()], vec![-one, z]])?;
    let mut s = Sampler::new(7);
    let triples = s.triples(&v, 4, 3);
    let pairs = s.pairs(&v, 4, 2);
    println!("{}", check_associativity(&star, &triples).headline());
    println!("{}", check_first_order(&star, &pi, &pairs).headline());
    Ok(())
}

#[allow(dead_code)]
fn main() -> momenta::Result<()> {
    run()
}
