// Infinitesimal momentum maps valued in one-forms over a Lie bialgebra.

use momenta::liebialg::{Cobracket, LieAlgebra, LieBialgebra};
use momenta::momentum::{check_infinitesimal_mm, maurer_cartan_residual};
use momenta::poissongeo::{OneForm, PoissonStructure};
use momenta::symexpr::{parse_expr, RatFunc, Vars};

pub fn run() -> momenta::Result<()> {
    let v = Vars::new(&["x", "y", "z"])?;
    let x = |i| RatFunc::var(&v, i);
    let zero = RatFunc::zero(&v);
    let pi = PoissonStructure::new(
        &v,
        vec![vec![zero.clone(), x(2), -x(1)], vec![-x(2), zero.clone(), x(0)], vec![x(1), -x(0), zero]],
    )?;
    let so3 = {
        let a = LieAlgebra::abelian(&["e1", "e2", "e3"])?;
        let p = |s: &str| a.parse_element(s);
        LieAlgebra::new(&["e1", "e2", "e3"], [((0, 1), p("e3")?), ((1, 2), p("e1")?), ((2, 0), p("e2")?)])?
    };
    let b = LieBialgebra::new(so3, Cobracket::zero(3))?;

    let alpha: Vec<OneForm> = (0..3).map(|i| OneForm::exact(&x(i))).collect();
    for r in check_infinitesimal_mm(&alpha, &b, &pi) {
        println!("{}", r.headline());
    }

    let twisted = vec![
        OneForm::new(&v, vec![parse_expr("y", &v)?, RatFunc::zero(&v), RatFunc::zero(&v)])?,
        alpha[1].clone(),
        alpha[2].clone(),
    ];
    println!("Maurer-Cartan residual for e1: {}", !maurer_cartan_residual(&twisted, &b, 0).is_zero());
    for r in check_infinitesimal_mm(&twisted, &b, &pi) {
        println!("{}", r.headline());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> momenta::Result<()> {
    run()
}
