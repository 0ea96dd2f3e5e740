// Classical momentum maps: the defining identity, equivariance and Noether.

use momenta::liebialg::LieAlgebra;
use momenta::momentum::{check_classical_mm, check_equivariance, check_noether};
use momenta::poissongeo::{check_canonical_action, PoissonStructure, VectorField};
use momenta::symexpr::{parse_expr, RatFunc, Vars};

pub fn run() -> momenta::Result<()> {
    let v = Vars::new(&["q", "p"])?;
    let zero = RatFunc::zero(&v);
    let one = RatFunc::one(&v);
    let pi = PoissonStructure::new(&v, vec![vec![zero.clone(), one.clone()], vec![-one, zero]])?;
    let g = LieAlgebra::abelian(&["xi"])?;
    let names = g.basis().to_vec();

    let rotation = VectorField::new(&v, vec![parse_expr("-p", &v)?, parse_expr("q", &v)?])?;
    let j = vec![parse_expr("(q^2 + p^2)/2", &v)?];
    println!("{}", check_canonical_action(&[rotation.clone()], &g, &pi).headline());
    println!("{}", check_classical_mm(&j, &[rotation], &names, &pi).headline());
    println!("{}", check_equivariance(&j, &g, &pi).headline());

    println!("{}", check_noether(&j, &names, &parse_expr("q^2 + p^2", &v)?, &pi).headline());
    println!("{}", check_noether(&j, &names, &parse_expr("q", &v)?, &pi).headline());

    let shift = vec![VectorField::coordinate(&v, 0)];
    println!("{}", check_classical_mm(&[parse_expr("q", &v)?], &shift, &names, &pi).headline());
    Ok(())
}

#[allow(dead_code)]
fn main() -> momenta::Result<()> {
    run()
}
