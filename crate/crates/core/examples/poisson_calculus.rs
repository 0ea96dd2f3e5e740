// Poisson brackets, Hamiltonian vector fields, Koszul brackets and Lie derivatives.

use momenta::poissongeo::{OneForm, PoissonStructure, VectorField};
use momenta::symexpr::{parse_expr, RatFunc, Vars};

pub fn run() -> momenta::Result<()> {
    let v = Vars::new(&["x", "y", "z"])?;
    let x = |i| RatFunc::var(&v, i);
    let zero = RatFunc::zero(&v);
    let pi = PoissonStructure::new(
        &v,
        vec![vec![zero.clone(), x(2), -x(1)], vec![-x(2), zero.clone(), x(0)], vec![x(1), -x(0), zero]],
    )?;
    println!("{}", pi.check_jacobi().headline());

    let casimir = parse_expr("x^2 + y^2 + z^2", &v)?;
    println!("{{x, y}} = {}", pi.bracket(&x(0), &x(1)));
    println!("{{x, x^2 + y^2 + z^2}} = {}", pi.bracket(&x(0), &casimir));

    let h = parse_expr("x*y", &v)?;
    let xh = pi.hamiltonian_vf(&h);
    println!("X_(x*y) components: {:?}", xh.comps().iter().map(|c| c.to_string()).collect::<Vec<_>>());

    let k = pi.koszul_bracket(&OneForm::exact(&x(0)), &OneForm::exact(&x(1)));
    println!("[dx, dy]_pi = d{{x, y}}: {}", k == OneForm::exact(&pi.bracket(&x(0), &x(1))));

    let rotation = VectorField::new(&v, vec![-x(1), x(0), RatFunc::zero(&v)])?;
    println!("L_rotation pi = 0: {}", pi.lie_derivative(&rotation).is_zero());
    Ok(())
}

#[allow(dead_code)]
fn main() -> momenta::Result<()> {
    run()
}
