// Lie algebras from structure constants, cobrackets, and the bialgebra checks.

use momenta::hscalar::HScalar;
use momenta::liebialg::{Cobracket, LieAlgebra, LieBialgebra};
use momenta::symexpr::rat;

pub fn run() -> momenta::Result<()> {
    let g = LieAlgebra::new(&["xi", "eta"], [((0, 1), vec![HScalar::zero(), HScalar::from_int(3)])])?;
    println!("{}", g.check_jacobi().headline());
    println!("[xi, eta] = {}", g.fmt_element(g.structure(0, 1)));

    let delta = Cobracket::new(2, [((0, 1, 0), HScalar::constant(rat(-1, 2)))])?;
    let b = LieBialgebra::new(g, delta)?;
    println!("delta(xi) = {}", b.cobracket().fmt_image(b.algebra(), 0));
    println!("{}", b.check_cocycle().headline());
    println!("{}", b.check_cojacobi().headline());

    let dual = b.dual();
    let d = dual.algebra();
    println!("dual: [{}, {}] = {}", d.name(0), d.name(1), d.fmt_element(d.structure(0, 1)));

    let so3 = {
        let a = LieAlgebra::abelian(&["e1", "e2", "e3"])?;
        let p = |s: &str| a.parse_element(s);
        LieAlgebra::new(&["e1", "e2", "e3"], [((0, 1), p("e3")?), ((1, 2), p("e1")?), ((2, 0), p("e2")?)])?
    };
    let bad = LieBialgebra::new(so3, Cobracket::new(3, [((0, 1, 2), HScalar::one())])?)?;
    println!("{}", bad.check_cocycle().headline());
    Ok(())
}

#[allow(dead_code)]
fn main() -> momenta::Result<()> {
    run()
}
