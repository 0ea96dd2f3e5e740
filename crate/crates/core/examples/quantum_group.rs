// PBW enveloping algebras, deformed coproducts, Hopf checks and the Gutt star product.

use momenta::hscalar::HScalar;
use momenta::liebialg::LieAlgebra;
use momenta::quantumgroup::{
    check_coassociativity, check_counit_antipode, check_square_zero, make_gutt_star, DeformedCoproduct, Presentation,
    UElement, UTensor,
};
use momenta::symexpr::{parse_expr, Vars};
use momenta::starprod::HbarSeries;

pub fn run() -> momenta::Result<()> {
    let basis = vec!["xi".to_string(), "eta".to_string()];
    let rel = Presentation::parse_normal(&basis, "-eta + h*eta^2")?;
    let pres = Presentation::new(&basis, [((0, 1), rel)], Some(3))?;

    let w = UElement::parse(&pres, "eta*xi")?;
    println!("eta*xi = {w}");
    let x = UElement::generator(&pres, 0);
    let e = UElement::generator(&pres, 1);
    println!("[xi, eta] = {}", x.commutator(&e)?);

    let images = vec![
        UTensor::parse(&pres, "xi(x)1 - h*eta(x)xi + 1(x)xi")?,
        UTensor::parse(&pres, "eta(x)1 - h*eta(x)eta + 1(x)eta")?,
    ];
    let d = DeformedCoproduct::new(&pres, images, vec![HScalar::zero(), HScalar::zero()])?;
    println!("Delta(xi) = {}", d.apply(&x)?.fmt(&pres));
    println!("{}", check_coassociativity(&d, 3).headline());
    println!("{}", check_square_zero(&d, 3).headline());
    for r in check_counit_antipode(&d, 2) {
        println!("{}", r.headline());
    }
    let delta = d.semiclassical_cobracket()?;
    let g = LieAlgebra::new(&["xi", "eta"], [((0, 1), vec![HScalar::zero(), HScalar::from_int(-1)])])?;
    println!("semiclassical delta(xi) = {}", delta.fmt_image(&g, 0));

    let so3 = {
        let a = LieAlgebra::abelian(&["x", "y", "z"])?;
        let p = |s: &str| a.parse_element(s);
        LieAlgebra::new(&["x", "y", "z"], [((0, 1), p("z")?), ((1, 2), p("x")?), ((2, 0), p("y")?)])?
    };
    let v = Vars::new(&["x", "y", "z"])?;
    let gutt = make_gutt_star(&so3, &v, 2)?;
    let fx = HbarSeries::exact(parse_expr("x", &v)?, 2);
    let fy = HbarSeries::exact(parse_expr("y", &v)?, 2);
    println!("Gutt: x * y = {}", gutt.multiply(&fx, &fy)?);
    println!("Gutt: [x, y] = {}", gutt.commutator(&fx, &fy)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> momenta::Result<()> {
    run()
}
