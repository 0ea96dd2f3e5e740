// Exact rational functions: parsing, canonical printing, arithmetic, derivatives.

use momenta::symexpr::{gcd, parse_expr, rat, Vars};

pub fn run() -> momenta::Result<()> {
    let v = Vars::new(&["q", "p"])?;
    let f = parse_expr("(q^2 - p^2)/(q - p)", &v)?;
    println!("(q^2 - p^2)/(q - p) = {f}");

    let g = parse_expr("1/(1 + q) + p/2", &v)?;
    println!("g = {g}");
    println!("dg/dq = {}", g.derivative(0));
    println!("f * g = {}", &f * &g);
    println!("g(1, 2) = {}", g.evaluate(&[rat(1, 1), rat(2, 1)])?);

    let a = parse_expr("q^2*p - p", &v)?;
    let b = parse_expr("q^2 + 2*q + 1", &v)?;
    println!("gcd = {}", gcd(a.num(), b.num()));

    match parse_expr("q/(p - p)", &v) {
        Err(e) => println!("rejected: {e}"),
        Ok(x) => println!("unexpected: {x}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> momenta::Result<()> {
    run()
}
