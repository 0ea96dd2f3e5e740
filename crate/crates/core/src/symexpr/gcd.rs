//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive primitive pseudo-remainder sequences: pick the first variable
//! occurring in either input, split off contents (gcds of the coefficient
//! polynomials, which involve strictly fewer variables), and run a primitive
//! PRS on the primitive parts.

use super::poly::Polynomial;

/// Greatest common divisor, normalized to coprime integer coefficients with a
/// positive graded-lex leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a.same_vars(b);
    let g = gcd_inner(a, b);
    g.integer_primitive().1
}

fn gcd_inner(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.vars());
    }
    let n = a.vars().len();
    let v = (0..n)
        .find(|&i| a.degree_in(i) > 0 || b.degree_in(i) > 0)
        .expect("non-constant polynomial has a variable");

    if a.degree_in(v) == 0 {
        return gcd_inner(a, &content_in(b, v));
    }
    if b.degree_in(v) == 0 {
        return gcd_inner(&content_in(a, v), b);
    }

    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_inner(&ca, &cb);
    let mut f = a.div_exact(&ca).expect("content divides");
    let mut g = b.div_exact(&cb).expect("content divides");
    if f.degree_in(v) < g.degree_in(v) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = pseudo_rem(&f, &g, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            return c;
        }
        f = g;
        g = primitive_in(&r, v);
    }
    &c * &primitive_in(&g, v)
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x_v`.
fn content_in(p: &Polynomial, v: usize) -> Polynomial {
    let mut acc = Polynomial::zero(p.vars());
    for c in p.to_univariate(v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_inner(&acc, &c);
        if acc.is_constant() {
            return Polynomial::one(p.vars());
        }
    }
    acc.integer_primitive().1
}

fn primitive_in(p: &Polynomial, v: usize) -> Polynomial {
    let c = content_in(p, v);
    let pp = p.div_exact(&c).expect("content divides");
    pp.integer_primitive().1
}

/// Reduces `f` by `g` in `x_v` until its degree drops below `deg_v g`,
/// scaling by the leading coefficient of `g` at each step.
fn pseudo_rem(f: &Polynomial, g: &Polynomial, v: usize) -> Polynomial {
    let vars = f.vars().clone();
    let dg = g.degree_in(v);
    let lc_g = g.to_univariate(v).pop().expect("nonzero");
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lc_r = r.to_univariate(v).pop().expect("nonzero");
        let shift = Polynomial::from_univariate(&vars, v, &{
            let mut c = vec![Polynomial::zero(&vars); (dr - dg) as usize + 1];
            c[(dr - dg) as usize] = lc_r;
            c
        });
        r = &(&r * &lc_g) - &(&shift * g);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::{parse_poly, Vars};

    fn p(s: &str, v: &Vars) -> Polynomial {
        parse_poly(s, v).unwrap()
    }

    #[test]
    fn univariate_gcd() {
        let v = Vars::new(&["q"]).unwrap();
        let g = gcd(&p("q^2 - 1", &v), &p("q^2 + 2*q + 1", &v));
        assert_eq!(g, p("q + 1", &v));
    }

    #[test]
    fn multivariate_gcd() {
        let v = Vars::new(&["x", "y", "z"]).unwrap();
        let common = p("x*y - z^2 + 3", &v);
        let a = &common * &p("x + y + 1", &v);
        let b = &common * &p("x - z", &v);
        assert_eq!(gcd(&a, &b), common);
    }

    #[test]
    fn coprime_and_constant_cases() {
        let v = Vars::new(&["q", "p"]).unwrap();
        assert!(gcd(&p("q", &v), &p("p", &v)).is_one());
        assert!(gcd(&p("2*q", &v), &p("4", &v)).is_one());
        assert_eq!(gcd(&p("0", &v), &p("2*q + 2", &v)), p("q + 1", &v));
    }

    #[test]
    fn content_in_second_variable() {
        let v = Vars::new(&["q", "p"]).unwrap();
        // common factor (p + 1) only visible through contents
        let a = p("q*p + q", &v);
        let b = p("q^2*p + q^2 + p + 1", &v);
        assert_eq!(gcd(&a, &b), p("p + 1", &v));
    }
}
