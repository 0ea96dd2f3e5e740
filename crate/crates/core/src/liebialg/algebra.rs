use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::hscalar::HScalar;
use crate::report::{CheckReport, Certified};
use crate::symexpr::{is_identifier, parse_ast, Interpret, Rational};

/// An element `Σ x^k e_k` of the Lie algebra, as its coefficient vector.
pub type LieElement = Vec<HScalar>;

/// A Lie algebra given by structure constants `[e_i, e_j] = Σ_k c_ij^k e_k`,
/// with coefficients that may depend polynomially on `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    basis: Vec<String>,
    c: Vec<Vec<LieElement>>,
}

impl LieAlgebra {
    /// `brackets` lists `[e_i, e_j]` for some pairs; missing pairs bracket to zero.
    pub fn new<S: AsRef<str>>(basis: &[S], brackets: impl IntoIterator<Item = ((usize, usize), LieElement)>) -> Result<LieAlgebra> {
        let basis: Vec<String> = basis.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, b) in basis.iter().enumerate() {
            if !is_identifier(b) || b == "h" {
                return Err(Error::Invalid(format!("bad generator name `{b}`")));
            }
            if basis[..i].contains(b) {
                return Err(Error::Invalid(format!("duplicate generator `{b}`")));
            }
        }
        let n = basis.len();
        let mut c = vec![vec![vec![HScalar::zero(); n]; n]; n];
        for ((i, j), v) in brackets {
            if i >= n || j >= n || v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len().max(i.max(j) + 1) });
            }
            if i == j {
                if v.iter().any(|x| !x.is_zero()) {
                    return Err(Error::Invalid(format!("[{0},{0}] must vanish", basis[i])));
                }
                continue;
            }
            c[j][i] = v.iter().map(|x| -x).collect();
            c[i][j] = v;
        }
        Ok(LieAlgebra { basis, c })
    }

    pub fn abelian<S: AsRef<str>>(basis: &[S]) -> Result<LieAlgebra> {
        LieAlgebra::new(basis, [])
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    /// `[e_i, e_j]` as a coefficient vector.
    pub fn structure(&self, i: usize, j: usize) -> &[HScalar] {
        &self.c[i][j]
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(HScalar::is_zero)
    }

    pub fn zero_element(&self) -> LieElement {
        vec![HScalar::zero(); self.dim()]
    }

    pub fn generator(&self, i: usize) -> LieElement {
        let mut v = self.zero_element();
        v[i] = HScalar::one();
        v
    }

    pub fn bracket(&self, x: &[HScalar], y: &[HScalar]) -> Result<LieElement> {
        let n = self.dim();
        if x.len() != n || y.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.len().max(y.len()) });
        }
        let mut out = self.zero_element();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let s = &x[i] * &y[j];
                for (k, ck) in self.c[i][j].iter().enumerate() {
                    if !ck.is_zero() {
                        out[k] = &out[k] + &(&s * ck);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The `h^0` part of the structure constants.
    pub fn classical(&self) -> LieAlgebra {
        LieAlgebra {
            basis: self.basis.clone(),
            c: self
                .c
                .iter()
                .map(|row| row.iter().map(|v| v.iter().map(|x| HScalar::constant(x.coeff(0))).collect()).collect())
                .collect(),
        }
    }

    pub fn check_jacobi(&self) -> CheckReport {
        let name = "jacobi_lie";
        let n = self.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    if let Some(r) = self.jacobiator(i, j, k) {
                        return CheckReport::fail(
                            name,
                            format!("({},{},{}) -> {}", self.basis[i], self.basis[j], self.basis[k], self.fmt_element(&r)),
                        );
                    }
                }
            }
        }
        CheckReport::pass(name, Certified::Exact)
    }

    fn jacobiator(&self, i: usize, j: usize, k: usize) -> Option<LieElement> {
        let e = |a| self.generator(a);
        let term = |a: usize, b: usize, c: usize| self.bracket(&e(a), &self.c[b][c]).expect("dims");
        let (a, b, c) = (term(i, j, k), term(j, k, i), term(k, i, j));
        let s: LieElement = (0..self.dim()).map(|m| &(&a[m] + &b[m]) + &c[m]).collect();
        s.iter().any(|x| !x.is_zero()).then_some(s)
    }

    pub fn fmt_element(&self, x: &[HScalar]) -> String {
        fmt_combination(x.iter().enumerate().map(|(i, c)| (c, self.basis[i].clone())))
    }

    /// Parse a linear combination of generators with `h`-polynomial coefficients.
    pub fn parse_element(&self, text: &str) -> Result<LieElement> {
        match (LinInterp { g: self }).eval(&parse_ast(text)?)? {
            Lin::Scalar(s) if s.is_zero() => Ok(self.zero_element()),
            Lin::Scalar(_) => Err(Error::Invalid(format!("`{text}` is a scalar, not a Lie algebra element"))),
            Lin::Vector(v) => Ok(v),
        }
    }
}

/// `c_1*label_1 + c_2*label_2 + ...` with `h`-polynomial coefficients.
pub(crate) fn fmt_combination(terms: impl Iterator<Item = (impl std::borrow::Borrow<HScalar>, String)>) -> String {
    let mut out = String::new();
    for (c, label) in terms {
        let c = c.borrow();
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let single = c.coeffs().iter().filter(|x| **x != Rational::from_integer(0.into())).count() == 1;
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) if single => (true, rest.to_string()),
            _ => (false, s),
        };
        let sep = match (out.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        let coef = if body == "1" {
            String::new()
        } else if single {
            format!("{body}*")
        } else {
            format!("({body})*")
        };
        let _ = write!(out, "{sep}{coef}{label}");
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Clone)]
enum Lin {
    Scalar(HScalar),
    Vector(LieElement),
}

struct LinInterp<'a> {
    g: &'a LieAlgebra,
}

impl LinInterp<'_> {
    fn vec(&self, x: Lin) -> Result<LieElement> {
        match x {
            Lin::Vector(v) => Ok(v),
            Lin::Scalar(s) if s.is_zero() => Ok(self.g.zero_element()),
            Lin::Scalar(_) => Err(Error::Invalid("scalar added to a Lie algebra element".into())),
        }
    }

    fn combine(&self, a: Lin, b: Lin, sign: i64) -> Result<Lin> {
        let sb = HScalar::from_int(sign);
        match (a, b) {
            (Lin::Scalar(x), Lin::Scalar(y)) => Ok(Lin::Scalar(&x + &(&y * &sb))),
            (a, b) => {
                let (x, y) = (self.vec(a)?, self.vec(b)?);
                Ok(Lin::Vector(x.iter().zip(&y).map(|(p, q)| p + &(q * &sb)).collect()))
            }
        }
    }
}

impl Interpret for LinInterp<'_> {
    type Value = Lin;

    fn num(&self, n: &BigInt) -> Result<Lin> {
        Ok(Lin::Scalar(HScalar::constant(Rational::from_integer(n.clone()))))
    }

    fn var(&self, name: &str, pos: usize) -> Result<Lin> {
        if name == "h" {
            return Ok(Lin::Scalar(HScalar::hbar()));
        }
        match self.g.index_of(name) {
            Some(i) => Ok(Lin::Vector(self.g.generator(i))),
            None => Err(Error::UnknownVariable { name: name.to_string(), pos: Some(pos) }),
        }
    }

    fn add(&self, a: Lin, b: Lin) -> Result<Lin> {
        self.combine(a, b, 1)
    }

    fn sub(&self, a: Lin, b: Lin) -> Result<Lin> {
        self.combine(a, b, -1)
    }

    fn mul(&self, a: Lin, b: Lin) -> Result<Lin> {
        match (a, b) {
            (Lin::Scalar(x), Lin::Scalar(y)) => Ok(Lin::Scalar(&x * &y)),
            (Lin::Scalar(s), Lin::Vector(v)) | (Lin::Vector(v), Lin::Scalar(s)) => {
                Ok(Lin::Vector(v.iter().map(|x| x * &s).collect()))
            }
            _ => Err(Error::Invalid("product of two generators is not a Lie algebra element".into())),
        }
    }

    fn neg(&self, a: Lin) -> Result<Lin> {
        self.mul(Lin::Scalar(HScalar::from_int(-1)), a)
    }

    fn div(&self, a: Lin, b: Lin, pos: usize) -> Result<Lin> {
        match b {
            Lin::Scalar(s) => match s.coeffs() {
                [] => Err(Error::DivisionByZero { pos: Some(pos) }),
                [c] => self.mul(Lin::Scalar(HScalar::constant(c.recip())), a),
                _ => Err(Error::Syntax { pos, msg: "division by a non-constant h-polynomial".into() }),
            },
            Lin::Vector(_) => Err(Error::Syntax { pos, msg: "division by a generator".into() }),
        }
    }
}
