//! Seeded generation of sample functions for the identity checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::symexpr::{int, Monomial, Polynomial, RatFunc, Vars};

/// Deterministic source of random polynomials: 1 to 4 monomials of bounded
/// degree with nonzero integer coefficients in `[-3, 3]`.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A nonconstant polynomial of total degree at most `max_degree`.
    pub fn polynomial(&mut self, vars: &Vars, max_degree: u32) -> RatFunc {
        let n = vars.len();
        if n == 0 || max_degree == 0 {
            return RatFunc::from_int(vars, self.coefficient());
        }
        loop {
            let terms = self.rng.gen_range(1..=4);
            let mut p = Polynomial::zero(vars);
            for _ in 0..terms {
                let deg = self.rng.gen_range(0..=max_degree);
                let mut e = vec![0u32; n];
                for _ in 0..deg {
                    e[self.rng.gen_range(0..n)] += 1;
                }
                let c = int(self.coefficient());
                p = &p + &Polynomial::monomial(vars, Monomial(e), c);
            }
            if !p.is_constant() {
                return RatFunc::from_poly(p);
            }
        }
    }

    fn coefficient(&mut self) -> i64 {
        let c = self.rng.gen_range(1..=3);
        if self.rng.gen_bool(0.5) {
            c
        } else {
            -c
        }
    }

    pub fn functions(&mut self, vars: &Vars, count: usize, max_degree: u32) -> Vec<RatFunc> {
        (0..count).map(|_| self.polynomial(vars, max_degree)).collect()
    }

    pub fn pairs(&mut self, vars: &Vars, count: usize, max_degree: u32) -> Vec<(RatFunc, RatFunc)> {
        (0..count).map(|_| (self.polynomial(vars, max_degree), self.polynomial(vars, max_degree))).collect()
    }

    pub fn triples(&mut self, vars: &Vars, count: usize, max_degree: u32) -> Vec<(RatFunc, RatFunc, RatFunc)> {
        (0..count)
            .map(|_| (self.polynomial(vars, max_degree), self.polynomial(vars, max_degree), self.polynomial(vars, max_degree)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_bounded() {
        let v = Vars::new(&["q", "p"]).unwrap();
        let a = Sampler::new(7).functions(&v, 10, 3);
        let b = Sampler::new(7).functions(&v, 10, 3);
        assert_eq!(a, b);
        assert_ne!(a, Sampler::new(8).functions(&v, 10, 3));
        for f in &a {
            assert!(f.is_polynomial() && f.total_degree() <= 3 && f.constant_value().is_none());
        }
    }
}
