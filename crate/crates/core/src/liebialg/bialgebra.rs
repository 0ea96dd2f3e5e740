use super::algebra::{fmt_combination, LieAlgebra, LieElement};
use crate::error::{Error, Result};
use crate::hscalar::HScalar;
use crate::report::{CheckReport, Certified};

/// `δ(e_i) = Σ_{j<k} f_i^{jk} e_j∧e_k`, where `e_j∧e_k = e_j⊗e_k - e_k⊗e_j`.
/// Components are stored antisymmetrically in `j, k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cobracket {
    f: Vec<Vec<Vec<HScalar>>>,
}

/// An element of `g⊗g` as a full coefficient matrix.
pub type Tensor2 = Vec<Vec<HScalar>>;

impl Cobracket {
    pub fn zero(n: usize) -> Cobracket {
        Cobracket { f: vec![vec![vec![HScalar::zero(); n]; n]; n] }
    }

    /// Entries `((i, j, k), c)` add `c e_j∧e_k` to `δ(e_i)`.
    pub fn new(n: usize, entries: impl IntoIterator<Item = ((usize, usize, usize), HScalar)>) -> Result<Cobracket> {
        let mut d = Cobracket::zero(n);
        for ((i, j, k), c) in entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::DimensionMismatch { expected: n, found: i.max(j).max(k) + 1 });
            }
            if j == k {
                if !c.is_zero() {
                    return Err(Error::Invalid("e_j∧e_j vanishes; cobracket entry must be zero".into()));
                }
                continue;
            }
            d.f[i][j][k] = &d.f[i][j][k] + &c;
            d.f[i][k][j] = &d.f[i][k][j] - &c;
        }
        Ok(d)
    }

    pub fn dim(&self) -> usize {
        self.f.len()
    }

    /// Coefficient of `e_j∧e_k` in `δ(e_i)`.
    pub fn component(&self, i: usize, j: usize, k: usize) -> &HScalar {
        &self.f[i][j][k]
    }

    /// `δ(e_i)` as an antisymmetric tensor in `g⊗g`.
    pub fn image(&self, i: usize) -> &Tensor2 {
        &self.f[i]
    }

    pub fn is_zero(&self) -> bool {
        self.f.iter().flatten().flatten().all(HScalar::is_zero)
    }

    pub fn fmt_image(&self, g: &LieAlgebra, i: usize) -> String {
        fmt_wedge(g, &self.f[i])
    }
}

/// Print an antisymmetric tensor as `Σ_{j<k} c e_j∧e_k`.
pub fn fmt_wedge(g: &LieAlgebra, t: &Tensor2) -> String {
    let n = g.dim();
    fmt_combination((0..n).flat_map(|j| ((j + 1)..n).map(move |k| (t[j][k].clone(), format!("{}∧{}", g.name(j), g.name(k))))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieBialgebra {
    algebra: LieAlgebra,
    cobracket: Cobracket,
}

impl LieBialgebra {
    pub fn new(algebra: LieAlgebra, cobracket: Cobracket) -> Result<LieBialgebra> {
        if algebra.dim() != cobracket.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: cobracket.dim() });
        }
        Ok(LieBialgebra { algebra, cobracket })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn cobracket(&self) -> &Cobracket {
        &self.cobracket
    }

    /// `ad_x` extended to `g⊗g` by the Leibniz rule.
    fn ad(&self, x: usize, t: &Tensor2) -> Tensor2 {
        let n = self.algebra.dim();
        let mut out = vec![vec![HScalar::zero(); n]; n];
        for a in 0..n {
            for b in 0..n {
                if t[a][b].is_zero() {
                    continue;
                }
                for (c, k) in self.algebra.structure(x, a).iter().enumerate() {
                    if !k.is_zero() {
                        out[c][b] = &out[c][b] + &(&t[a][b] * k);
                    }
                }
                for (c, k) in self.algebra.structure(x, b).iter().enumerate() {
                    if !k.is_zero() {
                        out[a][c] = &out[a][c] + &(&t[a][b] * k);
                    }
                }
            }
        }
        out
    }

    fn delta_of(&self, x: &[HScalar]) -> Tensor2 {
        let n = self.algebra.dim();
        let mut out = vec![vec![HScalar::zero(); n]; n];
        for (k, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for a in 0..n {
                for b in 0..n {
                    out[a][b] = &out[a][b] + &(c * &self.cobracket.f[k][a][b]);
                }
            }
        }
        out
    }

    /// `ad_x δ(y) - ad_y δ(x) - δ([x, y])` on basis pairs.
    pub fn check_cocycle(&self) -> CheckReport {
        let name = "cocycle";
        let n = self.algebra.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = self.ad(i, self.cobracket.image(j));
                let rhs = self.ad(j, self.cobracket.image(i));
                let d = self.delta_of(self.algebra.structure(i, j));
                let r: Tensor2 = (0..n)
                    .map(|a| (0..n).map(|b| &(&lhs[a][b] - &rhs[a][b]) - &d[a][b]).collect())
                    .collect();
                if r.iter().flatten().any(|x| !x.is_zero()) {
                    return CheckReport::fail(
                        name,
                        format!("({},{}) -> {}", self.algebra.name(i), self.algebra.name(j), fmt_wedge(&self.algebra, &r)),
                    );
                }
            }
        }
        CheckReport::pass(name, Certified::Exact).with_convention(WEDGE_CONVENTION)
    }

    /// The bracket on `g*` defined by `δ`: `[e_j*, e_k*] = Σ_i f_i^{jk} e_i*`.
    pub fn dual_bracket(&self) -> LieAlgebra {
        let n = self.algebra.dim();
        let names: Vec<String> = self.algebra.basis().iter().map(|b| format!("{b}_dual")).collect();
        let entries = (0..n).flat_map(|j| {
            ((j + 1)..n).map(move |k| ((j, k), (0..n).map(|i| self.cobracket.f[i][j][k].clone()).collect::<LieElement>()))
        });
        LieAlgebra::new(&names, entries.collect::<Vec<_>>()).expect("dual basis is well formed")
    }

    pub fn check_cojacobi(&self) -> CheckReport {
        self.dual_bracket()
            .check_jacobi()
            .renamed("cojacobi")
            .with_convention(WEDGE_CONVENTION)
            .with_convention(PAIRING_CONVENTION)
    }

    /// The dual bialgebra `(g*, δ*)`: the bracket comes from `δ` and the
    /// cobracket from the bracket of `g`. Applying it twice is the identity.
    pub fn dual(&self) -> LieBialgebra {
        let n = self.algebra.dim();
        let algebra = self.dual_bracket();
        let mut f = vec![vec![vec![HScalar::zero(); n]; n]; n];
        for (i, fi) in f.iter_mut().enumerate() {
            for j in 0..n {
                for k in 0..n {
                    fi[j][k] = self.algebra.structure(j, k)[i].clone();
                }
            }
        }
        LieBialgebra { algebra, cobracket: Cobracket { f } }
    }

    /// Rename the basis; used to identify `g**` with `g`.
    pub fn with_basis<S: AsRef<str>>(&self, names: &[S]) -> Result<LieBialgebra> {
        let n = self.algebra.dim();
        let entries = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| ((i, j), self.algebra.structure(i, j).to_vec())));
        Ok(LieBialgebra { algebra: LieAlgebra::new(names, entries.collect::<Vec<_>>())?, cobracket: self.cobracket.clone() })
    }
}

pub const WEDGE_CONVENTION: &str = "delta(e_i) = sum_(j<k) f_i^(jk) e_j^e_k with e_j^e_k = e_j(x)e_k - e_k(x)e_j";
pub const PAIRING_CONVENTION: &str = "dual bracket [e_j*, e_k*] = sum_i f_i^(jk) e_i*";
