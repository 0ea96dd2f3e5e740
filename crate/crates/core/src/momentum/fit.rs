use num_traits::{One, Zero};

use crate::error::Result;
use crate::hscalar::HScalar;
use crate::starprod::HbarSeries;
use crate::symexpr::{int, rat, RatFunc, Rational};

/// Solve `Σ_m c_m(h) · basis[m] = target` for `h`-polynomial coefficients,
/// given one `(target, basis)` system per sample. Orders are solved in turn
/// from the leading coefficients; each order is fitted numerically at
/// rational points and then confirmed symbolically. Returns `None` when no
/// such combination exists through the shared known order.
pub(crate) fn fit_combination(systems: &[(HbarSeries, Vec<HbarSeries>)]) -> Result<Option<(Vec<HScalar>, usize)>> {
    let Some((_, first)) = systems.first() else {
        return Ok(None);
    };
    let m = first.len();
    let k = systems
        .iter()
        .flat_map(|(t, b)| std::iter::once(t.known_order()).chain(b.iter().map(HbarSeries::known_order)))
        .min()
        .unwrap_or(0);
    let mut coeffs: Vec<Vec<Rational>> = vec![Vec::new(); m];
    for n in 0..=k {
        let mut rhs = Vec::with_capacity(systems.len());
        for (t, b) in systems {
            let mut r = t.coeff(n).expect("known").clone();
            for (c, s) in coeffs.iter().zip(b) {
                for (j, cj) in c.iter().enumerate() {
                    if !cj.is_zero() {
                        r = &r - &s.coeff(n - j).expect("known").scale(cj);
                    }
                }
            }
            rhs.push(r);
        }
        let lead: Vec<Vec<&RatFunc>> = systems.iter().map(|(_, b)| b.iter().map(HbarSeries::leading).collect()).collect();
        let Some(x) = solve_at_points(&lead, &rhs, m)? else {
            return Ok(None);
        };
        for (s, r) in lead.iter().zip(&rhs) {
            let mut acc = r.clone();
            for (f, c) in s.iter().zip(&x) {
                acc = &acc - &f.scale(c);
            }
            if !acc.is_zero() {
                return Ok(None);
            }
        }
        for (c, v) in coeffs.iter_mut().zip(x) {
            c.push(v);
        }
    }
    Ok(Some((coeffs.into_iter().map(HScalar::from_coeffs).collect(), k)))
}

/// Candidate solution of the linear system evaluated at sample points.
fn solve_at_points(lead: &[Vec<&RatFunc>], rhs: &[RatFunc], m: usize) -> Result<Option<Vec<Rational>>> {
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (s, r) in lead.iter().zip(rhs) {
        let nv = r.vars().len();
        let mut taken = 0;
        let mut t = 0i64;
        while taken < 2 * m + 2 && t < 20 * (m as i64 + 2) {
            t += 1;
            let point: Vec<Rational> = (0..nv).map(|i| rat(3 * t + 2 * i as i64 + 1, t + i as i64 + 2)).collect();
            let mut row = Vec::with_capacity(m + 1);
            let mut ok = true;
            for f in s.iter().copied().chain(std::iter::once(r)) {
                match f.evaluate(&point) {
                    Ok(v) => row.push(v),
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                rows.push(row);
                taken += 1;
            }
        }
    }
    Ok(gauss(rows, m))
}

/// Row-reduce `[A | b]`; free variables are set to zero.
fn gauss(mut rows: Vec<Vec<Rational>>, m: usize) -> Option<Vec<Rational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..=m {
                    let d = &rows[r][j] * &f;
                    rows[i][j] = &rows[i][j] - &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[m].is_zero()) {
        return None;
    }
    let mut x = vec![int(0); m];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][m].clone();
    }
    Some(x)
}
