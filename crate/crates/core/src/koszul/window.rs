//! Cohomology of `Δ′` in a finite window of polynomial degrees.
//!
//! `Δ′` preserves the bigrading `(a, b) = (w_1 - l_1, w_2 + l_2)`, where `w_i` is
//! the polynomial degree and `l_i` the form degree in block `i`. Each bigraded
//! piece is finite dimensional, so its cohomology is computed exactly. A piece
//! is complete inside the window when all its cochains have polynomial degree
//! at most `D_max`, i.e. when `a + 2k_σ + b ≤ D_max`.

use serde::Serialize;

use super::KoszulContext;
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::forms::index_sets;
use crate::linalg::Matrix;
use crate::weyl::{Monomial, WeylElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowRow {
    pub degree: usize,
    /// Dimension of the cochains in complete pieces.
    pub cochains: usize,
    pub rank_out: usize,
    pub cohomology: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowTable {
    pub d_max: usize,
    pub k_sigma: usize,
    pub rows: Vec<WindowRow>,
    pub complete_pieces: usize,
    /// Pieces only partially inside the window, excluded from the table.
    pub boundary_pieces: Vec<(i64, usize)>,
}

impl WindowTable {
    pub fn dim(&self, degree: usize) -> Option<usize> {
        self.rows.iter().find(|r| r.degree == degree).map(|r| r.cohomology)
    }
}

/// Monomials of total degree `deg` in the given axes.
fn monomials_in(axes: &[usize], dim: usize, deg: u32) -> Vec<Vec<u32>> {
    fn rec(axes: &[usize], pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == axes.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..=left {
            cur[axes[pos]] = e;
            rec(axes, pos + 1, left - e, cur, out);
        }
        cur[axes[pos]] = 0;
    }
    let mut out = Vec::new();
    rec(axes, 0, deg, &mut vec![0; dim], &mut out);
    out
}

type Basis = Vec<(Vec<usize>, Monomial)>;

fn piece_basis(ctx: &KoszulContext, a: i64, b: usize, degree: usize) -> Basis {
    let dim = 2 * ctx.n();
    let split = 2 * ctx.k();
    let block1: Vec<usize> = (0..split).collect();
    let block2: Vec<usize> = (split..dim).collect();
    let mut out = Vec::new();
    for idx in index_sets(dim, degree) {
        let l1 = idx.iter().filter(|&&t| t < split).count();
        let l2 = degree - l1;
        let w1 = a + l1 as i64;
        if w1 < 0 || l2 > b {
            continue;
        }
        let w2 = (b - l2) as u32;
        if block2.is_empty() && w2 > 0 {
            continue;
        }
        for m1 in monomials_in(&block1, dim, w1 as u32) {
            for m2 in monomials_in(&block2, dim, w2) {
                let e: Vec<u32> = m1.iter().zip(&m2).map(|(x, y)| x + y).collect();
                out.push((idx.clone(), Monomial(e)));
            }
        }
    }
    out
}

fn delta_matrix(ctx: &KoszulContext, src: &Basis, dst: &Basis) -> Result<Matrix> {
    let n = ctx.n();
    let mut m = Matrix::zeros(dst.len(), src.len());
    let position: std::collections::BTreeMap<(&Vec<usize>, &Monomial), usize> =
        dst.iter().enumerate().map(|(i, (idx, mono))| ((idx, mono), i)).collect();
    for (j, (idx, mono)) in src.iter().enumerate() {
        let mut c = ctx.zero(idx.len());
        c.add_at(idx, &WeylElement::monomial(n, mono.clone(), Cyclotomic::one()));
        let image = ctx.delta_prime(&c)?;
        for (key, val) in image.terms() {
            for (mm, coeff) in val.terms() {
                let row = position.get(&(key, mm)).expect("Δ′ preserves the bigrading");
                m.set(*row, j, coeff.clone());
            }
        }
    }
    Ok(m)
}

/// Dimensions of `H^k(K, Δ′)` restricted to bigraded pieces that fit in
/// polynomial degree `d_max`, for every `k ∈ degrees`.
pub fn truncated_cohomology_dims(ctx: &KoszulContext, degrees: std::ops::RangeInclusive<usize>, d_max: usize) -> Result<WindowTable> {
    if d_max < 2 {
        return Err(Error::WindowTooSmall(d_max));
    }
    let dim = 2 * ctx.n();
    let two_k = 2 * ctx.k() as i64;
    let free_pairs = 2 * (ctx.n() - ctx.k());
    let mut rows: Vec<WindowRow> = (0..=dim).map(|degree| WindowRow { degree, cochains: 0, rank_out: 0, cohomology: 0 }).collect();
    let mut complete = 0;
    let mut boundary = Vec::new();
    let dm = d_max as i64;
    for a in -two_k..=dm {
        for b in 0..=(d_max + free_pairs) {
            let max_deg = a + two_k + b as i64;
            let min_deg = a + (-a).max(0) + b as i64 - b.min(free_pairs) as i64;
            if max_deg <= dm {
                let bases: Vec<Basis> = (0..=dim).map(|d| piece_basis(ctx, a, b, d)).collect();
                if bases.iter().all(Vec::is_empty) {
                    continue;
                }
                complete += 1;
                let mut ranks = vec![0usize; dim + 1];
                for d in 0..dim {
                    if !bases[d].is_empty() && !bases[d + 1].is_empty() {
                        ranks[d] = delta_matrix(ctx, &bases[d], &bases[d + 1])?.rank();
                    }
                }
                for d in 0..=dim {
                    let into = if d == 0 { 0 } else { ranks[d - 1] };
                    rows[d].cochains += bases[d].len();
                    rows[d].rank_out += ranks[d];
                    rows[d].cohomology += bases[d].len() - ranks[d] - into;
                }
            } else if min_deg <= dm && (0..=dim).any(|d| !piece_basis(ctx, a, b, d).is_empty()) {
                boundary.push((a, b));
            }
        }
    }
    rows.retain(|r| degrees.contains(&r.degree));
    Ok(WindowTable { d_max, k_sigma: ctx.k(), rows, complete_pieces: complete, boundary_pieces: boundary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::sympgroup::sigma_invariants;

    #[test]
    fn cohomology_is_concentrated_in_top_degree() {
        for name in ["Z2_sp2", "Z3_sp2", "Z2_sp4", "Z2xZ2_sp4"] {
            let g = catalog::group(name).unwrap();
            for el in g.elements() {
                let ctx = KoszulContext::from_invariants(&sigma_invariants(el).unwrap());
                let t = truncated_cohomology_dims(&ctx, 0..=2 * ctx.n(), 4).unwrap();
                for r in &t.rows {
                    let expect = usize::from(r.degree == 2 * ctx.k());
                    assert_eq!(r.cohomology, expect, "{name} k={} row {r:?}", ctx.k());
                }
            }
        }
    }

    #[test]
    fn small_window_is_rejected() {
        let ctx = KoszulContext::identity(1);
        assert_eq!(truncated_cohomology_dims(&ctx, 0..=2, 1), Err(Error::WindowTooSmall(1)));
        let t = truncated_cohomology_dims(&ctx, 0..=2, 3).unwrap();
        assert!(!t.boundary_pieces.is_empty());
        assert_eq!(t.dim(0), Some(1));
    }
}
