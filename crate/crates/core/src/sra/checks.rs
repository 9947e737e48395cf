//! Confluence, PBW counts, symmetrization, Berezin's expansion and the `ħ = 0`
//! comparison with the smash product.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;
use serde::Serialize;

use super::{HbarPoly, PbwKey, RewriteSystem, SRAElement};
use crate::cyclo::{factorial, Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::forms::permutations;
use crate::linalg::Matrix;
use crate::smash::SmashElement;
use crate::weyl::{Monomial, WeylElement};

/// Default bound on the total `V`-degree of Berezin arguments.
pub const DEFAULT_BEREZIN_CAP: u32 = 6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalPair {
    /// `VVV`, `GVV`, `GGV` or `GGG`.
    pub kind: String,
    pub label: String,
    pub resolved: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfluenceReport {
    pub group: String,
    pub pairs: Vec<CriticalPair>,
    pub all_resolved: bool,
}

impl ConfluenceReport {
    pub fn failures(&self) -> usize {
        self.pairs.iter().filter(|p| !p.resolved).count()
    }
}

fn mono(sys: &RewriteSystem, exps: &[(usize, u32)]) -> SRAElement {
    let n = sys.group().n();
    let mut m = Monomial::one(n);
    for &(axis, e) in exps {
        m.0[axis] += e;
    }
    SRAElement::monomial(sys.group(), m, sys.group().identity(), HbarPoly::one())
}

/// Both reductions of every overlap, with their difference.
fn overlaps(sys: &RewriteSystem) -> Vec<(CriticalPair, SRAElement)> {
    let group = sys.group().clone();
    let d = 2 * group.n();
    let mut out = Vec::new();
    let mut push = |kind: &str, label: String, a: SRAElement, b: SRAElement| {
        let diff = a.sub(&b);
        let resolved = diff.is_zero();
        let difference = (!resolved).then(|| diff.to_text());
        out.push((CriticalPair { kind: kind.into(), label, resolved, difference }, diff));
    };
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                let ek = SRAElement::basis_vector(&group, k);
                let ei = SRAElement::basis_vector(&group, i);
                let left = sys.mul(&mono(sys, &[(j, 1), (k, 1)]).add(sys.kappa(j, k)), &ei);
                let right = sys.mul(&ek, &mono(sys, &[(i, 1), (j, 1)]).add(sys.kappa(i, j)));
                push("VVV", format!("e{} e{} e{}", k + 1, j + 1, i + 1), left, right);
            }
        }
    }
    for g in 0..group.order() {
        let gel = SRAElement::group_element(&group, g);
        for i in 0..d {
            for j in i + 1..d {
                let gj = sys.act_on_basis(g, j);
                let gi = sys.act_on_basis(g, i);
                let left = sys.mul_group_right(&sys.mul(&gj, &gi), g);
                let right = sys.mul(&gel, &mono(sys, &[(i, 1), (j, 1)]).add(sys.kappa(i, j)));
                push("GVV", format!("g{g} e{} e{}", j + 1, i + 1), left, right);
            }
        }
    }
    for g in 0..group.order() {
        for h in 0..group.order() {
            let gh = group.mul(g, h);
            for i in 0..d {
                let left = sys.mul_group_right(&sys.act_on_basis(gh, i), gh);
                let inner = sys.mul_group_right(&sys.act_on_basis(h, i), h);
                let right = sys.mul(&SRAElement::group_element(&group, g), &inner);
                push("GGV", format!("g{g} g{h} e{}", i + 1), left, right);
            }
            for k in 0..group.order() {
                let left = SRAElement::group_element(&group, group.mul(gh, k));
                let right = SRAElement::group_element(&group, group.mul(g, group.mul(h, k)));
                push("GGG", format!("g{g} g{h} g{k}"), left, right);
            }
        }
    }
    out
}

/// Resolves every critical pair of the rewriting system.
pub fn confluence_check(sys: &RewriteSystem) -> ConfluenceReport {
    let pairs: Vec<CriticalPair> = overlaps(sys).into_iter().map(|(p, _)| p).collect();
    let all_resolved = pairs.iter().all(|p| p.resolved);
    ConfluenceReport { group: sys.group().name().to_string(), pairs, all_resolved }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PbwCount {
    pub degree: u32,
    /// Normal monomials `e^I ⊗ g` with `|I| ≤ degree`.
    pub monomials: usize,
    /// Rank of the unresolved overlap differences and their multiples.
    pub relation_rank: usize,
    pub dimension: usize,
}

/// A deliberately inconsistent table: `κ(0, 1)` shifted by `e_1` for abelian
/// groups, or by a single member of a reflection class otherwise.
pub fn negative_control(sys: &RewriteSystem) -> RewriteSystem {
    let g = sys.group().clone();
    if g.is_abelian() {
        return sys.corrupt(0, 1, &SRAElement::basis_vector(&g, 0));
    }
    let reflections = g.gamma2();
    let class = &g.classes()[*reflections.last().expect("nonabelian groups have reflections")];
    let mut delta = SRAElement::zero(&g);
    delta.add_term((Monomial::one(g.n()), class.members[0]), &HbarPoly::one());
    sys.corrupt(0, 1, &delta)
}

/// `C(2n + d, 2n)·|G|`.
pub fn pbw_monomial_count(n: usize, group_order: usize, d: u32) -> usize {
    binomial(2 * n + d as usize, 2 * n) * group_order
}

/// Dimension of the degree-`≤ d` filtered piece: normal monomials minus the rank
/// of the span of `m·δ` and `δ·m`, where `δ` runs over unresolved overlap
/// differences (at a generic value of `ħ` when `ħ` is formal).
pub fn pbw_filtered_dimension(sys: &RewriteSystem, d: u32) -> PbwCount {
    let generic = Cyclotomic::ratio(7, 3);
    let hbar = sys.hbar().cloned().unwrap_or(generic.clone());
    let keys = sys.normal_monomials(d);
    let monomials = keys.len();
    let diffs: Vec<SRAElement> = overlaps(sys)
        .into_iter()
        .map(|(_, diff)| diff.specialize_hbar(&hbar))
        .filter(|x| !x.is_zero())
        .collect();
    if diffs.is_empty() {
        return PbwCount { degree: d, monomials, relation_rank: 0, dimension: monomials };
    }
    let special = sys.specialized(&hbar);
    let column: BTreeMap<&PbwKey, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
    let mut push_row = |x: &SRAElement| {
        if x.is_zero() || x.degree().unwrap_or(0) > d {
            return;
        }
        let mut row = vec![Cyclotomic::zero(); keys.len()];
        for (k, c) in x.terms() {
            row[column[k]] = c.eval(&hbar);
        }
        rows.push(row);
    };
    for delta in &diffs {
        let dd = delta.degree().unwrap_or(0);
        if dd > d {
            continue;
        }
        for (m, g) in sys.normal_monomials(d - dd) {
            let x = SRAElement::monomial(sys.group(), m, g, HbarPoly::one());
            push_row(&special.mul(&x, delta));
            push_row(&special.mul(delta, &x));
        }
    }
    let relation_rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows).rank() };
    PbwCount { degree: d, monomials, relation_rank, dimension: monomials - relation_rank }
}

/// `⟨a_1, …, a_k⟩ = (1/k!) Σ_π a_{π(1)} ⋯ a_{π(k)}`.
pub fn symmetrized_product(sys: &RewriteSystem, args: &[SRAElement]) -> SRAElement {
    let mut out = SRAElement::zero(sys.group());
    for p in permutations(args.len()) {
        let factors: Vec<SRAElement> = p.iter().map(|&i| args[i].clone()).collect();
        out.add_assign(&sys.product(&factors));
    }
    out.scale(&Cyclotomic::from_rational(factorial(args.len() as u32).recip()))
}

/// The section `X_1 ⋯ X_k ⊗ g ↦ ⟨X_1, …, X_k⟩·g`, computed by polarization
/// `X_1 ⋯ X_k = (1/k!) Σ_{S ⊆ [k]} (-1)^{k-|S|} (Σ_{i∈S} X_i)^k`.
pub fn section(sys: &RewriteSystem, m: &Monomial, g: usize) -> SRAElement {
    let group = sys.group().clone();
    let letters: Vec<usize> = m.0.iter().enumerate().flat_map(|(axis, &e)| std::iter::repeat_n(axis, e as usize)).collect();
    let k = letters.len();
    let mut out = SRAElement::zero(&group);
    for mask in 1u32..(1 << k) {
        let mut coords = vec![Cyclotomic::zero(); 2 * group.n()];
        for (bit, &axis) in letters.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                coords[axis] += &Cyclotomic::one();
            }
        }
        let x = SRAElement::linear(&group, &coords);
        let power = sys.product(&vec![x; k]);
        let sign = if (k - mask.count_ones() as usize).is_multiple_of(2) { 1 } else { -1 };
        out.add_assign(&power.scale(&Cyclotomic::from_integer(sign)));
    }
    if k == 0 {
        out = SRAElement::one(&group);
    }
    let out = out.scale(&Cyclotomic::from_rational(factorial(k as u32).recip()));
    sys.mul_group_right(&out, g)
}

/// Bernoulli numbers `B_0, …, B_j` with `B_1 = -1/2`.
pub fn bernoulli(j: usize) -> Rational {
    let mut b: Vec<Rational> = vec![Rational::from_integer(BigInt::from(1))];
    for m in 1..=j {
        let mut acc = Rational::zero();
        for (i, bi) in b.iter().enumerate() {
            acc += bi * Rational::from_integer(binomial(BigInt::from(m + 1), BigInt::from(i)));
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b[j].clone()
}

fn subsets(k: usize, j: usize) -> Vec<Vec<usize>> {
    crate::forms::index_sets(k, j)
}

/// `a·⟨a_1, …, a_k⟩ − [⟨a, a_1, …, a_k⟩ + Σ_j (B_j/j!) Σ_{i_1<…<i_j, τ} ⟨ad a_{i_τ(j)} ⋯ ad a_{i_τ(1)}(a), …⟩]`,
/// which vanishes identically.
pub fn berezin_expand(sys: &RewriteSystem, a: &SRAElement, args: &[SRAElement], cap: u32) -> Result<SRAElement> {
    let total: u32 = std::iter::once(a).chain(args).map(|x| x.degree().unwrap_or(0)).sum();
    if total > cap {
        return Err(Error::CapExceeded(format!("total degree {total} exceeds {cap}")));
    }
    let k = args.len();
    let lhs = sys.mul(a, &symmetrized_product(sys, args));
    let mut rhs = {
        let mut all = vec![a.clone()];
        all.extend_from_slice(args);
        symmetrized_product(sys, &all)
    };
    for j in 1..=k {
        let bj = bernoulli(j);
        if bj.is_zero() {
            continue;
        }
        let weight = Cyclotomic::from_rational(bj / factorial(j as u32));
        for chosen in subsets(k, j) {
            let rest: Vec<SRAElement> = (0..k).filter(|i| !chosen.contains(i)).map(|i| args[i].clone()).collect();
            for tau in permutations(j) {
                let mut x = a.clone();
                for &t in &tau {
                    x = sys.commutator(&args[chosen[t]], &x);
                }
                let mut all = vec![x];
                all.extend(rest.iter().cloned());
                rhs.add_assign(&symmetrized_product(sys, &all).scale(&weight));
            }
        }
    }
    Ok(lhs.sub(&rhs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BerezinReport {
    pub max_args: usize,
    pub max_total_degree: u32,
    pub cases: usize,
    pub failures: usize,
}

impl BerezinReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

fn multisets(len: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            rec(i, len, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, len, k, &mut Vec::new(), &mut out);
    out
}

/// Runs [`berezin_expand`] with `a` and the arguments drawn from normal monomials
/// `e^I ⊗ g`, `|I| ≤ pool_degree`; arguments form multisets of size `1..=max_args`
/// and the total `V`-degree stays `≤ max_total`.
pub fn berezin_sweep(sys: &RewriteSystem, max_args: usize, max_total: u32, pool_degree: u32) -> Result<BerezinReport> {
    let pool: Vec<SRAElement> = sys
        .normal_monomials(pool_degree)
        .into_iter()
        .map(|(m, g)| SRAElement::monomial(sys.group(), m, g, HbarPoly::one()))
        .collect();
    let degree = |x: &SRAElement| x.degree().unwrap_or(0);
    let mut report = BerezinReport { max_args, max_total_degree: max_total, cases: 0, failures: 0 };
    for k in 1..=max_args {
        for combo in multisets(pool.len(), k) {
            let args: Vec<SRAElement> = combo.iter().map(|&i| pool[i].clone()).collect();
            let args_degree: u32 = args.iter().map(degree).sum();
            for a in &pool {
                if args_degree + degree(a) > max_total {
                    continue;
                }
                report.cases += 1;
                if !berezin_expand(sys, a, &args, max_total)?.is_zero() {
                    report.failures += 1;
                }
            }
        }
    }
    Ok(report)
}

/// `π(e^I ⊗ g) = (e_1^{∗i_1} ∗ ⋯ ∗ e_{2n}^{∗i_{2n}}) ⊗ g` in `G∗W`, for an element
/// whose coefficients do not involve `ħ`.
pub fn to_smash(x: &SRAElement) -> Result<SmashElement> {
    let group = x.group().clone();
    let n = group.n();
    let mut out = SmashElement::zero(&group);
    for ((m, g), c) in x.terms() {
        if c.degree().unwrap_or(0) > 0 {
            return Err(Error::NotNormalized);
        }
        let mut w = WeylElement::one(n);
        for (axis, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                w = w.moyal_mul(&WeylElement::variable(n, axis))?;
            }
        }
        let coeff = c.coeffs().first().cloned().unwrap_or_default();
        out = out.add(&SmashElement::pure(&group, w.scale(&coeff), *g));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HbarZeroReport {
    pub degree_cap: u32,
    pub pairs_checked: usize,
    pub pair_mismatches: usize,
    pub sections_checked: usize,
    pub section_mismatches: usize,
}

impl HbarZeroReport {
    pub fn passed(&self) -> bool {
        self.pair_mismatches == 0 && self.section_mismatches == 0 && self.pairs_checked > 0
    }
}

/// Compares `H_{ħλ}` at `ħ = 0` with `G∗W`: `π(x·y) = π(x)π(y)` on all pairs of
/// normal monomials with total degree `≤ d`, and `π(section(m ⊗ g)) = m ⊗ g`.
pub fn hbar_zero_compare(sys: &RewriteSystem, d: u32) -> Result<HbarZeroReport> {
    let special = sys.specialized(&Cyclotomic::zero());
    let group = sys.group().clone();
    let keys = special.normal_monomials(d);
    let mut report = HbarZeroReport { degree_cap: d, pairs_checked: 0, pair_mismatches: 0, sections_checked: 0, section_mismatches: 0 };
    for (mx, gx) in &keys {
        let x = SRAElement::monomial(&group, mx.clone(), *gx, HbarPoly::one());
        let px = to_smash(&x)?;
        for (my, gy) in &keys {
            if mx.degree() + my.degree() > d {
                continue;
            }
            let y = SRAElement::monomial(&group, my.clone(), *gy, HbarPoly::one());
            let lhs = to_smash(&special.mul(&x, &y))?;
            let rhs = px.mul(&to_smash(&y)?)?;
            report.pairs_checked += 1;
            if lhs != rhs {
                report.pair_mismatches += 1;
            }
        }
        let s = to_smash(&section(&special, mx, *gx))?;
        let expect = SmashElement::pure(&group, WeylElement::monomial(group.n(), mx.clone(), Cyclotomic::one()), *gx);
        report.sections_checked += 1;
        if s != expect {
            report.section_mismatches += 1;
        }
    }
    Ok(report)
}
