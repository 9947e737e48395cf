//! Symplectic reflection algebras `H_{ħλ}` as a rewriting system on words in
//! `V` and `G`.
//!
//! The ordered basis `e_1 < … < e_{2n}` of `V` is the Weyl basis
//! `p_1, q_1, …, p_n, q_n`. Normal words are `e_1^{i_1} ⋯ e_{2n}^{i_{2n}} ⊗ g`.
//! Rewrites are `e_j e_i → e_i e_j + κ(i, j)` for `j > i` and `g·X → g(X)·g`,
//! where `κ(i, j) = ω(e_j, e_i) + ħ Σ_γ λ(γ) Σ_{g∈γ} ω_g(e_j, e_i) g`.

mod checks;
mod hbar;

pub use checks::{
    bernoulli, berezin_expand, berezin_sweep, confluence_check, hbar_zero_compare, negative_control, pbw_filtered_dimension, pbw_monomial_count, section, symmetrized_product,
    to_smash, BerezinReport, ConfluenceReport, CriticalPair, HbarZeroReport, PbwCount, DEFAULT_BEREZIN_CAP,
};
pub use hbar::HbarPoly;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::smash::{element_forms, LambdaWeights};
use crate::sympgroup::{canonical_omega, FiniteSympGroup};
use crate::weyl::Monomial;

/// A PBW monomial `e^I ⊗ g`.
pub type PbwKey = (Monomial, usize);

/// A linear combination of PBW monomials with coefficients in `ħ`-polynomials.
#[derive(Clone)]
pub struct SRAElement {
    group: Arc<FiniteSympGroup>,
    terms: BTreeMap<PbwKey, HbarPoly>,
}

impl PartialEq for SRAElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl fmt::Debug for SRAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl SRAElement {
    pub fn zero(group: &Arc<FiniteSympGroup>) -> Self {
        SRAElement { group: group.clone(), terms: BTreeMap::new() }
    }

    pub fn one(group: &Arc<FiniteSympGroup>) -> Self {
        Self::group_element(group, group.identity())
    }

    pub fn group_element(group: &Arc<FiniteSympGroup>, g: usize) -> Self {
        Self::monomial(group, Monomial::one(group.n()), g, HbarPoly::one())
    }

    pub fn monomial(group: &Arc<FiniteSympGroup>, m: Monomial, g: usize, c: HbarPoly) -> Self {
        let mut out = Self::zero(group);
        out.add_term((m, g), &c);
        out
    }

    /// The basis vector `e_{s+1}` (axis `s`).
    pub fn basis_vector(group: &Arc<FiniteSympGroup>, s: usize) -> Self {
        Self::monomial(group, Monomial::unit(group.n(), s), group.identity(), HbarPoly::one())
    }

    /// `Σ_s coords[s] e_s`.
    pub fn linear(group: &Arc<FiniteSympGroup>, coords: &[Cyclotomic]) -> Self {
        let mut out = Self::zero(group);
        for (s, c) in coords.iter().enumerate() {
            out.add_term((Monomial::unit(group.n(), s), group.identity()), &HbarPoly::constant(c.clone()));
        }
        out
    }

    pub fn scalar(group: &Arc<FiniteSympGroup>, c: HbarPoly) -> Self {
        Self::monomial(group, Monomial::one(group.n()), group.identity(), c)
    }

    pub fn group(&self) -> &Arc<FiniteSympGroup> {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.group.n()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwKey, &HbarPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial, g: usize) -> HbarPoly {
        self.terms.get(&(m.clone(), g)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `V`-degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(m, _)| m.degree()).max()
    }

    pub fn add_term(&mut self, key: PbwKey, c: &HbarPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(c);
                if s.is_zero() {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Cyclotomic::from_integer(-1))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        self.scale_poly(&HbarPoly::constant(c.clone()))
    }

    pub fn scale_poly(&self, c: &HbarPoly) -> Self {
        let mut out = Self::zero(&self.group);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &v.mul(c));
        }
        out
    }

    /// Evaluates `ħ → c` in every coefficient.
    pub fn specialize_hbar(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero(&self.group);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &HbarPoly::constant(v.eval(c)));
        }
        out
    }

    fn max_order(&self) -> u32 {
        self.terms.values().fold(1, |acc, v| num_integer::lcm(acc, v.max_order()))
    }

    /// Text form `c(ħ)·e1^a e2^b ⊗ g<idx> + …`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let order = self.max_order();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((m, g), c)| {
                let mono: Vec<String> = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("e{}", i + 1) } else { format!("e{}^{e}", i + 1) })
                    .collect();
                let mono = if mono.is_empty() { "1".to_string() } else { mono.join(" ") };
                format!("[{}]·{mono} ⊗ g{g}", c.to_text(order))
            })
            .collect();
        parts.join(" + ")
    }
}

/// A letter of a free word in `G ∗ T(V)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    /// Basis vector `e_{s+1}`.
    V(usize),
    /// Group element by index.
    G(usize),
}

/// A coefficient times a free word.
#[derive(Clone, Debug, PartialEq)]
pub struct TVWord {
    pub coeff: HbarPoly,
    pub letters: Vec<Letter>,
}

impl TVWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        TVWord { coeff: HbarPoly::one(), letters }
    }
}

/// The relations of `H_{ħλ}` as a rewriting system with a memoized normal-ordering table.
pub struct RewriteSystem {
    group: Arc<FiniteSympGroup>,
    lambda: LambdaWeights,
    hbar: Option<Cyclotomic>,
    kappa: BTreeMap<(usize, usize), SRAElement>,
    corrupted: bool,
    memo: Mutex<HashMap<(Vec<u32>, usize), SRAElement>>,
}

impl Clone for RewriteSystem {
    fn clone(&self) -> Self {
        RewriteSystem {
            group: self.group.clone(),
            lambda: self.lambda.clone(),
            hbar: self.hbar.clone(),
            kappa: self.kappa.clone(),
            corrupted: self.corrupted,
            memo: Mutex::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for RewriteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RewriteSystem").field("group", &self.group.name()).field("kappa", &self.kappa).finish()
    }
}

impl RewriteSystem {
    /// System with formal `ħ`; `λ` must be a weight on `Γ_2`.
    pub fn new(group: &Arc<FiniteSympGroup>, lambda: &LambdaWeights) -> Result<Self> {
        Self::build(group, lambda, None)
    }

    /// System with `ħ` fixed to `c`.
    pub fn with_hbar(group: &Arc<FiniteSympGroup>, lambda: &LambdaWeights, c: Cyclotomic) -> Result<Self> {
        Self::build(group, lambda, Some(c))
    }

    fn build(group: &Arc<FiniteSympGroup>, lambda: &LambdaWeights, hbar: Option<Cyclotomic>) -> Result<Self> {
        if lambda.k() != 1 {
            return Err(Error::BasisMismatch(format!("relations need weights on Γ_2, got Γ_{}", 2 * lambda.k())));
        }
        let d = 2 * group.n();
        let omega = canonical_omega(group.n());
        let forms = element_forms(group);
        let weights = lambda.class_sum_weights(group);
        let hbar_poly = match &hbar {
            Some(c) => HbarPoly::constant(c.clone()),
            None => HbarPoly::hbar(),
        };
        let mut kappa = BTreeMap::new();
        for i in 0..d {
            for j in i + 1..d {
                let mut k = SRAElement::scalar(group, HbarPoly::constant(omega.coefficient(&[j, i])));
                for (&g, w) in &weights {
                    let c = forms[g].coefficient(&[j, i]);
                    if !c.is_zero() {
                        k.add_term((Monomial::one(group.n()), g), &hbar_poly.scale(&(&c * w)));
                    }
                }
                kappa.insert((i, j), k);
            }
        }
        Ok(RewriteSystem { group: group.clone(), lambda: lambda.clone(), hbar, kappa, corrupted: false, memo: Mutex::new(HashMap::new()) })
    }

    pub fn group(&self) -> &Arc<FiniteSympGroup> {
        &self.group
    }

    pub fn lambda(&self) -> &LambdaWeights {
        &self.lambda
    }

    /// `Some(c)` when `ħ` is specialized.
    pub fn hbar(&self) -> Option<&Cyclotomic> {
        self.hbar.as_ref()
    }

    pub fn is_corrupted(&self) -> bool {
        self.corrupted
    }

    /// `κ(i, j)` for `i < j`.
    pub fn kappa(&self, i: usize, j: usize) -> &SRAElement {
        &self.kappa[&(i, j)]
    }

    /// The system obtained by evaluating `ħ → c` in every table entry.
    pub fn specialized(&self, c: &Cyclotomic) -> Self {
        let kappa = self.kappa.iter().map(|(k, v)| (*k, v.specialize_hbar(c))).collect();
        RewriteSystem {
            group: self.group.clone(),
            lambda: self.lambda.clone(),
            hbar: Some(c.clone()),
            kappa,
            corrupted: self.corrupted,
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// A copy with `delta` added to the table entry `κ(i, j)`.
    pub fn corrupt(&self, i: usize, j: usize, delta: &SRAElement) -> Self {
        let mut out = self.clone();
        let entry = out.kappa.get_mut(&(i, j)).expect("i < j within the basis");
        *entry = entry.add(delta);
        out.corrupted = true;
        out
    }

    fn dim(&self) -> usize {
        2 * self.group.n()
    }

    /// `e^I · e_s` in normal form.
    pub fn insert(&self, exps: &Monomial, s: usize) -> SRAElement {
        let key = (exps.0.clone(), s);
        if let Some(hit) = self.memo.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let id = self.group.identity();
        let last = exps.0.iter().rposition(|&e| e > 0);
        let result = match last {
            Some(m) if m > s => {
                let mut u = exps.clone();
                u.0[m] -= 1;
                // e^u e_m e_s = (e^u e_s) e_m + e^u κ(s, m)
                let head = self.mul_vector_right(&self.insert(&u, s), m);
                let tail = self.mul(&SRAElement::monomial(&self.group, u, id, HbarPoly::one()), self.kappa(s, m));
                head.add(&tail)
            }
            _ => {
                let mut e = exps.clone();
                e.0[s] += 1;
                SRAElement::monomial(&self.group, e, id, HbarPoly::one())
            }
        };
        self.memo.lock().unwrap().insert(key, result.clone());
        result
    }

    /// `x · e_s`.
    pub fn mul_vector_right(&self, x: &SRAElement, s: usize) -> SRAElement {
        let mut out = SRAElement::zero(&self.group);
        for ((m, h), c) in &x.terms {
            let hm = self.group.element(*h).matrix();
            for r in 0..self.dim() {
                let entry = hm.get(r, s);
                if entry.is_zero() {
                    continue;
                }
                let moved = self.mul_group_right(&self.insert(m, r), *h);
                out.add_assign(&moved.scale_poly(&c.scale(entry)));
            }
        }
        out
    }

    /// `x · g`.
    pub fn mul_group_right(&self, x: &SRAElement, g: usize) -> SRAElement {
        let mut out = SRAElement::zero(&self.group);
        for ((m, h), c) in &x.terms {
            out.add_term((m.clone(), self.group.mul(*h, g)), c);
        }
        out
    }

    /// Product of two normal forms.
    pub fn mul(&self, x: &SRAElement, y: &SRAElement) -> SRAElement {
        let mut out = SRAElement::zero(&self.group);
        for ((m, h), c) in &y.terms {
            let mut acc = x.clone();
            for (axis, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    acc = self.mul_vector_right(&acc, axis);
                }
            }
            acc = self.mul_group_right(&acc, *h);
            out.add_assign(&acc.scale_poly(c));
        }
        out
    }

    /// Product of several normal forms, left to right.
    pub fn product(&self, factors: &[SRAElement]) -> SRAElement {
        factors.iter().fold(SRAElement::one(&self.group), |acc, f| self.mul(&acc, f))
    }

    pub fn commutator(&self, x: &SRAElement, y: &SRAElement) -> SRAElement {
        self.mul(x, y).sub(&self.mul(y, x))
    }

    /// Normal form of a free word.
    pub fn normal_form(&self, word: &TVWord) -> Result<SRAElement> {
        let mut acc = SRAElement::scalar(&self.group, word.coeff.clone());
        for letter in &word.letters {
            acc = match *letter {
                Letter::V(s) if s < self.dim() => self.mul_vector_right(&acc, s),
                Letter::G(g) if g < self.group.order() => self.mul_group_right(&acc, g),
                Letter::V(s) => return Err(Error::AxisOutOfRange { axis: s, n: self.group.n() }),
                Letter::G(_) => return Err(Error::GroupMismatch),
            };
        }
        Ok(acc)
    }

    /// Normal form of a sum of free words.
    pub fn normal_form_sum(&self, words: &[TVWord]) -> Result<SRAElement> {
        let mut out = SRAElement::zero(&self.group);
        for w in words {
            out.add_assign(&self.normal_form(w)?);
        }
        Ok(out)
    }

    /// `Ad g(x) = g x g⁻¹`.
    pub fn ad(&self, g: usize, x: &SRAElement) -> SRAElement {
        let gx = self.mul(&SRAElement::group_element(&self.group, g), x);
        self.mul_group_right(&gx, self.group.inverse(g))
    }

    /// `g(e_s)` as a linear element.
    pub fn act_on_basis(&self, g: usize, s: usize) -> SRAElement {
        SRAElement::linear(&self.group, &self.group.element(g).matrix().column(s))
    }

    /// Normal monomials `e^I ⊗ g` with `|I| ≤ d`.
    pub fn normal_monomials(&self, d: u32) -> Vec<PbwKey> {
        let mons = crate::koszul::monomials_up_to(self.group.n(), d);
        let mut out = Vec::with_capacity(mons.len() * self.group.order());
        for m in mons {
            for g in 0..self.group.order() {
                out.push((m.clone(), g));
            }
        }
        out
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::catalog;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn z2_system(c: i64) -> RewriteSystem {
        let g = Arc::new(catalog::group("Z2_sp2").unwrap());
        let class = g.gamma2()[0];
        let lambda = LambdaWeights::new(&g, [(class, Cyclotomic::from_integer(c))]).unwrap();
        RewriteSystem::new(&g, &lambda).unwrap()
    }

    pub(crate) fn generic_system(name: &str) -> RewriteSystem {
        let g = Arc::new(catalog::group(name).unwrap());
        let entries: Vec<(usize, Cyclotomic)> = g.gamma2().iter().enumerate().map(|(i, &c)| (c, Cyclotomic::ratio(2 * i as i64 + 3, 5))).collect();
        let lambda = LambdaWeights::new(&g, entries).unwrap();
        RewriteSystem::new(&g, &lambda).unwrap()
    }

    pub(crate) fn random_word(rng: &mut impl Rng, sys: &RewriteSystem, len: usize) -> TVWord {
        let letters = (0..len)
            .map(|_| {
                if rng.gen_bool(0.25) {
                    Letter::G(rng.gen_range(0..sys.group().order()))
                } else {
                    Letter::V(rng.gen_range(0..2 * sys.group().n()))
                }
            })
            .collect();
        TVWord::new(letters)
    }

    #[test]
    fn normal_form_examples() {
        let sys = z2_system(3);
        let g = sys.group().clone();
        let pq = SRAElement::monomial(&g, Monomial(vec![1, 1]), 0, HbarPoly::one());
        assert_eq!(sys.normal_form(&TVWord::new(vec![Letter::V(0), Letter::V(1)])).unwrap(), pq);
        let eps = 1 - g.identity();
        let mut expect = pq.sub(&SRAElement::one(&g));
        expect.add_term((Monomial::one(1), eps), &HbarPoly::hbar().scale(&Cyclotomic::from_integer(-3)));
        assert_eq!(sys.normal_form(&TVWord::new(vec![Letter::V(1), Letter::V(0)])).unwrap(), expect);
        let gp = sys.normal_form(&TVWord::new(vec![Letter::G(eps), Letter::V(0)])).unwrap();
        assert_eq!(gp, SRAElement::monomial(&g, Monomial(vec![1, 0]), eps, HbarPoly::constant(Cyclotomic::from_integer(-1))));
        assert!(sys.normal_form(&TVWord::new(vec![Letter::V(5)])).is_err());
    }

    #[test]
    fn relation_holds_for_every_pair() {
        for name in ["Z2_sp2", "Z4_sp2", "Q8_sp2", "Z2_sp4", "Z2xZ2_sp4"] {
            let sys = generic_system(name);
            let g = sys.group().clone();
            let forms = element_forms(&g);
            let omega = canonical_omega(g.n());
            let weights = sys.lambda().class_sum_weights(&g);
            for i in 0..2 * g.n() {
                for j in 0..2 * g.n() {
                    let x = SRAElement::basis_vector(&g, i);
                    let y = SRAElement::basis_vector(&g, j);
                    let lhs = sys.commutator(&x, &y);
                    let mut rhs = SRAElement::scalar(&g, HbarPoly::constant(omega.coefficient(&[i, j])));
                    for (&h, w) in &weights {
                        rhs.add_term((Monomial::one(g.n()), h), &HbarPoly::hbar().scale(&(&forms[h].coefficient(&[i, j]) * w)));
                    }
                    assert_eq!(lhs, rhs, "{name} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn normal_forms_have_normal_keys_and_terminate() {
        let sys = generic_system("Z4_sp2");
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let w = random_word(&mut rng, &sys, 8);
            let nf = sys.normal_form(&w).unwrap();
            let vdeg = w.letters.iter().filter(|l| matches!(l, Letter::V(_))).count() as u32;
            assert!(nf.degree().unwrap_or(0) <= vdeg);
            // filtration: top part is the commutative image
            for ((m, _), _) in nf.terms() {
                assert_eq!((vdeg - m.degree()) % 2, 0);
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::{any, prop_assert_eq, proptest, ProptestConfig};

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(16))]
            #[test]
            fn normal_form_is_multiplicative(seed in any::<u64>()) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for name in ["Z2_sp2", "Z3_sp2", "Q8_sp2", "Z2_sp4"] {
                    let sys = generic_system(name);
                    let u = random_word(&mut rng, &sys, 4);
                    let v = random_word(&mut rng, &sys, 4);
                    let mut uv = u.clone();
                    uv.letters.extend(v.letters.iter().copied());
                    let lhs = sys.normal_form(&uv).unwrap();
                    let rhs = sys.mul(&sys.normal_form(&u).unwrap(), &sys.normal_form(&v).unwrap());
                    prop_assert_eq!(lhs, rhs);
                }
            }

            #[test]
            fn normal_form_is_equivariant(seed in any::<u64>()) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for name in ["Z4_sp2", "Q8_sp2", "Z2xZ2_sp4"] {
                    let sys = generic_system(name);
                    let w = random_word(&mut rng, &sys, 5);
                    let g = rng.gen_range(0..sys.group().order());
                    let mut conj = vec![Letter::G(g)];
                    conj.extend(w.letters.iter().copied());
                    conj.push(Letter::G(sys.group().inverse(g)));
                    let lhs = sys.normal_form(&TVWord::new(conj)).unwrap();
                    prop_assert_eq!(lhs, sys.ad(g, &sys.normal_form(&w).unwrap()));
                }
            }

            #[test]
            fn specialization_is_a_ring_map(seed in any::<u64>()) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let sys = generic_system("Z4_sp2");
                let c = Cyclotomic::ratio(rng.gen_range(-5..5), 3);
                let special = sys.specialized(&c);
                let u = random_word(&mut rng, &sys, 4);
                let v = random_word(&mut rng, &sys, 4);
                let (x, y) = (sys.normal_form(&u).unwrap(), sys.normal_form(&v).unwrap());
                let lhs = sys.mul(&x, &y).specialize_hbar(&c);
                let rhs = special.mul(&x.specialize_hbar(&c), &y.specialize_hbar(&c));
                prop_assert_eq!(lhs, rhs);
                prop_assert_eq!(special.normal_form(&u).unwrap(), x.specialize_hbar(&c));
            }
        }
    }
}
