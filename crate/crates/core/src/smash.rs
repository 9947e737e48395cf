//! The smash product `G∗W`, its adjoint action, `C[G]`-relative cochains given
//! by their restriction to `W`, the class decomposition of equivariant families
//! and the cocycles `C_λ`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::cyclo::{factorial, Cyclotomic};
use crate::error::{Error, Result};
use crate::forms::{Form, FormValue, ScalarForm};
use crate::sympgroup::{sigma_invariants, FiniteSympGroup};
use crate::weyl::{Monomial, WeylElement};

/// `Σ_g a_g ⊗ g` with `a_g ∈ W`.
#[derive(Clone)]
pub struct SmashElement {
    group: Arc<FiniteSympGroup>,
    terms: BTreeMap<usize, WeylElement>,
}

/// A degree-`k` alternating cochain on `V` with values in `G∗W`.
pub type LambdaCochain = Form<SmashElement>;

/// A degree-`k` alternating cochain on `V` with values in `W`.
pub type WeylForm = Form<WeylElement>;

fn same_group(a: &Arc<FiniteSympGroup>, b: &Arc<FiniteSympGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl SmashElement {
    pub fn zero(group: &Arc<FiniteSympGroup>) -> Self {
        SmashElement { group: group.clone(), terms: BTreeMap::new() }
    }

    /// `a ⊗ g`.
    pub fn pure(group: &Arc<FiniteSympGroup>, a: WeylElement, g: usize) -> Self {
        assert!(g < group.order(), "group element index out of range");
        assert_eq!(a.n(), group.n(), "Weyl arity differs from the group's");
        let mut terms = BTreeMap::new();
        if !a.is_zero() {
            terms.insert(g, a);
        }
        SmashElement { group: group.clone(), terms }
    }

    /// `a ⊗ 1`.
    pub fn weyl(group: &Arc<FiniteSympGroup>, a: WeylElement) -> Self {
        Self::pure(group, a, group.identity())
    }

    /// `1 ⊗ g`.
    pub fn group_element(group: &Arc<FiniteSympGroup>, g: usize) -> Self {
        Self::pure(group, WeylElement::one(group.n()), g)
    }

    pub fn one(group: &Arc<FiniteSympGroup>) -> Self {
        Self::group_element(group, group.identity())
    }

    pub fn group(&self) -> &Arc<FiniteSympGroup> {
        &self.group
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &WeylElement)> {
        self.terms.iter().map(|(g, a)| (*g, a))
    }

    /// The `W`-coefficient of `g`.
    pub fn component(&self, g: usize) -> WeylElement {
        self.terms.get(&g).cloned().unwrap_or_else(|| WeylElement::zero(self.group.n()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_component(&mut self, g: usize, a: &WeylElement) {
        if a.is_zero() {
            return;
        }
        let entry = self.terms.entry(g).or_insert_with(|| WeylElement::zero(a.n()));
        entry.add_assign(a);
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(same_group(&self.group, &other.group), "group mismatch in addition");
        let mut out = self.clone();
        for (g, a) in &other.terms {
            out.add_component(*g, a);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Cyclotomic::from_integer(-1)))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero(&self.group);
        for (g, a) in &self.terms {
            out.add_component(*g, &a.scale(c));
        }
        out
    }

    /// `(a ⊗ g)(b ⊗ h) = (a ∗ g(b)) ⊗ gh`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let mut out = Self::zero(&self.group);
        for (g, a) in &self.terms {
            let gm = self.group.element(*g);
            for (h, b) in &other.terms {
                let moved = gm.act(b);
                out.add_component(self.group.mul(*g, *h), &a.moyal_mul(&moved)?);
            }
        }
        Ok(out)
    }

    /// `Ad g(x) = g x g⁻¹`.
    pub fn ad(&self, g: usize) -> Self {
        let gm = self.group.element(g);
        let mut out = Self::zero(&self.group);
        for (h, a) in &self.terms {
            out.add_component(self.group.conjugate(g, *h), &gm.act(a));
        }
        out
    }

    /// Text form `poly ⊗ g[idx] + …`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let order = self.group.cyclotomic_order();
        self.terms
            .iter()
            .map(|(g, a)| format!("{} ⊗ g[{g}]", a.to_text(order.max(a.max_cyclotomic_order()))))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl PartialEq for SmashElement {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.terms == other.terms
    }
}

impl fmt::Debug for SmashElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl FormValue for SmashElement {
    fn is_zero(&self) -> bool {
        SmashElement::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn scaled(&self, c: &Cyclotomic) -> Self {
        self.scale(c)
    }
}

/// Values carrying an action of the group: trivial on scalars, by substitution
/// on `W`, by `Ad` on `G∗W`.
pub trait GroupModule: FormValue {
    fn act(&self, group: &FiniteSympGroup, g: usize) -> Self;
}

impl GroupModule for Cyclotomic {
    fn act(&self, _: &FiniteSympGroup, _: usize) -> Self {
        self.clone()
    }
}

impl GroupModule for WeylElement {
    fn act(&self, group: &FiniteSympGroup, g: usize) -> Self {
        group.element(g).act(self)
    }
}

impl GroupModule for SmashElement {
    fn act(&self, _: &FiniteSympGroup, g: usize) -> Self {
        self.ad(g)
    }
}

/// `π_x(φ)(v_1, …) = x · φ(x⁻¹ v_1, …)`.
pub fn act_on_form<T: GroupModule>(group: &FiniteSympGroup, x: usize, form: &Form<T>) -> Form<T> {
    let xinv = group.element(group.inverse(x));
    form.pullback(xinv.matrix()).map_values(|v| v.act(group, x))
}

/// Average `(1/|S|) Σ_{s∈S} π_s(φ)` over a subgroup given by element indices.
pub fn project_invariant<T: GroupModule>(group: &FiniteSympGroup, subgroup: &[usize], form: &Form<T>) -> Form<T> {
    let mut acc = Form::zero(form.dim(), form.degree());
    for &s in subgroup {
        acc = acc.add(&act_on_form(group, s, form));
    }
    acc.scale(&Cyclotomic::ratio(1, subgroup.len() as i64))
}

/// Invariance of a cochain under the simultaneous action of every element.
pub fn is_invariant<T: GroupModule>(group: &FiniteSympGroup, form: &Form<T>) -> bool {
    (0..group.order()).all(|x| &act_on_form(group, x, form) == form)
}

/// Weights `λ(γ)` on the classes with a fixed `k_γ`; classes not listed carry zero.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaWeights {
    k: usize,
    values: BTreeMap<usize, Cyclotomic>,
}

impl LambdaWeights {
    /// Weights on `Γ_2`, keyed by class index.
    pub fn new(group: &FiniteSympGroup, entries: impl IntoIterator<Item = (usize, Cyclotomic)>) -> Result<Self> {
        Self::for_degree(group, 1, entries)
    }

    /// Weights on `Γ_{2k}`.
    pub fn for_degree(group: &FiniteSympGroup, k: usize, entries: impl IntoIterator<Item = (usize, Cyclotomic)>) -> Result<Self> {
        let allowed = group.gamma_by_k().remove(&k).unwrap_or_default();
        let mut values: BTreeMap<usize, Cyclotomic> = allowed.iter().map(|&c| (c, Cyclotomic::zero())).collect();
        for (class, v) in entries {
            match values.get_mut(&class) {
                Some(slot) => *slot = v,
                None => return Err(Error::UnknownClassKey(format!("c{class}"))),
            }
        }
        Ok(LambdaWeights { k, values })
    }

    pub fn zero(group: &FiniteSympGroup) -> Self {
        Self::new(group, []).expect("empty assignment")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `λ(γ)`; zero for classes outside `Γ_{2k}`.
    pub fn get(&self, class: usize) -> Cyclotomic {
        self.values.get(&class).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Cyclotomic)> {
        self.values.iter().map(|(c, v)| (*c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Cyclotomic::is_zero)
    }

    /// Sum of `λ(γ) g` over the group elements of the weighted classes.
    pub fn class_sum_weights(&self, group: &FiniteSympGroup) -> BTreeMap<usize, Cyclotomic> {
        let mut out = BTreeMap::new();
        for (c, v) in &self.values {
            if v.is_zero() {
                continue;
            }
            for &g in &group.classes()[*c].members {
                out.insert(g, v.clone());
            }
        }
        out
    }
}

/// `ω_g` for every group element, in canonical coordinates.
pub fn element_forms(group: &FiniteSympGroup) -> Vec<ScalarForm> {
    group.elements().iter().map(|g| sigma_invariants(g).expect("finite order").omega().clone()).collect()
}

/// `C_λ(X_1 ∧ … ∧ X_{2k}) = Σ_γ λ(γ) Σ_{g∈γ} ω_g(X_1, …, X_{2k}) ⊗ g`.
pub fn build_c_lambda(group: &Arc<FiniteSympGroup>, lambda: &LambdaWeights) -> LambdaCochain {
    let dim = 2 * group.n();
    let degree = 2 * lambda.k();
    let mut out = LambdaCochain::zero(dim, degree);
    for (g, weight) in lambda.class_sum_weights(group) {
        let omega = sigma_invariants(group.element(g)).expect("finite order").omega().clone();
        for (idx, c) in omega.terms() {
            let value = SmashElement::group_element(group, g).scale(&(c * &weight));
            out.add_at(idx, &value);
        }
    }
    out
}

/// A multilinear map `D: W^{⊗k} → G∗W`, the restriction of a relative cochain.
pub trait TensorCochain {
    fn group(&self) -> &Arc<FiniteSympGroup>;
    fn arity(&self) -> usize;
    fn eval(&self, args: &[WeylElement]) -> SmashElement;
}

/// `D(a_1, …, a_k) = (1/k!) C(ℓ(a_1) ∧ … ∧ ℓ(a_k))`, where `ℓ` takes the linear
/// part; its antisymmetrization on `Λ^k V` gives back `C`.
pub struct LambdaExtension {
    cochain: LambdaCochain,
    group: Arc<FiniteSympGroup>,
}

impl LambdaExtension {
    pub fn new(group: &Arc<FiniteSympGroup>, cochain: LambdaCochain) -> Self {
        LambdaExtension { cochain, group: group.clone() }
    }
}

impl TensorCochain for LambdaExtension {
    fn group(&self) -> &Arc<FiniteSympGroup> {
        &self.group
    }

    fn arity(&self) -> usize {
        self.cochain.degree()
    }

    fn eval(&self, args: &[WeylElement]) -> SmashElement {
        let k = self.arity();
        assert_eq!(args.len(), k);
        let vectors: Vec<Vec<Cyclotomic>> = args.iter().map(WeylElement::linear_coords).collect();
        let scale = Cyclotomic::from_rational(factorial(k as u32).recip());
        self.cochain.eval(&vectors).map(|v| v.scale(&scale)).unwrap_or_else(|| SmashElement::zero(&self.group))
    }
}

fn basis_tuples(dim: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..dim).map(move |i| {
                    let mut t2 = t.clone();
                    t2.push(i);
                    t2
                })
            })
            .collect();
    }
    out
}

/// Checks normalization and `G`-invariance of `D` on tuples of basis vectors.
pub fn check_relative(d: &dyn TensorCochain) -> Result<()> {
    let group = d.group();
    let n = group.n();
    let k = d.arity();
    let basis: Vec<WeylElement> = (0..2 * n).map(|i| WeylElement::variable(n, i)).collect();
    for tuple in basis_tuples(2 * n, k.saturating_sub(1)) {
        for pos in 0..k {
            let mut args: Vec<WeylElement> = tuple.iter().map(|&i| basis[i].clone()).collect();
            args.insert(pos, WeylElement::one(n));
            if !d.eval(&args).is_zero() {
                return Err(Error::NotNormalized);
            }
        }
    }
    for tuple in basis_tuples(2 * n, k) {
        let args: Vec<WeylElement> = tuple.iter().map(|&i| basis[i].clone()).collect();
        let value = d.eval(&args);
        for g in 0..group.order() {
            let moved: Vec<WeylElement> = args.iter().map(|a| group.element(g).act(a)).collect();
            if d.eval(&moved) != value.ad(g) {
                return Err(Error::NotInvariant);
            }
        }
    }
    Ok(())
}

/// `C(a_1⊗g_1, …, a_k⊗g_k) = D(a_1, g_1(a_2), …, g_1⋯g_{k-1}(a_k)) ∗ g_1⋯g_k`.
pub fn extend_relative_cochain(d: &dyn TensorCochain, inputs: &[SmashElement]) -> Result<SmashElement> {
    if inputs.len() != d.arity() {
        return Err(Error::MismatchedArity { expected: d.arity(), found: inputs.len() });
    }
    let group = d.group().clone();
    if inputs.iter().any(|x| !same_group(x.group(), &group)) {
        return Err(Error::GroupMismatch);
    }
    check_relative(d)?;
    let mut out = SmashElement::zero(&group);
    let mut stack: Vec<(Vec<WeylElement>, usize)> = vec![(Vec::new(), group.identity())];
    for input in inputs {
        let mut next = Vec::new();
        for (args, prefix) in &stack {
            for (g, a) in input.terms() {
                let mut args2 = args.clone();
                args2.push(group.element(*prefix).act(a));
                next.push((args2, group.mul(*prefix, g)));
            }
        }
        stack = next;
    }
    for (args, total) in stack {
        let value = d.eval(&args);
        out = out.add(&value.mul(&SmashElement::group_element(&group, total))?);
    }
    Ok(out)
}

/// Splits a `G∗W`-valued cochain into its components `C_g`.
pub fn components(c: &LambdaCochain) -> BTreeMap<usize, WeylForm> {
    let mut out: BTreeMap<usize, WeylForm> = BTreeMap::new();
    for (idx, v) in c.terms() {
        for (g, a) in v.terms() {
            out.entry(g).or_insert_with(|| WeylForm::zero(c.dim(), c.degree())).add_at(idx, a);
        }
    }
    out
}

/// Reassembles `Σ_g C_g ⊗ g`.
pub fn assemble(group: &Arc<FiniteSympGroup>, dim: usize, degree: usize, family: &BTreeMap<usize, WeylForm>) -> LambdaCochain {
    let mut out = LambdaCochain::zero(dim, degree);
    for (g, f) in family {
        for (idx, a) in f.terms() {
            out.add_at(idx, &SmashElement::pure(group, a.clone(), *g));
        }
    }
    out
}

fn family_get(family: &BTreeMap<usize, WeylForm>, g: usize, dim: usize, degree: usize) -> WeylForm {
    family.get(&g).cloned().unwrap_or_else(|| WeylForm::zero(dim, degree))
}

/// `C_{Ad σ(g)} = π_σ(C_g)` for all `σ, g`.
pub fn is_equivariant_family(group: &FiniteSympGroup, dim: usize, degree: usize, family: &BTreeMap<usize, WeylForm>) -> bool {
    (0..group.order()).all(|s| {
        (0..group.order()).all(|g| {
            let lhs = family_get(family, group.conjugate(s, g), dim, degree);
            lhs == act_on_form(group, s, &family_get(family, g, dim, degree))
        })
    })
}

/// `T: (C_g)_g ↦ (C_{σ_γ})_γ`, indexed by class.
pub fn class_decompose(group: &FiniteSympGroup, dim: usize, degree: usize, family: &BTreeMap<usize, WeylForm>) -> Result<Vec<WeylForm>> {
    if !is_equivariant_family(group, dim, degree, family) {
        return Err(Error::NotEquivariant);
    }
    Ok(group.classes().iter().map(|c| family_get(family, c.representative, dim, degree)).collect())
}

/// Inverse of [`class_decompose`]: `C = Σ_γ Σ_{x̄ ∈ G/S_γ} π_x(C̃_γ) ⊗ Ad x(σ_γ)`.
/// Each `C̃_γ` must be invariant under the centralizer of `σ_γ`.
pub fn class_compose(group: &FiniteSympGroup, reps: &[WeylForm]) -> Result<BTreeMap<usize, WeylForm>> {
    if reps.len() != group.classes().len() {
        return Err(Error::BasisMismatch(format!("{} class values for {} classes", reps.len(), group.classes().len())));
    }
    let mut out = BTreeMap::new();
    for (cl, rep) in group.classes().iter().zip(reps) {
        if cl.centralizer.iter().any(|&s| &act_on_form(group, s, rep) != rep) {
            return Err(Error::NotEquivariant);
        }
        for (&m, &x) in cl.members.iter().zip(&cl.witnesses) {
            let v = act_on_form(group, x, rep);
            if !v.is_zero() {
                out.insert(m, v);
            }
        }
    }
    Ok(out)
}

/// Scalar `W`-valued form from a scalar form.
pub fn constant_weyl_form(n: usize, f: &ScalarForm) -> WeylForm {
    f.map_values(|c| WeylElement::monomial(n, Monomial::one(n), c.clone()))
}
