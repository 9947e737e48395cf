//! Finite subgroups of `Sp(2n)`: closure, conjugacy classes, centralizers and the
//! per-element data `V_σ`, `k_σ`, `P_σ`, `ω_σ` with a diagonal Darboux basis.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::cyclo::{factorial, Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::forms::ScalarForm;
use crate::linalg::Matrix;
use crate::weyl::{SymplecticForm, WeylElement};

/// Default bound on group orders and element orders.
pub const DEFAULT_CAP: usize = 1024;

/// A `2n × 2n` symplectic matrix acting on coordinate columns in the basis
/// `p_1, q_1, …, p_n, q_n`.
#[derive(Clone, PartialEq, Eq)]
pub struct SympMatrix {
    n: usize,
    m: Matrix,
}

impl SympMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        if m.rows() != m.cols() || !m.rows().is_multiple_of(2) {
            return Err(Error::NonSymplecticMatrix);
        }
        let n = m.rows() / 2;
        if !SymplecticForm::canonical(n).is_symplectic(&m) {
            return Err(Error::NonSymplecticMatrix);
        }
        Ok(SympMatrix { n, m })
    }

    pub fn identity(n: usize) -> Self {
        SympMatrix { n, m: Matrix::identity(2 * n) }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(Matrix::from_i64(rows))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn mul(&self, other: &SympMatrix) -> SympMatrix {
        SympMatrix { n: self.n, m: self.m.mul(&other.m) }
    }

    /// `M⁻¹ = -J Mᵀ J`.
    pub fn inverse(&self) -> SympMatrix {
        let j = SymplecticForm::canonical(self.n).matrix().clone();
        let inv = j.mul(&self.m.transpose()).mul(&j).scale(&Cyclotomic::from_integer(-1));
        SympMatrix { n: self.n, m: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.m == Matrix::identity(2 * self.n)
    }

    pub fn apply(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        self.m.mul_vec(v)
    }

    /// Action on `W`.
    pub fn act(&self, a: &WeylElement) -> WeylElement {
        a.substitute_linear(&self.m)
    }

    /// Multiplicative order, searched up to `cap`.
    pub fn order(&self, cap: usize) -> Result<usize> {
        let mut pow = self.clone();
        for k in 1..=cap {
            if pow.is_identity() {
                return Ok(k);
            }
            pow = pow.mul(self);
        }
        Err(Error::NotFiniteOrder { cap })
    }

    /// `dim range(M - Id)`.
    pub fn moving_rank(&self) -> usize {
        self.m.sub(&Matrix::identity(2 * self.n)).rank()
    }

    fn cyclotomic_order(&self) -> u32 {
        crate::cyclo::common_order(self.m.entries())
    }

    fn key(&self, order: u32) -> Vec<Rational> {
        self.m.entries().iter().flat_map(|c| c.embedded_coeffs(order)).collect()
    }
}

impl fmt::Debug for SympMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.m, f)
    }
}

/// A conjugacy class with its chosen representative, transport witnesses and
/// the centralizer of the representative. Entries are element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub index: usize,
    pub representative: usize,
    pub members: Vec<usize>,
    /// `witnesses[i]` conjugates the representative onto `members[i]`.
    pub witnesses: Vec<usize>,
    pub centralizer: Vec<usize>,
    pub k: usize,
}

/// An enumerated finite subgroup of `Sp(2n)`.
pub struct FiniteSympGroup {
    n: usize,
    name: String,
    order_field: u32,
    generators: Vec<SympMatrix>,
    elements: Vec<SympMatrix>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    ks: Vec<usize>,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
}

impl PartialEq for FiniteSympGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.elements == other.elements
    }
}

impl fmt::Debug for FiniteSympGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteSympGroup({}, n = {}, order {})", self.name, self.n, self.elements.len())
    }
}

/// Enumerates the group generated by `generators` inside `Sp(2n)`.
///
/// Elements are listed breadth first from the identity, multiplying by the
/// generators on the right in the given order.
pub fn close_group(n: usize, generators: &[SympMatrix], cap: usize) -> Result<FiniteSympGroup> {
    close_group_named("custom", n, generators, cap)
}

pub fn close_group_named(name: &str, n: usize, generators: &[SympMatrix], cap: usize) -> Result<FiniteSympGroup> {
    let form = SymplecticForm::canonical(n);
    for (index, g) in generators.iter().enumerate() {
        if g.n != n || !form.is_symplectic(&g.m) {
            return Err(Error::NonSymplecticGenerator { index });
        }
    }
    let order_field = generators.iter().fold(1u32, |acc, g| num_integer::lcm(acc, g.cyclotomic_order()));
    let id = SympMatrix::identity(n);
    let mut elements = vec![id.clone()];
    let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
    index.insert(id.key(order_field), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let h = elements[i].mul(g);
            let key = h.key(order_field);
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(key) {
                if elements.len() >= cap {
                    return Err(Error::OrderExceedsCap { cap });
                }
                e.insert(elements.len());
                queue.push_back(elements.len());
                elements.push(h);
            }
        }
    }
    let size = elements.len();
    let mut table = vec![vec![0usize; size]; size];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            table[i][j] = *index.get(&a.mul(b).key(order_field)).expect("closure under products");
        }
    }
    let inverses: Vec<usize> = (0..size).map(|i| (0..size).find(|&j| table[i][j] == 0).expect("inverse")).collect();
    let ks: Vec<usize> = elements
        .iter()
        .map(|g| {
            let r = g.moving_rank();
            assert!(r % 2 == 0, "range(g - Id) of odd dimension");
            r / 2
        })
        .collect();
    let mut class_of = vec![usize::MAX; size];
    let mut classes = Vec::new();
    for rep in 0..size {
        if class_of[rep] != usize::MAX {
            continue;
        }
        let ci = classes.len();
        let mut members = Vec::new();
        let mut witnesses = Vec::new();
        let mut centralizer = Vec::new();
        for x in 0..size {
            let tau = table[table[x][rep]][inverses[x]];
            if tau == rep {
                centralizer.push(x);
            }
            if class_of[tau] == usize::MAX {
                class_of[tau] = ci;
                members.push(tau);
                witnesses.push(x);
            }
        }
        classes.push(ConjClass { index: ci, representative: rep, members, witnesses, centralizer, k: ks[rep] });
    }
    Ok(FiniteSympGroup {
        n,
        name: name.to_string(),
        order_field,
        generators: generators.to_vec(),
        elements,
        table,
        inverses,
        ks,
        classes,
        class_of,
    })
}

impl FiniteSympGroup {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// Cyclotomic order containing every matrix entry.
    pub fn cyclotomic_order(&self) -> u32 {
        self.order_field
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[SympMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[SympMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &SympMatrix {
        &self.elements[i]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `x a x⁻¹`.
    pub fn conjugate(&self, x: usize, a: usize) -> usize {
        self.table[self.table[x][a]][self.inverses[x]]
    }

    /// Index of a matrix in the element list.
    pub fn index_of(&self, m: &SympMatrix) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }

    pub fn k_of(&self, g: usize) -> usize {
        self.ks[g]
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// Classes grouped by `k_γ`; every `k` in `0..=n` is present.
    pub fn gamma_by_k(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut out: BTreeMap<usize, Vec<usize>> = (0..=self.n).map(|k| (k, Vec::new())).collect();
        for c in &self.classes {
            out.entry(c.k).or_default().push(c.index);
        }
        out
    }

    /// Classes with `k_γ = 1`, the symplectic reflections.
    pub fn gamma2(&self) -> Vec<usize> {
        self.gamma_by_k().remove(&1).unwrap_or_default()
    }

    /// `x` with `x σ_γ x⁻¹ = g`, where `γ` is the class of `g`.
    pub fn witness(&self, g: usize) -> usize {
        let c = &self.classes[self.class_of[g]];
        let pos = c.members.iter().position(|&m| m == g).expect("member of its class");
        c.witnesses[pos]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

/// Classes and the partition by `k_γ`.
pub fn conjugacy_data(g: &FiniteSympGroup) -> (Vec<ConjClass>, BTreeMap<usize, Vec<usize>>) {
    (g.classes().to_vec(), g.gamma_by_k())
}

/// Per-element invariants of a finite-order symplectic matrix.
#[derive(Clone, Debug)]
pub struct SigmaInvariants {
    sigma: SympMatrix,
    order: usize,
    alphas: Vec<Cyclotomic>,
    basis: Matrix,
    basis_inverse: Matrix,
    k: usize,
    projection: Matrix,
    omega: ScalarForm,
}

fn omega_form(n: usize) -> ScalarForm {
    let mut w = ScalarForm::zero(2 * n, 2);
    for i in 0..n {
        w.add_at(&[2 * i, 2 * i + 1], &Cyclotomic::one());
    }
    w
}

fn deflate(pool: &mut Vec<Vec<Cyclotomic>>, p: &[Cyclotomic], q: &[Cyclotomic], form: &SymplecticForm) {
    let reduced: Vec<Vec<Cyclotomic>> = pool
        .iter()
        .map(|u| {
            let a = form.eval(u, q);
            let b = form.eval(u, p);
            u.iter().zip(p).zip(q).map(|((ui, pi), qi)| ui - &(&a * pi) + &b * qi).collect()
        })
        .collect();
    let nonzero: Vec<Vec<Cyclotomic>> = reduced.into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
    *pool = if nonzero.is_empty() { Vec::new() } else { Matrix::from_columns(&nonzero).column_space_basis() };
}

/// Eigenvalues, diagonal Darboux basis, `k_σ`, `P_σ` and `ω_σ`.
pub fn sigma_invariants(sigma: &SympMatrix) -> Result<SigmaInvariants> {
    sigma_invariants_capped(sigma, DEFAULT_CAP)
}

pub fn sigma_invariants_capped(sigma: &SympMatrix, cap: usize) -> Result<SigmaInvariants> {
    let n = sigma.n;
    let d = 2 * n;
    let order = sigma.order(cap)?;
    let form = SymplecticForm::canonical(n);
    let mut powers = vec![Matrix::identity(d)];
    for _ in 1..order {
        powers.push(powers.last().unwrap().mul(sigma.matrix()));
    }
    let inv_n = Cyclotomic::ratio(1, order as i64);
    let mut pools: Vec<Vec<Vec<Cyclotomic>>> = (0..order)
        .map(|j| {
            let mut proj = Matrix::zeros(d, d);
            for (e, pw) in powers.iter().enumerate() {
                let coeff = Cyclotomic::root_of_unity(order as u32, -((j * e) as i64));
                proj = proj.add(&pw.scale(&coeff));
            }
            proj.scale(&inv_n).column_space_basis()
        })
        .collect();
    let mut pairs: Vec<(Cyclotomic, Vec<Cyclotomic>, Vec<Cyclotomic>)> = Vec::new();
    let mut sequence: Vec<usize> = (1..order).collect();
    sequence.push(0);
    for j in sequence {
        while let Some(v) = pools[j].first().cloned() {
            let partner = (order - j) % order;
            let w = pools[partner]
                .iter()
                .find(|w| !form.eval(&v, w).is_zero())
                .cloned()
                .expect("symplectic form is nondegenerate on paired eigenspaces");
            let s = form.eval(&v, &w).inverse().expect("nonzero pairing");
            let q: Vec<Cyclotomic> = w.iter().map(|x| x * &s).collect();
            let alpha = Cyclotomic::root_of_unity(order as u32, j as i64);
            for pool in pools.iter_mut() {
                deflate(pool, &v, &q, &form);
            }
            pairs.push((alpha, v, q));
        }
    }
    let k = pairs.iter().filter(|(a, _, _)| !a.is_one()).count();
    let mut cols = Vec::with_capacity(d);
    let mut alphas = Vec::with_capacity(n);
    for (a, p, q) in pairs {
        alphas.push(a);
        cols.push(p);
        cols.push(q);
    }
    let basis = Matrix::from_columns(&cols);
    let basis_inverse = basis.inverse().expect("Darboux basis is a basis");
    let fixed_projection = {
        let mut proj = Matrix::zeros(d, d);
        for pw in &powers {
            proj = proj.add(pw);
        }
        proj.scale(&inv_n)
    };
    let projection = Matrix::identity(d).sub(&fixed_projection);
    let mut omega = ScalarForm::scalar(d, Cyclotomic::one());
    for i in 0..k {
        omega = omega
            .wedge(&ScalarForm::covector(&basis_inverse.row(2 * i)))
            .wedge(&ScalarForm::covector(&basis_inverse.row(2 * i + 1)));
    }
    Ok(SigmaInvariants { sigma: sigma.clone(), order, alphas, basis, basis_inverse, k, projection, omega })
}

impl SigmaInvariants {
    pub fn sigma(&self) -> &SympMatrix {
        &self.sigma
    }

    pub fn n(&self) -> usize {
        self.sigma.n
    }

    /// Multiplicative order of `σ`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// `α_i` with `σ(P_i) = α_i P_i`; the first `k_σ` differ from 1.
    pub fn alphas(&self) -> &[Cyclotomic] {
        &self.alphas
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Columns `P_1, Q_1, …, P_n, Q_n` in canonical coordinates.
    pub fn darboux_basis(&self) -> &Matrix {
        &self.basis
    }

    /// Projection onto `V_σ` along the fixed space.
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    /// `ω_σ` in canonical coordinates.
    pub fn omega(&self) -> &ScalarForm {
        &self.omega
    }

    /// `(1/k!) ω^k ∘ P_σ`, computed without the Darboux basis.
    pub fn omega_via_projection(&self) -> ScalarForm {
        let k = self.k;
        let scale = Cyclotomic::from_rational(factorial(k as u32).recip());
        omega_form(self.n()).wedge_power(k).pullback(&self.projection).scale(&scale)
    }

    /// `dim V_σ`.
    pub fn moving_dimension(&self) -> usize {
        self.projection.rank()
    }

    /// A matrix acting on canonical coordinates, written in the Darboux basis.
    pub fn to_darboux_matrix(&self, m: &Matrix) -> Matrix {
        self.basis_inverse.mul(m).mul(&self.basis)
    }

    /// Rewrites a polynomial in the Darboux variables `P_1, Q_1, …`.
    pub fn weyl_to_darboux(&self, a: &WeylElement) -> WeylElement {
        a.substitute_linear(&self.basis_inverse)
    }

    pub fn weyl_from_darboux(&self, a: &WeylElement) -> WeylElement {
        a.substitute_linear(&self.basis)
    }

    /// Coefficients of a canonical-coordinate form on the Darboux basis.
    pub fn form_to_darboux<T: crate::forms::FormValue>(&self, f: &crate::forms::Form<T>) -> crate::forms::Form<T> {
        f.pullback(&self.basis)
    }
}

/// `π_x(φ) = (x⁻¹)^* φ`.
pub fn transport_form(x: &SympMatrix, form: &ScalarForm) -> ScalarForm {
    form.pullback(x.inverse().matrix())
}

/// The canonical symplectic 2-form `Σ p_i* ∧ q_i*`.
pub fn canonical_omega(n: usize) -> ScalarForm {
    omega_form(n)
}
