//! Per-class certificates tying group data to Koszul cohomology.

use std::sync::Arc;

use serde::Serialize;

use crate::cyclo::Cyclotomic;
use crate::error::Result;
use crate::koszul::{truncated_cohomology_dims, KoszulCochain, KoszulContext, WindowTable};
use crate::smash::{build_c_lambda, constant_weyl_form, LambdaWeights};
use crate::sympgroup::{sigma_invariants, transport_form, FiniteSympGroup};

/// Evidence that `H^•(W_γ)` is one-dimensional in degree `2k_γ` and that the
/// class contributes to `H^{2k_γ}(G∗W)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassCertificate {
    pub class: usize,
    pub representative: usize,
    pub k: usize,
    /// `ω_γ` is not a `Δ′`-coboundary.
    pub witness: bool,
    /// `ω_γ` is fixed by the centralizer of the representative.
    pub omega_invariant: bool,
    /// `ω_γ` contracts to itself with `s = 1`.
    pub contraction_verified: bool,
    pub window: WindowTable,
}

impl ClassCertificate {
    /// Dimension the certificate assigns to `H^{2k}` of the class summand.
    pub fn top_dimension(&self) -> usize {
        let window_ok = self.window.rows.iter().all(|r| r.cohomology == usize::from(r.degree == 2 * self.k));
        usize::from(self.witness && self.omega_invariant && self.contraction_verified && window_ok)
    }
}

/// Builds one certificate per conjugacy class, with truncated cohomology in
/// polynomial degree `≤ d_max`.
pub fn class_certificates(group: &FiniteSympGroup, d_max: usize) -> Result<Vec<ClassCertificate>> {
    let mut out = Vec::new();
    for class in group.classes() {
        let rep = class.representative;
        let inv = sigma_invariants(group.element(rep))?;
        let ctx = KoszulContext::from_invariants(&inv);
        let omega = ctx.omega_sigma();
        let witness = ctx.noncoboundary_witness(&omega)?;
        let cert = ctx.contract(&omega)?;
        let contraction_verified = cert.verified && cert.s == Some(Cyclotomic::one());
        let omega_invariant = class
            .centralizer
            .iter()
            .all(|&s| transport_form(group.element(s), inv.omega()) == *inv.omega());
        let window = truncated_cohomology_dims(&ctx, 0..=2 * group.n(), d_max)?;
        out.push(ClassCertificate { class: class.index, representative: rep, k: class.k, witness, omega_invariant, contraction_verified, window });
    }
    Ok(out)
}

/// `k ↦ dim H^k(G∗W)` for `k ∈ 0..=2n`, read from class certificates.
pub fn poincare_from_certificates(n: usize, certs: &[ClassCertificate]) -> Vec<usize> {
    let mut dims = vec![0; 2 * n + 1];
    for c in certs {
        dims[2 * c.k] += c.top_dimension();
    }
    dims
}

/// `k ↦ |Γ_{k/2}|` for even `k`, zero for odd `k`.
pub fn poincare_from_class_count(group: &FiniteSympGroup) -> Vec<usize> {
    let mut dims = vec![0; 2 * group.n() + 1];
    for (k, classes) in group.gamma_by_k() {
        dims[2 * k] = classes.len();
    }
    dims
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CocycleWitness {
    pub class: usize,
    pub lambda: String,
    /// `λ(γ)·ω_γ` is not a coboundary.
    pub witness: bool,
}

/// Class-wise noncoboundary witnesses for `C_λ`: for each `γ ∈ Γ_2`, the
/// representative's component `λ(γ)·ω_γ` is moved to Darboux coordinates and tested.
pub fn c_lambda_witnesses(group: &Arc<FiniteSympGroup>, lambda: &LambdaWeights) -> Result<Vec<CocycleWitness>> {
    let c = build_c_lambda(group, lambda);
    let family = crate::smash::components(&c);
    let order = group.cyclotomic_order();
    let mut out = Vec::new();
    for (class, weight) in lambda.iter() {
        let rep = group.classes()[class].representative;
        let inv = sigma_invariants(group.element(rep))?;
        let ctx = KoszulContext::from_invariants(&inv);
        let component: KoszulCochain = match family.get(&rep) {
            Some(f) => inv.form_to_darboux(f),
            None => KoszulCochain::zero(2 * group.n(), 2 * lambda.k()),
        };
        let expected = inv.form_to_darboux(&constant_weyl_form(group.n(), &inv.omega().scale(weight)));
        debug_assert_eq!(component, expected);
        let witness = ctx.noncoboundary_witness(&component)?;
        out.push(CocycleWitness { class, lambda: weight.to_text(num_integer::lcm(order, weight.order())), witness });
    }
    Ok(out)
}
