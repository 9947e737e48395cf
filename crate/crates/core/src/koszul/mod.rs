//! Koszul cochains of the twisted bimodule `W_σ`, written in a diagonal Darboux
//! basis `P_1, Q_1, …, P_n, Q_n` of `σ`, with the first `k_σ` pairs spanning
//! `V_σ`.
//!
//! Cochains are alternating forms on the Darboux basis with values in `W`, where
//! `W` is also written in the Darboux variables (axis `2i` is `P_{i+1}`, axis
//! `2i + 1` is `Q_{i+1}`). Differentials act as `Σ_t T_t ⊗ μ_t`, where `μ_t` is
//! left exterior multiplication by `Z*_t`.

mod bar;
mod window;

pub use bar::{bar_subcomplex_check, bar_subcomplex_check_capped, monomials_up_to, BarChain, BarReport};
pub use window::{truncated_cohomology_dims, WindowRow, WindowTable};

use crate::cyclo::{factorial, Cyclotomic};
use crate::error::{Error, Result};
use crate::forms::Form;
use crate::linalg::Matrix;
use crate::sympgroup::{SigmaInvariants, SympMatrix};
use crate::weyl::{Monomial, WeylElement};

/// An element of `Hom(Λ^k V, W)`.
pub type KoszulCochain = Form<WeylElement>;

/// Which block of the splitting a homotopy acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    /// `Λ_1`/`W_1`-part without the top class.
    H1,
    /// Everything with a nontrivial `Λ_2` or `W_2` factor.
    H2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// The eigenvalue data of `σ` in its diagonal Darboux basis.
#[derive(Clone, Debug, PartialEq)]
pub struct KoszulContext {
    n: usize,
    k: usize,
    alphas: Vec<Cyclotomic>,
}

/// The three components of a cochain under `K = Λ_1^{top} ⊕ H_1 ⊕ H_2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Split {
    /// Coefficient of `ω_σ`; zero unless the degree is `2k_σ`.
    pub top: Cyclotomic,
    pub h1: KoszulCochain,
    pub h2: KoszulCochain,
}

/// `c = s·ω_σ + Δ′(b)`, re-verified on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractionCertificate {
    pub degree: usize,
    /// `None` when the degree differs from `2k_σ`.
    pub s: Option<Cyclotomic>,
    /// `None` in degree zero.
    pub primitive: Option<KoszulCochain>,
    pub verified: bool,
}

fn weyl_pow_pair(n: usize, i: usize, a: u32, b: u32) -> Monomial {
    let mut e = vec![0; 2 * n];
    e[2 * i] = a;
    e[2 * i + 1] = b;
    Monomial(e)
}

impl KoszulContext {
    /// Context with `k_σ` read off as the number of leading eigenvalues different from 1.
    pub fn new(alphas: Vec<Cyclotomic>) -> Result<Self> {
        let k = alphas.iter().take_while(|a| !a.is_one()).count();
        if alphas[k..].iter().any(|a| !a.is_one()) {
            return Err(Error::BasisMismatch("eigenvalues different from 1 must come first".into()));
        }
        Ok(KoszulContext { n: alphas.len(), k, alphas })
    }

    /// Context with an explicitly declared `k_σ`; [`KoszulContext::xi`] rejects
    /// eigenvalues equal to 1 inside the moving block.
    pub fn with_k(alphas: Vec<Cyclotomic>, k: usize) -> Self {
        assert!(k <= alphas.len());
        KoszulContext { n: alphas.len(), k, alphas }
    }

    pub fn from_invariants(inv: &SigmaInvariants) -> Self {
        KoszulContext { n: inv.n(), k: inv.k(), alphas: inv.alphas().to_vec() }
    }

    pub fn identity(n: usize) -> Self {
        KoszulContext { n, k: 0, alphas: vec![Cyclotomic::one(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `k_σ`.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alphas(&self) -> &[Cyclotomic] {
        &self.alphas
    }

    fn dim(&self) -> usize {
        2 * self.n
    }

    fn check(&self, c: &KoszulCochain) -> Result<()> {
        if c.dim() != self.dim() {
            return Err(Error::BasisMismatch(format!("cochain on {} axes, context has {}", c.dim(), self.dim())));
        }
        if let Some((_, v)) = c.terms().find(|(_, v)| v.n() != self.n) {
            return Err(Error::BasisMismatch(format!("value with {} pairs, context has {}", v.n(), self.n)));
        }
        Ok(())
    }

    /// `ω_σ = Z*_1 ∧ … ∧ Z*_{2k_σ}` with coefficient 1.
    pub fn omega_sigma(&self) -> KoszulCochain {
        let mut f = KoszulCochain::zero(self.dim(), 2 * self.k);
        let idx: Vec<usize> = (0..2 * self.k).collect();
        f.add_at(&idx, &WeylElement::one(self.n));
        f
    }

    /// Zero cochain of the given degree.
    pub fn zero(&self, degree: usize) -> KoszulCochain {
        KoszulCochain::zero(self.dim(), degree)
    }

    fn apply_wedge(&self, c: &KoszulCochain, op: impl Fn(usize, &WeylElement) -> WeylElement) -> KoszulCochain {
        let mut out = KoszulCochain::zero(self.dim(), c.degree() + 1);
        if c.degree() == self.dim() {
            return out;
        }
        for (idx, a) in c.terms() {
            for t in 0..self.dim() {
                if idx.contains(&t) {
                    continue;
                }
                let v = op(t, a);
                if v.is_zero() {
                    continue;
                }
                let mut key = Vec::with_capacity(idx.len() + 1);
                key.push(t);
                key.extend_from_slice(idx);
                out.add_at(&key, &v);
            }
        }
        out
    }

    fn apply_contraction(&self, c: &KoszulCochain, axes: std::ops::Range<usize>, op: impl Fn(usize, &WeylElement) -> WeylElement) -> KoszulCochain {
        if c.degree() == 0 {
            return KoszulCochain::zero(self.dim(), 0);
        }
        let mut out = KoszulCochain::zero(self.dim(), c.degree() - 1);
        for (idx, a) in c.terms() {
            for (pos, &t) in idx.iter().enumerate() {
                if !axes.contains(&t) {
                    continue;
                }
                let mut v = op(t, a);
                if pos % 2 == 1 {
                    v = v.neg();
                }
                let mut key = idx.clone();
                key.remove(pos);
                out.add_at(&key, &v);
            }
        }
        out
    }

    /// `T_t` of the twisted differential.
    fn t_operator(&self, t: usize, a: &WeylElement) -> WeylElement {
        let i = t / 2;
        let alpha = &self.alphas[i];
        let half = Cyclotomic::ratio(1, 2);
        let one = Cyclotomic::one();
        if t.is_multiple_of(2) {
            let m = a.mul_variable(t).scale(&(&one - alpha));
            let d = a.partial(t + 1).unwrap().scale(&(&half * &(&one + alpha)));
            m.add(&d)
        } else {
            let ainv = alpha.inverse().expect("root of unity");
            let m = a.mul_variable(t).scale(&(&one - &ainv));
            let d = a.partial(t - 1).unwrap().scale(&(&half * &(&one + &ainv)));
            m.sub(&d)
        }
    }

    /// `Δ_σ = Σ_t T_t ⊗ μ_t`.
    pub fn delta_sigma(&self, c: &KoszulCochain) -> Result<KoszulCochain> {
        self.check(c)?;
        Ok(self.apply_wedge(c, |t, a| self.t_operator(t, a)))
    }

    /// `Δ′ = Σ_{t<2k} m_{Z_t} ⊗ μ_t + Σ_{t≥2k} ∂_{Z_t} ⊗ μ_t`.
    pub fn delta_prime(&self, c: &KoszulCochain) -> Result<KoszulCochain> {
        self.check(c)?;
        let split = 2 * self.k;
        Ok(self.apply_wedge(c, |t, a| if t < split { a.mul_variable(t) } else { a.partial(t).unwrap() }))
    }

    fn betas(&self) -> Result<Vec<Cyclotomic>> {
        (0..self.k)
            .map(|i| {
                let a = &self.alphas[i];
                if a.is_one() {
                    return Err(Error::DegenerateAlpha(i + 1));
                }
                let one = Cyclotomic::one();
                Ok(&(&one + a) * &(&one - a).inverse()?)
            })
            .collect()
    }

    /// `θ^{±1} = exp(∓½ Σ_{i≤k} β_i ∂_{P_i}∂_{Q_i})`.
    fn theta(&self, a: &WeylElement, betas: &[Cyclotomic], sign: i64) -> WeylElement {
        let mut out = a.clone();
        for (i, beta) in betas.iter().enumerate() {
            let c = &Cyclotomic::ratio(-sign, 2) * beta;
            let mut next = WeylElement::zero(self.n);
            for (m, coeff) in out.terms() {
                let (pa, qb) = (m.0[2 * i], m.0[2 * i + 1]);
                let mut term_coeff = coeff.clone();
                for r in 0..=pa.min(qb) {
                    let mut e = m.clone();
                    e.0[2 * i] = pa - r;
                    e.0[2 * i + 1] = qb - r;
                    next.add_term(e, &term_coeff);
                    // next coefficient: c^{r+1}/(r+1)! · (pa)_{r+1} (qb)_{r+1}
                    let f = Cyclotomic::from_integer(((pa - r) * (qb - r)) as i64);
                    term_coeff = &(&(&term_coeff * &c) * &f) * &Cyclotomic::ratio(1, (r + 1) as i64);
                }
            }
            out = next;
        }
        out
    }

    /// Matrix of `A` (or `A⁻¹`) on the Darboux variables, columns are images.
    fn a_matrix(&self, dir: Direction) -> Result<Matrix> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        let one = Cyclotomic::one();
        for i in 0..self.n {
            let (p, q) = (2 * i, 2 * i + 1);
            if i < self.k {
                let a = &self.alphas[i];
                if a.is_one() {
                    return Err(Error::DegenerateAlpha(i + 1));
                }
                let sp = &one - a;
                let sq = &one - &a.inverse()?;
                match dir {
                    Direction::Forward => {
                        m.set(p, p, sp.inverse()?);
                        m.set(q, q, sq.inverse()?);
                    }
                    Direction::Inverse => {
                        m.set(p, p, sp);
                        m.set(q, q, sq);
                    }
                }
            } else {
                // A(P) = -Q, A(Q) = P
                let s = match dir {
                    Direction::Forward => Cyclotomic::one(),
                    Direction::Inverse => Cyclotomic::from_integer(-1),
                };
                m.set(q, p, -&s);
                m.set(p, q, s);
            }
        }
        Ok(m)
    }

    /// `ξ = A∘θ` on a single polynomial, or its inverse `θ⁻¹∘A⁻¹`.
    pub fn xi_weyl(&self, a: &WeylElement, dir: Direction) -> Result<WeylElement> {
        let betas = self.betas()?;
        let m = self.a_matrix(dir)?;
        Ok(match dir {
            Direction::Forward => self.theta(a, &betas, 1).substitute_linear(&m),
            Direction::Inverse => self.theta(&a.substitute_linear(&m), &betas, -1),
        })
    }

    /// `ξ ⊗ Id` (or its inverse) on a cochain.
    pub fn xi(&self, c: &KoszulCochain, dir: Direction) -> Result<KoszulCochain> {
        self.check(c)?;
        self.betas()?;
        let mut out = KoszulCochain::zero(self.dim(), c.degree());
        for (idx, a) in c.terms() {
            out.add_at(idx, &self.xi_weyl(a, dir)?);
        }
        Ok(out)
    }

    /// Bookkeeping `(w1, w2, l1, l2)` of a term.
    fn bidegree(&self, idx: &[usize], m: &Monomial) -> (u32, u32, usize, usize) {
        let split = 2 * self.k;
        let w1: u32 = m.0[..split].iter().sum();
        let w2: u32 = m.0[split..].iter().sum();
        let l1 = idx.iter().filter(|&&t| t < split).count();
        (w1, w2, l1, idx.len() - l1)
    }

    /// Decomposition `c = top·ω_σ + c_1 + c_2`.
    pub fn split(&self, c: &KoszulCochain) -> Result<Split> {
        self.check(c)?;
        let mut top = Cyclotomic::zero();
        let mut h1 = KoszulCochain::zero(self.dim(), c.degree());
        let mut h2 = KoszulCochain::zero(self.dim(), c.degree());
        for (idx, a) in c.terms() {
            for (m, coeff) in a.terms() {
                let (w1, w2, l1, l2) = self.bidegree(idx, m);
                let term = WeylElement::monomial(self.n, m.clone(), coeff.clone());
                if w2 > 0 || l2 > 0 {
                    h2.add_at(idx, &term);
                } else if l1 == 2 * self.k && w1 == 0 {
                    top += coeff;
                } else {
                    h1.add_at(idx, &term);
                }
            }
        }
        Ok(Split { top, h1, h2 })
    }

    fn in_part(&self, part: Part, c: &KoszulCochain) -> Result<bool> {
        let s = self.split(c)?;
        Ok(match part {
            Part::H1 => s.top.is_zero() && s.h2.is_zero(),
            Part::H2 => s.top.is_zero() && s.h1.is_zero(),
        })
    }

    /// `h_1 = Σ_{t<2k} ∂_{Z_t} ⊗ i_{Z_t}` or `h_2 = Σ_{t≥2k} m_{Z_t} ⊗ i_{Z_t}`.
    pub fn homotopy_step(&self, part: Part, c: &KoszulCochain) -> Result<KoszulCochain> {
        if !self.in_part(part, c)? {
            return Err(Error::WrongSummand);
        }
        Ok(self.homotopy_raw(part, c))
    }

    fn homotopy_raw(&self, part: Part, c: &KoszulCochain) -> KoszulCochain {
        let split = 2 * self.k;
        match part {
            Part::H1 => self.apply_contraction(c, 0..split, |t, a| a.partial(t).unwrap()),
            Part::H2 => self.apply_contraction(c, split..self.dim(), |t, a| a.mul_variable(t)),
        }
    }

    /// Eigenvalue of the counting operator `τ` on a term: `w_2 + l_2` on `H_2`,
    /// `w_1 + 2k_σ - l_1` on `H_1`.
    fn count(&self, part: Part, idx: &[usize], m: &Monomial) -> i64 {
        let (w1, w2, l1, l2) = self.bidegree(idx, m);
        match part {
            Part::H1 => w1 as i64 + 2 * self.k as i64 - l1 as i64,
            Part::H2 => w2 as i64 + l2 as i64,
        }
    }

    /// `R_2 + 𝓡_2` on `H_2`, or `R_1 + 2k_σ·Id − 𝓡_1` on `H_1`.
    pub fn counting_operator(&self, part: Part, c: &KoszulCochain) -> Result<KoszulCochain> {
        self.scale_by_count(part, c, false)
    }

    fn scale_by_count(&self, part: Part, c: &KoszulCochain, invert: bool) -> Result<KoszulCochain> {
        self.check(c)?;
        let mut out = KoszulCochain::zero(self.dim(), c.degree());
        for (idx, a) in c.terms() {
            for (m, coeff) in a.terms() {
                let e = self.count(part, idx, m);
                let f = if invert {
                    if e == 0 {
                        return Err(Error::WrongSummand);
                    }
                    Cyclotomic::ratio(1, e)
                } else {
                    Cyclotomic::from_integer(e)
                };
                out.add_at(idx, &WeylElement::monomial(self.n, m.clone(), coeff * &f));
            }
        }
        Ok(out)
    }

    /// Certificate `c = s·ω_σ + Δ′(b)` for a `Δ′`-cocycle.
    pub fn contract(&self, c: &KoszulCochain) -> Result<ContractionCertificate> {
        self.check(c)?;
        if !self.delta_prime(c)?.is_zero() {
            return Err(Error::NotACocycle);
        }
        let degree = c.degree();
        let parts = self.split(c)?;
        let primitive = if degree == 0 {
            None
        } else {
            let b1 = self.homotopy_raw(Part::H1, &self.scale_by_count(Part::H1, &parts.h1, true)?);
            let b2 = self.homotopy_raw(Part::H2, &self.scale_by_count(Part::H2, &parts.h2, true)?);
            Some(b1.add(&b2))
        };
        let s = (degree == 2 * self.k).then(|| parts.top.clone());
        let mut rebuilt = match &primitive {
            Some(b) => self.delta_prime(b)?,
            None => KoszulCochain::zero(self.dim(), 0),
        };
        if let Some(s) = &s {
            rebuilt = rebuilt.add(&self.omega_sigma().scale(s));
        }
        let verified = &rebuilt == c;
        assert!(verified, "contraction certificate failed to re-verify");
        Ok(ContractionCertificate { degree, s, primitive, verified })
    }

    /// Re-checks a certificate against its cocycle.
    pub fn verify_certificate(&self, c: &KoszulCochain, cert: &ContractionCertificate) -> Result<bool> {
        let mut rebuilt = match &cert.primitive {
            Some(b) => self.delta_prime(b)?,
            None => KoszulCochain::zero(self.dim(), c.degree()),
        };
        if let Some(s) = &cert.s {
            rebuilt = rebuilt.add(&self.omega_sigma().scale(s));
        }
        Ok(&rebuilt == c)
    }

    /// True iff the top value of a `2k_σ`-cocycle has nonzero constant term,
    /// which rules out `c` being a `Δ′`-coboundary.
    pub fn noncoboundary_witness(&self, c: &KoszulCochain) -> Result<bool> {
        self.check(c)?;
        if c.degree() != 2 * self.k {
            return Err(Error::BasisMismatch(format!("witness needs degree {}, got {}", 2 * self.k, c.degree())));
        }
        if !self.delta_prime(c)?.is_zero() {
            return Err(Error::NotACocycle);
        }
        let idx: Vec<usize> = (0..2 * self.k).collect();
        Ok(c.get(&idx).map(|a| !a.constant_term().is_zero()).unwrap_or(false))
    }

    /// `(ξ⊗Id)∘Δ_σ∘(ξ⊗Id)⁻¹`, which equals `Δ′`.
    pub fn conjugated_delta_sigma(&self, c: &KoszulCochain) -> Result<KoszulCochain> {
        let pulled = self.xi(c, Direction::Inverse)?;
        self.xi(&self.delta_sigma(&pulled)?, Direction::Forward)
    }

    /// `ξ` applied to a monomial `P^a Q^b` of one pair, for tests and examples.
    pub fn xi_on_pair_monomial(&self, i: usize, a: u32, b: u32) -> Result<WeylElement> {
        self.xi_weyl(&WeylElement::monomial(self.n, weyl_pow_pair(self.n, i, a, b), Cyclotomic::one()), Direction::Forward)
    }
}

/// `π_s` on a cochain written in the Darboux basis of `inv`, for `s` acting on
/// canonical coordinates.
pub fn transport_cochain(inv: &SigmaInvariants, s: &SympMatrix, c: &KoszulCochain) -> Result<KoszulCochain> {
    let sd = inv.to_darboux_matrix(s.matrix());
    let sd_inv = sd.inverse()?;
    Ok(c.pullback(&sd_inv).map_values(|a| a.substitute_linear(&sd)))
}

/// `1/k!` as a scalar.
pub fn inverse_factorial(k: usize) -> Cyclotomic {
    Cyclotomic::from_rational(factorial(k as u32).recip())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::catalog;
    use crate::forms::index_sets;
    use crate::sympgroup::sigma_invariants;
    use crate::weyl::tests::random_poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_cochain(rng: &mut impl Rng, n: usize, degree: usize, max_deg: u32) -> KoszulCochain {
        let mut c = KoszulCochain::zero(2 * n, degree);
        let sets = index_sets(2 * n, degree);
        for _ in 0..2 {
            let idx = &sets[rng.gen_range(0..sets.len())];
            c.add_at(idx, &random_poly(rng, n, max_deg, 3));
        }
        c
    }

    pub(crate) fn catalog_contexts() -> Vec<(String, KoszulContext)> {
        let mut out = Vec::new();
        for name in ["Z2_sp2", "Z3_sp2", "Z4_sp2", "Z6_sp2", "Q8_sp2", "Z2_sp4", "Z2xZ2_sp4", "Z2_sp2*Z3_sp2"] {
            let g = catalog::group(name).unwrap();
            for (i, el) in g.elements().iter().enumerate() {
                let inv = sigma_invariants(el).unwrap();
                out.push((format!("{name}[{i}]"), KoszulContext::from_invariants(&inv)));
            }
        }
        out
    }

    fn minus_id() -> KoszulContext {
        KoszulContext::new(vec![Cyclotomic::from_integer(-1)]).unwrap()
    }

    #[test]
    fn delta_sigma_examples() {
        let ctx = minus_id();
        let mut one = KoszulCochain::zero(2, 0);
        one.add_at(&[], &WeylElement::one(1));
        let d = ctx.delta_sigma(&one).unwrap();
        let mut expect = KoszulCochain::zero(2, 1);
        expect.add_at(&[0], &WeylElement::p(1, 0).scale(&Cyclotomic::from_integer(2)));
        expect.add_at(&[1], &WeylElement::q(1, 0).scale(&Cyclotomic::from_integer(2)));
        assert_eq!(d, expect);

        // σ = Id: Δ on degree 0 is Σ [Z_t, a] ⊗ Z*_t with the Moyal bracket
        let id = KoszulContext::identity(2);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_poly(&mut rng, 2, 4, 5);
        let mut c = KoszulCochain::zero(4, 0);
        c.add_at(&[], &a);
        let mut expect = KoszulCochain::zero(4, 1);
        for t in 0..4 {
            expect.add_at(&[t], &WeylElement::variable(2, t).moyal_commutator(&a).unwrap());
        }
        assert_eq!(id.delta_sigma(&c).unwrap(), expect);
        assert!(matches!(ctx.delta_sigma(&KoszulCochain::zero(4, 0)), Err(Error::BasisMismatch(_))));
    }

    /// `T_t` must agree with `a ↦ Z_t ∗ a - a ∗ σ(Z_t)` computed with the Moyal product.
    #[test]
    fn t_operators_are_twisted_commutators() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (name, ctx) in catalog_contexts() {
            let n = ctx.n();
            let a = random_poly(&mut rng, n, 4, 4);
            for t in 0..2 * n {
                let alpha = &ctx.alphas()[t / 2];
                let eig = if t % 2 == 0 { alpha.clone() } else { alpha.inverse().unwrap() };
                let z = WeylElement::variable(n, t);
                let expect = z.moyal_mul(&a).unwrap().sub(&a.moyal_mul(&z.scale(&eig)).unwrap());
                assert_eq!(ctx.t_operator(t, &a), expect, "{name} axis {t}");
            }
        }
    }

    #[test]
    fn xi_examples() {
        let ctx = minus_id();
        let mut c = KoszulCochain::zero(2, 1);
        c.add_at(&[0], &WeylElement::constant(1, Cyclotomic::from_integer(3)));
        assert_eq!(ctx.xi(&c, Direction::Forward).unwrap(), c);
        let p = WeylElement::p(1, 0);
        assert_eq!(ctx.xi_weyl(&p, Direction::Forward).unwrap(), p.scale(&Cyclotomic::ratio(1, 2)));
        let pq = p.abelian_mul(&WeylElement::q(1, 0)).unwrap();
        assert_eq!(ctx.xi_weyl(&pq, Direction::Forward).unwrap(), pq.scale(&Cyclotomic::ratio(1, 4)));
        let bad = KoszulContext::with_k(vec![Cyclotomic::one()], 1);
        assert_eq!(bad.xi(&c, Direction::Forward), Err(Error::DegenerateAlpha(1)));
    }

    #[test]
    fn delta_prime_examples() {
        for (_, ctx) in catalog_contexts() {
            assert!(ctx.delta_prime(&ctx.omega_sigma()).unwrap().is_zero());
            let mut one = ctx.zero(0);
            one.add_at(&[], &WeylElement::one(ctx.n()));
            let mut expect = ctx.zero(1);
            for t in 0..2 * ctx.k() {
                expect.add_at(&[t], &WeylElement::variable(ctx.n(), t));
            }
            assert_eq!(ctx.delta_prime(&one).unwrap(), expect);
        }
    }

    #[test]
    fn split_examples() {
        let g = catalog::group("Z2_sp4").unwrap();
        let ctx = KoszulContext::from_invariants(&sigma_invariants(g.element(1)).unwrap());
        let om = ctx.omega_sigma();
        let s = ctx.split(&om).unwrap();
        assert_eq!((s.top, s.h1.is_zero(), s.h2.is_zero()), (Cyclotomic::one(), true, true));
        let p1om = om.map_values(|a| a.mul_variable(0));
        let s = ctx.split(&p1om).unwrap();
        assert!(s.top.is_zero() && s.h2.is_zero());
        assert_eq!(s.h1, p1om);

        let ctx = KoszulContext::new(vec![Cyclotomic::from_integer(-1), Cyclotomic::one()]).unwrap();
        let mut c = ctx.zero(3);
        c.add_at(&[0, 1, 2], &WeylElement::p(2, 0));
        let s = ctx.split(&c).unwrap();
        assert!(s.top.is_zero() && s.h1.is_zero());
        assert_eq!(s.h2, c);
        assert_eq!(ctx.homotopy_step(Part::H1, &c), Err(Error::WrongSummand));
    }

    #[test]
    fn contraction_examples() {
        let ctx = minus_id();
        let cert = ctx.contract(&ctx.omega_sigma()).unwrap();
        assert_eq!(cert.s, Some(Cyclotomic::one()));
        assert!(cert.primitive.unwrap().is_zero());
        assert!(ctx.noncoboundary_witness(&ctx.omega_sigma()).unwrap());

        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (name, ctx) in catalog_contexts() {
            let n = ctx.n();
            for degree in 1..=2 * n {
                let b0 = random_cochain(&mut rng, n, degree - 1, 4);
                let c = ctx.delta_prime(&b0).unwrap();
                let cert = ctx.contract(&c).unwrap();
                assert!(cert.verified);
                assert!(ctx.verify_certificate(&c, &cert).unwrap());
                if degree == 2 * ctx.k() {
                    assert_eq!(cert.s, Some(Cyclotomic::zero()), "{name}");
                    assert!(!ctx.noncoboundary_witness(&c).unwrap());
                    let shifted = c.add(&ctx.omega_sigma());
                    assert!(ctx.noncoboundary_witness(&shifted).unwrap());
                    assert_eq!(ctx.contract(&shifted).unwrap().s, Some(Cyclotomic::one()));
                } else {
                    assert_eq!(cert.s, None);
                }
            }
        }
        let mut not_closed = ctx.zero(0);
        not_closed.add_at(&[], &WeylElement::p(1, 0));
        assert_eq!(minus_id().contract(&not_closed), Err(Error::NotACocycle));
    }

    #[test]
    fn centralizer_equivariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for name in ["Q8_sp2", "Z4_sp2", "Z2xZ2_sp4", "Z2_sp4"] {
            let g = catalog::group(name).unwrap();
            for class in g.classes() {
                let sigma = class.representative;
                let inv = sigma_invariants(g.element(sigma)).unwrap();
                let ctx = KoszulContext::from_invariants(&inv);
                for &s in &class.centralizer {
                    let c = random_cochain(&mut rng, g.n(), 1, 3);
                    let lhs = transport_cochain(&inv, g.element(s), &ctx.delta_sigma(&c).unwrap()).unwrap();
                    let rhs = ctx.delta_sigma(&transport_cochain(&inv, g.element(s), &c).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "{name} σ={sigma} s={s}");
                    let om = transport_cochain(&inv, g.element(s), &ctx.omega_sigma()).unwrap();
                    assert_eq!(om, ctx.omega_sigma(), "{name} σ={sigma} s={s}");
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::{any, prop_assert, prop_assert_eq, proptest, ProptestConfig};

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(12))]
            #[test]
            fn differentials_square_to_zero(seed in any::<u64>()) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for (_, ctx) in catalog_contexts() {
                    let degree = rng.gen_range(0..2 * ctx.n());
                    let c = random_cochain(&mut rng, ctx.n(), degree, 4);
                    prop_assert!(ctx.delta_sigma(&ctx.delta_sigma(&c).unwrap()).unwrap().is_zero());
                    prop_assert!(ctx.delta_prime(&ctx.delta_prime(&c).unwrap()).unwrap().is_zero());
                }
            }

            #[test]
            fn conjugation_identity(seed in any::<u64>()) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for (name, ctx) in catalog_contexts() {
                    let degree = rng.gen_range(0..2 * ctx.n());
                    let c = random_cochain(&mut rng, ctx.n(), degree, 4);
                    prop_assert_eq!(ctx.conjugated_delta_sigma(&c).unwrap(), ctx.delta_prime(&c).unwrap(), "{}", name);
                }
            }

            #[test]
            fn homotopy_identities(seed in any::<u64>()) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for (_, ctx) in catalog_contexts() {
                    let degree = rng.gen_range(0..=2 * ctx.n());
                    let c = random_cochain(&mut rng, ctx.n(), degree, 4);
                    let parts = ctx.split(&c).unwrap();
                    let mut whole = parts.h1.add(&parts.h2);
                    if degree == 2 * ctx.k() {
                        whole = whole.add(&ctx.omega_sigma().scale(&parts.top));
                    }
                    prop_assert_eq!(whole, c.clone());
                    for (part, x) in [(Part::H1, &parts.h1), (Part::H2, &parts.h2)] {
                        let hd = ctx.homotopy_step(part, &ctx.delta_prime(x).unwrap()).unwrap();
                        let dh = if degree == 0 { ctx.zero(0) } else { ctx.delta_prime(&ctx.homotopy_step(part, x).unwrap()).unwrap() };
                        let lhs = hd.add(&dh);
                        prop_assert_eq!(lhs, ctx.counting_operator(part, x).unwrap());
                    }
                }
            }

            #[test]
            fn xi_round_trip(seed in any::<u64>()) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for (_, ctx) in catalog_contexts() {
                    let c = random_cochain(&mut rng, ctx.n(), 1, 5);
                    let there = ctx.xi(&c, Direction::Forward).unwrap();
                    prop_assert_eq!(ctx.xi(&there, Direction::Inverse).unwrap(), c);
                }
            }
        }
    }
}
