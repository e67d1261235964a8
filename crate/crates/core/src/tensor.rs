//! The tensor power `V^{⊗n}` of the vector representation of `U_q(sl_k)`.
//!
//! Basis tensors `e_I` are indexed by sequences `I ∈ {1..k}^n`. Two
//! comultiplications are supported:
//!
//! * [`ComultChoice::Standard`]: `ΔE = E⊗1 + K⊗E`, `ΔF = F⊗K^-1 + 1⊗F`;
//! * [`ComultChoice::Barred`]: `ΔE = E⊗1 + K^-1⊗E`, `ΔF = F⊗K + 1⊗F`.
//!
//! The braiding is used in balanced form, with the global fractional-power
//! scalar removed so that all entries are integer Laurent polynomials:
//!
//! ```text
//! STANDARD  e_a⊗e_b ↦ e_b⊗e_a + (v - v^-1) e_a⊗e_b   (a < b)
//!                     e_b⊗e_a                         (a > b)
//!                     v e_a⊗e_a                       (a = b)
//! ```
//!
//! and `v - v^-1`, `v` replaced by `v^-1 - v`, `v^-1` in the barred case.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::RwLock;

use crate::combinatorics::{self, act, ParabolicContext, SignedSequence, Weight};
use crate::error::{Error, Result};
use crate::hecke::{HeckeModule, HeckeVector, UParam};
use crate::laurent::{LaurentPoly, RationalFunction};

/// Largest weight subspace any operation here will touch.
pub const MAX_WEIGHT_SPACE: u128 = 100_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ComultChoice {
    Standard,
    Barred,
}

impl ComultChoice {
    /// The eigenvalue of `T_i` on `e_a⊗e_a`, and the Hecke module it matches.
    pub fn u(self) -> UParam {
        match self {
            ComultChoice::Standard => UParam::MinusOne,
            ComultChoice::Barred => UParam::VMinus2,
        }
    }

    fn sign(self) -> i32 {
        match self {
            ComultChoice::Standard => 1,
            ComultChoice::Barred => -1,
        }
    }
}

/// A Chevalley generator of `U_q(sl_k)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Generator {
    E(usize),
    F(usize),
    K(usize),
}

impl Generator {
    fn index(self) -> usize {
        match self {
            Generator::E(i) | Generator::F(i) | Generator::K(i) => i,
        }
    }
}

/// An element `Σ c_I e_I` of `V^{⊗n}` with rational-function coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorVector {
    k: usize,
    n: usize,
    coeffs: BTreeMap<SignedSequence, RationalFunction>,
}

type LVec = BTreeMap<SignedSequence, LaurentPoly>;

fn ladd(acc: &mut LVec, s: SignedSequence, c: LaurentPoly) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(s.clone()).or_default();
    *slot += c;
    if slot.is_zero() {
        acc.remove(&s);
    }
}

impl TensorVector {
    pub fn zero(k: usize, n: usize) -> Self {
        Self { k, n, coeffs: BTreeMap::new() }
    }

    /// The basis tensor `e_I`.
    pub fn basis(k: usize, seq: &SignedSequence) -> Result<Self> {
        let seq = SignedSequence::with_bound(seq.entries().to_vec(), k)?;
        let n = seq.len();
        Ok(Self { k, n, coeffs: BTreeMap::from([(seq, RationalFunction::one())]) })
    }

    pub fn from_terms(
        k: usize,
        n: usize,
        terms: impl IntoIterator<Item = (SignedSequence, RationalFunction)>,
    ) -> Result<Self> {
        let mut x = Self::zero(k, n);
        for (s, c) in terms {
            if s.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: s.len() });
            }
            let s = SignedSequence::with_bound(s.entries().to_vec(), k)?;
            x.add_term(s, &c);
        }
        Ok(x)
    }

    pub fn from_laurent_terms(
        k: usize,
        n: usize,
        terms: impl IntoIterator<Item = (SignedSequence, LaurentPoly)>,
    ) -> Result<Self> {
        Self::from_terms(k, n, terms.into_iter().map(|(s, c)| (s, RationalFunction::from_laurent(c))))
    }

    fn from_lvec(k: usize, n: usize, v: LVec) -> Self {
        Self { k, n, coeffs: v.into_iter().map(|(s, c)| (s, RationalFunction::from_laurent(c))).collect() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, seq: &SignedSequence) -> RationalFunction {
        self.coeffs.get(seq).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SignedSequence, &RationalFunction)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when every coefficient is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.coeffs.values().all(RationalFunction::is_laurent)
    }

    /// The coefficients as Laurent polynomials, or a `Denominator` error.
    pub fn laurent_terms(&self) -> Result<Vec<(SignedSequence, LaurentPoly)>> {
        self.coeffs
            .iter()
            .map(|(s, c)| {
                c.to_laurent().map(|p| (s.clone(), p)).ok_or_else(|| Error::Denominator(format!("{c} at {s}")))
            })
            .collect()
    }

    /// The common weight of the support, if any.
    pub fn weight(&self) -> Option<Weight> {
        let mut ws = self.coeffs.keys().map(|s| s.weight(self.k));
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }

    fn add_term(&mut self, s: SignedSequence, c: &RationalFunction) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(s.clone()).or_insert_with(RationalFunction::zero);
        *slot = &*slot + c;
        if slot.is_zero() {
            self.coeffs.remove(&s);
        }
    }

    fn check_shape(&self, other: &TensorVector) -> Result<()> {
        if self.k != other.k || self.n != other.n {
            return Err(Error::ContextMismatch(format!(
                "V^{}, k = {} against V^{}, k = {}",
                self.n, self.k, other.n, other.k
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorVector) -> Result<TensorVector> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (s, c) in &other.coeffs {
            out.add_term(s.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TensorVector) -> Result<TensorVector> {
        self.add(&other.scale(&RationalFunction::from(-1)))
    }

    pub fn scale(&self, c: &RationalFunction) -> TensorVector {
        let coeffs =
            if c.is_zero() { BTreeMap::new() } else { self.coeffs.iter().map(|(s, x)| (s.clone(), x * c)).collect() };
        Self { k: self.k, n: self.n, coeffs }
    }

    pub fn scale_laurent(&self, c: &LaurentPoly) -> TensorVector {
        self.scale(&RationalFunction::from_laurent(c.clone()))
    }

    fn to_lvec(&self) -> Option<LVec> {
        self.coeffs.iter().map(|(s, c)| c.to_laurent().map(|p| (s.clone(), p))).collect()
    }
}

impl fmt::Debug for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|(s, c)| format!("({c}) e[{}]", s.render(self.k))).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn check_capacity(w: &Weight) -> Result<()> {
    let size = w.dimension();
    if size > MAX_WEIGHT_SPACE {
        return Err(Error::Capacity { size, limit: MAX_WEIGHT_SPACE });
    }
    Ok(())
}

fn check_slot(n: usize, i: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, lo: 1, hi: n.saturating_sub(1) });
    }
    Ok(())
}

/// `h_i(e_a)`: `+1` for `a = i`, `-1` for `a = i + 1`.
fn h(i: usize, a: u8) -> i32 {
    let a = a as usize;
    i32::from(a == i) - i32::from(a == i + 1)
}

/// Action of `E_i`, `F_i` or `K_i` under the chosen coproduct.
pub fn generator_action(gen: Generator, comult: ComultChoice, x: &TensorVector) -> Result<TensorVector> {
    let i = gen.index();
    if i == 0 || i >= x.k {
        return Err(Error::IndexOutOfRange { index: i, lo: 1, hi: x.k.saturating_sub(1) });
    }
    let sign = comult.sign();
    let mut out = TensorVector::zero(x.k, x.n);
    for (s, c) in &x.coeffs {
        let e = s.entries();
        let hs: Vec<i32> = e.iter().map(|&a| h(i, a)).collect();
        match gen {
            Generator::K(_) => {
                out.add_term(s.clone(), &c.mul_laurent(&LaurentPoly::v_pow(hs.iter().sum())));
            }
            Generator::E(_) => {
                let mut before = 0;
                for j in 0..e.len() {
                    if e[j] as usize == i + 1 {
                        let mut t = e.to_vec();
                        t[j] = i as u8;
                        out.add_term(SignedSequence::new(t), &c.mul_laurent(&LaurentPoly::v_pow(sign * before)));
                    }
                    before += hs[j];
                }
            }
            Generator::F(_) => {
                let mut after: i32 = hs.iter().sum();
                for j in 0..e.len() {
                    after -= hs[j];
                    if e[j] as usize == i {
                        let mut t = e.to_vec();
                        t[j] = (i + 1) as u8;
                        out.add_term(SignedSequence::new(t), &c.mul_laurent(&LaurentPoly::v_pow(-sign * after)));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The balanced braiding applied to a single basis tensor, as Laurent terms.
fn braid_terms(
    comult: ComultChoice,
    i: usize,
    s: &SignedSequence,
    inverse: bool,
) -> Vec<(SignedSequence, LaurentPoly)> {
    let e = s.entries();
    let (a, b) = (e[i - 1], e[i]);
    let sign = comult.sign();
    let swapped = || {
        let mut t = e.to_vec();
        t.swap(i - 1, i);
        SignedSequence::new(t)
    };
    // (v - v^-1) for STANDARD, (v^-1 - v) for BARRED
    let gap = LaurentPoly::from_terms([(sign, 1), (-sign, -1)]);
    let mut out = match a.cmp(&b) {
        std::cmp::Ordering::Less => vec![(swapped(), LaurentPoly::one()), (s.clone(), gap.clone())],
        std::cmp::Ordering::Greater => vec![(swapped(), LaurentPoly::one())],
        std::cmp::Ordering::Equal => vec![(s.clone(), LaurentPoly::v_pow(sign))],
    };
    if inverse {
        // B^-1 = B - gap
        out.push((s.clone(), -&gap));
    }
    out
}

fn braid_lvec(comult: ComultChoice, i: usize, x: &LVec, inverse: bool) -> LVec {
    let mut out = LVec::new();
    for (s, c) in x {
        for (t, b) in braid_terms(comult, i, s, inverse) {
            ladd(&mut out, t, c * &b);
        }
    }
    out
}

fn apply_braid(
    comult: ComultChoice,
    i: usize,
    x: &TensorVector,
    inverse: bool,
    scalar: &LaurentPoly,
) -> Result<TensorVector> {
    check_slot(x.n, i)?;
    let mut out = TensorVector::zero(x.k, x.n);
    for (s, c) in &x.coeffs {
        for (t, b) in braid_terms(comult, i, s, inverse) {
            out.add_term(t, &c.mul_laurent(&(&b * scalar)));
        }
    }
    Ok(out)
}

/// The balanced braiding `B_i` on slots `(i, i+1)`.
pub fn braiding(comult: ComultChoice, i: usize, x: &TensorVector) -> Result<TensorVector> {
    apply_braid(comult, i, x, false, &LaurentPoly::one())
}

/// `B_i^-1`.
pub fn braiding_inverse(comult: ComultChoice, i: usize, x: &TensorVector) -> Result<TensorVector> {
    apply_braid(comult, i, x, true, &LaurentPoly::one())
}

/// `T_i = -v^-1 B_i` (STANDARD) or `T_i = v^-1 B_i` (BARRED).
pub fn hecke_on_tensor(comult: ComultChoice, i: usize, x: &TensorVector) -> Result<TensorVector> {
    let scalar = match comult {
        ComultChoice::Standard => LaurentPoly::monomial(-1, -1),
        ComultChoice::Barred => LaurentPoly::v_pow(-1),
    };
    apply_braid(comult, i, x, false, &scalar)
}

/// Number of pairs `a < b` with `I_a < I_b`, which is `l(σ)` for `σ(I^0) = I`.
pub fn coset_length(seq: &SignedSequence) -> usize {
    let e = seq.entries();
    let mut count = 0;
    for a in 0..e.len() {
        for b in a + 1..e.len() {
            if e[a] < e[b] {
                count += 1;
            }
        }
    }
    count
}

fn phi_sign(comult: ComultChoice, length: usize) -> i64 {
    match comult {
        ComultChoice::Standard if length % 2 == 1 => -1,
        _ => 1,
    }
}

/// `φ(m_σ) = (-1)^{l(σ)} e_{σ(I^0)}` (STANDARD) or `φ'(m_σ) = e_{σ(I^0)}` (BARRED).
pub fn phi(comult: ComultChoice, x: &HeckeVector) -> Result<TensorVector> {
    let ctx = x.ctx();
    let mut out = TensorVector::zero(ctx.k(), ctx.n());
    for (sigma, c) in x.terms() {
        let s = act(sigma, ctx.base())?;
        let sign = phi_sign(comult, sigma.length());
        out.add_term(s, &RationalFunction::from_laurent(c.scale(&sign.into())));
    }
    Ok(out)
}

/// Inverse of [`phi`] on the weight subspace of `ctx`.
pub fn phi_inverse(comult: ComultChoice, ctx: &ParabolicContext, x: &TensorVector) -> Result<HeckeVector> {
    if x.k != ctx.k() || x.n != ctx.n() {
        return Err(Error::ContextMismatch(format!("V^{} with k = {} against weight {}", x.n, x.k, ctx.weight())));
    }
    let mut terms = Vec::new();
    for (s, c) in &x.coeffs {
        let sigma = ctx.coset_rep_of(s)?;
        let c = c.to_laurent().ok_or_else(|| Error::Denominator(c.to_string()))?;
        let sign = phi_sign(comult, sigma.length());
        terms.push((sigma, c.scale(&sign.into())));
    }
    HeckeVector::from_terms(Arc::new(ctx.clone()), terms)
}

fn context_of(k: usize, seq: &SignedSequence) -> Result<ParabolicContext> {
    let w = seq.weight(k);
    check_capacity(&w)?;
    Ok(ParabolicContext::new(w))
}

/// `ψ(e_I)` (STANDARD) or `ψ'(e_I)` (BARRED) by transport of the bar
/// involution of the matching Hecke module.
fn psi_basis_transport(comult: ComultChoice, k: usize, seq: &SignedSequence) -> Result<LVec> {
    let ctx = context_of(k, seq)?;
    let module = HeckeModule::shared(comult.u(), &ctx);
    let sigma = ctx.coset_rep_of(seq)?;
    let col = module.bar_basis(&sigma)?;
    let mut out = LVec::new();
    for (tau, b) in col.terms() {
        let sign = phi_sign(comult, sigma.length() + tau.length());
        ladd(&mut out, act(tau, ctx.base())?, b.scale(&sign.into()));
    }
    Ok(out)
}

fn apply_antilinear(
    x: &TensorVector,
    mut column: impl FnMut(&SignedSequence) -> Result<Arc<LVec>>,
) -> Result<TensorVector> {
    let mut out = TensorVector::zero(x.k, x.n);
    for (s, c) in &x.coeffs {
        let cb = c.bar();
        for (t, b) in column(s)?.iter() {
            out.add_term(t.clone(), &cb.mul_laurent(b));
        }
    }
    Ok(out)
}

/// The involution `ψ` (STANDARD) or `ψ'` (BARRED), computed as
/// `φ ∘ bar ∘ φ^-1` on each weight subspace.
pub fn psi(comult: ComultChoice, x: &TensorVector) -> Result<TensorVector> {
    apply_antilinear(x, |s| psi_basis_transport(comult, x.k, s).map(Arc::new))
}

type BraidedCache = HashMap<(ComultChoice, SignedSequence), Arc<LVec>>;

static BRAIDED: Lazy<RwLock<BraidedCache>> = Lazy::new(Default::default);

/// `ψ(e_I)` from the braiding alone: `ψ` fixes the weakly decreasing
/// sequence and satisfies `ψ(B_i e_J) = B_i^-1 ψ(e_J)`.
fn psi_basis_braided(comult: ComultChoice, seq: &SignedSequence) -> Arc<LVec> {
    if let Some(c) = BRAIDED.read().get(&(comult, seq.clone())) {
        return c.clone();
    }
    let e = seq.entries();
    let col = match (1..e.len()).find(|&i| e[i - 1] < e[i]) {
        None => LVec::from([(seq.clone(), LaurentPoly::one())]),
        Some(i) => {
            // e_I = B_i e_{I'} with I' = s_i I, which has a descent at i
            let mut t = e.to_vec();
            t.swap(i - 1, i);
            let prev = psi_basis_braided(comult, &SignedSequence::new(t));
            braid_lvec(comult, i, &prev, true)
        }
    };
    let col = Arc::new(col);
    BRAIDED.write().insert((comult, seq.clone()), col.clone());
    col
}

/// The same involution as [`psi`], computed directly from the braiding
/// without reference to the Hecke module.
pub fn psi_braided(comult: ComultChoice, x: &TensorVector) -> Result<TensorVector> {
    if let Some(w) = x.weight() {
        check_capacity(&w)?;
    }
    apply_antilinear(x, |s| Ok(psi_basis_braided(comult, s)))
}

/// `b_I = (-1)^{l(σ)} φ(C_σ)` with `u = -1`, `σ(I^0) = I`.
pub fn canonical_basis(k: usize, seq: &SignedSequence) -> Result<TensorVector> {
    transported_basis(ComultChoice::Standard, k, seq)
}

/// `b^I = φ'(C_σ)` with `u = v^-2`, `σ(I^0) = I`.
pub fn dual_canonical_basis(k: usize, seq: &SignedSequence) -> Result<TensorVector> {
    transported_basis(ComultChoice::Barred, k, seq)
}

fn transported_basis(comult: ComultChoice, k: usize, seq: &SignedSequence) -> Result<TensorVector> {
    let seq = SignedSequence::with_bound(seq.entries().to_vec(), k)?;
    let ctx = context_of(k, &seq)?;
    let module = HeckeModule::shared(comult.u(), &ctx);
    let sigma = ctx.coset_rep_of(&seq)?;
    let c = module.kl_element(&sigma)?;
    let b = phi(comult, &c.vector)?;
    let sign = phi_sign(comult, sigma.length());
    Ok(b.scale(&RationalFunction::from(sign)))
}

/// `b_I` (STANDARD) or `b^I` (BARRED) as the unique fixed point of the
/// braiding-defined involution of the form `e_I + Σ c_J e_J` with
/// `c_J ∈ v^-1 Z[v^-1]`, solved directly in the tensor space.
pub fn basis_direct(comult: ComultChoice, k: usize, seq: &SignedSequence) -> Result<TensorVector> {
    let seq = SignedSequence::with_bound(seq.entries().to_vec(), k)?;
    let w = seq.weight(k);
    check_capacity(&w)?;
    let top = coset_length(&seq);
    let mut candidates: Vec<(usize, SignedSequence)> = combinatorics::sequences_of_weight(&w)
        .into_iter()
        .map(|s| (coset_length(&s), s))
        .filter(|(l, s)| *l < top || *s == seq)
        .collect();
    candidates.sort();
    let mut acc: HashMap<SignedSequence, LaurentPoly> = HashMap::new();
    let mut beta = LVec::new();
    for (_, s) in candidates.into_iter().rev() {
        let b = if s == seq { LaurentPoly::one() } else { acc.remove(&s).unwrap_or_default().split_negative()? };
        if b.is_zero() {
            continue;
        }
        let bb = b.bar();
        for (t, p) in psi_basis_braided(comult, &s).iter() {
            if *t != s {
                *acc.entry(t.clone()).or_default() += &bb * p;
            }
        }
        beta.insert(s, b);
    }
    Ok(TensorVector::from_lvec(k, seq.len(), beta))
}

/// `⟨e_I, e_J⟩ = δ_{I, w_0(J)}`, extended bilinearly.
pub fn pairing(x: &TensorVector, y: &TensorVector) -> Result<RationalFunction> {
    x.check_shape(y)?;
    let mut total = RationalFunction::zero();
    for (s, c) in &x.coeffs {
        if let Some(d) = y.coeffs.get(&s.reversed()) {
            total = &total + &(c * d);
        }
    }
    Ok(total)
}

/// Pairing of two denominator-free vectors without rational arithmetic.
pub fn pairing_laurent(x: &TensorVector, y: &TensorVector) -> Result<LaurentPoly> {
    x.check_shape(y)?;
    let (Some(a), Some(b)) = (x.to_lvec(), y.to_lvec()) else {
        return pairing(x, y)?.to_laurent().ok_or_else(|| Error::Denominator("pairing".into()));
    };
    Ok(a.iter().filter_map(|(s, c)| b.get(&s.reversed()).map(|d| c * d)).sum())
}

/// `I' ≤ I` in the order generated by moving larger letters to the left:
/// every prefix of `I'` has at least as many letters `≥ t` as that of `I`.
pub fn sequence_leq(lower: &SignedSequence, upper: &SignedSequence) -> bool {
    let (a, b) = (lower.entries(), upper.entries());
    if a.len() != b.len() {
        return false;
    }
    let k = a.iter().chain(b).copied().max().unwrap_or(0);
    (1..=k).all(|t| {
        let (mut ca, mut cb) = (0i32, 0i32);
        a.iter().zip(b).all(|(&x, &y)| {
            ca += i32::from(x >= t);
            cb += i32::from(y >= t);
            ca >= cb
        }) && ca == cb
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{i0, sequences_of_weight, weights};
    use crate::hecke::{classical_kl, t_action};
    use crate::laurent::QPolynomial;

    const BOTH: [ComultChoice; 2] = [ComultChoice::Standard, ComultChoice::Barred];

    fn seq(e: &[u8]) -> SignedSequence {
        SignedSequence::new(e.to_vec())
    }

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn tv(k: usize, terms: &[(&[u8], LaurentPoly)]) -> TensorVector {
        let n = terms[0].0.len();
        TensorVector::from_laurent_terms(k, n, terms.iter().map(|(s, c)| (seq(s), c.clone()))).unwrap()
    }

    fn e(k: usize, s: &[u8]) -> TensorVector {
        TensorVector::basis(k, &seq(s)).unwrap()
    }

    fn all_sequences(k: usize, n: usize) -> Vec<SignedSequence> {
        weights(k, n).iter().flat_map(sequences_of_weight).collect()
    }

    #[test]
    fn generator_examples() {
        let std = ComultChoice::Standard;
        assert_eq!(generator_action(Generator::E(1), std, &e(2, &[2])).unwrap(), e(2, &[1]));
        assert_eq!(
            generator_action(Generator::E(1), std, &e(2, &[2, 2])).unwrap(),
            tv(2, &[(&[1, 2], lp(&[(0, 1)])), (&[2, 1], lp(&[(-1, 1)]))])
        );
        let a = tv(2, &[(&[1, 2], lp(&[(0, 1)])), (&[2, 1], lp(&[(-1, -1)]))]);
        for g in [Generator::E(1), Generator::F(1)] {
            assert!(generator_action(g, ComultChoice::Barred, &a).unwrap().is_zero());
        }
        assert!(matches!(generator_action(Generator::E(2), std, &e(2, &[1])), Err(Error::IndexOutOfRange { .. })));
        assert_eq!(
            generator_action(Generator::K(1), std, &e(2, &[1, 1])).unwrap(),
            e(2, &[1, 1]).scale_laurent(&lp(&[(2, 1)]))
        );
    }

    #[test]
    fn generators_satisfy_sl2_relations() {
        // [E, F] = (K - K^-1) / (v - v^-1) on every basis tensor, via
        // (v - v^-1)(EF - FE) = K - K^-1
        for comult in BOTH {
            for k in 2..=3 {
                for n in 1..=4 {
                    for s in all_sequences(k, n) {
                        let x = TensorVector::basis(k, &s).unwrap();
                        for i in 1..k {
                            let act = |g: Generator, y: &TensorVector| generator_action(g, comult, y).unwrap();
                            let ef = act(Generator::E(i), &act(Generator::F(i), &x));
                            let fe = act(Generator::F(i), &act(Generator::E(i), &x));
                            let lhs = ef.sub(&fe).unwrap().scale_laurent(&lp(&[(1, 1), (-1, -1)]));
                            let kx = act(Generator::K(i), &x);
                            let m = x.weight().unwrap();
                            let hval = m.counts()[i - 1] as i32 - m.counts()[i] as i32;
                            let kinv = x.scale_laurent(&LaurentPoly::v_pow(-hval));
                            assert_eq!(lhs, kx.sub(&kinv).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn braiding_examples() {
        let std = ComultChoice::Standard;
        assert_eq!(
            braiding(std, 1, &e(2, &[1, 2])).unwrap(),
            tv(2, &[(&[2, 1], lp(&[(0, 1)])), (&[1, 2], lp(&[(1, 1), (-1, -1)]))])
        );
        assert_eq!(braiding(std, 1, &e(2, &[2, 1])).unwrap(), e(2, &[1, 2]));
        assert_eq!(braiding(std, 1, &e(2, &[1, 1])).unwrap(), e(2, &[1, 1]).scale_laurent(&lp(&[(1, 1)])));
        assert!(matches!(braiding(std, 2, &e(2, &[1, 1])), Err(Error::IndexOutOfRange { .. })));
        for comult in BOTH {
            for s in all_sequences(3, 3) {
                let x = TensorVector::basis(3, &s).unwrap();
                for i in 1..3 {
                    assert_eq!(braiding_inverse(comult, i, &braiding(comult, i, &x).unwrap()).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn hecke_on_tensor_examples() {
        assert_eq!(
            hecke_on_tensor(ComultChoice::Standard, 1, &e(2, &[1, 1])).unwrap(),
            e(2, &[1, 1]).scale_laurent(&lp(&[(0, -1)]))
        );
        assert_eq!(
            hecke_on_tensor(ComultChoice::Barred, 1, &e(2, &[1, 1])).unwrap(),
            e(2, &[1, 1]).scale_laurent(&lp(&[(-2, 1)]))
        );
    }

    /// `(T + 1)(T - v^-2) = 0`, braid relations and commutation with the
    /// generators of the matching coproduct.
    #[test]
    fn tensor_hecke_relations_and_commutation() {
        for comult in BOTH {
            for k in 2..=3 {
                for n in 2..=4 {
                    for s in all_sequences(k, n) {
                        let x = TensorVector::basis(k, &s).unwrap();
                        let t = |i: usize, y: &TensorVector| hecke_on_tensor(comult, i, y).unwrap();
                        for i in 1..n {
                            let tx = t(i, &x);
                            let q = t(i, &tx)
                                .add(&tx.scale_laurent(&lp(&[(0, 1), (-2, -1)])))
                                .unwrap()
                                .sub(&x.scale_laurent(&lp(&[(-2, 1)])))
                                .unwrap();
                            assert!(q.is_zero(), "{comult:?} {s:?} {i}");
                            if i + 1 < n {
                                assert_eq!(t(i, &t(i + 1, &tx)), t(i + 1, &t(i, &t(i + 1, &x))));
                            }
                            for j in i + 2..n {
                                assert_eq!(t(i, &t(j, &x)), t(j, &t(i, &x)));
                            }
                            for g in 1..k {
                                for gen in [Generator::E(g), Generator::F(g), Generator::K(g)] {
                                    let a = t(i, &generator_action(gen, comult, &x).unwrap());
                                    let b = generator_action(gen, comult, &tx).unwrap();
                                    assert_eq!(a, b, "{comult:?} {gen:?} T{i} on {s:?}");
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn phi_examples_and_intertwining() {
        let ctx = ParabolicContext::new(Weight::new(vec![1, 1]));
        let c = Arc::new(ctx.clone());
        let me = HeckeVector::basis(c.clone(), &"1,2".parse().unwrap()).unwrap();
        let ms = HeckeVector::basis(c.clone(), &"2,1".parse().unwrap()).unwrap();
        for comult in BOTH {
            assert_eq!(phi(comult, &me).unwrap(), e(2, &[2, 1]));
        }
        assert_eq!(phi(ComultChoice::Standard, &ms).unwrap(), e(2, &[1, 2]).scale_laurent(&lp(&[(0, -1)])));
        for k in 2..=3 {
            for n in 1..=4 {
                for w in weights(k, n) {
                    let ctx = ParabolicContext::new(w);
                    let c = Arc::new(ctx.clone());
                    for comult in BOTH {
                        for sigma in combinatorics::min_coset_reps(&ctx) {
                            let m = HeckeVector::basis(c.clone(), &sigma).unwrap();
                            let pm = phi(comult, &m).unwrap();
                            assert_eq!(phi_inverse(comult, &ctx, &pm).unwrap(), m);
                            for i in 1..n {
                                let lhs = phi(comult, &t_action(comult.u(), &ctx, i, &m).unwrap()).unwrap();
                                assert_eq!(lhs, hecke_on_tensor(comult, i, &pm).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn psi_fixes_the_base_sequence_and_squares_to_one() {
        for comult in BOTH {
            for k in 2..=3 {
                for n in 1..=4 {
                    for w in weights(k, n) {
                        let base = TensorVector::basis(k, &i0(&w)).unwrap();
                        assert_eq!(psi(comult, &base).unwrap(), base);
                        for s in sequences_of_weight(&w) {
                            let x = TensorVector::basis(k, &s).unwrap().scale_laurent(&lp(&[(2, 3), (-1, 1)]));
                            assert_eq!(psi(comult, &psi(comult, &x).unwrap()).unwrap(), x);
                        }
                    }
                }
            }
        }
        // a random mixed vector, k = 2, n = 4
        let x = tv(
            2,
            &[
                (&[1, 2, 1, 2], lp(&[(3, 1), (0, -2)])),
                (&[2, 2, 1, 1], lp(&[(-1, 5)])),
                (&[1, 1, 2, 2], lp(&[(1, 1)])),
                (&[1, 1, 1, 2], lp(&[(0, 7)])),
            ],
        );
        for comult in BOTH {
            assert_eq!(psi(comult, &psi(comult, &x).unwrap()).unwrap(), x);
        }
    }

    #[test]
    fn psi_is_lower_triangular() {
        for comult in BOTH {
            for k in 2..=3 {
                for s in all_sequences(k, 4) {
                    let p = psi(comult, &TensorVector::basis(k, &s).unwrap()).unwrap();
                    assert!(p.coeff(&s) == RationalFunction::one());
                    for (t, _) in p.terms() {
                        assert!(sequence_leq(t, &s), "{t:?} not below {s:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn psi_inverts_the_braiding() {
        for comult in BOTH {
            for k in 2..=3 {
                for n in 2..=4 {
                    for s in all_sequences(k, n) {
                        let x = TensorVector::basis(k, &s).unwrap();
                        for i in 1..n {
                            let lhs = psi(comult, &braiding(comult, i, &x).unwrap()).unwrap();
                            let rhs = braiding_inverse(comult, i, &psi(comult, &x).unwrap()).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn transport_and_braided_involutions_agree() {
        for comult in BOTH {
            for k in 2..=3 {
                for n in 1..=5 {
                    for s in all_sequences(k, n) {
                        let x = TensorVector::basis(k, &s).unwrap();
                        assert_eq!(psi(comult, &x).unwrap(), psi_braided(comult, &x).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_basis(2, &seq(&[2, 1])).unwrap(), e(2, &[2, 1]));
        assert_eq!(
            canonical_basis(2, &seq(&[1, 2])).unwrap(),
            tv(2, &[(&[1, 2], lp(&[(0, 1)])), (&[2, 1], lp(&[(-1, 1)]))])
        );
        assert_eq!(dual_canonical_basis(2, &seq(&[2, 1])).unwrap(), e(2, &[2, 1]));
        assert_eq!(
            dual_canonical_basis(2, &seq(&[1, 2])).unwrap(),
            tv(2, &[(&[1, 2], lp(&[(0, 1)])), (&[2, 1], lp(&[(-1, -1)]))])
        );
    }

    #[test]
    fn bases_are_fixed_and_unitriangular() {
        for (comult, basis) in [
            (ComultChoice::Standard, canonical_basis as fn(usize, &SignedSequence) -> Result<TensorVector>),
            (ComultChoice::Barred, dual_canonical_basis),
        ] {
            for k in 2..=3 {
                for n in 1..=5 {
                    for s in all_sequences(k, n) {
                        let b = basis(k, &s).unwrap();
                        assert!(b.is_laurent());
                        assert_eq!(psi_braided(comult, &b).unwrap(), b);
                        for (t, c) in b.laurent_terms().unwrap() {
                            if t == s {
                                assert!(c.is_one());
                            } else {
                                assert!(c.in_negative_part());
                                assert!(sequence_leq(&t, &s));
                            }
                        }
                        assert_eq!(basis_direct(comult, k, &s).unwrap(), b);
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let one = RationalFunction::one();
        assert_eq!(pairing(&e(2, &[1, 2]), &e(2, &[2, 1])).unwrap(), one);
        assert!(pairing(&e(2, &[1, 2]), &e(2, &[1, 2])).unwrap().is_zero());
        let d = dual_canonical_basis(2, &seq(&[1, 2])).unwrap();
        assert_eq!(pairing(&d, &canonical_basis(2, &seq(&[2, 1])).unwrap()).unwrap(), one);
        assert!(pairing(&d, &canonical_basis(2, &seq(&[1, 2])).unwrap()).unwrap().is_zero());
        assert!(matches!(pairing(&e(2, &[1]), &e(2, &[1, 2])), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn duality_small() {
        for k in 2..=3 {
            for n in 1..=4 {
                for w in weights(k, n) {
                    let seqs = sequences_of_weight(&w);
                    for a in &seqs {
                        let d = dual_canonical_basis(k, a).unwrap();
                        for b in &seqs {
                            let c = canonical_basis(k, b).unwrap();
                            let p = pairing_laurent(&d, &c).unwrap();
                            let expected = if *a == b.reversed() { LaurentPoly::one() } else { LaurentPoly::zero() };
                            assert_eq!(p, expected, "{a:?} {b:?}");
                        }
                    }
                }
            }
        }
    }

    /// For the zero weight with `k = n`, `b_{w(n..1)} = Σ_y v^{l(y)-l(w)} bar(P_{y,w}) e_{y(n..1)}`
    /// and the dual carries `(-v)^{l(y)-l(w)}`.
    #[test]
    fn regular_weight_matches_classical_kl() {
        for n in 2..=4 {
            let ctx = ParabolicContext::regular(n);
            for w in combinatorics::all_permutations(n) {
                let s = act(&w, ctx.base()).unwrap();
                let b = canonical_basis(n, &s).unwrap();
                let d = dual_canonical_basis(n, &s).unwrap();
                for y in combinatorics::all_permutations(n) {
                    let t = act(&y, ctx.base()).unwrap();
                    let p: QPolynomial = classical_kl(&y, &w).unwrap();
                    let pbar = p.to_laurent().bar();
                    let diff = y.length() as i32 - w.length() as i32;
                    let sign = if diff % 2 == 0 { 1 } else { -1 };
                    assert_eq!(b.coeff(&t), RationalFunction::from_laurent(pbar.shift(diff)));
                    assert_eq!(d.coeff(&t), RationalFunction::from_laurent(pbar.shift(diff).scale(&sign.into())));
                }
            }
        }
    }

    #[test]
    fn sequence_order() {
        assert!(sequence_leq(&seq(&[2, 1]), &seq(&[1, 2])));
        assert!(!sequence_leq(&seq(&[1, 2]), &seq(&[2, 1])));
        assert!(sequence_leq(&seq(&[2, 1, 2, 1]), &seq(&[1, 2, 1, 2])));
        assert!(!sequence_leq(&seq(&[1, 1]), &seq(&[1, 2])));
    }

    #[test]
    fn capacity_guard() {
        let s = SignedSequence::new([1u8, 2, 3, 4, 5, 6, 7, 8, 9].to_vec());
        assert!(matches!(canonical_basis(9, &s), Err(Error::Capacity { .. })));
    }

    #[test]
    fn coset_length_matches_permutation_length() {
        for w in weights(3, 5) {
            let ctx = ParabolicContext::new(w);
            for sigma in combinatorics::min_coset_reps(&ctx) {
                assert_eq!(coset_length(&act(&sigma, ctx.base()).unwrap()), sigma.length());
            }
        }
    }
}
