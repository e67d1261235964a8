//! Cross-verification suites: every identity relating the Hecke, tensor,
//! sl2 and grassmann routes, run exhaustively up to a size cap.
//!
//! Exponential checks are capped separately: `k = 2` checks run up to
//! `max_n`, `k = 3` checks up to `min(max_n, 5)`, and checks over the full
//! symmetric group (`k = n`) up to `min(max_n, 4)`. The Deodhar suite ranges
//! over all pairs for every parabolic subgroup and stops at `min(max_n, 5)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{
    self, act, bruhat_leq, i0, min_coset_reps, sequences_of_weight, weights, ParabolicContext, Permutation,
    SignedSequence, Weight,
};
use crate::error::{Error, Result};
use crate::grassmann;
use crate::hecke::{self, classical_kl, HeckeModule, HeckeVector, UParam};
use crate::laurent::LaurentPoly;
use crate::sl2::{self, PlusMinusWord};
use crate::tensor::{self, ComultChoice, Generator, TensorVector};

const BOTH_U: [UParam; 2] = [UParam::MinusOne, UParam::VMinus2];
const BOTH_COMULT: [ComultChoice; 2] = [ComultChoice::Standard, ComultChoice::Barred];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Hecke,
    Duality,
    Routes,
    Deodhar,
    Grassmann,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Hecke, Suite::Duality, Suite::Routes, Suite::Deodhar, Suite::Grassmann];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hecke => "hecke",
            Suite::Duality => "duality",
            Suite::Routes => "routes",
            Suite::Deodhar => "deodhar",
            Suite::Grassmann => "grassmann",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse { what: "suite", token: s.to_string() })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub max_n: usize,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }
}

/// Runs `f` on every case in parallel; `Ok(None)` is a pass, `Ok(Some(msg))`
/// or an error is a failure.
pub fn run_check<T: Sync>(
    name: impl Into<String>,
    cases: &[T],
    f: impl Fn(&T) -> Result<Option<String>> + Sync,
) -> CheckReport {
    let outcomes: Vec<Option<String>> = cases
        .par_iter()
        .map(|c| match f(c) {
            Ok(x) => x,
            Err(e) => Some(e.to_string()),
        })
        .collect();
    let failures = outcomes.iter().filter(|o| o.is_some()).count();
    CheckReport {
        name: name.into(),
        cases: cases.len(),
        failures,
        first_failure: outcomes.into_iter().flatten().next(),
    }
}

fn expect_eq<T: PartialEq + fmt::Debug>(a: &T, b: &T, what: impl FnOnce() -> String) -> Option<String> {
    (a != b).then(|| format!("{}: {a:?} != {b:?}", what()))
}

fn contexts(ks: &[usize], max_n: usize) -> Vec<ParabolicContext> {
    let mut out = Vec::new();
    for &k in ks {
        for n in 1..=max_n {
            out.extend(weights(k, n).into_iter().map(ParabolicContext::new));
        }
    }
    out
}

/// Every parabolic subgroup of `S_n`, one weight per composition of `n`.
fn compositions(n: usize) -> Vec<Weight> {
    (0..1u32 << n.saturating_sub(1))
        .map(|mask| {
            let mut parts = vec![1usize];
            for j in 0..n.saturating_sub(1) {
                if mask >> j & 1 == 1 {
                    parts.push(1);
                } else {
                    *parts.last_mut().unwrap() += 1;
                }
            }
            Weight::new(parts)
        })
        .collect()
}

fn sequences(k: usize, max_n: usize) -> Vec<(usize, SignedSequence)> {
    (1..=max_n).flat_map(|n| weights(k, n)).flat_map(|w| sequences_of_weight(&w)).map(|s| (k, s)).collect()
}

fn words(max_n: usize) -> Vec<PlusMinusWord> {
    (0..=max_n).flat_map(PlusMinusWord::all).collect()
}

/// Reduced word built by stripping the largest left descent first.
fn reduced_word_largest(w: &Permutation) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur = w.clone();
    while let Some(i) = (1..cur.n()).rev().find(|&i| cur.has_left_descent(i)) {
        out.push(i);
        cur = cur.left_mul_simple(i);
    }
    out
}

fn hecke_suite(max_n: usize) -> Vec<CheckReport> {
    let small = max_n.min(5);
    let mut ctxs = contexts(&[2, 3], small);
    ctxs.extend((1..=max_n.min(4)).map(ParabolicContext::regular));
    let cases: Vec<(UParam, ParabolicContext, Permutation)> = ctxs
        .iter()
        .flat_map(|c| {
            BOTH_U.into_iter().flat_map(move |u| min_coset_reps(c).into_iter().map(move |s| (u, c.clone(), s)))
        })
        .collect();

    let relations = run_check(format!("quadratic and braid relations, k <= 3, n <= {small}"), &cases, |(u, c, s)| {
        let m = HeckeModule::shared(*u, c);
        let x = HeckeVector::basis(m.ctx().clone(), s)?;
        let n = c.n();
        let t = |i: usize, y: &HeckeVector| m.t_action(i, y);
        for i in 1..n {
            let tx = t(i, &x)?;
            let quad = t(i, &tx)?
                .add(&tx.scale(&LaurentPoly::from_terms([(0, 1), (-2, -1)])))?
                .sub(&x.scale(&LaurentPoly::v_pow(-2)))?;
            if !quad.is_zero() {
                return Ok(Some(format!("quadratic relation fails for T{i} on m[{s}]")));
            }
            if i + 1 < n && t(i, &t(i + 1, &tx)?)? != t(i + 1, &t(i, &t(i + 1, &x)?)?)? {
                return Ok(Some(format!("braid relation fails for T{i}, T{} on m[{s}]", i + 1)));
            }
            for j in i + 2..n {
                if t(i, &t(j, &x)?)? != t(j, &tx)? {
                    return Ok(Some(format!("T{i} and T{j} do not commute on m[{s}]")));
                }
            }
        }
        Ok(None)
    });

    let standard_form = run_check("T along a reduced word of sigma gives v^-l m_sigma", &cases, |(u, c, s)| {
        let m = HeckeModule::shared(*u, c);
        let mut x = HeckeVector::basis(m.ctx().clone(), &Permutation::identity(c.n()))?;
        for &i in combinatorics::reduced_word(s).iter().rev() {
            x = m.t_action(i, &x)?;
        }
        let expected = HeckeVector::basis(m.ctx().clone(), s)?.scale(&LaurentPoly::v_pow(-(s.length() as i32)));
        Ok(expect_eq(&x, &expected, || format!("sigma = {s}")))
    });

    let bar_squared = run_check("bar is an involution", &cases, |(u, c, s)| {
        let m = HeckeModule::shared(*u, c);
        let x = HeckeVector::basis(m.ctx().clone(), s)?.scale(&LaurentPoly::from_terms([(2, 1), (-1, 3)]));
        Ok(expect_eq(&m.bar(&m.bar(&x)?)?, &x, || format!("sigma = {s}")))
    });

    let word_independence = run_check("bar(m_sigma) is independent of the reduced word", &cases, |(u, c, s)| {
        let m = HeckeModule::shared(*u, c);
        let a = m.bar_basis_along(s, &combinatorics::reduced_word(s))?;
        let b = m.bar_basis_along(s, &reduced_word_largest(s))?;
        Ok(expect_eq(&a, &b, || format!("sigma = {s}"))
            .or_else(|| expect_eq(&a, &m.bar_basis(s).ok()?, || s.to_string())))
    });

    let kl_shape = run_check("C_sigma is bar-fixed and unitriangular", &cases, |(u, c, s)| {
        let m = HeckeModule::shared(*u, c);
        let el = m.kl_element(s)?;
        if m.bar(&el.vector)? != el.vector {
            return Ok(Some(format!("C[{s}] is not bar-fixed")));
        }
        for (tau, a) in el.vector.terms() {
            let ok = if tau == s { a.is_one() } else { a.in_negative_part() && bruhat_leq(tau, s)? };
            if !ok {
                return Ok(Some(format!("coefficient {a} of m[{tau}] in C[{s}]")));
            }
            let p = m.parabolic_kl(tau, s)?;
            let d = s.length() - tau.length();
            if tau != s && p.degree().is_some_and(|deg| 2 * deg as usize + 1 > d) {
                return Ok(Some(format!("deg P[{tau},{s}] too large")));
            }
        }
        Ok(None)
    });

    vec![relations, standard_form, bar_squared, word_independence, kl_shape, length_identity_check(max_n.min(8))]
}

/// `σ ↦ σ(I0)` is a bijection from `W^J` onto the sequences of weight `m`,
/// with `l(σ) = inv(I0) - inv(σ(I0))`, for every parabolic of `S_n`.
pub fn length_identity_check(max_n: usize) -> CheckReport {
    let ws: Vec<Weight> = (1..=max_n).flat_map(compositions).collect();
    run_check(
        format!("sigma -> sigma(I0) is a bijection with l(sigma) = inv(I0) - inv(sigma I0), n <= {max_n}"),
        &ws,
        |w| {
            let c = ParabolicContext::new(w.clone());
            let top = combinatorics::inversions(c.base());
            let reps = min_coset_reps(&c);
            let mut seqs = Vec::with_capacity(reps.len());
            for s in &reps {
                let seq = act(s, c.base())?;
                if top - combinatorics::inversions(&seq) != s.length() || tensor::coset_length(&seq) != s.length() {
                    return Ok(Some(format!("length mismatch at {s} for weight {w}")));
                }
                seqs.push(seq);
            }
            seqs.sort();
            Ok(expect_eq(&seqs, &sequences_of_weight(w), || format!("weight {w}")))
        },
    )
}

/// `⟨b^I, b_J⟩ = δ_{I, w_0 J}` on every weight space with `k` letters up to `n`.
pub fn duality_check(k: usize, max_n: usize) -> CheckReport {
    let ws: Vec<Weight> = (1..=max_n).flat_map(|n| weights(k, n)).collect();
    run_check(format!("<b^I, b_J> = delta(I, rev J), k = {k}, n <= {max_n}"), &ws, |w| {
        let seqs = sequences_of_weight(w);
        let duals: Vec<TensorVector> =
            seqs.iter().map(|s| tensor::dual_canonical_basis(k, s)).collect::<Result<_>>()?;
        let canon: Vec<TensorVector> = seqs.iter().map(|s| tensor::canonical_basis(k, s)).collect::<Result<_>>()?;
        for (a, d) in seqs.iter().zip(&duals) {
            for (b, c) in seqs.iter().zip(&canon) {
                let p = tensor::pairing_laurent(d, c)?;
                let expected = if *a == b.reversed() { LaurentPoly::one() } else { LaurentPoly::zero() };
                if p != expected {
                    return Ok(Some(format!("<b^{a:?}, b_{b:?}> = {p}")));
                }
            }
        }
        Ok(None)
    })
}

fn duality_suite(max_n: usize) -> Vec<CheckReport> {
    vec![duality_check(2, max_n), duality_check(3, max_n.min(5))]
}

/// `canonical_sl2` and `dual_canonical_sl2` against the Hecke transport.
pub fn sl2_route_check(max_n: usize) -> CheckReport {
    run_check(format!("sl2 constructions equal the Hecke transport, n <= {max_n}"), &words(max_n), |w| {
        let c = sl2::canonical_sl2(w)?;
        if c != tensor::canonical_basis(2, w.as_sequence())? {
            return Ok(Some(format!("canonical basis differs at {w}")));
        }
        if sl2::dual_canonical_sl2(w) != tensor::dual_canonical_basis(2, w.as_sequence())? {
            return Ok(Some(format!("dual canonical basis differs at {w}")));
        }
        Ok(None)
    })
}

/// For the zero weight with `k = n`, the expansions of `b_w` and `b^w` in
/// terms of ordinary KL polynomials.
pub fn regular_kl_check(ns: &[usize]) -> CheckReport {
    let cases: Vec<(usize, Permutation)> =
        ns.iter().flat_map(|&n| combinatorics::all_permutations(n).into_iter().map(move |w| (n, w))).collect();
    run_check(format!("regular weight expansions through P_(y,w), n in {ns:?}"), &cases, |(n, w)| {
        let ctx = ParabolicContext::regular(*n);
        let s = act(w, ctx.base())?;
        let b = tensor::canonical_basis(*n, &s)?;
        let d = tensor::dual_canonical_basis(*n, &s)?;
        for y in combinatorics::all_permutations(*n) {
            let t = act(&y, ctx.base())?;
            let pbar = classical_kl(&y, w)?.to_laurent().bar();
            let diff = y.length() as i32 - w.length() as i32;
            let sign: i64 = if diff % 2 == 0 { 1 } else { -1 };
            let expected_b = pbar.shift(diff);
            let expected_d = expected_b.scale(&sign.into());
            if b.coeff(&t).to_laurent() != Some(expected_b) {
                return Ok(Some(format!("b[{w}] at {y}")));
            }
            if d.coeff(&t).to_laurent() != Some(expected_d) {
                return Ok(Some(format!("b^[{w}] at {y}")));
            }
        }
        Ok(None)
    })
}

/// Every parabolic KL polynomial of a maximal parabolic with `u = v^-2` is
/// zero or a power of `q`.
pub fn maximal_parabolic_check(max_n: usize) -> CheckReport {
    let ctxs: Vec<ParabolicContext> =
        (1..=max_n).flat_map(|n| (1..n).map(move |p| ParabolicContext::new(Weight::new(vec![p, n - p])))).collect();
    run_check(format!("maximal parabolic P^J (u = q) are 0 or q^e, n <= {max_n}"), &ctxs, |c| {
        let m = HeckeModule::shared(UParam::VMinus2, c);
        let reps = m.reps().to_vec();
        for s in &reps {
            for t in &reps {
                let p = m.parabolic_kl(t, s)?;
                if !p.is_zero() && p.as_power_of_q().is_none() {
                    return Ok(Some(format!("P[{t},{s}] = {p}")));
                }
            }
        }
        Ok(None)
    })
}

fn small_sequences(max_n: usize) -> Vec<(usize, SignedSequence)> {
    sequences(2, max_n).into_iter().chain(sequences(3, max_n)).collect()
}

/// `ψ` is an involution, intertwines `B_i` with `B_i^-1` and fixes `e_(I0)`.
pub fn psi_law_check(max_n: usize) -> CheckReport {
    run_check(
        format!("psi^2 = 1, psi B = B^-1 psi, base sequence fixed, k <= 3, n <= {max_n}"),
        &small_sequences(max_n),
        |(k, s)| {
            let x = TensorVector::basis(*k, s)?.scale_laurent(&LaurentPoly::from_terms([(1, 2), (-2, -1)]));
            for c in BOTH_COMULT {
                if tensor::psi(c, &tensor::psi(c, &x)?)? != x {
                    return Ok(Some(format!("psi^2 at {s:?}")));
                }
                for i in 1..s.len() {
                    let lhs = tensor::psi(c, &tensor::braiding(c, i, &x)?)?;
                    let rhs = tensor::braiding_inverse(c, i, &tensor::psi(c, &x)?)?;
                    if lhs != rhs {
                        return Ok(Some(format!("psi B{i} at {s:?}")));
                    }
                }
                let base = TensorVector::basis(*k, &i0(&s.weight(*k)))?;
                if tensor::psi(c, &base)? != base {
                    return Ok(Some(format!("psi moves the base sequence of {s:?}")));
                }
            }
            Ok(None)
        },
    )
}

/// Both tensor Hecke actions satisfy the quadratic and braid relations and
/// commute with `E_i`, `F_i`, `K_i`.
pub fn tensor_hecke_check(max_n: usize) -> CheckReport {
    run_check(
        format!("tensor Hecke actions: relations and commutation, k <= 3, n <= {max_n}"),
        &small_sequences(max_n),
        |(k, s)| {
            let x = TensorVector::basis(*k, s)?;
            let n = s.len();
            for c in BOTH_COMULT {
                let t = |i: usize, y: &TensorVector| tensor::hecke_on_tensor(c, i, y);
                for i in 1..n {
                    let tx = t(i, &x)?;
                    let quad = t(i, &tx)?
                        .add(&tx.scale_laurent(&LaurentPoly::from_terms([(0, 1), (-2, -1)])))?
                        .sub(&x.scale_laurent(&LaurentPoly::v_pow(-2)))?;
                    if !quad.is_zero() {
                        return Ok(Some(format!("{c:?} quadratic relation, T{i} on {s:?}")));
                    }
                    if i + 1 < n && t(i, &t(i + 1, &tx)?)? != t(i + 1, &t(i, &t(i + 1, &x)?)?)? {
                        return Ok(Some(format!("{c:?} braid relation, T{i} on {s:?}")));
                    }
                    for j in i + 2..n {
                        if t(i, &t(j, &x)?)? != t(j, &tx)? {
                            return Ok(Some(format!("{c:?} T{i}, T{j} on {s:?}")));
                        }
                    }
                    for g in 1..*k {
                        for gen in [Generator::E(g), Generator::F(g), Generator::K(g)] {
                            if t(i, &tensor::generator_action(gen, c, &x)?)? != tensor::generator_action(gen, c, &tx)? {
                                return Ok(Some(format!("{c:?} T{i} does not commute with {gen:?} on {s:?}")));
                            }
                        }
                    }
                }
            }
            Ok(None)
        },
    )
}

pub fn jones_wenzl_check(max_n: usize) -> CheckReport {
    run_check(format!("Jones-Wenzl projectors are idempotent, n <= {max_n}"), &words(max_n), |w| {
        let x = TensorVector::basis(2, w.as_sequence())?;
        for i in 1..=w.len() {
            for j in i..=w.len() {
                let p = sl2::jones_wenzl(i, j, &x)?;
                if sl2::jones_wenzl(i, j, &p)? != p {
                    return Ok(Some(format!("p[{i},{j}] on {w}")));
                }
            }
        }
        Ok(None)
    })
}

fn routes_suite(max_n: usize) -> Vec<CheckReport> {
    let k3 = max_n.min(5);
    let mut seqs = sequences(2, max_n.min(8));
    seqs.extend(sequences(3, k3));

    let psi_routes = run_check(
        format!("psi by transport equals psi from the braiding, k = 2 n <= {}, k = 3 n <= {k3}", max_n.min(8)),
        &seqs,
        |(k, s)| {
            let x = TensorVector::basis(*k, s)?;
            for c in BOTH_COMULT {
                if tensor::psi(c, &x)? != tensor::psi_braided(c, &x)? {
                    return Ok(Some(format!("{c:?} at {s:?}")));
                }
            }
            Ok(None)
        },
    );

    let direct = run_check("transported bases equal the direct tensor-space solve", &seqs, |(k, s)| {
        let b = tensor::canonical_basis(*k, s)?;
        if b != tensor::basis_direct(ComultChoice::Standard, *k, s)? {
            return Ok(Some(format!("canonical at {s:?}")));
        }
        let d = tensor::dual_canonical_basis(*k, s)?;
        Ok(expect_eq(&d, &tensor::basis_direct(ComultChoice::Barred, *k, s)?, || format!("dual at {s:?}")))
    });

    let choice_n = max_n.min(8);
    let choices = run_check(
        format!("rule choices in the sl2 recursions do not matter, n <= {choice_n}"),
        &words(choice_n),
        |w| {
            let b = sl2::canonical_sl2(w)?;
            for j in sl2::valid_junctions(w) {
                if sl2::canonical_sl2_at(w, j)? != b {
                    return Ok(Some(format!("junction {j:?} of {w}")));
                }
            }
            let d = sl2::dual_canonical_sl2(w);
            let e = w.as_sequence().entries();
            for i in 0..e.len().saturating_sub(1) {
                if e[i] == 1 && e[i + 1] == 2 && sl2::dual_canonical_sl2_at(w, i)? != d {
                    return Ok(Some(format!("insertion at {i} of {w}")));
                }
            }
            Ok(None)
        },
    );

    let monomials =
        run_check(format!("dual canonical coefficients are signed monomials, n <= {max_n}"), &words(max_n), |w| {
            for (s, c) in sl2::dual_canonical_sl2(w).laurent_terms()? {
                let ok = c.as_monomial().is_some_and(|(_, a)| a.magnitude() == &1u32.into());
                if !ok {
                    return Ok(Some(format!("coefficient {c} of {s:?} in b^{w}")));
                }
            }
            Ok(None)
        });

    vec![
        psi_routes,
        direct,
        psi_law_check(max_n.min(4)),
        tensor_hecke_check(max_n.min(4)),
        sl2_route_check(max_n),
        regular_kl_check(&(2..=max_n.min(4)).collect::<Vec<_>>()),
        maximal_parabolic_check(max_n),
        jones_wenzl_check(max_n.min(6)),
        choices,
        monomials,
    ]
}

/// Both identities relating `P^J` to ordinary KL polynomials, for every
/// parabolic subgroup of `S_n`, `n <= max_n`.
pub fn deodhar_check(max_n: usize) -> CheckReport {
    let cases: Vec<(Arc<ParabolicContext>, Permutation, Permutation)> = (1..=max_n)
        .flat_map(compositions)
        .flat_map(|w| {
            let c = Arc::new(ParabolicContext::new(w));
            let reps = min_coset_reps(&c);
            let mut v = Vec::new();
            for t in &reps {
                for s in &reps {
                    v.push((c.clone(), t.clone(), s.clone()));
                }
            }
            v
        })
        .collect();
    run_check(format!("parabolic KL through ordinary KL, both u, n <= {max_n}"), &cases, |(c, t, s)| {
        let r = hecke::check_deodhar(c, t, s)?;
        Ok((!r.holds()).then(|| format!("{r:?}")))
    })
}

/// `c(I, J)` from the local recursion equals the coefficient in `b_I`.
pub fn grassmann_route_check(max_n: usize) -> CheckReport {
    run_check(format!("local recursion equals canonical basis coefficients, n <= {max_n}"), &words(max_n), |w| {
        let b = sl2::canonical_sl2(w)?;
        let pluses = w.as_sequence().entries().iter().filter(|&&x| x == 1).count();
        for j in PlusMinusWord::all(w.len()) {
            if j.as_sequence().entries().iter().filter(|&&x| x == 1).count() != pluses {
                continue;
            }
            let expected = b.coeff(j.as_sequence()).to_laurent().ok_or_else(|| Error::Denominator(w.to_string()))?;
            if grassmann::coefficient_c(w, &j)? != expected {
                return Ok(Some(format!("c({w}, {j})")));
            }
        }
        Ok(None)
    })
}

/// The normalized recursion for `c^0` at every valid junction.
pub fn normalized_recursion_check(max_n: usize) -> CheckReport {
    run_check(format!("normalized recursion for c0 at every junction, n <= {max_n}"), &words(max_n), |w| {
        let enc = grassmann::encode(w);
        let pluses = w.as_sequence().entries().iter().filter(|&&x| x == 1).count();
        for j in PlusMinusWord::all(w.len()) {
            if j.as_sequence().entries().iter().filter(|&&x| x == 1).count() != pluses
                || !grassmann::is_controlled(w, &j)
            {
                continue;
            }
            for at in grassmann::junctions(&enc) {
                let r = grassmann::check_normalized_step(w, &j, at)?;
                if !r.holds() {
                    return Ok(Some(format!("c0({w}, {j}) at junction {at}: {} vs {}", r.lhs, r.rhs)));
                }
            }
        }
        Ok(None)
    })
}

fn grassmann_suite(max_n: usize) -> Vec<CheckReport> {
    let kl_n = max_n.min(8);
    let ctxs: Vec<ParabolicContext> =
        (1..=kl_n).flat_map(|n| (0..=n).map(move |p| ParabolicContext::new(Weight::new(vec![p, n - p])))).collect();
    let kl_chain = run_check(format!("c(sigma I0, tau I0) = v^(l(tau) - l(sigma)) bar P^J, n <= {kl_n}"), &ctxs, |c| {
        let m = HeckeModule::shared(UParam::MinusOne, c);
        for s in m.reps() {
            let i = PlusMinusWord::from_sequence(act(s, c.base())?)?;
            for t in m.reps() {
                let j = PlusMinusWord::from_sequence(act(t, c.base())?)?;
                let expected = m.parabolic_kl(t, s)?.to_laurent().bar().shift(t.length() as i32 - s.length() as i32);
                if grassmann::coefficient_c(&i, &j)? != expected {
                    return Ok(Some(format!("c({i}, {j})")));
                }
            }
        }
        Ok(None)
    });
    vec![grassmann_route_check(max_n), normalized_recursion_check(max_n.min(8)), kl_chain]
}

pub fn run_suite(suite: Suite, max_n: usize) -> SuiteReport {
    let checks = match suite {
        Suite::Hecke => hecke_suite(max_n),
        Suite::Duality => duality_suite(max_n),
        Suite::Routes => routes_suite(max_n),
        Suite::Deodhar => vec![deodhar_check(max_n.min(5))],
        Suite::Grassmann => grassmann_suite(max_n),
    };
    SuiteReport { suite, max_n, checks }
}

pub fn run_all(max_n: usize) -> Vec<SuiteReport> {
    Suite::ALL.into_iter().map(|s| run_suite(s, max_n)).collect()
}
