//! Closed constructions for `k = 2`: the invariant `a ∈ V⊗V`, invariant
//! insertion for the dual canonical basis, the Jones–Wenzl projectors, and
//! the block decomposition of the canonical basis.
//!
//! Words are written over `{+, -}` with `+ = 1`, `- = 2`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::RwLock;

use crate::combinatorics::SignedSequence;
use crate::error::{Error, Result};
use crate::laurent::{gauss_binomial, LaurentPoly, RationalFunction};
use crate::tensor::TensorVector;

const PLUS: u8 = 1;
const MINUS: u8 = 2;

/// A word over `{+, -}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlusMinusWord(SignedSequence);

impl PlusMinusWord {
    pub fn from_sequence(seq: SignedSequence) -> Result<Self> {
        Ok(Self(SignedSequence::with_bound(seq.entries().to_vec(), 2)?))
    }

    pub fn as_sequence(&self) -> &SignedSequence {
        &self.0
    }

    pub fn into_sequence(self) -> SignedSequence {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All words of length `n`, in lexicographic order with `+` first.
    pub fn all(n: usize) -> Vec<PlusMinusWord> {
        (0..1u64 << n)
            .map(|bits| {
                let e = (0..n).map(|j| if bits >> (n - 1 - j) & 1 == 1 { MINUS } else { PLUS }).collect();
                PlusMinusWord(SignedSequence::new(e))
            })
            .collect()
    }
}

impl fmt::Display for PlusMinusWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.to_pm_string().expect("entries are 1 or 2"))
    }
}

impl fmt::Debug for PlusMinusWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for PlusMinusWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if !t.chars().all(|c| matches!(c, '+' | '-' | '−')) {
            return Err(Error::Parse { what: "+/- word", token: s.to_string() });
        }
        Ok(Self(SignedSequence::parse(t, 2)?))
    }
}

type LVec = BTreeMap<Vec<u8>, LaurentPoly>;

fn to_tensor(n: usize, v: &LVec) -> TensorVector {
    TensorVector::from_laurent_terms(2, n, v.iter().map(|(s, c)| (SignedSequence::new(s.clone()), c.clone())))
        .expect("entries are 1 or 2")
}

fn check_k2(x: &TensorVector) -> Result<()> {
    if x.k() != 2 {
        return Err(Error::ContextMismatch(format!("expected k = 2, found k = {}", x.k())));
    }
    Ok(())
}

/// `a = e_+⊗e_- - v^-1 e_-⊗e_+`.
pub fn invariant_a() -> TensorVector {
    to_tensor(2, &invariant_terms())
}

fn invariant_terms() -> LVec {
    LVec::from([(vec![PLUS, MINUS], LaurentPoly::one()), (vec![MINUS, PLUS], LaurentPoly::monomial(-1, -1))])
}

fn insert_lvec(i: usize, x: &LVec) -> LVec {
    let a = invariant_terms();
    let mut out = LVec::new();
    for (s, c) in x {
        for (t, d) in &a {
            let mut e = Vec::with_capacity(s.len() + 2);
            e.extend_from_slice(&s[..i]);
            e.extend_from_slice(t);
            e.extend_from_slice(&s[i..]);
            out.insert(e, c * d);
        }
    }
    out
}

/// `a_{i+1, i+2}`: inserts `a` after the first `i` factors of every basis tensor.
pub fn insert_invariant(i: usize, x: &TensorVector) -> Result<TensorVector> {
    check_k2(x)?;
    if i > x.n() {
        return Err(Error::IndexOutOfRange { index: i, lo: 0, hi: x.n() });
    }
    let a = invariant_terms();
    let mut terms = Vec::new();
    for (s, c) in x.terms() {
        for (t, d) in &a {
            let e = s.entries();
            let mut w = e[..i].to_vec();
            w.extend_from_slice(t);
            w.extend_from_slice(&e[i..]);
            terms.push((SignedSequence::new(w), c.mul_laurent(d)));
        }
    }
    TensorVector::from_terms(2, x.n() + 2, terms)
}

static DUAL: Lazy<RwLock<HashMap<Vec<u8>, Arc<LVec>>>> = Lazy::new(Default::default);
static CANONICAL: Lazy<RwLock<HashMap<Vec<u8>, Arc<LVec>>>> = Lazy::new(Default::default);

fn leftmost_plus_minus(w: &[u8]) -> Option<usize> {
    w.windows(2).position(|p| p == [PLUS, MINUS])
}

fn prepend(c: u8, x: &LVec) -> LVec {
    x.iter()
        .map(|(s, p)| {
            let mut e = Vec::with_capacity(s.len() + 1);
            e.push(c);
            e.extend_from_slice(s);
            (e, p.clone())
        })
        .collect()
}

fn append(c: u8, x: &LVec) -> LVec {
    x.iter()
        .map(|(s, p)| {
            let mut e = s.clone();
            e.push(c);
            (e, p.clone())
        })
        .collect()
}

fn dual_rec(w: &[u8], first: Option<usize>) -> Result<Arc<LVec>> {
    if first.is_none() {
        if let Some(c) = DUAL.read().get(w) {
            return Ok(c.clone());
        }
    }
    let out = match (w.first(), w.last(), first) {
        (None, _, _) => LVec::from([(Vec::new(), LaurentPoly::one())]),
        (Some(&MINUS), _, None) => prepend(MINUS, &*dual_rec(&w[1..], None)?),
        (_, Some(&PLUS), None) => append(PLUS, &*dual_rec(&w[..w.len() - 1], None)?),
        _ => {
            let i = match first {
                Some(i) if w.get(i..i + 2) == Some(&[PLUS, MINUS][..]) => i,
                Some(i) => return Err(Error::IndexOutOfRange { index: i, lo: 0, hi: w.len().saturating_sub(2) }),
                None => leftmost_plus_minus(w).expect("a word starting with + and ending with - contains +-"),
            };
            let mut rest = w[..i].to_vec();
            rest.extend_from_slice(&w[i + 2..]);
            insert_lvec(i, &*dual_rec(&rest, None)?)
        }
    };
    let out = Arc::new(out);
    if first.is_none() {
        DUAL.write().insert(w.to_vec(), out.clone());
    }
    Ok(out)
}

/// The dual canonical basis vector `b^I` from invariant insertion: strip a
/// leading `-`, strip a trailing `+`, otherwise remove the leftmost `+-`,
/// recurse and insert `a` in its place.
pub fn dual_canonical_sl2(word: &PlusMinusWord) -> TensorVector {
    to_tensor(word.len(), &dual_rec(word.0.entries(), None).expect("default rule choice is always valid"))
}

/// As [`dual_canonical_sl2`], but with the first `+-` removal applied at
/// position `i` (0-based) of the word, whatever the other rules say.
pub fn dual_canonical_sl2_at(word: &PlusMinusWord, i: usize) -> Result<TensorVector> {
    Ok(to_tensor(word.len(), &*dual_rec(word.0.entries(), Some(i))?))
}

/// `{J}`: pairs `a < b` with `j_a = -`, `j_b = +`.
fn minus_plus_pairs(w: &[u8]) -> i32 {
    let mut minus = 0;
    let mut count = 0;
    for &x in w {
        if x == MINUS {
            minus += 1;
        } else {
            count += minus;
        }
    }
    count
}

/// All words of the given length with `k` pluses.
fn window_words(len: usize, k: usize) -> Vec<Vec<u8>> {
    fn rec(len: usize, k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let left = len - cur.len();
        let pluses = cur.iter().filter(|&&x| x == PLUS).count();
        if pluses < k {
            cur.push(PLUS);
            rec(len, k, cur, out);
            cur.pop();
        }
        if left > k - pluses {
            cur.push(MINUS);
            rec(len, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, k, &mut Vec::with_capacity(len), &mut out);
    out
}

/// Terms grouped by everything outside the window `lo..hi` and by the number
/// of pluses inside, with `S = Σ c_I v^{-{I_window}}` accumulated per group.
fn group_window<C: Clone>(
    terms: impl Iterator<Item = (Vec<u8>, C)>,
    lo: usize,
    hi: usize,
    mut accumulate: impl FnMut(Option<C>, C, i32) -> C,
) -> BTreeMap<(Vec<u8>, Vec<u8>, usize), C> {
    let mut groups: BTreeMap<(Vec<u8>, Vec<u8>, usize), C> = BTreeMap::new();
    for (s, c) in terms {
        let win = &s[lo..hi];
        let k = win.iter().filter(|&&x| x == PLUS).count();
        let key = (s[..lo].to_vec(), s[hi..].to_vec(), k);
        let prev = groups.remove(&key);
        groups.insert(key, accumulate(prev, c, -minus_plus_pairs(win)));
    }
    groups
}

fn check_window(i: usize, j: usize, n: usize) -> Result<()> {
    if i == 0 || i > j || j > n {
        let bad = if i == 0 || i > n { i } else { j };
        return Err(Error::IndexOutOfRange { index: bad, lo: 1, hi: n });
    }
    Ok(())
}

/// `p_{i,j}`: the Jones–Wenzl projector `p_{j-i+1}` on factors `i..=j`,
///
/// ```text
/// p_n(e_I) = [n choose k]^-1 Σ_{J_+ = k} v^{k(n-k) - {I} - {J}} e_J.
/// ```
pub fn jones_wenzl(i: usize, j: usize, x: &TensorVector) -> Result<TensorVector> {
    check_k2(x)?;
    check_window(i, j, x.n())?;
    let (lo, hi) = (i - 1, j);
    let len = hi - lo;
    let groups = group_window(x.terms().map(|(s, c)| (s.entries().to_vec(), c.clone())), lo, hi, |prev, c, e| {
        let t = c.mul_laurent(&LaurentPoly::v_pow(e));
        match prev {
            Some(p) => &p + &t,
            None => t,
        }
    });
    let mut terms = Vec::new();
    for ((pre, post, k), s) in groups {
        if s.is_zero() {
            continue;
        }
        let t = &s * &RationalFunction::from_laurent(gauss_binomial(len as u32, k as i64)).recip()?;
        for win in window_words(len, k) {
            let e = (k * (len - k)) as i32 - minus_plus_pairs(&win);
            let mut w = pre.clone();
            w.extend_from_slice(&win);
            w.extend_from_slice(&post);
            terms.push((SignedSequence::new(w), t.mul_laurent(&LaurentPoly::v_pow(e))));
        }
    }
    TensorVector::from_terms(2, x.n(), terms)
}

/// `[len choose l] p` on the window `lo..lo+len` of a Laurent vector, with
/// the binomial prefactor cleared against the projector denominators.
fn scaled_projector(lo: usize, len: usize, l: usize, x: &LVec) -> Result<LVec> {
    let hi = lo + len;
    let groups = group_window(x.iter().map(|(s, c)| (s.clone(), c.clone())), lo, hi, |prev, c, e| {
        let t = c.shift(e);
        match prev {
            Some(p) => p + t,
            None => t,
        }
    });
    let prefactor = gauss_binomial(len as u32, l as i64);
    let mut out = LVec::new();
    for ((pre, post, k), s) in groups {
        if s.is_zero() {
            continue;
        }
        let den = gauss_binomial(len as u32, k as i64);
        let t = (&s * &prefactor)
            .div_exact(&den)
            .ok_or_else(|| Error::Denominator(format!("({}) / ({den})", &s * &prefactor)))?;
        for win in window_words(len, k) {
            let e = (k * (len - k)) as i32 - minus_plus_pairs(&win);
            let mut w = pre.clone();
            w.extend_from_slice(&win);
            w.extend_from_slice(&post);
            out.insert(w, t.shift(e));
        }
    }
    Ok(out)
}

/// A decomposition `I = I_1 | I_+ | I_- | I_2` for the canonical basis
/// recursion: `I_+ = +^k` starts at `start`, `I_- = -^l` follows it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Junction {
    pub start: usize,
    pub pluses: usize,
    pub minuses: usize,
}

/// Maximal runs as `(letter, start, length)`.
fn runs(w: &[u8]) -> Vec<(u8, usize, usize)> {
    let mut out: Vec<(u8, usize, usize)> = Vec::new();
    for (p, &x) in w.iter().enumerate() {
        match out.last_mut() {
            Some((y, _, len)) if *y == x => *len += 1,
            _ => out.push((x, p, 1)),
        }
    }
    out
}

/// Every junction satisfying the block conditions: `k, l > 0`, `I_1` empty
/// or ending in at least `k` minuses, `I_2` empty or starting with at least
/// `l` pluses.
pub fn valid_junctions(word: &PlusMinusWord) -> Vec<Junction> {
    let r = runs(word.0.entries());
    let mut out = Vec::new();
    for idx in 0..r.len().saturating_sub(1) {
        let (x, start, k) = r[idx];
        let (_, _, l) = r[idx + 1];
        if x != PLUS {
            continue;
        }
        let left_ok = idx == 0 || r[idx - 1].2 >= k;
        let right_ok = idx + 2 == r.len() || r[idx + 2].2 >= l;
        if left_ok && right_ok {
            out.push(Junction { start, pluses: k, minuses: l });
        }
    }
    out
}

fn canonical_rec(w: &[u8], forced: Option<Junction>) -> Result<Arc<LVec>> {
    if forced.is_none() {
        if let Some(c) = CANONICAL.read().get(w) {
            return Ok(c.clone());
        }
    }
    let out = match (w.first(), w.last(), forced) {
        (None, _, _) => LVec::from([(Vec::new(), LaurentPoly::one())]),
        (Some(&MINUS), _, None) => prepend(MINUS, &*canonical_rec(&w[1..], None)?),
        (_, Some(&PLUS), None) => append(PLUS, &*canonical_rec(&w[..w.len() - 1], None)?),
        _ => {
            let word = PlusMinusWord(SignedSequence::new(w.to_vec()));
            let valid = valid_junctions(&word);
            let j = match forced {
                Some(j) if valid.contains(&j) => j,
                Some(j) => return Err(Error::Format(format!("{j:?} is not a valid junction of {word}"))),
                None => *valid.first().ok_or_else(|| Error::Format(format!("no valid junction in {word}")))?,
            };
            let (k, l) = (j.pluses, j.minuses);
            let mut lower = w.to_vec();
            lower[j.start..j.start + l].fill(MINUS);
            lower[j.start + l..j.start + l + k].fill(PLUS);
            scaled_projector(j.start, k + l, l, &*canonical_rec(&lower, None)?)?
        }
    };
    let out = Arc::new(out);
    if forced.is_none() {
        CANONICAL.write().insert(w.to_vec(), out.clone());
    }
    Ok(out)
}

/// The canonical basis vector `b_I`: strip a leading `-`, strip a trailing
/// `+`, otherwise pick the leftmost valid junction `I_1|I_+|I_-|I_2` and use
/// `b_I = [k+l choose l] p_{l(I_1)+1, l(I_1)+k+l} b_{I_1|I_-|I_+|I_2}`.
pub fn canonical_sl2(word: &PlusMinusWord) -> Result<TensorVector> {
    Ok(to_tensor(word.len(), &*canonical_rec(word.0.entries(), None)?))
}

/// As [`canonical_sl2`], with the given junction used for the first step
/// (no stripping first); later steps use the default policy.
pub fn canonical_sl2_at(word: &PlusMinusWord, junction: Junction) -> Result<TensorVector> {
    Ok(to_tensor(word.len(), &*canonical_rec(word.0.entries(), Some(junction))?))
}
