//! Symmetric-group and sequence combinatorics.
//!
//! Permutations act on positions: `s_i` swaps slots `i` and `i + 1`, and a
//! product `u * w` applies `w` first. With this action the entry in slot `a`
//! of `I` lands in slot `w(a)` of `w(I)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `S_n` in one-line notation (`images[a - 1] = w(a)`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::Parse {
                    what: "permutation",
                    token: images.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                });
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n).collect() }
    }

    /// The simple transposition `s_i`, `1 <= i < n`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        check_generator(n, i)?;
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Ok(Self { images })
    }

    /// The product `s_{i_1} s_{i_2} ... s_{i_r}`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(n);
        for &i in word.iter().rev() {
            check_generator(n, i)?;
            w = w.left_mul_simple(i);
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `w(a)` for `1 <= a <= n`.
    pub fn apply(&self, a: usize) -> usize {
        self.images[a - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// `self * other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch { expected: self.n(), found: other.n() });
        }
        Ok(Self { images: other.images.iter().map(|&a| self.images[a - 1]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (a, &x) in self.images.iter().enumerate() {
            inv[x - 1] = a + 1;
        }
        Self { images: inv }
    }

    /// Coxeter length, the number of inversions of the one-line word.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                if w[a] > w[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `s_i * self`: exchanges the values `i` and `i + 1`.
    pub fn left_mul_simple(&self, i: usize) -> Permutation {
        let images = self
            .images
            .iter()
            .map(|&x| {
                if x == i {
                    i + 1
                } else if x == i + 1 {
                    i
                } else {
                    x
                }
            })
            .collect();
        Self { images }
    }

    /// `self * s_i`: exchanges the entries in positions `i` and `i + 1`.
    pub fn right_mul_simple(&self, i: usize) -> Permutation {
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Self { images }
    }

    /// `l(s_i w) < l(w)`, i.e. `i + 1` occurs before `i` in the one-line word.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let inv = self.position_of(i);
        self.position_of(i + 1) < inv
    }

    /// `l(w s_i) < l(w)`, i.e. `w(i) > w(i + 1)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.images[i - 1] > self.images[i]
    }

    fn position_of(&self, x: usize) -> usize {
        self.images.iter().position(|&y| y == x).expect("value in range")
    }
}

fn check_generator(n: usize, i: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, lo: 1, hi: n.saturating_sub(1) });
    }
    Ok(())
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { what: "permutation", token: s.to_string() };
        let images = s.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
        Permutation::new(images).map_err(|_| bad())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A sequence `I = (i_1, ..., i_n)` with entries in `1..=k`.
///
/// For `k = 2` the letters are also written `+` (= 1) and `-` (= 2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedSequence {
    entries: Vec<u8>,
}

impl SignedSequence {
    pub fn new(entries: Vec<u8>) -> Self {
        Self { entries }
    }

    /// Checks that every entry lies in `1..=k`.
    pub fn with_bound(entries: Vec<u8>, k: usize) -> Result<Self> {
        if let Some(&x) = entries.iter().find(|&&x| x == 0 || x as usize > k) {
            return Err(Error::Parse { what: "sequence entry", token: x.to_string() });
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_entry(&self) -> u8 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    pub fn weight(&self, k: usize) -> Weight {
        let mut counts = vec![0; k];
        for &x in &self.entries {
            counts[x as usize - 1] += 1;
        }
        Weight { counts }
    }

    /// The sequence reversed, i.e. acted on by the longest element `w_0`.
    pub fn reversed(&self) -> SignedSequence {
        Self { entries: self.entries.iter().rev().copied().collect() }
    }

    /// Renders with `+`/`-` when every entry is 1 or 2.
    pub fn to_pm_string(&self) -> Option<String> {
        self.entries
            .iter()
            .map(|&x| match x {
                1 => Some('+'),
                2 => Some('-'),
                _ => None,
            })
            .collect()
    }

    /// Renders as `+-` text for `k = 2`, comma-separated integers otherwise.
    pub fn render(&self, k: usize) -> String {
        if k == 2 {
            if let Some(s) = self.to_pm_string() {
                return s;
            }
        }
        self.to_string()
    }

    /// Parses `+-` words (ASCII or Unicode minus) or comma-separated integers.
    pub fn parse(s: &str, k: usize) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Parse { what: "sequence", token: s.to_string() };
        let entries: Vec<u8> = if !t.is_empty() && t.chars().all(|c| matches!(c, '+' | '-' | '−')) {
            t.chars().map(|c| if c == '+' { 1 } else { 2 }).collect()
        } else if t.is_empty() {
            Vec::new()
        } else {
            t.split(',').map(|x| x.trim().parse::<u8>().map_err(|_| bad())).collect::<Result<_>>()?
        };
        Self::with_bound(entries, k).map_err(|_| bad())
    }
}

impl fmt::Display for SignedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for SignedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// A multiplicity vector `m = (m_1, ..., m_k)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Weight {
    counts: Vec<usize>,
}

impl Weight {
    pub fn new(counts: Vec<usize>) -> Self {
        Self { counts }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn k(&self) -> usize {
        self.counts.len()
    }

    pub fn n(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Number of sequences of this weight (the multinomial coefficient).
    pub fn dimension(&self) -> u128 {
        let mut acc: u128 = 1;
        let mut total: u128 = 0;
        for &m in &self.counts {
            for j in 1..=m as u128 {
                total += 1;
                acc = acc * total / j;
            }
        }
        acc
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let counts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse { what: "weight", token: s.to_string() })?;
        Ok(Weight { counts })
    }
}

/// `S_n` together with the parabolic subgroup `W_J` stabilizing `I^0(m)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParabolicContext {
    n: usize,
    weight: Weight,
    generators: Vec<usize>,
    base: SignedSequence,
}

impl ParabolicContext {
    pub fn new(weight: Weight) -> Self {
        let base = i0(&weight);
        let n = base.len();
        let generators = (1..n).filter(|&j| base.entries[j - 1] == base.entries[j]).collect();
        Self { n, weight, generators, base }
    }

    /// `J = ∅` in `S_n` (weight `(1, ..., 1)` with `k = n`).
    pub fn regular(n: usize) -> Self {
        Self::new(Weight::new(vec![1; n]))
    }

    /// Validating constructor: `generators` must be exactly the stabilizer of `I^0(m)`.
    pub fn with_generators(n: usize, weight: Weight, generators: Vec<usize>) -> Result<Self> {
        let ctx = Self::new(weight);
        if ctx.n != n {
            return Err(Error::ContextMismatch(format!("weight {} has size {}, not {n}", ctx.weight, ctx.n)));
        }
        let mut g = generators;
        g.sort_unstable();
        g.dedup();
        if g != ctx.generators {
            return Err(Error::ContextMismatch(format!(
                "generators {g:?} do not generate the stabilizer of I0({})",
                ctx.weight
            )));
        }
        Ok(ctx)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.weight.k()
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    /// The generator indices `J`.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// `I^0(m)`.
    pub fn base(&self) -> &SignedSequence {
        &self.base
    }

    pub fn contains_generator(&self, i: usize) -> bool {
        self.generators.binary_search(&i).is_ok()
    }

    /// `σ ∈ W^J`: no right descent in `J`.
    pub fn is_min_coset_rep(&self, sigma: &Permutation) -> bool {
        sigma.n() == self.n && self.generators.iter().all(|&j| !sigma.has_right_descent(j))
    }

    /// The unique `σ ∈ W^J` with `σ(I^0(m)) = seq`.
    pub fn coset_rep_of(&self, seq: &SignedSequence) -> Result<Permutation> {
        if seq.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: seq.len() });
        }
        let k = self.k();
        if seq.max_entry() as usize > k || seq.weight(k) != self.weight {
            return Err(Error::ContextMismatch(format!("{seq} does not have weight {}", self.weight)));
        }
        let mut slots: HashMap<u8, Vec<usize>> = HashMap::new();
        for (p, &x) in seq.entries.iter().enumerate().rev() {
            slots.entry(x).or_default().push(p + 1);
        }
        let images =
            self.base.entries.iter().map(|x| slots.get_mut(x).and_then(|v| v.pop()).expect("weights agree")).collect();
        Ok(Permutation { images })
    }
}

/// `w(I)`: the entry in slot `a` moves to slot `w(a)`.
pub fn act(w: &Permutation, seq: &SignedSequence) -> Result<SignedSequence> {
    if w.n() != seq.len() {
        return Err(Error::LengthMismatch { expected: w.n(), found: seq.len() });
    }
    let mut out = vec![0u8; seq.len()];
    for (a, &x) in seq.entries.iter().enumerate() {
        out[w.images[a] - 1] = x;
    }
    Ok(SignedSequence { entries: out })
}

/// Number of pairs `a < b` with `i_a > i_b`.
pub fn inversions(seq: &SignedSequence) -> usize {
    let e = &seq.entries;
    let mut count = 0;
    for a in 0..e.len() {
        for b in a + 1..e.len() {
            if e[a] > e[b] {
                count += 1;
            }
        }
    }
    count
}

/// `I^0(m) = (k^{m_k}, ..., 1^{m_1})`, the weakly decreasing sequence of weight `m`.
pub fn i0(weight: &Weight) -> SignedSequence {
    let mut entries = Vec::with_capacity(weight.n());
    for (idx, &m) in weight.counts.iter().enumerate().rev() {
        entries.extend(std::iter::repeat_n((idx + 1) as u8, m));
    }
    SignedSequence { entries }
}

/// All sequences of the given weight, in increasing lexicographic order.
pub fn sequences_of_weight(weight: &Weight) -> Vec<SignedSequence> {
    fn rec(counts: &mut [usize], cur: &mut Vec<u8>, n: usize, out: &mut Vec<SignedSequence>) {
        if cur.len() == n {
            out.push(SignedSequence { entries: cur.clone() });
            return;
        }
        for x in 0..counts.len() {
            if counts[x] > 0 {
                counts[x] -= 1;
                cur.push(x as u8 + 1);
                rec(counts, cur, n, out);
                cur.pop();
                counts[x] += 1;
            }
        }
    }
    let mut counts = weight.counts.clone();
    let mut out = Vec::new();
    rec(&mut counts, &mut Vec::new(), weight.n(), &mut out);
    out
}

/// All weights `(m_1, ..., m_k)` with `Σ m_i = n`.
pub fn weights(k: usize, n: usize) -> Vec<Weight> {
    fn rec(k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Weight>) {
        if cur.len() + 1 == k {
            cur.push(left);
            out.push(Weight::new(cur.clone()));
            cur.pop();
            return;
        }
        for m in (0..=left).rev() {
            cur.push(m);
            rec(k, left - m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        rec(k, n, &mut Vec::new(), &mut out);
    }
    out
}

/// The minimal length coset representatives `W^J`, sorted by length (ties
/// broken by one-line notation).
pub fn min_coset_reps(ctx: &ParabolicContext) -> Vec<Permutation> {
    let mut reps: Vec<(usize, Permutation)> = sequences_of_weight(&ctx.weight)
        .iter()
        .map(|s| {
            let p = ctx.coset_rep_of(s).expect("sequence has the context weight");
            (p.length(), p)
        })
        .collect();
    reps.sort();
    reps.into_iter().map(|(_, p)| p).collect()
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    sequences_of_weight(&Weight::new(vec![1; n]))
        .into_iter()
        .map(|s| Permutation { images: s.entries.iter().map(|&x| x as usize).collect() })
        .collect()
}

/// The elements of `W_J`: permutations preserving each block of `I^0(m)`.
pub fn parabolic_subgroup(ctx: &ParabolicContext) -> Vec<Permutation> {
    let mut out = vec![Permutation::identity(ctx.n)];
    let mut start = 0;
    for &m in ctx.weight.counts.iter().rev() {
        if m > 1 {
            let block = all_permutations(m);
            out = out
                .iter()
                .flat_map(|w| {
                    block.iter().map(move |b| {
                        let mut images = w.images.clone();
                        for (t, &x) in b.images.iter().enumerate() {
                            images[start + t] = start + x;
                        }
                        Permutation { images }
                    })
                })
                .collect();
        }
        start += m;
    }
    out
}

/// Bruhat order via rank-matrix dominance: `y <= w` iff for all `i, j`,
/// `#{a <= i : y(a) >= j} <= #{a <= i : w(a) >= j}`.
pub fn bruhat_leq(y: &Permutation, w: &Permutation) -> Result<bool> {
    let n = w.n();
    if y.n() != n {
        return Err(Error::LengthMismatch { expected: n, found: y.n() });
    }
    let mut ry = vec![0usize; n + 2];
    let mut rw = vec![0usize; n + 2];
    for i in 0..n {
        // after adding position i, ry[j] = #{a <= i : y(a) >= j}
        ry[1..=y.images[i]].iter_mut().for_each(|c| *c += 1);
        rw[1..=w.images[i]].iter_mut().for_each(|c| *c += 1);
        if (1..=n).any(|j| ry[j] > rw[j]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The longest element `w_J^0` of `W_J`: reverses each block of `I^0(m)`.
pub fn longest_element(ctx: &ParabolicContext) -> Permutation {
    let mut images = Vec::with_capacity(ctx.n);
    let mut start = 0;
    for &m in ctx.weight.counts.iter().rev() {
        images.extend((start + 1..=start + m).rev());
        start += m;
    }
    Permutation { images }
}

/// The lexicographically smallest reduced word: repeatedly strip the
/// smallest left descent.
pub fn reduced_word(w: &Permutation) -> Vec<usize> {
    let mut word = Vec::with_capacity(w.length());
    let mut cur = w.clone();
    'outer: loop {
        for i in 1..cur.n() {
            if cur.has_left_descent(i) {
                word.push(i);
                cur = cur.left_mul_simple(i);
                continue 'outer;
            }
        }
        break;
    }
    word
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn seq(v: &[u8]) -> SignedSequence {
        SignedSequence::new(v.to_vec())
    }

    /// Subword oracle: `y <= w` iff `y` is the product of a reduced subword of
    /// a fixed reduced word of `w`.
    fn bruhat_by_subwords(y: &Permutation, w: &Permutation) -> bool {
        let word = reduced_word(w);
        let r = word.len();
        (0u32..1 << r).any(|mask| {
            let sub: Vec<usize> = (0..r).filter(|b| mask >> b & 1 == 1).map(|b| word[b]).collect();
            let p = Permutation::from_word(w.n(), &sub).unwrap();
            p.length() == sub.len() && &p == y
        })
    }

    #[test]
    fn act_examples() {
        let s1 = Permutation::simple(3, 1).unwrap();
        assert_eq!(act(&s1, &seq(&[2, 1, 1])).unwrap(), seq(&[1, 2, 1]));
        assert_eq!(act(&Permutation::identity(3), &seq(&[3, 1, 2])).unwrap(), seq(&[3, 1, 2]));
        let s2 = Permutation::simple(3, 2).unwrap();
        let s1s2 = s1.compose(&s2).unwrap();
        let composed = act(&s1, &act(&s2, &seq(&[3, 2, 1])).unwrap()).unwrap();
        assert_eq!(act(&s1s2, &seq(&[3, 2, 1])).unwrap(), composed);
        assert_eq!(composed, seq(&[1, 3, 2]));
        assert!(matches!(act(&s1, &seq(&[1, 2])), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn action_law_on_s4() {
        let s = seq(&[3, 1, 2, 2]);
        let all = all_permutations(4);
        for u in &all {
            for w in &all {
                let uw = u.compose(w).unwrap();
                assert_eq!(act(&uw, &s).unwrap(), act(u, &act(w, &s).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(inversions(&seq(&[2, 1])), 1);
        assert_eq!(inversions(&seq(&[2, 2, 1, 1])), 4);
        assert_eq!(inversions(&seq(&[1, 1, 2, 2])), 0);
    }

    #[test]
    fn i0_examples() {
        assert_eq!(i0(&Weight::new(vec![2, 2])), seq(&[2, 2, 1, 1]));
        assert_eq!(i0(&Weight::new(vec![1, 1, 1])), seq(&[3, 2, 1]));
        assert_eq!(i0(&Weight::new(vec![0, 3])), seq(&[2, 2, 2]));
    }

    #[test]
    fn coset_rep_examples() {
        let reps = min_coset_reps(&ParabolicContext::new(Weight::new(vec![1, 1])));
        assert_eq!(reps, vec![perm("1,2"), perm("2,1")]);

        let reps = min_coset_reps(&ParabolicContext::new(Weight::new(vec![2, 1])));
        assert_eq!(reps.iter().map(|p| p.length()).collect::<Vec<_>>(), vec![0, 1, 2]);

        assert_eq!(min_coset_reps(&ParabolicContext::new(Weight::new(vec![2, 2]))).len(), 6);
    }

    #[test]
    fn coset_reps_agree_with_brute_force_minima() {
        for w in [vec![2, 1], vec![2, 2], vec![1, 2, 1], vec![3, 1, 1], vec![0, 2, 3]] {
            let ctx = ParabolicContext::new(Weight::new(w));
            let sub = parabolic_subgroup(&ctx);
            let mut minima = HashSet::new();
            for w in all_permutations(ctx.n()) {
                let coset: Vec<Permutation> = sub.iter().map(|x| w.compose(x).unwrap()).collect();
                minima.insert(coset.into_iter().min_by_key(|p| (p.length(), p.clone())).unwrap());
            }
            let reps: HashSet<Permutation> = min_coset_reps(&ctx).into_iter().collect();
            assert_eq!(reps, minima);
            assert!(reps.iter().all(|p| ctx.is_min_coset_rep(p)));
        }
    }

    #[test]
    fn bruhat_examples() {
        let all = all_permutations(3);
        let e = Permutation::identity(3);
        assert!(all.iter().all(|w| bruhat_leq(&e, w).unwrap()));
        let s1 = Permutation::simple(3, 1).unwrap();
        let s2 = Permutation::simple(3, 2).unwrap();
        assert!(!bruhat_leq(&s1, &s2).unwrap());
        assert!(bruhat_leq(&s1, &s1.compose(&s2).unwrap()).unwrap());
        assert!(bruhat_leq(&s1, &Permutation::identity(4)).is_err());
    }

    #[test]
    fn bruhat_matches_subword_oracle_on_s4() {
        let all = all_permutations(4);
        for y in &all {
            for w in &all {
                assert_eq!(bruhat_leq(y, w).unwrap(), bruhat_by_subwords(y, w), "{y} {w}");
            }
        }
    }

    #[test]
    fn bruhat_is_a_partial_order_refining_length() {
        let all = all_permutations(4);
        for x in &all {
            assert!(bruhat_leq(x, x).unwrap());
            for y in &all {
                if x != y && bruhat_leq(x, y).unwrap() {
                    assert!(x.length() < y.length());
                    assert!(!bruhat_leq(y, x).unwrap());
                    for z in &all {
                        if bruhat_leq(y, z).unwrap() {
                            assert!(bruhat_leq(x, z).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn longest_element_examples() {
        let ctx = ParabolicContext::regular(3);
        assert_eq!(longest_element(&ctx), Permutation::identity(3));
        let ctx = ParabolicContext::new(Weight::new(vec![2, 0]));
        assert_eq!(longest_element(&ctx), Permutation::simple(2, 1).unwrap());
        let ctx = ParabolicContext::new(Weight::new(vec![0, 4]));
        assert_eq!(ctx.generators(), &[1, 2, 3]);
        assert_eq!(longest_element(&ctx), perm("4,3,2,1"));
        let ctx = ParabolicContext::new(Weight::new(vec![2, 3]));
        let w = longest_element(&ctx);
        assert_eq!(w.compose(&w).unwrap(), Permutation::identity(5));
        let max = parabolic_subgroup(&ctx).into_iter().map(|p| p.length()).max().unwrap();
        assert_eq!(w.length(), max);
    }

    #[test]
    fn reduced_word_examples() {
        assert!(reduced_word(&Permutation::identity(4)).is_empty());
        assert_eq!(reduced_word(&Permutation::simple(3, 2).unwrap()), vec![2]);
        assert_eq!(reduced_word(&perm("3,2,1")), vec![1, 2, 1]);
    }

    #[test]
    fn reduced_words_multiply_back() {
        for n in 1..=5 {
            for w in all_permutations(n) {
                let word = reduced_word(&w);
                assert_eq!(word.len(), w.length());
                assert_eq!(Permutation::from_word(n, &word).unwrap(), w);
            }
        }
    }

    #[test]
    fn coset_bijection_and_length_identity() {
        for n in 1..=8 {
            for k in 2..=3 {
                for wt in weights(k, n) {
                    let ctx = ParabolicContext::new(wt.clone());
                    let base = ctx.base().clone();
                    let top = inversions(&base);
                    let mut images = HashSet::new();
                    let reps = min_coset_reps(&ctx);
                    for sigma in &reps {
                        let s = act(sigma, &base).unwrap();
                        assert_eq!(sigma.length(), top - inversions(&s));
                        assert_eq!(s.weight(k), wt);
                        images.insert(s);
                    }
                    assert_eq!(images.len(), reps.len());
                    assert_eq!(images.len() as u128, wt.dimension());
                }
            }
        }
    }

    #[test]
    fn descent_lemma_for_coset_reps() {
        for n in 1..=6 {
            for k in 2..=3 {
                for wt in weights(k, n) {
                    let ctx = ParabolicContext::new(wt);
                    for sigma in min_coset_reps(&ctx) {
                        let s = act(&sigma, ctx.base()).unwrap();
                        for i in 1..n {
                            let (a, b) = (s.entries()[i - 1], s.entries()[i]);
                            let up = sigma.left_mul_simple(i);
                            assert_eq!(up.length() > sigma.length(), a >= b);
                            assert_eq!(ctx.is_min_coset_rep(&up), a != b);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(perm("2,1,3").to_string(), "2,1,3");
        assert!("2,2,1".parse::<Permutation>().is_err());
        assert!("2,x".parse::<Permutation>().is_err());
        assert_eq!(SignedSequence::parse("+-−", 2).unwrap(), seq(&[1, 2, 2]));
        assert_eq!(SignedSequence::parse("3,1,2", 3).unwrap(), seq(&[3, 1, 2]));
        assert!(SignedSequence::parse("3,1", 2).is_err());
        assert_eq!(seq(&[1, 2]).render(2), "+-");
        assert_eq!(seq(&[1, 2]).render(3), "1,2");
    }

    #[test]
    fn context_validation() {
        let ok = ParabolicContext::with_generators(4, Weight::new(vec![2, 2]), vec![3, 1]);
        assert!(ok.is_ok());
        assert!(ParabolicContext::with_generators(4, Weight::new(vec![2, 2]), vec![1]).is_err());
        assert!(ParabolicContext::with_generators(5, Weight::new(vec![2, 2]), vec![1, 3]).is_err());
    }
}
