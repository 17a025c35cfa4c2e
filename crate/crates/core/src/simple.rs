//! Simple (permutation) braids and their divisibility lattice.
//!
//! A simple braid is stored as the permutation it induces on strand
//! positions: `perm[a]` is the position at which the strand that starts at
//! position `a` ends. Products stack left to right, so the permutation of
//! `s·t` is `t ∘ s`. All positions are zero-based internally; generator
//! indices and the public one-line notation are one-based.

use std::fmt;

use crate::error::{invalid, Result};
use crate::word::{ArtinWord, Letter};

/// Largest supported strand count.
pub const MAX_STRANDS: usize = 16;

/// A set of generator indices `i ∈ [1, n−1]`, stored as a bitmask
/// (bit `i − 1` for `σ_i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GenSet(pub u32);

impl GenSet {
    pub fn full(n: usize) -> Self {
        GenSet((1u32 << (n - 1)) - 1)
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && self.0 & (1 << (i - 1)) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << (i - 1);
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32)
            .filter(move |b| self.0 & (1 << b) != 0)
            .map(|b| b + 1)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for GenSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = GenSet::default();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

/// A permutation braid in `B_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleBraid {
    n: u8,
    perm: [u8; MAX_STRANDS],
}

fn check_strands(n: usize) -> Result<()> {
    if !(2..=MAX_STRANDS).contains(&n) {
        return Err(invalid(format!(
            "strand count {n} outside [2, {MAX_STRANDS}]"
        )));
    }
    Ok(())
}

impl SimpleBraid {
    fn raw(n: usize) -> Self {
        let mut perm = [0u8; MAX_STRANDS];
        for (i, p) in perm.iter_mut().enumerate() {
            *p = i as u8;
        }
        SimpleBraid { n: n as u8, perm }
    }

    /// The trivial braid.
    pub fn identity(n: usize) -> Result<Self> {
        check_strands(n)?;
        Ok(Self::raw(n))
    }

    /// The half twist `Δ`.
    pub fn delta(n: usize) -> Result<Self> {
        check_strands(n)?;
        let mut s = Self::raw(n);
        for a in 0..n {
            s.perm[a] = (n - 1 - a) as u8;
        }
        Ok(s)
    }

    /// The Artin generator `σ_i`.
    pub fn atom(n: usize, i: usize) -> Result<Self> {
        check_strands(n)?;
        if i == 0 || i >= n {
            return Err(invalid(format!(
                "generator index {i} outside [1, {}]",
                n - 1
            )));
        }
        let mut s = Self::raw(n);
        s.perm.swap(i - 1, i);
        Ok(s)
    }

    /// Builds a simple braid from one-line notation (one-based images).
    pub fn from_perm(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        check_strands(n)?;
        let mut seen = [false; MAX_STRANDS];
        let mut s = Self::raw(n);
        for (a, &p) in perm.iter().enumerate() {
            if p == 0 || p > n || seen[p - 1] {
                return Err(invalid(format!("{perm:?} is not a permutation of 1..{n}")));
            }
            seen[p - 1] = true;
            s.perm[a] = (p - 1) as u8;
        }
        Ok(s)
    }

    /// Evaluates a positive word; fails unless the result is simple.
    pub fn from_word(word: &ArtinWord) -> Result<Self> {
        let n = word.strands();
        let mut s = Self::identity(n)?;
        for l in word.letters() {
            if l.inverse {
                return Err(invalid("simple braids are positive"));
            }
            s = s
                .mul(&Self::atom(n, l.index)?)
                .ok_or_else(|| invalid(format!("word {word} is not a simple braid")))?;
        }
        Ok(s)
    }

    pub fn strands(&self) -> usize {
        self.n as usize
    }

    /// One-line notation, one-based.
    pub fn perm(&self) -> Vec<usize> {
        self.images().iter().map(|&p| p as usize + 1).collect()
    }

    #[inline]
    fn images(&self) -> &[u8] {
        &self.perm[..self.n as usize]
    }

    #[inline]
    fn inv_images(&self) -> [u8; MAX_STRANDS] {
        let mut inv = [0u8; MAX_STRANDS];
        for (a, &p) in self.images().iter().enumerate() {
            inv[p as usize] = a as u8;
        }
        inv
    }

    /// Number of crossings, i.e. inversions of the permutation.
    pub fn length(&self) -> usize {
        let p = self.images();
        let mut inv = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    pub fn is_identity(&self) -> bool {
        self.images()
            .iter()
            .enumerate()
            .all(|(a, &p)| a == p as usize)
    }

    pub fn is_delta(&self) -> bool {
        let n = self.n as usize;
        self.images()
            .iter()
            .enumerate()
            .all(|(a, &p)| p as usize == n - 1 - a)
    }

    /// Proper means neither trivial nor `Δ`.
    pub fn is_proper(&self) -> bool {
        !self.is_identity() && !self.is_delta()
    }

    /// Permutation of the product `self · other`, whether or not the product
    /// is simple.
    #[inline]
    fn then(&self, other: &SimpleBraid) -> SimpleBraid {
        let mut r = *self;
        for a in 0..self.n as usize {
            r.perm[a] = other.perm[self.perm[a] as usize];
        }
        r
    }

    /// The product `self · other` when it is again simple.
    pub fn mul(&self, other: &SimpleBraid) -> Option<SimpleBraid> {
        let r = self.then(other);
        (r.length() == self.length() + other.length()).then_some(r)
    }

    /// `self ≼ other`.
    pub fn left_divides(&self, other: &SimpleBraid) -> Result<bool> {
        self.same_strands(other)?;
        Ok(self.left_quotient_unchecked(other).length() + self.length() == other.length())
    }

    /// `self ≽ other`, i.e. `other` is a suffix of `self`.
    pub fn right_divides(&self, other: &SimpleBraid) -> Result<bool> {
        self.same_strands(other)?;
        Ok(self.right_quotient_unchecked(other).length() + other.length() == self.length())
    }

    /// Permutation of `self^{-1} · other`.
    pub(crate) fn left_quotient_unchecked(&self, other: &SimpleBraid) -> SimpleBraid {
        let mut q = *self;
        for a in 0..self.n as usize {
            q.perm[self.perm[a] as usize] = other.perm[a];
        }
        q
    }

    /// Permutation of `self · other^{-1}`.
    pub(crate) fn right_quotient_unchecked(&self, other: &SimpleBraid) -> SimpleBraid {
        let inv = other.inv_images();
        let mut q = *self;
        for a in 0..self.n as usize {
            q.perm[a] = inv[self.perm[a] as usize];
        }
        q
    }

    fn same_strands(&self, other: &SimpleBraid) -> Result<()> {
        if self.n != other.n {
            return Err(invalid(format!(
                "strand counts differ: {} vs {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    /// Starting set `S(s) = { i : σ_i ≼ s }` as a bitmask.
    #[inline]
    pub fn starting(&self) -> GenSet {
        let p = self.images();
        let mut m = 0u32;
        for i in 0..p.len() - 1 {
            if p[i] > p[i + 1] {
                m |= 1 << i;
            }
        }
        GenSet(m)
    }

    /// Finishing set `F(s) = { i : s ≽ σ_i }` as a bitmask.
    #[inline]
    pub fn finishing(&self) -> GenSet {
        let inv = self.inv_images();
        let mut m = 0u32;
        for i in 0..self.n as usize - 1 {
            if inv[i] > inv[i + 1] {
                m |= 1 << i;
            }
        }
        GenSet(m)
    }

    pub fn starting_set(&self) -> Vec<usize> {
        self.starting().to_vec()
    }

    pub fn finishing_set(&self) -> Vec<usize> {
        self.finishing().to_vec()
    }

    /// `S(next) ⊆ F(self)`: no generator can slide from `next` into `self`.
    #[inline]
    pub fn is_left_weighted(&self, next: &SimpleBraid) -> bool {
        next.starting().is_subset(self.finishing())
    }

    /// `F(self) ⊆ S(next)`: no generator can slide from `self` into `next`.
    #[inline]
    pub fn is_right_weighted(&self, next: &SimpleBraid) -> bool {
        self.finishing().is_subset(next.starting())
    }

    /// Greatest common prefix, by repeated extraction of a common atom.
    pub fn meet(&self, other: &SimpleBraid) -> Result<SimpleBraid> {
        self.same_strands(other)?;
        Ok(self.meet_unchecked(other))
    }

    pub(crate) fn meet_unchecked(&self, other: &SimpleBraid) -> SimpleBraid {
        let mut a = *self;
        let mut b = *other;
        let mut m = Self::raw(self.n as usize);
        loop {
            let common = GenSet(a.starting().0 & b.starting().0);
            let Some(i) = common.first() else { break };
            // σ_i^{-1}·a swaps the first two inputs; m·σ_i swaps two outputs.
            a.perm.swap(i - 1, i);
            b.perm.swap(i - 1, i);
            for p in m.perm[..m.n as usize].iter_mut() {
                if *p as usize == i - 1 {
                    *p = i as u8;
                } else if *p as usize == i {
                    *p = (i - 1) as u8;
                }
            }
        }
        m
    }

    /// Right complement `∂s = s^{-1}Δ`.
    pub fn complement(&self) -> SimpleBraid {
        let n = self.n as usize;
        let inv = self.inv_images();
        let mut r = *self;
        for (x, &i) in inv.iter().enumerate().take(n) {
            r.perm[x] = (n - 1) as u8 - i;
        }
        r
    }

    /// Left complement `Δ s^{-1}`, equal to `τ(∂s)`.
    pub fn left_complement(&self) -> SimpleBraid {
        let n = self.n as usize;
        let inv = self.inv_images();
        let mut r = *self;
        for a in 0..n {
            r.perm[a] = inv[n - 1 - a];
        }
        r
    }

    /// `τ(s) = Δ^{-1} s Δ`.
    pub fn tau(&self) -> SimpleBraid {
        let n = self.n as usize;
        let mut r = *self;
        for a in 0..n {
            r.perm[a] = (n - 1) as u8 - self.perm[n - 1 - a];
        }
        r
    }

    /// `τ^k(s)`; `τ` is an involution on simple braids.
    pub fn tau_pow(&self, k: i64) -> SimpleBraid {
        if k.rem_euclid(2) == 1 {
            self.tau()
        } else {
            *self
        }
    }

    /// Image under the word-reversal anti-automorphism.
    pub fn reversed(&self) -> SimpleBraid {
        let inv = self.inv_images();
        let mut r = *self;
        r.perm[..self.n as usize].copy_from_slice(&inv[..self.n as usize]);
        r
    }

    /// Deterministic positive reduced word. Target positions are filled from
    /// the right: the strand ending at position `j` is carried there by an
    /// ascending run of generators, so `Δ` spells `(σ1⋯σ_{n−1})(σ1⋯σ_{n−2})⋯σ1`.
    pub fn canonical_indices(&self) -> Vec<usize> {
        let n = self.n as usize;
        let inv = self.inv_images();
        // arrangement[pos] = starting label of the strand currently at pos
        let mut arrangement: Vec<usize> = (0..n).collect();
        let mut out = Vec::with_capacity(self.length());
        for j in (0..n).rev() {
            let strand = inv[j] as usize;
            let k = arrangement
                .iter()
                .position(|&s| s == strand)
                .expect("strand present");
            for pos in k..j {
                arrangement.swap(pos, pos + 1);
                out.push(pos + 1);
            }
        }
        out
    }

    pub fn canonical_word(&self) -> ArtinWord {
        let letters = self
            .canonical_indices()
            .into_iter()
            .map(Letter::pos)
            .collect();
        ArtinWord::new(self.n as usize, letters).expect("indices in range")
    }

    /// All `n!` simple braids of `B_n`, in lexicographic order of permutations.
    pub fn all(n: usize) -> Result<Vec<SimpleBraid>> {
        check_strands(n)?;
        if n > 9 {
            return Err(invalid(format!("refusing to enumerate {n}! simple braids")));
        }
        let mut perm: Vec<usize> = (1..=n).collect();
        let mut out = Vec::new();
        loop {
            out.push(Self::from_perm(&perm)?);
            // next lexicographic permutation
            let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..n)
                .rev()
                .find(|&j| perm[j] > perm[i])
                .expect("successor");
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        Ok(out)
    }

    /// All simple braids other than `1` and `Δ`.
    pub fn all_proper(n: usize) -> Result<Vec<SimpleBraid>> {
        Ok(Self::all(n)?
            .into_iter()
            .filter(|s| s.is_proper())
            .collect())
    }
}

impl fmt::Debug for SimpleBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Simple{:?}", self.perm())
    }
}

impl fmt::Display for SimpleBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = self.canonical_indices();
        for (k, i) in idx.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}
