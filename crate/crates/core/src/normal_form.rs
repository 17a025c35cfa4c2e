//! Left normal forms `Δ^p x1⋯xr` of arbitrary braids.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{invalid, BraidError, Result};
use crate::simple::SimpleBraid;
use crate::word::{ArtinWord, Letter};

/// The left normal form of a braid: `Δ^inf · x1 ⋯ xr` with every `xi`
/// proper and every consecutive pair left-weighted.
///
/// Structural equality is braid equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    n: usize,
    inf: i64,
    factors: Vec<SimpleBraid>,
}

impl NormalForm {
    pub fn identity(n: usize) -> Result<Self> {
        SimpleBraid::identity(n)?;
        Ok(NormalForm {
            n,
            inf: 0,
            factors: Vec::new(),
        })
    }

    /// `Δ^p`.
    pub fn delta_power(n: usize, p: i64) -> Result<Self> {
        let mut x = Self::identity(n)?;
        x.inf = p;
        Ok(x)
    }

    pub fn from_simple(s: SimpleBraid) -> Self {
        let mut x = NormalForm {
            n: s.strands(),
            inf: 0,
            factors: Vec::new(),
        };
        x.push_simple(s);
        x
    }

    /// Builds a normal form from explicit parts, checking every invariant.
    pub fn from_parts(n: usize, inf: i64, factors: Vec<SimpleBraid>) -> Result<Self> {
        let x = NormalForm { n, inf, factors };
        x.check()?;
        Ok(x)
    }

    /// Parts known to satisfy the invariants (checked in debug builds).
    pub(crate) fn from_parts_unchecked(n: usize, inf: i64, factors: Vec<SimpleBraid>) -> Self {
        let x = NormalForm { n, inf, factors };
        debug_assert!(x.check().is_ok(), "{:?}", x.check());
        x
    }

    /// Verifies the normal-form invariants.
    pub fn check(&self) -> Result<()> {
        SimpleBraid::identity(self.n)?;
        for (k, f) in self.factors.iter().enumerate() {
            if f.strands() != self.n {
                return Err(invalid("factor with wrong strand count"));
            }
            if !f.is_proper() {
                return Err(BraidError::Invariant(format!("factor {k} is 1 or Δ")));
            }
        }
        for (k, w) in self.factors.windows(2).enumerate() {
            if !w[0].is_left_weighted(&w[1]) {
                return Err(BraidError::Invariant(format!(
                    "factors {k} and {} are not left-weighted",
                    k + 1
                )));
            }
        }
        Ok(())
    }

    /// Normal form of the braid a word represents.
    pub fn from_word(word: &ArtinWord) -> Result<Self> {
        let n = word.strands();
        let mut x = Self::identity(n)?;
        for l in word.letters() {
            let a = SimpleBraid::atom(n, l.index)?;
            if l.inverse {
                // σ_i^{-1} = ∂σ_i · Δ^{-1}
                x.push_simple(a.complement());
                x.mul_delta_power(-1);
            } else {
                x.push_simple(a);
            }
        }
        Ok(x)
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn inf(&self) -> i64 {
        self.inf
    }

    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[SimpleBraid] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    /// Positive word spelling the normal form (`Δ` powers must be ≥ 0).
    pub fn to_word(&self) -> ArtinWord {
        let mut letters = Vec::new();
        let delta = SimpleBraid::delta(self.n).expect("valid strand count");
        let unit = delta.canonical_indices();
        let (count, inverse) = (self.inf.unsigned_abs(), self.inf < 0);
        for _ in 0..count {
            if inverse {
                letters.extend(unit.iter().rev().map(|&i| Letter::neg(i)));
            } else {
                letters.extend(unit.iter().map(|&i| Letter::pos(i)));
            }
        }
        for f in &self.factors {
            letters.extend(f.canonical_indices().into_iter().map(Letter::pos));
        }
        ArtinWord::new(self.n, letters).expect("indices in range")
    }

    fn same_strands(&self, other: &NormalForm) -> Result<()> {
        if self.n != other.n {
            return Err(invalid(format!(
                "strand counts differ: {} vs {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    // ---- in-place arithmetic ----

    /// Right multiplication by `Δ^k`: `x Δ^k = Δ^k τ^k(x)`.
    pub(crate) fn mul_delta_power(&mut self, k: i64) {
        self.inf += k;
        if k.rem_euclid(2) == 1 {
            for f in &mut self.factors {
                *f = f.tau();
            }
        }
    }

    /// Right multiplication by a simple braid, restoring the normal form by a
    /// single right-to-left sweep of local left-weighting.
    pub(crate) fn push_simple(&mut self, s: SimpleBraid) {
        if s.is_identity() {
            return;
        }
        if s.is_delta() {
            self.mul_delta_power(1);
            return;
        }
        self.factors.push(s);
        let mut j = self.factors.len() - 1;
        while j > 0 {
            let (a, b) = (self.factors[j - 1], self.factors[j]);
            let t = a.complement().meet_unchecked(&b);
            if t.is_identity() {
                break;
            }
            self.factors[j - 1] = a.mul(&t).expect("t ≼ ∂a");
            self.factors[j] = t.left_quotient_unchecked(&b);
            j -= 1;
        }
        self.tidy();
    }

    /// Left multiplication by a simple braid (left-to-right sweep).
    pub(crate) fn push_front_simple(&mut self, s: SimpleBraid) {
        if s.is_identity() {
            return;
        }
        if s.is_delta() {
            self.inf += 1;
            return;
        }
        // s Δ^p = Δ^p τ^p(s)
        self.factors.insert(0, s.tau_pow(self.inf));
        let mut j = 0;
        while j + 1 < self.factors.len() {
            let (a, b) = (self.factors[j], self.factors[j + 1]);
            let t = a.complement().meet_unchecked(&b);
            if t.is_identity() {
                break;
            }
            self.factors[j] = a.mul(&t).expect("t ≼ ∂a");
            self.factors[j + 1] = t.left_quotient_unchecked(&b);
            j += 1;
        }
        self.tidy();
    }

    /// Absorbs leading `Δ` factors into the exponent and drops trivial ones.
    /// Falls back to a full bubble pass if the sweep left anything out of
    /// place.
    fn tidy(&mut self) {
        if !self.sweep_was_enough() {
            self.bubble();
        }
        let lead = self.factors.iter().take_while(|f| f.is_delta()).count();
        if lead > 0 {
            self.factors.drain(..lead);
            self.inf += lead as i64;
        }
        while self.factors.last().is_some_and(|f| f.is_identity()) {
            self.factors.pop();
        }
    }

    fn sweep_was_enough(&self) -> bool {
        let f = &self.factors;
        let lead = f.iter().take_while(|s| s.is_delta()).count();
        let tail = f.len() - f.iter().rev().take_while(|s| s.is_identity()).count();
        if lead > tail {
            return true;
        }
        f[lead..tail].iter().all(|s| s.is_proper())
            && f[lead..tail]
                .windows(2)
                .all(|w| w[0].is_left_weighted(&w[1]))
    }

    /// Local left-weighting iterated to a fixpoint.
    fn bubble(&mut self) {
        loop {
            let mut changed = false;
            for j in 0..self.factors.len().saturating_sub(1) {
                let (a, b) = (self.factors[j], self.factors[j + 1]);
                let t = a.complement().meet_unchecked(&b);
                if !t.is_identity() {
                    self.factors[j] = a.mul(&t).expect("t ≼ ∂a");
                    self.factors[j + 1] = t.left_quotient_unchecked(&b);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    /// `s^{-1} · self` for a simple `s`: `s^{-1} = Δ^{-1} · (Δ s^{-1})`.
    fn left_divide_simple(&mut self, s: SimpleBraid) {
        self.push_front_simple(s.left_complement());
        self.inf -= 1;
    }

    // ---- group operations ----

    pub fn multiply(&self, other: &NormalForm) -> Result<NormalForm> {
        self.same_strands(other)?;
        let mut r = self.clone();
        r.mul_delta_power(other.inf);
        r.factors.reserve(other.factors.len());
        for &f in &other.factors {
            r.push_simple(f);
        }
        Ok(r)
    }

    /// `x^{-1} = Δ^{-sup x} · τ^{sup x}(∂x)`.
    pub fn inverse(&self) -> NormalForm {
        let sup = self.sup();
        let c = self.complement();
        let factors = c.factors.iter().map(|f| f.tau_pow(sup)).collect();
        NormalForm::from_parts_unchecked(self.n, -sup, factors)
    }

    /// `y^{-1}·x·y`.
    pub fn conjugate_by(&self, y: &NormalForm) -> Result<NormalForm> {
        y.inverse().multiply(self)?.multiply(y)
    }

    /// `Δ^{-1} x Δ`.
    pub fn tau_conjugate(&self) -> NormalForm {
        let factors = self.factors.iter().map(|f| f.tau()).collect();
        NormalForm {
            n: self.n,
            inf: self.inf,
            factors,
        }
    }

    /// Complement `∂y`, the unique braid with `y·∂y = Δ^{sup y}`.
    pub fn complement(&self) -> NormalForm {
        let l = self.factors.len();
        let factors = (0..l)
            .map(|i| self.factors[l - 1 - i].complement().tau_pow(i as i64))
            .collect();
        NormalForm::from_parts_unchecked(self.n, 0, factors)
    }

    /// Greatest common prefix `x ∧ y`.
    pub fn gcd(&self, other: &NormalForm) -> Result<NormalForm> {
        self.same_strands(other)?;
        let m = self.inf.min(other.inf);
        let mut a = self.clone();
        let mut b = other.clone();
        a.inf -= m;
        b.inf -= m;
        let mut g = NormalForm {
            n: self.n,
            inf: m,
            factors: Vec::new(),
        };
        let delta = SimpleBraid::delta(self.n)?;
        let head = |x: &NormalForm| -> Option<SimpleBraid> {
            if x.inf > 0 {
                Some(delta)
            } else {
                x.factors.first().copied()
            }
        };
        // (a ∧ b) ∧ Δ = (a ∧ Δ) ∧ (b ∧ Δ): peel one simple factor at a time
        while let (Some(ha), Some(hb)) = (head(&a), head(&b)) {
            let s = ha.meet_unchecked(&hb);
            if s.is_identity() {
                break;
            }
            g.push_simple(s);
            a.left_divide_simple(s);
            b.left_divide_simple(s);
        }
        Ok(g)
    }

    /// `self ≼ other`.
    pub fn left_divides(&self, other: &NormalForm) -> Result<bool> {
        Ok(self.gcd(other)? == *self)
    }

    // ---- initial / final factors ----

    /// `ι(x) = τ^{-p}(x1)`.
    pub fn initial_factor(&self) -> Result<SimpleBraid> {
        self.factors
            .first()
            .map(|f| f.tau_pow(-self.inf))
            .ok_or(BraidError::EmptyNormalForm)
    }

    /// `φ(x) = xr`.
    pub fn final_factor(&self) -> Result<SimpleBraid> {
        self.factors
            .last()
            .copied()
            .ok_or(BraidError::EmptyNormalForm)
    }

    /// `(φ(x), ι(x))` is left-weighted.
    pub fn is_rigid(&self) -> Result<bool> {
        Ok(self
            .final_factor()?
            .is_left_weighted(&self.initial_factor()?))
    }

    /// Whether the concatenation of the two normal forms is already a normal
    /// form (`S(y) ⊆ F(x)`).
    pub fn is_normal_concatenation(&self, y: &NormalForm) -> Result<bool> {
        self.same_strands(y)?;
        if y.inf != 0 {
            return Err(BraidError::Precondition(
                "second braid must have inf 0".into(),
            ));
        }
        match (self.factors.last(), y.factors.first()) {
            (Some(a), Some(b)) => Ok(a.is_left_weighted(b)),
            _ => Err(BraidError::EmptyNormalForm),
        }
    }

    // ---- cycling and orbits ----

    /// Conjugation by `ι(x)`: the normal form of `Δ^p x2⋯xr τ^{-p}(x1)`.
    pub fn cycling(&self) -> Result<NormalForm> {
        let iota = self.initial_factor()?;
        let mut r = NormalForm {
            n: self.n,
            inf: self.inf,
            factors: self.factors[1..].to_vec(),
        };
        r.push_simple(iota);
        Ok(r)
    }

    /// Cyclic rotation of a rigid braid by `k` factors, with the conjugator
    /// `τ^p(x1⋯xk)` that realises it.
    pub(crate) fn rotate_rigid(&self, k: usize) -> (NormalForm, NormalForm) {
        let p = self.inf;
        let mut factors = self.factors[k..].to_vec();
        let moved: Vec<_> = self.factors[..k].iter().map(|f| f.tau_pow(p)).collect();
        factors.extend_from_slice(&moved);
        let z = NormalForm::from_parts_unchecked(self.n, p, factors);
        let c = NormalForm::from_parts_unchecked(self.n, 0, moved);
        (z, c)
    }

    /// The orbit of a rigid braid under cycling and `τ`, each member paired
    /// with a conjugator `c` such that `c^{-1}·self·c` is that member.
    pub fn rigid_orbit_with_conjugators(&self) -> Result<Vec<(NormalForm, NormalForm)>> {
        if !self.is_rigid()? {
            return Err(BraidError::Precondition(
                "rigid_orbit needs a rigid braid".into(),
            ));
        }
        let delta = NormalForm::delta_power(self.n, 1)?;
        let mut seen: HashMap<NormalForm, usize> = HashMap::new();
        let mut out = vec![(self.clone(), NormalForm::identity(self.n)?)];
        seen.insert(self.clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(idx) = queue.pop_front() {
            let (z, c) = out[idx].clone();
            let (cyc, step) = z.rotate_rigid(1);
            let tau = z.tau_conjugate();
            for (next, step) in [(cyc, step), (tau, delta.clone())] {
                if !seen.contains_key(&next) {
                    let conj = c.multiply(&step)?;
                    seen.insert(next.clone(), out.len());
                    queue.push_back(out.len());
                    out.push((next, conj));
                }
            }
        }
        Ok(out)
    }

    /// The orbit of a rigid braid under cycling and `τ`.
    pub fn rigid_orbit(&self) -> Result<Vec<NormalForm>> {
        Ok(self
            .rigid_orbit_with_conjugators()?
            .into_iter()
            .map(|(z, _)| z)
            .collect())
    }

    // ---- subwords and suffixes ----

    /// Whether the factor sequence of `w` (which must have inf 0) occurs as a
    /// contiguous block of this normal form's factors.
    pub fn contains_factor_subword(&self, w: &NormalForm) -> Result<bool> {
        self.same_strands(w)?;
        if w.inf != 0 {
            return Err(BraidError::Precondition("subword must have inf 0".into()));
        }
        if w.factors.is_empty() {
            return Ok(true);
        }
        Ok(self.find_factor_block(&w.factors).is_some())
    }

    pub(crate) fn find_factor_block(&self, block: &[SimpleBraid]) -> Option<usize> {
        if block.len() > self.factors.len() {
            return None;
        }
        self.factors
            .windows(block.len())
            .position(|win| win == block)
    }

    /// Word reversal, an anti-automorphism fixing every generator.
    pub fn reversed(&self) -> NormalForm {
        let mut r = NormalForm {
            n: self.n,
            inf: 0,
            factors: Vec::new(),
        };
        for f in self.factors.iter().rev() {
            r.push_simple(f.reversed());
        }
        // rev(Δ) = Δ
        r.mul_delta_power(self.inf);
        r
    }

    /// The largest simple braid that is a suffix of a positive braid, i.e. the
    /// last factor of its right normal form.
    pub fn max_simple_suffix(&self) -> Result<SimpleBraid> {
        if self.inf < 0 {
            return Err(BraidError::Precondition("braid must be positive".into()));
        }
        if self.is_identity() {
            return Err(BraidError::Precondition(
                "trivial braid has no simple suffix".into(),
            ));
        }
        let r = self.reversed();
        let head = if r.inf > 0 {
            SimpleBraid::delta(self.n)?
        } else {
            r.factors[0]
        };
        Ok(head.reversed())
    }

    /// For a positive braid with exactly two proper factors, a pair of strands
    /// (numbered by starting position, one-based) that never cross.
    pub fn noncrossing_pair(&self) -> Result<(usize, usize)> {
        if self.inf != 0 || self.factors.len() != 2 {
            return Err(BraidError::Precondition(
                "need a positive braid with exactly two factors".into(),
            ));
        }
        let crossed = self.crossing_matrix();
        for (r, row) in crossed.iter().enumerate() {
            if let Some(s) = (r + 1..self.n).find(|&s| !row[s]) {
                return Ok((r + 1, s + 1));
            }
        }
        Err(BraidError::Invariant(
            "every pair of strands crosses".into(),
        ))
    }

    /// `crossed[r][s]` (r < s, zero-based start positions) records whether
    /// the two strands cross anywhere in the canonical positive word.
    pub fn crossing_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.n;
        let mut arr: Vec<usize> = (0..n).collect();
        let mut crossed = vec![vec![false; n]; n];
        for l in self.to_word().letters() {
            let i = l.index;
            let (a, b) = (arr[i - 1], arr[i]);
            crossed[a.min(b)][a.max(b)] = true;
            arr.swap(i - 1, i);
        }
        crossed
    }

    /// A block of consecutive factors `[start, end)` as a braid of inf 0.
    pub fn factor_block(&self, start: usize, end: usize) -> NormalForm {
        NormalForm {
            n: self.n,
            inf: 0,
            factors: self.factors[start..end].to_vec(),
        }
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalForm({self})")
    }
}

/// `D^p | w1 . w2 . ... . wr`
impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{} |", self.inf)?;
        for (k, s) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str(" .")?;
            }
            write!(f, " {s}")?;
        }
        Ok(())
    }
}
