//! Five-piece decompositions of normal forms, used for non-intrusive
//! rigidification and blocking braids.
//!
//! A braid `x = Δ^ε x1⋯xl` with `l ≥ 5` is cut into `P1 P2 P3 P4' P5'`,
//! where the outer four pieces have equal length. Moving `P4' P5'` to the
//! front gives the conjugate `Δ^ε P4 P5 P1 P2 P3` (with `P4 = τ^ε(P4')`,
//! `P5 = τ^ε(P5')`), which is almost in normal form; when normalizing
//! `P4 P5 · P1 P2` leaves both ends untouched, that conjugate is rigid and
//! still contains `P3` in its normal form.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, BraidError, Result};
use crate::normal_form::NormalForm;
use crate::simple::SimpleBraid;
use crate::word::ArtinWord;

/// How the outer piece length `k` is derived from the canonical length `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// `k = ⌈l/5⌉`; leaves no middle piece for some `l` (6, 7, 8, 11, 12, ...).
    Ceiling,
    /// `k = ⌊l/5⌋`; the middle piece gets `l − 4k ≥ 1` factors.
    #[default]
    Floor,
}

impl Scheme {
    pub fn outer_len(self, l: usize) -> usize {
        match self {
            Scheme::Ceiling => l.div_ceil(5),
            Scheme::Floor => l / 5,
        }
    }
}

/// The cut `(P1, P2, P3, P4', P5')` of a normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceDecomposition {
    eps: i64,
    scheme: Scheme,
    pieces: [NormalForm; 5],
}

impl PieceDecomposition {
    pub fn new(x: &NormalForm, scheme: Scheme) -> Result<Self> {
        let l = x.canonical_length();
        if l < 5 {
            return Err(BraidError::TooShort { len: l, min: 5 });
        }
        let k = scheme.outer_len(l);
        if l < 4 * k + 1 {
            return Err(BraidError::SchemeDegenerate(l));
        }
        let pieces = [
            x.factor_block(0, k),
            x.factor_block(k, 2 * k),
            x.factor_block(2 * k, l - 2 * k),
            x.factor_block(l - 2 * k, l - k),
            x.factor_block(l - k, l),
        ];
        Ok(PieceDecomposition {
            eps: x.inf(),
            scheme,
            pieces,
        })
    }

    pub fn eps(&self) -> i64 {
        self.eps
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn sizes(&self) -> [usize; 5] {
        [0, 1, 2, 3, 4].map(|i| self.pieces[i].canonical_length())
    }

    pub fn p1(&self) -> &NormalForm {
        &self.pieces[0]
    }

    pub fn p2(&self) -> &NormalForm {
        &self.pieces[1]
    }

    pub fn p3(&self) -> &NormalForm {
        &self.pieces[2]
    }

    pub fn p4_raw(&self) -> &NormalForm {
        &self.pieces[3]
    }

    pub fn p5_raw(&self) -> &NormalForm {
        &self.pieces[4]
    }

    pub fn p4(&self) -> NormalForm {
        twist(&self.pieces[3], self.eps)
    }

    pub fn p5(&self) -> NormalForm {
        twist(&self.pieces[4], self.eps)
    }

    /// `P1·P2`, already in normal form.
    pub fn p12(&self) -> NormalForm {
        concat(&self.pieces[0], &self.pieces[1])
    }

    /// `P4·P5`, already in normal form.
    pub fn p45(&self) -> NormalForm {
        concat(&self.p4(), &self.p5())
    }

    /// `P4'·P5'`: the tail block moved to the front by the conjugation.
    pub fn tail_block(&self) -> NormalForm {
        concat(&self.pieces[3], &self.pieces[4])
    }
}

fn twist(x: &NormalForm, eps: i64) -> NormalForm {
    if eps.rem_euclid(2) == 1 {
        x.tau_conjugate()
    } else {
        x.clone()
    }
}

/// Concatenates two inf-0 blocks that are consecutive in some normal form.
fn concat(a: &NormalForm, b: &NormalForm) -> NormalForm {
    let mut f = a.factors().to_vec();
    f.extend_from_slice(b.factors());
    NormalForm::from_parts_unchecked(a.strands(), 0, f)
}

pub fn decompose(x: &NormalForm, scheme: Scheme) -> Result<PieceDecomposition> {
    PieceDecomposition::new(x, scheme)
}

/// The middle piece `P3` of `x`.
pub fn middle_fifth(x: &NormalForm, scheme: Scheme) -> Result<NormalForm> {
    Ok(decompose(x, scheme)?.p3().clone())
}

/// Whether the normal form of `y` still contains the middle fifth of `x`.
pub fn is_nonintrusive(x: &NormalForm, y: &NormalForm, scheme: Scheme) -> Result<bool> {
    y.contains_factor_subword(&middle_fifth(x, scheme)?)
}

/// A rigid conjugate found by moving the tail block of `x` to the front.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rigidification {
    /// `Δ^ε P4 P5 P1 P2 P3` in normal form.
    pub rigid: NormalForm,
    /// `c` with `c^{-1}·x·c = rigid`; equals `(P4'·P5')^{-1}`.
    pub conjugator: NormalForm,
    /// `P4'·P5'`, so that `rigid = m·x·m^{-1}`.
    pub moved_block: NormalForm,
}

impl Rigidification {
    /// Re-checks from scratch that `rigid` is a rigid, non-intrusive conjugate.
    pub fn validate(&self, x: &NormalForm, scheme: Scheme) -> Result<()> {
        if !self.rigid.is_rigid()? {
            return Err(BraidError::Invariant(
                "rigidified braid is not rigid".into(),
            ));
        }
        if x.conjugate_by(&self.conjugator)? != self.rigid {
            return Err(BraidError::Invariant(
                "conjugator does not conjugate".into(),
            ));
        }
        if !is_nonintrusive(x, &self.rigid, scheme)? {
            return Err(BraidError::Invariant("conjugation is intrusive".into()));
        }
        Ok(())
    }
}

/// Normalizes `P4 P5 · P1 P2`; if its initial factor is that of `P4 P5` and
/// its final factor that of `P1 P2`, returns the rigid conjugate
/// `Δ^ε P4 P5 P1 P2 P3`.
pub fn observation_test(x: &NormalForm, scheme: Scheme) -> Result<Option<Rigidification>> {
    let d = decompose(x, scheme)?;
    observation_from(&d, x.strands())
}

pub(crate) fn observation_from(d: &PieceDecomposition, n: usize) -> Result<Option<Rigidification>> {
    let p45 = d.p45();
    let p12 = d.p12();
    let z = p45.multiply(&p12)?;
    if z.canonical_length() == 0 {
        return Ok(None);
    }
    if z.initial_factor()? != p45.initial_factor()? || z.final_factor()? != p12.final_factor()? {
        return Ok(None);
    }
    let rigid = NormalForm::delta_power(n, d.eps())?
        .multiply(&z)?
        .multiply(d.p3())?;
    let moved_block = d.tail_block();
    Ok(Some(Rigidification {
        rigid,
        conjugator: moved_block.inverse(),
        moved_block,
    }))
}

/// With `t = (P1·P2) ∧ ∂(P4·P5)`: `φ(t^{-1}P1P2) = φ(P1P2)` and
/// `φ(t^{-1}∂(P4P5)) = φ(∂(P4P5))`. Sufficient for [`observation_test`].
pub fn symmetric_criterion(x: &NormalForm, scheme: Scheme) -> Result<bool> {
    let d = decompose(x, scheme)?;
    let p12 = d.p12();
    let c45 = d.p45().complement();
    let t_inv = p12.gcd(&c45)?.inverse();
    let lhs1 = t_inv.multiply(&p12)?;
    let lhs2 = t_inv.multiply(&c45)?;
    let same_last = |a: &NormalForm, b: &NormalForm| -> bool {
        matches!((a.final_factor(), b.final_factor()), (Ok(u), Ok(v)) if u == v)
    };
    Ok(same_last(&lhs1, &p12) && same_last(&lhs2, &c45))
}

/// Whether `P1 ≼ ∂P5`, with `P5 = τ^ε(P5')`.
pub fn prefix_of_complement(x: &NormalForm, scheme: Scheme) -> Result<bool> {
    let d = decompose(x, scheme)?;
    d.p1().left_divides(&d.p5().complement())
}

/// `Δ_{1,j}`: the half twist on the first `j` strands, as generator indices.
fn partial_delta(j: usize) -> Vec<usize> {
    let mut w = Vec::new();
    for top in (1..j).rev() {
        w.extend(1..=top);
    }
    w
}

/// The factor words of the explicit blocking braid
/// `Δ_{1,n−1}σ_{n−1} · Δ_{1,n−2}σ_{n−1}σ_{n−2} ⋯ Δ_{1,2}σ3σ2 · σ2`.
pub fn blocking_braid_words(n: usize) -> Result<Vec<ArtinWord>> {
    if n < 4 {
        return Err(BraidError::Unsupported(format!(
            "the explicit blocking braid needs n ≥ 4 (got {n})"
        )));
    }
    let mut words = Vec::new();
    let mut first = partial_delta(n - 1);
    first.push(n - 1);
    words.push(first);
    for j in (2..=n - 2).rev() {
        let mut w = partial_delta(j);
        w.extend([j + 1, j]);
        words.push(w);
    }
    words.push(vec![2]);
    words
        .into_iter()
        .map(|w| ArtinWord::positive(n, &w))
        .collect()
}

/// The explicit blocking braid in normal form. Its factors are exactly the
/// words of [`blocking_braid_words`].
pub fn blocking_braid(n: usize) -> Result<NormalForm> {
    let factors = blocking_braid_words(n)?
        .iter()
        .map(SimpleBraid::from_word)
        .collect::<Result<Vec<_>>>()?;
    NormalForm::from_parts(n, 0, factors)
}

/// Enumerates every `X` with `inf X = 0`, `ℓ(X) ≤ max_prefix_len` and `X·@`
/// in normal form (including `X = 1`). Returns the generator `i` if the only
/// nontrivial simple suffix of every `X·@` is `σ_i`.
pub fn blocking_generator(candidate: &NormalForm, max_prefix_len: usize) -> Result<Option<usize>> {
    if candidate.inf() != 0 {
        return Err(BraidError::Precondition("candidate must have inf 0".into()));
    }
    if candidate.canonical_length() == 0 {
        return Ok(None);
    }
    let n = candidate.strands();
    let suffix_atom = |s: SimpleBraid| -> Option<usize> {
        (s.length() == 1).then(|| s.finishing().first()).flatten()
    };
    let Some(gen) = suffix_atom(candidate.max_simple_suffix()?) else {
        return Ok(None);
    };
    let proper = SimpleBraid::all_proper(n)?;
    let head = candidate.factors()[0];
    // Depth-first from the right: prefix[k..] is the tail of X built so far.
    let mut stack: Vec<Vec<SimpleBraid>> = proper
        .iter()
        .filter(|b| b.is_left_weighted(&head))
        .map(|&b| vec![b])
        .collect();
    while let Some(tail) = stack.pop() {
        let mut factors = tail.clone();
        factors.extend_from_slice(candidate.factors());
        let product = NormalForm::from_parts_unchecked(n, 0, factors);
        if suffix_atom(product.max_simple_suffix()?) != Some(gen) {
            return Ok(None);
        }
        if tail.len() < max_prefix_len {
            let next = tail[0];
            for a in proper.iter().filter(|a| a.is_left_weighted(&next)) {
                let mut longer = Vec::with_capacity(tail.len() + 1);
                longer.push(*a);
                longer.extend_from_slice(&tail);
                stack.push(longer);
            }
        }
    }
    Ok(Some(gen))
}

pub fn verify_blocking(candidate: &NormalForm, max_prefix_len: usize) -> Result<bool> {
    Ok(blocking_generator(candidate, max_prefix_len)?.is_some())
}

/// Bounded search for a blocking braid of canonical length at most
/// `max_len`, checked against prefixes of length at most `max_prefix_len`.
/// Candidates are tried by increasing length, then lexicographically.
pub fn search_blocking(
    n: usize,
    max_len: usize,
    max_prefix_len: usize,
) -> Result<Option<NormalForm>> {
    if n > 6 {
        return Err(invalid("bounded blocking search is limited to n ≤ 6"));
    }
    let proper = SimpleBraid::all_proper(n)?;
    let mut layer: Vec<Vec<SimpleBraid>> = proper.iter().map(|&s| vec![s]).collect();
    for len in 1..=max_len {
        for f in &layer {
            let cand = NormalForm::from_parts_unchecked(n, 0, f.clone());
            if verify_blocking(&cand, max_prefix_len)? {
                return Ok(Some(cand));
            }
        }
        if len < max_len {
            layer = layer
                .iter()
                .flat_map(|f| {
                    let last = *f.last().expect("nonempty");
                    proper
                        .iter()
                        .filter(move |b| last.is_left_weighted(b))
                        .map(move |&b| {
                            let mut g = f.clone();
                            g.push(b);
                            g
                        })
                })
                .collect();
        }
    }
    Ok(None)
}
