//! Raw braid words over the Artin generators.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, BraidError, Result};

/// One Artin letter: `σ_index` or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(index: usize) -> Self {
        Letter {
            index,
            inverse: false,
        }
    }

    pub fn neg(index: usize) -> Self {
        Letter {
            index,
            inverse: true,
        }
    }

    pub fn signed(&self) -> i64 {
        if self.inverse {
            -(self.index as i64)
        } else {
            self.index as i64
        }
    }
}

/// A word in the Artin generators of `B_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArtinWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl ArtinWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands < 2 {
            return Err(invalid(format!("strand count {strands} < 2")));
        }
        if let Some(bad) = letters.iter().find(|l| l.index == 0 || l.index >= strands) {
            return Err(invalid(format!(
                "generator index {} outside [1, {}]",
                bad.index,
                strands - 1
            )));
        }
        Ok(ArtinWord { strands, letters })
    }

    /// Positive word from generator indices.
    pub fn positive(strands: usize, indices: &[usize]) -> Result<Self> {
        Self::new(strands, indices.iter().map(|&i| Letter::pos(i)).collect())
    }

    pub fn empty(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    /// Parses whitespace separated signed integers; `D` and `D-` stand for
    /// the half twist and its inverse.
    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        if strands < 2 {
            return Err(invalid(format!("strand count {strands} < 2")));
        }
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            match tok {
                "D" => letters.extend(delta_letters(strands, false)),
                "D-" => letters.extend(delta_letters(strands, true)),
                _ => {
                    let v: i64 = tok
                        .parse()
                        .map_err(|_| BraidError::Parse(format!("malformed token {tok:?}")))?;
                    if v == 0 {
                        return Err(BraidError::Parse("generator index 0".into()));
                    }
                    letters.push(Letter {
                        index: v.unsigned_abs() as usize,
                        inverse: v < 0,
                    });
                }
            }
        }
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.inverse)
    }

    pub fn concat(&self, other: &ArtinWord) -> Result<ArtinWord> {
        if self.strands != other.strands {
            return Err(invalid("concatenating words with different strand counts"));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(ArtinWord {
            strands: self.strands,
            letters,
        })
    }

    /// Formal inverse: reversed word with every sign flipped.
    pub fn inverse(&self) -> ArtinWord {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| Letter {
                index: l.index,
                inverse: !l.inverse,
            })
            .collect();
        ArtinWord {
            strands: self.strands,
            letters,
        }
    }
}

impl fmt::Display for ArtinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}", l.signed())?;
        }
        Ok(())
    }
}

impl FromStr for Letter {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self> {
        let v: i64 = s
            .parse()
            .map_err(|_| BraidError::Parse(format!("malformed token {s:?}")))?;
        if v == 0 {
            return Err(BraidError::Parse("generator index 0".into()));
        }
        Ok(Letter {
            index: v.unsigned_abs() as usize,
            inverse: v < 0,
        })
    }
}

/// (σ1⋯σ_{n−1})(σ1⋯σ_{n−2})⋯σ1, or its formal inverse.
fn delta_letters(n: usize, inverse: bool) -> Vec<Letter> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for top in (1..n).rev() {
        for i in 1..=top {
            out.push(Letter::pos(i));
        }
    }
    if inverse {
        out.reverse();
        for l in &mut out {
            l.inverse = true;
        }
    }
    out
}
