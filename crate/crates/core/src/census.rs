//! Exact counting and uniform sampling of normal forms.
//!
//! Normal forms of `inf 0` and canonical length `l` are the length-`l` paths
//! in the automaton whose states are the proper simple braids, with an edge
//! `a → b` whenever `S(b) ⊆ F(a)`. The number of paths leaving a state only
//! depends on its finishing set, so path counts are tabulated per finishing
//! set and the states are grouped into `(S, F)` classes.

use std::collections::BTreeMap;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, BraidError, Result};
use crate::normal_form::NormalForm;
use crate::par::Exec;
use crate::simple::{GenSet, SimpleBraid};

/// Largest strand count for which the automaton is built.
pub const MAX_CENSUS_STRANDS: usize = 8;

#[derive(Debug, Clone)]
struct Class {
    start: GenSet,
    finish: GenSet,
    members: Vec<SimpleBraid>,
}

/// The left-weighting automaton of `B_n` with path counts up to a length.
#[derive(Debug, Clone)]
pub struct TransitionGraph {
    n: usize,
    classes: Vec<Class>,
    /// `paths[r][F]`: normal forms of length `r` whose first factor `b`
    /// satisfies `S(b) ⊆ F`. With `F` the finishing set of a state, this is
    /// the number of ways to continue that state by `r` more factors.
    paths: Vec<Vec<BigUint>>,
}

impl TransitionGraph {
    pub fn new(n: usize, max_len: usize) -> Result<Self> {
        if n < 2 {
            return Err(invalid("need at least 2 strands"));
        }
        if n > MAX_CENSUS_STRANDS {
            return Err(invalid(format!("census supports n ≤ {MAX_CENSUS_STRANDS}")));
        }
        let mut grouped: BTreeMap<(GenSet, GenSet), Vec<SimpleBraid>> = BTreeMap::new();
        for s in SimpleBraid::all_proper(n)? {
            grouped
                .entry((s.starting(), s.finishing()))
                .or_default()
                .push(s);
        }
        let classes = grouped
            .into_iter()
            .map(|((start, finish), members)| Class {
                start,
                finish,
                members,
            })
            .collect();
        let mut g = TransitionGraph {
            n,
            classes,
            paths: Vec::new(),
        };
        g.extend_to(max_len);
        Ok(g)
    }

    fn masks(&self) -> usize {
        1 << (self.n - 1)
    }

    fn extend_to(&mut self, max_len: usize) {
        let m = self.masks();
        if self.paths.is_empty() {
            self.paths.push(vec![BigUint::one(); m]);
        }
        while self.paths.len() <= max_len {
            let prev = self.paths.last().expect("seeded");
            // by starting set: paths of the new length beginning in a class
            let mut table = vec![BigUint::zero(); m];
            for c in &self.classes {
                let w = &prev[c.finish.0 as usize];
                if !w.is_zero() {
                    table[c.start.0 as usize] += w * BigUint::from(c.members.len());
                }
            }
            // subset sums over starting sets
            for bit in 0..self.n - 1 {
                for mask in 0..m {
                    if mask & (1 << bit) != 0 {
                        let add = table[mask ^ (1 << bit)].clone();
                        table[mask] += add;
                    }
                }
            }
            self.paths.push(table);
        }
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn max_len(&self) -> usize {
        self.paths.len() - 1
    }

    /// Number of automaton states, `n! − 2`.
    pub fn node_count(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }

    fn check_len(&self, l: usize) -> Result<()> {
        if l > self.max_len() {
            return Err(invalid(format!(
                "graph was built up to length {}",
                self.max_len()
            )));
        }
        Ok(())
    }

    /// `|B_n^{ε,l}|`, independent of `ε`.
    pub fn sphere(&self, l: usize) -> Result<BigUint> {
        self.check_len(l)?;
        Ok(self.paths[l][self.masks() - 1].clone())
    }

    /// Size of the ball of radius `l`: `Σ_k (2l − k + 1)·|B_n^{0,k}|`.
    pub fn ball(&self, l: usize) -> Result<BigUint> {
        self.check_len(l)?;
        let mut total = BigUint::zero();
        for k in 0..=l {
            total += self.sphere(k)? * BigUint::from(2 * l - k + 1);
        }
        Ok(total)
    }

    /// Draws a uniformly random element of `B_n^{eps,l}`.
    pub fn sample_sphere<R: Rng + ?Sized>(
        &self,
        l: usize,
        eps: i64,
        rng: &mut R,
    ) -> Result<NormalForm> {
        self.check_len(l)?;
        if l > 0 && self.classes.is_empty() {
            return Err(invalid(format!("B_{}^{{ε,{l}}} is empty", self.n)));
        }
        let mut factors = Vec::with_capacity(l);
        let mut allowed = GenSet::full(self.n);
        for remaining in (0..l).rev() {
            let weights = &self.paths[remaining];
            let eligible = self.classes.iter().filter(|c| c.start.is_subset(allowed));
            let total = self.paths[remaining + 1][allowed.0 as usize].clone();
            let mut ticket = rng.gen_biguint_below(&total);
            let mut chosen = None;
            for c in eligible {
                let each = &weights[c.finish.0 as usize];
                let block = each * BigUint::from(c.members.len());
                if ticket < block {
                    let idx = (ticket / each).to_usize().expect("member index");
                    chosen = Some(c.members[idx]);
                    break;
                }
                ticket -= block;
            }
            let s =
                chosen.ok_or_else(|| BraidError::Invariant("sampler overran weights".into()))?;
            allowed = s.finishing();
            factors.push(s);
        }
        NormalForm::from_parts(self.n, eps, factors)
    }

    /// Draws a uniformly random element of the ball of radius `l`, i.e. of
    /// the braids with `inf ≥ −l` and `sup ≤ l`.
    pub fn sample_ball<R: Rng + ?Sized>(&self, l: usize, rng: &mut R) -> Result<NormalForm> {
        let mut ticket = rng.gen_biguint_below(&self.ball(l)?);
        for k in 0..=l {
            let cell = self.sphere(k)?;
            let block = &cell * BigUint::from(2 * l - k + 1);
            if ticket < block {
                let slot = (ticket / cell).to_i64().expect("slot index");
                return self.sample_sphere(k, slot - l as i64, rng);
            }
            ticket -= block;
        }
        Err(BraidError::Invariant("ball sampler overran weights".into()))
    }
}

pub fn count_sphere(n: usize, l: usize) -> Result<BigUint> {
    TransitionGraph::new(n, l)?.sphere(l)
}

pub fn count_ball(n: usize, l: usize) -> Result<BigUint> {
    TransitionGraph::new(n, l)?.ball(l)
}

/// Successive ratios `|B^{0,l}| / |B^{0,l−1}|` for `l = 2..=l_max`; the last
/// one estimates the growth rate.
pub fn growth_ratios(n: usize, l_max: usize) -> Result<Vec<f64>> {
    if n < 3 {
        return Err(invalid(
            "growth is undefined for n = 2: spheres of positive radius are empty",
        ));
    }
    if l_max < 2 {
        return Err(invalid("growth estimate needs l_max ≥ 2"));
    }
    let g = TransitionGraph::new(n, l_max)?;
    (2..=l_max)
        .map(|l| Ok(ratio(&g.sphere(l)?, &g.sphere(l - 1)?)))
        .collect()
}

pub fn growth_rate(n: usize, l_max: usize) -> Result<f64> {
    Ok(*growth_ratios(n, l_max)?.last().expect("nonempty"))
}

fn ratio(a: &BigUint, b: &BigUint) -> f64 {
    // keep ~60 significant bits of each before converting
    let shift = b.bits().saturating_sub(60);
    let a = (a >> shift).to_f64().unwrap_or(f64::INFINITY);
    let b = (b >> shift).to_f64().unwrap_or(f64::INFINITY);
    a / b
}

/// The random stream for sample `index` at length `l`: independent of the
/// order in which samples are drawn.
pub fn sample_rng(seed: u64, l: usize, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((l as u64) << 32) | (index & 0xffff_ffff));
    rng
}

/// Parameters of a batch of samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub n: usize,
    /// Canonical length for spheres, radius for balls.
    pub l: usize,
    pub eps: i64,
    pub samples: u64,
    pub seed: u64,
}

impl SampleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(invalid("sample count must be at least 1"));
        }
        if self.n < 2 || self.n > MAX_CENSUS_STRANDS {
            return Err(invalid(format!("n must lie in [2, {MAX_CENSUS_STRANDS}]")));
        }
        Ok(())
    }
}

pub fn sample_sphere(cfg: &SampleConfig, exec: Exec) -> Result<Vec<NormalForm>> {
    cfg.validate()?;
    let g = TransitionGraph::new(cfg.n, cfg.l)?;
    exec.map(cfg.samples, |i| {
        g.sample_sphere(cfg.l, cfg.eps, &mut sample_rng(cfg.seed, cfg.l, i))
    })
}

pub fn sample_ball(cfg: &SampleConfig, exec: Exec) -> Result<Vec<NormalForm>> {
    cfg.validate()?;
    let g = TransitionGraph::new(cfg.n, cfg.l)?;
    exec.map(cfg.samples, |i| {
        g.sample_ball(cfg.l, &mut sample_rng(cfg.seed, cfg.l, i))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    /// All normal forms with inf 0 and length `l`, by brute force.
    fn enumerate(n: usize, l: usize) -> Vec<Vec<SimpleBraid>> {
        let proper = SimpleBraid::all_proper(n).unwrap();
        let mut layer: Vec<Vec<SimpleBraid>> = vec![vec![]];
        for _ in 0..l {
            layer = layer
                .into_iter()
                .flat_map(|f| {
                    proper
                        .iter()
                        .filter(|b| f.last().is_none_or(|a| a.is_left_weighted(b)))
                        .map(|&b| {
                            let mut g = f.clone();
                            g.push(b);
                            g
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        layer
    }

    #[test]
    fn sphere_counts() {
        assert_eq!(count_sphere(3, 1).unwrap(), BigUint::from(4u32));
        assert_eq!(count_sphere(3, 2).unwrap(), BigUint::from(8u32));
        assert_eq!(count_sphere(3, 3).unwrap(), BigUint::from(16u32));
        assert_eq!(count_sphere(4, 1).unwrap(), BigUint::from(22u32));
        assert_eq!(count_sphere(5, 0).unwrap(), BigUint::one());
        assert!(count_sphere(2, 3).unwrap().is_zero());
        for n in [3, 4] {
            for l in 0..=4 {
                assert_eq!(
                    count_sphere(n, l).unwrap(),
                    BigUint::from(enumerate(n, l).len())
                );
            }
        }
    }

    #[test]
    fn ball_counts() {
        assert_eq!(count_ball(4, 0).unwrap(), BigUint::one());
        assert_eq!(count_ball(3, 1).unwrap(), BigUint::from(11u32));
        assert_eq!(count_ball(3, 2).unwrap(), BigUint::from(45u32));
    }

    #[test]
    fn growth() {
        assert!(growth_ratios(3, 10).unwrap().iter().all(|&r| r == 2.0));
        assert!(growth_rate(2, 5).is_err());
        assert!(growth_rate(3, 1).is_err());
        let r = growth_rate(4, 30).unwrap();
        assert!(r > 2.0 && r < 22.0, "{r}");
    }

    #[test]
    fn samples_are_valid_and_deterministic() {
        let cfg = SampleConfig {
            n: 4,
            l: 6,
            eps: -3,
            samples: 50,
            seed: 9,
        };
        let a = sample_sphere(&cfg, Exec::Parallel).unwrap();
        let b = sample_sphere(&cfg, Exec::Sequential).unwrap();
        assert_eq!(a, b);
        for x in &a {
            x.check().unwrap();
            assert_eq!((x.inf(), x.canonical_length()), (-3, 6));
        }
        let balls = sample_ball(&SampleConfig { l: 5, ..cfg }, Exec::Parallel).unwrap();
        for x in &balls {
            x.check().unwrap();
            assert!(x.inf() >= -5 && x.sup() <= 5);
        }
        let id = sample_ball(&SampleConfig { l: 0, ..cfg }, Exec::Sequential).unwrap();
        assert!(id.iter().all(NormalForm::is_identity));
    }

    fn chi_square_ok(counts: &HashMap<NormalForm, u64>, cells: usize, draws: u64) {
        assert_eq!(counts.len(), cells);
        let expected = draws as f64 / cells as f64;
        let chi: f64 = counts
            .values()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // 0.999 quantiles of χ² with 3, 7 and 10 degrees of freedom
        let limit = match cells - 1 {
            3 => 16.27,
            7 => 24.32,
            10 => 29.59,
            d => panic!("no quantile for {d} dof"),
        };
        assert!(chi < limit, "χ² = {chi} with {cells} cells");
    }

    #[test]
    fn uniform_on_small_spheres_and_balls() {
        let g = TransitionGraph::new(3, 2).unwrap();
        let draws = 10_000;
        for (l, cells) in [(1, 4), (2, 8)] {
            let mut counts = HashMap::new();
            for i in 0..draws {
                let x = g.sample_sphere(l, 0, &mut sample_rng(1, l, i)).unwrap();
                *counts.entry(x).or_insert(0) += 1;
            }
            chi_square_ok(&counts, cells, draws);
        }
        let mut counts = HashMap::new();
        for i in 0..draws {
            let x = g.sample_ball(1, &mut sample_rng(2, 1, i)).unwrap();
            *counts.entry(x).or_insert(0) += 1;
        }
        chi_square_ok(&counts, 11, draws);
    }

    #[test]
    fn delta_shift_is_a_bijection_on_spheres() {
        for k in 0..=3 {
            let base: Vec<NormalForm> = enumerate(3, k)
                .into_iter()
                .map(|f| NormalForm::from_parts(3, 0, f).unwrap())
                .collect();
            for i in -2..=2 {
                let d = NormalForm::delta_power(3, i).unwrap();
                let mut shifted: Vec<NormalForm> =
                    base.iter().map(|x| d.multiply(x).unwrap()).collect();
                assert!(shifted
                    .iter()
                    .all(|x| x.inf() == i && x.canonical_length() == k));
                shifted.sort_by_key(|x| x.to_string());
                shifted.dedup();
                assert_eq!(shifted.len(), base.len());
            }
        }
    }
}
