//! Data-parallel batch execution with a sequential fallback.

use serde::{Deserialize, Serialize};

/// How a batch of independent per-sample jobs is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exec {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise runs
    /// sequentially.
    #[default]
    Parallel,
}

impl Exec {
    /// `f(0), …, f(count − 1)` in index order, stopping at the first error.
    /// Results do not depend on the execution mode.
    pub fn map<T, E, F>(self, count: u64, f: F) -> Result<Vec<T>, E>
    where
        T: Send,
        E: Send,
        F: Fn(u64) -> Result<T, E> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..count).into_par_iter().map(f).collect()
            }
            _ => (0..count).map(f).collect(),
        }
    }

    /// Number of indices in `0..count` for which `pred` holds.
    pub fn count<E, F>(self, count: u64, pred: F) -> Result<u64, E>
    where
        E: Send,
        F: Fn(u64) -> Result<bool, E> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..count)
                    .into_par_iter()
                    .map(|i| pred(i).map(u64::from))
                    .try_reduce(|| 0, |a, b| Ok(a + b))
            }
            _ => {
                let mut hits = 0;
                for i in 0..count {
                    hits += u64::from(pred(i)?);
                }
                Ok(hits)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let f = |i: u64| Ok::<_, ()>(i * i % 7);
        assert_eq!(Exec::Sequential.map(100, f), Exec::Parallel.map(100, f));
        let p = |i: u64| Ok::<_, ()>(i.is_multiple_of(3));
        assert_eq!(Exec::Sequential.count(100, p), Ok(34));
        assert_eq!(Exec::Parallel.count(100, p), Ok(34));
    }

    #[test]
    fn first_error_propagates() {
        let f = |i: u64| if i == 5 { Err(i) } else { Ok(i) };
        assert!(Exec::Sequential.map(10, f).is_err());
        assert!(Exec::Parallel.count(10, |i| f(i).map(|_| true)).is_err());
    }
}
