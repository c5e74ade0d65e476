//! Replica scheduling. Work is cut into fixed batches whose random streams
//! depend only on the master seed and the batch index, so results do not
//! depend on the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Replicas per task.
pub const BATCH: usize = 2048;

/// Mixes a master seed, a stream label and a task index into a task seed.
pub fn derive_seed(master: u64, stream: u64, index: u64) -> u64 {
    let mut z = master;
    for word in [stream, index] {
        z = splitmix(z ^ splitmix(word.wrapping_add(0x632b_e59b_d9b4_e019)));
    }
    z
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Generator for task `index` of `stream`.
pub fn task_rng(master: u64, stream: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, stream, index))
}

/// Number of batches needed for `replicas` replicas and the size of each.
pub fn batches(replicas: usize) -> impl Iterator<Item = (usize, usize)> {
    let count = replicas.div_ceil(BATCH);
    (0..count).map(move |b| (b, BATCH.min(replicas - b * BATCH)))
}

#[derive(Debug, Clone)]
pub struct Executor {
    workers: usize,
    #[cfg(feature = "parallel")]
    pool: Option<std::sync::Arc<rayon::ThreadPool>>,
}

impl Executor {
    pub fn new(workers: usize) -> Result<Self> {
        if workers == 0 {
            return Err(Error::InvalidParameter("workers must be at least 1".into()));
        }
        #[cfg(feature = "parallel")]
        let pool = if workers > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
            Some(std::sync::Arc::new(pool))
        } else {
            None
        };
        Ok(Self {
            workers,
            #[cfg(feature = "parallel")]
            pool,
        })
    }

    pub fn sequential() -> Self {
        Self {
            workers: 1,
            #[cfg(feature = "parallel")]
            pool: None,
        }
    }

    /// One worker per available core.
    pub fn available() -> Self {
        let n = std::thread::available_parallelism().map_or(1, |n| n.get());
        Self::new(n).unwrap_or_else(|_| Self::sequential())
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    /// `task(i)` for `i` in `0..count`, in index order.
    pub fn map<T, F>(&self, count: usize, task: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            use rayon::prelude::*;
            return pool.install(|| (0..count).into_par_iter().map(&task).collect());
        }
        (0..count).map(task).collect()
    }

    /// Folds `task` over `0..count` into per-worker accumulators and merges
    /// them. The result is independent of scheduling when `merge` is
    /// associative and commutative (for example integer counts).
    pub fn fold<T, I, F, M>(&self, count: usize, init: I, task: F, merge: M) -> T
    where
        T: Send,
        I: Fn() -> T + Sync + Send,
        F: Fn(&mut T, usize) + Sync + Send,
        M: Fn(T, T) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            use rayon::prelude::*;
            return pool.install(|| {
                (0..count)
                    .into_par_iter()
                    .fold(&init, |mut acc, i| {
                        task(&mut acc, i);
                        acc
                    })
                    .reduce(&init, &merge)
            });
        }
        #[cfg(not(feature = "parallel"))]
        let _ = &merge;
        let mut acc = init();
        for i in 0..count {
            task(&mut acc, i);
        }
        acc
    }
}

impl Default for Executor {
    fn default() -> Self {
        Self::sequential()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_differ_by_stream_and_index() {
        let a = derive_seed(1, 0, 0);
        assert_ne!(a, derive_seed(1, 0, 1));
        assert_ne!(a, derive_seed(1, 1, 0));
        assert_ne!(a, derive_seed(2, 0, 0));
        assert_eq!(a, derive_seed(1, 0, 0));
    }

    #[test]
    fn batches_cover_replicas() {
        let b: Vec<_> = batches(2 * BATCH + 5).collect();
        assert_eq!(b, vec![(0, BATCH), (1, BATCH), (2, 5)]);
        assert_eq!(batches(0).count(), 0);
    }

    #[test]
    fn map_and_fold_agree_across_workers() {
        let seq = Executor::sequential();
        let par = Executor::new(3).unwrap();
        let f = |i: usize| derive_seed(7, 0, i as u64) % 1000;
        assert_eq!(seq.map(100, f), par.map(100, f));
        let sum = |e: &Executor| e.fold(100, || 0u64, |acc, i| *acc += f(i), |a, b| a + b);
        assert_eq!(sum(&seq), sum(&par));
        assert!(Executor::new(0).is_err());
    }
}
