//! Bulk-synchronous worker pool. Each call is one superstep: items are
//! processed independently and results come back in input order, so outputs
//! never depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Result, UfsError};

pub struct Executor {
    workers: usize,
    #[cfg(feature = "parallel")]
    pool: Option<rayon::ThreadPool>,
}

impl Executor {
    /// Single-threaded executor; never touches rayon.
    pub fn sequential() -> Self {
        Executor {
            workers: 1,
            #[cfg(feature = "parallel")]
            pool: None,
        }
    }

    /// Pool with `workers` threads. Without the `parallel` feature every
    /// worker count runs sequentially.
    pub fn new(workers: usize) -> Result<Self> {
        if workers == 0 {
            return Err(UfsError::InvalidConfig("worker_count must be at least 1".into()));
        }
        if workers == 1 {
            return Ok(Self::sequential());
        }
        #[cfg(feature = "parallel")]
        {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .thread_name(|i| format!("ufs-worker-{i}"))
                .build()
                .map_err(|e| UfsError::InvalidConfig(format!("cannot start worker pool: {e}")))?;
            Ok(Executor { workers, pool: Some(pool) })
        }
        #[cfg(not(feature = "parallel"))]
        {
            Ok(Executor { workers })
        }
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            return pool.install(|| items.par_iter().map(f).collect());
        }
        items.iter().map(f).collect()
    }

    pub fn for_each_mut<T, F>(&self, items: &mut [T], f: F)
    where
        T: Send,
        F: Fn(&mut T) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            pool.install(|| items.par_iter_mut().for_each(f));
            return;
        }
        items.iter_mut().for_each(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order_for_any_worker_count() {
        let items: Vec<u32> = (0..1000).collect();
        let expect: Vec<u32> = items.iter().map(|x| x * 3).collect();
        for w in [1, 2, 4] {
            let exec = Executor::new(w).unwrap();
            assert_eq!(exec.map(&items, |x| x * 3), expect);
        }
    }

    #[test]
    fn zero_workers_rejected() {
        assert!(Executor::new(0).is_err());
    }
}
