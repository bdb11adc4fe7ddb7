//! Sequential or data-parallel execution of independent work items.
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`] fans
//! out over the rayon pool. Without it, both modes run sequentially. Results
//! are always returned in input order.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            _ => items.into_iter().map(f).collect(),
        }
    }
}
