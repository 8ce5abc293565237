//! Order-preserving data-parallel map.
//!
//! With the `parallel` feature the work runs on a rayon pool sized by the
//! caller; without it every call degrades to a sequential loop. Results are
//! always returned in input order, so output never depends on scheduling.

/// Worker count. `0` means "use the available parallelism".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Jobs(pub usize);

impl Jobs {
    pub const SEQUENTIAL: Jobs = Jobs(1);
    pub const AUTO: Jobs = Jobs(0);

    pub fn is_sequential(self) -> bool {
        self.0 == 1 || !cfg!(feature = "parallel")
    }
}

impl Default for Jobs {
    fn default() -> Self {
        Jobs::AUTO
    }
}

pub fn map<T, R, F>(items: &[T], jobs: Jobs, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if jobs.is_sequential() || items.len() < 2 {
        return items.iter().map(f).collect();
    }
    parallel_map(items, jobs, f)
}

/// Maps `f` over `0..count`.
pub fn map_range<R, F>(count: u64, jobs: Jobs, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    if jobs.is_sequential() || count < 2 {
        return (0..count).map(f).collect();
    }
    parallel_map_range(count, jobs, f)
}

#[cfg(feature = "parallel")]
fn with_pool<R: Send>(jobs: Jobs, op: impl FnOnce() -> R + Send) -> R {
    if jobs.0 == 0 {
        return op();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.0).build() {
        Ok(pool) => pool.install(op),
        Err(_) => op(),
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, R, F>(items: &[T], jobs: Jobs, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    with_pool(jobs, || items.par_iter().map(f).collect())
}

#[cfg(feature = "parallel")]
fn parallel_map_range<R, F>(count: u64, jobs: Jobs, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    use rayon::prelude::*;
    with_pool(jobs, || (0..count).into_par_iter().map(f).collect())
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, R, F>(items: &[T], _jobs: Jobs, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map_range<R, F>(count: u64, _jobs: Jobs, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    (0..count).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order() {
        let items: Vec<u64> = (0..1000).collect();
        for jobs in [Jobs(1), Jobs(4), Jobs::AUTO] {
            let out = map(&items, jobs, |x| x * x);
            assert_eq!(out, items.iter().map(|x| x * x).collect::<Vec<_>>());
            assert_eq!(map_range(1000, jobs, |i| i + 1), (1..=1000).collect::<Vec<_>>());
        }
    }
}
