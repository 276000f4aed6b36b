//! Execution policy for the data-parallel loops.
//!
//! With the `parallel` feature the cell and face loops run on the rayon
//! thread pool; without it, or with [`Execution::Sequential`], they run on
//! the calling thread. Both paths visit every item exactly once and write
//! disjoint output chunks, so results are bit-identical.

/// How the per-cell and per-face loops are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// True when loops will actually be dispatched to the thread pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Calls `f(index, chunk)` for every `chunk_len`-sized chunk of `data`.
pub fn for_each_chunk<T, F>(exec: Execution, data: &mut [T], chunk_len: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    if chunk_len == 0 {
        return;
    }
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        data.par_chunks_mut(chunk_len)
            .enumerate()
            .for_each(|(i, c)| f(i, c));
        return;
    }
    let _ = exec;
    data.chunks_mut(chunk_len).enumerate().for_each(|(i, c)| f(i, c));
}

/// Fallible variant of [`for_each_chunk`]; returns the error of the lowest
/// failing index so that error reports do not depend on scheduling.
pub fn try_for_each_chunk<T, E, F>(
    exec: Execution,
    data: &mut [T],
    chunk_len: usize,
    f: F,
) -> Result<(), E>
where
    T: Send,
    E: Send,
    F: Fn(usize, &mut [T]) -> Result<(), E> + Sync + Send,
{
    if chunk_len == 0 {
        return Ok(());
    }
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        let errors: Vec<(usize, E)> = data
            .par_chunks_mut(chunk_len)
            .enumerate()
            .filter_map(|(i, c)| f(i, c).err().map(|e| (i, e)))
            .collect();
        return match errors.into_iter().min_by_key(|(i, _)| *i) {
            Some((_, e)) => Err(e),
            None => Ok(()),
        };
    }
    let _ = exec;
    for (i, c) in data.chunks_mut(chunk_len).enumerate() {
        f(i, c)?;
    }
    Ok(())
}

/// Maximum of `f(i)` over `0..n` (0 for an empty range).
pub fn max_over<F>(exec: Execution, n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(&f).reduce(|| 0.0, f64::max);
    }
    let _ = exec;
    (0..n).map(f).fold(0.0, f64::max)
}
