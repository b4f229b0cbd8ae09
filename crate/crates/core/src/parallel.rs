use rayon::ThreadPoolBuilder;

/// Runs `job` on a dedicated pool of `threads` workers; 0 uses the global
/// pool. Callers sort their merged output, so results never depend on the
/// worker count.
pub(crate) fn with_threads<R: Send>(threads: usize, job: impl FnOnce() -> R + Send) -> R {
    if threads == 0 {
        return job();
    }
    match ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(job),
        Err(_) => job(),
    }
}
