//! Worker pool sizing. `PALPER_THREADS` bounds the number of workers; results
//! never depend on it because every parallel loop collects in input order.

use std::sync::OnceLock;

use rayon::{ThreadPool, ThreadPoolBuilder};

pub const THREADS_ENV: &str = "PALPER_THREADS";

fn requested_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0)
}

/// The shared pool, sized once from the environment (0 or unset: one worker
/// per core).
pub fn pool() -> &'static ThreadPool {
    static POOL: OnceLock<ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        ThreadPoolBuilder::new()
            .num_threads(requested_threads())
            .thread_name(|i| format!("palper-{i}"))
            .build()
            .expect("failed to start worker pool")
    })
}

/// Runs `f` inside the shared pool so nested rayon iterators use it.
pub fn install<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    pool().install(f)
}
