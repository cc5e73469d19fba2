//! A small worker pool whose results come back in submission order, so
//! output never depends on how many workers ran.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

pub const THREADS_VAR: &str = "TASKREL_THREADS";

/// Worker count from `TASKREL_THREADS`, else the available parallelism.
pub fn thread_count() -> Result<usize, String> {
    match std::env::var(THREADS_VAR) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(format!(
                "{THREADS_VAR} must be a positive integer, got {v:?}"
            )),
        },
        Err(_) => Ok(thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

pub type Job<'a, T> = Box<dyn FnOnce() -> T + Send + 'a>;

/// Runs `jobs` on at most `threads` workers and returns their results in
/// the order the jobs were given.
pub fn run_ordered<'a, T: Send>(jobs: Vec<Job<'a, T>>, threads: usize) -> Vec<T> {
    let n = jobs.len();
    let workers = threads.clamp(1, n.max(1));
    if workers == 1 {
        return jobs.into_iter().map(|j| j()).collect();
    }
    let queue: Vec<Mutex<Option<Job<'a, T>>>> =
        jobs.into_iter().map(|j| Mutex::new(Some(j))).collect();
    let results: Vec<Mutex<Option<T>>> = (0..n).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let job = queue[i]
                    .lock()
                    .expect("job lock")
                    .take()
                    .expect("each job runs once");
                *results[i].lock().expect("result lock") = Some(job());
            });
        }
    });
    results
        .into_iter()
        .map(|r| r.into_inner().expect("result lock").expect("every job ran"))
        .collect()
}
