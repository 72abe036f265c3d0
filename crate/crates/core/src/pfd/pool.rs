//! Ordered parallel map over independent per-factor tasks.

use std::panic;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::budget;

/// Applies `f` to every item using up to `jobs` scoped worker threads and
/// returns the results in input order. Workers inherit the caller's budget.
/// A panic (including a budget interrupt) in any worker is re-raised here
/// after all workers have stopped.
pub fn map_ordered<T, R, Fun>(items: &[T], jobs: usize, f: Fun) -> Vec<R>
where
    T: Sync,
    R: Send,
    Fun: Fn(&T) -> R + Sync,
{
    if jobs <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let current = budget::current();
    let workers = jobs.min(items.len());
    let (f, next) = (&f, &next);

    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                let b = current.clone();
                scope.spawn(move || {
                    budget::with_budget(b, || {
                        let mut done = Vec::new();
                        loop {
                            let i = next.fetch_add(1, Ordering::Relaxed);
                            if i >= items.len() {
                                break done;
                            }
                            done.push((i, f(&items[i])));
                        }
                    })
                })
            })
            .collect();

        let mut slots: Vec<Option<R>> = (0..items.len()).map(|_| None).collect();
        let mut failure = None;
        for h in handles {
            match h.join() {
                Ok(done) => {
                    for (i, r) in done {
                        slots[i] = Some(r);
                    }
                }
                Err(payload) => {
                    // stop the remaining workers at their next checkpoint
                    if let Some(b) = &current {
                        if let Some(why) = payload.downcast_ref::<budget::Interrupt>() {
                            b.cancel(*why);
                        }
                    }
                    failure.get_or_insert(payload);
                }
            }
        }
        if let Some(payload) = failure {
            panic::resume_unwind(payload);
        }
        slots
            .into_iter()
            .map(|s| s.expect("every index is claimed exactly once"))
            .collect()
    })
}
