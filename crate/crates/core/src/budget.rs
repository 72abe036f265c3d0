//! Cooperative interruption and heap accounting.
//!
//! Long-running kernels call [`checkpoint`]. When the current thread runs
//! under a [`Budget`] that has been cancelled, passed its deadline, or
//! exceeded its heap allowance, the checkpoint unwinds with an
//! [`Interrupt`] payload that [`run_with_budget`] turns back into a value.
//! All kernels are pure, so unwinding out of them leaves nothing half-built.
//!
//! Heap accounting only works when the final binary installs
//! [`CountingAlloc`] as its global allocator.

use std::alloc::{GlobalAlloc, Layout, System};
use std::cell::RefCell;
use std::panic::{self, AssertUnwindSafe};
use std::sync::atomic::{AtomicBool, AtomicU8, AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Instant;

/// Why a budgeted computation stopped early.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interrupt {
    Timeout,
    MemoryLimit,
}

const RUNNING: u8 = 0;
const TIMED_OUT: u8 = 1;
const OUT_OF_MEMORY: u8 = 2;

#[derive(Debug)]
pub struct Budget {
    state: AtomicU8,
    deadline: Option<Instant>,
    heap_limit: Option<usize>,
    heap_base: usize,
}

impl Budget {
    pub fn new(deadline: Option<Instant>, heap_limit: Option<usize>) -> Arc<Self> {
        Arc::new(Budget {
            state: AtomicU8::new(RUNNING),
            deadline,
            heap_limit,
            heap_base: live_bytes(),
        })
    }

    pub fn unlimited() -> Arc<Self> {
        Self::new(None, None)
    }

    /// Requests a stop; honored at the next checkpoint.
    pub fn cancel(&self, why: Interrupt) {
        let code = match why {
            Interrupt::Timeout => TIMED_OUT,
            Interrupt::MemoryLimit => OUT_OF_MEMORY,
        };
        let _ = self
            .state
            .compare_exchange(RUNNING, code, Ordering::SeqCst, Ordering::SeqCst);
    }

    pub fn interrupted(&self) -> Option<Interrupt> {
        match self.state.load(Ordering::Relaxed) {
            TIMED_OUT => Some(Interrupt::Timeout),
            OUT_OF_MEMORY => Some(Interrupt::MemoryLimit),
            _ => None,
        }
    }

    fn poll(&self) -> Option<Interrupt> {
        if let Some(why) = self.interrupted() {
            return Some(why);
        }
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.cancel(Interrupt::Timeout);
        } else if let Some(limit) = self.heap_limit {
            if counting_active() && live_bytes().saturating_sub(self.heap_base) > limit {
                self.cancel(Interrupt::MemoryLimit);
            }
        }
        self.interrupted()
    }
}

thread_local! {
    static CURRENT: RefCell<Option<Arc<Budget>>> = const { RefCell::new(None) };
}

/// The budget installed on this thread, if any.
pub fn current() -> Option<Arc<Budget>> {
    CURRENT.with(|c| c.borrow().clone())
}

struct Restore(Option<Arc<Budget>>);

impl Drop for Restore {
    fn drop(&mut self) {
        let prev = self.0.take();
        CURRENT.with(|c| *c.borrow_mut() = prev);
    }
}

/// Runs `f` with `budget` installed on this thread (or none).
pub fn with_budget<R>(budget: Option<Arc<Budget>>, f: impl FnOnce() -> R) -> R {
    let prev = CURRENT.with(|c| std::mem::replace(&mut *c.borrow_mut(), budget));
    let _restore = Restore(prev);
    f()
}

/// Runs `f` under `budget`, converting an interrupt into `Err`.
/// Panics that are not interrupts propagate unchanged.
pub fn run_with_budget<R>(budget: Arc<Budget>, f: impl FnOnce() -> R) -> Result<R, Interrupt> {
    match panic::catch_unwind(AssertUnwindSafe(|| with_budget(Some(budget), f))) {
        Ok(v) => Ok(v),
        Err(payload) => match payload.downcast::<Interrupt>() {
            Ok(why) => Err(*why),
            Err(other) => panic::resume_unwind(other),
        },
    }
}

/// Unwinds with an [`Interrupt`] if the current budget is exhausted.
#[inline]
pub fn checkpoint() {
    let hit = CURRENT.with(|c| c.borrow().as_ref().and_then(|b| b.poll()));
    if let Some(why) = hit {
        // resume_unwind skips the panic hook: no stderr noise for a timeout
        panic::resume_unwind(Box::new(why));
    }
}

static LIVE: AtomicUsize = AtomicUsize::new(0);
static PEAK: AtomicUsize = AtomicUsize::new(0);
static ACTIVE: AtomicBool = AtomicBool::new(false);

/// Global allocator wrapper that tracks live and peak heap bytes.
pub struct CountingAlloc;

unsafe impl GlobalAlloc for CountingAlloc {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        let p = System.alloc(layout);
        if !p.is_null() {
            record_alloc(layout.size());
        }
        p
    }

    unsafe fn alloc_zeroed(&self, layout: Layout) -> *mut u8 {
        let p = System.alloc_zeroed(layout);
        if !p.is_null() {
            record_alloc(layout.size());
        }
        p
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        System.dealloc(ptr, layout);
        LIVE.fetch_sub(layout.size(), Ordering::Relaxed);
    }

    unsafe fn realloc(&self, ptr: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        let p = System.realloc(ptr, layout, new_size);
        if !p.is_null() {
            LIVE.fetch_sub(layout.size(), Ordering::Relaxed);
            record_alloc(new_size);
        }
        p
    }
}

#[inline]
fn record_alloc(size: usize) {
    let live = LIVE.fetch_add(size, Ordering::Relaxed) + size;
    PEAK.fetch_max(live, Ordering::Relaxed);
    if !ACTIVE.load(Ordering::Relaxed) {
        ACTIVE.store(true, Ordering::Relaxed);
    }
}

/// True once [`CountingAlloc`] has served an allocation in this process.
pub fn counting_active() -> bool {
    ACTIVE.load(Ordering::Relaxed)
}

pub fn live_bytes() -> usize {
    LIVE.load(Ordering::Relaxed)
}

pub fn peak_bytes() -> usize {
    PEAK.load(Ordering::Relaxed)
}

/// Restarts peak tracking from the current live size.
pub fn reset_peak() {
    PEAK.store(LIVE.load(Ordering::Relaxed), Ordering::Relaxed);
}

/// Peak resident set size of the process (`VmHWM`), where the OS reports it.
pub fn process_peak_rss() -> Option<usize> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: usize = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}
