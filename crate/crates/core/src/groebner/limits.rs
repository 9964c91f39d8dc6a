//! Scoped resource limits consulted by long-running completions.

use std::cell::RefCell;
use std::time::{Duration, Instant};

use crate::error::Error;

/// Limits applied to every Buchberger run on the current thread.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Limits {
    pub deadline: Option<Instant>,
    /// Abort when a pair of larger lcm degree would be processed.
    pub max_degree: Option<u32>,
    /// Abort after this many S-pairs have been reduced in one run.
    pub max_pairs: Option<usize>,
}

impl Limits {
    pub fn none() -> Self {
        Limits::default()
    }

    pub fn with_timeout(timeout: Duration) -> Self {
        Limits { deadline: Some(Instant::now() + timeout), ..Limits::default() }
    }

    /// Combination keeping the stricter bound of each kind.
    pub fn tighten(self, other: Limits) -> Limits {
        fn min_opt<T: Ord>(a: Option<T>, b: Option<T>) -> Option<T> {
            match (a, b) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            }
        }
        Limits {
            deadline: min_opt(self.deadline, other.deadline),
            max_degree: min_opt(self.max_degree, other.max_degree),
            max_pairs: min_opt(self.max_pairs, other.max_pairs),
        }
    }
}

thread_local! {
    static CURRENT: RefCell<Limits> = const { RefCell::new(Limits {
        deadline: None,
        max_degree: None,
        max_pairs: None,
    }) };
}

/// Runs `f` with `limits` combined into the thread's active limits.
pub fn with_limits<T>(limits: Limits, f: impl FnOnce() -> T) -> T {
    struct Restore(Limits);
    impl Drop for Restore {
        fn drop(&mut self) {
            CURRENT.with(|c| *c.borrow_mut() = self.0);
        }
    }
    let prev = current();
    let _guard = Restore(prev);
    CURRENT.with(|c| *c.borrow_mut() = prev.tighten(limits));
    f()
}

pub fn current() -> Limits {
    CURRENT.with(|c| *c.borrow())
}

pub(crate) fn check(
    limits: &Limits,
    pairs_done: usize,
    degree: u32,
    basis_len: usize,
    pairs_left: usize,
) -> Result<(), Error> {
    let fail = |reason: String| Error::ResourceLimit { reason, basis_len, pairs_left, degree };
    if let Some(d) = limits.deadline {
        if Instant::now() >= d {
            return Err(fail("deadline reached".into()));
        }
    }
    if let Some(cap) = limits.max_degree {
        if degree > cap {
            return Err(fail(format!("S-pair degree {degree} exceeds cap {cap}")));
        }
    }
    if let Some(cap) = limits.max_pairs {
        if pairs_done > cap {
            return Err(fail(format!("more than {cap} S-pairs reduced")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scoped_limits_restore() {
        assert_eq!(current(), Limits::none());
        let inner = with_limits(Limits { max_degree: Some(5), ..Limits::none() }, || {
            with_limits(Limits { max_degree: Some(9), max_pairs: Some(3), ..Limits::none() }, current)
        });
        assert_eq!(inner.max_degree, Some(5));
        assert_eq!(inner.max_pairs, Some(3));
        assert_eq!(current(), Limits::none());
    }
}
