//! Resource governor for automaton construction.
//!
//! Constructions that can blow up (products, subset construction) consult the
//! limits installed on the current thread. Sessions install their limits for the
//! duration of a single command, so a timeout aborts that command only.

use std::cell::Cell;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_STATES: usize = 10_000_000;
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(600);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_states: usize,
    pub timeout: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: DEFAULT_MAX_STATES,
            timeout: Some(DEFAULT_TIMEOUT),
        }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits {
            max_states: usize::MAX,
            timeout: None,
        }
    }
}

#[derive(Clone, Copy)]
struct Active {
    max_states: usize,
    deadline: Option<Instant>,
}

thread_local! {
    static ACTIVE: Cell<Option<Active>> = const { Cell::new(None) };
}

/// Runs `f` with `limits` installed on this thread, restoring the previous
/// limits afterwards.
pub fn with_limits<T>(limits: Limits, f: impl FnOnce() -> T) -> T {
    let active = Active {
        max_states: limits.max_states,
        deadline: limits.timeout.map(|t| Instant::now() + t),
    };
    let prev = ACTIVE.with(|a| a.replace(Some(active)));
    struct Restore(Option<Active>);
    impl Drop for Restore {
        fn drop(&mut self) {
            ACTIVE.with(|a| a.set(self.0));
        }
    }
    let _restore = Restore(prev);
    f()
}

pub(crate) fn check_states(n: usize) -> Result<()> {
    match ACTIVE.with(|a| a.get()) {
        Some(a) if n > a.max_states => Err(Error::StateLimit {
            limit: a.max_states,
        }),
        _ => Ok(()),
    }
}

pub(crate) fn check_time() -> Result<()> {
    match ACTIVE.with(|a| a.get()) {
        Some(Active {
            deadline: Some(d), ..
        }) if Instant::now() > d => Err(Error::Timeout),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limits_are_scoped() {
        assert!(check_states(usize::MAX - 1).is_ok());
        let lim = Limits {
            max_states: 10,
            timeout: None,
        };
        with_limits(lim, || {
            assert!(check_states(10).is_ok());
            assert!(matches!(check_states(11), Err(Error::StateLimit { limit: 10 })));
        });
        assert!(check_states(11).is_ok());
    }

    #[test]
    fn zero_timeout_trips() {
        let lim = Limits {
            max_states: 10,
            timeout: Some(Duration::ZERO),
        };
        with_limits(lim, || {
            std::thread::sleep(Duration::from_millis(2));
            assert!(matches!(check_time(), Err(Error::Timeout)));
        });
    }
}
