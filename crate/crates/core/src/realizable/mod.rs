//! The realizable-class engine.
//!
//! [`rt`] walks a group tree bottom-up: `C(2)` gives the whole class group, a semidirect
//! node `H ⋊ G` raises the result for `G` to the `|H|`-th power and multiplies in one
//! `W`-group power per element of prime-power order of `H`, and a direct product combines
//! its factors' results raised to each other's orders. Every evaluation is recorded in a
//! [`Trace`] that [`rt_trace_replay`] can re-check without enumerating primes.

mod dihedral;
mod engine;
mod good;
mod trace;

pub use dihedral::rt_dihedral;
pub use engine::{rt, rt_with, RtConfig};
pub use good::{good_membership_check, ExponentCheck, ScenarioReport};
pub use trace::{rt_trace_replay, rt_trace_replay_with, Formula, RtResult, Step, Trace, WFactor};
