//! Shared fixtures for the criterion benches.

use dickson_core::{DicksonNearfield, DicksonPair};

/// The nearfield for a pair that is known to be valid.
pub fn nearfield(q: u64, n: u32) -> DicksonNearfield {
    let pair = DicksonPair::new(q, n).expect("valid Dickson pair");
    DicksonNearfield::new(pair).expect("order within cap")
}
