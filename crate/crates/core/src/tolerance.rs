//! Global comparison tolerance.
//!
//! Every feasibility test and comparison in the crate uses [`eps`]. The value
//! defaults to `1e-9` and can be changed once at program start (the CLI reads
//! `EXH_TOLERANCE`).

use std::sync::atomic::{AtomicU64, Ordering};

pub const DEFAULT_EPS: f64 = 1e-9;

static EPS_BITS: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

pub fn eps() -> f64 {
    f64::from_bits(EPS_BITS.load(Ordering::Relaxed))
}

/// Overrides the global tolerance. Non-positive or non-finite values are ignored.
pub fn set_eps(value: f64) -> bool {
    if value.is_finite() && value > 0.0 {
        EPS_BITS.store(value.to_bits(), Ordering::Relaxed);
        true
    } else {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_bits_are_1e_minus_9() {
        assert_eq!(f64::from_bits(0x3E11_2E0B_E826_D695), DEFAULT_EPS);
    }
}
