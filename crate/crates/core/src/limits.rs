//! Desk-scale resource caps shared by every module.

use serde::{Deserialize, Serialize};

/// Caps on parameter sizes and brute-force budgets.
///
/// The defaults keep exhaustive sweeps interactive. Everything here is
/// overridable; the hard limits of the representation live in
/// [`crate::field::MAX_PRIME`] and [`crate::field::MAX_DEGREE`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Limits {
    pub max_prime: u32,
    pub max_degree: usize,
    /// Largest admissible code length p^s.
    pub max_length: usize,
    /// Maximum number of codewords a brute-force enumeration may visit.
    pub enum_cap: u64,
    /// Maximum number of ambient vectors the dual scan may visit.
    pub dual_cap: u64,
}

pub const DEFAULT_ENUM_CAP: u64 = 1 << 22;
pub const DEFAULT_DUAL_CAP: u64 = 1 << 20;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_prime: 13,
            max_degree: 6,
            max_length: 128,
            enum_cap: DEFAULT_ENUM_CAP,
            dual_cap: DEFAULT_DUAL_CAP,
        }
    }
}

impl Limits {
    /// Lifts the size caps up to the representation limits, keeping the
    /// brute-force budgets.
    pub fn unrestricted_sizes(self) -> Self {
        Limits {
            max_prime: crate::field::MAX_PRIME,
            max_degree: crate::field::MAX_DEGREE,
            max_length: 1 << 12,
            ..self
        }
    }

    pub fn with_enum_cap(self, enum_cap: u64) -> Self {
        Limits { enum_cap, ..self }
    }

    pub fn with_dual_cap(self, dual_cap: u64) -> Self {
        Limits { dual_cap, ..self }
    }
}

/// `base^exp` if it fits under `cap`, otherwise `None`.
pub(crate) fn checked_pow_under(base: u64, exp: u64, cap: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
        if acc > cap {
            return None;
        }
    }
    Some(acc)
}

pub(crate) fn bits(base: u64, exp: u64) -> f64 {
    exp as f64 * (base as f64).log2()
}
