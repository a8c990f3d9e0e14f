//! Concrete homotopy invariants of nanophrases.

mod degree2;
mod linking;
mod named;
mod patterns;
mod v4;

use std::fmt;

pub use degree2::{t_component, t_invariant, u_invariant, TInvariant};
pub use linking::{l_doubleprime_ija, l_ija, l_prime_ija, linking_matrix, LinkingMatrix, PiElement};
pub use named::{evaluate, InvariantArgs, InvariantName};
pub use patterns::{make_pattern_phrase, PatternKind};
pub use v4::{v4, V4_WORDS};

/// An integer, or a residue modulo `modulus` when `modulus > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TaggedValue {
    pub value: i64,
    pub modulus: u32,
}

impl TaggedValue {
    pub fn new(value: i64, modulus: u32) -> Self {
        let value = if modulus > 0 {
            value.rem_euclid(modulus as i64)
        } else {
            value
        };
        TaggedValue { value, modulus }
    }

    pub fn integer(value: i64) -> Self {
        TaggedValue::new(value, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// `self + c * other`, in the codomain of `self`.
    pub fn add_scaled(self, other: &TaggedValue, c: i64) -> TaggedValue {
        debug_assert_eq!(self.modulus, other.modulus);
        TaggedValue::new(self.value + c * other.value, self.modulus)
    }
}

impl fmt::Display for TaggedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{} (mod {})", self.value, self.modulus)
        }
    }
}

/// Values that can be laid out as a fixed-length tuple of tagged
/// coordinates, so one defect harness serves every invariant.
pub trait Flatten {
    fn flatten(&self) -> Vec<TaggedValue>;
}

impl Flatten for TaggedValue {
    fn flatten(&self) -> Vec<TaggedValue> {
        vec![*self]
    }
}

impl Flatten for Vec<TaggedValue> {
    fn flatten(&self) -> Vec<TaggedValue> {
        self.clone()
    }
}
