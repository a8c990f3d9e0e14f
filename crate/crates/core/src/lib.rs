//! Homotopy of nanowords and nanophrases and their finite type invariants.
//!
//! * [`data`] and [`phrase`]: homotopy data, nanophrases, canonical forms and
//!   the `AB|A|B:ab` notation.
//! * [`moves`]: homotopy moves H1-H3, shift moves and a bounded search for
//!   homotopies.
//! * [`formal`]: formal sums of phrases, semi-letters, angle brackets and the
//!   subphrase maps `theta`, `phi`, `gamma`.
//! * [`invariants`]: linking matrix, `T`, `u`, the `l` family and `v4`.
//! * [`groups`]: the universal groups `G_n` through relation matrices and
//!   Smith normal form.

pub mod data;
pub mod error;
pub mod formal;
pub mod groups;
pub mod invariants;
pub mod moves;
pub mod phrase;
pub mod random;

pub use data::{HomotopyData, Symbol};
pub use error::{Error, Result};
pub use phrase::{CanonicalForm, Letter, Nanophrase};
