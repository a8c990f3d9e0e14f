use std::fmt;
use std::str::FromStr;

use crate::data::{HomotopyData, Symbol};
use crate::error::{Error, Result};
use crate::phrase::Nanophrase;

use super::{
    l_doubleprime_ija, l_ija, l_prime_ija, linking_matrix, t_invariant, u_invariant, v4, Flatten, TaggedValue,
};

/// The invariants reachable by name from the CLI and the C interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InvariantName {
    Linking,
    T,
    U,
    L,
    LPrime,
    LDoublePrime,
    V4,
}

impl InvariantName {
    pub const ALL: [InvariantName; 7] = [
        InvariantName::Linking,
        InvariantName::T,
        InvariantName::U,
        InvariantName::L,
        InvariantName::LPrime,
        InvariantName::LDoublePrime,
        InvariantName::V4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InvariantName::Linking => "linking",
            InvariantName::T => "t",
            InvariantName::U => "u",
            InvariantName::L => "l",
            InvariantName::LPrime => "lp",
            InvariantName::LDoublePrime => "lpp",
            InvariantName::V4 => "v4",
        }
    }

    /// Finite type degree of the invariant.
    pub fn degree(self) -> usize {
        match self {
            InvariantName::Linking | InvariantName::L => 1,
            InvariantName::T | InvariantName::U | InvariantName::LPrime | InvariantName::LDoublePrime => 2,
            InvariantName::V4 => 4,
        }
    }
}

impl fmt::Display for InvariantName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InvariantName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InvariantName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown invariant `{s}`")))
    }
}

/// Component indices (zero based) and symbols an invariant may need.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct InvariantArgs {
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub a: Option<Symbol>,
    pub b: Option<Symbol>,
}

impl InvariantArgs {
    /// Names of the arguments `name` needs but `self` lacks.
    pub fn missing(&self, name: InvariantName) -> Vec<&'static str> {
        let need: &[&str] = match name {
            InvariantName::Linking | InvariantName::T | InvariantName::V4 => &[],
            InvariantName::U => &["i", "j", "a", "b"],
            InvariantName::L | InvariantName::LPrime | InvariantName::LDoublePrime => &["i", "j", "a"],
        };
        need.iter()
            .copied()
            .filter(|k| match *k {
                "i" => self.i.is_none(),
                "j" => self.j.is_none(),
                "a" => self.a.is_none(),
                _ => self.b.is_none(),
            })
            .collect()
    }
}

/// Evaluates a named invariant, flattened to tagged coordinates.
pub fn evaluate(name: InvariantName, args: &InvariantArgs, p: &Nanophrase, data: &HomotopyData) -> Result<Vec<TaggedValue>> {
    let missing = args.missing(name);
    if !missing.is_empty() {
        return Err(Error::Precondition(format!("{name} needs {}", missing.join(", "))));
    }
    let (i, j) = (args.i.unwrap_or(0), args.j.unwrap_or(0));
    let (a, b) = (args.a.unwrap_or(Symbol(0)), args.b.unwrap_or(Symbol(0)));
    Ok(match name {
        InvariantName::Linking => linking_matrix(p, data).flatten(),
        InvariantName::T => t_invariant(p, data)?.flatten(),
        InvariantName::U => vec![u_invariant(i, j, a, b, p, data)?],
        InvariantName::L => vec![l_ija(i, j, a, p, data)?],
        InvariantName::LPrime => vec![l_prime_ija(i, j, a, p, data)?],
        InvariantName::LDoublePrime => vec![l_doubleprime_ija(i, j, a, p, data)?],
        InvariantName::V4 => vec![v4(p, data)?],
    })
}
