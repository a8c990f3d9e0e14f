use std::collections::BTreeMap;

use crate::data::Symbol;
use crate::error::{Error, Result};
use crate::phrase::{Letter, Nanophrase};

/// Small pattern phrases used by the bracket formulae. Component indices are
/// zero based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternKind {
    /// `A` in component `i` and `A` in component `j`, `i < j`.
    G,
    /// `AB` in component `i` and `AB` in component `j`, `i < j`.
    E,
    /// `AB` in component `i` and `BA` in component `j`, `i < j`.
    F,
    /// `ABAB` in component `i` when `i == j`, otherwise `ABA` in `i` and `B`
    /// in `j`.
    P,
}

pub fn make_pattern_phrase(
    kind: PatternKind,
    r: usize,
    i: usize,
    j: usize,
    a: Symbol,
    b: Option<Symbol>,
) -> Result<Nanophrase> {
    if i >= r || j >= r {
        return Err(Error::Precondition(format!(
            "component indices {},{} out of range for {r} components",
            i + 1,
            j + 1
        )));
    }
    if kind != PatternKind::P && i >= j {
        return Err(Error::Precondition("pattern needs i < j".into()));
    }
    let (la, lb) = (Letter(0), Letter(1));
    let mut comps = vec![Vec::new(); r];
    let mut labels = BTreeMap::from([(la, a)]);
    let need_b = || b.ok_or_else(|| Error::Precondition("pattern needs a second symbol".into()));
    match kind {
        PatternKind::G => {
            comps[i] = vec![la];
            comps[j] = vec![la];
        }
        PatternKind::E => {
            comps[i] = vec![la, lb];
            comps[j] = vec![la, lb];
            labels.insert(lb, need_b()?);
        }
        PatternKind::F => {
            comps[i] = vec![la, lb];
            comps[j] = vec![lb, la];
            labels.insert(lb, need_b()?);
        }
        PatternKind::P => {
            if i == j {
                comps[i] = vec![la, lb, la, lb];
            } else {
                comps[i] = vec![la, lb, la];
                comps[j] = vec![lb];
            }
            labels.insert(lb, need_b()?);
        }
    }
    Nanophrase::new(comps, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::HomotopyData;

    #[test]
    fn pattern_examples() {
        let d = HomotopyData::parse("alpha: a b").unwrap();
        let (a, b) = (Symbol(0), Symbol(1));
        let text = |k, r, i, j, b| make_pattern_phrase(k, r, i, j, a, b).unwrap().to_text(&d);
        assert_eq!(text(PatternKind::G, 2, 0, 1, None), "A|A:a");
        assert_eq!(text(PatternKind::E, 2, 0, 1, Some(b)), "AB|AB:ab");
        assert_eq!(text(PatternKind::F, 2, 0, 1, Some(b)), "AB|BA:ab");
        assert_eq!(text(PatternKind::P, 1, 0, 0, Some(b)), "ABAB:ab");
        assert_eq!(text(PatternKind::P, 3, 2, 0, Some(b)), "B|0|ABA:ab");
        assert!(make_pattern_phrase(PatternKind::G, 2, 1, 0, a, None).is_err());
        assert!(make_pattern_phrase(PatternKind::G, 2, 0, 2, a, None).is_err());
        assert!(make_pattern_phrase(PatternKind::E, 2, 0, 1, a, None).is_err());
    }
}
