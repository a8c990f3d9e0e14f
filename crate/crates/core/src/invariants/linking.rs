use std::fmt;

use num_traits::ToPrimitive;

use crate::data::{HomotopyData, Symbol};
use crate::error::{Error, Result};
use crate::formal::{bracket_with, FormalSum};
use crate::phrase::Nanophrase;

use super::patterns::{make_pattern_phrase, PatternKind};
use super::{Flatten, TaggedValue};

/// Element of `pi = <alpha | a + tau(a) = 0>`, stored as one coordinate per
/// orientation symbol: an integer for a free orbit, a bit for a fixed one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiElement {
    coeffs: Vec<TaggedValue>,
}

impl PiElement {
    pub fn zero(data: &HomotopyData) -> Self {
        PiElement {
            coeffs: data
                .orientation()
                .iter()
                .map(|&a| TaggedValue::new(0, if data.is_fixed(a) { 2 } else { 0 }))
                .collect(),
        }
    }

    pub fn from_symbol(s: Symbol, data: &HomotopyData) -> Self {
        let mut g = PiElement::zero(data);
        g.add_symbol(s, data);
        g
    }

    pub fn add_symbol(&mut self, s: Symbol, data: &HomotopyData) {
        let rep = data.orbit_representative(s);
        let k = data.orientation().iter().position(|&o| o == rep).expect("orientation");
        let sign = if rep == s { 1 } else { -1 };
        self.coeffs[k] = self.coeffs[k].add_scaled(&TaggedValue::new(1, self.coeffs[k].modulus), sign);
    }

    /// Coefficient of the orientation symbol `a`.
    pub fn coefficient(&self, a: Symbol, data: &HomotopyData) -> Option<TaggedValue> {
        let k = data.orientation().iter().position(|&o| o == a)?;
        Some(self.coeffs[k])
    }

    pub fn coeffs(&self) -> &[TaggedValue] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(TaggedValue::is_zero)
    }

    /// `k·a` terms joined by ` + `, or `0`.
    pub fn to_text(&self, data: &HomotopyData) -> String {
        let terms: Vec<String> = data
            .orientation()
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&a, c)| format!("{}·{}", c.value, data.name(a)))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Symmetric `r x r` matrix of `pi` elements with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinkingMatrix {
    entries: Vec<Vec<PiElement>>,
}

impl LinkingMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &PiElement {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<PiElement>] {
        &self.entries
    }

    pub fn to_lines(&self, data: &HomotopyData) -> Vec<String> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|g| g.to_text(data)).collect::<Vec<_>>().join("\t"))
            .collect()
    }

    pub fn display<'a>(&'a self, data: &'a HomotopyData) -> impl fmt::Display + 'a {
        struct D<'a>(&'a LinkingMatrix, &'a HomotopyData);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.to_lines(self.1).join("\n"))
            }
        }
        D(self, data)
    }
}

impl Flatten for LinkingMatrix {
    fn flatten(&self) -> Vec<TaggedValue> {
        self.entries
            .iter()
            .flatten()
            .flat_map(|g| g.coeffs.iter().copied())
            .collect()
    }
}

/// `l_ij` sums the labels of letters with one occurrence in component `i`
/// and the other in component `j`.
pub fn linking_matrix(p: &Nanophrase, data: &HomotopyData) -> LinkingMatrix {
    let r = p.component_count();
    let mut entries = vec![vec![PiElement::zero(data); r]; r];
    for l in p.letters() {
        let [(ci, _), (cj, _)] = p.occurrences(l);
        if ci != cj {
            let s = p.label(l);
            entries[ci][cj].add_symbol(s, data);
            entries[cj][ci].add_symbol(s, data);
        }
    }
    LinkingMatrix { entries }
}

fn check_pair(p: &Nanophrase, i: usize, j: usize, a: Symbol, data: &HomotopyData) -> Result<()> {
    if i >= j || j >= p.component_count() {
        return Err(Error::Precondition(format!(
            "need 1 <= i < j <= {}, got {} and {}",
            p.component_count(),
            i + 1,
            j + 1
        )));
    }
    if !data.orientation().contains(&a) {
        return Err(Error::Precondition(format!("`{}` is not an orientation symbol", data.name(a))));
    }
    Ok(())
}

fn pattern(kind: PatternKind, r: usize, i: usize, j: usize, a: Symbol, b: Option<Symbol>) -> FormalSum {
    FormalSum::from_phrase(&make_pattern_phrase(kind, r, i, j, a, b).expect("indices checked"))
}

fn eval(u: &FormalSum, p: &Nanophrase, modulus: u32) -> Result<TaggedValue> {
    let v = bracket_with(u, p)?;
    let v = v.to_i64().ok_or_else(|| Error::Precondition("bracket overflow".into()))?;
    Ok(TaggedValue::new(v, modulus))
}

/// Coefficient of `a` in `l_ij`, computed from the degree-1 bracket
/// formulae. Indices are zero based.
pub fn l_ija(i: usize, j: usize, a: Symbol, p: &Nanophrase, data: &HomotopyData) -> Result<TaggedValue> {
    check_pair(p, i, j, a, data)?;
    let r = p.component_count();
    if data.is_fixed(a) {
        eval(&pattern(PatternKind::G, r, i, j, a, None), p, 2)
    } else {
        let u = &pattern(PatternKind::G, r, i, j, a, None) - &pattern(PatternKind::G, r, i, j, data.tau(a), None);
        eval(&u, p, 0)
    }
}

/// Degree-2 bracket formula equal to `l_ija^2`; needs `a != tau(a)`.
pub fn l_prime_ija(i: usize, j: usize, a: Symbol, p: &Nanophrase, data: &HomotopyData) -> Result<TaggedValue> {
    check_pair(p, i, j, a, data)?;
    if data.is_fixed(a) {
        return Err(Error::Precondition("l' needs a free symbol".into()));
    }
    let r = p.component_count();
    let b = data.tau(a);
    let two = num_bigint::BigInt::from(2);
    let mut u = FormalSum::zero(r);
    for (x, y, sign) in [(a, a, 1), (a, b, -1), (b, a, -1), (b, b, 1)] {
        let c = &two * sign;
        u += &pattern(PatternKind::E, r, i, j, x, Some(y)).scale(&c);
        u += &pattern(PatternKind::F, r, i, j, x, Some(y)).scale(&c);
    }
    u += &pattern(PatternKind::G, r, i, j, a, None);
    u += &pattern(PatternKind::G, r, i, j, b, None);
    eval(&u, p, 0)
}

/// Degree-2 bracket formula in `Z/4` agreeing with `l_ija` on phrases; needs
/// `a == tau(a)`.
pub fn l_doubleprime_ija(i: usize, j: usize, a: Symbol, p: &Nanophrase, data: &HomotopyData) -> Result<TaggedValue> {
    check_pair(p, i, j, a, data)?;
    if !data.is_fixed(a) {
        return Err(Error::Precondition("l'' needs a tau-fixed symbol".into()));
    }
    let r = p.component_count();
    let two = num_bigint::BigInt::from(2);
    let mut u = pattern(PatternKind::E, r, i, j, a, Some(a)).scale(&two);
    u += &pattern(PatternKind::F, r, i, j, a, Some(a)).scale(&two);
    u += &pattern(PatternKind::G, r, i, j, a, None);
    eval(&u, p, 4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linking_matrix_example() {
        let d = HomotopyData::parse("alpha: a b c d\ntau: (a c) (b d)").unwrap();
        let p = Nanophrase::parse("AB|A|B:ab", &d).unwrap();
        let l = linking_matrix(&p, &d);
        assert_eq!(l.get(0, 1), &PiElement::from_symbol(Symbol(0), &d));
        assert_eq!(l.get(0, 2), &PiElement::from_symbol(Symbol(1), &d));
        assert!(l.get(1, 2).is_zero());
        assert_eq!(l.get(1, 0), l.get(0, 1));
        assert!((0..3).all(|i| l.get(i, i).is_zero()));
        assert_eq!(l.get(0, 1).to_text(&d), "1·a");
        // tau(a) counts as -a
        let q = Nanophrase::parse("AB|AB:ac", &d).unwrap();
        assert!(linking_matrix(&q, &d).get(0, 1).is_zero());
    }

    #[test]
    fn fixed_orbits_are_mod_two() {
        let d = HomotopyData::parse("alpha: a").unwrap();
        let p = Nanophrase::parse("AB|AB:aa", &d).unwrap();
        assert!(linking_matrix(&p, &d).get(0, 1).is_zero());
        let q = Nanophrase::parse("ABC|ABC:aaa", &d).unwrap();
        assert_eq!(linking_matrix(&q, &d).get(0, 1).to_text(&d), "1·a");
    }

    #[test]
    fn one_component_matrix_is_zero() {
        let d = HomotopyData::gauss();
        let p = Nanophrase::parse("ABAB:aa", &d).unwrap();
        let l = linking_matrix(&p, &d);
        assert_eq!(l.size(), 1);
        assert!(l.get(0, 0).is_zero());
    }

    #[test]
    fn l_family_examples() {
        let d = HomotopyData::parse("alpha: a b c\ntau: (a b)").unwrap();
        let (a, b, c) = (Symbol(0), Symbol(1), Symbol(2));
        let t = Nanophrase::trivial(2);
        assert_eq!(l_ija(0, 1, a, &t, &d).unwrap(), TaggedValue::integer(0));
        let p = Nanophrase::parse("ABC|CAB:aab", &d).unwrap();
        assert_eq!(l_ija(0, 1, a, &p, &d).unwrap(), TaggedValue::integer(1));
        assert_eq!(l_prime_ija(0, 1, a, &p, &d).unwrap(), TaggedValue::integer(1));
        let q = Nanophrase::parse("ABC|CAB:aac", &d).unwrap();
        assert_eq!(l_ija(0, 1, a, &q, &d).unwrap(), TaggedValue::integer(2));
        assert_eq!(l_prime_ija(0, 1, a, &q, &d).unwrap(), TaggedValue::integer(4));
        assert_eq!(l_ija(0, 1, c, &q, &d).unwrap(), TaggedValue::new(1, 2));
        assert_eq!(l_doubleprime_ija(0, 1, c, &q, &d).unwrap(), TaggedValue::new(1, 4));
        assert!(l_ija(0, 1, b, &q, &d).is_err());
        assert!(l_prime_ija(0, 1, c, &q, &d).is_err());
        assert!(l_doubleprime_ija(0, 1, a, &q, &d).is_err());
        assert!(l_ija(1, 0, a, &q, &d).is_err());
    }
}
