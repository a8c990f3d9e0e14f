//! Formal integer combinations of nanophrases modulo isomorphism.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::data::HomotopyData;
use crate::error::{Error, Result};
use crate::invariants::{Flatten, TaggedValue};
use crate::phrase::{self, CanonicalForm, Letter, Nanophrase};

/// Element of the free abelian group on isomorphism classes of
/// `r`-component nanophrases. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSum {
    r: usize,
    terms: BTreeMap<CanonicalForm, BigInt>,
}

impl FormalSum {
    pub fn zero(r: usize) -> Self {
        FormalSum {
            r,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_phrase(p: &Nanophrase) -> Self {
        let mut s = FormalSum::zero(p.component_count());
        s.add_term(p.canonical_form(), BigInt::one());
        s
    }

    pub fn from_form(cf: CanonicalForm) -> Self {
        let mut s = FormalSum::zero(cf.component_count());
        s.add_term(cf, BigInt::one());
        s
    }

    /// Parses `+2 AB|AB:aa -1 A|A:a ...`; a term without a coefficient
    /// counts once.
    pub fn parse(text: &str, data: &HomotopyData) -> Result<Self> {
        let mut sum: Option<FormalSum> = None;
        let mut coeff: Option<BigInt> = None;
        for token in text.split_whitespace() {
            if let Ok(c) = token.trim_start_matches('+').parse::<BigInt>() {
                if coeff.is_some() {
                    return Err(Error::phrase(text, "two coefficients in a row"));
                }
                coeff = Some(c);
                continue;
            }
            let (sign, body) = match token.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, token.trim_start_matches('+')),
            };
            let p = Nanophrase::parse(body, data)?;
            let c = coeff.take().unwrap_or_else(BigInt::one) * sign;
            let s = sum.get_or_insert_with(|| FormalSum::zero(p.component_count()));
            if s.r != p.component_count() {
                return Err(Error::ComponentMismatch {
                    left: s.r,
                    right: p.component_count(),
                });
            }
            s.add_term(p.canonical_form(), c);
        }
        if coeff.is_some() {
            return Err(Error::phrase(text, "dangling coefficient"));
        }
        sum.ok_or_else(|| Error::phrase(text, "empty formal sum"))
    }

    pub fn component_count(&self) -> usize {
        self.r
    }

    pub fn add_term(&mut self, cf: CanonicalForm, coeff: BigInt) {
        assert_eq!(cf.component_count(), self.r, "component count mismatch");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(cf);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, cf: &CanonicalForm) -> BigInt {
        self.terms.get(cf).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalForm, &BigInt)> {
        self.terms.iter()
    }

    #[allow(clippy::len_without_is_empty)] // is_zero plays that role
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest rank among the terms, `None` for the zero sum.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(CanonicalForm::rank).max()
    }

    /// Image under the map sending every phrase to 1.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn scale(&self, c: &BigInt) -> FormalSum {
        let mut out = FormalSum::zero(self.r);
        for (cf, k) in &self.terms {
            out.add_term(cf.clone(), k * c);
        }
        out
    }

    /// Drops every term of rank greater than `n`.
    pub fn truncate(&self, n: usize) -> FormalSum {
        FormalSum {
            r: self.r,
            terms: self
                .terms
                .iter()
                .filter(|(cf, _)| cf.rank() <= n)
                .map(|(cf, c)| (cf.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_same(&self, other: &FormalSum) -> Result<()> {
        if self.r != other.r && !(self.is_zero() || other.is_zero()) {
            return Err(Error::ComponentMismatch {
                left: self.r,
                right: other.r,
            });
        }
        Ok(())
    }

    /// One `+c·phrase` line per term, in canonical order.
    pub fn to_lines(&self, data: &HomotopyData) -> Vec<String> {
        self.terms
            .iter()
            .map(|(cf, c)| {
                let sign = if c.is_negative() { '-' } else { '+' };
                format!("{sign}{}·{}", c.abs(), cf.to_text(data))
            })
            .collect()
    }

    pub fn to_text(&self, data: &HomotopyData) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (cf, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if i == 0 { "" } else { "+" };
            if i > 0 {
                out.push(' ');
            }
            out.push_str(sign);
            if !c.abs().is_one() {
                let _ = write!(out, "{} ", c.abs());
            }
            out.push_str(&cf.to_text(data));
        }
        out
    }
}

impl AddAssign<&FormalSum> for FormalSum {
    fn add_assign(&mut self, rhs: &FormalSum) {
        self.check_same(rhs).expect("component count mismatch");
        if self.is_zero() {
            self.r = rhs.r;
        }
        for (cf, c) in &rhs.terms {
            self.add_term(cf.clone(), c.clone());
        }
    }
}

impl SubAssign<&FormalSum> for FormalSum {
    fn sub_assign(&mut self, rhs: &FormalSum) {
        *self += &-rhs;
    }
}

impl Add for &FormalSum {
    type Output = FormalSum;
    fn add(self, rhs: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &FormalSum {
    type Output = FormalSum;
    fn sub(self, rhs: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &FormalSum {
    type Output = FormalSum;
    fn neg(self) -> FormalSum {
        FormalSum {
            r: self.r,
            terms: self.terms.iter().map(|(cf, c)| (cf.clone(), -c)).collect(),
        }
    }
}

/// A nanophrase some of whose letters are semi-letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DottedNanophrase {
    phrase: Nanophrase,
    dotted: BTreeSet<Letter>,
}

impl DottedNanophrase {
    pub fn new(phrase: Nanophrase, dotted: BTreeSet<Letter>) -> Result<Self> {
        if let Some(l) = dotted.iter().find(|l| !phrase.labels().contains_key(l)) {
            return Err(Error::Precondition(format!("dotted letter #{} not in phrase", l.0)));
        }
        Ok(DottedNanophrase { phrase, dotted })
    }

    pub fn all_dotted(phrase: Nanophrase) -> Self {
        let dotted = phrase.letters().collect();
        DottedNanophrase { phrase, dotted }
    }

    /// Parses the phrase notation with `.` after each semi-letter occurrence,
    /// e.g. `A.BA.B:ab`.
    pub fn parse(text: &str, data: &HomotopyData) -> Result<Self> {
        let (phrase, dotted) = phrase::parse_dotted_parts(text, data)?;
        Ok(DottedNanophrase { phrase, dotted })
    }

    pub fn phrase(&self) -> &Nanophrase {
        &self.phrase
    }

    pub fn dotted(&self) -> &BTreeSet<Letter> {
        &self.dotted
    }

    pub fn dot_count(&self) -> usize {
        self.dotted.len()
    }

    /// Counts dotted letters too.
    pub fn rank(&self) -> usize {
        self.phrase.rank()
    }

    pub fn to_text(&self, data: &HomotopyData) -> String {
        phrase::format_dotted(&self.phrase, &self.dotted, data)
    }

    /// The `2^m` resolutions with their signs `(-1)^(rank(d) - rank(u))`,
    /// before any cancellation.
    pub fn resolutions(&self) -> Vec<(Nanophrase, i64)> {
        let dots: Vec<Letter> = self.dotted.iter().copied().collect();
        (0..1u64 << dots.len())
            .map(|removed| {
                let gone: Vec<Letter> = dots
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| removed >> i & 1 == 1)
                    .map(|(_, &l)| l)
                    .collect();
                let sign = if gone.len().is_multiple_of(2) { 1 } else { -1 };
                (self.phrase.delete(&gone), sign)
            })
            .collect()
    }
}

/// Expands every semi-letter by `xAyAz - xyz`.
pub fn resolve(d: &DottedNanophrase) -> FormalSum {
    let mut out = FormalSum::zero(d.phrase.component_count());
    for (u, sign) in d.resolutions() {
        out.add_term(u.canonical_form(), BigInt::from(sign));
    }
    out
}

/// Calls `f` with every subset of `0..n` of size `k`, as a bit mask.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(u64)) {
    assert!(n < 64);
    if k > n {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let mut mask: u64 = (1 << k) - 1;
    let limit: u64 = 1 << n;
    while mask < limit {
        f(mask);
        // Gosper's hack
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
}

/// Multiset of isomorphism classes of the rank-`k` subphrases of `p`.
pub fn subphrase_histogram(p: &Nanophrase, k: usize) -> HashMap<CanonicalForm, u64> {
    let letters: Vec<Letter> = p.letters().collect();
    let mut hist = HashMap::new();
    for_each_subset(letters.len(), k, |mask| {
        *hist.entry(p.subphrase_by_mask(&letters, mask).canonical_form()).or_insert(0) += 1;
    });
    hist
}

/// Number of letter subsets of `p` whose subphrase is isomorphic to `q`.
pub fn count_subphrases(q: &Nanophrase, p: &Nanophrase) -> u64 {
    if q.component_count() != p.component_count() {
        return 0;
    }
    let target = q.canonical_form();
    let letters: Vec<Letter> = p.letters().collect();
    let mut n = 0;
    for_each_subset(letters.len(), q.rank(), |mask| {
        if p.subphrase_by_mask(&letters, mask).canonical_form() == target {
            n += 1;
        }
    });
    n
}

/// The bilinear angle bracket `<u, x>`.
pub fn angle_bracket(u: &FormalSum, x: &FormalSum) -> Result<BigInt> {
    if u.r != x.r {
        return Err(Error::ComponentMismatch { left: u.r, right: x.r });
    }
    let ranks: BTreeSet<usize> = u.terms.keys().map(CanonicalForm::rank).collect();
    let mut total = BigInt::zero();
    for (p, cp) in &x.terms {
        let p = p.to_nanophrase();
        for &k in &ranks {
            for (q, n) in subphrase_histogram(&p, k) {
                if let Some(cq) = u.terms.get(&q) {
                    total += cq * cp * BigInt::from(n);
                }
            }
        }
    }
    Ok(total)
}

/// `<u, p>` for a single phrase.
pub fn bracket_with(u: &FormalSum, p: &Nanophrase) -> Result<BigInt> {
    angle_bracket(u, &FormalSum::from_phrase(p))
}

fn subphrase_sum(x: &FormalSum, max_rank: Option<usize>, alternating: bool) -> FormalSum {
    let mut out = FormalSum::zero(x.r);
    for (cf, c) in &x.terms {
        let p = cf.to_nanophrase();
        let letters: Vec<Letter> = p.letters().collect();
        let n = letters.len();
        let top = max_rank.map_or(n, |m| m.min(n));
        for k in 0..=top {
            let coeff = if alternating && (n - k) % 2 == 1 { -c } else { c.clone() };
            let mut local: HashMap<CanonicalForm, u64> = HashMap::new();
            for_each_subset(n, k, |mask| {
                *local.entry(p.subphrase_by_mask(&letters, mask).canonical_form()).or_insert(0) += 1;
            });
            for (q, m) in local {
                out.add_term(q, &coeff * BigInt::from(m));
            }
        }
    }
    out
}

/// Sum of all subphrases, extended linearly.
pub fn theta(x: &FormalSum) -> FormalSum {
    subphrase_sum(x, None, false)
}

/// Alternating subphrase sum; inverse of [`theta`].
pub fn phi(x: &FormalSum) -> FormalSum {
    subphrase_sum(x, None, true)
}

/// [`theta`] with every term of rank greater than `n` dropped.
pub fn gamma(n: usize, x: &FormalSum) -> FormalSum {
    subphrase_sum(x, Some(n), false)
}

/// Value of an invariant on the formal sum a dotted phrase stands for.
/// A degree-`n` invariant gives an all-zero defect whenever `d` has more
/// than `n` dots.
pub fn finite_type_defect<V, F>(v: F, d: &DottedNanophrase) -> Result<Vec<TaggedValue>>
where
    V: Flatten,
    F: Fn(&Nanophrase) -> Result<V>,
{
    let sum = resolve(d);
    let mut acc: Option<Vec<TaggedValue>> = None;
    for (cf, c) in sum.terms() {
        let c = c.to_i64().ok_or_else(|| Error::Precondition("coefficient overflow".into()))?;
        let values = v(&cf.to_nanophrase())?.flatten();
        let acc = acc.get_or_insert_with(|| values.iter().map(|t| TaggedValue::new(0, t.modulus)).collect());
        if acc.len() != values.len() {
            return Err(Error::Precondition("invariant changed its codomain".into()));
        }
        for (a, t) in acc.iter_mut().zip(&values) {
            *a = a.add_scaled(t, c);
        }
    }
    Ok(acc.unwrap_or_default())
}

pub fn defect_is_zero(defect: &[TaggedValue]) -> bool {
    defect.iter().all(TaggedValue::is_zero)
}

/// Every phrase of rank at most `max_rank` with exactly `dots` of its
/// letters turned into semi-letters, one per choice of letters.
pub fn enumerate_dotted(data: &HomotopyData, r: usize, max_rank: usize, dots: usize) -> Vec<DottedNanophrase> {
    let mut out = Vec::new();
    for cf in crate::groups::enumerate_phrases(data, r, max_rank) {
        if cf.rank() < dots {
            continue;
        }
        let p = cf.to_nanophrase();
        let letters: Vec<Letter> = p.letters().collect();
        for_each_subset(letters.len(), dots, |mask| {
            let dotted = (0..letters.len()).filter(|i| mask >> i & 1 == 1).map(|i| letters[i]).collect();
            out.push(DottedNanophrase {
                phrase: p.clone(),
                dotted,
            });
        });
    }
    out
}

/// First dotted phrase (in enumeration order) on which `v` has a nonzero
/// defect, searching all phrases of rank at most `max_rank` with `dots`
/// semi-letters.
pub fn find_nonvanishing<V, F>(
    v: F,
    data: &HomotopyData,
    r: usize,
    max_rank: usize,
    dots: usize,
) -> Result<Option<(DottedNanophrase, Vec<TaggedValue>)>>
where
    V: Flatten,
    F: Fn(&Nanophrase) -> Result<V> + Sync,
{
    use rayon::prelude::*;
    enumerate_dotted(data, r, max_rank, dots)
        .into_par_iter()
        .map(|d| finite_type_defect(&v, &d).map(|defect| (d, defect)))
        .find_map_first(|res| match res {
            Ok((d, defect)) if !defect_is_zero(&defect) => Some(Ok((d, defect))),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })
        .transpose()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> HomotopyData {
        HomotopyData::parse("alpha: a b c\nS: diagonal").unwrap()
    }

    fn sum(text: &str, d: &HomotopyData) -> FormalSum {
        FormalSum::parse(text, d).unwrap()
    }

    #[test]
    fn resolve_examples() {
        let d = abc();
        let dn = DottedNanophrase::parse("A.BA.B:ab", &d).unwrap();
        assert_eq!(resolve(&dn), sum("ABAB:ab -BB:b", &d));
        let plain = DottedNanophrase::parse("ABAB:ab", &d).unwrap();
        assert_eq!(resolve(&plain), sum("ABAB:ab", &d));
        let aa = DottedNanophrase::parse("A.A.:a", &d).unwrap();
        assert_eq!(resolve(&aa), sum("AA:a -0:", &d));
        assert_eq!(dn.to_text(&d), "A.BA.B:ab");
    }

    #[test]
    fn bracket_examples() {
        let d = abc();
        let p = sum("ABC|BA|C:abc", &d);
        assert_eq!(angle_bracket(&sum("AB|BA|0:ab", &d), &p).unwrap(), 1.into());
        assert_eq!(angle_bracket(&sum("AC|A|C:ac", &d), &p).unwrap(), 1.into());
        let p_eq = sum("ABC|BA|C:aac", &d);
        assert_eq!(angle_bracket(&sum("AC|A|C:ac", &d), &p_eq).unwrap(), 2.into());
        assert_eq!(angle_bracket(&p, &p).unwrap(), 1.into());
        assert_eq!(angle_bracket(&sum("0|0|0:", &d), &p).unwrap(), 1.into());
        assert!(angle_bracket(&sum("AB|BA:ab", &d), &p).is_err());
    }

    #[test]
    fn theta_phi_examples() {
        let d = HomotopyData::gauss();
        let x = sum("AB|AB:aa", &d);
        assert_eq!(theta(&x), sum("AB|AB:aa +2 A|A:a +0|0:", &d));
        assert_eq!(phi(&x), sum("AB|AB:aa -2 A|A:a +0|0:", &d));
        let y = sum("A|BAB:aa -AA|BB:aa", &d);
        assert_eq!(theta(&y), sum("A|BAB:aa +A|A:a -AA|BB:aa -AA|0:a", &d));
        let t = sum("0|0:", &d);
        assert_eq!(theta(&t), t);
        assert_eq!(phi(&t), t);
    }

    #[test]
    fn gamma_examples() {
        let d = HomotopyData::gauss();
        let x = sum("AB|AB:aa", &d);
        assert_eq!(gamma(2, &x), theta(&x));
        assert_eq!(gamma(1, &x), sum("2 A|A:a +0|0:", &d));
        assert_eq!(gamma(0, &sum("ABAB|CC:aaa", &d)), sum("0|0:", &d));
    }

    #[test]
    fn subset_enumeration_counts() {
        for n in 0..8 {
            for k in 0..=n {
                let mut count = 0u64;
                for_each_subset(n, k, |m| {
                    assert_eq!(m.count_ones() as usize, k);
                    count += 1;
                });
                let binom = (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64);
                assert_eq!(count, binom);
            }
        }
    }

    #[test]
    fn parse_and_print_sums() {
        let d = HomotopyData::gauss();
        let x = sum("AB|AB:aa -2 A|A:a +0|0:", &d);
        assert_eq!(x.to_lines(&d), vec!["+1·0|0:", "-2·A|A:a", "+1·AB|AB:aa"]);
        assert_eq!(FormalSum::parse(&x.to_text(&d), &d).unwrap(), x);
    }
}
