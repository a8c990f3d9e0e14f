//! Nanophrases, their canonical forms and the `p:x` text notation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::data::{HomotopyData, Symbol};
use crate::error::{Error, Result};

/// A letter of a nanophrase. Parsed letters `A..Z` map to ids `0..26`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u32);

impl Letter {
    pub fn from_char(c: char) -> Option<Letter> {
        c.is_ascii_uppercase().then(|| Letter(c as u32 - 'A' as u32))
    }

    fn write(self, out: &mut String) {
        if self.0 < 26 {
            out.push(char::from(b'A' + self.0 as u8));
        } else {
            // not representable in the text grammar
            out.push_str(&format!("<{}>", self.0));
        }
    }
}

/// An `r`-component Gauss phrase together with its projection to `alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Nanophrase {
    components: Vec<Vec<Letter>>,
    labels: BTreeMap<Letter, Symbol>,
}

impl Nanophrase {
    pub fn new(components: Vec<Vec<Letter>>, labels: BTreeMap<Letter, Symbol>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Precondition("a phrase needs at least one component".into()));
        }
        let mut counts: BTreeMap<Letter, usize> = BTreeMap::new();
        for &l in components.iter().flatten() {
            *counts.entry(l).or_default() += 1;
        }
        if let Some((l, n)) = counts.iter().find(|(_, &n)| n != 2) {
            return Err(Error::Precondition(format!(
                "letter {} occurs {n} times",
                letter_name(*l)
            )));
        }
        if !counts.keys().eq(labels.keys()) {
            return Err(Error::Precondition(
                "projection must be defined on exactly the occurring letters".into(),
            ));
        }
        Ok(Nanophrase { components, labels })
    }

    pub fn trivial(r: usize) -> Self {
        Nanophrase {
            components: vec![Vec::new(); r.max(1)],
            labels: BTreeMap::new(),
        }
    }

    pub fn parse(text: &str, data: &HomotopyData) -> Result<Self> {
        let dotted = parse_dotted_parts(text, data)?;
        if !dotted.1.is_empty() {
            return Err(Error::phrase(text, "semi-letters are not allowed here"));
        }
        Ok(dotted.0)
    }

    pub fn components(&self) -> &[Vec<Letter>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn labels(&self) -> &BTreeMap<Letter, Symbol> {
        &self.labels
    }

    pub fn label(&self, l: Letter) -> Symbol {
        self.labels[&l]
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.labels.keys().copied()
    }

    /// Number of distinct letters.
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.labels.is_empty()
    }

    /// All letters in component order.
    pub fn concatenation(&self) -> impl Iterator<Item = Letter> + '_ {
        self.components.iter().flatten().copied()
    }

    /// Positions `(component, index)` of the two occurrences of `l`, in
    /// concatenation order.
    pub fn occurrences(&self, l: Letter) -> [(usize, usize); 2] {
        let mut found = [(usize::MAX, usize::MAX); 2];
        let mut k = 0;
        for (c, comp) in self.components.iter().enumerate() {
            for (i, &x) in comp.iter().enumerate() {
                if x == l {
                    found[k] = (c, i);
                    k += 1;
                }
            }
        }
        assert_eq!(k, 2, "letter not in phrase");
        found
    }

    pub fn fresh_letter(&self) -> Letter {
        self.labels
            .keys()
            .next_back()
            .map_or(Letter(0), |l| Letter(l.0 + 1))
    }

    /// The subphrase keeping only letters for which `keep` holds.
    pub fn retain(&self, mut keep: impl FnMut(Letter) -> bool) -> Nanophrase {
        let components = self
            .components
            .iter()
            .map(|c| c.iter().copied().filter(|&l| keep(l)).collect())
            .collect();
        let labels = self
            .labels
            .iter()
            .filter(|(&l, _)| keep(l))
            .map(|(&l, &s)| (l, s))
            .collect();
        Nanophrase { components, labels }
    }

    pub fn delete(&self, letters: &[Letter]) -> Nanophrase {
        self.retain(|l| !letters.contains(&l))
    }

    /// Subphrase whose letters are those selected by `mask` over the sorted
    /// letter list.
    pub fn subphrase_by_mask(&self, letters: &[Letter], mask: u64) -> Nanophrase {
        self.retain(|l| {
            let i = letters.binary_search(&l).expect("letter of phrase");
            mask >> i & 1 == 1
        })
    }

    /// All `2^rank` subphrases, one per subset of letters. The subset order
    /// follows the bits of a counter over the sorted letters, so index 0 is the
    /// trivial phrase and the last index is `self`.
    pub fn subphrases(&self) -> Vec<Nanophrase> {
        let letters: Vec<Letter> = self.letters().collect();
        assert!(letters.len() < 64, "rank too large to enumerate subphrases");
        (0..1u64 << letters.len())
            .map(|mask| self.subphrase_by_mask(&letters, mask))
            .collect()
    }

    /// Applies a bijective renaming of letters.
    pub fn rename(&self, map: &BTreeMap<Letter, Letter>) -> Nanophrase {
        let components = self
            .components
            .iter()
            .map(|c| c.iter().map(|l| map[l]).collect())
            .collect();
        let labels = self.labels.iter().map(|(l, &s)| (map[l], s)).collect();
        Nanophrase { components, labels }
    }

    pub fn with_label(&self, l: Letter, s: Symbol) -> Nanophrase {
        let mut p = self.clone();
        p.labels.insert(l, s);
        p
    }

    pub(crate) fn components_mut(&mut self) -> &mut Vec<Vec<Letter>> {
        &mut self.components
    }

    pub(crate) fn labels_mut(&mut self) -> &mut BTreeMap<Letter, Symbol> {
        &mut self.labels
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        let mut relabel: BTreeMap<Letter, u8> = BTreeMap::new();
        let mut labels = Vec::with_capacity(self.rank());
        let components = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|&l| {
                        *relabel.entry(l).or_insert_with(|| {
                            labels.push(self.labels[&l]);
                            u8::try_from(labels.len() - 1).expect("rank at most 256")
                        })
                    })
                    .collect()
            })
            .collect();
        CanonicalForm { components, labels }
    }

    pub fn is_isomorphic(&self, other: &Nanophrase) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    pub fn display<'a>(&'a self, data: &'a HomotopyData) -> PhraseDisplay<'a> {
        PhraseDisplay { phrase: self, data }
    }

    pub fn to_text(&self, data: &HomotopyData) -> String {
        self.display(data).to_string()
    }
}

pub struct PhraseDisplay<'a> {
    phrase: &'a Nanophrase,
    data: &'a HomotopyData,
}

impl fmt::Display for PhraseDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word: Vec<Symbol> = self.phrase.labels.values().copied().collect();
        f.write_str(&format_components(self.phrase.components.iter().map(|c| c.as_slice()), |_| false))?;
        write!(f, ":{}", self.data.format_word(&word))
    }
}

fn letter_name(l: Letter) -> String {
    let mut s = String::new();
    l.write(&mut s);
    s
}

fn format_components<'a>(
    comps: impl Iterator<Item = &'a [Letter]>,
    dotted: impl Fn(Letter) -> bool,
) -> String {
    let mut out = String::new();
    for (i, comp) in comps.enumerate() {
        if i > 0 {
            out.push('|');
        }
        if comp.is_empty() {
            out.push('0');
        }
        for &l in comp {
            l.write(&mut out);
            if dotted(l) {
                out.push('.');
            }
        }
    }
    out
}

/// Representative of an isomorphism class: letters renamed `0, 1, 2, ...` in
/// order of first occurrence, with `labels[i]` the projection of letter `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    components: Vec<Vec<u8>>,
    labels: Vec<Symbol>,
}

impl CanonicalForm {
    pub fn components(&self) -> &[Vec<u8>] {
        &self.components
    }

    /// Projection word in first-occurrence order.
    pub fn labels(&self) -> &[Symbol] {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn trivial(r: usize) -> Self {
        Nanophrase::trivial(r).canonical_form()
    }

    /// Trusts the caller that letters already appear in first-occurrence
    /// order.
    pub(crate) fn from_raw(components: Vec<Vec<u8>>, labels: Vec<Symbol>) -> Self {
        CanonicalForm { components, labels }
    }

    pub fn to_nanophrase(&self) -> Nanophrase {
        Nanophrase {
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|&l| Letter(l as u32)).collect())
                .collect(),
            labels: self
                .labels
                .iter()
                .enumerate()
                .map(|(i, &s)| (Letter(i as u32), s))
                .collect(),
        }
    }

    pub fn to_text(&self, data: &HomotopyData) -> String {
        self.to_nanophrase().to_text(data)
    }
}

/// Parses `comp|comp:projword`, returning the phrase and its dotted letters.
pub(crate) fn parse_dotted_parts(text: &str, data: &HomotopyData) -> Result<(Nanophrase, BTreeSet<Letter>)> {
    let text = text.trim();
    if text.chars().any(char::is_whitespace) {
        return Err(Error::phrase(text, "whitespace inside a phrase"));
    }
    let Some((body, word)) = text.split_once(':') else {
        return Err(Error::phrase(text, "missing `:` before the projection word"));
    };
    let mut components = Vec::new();
    let mut dots: BTreeMap<Letter, [bool; 2]> = BTreeMap::new();
    let mut counts: BTreeMap<Letter, usize> = BTreeMap::new();
    for comp in body.split('|') {
        if comp == "0" {
            components.push(Vec::new());
            continue;
        }
        if comp.is_empty() {
            return Err(Error::phrase(text, "empty component (write `0`)"));
        }
        let mut letters = Vec::new();
        let mut chars = comp.chars().peekable();
        while let Some(c) = chars.next() {
            let l = Letter::from_char(c)
                .ok_or_else(|| Error::phrase(text, format!("unexpected character `{c}`")))?;
            let dotted = chars.next_if_eq(&'.').is_some();
            let n = counts.entry(l).or_default();
            if *n < 2 {
                dots.entry(l).or_default()[*n] = dotted;
            }
            *n += 1;
            letters.push(l);
        }
        components.push(letters);
    }
    if let Some((l, n)) = counts.iter().find(|(_, &n)| n != 2) {
        return Err(Error::phrase(
            text,
            format!("letter {} occurs {n} times", letter_name(*l)),
        ));
    }
    let symbols = data.parse_word(word).map_err(|e| Error::phrase(text, e.to_string()))?;
    if symbols.len() != counts.len() {
        return Err(Error::phrase(
            text,
            format!(
                "projection word has {} symbols for rank {}",
                symbols.len(),
                counts.len()
            ),
        ));
    }
    let mut dotted = BTreeSet::new();
    for (&l, d) in &dots {
        match d {
            [true, true] => {
                dotted.insert(l);
            }
            [false, false] => {}
            _ => {
                return Err(Error::phrase(
                    text,
                    format!("semi-letter {} must be dotted at both occurrences", letter_name(l)),
                ))
            }
        }
    }
    let labels = counts.keys().copied().zip(symbols).collect();
    Ok((Nanophrase { components, labels }, dotted))
}

pub(crate) fn format_dotted(p: &Nanophrase, dotted: &BTreeSet<Letter>, data: &HomotopyData) -> String {
    let word: Vec<Symbol> = p.labels.values().copied().collect();
    format!(
        "{}:{}",
        format_components(p.components.iter().map(|c| c.as_slice()), |l| dotted.contains(&l)),
        data.format_word(&word)
    )
}
