use std::collections::HashSet;

use crate::data::{HomotopyData, Symbol};
use crate::error::{Error, Result};
use crate::formal::subphrase_histogram;
use crate::phrase::{CanonicalForm, Letter, Nanophrase};

use super::TaggedValue;

/// The six rank-4 Gauss words whose subword count gives `v4`.
pub const V4_WORDS: [&str; 6] = ["ABACDCBD", "ABCACDBD", "ABCADBDC", "ABCBDACD", "ABCDBDAC", "ABCDCADB"];

fn word_form(w: &str) -> CanonicalForm {
    let letters: Vec<Letter> = w.chars().map(|c| Letter::from_char(c).expect("letter")).collect();
    let labels = letters.iter().map(|&l| (l, Symbol(0))).collect();
    Nanophrase::new(vec![letters], labels).expect("valid word").canonical_form()
}

/// Parity of the number of rank-4 subwords isomorphic to one of
/// [`V4_WORDS`]. Needs a one-component phrase over single-symbol data.
pub fn v4(w: &Nanophrase, data: &HomotopyData) -> Result<TaggedValue> {
    if w.component_count() != 1 {
        return Err(Error::Precondition(format!(
            "v4 needs a Gauss word, got {} components",
            w.component_count()
        )));
    }
    if data.len() != 1 || !data.s_is_diagonal() {
        return Err(Error::Precondition("v4 needs Gauss-word homotopy data".into()));
    }
    let targets: HashSet<CanonicalForm> = V4_WORDS.iter().map(|w| word_form(w)).collect();
    let n: u64 = subphrase_histogram(w, 4)
        .into_iter()
        .filter(|(cf, _)| targets.contains(cf))
        .map(|(_, k)| k)
        .sum();
    Ok(TaggedValue::new((n % 2) as i64, 2))
}
