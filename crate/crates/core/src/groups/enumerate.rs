use crate::data::{HomotopyData, Symbol};
use crate::phrase::CanonicalForm;

/// Words in which each of `0..k` occurs twice and letters first appear in
/// increasing order.
fn double_occurrence_words(k: usize) -> Vec<Vec<u8>> {
    fn go(word: &mut Vec<u8>, counts: &mut Vec<u8>, k: usize, out: &mut Vec<Vec<u8>>) {
        if word.len() == 2 * k {
            out.push(word.clone());
            return;
        }
        let opened = counts.len();
        for l in 0..opened {
            if counts[l] == 1 {
                counts[l] = 2;
                word.push(l as u8);
                go(word, counts, k, out);
                word.pop();
                counts[l] = 1;
            }
        }
        if opened < k {
            counts.push(1);
            word.push(opened as u8);
            go(word, counts, k, out);
            word.pop();
            counts.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(2 * k), &mut Vec::with_capacity(k), k, &mut out);
    out
}

/// Ways to cut a word of length `len` into `r` possibly empty pieces, as
/// piece lengths.
fn compositions(len: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return if len == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if r == 1 {
        return vec![vec![len]];
    }
    let mut out = Vec::new();
    for first in 0..=len {
        for mut rest in compositions(len - first, r - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn labelings(k: usize, alpha: usize) -> Vec<Vec<Symbol>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..alpha).map(move |s| {
                    let mut w = w.clone();
                    w.push(Symbol(s as u16));
                    w
                })
            })
            .collect();
    }
    out
}

/// Every isomorphism class of `r`-component phrases of rank at most
/// `max_rank`, ordered by rank and then by printed form.
pub fn enumerate_phrases(data: &HomotopyData, r: usize, max_rank: usize) -> Vec<CanonicalForm> {
    let mut out = Vec::new();
    for k in 0..=max_rank {
        let mut level: Vec<(String, CanonicalForm)> = Vec::new();
        let labels = labelings(k, data.len());
        for word in double_occurrence_words(k) {
            for cuts in compositions(2 * k, r) {
                let mut comps = Vec::with_capacity(r);
                let mut at = 0;
                for len in cuts {
                    comps.push(word[at..at + len].to_vec());
                    at += len;
                }
                for lab in &labels {
                    let cf = CanonicalForm::from_raw(comps.clone(), lab.clone());
                    level.push((cf.to_text(data), cf));
                }
            }
        }
        level.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        out.extend(level.into_iter().map(|(_, cf)| cf));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    use crate::phrase::Nanophrase;

    #[test]
    fn gauss_word_counts() {
        let d = HomotopyData::gauss();
        let texts: Vec<String> = enumerate_phrases(&d, 1, 2).iter().map(|c| c.to_text(&d)).collect();
        assert_eq!(texts, ["0:", "AA:a", "AABB:aa", "ABAB:aa", "ABBA:aa"]);
        assert_eq!(enumerate_phrases(&d, 1, 4).len(), 125);
        assert_eq!(enumerate_phrases(&d, 1, 0).len(), 1);
    }

    #[test]
    fn forms_are_canonical_and_distinct() {
        let d = HomotopyData::parse("alpha: a b").unwrap();
        let all = enumerate_phrases(&d, 2, 2);
        let set: HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), all.len());
        for cf in &all {
            assert_eq!(&cf.to_nanophrase().canonical_form(), cf);
        }
        // (2k-1)!! words, 2k+1 places to cut, 2^k labelings
        let by_rank = |k| all.iter().filter(|c| c.rank() == k).count();
        assert_eq!(by_rank(0), 1);
        assert_eq!(by_rank(1), 3 * 2);
        assert_eq!(by_rank(2), 15 * 4);
        assert!(all.contains(&Nanophrase::parse("A|A:b", &d).unwrap().canonical_form()));
    }
}
