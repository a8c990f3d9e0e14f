//! Seeded random phrases, formal sums and single homotopy moves, for
//! property tests and the CLI's randomized checks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::data::{HomotopyData, Symbol};
use crate::error::{Error, Result};
use crate::formal::FormalSum;
use crate::moves::{shift, MoveKind};
use crate::phrase::{Letter, Nanophrase};

pub use rand::SeedableRng;

/// The generator used everywhere a seed is accepted.
pub type Rng64 = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_symbol(rng: &mut impl Rng, data: &HomotopyData) -> Symbol {
    Symbol(rng.gen_range(0..data.len()) as u16)
}

/// Uniformly shuffled Gauss phrase of the given rank, cut into `r`
/// components at random, with random labels.
pub fn random_phrase(rng: &mut impl Rng, data: &HomotopyData, r: usize, rank: usize) -> Nanophrase {
    assert!(r > 0, "need at least one component");
    let mut flat: Vec<Letter> = (0..rank as u32).flat_map(|i| [Letter(i), Letter(i)]).collect();
    flat.shuffle(rng);
    let mut cuts: Vec<usize> = (0..r - 1).map(|_| rng.gen_range(0..=flat.len())).collect();
    cuts.sort_unstable();
    cuts.push(flat.len());
    let mut comps = Vec::with_capacity(r);
    let mut at = 0;
    for c in cuts {
        comps.push(flat[at..c].to_vec());
        at = c;
    }
    let labels = (0..rank as u32).map(|i| (Letter(i), random_symbol(rng, data))).collect();
    Nanophrase::new(comps, labels).expect("well-formed by construction")
}

/// Random phrase whose rank is uniform in `0..=max_rank`.
pub fn random_phrase_up_to(rng: &mut impl Rng, data: &HomotopyData, r: usize, max_rank: usize) -> Nanophrase {
    let rank = rng.gen_range(0..=max_rank);
    random_phrase(rng, data, r, rank)
}

/// Random formal sum of `terms` phrases with coefficients in `-3..=3`.
pub fn random_formal_sum(
    rng: &mut impl Rng,
    data: &HomotopyData,
    r: usize,
    max_rank: usize,
    terms: usize,
) -> FormalSum {
    let mut s = FormalSum::zero(r);
    for _ in 0..terms {
        let p = random_phrase_up_to(rng, data, r, max_rank);
        s.add_term(p.canonical_form(), BigInt::from(rng.gen_range(-3..=3)));
    }
    s
}

fn random_gap(rng: &mut impl Rng, p: &Nanophrase) -> (usize, usize) {
    let total: usize = p.components().iter().map(|c| c.len() + 1).sum();
    let mut k = rng.gen_range(0..total);
    for (c, comp) in p.components().iter().enumerate() {
        if k <= comp.len() {
            return (c, k);
        }
        k -= comp.len() + 1;
    }
    unreachable!()
}

/// Inserts each piece at its gap. Gaps are given in concatenation order;
/// pieces sharing a gap keep their order.
fn insert_pieces(p: &Nanophrase, pieces: &[((usize, usize), Vec<Letter>)], labels: &[(Letter, Symbol)]) -> Nanophrase {
    let mut comps = p.components().to_vec();
    for ((c, i), piece) in pieces.iter().rev() {
        comps[*c].splice(*i..*i, piece.iter().copied());
    }
    let mut all: BTreeMap<Letter, Symbol> = p.labels().clone();
    all.extend(labels.iter().copied());
    Nanophrase::new(comps, all).expect("fresh letters")
}

fn sorted_gaps<const N: usize>(rng: &mut impl Rng, p: &Nanophrase) -> [(usize, usize); N] {
    let mut g = [(0, 0); N];
    for x in g.iter_mut() {
        *x = random_gap(rng, p);
    }
    g.sort_unstable();
    g
}

/// A phrase and its image under one homotopy move. `kind` selects the move
/// family (`H1Insert`, `H2Insert`, `H3Forward` or `Shift`); the move is
/// planted at random positions of `p`, so every family is exercised
/// whatever `p` looks like. Returns `None` when the data admit no such move
/// (empty `S` for H3).
pub fn plant_move(
    rng: &mut impl Rng,
    p: &Nanophrase,
    data: &HomotopyData,
    kind: MoveKind,
) -> Result<Option<(Nanophrase, Nanophrase)>> {
    let a = p.fresh_letter();
    let (b, c) = (Letter(a.0 + 1), Letter(a.0 + 2));
    Ok(match kind {
        MoveKind::H1Insert | MoveKind::H1Remove => {
            let [g] = sorted_gaps(rng, p);
            let q = insert_pieces(p, &[(g, vec![a, a])], &[(a, random_symbol(rng, data))]);
            Some((q, p.clone()))
        }
        MoveKind::H2Insert | MoveKind::H2Remove => {
            let [g1, g2] = sorted_gaps(rng, p);
            let s = random_symbol(rng, data);
            let q = insert_pieces(p, &[(g1, vec![a, b]), (g2, vec![b, a])], &[(a, s), (b, data.tau(s))]);
            Some((q, p.clone()))
        }
        MoveKind::H3Forward | MoveKind::H3Backward => {
            let triples: Vec<[Symbol; 3]> = data.triples().collect();
            let Some(&[sa, sb, sc]) = triples.choose(rng) else {
                return Ok(None);
            };
            let [g1, g2, g3] = sorted_gaps(rng, p);
            let labels = [(a, sa), (b, sb), (c, sc)];
            let left = insert_pieces(p, &[(g1, vec![a, b]), (g2, vec![a, c]), (g3, vec![b, c])], &labels);
            let right = insert_pieces(p, &[(g1, vec![b, a]), (g2, vec![c, a]), (g3, vec![c, b])], &labels);
            Some((left, right))
        }
        MoveKind::Shift => {
            if !data.has_nu() {
                return Err(Error::MissingNu);
            }
            let i = rng.gen_range(0..p.component_count());
            Some((p.clone(), shift(p, i, data)?))
        }
    })
}

/// A random base phrase of rank at most `max_rank` together with a random
/// planted move. Shift moves are drawn only when `closed` is set.
pub fn random_move_pair(
    rng: &mut impl Rng,
    data: &HomotopyData,
    r: usize,
    max_rank: usize,
    closed: bool,
) -> Result<(Nanophrase, Nanophrase, MoveKind)> {
    let mut kinds = vec![MoveKind::H1Insert, MoveKind::H2Insert];
    if data.triples().next().is_some() {
        kinds.push(MoveKind::H3Forward);
    }
    if closed {
        kinds.push(MoveKind::Shift);
    }
    let kind = *kinds.choose(rng).expect("nonempty");
    let p = random_phrase_up_to(rng, data, r, max_rank);
    let (x, y) = plant_move(rng, &p, data, kind)?.expect("kind filtered above");
    Ok((x, y, kind))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::enumerate_reductions;

    #[test]
    fn same_seed_same_phrases() {
        let d = HomotopyData::vknot();
        let a: Vec<_> = (0..5).scan(rng_from_seed(7), |g, _| Some(random_phrase(g, &d, 3, 4))).collect();
        let b: Vec<_> = (0..5).scan(rng_from_seed(7), |g, _| Some(random_phrase(g, &d, 3, 4))).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|p| p.rank() == 4 && p.component_count() == 3));
    }

    #[test]
    fn planted_moves_are_found_by_the_enumerator() {
        let d = HomotopyData::vknot();
        let mut g = rng_from_seed(1);
        for _ in 0..200 {
            let p = random_phrase_up_to(&mut g, &d, 2, 3);
            for kind in [MoveKind::H1Insert, MoveKind::H2Insert, MoveKind::H3Forward] {
                let (x, y) = plant_move(&mut g, &p, &d, kind).unwrap().unwrap();
                let target = y.canonical_form();
                assert!(
                    enumerate_reductions(&x, &d).iter().any(|m| m.result.canonical_form() == target),
                    "{kind:?}: {} -> {}",
                    x.to_text(&d),
                    y.to_text(&d)
                );
            }
        }
    }

    #[test]
    fn h3_needs_triples() {
        let d = HomotopyData::parse("alpha: a").unwrap();
        let mut g = rng_from_seed(3);
        let p = Nanophrase::trivial(1);
        assert!(plant_move(&mut g, &p, &d, MoveKind::H3Forward).unwrap().is_none());
        assert!(plant_move(&mut g, &p, &d, MoveKind::Shift).is_err());
    }
}
