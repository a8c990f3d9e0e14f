//! Homotopy moves on nanophrases.
//!
//! Named letter pairs in a move pattern (`AA`, `AB`, `BA`, ...) must be
//! neighbours inside one component; the `|` separators only ever sit inside
//! the unnamed stretches `x`, `y`, `z`, `t`.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::data::HomotopyData;
use crate::error::{Error, Result};
use crate::phrase::{CanonicalForm, Letter, Nanophrase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    H1Remove,
    H1Insert,
    H2Remove,
    H2Insert,
    H3Forward,
    H3Backward,
    Shift,
}

/// Where a move acts. For removals and H3 the letters and positions refer to
/// the source phrase; for insertions they refer to the result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSite {
    /// Letters in pattern order (`A`, then `B`, then `C`).
    pub letters: Vec<Letter>,
    /// `(component, index)` of every occurrence involved, in concatenation
    /// order.
    pub positions: Vec<(usize, usize)>,
    /// Component rotated by a shift move.
    pub component: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct MoveInstance {
    pub kind: MoveKind,
    pub site: MoveSite,
    pub result: Nanophrase,
}

/// Flattened view of a phrase with component bookkeeping.
struct Layout {
    flat: Vec<Letter>,
    comp_of: Vec<usize>,
    offsets: Vec<usize>,
    occ: HashMap<Letter, [usize; 2]>,
}

impl Layout {
    fn new(p: &Nanophrase) -> Self {
        let mut flat = Vec::new();
        let mut comp_of = Vec::new();
        let mut offsets = Vec::new();
        for (c, comp) in p.components().iter().enumerate() {
            offsets.push(flat.len());
            for &l in comp {
                flat.push(l);
                comp_of.push(c);
            }
        }
        let mut occ: HashMap<Letter, [usize; 2]> = HashMap::new();
        for (i, &l) in flat.iter().enumerate() {
            occ.entry(l).and_modify(|o| o[1] = i).or_insert([i, usize::MAX]);
        }
        Layout {
            flat,
            comp_of,
            offsets,
            occ,
        }
    }

    /// Positions `i` and `i + 1` are neighbours in one component.
    fn adjacent(&self, i: usize) -> bool {
        i + 1 < self.flat.len() && self.comp_of[i] == self.comp_of[i + 1]
    }

    fn other(&self, l: Letter, pos: usize) -> usize {
        let [a, b] = self.occ[&l];
        if a == pos {
            b
        } else {
            a
        }
    }

    fn position(&self, i: usize) -> (usize, usize) {
        let c = self.comp_of[i];
        (c, i - self.offsets[c])
    }

    fn positions(&self, idx: &[usize]) -> Vec<(usize, usize)> {
        let mut idx = idx.to_vec();
        idx.sort_unstable();
        idx.into_iter().map(|i| self.position(i)).collect()
    }
}

/// Swaps the letters at each `(i, i + 1)` pair of flat positions.
fn swap_pairs(p: &Nanophrase, layout: &Layout, starts: &[usize]) -> Nanophrase {
    let mut out = p.clone();
    let comps = out.components_mut();
    for &i in starts {
        let (c, k) = layout.position(i);
        comps[c].swap(k, k + 1);
    }
    out
}

/// All H1 and H2 deletions and every H3 application (both directions).
pub fn enumerate_reductions(p: &Nanophrase, data: &HomotopyData) -> Vec<MoveInstance> {
    let layout = Layout::new(p);
    let mut out = Vec::new();
    let n = layout.flat.len();

    for i in 0..n {
        if !layout.adjacent(i) {
            continue;
        }
        let (x, y) = (layout.flat[i], layout.flat[i + 1]);
        if x == y {
            out.push(MoveInstance {
                kind: MoveKind::H1Remove,
                site: MoveSite {
                    letters: vec![x],
                    positions: layout.positions(&[i, i + 1]),
                    component: None,
                },
                result: p.delete(&[x]),
            });
            continue;
        }
        // H2: x A B y B A z
        let (a, b) = (x, y);
        let ob = layout.other(b, i + 1);
        let oa = layout.other(a, i);
        if ob > i + 1 && oa == ob + 1 && layout.adjacent(ob) && data.tau(p.label(a)) == p.label(b) {
            out.push(MoveInstance {
                kind: MoveKind::H2Remove,
                site: MoveSite {
                    letters: vec![a, b],
                    positions: layout.positions(&[i, i + 1, ob, oa]),
                    component: None,
                },
                result: p.delete(&[a, b]),
            });
        }
    }

    out.extend(h3_sites(p, data, &layout));
    out
}

fn h3_sites(p: &Nanophrase, data: &HomotopyData, layout: &Layout) -> Vec<MoveInstance> {
    let mut out = Vec::new();
    for i in 0..layout.flat.len() {
        if !layout.adjacent(i) {
            continue;
        }
        let (x, y) = (layout.flat[i], layout.flat[i + 1]);
        if x == y {
            continue;
        }

        // forward: x A B y A C z B C t
        {
            let (a, b) = (x, y);
            let q = layout.other(a, i);
            if q > i + 1 && layout.adjacent(q) {
                let c = layout.flat[q + 1];
                if c != a && c != b {
                    let s = layout.other(b, i + 1);
                    if s > q + 1 && layout.adjacent(s) && layout.flat[s + 1] == c && layout.other(c, q + 1) == s + 1 {
                        let (la, lb, lc) = (p.label(a), p.label(b), p.label(c));
                        if data.in_s(la, lb, lc) {
                            out.push(MoveInstance {
                                kind: MoveKind::H3Forward,
                                site: MoveSite {
                                    letters: vec![a, b, c],
                                    positions: layout.positions(&[i, i + 1, q, q + 1, s, s + 1]),
                                    component: None,
                                },
                                result: swap_pairs(p, layout, &[i, q, s]),
                            });
                        }
                    }
                }
            }
        }

        // backward: x B A y C A z C B t
        {
            let (b, a) = (x, y);
            let qa = layout.other(a, i + 1);
            if qa >= 1 {
                let q = qa - 1;
                if q > i + 1 && layout.adjacent(q) {
                    let c = layout.flat[q];
                    if c != a && c != b {
                        let s = layout.other(c, q);
                        if s > q + 1 && layout.adjacent(s) && layout.flat[s + 1] == b && layout.other(b, i) == s + 1 {
                            let (la, lb, lc) = (p.label(a), p.label(b), p.label(c));
                            if data.in_s(la, lb, lc) {
                                out.push(MoveInstance {
                                    kind: MoveKind::H3Backward,
                                    site: MoveSite {
                                        letters: vec![a, b, c],
                                        positions: layout.positions(&[i, i + 1, q, q + 1, s, s + 1]),
                                        component: None,
                                    },
                                    result: swap_pairs(p, layout, &[i, q, s]),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Gaps `(component, index)` where letters may be inserted, in concatenation
/// order.
fn gaps(p: &Nanophrase) -> Vec<(usize, usize)> {
    p.components()
        .iter()
        .enumerate()
        .flat_map(|(c, comp)| (0..=comp.len()).map(move |i| (c, i)))
        .collect()
}

/// All H1 and H2 insertions that keep the rank at most `max_rank`, one
/// instance per resulting isomorphism class.
pub fn enumerate_insertions(p: &Nanophrase, data: &HomotopyData, max_rank: usize) -> Vec<MoveInstance> {
    let mut out = Vec::new();
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let rank = p.rank();
    let gaps = gaps(p);

    if rank < max_rank {
        let x = p.fresh_letter();
        for &(c, i) in &gaps {
            for s in data.all_symbols() {
                let mut q = p.clone();
                q.components_mut()[c].splice(i..i, [x, x]);
                q.labels_mut().insert(x, s);
                if seen.insert(q.canonical_form()) {
                    out.push(MoveInstance {
                        kind: MoveKind::H1Insert,
                        site: MoveSite {
                            letters: vec![x],
                            positions: vec![(c, i), (c, i + 1)],
                            component: None,
                        },
                        result: q,
                    });
                }
            }
        }
    }

    if rank + 2 <= max_rank {
        let a = p.fresh_letter();
        let b = Letter(a.0 + 1);
        for (gi, &(c1, i1)) in gaps.iter().enumerate() {
            for &(c2, i2) in &gaps[gi..] {
                for sa in data.all_symbols() {
                    let sb = data.tau(sa);
                    let mut q = p.clone();
                    let positions;
                    {
                        let comps = q.components_mut();
                        if (c1, i1) == (c2, i2) {
                            comps[c1].splice(i1..i1, [a, b, b, a]);
                            positions = vec![(c1, i1), (c1, i1 + 1), (c1, i1 + 2), (c1, i1 + 3)];
                        } else {
                            // later gap first so earlier indices stay valid
                            comps[c2].splice(i2..i2, [b, a]);
                            comps[c1].splice(i1..i1, [a, b]);
                            let shift = if c1 == c2 { 2 } else { 0 };
                            positions = vec![(c1, i1), (c1, i1 + 1), (c2, i2 + shift), (c2, i2 + shift + 1)];
                        }
                    }
                    q.labels_mut().insert(a, sa);
                    q.labels_mut().insert(b, sb);
                    if seen.insert(q.canonical_form()) {
                        out.push(MoveInstance {
                            kind: MoveKind::H2Insert,
                            site: MoveSite {
                                letters: vec![a, b],
                                positions,
                                component: None,
                            },
                            result: q,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Shift move on component `i`: its first letter moves to the end, and its
/// label becomes `nu(label)` when both occurrences lie in that component.
/// Components with fewer than two letters are left unchanged.
pub fn shift(p: &Nanophrase, i: usize, data: &HomotopyData) -> Result<Nanophrase> {
    if !data.has_nu() {
        return Err(Error::MissingNu);
    }
    if i >= p.component_count() {
        return Err(Error::Precondition(format!(
            "component {} out of range for {} components",
            i + 1,
            p.component_count()
        )));
    }
    let comp = &p.components()[i];
    if comp.len() < 2 {
        return Ok(p.clone());
    }
    let first = comp[0];
    let internal = comp[1..].contains(&first);
    let mut q = p.clone();
    q.components_mut()[i].rotate_left(1);
    if internal {
        let nu = data.nu(p.label(first)).expect("checked above");
        q.labels_mut().insert(first, nu);
    }
    Ok(q)
}

/// One shift move per component of length at least two.
pub fn shift_moves(p: &Nanophrase, data: &HomotopyData) -> Result<Vec<MoveInstance>> {
    if !data.has_nu() {
        return Err(Error::MissingNu);
    }
    let mut out = Vec::new();
    for (i, comp) in p.components().iter().enumerate() {
        if comp.len() >= 2 {
            out.push(MoveInstance {
                kind: MoveKind::Shift,
                site: MoveSite {
                    letters: vec![comp[0]],
                    positions: vec![(i, 0)],
                    component: Some(i),
                },
                result: shift(p, i, data)?,
            });
        }
    }
    Ok(out)
}

/// Every phrase one move away from `p` within the rank bound.
pub fn neighbours(p: &Nanophrase, data: &HomotopyData, max_rank: usize, closed: bool) -> Result<Vec<Nanophrase>> {
    let mut out: Vec<Nanophrase> = enumerate_reductions(p, data).into_iter().map(|m| m.result).collect();
    out.extend(enumerate_insertions(p, data, max_rank).into_iter().map(|m| m.result));
    if closed {
        out.extend(shift_moves(p, data)?.into_iter().map(|m| m.result));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_rank: usize,
    pub max_states: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equivalence {
    /// A path of this many moves was found.
    Equivalent(usize),
    /// No path exists inside the bounds; says nothing about the unbounded
    /// question.
    Unknown,
}

/// Breadth-first search for a homotopy from `p` to `q` over isomorphism
/// classes.
pub fn bounded_equiv(
    p: &Nanophrase,
    q: &Nanophrase,
    data: &HomotopyData,
    bounds: SearchBounds,
    closed: bool,
) -> Result<Equivalence> {
    if p.component_count() != q.component_count() {
        return Err(Error::ComponentMismatch {
            left: p.component_count(),
            right: q.component_count(),
        });
    }
    if closed && !data.has_nu() {
        return Err(Error::MissingNu);
    }
    let target = q.canonical_form();
    let start = p.canonical_form();
    if start == target {
        return Ok(Equivalence::Equivalent(0));
    }
    let max_rank = bounds.max_rank.max(p.rank());
    let mut seen: HashSet<CanonicalForm> = HashSet::from([start.clone()]);
    let mut frontier = VecDeque::from([(start, 0usize)]);
    while let Some((cf, depth)) = frontier.pop_front() {
        for next in neighbours(&cf.to_nanophrase(), data, max_rank, closed)? {
            let next = next.canonical_form();
            if next == target {
                return Ok(Equivalence::Equivalent(depth + 1));
            }
            if seen.len() >= bounds.max_states {
                return Ok(Equivalence::Unknown);
            }
            if seen.insert(next.clone()) {
                frontier.push_back((next, depth + 1));
            }
        }
    }
    Ok(Equivalence::Unknown)
}
