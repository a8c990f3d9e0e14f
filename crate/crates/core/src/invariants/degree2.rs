use num_traits::ToPrimitive;

use crate::data::{HomotopyData, Symbol};
use crate::error::{Error, Result};
use crate::formal::{bracket_with, FormalSum};
use crate::phrase::{Letter, Nanophrase};

use super::patterns::{make_pattern_phrase, PatternKind};
use super::{Flatten, TaggedValue};

fn require_diagonal(data: &HomotopyData) -> Result<()> {
    if data.s_is_diagonal() {
        Ok(())
    } else {
        Err(Error::NonDiagonalS)
    }
}

fn require_orientation(a: Symbol, data: &HomotopyData) -> Result<()> {
    if data.orientation().contains(&a) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("`{}` is not an orientation symbol", data.name(a))))
    }
}

fn modulus_for(a: Symbol, b: Symbol, data: &HomotopyData) -> u32 {
    if data.is_fixed(a) || data.is_fixed(b) {
        2
    } else {
        0
    }
}

/// `u_{i,j,a,b}`: bracket against the pattern `p_{i,j,a,b}` with the
/// tau-corrections of the four fixed/free cases. Indices are zero based.
pub fn u_invariant(
    i: usize,
    j: usize,
    a: Symbol,
    b: Symbol,
    p: &Nanophrase,
    data: &HomotopyData,
) -> Result<TaggedValue> {
    require_diagonal(data)?;
    require_orientation(a, data)?;
    require_orientation(b, data)?;
    let r = p.component_count();
    if i >= r || j >= r {
        return Err(Error::Precondition(format!("component index out of range 1..={r}")));
    }
    if i == j && a == b {
        return Err(Error::Precondition("u is not invariant when i = j and a = b".into()));
    }
    let pat = |x: Symbol, y: Symbol| -> FormalSum {
        FormalSum::from_phrase(&make_pattern_phrase(PatternKind::P, r, i, j, x, Some(y)).expect("checked"))
    };
    let (ta, tb) = (data.tau(a), data.tau(b));
    let mut u = pat(a, b);
    if !data.is_fixed(a) {
        u -= &pat(ta, b);
    }
    if !data.is_fixed(b) {
        u -= &pat(a, tb);
    }
    if !data.is_fixed(a) && !data.is_fixed(b) {
        u += &pat(ta, tb);
    }
    let v = bracket_with(&u, p)?;
    let v = v.to_i64().ok_or_else(|| Error::Precondition("bracket overflow".into()))?;
    Ok(TaggedValue::new(v, modulus_for(a, b, data)))
}

fn epsilon(a: Symbol, x: Symbol, data: &HomotopyData) -> i64 {
    if x == a {
        1
    } else if x == data.tau(a) {
        -1
    } else {
        0
    }
}

/// Signed alternation `n_p(X, Y)` read on the concatenation of components.
fn alternation(pos: &[[usize; 2]], x: usize, y: usize) -> i64 {
    let ([x0, x1], [y0, y1]) = (pos[x], pos[y]);
    if x0 < y0 && y0 < x1 && x1 < y1 {
        1
    } else if y0 < x0 && x0 < y1 && y1 < x1 {
        -1
    } else {
        0
    }
}

struct Layout {
    letters: Vec<Letter>,
    pos: Vec<[usize; 2]>,
    comp: Vec<Option<usize>>,
}

fn layout(p: &Nanophrase) -> Layout {
    let letters: Vec<Letter> = p.letters().collect();
    let mut pos = vec![[usize::MAX; 2]; letters.len()];
    let mut comp = vec![None; letters.len()];
    let mut seen = vec![0usize; letters.len()];
    let mut first_comp = vec![0usize; letters.len()];
    let mut k = 0;
    for (c, w) in p.components().iter().enumerate() {
        for &l in w {
            let idx = letters.binary_search(&l).expect("letter");
            pos[idx][seen[idx]] = k;
            if seen[idx] == 0 {
                first_comp[idx] = c;
            } else if first_comp[idx] == c {
                comp[idx] = Some(c);
            }
            seen[idx] += 1;
            k += 1;
        }
    }
    Layout { letters, pos, comp }
}

/// `T^i_{a,b}` straight from the definition, for any symbols `a`, `b`.
pub fn t_component(p: &Nanophrase, i: usize, a: Symbol, b: Symbol, data: &HomotopyData) -> Result<TaggedValue> {
    require_diagonal(data)?;
    if i >= p.component_count() {
        return Err(Error::Precondition(format!(
            "component index {} out of range 1..={}",
            i + 1,
            p.component_count()
        )));
    }
    let lay = layout(p);
    Ok(t_from_layout(p, &lay, i, a, b, data))
}

fn t_from_layout(p: &Nanophrase, lay: &Layout, i: usize, a: Symbol, b: Symbol, data: &HomotopyData) -> TaggedValue {
    let n = lay.letters.len();
    let mut total = 0i64;
    for x in 0..n {
        if lay.comp[x] != Some(i) {
            continue;
        }
        let ex = epsilon(a, p.label(lay.letters[x]), data);
        if ex == 0 {
            continue;
        }
        for y in 0..n {
            if x != y {
                total += ex * epsilon(b, p.label(lay.letters[y]), data) * alternation(&lay.pos, x, y);
            }
        }
    }
    TaggedValue::new(total, modulus_for(a, b, data))
}

/// Fukunaga's `T`: for each component, the values `T^i_{a,b}` over
/// ordered pairs of orientation symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TInvariant {
    orientation: Vec<Symbol>,
    values: Vec<Vec<TaggedValue>>,
}

impl TInvariant {
    pub fn component_count(&self) -> usize {
        self.values.len()
    }

    /// `T^i_{a,b}` for arbitrary symbols, via the tau sign relations.
    pub fn get(&self, i: usize, a: Symbol, b: Symbol, data: &HomotopyData) -> Option<TaggedValue> {
        let (ra, rb) = (data.orbit_representative(a), data.orbit_representative(b));
        let ka = self.orientation.iter().position(|&o| o == ra)?;
        let kb = self.orientation.iter().position(|&o| o == rb)?;
        let v = *self.values.get(i)?.get(ka * self.orientation.len() + kb)?;
        let sign = if (ra == a) == (rb == b) { 1 } else { -1 };
        Some(TaggedValue::new(sign * v.value, v.modulus))
    }

    /// Entries of component `i` as `(a, b, value)` in orientation order.
    pub fn entries(&self, i: usize) -> impl Iterator<Item = (Symbol, Symbol, TaggedValue)> + '_ {
        let o = &self.orientation;
        self.values[i]
            .iter()
            .enumerate()
            .map(move |(k, &v)| (o[k / o.len()], o[k % o.len()], v))
    }
}

impl Flatten for TInvariant {
    fn flatten(&self) -> Vec<TaggedValue> {
        self.values.iter().flatten().copied().collect()
    }
}

pub fn t_invariant(p: &Nanophrase, data: &HomotopyData) -> Result<TInvariant> {
    require_diagonal(data)?;
    let lay = layout(p);
    let o = data.orientation().to_vec();
    let values = (0..p.component_count())
        .map(|i| {
            o.iter()
                .flat_map(|&a| o.iter().map(move |&b| (a, b)))
                .map(|(a, b)| t_from_layout(p, &lay, i, a, b, data))
                .collect()
        })
        .collect();
    Ok(TInvariant { orientation: o, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data() -> HomotopyData {
        HomotopyData::parse("alpha: a b c d\ntau: (b c)\nS: diagonal").unwrap()
    }

    #[test]
    fn u_on_its_own_pattern() {
        let d = data();
        let (a, b) = (Symbol(0), Symbol(1));
        for (i, j) in [(0, 1), (1, 0), (0, 0)] {
            let p = make_pattern_phrase(PatternKind::P, 2, i, j, a, Some(b)).unwrap();
            assert_eq!(u_invariant(i, j, a, b, &p, &d).unwrap().value, 1);
            assert_eq!(u_invariant(i, j, a, b, &Nanophrase::trivial(2), &d).unwrap().value, 0);
        }
        let q = Nanophrase::parse("B|B:b", &d).unwrap();
        assert_eq!(u_invariant(0, 1, a, b, &q, &d).unwrap().value, 0);
    }

    #[test]
    fn u_separates_where_t_does_not() {
        let d = data();
        let (a, b) = (Symbol(0), Symbol(1));
        let p = Nanophrase::parse("ABAC|BC|0:abc", &d).unwrap();
        let q = Nanophrase::parse("ABAC|0|BC:abc", &d).unwrap();
        assert_ne!(u_invariant(0, 1, a, b, &p, &d).unwrap(), u_invariant(0, 1, a, b, &q, &d).unwrap());
        assert_eq!(t_invariant(&p, &d).unwrap(), t_invariant(&q, &d).unwrap());
    }

    #[test]
    fn u_preconditions() {
        let d = data();
        let p = Nanophrase::trivial(2);
        assert!(u_invariant(0, 0, Symbol(0), Symbol(0), &p, &d).is_err());
        assert!(u_invariant(0, 1, Symbol(2), Symbol(0), &p, &d).is_err());
        assert!(u_invariant(0, 2, Symbol(0), Symbol(1), &p, &d).is_err());
        let full = d.with_triples(d.full_triples());
        assert!(matches!(u_invariant(0, 1, Symbol(0), Symbol(1), &p, &full), Err(Error::NonDiagonalS)));
        assert!(t_invariant(&p, &full).is_err());
    }

    #[test]
    fn t_examples() {
        let d = data();
        let (a, b, c) = (Symbol(0), Symbol(1), Symbol(2));
        let t = t_invariant(&Nanophrase::trivial(3), &d).unwrap();
        assert!(t.flatten().iter().all(TaggedValue::is_zero));
        let p = Nanophrase::parse("ABAB:ab", &d).unwrap();
        let t = t_invariant(&p, &d).unwrap();
        assert_eq!(t.get(0, a, b, &d).unwrap(), TaggedValue::new(1, 2));
        assert_eq!(t.get(0, b, a, &d).unwrap(), TaggedValue::new(1, 2));
        let p = Nanophrase::parse("ABAB:bb", &d).unwrap();
        assert_eq!(t_invariant(&p, &d).unwrap().get(0, b, b, &d).unwrap(), TaggedValue::integer(0));
        // one letter of component 2 interleaves A from the left
        let p = Nanophrase::parse("Y|XYX:bb", &d).unwrap();
        let t = t_invariant(&p, &d).unwrap();
        assert_eq!(t.get(1, b, b, &d).unwrap(), TaggedValue::integer(-1));
        assert_eq!(t.get(1, c, b, &d).unwrap(), TaggedValue::integer(1));
        assert_eq!(t.get(1, c, c, &d).unwrap(), TaggedValue::integer(-1));
        assert_eq!(t_component(&p, 1, c, b, &d).unwrap(), TaggedValue::integer(1));
    }
}
