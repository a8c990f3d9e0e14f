//! The universal finite type groups `G_n(alpha, tau, S, r)`.
//!
//! Generators are the isomorphism classes of `r`-component phrases of rank at
//! most `n`. Relations come from every H1, H2 and H3 site of every phrase of
//! rank at most `n + 1`, written in the subphrase-sum basis and truncated to
//! rank `n`; the closed variant adds `p - shift_i(p)`. The cokernel is read
//! off a Smith normal form.

mod enumerate;
mod reduce;
mod snf;

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::data::HomotopyData;
use crate::error::{Error, Result};
use crate::formal::{gamma, FormalSum};
use crate::invariants::TaggedValue;
use crate::moves::{enumerate_reductions, shift, MoveKind};
use crate::phrase::{CanonicalForm, Letter, Nanophrase};

pub use enumerate::enumerate_phrases;
pub use snf::{smith_normal_form, IntMatrix, SmithForm};

use reduce::Echelon;

/// Sparse relation row: `(generator index, coefficient)` sorted by index.
pub type RelationRow = Vec<(usize, i64)>;

#[derive(Debug, Clone)]
pub struct GroupPresentation {
    r: usize,
    n: usize,
    closed: bool,
    generators: Vec<CanonicalForm>,
    index: HashMap<CanonicalForm, usize>,
    relations: Vec<RelationRow>,
}

impl GroupPresentation {
    pub fn component_count(&self) -> usize {
        self.r
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn generators(&self) -> &[CanonicalForm] {
        &self.generators
    }

    pub fn relations(&self) -> &[RelationRow] {
        &self.relations
    }

    pub fn index_of(&self, cf: &CanonicalForm) -> Option<usize> {
        self.index.get(cf).copied()
    }

    /// Relation matrix as a dense integer matrix.
    pub fn matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.relations.len(), self.generators.len());
        for (i, row) in self.relations.iter().enumerate() {
            for &(j, c) in row {
                m.set(i, j, BigInt::from(c));
            }
        }
        m
    }

    /// One relation per line, tab-separated `coeff*phrase` terms.
    pub fn relations_tsv(&self, data: &HomotopyData) -> String {
        let mut out = String::new();
        for row in &self.relations {
            let terms: Vec<String> = row
                .iter()
                .map(|&(j, c)| format!("{c:+}*{}", self.generators[j].to_text(data)))
                .collect();
            out.push_str(&terms.join("\t"));
            out.push('\n');
        }
        out
    }

    /// One generator per line: index and phrase.
    pub fn generators_tsv(&self, data: &HomotopyData) -> String {
        self.generators
            .iter()
            .enumerate()
            .map(|(i, g)| format!("{i}\t{}\n", g.to_text(data)))
            .collect()
    }
}

struct RowBuilder<'a> {
    index: &'a HashMap<CanonicalForm, usize>,
    n: usize,
    terms: Vec<(usize, i64)>,
}

impl RowBuilder<'_> {
    fn add(&mut self, p: &Nanophrase, c: i64) {
        if p.rank() <= self.n {
            let j = self.index[&p.canonical_form()];
            self.terms.push((j, c));
        }
    }

    /// Merged, zero-free, sorted, with a positive leading coefficient.
    fn finish(mut self) -> Option<RelationRow> {
        self.terms.sort_unstable();
        let mut row: RelationRow = Vec::with_capacity(self.terms.len());
        for (j, c) in self.terms {
            match row.last_mut() {
                Some((k, d)) if *k == j => *d += c,
                _ => row.push((j, c)),
            }
        }
        row.retain(|&(_, c)| c != 0);
        if row.first()?.1 < 0 {
            row.iter_mut().for_each(|t| t.1 = -t.1);
        }
        Some(row)
    }
}

fn base_relations(
    base: &CanonicalForm,
    data: &HomotopyData,
    n: usize,
    closed: bool,
    index: &HashMap<CanonicalForm, usize>,
) -> Result<Vec<RelationRow>> {
    let p = base.to_nanophrase();
    let mut rows = Vec::new();
    let builder = || RowBuilder {
        index,
        n,
        terms: Vec::new(),
    };
    for m in enumerate_reductions(&p, data) {
        let mut b = builder();
        let del = |q: &Nanophrase, l: Letter| q.delete(&[l]);
        match m.kind {
            MoveKind::H1Remove => b.add(&p, 1),
            MoveKind::H2Remove => {
                let (x, y) = (m.site.letters[0], m.site.letters[1]);
                b.add(&p, 1);
                b.add(&del(&p, y), 1);
                b.add(&del(&p, x), 1);
            }
            MoveKind::H3Forward => {
                let q = &m.result;
                let (x, y, z) = (m.site.letters[0], m.site.letters[1], m.site.letters[2]);
                for (side, sign) in [(&p, 1), (q, -1)] {
                    b.add(side, sign);
                    b.add(&del(side, z), sign);
                    b.add(&del(side, y), sign);
                    b.add(&del(side, x), sign);
                }
            }
            // the backward instance is the forward one read from the other side
            _ => continue,
        }
        rows.extend(b.finish());
    }
    if closed && p.rank() <= n {
        for i in 0..p.component_count() {
            if p.components()[i].len() >= 2 {
                let mut b = builder();
                b.add(&p, 1);
                b.add(&shift(&p, i, data)?, -1);
                rows.extend(b.finish());
            }
        }
    }
    Ok(rows)
}

/// Generators and relation rows of `G_n`, or of the closed-homotopy group
/// when `closed` is set. Rows are deduplicated, in a deterministic order.
pub fn generate_relations(data: &HomotopyData, r: usize, n: usize, closed: bool) -> Result<GroupPresentation> {
    if closed && !data.has_nu() {
        return Err(Error::MissingNu);
    }
    let bases = enumerate_phrases(data, r, n + 1);
    let generators: Vec<CanonicalForm> = bases.iter().filter(|b| b.rank() <= n).cloned().collect();
    let index: HashMap<CanonicalForm, usize> = generators.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
    let per_base: Vec<Vec<RelationRow>> = bases
        .par_iter()
        .map(|b| base_relations(b, data, n, closed, &index))
        .collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    let relations = per_base
        .into_iter()
        .flatten()
        .filter(|row| seen.insert(row.clone()))
        .collect();
    Ok(GroupPresentation {
        r,
        n,
        closed,
        generators,
        index,
        relations,
    })
}

/// One output coordinate: a linear form on generator coefficients, read in
/// `Z` (`modulus == 0`) or in `Z/modulus`.
#[derive(Debug, Clone)]
struct Coordinate {
    form: Vec<(usize, BigInt)>,
    modulus: BigInt,
}

/// A finitely generated abelian group `Z^f (+) Z/d1 (+) ...` together with
/// the map from generator coefficients to coordinates.
#[derive(Debug, Clone)]
pub struct AbelianGroupStructure {
    r: usize,
    n: usize,
    closed: bool,
    data_text: String,
    generators: Vec<CanonicalForm>,
    index: HashMap<CanonicalForm, usize>,
    without_trivial: bool,
    free_rank: usize,
    torsion: Vec<BigInt>,
    coords: Vec<Coordinate>,
}

impl AbelianGroupStructure {
    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Invariant factors `d >= 2`, each dividing the next.
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn generators(&self) -> &[CanonicalForm] {
        &self.generators
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn component_count(&self) -> usize {
        self.r
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Whether the trivial phrase was dropped from the generators, giving
    /// `H_n` rather than `G_n`.
    pub fn is_reduced(&self) -> bool {
        self.without_trivial
    }

    /// Number of coordinates: free ones first, then one per torsion factor.
    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    /// Coordinates of a formal sum. Terms of rank above `n` are ignored, as
    /// is the trivial phrase for `H_n`.
    pub fn coordinates(&self, x: &FormalSum) -> Result<Vec<TaggedValue>> {
        if x.component_count() != self.r {
            return Err(Error::StructureMismatch(format!(
                "sum has {} components, structure has {}",
                x.component_count(),
                self.r
            )));
        }
        let mut vec: HashMap<usize, &BigInt> = HashMap::new();
        for (cf, c) in x.terms() {
            if cf.rank() > self.n || (self.without_trivial && cf.rank() == 0) {
                continue;
            }
            let j = *self
                .index
                .get(cf)
                .ok_or_else(|| Error::StructureMismatch("phrase outside the generator set".into()))?;
            vec.insert(j, c);
        }
        self.coords
            .iter()
            .map(|co| {
                let mut s = BigInt::zero();
                for (j, c) in &co.form {
                    if let Some(x) = vec.get(j) {
                        s += c * *x;
                    }
                }
                let (s, m) = if co.modulus.is_zero() {
                    (s, 0u32)
                } else {
                    let m = co
                        .modulus
                        .to_u32()
                        .ok_or_else(|| Error::Precondition("torsion factor too large".into()))?;
                    (((s % &co.modulus) + &co.modulus) % &co.modulus, m)
                };
                let v = s.to_i64().ok_or_else(|| Error::Precondition("coordinate overflow".into()))?;
                Ok(TaggedValue::new(v, m))
            })
            .collect()
    }

    /// Checks that the structure was built for these homotopy data.
    pub fn matches(&self, data: &HomotopyData) -> bool {
        self.data_text == data.to_string()
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" (+) "))
        }
    }
}

/// Cokernel of a presentation; with `without_trivial` the trivial-phrase
/// generator is left out, which computes `H_n`.
pub fn structure_from_presentation(
    pres: &GroupPresentation,
    data: &HomotopyData,
    without_trivial: bool,
) -> AbelianGroupStructure {
    let all = pres.generators.len();
    let skip = if without_trivial {
        pres.index_of(&CanonicalForm::trivial(pres.r))
    } else {
        None
    };
    // columns of the working matrix -> generator indices
    let cols: Vec<usize> = (0..all).filter(|&j| Some(j) != skip).collect();
    let col_of: HashMap<usize, usize> = cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();

    let mut ech = Echelon::new(cols.len());
    for row in &pres.relations {
        let mut v = vec![BigInt::zero(); cols.len()];
        for &(j, c) in row {
            // the trivial column never appears in a relation
            v[col_of[&j]] = BigInt::from(c);
        }
        ech.insert(v);
    }
    let reduced = ech.into_matrix();
    let snf = smith_normal_form(&reduced);

    let mut free = Vec::new();
    let mut torsion = Vec::new();
    for k in 0..cols.len() {
        let d = snf.factors.get(k).cloned().unwrap_or_else(BigInt::zero);
        let form: Vec<(usize, BigInt)> = (0..cols.len())
            .filter(|&i| !snf.v.get(i, k).is_zero())
            .map(|i| (cols[i], snf.v.get(i, k).clone()))
            .collect();
        if d.is_zero() {
            free.push(Coordinate {
                form,
                modulus: BigInt::zero(),
            });
        } else if !d.abs().is_one() {
            torsion.push(Coordinate { form, modulus: d.abs() });
        }
    }
    let free_rank = free.len();
    let torsion_factors = torsion.iter().map(|c| c.modulus.clone()).collect();
    free.extend(torsion);
    AbelianGroupStructure {
        r: pres.r,
        n: pres.n,
        closed: pres.closed,
        data_text: data.to_string(),
        generators: pres.generators.clone(),
        index: pres.index.clone(),
        without_trivial,
        free_rank,
        torsion: torsion_factors,
        coords: free,
    }
}

/// `G_n(alpha, tau, S, r)`, or its closed-homotopy quotient.
pub fn group_structure(data: &HomotopyData, r: usize, n: usize, closed: bool) -> Result<AbelianGroupStructure> {
    let pres = generate_relations(data, r, n, closed)?;
    Ok(structure_from_presentation(&pres, data, false))
}

/// `H_n`: the group generated by the non-trivial phrases, so that
/// `G_n = Z (+) H_n`.
pub fn reduced_group_structure(data: &HomotopyData, r: usize, n: usize, closed: bool) -> Result<AbelianGroupStructure> {
    let pres = generate_relations(data, r, n, closed)?;
    Ok(structure_from_presentation(&pres, data, true))
}

/// Coordinates of the universal degree-`n` invariant `Gamma_n(p)`. With
/// `normalize`, the coordinates of the trivial phrase are subtracted so that
/// it maps to zero.
pub fn gamma_coordinates(
    p: &Nanophrase,
    structure: &AbelianGroupStructure,
    normalize: bool,
) -> Result<Vec<TaggedValue>> {
    if p.component_count() != structure.r {
        return Err(Error::StructureMismatch(format!(
            "phrase has {} components, structure has {}",
            p.component_count(),
            structure.r
        )));
    }
    let g = gamma(structure.n, &FormalSum::from_phrase(p));
    let mut out = structure.coordinates(&g)?;
    if normalize {
        let t = structure.coordinates(&FormalSum::from_phrase(&Nanophrase::trivial(structure.r)))?;
        for (x, y) in out.iter_mut().zip(t) {
            *x = x.add_scaled(&y, -1);
        }
    }
    Ok(out)
}

/// Checks that every relation row maps to zero.
pub fn annihilates_relations(structure: &AbelianGroupStructure, pres: &GroupPresentation) -> Result<bool> {
    for row in &pres.relations {
        let mut x = FormalSum::zero(pres.r);
        for &(j, c) in row {
            x.add_term(pres.generators[j].clone(), BigInt::from(c));
        }
        if !structure.coordinates(&x)?.iter().all(TaggedValue::is_zero) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss_group(n: usize) -> String {
        group_structure(&HomotopyData::gauss(), 1, n, false).unwrap().to_string()
    }

    #[test]
    fn low_degree_gauss_groups() {
        assert_eq!(gauss_group(0), "Z");
        assert_eq!(gauss_group(1), "Z");
        assert_eq!(gauss_group(2), "Z");
        assert_eq!(gauss_group(3), "Z");
    }

    #[test]
    fn degree_zero_has_no_relations() {
        let d = HomotopyData::vknot();
        for r in 1..=2 {
            let pres = generate_relations(&d, r, 0, false).unwrap();
            assert_eq!(pres.generators().len(), 1);
            assert!(pres.relations().is_empty());
            assert_eq!(structure_from_presentation(&pres, &d, false).to_string(), "Z");
        }
    }

    #[test]
    fn type_two_instance_on_abcacb() {
        let d = HomotopyData::gauss();
        let pres = generate_relations(&d, 1, 2, false).unwrap();
        let j = |s: &str| pres.index_of(&Nanophrase::parse(s, &d).unwrap().canonical_form());
        // ABCACB has rank 3, so only the truncated terms survive
        assert!(j("ABCACB:aaa").is_none());
        let abab = j("ABAB:aa").unwrap();
        assert!(pres.relations().iter().any(|r| r == &vec![(abab, 2)]));
    }

    #[test]
    fn structure_kills_relations() {
        let d = HomotopyData::parse("alpha: a b c\ntau: (a b)\nS: diagonal").unwrap();
        let pres = generate_relations(&d, 1, 2, false).unwrap();
        let s = structure_from_presentation(&pres, &d, false);
        assert!(annihilates_relations(&s, &pres).unwrap());
        let h = structure_from_presentation(&pres, &d, true);
        assert_eq!(h.free_rank() + 1, s.free_rank());
        assert_eq!(h.torsion(), s.torsion());
    }

    #[test]
    fn closed_needs_nu() {
        let d = HomotopyData::parse("alpha: a").unwrap();
        assert!(matches!(generate_relations(&d, 1, 1, true), Err(Error::MissingNu)));
    }

    #[test]
    fn normalized_gamma_of_trivial_is_zero() {
        let d = HomotopyData::gauss();
        let s = group_structure(&d, 1, 2, false).unwrap();
        let c = gamma_coordinates(&Nanophrase::trivial(1), &s, true).unwrap();
        assert!(c.iter().all(TaggedValue::is_zero));
        let c = gamma_coordinates(&Nanophrase::trivial(1), &s, false).unwrap();
        assert!(!c.iter().all(TaggedValue::is_zero));
    }
}
