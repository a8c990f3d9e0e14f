//! Homotopy data `(alpha, tau, S)` with an optional shift involution `nu`.
//!
//! The config format is line based:
//!
//! ```text
//! alpha: a+ a- b+ b-
//! tau: (a+ b-) (a- b+)
//! S: a+,a+,a+ a-,a-,a-
//! nu: (a+ b+) (a- b-)
//! ```
//!
//! Symbols not listed in a `tau:`/`nu:` line are fixed points. `S:` accepts
//! `diagonal`, `full`, juxtaposed single-character triples (`aaa abb`) or
//! comma separated triples for multi-character symbols. A `nu:` line, even an
//! empty one, marks the data as supporting shift moves.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a symbol in the alphabet `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u16);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub const GAUSS_PRESET: &str = "\
alpha: a
tau:
S: diagonal
nu:
";

pub const VKNOT_PRESET: &str = "\
alpha: a+ a- b+ b-
tau: (a+ b-) (a- b+)
S: a+,a+,a+ a+,a+,a- a+,a-,a- a-,a-,a- a-,a-,a+ a-,a+,a+ b+,b+,b+ b+,b+,b- b+,b-,b- b-,b-,b- b-,b-,b+ b-,b+,b+
nu: (a+ b+) (a- b-)
";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyData {
    symbols: Vec<String>,
    tau: Vec<Symbol>,
    s_set: BTreeSet<[Symbol; 3]>,
    nu: Option<Vec<Symbol>>,
    orientation: Vec<Symbol>,
}

impl HomotopyData {
    /// Builds validated homotopy data. `tau` and `nu` are given as images of
    /// every symbol, in alphabet order.
    pub fn new(
        symbols: Vec<String>,
        tau: Vec<Symbol>,
        s_set: BTreeSet<[Symbol; 3]>,
        nu: Option<Vec<Symbol>>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for s in &symbols {
            if !seen.insert(s.as_str()) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
            if s.is_empty() || s.contains(|c: char| c.is_whitespace() || "|:,().".contains(c)) {
                return Err(Error::Config {
                    line: 0,
                    msg: format!("invalid symbol `{s}`"),
                });
            }
        }
        let n = symbols.len();
        if n == 0 {
            return Err(Error::Config {
                line: 0,
                msg: "alpha must not be empty".into(),
            });
        }
        if n > u16::MAX as usize {
            return Err(Error::Config {
                line: 0,
                msg: "alpha too large".into(),
            });
        }
        check_involution("tau", &symbols, &tau)?;
        if let Some(nu) = &nu {
            check_involution("nu", &symbols, nu)?;
        }
        for t in &s_set {
            if t.iter().any(|s| s.index() >= n) {
                return Err(Error::UnknownSymbol(format!("#{}", t[0].0)));
            }
        }
        let mut data = HomotopyData {
            symbols,
            tau,
            s_set,
            nu,
            orientation: Vec::new(),
        };
        data.orientation = data.compute_orientation();
        Ok(data)
    }

    /// Least symbol name (lexicographically) of each tau-orbit, in alphabet
    /// order.
    fn compute_orientation(&self) -> Vec<Symbol> {
        self.all_symbols()
            .filter(|&a| {
                let b = self.tau(a);
                self.name(a) <= self.name(b)
            })
            .collect()
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "gauss" => Self::parse(GAUSS_PRESET),
            "vknot" => Self::parse(VKNOT_PRESET),
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }

    /// Gauss words: one symbol, trivial tau, diagonal S and trivial nu.
    pub fn gauss() -> Self {
        Self::preset("gauss").expect("built-in preset")
    }

    pub fn vknot() -> Self {
        Self::preset("vknot").expect("built-in preset")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut alpha: Option<Vec<String>> = None;
        let mut tau_line: Option<(usize, String)> = None;
        let mut s_line: Option<(usize, String)> = None;
        let mut nu_line: Option<(usize, String)> = None;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                return Err(Error::Config {
                    line: line_no,
                    msg: format!("expected `key: value`, got `{line}`"),
                });
            };
            let value = value.trim().to_string();
            let slot = match key.trim() {
                "alpha" => {
                    if alpha.is_some() {
                        return Err(dup_key(line_no, "alpha"));
                    }
                    alpha = Some(value.split_whitespace().map(str::to_string).collect());
                    continue;
                }
                "tau" => &mut tau_line,
                "S" => &mut s_line,
                "nu" => &mut nu_line,
                other => {
                    return Err(Error::Config {
                        line: line_no,
                        msg: format!("unknown key `{other}`"),
                    })
                }
            };
            if slot.is_some() {
                return Err(dup_key(line_no, key.trim()));
            }
            *slot = Some((line_no, value));
        }

        let symbols = alpha.ok_or(Error::Config {
            line: 0,
            msg: "missing `alpha:` line".into(),
        })?;
        let mut seen = BTreeSet::new();
        for s in &symbols {
            if !seen.insert(s.as_str()) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        let lookup = |name: &str| -> Result<Symbol> {
            symbols
                .iter()
                .position(|s| s == name)
                .map(|i| Symbol(i as u16))
                .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
        };

        let tau = match &tau_line {
            Some((line, v)) => parse_pairs("tau", *line, v, symbols.len(), &lookup)?,
            None => identity(symbols.len()),
        };
        let nu = match &nu_line {
            Some((line, v)) => Some(parse_pairs("nu", *line, v, symbols.len(), &lookup)?),
            None => None,
        };
        let s_set = match &s_line {
            Some((line, v)) => parse_triples(*line, v, &symbols, &lookup)?,
            None => BTreeSet::new(),
        };
        Self::new(symbols, tau, s_set, nu)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn all_symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.symbols.len()).map(|i| Symbol(i as u16))
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.symbols[s.index()]
    }

    pub fn symbol(&self, name: &str) -> Result<Symbol> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .map(|i| Symbol(i as u16))
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn tau(&self, s: Symbol) -> Symbol {
        self.tau[s.index()]
    }

    pub fn nu(&self, s: Symbol) -> Option<Symbol> {
        self.nu.as_ref().map(|nu| nu[s.index()])
    }

    pub fn has_nu(&self) -> bool {
        self.nu.is_some()
    }

    pub fn is_fixed(&self, s: Symbol) -> bool {
        self.tau(s) == s
    }

    pub fn in_s(&self, a: Symbol, b: Symbol, c: Symbol) -> bool {
        self.s_set.contains(&[a, b, c])
    }

    pub fn triples(&self) -> impl Iterator<Item = [Symbol; 3]> + '_ {
        self.s_set.iter().copied()
    }

    pub fn s_is_diagonal(&self) -> bool {
        self.s_set.len() == self.len() && self.s_set.iter().all(|t| t[0] == t[1] && t[1] == t[2])
    }

    /// One representative per tau-orbit.
    pub fn orientation(&self) -> &[Symbol] {
        &self.orientation
    }

    pub fn orbit_representative(&self, s: Symbol) -> Symbol {
        let t = self.tau(s);
        if self.orientation.contains(&s) {
            s
        } else {
            t
        }
    }

    /// Number of fixed orbits `k` and free orbits `l` of tau.
    pub fn orbit_counts(&self) -> (usize, usize) {
        let fixed = self.orientation.iter().filter(|&&a| self.is_fixed(a)).count();
        (fixed, self.orientation.len() - fixed)
    }

    /// Splits a projection word into symbols by greedy longest match.
    pub fn parse_word(&self, word: &str) -> Result<Vec<Symbol>> {
        let mut out = Vec::new();
        let mut rest = word;
        while !rest.is_empty() {
            let best = self
                .symbols
                .iter()
                .enumerate()
                .filter(|(_, s)| rest.starts_with(s.as_str()))
                .max_by_key(|(_, s)| s.len());
            match best {
                Some((i, s)) => {
                    out.push(Symbol(i as u16));
                    rest = &rest[s.len()..];
                }
                None => return Err(Error::UnknownSymbol(rest.to_string())),
            }
        }
        Ok(out)
    }

    pub fn format_word(&self, word: &[Symbol]) -> String {
        word.iter().map(|&s| self.name(s)).collect()
    }

    /// Same data with `S` replaced.
    pub fn with_triples(&self, s_set: BTreeSet<[Symbol; 3]>) -> Self {
        HomotopyData {
            s_set,
            ..self.clone()
        }
    }

    pub fn diagonal_triples(&self) -> BTreeSet<[Symbol; 3]> {
        self.all_symbols().map(|a| [a, a, a]).collect()
    }

    pub fn full_triples(&self) -> BTreeSet<[Symbol; 3]> {
        let mut set = BTreeSet::new();
        for a in self.all_symbols() {
            for b in self.all_symbols() {
                for c in self.all_symbols() {
                    set.insert([a, b, c]);
                }
            }
        }
        set
    }
}

impl fmt::Display for HomotopyData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alpha: {}", self.symbols.join(" "))?;
        write!(f, "tau:")?;
        for a in self.all_symbols() {
            let b = self.tau(a);
            if a < b {
                write!(f, " ({} {})", self.name(a), self.name(b))?;
            }
        }
        writeln!(f)?;
        write!(f, "S:")?;
        for t in &self.s_set {
            write!(f, " {},{},{}", self.name(t[0]), self.name(t[1]), self.name(t[2]))?;
        }
        writeln!(f)?;
        if let Some(nu) = &self.nu {
            write!(f, "nu:")?;
            for a in self.all_symbols() {
                let b = nu[a.index()];
                if a < b {
                    write!(f, " ({} {})", self.name(a), self.name(b))?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn identity(n: usize) -> Vec<Symbol> {
    (0..n).map(|i| Symbol(i as u16)).collect()
}

fn dup_key(line: usize, key: &str) -> Error {
    Error::Config {
        line,
        msg: format!("duplicate `{key}:` line"),
    }
}

fn check_involution(map: &'static str, symbols: &[String], images: &[Symbol]) -> Result<()> {
    if images.len() != symbols.len() {
        return Err(Error::NotInvolution {
            map,
            detail: format!("{} images for {} symbols", images.len(), symbols.len()),
        });
    }
    for (i, &img) in images.iter().enumerate() {
        if img.index() >= symbols.len() || images[img.index()].index() != i {
            return Err(Error::NotInvolution {
                map,
                detail: format!("{map}({map}({})) != {}", symbols[i], symbols[i]),
            });
        }
    }
    Ok(())
}

/// Parses `(x y) (u v) ...` into a full image table, unlisted symbols fixed.
fn parse_pairs(
    map: &'static str,
    line: usize,
    value: &str,
    n: usize,
    lookup: &dyn Fn(&str) -> Result<Symbol>,
) -> Result<Vec<Symbol>> {
    let mut images: Vec<Option<Symbol>> = vec![None; n];
    let mut rest = value.trim();
    while !rest.is_empty() {
        let Some(inner) = rest.strip_prefix('(') else {
            return Err(Error::Config {
                line,
                msg: format!("expected `(` in `{rest}`"),
            });
        };
        let Some(close) = inner.find(')') else {
            return Err(Error::Config {
                line,
                msg: "unbalanced parenthesis".into(),
            });
        };
        let names: Vec<&str> = inner[..close].split_whitespace().collect();
        let [x, y] = names.as_slice() else {
            return Err(Error::Config {
                line,
                msg: format!("`({})` is not a pair", &inner[..close]),
            });
        };
        let (x, y) = (lookup(x)?, lookup(y)?);
        for (from, to) in [(x, y), (y, x)] {
            match images[from.index()] {
                Some(prev) if prev != to => {
                    return Err(Error::NotInvolution {
                        map,
                        detail: format!("symbol #{} listed in two pairs", from.0),
                    })
                }
                _ => images[from.index()] = Some(to),
            }
        }
        rest = inner[close + 1..].trim_start();
    }
    Ok(images
        .into_iter()
        .enumerate()
        .map(|(i, img)| img.unwrap_or(Symbol(i as u16)))
        .collect())
}

fn parse_triples(
    line: usize,
    value: &str,
    symbols: &[String],
    lookup: &dyn Fn(&str) -> Result<Symbol>,
) -> Result<BTreeSet<[Symbol; 3]>> {
    let all = identity(symbols.len());
    match value.trim() {
        "diagonal" => return Ok(all.iter().map(|&a| [a, a, a]).collect()),
        "full" => {
            let mut set = BTreeSet::new();
            for &a in &all {
                for &b in &all {
                    for &c in &all {
                        set.insert([a, b, c]);
                    }
                }
            }
            return Ok(set);
        }
        _ => {}
    }
    let single_char = symbols.iter().all(|s| s.chars().count() == 1);
    let mut set = BTreeSet::new();
    for token in value.split_whitespace() {
        let parts: Vec<String> = if token.contains(',') {
            token.split(',').map(str::to_string).collect()
        } else if single_char {
            token.chars().map(|c| c.to_string()).collect()
        } else {
            return Err(Error::Config {
                line,
                msg: format!("triple `{token}` needs commas for multi-character symbols"),
            });
        };
        if parts.len() != 3 {
            return Err(Error::Config {
                line,
                msg: format!("`{token}` is not a triple"),
            });
        }
        set.insert([lookup(&parts[0])?, lookup(&parts[1])?, lookup(&parts[2])?]);
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_word_data() {
        let d = HomotopyData::parse("alpha: a\ntau: \nS: aaa").unwrap();
        assert_eq!(d.len(), 1);
        let a = Symbol(0);
        assert_eq!(d.tau(a), a);
        assert!(d.s_is_diagonal());
        assert_eq!(d.orientation(), &[a]);
        assert!(!d.has_nu());
    }

    #[test]
    fn free_orbit_without_triples() {
        let d = HomotopyData::parse("alpha: a b\ntau: (a b)\nS:").unwrap();
        assert_eq!(d.tau(Symbol(0)), Symbol(1));
        assert_eq!(d.triples().count(), 0);
        assert_eq!(d.orientation(), &[Symbol(0)]);
        assert_eq!(d.orbit_counts(), (0, 1));
    }

    #[test]
    fn vknot_preset() {
        let d = HomotopyData::vknot();
        let ap = d.symbol("a+").unwrap();
        let am = d.symbol("a-").unwrap();
        let bp = d.symbol("b+").unwrap();
        let bm = d.symbol("b-").unwrap();
        assert_eq!(d.tau(ap), bm);
        assert_eq!(d.tau(am), bp);
        assert_eq!(d.triples().count(), 12);
        assert!(d.in_s(ap, ap, am));
        assert!(!d.in_s(ap, am, ap));
        assert_eq!(d.nu(ap), Some(bp));
        assert_eq!(d.orientation(), &[ap, am]);
        assert_eq!(d.parse_word("a+b-a-").unwrap(), vec![ap, bm, am]);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(matches!(
            HomotopyData::parse("alpha: a b c\ntau: (a b) (b c)"),
            Err(Error::NotInvolution { .. })
        ));
        assert!(matches!(
            HomotopyData::parse("alpha: a b\nS: abz"),
            Err(Error::UnknownSymbol(_))
        ));
        assert!(matches!(
            HomotopyData::parse("alpha: a a"),
            Err(Error::DuplicateSymbol(_))
        ));
        assert!(matches!(
            HomotopyData::parse("alpha: a b\nnu: (a c)"),
            Err(Error::UnknownSymbol(_))
        ));
        assert!(matches!(HomotopyData::preset("knot"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn full_and_diagonal_keywords() {
        let d = HomotopyData::parse("alpha: a b c\ntau: (a b)\nS: full").unwrap();
        assert_eq!(d.triples().count(), 27);
        let d = HomotopyData::parse("alpha: a b c\nS: diagonal").unwrap();
        assert!(d.s_is_diagonal());
    }

    #[test]
    fn display_round_trips() {
        for d in [HomotopyData::gauss(), HomotopyData::vknot()] {
            assert_eq!(HomotopyData::parse(&d.to_string()).unwrap(), d);
        }
    }
}
