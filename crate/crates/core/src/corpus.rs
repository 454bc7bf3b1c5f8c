//! The golden corpus of expected values and the small expression language its
//! square tables are written in.
//!
//! Weights: `2b1+b{m-1}`, `mu2`, `st`. `bN` is the N-th fundamental weight,
//! `muN = e1+…+eN` for `BC_m`, indices in braces are relative to the rank `m`,
//! and index `0` or `m+1` stands for the zero weight.
//!
//! Modules: summands `[mult][P]V[weight]` or `[mult]k` joined by ` + `, where
//! `P` marks the parity flip.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::characters::{Decomposition, IrrepLabel, SquareKind, Summand};
use crate::error::{Error, Result};
use crate::repdims::{standard_weight, DominantWeight};
use crate::rootsys::{Family, FamilyRank, RootSystem, Q};

const EMBEDDED: &str = include_str!("../data/expected.json");

#[derive(Clone, Debug, Deserialize)]
pub struct Table1Entry {
    pub system: FamilyRank,
    pub rho_norm_sq: String,
    pub max_coroot_norm_sq: String,
    pub dim_g: i64,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Table2Entry {
    pub system: FamilyRank,
    pub r: Vec<String>,
}

/// Which systems a row applies to: one system, a family at listed ranks, or a
/// family from a minimum rank up to the caller's bound.
#[derive(Clone, Debug, Default, Deserialize)]
pub struct Scope {
    #[serde(default)]
    pub system: Option<FamilyRank>,
    #[serde(default)]
    pub family: Option<Family>,
    #[serde(default)]
    pub ranks: Option<Vec<usize>>,
    #[serde(default)]
    pub min_rank: Option<usize>,
}

impl Scope {
    pub fn instances(&self, bound: usize) -> Result<Vec<FamilyRank>> {
        if let Some(id) = self.system {
            return Ok(if id.rank <= bound { vec![id] } else { vec![] });
        }
        let family = self
            .family
            .ok_or_else(|| Error::Corpus("row has neither system nor family".into()))?;
        let ranks: Vec<usize> = match (&self.ranks, self.min_rank) {
            (Some(r), None) => r.clone(),
            (None, Some(lo)) => (lo..=bound).collect(),
            _ => return Err(Error::Corpus(format!("{family}: need exactly one of ranks/min_rank"))),
        };
        ranks
            .into_iter()
            .filter(|&m| m <= bound)
            .map(|m| FamilyRank::new(family, m).map_err(|e| Error::Corpus(e.to_string())))
            .collect()
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct SquareRow {
    #[serde(flatten)]
    pub scope: Scope,
    pub weight: String,
    pub sym: String,
    pub alt: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct BucketEntry {
    #[serde(flatten)]
    pub scope: Scope,
    pub weight: String,
}

/// The four lists of the classification statement.
#[derive(Clone, Debug, Deserialize)]
pub struct TheoremBuckets {
    pub sym_irreducible: Vec<BucketEntry>,
    pub sym_plus_trivial: Vec<BucketEntry>,
    pub alt_irreducible: Vec<BucketEntry>,
    pub alt_plus_trivial: Vec<BucketEntry>,
}

impl TheoremBuckets {
    pub fn bucket(&self, kind: SquareKind, plus_trivial: bool) -> &[BucketEntry] {
        match (kind, plus_trivial) {
            (SquareKind::Symmetric, false) => &self.sym_irreducible,
            (SquareKind::Symmetric, true) => &self.sym_plus_trivial,
            (SquareKind::Alternating, false) => &self.alt_irreducible,
            (SquareKind::Alternating, true) => &self.alt_plus_trivial,
        }
    }
}

/// A literal entry known to be wrong, with the value that replaces it.
#[derive(Clone, Debug, Deserialize)]
pub struct Erratum {
    pub table: String,
    pub system: FamilyRank,
    pub weight: String,
    #[serde(default)]
    pub kind: Option<SquareKind>,
    #[serde(default)]
    pub bucket: Option<String>,
    #[serde(default)]
    pub corrected: Option<String>,
    /// A weight that belongs in the tables but has no row.
    #[serde(default)]
    pub missing_row: bool,
    pub note: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Corpus {
    pub version: u32,
    pub table1: Vec<Table1Entry>,
    pub table2: Vec<Table2Entry>,
    pub table3: Vec<SquareRow>,
    pub table4: Vec<SquareRow>,
    pub table5: Vec<SquareRow>,
    pub theorem: TheoremBuckets,
    pub errata: Vec<Erratum>,
}

/// One square-table row instantiated at a concrete system.
#[derive(Clone, Debug)]
pub struct SquareInstance {
    pub table: u8,
    pub system: FamilyRank,
    pub weight_expr: String,
    pub weight: DominantWeight,
    pub sym: Decomposition,
    pub alt: Decomposition,
}

impl SquareInstance {
    pub fn expected(&self, kind: SquareKind) -> &Decomposition {
        match kind {
            SquareKind::Symmetric => &self.sym,
            SquareKind::Alternating => &self.alt,
        }
    }
}

impl Corpus {
    /// The corpus shipped with the crate.
    pub fn embedded() -> Result<Self> {
        Self::from_str(EMBEDDED)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Corpus(format!("{}: {e}", path.display())))?;
        Self::from_str(&text)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn from_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Corpus(e.to_string()))
    }

    /// Embedded corpus unless a path is given.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            Some(p) => Self::from_path(p),
            None => Self::embedded(),
        }
    }

    pub fn square_rows(&self, table: u8) -> &[SquareRow] {
        match table {
            3 => &self.table3,
            4 => &self.table4,
            _ => &self.table5,
        }
    }

    /// Every row of tables 3–5 at every system of rank at most `bound`.
    pub fn square_instances(&self, bound: usize) -> Result<Vec<SquareInstance>> {
        let mut out = Vec::new();
        for table in [3u8, 4, 5] {
            for row in self.square_rows(table) {
                for id in row.scope.instances(bound)? {
                    let rs = RootSystem::new(id);
                    out.push(SquareInstance {
                        table,
                        system: id,
                        weight_expr: row.weight.clone(),
                        weight: eval_weight(&rs, &row.weight)?,
                        sym: eval_module(&rs, &row.sym)?,
                        alt: eval_module(&rs, &row.alt)?,
                    });
                }
            }
        }
        Ok(out)
    }

    /// The erratum for a square entry, matched on the instantiated weight.
    pub fn square_erratum(&self, id: FamilyRank, weight: &DominantWeight, kind: SquareKind) -> Option<&Erratum> {
        let rs = RootSystem::new(id);
        self.errata.iter().find(|e| {
            e.system == id
                && e.kind == Some(kind)
                && e.bucket.is_none()
                && eval_weight(&rs, &e.weight).ok().as_ref() == Some(weight)
        })
    }

    pub fn missing_row_erratum(&self, id: FamilyRank, weight: &DominantWeight) -> Option<&Erratum> {
        let rs = RootSystem::new(id);
        self.errata
            .iter()
            .find(|e| e.system == id && e.missing_row && eval_weight(&rs, &e.weight).ok().as_ref() == Some(weight))
    }

    pub fn bucket_erratum(&self, bucket: &str, id: FamilyRank, weight: &DominantWeight) -> Option<&Erratum> {
        let rs = RootSystem::new(id);
        self.errata.iter().find(|e| {
            e.system == id
                && e.bucket.as_deref() == Some(bucket)
                && eval_weight(&rs, &e.weight).ok().as_ref() == Some(weight)
        })
    }

    pub fn table1_expected(&self, id: FamilyRank) -> Option<&Table1Entry> {
        self.table1.iter().find(|e| e.system == id)
    }

    pub fn table2_expected(&self, id: FamilyRank) -> Option<&Table2Entry> {
        self.table2.iter().find(|e| e.system == id)
    }
}

/// Parses `p` or `p/q`.
pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::Corpus(format!("bad rational '{s}'"));
    match s.trim().split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            s: src.as_bytes(),
            pos: 0,
            src,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Corpus(format!("{what} at byte {} of '{}'", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos] == b' ' {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, t: &str) -> bool {
        if self.s[self.pos..].starts_with(t.as_bytes()) {
            self.pos += t.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<i64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.src[start..self.pos].parse().expect("digits"))
    }

    fn done(&self) -> bool {
        self.pos >= self.s.len()
    }
}

fn index(c: &mut Cursor, m: i64) -> Result<i64> {
    if let Some(n) = c.number() {
        return Ok(n);
    }
    if !c.eat(b'{') {
        return Err(c.err("expected index"));
    }
    if !c.eat(b'm') {
        return Err(c.err("expected 'm'"));
    }
    let v = if c.eat(b'-') {
        m - c.number().ok_or_else(|| c.err("expected offset"))?
    } else if c.eat(b'+') {
        m + c.number().ok_or_else(|| c.err("expected offset"))?
    } else {
        m
    };
    if !c.eat(b'}') {
        return Err(c.err("expected '}'"));
    }
    Ok(v)
}

fn weight_terms(rs: &RootSystem, c: &mut Cursor) -> Result<Vec<i64>> {
    let m = rs.rank() as i64;
    let mut acc = vec![0i64; rs.rank()];
    loop {
        let coef = c.number().unwrap_or(1);
        let (i, mu) = if c.eat_str("mu") {
            (index(c, m)?, true)
        } else if c.eat(b'b') {
            (index(c, m)?, false)
        } else {
            return Err(c.err("expected 'b' or 'mu'"));
        };
        if mu && !rs.id().is_super() {
            return Err(c.err("mu is only defined for BC"));
        }
        if i < 0 || i > m + 1 {
            return Err(c.err(&format!("index {i} outside 0..={} for {}", m + 1, rs.id())));
        }
        if (1..=m).contains(&i) {
            let step = if mu && i == m { 2 } else { 1 };
            acc[(i - 1) as usize] += coef * step;
        }
        if !c.eat(b'+') {
            return Ok(acc);
        }
    }
}

/// Evaluates a weight expression at a concrete system.
pub fn eval_weight(rs: &RootSystem, expr: &str) -> Result<DominantWeight> {
    let expr = expr.trim();
    if expr == "st" {
        return standard_weight(rs);
    }
    if expr == "0" {
        return Ok(DominantWeight::zero(rs));
    }
    let mut c = Cursor::new(expr);
    let v = weight_terms(rs, &mut c)?;
    if !c.done() {
        return Err(c.err("trailing input"));
    }
    DominantWeight::new(rs, &v).map_err(|e| Error::Corpus(format!("'{expr}' at {}: {e}", rs.id())))
}

/// Evaluates a module expression to a decomposition with merged summands.
pub fn eval_module(rs: &RootSystem, expr: &str) -> Result<Decomposition> {
    let mut c = Cursor::new(expr.trim());
    let mut parts: BTreeMap<IrrepLabel, u64> = BTreeMap::new();
    let mut trivial = 0u64;
    loop {
        c.skip_ws();
        let mult = c.number().unwrap_or(1) as u64;
        let flipped = c.eat(b'P');
        if c.eat(b'k') {
            if flipped {
                *parts
                    .entry(IrrepLabel {
                        highest: DominantWeight::zero(rs),
                        flipped,
                    })
                    .or_default() += mult;
            } else {
                trivial += mult;
            }
        } else if c.eat_str("V[") {
            let v = weight_terms(rs, &mut c)?;
            if !c.eat(b']') {
                return Err(c.err("expected ']'"));
            }
            let highest =
                DominantWeight::new(rs, &v).map_err(|e| Error::Corpus(format!("'{expr}' at {}: {e}", rs.id())))?;
            if highest.is_zero() && !flipped {
                trivial += mult;
            } else {
                *parts.entry(IrrepLabel { highest, flipped }).or_default() += mult;
            }
        } else {
            return Err(c.err("expected 'k' or 'V['"));
        }
        c.skip_ws();
        if c.done() {
            break;
        }
        if !c.eat(b'+') {
            return Err(c.err("expected '+'"));
        }
    }
    Ok(Decomposition {
        system: rs.id(),
        summands: parts.into_iter().map(|(label, mult)| Summand { label, mult }).collect(),
        trivial_count: trivial,
    })
}

/// Order-free equality of two decompositions.
pub fn same_module(a: &Decomposition, b: &Decomposition) -> bool {
    a.system == b.system && a.trivial_count == b.trivial_count && a.as_multiset() == b.as_multiset()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn weight_expressions() {
        let a5 = rs("A5");
        assert_eq!(eval_weight(&a5, "b1+b{m}").unwrap().to_string(), "f:1,0,0,0,1");
        assert_eq!(eval_weight(&a5, "2b{m-1}").unwrap().to_string(), "f:0,0,0,2,0");
        assert_eq!(eval_weight(&a5, "b{m+1}").unwrap(), DominantWeight::zero(&a5));
        assert!(eval_weight(&a5, "b7").is_err());
        let bc3 = rs("BC3");
        assert_eq!(eval_weight(&bc3, "mu3").unwrap().to_string(), "f:0,0,2");
        assert_eq!(eval_weight(&bc3, "mu1+mu2").unwrap().to_string(), "f:1,1,0");
        assert_eq!(eval_weight(&bc3, "st").unwrap().to_string(), "f:1,0,0");
        assert!(eval_weight(&a5, "mu1").is_err());
    }

    #[test]
    fn module_expressions() {
        let bc2 = rs("BC2");
        let d = eval_module(&bc2, "V[mu2] + V[2mu2] + k + PV[mu1]").unwrap();
        assert_eq!(d.trivial_count, 1);
        assert_eq!(d.nontrivial_count(), 3);
        let a1 = rs("A1");
        let d = eval_module(&a1, "V[b2]").unwrap();
        assert_eq!(d.trivial_count, 1);
        assert!(d.summands.is_empty());
        let d = eval_module(&a1, "2V[2b1] + V[2b1] + 3k").unwrap();
        assert_eq!(d.summands.len(), 1);
        assert_eq!(d.summands[0].mult, 3);
        assert_eq!(d.trivial_count, 3);
        assert!(eval_module(&a1, "V[2b1] k").is_err());
        assert!(eval_module(&a1, "W[b1]").is_err());
    }

    #[test]
    fn embedded_corpus_loads_and_instantiates() {
        let c = Corpus::embedded().unwrap();
        assert_eq!(c.version, 1);
        let inst = c.square_instances(8).unwrap();
        assert!(inst.iter().any(|i| i.system.to_string() == "E8"));
        assert!(inst.iter().all(|i| i.system.rank <= 8));
        let e6 = c.square_instances(6).unwrap();
        assert!(e6.iter().all(|i| i.system.rank <= 6));
    }

    #[test]
    fn scope_rules() {
        let s = Scope {
            family: Some(Family::D),
            min_rank: Some(5),
            ..Default::default()
        };
        let v: Vec<String> = s.instances(7).unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(v, ["D5", "D6", "D7"]);
        let bad = Scope::default();
        assert!(bad.instances(8).is_err());
    }
}
