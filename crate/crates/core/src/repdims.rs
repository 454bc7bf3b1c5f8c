//! Dimensions, Casimir values, index data and the small-representation search.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{ser_q, Family, FamilyRank, Lat, RootSystem, Weight, Q};

/// A dominant integral weight, stored in fundamental coordinates.
///
/// For `BC_m` the coefficient of `β_m` is even, i.e. the ε-coordinates are
/// integers `λ_1 ≥ … ≥ λ_m ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantWeight {
    coords: Lat,
}

impl DominantWeight {
    pub fn new(rs: &RootSystem, coords: &[i64]) -> Result<Self> {
        if coords.len() != rs.rank() {
            return Err(Error::DimensionMismatch {
                expected: rs.rank(),
                got: coords.len(),
            });
        }
        if coords.iter().any(|&c| c < 0) {
            return Err(Error::NotDominant(format!("{coords:?} in {}", rs.id())));
        }
        if rs.id().is_super() && coords[rs.rank() - 1] % 2 != 0 {
            return Err(Error::Parse(format!(
                "{coords:?}: the last fundamental coefficient must be even in {}",
                rs.id()
            )));
        }
        let coords = coords
            .iter()
            .map(|&c| i32::try_from(c).map_err(|_| Error::Parse(format!("coefficient {c} too large"))))
            .collect::<Result<Lat>>()?;
        Ok(DominantWeight { coords })
    }

    pub fn from_lat(rs: &RootSystem, x: &[i32]) -> Result<Self> {
        let v: Vec<i64> = x.iter().map(|&c| c as i64).collect();
        DominantWeight::new(rs, &v)
    }

    pub fn zero(rs: &RootSystem) -> Self {
        DominantWeight {
            coords: (0..rs.rank()).map(|_| 0).collect(),
        }
    }

    /// `r·β_i`, with `i` 1-based.
    pub fn fundamental(rs: &RootSystem, i: usize, r: i64) -> Result<Self> {
        if i == 0 || i > rs.rank() {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: rs.rank(),
            });
        }
        let mut v = vec![0; rs.rank()];
        v[i - 1] = r;
        DominantWeight::new(rs, &v)
    }

    /// `μ_r = ε_1 + ⋯ + ε_r` for `BC_m` (so `μ_r = β_r` for `r < m`, `μ_m = 2β_m`).
    pub fn mu(rs: &RootSystem, r: usize) -> Result<Self> {
        if !rs.id().is_super() {
            return Err(Error::UnsupportedType(rs.id()));
        }
        let m = rs.rank();
        if r == 0 || r > m {
            return Err(Error::IndexOutOfRange { index: r, rank: m });
        }
        DominantWeight::fundamental(rs, r, if r == m { 2 } else { 1 })
    }

    /// Weight from integer ε-coordinates `λ_1 ≥ … ≥ λ_m ≥ 0` of `BC_m`.
    pub fn from_partition(rs: &RootSystem, parts: &[i64]) -> Result<Self> {
        let m = rs.rank();
        if parts.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: parts.len(),
            });
        }
        let mut v: Vec<i64> = (0..m - 1).map(|i| parts[i] - parts[i + 1]).collect();
        v.push(2 * parts[m - 1]);
        DominantWeight::new(rs, &v)
    }

    pub fn coords(&self) -> &Lat {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn to_weight(&self, rs: &RootSystem) -> Weight {
        rs.lat_to_weight(&self.coords)
    }

    pub fn add(&self, other: &DominantWeight) -> DominantWeight {
        DominantWeight {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    /// Support as 1-based indices.
    pub fn support(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "f:{}", parts.join(","))
    }
}

fn parse_rational(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses `f:c1,…,cm` (fundamental coordinates), `e:q1,…,qn` (ε-coordinates,
/// rationals as `p/q`) or, for `BC_m`, `mu:r`.
pub fn parse_weight(rs: &RootSystem, s: &str) -> Result<DominantWeight> {
    let (tag, body) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("weight '{s}' needs a f:/e:/mu: prefix")))?;
    match tag.trim().to_ascii_lowercase().as_str() {
        "f" => {
            let v = body
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad coefficient '{t}'")))
                })
                .collect::<Result<Vec<_>>>()?;
            DominantWeight::new(rs, &v)
        }
        "e" => {
            let v = body.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
            let f = rs.to_fundamental_coords(&Weight::new(v))?;
            let ints = f
                .iter()
                .map(|x| {
                    if x.is_integer() {
                        Ok(x.to_integer())
                    } else {
                        Err(Error::Parse(format!("'{s}' is not an integral weight")))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            DominantWeight::new(rs, &ints)
        }
        "mu" => {
            let r: usize = body
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad index in '{s}'")))?;
            DominantWeight::mu(rs, r)
        }
        _ => Err(Error::Parse(format!("unknown weight prefix in '{s}'"))),
    }
}

/// `e:` form of a weight, rationals printed as `p/q`.
pub fn format_eps(rs: &RootSystem, x: &[i32]) -> String {
    format!("e:{}", rs.lat_to_weight(x))
}

/// Superdimension (ordinary dimension for classical types) of `V_λ`, unbounded.
pub fn dim_irrep_big(rs: &RootSystem, lambda: &DominantWeight) -> Result<BigInt> {
    if rs.id().is_super() {
        kac_weyl_superdim(rs, lambda)
    } else {
        weyl_dim(rs, lambda.coords())
    }
}

/// Superdimension (ordinary dimension for classical types) of `V_λ`.
pub fn dim_irrep(rs: &RootSystem, lambda: &DominantWeight) -> Result<i64> {
    let d = dim_irrep_big(rs, lambda)?;
    d.to_i64()
        .ok_or_else(|| Error::NonIntegerResult(format!("dimension {d} does not fit in i64")))
}

/// `∏_{α>0} (λ+ρ, α^∨)/(ρ, α^∨)`, with coroots expanded in simple coroots.
fn weyl_dim(rs: &RootSystem, lambda: &[i32]) -> Result<BigInt> {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for k in rs.coroot_coefficients() {
        let a: i64 = k.iter().zip(lambda).map(|(&c, &l)| c * (l as i64 + 1)).sum();
        let b: i64 = k.iter().sum();
        num *= BigUint::from(a as u64);
        den *= BigUint::from(b as u64);
    }
    if (&num % &den).is_zero() {
        Ok(BigInt::from(num / den))
    } else {
        Err(Error::NonIntegerResult(format!(
            "Weyl product {num}/{den} for {lambda:?} in {}",
            rs.id()
        )))
    }
}

/// Kac–Weyl superdimension of `osp(1|2m)`:
/// `∏_{i<j} ((λ_i−λ_j)/(j−i) + 1) · ((λ_i+λ_j)/(2m+1−i−j) + 1)`.
fn kac_weyl_superdim(rs: &RootSystem, lambda: &DominantWeight) -> Result<BigInt> {
    let m = rs.rank() as i64;
    let parts = bc_partition(lambda.coords());
    let mut acc = BigRational::one();
    for i in 1..=m {
        for j in (i + 1)..=m {
            let (li, lj) = (parts[(i - 1) as usize], parts[(j - 1) as usize]);
            let f1 = BigRational::new(BigInt::from(li - lj + (j - i)), BigInt::from(j - i));
            let d2 = 2 * m + 1 - i - j;
            let f2 = BigRational::new(BigInt::from(li + lj + d2), BigInt::from(d2));
            acc *= f1 * f2;
        }
    }
    if acc.is_integer() {
        Ok(acc.to_integer())
    } else {
        Err(Error::NonIntegerResult(format!(
            "Kac–Weyl product {acc} for {lambda} in {}",
            rs.id()
        )))
    }
}

/// Integer ε-coordinates of a `BC_m` lattice weight.
pub(crate) fn bc_partition(x: &[i32]) -> Vec<i64> {
    let m = x.len();
    let mut parts = vec![0i64; m];
    let mut acc = x[m - 1] as i64 / 2;
    parts[m - 1] = acc;
    for i in (0..m - 1).rev() {
        acc += x[i] as i64;
        parts[i] = acc;
    }
    parts
}

/// `c(μ) = (μ, μ) + 2(μ, ρ)`.
pub fn casimir(rs: &RootSystem, mu: &DominantWeight) -> Q {
    casimir_lat(rs, mu.coords())
}

pub(crate) fn casimir_lat(rs: &RootSystem, x: &[i32]) -> Q {
    let shifted: Lat = x.iter().map(|&c| 2 + c).collect();
    rs.lat_inner(x, &shifted)
}

/// `dim`, `c(λ)` and their product, which is `κ · l(V_λ)` for the fixed
/// normalization `κ = dim 𝔤 · c(adjoint)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexDatum {
    pub dim: i64,
    #[serde(serialize_with = "ser_q")]
    pub casimir: Q,
    #[serde(serialize_with = "ser_q")]
    pub index_numerator: Q,
}

pub fn index_datum(rs: &RootSystem, lambda: &DominantWeight) -> Result<IndexDatum> {
    let dim = dim_irrep(rs, lambda)?;
    let c = casimir(rs, lambda);
    Ok(IndexDatum {
        dim,
        casimir: c,
        index_numerator: c * Q::from_integer(dim),
    })
}

/// `r_i = |α_i|² / |β_i|²` for 1-based `i`.
pub fn r_threshold(rs: &RootSystem, i: usize) -> Result<Q> {
    if i == 0 || i > rs.rank() {
        return Err(Error::IndexOutOfRange {
            index: i,
            rank: rs.rank(),
        });
    }
    let a = &rs.simple_roots()[i - 1];
    let b = &rs.fundamental_weights()[i - 1];
    Ok(rs.norm_sq(a)? / rs.norm_sq(b)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma1Check {
    /// `4 |ρ|² max |α_i^∨|²`
    #[serde(serialize_with = "ser_q")]
    pub lhs_sq: Q,
    /// `(dim 𝔤 − 1)²`
    #[serde(serialize_with = "ser_q")]
    pub rhs_sq: Q,
    pub holds: bool,
    /// False for `sl(2)` (in any of its labels `A1`, `B1`, `C1`) and `BC1`.
    pub applicable: bool,
}

pub fn lemma1_check(rs: &RootSystem) -> Lemma1Check {
    let row = rs.table1_row();
    let lhs_sq = Q::from_integer(4) * row.rho_norm_sq * row.max_coroot_norm_sq;
    let d = Q::from_integer(row.dim_g - 1);
    let rhs_sq = d * d;
    let applicable = !(rs.id().is_sl2() || rs.id().excluded_from_classification());
    Lemma1Check {
        lhs_sq,
        rhs_sq,
        holds: lhs_sq < rhs_sq,
        applicable,
    }
}

/// Monoid generators of the dominant cone: `β_i` (classical) or `μ_i` (`BC_m`).
pub fn generators(rs: &RootSystem) -> Vec<DominantWeight> {
    (1..=rs.rank())
        .map(|i| {
            if rs.id().is_super() {
                DominantWeight::mu(rs, i).expect("valid index")
            } else {
                DominantWeight::fundamental(rs, i, 1).expect("valid index")
            }
        })
        .collect()
}

/// All nonzero dominant `λ` with `0 ≤ dim V_λ ≤ dim 𝔤`, sorted by dimension and
/// then by fundamental coordinates.
///
/// Breadth-first over the generator monoid; `dim` strictly increases along
/// every generator step, so pruning at `dim 𝔤` loses nothing.
pub fn enumerate_small_reps(rs: &RootSystem) -> Result<Vec<(DominantWeight, i64)>> {
    if rs.id().family == Family::BC && rs.rank() == 1 {
        return Err(Error::UnsupportedType(rs.id()));
    }
    let bound = BigInt::from(rs.dim_g());
    let gens = generators(rs);
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    let zero = DominantWeight::zero(rs);
    seen.insert(zero.clone());
    queue.push_back(zero);
    while let Some(lam) = queue.pop_front() {
        for g in &gens {
            let next = lam.add(g);
            if !seen.insert(next.clone()) {
                continue;
            }
            let d = dim_irrep_big(rs, &next)?;
            if d <= bound {
                out.push((next.clone(), d.to_i64().expect("bounded by dim g")));
                queue.push_back(next);
            }
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.coords().cmp(b.0.coords())));
    Ok(out)
}

pub fn is_adjoint(rs: &RootSystem, lambda: &DominantWeight) -> bool {
    lambda.coords() == rs.adjoint_weight()
}

/// Highest weight of the standard representation (`2β_1` for `B_1`).
pub fn standard_weight(rs: &RootSystem) -> Result<DominantWeight> {
    let id: FamilyRank = rs.id();
    match id.family {
        Family::BC => DominantWeight::mu(rs, 1),
        Family::A | Family::C | Family::D => DominantWeight::fundamental(rs, 1, 1),
        Family::B if id.rank == 1 => DominantWeight::fundamental(rs, 1, 2),
        Family::B => DominantWeight::fundamental(rs, 1, 1),
        _ => Err(Error::UnsupportedType(id)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    fn binom(n: i64, k: i64) -> i64 {
        if k < 0 || k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn bc_fundamental_superdims() {
        for m in 1..=6 {
            let r = rs(&format!("BC{m}"));
            for k in 1..=m {
                let lam = DominantWeight::mu(&r, k).unwrap();
                let expect = binom(2 * m as i64, k as i64) - binom(2 * m as i64, k as i64 - 1);
                assert_eq!(dim_irrep(&r, &lam).unwrap(), expect, "BC{m} mu{k}");
            }
        }
    }

    #[test]
    fn trivial_and_standard() {
        for s in ["A3", "B4", "C2", "D5", "E6", "F4", "G2", "BC3"] {
            let r = rs(s);
            assert_eq!(dim_irrep(&r, &DominantWeight::zero(&r)).unwrap(), 1);
        }
        let bc2 = rs("BC2");
        let mu2 = DominantWeight::mu(&bc2, 2).unwrap();
        assert_eq!(dim_irrep(&bc2, &mu2).unwrap(), 2);
        for m in 1..=7i64 {
            let st = |f: &str| {
                let r = rs(&format!("{f}{m}"));
                dim_irrep(&r, &standard_weight(&r).unwrap()).unwrap()
            };
            assert_eq!(st("A"), m + 1);
            assert_eq!(st("B"), 2 * m + 1);
            assert_eq!(st("C"), 2 * m);
            assert_eq!(st("BC"), 2 * m - 1);
            if m >= 3 {
                assert_eq!(st("D"), 2 * m);
            }
        }
        let b1 = rs("B1");
        assert_eq!(dim_irrep(&b1, &standard_weight(&b1).unwrap()).unwrap(), 3);
    }

    #[test]
    fn exceptional_dims() {
        let e8 = rs("E8");
        let b8 = DominantWeight::fundamental(&e8, 8, 1).unwrap();
        assert_eq!(dim_irrep(&e8, &b8).unwrap(), 248);
        let b1 = DominantWeight::fundamental(&e8, 1, 1).unwrap();
        assert_eq!(dim_irrep(&e8, &b1).unwrap(), 3875);
        let e7 = rs("E7");
        assert_eq!(
            dim_irrep(&e7, &DominantWeight::fundamental(&e7, 7, 1).unwrap()).unwrap(),
            56
        );
    }

    #[test]
    fn casimir_values() {
        let a1 = rs("A1");
        assert!(casimir(&a1, &DominantWeight::zero(&a1)).is_zero());
        // adjoint of A1: (α,α) + 2(α,ρ) = 2 + 2 = 4 for norm-2 roots
        let adj = DominantWeight::fundamental(&a1, 1, 2).unwrap();
        assert_eq!(casimir(&a1, &adj), Q::from_integer(4));
        // BC_m standard: c(ε_1) = 1 + 2(m − 1/2)
        for m in 2..=5i64 {
            let r = rs(&format!("BC{m}"));
            let st = DominantWeight::mu(&r, 1).unwrap();
            let d = index_datum(&r, &st).unwrap();
            assert_eq!(d.casimir, Q::from_integer(2 * m));
            assert_eq!(d.dim, 2 * m - 1);
            assert_eq!(d.index_numerator, Q::from_integer((2 * m - 1) * 2 * m));
        }
    }

    #[test]
    fn index_datum_trivial_and_adjoint() {
        let g2 = rs("G2");
        let z = index_datum(&g2, &DominantWeight::zero(&g2)).unwrap();
        assert_eq!((z.dim, z.casimir, z.index_numerator), (1, Q::zero(), Q::zero()));
        let adj = DominantWeight::from_lat(&g2, g2.adjoint_weight()).unwrap();
        let d = index_datum(&g2, &adj).unwrap();
        assert_eq!(d.dim, g2.dim_g());
        assert_eq!(d.index_numerator, Q::from_integer(g2.dim_g()) * casimir(&g2, &adj));
    }

    #[test]
    fn thresholds() {
        let e6 = rs("E6");
        let got: Vec<Q> = (1..=6).map(|i| r_threshold(&e6, i).unwrap()).collect();
        let expect = [q(3, 2), q(1, 1), q(3, 5), q(1, 3), q(3, 5), q(3, 2)];
        assert_eq!(got, expect);
        for m in 1..=8i64 {
            let a = rs(&format!("A{m}"));
            for i in 1..=m {
                assert_eq!(
                    r_threshold(&a, i as usize).unwrap(),
                    Q::new(2 * (m + 1), i * (m + 1 - i))
                );
            }
        }
        for m in 3..=8i64 {
            let d = rs(&format!("D{m}"));
            for i in [m - 1, m] {
                assert_eq!(r_threshold(&d, i as usize).unwrap(), Q::new(8, m));
            }
        }
        assert!(matches!(r_threshold(&e6, 7), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(r_threshold(&e6, 0), Err(Error::IndexOutOfRange { .. })));
    }

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn lemma1_examples() {
        let g2 = lemma1_check(&rs("G2"));
        assert_eq!((g2.lhs_sq, g2.rhs_sq), (q(112, 1), q(169, 1)));
        assert!(g2.holds && g2.applicable);
        let e8 = lemma1_check(&rs("E8"));
        assert_eq!((e8.lhs_sq, e8.rhs_sq), (q(4960, 1), q(61009, 1)));
        assert!(e8.holds);
        assert!(!lemma1_check(&rs("A1")).applicable);
        assert!(!lemma1_check(&rs("BC1")).applicable);
    }

    #[test]
    fn small_reps() {
        let e6 = rs("E6");
        let got: Vec<(Vec<i32>, i64)> = enumerate_small_reps(&e6)
            .unwrap()
            .into_iter()
            .map(|(w, d)| (w.coords().to_vec(), d))
            .collect();
        assert_eq!(
            got,
            vec![
                (vec![0, 0, 0, 0, 0, 1], 27),
                (vec![1, 0, 0, 0, 0, 0], 27),
                (vec![0, 1, 0, 0, 0, 0], 78)
            ]
        );
        let b3 = rs("B3");
        let got: BTreeSet<Vec<i32>> = enumerate_small_reps(&b3)
            .unwrap()
            .into_iter()
            .map(|(w, _)| w.coords().to_vec())
            .collect();
        let expect: BTreeSet<Vec<i32>> = [vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]].into();
        assert_eq!(got, expect);
        let bc4 = rs("BC4");
        let got: BTreeSet<DominantWeight> = enumerate_small_reps(&bc4)
            .unwrap()
            .into_iter()
            .map(|(w, _)| w)
            .collect();
        let mu = |r| DominantWeight::mu(&bc4, r).unwrap();
        let expect: BTreeSet<DominantWeight> = [mu(1), mu(1).add(&mu(1)), mu(2), mu(3), mu(4)].into();
        assert_eq!(got, expect);
        assert!(matches!(
            enumerate_small_reps(&rs("BC1")),
            Err(Error::UnsupportedType(_))
        ));
    }

    #[test]
    fn adjoint_detection() {
        let e8 = rs("E8");
        assert!(is_adjoint(&e8, &DominantWeight::fundamental(&e8, 8, 1).unwrap()));
        let a4 = rs("A4");
        assert!(is_adjoint(&a4, &DominantWeight::new(&a4, &[1, 0, 0, 1]).unwrap()));
        let bc3 = rs("BC3");
        let two_mu1 = DominantWeight::fundamental(&bc3, 1, 2).unwrap();
        assert!(is_adjoint(&bc3, &two_mu1));
        assert_eq!(dim_irrep(&bc3, &two_mu1).unwrap(), bc3.dim_g());
    }

    #[test]
    fn weight_grammar() {
        let bc2 = rs("BC2");
        assert_eq!(parse_weight(&bc2, "mu:2").unwrap().coords().as_slice(), &[0, 2]);
        assert_eq!(parse_weight(&bc2, "e:1,1").unwrap().coords().as_slice(), &[0, 2]);
        assert!(parse_weight(&bc2, "f:0,1").is_err());
        let e8 = rs("E8");
        let w = parse_weight(&e8, "f:0,0,0,0,0,0,0,1").unwrap();
        assert_eq!(parse_weight(&e8, &format_eps(&e8, w.coords())).unwrap(), w);
        let a2 = rs("A2");
        assert_eq!(parse_weight(&a2, "e:1,0,0").unwrap().coords().as_slice(), &[1, 0]);
        assert_eq!(
            parse_weight(&a2, "e:2/3,-1/3,-1/3").unwrap().coords().as_slice(),
            &[1, 0]
        );
        assert!(parse_weight(&a2, "e:1/2,0,0").is_err());
        assert!(parse_weight(&a2, "x:1").is_err());
        assert!(parse_weight(&a2, "f:-1,0").is_err());
        assert!(parse_weight(&a2, "mu:1").is_err());
    }

    #[test]
    fn partitions() {
        let bc3 = rs("BC3");
        let w = DominantWeight::from_partition(&bc3, &[3, 1, 1]).unwrap();
        assert_eq!(w.coords().as_slice(), &[2, 0, 2]);
        assert_eq!(bc_partition(w.coords()), vec![3, 1, 1]);
    }
}
