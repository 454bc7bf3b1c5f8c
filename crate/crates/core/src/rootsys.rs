//! Root systems in rational Euclidean embeddings.
//!
//! Types A–G use the Bourbaki plate coordinates. `BC_m` is the root system of
//! `osp(1|2m)`: even roots `±ε_i ± ε_j, ±2ε_i`, odd roots `±ε_i`, and simple
//! roots `ε_1 − ε_2, …, ε_{m−1} − ε_m, ε_m`. Every datum is an exact rational.
//!
//! Besides the ambient ("ε") picture, every system carries a lattice picture in
//! fundamental-weight coordinates, which is what the character code works in:
//! there all weights are small integer vectors and reflections are integer
//! row operations.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = Rational64;

/// A weight in fundamental-weight coordinates.
pub type Lat = SmallVec<[i32; 8]>;

pub const MAX_RANK: usize = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
        Family::BC,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
            Family::BC => "BC",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            "BC" => Ok(Family::BC),
            _ => Err(Error::Parse(format!("unknown family '{s}'"))),
        }
    }
}

/// A (family, rank) label such as `B3` or `BC2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyRank {
    pub family: Family,
    pub rank: usize,
}

impl FamilyRank {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A | Family::B | Family::C | Family::BC => (1..=MAX_RANK).contains(&rank),
            Family::D => (3..=MAX_RANK).contains(&rank),
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(FamilyRank { family, rank })
        } else {
            Err(Error::InvalidRank(format!("{}{}", family, rank)))
        }
    }

    pub fn is_super(&self) -> bool {
        self.family == Family::BC
    }

    /// `A_1` and `BC_1` are constructible but left out of the generic
    /// classification driver; they are handled in closed form.
    pub fn excluded_from_classification(&self) -> bool {
        self.rank == 1 && matches!(self.family, Family::A | Family::BC)
    }

    /// `A_1`, `B_1` and `C_1` are all `sl(2)`.
    pub fn is_sl2(&self) -> bool {
        self.rank == 1 && matches!(self.family, Family::A | Family::B | Family::C)
    }

    /// Every valid label of rank at most `bound`, exceptionals included when they fit.
    pub fn all_up_to(bound: usize) -> Vec<FamilyRank> {
        let mut out = Vec::new();
        for family in Family::ALL {
            for rank in 1..=bound {
                if let Ok(id) = FamilyRank::new(family, rank) {
                    out.push(id);
                }
            }
        }
        out
    }
}

impl fmt::Display for FamilyRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for FamilyRank {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| Error::Parse(format!("missing rank in '{s}'")))?;
        let family: Family = s[..split].parse()?;
        let rank: usize = s[split..]
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in '{s}'")))?;
        FamilyRank::new(family, rank)
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for FamilyRank {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FamilyRank {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An exact rational vector in the ambient space of a root system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coords: Vec<Q>,
}

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Weight { coords }
    }

    pub fn zero(n: usize) -> Self {
        Weight {
            coords: vec![Q::zero(); n],
        }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight {
            coords: v.iter().map(|&x| Q::from_integer(x)).collect(),
        }
    }

    /// The unit vector `ε_i` (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut w = Weight::zero(n);
        w.coords[i] = Q::one();
        w
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: Q) -> Weight {
        Weight {
            coords: self.coords.iter().map(|&x| x * s).collect(),
        }
    }

    fn dot(&self, other: &Weight) -> Q {
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(Q::zero(), |acc, (&a, &b)| acc + a * b)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight::new(self.coords.iter().zip(&rhs.coords).map(|(&a, &b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight::new(self.coords.iter().zip(&rhs.coords).map(|(&a, &b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(self.coords.iter().map(|&a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Serializes a rational as `"p/q"` (or `"p"` when integral).
pub fn ser_q<S: Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// The three columns of the numerical table attached to each type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    /// `|ρ|²`
    #[serde(serialize_with = "ser_q")]
    pub rho_norm_sq: Q,
    /// `max |α_i^∨|²` over the (even) simple coroots.
    #[serde(serialize_with = "ser_q")]
    pub max_coroot_norm_sq: Q,
    pub dim_g: i64,
}

/// Immutable root-system datum for one (family, rank).
#[derive(Clone, Debug)]
pub struct RootSystem {
    id: FamilyRank,
    ambient_dim: usize,
    simple_roots: Vec<Weight>,
    simple_is_odd: Vec<bool>,
    positive_even_roots: Vec<Weight>,
    positive_odd_roots: Vec<Weight>,
    fundamental_weights: Vec<Weight>,
    rho: Weight,
    form_scale: Q,
    adjoint_weight: Lat,
    dim_g: i64,
    cartan: Vec<Vec<i32>>,
    inv_cartan: Vec<Vec<Q>>,
    alpha_f: Vec<Lat>,
    gram_int: Vec<Vec<i64>>,
    gram_den: i64,
    height_num: Vec<i64>,
    pos_roots_f: Vec<Lat>,
    pos_root_is_odd: Vec<bool>,
    coroot_coeffs: Vec<Vec<i64>>,
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

fn bourbaki_simple_roots(id: FamilyRank) -> (usize, Vec<Weight>) {
    let m = id.rank;
    let e = |n: usize, i: usize| Weight::unit(n, i);
    match id.family {
        Family::A => {
            let n = m + 1;
            (n, (0..m).map(|i| &e(n, i) - &e(n, i + 1)).collect())
        }
        Family::B | Family::C | Family::D | Family::BC => {
            let n = m;
            let mut roots: Vec<Weight> = (0..m.saturating_sub(1)).map(|i| &e(n, i) - &e(n, i + 1)).collect();
            let last = match id.family {
                Family::B | Family::BC => e(n, m - 1),
                Family::C => e(n, m - 1).scale(Q::from_integer(2)),
                _ => &e(n, m - 2) + &e(n, m - 1),
            };
            roots.push(last);
            (n, roots)
        }
        Family::E => {
            let n = 8;
            let half = q(1, 2);
            let mut a1 = vec![-half; 8];
            a1[0] = half;
            a1[7] = half;
            let mut roots = vec![Weight::new(a1), &e(n, 0) + &e(n, 1)];
            for k in 3..=m {
                roots.push(&e(n, k - 2) - &e(n, k - 3));
            }
            (n, roots)
        }
        Family::F => {
            let n = 4;
            let half = q(1, 2);
            (
                n,
                vec![
                    &e(n, 1) - &e(n, 2),
                    &e(n, 2) - &e(n, 3),
                    e(n, 3),
                    Weight::new(vec![half, -half, -half, -half]),
                ],
            )
        }
        Family::G => (3, vec![Weight::from_ints(&[1, -1, 0]), Weight::from_ints(&[-2, 1, 1])]),
    }
}

/// Order of the parabolic subgroup generated by the reflections in `nodes`,
/// found by identifying each connected component of the Dynkin subdiagram.
fn parabolic_order(cartan: &[Vec<i32>], nodes: &[usize]) -> u128 {
    let fact = |n: u128| (1..=n).product::<u128>();
    let mut left: Vec<usize> = nodes.to_vec();
    let mut total = 1u128;
    while let Some(start) = left.pop() {
        let mut comp = vec![start];
        let mut head = 0;
        while head < comp.len() {
            let i = comp[head];
            head += 1;
            left.retain(|&j| {
                if cartan[i][j] != 0 {
                    comp.push(j);
                    false
                } else {
                    true
                }
            });
        }
        let k = comp.len() as u128;
        let edges: Vec<(usize, usize)> = comp
            .iter()
            .flat_map(|&i| comp.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| i < j && cartan[i][j] != 0)
            .collect();
        let degree = |v: usize| edges.iter().filter(|&&(a, b)| a == v || b == v).count();
        let laced = |(i, j): (usize, usize)| cartan[i][j] * cartan[j][i];
        let max_lace = edges.iter().map(|&e| laced(e)).max().unwrap_or(1);
        total *= match max_lace {
            3 => 12,
            2 => {
                let (i, j) = *edges.iter().find(|&&e| laced(e) == 2).expect("double edge");
                if k == 4 && degree(i) == 2 && degree(j) == 2 {
                    1152
                } else {
                    (1u128 << k) * fact(k)
                }
            }
            _ => match comp.iter().find(|&&v| degree(v) == 3) {
                None => fact(k + 1),
                Some(&centre) => {
                    // arm lengths decide between D_k and E_k
                    let mut arms = Vec::new();
                    for &(a, b) in edges.iter().filter(|&&(a, b)| a == centre || b == centre) {
                        let mut prev = centre;
                        let mut cur = if a == centre { b } else { a };
                        let mut len = 1;
                        loop {
                            let next = edges.iter().find_map(|&(x, y)| {
                                if x == cur && y != prev {
                                    Some(y)
                                } else if y == cur && x != prev {
                                    Some(x)
                                } else {
                                    None
                                }
                            });
                            match next {
                                Some(n) => {
                                    prev = cur;
                                    cur = n;
                                    len += 1;
                                }
                                None => break,
                            }
                        }
                        arms.push(len);
                    }
                    arms.sort_unstable();
                    if arms[0] == 1 && arms[1] == 1 {
                        (1u128 << (k - 1)) * fact(k)
                    } else {
                        match k {
                            6 => 51_840,
                            7 => 2_903_040,
                            _ => 696_729_600,
                        }
                    }
                }
            },
        };
    }
    total
}

/// Gauss–Jordan inverse of a small invertible rational matrix.
pub(crate) fn invert(mat: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = mat.len();
    let mut a: Vec<Vec<Q>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("singular Cartan matrix");
        a.swap(col, pivot);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn lcm_of_denominators<'a>(it: impl Iterator<Item = &'a Q>) -> i64 {
    it.fold(1i64, |acc, x| acc.lcm(x.denom()))
}

impl RootSystem {
    pub fn new(id: FamilyRank) -> Self {
        let m = id.rank;
        let (ambient_dim, simple_roots) = bourbaki_simple_roots(id);
        let simple_is_odd: Vec<bool> = (0..m).map(|i| id.is_super() && i == m - 1).collect();

        let norms: Vec<Q> = simple_roots.iter().map(|a| a.dot(a)).collect();
        let cartan: Vec<Vec<i32>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let v = Q::from_integer(2) * simple_roots[i].dot(&simple_roots[j]) / norms[i];
                        assert!(v.is_integer());
                        *v.numer() as i32
                    })
                    .collect()
            })
            .collect();
        let cartan_q: Vec<Vec<Q>> = cartan
            .iter()
            .map(|r| r.iter().map(|&x| Q::from_integer(x as i64)).collect())
            .collect();
        let inv_cartan = invert(&cartan_q);

        // β_i = Σ_j (A^{-1})_{ji} α_j
        let fundamental_weights: Vec<Weight> = (0..m)
            .map(|i| {
                let mut w = Weight::zero(ambient_dim);
                for (j, alpha) in simple_roots.iter().enumerate() {
                    w = &w + &alpha.scale(inv_cartan[j][i]);
                }
                w
            })
            .collect();
        let rho = fundamental_weights
            .iter()
            .fold(Weight::zero(ambient_dim), |acc, b| &acc + b);

        let alpha_f: Vec<Lat> = (0..m).map(|i| (0..m).map(|j| cartan[j][i]).collect()).collect();

        let mut rs = RootSystem {
            id,
            ambient_dim,
            simple_roots,
            simple_is_odd,
            positive_even_roots: Vec::new(),
            positive_odd_roots: Vec::new(),
            fundamental_weights,
            rho,
            form_scale: Q::one(),
            adjoint_weight: Lat::new(),
            dim_g: 0,
            cartan,
            inv_cartan,
            alpha_f,
            gram_int: Vec::new(),
            gram_den: 1,
            height_num: Vec::new(),
            pos_roots_f: Vec::new(),
            pos_root_is_odd: Vec::new(),
            coroot_coeffs: Vec::new(),
        };

        // Roots as Weyl orbits of the (even resp. odd) simple roots.
        let mut even_seeds = Vec::new();
        let mut odd_seeds = Vec::new();
        for (i, a) in rs.simple_roots.iter().enumerate() {
            if rs.simple_is_odd[i] {
                odd_seeds.push(a.clone());
                even_seeds.push(a.scale(Q::from_integer(2)));
            } else {
                even_seeds.push(a.clone());
            }
        }
        let collect_pos = |rs: &RootSystem, seeds: &[Weight]| -> Vec<Weight> {
            let mut all = BTreeSet::new();
            for s in seeds {
                all.extend(rs.weyl_orbit_unchecked(s));
            }
            let mut pos: Vec<Weight> = all.into_iter().filter(|r| rs.is_positive(r)).collect();
            pos.sort_by(|a, b| rs.root_height(a).cmp(&rs.root_height(b)).then_with(|| b.cmp(a)));
            pos
        };
        rs.positive_even_roots = collect_pos(&rs, &even_seeds);
        rs.positive_odd_roots = collect_pos(&rs, &odd_seeds);

        let n_even = rs.positive_even_roots.len() as i64;
        let n_odd = rs.positive_odd_roots.len() as i64;
        rs.dim_g = m as i64 + 2 * n_even - 2 * n_odd;

        // Lattice data.
        let gram_q: Vec<Vec<Q>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| rs.fundamental_weights[i].dot(&rs.fundamental_weights[j]))
                    .collect()
            })
            .collect();
        let den = lcm_of_denominators(gram_q.iter().flatten());
        rs.gram_den = den;
        rs.gram_int = gram_q
            .iter()
            .map(|r| r.iter().map(|x| (x * Q::from_integer(den)).to_integer()).collect())
            .collect();
        // height(x) = Σ_j (A^{-1} f)_j ; scaled by hden to an integer functional
        let hq: Vec<Q> = (0..m)
            .map(|i| (0..m).fold(Q::zero(), |acc, j| acc + rs.inv_cartan[j][i]))
            .collect();
        let hden = lcm_of_denominators(hq.iter());
        rs.height_num = hq.iter().map(|x| (x * Q::from_integer(hden)).to_integer()).collect();

        let mut pos_f = Vec::new();
        let mut pos_odd = Vec::new();
        for r in &rs.positive_even_roots {
            pos_f.push(rs.weight_to_lat(r).expect("roots are integral"));
            pos_odd.push(false);
        }
        for r in &rs.positive_odd_roots {
            pos_f.push(rs.weight_to_lat(r).expect("roots are integral"));
            pos_odd.push(true);
        }
        rs.pos_roots_f = pos_f;
        rs.pos_root_is_odd = pos_odd;

        // Coroot coefficients in the simple-coroot basis, for the Weyl product.
        // Not integral for BC_m (the coroot of 2ε_i is ε_i), which uses its own formula.
        let classical_roots: &[Weight] = if id.is_super() { &[] } else { &rs.positive_even_roots };
        rs.coroot_coeffs = classical_roots
            .iter()
            .map(|r| {
                let c = rs.root_coords(r);
                let nr = r.dot(r);
                c.iter()
                    .zip(&norms)
                    .map(|(&cj, &nj)| {
                        let k = cj * nj / nr;
                        assert!(k.is_integer());
                        k.to_integer()
                    })
                    .collect()
            })
            .collect();

        let highest = rs
            .positive_even_roots
            .last()
            .cloned()
            .expect("at least one positive root");
        rs.adjoint_weight = rs.weight_to_lat(&highest).expect("integral");
        rs
    }

    /// Same system with the invariant form multiplied by `scale > 0`.
    pub fn with_form_scale(mut self, scale: Q) -> Self {
        assert!(scale.is_positive());
        self.form_scale = scale;
        self
    }

    pub fn id(&self) -> FamilyRank {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.id.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn simple_root_is_odd(&self, i: usize) -> bool {
        self.simple_is_odd[i]
    }

    pub fn positive_even_roots(&self) -> &[Weight] {
        &self.positive_even_roots
    }

    pub fn positive_odd_roots(&self) -> &[Weight] {
        &self.positive_odd_roots
    }

    pub fn fundamental_weights(&self) -> &[Weight] {
        &self.fundamental_weights
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn form_scale(&self) -> Q {
        self.form_scale
    }

    /// Highest root (highest even root for `BC_m`), in fundamental coordinates.
    pub fn adjoint_weight(&self) -> &Lat {
        &self.adjoint_weight
    }

    /// Dimension of the algebra; superdimension for `BC_m`.
    pub fn dim_g(&self) -> i64 {
        self.dim_g
    }

    /// `a_ij = (α_i^∨, α_j)`.
    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Ambient Gram matrix of the invariant form.
    pub fn form_gram(&self) -> Vec<Vec<Q>> {
        (0..self.ambient_dim)
            .map(|i| {
                (0..self.ambient_dim)
                    .map(|j| if i == j { self.form_scale } else { Q::zero() })
                    .collect()
            })
            .collect()
    }

    fn check_len(&self, w: &Weight) -> Result<()> {
        if w.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: w.len(),
            });
        }
        Ok(())
    }

    pub fn inner_product(&self, a: &Weight, b: &Weight) -> Result<Q> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.form_scale * a.dot(b))
    }

    pub fn norm_sq(&self, a: &Weight) -> Result<Q> {
        self.inner_product(a, a)
    }

    fn is_root(&self, w: &Weight) -> bool {
        let neg = -w;
        self.positive_even_roots
            .iter()
            .chain(&self.positive_odd_roots)
            .any(|r| r == w || *r == neg)
    }

    /// `2α/(α,α)`.
    pub fn coroot(&self, root: &Weight) -> Result<Weight> {
        self.check_len(root)?;
        if !self.is_root(root) {
            return Err(Error::NotARoot(format!("({root}) in {}", self.id)));
        }
        let n = self.norm_sq(root)?;
        if n.is_zero() {
            return Err(Error::ZeroNorm(format!("({root}) in {}", self.id)));
        }
        Ok(root.scale(Q::from_integer(2) / n))
    }

    /// Coroots of the simple roots, `α_i^∨`.
    pub fn simple_coroots(&self) -> Vec<Weight> {
        self.simple_roots
            .iter()
            .map(|a| self.coroot(a).expect("simple roots are roots"))
            .collect()
    }

    // (w, α_i^∨) without length checks; independent of the form scale.
    fn pairing(&self, w: &Weight, i: usize) -> Q {
        let a = &self.simple_roots[i];
        Q::from_integer(2) * w.dot(a) / a.dot(a)
    }

    pub fn to_fundamental_coords(&self, w: &Weight) -> Result<Vec<Q>> {
        self.check_len(w)?;
        Ok((0..self.rank()).map(|i| self.pairing(w, i)).collect())
    }

    pub fn from_fundamental_coords(&self, c: &[Q]) -> Result<Weight> {
        if c.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: c.len(),
            });
        }
        Ok(c.iter()
            .zip(&self.fundamental_weights)
            .fold(Weight::zero(self.ambient_dim), |acc, (&ci, b)| &acc + &b.scale(ci)))
    }

    /// Orthogonal projection onto the span of the roots. For `A_m` this picks
    /// the sum-zero representative.
    pub fn canonical(&self, w: &Weight) -> Result<Weight> {
        let c = self.to_fundamental_coords(w)?;
        self.from_fundamental_coords(&c)
    }

    fn root_coords(&self, w: &Weight) -> Vec<Q> {
        let f: Vec<Q> = (0..self.rank()).map(|i| self.pairing(w, i)).collect();
        (0..self.rank())
            .map(|j| (0..self.rank()).fold(Q::zero(), |acc, k| acc + self.inv_cartan[j][k] * f[k]))
            .collect()
    }

    fn root_height(&self, w: &Weight) -> Q {
        self.root_coords(w).into_iter().fold(Q::zero(), |a, b| a + b)
    }

    fn is_positive(&self, w: &Weight) -> bool {
        self.root_coords(w).iter().all(|c| !c.is_negative())
    }

    fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let c = self.pairing(w, i);
        w - &self.simple_roots[i].scale(c)
    }

    fn weyl_orbit_unchecked(&self, w: &Weight) -> BTreeSet<Weight> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.clone());
        queue.push_back(w.clone());
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank() {
                let y = self.reflect(&x, i);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Orbit of `w` under the Weyl group generated by the simple reflections
    /// `s_i(x) = x − (x, α_i^∨) α_i`.
    pub fn weyl_orbit(&self, w: &Weight) -> Result<BTreeSet<Weight>> {
        self.check_len(w)?;
        Ok(self.weyl_orbit_unchecked(w))
    }

    pub fn is_dominant(&self, w: &Weight) -> Result<bool> {
        Ok(self.to_fundamental_coords(w)?.iter().all(|c| !c.is_negative()))
    }

    /// `−w₀(λ)`, the highest weight of the dual representation.
    pub fn dual_weight(&self, lambda: &Weight) -> Result<Weight> {
        if !self.is_dominant(lambda)? {
            return Err(Error::NotDominant(format!("({lambda}) in {}", self.id)));
        }
        let mut x = -lambda;
        loop {
            match (0..self.rank()).find(|&i| self.pairing(&x, i).is_negative()) {
                Some(i) => x = self.reflect(&x, i),
                None => return Ok(x),
            }
        }
    }

    /// Numerical data: `|ρ|²`, the largest squared norm of an (even) simple
    /// coroot, and `dim 𝔤`. For `BC_m` the odd simple root `ε_m` is replaced by
    /// the even root `2ε_m`.
    pub fn table1_row(&self) -> Table1Row {
        let rho_norm_sq = self.form_scale * self.rho.dot(&self.rho);
        let max_coroot_norm_sq = self
            .simple_roots
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let a = if self.simple_is_odd[i] {
                    a.scale(Q::from_integer(2))
                } else {
                    a.clone()
                };
                // |2a/(a,a)|² = 4/(a,a)
                Q::from_integer(4) / (self.form_scale * a.dot(&a))
            })
            .max()
            .expect("rank ≥ 1");
        Table1Row {
            rho_norm_sq,
            max_coroot_norm_sq,
            dim_g: self.dim_g,
        }
    }

    /// Order of the Weyl group (of the even part, for `BC_m`).
    pub fn weyl_group_order(&self) -> u128 {
        let m = self.rank() as u128;
        let fact = |n: u128| (1..=n).product::<u128>();
        match self.id.family {
            Family::A => fact(m + 1),
            Family::B | Family::C | Family::BC => (1u128 << m) * fact(m),
            Family::D => (1u128 << (m - 1)) * fact(m),
            Family::E => match m {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Size of the Weyl orbit of a dominant lattice weight, via the order of
    /// its parabolic stabilizer.
    pub fn orbit_size_lat(&self, dominant: &[i32]) -> u128 {
        let zero: Vec<usize> = (0..self.rank()).filter(|&i| dominant[i] == 0).collect();
        self.weyl_group_order() / parabolic_order(&self.cartan, &zero)
    }

    // ---- lattice picture ------------------------------------------------

    /// Fundamental coordinates of an integral weight.
    pub fn weight_to_lat(&self, w: &Weight) -> Result<Lat> {
        let c = self.to_fundamental_coords(w)?;
        c.iter()
            .map(|x| {
                if x.is_integer() {
                    Ok(x.to_integer() as i32)
                } else {
                    Err(Error::Parse(format!("({w}) is not integral in {}", self.id)))
                }
            })
            .collect()
    }

    pub fn lat_to_weight(&self, x: &[i32]) -> Weight {
        x.iter()
            .zip(&self.fundamental_weights)
            .fold(Weight::zero(self.ambient_dim), |acc, (&c, b)| {
                &acc + &b.scale(Q::from_integer(c as i64))
            })
    }

    /// Simple root `α_i` in fundamental coordinates.
    pub fn simple_root_lat(&self, i: usize) -> &Lat {
        &self.alpha_f[i]
    }

    /// Positive roots (even first, then odd) in fundamental coordinates.
    pub fn positive_roots_lat(&self) -> &[Lat] {
        &self.pos_roots_f
    }

    pub fn positive_root_is_odd(&self, k: usize) -> bool {
        self.pos_root_is_odd[k]
    }

    /// Positive even coroots in the simple-coroot basis.
    pub fn coroot_coefficients(&self) -> &[Vec<i64>] {
        &self.coroot_coeffs
    }

    pub fn inverse_cartan(&self) -> &[Vec<Q>] {
        &self.inv_cartan
    }

    /// `(x, y)` for `x, y` in fundamental coordinates, at unit form scale and
    /// multiplied by [`RootSystem::lat_form_denominator`].
    pub fn lat_inner_scaled(&self, x: &[i32], y: &[i32]) -> i64 {
        let mut acc = 0i64;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = &self.gram_int[i];
            let mut s = 0i64;
            for (j, &yj) in y.iter().enumerate() {
                s += row[j] * yj as i64;
            }
            acc += xi as i64 * s;
        }
        acc
    }

    pub fn lat_form_denominator(&self) -> i64 {
        self.gram_den
    }

    /// `(x, y)` for `x, y` in fundamental coordinates.
    pub fn lat_inner(&self, x: &[i32], y: &[i32]) -> Q {
        self.form_scale * Q::new(self.lat_inner_scaled(x, y), self.gram_den)
    }

    /// A positive multiple of the height functional: larger means higher.
    pub fn height_key(&self, x: &[i32]) -> i64 {
        x.iter().zip(&self.height_num).map(|(&a, &h)| a as i64 * h).sum()
    }

    pub fn is_dominant_lat(&self, x: &[i32]) -> bool {
        x.iter().all(|&c| c >= 0)
    }

    pub fn reflect_lat(&self, x: &mut [i32], i: usize) {
        let c = x[i];
        if c != 0 {
            for (xj, aj) in x.iter_mut().zip(&self.alpha_f[i]) {
                *xj -= c * aj;
            }
        }
    }

    /// Dominant representative of the orbit of `x`, with the number of simple
    /// reflections used (its parity is the sign of the Weyl element).
    pub fn dominant_lat(&self, x: &[i32]) -> (Lat, u32) {
        let mut y: Lat = x.iter().copied().collect();
        let mut steps = 0;
        while let Some(i) = y.iter().position(|&c| c < 0) {
            self.reflect_lat(&mut y, i);
            steps += 1;
        }
        (y, steps)
    }

    /// Full Weyl orbit of a dominant lattice weight.
    pub fn orbit_lat(&self, dominant: &[i32]) -> Vec<Lat> {
        let start: Lat = dominant.iter().copied().collect();
        let mut seen: HashSet<Lat> = HashSet::new();
        let mut out = vec![start.clone()];
        seen.insert(start);
        let mut head = 0;
        while head < out.len() {
            let x = out[head].clone();
            head += 1;
            for i in 0..self.rank() {
                if x[i] > 0 {
                    let mut y = x.clone();
                    self.reflect_lat(&mut y, i);
                    if seen.insert(y.clone()) {
                        out.push(y);
                    }
                }
            }
        }
        out
    }

    /// `−w₀` on dominant lattice weights.
    pub fn dual_lat(&self, x: &[i32]) -> Lat {
        let neg: Lat = x.iter().map(|&c| -c).collect();
        self.dominant_lat(&neg).0
    }

    /// Sum of the ε-coordinates; integral on the `BC_m` lattice, where it
    /// decides the parity of a weight relative to the top.
    pub fn eps_sum_lat(&self, x: &[i32]) -> Q {
        self.lat_to_weight(x).coords.iter().fold(Q::zero(), |a, &b| a + b)
    }

    /// `ρ` in fundamental coordinates: all ones.
    pub fn rho_lat(&self) -> Lat {
        (0..self.rank()).map(|_| 1).collect()
    }

    /// Fundamental coordinates of `r·β_i` (0-based `i`).
    pub fn fundamental_lat(&self, i: usize, r: i32) -> Lat {
        let mut x: Lat = (0..self.rank()).map(|_| 0).collect();
        x[i] = r;
        x
    }
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id && self.form_scale == other.form_scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn parse_labels() {
        assert_eq!("bc2".parse::<FamilyRank>().unwrap().to_string(), "BC2");
        assert_eq!("E8".parse::<FamilyRank>().unwrap().rank, 8);
        assert!(matches!("D2".parse::<FamilyRank>(), Err(Error::InvalidRank(_))));
        assert!(matches!("E9".parse::<FamilyRank>(), Err(Error::InvalidRank(_))));
        assert!(matches!("X9".parse::<FamilyRank>(), Err(Error::Parse(_))));
        assert!("G".parse::<FamilyRank>().is_err());
    }

    #[test]
    fn g2_dim() {
        assert_eq!(rs("G2").dim_g(), 14);
    }

    #[test]
    fn bc3_odd_roots() {
        let r = rs("BC3");
        let expect: BTreeSet<Weight> = (0..3).map(|i| Weight::unit(3, i)).collect();
        let got: BTreeSet<Weight> = r.positive_odd_roots().iter().cloned().collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn c4_rho() {
        assert_eq!(*rs("C4").rho(), Weight::from_ints(&[4, 3, 2, 1]));
    }

    #[test]
    fn positive_root_counts() {
        for (s, n) in [
            ("A4", 10),
            ("B3", 9),
            ("C3", 9),
            ("D5", 20),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
        ] {
            let r = rs(s);
            assert_eq!(r.positive_even_roots().len(), n, "{s}");
            assert!(r.positive_odd_roots().is_empty());
        }
        let r = rs("BC4");
        assert_eq!(r.positive_even_roots().len(), 16);
        assert_eq!(r.positive_odd_roots().len(), 4);
    }

    #[test]
    fn inner_product_basics() {
        let e6 = rs("E6");
        assert_eq!(e6.inner_product(e6.rho(), e6.rho()).unwrap(), Q::from_integer(78));
        let z = Weight::zero(8);
        assert!(e6.inner_product(&z, e6.rho()).unwrap().is_zero());
        assert!(matches!(
            e6.inner_product(&Weight::zero(3), e6.rho()),
            Err(Error::DimensionMismatch { .. })
        ));
        for m in 1..=6i64 {
            let r = rs(&format!("BC{m}"));
            assert_eq!(
                r.inner_product(r.rho(), r.rho()).unwrap(),
                Q::new(m * (2 * m - 1) * (2 * m + 1), 12)
            );
        }
    }

    #[test]
    fn coroots() {
        let b3 = rs("B3");
        let long = b3.simple_roots()[0].clone();
        assert_eq!(b3.coroot(&long).unwrap(), long);
        let short = Weight::unit(3, 2);
        assert_eq!(b3.coroot(&short).unwrap(), short.scale(Q::from_integer(2)));
        assert!(matches!(
            b3.coroot(&Weight::from_ints(&[1, 1, 1])),
            Err(Error::NotARoot(_))
        ));
        let f4 = rs("F4");
        let cor = f4.simple_coroots();
        for (i, c) in cor.iter().enumerate() {
            for (j, b) in f4.fundamental_weights().iter().enumerate() {
                let v = f4.inner_product(c, b).unwrap();
                assert_eq!(v, if i == j { Q::one() } else { Q::zero() });
            }
        }
    }

    #[test]
    fn fundamental_coords() {
        let a3 = rs("A3");
        let b2 = a3.fundamental_weights()[1].clone();
        assert_eq!(
            a3.to_fundamental_coords(&b2).unwrap(),
            vec![Q::zero(), Q::one(), Q::zero()]
        );
        let bc4 = rs("BC4");
        let w = bc4
            .from_fundamental_coords(&[Q::zero(), Q::zero(), Q::zero(), Q::from_integer(2)])
            .unwrap();
        assert_eq!(w, Weight::from_ints(&[1, 1, 1, 1]));
    }

    #[test]
    fn orbits() {
        let a2 = rs("A2");
        let b1 = a2.fundamental_weights()[0].clone();
        assert_eq!(a2.weyl_orbit(&b1).unwrap().len(), 3);
        let b2 = rs("B2");
        let orb = b2.weyl_orbit(&Weight::unit(2, 0)).unwrap();
        let expect: BTreeSet<Weight> = [[1, 0], [-1, 0], [0, 1], [0, -1]]
            .iter()
            .map(|v| Weight::from_ints(v))
            .collect();
        assert_eq!(orb, expect);
        // lattice orbit agrees with the ambient one
        let e6 = rs("E6");
        let x = e6.fundamental_lat(0, 1);
        assert_eq!(e6.orbit_lat(&x).len(), 27);
        assert_eq!(e6.orbit_lat(&e6.fundamental_lat(1, 1)).len(), 72);
    }

    #[test]
    fn duals() {
        let a2 = rs("A2");
        let b = a2.fundamental_weights();
        assert_eq!(a2.dual_weight(&b[0]).unwrap(), b[1]);
        let a5 = rs("A5");
        let b3 = a5.fundamental_weights()[2].clone();
        assert_eq!(a5.dual_weight(&b3).unwrap(), b3);
        assert!(matches!(a2.dual_weight(&(-&b[0])), Err(Error::NotDominant(_))));
        for s in ["B4", "C3", "BC3", "E7", "E8", "F4", "G2", "D6"] {
            let r = rs(s);
            for k in 0..r.rank() {
                let x = r.fundamental_lat(k, 1);
                assert_eq!(r.dual_lat(&x), x, "{s}");
            }
        }
        let e6 = rs("E6");
        assert_eq!(e6.dual_lat(&e6.fundamental_lat(0, 1)), e6.fundamental_lat(5, 1));
        let d5 = rs("D5");
        assert_eq!(d5.dual_lat(&d5.fundamental_lat(3, 1)), d5.fundamental_lat(4, 1));
    }

    #[test]
    fn table1_examples() {
        let row = rs("E7").table1_row();
        assert_eq!(row.rho_norm_sq, Q::new(399, 2));
        assert_eq!(row.max_coroot_norm_sq, Q::from_integer(2));
        assert_eq!(row.dim_g, 133);
        assert_eq!(rs("F4").table1_row().max_coroot_norm_sq, Q::from_integer(4));
        assert_eq!(rs("BC5").table1_row().max_coroot_norm_sq, Q::from_integer(2));
    }

    #[test]
    fn adjoint_weights() {
        let lat = |v: &[i32]| -> Lat { v.iter().copied().collect() };
        assert_eq!(rs("E8").adjoint_weight(), &lat(&[0, 0, 0, 0, 0, 0, 0, 1]));
        assert_eq!(rs("E6").adjoint_weight(), &lat(&[0, 1, 0, 0, 0, 0]));
        assert_eq!(rs("G2").adjoint_weight(), &lat(&[0, 1]));
        assert_eq!(rs("A4").adjoint_weight(), &lat(&[1, 0, 0, 1]));
        assert_eq!(rs("B2").adjoint_weight(), &lat(&[0, 2]));
        assert_eq!(rs("BC3").adjoint_weight(), &lat(&[2, 0, 0]));
    }

    #[test]
    fn form_scale_is_homogeneous() {
        let r = rs("C3");
        let s = r.clone().with_form_scale(Q::from_integer(2));
        let a = r.table1_row();
        let b = s.table1_row();
        assert_eq!(b.rho_norm_sq, a.rho_norm_sq * 2);
        assert_eq!(b.max_coroot_norm_sq * 2, a.max_coroot_norm_sq);
        assert_eq!(r.simple_coroots()[0].scale(Q::new(1, 2)), s.simple_coroots()[0]);
    }

    #[test]
    fn orbit_sizes_match_enumeration() {
        for s in ["A3", "B3", "C3", "D4", "G2", "F4", "BC3", "D5"] {
            let rs = RootSystem::new(s.parse().unwrap());
            let m = rs.rank();
            for mask in 0u32..(1 << m) {
                let x: Lat = (0..m).map(|i| ((mask >> i) & 1) as i32).collect();
                assert_eq!(rs.orbit_size_lat(&x), rs.orbit_lat(&x).len() as u128, "{s} {x:?}");
            }
        }
        let e6 = RootSystem::new("E6".parse().unwrap());
        assert_eq!(e6.orbit_size_lat(&[1, 0, 0, 0, 0, 0]), 27);
        let e8 = RootSystem::new("E8".parse().unwrap());
        assert_eq!(e8.orbit_size_lat(&[0, 0, 0, 0, 0, 0, 0, 1]), 240);
        assert_eq!(e8.orbit_size_lat(&[1, 0, 0, 0, 0, 0, 0, 0]), 2160);
        assert_eq!(e8.orbit_size_lat(&[0, 0, 0, 0, 0, 0, 0, 0]), 1);
    }
}
