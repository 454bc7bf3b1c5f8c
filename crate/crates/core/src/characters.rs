//! Parity-graded formal characters, irreducible characters, squares and
//! highest-weight peeling.
//!
//! A [`Character`] stores multiplicities on dominant weights only; the full
//! function is the Weyl-invariant extension. Weights are lattice vectors in
//! fundamental coordinates.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::repdims::{dim_irrep_big, format_eps, DominantWeight};
use crate::rootsys::{FamilyRank, Lat, RootSystem};

/// Default cap on the number of distinct dominant weights in one character.
pub const DEFAULT_BUDGET: usize = 200_000;

/// Even and odd multiplicity of one weight.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mult {
    pub even: i64,
    pub odd: i64,
}

impl Mult {
    pub const fn new(even: i64, odd: i64) -> Self {
        Mult { even, odd }
    }

    pub fn is_zero(self) -> bool {
        self.even == 0 && self.odd == 0
    }

    pub fn total(self) -> i64 {
        self.even + self.odd
    }

    pub fn flip(self) -> Mult {
        Mult::new(self.odd, self.even)
    }

    fn scaled(self, k: i64) -> Mult {
        Mult::new(self.even * k, self.odd * k)
    }
}

/// Formal parity-graded character of a finite-dimensional module.
#[derive(Clone, Debug)]
pub struct Character {
    rs: Arc<RootSystem>,
    mults: BTreeMap<Lat, Mult>,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.rs.id() == other.rs.id() && self.mults == other.mults
    }
}

impl Eq for Character {}

impl Character {
    pub fn zero(rs: Arc<RootSystem>) -> Self {
        Character {
            rs,
            mults: BTreeMap::new(),
        }
    }

    pub fn trivial(rs: Arc<RootSystem>) -> Self {
        let z: Lat = (0..rs.rank()).map(|_| 0).collect();
        let mut c = Character::zero(rs);
        c.mults.insert(z, Mult::new(1, 0));
        c
    }

    /// Builds a character from multiplicities on dominant weights.
    pub fn from_dominant<I>(rs: Arc<RootSystem>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Lat, Mult)>,
    {
        let mut c = Character::zero(rs);
        for (w, m) in entries {
            if w.len() != c.rs.rank() {
                return Err(Error::DimensionMismatch {
                    expected: c.rs.rank(),
                    got: w.len(),
                });
            }
            if !c.rs.is_dominant_lat(&w) {
                return Err(Error::NotDominant(format!("{w:?}")));
            }
            if m.even < 0 || m.odd < 0 {
                return Err(Error::NegativeResidual(format!("{w:?} has {m:?}")));
            }
            if m.odd != 0 && !c.rs.id().is_super() {
                return Err(Error::ParityArithmetic(format!(
                    "odd multiplicity at {w:?} in classical {}",
                    c.rs.id()
                )));
            }
            c.accumulate(&w, m);
        }
        Ok(c)
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn get(&self, w: &[i32]) -> Mult {
        self.mults.get(w).copied().unwrap_or_default()
    }

    /// Multiplicity of an arbitrary (not necessarily dominant) weight.
    pub fn mult_at(&self, w: &[i32]) -> Mult {
        self.get(&self.rs.dominant_lat(w).0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Lat, &Mult)> {
        self.mults.iter()
    }

    /// Number of dominant weights carried.
    pub fn len(&self) -> usize {
        self.mults.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    fn accumulate(&mut self, w: &[i32], m: Mult) {
        if m.is_zero() {
            return;
        }
        let e = self.mults.entry(w.iter().copied().collect()).or_default();
        e.even += m.even;
        e.odd += m.odd;
        if e.is_zero() {
            self.mults.remove(w);
        }
    }

    /// `self += k · other` (parity swapped when `flip`).
    fn add_scaled(&mut self, other: &Character, k: i64, flip: bool) {
        for (w, &m) in &other.mults {
            let m = if flip { m.flip() } else { m };
            self.accumulate(w, m.scaled(k));
        }
    }

    /// The parity-flipped character.
    pub fn flip(&self) -> Character {
        Character {
            rs: self.rs.clone(),
            mults: self.mults.iter().map(|(w, m)| (w.clone(), m.flip())).collect(),
        }
    }

    /// Every weight with its multiplicity (orbits expanded).
    pub fn expand(&self) -> Vec<(Lat, Mult)> {
        let mut out = Vec::new();
        for (w, &m) in &self.mults {
            for x in self.rs.orbit_lat(w) {
                out.push((x, m));
            }
        }
        out
    }

    /// Total (even, odd) dimension.
    pub fn mass(&self) -> (u128, u128) {
        let mut even = 0u128;
        let mut odd = 0u128;
        for (w, m) in &self.mults {
            let n = self.rs.orbit_size_lat(w);
            even += n * m.even as u128;
            odd += n * m.odd as u128;
        }
        (even, odd)
    }

    /// Ordinary dimension.
    pub fn dim(&self) -> u128 {
        let (e, o) = self.mass();
        e + o
    }

    /// Superdimension `dim V_0 − dim V_1`.
    pub fn superdim(&self) -> i128 {
        let (e, o) = self.mass();
        e as i128 - o as i128
    }

    /// Dominant weights, highest first.
    pub fn sorted_support(&self) -> Vec<Lat> {
        let mut keys: Vec<Lat> = self.mults.keys().cloned().collect();
        keys.sort_by(|a, b| height_order(&self.rs, a, b));
        keys
    }

    /// Line-oriented dump: `e:<ε-coords> <even> <odd>`, highest weight first.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for w in self.sorted_support() {
            let m = self.mults[&w];
            s.push_str(&format!("{} {} {}\n", format_eps(&self.rs, &w), m.even, m.odd));
        }
        s
    }
}

/// Peeling order: larger height first, ties broken by ε-coordinates descending.
pub fn height_order(rs: &RootSystem, a: &[i32], b: &[i32]) -> Ordering {
    rs.height_key(b).cmp(&rs.height_key(a)).then_with(|| {
        let wa = rs.lat_to_weight(a);
        let wb = rs.lat_to_weight(b);
        wb.coords().cmp(wa.coords())
    })
}

fn check_same(c1: &Character, c2: &Character) -> Result<()> {
    if c1.rs.id() != c2.rs.id() {
        return Err(Error::SystemMismatch(c1.rs.id(), c2.rs.id()));
    }
    Ok(())
}

fn lat_add(a: &[i32], b: &[i32]) -> Lat {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn lat_sub(a: &[i32], b: &[i32]) -> Lat {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Graded tensor product.
pub fn tensor_char(c1: &Character, c2: &Character) -> Result<Character> {
    check_same(c1, c2)?;
    let rs = c1.rs.clone();
    let e1 = c1.expand();
    let e2 = c2.expand();
    let mut acc: HashMap<Lat, Mult> = HashMap::new();
    let mut s: Lat = (0..rs.rank()).map(|_| 0).collect();
    for (a, ma) in &e1 {
        for (b, mb) in &e2 {
            let mut dominant = true;
            for i in 0..s.len() {
                s[i] = a[i] + b[i];
                if s[i] < 0 {
                    dominant = false;
                    break;
                }
            }
            if !dominant {
                continue;
            }
            let e = acc.entry(s.clone()).or_default();
            e.even += ma.even * mb.even + ma.odd * mb.odd;
            e.odd += ma.even * mb.odd + ma.odd * mb.even;
        }
    }
    Ok(Character {
        rs,
        mults: acc.into_iter().filter(|(_, m)| !m.is_zero()).collect(),
    })
}

/// The three dominant-restricted convolutions `c₀⋆c₀`, `c₁⋆c₁`, `c₀⋆c₁`.
fn self_convolutions(c: &Character) -> HashMap<Lat, [i64; 3]> {
    let ex = c.expand();
    let mut acc: HashMap<Lat, [i64; 3]> = HashMap::new();
    let mut s: Lat = (0..c.rs.rank()).map(|_| 0).collect();
    for (a, ma) in &ex {
        for (b, mb) in &ex {
            let mut dominant = true;
            for i in 0..s.len() {
                s[i] = a[i] + b[i];
                if s[i] < 0 {
                    dominant = false;
                    break;
                }
            }
            if !dominant {
                continue;
            }
            let e = acc.entry(s.clone()).or_default();
            e[0] += ma.even * mb.even;
            e[1] += ma.odd * mb.odd;
            e[2] += ma.even * mb.odd;
        }
    }
    acc
}

fn square_char(c: &Character, symmetric: bool) -> Result<Character> {
    let conv = self_convolutions(c);
    let sign = if symmetric { 1 } else { -1 };
    let mut keys: HashSet<Lat> = conv.keys().cloned().collect();
    keys.extend(c.mults.keys().map(|w| w.iter().map(|x| 2 * x).collect::<Lat>()));
    let mut mults = BTreeMap::new();
    for w in keys {
        let [c00, c11, c01] = conv.get(&w).copied().unwrap_or_default();
        let half: Lat = w.iter().map(|x| x / 2).collect();
        let doubled = if w.iter().all(|x| x % 2 == 0) {
            c.get(&half)
        } else {
            Mult::default()
        };
        let even2 = c00 + c11 + sign * (doubled.even - doubled.odd);
        if even2 % 2 != 0 {
            return Err(Error::ParityArithmetic(format!("odd numerator {even2} at {w:?}")));
        }
        let m = Mult::new(even2 / 2, c01);
        if m.even < 0 || m.odd < 0 {
            return Err(Error::ParityArithmetic(format!("negative entry {m:?} at {w:?}")));
        }
        if !m.is_zero() {
            mults.insert(w, m);
        }
    }
    Ok(Character {
        rs: c.rs.clone(),
        mults,
    })
}

/// Super-symmetric square: even part `S²(c₀) ⊕ Λ²(c₁)`, odd part `c₀ ⊗ c₁`.
pub fn sym_square_char(c: &Character) -> Result<Character> {
    square_char(c, true)
}

/// Super-alternating square: even part `Λ²(c₀) ⊕ S²(c₁)`, odd part `c₀ ⊗ c₁`.
pub fn alt_square_char(c: &Character) -> Result<Character> {
    square_char(c, false)
}

/// Multiplicities of the irreducible constituents of `V_λ ⊗ W` (ordinary,
/// ignoring parity), by reflecting `λ + μ + ρ` over the weights `μ` of `W`.
pub fn brauer_klimyk(rs: &RootSystem, lambda: &[i32], other: &Character) -> BTreeMap<Lat, i64> {
    let mut out: BTreeMap<Lat, i64> = BTreeMap::new();
    for (mu, m) in other.expand() {
        let x: Lat = lambda.iter().zip(&mu).map(|(l, u)| l + u + 1).collect();
        let (d, steps) = rs.dominant_lat(&x);
        if d.contains(&0) {
            continue;
        }
        let nu: Lat = d.iter().map(|c| c - 1).collect();
        let sign = if steps % 2 == 0 { 1 } else { -1 };
        *out.entry(nu).or_default() += sign * m.total();
    }
    out.retain(|_, n| *n != 0);
    out
}

/// How [`IrrepCache`] builds irreducible characters of a classical system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Freudenthal recursion over the dominant weights below `λ`.
    Freudenthal,
    /// Products with fundamental characters, minus the lower constituents.
    Induction,
}

/// Memoized irreducible characters of one root system.
///
/// Safe to share between threads; concurrent misses may compute the same
/// character twice, with identical results.
#[derive(Debug)]
pub struct IrrepCache {
    rs: Arc<RootSystem>,
    method: Method,
    budget: usize,
    memo: RwLock<HashMap<Lat, Arc<Character>>>,
    seeds: RwLock<HashMap<usize, Arc<Character>>>,
}

impl IrrepCache {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        let method = if rs.id().is_super() {
            Method::Induction
        } else {
            Method::Freudenthal
        };
        IrrepCache {
            rs,
            method,
            budget: DEFAULT_BUDGET,
            memo: RwLock::new(HashMap::new()),
            seeds: RwLock::new(HashMap::new()),
        }
    }

    pub fn for_system(id: FamilyRank) -> Self {
        IrrepCache::new(Arc::new(RootSystem::new(id)))
    }

    /// Tensor-ring induction even for classical systems (seeded by
    /// Freudenthal fundamentals).
    pub fn induced(rs: Arc<RootSystem>) -> Self {
        IrrepCache {
            method: Method::Induction,
            ..IrrepCache::new(rs)
        }
    }

    pub fn with_budget(mut self, cap: usize) -> Self {
        self.budget = cap;
        self
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// `ch(V_λ)`.
    pub fn irrep_character(&self, lambda: &DominantWeight) -> Result<Arc<Character>> {
        if lambda.coords().len() != self.rs.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rs.rank(),
                got: lambda.coords().len(),
            });
        }
        self.irrep_lat(lambda.coords())
    }

    fn irrep_lat(&self, lambda: &[i32]) -> Result<Arc<Character>> {
        if let Some(c) = self.memo.read().expect("memo lock").get(lambda) {
            return Ok(c.clone());
        }
        let c = Arc::new(match self.method {
            Method::Freudenthal => self.freudenthal(lambda)?,
            Method::Induction => self.induce(lambda)?,
        });
        let mut memo = self.memo.write().expect("memo lock");
        Ok(memo.entry(lambda.iter().copied().collect()).or_insert(c).clone())
    }

    fn freudenthal(&self, lambda: &[i32]) -> Result<Character> {
        let rs = &self.rs;
        let roots = rs.positive_roots_lat();
        let top: Lat = lambda.iter().copied().collect();
        let mut seen: HashSet<Lat> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(top.clone());
        queue.push_back(top.clone());
        while let Some(mu) = queue.pop_front() {
            for a in roots {
                let nu = lat_sub(&mu, a);
                if rs.is_dominant_lat(&nu) && seen.insert(nu.clone()) {
                    if seen.len() > self.budget {
                        return Err(Error::BudgetExceeded {
                            count: seen.len(),
                            cap: self.budget,
                        });
                    }
                    queue.push_back(nu);
                }
            }
        }
        let mut order: Vec<Lat> = seen.into_iter().collect();
        order.sort_by(|a, b| height_order(rs, a, b));

        let rho = rs.rho_lat();
        let top_rho = lat_add(&top, &rho);
        let top_norm = rs.lat_inner_scaled(&top_rho, &top_rho) as i128;
        let mut mult: HashMap<Lat, i64> = HashMap::new();
        mult.insert(top.clone(), 1);
        for mu in order.iter().skip(1) {
            let mr = lat_add(mu, &rho);
            let denom = top_norm - rs.lat_inner_scaled(&mr, &mr) as i128;
            let mut num: i128 = 0;
            for a in roots {
                let mut w: Lat = mu.clone();
                loop {
                    for (wi, ai) in w.iter_mut().zip(a) {
                        *wi += ai;
                    }
                    let m = mult.get(&rs.dominant_lat(&w).0).copied().unwrap_or(0);
                    if m == 0 {
                        break;
                    }
                    num += m as i128 * rs.lat_inner_scaled(&w, a) as i128;
                }
            }
            num *= 2;
            if denom <= 0 || num % denom != 0 {
                return Err(Error::NonIntegerResult(format!(
                    "Freudenthal quotient {num}/{denom} at {mu:?} in {}",
                    rs.id()
                )));
            }
            let m = (num / denom) as i64;
            if m > 0 {
                mult.insert(mu.clone(), m);
            }
        }
        Character::from_dominant(rs.clone(), mult.into_iter().map(|(w, m)| (w, Mult::new(m, 0))))
    }

    /// Generator `g` (0-based index) of the dominant monoid and its weight.
    fn generator_lat(&self, i: usize) -> Lat {
        let m = self.rs.rank();
        let r = if self.rs.id().is_super() && i == m - 1 { 2 } else { 1 };
        self.rs.fundamental_lat(i, r)
    }

    /// `ch(V_g)` for the `i`-th generator.
    fn seed(&self, i: usize) -> Result<Arc<Character>> {
        if let Some(c) = self.seeds.read().expect("seed lock").get(&i) {
            return Ok(c.clone());
        }
        let c = Arc::new(if self.rs.id().is_super() {
            exterior_seed(&self.rs, i + 1)?
        } else {
            let fc = IrrepCache::new(self.rs.clone()).with_budget(self.budget);
            (*fc.irrep_lat(&self.generator_lat(i))?).clone()
        });
        let mut seeds = self.seeds.write().expect("seed lock");
        Ok(seeds.entry(i).or_insert(c).clone())
    }

    fn induce(&self, lambda: &[i32]) -> Result<Character> {
        let rs = &self.rs;
        if lambda.iter().all(|&c| c == 0) {
            return Ok(Character::trivial(rs.clone()));
        }
        let mut best: Option<(u128, usize)> = None;
        for i in 0..rs.rank() {
            let g = self.generator_lat(i);
            if lambda[i] >= g[i] {
                let d = self.seed(i)?.dim();
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, i));
                }
            }
        }
        let (_, gi) = best.expect("nonzero weight has a generator below it");
        let g = self.generator_lat(gi);
        let lower = lat_sub(lambda, &g);
        let seed = self.seed(gi)?;
        let base = self.irrep_lat(&lower)?;
        let mut product = tensor_char(&base, &seed)?;
        if product.len() > self.budget {
            return Err(Error::BudgetExceeded {
                count: product.len(),
                cap: self.budget,
            });
        }
        let constituents = brauer_klimyk(rs, &lower, &seed);
        if constituents.get(lambda).copied() != Some(1) {
            return Err(Error::NegativeResidual(format!(
                "top constituent {lambda:?} has multiplicity {:?}",
                constituents.get(lambda)
            )));
        }
        for (nu, &n) in &constituents {
            if nu.as_slice() == lambda {
                continue;
            }
            if n < 0 {
                return Err(Error::NegativeResidual(format!("constituent {nu:?} has {n}")));
            }
            let flip = parity_odd(rs, lambda, nu);
            product.add_scaled(&*self.irrep_lat(nu)?, -n, flip);
        }
        self.validate(lambda, &product)?;
        Ok(product)
    }

    /// Top weight `(1,0)`, nonnegative entries, the parity rule and the
    /// superdimension.
    fn validate(&self, lambda: &[i32], c: &Character) -> Result<()> {
        let rs = &self.rs;
        if c.get(lambda) != Mult::new(1, 0) {
            return Err(Error::NegativeResidual(format!(
                "top weight {lambda:?} carries {:?}",
                c.get(lambda)
            )));
        }
        for (w, m) in c.iter() {
            if m.even < 0 || m.odd < 0 {
                return Err(Error::NegativeResidual(format!("{w:?} carries {m:?}")));
            }
            let odd = parity_odd(rs, lambda, w);
            if (odd && m.even != 0) || (!odd && m.odd != 0) {
                return Err(Error::ParityArithmetic(format!(
                    "{w:?} carries {m:?} against the parity rule"
                )));
            }
        }
        let expect = dim_irrep_big(rs, &DominantWeight::from_lat(rs, lambda)?)?;
        if num_bigint::BigInt::from(c.superdim()) != expect {
            return Err(Error::NonIntegerResult(format!(
                "character of {lambda:?} has superdimension {} but the product formula gives {expect}",
                c.superdim()
            )));
        }
        Ok(())
    }

    /// Highest-weight peeling into irreducible characters.
    pub fn decompose(&self, c: &Character) -> Result<Decomposition> {
        if c.rs.id() != self.rs.id() {
            return Err(Error::SystemMismatch(self.rs.id(), c.rs.id()));
        }
        let mut rest = c.clone();
        let mut summands = Vec::new();
        let mut trivial_count = 0;
        for w in c.sorted_support() {
            let m = rest.get(&w);
            if m.even < 0 || m.odd < 0 {
                return Err(Error::NegativeResidual(format!("{w:?} left with {m:?}")));
            }
            if m.is_zero() {
                continue;
            }
            let ch = self.irrep_lat(&w)?;
            let highest = DominantWeight::from_lat(&self.rs, &w)?;
            for (k, flipped) in [(m.even, false), (m.odd, true)] {
                if k == 0 {
                    continue;
                }
                rest.add_scaled(&ch, -k, flipped);
                if highest.is_zero() && !flipped {
                    trivial_count += k as u64;
                } else {
                    summands.push(Summand {
                        label: IrrepLabel {
                            highest: highest.clone(),
                            flipped,
                        },
                        mult: k as u64,
                    });
                }
            }
        }
        if let Some((w, m)) = rest.iter().next() {
            return Err(Error::NegativeResidual(format!("{w:?} left with {m:?}")));
        }
        Ok(Decomposition {
            system: self.rs.id(),
            summands,
            trivial_count,
        })
    }

    /// Decompositions of `S²(V_λ)` and `Λ²(V_λ)`.
    pub fn square_table(&self, lambda: &DominantWeight) -> Result<(Decomposition, Decomposition)> {
        let ch = self.irrep_character(lambda)?;
        let sym = self.decompose(&sym_square_char(&ch)?)?;
        let alt = self.decompose(&alt_square_char(&ch)?)?;
        Ok((sym, alt))
    }

    /// Decomposition of one square.
    pub fn square(&self, lambda: &DominantWeight, kind: SquareKind) -> Result<Decomposition> {
        let ch = self.irrep_character(lambda)?;
        let sq = match kind {
            SquareKind::Symmetric => sym_square_char(&ch)?,
            SquareKind::Alternating => alt_square_char(&ch)?,
        };
        self.decompose(&sq)
    }
}

/// Whether `μ` sits in the opposite parity to `λ` (`BC_m` only).
fn parity_odd(rs: &RootSystem, lambda: &[i32], mu: &[i32]) -> bool {
    if !rs.id().is_super() {
        return false;
    }
    let diff = lat_sub(lambda, mu);
    let s = rs.eps_sum_lat(&diff);
    s.to_integer().rem_euclid(2) == 1
}

/// `ch(V_{μ_r})` for `osp(1|2m)`: even part the weights of `Λ^r(k^{2m})`, odd
/// part those of `Λ^{r−1}(k^{2m})`.
pub fn exterior_seed(rs: &Arc<RootSystem>, r: usize) -> Result<Character> {
    if !rs.id().is_super() {
        return Err(Error::UnsupportedType(rs.id()));
    }
    let m = rs.rank();
    if r == 0 || r > m {
        return Err(Error::IndexOutOfRange { index: r, rank: m });
    }
    // each ε_i contributes nothing, +ε_i, −ε_i or both (2 slots, weight 0);
    // only dominant results are kept: λ_1 ≥ … ≥ λ_m ≥ 0 with λ_i ∈ {-1,0,1}
    let mut acc: BTreeMap<Lat, Mult> = BTreeMap::new();
    let total = 4usize.pow(m as u32);
    let mut eps = vec![0i32; m];
    for code in 0..total {
        let mut c = code;
        let mut slots = 0;
        for e in eps.iter_mut() {
            let (v, s) = match c % 4 {
                0 => (0, 0),
                1 => (1, 1),
                2 => (-1, 1),
                _ => (0, 2),
            };
            *e = v;
            slots += s;
            c /= 4;
        }
        if !(slots == r || slots + 1 == r) {
            continue;
        }
        if eps.windows(2).any(|p| p[0] < p[1]) || eps[m - 1] < 0 {
            continue;
        }
        let mut w: Lat = (0..m - 1).map(|i| eps[i] - eps[i + 1]).collect();
        w.push(2 * eps[m - 1]);
        let e = acc.entry(w).or_default();
        if slots == r {
            e.even += 1;
        } else {
            e.odd += 1;
        }
    }
    Character::from_dominant(rs.clone(), acc)
}

/// Square type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SquareKind {
    #[serde(rename = "sym")]
    Symmetric,
    #[serde(rename = "alt")]
    Alternating,
}

impl SquareKind {
    pub const BOTH: [SquareKind; 2] = [SquareKind::Symmetric, SquareKind::Alternating];

    pub fn label(self) -> &'static str {
        match self {
            SquareKind::Symmetric => "sym",
            SquareKind::Alternating => "alt",
        }
    }
}

impl fmt::Display for SquareKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for SquareKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sym" | "s2" | "symmetric" => Ok(SquareKind::Symmetric),
            "alt" | "l2" | "alternating" => Ok(SquareKind::Alternating),
            _ => Err(Error::Parse(format!("unknown square kind '{s}'"))),
        }
    }
}

/// `V_λ` or `ΠV_λ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrrepLabel {
    pub highest: DominantWeight,
    pub flipped: bool,
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.flipped {
            f.write_str("Π")?;
        }
        write!(f, "V({})", self.highest)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Summand {
    pub label: IrrepLabel,
    pub mult: u64,
}

/// A module written as `⊕ mult·label ⊕ k^trivial_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub system: FamilyRank,
    pub summands: Vec<Summand>,
    pub trivial_count: u64,
}

#[derive(Serialize, Deserialize)]
struct SummandJson {
    weight_f: Vec<i64>,
    flipped: bool,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct DecompositionJson {
    summands: Vec<SummandJson>,
    trivial: u64,
}

impl Decomposition {
    /// Number of nontrivial summands, with multiplicity.
    pub fn nontrivial_count(&self) -> u64 {
        self.summands.iter().map(|s| s.mult).sum()
    }

    /// Summands as a multiset keyed by label, for order-free comparison.
    pub fn as_multiset(&self) -> BTreeMap<IrrepLabel, u64> {
        let mut out = BTreeMap::new();
        for s in &self.summands {
            *out.entry(s.label.clone()).or_default() += s.mult;
        }
        out
    }

    /// Superdimension of the whole module.
    pub fn superdim(&self, rs: &RootSystem) -> Result<num_bigint::BigInt> {
        let mut acc = num_bigint::BigInt::from(self.trivial_count);
        for s in &self.summands {
            let d = dim_irrep_big(rs, &s.label.highest)? * s.mult;
            if s.label.flipped {
                acc -= d;
            } else {
                acc += d;
            }
        }
        Ok(acc)
    }

    /// `{"summands":[{"weight_f":[…],"flipped":bool,"mult":int}],"trivial":int}`
    pub fn to_json(&self) -> serde_json::Value {
        let j = DecompositionJson {
            summands: self
                .summands
                .iter()
                .map(|s| SummandJson {
                    weight_f: s.label.highest.coords().iter().map(|&c| c as i64).collect(),
                    flipped: s.label.flipped,
                    mult: s.mult,
                })
                .collect(),
            trivial: self.trivial_count,
        };
        serde_json::to_value(j).expect("plain data")
    }

    pub fn from_json(rs: &RootSystem, v: &serde_json::Value) -> Result<Self> {
        let j: DecompositionJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let summands = j
            .summands
            .into_iter()
            .map(|s| {
                Ok(Summand {
                    label: IrrepLabel {
                        highest: DominantWeight::new(rs, &s.weight_f)?,
                        flipped: s.flipped,
                    },
                    mult: s.mult,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Decomposition {
            system: rs.id(),
            summands,
            trivial_count: j.trivial,
        })
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .summands
            .iter()
            .map(|s| {
                if s.mult == 1 {
                    s.label.to_string()
                } else {
                    format!("{}{}", s.mult, s.label)
                }
            })
            .collect();
        match self.trivial_count {
            0 => {}
            1 => parts.push("k".into()),
            n => parts.push(format!("{n}k")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}
