//! Which irreducible representations have a tensor square that is irreducible,
//! or irreducible plus one trivial summand.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{Decomposition, IrrepCache, IrrepLabel, SquareKind, Summand};
use crate::corpus::{same_module, Corpus};
use crate::error::{Error, Result};
use crate::repdims::{casimir, dim_irrep, enumerate_small_reps, r_threshold, DominantWeight};
use crate::rootsys::{ser_q, Family, FamilyRank, Lat, RootSystem, Q};

/// Largest `n` for the closed-form `sl(2)` family.
pub const SL2_MAX: u32 = 6;
/// Largest `n` for the closed-form `osp(1|2)` family.
pub const OSP12_MAX: u32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Status {
    Irreducible,
    IrreduciblePlusTrivial,
    Neither,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Irreducible => "irreducible",
            Status::IrreduciblePlusTrivial => "irreducible+k",
            Status::Neither => "neither",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SquareStatus {
    pub kind: SquareKind,
    pub status: Status,
    /// Number of trivial summands split off (0 or 1) when `status` is not `Neither`.
    pub delta: u8,
}

impl SquareStatus {
    pub fn is_hit(&self) -> bool {
        self.status != Status::Neither
    }
}

/// Reads the status off a decomposition. A lone trivial summand counts as
/// irreducible; parity-flipped summands are allowed.
pub fn square_status(d: &Decomposition, kind: SquareKind) -> SquareStatus {
    let (status, delta) = match (d.nontrivial_count(), d.trivial_count) {
        (1, 0) | (0, 1) => (Status::Irreducible, 0),
        (1, 1) => (Status::IrreduciblePlusTrivial, 1),
        _ => (Status::Neither, 0),
    };
    SquareStatus { kind, status, delta }
}

#[derive(Clone, Debug)]
pub struct Hit {
    pub weight: DominantWeight,
    pub dim: i64,
    pub status: SquareStatus,
    pub decomposition: Decomposition,
}

#[derive(Clone, Debug)]
pub struct ClassificationResult {
    pub system: FamilyRank,
    pub kind: SquareKind,
    pub hits: Vec<Hit>,
    /// Hits grouped as `{λ, λ*}`; self-dual weights form singletons.
    pub duality_classes: Vec<Vec<DominantWeight>>,
}

fn check_supported(rs: &RootSystem) -> Result<()> {
    if rs.id().excluded_from_classification() {
        Err(Error::UnsupportedType(rs.id()))
    } else {
        Ok(())
    }
}

/// All nonzero `λ` with `dim V_λ ≤ dim 𝔤`.
pub fn symmetric_candidates(rs: &RootSystem) -> Result<Vec<DominantWeight>> {
    check_supported(rs)?;
    Ok(enumerate_small_reps(rs)?.into_iter().map(|(w, _)| w).collect())
}

/// `r·β_i` with `0 < r < r_i` (`r` even at the odd node of `BC_m`).
pub fn alternating_candidates(rs: &RootSystem) -> Result<Vec<DominantWeight>> {
    check_supported(rs)?;
    let mut out = Vec::new();
    for i in 1..=rs.rank() {
        let ri = r_threshold(rs, i)?;
        let mut r = 1i64;
        while Q::from_integer(r) < ri {
            let odd_node = rs.id().is_super() && i == rs.rank();
            if !(odd_node && r % 2 == 1) {
                out.push(DominantWeight::fundamental(rs, i, r)?);
            }
            r += 1;
        }
    }
    out.sort();
    Ok(out)
}

/// The two inequalities bounding a symmetric hit:
/// `(λ,α^∨)² ≤ (λ,λ)(α^∨,α^∨) < ((dim 𝔤 − 1)/(n − 2δ))²` for every simple coroot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    #[serde(serialize_with = "ser_qs")]
    pub pairings_sq: Vec<Q>,
    #[serde(serialize_with = "ser_qs")]
    pub products: Vec<Q>,
    /// `None` when `n ≤ 2δ`, where the bound is vacuous.
    #[serde(serialize_with = "ser_opt_q")]
    pub bound_sq: Option<Q>,
    pub holds: bool,
}

fn ser_qs<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|q| q.to_string()))
}

fn ser_opt_q<S: serde::Serializer>(v: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(q) => ser_q(q, s),
        None => s.serialize_none(),
    }
}

/// Simple coroot data `(λ, α^∨)` and `|α^∨|²`; the odd simple root of `BC_m`
/// is doubled first.
fn coroot_data(rs: &RootSystem, x: &[i32], i: usize) -> (Q, Q) {
    let mut a: Lat = rs.simple_root_lat(i).clone();
    if rs.simple_root_is_odd(i) {
        a.iter_mut().for_each(|c| *c *= 2);
    }
    let aa = rs.lat_inner(&a, &a);
    let two = Q::from_integer(2);
    (two * rs.lat_inner(x, &a) / aa, Q::from_integer(4) / aa)
}

pub fn cauchy_schwarz_check(rs: &RootSystem, lambda: &DominantWeight, delta: u8) -> Result<BoundCheck> {
    let n = dim_irrep(rs, lambda)?;
    let x = lambda.coords();
    let ll = rs.lat_inner(x, x);
    let denom = n - 2 * delta as i64;
    let bound_sq = (denom > 0).then(|| {
        let b = Q::new(rs.dim_g() - 1, denom);
        b * b
    });
    let mut pairings_sq = Vec::new();
    let mut products = Vec::new();
    let mut holds = true;
    for i in 0..rs.rank() {
        let (p, cc) = coroot_data(rs, x, i);
        let psq = p * p;
        let prod = ll * cc;
        holds &= psq <= prod && bound_sq.is_none_or(|b| prod < b);
        pairings_sq.push(psq);
        products.push(prod);
    }
    Ok(BoundCheck {
        pairings_sq,
        products,
        bound_sq,
        holds,
    })
}

/// Classifies every candidate of one square type.
pub fn classify_squares(cache: &IrrepCache, kind: SquareKind) -> Result<ClassificationResult> {
    let rs = cache.root_system().clone();
    let candidates = match kind {
        SquareKind::Symmetric => symmetric_candidates(&rs)?,
        SquareKind::Alternating => alternating_candidates(&rs)?,
    };
    let mut hits = Vec::new();
    for lambda in candidates {
        let d = cache.square(&lambda, kind)?;
        let status = square_status(&d, kind);
        if status.is_hit() {
            hits.push(Hit {
                dim: dim_irrep(&rs, &lambda)?,
                weight: lambda,
                status,
                decomposition: d,
            });
        }
    }
    let mut classes: BTreeMap<Lat, BTreeSet<DominantWeight>> = BTreeMap::new();
    for h in &hits {
        let x = h.weight.coords();
        let dual = rs.dual_lat(x);
        let key = if dual < *x { dual } else { x.clone() };
        classes.entry(key).or_default().insert(h.weight.clone());
    }
    Ok(ClassificationResult {
        system: rs.id(),
        kind,
        hits,
        duality_classes: classes.into_values().map(|s| s.into_iter().collect()).collect(),
    })
}

/// Both sides of `l(S²V) = (n+2)·l(V)` or `l(Λ²V) = (n−2)·l(V)`, each scaled by
/// `κ`: the left side is `Σ ± sdim W · c(W)` over the summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexIdentity {
    #[serde(serialize_with = "ser_q")]
    pub lhs: Q,
    #[serde(serialize_with = "ser_q")]
    pub rhs: Q,
    pub holds: bool,
}

pub fn verify_index_identity(cache: &IrrepCache, lambda: &DominantWeight, kind: SquareKind) -> Result<IndexIdentity> {
    let rs = cache.root_system();
    let d = cache.square(lambda, kind)?;
    let (lhs, rhs) = index_identity_of(rs, lambda, &d, kind)?;
    Ok(IndexIdentity {
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

/// Both sides for an already computed decomposition.
pub fn index_identity_of(
    rs: &RootSystem,
    lambda: &DominantWeight,
    d: &Decomposition,
    kind: SquareKind,
) -> Result<(Q, Q)> {
    if d.system != rs.id() {
        return Err(Error::SystemMismatch(rs.id(), d.system));
    }
    let n = dim_irrep(rs, lambda)?;
    let mut lhs = Q::from_integer(0);
    for s in &d.summands {
        let w = dim_irrep(rs, &s.label.highest)? * s.mult as i64;
        let w = if s.label.flipped { -w } else { w };
        lhs += Q::from_integer(w) * casimir(rs, &s.label.highest);
    }
    let shift = match kind {
        SquareKind::Symmetric => 2,
        SquareKind::Alternating => -2,
    };
    let rhs = Q::from_integer((n + shift) * n) * casimir(rs, lambda);
    Ok((lhs, rhs))
}

/// `(n − 1 − 2δ/n)((α,ρ) + ½|α|² − |λ − α|²) = (1 − 2δ/n)·c(λ)` for
/// `λ = r·β_i`, `α = α_i`.
pub fn alternating_proof_identity(rs: &RootSystem, lambda: &DominantWeight, delta: u8) -> Result<bool> {
    let support = lambda.support();
    if support.len() != 1 {
        return Err(Error::NotSingleSupport(format!("{lambda} in {}", rs.id())));
    }
    let n = dim_irrep(rs, lambda)?;
    if n <= 2 {
        return Err(Error::UnsupportedType(rs.id()));
    }
    let i = support[0] - 1;
    let x = lambda.coords();
    let a = rs.simple_root_lat(i);
    let lma: Lat = x.iter().zip(a.iter()).map(|(p, q)| p - q).collect();
    let half = Q::new(1, 2);
    let q_n = Q::from_integer(n);
    let two_delta = Q::from_integer(2 * delta as i64);
    let bracket = rs.lat_inner(a, &rs.rho_lat()) + half * rs.lat_inner(a, a) - rs.lat_inner(&lma, &lma);
    let lhs = (q_n - Q::from_integer(1) - two_delta / q_n) * bracket;
    let rhs = (Q::from_integer(1) - two_delta / q_n) * casimir(rs, lambda);
    Ok(lhs == rhs)
}

/// `(n − 2δ)(λ,λ) = 2(λ,ρ)`, forced on symmetric hits.
pub fn symmetric_identity(rs: &RootSystem, lambda: &DominantWeight, delta: u8) -> Result<bool> {
    let n = dim_irrep(rs, lambda)?;
    let x = lambda.coords();
    let lhs = Q::from_integer(n - 2 * delta as i64) * rs.lat_inner(x, x);
    let rhs = Q::from_integer(2) * rs.lat_inner(x, &rs.rho_lat());
    Ok(lhs == rhs)
}

fn decomposition_from(id: FamilyRank, parts: Vec<(i64, bool)>) -> Result<Decomposition> {
    let rs = RootSystem::new(id);
    let mut trivial = 0;
    let mut summands = Vec::new();
    for (c, flipped) in parts {
        if c == 0 && !flipped {
            trivial += 1;
        } else {
            summands.push(Summand {
                label: IrrepLabel {
                    highest: DominantWeight::new(&rs, &[c])?,
                    flipped,
                },
                mult: 1,
            });
        }
    }
    Ok(Decomposition {
        system: id,
        summands,
        trivial_count: trivial,
    })
}

/// Closed form for `sl(2)`, `V = S^n(k²)`: `S²V = ⊕ S^{2n−4i}` and
/// `Λ²V = ⊕ S^{2n−2−4i}`.
pub fn sl2_squares(n: u32) -> Result<(Decomposition, Decomposition)> {
    let id = FamilyRank::new(Family::A, 1)?;
    let n = n as i64;
    let sym = (0..=n / 2).map(|i| (2 * n - 4 * i, false)).collect();
    let alt = if n == 0 {
        Vec::new()
    } else {
        (0..=(n - 1) / 2).map(|i| (2 * n - 2 - 4 * i, false)).collect()
    };
    Ok((decomposition_from(id, sym)?, decomposition_from(id, alt)?))
}

/// Closed form for `osp(1|2)` with `V_n` of highest weight `n·ε_1`:
/// `V_n ⊗ V_n = ⊕_{k=0}^{2n} Π^{k} V_k`, and `V_k` lands in the symmetric
/// square when `2n − k ≡ 0, 3 (mod 4)`, in the alternating one otherwise.
pub fn osp12_squares(n: u32) -> Result<(Decomposition, Decomposition)> {
    let id = FamilyRank::new(Family::BC, 1)?;
    let n = n as i64;
    let mut sym = Vec::new();
    let mut alt = Vec::new();
    for k in 0..=2 * n {
        let entry = (2 * k, k % 2 == 1);
        match (2 * n - k).rem_euclid(4) {
            0 | 3 => sym.push(entry),
            _ => alt.push(entry),
        }
    }
    Ok((decomposition_from(id, sym)?, decomposition_from(id, alt)?))
}

/// Moves a weight to a fixed representative of its isomorphism class:
/// `B_1, C_1 → A_1`, `C_2 → B_2`, `D_3 → A_3`, then the smaller of `λ` and its
/// dual.
pub fn normalize(id: FamilyRank, x: &[i32]) -> (FamilyRank, Lat) {
    let (target, y): (FamilyRank, Lat) = match (id.family, id.rank) {
        (Family::B | Family::C, 1) => (
            FamilyRank {
                family: Family::A,
                rank: 1,
            },
            x.into(),
        ),
        (Family::C, 2) => (
            FamilyRank {
                family: Family::B,
                rank: 2,
            },
            [x[1], x[0]].into_iter().collect(),
        ),
        (Family::D, 3) => (
            FamilyRank {
                family: Family::A,
                rank: 3,
            },
            [x[1], x[0], x[2]].into_iter().collect(),
        ),
        _ => (id, x.into()),
    };
    let rs = RootSystem::new(target);
    let dual = rs.dual_lat(&y);
    (target, if dual < y { dual } else { y })
}

fn key_string(id: FamilyRank, x: &[i32]) -> String {
    let coords: Vec<String> = x.iter().map(|c| c.to_string()).collect();
    format!("{id} f:{}", coords.join(","))
}

#[derive(Clone, Debug, Serialize)]
pub struct HitRecord {
    pub system: FamilyRank,
    pub weight: String,
    pub kind: SquareKind,
    pub status: Status,
    pub dim: i64,
    pub decomposition: String,
    pub canonical: String,
    /// Symmetric hits only: the two inequalities.
    pub bound_holds: Option<bool>,
    /// Symmetric hits: `(n − 2δ)(λ,λ) = 2(λ,ρ)`. Alternating hits with a
    /// single support and `n > 2`: the proof identity.
    pub identity_holds: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy {
    pub entry: String,
    /// Recorded erratum for this entry, if any.
    pub erratum: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BucketReport {
    pub name: String,
    pub expected: Vec<String>,
    pub computed: Vec<String>,
    pub missing: Vec<Discrepancy>,
    pub unexpected: Vec<Discrepancy>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub rank_bound: usize,
    pub systems: Vec<FamilyRank>,
    pub buckets: Vec<BucketReport>,
    pub hits: Vec<HitRecord>,
    /// Disagreements between the closed forms and the general machinery.
    pub closed_form_mismatches: Vec<String>,
    pub passed: bool,
}

const BUCKETS: [(&str, SquareKind, Status); 4] = [
    ("sym_irreducible", SquareKind::Symmetric, Status::Irreducible),
    (
        "sym_plus_trivial",
        SquareKind::Symmetric,
        Status::IrreduciblePlusTrivial,
    ),
    ("alt_irreducible", SquareKind::Alternating, Status::Irreducible),
    (
        "alt_plus_trivial",
        SquareKind::Alternating,
        Status::IrreduciblePlusTrivial,
    ),
];

fn hit_record(
    rs: &RootSystem,
    weight: &DominantWeight,
    dim: i64,
    status: SquareStatus,
    d: &Decomposition,
) -> Result<HitRecord> {
    let (cid, cx) = normalize(rs.id(), weight.coords());
    let (bound_holds, identity_holds) = match status.kind {
        SquareKind::Symmetric => {
            let b = if rs.id().is_sl2() || rs.id().excluded_from_classification() {
                None
            } else {
                Some(cauchy_schwarz_check(rs, weight, status.delta)?.holds)
            };
            (b, Some(symmetric_identity(rs, weight, status.delta)?))
        }
        SquareKind::Alternating => {
            let id = match alternating_proof_identity(rs, weight, status.delta) {
                Ok(b) => Some(b),
                Err(Error::NotSingleSupport(_)) | Err(Error::UnsupportedType(_)) => None,
                Err(e) => return Err(e),
            };
            (None, id)
        }
    };
    Ok(HitRecord {
        system: rs.id(),
        weight: weight.to_string(),
        kind: status.kind,
        status: status.status,
        dim,
        decomposition: d.to_string(),
        canonical: key_string(cid, &cx),
        bound_holds,
        identity_holds,
    })
}

fn classify_system(id: FamilyRank) -> Result<Vec<HitRecord>> {
    let cache = IrrepCache::for_system(id);
    let rs = cache.root_system().clone();
    let mut out = Vec::new();
    for kind in SquareKind::BOTH {
        let res = classify_squares(&cache, kind)?;
        for h in &res.hits {
            out.push(hit_record(&rs, &h.weight, h.dim, h.status, &h.decomposition)?);
        }
    }
    Ok(out)
}

/// Runs the closed-form family, checks it against the general machinery and
/// returns its hits.
fn classify_closed_form(id: FamilyRank, max_n: u32, mismatches: &mut Vec<String>) -> Result<Vec<HitRecord>> {
    let cache = IrrepCache::for_system(id);
    let rs: Arc<RootSystem> = cache.root_system().clone();
    let mut out = Vec::new();
    for n in 1..=max_n {
        let (sym, alt) = match id.family {
            Family::BC => osp12_squares(n)?,
            _ => sl2_squares(n)?,
        };
        let coord = if id.is_super() { 2 * n as i64 } else { n as i64 };
        let lambda = DominantWeight::new(&rs, &[coord])?;
        let (gsym, galt) = cache.square_table(&lambda)?;
        for (kind, closed, general) in [
            (SquareKind::Symmetric, &sym, &gsym),
            (SquareKind::Alternating, &alt, &galt),
        ] {
            if !same_module(closed, general) {
                mismatches.push(format!("{id} n={n} {kind}: closed form {closed}, characters {general}"));
            }
            let status = square_status(closed, kind);
            if status.is_hit() {
                out.push(hit_record(&rs, &lambda, dim_irrep(&rs, &lambda)?, status, closed)?);
            }
        }
    }
    Ok(out)
}

/// Systems of rank at most `bound` that go through the generic driver.
pub fn driver_systems(bound: usize) -> Vec<FamilyRank> {
    FamilyRank::all_up_to(bound)
        .into_iter()
        .filter(|id| !id.is_sl2() && !id.excluded_from_classification())
        .collect()
}

/// Classifies every system of rank at most `rank_bound` and compares the
/// hits with the four lists in the corpus, up to isomorphism and duality.
pub fn theorem_check(corpus: &Corpus, rank_bound: usize) -> Result<TheoremReport> {
    let systems = driver_systems(rank_bound);
    let per_system: Vec<Result<Vec<HitRecord>>> = systems.par_iter().map(|&id| classify_system(id)).collect();
    let mut hits = Vec::new();
    for r in per_system {
        hits.extend(r?);
    }
    let mut closed_form_mismatches = Vec::new();
    if rank_bound >= 1 {
        hits.extend(classify_closed_form(
            FamilyRank::new(Family::A, 1)?,
            SL2_MAX,
            &mut closed_form_mismatches,
        )?);
        hits.extend(classify_closed_form(
            FamilyRank::new(Family::BC, 1)?,
            OSP12_MAX,
            &mut closed_form_mismatches,
        )?);
    }

    let mut buckets = Vec::new();
    for (name, kind, status) in BUCKETS {
        let computed: BTreeSet<String> = hits
            .iter()
            .filter(|h| h.kind == kind && h.status == status)
            .map(|h| h.canonical.clone())
            .collect();
        let mut expected = BTreeSet::new();
        let mut origin: BTreeMap<String, (FamilyRank, DominantWeight)> = BTreeMap::new();
        for e in corpus.theorem.bucket(kind, status == Status::IrreduciblePlusTrivial) {
            for id in e.scope.instances(rank_bound)? {
                let rs = RootSystem::new(id);
                let w = crate::corpus::eval_weight(&rs, &e.weight)?;
                let (cid, cx) = normalize(id, w.coords());
                let key = key_string(cid, &cx);
                origin.entry(key.clone()).or_insert((id, w));
                expected.insert(key);
            }
        }
        let missing = expected
            .difference(&computed)
            .map(|k| {
                let erratum = origin
                    .get(k)
                    .and_then(|(id, w)| corpus.bucket_erratum(name, *id, w))
                    .map(|e| e.note.clone());
                Discrepancy {
                    entry: k.clone(),
                    erratum,
                }
            })
            .collect();
        let unexpected = computed
            .difference(&expected)
            .map(|k| Discrepancy {
                entry: k.clone(),
                erratum: None,
            })
            .collect();
        buckets.push(BucketReport {
            name: name.to_string(),
            expected: expected.into_iter().collect(),
            computed: computed.into_iter().collect(),
            missing,
            unexpected,
        });
    }
    let passed =
        closed_form_mismatches.is_empty() && buckets.iter().all(|b| b.missing.is_empty() && b.unexpected.is_empty());
    Ok(TheoremReport {
        rank_bound,
        systems,
        buckets,
        hits,
        closed_form_mismatches,
        passed,
    })
}

impl TheoremReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "rank bound {}: {} systems through the driver, plus A1 and BC1 in closed form",
            self.rank_bound,
            self.systems.len()
        );
        for b in &self.buckets {
            let _ = writeln!(
                s,
                "{}: {} expected, {} computed, {} missing, {} unexpected",
                b.name,
                b.expected.len(),
                b.computed.len(),
                b.missing.len(),
                b.unexpected.len()
            );
            for d in &b.missing {
                let _ = write!(s, "  missing {}", d.entry);
                match &d.erratum {
                    Some(n) => {
                        let _ = writeln!(s, " [known erratum: {n}]");
                    }
                    None => s.push('\n'),
                }
            }
            for d in &b.unexpected {
                let _ = writeln!(s, "  unexpected {}", d.entry);
            }
        }
        for m in &self.closed_form_mismatches {
            let _ = writeln!(s, "closed form mismatch: {m}");
        }
        let _ = writeln!(s, "{}", if self.passed { "PASS" } else { "FAIL" });
        s
    }
}
