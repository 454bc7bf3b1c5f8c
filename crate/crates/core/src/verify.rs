//! Reproduction checks against the golden corpus, one report per check.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{Decomposition, IrrepCache, SquareKind};
use crate::classify::{index_identity_of, theorem_check, TheoremReport};
use crate::corpus::{eval_module, parse_q, same_module, Corpus, SquareInstance};
use crate::error::{Error, Result};
use crate::repdims::{enumerate_small_reps, lemma1_check, r_threshold, DominantWeight};
use crate::rootsys::{Family, FamilyRank, Lat, RootSystem};

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: u8,
    pub title: String,
    pub checked: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub passed: bool,
}

impl CheckReport {
    fn new(id: u8, title: &str, checked: usize, failures: Vec<String>, notes: Vec<String>) -> Self {
        CheckReport {
            id,
            title: title.to_string(),
            checked,
            passed: failures.is_empty(),
            failures,
            notes,
        }
    }

    pub fn line(&self) -> String {
        format!(
            "[{}] check {}: {} ({} checked, {} failed)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.checked,
            self.failures.len()
        )
    }
}

fn family_ranks(family: Family, lo: usize, hi: usize) -> Vec<FamilyRank> {
    (lo..=hi).filter_map(|m| FamilyRank::new(family, m).ok()).collect()
}

/// Every classical family at every rank up to `bound`, then the exceptionals.
fn all_systems(bound: usize) -> Vec<FamilyRank> {
    FamilyRank::all_up_to(bound)
}

pub fn check_table1(corpus: &Corpus, bound: usize) -> Result<CheckReport> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for id in all_systems(bound) {
        let e = corpus
            .table1_expected(id)
            .ok_or_else(|| Error::Corpus(format!("no numerical row for {id}")))?;
        let row = RootSystem::new(id).table1_row();
        let want = (parse_q(&e.rho_norm_sq)?, parse_q(&e.max_coroot_norm_sq)?, e.dim_g);
        let got = (row.rho_norm_sq, row.max_coroot_norm_sq, row.dim_g);
        checked += 1;
        if want != got {
            failures.push(format!(
                "{id}: expected ({}, {}, {}), computed ({}, {}, {})",
                want.0, want.1, want.2, got.0, got.1, got.2
            ));
        }
    }
    Ok(CheckReport::new(
        1,
        "numerical data per type",
        checked,
        failures,
        vec![],
    ))
}

pub fn check_lemma1(bound: usize) -> Result<CheckReport> {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let mut checked = 0;
    for id in all_systems(bound) {
        let c = lemma1_check(&RootSystem::new(id));
        if !c.applicable {
            notes.push(format!("{id}: skipped (sl2 or osp(1|2)), {} vs {}", c.lhs_sq, c.rhs_sq));
            continue;
        }
        checked += 1;
        if !c.holds {
            failures.push(format!("{id}: {} is not below {}", c.lhs_sq, c.rhs_sq));
        }
    }
    Ok(CheckReport::new(2, "norm inequality", checked, failures, notes))
}

pub fn check_table2(corpus: &Corpus, bound: usize) -> Result<CheckReport> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for id in all_systems(bound) {
        let e = corpus
            .table2_expected(id)
            .ok_or_else(|| Error::Corpus(format!("no threshold row for {id}")))?;
        let rs = RootSystem::new(id);
        if e.r.len() != rs.rank() {
            failures.push(format!("{id}: corpus lists {} thresholds", e.r.len()));
            continue;
        }
        for (i, want) in e.r.iter().enumerate() {
            let want = parse_q(want)?;
            let got = r_threshold(&rs, i + 1)?;
            checked += 1;
            if want != got {
                failures.push(format!("{id} r_{}: expected {want}, computed {got}", i + 1));
            }
        }
    }
    Ok(CheckReport::new(3, "alternating thresholds", checked, failures, vec![]))
}

/// Systems whose small representations are compared with the tables.
pub fn small_rep_systems(bound: usize) -> Vec<FamilyRank> {
    let mut v = Vec::new();
    for f in [Family::A, Family::B, Family::C, Family::D] {
        v.extend(family_ranks(f, 1, bound));
    }
    v.extend(family_ranks(Family::BC, 2, bound.min(5)));
    for (f, m) in [
        (Family::E, 6),
        (Family::E, 7),
        (Family::E, 8),
        (Family::F, 4),
        (Family::G, 2),
    ] {
        if m <= bound {
            v.push(FamilyRank::new(f, m).expect("valid"));
        }
    }
    v
}

/// Highest weights listed in the square tables for one system. `D_3` has no
/// rows for its half-spin weights; those come from `A_3` through `A_3 = D_3`.
fn tabulated_weights(instances: &[SquareInstance], id: FamilyRank) -> BTreeSet<Lat> {
    let mut out: BTreeSet<Lat> = instances
        .iter()
        .filter(|i| i.system == id)
        .map(|i| i.weight.coords().clone())
        .collect();
    if id.family == Family::D && id.rank == 3 {
        let a3 = FamilyRank {
            family: Family::A,
            rank: 3,
        };
        for i in instances.iter().filter(|i| i.system == a3) {
            let x = i.weight.coords();
            out.insert([x[1], x[0], x[2]].into_iter().collect());
        }
    }
    out
}

pub fn check_small_reps(corpus: &Corpus, bound: usize) -> Result<CheckReport> {
    let instances = corpus.square_instances(bound)?;
    let systems = small_rep_systems(bound);
    type SmallList = (FamilyRank, Vec<(DominantWeight, i64)>);
    let lists: Vec<Result<SmallList>> = systems
        .par_iter()
        .map(|&id| Ok((id, enumerate_small_reps(&RootSystem::new(id))?)))
        .collect();
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let mut min_dim: Option<(i64, Vec<String>)> = None;
    for r in lists {
        let (id, list) = r?;
        let got: BTreeSet<Lat> = list.iter().map(|(w, _)| w.coords().clone()).collect();
        let want = tabulated_weights(&instances, id);
        let rs = RootSystem::new(id);
        for x in got.difference(&want) {
            let mut msg = format!("{id}: {} is small but not tabulated", fmt_lat(x));
            let w = DominantWeight::from_lat(&rs, x)?;
            if let Some(e) = corpus.missing_row_erratum(id, &w) {
                let _ = write!(msg, " [erratum: {}]", e.note);
            }
            failures.push(msg);
        }
        for x in want.difference(&got) {
            failures.push(format!("{id}: {} is tabulated but not small", fmt_lat(x)));
        }
        if id.is_sl2() {
            continue;
        }
        for (w, d) in &list {
            let tag = format!("{id} {w}");
            match &mut min_dim {
                Some((m, who)) if *d == *m => who.push(tag),
                Some((m, _)) if *d > *m => {}
                _ => min_dim = Some((*d, vec![tag])),
            }
        }
    }
    if let Some((d, who)) = min_dim {
        notes.push(format!("smallest nontrivial dimension {d} at {}", who.join(", ")));
        if d != 2 || who != ["BC2 f:0,2"] {
            failures.push(format!(
                "smallest nontrivial dimension {d} at {who:?}, expected 2 at BC2 f:0,2 only"
            ));
        }
    }
    Ok(CheckReport::new(
        4,
        "small representations",
        systems.len(),
        failures,
        notes,
    ))
}

fn fmt_lat(x: &Lat) -> String {
    let v: Vec<String> = x.iter().map(|c| c.to_string()).collect();
    format!("f:{}", v.join(","))
}

/// One corpus row with what the characters give for it.
#[derive(Clone, Debug)]
pub struct ComputedRow {
    pub instance: SquareInstance,
    pub sym: Decomposition,
    pub alt: Decomposition,
}

impl ComputedRow {
    pub fn computed(&self, kind: SquareKind) -> &Decomposition {
        match kind {
            SquareKind::Symmetric => &self.sym,
            SquareKind::Alternating => &self.alt,
        }
    }
}

/// Computes both squares for every row instance, one cache per system.
pub fn compute_square_rows(corpus: &Corpus, bound: usize) -> Result<Vec<ComputedRow>> {
    let instances = corpus.square_instances(bound)?;
    let mut by_system: BTreeMap<FamilyRank, Vec<SquareInstance>> = BTreeMap::new();
    for i in instances {
        by_system.entry(i.system).or_default().push(i);
    }
    let groups: Vec<(FamilyRank, Vec<SquareInstance>)> = by_system.into_iter().collect();
    let done: Vec<Result<Vec<ComputedRow>>> = groups
        .into_par_iter()
        .map(|(id, rows)| {
            let cache = IrrepCache::for_system(id);
            rows.into_iter()
                .map(|instance| {
                    let (sym, alt) = cache.square_table(&instance.weight)?;
                    Ok(ComputedRow { instance, sym, alt })
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for d in done {
        out.extend(d?);
    }
    out.sort_by(|a, b| {
        (a.instance.table, a.instance.system, &a.instance.weight).cmp(&(
            b.instance.table,
            b.instance.system,
            &b.instance.weight,
        ))
    });
    Ok(out)
}

/// Literal comparison of every row. Mismatches carrying a recorded erratum
/// are still failures; the note says whether the recorded correction matches.
pub fn check_square_tables(corpus: &Corpus, rows: &[ComputedRow]) -> Result<CheckReport> {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let mut checked = 0;
    for r in rows {
        let inst = &r.instance;
        for kind in SquareKind::BOTH {
            checked += 1;
            let want = inst.expected(kind);
            let got = r.computed(kind);
            if same_module(want, got) {
                continue;
            }
            let mut msg = format!(
                "table {} {} {} ({}) {kind}: expected {want}, computed {got}",
                inst.table, inst.system, inst.weight, inst.weight_expr
            );
            if let Some(e) = corpus.square_erratum(inst.system, &inst.weight, kind) {
                let rs = RootSystem::new(inst.system);
                let fixed = match &e.corrected {
                    Some(c) => same_module(&eval_module(&rs, c)?, got),
                    None => false,
                };
                let _ = write!(
                    msg,
                    " [erratum: {}; correction {}]",
                    e.note,
                    if fixed { "confirmed" } else { "NOT confirmed" }
                );
            }
            failures.push(msg);
        }
    }
    let flagged = failures.iter().filter(|f| f.contains("[erratum")).count();
    notes.push(format!(
        "{flagged} of {} mismatches carry a recorded erratum",
        failures.len()
    ));
    Ok(CheckReport::new(5, "square tables", checked, failures, notes))
}

pub fn check_identities(rows: &[ComputedRow], theorem: &TheoremReport) -> Result<CheckReport> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for r in rows {
        let rs = RootSystem::new(r.instance.system);
        for kind in SquareKind::BOTH {
            let (lhs, rhs) = index_identity_of(&rs, &r.instance.weight, r.computed(kind), kind)?;
            checked += 1;
            if lhs != rhs {
                failures.push(format!(
                    "{} {} {kind}: {lhs} != {rhs}",
                    r.instance.system, r.instance.weight
                ));
            }
        }
    }
    for h in theorem.hits.iter().filter(|h| h.kind == SquareKind::Symmetric) {
        checked += 1;
        if h.identity_holds != Some(true) {
            failures.push(format!("{} {}: (n-2δ)(λ,λ) = 2(λ,ρ) fails", h.system, h.weight));
        }
    }
    Ok(CheckReport::new(
        7,
        "index and Casimir identities",
        checked,
        failures,
        vec![],
    ))
}

pub fn check_theorem(report: &TheoremReport) -> CheckReport {
    let mut failures = Vec::new();
    for b in &report.buckets {
        for d in &b.missing {
            let mut s = format!("{}: expected {} not found", b.name, d.entry);
            if let Some(n) = &d.erratum {
                let _ = write!(s, " [erratum: {n}]");
            }
            failures.push(s);
        }
        for d in &b.unexpected {
            failures.push(format!("{}: computed {} not listed", b.name, d.entry));
        }
    }
    failures.extend(report.closed_form_mismatches.iter().cloned());
    let checked = report
        .buckets
        .iter()
        .map(|b| b.expected.len().max(b.computed.len()))
        .sum();
    CheckReport::new(6, "classification lists", checked, failures, vec![])
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyRun {
    pub reports: Vec<CheckReport>,
    pub classification: TheoremReport,
}

impl VerifyRun {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }
}

/// Runs checks 1–7.
pub fn run_all(corpus: &Corpus, bound: usize) -> Result<VerifyRun> {
    let rows = compute_square_rows(corpus, bound)?;
    let theorem = theorem_check(corpus, bound)?;
    let reports = vec![
        check_table1(corpus, bound)?,
        check_lemma1(bound)?,
        check_table2(corpus, bound)?,
        check_small_reps(corpus, bound)?,
        check_square_tables(corpus, &rows)?,
        check_theorem(&theorem),
        check_identities(&rows, &theorem)?,
    ];
    Ok(VerifyRun {
        reports,
        classification: theorem,
    })
}

pub fn render_text(reports: &[CheckReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let _ = writeln!(s, "{}", r.line());
        for f in &r.failures {
            let _ = writeln!(s, "    {f}");
        }
        for n in &r.notes {
            let _ = writeln!(s, "    note: {n}");
        }
    }
    s
}
