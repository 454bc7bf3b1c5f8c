//! Independent cross-checks of the character machinery and of the recorded
//! corrections to the golden corpus.

use std::collections::BTreeSet;
use std::sync::Arc;

use liesquare::classify::{alternating_candidates, square_status, Status};
use liesquare::corpus::{eval_module, same_module, Corpus};
use liesquare::repdims::{dim_irrep, enumerate_small_reps};
use liesquare::{DominantWeight, IrrepCache, RootSystem, SquareKind, Weight, Q};

fn sys(s: &str) -> Arc<RootSystem> {
    Arc::new(RootSystem::new(s.parse().unwrap()))
}

/// Dominant weights with coordinates in `0..=hi`, last coordinate doubled for `BC_m`.
fn box_weights(rs: &RootSystem, hi: i64) -> Vec<DominantWeight> {
    let n = rs.rank();
    let mut out = Vec::new();
    let mut c = vec![0i64; n];
    loop {
        let mut coords = c.clone();
        if rs.id().is_super() {
            coords[n - 1] *= 2;
        }
        out.push(DominantWeight::new(rs, &coords).unwrap());
        let mut i = 0;
        while i < n && c[i] == hi {
            c[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        c[i] += 1;
    }
    out
}

#[test]
fn recorded_corrections_match_computation() {
    let corpus = Corpus::embedded().unwrap();
    let mut seen = 0;
    for e in corpus.errata.iter().filter(|e| e.kind.is_some()) {
        let rs = Arc::new(RootSystem::new(e.system));
        let lam = liesquare::corpus::eval_weight(&rs, &e.weight).unwrap();
        let kind = e.kind.unwrap();
        let got = IrrepCache::new(rs.clone()).square(&lam, kind).unwrap();
        let fixed = eval_module(&rs, e.corrected.as_deref().unwrap()).unwrap();
        assert!(
            same_module(&got, &fixed),
            "{} {} {kind}: computed {got}",
            e.system,
            e.weight
        );
        seen += 1;
    }
    assert_eq!(seen, 14);
}

/// Each literal row that was corrected fails the superdimension count
/// `n(n ± 1)/2` or the invariant count, so it cannot be right as printed.
#[test]
fn literal_rows_behind_errata_are_inconsistent() {
    let corpus = Corpus::embedded().unwrap();
    let instances = corpus.square_instances(8).unwrap();
    for e in corpus.errata.iter().filter(|e| e.kind.is_some()) {
        let rs = Arc::new(RootSystem::new(e.system));
        let lam = liesquare::corpus::eval_weight(&rs, &e.weight).unwrap();
        let kind = e.kind.unwrap();
        let inst = instances
            .iter()
            .find(|i| i.system == rs.id() && i.weight == lam)
            .unwrap_or_else(|| panic!("no row for {} {}", e.system, e.weight));
        let literal = inst.expected(kind);
        let n = dim_irrep(&rs, &lam).unwrap();
        let want = match kind {
            SquareKind::Symmetric => n * (n + 1) / 2,
            SquareKind::Alternating => n * (n - 1) / 2,
        };
        let count_ok = literal.superdim(&rs).unwrap() == want.into();
        let computed = IrrepCache::new(rs.clone()).square(&lam, kind).unwrap();
        let invariants_ok = literal.trivial_count == computed.trivial_count;
        let labels_ok = literal
            .as_multiset()
            .keys()
            .all(|l| computed.as_multiset().contains_key(l));
        assert!(
            !(count_ok && invariants_ok && labels_ok),
            "{} {} {kind}: literal row is consistent",
            e.system,
            e.weight
        );
    }
}

/// BC4 μ4: superdimension and ordinary dimension (through `B_4`, whose
/// characters agree with `BC_4` once parity is forgotten) both rule out the
/// literal row and confirm the computed one.
#[test]
fn bc4_mu4_literal_row_fails_both_counts() {
    let bc4 = sys("BC4");
    let b4 = sys("B4");
    let corpus = Corpus::embedded().unwrap();
    let lam = DominantWeight::mu(&bc4, 4).unwrap();
    let inst = corpus
        .square_instances(8)
        .unwrap()
        .into_iter()
        .find(|i| i.system == bc4.id() && i.weight == lam)
        .unwrap();
    let ordinary = |d: &liesquare::Decomposition| -> i64 {
        let mut acc = d.trivial_count as i64;
        for s in &d.summands {
            let w = DominantWeight::new(
                &b4,
                &s.label.highest.coords().iter().map(|&c| c as i64).collect::<Vec<_>>(),
            )
            .unwrap();
            acc += dim_irrep(&b4, &w).unwrap() * s.mult as i64;
        }
        acc
    };
    let v = IrrepCache::new(bc4.clone()).irrep_character(&lam).unwrap();
    let big_n = v.dim() as i64;
    // super-symmetric square: S²(V_0) ⊕ V_0 ⊗ V_1 ⊕ Λ²(V_1)
    let (e, o) = v.mass();
    let (e, o) = (e as i64, o as i64);
    let want = e * (e + 1) / 2 + e * o + o * (o - 1) / 2;
    assert_eq!(big_n, e + o);
    let literal = inst.expected(SquareKind::Symmetric);
    let n = dim_irrep(&bc4, &lam).unwrap();
    assert_ne!(literal.superdim(&bc4).unwrap(), (n * (n + 1) / 2).into());
    assert_ne!(ordinary(literal), want);
    let computed = IrrepCache::new(bc4.clone())
        .square(&lam, SquareKind::Symmetric)
        .unwrap();
    assert_eq!(computed.superdim(&bc4).unwrap(), (n * (n + 1) / 2).into());
    assert_eq!(ordinary(&computed), want);
    assert_eq!(want, 7945);
}

#[test]
fn missing_small_rows_have_small_superdimension() {
    let corpus = Corpus::embedded().unwrap();
    let missing: Vec<_> = corpus.errata.iter().filter(|e| e.missing_row).collect();
    assert_eq!(missing.len(), 5);
    for e in missing {
        let rs = Arc::new(RootSystem::new(e.system));
        let lam = liesquare::corpus::eval_weight(&rs, &e.weight).unwrap();
        let d = dim_irrep(&rs, &lam).unwrap();
        assert!((0..=rs.dim_g()).contains(&d), "{} {}: {d}", e.system, e.weight);
        assert!(enumerate_small_reps(&rs).unwrap().iter().any(|(w, _)| *w == lam));
    }
    // superdimension rs.dim_g() is reached away from the adjoint
    let bc2 = sys("BC2");
    assert_eq!(
        dim_irrep(&bc2, &DominantWeight::new(&bc2, &[0, 10]).unwrap()).unwrap(),
        bc2.dim_g()
    );
}

/// Forgetting parity, `V_λ` of `BC_m` has the character of `V_λ` of `B_m`;
/// the parity of a weight is that of `Σλ_i − Σw_i`.
#[test]
fn bc_characters_agree_with_b_and_parity() {
    for m in 2..=3usize {
        let bc = sys(&format!("BC{m}"));
        let b = sys(&format!("B{m}"));
        let bc_cache = IrrepCache::new(bc.clone());
        let b_cache = IrrepCache::new(b.clone());
        for lam in box_weights(&bc, 2) {
            let ch = bc_cache.irrep_character(&lam).unwrap();
            let lam_b = DominantWeight::new(&b, &lam.coords().iter().map(|&c| c as i64).collect::<Vec<_>>()).unwrap();
            let chb = b_cache.irrep_character(&lam_b).unwrap();
            let top = bc.eps_sum_lat(lam.coords());
            let full = ch.expand();
            assert_eq!(full.len(), chb.expand().len(), "BC{m} {lam}");
            for (x, mult) in full {
                let eps: Weight = bc.lat_to_weight(&x);
                let xb = b.weight_to_lat(&eps).unwrap();
                assert_eq!(mult.total(), chb.mult_at(&xb).total(), "BC{m} {lam} at {eps}");
                let diff = top - bc.eps_sum_lat(&x);
                assert!(diff.is_integer());
                let odd = diff.to_integer() % 2 != 0;
                assert_eq!(if odd { mult.even } else { mult.odd }, 0, "BC{m} {lam} at {eps}");
            }
        }
    }
}

#[test]
fn induction_agrees_with_freudenthal() {
    for id in ["A3", "B3", "C3", "D4", "G2"] {
        let rs = sys(id);
        let f = IrrepCache::new(rs.clone());
        let i = IrrepCache::induced(rs.clone());
        for lam in box_weights(&rs, 2) {
            if dim_irrep(&rs, &lam).unwrap() > 5000 {
                continue;
            }
            assert_eq!(
                f.irrep_character(&lam).unwrap(),
                i.irrep_character(&lam).unwrap(),
                "{id} {lam}"
            );
        }
    }
}

/// Brute force over a box of weights: symmetric hits are small and
/// alternating hits are among the alternating candidates.
#[test]
fn candidate_sufficiency() {
    for id in ["A2", "A3", "B2", "B3", "C3", "D4", "G2", "BC2", "BC3"] {
        let rs = sys(id);
        let cache = IrrepCache::new(rs.clone());
        let small: BTreeSet<DominantWeight> = enumerate_small_reps(&rs).unwrap().into_iter().map(|(w, _)| w).collect();
        let alt: BTreeSet<DominantWeight> = alternating_candidates(&rs).unwrap().into_iter().collect();
        let hi = if rs.rank() <= 2 { 3 } else { 2 };
        for lam in box_weights(&rs, hi) {
            if lam.is_zero() || dim_irrep(&rs, &lam).unwrap().abs() > 4 * rs.dim_g() {
                continue;
            }
            let (s, a) = cache.square_table(&lam).unwrap();
            if square_status(&s, SquareKind::Symmetric).status != Status::Neither {
                assert!(small.contains(&lam), "{id} {lam}: symmetric hit outside the small list");
            }
            if square_status(&a, SquareKind::Alternating).status != Status::Neither {
                assert!(alt.contains(&lam), "{id} {lam}: alternating hit outside the candidates");
            }
        }
    }
}

#[test]
fn exact_rationals_in_thresholds() {
    // r_i are exact: E7 r_7 = 4/3 is the only one above 1
    let e7 = sys("E7");
    let above: Vec<usize> = (1..=7)
        .filter(|&i| liesquare::repdims::r_threshold(&e7, i).unwrap() > Q::from_integer(1))
        .collect();
    assert_eq!(above, vec![7]);
}
