//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact (zero tolerance).

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use rlah_core::bijections::{verify_construction, ConstructionId};
use rlah_core::distributions::oracle_g;
use rlah_core::exec::{self, Execution};
use rlah_core::identities::{sweep_with, IdentityId, SweepSpec, Verifier};
use rlah_core::lah::g_eval;
use rlah_core::{Polynomial, Weights};

const DEPTH: u32 = 13;

type Cell = (u32, u32, u32);
type Criterion<'a> = (&'static str, Box<dyn Fn() -> (bool, String) + 'a>);

/// Reference values `oracle_g(n,k,r)` for `n + r <= 8`, `r <= 3`.
fn oracle_table() -> HashMap<Cell, Polynomial> {
    let cells: Vec<Cell> = (0..=3u32)
        .flat_map(|r| (0..=8 - r).flat_map(move |n| (0..=n).map(move |k| (n, k, r))))
        .collect();
    let values = exec::map(Execution::default(), cells.clone(), |(n, k, r)| {
        oracle_g(n, k, r).expect("within cap")
    });
    cells.into_iter().zip(values).collect()
}

fn criterion_1(v: &Verifier, oracle: &HashMap<Cell, Polynomial>) -> (bool, String) {
    let bad = oracle
        .iter()
        .filter(|((n, k, r), g)| v.cache().ab(*r).get(*n as i64, *k as i64) != *g)
        .count();
    (
        bad == 0,
        format!("{} cells, {bad} mismatches", oracle.len()),
    )
}

fn suite_2() -> SweepSpec {
    SweepSpec {
        ids: vec![
            IdentityId::Connection,
            IdentityId::Vertical,
            IdentityId::Horizontal,
            IdentityId::Shift,
            IdentityId::Convolution,
            IdentityId::Splitting,
            IdentityId::RowsumShift,
            IdentityId::RowsumSplit,
            IdentityId::RowsumDecomp,
            IdentityId::RowsumRec,
            IdentityId::MarkedRec,
        ],
        n: 0..=8,
        m: 0..=4,
        r: 0..=3,
        s: 0..=3,
        ..Default::default()
    }
}

fn suite_3() -> SweepSpec {
    SweepSpec {
        ids: vec![
            IdentityId::RlahI,
            IdentityId::RlahINeg,
            IdentityId::RlahII,
            IdentityId::RlahIII,
            IdentityId::RlahIV,
        ],
        n: 0..=8,
        r: 0..=4,
        s: 0..=4,
        ..Default::default()
    }
}

fn suite_4_orth() -> SweepSpec {
    SweepSpec {
        ids: vec![IdentityId::Orth, IdentityId::Triple],
        n: 0..=7,
        r: 0..=3,
        ..Default::default()
    }
}

fn suite_4_inversion() -> SweepSpec {
    SweepSpec {
        ids: vec![IdentityId::Inversion],
        n: 10..=10,
        r: 0..=3,
        seeds: vec![1, 2, 3],
        inversion_weights: vec![(1, 1), (2, 3), (0, 1)],
        ..Default::default()
    }
}

fn run_sweeps(v: &Verifier, specs: &[SweepSpec]) -> (bool, String) {
    let (mut ran, mut failed, mut skipped) = (0, 0, 0);
    for spec in specs {
        let res = sweep_with(v, spec, Execution::default());
        ran += res.reports.len();
        failed += res.failures().count();
        skipped += res.skipped.len();
    }
    (
        failed == 0 && ran > 0,
        format!("{ran} checks, {failed} failed, {skipped} skipped by precondition"),
    )
}

fn criterion_5() -> (bool, String) {
    let mut tuples = Vec::new();
    for id in ConstructionId::ALL {
        for r in 0..=2 {
            for s in 0..=2 {
                if id.applies(r, s) {
                    for n in 0..=5 {
                        for k in 0..=n {
                            tuples.push((id, n, k, r, s));
                        }
                    }
                }
            }
        }
    }
    let reports = exec::map(Execution::default(), tuples, |(id, n, k, r, s)| {
        verify_construction(id, n, k, r, s).expect("applicable tuple")
    });
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed).collect();
    let pairs: usize = reports.iter().map(|r| r.total_pairs).sum();
    for f in &failed {
        eprintln!("  failed: {f:?}");
    }
    (
        failed.is_empty(),
        format!(
            "{} reports, {pairs} configurations, {} failed",
            reports.len(),
            failed.len()
        ),
    )
}

fn criterion_6() -> (bool, String) {
    let bell = [1, 1, 2, 5, 15, 52, 203, 877];
    let a000262 = [1, 1, 3, 13, 73, 501, 4051];
    let row = |n: u32, a: i64, b: i64| -> BigInt { (0..=n).map(|k| g_eval(n, k, 0, a, b)).sum() };
    let bell_ok = bell
        .iter()
        .enumerate()
        .all(|(n, &v)| row(n as u32, 0, 1) == BigInt::from(v));
    let lah_ok = a000262
        .iter()
        .enumerate()
        .all(|(n, &v)| row(n as u32, 1, 1) == BigInt::from(v));
    let shift_ok =
        (0..=7u32).all(|n| (0..=n).all(|k| g_eval(n, k, 1, 1, 1) == g_eval(n + 1, k + 1, 0, 1, 1)));
    (
        bell_ok && lah_ok && shift_ok,
        format!("A000110 {bell_ok}, A000262 {lah_ok}, r=1 column shift {shift_ok}"),
    )
}

/// Is a +1 fault in this cell detected by criteria 1-4?
fn detected(v: &Verifier, oracle: &HashMap<Cell, Polynomial>, specs: &[SweepSpec]) -> bool {
    if !criterion_1(v, oracle).0 {
        return true;
    }
    specs
        .iter()
        .any(|spec| !sweep_with(v, spec, Execution::default()).all_passed())
}

fn criterion_7(v: &Verifier, oracle: &HashMap<Cell, Polynomial>) -> (bool, String) {
    let specs = [suite_2(), suite_3(), suite_4_orth(), suite_4_inversion()];
    let mut faults: Vec<(Weights, u32, u32, u32)> = Vec::new();
    for r in 0..=4 {
        for n in 0..=8 {
            for k in 0..=n {
                faults.push((Weights::ab(), r, n, k));
            }
        }
    }
    for w in [Weights::ba(), Weights::at(), Weights::neg_t_b()] {
        for r in 0..=3 {
            for n in 0..=7 {
                for k in 0..=n {
                    faults.push((w.clone(), r, n, k));
                }
            }
        }
    }
    let one = Polynomial::one();
    let mut missed = Vec::new();
    for (w, r, n, k) in &faults {
        v.cache().corrupt(w, *r, *n, *k, &one);
        if !detected(v, oracle, &specs) {
            missed.push((*r, *n, *k));
        }
        v.cache().corrupt(w, *r, *n, *k, &-one.clone());
    }
    for m in &missed {
        eprintln!("  undetected fault at (r, n, k) = {m:?}");
    }
    (
        missed.is_empty(),
        format!(
            "{} single-cell faults, {} undetected",
            faults.len(),
            missed.len()
        ),
    )
}

fn main() -> ExitCode {
    let v = Verifier::new(DEPTH);
    let oracle = oracle_table();
    let criteria: Vec<Criterion> = vec![
        (
            "1 oracle equivalence",
            Box::new(|| criterion_1(&v, &oracle)),
        ),
        (
            "2 identity suite",
            Box::new(|| run_sweeps(&v, &[suite_2()])),
        ),
        (
            "3 integer r-Lah identities",
            Box::new(|| run_sweeps(&v, &[suite_3()])),
        ),
        (
            "4 orthogonality and inversion",
            Box::new(|| run_sweeps(&v, &[suite_4_orth(), suite_4_inversion()])),
        ),
        ("5 constructions", Box::new(criterion_5)),
        ("6 specialization fixtures", Box::new(criterion_6)),
        ("7 fault injection", Box::new(|| criterion_7(&v, &oracle))),
    ];
    let mut all = true;
    for (name, run) in &criteria {
        let start = Instant::now();
        let (ok, detail) = run();
        all &= ok;
        println!(
            "criterion {name}: {} ({detail}; {:.1}s)",
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
