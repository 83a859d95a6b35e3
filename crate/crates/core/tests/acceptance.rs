//! Acceptance criteria. Each test prints one `[PASS]` or `[FAIL]` line and
//! then asserts; run with `--nocapture` to see the lines.

use std::time::{Duration, Instant};

use gaussqt::canonical::{from_canonical, CanonicalParams};
use gaussqt::entanglement::{ppt_nu_minus, simon_inseparable};
use gaussqt::resources::{bs_resource, r_ent_threshold, r_qt_threshold, tmst, BsSpec, TmstSpec};
use gaussqt::sweep::{run_sweep, Axis, Family, OutputFormat, RegionGrid, SweepConfig};
use gaussqt::teleport::{classify, detm_canonical};
use gaussqt::{fidelity, fidelity_by_quadrature, CovMat, QuadratureSpec, StateSampler};

fn report(id: &str, pass: bool, detail: String) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] {id} {detail}");
    assert!(pass, "{id} failed: {detail}");
}

fn bisect(mut lo: f64, mut hi: f64, inside: impl Fn(f64) -> bool) -> f64 {
    assert!(!inside(lo) && inside(hi));
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if inside(mid) {
            hi = mid
        } else {
            lo = mid
        }
    }
    0.5 * (lo + hi)
}

fn tmst_state(r: f64, k1: f64, k2: f64) -> CovMat {
    tmst(&TmstSpec::new(r, k1, k2).unwrap())
}

#[test]
fn ac01_closed_form_matches_quadrature() {
    let start = Instant::now();
    let mut states: Vec<(String, CovMat)> = vec![("vacuum".into(), CovMat::vacuum())];
    for r in [0.1, 0.5, 1.0] {
        states.push((format!("tmsv(r={r})"), tmst_state(r, 0.5, 0.5)));
    }
    states.push(("tmst(0.48,1.5,0.75)".into(), tmst_state(0.48, 1.5, 0.75)));
    for t in [0.25, 0.5, 0.75] {
        states.push((format!("bs(0.5,0.5,{t})"), bs_resource(&BsSpec::new(0.5, 0.5, t).unwrap())));
    }
    let spec = QuadratureSpec::default();
    let mut worst = 0.0f64;
    let mut pass = true;
    for (name, v) in &states {
        let closed = fidelity(v).unwrap();
        let quad = fidelity_by_quadrature(v, &spec).unwrap().value;
        let diff = (closed - quad).abs();
        worst = worst.max(diff);
        if diff >= 1e-5 {
            pass = false;
            println!("  {name}: closed {closed} quadrature {quad}");
        }
    }
    let vac = fidelity_by_quadrature(&CovMat::vacuum(), &spec).unwrap().value;
    let vac_ok = (vac - 0.5).abs() < 1e-6 && (fidelity(&CovMat::vacuum()).unwrap() - 0.5).abs() < 1e-6;
    let elapsed = start.elapsed();
    report(
        "AC1",
        pass && vac_ok && elapsed < Duration::from_secs(30),
        format!("closed form vs quadrature: max diff {worst:.3e}, vacuum {vac:.12}, {elapsed:.2?}"),
    );
}

#[test]
fn ac02_epr_correlation_is_sufficient() {
    let start = Instant::now();
    let mut sampler = StateSampler::new(2);
    let mut violations = 0;
    let mut epr = 0;
    for _ in 0..100_000 {
        let rep = classify(&sampler.physical()).0.unwrap();
        if rep.delta_epr < 2.0 {
            epr += 1;
            if rep.det_m >= 4.0 {
                violations += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        "AC2",
        violations == 0 && elapsed < Duration::from_secs(10),
        format!("EPR correlation implies QT: {violations} violations among {epr} EPR states, {elapsed:.2?}"),
    );
}

#[test]
fn ac03_restricted_equivalence() {
    let mut sampler = StateSampler::new(3);
    let (mut n, mut exceptions, mut qt) = (0, 0, 0);
    while n < 100_000 {
        let eta = sampler.uniform(0.5, 5.0);
        let zeta = sampler.uniform(0.5, 5.0);
        let c = sampler.uniform(0.0, eta.min(zeta));
        let p = CanonicalParams::new(eta, zeta, c, c);
        if !p.is_physical() {
            continue;
        }
        n += 1;
        let rep = classify(&from_canonical(&p)).0.unwrap();
        qt += rep.qt as usize;
        if rep.qt != (rep.delta_epr < 2.0) {
            exceptions += 1;
        }
    }
    report(
        "AC3",
        exceptions == 0,
        format!("c1 = c2 gives qt <=> EPR: {exceptions} exceptions over {n} states ({qt} qt)"),
    );
}

fn random_k_pairs(seed: u64) -> Vec<(f64, f64)> {
    let mut sampler = StateSampler::new(seed);
    (0..100).map(|_| (sampler.uniform(0.5, 3.0), sampler.uniform(0.5, 3.0))).collect()
}

#[test]
fn ac04_entanglement_threshold_matches_ppt_onset() {
    let mut worst = 0.0f64;
    for (k1, k2) in random_k_pairs(4) {
        let onset = bisect(0.0, 3.0, |r| ppt_nu_minus(&tmst_state(r, k1, k2)) < 0.5);
        worst = worst.max((onset - r_ent_threshold(k1, k2).unwrap()).abs());
    }
    report("AC4", worst < 1e-6, format!("r_ent vs PPT bisection: max diff {worst:.3e} over 100 pairs"));
}

#[test]
fn ac05_teleportation_threshold_matches_det_m_onset() {
    let mut worst = 0.0f64;
    let mut ordered = true;
    for (k1, k2) in random_k_pairs(4) {
        let onset = bisect(0.0, 3.0, |r| classify(&tmst_state(r, k1, k2)).0.unwrap().det_m < 4.0);
        let qt = r_qt_threshold(k1, k2).unwrap();
        worst = worst.max((onset - qt).abs());
        ordered &= qt >= r_ent_threshold(k1, k2).unwrap();
    }
    let mut diagonal = 0.0f64;
    for i in 0..=250 {
        let k = 0.5 + 0.01 * i as f64;
        diagonal = diagonal.max((r_qt_threshold(k, k).unwrap() - r_ent_threshold(k, k).unwrap()).abs());
    }
    report(
        "AC5",
        worst < 1e-6 && ordered && diagonal < 1e-9,
        format!("r_qt vs det M = 4 bisection: max diff {worst:.3e}, r_qt >= r_ent {ordered}, diagonal gap {diagonal:.3e}"),
    );
}

fn sweep(family: Family, r: f64, a1: Axis, a2: Axis) -> RegionGrid {
    let config = SweepConfig::new(family, r, a1, a2, None, OutputFormat::Csv).unwrap();
    run_sweep(&config).unwrap()
}

#[test]
fn ac06_tmst_region_topology() {
    let n = 201;
    let grid = sweep(
        Family::Tmst,
        0.48,
        Axis::new("k1", 0.5, 2.5, n).unwrap(),
        Axis::new("k2", 0.5, 2.5, n).unwrap(),
    );
    let ent_only = grid.rows.iter().filter(|r| r.entangled && !r.qt).count();
    let qt_outside = grid.rows.iter().filter(|r| r.qt && !r.entangled).count();
    let diagonal_mismatch = (0..n)
        .filter(|&i| {
            let row = &grid.rows[i * n + i];
            row.entangled != row.qt
        })
        .count();
    let qt_epr_mismatch = grid.rows.iter().filter(|r| r.qt != r.epr).count();

    // For each k1 row, qt holds for k2 below the boundary and fails above.
    let target = 0.96f64.exp();
    let step = 2.0 / (n - 1) as f64;
    let mut bracket_failures = 0;
    let mut brackets = 0;
    for i in 0..n {
        let row = &grid.rows[i * n..(i + 1) * n];
        let k1 = row[0].axis1;
        let flips: Vec<usize> = (1..n).filter(|&j| row[j].qt != row[j - 1].qt).collect();
        let expected = target - k1;
        if expected <= 0.5 || expected >= 2.5 {
            if !flips.is_empty() {
                bracket_failures += 1;
            }
            continue;
        }
        brackets += 1;
        match flips.as_slice() {
            [j] if row[*j - 1].qt
                && row[*j - 1].axis2 - 1e-12 <= expected
                && expected <= row[*j].axis2 + 1e-12
                && row[*j].axis2 - row[*j - 1].axis2 <= step + 1e-12 => {}
            _ => bracket_failures += 1,
        }
    }
    report(
        "AC6",
        ent_only >= 1
            && qt_outside == 0
            && diagonal_mismatch == 0
            && qt_epr_mismatch == 0
            && bracket_failures == 0,
        format!(
            "TMST r=0.48: {ent_only} entangled-only cells, {qt_outside} qt outside entangled, \
             {diagonal_mismatch} diagonal mismatches, {bracket_failures}/{brackets} boundary bracket failures"
        ),
    );
}

#[test]
fn ac07_bs_region_topology() {
    let n = 151;
    let grid =
        sweep(Family::Bs, 0.5, Axis::new("k", 0.5, 2.0, n).unwrap(), Axis::new("T", 0.05, 0.95, n).unwrap());
    let epr_not_qt = grid.rows.iter().filter(|r| r.epr && !r.qt).count();
    let qt_not_epr = grid.rows.iter().filter(|r| r.qt && !r.epr).count();
    let t_axis = Axis::new("T", 0.05, 0.95, n).unwrap();
    let j = (0..n)
        .min_by(|&a, &b| (t_axis.value(a) - 0.5).abs().total_cmp(&(t_axis.value(b) - 0.5).abs()))
        .unwrap();
    let column: Vec<_> = (0..n).map(|i| &grid.rows[i * n + j]).collect();
    let column_mismatch = column.iter().filter(|r| r.entangled != r.epr || r.epr != r.qt).count();
    let k_half = column[0];
    let k_half_ok = k_half.entangled == k_half.epr && k_half.epr == k_half.qt;
    report(
        "AC7",
        epr_not_qt == 0 && qt_not_epr >= 1 && column_mismatch == 0 && k_half_ok,
        format!(
            "BS r=0.5: {epr_not_qt} epr-without-qt cells, {qt_not_epr} qt-without-epr cells, \
             {column_mismatch} flag mismatches in column T={:.3}",
            t_axis.value(j)
        ),
    );
}

#[test]
fn ac08_simon_matches_ppt() {
    let mut sampler = StateSampler::new(8);
    let (mut disagreements, mut near, mut entangled) = (0, 0, 0);
    for _ in 0..100_000 {
        let v = sampler.physical();
        let verdict = simon_inseparable(&v).unwrap();
        entangled += verdict.ppt_entangled as usize;
        let near_boundary =
            (verdict.simon_lhs - 1.0).abs() < 1e-10 || (verdict.ppt_nu_minus - 0.5).abs() < 1e-10;
        if verdict.simon_entangled != verdict.ppt_entangled {
            if near_boundary {
                near += 1
            } else {
                disagreements += 1
            }
        }
    }
    report(
        "AC8",
        disagreements == 0,
        format!("Simon vs PPT: {disagreements} off-boundary disagreements, {near} near boundary, {entangled} entangled"),
    );
}

#[test]
fn ac09_separable_states_bounded_by_classical_fidelity() {
    let mut sampler = StateSampler::new(9);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..100_000 {
        worst = worst.max(fidelity(&sampler.separable()).unwrap());
    }
    report("AC9", worst <= 0.5 + 1e-10, format!("separable fidelity max {worst:.15}"));
}

#[test]
fn ac10_fidelity_increases_with_epr_degree() {
    let eps: Vec<f64> = (1..=20).map(|i| 0.05 * i as f64).collect();
    // Standard form η = ζ = 1, c₁ = c₂ = (1 + ε)/2, so Δ_EPR = 2(1 − ε).
    // ε = 1 is the infinite-squeezing limit and is not a physical state, so
    // this sweep is over the closed form itself.
    let canonical: Vec<f64> = eps
        .iter()
        .map(|&e| {
            let c = 0.5 * (1.0 + e);
            let p = CanonicalParams::new(1.0, 1.0, c, c);
            assert!((2.0 * p.epr_gap() - 2.0 * (1.0 - e)).abs() < 1e-12);
            1.0 / detm_canonical(&p).sqrt()
        })
        .collect();
    // Physical states along the same ε values: TMSV with e^{−2r} = 1 − ε.
    let physical: Vec<f64> = eps
        .iter()
        .filter(|&&e| e < 1.0)
        .map(|&e| {
            let v = tmst_state(-0.5 * (1.0 - e).ln(), 0.5, 0.5);
            let rep = classify(&v).0.unwrap();
            assert!((rep.f_epr - 2.0 * e).abs() < 1e-9);
            rep.fidelity
        })
        .collect();
    let violations =
        [&canonical, &physical].iter().map(|f| f.windows(2).filter(|w| w[1] <= w[0]).count()).sum::<usize>();
    report(
        "AC10",
        violations == 0,
        format!(
            "fidelity monotone in epsilon: {violations} violations over {} closed-form and {} physical points",
            canonical.len(),
            physical.len()
        ),
    );
}
