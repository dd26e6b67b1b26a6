//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any fails.
//!
//! `cargo test -p sphere-dissect --test acceptance`

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sphere_dissect::complex::global_faces;
use sphere_dissect::oracle::{
    enumerate_n0, random_certificate, random_complex, random_feasible_census, random_host, RandomBounds,
};
use sphere_dissect::surgery::{apply_f1a_at, apply_f1b_at};
use sphere_dissect::{
    check_feasibility, euler_sum, realize, step_delta, verify, Census, Certificate, Component, FeasibilityVerdict,
    InfeasibleReason, SurgeryStep,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

fn census(text: &str) -> Census {
    text.parse().expect("literal census")
}

/// Realizes, verifies and returns (n, V, E).
fn realize_checked(target: &Census) -> Result<(u64, usize, usize), String> {
    let cert = realize(target).map_err(|e| format!("realize({target}): {e}"))?;
    let report = verify(&cert);
    ensure(report.census.as_ref() == Some(target), || {
        format!("realize({target}) verifies as {:?}", report.census.as_ref().map(|c| c.to_string()))
    })?;
    Ok((report.n.unwrap(), cert.vertex_count(), cert.edge_count()))
}

fn criterion_1() -> Outcome {
    let limit = Duration::from_millis(100);
    let start = Instant::now();
    let (n, _, _) = realize_checked(&census("2,1"))?;
    within(start.elapsed(), limit, "realize(2,1)")?;
    ensure(n == 0, || format!("2,1 has n={n}"))?;
    for text in ["8", "8,1"] {
        let start = Instant::now();
        let got = realize_checked(&census(text))?;
        within(start.elapsed(), limit, text)?;
        ensure(got == (1, 6, 12), || format!("{text}: (n, V, E) = {got:?}"))?;
    }
    Ok("2,1 -> n=0; 8 and 8,1 -> n=1, V=6, E=12".into())
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    for n in 1..=50u64 {
        for a2 in [0, 1] {
            let target = Census::from_counts(&[2 + 6 * n, a2]).unwrap();
            let got = realize_checked(&target)?;
            let want = (n, 6 * n as usize, 12 * n as usize);
            ensure(got == want, || format!("{target}: (n, V, E) = {got:?}, want {want:?}"))?;
        }
    }
    within(start.elapsed(), Duration::from_secs(1), "inductive family")?;
    Ok(format!("100 base censuses, n = 1..=50, in {:?}", start.elapsed()))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0003);
    let mut seen = BTreeSet::new();
    for _ in 0..1000 {
        let target = random_feasible_census(&mut rng, 200);
        ensure(target.total() <= 200, || format!("{target} exceeds 200 faces"))?;
        let cert = realize(&target).map_err(|e| format!("realize({target}): {e}"))?;
        // byte-exact: serialize the recomputed census and compare text
        let text = Certificate::from_json(&cert.to_json())
            .map_err(|e| e.to_string())
            .map(|c| verify(&c).census.map(|c| c.to_string()))?;
        ensure(text.as_deref() == Some(target.to_string().as_str()), || {
            format!("{target} round-trips as {text:?}")
        })?;
        seen.insert(target);
    }
    within(start.elapsed(), Duration::from_secs(60), "round-trip corpus")?;
    Ok(format!("1000 censuses ({} distinct) in {:?}", seen.len(), start.elapsed()))
}

/// Dense censuses over `1..=max_k` with at most `max_faces` pieces.
fn all_censuses(max_faces: u64, max_k: usize) -> Vec<Census> {
    let mut out = Vec::new();
    let mut counts = vec![0u64; max_k];
    loop {
        out.push(Census::from_counts(&counts).unwrap());
        // odometer over counts with bounded total
        let mut i = 0;
        loop {
            if i == max_k {
                return out;
            }
            counts[i] += 1;
            if counts.iter().sum::<u64>() <= max_faces {
                break;
            }
            counts[i] = 0;
            i += 1;
        }
    }
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let p = check_feasibility(&census("2"));
    ensure(
        p == FeasibilityVerdict::Infeasible {
            reason: InfeasibleReason::PViolation,
        },
        || format!("check(2) = {p:?}"),
    )?;
    let e = check_feasibility(&census("3"));
    ensure(
        e == FeasibilityVerdict::Infeasible {
            reason: InfeasibleReason::EViolation,
        },
        || format!("check(3) = {e:?}"),
    )?;
    let all = all_censuses(9, 5);
    let mut feasible = 0;
    for c in &all {
        // feasibility by the restrictions, evaluated directly
        let s = euler_sum(c);
        let expect = s >= 2 && (s - 2) % 6 == 0 && (s > 2 || c.total() % 2 == 1);
        let ok = match realize(c) {
            Ok(cert) => verify(&cert).census.as_ref() == Some(c),
            Err(_) => false,
        };
        ensure(ok == expect, || format!("{c}: realize ok={ok}, restrictions say {expect}"))?;
        feasible += expect as usize;
    }
    within(start.elapsed(), Duration::from_secs(10), "negative sweep")?;
    Ok(format!("check(2)=P, check(3)=E; {feasible} of {} censuses realized", all.len()))
}

/// Census recomputed from raw certificate data: phi orbits per map, two
/// sides per circle, one merge per attachment.
fn independent_census(cert: &Certificate) -> Census {
    let mut offsets = Vec::new();
    let mut total = 0;
    for comp in &cert.components {
        offsets.push(total);
        total += match comp {
            Component::Map(map) => {
                let mut seen = vec![false; map.dart_count()];
                let mut faces = 0;
                for start in 0..map.dart_count() {
                    if !seen[start] {
                        faces += 1;
                        let mut d = start;
                        while !seen[d] {
                            seen[d] = true;
                            d = map.sigma()[map.alpha()[d]];
                        }
                    }
                }
                faces
            }
            Component::Circle => 2,
        };
    }
    let mut parent: Vec<usize> = (0..total).collect();
    fn root(parent: &[usize], mut x: usize) -> usize {
        while parent[x] != x {
            x = parent[x];
        }
        x
    }
    for att in &cert.attachments {
        let a = root(&parent, offsets[att.child] + att.outward_face);
        let b = root(&parent, offsets[att.parent] + att.parent_face);
        parent[a] = b;
    }
    let mut sizes = std::collections::BTreeMap::new();
    for x in 0..total {
        *sizes.entry(root(&parent, x)).or_insert(0usize) += 1;
    }
    Census::from_pairs(sizes.values().map(|&k| (k, 1))).unwrap()
}

fn criterion_5() -> Outcome {
    let bounds = RandomBounds { max_faces: 80, max_n: 5 };
    for seed in 0..1000u64 {
        let cert = if seed % 2 == 0 {
            random_complex(seed, 8)
        } else {
            random_certificate(seed, bounds)
        };
        let report = verify(&cert);
        ensure(report.passed(), || format!("seed {seed}: {report}"))?;
        let recount = independent_census(&cert);
        ensure(report.census.as_ref() == Some(&recount), || format!("seed {seed}: verifier and recount differ"))?;
        let lhs = euler_sum(&recount);
        let rhs = cert.vertex_count() as i128 + 2;
        ensure(lhs == rhs, || format!("seed {seed}: sum (2-k) a_k = {lhs}, V + 2 = {rhs}"))?;
    }
    Ok("1000 certificates satisfy sum (2-k) a_k = V + 2".into())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let enumerated = enumerate_n0(8).map_err(|e| e.to_string())?;
    // n = 0 forces k <= faces - 1 <= 8
    let expected: BTreeSet<Census> = all_censuses(9, 9)
        .into_iter()
        .filter(|c| check_feasibility(c) == FeasibilityVerdict::Feasible { n: 0 })
        .collect();
    ensure(enumerated == expected, || {
        format!(
            "only enumerated: {:?}; only feasible: {:?}",
            enumerated.difference(&expected).map(|c| c.to_string()).collect::<Vec<_>>(),
            expected.difference(&enumerated).map(|c| c.to_string()).collect::<Vec<_>>()
        )
    })?;
    within(start.elapsed(), Duration::from_secs(5), "n=0 oracle")?;
    Ok(format!("{} censuses on both sides", enumerated.len()))
}

fn criterion_7() -> Outcome {
    let bounds = RandomBounds { max_faces: 60, max_n: 4 };
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0007);
    let (mut f1a, mut f1b) = (0, 0);
    let mut seed = 0u64;
    while f1a < 200 || f1b < 200 {
        seed += 1;
        let cert = random_certificate(seed, bounds);
        let before = verify(&cert).census.ok_or("random certificate failed to verify")?;
        let (host, k) = random_host(&cert, &mut rng);
        let step = if k == 1 && f1b < 200 && (f1a >= 200 || rng.gen_bool(0.5)) {
            SurgeryStep::F1b
        } else if f1a < 200 {
            SurgeryStep::F1a { m: k + 2 }
        } else {
            continue;
        };
        let after = match step {
            SurgeryStep::F1a { m } => apply_f1a_at(&cert, m, host),
            SurgeryStep::F1b => apply_f1b_at(&cert, host),
        }
        .map_err(|e| e.to_string())?;
        let got = verify(&after).census.ok_or("surgery output failed to verify")?;
        ensure(got.difference(&before) == step_delta(step), || {
            format!("{step:?} at {host:?}: {before} -> {got}")
        })?;
        ensure(after.vertex_count() == cert.vertex_count(), || format!("{step:?} changed V"))?;
        ensure(global_faces(&after).is_ok(), || "structure".into())?;
        match step {
            SurgeryStep::F1a { .. } => f1a += 1,
            SurgeryStep::F1b => f1b += 1,
        }
    }
    Ok(format!("{f1a} F1a and {f1b} F1b hosts match step_delta, V unchanged"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 base cases", criterion_1),
        ("2 inductive family n=1..50", criterion_2),
        ("3 general round-trip", criterion_3),
        ("4 negative gate", criterion_4),
        ("5 emergent Euler identity", criterion_5),
        ("6 n=0 oracle equivalence", criterion_6),
        ("7 surgery delta conformance", criterion_7),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
