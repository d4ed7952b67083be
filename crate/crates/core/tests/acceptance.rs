//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hurwitz_sunits::fixtures::{fixture, fixture_names};
use hurwitz_sunits::norms::{elements_of_norm, prime_transversal, unit_transversal};
use hurwitz_sunits::presentation::Provenance;
use hurwitz_sunits::{
    abelianization, build_main, build_oracle, congruence_image, find_splitting, neighbor_label, simplify,
    verify_presentation, SPrimeSet, SimplifyBudget,
};

const BUILDER_SETS: &[&[u64]] = &[&[3], &[5], &[3, 5], &[3, 7], &[5, 7], &[3, 11], &[3, 5, 7]];

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set(primes: &[u64]) -> SPrimeSet {
    SPrimeSet::new(primes.iter().copied()).expect("valid prime set")
}

fn units() -> Check {
    let n = elements_of_norm(1).len();
    let classes = unit_transversal().len();
    ensure(n == 24 && classes == 12, || format!("{n} units, {classes} classes"))?;
    Ok("24 units, 12 classes".into())
}

fn jacobi() -> Check {
    for p in [3u64, 5, 7, 11, 13, 37, 43] {
        let n = elements_of_norm(p).len() as u64;
        ensure(n == 24 * (p + 1), || format!("norm {p}: {n} elements"))?;
    }
    Ok("24(p+1) for p in {3,5,7,11,13,37,43}".into())
}

fn neighbor_bijection() -> Check {
    for p in [3u64, 5, 7, 11, 13] {
        let t = prime_transversal(p).map_err(|e| e.to_string())?;
        ensure(t.len() as u64 == p + 1, || format!("p = {p}: {} members", t.len()))?;
        let s = find_splitting(p, 1).map_err(|e| e.to_string())?;
        let mut lines = BTreeSet::new();
        for c in &t.members {
            let l = neighbor_label(c, &s).map_err(|e| e.to_string())?;
            let [x, y] = l.line;
            ensure((x == 1 && y < p) || (x == 0 && y == 1), || format!("p = {p}: bad line {:?}", l.line))?;
            lines.insert(l.line);
        }
        ensure(lines.len() as u64 == p + 1, || format!("p = {p}: {} distinct labels", lines.len()))?;
    }
    Ok("labels cover P^1(F_p) for p in {3,5,7,11,13}".into())
}

fn builder_soundness() -> Check {
    for primes in BUILDER_SETS {
        let p = build_main(&set(primes)).map_err(|e| e.to_string())?;
        let report = verify_presentation(&p);
        ensure(report.passed(), || format!("{primes:?}: failing {:?}", report.failing_relators()))?;
        let Provenance::Main(c) = &p.provenance else {
            return Err(format!("{primes:?}: unexpected provenance"));
        };
        let t2: usize = primes.iter().map(|&p| p as usize + 1).sum();
        let mut t3 = 0;
        for (i, &q) in primes.iter().enumerate() {
            for &r in &primes[i + 1..] {
                t3 += (q as usize + 1) * (r as usize + 1);
            }
        }
        let expected = (121, t2, t3, 11 * t2);
        let got = (c.type1, c.type2, c.type3, c.type4);
        ensure(got == expected, || format!("{primes:?}: counts {got:?}, expected {expected:?}"))?;
    }
    Ok(format!("{} sets sound with closed-form counts", BUILDER_SETS.len()))
}

fn fixtures_verify() -> Check {
    for name in fixture_names() {
        let p = fixture(name).map_err(|e| e.to_string())?;
        let report = verify_presentation(&p);
        ensure(report.passed(), || {
            format!("{name}: witnesses {:?}, relators {:?}", report.non_sunit_witnesses, report.failing_relators())
        })?;
    }
    Ok("six tabulated presentations verify".into())
}

fn oracle_equivalence() -> Check {
    for primes in [&[3u64][..], &[3, 5]] {
        let s = set(primes);
        let main = abelianization(&build_main(&s).map_err(|e| e.to_string())?);
        let oracle = abelianization(&build_oracle(&s).map_err(|e| e.to_string())?);
        ensure(main == oracle, || format!("{primes:?}: main {main}, oracle {oracle}"))?;
    }
    let main = build_main(&set(&[3, 5])).map_err(|e| e.to_string())?;
    let ab = abelianization(&main);
    let fx = abelianization(&fixture("s3_5").map_err(|e| e.to_string())?);
    let simp = abelianization(&simplify(&main, SimplifyBudget::default()));
    ensure(ab == fx && ab == simp, || format!("main {ab}, fixture {fx}, simplified {simp}"))?;
    Ok(format!("{{3,5}}: {ab}"))
}

fn congruence_mod_seven() -> Check {
    let p = fixture("s3_5").map_err(|e| e.to_string())?;
    let r = congruence_image(&p, 7, 1, 1_000_000).map_err(|e| e.to_string())?;
    ensure(r.all_relators_scalar(), || "non-scalar relator image".into())?;
    ensure(r.image_order % 168 == 0, || format!("image order {}", r.image_order))?;
    Ok(format!("image order {}", r.image_order))
}

fn simplifier_safety() -> Check {
    for primes in BUILDER_SETS {
        let p = build_main(&set(primes)).map_err(|e| e.to_string())?;
        let q = simplify(&p, SimplifyBudget::default());
        ensure(q.generator_count() <= p.generator_count(), || format!("{primes:?}: generators grew"))?;
        ensure(abelianization(&p) == abelianization(&q), || format!("{primes:?}: abelianization changed"))?;
        ensure(verify_presentation(&q).passed(), || format!("{primes:?}: output fails verification"))?;
    }
    Ok("generators never grow; abelianization and witnesses preserved".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("unit structure", Duration::from_secs(1), units),
        ("Jacobi counts", Duration::from_secs(5), jacobi),
        ("transversal/neighbor bijection", Duration::from_secs(5), neighbor_bijection),
        ("builder soundness", Duration::from_secs(60), builder_soundness),
        ("tabulated fixtures", Duration::from_secs(10), fixtures_verify),
        ("oracle equivalence", Duration::from_secs(120), oracle_equivalence),
        ("congruence mod 7", Duration::from_secs(30), congruence_mod_seven),
        ("simplifier safety", Duration::from_secs(120), simplifier_safety),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(_) if elapsed > limit => ("FAIL", format!("took longer than {limit:?}")),
            Ok(d) => ("PASS", d),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("[{status}] {}. {name} ({:.2?}): {detail}", i + 1, elapsed);
    }
    if failures == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
