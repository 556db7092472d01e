//! One line per acceptance criterion; exits nonzero when any criterion fails.
//! All tolerances are exact: counts, matrix equalities and certified decisions.

use std::process::ExitCode;
use std::time::Instant;

use dndouble::action::{Certificate, IsoOutcome, NonIsoReason};
use dndouble::catalog::{expected_count, krull_schmidt, label_multiset, Setting, Sign};
use dndouble::double::{induce_yd, verify_double_module, verify_hopf, QuantumDouble};
use dndouble::groups::DihedralParams;
use dndouble::probe::{probe_group_modules, probe_yd_modules, random_invertible};
use dndouble::rep::inertia_group;
use dndouble::ydcatalog::{asserted_simple, check_simple, verify_completeness, yd_catalog};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PARAMS: [(u64, u64); 7] = [(3, 3), (3, 9), (3, 6), (3, 12), (5, 5), (5, 10), (7, 21)];
const SAMPLES: usize = 64;
const PROBE_MODULES: usize = 200;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn count_theorem() -> Outcome {
    let want = [6, 18, 12, 15, 10, 20, 21];
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for ((p, n), w) in PARAMS.into_iter().zip(want) {
        let s = Setting::new(p, n).map_err(e)?;
        let cat = s.full_catalog().map_err(e)?;
        ensure(cat.len() == w && expected_count(&s.params) == w as u64, || {
            format!("({p},{n}): {} entries", cat.len())
        })?;
        for entry in &cat {
            let cert = entry.rep.certificate(&mut rng, SAMPLES);
            ensure(matches!(cert, Certificate::Indecomposable { .. }), || {
                format!("({p},{n}) {}: {}", entry.label, cert.status())
            })?;
        }
        for (x, a) in cat.iter().enumerate() {
            for b in &cat[x + 1..] {
                let out = a.rep.isomorphic_to_indecomposable(&b.rep).map_err(e)?;
                ensure(matches!(out, IsoOutcome::NotIsomorphicCertified(_)), || {
                    format!("({p},{n}) {} ~ {}", a.label, b.label)
                })?;
            }
        }
    }
    Ok("6, 18, 12, 15, 10, 20, 21 entries; all certified, pairwise distinct".to_string())
}

fn matrix_lemmas() -> Outcome {
    let mut cases = 0;
    for (p, n) in PARAMS {
        let s = Setting::new(p, n).map_err(e)?;
        let t = s.params.t();
        for r in 1..=s.params.p_part() {
            let tm = s.t_matrix(r).map_err(e)?;
            let a0 = s.a_matrix(r, 0).map_err(e)?;
            ensure((&tm * &tm).is_identity() && &(&a0 * &tm) * &a0 == tm, || format!("T at ({p},{n}) r={r}"))?;
            if t % 2 == 0 {
                let t1 = s.t1_matrix(r).map_err(e)?;
                let ah = s.a_matrix(r, t / 2).map_err(e)?;
                ensure((&t1 * &t1).is_identity() && &(&ah * &t1) * &ah == t1, || format!("T1 at ({p},{n}) r={r}"))?;
            }
            for i in 0..t {
                let a = s.a_matrix(r, i).map_err(e)?;
                let inv = a.inverse().map_err(e)?;
                ensure(s.a_inverse_closed_form(r, i).map_err(e)? == inv, || {
                    format!("inverse at ({p},{n}) r={r} i={i}")
                })?;
                let x = s.x_matrix(r, i).map_err(e)?;
                let other = s.a_matrix(r, (t - i) % t).map_err(e)?.inverse().map_err(e)?;
                ensure(&a * &x == &x * &other && x.is_invertible(), || format!("X at ({p},{n}) r={r} i={i}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (r, i) cases exact"))
}

fn pairing() -> Outcome {
    let mut pairs = 0;
    for (p, n) in PARAMS {
        let s = Setting::new(p, n).map_err(e)?;
        let t = s.params.t();
        let admissible: Vec<u32> = (1..t).filter(|&i| 2 * i != t).collect();
        for r in 1..=s.params.p_part() {
            for &i in &admissible {
                let oi = s.induced_cyclic(r, i).map_err(e)?;
                for &j in &admissible {
                    let oj = s.induced_cyclic(r, j).map_err(e)?;
                    let out = oi.isomorphic_to_indecomposable(&oj).map_err(e)?;
                    let ok = if i == j || i + j == t {
                        out.is_isomorphic()
                    } else {
                        out == IsoOutcome::NotIsomorphicCertified(NonIsoReason::NoHomomorphisms)
                    };
                    ensure(ok, || format!("({p},{n}) r={r} i={i} j={j}"))?;
                    pairs += 1;
                }
                let w = s.pairing_witness(r, i).map_err(e)?;
                let src = s.induced_cyclic(r, t - i).map_err(e)?;
                ensure(src.is_intertwiner(&oi, &w) && w.is_invertible(), || format!("witness ({p},{n}) r={r} i={i}"))?;
            }
        }
    }
    Ok(format!("{pairs} ordered pairs decided, witnesses verified"))
}

fn splitting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (p, n) in PARAMS {
        let s = Setting::new(p, n).map_err(e)?;
        let cat = s.full_catalog().map_err(e)?;
        let t = s.params.t();
        for r in 1..=s.params.p_part() {
            let mut js = vec![0];
            if t % 2 == 0 {
                js.push(t / 2);
            }
            for j in js {
                let parts = krull_schmidt(&s.induced_cyclic(r, j).map_err(e)?, &cat, &mut rng, SAMPLES).map_err(e)?;
                let mut want = vec![
                    s.phi(r, j, Sign::Plus).map_err(e)?.label.to_string(),
                    s.phi(r, j, Sign::Minus).map_err(e)?.label.to_string(),
                ];
                want.sort();
                let got = label_multiset(&parts);
                ensure(got == want, || format!("({p},{n}) r={r} j={j}: {got:?}"))?;
            }
            for i in 0..t {
                let got = inertia_group(&s.rho_cyclic(r, i).map_err(e)?, &mut rng, SAMPLES).map_err(e)?;
                let want = if i == 0 || 2 * i == t { s.params.full_group() } else { s.params.rotations() };
                ensure(got == want, || format!("inertia ({p},{n}) r={r} i={i}: {}", got.name()))?;
            }
        }
    }
    Ok("splittings and inertia groups as predicted".to_string())
}

fn hopf() -> Outcome {
    let mut dims = Vec::new();
    for (p, n) in [(3, 3), (3, 6)] {
        let report = verify_hopf(&QuantumDouble::new(DihedralParams::new(p, n).map_err(e)?));
        for a in &report.axioms {
            ensure(a.passed(), || format!("({p},{n}) {}: {:?}", a.name, a.failure))?;
        }
        dims.push(report.dimension.to_string());
    }
    Ok(format!("all axioms on dimensions {}", dims.join(" and ")))
}

fn yd_dictionary() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut pairs = 0;
    for (p, n) in [(3, 3), (3, 6)] {
        let s = Setting::new(p, n).map_err(e)?;
        for entry in yd_catalog(&s).map_err(e)? {
            let label = entry.label.to_string();
            ensure(entry.yd.check().is_empty(), || format!("{label}: grading"))?;
            ensure(verify_double_module(&entry.yd).failure.is_none(), || format!("{label}: module axiom"))?;
            ensure(entry.yd.grading_decompose().len() == 1, || format!("{label}: several classes"))?;
            let (gc, m) = entry.yd.extract().map_err(e)?;
            let back = induce_yd(gc, &m).map_err(e)?;
            ensure(entry.yd.isomorphic_to_indecomposable(&back).map_err(e)?.is_isomorphic(), || {
                format!("{label}: round trip")
            })?;
        }
        for c in s.params.conjugacy_classes() {
            let cent = s.params.centralizer(c.rep);
            let mut mods = Vec::new();
            for entry in s.subgroup_catalog(&cent).map_err(e)? {
                let q = random_invertible(&s.field, entry.rep.degree(), &mut rng);
                mods.push(entry.rep.change_basis(&q).map_err(e)?);
                mods.push(entry.rep);
            }
            for x in &mods {
                let dx = induce_yd(c.rep, x).map_err(e)?;
                for y in &mods {
                    let dy = induce_yd(c.rep, y).map_err(e)?;
                    let lower = x.isomorphic_to_indecomposable(y).map_err(e)?.is_isomorphic();
                    let upper = dx.isomorphic_to_indecomposable(&dy).map_err(e)?.is_isomorphic();
                    ensure(lower == upper, || format!("({p},{n}) class of {}", c.rep))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("entries verified; {pairs} centralizer-module pairs agree"))
}

fn yd_counts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut sizes = Vec::new();
    for ((p, n), want) in [(3, 3), (3, 9), (3, 6), (5, 5)].into_iter().zip([11, 56, 44, 22]) {
        let s = Setting::new(p, n).map_err(e)?;
        let cat = yd_catalog(&s).map_err(e)?;
        ensure(cat.len() == want, || format!("({p},{n}): {} entries", cat.len()))?;
        let report = verify_completeness(&s, &cat, &mut rng, SAMPLES);
        ensure(report.passed(), || format!("({p},{n}): {}", report.failures.join("; ")))?;
        sizes.push(cat.len().to_string());
    }
    Ok(format!("{} entries, pairwise non-isomorphic", sizes.join(", ")))
}

fn simplicity() -> Outcome {
    for ((p, n), want) in [(3, 3), (3, 9), (3, 6)].into_iter().zip([2, 2, 4]) {
        let s = Setting::new(p, n).map_err(e)?;
        let simples = s.simple_sublist().map_err(e)?.len();
        let regular = s.params.p_regular_classes().len();
        ensure(simples == want && regular == want, || format!("({p},{n}): {simples} simples, {regular} classes"))?;
    }
    let mut checked = 0;
    for (p, n) in [(3, 3), (3, 9), (3, 6), (5, 5), (3, 12), (5, 10)] {
        let s = Setting::new(p, n).map_err(e)?;
        for entry in yd_catalog(&s).map_err(e)?.iter().filter(|x| asserted_simple(x)) {
            ensure(check_simple(entry), || format!("({p},{n}) {}", entry.label))?;
            checked += 1;
        }
    }
    Ok(format!("simple counts 2, 2, 4; {checked} induced simple YD modules generated by every vector"))
}

fn closure() -> Outcome {
    let mut totals = (0, 0);
    for (p, n) in PARAMS {
        let s = Setting::new(p, n).map_err(e)?;
        let cat = s.full_catalog().map_err(e)?;
        let yd = yd_catalog(&s).map_err(e)?;
        let mut rng = ChaCha8Rng::seed_from_u64(p * 1000 + n);
        let a = probe_group_modules(&s, &cat, PROBE_MODULES, &mut rng, SAMPLES).map_err(e)?;
        let b = probe_yd_modules(&s, &yd, &cat, PROBE_MODULES, &mut rng, SAMPLES).map_err(e)?;
        ensure(a.passed() && a.modules == PROBE_MODULES, || format!("({p},{n}) group modules: {a:?}"))?;
        ensure(b.passed() && b.modules == PROBE_MODULES, || format!("({p},{n}) YD modules: {b:?}"))?;
        totals.0 += a.summands;
        totals.1 += b.summands;
    }
    Ok(format!(
        "{PROBE_MODULES} + {PROBE_MODULES} modules per pair; {} + {} summands labeled, 0 inconclusive",
        totals.0, totals.1
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("count theorem for kD_n", count_theorem),
        ("structured matrix identities", matrix_lemmas),
        ("isomorphism pairing of induced modules", pairing),
        ("splitting and inertia instances", splitting),
        ("Hopf axioms of the quantum double", hopf),
        ("YD dictionary", yd_dictionary),
        ("YD counts", yd_counts),
        ("simple modules", simplicity),
        ("closure probe", closure),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: {name}: pass ({detail}) [{secs:.1}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: {name}: FAIL ({why}) [{secs:.1}s]", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
