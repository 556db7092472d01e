//! Named property suites over one parameter pair, reported check by check.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::{self, Certificate, IsoOutcome, NonIsoReason};
use crate::catalog::{expected_count, krull_schmidt, label_multiset, CatalogEntry, Setting, Sign};
use crate::double::{induce_yd, verify_hopf, QuantumDouble};
use crate::groups::Subgroup;
use crate::matrix::Matrix;
use crate::probe::{probe_group_modules, probe_yd_modules};
use crate::rep::{inertia_group, verify_induction_restriction, verify_mackey, Representation};
use crate::ydcatalog::{asserted_simple, check_simple, expected_yd_count, verify_completeness, yd_catalog};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.suite, self.name, self.status)?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Matrices,
    Catalog,
    Hopf,
    Yd,
    Mackey,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Matrices, Suite::Catalog, Suite::Hopf, Suite::Yd, Suite::Mackey];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Matrices => "matrices",
            Suite::Catalog => "catalog",
            Suite::Hopf => "hopf",
            Suite::Yd => "yd",
            Suite::Mackey => "mackey",
        })
    }
}

/// A suite name or `all`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteSelection {
    One(Suite),
    All,
}

impl SuiteSelection {
    pub fn suites(self) -> Vec<Suite> {
        match self {
            SuiteSelection::One(s) => vec![s],
            SuiteSelection::All => Suite::ALL.to_vec(),
        }
    }
}

impl FromStr for SuiteSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "all" => SuiteSelection::All,
            "matrices" => SuiteSelection::One(Suite::Matrices),
            "catalog" => SuiteSelection::One(Suite::Catalog),
            "hopf" => SuiteSelection::One(Suite::Hopf),
            "yd" => SuiteSelection::One(Suite::Yd),
            "mackey" => SuiteSelection::One(Suite::Mackey),
            other => {
                return Err(format!("unknown suite {other:?}; expected matrices, catalog, hopf, yd, mackey or all"))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest `n` for which the Hopf sweep runs.
    pub hopf_max_n: u32,
    /// Random samples per certificate or isomorphism search.
    pub samples: usize,
    /// Random modules per closure probe.
    pub probe_modules: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { hopf_max_n: 12, samples: 64, probe_modules: 200 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub p: u32,
    pub n: u32,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn status(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }
}

struct Recorder {
    suite: Suite,
    checks: Vec<Check>,
}

impl Recorder {
    fn push(&mut self, name: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.checks.push(Check { suite: self.suite, name: name.into(), status, detail: detail.into() });
    }

    fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.push(name, if ok { Status::Pass } else { Status::Fail }, detail);
    }

    /// Records the first failure among `items`, or a pass with the count checked.
    fn all<I, F>(&mut self, name: &str, items: I, mut test: F)
    where
        I: IntoIterator,
        F: FnMut(I::Item) -> Result<(), String>,
    {
        let mut count = 0;
        for it in items {
            count += 1;
            if let Err(why) = test(it) {
                self.push(name, Status::Fail, why);
                return;
            }
        }
        if count == 0 {
            self.push(name, Status::Pass, "vacuous");
        } else {
            self.push(name, Status::Pass, format!("{count} cases"));
        }
    }
}

pub fn run(setting: &Setting, selection: SuiteSelection, seed: u64, budget: &Budget) -> Report {
    let mut checks = Vec::new();
    for suite in selection.suites() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rec = Recorder { suite, checks: Vec::new() };
        match suite {
            Suite::Matrices => matrices(setting, &mut rec),
            Suite::Catalog => catalog(setting, &mut rec, &mut rng, budget),
            Suite::Hopf => hopf(setting, &mut rec, budget),
            Suite::Yd => yd(setting, &mut rec, &mut rng, budget),
            Suite::Mackey => mackey(setting, &mut rec, &mut rng, budget),
        }
        checks.extend(rec.checks);
    }
    Report { p: setting.params.p(), n: setting.params.n(), seed, checks }
}

fn ranks(setting: &Setting) -> std::ops::RangeInclusive<u32> {
    1..=setting.params.p_part()
}

fn matrices(s: &Setting, rec: &mut Recorder) {
    let t = s.params.t();
    let even_t = t.is_multiple_of(2);
    let err = |e: crate::catalog::CatalogError| e.to_string();
    rec.all("T²=I", ranks(s), |r| {
        let m = s.t_matrix(r).map_err(err)?;
        (&m * &m).is_identity().then_some(()).ok_or(format!("r={r}"))
    });
    rec.all("A(r,0)·T·A(r,0)=T", ranks(s), |r| {
        let (a, m) = (s.a_matrix(r, 0).map_err(err)?, s.t_matrix(r).map_err(err)?);
        (&(&a * &m) * &a == m).then_some(()).ok_or(format!("r={r}"))
    });
    let half_ranks: Vec<u32> = if even_t { ranks(s).collect() } else { Vec::new() };
    rec.all("T1²=I", half_ranks.clone(), |r| {
        let m = s.t1_matrix(r).map_err(err)?;
        (&m * &m).is_identity().then_some(()).ok_or(format!("r={r}"))
    });
    rec.all("A(r,t/2)·T1·A(r,t/2)=T1", half_ranks, |r| {
        let (a, m) = (s.a_matrix(r, t / 2).map_err(err)?, s.t1_matrix(r).map_err(err)?);
        (&(&a * &m) * &a == m).then_some(()).ok_or(format!("r={r}"))
    });
    let pairs: Vec<(u32, u32)> = ranks(s).flat_map(|r| (0..t).map(move |i| (r, i))).collect();
    rec.all("closed-form inverse of A(r,i)", pairs.clone(), |(r, i)| {
        let a = s.a_matrix(r, i).map_err(err)?;
        let inv = s.a_inverse_closed_form(r, i).map_err(err)?;
        (&inv * &a).is_identity().then_some(()).ok_or(format!("r={r} i={i}"))
    });
    rec.all("A(r,i)·X=X·A(r,t-i)⁻¹ with X invertible", pairs.clone(), |(r, i)| {
        let a = s.a_matrix(r, i).map_err(err)?;
        let x = s.x_matrix(r, i).map_err(err)?;
        let b = s.a_matrix(r, (t - i) % t).map_err(err)?.inverse().map_err(|e| e.to_string())?;
        (&a * &x == &x * &b && x.is_invertible()).then_some(()).ok_or(format!("r={r} i={i}"))
    });
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    rec.all("A(r,i) similar to its inverse exactly when 2i≡0 mod t", pairs, |(r, i)| {
        let a = s.a_matrix(r, i).map_err(err)?;
        let inv = a.inverse().map_err(|e| e.to_string())?;
        let out = action::find_isomorphism(&s.field, &[a], r as usize, &[inv], r as usize, &mut rng, 16);
        let want = (2 * i) % t == 0;
        if matches!(out, IsoOutcome::NotIsomorphicProbabilistic { .. }) {
            return Err(format!("r={r} i={i}: undecided"));
        }
        (out.is_isomorphic() == want).then_some(()).ok_or(format!("r={r} i={i}"))
    });
}

fn catalog(s: &Setting, rec: &mut Recorder, rng: &mut ChaCha8Rng, budget: &Budget) {
    let t = s.params.t();
    let cat = match s.full_catalog() {
        Ok(c) => c,
        Err(e) => return rec.check("catalog construction", false, e.to_string()),
    };
    let want = expected_count(&s.params);
    rec.check("catalog size", cat.len() as u64 == want, format!("{} of {want}", cat.len()));
    let mut inconclusive = Vec::new();
    rec.all("every entry certified indecomposable", &cat, |e| match e.rep.certificate(rng, budget.samples) {
        Certificate::Indecomposable { .. } => Ok(()),
        Certificate::Inconclusive { .. } => {
            inconclusive.push(e.label.to_string());
            Ok(())
        }
        Certificate::Decomposed { .. } => Err(format!("{} decomposes", e.label)),
    });
    if !inconclusive.is_empty() {
        rec.push("certificates decided", Status::Inconclusive, inconclusive.join(", "));
    }
    let pairs: Vec<(&CatalogEntry, &CatalogEntry)> =
        cat.iter().enumerate().flat_map(|(x, a)| cat[x + 1..].iter().map(move |b| (a, b))).collect();
    rec.all("entries pairwise non-isomorphic", pairs.iter().copied(), |(a, b)| {
        match a.rep.isomorphic_to_indecomposable(&b.rep) {
            Ok(IsoOutcome::NotIsomorphicCertified(_)) => Ok(()),
            Ok(_) => Err(format!("{} ≅ {}", a.label, b.label)),
            Err(e) => Err(e.to_string()),
        }
    });
    let mut asymmetric = Vec::new();
    rec.all("dim Hom(V,W) = dim Hom(W*,V*)", pairs.iter().copied(), |(a, b)| {
        let vw = a.rep.intertwiners(&b.rep).map_err(|e| e.to_string())?.len();
        let dual = b.rep.dual().intertwiners(&a.rep.dual()).map_err(|e| e.to_string())?.len();
        let wv = b.rep.intertwiners(&a.rep).map_err(|e| e.to_string())?.len();
        if vw != wv {
            asymmetric.push(format!("{}/{}", a.label, b.label));
        }
        (vw == dual).then_some(()).ok_or(format!("{} vs {}: {vw} and {dual}", a.label, b.label))
    });
    // Hom is not symmetric for non-semisimple algebras; recorded, not asserted.
    let detail = match asymmetric.first() {
        Some(first) => format!("{} of {} pairs differ, first {first}", asymmetric.len(), pairs.len()),
        None => format!("symmetric on all {} pairs", pairs.len()),
    };
    rec.push("dim Hom(V,W) vs dim Hom(W,V)", Status::Skipped, detail);
    rec.all(
        "Omega entries equal the induced cyclic modules",
        cat.iter().filter(|e| e.label.to_string().starts_with("Omega")),
        |e| {
            let crate::catalog::Label::Omega { r, i } = e.label else { return Ok(()) };
            let ind = s.rho_cyclic(r, i).and_then(|x| Ok(x.induce()?)).map_err(|e| e.to_string())?;
            (ind == e.rep).then_some(()).ok_or(e.label.to_string())
        },
    );
    let admissible: Vec<u32> = (1..t).filter(|&i| 2 * i != t).collect();
    let triples: Vec<(u32, u32, u32)> = ranks(s)
        .flat_map(|r| {
            let adm = &admissible;
            adm.iter().flat_map(move |&i| adm.iter().map(move |&j| (r, i, j)))
        })
        .collect();
    let pairing_detail = if triples.is_empty() { format!("vacuous, t={t}") } else { String::new() };
    let mut pairing_ok = Ok(());
    for &(r, i, j) in &triples {
        let res = (|| -> Result<(), String> {
            let oi = s.induced_cyclic(r, i).map_err(|e| e.to_string())?;
            let oj = s.induced_cyclic(r, j).map_err(|e| e.to_string())?;
            let out = oi.isomorphic_to_indecomposable(&oj).map_err(|e| e.to_string())?;
            let ok = if i == j || i + j == t {
                out.is_isomorphic()
            } else {
                out == IsoOutcome::NotIsomorphicCertified(NonIsoReason::NoHomomorphisms)
            };
            ok.then_some(()).ok_or(format!("r={r} i={i} j={j}"))
        })();
        if res.is_err() {
            pairing_ok = res;
            break;
        }
    }
    match pairing_ok {
        Ok(()) => rec.push("pairing i+j=t", Status::Pass, pairing_detail.clone()),
        Err(why) => rec.push("pairing i+j=t", Status::Fail, why),
    }
    let witness_cases: Vec<(u32, u32)> =
        ranks(s).flat_map(|r| admissible.iter().map(move |&i| (r, i))).collect::<Vec<_>>();
    rec.all("antidiagonal witness intertwines", witness_cases, |(r, i)| {
        let w = s.pairing_witness(r, i).map_err(|e| e.to_string())?;
        let src = s.induced_cyclic(r, t - i).map_err(|e| e.to_string())?;
        let dst = s.induced_cyclic(r, i).map_err(|e| e.to_string())?;
        (src.is_intertwiner(&dst, &w) && w.is_invertible()).then_some(()).ok_or(format!("r={r} i={i}"))
    });
    let mut split_cases: Vec<(u32, u32)> = ranks(s).map(|r| (r, 0)).collect();
    if t.is_multiple_of(2) {
        split_cases.extend(ranks(s).map(|r| (r, t / 2)));
    }
    rec.all("induced invariant cyclic modules split as Phi+Phi'", split_cases, |(r, j)| {
        let m = s.induced_cyclic(r, j).map_err(|e| e.to_string())?;
        let parts = krull_schmidt(&m, &cat, rng, budget.samples).map_err(|e| e.to_string())?;
        let mut want = vec![
            s.phi(r, j, Sign::Plus).map_err(|e| e.to_string())?.label.to_string(),
            s.phi(r, j, Sign::Minus).map_err(|e| e.to_string())?.label.to_string(),
        ];
        want.sort();
        let got = label_multiset(&parts);
        (got == want).then_some(()).ok_or(format!("r={r} j={j}: {got:?}"))
    });
    let inertia_cases: Vec<(u32, u32)> = ranks(s).flat_map(|r| (0..t).map(move |i| (r, i))).collect();
    rec.all("inertia group of cyclic modules", inertia_cases, |(r, i)| {
        let rho = s.rho_cyclic(r, i).map_err(|e| e.to_string())?;
        let got = inertia_group(&rho, rng, budget.samples).map_err(|e| e.to_string())?;
        let want = if i == 0 || 2 * i == t { s.params.full_group() } else { s.params.rotations() };
        (got == want).then_some(()).ok_or(format!("r={r} i={i}: {}", got.name()))
    });
    let simples = s.simple_sublist().map(|l| l.len()).unwrap_or(0);
    let regular = s.params.p_regular_classes().len();
    rec.check(
        "simple modules match p-regular classes",
        simples == regular,
        format!("{simples} simples, {regular} classes"),
    );
    rec.all(
        "cyclic modules are tensor products over C_(p^s) x C_t",
        ranks(s).flat_map(|r| (0..t).map(move |i| (r, i))),
        |(r, i)| {
            let rho = s.rho_cyclic(r, i).map_err(|e| e.to_string())?;
            let unipotent = unipotent_block(s, r as usize);
            let unip = Representation::cyclic(s.params, &s.field, unipotent).map_err(|e| e.to_string())?;
            let character = Matrix::from_vec(&s.field, 1, 1, vec![s.xi_pow(i as i64)]);
            let chi = Representation::cyclic(s.params, &s.field, character).map_err(|e| e.to_string())?;
            let prod = unip.tensor(&chi).map_err(|e| e.to_string())?;
            match rho.isomorphic_to_indecomposable(&prod).map_err(|e| e.to_string())? {
                o if o.is_isomorphic() => Ok(()),
                _ => Err(format!("r={r} i={i}")),
            }
        },
    );
    match probe_group_modules(s, &cat, budget.probe_modules, rng, budget.samples) {
        Ok(report) => {
            let detail = format!(
                "{} modules, {} summands, {} unlabeled, {} inconclusive",
                report.modules,
                report.summands,
                report.unlabeled.len(),
                report.inconclusive
            );
            let status = if !report.unlabeled.is_empty() || report.dimension_mismatches > 0 {
                Status::Fail
            } else if report.inconclusive > 0 {
                Status::Inconclusive
            } else {
                Status::Pass
            };
            rec.push("random modules decompose into catalog entries", status, detail);
        }
        Err(e) => rec.check("random modules decompose into catalog entries", false, e.to_string()),
    }
}

/// Single unipotent Jordan block of size `r`.
fn unipotent_block(s: &Setting, r: usize) -> Matrix {
    let mut m = Matrix::identity(&s.field, r);
    for i in 0..r.saturating_sub(1) {
        m.set(i, i + 1, crate::field::Fe::ONE);
    }
    m
}

fn hopf(s: &Setting, rec: &mut Recorder, budget: &Budget) {
    if s.params.n() > budget.hopf_max_n {
        return rec.push(
            "Hopf axioms",
            Status::Skipped,
            format!("n={} exceeds budget {}", s.params.n(), budget.hopf_max_n),
        );
    }
    let report = verify_hopf(&QuantumDouble::new(s.params));
    for a in &report.axioms {
        match &a.failure {
            None => rec.push(a.name, Status::Pass, format!("{} cases, dimension {}", a.checked, report.dimension)),
            Some(f) => rec.push(a.name, Status::Fail, f.clone()),
        }
    }
}

fn yd(s: &Setting, rec: &mut Recorder, rng: &mut ChaCha8Rng, budget: &Budget) {
    let cat = match yd_catalog(s) {
        Ok(c) => c,
        Err(e) => return rec.check("YD catalog construction", false, e.to_string()),
    };
    let want = expected_yd_count(&s.params);
    rec.check("YD catalog size", cat.len() as u64 == want, format!("{} of {want}", cat.len()));
    let report = verify_completeness(s, &cat, rng, budget.samples);
    if report.failures.is_empty() {
        rec.push(
            "YD entries compatible, single-class, indecomposable two ways, round trip, pairwise distinct",
            Status::Pass,
            format!("{} entries", cat.len()),
        );
    } else {
        rec.push(
            "YD entries compatible, single-class, indecomposable two ways, round trip, pairwise distinct",
            Status::Fail,
            report.failures.join("; "),
        );
    }
    rec.all("simple YD entries are simple", cat.iter().filter(|e| asserted_simple(e)), |e| {
        check_simple(e).then_some(()).ok_or(e.label.to_string())
    });
    let mut cases = Vec::new();
    for c in s.params.conjugacy_classes() {
        let cent = s.params.centralizer(c.rep);
        if let Ok(entries) = s.subgroup_catalog(&cent) {
            for x in 0..entries.len() {
                for y in 0..entries.len() {
                    cases.push((c.rep, entries[x].rep.clone(), entries[y].rep.clone()));
                }
            }
        }
    }
    rec.all("induced YD modules isomorphic exactly when centralizer modules are", cases, |(g, x, y)| {
        let lower = x.isomorphic_to_indecomposable(&y).map_err(|e| e.to_string())?.is_isomorphic();
        let dx = induce_yd(g, &x).map_err(|e| e.to_string())?;
        let dy = induce_yd(g, &y).map_err(|e| e.to_string())?;
        let upper = dx.isomorphic_to_indecomposable(&dy).map_err(|e| e.to_string())?.is_isomorphic();
        (lower == upper).then_some(()).ok_or(format!("class of {g}"))
    });
    let group_cat = match s.full_catalog() {
        Ok(c) => c,
        Err(e) => return rec.check("catalog construction", false, e.to_string()),
    };
    match probe_yd_modules(s, &cat, &group_cat, budget.probe_modules, rng, budget.samples) {
        Ok(report) => {
            let detail = format!(
                "{} modules, {} summands, {} unlabeled, {} inconclusive",
                report.modules,
                report.summands,
                report.unlabeled.len(),
                report.inconclusive
            );
            let status = if !report.unlabeled.is_empty() || report.dimension_mismatches > 0 {
                Status::Fail
            } else if report.inconclusive > 0 {
                Status::Inconclusive
            } else {
                Status::Pass
            };
            rec.push("random YD modules decompose into catalog entries", status, detail);
        }
        Err(e) => rec.check("random YD modules decompose into catalog entries", false, e.to_string()),
    }
}

fn mackey(s: &Setting, rec: &mut Recorder, rng: &mut ChaCha8Rng, budget: &Budget) {
    let p = s.params;
    let subgroups = [
        p.rotations(),
        p.sylow(),
        Subgroup::dihedral(p, p.n(), 0),
        Subgroup::dihedral(p, p.n(), 1),
        Subgroup::dihedral(p, p.t(), 0),
    ];
    let cyc = s.cyclic_catalog().unwrap_or_default();
    let twos = s.order_two_simples(0).unwrap_or_default();
    let mut sources: Vec<Representation> = Vec::new();
    sources.extend(cyc.iter().take(3).map(|e| e.rep.clone()));
    sources.extend(twos.iter().map(|e| e.rep.clone()));
    if let Ok(full) = s.full_catalog() {
        sources.extend(full.iter().take(2).map(|e| e.rep.clone()));
    }
    let cases: Vec<(Representation, Subgroup)> =
        sources.iter().flat_map(|w| subgroups.iter().map(move |h| (w.clone(), *h))).collect();
    rec.all("Mackey decomposition", cases, |(w, h)| {
        let r = verify_mackey(&w, &h, rng, budget.samples).map_err(|e| e.to_string())?;
        r.holds.then_some(()).ok_or(format!("{} over {}", w.subgroup().name(), h.name()))
    });
    let normal: Vec<Subgroup> = subgroups.iter().copied().filter(|h| h.is_normal()).collect();
    let full = s.full_catalog().unwrap_or_default();
    let cases: Vec<(&CatalogEntry, Subgroup)> =
        full.iter().take(4).flat_map(|e| normal.iter().map(move |h| (e, *h))).collect();
    rec.all("restrict then induce equals permutation module tensor", cases, |(e, h)| {
        let out = verify_induction_restriction(&e.rep, &h, rng, budget.samples).map_err(|e| e.to_string())?;
        out.is_isomorphic().then_some(()).ok_or(format!("{} over {}", e.label, h.name()))
    });
    let pairs: Vec<(Representation, Representation)> =
        cyc.iter().take(4).flat_map(|a| cyc.iter().take(4).map(move |b| (a.rep.clone(), b.rep.clone()))).collect();
    rec.all("induction commutes with direct sums", pairs, |(a, b)| {
        let lhs = a.direct_sum(&b).and_then(|x| x.induce()).map_err(|e| e.to_string())?;
        let rhs = a.induce().and_then(|x| x.direct_sum(&b.induce()?)).map_err(|e| e.to_string())?;
        let out = lhs.is_isomorphic(&rhs, rng, budget.samples).map_err(|e| e.to_string())?;
        out.is_isomorphic().then_some(()).ok_or("isomorphism not found".to_string())
    });
    rec.all("decomposition independent of the random seed", full.iter().take(4), |e| {
        let extra = s.induced_cyclic(1, 0).map_err(|e| e.to_string())?;
        let m = e.rep.direct_sum(&e.rep).and_then(|x| x.direct_sum(&extra)).map_err(|e| e.to_string())?;
        let mut r1 = ChaCha8Rng::seed_from_u64(1);
        let mut r2 = ChaCha8Rng::seed_from_u64(2);
        let a = krull_schmidt(&m, &full, &mut r1, budget.samples).map_err(|e| e.to_string())?;
        let b = krull_schmidt(&m, &full, &mut r2, budget.samples).map_err(|e| e.to_string())?;
        (label_multiset(&a) == label_multiset(&b)).then_some(()).ok_or(e.label.to_string())
    });
}
