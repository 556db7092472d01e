//! Indecomposable Yetter–Drinfeld modules over `kD_n`, one family per conjugacy
//! class, each induced from the indecomposables of the class centralizer.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::action::{self, Certificate, IsoOutcome};
use crate::catalog::{expected_count, CatalogError, Label, Setting};
use crate::double::{induce_yd, verify_double_module, DoubleError, YDModule};
use crate::field::Fe;
use crate::groups::{DihedralParams, GroupElem};
use crate::rep::Representation;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum YdCatalogError {
    #[error("a summand matches both {0} and {1}")]
    AmbiguousLabel(String, String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Double(#[from] DoubleError),
}

impl YdCatalogError {
    /// The randomized splitting search ran out of samples.
    pub fn is_inconclusive(&self) -> bool {
        match self {
            YdCatalogError::Double(e) => e.is_inconclusive(),
            YdCatalogError::Catalog(e) => e.is_inconclusive(),
            YdCatalogError::AmbiguousLabel(..) => false,
        }
    }
}

/// A YD catalog label: the class representative together with the label of the
/// inducing centralizer module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct YdLabel {
    pub class: GroupElem,
    pub module: Label,
}

impl fmt::Display for YdLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.class;
        match self.module {
            Label::Phi { r, j, sign } if c.rot == 0 && !c.flip => write!(f, "V({r},{j},{sign})"),
            Label::Omega { r, i } if c.rot == 0 && !c.flip => write!(f, "W({},{i})", 2 * r),
            // the only other central class is a^{n/2}
            Label::Phi { r, j, sign } => write!(f, "DV({r},{j},{sign})"),
            Label::Omega { r, i } => write!(f, "DW({},{i})", 2 * r),
            Label::OrderTwoSimple(j) => write!(f, "DU({j})"),
            Label::KleinSimple(m) if c.rot == 0 => write!(f, "DV({m})"),
            Label::KleinSimple(m) => write!(f, "DU4({m})"),
            Label::Rho { r, i } => write!(f, "DQ({r},{i},{})", c.rot),
        }
    }
}

#[derive(Debug, Clone)]
pub struct YdCatalogEntry {
    pub label: YdLabel,
    pub class: GroupElem,
    pub yd: YDModule,
    /// The centralizer module the entry is induced from.
    pub inducing: Representation,
}

/// Class representatives in catalog order: `1`, `a^{n/2}` (even `n`), `b`, `ab`
/// (even `n`), then `a^l` for ascending `l < n/2`.
pub fn class_order(params: &DihedralParams) -> Vec<GroupElem> {
    let n = params.n();
    let mut out = vec![params.identity()];
    if params.is_even() {
        out.push(params.rotation((n / 2) as i64));
    }
    out.push(params.b());
    if params.is_even() {
        out.push(params.reflection(1));
    }
    out.extend((1..n.div_ceil(2)).map(|l| params.rotation(l as i64)));
    out
}

/// The complete list of indecomposable YD modules.
pub fn yd_catalog(setting: &Setting) -> Result<Vec<YdCatalogEntry>, YdCatalogError> {
    let mut out = Vec::new();
    for gc in class_order(&setting.params) {
        let cent = setting.params.centralizer(gc);
        for e in setting.subgroup_catalog(&cent)? {
            let yd = induce_yd(gc, &e.rep)?;
            out.push(YdCatalogEntry { label: YdLabel { class: gc, module: e.label }, class: gc, yd, inducing: e.rep });
        }
    }
    Ok(out)
}

/// Sum over classes of the number of indecomposable modules of the centralizer.
pub fn expected_yd_count(params: &DihedralParams) -> u64 {
    let ps = params.p_part() as u64;
    let t = params.t() as u64;
    let dn = expected_count(params);
    let n = params.n();
    let (central, reflection_classes, reflection_count) = if params.is_even() { (2, 2, 4) } else { (1, 1, 2) };
    let rotation_classes = (n.div_ceil(2) - 1) as u64;
    central * dn + reflection_classes * reflection_count + rotation_classes * ps * t
}

/// The entries whose modules are simple: induced from simple centralizer modules.
pub fn asserted_simple(entry: &YdCatalogEntry) -> bool {
    matches!(entry.label.module, Label::OrderTwoSimple(_) | Label::KleinSimple(_))
}

/// Labels indecomposable YD modules against a catalog with the local criterion.
pub struct YdLabeler<'a> {
    entries: &'a [YdCatalogEntry],
    keys: Vec<LabelKey>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct LabelKey {
    dim: usize,
    degrees: Vec<GroupElem>,
    fingerprint: Vec<Vec<Fe>>,
}

fn key(m: &YDModule) -> LabelKey {
    let mut degrees = m.grading().to_vec();
    degrees.sort();
    LabelKey { dim: m.dimension(), degrees, fingerprint: action::similarity_fingerprint(m.rep().generators()) }
}

impl<'a> YdLabeler<'a> {
    pub fn new(entries: &'a [YdCatalogEntry]) -> YdLabeler<'a> {
        YdLabeler { entries, keys: entries.iter().map(|e| key(&e.yd)).collect() }
    }

    pub fn label(&self, m: &YDModule) -> Result<Option<YdLabel>, YdCatalogError> {
        let k = key(m);
        let mut found: Option<YdLabel> = None;
        for (e, ek) in self.entries.iter().zip(&self.keys) {
            if *ek != k {
                continue;
            }
            if e.yd.isomorphic_to_indecomposable(m)?.is_isomorphic() {
                if let Some(prev) = found {
                    return Err(YdCatalogError::AmbiguousLabel(prev.to_string(), e.label.to_string()));
                }
                found = Some(e.label);
            }
        }
        Ok(found)
    }
}

#[derive(Debug, Clone)]
pub struct YdSummand {
    pub label: Option<YdLabel>,
    pub yd: YDModule,
}

/// Splits by class support, then into indecomposables, and labels each summand.
pub fn yd_krull_schmidt<R: Rng + ?Sized>(
    m: &YDModule,
    catalog: &[YdCatalogEntry],
    rng: &mut R,
    samples: usize,
) -> Result<Vec<YdSummand>, YdCatalogError> {
    let labeler = YdLabeler::new(catalog);
    let mut out = Vec::new();
    for part in m.grading_decompose().into_values() {
        for yd in part.decompose(rng, samples)? {
            out.push(YdSummand { label: labeler.label(&yd)?, yd });
        }
    }
    Ok(out)
}

pub fn yd_label_multiset(summands: &[YdSummand]) -> Vec<String> {
    let mut out: Vec<String> =
        summands.iter().map(|s| s.label.map_or_else(|| format!("?{}", s.yd.dimension()), |l| l.to_string())).collect();
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletenessReport {
    pub expected: u64,
    pub found: usize,
    /// Failed checks, each naming the entry or pair involved.
    pub failures: Vec<String>,
}

impl CompletenessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.expected == self.found as u64
    }
}

/// Count, compatibility, module axioms, single-class support, indecomposability
/// by both methods, round trip through extraction, and pairwise non-isomorphism.
pub fn verify_completeness<R: Rng + ?Sized>(
    setting: &Setting,
    catalog: &[YdCatalogEntry],
    rng: &mut R,
    samples: usize,
) -> CompletenessReport {
    let mut failures = Vec::new();
    for e in catalog {
        let violations = e.yd.check();
        if let Some(v) = violations.first() {
            failures.push(format!("{}: grading incompatible ({v})", e.label));
            continue;
        }
        if let Some(f) = verify_double_module(&e.yd).failure {
            failures.push(format!("{}: {f}", e.label));
        }
        let parts = e.yd.grading_decompose();
        if parts.len() != 1 || !parts.contains_key(&e.class) {
            failures.push(format!("{}: supported on {} classes", e.label, parts.len()));
        }
        match e.yd.indecomposable(rng, samples) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("{}: decomposable", e.label)),
            Err(err) => failures.push(format!("{}: {err}", e.label)),
        }
        match e.yd.extract().and_then(|(gc, n)| induce_yd(gc, &n)) {
            Ok(back) => match e.yd.isomorphic_to_indecomposable(&back) {
                Ok(out) if out.is_isomorphic() => {}
                _ => failures.push(format!("{}: extraction does not round trip", e.label)),
            },
            Err(err) => failures.push(format!("{}: {err}", e.label)),
        }
    }
    for (x, ex) in catalog.iter().enumerate() {
        for ey in &catalog[x + 1..] {
            match ex.yd.isomorphic_to_indecomposable(&ey.yd) {
                Ok(IsoOutcome::NotIsomorphicCertified(_)) => {}
                Ok(_) => failures.push(format!("{} and {} are isomorphic", ex.label, ey.label)),
                Err(err) => failures.push(format!("{} vs {}: {err}", ex.label, ey.label)),
            }
        }
    }
    CompletenessReport { expected: expected_yd_count(&setting.params), found: catalog.len(), failures }
}

/// Simplicity of an entry by both the basis-vector spin and the Burnside test.
pub fn check_simple(entry: &YdCatalogEntry) -> bool {
    entry.yd.basis_vectors_generate() && entry.yd.is_absolutely_simple()
}

/// Certificate of an entry's centralizer module.
pub fn inducing_certificate<R: Rng + ?Sized>(entry: &YdCatalogEntry, rng: &mut R, samples: usize) -> Certificate {
    entry.inducing.certificate(rng, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn counts_match_formula() {
        for (p, n, want) in [(3, 3, 11), (3, 9, 56), (3, 6, 44), (5, 5, 22)] {
            let s = Setting::new(p, n).unwrap();
            assert_eq!(expected_yd_count(&s.params), want);
            assert_eq!(yd_catalog(&s).unwrap().len() as u64, want);
        }
    }

    #[test]
    fn labels_and_order_for_d6() {
        let s = Setting::new(3, 6).unwrap();
        let cat = yd_catalog(&s).unwrap();
        let labels: Vec<String> = cat.iter().map(|e| e.label.to_string()).collect();
        assert_eq!(labels[0], "V(1,0,+)");
        assert_eq!(labels[12], "DV(1,0,+)");
        assert_eq!(&labels[24..28], &["DV(1)", "DV(2)", "DV(3)", "DV(4)"]);
        assert_eq!(&labels[28..32], &["DU4(1)", "DU4(2)", "DU4(3)", "DU4(4)"]);
        assert_eq!(labels[32], "DQ(1,0,1)");
        let p = s.params;
        let dv3 = &cat[26];
        assert_eq!(dv3.yd.dimension(), 3);
        assert_eq!(dv3.yd.grading(), &[p.b(), p.reflection(2), p.reflection(4)]);
        for e in &cat[32..] {
            let mut degs = e.yd.grading().to_vec();
            degs.dedup();
            assert_eq!(degs, vec![e.class, p.inv(e.class)]);
        }
    }

    #[test]
    fn d3_catalog_verifies() {
        let s = Setting::new(3, 3).unwrap();
        let cat = yd_catalog(&s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let report = verify_completeness(&s, &cat, &mut rng, 64);
        assert!(report.passed(), "{:?}", report.failures);
        for e in cat.iter().filter(|e| asserted_simple(e)) {
            assert!(check_simple(e), "{}", e.label);
        }
    }
}
