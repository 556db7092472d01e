//! Seeded random modules assembled from catalog entries by natural constructions,
//! used to check that every summand found lands on a catalog label.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::catalog::{krull_schmidt, CatalogEntry, CatalogError, Setting, Sign};
use crate::double::{induce_yd, DoubleError, YDModule};
use crate::field::Field;
use crate::groups::GroupElem;
use crate::matrix::Matrix;
use crate::rep::Representation;
use crate::ydcatalog::{yd_krull_schmidt, YdCatalogEntry, YdCatalogError};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProbeReport {
    pub modules: usize,
    pub summands: usize,
    /// Descriptions of modules with a summand outside the catalog.
    pub unlabeled: Vec<String>,
    pub inconclusive: usize,
    /// Summand dimensions that do not add up to the module dimension.
    pub dimension_mismatches: usize,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.unlabeled.is_empty() && self.inconclusive == 0 && self.dimension_mismatches == 0
    }
}

pub fn random_invertible<R: Rng + ?Sized>(field: &Field, d: usize, rng: &mut R) -> Matrix {
    loop {
        let data = (0..d * d).map(|_| field.random(rng)).collect();
        let m = Matrix::from_vec(field, d, d, data);
        if m.is_invertible() {
            return m;
        }
    }
}

fn conjugate_randomly<R: Rng + ?Sized>(rep: &Representation, rng: &mut R) -> Representation {
    let p = random_invertible(rep.field(), rep.degree(), rng);
    rep.change_basis(&p).expect("invertible change of basis")
}

fn sum_of(reps: &[&Representation]) -> Representation {
    let mut acc = reps[0].clone();
    for r in &reps[1..] {
        acc = acc.direct_sum(r).expect("same subgroup and field");
    }
    acc
}

fn pick<'a, R: Rng + ?Sized>(
    entries: &'a [CatalogEntry],
    k: usize,
    max_dim: usize,
    rng: &mut R,
) -> Vec<&'a Representation> {
    let small: Vec<&CatalogEntry> = entries.iter().filter(|e| e.rep.degree() <= max_dim).collect();
    (0..k).map(|_| &small.choose(rng).expect("nonempty catalog").rep).collect()
}

/// One random `kD_n`-module and a description of how it was built.
pub fn random_group_module<R: Rng + ?Sized>(
    setting: &Setting,
    catalog: &[CatalogEntry],
    rng: &mut R,
) -> Result<(String, Representation), CatalogError> {
    let max_dim = 2 * setting.params.p_part() as usize;
    let (desc, rep) = match rng.gen_range(0..5) {
        0 => {
            let k = rng.gen_range(1..=3);
            ("direct sum of catalog entries".to_string(), sum_of(&pick(catalog, k, max_dim, rng)))
        }
        1 => {
            let cyc = setting.cyclic_catalog()?;
            let k = rng.gen_range(1..=2);
            let n = sum_of(&pick(&cyc, k, max_dim / 2, rng));
            ("induced from the rotation subgroup".to_string(), n.induce()?)
        }
        2 => {
            let e = pick(catalog, 1, max_dim, rng)[0];
            let down = e.restrict(&setting.params.rotations())?;
            ("restricted to rotations and induced back".to_string(), down.induce()?)
        }
        3 => {
            let sign = setting.phi(1, 0, Sign::Minus)?.rep;
            let k = rng.gen_range(1..=2);
            let m = sum_of(&pick(catalog, k, max_dim, rng));
            ("twisted by the sign character".to_string(), m.tensor(&sign)?)
        }
        _ => {
            let j = rng.gen_range(0..setting.params.n());
            let simples = if setting.params.is_even() && rng.gen_bool(0.5) {
                setting.klein_simples(j)?
            } else {
                setting.order_two_simples(j)?
            };
            let n = pick(&simples, 1, 1, rng)[0].clone();
            ("induced from a reflection subgroup".to_string(), n.induce()?)
        }
    };
    Ok((desc, conjugate_randomly(&rep, rng)))
}

/// Decomposes `count` random `kD_n`-modules against the catalog.
pub fn probe_group_modules<R: Rng + ?Sized>(
    setting: &Setting,
    catalog: &[CatalogEntry],
    count: usize,
    rng: &mut R,
    samples: usize,
) -> Result<ProbeReport, CatalogError> {
    let mut report = ProbeReport::default();
    for _ in 0..count {
        let (desc, m) = random_group_module(setting, catalog, rng)?;
        report.modules += 1;
        match krull_schmidt(&m, catalog, rng, samples) {
            Ok(parts) => {
                report.summands += parts.len();
                if parts.iter().map(|s| s.rep.degree()).sum::<usize>() != m.degree() {
                    report.dimension_mismatches += 1;
                }
                if parts.iter().any(|s| s.label.is_none()) {
                    report.unlabeled.push(format!("{desc} (dimension {})", m.degree()));
                }
            }
            Err(e) if e.is_inconclusive() => report.inconclusive += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// A random change of basis preserving homogeneity: independent blocks per degree.
pub fn graded_basis_change<R: Rng + ?Sized>(m: &YDModule, rng: &mut R) -> YDModule {
    let d = m.dimension();
    let mut p = Matrix::zeros(m.field(), d, d);
    for g in m.degrees() {
        let idx: Vec<usize> = (0..d).filter(|&i| m.grading()[i] == g).collect();
        let block = random_invertible(m.field(), idx.len(), rng);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                p.set(i, j, block.get(a, b));
            }
        }
    }
    m.change_basis_graded(&p).expect("block diagonal by degree")
}

fn pick_yd<'a, R: Rng + ?Sized>(catalog: &'a [YdCatalogEntry], max_dim: usize, rng: &mut R) -> &'a YDModule {
    let small: Vec<&YdCatalogEntry> = catalog.iter().filter(|e| e.yd.dimension() <= max_dim).collect();
    &small.choose(rng).expect("nonempty catalog").yd
}

/// One random YD module and a description of how it was built.
pub fn random_yd_module<R: Rng + ?Sized>(
    setting: &Setting,
    catalog: &[YdCatalogEntry],
    group_catalog: &[CatalogEntry],
    rng: &mut R,
) -> Result<(String, YDModule), YdCatalogError> {
    let max_dim = 2 * setting.params.p_part() as usize;
    let (desc, m) = match rng.gen_range(0..4) {
        0 => {
            let k = rng.gen_range(1..=3);
            let mut acc = pick_yd(catalog, max_dim.max(setting.params.n() as usize), rng).clone();
            for _ in 1..k {
                acc = acc.direct_sum(pick_yd(catalog, max_dim, rng))?;
            }
            ("direct sum of catalog entries".to_string(), acc)
        }
        1 => {
            let classes: Vec<GroupElem> = crate::ydcatalog::class_order(&setting.params);
            let gc = *classes.choose(rng).expect("classes");
            let cent = setting.params.centralizer(gc);
            let entries = setting.subgroup_catalog(&cent)?;
            let k = rng.gen_range(1..=2);
            let n = conjugate_randomly(&sum_of(&pick(&entries, k, max_dim, rng)), rng);
            (format!("induced from a centralizer module at class of {gc}"), induce_yd(gc, &n)?)
        }
        2 => {
            let sign = setting.phi(1, 0, Sign::Minus)?.rep;
            let base = pick_yd(catalog, max_dim.max(setting.params.n() as usize), rng);
            let rep = base.rep().tensor(&sign).map_err(DoubleError::from)?;
            ("twisted by the sign character".to_string(), YDModule::new(rep, base.grading().to_vec())?)
        }
        _ => {
            let (_, rep) = random_group_module(setting, group_catalog, rng)?;
            let centre: Vec<GroupElem> = crate::ydcatalog::class_order(&setting.params)
                .into_iter()
                .filter(|&g| setting.params.centralizer(g) == setting.params.full_group())
                .collect();
            let g = *centre.choose(rng).expect("identity is central");
            ("group module with a central grading".to_string(), YDModule::constant(rep, g)?)
        }
    };
    Ok((desc, graded_basis_change(&m, rng)))
}

/// Decomposes `count` random YD modules against the YD catalog.
pub fn probe_yd_modules<R: Rng + ?Sized>(
    setting: &Setting,
    catalog: &[YdCatalogEntry],
    group_catalog: &[CatalogEntry],
    count: usize,
    rng: &mut R,
    samples: usize,
) -> Result<ProbeReport, YdCatalogError> {
    let mut report = ProbeReport::default();
    for _ in 0..count {
        let (desc, m) = random_yd_module(setting, catalog, group_catalog, rng)?;
        if let Some(v) = m.check().first() {
            report.unlabeled.push(format!("{desc}: grading incompatible ({v})"));
            continue;
        }
        report.modules += 1;
        match yd_krull_schmidt(&m, catalog, rng, samples) {
            Ok(parts) => {
                report.summands += parts.len();
                if parts.iter().map(|s| s.yd.dimension()).sum::<usize>() != m.dimension() {
                    report.dimension_mismatches += 1;
                }
                if parts.iter().any(|s| s.label.is_none()) {
                    report.unlabeled.push(format!("{desc} (dimension {})", m.dimension()));
                }
            }
            Err(e) if e.is_inconclusive() => report.inconclusive += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}
