//! The quantum double `D(kG)` of `G = D_n` on the basis `φ_g ⊗ h`, an exhaustive
//! Hopf-axiom checker, and Yetter–Drinfeld modules stored as graded representations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::action::{self, ActionError, Certificate, IsoOutcome, NonIsoReason};
use crate::field::{Fe, Field};
use crate::groups::{DihedralParams, GroupElem};
use crate::matrix::{Echelon, Matrix};
use crate::rep::{coset_representatives_in, RepError, Representation};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DoubleError {
    #[error("grading has {got} degrees for a module of dimension {dim}")]
    GradingLength { got: usize, dim: usize },
    #[error("module must be a representation of the whole group")]
    NotWholeGroup,
    #[error("{0} is not in the centralizer of the class representative")]
    NotCentralizerModule(String),
    #[error("indecomposability tests disagree: graded endomorphisms say {direct}, centralizer module says {via_centralizer}")]
    MethodsDisagree { direct: &'static str, via_centralizer: &'static str },
    #[error("module is not homogeneous for a single conjugacy class")]
    SeveralClasses,
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

impl DoubleError {
    /// The randomized splitting search ran out of samples.
    pub fn is_inconclusive(&self) -> bool {
        match self {
            DoubleError::Action(ActionError::Inconclusive { .. }) => true,
            DoubleError::Rep(e) => e.is_inconclusive(),
            _ => false,
        }
    }
}

/// Basis element `φ_g ⊗ h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DoubleBasisIndex {
    pub g: GroupElem,
    pub h: GroupElem,
}

impl fmt::Display for DoubleBasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "φ_{}⊗{}", self.g, self.h)
    }
}

/// Integer linear combination of basis elements (or of tensors of them).
pub type Sum<K> = BTreeMap<K, i64>;

fn normalize<K: Ord>(s: Sum<K>, p: i64) -> Sum<K> {
    s.into_iter().map(|(k, c)| (k, c.rem_euclid(p))).filter(|&(_, c)| c != 0).collect()
}

struct Reducer(i64);

impl Reducer {
    fn norm<K: Ord>(&self, s: Sum<K>) -> Sum<K> {
        normalize(s, self.0)
    }
}

fn add_term<K: Ord>(s: &mut Sum<K>, k: K, c: i64) {
    *s.entry(k).or_insert(0) += c;
}

/// Structure maps of a Hopf algebra on the basis `φ_g ⊗ h`. Implemented for the
/// true double and for deliberately corrupted variants used as negative controls.
pub trait DoubleStructure {
    fn params(&self) -> &DihedralParams;
    fn multiply(&self, x: DoubleBasisIndex, y: DoubleBasisIndex) -> Sum<DoubleBasisIndex>;
    fn unit(&self) -> Sum<DoubleBasisIndex>;
    fn comultiply(&self, x: DoubleBasisIndex) -> Sum<(DoubleBasisIndex, DoubleBasisIndex)>;
    fn counit(&self, x: DoubleBasisIndex) -> i64;
    fn antipode(&self, x: DoubleBasisIndex) -> Sum<DoubleBasisIndex>;

    fn basis(&self) -> Vec<DoubleBasisIndex> {
        let p = self.params();
        p.elements().flat_map(|g| p.elements().map(move |h| DoubleBasisIndex { g, h })).collect()
    }
}

/// `D(kD_n)` with the structure maps
/// `(φ_g⊗h)(φ_{g'}⊗h') = δ_{g, hg'h^{-1}} φ_g⊗hh'`,
/// `Δ(φ_g⊗h) = Σ_x (φ_x⊗h) ⊗ (φ_{x^{-1}g}⊗h)`, `ε(φ_g⊗h) = δ_{1,g}`,
/// `S(φ_g⊗h) = φ_{h^{-1}g^{-1}h} ⊗ h^{-1}`.
#[derive(Debug, Clone, Copy)]
pub struct QuantumDouble {
    params: DihedralParams,
}

impl QuantumDouble {
    pub fn new(params: DihedralParams) -> QuantumDouble {
        QuantumDouble { params }
    }

    pub fn dimension(&self) -> usize {
        let o = self.params.order() as usize;
        o * o
    }

    /// The product of two basis elements: a basis element or zero.
    pub fn product(&self, x: DoubleBasisIndex, y: DoubleBasisIndex) -> Option<DoubleBasisIndex> {
        let p = &self.params;
        (x.g == p.conj(x.h, y.g)).then(|| DoubleBasisIndex { g: x.g, h: p.mul(x.h, y.h) })
    }
}

impl DoubleStructure for QuantumDouble {
    fn params(&self) -> &DihedralParams {
        &self.params
    }

    fn multiply(&self, x: DoubleBasisIndex, y: DoubleBasisIndex) -> Sum<DoubleBasisIndex> {
        self.product(x, y).into_iter().map(|z| (z, 1)).collect()
    }

    fn unit(&self) -> Sum<DoubleBasisIndex> {
        let one = self.params.identity();
        self.params.elements().map(|g| (DoubleBasisIndex { g, h: one }, 1)).collect()
    }

    fn comultiply(&self, x: DoubleBasisIndex) -> Sum<(DoubleBasisIndex, DoubleBasisIndex)> {
        let p = &self.params;
        p.elements()
            .map(|y| {
                let left = DoubleBasisIndex { g: y, h: x.h };
                let right = DoubleBasisIndex { g: p.mul(p.inv(y), x.g), h: x.h };
                ((left, right), 1)
            })
            .collect()
    }

    fn counit(&self, x: DoubleBasisIndex) -> i64 {
        (x.g == self.params.identity()) as i64
    }

    fn antipode(&self, x: DoubleBasisIndex) -> Sum<DoubleBasisIndex> {
        let p = &self.params;
        let hi = p.inv(x.h);
        let g = p.mul(p.mul(hi, p.inv(x.g)), x.h);
        [(DoubleBasisIndex { g, h: hi }, 1)].into_iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomResult {
    pub name: &'static str,
    pub checked: usize,
    /// First failing instance, described by its basis indices.
    pub failure: Option<String>,
}

impl AxiomResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfReport {
    pub dimension: usize,
    pub axioms: Vec<AxiomResult>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(AxiomResult::passed)
    }
}

fn mul_sums<D: DoubleStructure + ?Sized>(
    d: &D,
    x: &Sum<DoubleBasisIndex>,
    y: &Sum<DoubleBasisIndex>,
) -> Sum<DoubleBasisIndex> {
    let mut out = Sum::new();
    for (&a, &ca) in x {
        for (&b, &cb) in y {
            for (z, cz) in d.multiply(a, b) {
                add_term(&mut out, z, ca * cb * cz);
            }
        }
    }
    out
}

fn single(x: DoubleBasisIndex) -> Sum<DoubleBasisIndex> {
    [(x, 1)].into_iter().collect()
}

/// Sweeps every Hopf axiom over all basis tuples; counts are reduced mod `p`.
pub fn verify_hopf<D: DoubleStructure + ?Sized>(d: &D) -> HopfReport {
    let p = d.params().p() as i64;
    let basis = d.basis();
    let unit = d.unit();
    let mut axioms = Vec::new();
    let red = Reducer(p);

    // associativity
    let mut failure = None;
    let mut checked = 0;
    'assoc: for &x in &basis {
        for &y in &basis {
            let xy = red.norm(d.multiply(x, y));
            for &z in &basis {
                checked += 1;
                let left = red.norm(mul_sums(d, &xy, &single(z)));
                let yz = d.multiply(y, z);
                let right = red.norm(mul_sums(d, &single(x), &yz));
                if left != right {
                    failure = Some(format!("({x} {y}) {z} != {x} ({y} {z})"));
                    break 'assoc;
                }
            }
        }
    }
    axioms.push(AxiomResult { name: "associativity", checked, failure });

    let mut failure = None;
    for &x in &basis {
        let left = red.norm(mul_sums(d, &unit, &single(x)));
        let right = red.norm(mul_sums(d, &single(x), &unit));
        if left != single(x) || right != single(x) {
            failure = Some(format!("1·{x} or {x}·1 differs from {x}"));
            break;
        }
    }
    axioms.push(AxiomResult { name: "unit", checked: basis.len(), failure });

    // coassociativity
    let mut failure = None;
    for &x in &basis {
        let mut left: Sum<(DoubleBasisIndex, DoubleBasisIndex, DoubleBasisIndex)> = Sum::new();
        let mut right = Sum::new();
        for ((x1, x2), c) in d.comultiply(x) {
            for ((y1, y2), c2) in d.comultiply(x1) {
                add_term(&mut left, (y1, y2, x2), c * c2);
            }
            for ((y1, y2), c2) in d.comultiply(x2) {
                add_term(&mut right, (x1, y1, y2), c * c2);
            }
        }
        if red.norm(left) != red.norm(right) {
            failure = Some(format!("(Δ⊗id)Δ({x}) != (id⊗Δ)Δ({x})"));
            break;
        }
    }
    axioms.push(AxiomResult { name: "coassociativity", checked: basis.len(), failure });

    let mut failure = None;
    for &x in &basis {
        let mut left = Sum::new();
        let mut right = Sum::new();
        for ((x1, x2), c) in d.comultiply(x) {
            add_term(&mut left, x2, c * d.counit(x1));
            add_term(&mut right, x1, c * d.counit(x2));
        }
        if red.norm(left) != single(x) || red.norm(right) != single(x) {
            failure = Some(format!("counit fails on {x}"));
            break;
        }
    }
    axioms.push(AxiomResult { name: "counit", checked: basis.len(), failure });

    // Δ is an algebra map
    let mut failure = None;
    let mut checked = 1;
    let delta_sum = |s: &Sum<DoubleBasisIndex>| {
        let mut out = Sum::new();
        for (&x, &c) in s {
            for (k, c2) in d.comultiply(x) {
                add_term(&mut out, k, c * c2);
            }
        }
        out
    };
    let mut unit_tensor = Sum::new();
    for (&u1, &c1) in &unit {
        for (&u2, &c2) in &unit {
            add_term(&mut unit_tensor, (u1, u2), c1 * c2);
        }
    }
    if red.norm(delta_sum(&unit)) != red.norm(unit_tensor) {
        failure = Some("Δ(1) != 1⊗1".to_string());
    }
    let deltas: Vec<Sum<(DoubleBasisIndex, DoubleBasisIndex)>> = basis.iter().map(|&x| d.comultiply(x)).collect();
    'mult: for (ix, &x) in basis.iter().enumerate() {
        if failure.is_some() {
            break;
        }
        for (iy, &y) in basis.iter().enumerate() {
            checked += 1;
            let left = red.norm(delta_sum(&d.multiply(x, y)));
            let mut right = Sum::new();
            for (&(x1, x2), &c) in &deltas[ix] {
                for (&(y1, y2), &c2) in &deltas[iy] {
                    for (z1, cz1) in d.multiply(x1, y1) {
                        for (z2, cz2) in d.multiply(x2, y2) {
                            add_term(&mut right, (z1, z2), c * c2 * cz1 * cz2);
                        }
                    }
                }
            }
            if left != red.norm(right) {
                failure = Some(format!("Δ({x} {y}) != Δ({x}) Δ({y})"));
                break 'mult;
            }
        }
    }
    axioms.push(AxiomResult { name: "comultiplication multiplicative", checked, failure });

    let mut failure = None;
    let eps = |s: &Sum<DoubleBasisIndex>| s.iter().map(|(&x, &c)| c * d.counit(x)).sum::<i64>().rem_euclid(p);
    if eps(&unit) != 1 {
        failure = Some("ε(1) != 1".to_string());
    }
    'eps: for &x in &basis {
        if failure.is_some() {
            break;
        }
        for &y in &basis {
            if eps(&d.multiply(x, y)) != (d.counit(x) * d.counit(y)).rem_euclid(p) {
                failure = Some(format!("ε({x} {y}) != ε({x}) ε({y})"));
                break 'eps;
            }
        }
    }
    axioms.push(AxiomResult { name: "counit multiplicative", checked: basis.len() * basis.len() + 1, failure });

    // Σ S(x1) x2 = ε(x) 1 = Σ x1 S(x2)
    let mut failure = None;
    for &x in &basis {
        let mut left = Sum::new();
        let mut right = Sum::new();
        for ((x1, x2), c) in d.comultiply(x) {
            for (z, cz) in mul_sums(d, &d.antipode(x1), &single(x2)) {
                add_term(&mut left, z, c * cz);
            }
            for (z, cz) in mul_sums(d, &single(x1), &d.antipode(x2)) {
                add_term(&mut right, z, c * cz);
            }
        }
        let e = d.counit(x);
        let expected = red.norm(unit.iter().map(|(&u, &c)| (u, c * e)).collect());
        if red.norm(left) != expected {
            failure = Some(format!("Σ S(x1) x2 != ε(x) 1 for x = {x}"));
            break;
        }
        if red.norm(right) != expected {
            failure = Some(format!("Σ x1 S(x2) != ε(x) 1 for x = {x}"));
            break;
        }
    }
    axioms.push(AxiomResult { name: "antipode", checked: basis.len(), failure });

    let mut failure = None;
    for &x in &basis {
        let mut twice = Sum::new();
        for (y, c) in d.antipode(x) {
            for (z, c2) in d.antipode(y) {
                add_term(&mut twice, z, c * c2);
            }
        }
        if red.norm(twice) != single(x) {
            failure = Some(format!("S(S({x})) != {x}"));
            break;
        }
    }
    axioms.push(AxiomResult { name: "antipode squared is identity", checked: basis.len(), failure });

    HopfReport { dimension: basis.len(), axioms }
}

/// A `D_n`-representation with a grading of its basis: `M = ⊕_g M_g`, coaction `m ↦ m ⊗ deg(m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YDModule {
    rep: Representation,
    grading: Vec<GroupElem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YdViolation {
    pub generator: GroupElem,
    pub degree: GroupElem,
    pub basis_index: usize,
}

impl fmt::Display for YdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} maps basis vector {} of degree {} outside the conjugated degree",
            self.generator, self.basis_index, self.degree
        )
    }
}

impl YDModule {
    /// Pairs a representation with a grading. The compatibility condition is not
    /// checked here; see [`YDModule::check`].
    pub fn new(rep: Representation, grading: Vec<GroupElem>) -> Result<YDModule, DoubleError> {
        if rep.subgroup() != &rep.params().full_group() {
            return Err(DoubleError::NotWholeGroup);
        }
        if grading.len() != rep.degree() {
            return Err(DoubleError::GradingLength { got: grading.len(), dim: rep.degree() });
        }
        Ok(YDModule { rep, grading })
    }

    /// The module with a constant grading `g` (`g` must be central for compatibility).
    pub fn constant(rep: Representation, g: GroupElem) -> Result<YDModule, DoubleError> {
        let d = rep.degree();
        YDModule::new(rep, vec![g; d])
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn grading(&self) -> &[GroupElem] {
        &self.grading
    }

    pub fn dimension(&self) -> usize {
        self.rep.degree()
    }

    pub fn params(&self) -> &DihedralParams {
        self.rep.params()
    }

    pub fn field(&self) -> &Field {
        self.rep.field()
    }

    /// Distinct degrees in group order.
    pub fn degrees(&self) -> BTreeSet<GroupElem> {
        self.grading.iter().copied().collect()
    }

    /// Violations of `h·M_g ⊆ M_{hgh^{-1}}` for the generators `h = a, b`.
    pub fn check(&self) -> Vec<YdViolation> {
        let p = *self.params();
        let mut out = Vec::new();
        for h in [p.a(), p.b()] {
            let m = self.rep.image(h).expect("whole group");
            for (i, &g) in self.grading.iter().enumerate() {
                let target = p.conj(h, g);
                let bad = (0..m.rows()).any(|j| !m.get(j, i).is_zero() && self.grading[j] != target);
                if bad {
                    out.push(YdViolation { generator: h, degree: g, basis_index: i });
                }
            }
        }
        out
    }

    /// Projection `π_g` onto the degree-`g` component.
    pub fn projection(&self, g: GroupElem) -> Matrix {
        let diag: Vec<Fe> = self.grading.iter().map(|&x| if x == g { Fe::ONE } else { Fe::ZERO }).collect();
        Matrix::diagonal(self.field(), &diag)
    }

    /// Action of `φ_g ⊗ h`: `π_g ∘ ρ(h)`.
    pub fn double_action(&self, x: DoubleBasisIndex) -> Matrix {
        &self.projection(x.g) * &self.rep.image(x.h).expect("whole group")
    }

    /// Action generators `[a, b, π_g for g in degrees]`, the projections listed
    /// for the given degree set (absent degrees act by zero).
    fn action_generators(&self, degrees: &BTreeSet<GroupElem>) -> Vec<Matrix> {
        let mut gens = self.rep.generators().to_vec();
        gens.extend(degrees.iter().map(|&g| self.projection(g)));
        gens
    }

    fn own_generators(&self) -> Vec<Matrix> {
        self.action_generators(&self.degrees())
    }

    /// Grading-preserving module maps `self -> other`.
    pub fn hom(&self, other: &YDModule) -> Result<Vec<Matrix>, DoubleError> {
        if self.field() != other.field() || self.params() != other.params() {
            return Err(DoubleError::Rep(RepError::GroupMismatch));
        }
        let degrees: BTreeSet<GroupElem> = self.degrees().union(&other.degrees()).copied().collect();
        Ok(action::hom_basis(
            self.field(),
            &self.action_generators(&degrees),
            self.dimension(),
            &other.action_generators(&degrees),
            other.dimension(),
        ))
    }

    pub fn is_isomorphic<R: Rng + ?Sized>(
        &self,
        other: &YDModule,
        rng: &mut R,
        samples: usize,
    ) -> Result<IsoOutcome, DoubleError> {
        if self.field() != other.field() || self.params() != other.params() {
            return Err(DoubleError::Rep(RepError::GroupMismatch));
        }
        let degrees: BTreeSet<GroupElem> = self.degrees().union(&other.degrees()).copied().collect();
        Ok(action::find_isomorphism(
            self.field(),
            &self.action_generators(&degrees),
            self.dimension(),
            &other.action_generators(&degrees),
            other.dimension(),
            rng,
            samples,
        ))
    }

    /// Exact decision for an indecomposable `self`.
    pub fn isomorphic_to_indecomposable(&self, other: &YDModule) -> Result<IsoOutcome, DoubleError> {
        if self.dimension() != other.dimension() {
            return Ok(IsoOutcome::NotIsomorphicCertified(NonIsoReason::DegreeMismatch));
        }
        let vw = self.hom(other)?;
        if vw.is_empty() {
            return Ok(IsoOutcome::NotIsomorphicCertified(NonIsoReason::NoHomomorphisms));
        }
        let wv = other.hom(self)?;
        Ok(match action::local_iso(&vw, &wv) {
            Some(s) => IsoOutcome::Isomorphic(s),
            None => IsoOutcome::NotIsomorphicCertified(NonIsoReason::LocalCriterion),
        })
    }

    /// Certificate computed on graded endomorphisms.
    pub fn certificate<R: Rng + ?Sized>(&self, rng: &mut R, samples: usize) -> Certificate {
        action::certify(self.field(), &self.own_generators(), self.dimension(), rng, samples)
    }

    /// Restriction to a graded invariant subspace whose basis vectors are homogeneous.
    pub fn submodule(&self, basis: &Matrix) -> YDModule {
        let grading = (0..basis.cols())
            .map(|c| {
                let i = (0..basis.rows()).find(|&r| !basis.get(r, c).is_zero()).expect("nonzero column");
                self.grading[i]
            })
            .collect();
        YDModule { rep: self.rep.submodule(basis), grading }
    }

    /// Indecomposable YD summands.
    pub fn decompose<R: Rng + ?Sized>(&self, rng: &mut R, samples: usize) -> Result<Vec<YDModule>, DoubleError> {
        let parts = action::split_fully(self.field(), &self.own_generators(), self.dimension(), rng, samples)?;
        Ok(parts.iter().map(|b| self.submodule(b)).collect())
    }

    pub fn direct_sum(&self, other: &YDModule) -> Result<YDModule, DoubleError> {
        let rep = self.rep.direct_sum(&other.rep)?;
        let mut grading = self.grading.clone();
        grading.extend_from_slice(&other.grading);
        Ok(YDModule { rep, grading })
    }

    /// The same module in a new basis; `p` must map homogeneous vectors to homogeneous vectors
    /// (block diagonal with respect to the grading, up to a permutation of equal degrees).
    pub fn change_basis_graded(&self, p: &Matrix) -> Result<YDModule, DoubleError> {
        for c in 0..p.cols() {
            let degs: BTreeSet<GroupElem> =
                (0..p.rows()).filter(|&r| !p.get(r, c).is_zero()).map(|r| self.grading[r]).collect();
            if degs.len() != 1 {
                return Err(DoubleError::SeveralClasses);
            }
        }
        let grading = (0..p.cols())
            .map(|c| self.grading[(0..p.rows()).find(|&r| !p.get(r, c).is_zero()).expect("nonzero")])
            .collect();
        Ok(YDModule { rep: self.rep.change_basis(p)?, grading })
    }

    /// The part `M_C` for each conjugacy class `C` meeting the grading, keyed by class representative.
    pub fn grading_decompose(&self) -> BTreeMap<GroupElem, YDModule> {
        let p = *self.params();
        let mut by_class: BTreeMap<GroupElem, Vec<usize>> = BTreeMap::new();
        for (i, &g) in self.grading.iter().enumerate() {
            by_class.entry(p.class_rep(g)).or_default().push(i);
        }
        by_class
            .into_iter()
            .map(|(c, idx)| {
                let cols: Vec<Vec<Fe>> = idx
                    .iter()
                    .map(|&i| {
                        let mut v = vec![Fe::ZERO; self.dimension()];
                        v[i] = Fe::ONE;
                        v
                    })
                    .collect();
                let basis = Matrix::from_columns(self.field(), self.dimension(), &cols);
                (c, self.submodule(&basis))
            })
            .collect()
    }

    /// For a module supported on one class `C` with representative `g_C`: the
    /// centralizer module `M_{g_C}`.
    pub fn extract(&self) -> Result<(GroupElem, Representation), DoubleError> {
        let p = *self.params();
        let classes: BTreeSet<GroupElem> = self.grading.iter().map(|&g| p.class_rep(g)).collect();
        if classes.len() != 1 {
            return Err(DoubleError::SeveralClasses);
        }
        let gc = *classes.iter().next().expect("one class");
        let cent = p.centralizer(gc);
        let on_centralizer = self.rep.restrict(&cent)?;
        let idx: Vec<usize> = (0..self.dimension()).filter(|&i| self.grading[i] == gc).collect();
        let gens = on_centralizer.generators().iter().map(|m| m.submatrix(&idx, &idx)).collect();
        Ok((gc, Representation::with_degree(cent, self.field(), idx.len(), gens)?))
    }

    /// Indecomposability decided on graded endomorphisms and, independently, on the
    /// extracted centralizer module; disagreement is an error.
    pub fn indecomposable<R: Rng + ?Sized>(&self, rng: &mut R, samples: usize) -> Result<bool, DoubleError> {
        let direct = self.certificate(rng, samples);
        let via = match self.extract() {
            Ok((_, n)) => n.certificate(rng, samples),
            Err(DoubleError::SeveralClasses) => Certificate::Decomposed {
                first: Matrix::zeros(self.field(), 0, 0),
                second: Matrix::zeros(self.field(), 0, 0),
            },
            Err(e) => return Err(e),
        };
        let verdict = |c: &Certificate| match c {
            Certificate::Indecomposable { .. } => Some(true),
            Certificate::Decomposed { .. } => Some(false),
            Certificate::Inconclusive { .. } => None,
        };
        match (verdict(&direct), verdict(&via)) {
            (Some(x), Some(y)) if x == y => Ok(x),
            (None, _) | (_, None) => Err(DoubleError::Action(ActionError::Inconclusive { dim: self.dimension() })),
            _ => Err(DoubleError::MethodsDisagree { direct: direct.status(), via_centralizer: via.status() }),
        }
    }

    /// Every basis vector generates the whole module under `a`, `b` and the projections.
    pub fn basis_vectors_generate(&self) -> bool {
        let gens = self.own_generators();
        let d = self.dimension();
        (0..d).all(|i| {
            let mut v = vec![Fe::ZERO; d];
            v[i] = Fe::ONE;
            spin(self.field(), &gens, &[v], d) == d
        })
    }

    /// Burnside test: the action algebra is all of `End_k(M)`, so `M` is absolutely simple.
    pub fn is_absolutely_simple(&self) -> bool {
        let gens = self.own_generators();
        let d = self.dimension();
        let mut span = Echelon::new(self.field(), d * d);
        let id = Matrix::identity(self.field(), d);
        span.insert(id.data());
        let mut queue = vec![id];
        while let Some(m) = queue.pop() {
            for g in &gens {
                let next = g * &m;
                if span.insert(next.data()) {
                    queue.push(next);
                }
            }
            if span.is_full() {
                return true;
            }
        }
        span.is_full()
    }
}

fn spin(field: &Field, gens: &[Matrix], seeds: &[Vec<Fe>], dim: usize) -> usize {
    let mut span = Echelon::new(field, dim);
    let mut queue: Vec<Vec<Fe>> = Vec::new();
    for s in seeds {
        if span.insert(s) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for g in gens {
            let w = g.mul_vec(&v);
            if span.insert(&w) {
                queue.push(w);
            }
        }
    }
    span.rank()
}

/// `D(N) = kG ⊗_{kC(g_C)} N` graded by `deg(x ⊗ n) = x g_C x^{-1}` over the left transversal `x`.
pub fn induce_yd(gc: GroupElem, n: &Representation) -> Result<YDModule, DoubleError> {
    let p = *n.params();
    let cent = p.centralizer(gc);
    if n.subgroup() != &cent {
        return Err(DoubleError::NotCentralizerModule(n.subgroup().name()));
    }
    let g = p.full_group();
    let transversal = coset_representatives_in(&cent, &g);
    let rep = n.induce_to(&g)?;
    let grading = transversal.iter().flat_map(|&x| std::iter::repeat_n(p.conj(x, gc), n.degree())).collect();
    YDModule::new(rep, grading)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleModuleReport {
    pub pairs_checked: usize,
    pub failure: Option<String>,
}

/// Checks `(xy)·m = x·(y·m)` for all basis pairs of `D(kG)` and that `1` acts as the identity.
pub fn verify_double_module(m: &YDModule) -> DoubleModuleReport {
    let d = QuantumDouble::new(*m.params());
    let basis = d.basis();
    let acts: Vec<Matrix> = basis.iter().map(|&x| m.double_action(x)).collect();
    let index = |x: DoubleBasisIndex| {
        let p = m.params();
        p.index_of(x.g) * p.order() as usize + p.index_of(x.h)
    };
    let dim = m.dimension();
    let zero = Matrix::zeros(m.field(), dim, dim);
    let mut unit = zero.clone();
    for (x, _) in d.unit() {
        unit = &unit + &acts[index(x)];
    }
    if !unit.is_identity() {
        return DoubleModuleReport { pairs_checked: 0, failure: Some("unit does not act as the identity".to_string()) };
    }
    let mut pairs = 0;
    for (ix, &x) in basis.iter().enumerate() {
        for (iy, &y) in basis.iter().enumerate() {
            pairs += 1;
            let lhs = match d.product(x, y) {
                Some(z) => acts[index(z)].clone(),
                None => zero.clone(),
            };
            if lhs != &acts[ix] * &acts[iy] {
                return DoubleModuleReport {
                    pairs_checked: pairs,
                    failure: Some(format!("({x})({y}) acts inconsistently")),
                };
            }
        }
    }
    DoubleModuleReport { pairs_checked: pairs, failure: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Setting;

    fn d3() -> QuantumDouble {
        QuantumDouble::new(DihedralParams::new(3, 3).unwrap())
    }

    #[test]
    fn product_examples() {
        let d = d3();
        let p = *d.params();
        let x = DoubleBasisIndex { g: p.b(), h: p.a() };
        // a (a^2 b) a^{-1} = ab, not b
        assert_eq!(d.product(x, DoubleBasisIndex { g: p.reflection(2), h: p.identity() }), None);
        assert_eq!(d.product(x, DoubleBasisIndex { g: p.reflection(1), h: p.identity() }), Some(x));
        let e = DoubleBasisIndex { g: p.identity(), h: p.identity() };
        for y in d.basis() {
            let expected = (y.g == p.identity()).then_some(DoubleBasisIndex { g: p.identity(), h: y.h });
            assert_eq!(d.product(e, y), expected);
        }
    }

    #[test]
    fn counit_and_antipode_examples() {
        let d = d3();
        let p = *d.params();
        assert_eq!(d.counit(DoubleBasisIndex { g: p.identity(), h: p.a() }), 1);
        assert_eq!(d.counit(DoubleBasisIndex { g: p.b(), h: p.a() }), 0);
        let e = DoubleBasisIndex { g: p.identity(), h: p.identity() };
        assert_eq!(d.antipode(e), single(e));
        // S(φ_b⊗a) = φ_{a^{-1} b a} ⊗ a^{-1} = φ_{ab} ⊗ a^2
        let s = d.antipode(DoubleBasisIndex { g: p.b(), h: p.a() });
        assert_eq!(s, single(DoubleBasisIndex { g: p.reflection(1), h: p.rotation(2) }));
    }

    #[test]
    fn induced_sign_module_on_reflections() {
        let s = Setting::new(3, 3).unwrap();
        let u2 = &s.order_two_simples(0).unwrap()[1].rep;
        let m = induce_yd(s.params.b(), u2).unwrap();
        assert_eq!(m.dimension(), 3);
        assert!(m.check().is_empty());
        let p = s.params;
        assert_eq!(m.grading(), &[p.b(), p.reflection(2), p.reflection(1)]);
        // (φ_{a^2 b} ⊗ a)·(1⊗u) = a⊗u; (φ_b ⊗ a)·(1⊗u) = 0
        let act = m.double_action(DoubleBasisIndex { g: p.reflection(2), h: p.a() });
        assert_eq!(act.column(0), vec![Fe::ZERO, Fe::ONE, Fe::ZERO]);
        let act = m.double_action(DoubleBasisIndex { g: p.b(), h: p.a() });
        assert!(act.column(0).iter().all(|x| x.is_zero()));
        assert!(verify_double_module(&m).failure.is_none());
    }

    #[test]
    fn permuted_grading_is_located() {
        let s = Setting::new(3, 3).unwrap();
        let u2 = &s.order_two_simples(0).unwrap()[1].rep;
        let m = induce_yd(s.params.b(), u2).unwrap();
        let mut g = m.grading().to_vec();
        g.swap(0, 1);
        let bad = YDModule::new(m.rep().clone(), g).unwrap();
        let v = bad.check();
        assert!(!v.is_empty());
        assert!(v.iter().any(|x| x.generator == s.params.b()));
    }
}
