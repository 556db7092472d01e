//! Matrix representations of subgroups of `D_n`, the induction/restriction functors,
//! and the isomorphism and decomposition procedures on top of [`crate::action`].

use std::collections::BTreeSet;

use rand::Rng;
use thiserror::Error;

use crate::action::{self, ActionError, Certificate, IsoOutcome, NonIsoReason};
use crate::field::Field;
use crate::groups::{DihedralParams, GroupElem, GroupError, Subgroup, SubgroupKind};
use crate::matrix::{Matrix, MatrixError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RepError {
    #[error("expected {expected} generator images, got {got}")]
    GeneratorCount { expected: usize, got: usize },
    #[error("generator images must be square matrices of one size")]
    Shape,
    #[error("representations must have positive degree")]
    ZeroDegree,
    #[error("relation {relation} fails")]
    Relation { relation: String },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("representations are of different groups")]
    GroupMismatch,
    #[error("{sub} is not contained in {sup}")]
    NotASubgroup { sub: String, sup: String },
    #[error("{0} is not normal")]
    NotNormal(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

impl RepError {
    /// The randomized splitting search ran out of samples.
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, RepError::Action(ActionError::Inconclusive { .. }))
    }
}

/// A representation of a subgroup `H ≤ D_n`, stored as the images of
/// `H.generators()`. Relations are checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    subgroup: Subgroup,
    field: Field,
    degree: usize,
    gens: Vec<Matrix>,
}

impl Representation {
    pub fn new(subgroup: Subgroup, field: &Field, gens: Vec<Matrix>) -> Result<Representation, RepError> {
        let degree = gens.first().map(Matrix::rows).ok_or(RepError::Shape)?;
        Representation::with_degree(subgroup, field, degree, gens)
    }

    /// As [`Representation::new`], with the degree given explicitly so that the
    /// trivial subgroup (no generators) is allowed.
    pub fn with_degree(
        subgroup: Subgroup,
        field: &Field,
        degree: usize,
        gens: Vec<Matrix>,
    ) -> Result<Representation, RepError> {
        let expected = subgroup.generators().len();
        if gens.len() != expected {
            return Err(RepError::GeneratorCount { expected, got: gens.len() });
        }
        if degree == 0 {
            return Err(RepError::ZeroDegree);
        }
        if gens.iter().any(|g| g.shape() != (degree, degree)) {
            return Err(RepError::Shape);
        }
        if gens.iter().any(|g| g.field() != field) {
            return Err(RepError::FieldMismatch);
        }
        let rep = Representation { subgroup, field: field.clone(), degree, gens };
        rep.check_relations()?;
        Ok(rep)
    }

    /// Representation of the whole of `D_n` from the images of `a` and `b`.
    pub fn dihedral(params: DihedralParams, field: &Field, a: Matrix, b: Matrix) -> Result<Representation, RepError> {
        Representation::new(params.full_group(), field, vec![a, b])
    }

    /// Representation of `C_n = <a>` from the image of `a`.
    pub fn cyclic(params: DihedralParams, field: &Field, a: Matrix) -> Result<Representation, RepError> {
        Representation::new(params.rotations(), field, vec![a])
    }

    pub fn trivial(subgroup: Subgroup, field: &Field, degree: usize) -> Representation {
        let gens = subgroup.generators().iter().map(|_| Matrix::identity(field, degree)).collect();
        Representation { subgroup, field: field.clone(), degree, gens }
    }

    fn check_relations(&self) -> Result<(), RepError> {
        let names: Vec<String> = self.subgroup.generators().iter().map(|g| g.to_string()).collect();
        let mut idx = 0;
        let mut rot = None;
        let has_rot = self.subgroup.rotation_order() > 1;
        if has_rot {
            let r = &self.gens[0];
            let order = self.subgroup.rotation_order();
            if !r.pow(order as u64).is_identity() {
                return Err(RepError::Relation { relation: format!("({})^{} = 1", names[0], order) });
            }
            rot = Some(r);
            idx = 1;
        }
        if let SubgroupKind::Dihedral { .. } = self.subgroup.kind() {
            let s = &self.gens[idx];
            if !(s * s).is_identity() {
                return Err(RepError::Relation { relation: format!("({})^2 = 1", names[idx]) });
            }
            if let Some(r) = rot {
                let rs = r * s;
                if !(&rs * &rs).is_identity() {
                    return Err(RepError::Relation { relation: format!("({}·{})^2 = 1", names[0], names[idx]) });
                }
            }
        }
        Ok(())
    }

    pub fn params(&self) -> &DihedralParams {
        self.subgroup.params()
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.gens
    }

    /// Image of `g ∈ H`, `None` for `g ∉ H`.
    pub fn image(&self, g: GroupElem) -> Option<Matrix> {
        if !self.subgroup.contains(g) {
            return None;
        }
        let n = self.params().n() as i64;
        let (step, has_rot) = match self.subgroup.kind() {
            SubgroupKind::Cyclic { step } | SubgroupKind::Dihedral { step, .. } => (step as i64, step as i64 != n),
        };
        let rot_power = |k: i64| -> Matrix {
            if has_rot {
                self.gens[0].pow(k.rem_euclid(n / step) as u64)
            } else {
                Matrix::identity(&self.field, self.degree)
            }
        };
        match self.subgroup.kind() {
            SubgroupKind::Cyclic { .. } => Some(rot_power(g.rot as i64 / step)),
            SubgroupKind::Dihedral { refl, .. } => {
                if g.flip {
                    let k = (g.rot as i64 - refl as i64).rem_euclid(n) / step;
                    let s = &self.gens[if has_rot { 1 } else { 0 }];
                    Some(&rot_power(k) * s)
                } else {
                    Some(rot_power(g.rot as i64 / step))
                }
            }
        }
    }

    /// Images of every element of `H`, indexed by group position.
    fn image_table(&self) -> Vec<Option<Matrix>> {
        let p = *self.params();
        p.elements().map(|g| self.image(g)).collect()
    }

    fn same_kind(&self, other: &Representation) -> Result<(), RepError> {
        if self.field != other.field {
            return Err(RepError::FieldMismatch);
        }
        if self.subgroup != other.subgroup {
            return Err(RepError::GroupMismatch);
        }
        Ok(())
    }

    /// Induction to an overgroup `K ⊇ H`: `Ω(g)` has block `(j, i)` equal to
    /// `ρ(g_j^{-1} g g_i)`, zero when that element lies outside `H`.
    pub fn induce_to(&self, over: &Subgroup) -> Result<Representation, RepError> {
        if !self.subgroup.is_subgroup_of(over) {
            return Err(RepError::NotASubgroup { sub: self.subgroup.name(), sup: over.name() });
        }
        let p = *self.params();
        let transversal = coset_representatives_in(&self.subgroup, over);
        let m = transversal.len();
        let d = self.degree;
        let table = self.image_table();
        let gens = over
            .generators()
            .into_iter()
            .map(|g| {
                let mut out = Matrix::zeros(&self.field, m * d, m * d);
                for (i, &gi) in transversal.iter().enumerate() {
                    let ggi = p.mul(g, gi);
                    for (j, &gj) in transversal.iter().enumerate() {
                        let x = p.mul(p.inv(gj), ggi);
                        if let Some(img) = &table[p.index_of(x)] {
                            out.set_block(j * d, i * d, img);
                        }
                    }
                }
                out
            })
            .collect();
        Representation::with_degree(*over, &self.field, m * d, gens)
    }

    /// Induction to the whole of `D_n`.
    pub fn induce(&self) -> Result<Representation, RepError> {
        self.induce_to(&self.params().full_group())
    }

    pub fn restrict(&self, sub: &Subgroup) -> Result<Representation, RepError> {
        if !sub.is_subgroup_of(&self.subgroup) {
            return Err(RepError::NotASubgroup { sub: sub.name(), sup: self.subgroup.name() });
        }
        let gens = sub.generators().into_iter().map(|g| self.image(g).expect("contained")).collect();
        Representation::with_degree(*sub, &self.field, self.degree, gens)
    }

    /// `^x ρ` on `x H x^{-1}`, with `(^x ρ)(y) = ρ(x^{-1} y x)`.
    pub fn conjugate(&self, x: GroupElem) -> Representation {
        let p = *self.params();
        let target = self.subgroup.conjugate(x);
        let xi = p.inv(x);
        let gens =
            target.generators().into_iter().map(|y| self.image(p.conj(xi, y)).expect("conjugate lies in H")).collect();
        Representation::with_degree(target, &self.field, self.degree, gens).expect("conjugation preserves relations")
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation, RepError> {
        self.same_kind(other)?;
        let gens = self.gens.iter().zip(&other.gens).map(|(x, y)| Matrix::block_diag(&[x, y])).collect();
        Ok(Representation {
            subgroup: self.subgroup,
            field: self.field.clone(),
            degree: self.degree + other.degree,
            gens,
        })
    }

    pub fn tensor(&self, other: &Representation) -> Result<Representation, RepError> {
        self.same_kind(other)?;
        let gens = self.gens.iter().zip(&other.gens).map(|(x, y)| x.kron(y)).collect();
        Ok(Representation {
            subgroup: self.subgroup,
            field: self.field.clone(),
            degree: self.degree * other.degree,
            gens,
        })
    }

    /// Contragredient module: `g ↦ ρ(g^{-1})^T`.
    pub fn dual(&self) -> Representation {
        let gens = self.gens.iter().map(|g| g.inverse().expect("generators act invertibly").transpose()).collect();
        Representation { subgroup: self.subgroup, field: self.field.clone(), degree: self.degree, gens }
    }

    /// The same module in the basis given by the columns of an invertible `p`:
    /// `g ↦ p^{-1} ρ(g) p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Representation, RepError> {
        let pinv = p.inverse()?;
        let gens = self.gens.iter().map(|g| &(&pinv * g) * p).collect();
        Ok(Representation { subgroup: self.subgroup, field: self.field.clone(), degree: self.degree, gens })
    }

    /// Restriction of the action to an invariant subspace given by a column basis.
    pub fn submodule(&self, basis: &Matrix) -> Representation {
        let gens = action::restrict_action(&self.gens, basis);
        Representation { subgroup: self.subgroup, field: self.field.clone(), degree: basis.cols(), gens }
    }

    /// Basis of `Hom_H(self, other)`.
    pub fn intertwiners(&self, other: &Representation) -> Result<Vec<Matrix>, RepError> {
        self.same_kind(other)?;
        Ok(action::hom_basis(&self.field, &self.gens, self.degree, &other.gens, other.degree))
    }

    pub fn endomorphisms(&self) -> Vec<Matrix> {
        action::end_basis(&self.field, &self.gens, self.degree)
    }

    pub fn is_intertwiner(&self, other: &Representation, s: &Matrix) -> bool {
        s.shape() == (other.degree, self.degree) && self.gens.iter().zip(&other.gens).all(|(x, y)| (s * x) == (y * s))
    }

    pub fn is_isomorphic<R: Rng + ?Sized>(
        &self,
        other: &Representation,
        rng: &mut R,
        samples: usize,
    ) -> Result<IsoOutcome, RepError> {
        self.same_kind(other)?;
        Ok(action::find_isomorphism(&self.field, &self.gens, self.degree, &other.gens, other.degree, rng, samples))
    }

    /// Exact decision for an indecomposable `self`: an isomorphism or a certified negative.
    pub fn isomorphic_to_indecomposable(&self, other: &Representation) -> Result<IsoOutcome, RepError> {
        self.same_kind(other)?;
        if self.degree != other.degree {
            return Ok(IsoOutcome::NotIsomorphicCertified(NonIsoReason::DegreeMismatch));
        }
        let vw = self.intertwiners(other)?;
        if vw.is_empty() {
            return Ok(IsoOutcome::NotIsomorphicCertified(NonIsoReason::NoHomomorphisms));
        }
        let wv = other.intertwiners(self)?;
        Ok(match action::local_iso(&vw, &wv) {
            Some(s) => IsoOutcome::Isomorphic(s),
            None => IsoOutcome::NotIsomorphicCertified(NonIsoReason::LocalCriterion),
        })
    }

    pub fn certificate<R: Rng + ?Sized>(&self, rng: &mut R, samples: usize) -> Certificate {
        action::certify(&self.field, &self.gens, self.degree, rng, samples)
    }

    /// Indecomposable summands, each certified.
    pub fn decompose<R: Rng + ?Sized>(&self, rng: &mut R, samples: usize) -> Result<Vec<Representation>, RepError> {
        let parts = action::split_fully(&self.field, &self.gens, self.degree, rng, samples)?;
        Ok(parts.iter().map(|b| self.submodule(b)).collect())
    }

    /// Permutation module `k(K/H)` on the left cosets of `self` in `K`.
    pub fn permutation_module(h: &Subgroup, over: &Subgroup, field: &Field) -> Result<Representation, RepError> {
        Representation::trivial(*h, field, 1).induce_to(over)
    }

    pub fn extend_scalars(&self, emb: &crate::field::Embedding) -> Representation {
        Representation {
            subgroup: self.subgroup,
            field: emb.target().clone(),
            degree: self.degree,
            gens: self.gens.iter().map(|g| g.map_field(emb)).collect(),
        }
    }

    /// Images of `a` and `b` for a representation of the whole group.
    pub fn a_image(&self) -> Matrix {
        self.image(self.params().a()).expect("a lies in the group")
    }
}

/// Left coset transversal of `h` inside `over`: first element of each coset in group order.
pub fn coset_representatives_in(h: &Subgroup, over: &Subgroup) -> Vec<GroupElem> {
    let p = *h.params();
    let members = h.elements();
    let mut covered = BTreeSet::new();
    let mut reps = Vec::new();
    for x in over.elements() {
        if covered.contains(&x) {
            continue;
        }
        reps.push(x);
        for &y in &members {
            covered.insert(p.mul(x, y));
        }
    }
    reps
}

/// `T(V) = {x ∈ D_n : ^xV ≅ V}` for `V` a representation of a normal subgroup.
/// Exact when `V` is indecomposable; otherwise uses the sampled search.
pub fn inertia_group<R: Rng + ?Sized>(v: &Representation, rng: &mut R, samples: usize) -> Result<Subgroup, RepError> {
    let h = *v.subgroup();
    if !h.is_normal() {
        return Err(RepError::NotNormal(h.name()));
    }
    let p = *v.params();
    let indecomposable = matches!(v.certificate(rng, samples), Certificate::Indecomposable { .. });
    let mut members = BTreeSet::new();
    for x in h.coset_representatives() {
        let conj = v.conjugate(x);
        let iso =
            if indecomposable { v.isomorphic_to_indecomposable(&conj)? } else { v.is_isomorphic(&conj, rng, samples)? };
        if iso.is_isomorphic() {
            members.extend(h.elements().into_iter().map(|y| p.mul(x, y)));
        }
    }
    Ok(Subgroup::from_elements(p, &members)?)
}

/// Pairs summands of two decompositions up to isomorphism. Summands must be indecomposable.
pub fn same_summands(left: &[Representation], right: &[Representation]) -> Result<bool, RepError> {
    if left.len() != right.len() {
        return Ok(false);
    }
    let mut used = vec![false; right.len()];
    'outer: for l in left {
        for (j, r) in right.iter().enumerate() {
            if !used[j] && l.isomorphic_to_indecomposable(r)?.is_isomorphic() {
                used[j] = true;
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MackeyReport {
    pub double_cosets: Vec<GroupElem>,
    pub left_summands: usize,
    pub right_summands: usize,
    pub holds: bool,
}

/// Checks `W↑^G↓_H ≅ ⊕_{HgK} (^gW)↓_{H ∩ gKg^{-1}}↑^H` by comparing Krull–Schmidt decompositions.
pub fn verify_mackey<R: Rng + ?Sized>(
    w: &Representation,
    h: &Subgroup,
    rng: &mut R,
    samples: usize,
) -> Result<MackeyReport, RepError> {
    let k = *w.subgroup();
    let g = w.params().full_group();
    let lhs = w.induce_to(&g)?.restrict(h)?;
    let reps = h.double_coset_representatives(&k);
    let mut rhs_parts = Vec::new();
    for &x in &reps {
        let conj = w.conjugate(x);
        let meet = h.intersect(conj.subgroup());
        rhs_parts.push(conj.restrict(&meet)?.induce_to(h)?);
    }
    let left = lhs.decompose(rng, samples)?;
    let mut right = Vec::new();
    for part in &rhs_parts {
        right.extend(part.decompose(rng, samples)?);
    }
    let holds = same_summands(&left, &right)?;
    Ok(MackeyReport { double_cosets: reps, left_summands: left.len(), right_summands: right.len(), holds })
}

/// Checks `W↓_H↑^G ≅ k(G/H) ⊗ W` for `W` a representation of `G` and `H` normal.
/// Returns the outcome of the isomorphism search between the two sides.
pub fn verify_induction_restriction<R: Rng + ?Sized>(
    w: &Representation,
    h: &Subgroup,
    rng: &mut R,
    samples: usize,
) -> Result<IsoOutcome, RepError> {
    if !h.is_normal() {
        return Err(RepError::NotNormal(h.name()));
    }
    let g = *w.subgroup();
    let lhs = w.restrict(h)?.induce_to(&g)?;
    let rhs = Representation::permutation_module(h, &g, w.field())?.tensor(w)?;
    lhs.is_isomorphic(&rhs, rng, samples)
}
