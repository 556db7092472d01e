//! Modules presented by a tuple of action matrices (one per algebra generator).
//!
//! Group representations and graded modules both reduce to this: a homomorphism
//! `V -> W` is a matrix commuting with each paired generator. Everything here is
//! independent of where the generators came from.

use rand::Rng;
use thiserror::Error;

use crate::field::{Fe, Field};
use crate::matrix::{commutant_solve, Echelon, Matrix};
use crate::poly::{degree_part, roots_in_field};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ActionError {
    #[error("could not decide decomposition of a {dim}-dimensional module within the sampling budget")]
    Inconclusive { dim: usize },
}

/// Outcome of the indecomposability test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `End(V) = k·I ⊕ N` with `N` nilpotent: `End(V)` is local with residue field `k`
    /// over every extension of `k`.
    Indecomposable { end_dim: usize },
    /// Complementary submodules, as column bases in the module's coordinates.
    Decomposed { first: Matrix, second: Matrix },
    /// Neither certified nor split within the budget.
    Inconclusive { end_dim: usize },
}

impl Certificate {
    pub fn status(&self) -> &'static str {
        match self {
            Certificate::Indecomposable { .. } => "certified-indecomposable",
            Certificate::Decomposed { .. } => "decomposed",
            Certificate::Inconclusive { .. } => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonIsoReason {
    DegreeMismatch,
    NoHomomorphisms,
    EndomorphismDimensions,
    HomDimension,
    /// The source is indecomposable and no composite `W -> V -> W` of basis maps is invertible.
    LocalCriterion,
}

impl NonIsoReason {
    pub fn describe(&self) -> &'static str {
        match self {
            NonIsoReason::DegreeMismatch => "degrees differ",
            NonIsoReason::NoHomomorphisms => "dim Hom = 0",
            NonIsoReason::EndomorphismDimensions => "endomorphism algebras have different dimensions",
            NonIsoReason::HomDimension => "dim Hom(V, W) differs from dim End(V)",
            NonIsoReason::LocalCriterion => "no invertible composite through an indecomposable source",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoOutcome {
    /// Witness `S` with `S·ρ_V(g) = ρ_W(g)·S`, `S` invertible.
    Isomorphic(Matrix),
    /// An invertible intertwiner exists after extending scalars to this degree over `F_p`;
    /// the modules are then isomorphic over the base field as well.
    IsomorphicOverExtension {
        degree: u32,
    },
    NotIsomorphicCertified(NonIsoReason),
    NotIsomorphicProbabilistic {
        samples: usize,
    },
}

impl IsoOutcome {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_) | IsoOutcome::IsomorphicOverExtension { .. })
    }

    pub fn witness(&self) -> Option<&Matrix> {
        match self {
            IsoOutcome::Isomorphic(s) => Some(s),
            _ => None,
        }
    }
}

fn dim_of(gens: &[Matrix], fallback: usize) -> usize {
    gens.first().map_or(fallback, Matrix::rows)
}

/// Basis of `Hom(V, W)`; `src` and `dst` are paired generator images.
pub fn hom_basis(field: &Field, src: &[Matrix], src_dim: usize, dst: &[Matrix], dst_dim: usize) -> Vec<Matrix> {
    assert_eq!(src.len(), dst.len(), "generator lists must pair up");
    let pairs: Vec<(Matrix, Matrix)> = src.iter().cloned().zip(dst.iter().cloned()).collect();
    commutant_solve(&pairs, field, src_dim, dst_dim)
}

pub fn end_basis(field: &Field, gens: &[Matrix], dim: usize) -> Vec<Matrix> {
    hom_basis(field, gens, dim, gens, dim)
}

/// Restriction of the action to an invariant subspace with column basis `basis`.
pub fn restrict_action(gens: &[Matrix], basis: &Matrix) -> Vec<Matrix> {
    gens.iter().map(|g| basis.coordinates(&(g * basis)).expect("subspace is invariant")).collect()
}

pub fn random_combination<R: Rng + ?Sized>(field: &Field, basis: &[Matrix], rng: &mut R) -> Matrix {
    let mut acc = Matrix::zeros(field, basis[0].rows(), basis[0].cols());
    for b in basis {
        acc = &acc + &b.scale(field.random(rng));
    }
    acc
}

/// `λ` if the characteristic polynomial of `u` is `(X - λ)^d` with `λ` in the field.
fn single_eigenvalue(u: &Matrix) -> Option<Fe> {
    let f = u.field();
    let cp = u.char_poly().expect("square");
    let roots = roots_in_field(&cp, f);
    let mut it = roots.into_iter();
    let lambda = it.next()?;
    (it.next().is_none() && cp.root_multiplicity(lambda, f) == u.rows()).then_some(lambda)
}

/// Whether the associative algebra generated by `elems` acts nilpotently on `k^dim`.
fn generates_nilpotent(field: &Field, elems: &[Matrix], dim: usize) -> bool {
    let mut current: Vec<Vec<Fe>> = (0..dim)
        .map(|i| {
            let mut v = vec![Fe::ZERO; dim];
            v[i] = Fe::ONE;
            v
        })
        .collect();
    loop {
        let mut next = Echelon::new(field, dim);
        for n in elems {
            for w in &current {
                next.insert(&n.mul_vec(w));
            }
        }
        if next.rank() == 0 {
            return true;
        }
        if next.rank() == current.len() {
            return false;
        }
        current = next.reduced_basis();
    }
}

/// Attempts a Fitting splitting driven by the characteristic polynomial of `u ∈ End(V)`.
fn split_with(u: &Matrix) -> Option<(Matrix, Matrix)> {
    let f = u.field();
    let d = u.rows();
    let cp = u.char_poly().expect("square");
    for lambda in roots_in_field(&cp, f) {
        if cp.root_multiplicity(lambda, f) < d {
            let shifted = u - &Matrix::scalar(f, d, lambda);
            if let Some(split) = shifted.fitting_split() {
                return Some(split);
            }
        }
    }
    for j in 1..=d as u32 {
        let h = degree_part(&cp, j, f);
        if h.degree().unwrap_or(0) == 0 || h.degree() == cp.degree() {
            continue;
        }
        if let Some(split) = u.eval_poly(&h).fitting_split() {
            return Some(split);
        }
    }
    None
}

/// Certificate of absolute indecomposability, or an explicit splitting.
pub fn certify<R: Rng + ?Sized>(
    field: &Field,
    gens: &[Matrix],
    dim: usize,
    rng: &mut R,
    samples: usize,
) -> Certificate {
    let end = end_basis(field, gens, dim);
    certify_with_end(field, &end, dim, rng, samples)
}

pub fn certify_with_end<R: Rng + ?Sized>(
    field: &Field,
    end: &[Matrix],
    dim: usize,
    rng: &mut R,
    samples: usize,
) -> Certificate {
    let end_dim = end.len();
    if dim == 0 {
        return Certificate::Inconclusive { end_dim };
    }
    let mut nil = Vec::with_capacity(end.len());
    for u in end {
        match single_eigenvalue(u) {
            Some(lambda) => nil.push(u - &Matrix::scalar(field, dim, lambda)),
            None => {
                nil.clear();
                break;
            }
        }
    }
    if nil.len() == end.len() && generates_nilpotent(field, &nil, dim) {
        return Certificate::Indecomposable { end_dim };
    }
    for u in end {
        if let Some((first, second)) = split_with(u) {
            return Certificate::Decomposed { first, second };
        }
    }
    for _ in 0..samples {
        let u = random_combination(field, end, rng);
        if let Some((first, second)) = split_with(&u) {
            return Certificate::Decomposed { first, second };
        }
    }
    Certificate::Inconclusive { end_dim }
}

/// Splits into indecomposable summands; returns one column basis per summand
/// in the module's own coordinates. Summands come back in discovery order.
pub fn split_fully<R: Rng + ?Sized>(
    field: &Field,
    gens: &[Matrix],
    dim: usize,
    rng: &mut R,
    samples: usize,
) -> Result<Vec<Matrix>, ActionError> {
    let mut done = Vec::new();
    let mut stack = vec![(Matrix::identity(field, dim), gens.to_vec())];
    while let Some((basis, local)) = stack.pop() {
        let d = basis.cols();
        match certify(field, &local, d, rng, samples) {
            Certificate::Indecomposable { .. } => done.push(basis),
            Certificate::Decomposed { first, second } => {
                for part in [second, first] {
                    let sub = restrict_action(&local, &part);
                    stack.push((&basis * &part, sub));
                }
            }
            Certificate::Inconclusive { .. } => return Err(ActionError::Inconclusive { dim: d }),
        }
    }
    Ok(done)
}

/// For an indecomposable source `V` of the same dimension as `W`: `V ≅ W` iff some
/// composite `g ∘ f` of basis maps is invertible, and then `f` itself is an isomorphism.
pub fn local_iso(hom_vw: &[Matrix], hom_wv: &[Matrix]) -> Option<Matrix> {
    for f in hom_vw {
        if !f.is_square() {
            return None;
        }
        for g in hom_wv {
            if (g * f).is_invertible() {
                return Some(f.clone());
            }
        }
    }
    None
}

/// Searches `Hom(V, W)` for an invertible element: basis elements, then seeded random
/// combinations, then (for small fields) random combinations over an extension.
pub fn find_isomorphism<R: Rng + ?Sized>(
    field: &Field,
    src: &[Matrix],
    src_dim: usize,
    dst: &[Matrix],
    dst_dim: usize,
    rng: &mut R,
    samples: usize,
) -> IsoOutcome {
    if src_dim != dst_dim {
        return IsoOutcome::NotIsomorphicCertified(NonIsoReason::DegreeMismatch);
    }
    let hom = hom_basis(field, src, src_dim, dst, dst_dim);
    if hom.is_empty() {
        return IsoOutcome::NotIsomorphicCertified(NonIsoReason::NoHomomorphisms);
    }
    let end_v = end_basis(field, src, src_dim).len();
    let end_w = end_basis(field, dst, dst_dim).len();
    if end_v != end_w {
        return IsoOutcome::NotIsomorphicCertified(NonIsoReason::EndomorphismDimensions);
    }
    if hom.len() != end_v {
        return IsoOutcome::NotIsomorphicCertified(NonIsoReason::HomDimension);
    }
    if let Some(s) = hom.iter().find(|s| s.is_invertible()) {
        return IsoOutcome::Isomorphic(s.clone());
    }
    for _ in 0..samples {
        let s = random_combination(field, &hom, rng);
        if s.is_invertible() {
            return IsoOutcome::Isomorphic(s);
        }
    }
    if (field.order() as usize) < 2 * src_dim {
        let mut k = 2;
        while (field.order() as u64).pow(k) < 2 * src_dim as u64 {
            k += 1;
        }
        let ext_degree = field.degree() * k;
        if let Some(emb) = Field::with_degree(field.characteristic() as u64, ext_degree)
            .ok()
            .and_then(|ext| field.embedding_into(&ext))
        {
            let lifted: Vec<Matrix> = hom.iter().map(|h| h.map_field(&emb)).collect();
            for _ in 0..samples {
                if random_combination(emb.target(), &lifted, rng).is_invertible() {
                    return IsoOutcome::IsomorphicOverExtension { degree: ext_degree };
                }
            }
        }
    }
    IsoOutcome::NotIsomorphicProbabilistic { samples }
}

/// Invariants preserved by isomorphism, cheap enough to pre-filter label searches.
pub fn similarity_fingerprint(gens: &[Matrix]) -> Vec<Vec<Fe>> {
    gens.iter().map(|g| g.char_poly().expect("square").coeffs().to_vec()).collect()
}

pub fn dimension(gens: &[Matrix]) -> usize {
    dim_of(gens, 0)
}
