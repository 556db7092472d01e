//! The explicit indecomposable representations of `kD_n`, `kC_n` and the small
//! centralizer subgroups, with the structured matrices they are built from.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::action::{self, IsoOutcome};
use crate::field::{Fe, Field, FieldError};
use crate::groups::{DihedralParams, GroupError, Subgroup, SubgroupKind};
use crate::matrix::Matrix;
use crate::rep::{RepError, Representation};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("r = {r} out of range 1..={max}")]
    RankOutOfRange { r: u32, max: u32 },
    #[error("i = {i} out of range {lo}..={hi}")]
    IndexOutOfRange { i: u32, lo: u32, hi: u32 },
    #[error("the parameter t/2 requires even t (t = {0})")]
    OddT(u32),
    #[error("no catalog for subgroup {0}")]
    UnsupportedSubgroup(String),
    #[error("summand matches both {0} and {1}")]
    AmbiguousLabel(String, String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

impl CatalogError {
    /// The randomized splitting search ran out of samples.
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, CatalogError::Rep(e) if e.is_inconclusive())
    }
}

/// `D_n` together with the field `F_p(ξ)` and the chosen primitive `t`-th root `ξ`.
#[derive(Debug, Clone)]
pub struct Setting {
    pub params: DihedralParams,
    pub field: Field,
    pub xi: Fe,
}

impl Setting {
    pub fn new(p: u64, n: u64) -> Result<Setting, CatalogError> {
        let params = DihedralParams::new(p, n)?;
        let field = Field::for_root_of_unity(p, params.t() as u64)?;
        let xi = field.primitive_root_of_unity(params.t() as u64)?;
        Ok(Setting { params, field, xi })
    }

    pub fn xi_pow(&self, e: i64) -> Fe {
        self.field.pow(self.xi, e).expect("ξ is nonzero")
    }

    fn check_rank(&self, r: u32) -> Result<(), CatalogError> {
        let max = self.params.p_part();
        if r == 0 || r > max {
            return Err(CatalogError::RankOutOfRange { r, max });
        }
        Ok(())
    }

    fn check_index(&self, i: u32) -> Result<(), CatalogError> {
        let t = self.params.t();
        if i >= t {
            return Err(CatalogError::IndexOutOfRange { i, lo: 0, hi: t - 1 });
        }
        Ok(())
    }

    fn half_t(&self) -> Result<u32, CatalogError> {
        let t = self.params.t();
        if t % 2 == 1 {
            return Err(CatalogError::OddT(t));
        }
        Ok(t / 2)
    }

    /// `A_{r,i}`: upper bidiagonal, `ξ^i` on the diagonal, `1` above it.
    pub fn a_matrix(&self, r: u32, i: u32) -> Result<Matrix, CatalogError> {
        self.check_rank(r)?;
        self.check_index(i)?;
        let r = r as usize;
        let mut m = Matrix::scalar(&self.field, r, self.xi_pow(i as i64));
        for k in 0..r.saturating_sub(1) {
            m.set(k, k + 1, Fe::ONE);
        }
        Ok(m)
    }

    /// `A_{r,i}^{-1}` from its closed form: entry `(v, u)` is `(-1)^{u-v} ξ^{-(u-v+1)i}` for `u ≥ v`.
    pub fn a_inverse_closed_form(&self, r: u32, i: u32) -> Result<Matrix, CatalogError> {
        self.check_rank(r)?;
        self.check_index(i)?;
        let f = &self.field;
        let r = r as usize;
        let mut m = Matrix::zeros(f, r, r);
        for v in 0..r {
            for u in v..r {
                let k = (u - v) as i64;
                let mut x = self.xi_pow(-(k + 1) * i as i64);
                if k % 2 == 1 {
                    x = f.neg(x);
                }
                m.set(v, u, x);
            }
        }
        Ok(m)
    }

    /// Upper triangular `t_rr = 1`, `t_ii = -t_{i+1,i+1}`, `t_ij = -w t_{i+1,j} - t_{i+1,j+1}`,
    /// out-of-range entries read as zero.
    fn reflection_matrix(&self, r: u32, w: Fe) -> Matrix {
        let f = &self.field;
        let r = r as usize;
        let mut m = Matrix::zeros(f, r, r);
        m.set(r - 1, r - 1, Fe::ONE);
        for i in (0..r - 1).rev() {
            m.set(i, i, f.neg(m.get(i + 1, i + 1)));
            for j in i + 1..r {
                let below = m.get(i + 1, j);
                let diag = if j + 1 < r { m.get(i + 1, j + 1) } else { Fe::ZERO };
                m.set(i, j, f.neg(f.add(f.mul(w, below), diag)));
            }
        }
        m
    }

    /// The involution `T` with `A_{r,0} T A_{r,0} = T`.
    pub fn t_matrix(&self, r: u32) -> Result<Matrix, CatalogError> {
        self.check_rank(r)?;
        Ok(self.reflection_matrix(r, Fe::ONE))
    }

    /// The involution `T_1` with `A_{r,t/2} T_1 A_{r,t/2} = T_1` (even `t`).
    pub fn t1_matrix(&self, r: u32) -> Result<Matrix, CatalogError> {
        self.check_rank(r)?;
        let h = self.half_t()?;
        Ok(self.reflection_matrix(r, self.xi_pow(h as i64)))
    }

    /// Upper triangular `X` with `A_{r,i} X = X A_{r,t-i}^{-1}`: first row all ones,
    /// `x_{2k} = -ξ^{2i} Σ_{y=0}^{k-2} (-ξ^i)^y`, and for `3 ≤ j ≤ k`
    /// `x_{jk} = Σ_{y=j-1}^{k-1} (-1)^{k-y} ξ^{(k+1-y)i} x_{j-1,y}` (1-indexed).
    pub fn x_matrix(&self, r: u32, i: u32) -> Result<Matrix, CatalogError> {
        self.check_rank(r)?;
        self.check_index(i)?;
        let f = &self.field;
        let r = r as usize;
        let i = i as i64;
        let mut x = Matrix::zeros(f, r, r);
        // 1-indexed accessors
        let at = |m: &Matrix, j: usize, k: usize| m.get(j - 1, k - 1);
        for k in 1..=r {
            x.set(0, k - 1, Fe::ONE);
        }
        let minus_xi = f.neg(self.xi_pow(i));
        for k in 2..=r {
            let mut sum = Fe::ZERO;
            for y in 0..=(k - 2) {
                sum = f.add(sum, f.pow(minus_xi, y as i64).expect("nonzero"));
            }
            x.set(1, k - 1, f.neg(f.mul(self.xi_pow(2 * i), sum)));
        }
        for j in 3..=r {
            for k in j..=r {
                let mut sum = Fe::ZERO;
                for y in (j - 1)..=(k - 1) {
                    let mut term = f.mul(self.xi_pow((k as i64 + 1 - y as i64) * i), at(&x, j - 1, y));
                    if (k - y) % 2 == 1 {
                        term = f.neg(term);
                    }
                    sum = f.add(sum, term);
                }
                x.set(j - 1, k - 1, sum);
            }
        }
        Ok(x)
    }

    /// `ρ_{r,i}` on `C_n`: `a ↦ A_{r,i}`.
    pub fn rho_cyclic(&self, r: u32, i: u32) -> Result<Representation, CatalogError> {
        Ok(Representation::cyclic(self.params, &self.field, self.a_matrix(r, i)?)?)
    }

    /// `Φ_{r,j}` / `Φ'_{r,j}` for `j ∈ {0, t/2}`: `a ↦ A_{r,j}`, `b ↦ ±T` (or `±T_1`).
    pub fn phi(&self, r: u32, j: u32, sign: Sign) -> Result<CatalogEntry, CatalogError> {
        let b = if j == 0 {
            self.t_matrix(r)?
        } else if j == self.half_t()? {
            self.t1_matrix(r)?
        } else {
            let hi = self.params.t() / 2;
            return Err(CatalogError::IndexOutOfRange { i: j, lo: 0, hi });
        };
        let b = if sign == Sign::Minus { b.neg() } else { b };
        let rep = Representation::dihedral(self.params, &self.field, self.a_matrix(r, j)?, b)?;
        let construction = match (j, sign) {
            (0, Sign::Plus) => "a -> A(r,0), b -> T",
            (0, Sign::Minus) => "a -> A(r,0), b -> -T",
            (_, Sign::Plus) => "a -> A(r,t/2), b -> T1",
            (_, Sign::Minus) => "a -> A(r,t/2), b -> -T1",
        };
        Ok(CatalogEntry { label: Label::Phi { r, j, sign }, rep, construction: construction.to_string() })
    }

    /// `ρ_{r,i}` induced from `C_n`, for any `0 ≤ i < t`.
    pub fn induced_cyclic(&self, r: u32, i: u32) -> Result<Representation, CatalogError> {
        Ok(self.rho_cyclic(r, i)?.induce()?)
    }

    /// `Ω_{2r,i}` for `1 ≤ i < t/2`: the induced module, indecomposable.
    pub fn omega(&self, r: u32, i: u32) -> Result<CatalogEntry, CatalogError> {
        let hi = (self.params.t() - 1) / 2;
        if i == 0 || i > hi {
            return Err(CatalogError::IndexOutOfRange { i, lo: 1, hi });
        }
        let rep = self.induced_cyclic(r, i)?;
        Ok(CatalogEntry { label: Label::Omega { r, i }, rep, construction: "induced from Rho(r,i) on C_n".to_string() })
    }

    /// Block-antidiagonal `(X, X)`: an isomorphism from `Ω_{2r,t-i}` to `Ω_{2r,i}`.
    pub fn pairing_witness(&self, r: u32, i: u32) -> Result<Matrix, CatalogError> {
        let x = self.x_matrix(r, i)?;
        let z = Matrix::zeros(&self.field, r as usize, r as usize);
        Ok(Matrix::block(&[vec![z.clone(), x.clone()], vec![x, z]]).expect("square blocks"))
    }

    /// Complete list of indecomposable `kD_n`-modules: `Φ` entries by `(r, j, sign)`,
    /// then `Ω` entries by `(r, i)`.
    pub fn full_catalog(&self) -> Result<Vec<CatalogEntry>, CatalogError> {
        let ps = self.params.p_part();
        let t = self.params.t();
        let mut js = vec![0];
        if t.is_multiple_of(2) {
            js.push(t / 2);
        }
        let mut out = Vec::new();
        for r in 1..=ps {
            for &j in &js {
                for sign in [Sign::Plus, Sign::Minus] {
                    out.push(self.phi(r, j, sign)?);
                }
            }
        }
        for r in 1..=ps {
            for i in 1..=(t - 1) / 2 {
                out.push(self.omega(r, i)?);
            }
        }
        Ok(out)
    }

    /// The simple modules among the catalog entries.
    pub fn simple_sublist(&self) -> Result<Vec<CatalogEntry>, CatalogError> {
        let t = self.params.t();
        let mut out = vec![self.phi(1, 0, Sign::Plus)?, self.phi(1, 0, Sign::Minus)?];
        if t.is_multiple_of(2) {
            out.push(self.phi(1, t / 2, Sign::Plus)?);
            out.push(self.phi(1, t / 2, Sign::Minus)?);
        }
        for i in 1..=(t - 1) / 2 {
            out.push(self.omega(1, i)?);
        }
        Ok(out)
    }

    /// `ρ_{r,i}` for all `1 ≤ r ≤ p^s`, `0 ≤ i < t`.
    pub fn cyclic_catalog(&self) -> Result<Vec<CatalogEntry>, CatalogError> {
        let mut out = Vec::new();
        for r in 1..=self.params.p_part() {
            for i in 0..self.params.t() {
                out.push(CatalogEntry {
                    label: Label::Rho { r, i },
                    rep: self.rho_cyclic(r, i)?,
                    construction: "a -> A(r,i)".to_string(),
                });
            }
        }
        Ok(out)
    }

    /// The four characters of the Klein group `<a^{n/2}, a^j b>`, signs on the
    /// generators in the order `(1,1), (1,-1), (-1,1), (-1,-1)`.
    pub fn klein_simples(&self, j: u32) -> Result<Vec<CatalogEntry>, CatalogError> {
        if !self.params.is_even() {
            return Err(CatalogError::UnsupportedSubgroup("Klein four subgroup for odd n".to_string()));
        }
        let k = Subgroup::klein(self.params, j);
        let signs = [(1, 1), (1, -1), (-1, 1), (-1, -1)];
        signs
            .iter()
            .enumerate()
            .map(|(m, &(x, y))| {
                let gens = vec![Matrix::from_ints(&self.field, 1, 1, &[x]), Matrix::from_ints(&self.field, 1, 1, &[y])];
                Ok(CatalogEntry {
                    label: Label::KleinSimple(m as u32 + 1),
                    rep: Representation::new(k, &self.field, gens)?,
                    construction: format!("signs ({x}, {y}) on the two generators"),
                })
            })
            .collect()
    }

    /// The two characters of an order-two subgroup `<a^j b>`; entry `m` has the
    /// reflection acting by `(-1)^m`.
    pub fn order_two_simples(&self, j: u32) -> Result<Vec<CatalogEntry>, CatalogError> {
        let h = Subgroup::dihedral(self.params, self.params.n(), j);
        (1..=2)
            .map(|m| {
                let sign = if m == 1 { -1 } else { 1 };
                Ok(CatalogEntry {
                    label: Label::OrderTwoSimple(m),
                    rep: Representation::new(h, &self.field, vec![Matrix::from_ints(&self.field, 1, 1, &[sign])])?,
                    construction: format!("reflection acts by {sign}"),
                })
            })
            .collect()
    }

    /// Indecomposable modules of a centralizer subgroup.
    pub fn subgroup_catalog(&self, h: &Subgroup) -> Result<Vec<CatalogEntry>, CatalogError> {
        let n = self.params.n();
        match h.kind() {
            SubgroupKind::Dihedral { step: 1, .. } => self.full_catalog(),
            SubgroupKind::Cyclic { step: 1 } => self.cyclic_catalog(),
            SubgroupKind::Dihedral { step, refl } if step == n => self.order_two_simples(refl),
            SubgroupKind::Dihedral { step, refl } if 2 * step == n => self.klein_simples(refl),
            _ => Err(CatalogError::UnsupportedSubgroup(h.name())),
        }
    }
}

/// `(t+3)/2 · p^s` for odd `n`, `(t+6)/2 · p^s` for even `n`.
pub fn expected_count(params: &DihedralParams) -> u64 {
    let t = params.t() as u64;
    let ps = params.p_part() as u64;
    if params.is_even() {
        (t + 6) / 2 * ps
    } else {
        (t + 3) / 2 * ps
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Phi {
        r: u32,
        j: u32,
        sign: Sign,
    },
    /// Displays with the dimension `2r`.
    Omega {
        r: u32,
        i: u32,
    },
    Rho {
        r: u32,
        i: u32,
    },
    KleinSimple(u32),
    OrderTwoSimple(u32),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Phi { r, j, sign } => write!(f, "Phi({r},{j},{sign})"),
            Label::Omega { r, i } => write!(f, "Omega({},{i})", 2 * r),
            Label::Rho { r, i } => write!(f, "Rho({r},{i})"),
            Label::KleinSimple(m) => write!(f, "KleinSimple({m})"),
            Label::OrderTwoSimple(m) => write!(f, "OrderTwoSimple({m})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub label: Label,
    pub rep: Representation,
    pub construction: String,
}

/// A summand found by [`krull_schmidt`], labeled when it matches a catalog entry.
#[derive(Debug, Clone)]
pub struct Summand {
    pub label: Option<Label>,
    pub rep: Representation,
}

/// Catalog entries with precomputed isomorphism invariants for fast labeling.
pub struct Labeler<'a> {
    entries: &'a [CatalogEntry],
    fingerprints: Vec<Vec<Vec<Fe>>>,
}

impl<'a> Labeler<'a> {
    pub fn new(entries: &'a [CatalogEntry]) -> Labeler<'a> {
        let fingerprints = entries.iter().map(|e| action::similarity_fingerprint(e.rep.generators())).collect();
        Labeler { entries, fingerprints }
    }

    /// The unique catalog entry isomorphic to an indecomposable `rep`; two matches is an error.
    pub fn label(&self, rep: &Representation) -> Result<Option<Label>, CatalogError> {
        let fp = action::similarity_fingerprint(rep.generators());
        let mut found: Option<Label> = None;
        for (e, efp) in self.entries.iter().zip(&self.fingerprints) {
            if e.rep.degree() != rep.degree() || e.rep.subgroup() != rep.subgroup() || *efp != fp {
                continue;
            }
            if let IsoOutcome::Isomorphic(_) = e.rep.isomorphic_to_indecomposable(rep)? {
                if let Some(prev) = found {
                    return Err(CatalogError::AmbiguousLabel(prev.to_string(), e.label.to_string()));
                }
                found = Some(e.label);
            }
        }
        Ok(found)
    }
}

/// Splits into certified indecomposables and labels each against the catalog.
pub fn krull_schmidt<R: Rng + ?Sized>(
    rep: &Representation,
    catalog: &[CatalogEntry],
    rng: &mut R,
    samples: usize,
) -> Result<Vec<Summand>, CatalogError> {
    let labeler = Labeler::new(catalog);
    let parts = rep.decompose(rng, samples)?;
    parts.into_iter().map(|p| Ok(Summand { label: labeler.label(&p)?, rep: p })).collect()
}

/// Sorted label strings, unlabeled summands shown as `?<dim>`.
pub fn label_multiset(summands: &[Summand]) -> Vec<String> {
    let mut out: Vec<String> =
        summands.iter().map(|s| s.label.map_or_else(|| format!("?{}", s.rep.degree()), |l| l.to_string())).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_matrices() {
        let s = Setting::new(3, 3).unwrap();
        let f = &s.field;
        assert_eq!(s.t_matrix(2).unwrap(), Matrix::from_ints(f, 2, 2, &[-1, -1, 0, 1]));
        assert_eq!(s.t_matrix(3).unwrap(), Matrix::from_ints(f, 3, 3, &[1, 2, 1, 0, -1, -1, 0, 0, 1]));
        assert_eq!(s.t_matrix(1).unwrap(), Matrix::identity(f, 1));
        assert_eq!(s.a_inverse_closed_form(2, 0).unwrap(), Matrix::from_ints(f, 2, 2, &[1, -1, 0, 1]));
        assert_eq!(s.t1_matrix(2), Err(CatalogError::OddT(1)));
        let s = Setting::new(3, 6).unwrap();
        assert_eq!(s.t1_matrix(2).unwrap(), Matrix::from_ints(&s.field, 2, 2, &[-1, 1, 0, 1]));
    }

    #[test]
    fn x_matrix_for_rank_two() {
        let s = Setting::new(5, 15).unwrap();
        for i in 0..3 {
            let x = s.x_matrix(2, i).unwrap();
            let expected =
                Matrix::from_vec(&s.field, 2, 2, vec![Fe::ONE, Fe::ONE, Fe::ZERO, s.field.neg(s.xi_pow(2 * i as i64))]);
            assert_eq!(x, expected);
        }
    }

    #[test]
    fn range_errors() {
        let s = Setting::new(3, 9).unwrap();
        assert!(matches!(s.rho_cyclic(10, 0), Err(CatalogError::RankOutOfRange { .. })));
        assert!(matches!(s.omega(1, 0), Err(CatalogError::IndexOutOfRange { .. })));
        let s = Setting::new(3, 12).unwrap();
        assert!(matches!(s.omega(1, 2), Err(CatalogError::IndexOutOfRange { .. })));
        assert!(s.omega(1, 1).is_ok());
    }

    #[test]
    fn labels_render() {
        assert_eq!(Label::Omega { r: 3, i: 1 }.to_string(), "Omega(6,1)");
        assert_eq!(Label::Phi { r: 2, j: 0, sign: Sign::Minus }.to_string(), "Phi(2,0,-)");
    }

    #[test]
    fn catalog_sizes() {
        for (p, n, want) in [(3, 3, 6), (3, 6, 12), (3, 12, 15), (5, 5, 10)] {
            let s = Setting::new(p, n).unwrap();
            assert_eq!(s.full_catalog().unwrap().len(), want);
            assert_eq!(expected_count(&s.params), want as u64);
        }
    }
}
