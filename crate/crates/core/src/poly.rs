//! Univariate polynomials over a [`Field`].

use std::collections::BTreeSet;

use crate::field::{Fe, Field};

/// Dense polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Fe) -> Poly {
        Poly::new(vec![c])
    }

    pub fn one() -> Poly {
        Poly::constant(Fe::ONE)
    }

    /// `X`.
    pub fn x() -> Poly {
        Poly { coeffs: vec![Fe::ZERO, Fe::ONE] }
    }

    /// `X - root`.
    pub fn linear(f: &Field, root: Fe) -> Poly {
        Poly::new(vec![f.neg(root), Fe::ONE])
    }

    pub fn from_ints(f: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| f.from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = f.inv(self.lead()).expect("nonzero leading coefficient");
        Poly::new(self.coeffs.iter().map(|&c| f.mul(c, inv)).collect())
    }

    pub fn add(&self, other: &Poly, f: &Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Fe::ZERO; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(Fe::ZERO);
            let b = other.coeffs.get(i).copied().unwrap_or(Fe::ZERO);
            *o = f.add(a, b);
        }
        Poly::new(out)
    }

    pub fn neg(&self, f: &Field) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly, f: &Field) -> Poly {
        self.add(&other.neg(f), f)
    }

    pub fn scale(&self, c: Fe, f: &Field) -> Poly {
        Poly::new(self.coeffs.iter().map(|&x| f.mul(c, x)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            f.axpy(&mut out[i..i + other.coeffs.len()], a, &other.coeffs);
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: usize, f: &Field) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self, f))
    }

    /// Quotient and remainder; panics when dividing by zero.
    pub fn divrem(&self, d: &Poly, f: &Field) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(d.lead()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Fe::ZERO; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = f.mul(r[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            q[k - dd] = c;
            let nc = f.neg(c);
            f.axpy(&mut r[k - dd..=k], nc, &d.coeffs);
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly, f: &Field) -> Poly {
        self.divrem(d, f).1
    }

    pub fn eval(&self, x: Fe, f: &Field) -> Fe {
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| f.mul(f.from_int(k as i64), c)).collect())
    }

    /// Multiplicity of `root` as a root of a nonzero polynomial.
    pub fn root_multiplicity(&self, root: Fe, f: &Field) -> usize {
        let lin = Poly::linear(f, root);
        let mut g = self.clone();
        let mut k = 0;
        while !g.is_zero() {
            let (q, r) = g.divrem(&lin, f);
            if !r.is_zero() {
                break;
            }
            g = q;
            k += 1;
        }
        k
    }
}

/// Monic gcd. `gcd(f, 0)` is `f` made monic; `gcd(0, 0)` is zero.
pub fn poly_gcd(a: &Poly, b: &Poly, f: &Field) -> Poly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = a.rem(&b, f);
        a = b;
        b = r;
    }
    a.monic(f)
}

/// `base^e mod modulus`; `modulus` must be nonconstant.
pub fn poly_powmod(base: &Poly, mut e: u64, modulus: &Poly, f: &Field) -> Poly {
    assert!(modulus.degree().is_some_and(|d| d > 0), "modulus must be nonconstant");
    let mut result = Poly::one();
    let mut b = base.rem(modulus, f);
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&b, f).rem(modulus, f);
        }
        b = b.mul(&b, f).rem(modulus, f);
        e >>= 1;
    }
    result
}

/// `X^{q^j} mod modulus` for `q = |F|`.
pub fn frobenius_power(j: u32, modulus: &Poly, f: &Field) -> Poly {
    let mut x = Poly::x().rem(modulus, f);
    for _ in 0..j {
        x = poly_powmod(&x, f.order() as u64, modulus, f);
    }
    x
}

/// Product of the distinct irreducible factors of degree `j` of a nonzero `g`,
/// relative to the linear-factor content `gcd(g, X^{q^j} - X)`.
pub fn degree_part(g: &Poly, j: u32, f: &Field) -> Poly {
    if g.degree().unwrap_or(0) == 0 {
        return Poly::one();
    }
    let xq = frobenius_power(j, g, f);
    poly_gcd(g, &xq.sub(&Poly::x(), f), f)
}

/// Distinct roots of a nonzero polynomial lying in the field.
pub fn roots_in_field(g: &Poly, f: &Field) -> BTreeSet<Fe> {
    let locus = degree_part(g, 1, f);
    match locus.degree() {
        None | Some(0) => BTreeSet::new(),
        Some(1) => {
            let c = locus.coeffs()[0];
            [f.neg(c)].into_iter().collect()
        }
        Some(d) => {
            let mut out = BTreeSet::new();
            for x in f.elements() {
                if locus.eval(x, f).is_zero() {
                    out.insert(x);
                    if out.len() == d {
                        break;
                    }
                }
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::for_root_of_unity(3, 1).unwrap()
    }

    #[test]
    fn double_root_mod_three() {
        let f = f3();
        let g = Poly::from_ints(&f, &[1, 1, 1]);
        let roots = roots_in_field(&g, &f);
        assert_eq!(roots.into_iter().collect::<Vec<_>>(), vec![Fe::ONE]);
        assert_eq!(g.root_multiplicity(Fe::ONE, &f), 2);
    }

    #[test]
    fn two_is_not_a_square_mod_three() {
        let f = f3();
        let g = Poly::from_ints(&f, &[-2, 0, 1]);
        assert!(roots_in_field(&g, &f).is_empty());
        // squares of F_3 are {0, 1}
        let squares: BTreeSet<_> = f.elements().map(|x| f.mul(x, x)).collect();
        assert!(!squares.contains(&f.from_int(2)));
    }

    #[test]
    fn gcd_with_zero_is_monic_input() {
        let f = f3();
        let g = Poly::from_ints(&f, &[1, 0, 2]);
        assert_eq!(poly_gcd(&g, &Poly::zero(), &f), Poly::from_ints(&f, &[2, 0, 1]));
        assert!(poly_gcd(&Poly::zero(), &Poly::zero(), &f).is_zero());
    }

    #[test]
    fn gcd_of_products() {
        let f = Field::for_root_of_unity(7, 3).unwrap();
        let a = Poly::from_ints(&f, &[1, 1]).mul(&Poly::from_ints(&f, &[1, 0, 1]), &f);
        let b = Poly::from_ints(&f, &[1, 1]).mul(&Poly::from_ints(&f, &[-2, 1]), &f);
        assert_eq!(poly_gcd(&a, &b, &f), Poly::from_ints(&f, &[1, 1]));
    }

    #[test]
    fn divrem_reconstructs() {
        let f = Field::for_root_of_unity(5, 3).unwrap();
        let a = Poly::from_ints(&f, &[3, 1, 4, 1, 5, 9, 2, 6]);
        let d = Poly::from_ints(&f, &[2, 7, 1, 8]);
        let (q, r) = a.divrem(&d, &f);
        assert_eq!(q.mul(&d, &f).add(&r, &f), a);
        assert!(r.degree().unwrap_or(0) < 3);
    }

    #[test]
    fn roots_over_extension_field() {
        // X^4 - 1 splits completely over F_9
        let f = Field::for_root_of_unity(3, 4).unwrap();
        let g = Poly::new(vec![f.from_int(-1), Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ONE]);
        let roots = roots_in_field(&g, &f);
        assert_eq!(roots.len(), 4);
        for r in roots {
            assert!(g.eval(r, &f).is_zero());
        }
    }

    #[test]
    fn powmod_matches_repeated_multiplication() {
        let f = Field::for_root_of_unity(3, 4).unwrap();
        let m = Poly::from_ints(&f, &[2, 1, 0, 1]);
        let base = Poly::from_ints(&f, &[1, 2]);
        let mut naive = Poly::one();
        for e in 0..20u64 {
            assert_eq!(poly_powmod(&base, e, &m, &f), naive);
            naive = naive.mul(&base, &f).rem(&m, &f);
        }
    }
}
