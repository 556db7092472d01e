//! Finite fields `F_{p^m}` with table-driven arithmetic.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{m-1} p^{m-1}` where
//! `c_k` are the coefficients of the element in the power basis of the
//! extension generator (ascending powers). For `m = 1` this is just the
//! canonical representative in `0..p`. Ordering of elements ("smallest",
//! "lexicographic") always refers to this encoding.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest field order for which log/exp tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not an odd prime")]
    BadCharacteristic(u64),
    #[error("root-of-unity order must be positive")]
    ZeroOrder,
    #[error("gcd({p}, {t}) != 1")]
    NotCoprime { p: u64, t: u64 },
    #[error("field of order {p}^{m} is larger than supported ({MAX_FIELD_ORDER})")]
    TooLarge { p: u64, m: u32 },
    #[error("{t} does not divide {order} = |F^*|, no primitive {t}-th root of unity")]
    NoRootOfUnity { t: u64, order: u64 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("coefficient vector has length {got}, expected {expected}")]
    BadLength { got: usize, expected: usize },
    #[error("coefficient {0} is not reduced")]
    Unreduced(u64),
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    BadModulus(u32),
}

/// A field element, encoded as described in the module docs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

const NO_LOG: u32 = u32::MAX;

pub struct FieldCtx {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

/// Shared handle to an immutable field context.
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.m, self.0.modulus)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of `p` modulo `t` (1 when `t = 1`).
pub fn multiplicative_order(p: u64, t: u64) -> u32 {
    if t == 1 {
        return 1;
    }
    let mut acc = p % t;
    let mut k = 1;
    while acc != 1 {
        acc = acc * p % t;
        k += 1;
    }
    k
}

/// Dense polynomials over F_p used only while constructing a field.
mod fp {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn inv(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv(m[dm], p) as u64;
        while a.len() > dm {
            let da = a.len() - 1;
            let c = a[da] as u64 * lead_inv % p as u64;
            for (k, &mk) in m.iter().enumerate() {
                let idx = da - dm + k;
                a[idx] = ((a[idx] as u64 + (p as u64 - c) * mk as u64) % p as u64) as u32;
            }
            a = trim(a);
        }
        a
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        rem(&mul(a, b, p), m, p)
    }

    pub fn powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut r = vec![1];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(&r, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            e >>= 1;
        }
        r
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or irreducibility test for a polynomial of degree >= 1.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        if deg == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut xp = x.clone();
        for _ in 1..=deg / 2 {
            xp = powmod(&xp, p as u64, f, p);
            let mut diff = xp.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(f, &trim(diff), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

impl Field {
    /// The smallest field `F_{p^m}` containing a primitive `t`-th root of unity.
    pub fn for_root_of_unity(p: u64, t: u64) -> Result<Field, FieldError> {
        if p < 3 || !is_prime(p) {
            return Err(FieldError::BadCharacteristic(p));
        }
        if t == 0 {
            return Err(FieldError::ZeroOrder);
        }
        if gcd(p, t) != 1 {
            return Err(FieldError::NotCoprime { p, t });
        }
        Field::with_degree(p, multiplicative_order(p, t))
    }

    /// `F_{p^m}` with the smallest monic irreducible modulus of degree `m`.
    pub fn with_degree(p: u64, m: u32) -> Result<Field, FieldError> {
        if p < 3 || !is_prime(p) {
            return Err(FieldError::BadCharacteristic(p));
        }
        let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if m == 0 || q > MAX_FIELD_ORDER as u128 {
            return Err(FieldError::TooLarge { p, m });
        }
        let p32 = p as u32;
        let q32 = q as u32;
        let modulus = (0..q32)
            .find_map(|k| {
                let mut f = decode(k, p32, m);
                f.resize(m as usize, 0);
                f.push(1);
                fp::is_irreducible(&f, p32).then_some(f)
            })
            .expect("an irreducible polynomial of every degree exists");
        Ok(Field::from_modulus_unchecked(p32, m, modulus))
    }

    /// Builds a field from an explicit modulus (ascending, monic, degree m).
    pub fn from_modulus(p: u64, modulus: &[u32]) -> Result<Field, FieldError> {
        if p < 3 || !is_prime(p) {
            return Err(FieldError::BadCharacteristic(p));
        }
        if modulus.len() < 2 {
            return Err(FieldError::BadModulus(0));
        }
        let m = (modulus.len() - 1) as u32;
        if (p as u128).checked_pow(m).is_none_or(|q| q > MAX_FIELD_ORDER as u128) {
            return Err(FieldError::TooLarge { p, m });
        }
        if modulus.iter().any(|&c| c as u64 >= p) || modulus[m as usize] != 1 || !fp::is_irreducible(modulus, p as u32)
        {
            return Err(FieldError::BadModulus(m));
        }
        Ok(Field::from_modulus_unchecked(p as u32, m, modulus.to_vec()))
    }

    fn from_modulus_unchecked(p: u32, m: u32, modulus: Vec<u32>) -> Field {
        let q = p.pow(m);
        let slow_mul = |a: u32, b: u32| -> u32 {
            let prod = fp::mulmod(&decode(a, p, m), &decode(b, p, m), &modulus, p);
            encode(&prod, p)
        };
        let slow_pow = |a: u32, mut e: u64| -> u32 {
            let mut r = 1;
            let mut b = a;
            while e > 0 {
                if e & 1 == 1 {
                    r = slow_mul(r, b);
                }
                b = slow_mul(b, b);
                e >>= 1;
            }
            r
        };
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let generator = (1..q)
            .find(|&g| factors.iter().all(|&l| slow_pow(g, order / l) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(2 * (q as usize - 1));
        let mut log = vec![NO_LOG; q as usize];
        let mut x = 1u32;
        for k in 0..q - 1 {
            exp.push(x);
            log[x as usize] = k;
            x = slow_mul(x, generator);
        }
        let doubled = exp.clone();
        exp.extend(doubled);
        // zech[k] = log(1 + g^k); adding 1 only touches the constant coefficient
        let zech = (0..q - 1)
            .map(|k| {
                let v = exp[k as usize];
                let c0 = v % p;
                let w = v - c0 + (c0 + 1) % p;
                if w == 0 {
                    NO_LOG
                } else {
                    log[w as usize]
                }
            })
            .collect();
        Field(Arc::new(FieldCtx { p, m, q, modulus, generator, exp, log, zech }))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients, ascending, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The generator of the multiplicative group used for the log tables.
    pub fn multiplicative_generator(&self) -> Fe {
        Fe(self.0.generator)
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_index(&self, idx: u32) -> Option<Fe> {
        (idx < self.0.q).then_some(Fe(idx))
    }

    pub fn coeffs(&self, x: Fe) -> Vec<u32> {
        let mut out = decode(x.0, self.0.p, self.0.m);
        out.resize(self.0.m as usize, 0);
        out
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe, FieldError> {
        if coeffs.len() != self.0.m as usize {
            return Err(FieldError::BadLength { got: coeffs.len(), expected: self.0.m as usize });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.0.p) {
            return Err(FieldError::Unreduced(c as u64));
        }
        Ok(Fe(encode(coeffs, self.0.p)))
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q).map(Fe)
    }

    #[inline]
    pub fn add(&self, x: Fe, y: Fe) -> Fe {
        let c = &*self.0;
        if c.m == 1 {
            let s = x.0 + y.0;
            return Fe(if s >= c.p { s - c.p } else { s });
        }
        if x.0 == 0 {
            return y;
        }
        if y.0 == 0 {
            return x;
        }
        let lx = c.log[x.0 as usize];
        let ly = c.log[y.0 as usize];
        let k = if ly >= lx { ly - lx } else { ly + c.q - 1 - lx };
        let z = c.zech[k as usize];
        if z == NO_LOG {
            Fe::ZERO
        } else {
            Fe(c.exp[(lx + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, x: Fe) -> Fe {
        let c = &*self.0;
        if x.0 == 0 {
            return x;
        }
        if c.m == 1 {
            return Fe(c.p - x.0);
        }
        let l = c.log[x.0 as usize] + (c.q - 1) / 2;
        Fe(c.exp[l as usize])
    }

    #[inline]
    pub fn sub(&self, x: Fe, y: Fe) -> Fe {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Fe, y: Fe) -> Fe {
        let c = &*self.0;
        if c.m == 1 {
            return Fe(((x.0 as u64 * y.0 as u64) % c.p as u64) as u32);
        }
        if x.0 == 0 || y.0 == 0 {
            return Fe::ZERO;
        }
        Fe(c.exp[(c.log[x.0 as usize] + c.log[y.0 as usize]) as usize])
    }

    pub fn inv(&self, x: Fe) -> Result<Fe, FieldError> {
        if x.0 == 0 {
            return Err(FieldError::ZeroInverse);
        }
        let c = &*self.0;
        let l = c.log[x.0 as usize];
        Ok(Fe(c.exp[((c.q - 1 - l) % (c.q - 1)) as usize]))
    }

    pub fn div(&self, x: Fe, y: Fe) -> Result<Fe, FieldError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^e`; negative exponents require `x != 0`.
    pub fn pow(&self, x: Fe, e: i64) -> Result<Fe, FieldError> {
        if x.0 == 0 {
            return match e {
                0 => Ok(Fe::ONE),
                e if e > 0 => Ok(Fe::ZERO),
                _ => Err(FieldError::ZeroInverse),
            };
        }
        let c = &*self.0;
        let ord = (c.q - 1) as i64;
        let l = (c.log[x.0 as usize] as i64 * e.rem_euclid(ord)).rem_euclid(ord);
        Ok(Fe(c.exp[l as usize]))
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, x: Fe) -> Option<u64> {
        if x.0 == 0 {
            return None;
        }
        let ord = (self.0.q - 1) as u64;
        Some(ord / gcd(self.0.log[x.0 as usize] as u64, ord))
    }

    /// The smallest element (in encoding order) of exact multiplicative order `t`.
    pub fn primitive_root_of_unity(&self, t: u64) -> Result<Fe, FieldError> {
        let order = (self.0.q - 1) as u64;
        if t == 0 {
            return Err(FieldError::ZeroOrder);
        }
        if !order.is_multiple_of(t) {
            return Err(FieldError::NoRootOfUnity { t, order });
        }
        Ok(self
            .elements()
            .skip(1)
            .find(|&x| self.element_order(x) == Some(t))
            .expect("cyclic group has elements of every order dividing |F^*|"))
    }

    /// y += a * x, elementwise.
    #[inline]
    pub fn axpy(&self, y: &mut [Fe], a: Fe, x: &[Fe]) {
        if a.0 == 0 {
            return;
        }
        let c = &*self.0;
        if c.m == 1 {
            let p = c.p as u64;
            let a = a.0 as u64;
            for (yi, xi) in y.iter_mut().zip(x) {
                yi.0 = ((yi.0 as u64 + a * xi.0 as u64) % p) as u32;
            }
        } else {
            for (yi, &xi) in y.iter_mut().zip(x) {
                *yi = self.add(*yi, self.mul(a, xi));
            }
        }
    }

    pub fn scale(&self, y: &mut [Fe], a: Fe) {
        for yi in y.iter_mut() {
            *yi = self.mul(a, *yi);
        }
    }

    pub fn dot(&self, x: &[Fe], y: &[Fe]) -> Fe {
        let c = &*self.0;
        if c.m == 1 {
            let p = c.p as u64;
            let mut acc = 0u64;
            for (a, b) in x.iter().zip(y) {
                acc = (acc + a.0 as u64 * b.0 as u64) % p;
            }
            return Fe(acc as u32);
        }
        x.iter().zip(y).fold(Fe::ZERO, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }

    /// Uniformly random element.
    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(0..self.0.q))
    }

    /// Embedding of `self` into `ext`, given by the image of the extension
    /// generator. `ext` must have degree divisible by `self.degree()`.
    pub fn embedding_into(&self, ext: &Field) -> Option<Embedding> {
        if ext.characteristic() != self.characteristic() || !ext.degree().is_multiple_of(self.degree()) {
            return None;
        }
        let modulus: Vec<Fe> = self.modulus().iter().map(|&c| ext.from_int(c as i64)).collect();
        let root = ext
            .elements()
            .find(|&x| modulus.iter().rev().fold(Fe::ZERO, |acc, &c| ext.add(ext.mul(acc, x), c)).is_zero())?;
        let images = self
            .elements()
            .map(|x| {
                self.coeffs(x)
                    .iter()
                    .rev()
                    .fold(Fe::ZERO, |acc, &c| ext.add(ext.mul(acc, root), ext.from_int(c as i64)))
            })
            .collect();
        Some(Embedding { target: ext.clone(), images })
    }
}

/// A field homomorphism `F_{p^m} -> F_{p^{mk}}`, tabulated.
#[derive(Clone, Debug)]
pub struct Embedding {
    target: Field,
    images: Vec<Fe>,
}

impl Embedding {
    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, x: Fe) -> Fe {
        self.images[x.0 as usize]
    }
}

fn decode(mut k: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(k % p);
        k /= p;
    }
    fp::trim(out)
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn degree_is_multiplicative_order() {
        assert_eq!(Field::for_root_of_unity(3, 1).unwrap().degree(), 1);
        assert_eq!(Field::for_root_of_unity(3, 2).unwrap().degree(), 1);
        let f9 = Field::for_root_of_unity(3, 4).unwrap();
        assert_eq!(f9.degree(), 2);
        assert_eq!(f9.order(), 9);
        // X^2 + 1 is the first irreducible quadratic over F_3 in encoding order
        assert_eq!(f9.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::for_root_of_unity(2, 1), Err(FieldError::BadCharacteristic(2)));
        assert_eq!(Field::for_root_of_unity(9, 1), Err(FieldError::BadCharacteristic(9)));
        assert_eq!(Field::for_root_of_unity(3, 6), Err(FieldError::NotCoprime { p: 3, t: 6 }));
        assert!(Field::for_root_of_unity(3, 0).is_err());
    }

    #[test]
    fn roots_of_unity_examples() {
        let f3 = Field::for_root_of_unity(3, 1).unwrap();
        assert_eq!(f3.primitive_root_of_unity(1).unwrap(), Fe::ONE);
        assert_eq!(f3.primitive_root_of_unity(2).unwrap(), Fe(2));
        let f7 = Field::for_root_of_unity(7, 3).unwrap();
        assert_eq!(f7.primitive_root_of_unity(3).unwrap(), Fe(2));
        assert!(matches!(f7.primitive_root_of_unity(4), Err(FieldError::NoRootOfUnity { .. })));
    }

    #[test]
    fn inverse_of_two_mod_three() {
        let f3 = Field::for_root_of_unity(3, 1).unwrap();
        assert_eq!(f3.inv(Fe(2)).unwrap(), Fe(2));
        assert_eq!(f3.inv(Fe::ZERO), Err(FieldError::ZeroInverse));
    }

    #[test]
    fn root_has_exact_order_for_every_divisor() {
        for (p, t) in [(3, 4), (3, 8), (5, 3), (7, 9), (3, 13), (11, 10)] {
            let f = Field::for_root_of_unity(p, t).unwrap();
            let xi = f.primitive_root_of_unity(t).unwrap();
            assert_eq!(f.pow(xi, t as i64).unwrap(), Fe::ONE);
            for d in 1..t {
                if t % d == 0 {
                    assert_ne!(f.pow(xi, d as i64).unwrap(), Fe::ONE, "p={p} t={t} d={d}");
                }
            }
        }
    }

    #[test]
    fn construction_is_deterministic() {
        let a = Field::for_root_of_unity(3, 13).unwrap();
        let b = Field::for_root_of_unity(3, 13).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.multiplicative_generator(), b.multiplicative_generator());
    }

    #[test]
    fn frobenius_is_additive() {
        let f = Field::for_root_of_unity(5, 12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let x = f.random(&mut rng);
            let y = f.random(&mut rng);
            let lhs = f.pow(f.add(x, y), 5).unwrap();
            let rhs = f.add(f.pow(x, 5).unwrap(), f.pow(y, 5).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn table_arithmetic_matches_polynomial_arithmetic() {
        let f = Field::for_root_of_unity(3, 8).unwrap();
        let p = f.characteristic();
        for x in f.elements() {
            for y in f.elements() {
                let cx = f.coeffs(x);
                let cy = f.coeffs(y);
                let sum: Vec<u32> = cx.iter().zip(&cy).map(|(a, b)| (a + b) % p).collect();
                assert_eq!(f.add(x, y), f.from_coeffs(&sum).unwrap());
                let mut prod = fp::mulmod(&cx, &cy, f.modulus(), p);
                prod.resize(f.degree() as usize, 0);
                assert_eq!(f.mul(x, y), f.from_coeffs(&prod).unwrap());
            }
        }
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let small = Field::with_degree(3, 2).unwrap();
        let big = Field::with_degree(3, 4).unwrap();
        let e = small.embedding_into(&big).unwrap();
        for x in small.elements() {
            for y in small.elements() {
                assert_eq!(e.apply(small.add(x, y)), big.add(e.apply(x), e.apply(y)));
                assert_eq!(e.apply(small.mul(x, y)), big.mul(e.apply(x), e.apply(y)));
            }
        }
        assert!(small.embedding_into(&Field::with_degree(3, 3).unwrap()).is_none());
    }
}
