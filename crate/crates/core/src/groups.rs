//! Dihedral groups `D_n = <a, b | a^n = b^2 = (ab)^2 = 1>` in normal form `a^rot b^flip`,
//! their conjugacy classes, and the subgroups the classification needs.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{gcd, is_prime};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("p = {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("n must be positive")]
    ZeroOrder,
    #[error("p does not divide n (p = {p}, n = {n}); the group algebra would be semisimple")]
    PDoesNotDivideN { p: u64, n: u64 },
    #[error("n = {0} is too large")]
    TooLarge(u64),
    #[error("element set is not a subgroup of D_{n}")]
    NotASubgroup { n: u32 },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("elements belong to different groups")]
    Mismatch,
}

/// Largest supported `n`; keeps `2n` comfortably inside `u32` arithmetic.
pub const MAX_N: u64 = 1 << 16;

/// `n = p^s t` with `p` an odd prime, `p ∤ t`, `s ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct DihedralParams {
    p: u32,
    n: u32,
    s: u32,
    t: u32,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    p: u64,
    n: u64,
}

impl TryFrom<RawParams> for DihedralParams {
    type Error = GroupError;

    fn try_from(r: RawParams) -> Result<Self, GroupError> {
        DihedralParams::new(r.p, r.n)
    }
}

impl From<DihedralParams> for RawParams {
    fn from(d: DihedralParams) -> RawParams {
        RawParams { p: d.p as u64, n: d.n as u64 }
    }
}

impl DihedralParams {
    pub fn new(p: u64, n: u64) -> Result<DihedralParams, GroupError> {
        if p < 3 || !is_prime(p) {
            return Err(GroupError::NotOddPrime(p));
        }
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        if n > MAX_N {
            return Err(GroupError::TooLarge(n));
        }
        if !n.is_multiple_of(p) {
            return Err(GroupError::PDoesNotDivideN { p, n });
        }
        let mut t = n;
        let mut s = 0;
        while t.is_multiple_of(p) {
            t /= p;
            s += 1;
        }
        Ok(DihedralParams { p: p as u32, n: n as u32, s, t: t as u32 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// `p^s`, the order of the Sylow p-subgroup.
    pub fn p_part(&self) -> u32 {
        self.n / self.t
    }

    pub fn is_even(&self) -> bool {
        self.n.is_multiple_of(2)
    }

    pub fn order(&self) -> u32 {
        2 * self.n
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem { rot: 0, flip: false }
    }

    pub fn a(&self) -> GroupElem {
        self.rotation(1)
    }

    pub fn b(&self) -> GroupElem {
        GroupElem { rot: 0, flip: true }
    }

    pub fn rotation(&self, i: i64) -> GroupElem {
        GroupElem { rot: i.rem_euclid(self.n as i64) as u32, flip: false }
    }

    pub fn reflection(&self, i: i64) -> GroupElem {
        GroupElem { rot: i.rem_euclid(self.n as i64) as u32, flip: true }
    }

    pub fn elem(&self, rot: i64, flip: bool) -> GroupElem {
        GroupElem { rot: rot.rem_euclid(self.n as i64) as u32, flip }
    }

    /// All `2n` elements in the fixed order: rotations `a^0..a^{n-1}`, then `a^j b`.
    pub fn elements(&self) -> impl Iterator<Item = GroupElem> + '_ {
        [false, true].into_iter().flat_map(move |flip| (0..self.n).map(move |rot| GroupElem { rot, flip }))
    }

    /// Position of `g` in [`DihedralParams::elements`].
    pub fn index_of(&self, g: GroupElem) -> usize {
        g.flip as usize * self.n as usize + g.rot as usize
    }

    pub fn element_at(&self, idx: usize) -> GroupElem {
        let n = self.n as usize;
        GroupElem { rot: (idx % n) as u32, flip: idx >= n }
    }

    /// `(a^i b^e)(a^j b^f) = a^{i + (-1)^e j} b^{e+f}`.
    pub fn mul(&self, x: GroupElem, y: GroupElem) -> GroupElem {
        let n = self.n;
        let j = if x.flip { (n - y.rot) % n } else { y.rot };
        GroupElem { rot: (x.rot + j) % n, flip: x.flip ^ y.flip }
    }

    pub fn inv(&self, x: GroupElem) -> GroupElem {
        if x.flip {
            x
        } else {
            GroupElem { rot: (self.n - x.rot) % self.n, flip: false }
        }
    }

    pub fn pow(&self, x: GroupElem, e: i64) -> GroupElem {
        if x.flip {
            if e.rem_euclid(2) == 0 {
                self.identity()
            } else {
                x
            }
        } else {
            self.rotation(x.rot as i64 * e.rem_euclid(self.n as i64))
        }
    }

    /// `x y x^{-1}`.
    pub fn conj(&self, x: GroupElem, y: GroupElem) -> GroupElem {
        self.mul(self.mul(x, y), self.inv(x))
    }

    pub fn element_order(&self, x: GroupElem) -> u32 {
        if x.flip {
            2
        } else if x.rot == 0 {
            1
        } else {
            self.n / gcd(x.rot as u64, self.n as u64) as u32
        }
    }

    /// Conjugacy classes in the fixed order: `{1}`, `{a^i, a^{-i}}` for ascending `i`,
    /// then the reflections (one class for odd `n`; `a^{2i}b` and `a^{2i+1}b` for even `n`).
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let n = self.n;
        let mut out = vec![ConjugacyClass { rep: self.identity(), members: vec![self.identity()] }];
        for i in 1..=n / 2 {
            let mut members = vec![self.rotation(i as i64)];
            if 2 * i != n {
                members.push(self.rotation((n - i) as i64));
            }
            out.push(ConjugacyClass { rep: self.rotation(i as i64), members });
        }
        if self.is_even() {
            for parity in 0..2 {
                let members = (0..n).filter(|j| j % 2 == parity).map(|j| self.reflection(j as i64)).collect();
                out.push(ConjugacyClass { rep: self.reflection(parity as i64), members });
            }
        } else {
            let members = (0..n).map(|j| self.reflection(j as i64)).collect();
            out.push(ConjugacyClass { rep: self.b(), members });
        }
        out
    }

    /// Canonical class representative of `g`: `1`, `a^i` with `i ≤ n/2`, `b`, or `ab`.
    pub fn class_rep(&self, g: GroupElem) -> GroupElem {
        if g.flip {
            if self.is_even() {
                self.reflection((g.rot % 2) as i64)
            } else {
                self.b()
            }
        } else {
            self.rotation(g.rot.min(self.n - g.rot) as i64 % self.n as i64)
        }
    }

    pub fn class_of(&self, g: GroupElem) -> ConjugacyClass {
        let rep = self.class_rep(g);
        self.conjugacy_classes().into_iter().find(|c| c.rep == rep).expect("every element has a class")
    }

    pub fn centralizer(&self, g: GroupElem) -> Subgroup {
        let members: BTreeSet<GroupElem> = self.elements().filter(|&x| self.mul(x, g) == self.mul(g, x)).collect();
        Subgroup::from_elements(*self, &members).expect("centralizers are subgroups")
    }

    /// Representatives of the classes whose elements have order prime to `p`, in class order.
    pub fn p_regular_classes(&self) -> Vec<GroupElem> {
        self.conjugacy_classes()
            .into_iter()
            .map(|c| c.rep)
            .filter(|&g| !self.element_order(g).is_multiple_of(self.p))
            .collect()
    }

    pub fn full_group(&self) -> Subgroup {
        Subgroup::dihedral(*self, 1, 0)
    }

    /// `<a>`, the rotation subgroup `C_n`.
    pub fn rotations(&self) -> Subgroup {
        Subgroup::cyclic(*self, 1)
    }

    /// `<a^t>`, the normal Sylow p-subgroup.
    pub fn sylow(&self) -> Subgroup {
        Subgroup::cyclic(*self, self.t)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::cyclic(*self, self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub rep: GroupElem,
    pub members: Vec<GroupElem>,
}

/// `a^rot b^flip`. Ordered rotations first, then reflections, each by `rot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "RawElem", from = "RawElem")]
pub struct GroupElem {
    pub rot: u32,
    pub flip: bool,
}

#[derive(Serialize, Deserialize)]
struct RawElem {
    rot: u32,
    flip: u8,
}

impl From<GroupElem> for RawElem {
    fn from(g: GroupElem) -> RawElem {
        RawElem { rot: g.rot, flip: g.flip as u8 }
    }
}

impl From<RawElem> for GroupElem {
    fn from(r: RawElem) -> GroupElem {
        GroupElem { rot: r.rot, flip: r.flip != 0 }
    }
}

impl Ord for GroupElem {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.flip, self.rot).cmp(&(other.flip, other.rot))
    }
}

impl PartialOrd for GroupElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rot, self.flip) {
            (0, false) => write!(f, "1"),
            (0, true) => write!(f, "b"),
            (1, flip) => write!(f, "a{}", if flip { "b" } else { "" }),
            (r, flip) => write!(f, "a^{}{}", r, if flip { "b" } else { "" }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubgroupKind {
    /// `<a^step>` with `step | n`; `step = n` is the trivial group.
    Cyclic { step: u32 },
    /// `<a^step, a^refl b>` with `step | n` and `refl < step`.
    Dihedral { step: u32, refl: u32 },
}

/// A subgroup of `D_n`. Every subgroup of a dihedral group has one of the two kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subgroup {
    params: DihedralParams,
    kind: SubgroupKind,
}

impl Subgroup {
    pub fn cyclic(params: DihedralParams, step: u32) -> Subgroup {
        assert!(step > 0 && params.n.is_multiple_of(step), "step must divide n");
        Subgroup { params, kind: SubgroupKind::Cyclic { step } }
    }

    pub fn dihedral(params: DihedralParams, step: u32, refl: u32) -> Subgroup {
        assert!(step > 0 && params.n.is_multiple_of(step), "step must divide n");
        Subgroup { params, kind: SubgroupKind::Dihedral { step, refl: refl % step } }
    }

    /// `<b, a^{n/2}>` for `j = 0`, `<ab, a^{n/2}>` for `j = 1` (even `n`).
    pub fn klein(params: DihedralParams, j: u32) -> Subgroup {
        assert!(params.is_even());
        Subgroup::dihedral(params, params.n / 2, j)
    }

    /// Identifies the subgroup formed by a set of elements, checking closure.
    pub fn from_elements(params: DihedralParams, elems: &BTreeSet<GroupElem>) -> Result<Subgroup, GroupError> {
        let n = params.n;
        let step = elems.iter().filter(|g| !g.flip && g.rot > 0).map(|g| g.rot).min().unwrap_or(n);
        if !n.is_multiple_of(step) {
            return Err(GroupError::NotASubgroup { n });
        }
        let candidate = match elems.iter().find(|g| g.flip) {
            None => Subgroup::cyclic(params, step),
            Some(r) => Subgroup::dihedral(params, step, r.rot),
        };
        let generated: BTreeSet<GroupElem> = candidate.elements().into_iter().collect();
        if &generated == elems {
            Ok(candidate)
        } else {
            Err(GroupError::NotASubgroup { n })
        }
    }

    pub fn params(&self) -> &DihedralParams {
        &self.params
    }

    pub fn kind(&self) -> SubgroupKind {
        self.kind
    }

    /// Order of the rotation generator `a^step`, i.e. `n / step`.
    pub fn rotation_order(&self) -> u32 {
        match self.kind {
            SubgroupKind::Cyclic { step } | SubgroupKind::Dihedral { step, .. } => self.params.n / step,
        }
    }

    pub fn order(&self) -> u32 {
        match self.kind {
            SubgroupKind::Cyclic { .. } => self.rotation_order(),
            SubgroupKind::Dihedral { .. } => 2 * self.rotation_order(),
        }
    }

    pub fn index(&self) -> u32 {
        self.params.order() / self.order()
    }

    /// Generators in representation order: `[a^step]`, `[a^step, a^refl b]`, or
    /// `[a^refl b]` when the rotation part is trivial.
    pub fn generators(&self) -> Vec<GroupElem> {
        let p = &self.params;
        let mut gens = Vec::new();
        let step = match self.kind {
            SubgroupKind::Cyclic { step } | SubgroupKind::Dihedral { step, .. } => step,
        };
        if step < p.n {
            gens.push(p.rotation(step as i64));
        }
        if let SubgroupKind::Dihedral { refl, .. } = self.kind {
            gens.push(p.reflection(refl as i64));
        }
        gens
    }

    pub fn contains(&self, g: GroupElem) -> bool {
        match self.kind {
            SubgroupKind::Cyclic { step } => !g.flip && g.rot.is_multiple_of(step),
            SubgroupKind::Dihedral { step, refl } => {
                if g.flip {
                    g.rot % step == refl
                } else {
                    g.rot.is_multiple_of(step)
                }
            }
        }
    }

    /// Elements in group order.
    pub fn elements(&self) -> Vec<GroupElem> {
        self.params.elements().filter(|&g| self.contains(g)).collect()
    }

    /// Left coset transversal: the first element of each coset `xH` in group order.
    pub fn coset_representatives(&self) -> Vec<GroupElem> {
        let p = &self.params;
        let mut covered = vec![false; p.order() as usize];
        let members = self.elements();
        let mut reps = Vec::new();
        for x in p.elements() {
            if covered[p.index_of(x)] {
                continue;
            }
            reps.push(x);
            for &h in &members {
                covered[p.index_of(p.mul(x, h))] = true;
            }
        }
        reps
    }

    /// Representatives of the double cosets `H x K` (self = H), first element of each in group order.
    pub fn double_coset_representatives(&self, k: &Subgroup) -> Vec<GroupElem> {
        let p = &self.params;
        let mut covered = vec![false; p.order() as usize];
        let hs = self.elements();
        let ks = k.elements();
        let mut reps = Vec::new();
        for x in p.elements() {
            if covered[p.index_of(x)] {
                continue;
            }
            reps.push(x);
            for &h in &hs {
                let hx = p.mul(h, x);
                for &kk in &ks {
                    covered[p.index_of(p.mul(hx, kk))] = true;
                }
            }
        }
        reps
    }

    /// `x H x^{-1}`.
    pub fn conjugate(&self, x: GroupElem) -> Subgroup {
        let p = &self.params;
        let elems: BTreeSet<GroupElem> = self.elements().into_iter().map(|h| p.conj(x, h)).collect();
        Subgroup::from_elements(*p, &elems).expect("conjugates of subgroups are subgroups")
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let elems: BTreeSet<GroupElem> = self.elements().into_iter().filter(|&g| other.contains(g)).collect();
        Subgroup::from_elements(self.params, &elems).expect("intersections of subgroups are subgroups")
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements().into_iter().all(|g| other.contains(g))
    }

    pub fn is_normal(&self) -> bool {
        let p = &self.params;
        [p.a(), p.b()].into_iter().all(|x| self.conjugate(x) == *self)
    }

    /// Human-readable name, e.g. `<a>`, `<a^3, b>`, `D_6`.
    pub fn name(&self) -> String {
        let p = &self.params;
        match self.kind {
            SubgroupKind::Dihedral { step: 1, .. } => format!("D_{}", p.n),
            SubgroupKind::Cyclic { step } if step == p.n => "1".to_string(),
            _ => {
                let gens: Vec<String> = self.generators().iter().map(|g| g.to_string()).collect();
                format!("<{}>", gens.join(", "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(p: u64, n: u64) -> DihedralParams {
        DihedralParams::new(p, n).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(DihedralParams::new(2, 4), Err(GroupError::NotOddPrime(2)));
        assert_eq!(DihedralParams::new(9, 9), Err(GroupError::NotOddPrime(9)));
        assert_eq!(DihedralParams::new(3, 4), Err(GroupError::PDoesNotDivideN { p: 3, n: 4 }));
        let g = d(3, 12);
        assert_eq!((g.s(), g.t()), (1, 4));
    }

    #[test]
    fn relations_hold() {
        let g = d(3, 9);
        let ab = g.mul(g.a(), g.b());
        assert_eq!(g.mul(ab, ab), g.identity());
        for i in 0..9 {
            assert_eq!(g.mul(g.b(), g.rotation(i)), g.reflection(9 - i));
        }
        assert_eq!(g.pow(g.a(), 9), g.identity());
    }

    #[test]
    fn class_lists() {
        let g = d(3, 3);
        let classes = g.conjugacy_classes();
        assert_eq!(classes.len(), 3);
        assert_eq!(classes[2].members.len(), 3);
        let g = d(3, 6);
        let reps: Vec<String> = g.conjugacy_classes().iter().map(|c| c.rep.to_string()).collect();
        assert_eq!(reps, ["1", "a", "a^2", "a^3", "b", "ab"]);
        assert_eq!(g.class_of(g.rotation(3)).members, vec![g.rotation(3)]);
    }

    #[test]
    fn centralizers() {
        let g = d(3, 3);
        assert_eq!(g.centralizer(g.b()).elements(), vec![g.identity(), g.b()]);
        let g = d(3, 6);
        let c = g.centralizer(g.b());
        assert_eq!(c, Subgroup::klein(g, 0));
        assert_eq!(c.elements().len(), 4);
        assert_eq!(g.centralizer(g.identity()), g.full_group());
    }

    #[test]
    fn p_regular() {
        let g = d(3, 9);
        assert_eq!(g.p_regular_classes(), vec![g.identity(), g.b()]);
        let g = d(3, 6);
        assert_eq!(g.p_regular_classes(), vec![g.identity(), g.rotation(3), g.b(), g.reflection(1)]);
    }

    #[test]
    fn transversals() {
        let g = d(3, 9);
        assert_eq!(g.rotations().coset_representatives(), vec![g.identity(), g.b()]);
        assert_eq!(g.full_group().coset_representatives(), vec![g.identity()]);
        let g = d(3, 6);
        let reps = Subgroup::klein(g, 0).coset_representatives();
        assert_eq!(reps, (0..3).map(|i| g.rotation(i)).collect::<Vec<_>>());
        let g = d(3, 12);
        let syl = g.sylow();
        let reps: Vec<GroupElem> = syl.coset_representatives().into_iter().filter(|x| !x.flip).collect();
        assert_eq!(reps, (0..4).map(|i| g.rotation(i)).collect::<Vec<_>>());
    }

    #[test]
    fn subgroup_identification() {
        let g = d(3, 6);
        let bad: BTreeSet<GroupElem> = [g.identity(), g.a()].into_iter().collect();
        assert!(Subgroup::from_elements(g, &bad).is_err());
        assert!(g.rotations().is_normal());
        assert!(g.sylow().is_normal());
        assert!(!Subgroup::dihedral(g, 6, 0).is_normal());
        assert_eq!(Subgroup::dihedral(g, 6, 0).conjugate(g.a()), Subgroup::dihedral(g, 6, 2));
    }

    #[test]
    fn json_shapes() {
        let g = d(3, 6);
        let s = serde_json::to_string(&g.reflection(2)).unwrap();
        assert_eq!(s, r#"{"rot":2,"flip":1}"#);
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"p":3,"n":6}"#);
        assert!(serde_json::from_str::<DihedralParams>(r#"{"p":3,"n":4}"#).is_err());
    }
}
