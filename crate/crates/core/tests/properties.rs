use std::collections::BTreeSet;

use dndouble::field::{Fe, Field};
use dndouble::groups::{DihedralParams, Subgroup};
use dndouble::matrix::{commutant_solve, Echelon, Matrix};
use dndouble::probe::random_invertible;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field_strategy() -> impl Strategy<Value = (u64, u64)> {
    prop::sample::select(vec![(3, 1), (3, 2), (3, 4), (3, 8), (5, 3), (5, 4), (5, 6), (7, 3), (7, 5), (7, 8)])
}

fn random_matrix(f: &Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::from_vec(f, rows, cols, (0..rows * cols).map(|_| f.random(rng)).collect())
}

/// Random matrix of low rank or with repeated eigenvalues, so Fitting splits are common.
fn structured_matrix(f: &Field, d: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut diag = Matrix::zeros(f, d, d);
    let values = [Fe::ZERO, Fe::ONE, f.from_int(2)];
    for i in 0..d {
        diag.set(i, i, values[rng.gen_range(0..values.len())]);
        if i + 1 < d && rng.gen_bool(0.5) {
            diag.set(i, i + 1, Fe::ONE);
        }
    }
    let s = random_invertible(f, d, rng);
    &(&s * &diag) * &s.inverse().unwrap()
}

/// Solves `Q S = S P` through the full Kronecker system on `vec(S)` (row-major).
fn kronecker_commutant(pairs: &[(Matrix, Matrix)], f: &Field, src: usize, dst: usize) -> Vec<Vec<Fe>> {
    let unknowns = src * dst;
    let mut rows: Vec<Vec<Fe>> = Vec::new();
    for (p, q) in pairs {
        // entry (i, j) of Q S - S P
        for i in 0..dst {
            for j in 0..src {
                let mut row = vec![Fe::ZERO; unknowns];
                for k in 0..dst {
                    row[k * src + j] = f.add(row[k * src + j], q.get(i, k));
                }
                for k in 0..src {
                    row[i * src + k] = f.sub(row[i * src + k], p.get(k, j));
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return (0..unknowns)
            .map(|u| {
                let mut v = vec![Fe::ZERO; unknowns];
                v[u] = Fe::ONE;
                v
            })
            .collect();
    }
    let data = rows.concat();
    Matrix::from_vec(f, rows.len(), unknowns, data).kernel_basis()
}

fn span_of(f: &Field, dim: usize, vectors: &[Vec<Fe>]) -> Echelon {
    let mut e = Echelon::new(f, dim);
    for v in vectors {
        e.insert(v);
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn frobenius_is_additive((p, t) in field_strategy(), seed in any::<u64>()) {
        let f = Field::for_root_of_unity(p, t).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            let (x, y) = (f.random(&mut rng), f.random(&mut rng));
            let lhs = f.pow(f.add(x, y), p as i64).unwrap();
            let rhs = f.add(f.pow(x, p as i64).unwrap(), f.pow(y, p as i64).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn root_of_unity_has_exact_order((p, t) in field_strategy()) {
        let f = Field::for_root_of_unity(p, t).unwrap();
        let xi = f.primitive_root_of_unity(t).unwrap();
        prop_assert_eq!(f.pow(xi, t as i64).unwrap(), Fe::ONE);
        for d in (1..t).filter(|d| t % d == 0) {
            prop_assert_ne!(f.pow(xi, d as i64).unwrap(), Fe::ONE);
        }
        let again = Field::for_root_of_unity(p, t).unwrap();
        prop_assert_eq!(f.modulus(), again.modulus());
    }

    #[test]
    fn inverse_is_two_sided((p, t) in field_strategy(), d in 1usize..7, seed in any::<u64>()) {
        let f = Field::for_root_of_unity(p, t).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&f, d, d, &mut rng);
        match m.inverse() {
            Ok(inv) => {
                prop_assert!((&inv * &m).is_identity());
                prop_assert!((&m * &inv).is_identity());
                prop_assert!(!m.det().unwrap().is_zero());
            }
            Err(_) => prop_assert!(m.det().unwrap().is_zero()),
        }
    }

    #[test]
    fn char_poly_is_a_similarity_invariant((p, t) in field_strategy(), d in 1usize..7, seed in any::<u64>()) {
        let f = Field::for_root_of_unity(p, t).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&f, d, d, &mut rng);
        let s = random_invertible(&f, d, &mut rng);
        let conj = &(&s * &m) * &s.inverse().unwrap();
        let cp = m.char_poly().unwrap();
        prop_assert_eq!(&cp, &conj.char_poly().unwrap());
        prop_assert!(m.eval_poly(&cp).is_zero());
    }

    #[test]
    fn fitting_split_is_invariant_and_complementary((p, t) in field_strategy(), d in 1usize..7, seed in any::<u64>()) {
        let f = Field::for_root_of_unity(p, t).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = structured_matrix(&f, d, &mut rng);
        match u.fitting_split() {
            None => prop_assert!(u.is_nilpotent() || u.is_invertible()),
            Some((k, im)) => {
                prop_assert_eq!(k.cols() + im.cols(), d);
                let both = Matrix::from_columns(&f, d, &[k.columns(), im.columns()].concat());
                prop_assert!(both.is_invertible());
                let on_k = k.coordinates(&(&u * &k)).unwrap();
                let on_im = im.coordinates(&(&u * &im)).unwrap();
                prop_assert!(on_k.is_nilpotent());
                prop_assert!(on_im.is_invertible());
            }
        }
    }

    #[test]
    fn commutant_matches_kronecker_system(
        (p, t) in field_strategy(),
        src in 1usize..5,
        dst in 1usize..5,
        gens in 0usize..3,
        seed in any::<u64>(),
    ) {
        let f = Field::for_root_of_unity(p, t).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // pairs from a common module so the commutant is often nonzero
        let base: Vec<Matrix> = (0..gens).map(|_| structured_matrix(&f, src, &mut rng)).collect();
        let pairs: Vec<(Matrix, Matrix)> = base
            .iter()
            .map(|pm| {
                let q = if dst == src && rng.gen_bool(0.5) {
                    let s = random_invertible(&f, src, &mut rng);
                    &(&s * pm) * &s.inverse().unwrap()
                } else {
                    structured_matrix(&f, dst, &mut rng)
                };
                (pm.clone(), q)
            })
            .collect();
        let fast = commutant_solve(&pairs, &f, src, dst);
        for s in &fast {
            prop_assert_eq!(s.shape(), (dst, src));
            for (pm, q) in &pairs {
                prop_assert_eq!(&(q * s), &(s * pm));
            }
        }
        let oracle = kronecker_commutant(&pairs, &f, src, dst);
        let fast_vecs: Vec<Vec<Fe>> = fast.iter().map(|s| s.data().to_vec()).collect();
        let a = span_of(&f, src * dst, &fast_vecs);
        prop_assert_eq!(a.rank(), oracle.len());
        for v in &oracle {
            prop_assert!(a.contains(v));
        }
    }

    #[test]
    fn class_equation_and_centralizers(idx in 0usize..8) {
        let (p, n) = [(3, 3), (3, 6), (3, 9), (3, 12), (5, 5), (5, 10), (7, 21), (3, 15)][idx];
        let g = DihedralParams::new(p, n).unwrap();
        let classes = g.conjugacy_classes();
        let total: usize = classes.iter().map(|c| c.members.len()).sum();
        prop_assert_eq!(total as u32, g.order());
        let mut seen = BTreeSet::new();
        for c in &classes {
            prop_assert_eq!(g.order() as usize % c.members.len(), 0);
            for &x in &c.members {
                prop_assert!(seen.insert(x));
                prop_assert_eq!(g.centralizer(x).order() as usize * c.members.len(), g.order() as usize);
                prop_assert_eq!(g.class_rep(x), c.rep);
            }
        }
        let regular = g.p_regular_classes().len() as u32;
        let t = g.t();
        let want = if g.is_even() { (t + 6) / 2 } else { (t + 3) / 2 };
        prop_assert_eq!(regular, want);
    }

    #[test]
    fn transversals_partition_the_group(idx in 0usize..6, which in 0usize..6) {
        let (p, n) = [(3, 3), (3, 6), (3, 9), (3, 12), (5, 10), (7, 21)][idx];
        let g = DihedralParams::new(p, n).unwrap();
        let subs = [
            g.rotations(),
            g.sylow(),
            g.trivial_subgroup(),
            Subgroup::dihedral(g, g.n(), 1),
            Subgroup::dihedral(g, g.t(), 0),
            g.full_group(),
        ];
        let h = subs[which];
        let reps = h.coset_representatives();
        prop_assert_eq!(reps.len() as u32, h.index());
        let mut covered = BTreeSet::new();
        for &x in &reps {
            for y in h.elements() {
                prop_assert!(covered.insert(g.mul(x, y)));
            }
        }
        prop_assert_eq!(covered.len() as u32, g.order());
    }
}
