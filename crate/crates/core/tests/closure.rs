use dndouble::catalog::Setting;
use dndouble::probe::{probe_group_modules, probe_yd_modules};
use dndouble::ydcatalog::yd_catalog;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PARAMS: [(u64, u64); 7] = [(3, 3), (3, 9), (3, 6), (3, 12), (5, 5), (5, 10), (7, 21)];

#[test]
fn random_group_modules_land_on_catalog() {
    for (p, n) in PARAMS {
        let s = Setting::new(p, n).unwrap();
        let cat = s.full_catalog().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(p * 1000 + n);
        let report = probe_group_modules(&s, &cat, 200, &mut rng, 64).unwrap();
        assert!(report.passed(), "({p},{n}): {report:?}");
    }
}

#[test]
fn random_yd_modules_land_on_catalog() {
    for (p, n) in PARAMS {
        let s = Setting::new(p, n).unwrap();
        let cat = s.full_catalog().unwrap();
        let yd = yd_catalog(&s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(p * 2000 + n);
        let report = probe_yd_modules(&s, &yd, &cat, 200, &mut rng, 64).unwrap();
        assert!(report.passed(), "({p},{n}): {report:?}");
    }
}
