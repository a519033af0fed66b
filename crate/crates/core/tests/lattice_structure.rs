use dlattice::harness::{dense_lattice, trial_rng, verify_lattice};
use dlattice::{CodeTower, ConstructionDLattice, Field, LatticeDocument};

#[test]
fn levels_are_nested_and_scaled() {
    let lat = dense_lattice(64, 2).unwrap();
    let mut rng = trial_rng(3, 0);
    for level in 1..=2 {
        for _ in 0..40 {
            let v = lat.sample_member(level - 1, 2, &mut rng);
            let scaled: Vec<i64> = v.iter().map(|x| 2 * x).collect();
            assert!(lat.member(level, &scaled));
            let w = lat.sample_member(level, 2, &mut rng);
            assert!(lat.member(level - 1, &w));
        }
    }
    let mut e = vec![0i64; 63];
    e[17] = 4;
    assert!(lat.member(2, &e));
}

#[test]
fn members_are_closed_under_addition() {
    let lat = dense_lattice(16, 1).unwrap();
    let mut rng = trial_rng(4, 0);
    for _ in 0..100 {
        let a = lat.sample_member(1, 3, &mut rng);
        let b = lat.sample_member(1, 3, &mut rng);
        let s: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x - 3 * y).collect();
        assert!(lat.member(1, &s));
    }
}

#[test]
fn lattice_json_round_trip() {
    let lat = dense_lattice(64, 2).unwrap();
    let doc = LatticeDocument::from_lattice(&lat);
    let back = LatticeDocument::from_json(&doc.to_json()).unwrap().to_lattice().unwrap();
    assert_eq!(back.basis(), lat.basis());
    assert_eq!(back.det(), lat.det());
    assert_eq!(LatticeDocument::from_lattice(&back), doc);
}

#[test]
fn non_dense_tower_verifies() {
    let field = Field::shared(2, 5).unwrap();
    let tower = CodeTower::bch(field, &[5, 16]).unwrap();
    let lat = ConstructionDLattice::new(tower).unwrap();
    assert_eq!(lat.det_by_elimination(), *lat.det());
    assert_eq!(lat.lambda1_claim(), Some(4));
    let report = verify_lattice(&lat, 2000, 9).unwrap();
    assert!(report.passed(), "{report:?}");
}

#[test]
fn large_lattice_verifies() {
    let lat = dense_lattice(256, 3).unwrap();
    let report = verify_lattice(&lat, 5000, 1).unwrap();
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.det, report.det_by_elimination);
}
