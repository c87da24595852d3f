use ffgs::constructions::catalogue;
use ffgs::hopf::{points, PointsConfig};
use ffgs::oracle::{enumerate_points, points::DEFAULT_BUDGET};
use ffgs::testrings::{test_rings, DEFAULT_CAP};

#[test]
fn points_agree_with_oracle_on_the_catalogue() {
    let cfg = PointsConfig::default();
    let mut checked = 0;
    for g in catalogue().unwrap() {
        assert!(g.verify().passed(), "{:?}", g.name());
        for t in test_rings(g.base(), DEFAULT_CAP) {
            if !t.is_finite() {
                continue;
            }
            let a = points(&g, &t, &cfg).unwrap();
            let b = enumerate_points(&g, &t, DEFAULT_BUDGET).unwrap();
            assert_eq!(a.elements, b.elements, "{:?} over {t}", g.name());
            assert_eq!(a.table, b.group.table, "{:?} over {t}", g.name());
            checked += 1;
        }
    }
    assert!(checked > 500);
}
