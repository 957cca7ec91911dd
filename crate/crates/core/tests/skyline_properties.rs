mod common;

use common::{codes, naive_skyline};
use mall_skyline::engine::{skyline_bnl, skyline_dnc, skyline_oracle, skyline_sfs};
use mall_skyline::model::{
    dominates, monotone_score, Dimension, Direction, GeoPoint, QueryPoint, QuerySpec, ScoreBounds,
};
use proptest::prelude::*;

fn spec_for(dirs: &[Direction]) -> QuerySpec {
    let dims = dirs
        .iter()
        .enumerate()
        .map(|(i, d)| (Dimension::Facility(i as u8), *d))
        .collect();
    QuerySpec::new(GeoPoint { lat: 0.0, lng: 0.0 }, dims, 10).unwrap()
}

fn direction() -> impl Strategy<Value = Direction> {
    prop_oneof![Just(Direction::Min), Just(Direction::Max)]
}

/// Small integer grids so ties and duplicates are common.
fn instance() -> impl Strategy<Value = (Vec<QueryPoint>, Vec<Direction>)> {
    (1usize..=5, 0u32..=3)
        .prop_flat_map(|(d, spread)| {
            let max = [2, 5, 20, 1000][spread as usize];
            (
                prop::collection::vec(prop::collection::vec(0..=max, d), 0..120),
                prop::collection::vec(direction(), d),
            )
        })
        .prop_map(|(rows, dirs)| {
            let points = rows
                .into_iter()
                .enumerate()
                .map(|(i, r)| QueryPoint::new(format!("P{i}"), r.into_iter().map(f64::from).collect()))
                .collect();
            (points, dirs)
        })
}

fn point(values: &[i32]) -> QueryPoint {
    QueryPoint::new("x", values.iter().map(|&v| f64::from(v)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn algorithms_match_oracle((points, dirs) in instance(), cap in 1usize..8) {
        let spec = spec_for(&dirs);
        let oracle = codes(&skyline_oracle(&points, &spec).unwrap());
        prop_assert_eq!(&oracle, &naive_skyline(&points, &dirs));
        prop_assert_eq!(&codes(&skyline_bnl(&points, &spec, cap).unwrap()), &oracle);
        prop_assert_eq!(&codes(&skyline_sfs(&points, &spec).unwrap()), &oracle);
        prop_assert_eq!(&codes(&skyline_dnc(&points, &spec).unwrap()), &oracle);
    }

    #[test]
    fn skyline_is_antichain_and_covers((points, dirs) in instance()) {
        let spec = spec_for(&dirs);
        let sky = skyline_sfs(&points, &spec).unwrap();
        for a in &sky {
            for b in &sky {
                prop_assert!(!dominates(a, b, &spec).unwrap());
            }
        }
        let members = codes(&sky);
        for p in points.iter().filter(|p| !members.contains(&p.code)) {
            prop_assert!(sky.iter().any(|s| dominates(s, p, &spec).unwrap()));
        }
    }

    #[test]
    fn skyline_of_skyline_is_itself((points, dirs) in instance()) {
        let spec = spec_for(&dirs);
        let sky = skyline_dnc(&points, &spec).unwrap();
        prop_assert_eq!(codes(&skyline_oracle(&sky, &spec).unwrap()), codes(&sky));
    }

    #[test]
    fn shuffling_changes_nothing(
        (points, dirs, shuffled) in instance().prop_flat_map(|(p, d)| {
            let s = Just(p.clone()).prop_shuffle();
            (Just(p), Just(d), s)
        }),
        cap in 1usize..4,
    ) {
        let spec = spec_for(&dirs);
        prop_assert_eq!(codes(&skyline_bnl(&points, &spec, cap).unwrap()), codes(&skyline_bnl(&shuffled, &spec, cap).unwrap()));
        prop_assert_eq!(codes(&skyline_sfs(&points, &spec).unwrap()), codes(&skyline_sfs(&shuffled, &spec).unwrap()));
        prop_assert_eq!(codes(&skyline_dnc(&points, &spec).unwrap()), codes(&skyline_dnc(&shuffled, &spec).unwrap()));
    }

    #[test]
    fn increasing_transform_changes_nothing((points, dirs) in instance(), which in 0usize..5) {
        let spec = spec_for(&dirs);
        let k = which % dirs.len();
        let transformed: Vec<QueryPoint> = points
            .iter()
            .map(|p| {
                let mut q = p.clone();
                q.values[k] = q.values[k].powi(3) + 7.0;
                q
            })
            .collect();
        prop_assert_eq!(codes(&skyline_sfs(&points, &spec).unwrap()), codes(&skyline_sfs(&transformed, &spec).unwrap()));
        prop_assert_eq!(codes(&skyline_bnl(&points, &spec, 2).unwrap()), codes(&skyline_bnl(&transformed, &spec, 2).unwrap()));
    }

    #[test]
    fn score_is_dominance_monotone((points, dirs) in instance()) {
        let spec = spec_for(&dirs);
        let bounds = ScoreBounds::from_points(&points, &spec).unwrap();
        let scores: Vec<f64> = points.iter().map(|p| monotone_score(p, &spec, &bounds).unwrap()).collect();
        for (i, a) in points.iter().enumerate() {
            for (j, b) in points.iter().enumerate() {
                let dom = dominates(a, b, &spec).unwrap();
                if dom {
                    prop_assert!(scores[i] < scores[j]);
                }
                if scores[i] == scores[j] {
                    prop_assert!(!dom);
                }
            }
        }
    }

    #[test]
    fn dominance_is_a_strict_order(
        dirs in prop::collection::vec(direction(), 1..5),
        raw in prop::collection::vec(prop::collection::vec(-3i32..3, 5), 3),
    ) {
        let d = dirs.len();
        let spec = spec_for(&dirs);
        let [a, b, c] = [point(&raw[0][..d]), point(&raw[1][..d]), point(&raw[2][..d])];
        prop_assert!(!dominates(&a, &a, &spec).unwrap());
        prop_assert!(!(dominates(&a, &b, &spec).unwrap() && dominates(&b, &a, &spec).unwrap()));
        if dominates(&a, &b, &spec).unwrap() && dominates(&b, &c, &spec).unwrap() {
            prop_assert!(dominates(&a, &c, &spec).unwrap());
        }
    }

    #[test]
    fn flipping_a_dimension_and_its_sign_is_neutral(
        dirs in prop::collection::vec(direction(), 1..5),
        raw in prop::collection::vec(prop::collection::vec(-3i32..3, 5), 2),
        which in 0usize..5,
    ) {
        let d = dirs.len();
        let k = which % d;
        let spec = spec_for(&dirs);
        let mut flipped_dirs = dirs.clone();
        flipped_dirs[k] = match dirs[k] { Direction::Min => Direction::Max, Direction::Max => Direction::Min };
        let flipped_spec = spec_for(&flipped_dirs);
        let [a, b] = [point(&raw[0][..d]), point(&raw[1][..d])];
        let negate = |p: &QueryPoint| {
            let mut q = p.clone();
            q.values[k] = -q.values[k];
            q
        };
        prop_assert_eq!(
            dominates(&a, &b, &spec).unwrap(),
            dominates(&negate(&a), &negate(&b), &flipped_spec).unwrap()
        );
    }
}
