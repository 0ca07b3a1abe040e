use maxdist::generators::{DatasetSpec, Distribution};
use maxdist::polar::{
    compute_aabb_and_extremals, initial_polygon_filter, polar_divide_with, recheck_with,
    PolarState, Witness,
};
use maxdist::{brute_force_diameter, diameter, generate, PipelineConfig, Point};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn oracle2(points: &[Point]) -> f64 {
    brute_force_diameter(points).unwrap().distance2
}

fn cloud(max_len: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 2..max_len)
        .prop_map(|v| v.into_iter().map(Point::from).collect())
}

/// Small integer lattice: lots of collinear points and exact ties.
fn lattice(max_len: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec((-6i32..=6, -6i32..=6), 2..max_len).prop_map(|v| {
        v.into_iter()
            .map(|(x, y)| Point::new(x as f64, y as f64))
            .collect()
    })
}

#[test]
fn matches_oracle_on_every_distribution() {
    for d in Distribution::ALL {
        for n in [2, 3, 4, 10, 100, 1000, 10_000] {
            for seed in 0..3 {
                let pts = generate(&DatasetSpec::new(d, n, seed)).unwrap();
                let got = diameter(&pts, &PipelineConfig::default()).unwrap();
                assert_eq!(got.distance2, oracle2(&pts), "{d} n={n} seed={seed}");
            }
        }
    }
}

fn recheck_survivors(pts: &[Point]) -> Vec<Point> {
    let (aabb, poly) = compute_aabb_and_extremals(pts).unwrap();
    let filtered = initial_polygon_filter(pts, &poly);
    match polar_divide_with(&filtered, &aabb, &poly, &mut ()) {
        Ok(state) => recheck_with(&state, &mut ()),
        Err(_) => filtered,
    }
}

/// 200 instances per distribution, 40 seeds at each size.
#[test]
fn survivors_hold_the_diameter() {
    for d in Distribution::ALL {
        for n in [4, 10, 100, 1000, 10_000] {
            for seed in 0..40 {
                let pts = generate(&DatasetSpec::new(d, n, 500 + seed)).unwrap();
                let survivors = recheck_survivors(&pts);
                assert!(survivors.len() >= 2, "{d} n={n} seed={seed}");
                assert_eq!(oracle2(&survivors), oracle2(&pts), "{d} n={n} seed={seed}");
            }
        }
    }
}

#[test]
fn survivors_keep_axis_extremes() {
    for d in Distribution::ALL {
        let pts = generate(&DatasetSpec::new(d, 5000, 17)).unwrap();
        let (_, poly) = compute_aabb_and_extremals(&pts).unwrap();
        let survivors = recheck_survivors(&pts);
        for v in poly.vertices() {
            assert!(survivors.contains(v), "{d}: extremal {v:?} dropped");
        }
    }
}

#[test]
fn r_min_distance_never_grows() {
    let pts = generate(&DatasetSpec::new(Distribution::UniformEllipse, 5000, 3)).unwrap();
    let (aabb, poly) = compute_aabb_and_extremals(&pts).unwrap();
    let mut state = PolarState::new(&aabb, poly).unwrap();
    let mut last: Vec<f64> = state.sectors().iter().map(|s| s.r_min_dist2).collect();
    for &p in &pts {
        state.insert(p, &mut ());
        for (s, prev) in state.sectors().iter().zip(last.iter_mut()) {
            assert!(s.r_min_dist2 <= *prev);
            *prev = s.r_min_dist2;
        }
    }
}

#[test]
fn every_witness_is_a_strict_triangle_hit() {
    let pts = generate(&DatasetSpec::new(Distribution::GaussRing, 20_000, 8)).unwrap();
    let (aabb, poly) = compute_aabb_and_extremals(&pts).unwrap();
    let filtered = initial_polygon_filter(&pts, &poly);
    let mut witnesses: Vec<Witness> = Vec::new();
    let state = polar_divide_with(&filtered, &aabb, &poly, &mut witnesses).unwrap();
    let survivors = recheck_with(&state, &mut witnesses);
    assert_eq!(witnesses.len() + survivors.len(), filtered.len());
    for w in &witnesses {
        let (a, b) = w.chord;
        assert!(maxdist::geometry::strictly_inside_triangle(
            w.center, a, b, w.point
        ));
    }
}

#[test]
fn input_order_does_not_change_the_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in Distribution::ALL {
        let mut pts = generate(&DatasetSpec::new(d, 3000, 5)).unwrap();
        let want = diameter(&pts, &PipelineConfig::default())
            .unwrap()
            .distance2;
        for _ in 0..5 {
            pts.shuffle(&mut rng);
            assert_eq!(
                diameter(&pts, &PipelineConfig::default())
                    .unwrap()
                    .distance2,
                want,
                "{d}"
            );
        }
    }
}

#[test]
fn duplicated_points_are_harmless() {
    let base = generate(&DatasetSpec::new(Distribution::Gauss, 500, 2)).unwrap();
    let mut pts = base.clone();
    pts.extend_from_slice(&base);
    pts.extend_from_slice(&base[..50]);
    let got = diameter(&pts, &PipelineConfig::default()).unwrap();
    assert_eq!(got.distance2, oracle2(&base));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn random_clouds_match_oracle(pts in cloud(300)) {
        let got = diameter(&pts, &PipelineConfig::default()).unwrap();
        prop_assert_eq!(got.distance2, oracle2(&pts));
        let (p, q) = got.pair;
        prop_assert_eq!(maxdist::geometry::squared_distance(p, q), got.distance2);
        prop_assert!(pts.contains(&p) && pts.contains(&q));
    }

    #[test]
    fn lattices_match_oracle(pts in lattice(80)) {
        prop_assert_eq!(diameter(&pts, &PipelineConfig::default()).unwrap().distance2, oracle2(&pts));
    }

    #[test]
    fn any_grid_size_matches_oracle(pts in cloud(200), k in 1usize..40) {
        let got = diameter(&pts, &PipelineConfig::with_k(k)).unwrap();
        prop_assert_eq!(got.distance2, oracle2(&pts));
        prop_assert_eq!(got.stats.k_used, k);
    }

    #[test]
    fn stage_counts_only_shrink(pts in cloud(400)) {
        let s = diameter(&pts, &PipelineConfig::default()).unwrap().stats;
        prop_assert_eq!(s.n_input, pts.len());
        prop_assert!(s.n_after_initial_polygon <= s.n_input);
        prop_assert!(s.n_after_polar <= s.n_after_initial_polygon);
        prop_assert!(s.n_after_recheck <= s.n_after_polar);
        prop_assert!(s.pairs_surviving <= s.pairs_total);
    }

    #[test]
    fn thin_slivers_match_oracle(
        pts in prop::collection::vec((0f64..1.0, -1e-9f64..1e-9), 2..200)
    ) {
        let pts: Vec<Point> = pts.into_iter().map(|(x, y)| Point::new(x * 1e6, y + x)).collect();
        prop_assert_eq!(diameter(&pts, &PipelineConfig::default()).unwrap().distance2, oracle2(&pts));
    }
}
