use polygrowth::ca::iterate;
use polygrowth::geometry::{k_star, wulff_shape, Direction, Q};
use polygrowth::sim::{estimate_k_polygon, grow_finite_replica, hausdorff_to_polygon, PerturbationSpec, StripConfig};
use polygrowth::solvable::marginal_check;
use polygrowth::{LatticeState, MonotoneRule, Rect};

fn dirs(list: &[(i64, i64)]) -> Vec<Direction> {
    list.iter().map(|&(x, y)| Direction::new(x, y).unwrap()).collect()
}

#[test]
fn deterministic_growth_tracks_the_wulff_shape() {
    for (rule, seed_rect) in [
        (MonotoneRule::box_threshold(1, 3), Rect::new(-3, -3, 6, 6)),
        (MonotoneRule::box_threshold(1, 2), Rect::new(-2, -2, 4, 4)),
        (MonotoneRule::box_threshold(2, 8), Rect::new(-6, -6, 12, 12)),
    ] {
        let l = wulff_shape(&rule).unwrap();
        let mut st = LatticeState::block(seed_rect);
        let mut t = 0u64;
        for target in [50u64, 100, 150, 200] {
            st = iterate(&rule, &st, target - t).unwrap();
            t = target;
            let d = hausdorff_to_polygon(&st, &l, Q::from_integer(t as i128)).unwrap();
            assert!(d <= 10.0, "{rule:?} t={t}: {d}");
        }
    }
}

#[test]
fn perturbed_moore_three_stays_near_its_shape() {
    let rule = MonotoneRule::box_threshold(1, 3);
    let spec = PerturbationSpec::standard(rule.clone(), 0.9).unwrap();
    let horizon = 300u64;
    let seed: Vec<_> = Rect::new(-3, -3, 6, 6).sites().collect();
    let reps = 20u64;
    let l = wulff_shape(&rule).unwrap();
    let mut close = 0;
    let mut worst = 0.0f64;
    for r in 0..reps {
        let run = grow_finite_replica(&spec, &seed, horizon, 77, r, None).unwrap();
        let d = hausdorff_to_polygon(&run.final_state, &l, Q::from_integer(horizon as i128)).unwrap();
        worst = worst.max(d);
        if d <= 0.1 * horizon as f64 {
            close += 1;
        }
    }
    assert!(close * 100 >= 95 * reps, "{close}/{reps} runs within 0.1 T");
    eprintln!("worst distance {worst:.2} at T = {horizon}");
}

#[test]
fn strip_polygon_at_p_one_is_k_star() {
    let rule = MonotoneRule::box_threshold(1, 3);
    let spec = PerturbationSpec::standard(rule.clone(), 1.0).unwrap();
    let star = k_star(&rule).unwrap();
    let list = dirs(&[(0, 1), (1, 2), (1, 1), (2, 1), (1, 0), (-1, 2), (-1, -1), (3, -1)]);
    let template = StripConfig::new(list[0], 60, 100);
    let boundary = star.as_polygon().to_f64();
    for ks in estimate_k_polygon(&spec, &list, &template, 5).unwrap() {
        let v = ks.estimate.direction.v();
        let (rx, ry) = ks.radial.expect("positive speed");
        let (bx, by) = ray_hit(&boundary, (v.x as f64, v.y as f64));
        assert!((rx - bx).abs() < 1e-9 && (ry - by).abs() < 1e-9, "{v:?}: ({rx}, {ry}) vs ({bx}, {by})");
    }
}

/// Where the ray from the origin along `d` leaves a star-shaped polygon.
fn ray_hit(poly: &[(f64, f64)], d: (f64, f64)) -> (f64, f64) {
    let n = poly.len();
    let mut best = f64::INFINITY;
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        let e = (b.0 - a.0, b.1 - a.1);
        let den = d.0 * e.1 - d.1 * e.0;
        if den.abs() < 1e-15 {
            continue;
        }
        let s = (a.0 * e.1 - a.1 * e.0) / den;
        let u = (a.0 * d.1 - a.1 * d.0) / den;
        if s > 0.0 && (-1e-12..=1.0 + 1e-12).contains(&u) {
            best = best.min(s);
        }
    }
    (d.0 * best, d.1 * best)
}

#[test]
fn opposite_strip_velocities_agree() {
    let rule = MonotoneRule::box_threshold(1, 3);
    let spec = PerturbationSpec::standard(rule, 0.85).unwrap();
    for (x, y) in [(0, 1), (1, 2), (1, 1)] {
        let pair = dirs(&[(x, y), (-x, -y)]);
        let template = StripConfig::new(pair[0], 128, 1200);
        let est = estimate_k_polygon(&spec, &pair, &template, 19).unwrap();
        let (a, b) = (&est[0].estimate, &est[1].estimate);
        let pooled = (a.stderr * a.stderr + b.stderr * b.stderr).sqrt();
        assert!((a.estimate - b.estimate).abs() <= 3.0 * pooled, "{x},{y}: {} vs {} (pooled {pooled})", a.estimate, b.estimate);
    }
}

#[test]
fn solvable_marginals_agree() {
    for p in [0.4, 0.7] {
        let rep = marginal_check(p, 30, 10, 300, 4).unwrap();
        assert!(rep.ks < 0.1, "p={p}: ks {}", rep.ks);
    }
}
