use std::f64::consts::{FRAC_PI_3, FRAC_PI_6, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stl_core::hex_packing::{breakdown, count_semicircle_from, HexConfig};
use stl_core::{hex_oracle, SwarmParams};

/// Random configurations biased toward the degenerate ones: integer and half-integer
/// `u`, packing angles that line columns up with the corridor, and `T` on a grid.
#[test]
fn closed_form_matches_enumeration_part_by_part() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let angles = [
        0.0,
        PI / 12.0,
        FRAC_PI_6,
        5.0 * PI / 18.0,
        FRAC_PI_3 - 1e-9,
        1e-12,
    ];
    let mut mismatches = Vec::new();
    for i in 0..20_000 {
        let d: f64 = rng.gen_range(0.2..3.0);
        let v: f64 = rng.gen_range(0.05..5.0);
        let u = if i % 3 == 0 {
            rng.gen_range(1..20) as f64 * 0.5
        } else {
            rng.gen_range(0.5..10.0)
        };
        let th = if i % 2 == 0 {
            angles[rng.gen_range(0..angles.len())]
        } else {
            rng.gen_range(0.0..FRAC_PI_3)
        };
        let t = if i % 4 == 0 {
            rng.gen_range(1..500) as f64 * 0.1 * d / v
        } else {
            rng.gen_range(1e-9..50.0) * d / v
        };
        let p = SwarmParams::new(v, d, u * d).unwrap();
        let cfg = HexConfig::new(th).unwrap();
        let b = breakdown(t, &cfg, &p).unwrap();
        let parts = hex_oracle::count_parts(t, &cfg, &p).unwrap();
        if parts != (b.rect_count, b.semi_count) {
            mismatches.push((d, v, u, th, t, parts, (b.rect_count, b.semi_count)));
        }
    }
    assert!(
        mismatches.is_empty(),
        "{} mismatches, first {:?}",
        mismatches.len(),
        mismatches.first()
    );
}

/// Once the rectangle exists the half-disc count is a property of the lattice alone.
#[test]
fn cap_count_ignores_frame_origin() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let u: f64 = rng.gen_range(0.5..6.0);
        let th: f64 = rng.gen_range(0.0..FRAC_PI_3);
        let t: f64 = u + rng.gen_range(0.01..30.0);
        let p = SwarmParams::new(1.0, 1.0, u).unwrap();
        let cfg = HexConfig::new(th).unwrap();
        let b = breakdown(t, &cfg, &p).unwrap();
        let pts = hex_oracle::enumerate_region(t, &cfg, &p).unwrap();
        let q = pts[rng.gen_range(0..pts.len())];
        assert_eq!(
            count_semicircle_from(t, &cfg, &p, (q.x, q.y)).unwrap(),
            b.semi_count,
            "u={u} th={th} t={t} q={q:?} last={:?}",
            b.last_robot
        );
    }
}
