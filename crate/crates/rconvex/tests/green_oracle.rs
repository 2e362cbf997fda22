//! Monte Carlo cross-check of the collocation Green's function.
//!
//! A walk-on-spheres estimator needs nothing but the distance function, so it
//! shares no code (and no failure modes) with the collocation solver. The
//! two-radius form below cancels the unknown Robin constant: with
//! `u_R(z)` the probability that Brownian motion from `z` reaches `|w| = R`
//! before the capture band `d_E <= t`,
//!
//! ```text
//! u_R(z) ~ G(z) / (ln R + gamma)   =>   G(z) = ln(R2/R1) / (1/u2 - 1/u1).
//! ```

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rconvex::geometry::{CompactSet, Point};
use rconvex::potential::{CollocationGreen, CollocationOptions, GreenFunction};
use std::f64::consts::PI;

/// One walk: start at `z`, step on maximal spheres inside `Omega_t` clipped to
/// `B(0, R)`, stop on either capture band. Returns true on outer absorption.
fn walk(e: &CompactSet, t: f64, z: Point, r_outer: f64, rng: &mut ChaCha8Rng) -> bool {
    let eps_inner = 1e-4;
    let eps_outer = 1e-4 * r_outer;
    let mut x = z;
    for _ in 0..100_000 {
        let d = e.distance(x) - t;
        if d <= eps_inner {
            return false;
        }
        let room = r_outer - x.norm();
        if room <= eps_outer {
            return true;
        }
        let step = d.min(room);
        let a = rng.gen_range(0.0..2.0 * PI);
        x = Point::new(x.x + step * a.cos(), x.y + step * a.sin());
    }
    panic!("walk failed to terminate");
}

struct HitRate {
    u: f64,
    var: f64,
}

fn hit_rate(e: &CompactSet, t: f64, z: Point, r_outer: f64, n: usize, seed: u64) -> HitRate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    for _ in 0..n {
        if walk(e, t, z, r_outer, &mut rng) {
            hits += 1;
        }
    }
    let u = hits as f64 / n as f64;
    HitRate { u, var: u * (1.0 - u) / n as f64 }
}

/// Two-radius estimate of `G_t(z, infinity)` with a delta-method standard
/// error (the two radii use independent walk streams).
fn wos_green(e: &CompactSet, t: f64, z: Point, n: usize, seed: u64) -> (f64, f64) {
    let (r1, r2) = (200.0, 2000.0);
    let a = hit_rate(e, t, z, r1, n, seed);
    let b = hit_rate(e, t, z, r2, n, seed ^ 0x9e37_79b9_7f4a_7c15);
    let l = (r2 / r1).ln();
    let d = 1.0 / b.u - 1.0 / a.u;
    let g = l / d;
    let scale = l / (d * d);
    let var = scale * scale * (b.var / b.u.powi(4) + a.var / a.u.powi(4));
    (g, var.sqrt())
}

#[test]
fn collocation_matches_walk_on_spheres() {
    let e = CompactSet::segment(Point::new(0.0, 0.0), Point::new(1.0, 0.0)).unwrap();
    let t = 0.2;
    let queries = [Point::new(2.0, 0.0), Point::new(0.5, 0.8)];

    let green = CollocationGreen::build(&e, t, &CollocationOptions::default()).unwrap();
    let est = green.estimate(&queries).unwrap();

    for (k, &z) in queries.iter().enumerate() {
        let (g_mc, se) = wos_green(&e, t, z, 200_000, 40 + k as u64);
        let g_solver = est.values[k];
        // 3 sigma statistical band plus a small systematic allowance for the
        // capture bands and the finite outer radii.
        let tol = 3.0 * se + 0.01;
        assert!(
            (g_solver - g_mc).abs() <= tol,
            "z = ({}, {}): collocation {g_solver:.4} vs walk-on-spheres {g_mc:.4} \
             (se {se:.4}, tol {tol:.4})",
            z.x,
            z.y
        );
    }
}

#[test]
fn walk_on_spheres_recovers_disk_green() {
    // Exterior of the unit disk has G(z) = ln |z| exactly.
    let e = CompactSet::disks(vec![rconvex::geometry::Disk {
        center: Point::new(0.0, 0.0),
        radius: 1.0,
    }])
    .unwrap();
    let z = Point::new(3.0, 0.0);
    let (g_mc, se) = wos_green(&e, 0.0, z, 120_000, 11);
    let exact = 3.0f64.ln();
    assert!(
        (g_mc - exact).abs() <= 3.0 * se + 0.01,
        "disk: walk-on-spheres {g_mc:.4} vs exact {exact:.4} (se {se:.4})"
    );
}
