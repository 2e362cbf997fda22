//! Randomized invariant checks. Each property is a theorem about the
//! continuous objects, so the assertions carry only rounding slack plus,
//! for grid operations, the advertised one-cell tolerance.

use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use rconvex::geometry::{
    circumradius, omega_t_components, r_convex_hull, CompactSet, Disk, Point, Triangle,
};
use rconvex::grid::GridSpec;
use rconvex::potential::{finite_set_constants, sample_omega, vt_lower_bound, DomainPolicy, GreenSpec};
use rconvex::products::{factor_bound_ap, log_abs_weierstrass_factor, weierstrass_factor};
use rconvex::riesz::{blaschke_integral, distance_power_riesz, weight_corollary1, RieszMeasureGrid};
use rconvex::spectra::{perturb_and_measure, DistanceWeight, MatrixOperator};

fn p(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn min_angle(t: &Triangle) -> f64 {
    let la = t.b.dist(t.c);
    let lb = t.a.dist(t.c);
    let lc = t.a.dist(t.b);
    let ang = |opp: f64, s1: f64, s2: f64| {
        (((s1 * s1 + s2 * s2 - opp * opp) / (2.0 * s1 * s2)).clamp(-1.0, 1.0)).acos()
    };
    ang(la, lb, lc).min(ang(lb, la, lc)).min(ang(lc, la, lb))
}

fn pt(range: f64) -> impl Strategy<Value = Point> {
    (-range..range, -range..range).prop_map(|(x, y)| Point::new(x, y))
}

fn fat_triangle() -> impl Strategy<Value = Triangle> {
    (pt(1.0), pt(1.0), pt(1.0))
        .prop_map(|(a, b, c)| Triangle { a, b, c })
        .prop_filter("sides and angles bounded away from degenerate", |t| {
            t.a.dist(t.b) > 0.2
                && t.b.dist(t.c) > 0.2
                && t.a.dist(t.c) > 0.2
                && min_angle(t) > 0.2
        })
}

fn transform(t: &Triangle, lam: Complex64, mu: Complex64) -> Triangle {
    let f = |q: Point| Point::from_c(lam * q.c() + mu);
    Triangle { a: f(t.a), b: f(t.b), c: f(t.c) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn circumradius_is_similarity_equivariant(
        tri in fat_triangle(),
        modulus in 0.3f64..3.0,
        arg in 0.0f64..std::f64::consts::TAU,
        mu in pt(2.0),
    ) {
        let lam = Complex64::from_polar(modulus, arg);
        let r0 = circumradius(&tri).unwrap().finite();
        prop_assume!(r0.is_some());
        let r0 = r0.unwrap();
        let r1 = circumradius(&transform(&tri, lam, mu.c())).unwrap().finite().unwrap();
        let expect = modulus * r0;
        prop_assert!(
            (r1 - expect).abs() <= 1e-12 * expect.max(1.0),
            "scaled radius {r1} vs {expect}"
        );
    }

    #[test]
    fn circumradius_ignores_vertex_order(tri in fat_triangle()) {
        let base = circumradius(&tri).unwrap().finite();
        prop_assume!(base.is_some());
        let base = base.unwrap();
        let (a, b, cc) = (tri.a, tri.b, tri.c);
        for t in [
            Triangle { a, b: cc, c: b },
            Triangle { a: b, b: a, c: cc },
            Triangle { a: b, b: cc, c: a },
            Triangle { a: cc, b: a, c: b },
            Triangle { a: cc, b, c: a },
        ] {
            let r = circumradius(&t).unwrap().finite().unwrap();
            prop_assert!((r - base).abs() <= 1e-12 * base.max(1.0));
        }
    }

    #[test]
    fn distance_is_one_lipschitz(
        kind in 0usize..4,
        pts in proptest::collection::vec(pt(1.0), 2..8),
        radius in 0.1f64..0.6,
        z1 in pt(2.0),
        z2 in pt(2.0),
    ) {
        let set = match kind {
            0 => CompactSet::finite(pts),
            1 => CompactSet::segment(pts[0], pts[1]),
            2 => CompactSet::curve(pts, false),
            _ => CompactSet::disks(
                pts.iter().take(3).map(|&center| Disk { center, radius }).collect(),
            ),
        };
        prop_assume!(set.is_ok());
        let set = set.unwrap();
        let gap = (set.distance(z1) - set.distance(z2)).abs();
        prop_assert!(gap <= z1.dist(z2) + 1e-12, "gap {gap} vs |z1-z2| {}", z1.dist(z2));
    }
}

fn hull_grid() -> GridSpec {
    GridSpec::square(p(-1.2, -1.2), p(1.2, 1.2), 161).unwrap()
}

/// Nodes whose 8-neighborhood is not uniformly in/out of the mask, plus the
/// grid rim; the one-cell slack every raster comparison is entitled to.
fn boundary_shell(mask: &rconvex::grid::MaskField) -> Vec<bool> {
    let spec = mask.spec;
    let mut shell = vec![false; spec.len()];
    for iy in 0..spec.ny {
        for ix in 0..spec.nx {
            let here = *mask.get(ix, iy);
            let mut edge = ix == 0 || iy == 0 || ix + 1 == spec.nx || iy + 1 == spec.ny;
            for dy in -1i64..=1 {
                for dx in -1i64..=1 {
                    let (jx, jy) = (ix as i64 + dx, iy as i64 + dy);
                    if jx < 0 || jy < 0 || jx >= spec.nx as i64 || jy >= spec.ny as i64 {
                        continue;
                    }
                    if *mask.get(jx as usize, jy as usize) != here {
                        edge = true;
                    }
                }
            }
            shell[spec.idx(ix, iy)] = edge;
        }
    }
    shell
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hull_is_monotone_in_the_set(
        pts in proptest::collection::vec(pt(0.25), 3..7),
        extra in proptest::collection::vec(pt(0.25), 1..4),
        r in 0.1f64..0.45,
    ) {
        let e1 = CompactSet::finite(pts.clone()).unwrap();
        let mut all = pts;
        all.extend(extra);
        let e2 = CompactSet::finite(all).unwrap();
        let g = hull_grid();
        let h1 = r_convex_hull(&e1, g, r).unwrap();
        let h2 = r_convex_hull(&e2, g, r).unwrap();
        for i in 0..g.len() {
            prop_assert!(
                !h1.mask.values[i] || h2.mask.values[i],
                "hull of the subset exceeds the superset's hull at node {i}"
            );
        }
    }

    #[test]
    fn hull_is_nested_in_r(
        pts in proptest::collection::vec(pt(0.25), 3..7),
        r in 0.15f64..0.45,
        shrink in 0.3f64..0.95,
    ) {
        let e = CompactSet::finite(pts).unwrap();
        let g = hull_grid();
        let small = r_convex_hull(&e, g, r * shrink).unwrap();
        let big = r_convex_hull(&e, g, r).unwrap();
        for i in 0..g.len() {
            prop_assert!(!small.mask.values[i] || big.mask.values[i]);
        }
    }

    #[test]
    fn hull_is_idempotent_within_one_cell(
        pts in proptest::collection::vec(pt(0.25), 3..7),
        r in 0.1f64..0.45,
    ) {
        let e = CompactSet::finite(pts).unwrap();
        let g = hull_grid();
        let h1 = r_convex_hull(&e, g, r).unwrap();
        let set2 = rconvex::geometry::hull_as_set(&h1).unwrap();
        let h2 = r_convex_hull(&set2, g, r).unwrap();
        let shell = boundary_shell(&h1.mask);
        for i in 0..g.len() {
            if h1.mask.values[i] != h2.mask.values[i] {
                prop_assert!(
                    shell[i],
                    "re-hulling changed node {i} away from the mask boundary"
                );
            }
        }
    }

    #[test]
    fn rasterized_disk_is_a_fixed_point(
        cx in -0.2f64..0.2,
        cy in -0.2f64..0.2,
        rho in 0.2f64..0.5,
        r in 0.1f64..0.55,
    ) {
        let g = GridSpec::square(p(-1.8, -1.8), p(1.8, 1.8), 181).unwrap();
        let center = p(cx, cy);
        let mask = rconvex::grid::MaskField {
            spec: g,
            values: (0..g.ny)
                .flat_map(|iy| (0..g.nx).map(move |ix| (ix, iy)))
                .map(|(ix, iy)| g.point(ix, iy).dist(center) <= rho)
                .collect(),
        };
        let e = CompactSet::mask(mask).unwrap();
        let h = r_convex_hull(&e, g, r).unwrap();
        prop_assert!(
            h.hausdorff_excess <= 2.0 * g.h,
            "convex raster grew: excess {} vs 2h {}",
            h.hausdorff_excess,
            2.0 * g.h
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn unbounded_component_shrinks_with_t(
        pts in proptest::collection::vec(pt(0.5), 3..6),
        t in 0.06f64..0.25,
        factor in 1.05f64..1.8,
    ) {
        let e = CompactSet::finite(pts).unwrap();
        let t2 = (t * factor).min(0.3);
        let g = GridSpec::square(p(-1.2, -1.2), p(1.2, 1.2), 241).unwrap();
        let comp1 = omega_t_components(&e, t, g).unwrap();
        let comp2 = omega_t_components(&e, t2, g).unwrap();
        for iy in 0..g.ny {
            for ix in 0..g.nx {
                let in2 = *comp2.labels.get(ix, iy) == comp2.unbounded_label;
                let in1 = *comp1.labels.get(ix, iy) == comp1.unbounded_label;
                prop_assert!(
                    !in2 || in1,
                    "node ({ix},{iy}) is in the unbounded part at t'={t2} but not at t={t}"
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn green_estimates_are_positive_and_dominate_the_explicit_bound(
        raw in proptest::collection::vec(pt(1.0), 2..5),
        frac in 0.2f64..0.9,
        seed in 0u64..1_000_000,
    ) {
        let mut pts: Vec<Point> = Vec::new();
        for q in raw {
            if pts.iter().all(|w| w.dist(q) > 0.3) {
                pts.push(q);
            }
        }
        prop_assume!(pts.len() >= 2);
        let e = CompactSet::finite(pts).unwrap();
        let t1 = finite_set_constants(&e).unwrap().t1;
        let t = frac * t1;
        let green = GreenSpec::Collocation {
            t,
            n_sources: 0,
            n_collocation: 0,
            policy: DomainPolicy::RequireConnected,
        }
        .build(&e)
        .unwrap();
        let zs = sample_omega(&e, t, 40, 4.0, seed).unwrap();
        let est = green.estimate(&zs).unwrap();
        for (z, g) in zs.iter().zip(&est.values) {
            prop_assert!(*g >= -est.boundary_residual - 1e-9, "negative beyond residual: {g}");
            let v = vt_lower_bound(&e, t, *z).unwrap();
            prop_assert!(
                *g >= v - est.boundary_residual - 1e-6,
                "estimate {g} under explicit bound {v} at ({}, {})",
                z.x,
                z.y
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn softer_weights_are_pointwise_smaller(
        q in 1.5f64..2.5,
        e_lo in 0.0f64..0.8,
        delta in 0.05f64..0.4,
        x in 0.0f64..4.0,
    ) {
        let w_lo = weight_corollary1(q, e_lo).unwrap();
        let w_hi = weight_corollary1(q, e_lo + delta).unwrap();
        prop_assert!(
            w_hi.phi(x) <= w_lo.phi(x) + 1e-12,
            "phi not monotone in eps at x = {x}"
        );
    }
}

fn shared_segment_measure() -> &'static (CompactSet, RieszMeasureGrid) {
    static MEASURE: OnceLock<(CompactSet, RieszMeasureGrid)> = OnceLock::new();
    MEASURE.get_or_init(|| {
        let e = CompactSet::segment(p(0.0, 0.0), p(1.0, 0.0)).unwrap();
        let g = GridSpec::new(p(-1.3, -1.05), p(2.3, 1.05), 721, 421).unwrap();
        let mu = distance_power_riesz(&e, g, -2.0).unwrap();
        (e, mu)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn blaschke_integral_is_monotone_in_phi(
        q in 1.5f64..2.5,
        e_lo in 0.0f64..0.8,
        delta in 0.05f64..0.4,
        inner in 0.03f64..0.15,
        outer in 0.6f64..1.9,
    ) {
        let (e, mu) = shared_segment_measure();
        let w_lo = weight_corollary1(q, e_lo).unwrap();
        let w_hi = weight_corollary1(q, e_lo + delta).unwrap();
        let i_lo = blaschke_integral(mu, e, &w_lo, inner, outer).unwrap().integral;
        let i_hi = blaschke_integral(mu, e, &w_hi, inner, outer).unwrap().integral;
        prop_assert!(
            i_hi <= i_lo + 1e-12 * i_lo.abs().max(1.0),
            "integral not monotone: soft {i_hi} vs hard {i_lo}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn prime_factor_small_argument_bound(
        p_ord in 0usize..4,
        radius in 0.0f64..1.0,
        arg in 0.0f64..std::f64::consts::TAU,
    ) {
        let z = Complex64::from_polar(radius, arg);
        let gap = (weierstrass_factor(z, p_ord) - c(1.0, 0.0)).norm();
        prop_assert!(
            gap <= radius.powi(p_ord as i32 + 1) + 1e-12,
            "|W - 1| = {gap} above |z|^(p+1) at |z| = {radius}, p = {p_ord}"
        );
    }

    #[test]
    fn prime_factor_growth_bound(
        p_ord in 0usize..4,
        log_radius in -1.0986f64..3.4012,
        arg in 0.0f64..std::f64::consts::TAU,
    ) {
        let radius = log_radius.exp();
        let z = Complex64::from_polar(radius, arg);
        let bound = factor_bound_ap(p_ord) * radius.powi(p_ord as i32);
        prop_assert!(
            log_abs_weierstrass_factor(z, p_ord) <= bound + 1e-9,
            "log|W| above A_p |z|^p at |z| = {radius}, p = {p_ord}"
        );
    }
}

fn hermitian_from(vals: &[f64], n: usize) -> DMatrix<Complex64> {
    let m = DMatrix::from_fn(n, n, |i, j| c(vals[2 * (i * n + j)], vals[2 * (i * n + j) + 1]));
    (&m + m.adjoint()) * c(0.5, 0.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kato_ratio_never_exceeds_one(
        n in 2usize..6,
        vals in proptest::collection::vec(-1.0f64..1.0, 2 * 6 * 6),
        bvals in proptest::collection::vec(-1.0f64..1.0, 2 * 6 * 6),
    ) {
        let a0 = MatrixOperator::self_adjoint(hermitian_from(&vals, n)).unwrap();
        let b = MatrixOperator::self_adjoint(hermitian_from(&bvals, n) * c(0.1, 0.0)).unwrap();
        for q in [1.0, 2.0, 3.0] {
            let rep = perturb_and_measure(&a0, &b, &[DistanceWeight::power(q).unwrap()], &[q]).unwrap();
            prop_assert!(
                rep.ratios[0].ratio <= 1.0 + 1e-10,
                "q = {q}: ratio {}",
                rep.ratios[0].ratio
            );
        }
    }

    #[test]
    fn normal_spectra_move_at_most_the_perturbation_norm(
        n in 2usize..7,
        dvals in proptest::collection::vec(-1.0f64..1.0, 2 * 7),
        uvals in proptest::collection::vec(-1.0f64..1.0, 2 * 7 * 7),
        bvals in proptest::collection::vec(-1.0f64..1.0, 2 * 7 * 7),
    ) {
        let d: Vec<Complex64> = (0..n).map(|i| c(dvals[2 * i], dvals[2 * i + 1])).collect();
        let seedm = DMatrix::from_fn(n, n, |i, j| c(uvals[2 * (i * n + j)], uvals[2 * (i * n + j) + 1]));
        let u = seedm.qr().q();
        let a0m = &u * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(d.clone())) * u.adjoint();
        let bm = DMatrix::from_fn(n, n, |i, j| c(bvals[2 * (i * n + j)], bvals[2 * (i * n + j) + 1]))
            * c(0.05, 0.0);
        let b = MatrixOperator::general(bm.clone()).unwrap();
        let bnorm = b.operator_norm().unwrap();
        let a = MatrixOperator::general(&a0m + &bm).unwrap();
        for lam in a.eigenvalues().unwrap() {
            let dist = d.iter().map(|m| (lam - m).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(
                dist <= bnorm + 1e-10,
                "eigenvalue strayed {dist} with perturbation norm {bnorm}"
            );
        }
    }
}
