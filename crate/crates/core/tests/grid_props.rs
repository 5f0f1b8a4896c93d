//! Property tests for the radial grid layer.

use num_complex::Complex64;
use proptest::prelude::*;
use ssl_core::grid::{RadialGrid, SectorField};
use std::sync::Arc;

fn test_grid(l: u32) -> Arc<RadialGrid> {
    RadialGrid::new(20.0, 64, l).unwrap()
}

/// Smooth decaying field with pseudo-random shape parameters.
fn bump(grid: Arc<RadialGrid>, a: f64, b: f64, phase: f64) -> SectorField {
    SectorField::from_fn(grid, |r| {
        Complex64::from_polar((-b * r * r).exp() * (1.0 + a * r), phase * r)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laplacian_is_linear(
        a in -3.0f64..3.0,
        b in 0.05f64..0.8,
        c in -3.0f64..3.0,
        d in 0.05f64..0.8,
        re in -2.0f64..2.0,
        im in -2.0f64..2.0,
        l in 0u32..2,
    ) {
        let grid = test_grid(l);
        let f = bump(grid.clone(), a, b, 0.3);
        let g = bump(grid.clone(), c, d, -0.7);
        let alpha = Complex64::new(re, im);
        let beta = Complex64::new(im, -re);
        let lhs = f.scale(alpha).add(&g.scale(beta)).laplacian();
        let rhs = f.laplacian().scale(alpha).add(&g.laplacian().scale(beta));
        let scale = rhs.sup_norm().max(1.0);
        prop_assert!(lhs.sub(&rhs).sup_norm() <= 1e-11 * scale);
    }

    #[test]
    fn l2_norms_are_homogeneous(
        a in -3.0f64..3.0,
        b in 0.05f64..0.8,
        re in -2.0f64..2.0,
        im in -2.0f64..2.0,
        s in 0.0f64..2.0,
    ) {
        let grid = test_grid(0);
        let f = bump(grid, a, b, 0.9);
        let c = Complex64::new(re, im);
        let n1 = f.scale(c).sobolev_norm(s, 2.0).unwrap();
        let n2 = c.norm() * f.sobolev_norm(s, 2.0).unwrap();
        prop_assert!((n1 - n2).abs() <= 1e-10 * n2.max(1e-30));
    }

    #[test]
    fn l2_norms_satisfy_triangle_inequality(
        a in -3.0f64..3.0,
        b in 0.05f64..0.8,
        c in -3.0f64..3.0,
        d in 0.05f64..0.8,
        s in 0.0f64..2.0,
    ) {
        let grid = test_grid(0);
        let f = bump(grid.clone(), a, b, 0.2);
        let g = bump(grid, c, d, -1.1);
        let sum = f.add(&g).sobolev_norm(s, 2.0).unwrap();
        let parts = f.sobolev_norm(s, 2.0).unwrap() + g.sobolev_norm(s, 2.0).unwrap();
        prop_assert!(sum <= parts * (1.0 + 1e-12) + 1e-12);
    }

    #[test]
    fn quadrature_weights_reproduce_cubic_volume(
        r_max in 5.0f64..60.0,
        n in 16usize..400,
    ) {
        let grid = RadialGrid::new(r_max, n, 0).unwrap();
        let q = grid.integrate(&vec![1.0; n]);
        let exact = r_max * r_max * r_max / 3.0;
        prop_assert!((q - exact).abs() <= 1e-10 * exact);
    }
}
