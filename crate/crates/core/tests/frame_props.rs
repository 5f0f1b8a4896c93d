//! Structural properties of the soliton frame: gauge invariance of the
//! pairing, scaling of its entries along the family, idempotence of the
//! projection, and homogeneity of the momentum cross term.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ssl_core::frame::{
    build_soliton, momentum_split_check, nearest_soliton, tangent_frame, SolitonParams,
    IDX_ALPHA, IDX_D, IDX_GAMMA, IDX_V,
};
use ssl_core::grid::{RadialGrid, SectorField, Spinor, TEST_N};
use std::sync::Arc;

const TOL: f64 = 1e-9;

fn coarse_grid() -> Arc<RadialGrid> {
    RadialGrid::new(15.0, TEST_N, 0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pairing_entries_ignore_the_phase(gamma in -3.0f64..3.0) {
        let grid = coarse_grid();
        let base = tangent_frame(&SolitonParams::radial(1.0, 0.0), &grid, TOL).unwrap();
        let turned = tangent_frame(&SolitonParams::radial(1.0, gamma), &grid, TOL).unwrap();
        for f in 0..8 {
            for g in 0..8 {
                prop_assert!(
                    (base.pairing[f][g] - turned.pairing[f][g]).abs() < 1e-12 * base.norm_sq
                );
            }
        }
    }

    #[test]
    fn pairing_diagonal_follows_the_scaling_laws(alpha in 0.6f64..1.8) {
        let grid = coarse_grid();
        let base = tangent_frame(&SolitonParams::radial(1.0, 0.0), &grid, TOL).unwrap();
        let scaled = tangent_frame(&SolitonParams::radial(alpha, 0.0), &grid, TOL).unwrap();
        // M(alpha) = M(1)/alpha, so the radial diagonal scales as alpha^-2
        // and the dipole diagonal as alpha^-1. The range is the window where
        // this grid resolves the law to 1e-5: below it domain truncation
        // (r^4 e^{-2 alpha r_max}, measured 1.9e-6 at alpha = 0.6, over the
        // bound by 0.5) takes over, above it the h = 0.059 spacing stops
        // resolving the narrowing soliton (1.2e-5 at alpha = 1.8, over the
        // bound by 1.95; pure spacing, identical defect under r_max changes).
        let aa = scaled.pairing[IDX_ALPHA][IDX_ALPHA] * alpha * alpha;
        let gg = scaled.pairing[IDX_GAMMA][IDX_GAMMA] * alpha * alpha;
        let vv = scaled.pairing[IDX_V][IDX_V] * alpha;
        let dd = scaled.pairing[IDX_D][IDX_D] * alpha;
        prop_assert!((aa - base.pairing[IDX_ALPHA][IDX_ALPHA]).abs() < 1e-5 * base.norm_sq);
        prop_assert!((gg - base.pairing[IDX_GAMMA][IDX_GAMMA]).abs() < 1e-5 * base.norm_sq);
        prop_assert!((vv - base.pairing[IDX_V][IDX_V]).abs() < 1e-5 * base.norm_sq);
        prop_assert!((dd - base.pairing[IDX_D][IDX_D]).abs() < 1e-5 * base.norm_sq);
    }

    #[test]
    fn projection_is_idempotent(seed in 0u64..1u64 << 32) {
        let grid = coarse_grid();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let anchor = SolitonParams::radial(
            rng.random_range(0.92..1.08),
            rng.random_range(-0.4..0.4),
        );
        let w = build_soliton(&anchor, &grid, TOL).unwrap();
        let center = rng.random_range(0.5..5.0);
        let carrier = rng.random_range(0.5..2.5);
        let bump = Spinor::physical(SectorField::from_fn(grid.clone(), |r| {
            Complex64::from_polar(1.0, carrier * r) * (-(r - center) * (r - center)).exp()
        }));
        let scale = 0.02 / bump.upper.sobolev_norm(0.5, 2.0).unwrap();
        let psi = w.axpby(Complex64::new(1.0, 0.0), Complex64::new(scale, 0.0), &bump);
        let (p1, r1) = nearest_soliton(&psi, &anchor, TOL).unwrap();
        prop_assert!(p1.gamma > -std::f64::consts::PI && p1.gamma <= std::f64::consts::PI);
        // Seeding the solve at its own answer must not move it.
        let (p2, r2) = nearest_soliton(&psi, &p1, TOL).unwrap();
        prop_assert!((p2.alpha - p1.alpha).abs() < 1e-12);
        prop_assert!((p2.gamma - p1.gamma).abs() < 1e-12);
        prop_assert!(r2.sub(&r1).sup_norm() < 1e-12 * psi.sup_norm());
    }

    #[test]
    fn momentum_cross_term_is_homogeneous_in_the_remainder(
        c in 0.1f64..10.0,
        width in 0.2f64..0.6,
        im in -1.0f64..1.0,
    ) {
        let grid = coarse_grid();
        let w = build_soliton(&SolitonParams::radial(1.0, 0.0), &grid, TOL).unwrap();
        let grid1 = grid.with_sector(1).unwrap();
        let rho = SectorField::from_fn(grid1, |r| {
            Complex64::new(1.0, im) * r * (-width * r * r).exp()
        });
        let rem = Spinor::physical(rho);
        let one = momentum_split_check(&w, &rem).unwrap();
        let scaled = momentum_split_check(&w, &rem.scale_re(c)).unwrap();
        prop_assert!((scaled - c * one).abs() <= 1e-10 * (1.0 + scaled));
    }
}
