//! Scaling algebra of the conserved functionals on synthetic fields.

use num_complex::Complex64;
use proptest::prelude::*;
use ssl_core::grid::{RadialGrid, SectorField, TEST_N};
use ssl_core::ground::{conserved_functionals, product_functional};

fn smooth_field(amp: f64, width: f64, tilt: f64, phase: f64) -> SectorField {
    let grid = RadialGrid::new(15.0, TEST_N, 0).unwrap();
    SectorField::from_fn(grid, |r| {
        Complex64::from_polar(amp * (1.0 + tilt * r * r) * (-width * r * r).exp(), phase * r)
    })
}

fn quartic_of(f: &SectorField) -> f64 {
    f.grid()
        .weights()
        .iter()
        .zip(f.values())
        .map(|(w, v)| w * v.norm_sqr() * v.norm_sqr())
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mass_and_half_norm_are_homogeneous(
        amp in 0.1f64..2.0,
        width in 0.2f64..1.5,
        tilt in 0.0f64..0.5,
        phase in -1.0f64..1.0,
        c in 0.25f64..3.0,
    ) {
        let f = smooth_field(amp, width, tilt, phase);
        let scaled = f.scale_re(c);
        let (m, _, hh) = conserved_functionals(&f).unwrap();
        let (ms, _, hhs) = conserved_functionals(&scaled).unwrap();
        prop_assert!((ms - c * c * m).abs() <= 1e-10 * (1.0 + ms.abs()));
        prop_assert!((hhs - c * hh).abs() <= 1e-10 * (1.0 + hhs.abs()));
    }

    #[test]
    fn energy_splits_into_quadratic_and_quartic_parts(
        amp in 0.1f64..2.0,
        width in 0.2f64..1.5,
        tilt in 0.0f64..0.5,
        c in 0.25f64..3.0,
    ) {
        let f = smooth_field(amp, width, tilt, 0.0);
        let scaled = f.scale_re(c);
        let (_, e, _) = conserved_functionals(&f).unwrap();
        let (_, es, _) = conserved_functionals(&scaled).unwrap();
        let q = quartic_of(&f);
        let c2 = c * c;
        let predicted = c2 * e - 0.5 * (c2 * c2 - c2) * q;
        prop_assert!((es - predicted).abs() <= 1e-9 * (1.0 + es.abs()));
    }

    #[test]
    fn product_functional_follows_its_scaling_polynomial(
        amp in 0.1f64..1.5,
        width in 0.2f64..1.5,
        c in 0.25f64..2.5,
    ) {
        let f = smooth_field(amp, width, 0.0, 0.0);
        let (m, _, _) = conserved_functionals(&f).unwrap();
        let grad_sq = f.sobolev_norm(1.0, 2.0).unwrap().powi(2);
        let q = quartic_of(&f);
        let c2 = c * c;
        let predicted = c2 * m * (0.5 * c2 * grad_sq - 0.25 * c2 * c2 * q);
        let measured = product_functional(&f.scale_re(c)).unwrap();
        prop_assert!((measured - predicted).abs() <= 1e-9 * (1.0 + measured.abs()));
    }
}
