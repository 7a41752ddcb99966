mod common;

use common::canyon;
use o2i_core::baselines::{gpp_o2i_pg, slope_intercept_pg, GppO2iParams};
use o2i_core::calibration::{
    compare_models, fit_slope_intercept, model_rmse, theory_prediction, MeasurementRecord, OVERALL_LABEL,
};
use o2i_core::{Point2, Point3, PropagationConstants};
use proptest::prelude::*;

fn noisy(n: f64, a: f64, pts: &[(f64, f64)]) -> Vec<MeasurementRecord> {
    pts.iter()
        .map(|&(r, e)| MeasurementRecord::new("s", r, -(a + 10.0 * n * r.log10()) + e).unwrap())
        .collect()
}

fn sse(recs: &[MeasurementRecord], n: f64, a: f64) -> f64 {
    recs.iter()
        .map(|r| (-r.path_gain_db - a - 10.0 * n * r.range_m.log10()).powi(2))
        .sum()
}

/// Records along the 6 m aisle of the canyon fixture, labelled with their
/// ray-model prediction plus `offset(i)`.
fn aisle_records(offset: impl Fn(usize) -> f64) -> Vec<MeasurementRecord> {
    let scene = canyon(Point2::default());
    let consts = PropagationConstants::default();
    let tx = scene.tx_sites[0].position;
    (0..40)
        .map(|i| {
            let pos = Point3::new(10.0 + i as f64, 6.0, 1.5);
            let range = ((tx.x - pos.x).powi(2) + (tx.y - pos.y).powi(2) + (tx.z - pos.z).powi(2)).sqrt();
            let seed = MeasurementRecord::new("Tx1-7B-S", range, -100.0)
                .unwrap()
                .with_geometry(pos, "Tx1");
            let pg = theory_prediction(&scene, &consts, &seed).unwrap();
            MeasurementRecord {
                path_gain_db: pg + offset(i),
                ..seed
            }
        })
        .collect()
}

#[test]
fn alternating_residuals_give_three_db() {
    let recs = aisle_records(|i| if i % 2 == 0 { 3.0 } else { -3.0 });
    let scene = canyon(Point2::default());
    let consts = PropagationConstants::default();
    let rmse = model_rmse(&recs, |r| theory_prediction(&scene, &consts, r)).unwrap();
    assert!((rmse - 3.0).abs() < 1e-9);
}

#[test]
fn synthetic_theory_records_score_zero() {
    let recs = aisle_records(|_| 0.0);
    let scene = canyon(Point2::default());
    let table = compare_models(
        &recs,
        &scene,
        &PropagationConstants::default(),
        &GppO2iParams::default(),
    );
    assert!(table.skipped.is_empty(), "{:?}", table.skipped);
    assert_eq!(table.rows.len(), 2);
    assert_eq!(table.rows[1].subset, OVERALL_LABEL);
    for row in &table.rows {
        assert_eq!(row.theory_rmse_db, 0.0);
        assert!(row.fit.rmse_db >= 0.0);
        assert!(row.gpp_rmse_db > 0.0);
    }
}

#[test]
fn subsets_without_geometry_are_skipped() {
    let mut recs = aisle_records(|_| 0.0);
    recs.extend([
        MeasurementRecord::new("bare", 20.0, -120.0).unwrap(),
        MeasurementRecord::new("bare", 40.0, -126.0).unwrap(),
    ]);
    let scene = canyon(Point2::default());
    let table = compare_models(
        &recs,
        &scene,
        &PropagationConstants::default(),
        &GppO2iParams::default(),
    );
    assert_eq!(table.skipped.len(), 1);
    assert_eq!(table.skipped[0].subset, "bare");
    assert!(table.rows.iter().all(|r| r.subset != "bare"));
    // Pooled row only covers scored subsets.
    assert_eq!(table.rows.last().unwrap().fit.n_records, 40);
}

#[test]
fn gpp_records_score_zero_on_gpp() {
    let gpp = GppO2iParams::default();
    let mut recs = aisle_records(|_| 0.0);
    for r in &mut recs {
        r.path_gain_db = gpp_o2i_pg(&gpp, r.range_m).unwrap();
    }
    let scene = canyon(Point2::default());
    let table = compare_models(&recs, &scene, &PropagationConstants::default(), &gpp);
    let overall = table.rows.last().unwrap();
    assert_eq!(overall.gpp_rmse_db, 0.0);
    assert!(overall.theory_rmse_db > 0.0);
}

#[test]
fn pooled_exponent_drops_below_subsets() {
    // Near subset: high intercept, far subset: low intercept, same slope.
    let mut recs: Vec<_> = (0..10)
        .map(|i| {
            let r = 5.0 + 2.0 * i as f64;
            MeasurementRecord::new("near", r, -(140.0 + 20.0 * r.log10())).unwrap()
        })
        .collect();
    recs.extend((0..10).map(|i| {
        let r = 60.0 + 4.0 * i as f64;
        MeasurementRecord::new("far", r, -(110.0 + 20.0 * r.log10())).unwrap()
    }));
    let near = fit_slope_intercept(&recs[..10]).unwrap();
    let far = fit_slope_intercept(&recs[10..]).unwrap();
    let pooled = fit_slope_intercept(&recs).unwrap();
    assert!(pooled.exponent_n < near.exponent_n.min(far.exponent_n));
}

proptest! {
    #[test]
    fn ols_is_optimal(
        n in 0.5..4.0f64, a in 60.0..150.0f64,
        noise in prop::collection::vec(-5.0..5.0f64, 6),
        dn in prop_oneof![Just(-0.01), Just(0.01), Just(0.0)],
        da in prop_oneof![Just(-0.01), Just(0.01), Just(0.0)],
    ) {
        let pts: Vec<_> = [3.0, 8.0, 15.0, 27.0, 52.0, 99.0].into_iter().zip(noise).collect();
        let recs = noisy(n, a, &pts);
        let fit = fit_slope_intercept(&recs).unwrap();
        let best = sse(&recs, fit.exponent_n, fit.intercept_1m_db);
        prop_assert!(sse(&recs, fit.exponent_n + dn, fit.intercept_1m_db + da) >= best - 1e-9);
        let model = fit.model();
        let rmse = model_rmse(&recs, |r| slope_intercept_pg(&model, r.range_m)).unwrap();
        prop_assert!((rmse - fit.rmse_db).abs() < 1e-9);
    }

    #[test]
    fn shift_equivariance(c in -20.0..20.0f64, noise in prop::collection::vec(-5.0..5.0f64, 5)) {
        let pts: Vec<_> = [4.0, 9.0, 21.0, 48.0, 80.0].into_iter().zip(noise).collect();
        let recs = noisy(2.1, 110.0, &pts);
        let shifted: Vec<_> = recs.iter().map(|r| MeasurementRecord { path_gain_db: r.path_gain_db + c, ..r.clone() }).collect();
        let f0 = fit_slope_intercept(&recs).unwrap();
        let f1 = fit_slope_intercept(&shifted).unwrap();
        prop_assert!((f1.intercept_1m_db - (f0.intercept_1m_db - c)).abs() < 1e-9);
        prop_assert!((f1.exponent_n - f0.exponent_n).abs() < 1e-9);
        prop_assert!((f1.rmse_db - f0.rmse_db).abs() < 1e-9);
    }

    #[test]
    fn rmse_ignores_order(perm in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle()) {
        let pts: Vec<_> = (0..8).map(|i| (2.0 + 7.0 * i as f64, (i as f64 * 1.3).sin() * 4.0)).collect();
        let recs = noisy(1.7, 95.0, &pts);
        let permuted: Vec<_> = perm.iter().map(|&i| recs[i].clone()).collect();
        let pred = |r: &MeasurementRecord| Ok(-(95.0 + 17.0 * r.range_m.log10()));
        let a = model_rmse(&recs, pred).unwrap();
        let b = model_rmse(&permuted, pred).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }
}
