mod common;

use common::{canyon, material};
use o2i_core::geometry::{enumerate_paths, incidence_angle, reflection_path, wall_entry_point};
use o2i_core::{Building, PathKind, Point2, Point3, PropagationConstants, Scene, Terminal, TxSite, WallRef};
use proptest::prelude::*;

/// Rectangle of the given size centred at `c` and rotated by `theta`;
/// wall 0 is the bottom edge in the rotated frame.
fn rotated_rect(c: Point2, theta: f64, w: f64, h: f64) -> Building {
    let (s, co) = theta.sin_cos();
    let corner = |x: f64, y: f64| Point2::new(c.x + co * x - s * y, c.y + s * x + co * y);
    let fp = vec![
        corner(-w / 2.0, -h / 2.0),
        corner(w / 2.0, -h / 2.0),
        corner(w / 2.0, h / 2.0),
        corner(-w / 2.0, h / 2.0),
    ];
    Building::new("b", fp, 20.0, vec![material(2.5e-5, 0.3); 4]).unwrap()
}

/// Perpendicular distance from `p` to the line through `a` and `b`, by the
/// triangle-area formula.
fn line_distance(a: Point2, b: Point2, p: Point2) -> f64 {
    let twice_area = ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)).abs();
    twice_area / ((b.x - a.x).powi(2) + (b.y - a.y).powi(2)).sqrt()
}

proptest! {
    #[test]
    fn dot_product_angle_matches_standoff_ratio(
        cx in -500.0..500.0f64, cy in -500.0..500.0f64, theta in 0.0..std::f64::consts::TAU,
        along in -3.0..3.0f64, standoff in 0.5..200.0f64, lateral in -300.0..300.0f64,
        tx_z in 0.1..80.0f64, p_z in 0.0..30.0f64,
    ) {
        let b = rotated_rect(Point2::new(cx, cy), theta, 40.0, 20.0);
        let wall = &b.walls[0];
        let dir = wall.end - wall.start;
        let p = wall.start + dir * along;
        let tx_xy = wall.midpoint() + wall.outward_normal * standoff + dir * (lateral / 40.0);
        let tx = TxSite::new(tx_xy.with_z(tx_z), "t").unwrap();
        let phi = incidence_angle(&tx, p.with_z(p_z), wall).unwrap();
        let d_s = line_distance(wall.start, wall.end, tx_xy);
        let r = ((tx_xy.x - p.x).powi(2) + (tx_xy.y - p.y).powi(2) + (tx_z - p_z).powi(2)).sqrt();
        prop_assert!((phi - (d_s / r).acos()).abs() < 1e-9);
    }

    #[test]
    fn image_method_obeys_specular_law(
        shift_x in -100.0..100.0f64, tx_x in 86.0..104.0f64, tx_y in -29.0..-11.0f64,
        tx_z in 19.0..40.0f64, term_x in 1.0..59.0f64, term_y in 0.5..19.5f64, term_z in 0.5..3.0f64,
    ) {
        let shift = Point2::new(shift_x, 0.0);
        let scene = canyon(shift);
        let tx = TxSite::new(Point3::new(tx_x + shift_x, tx_y, tx_z), "t").unwrap();
        let term = Terminal::locate(&scene, Point3::new(term_x + shift_x, term_y, term_z)).unwrap();
        let refl = WallRef { building: 1, wall: 2 };
        let front = WallRef { building: 0, wall: 0 };
        if let Some(p) = reflection_path(&scene, &tx, refl, front, &term).unwrap() {
            let hit2 = p.reflection_point.unwrap();
            let t = (tx.position.y - hit2.y) / ((tx.position.y - hit2.y) + (p.entry_point.y - hit2.y));
            let hit = hit2.with_z(tx.position.z + (term.position.z - tx.position.z) * t);
            let entry = p.entry_point.with_z(term.position.z);
            let leg = |a: Point3, b: Point3| ((a.x - b.x).powi(2) + (a.y - b.y).powi(2) + (a.z - b.z).powi(2)).sqrt();
            let l1 = leg(tx.position, hit);
            let l2 = leg(hit, entry);
            prop_assert!((p.outdoor_range - (l1 + l2)).abs() < 1e-9);
            // Reflector normal is +y: compare the angles each leg makes with it.
            let angle_in = ((hit.y - tx.position.y).abs() / l1).acos();
            let angle_out = ((entry.y - hit.y).abs() / l2).acos();
            prop_assert!((angle_in - angle_out).abs() < 1e-9);
            prop_assert!((p.grazing_angle.unwrap() - (std::f64::consts::FRAC_PI_2 - angle_in)).abs() < 1e-9);
        }
    }

    #[test]
    fn paths_are_distinct_and_valid(
        tx_x in -150.0..200.0f64, tx_y in -120.0..-5.0f64, tx_z in 1.0..50.0f64,
        term_x in 0.5..59.5f64, term_y in 0.5..19.5f64,
    ) {
        let scene = canyon(Point2::default());
        let tx = TxSite::new(Point3::new(tx_x, tx_y, tx_z), "t").unwrap();
        let term = Terminal::locate(&scene, Point3::new(term_x, term_y, 1.5)).unwrap();
        let paths = enumerate_paths(&scene, &tx, &term, &PropagationConstants::default());
        let mut kinds: Vec<_> = paths.iter().map(|p| p.kind).collect();
        kinds.sort();
        kinds.dedup();
        prop_assert_eq!(kinds.len(), paths.len());
        for p in &paths {
            prop_assert!(p.outdoor_range > 0.0);
            prop_assert!(p.indoor_depth >= 0.0);
            prop_assert!((0.0..std::f64::consts::FRAC_PI_2).contains(&p.incidence_angle));
            if let Some(g) = p.grazing_angle {
                prop_assert!(g > 0.0 && g <= std::f64::consts::FRAC_PI_2);
            }
            prop_assert!(scene.wall(p.entry_wall).signed_distance(
                p.reflection_point.unwrap_or(tx.position.xy())) > 0.0);
        }
    }

    #[test]
    fn rigid_translation_changes_nothing(dx in -1e3..1e3f64, dy in -1e3..1e3f64, term_x in 1.0..59.0f64) {
        let consts = PropagationConstants::default();
        let base = canyon(Point2::default());
        let moved = canyon(Point2::new(dx, dy));
        let t0 = Terminal::locate(&base, Point3::new(term_x, 6.0, 1.5)).unwrap();
        let t1 = Terminal::locate(&moved, Point3::new(term_x + dx, 6.0 + dy, 1.5)).unwrap();
        let a = enumerate_paths(&base, &base.tx_sites[0], &t0, &consts);
        let b = enumerate_paths(&moved, &moved.tx_sites[0], &t1, &consts);
        prop_assert_eq!(a.len(), b.len());
        for (p, q) in a.iter().zip(&b) {
            prop_assert_eq!(p.kind, q.kind);
            prop_assert!((p.outdoor_range - q.outdoor_range).abs() < 1e-9);
            prop_assert!((p.incidence_angle - q.incidence_angle).abs() < 1e-9);
            prop_assert!((p.indoor_depth - q.indoor_depth).abs() < 1e-9);
        }
    }
}

#[test]
fn canyon_has_all_three_paths() {
    let scene = canyon(Point2::default());
    let tx = &scene.tx_sites[0];
    let term = Terminal::locate(&scene, Point3::new(30.0, 6.0, 1.5)).unwrap();
    let paths = enumerate_paths(&scene, tx, &term, &PropagationConstants::default());
    let kinds: Vec<_> = paths.iter().map(|p| p.kind).collect();
    assert_eq!(kinds, [PathKind::Direct, PathKind::SideWall, PathKind::Reflected]);

    // Direct through the south facade at (30, 0).
    let direct = &paths[0];
    let r = (65f64.powi(2) + 20f64.powi(2) + 20.5f64.powi(2)).sqrt();
    assert!((direct.outdoor_range - r).abs() < 1e-9);
    assert!((direct.incidence_angle - (20.0 / r).acos()).abs() < 1e-9);
    assert_eq!(direct.indoor_depth, 6.0);

    // Side wall: east facade at (60, 6), 30 m from the terminal.
    let side = &paths[1];
    let r1 = (35f64.powi(2) + 26f64.powi(2) + 20.5f64.powi(2)).sqrt();
    assert!((side.outdoor_range - r1).abs() < 1e-9);
    assert!((side.incidence_angle - (35.0 / r1).acos()).abs() < 1e-9);
    assert_eq!(side.indoor_depth, 30.0);
    assert_eq!(side.entry_wall, WallRef { building: 0, wall: 1 });

    // Reflection off 7A's north facade: image (95, -40), hit at (78.75, -30).
    let refl = &paths[2];
    let rr = (65f64.powi(2) + 40f64.powi(2) + 20.5f64.powi(2)).sqrt();
    assert!((refl.outdoor_range - rr).abs() < 1e-9);
    let hit = refl.reflection_point.unwrap();
    assert!((hit.x - 78.75).abs() < 1e-9 && (hit.y + 30.0).abs() < 1e-9);
    assert!((refl.incidence_angle - (40.0 / rr).acos()).abs() < 1e-9);
    assert!((refl.grazing_angle.unwrap() - (40.0 / rr).asin()).abs() < 1e-9);
    assert_eq!(refl.indoor_depth, 6.0);
}

#[test]
fn aisle_six_metres_behind_facade() {
    let scene = canyon(Point2::default());
    for x in [5.0, 17.0, 42.5] {
        let (_, depth) = wall_entry_point(&scene.buildings[0].walls[0], Point2::new(x, 6.0));
        assert_eq!(depth, 6.0);
    }
}

#[test]
fn blocked_street_leaves_only_unblocked_walls() {
    // A tall block in the middle of the street hides the south facade.
    let mut scene = canyon(Point2::default());
    scene
        .buildings
        .push(common::rect("block", 20.0, -8.0, 65.0, -2.0, 30.0, Point2::default()));
    let scene = Scene::new(scene.buildings, scene.tx_sites).unwrap();
    let term = Terminal::locate(&scene, Point3::new(30.0, 6.0, 1.5)).unwrap();
    let paths = enumerate_paths(&scene, &scene.tx_sites[0], &term, &PropagationConstants::default());
    assert!(paths.iter().all(|p| p.entry_wall != WallRef { building: 0, wall: 0 }));
    assert_eq!(paths[0].kind, PathKind::Direct);
    assert_eq!(paths[0].entry_wall, WallRef { building: 0, wall: 1 });
}
