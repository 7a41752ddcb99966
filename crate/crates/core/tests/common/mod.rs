#![allow(dead_code)]

use o2i_core::{Building, Point2, Scene, TxSite, WallMaterial};

pub fn material(t_eff: f64, glass: f64) -> WallMaterial {
    WallMaterial::new(t_eff, glass, "wall").unwrap()
}

pub fn rect(label: &str, x0: f64, y0: f64, x1: f64, y1: f64, h: f64, shift: Point2) -> Building {
    let fp = vec![
        Point2::new(x0, y0) + shift,
        Point2::new(x1, y0) + shift,
        Point2::new(x1, y1) + shift,
        Point2::new(x0, y1) + shift,
    ];
    Building::new(label, fp, h, vec![material(2.5e-5, 0.3); 4]).unwrap()
}

/// Street canyon: host 7B north of the street, reflector 7A south of it,
/// and a small building carrying the transmitter on its roof.
pub fn canyon(shift: Point2) -> Scene {
    let host = rect("7B", 0.0, 0.0, 60.0, 20.0, 15.0, shift);
    let refl = rect("7A", -40.0, -60.0, 82.0, -30.0, 20.0, shift);
    let roof = rect("T1", 85.0, -30.0, 105.0, -10.0, 18.0, shift);
    let tx = TxSite::new(o2i_core::Point3::new(95.0 + shift.x, -20.0 + shift.y, 22.0), "Tx1").unwrap();
    Scene::new(vec![host, refl, roof], vec![tx]).unwrap()
}
