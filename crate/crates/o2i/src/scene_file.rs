//! TOML scene documents.
//!
//! ```toml
//! [scene]
//! unit = "m"
//!
//! [[buildings]]
//! label = "7B"
//! footprint = [[0.0, 0.0], [60.0, 0.0], [60.0, 20.0], [0.0, 20.0]]
//! height = 15.0
//! walls = [
//!     { label = "south", t_eff = 2.5e-5, glass_fraction = 0.3 },
//!     { label = "east", t_eff_db = -38.2, glass_fraction = 1.0 },
//!     ...
//! ]
//!
//! [[tx_sites]]
//! label = "Tx1"
//! x = 95.0
//! y = -20.0
//! z = 22.0
//! ```
//!
//! Footprints are counter-clockwise with one wall per edge, wall `i`
//! running from vertex `i` to vertex `i + 1`. Each wall gives its
//! transmission either linearly (`t_eff`) or in dB (`t_eff_db`), never both.

use std::path::Path;

use o2i_core::{Building, Point2, Point3, Scene, TxSite, WallMaterial};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum SceneError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Syntax(String),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> SceneError {
    SceneError::Field {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneDoc {
    scene: Header,
    #[serde(default)]
    buildings: Vec<BuildingDoc>,
    #[serde(default)]
    tx_sites: Vec<TxDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    unit: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BuildingDoc {
    #[serde(default)]
    label: String,
    footprint: Vec<[f64; 2]>,
    height: f64,
    walls: Vec<WallDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WallDoc {
    #[serde(default)]
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t_eff: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t_eff_db: Option<f64>,
    glass_fraction: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TxDoc {
    label: String,
    x: f64,
    y: f64,
    z: f64,
}

pub fn parse_scene(text: &str) -> Result<Scene, SceneError> {
    let doc: SceneDoc = toml::from_str(text).map_err(|e| SceneError::Syntax(e.to_string()))?;
    if doc.scene.unit != "m" {
        return Err(field_err(
            "scene.unit",
            format!("expected \"m\", got {:?}", doc.scene.unit),
        ));
    }
    let buildings = doc
        .buildings
        .into_iter()
        .enumerate()
        .map(|(i, b)| build(i, b))
        .collect::<Result<Vec<_>, _>>()?;
    let tx_sites = doc
        .tx_sites
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            TxSite::new(Point3::new(t.x, t.y, t.z), t.label)
                .map_err(|e| field_err(format!("tx_sites[{i}]"), e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Scene::new(buildings, tx_sites).map_err(|e| field_err("tx_sites", e.to_string()))
}

fn build(i: usize, doc: BuildingDoc) -> Result<Building, SceneError> {
    let materials = doc
        .walls
        .into_iter()
        .enumerate()
        .map(|(j, w)| {
            let field = format!("buildings[{i}].walls[{j}]");
            let material = match (w.t_eff, w.t_eff_db) {
                (Some(t), None) => WallMaterial::new(t, w.glass_fraction, w.label),
                (None, Some(db)) => WallMaterial::from_db(db, w.glass_fraction, w.label),
                _ => return Err(field_err(field, "exactly one of t_eff or t_eff_db must be given")),
            };
            material.map_err(|e| field_err(field, e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let footprint = doc.footprint.iter().map(|&[x, y]| Point2::new(x, y)).collect();
    Building::new(doc.label, footprint, doc.height, materials)
        .map_err(|e| field_err(format!("buildings[{i}]"), e.to_string()))
}

pub fn load_scene(path: impl AsRef<Path>) -> Result<Scene, SceneError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| SceneError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_scene(&text)
}

/// Serializes a scene; transmission coefficients are written linearly so
/// that re-parsing reproduces every value bit for bit.
pub fn scene_to_toml(scene: &Scene) -> String {
    let doc = SceneDoc {
        scene: Header {
            unit: "m".into(),
            name: None,
        },
        buildings: scene
            .buildings
            .iter()
            .map(|b| BuildingDoc {
                label: b.label.clone(),
                footprint: b.footprint.iter().map(|p| [p.x, p.y]).collect(),
                height: b.height,
                walls: b
                    .walls
                    .iter()
                    .map(|w| WallDoc {
                        label: w.material.label.clone(),
                        t_eff: Some(w.material.t_eff),
                        t_eff_db: None,
                        glass_fraction: w.material.glass_fraction,
                    })
                    .collect(),
            })
            .collect(),
        tx_sites: scene
            .tx_sites
            .iter()
            .map(|t| TxDoc {
                label: t.label.clone(),
                x: t.position.x,
                y: t.position.y,
                z: t.position.z,
            })
            .collect(),
    };
    toml::to_string(&doc).expect("scene documents always serialize")
}
