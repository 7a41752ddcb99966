//! 2.5-D scenes and ray-optics path construction.
//!
//! Buildings are extruded polygons: a counter-clockwise footprint in the
//! horizontal plane plus a roof height. Transmitters and terminals carry a
//! height, so ranges and angles are measured in 3-D while visibility and
//! occlusion are decided on the footprints.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Sub};

use crate::propagation::{self, PropagationConstants};
use crate::{Error, Result};

/// Parameter slack used when deciding whether a crossing sits at a segment end.
const ENDPOINT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z component of the 3-D cross product.
    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        libm::hypot(self.x, self.y)
    }

    pub fn distance(self, other: Self) -> f64 {
        (self - other).norm()
    }

    pub fn with_z(self, z: f64) -> Point3 {
        Point3::new(self.x, self.y, z)
    }
}

impl Add for Point2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.x * rhs, self.y * rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn xy(self) -> Point2 {
        Point2::new(self.x, self.y)
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(self) -> f64 {
        libm::sqrt(self.dot(self))
    }

    pub fn distance(self, other: Self) -> f64 {
        (self - other).norm()
    }
}

impl Sub for Point3 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

/// Exterior wall composition.
#[derive(Debug, Clone, PartialEq)]
pub struct WallMaterial {
    /// Linear power transmission coefficient, in (0, 1].
    pub t_eff: f64,
    /// Fraction of the wall area that is glass, in [0, 1].
    pub glass_fraction: f64,
    pub label: String,
}

impl WallMaterial {
    pub fn new(t_eff: f64, glass_fraction: f64, label: impl Into<String>) -> Result<Self> {
        if !(t_eff > 0.0 && t_eff <= 1.0) {
            return Err(Error::Domain {
                what: "t_eff",
                value: t_eff,
            });
        }
        if !(0.0..=1.0).contains(&glass_fraction) {
            return Err(Error::Domain {
                what: "glass_fraction",
                value: glass_fraction,
            });
        }
        Ok(Self {
            t_eff,
            glass_fraction,
            label: label.into(),
        })
    }

    /// Same as [`WallMaterial::new`] with the transmission given in dB.
    pub fn from_db(t_eff_db: f64, glass_fraction: f64, label: impl Into<String>) -> Result<Self> {
        Self::new(crate::units::from_db(t_eff_db), glass_fraction, label)
    }
}

/// One footprint edge, extruded to the building height.
#[derive(Debug, Clone, PartialEq)]
pub struct Wall {
    pub start: Point2,
    pub end: Point2,
    /// Unit vector pointing away from the building interior.
    pub outward_normal: Point2,
    pub height: f64,
    pub material: WallMaterial,
}

impl Wall {
    /// Builds the wall for an edge of a counter-clockwise footprint.
    fn from_ccw_edge(start: Point2, end: Point2, height: f64, material: WallMaterial) -> Self {
        let d = end - start;
        let len = d.norm();
        Self {
            start,
            end,
            outward_normal: Point2::new(d.y / len, -d.x / len),
            height,
            material,
        }
    }

    pub fn length(&self) -> f64 {
        self.start.distance(self.end)
    }

    pub fn midpoint(&self) -> Point2 {
        (self.start + self.end) * 0.5
    }

    /// Distance of `p` from the wall line, positive on the outward side.
    pub fn signed_distance(&self, p: Point2) -> f64 {
        (p - self.start).dot(self.outward_normal)
    }

    /// Position of the projection of `p` along the wall, 0 at `start`, 1 at `end`.
    pub fn projection_parameter(&self, p: Point2) -> f64 {
        let d = self.end - self.start;
        (p - self.start).dot(d) / d.dot(d)
    }

    /// Image of `p` in the wall line.
    pub fn mirror(&self, p: Point2) -> Point2 {
        p - self.outward_normal * (2.0 * self.signed_distance(p))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Building {
    pub label: String,
    pub footprint: Vec<Point2>,
    pub height: f64,
    /// `walls[i]` runs from `footprint[i]` to `footprint[i + 1]`.
    pub walls: Vec<Wall>,
}

impl Building {
    /// Validates the footprint (simple, counter-clockwise, at least three
    /// vertices) and builds one wall per edge from `materials`.
    pub fn new(
        label: impl Into<String>,
        footprint: Vec<Point2>,
        height: f64,
        materials: Vec<WallMaterial>,
    ) -> Result<Self> {
        let label = label.into();
        let n = footprint.len();
        if n < 3 {
            return Err(Error::InvalidScene(format!(
                "building {label:?}: footprint needs at least 3 vertices, got {n}"
            )));
        }
        if footprint.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(Error::InvalidScene(format!(
                "building {label:?}: non-finite footprint vertex"
            )));
        }
        if !(height > 0.0 && height.is_finite()) {
            return Err(Error::InvalidScene(format!(
                "building {label:?}: height must be positive, got {height}"
            )));
        }
        if materials.len() != n {
            return Err(Error::InvalidScene(format!(
                "building {label:?}: {} walls given for {n} footprint edges",
                materials.len()
            )));
        }
        let edge = |i: usize| (footprint[i], footprint[(i + 1) % n]);
        for i in 0..n {
            let (a, b) = edge(i);
            if a.distance(b) == 0.0 {
                return Err(Error::InvalidScene(format!("building {label:?}: repeated vertex {i}")));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let (a, b) = edge(i);
                let (c, d) = edge(j);
                let hit = if adjacent {
                    // Adjacent edges share a vertex; they may only overlap there.
                    let (p, q, r) = if j == i + 1 { (a, b, d) } else { (b, a, c) };
                    (q - p).cross(r - p) == 0.0 && (q - p).dot(r - q) < 0.0
                } else {
                    segments_touch(a, b, c, d)
                };
                if hit {
                    return Err(Error::InvalidScene(format!(
                        "building {label:?}: footprint edges {i} and {j} intersect"
                    )));
                }
            }
        }
        if signed_area(&footprint) <= 0.0 {
            return Err(Error::InvalidScene(format!(
                "building {label:?}: footprint must be counter-clockwise"
            )));
        }
        let walls = materials
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                let (a, b) = edge(i);
                Wall::from_ccw_edge(a, b, height, m)
            })
            .collect();
        Ok(Self {
            label,
            footprint,
            height,
            walls,
        })
    }

    pub fn centroid(&self) -> Point2 {
        let n = self.footprint.len() as f64;
        let sum = self.footprint.iter().fold(Point2::default(), |acc, &p| acc + p);
        sum * (1.0 / n)
    }

    /// Even-odd test. Points on the boundary may land either way.
    pub fn contains(&self, p: Point2) -> bool {
        let mut inside = false;
        let n = self.footprint.len();
        let mut j = n - 1;
        for i in 0..n {
            let a = self.footprint[i];
            let b = self.footprint[j];
            if (a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x {
                inside = !inside;
            }
            j = i;
        }
        inside
    }

    fn boundary_distance(&self, p: Point2) -> f64 {
        self.walls
            .iter()
            .map(|w| wall_entry_point(w, p).1)
            .fold(f64::INFINITY, f64::min)
    }

    /// Inside and farther than `tol` from every wall.
    pub fn contains_strictly(&self, p: Point2, tol: f64) -> bool {
        self.contains(p) && self.boundary_distance(p) > tol
    }

    /// Inside or within `tol` of the boundary.
    pub fn covers(&self, p: Point2, tol: f64) -> bool {
        self.contains(p) || self.boundary_distance(p) <= tol
    }
}

/// Shoelace area, positive for counter-clockwise vertex order.
pub fn signed_area(poly: &[Point2]) -> f64 {
    let n = poly.len();
    (0..n).map(|i| poly[i].cross(poly[(i + 1) % n])).sum::<f64>() * 0.5
}

/// Rooftop transmitter.
#[derive(Debug, Clone, PartialEq)]
pub struct TxSite {
    pub position: Point3,
    pub label: String,
}

impl TxSite {
    pub fn new(position: Point3, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if !(position.z > 0.0) || !position.x.is_finite() || !position.y.is_finite() {
            return Err(Error::InvalidScene(format!(
                "tx {label:?}: height must be positive and coordinates finite"
            )));
        }
        Ok(Self { position, label })
    }
}

/// Index of a wall within a scene.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WallRef {
    pub building: usize,
    pub wall: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub buildings: Vec<Building>,
    pub tx_sites: Vec<TxSite>,
}

impl Scene {
    pub fn new(buildings: Vec<Building>, tx_sites: Vec<TxSite>) -> Result<Self> {
        for (i, tx) in tx_sites.iter().enumerate() {
            if tx_sites[..i].iter().any(|o| o.label == tx.label) {
                return Err(Error::InvalidScene(format!("duplicate tx label {:?}", tx.label)));
            }
        }
        Ok(Self { buildings, tx_sites })
    }

    pub fn tx(&self, label: &str) -> Result<&TxSite> {
        self.tx_sites
            .iter()
            .find(|t| t.label == label)
            .ok_or_else(|| Error::UnknownTx(label.into()))
    }

    pub fn wall(&self, r: WallRef) -> &Wall {
        &self.buildings[r.building].walls[r.wall]
    }

    /// First building whose footprint covers `p`.
    pub fn locate(&self, p: Point2) -> Option<usize> {
        self.buildings.iter().position(|b| b.covers(p, 1e-9))
    }

    pub fn wall_refs(&self) -> impl Iterator<Item = WallRef> + '_ {
        self.buildings
            .iter()
            .enumerate()
            .flat_map(|(b, bld)| (0..bld.walls.len()).map(move |w| WallRef { building: b, wall: w }))
    }

    /// Building whose roof the transmitter stands on, if any.
    fn tx_host(&self, tx: &TxSite) -> Option<usize> {
        self.buildings
            .iter()
            .position(|b| b.contains_strictly(tx.position.xy(), 1e-9))
    }
}

/// Indoor receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Terminal {
    pub position: Point3,
    pub host_building: usize,
}

impl Terminal {
    /// Places a terminal in whichever building covers its horizontal position.
    pub fn locate(scene: &Scene, position: Point3) -> Result<Self> {
        scene
            .locate(position.xy())
            .map(|host_building| Self {
                position,
                host_building,
            })
            .ok_or(Error::OutsideBuildings {
                x: position.x,
                y: position.y,
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PathKind {
    Direct,
    SideWall,
    Reflected,
}

impl PathKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PathKind::Direct => "direct",
            PathKind::SideWall => "side_wall",
            PathKind::Reflected => "reflected",
        }
    }
}

impl core::fmt::Display for PathKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One admissible ray path from a transmitter to an indoor terminal.
#[derive(Debug, Clone, PartialEq)]
pub struct PathGeometry {
    pub kind: PathKind,
    /// Tx to entry point in 3-D; the unfolded length for reflected paths.
    pub outdoor_range: f64,
    /// Angle from the entry wall normal, radians.
    pub incidence_angle: f64,
    /// Horizontal distance from the entry point to the terminal.
    pub indoor_depth: f64,
    pub entry_wall: WallRef,
    pub entry_point: Point2,
    /// Transmission coefficient of the entry wall material.
    pub entry_t_eff: f64,
    /// Angle between the incoming ray and the reflector, radians.
    pub grazing_angle: Option<f64>,
    pub reflection_point: Option<Point2>,
}

impl PathGeometry {
    /// Path with no scene attached, for closed-form profiles and tests.
    pub fn synthetic(kind: PathKind, outdoor_range: f64, incidence_angle: f64, indoor_depth: f64) -> Self {
        Self {
            kind,
            outdoor_range,
            incidence_angle,
            indoor_depth,
            entry_wall: WallRef { building: 0, wall: 0 },
            entry_point: Point2::default(),
            entry_t_eff: 1.0,
            grazing_angle: None,
            reflection_point: None,
        }
    }
}

/// Point of `wall` nearest to `terminal` and the horizontal distance to it.
pub fn wall_entry_point(wall: &Wall, terminal: Point2) -> (Point2, f64) {
    let t = wall.projection_parameter(terminal).clamp(0.0, 1.0);
    let entry = wall.start + (wall.end - wall.start) * t;
    (entry, entry.distance(terminal))
}

/// Angle between the ray `tx -> entry` and the inward wall normal.
///
/// Fails when the transmitter is not on the outward side of the wall.
pub fn incidence_angle(tx: &TxSite, entry: Point3, wall: &Wall) -> Result<f64> {
    let standoff = wall.signed_distance(tx.position.xy());
    if !(standoff > 0.0) {
        return Err(Error::Domain {
            what: "tx standoff from wall",
            value: standoff,
        });
    }
    let ray = entry - tx.position;
    let inward = Point3::new(-wall.outward_normal.x, -wall.outward_normal.y, 0.0);
    let cos = (ray.dot(inward) / ray.norm()).clamp(-1.0, 1.0);
    Ok(libm::acos(cos))
}

/// Parameter along `p -> q` where it meets segment `a -> b`, if it does.
/// Parallel segments never meet.
fn crossing_parameter(p: Point2, q: Point2, a: Point2, b: Point2) -> Option<f64> {
    let r = q - p;
    let s = b - a;
    let denom = r.cross(s);
    if denom == 0.0 {
        return None;
    }
    let ap = a - p;
    let t = ap.cross(s) / denom;
    let u = ap.cross(r) / denom;
    ((0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u)).then_some(t)
}

fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}

fn on_segment(a: Point2, b: Point2, p: Point2) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed segments share at least one point.
fn segments_touch(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(c, d, a))
        || (d2 == 0.0 && on_segment(c, d, b))
        || (d3 == 0.0 && on_segment(a, b, c))
        || (d4 == 0.0 && on_segment(a, b, d))
}

/// Whether the footprint of `building` cuts the open segment `p -> q`.
/// Touching at either end does not count.
pub fn footprint_blocks(building: &Building, p: Point2, q: Point2) -> bool {
    let crosses = building
        .walls
        .iter()
        .any(|w| crossing_parameter(p, q, w.start, w.end).is_some_and(|t| t > ENDPOINT_EPS && t < 1.0 - ENDPOINT_EPS));
    crosses || building.contains_strictly((p + q) * 0.5, ENDPOINT_EPS)
}

fn leg_clear(scene: &Scene, p: Point2, q: Point2, exempt: Option<usize>) -> bool {
    scene
        .buildings
        .iter()
        .enumerate()
        .all(|(i, b)| Some(i) == exempt || !footprint_blocks(b, p, q))
}

/// Whether `tx` sees `target` on `wall`: the transmitter is on the outward
/// side and no footprint other than the transmitter's own roof cuts the
/// line of sight.
pub fn is_wall_illuminated_at(scene: &Scene, tx: &TxSite, wall: WallRef, target: Point2) -> bool {
    let w = scene.wall(wall);
    w.signed_distance(tx.position.xy()) > 0.0 && leg_clear(scene, tx.position.xy(), target, scene.tx_host(tx))
}

/// [`is_wall_illuminated_at`] evaluated at the wall midpoint.
pub fn is_wall_illuminated(scene: &Scene, tx: &TxSite, wall: WallRef) -> bool {
    is_wall_illuminated_at(scene, tx, wall, scene.wall(wall).midpoint())
}

/// Path entering the terminal's building through `wall` straight from the Tx.
pub fn wall_path(
    scene: &Scene,
    tx: &TxSite,
    wall: WallRef,
    terminal: &Terminal,
    kind: PathKind,
) -> Option<PathGeometry> {
    let w = scene.wall(wall);
    let (entry, depth) = wall_entry_point(w, terminal.position.xy());
    if !is_wall_illuminated_at(scene, tx, wall, entry) {
        return None;
    }
    let entry3 = entry.with_z(terminal.position.z);
    let angle = incidence_angle(tx, entry3, w).ok()?;
    Some(PathGeometry {
        kind,
        outdoor_range: tx.position.distance(entry3),
        incidence_angle: angle,
        indoor_depth: depth,
        entry_wall: wall,
        entry_point: entry,
        entry_t_eff: w.material.t_eff,
        grazing_angle: None,
        reflection_point: None,
    })
}

/// Specular path `tx -> reflector -> entry_wall -> terminal` by the image method.
///
/// `Ok(None)` when the path is not admissible: the reflection point is off
/// the facade, a leg is occluded, either wall is hit from behind, or both
/// walls belong to the same building.
pub fn reflection_path(
    scene: &Scene,
    tx: &TxSite,
    reflector: WallRef,
    entry_wall: WallRef,
    terminal: &Terminal,
) -> Result<Option<PathGeometry>> {
    if reflector == entry_wall {
        return Err(Error::Domain {
            what: "reflector is the entry wall",
            value: reflector.wall as f64,
        });
    }
    if reflector.building == entry_wall.building {
        return Ok(None);
    }
    let refl = scene.wall(reflector);
    let front = scene.wall(entry_wall);
    let tx_xy = tx.position.xy();
    let (entry, depth) = wall_entry_point(front, terminal.position.xy());

    let tx_side = refl.signed_distance(tx_xy);
    let entry_side = refl.signed_distance(entry);
    if !(tx_side > 0.0 && entry_side > 0.0) {
        return Ok(None);
    }
    let image = refl.mirror(tx_xy);
    // The image sits at -tx_side, so the line image -> entry crosses the
    // reflector plane at this fraction of its length.
    let t = tx_side / (tx_side + entry_side);
    let hit = image + (entry - image) * t;
    let u = refl.projection_parameter(hit);
    if !(0.0..=1.0).contains(&u) {
        return Ok(None);
    }
    let hit_z = tx.position.z + (terminal.position.z - tx.position.z) * t;
    if !(0.0..=refl.height).contains(&hit_z) {
        return Ok(None);
    }
    if !(front.signed_distance(hit) > 0.0) {
        return Ok(None);
    }
    if !leg_clear(scene, tx_xy, hit, scene.tx_host(tx)) || !leg_clear(scene, hit, entry, None) {
        return Ok(None);
    }

    let image3 = image.with_z(tx.position.z);
    let entry3 = entry.with_z(terminal.position.z);
    let hit3 = hit.with_z(hit_z);
    let unfolded = image3.distance(entry3);

    let outgoing = entry3 - hit3;
    let inward = Point3::new(-front.outward_normal.x, -front.outward_normal.y, 0.0);
    let cos_entry = outgoing.dot(inward) / outgoing.norm();
    if !(cos_entry > 0.0) {
        return Ok(None);
    }
    let incoming = hit3 - tx.position;
    let n = Point3::new(refl.outward_normal.x, refl.outward_normal.y, 0.0);
    let sin_grazing = (incoming.dot(n).abs() / incoming.norm()).min(1.0);

    Ok(Some(PathGeometry {
        kind: PathKind::Reflected,
        outdoor_range: unfolded,
        incidence_angle: libm::acos(cos_entry.min(1.0)),
        indoor_depth: depth,
        entry_wall,
        entry_point: entry,
        entry_t_eff: front.material.t_eff,
        grazing_angle: Some(libm::asin(sin_grazing)),
        reflection_point: Some(hit),
    }))
}

fn strongest(paths: impl Iterator<Item = PathGeometry>, consts: &PropagationConstants) -> Option<PathGeometry> {
    let gain = |p: &PathGeometry| propagation::term_gain(p, consts).unwrap_or(0.0);
    paths
        .map(|p| (gain(&p), p))
        // First of equal maxima wins, keeping the choice independent of float ties.
        .fold(None, |best: Option<(f64, PathGeometry)>, cand| match best {
            Some(b) if b.0.total_cmp(&cand.0) != Ordering::Less => Some(b),
            _ => Some(cand),
        })
        .map(|(_, p)| p)
}

/// All admissible paths from `tx` to `terminal`, at most one of each kind.
///
/// - Direct: the illuminated host wall nearest the terminal.
/// - SideWall: among the other illuminated host walls, the one with the
///   largest side-term gain.
/// - Reflected: the strongest image-method path off any wall of another
///   building, entering through the host wall nearest the terminal.
pub fn enumerate_paths(
    scene: &Scene,
    tx: &TxSite,
    terminal: &Terminal,
    consts: &PropagationConstants,
) -> Vec<PathGeometry> {
    let host_idx = terminal.host_building;
    let host = &scene.buildings[host_idx];
    let host_walls = || {
        (0..host.walls.len()).map(|w| WallRef {
            building: host_idx,
            wall: w,
        })
    };
    let mut out = Vec::with_capacity(3);

    let mut lit: Vec<PathGeometry> = host_walls()
        .filter_map(|w| wall_path(scene, tx, w, terminal, PathKind::Direct))
        .collect();
    let nearest = lit
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.indoor_depth.total_cmp(&b.1.indoor_depth))
        .map(|(i, _)| i);
    if let Some(i) = nearest {
        out.push(lit.remove(i));
        let side = strongest(
            lit.into_iter().map(|mut p| {
                p.kind = PathKind::SideWall;
                p
            }),
            consts,
        );
        out.extend(side);
    }

    let terminal_xy = terminal.position.xy();
    let front = host_walls().min_by(|a, b| {
        let da = wall_entry_point(scene.wall(*a), terminal_xy).1;
        let db = wall_entry_point(scene.wall(*b), terminal_xy).1;
        da.total_cmp(&db)
    });
    if let Some(front) = front {
        let reflected = scene
            .wall_refs()
            .filter(|r| r.building != host_idx)
            .filter_map(|r| reflection_path(scene, tx, r, front, terminal).ok().flatten());
        out.extend(strongest(reflected, consts));
    }
    out
}
