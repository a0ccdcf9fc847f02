//! Scene files: named geometric objects given in one coordinate model.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::path::Path;

use hypermass::{
    Density, DirectedLine, HPoint, Lamina, LineDensity, LinearSet, Model, PointMass, PointMassSystem,
    QuadratureConfig, Region,
};
use serde::de::{Deserializer, MapAccess, Visitor};
use serde::Deserialize;

use crate::CliError;

/// A JSON object whose keys must be distinct.
#[derive(Debug)]
pub struct UniqueMap<T>(pub Vec<(String, T)>);

impl<T> Default for UniqueMap<T> {
    fn default() -> Self {
        UniqueMap(Vec::new())
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for UniqueMap<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V<T>(PhantomData<T>);
        impl<'de, T: Deserialize<'de>> Visitor<'de> for V<T> {
            type Value = UniqueMap<T>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map of named objects")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
                let mut out: Vec<(String, T)> = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, T>()? {
                    if out.iter().any(|(n, _)| *n == k) {
                        return Err(serde::de::Error::custom(format!("duplicate name `{k}`")));
                    }
                    out.push((k, v));
                }
                Ok(UniqueMap(out))
            }
        }
        d.deserialize_map(V(PhantomData))
    }
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub model: Model,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default)]
    pub points: UniqueMap<PointSpec>,
    /// Named lists of point names.
    #[serde(default)]
    pub systems: UniqueMap<Vec<String>>,
    #[serde(default)]
    pub lines: UniqueMap<LineSpec>,
    #[serde(default)]
    pub laminae: UniqueMap<LaminaSpec>,
    #[serde(default)]
    pub linear_sets: UniqueMap<LinsetSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub at: Vec<f64>,
    #[serde(default = "one")]
    pub weight: f64,
}

/// The line through two points, directed from the first to the second
/// unless `reversed`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineSpec {
    pub through: [Vec<f64>; 2],
    #[serde(default)]
    pub reversed: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaminaSpec {
    pub region: RegionSpec,
    #[serde(default)]
    pub density: DensitySpec,
}

/// Angles are radians measured in the frame transported from the origin to
/// the apex or center.
#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RegionSpec {
    Triangle {
        vertices: [Vec<f64>; 3],
    },
    Disk {
        center: Vec<f64>,
        radius: f64,
    },
    Wedge {
        apex: Vec<f64>,
        radius: f64,
        theta1: f64,
        theta2: f64,
    },
    RegularPolygon {
        center: Vec<f64>,
        sides: u32,
        inradius: f64,
        #[serde(default)]
        rotation: f64,
    },
    PolarGraph {
        center: Vec<f64>,
        radii: Vec<f64>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DensitySpec {
    Constant { value: f64 },
    /// `a + b cosh d(X, center)`.
    RadialAffine { a: f64, b: f64, center: Vec<f64> },
}

impl Default for DensitySpec {
    fn default() -> Self {
        DensitySpec::Constant { value: 1.0 }
    }
}

/// Either a segment between two points or intervals of arclength on a named
/// line (measured from the point of the line nearest the origin).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinsetSpec {
    pub segment: Option<[Vec<f64>; 2]>,
    pub line: Option<String>,
    pub intervals: Option<Vec<[f64; 2]>>,
    #[serde(default = "one")]
    pub density: f64,
}

#[derive(Clone, Debug)]
pub enum Object {
    Point(PointMass),
    System(PointMassSystem),
    Lamina(Box<Lamina>),
    LinearSet(Box<LinearSet>),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Point(_) => "point",
            Object::System(_) => "system",
            Object::Lamina(_) => "lamina",
            Object::LinearSet(_) => "linear-set",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Scene {
    pub model: Model,
    pub quadrature: QuadratureConfig,
    pub objects: BTreeMap<String, Object>,
    pub lines: BTreeMap<String, DirectedLine>,
}

fn bad<E: fmt::Display>(what: &str, e: E) -> CliError {
    CliError::Parse(format!("{what}: {e}"))
}

impl Scene {
    pub fn load(path: &Path) -> Result<Scene, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| bad(&path.display().to_string(), e))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Scene, CliError> {
        let file: SceneFile = serde_json::from_str(text).map_err(|e| bad("scene", e))?;
        Self::build(file)
    }

    pub fn build(f: SceneFile) -> Result<Scene, CliError> {
        f.quadrature.validate().map_err(|e| bad("quadrature", e))?;
        let model = f.model;
        let pt = |xs: &[f64], what: &str| -> Result<HPoint, CliError> {
            model.coords(xs).and_then(HPoint::from_model).map_err(|e| bad(what, e))
        };
        let mut scene = Scene { model, quadrature: f.quadrature, objects: BTreeMap::new(), lines: BTreeMap::new() };
        let claim = |name: &str, taken: &mut Vec<String>| -> Result<(), CliError> {
            if taken.iter().any(|n| n == name) {
                return Err(CliError::Parse(format!("name `{name}` is used twice")));
            }
            taken.push(name.to_string());
            Ok(())
        };
        let mut taken = Vec::new();
        for (name, p) in &f.points.0 {
            claim(name, &mut taken)?;
            let at = pt(&p.at, name)?;
            let pm = PointMass::new(at, p.weight).map_err(|e| bad(name, e))?;
            scene.objects.insert(name.clone(), Object::Point(pm));
        }
        for (name, l) in &f.lines.0 {
            claim(name, &mut taken)?;
            let m = DirectedLine::through(&pt(&l.through[0], name)?, &pt(&l.through[1], name)?).map_err(|e| bad(name, e))?;
            scene.lines.insert(name.clone(), if l.reversed { m.reverse() } else { m });
        }
        for (name, members) in &f.systems.0 {
            claim(name, &mut taken)?;
            let mut pms = Vec::new();
            for m in members {
                match scene.objects.get(m) {
                    Some(Object::Point(p)) => pms.push(*p),
                    _ => return Err(CliError::Name(m.clone())),
                }
            }
            let s = PointMassSystem::new(pms).map_err(|e| bad(name, e))?;
            scene.objects.insert(name.clone(), Object::System(s));
        }
        for (name, l) in &f.laminae.0 {
            claim(name, &mut taken)?;
            let region = match &l.region {
                RegionSpec::Triangle { vertices } => {
                    Region::triangle(pt(&vertices[0], name)?, pt(&vertices[1], name)?, pt(&vertices[2], name)?)
                }
                RegionSpec::Disk { center, radius } => Region::disk(pt(center, name)?, *radius),
                RegionSpec::Wedge { apex, radius, theta1, theta2 } => Region::wedge(pt(apex, name)?, *radius, *theta1, *theta2),
                RegionSpec::RegularPolygon { center, sides, inradius, rotation } => {
                    Region::regular_polygon(pt(center, name)?, *sides, *inradius, *rotation)
                }
                RegionSpec::PolarGraph { center, radii } => Region::polar_graph(pt(center, name)?, radii.clone()),
            }
            .map_err(|e| bad(name, e))?;
            let density = match &l.density {
                DensitySpec::Constant { value } => Density::Constant(*value),
                DensitySpec::RadialAffine { a, b, center } => Density::RadialAffine { a: *a, b: *b, center: pt(center, name)? },
            };
            let lam = Lamina::new(region, density).map_err(|e| bad(name, e))?;
            scene.objects.insert(name.clone(), Object::Lamina(Box::new(lam)));
        }
        for (name, s) in &f.linear_sets.0 {
            claim(name, &mut taken)?;
            let dens = LineDensity::Constant(s.density);
            let set = match (&s.segment, &s.line, &s.intervals) {
                (Some(seg), None, None) => LinearSet::segment(&pt(&seg[0], name)?, &pt(&seg[1], name)?, dens),
                (None, Some(line), Some(iv)) => {
                    let carrier = *scene.lines.get(line).ok_or_else(|| CliError::Name(line.clone()))?;
                    LinearSet::new(carrier, iv.iter().map(|[a, b]| (*a, *b)).collect(), dens)
                }
                _ => return Err(CliError::Parse(format!("{name}: give either `segment` or `line` with `intervals`"))),
            }
            .map_err(|e| bad(name, e))?;
            scene.objects.insert(name.clone(), Object::LinearSet(Box::new(set)));
        }
        Ok(scene)
    }

    pub fn object(&self, name: &str) -> Result<&Object, CliError> {
        self.objects.get(name).ok_or_else(|| CliError::Name(name.to_string()))
    }

    pub fn line(&self, name: &str) -> Result<&DirectedLine, CliError> {
        self.lines.get(name).ok_or_else(|| CliError::Name(name.to_string()))
    }
}
