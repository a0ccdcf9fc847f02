//! Python bindings. Points are `(x, y)` tuples in the Poincaré disk; lines
//! are given by two points they pass through, directed from the first.

use hypermass as hm;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

type Pt = (f64, f64);

fn err(e: hm::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn point(p: Pt) -> PyResult<hm::HPoint> {
    hm::HPoint::from_poincare(p.0, p.1).map_err(err)
}

fn line(through: (Pt, Pt)) -> PyResult<hm::DirectedLine> {
    hm::DirectedLine::through(&point(through.0)?, &point(through.1)?).map_err(err)
}

fn quad(tol: f64) -> PyResult<hm::QuadratureConfig> {
    let q = hm::QuadratureConfig::with_tolerance(tol);
    q.validate().map_err(err)?;
    Ok(q)
}

fn system(points: Vec<Pt>, weights: Vec<f64>) -> PyResult<hm::PointMassSystem> {
    if points.len() != weights.len() {
        return Err(PyValueError::new_err("points and weights differ in length"));
    }
    let pms = points
        .into_iter()
        .zip(weights)
        .map(|(p, w)| hm::PointMass::new(point(p)?, w).map_err(err))
        .collect::<PyResult<Vec<_>>>()?;
    hm::PointMassSystem::new(pms).map_err(err)
}

/// A uniform or radially weighted region.
#[pyclass(name = "Lamina", frozen)]
struct PyLamina(hm::Lamina);

#[pymethods]
impl PyLamina {
    #[staticmethod]
    fn triangle(a: Pt, b: Pt, c: Pt) -> PyResult<Self> {
        Self::uniform(hm::Region::triangle(point(a)?, point(b)?, point(c)?))
    }

    #[staticmethod]
    fn disk(center: Pt, radius: f64) -> PyResult<Self> {
        Self::uniform(hm::Region::disk(point(center)?, radius))
    }

    #[staticmethod]
    fn wedge(apex: Pt, radius: f64, theta1: f64, theta2: f64) -> PyResult<Self> {
        Self::uniform(hm::Region::wedge(point(apex)?, radius, theta1, theta2))
    }

    #[staticmethod]
    #[pyo3(signature = (center, sides, inradius, rotation = 0.0))]
    fn regular_polygon(center: Pt, sides: u32, inradius: f64, rotation: f64) -> PyResult<Self> {
        Self::uniform(hm::Region::regular_polygon(point(center)?, sides, inradius, rotation))
    }

    /// Same region with density `a + b cosh d(X, center)`.
    fn with_radial_density(&self, a: f64, b: f64, center: Pt) -> PyResult<Self> {
        let d = hm::Density::RadialAffine { a, b, center: point(center)? };
        hm::Lamina::new(self.0.region().clone(), d).map(PyLamina).map_err(err)
    }

    #[pyo3(signature = (tol = 1e-10))]
    fn area(&self, tol: f64) -> PyResult<f64> {
        Ok(hm::area(self.0.region(), &quad(tol)?).map_err(err)?.value)
    }

    #[pyo3(signature = (tol = 1e-10))]
    fn mass(&self, tol: f64) -> PyResult<f64> {
        Ok(hm::lamina_mass(&self.0, &quad(tol)?).map_err(err)?.value)
    }

    /// Returns `(centroid, mass, error)`.
    #[pyo3(signature = (tol = 1e-10))]
    fn centroid(&self, tol: f64) -> PyResult<(Pt, f64, f64)> {
        let c = hm::lamina_centroid(&self.0, &quad(tol)?).map_err(err)?;
        Ok((c.centroid.location.to_poincare(), c.centroid.weight(), c.error))
    }

    #[pyo3(signature = (through, tol = 1e-10))]
    fn moment(&self, through: (Pt, Pt), tol: f64) -> PyResult<f64> {
        Ok(hm::lamina_moment(&self.0, &line(through)?, &quad(tol)?).map_err(err)?.value)
    }
}

impl PyLamina {
    fn uniform(r: hm::Result<hm::Region>) -> PyResult<Self> {
        hm::Lamina::uniform(r.map_err(err)?).map(PyLamina).map_err(err)
    }
}

#[pyfunction]
fn dist(p: Pt, q: Pt) -> PyResult<f64> {
    Ok(hm::dist(&point(p)?, &point(q)?))
}

/// Returns `(centroid, mass)`.
#[pyfunction]
fn system_centroid(points: Vec<Pt>, weights: Vec<f64>) -> PyResult<(Pt, f64)> {
    let c = hm::system_centroid(&system(points, weights)?);
    Ok((c.location.to_poincare(), c.weight()))
}

#[pyfunction]
fn system_moment(points: Vec<Pt>, weights: Vec<f64>, through: (Pt, Pt)) -> PyResult<f64> {
    Ok(hm::system_moment(&system(points, weights)?, &line(through)?))
}

#[pyfunction]
fn median_point(a: Pt, b: Pt, c: Pt) -> PyResult<Pt> {
    let t = hm::Triangle::new(point(a)?, point(b)?, point(c)?).map_err(err)?;
    Ok(hm::median_point(&t).map_err(err)?.to_poincare())
}

#[pyfunction]
fn disk_mass(r: f64) -> f64 {
    hm::disk_mass(r)
}

/// Returns `(d_n, mass)` for the wedge of angle `2 pi / n`.
#[pyfunction]
fn wedge_centroid(n: u32, r: f64) -> PyResult<(f64, f64)> {
    let w = hm::wedge_centroid(n, r).map_err(err)?;
    Ok((w.d_n, w.mass))
}

#[pymodule]
fn hypermass_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLamina>()?;
    m.add_function(wrap_pyfunction!(dist, m)?)?;
    m.add_function(wrap_pyfunction!(system_centroid, m)?)?;
    m.add_function(wrap_pyfunction!(system_moment, m)?)?;
    m.add_function(wrap_pyfunction!(median_point, m)?)?;
    m.add_function(wrap_pyfunction!(disk_mass, m)?)?;
    m.add_function(wrap_pyfunction!(wedge_centroid, m)?)?;
    Ok(())
}
