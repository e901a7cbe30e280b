//! Python bindings: fields, networks, walks and experiments.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use rcmlab::enet::{self, Orientation};
use rcmlab::exper::{self, ExperimentConfig};
use rcmlab::fieldlab::{self, DgffSampler, DirichletSpec, PinnedWindowSampler};
use rcmlab::walklab::{self, Boundary, WalkKernel};
use rcmlab::{LatticeBox, Point};

create_exception!(pyrcmlab, RcmError, PyException);

fn err(e: rcmlab::Error) -> PyErr {
    match e {
        rcmlab::Error::InvalidArgument(_) | rcmlab::Error::OutOfDomain(_) | rcmlab::Error::Parse(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => RcmError::new_err(e.to_string()),
    }
}

fn boundary(name: &str) -> PyResult<Boundary> {
    match name {
        "absorb" => Ok(Boundary::Absorb),
        "reflect" => Ok(Boundary::Reflect),
        _ => Err(PyValueError::new_err(format!("unknown boundary {name:?}"))),
    }
}

/// Field values on a box `[x0, x1] x [y0, y1]`.
#[pyclass(module = "pyrcmlab", from_py_object)]
#[derive(Clone)]
struct Field {
    inner: fieldlab::FieldSample,
}

#[pymethods]
impl Field {
    /// DGFF on `B(size)`, zero on the ring.
    #[staticmethod]
    fn dgff(size: i32, seed: u64) -> PyResult<Self> {
        let d = LatticeBox::ball(size);
        let s = DgffSampler::new(d, DirichletSpec::Boundary.mask(&d).map_err(err)?).map_err(err)?;
        Ok(Field { inner: s.sample(seed, 0) })
    }

    /// Field pinned at the origin, restricted to `B(size)`.
    #[staticmethod]
    #[pyo3(signature = (size, seed, margin = 4.0))]
    fn pinned(size: i32, seed: u64, margin: f64) -> PyResult<Self> {
        let s = PinnedWindowSampler::new(LatticeBox::ball(size), margin).map_err(err)?;
        Ok(Field { inner: s.sample(seed, 0) })
    }

    #[staticmethod]
    fn constant(size: i32, value: f64) -> Self {
        Field { inner: fieldlab::FieldSample::constant(LatticeBox::ball(size), value) }
    }

    #[staticmethod]
    fn read(path: &str) -> PyResult<Self> {
        Ok(Field { inner: fieldlab::io::read_field(path.as_ref()).map_err(err)? })
    }

    fn write(&self, path: &str) -> PyResult<()> {
        fieldlab::io::write_field(&self.inner, path.as_ref()).map_err(err)
    }

    /// `(x0, x1, y0, y1)`.
    #[getter]
    fn domain(&self) -> (i32, i32, i32, i32) {
        let d = self.inner.domain;
        (d.x0, d.x1, d.y0, d.y1)
    }

    /// Row-major values.
    #[getter]
    fn values(&self) -> Vec<f64> {
        self.inner.values.clone()
    }

    fn get(&self, x: i32, y: i32) -> PyResult<f64> {
        self.inner.at((x, y)).map_err(err)
    }

    fn restrict(&self, size: i32) -> PyResult<Self> {
        Ok(Field { inner: self.inner.restrict(&LatticeBox::ball(size)).map_err(err)? })
    }

    fn __len__(&self) -> usize {
        self.inner.values.len()
    }
}

/// Electrical network with conductances kept relative to a log offset.
#[pyclass(module = "pyrcmlab")]
struct Network {
    inner: enet::Network,
}

#[pymethods]
impl Network {
    /// Conductances `exp(gamma (eta_u + eta_v))`.
    #[staticmethod]
    fn from_field(field: &Field, gamma: f64) -> PyResult<Self> {
        Ok(Network { inner: enet::Network::from_field(&field.inner, gamma).map_err(err)? })
    }

    /// Unit conductances on `B(size)`.
    #[staticmethod]
    fn unit(size: i32) -> Self {
        Network { inner: enet::Network::unit(LatticeBox::ball(size)) }
    }

    /// Parses `x1,y1,x2,y2,log_conductance` text.
    #[staticmethod]
    fn from_csv(text: &str) -> PyResult<Self> {
        Ok(Network { inner: enet::Network::from_csv(text).map_err(err)? })
    }

    fn to_csv(&self) -> PyResult<String> {
        self.inner.to_csv().map_err(err)
    }

    #[getter]
    fn n_vertices(&self) -> usize {
        self.inner.n_vertices()
    }

    #[getter]
    fn n_edges(&self) -> usize {
        self.inner.n_edges()
    }

    /// `ln R(A, B)`; `inf` when the sets are not connected.
    fn log_resistance(&self, source: Vec<Point>, target: Vec<Point>) -> PyResult<f64> {
        Ok(enet::resistance_between(&self.inner, &source, &target).map_err(err)?.ln())
    }

    /// Unit current per edge, as `((x1, y1), (x2, y2), current)`.
    fn currents(&self, source: Vec<Point>, target: Vec<Point>) -> PyResult<Vec<(Point, Point, f64)>> {
        let net = &self.inner;
        let a = net.vertices_of(&source).map_err(err)?;
        let b = net.vertices_of(&target).map_err(err)?;
        let sol = enet::solve_pair(net, &a, &b, Default::default()).map_err(err)?;
        Ok(net
            .edges()
            .iter()
            .zip(&sol.flow.values)
            .filter_map(|(&(u, v), &i)| Some((net.coord(u)?, net.coord(v)?, i)))
            .collect())
    }

    /// `ln` of the crossing resistance of `B(radius)`, `"lr"` or `"ud"`.
    #[pyo3(signature = (radius, orientation = "lr"))]
    fn log_crossing(&self, radius: i32, orientation: &str) -> PyResult<f64> {
        let o = match orientation {
            "lr" => Orientation::Lr,
            "ud" => Orientation::Ud,
            _ => return Err(PyValueError::new_err(format!("unknown orientation {orientation:?}"))),
        };
        Ok(enet::crossing_resistance(&self.inner, &LatticeBox::ball(radius), o).map_err(err)?.ln())
    }

    /// Network with every conductance inverted.
    fn reciprocal(&self) -> Self {
        Network { inner: self.inner.reciprocal() }
    }

    fn __repr__(&self) -> String {
        format!("Network(n_vertices={}, n_edges={})", self.inner.n_vertices(), self.inner.n_edges())
    }
}

#[pyfunction]
fn psi_exponent(gamma: f64) -> PyResult<f64> {
    exper::psi_exponent(gamma).map_err(err)
}

/// `P^0(X_2T = 0)` on the field's box with reflection.
#[pyfunction]
fn return_probability(field: &Field, gamma: f64, t: usize) -> PyResult<f64> {
    let k = WalkKernel::new(&field.inner, gamma, Boundary::Reflect).map_err(err)?;
    walklab::return_probability_exact(&k, t).map_err(err)
}

#[pyfunction]
fn simple_walk_return(t: u64) -> f64 {
    walklab::simple_walk_return(t)
}

/// `E^0` of the exit time from `B(n)`; the field must cover `B(n+1)`.
#[pyfunction]
fn exit_time(field: &Field, gamma: f64, n: i32) -> PyResult<f64> {
    walklab::exit_time(&field.inner, gamma, n).map_err(err)
}

/// Positions `(t, x, y)` of a walk from the origin.
#[pyfunction]
#[pyo3(signature = (field, gamma, steps, seed, boundary = "absorb"))]
fn simulate_walk(field: &Field, gamma: f64, steps: usize, seed: u64, boundary: &str) -> PyResult<Vec<(f64, i32, i32)>> {
    let k = WalkKernel::new(&field.inner, gamma, self::boundary(boundary)?).map_err(err)?;
    let rec = walklab::simulate_walk(&k, (0, 0), steps, seed).map_err(err)?;
    Ok(rec.steps.iter().map(|&(t, p)| (t, p.0, p.1)).collect())
}

#[pyfunction]
fn three_node_voltage(r12: f64, r13: f64, r23: f64) -> PyResult<f64> {
    enet::three_node_voltage(r12, r13, r23).map_err(err)
}

/// Runs an experiment from a JSON config; returns the report as JSON.
#[pyfunction]
fn run_experiment(py: Python<'_>, config: &str) -> PyResult<String> {
    let cfg: ExperimentConfig = serde_json::from_str(config).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let (out, _) = py.detach(|| exper::run(&cfg)).map_err(err)?;
    serde_json::to_string(&out).map_err(|e| RcmError::new_err(e.to_string()))
}

#[pymodule]
fn pyrcmlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("RcmError", m.py().get_type::<RcmError>())?;
    m.add("GAMMA_C", exper::GAMMA_C)?;
    m.add_class::<Field>()?;
    m.add_class::<Network>()?;
    m.add_function(wrap_pyfunction!(psi_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(return_probability, m)?)?;
    m.add_function(wrap_pyfunction!(simple_walk_return, m)?)?;
    m.add_function(wrap_pyfunction!(exit_time, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_walk, m)?)?;
    m.add_function(wrap_pyfunction!(three_node_voltage, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    Ok(())
}
