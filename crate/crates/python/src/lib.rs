//! Python bindings: rings and polynomials, the commutator system, Gröbner
//! bases, witness coefficients, matrix invariants and the verification suites.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use nearly::commideal::{build_system, CommutatorSystem};
use nearly::fedder::{fedder_witness, Identities, Method};
use nearly::ffexp::{count_commuting_pairs, witness_trials, ExperimentConfig};
use nearly::groebner::{buchberger_with_budget, budget_from_env, MonomialOrder};
use nearly::polymat::{char_poly, discriminant, pcal, PolyMatrix};
use nearly::suites::{run_suite, MethodChoice, SuiteOptions};
use nearly::{Domain, Error, Integer, Ring as CoreRing, RingRef, VariableTable};

fn err(e: Error) -> PyErr {
    match e {
        Error::Budget(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn domain(characteristic: u64) -> PyResult<Domain> {
    Domain::from_characteristic(characteristic).map_err(err)
}

/// A polynomial ring over the rationals (characteristic 0) or a prime field.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Ring {
    inner: RingRef,
}

#[pymethods]
impl Ring {
    #[new]
    #[pyo3(signature = (variables, characteristic = 0))]
    fn new(variables: Vec<String>, characteristic: u64) -> PyResult<Self> {
        let vars = VariableTable::new(variables).map_err(err)?;
        Ok(Ring {
            inner: CoreRing::new(vars, domain(characteristic)?),
        })
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.inner.vars().names().to_vec()
    }

    #[getter]
    fn characteristic(&self) -> u64 {
        self.inner.domain().characteristic()
    }

    fn parse(&self, text: &str) -> PyResult<Polynomial> {
        let inner = nearly::Polynomial::parse(&self.inner, text).map_err(err)?;
        Ok(Polynomial { inner })
    }

    fn var(&self, name: &str) -> PyResult<Polynomial> {
        let inner = nearly::Polynomial::var_named(&self.inner, name).map_err(err)?;
        Ok(Polynomial { inner })
    }

    fn __repr__(&self) -> String {
        format!(
            "Ring({:?}, characteristic={})",
            self.inner.vars().names(),
            self.characteristic()
        )
    }
}

#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct Polynomial {
    inner: nearly::Polynomial,
}

#[pymethods]
impl Polynomial {
    fn __add__(&self, other: &Polynomial) -> PyResult<Polynomial> {
        let inner = self.inner.try_add(&other.inner).map_err(err)?;
        Ok(Polynomial { inner })
    }

    fn __sub__(&self, other: &Polynomial) -> PyResult<Polynomial> {
        let inner = self.inner.try_sub(&other.inner).map_err(err)?;
        Ok(Polynomial { inner })
    }

    fn __mul__(&self, other: &Polynomial) -> PyResult<Polynomial> {
        let inner = self.inner.try_mul(&other.inner).map_err(err)?;
        Ok(Polynomial { inner })
    }

    fn __neg__(&self) -> Polynomial {
        Polynomial { inner: -&self.inner }
    }

    fn __pow__(&self, e: u32, modulo: Option<Py<PyAny>>) -> PyResult<Polynomial> {
        if modulo.is_some() {
            return Err(PyValueError::new_err("modular pow is not supported"));
        }
        Ok(Polynomial {
            inner: self.inner.pow(e),
        })
    }

    fn __eq__(&self, other: &Polynomial) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({})", self.inner)
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn total_degree(&self) -> Option<u32> {
        self.inner.total_degree()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

/// The pair of generic matrices `X`, `Y` and the entries of `XY - YX`.
#[pyclass(frozen, name = "CommutatorSystem")]
struct PyCommutatorSystem {
    inner: CommutatorSystem,
}

#[pymethods]
impl PyCommutatorSystem {
    #[new]
    #[pyo3(signature = (n, characteristic = 0))]
    fn new(n: usize, characteristic: u64) -> PyResult<Self> {
        let inner = build_system(n, domain(characteristic)?).map_err(err)?;
        Ok(PyCommutatorSystem { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn ring(&self) -> Ring {
        Ring {
            inner: self.inner.ring().clone(),
        }
    }

    /// Entry `(i, j)` of the commutator, 1-based.
    fn u(&self, i: usize, j: usize) -> PyResult<Polynomial> {
        let n = self.inner.n();
        if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
            return Err(PyValueError::new_err(format!("index ({i}, {j}) outside 1..={n}")));
        }
        Ok(Polynomial {
            inner: self.inner.u(i, j).clone(),
        })
    }

    /// The off-diagonal entries, row by row.
    fn generators(&self) -> Vec<Polynomial> {
        self.inner
            .generators()
            .into_iter()
            .map(|inner| Polynomial { inner })
            .collect()
    }

    fn grading(&self) -> Vec<i64> {
        self.inner.grading()
    }
}

#[pyclass(frozen, name = "GroebnerBasis")]
struct PyGroebnerBasis {
    inner: nearly::groebner::GroebnerBasis,
}

#[pymethods]
impl PyGroebnerBasis {
    fn generators(&self) -> Vec<Polynomial> {
        self.inner
            .generators()
            .into_iter()
            .map(|inner| Polynomial { inner })
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn is_unit(&self) -> bool {
        self.inner.is_unit()
    }

    fn contains(&self, f: &Polynomial) -> PyResult<bool> {
        self.inner.contains(&f.inner).map_err(err)
    }

    fn normal_form(&self, f: &Polynomial) -> PyResult<Polynomial> {
        let inner = self.inner.normal_form(&f.inner).map_err(err)?;
        Ok(Polynomial { inner })
    }

    /// Krull dimension of the quotient ring.
    fn dimension(&self) -> PyResult<usize> {
        self.inner.dimension().map_err(err)
    }
}

/// Reduced Gröbner basis under grevlex.
#[pyfunction]
#[pyo3(signature = (generators, budget = None))]
fn groebner_basis(generators: Vec<Polynomial>, budget: Option<u64>) -> PyResult<PyGroebnerBasis> {
    let gens: Vec<nearly::Polynomial> = generators.into_iter().map(|p| p.inner).collect();
    let budget = budget.unwrap_or_else(budget_from_env);
    let inner = buchberger_with_budget(&gens, MonomialOrder::Grevlex, Some(budget)).map_err(err)?;
    Ok(PyGroebnerBasis { inner })
}

#[pyclass(frozen, get_all)]
struct FedderOutcome {
    n: usize,
    p: u64,
    witness: String,
    coefficient: u32,
    method: String,
    elapsed_ms: u128,
}

#[pymethods]
impl FedderOutcome {
    fn certifies(&self) -> bool {
        self.coefficient != 0
    }

    fn __repr__(&self) -> String {
        format!(
            "FedderOutcome(n={}, p={}, coefficient={}, method={})",
            self.n, self.p, self.coefficient, self.method
        )
    }
}

/// Coefficient of the witness monomial in the product of `u_ij^(p-1)`, mod p.
#[pyfunction]
#[pyo3(signature = (n, p, method = "direct", budget = None))]
fn witness_coefficient(n: usize, p: u64, method: &str, budget: Option<u64>) -> PyResult<FedderOutcome> {
    let method: Method = method.parse().map_err(err)?;
    let o = fedder_witness(n, p, method, Some(budget.unwrap_or_else(budget_from_env))).map_err(err)?;
    Ok(FedderOutcome {
        n: o.n,
        p: o.p,
        witness: o.witness,
        coefficient: o.coefficient.value(),
        method: o.method.to_string(),
        elapsed_ms: o.elapsed.as_millis(),
    })
}

#[pyfunction]
fn identity_a(m: usize, b: usize, d: usize) -> PyResult<Integer> {
    Identities::new(m).a(m, b, d).map_err(err)
}

#[pyfunction]
fn identity_b(m: usize, b: usize) -> PyResult<Integer> {
    Identities::new(m).b(m, b).map_err(err)
}

#[pyfunction]
fn identity_c(m: usize) -> PyResult<Integer> {
    Identities::new(m).c(m).map_err(err)
}

fn integer_matrix(rows: &[Vec<i64>], characteristic: u64) -> PyResult<PolyMatrix> {
    let ring = CoreRing::new(
        VariableTable::new(Vec::<String>::new()).map_err(err)?,
        domain(characteristic)?,
    );
    PolyMatrix::from_i64_rows(&ring, rows).map_err(err)
}

/// Determinant of the matrix of powers of the diagonal entries.
#[pyfunction(name = "pcal")]
#[pyo3(signature = (rows, characteristic = 0))]
fn py_pcal(rows: Vec<Vec<i64>>, characteristic: u64) -> PyResult<String> {
    Ok(pcal(&integer_matrix(&rows, characteristic)?).to_string())
}

/// Characteristic polynomial coefficients, constant term first.
#[pyfunction(name = "char_poly")]
#[pyo3(signature = (rows, characteristic = 0))]
fn py_char_poly(rows: Vec<Vec<i64>>, characteristic: u64) -> PyResult<Vec<String>> {
    let cp = char_poly(&integer_matrix(&rows, characteristic)?);
    Ok(cp.coeffs().iter().map(|c| c.to_string()).collect())
}

#[pyfunction(name = "discriminant")]
#[pyo3(signature = (rows, characteristic = 0))]
fn py_discriminant(rows: Vec<Vec<i64>>, characteristic: u64) -> PyResult<String> {
    let cp = char_poly(&integer_matrix(&rows, characteristic)?);
    Ok(discriminant(&cp).map_err(err)?.to_string())
}

/// Number of commuting pairs of `n x n` matrices over `F_q`.
#[pyfunction(name = "count_commuting_pairs")]
fn py_count_commuting_pairs(n: usize, q: u32) -> PyResult<Integer> {
    count_commuting_pairs(n, q).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n = 3, q = 7, trials = 10_000, seed = 1))]
fn sample_witnesses(py: Python<'_>, n: usize, q: u32, trials: u64, seed: u64) -> PyResult<Py<PyDict>> {
    let s = witness_trials(&ExperimentConfig { n, q, trials, seed }).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("trials", s.trials)?;
    d.set_item("witnesses", s.witnesses)?;
    d.set_item("pcal_zero", s.pcal_zero)?;
    d.set_item("violations", s.violations)?;
    d.set_item("low_nullity", s.low_nullity)?;
    Ok(d.unbind())
}

/// Runs a named suite and returns its JSON report.
#[pyfunction(name = "run_suite")]
#[pyo3(signature = (name, n = None, p = None, q = None, characteristic = None, max_m = None, trials = None, seed = 1, method = "both", budget = None))]
#[allow(clippy::too_many_arguments)]
fn py_run_suite(
    name: &str,
    n: Option<usize>,
    p: Option<u64>,
    q: Option<u32>,
    characteristic: Option<u64>,
    max_m: Option<usize>,
    trials: Option<u64>,
    seed: u64,
    method: &str,
    budget: Option<u64>,
) -> PyResult<String> {
    let method = match method {
        "direct" => MethodChoice::Direct,
        "parametric" => MethodChoice::Parametric,
        "both" => MethodChoice::Both,
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    let opts = SuiteOptions {
        n,
        p,
        q,
        characteristic,
        max_m,
        trials,
        seed,
        method,
        budget: budget.unwrap_or_else(budget_from_env),
    };
    Ok(run_suite(name, &opts).map_err(err)?.to_json())
}

#[pymodule]
fn pynearly(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ring>()?;
    m.add_class::<Polynomial>()?;
    m.add_class::<PyCommutatorSystem>()?;
    m.add_class::<PyGroebnerBasis>()?;
    m.add_class::<FedderOutcome>()?;
    m.add_function(wrap_pyfunction!(groebner_basis, m)?)?;
    m.add_function(wrap_pyfunction!(witness_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(identity_a, m)?)?;
    m.add_function(wrap_pyfunction!(identity_b, m)?)?;
    m.add_function(wrap_pyfunction!(identity_c, m)?)?;
    m.add_function(wrap_pyfunction!(py_pcal, m)?)?;
    m.add_function(wrap_pyfunction!(py_char_poly, m)?)?;
    m.add_function(wrap_pyfunction!(py_discriminant, m)?)?;
    m.add_function(wrap_pyfunction!(py_count_commuting_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(sample_witnesses, m)?)?;
    m.add_function(wrap_pyfunction!(py_run_suite, m)?)?;
    Ok(())
}
