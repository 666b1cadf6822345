//! Python bindings for `quiverkit`.

use std::sync::{Arc, Mutex};

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use quiverkit::dualnum::{self, DualPair};
use quiverkit::endo::{self, EndoAlgebra, PresentationClaim};
use quiverkit::format::{module_to_text, parse_algebra_file, parse_algebra_text};
use quiverkit::gproj::{self, GpStatus};
use quiverkit::homol::{self, GlobalDimension, DEFAULT_CAP};
use quiverkit::modcat::{self, IsoVerdict, Named};
use quiverkit::scenario;
use quiverkit::sgcat::{self, SgObject, Ternary};
use quiverkit::{Algebra as CoreAlgebra, Field, NakayamaSpec, Quiver, RelationElement};

fn err(e: quiverkit::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field_of(s: &str) -> PyResult<Field> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(Field::Rationals);
    }
    let p: u64 = t
        .trim_start_matches(['F', 'f'])
        .parse()
        .map_err(|_| PyValueError::new_err(format!("bad field `{s}`; use \"Q\" or \"F<p>\"")))?;
    Field::prime(p).map_err(err)
}

fn ternary(t: Ternary) -> Option<bool> {
    match t {
        Ternary::Yes => Some(true),
        Ternary::No => Some(false),
        Ternary::Inconclusive => None,
    }
}

/// A finite-dimensional bound quiver algebra.
#[pyclass(frozen, from_py_object, module = "quiverkit_py")]
#[derive(Clone)]
struct Algebra {
    inner: Arc<CoreAlgebra>,
}

#[pymethods]
impl Algebra {
    /// Build `kQ/I` from vertex labels, `(name, source, target)` arrows, relation strings and a bound `N`.
    #[new]
    #[pyo3(signature = (vertices, arrows, relations=Vec::new(), nilpotency=None, field="Q"))]
    fn new(
        vertices: Vec<String>,
        arrows: Vec<(String, String, String)>,
        relations: Vec<String>,
        nilpotency: Option<usize>,
        field: &str,
    ) -> PyResult<Self> {
        let f = field_of(field)?;
        let q = Quiver::new(&vertices, &arrows).map_err(err)?;
        let rels = relations.iter().map(|r| RelationElement::parse(&q, f, r)).collect::<quiverkit::Result<Vec<_>>>().map_err(err)?;
        let n = match nilpotency {
            Some(n) => n,
            None => q
                .longest_path()
                .map(|l| (l + 1).max(2))
                .ok_or_else(|| PyValueError::new_err("nilpotency is required for quivers with cycles"))?,
        };
        let inner = CoreAlgebra::build(q, rels, n, f).map_err(err)?;
        Ok(Algebra { inner: Arc::new(inner) })
    }

    /// Nakayama algebra with the given admissible sequence.
    #[staticmethod]
    #[pyo3(signature = (sequence, cyclic=true, field="Q"))]
    fn nakayama(sequence: Vec<usize>, cyclic: bool, field: &str) -> PyResult<Self> {
        let spec = if cyclic { NakayamaSpec::cyclic(&sequence) } else { NakayamaSpec::linear(&sequence) };
        let inner = CoreAlgebra::nakayama(&spec, field_of(field)?).map_err(err)?;
        Ok(Algebra { inner: Arc::new(inner) })
    }

    /// Parse the text format; returns the algebra and the named modules it declares.
    #[staticmethod]
    #[pyo3(signature = (text, field=None))]
    fn from_text(text: &str, field: Option<&str>) -> PyResult<(Self, Vec<(String, Module)>)> {
        let f = field.map(field_of).transpose()?;
        let file = parse_algebra_text(text, f).map_err(err)?;
        Ok((Algebra { inner: file.algebra }, file.modules.into_iter().map(|n| (n.name, Module { inner: n.module })).collect()))
    }

    #[staticmethod]
    #[pyo3(signature = (path, field=None))]
    fn from_file(path: &str, field: Option<&str>) -> PyResult<(Self, Vec<(String, Module)>)> {
        let f = field.map(field_of).transpose()?;
        let file = parse_algebra_file(path, f).map_err(err)?;
        Ok((Algebra { inner: file.algebra }, file.modules.into_iter().map(|n| (n.name, Module { inner: n.module })).collect()))
    }

    /// `kQ[ε]` for this (relation-free, acyclic) path algebra.
    fn dual_numbers(&self) -> PyResult<Algebra> {
        Ok(Algebra { inner: Arc::new(CoreAlgebra::dual_numbers(&self.inner).map_err(err)?) })
    }

    fn opposite(&self) -> Algebra {
        Algebra { inner: self.inner.opposite() }
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn num_vertices(&self) -> usize {
        self.inner.num_vertices()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    fn basis(&self) -> Vec<String> {
        let q = self.inner.quiver();
        self.inner.basis().iter().map(|p| p.display(q)).collect()
    }

    fn nilpotency_is_stable(&self) -> PyResult<bool> {
        Ok(self.inner.certify_nilpotency_independence().map_err(err)? == quiverkit::qalg::NilpotencyVerdict::Stable)
    }

    /// Global dimension, or `None` when infinite; raises when inconclusive.
    #[pyo3(signature = (cap=DEFAULT_CAP))]
    fn global_dimension(&self, cap: usize) -> PyResult<Option<usize>> {
        match homol::global_dimension(&self.inner, cap).map_err(err)? {
            GlobalDimension::Finite(d) => Ok(Some(d)),
            GlobalDimension::Infinite { .. } => Ok(None),
            GlobalDimension::Inconclusive { .. } => Err(PyValueError::new_err("inconclusive within cap")),
        }
    }

    fn projective(&self, v: usize) -> PyResult<Module> {
        Ok(Module { inner: modcat::Module::projective(self.inner.clone(), v).map_err(err)? })
    }

    fn simple(&self, v: usize) -> PyResult<Module> {
        Ok(Module { inner: modcat::Module::simple(self.inner.clone(), v).map_err(err)? })
    }

    fn injective(&self, v: usize) -> PyResult<Module> {
        Ok(Module { inner: modcat::Module::injective(self.inner.clone(), v).map_err(err)? })
    }

    fn regular(&self) -> PyResult<Module> {
        Ok(Module { inner: modcat::Module::regular(self.inner.clone()).map_err(err)? })
    }

    /// All indecomposables of a Nakayama algebra, named `S<v>^[l]`.
    fn indecomposables(&self) -> PyResult<Vec<(String, Module)>> {
        let all = modcat::enumerate_indecomposables(self.inner.clone()).map_err(err)?;
        Ok(all.into_iter().map(|n| (n.name, Module { inner: n.module })).collect())
    }

    /// Interval modules of a type-A path algebra.
    fn interval_modules(&self) -> PyResult<Vec<(String, Module)>> {
        let all = modcat::interval_modules(self.inner.clone()).map_err(err)?;
        Ok(all.into_iter().map(|n| (n.name, Module { inner: n.module })).collect())
    }

    /// `(projective, non-projective GP, not GP, inconclusive)` names for a Nakayama algebra.
    #[pyo3(signature = (cap=DEFAULT_CAP))]
    fn gp_classification(&self, cap: usize) -> PyResult<(Vec<String>, Vec<String>, Vec<String>, Vec<String>)> {
        let c = gproj::enumerate_gp_nakayama(self.inner.clone(), cap).map_err(err)?;
        let names = |v: &[Named]| v.iter().map(|n| n.name.clone()).collect::<Vec<_>>();
        Ok((names(&c.projective), names(&c.non_projective_gp), names(&c.not_gp), names(&c.inconclusive)))
    }

    fn __repr__(&self) -> String {
        format!("Algebra(dim={}, vertices={}, field={})", self.inner.dim(), self.inner.num_vertices(), self.inner.field())
    }
}

/// A finite-dimensional representation.
#[pyclass(frozen, from_py_object, module = "quiverkit_py")]
#[derive(Clone)]
struct Module {
    inner: modcat::Module,
}

#[pymethods]
impl Module {
    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.inner.dims().to_vec()
    }

    #[getter]
    fn total_dim(&self) -> usize {
        self.inner.total_dim()
    }

    fn algebra(&self) -> Algebra {
        Algebra { inner: self.inner.algebra().clone() }
    }

    fn hom_dim(&self, other: &Module) -> PyResult<usize> {
        modcat::hom_dim(&self.inner, &other.inner).map_err(err)
    }

    fn ext_dim(&self, degree: usize, other: &Module) -> PyResult<usize> {
        homol::ext_dim(degree, &self.inner, &other.inner).map_err(err)
    }

    fn stable_hom_dim(&self, other: &Module) -> PyResult<usize> {
        Ok(sgcat::stable_hom(&self.inner, &other.inner).map_err(err)?.dim())
    }

    /// `(pd or None, certificate text)`.
    #[pyo3(signature = (cap=DEFAULT_CAP))]
    fn projective_dimension(&self, cap: usize) -> PyResult<(Option<usize>, String)> {
        let c = homol::proj_dimension(&self.inner, cap).map_err(err)?;
        Ok((c.finite_value(), c.to_string()))
    }

    fn syzygy(&self) -> PyResult<Module> {
        Ok(Module { inner: homol::syzygy(&self.inner).map_err(err)?.0 })
    }

    fn decompose(&self) -> PyResult<Vec<Module>> {
        Ok(modcat::decompose(&self.inner).map_err(err)?.into_iter().map(|s| Module { inner: s.module }).collect())
    }

    fn is_indecomposable(&self) -> PyResult<bool> {
        modcat::is_indecomposable(&self.inner).map_err(err)
    }

    /// `True`, `False`, or `None` when undecided.
    fn is_isomorphic(&self, other: &Module) -> PyResult<Option<bool>> {
        Ok(match modcat::is_isomorphic(&self.inner, &other.inner).map_err(err)? {
            IsoVerdict::Isomorphic(_) => Some(true),
            IsoVerdict::NotIsomorphic(_) => Some(false),
            IsoVerdict::Unknown => None,
        })
    }

    fn direct_sum(&self, other: &Module) -> PyResult<Module> {
        let s = modcat::direct_sum(&[self.inner.clone(), other.inner.clone()]).map_err(err)?;
        Ok(Module { inner: s.module })
    }

    /// `"gorenstein_projective"`, `"not_gp"` or `"inconclusive"`.
    #[pyo3(signature = (cap=DEFAULT_CAP))]
    fn gp_status(&self, cap: usize) -> PyResult<&'static str> {
        Ok(match gproj::is_gorenstein_projective(&self.inner, cap).map_err(err)?.status {
            GpStatus::GorensteinProjective => "gorenstein_projective",
            GpStatus::NotGp => "not_gp",
            GpStatus::Inconclusive => "inconclusive",
        })
    }

    fn is_projective(&self) -> PyResult<bool> {
        gproj::is_projective(&self.inner).map_err(err)
    }

    #[pyo3(signature = (name="X"))]
    fn to_text(&self, name: &str) -> String {
        module_to_text(name, &self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Module(dims={:?})", self.inner.dims())
    }
}

/// `End_A(M)^op` for pairwise non-isomorphic indecomposable summands.
#[pyclass(frozen, module = "quiverkit_py")]
struct Endo {
    inner: EndoAlgebra,
}

#[pymethods]
impl Endo {
    /// Summands are `(name, module)` pairs; names become the vertices of the Gabriel quiver.
    #[new]
    fn new(summands: Vec<(String, Module)>) -> PyResult<Self> {
        let named = summands.into_iter().map(|(name, m)| Named { name, module: m.inner }).collect();
        Ok(Endo { inner: EndoAlgebra::from_summands(named).map_err(err)? })
    }

    /// Decompose `M` and keep one summand per isomorphism class.
    #[staticmethod]
    fn of_module(m: &Module) -> PyResult<Self> {
        Ok(Endo { inner: EndoAlgebra::new(&m.inner).map_err(err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn loewy_length(&self) -> usize {
        self.inner.loewy_length
    }

    fn quiver(&self) -> (Vec<String>, Vec<(String, String, String)>) {
        let q = &self.inner.quiver;
        let arrows = q
            .arrows()
            .iter()
            .map(|a| (a.label.clone(), q.vertices()[a.source].clone(), q.vertices()[a.target].clone()))
            .collect();
        (q.vertices().to_vec(), arrows)
    }

    fn presentation(&self) -> Algebra {
        Algebra { inner: self.inner.presentation.clone() }
    }

    /// `"verified"`, `"refuted: quiver"`, `"refuted: dimension"` or `"inconclusive"`.
    #[pyo3(signature = (vertices, arrows, relations, nilpotency, field="Q"))]
    fn verify_presentation(
        &self,
        vertices: Vec<String>,
        arrows: Vec<(String, String, String)>,
        relations: Vec<String>,
        nilpotency: usize,
        field: &str,
    ) -> PyResult<&'static str> {
        let q = Quiver::new(&vertices, &arrows).map_err(err)?;
        let rels: Vec<&str> = relations.iter().map(String::as_str).collect();
        let claim = PresentationClaim::parse(q, field_of(field)?, &rels, nilpotency).map_err(err)?;
        Ok(endo::verify_presentation(&self.inner, &claim).map_err(err)?.label())
    }

    fn kernel_simples(&self) -> PyResult<Vec<String>> {
        let ks = endo::kernel_category_simples(&self.inner).map_err(err)?;
        Ok(ks.into_iter().map(|t| self.inner.summands[t].name.clone()).collect())
    }

    /// `"yes"`, `"no"` or `"inconclusive"`.
    #[pyo3(signature = (cap=DEFAULT_CAP))]
    fn is_partial_resolution(&self, cap: usize) -> PyResult<&'static str> {
        Ok(match endo::is_partial_resolution(&self.inner, cap).map_err(err)?.status {
            endo::PartialResolutionStatus::Yes => "yes",
            endo::PartialResolutionStatus::No => "no",
            endo::PartialResolutionStatus::Inconclusive => "inconclusive",
        })
    }

    fn hom_functor(&self, x: &Module) -> PyResult<Module> {
        Ok(Module { inner: endo::hom_functor(&self.inner, &x.inner).map_err(err)?.module })
    }

    fn tensor_functor(&self, y: &Module) -> PyResult<Module> {
        Ok(Module { inner: endo::tensor_functor(&self.inner, &y.inner).map_err(err)? })
    }
}

/// Stable and stabilized Hom spaces over one algebra, with cached resolutions.
#[pyclass(frozen, module = "quiverkit_py")]
struct SgContext {
    inner: Mutex<sgcat::SgContext>,
}

impl SgContext {
    fn with<T>(&self, f: impl FnOnce(&mut sgcat::SgContext) -> quiverkit::Result<T>) -> PyResult<T> {
        let mut g = self.inner.lock().map_err(|_| PyValueError::new_err("context poisoned"))?;
        f(&mut g).map_err(err)
    }
}

#[pymethods]
impl SgContext {
    #[new]
    #[pyo3(signature = (algebra, cap=DEFAULT_CAP))]
    fn new(algebra: &Algebra, cap: usize) -> Self {
        SgContext { inner: Mutex::new(sgcat::SgContext::new(algebra.inner.clone(), cap)) }
    }

    fn is_zero(&self, x: &Module) -> PyResult<Option<bool>> {
        self.with(|c| c.sg_is_zero(&x.inner)).map(ternary)
    }

    /// `dim Hom(q X, q Y[shift])`, or `None` when stabilization is not reached within the cap.
    #[pyo3(signature = (x, y, shift=0))]
    fn stabilized_dim(&self, x: &Module, y: &Module, shift: i64) -> PyResult<Option<usize>> {
        let xo = SgObject::new("X", x.inner.clone());
        let yo = SgObject::new("Y", y.inner.clone()).shifted(shift);
        self.with(|c| c.stabilized_dim(&xo, &yo))
    }

    #[pyo3(signature = (x, y, shift=0))]
    fn is_isomorphic(&self, x: &Module, y: &Module, shift: i64) -> PyResult<Option<bool>> {
        let xo = SgObject::new("X", x.inner.clone()).shifted(shift);
        let yo = SgObject::new("Y", y.inner.clone());
        self.with(|c| c.sg_is_isomorphic(&xo, &yo)).map(ternary)
    }

    /// Group `(name, module)` pairs into nonzero classes; returns `(zero names, classes, unresolved)`.
    fn classify(&self, objects: Vec<(String, Module)>) -> PyResult<(Vec<String>, Vec<Vec<String>>, Vec<String>)> {
        let objs: Vec<SgObject> = objects.into_iter().map(|(n, m)| SgObject::new(n, m.inner)).collect();
        let c = self.with(|c| c.classify(&objs))?;
        let zero = c.zero.iter().map(|o| o.label.clone()).collect();
        let classes = c.classes.iter().map(|cl| cl.iter().map(|o| o.label.clone()).collect()).collect();
        Ok((zero, classes, c.unresolved))
    }

    /// Class representatives (from `candidates`) with no maps from any shift of `q M`.
    fn perp(&self, m: &Module, candidates: Vec<(String, Module)>) -> PyResult<Vec<String>> {
        let objs: Vec<SgObject> = candidates.into_iter().map(|(n, x)| SgObject::new(n, x.inner)).collect();
        self.with(|c| {
            let reps = c.classify(&objs)?.representatives();
            let p = c.perp(&m.inner, &reps)?;
            Ok(p.members.iter().map(|&i| reps[i].label.clone()).collect())
        })
    }
}

/// `η(X)` over `kQ[ε]` for a module `X` over the path algebra `kQ`.
#[pyfunction]
fn eta(x: &Module) -> PyResult<Module> {
    let pair = DualPair::new(x.inner.algebra().clone()).map_err(err)?;
    Ok(Module { inner: dualnum::eta(&pair, &x.inner).map_err(err)? })
}

/// `(stable Hom(ηX, ηY), Hom(X, Y), Ext^1(X, Y))`.
#[pyfunction]
fn equ1(x: &Module, y: &Module) -> PyResult<(usize, usize, usize)> {
    let pair = DualPair::new(x.inner.algebra().clone()).map_err(err)?;
    let c = dualnum::verify_equ1(&pair, &x.inner, &y.inner).map_err(err)?;
    Ok((c.stable_hom, c.hom, c.ext1))
}

#[pyfunction]
fn scenarios() -> Vec<&'static str> {
    scenario::SCENARIOS.to_vec()
}

/// Run a named scenario and return its JSON report.
#[pyfunction]
#[pyo3(signature = (id, field="Q", cap=DEFAULT_CAP))]
fn run_scenario(id: &str, field: &str, cap: usize) -> PyResult<String> {
    Ok(scenario::run_scenario(id, field_of(field)?, cap).map_err(err)?.to_json())
}

#[pymodule]
pub fn quiverkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebra>()?;
    m.add_class::<Module>()?;
    m.add_class::<Endo>()?;
    m.add_class::<SgContext>()?;
    m.add_function(wrap_pyfunction!(eta, m)?)?;
    m.add_function(wrap_pyfunction!(equ1, m)?)?;
    m.add_function(wrap_pyfunction!(scenarios, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
