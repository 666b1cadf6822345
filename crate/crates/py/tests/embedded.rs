use pyo3::prelude::*;
use quiverkit_py::quiverkit_py;

#[test]
fn bindings_from_embedded_interpreter() {
    pyo3::append_to_inittab!(quiverkit_py);
    Python::initialize();
    Python::attach(|py| {
        let code = c"
import quiverkit_py as qk
a = qk.Algebra.nakayama([5, 6, 6])
assert a.dim == 17
proj, gp, _, unknown = a.gp_classification()
assert gp == ['S2^[3]'] and not unknown
x = dict(a.indecomposables())['S2^[3]']
assert x.gp_status() == 'gorenstein_projective'
base = qk.Algebra(['1', '2'], [('a', '1', '2')])
assert qk.eta(base.simple(0)).dims == [1, 2]
s, h, e = qk.equ1(base.simple(0), base.simple(1))
assert (s, h, e) == (1, 0, 1)
try:
    qk.Algebra(['1'], [('x', '1', '2')])
except ValueError:
    pass
else:
    raise AssertionError('bad quiver accepted')
";
        py.run(code, None, None).map_err(|e| e.to_string()).unwrap();
    });
}
