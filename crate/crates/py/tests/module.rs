use pyo3::ffi::c_str;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(code: &std::ffi::CStr) {
    Python::attach(|py| {
        let m = pyo3::wrap_pymodule!(jpn_py::jpn_module)(py);
        let globals = PyDict::new(py);
        globals.set_item("jpn", m).unwrap();
        py.run(code, Some(&globals), None).unwrap();
    });
}

#[test]
fn algebra_methods() {
    run(c_str!(
        r#"
a = jpn.jpn(3)
assert a.dim == 18 and a.parities().count(1) == 9
assert a.product("h_12", "s_23") == {"u_31": "1/2"}
assert a.check_super_jordan()["passed"]
assert jpn.from_json(a.to_json()).labels() == a.labels()
"#
    ));
}

#[test]
fn solvers() {
    run(c_str!(
        r#"
w = jpn.wpt_solve("pnop", 3, 2)
assert w["passed"] and w["corrections"]
assert jpn.wpt_solve("reg", 3, 0)["corrections"] == {}
r = jpn.lemma_derive("pn", 3)
assert not r["all_zero"] and len(r["reduction"]["free"]) == 3
"#
    ));
}

#[test]
fn errors_become_value_errors() {
    run(c_str!(
        r#"
for f in (lambda: jpn.extension("x"), lambda: jpn.jpn(3).product("q_1", "u_1"), lambda: jpn.from_json("{")):
    try:
        f()
    except ValueError:
        continue
    raise AssertionError("no error")
"#
    ));
}
