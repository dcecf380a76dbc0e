use pyo3::ffi::c_str;
use pyo3::prelude::*;

use coopverif::coopverif;

#[test]
fn module_answers_the_reference_questions() {
    pyo3::append_to_inittab!(coopverif);
    Python::initialize();
    Python::attach(|py| {
        py.run(
            c_str!(
                r#"
import coopverif as cv

g = cv.Game.example("coordination")
assert g.flavour == "ltl" and g.agents == 2
assert cv.Game.parse(g.to_text()).to_text() == g.to_text()
profiles = dict(cv.example_profiles("coordination"))
v = cv.core_member(g, profiles["all-false"])
assert v["status"] == "FAILS" and v["witness"]["coalition"] == [1, 2], v
assert cv.e_core(g, "G (p & q)")["status"] == "HOLDS"
assert cv.run(g, profiles["all-true"])["winners"] == [1, 2]

mp = cv.Game.example("mp-empty-core-3p")
for name, p in cv.example_profiles("mp-empty-core-3p"):
    assert cv.mp_core_member(mp, p)["status"] == "FAILS", name
assert cv.mp_e_core_profile(mp) is None
assert cv.is_lower_bound(mp, [2, 3], ["1", "0"])

try:
    cv.Game.parse("game ltl\nagents 1\nbogus\n")
except ValueError as e:
    assert "line 3" in str(e), e
else:
    raise AssertionError("parse error not raised")
"#
            ),
            None,
            None,
        )
        .unwrap();
    });
}
