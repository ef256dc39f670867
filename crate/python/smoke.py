"""Smoke test for the invsig_py extension module.

Build the module first, e.g. `maturin develop -m crates/py/Cargo.toml`, or
`cargo build -p invsig-py --features extension-module` and copy
target/debug/libinvsig_py.so to invsig_py.so somewhere on PYTHONPATH.
"""

import json
import sys

import invsig_py as sig


def main():
    t = sig.Group("T")
    assert t.order == 24 and len(t) == 24, t
    assert t.signature() == (9, 5)
    assert t.signature("numeric") == (9, 5)
    n_plus, n_minus, n_zero = t.inertia()
    assert n_plus + n_minus == 14

    rec = json.loads(t.record_json())
    assert rec["ratio"] == "9/14", rec

    assert sig.Group("binary-dihedral:2").signature() == (5, 1)
    assert sig.Group("dihedral:7").signature() == sig.closed_signature("dihedral", 7)
    assert sig.Group("cyclic:5,4").signature() == sig.closed_signature("cyclic-su2", 5)

    f = sig.fpq(6, 4)
    assert f[(2, 1)] == 6 and f[(4, 2)] == -3, f
    assert sig.fpq_text(6, 4) == "x^6+6x^2y-3x^4y^2+2y^3+3x^2y^4-y^6"
    assert [sig.asymptotic_ratio(q) for q in (1, 3, 9)] == ["1", "5/6", "7/9"]

    assert sig.Group("cyclic:7,3").verify_chern_identity()
    report = json.loads(sig.Group("dihedral:3").chern_report_json())
    assert report["multiset_holds"] and not report["set_holds"], report

    rep = json.loads(sig.verify_json("lww", p_max=20))
    assert rep["cases_run"] == rep["cases_passed"], rep

    for bad in ("cyclic:5", "file:/nonexistent.json"):
        try:
            sig.Group(bad)
        except ValueError:
            pass
        else:
            raise AssertionError(f"{bad} should be rejected")

    print("smoke ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
