"""Smoke test for the quiverkit_py extension.

Build and run from the repository root:

    cargo build -p quiverkit-py --features extension-module --release
    python3 python/smoke_test.py

The script looks for the compiled library under target/ and imports it
directly, so no packaging step is needed.
"""

import importlib.machinery
import importlib.util
import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_extension():
    try:
        import quiverkit_py  # installed wheel, if any

        return quiverkit_py
    except ImportError:
        pass
    for profile in ("release", "debug"):
        for suffix in ("so", "dylib", "dll"):
            lib = ROOT / "target" / profile / f"libquiverkit_py.{suffix}"
            if not lib.exists():
                lib = ROOT / "target" / profile / f"quiverkit_py.{suffix}"
            if lib.exists():
                loader = importlib.machinery.ExtensionFileLoader("quiverkit_py", str(lib))
                spec = importlib.util.spec_from_loader("quiverkit_py", loader)
                module = importlib.util.module_from_spec(spec)
                loader.exec_module(module)
                return module
    sys.exit("extension not built: cargo build -p quiverkit-py --features extension-module")


def main():
    qk = load_extension()

    a = qk.Algebra.nakayama([5, 6, 6])
    assert a.dim == 17 and a.nilpotency_is_stable()
    assert [a.projective(v).total_dim for v in range(3)] == [5, 6, 6]

    proj, gp, not_gp, unknown = a.gp_classification()
    assert gp == ["S2^[3]"] and not unknown, (gp, unknown)
    assert len(proj) + len(gp) + len(not_gp) == 17

    mods = dict(a.indecomposables())
    x = mods["S2^[3]"]
    assert x.gp_status() == "gorenstein_projective"
    assert x.stable_hom_dim(x) == 1
    assert a.projective(0).projective_dimension()[0] == 0

    endo = qk.Endo([("1", a.projective(0)), ("2", a.projective(1)), ("3", a.projective(2)), ("2'", x)])
    verdict = endo.verify_presentation(
        ["1", "2", "3", "2'"],
        [("alpha", "1", "2"), ("beta", "2", "3"), ("gamma", "3", "1"), ("a", "2", "2'"), ("b", "2'", "2")],
        ["a*b", "beta*b*a*alpha", "b*a - alpha*gamma*beta"],
        12,
    )
    assert verdict == "verified", verdict
    assert endo.kernel_simples() == ["2'"]
    assert endo.is_partial_resolution() == "yes"

    ctx = qk.SgContext(a)
    nonproj = [(n, m) for n, m in mods.items() if not m.is_projective()]
    zero, classes, unresolved = ctx.classify(nonproj)
    assert len(classes) == 6 and not unresolved
    assert ctx.stabilized_dim(x, x, 1) == 1

    base = qk.Algebra(["1", "2"], [("alpha", "1", "2")])
    intervals = base.interval_modules()
    assert all(s == h + e for _, m in intervals for _, n in intervals for s, h, e in [qk.equ1(m, n)])
    e = qk.eta(base.simple(0))
    assert e.dims == [1, 2] and e.is_indecomposable()

    alg, named = qk.Algebra.from_file(str(ROOT / "fixtures" / "dual_numbers_a2.qa"))
    assert alg.dim == 6 and dict(named)["eta_S1"].is_isomorphic(e)

    try:
        qk.Algebra.from_text("field F 6\nquiver\n vertex 1\n")
    except ValueError as err:
        assert "line 1" in str(err)
    else:
        raise AssertionError("non-prime field accepted")

    report = json.loads(qk.run_scenario("equ1-suite"))
    assert report["status"] == "pass" and len(report["assertions"]) == 9

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
