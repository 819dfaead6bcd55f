"""Smoke test for the Python bindings.

Build the extension first, either with `maturin develop -m crates/py/Cargo.toml`
or with `cargo build --release -p logchern-py --features extension-module` and a
copy of target/release/liblogchern_py.so to python/logchern.so.
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import logchern  # noqa: E402


def main():
    names = [name for name, _ in logchern.examples()]
    assert "eight_planes" in names, names

    a = logchern.Arrangement.example("eight_planes")
    assert len(a) == 8 and a.dim == 4
    assert a.poincare_projective() == [1, 7, 18, 17]
    assert a.csm_complement() == [1, -4, 7, -5]
    assert a.csm_of_divisor() == [0, 8, -1, 9]

    d0 = logchern.log_module(a, "D0")
    assert d0.generator_degrees == [3, 3, 3, 3, 3], d0
    assert not d0.is_free
    assert logchern.nval(a, per_flat=True) == 3

    r = logchern.verify(a)
    assert r.lhs == [1, -4, 7, -2], r
    assert r.n == 3 and r.holds
    assert json.loads(r.json)["N"] == 3

    b = logchern.Arrangement([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert b.poincare_affine() == [1, 3, 3, 1]
    assert logchern.log_module(b, "D").exponents == [1, 1, 1]
    assert logchern.verify(b).residual == [0, 0, 0]

    assert [logchern.defect_coefficient(l) for l in (3, 4, 5)] == [0, 1, -5]
    assert logchern.chern_point(3) == [1, 0, 0, 2]
    assert logchern.twist_chern([1, -7, 18, -14]) == [1, -4, 7, -2]

    try:
        logchern.Arrangement([[1, 0], [2, 0]])
    except ValueError:
        pass
    else:
        raise AssertionError("duplicate hyperplanes accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
