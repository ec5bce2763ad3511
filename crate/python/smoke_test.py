"""Smoke test for the Python extension.

Build and run from the repository root:

    cargo build --release -p tensorinv-py
    cp target/release/libtensorinv_py.so python/tensorinv_py.so
    python3 python/smoke_test.py
"""

import tensorinv_py as ti


def main():
    f = ti.Expr("1/(1-a1*x1)(1-x2/a1)")
    assert str(f.ct("a1")) == "1/(1-x1*x2)", str(f.ct("a1"))

    g3 = ti.compute("G", 3, "divdiff")
    assert g3 == "(1 + q^4)/(1-q^2)^4(1-q^4)", g3
    assert ti.compute_expr("G", 3, "direct") == ti.Expr("(1+q^4)/(1-q^2)^4(1-q^4)")

    w4 = ti.compute("W", 4)
    assert w4 == "1/(1-q^2)(1-q^4)^2(1-q^6)", w4

    assert ti.oracle_table(3, 2) == [1, 4, 12]
    series = ti.compute_expr("G", 3).series(4)
    assert series == ["1", "0", "4", "0", "12"], series

    assert ti.verify("W", 3, "divdiff", "oracle:6")
    orbits, contributing, sizes = ti.orbit_census(3, "half")
    assert (orbits, contributing, sorted(sizes)) == (6, 2, [1, 2])

    try:
        ti.Expr("1/(1-")
    except ValueError:
        pass
    else:
        raise AssertionError("parse error not raised")
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
