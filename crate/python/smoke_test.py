"""Smoke test for the codent_py extension module.

Build first:

    cargo build --release -p codent-py --features extension-module

The script imports codent_py from the path if it can, and otherwise loads
target/release/libcodent_py.so directly.
"""

import importlib.machinery
import importlib.util
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    try:
        import codent_py

        return codent_py
    except ImportError:
        pass
    for name in ("libcodent_py.so", "libcodent_py.dylib", "codent_py.dll"):
        lib = ROOT / "target" / "release" / name
        if lib.exists():
            loader = importlib.machinery.ExtensionFileLoader("codent_py", str(lib))
            spec = importlib.util.spec_from_file_location("codent_py", str(lib), loader=loader)
            mod = importlib.util.module_from_spec(spec)
            loader.exec_module(mod)
            return mod
    sys.exit("codent_py not built; run: cargo build --release -p codent-py --features extension-module")


def main():
    c = load()

    z = c.Cyclo8.z()
    assert z**8 == c.Cyclo8(1)
    assert z**4 == c.Cyclo8(-1)
    assert c.Cyclo8.sqrt2() ** 2 == 2
    assert (z + z**7) == c.Cyclo8.sqrt2()
    assert c.Cyclo8("1/2") * 2 == 1

    phi = c.Matrix.catalog("phi_chi")
    assert phi.shape == (6, 6)
    minus = c.Matrix([[-1 if i == j else 0 for j in range(6)] for i in range(6)])
    assert phi @ phi == minus

    for code in ("e8", "q8", "k8", "d16", "k16"):
        info = c.code_info(code)
        assert info["self_dual"] and info["type_ii"], code

    h = c.group_generators("H")
    for q, printed in (("q8", "W_E8_Q8"), ("k8", "W_E8_K8")):
        w = c.swe_of("e8", q)
        assert w == c.Poly.catalog(printed), printed
        assert w.degree() == 8
        assert w.evaluate([1] * 6) == 4096
        assert w.is_invariant(h)

    series = c.molien_formula_h(48)
    assert [series[d] for d in range(0, 49, 8)] == [1, 2, 6, 20, 46, 96, 195]
    assert c.fixed_space_dimension(8) == 2

    text = c.emit("matrix", "phi_chi")
    assert len(text.splitlines()) == 6

    try:
        c.Poly.catalog("nope")
    except KeyError:
        pass
    else:
        raise AssertionError("unknown id accepted")

    print("codent_py smoke test: ok")


if __name__ == "__main__":
    main()
