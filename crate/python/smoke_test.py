"""Smoke test for the spa_witness extension module.

Builds the extension with cargo if it is not importable, then checks a few
values against independent numpy computations.
"""

import importlib
import pathlib
import shutil
import subprocess
import sys
import tempfile

import numpy as np

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    try:
        return importlib.import_module("spa_witness")
    except ImportError:
        pass
    subprocess.run(
        ["cargo", "build", "--release", "-p", "spa-python", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libspa_witness.so"
    dest = pathlib.Path(tempfile.mkdtemp()) / "spa_witness.so"
    shutil.copy(lib, dest)
    sys.path.insert(0, str(dest.parent))
    return importlib.import_module("spa_witness")


def main():
    sw = load()

    g = 0.75
    w = np.array(sw.build_witness(g))
    assert w.shape == (9, 9)
    assert np.allclose(w, w.conj().T, atol=1e-14)
    assert abs(np.trace(w).real - 3.0) < 1e-12

    evals = np.linalg.eigvalsh(w)
    fam = sw.BellFamily(g)
    lam, deg = fam.spectrum()
    assert deg == 3
    assert abs(lam - evals[0]) < 1e-10

    spa = sw.spa(g)
    assert abs(spa["p_star"] - 1.0 / (1.0 - 3.0 * evals[0])) < 1e-10
    rr = sw.realignment_report(g)
    assert rr["entangled_flag"] and 0 < rr["margin"] < 1e-3
    assert abs(sw.lambda0(g) + 0.64193) < 1e-5

    rows = sw.scan(0.2, 0.8, 4)
    assert [round(r["gamma"], 12) for r in rows] == [0.2, 0.4, 0.6, 0.8]

    for x, y in sw.solve_constraint(1 + 0.5j):
        x, y = np.array(x), np.array(y)
        b = np.array(fam.b())
        v = np.kron(x, y)
        assert abs(v.conj() @ b @ v) < 1e-10 * np.vdot(v, v).real

    opt = sw.optimality(0.4, 24, 1)
    assert opt["b_span"]["numeric_rank"] == 6
    assert opt["w_span"]["numeric_rank"] == 9
    assert sw.ces_overlap(8, 200, 0) < 1 - 1e-3

    cert = sw.certify()
    assert cert["verdict"] is True
    assert sw.certify("-0.65")["failed_step"] == "threshold"

    try:
        sw.BellFamily(1.5)
    except ValueError:
        pass
    else:
        raise AssertionError("gamma 1.5 accepted")

    print("smoke test ok:", fam, "lambda_min", lam, "p*", spa["p_star"])


if __name__ == "__main__":
    main()
