"""Smoke test for the thermofun_py extension module.

Build the extension first:

    cargo build -p thermofun-py --release

then run this file with pytest (or plain `python3 python/smoke_test.py`).
The test copies the cdylib next to a temp directory under the importable
name, imports it, and spot-checks a few values against the frozen fixtures.
"""

import math
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def _import_module():
    candidates = [
        ROOT / "target" / "release" / "libthermofun_py.so",
        ROOT / "target" / "debug" / "libthermofun_py.so",
    ]
    src = next((p for p in candidates if p.exists()), None)
    if src is None:
        raise RuntimeError("build the extension first: cargo build -p thermofun-py --release")
    tmp = tempfile.mkdtemp(prefix="thermofun-py-")
    shutil.copy(src, pathlib.Path(tmp) / "thermofun_py.so")
    sys.path.insert(0, tmp)
    import thermofun_py

    return thermofun_py


tf = _import_module()

# frozen fixtures from scripts/gen_fixtures.py (mpmath, 50 digits)
I1_Z1_NU2 = 0.44317272727711943
I2_Z1_D2_NU2 = 0.21284638400515576
KRATZEL_NU15_RHO2_X1 = 0.1450151726324244
QRATE_NU2_Z1_Q09 = 0.30715230983222787


def test_i1_both_routes():
    closed = tf.eval_i1(1.0, 2.0)
    oracle = tf.eval_i1(1.0, 2.0, mode="oracle")
    assert closed["converged"] and oracle["converged"]
    assert math.isclose(closed["value"], I1_Z1_NU2, rel_tol=1e-10)
    assert math.isclose(oracle["value"], I1_Z1_NU2, rel_tol=1e-10)


def test_i2_crosscheck():
    r = tf.eval_i2(1.0, 2.0, 2.0, mode="crosscheck", rtol=1e-8)
    assert r["converged"]
    assert math.isclose(r["value"], I2_Z1_D2_NU2, rel_tol=1e-8)


def test_general_z0_degeneration():
    r = tf.eval_general(nu=2.0, a=2.0, z=0.0, rho=1.0)
    assert math.isclose(r["value"], 0.25, rel_tol=1e-11)  # Gamma(2)/2^2


def test_kratzel():
    r = tf.eval_kratzel(nu=1.5, rho=2.0, x=1.0)
    assert math.isclose(r["value"], KRATZEL_NU15_RHO2_X1, rel_tol=1e-8)


def test_domain_error_raises():
    try:
        tf.eval_i1(0.0, 2.0)
    except ValueError as e:
        assert "z>0" in str(e)
    else:
        raise AssertionError("z=0 must be rejected")


def test_qstat():
    assert math.isclose(tf.exp_q(1.0, 1.0), math.e, rel_tol=1e-12)
    assert tf.exp_q(-3.0, 0.5) == 0.0  # outside the q<1 support cut-off
    assert math.isclose(tf.tsallis_entropy(1.0, [0.5, 0.5]), math.log(2.0), rel_tol=1e-12)
    w = tf.q_weights(1.2, [0.25, 0.25, 0.5], [1.0, 2.0, 3.0], 2.0)
    assert math.isclose(sum(w), 1.0, abs_tol=1e-12)
    assert math.isclose(tf.q_rate(2.0, 1.0, 0.9), QRATE_NU2_Z1_Q09, rel_tol=1e-10)
    assert math.isclose(tf.q_rate(2.0, 1e-9, 0.5), 1.0 / 3.0, rel_tol=1e-6)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"{name}: ok")
    print("smoke test passed")
