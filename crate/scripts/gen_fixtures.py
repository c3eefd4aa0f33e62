#!/usr/bin/env python3
"""One-shot generator for the frozen reference fixtures in
crates/thermofun/src/fixtures.rs.

Each value is an extended-precision (50 significant digits internally)
quadrature of the defining integral, printed to 17 significant digits.
Rerun with `python3 scripts/gen_fixtures.py > crates/thermofun/src/fixtures.rs`
only when a fixture is added; the checked-in file is the source of truth for
the test suite.

Requires mpmath.
"""

import mpmath as mp

mp.mp.dps = 50


def i1(z, nu):
    return mp.quad(lambda y: y ** (nu - 1) * mp.exp(-y - z / mp.sqrt(y)), [0, mp.inf])


def i2(z, d, nu):
    return mp.quad(lambda y: y ** (nu - 1) * mp.exp(-y - z / mp.sqrt(y)), [0, d])


def i3(z, t, nu, mu):
    return mp.quad(
        lambda y: y ** (nu - 1) * mp.exp(-(y + z * (y + t) ** (-mu))), [0, mp.inf]
    )


def i4(z, b, delta, nu):
    # exponent z*y^{-1/2}: the convention under which Eq-28-type series and
    # the b -> 0 reduction to I1 hold (see the adjudication test).
    return mp.quad(
        lambda y: y ** (nu - 1) * mp.exp(-y - b * y ** delta - z / mp.sqrt(y)),
        [0, mp.inf],
    )


def i4_plus(z, b, delta, nu):
    # exponent z*y^{+1/2} as printed in the depleted-case definition.
    return mp.quad(
        lambda y: y ** (nu - 1) * mp.exp(-y - b * y ** delta - z * mp.sqrt(y)),
        [0, mp.inf],
    )


def igen(nu, a, z, rho, d=mp.inf):
    return mp.quad(
        lambda y: y ** (nu - 1) * mp.exp(-a * y - z * y ** (-rho)), [0, d]
    )


def igen_neg(nu, a, z, eta):
    return mp.quad(lambda y: y ** (nu - 1) * mp.exp(-a * y - z * y ** eta), [0, mp.inf])


def kratzel(nu, rho, x):
    return mp.quad(lambda t: t ** (nu - 1) * mp.exp(-(t ** rho) - x / t), [0, mp.inf])


def qrate(nu, z, q):
    if q == 1:
        return i1(z, nu)
    ycut = 1 / (1 - q) if q < 1 else mp.inf
    return mp.quad(
        lambda y: y ** (nu - 1)
        * (1 + (1 - q) * y * (-1)) ** (1 / (1 - q))
        * mp.exp(-z / mp.sqrt(y)),
        [0, ycut],
    )


def emit(name, value, comment):
    print(f"/// {comment}")
    print(f"pub const {name}: f64 = {mp.nstr(value, 17)};")


print("//! Frozen reference values for the dual-path tests.")
print("//!")
print("//! Generated by scripts/gen_fixtures.py (extended-precision quadrature")
print("//! of the defining integrals); do not edit by hand.")
print()

emit("I1_Z1_NU2", i1(1, 2), "I1(z=1, nu=2)")
emit("I1_Z05_NU15", i1(mp.mpf("0.5"), mp.mpf("1.5")), "I1(z=0.5, nu=1.5)")
emit("I1_Z2_NU25", i1(2, mp.mpf("2.5")), "I1(z=2, nu=2.5)")
emit("I2_Z1_D2_NU2", i2(1, 2, 2), "I2(z=1, d=2, nu=2)")
emit("I2_Z2_D5_NU3", i2(2, 5, 3), "I2(z=2, d=5, nu=3)")
emit(
    "I3_Z1_T05_NU15_MU05",
    i3(1, mp.mpf("0.5"), mp.mpf("1.5"), mp.mpf("0.5")),
    "I3(z=1, t=0.5, nu=1.5, mu=1/2)",
)
emit(
    "I3_Z1_T05_NU2_MU05",
    i3(1, mp.mpf("0.5"), 2, mp.mpf("0.5")),
    "I3(z=1, t=0.5, nu=2, mu=1/2)",
)
emit(
    "I3_Z1_T05_NU17_MU_2PI",
    i3(1, mp.mpf("0.5"), mp.mpf("1.7"), 2 / mp.pi),
    "I3(z=1, t=0.5, nu=1.7, mu=2/pi); generic (non-half-integer) mu cell",
)
emit(
    "I4_Z2_B02_D1_NU2",
    i4(2, mp.mpf("0.2"), 1, 2),
    "I4(z=2, b=0.2, delta=1, nu=2), exponent z*y^{-1/2}",
)
emit(
    "I4PLUS_Z2_B02_D1_NU2",
    i4_plus(2, mp.mpf("0.2"), 1, 2),
    "same point with exponent z*y^{+1/2} as printed (adjudication witness)",
)
emit(
    "IGEN_NU15_A1_Z1_RHO2",
    igen(mp.mpf("1.5"), 1, 1, 2),
    "I^inf(nu-1=0.5, a=1, z=1, rho=2)",
)
emit(
    "IGEN_NU15_A1_Z1_RHO2_D1",
    igen(mp.mpf("1.5"), 1, 1, 2, 1),
    "I^1(nu-1=0.5, a=1, z=1, rho=2), finite cut-off d=1",
)
emit(
    "IGEN_NEG_NU15_A1_Z05_ETA2",
    igen_neg(mp.mpf("1.5"), 1, mp.mpf("0.5"), 2),
    "I^inf(nu-1=0.5, a=1, z=0.5, rho=-2) via the defining integral",
)
emit("KRATZEL_NU1_RHO1_X1", kratzel(1, 1, 1), "Z^1_1(1) = 2*K_1(2)")
emit("KRATZEL_NU15_RHO2_X1", kratzel(mp.mpf("1.5"), 2, 1), "Z^{1.5}_2(1)")
emit(
    "QRATE_NU2_Z1_Q09",
    qrate(2, 1, mp.mpf("0.9")),
    "q-rate integrand quadrature, nu=2, z=1, q=0.9 (cut-off support (0,10))",
)
emit(
    "QUAD_SQRT_EXP_D2",
    mp.quad(lambda y: mp.sqrt(y) * mp.exp(-y - 1 / mp.sqrt(y)), [0, 2]),
    "int_0^2 y^{1/2} exp(-y - y^{-1/2}) dy",
)
emit(
    "QUAD_EXP_Y_INV_Y",
    mp.quad(lambda y: mp.exp(-y - 1 / y), [0, mp.inf]),
    "int_0^inf exp(-y - 1/y) dy = Z^1_1(1)",
)
