//! Frozen reference values for the dual-path tests.
//!
//! Generated by scripts/gen_fixtures.py (extended-precision quadrature
//! of the defining integrals); do not edit by hand.

/// I1(z=1, nu=2)
pub const I1_Z1_NU2: f64 = 0.44317272727711943;
/// I1(z=0.5, nu=1.5)
pub const I1_Z05_NU15: f64 = 0.53076408826462736;
/// I1(z=2, nu=2.5)
pub const I1_Z2_NU25: f64 = 0.33850957462711613;
/// I2(z=1, d=2, nu=2)
pub const I2_Z1_D2_NU2: f64 = 0.21284638400515576;
/// I2(z=2, d=5, nu=3)
pub const I2_Z2_D5_NU3: f64 = 0.4663323459883429;
/// I3(z=1, t=0.5, nu=1.5, mu=1/2)
pub const I3_Z1_T05_NU15_MU05: f64 = 0.40848148616587522;
/// I3(z=1, t=0.5, nu=2, mu=1/2)
pub const I3_Z1_T05_NU2_MU05: f64 = 0.50224794363888041;
/// I3(z=1, t=0.5, nu=1.7, mu=2/pi); generic (non-half-integer) mu cell
pub const I3_Z1_T05_NU17_MU_2PI: f64 = 0.45924431098987801;
/// I4(z=2, b=0.2, delta=1, nu=2), exponent z*y^{-1/2}
pub const I4_Z2_B02_D1_NU2: f64 = 0.13067478067290943;
/// same point with exponent z*y^{+1/2} as printed (adjudication witness)
pub const I4PLUS_Z2_B02_D1_NU2: f64 = 0.086485140297078235;
/// I^inf(nu-1=0.5, a=1, z=1, rho=2)
pub const IGEN_NU15_A1_Z1_RHO2: f64 = 0.40353712489213391;
/// I^1(nu-1=0.5, a=1, z=1, rho=2), finite cut-off d=1
pub const IGEN_NU15_A1_Z1_RHO2_D1: f64 = 0.035153298581610197;
/// I^inf(nu-1=0.5, a=1, z=0.5, rho=-2) via the defining integral
pub const IGEN_NEG_NU15_A1_Z05_ETA2: f64 = 0.43043915959187718;
/// Z^1_1(1) = 2*K_1(2)
pub const KRATZEL_NU1_RHO1_X1: f64 = 0.27973176363304485;
/// Z^{1.5}_2(1)
pub const KRATZEL_NU15_RHO2_X1: f64 = 0.1450151726324244;
/// q-rate integrand quadrature, nu=2, z=1, q=0.9 (cut-off support (0,10))
pub const QRATE_NU2_Z1_Q09: f64 = 0.30715230983222787;
/// int_0^2 y^{1/2} exp(-y - y^{-1/2}) dy
pub const QUAD_SQRT_EXP_D2: f64 = 0.20730718015430472;
/// int_0^inf exp(-y - 1/y) dy = Z^1_1(1)
pub const QUAD_EXP_Y_INV_Y: f64 = 0.27973176363304485;
