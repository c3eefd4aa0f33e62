//! Evaluation of the closed-form thermonuclear reaction-rate integrals and
//! their Fox H- / Meijer G-function representations, with an independent
//! double-exponential quadrature oracle and a Tsallis (q-statistics) layer.
//!
//! The library is organised bottom-up:
//!
//! * [`special`]: complex log-gamma, Gauss multiplication, confluent
//!   hypergeometric series, incomplete gamma.
//! * [`quad`]: tanh-sinh / exp-sinh quadrature (the oracle).
//! * [`mellin`]: H- and G-function specs and the residue / contour
//!   evaluators.
//! * [`thermo`]: the astrophysical integrals I1..I4, the general integral,
//!   and the Kraetzel transform kernel, each cross-checked against the
//!   oracle.
//! * [`qstat`]: Tsallis entropy, q-deformed exponentials, escort
//!   distributions, and the q-generalised rate integrand.

pub mod error;
pub mod fixtures;
pub mod mellin;
pub mod qstat;
pub mod quad;
pub mod result;
pub mod special;
pub mod thermo;

pub mod acceptance;

pub use error::{EvalError, Result};
pub use result::{EvalResult, Method};
