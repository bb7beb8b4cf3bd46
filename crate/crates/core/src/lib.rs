//! Linear stability laboratory for two-moment finite-volume schemes for
//! 1D linear advection `u_t + c u_x = 0`.
//!
//! A *two-moment* scheme evolves the cell average `ubar_j` together with the
//! scaled cell-averaged derivative `v_j = h (u_x)_j`. Every fully discrete
//! scheme is encoded as a [`TwoMomentRule`]: four offset-indexed tables of
//! exact-rational polynomials in the CFL number `nu`,
//!
//! ```text
//! ubar'_j = sum_m a_m(nu) ubar_{j+m} + sum_m b_m(nu) v_{j+m}
//! v'_j    = sum_m c_m(nu) ubar_{j+m} + sum_m d_m(nu) v_{j+m}
//! ```
//!
//! on periodic grids. On top of that sit the 2x2 Fourier amplification
//! analysis (spectra, CFL limits), modified-equation extraction of
//! dispersion/dissipation coefficients, and a time-marching harness for
//! error and blow-up studies.

pub mod advection;
pub mod error;
pub mod field;
pub mod fourier;
pub mod modified_equation;
pub mod nu_poly;
pub mod rule;
pub mod schemes;
pub mod verification;

pub use advection::{init_field, march, InitialProfile, RunConfig, RunResult};
pub use error::CoreError;
pub use field::TwoMomentField;
pub use fourier::{AmplificationMatrix, CflResult, SpectrumSample};
pub use nu_poly::{rat, NuPolynomial, Rat};
pub use rule::{ConsistencyReport, TwoMomentRule};
pub use schemes::{build_rule, grp_step, SchemeId};
