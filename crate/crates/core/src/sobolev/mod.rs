//! Discrete Sobolev inner products and their monic orthogonal polynomials.

pub mod connection;
pub mod gram;
pub mod kernel;
pub mod quasi;
pub mod spec;

pub use connection::{connection_form, connection_solve, sobolev_poly_via_kernel, ConnectionForm, ConnectionTerm};
pub use gram::{gram_matrix, sobolev_inner, sobolev_poly};
pub use kernel::{cd_kernel, kernel_eval, kernel_poly, KernelEval};
pub use quasi::{modifier_poly, quasi_orthogonality_check};
pub use spec::{MassTerm, Measure, SobolevSpec};

use crate::error::Result;
use crate::poly::QPoly;

/// Exact S_n by the cheapest available route: the connection formula for
/// Laguerre measures with integer α, the Gram system otherwise.
pub fn construct(n: usize, spec: &SobolevSpec) -> Result<QPoly> {
    if spec.measure().laguerre_alpha().is_some() {
        sobolev_poly_via_kernel(n, spec)
    } else {
        sobolev_poly(n, spec)
    }
}
