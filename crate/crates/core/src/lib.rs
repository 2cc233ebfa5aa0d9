//! Discrete Sobolev orthogonal polynomials: exact construction, zero
//! localization checks and Laguerre outer relative asymptotics.

pub mod asymptotics;
pub mod error;
pub mod interval;
pub mod laguerre;
pub mod linalg;
pub mod ordering;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod sobolev;
pub mod sturm;
pub mod verify;

pub use error::{Error, Result};
pub use interval::{ExtInterval, ExtReal, Span};
pub use laguerre::LaguerreParam;
pub use poly::{DynPoly, Poly, PolyOp, QPoly, Value};
pub use rational::{parse_rational, Rational};
pub use asymptotics::{RatioReport, RatioRow};
pub use ordering::{DeltaSystem, VanishSpec};
pub use sobolev::{KernelEval, MassTerm, Measure, SobolevSpec};
pub use verify::ZeroReport;
