//! Numerics for charge renormalization in the reduced BDF polarized vacuum.
//!
//! The library evaluates the Uehling and cutoff response multipliers, maps
//! bare and physical couplings through Z₃ = 1/(1 + αB_Λ), expands the
//! physical charge density order by order in the physical coupling, solves
//! the linearized self-consistent equation on a radial Fourier grid,
//! evaluates the Uehling potential in position space by two independent
//! routes, and estimates the first- and third-order vacuum-polarization
//! loop functionals by importance-sampled Monte Carlo.

pub mod quad;
pub mod special;

pub use special::{CutoffParams, JnConstant, PhiLandscape, SpecialError};
