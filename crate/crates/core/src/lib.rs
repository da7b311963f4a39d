//! Exact computations around the Hitchin-system mirror pair.
//!
//! * [`epoly`]: bivariate E-polynomials with big-integer coefficients.
//! * [`gamma`]: `Z_n^{2g}`, its characters, and discrete-torsion classes.
//! * [`orbifold`]: sector data and the (twisted) stringy E-polynomial.
//! * [`hitchin`]: dimension formulas and the rank-2/rank-3 sector generators.
//! * [`hklinear`]: flat hyperkähler models and special-Lagrangian checks.
//! * [`torus`]: polarized lattices, duality and `Pic^d` torsor labels.

#![allow(clippy::needless_range_loop)]

pub mod epoly;
pub mod error;
pub mod gamma;
pub mod hitchin;
pub mod hklinear;
pub mod linalg;
pub mod orbifold;
pub mod torus;

pub use epoly::{e_abelian_variety, EPolynomial};
pub use error::{EpolyError, GammaError, HitchinError, HkError, OrbifoldError, TorusError};
pub use gamma::{
    enumerate_elements, epsilon_exponent, induced_character, standard_rho, GammaCharacter,
    GammaElement, GammaGroup, TorsionClass,
};
pub use hitchin::{
    closed_form_rank2, generate_rank2_presentation, generate_rank3_presentation, hitchin_base_dim,
    moduli_dim, prym_dim, spectral_genus, CurveSetup, SpectralData,
};
pub use hklinear::{
    kahler_form, standard_model, verify_holomorphic_lagrangian, verify_special_lagrangian,
    HyperkahlerModel, LinearSubspace, Structure,
};
pub use orbifold::{fermionic_shift, stringy_e, twisted_stringy_e, OrbifoldPresentation, Sector};
pub use torus::{
    dualize, mirror_fiber_pair, pic_torsor, syz_dual_fiber, PolarizedLatticeTorus, Side,
    TorsorLabel,
};
