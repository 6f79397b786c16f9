//! Degree-2 Siegel Fourier expansions, Hecke operators at good primes and
//! local L-factors.

pub mod forms;
pub mod hecke;
pub mod lfunc;

pub use forms::{reduce_form, reduced_forms, BinaryForm, FourierExpansionSiegel2, QExpansion};
pub use hecke::{eigenvalue_extract, hecke_cosets, hecke_tp, HeckeCosetRep};
pub use lfunc::{
    lambda_n, rankin_selberg_local, shift_rankin_selberg, standard_l_local, zeta_factor, LocalFactor, NonEssential,
    SatakePair,
};
