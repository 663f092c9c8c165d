//! Frobenius splitting numbers, F-signature estimates and their behaviour
//! under localization, for quotients of polynomial rings over `F_p` and
//! `F_p(t_1, ..., t_m)`.
//!
//! Everything is exact: coefficients are canonical field elements, lengths
//! are [`num_bigint::BigUint`] and normalized values are
//! [`num_rational::BigRational`].

pub mod artinian;
pub mod error;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod oracle;
pub mod poly;
pub mod probe;
pub mod splitting;

pub use artinian::{is_artinian, krull_dimension, length, standard_monomials, StaircaseBasis};
pub use error::{Error, Result};
pub use field::{Field, FieldDescriptor, PrimeField, RationalFunction, RationalFunctionField, TPoly};
pub use groebner::{buchberger, ideal_member, normal_form, IdealPresentation, ReducedGB};
pub use ideal::{bracket_power_of_maximal, colon_gb, colon_ideal, frobenius_power, ideal_sum, intersect, BracketPower};
pub use poly::{Monomial, MonomialOrder, Polynomial, Ring};
pub use probe::{
    check_kunz_constancy, check_localization_monotonicity, localize_at_coordinate_prime, s_e_at_prime,
    semicontinuity_scan, Assumptions, CoordinatePrime, PrimeChain, SemicontinuityReport,
};
pub use splitting::{
    f_signature_sequence, gorenstein_splitting_number, normalized_splitting_number, regularity_test, Config,
    SignatureEstimate, SplittingReport,
};

pub use num_bigint::BigUint;
pub use num_rational::BigRational;
