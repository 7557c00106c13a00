//! Exact and numerical tools for mirror-symmetry desk computations:
//!
//! * [`novikov`] — truncated formal series with rational exponents and exact
//!   coefficients (the scalar field everything exact is built over);
//! * [`exact`] — small exact rational linear algebra shared by the modules;
//! * [`toric`] — fans, Calabi–Yau weights, nef polytope lattice data;
//! * [`tropical`] — regular subdivisions, tropical hypersurfaces, amoeba
//!   sampling, near-tropicality certificates;
//! * [`mirror`] — conic-bundle mirror equations, chart superpotentials,
//!   wall-crossing transforms and gluing consistency checks;
//! * [`fibration`] — floating-point sampling of fibers of the standard
//!   logarithmic/argument fibrations, Lagrangian residuals, twin
//!   intersections, group-action invariance;
//! * [`floer`] — critical points of potentials over the series field,
//!   Hessian/Clifford data, matrix-factorization hom ranks;
//! * [`svg`] — minimal SVG plotting for tropical curves and amoebas.
//!
//! Exact code is generic over the coefficient scalar (anything implementing
//! [`novikov::Coeff`]); numerical code is generic over the real scalar
//! (anything implementing [`fibration::Real`]). The concrete instantiations
//! used throughout the desk examples are aliased at the crate root.

pub mod exact;
pub mod fibration;
pub mod floer;
pub mod mirror;
pub mod novikov;
pub mod svg;
pub mod toric;
pub mod tropical;

/// Exact rational scalar used for exponents and default coefficients.
pub type Q = num_rational::BigRational;

/// Novikov series with rational coefficients (the default scalar).
pub type Nov = novikov::NovikovSeries<Q>;

/// Novikov series with Gaussian-rational coefficients.
pub type NovC = novikov::NovikovSeries<num_complex::Complex<Q>>;

/// Laurent polynomials over the rational Novikov series.
pub type LaurentNov = mirror::laurent::LaurentPoly<Q>;

/// Default real scalar for the numerical fibration routines.
pub type R = f64;
