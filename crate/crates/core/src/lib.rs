//! Exact symbolic computations over Q(ζ₃) for Galois points on smooth
//! quartic surfaces, the Eisenstein K3 structure they induce, and binary
//! quadratic forms describing transcendental lattices.

pub mod error;
pub mod galois;
pub mod groebner;
pub mod latform;
pub mod linalg;
pub mod modp;
pub mod parse;
pub mod poly;
pub mod projlin;
pub mod scalar;
pub mod surface;
pub mod univariate;

pub use error::{Error, Result};
pub use galois::{catalog_report, sigma, verify_galois, CatalogSamples, GaloisVerdict};
pub use groebner::{buchberger, projective_empty, DEFAULT_PAIR_BUDGET};
pub use latform::{BQForm, IntMat};
pub use linalg::Matrix;
pub use parse::parse_poly;
pub use poly::{Mono, Poly};
pub use projlin::{ProjMap, ProjPoint, DEFAULT_ORDER_BOUND};
pub use scalar::{EisNum, Rat};
pub use surface::{eisenstein_type, fixed_locus, EisensteinType, FixedLocus, QuarticSurface, Smoothness};
pub use univariate::{uni_roots, UniPoly};
