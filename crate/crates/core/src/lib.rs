//! Reversible DNA codes from skew cyclic codes over
//! R_{k,s} = F_{4^{2k}}[u_1, ..., u_s] / <u_i^2 - u_i>.
//!
//! The crate is layered bottom-up:
//!
//! - [`gf`]: the field F_{4^{2k}} and its automorphism `a -> a^{4^k}`.
//! - [`ring`]: R_{k,s} in CRT coordinates, idempotents, theta and the Gray map.
//! - [`skewpoly`]: R_{k,s}[x; theta] with right division.
//! - [`codes`]: skew cyclic codes, encoding, reversibility checks and divisor search.
//! - [`dna`]: the field-to-DNA codebook and string utilities.
//! - [`expr`]: the text syntax for ring elements and polynomials.

pub mod codes;
pub mod dna;
pub mod expr;
pub mod gf;
pub mod ring;
pub mod skewpoly;

pub use codes::{CodeError, Codeword, SkewCyclicCode, SymmetryClass};
pub use dna::{CodebookSource, DnaCodebook, DnaError, DnaString};
pub use expr::{parse_poly_expr, parse_ring_expr, ParseError};
pub use gf::{FieldContext, FieldElement, FieldError};
pub use ring::{RingContext, RingElement, RingError};
pub use skewpoly::{SkewError, SkewPoly, SkewPolyRing};
