//! Numerical characters, graded Betti numbers and Hilbert-Burch matrices of
//! zero-dimensional subschemes of the projective plane.
//!
//! The crate has two halves that check each other:
//!
//! * a combinatorial calculus on [`character::NumericalCharacter`] and
//!   [`betti::BettiSequence`] values: Hilbert-function conversions,
//!   connectedness, splitting, realizability and the smoothability
//!   classification of the associated arithmetically Cohen-Macaulay space
//!   curves;
//! * an exact-linear-algebra side that builds real ideals from the degree
//!   data ([`hilbert_burch`]) and measures their Hilbert functions and
//!   minimal resolutions from scratch ([`resolve`]), over a prime field or
//!   the rationals ([`field`]).
//!
//! ```
//! use planechar::character::NumericalCharacter;
//! use planechar::betti::{classify, minimal_betti};
//!
//! let chi = NumericalCharacter::new(vec![4, 2]).unwrap();
//! let betti = minimal_betti(&chi);
//! assert_eq!(betti.gens(), &[2, 2, 4]);
//! assert_eq!(betti.syzygies(), &[3, 5]);
//! assert!(!classify(&chi).smoothable);
//! ```

pub mod betti;
pub mod character;
pub mod field;
pub mod hilbert_burch;
pub mod linalg;
pub mod poly;
pub mod resolve;
pub mod rng;

pub use betti::BettiSequence;
pub use character::NumericalCharacter;
