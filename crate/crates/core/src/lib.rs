//! Palindromic periodicities in finite words.
//!
//! A palindromic periodicity is a factor whose letters are symmetric about
//! every point of an arithmetic lattice of centres. This crate recognises
//! them, builds them from palindromes and periods, runs the g-word
//! recursion behind the two-periodicity lemma, and computes the generic-word
//! period tables.

pub mod audit;
pub mod construct;
pub mod corpus;
pub mod error;
pub mod generic;
pub mod gword;
pub mod half;
pub mod inference;
pub mod palindrome;
pub mod parallel;
pub mod palperiod;
pub mod word;

pub use error::{Error, Result};
pub use half::HalfPos;
pub use word::{Letter, Span, Word};
