//! Exact distributions of permutation statistics read on flattened
//! permutations: the word obtained by writing a permutation in standard cycle
//! form and erasing the parentheses.
//!
//! - [`perm`]: permutations, cycle forms, flattening and statistic counts.
//! - [`algebra`]: exact polynomials in `q` and in `s` with `s^2 = 1 - q`,
//!   and truncated power series.
//! - [`classical`]: Eulerian, Chebyshev, Stirling and related tables.
//! - [`oracle`]: parallel brute-force enumeration of `S_n`.
//! - [`dist`]: recurrences, closed forms, generating series, averages and
//!   floating-point evaluators.
//! - [`ddescent`]: the d-descent triangle and its explicit formulas.
//! - [`bijection`]: insertion encodings and the descent transport map.
//! - [`verify`]: the cross-check suite; [`cli`]: the command-line front end.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod bijection;
pub mod classical;
pub mod cli;
pub mod ddescent;
pub mod dist;
pub mod oracle;
pub mod perm;
pub mod verify;
