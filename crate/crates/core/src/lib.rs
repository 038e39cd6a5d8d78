//! Exact counting of restricted linear congruences.
//!
//! The central question: how many `(x_1, …, x_k)` with `1 ≤ x_i ≤ n^s` satisfy
//! `x_1 + … + x_k ≡ b (mod n^s)` when each `x_i` must have a prescribed
//! generalized gcd `(x_i, n^s)_s = t_i^s` with the modulus?
//! [`congruence::count_restricted`] answers it in closed form using Cohen's
//! generalized Ramanujan sums, and the [`oracle`] module answers it again by
//! enumeration and by cyclic convolution so the two can be compared.
//!
//! ```
//! use rcong::congruence::{count_restricted, CongruenceInstance};
//! use rcong::oracle::{brute_force_count, convolution_count, Budgets};
//!
//! let inst = CongruenceInstance::new(4, 2, 5, vec![1, 2])?;
//! let budgets = Budgets::default();
//! let formula = count_restricted(&inst)?;
//! assert_eq!(formula, 3);
//! assert_eq!(brute_force_count(&inst, &budgets)?, formula);
//! assert_eq!(convolution_count(&inst, &budgets)?, formula);
//! # Ok::<(), rcong::Error>(())
//! ```
//!
//! Modules:
//!
//! - [`arith`]: factorization, divisors, μ, φ, Jordan's totient, `(a, b)_s`.
//! - [`ramanujan`]: `c_r(n)` and `c_{r,s}(n)`, exact and direct, plus a cache.
//! - [`congruence`]: the counting formula and classical unit-restricted counts.
//! - [`oracle`]: brute force, convolution, character sums, solution listing.

pub mod arith;
pub mod congruence;
mod error;
mod expsum;
pub mod oracle;
pub mod ramanujan;

pub use error::{Error, ErrorKind, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/generalized-gcd.md")]
    mod generalized_gcd {}
    #[doc = include_str!("../../../book/src/ramanujan-sums.md")]
    mod ramanujan_sums {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
