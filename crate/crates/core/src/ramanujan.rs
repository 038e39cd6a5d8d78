//! Ramanujan sums and Cohen's generalization.
//!
//! Cohen's sum is
//!
//! ```text
//! c_{r,s}(n) = Σ_{1 ≤ j ≤ r^s, (j, r^s)_s = 1} e(n·j / r^s)
//! ```
//!
//! and reduces to the classical Ramanujan sum `c_r(n)` at `s = 1`. It is
//! always an integer, given exactly by the Möbius-divisor expansion
//!
//! ```text
//! c_{r,s}(n) = Σ_{d | r, d^s | n} μ(r/d) · d^s
//! ```
//!
//! which is what [`cohen_ramanujan`] evaluates. [`cohen_ramanujan_direct`]
//! sums the complex exponentials instead and exists to check it.
//!
//! The value depends on `n` only through `(n, r^s)_s`, so it is even in `n`
//! and `r^s`-periodic. [`RamanujanCache`] keys its entries on that reduced
//! argument.

use std::collections::HashMap;
use std::sync::RwLock;

use num_complex::Complex64;
use num_integer::Integer;

use crate::arith::{self, checked_pow, factorize, generalized_gcd, Factorization};
use crate::error::{Error, Result};
use crate::expsum;

/// Default ceiling on the number of terms [`cohen_ramanujan_direct`] sums.
pub const DIRECT_BUDGET: u64 = 100_000;

/// Largest acceptable distance of a direct sum from the nearest integer, in
/// both the real and imaginary parts.
pub const DIRECT_TOLERANCE: f64 = 1e-6;

fn factor_modulus(r: u64, s: u32) -> Result<Factorization> {
    if r == 0 {
        return Err(Error::NotPositive { name: "r" });
    }
    if s == 0 {
        return Err(Error::NotPositive { name: "s" });
    }
    factorize(r)
}

/// Cohen's generalized Ramanujan sum `c_{r,s}(n)`, exactly.
///
/// ```
/// use rcong::ramanujan::cohen_ramanujan;
///
/// assert_eq!(cohen_ramanujan(4, 2, 16).unwrap(), 12);
/// assert_eq!(cohen_ramanujan(2, 2, 5).unwrap(), -1);
/// assert_eq!(cohen_ramanujan(4, 2, 4).unwrap(), -4);
/// ```
pub fn cohen_ramanujan(r: u64, s: u32, n: i128) -> Result<i128> {
    let f = factor_modulus(r, s)?;
    cohen_ramanujan_factored(&f, s, n.unsigned_abs())
}

/// Möbius-divisor expansion over a known factorization of `r`. `n` is the
/// magnitude of the argument; `0` is divisible by everything.
///
/// Only divisors `d` with `r/d` squarefree contribute, so the sum runs over
/// `2^ω(r)` terms: each prime of `r` keeps either its full exponent or one
/// less.
pub(crate) fn cohen_ramanujan_factored(f: &Factorization, s: u32, n: u128) -> Result<i128> {
    let primes = f.factors();
    let mut total: i128 = 0;
    for mask in 0u32..(1 << primes.len()) {
        let mut d = 1u64;
        for (i, &(p, e)) in primes.iter().enumerate() {
            let e = if mask & (1 << i) != 0 { e - 1 } else { e };
            d *= p.pow(e);
        }
        let ds = match checked_pow(d, s) {
            Some(v) if v <= i128::MAX as u128 => v,
            _ if n == 0 => return Err(Error::Overflow("Ramanujan sum term")),
            // d^s exceeds |n|, so it cannot divide it.
            _ => continue,
        };
        if n % ds != 0 {
            continue;
        }
        let term = ds as i128;
        total = if mask.count_ones() % 2 == 0 {
            total.checked_add(term)
        } else {
            total.checked_sub(term)
        }
        .ok_or(Error::Overflow("Ramanujan sum"))?;
    }
    Ok(total)
}

/// The classical Ramanujan sum `c_r(n)`.
///
/// Evaluated with von Sterneck's closed form `μ(r/g)·φ(r)/φ(r/g)` where
/// `g = gcd(r, n)`, which is independent of the divisor expansion used by
/// [`cohen_ramanujan`].
pub fn ramanujan_classic(r: u64, n: i128) -> Result<i128> {
    if r == 0 {
        return Err(Error::NotPositive { name: "r" });
    }
    let g = (r as u128).gcd(&n.unsigned_abs()) as u64;
    let q = r / g;
    let mu = arith::mobius(q)?;
    if mu == 0 {
        return Ok(0);
    }
    let phi_r = arith::euler_phi(r)?;
    let phi_q = arith::euler_phi(q)?;
    Ok(mu as i128 * (phi_r / phi_q) as i128)
}

/// Sum the defining exponentials of `c_{r,s}(n)` in floating point.
///
/// Membership `(j, r^s)_s = 1` is decided with [`generalized_gcd`] for every
/// `j`, so nothing here shares code with the divisor expansion.
pub fn cohen_ramanujan_direct_sum(r: u64, s: u32, n: i128, budget: u64) -> Result<Complex64> {
    if r == 0 {
        return Err(Error::NotPositive { name: "r" });
    }
    if s == 0 {
        return Err(Error::NotPositive { name: "s" });
    }
    let modulus = match checked_pow(r, s) {
        Some(m) if m <= budget as u128 => m,
        other => {
            return Err(Error::BudgetExceeded {
                what: "direct Ramanujan sum",
                required: other.unwrap_or(u128::MAX),
                budget: budget as u128,
            })
        }
    };
    let mut members = Vec::new();
    for j in 1..=modulus {
        if generalized_gcd(j as i128, modulus as i128, s)?.value() == 1 {
            members.push(j);
        }
    }
    Ok(expsum::character_sum(n, modulus, members))
}

/// [`cohen_ramanujan_direct_sum`] rounded to the nearest integer.
///
/// Fails with [`Error::Inconsistent`] if the sum is not within
/// [`DIRECT_TOLERANCE`] of an integer.
pub fn cohen_ramanujan_direct(r: u64, s: u32, n: i128, budget: u64) -> Result<i128> {
    let z = cohen_ramanujan_direct_sum(r, s, n, budget)?;
    let nearest = z.re.round();
    if z.im.abs() >= DIRECT_TOLERANCE || (z.re - nearest).abs() >= DIRECT_TOLERANCE {
        return Err(Error::Inconsistent(format!(
            "direct sum c_{{{r},{s}}}({n}) = {z} is not an integer"
        )));
    }
    Ok(nearest as i128)
}

/// Cache key: the sum `c_{r,s}(n)` depends on `n` only through
/// `reduced_arg = (n, r^s)_s` (which is `r^s` for `n ≡ 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RamanujanKey {
    pub r: u64,
    pub s: u32,
    pub reduced_arg: u128,
}

/// Memo table for [`cohen_ramanujan`], shareable across threads.
///
/// Concurrent misses on the same key may compute the value twice; both
/// computations store the same value.
#[derive(Debug, Default)]
pub struct RamanujanCache {
    values: RwLock<HashMap<RamanujanKey, i128>>,
    factorizations: RwLock<HashMap<u64, Factorization>>,
}

impl RamanujanCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn factorization(&self, r: u64, s: u32) -> Result<Factorization> {
        if let Some(f) = self.factorizations.read().unwrap().get(&r) {
            return Ok(f.clone());
        }
        let f = factor_modulus(r, s)?;
        self.factorizations.write().unwrap().insert(r, f.clone());
        Ok(f)
    }

    pub fn key(&self, r: u64, s: u32, n: i128) -> Result<RamanujanKey> {
        let f = self.factorization(r, s)?;
        let reduced = arith::generalized_gcd_with_power(n, &f, s)?;
        Ok(RamanujanKey {
            r,
            s,
            reduced_arg: reduced.value(),
        })
    }

    /// `c_{r,s}(n)`, computed at most once per generalized-gcd class of `n`.
    pub fn get(&self, r: u64, s: u32, n: i128) -> Result<i128> {
        let key = self.key(r, s, n)?;
        if let Some(&v) = self.values.read().unwrap().get(&key) {
            return Ok(v);
        }
        let f = self.factorization(r, s)?;
        let v = cohen_ramanujan_factored(&f, s, key.reduced_arg)?;
        self.values.write().unwrap().entry(key).or_insert(v);
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.values.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
