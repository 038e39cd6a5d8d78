//! Elementary multiplicative number theory.
//!
//! Everything here works on machine integers. Moduli are factored by trial
//! division, which is plenty for the sizes a counting problem can reach
//! before its residue space becomes unmanageable anyway; the hard ceiling is
//! [`FACTORIZATION_LIMIT`].
//!
//! The one non-standard function is [`generalized_gcd`]: `(a, b)_s` is the
//! largest `l^s` dividing both `a` and `b`. For `s = 1` it is the ordinary gcd.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest integer [`factorize`] accepts. Trial division up to its square
/// root takes about a million steps.
pub const FACTORIZATION_LIMIT: u64 = 1_000_000_000_000;

/// Prime factorization of a positive integer.
///
/// Primes are strictly ascending, exponents are at least one, and the
/// factorization of `1` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs in ascending prime order.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Number of positive divisors, τ(n).
    pub fn divisor_count(&self) -> usize {
        self.factors.iter().map(|&(_, e)| e as usize + 1).product()
    }

    /// All positive divisors in ascending order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.divisor_count());
        out.push(1u64);
        for &(p, e) in &self.factors {
            let len = out.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Factor `n` by trial division.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::NotPositive { name: "n" });
    }
    if n > FACTORIZATION_LIMIT {
        return Err(Error::FactorizationLimit {
            value: n as u128,
            limit: FACTORIZATION_LIMIT,
        });
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut push = |rest: &mut u64, p: u64| {
        let mut e = 0;
        while *rest % p == 0 {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(&mut rest, 2);
    let mut p = 3;
    while p * p <= rest {
        push(&mut rest, p);
        p += 2;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { value: n, factors })
}

pub fn divisors(n: u64) -> Result<Vec<u64>> {
    Ok(factorize(n)?.divisors())
}

/// Möbius function μ(n).
pub fn mobius(n: u64) -> Result<i64> {
    let f = factorize(n)?;
    Ok(mobius_of(&f))
}

pub(crate) fn mobius_of(f: &Factorization) -> i64 {
    if f.is_squarefree() {
        if f.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        0
    }
}

/// Euler's totient φ(n).
pub fn euler_phi(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    Ok(f.factors
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product())
}

/// Jordan's totient `J_s(n) = n^s · Π_{p | n} (1 − p^{−s})`.
///
/// This is the number of `1 ≤ y ≤ n^s` with `(y, n^s)_s = 1`, i.e. the size
/// of the generalized-gcd class of `n/d` inside `[1, (n/d)^s]`.
pub fn jordan_totient(n: u64, s: u32) -> Result<u64> {
    if s == 0 {
        return Err(Error::NotPositive { name: "s" });
    }
    let f = factorize(n)?;
    jordan_totient_of(&f, s)
}

pub(crate) fn jordan_totient_of(f: &Factorization, s: u32) -> Result<u64> {
    let overflow = || Error::Overflow("Jordan totient");
    f.factors.iter().try_fold(1u64, |acc, &(p, e)| {
        let ps = p.checked_pow(s).ok_or_else(overflow)?;
        let lower = p.checked_pow((e - 1) * s).ok_or_else(overflow)?;
        acc.checked_mul(ps - 1)
            .and_then(|v| v.checked_mul(lower))
            .ok_or_else(overflow)
    })
}

/// `base^exp` as a `u128`, or `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u128> {
    (base as u128).checked_pow(exp)
}

/// Largest `l` with `l^s <= v`, by binary search on integers.
pub fn integer_root(v: u128, s: u32) -> u128 {
    assert!(s > 0, "root degree must be positive");
    if v < 2 || s == 1 {
        return v;
    }
    // 2^(128/s) bounds the root from above.
    let mut lo = 1u128;
    let mut hi = 1u128 << (128 / s).clamp(1, 127);
    hi = hi.min(v);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match mid.checked_pow(s) {
            Some(p) if p <= v => lo = mid,
            _ => hi = mid - 1,
        }
    }
    lo
}

/// True when `v` is `l^s` for some integer `l`.
pub fn is_perfect_power(v: u128, s: u32) -> bool {
    integer_root(v, s).checked_pow(s) == Some(v)
}

/// The value `(a, b)_s = l^s` together with its base `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneralizedGcd {
    base: u64,
    power: u32,
    value: u128,
}

impl GeneralizedGcd {
    /// The base `l`.
    pub fn base(&self) -> u64 {
        self.base
    }

    /// The exponent `s`.
    pub fn power(&self) -> u32 {
        self.power
    }

    /// The value `l^s`.
    pub fn value(&self) -> u128 {
        self.value
    }
}

/// Largest `l^s` dividing both `a` and `b`.
///
/// Signs are ignored. `(0, b)_s` is the largest `s`-th power dividing `b`;
/// `(0, 0)_s` is an error.
///
/// ```
/// use rcong::arith::generalized_gcd;
///
/// assert_eq!(generalized_gcd(12, 16, 2).unwrap().value(), 4);
/// assert_eq!(generalized_gcd(72, 36, 2).unwrap().base(), 6);
/// ```
pub fn generalized_gcd(a: i128, b: i128, s: u32) -> Result<GeneralizedGcd> {
    if s == 0 {
        return Err(Error::NotPositive { name: "s" });
    }
    let g = a.unsigned_abs().gcd(&b.unsigned_abs());
    if g == 0 {
        return Err(Error::BothZero);
    }
    if g > FACTORIZATION_LIMIT as u128 {
        return Err(Error::FactorizationLimit {
            value: g,
            limit: FACTORIZATION_LIMIT,
        });
    }
    let f = factorize(g as u64)?;
    let base: u64 = f
        .factors
        .iter()
        .map(|&(p, e)| p.pow(e / s))
        .product();
    Ok(GeneralizedGcd {
        base,
        power: s,
        value: (base as u128).pow(s),
    })
}

/// `(m, r^s)_s` when the factorization of `r` is already known.
///
/// Only the primes of `r` matter, so `m` is never factored and may be any
/// size. `m = 0` yields `r^s`.
pub fn generalized_gcd_with_power(m: i128, r: &Factorization, s: u32) -> Result<GeneralizedGcd> {
    if s == 0 {
        return Err(Error::NotPositive { name: "s" });
    }
    let mut rest = m.unsigned_abs();
    let mut base = 1u64;
    for &(p, e) in &r.factors {
        let mut v = 0u32;
        let pw = p as u128;
        // Stop once we already know the cap is reached.
        while v < e.saturating_mul(s) && rest != 0 && rest % pw == 0 {
            rest /= pw;
            v += 1;
        }
        if rest == 0 {
            v = e.saturating_mul(s);
        }
        base *= p.pow((v / s).min(e));
    }
    let value = checked_pow(base, s).ok_or(Error::Overflow("generalized gcd"))?;
    Ok(GeneralizedGcd {
        base,
        power: s,
        value,
    })
}
