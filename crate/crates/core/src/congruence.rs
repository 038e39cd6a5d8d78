//! Counting solutions of restricted linear congruences.
//!
//! An instance asks for the number of `(x_1, …, x_k)` with `1 ≤ x_i ≤ n^s`,
//!
//! ```text
//! x_1 + … + x_k ≡ b (mod n^s)    and    (x_i, n^s)_s = t_i^s,
//! ```
//!
//! where every `t_i` divides `n`. Grouping the unknowns by their restriction
//! gives a multiplicity `g_j` for each divisor `d_j` of `n`, and the count is
//!
//! ```text
//! (1 / n^s) · Σ_{d | n} c_{d,s}(b) · Π_j c_{n/d_j, s}(n^s / d^s)^{g_j}
//! ```
//!
//! with `c_{r,s}` Cohen's Ramanujan sum. [`count_restricted`] evaluates this
//! in arbitrary precision and refuses to return if the sum is not divisible
//! by `n^s`.
//!
//! The modulus is `n^s` throughout. At `s = 1` this is the ordinary
//! gcd-restricted problem, and the same function covers the unit-restricted
//! case checked by [`count_units_rademacher`] and [`count_units_nicol`].

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::arith::{self, factorize, generalized_gcd, Factorization};
use crate::error::{Error, Result};
use crate::ramanujan::{ramanujan_classic, RamanujanCache};

/// Default ceiling on `n^s` for [`class_members`].
pub const CLASS_ENUMERATION_BUDGET: u64 = 1_000_000;

/// A nonnegative, arbitrary-precision number of solutions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SolutionCount(BigUint);

impl SolutionCount {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl From<BigUint> for SolutionCount {
    fn from(v: BigUint) -> Self {
        SolutionCount(v)
    }
}

impl From<u64> for SolutionCount {
    fn from(v: u64) -> Self {
        SolutionCount(BigUint::from(v))
    }
}

impl PartialEq<u64> for SolutionCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for SolutionCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Divisors of `n` in ascending order paired with how many unknowns are
/// restricted to each one's class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassProfile {
    divisors: Vec<u64>,
    multiplicities: Vec<u64>,
}

impl ClassProfile {
    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    /// Number of unknowns, `Σ g_j`.
    pub fn k(&self) -> u64 {
        self.multiplicities.iter().sum()
    }

    /// `(d_j, g_j)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.divisors.iter().copied().zip(self.multiplicities.iter().copied())
    }

    /// The restriction list in ascending order, each `d_j` repeated `g_j` times.
    pub fn restrictions(&self) -> Vec<u64> {
        self.iter()
            .flat_map(|(d, g)| std::iter::repeat(d).take(g as usize))
            .collect()
    }
}

/// Count how many restrictions fall on each divisor of `n`.
///
/// Fails on the first `t_i` that does not divide `n`, reporting its index.
pub fn class_profile(n: u64, restrictions: &[u64]) -> Result<ClassProfile> {
    let divisors = arith::divisors(n)?;
    let mut multiplicities = vec![0u64; divisors.len()];
    for (index, &t) in restrictions.iter().enumerate() {
        match divisors.binary_search(&t) {
            Ok(j) => multiplicities[j] += 1,
            Err(_) => {
                return Err(Error::RestrictionNotDivisor { index, value: t, n });
            }
        }
    }
    Ok(ClassProfile {
        divisors,
        multiplicities,
    })
}

/// One restricted congruence problem.
///
/// `b` is stored reduced into `[0, n^s)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CongruenceInstance {
    n: u64,
    s: u32,
    modulus: u64,
    b: u64,
    restrictions: Vec<u64>,
}

impl CongruenceInstance {
    /// Validate and build an instance. `n^s` must fit in 64 bits.
    pub fn new(n: u64, s: u32, b: i128, restrictions: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotPositive { name: "n" });
        }
        if s == 0 {
            return Err(Error::NotPositive { name: "s" });
        }
        class_profile(n, &restrictions)?;
        let modulus = n.checked_pow(s).ok_or(Error::Overflow("modulus n^s"))?;
        let b = b.rem_euclid(modulus as i128) as u64;
        Ok(CongruenceInstance {
            n,
            s,
            modulus,
            b,
            restrictions,
        })
    }

    /// Build an instance from multiplicities aligned with the ascending
    /// divisors of `n`.
    pub fn from_multiplicities(n: u64, s: u32, b: i128, multiplicities: &[u64]) -> Result<Self> {
        let divisors = arith::divisors(n)?;
        if multiplicities.len() != divisors.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} multiplicities (one per divisor of {n}), got {}",
                divisors.len(),
                multiplicities.len()
            )));
        }
        let profile = ClassProfile {
            divisors,
            multiplicities: multiplicities.to_vec(),
        };
        Self::new(n, s, b, profile.restrictions())
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// `n^s`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The target residue in `[0, n^s)`.
    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn restrictions(&self) -> &[u64] {
        &self.restrictions
    }

    pub fn k(&self) -> usize {
        self.restrictions.len()
    }

    pub fn profile(&self) -> ClassProfile {
        class_profile(self.n, &self.restrictions).expect("validated on construction")
    }

    /// The same problem with a different target residue.
    pub fn with_b(&self, b: i128) -> Self {
        CongruenceInstance {
            b: b.rem_euclid(self.modulus as i128) as u64,
            ..self.clone()
        }
    }
}

impl fmt::Display for CongruenceInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} s={} b={} t={:?}",
            self.n, self.s, self.b, self.restrictions
        )
    }
}

/// Elements of `[1, n^s]` whose generalized gcd with `n^s` is `d^s`.
///
/// Found by scanning the whole range, so `n^s` must not exceed `budget`.
pub fn class_members(n: u64, s: u32, d: u64, budget: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::NotPositive { name: "n" });
    }
    if s == 0 {
        return Err(Error::NotPositive { name: "s" });
    }
    if d == 0 || n % d != 0 {
        return Err(Error::NotDivisor { d, n });
    }
    let modulus = match n.checked_pow(s) {
        Some(m) if m <= budget => m,
        other => {
            return Err(Error::BudgetExceeded {
                what: "class enumeration",
                required: other.map_or(u128::MAX, u128::from),
                budget: budget as u128,
            })
        }
    };
    let target = (d as u128).pow(s);
    let mut out = Vec::new();
    for x in 1..=modulus {
        if generalized_gcd(x as i128, modulus as i128, s)?.value() == target {
            out.push(x);
        }
    }
    Ok(out)
}

/// Size of the class of `d`, `J_s(n/d)`, without enumerating it.
pub fn class_size(n: u64, s: u32, d: u64) -> Result<u64> {
    if d == 0 || n % d != 0 {
        return Err(Error::NotDivisor { d, n });
    }
    arith::jordan_totient(n / d, s)
}

/// One `d | n` summand of the counting formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaTerm {
    pub d: u64,
    /// `c_{d,s}(b)`.
    pub outer: i128,
    /// `c_{n/d_j, s}(n^s / d^s)` for each divisor `d_j`, ascending.
    pub inner: Vec<i128>,
    /// `outer · Π_j inner_j^{g_j}`.
    pub product: BigInt,
}

/// The counting formula before the final division, kept for inspection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaEvaluation {
    pub modulus: u64,
    pub terms: Vec<FormulaTerm>,
    /// `Σ_d product_d`; equals `n^s` times the count.
    pub sum: BigInt,
}

impl FormulaEvaluation {
    pub fn is_divisible(&self) -> bool {
        self.sum.is_multiple_of(&BigInt::from(self.modulus))
    }

    /// Divide by `n^s`, failing if the division is inexact or negative.
    pub fn count(&self) -> Result<SolutionCount> {
        let (q, rem) = self.sum.div_rem(&BigInt::from(self.modulus));
        if !rem.is_zero() {
            return Err(Error::Inconsistent(format!(
                "formula sum {} is not divisible by n^s = {}",
                self.sum, self.modulus
            )));
        }
        match q.sign() {
            Sign::Minus => Err(Error::Inconsistent(format!("negative count {q}"))),
            _ => Ok(SolutionCount(q.magnitude().clone())),
        }
    }
}

/// Evaluate every term of the counting formula, sharing `cache` for the
/// Ramanujan sums.
pub fn evaluate_formula(
    instance: &CongruenceInstance,
    cache: &RamanujanCache,
) -> Result<FormulaEvaluation> {
    let (n, s) = (instance.n, instance.s);
    let profile = instance.profile();
    let mut terms = Vec::with_capacity(profile.divisors().len());
    let mut sum = BigInt::zero();
    for &d in profile.divisors() {
        let outer = cache.get(d, s, instance.b as i128)?;
        let arg = (instance.modulus / d.pow(s)) as i128;
        let mut product = BigInt::from(outer);
        let mut inner = Vec::with_capacity(profile.divisors().len());
        for (dj, g) in profile.iter() {
            let c = cache.get(n / dj, s, arg)?;
            inner.push(c);
            if g > 0 && !product.is_zero() {
                product *= Pow::pow(BigInt::from(c), g);
            }
        }
        sum += &product;
        terms.push(FormulaTerm {
            d,
            outer,
            inner,
            product,
        });
    }
    Ok(FormulaEvaluation {
        modulus: instance.modulus,
        terms,
        sum,
    })
}

/// `Π_j |C_j|^{g_j}`: the number of tuples satisfying the restrictions alone.
pub fn restricted_tuple_count(instance: &CongruenceInstance) -> Result<BigUint> {
    let mut total = BigUint::one();
    for (d, g) in instance.profile().iter() {
        if g > 0 {
            total *= Pow::pow(BigUint::from(class_size(instance.n, instance.s, d)?), g);
        }
    }
    Ok(total)
}

/// Number of solutions, by the closed-form Ramanujan-sum formula.
///
/// ```
/// use rcong::congruence::{count_restricted, CongruenceInstance};
///
/// // x1 + x2 ≡ 5 (mod 16), (x1, 16)_2 = 1, (x2, 16)_2 = 4
/// let inst = CongruenceInstance::new(4, 2, 5, vec![1, 2]).unwrap();
/// assert_eq!(count_restricted(&inst).unwrap(), 3);
/// ```
pub fn count_restricted(instance: &CongruenceInstance) -> Result<SolutionCount> {
    count_restricted_with(instance, &RamanujanCache::new())
}

/// [`count_restricted`] with a caller-supplied cache.
pub fn count_restricted_with(
    instance: &CongruenceInstance,
    cache: &RamanujanCache,
) -> Result<SolutionCount> {
    let count = evaluate_formula(instance, cache)?.count()?;
    let bound = restricted_tuple_count(instance)?;
    if count.0 > bound {
        return Err(Error::Inconsistent(format!(
            "count {count} exceeds the {bound} restricted tuples of {instance}"
        )));
    }
    Ok(count)
}

/// Solutions in `(Z/nZ)^k` of `a_1 x_1 + … + a_k x_k ≡ b (mod n)` with no
/// restrictions: `l · n^{k-1}` if `l = gcd(a_1, …, a_k, n)` divides `b`,
/// else zero.
pub fn count_unrestricted_lehmer(coefficients: &[i128], b: i128, n: u64) -> Result<SolutionCount> {
    if n == 0 {
        return Err(Error::NotPositive { name: "n" });
    }
    if coefficients.is_empty() {
        return Err(Error::InvalidArgument("at least one coefficient is required".into()));
    }
    let l = coefficients
        .iter()
        .fold(n as u128, |acc, a| acc.gcd(&a.unsigned_abs()));
    if b.unsigned_abs() % l != 0 {
        return Ok(SolutionCount::default());
    }
    let k = coefficients.len() as u32;
    Ok(SolutionCount(BigUint::from(l) * Pow::pow(BigUint::from(n), k - 1)))
}

fn check_units_args(n: u64, k: u32) -> Result<Factorization> {
    if k == 0 {
        return Err(Error::NotPositive { name: "k" });
    }
    factorize(n)
}

/// Solutions of `x_1 + … + x_k ≡ b (mod n)` with every `x_i` a unit, by the
/// product formula
///
/// ```text
/// φ(n)^k / n · Π_{p | n, p | b} (1 − (−1)^{k−1} / (p−1)^{k−1})
///            · Π_{p | n, p ∤ b} (1 − (−1)^k / (p−1)^k)
/// ```
///
/// evaluated over the rationals.
pub fn count_units_rademacher(n: u64, k: u32, b: i128) -> Result<SolutionCount> {
    let f = check_units_args(n, k)?;
    let phi = BigInt::from(arith::euler_phi(n)?);
    let mut value = BigRational::new(Pow::pow(phi, k), BigInt::from(n));
    for p in f.primes() {
        let e = if b.unsigned_abs() % p as u128 == 0 { k - 1 } else { k };
        let sign = if e % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let denom = Pow::pow(BigInt::from(p - 1), e);
        value *= BigRational::one() - BigRational::new(sign, denom);
    }
    if !value.is_integer() || value.is_negative() {
        return Err(Error::Inconsistent(format!(
            "unit-count product formula gave {value} for n={n} k={k} b={b}"
        )));
    }
    Ok(SolutionCount(value.to_integer().magnitude().clone()))
}

/// The same count as [`count_units_rademacher`] via classical Ramanujan
/// sums: `(1/n) Σ_{d | n} c_d(b) · c_n(n/d)^k`.
pub fn count_units_nicol(n: u64, k: u32, b: i128) -> Result<SolutionCount> {
    let f = check_units_args(n, k)?;
    let mut sum = BigInt::zero();
    for d in f.divisors() {
        let outer = ramanujan_classic(d, b)?;
        if outer == 0 {
            continue;
        }
        let inner = ramanujan_classic(n, (n / d) as i128)?;
        sum += BigInt::from(outer) * Pow::pow(BigInt::from(inner), k);
    }
    let (q, rem) = sum.div_rem(&BigInt::from(n));
    if !rem.is_zero() || q.is_negative() {
        return Err(Error::Inconsistent(format!(
            "Ramanujan-sum unit count {sum} / {n} is not a nonnegative integer"
        )));
    }
    Ok(SolutionCount(q.magnitude().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ramanujan::cohen_ramanujan;

    /// Enumerate all tuples directly; independent of the oracle module.
    fn naive_count(n: u64, s: u32, b: i128, t: &[u64]) -> u64 {
        let m = n.pow(s);
        let classes: Vec<Vec<u64>> = t
            .iter()
            .map(|&d| {
                (1..=m)
                    .filter(|&x| generalized_gcd(x as i128, m as i128, s).unwrap().value() == (d as u128).pow(s))
                    .collect()
            })
            .collect();
        let target = b.rem_euclid(m as i128) as u64;
        fn go(classes: &[Vec<u64>], acc: u64, m: u64, target: u64) -> u64 {
            match classes.split_first() {
                None => (acc % m == target) as u64,
                Some((first, rest)) => first.iter().map(|&x| go(rest, acc + x, m, target)).sum(),
            }
        }
        go(&classes, 0, m, target)
    }

    #[test]
    fn profile_examples() {
        let p = class_profile(4, &[1, 2]).unwrap();
        assert_eq!(p.divisors(), &[1, 2, 4]);
        assert_eq!(p.multiplicities(), &[1, 1, 0]);
        assert_eq!(class_profile(4, &[]).unwrap().multiplicities(), &[0, 0, 0]);
        let p = class_profile(6, &[2, 2, 3]).unwrap();
        assert_eq!(p.divisors(), &[1, 2, 3, 6]);
        assert_eq!(p.multiplicities(), &[0, 2, 1, 0]);
        assert_eq!(p.k(), 3);
        assert_eq!(p.restrictions(), vec![2, 2, 3]);
        assert_eq!(class_profile(6, &[3, 2, 2]).unwrap(), p);
    }

    #[test]
    fn profile_names_bad_restriction() {
        let err = class_profile(6, &[1, 2, 4, 5]).unwrap_err();
        assert_eq!(err, Error::RestrictionNotDivisor { index: 2, value: 4, n: 6 });
        assert!(err.to_string().contains("t[2] = 4"));
        assert!(CongruenceInstance::new(6, 1, 0, vec![0]).is_err());
    }

    #[test]
    fn instance_validation() {
        assert!(CongruenceInstance::new(0, 1, 0, vec![]).is_err());
        assert!(CongruenceInstance::new(4, 0, 0, vec![]).is_err());
        assert_eq!(
            CongruenceInstance::new(1 << 20, 4, 0, vec![]),
            Err(Error::Overflow("modulus n^s"))
        );
        let inst = CongruenceInstance::new(4, 2, -11, vec![1]).unwrap();
        assert_eq!(inst.b(), 5);
        assert_eq!(inst.modulus(), 16);
        assert_eq!(inst.with_b(37).b(), 5);
        let g = CongruenceInstance::from_multiplicities(6, 1, 0, &[0, 2, 1, 0]).unwrap();
        assert_eq!(g.restrictions(), &[2, 2, 3]);
        assert!(CongruenceInstance::from_multiplicities(6, 1, 0, &[1, 1]).is_err());
    }

    #[test]
    fn class_members_examples() {
        assert_eq!(
            class_members(4, 2, 1, CLASS_ENUMERATION_BUDGET).unwrap(),
            vec![1, 2, 3, 5, 6, 7, 9, 10, 11, 13, 14, 15]
        );
        assert_eq!(class_members(4, 2, 2, CLASS_ENUMERATION_BUDGET).unwrap(), vec![4, 8, 12]);
        assert_eq!(class_members(4, 2, 4, CLASS_ENUMERATION_BUDGET).unwrap(), vec![16]);
        for n in 1..=10u64 {
            for s in 1..=3u32 {
                assert_eq!(class_members(n, s, n, CLASS_ENUMERATION_BUDGET).unwrap(), vec![n.pow(s)]);
            }
        }
        assert_eq!(class_members(4, 2, 3, 100), Err(Error::NotDivisor { d: 3, n: 4 }));
        assert!(matches!(class_members(100, 4, 1, 1000), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn class_sizes_partition_modulus() {
        for n in 1..=12u64 {
            for s in 1..=2u32 {
                let mut total = 0;
                for d in arith::divisors(n).unwrap() {
                    let members = class_members(n, s, d, CLASS_ENUMERATION_BUDGET).unwrap();
                    assert_eq!(members.len() as u64, class_size(n, s, d).unwrap());
                    total += members.len() as u64;
                }
                assert_eq!(total, n.pow(s));
            }
        }
    }

    #[test]
    fn worked_example_trace() {
        let inst = CongruenceInstance::new(4, 2, 5, vec![1, 2]).unwrap();
        let eval = evaluate_formula(&inst, &RamanujanCache::new()).unwrap();
        assert_eq!(eval.sum, BigInt::from(48));
        let outer: Vec<i128> = eval.terms.iter().map(|t| t.outer).collect();
        assert_eq!(outer, vec![1, -1, 0]);
        // Inner values per d, listed for d_j = 1, 2, 4 (i.e. c_{4,2}, c_{2,2}, c_{1,2}).
        assert_eq!(eval.terms[0].inner, vec![12, 3, 1]);
        assert_eq!(eval.terms[1].inner, vec![-4, 3, 1]);
        assert_eq!(eval.terms[2].inner, vec![0, -1, 1]);
        let products: Vec<BigInt> = eval.terms.iter().map(|t| t.product.clone()).collect();
        assert_eq!(products, vec![BigInt::from(36), BigInt::from(12), BigInt::from(0)]);
        assert_eq!(eval.count().unwrap(), 3);
    }

    #[test]
    fn count_examples() {
        let count = |n, s, b, t: Vec<u64>| count_restricted(&CongruenceInstance::new(n, s, b, t).unwrap()).unwrap();
        assert_eq!(count(4, 2, 5, vec![1, 2]), 3);
        for s in 1..=4 {
            for b in -5..5 {
                assert_eq!(count(1, s, b, vec![1, 1, 1]), 1);
            }
        }
        assert_eq!(count(4, 2, 5, vec![]), 0);
        assert_eq!(count(4, 2, 16, vec![]), 1);
        assert_eq!(count(4, 2, 0, vec![]), 1);
        assert_eq!(count(3, 1, 0, vec![1, 1]), 2);
        assert_eq!(count(4, 2, 5, vec![2, 2]), 0);
    }

    #[test]
    fn empty_restrictions_detect_divisibility() {
        for n in 1..=12u64 {
            for s in 1..=2u32 {
                let m = n.pow(s) as i128;
                for b in -m..=2 * m {
                    let inst = CongruenceInstance::new(n, s, b, vec![]).unwrap();
                    let expected = (b.rem_euclid(m) == 0) as u64;
                    assert_eq!(count_restricted(&inst).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn formula_matches_naive_enumeration() {
        for n in 1..=6u64 {
            let divs = arith::divisors(n).unwrap();
            for s in 1..=2u32 {
                let m = n.pow(s) as i128;
                for &t1 in &divs {
                    for &t2 in &divs {
                        for b in 0..m {
                            let t = vec![t1, t2];
                            let inst = CongruenceInstance::new(n, s, b, t.clone()).unwrap();
                            assert_eq!(
                                count_restricted(&inst).unwrap(),
                                naive_count(n, s, b, &t),
                                "{inst}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn count_depends_only_on_generalized_gcd_of_b() {
        for n in 1..=8u64 {
            for s in 1..=2u32 {
                let m = n.pow(s) as i128;
                for b in 0..m {
                    let reduced = generalized_gcd(b, m, s).unwrap().value() as i128;
                    let inst = CongruenceInstance::new(n, s, b, vec![1, n, 1]).unwrap();
                    assert_eq!(
                        count_restricted(&inst).unwrap(),
                        count_restricted(&inst.with_b(reduced)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn large_instances_stay_exact() {
        // Counts near 2^100: twelve odd unknowns mod 2^10.
        let inst = CongruenceInstance::new(1024, 1, 7, vec![1; 12]).unwrap();
        let eval = evaluate_formula(&inst, &RamanujanCache::new()).unwrap();
        assert!(eval.is_divisible());
        let c = eval.count().unwrap();
        // An even number of odd terms never sums to an odd target.
        assert_eq!(c, 0);
        let c = count_restricted(&inst.with_b(2)).unwrap();
        // Units are equidistributed over even targets: 512^12 / 512.
        assert_eq!(c.into_inner(), Pow::pow(BigUint::from(512u32), 11u32));
    }

    #[test]
    fn lehmer_examples() {
        assert_eq!(count_unrestricted_lehmer(&[1, 1], 0, 2).unwrap(), 2);
        assert_eq!(count_unrestricted_lehmer(&[2], 1, 4).unwrap(), 0);
        assert_eq!(count_unrestricted_lehmer(&[2, 4], 2, 6).unwrap(), 12);
        assert!(count_unrestricted_lehmer(&[], 0, 6).is_err());
        assert!(count_unrestricted_lehmer(&[1], 0, 0).is_err());
        // Full enumeration on small moduli.
        for n in 1..=7u64 {
            for a1 in -3..=6i128 {
                for a2 in 0..=6i128 {
                    for b in 0..n as i128 {
                        let brute = (0..n as i128)
                            .flat_map(|x| (0..n as i128).map(move |y| (x, y)))
                            .filter(|(x, y)| (a1 * x + a2 * y - b).rem_euclid(n as i128) == 0)
                            .count() as u64;
                        assert_eq!(count_unrestricted_lehmer(&[a1, a2], b, n).unwrap(), brute);
                    }
                }
            }
        }
    }

    #[test]
    fn unit_count_examples() {
        assert_eq!(count_units_rademacher(1, 3, 0).unwrap(), 1);
        assert_eq!(count_units_rademacher(4, 2, 0).unwrap(), 2);
        assert_eq!(count_units_rademacher(5, 2, 1).unwrap(), 3);
        assert_eq!(count_units_nicol(4, 2, 0).unwrap(), 2);
        assert_eq!(count_units_nicol(1, 3, 0).unwrap(), 1);
        let inst = CongruenceInstance::new(6, 1, 2, vec![1, 1, 1]).unwrap();
        assert_eq!(count_units_nicol(6, 3, 2).unwrap(), count_restricted(&inst).unwrap());
        assert!(count_units_nicol(6, 0, 2).is_err());
        assert!(count_units_rademacher(0, 2, 2).is_err());
    }

    #[test]
    fn unit_formulas_agree() {
        for n in 1..=30u64 {
            for k in 1..=6u32 {
                for b in 0..n as i128 {
                    assert_eq!(
                        count_units_rademacher(n, k, b).unwrap(),
                        count_units_nicol(n, k, b).unwrap(),
                        "n={n} k={k} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn inner_sum_uses_complementary_divisor() {
        // Indexing the inner sums by d_j instead of n/d_j loses the count.
        let wrong: i128 = [1u64, 2, 4]
            .iter()
            .map(|&d| {
                let outer = cohen_ramanujan(d, 2, 5).unwrap();
                outer * cohen_ramanujan(1, 2, 16 / (d * d) as i128).unwrap()
                    * cohen_ramanujan(2, 2, 16 / (d * d) as i128).unwrap()
            })
            .sum();
        assert_ne!(wrong, 48);
    }
}
