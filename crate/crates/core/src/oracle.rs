//! Independent ways of counting the same solutions.
//!
//! None of these use the Ramanujan-sum formula. [`brute_force_count`] walks
//! every restricted tuple, [`convolution_count`] builds the distribution of
//! partial sums over `Z/n^sZ` one unknown at a time, and
//! [`class_character_sum`] evaluates the exponential sum over a class
//! numerically so it can be compared with `c_{n/d,s}(m)`.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::congruence::{class_members, class_size, CongruenceInstance, SolutionCount};
use crate::error::{Error, Result};
use crate::expsum;

/// Work ceilings for the enumeration-based engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Tuples visited by [`brute_force_count`] and [`enumerate_solutions`].
    pub tuples: u128,
    /// Largest `n^s` scanned when listing a class.
    pub class_enumeration: u64,
    /// Largest `n^s` for a [`ResidueVector`].
    pub vector: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            tuples: 10_000_000,
            class_enumeration: crate::congruence::CLASS_ENUMERATION_BUDGET,
            vector: 100_000,
        }
    }
}

/// Number of ways to reach each residue mod `n^s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueVector {
    counts: Vec<BigUint>,
}

impl ResidueVector {
    /// The distribution of the empty sum: one way to reach `0`.
    pub fn delta(modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        let mut counts = vec![BigUint::zero(); modulus as usize];
        counts[0] = BigUint::one();
        ResidueVector { counts }
    }

    pub fn modulus(&self) -> u64 {
        self.counts.len() as u64
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn get(&self, residue: u64) -> &BigUint {
        &self.counts[(residue % self.modulus()) as usize]
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Cyclic convolution with the indicator of `members`: add one more
    /// unknown ranging over that set.
    pub fn convolve(&self, members: &[u64]) -> Self {
        let m = self.counts.len();
        let mut out = vec![BigUint::zero(); m];
        for (r, c) in self.counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &x in members {
                out[(r + (x % m as u64) as usize) % m] += c;
            }
        }
        ResidueVector { counts: out }
    }
}

fn members_per_restriction(
    instance: &CongruenceInstance,
    budgets: &Budgets,
) -> Result<Vec<Vec<u64>>> {
    instance
        .restrictions()
        .iter()
        .map(|&t| class_members(instance.n(), instance.s(), t, budgets.class_enumeration))
        .collect()
}

fn check_tuple_budget(instance: &CongruenceInstance, budgets: &Budgets) -> Result<()> {
    let mut required: u128 = 1;
    for &t in instance.restrictions() {
        let size = class_size(instance.n(), instance.s(), t)? as u128;
        required = required.saturating_mul(size);
    }
    if required > budgets.tuples {
        return Err(Error::BudgetExceeded {
            what: "brute-force enumeration (use the convolution engine)",
            required,
            budget: budgets.tuples,
        });
    }
    Ok(())
}

fn count_tail(classes: &[Vec<u64>], acc: u64, modulus: u64, target: u64) -> u64 {
    match classes {
        [] => (acc % modulus == target) as u64,
        [last] => last
            .iter()
            .filter(|&&x| (acc + x) % modulus == target)
            .count() as u64,
        [first, rest @ ..] => first
            .iter()
            .map(|&x| count_tail(rest, (acc + x) % modulus, modulus, target))
            .sum(),
    }
}

/// Count solutions by visiting every restricted tuple.
///
/// The first unknown's class is split across threads; the total does not
/// depend on the split.
pub fn brute_force_count(
    instance: &CongruenceInstance,
    budgets: &Budgets,
) -> Result<SolutionCount> {
    check_tuple_budget(instance, budgets)?;
    let classes = members_per_restriction(instance, budgets)?;
    let (m, b) = (instance.modulus(), instance.b());
    let total = match classes.split_first() {
        None => (b == 0) as u64,
        Some((first, rest)) => first
            .par_iter()
            .map(|&x| count_tail(rest, x % m, m, b))
            .sum(),
    };
    Ok(SolutionCount::from(total))
}

/// Count solutions by iterated cyclic convolution of class indicators.
///
/// Costs `O(k · n^{2s})` big-integer additions. After each step the total
/// mass must equal the product of the class sizes used so far.
pub fn convolution_count(
    instance: &CongruenceInstance,
    budgets: &Budgets,
) -> Result<SolutionCount> {
    let m = instance.modulus();
    if m > budgets.vector {
        return Err(Error::BudgetExceeded {
            what: "residue vector",
            required: m as u128,
            budget: budgets.vector as u128,
        });
    }
    let mut vector = ResidueVector::delta(m);
    let mut expected_mass = BigUint::one();
    for (d, g) in instance.profile().iter() {
        if g == 0 {
            continue;
        }
        let members = class_members(instance.n(), instance.s(), d, budgets.class_enumeration)?;
        for _ in 0..g {
            vector = vector.convolve(&members);
            expected_mass *= members.len();
            if vector.total() != expected_mass {
                return Err(Error::Inconsistent(format!(
                    "convolution lost mass at d={d}: {} != {expected_mass}",
                    vector.total()
                )));
            }
        }
    }
    Ok(SolutionCount::from(vector.get(instance.b()).clone()))
}

/// `Σ_{x ∈ C} e(m·x / n^s)` where `C` is the class of `d` in `[1, n^s]`.
///
/// This should equal `c_{n/d,s}(m)` up to rounding.
pub fn class_character_sum(n: u64, s: u32, d: u64, m: i128, budgets: &Budgets) -> Result<Complex64> {
    let members = class_members(n, s, d, budgets.class_enumeration)?;
    let modulus = n.pow(s) as u128;
    Ok(expsum::character_sum(
        m,
        modulus,
        members.into_iter().map(u128::from),
    ))
}

fn collect_tail(
    classes: &[Vec<u64>],
    acc: u64,
    modulus: u64,
    target: u64,
    prefix: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    match classes.split_first() {
        None => {
            if acc % modulus == target {
                out.push(prefix.clone());
            }
        }
        Some((first, rest)) => {
            for &x in first {
                prefix.push(x);
                collect_tail(rest, (acc + x) % modulus, modulus, target, prefix, out, limit);
                prefix.pop();
                if out.len() >= limit {
                    return;
                }
            }
        }
    }
}

/// List up to `limit` solutions in lexicographic order.
///
/// ```
/// use rcong::congruence::CongruenceInstance;
/// use rcong::oracle::{enumerate_solutions, Budgets};
///
/// let inst = CongruenceInstance::new(4, 2, 5, vec![1, 2]).unwrap();
/// let sols = enumerate_solutions(&inst, 10, &Budgets::default()).unwrap();
/// assert_eq!(sols, vec![vec![1, 4], vec![9, 12], vec![13, 8]]);
/// ```
pub fn enumerate_solutions(
    instance: &CongruenceInstance,
    limit: usize,
    budgets: &Budgets,
) -> Result<Vec<Vec<u64>>> {
    check_tuple_budget(instance, budgets)?;
    let classes = members_per_restriction(instance, budgets)?;
    let mut out = Vec::new();
    collect_tail(
        &classes,
        0,
        instance.modulus(),
        instance.b(),
        &mut Vec::with_capacity(classes.len()),
        &mut out,
        limit,
    );
    Ok(out)
}
