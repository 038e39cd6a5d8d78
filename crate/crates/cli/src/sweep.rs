//! The `verify` sweep: compare all three counting engines over every small
//! instance, then run the gcd and Ramanujan-sum identity suites.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use rcong::arith::{divisors, generalized_gcd};
use rcong::congruence::{count_restricted_with, CongruenceInstance};
use rcong::oracle::{brute_force_count, class_character_sum, convolution_count, Budgets};
use rcong::ramanujan::{cohen_ramanujan, cohen_ramanujan_direct_sum, RamanujanCache, DIRECT_BUDGET, DIRECT_TOLERANCE};
use rcong::{Error, ErrorKind};

use crate::output::{Mismatch, SuiteResult, VerifyReport};

/// Deliberate corruptions of the formula engine, used to check that the
/// sweep actually catches errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mutation {
    /// Use `c_{d_j,s}` instead of `c_{n/d_j,s}` in the inner product.
    IndexByDivisor,
    /// Report one extra solution whenever `b ≡ 0`.
    OffByOne,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub max_n: u64,
    pub s_values: Vec<u32>,
    pub max_k: usize,
    pub seed: u64,
    /// Largest number of instances per `(n, s, k)` cell before switching to
    /// seeded sampling.
    pub cap: usize,
    pub budgets: Budgets,
    pub mutation: Option<Mutation>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_n: 6,
            s_values: vec![1, 2],
            max_k: 3,
            seed: 0,
            cap: 100_000,
            budgets: Budgets::default(),
            mutation: None,
        }
    }
}

/// Instance keys in canonical order: `(n, s, k, t, b)`.
type Key = (u64, u32, usize, Vec<u64>, u64);

fn cell_instances(n: u64, s: u32, k: usize, cfg: &SweepConfig) -> Result<(Vec<Key>, bool), Error> {
    let divs = divisors(n)?;
    let m = n.checked_pow(s).ok_or(Error::Overflow("modulus n^s"))?;
    let space = (m as u128).saturating_mul((divs.len() as u128).saturating_pow(k as u32));
    if space <= cfg.cap as u128 {
        let mut keys = Vec::with_capacity(space as usize);
        let mut idx = vec![0usize; k];
        loop {
            let t: Vec<u64> = idx.iter().map(|&i| divs[i]).collect();
            for b in 0..m {
                keys.push((n, s, k, t.clone(), b));
            }
            // Odometer over divisor indices, last position fastest.
            let mut pos = k;
            loop {
                if pos == 0 {
                    return Ok((keys, false));
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < divs.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
    let cell_seed = cfg.seed ^ (n << 40) ^ ((s as u64) << 20) ^ k as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(cell_seed);
    let mut picked = BTreeSet::new();
    for _ in 0..cfg.cap {
        let t: Vec<u64> = (0..k).map(|_| divs[rng.gen_range(0..divs.len())]).collect();
        let b = rng.gen_range(0..m);
        picked.insert((n, s, k, t, b));
    }
    Ok((picked.into_iter().collect(), true))
}

fn mutated_formula(inst: &CongruenceInstance, mutation: Mutation, cache: &RamanujanCache) -> Result<String, Error> {
    match mutation {
        Mutation::OffByOne => {
            let c = count_restricted_with(inst, cache)?;
            Ok(if inst.b() == 0 {
                (c.into_inner() + 1u32).to_string()
            } else {
                c.to_string()
            })
        }
        Mutation::IndexByDivisor => {
            let s = inst.s();
            let profile = inst.profile();
            let mut sum = BigInt::from(0);
            for &d in profile.divisors() {
                let mut term = BigInt::from(cohen_ramanujan(d, s, inst.b() as i128)?);
                let arg = (inst.modulus() / d.pow(s)) as i128;
                for (dj, g) in profile.iter() {
                    term *= num_traits::pow(BigInt::from(cohen_ramanujan(dj, s, arg)?), g as usize);
                }
                sum += term;
            }
            let (q, r) = sum.div_rem(&BigInt::from(inst.modulus()));
            if r != BigInt::from(0) {
                return Err(Error::Inconsistent(format!("sum {sum} not divisible by {}", inst.modulus())));
            }
            Ok(q.to_string())
        }
    }
}

fn reproduce_command(key: &Key) -> String {
    let (n, s, _, t, b) = key;
    let mut cmd = format!("rcong count --n {n} --s {s} --b {b}");
    if !t.is_empty() {
        let list: Vec<String> = t.iter().map(u64::to_string).collect();
        cmd.push_str(&format!(" --t {}", list.join(",")));
    }
    cmd.push_str(" --engine brute");
    cmd
}

struct Checked {
    mismatch: Option<Mismatch>,
    brute: bool,
    convolution: bool,
}

fn check_instance(key: &Key, cfg: &SweepConfig, cache: &RamanujanCache) -> Checked {
    let (n, s, _, t, b) = key;
    let inst = CongruenceInstance::new(*n, *s, *b as i128, t.clone()).expect("sweep keys are valid");
    let formula = match cfg.mutation {
        None => count_restricted_with(&inst, cache).map(|c| c.to_string()),
        Some(m) => mutated_formula(&inst, m, cache),
    };
    // Budget overruns mean "engine not run"; any other error is a finding.
    let run = |r: Result<rcong::congruence::SolutionCount, Error>| match r {
        Ok(c) => Some(c.to_string()),
        Err(e) if e.kind() == ErrorKind::Resource => None,
        Err(e) => Some(format!("error: {e}")),
    };
    let brute = run(brute_force_count(&inst, &cfg.budgets));
    let convolution = run(convolution_count(&inst, &cfg.budgets));
    let formula = formula.unwrap_or_else(|e| format!("error: {e}"));
    let agrees = |other: &Option<String>| other.as_ref().map_or(true, |v| *v == formula);
    let bad = formula.starts_with("error") || !agrees(&brute) || !agrees(&convolution);
    Checked {
        brute: brute.is_some(),
        convolution: convolution.is_some(),
        mismatch: bad.then(|| Mismatch {
            n: *n,
            s: *s,
            b: *b,
            t: t.clone(),
            formula,
            brute,
            convolution,
            reproduce: reproduce_command(key),
        }),
    }
}

fn run_suite<I>(name: &str, checks: I) -> SuiteResult
where
    I: IntoIterator<Item = Result<(), String>>,
{
    let mut result = SuiteResult {
        name: name.into(),
        checks: 0,
        failures: 0,
        first_failure: None,
    };
    for check in checks {
        result.checks += 1;
        if let Err(why) = check {
            result.failures += 1;
            result.first_failure.get_or_insert(why);
        }
    }
    result
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(a: Result<T, Error>, b: Result<T, Error>, what: impl FnOnce() -> String) -> Result<(), String> {
    match (a, b) {
        (Ok(x), Ok(y)) if x == y => Ok(()),
        (x, y) => Err(format!("{}: {x:?} vs {y:?}", what())),
    }
}

fn identity_suites(cfg: &SweepConfig) -> Vec<SuiteResult> {
    let max_n = cfg.max_n;
    let s_values = &cfg.s_values;
    let small_power = |r: u64, s: u32| r.checked_pow(s).filter(|&v| v <= DIRECT_BUDGET);

    let ab_max = (20 * max_n).min(200) as i128;
    let ggcd = run_suite(
        "ggcd-periodicity",
        s_values.iter().flat_map(|&s| {
            (1..=ab_max).flat_map(move |a| {
                (1..=ab_max).map(move |b| {
                    expect_eq(generalized_gcd(a + b, b, s), generalized_gcd(a, b, s), || format!("({a},{b})_{s}"))
                })
            })
        }),
    );

    let mut ram_checks = Vec::new();
    for r in 1..=2 * max_n {
        for &s in s_values {
            let Some(rs) = small_power(r, s) else { continue };
            let rs = rs as i128;
            for n in 0..rs {
                let c = cohen_ramanujan(r, s, n);
                let reduced = generalized_gcd(n, rs, s).map(|g| g.value() as i128).unwrap_or(rs);
                let what = || format!("c_{{{r},{s}}}({n})");
                ram_checks.push(expect_eq(cohen_ramanujan(r, s, reduced), c.clone(), || format!("evenness {}", what())));
                ram_checks.push(expect_eq(cohen_ramanujan(r, s, -n), c.clone(), || format!("reflection {}", what())));
                ram_checks.push(expect_eq(cohen_ramanujan(r, s, n + rs), c.clone(), || format!("periodicity {}", what())));
                if let (Ok(exact), Ok(z)) = (&c, cohen_ramanujan_direct_sum(r, s, n, DIRECT_BUDGET)) {
                    let ok = (z.re - *exact as f64).abs() < DIRECT_TOLERANCE && z.im.abs() < DIRECT_TOLERANCE;
                    ram_checks.push(if ok { Ok(()) } else { Err(format!("direct {}: {z}", what())) });
                }
            }
        }
    }
    let ramanujan = run_suite("ramanujan-identities", ram_checks);

    let mut even_checks = Vec::new();
    for n in 1..=4 * max_n {
        for &s in s_values {
            let Some(ns) = small_power(n, s) else { continue };
            let ns = ns as i128;
            for e in divisors(n).unwrap_or_default() {
                for m in 1..=ns {
                    let reduced = generalized_gcd(m, ns, s).map(|g| g.value() as i128);
                    let Ok(reduced) = reduced else {
                        even_checks.push(Err(format!("gcd ({m},{ns})_{s} failed")));
                        continue;
                    };
                    even_checks.push(expect_eq(cohen_ramanujan(e, s, m), cohen_ramanujan(e, s, reduced), || {
                        format!("c_{{{e},{s}}}({m}) vs n={n}")
                    }));
                }
            }
        }
    }
    let evenness = run_suite("ramanujan-n-s-evenness", even_checks);

    let mut char_checks = Vec::new();
    for n in 1..=max_n {
        for &s in s_values {
            let Some(ns) = n.checked_pow(s).filter(|&v| v <= cfg.budgets.class_enumeration.min(10_000)) else {
                continue;
            };
            for d in divisors(n).unwrap_or_default() {
                for m in 0..ns as i128 {
                    let check = match (class_character_sum(n, s, d, m, &cfg.budgets), cohen_ramanujan(n / d, s, m)) {
                        (Ok(z), Ok(c)) if (z.re - c as f64).hypot(z.im) < DIRECT_TOLERANCE => Ok(()),
                        (z, c) => Err(format!("class {d} of {n}^{s} at m={m}: {z:?} vs {c:?}")),
                    };
                    char_checks.push(check);
                }
            }
        }
    }
    let characters = run_suite("class-character-sums", char_checks);

    vec![ggcd, ramanujan, evenness, characters]
}

/// Run the whole sweep. Never fails; disagreements are reported.
pub fn run(cfg: &SweepConfig) -> Result<VerifyReport, Error> {
    let mut keys = Vec::new();
    let mut sampled_cells = 0;
    for n in 1..=cfg.max_n {
        for &s in &cfg.s_values {
            for k in 0..=cfg.max_k {
                let (cell, sampled) = cell_instances(n, s, k, cfg)?;
                sampled_cells += sampled as u64;
                keys.extend(cell);
            }
        }
    }
    keys.sort();
    keys.dedup();
    let cache = RamanujanCache::new();
    let results: Vec<Checked> = keys.par_iter().map(|k| check_instance(k, cfg, &cache)).collect();
    let mismatches = results.iter().filter(|r| r.mismatch.is_some()).count() as u64;
    Ok(VerifyReport {
        instances: keys.len() as u64,
        brute_checked: results.iter().filter(|r| r.brute).count() as u64,
        convolution_checked: results.iter().filter(|r| r.convolution).count() as u64,
        sampled_cells,
        mismatches,
        first_mismatch: results.into_iter().find_map(|r| r.mismatch),
        suites: identity_suites(cfg),
    })
}
