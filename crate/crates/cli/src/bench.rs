//! Timing grid for the three counting engines.

use std::time::Instant;

use rcong::arith::divisors;
use rcong::congruence::{count_restricted, CongruenceInstance, SolutionCount};
use rcong::oracle::{brute_force_count, convolution_count, Budgets};
use rcong::{Error, ErrorKind};

use crate::output::BenchRow;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub n_values: Vec<u64>,
    pub s_values: Vec<u32>,
    pub k_values: Vec<usize>,
    pub repetitions: usize,
    pub budgets: Budgets,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            n_values: vec![4, 8, 16],
            s_values: vec![1, 2],
            k_values: vec![2, 4, 8],
            repetitions: 3,
            budgets: Budgets::default(),
        }
    }
}

/// The benchmark instance for a grid cell: restrictions cycle through the
/// divisors of `n` and the target is `b = k`.
pub fn cell_instance(n: u64, s: u32, k: usize) -> Result<CongruenceInstance, Error> {
    let divs = divisors(n)?;
    let t = (0..k).map(|i| divs[i % divs.len()]).collect();
    CongruenceInstance::new(n, s, k as i128, t)
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

/// Median wall time in milliseconds, or `None` if the engine declined the
/// instance on budget grounds.
fn time_engine<F>(reps: usize, mut f: F) -> Result<Option<(f64, SolutionCount)>, Error>
where
    F: FnMut() -> Result<SolutionCount, Error>,
{
    let mut times = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        match f() {
            Ok(c) => last = Some(c),
            Err(e) if e.kind() == ErrorKind::Resource => return Ok(None),
            Err(e) => return Err(e),
        }
        times.push(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(last.map(|c| (median(times), c)))
}

pub fn run(cfg: &BenchConfig) -> Result<Vec<BenchRow>, Error> {
    let mut rows = Vec::new();
    for &n in &cfg.n_values {
        for &s in &cfg.s_values {
            for &k in &cfg.k_values {
                let inst = cell_instance(n, s, k)?;
                let reps = cfg.repetitions;
                let (formula_ms, count) =
                    time_engine(reps, || count_restricted(&inst))?.expect("formula has no budget");
                let conv = time_engine(reps, || convolution_count(&inst, &cfg.budgets))?;
                let brute = time_engine(reps, || brute_force_count(&inst, &cfg.budgets))?;
                for (name, other) in [("convolution", &conv), ("brute force", &brute)] {
                    if let Some((_, c)) = other {
                        if *c != count {
                            return Err(Error::Inconsistent(format!(
                                "{name} counted {c} but the formula gave {count} for {inst}"
                            )));
                        }
                    }
                }
                rows.push(BenchRow {
                    n,
                    s,
                    k,
                    b: inst.b(),
                    count: count.to_string(),
                    formula_ms,
                    convolution_ms: conv.map(|(t, _)| t),
                    brute_ms: brute.map(|(t, _)| t),
                });
            }
        }
    }
    Ok(rows)
}
