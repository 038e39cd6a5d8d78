//! Floating-point sums of roots of unity, used only by the oracles.

use num_complex::Complex64;

/// `e(residue / modulus) = exp(2πi · residue / modulus)`.
///
/// The caller reduces the residue first so the angle stays in `[0, 2π)`.
pub(crate) fn unit_root(residue: u128, modulus: u128) -> Complex64 {
    let theta = std::f64::consts::TAU * (residue as f64 / modulus as f64);
    Complex64::from_polar(1.0, theta)
}

/// `Σ e(m·x / modulus)` over the given `x`, summed pairwise.
pub(crate) fn character_sum<I>(m: i128, modulus: u128, xs: I) -> Complex64
where
    I: IntoIterator<Item = u128>,
{
    let m = m.rem_euclid(modulus as i128) as u128;
    let terms: Vec<Complex64> = xs
        .into_iter()
        .map(|x| unit_root(mul_mod(m, x % modulus, modulus), modulus))
        .collect();
    pairwise_sum(&terms)
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    match a.checked_mul(b) {
        Some(p) => p % m,
        None => {
            // Shift-and-add; only reached for moduli beyond 2^64.
            let (mut acc, mut a, mut b) = (0u128, a % m, b);
            while b > 0 {
                if b & 1 == 1 {
                    acc = (acc + a) % m;
                }
                a = (a << 1) % m;
                b >>= 1;
            }
            acc
        }
    }
}

pub(crate) fn pairwise_sum(terms: &[Complex64]) -> Complex64 {
    if terms.len() <= 16 {
        return terms.iter().sum();
    }
    let (lo, hi) = terms.split_at(terms.len() / 2);
    pairwise_sum(lo) + pairwise_sum(hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_circle_cancels() {
        for m in 2..50u128 {
            let s = character_sum(1, m, 0..m);
            assert!(s.norm() < 1e-12, "modulus {m}: {s}");
        }
    }

    #[test]
    fn zero_frequency_counts_terms() {
        let s = character_sum(0, 7, 0..100);
        assert!((s.re - 100.0).abs() < 1e-12 && s.im.abs() < 1e-12);
    }

    #[test]
    fn negative_frequency_conjugates() {
        let a = character_sum(3, 10, [1, 4, 7]);
        let b = character_sum(-3, 10, [1, 4, 7]);
        assert!((a - b.conj()).norm() < 1e-12);
    }
}
