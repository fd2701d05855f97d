//! Hadamard walk on the integer line and its ballistic limit law.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

/// Exact position distribution after `steps` steps; index `i` is position
/// `i − steps`.
#[derive(Debug, Clone, PartialEq)]
pub struct LineDistribution {
    pub steps: usize,
    pub probabilities: Vec<f64>,
}

impl LineDistribution {
    pub fn position(&self, index: usize) -> i64 {
        index as i64 - self.steps as i64
    }

    pub fn probability_at(&self, position: i64) -> f64 {
        let index = position + self.steps as i64;
        if index < 0 {
            return 0.0;
        }
        self.probabilities
            .get(index as usize)
            .copied()
            .unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }
}

/// Two-state walk with the Hadamard coin, started at the origin with coin
/// state `(1/√2, i/√2)`. Coin component 0 moves left, component 1 right.
pub fn hadamard_walk_line(steps: usize) -> LineDistribution {
    let width = 2 * steps + 1;
    let zero = Complex64::default();
    let mut left = vec![zero; width];
    let mut right = vec![zero; width];
    left[steps] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    right[steps] = Complex64::new(0.0, FRAC_1_SQRT_2);

    let mut next_left = vec![zero; width];
    let mut next_right = vec![zero; width];
    for _ in 0..steps {
        next_left.fill(zero);
        next_right.fill(zero);
        for x in 0..width {
            let (l, r) = (left[x], right[x]);
            if l == zero && r == zero {
                continue;
            }
            let new_l = (l + r) * FRAC_1_SQRT_2;
            let new_r = (l - r) * FRAC_1_SQRT_2;
            next_left[x - 1] = new_l;
            next_right[x + 1] = new_r;
        }
        std::mem::swap(&mut left, &mut next_left);
        std::mem::swap(&mut right, &mut next_right);
    }
    let probabilities = left
        .iter()
        .zip(&right)
        .map(|(l, r)| l.norm_sqr() + r.norm_sqr())
        .collect();
    LineDistribution {
        steps,
        probabilities,
    }
}

/// Limit density of `X_n / n`: `1 / (π (1 − x²) √(1 − 2x²))` on `|x| < 1/√2`.
pub fn konno_density(x: f64) -> f64 {
    if x.abs() >= FRAC_1_SQRT_2 {
        return 0.0;
    }
    1.0 / (PI * (1.0 - x * x) * (1.0 - 2.0 * x * x).sqrt())
}

/// Distribution function of [`konno_density`]:
/// `1/2 + arctan(x / √(1 − 2x²)) / π` on the support.
pub fn konno_cdf(x: f64) -> f64 {
    if x <= -FRAC_1_SQRT_2 {
        0.0
    } else if x >= FRAC_1_SQRT_2 {
        1.0
    } else {
        0.5 + (x / (1.0 - 2.0 * x * x).sqrt()).atan() / PI
    }
}

/// Sup-distance between the distribution function of `X_n / n` and
/// [`konno_cdf`]. Both one-sided limits are checked at every atom.
pub fn kolmogorov_distance(dist: &LineDistribution) -> f64 {
    let n = dist.steps.max(1) as f64;
    let mut cumulative = 0.0;
    let mut worst = 0.0_f64;
    for (i, &p) in dist.probabilities.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let limit = konno_cdf(dist.position(i) as f64 / n);
        worst = worst.max((cumulative - limit).abs());
        cumulative += p;
        worst = worst.max((cumulative - limit).abs());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_step() {
        let d = hadamard_walk_line(1);
        assert!((d.probability_at(-1) - 0.5).abs() < 1e-15);
        assert!((d.probability_at(1) - 0.5).abs() < 1e-15);
        assert_eq!(d.probability_at(0), 0.0);
    }

    #[test]
    fn two_steps_by_hand() {
        // After one step: L(-1) = (1+i)/2, R(+1) = (1-i)/2.
        // Step two gives positions -2, 0, 0, +2 with |.|² = 1/4 each.
        let d = hadamard_walk_line(2);
        assert!((d.probability_at(-2) - 0.25).abs() < 1e-15);
        assert!((d.probability_at(0) - 0.5).abs() < 1e-15);
        assert!((d.probability_at(2) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn symmetric_and_normalized() {
        for steps in [1, 5, 40, 101] {
            let d = hadamard_walk_line(steps);
            assert!((d.total() - 1.0).abs() < 1e-12);
            let s = steps as i64;
            for x in -s..=s {
                assert!((d.probability_at(x) - d.probability_at(-x)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn parity() {
        let d = hadamard_walk_line(7);
        for x in (-6..=6).step_by(2) {
            assert_eq!(d.probability_at(x), 0.0);
        }
    }

    #[test]
    fn density_values() {
        assert!((konno_density(0.0) - 1.0 / PI).abs() < 1e-15);
        assert_eq!(konno_density(0.9), 0.0);
        assert_eq!(konno_density(-FRAC_1_SQRT_2), 0.0);
    }

    #[test]
    fn cdf_shape() {
        assert_eq!(konno_cdf(0.0), 0.5);
        assert_eq!(konno_cdf(-1.0), 0.0);
        assert_eq!(konno_cdf(1.0), 1.0);
        assert!((konno_cdf(0.3) + konno_cdf(-0.3) - 1.0).abs() < 1e-15);
    }
}
