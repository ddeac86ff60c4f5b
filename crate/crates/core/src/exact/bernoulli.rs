//! Bernoulli numbers in the convention `t/(e^t - 1) = sum B_m t^m / m!`.

use std::sync::RwLock;

use num_traits::{One, Zero};

use super::rational::{binom_q, factorial_q, int, Rational};

static CACHE: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// `B_m`, with `B_1 = -1/2`.
pub fn bernoulli(m: usize) -> Rational {
    if let Some(b) = CACHE.read().expect("bernoulli cache poisoned").get(m) {
        return b.clone();
    }
    let mut cache = CACHE.write().expect("bernoulli cache poisoned");
    while cache.len() <= m {
        let k = cache.len();
        let b = if k == 0 {
            Rational::one()
        } else if k > 1 && k % 2 == 1 {
            Rational::zero()
        } else {
            // sum_{j<=k} C(k+1, j) B_j = 0
            let mut s = Rational::zero();
            for (j, bj) in cache.iter().enumerate() {
                s += binom_q(&int(k as i64 + 1), j as u64) * bj;
            }
            -s / int(k as i64 + 1)
        };
        cache.push(b);
    }
    cache[m].clone()
}

/// Taylor coefficients of `t/(e^t - 1)` up to and including `t^order`.
pub fn bernoulli_series(order: usize) -> Vec<Rational> {
    (0..=order).map(|k| bernoulli(k) / factorial_q(k as u64)).collect()
}
