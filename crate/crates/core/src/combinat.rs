//! Integer helpers: binomial coefficients and rising/falling factorials.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(n, k)` by Pascal's rule; zero unless `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k) as usize;
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for i in 1..=n as usize {
        for j in (1..=k.min(i)).rev() {
            let prev = row[j - 1].clone();
            row[j] += prev;
        }
    }
    row[k].clone()
}

/// `x (x+1) ... (x+m-1)`; 1 when `m = 0`.
pub fn rising(x: i64, m: u32) -> BigInt {
    (0..m as i64).map(|i| BigInt::from(x + i)).product()
}

/// `x (x-1) ... (x-m+1)`; 1 when `m = 0`.
pub fn falling(x: i64, m: u32) -> BigInt {
    (0..m as i64).map(|i| BigInt::from(x - i)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(binomial(40, 20), BigInt::from(137846528820u64));
    }

    #[test]
    fn factorial_powers() {
        assert_eq!(rising(2, 3), BigInt::from(24));
        assert_eq!(rising(0, 2), BigInt::zero());
        assert_eq!(rising(-3, 0), BigInt::one());
        assert_eq!(falling(4, 2), BigInt::from(12));
        assert_eq!(falling(2, 3), BigInt::zero());
        assert_eq!(rising(-2, 2), BigInt::from(2));
    }
}
