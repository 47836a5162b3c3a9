//! Generalized r-Lah polynomials `G(n,k;r)` computed row by row from the
//! three-case insertion recurrence
//!
//! ```text
//! G(n+1,k;r) = G(n,k-1;r) + (w1*n + w2*k + (w1+w2)*r) * G(n,k;r)
//! ```
//!
//! with `G(0,k;r) = [k = 0]`. The weight pair `(w1, w2)` is `(a, b)` for the
//! ordinary polynomials and may be any pair of polynomials (e.g. `(b, a)`,
//! `(a, t)`, `(-t, b)`, or integer constants) for the specialized triangles
//! used by the identity suite.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;

use crate::poly::{Polynomial, Var, ZERO};

/// The two weights substituted for `(a, b)` in the recurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weights {
    pub first: Polynomial,
    pub second: Polynomial,
}

impl Weights {
    pub fn new(first: Polynomial, second: Polynomial) -> Self {
        Weights { first, second }
    }

    /// `(a, b)`.
    pub fn ab() -> Self {
        Self::new(Var::A.into(), Var::B.into())
    }

    /// `(b, a)`: the swapped triangle of the orthogonality relation.
    pub fn ba() -> Self {
        Self::new(Var::B.into(), Var::A.into())
    }

    /// `(a, t)`.
    pub fn at() -> Self {
        Self::new(Var::A.into(), Var::T.into())
    }

    /// `(-t, b)`.
    pub fn neg_t_b() -> Self {
        Self::new(-Polynomial::var(Var::T), Var::B.into())
    }

    pub fn ints(a: i64, b: i64) -> Self {
        Self::new(a.into(), b.into())
    }

    /// `w1*n + w2*k + (w1+w2)*r`, the multiplier of `G(n,k;r)` in the recurrence.
    fn multiplier(&self, n: u32, k: u32, r: u32) -> Polynomial {
        let mut m = self.first.scale(n + r);
        m += self.second.scale(k + r);
        m
    }
}

/// Rows `0..=max_n` of `G(n,k;r)` for a fixed `r` and weight pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LahTriangle {
    r: u32,
    weights: Weights,
    rows: Vec<Vec<Polynomial>>,
}

impl LahTriangle {
    /// Ordinary `(a, b)` triangle, holding only row 0.
    pub fn new(r: u32) -> Self {
        Self::with_weights(Weights::ab(), r)
    }

    pub fn with_weights(weights: Weights, r: u32) -> Self {
        LahTriangle {
            r,
            weights,
            rows: vec![vec![Polynomial::one()]],
        }
    }

    pub fn build(weights: Weights, r: u32, max_n: u32) -> Self {
        let mut t = Self::with_weights(weights, r);
        t.extend_to(max_n);
        t
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn max_n(&self) -> u32 {
        (self.rows.len() - 1) as u32
    }

    /// Fill rows until `max_n() >= n`.
    pub fn extend_to(&mut self, n: u32) {
        while self.max_n() < n {
            let n0 = self.max_n();
            let prev = self.rows.last().unwrap();
            let mut next = Vec::with_capacity(prev.len() + 1);
            for k in 0..=n0 + 1 {
                let mut cell = if k >= 1 {
                    prev[(k - 1) as usize].clone()
                } else {
                    Polynomial::zero()
                };
                if k <= n0 {
                    let m = self.weights.multiplier(n0, k, self.r);
                    cell += &m * &prev[k as usize];
                }
                next.push(cell);
            }
            self.rows.push(next);
        }
    }

    /// `G(n,k;r)`; the zero polynomial whenever `k < 0`, `k > n` or `n < 0`.
    ///
    /// Panics if `n` exceeds the filled rows.
    pub fn get(&self, n: i64, k: i64) -> &Polynomial {
        if n < 0 || k < 0 || k > n {
            return &ZERO;
        }
        assert!(
            n as u32 <= self.max_n(),
            "row {n} requested from triangle filled to {}",
            self.max_n()
        );
        &self.rows[n as usize][k as usize]
    }

    pub fn row(&self, n: u32) -> &[Polynomial] {
        &self.rows[n as usize]
    }

    /// Overwrite one cell. Only used to inject faults in verification tests.
    pub fn set(&mut self, n: u32, k: u32, value: Polynomial) {
        self.rows[n as usize][k as usize] = value;
    }

    /// `Σ_k G(n,k;r)`.
    pub fn row_sum(&self, n: u32) -> Polynomial {
        self.row(n).iter().cloned().sum()
    }

    /// `Σ_k G(n,k;r) x^k`, with `x` marking non-distinguished blocks.
    pub fn row_sum_marked(&self, n: u32) -> Polynomial {
        let x = Polynomial::var(Var::X);
        let mut acc = Polynomial::zero();
        let mut xk = Polynomial::one();
        for cell in self.row(n) {
            acc += cell * &xk;
            xk = &xk * &x;
        }
        acc
    }
}

pub fn g_poly(n: u32, k: u32, r: u32) -> Polynomial {
    LahTriangle::build(Weights::ab(), r, n)
        .get(n as i64, k as i64)
        .clone()
}

/// `G(n,k;r)` evaluated at integer weights.
pub fn g_eval(n: u32, k: u32, r: u32, a: i64, b: i64) -> BigInt {
    LahTriangle::build(Weights::ints(a, b), r, n)
        .get(n as i64, k as i64)
        .as_constant()
        .expect("integer weights give integer cells")
}

/// r-Lah number (`a = b = 1`).
pub fn r_lah(n: u32, k: u32, r: u32) -> BigInt {
    g_eval(n, k, r, 1, 1)
}

/// Unsigned r-Stirling number of the first kind (`a = 1, b = 0`).
pub fn r_stirling_cycle(n: u32, k: u32, r: u32) -> BigInt {
    g_eval(n, k, r, 1, 0)
}

/// r-Stirling number of the second kind (`a = 0, b = 1`).
pub fn r_stirling_subset(n: u32, k: u32, r: u32) -> BigInt {
    g_eval(n, k, r, 0, 1)
}

pub fn row_sum_poly(n: u32, r: u32) -> Polynomial {
    LahTriangle::build(Weights::ab(), r, n).row_sum(n)
}

pub fn row_sum_marked(n: u32, r: u32) -> Polynomial {
    LahTriangle::build(Weights::ab(), r, n).row_sum_marked(n)
}

/// Shared, lazily built triangles keyed by `(weights, r)`, all filled to the
/// same depth. Completed triangles are immutable and handed out as `Arc`s, so
/// concurrent checks can read them without coordination.
#[derive(Debug)]
pub struct TriangleCache {
    depth: u32,
    tables: RwLock<HashMap<(Weights, u32), Arc<LahTriangle>>>,
}

impl TriangleCache {
    pub fn new(depth: u32) -> Self {
        TriangleCache {
            depth,
            tables: RwLock::new(HashMap::new()),
        }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn get(&self, weights: &Weights, r: u32) -> Arc<LahTriangle> {
        let key = (weights.clone(), r);
        if let Some(t) = self.tables.read().unwrap().get(&key) {
            return Arc::clone(t);
        }
        let built = Arc::new(LahTriangle::build(weights.clone(), r, self.depth));
        let mut tables = self.tables.write().unwrap();
        Arc::clone(tables.entry(key).or_insert(built))
    }

    pub fn ab(&self, r: u32) -> Arc<LahTriangle> {
        self.get(&Weights::ab(), r)
    }

    /// Integer specialization `G(n,k;r)` at `(a, b) = (av, bv)`, read off the
    /// symbolic `(a, b)` triangle so that every consumer sees the same cells.
    pub fn int(&self, r: u32, av: i64, bv: i64, n: i64, k: i64) -> BigInt {
        self.ab(r)
            .get(n, k)
            .eval(&[(Var::A, av), (Var::B, bv)])
            .as_constant()
            .expect("fully bound")
    }

    /// Add `delta` to one cell of the `(weights, r)` triangle.
    pub fn corrupt(&self, weights: &Weights, r: u32, n: u32, k: u32, delta: &Polynomial) {
        let current = self.get(weights, r);
        let mut t = (*current).clone();
        let cell = t.get(n as i64, k as i64) + delta;
        t.set(n, k, cell);
        self.tables
            .write()
            .unwrap()
            .insert((weights.clone(), r), Arc::new(t));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(a: i64, b: i64) -> Polynomial {
        &Polynomial::var(Var::A).scale(a) + &Polynomial::var(Var::B).scale(b)
    }

    #[test]
    fn boundary_values() {
        assert_eq!(g_poly(0, 0, 5), Polynomial::one());
        assert!(g_poly(0, 1, 5).is_zero());
        assert_eq!(g_poly(1, 0, 2), ab(2, 2));
        assert_eq!(g_poly(2, 1, 0), ab(1, 1));
        assert_eq!(g_poly(2, 1, 1), ab(3, 3));
        assert!(g_poly(3, 4, 0).is_zero());
    }

    #[test]
    fn k_zero_column_is_boundary_product() {
        for r in 0..4u32 {
            let t = LahTriangle::build(Weights::ab(), r, 6);
            let base = ab(r as i64, r as i64);
            for n in 0..=6u32 {
                let expected = Polynomial::range_product(&base, &Polynomial::var(Var::A), n);
                assert_eq!(t.get(n as i64, 0), &expected, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn classical_specializations() {
        assert_eq!(g_eval(3, 1, 0, 1, 1), BigInt::from(6));
        assert_eq!(g_eval(4, 2, 0, 0, 1), BigInt::from(7));
        assert_eq!(g_eval(2, 1, 1, 1, 1), BigInt::from(6));
        assert_eq!(r_stirling_cycle(4, 2, 0), BigInt::from(11));
        assert_eq!(r_lah(2, 2, 3), BigInt::from(1));
        assert_eq!(r_stirling_subset(3, 2, 0), BigInt::from(3));
    }

    #[test]
    fn row_sums() {
        assert_eq!(row_sum_poly(0, 3), Polynomial::one());
        let bell: Vec<BigInt> = (0..6)
            .map(|n| {
                row_sum_poly(n, 0)
                    .eval(&[(Var::A, 0), (Var::B, 1)])
                    .as_constant()
                    .unwrap()
            })
            .collect();
        assert_eq!(bell, [1, 1, 2, 5, 15, 52].map(BigInt::from));
        let a262: Vec<BigInt> = (0..6)
            .map(|n| {
                row_sum_poly(n, 0)
                    .eval(&[(Var::A, 1), (Var::B, 1)])
                    .as_constant()
                    .unwrap()
            })
            .collect();
        assert_eq!(a262, [1, 1, 3, 13, 73, 501].map(BigInt::from));
    }

    #[test]
    fn marked_row_sum() {
        assert_eq!(row_sum_marked(0, 2), Polynomial::one());
        assert_eq!(row_sum_marked(1, 0), Polynomial::var(Var::X));
        for r in 0..3 {
            for n in 0..=8 {
                assert_eq!(
                    row_sum_marked(n, r).eval(&[(Var::X, 1)]),
                    row_sum_poly(n, r)
                );
            }
        }
    }

    #[test]
    fn degree_and_positivity() {
        for r in 0..4u32 {
            let t = LahTriangle::build(Weights::ab(), r, 8);
            for n in 0..=8u32 {
                for k in 0..=n {
                    let cell = t.get(n as i64, k as i64);
                    if r == 0 && k == 0 && n > 0 {
                        assert!(cell.is_zero());
                        continue;
                    }
                    let degrees = cell.degree_in(&[Var::A, Var::B]);
                    assert_eq!(degrees, Some((n - k, n - k)), "homogeneous of degree n-k");
                    assert!(cell.terms().all(|(_, c)| c > &BigInt::from(0)));
                }
                assert_eq!(t.get(n as i64, n as i64), &Polynomial::one());
                if r == 0 && n >= 1 {
                    assert!(t.get(n as i64, 0).is_zero());
                }
            }
        }
    }

    #[test]
    fn incremental_fill_matches_one_shot() {
        let mut t = LahTriangle::new(2);
        for n in 0..=7 {
            t.extend_to(n);
        }
        assert_eq!(t, LahTriangle::build(Weights::ab(), 2, 7));
    }

    #[test]
    fn cache_corruption_is_visible() {
        let cache = TriangleCache::new(5);
        let before = cache.ab(1).get(3, 1).clone();
        cache.corrupt(&Weights::ab(), 1, 3, 1, &Polynomial::one());
        assert_eq!(cache.ab(1).get(3, 1), &(&before + &Polynomial::one()));
        assert_eq!(cache.int(0, 1, 1, 3, 1), BigInt::from(6));
    }
}
