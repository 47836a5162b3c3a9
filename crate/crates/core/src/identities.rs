//! Identity checks for `G(n,k;r)`, each decided by exact equality of
//! canonical polynomials (or integers, for the classical specializations).
//!
//! All checks read their triangles from a shared [`TriangleCache`], so a cell
//! corrupted there is seen by every identity that touches it.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinat::{binomial, falling, rising};
use crate::error::{invalid, Result};
use crate::exec::{self, Execution};
use crate::lah::{TriangleCache, Weights};
use crate::poly::{Polynomial, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityId {
    Connection,
    Vertical,
    Horizontal,
    Shift,
    Convolution,
    Splitting,
    RowsumShift,
    RowsumSplit,
    RowsumDecomp,
    RowsumRec,
    MarkedRec,
    RlahI,
    RlahINeg,
    RlahII,
    RlahIII,
    RlahIV,
    Orth,
    Triple,
    Inversion,
}

impl IdentityId {
    pub const ALL: [IdentityId; 19] = [
        IdentityId::Connection,
        IdentityId::Vertical,
        IdentityId::Horizontal,
        IdentityId::Shift,
        IdentityId::Convolution,
        IdentityId::Splitting,
        IdentityId::RowsumShift,
        IdentityId::RowsumSplit,
        IdentityId::RowsumDecomp,
        IdentityId::RowsumRec,
        IdentityId::MarkedRec,
        IdentityId::RlahI,
        IdentityId::RlahINeg,
        IdentityId::RlahII,
        IdentityId::RlahIII,
        IdentityId::RlahIV,
        IdentityId::Orth,
        IdentityId::Triple,
        IdentityId::Inversion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Connection => "CONNECTION",
            IdentityId::Vertical => "VERTICAL",
            IdentityId::Horizontal => "HORIZONTAL",
            IdentityId::Shift => "SHIFT",
            IdentityId::Convolution => "CONVOLUTION",
            IdentityId::Splitting => "SPLITTING",
            IdentityId::RowsumShift => "ROWSUM_SHIFT",
            IdentityId::RowsumSplit => "ROWSUM_SPLIT",
            IdentityId::RowsumDecomp => "ROWSUM_DECOMP",
            IdentityId::RowsumRec => "ROWSUM_REC",
            IdentityId::MarkedRec => "MARKED_REC",
            IdentityId::RlahI => "RLAH_I",
            IdentityId::RlahINeg => "RLAH_I_NEG",
            IdentityId::RlahII => "RLAH_II",
            IdentityId::RlahIII => "RLAH_III",
            IdentityId::RlahIV => "RLAH_IV",
            IdentityId::Orth => "ORTH",
            IdentityId::Triple => "TRIPLE",
            IdentityId::Inversion => "INVERSION",
        }
    }

    /// Case-insensitive lookup by name (`rlah_ii`, `ROWSUM_REC`, ...).
    pub fn parse(s: &str) -> Option<IdentityId> {
        let upper = s.trim().to_ascii_uppercase();
        Self::ALL.into_iter().find(|id| id.name() == upper)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The parameter tuple of one check. Unused slots are `None`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Params {
    pub n: Option<u32>,
    pub k: Option<u32>,
    pub m: Option<u32>,
    pub r: Option<u32>,
    pub s: Option<u32>,
    /// Inversion only: RNG seed.
    pub seed: Option<u64>,
    /// Inversion only: the integer values substituted for `(a, b)`.
    pub weights: Option<(i64, i64)>,
}

impl Params {
    pub fn nr(n: u32, r: u32) -> Self {
        Params {
            n: Some(n),
            r: Some(r),
            ..Default::default()
        }
    }

    pub fn nkr(n: u32, k: u32, r: u32) -> Self {
        Params {
            k: Some(k),
            ..Self::nr(n, r)
        }
    }

    pub fn nkrs(n: u32, k: u32, r: u32, s: u32) -> Self {
        Params {
            s: Some(s),
            ..Self::nkr(n, k, r)
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slots = [
            ("n", self.n),
            ("k", self.k),
            ("m", self.m),
            ("r", self.r),
            ("s", self.s),
        ];
        let mut first = true;
        for (name, v) in slots {
            if let Some(v) = v {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{name}={v}")?;
            }
        }
        if let Some(seed) = self.seed {
            write!(f, " seed={seed}")?;
        }
        if let Some((a, b)) = self.weights {
            write!(f, " a={a} b={b}")?;
        }
        Ok(())
    }
}

/// Verdict for one identity instance. On failure both sides are kept as a
/// witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub identity: IdentityId,
    pub params: Params,
    pub passed: bool,
    pub lhs: Option<Polynomial>,
    pub rhs: Option<Polynomial>,
}

impl CheckReport {
    fn compare(identity: IdentityId, params: Params, lhs: Polynomial, rhs: Polynomial) -> Self {
        let passed = lhs == rhs;
        Self::verdict(identity, params, passed, lhs, rhs)
    }

    fn verdict(
        identity: IdentityId,
        params: Params,
        passed: bool,
        lhs: Polynomial,
        rhs: Polynomial,
    ) -> Self {
        let (lhs, rhs) = if passed {
            (None, None)
        } else {
            (Some(lhs), Some(rhs))
        };
        CheckReport {
            identity,
            params,
            passed,
            lhs,
            rhs,
        }
    }
}

fn a() -> Polynomial {
    Polynomial::var(Var::A)
}

fn b() -> Polynomial {
    Polynomial::var(Var::B)
}

/// `u*a + v*b`.
fn lin(u: i64, v: i64) -> Polynomial {
    &a().scale(u) + &b().scale(v)
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn int(v: BigInt) -> Polynomial {
    Polynomial::constant(v)
}

/// Runs identity checks against a shared triangle cache.
#[derive(Debug)]
pub struct Verifier {
    cache: TriangleCache,
}

impl Verifier {
    /// A verifier whose triangles are filled to row `depth`.
    pub fn new(depth: u32) -> Self {
        Verifier {
            cache: TriangleCache::new(depth),
        }
    }

    pub fn cache(&self) -> &TriangleCache {
        &self.cache
    }

    fn g(&self, n: i64, k: i64, r: u32) -> Polynomial {
        self.cache.ab(r).get(n, k).clone()
    }

    fn row_sum(&self, n: i64, r: u32) -> Polynomial {
        if n < 0 {
            return Polynomial::zero();
        }
        self.cache.ab(r).row_sum(n as u32)
    }

    fn row_sum_marked(&self, n: i64, r: u32) -> Polynomial {
        if n < 0 {
            return Polynomial::zero();
        }
        self.cache.ab(r).row_sum_marked(n as u32)
    }

    /// `prod_{i=0}^{n-1}(x+(a+b)r+ai) = sum_k G(n,k;r) prod_{i=0}^{k-1}(x-bi)`.
    pub fn check_connection(&self, n: u32, r: u32) -> CheckReport {
        let x = Polynomial::var(Var::X);
        let lhs = Polynomial::range_product(&(&x + &lin(r as i64, r as i64)), &a(), n);
        let falling_x = |k: u32| Polynomial::range_product(&x, &-b(), k);
        let rhs: Polynomial = (0..=n)
            .map(|k| &self.g(n as i64, k as i64, r) * &falling_x(k))
            .sum();
        let degree_ok = lhs.degree(Var::X) == n && rhs.degree(Var::X) == n;
        let passed = degree_ok && lhs == rhs;
        CheckReport::verdict(IdentityId::Connection, Params::nr(n, r), passed, lhs, rhs)
    }

    /// Decomposition by the smallest element of the right-most block.
    pub fn check_vertical(&self, n: u32, k: u32, r: u32) -> Result<CheckReport> {
        if k < 1 || k > n {
            return Err(invalid("vertical recurrence needs 1 <= k <= n"));
        }
        let lhs = self.g(n as i64, k as i64, r);
        let rhs: Polynomial = (k..=n)
            .map(|i| {
                let base = lin((i + r) as i64, (k + r) as i64);
                let tail = Polynomial::range_product(&base, &a(), n - i);
                &self.g(i as i64 - 1, k as i64 - 1, r) * &tail
            })
            .sum();
        Ok(CheckReport::compare(
            IdentityId::Vertical,
            Params::nkr(n, k, r),
            lhs,
            rhs,
        ))
    }

    /// Decomposition by the largest element not in a singleton block.
    pub fn check_horizontal(&self, n: u32, k: u32, r: u32) -> Result<CheckReport> {
        if k >= n {
            return Err(invalid("horizontal recurrence needs k < n"));
        }
        let (n_, k_, r_) = (n as i64, k as i64, r as i64);
        let lhs = self.g(n_, k_, r);
        let rhs: Polynomial = (0..=k_)
            .map(|i| &lin(n_ + r_ - i - 1, k_ + r_ - i) * &self.g(n_ - i - 1, k_ - i, r))
            .sum();
        Ok(CheckReport::compare(
            IdentityId::Horizontal,
            Params::nkr(n, k, r),
            lhs,
            rhs,
        ))
    }

    /// `G(n,k;r+s) = sum_i C(n,i) G(i,k;r) prod_{j<n-i}(aj+(a+b)s)`.
    pub fn check_shift(&self, n: u32, k: u32, r: u32, s: u32) -> Result<CheckReport> {
        if k > n {
            return Err(invalid("shift identity needs k <= n"));
        }
        let lhs = self.g(n as i64, k as i64, r + s);
        let base = lin(s as i64, s as i64);
        let rhs: Polynomial = (k..=n)
            .map(|i| {
                let tail = Polynomial::range_product(&base, &a(), n - i);
                (&self.g(i as i64, k as i64, r) * &tail).scale(binomial(n as i64, i as i64))
            })
            .sum();
        Ok(CheckReport::compare(
            IdentityId::Shift,
            Params::nkrs(n, k, r, s),
            lhs,
            rhs,
        ))
    }

    /// `C(k+m,k) G(n,k+m;r+s) = sum_i C(n,i) G(i,k;r) G(n-i,m;s)`.
    pub fn check_convolution(&self, n: u32, k: u32, m: u32, r: u32, s: u32) -> Result<CheckReport> {
        if k + m > n {
            return Err(invalid("convolution needs k <= n - m"));
        }
        let lhs = self
            .g(n as i64, (k + m) as i64, r + s)
            .scale(binomial((k + m) as i64, k as i64));
        let rhs: Polynomial = (k..=n - m)
            .map(|i| {
                (&self.g(i as i64, k as i64, r) * &self.g((n - i) as i64, m as i64, s))
                    .scale(binomial(n as i64, i as i64))
            })
            .sum();
        Ok(CheckReport::compare(
            IdentityId::Convolution,
            Params {
                m: Some(m),
                ..Params::nkrs(n, k, r, s)
            },
            lhs,
            rhs,
        ))
    }

    /// Splits `[n+m+r]` at `m+r`: elements above the split either join blocks
    /// holding smaller elements or form an unrestricted Lah distribution.
    pub fn check_splitting(&self, n: u32, m: u32, k: u32, r: u32) -> CheckReport {
        let lhs = self.g((n + m) as i64, k as i64, r);
        let mut rhs = Polynomial::zero();
        for i in 0..=n {
            for j in 0..=m {
                let lower = self.g(i as i64, k as i64 - j as i64, 0);
                if lower.is_zero() {
                    continue;
                }
                let base = lin((m + r) as i64, (j + r) as i64);
                let tail = Polynomial::range_product(&base, &a(), n - i);
                let term = &(&self.g(m as i64, j as i64, r) * &lower) * &tail;
                rhs += term.scale(binomial(n as i64, i as i64));
            }
        }
        CheckReport::compare(
            IdentityId::Splitting,
            Params {
                m: Some(m),
                ..Params::nkr(n, k, r)
            },
            lhs,
            rhs,
        )
    }

    /// Row-sum form of the shift identity.
    pub fn check_rowsum_shift(&self, n: u32, r: u32, s: u32) -> CheckReport {
        let lhs = self.row_sum(n as i64, r + s);
        let base = lin(s as i64, s as i64);
        let rhs: Polynomial = (0..=n)
            .map(|i| {
                let tail = Polynomial::range_product(&base, &a(), n - i);
                (&self.row_sum(i as i64, r) * &tail).scale(binomial(n as i64, i as i64))
            })
            .sum();
        CheckReport::compare(
            IdentityId::RowsumShift,
            Params {
                s: Some(s),
                ..Params::nr(n, r)
            },
            lhs,
            rhs,
        )
    }

    /// Row-sum form of the splitting identity.
    pub fn check_rowsum_split(&self, n: u32, m: u32, r: u32) -> CheckReport {
        let lhs = self.row_sum((n + m) as i64, r);
        let mut rhs = Polynomial::zero();
        for i in 0..=n {
            let free = self.row_sum(i as i64, 0);
            for j in 0..=m {
                let base = lin((m + r) as i64, (j + r) as i64);
                let tail = Polynomial::range_product(&base, &a(), n - i);
                let term = &(&self.g(m as i64, j as i64, r) * &free) * &tail;
                rhs += term.scale(binomial(n as i64, i as i64));
            }
        }
        CheckReport::compare(
            IdentityId::RowsumSplit,
            Params {
                m: Some(m),
                ..Params::nr(n, r)
            },
            lhs,
            rhs,
        )
    }

    /// Row sum by the number of ordinary elements in distinguished blocks.
    pub fn check_rowsum_decomp(&self, n: u32, r: u32) -> CheckReport {
        let lhs = self.row_sum(n as i64, r);
        let base = lin(r as i64, r as i64);
        let rhs: Polynomial = (0..=n)
            .map(|i| {
                let placed = Polynomial::range_product(&base, &a(), i);
                (&self.row_sum((n - i) as i64, 0) * &placed).scale(binomial(n as i64, i as i64))
            })
            .sum();
        CheckReport::compare(IdentityId::RowsumDecomp, Params::nr(n, r), lhs, rhs)
    }

    fn rowsum_rec_sides(&self, n: u32, r: u32, marked: bool) -> (Polynomial, Polynomial) {
        let sum = |m: i64, rr: u32| {
            if marked {
                self.row_sum_marked(m, rr)
            } else {
                self.row_sum(m, rr)
            }
        };
        let lhs = sum(n as i64 + 1, r);
        let ab = lin(1, 1);
        let mut in_distinguished = Polynomial::zero();
        if r > 0 {
            for i in 0..=n {
                let arrange = Polynomial::range_product(&ab, &a(), i + 1);
                in_distinguished +=
                    (&sum((n - i) as i64, r - 1) * &arrange).scale(binomial(n as i64, i as i64));
            }
        }
        let mut in_ordinary = Polynomial::zero();
        for i in 0..=n {
            let arrange = Polynomial::range_product(&ab, &a(), i);
            in_ordinary += (&sum((n - i) as i64, r) * &arrange).scale(binomial(n as i64, i as i64));
        }
        if marked {
            in_ordinary = &in_ordinary * &Polynomial::var(Var::X);
        }
        (lhs, in_distinguished.scale(r) + in_ordinary)
    }

    /// Row-sum recurrence on whether the largest element sits in a distinguished block.
    pub fn check_rowsum_rec(&self, n: u32, r: u32) -> CheckReport {
        let (lhs, rhs) = self.rowsum_rec_sides(n, r, false);
        CheckReport::compare(IdentityId::RowsumRec, Params::nr(n, r), lhs, rhs)
    }

    /// The same recurrence with `x` marking non-distinguished blocks.
    pub fn check_marked_rec(&self, n: u32, r: u32) -> CheckReport {
        let (lhs, rhs) = self.rowsum_rec_sides(n, r, true);
        CheckReport::compare(IdentityId::MarkedRec, Params::nr(n, r), lhs, rhs)
    }

    fn lah(&self, n: i64, k: i64, r: u32) -> BigInt {
        self.cache.int(r, 1, 1, n, k)
    }

    fn cycle(&self, n: i64, k: i64, r: u32) -> BigInt {
        self.cache.int(r, 1, 0, n, k)
    }

    fn subset(&self, n: i64, k: i64, r: u32) -> BigInt {
        self.cache.int(r, 0, 1, n, k)
    }

    /// r-Lah self-convolution with alternating signs. For `r >= s` the closed
    /// form is a rising factorial; for `r < s` the equivalent falling form is
    /// checked and the report is tagged `RLAH_I_NEG`.
    pub fn check_rlah_i(&self, n: u32, k: u32, r: u32, s: u32) -> Result<CheckReport> {
        if k > n {
            return Err(invalid("needs k <= n"));
        }
        let (n_, k_) = (n as i64, k as i64);
        let choose = binomial(n_, k_);
        let (id, lhs, rhs) = if r >= s {
            let lhs = choose * rising(2 * (r as i64 - s as i64), n - k);
            let rhs: BigInt = (k_..=n_)
                .map(|j| sign(j - k_) * self.lah(n_, j, r) * self.lah(j, k_, s))
                .sum();
            (IdentityId::RlahI, lhs, rhs)
        } else {
            let lhs = choose * falling(2 * (s as i64 - r as i64), n - k);
            let rhs: BigInt = (k_..=n_)
                .map(|j| sign(n_ - j) * self.lah(n_, j, r) * self.lah(j, k_, s))
                .sum();
            (IdentityId::RlahINeg, lhs, rhs)
        };
        Ok(CheckReport::compare(
            id,
            Params::nkrs(n, k, r, s),
            int(lhs),
            int(rhs),
        ))
    }

    pub fn check_rlah_ii(&self, n: u32, k: u32, r: u32, s: u32) -> Result<CheckReport> {
        if k > n || 2 * r < s {
            return Err(invalid("identity (ii) needs k <= n and 2r >= s"));
        }
        let (n_, k_) = (n as i64, k as i64);
        let lhs = self.cycle(n_, k_, 2 * r - s);
        let rhs: BigInt = (k_..=n_)
            .map(|j| sign(j - k_) * self.lah(n_, j, r) * self.cycle(j, k_, s))
            .sum();
        Ok(CheckReport::compare(
            IdentityId::RlahII,
            Params::nkrs(n, k, r, s),
            int(lhs),
            int(rhs),
        ))
    }

    pub fn check_rlah_iii(&self, n: u32, k: u32, r: u32, s: u32) -> Result<CheckReport> {
        if k > n || 2 * s < r {
            return Err(invalid("identity (iii) needs k <= n and 2s >= r"));
        }
        let (n_, k_) = (n as i64, k as i64);
        let lhs = self.subset(n_, k_, 2 * s - r);
        let rhs: BigInt = (k_..=n_)
            .map(|j| sign(n_ - j) * self.subset(n_, j, r) * self.lah(j, k_, s))
            .sum();
        Ok(CheckReport::compare(
            IdentityId::RlahIII,
            Params::nkrs(n, k, r, s),
            int(lhs),
            int(rhs),
        ))
    }

    pub fn check_rlah_iv(&self, n: u32, k: u32, r: u32, s: u32) -> Result<CheckReport> {
        if k > n || !(r + s).is_multiple_of(2) {
            return Err(invalid(
                "identity (iv) needs k <= n and r, s of equal parity",
            ));
        }
        let (n_, k_) = (n as i64, k as i64);
        let lhs = self.lah(n_, k_, (r + s) / 2);
        let rhs: BigInt = (k_..=n_)
            .map(|j| self.cycle(n_, j, r) * self.subset(j, k_, s))
            .sum();
        Ok(CheckReport::compare(
            IdentityId::RlahIV,
            Params::nkrs(n, k, r, s),
            int(lhs),
            int(rhs),
        ))
    }

    /// `sum_j (-1)^{j-k} G(n,j;r) G'(j,k;r)` where `G'` uses `second` weights.
    pub fn orth_sum(&self, n: u32, k: u32, r: u32, second: &Weights) -> Polynomial {
        let left = self.cache.ab(r);
        let right = self.cache.get(second, r);
        (k..=n)
            .map(|j| {
                let term = left.get(n as i64, j as i64) * right.get(j as i64, k as i64);
                term.scale(sign((j - k) as i64))
            })
            .sum()
    }

    /// `delta_{n,k} = sum_j (-1)^{j-k} G_{a,b}(n,j;r) G_{b,a}(j,k;r)`.
    pub fn check_orth(&self, n: u32, k: u32, r: u32) -> Result<CheckReport> {
        if k > n {
            return Err(invalid("needs k <= n"));
        }
        let lhs = Polynomial::constant(i64::from(n == k));
        let rhs = self.orth_sum(n, k, r, &Weights::ba());
        Ok(CheckReport::compare(
            IdentityId::Orth,
            Params::nkr(n, k, r),
            lhs,
            rhs,
        ))
    }

    /// `G_{a,b}(n,k;r) = sum_j G_{a,t}(n,j;r) G_{-t,b}(j,k;r)`, symbolic in `a, b, t`.
    pub fn check_triple(&self, n: u32, k: u32, r: u32) -> Result<CheckReport> {
        if k > n {
            return Err(invalid("needs k <= n"));
        }
        let lhs = self.g(n as i64, k as i64, r);
        let left = self.cache.get(&Weights::at(), r);
        let right = self.cache.get(&Weights::neg_t_b(), r);
        let rhs: Polynomial = (k..=n)
            .map(|j| left.get(n as i64, j as i64) * right.get(j as i64, k as i64))
            .sum();
        Ok(CheckReport::compare(
            IdentityId::Triple,
            Params::nkr(n, k, r),
            lhs,
            rhs,
        ))
    }

    /// Round trip of the inverse pair
    /// `b_n = sum_k G_{a,b}(n,k;r) a_k  <=>  a_n = sum_k (-1)^{n-k} G_{b,a}(n,k;r) b_k`
    /// at integer weights, on pseudo-random sequences, in both directions.
    ///
    /// On failure the witness encodes the sequences as `sum u_n x^n + t * sum v_n x^n`
    /// (forward start `u`, reverse start `v`).
    pub fn check_inversion(
        &self,
        n_max: u32,
        r: u32,
        seed: u64,
        weights: (i64, i64),
    ) -> CheckReport {
        let (av, bv) = weights;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || -> Vec<BigInt> {
            (0..=n_max)
                .map(|_| BigInt::from(rng.gen_range(-1000i64..=1000)))
                .collect()
        };
        let forward = |seq: &[BigInt]| -> Vec<BigInt> {
            (0..=n_max as i64)
                .map(|n| {
                    (0..=n)
                        .map(|k| self.cache.int(r, av, bv, n, k) * &seq[k as usize])
                        .sum()
                })
                .collect()
        };
        let inverse = |seq: &[BigInt]| -> Vec<BigInt> {
            (0..=n_max as i64)
                .map(|n| {
                    (0..=n)
                        .map(|k| sign(n - k) * self.cache.int(r, bv, av, n, k) * &seq[k as usize])
                        .sum()
                })
                .collect()
        };
        let start_a = draw();
        let start_b = draw();
        let back_a = inverse(&forward(&start_a));
        let back_b = forward(&inverse(&start_b));
        let encode = |u: &[BigInt], v: &[BigInt]| -> Polynomial {
            let x = Polynomial::var(Var::X);
            let t = Polynomial::var(Var::T);
            let mut acc = Polynomial::zero();
            let mut xn = Polynomial::one();
            for (un, vn) in u.iter().zip(v) {
                acc += xn.scale(un.clone());
                acc += (&xn * &t).scale(vn.clone());
                xn = &xn * &x;
            }
            acc
        };
        let params = Params {
            seed: Some(seed),
            weights: Some(weights),
            ..Params::nr(n_max, r)
        };
        CheckReport::compare(
            IdentityId::Inversion,
            params,
            encode(&start_a, &start_b),
            encode(&back_a, &back_b),
        )
    }

    /// Dispatch one check by id. `Err` means the tuple violates the identity's
    /// precondition (or the id does not use one of the given slots).
    pub fn check(&self, id: IdentityId, p: &Params) -> Result<CheckReport> {
        let need =
            |v: Option<u32>, name: &str| v.ok_or_else(|| invalid(format!("{id} needs {name}")));
        let n = need(p.n, "n")?;
        let r = need(p.r, "r")?;
        match id {
            IdentityId::Connection => Ok(self.check_connection(n, r)),
            IdentityId::Vertical => self.check_vertical(n, need(p.k, "k")?, r),
            IdentityId::Horizontal => self.check_horizontal(n, need(p.k, "k")?, r),
            IdentityId::Shift => self.check_shift(n, need(p.k, "k")?, r, need(p.s, "s")?),
            IdentityId::Convolution => {
                self.check_convolution(n, need(p.k, "k")?, need(p.m, "m")?, r, need(p.s, "s")?)
            }
            IdentityId::Splitting => {
                Ok(self.check_splitting(n, need(p.m, "m")?, need(p.k, "k")?, r))
            }
            IdentityId::RowsumShift => Ok(self.check_rowsum_shift(n, r, need(p.s, "s")?)),
            IdentityId::RowsumSplit => Ok(self.check_rowsum_split(n, need(p.m, "m")?, r)),
            IdentityId::RowsumDecomp => Ok(self.check_rowsum_decomp(n, r)),
            IdentityId::RowsumRec => Ok(self.check_rowsum_rec(n, r)),
            IdentityId::MarkedRec => Ok(self.check_marked_rec(n, r)),
            IdentityId::RlahI | IdentityId::RlahINeg => {
                let s = need(p.s, "s")?;
                if (id == IdentityId::RlahI) != (r >= s) {
                    return Err(invalid(if r >= s {
                        "RLAH_I_NEG covers r < s"
                    } else {
                        "RLAH_I covers r >= s"
                    }));
                }
                self.check_rlah_i(n, need(p.k, "k")?, r, s)
            }
            IdentityId::RlahII => self.check_rlah_ii(n, need(p.k, "k")?, r, need(p.s, "s")?),
            IdentityId::RlahIII => self.check_rlah_iii(n, need(p.k, "k")?, r, need(p.s, "s")?),
            IdentityId::RlahIV => self.check_rlah_iv(n, need(p.k, "k")?, r, need(p.s, "s")?),
            IdentityId::Orth => self.check_orth(n, need(p.k, "k")?, r),
            IdentityId::Triple => self.check_triple(n, need(p.k, "k")?, r),
            IdentityId::Inversion => {
                let seed = p.seed.ok_or_else(|| invalid("INVERSION needs a seed"))?;
                let w = p
                    .weights
                    .ok_or_else(|| invalid("INVERSION needs weights"))?;
                Ok(self.check_inversion(n, r, seed, w))
            }
        }
    }
}

/// Parameter ranges for a sweep. `k = None` means every `k` the identity
/// admits for the current `n` (`0..=n`, or `0..=n+m` for splitting).
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub ids: Vec<IdentityId>,
    pub n: RangeInclusive<u32>,
    pub k: Option<RangeInclusive<u32>>,
    pub m: RangeInclusive<u32>,
    pub r: RangeInclusive<u32>,
    pub s: RangeInclusive<u32>,
    pub seeds: Vec<u64>,
    pub inversion_weights: Vec<(i64, i64)>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            ids: IdentityId::ALL.to_vec(),
            n: 0..=6,
            k: None,
            m: 0..=2,
            r: 0..=2,
            s: 0..=2,
            seeds: vec![42],
            inversion_weights: vec![(1, 1), (2, 3), (0, 1)],
        }
    }
}

impl SweepSpec {
    /// Deepest triangle row any selected check will read.
    pub fn depth(&self) -> u32 {
        let hi = |r: &RangeInclusive<u32>| if r.is_empty() { 0 } else { *r.end() };
        hi(&self.n) + hi(&self.m) + 1
    }

    /// Every `(id, params)` tuple in the Cartesian ranges, in canonical order.
    pub fn tuples(&self) -> Vec<(IdentityId, Params)> {
        let mut ids = self.ids.clone();
        ids.sort();
        ids.dedup();
        let mut out = Vec::new();
        for id in ids {
            for n in self.n.clone() {
                for r in self.r.clone() {
                    let base = Params::nr(n, r);
                    match id {
                        IdentityId::Connection
                        | IdentityId::RowsumDecomp
                        | IdentityId::RowsumRec
                        | IdentityId::MarkedRec => out.push((id, base)),
                        IdentityId::RowsumShift => {
                            for s in self.s.clone() {
                                out.push((id, Params { s: Some(s), ..base }));
                            }
                        }
                        IdentityId::RowsumSplit => {
                            for m in self.m.clone() {
                                out.push((id, Params { m: Some(m), ..base }));
                            }
                        }
                        IdentityId::Vertical
                        | IdentityId::Horizontal
                        | IdentityId::Orth
                        | IdentityId::Triple => {
                            for k in self.k_range(n) {
                                out.push((id, Params { k: Some(k), ..base }));
                            }
                        }
                        IdentityId::Shift
                        | IdentityId::RlahI
                        | IdentityId::RlahINeg
                        | IdentityId::RlahII
                        | IdentityId::RlahIII
                        | IdentityId::RlahIV => {
                            for k in self.k_range(n) {
                                for s in self.s.clone() {
                                    out.push((id, Params::nkrs(n, k, r, s)));
                                }
                            }
                        }
                        IdentityId::Convolution => {
                            for k in self.k_range(n) {
                                for m in self.m.clone() {
                                    for s in self.s.clone() {
                                        let p = Params {
                                            m: Some(m),
                                            ..Params::nkrs(n, k, r, s)
                                        };
                                        out.push((id, p));
                                    }
                                }
                            }
                        }
                        IdentityId::Splitting => {
                            for m in self.m.clone() {
                                for k in self.k_range(n + m) {
                                    let p = Params {
                                        m: Some(m),
                                        ..Params::nkr(n, k, r)
                                    };
                                    out.push((id, p));
                                }
                            }
                        }
                        IdentityId::Inversion => {
                            for &seed in &self.seeds {
                                for &w in &self.inversion_weights {
                                    let p = Params {
                                        seed: Some(seed),
                                        weights: Some(w),
                                        ..base
                                    };
                                    out.push((id, p));
                                }
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    fn k_range(&self, top: u32) -> RangeInclusive<u32> {
        match &self.k {
            Some(k) => *k.start()..=(*k.end()).min(top),
            None => 0..=top,
        }
    }
}

/// Outcome of a sweep: reports for every tuple that met its precondition,
/// plus the tuples that were skipped.
#[derive(Clone, Debug, Default)]
pub struct SweepResult {
    pub reports: Vec<CheckReport>,
    pub skipped: Vec<(IdentityId, Params)>,
}

impl SweepResult {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.reports.iter().filter(|r| !r.passed)
    }
}

/// Run every tuple of `spec` against `verifier`; results in canonical order.
pub fn sweep_with(verifier: &Verifier, spec: &SweepSpec, exec: Execution) -> SweepResult {
    let tuples = spec.tuples();
    let outcomes = exec::map(exec, tuples, |(id, p)| (id, p, verifier.check(id, &p)));
    let mut result = SweepResult::default();
    for (id, p, outcome) in outcomes {
        match outcome {
            Ok(report) => result.reports.push(report),
            Err(_) => result.skipped.push((id, p)),
        }
    }
    result
}

pub fn sweep(spec: &SweepSpec) -> SweepResult {
    let verifier = Verifier::new(spec.depth());
    sweep_with(&verifier, spec, Execution::default())
}
