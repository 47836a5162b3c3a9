//! Sparse multivariate polynomials over the fixed variable set `{a, b, x, t}`
//! with arbitrary-precision integer coefficients.
//!
//! Every identity in this crate is decided by comparing two [`Polynomial`]s in
//! canonical form: a term map with no zero coefficients. Two polynomials are
//! equal iff their term maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// One of the four indeterminates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    A,
    B,
    X,
    T,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::A, Var::B, Var::X, Var::T];

    fn index(self) -> usize {
        self as usize
    }

    fn symbol(self) -> &'static str {
        match self {
            Var::A => "a",
            Var::B => "b",
            Var::X => "x",
            Var::T => "t",
        }
    }
}

/// Exponent tuple `(deg_a, deg_b, deg_x, deg_t)`, ordered lexicographically.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 4]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (d, o) in e.iter_mut().zip(other.0.iter()) {
            *d += o;
        }
        Monomial(e)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let d = self.degree(v);
            if d == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(v.symbol())?;
            if d > 1 {
                write!(f, "^{d}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A polynomial in `a, b, x, t` with integer coefficients, kept in canonical
/// form (no zero coefficients are ever stored).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

/// The zero polynomial, for handing out references to out-of-range cells.
pub static ZERO: Polynomial = Polynomial {
    terms: BTreeMap::new(),
};

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn var(v: Var) -> Self {
        Self::term(1, Monomial::var(v))
    }

    pub fn term<T: Into<BigInt>>(c: T, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The value of a polynomial with no variables, or `None`.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// Highest power of `v` occurring in any term; 0 for the zero polynomial.
    pub fn degree(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.degree(v)).max().unwrap_or(0)
    }

    /// Set of total degrees (restricted to `vars`) over all terms.
    pub fn degree_in(&self, vars: &[Var]) -> Option<(u32, u32)> {
        let degs = self
            .terms
            .keys()
            .map(|m| vars.iter().map(|&v| m.degree(v)).sum::<u32>());
        degs.fold(None, |acc, d| match acc {
            None => Some((d, d)),
            Some((lo, hi)) => Some((lo.min(d), hi.max(d))),
        })
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale<T: Into<BigInt>>(&self, c: T) -> Polynomial {
        let c = c.into();
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, v)| (*m, v * &c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Polynomial::one(), |acc, _| &acc * self)
    }

    /// Substitute integers for the bound variables. Unbound variables are kept.
    pub fn eval(&self, bindings: &[(Var, i64)]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.0;
            for &(v, val) in bindings {
                let d = exps[v.index()];
                if d > 0 {
                    coeff *= num_traits::pow(BigInt::from(val), d as usize);
                    exps[v.index()] = 0;
                }
            }
            out.add_term(Monomial(exps), coeff);
        }
        out
    }

    /// Substitute a polynomial for a single variable.
    pub fn substitute(&self, v: Var, value: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        let mut powers = vec![Polynomial::one()];
        for (m, c) in &self.terms {
            let d = m.degree(v) as usize;
            while powers.len() <= d {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = m.0;
            rest[v.index()] = 0;
            let lead = Polynomial::term(c.clone(), Monomial(rest));
            out += &(&lead * &powers[d]);
        }
        out
    }

    /// `∏_{i=0}^{m-1} (base + i*step)`; the empty product is 1.
    pub fn range_product(base: &Polynomial, step: &Polynomial, m: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        let mut factor = base.clone();
        for _ in 0..m {
            acc = &acc * &factor;
            factor += step;
        }
        acc
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(c)
    }
}

impl From<BigInt> for Polynomial {
    fn from(c: BigInt) -> Self {
        Polynomial::constant(c)
    }
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Self {
        Polynomial::var(v)
    }
}

impl<'a> AddAssign<&'a Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &'a Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl AddAssign for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<'a> SubAssign<&'a Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &'a Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl SubAssign for Polynomial {
    fn sub_assign(&mut self, rhs: Polynomial) {
        *self -= &rhs;
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += rhs;
        self
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl<'a> MulAssign<&'a Polynomial> for Polynomial {
    fn mul_assign(&mut self, rhs: &'a Polynomial) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::one(), |acc, p| acc * p)
    }
}

/// Terms in descending lexicographic monomial order, e.g. `2*a*b + 3*b^2`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Polynomial {
        Polynomial::var(Var::A)
    }
    fn b() -> Polynomial {
        Polynomial::var(Var::B)
    }
    fn x() -> Polynomial {
        Polynomial::var(Var::X)
    }

    #[test]
    fn add_cancels_and_combines() {
        assert_eq!(&(&a() + &b()) + &(-b()), a());
        assert_eq!(&Polynomial::zero() + &x(), x());
        let ab = &a() * &b();
        assert_eq!(&ab.scale(2) + &ab.scale(3), ab.scale(5));
    }

    #[test]
    fn mul_examples() {
        let sum = &a() + &b();
        let diff = &a() - &b();
        assert_eq!(&sum * &diff, &a().pow(2) - &b().pow(2));
        assert!((&sum * &Polynomial::zero()).is_zero());
        let sq = &sum * &sum;
        assert_eq!(sq.to_string(), "a^2 + 2*a*b + b^2");
    }

    #[test]
    fn eval_examples() {
        let sum = &a() + &b();
        assert_eq!(
            sum.eval(&[(Var::A, 1), (Var::B, 1)]),
            Polynomial::constant(2)
        );
        let p = &a().pow(2) * &b();
        assert_eq!(p.eval(&[(Var::A, 2)]), b().scale(4));
        assert_eq!(x().eval(&[]), x());
    }

    #[test]
    fn range_product_examples() {
        let one = Polynomial::one();
        assert_eq!(Polynomial::range_product(&x(), &one, 0), one);
        assert_eq!(
            Polynomial::range_product(&x(), &one, 3).to_string(),
            "x^3 + 3*x^2 + 2*x"
        );
        assert_eq!(
            Polynomial::range_product(&x(), &-b(), 2).to_string(),
            "-b*x + x^2"
        );
    }

    #[test]
    fn rendering() {
        let p = &(&a() * &b()).scale(2) + &b().pow(2).scale(3);
        assert_eq!(p.to_string(), "2*a*b + 3*b^2");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::constant(-7).to_string(), "-7");
        let q = &(&x() - &Polynomial::var(Var::T)) - &Polynomial::one();
        assert_eq!(q.to_string(), "x - t - 1");
        assert_eq!((-a()).to_string(), "-a");
    }

    #[test]
    fn substitute_variable() {
        // (a + b)^2 with a -> -t
        let p = (&a() + &b()).pow(2);
        let q = p.substitute(Var::A, &-Polynomial::var(Var::T));
        let t = Polynomial::var(Var::T);
        assert_eq!(q, (&b() - &t).pow(2));
    }

    #[test]
    fn degree_queries() {
        let p = &(&a().pow(2) * &x()) + &b();
        assert_eq!(p.degree(Var::A), 2);
        assert_eq!(p.degree(Var::X), 1);
        assert_eq!(p.degree_in(&[Var::A, Var::B]), Some((1, 2)));
        assert_eq!(Polynomial::zero().degree_in(&[Var::A]), None);
    }
}
