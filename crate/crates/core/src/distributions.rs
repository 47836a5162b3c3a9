//! r-Lah distributions: partitions of `[n+r]` into contents-ordered blocks in
//! which the `r` smallest labels lie in distinct blocks.
//!
//! Provides the record-low statistics, an exhaustive generator, and the
//! brute-force weight sum used as an independent oracle for the recurrence.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};

/// Default bound on `n + r` for exhaustive enumeration.
pub const DEFAULT_CAP: u32 = 9;

/// Which subset of the r-Lah distributions to generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Every member of `L_r(n,k)`.
    All,
    /// Blocks start with their smallest element (counted by r-Stirling cycle numbers).
    MinFirst,
    /// Blocks are increasing (counted by r-Stirling subset numbers).
    Increasing,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LahDistribution {
    n: u32,
    r: u32,
    blocks: Vec<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StatPair {
    pub nrec: u32,
    pub rec_star: u32,
}

impl LahDistribution {
    /// Validate and canonicalize (blocks sorted by their minimum).
    pub fn new(n: u32, r: u32, mut blocks: Vec<Vec<u32>>) -> Result<Self> {
        let size = (n + r) as usize;
        let mut seen = vec![false; size + 1];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::Malformed("empty block".into()));
            }
            let mut distinguished = 0;
            for &e in block {
                if e == 0 || e as usize > size {
                    return Err(Error::Malformed(format!("label {e} outside [1,{size}]")));
                }
                if std::mem::replace(&mut seen[e as usize], true) {
                    return Err(Error::Malformed(format!("label {e} repeated")));
                }
                if e <= r {
                    distinguished += 1;
                }
            }
            if distinguished > 1 {
                return Err(Error::Malformed(
                    "two distinguished labels share a block".into(),
                ));
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::Malformed("labels do not cover [n+r]".into()));
        }
        blocks.sort_by_key(|b| *b.iter().min().unwrap());
        Ok(LahDistribution { n, r, blocks })
    }

    /// Parse the textual form `(1,5,3)|(2,9)|(6)`; `n` is inferred from the labels.
    pub fn parse(s: &str, r: u32) -> Result<Self> {
        let s = s.trim();
        let mut blocks = Vec::new();
        if !s.is_empty() {
            for part in s.split('|') {
                let inner = part
                    .trim()
                    .strip_prefix('(')
                    .and_then(|p| p.strip_suffix(')'))
                    .ok_or_else(|| Error::Malformed(format!("bad block {part:?}")))?;
                let block = inner
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Malformed(format!("bad label {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                blocks.push(block);
            }
        }
        let total: usize = blocks.iter().map(Vec::len).sum();
        let n = (total as u32)
            .checked_sub(r)
            .ok_or_else(|| Error::Malformed("fewer labels than r".into()))?;
        Self::new(n, r, blocks)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Number of non-distinguished blocks.
    pub fn k(&self) -> u32 {
        self.blocks.len() as u32 - self.r
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Vec<u32>> {
        self.blocks
    }

    pub fn is_canonical(&self) -> bool {
        self.blocks
            .windows(2)
            .all(|w| w[0].iter().min() < w[1].iter().min())
    }

    pub fn is_min_first(&self) -> bool {
        self.blocks.iter().all(|b| b[0] == *b.iter().min().unwrap())
    }

    pub fn is_increasing(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.windows(2).all(|w| w[0] < w[1]))
    }

    pub fn matches(&self, mode: Mode) -> bool {
        match mode {
            Mode::All => true,
            Mode::MinFirst => self.is_min_first(),
            Mode::Increasing => self.is_increasing(),
        }
    }

    /// Labels with no smaller label to their left within their block.
    pub fn record_lows(&self) -> BTreeSet<u32> {
        let mut lows = BTreeSet::new();
        for block in &self.blocks {
            let mut least = u32::MAX;
            for &e in block {
                if e < least {
                    lows.insert(e);
                    least = e;
                }
            }
        }
        lows
    }

    pub fn stats(&self) -> StatPair {
        let lows = self.record_lows().len() as u32;
        StatPair {
            nrec: self.n + self.r - lows,
            rec_star: lows - self.blocks.len() as u32,
        }
    }

    /// `a^nrec * b^rec*`.
    pub fn weight(&self) -> Polynomial {
        let s = self.stats();
        Polynomial::term(1, Monomial([s.nrec, s.rec_star, 0, 0]))
    }
}

impl fmt::Display for LahDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            f.write_str("(")?;
            for (j, e) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Depth-first generator for `L_r(n,k)` (or one of its subsets).
///
/// Element `m+1` is inserted into a distribution of `[m]` as a new singleton,
/// at the front of an existing block, or directly after an existing element.
/// Because the inserted label is always the largest so far, blocks stay in
/// canonical order and every distribution has a unique parent.
pub struct Enumerator {
    n: u32,
    r: u32,
    target_blocks: usize,
    mode: Mode,
    stack: Vec<(Vec<Vec<u32>>, u32)>,
}

impl Enumerator {
    fn children(&self, blocks: &[Vec<u32>], m: u32) -> Vec<Vec<Vec<u32>>> {
        let e = m + 1;
        let mut out = Vec::new();
        let mut single = blocks.to_vec();
        single.push(vec![e]);
        out.push(single);
        if self.mode == Mode::All {
            for bi in 0..blocks.len() {
                let mut c = blocks.to_vec();
                c[bi].insert(0, e);
                out.push(c);
            }
        }
        for y in 1..=m {
            let (bi, pos) = locate(blocks, y);
            if self.mode == Mode::Increasing && pos + 1 != blocks[bi].len() {
                continue;
            }
            let mut c = blocks.to_vec();
            c[bi].insert(pos + 1, e);
            out.push(c);
        }
        out
    }
}

fn locate(blocks: &[Vec<u32>], label: u32) -> (usize, usize) {
    for (bi, b) in blocks.iter().enumerate() {
        if let Some(pos) = b.iter().position(|&e| e == label) {
            return (bi, pos);
        }
    }
    unreachable!("label {label} not present")
}

impl Iterator for Enumerator {
    type Item = LahDistribution;

    fn next(&mut self) -> Option<LahDistribution> {
        let total = self.n + self.r;
        while let Some((blocks, m)) = self.stack.pop() {
            if blocks.len() > self.target_blocks
                || blocks.len() + ((total - m) as usize) < self.target_blocks
            {
                continue;
            }
            if m == total {
                return Some(LahDistribution {
                    n: self.n,
                    r: self.r,
                    blocks,
                });
            }
            let mut kids = self.children(&blocks, m);
            kids.reverse();
            self.stack.extend(kids.into_iter().map(|c| (c, m + 1)));
        }
        None
    }
}

pub fn enumerate(n: u32, k: u32, r: u32, mode: Mode) -> Result<Enumerator> {
    enumerate_capped(n, k, r, mode, DEFAULT_CAP)
}

pub fn enumerate_capped(n: u32, k: u32, r: u32, mode: Mode, cap: u32) -> Result<Enumerator> {
    if n + r > cap {
        return Err(Error::SizeLimit { size: n + r, cap });
    }
    let stack = if k <= n {
        vec![((1..=r).map(|i| vec![i]).collect(), r)]
    } else {
        Vec::new()
    };
    Ok(Enumerator {
        n,
        r,
        target_blocks: (k + r) as usize,
        mode,
        stack,
    })
}

/// `Σ a^nrec b^rec*` over `L_r(n,k)`, by exhaustive enumeration.
pub fn oracle_g(n: u32, k: u32, r: u32) -> Result<Polynomial> {
    oracle_g_capped(n, k, r, DEFAULT_CAP)
}

pub fn oracle_g_capped(n: u32, k: u32, r: u32, cap: u32) -> Result<Polynomial> {
    let mut acc = Polynomial::zero();
    for d in enumerate_capped(n, k, r, Mode::All, cap)? {
        acc += d.weight();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;

    #[test]
    fn record_lows_of_worked_example() {
        let d = LahDistribution::parse("(1,5,3)|(8,4,7,2,9)|(6)", 0).unwrap();
        let lows: Vec<u32> = d.record_lows().into_iter().collect();
        assert_eq!(lows, [1, 2, 4, 6, 8]);
        assert_eq!(
            d.stats(),
            StatPair {
                nrec: 4,
                rec_star: 2
            }
        );
        assert_eq!(d.to_string(), "(1,5,3)|(8,4,7,2,9)|(6)");
    }

    #[test]
    fn monotone_blocks() {
        let dec = LahDistribution::parse("(3,2,1)", 0).unwrap();
        assert_eq!(dec.record_lows().len(), 3);
        let inc = LahDistribution::parse("(1,2,3)", 0).unwrap();
        assert_eq!(inc.record_lows().into_iter().collect::<Vec<_>>(), [1]);
        let single = LahDistribution::parse("(2,1,3)", 0).unwrap();
        assert_eq!(
            single.stats(),
            StatPair {
                nrec: 1,
                rec_star: 1
            }
        );
        let singles = LahDistribution::parse("(1)|(2)|(3)", 1).unwrap();
        assert_eq!(
            singles.stats(),
            StatPair {
                nrec: 0,
                rec_star: 0
            }
        );
    }

    #[test]
    fn validation() {
        assert!(LahDistribution::new(1, 2, vec![vec![1, 2], vec![3]]).is_err());
        assert!(LahDistribution::new(1, 0, vec![vec![2]]).is_err());
        assert!(LahDistribution::new(2, 0, vec![vec![1], vec![1, 2]]).is_err());
        let d = LahDistribution::new(2, 1, vec![vec![3], vec![2, 1]]).unwrap();
        assert_eq!(d.to_string(), "(2,1)|(3)");
        assert_eq!(d.k(), 1);
    }

    #[test]
    fn small_enumerations() {
        let only: Vec<_> = enumerate(0, 0, 3, Mode::All).unwrap().collect();
        assert_eq!(only.len(), 1);
        assert_eq!(only[0].to_string(), "(1)|(2)|(3)");

        let two: Vec<String> = enumerate(2, 1, 0, Mode::All)
            .unwrap()
            .map(|d| d.to_string())
            .collect();
        assert_eq!(two, ["(2,1)", "(1,2)"]);

        assert_eq!(enumerate(4, 2, 0, Mode::Increasing).unwrap().count(), 7);
        assert_eq!(enumerate(4, 2, 0, Mode::MinFirst).unwrap().count(), 11);
        assert_eq!(enumerate(3, 4, 0, Mode::All).unwrap().count(), 0);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate(8, 2, 2, Mode::All),
            Err(Error::SizeLimit { size: 10, cap: 9 })
        ));
        assert!(enumerate_capped(8, 8, 2, Mode::All, 10).is_ok());
    }

    #[test]
    fn oracle_small_cells() {
        assert_eq!(oracle_g(1, 1, 0).unwrap(), Polynomial::one());
        let a_plus_b = &Polynomial::var(Var::A) + &Polynomial::var(Var::B);
        assert_eq!(oracle_g(2, 1, 0).unwrap(), a_plus_b);
    }

    #[test]
    fn generated_members_are_valid_and_distinct() {
        for r in 0..3 {
            for n in 0..5 {
                for k in 0..=n {
                    for mode in [Mode::All, Mode::MinFirst, Mode::Increasing] {
                        let all: Vec<_> = enumerate(n, k, r, mode).unwrap().collect();
                        let set: BTreeSet<_> = all.iter().cloned().collect();
                        assert_eq!(set.len(), all.len());
                        for d in &all {
                            let again = LahDistribution::new(n, r, d.blocks().to_vec()).unwrap();
                            assert_eq!(&again, d);
                            assert!(d.is_canonical() && d.matches(mode));
                            assert_eq!(d.k(), k);
                        }
                    }
                }
            }
        }
    }
}
