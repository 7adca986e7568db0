use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::PointSet;
use crate::hypothesis::Classifier;
use crate::{CoreError, Result};

/// The labels a hypothesis assigns to the points of a finite set, bit `i`
/// for point `i`. Equivalently the subset of the set that the hypothesis
/// picks out.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Trace {
    len: usize,
    words: Vec<u64>,
}

impl Trace {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut t = Self::zeros(len);
        for i in 0..len {
            t.set(i, true);
        }
        t
    }

    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        let mut t = Self::zeros(0);
        for b in bits {
            t.push(b);
        }
        t
    }

    /// Low `len` bits of `mask`, bit `i` for point `i`.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        assert!(len <= 64);
        let mut t = Self::zeros(len);
        if len > 0 {
            t.words[0] = if len == 64 { mask } else { mask & ((1u64 << len) - 1) };
        }
        t
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(CoreError::Parameter(alloc::format!("invalid trace character {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }

    fn push(&mut self, b: bool) {
        if self.len % 64 == 0 {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, b);
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for trace of length {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        assert!(i < self.len, "bit {i} out of range for trace of length {}", self.len);
        let m = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = bool> + '_ {
        (0..self.len).map(|i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn complement(&self) -> Self {
        let mut t = self.clone();
        for w in &mut t.words {
            *w = !*w;
        }
        if self.len % 64 != 0 {
            let last = t.words.len() - 1;
            t.words[last] &= (1u64 << (self.len % 64)) - 1;
        }
        t
    }

    /// Bits at `positions`, in that order.
    pub fn restrict(&self, positions: &[Option<usize>]) -> Self {
        Self::from_bits(positions.iter().map(|p| p.is_some_and(|i| self.get(i))))
    }

    /// Number of positions where the two traces differ.
    pub fn hamming(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).map(|(a, b)| (a ^ b).count_ones() as usize).sum()
    }

    pub fn to_bit_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// Labels of `h` on every point of `points`.
pub fn trace<C: Classifier + ?Sized>(h: &C, points: &PointSet) -> Result<Trace> {
    if points.dim() != h.input_dim() {
        return Err(CoreError::DimensionMismatch { expected: h.input_dim(), found: points.dim() });
    }
    let mut t = Trace::zeros(points.len());
    for (i, p) in points.iter().enumerate() {
        if h.classify(p)? {
            t.set(i, true);
        }
    }
    Ok(t)
}
