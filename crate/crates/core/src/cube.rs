//! The Boolean cube `{±1}^n`, its subsets, and its characters.
//!
//! Points are addressed by an index `idx < 2^n`: bit `i` of `idx` (least
//! significant first) is 0 when coordinate `x_{i+1} = +1` and 1 when
//! `x_{i+1} = -1`. Under this encoding the character `χ_S(x) = ∏_{i∈S} x_i`
//! is simply `(-1)^popcount(mask & idx)`, which keeps every transform an
//! integer XOR/popcount kernel.

use std::fmt;

use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

use crate::{Error, Rational, Result};

/// Largest supported dimension. A full spectrum holds `2^n` 64-bit entries
/// and every intermediate integer stays within `4^n ≤ 2^48`, so 24 keeps all
/// arithmetic inside `i64`/`i128` and the memory footprint under 128 MiB.
pub const MAX_DIM: u32 = 24;

/// Dimension of the cube, validated to `1..=MAX_DIM`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CubeDim(u32);

impl CubeDim {
    pub fn new(n: u32) -> Result<Self> {
        if (1..=MAX_DIM).contains(&n) {
            Ok(CubeDim(n))
        } else {
            Err(Error::DimensionOutOfRange { got: n })
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of points of the cube, `2^n`.
    pub fn points(self) -> u64 {
        1u64 << self.0
    }

    /// All-ones point index / character mask, `2^n - 1`.
    pub fn full_mask(self) -> u64 {
        self.points() - 1
    }
}

impl fmt::Display for CubeDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A character index `S ⊆ [n]`, stored as an n-bit mask with bit `i` set
/// iff `i+1 ∈ S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharMask {
    n: CubeDim,
    mask: u64,
}

impl CharMask {
    pub fn new(n: CubeDim, mask: u64) -> Result<Self> {
        if mask <= n.full_mask() {
            Ok(CharMask { n, mask })
        } else {
            Err(Error::MaskOutOfRange { mask, n: n.get() })
        }
    }

    pub fn n(&self) -> CubeDim {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Hamming weight `|S|`.
    pub fn weight(&self) -> u32 {
        self.mask.count_ones()
    }

    /// Evaluates `χ_S(x) = ∏_{i∈S} x_i` at the point with the given index.
    ///
    /// Returns `(-1)^popcount(mask & idx)`, i.e. +1 or -1.
    pub fn eval(&self, idx: u64) -> i64 {
        assert!(
            idx < self.n.points(),
            "point index {idx} out of range for n = {}",
            self.n
        );
        if (self.mask & idx).count_ones() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Group operation on characters: `χ_S · χ_T = χ_{S △ T}`.
    pub fn xor(&self, other: &CharMask) -> CharMask {
        assert_eq!(self.n, other.n, "mixed cube dimensions");
        CharMask {
            n: self.n,
            mask: self.mask ^ other.mask,
        }
    }
}

/// A subset `A ⊆ {±1}^n` as a bit-packed membership vector of `2^n` bits.
///
/// Immutable after construction; all operations produce new sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    n: CubeDim,
    words: Vec<u64>,
    size: u64,
}

fn word_count(points: u64) -> usize {
    points.div_ceil(64) as usize
}

impl PointSet {
    pub fn empty(n: CubeDim) -> Self {
        PointSet {
            n,
            words: vec![0; word_count(n.points())],
            size: 0,
        }
    }

    pub fn full(n: CubeDim) -> Self {
        let points = n.points();
        let mut words = vec![u64::MAX; word_count(points)];
        if points % 64 != 0 {
            *words.last_mut().unwrap() = (1u64 << (points % 64)) - 1;
        }
        PointSet {
            n,
            words,
            size: points,
        }
    }

    /// Builds the set with exactly the given point indices; duplicates are
    /// permitted and collapse.
    pub fn from_indices(n: CubeDim, indices: &[u64]) -> Result<Self> {
        let points = n.points();
        let mut words = vec![0u64; word_count(points)];
        for &idx in indices {
            if idx >= points {
                return Err(Error::PointOutOfRange {
                    index: idx,
                    n: n.get(),
                });
            }
            words[(idx / 64) as usize] |= 1u64 << (idx % 64);
        }
        let size = words.iter().map(|w| w.count_ones() as u64).sum();
        Ok(PointSet { n, words, size })
    }

    /// Builds the set of all points satisfying a predicate on the index.
    pub fn from_predicate(n: CubeDim, mut pred: impl FnMut(u64) -> bool) -> Self {
        let points = n.points();
        let mut words = vec![0u64; word_count(points)];
        for idx in 0..points {
            if pred(idx) {
                words[(idx / 64) as usize] |= 1u64 << (idx % 64);
            }
        }
        let size = words.iter().map(|w| w.count_ones() as u64).sum();
        PointSet { n, words, size }
    }

    /// Builds a set for `n ≤ 6` from a bare bitmap word (bit `i` = index `i`).
    pub fn from_bitmap_u64(n: CubeDim, bits: u64) -> Result<Self> {
        let points = n.points();
        if points > 64 {
            return Err(Error::DimensionOutOfRange { got: n.get() });
        }
        if points < 64 && bits >> points != 0 {
            return Err(Error::StrayBits { n: n.get() });
        }
        Ok(PointSet {
            n,
            words: vec![bits],
            size: bits.count_ones() as u64,
        })
    }

    pub fn n(&self) -> CubeDim {
        self.n
    }

    /// `|A|`, cached.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn is_full(&self) -> bool {
        self.size == self.n.points()
    }

    /// Density `α = |A| / 2^n`, an exact dyadic rational.
    pub fn density(&self) -> Rational {
        Rational::new(self.size as i128, self.n.points() as i128)
    }

    pub fn contains(&self, idx: u64) -> bool {
        assert!(idx < self.n.points(), "point index out of range");
        self.words[(idx / 64) as usize] >> (idx % 64) & 1 == 1
    }

    /// Iterates member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let bit = rest.trailing_zeros() as u64;
                    rest &= rest - 1;
                    Some(w as u64 * 64 + bit)
                }
            })
        })
    }

    /// One-point swap: removes `out`, inserts `inn`. Used by the local search.
    pub(crate) fn swap_one(&self, out: u64, inn: u64) -> PointSet {
        debug_assert!(self.contains(out) && !self.contains(inn));
        let mut words = self.words.clone();
        words[(out / 64) as usize] &= !(1u64 << (out % 64));
        words[(inn / 64) as usize] |= 1u64 << (inn % 64);
        PointSet {
            n: self.n,
            words,
            size: self.size,
        }
    }

    /// Serializes the bitmap as `ceil(2^n / 4)` lowercase hex digits,
    /// little-endian by byte with the LSB of the first byte holding index 0.
    pub fn to_hex(&self) -> String {
        let bits = self.n.points();
        if bits < 8 {
            // n = 1 or 2: a single hex digit carries the whole bitmap.
            return format!("{:x}", self.words[0] & 0xf);
        }
        let mut s = String::with_capacity((bits / 4) as usize);
        for byte_idx in 0..bits / 8 {
            let word = self.words[(byte_idx / 8) as usize];
            let byte = (word >> (8 * (byte_idx % 8))) & 0xff;
            s.push_str(&format!("{byte:02x}"));
        }
        s
    }

    /// Parses the format produced by [`PointSet::to_hex`].
    pub fn from_hex(n: CubeDim, s: &str) -> Result<Self> {
        let bits = n.points();
        let expected = bits.div_ceil(4) as usize;
        if s.len() != expected {
            return Err(Error::BadHexLength {
                n: n.get(),
                expected,
                got: s.len(),
            });
        }
        let digit = |c: char| c.to_digit(16).ok_or(Error::BadHexDigit(c));
        if bits < 8 {
            let value = digit(s.chars().next().unwrap())? as u64;
            if value >> bits != 0 {
                return Err(Error::StrayBits { n: n.get() });
            }
            return Ok(PointSet {
                n,
                words: vec![value],
                size: value.count_ones() as u64,
            });
        }
        let mut words = vec![0u64; word_count(bits)];
        let chars: Vec<char> = s.chars().collect();
        for byte_idx in 0..(bits / 8) as usize {
            let hi = digit(chars[2 * byte_idx])? as u64;
            let lo = digit(chars[2 * byte_idx + 1])? as u64;
            words[byte_idx / 8] |= (hi << 4 | lo) << (8 * (byte_idx % 8));
        }
        let size = words.iter().map(|w| w.count_ones() as u64).sum();
        Ok(PointSet { n, words, size })
    }
}

/// Named set families. `build` realizes a family at a given dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `{x : x_i = +1}` for a fixed coordinate `i`.
    Dictator { coord: u32 },
    /// `{x : x_1 = … = x_c = +1}`.
    Subcube { fixed: u32 },
    /// The n points with exactly one coordinate equal to +1.
    Weight1,
    /// Points with at most `r` coordinates equal to -1.
    Ball { radius: u32 },
    /// `m` distinct points drawn from a seeded ChaCha8 stream.
    Random { size: u64, seed: u64 },
}

impl Family {
    pub fn build(&self, n: CubeDim) -> Result<PointSet> {
        match *self {
            Family::Dictator { coord } => {
                if coord == 0 || coord > n.get() {
                    return Err(Error::MalformedFamily(format!(
                        "dictator coordinate {coord} out of range for n = {n}"
                    )));
                }
                let bit = 1u64 << (coord - 1);
                Ok(PointSet::from_predicate(n, |idx| idx & bit == 0))
            }
            Family::Subcube { fixed } => {
                if fixed > n.get() {
                    return Err(Error::MalformedFamily(format!(
                        "subcube fixes {fixed} coordinates but n = {n}"
                    )));
                }
                let low = if fixed == 0 { 0 } else { (1u64 << fixed) - 1 };
                Ok(PointSet::from_predicate(n, |idx| idx & low == 0))
            }
            Family::Weight1 => {
                let full = n.full_mask();
                let indices: Vec<u64> = (0..n.get()).map(|j| full ^ (1u64 << j)).collect();
                PointSet::from_indices(n, &indices)
            }
            Family::Ball { radius } => {
                if radius > n.get() {
                    return Err(Error::MalformedFamily(format!(
                        "ball radius {radius} out of range for n = {n}"
                    )));
                }
                Ok(PointSet::from_predicate(n, |idx| {
                    idx.count_ones() <= radius
                }))
            }
            Family::Random { size, seed } => {
                if size > n.points() {
                    return Err(Error::SampleTooLarge {
                        requested: size,
                        available: n.points(),
                    });
                }
                let indices = sample_distinct_points(n, size, seed);
                PointSet::from_indices(n, &indices)
            }
        }
    }

    /// Stable identifier used in sweep tables.
    pub fn name(&self) -> String {
        match *self {
            Family::Dictator { coord } => format!("dictator({coord})"),
            Family::Subcube { fixed } => format!("subcube({fixed})"),
            Family::Weight1 => "weight1".to_string(),
            Family::Ball { radius } => format!("ball({radius})"),
            Family::Random { size, seed } => format!("random({size},seed={seed})"),
        }
    }
}

/// Draws `m` distinct point indices by a partial Fisher-Yates shuffle of the
/// full index range, driven by ChaCha8 seeded with `seed`. Reproducible:
/// the same `(n, m, seed)` always yields the same set.
pub(crate) fn sample_distinct_points(n: CubeDim, m: u64, seed: u64) -> Vec<u64> {
    debug_assert!(m <= n.points());
    let mut pool: Vec<u32> = (0..n.points() as u32).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = m as usize;
    for i in 0..m {
        let j = rng.random_range(i..pool.len());
        pool.swap(i, j);
    }
    pool[..m].iter().map(|&idx| idx as u64).collect()
}
