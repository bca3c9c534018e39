//! Finite spaces under the Rosenbloom-Tsfasman (RT) metric.
//!
//! Three families are supported:
//!
//! * `Z_q^n`, words of length `n` over `{0, …, q-1}`;
//! * `S_n`, permutations of `{1, …, n}` in one-line form;
//! * direct products `X_1 × … × X_n` with `|X_i| = q_i`, coordinate `i`
//!   taking values in `{0, …, q_i - 1}`.
//!
//! Positions are 1-based everywhere in the public surface. The RT distance
//! between two points is the largest position where they disagree, or 0
//! when they are equal.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the alphabet size and on `n` accepted by the parser.
/// Anything larger is far past every enumeration limit anyway.
const MAX_PARAMETER: u64 = 1 << 20;

/// Description of a finite RT space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SpaceSpec {
    Zq { q: u32, n: usize },
    Sn { n: usize },
    Product { sizes: Vec<u32> },
}

impl SpaceSpec {
    pub fn zq(q: u32, n: usize) -> Result<Self> {
        let spec = SpaceSpec::Zq { q, n };
        spec.validate()?;
        Ok(spec)
    }

    pub fn sn(n: usize) -> Result<Self> {
        let spec = SpaceSpec::Sn { n };
        spec.validate()?;
        Ok(spec)
    }

    pub fn product(sizes: Vec<u32>) -> Result<Self> {
        let spec = SpaceSpec::Product { sizes };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceSpec::Zq { q, n } => {
                if *q < 2 {
                    return Err(Error::InvalidSpace(format!("q must be >= 2, got {q}")));
                }
                if *n < 1 {
                    return Err(Error::InvalidSpace("n must be >= 1".into()));
                }
            }
            SpaceSpec::Sn { n } => {
                if *n < 1 {
                    return Err(Error::InvalidSpace("n must be >= 1".into()));
                }
            }
            SpaceSpec::Product { sizes } => {
                if sizes.is_empty() {
                    return Err(Error::InvalidSpace("sizes must be nonempty".into()));
                }
                if let Some(bad) = sizes.iter().find(|&&s| s < 2) {
                    return Err(Error::InvalidSpace(format!(
                        "every size must be >= 2, got {bad}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Number of coordinates.
    pub fn length(&self) -> usize {
        match self {
            SpaceSpec::Zq { n, .. } | SpaceSpec::Sn { n } => *n,
            SpaceSpec::Product { sizes } => sizes.len(),
        }
    }

    /// Mixed-radix view of the space: the number of choices contributed by
    /// each position, 1-based position `i` at index `i - 1`.
    ///
    /// `S_n` has radices `1, 2, …, n`: fixing positions `d+1..n` leaves `d!`
    /// permutations and position `d` then takes `d` distinct values.
    pub fn radices(&self) -> Vec<u64> {
        match self {
            SpaceSpec::Zq { q, n } => vec![u64::from(*q); *n],
            SpaceSpec::Sn { n } => (1..=*n as u64).collect(),
            SpaceSpec::Product { sizes } => sizes.iter().map(|&s| u64::from(s)).collect(),
        }
    }

    /// `q^n`, `n!` or the product of the sizes.
    pub fn cardinality(&self) -> BigUint {
        self.radices()
            .into_iter()
            .fold(BigUint::one(), |acc, r| acc * BigUint::from(r))
    }

    /// The set of distances realized by distinct pairs, `dist(X)`.
    pub fn distance_values(&self) -> Vec<usize> {
        match self {
            SpaceSpec::Sn { n } => (2..=*n).collect(),
            _ => (1..=self.length()).collect(),
        }
    }

    pub fn admits_distance(&self, d: usize) -> bool {
        match self {
            SpaceSpec::Sn { n } => (2..=*n).contains(&d),
            _ => (1..=self.length()).contains(&d),
        }
    }

    /// Conventional mathematical name, e.g. `Z_3^4`, `S_5`, `X(2,3,2)`.
    pub fn math_name(&self) -> String {
        match self {
            SpaceSpec::Zq { q, n } => format!("Z_{q}^{n}"),
            SpaceSpec::Sn { n } => format!("S_{n}"),
            SpaceSpec::Product { sizes } => format!("X({})", join_numbers(sizes)),
        }
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.check_point(x).is_ok()
    }

    pub fn check_point(&self, x: &Point) -> Result<()> {
        let coords = x.coords();
        if coords.len() != self.length() {
            return Err(Error::InvalidPoint(format!(
                "{} has {} coordinates, {} expects {}",
                x,
                coords.len(),
                self.math_name(),
                self.length()
            )));
        }
        match self {
            SpaceSpec::Zq { q, .. } => {
                if let Some(pos) = coords.iter().position(|&c| c >= *q) {
                    return Err(Error::InvalidPoint(format!(
                        "coordinate {} of {} is outside 0..{}",
                        pos + 1,
                        x,
                        q - 1
                    )));
                }
            }
            SpaceSpec::Product { sizes } => {
                if let Some(pos) = coords.iter().zip(sizes).position(|(&c, &s)| c >= s) {
                    return Err(Error::InvalidPoint(format!(
                        "coordinate {} of {} is outside 0..{}",
                        pos + 1,
                        x,
                        sizes[pos] - 1
                    )));
                }
            }
            SpaceSpec::Sn { n } => {
                if !is_permutation(coords, *n) {
                    return Err(Error::InvalidPoint(format!(
                        "{x} is not a permutation of 1..{n}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// RT weight: the largest nonzero position of a word, or the largest
    /// non-fixed point of a permutation. Zero for the zero word and for the
    /// identity.
    pub fn weight(&self, x: &Point) -> Result<usize> {
        self.check_point(x)?;
        Ok(match self {
            SpaceSpec::Sn { .. } => perm_weight(x.coords()),
            _ => word_weight(x.coords()),
        })
    }

    /// RT distance between two points of this space.
    pub fn distance(&self, x: &Point, y: &Point) -> Result<usize> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(match self {
            SpaceSpec::Zq { q, .. } => zq_distance(*q, x.coords(), y.coords()),
            SpaceSpec::Sn { .. } => perm_distance(x.coords(), y.coords()),
            SpaceSpec::Product { .. } => disagreement_distance(x.coords(), y.coords()),
        })
    }

    /// Cardinality as a `usize`, failing when it exceeds `limit`.
    pub fn checked_cardinality(&self, limit: usize) -> Result<usize> {
        let card = self.cardinality();
        match card.to_usize() {
            Some(c) if c <= limit => Ok(c),
            _ => Err(Error::SizeLimit {
                what: self.math_name(),
                size: card.to_string(),
                limit,
            }),
        }
    }

    /// The point with the given vertex id in canonical order.
    ///
    /// Words and product tuples are counted in mixed radix with position 1
    /// least significant. Permutations are in lexicographic one-line order.
    pub fn unrank(&self, mut index: usize) -> Point {
        match self {
            SpaceSpec::Sn { n } => {
                let n = *n;
                let mut digits = vec![0usize; n];
                // factorial base, most significant digit first
                for (i, digit) in digits.iter_mut().enumerate().rev() {
                    let base = n - i;
                    *digit = index % base;
                    index /= base;
                }
                let mut pool: Vec<u32> = (1..=n as u32).collect();
                Point::new(digits.into_iter().map(|d| pool.remove(d)).collect())
            }
            _ => {
                let coords = self
                    .radices()
                    .into_iter()
                    .map(|r| {
                        let r = r as usize;
                        let c = index % r;
                        index /= r;
                        c as u32
                    })
                    .collect();
                Point::new(coords)
            }
        }
    }

    /// Inverse of [`SpaceSpec::unrank`].
    pub fn rank(&self, x: &Point) -> Result<usize> {
        self.check_point(x)?;
        let coords = x.coords();
        Ok(match self {
            SpaceSpec::Sn { n } => {
                let n = *n;
                let mut rank = 0usize;
                for i in 0..n {
                    let smaller_later = coords[i + 1..].iter().filter(|&&c| c < coords[i]).count();
                    rank = rank * (n - i) + smaller_later;
                }
                rank
            }
            _ => {
                let mut rank = 0usize;
                for (&c, r) in coords.iter().zip(self.radices()).rev() {
                    rank = rank * r as usize + c as usize;
                }
                rank
            }
        })
    }

    /// All points in canonical order. The index of a point is its vertex id.
    pub fn enumerate(&self, limit: usize) -> Result<Vec<Point>> {
        let card = self.checked_cardinality(limit)?;
        Ok(match self {
            SpaceSpec::Sn { n } => {
                let mut out = Vec::with_capacity(card);
                let mut current: Vec<u32> = (1..=*n as u32).collect();
                loop {
                    out.push(Point::new(current.clone()));
                    if !next_permutation(&mut current) {
                        break;
                    }
                }
                out
            }
            _ => {
                let radices = self.radices();
                let mut out = Vec::with_capacity(card);
                let mut current = vec![0u32; radices.len()];
                for _ in 0..card {
                    out.push(Point::new(current.clone()));
                    for (c, &r) in current.iter_mut().zip(&radices) {
                        *c += 1;
                        if u64::from(*c) < r {
                            break;
                        }
                        *c = 0;
                    }
                }
                out
            }
        })
    }

    /// Points `range` of the canonical order, for independent parallel chunks.
    pub fn enumerate_range(&self, range: std::ops::Range<usize>, limit: usize) -> Result<Vec<Point>> {
        let card = self.checked_cardinality(limit)?;
        let end = range.end.min(card);
        Ok((range.start.min(end)..end).map(|i| self.unrank(i)).collect())
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceSpec::Zq { q, n } => write!(f, "zq:q={q},n={n}"),
            SpaceSpec::Sn { n } => write!(f, "sn:n={n}"),
            SpaceSpec::Product { sizes } => write!(f, "product:sizes={}", join_numbers(sizes)),
        }
    }
}

impl FromStr for SpaceSpec {
    type Err = Error;

    /// Parses `zq:q=3,n=4`, `sn:n=5` or `product:sizes=2,3,2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, params) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidSpace(format!("expected <kind>:<params>, got {s:?}")))?;
        let params = params.trim();
        match kind.trim() {
            "zq" => {
                let mut q = None;
                let mut n = None;
                for part in params.split(',') {
                    let (key, value) = split_param(part)?;
                    match key {
                        "q" => q = Some(parse_parameter(value, "q")?),
                        "n" => n = Some(parse_parameter(value, "n")?),
                        other => {
                            return Err(Error::InvalidSpace(format!("unknown zq parameter {other:?}")))
                        }
                    }
                }
                let q = q.ok_or_else(|| Error::InvalidSpace("zq requires q".into()))?;
                let n = n.ok_or_else(|| Error::InvalidSpace("zq requires n".into()))?;
                SpaceSpec::zq(q as u32, n as usize)
            }
            "sn" => {
                let (key, value) = split_param(params)?;
                if key != "n" {
                    return Err(Error::InvalidSpace(format!("unknown sn parameter {key:?}")));
                }
                SpaceSpec::sn(parse_parameter(value, "n")? as usize)
            }
            "product" => {
                let (key, value) = split_param(params)?;
                if key != "sizes" {
                    return Err(Error::InvalidSpace(format!(
                        "unknown product parameter {key:?}"
                    )));
                }
                let sizes = value
                    .split(',')
                    .map(|v| parse_parameter(v, "sizes").map(|s| s as u32))
                    .collect::<Result<Vec<_>>>()?;
                SpaceSpec::product(sizes)
            }
            other => Err(Error::InvalidSpace(format!(
                "unknown space kind {other:?} (expected zq, sn or product)"
            ))),
        }
    }
}

impl Serialize for SpaceSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SpaceSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn split_param(part: &str) -> Result<(&str, &str)> {
    part.split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| Error::InvalidSpace(format!("expected key=value, got {part:?}")))
}

fn parse_parameter(value: &str, name: &str) -> Result<u64> {
    let v: u64 = value
        .trim()
        .parse()
        .map_err(|_| Error::InvalidSpace(format!("{name} must be an integer, got {value:?}")))?;
    if v > MAX_PARAMETER {
        return Err(Error::InvalidSpace(format!("{name}={v} is too large")));
    }
    Ok(v)
}

fn join_numbers<T: fmt::Display>(values: &[T]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// A point of a finite RT space: a word, a product tuple, or a permutation in
/// one-line form `(α(1), …, α(n))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<u32>);

impl Point {
    pub fn new(coords: Vec<u32>) -> Self {
        Point(coords)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<u32>> for Point {
    fn from(coords: Vec<u32>) -> Self {
        Point(coords)
    }
}

impl fmt::Display for Point {
    /// Comma-joined coordinates, as used for DOT labels.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_numbers(&self.0))
    }
}

/// Strictly increasing set of distances `d_1 < … < d_k`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DistanceSet(Vec<usize>);

impl DistanceSet {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        if let Some(w) = values.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidDistanceSet(format!(
                "values must be strictly increasing, found {} before {}",
                w[0], w[1]
            )));
        }
        if values.first() == Some(&0) {
            return Err(Error::InvalidDistanceSet("distances must be >= 1".into()));
        }
        Ok(DistanceSet(values))
    }

    pub fn empty() -> Self {
        DistanceSet(Vec::new())
    }

    /// Builds a set from arbitrary values, sorting and removing duplicates.
    pub fn from_unsorted(mut values: Vec<usize>) -> Result<Self> {
        values.sort_unstable();
        values.dedup();
        Self::new(values)
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, d: usize) -> bool {
        self.0.binary_search(&d).is_ok()
    }

    pub fn largest(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Checks `D ⊆ dist(space)`.
    pub fn check_for(&self, space: &SpaceSpec) -> Result<()> {
        match self.0.iter().find(|&&d| !space.admits_distance(d)) {
            Some(&value) => Err(Error::InvalidDistance {
                value,
                space: space.math_name(),
            }),
            None => Ok(()),
        }
    }

    /// Every nonempty subset of `dist(space)`, ordered by the bitmask over
    /// the sorted distance values.
    pub fn all_nonempty_for(space: &SpaceSpec) -> Vec<DistanceSet> {
        let values = space.distance_values();
        assert!(values.len() < 32, "too many distance values to enumerate subsets");
        (1u32..(1 << values.len()))
            .map(|mask| {
                DistanceSet(
                    values
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, &d)| d)
                        .collect(),
                )
            })
            .collect()
    }
}

impl TryFrom<Vec<usize>> for DistanceSet {
    type Error = Error;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        DistanceSet::new(values)
    }
}

impl From<DistanceSet> for Vec<usize> {
    fn from(set: DistanceSet) -> Self {
        set.0
    }
}

impl fmt::Display for DistanceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_numbers(&self.0))
    }
}

impl FromStr for DistanceSet {
    type Err = Error;

    /// Parses `"1,3"`. The empty string is the empty set.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(DistanceSet::empty());
        }
        let values = s
            .split(',')
            .map(|v| {
                v.trim().parse::<usize>().map_err(|_| {
                    Error::InvalidDistanceSet(format!("{:?} is not a nonnegative integer", v.trim()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        DistanceSet::new(values)
    }
}

/// Largest 1-based position holding a nonzero coordinate, 0 for the zero word.
pub fn word_weight(x: &[u32]) -> usize {
    x.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1)
}

/// `ω(x - y)` with the difference taken componentwise mod `q`.
pub fn zq_distance(q: u32, x: &[u32], y: &[u32]) -> usize {
    let diff: Vec<u32> = x
        .iter()
        .zip(y)
        .map(|(&a, &b)| (a + q - b) % q)
        .collect();
    word_weight(&diff)
}

/// Largest 1-based position where `x` and `y` disagree, 0 when equal.
pub fn disagreement_distance(x: &[u32], y: &[u32]) -> usize {
    x.iter()
        .zip(y)
        .rposition(|(a, b)| a != b)
        .map_or(0, |i| i + 1)
}

pub fn is_permutation(coords: &[u32], n: usize) -> bool {
    if coords.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    coords.iter().all(|&c| {
        let c = c as usize;
        (1..=n).contains(&c) && !std::mem::replace(&mut seen[c - 1], true)
    })
}

/// `(α∘β)(i) = α(β(i))`.
pub fn perm_compose(alpha: &[u32], beta: &[u32]) -> Result<Vec<u32>> {
    if alpha.len() != beta.len() {
        return Err(Error::LengthMismatch {
            left: alpha.len(),
            right: beta.len(),
        });
    }
    Ok(beta.iter().map(|&b| alpha[b as usize - 1]).collect())
}

pub fn perm_invert(alpha: &[u32]) -> Vec<u32> {
    let mut inverse = vec![0u32; alpha.len()];
    for (i, &a) in alpha.iter().enumerate() {
        inverse[a as usize - 1] = i as u32 + 1;
    }
    inverse
}

/// Largest non-fixed point, 0 for the identity.
pub fn perm_weight(alpha: &[u32]) -> usize {
    alpha
        .iter()
        .enumerate()
        .rposition(|(i, &a)| a as usize != i + 1)
        .map_or(0, |i| i + 1)
}

/// `ω(α⁻¹∘β)`.
pub fn perm_distance(alpha: &[u32], beta: &[u32]) -> usize {
    perm_distance_with_inverse(&perm_invert(alpha), beta)
}

/// `ω(α⁻¹∘β)` given `α⁻¹` directly, without allocating.
pub fn perm_distance_with_inverse(alpha_inv: &[u32], beta: &[u32]) -> usize {
    beta.iter()
        .enumerate()
        .rposition(|(i, &b)| alpha_inv[b as usize - 1] as usize != i + 1)
        .map_or(0, |i| i + 1)
}

/// Lexicographic successor in place; false when `v` was the last permutation.
fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}
