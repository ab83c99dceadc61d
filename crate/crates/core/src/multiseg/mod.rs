//! Segments, multisegments and their combinatorics.
//!
//! A multisegment is kept in canonical order: by line, then `b` descending, then `a`
//! descending. Equality of multisegments is equality of canonical sequences.

mod kz;
mod lambda;
mod ladder;
mod ops;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};
use core::fmt;

use thiserror::Error;

use crate::gradedpair::OracleError;

pub(crate) use ops::check_dual;
pub use kz::{kz_chain_count, kz_path_count};
pub use lambda::{LambdaVec, Padded};

/// The line used when none is given.
pub const DEFAULT_LINE: &str = "chi";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultisegError {
    #[error("invalid segment [{a},{b}]: start exceeds end")]
    InvalidSegment { a: i64, b: i64 },
    #[error("ramified line {0} needs conductor and dimension at least 1")]
    InvalidLabel(String),
    #[error("line {0} is used with conflicting cuspidal data")]
    ConflictingLine(String),
    #[error("operation needs a single cuspidal line")]
    MixedLines,
    #[error("operation needs unipotent segments, found line {0}")]
    Ramified(String),
    #[error("not a ladder")]
    NotLadder,
    #[error("edge count mismatch at {a}: chain method {chain}, path method {path}")]
    KzMismatch { a: i64, chain: u64, path: u64 },
    #[error("dual failed a consistency check: {0}")]
    DualCheck(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Cuspidal data of a line: an unramified character, or a ramified cuspidal with its
/// conductor and rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CuspidalLabel {
    Unipotent { line: String },
    Ramified { line: String, conductor: u32, dim: u32 },
}

impl CuspidalLabel {
    pub fn chi() -> Self {
        Self::unipotent(DEFAULT_LINE)
    }

    pub fn unipotent(line: &str) -> Self {
        Self::Unipotent { line: line.to_string() }
    }

    pub fn ramified(line: &str, conductor: u32, dim: u32) -> Result<Self, MultisegError> {
        if conductor == 0 || dim == 0 {
            return Err(MultisegError::InvalidLabel(line.to_string()));
        }
        Ok(Self::Ramified { line: line.to_string(), conductor, dim })
    }

    pub fn line(&self) -> &str {
        match self {
            Self::Unipotent { line } | Self::Ramified { line, .. } => line,
        }
    }

    pub fn is_unipotent(&self) -> bool {
        matches!(self, Self::Unipotent { .. })
    }

    /// Conductor of the cuspidal, 0 for an unramified character.
    pub fn conductor(&self) -> u32 {
        match self {
            Self::Unipotent { .. } => 0,
            Self::Ramified { conductor, .. } => *conductor,
        }
    }

    /// Rank `d_ρ` of the cuspidal.
    pub fn dim(&self) -> u32 {
        match self {
            Self::Unipotent { .. } => 1,
            Self::Ramified { dim, .. } => *dim,
        }
    }
}

impl Default for CuspidalLabel {
    fn default() -> Self {
        Self::chi()
    }
}

impl fmt::Display for CuspidalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Unipotent { line } => f.write_str(line),
            Self::Ramified { line, conductor, dim } => write!(f, "{line}(c={conductor},d={dim})"),
        }
    }
}

/// A segment `[a,b]` on a cuspidal line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    label: CuspidalLabel,
    a: i64,
    b: i64,
}

impl Segment {
    pub fn new(label: CuspidalLabel, a: i64, b: i64) -> Result<Self, MultisegError> {
        if a > b {
            return Err(MultisegError::InvalidSegment { a, b });
        }
        Ok(Self { label, a, b })
    }

    /// A segment on the default unipotent line.
    pub fn chi(a: i64, b: i64) -> Result<Self, MultisegError> {
        Self::new(CuspidalLabel::chi(), a, b)
    }

    pub fn label(&self) -> &CuspidalLabel {
        &self.label
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// `l(Δ) = b − a + 1`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> u32 {
        (self.b - self.a + 1) as u32
    }

    /// `n(Δ) = d_ρ · l(Δ)`.
    pub fn rank(&self) -> u32 {
        self.label.dim() * self.len()
    }

    pub fn contains(&self, other: &Segment) -> bool {
        self.a <= other.a && other.b <= self.b
    }

    pub fn contains_point(&self, x: i64) -> bool {
        self.a <= x && x <= self.b
    }

    /// Two segments on the same line are linked when their union is a segment and
    /// neither contains the other.
    pub fn is_linked(&self, other: &Segment) -> bool {
        if self.label != other.label {
            return false;
        }
        let (s, t) = if self.a <= other.a { (self, other) } else { (other, self) };
        s.a < t.a && s.b < t.b && t.a <= s.b + 1
    }

    pub(crate) fn with_bounds(&self, a: i64, b: i64) -> Segment {
        Segment { label: self.label.clone(), a, b }
    }

    fn order_key(&self) -> (&str, &CuspidalLabel, Reverse<i64>, Reverse<i64>) {
        (self.label.line(), &self.label, Reverse(self.b), Reverse(self.a))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)?;
        match &self.label {
            CuspidalLabel::Unipotent { line } if line == DEFAULT_LINE => Ok(()),
            label => write!(f, "@{label}"),
        }
    }
}

/// A finite multiset of segments in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multisegment {
    segs: Vec<Segment>,
}

impl Multisegment {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Sorts into canonical order, rejecting lines used with two different labels.
    pub fn canonicalize(raw: impl IntoIterator<Item = Segment>) -> Result<Self, MultisegError> {
        let mut segs: Vec<Segment> = raw.into_iter().collect();
        let mut seen: BTreeMap<&str, &CuspidalLabel> = BTreeMap::new();
        for s in &segs {
            if let Some(prev) = seen.insert(s.label.line(), &s.label) {
                if prev != &s.label {
                    return Err(MultisegError::ConflictingLine(s.label.line().to_string()));
                }
            }
        }
        segs.sort();
        Ok(Self { segs })
    }

    /// Segments `[a,b]` on the default line.
    pub fn from_bounds(bounds: &[(i64, i64)]) -> Result<Self, MultisegError> {
        let segs = bounds
            .iter()
            .map(|&(a, b)| Segment::chi(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        Self::canonicalize(segs)
    }

    /// Builds from segments already known to share consistent labels.
    pub(crate) fn from_sorted_unchecked(mut segs: Vec<Segment>) -> Self {
        segs.sort();
        Self { segs }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    /// `Card(m)`, with multiplicity.
    pub fn card(&self) -> usize {
        self.segs.len()
    }

    /// `l(m) = Σ l(Δ)`.
    pub fn len(&self) -> u32 {
        self.segs.iter().map(Segment::len).sum()
    }

    /// `Σ n(Δ)`, the `n` of `GL_n`.
    pub fn rank(&self) -> u32 {
        self.segs.iter().map(Segment::rank).sum()
    }

    pub fn is_unipotent(&self) -> bool {
        self.segs.iter().all(|s| s.label.is_unipotent())
    }

    /// Multiset sum.
    pub fn sum(&self, other: &Self) -> Result<Self, MultisegError> {
        Self::canonicalize(self.segs.iter().chain(&other.segs).cloned())
    }

    /// Multiplicity of a segment.
    pub fn multiplicity(&self, s: &Segment) -> usize {
        self.segs.iter().filter(|t| *t == s).count()
    }

    /// Sub-multisegments by line, in line order.
    pub fn lines(&self) -> Vec<Multisegment> {
        let mut out: Vec<Multisegment> = Vec::new();
        for s in &self.segs {
            match out.last_mut() {
                Some(m) if m.segs[0].label == s.label => m.segs.push(s.clone()),
                _ => out.push(Multisegment { segs: alloc::vec![s.clone()] }),
            }
        }
        out
    }

    /// The single line label, `None` for the empty multisegment.
    pub fn single_label(&self) -> Result<Option<&CuspidalLabel>, MultisegError> {
        let Some(first) = self.segs.first() else { return Ok(None) };
        if self.segs.iter().any(|s| s.label != first.label) {
            return Err(MultisegError::MixedLines);
        }
        Ok(Some(&first.label))
    }

    pub(crate) fn single_unipotent(&self) -> Result<(), MultisegError> {
        match self.single_label()? {
            Some(l) if !l.is_unipotent() => Err(MultisegError::Ramified(l.line().to_string())),
            _ => Ok(()),
        }
    }

    /// Number of segments containing the point `x`.
    pub fn point_count(&self, x: i64) -> usize {
        self.segs.iter().filter(|s| s.contains_point(x)).count()
    }

    /// Number of segments containing `[x, x+1]`.
    pub fn edge_count(&self, x: i64) -> usize {
        self.segs.iter().filter(|s| s.a <= x && x < s.b).count()
    }

    /// Smallest start and largest end over all segments.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = self.segs.iter().map(|s| s.a).min()?;
        let hi = self.segs.iter().map(|s| s.b).max()?;
        Some((lo, hi))
    }

    /// True when no two segments are linked.
    pub fn is_unlinked(&self) -> bool {
        self.segs
            .iter()
            .enumerate()
            .all(|(i, s)| self.segs[i + 1..].iter().all(|t| !s.is_linked(t)))
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segs.is_empty() {
            return f.write_str("0");
        }
        for (i, s) in self.segs.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) fn ms(bounds: &[(i64, i64)]) -> Multisegment {
    Multisegment::from_bounds(bounds).unwrap()
}
