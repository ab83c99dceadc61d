use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// A level vector stored as a partition: positive parts, descending.
///
/// Inside `Λ_n` it is the nondecreasing length-`n` vector obtained by reversing the
/// parts and padding on the left with zeros. The same vector is the type of a finite
/// module `⊕ Z/p^{λ_i}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LambdaVec {
    parts: Vec<u32>,
}

impl LambdaVec {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds from any list of parts; zeros are dropped and the rest sorted descending.
    pub fn from_parts(parts: impl IntoIterator<Item = u32>) -> Self {
        let mut parts: Vec<u32> = parts.into_iter().filter(|&x| x > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    /// Builds from a padded nondecreasing vector `(λ_1 ≤ ⋯ ≤ λ_n)`.
    pub fn from_padded(v: &[u32]) -> Option<Self> {
        if v.windows(2).any(|w| w[0] > w[1]) {
            return None;
        }
        Some(Self::from_parts(v.iter().copied()))
    }

    /// `count` parts equal to `value`.
    pub fn uniform(count: usize, value: u32) -> Self {
        Self::from_parts(core::iter::repeat_n(value, count))
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of nonzero parts (the minimal number of generators of the module).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// `|λ|`.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn max_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Componentwise sum of descending sequences.
    pub fn vee(&self, other: &Self) -> Self {
        let (long, short) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut parts = long.parts.clone();
        for (p, q) in parts.iter_mut().zip(&short.parts) {
            *p += q;
        }
        Self { parts }
    }

    /// The nondecreasing vector in `Λ_n`, or `None` if there are more than `n` parts.
    pub fn padded(&self, n: usize) -> Option<Vec<u32>> {
        if self.len() > n {
            return None;
        }
        let mut v = alloc::vec![0; n - self.len()];
        v.extend(self.parts.iter().rev());
        Some(v)
    }

    /// Lexicographic comparison of the padded vectors in `Λ_n`.
    ///
    /// The result does not depend on `n` once `n` covers both vectors, so `n` is only
    /// checked, and [`Ord`] uses the same order.
    pub fn lex_cmp(&self, other: &Self, n: usize) -> Option<Ordering> {
        if self.len() > n || other.len() > n {
            return None;
        }
        Some(self.cmp(other))
    }

    /// Conjugate partition.
    pub fn conjugate(&self) -> Self {
        let m = self.max_part();
        Self::from_parts((1..=m).map(|k| self.parts.iter().filter(|&&x| x >= k).count() as u32))
    }
}

impl Ord for LambdaVec {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.len().max(other.len());
        let a = self.padded(n).unwrap_or_default();
        let b = other.padded(n).unwrap_or_default();
        a.cmp(&b)
    }
}

impl PartialOrd for LambdaVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LambdaVec {
    /// Comma list of parts, `0` for the empty vector.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Padded display in `Λ_n`, e.g. `0^11,1,3,3,3`.
pub struct Padded<'a>(pub &'a LambdaVec, pub usize);

impl fmt::Display for Padded<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zeros = self.1.saturating_sub(self.0.len());
        let mut first = true;
        if zeros > 0 {
            if zeros == 1 {
                f.write_str("0")?;
            } else {
                write!(f, "0^{zeros}")?;
            }
            first = false;
        }
        for p in self.0.parts.iter().rev() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        if first {
            f.write_str("()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec;

    #[test]
    fn vee_is_right_aligned_addition() {
        let a = LambdaVec::from_parts([1]);
        let b = LambdaVec::from_parts([1, 1]);
        assert_eq!(a.vee(&b).parts(), &[2, 1]);
        assert_eq!(a.vee(&LambdaVec::empty()), a);
    }

    #[test]
    fn lex_order_on_padded_vectors() {
        // (0,1,3,3,3) vs (0,0,4,4,4): the second is smaller.
        let pi = LambdaVec::from_parts([3, 3, 3, 1]);
        let low = LambdaVec::from_parts([4, 4, 4]);
        assert!(low < pi);
        assert_eq!(low.lex_cmp(&pi, 15), Some(Ordering::Less));
        assert_eq!(low.lex_cmp(&pi, 3), None);
        assert!(LambdaVec::empty() < LambdaVec::from_parts([1]));
        assert!(LambdaVec::from_parts([5]) < LambdaVec::from_parts([1, 1]));
    }

    #[test]
    fn padded_forms() {
        let pi = LambdaVec::from_parts([3, 1, 3, 3]);
        assert_eq!(pi.padded(6).unwrap(), vec![0, 0, 1, 3, 3, 3]);
        assert_eq!(format!("{}", Padded(&pi, 15)), "0^11,1,3,3,3");
        assert_eq!(format!("{pi}"), "3,3,3,1");
        assert_eq!(format!("{}", LambdaVec::empty()), "0");
        assert_eq!(LambdaVec::from_padded(&[0, 2, 1]), None);
    }

    #[test]
    fn conjugate_partition() {
        assert_eq!(LambdaVec::from_parts([3, 1]).conjugate().parts(), &[2, 1, 1]);
    }
}
