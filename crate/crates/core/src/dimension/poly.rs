use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

/// Polynomials in `x_1, x_2, …` with `deg x_m = m`, dropping every term above a fixed degree.
///
/// A monomial is the ascending list of its variable indices, with repetition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedGradedPoly {
    degree: u32,
    terms: BTreeMap<Vec<u32>, i64>,
}

/// Weighted degree of a monomial.
pub fn monomial_degree(mono: &[u32]) -> u32 {
    mono.iter().sum()
}

impl TruncatedGradedPoly {
    pub fn zero(degree: u32) -> Self {
        Self { degree, terms: BTreeMap::new() }
    }

    pub fn constant(c: i64, degree: u32) -> Self {
        Self::zero(degree).with_term(Vec::new(), c)
    }

    pub fn one(degree: u32) -> Self {
        Self::constant(1, degree)
    }

    /// `x_m`, which is zero when `m` exceeds the truncation degree.
    pub fn var(m: u32, degree: u32) -> Self {
        assert!(m >= 1, "variables start at x_1");
        Self::zero(degree).with_term(alloc::vec![m], 1)
    }

    /// `y_m = 1 + x_1 + ⋯ + x_m`.
    pub fn y(m: u32, degree: u32) -> Self {
        (1..=m).fold(Self::one(degree), |acc, i| &acc + &Self::var(i, degree))
    }

    fn with_term(mut self, mut mono: Vec<u32>, c: i64) -> Self {
        mono.sort_unstable();
        self.add_term(mono, c);
        self
    }

    fn add_term(&mut self, mono: Vec<u32>, c: i64) {
        if c == 0 || monomial_degree(&mono) > self.degree {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn truncation(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], i64)> {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn coefficient(&self, mono: &[u32]) -> i64 {
        let mut key = mono.to_vec();
        key.sort_unstable();
        self.terms.get(&key).copied().unwrap_or(0)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| monomial_degree(m)).min()
    }

    /// Membership in `I_m`: every term has degree at least `m`.
    pub fn in_ideal(&self, m: u32) -> bool {
        self.min_degree().is_none_or(|d| d >= m)
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(k, _)| monomial_degree(k) == d).map(|(k, &v)| (k.clone(), v)).collect();
        Self { degree: self.degree, terms }
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(self.degree);
        for (k, &v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }
}

impl Add for &TruncatedGradedPoly {
    type Output = TruncatedGradedPoly;

    fn add(self, rhs: Self) -> TruncatedGradedPoly {
        let mut out = TruncatedGradedPoly::zero(self.degree.min(rhs.degree));
        for (k, &v) in self.terms.iter().chain(&rhs.terms) {
            out.add_term(k.clone(), v);
        }
        out
    }
}

impl Neg for &TruncatedGradedPoly {
    type Output = TruncatedGradedPoly;

    fn neg(self) -> TruncatedGradedPoly {
        self.scale(-1)
    }
}

impl Sub for &TruncatedGradedPoly {
    type Output = TruncatedGradedPoly;

    fn sub(self, rhs: Self) -> TruncatedGradedPoly {
        self + &(-rhs)
    }
}

impl Mul for &TruncatedGradedPoly {
    type Output = TruncatedGradedPoly;

    fn mul(self, rhs: Self) -> TruncatedGradedPoly {
        let degree = self.degree.min(rhs.degree);
        let mut out = TruncatedGradedPoly::zero(degree);
        for (k1, &v1) in &self.terms {
            let d1 = monomial_degree(k1);
            for (k2, &v2) in &rhs.terms {
                if d1 + monomial_degree(k2) > degree {
                    continue;
                }
                let mut mono = k1.clone();
                mono.extend_from_slice(k2);
                mono.sort_unstable();
                out.add_term(mono, v1 * v2);
            }
        }
        out
    }
}

impl fmt::Display for TruncatedGradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Vec<u32>, i64)> = self.terms.iter().map(|(k, &v)| (k, v)).collect();
        terms.sort_by_key(|(k, _)| (monomial_degree(k), (*k).clone()));
        for (i, (mono, c)) in terms.into_iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match (i, c < 0) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                _ => write!(f, " {sign} ")?,
            }
            let a = c.unsigned_abs();
            if mono.is_empty() {
                write!(f, "{a}")?;
                continue;
            }
            if a != 1 {
                write!(f, "{a}*")?;
            }
            let mut first = true;
            let mut j = 0;
            while j < mono.len() {
                let run = mono[j..].iter().take_while(|&&v| v == mono[j]).count();
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                write!(f, "x{}", mono[j])?;
                if run > 1 {
                    write!(f, "^{run}")?;
                }
                j += run;
            }
        }
        Ok(())
    }
}
