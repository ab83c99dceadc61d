use alloc::vec::Vec;

use super::{DimError, Dimensions, TruncatedGradedPoly};
use crate::multiseg::{LambdaVec, Multisegment, Segment};
use crate::omodule::partitions;

/// Largest `n` accepted by [`steinberg_f`].
pub const MAX_STEINBERG: u32 = 8;

/// `[1,1] + ⋯ + [n,n]`.
pub fn steinberg(n: u32) -> Multisegment {
    let segs = (1..=i64::from(n)).map(|i| Segment::chi(i, i).expect("point segment"));
    Multisegment::canonicalize(segs).expect("single line")
}

fn check_bound(n: u32) -> Result<(), DimError> {
    if n == 0 || n > MAX_STEINBERG {
        return Err(DimError::Bound { what: "Steinberg index", got: n as usize, max: MAX_STEINBERG as usize });
    }
    Ok(())
}

/// `f_n = Σ_r (−1)^{n−r} Σ y_{n_1−n_0} ⋯ y_{n_r−n_{r−1}}` over compositions of `n`.
pub fn steinberg_f(n: u32) -> Result<TruncatedGradedPoly, DimError> {
    check_bound(n)?;
    let mut f = TruncatedGradedPoly::zero(n);
    // Bit `i` of `cuts` places a cut after `i + 1`.
    for cuts in 0u32..1 << (n - 1) {
        let mut term = TruncatedGradedPoly::one(n);
        let mut last = 0;
        let mut r = 0;
        for end in 1..=n {
            if end == n || cuts >> (end - 1) & 1 == 1 {
                term = &term * &TruncatedGradedPoly::y(end - last, n);
                last = end;
                r += 1;
            }
        }
        f = if (n - r).is_multiple_of(2) { &f + &term } else { &f - &term };
    }
    Ok(f)
}

/// The coefficient of `t^n` in `(−1)^n (1 − t) / (1 + Σ_i x_i t^i)`.
pub fn steinberg_series_coefficient(n: u32) -> Result<TruncatedGradedPoly, DimError> {
    check_bound(n)?;
    let mut inv: Vec<TruncatedGradedPoly> = Vec::with_capacity(n as usize + 1);
    inv.push(TruncatedGradedPoly::one(n));
    for k in 1..=n {
        let mut s = TruncatedGradedPoly::zero(n);
        for i in 1..=k {
            s = &s - &(&TruncatedGradedPoly::var(i, n) * &inv[(k - i) as usize]);
        }
        inv.push(s);
    }
    let c = &inv[n as usize] - &inv[n as usize - 1];
    Ok(if n.is_multiple_of(2) { c } else { -&c })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinbergReport {
    pub n: u32,
    pub prime: u64,
    pub f: TruncatedGradedPoly,
    pub in_ideal: bool,
    pub series_matches: bool,
    /// `ξ_M(f_n)` for every module of length at most `n − 2`.
    pub xi: Vec<(LambdaVec, i128)>,
}

impl SteinbergReport {
    pub fn passed(&self) -> bool {
        self.in_ideal && self.series_matches && self.xi.iter().all(|e| e.1 == 0)
    }
}

impl Dimensions {
    /// `ξ_M(P)`, sending a monomial `x_{m_1} ⋯ x_{m_s}` to the number of filtrations whose
    /// graded pieces need exactly `m_1, …, m_s` generators.
    pub fn xi(&mut self, shape: &LambdaVec, poly: &TruncatedGradedPoly) -> Result<i128, DimError> {
        let mut total = 0i128;
        for (mono, c) in poly.terms() {
            let gens: Vec<i64> = mono.iter().map(|&m| i64::from(m)).collect();
            total += i128::from(c) * self.counter().count_exact(shape, &gens)? as i128;
        }
        Ok(total)
    }

    /// `f_n ∈ I_{n−1}`, its series form, and `ξ_M(f_n) = 0` for `M` of length at most `n − 2`.
    pub fn steinberg_check(&mut self, n: u32) -> Result<SteinbergReport, DimError> {
        let f = steinberg_f(n)?;
        let in_ideal = f.in_ideal(n - 1);
        let series_matches = steinberg_series_coefficient(n)? == f;
        let mut xi = Vec::new();
        for size in 0..n.saturating_sub(1) {
            for shape in partitions(size, size as usize) {
                let v = self.xi(&shape, &f)?;
                xi.push((shape, v));
            }
        }
        Ok(SteinbergReport { n, prime: self.prime(), f, in_ideal, series_matches, xi })
    }
}
