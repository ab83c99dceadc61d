//! Finite modules over `Z_p`, their submodules and filtration counts.
//!
//! A module of type `λ` is `⊕ Z/p^{λ_i}`, elements indexed in mixed radix with the
//! largest part most significant. Submodules are listed by a Goursat recursion that
//! peels off one cyclic summand at a time, so each one is produced exactly once.

mod bitset;
mod count;
mod lattice;

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::multiseg::LambdaVec;

pub use bitset::Bitset;
pub use count::{count_by_type, FiltrationCounter, HallTable, LevelOracle};
pub use lattice::{vee_complement, vee_factorizations, ExactTable, Filtration, Lattice};

/// Default cap on `|M|` as a power of `p`.
pub const DEFAULT_MAX_LENGTH: u32 = 12;
/// Default cap on the predicted number of submodules.
pub const DEFAULT_MAX_SUBMODULES: u128 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("{0} is not a supported prime")]
    BadPrime(u64),
    #[error("module of type ({shape}) exceeds the size bound: length {length}, about {submodules} submodules")]
    SizeBound { shape: LambdaVec, length: u32, submodules: u128 },
    #[error("element set is not a submodule")]
    NotSubmodule,
    #[error("sub and quotient sizes {sub} + {quot} do not add up to {total}")]
    LengthMismatch { sub: u32, quot: u32, total: u32 },
    #[error("bounds do not fit: {0}")]
    Bounds(alloc::string::String),
    #[error("internal invariant violated: {0}")]
    Invariant(alloc::string::String),
}

/// Size guardrails for enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeLimits {
    pub max_length: u32,
    pub max_submodules: u128,
}

impl Default for SizeLimits {
    fn default() -> Self {
        Self { max_length: DEFAULT_MAX_LENGTH, max_submodules: DEFAULT_MAX_SUBMODULES }
    }
}

/// `⊕ Z/p^{λ_i}` with precomputed per-element order and height.
#[derive(Clone, Debug)]
pub struct FiniteModule {
    p: u32,
    shape: LambdaVec,
    radix: Vec<u32>,
    stride: Vec<u32>,
    size: u32,
    order: Vec<u8>,
    height: Vec<u8>,
}

/// A submodule as its sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Submodule {
    elems: Vec<u32>,
}

impl Submodule {
    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Submodule) -> bool {
        self.elems.iter().all(|&x| other.contains(x))
    }
}

fn valuation(mut x: u32, p: u32, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

pub(crate) fn check_prime(p: u64) -> Result<u32, ModuleError> {
    if !(2..=251).contains(&p) || !crate::field::is_prime(p) {
        return Err(ModuleError::BadPrime(p));
    }
    Ok(p as u32)
}

impl FiniteModule {
    pub fn new(p: u64, shape: LambdaVec) -> Result<Self, ModuleError> {
        Self::with_limits(p, shape, SizeLimits::default())
    }

    pub fn with_limits(p: u64, shape: LambdaVec, limits: SizeLimits) -> Result<Self, ModuleError> {
        let p = check_prime(p)?;
        let length = shape.size();
        let too_big = length > limits.max_length || (p as u64).checked_pow(length).is_none_or(|s| s > u32::MAX as u64 / 2);
        let predicted = if too_big { u128::MAX } else { predicted_submodule_count(&shape, p as u64) };
        if too_big || predicted > limits.max_submodules {
            return Err(ModuleError::SizeBound { shape, length, submodules: predicted });
        }
        let radix: Vec<u32> = shape.parts().iter().map(|&l| p.pow(l)).collect();
        let mut stride = vec![1u32; radix.len()];
        for i in (0..radix.len().saturating_sub(1)).rev() {
            stride[i] = stride[i + 1] * radix[i + 1];
        }
        let size = radix.iter().product::<u32>();
        let mut module = Self { p, shape, radix, stride, size, order: Vec::new(), height: Vec::new() };
        let top = module.shape.max_part();
        let (mut order, mut height) = (Vec::with_capacity(size as usize), Vec::with_capacity(size as usize));
        for x in 0..size {
            let mut o = 0;
            let mut h = top;
            for (i, &l) in module.shape.parts().iter().enumerate() {
                let v = valuation(module.digit(x, i), p, l);
                o = o.max(l - v);
                if v < l {
                    h = h.min(v);
                }
            }
            order.push(o as u8);
            height.push(h as u8);
        }
        module.order = order;
        module.height = height;
        Ok(module)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn shape(&self) -> &LambdaVec {
        &self.shape
    }

    /// `|M|`.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// `length_o(M) = |λ|`.
    pub fn length(&self) -> u32 {
        self.shape.size()
    }

    fn digit(&self, x: u32, i: usize) -> u32 {
        (x / self.stride[i]) % self.radix[i]
    }

    /// Coordinates of an element.
    pub fn coords(&self, x: u32) -> Vec<u32> {
        (0..self.radix.len()).map(|i| self.digit(x, i)).collect()
    }

    /// Element from coordinates, reduced.
    pub fn element(&self, coords: &[u32]) -> u32 {
        coords.iter().zip(&self.radix).zip(&self.stride).map(|((&c, &r), &s)| (c % r) * s).sum()
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        let mut out = 0;
        for i in 0..self.radix.len() {
            out += ((self.digit(x, i) + self.digit(y, i)) % self.radix[i]) * self.stride[i];
        }
        out
    }

    pub fn scale(&self, t: u32, x: u32) -> u32 {
        let mut out = 0;
        for i in 0..self.radix.len() {
            let d = (t as u64 * self.digit(x, i) as u64 % self.radix[i] as u64) as u32;
            out += d * self.stride[i];
        }
        out
    }

    /// Least `k` with `p^k x = 0`.
    pub fn order_exponent(&self, x: u32) -> u32 {
        self.order[x as usize] as u32
    }

    /// Largest `k` with `x ∈ p^k M` (the top exponent for `x = 0`).
    pub fn height(&self, x: u32) -> u32 {
        self.height[x as usize] as u32
    }

    /// `p^k M`.
    pub fn p_power(&self, k: u32) -> Submodule {
        Submodule { elems: (0..self.size).filter(|&x| self.height(x) >= k).collect() }
    }

    pub fn whole(&self) -> Submodule {
        Submodule { elems: (0..self.size).collect() }
    }

    pub fn zero(&self) -> Submodule {
        Submodule { elems: vec![0] }
    }

    /// Checks closure under addition and scalar multiplication.
    pub fn submodule(&self, mut elems: Vec<u32>) -> Result<Submodule, ModuleError> {
        elems.sort_unstable();
        elems.dedup();
        let s = Submodule { elems };
        if !s.contains(0) || s.elems.iter().any(|&x| x >= self.size) {
            return Err(ModuleError::NotSubmodule);
        }
        for &x in &s.elems {
            if !s.contains(self.scale(self.p, x)) {
                return Err(ModuleError::NotSubmodule);
            }
            for &y in &s.elems {
                if !s.contains(self.add(x, y)) {
                    return Err(ModuleError::NotSubmodule);
                }
            }
        }
        Ok(s)
    }

    /// Type of the submodule spanned by a set of elements it contains.
    pub fn type_of(&self, elems: &[u32]) -> LambdaVec {
        let top = self.shape.max_part() as usize;
        let mut by_order = vec![0u32; top + 1];
        for &x in elems {
            by_order[self.order[x as usize] as usize] += 1;
        }
        // t_k = log_p |N[p^k]| = Σ min(ν_i, k); #{ν_i ≥ k} = t_k − t_{k−1}.
        let mut t = Vec::with_capacity(top + 1);
        let mut acc = 0;
        for c in by_order {
            acc += c;
            t.push(ilog(acc, self.p));
        }
        let conj: Vec<u32> = (1..=top).map(|k| t[k] - t[k - 1]).collect();
        LambdaVec::from_parts(conj).conjugate()
    }

    /// Type of `M/N` for a submodule given by its elements.
    pub fn cotype_of(&self, elems: &[u32]) -> LambdaVec {
        let top = self.shape.max_part() as usize;
        let mut by_height = vec![0u32; top + 1];
        for &x in elems {
            by_height[self.height[x as usize] as usize] += 1;
        }
        // s_k = log_p |p^k (M/N)| = Σ max(λ_i − k, 0) − log_p |p^k M ∩ N|.
        let mut s = vec![0u32; top + 2];
        let mut inter = 0;
        for k in (0..=top).rev() {
            inter += by_height[k];
            let full: u32 = self.shape.parts().iter().map(|&l| l.saturating_sub(k as u32)).sum();
            s[k] = full - ilog(inter, self.p);
        }
        let conj: Vec<u32> = (0..top).map(|k| s[k] - s[k + 1]).collect();
        LambdaVec::from_parts(conj).conjugate()
    }

    pub fn sub_shape(&self, n: &Submodule) -> LambdaVec {
        self.type_of(&n.elems)
    }

    /// Type of `M/N`, checking that `N` is a submodule.
    pub fn quotient_shape(&self, n: &Submodule) -> Result<LambdaVec, ModuleError> {
        let n = self.submodule(n.elems.clone())?;
        Ok(self.cotype_of(&n.elems))
    }

    /// Every submodule, each exactly once.
    pub fn submodules(&self) -> Vec<Submodule> {
        let mut out = Vec::new();
        self.for_each_submodule(&mut |e: &[u32]| {
            let mut elems = e.to_vec();
            elems.sort_unstable();
            out.push(Submodule { elems });
        });
        out
    }

    /// Calls `f` on the (unsorted) elements of every submodule.
    pub fn for_each_submodule(&self, f: &mut dyn FnMut(&[u32])) {
        let all: Vec<u32> = (0..self.size).collect();
        self.for_each_submodule_within(&all, f);
    }

    /// Calls `f` on every submodule contained in the submodule `within`.
    pub fn for_each_submodule_within(&self, within: &[u32], f: &mut dyn FnMut(&[u32])) {
        let mut scratch: Vec<Scratch> = (0..self.radix.len())
            .map(|_| Scratch { member: Bitset::new(self.size as usize), covered: Bitset::new(self.size as usize) })
            .collect();
        self.goursat(0, within, &mut scratch, f);
    }

    /// Submodules of `W ⊆ B_i = ⊕_{j ≥ i} Z/p^{λ_j}`.
    ///
    /// A submodule `N` is determined by `N_B = N ∩ B_{i+1}`, the image `p^j Z/p^{λ_i}` of
    /// its projection, and the class of `c` modulo `N_B` in a generator `p^j e_i + c`;
    /// the constraint is `p^{λ_i − j} c ∈ N_B`.
    fn goursat(&self, i: usize, w: &[u32], scratch: &mut [Scratch], f: &mut dyn FnMut(&[u32])) {
        let Some((scratch, deeper)) = scratch.split_first_mut() else {
            f(&[0]);
            return;
        };
        let a = self.shape.parts()[i];
        let stride = self.stride[i];
        let w_next: Vec<u32> = w.iter().copied().filter(|&x| self.digit(x, i) == 0).collect();
        let mut candidates: Vec<Vec<u32>> = vec![Vec::new(); a as usize];
        for &x in w {
            let d = self.digit(x, i);
            if d == 0 {
                continue;
            }
            let v = valuation(d, self.p, a);
            if d == self.p.pow(v) {
                candidates[v as usize].push(x - d * stride);
            }
        }
        let mut buf: Vec<u32> = Vec::new();
        self.goursat(i + 1, &w_next, deeper, &mut |nb: &[u32]| {
            f(nb);
            for &x in nb {
                scratch.member.insert(x as usize);
            }
            for (j, cands) in candidates.iter().enumerate() {
                let pj = self.p.pow(j as u32);
                let steps = self.p.pow(a - j as u32);
                for &c in cands {
                    if scratch.covered.contains(c as usize) {
                        continue;
                    }
                    for &n in nb {
                        scratch.covered.insert(self.add(c, n) as usize);
                    }
                    if !scratch.member.contains(self.scale(steps, c) as usize) {
                        continue;
                    }
                    let g = c + pj * stride;
                    buf.clear();
                    let mut tg = 0;
                    for _ in 0..steps {
                        buf.extend(nb.iter().map(|&n| self.add(tg, n)));
                        tg = self.add(tg, g);
                    }
                    f(&buf);
                }
                // `c + N_B` lies inside `cands` since `W` is a submodule, so this clears every mark.
                for &c in cands {
                    scratch.covered.remove(c as usize);
                }
            }
            for &x in nb {
                scratch.member.remove(x as usize);
            }
        });
    }
}

struct Scratch {
    member: Bitset,
    covered: Bitset,
}

fn ilog(mut n: u32, p: u32) -> u32 {
    let mut k = 0;
    while n > 1 {
        n /= p;
        k += 1;
    }
    k
}

/// Gaussian binomial `[n choose k]_q`.
pub fn gaussian_binomial(n: u32, k: u32, q: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// Number of submodules of type `ν` in a module of type `λ`.
pub fn predicted_count_of_type(lambda: &LambdaVec, nu: &LambdaVec, p: u64) -> u128 {
    let lc = lambda.conjugate();
    let nc = nu.conjugate();
    let at = |v: &LambdaVec, i: usize| v.parts().get(i).copied().unwrap_or(0);
    let q = p as u128;
    let mut total: u128 = 1;
    for i in 0..lc.len() {
        let (l, n, n1) = (at(&lc, i), at(&nc, i), at(&nc, i + 1));
        if n > l || n1 > n {
            return 0;
        }
        total *= q.pow(n1 * (l - n)) * gaussian_binomial(l - n1, n - n1, q);
    }
    if nc.len() > lc.len() {
        return 0;
    }
    total
}

/// Partitions contained in `λ` (as diagrams).
pub fn sub_partitions(lambda: &LambdaVec) -> Vec<LambdaVec> {
    fn rec(parts: &[u32], i: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<LambdaVec>) {
        if i == parts.len() {
            out.push(LambdaVec::from_parts(cur.iter().copied()));
            return;
        }
        for v in 0..=parts[i].min(cap) {
            cur.push(v);
            rec(parts, i + 1, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(lambda.parts(), 0, u32::MAX, &mut Vec::new(), &mut out);
    out
}

/// Total number of submodules of a module of type `λ`.
pub fn predicted_submodule_count(lambda: &LambdaVec, p: u64) -> u128 {
    sub_partitions(lambda).iter().map(|nu| predicted_count_of_type(lambda, nu, p)).sum()
}

/// All partitions of `n` with at most `max_parts` parts.
pub fn partitions(n: u32, max_parts: usize) -> Vec<LambdaVec> {
    fn rec(n: u32, cap: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<LambdaVec>) {
        if n == 0 {
            out.push(LambdaVec::from_parts(cur.iter().copied()));
            return;
        }
        if slots == 0 {
            return;
        }
        for v in (1..=cap.min(n)).rev() {
            cur.push(v);
            rec(n - v, v, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}
