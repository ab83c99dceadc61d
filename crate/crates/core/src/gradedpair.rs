//! Graded nilpotent pairs over a prime field.
//!
//! A unipotent multisegment on one line is the graded Jordan type of a pair `(V, N)`
//! with `N` of degree `+1`. A generic degree `−1` map `L` commuting with `N` has Jordan
//! type equal to the Zelevinsky dual, and `(Image L, N)` has the type of the ramified
//! part. Genericity is probed by random sampling with majority voting.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{next_prime, Matrix, PrimeField};
use crate::multiseg::{CuspidalLabel, Multisegment, MultisegError, Segment};

/// Smallest field accepted by the oracles.
pub const MIN_FIELD: u64 = 4099;
/// Number of field enlargements tried after the first failure.
pub const MAX_ESCALATIONS: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("no strict majority among {trials} samples over F_{field}")]
    NoConsensus { trials: usize, field: u64 },
    #[error("majority answer {answer} failed a consistency check over F_{field}: {reason}")]
    Inconsistent { answer: String, field: u64, reason: String },
    #[error("no consensus after {0} field escalations")]
    Exhausted(u32),
    #[error("bad oracle configuration: {0}")]
    Config(String),
    #[error("bad pair data: {0}")]
    Shape(String),
    #[error("oracle input must be unipotent on a single line: {0}")]
    Input(String),
}

/// Seed, number of samples and field size for the randomized oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub seed: u64,
    pub trials: usize,
    pub field: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { seed: 0x6e65_7766_6f72_6d31, trials: 5, field: MIN_FIELD }
    }
}

/// An oracle answer and the escalation level that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Escalated<T> {
    pub value: T,
    pub level: u32,
    pub field: u64,
}

/// A graded vector space with a degree `+1` map, stored as blocks
/// `N_d: V_d → V_{d+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPair {
    label: CuspidalLabel,
    d_min: i64,
    dims: Vec<usize>,
    n_blocks: Vec<Matrix>,
    field: PrimeField,
}

/// A degree `−1` map on the same graded space: blocks `L_d: V_d → V_{d−1}`, stored for
/// `d = d_min+1, …, d_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DownMap {
    blocks: Vec<Matrix>,
}

impl DownMap {
    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }
}

impl GradedPair {
    /// Direct sum of Jordan chains `e_a → ⋯ → e_b → 0`, one per segment.
    ///
    /// Within each degree the basis follows the segments from the smallest up.
    pub fn from_multisegment(m: &Multisegment, field: PrimeField) -> Result<Self, MultisegError> {
        m.single_label()?;
        if !m.is_unipotent() {
            return Err(MultisegError::Ramified(m.segments()[0].label().line().into()));
        }
        let label = m.segments().first().map(|s| s.label().clone()).unwrap_or_default();
        let Some((lo, hi)) = m.support() else {
            return Ok(Self { label, d_min: 0, dims: Vec::new(), n_blocks: Vec::new(), field });
        };
        let width = (hi - lo + 1) as usize;
        let mut dims = vec![0usize; width];
        // (segment, degree) -> index inside V_degree
        let mut index: Vec<Vec<usize>> = Vec::new();
        for s in m.segments().iter().rev() {
            let mut idx = Vec::new();
            for d in s.a()..=s.b() {
                let slot = &mut dims[(d - lo) as usize];
                idx.push(*slot);
                *slot += 1;
            }
            index.push(idx);
        }
        let mut n_blocks: Vec<Matrix> = (0..width.saturating_sub(1)).map(|i| Matrix::zeros(dims[i + 1], dims[i])).collect();
        for (s, idx) in m.segments().iter().rev().zip(&index) {
            for k in 0..idx.len().saturating_sub(1) {
                let d = (s.a() - lo) as usize + k;
                n_blocks[d].set(idx[k + 1], idx[k], 1);
            }
        }
        Ok(Self { label, d_min: lo, dims, n_blocks, field })
    }

    /// Builds a pair from raw blocks; `blocks[i]` maps degree `d_min+i` to `d_min+i+1`.
    pub fn from_parts(d_min: i64, dims: Vec<usize>, n_blocks: Vec<Matrix>, field: PrimeField) -> Result<Self, OracleError> {
        if n_blocks.len() != dims.len().saturating_sub(1) {
            return Err(OracleError::Shape(format!("{} blocks for {} degrees", n_blocks.len(), dims.len())));
        }
        for (i, b) in n_blocks.iter().enumerate() {
            if b.rows() != dims[i + 1] || b.cols() != dims[i] {
                return Err(OracleError::Shape(format!("block {i} is {}x{}", b.rows(), b.cols())));
            }
        }
        Ok(Self { label: CuspidalLabel::chi(), d_min, dims, n_blocks, field })
    }

    pub fn d_min(&self) -> i64 {
        self.d_min
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_blocks(&self) -> &[Matrix] {
        &self.n_blocks
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    fn dim(&self, d: i64) -> usize {
        self.slot(d).map_or(0, |i| self.dims[i])
    }

    fn slot(&self, d: i64) -> Option<usize> {
        let i = d - self.d_min;
        (i >= 0 && (i as usize) < self.dims.len()).then_some(i as usize)
    }

    /// `N^k: V_x → V_{x+k}` as a matrix.
    fn n_power(&self, x: i64, k: usize) -> Matrix {
        let mut acc = Matrix::identity(self.dim(x));
        for step in 0..k {
            let d = x + step as i64;
            acc = match self.slot(d).filter(|&i| i < self.n_blocks.len()) {
                Some(i) => self.n_blocks[i].mul(&acc, &self.field),
                None => Matrix::zeros(self.dim(d + 1), acc.cols()),
            };
        }
        acc
    }

    /// Rank of `N^{y−x}: V_x → V_y`.
    pub fn up_rank(&self, x: i64, y: i64) -> usize {
        if self.dim(x) == 0 || self.dim(y) == 0 {
            return 0;
        }
        self.n_power(x, (y - x) as usize).rank(&self.field)
    }

    /// Rank of `L^{y−x}: V_y → V_x`.
    pub fn down_rank(&self, l: &DownMap, x: i64, y: i64) -> usize {
        if self.dim(x) == 0 || self.dim(y) == 0 {
            return 0;
        }
        let mut acc = Matrix::identity(self.dim(y));
        for d in (x + 1..=y).rev() {
            acc = l.blocks[self.slot(d).expect("degree in range") - 1].mul(&acc, &self.field);
        }
        acc.rank(&self.field)
    }

    fn degrees(&self) -> Option<(i64, i64)> {
        (!self.dims.is_empty()).then(|| (self.d_min, self.d_min + self.dims.len() as i64 - 1))
    }

    /// Graded Jordan type of `N`.
    pub fn up_type(&self) -> Multisegment {
        match self.degrees() {
            Some((lo, hi)) => type_from_counts(&self.label, lo, hi, |x, y| self.up_rank(x, y)),
            None => Multisegment::empty(),
        }
    }

    /// Graded Jordan type of a degree `−1` map, segments read from the bottom degree.
    pub fn down_type(&self, l: &DownMap) -> Multisegment {
        match self.degrees() {
            Some((lo, hi)) => type_from_counts(&self.label, lo, hi, |x, y| self.down_rank(l, x, y)),
            None => Multisegment::empty(),
        }
    }

    /// Type of `(Image L, N)`: `[x,y]` is counted through `rank(N^{y−x} ∘ L_{x+1})`.
    pub fn image_type(&self, l: &DownMap) -> Multisegment {
        let Some((lo, hi)) = self.degrees() else { return Multisegment::empty() };
        type_from_counts(&self.label, lo, hi, |x, y| {
            if x + 1 > hi || self.dim(x + 1) == 0 || self.dim(y) == 0 {
                return 0;
            }
            let lx = &l.blocks[self.slot(x + 1).expect("degree in range") - 1];
            self.n_power(x, (y - x) as usize).mul(lx, &self.field).rank(&self.field)
        })
    }

    /// Type of `(Image N, N)` shifted down by one degree.
    pub fn derivative_type(&self) -> Multisegment {
        let Some((lo, hi)) = self.degrees() else { return Multisegment::empty() };
        type_from_counts(&self.label, lo, hi, |x, y| {
            if self.dim(x - 1) == 0 || self.dim(y) == 0 {
                return 0;
            }
            self.n_power(x - 1, (y - x + 1) as usize).rank(&self.field)
        })
        .shift(-1)
    }

    /// A uniformly random element of the space of degree `−1` maps commuting with `N`.
    pub fn sample_down_map(&self, seed: u64) -> DownMap {
        let basis = self.commuting_basis();
        let f = &self.field;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nvars = self.down_offsets().last().copied().unwrap_or(0);
        let mut x = vec![0u64; nvars];
        for v in &basis {
            let c = rng.gen_range(0..f.modulus());
            for (xi, vi) in x.iter_mut().zip(v) {
                *xi = f.add(*xi, f.mul(c, *vi));
            }
        }
        self.down_map_from_vector(&x)
    }

    /// Offsets of the unknown blocks `L_d` in the flattened unknown vector.
    fn down_offsets(&self) -> Vec<usize> {
        let mut offs = vec![0];
        for i in 1..self.dims.len() {
            let last = *offs.last().unwrap_or(&0);
            offs.push(last + self.dims[i - 1] * self.dims[i]);
        }
        offs
    }

    fn down_map_from_vector(&self, x: &[u64]) -> DownMap {
        let offs = self.down_offsets();
        let blocks = (1..self.dims.len())
            .map(|i| {
                let (r, c) = (self.dims[i - 1], self.dims[i]);
                Matrix::from_rows(r, c, x[offs[i - 1]..offs[i - 1] + r * c].to_vec())
            })
            .collect();
        DownMap { blocks }
    }

    /// Basis of the solutions of `L N = N L` with `L` of degree `−1`.
    fn commuting_basis(&self) -> Vec<Vec<u64>> {
        let f = &self.field;
        let offs = self.down_offsets();
        let nvars = *offs.last().unwrap_or(&0);
        let width = self.dims.len();
        let var = |i: usize, r: usize, c: usize| offs[i - 1] + r * self.dims[i] + c;
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for d in 0..width {
            let n = self.dims[d];
            for i in 0..n {
                for j in 0..n {
                    let mut row = vec![0u64; nvars];
                    // (L_{d+1} N_d)[i][j]
                    if d + 1 < width {
                        for k in 0..self.dims[d + 1] {
                            let nkj = self.n_blocks[d].get(k, j);
                            if nkj != 0 {
                                let v = var(d + 1, i, k);
                                row[v] = f.add(row[v], nkj);
                            }
                        }
                    }
                    // − (N_{d−1} L_d)[i][j]
                    if d > 0 {
                        for k in 0..self.dims[d - 1] {
                            let nik = self.n_blocks[d - 1].get(i, k);
                            if nik != 0 {
                                let v = var(d, k, j);
                                row[v] = f.sub(row[v], nik);
                            }
                        }
                    }
                    if row.iter().any(|&x| x != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        let system = Matrix::from_rows(rows.len(), nvars, rows.concat());
        system.nullspace(f)
    }

    /// True when `L` commutes with `N`.
    pub fn commutes(&self, l: &DownMap) -> bool {
        let f = &self.field;
        let width = self.dims.len();
        (0..width).all(|d| {
            let n = self.dims[d];
            let lhs = if d + 1 < width { l.blocks[d].mul(&self.n_blocks[d], f) } else { Matrix::zeros(n, n) };
            let rhs = if d > 0 { self.n_blocks[d - 1].mul(&l.blocks[d - 1], f) } else { Matrix::zeros(n, n) };
            lhs == rhs
        })
    }
}

/// Multiplicities from containment counts: `C(x,y)` is the number of segments
/// containing `[x,y]`.
fn type_from_counts(label: &CuspidalLabel, lo: i64, hi: i64, count: impl Fn(i64, i64) -> usize) -> Multisegment {
    let mut memo: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    let mut c = |x: i64, y: i64| -> i64 {
        if x < lo || y > hi || x > y {
            return 0;
        }
        *memo.entry((x, y)).or_insert_with(|| count(x, y) as i64)
    };
    let mut segs = Vec::new();
    for a in lo..=hi {
        for b in a..=hi {
            let mult = c(a, b) - c(a, b + 1) - c(a - 1, b) + c(a - 1, b + 1);
            for _ in 0..mult.max(0) {
                segs.push(Segment::new(label.clone(), a, b).expect("a <= b"));
            }
        }
    }
    Multisegment::canonicalize(segs).expect("single label")
}

/// `multisegment_from_pair` in the up direction.
pub fn multisegment_from_pair(p: &GradedPair) -> Multisegment {
    p.up_type()
}

fn validate(m: &Multisegment, trials: usize, field: u64) -> Result<PrimeField, OracleError> {
    if trials < 3 || trials.is_multiple_of(2) {
        return Err(OracleError::Config(format!("trials must be odd and at least 3, got {trials}")));
    }
    if field < MIN_FIELD {
        return Err(OracleError::Config(format!("field size {field} below {MIN_FIELD}")));
    }
    let f = PrimeField::new(field).ok_or_else(|| OracleError::Config(format!("{field} is not a prime below 2^63")))?;
    if m.single_label().is_err() || !m.is_unipotent() {
        return Err(OracleError::Input(format!("{m}")));
    }
    Ok(f)
}

fn trial_seed(seed: u64, t: usize) -> u64 {
    seed ^ (t as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn majority(votes: &[Multisegment], trials: usize, field: u64) -> Result<Multisegment, OracleError> {
    let mut tally: BTreeMap<&Multisegment, usize> = BTreeMap::new();
    for v in votes {
        *tally.entry(v).or_insert(0) += 1;
    }
    tally
        .into_iter()
        .find(|&(_, c)| 2 * c > trials)
        .map(|(v, _)| v.clone())
        .ok_or(OracleError::NoConsensus { trials, field })
}

/// Down types of `trials` sampled maps, with the maps.
fn sample_types(p: &GradedPair, seed: u64, trials: usize) -> Vec<(DownMap, Multisegment)> {
    (0..trials)
        .map(|t| {
            let l = p.sample_down_map(trial_seed(seed, t));
            let ty = p.down_type(&l);
            (l, ty)
        })
        .collect()
}

fn dual_from_samples(m: &Multisegment, samples: &[(DownMap, Multisegment)], trials: usize, field: u64) -> Result<Multisegment, OracleError> {
    let votes: Vec<Multisegment> = samples.iter().map(|s| s.1.clone()).collect();
    let winner = majority(&votes, trials, field)?;
    crate::multiseg::check_dual(m, &winner).map_err(|e| OracleError::Inconsistent {
        answer: format!("{winner}"),
        field,
        reason: format!("{e}"),
    })?;
    Ok(winner)
}

/// Majority Jordan type of sampled commuting maps, checked against point supports and
/// edge counts.
pub fn dual_oracle(m: &Multisegment, seed: u64, trials: usize, field: u64) -> Result<Multisegment, OracleError> {
    let f = validate(m, trials, field)?;
    let p = GradedPair::from_multisegment(m, f).map_err(|e| OracleError::Input(format!("{e}")))?;
    let samples = sample_types(&p, seed, trials);
    dual_from_samples(m, &samples, trials, field)
}

/// Majority type of `(Image L, N)` over sampled maps `L` whose own type is the dual.
pub fn ram_oracle(m: &Multisegment, seed: u64, trials: usize, field: u64) -> Result<Multisegment, OracleError> {
    let f = validate(m, trials, field)?;
    let p = GradedPair::from_multisegment(m, f).map_err(|e| OracleError::Input(format!("{e}")))?;
    let samples = sample_types(&p, seed, trials);
    let dual = dual_from_samples(m, &samples, trials, field)?;
    let votes: Vec<Multisegment> = samples.iter().filter(|s| s.1 == dual).map(|s| p.image_type(&s.0)).collect();
    majority(&votes, trials, field)
}

/// The next field in the escalation chain: the least prime `≥ ℓ²`, or the least prime
/// above `2^62` once `ℓ²` leaves the supported range.
pub fn escalate_field(field: u64) -> Option<u64> {
    let target = field.checked_mul(field).filter(|&s| s < 1 << 62).unwrap_or(1 << 62);
    next_prime(target.max(field + 1))
}

fn with_escalation<T>(cfg: &OracleConfig, mut run: impl FnMut(u64) -> Result<T, OracleError>) -> Result<Escalated<T>, OracleError> {
    let mut field = cfg.field;
    for level in 0..=MAX_ESCALATIONS {
        match run(field) {
            Ok(value) => return Ok(Escalated { value, level, field }),
            Err(OracleError::NoConsensus { .. } | OracleError::Inconsistent { .. }) => {
                field = escalate_field(field).ok_or(OracleError::Exhausted(level))?;
            }
            Err(e) => return Err(e),
        }
    }
    Err(OracleError::Exhausted(MAX_ESCALATIONS))
}

/// [`dual_oracle`] retried over larger fields.
pub fn dual_with_escalation(m: &Multisegment, cfg: &OracleConfig) -> Result<Escalated<Multisegment>, OracleError> {
    with_escalation(cfg, |field| dual_oracle(m, cfg.seed, cfg.trials, field))
}

/// [`ram_oracle`] retried over larger fields.
pub fn ram_with_escalation(m: &Multisegment, cfg: &OracleConfig) -> Result<Escalated<Multisegment>, OracleError> {
    with_escalation(cfg, |field| ram_oracle(m, cfg.seed, cfg.trials, field))
}

/// `(Image N, N)` shifted by `−1` has the type of `m⁻`.
pub fn derivative_pair_check(m: &Multisegment) -> Result<bool, MultisegError> {
    let f = PrimeField::new(MIN_FIELD).expect("prime");
    let p = GradedPair::from_multisegment(m, f)?;
    Ok(p.derivative_type() == m.derivative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiseg::ms;

    fn f() -> PrimeField {
        PrimeField::new(MIN_FIELD).unwrap()
    }

    #[test]
    fn pair_construction() {
        let p = GradedPair::from_multisegment(&ms(&[(0, 2)]), f()).unwrap();
        assert_eq!(p.dims(), &[1, 1, 1]);
        assert_eq!(p.n_blocks(), &[Matrix::from_rows(1, 1, vec![1]), Matrix::from_rows(1, 1, vec![1])]);
        let p = GradedPair::from_multisegment(&ms(&[(0, 1), (1, 1)]), f()).unwrap();
        assert_eq!((p.d_min(), p.dims()), (0, &[1usize, 2][..]));
        assert_eq!(p.n_blocks()[0], Matrix::from_rows(2, 1, vec![1, 0]));
        let p = GradedPair::from_multisegment(&Multisegment::empty(), f()).unwrap();
        assert_eq!(p.total_dim(), 0);
        assert_eq!(p.up_type(), Multisegment::empty());
    }

    #[test]
    fn round_trips() {
        for m in [ms(&[(0, 2)]), ms(&[(3, 7), (2, 5), (1, 2), (0, 0)]), ms(&[(5, 6), (3, 7), (3, 4), (2, 5), (3, 3), (1, 2), (0, 0)])] {
            let p = GradedPair::from_multisegment(&m, f()).unwrap();
            assert_eq!(p.total_dim() as u32, m.len());
            assert_eq!(multisegment_from_pair(&p), m);
        }
        let zero = GradedPair::from_parts(0, vec![2], vec![], f()).unwrap();
        assert_eq!(zero.up_type(), ms(&[(0, 0), (0, 0)]));
        assert!(GradedPair::from_parts(0, vec![2, 1], vec![], f()).is_err());
    }

    #[test]
    fn commuting_maps_on_one_chain_vanish() {
        let p = GradedPair::from_multisegment(&ms(&[(0, 2)]), f()).unwrap();
        assert!(p.commuting_basis().is_empty());
        for seed in 0..5 {
            assert!(p.sample_down_map(seed).is_zero());
        }
    }

    #[test]
    fn commuting_maps_with_zero_n_are_free() {
        let p = GradedPair::from_multisegment(&ms(&[(0, 0), (1, 1)]), f()).unwrap();
        assert_eq!(p.commuting_basis().len(), 1);
        let l = p.sample_down_map(7);
        assert_eq!(l.blocks().len(), 1);
        assert!(!l.is_zero());
        assert!(p.commutes(&l));
        assert!(GradedPair::from_multisegment(&Multisegment::empty(), f()).unwrap().sample_down_map(1).blocks().is_empty());
    }

    #[test]
    fn samples_are_deterministic_and_commute() {
        let m = ms(&[(5, 6), (3, 7), (3, 4), (2, 5), (3, 3), (1, 2), (0, 0)]);
        let p = GradedPair::from_multisegment(&m, f()).unwrap();
        let l = p.sample_down_map(42);
        assert_eq!(l, p.sample_down_map(42));
        assert!(p.commutes(&l));
    }

    #[test]
    fn dual_oracle_examples() {
        let top = ms(&[(3, 7), (2, 5), (1, 2), (0, 0)]);
        assert_eq!(dual_oracle(&top, 1, 5, MIN_FIELD).unwrap(), ms(&[(7, 7), (5, 6), (4, 5), (2, 4), (0, 3)]));
        assert_eq!(dual_oracle(&ms(&[(3, 3)]), 1, 5, MIN_FIELD).unwrap(), ms(&[(3, 3)]));
        assert_eq!(dual_oracle(&ms(&[(1, 1), (2, 2)]), 1, 5, MIN_FIELD).unwrap(), ms(&[(1, 2)]));
        assert!(matches!(dual_oracle(&top, 1, 4, MIN_FIELD), Err(OracleError::Config(_))));
        assert!(matches!(dual_oracle(&top, 1, 5, 4093), Err(OracleError::Config(_))));
    }

    #[test]
    fn ram_oracle_examples() {
        let m = ms(&[(5, 6), (3, 7), (3, 4), (2, 5), (3, 3), (1, 2), (0, 0)]);
        assert_eq!(ram_oracle(&m, 3, 5, MIN_FIELD).unwrap(), ms(&[(4, 4), (2, 5), (1, 2), (0, 0)]));
        assert_eq!(ram_oracle(&ms(&[(2, 6)]), 3, 5, MIN_FIELD).unwrap(), Multisegment::empty());
    }

    #[test]
    fn derivative_pair_examples() {
        let m = ms(&[(3, 7), (2, 5), (1, 2), (0, 0)]);
        assert!(derivative_pair_check(&m).unwrap());
        let p = GradedPair::from_multisegment(&m, f()).unwrap();
        assert_eq!(p.derivative_type(), ms(&[(3, 6), (2, 4), (1, 1)]));
        assert!(derivative_pair_check(&ms(&[(4, 4)])).unwrap());
    }

    #[test]
    fn escalation_chain() {
        let l1 = escalate_field(MIN_FIELD).unwrap();
        assert!(l1 >= MIN_FIELD * MIN_FIELD);
        let l2 = escalate_field(l1).unwrap();
        assert!(l2 >= l1 * l1);
        let l3 = escalate_field(l2).unwrap();
        assert!(l3 > l2 && l3 >= 1 << 62);
    }
}
