use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{check_prime, FiniteModule, ModuleError, SizeLimits};
use crate::multiseg::LambdaVec;

/// Hall entries `(ν, μ, g)`: `g` submodules of type `ν` with quotient of type `μ`.
pub type HallTable = Vec<(LambdaVec, LambdaVec, u128)>;

type Key = (LambdaVec, Vec<i64>);

/// Invariant dimensions of one factor as a function of the graded type.
pub type LevelOracle<'a> = &'a dyn Fn(&LambdaVec) -> u128;

/// Filtration counts by recursion on types, with Hall tables enumerated once per shape.
pub struct FiltrationCounter {
    p: u64,
    limits: SizeLimits,
    hall: BTreeMap<LambdaVec, HallTable>,
    atmost: BTreeMap<Key, u128>,
    exact: BTreeMap<Key, u128>,
}

impl FiltrationCounter {
    pub fn new(p: u64) -> Result<Self, ModuleError> {
        Self::with_limits(p, SizeLimits::default())
    }

    pub fn with_limits(p: u64, limits: SizeLimits) -> Result<Self, ModuleError> {
        check_prime(p)?;
        Ok(Self { p, limits, hall: BTreeMap::new(), atmost: BTreeMap::new(), exact: BTreeMap::new() })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn limits(&self) -> SizeLimits {
        self.limits
    }

    /// Number of shapes whose Hall table is cached.
    pub fn cached_shapes(&self) -> usize {
        self.hall.len()
    }

    pub fn hall_table(&mut self, shape: &LambdaVec) -> Result<&HallTable, ModuleError> {
        if !self.hall.contains_key(shape) {
            let m = FiniteModule::with_limits(self.p, shape.clone(), self.limits)?;
            let mut tally: BTreeMap<(LambdaVec, LambdaVec), u128> = BTreeMap::new();
            m.for_each_submodule(&mut |e: &[u32]| {
                *tally.entry((m.type_of(e), m.cotype_of(e))).or_insert(0) += 1;
            });
            let table = tally.into_iter().map(|((n, q), c)| (n, q, c)).collect();
            self.hall.insert(shape.clone(), table);
        }
        Ok(&self.hall[shape])
    }

    /// Number of `N ⊆ M` with `[N] = sub` and `[M/N] = quot`.
    pub fn count_by_type(&mut self, shape: &LambdaVec, sub: &LambdaVec, quot: &LambdaVec) -> Result<u128, ModuleError> {
        if sub.size() + quot.size() != shape.size() {
            return Err(ModuleError::LengthMismatch { sub: sub.size(), quot: quot.size(), total: shape.size() });
        }
        let table = self.hall_table(shape)?;
        Ok(table.iter().find(|(n, q, _)| n == sub && q == quot).map_or(0, |e| e.2))
    }

    /// Chains `0 = F_0 ⊆ ⋯ ⊆ F_r = M` with `mingen(Gr_i) ≤ bounds[i]`.
    pub fn count_atmost(&mut self, shape: &LambdaVec, bounds: &[i64]) -> Result<u128, ModuleError> {
        if bounds.iter().any(|&b| b < 0) {
            return Ok(0);
        }
        let k = shape.len() as i64;
        let bounds: Vec<i64> = bounds.iter().map(|&b| b.min(k)).collect();
        match bounds.len() {
            0 => return Ok(u128::from(shape.is_empty())),
            1 => return Ok(u128::from(k <= bounds[0])),
            _ => {}
        }
        if bounds.iter().all(|&b| b == 0) {
            return Ok(u128::from(shape.is_empty()));
        }
        let key = (shape.clone(), bounds);
        if let Some(&v) = self.atmost.get(&key) {
            return Ok(v);
        }
        let table = self.hall_table(shape)?.clone();
        let mut total = 0;
        for (nu, mu, g) in &table {
            if nu.len() as i64 <= key.1[0] {
                total += g * self.count_atmost(mu, &key.1[1..])?;
            }
        }
        self.atmost.insert(key, total);
        Ok(total)
    }

    /// Chains with `mingen(Gr_i) = gens[i]`.
    pub fn count_exact(&mut self, shape: &LambdaVec, gens: &[i64]) -> Result<u128, ModuleError> {
        let k = shape.len() as i64;
        if gens.iter().any(|&g| g < 0 || g > k) {
            return Ok(0);
        }
        match gens.len() {
            0 => return Ok(u128::from(shape.is_empty())),
            1 => return Ok(u128::from(k == gens[0])),
            _ => {}
        }
        let key = (shape.clone(), gens.to_vec());
        if let Some(&v) = self.exact.get(&key) {
            return Ok(v);
        }
        let table = self.hall_table(shape)?.clone();
        let mut total = 0;
        for (nu, mu, g) in &table {
            if nu.len() as i64 == gens[0] {
                total += g * self.count_exact(mu, &gens[1..])?;
            }
        }
        self.exact.insert(key, total);
        Ok(total)
    }

    /// `Σ_F Π_i weight_i([Gr_i])` over chains with `mingen(Gr_i) ≤ ranks[i]`.
    pub fn weighted_count(&mut self, shape: &LambdaVec, factors: &[(u32, LevelOracle<'_>)]) -> Result<u128, ModuleError> {
        let Some(((rank, weight), rest)) = factors.split_first() else {
            return Ok(u128::from(shape.is_empty()));
        };
        let table = self.hall_table(shape)?.clone();
        let mut total = 0;
        for (nu, mu, g) in &table {
            if nu.len() as u32 <= *rank {
                let w = weight(nu);
                if w != 0 {
                    total += g * w * self.weighted_count(mu, rest)?;
                }
            }
        }
        Ok(total)
    }
}

/// Hall number at `q = p`, with a fresh cache.
pub fn count_by_type(shape: &LambdaVec, sub: &LambdaVec, quot: &LambdaVec, p: u64) -> Result<u128, ModuleError> {
    FiltrationCounter::new(p)?.count_by_type(shape, sub, quot)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(p: &[u32]) -> LambdaVec {
        LambdaVec::from_parts(p.iter().copied())
    }

    #[test]
    fn hall_numbers() {
        assert_eq!(count_by_type(&lv(&[1, 1]), &lv(&[1]), &lv(&[1]), 2).unwrap(), 3);
        assert_eq!(count_by_type(&lv(&[2]), &lv(&[1]), &lv(&[1]), 2).unwrap(), 1);
        assert_eq!(count_by_type(&lv(&[2, 1]), &lv(&[]), &lv(&[2, 1]), 3).unwrap(), 1);
        assert_eq!(count_by_type(&lv(&[2, 1]), &lv(&[]), &lv(&[1, 1]), 3), Err(ModuleError::LengthMismatch { sub: 0, quot: 2, total: 3 }));
        assert_eq!(count_by_type(&lv(&[2, 1]), &lv(&[1]), &lv(&[2]), 3).unwrap(), 3);
        assert_eq!(count_by_type(&lv(&[2, 1]), &lv(&[1]), &lv(&[1, 1]), 3).unwrap(), 1);
    }

    #[test]
    fn recursion_counts() {
        let mut c = FiltrationCounter::new(2).unwrap();
        assert_eq!(c.count_atmost(&lv(&[2]), &[1, 1]).unwrap(), 3);
        assert_eq!(c.count_atmost(&lv(&[1, 1]), &[1]).unwrap(), 0);
        assert_eq!(c.count_atmost(&lv(&[1]), &[2, 1]).unwrap(), 2);
        assert_eq!(c.count_atmost(&lv(&[1]), &[3, 0]).unwrap(), 1);
        assert_eq!(c.count_atmost(&lv(&[1]), &[3, -1]).unwrap(), 0);
        assert_eq!(c.count_exact(&lv(&[1, 1]), &[1, 1]).unwrap(), 3);
        assert_eq!(c.count_exact(&lv(&[1]), &[2]).unwrap(), 0);
        assert_eq!(c.count_exact(&lv(&[]), &[]).unwrap(), 1);
        assert_eq!(c.count_atmost(&lv(&[1, 1]), &[2, 2]).unwrap(), 5);
    }

    #[test]
    fn weighted_count_generalizes_atmost() {
        let mut c = FiltrationCounter::new(3).unwrap();
        let one = |_: &LambdaVec| 1u128;
        let shape = lv(&[2, 1, 1]);
        let w = c.weighted_count(&shape, &[(2, &one), (1, &one), (3, &one)]).unwrap();
        assert_eq!(w, c.count_atmost(&shape, &[2, 1, 3]).unwrap());
        let zero = |_: &LambdaVec| 0u128;
        assert_eq!(c.weighted_count(&shape, &[(2, &zero), (3, &one)]).unwrap(), 0);
    }
}
