use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{MultisegError, Multisegment};

/// Distinct segments `[k,l]` meeting `[a, a+1]`, with multiplicities.
fn segments_over(m: &Multisegment, a: i64) -> BTreeMap<(i64, i64), u64> {
    let mut d = BTreeMap::new();
    for s in m.segments().iter().filter(|s| s.a() <= a + 1 && a <= s.b()) {
        *d.entry((s.a(), s.b())).or_insert(0) += 1;
    }
    d
}

/// `Card(m_a)` minus the heaviest inclusion chain in `m_a`.
pub fn kz_chain_count(m: &Multisegment, a: i64) -> u64 {
    let d = segments_over(m, a);
    let mut segs: Vec<((i64, i64), u64)> = d.into_iter().collect();
    segs.sort_by_key(|&((k, l), _)| l - k);
    let total: u64 = segs.iter().map(|s| s.1).sum();
    let mut best: Vec<u64> = Vec::with_capacity(segs.len());
    for (i, &((k, l), w)) in segs.iter().enumerate() {
        let below = (0..i)
            .filter(|&j| {
                let (kj, lj) = segs[j].0;
                k <= kj && lj <= l
            })
            .map(|j| best[j])
            .max()
            .unwrap_or(0);
        best.push(below + w);
    }
    total - best.into_iter().max().unwrap_or(0)
}

/// `Card(m_a)` minus the best monotone lattice path from `(a+1, a)`, moving by
/// `(k−1, l)` or `(k, l+1)`, summing the multiplicities of the segments `[k,l]` it visits.
pub fn kz_path_count(m: &Multisegment, a: i64) -> u64 {
    let d = segments_over(m, a);
    if d.is_empty() {
        return 0;
    }
    let kmin = d.keys().map(|s| s.0).min().unwrap_or(a + 1);
    let lmax = d.keys().map(|s| s.1).max().unwrap_or(a);
    let width = (a + 1 - kmin + 1) as usize;
    let height = (lmax - a + 1) as usize;
    let weight = |i: usize, j: usize| *d.get(&(a + 1 - i as i64, a + j as i64)).unwrap_or(&0);
    let mut best = vec![vec![0u64; height]; width];
    for i in 0..width {
        for j in 0..height {
            let prev = match (i, j) {
                (0, 0) => 0,
                (0, _) => best[0][j - 1],
                (_, 0) => best[i - 1][0],
                _ => best[i - 1][j].max(best[i][j - 1]),
            };
            best[i][j] = prev + weight(i, j);
        }
    }
    let total: u64 = d.values().sum();
    total - best[width - 1][height - 1]
}

impl Multisegment {
    /// Number of dual segments containing `[a, a+1]`, by two independent methods that
    /// must agree.
    pub fn kz_dual_edge_count(&self, a: i64) -> Result<u64, MultisegError> {
        self.single_unipotent()?;
        let chain = kz_chain_count(self, a);
        let path = kz_path_count(self, a);
        if chain != path {
            return Err(MultisegError::KzMismatch { a, chain, path });
        }
        Ok(chain)
    }
}
