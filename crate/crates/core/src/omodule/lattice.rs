use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{Bitset, FiniteModule, ModuleError, Submodule};
use crate::multiseg::LambdaVec;

/// An increasing chain `0 = F_0 ⊆ ⋯ ⊆ F_r = M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    steps: Vec<Submodule>,
}

impl Filtration {
    pub fn steps(&self) -> &[Submodule] {
        &self.steps
    }

    /// Types of `F_i / F_{i−1}`.
    pub fn graded_shapes(&self, m: &FiniteModule) -> Vec<LambdaVec> {
        self.steps.windows(2).map(|w| m.section_type(&w[0], &w[1])).collect()
    }
}

impl FiniteModule {
    /// Type of `G/F` for submodules `F ⊆ G`.
    pub fn section_type(&self, f: &Submodule, g: &Submodule) -> LambdaVec {
        let fb = Bitset::from_elements(self.size() as usize, f.elements());
        let gb = Bitset::from_elements(self.size() as usize, g.elements());
        let powers = self.power_sets(&gb);
        quotient_type(&powers, &fb, self.p())
    }

    /// `p^k G` for `k = 0, …, top`.
    fn power_sets(&self, g: &Bitset) -> Vec<Bitset> {
        let mut out = vec![g.clone()];
        for _ in 0..self.shape().max_part() {
            let prev = out.last().expect("nonempty");
            let mut next = Bitset::new(self.size() as usize);
            for x in prev.iter() {
                next.insert(self.scale(self.p(), x) as usize);
            }
            out.push(next);
        }
        out
    }
}

fn ilog(n: u32, p: u32) -> u32 {
    super::ilog(n, p)
}

/// Type of `G/F` from the sets `p^k G`.
fn quotient_type(powers: &[Bitset], f: &Bitset, p: u32) -> LambdaVec {
    let s: Vec<u32> = powers.iter().map(|pk| ilog(pk.count(), p) - ilog(pk.intersection_count(f), p)).collect();
    type_from_drops(&s)
}

/// Type from the lengths `s_k` of `p^k Q`, `k = 0, …, top`, ending in zero.
fn type_from_drops(s: &[u32]) -> LambdaVec {
    LambdaVec::from_parts((0..s.len() - 1).map(|k| s[k] - s[k + 1])).conjugate()
}

fn set_hash(elems: impl Iterator<Item = u32>) -> u64 {
    elems.fold(0u64, |acc, x| {
        let mut z = u64::from(x).wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        acc.wrapping_add(z ^ (z >> 31))
    })
}

/// Every submodule of a module with, for each `G`, every `F ⊆ G` and the type of `G/F`.
pub struct Lattice {
    module: FiniteModule,
    subs: Vec<Bitset>,
    sub_type: Vec<u16>,
    below: Vec<Vec<(u32, u16)>>,
    types: Vec<LambdaVec>,
}

impl Lattice {
    pub fn new(module: &FiniteModule) -> Self {
        let size = module.size() as usize;
        let mut subs: Vec<Bitset> = module.submodules().iter().map(|s| Bitset::from_elements(size, s.elements())).collect();
        subs.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.cmp(b)));
        // Lookup by an order-independent hash of the element set, confirmed by membership.
        let mut index: Vec<(u64, u32)> = subs.iter().enumerate().map(|(i, b)| (set_hash(b.iter()), i as u32)).collect();
        index.sort_unstable();
        let mut types: Vec<LambdaVec> = Vec::new();
        let mut type_ids: BTreeMap<u64, u16> = BTreeMap::new();
        let mut intern = |s: &[u32]| -> u16 {
            let key = s.iter().fold(0u64, |acc, &x| (acc << 4) | u64::from(x));
            *type_ids.entry(key).or_insert_with(|| {
                types.push(type_from_drops(s));
                (types.len() - 1) as u16
            })
        };
        let p = module.p();
        let mut sub_type = Vec::with_capacity(subs.len());
        let mut below = Vec::with_capacity(subs.len());
        let mut drops = Vec::new();
        for g in &subs {
            let powers = module.power_sets(g);
            drops.clear();
            drops.extend(powers.iter().map(|pk| ilog(pk.count(), p)));
            sub_type.push(intern(&drops));
            let mut list = Vec::new();
            module.for_each_submodule_within(&g.iter().collect::<Vec<_>>(), &mut |f: &[u32]| {
                let h = set_hash(f.iter().copied());
                let start = index.partition_point(|e| e.0 < h);
                let id = index[start..]
                    .iter()
                    .take_while(|e| e.0 == h)
                    .map(|e| e.1)
                    .find(|&id| {
                        let b = &subs[id as usize];
                        b.count() as usize == f.len() && f.iter().all(|&x| b.contains(x as usize))
                    })
                    .expect("every submodule is indexed");
                let fb = &subs[id as usize];
                drops.clear();
                drops.extend(powers.iter().map(|pk| ilog(pk.count(), p) - ilog(pk.intersection_count(fb), p)));
                list.push((id, intern(&drops)));
            });
            list.sort_unstable();
            below.push(list);
        }
        Self { module: module.clone(), subs, sub_type, below, types }
    }

    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    /// Number of pairs `F ⊆ G`.
    pub fn pair_count(&self) -> usize {
        self.below.iter().map(Vec::len).sum()
    }

    fn top(&self) -> usize {
        self.subs.len() - 1
    }

    pub fn submodule(&self, id: usize) -> Submodule {
        Submodule { elems: self.subs[id].iter().collect() }
    }

    /// `(type N, type M/N)` for every submodule `N`.
    pub fn sub_and_quotient_types(&self) -> Vec<(LambdaVec, LambdaVec)> {
        self.below[self.top()]
            .iter()
            .map(|&(f, q)| (self.types[self.sub_type[f as usize] as usize].clone(), self.types[q as usize].clone()))
            .collect()
    }

    /// Chains of length `r` whose `i`-th graded piece satisfies `pred(i, type)`, counted
    /// per end point; `table[i][G]` counts chains of length `i` ending at `G`.
    fn typed_chain_table(&self, r: usize, pred: &dyn Fn(usize, &LambdaVec) -> bool) -> Vec<Vec<u128>> {
        let n = self.subs.len();
        let mut table = vec![vec![0u128; n]];
        table[0][0] = 1;
        for i in 0..r {
            let ok: Vec<bool> = self.types.iter().map(|t| pred(i, t)).collect();
            let prev = &table[i];
            let next: Vec<u128> = (0..n)
                .map(|g| self.below[g].iter().filter(|&&(_, q)| ok[q as usize]).map(|&(f, _)| prev[f as usize]).sum())
                .collect();
            table.push(next);
        }
        table
    }

    /// Number of chains `0 = F_0 ⊆ ⋯ ⊆ F_r = M` with `pred(i, [Gr_{i+1}])` for all `i`.
    pub fn count_typed_chains(&self, r: usize, pred: &dyn Fn(usize, &LambdaVec) -> bool) -> u128 {
        if r == 0 {
            return u128::from(self.top() == 0);
        }
        self.typed_chain_table(r, pred)[r][self.top()]
    }

    /// The chain with `[Gr_i] = targets[i]`, when exactly one exists and every other
    /// chain has some `[Gr_i]` lex-below its target.
    pub fn unique_filtration(&self, targets: &[LambdaVec]) -> Result<Filtration, ModuleError> {
        let joined = targets.iter().fold(LambdaVec::empty(), |acc, t| acc.vee(t));
        if &joined != self.module.shape() {
            return Err(ModuleError::Bounds(format!("targets join to ({joined}), module is ({})", self.module.shape())));
        }
        let r = targets.len();
        let exact = |i: usize, t: &LambdaVec| t == &targets[i];
        let table = self.typed_chain_table(r, &exact);
        let found = table[r][self.top()];
        let at_least = self.count_typed_chains(r, &|i, t| t.cmp(&targets[i]) != Ordering::Less);
        if found != 1 || at_least != 1 {
            return Err(ModuleError::Invariant(format!(
                "{found} chains match the targets and {at_least} are lex-above them in ({})",
                self.module.shape()
            )));
        }
        let mut steps = vec![self.submodule(self.top())];
        let mut g = self.top();
        for i in (0..r).rev() {
            let (f, _) = self.below[g]
                .iter()
                .find(|&&(f, q)| self.types[q as usize] == targets[i] && table[i][f as usize] > 0)
                .ok_or_else(|| ModuleError::Invariant("backtracking lost the chain".into()))?;
            g = *f as usize;
            steps.push(self.submodule(g));
        }
        steps.reverse();
        Ok(Filtration { steps })
    }

    /// Counts of strict chains ending at `M`, keyed by the tuple of generator counts of
    /// the graded pieces (all positive). Complete, since a strict chain is no longer
    /// than the length of `M`.
    pub fn strict_chain_histogram(&self) -> ExactTable {
        // Tuples are packed four bits per entry; every entry is at most the number of parts.
        let n = self.subs.len();
        let gens: Vec<u64> = self.types.iter().map(|t| t.len() as u64).collect();
        let mut cur: Vec<Vec<(u64, u128)>> = vec![Vec::new(); n];
        cur[0].push((0, 1));
        let mut hist = BTreeMap::new();
        hist.insert(Vec::new(), u128::from(n == 1));
        let mut scratch: Vec<(u64, u128)> = Vec::new();
        for len in 1..=self.module.length() as usize {
            let mut next: Vec<Vec<(u64, u128)>> = vec![Vec::new(); n];
            for (g, slot) in next.iter_mut().enumerate() {
                scratch.clear();
                for &(f, q) in &self.below[g] {
                    if f as usize != g {
                        scratch.extend(cur[f as usize].iter().map(|&(t, c)| ((t << 4) | gens[q as usize], c)));
                    }
                }
                scratch.sort_unstable_by_key(|e| e.0);
                for &(t, c) in &scratch {
                    match slot.last_mut() {
                        Some(last) if last.0 == t => last.1 += c,
                        _ => slot.push((t, c)),
                    }
                }
            }
            for &(t, c) in &next[self.top()] {
                let key: Vec<u8> = (0..len).rev().map(|i| ((t >> (4 * i)) & 15) as u8).collect();
                hist.insert(key, c);
            }
            cur = next;
        }
        ExactTable { mingen: self.module.shape().len(), hist }
    }

    /// Every `N ⊆ M` has `[M] ≥ [N] ∨ [M/N]`.
    pub fn check_convexity(&self) -> Result<usize, ModuleError> {
        let shape = self.module.shape();
        let pairs = self.sub_and_quotient_types();
        for (s, q) in &pairs {
            if &s.vee(q) > shape {
                return Err(ModuleError::Invariant(format!("({s}) v ({q}) exceeds ({shape})")));
            }
        }
        Ok(pairs.len())
    }

    /// Submodules and quotients are lex-below the module.
    pub fn check_inj_surj(&self) -> Result<usize, ModuleError> {
        let shape = self.module.shape();
        let pairs = self.sub_and_quotient_types();
        for (s, q) in &pairs {
            if s > shape || q > shape {
                return Err(ModuleError::Invariant(format!("({s}) or ({q}) exceeds ({shape})")));
            }
        }
        Ok(pairs.len())
    }

    /// For every split `[M] = s′ ∨ s″` exactly one `N` has types `(s′, s″)`, and every
    /// other `N` is strictly below on one side. Returns the number of splits checked.
    pub fn check_uniqueness(&self) -> Result<usize, ModuleError> {
        let shape = self.module.shape();
        let pairs = self.sub_and_quotient_types();
        let mut checked = 0;
        for s1 in super::sub_partitions(shape) {
            let Some(s2) = vee_complement(shape, &s1) else { continue };
            checked += 1;
            let mut hits = 0;
            for (s, q) in &pairs {
                if s == &s1 && q == &s2 {
                    hits += 1;
                } else if !(s < &s1 || q < &s2) {
                    return Err(ModuleError::Invariant(format!("({s}, {q}) not below ({s1}, {s2}) in ({shape})")));
                }
            }
            if hits != 1 {
                return Err(ModuleError::Invariant(format!("{hits} submodules of types ({s1}, {s2}) in ({shape})")));
            }
        }
        Ok(checked)
    }
}

/// `s″` with `s′ ∨ s″ = λ`, if it exists.
pub fn vee_complement(lambda: &LambdaVec, s1: &LambdaVec) -> Option<LambdaVec> {
    let diff: Vec<u32> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &l)| l.checked_sub(s1.parts().get(i).copied().unwrap_or(0)))
        .collect::<Option<_>>()?;
    if s1.len() > lambda.len() || diff.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    Some(LambdaVec::from_parts(diff))
}

/// Every ordered sequence of nonempty types whose `∨` is `λ`.
pub fn vee_factorizations(lambda: &LambdaVec) -> Vec<Vec<LambdaVec>> {
    if lambda.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in super::sub_partitions(lambda).into_iter().filter(|s| !s.is_empty()) {
        let Some(rest) = vee_complement(lambda, &first) else { continue };
        for mut tail in vee_factorizations(&rest) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

/// Exact chain counts read off the strict-chain histogram.
pub struct ExactTable {
    mingen: usize,
    hist: BTreeMap<Vec<u8>, u128>,
}

impl ExactTable {
    /// Chains with `mingen(Gr_i) = gens[i]`; zero entries are equal consecutive steps.
    pub fn exact(&self, gens: &[i64]) -> u128 {
        if gens.iter().any(|&g| g < 0 || g > self.mingen as i64) {
            return 0;
        }
        let key: Vec<u8> = gens.iter().filter(|&&g| g > 0).map(|&g| g as u8).collect();
        self.hist.get(&key).copied().unwrap_or(0)
    }

    /// Chains with `mingen(Gr_i) ≤ bounds[i]`.
    pub fn atmost(&self, bounds: &[i64]) -> u128 {
        if bounds.iter().any(|&b| b < 0) {
            return 0;
        }
        let caps: Vec<i64> = bounds.iter().map(|&b| b.min(self.mingen as i64)).collect();
        let mut total = 0;
        let mut e = vec![0i64; caps.len()];
        loop {
            total += self.exact(&e);
            let mut i = 0;
            loop {
                if i == e.len() {
                    return total;
                }
                if e[i] < caps[i] {
                    e[i] += 1;
                    break;
                }
                e[i] = 0;
                i += 1;
            }
        }
    }
}
