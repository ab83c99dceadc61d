//! Seeded random corpora shared by the integration tests.

#![allow(dead_code)]

use newform_core::{CuspidalLabel, Multisegment, Segment};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A ladder of one to `max_segments` segments, built from the bottom segment upward with
/// starts and ends strictly increasing.
pub fn random_ladder(rng: &mut impl Rng, max_segments: usize) -> Multisegment {
    let t = rng.gen_range(1..=max_segments);
    let (mut a, mut b) = (0i64, rng.gen_range(0..3i64));
    let mut bounds = vec![(a, b)];
    for _ in 1..t {
        a += rng.gen_range(1..=2);
        b = (b + rng.gen_range(1..=2)).max(a + rng.gen_range(0..2));
        bounds.push((a, b));
    }
    Multisegment::from_bounds(&bounds).expect("valid bounds")
}

/// `count` distinct ladders with `filter` true, in generation order.
pub fn ladders(seed: u64, count: usize, max_segments: usize, filter: impl Fn(&Multisegment) -> bool) -> Vec<Multisegment> {
    let mut r = rng(seed);
    let mut out: Vec<Multisegment> = Vec::new();
    while out.len() < count {
        let m = random_ladder(&mut r, max_segments);
        if filter(&m) && !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

/// Up to six segments on the `χ` line with starts in `-2..4` and lengths `1..=4`.
pub fn random_unipotent(rng: &mut impl Rng, max_len: u32) -> Multisegment {
    loop {
        let k = rng.gen_range(0..=6);
        let bounds: Vec<(i64, i64)> = (0..k)
            .map(|_| {
                let a = rng.gen_range(-2..4i64);
                (a, a + rng.gen_range(0..4i64))
            })
            .collect();
        let m = Multisegment::from_bounds(&bounds).expect("valid bounds");
        if m.len() <= max_len {
            return m;
        }
    }
}

pub fn unipotent_corpus(seed: u64, count: usize, max_len: u32) -> Vec<Multisegment> {
    let mut r = rng(seed);
    (0..count).map(|_| random_unipotent(&mut r, max_len)).collect()
}

fn label(i: u8) -> CuspidalLabel {
    match i {
        0 => CuspidalLabel::chi(),
        1 => CuspidalLabel::unipotent("psi"),
        2 => CuspidalLabel::ramified("rho", 2, 1).expect("valid label"),
        _ => CuspidalLabel::ramified("sigma", 1, 2).expect("valid label"),
    }
}

/// Segments on two unramified and two ramified lines, rank at most `max_rank`.
pub fn mixed_corpus(seed: u64, count: usize, max_rank: u32) -> Vec<Multisegment> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let k = r.gen_range(0..=6);
        let segs: Vec<Segment> = (0..k)
            .map(|_| {
                let a = r.gen_range(-2..4i64);
                let b = a + r.gen_range(0..3i64);
                Segment::new(label(r.gen_range(0..4u8)), a, b).expect("valid segment")
            })
            .collect();
        let m = Multisegment::canonicalize(segs).expect("one label per line");
        if m.rank() <= max_rank {
            out.push(m);
        }
    }
    out
}
