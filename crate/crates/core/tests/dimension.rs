use newform_core::dimension::{ladder_dim, standard_module_dim, Dimensions, Factor, TruncatedGradedPoly};
use newform_core::omodule::{partitions, FiltrationCounter};
use newform_core::{LambdaVec, Multisegment};
use proptest::prelude::*;

fn lv(p: &[u32]) -> LambdaVec {
    LambdaVec::from_parts(p.iter().copied())
}

fn ms(b: &[(i64, i64)]) -> Multisegment {
    Multisegment::from_bounds(b).unwrap()
}

#[test]
fn ladder_headline() {
    let m = ms(&[(5, 7), (3, 6), (2, 5), (0, 3)]);
    let lambda = m.lambda();
    assert_eq!(lambda, lv(&[3, 3, 3, 1]));
    assert_eq!(m.rank(), 15);
    assert_eq!(ladder_dim(&m, &lambda, 2).unwrap(), 1);
}

#[test]
fn ladder_headline_sweep() {
    let m = ms(&[(5, 7), (3, 6), (2, 5), (0, 3)]);
    let mut d = Dimensions::new(2).unwrap();
    let r = d.verify_newform_ladder(&m, 4).unwrap();
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    assert!(r.checks.len() > 30);
}

#[test]
fn iwahori_dimension() {
    let m = ms(&[(1, 1), (0, 0)]);
    for p in [2, 3] {
        assert_eq!(standard_module_dim(&m, &lv(&[1]), p).unwrap(), 2);
        assert_eq!(standard_module_dim(&m, &lv(&[]), p).unwrap(), 1);
    }
}

#[test]
fn mackey_generalizes_standard_modules() {
    let one = |_: &LambdaVec| 1u128;
    for p in [2, 3] {
        let mut d = Dimensions::new(p).unwrap();
        let mut counter = FiltrationCounter::new(p).unwrap();
        for m in [ms(&[(0, 1), (3, 3)]), ms(&[(0, 2), (1, 1), (5, 5)]), ms(&[(0, 0), (2, 2), (4, 4)])] {
            let factors: Vec<Factor> = m.segments().iter().map(|s| Factor { rank: s.len(), oracle: &one }).collect();
            let bounds: Vec<i64> = m.segments().iter().map(|s| i64::from(s.len())).collect();
            for size in 0..=4 {
                for lambda in partitions(size, m.rank() as usize) {
                    let standard = d.standard_module_dim(&m, &lambda).unwrap().dim;
                    assert_eq!(d.mackey_dim(&factors, &lambda).unwrap().dim, standard);
                    assert_eq!(counter.count_atmost(&lambda, &bounds).unwrap(), standard);
                }
            }
        }
    }
}

#[test]
fn xi_of_products_counts_filtrations() {
    let mut d = Dimensions::new(2).unwrap();
    for size in 0..=6 {
        for shape in partitions(size, size as usize) {
            for ms_ in [vec![1u32], vec![2, 1], vec![1, 3], vec![2, 2, 1], vec![3, 1, 2]] {
                let product = ms_.iter().fold(TruncatedGradedPoly::one(12), |acc, &m| &acc * &TruncatedGradedPoly::y(m, 12));
                let bounds: Vec<i64> = ms_.iter().map(|&m| i64::from(m)).collect();
                let n = d.counter().count_atmost(&shape, &bounds).unwrap();
                assert_eq!(d.xi(&shape, &product).unwrap(), n as i128, "({shape}) {ms_:?}");
            }
        }
    }
}

#[test]
fn steinberg_vanishing() {
    let mut d = Dimensions::new(2).unwrap();
    for n in 1..=6 {
        let r = d.steinberg_check(n).unwrap();
        assert!(r.passed(), "n = {n}");
        assert_eq!(r.xi.len(), (0..n.saturating_sub(1)).map(|s| partitions(s, s as usize).len()).sum::<usize>());
    }
    for n in 2..=5 {
        let st = newform_core::dimension::steinberg(n);
        assert_eq!(st.lambda(), lv(&[n - 1]));
        let r = d.verify_newform_ladder(&st, n).unwrap();
        assert!(r.passed(), "n = {n}");
    }
}

#[test]
fn conductor_bound_examples() {
    let mut d = Dimensions::new(2).unwrap();
    let r = d.verify_conj12(&ms(&[(1, 2), (0, 0)])).unwrap();
    assert_eq!(r.checks.len(), 1);
    assert!(r.passed());
    assert!(d.verify_conj12(&ms(&[(0, 5)])).unwrap().checks.is_empty());
    let r = d.verify_conj12(&ms(&[(0, 3), (1, 2), (6, 6)])).unwrap();
    assert!(r.passed());
}

fn ladder(max_len: u32) -> impl Strategy<Value = Multisegment> {
    prop::collection::vec((1i64..3, 0i64..3), 1..5)
        .prop_map(|steps| {
            let (mut a, mut b) = (0i64, 0i64);
            let mut segs = Vec::new();
            for (da, db) in steps {
                b = b.max(a) + db;
                segs.push((a, b));
                a += da;
                b += 1;
            }
            ms(&segs)
        })
        .prop_filter("length bound", move |m| m.len() <= max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn alternating_sum_collapses(m in ladder(10)) {
        prop_assume!(m.is_ladder().unwrap());
        let mut d = Dimensions::new(2).unwrap();
        let cap = newform_core::dimension::default_entry_cap(&m.lambda()).min(4);
        let r = d.verify_newform_ladder(&m, cap).unwrap();
        prop_assert!(r.passed(), "{}: {:?}", m, r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn pattern_is_prime_independent(m in ladder(6)) {
        prop_assume!(m.is_ladder().unwrap());
        let cap = newform_core::dimension::default_entry_cap(&m.lambda());
        let two = Dimensions::new(2).unwrap().verify_newform_ladder(&m, cap).unwrap();
        let three = Dimensions::new(3).unwrap().verify_newform_ladder(&m, cap).unwrap();
        prop_assert!(two.passed());
        let dims = |r: &newform_core::dimension::SweepReport| r.checks.iter().map(|c| (c.lambda.clone(), c.dim)).collect::<Vec<_>>();
        prop_assert_eq!(dims(&two), dims(&three));
    }
}
