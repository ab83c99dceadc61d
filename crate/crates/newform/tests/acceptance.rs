//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use newform_core::dimension::{standard_module_dim, Dimensions};
use newform_core::gradedpair::{derivative_pair_check, dual_with_escalation, ram_with_escalation, OracleConfig};
use newform_core::multiseg::{kz_chain_count, kz_path_count, Padded};
use newform_core::omodule::{partitions, vee_factorizations, FiltrationCounter, FiniteModule, Lattice};
use newform_core::{LambdaVec, Multisegment};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ms(b: &[(i64, i64)]) -> Multisegment {
    Multisegment::from_bounds(b).unwrap()
}

fn lv(p: &[u32]) -> LambdaVec {
    LambdaVec::from_parts(p.iter().copied())
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure!(t < limit, "{what} took {t:?}, limit {limit:?}");
    Ok(t)
}

fn golden_chain() -> Outcome {
    let start = Instant::now();
    let m = ms(&[(5, 6), (3, 7), (3, 4), (2, 5), (3, 3), (1, 2), (0, 0)]);
    let (top, rest) = m.split_max().map_err(|e| e.to_string())?;
    ensure!(top == ms(&[(3, 7), (2, 5), (1, 2), (0, 0)]), "m_max = {top}");
    ensure!(rest == ms(&[(5, 6), (3, 4), (3, 3)]), "remainder = {rest}");
    let dual = top.ladder_dual().map_err(|e| e.to_string())?;
    ensure!(dual == ms(&[(7, 7), (5, 6), (4, 5), (2, 4), (0, 3)]), "dual of m_max = {dual}");
    let top_ram = top.ladder_ram().map_err(|e| e.to_string())?;
    ensure!(top_ram == ms(&[(2, 5), (1, 2), (0, 0)]), "ram of m_max = {top_ram}");
    let pair = ms(&[(5, 6), (3, 4)]).ram().map_err(|e| e.to_string())?;
    ensure!(pair == ms(&[(4, 4)]), "ram of [5,6]+[3,4] = {pair}");
    let ram = m.ram().map_err(|e| e.to_string())?;
    ensure!(ram == ms(&[(4, 4), (2, 5), (1, 2), (0, 0)]), "ram = {ram}");
    let t = within(start, Duration::from_secs(1), "golden chain")?;
    Ok(format!("ram = {ram} in {t:?}"))
}

fn headline() -> Outcome {
    let m = ms(&[(5, 7), (3, 6), (2, 5), (0, 3)]);
    let lambda = m.lambda();
    let shown = Padded(&lambda, m.rank() as usize).to_string();
    ensure!(shown == "0^11,1,3,3,3", "λ_π = {shown}");
    let d = Dimensions::new(2).map_err(|e| e.to_string())?.ladder_dim(&m, &lambda).map_err(|e| e.to_string())?;
    ensure!(d.dim == 1, "dimension {} at λ_π", d.dim);
    Ok(format!("λ_π = {shown}, dim = 1"))
}

fn newform_sweeps() -> Outcome {
    let ex = ms(&[(5, 7), (3, 6), (2, 5), (0, 3)]);
    let mut corpus = vec![ex];
    corpus.extend(common::ladders(0x5eed_0003, 50, 8, |m| m.len() <= 8));
    let mut d2 = Dimensions::new(2).map_err(|e| e.to_string())?;
    let mut d3 = Dimensions::new(3).map_err(|e| e.to_string())?;
    let (mut levels, mut compared) = (0, 0);
    for m in &corpus {
        let r2 = d2.verify_newform_ladder(m, 4).map_err(|e| format!("{m}: {e}"))?;
        ensure!(r2.passed(), "{m} at p = 2: {:?}", r2.failures().collect::<Vec<_>>());
        levels += r2.checks.len();
        if m.len() <= 6 {
            let r3 = d3.verify_newform_ladder(m, 4).map_err(|e| format!("{m}: {e}"))?;
            let pattern = |r: &newform_core::dimension::SweepReport| r.checks.iter().map(|c| (c.lambda.clone(), c.passed())).collect::<Vec<_>>();
            ensure!(pattern(&r2) == pattern(&r3), "{m}: pass pattern differs between p = 2 and p = 3");
            compared += 1;
        }
    }
    Ok(format!("{} ladders, {levels} levels at p = 2, {compared} also at p = 3", corpus.len()))
}

fn conductor_bound() -> Outcome {
    let corpus = common::ladders(0x5eed_0004, 50, 8, |m| m.lambda().size() <= 6);
    let mut d = Dimensions::new(2).map_err(|e| e.to_string())?;
    let mut levels = 0;
    for m in &corpus {
        let r = d.verify_conj12(m).map_err(|e| format!("{m}: {e}"))?;
        ensure!(r.passed(), "{m}: {:?}", r.failures().collect::<Vec<_>>());
        levels += r.checks.len();
    }
    Ok(format!("{} ladders, {levels} levels", corpus.len()))
}

fn lambda_equivalence() -> Outcome {
    let corpus = common::mixed_corpus(0x5eed_0005, 500, 12);
    let ramified = corpus.iter().filter(|m| !m.is_unipotent()).count();
    for m in &corpus {
        let via = m.lambda_via_derivatives().map_err(|e| format!("{m}: {e}"))?;
        ensure!(via == m.lambda(), "{m}: {via} against {}", m.lambda());
    }
    Ok(format!("500 multisegments, {ramified} with ramified lines"))
}

fn duality_corpus() -> Vec<Multisegment> {
    let mut corpus = common::unipotent_corpus(0x5eed_0006, 299, 10);
    corpus.push(ms(&[(3, 7), (2, 5), (1, 2), (0, 0)]));
    corpus
}

fn duality_suite() -> Outcome {
    let cfg = OracleConfig::default();
    let mut escalated = 0;
    for m in &duality_corpus() {
        let d = dual_with_escalation(m, &cfg).map_err(|e| format!("{m}: {e}"))?;
        ensure!(d.level < 3, "{m}: oracle reached escalation level {}", d.level);
        escalated += usize::from(d.level > 1);
        let back = dual_with_escalation(&d.value, &cfg).map_err(|e| format!("{}: {e}", d.value))?;
        ensure!(back.value == *m, "{m}: dual of dual is {}", back.value);
        ensure!(d.value.len() == m.len(), "{m}: dual has length {}", d.value.len());
        let (lo, hi) = m.support().unwrap_or((0, 0));
        for x in lo - 1..=hi + 1 {
            ensure!(d.value.point_count(x) == m.point_count(x), "{m}: support differs at {x}");
            let kz = m.kz_dual_edge_count(x).map_err(|e| format!("{m}: {e}"))?;
            ensure!(kz_chain_count(m, x) == kz_path_count(m, x), "{m}: chain and path counts differ at {x}");
            ensure!(kz == d.value.edge_count(x) as u64, "{m}: edge count {kz} at {x}, dual has {}", d.value.edge_count(x));
        }
    }
    ensure!(escalated == 0, "{escalated} cases escalated beyond level 1");
    Ok("300 multisegments, no escalation beyond level 1".into())
}

fn oracle_agreement() -> Outcome {
    let cfg = OracleConfig::default();
    for m in &duality_corpus() {
        let oracle = ram_with_escalation(m, &cfg).map_err(|e| format!("{m}: {e}"))?.value;
        let ram = m.ram().map_err(|e| format!("{m}: {e}"))?;
        ensure!(oracle == ram, "{m}: oracle {oracle}, recursion {ram}");
        ensure!(derivative_pair_check(m).map_err(|e| e.to_string())?, "{m}: image of N has the wrong type");
    }
    Ok("300 multisegments".into())
}

/// Every tuple in `lo..=hi` of length `r`.
fn tuples(r: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (0..r).fold(vec![Vec::new()], |acc, _| acc.into_iter().flat_map(|t| (lo..=hi).map(move |v| [t.clone(), vec![v]].concat())).collect())
}

fn permutations(v: &[i64]) -> Vec<Vec<i64>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn module_suite() -> Outcome {
    let mut shapes_checked = 0;
    let mut queries = 0u64;
    for p in [2, 3] {
        let mut counter = FiltrationCounter::new(p).map_err(|e| e.to_string())?;
        for shape in (0..=6).flat_map(|n| partitions(n, n as usize)) {
            let m = FiniteModule::new(p, shape.clone()).map_err(|e| e.to_string())?;
            let lattice = Lattice::new(&m);
            let ctx = |e: newform_core::omodule::ModuleError| format!("({shape}) at p = {p}: {e}");
            lattice.check_convexity().map_err(ctx)?;
            lattice.check_inj_surj().map_err(ctx)?;
            lattice.check_uniqueness().map_err(ctx)?;
            for targets in vee_factorizations(&shape) {
                let f = lattice.unique_filtration(&targets).map_err(ctx)?;
                ensure!(f.graded_shapes(&m) == targets, "({shape}) at p = {p}: wrong graded pieces");
            }
            let k = shape.len() as i64;
            let table = lattice.strict_chain_histogram();
            for r in 0..=4 {
                for bounds in tuples(r, -1, k + 1) {
                    let brute = table.atmost(&bounds);
                    let recursive = counter.count_atmost(&shape, &bounds).map_err(ctx)?;
                    ensure!(brute == recursive, "({shape}) at p = {p}, bounds {bounds:?}: {brute} against {recursive}");
                    let exact = counter.count_exact(&shape, &bounds).map_err(ctx)?;
                    ensure!(table.exact(&bounds) == exact, "({shape}) at p = {p}, exact {bounds:?}");
                    if r <= 3 && bounds.iter().all(|&b| b >= 0) {
                        for perm in permutations(&bounds) {
                            ensure!(counter.count_exact(&shape, &perm).map_err(ctx)? == exact, "({shape}) at p = {p}: {perm:?} against {bounds:?}");
                        }
                    }
                    queries += 1;
                }
            }
            shapes_checked += 1;
        }
    }
    Ok(format!("{shapes_checked} modules, {queries} bound vectors"))
}

fn steinberg_vanishing() -> Outcome {
    let start = Instant::now();
    let mut d = Dimensions::new(2).map_err(|e| e.to_string())?;
    let mut modules = 0;
    for n in 2..=6 {
        let r = d.steinberg_check(n).map_err(|e| e.to_string())?;
        ensure!(r.in_ideal, "f_{n} = {} is not in I_{}", r.f, n - 1);
        ensure!(r.series_matches, "series coefficient for n = {n} differs");
        if let Some((shape, v)) = r.xi.iter().find(|e| e.1 != 0) {
            return Err(format!("ξ_M(f_{n}) = {v} for M of type ({shape})"));
        }
        modules += r.xi.len();
    }
    let t = within(start, Duration::from_secs(60), "Steinberg checks")?;
    Ok(format!("n = 2..6, {modules} modules, {t:?}"))
}

fn iwahori() -> Outcome {
    let m = ms(&[(1, 1), (0, 0)]);
    for p in [2, 3] {
        let d = standard_module_dim(&m, &lv(&[1]), p).map_err(|e| e.to_string())?;
        ensure!(d == 2, "dimension {d} at p = {p}");
    }
    Ok("2 at p = 2 and p = 3".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("golden ram chain", golden_chain),
        ("ladder example headline", headline),
        ("newform sweeps", newform_sweeps),
        ("conductor bound", conductor_bound),
        ("lambda via derivatives", lambda_equivalence),
        ("duality suite", duality_suite),
        ("oracle and recursion agree", oracle_agreement),
        ("module theory suite", module_suite),
        ("Steinberg vanishing", steinberg_vanishing),
        ("Iwahori sanity", iwahori),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
