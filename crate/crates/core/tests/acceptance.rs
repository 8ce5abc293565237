//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL line;
//! the test fails if any of them does.
//!
//! Reference values that are not hard-coded counts come from oracles
//! written here, independently of the library code paths they check.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use raag_core::cm::{is_cohen_macaulay, CmMode};
use raag_core::complex::{flag_complex, Simplex, SimplicialComplex};
use raag_core::graph::{canonical_form, enumerate_levels};
use raag_core::homology::{boundary_matrix, reduced_homology, smith_normal_form, IntegerMatrix};
use raag_core::pso::{all_supports_forests, partial_conjugation_catalog, theta_graph, ThetaBackend};
use raag_core::raag::center_vertices;
use raag_core::search::{
    jsonl_sink, scan_corpus, search_random, verify_fixtures, CorpusSource, Emit, FixtureSet, ObstructionKind,
    ScanConfig, ScanReport, SearchConfig,
};
use raag_core::words::{is_inner, parabolic_double_coset_member, reduce, shuffle_orbit, Automorphism, Letter, Sign, Word};
use raag_core::{Jobs, SimpleGraph, VertexSet};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

// ---------------------------------------------------------------------------
// 1. fixtures

fn fixtures() -> Outcome {
    let start = Instant::now();
    let builtin = verify_fixtures(None).map_err(|e| e.to_string())?;
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let on_disk = verify_fixtures(Some(&dir)).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(10), "fixture verification")?;
    for report in [&builtin, &on_disk] {
        let failed: Vec<String> = report
            .groups
            .iter()
            .flat_map(|g| g.checks.iter().filter(|c| !c.passed).map(move |c| format!("group {}: {}", g.id, c.name)))
            .collect();
        ensure(report.groups.len() == 5, || format!("{} groups", report.groups.len()))?;
        ensure(failed.is_empty(), || failed.join("; "))?;
    }
    Ok(format!("5/5 groups in {:?}", start.elapsed()))
}

// ---------------------------------------------------------------------------
// 2. Θ(K2 ⊔ K3 ⊔ K4)

fn theta_of_free_product() -> Outcome {
    let g = SimpleGraph::complete(2)
        .disjoint_union(&SimpleGraph::complete(3))
        .disjoint_union(&SimpleGraph::complete(4));
    let comb = theta_graph(&g, ThetaBackend::Combinatorial).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let oracle = theta_graph(&g, ThetaBackend::WordOracle).map_err(|e| e.to_string())?;
    let oracle_time = start.elapsed();
    within(start, Duration::from_secs(60), "word-oracle backend")?;
    let target = canonical_form(&g).unwrap();
    ensure(canonical_form(&comb.theta).unwrap() == target, || format!("combinatorial Θ = {:?}", comb.theta))?;
    ensure(canonical_form(&oracle.theta).unwrap() == target, || format!("oracle Θ = {:?}", oracle.theta))?;
    ensure(comb.generator_labels == oracle.generator_labels, || "generator labels differ".into())?;
    ensure(comb.theta == oracle.theta, || "backends disagree edge for edge".into())?;
    Ok(format!("Θ ≅ K2 ⊔ K3 ⊔ K4 on both backends, oracle {oracle_time:?}"))
}

// ---------------------------------------------------------------------------
// 3, 4. exhaustive scans

fn collect_scan(max_n: usize) -> Result<(raag_core::search::ScanSummary, Vec<ScanReport>), String> {
    let mut finds = Vec::new();
    let summary = scan_corpus(CorpusSource::Enumerate { max_n }, &ScanConfig::default(), &mut |r: &ScanReport| {
        finds.push(r.clone());
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    Ok((summary, finds))
}

fn scan_to_seven() -> Outcome {
    let start = Instant::now();
    let (summary, finds) = collect_scan(7)?;
    within(start, Duration::from_secs(300), "scan to order 7")?;
    let counts: Vec<u64> = (1..=7).map(|n| summary.per_n.get(&n).map_or(0, |t| t.graphs)).collect();
    ensure(counts == [1, 2, 4, 11, 34, 156, 1044], || format!("counts {counts:?}"))?;
    ensure(summary.total() == 1252, || format!("total {}", summary.total()))?;
    ensure(summary.classes_including_order_zero == Some(1253), || {
        format!("{:?} including order 0", summary.classes_including_order_zero)
    })?;
    ensure(finds.is_empty() && summary.obstructed() == 0, || format!("{} obstructions", finds.len()))?;
    Ok(format!("1252 classes (1253 with order 0), 0 obstructions, {:?}", start.elapsed()))
}

fn scan_to_nine() -> Outcome {
    let start = Instant::now();
    let (summary, finds) = collect_scan(9)?;
    let elapsed = start.elapsed();
    let at = |n: usize| summary.per_n.get(&n).cloned().unwrap_or_default();
    ensure(at(8).graphs == 12_346, || format!("{} classes at n=8", at(8).graphs))?;
    ensure(at(9).graphs == 274_668, || format!("{} classes at n=9", at(9).graphs))?;
    ensure(at(8).obstructed == 0, || format!("{} obstructions at n=8", at(8).obstructed))?;
    ensure(finds.iter().all(|r| r.n == 9 && r.obstruction == Some(ObstructionKind::NonPure)), || {
        "unexpected find kind".into()
    })?;
    let mut edge_counts: Vec<usize> = finds.iter().map(|r| r.edge_count).collect();
    edge_counts.sort();
    ensure(edge_counts == [15, 17], || format!("finds with edge counts {edge_counts:?}"))?;
    ensure(finds.iter().all(|r| r.witnesses.max_support_edges.is_some_and(|m| m <= 1)), || "support graph with two edges".into())?;
    // The fixture files were recovered from this very scan, so this part
    // is a regression check on the tool, not independent confirmation.
    let found: BTreeSet<_> = finds.iter().map(|r| r.graph_code.clone()).collect();
    let fixtures: BTreeSet<_> = FixtureSet::builtin()
        .nine_gammas
        .iter()
        .map(|g| canonical_form(g).unwrap())
        .collect();
    ensure(found == fixtures, || format!("finds {found:?} vs fixtures {fixtures:?}"))?;
    Ok(format!(
        "12346 / 274668 classes; n=8 clean (as expected from random sampling); n=9 NonPure hits are the two nine-vertex examples (tool-derived), {elapsed:?}"
    ))
}

// ---------------------------------------------------------------------------
// 5. homology

/// Rank over Q by fraction-free elimination.
fn rational_rank(m: &IntegerMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k]) / &prev;
                a[r][k] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

fn rank_mod_p(m: &IntegerMatrix, p: i64) -> usize {
    let big_p = BigInt::from(p);
    let mut a: Vec<Vec<i64>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| {
                    let r: BigInt = ((x % &big_p) + &big_p) % &big_p;
                    i64::try_from(r).unwrap()
                })
                .collect()
        })
        .collect();
    let inv = |x: i64| (1..p).find(|y| x * y % p == 1).unwrap();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(pr) = (rank..m.rows()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, pr);
        let iv = inv(a[rank][c]);
        for r in 0..m.rows() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c] * iv % p;
                for k in 0..m.cols() {
                    a[r][k] = ((a[r][k] - f * a[rank][k]) % p + p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn check_complex(k: &SimplicialComplex, label: &str) -> Result<(), String> {
    let d = k.dimension();
    let profile = reduced_homology(k);
    let mats: Vec<IntegerMatrix> = (0..=d).map(|j| boundary_matrix(k, j).unwrap()).collect();
    for j in 1..=d as usize {
        ensure(mats[j - 1].mul(&mats[j]).is_zero(), || format!("{label}: ∂{}∂{} ≠ 0", j - 1, j))?;
    }
    for m in &mats {
        let s = smith_normal_form(m);
        ensure(s.u.mul(m).mul(&s.v) == s.diagonal_matrix(), || format!("{label}: U·A·V ≠ D"))?;
        ensure(s.u.determinant().abs().is_one() && s.v.determinant().abs().is_one(), || {
            format!("{label}: SNF transform not unimodular")
        })?;
        ensure(s.diagonal.iter().all(|x| x.is_positive()), || format!("{label}: nonpositive invariant factor"))?;
        ensure(s.diagonal.windows(2).all(|w| (&w[1] % &w[0]).is_zero()), || {
            format!("{label}: invariant factors not a divisor chain")
        })?;
    }
    let ranks: Vec<usize> = mats.iter().map(rational_rank).collect();
    let mut euler_faces = 0i64;
    for j in -1..=d {
        let c = k.face_count(j) as i64;
        euler_faces += if j.rem_euclid(2) == 0 { c } else { -c };
        let r_in = if j >= 0 { ranks[j as usize] } else { 0 };
        let r_out = if j < d { ranks[(j + 1) as usize] } else { 0 };
        let expected = c as usize - r_in - r_out;
        ensure(profile.free_rank(j) == expected, || {
            format!("{label}: rank H̃{j} = {} but oracle says {expected}", profile.free_rank(j))
        })?;
        if j < d {
            let m = &mats[(j + 1) as usize];
            for p in [2u32, 3, 5, 7] {
                let divisible = profile.torsion(j).iter().filter(|t| (*t % p).is_zero()).count();
                let rp = rank_mod_p(m, p as i64);
                ensure(rp + divisible == ranks[(j + 1) as usize], || {
                    format!("{label}: torsion of H̃{j} inconsistent mod {p}")
                })?;
            }
        } else {
            ensure(profile.torsion(j).is_empty(), || format!("{label}: torsion in top degree"))?;
        }
    }
    ensure(euler_faces == profile.reduced_euler_characteristic(), || {
        format!("{label}: χ̃ {euler_faces} vs {}", profile.reduced_euler_characteristic())
    })?;
    Ok(())
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> SimpleGraph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    SimpleGraph::from_edges(n, edges).unwrap()
}

fn rp2() -> SimplicialComplex {
    let facets = [
        [0, 1, 3],
        [1, 2, 3],
        [0, 2, 4],
        [1, 2, 4],
        [0, 3, 4],
        [2, 3, 5],
        [1, 4, 5],
        [0, 1, 5],
        [0, 2, 5],
        [3, 4, 5],
    ];
    SimplicialComplex::from_facets(6, facets.iter().map(|f| Simplex::new(f.to_vec())).collect()).unwrap()
}

fn homology_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut complexes: Vec<(String, SimplicialComplex)> = Vec::new();
    for i in 0..420 {
        let n = rng.gen_range(1..=9);
        let p = rng.gen_range(0.2..0.8);
        complexes.push((format!("flag #{i}"), flag_complex(&random_graph(&mut rng, n, p))));
    }
    for i in 0..120 {
        let n = rng.gen_range(2..=7);
        let facets: Vec<Simplex> = (0..rng.gen_range(1..=7))
            .map(|_| {
                let size = rng.gen_range(1..=4.min(n));
                let mut vs: Vec<usize> = (0..n).collect();
                for j in 0..size {
                    let k = rng.gen_range(j..n);
                    vs.swap(j, k);
                }
                Simplex::new(vs[..size].to_vec())
            })
            .collect();
        complexes.push((format!("random #{i}"), SimplicialComplex::from_facets(n, facets).unwrap()));
    }
    complexes.push(("RP²".into(), rp2()));
    for (label, k) in &complexes {
        check_complex(k, label)?;
    }
    let c5 = reduced_homology(&flag_complex(&SimpleGraph::cycle(5)));
    ensure(c5.free_rank(1) == 1 && c5.torsion(1).is_empty(), || "H̃1(flag C5) ≠ Z".into())?;
    ensure((-1..=1).filter(|&j| j != 1).all(|j| c5.degree(j).is_none_or(|d| d.is_zero())), || {
        "flag C5 has extra homology".into()
    })?;
    // K6 minus a perfect matching.
    let octahedron = SimpleGraph::from_edges(6, [(0, 3), (1, 4), (2, 5)]).unwrap().complement();
    let oct = reduced_homology(&flag_complex(&octahedron));
    ensure(oct.free_rank(2) == 1 && oct.torsion(2).is_empty(), || "H̃2(octahedron) ≠ Z".into())?;
    ensure((-1..2).all(|j| oct.degree(j).is_none_or(|d| d.is_zero())), || "octahedron has extra homology".into())?;
    let rp = reduced_homology(&rp2());
    ensure(rp.free_rank(1) == 0 && rp.torsion(1).len() == 1, || "H̃1(RP²) ≠ Z/2".into())?;
    Ok(format!("{} complexes; flag(C5) H̃1 = Z, octahedron H̃2 = Z", complexes.len()))
}

// ---------------------------------------------------------------------------
// 6. Cohen–Macaulay on small graphs

fn cm_small_graphs() -> Outcome {
    let levels = enumerate_levels(7, Jobs::AUTO).map_err(|e| e.to_string())?;
    let (mut one_dim, mut implications) = (0, 0);
    for g in levels.iter().flatten() {
        let k = flag_complex(g);
        let full = is_cohen_macaulay(&k, CmMode::Full);
        let purity = is_cohen_macaulay(&k, CmMode::PurityOnly);
        let connectivity = is_cohen_macaulay(&k, CmMode::PurityAndConnectivity);
        if !purity.is_cm || !connectivity.is_cm {
            ensure(!full.is_cm, || format!("{g:?}: cheap check failed but full check passed"))?;
            implications += 1;
        }
        let (dim, pure) = k.purity_and_dimension();
        if dim == 1 && pure {
            one_dim += 1;
            ensure(full.is_cm == g.is_connected(), || format!("{g:?}: CM {} connected {}", full.is_cm, g.is_connected()))?;
        }
    }
    ensure(one_dim > 0, || "no one-dimensional pure complexes".into())?;
    Ok(format!("{one_dim} pure 1-dim complexes: CM ⇔ connected; {implications} cheap failures all fail fully"))
}

// ---------------------------------------------------------------------------
// 7. word oracle

type Raw = Vec<(usize, bool)>;

fn raw(w: &Word) -> Raw {
    w.letters().iter().map(|l| (l.vertex, l.sign == Sign::Plus)).collect()
}

fn to_word(g: &Arc<SimpleGraph>, r: &[(usize, bool)]) -> Word {
    let letters = r.iter().map(|&(v, s)| if s { Letter::pos(v) } else { Letter::neg(v) }).collect();
    Word::new(Arc::clone(g), letters).unwrap()
}

/// All shortest words reachable from `w` by swapping adjacent commuting
/// letters and deleting adjacent inverse pairs: the geodesics of `w`.
fn geodesics(g: &SimpleGraph, w: &Raw) -> BTreeSet<Raw> {
    let mut seen: HashSet<Raw> = HashSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(cur) = queue.pop_front() {
        for i in 0..cur.len().saturating_sub(1) {
            let (a, b) = (cur[i], cur[i + 1]);
            let mut next = cur.clone();
            if a.0 == b.0 && a.1 != b.1 {
                next.drain(i..i + 2);
            } else if a.0 != b.0 && g.has_edge(a.0, b.0) {
                next.swap(i, i + 1);
            } else {
                continue;
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let min = seen.iter().map(Vec::len).min().unwrap();
    seen.into_iter().filter(|x| x.len() == min).collect()
}

fn random_word(rng: &mut ChaCha8Rng, pool: &[usize], len: usize) -> Raw {
    if pool.is_empty() {
        return Vec::new();
    }
    (0..len).map(|_| (pool[rng.gen_range(0..pool.len())], rng.gen_bool(0.5))).collect()
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> VertexSet {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

/// Compares greedy membership in `⟨Λ⟩·⟨M⟩` with a search over all
/// geodesics of `h`; returns whether `h` is a member.
fn check_double_coset(g: &Arc<SimpleGraph>, h: &Raw, lambda: &VertexSet, mu: &VertexSet) -> Result<bool, String> {
    let word = to_word(g, h);
    let geo = geodesics(g, h);
    let reduced = reduce(&word);
    ensure(geo.first() == Some(&raw(&reduced)), || format!("{g:?}: reduce({word:?}) = {reduced:?}"))?;
    let orbit: BTreeSet<Raw> = shuffle_orbit(&reduced, 100_000).unwrap().iter().map(raw).collect();
    ensure(orbit == geo, || format!("{g:?}: shuffle orbit of {reduced:?} is not the geodesic set"))?;

    let brute = geo.iter().any(|w| {
        (0..=w.len()).any(|cut| w[..cut].iter().all(|l| lambda.contains(l.0)) && w[cut..].iter().all(|l| mu.contains(l.0)))
    });
    let greedy = parabolic_double_coset_member(&word, lambda, mu);
    ensure(greedy.is_some() == brute, || {
        format!("{g:?}: {word:?} in ⟨{lambda:?}⟩⟨{mu:?}⟩: greedy {} brute {brute}", greedy.is_some())
    })?;
    if let Some((x, y)) = greedy {
        ensure(x.letters().iter().all(|l| lambda.contains(l.vertex)), || format!("{g:?}: left factor {x:?}"))?;
        ensure(y.letters().iter().all(|l| mu.contains(l.vertex)), || format!("{g:?}: right factor {y:?}"))?;
        let product: Raw = raw(&x).into_iter().chain(raw(&y)).collect();
        ensure(geodesics(g, &product).contains(&raw(&reduced)), || format!("{g:?}: {x:?}·{y:?} ≠ {word:?}"))?;
    }
    Ok(brute)
}

fn all_words(n: usize, len: usize) -> Vec<Raw> {
    let letters: Raw = (0..n).flat_map(|v| [(v, true), (v, false)]).collect();
    let mut layer: Vec<Raw> = vec![Vec::new()];
    let mut out = layer.clone();
    for _ in 0..len {
        layer = layer.iter().flat_map(|c| letters.iter().map(move |&l| [c.as_slice(), &[l]].concat())).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Every word of length ≤ 4 on every graph with ≤ 4 vertices, then
/// `per_graph` sampled words of length ≤ 6 on every graph with ≤ 5
/// vertices. Returns (cases, members).
fn double_coset_sweep(rng: &mut ChaCha8Rng, graphs: &[SimpleGraph], per_graph: usize) -> Result<(usize, usize), String> {
    let (mut cases, mut members) = (0, 0);
    for g in graphs {
        let n = g.n();
        let g = Arc::new(g.clone());
        if n <= 4 {
            for h in all_words(n, 4) {
                let (lambda, mu) = (random_subset(rng, n), random_subset(rng, n));
                members += usize::from(check_double_coset(&g, &h, &lambda, &mu)?);
                cases += 1;
            }
        }
        for _ in 0..per_graph {
            let lambda = random_subset(rng, n);
            let mu = random_subset(rng, n);
            let (lv, mv, all) = (lambda.to_vec(), mu.to_vec(), (0..n).collect::<Vec<_>>());
            // Half the words are built as ⟨Λ⟩·anything·⟨M⟩, half are uniform.
            let total = rng.gen_range(0..=6);
            let h = if rng.gen_bool(0.5) {
                let a = rng.gen_range(0..=total);
                let b = rng.gen_range(0..=total - a);
                let mut h = random_word(rng, &lv, a);
                h.extend(random_word(rng, &all, total - a - b));
                h.extend(random_word(rng, &mv, b));
                h
            } else {
                random_word(rng, &all, total)
            };
            members += usize::from(check_double_coset(&g, &h, &lambda, &mu)?);
            cases += 1;
        }
    }
    Ok((cases, members))
}

fn conjugate(g: &Arc<SimpleGraph>, c: &Raw, v: usize) -> Raw {
    let inv: Raw = c.iter().rev().map(|&(x, s)| (x, !s)).collect();
    let w: Raw = c.iter().copied().chain([(v, true)]).chain(inv).collect();
    raw(&reduce(&to_word(g, &w)))
}

fn inner_sweep(rng: &mut ChaCha8Rng, graphs: &[SimpleGraph], per_graph: usize) -> Result<(usize, usize, usize), String> {
    let (mut cases, mut inner, mut used) = (0, 0, 0);
    for g in graphs {
        if !center_vertices(g).is_empty() {
            continue;
        }
        used += 1;
        let n = g.n();
        let g = Arc::new(g.clone());
        // Every word of length ≤ 4, keyed by the inner automorphism it gives.
        let mut table: HashMap<Vec<Raw>, Raw> = HashMap::new();
        for c in all_words(n, 4) {
            let key: Vec<Raw> = (0..n).map(|v| conjugate(&g, &c, v)).collect();
            table.entry(key).or_insert(c);
        }

        let catalog = partial_conjugation_catalog(&g);
        for _ in 0..per_graph {
            let mut phi = Automorphism::identity(Arc::clone(&g));
            for _ in 0..rng.gen_range(0..=3) {
                let factor = if catalog.is_empty() || rng.gen_bool(0.5) {
                    let len = rng.gen_range(1..=2);
                    let c = random_word(rng, &(0..n).collect::<Vec<_>>(), len);
                    Automorphism::inner(&to_word(&g, &c))
                } else {
                    let e = &catalog[rng.gen_range(0..catalog.len())];
                    Automorphism::partial_conjugation(Arc::clone(&g), &e.conjugation, rng.gen_bool(0.5)).unwrap()
                };
                phi = phi.compose(&factor).map_err(|e| e.to_string())?;
            }
            cases += 1;
            let key: Vec<Raw> = (0..n).map(|v| raw(&reduce(phi.image(v)))).collect();
            let bounded = table.get(&key);
            let result = is_inner(&phi).map_err(|e| e.to_string())?;
            match (&result, bounded) {
                (Some(c), found) => {
                    inner += 1;
                    let c = raw(&reduce(c));
                    let images: Vec<Raw> = (0..n).map(|v| conjugate(&g, &c, v)).collect();
                    ensure(images == key, || format!("{g:?}: returned conjugator {c:?} is wrong"))?;
                    if c.len() <= 4 {
                        ensure(found.is_some(), || format!("{g:?}: bounded search missed {c:?}"))?;
                    }
                }
                (None, Some(c)) => return Err(format!("{g:?}: is_inner says no, but {c:?} conjugates")),
                (None, None) => {}
            }
        }
    }
    Ok((cases, inner, used))
}

fn word_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let graphs: Vec<SimpleGraph> = enumerate_levels(5, Jobs::AUTO)
        .map_err(|e| e.to_string())?
        .into_iter()
        .flatten()
        .collect();
    let (cases, members) = double_coset_sweep(&mut rng, &graphs, 200)?;
    ensure(cases >= 10_000, || format!("only {cases} cases"))?;
    ensure(members > cases / 5 && members < cases * 9 / 10, || format!("unbalanced sample: {members} members"))?;
    let (inner_cases, inner, used) = inner_sweep(&mut rng, &graphs, 60)?;
    ensure(inner > 0 && inner < inner_cases, || format!("unbalanced sample: {inner}/{inner_cases} inner"))?;
    Ok(format!(
        "{cases} double-coset cases on {} graphs ({members} members), {inner_cases} inner cases on {used} \
         centreless graphs ({inner} inner), 0 disagreements",
        graphs.len()
    ))
}

// ---------------------------------------------------------------------------
// 8. deterministic parallel search

fn deterministic_search() -> Outcome {
    let mut outputs = Vec::new();
    for jobs in [1, 4, 8] {
        let mut cfg = SearchConfig::new(9, 0.4, 10_000, 20_240_601);
        cfg.jobs = Jobs(jobs);
        cfg.emit = Emit::All;
        let mut buf = Vec::new();
        let summary = search_random(&cfg, &mut jsonl_sink(&mut buf)).map_err(|e| e.to_string())?;
        outputs.push((buf, summary.to_json()));
    }
    let lines = outputs[0].0.iter().filter(|&&b| b == b'\n').count();
    ensure(lines == 10_000, || format!("{lines} lines"))?;
    ensure(outputs.windows(2).all(|w| w[0] == w[1]), || "outputs differ between job counts".into())?;
    Ok(format!("{lines} JSONL lines byte-identical for jobs 1, 4, 8"))
}

// ---------------------------------------------------------------------------

/// Writes straight to stderr so the verdict lines survive the test
/// harness's output capture.
fn report(line: &str) {
    let _ = writeln!(std::io::stderr(), "{line}");
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("fixtures", fixtures),
        ("theta of K2 + K3 + K4", theta_of_free_product),
        ("exhaustive scan to n = 7", scan_to_seven),
        ("exhaustive scan to n = 9", scan_to_nine),
        ("homology property suite", homology_suite),
        ("Cohen-Macaulay on n <= 7", cm_small_graphs),
        ("word oracle agreement", word_oracle),
        ("deterministic parallel search", deterministic_search),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => report(&format!("PASS {}: {name} — {detail}", i + 1)),
            Err(why) => {
                report(&format!("FAIL {}: {name} — {why}", i + 1));
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn forests_hold_for_the_fixture_examples() {
    for g in FixtureSet::builtin().nine_gammas {
        assert!(all_supports_forests(&g).all_forests);
    }
}
