//! Acceptance criteria. Each test prints one PASS/FAIL line to stderr,
//! bypassing output capture, and then asserts.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::time::{Duration, Instant};

use positroid::cluster::{mutation_class, square_move_closure, LaurentPoly, Seed};
use positroid::cm::{
    cluster_tilting_collections, gp_b_rank_one_list, in_cm_b, in_gp_b,
    is_cluster_tilting_collection, k2_generator_decomposition,
};
use positroid::combinatorics::{
    all_decorated_permutations, connected_components, in_positroid, necklace_from_permutation,
    noncrossing, positroid_members, random_decorated_permutation, reverse_necklace,
    DecoratedPermutation, GrassmannNecklace, KSet,
};
use positroid::numeric::{
    evaluate, known_identities, sample_cell_point, vanishing_set, verify_identities, Rational,
};
use positroid::plabic::{
    bridge_graph_from_permutation, face_labels, labeled_raw_arrows, quiver_from_collection,
    quiver_from_graph, PlabicGraph,
};
use positroid::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Laurent closures for `n = 8` are capped at this many seeds; the
/// Grassmannian cases there are of infinite or very large mutation type.
const N8_SEED_LIMIT: usize = 150;
const SMALL_SEED_LIMIT: usize = 5_000;

fn report(id: u32, title: &str, failures: &[String], elapsed: Duration, note: &str) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut line = format!(
        "criterion {id} [{verdict}] {title}: {} failure(s), {:.2?}",
        failures.len(),
        elapsed
    );
    if !note.is_empty() {
        line.push_str(&format!("; {note}"));
    }
    if let Some(first) = failures.first() {
        line.push_str(&format!("; first: {first}"));
    }
    let _ = writeln!(std::io::stderr(), "{line}");
    assert!(failures.is_empty(), "{line}");
}

fn ks(n: usize, label: &str) -> KSet {
    KSet::parse_label(n, label).unwrap()
}

fn set_of(n: usize, labels: &[&str]) -> BTreeSet<KSet> {
    labels.iter().map(|l| ks(n, l)).collect()
}

fn hexagon() -> DecoratedPermutation {
    DecoratedPermutation::from_cycles(6, &[vec![1, 3, 5], vec![2, 6, 4]], &[]).unwrap()
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

#[test]
fn criterion_1_worked_example_golden() {
    let start = Instant::now();
    let mut f = Vec::new();
    let n = 6;
    let sigma = hexagon();
    let nk = necklace_from_permutation(&sigma);
    let expected: Vec<KSet> = ["124", "234", "346", "456", "256", "126"]
        .iter()
        .map(|l| ks(n, l))
        .collect();
    check(&mut f, nk.sets() == expected.as_slice(), || {
        format!(
            "necklace {:?}",
            nk.sets().iter().map(KSet::label).collect::<Vec<_>>()
        )
    });
    let p = positroid_members(&nk).unwrap();
    check(
        &mut f,
        p.complement() == set_of(n, &["123", "345", "156"]),
        || "positroid complement".into(),
    );
    let gp = gp_b_rank_one_list(&nk, 12).unwrap();
    check(
        &mut f,
        gp == set_of(n, &["124", "234", "346", "456", "256", "126", "246"]),
        || {
            format!(
                "GP B list {:?}",
                gp.iter().map(KSet::label).collect::<Vec<_>>()
            )
        },
    );
    let seed = Seed::from_graph(&bridge_graph_from_permutation(&sigma)).unwrap();
    let class = mutation_class(&seed, 100).unwrap();
    check(&mut f, class.seeds.len() == 2 && !class.partial, || {
        format!("{} seeds", class.seeds.len())
    });
    // Δ246 · x' = Δ124Δ256Δ346 + Δ126Δ234Δ456 as Laurent polynomials.
    let sym = seed.symbols();
    let x = |l: &str| {
        let i = sym
            .iter()
            .position(|s| *s == ks(n, l))
            .expect("initial symbol");
        LaurentPoly::var(sym.len(), i)
    };
    let prod = |ls: &[&str]| {
        ls.iter()
            .fold(LaurentPoly::one(sym.len()), |acc, l| &acc * &x(l))
    };
    let v = seed.quiver().find_label(&ks(n, "246")).expect("vertex 246");
    let new_var = seed.exchange(v).unwrap().new_var;
    let lhs = &x("246") * &new_var;
    let rhs = &prod(&["124", "256", "346"]) + &prod(&["126", "234", "456"]);
    check(&mut f, lhs == rhs, || {
        format!(
            "exchange at 246 gives {}",
            new_var.display_with(&seed.symbol_names())
        )
    });
    let elapsed = start.elapsed();
    check(&mut f, elapsed < Duration::from_secs(1), || {
        format!("runtime {elapsed:?}")
    });
    report(1, "worked example golden suite", &f, elapsed, "");
}

#[test]
fn criterion_2_reverse_necklace() {
    let start = Instant::now();
    let n = 6;
    let rev = reverse_necklace(&hexagon());
    let expected: Vec<KSet> = ["456", "146", "126", "236", "234", "245"]
        .iter()
        .map(|l| ks(n, l))
        .collect();
    let mut f = Vec::new();
    check(&mut f, rev == expected, || {
        format!("{:?}", rev.iter().map(KSet::label).collect::<Vec<_>>())
    });
    report(2, "reverse necklace", &f, start.elapsed(), "");
}

#[test]
fn criterion_3_restricted_identities_on_cell_points() {
    let start = Instant::now();
    let n = 6;
    let sigma = hexagon();
    let nk = necklace_from_permutation(&sigma);
    let g = bridge_graph_from_permutation(&sigma);
    let seed = Seed::from_graph(&g).unwrap();
    let v = seed.quiver().find_label(&ks(n, "246")).unwrap();
    let psi = seed.exchange(v).unwrap().new_var;
    let symbols = seed.symbols().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let points: Vec<_> = (0..50)
        .map(|_| sample_cell_point(&g, &mut rng).unwrap())
        .collect();
    let mut f = Vec::new();
    for (idx, p) in points.iter().enumerate() {
        let d = |l: &str| p.matrix.minor(&ks(n, l)).unwrap();
        let assignment: BTreeMap<KSet, Rational> = symbols
            .iter()
            .map(|s| (*s, p.matrix.minor(s).unwrap()))
            .collect();
        let psi_v = evaluate(&psi, &symbols, &assignment).unwrap();
        let cases = [
            (
                "Δ245Δ346 = Δ234Δ456",
                d("245") * d("346"),
                d("234") * d("456"),
            ),
            (
                "Δ146Δ256 = Δ126Δ456",
                d("146") * d("256"),
                d("126") * d("456"),
            ),
            (
                "Δ146Δ125 = Δ126Δ145",
                d("146") * d("125"),
                d("126") * d("145"),
            ),
            (
                "Δ146Ψ = Δ126Δ346Δ145",
                d("146") * psi_v,
                d("126") * d("346") * d("145"),
            ),
        ];
        for (name, l, r) in cases {
            check(&mut f, l == r, || format!("{name} at point {idx}"));
        }
    }
    // The same identities through the verification report.
    let class = mutation_class(&seed, 100).unwrap();
    let extra = known_identities(&sigma, &class.seeds[0]).unwrap();
    let rep = verify_identities(&nk, &class, &points, &[], &extra).unwrap();
    for r in &rep.identities {
        check(&mut f, r.failures.is_empty(), || {
            format!("report: {}", r.name)
        });
    }
    let elapsed = start.elapsed();
    check(&mut f, elapsed < Duration::from_secs(5), || {
        format!("runtime {elapsed:?}")
    });
    report(
        3,
        "restricted identities on 50 cell points",
        &f,
        elapsed,
        "",
    );
}

#[test]
fn criterion_4_dimension_formula() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut f = Vec::new();
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let sigma = random_decorated_permutation(n, &mut rng);
        let k = sigma.k();
        let faces = face_labels(&bridge_graph_from_permutation(&sigma)).unwrap();
        let expected = k * (n - k) + 1 - sigma.alignments();
        check(&mut f, faces.labels.len() == expected, || {
            format!(
                "{}: {} faces, expected {expected}",
                sigma.to_cycle_notation(),
                faces.labels.len()
            )
        });
    }
    let elapsed = start.elapsed();
    check(&mut f, elapsed < Duration::from_secs(30), || {
        format!("runtime {elapsed:?}")
    });
    report(
        4,
        "dimension formula, 200 random σ with n ≤ 8",
        &f,
        elapsed,
        "",
    );
}

struct ClosureStats {
    positroids: usize,
    collections: usize,
    seeds: usize,
    partial: usize,
    laurent_failures: Vec<String>,
}

/// Criteria 5 and 6 share the mutation closures.
fn closures(n: usize, stats: &mut ClosureStats, f: &mut Vec<String>) {
    let limit = if n >= 8 {
        N8_SEED_LIMIT
    } else {
        SMALL_SEED_LIMIT
    };
    for sigma in all_decorated_permutations(n) {
        let name = sigma.to_cycle_notation();
        let nk = necklace_from_permutation(&sigma);
        let frozen: BTreeSet<KSet> = nk.iter().copied().collect();
        let g = bridge_graph_from_permutation(&sigma);
        let labels: BTreeSet<KSet> = face_labels(&g).unwrap().labels.into_iter().collect();
        let (moves, capped) = square_move_closure(&labels, &frozen, usize::MAX);
        let brute: BTreeSet<BTreeSet<KSet>> = cluster_tilting_collections(&nk, 12)
            .unwrap()
            .into_iter()
            .collect();
        stats.positroids += 1;
        stats.collections += brute.len();
        check(f, !capped && moves == brute, || {
            format!(
                "{name}: {} by square moves, {} maximal",
                moves.len(),
                brute.len()
            )
        });
        for c in &brute {
            let ok = is_cluster_tilting_collection(c, &nk).unwrap()
                && c.is_superset(&frozen)
                && c.iter().all(|i| in_positroid(&nk, i));
            check(f, ok, || format!("{name}: bad collection"));
        }
        let class = match mutation_class(&Seed::from_graph(&g).unwrap(), limit) {
            Ok(c) => c,
            Err(Error::LaurentViolation(v)) => {
                stats
                    .laurent_failures
                    .push(format!("{name}: remainder at vertex {v}"));
                continue;
            }
            Err(e) => {
                f.push(format!("{name}: {e}"));
                continue;
            }
        };
        stats.seeds += class.seeds.len();
        stats.partial += usize::from(class.partial);
        let pure: BTreeSet<BTreeSet<KSet>> = class
            .seeds
            .iter()
            .filter(|s| s.is_pure_plucker())
            .map(Seed::collection)
            .collect();
        check(f, pure.is_subset(&brute), || {
            format!("{name}: seed collection not maximal")
        });
        if !class.partial {
            check(f, pure == brute, || {
                format!(
                    "{name}: {} Plücker seeds, {} collections",
                    pure.len(),
                    brute.len()
                )
            });
        }
        for s in &class.seeds {
            let c = s.collection();
            let ok = c.iter().all(|a| c.iter().all(|b| noncrossing(a, b)))
                && c.iter().all(|i| in_positroid(&nk, i))
                && c.is_superset(&frozen);
            check(f, ok, || {
                format!("{name}: seed labels not a non-crossing subset of P")
            });
        }
    }
}

#[test]
fn criteria_5_and_6_collections_and_laurent_phenomenon() {
    let start = Instant::now();
    let mut stats = ClosureStats {
        positroids: 0,
        collections: 0,
        seeds: 0,
        partial: 0,
        laurent_failures: Vec::new(),
    };
    let mut f = Vec::new();
    for n in 1..=8 {
        closures(n, &mut stats, &mut f);
    }
    let note = format!(
        "{} positroids, {} maximal collections, {} seeds, {} closures capped at {} seeds (n = 8)",
        stats.positroids, stats.collections, stats.seeds, stats.partial, N8_SEED_LIMIT
    );
    let elapsed = start.elapsed();
    let f6 = stats.laurent_failures.clone();
    let _ = writeln!(
        std::io::stderr(),
        "criterion 6 [{}] Laurent phenomenon over the same closures: {} failure(s)",
        if f6.is_empty() { "PASS" } else { "FAIL" },
        f6.len()
    );
    report(
        5,
        "maximal collections, n ≤ 8 exhaustive",
        &f,
        elapsed,
        &note,
    );
    assert!(f6.is_empty(), "{f6:?}");
}

/// Local label of `i ∩ S` in a component with block `elements`.
fn localize(i: &KSet, elements: &[usize]) -> KSet {
    let local = elements
        .iter()
        .enumerate()
        .filter(|(_, e)| i.contains(**e))
        .map(|(p, _)| p + 1);
    KSet::new(elements.len(), local).unwrap()
}

fn decomposition_defect(g: &PlabicGraph, nk: &GrassmannNecklace) -> Option<String> {
    let comps = connected_components(nk);
    if comps.len() < 2 {
        return None;
    }
    let q = quiver_from_graph(g).unwrap();
    let mutable: Vec<usize> = q.mutable_vertices().collect();
    // Each mutable face belongs to the one block where it is not frozen.
    let mut home = BTreeMap::new();
    for &v in &mutable {
        let label = q.label(v).unwrap();
        let owners: Vec<(usize, KSet)> = comps
            .iter()
            .enumerate()
            .map(|(j, c)| (j, localize(&label, &c.elements)))
            .filter(|(j, l)| !comps[*j].necklace.contains(l))
            .collect();
        if owners.len() != 1 {
            return Some(format!(
                "face {} lies in {} blocks",
                label.label(),
                owners.len()
            ));
        }
        home.insert(v, owners[0]);
    }
    let mut local_quivers = Vec::new();
    for (j, c) in comps.iter().enumerate() {
        let mut coll: BTreeSet<KSet> = c.necklace.iter().copied().collect();
        coll.extend(home.values().filter(|(h, _)| *h == j).map(|(_, l)| *l));
        if !is_cluster_tilting_collection(&coll, &c.necklace).unwrap() {
            return Some(format!("block {j} collection is not maximal"));
        }
        local_quivers.push(quiver_from_collection(&coll, &c.necklace).unwrap());
    }
    for &v in &mutable {
        for &w in &mutable {
            let (jv, lv) = home[&v];
            let (jw, lw) = home[&w];
            let expected = if jv == jw {
                let lq = &local_quivers[jv];
                lq.entry(lq.find_label(&lv).unwrap(), lq.find_label(&lw).unwrap())
            } else {
                0
            };
            if q.entry(v, w) != expected {
                return Some(format!(
                    "arrow {} -> {}",
                    q.label(v).unwrap().label(),
                    q.label(w).unwrap().label()
                ));
            }
        }
    }
    None
}

#[test]
fn criterion_7_quiver_sanity() {
    let start = Instant::now();
    let mut f = Vec::new();
    let (mut graphs, mut disconnected, mut raw_two_cycles) = (0, 0, 0);
    for n in 1..=8 {
        for sigma in all_decorated_permutations(n) {
            let name = sigma.to_cycle_notation();
            let g = bridge_graph_from_permutation(&sigma);
            graphs += 1;
            let nk = necklace_from_permutation(&sigma);
            let q = quiver_from_graph(&g).unwrap();
            let arrows: BTreeSet<(usize, usize)> = q
                .arrows()
                .into_iter()
                .filter(|(a, b, _)| !(q.is_frozen(*a) && q.is_frozen(*b)))
                .map(|(a, b, _)| (a, b))
                .collect();
            for (a, b) in &arrows {
                check(&mut f, a != b, || format!("{name}: loop at vertex {a}"));
                check(&mut f, !arrows.contains(&(*b, *a)), || {
                    format!("{name}: 2-cycle {a} {b}")
                });
            }
            let labels: BTreeSet<KSet> = (0..q.len()).filter_map(|v| q.label(v)).collect();
            let tiling = quiver_from_collection(&labels, &nk).unwrap();
            let agrees = tiling.len() == q.len()
                && (0..q.len()).all(|a| {
                    (0..q.len()).all(|b| {
                        (q.is_frozen(a) && q.is_frozen(b))
                            || q.entry(a, b)
                                == tiling.entry(
                                    tiling.find_label(&q.label(a).unwrap()).unwrap(),
                                    tiling.find_label(&q.label(b).unwrap()).unwrap(),
                                )
                    })
                });
            check(&mut f, agrees, || {
                format!("{name}: graph and tiling quivers differ")
            });
            let raw: BTreeSet<(KSet, KSet)> = labeled_raw_arrows(&g)
                .unwrap()
                .into_iter()
                .filter(|(_, _, both_frozen)| !both_frozen)
                .map(|(a, b, _)| (a, b))
                .collect();
            raw_two_cycles += raw
                .iter()
                .filter(|(a, b)| a < b && raw.contains(&(*b, *a)))
                .count();
            if connected_components(&nk).len() > 1 {
                disconnected += 1;
                if let Some(d) = decomposition_defect(&g, &nk) {
                    f.push(format!("{name}: {d}"));
                }
            }
        }
    }
    let note = format!(
        "{graphs} graphs, {disconnected} disconnected, {raw_two_cycles} per-edge 2-cycles cancelled"
    );
    report(
        7,
        "no loops or 2-cycles, frozen-glued decomposition",
        &f,
        start.elapsed(),
        &note,
    );
}

#[test]
fn criterion_8_k2_generation() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut f = Vec::new();
    let (mut positroids, mut modules) = (0, 0);
    for n in 2..=8 {
        for sigma in all_decorated_permutations(n)
            .into_iter()
            .filter(|s| s.k() == 2)
        {
            let name = sigma.to_cycle_notation();
            let nk = necklace_from_permutation(&sigma);
            let targets: Vec<KSet> = KSet::all(n, 2)
                .into_iter()
                .filter(|i| in_cm_b(i, &nk).unwrap() && !in_gp_b(i, &nk).unwrap())
                .collect();
            positroids += 1;
            if targets.is_empty() {
                continue;
            }
            let g = bridge_graph_from_permutation(&sigma);
            let points: Vec<_> = (0..20)
                .map(|_| sample_cell_point(&g, &mut rng).unwrap())
                .collect();
            for i in targets {
                modules += 1;
                let d = match k2_generator_decomposition(&i, &nk) {
                    Ok(d) => d,
                    Err(e) => {
                        f.push(format!("{name}, {}: {e}", i.label()));
                        continue;
                    }
                };
                for (idx, p) in points.iter().enumerate() {
                    let m = |s: &KSet| p.matrix.minor(s).unwrap();
                    check(&mut f, m(&i) * m(&d.j) == m(&d.l1) * m(&d.l2), || {
                        format!("{name}, {} at point {idx}", i.label())
                    });
                }
            }
        }
    }
    let note = format!("{positroids} positroids, {modules} modules in CM B \\ GP B");
    report(
        8,
        "k = 2 generator identities, n ≤ 8",
        &f,
        start.elapsed(),
        &note,
    );
}

#[test]
fn criterion_9_vanishing_profile() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut tested: Vec<DecoratedPermutation> =
        (1..=6).flat_map(all_decorated_permutations).collect();
    for _ in 0..200 {
        let n = rng.gen_range(7..=8);
        tested.push(random_decorated_permutation(n, &mut rng));
    }
    let mut f = Vec::new();
    let mut points = 0;
    for sigma in &tested {
        let nk = necklace_from_permutation(sigma);
        let complement = positroid_members(&nk).unwrap().complement();
        let g = bridge_graph_from_permutation(sigma);
        for _ in 0..10 {
            points += 1;
            match sample_cell_point(&g, &mut rng) {
                Ok(p) => check(
                    &mut f,
                    vanishing_set(&p.matrix).unwrap() == complement,
                    || sigma.to_cycle_notation(),
                ),
                Err(e) => f.push(format!("{}: {e}", sigma.to_cycle_notation())),
            }
        }
    }
    let note = format!("{} positroids, {points} points", tested.len());
    report(
        9,
        "vanishing profile equals positroid complement",
        &f,
        start.elapsed(),
        &note,
    );
}
