//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line; the
//! test fails on any failure other than the documented complement
//! counterexamples.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use walkspec::enumerate::{for_each_graph, SearchOptions};
use walkspec::graph6::parse_graph6;
use walkspec::planar::catalog::{load_catalog, verify_catalog};
use walkspec::planar::{planarity, verify_embedding, Planarity, RotationSystem};
use walkspec::reproduce::{reproduce, Reproduction, Target};
use walkspec::symmetry::{automorphism_orbits, brute_force_orbits, canonical_form};
use walkspec::walk::{cospectral_partition, first_difference, sharpness_example, walk_profile};
use walkspec::Graph;

type Outcome = Result<String, String>;

const N8: &str = include_str!("../data/witnesses/cospectral_n8.g6");
const N10: &str = include_str!("../data/witnesses/cospectral_regular_n10.g6");
const N12: &str = include_str!("../data/witnesses/walk_regular_n12.g6");
const TORUS: &str = include_str!("../data/witnesses/torus_rotation.json");

fn lines(text: &str) -> Vec<&str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty()).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn partitions(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=n.min(max)).rev() {
        prefix.push(part);
        partitions(n - part, part, prefix, out);
        prefix.pop();
    }
}

/// Unlabeled graphs on `n` vertices by Burnside over cycle types of `S_n`.
fn burnside_graph_count(n: usize) -> u128 {
    let mut types = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut types);
    let factorial: u128 = (1..=n as u128).product();
    let mut total = 0u128;
    for lambda in types {
        let mut pair_cycles: usize = lambda.iter().map(|&l| l / 2).sum();
        for i in 0..lambda.len() {
            for j in i + 1..lambda.len() {
                pair_cycles += gcd(lambda[i], lambda[j]);
            }
        }
        let mut z: u128 = 1;
        let mut counts = std::collections::BTreeMap::new();
        for &l in &lambda {
            *counts.entry(l).or_insert(0u128) += 1;
        }
        for (&l, &m) in &counts {
            z *= (l as u128).pow(m as u32) * (1..=m).product::<u128>();
        }
        total += (factorial / z) << pair_cycles;
    }
    total / factorial
}

fn failed_checks(r: &Reproduction) -> String {
    r.checks
        .iter()
        .filter(|c| !c.ok)
        .map(|c| format!("{}: expected {}, observed {}", c.name, c.expected, c.observed))
        .collect::<Vec<_>>()
        .join("; ")
}

fn hit_set(r: &Reproduction, n: usize) -> BTreeSet<String> {
    r.search.as_ref().unwrap().hits_at(n).map(|h| h.canonical_g6.clone()).collect()
}

fn fixture_set(text: &str) -> Result<BTreeSet<String>, String> {
    lines(text)
        .into_iter()
        .map(|l| {
            let g = parse_graph6(l).map_err(|e| e.to_string())?;
            canonical_form(&g).map(|c| c.bytes).map_err(|e| e.to_string())
        })
        .collect()
}

/// Some cospectral pair lies in two different orbits, checked by brute force.
fn has_brute_force_witness(g: &Graph) -> bool {
    let orbits = brute_force_orbits(g).unwrap();
    let cospectral = cospectral_partition(g);
    (0..g.n()).any(|a| (a + 1..g.n()).any(|b| cospectral.same_block(a, b) && !orbits.same_block(a, b)))
}

fn criterion_1() -> Outcome {
    let r = reproduce(Target::Thm21, &SearchOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.passed, || failed_checks(&r))?;
    for n in [7, 8] {
        let observed = r.search.as_ref().unwrap().level(n, None).unwrap().graphs as u128;
        ensure(observed == burnside_graph_count(n), || format!("n = {n}: Burnside gives {}", burnside_graph_count(n)))?;
    }
    ensure(hit_set(&r, 8) == fixture_set(N8)?, || "hits differ from pinned witnesses".into())?;
    let brute = lines(N8).iter().filter(|l| has_brute_force_witness(&parse_graph6(l).unwrap())).count();
    ensure(brute == 126, || format!("{brute} pinned witnesses confirmed by brute force"))?;
    Ok("1044 and 12346 graphs, 126 connected non-tree hits at n = 8, none below".into())
}

fn criterion_2() -> Outcome {
    let r = reproduce(Target::Thm22, &SearchOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.passed, || failed_checks(&r))?;
    ensure(hit_set(&r, 10) == fixture_set(N10)?, || "hits differ from pinned witnesses".into())?;
    Ok("(21,60,60,21) regular graphs, (3,22,22,3) hits, none for n <= 9".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let r = reproduce(Target::Thm23, &SearchOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(r.passed, || failed_checks(&r))?;
    ensure(hit_set(&r, 12) == fixture_set(N12)?, || "hits differ from pinned witnesses".into())?;
    Ok(format!(
        "4 hits at n = 12 with degrees 4..7, complement pairs 4-7 and 5-6, none below; {:.1} s on {} threads",
        elapsed.as_secs_f64(),
        rayon::current_num_threads()
    ))
}

fn criterion_4() -> Outcome {
    let r = reproduce(Target::Prop1Sharpness, &SearchOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.passed, || failed_checks(&r))?;
    for n in 3..=11 {
        let (g, a, b) = sharpness_example(n).map_err(|e| e.to_string())?;
        ensure(g.n() == n && first_difference(&g, a, b) == Some(n - 1), || format!("n = {n}"))?;
        let p = walk_profile(&g);
        ensure((0..n - 1).all(|k| p.get(a, k) == p.get(b, k)), || format!("n = {n}: early difference"))?;
    }
    Ok("first difference at k = n - 1 for n = 3..11".into())
}

fn criterion_5() -> Outcome {
    let r = reproduce(Target::Formulas, &SearchOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.passed, || failed_checks(&r))?;
    let f = r.formulas.as_ref().unwrap();
    let summary: Vec<String> = f.tallies.iter().map(|t| format!("k={}: {} graphs", t.k, t.graphs)).collect();
    Ok(format!("0 mismatches over {} connected regular graphs ({})", f.connected_regular_graphs, summary.join(", ")))
}

fn criterion_6() -> Outcome {
    let catalog = load_catalog().map_err(|e| e.to_string())?;
    let report = verify_catalog(&catalog, 12).map_err(|e| e.to_string())?;
    let bad: Vec<_> = report.entries.iter().filter(|a| !a.passed()).map(|a| a.name.clone()).collect();
    ensure(report.passed && bad.is_empty(), || format!("failing entries: {bad:?}"))?;
    let solids = catalog.iter().filter(|e| e.expected_walk_regular && e.family.is_none()).count();
    ensure(solids == 18, || format!("{solids} walk-regular solids"))?;
    let audited: BTreeSet<&str> = report.entries.iter().map(|a| a.name.as_str()).collect();
    let mut wanted: Vec<String> = [3].into_iter().chain(5..=12).map(|m| format!("prism({m})")).collect();
    wanted.extend((4..=12).map(|m| format!("antiprism({m})")));
    let missing: Vec<_> = wanted.iter().filter(|w| !audited.contains(w.as_str())).collect();
    ensure(missing.is_empty(), || format!("families missing: {missing:?}"))?;
    let control: Vec<_> = catalog.iter().filter(|e| !e.expected_walk_regular).collect();
    ensure(control.len() == 1, || format!("{} control entries", control.len()))?;
    let audit = report.entries.iter().find(|a| a.name == control[0].name).unwrap();
    ensure(
        audit.symbol.as_deref() == Some("(3,4,4,4)")
            && audit.walk_regularity_failure == Some(7)
            && !audit.vertex_transitive,
        || format!("control audit {audit:?}"),
    )?;
    Ok("18 solids and both families pass; twisted (3,4,4,4) control first fails at k = 7, not vertex-transitive".into())
}

fn criterion_7() -> Outcome {
    let catalog = load_catalog().map_err(|e| e.to_string())?;
    let report = verify_catalog(&catalog, 12).map_err(|e| e.to_string())?;
    let expected = [("(3,8,8)-solid", 591, 2), ("(3,10,10)-solid", 4223, 2), ("(4,6,8)-solid", 811, 0), ("(4,6,10)-solid", 6065, 0)];
    for (name, constant, coefficient) in expected {
        let w = report.walk_constants.iter().find(|w| w.entry == name).ok_or_else(|| format!("{name} missing"))?;
        ensure(w.holds && w.constant == constant && w.cycle_coefficient == coefficient, || format!("{w:?}"))?;
    }
    Ok("591 + 2 C_8, 4223 + 2 C_10, 811 and 6065 hold at every vertex".into())
}

fn criterion_8() -> Outcome {
    for l in lines(N12) {
        let g = parse_graph6(l).map_err(|e| e.to_string())?;
        match planarity(&g) {
            Planarity::NonPlanar(k) => {
                ensure(k.edges.iter().all(|&(u, v)| g.has_edge(u, v)), || format!("{l}: certificate uses a non-edge"))?
            }
            Planarity::Planar(_) => return Err(format!("{l} reported planar")),
        }
    }
    let torus: serde_json::Value = serde_json::from_str(TORUS).map_err(|e| e.to_string())?;
    let g = parse_graph6(torus["graph6"].as_str().unwrap()).map_err(|e| e.to_string())?;
    let rot: RotationSystem = serde_json::from_value(torus["rotation"].clone()).map_err(|e| e.to_string())?;
    let euler = verify_embedding(&g, &rot).map_err(|e| e.to_string())?;
    ensure(euler.euler_characteristic == 0, || format!("n - e + f = {}", euler.euler_characteristic))?;
    Ok(format!("4 witnesses non-planar; torus rotation gives {} - {} + {} = 0", euler.n, euler.e, euler.f))
}

/// Connected graphs with connected complement on at most 8 vertices whose
/// cospectral partition changes under complementation. Adjacency
/// cospectrality is preserved by complements only for regular graphs.
const COMPLEMENT_COUNTEREXAMPLES: [&str; 8] =
    ["G??XEs", "G??XMs", "G??Xv?", "G??xuO", "GJdz~[", "GJe^^[", "GQTz|{", "Gb^d|{"];

fn criterion_9() -> Outcome {
    let opts = SearchOptions::default();
    let failures = AtomicU64::new(0);
    let broken = std::sync::Mutex::new(BTreeSet::new());
    for n in 1..=8 {
        for_each_graph(n, None, false, &opts, |g| {
            let orbits = automorphism_orbits(g).orbits;
            let mut ok = orbits.refines(&cospectral_partition(g));
            if n <= 7 {
                ok &= brute_force_orbits(g).unwrap() == orbits;
            }
            let c = g.complement().unwrap();
            ok &= automorphism_orbits(&c).orbits == orbits;
            if !ok {
                failures.fetch_add(1, Ordering::Relaxed);
            }
            if g.is_connected() && c.is_connected() && cospectral_partition(&c) != cospectral_partition(g) {
                broken.lock().unwrap().insert(canonical_form(g).unwrap().bytes);
            }
        })
        .map_err(|e| e.to_string())?;
    }
    let failures = failures.into_inner();
    ensure(failures == 0, || format!("{failures} graphs violate an orbit property"))?;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let witnesses: Vec<&str> = lines(N8).into_iter().chain(lines(N10)).chain(lines(N12)).collect();
    for l in &witnesses {
        let g = parse_graph6(l).unwrap();
        let form = canonical_form(&g).unwrap().bytes;
        let mut perm: Vec<usize> = (0..g.n()).collect();
        for _ in 0..100 {
            perm.shuffle(&mut rng);
            let h = g.permuted(&perm);
            ensure(canonical_form(&h).unwrap().bytes == form, || format!("{l}: relabeling {perm:?}"))?;
        }
    }
    let broken = broken.into_inner().unwrap();
    ensure(broken.is_empty(), || {
        let list: Vec<&str> = broken.iter().map(String::as_str).collect();
        format!(
            "complement changes the cospectral partition of {} connected graphs with connected complement: {}",
            list.len(),
            list.join(" ")
        )
    })?;
    Ok(format!("partition properties for n <= 8; canonical form stable under 100 relabelings of {} witnesses", witnesses.len()))
}

/// A failure is known when it is exactly the documented counterexample set
/// and every other part of the criterion passed.
fn known_red(name: &str, why: &str) -> bool {
    name.starts_with("9 ")
        && why.starts_with("complement changes")
        && why.ends_with(&COMPLEMENT_COUNTEREXAMPLES.join(" "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 cospectral census n <= 8", criterion_1),
        ("2 regular census n <= 10", criterion_2),
        ("3 walk-regular census n <= 12", criterion_3),
        ("4 sharpness family n = 3..11", criterion_4),
        ("5 closed-walk formulas k = 3..6", criterion_5),
        ("6 polyhedral catalog audit", criterion_6),
        ("7 closed-walk constants", criterion_7),
        ("8 non-planarity and torus embedding", criterion_8),
        ("9 property suites", criterion_9),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) if known_red(name, &why) => println!("FAIL criterion {name}: {why} (known, statement false for non-regular graphs)"),
            Err(why) => {
                println!("FAIL criterion {name}: {why}");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("unexpected failures: {failed:?}");
        std::process::exit(1);
    }
}
