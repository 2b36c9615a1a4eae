//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use regmap::census::{self, CensusConfig, Status};
use regmap::families::{
    self, build_group, family_candidates, table1_entry, Family, FamilyGroup, Metacyclic,
    NonabelianH, RawParams,
};
use regmap::fpgroups::{enumerate_cosets, DEFAULT_MAX_COSETS};
use regmap::maps::{invariants, AlgebraicMap};
use regmap::numtheory::geometric_sum;
use regmap::permgroup::{pair_extends, PermGroup, Permutation, DEFAULT_CLOSURE_CAP};

fn report(criterion: u32, summary: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("PASS criterion {criterion}: {summary}");
    } else {
        println!("FAIL criterion {criterion}: {summary}");
        for f in failures {
            println!("    {f}");
        }
    }
    assert!(failures.is_empty(), "criterion {criterion} failed: {failures:?}");
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        failures.push(what.into());
    }
}

fn within(failures: &mut Vec<String>, elapsed: Duration, limit: Duration) {
    check(
        failures,
        elapsed < limit,
        format!("took {elapsed:?}, limit {limit:?}"),
    );
}

/// Every family parameter set with `m = 3, n <= 9`, plus `(p, e) = (5, 1)`.
fn desk_range() -> Vec<families::MapParameters> {
    let mut out = Vec::new();
    for n in 2..=9 {
        out.extend(family_candidates(3, n).unwrap());
    }
    out.extend(family_candidates(5, 5).unwrap());
    out
}

#[test]
fn criterion_1_k3_2_census() {
    let cfg = CensusConfig::default();
    let start = Instant::now();
    let oracle = census::census_report(3, 2, &cfg).unwrap();
    let families = census::enumerate_report(3, 2, &cfg).unwrap();
    let elapsed = start.elapsed();
    let mut failures = Vec::new();
    for (name, rep) in [("oracle", &oracle), ("families", &families)] {
        check(&mut failures, rep.classes.len() == 1, format!("{name}: {} classes", rep.classes.len()));
        check(
            &mut failures,
            (rep.totals.reflexible, rep.totals.chiral) == (1, 0),
            format!("{name}: totals {:?}", rep.totals),
        );
        for c in &rep.classes {
            check(&mut failures, c.map_type == [3, 4], format!("{name}: type {:?}", c.map_type));
            check(&mut failures, c.genus == 0, format!("{name}: genus {}", c.genus));
        }
    }
    check(&mut failures, oracle.passed(), "oracle report has FAIL verdicts");
    within(&mut failures, elapsed, Duration::from_secs(5));
    report(1, "K_{3[2]}: 1 reflexible class of type {3,4}, genus 0", &failures);
}

#[test]
fn criterion_2_k4_2_census() {
    let start = Instant::now();
    let rep = census::census_report(4, 2, &CensusConfig::default()).unwrap();
    let mut failures = Vec::new();
    check(&mut failures, rep.classes.is_empty(), format!("{} classes", rep.classes.len()));
    check(&mut failures, rep.passed(), "report has FAIL verdicts");
    within(&mut failures, start.elapsed(), Duration::from_secs(30));
    report(2, "K_{4[2]}: no orientably-regular embeddings", &failures);
}

#[test]
fn criterion_3_k3_3_census() {
    let start = Instant::now();
    let rep = census::census_report(3, 3, &CensusConfig::default()).unwrap();
    let mut failures = Vec::new();
    check(&mut failures, rep.totals.total == 3, format!("total {}", rep.totals.total));
    check(&mut failures, rep.totals.reflexible == 1, format!("reflexible {}", rep.totals.reflexible));
    check(&mut failures, rep.passed(), "report has FAIL verdicts");
    let collapse = rep.verdict("table1 tuples vs classes");
    check(
        &mut failures,
        collapse.is_some_and(|v| v.status == Status::Info && v.observed.starts_with("5 tuples collapse to 3 classes")),
        format!("collapse statement: {collapse:?}"),
    );
    within(&mut failures, start.elapsed(), Duration::from_secs(300));
    if let Some(v) = collapse {
        println!("    {}", v.observed);
    }
    report(3, "K_{3[3]}: 3 classes, 1 reflexible, 5 tuples collapse to 3", &failures);
}

#[test]
fn criterion_4_k3_9_families() {
    let start = Instant::now();
    let rep = census::enumerate_report(3, 9, &CensusConfig::default()).unwrap();
    let mut failures = Vec::new();
    check(&mut failures, rep.classes.len() == 15, format!("{} classes", rep.classes.len()));
    check(
        &mut failures,
        rep.classes.iter().all(|c| c.members.len() == 1),
        "some candidate tuples are isomorphic",
    );
    let reflexible: Vec<_> = rep
        .classes
        .iter()
        .filter(|c| c.chirality == families::Chirality::Reflexible)
        .collect();
    check(&mut failures, reflexible.len() == 1, format!("{} reflexible", reflexible.len()));
    check(
        &mut failures,
        reflexible.iter().all(|c| c.map_type == [3, 18]),
        "reflexible class is not of type {3,18}",
    );
    check(&mut failures, rep.totals.chiral == 14, format!("{} chiral", rep.totals.chiral));
    for c in &rep.classes {
        check(
            &mut failures,
            [[3, 18], [9, 18], [27, 18]].contains(&c.map_type),
            format!("{}: type {:?}", c.label, c.map_type),
        );
    }
    within(&mut failures, start.elapsed(), Duration::from_secs(600));
    report(4, "K_{3[9]}: 15 classes, 1 reflexible {3,18}, 14 chiral", &failures);
}

#[test]
fn criterion_5_k5_5_families() {
    let start = Instant::now();
    let rep = census::enumerate_report(5, 5, &CensusConfig::default()).unwrap();
    let mut failures = Vec::new();
    check(&mut failures, rep.classes.len() == 10, format!("{} classes", rep.classes.len()));
    for c in &rep.classes {
        check(
            &mut failures,
            c.chirality == families::Chirality::Chiral && c.map_type == [20, 20],
            format!("{}: {:?} {:?}", c.label, c.chirality, c.map_type),
        );
    }
    within(&mut failures, start.elapsed(), Duration::from_secs(900));
    report(5, "K_{5[5]}: 10 chiral classes of type {20,20}", &failures);
}

#[test]
fn criterion_6_group_orders() {
    let mut failures = Vec::new();
    let params = desk_range();
    for p in &params {
        let pres = families::presentation_for(p);
        let table = enumerate_cosets(&pres, &[], DEFAULT_MAX_COSETS).unwrap();
        let want = p.group_order();
        check(&mut failures, table.is_complete(), format!("{}: enumeration incomplete", p.label()));
        check(
            &mut failures,
            table.len() as u64 == want,
            format!("{}: {} cosets, expected {want}", p.label(), table.len()),
        );
        let fg = build_group(p).unwrap();
        check(
            &mut failures,
            fg.a.order() == (p.m - 1) * p.n && fg.b.order() == 2,
            format!("{}: |a^j| = {}, |b| = {}", p.label(), fg.a.order(), fg.b.order()),
        );
        check(
            &mut failures,
            fg.group.is_generated_by(&[fg.a.clone(), fg.b.clone()]).unwrap(),
            format!("{}: <a^j, b> is proper", p.label()),
        );
    }
    report(
        6,
        &format!("coset counts equal m(m-1)n^2 for {} parameter sets", params.len()),
        &failures,
    );
}

#[test]
fn criterion_7_geometric_sum_congruences() {
    let mut rng = StdRng::seed_from_u64(0x5eed_2202);
    let mut failures = Vec::new();
    for _ in 0..1000 {
        let p: u64 = [3, 5, 7][rng.gen_range(0..3)];
        let f: u32 = rng.gen_range(1..=3);
        let max_d = (0..).take_while(|&d| p.pow(d) <= 729).last().unwrap();
        let d: u32 = rng.gen_range(0..=max_d);
        let k = p.pow(d) * rng.gen_range(1..=729 / p.pow(d));
        let q = 1 + p.pow(f);
        let modulus = p.pow(d + f);
        // direct summation as an independent reference
        let naive = |count: u64| (0..count).fold((0u64, 1u64), |(s, t), _| ((s + t) % modulus, t * q % modulus)).0;
        let first = geometric_sum(q as i64, k, modulus);
        let second = geometric_sum(q as i64, k + 1, modulus);
        check(
            &mut failures,
            first == k % modulus && naive(k) == first,
            format!("p={p} f={f} d={d} k={k}: sum {first}"),
        );
        check(
            &mut failures,
            second == (k + 1) % modulus && naive(k + 1) == second,
            format!("p={p} f={f} d={d} k+1={}: sum {second}", k + 1),
        );
    }
    report(7, "1000 seeded instances of both geometric-sum congruences", &failures);
}

/// `H = <x, x^b>` with `x = a^(m-1)`.
fn normal_subgroup(fg: &FamilyGroup) -> (PermGroup, Permutation, Permutation) {
    let x = fg.a.pow(fg.params.m as i64 - 1);
    let y = x.conj(&fg.b);
    let h = fg.group.subgroup_tools(&[x.clone(), y.clone()]).unwrap().subgroup;
    (h, x, y)
}

/// Whether the group generated by `gens` is isomorphic to `h`, through some
/// generating pair of `h` satisfying the same relations.
fn model_embeds(gens: &[Permutation; 2], h: &PermGroup) -> bool {
    let model = PermGroup::from_perms(gens[0].degree(), gens, DEFAULT_CLOSURE_CAP).unwrap();
    if model.order() != h.order() {
        return false;
    }
    let (o1, o2) = (gens[0].order(), gens[1].order());
    let first: Vec<_> = h.elements().iter().filter(|g| g.order() == o1).collect();
    let second: Vec<_> = h.elements().iter().filter(|g| g.order() == o2).collect();
    first.iter().any(|&g| {
        second.iter().any(|&k| {
            pair_extends(gens, &[g.clone(), k.clone()])
                && h.is_generated_by(&[g.clone(), k.clone()]).unwrap()
        })
    })
}

fn family_group(family: Family, m: i64, n: i64, i: Option<i64>, l: Option<i64>) -> FamilyGroup {
    let raw = RawParams {
        family: Some(family),
        m: Some(m),
        n: Some(n),
        i,
        l,
        j: Some(1),
        ..RawParams::default()
    };
    build_group(&families::validate_params(&raw).unwrap()).unwrap()
}

#[test]
fn criterion_8_normal_form_models() {
    let mut failures = Vec::new();

    let (x, z) = Metacyclic::new(3, 2, 1).unwrap().regular_generators();
    let g3 = family_group(Family::M3, 3, 9, None, None);
    let (h, _, _) = normal_subgroup(&g3);
    check(
        &mut failures,
        model_embeds(&[x, z], &h),
        format!("metacyclic (3,2,1) model is not H in {}", g3.params.group_label()),
    );

    let (x, y) = NonabelianH::new(9).unwrap().regular_generators();
    for l in [-1, 0, 1] {
        let g4 = family_group(Family::M4, 3, 9, Some(1), Some(l));
        let (h, hx, hy) = normal_subgroup(&g4);
        check(
            &mut failures,
            pair_extends(&[x.clone(), y.clone()], &[hx, hy]) && model_embeds(&[x.clone(), y.clone()], &h),
            format!("nonabelian n=9 model is not H in {}", g4.params.group_label()),
        );
    }
    report(8, "metacyclic and nonabelian normal forms match the permutation groups", &failures);
}

#[test]
fn criterion_9_structural_checks() {
    let mut failures = Vec::new();
    let mut checked = 0;
    for p in desk_range() {
        let fg = build_group(&p).unwrap();
        let map = AlgebraicMap::from_family(&fg).unwrap();
        let want = table1_entry(&p).chirality;
        let got = invariants(&map).chirality;
        check(&mut failures, got == want, format!("{}: {got:?}, table says {want:?}", p.label()));
        if p.n <= 2 {
            continue;
        }
        let lemma = families::lemma21_report(&fg.group, &fg.a, &fg.b, p.m, p.n).unwrap();
        check(&mut failures, lemma.holds(), format!("{}: {lemma:?}", p.label()));
        let (h, x, y) = normal_subgroup(&fg);
        check(
            &mut failures,
            families::isobicyclic_check(&h, &x, &y).unwrap(),
            format!("{}: (H, x, y) is not isobicyclic", p.label()),
        );
        checked += 1;
    }
    report(
        9,
        &format!("chirality matches for all maps; lemma and isobicyclic checks pass on {checked} groups"),
        &failures,
    );
}
