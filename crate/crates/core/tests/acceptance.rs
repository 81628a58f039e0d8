mod common;

use std::collections::BTreeSet;
use std::fs;
use std::ops::ControlFlow;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spherical_mosaic::io::parse_smt;
use spherical_mosaic::knotid::{
    classify, classify_with_limit, extract_gauss, extract_pd, is_alternating_diagram, jones, kauffman_bracket,
    naive_bracket, KnotTable, DEFAULT_CROSSING_LIMIT,
};
use spherical_mosaic::search::{
    enumerate, invariants_exhaustive, mosaic_lower_bound, search_knot, Certainty, Invariant, InvariantBudget,
    SearchConstraints,
};
use spherical_mosaic::sphere::{euler_characteristic, neighbor};
use spherical_mosaic::trace::{is_knot_mosaic, stats};
use spherical_mosaic::transforms::{
    bundled, eligible_reductions, embed, max_crossing_construction, reduce_tiling, wrap_shrink_one,
    wrap_shrink_two, CornerChoice,
};
use spherical_mosaic::{FaceId, Side, SphericalMosaic, Tile};

use common::{witness_dir, witness_manifest};

const WITNESS_BUDGET: u64 = 2_000_000;
const WITNESS_SEED: u64 = 1;

struct Report {
    failures: usize,
    lines: std::collections::BTreeMap<u32, String>,
}

impl Report {
    fn line(&mut self, id: u32, ok: bool, what: &str, detail: String) {
        if !ok {
            self.failures += 1;
        }
        let text = format!("criterion {id:>2}: {} {what} ({detail})", if ok { "PASS" } else { "FAIL" });
        self.lines.insert(id, text);
    }
}

fn load_witness(file: &str) -> SphericalMosaic {
    parse_smt(&fs::read_to_string(witness_dir().join(file)).expect("witness file")).expect("witness parses")
}

fn crossings(m: &SphericalMosaic) -> usize {
    m.tiles().iter().filter(|t| t.is_crossing()).count()
}

struct Census {
    types: BTreeSet<String>,
    max_crossings: usize,
    knots: usize,
    matches_search: bool,
}

fn full_census_n1(table: &KnotTable) -> Census {
    let mut types = BTreeSet::new();
    let mut max_crossings = 0;
    let mut found = BTreeSet::new();
    for mut code in 0..11u32.pow(6) {
        let tiles: Vec<Tile> = (0..6)
            .map(|_| {
                let t = Tile::new((code % 11) as u8).unwrap();
                code /= 11;
                t
            })
            .collect();
        let m = SphericalMosaic::from_tiles(1, tiles).unwrap();
        if !m.is_suitably_connected() || !is_knot_mosaic(&m) {
            continue;
        }
        types.insert(classify(&m, table).expect("classifies").name);
        max_crossings = max_crossings.max(crossings(&m));
        found.insert(m.tiles().to_vec());
    }
    let mut searched = BTreeSet::new();
    enumerate(&SearchConstraints::knots(1), |m| {
        searched.insert(m.tiles().to_vec());
        ControlFlow::Continue(())
    })
    .expect("unbudgeted");
    Census { types, max_crossings, knots: found.len(), matches_search: searched == found }
}

fn criteria_1_2_5(r: &mut Report, table: &KnotTable) {
    let start = Instant::now();
    let census = full_census_n1(table);
    let secs = start.elapsed().as_secs_f64();
    let expected: BTreeSet<String> = ["0_1", "3_1", "4_1"].iter().map(|s| s.to_string()).collect();
    r.line(
        1,
        census.types == expected && census.matches_search,
        "spherical 1-mosaic knot types are exactly {0_1, 3_1, 4_1}",
        format!(
            "{} knot mosaics among 11^6 assignments, types {:?}, pruned search agrees: {}, {secs:.1}s",
            census.knots, census.types, census.matches_search
        ),
    );
    r.line(
        2,
        census.max_crossings == 4,
        "maximum crossing tiles over spherical knot 1-mosaics is 4",
        format!("max {}", census.max_crossings),
    );

    let witness = load_witness("witness_51_n2.smt");
    let frozen = witness.n() == 2 && classify(&witness, table).map(|k| k.name) == Ok("5_1".into());
    let fresh = search_knot(2, "5_1", WITNESS_BUDGET, WITNESS_SEED, table);
    let fresh_ok = fresh.witness().is_some_and(|m| classify(m, table).map(|k| k.name) == Ok("5_1".into()));
    let absent = !census.types.contains("5_1");
    r.line(
        5,
        census.types.contains("4_1") && absent && frozen && fresh_ok,
        "sm(4_1) = 1 < sm(5_1) = 2",
        format!(
            "4_1 at n=1: {}, 5_1 absent at n=1: {absent}, frozen n=2 witness classifies: {frozen}, search reproduces: {fresh_ok}",
            census.types.contains("4_1")
        ),
    );
}

fn criterion_3(r: &mut Report) {
    let expected = [4, 19, 46, 85];
    let mut ok = true;
    let mut seen = Vec::new();
    for n in 1..=4 {
        for alternating in [false, true] {
            let run = max_crossing_construction(n, alternating, 0);
            let s = stats(&run.mosaic).expect("valid");
            let alternates =
                !alternating || extract_gauss(&run.mosaic).map(|g| is_alternating_diagram(&g)).unwrap_or(false);
            ok &= s.components == 1
                && s.crossing_tiles == expected[n - 1]
                && run.initial_components == 3 * n
                && alternates;
            if !alternating {
                seen.push(s.crossing_tiles);
            }
        }
    }
    r.line(
        3,
        ok,
        "max-crossing construction has 6n^2-3n+1 crossings, 3n initial components, alternating Gauss codes",
        format!("crossings for n=1..4: {seen:?}"),
    );
}

fn exact(inv: &Invariant, value: usize) -> bool {
    inv.value() == Some(value) && inv.witness.is_some() && inv.certainty != Certainty::Undetermined
}

fn criterion_4(r: &mut Report, table: &KnotTable) {
    let budget = InvariantBudget { tiles: 6, ..InvariantBudget::default() };
    let start = Instant::now();
    let rep = invariants_exhaustive("0_1", 2, budget, table).expect("table knot");
    let secs = start.elapsed().as_secs_f64();
    let sf1 = rep.sf_n.get(&1);
    let sf2 = rep.sf_n.get(&2);
    let ok = exact(&rep.sm, 1)
        && exact(&rep.st, 3)
        && exact(&rep.st_m, 3)
        && exact(&rep.sf, 1)
        && sf1.is_some_and(|i| exact(i, 3))
        && sf2.is_some_and(|i| exact(i, 1))
        && exact(&rep.sf_m, 3);
    let v = |i: Option<&Invariant>| i.and_then(|i| i.value()).map_or("?".to_string(), |x| x.to_string());
    r.line(
        4,
        ok,
        "unknot invariants sm=1 st=3 st_M=3 sf=1 sf_1=3 sf_2=1 sf_M=3 with witnesses",
        format!(
            "sm={} st={} st_M={} sf={} sf_1={} sf_2={} sf_M={}, {secs:.2}s",
            v(Some(&rep.sm)),
            v(Some(&rep.st)),
            v(Some(&rep.st_m)),
            v(Some(&rep.sf)),
            v(sf1),
            v(sf2),
            v(Some(&rep.sf_m))
        ),
    );
}

fn criterion_6(r: &mut Report) {
    let mut ok = true;
    let mut checked = 0;
    for (id, _, k) in bundled::all() {
        let expected = jones(&extract_pd(&embed(&k, FaceId::F).unwrap()).unwrap(), DEFAULT_CROSSING_LIMIT).unwrap();
        let mut images: Vec<SphericalMosaic> = CornerChoice::ALL.iter().filter_map(|c| wrap_shrink_one(&k, *c).ok()).collect();
        ok &= images.len() == 4;
        // the two-level shrink maps n-mosaics to (n-2)-mosaics, so it needs n >= 3
        if k.n() >= 3 {
            match wrap_shrink_two(&k) {
                Ok(m) => images.push(m),
                Err(e) => {
                    ok = false;
                    println!("    {id}: second shrink failed: {e}");
                }
            }
        }
        for m in images {
            let same = m.is_suitably_connected()
                && extract_pd(&m).ok().and_then(|pd| jones(&pd, DEFAULT_CROSSING_LIMIT).ok()) == Some(expected.clone());
            ok &= same;
            checked += 1;
        }
    }
    r.line(
        6,
        ok,
        "both shrink maps preserve the Jones polynomial on 0_1 (n=2,3), 3_1 (n=4), 4_1 (n=5)",
        format!("{checked} shrunk mosaics compared; two-level shrink skipped at n=2"),
    );
}

fn criterion_7(r: &mut Report, table: &KnotTable) {
    let k = bundled::unknot_2();
    let spots = eligible_reductions(&k);
    let result = spots.first().map(|&(row, col)| reduce_tiling(&k, row, col));
    let (ok, detail) = match result {
        Some(Ok(m)) => {
            let tiles = m.tiles().iter().filter(|t| !t.is_empty()).count();
            let knot = classify(&m, table).map(|k| k.name).unwrap_or_default();
            (
                m.n() == 1 && tiles == 3 && m.is_suitably_connected() && knot == "0_1",
                format!("n={} tiles={tiles} type {knot}", m.n()),
            )
        }
        Some(Err(e)) => (false, e.to_string()),
        None => (false, "no eligible T3".into()),
    };
    r.line(7, ok, "tiling reduction of the 4-tile unknot is a valid 3-tile 1-mosaic of 0_1", detail);
}

fn criterion_8(r: &mut Report) {
    let mut ok = true;
    for n in 1..=8 {
        ok &= euler_characteristic(n) == 2;
        for cell in SphericalMosaic::blank(n).cells() {
            for side in Side::ALL {
                let (c, s) = neighbor(n, cell, side);
                ok &= neighbor(n, c, s) == (cell, side);
            }
        }
    }
    r.line(8, ok, "Euler characteristic 2 and involutive gluing for n = 1..8", "all sizes checked".into());
}

fn criterion_9(r: &mut Report, table: &KnotTable) {
    let mut ok = table.len() == 36;
    for e in table.entries() {
        ok &= kauffman_bracket(&e.pd, DEFAULT_CROSSING_LIMIT).ok() == Some(naive_bracket(&e.pd));
    }
    let sources: Vec<SphericalMosaic> = witness_manifest().iter().map(|(_, _, f)| load_witness(f)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut diagrams = 0;
    let mut largest = 0;
    while diagrams < 50 {
        let src = &sources[rng.gen_range(0..sources.len())];
        let tiles: Vec<Tile> = src
            .tiles()
            .iter()
            .map(|t| if t.is_crossing() { Tile::new(rng.gen_range(7..=10)).unwrap() } else { *t })
            .collect();
        let m = SphericalMosaic::from_tiles(src.n(), tiles).unwrap();
        let c = crossings(&m);
        if c == 0 || c > 10 || !is_knot_mosaic(&m) {
            continue;
        }
        let pd = extract_pd(&m).unwrap();
        ok &= kauffman_bracket(&pd, DEFAULT_CROSSING_LIMIT).ok() == Some(naive_bracket(&pd));
        diagrams += 1;
        largest = largest.max(c);
    }
    r.line(
        9,
        ok,
        "memoized bracket equals the naive state sum; table Jones values distinct up to mirror",
        format!("{} table codes, {diagrams} mosaic diagrams up to {largest} crossings", table.len()),
    );
}

fn criterion_10(r: &mut Report, table: &KnotTable) {
    let targets: Vec<&str> =
        table.entries().iter().filter(|e| (5..=8).contains(&e.crossings)).map(|e| e.name.as_str()).collect();
    let manifest = witness_manifest();
    let mut ok = true;
    let mut covered = 0;
    let start = Instant::now();
    for name in &targets {
        let Some((_, n, file)) = manifest.iter().find(|(k, _, _)| k == name) else {
            println!("    {name}: no frozen witness");
            continue;
        };
        let m = load_witness(file);
        let c = table.get(name).unwrap().crossings;
        let classified = classify_with_limit(&m, table, DEFAULT_CROSSING_LIMIT).map(|k| k.knot.name);
        let certified = *n == 2 && mosaic_lower_bound(c) == 2 && m.is_suitably_connected();
        let reproduced = search_knot(2, name, WITNESS_BUDGET, WITNESS_SEED, table).witness().is_some();
        if classified.as_deref() == Ok(*name) && certified && reproduced {
            covered += 1;
        } else {
            ok = false;
            println!("    {name}: classified {classified:?}, certified {certified}, reproduced {reproduced}");
        }
    }
    r.line(
        10,
        ok,
        "frozen n=2 witnesses certify sm = 2 for knots 5_1 through 8_21",
        format!(
            "coverage {covered}/{} ({:.0}%), budget {WITNESS_BUDGET} nodes, seed {WITNESS_SEED}, {:.1}s",
            targets.len(),
            100.0 * covered as f64 / targets.len() as f64,
            start.elapsed().as_secs_f64()
        ),
    );
}

fn main() {
    let table = KnotTable::bundled();
    let mut r = Report { failures: 0, lines: Default::default() };
    criteria_1_2_5(&mut r, table);
    criterion_3(&mut r);
    criterion_4(&mut r, table);
    criterion_6(&mut r);
    criterion_7(&mut r, table);
    criterion_8(&mut r);
    criterion_9(&mut r, table);
    criterion_10(&mut r, table);
    for line in r.lines.values() {
        println!("{line}");
    }
    if r.failures > 0 {
        println!("{} criteria failed", r.failures);
        std::process::exit(1);
    }
}
