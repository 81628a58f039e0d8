mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spherical_mosaic::knotid::{
    classify, coloring_determinant, extract_codes, extract_pd, is_alternating_diagram, kauffman_bracket,
    naive_bracket, writhe, Chirality, KnotTable, LaurentPoly, DEFAULT_CROSSING_LIMIT,
};
use spherical_mosaic::sphere::{mirror_mosaic, rotate_mosaic};
use spherical_mosaic::trace::is_knot_mosaic;
use spherical_mosaic::io::parse_smt;
use spherical_mosaic::{CubeRotation, SphericalMosaic, Tile};

use common::random_valid_mosaic;

/// Frozen witnesses with their crossings randomly switched or smoothed,
/// kept when they stay knots.
fn random_knot_diagrams(count: usize, max_crossings: usize) -> Vec<SphericalMosaic> {
    let sources: Vec<SphericalMosaic> = common::witness_manifest()
        .iter()
        .map(|(_, _, file)| parse_smt(&std::fs::read_to_string(common::witness_dir().join(file)).unwrap()).unwrap())
        .filter(|m| m.tiles().iter().filter(|t| t.is_crossing()).count() >= 3)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut out = Vec::new();
    while out.len() < count {
        let src = &sources[rng.gen_range(0..sources.len())];
        let tiles: Vec<Tile> = src
            .tiles()
            .iter()
            .map(|t| match t.kind() {
                9 | 10 => Tile::new(*[7, 8, 9, 9, 10, 10].get(rng.gen_range(0..6)).unwrap()).unwrap(),
                _ => *t,
            })
            .collect();
        let m = SphericalMosaic::from_tiles(src.n(), tiles).unwrap();
        let c = m.tiles().iter().filter(|t| t.is_crossing()).count();
        if is_knot_mosaic(&m) && (1..=max_crossings).contains(&c) {
            out.push(m);
        }
    }
    out
}

#[test]
fn jones_polynomials_match_published_values() {
    let table = KnotTable::bundled();
    let text = include_str!("fixtures_knotinfo_jones.txt");
    let mut checked = 0;
    for line in text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let (name, published) = line.split_once(';').unwrap();
        let expected = LaurentPoly::parse(published, 't').unwrap_or_else(|| panic!("bad fixture {line}"));
        assert_eq!(table.get(name).unwrap().jones, expected, "{name}");
        checked += 1;
    }
    assert_eq!(checked, table.len());
}

#[test]
fn determinants_agree_on_the_table() {
    for e in KnotTable::bundled().entries() {
        assert_eq!(e.jones.eval(-1).unwrap().unsigned_abs(), coloring_determinant(&e.pd), "{}", e.name);
    }
}

#[test]
fn memoized_bracket_equals_state_sum() {
    for e in KnotTable::bundled().entries() {
        assert_eq!(kauffman_bracket(&e.pd, DEFAULT_CROSSING_LIMIT).unwrap(), naive_bracket(&e.pd), "{}", e.name);
    }
    let diagrams = random_knot_diagrams(50, 10);
    for m in &diagrams {
        let pd = extract_pd(m).unwrap();
        assert!(pd.is_well_formed());
        assert_eq!(kauffman_bracket(&pd, DEFAULT_CROSSING_LIMIT).unwrap(), naive_bracket(&pd));
    }
    assert!(diagrams.iter().map(|m| extract_pd(m).unwrap().len()).max().unwrap() >= 6);
}

#[test]
fn classification_ignores_rotation_and_mirror_flips_chirality() {
    let table = KnotTable::bundled();
    let all = CubeRotation::all();
    for (i, m) in random_knot_diagrams(20, 8).iter().enumerate() {
        let k = classify(m, table).unwrap();
        let r = rotate_mosaic(m, &all[i % 24]);
        assert_eq!(classify(&r, table).unwrap(), k);
        assert_eq!(classify(&mirror_mosaic(m), table).unwrap(), k.mirrored());
        let pd = extract_pd(m).unwrap();
        assert_eq!(writhe(&extract_pd(&mirror_mosaic(m)).unwrap()), -writhe(&pd));
        if k.chirality == Chirality::Amphichiral {
            assert_eq!(k.mirrored(), k);
        }
    }
}

#[test]
fn codes_are_consistent_on_random_mosaics() {
    for seed in 0..200 {
        let m = random_valid_mosaic(seed);
        if !is_knot_mosaic(&m) {
            assert!(extract_pd(&m).is_err());
            continue;
        }
        let codes = extract_codes(&m).unwrap();
        assert_eq!(codes.pd.len(), m.tiles().iter().filter(|t| t.is_crossing()).count());
        assert_eq!(codes.gauss.visits.len(), 2 * codes.pd.len());
        assert!(codes.gauss.is_well_formed());
        let mirrored = extract_codes(&mirror_mosaic(&m)).unwrap();
        assert_eq!(is_alternating_diagram(&mirrored.gauss), is_alternating_diagram(&codes.gauss));
    }
}
