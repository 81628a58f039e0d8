#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spherical_mosaic::transforms::{embed, wrap_shrink_one, CornerChoice};
use spherical_mosaic::{ClassicalMosaic, FaceId, SphericalMosaic};

/// A suitably connected spherical mosaic: a random classical mosaic either
/// placed on one face or wrapped over three.
pub fn random_valid_mosaic(seed: u64) -> SphericalMosaic {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=5);
    let k = ClassicalMosaic::random(n, &mut rng);
    if rng.gen_bool(0.5) {
        embed(&k, FaceId::from_index(rng.gen_range(0..6))).expect("any classical mosaic embeds")
    } else {
        let corner = CornerChoice::ALL[rng.gen_range(0..4)];
        wrap_shrink_one(&k, corner).expect("boundary-free mosaics shrink")
    }
}

pub fn witness_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/witnesses")
}

/// `(knot, n, file)` rows of the witness manifest.
pub fn witness_manifest() -> Vec<(String, usize, String)> {
    let text = std::fs::read_to_string(witness_dir().join("MANIFEST.txt")).expect("manifest");
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split(';').collect();
            (f[0].to_string(), f[1].parse().expect("size"), f[2].to_string())
        })
        .collect()
}
