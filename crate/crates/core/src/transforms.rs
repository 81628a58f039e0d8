//! Constructions that move knots between classical and spherical mosaics.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::sphere::{CellAddr, ClassicalMosaic, FaceFrame, FaceId, SphericalMosaic, Surface};
use crate::tiles::{rotate_tile, strand_through, Role, Side, Tile};
use crate::trace::{self, component_count};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("input mosaic is not usable: {0}")]
    InvalidInput(String),
    #[error("boundary tile at ({row},{col}) has four connection points")]
    BoundaryHasFourConnectionTile { row: usize, col: usize },
    #[error("tile at ({row},{col}) is not an eligible T3: {reason}")]
    IneligiblePosition { row: usize, col: usize, reason: String },
    #[error("construction produced {0} mismatched midpoints")]
    ConnectionBroken(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CornerChoice {
    TopLeft,
    TopRight,
    BottomRight,
    BottomLeft,
}

impl CornerChoice {
    pub const ALL: [CornerChoice; 4] =
        [CornerChoice::TopLeft, CornerChoice::TopRight, CornerChoice::BottomRight, CornerChoice::BottomLeft];

    /// Counterclockwise quarter turns that carry this corner to the bottom left.
    fn turns_to_bottom_left(self) -> i32 {
        match self {
            CornerChoice::TopLeft => 1,
            CornerChoice::TopRight => 2,
            CornerChoice::BottomRight => 3,
            CornerChoice::BottomLeft => 0,
        }
    }

    pub fn parse(text: &str) -> Option<CornerChoice> {
        match text.to_ascii_lowercase().as_str() {
            "tl" | "top-left" => Some(CornerChoice::TopLeft),
            "tr" | "top-right" => Some(CornerChoice::TopRight),
            "br" | "bottom-right" => Some(CornerChoice::BottomRight),
            "bl" | "bottom-left" => Some(CornerChoice::BottomLeft),
            _ => None,
        }
    }
}

fn require_knot_input(k: &ClassicalMosaic) -> Result<(), TransformError> {
    let bad = k.mismatches();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(TransformError::InvalidInput(format!("{} unmatched connection points", bad.len())))
    }
}

fn checked(m: SphericalMosaic) -> Result<SphericalMosaic, TransformError> {
    let report = m.validate();
    if report.is_valid() {
        Ok(m)
    } else {
        Err(TransformError::ConnectionBroken(report.mismatches.len()))
    }
}

/// Copies a classical mosaic onto one face of a blank spherical mosaic.
pub fn embed(k: &ClassicalMosaic, face: FaceId) -> Result<SphericalMosaic, TransformError> {
    require_knot_input(k)?;
    let n = k.n();
    let mut m = SphericalMosaic::blank(n);
    for r in 0..n {
        for c in 0..n {
            m.set(CellAddr::new(face, r, c), k.get(r, c));
        }
    }
    checked(m)
}

/// Deletes one corner tile of an n-mosaic and wraps the two clipped boundary
/// strips over the adjacent cube edges, giving a spherical (n-1)-mosaic.
pub fn wrap_shrink_one(k: &ClassicalMosaic, corner: CornerChoice) -> Result<SphericalMosaic, TransformError> {
    require_knot_input(k)?;
    let n = k.n();
    if n < 2 {
        return Err(TransformError::InvalidInput("need a mosaic of size at least 2".into()));
    }
    let k = k.rotated(corner.turns_to_bottom_left());
    let last = n - 2;
    let mut m = SphericalMosaic::blank(n - 1);
    for r in 0..n - 1 {
        for c in 1..n {
            m.set(CellAddr::new(FaceId::F, r, c - 1), k.get(r, c));
        }
    }
    for c in 1..n {
        m.set(CellAddr::new(FaceId::D, 0, c - 1), k.get(n - 1, c));
    }
    for r in 0..n - 1 {
        m.set(CellAddr::new(FaceId::L, r, last), k.get(r, 0));
    }
    checked(m)
}

/// Deletes the four corner tiles of an n-mosaic and wraps the boundary ring
/// onto the four faces around F, giving a spherical (n-2)-mosaic.
pub fn wrap_shrink_two(k: &ClassicalMosaic) -> Result<SphericalMosaic, TransformError> {
    require_knot_input(k)?;
    let n = k.n();
    if n < 3 {
        return Err(TransformError::InvalidInput("need a mosaic of size at least 3".into()));
    }
    for r in 0..n {
        for c in 0..n {
            let on_ring = r == 0 || c == 0 || r == n - 1 || c == n - 1;
            if on_ring && k.get(r, c).mask().count_ones() == 4 {
                return Err(TransformError::BoundaryHasFourConnectionTile { row: r, col: c });
            }
        }
    }
    let last = n - 3;
    let mut m = SphericalMosaic::blank(n - 2);
    for r in 1..n - 1 {
        for c in 1..n - 1 {
            m.set(CellAddr::new(FaceId::F, r - 1, c - 1), k.get(r, c));
        }
    }
    for i in 1..n - 1 {
        m.set(CellAddr::new(FaceId::U, last, i - 1), k.get(0, i));
        m.set(CellAddr::new(FaceId::D, 0, i - 1), k.get(n - 1, i));
        m.set(CellAddr::new(FaceId::L, i - 1, last), k.get(i, 0));
        m.set(CellAddr::new(FaceId::R, i - 1, 0), k.get(i, n - 1));
    }
    checked(m)
}

/// Deletes a T3 tile that has nothing below it or to its left and folds the
/// three remaining regions onto U, F and R around a cube corner.
pub fn reduce_tiling(k: &ClassicalMosaic, row: usize, col: usize) -> Result<SphericalMosaic, TransformError> {
    require_knot_input(k)?;
    let n = k.n();
    let ineligible = |reason: &str| TransformError::IneligiblePosition { row, col, reason: reason.into() };
    if row >= n || col >= n {
        return Err(ineligible("outside the mosaic"));
    }
    if k.get(row, col) != Tile::T3 {
        return Err(ineligible("tile is not T3"));
    }
    if n < 2 {
        return Err(ineligible("mosaic too small"));
    }
    for r in 0..n {
        for c in 0..n {
            if (r > row || c < col) && !k.get(r, c).is_empty() {
                return Err(ineligible("non-empty tile below or to the left"));
            }
        }
    }
    let last = n - 2;
    let mut m = SphericalMosaic::blank(n - 1);
    for i in 0..row {
        for j in 0..n - 1 - col {
            let t = rotate_tile(k.get(row - 1 - i, col + 1 + j), 1);
            m.set(CellAddr::new(FaceId::U, last - j, last - i), t);
        }
        m.set(CellAddr::new(FaceId::F, 0, last - i), rotate_tile(k.get(row - 1 - i, col), 1));
    }
    for j in 0..n - 1 - col {
        m.set(CellAddr::new(FaceId::R, 0, j), k.get(row, col + 1 + j));
    }
    checked(m)
}

/// Positions of eligible T3 tiles for [`reduce_tiling`].
pub fn eligible_reductions(k: &ClassicalMosaic) -> Vec<(usize, usize)> {
    let n = k.n();
    (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| k.get(r, c) == Tile::T3)
        .filter(|&(row, col)| {
            (0..n).all(|r| (0..n).all(|c| !((r > row || c < col) && !k.get(r, c).is_empty())))
        })
        .collect()
}

/// Trace of one run of [`max_crossing_construction`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxCrossingRun {
    pub mosaic: SphericalMosaic,
    pub initial_components: usize,
    /// Component count after each replacement.
    pub components_after: Vec<usize>,
    pub replaced: Vec<CellAddr>,
}

/// All-crossing tiling in which every straight strand alternates.
pub fn alternating_crossings(n: usize) -> SphericalMosaic {
    let mut m = SphericalMosaic::blank(n);
    for face in FaceId::ALL {
        let fr = FaceFrame::of(face);
        for r in 0..n {
            for c in 0..n {
                // top right corner of the cell, in integer coordinates
                let p: i64 = (0..3)
                    .map(|a| fr.origin[a] * n as i64 + fr.right[a] * (c as i64 + 1) + fr.down[a] * r as i64)
                    .sum();
                let t = if p.rem_euclid(2) == 0 { Tile::T9 } else { Tile::T10 };
                m.set(CellAddr::new(face, r, c), t);
            }
        }
    }
    m
}

/// Component index of each tile passage, keyed by `cell * 4 + side`.
fn passage_components(surface: &Surface, tiles: &[Tile]) -> Vec<usize> {
    let mut comp = vec![usize::MAX; tiles.len() * 4];
    let mut next = 0;
    for start in 0..tiles.len() {
        for side in Side::ALL {
            if !tiles[start].has_connection(side) || comp[start * 4 + side.index()] != usize::MAX {
                continue;
            }
            let (mut cell, mut entry) = (start, side);
            loop {
                let (_, pair) = strand_through(tiles[cell], entry).expect("connection point has a strand");
                let exit = pair.other(entry).expect("strand end");
                comp[cell * 4 + entry.index()] = next;
                comp[cell * 4 + exit.index()] = next;
                let (c, s) = surface.link(cell, exit);
                if (c, s) == (start, side) {
                    break;
                }
                cell = c;
                entry = s;
            }
            next += 1;
        }
    }
    comp
}

fn components_alternate(m: &SphericalMosaic) -> bool {
    let Ok(comps) = trace::components(m) else { return false };
    comps.iter().all(|comp| {
        let roles: Vec<Role> = comp.steps.iter().map(|s| s.role).filter(|r| *r != Role::Flat).collect();
        (0..roles.len()).all(|i| roles[i] != roles[(i + 1) % roles.len()])
    })
}

/// Starts from an all-crossing n-mosaic (3n belts) and replaces 3n-1
/// crossings that join distinct components by T7 or T8, leaving a knot with
/// 6n^2 - 3n + 1 crossings.
pub fn max_crossing_construction(n: usize, alternating: bool, seed: u64) -> MaxCrossingRun {
    assert!(n > 0);
    let surface = Surface::new(n);
    let mut m = if alternating { alternating_crossings(n) } else { SphericalMosaic::filled(n, Tile::T9) };
    let mut order: Vec<usize> = (0..6 * n * n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let initial_components = component_count(&surface, m.tiles());
    let mut components_after = Vec::new();
    let mut replaced = Vec::new();
    let mut current = initial_components;
    while current > 1 {
        let comp = passage_components(&surface, m.tiles());
        let cell = *order
            .iter()
            .find(|&&i| {
                m.tile_at(i).is_crossing() && comp[i * 4 + Side::Left.index()] != comp[i * 4 + Side::Top.index()]
            })
            .expect("distinct components always meet at a crossing");
        let addr = CellAddr::from_index(cell, n);
        let before = m.clone();
        let mut chosen = None;
        for t in [Tile::T7, Tile::T8] {
            let candidate = before.clone().with(addr, t);
            let merged = component_count(&surface, candidate.tiles()) == current - 1;
            if merged && (!alternating || components_alternate(&candidate)) {
                chosen = Some(candidate);
                break;
            }
        }
        m = chosen.unwrap_or_else(|| before.with(addr, Tile::T7));
        current = component_count(&surface, m.tiles());
        components_after.push(current);
        replaced.push(addr);
    }
    MaxCrossingRun { mosaic: m, initial_components, components_after, replaced }
}

pub fn max_crossings(n: usize) -> usize {
    6 * n * n - 3 * n + 1
}

/// Classical mosaics shipped with the library.
pub mod bundled {
    use crate::sphere::ClassicalMosaic;

    pub fn unknot_2() -> ClassicalMosaic {
        ClassicalMosaic::from_kinds(&[&[2, 1], &[3, 4]]).expect("square")
    }

    pub fn unknot_3() -> ClassicalMosaic {
        ClassicalMosaic::from_kinds(&[&[2, 1, 0], &[3, 4, 0], &[0, 0, 0]]).expect("square")
    }

    pub fn trefoil_4() -> ClassicalMosaic {
        ClassicalMosaic::from_kinds(&[&[0, 2, 1, 0], &[2, 9, 10, 1], &[6, 3, 9, 4], &[3, 5, 4, 0]]).expect("square")
    }

    pub fn figure_eight_5() -> ClassicalMosaic {
        ClassicalMosaic::from_kinds(&[
            &[0, 0, 2, 1, 0],
            &[0, 2, 10, 9, 1],
            &[2, 10, 9, 9, 4],
            &[3, 9, 4, 6, 0],
            &[0, 3, 5, 4, 0],
        ])
        .expect("square")
    }

    /// (name, knot, mosaic) for every bundled classical mosaic.
    pub fn all() -> Vec<(&'static str, &'static str, ClassicalMosaic)> {
        vec![
            ("unknot_2", "0_1", unknot_2()),
            ("unknot_3", "0_1", unknot_3()),
            ("trefoil_4", "3_1", trefoil_4()),
            ("figure_eight_5", "4_1", figure_eight_5()),
        ]
    }
}
