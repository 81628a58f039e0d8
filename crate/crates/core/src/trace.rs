//! Walking strands across tiles and cube edges.

use thiserror::Error;

use crate::sphere::{CellAddr, FaceId, SphericalMosaic, Surface};
use crate::tiles::{strand_through, Role, Side, Tile};
use crate::util::UnionFind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TraceError {
    #[error("mosaic is not suitably connected ({0} mismatched midpoints)")]
    NotSuitablyConnected(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StrandStep {
    pub cell: CellAddr,
    pub entry: Side,
    pub exit: Side,
    pub role: Role,
}

/// A closed strand, as the cyclic sequence of tile passages it makes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub steps: Vec<StrandStep>,
}

impl Component {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MosaicStats {
    pub non_empty_tiles: usize,
    pub non_empty_faces: usize,
    pub crossing_tiles: usize,
    pub components: usize,
}

fn check(m: &SphericalMosaic) -> Result<(), TraceError> {
    let report = m.validate();
    if report.is_valid() {
        Ok(())
    } else {
        Err(TraceError::NotSuitablyConnected(report.mismatches.len()))
    }
}

/// Components in start order: each begins at the least unvisited
/// (face, row, col, side) connection point.
pub fn components(m: &SphericalMosaic) -> Result<Vec<Component>, TraceError> {
    check(m)?;
    let surface = Surface::new(m.n());
    Ok(walk(&surface, m.tiles()))
}

fn walk(surface: &Surface, tiles: &[Tile]) -> Vec<Component> {
    let n = surface.n;
    let mut seen = vec![false; tiles.len() * 4];
    let mut out = Vec::new();
    for start in 0..tiles.len() {
        for side in Side::ALL {
            if !tiles[start].has_connection(side) || seen[start * 4 + side.index()] {
                continue;
            }
            let mut steps = Vec::new();
            let (mut cell, mut entry) = (start, side);
            loop {
                let (_, pair) = strand_through(tiles[cell], entry).expect("connection point has a strand");
                let exit = pair.other(entry).expect("strand end");
                seen[cell * 4 + entry.index()] = true;
                seen[cell * 4 + exit.index()] = true;
                steps.push(StrandStep { cell: CellAddr::from_index(cell, n), entry, exit, role: pair.role });
                let (next, next_side) = surface.link(cell, exit);
                if (next, next_side) == (start, side) {
                    break;
                }
                cell = next;
                entry = next_side;
            }
            out.push(Component { steps });
        }
    }
    out
}

/// Number of closed strands, assuming the tiles are suitably connected.
pub fn component_count(surface: &Surface, tiles: &[Tile]) -> usize {
    let mut seen = vec![false; tiles.len() * 4];
    let mut count = 0;
    for start in 0..tiles.len() {
        for side in Side::ALL {
            if !tiles[start].has_connection(side) || seen[start * 4 + side.index()] {
                continue;
            }
            count += 1;
            let (mut cell, mut entry) = (start, side);
            loop {
                let (_, pair) = strand_through(tiles[cell], entry).expect("connection point has a strand");
                let exit = pair.other(entry).expect("strand end");
                seen[cell * 4 + entry.index()] = true;
                seen[cell * 4 + exit.index()] = true;
                let (next, next_side) = surface.link(cell, exit);
                if next == start && next_side == side {
                    break;
                }
                cell = next;
                entry = next_side;
            }
        }
    }
    count
}

pub fn is_knot_mosaic(m: &SphericalMosaic) -> bool {
    m.is_suitably_connected() && component_count(&Surface::new(m.n()), m.tiles()) == 1
}

pub fn stats(m: &SphericalMosaic) -> Result<MosaicStats, TraceError> {
    check(m)?;
    Ok(stats_unchecked(&Surface::new(m.n()), m))
}

pub(crate) fn stats_unchecked(surface: &Surface, m: &SphericalMosaic) -> MosaicStats {
    let tiles = m.tiles();
    MosaicStats {
        non_empty_tiles: tiles.iter().filter(|t| !t.is_empty()).count(),
        non_empty_faces: FaceId::ALL
            .into_iter()
            .filter(|f| m.face_tiles(*f).iter().any(|t| !t.is_empty()))
            .count(),
        crossing_tiles: tiles.iter().filter(|t| t.is_crossing()).count(),
        components: component_count(surface, tiles),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    /// Left to Right in the cell's face frame.
    Horizontal,
    /// Top to Bottom in the cell's face frame.
    Vertical,
}

impl Axis {
    fn of(side: Side) -> Axis {
        if side.is_horizontal() {
            Axis::Horizontal
        } else {
            Axis::Vertical
        }
    }

    fn entry(self) -> Side {
        match self {
            Axis::Horizontal => Side::Left,
            Axis::Vertical => Side::Top,
        }
    }
}

/// A closed straight band of line and crossing tiles that separates the
/// cube surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Belt {
    pub cells: Vec<(CellAddr, Axis)>,
}

impl Belt {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

fn runs_straight(tile: Tile, axis: Axis) -> bool {
    match tile.kind() {
        5 => axis == Axis::Horizontal,
        6 => axis == Axis::Vertical,
        9 | 10 => true,
        _ => false,
    }
}

pub fn find_belts(m: &SphericalMosaic) -> Result<Vec<Belt>, TraceError> {
    check(m)?;
    let n = m.n();
    let surface = Surface::new(n);
    let tiles = m.tiles();
    let mut used = vec![false; tiles.len() * 2];
    let slot = |cell: usize, axis: Axis| cell * 2 + axis as usize;
    let mut belts = Vec::new();
    for start in 0..tiles.len() {
        for axis in [Axis::Horizontal, Axis::Vertical] {
            if !runs_straight(tiles[start], axis) || used[slot(start, axis)] {
                continue;
            }
            let mut path = vec![(start, axis)];
            let (mut cell, mut entry) = (start, axis.entry());
            let closed = loop {
                let (next, next_side) = surface.link(cell, entry.opposite());
                let next_axis = Axis::of(next_side);
                if next == start && next_axis == axis {
                    break true;
                }
                if !runs_straight(tiles[next], next_axis)
                    || path.len() > tiles.len() * 2
                    || path.contains(&(next, next_axis))
                {
                    break false;
                }
                path.push((next, next_axis));
                cell = next;
                entry = next_side;
            };
            if !closed {
                continue;
            }
            for &(c, a) in &path {
                used[slot(c, a)] = true;
            }
            if separates(&surface, &path) {
                belts.push(Belt {
                    cells: path.iter().map(|&(c, a)| (CellAddr::from_index(c, n), a)).collect(),
                });
            }
        }
    }
    Ok(belts)
}

/// Whether deleting the path's cells disconnects the cell adjacency graph.
fn separates(surface: &Surface, path: &[(usize, Axis)]) -> bool {
    let cells = surface.cells();
    let mut removed = vec![false; cells];
    for &(c, _) in path {
        removed[c] = true;
    }
    let mut uf = UnionFind::new(cells);
    for c in (0..cells).filter(|c| !removed[*c]) {
        for side in Side::ALL {
            let (d, _) = surface.link(c, side);
            if !removed[d] {
                uf.union(c, d);
            }
        }
    }
    let kept = removed.iter().filter(|r| !**r).count();
    let deleted = cells - kept;
    uf.sets() - deleted >= 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::FaceId::*;

    fn three_tile_unknot() -> SphericalMosaic {
        SphericalMosaic::blank(1)
            .with(CellAddr::new(U, 0, 0), Tile::T2)
            .with(CellAddr::new(F, 0, 0), Tile::T3)
            .with(CellAddr::new(R, 0, 0), Tile::T4)
    }

    #[test]
    fn blank_has_no_components() {
        for n in 1..=3 {
            let m = SphericalMosaic::blank(n);
            assert!(components(&m).unwrap().is_empty());
            assert!(!is_knot_mosaic(&m));
            assert_eq!(stats(&m).unwrap(), MosaicStats::default());
        }
    }

    #[test]
    fn all_crossings_give_three_n_components() {
        for n in 1..=4 {
            let m = SphericalMosaic::filled(n, Tile::T9);
            let comps = components(&m).unwrap();
            assert_eq!(comps.len(), 3 * n);
            assert!(comps.iter().all(|c| c.len() == 4 * n));
            let belts = find_belts(&m).unwrap();
            assert_eq!(belts.len(), 3 * n);
            assert!(belts.iter().all(|b| b.len() == 4 * n));
        }
        assert!(!is_knot_mosaic(&SphericalMosaic::filled(1, Tile::T9)));
    }

    #[test]
    fn unknot_loop() {
        let m = three_tile_unknot();
        assert!(is_knot_mosaic(&m));
        let s = stats(&m).unwrap();
        assert_eq!((s.non_empty_tiles, s.non_empty_faces, s.crossing_tiles, s.components), (3, 3, 0, 1));
        assert!(find_belts(&m).unwrap().is_empty());
        let comps = components(&m).unwrap();
        // starts at the least connection point: U's Right side
        assert_eq!(comps[0].steps[0].cell, CellAddr::new(U, 0, 0));
        assert_eq!(comps[0].steps[0].entry, Side::Right);
    }

    #[test]
    fn passages_are_all_traversed() {
        let m = SphericalMosaic::filled(2, Tile::T9)
            .with(CellAddr::new(F, 0, 0), Tile::T7)
            .with(CellAddr::new(B, 1, 1), Tile::T8);
        let passages: usize = m.tiles().iter().map(|t| t.mask().count_ones() as usize / 2).sum();
        let comps = components(&m).unwrap();
        assert_eq!(comps.iter().map(|c| c.len()).sum::<usize>(), passages);
        for c in &comps {
            for w in c.steps.windows(2) {
                let (cell, side) = m.neighbor(w[0].cell, w[0].exit);
                assert_eq!((cell, side), (w[1].cell, w[1].entry));
            }
        }
    }

    #[test]
    fn invalid_mosaic_is_rejected() {
        let m = SphericalMosaic::blank(1).with(CellAddr::new(U, 0, 0), Tile::T5);
        assert_eq!(components(&m), Err(TraceError::NotSuitablyConnected(4)));
        assert!(!is_knot_mosaic(&m));
    }

    #[test]
    fn line_ring_on_equator_is_a_belt() {
        let mut m = SphericalMosaic::blank(1);
        for f in [L, F, R, B] {
            m.set(CellAddr::new(f, 0, 0), Tile::T5);
        }
        assert!(is_knot_mosaic(&m));
        assert_eq!(find_belts(&m).unwrap().len(), 1);
    }
}
