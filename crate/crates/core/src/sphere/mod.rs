//! Spherical n-mosaics: six n×n tile grids on the faces of a cube.
//!
//! Faces are stored in the orientation of the cross-shaped net
//!
//! ```text
//!       U
//!     L F R B
//!       D
//! ```
//!
//! with every face drawn as seen from outside the cube. All the orientation
//! data needed to walk across cube edges lives in [`glue_table`].

mod classical;
mod geometry;

pub use classical::{ClassicalMosaic, ClassicalMismatch};
pub use geometry::{rotate_mosaic, CubeRotation, FaceFrame, RotationTable};

use std::fmt;

use crate::tiles::{mirror_tile, Side, Tile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceId {
    U,
    L,
    F,
    R,
    B,
    D,
}

impl FaceId {
    /// Net reading order, also the storage and serialization order.
    pub const ALL: [FaceId; 6] = [FaceId::U, FaceId::L, FaceId::F, FaceId::R, FaceId::B, FaceId::D];

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub const fn from_index(i: usize) -> FaceId {
        FaceId::ALL[i]
    }

    pub fn letter(self) -> char {
        match self {
            FaceId::U => 'U',
            FaceId::L => 'L',
            FaceId::F => 'F',
            FaceId::R => 'R',
            FaceId::B => 'B',
            FaceId::D => 'D',
        }
    }

    pub fn from_letter(c: char) -> Option<FaceId> {
        FaceId::ALL.into_iter().find(|f| f.letter() == c.to_ascii_uppercase())
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A cell on the cube surface. Row 0 is the top of the face in the net frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellAddr {
    pub face: FaceId,
    pub row: usize,
    pub col: usize,
}

impl CellAddr {
    pub const fn new(face: FaceId, row: usize, col: usize) -> CellAddr {
        CellAddr { face, row, col }
    }

    #[inline]
    pub fn index(&self, n: usize) -> usize {
        (self.face.index() * n + self.row) * n + self.col
    }

    #[inline]
    pub fn from_index(index: usize, n: usize) -> CellAddr {
        let face = FaceId::from_index(index / (n * n));
        let rem = index % (n * n);
        CellAddr { face, row: rem / n, col: rem % n }
    }
}

impl fmt::Display for CellAddr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.face, self.row, self.col)
    }
}

/// Where a face side lands after crossing a cube edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub face: FaceId,
    pub side: Side,
    /// When set, index `i` along the side meets index `n - 1 - i`.
    pub reversed: bool,
}

/// Total involutive map on the 24 (face, side) pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGluing {
    table: [[Gluing; 4]; 6],
}

impl EdgeGluing {
    pub fn get(&self, face: FaceId, side: Side) -> Gluing {
        self.table[face.index()][side.index()]
    }

    pub fn entries(&self) -> impl Iterator<Item = (FaceId, Side, Gluing)> + '_ {
        FaceId::ALL
            .into_iter()
            .flat_map(move |f| Side::ALL.into_iter().map(move |s| (f, s, self.get(f, s))))
    }

    /// Builds the full table from one representative of each identified pair.
    fn from_pairs(pairs: &[(FaceId, Side, FaceId, Side, bool)]) -> EdgeGluing {
        let placeholder = Gluing { face: FaceId::U, side: Side::Top, reversed: false };
        let mut table = [[placeholder; 4]; 6];
        let mut set = [[false; 4]; 6];
        for &(fa, sa, fb, sb, reversed) in pairs {
            table[fa.index()][sa.index()] = Gluing { face: fb, side: sb, reversed };
            table[fb.index()][sb.index()] = Gluing { face: fa, side: sa, reversed };
            assert!(!set[fa.index()][sa.index()] && !set[fb.index()][sb.index()]);
            set[fa.index()][sa.index()] = true;
            set[fb.index()][sb.index()] = true;
        }
        assert!(set.iter().flatten().all(|s| *s), "gluing table is not total");
        EdgeGluing { table }
    }
}

/// The fixed cube-edge identifications of the net.
pub fn glue_table() -> &'static EdgeGluing {
    use std::sync::OnceLock;
    use FaceId::*;
    use Side::*;
    static TABLE: OnceLock<EdgeGluing> = OnceLock::new();
    TABLE.get_or_init(|| {
        EdgeGluing::from_pairs(&[
            (U, Bottom, F, Top, false),
            (L, Right, F, Left, false),
            (F, Right, R, Left, false),
            (R, Right, B, Left, false),
            (F, Bottom, D, Top, false),
            (U, Left, L, Top, false),
            (U, Right, R, Top, true),
            (U, Top, B, Top, true),
            (L, Left, B, Right, false),
            (D, Left, L, Bottom, true),
            (D, Right, R, Bottom, false),
            (D, Bottom, B, Bottom, true),
        ])
    })
}

/// The cell and side abutting `side` of `cell` on a spherical n-mosaic.
pub fn neighbor(n: usize, cell: CellAddr, side: Side) -> (CellAddr, Side) {
    let CellAddr { face, row, col } = cell;
    let last = n - 1;
    match side {
        Side::Top if row > 0 => return (CellAddr::new(face, row - 1, col), Side::Bottom),
        Side::Bottom if row < last => return (CellAddr::new(face, row + 1, col), Side::Top),
        Side::Left if col > 0 => return (CellAddr::new(face, row, col - 1), Side::Right),
        Side::Right if col < last => return (CellAddr::new(face, row, col + 1), Side::Left),
        _ => {}
    }
    let along = if side.is_horizontal() { row } else { col };
    let g = glue_table().get(face, side);
    let i = if g.reversed { last - along } else { along };
    let target = match g.side {
        Side::Top => CellAddr::new(g.face, 0, i),
        Side::Bottom => CellAddr::new(g.face, last, i),
        Side::Left => CellAddr::new(g.face, i, 0),
        Side::Right => CellAddr::new(g.face, i, last),
    };
    (target, g.side)
}

/// Precomputed cell adjacency of the cube surface for one n, indexed by
/// linear cell index.
#[derive(Clone, Debug)]
pub struct Surface {
    pub n: usize,
    links: Vec<[(u32, Side); 4]>,
}

impl Surface {
    pub fn new(n: usize) -> Surface {
        assert!(n > 0);
        let links = (0..6 * n * n)
            .map(|i| {
                let cell = CellAddr::from_index(i, n);
                Side::ALL.map(|s| {
                    let (c, t) = neighbor(n, cell, s);
                    (c.index(n) as u32, t)
                })
            })
            .collect();
        Surface { n, links }
    }

    pub fn cells(&self) -> usize {
        self.links.len()
    }

    #[inline]
    pub fn link(&self, cell: usize, side: Side) -> (usize, Side) {
        let (c, s) = self.links[cell][side.index()];
        (c as usize, s)
    }
}

/// A tiling of the cube surface.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SphericalMosaic {
    n: usize,
    tiles: Vec<Tile>,
}

impl SphericalMosaic {
    pub fn blank(n: usize) -> SphericalMosaic {
        assert!(n > 0, "mosaic size must be positive");
        SphericalMosaic { n, tiles: vec![Tile::T0; 6 * n * n] }
    }

    /// Tiles in face order U,L,F,R,B,D, row-major within each face.
    pub fn from_tiles(n: usize, tiles: Vec<Tile>) -> Option<SphericalMosaic> {
        (n > 0 && tiles.len() == 6 * n * n).then_some(SphericalMosaic { n, tiles })
    }

    pub fn filled(n: usize, tile: Tile) -> SphericalMosaic {
        SphericalMosaic { n, tiles: vec![tile; 6 * n * n] }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    #[inline]
    pub fn tile(&self, cell: CellAddr) -> Tile {
        self.tiles[cell.index(self.n)]
    }

    #[inline]
    pub fn tile_at(&self, index: usize) -> Tile {
        self.tiles[index]
    }

    pub fn set(&mut self, cell: CellAddr, tile: Tile) {
        let i = cell.index(self.n);
        self.tiles[i] = tile;
    }

    pub fn with(mut self, cell: CellAddr, tile: Tile) -> SphericalMosaic {
        self.set(cell, tile);
        self
    }

    pub fn face_tiles(&self, face: FaceId) -> &[Tile] {
        let k = self.n * self.n;
        &self.tiles[face.index() * k..(face.index() + 1) * k]
    }

    pub fn cells(&self) -> impl Iterator<Item = CellAddr> + '_ {
        let n = self.n;
        (0..self.tiles.len()).map(move |i| CellAddr::from_index(i, n))
    }

    pub fn neighbor(&self, cell: CellAddr, side: Side) -> (CellAddr, Side) {
        neighbor(self.n, cell, side)
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    pub fn is_suitably_connected(&self) -> bool {
        let n = self.n;
        self.tiles.iter().enumerate().all(|(i, t)| {
            let cell = CellAddr::from_index(i, n);
            Side::ALL.into_iter().all(|s| {
                let (c, o) = neighbor(n, cell, s);
                t.has_connection(s) == self.tile(c).has_connection(o)
            })
        })
    }
}

impl fmt::Debug for SphericalMosaic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SphericalMosaic(n={}", self.n)?;
        for face in FaceId::ALL {
            write!(f, " {}:", face)?;
            for t in self.face_tiles(face) {
                write!(f, "{},", t.kind())?;
            }
        }
        write!(f, ")")
    }
}

/// A connection-point midpoint that meets a blank midpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub cell: CellAddr,
    pub side: Side,
    pub other_cell: CellAddr,
    pub other_side: Side,
    /// True when `cell`/`side` is the connection point and the other side is blank.
    pub dangling: bool,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (here, there) = if self.dangling { ("connection", "blank") } else { ("blank", "connection") };
        write!(
            f,
            "{} {} ({here}) meets {} {} ({there})",
            self.cell, self.side, self.other_cell, self.other_side
        )
    }
}

/// Every mismatched midpoint, reported from both sides of each bad edge.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub mismatches: Vec<Mismatch>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn validate(m: &SphericalMosaic) -> ValidationReport {
    let mut mismatches = Vec::new();
    for cell in m.cells() {
        let tile = m.tile(cell);
        for side in Side::ALL {
            let (other_cell, other_side) = m.neighbor(cell, side);
            let here = tile.has_connection(side);
            if here != m.tile(other_cell).has_connection(other_side) {
                mismatches.push(Mismatch { cell, side, other_cell, other_side, dangling: here });
            }
        }
    }
    ValidationReport { mismatches }
}

/// V − E + F of the cell complex obtained by gluing the six grids.
///
/// Vertices are counted by identifying cell corners across every side
/// pairing returned by [`neighbor`], so a wrong reversal flag shows up as a
/// wrong vertex count.
pub fn euler_characteristic(n: usize) -> i64 {
    let cells = 6 * n * n;
    // corner k of a cell is the end of side k when its boundary is walked
    // counterclockwise (Right upward, Top leftward, Left downward, Bottom rightward)
    let end = |cell: usize, s: Side| cell * 4 + s.index();
    let start = |cell: usize, s: Side| cell * 4 + s.rotate_cw(1).index();
    let mut corners = crate::util::UnionFind::new(cells * 4);
    let mut edges = 0;
    for i in 0..cells {
        let cell = CellAddr::from_index(i, n);
        for s in Side::ALL {
            let (other, t) = neighbor(n, cell, s);
            let j = other.index(n);
            if (i, s.index()) < (j, t.index()) {
                edges += 1;
            }
            corners.union(start(i, s), end(j, t));
            corners.union(end(i, s), start(j, t));
        }
    }
    corners.sets() as i64 - edges as i64 + cells as i64
}

/// The same position with every crossing switched.
pub fn mirror_mosaic(m: &SphericalMosaic) -> SphericalMosaic {
    SphericalMosaic { n: m.n, tiles: m.tiles.iter().map(|t| mirror_tile(*t)).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use FaceId::*;

    fn three_tile_unknot() -> SphericalMosaic {
        SphericalMosaic::blank(1)
            .with(CellAddr::new(U, 0, 0), Tile::T2)
            .with(CellAddr::new(F, 0, 0), Tile::T3)
            .with(CellAddr::new(R, 0, 0), Tile::T4)
    }

    #[test]
    fn glue_table_examples() {
        let g = glue_table();
        assert_eq!(g.get(F, Side::Top), Gluing { face: U, side: Side::Bottom, reversed: false });
        assert_eq!(g.get(U, Side::Left), Gluing { face: L, side: Side::Top, reversed: false });
        assert_eq!(g.get(U, Side::Top), Gluing { face: B, side: Side::Top, reversed: true });
    }

    #[test]
    fn glue_table_is_an_involution() {
        let g = glue_table();
        for (f, s, to) in g.entries() {
            assert_ne!(f, to.face);
            let back = g.get(to.face, to.side);
            assert_eq!((back.face, back.side, back.reversed), (f, s, to.reversed));
        }
    }

    #[test]
    fn neighbor_examples() {
        assert_eq!(neighbor(2, CellAddr::new(F, 0, 0), Side::Right), (CellAddr::new(F, 0, 1), Side::Left));
        assert_eq!(neighbor(2, CellAddr::new(F, 0, 0), Side::Top), (CellAddr::new(U, 1, 0), Side::Bottom));
        assert_eq!(neighbor(2, CellAddr::new(U, 0, 0), Side::Top), (CellAddr::new(B, 0, 1), Side::Top));
    }

    #[test]
    fn neighbor_is_a_fixpoint_free_involution() {
        for n in 1..=5 {
            let m = SphericalMosaic::blank(n);
            for cell in m.cells() {
                for side in Side::ALL {
                    let (c, s) = neighbor(n, cell, side);
                    assert_ne!(c, cell);
                    assert_eq!(neighbor(n, c, s), (cell, side));
                }
            }
        }
    }

    #[test]
    fn blank_mosaics_are_valid() {
        for n in 1..=4 {
            assert!(validate(&SphericalMosaic::blank(n)).is_valid());
        }
    }

    #[test]
    fn two_dangling_arcs_give_four_mismatches() {
        let m = SphericalMosaic::blank(1)
            .with(CellAddr::new(U, 0, 0), Tile::T2)
            .with(CellAddr::new(F, 0, 0), Tile::T3);
        let report = validate(&m);
        assert_eq!(report.mismatches.len(), 4);
        assert_eq!(report.mismatches.iter().filter(|x| x.dangling).count(), 2);
        assert!(!m.is_suitably_connected());
    }

    #[test]
    fn some_placement_of_three_arcs_closes_a_loop() {
        // scan every placement of T2, T3, T4 on three distinct faces
        let mut valid = Vec::new();
        for a in FaceId::ALL {
            for b in FaceId::ALL {
                for c in FaceId::ALL {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    let m = SphericalMosaic::blank(1)
                        .with(CellAddr::new(a, 0, 0), Tile::T2)
                        .with(CellAddr::new(b, 0, 0), Tile::T3)
                        .with(CellAddr::new(c, 0, 0), Tile::T4);
                    if validate(&m).is_valid() {
                        valid.push((a, b, c));
                    }
                }
            }
        }
        assert!(valid.contains(&(U, F, R)), "{valid:?}");
        assert!(three_tile_unknot().is_suitably_connected());
    }

    #[test]
    fn glued_surface_is_a_sphere() {
        for n in 1..=8 {
            assert_eq!(euler_characteristic(n), 2, "n={n}");
        }
    }

    #[test]
    fn mirror_is_an_involution() {
        let m = SphericalMosaic::filled(2, Tile::T9).with(CellAddr::new(D, 1, 0), Tile::T7);
        assert_eq!(mirror_mosaic(&mirror_mosaic(&m)), m);
        assert_eq!(mirror_mosaic(&SphericalMosaic::blank(2)), SphericalMosaic::blank(2));
        assert_eq!(mirror_mosaic(&m).tile(CellAddr::new(U, 0, 0)), Tile::T10);
    }

    #[test]
    fn surface_matches_neighbor() {
        let s = Surface::new(3);
        for i in 0..s.cells() {
            for side in Side::ALL {
                let (c, t) = s.link(i, side);
                let (ca, ta) = neighbor(3, CellAddr::from_index(i, 3), side);
                assert_eq!((c, t), (ca.index(3), ta));
            }
        }
    }
}
