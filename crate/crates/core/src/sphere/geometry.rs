//! Embedding of the net in R³ and the rotation group of the cube.
//!
//! Coordinates are doubled so that every cell center and edge midpoint is an
//! integer point of the cube `[0, 2n]³`.

use super::{CellAddr, FaceId, SphericalMosaic};
use crate::tiles::{rotate_tile, Side};

type V3 = [i64; 3];

fn dot(a: V3, b: V3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: V3, b: V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn add(a: V3, b: V3) -> V3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale(a: V3, k: i64) -> V3 {
    [a[0] * k, a[1] * k, a[2] * k]
}

/// Placement of one face of the net on the cube `[0,1]³` (scaled by n).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceFrame {
    /// Net top-left corner, in units of n.
    pub origin: V3,
    /// Direction of increasing column.
    pub right: V3,
    /// Direction of increasing row.
    pub down: V3,
}

impl FaceFrame {
    pub fn of(face: FaceId) -> FaceFrame {
        let (origin, right, down) = match face {
            FaceId::F => ([0, 0, 1], [1, 0, 0], [0, 0, -1]),
            FaceId::R => ([1, 0, 1], [0, 1, 0], [0, 0, -1]),
            FaceId::B => ([1, 1, 1], [-1, 0, 0], [0, 0, -1]),
            FaceId::L => ([0, 1, 1], [0, -1, 0], [0, 0, -1]),
            FaceId::U => ([0, 1, 1], [1, 0, 0], [0, -1, 0]),
            FaceId::D => ([0, 0, 0], [1, 0, 0], [0, 1, 0]),
        };
        FaceFrame { origin, right, down }
    }

    /// Outward normal; right × up points out of the cube.
    pub fn normal(&self) -> V3 {
        cross(self.down, self.right)
    }

    pub fn side_direction(&self, side: Side) -> V3 {
        match side {
            Side::Top => scale(self.down, -1),
            Side::Bottom => self.down,
            Side::Left => scale(self.right, -1),
            Side::Right => self.right,
        }
    }

    fn side_from_direction(&self, dir: V3) -> Side {
        Side::ALL
            .into_iter()
            .find(|s| self.side_direction(*s) == dir)
            .expect("direction lies in the face plane")
    }

    /// Doubled coordinates of a cell center.
    pub fn cell_center(&self, n: usize, row: usize, col: usize) -> V3 {
        let n = n as i64;
        let p = scale(self.origin, 2 * n);
        let p = add(p, scale(self.right, 2 * col as i64 + 1));
        add(p, scale(self.down, 2 * row as i64 + 1))
    }

    /// Inverse of [`cell_center`](Self::cell_center) for a point on this face.
    fn locate(&self, n: usize, p: V3) -> (usize, usize) {
        let q = add(p, scale(self.origin, -2 * n as i64));
        let col = (dot(q, self.right) - 1) / 2;
        let row = (dot(q, self.down) - 1) / 2;
        (row as usize, col as usize)
    }
}

fn face_with_normal(normal: V3) -> FaceId {
    FaceId::ALL
        .into_iter()
        .find(|f| FaceFrame::of(*f).normal() == normal)
        .expect("axis vector is a face normal")
}

/// An orientation-preserving symmetry of the cube, as a signed permutation
/// matrix with determinant +1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeRotation {
    rows: [[i8; 3]; 3],
}

impl CubeRotation {
    pub const IDENTITY: CubeRotation = CubeRotation { rows: [[1, 0, 0], [0, 1, 0], [0, 0, 1]] };

    /// All 24 rotations, identity first, in a fixed order.
    pub fn all() -> Vec<CubeRotation> {
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut out = Vec::with_capacity(24);
        for perm in PERMS {
            for signs in 0..8u8 {
                let mut rows = [[0i8; 3]; 3];
                for (i, &j) in perm.iter().enumerate() {
                    rows[i][j] = if signs & (1 << i) != 0 { -1 } else { 1 };
                }
                let g = CubeRotation { rows };
                if g.determinant() == 1 {
                    out.push(g);
                }
            }
        }
        debug_assert_eq!(out.len(), 24);
        out
    }

    fn determinant(&self) -> i64 {
        let m = self.rows.map(|r| r.map(i64::from));
        dot(m[0], cross(m[1], m[2]))
    }

    pub fn apply(&self, v: V3) -> V3 {
        self.rows.map(|r| dot(r.map(i64::from), v))
    }

    pub fn compose(&self, other: &CubeRotation) -> CubeRotation {
        // (self ∘ other)(v) = self(other(v))
        let mut rows = [[0i8; 3]; 3];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..3).map(|k| self.rows[i][k] * other.rows[k][j]).sum();
            }
        }
        CubeRotation { rows }
    }

    pub fn order(&self) -> usize {
        let mut g = *self;
        let mut k = 1;
        while g != CubeRotation::IDENTITY {
            g = g.compose(self);
            k += 1;
        }
        k
    }

    /// Image of a cell: destination cell and the counterclockwise quarter
    /// turns its tile undergoes in the face frames.
    pub fn map_cell(&self, n: usize, cell: CellAddr) -> (CellAddr, i32) {
        let frame = FaceFrame::of(cell.face);
        let center = frame.cell_center(n, cell.row, cell.col);
        let c = [n as i64; 3];
        let p = add(self.apply(add(center, scale(c, -1))), c);
        let face = face_with_normal(self.apply(frame.normal()));
        let target = FaceFrame::of(face);
        let (row, col) = target.locate(n, p);
        let top = target.side_from_direction(self.apply(frame.side_direction(Side::Top)));
        let turns = (0..4).find(|k| Side::Top.rotate_ccw(*k) == top).expect("rotation of a side");
        (CellAddr::new(face, row, col), turns)
    }
}

/// Applies `g` so the diagram on the sphere is the rotated original.
pub fn rotate_mosaic(m: &SphericalMosaic, g: &CubeRotation) -> SphericalMosaic {
    let n = m.n();
    let mut out = SphericalMosaic::blank(n);
    for cell in m.cells() {
        let (to, turns) = g.map_cell(n, cell);
        out.set(to, rotate_tile(m.tile(cell), turns));
    }
    out
}

/// Cell permutations of all 24 rotations for one n, for repeated use.
#[derive(Clone, Debug)]
pub struct RotationTable {
    pub n: usize,
    pub rotations: Vec<CubeRotation>,
    maps: Vec<Vec<(u32, u8)>>,
}

impl RotationTable {
    pub fn new(n: usize) -> RotationTable {
        let rotations = CubeRotation::all();
        let maps = rotations
            .iter()
            .map(|g| {
                (0..6 * n * n)
                    .map(|i| {
                        let (to, k) = g.map_cell(n, CellAddr::from_index(i, n));
                        (to.index(n) as u32, k as u8)
                    })
                    .collect()
            })
            .collect();
        RotationTable { n, rotations, maps }
    }

    pub fn apply(&self, which: usize, m: &SphericalMosaic) -> SphericalMosaic {
        let mut tiles = vec![crate::tiles::Tile::T0; m.tiles().len()];
        for (i, &(to, k)) in self.maps[which].iter().enumerate() {
            tiles[to as usize] = rotate_tile(m.tile_at(i), k as i32);
        }
        SphericalMosaic::from_tiles(self.n, tiles).expect("same size")
    }

    /// Writes the tiles of the `which`-th image of `tiles` into `out`.
    pub fn image_into(&self, which: usize, tiles: &[crate::tiles::Tile], out: &mut [crate::tiles::Tile]) {
        for (i, &(to, k)) in self.maps[which].iter().enumerate() {
            out[to as usize] = rotate_tile(tiles[i], k as i32);
        }
    }

    pub fn images(&self, m: &SphericalMosaic) -> impl Iterator<Item = SphericalMosaic> + '_ {
        let m = m.clone();
        (0..self.rotations.len()).map(move |i| self.apply(i, &m))
    }
}
