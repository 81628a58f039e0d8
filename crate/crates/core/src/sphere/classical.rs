use std::fmt;

use rand::Rng;

use crate::tiles::{rotate_tile, Side, Tile};

/// A planar n×n mosaic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClassicalMosaic {
    n: usize,
    grid: Vec<Tile>,
}

/// A connection point that meets a blank midpoint or the outer boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassicalMismatch {
    pub row: usize,
    pub col: usize,
    pub side: Side,
    pub on_boundary: bool,
}

impl ClassicalMosaic {
    pub fn blank(n: usize) -> ClassicalMosaic {
        assert!(n > 0);
        ClassicalMosaic { n, grid: vec![Tile::T0; n * n] }
    }

    pub fn from_rows(rows: &[Vec<Tile>]) -> Option<ClassicalMosaic> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(ClassicalMosaic { n, grid: rows.concat() })
    }

    /// Convenience constructor from tile numbers.
    pub fn from_kinds(rows: &[&[u8]]) -> Option<ClassicalMosaic> {
        let rows: Option<Vec<Vec<Tile>>> =
            rows.iter().map(|r| r.iter().map(|k| Tile::new(*k)).collect()).collect();
        ClassicalMosaic::from_rows(&rows?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Tile {
        self.grid[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, tile: Tile) {
        self.grid[row * self.n + col] = tile;
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.grid
    }

    pub fn non_empty_tiles(&self) -> usize {
        self.grid.iter().filter(|t| !t.is_empty()).count()
    }

    /// Every connection point that has no partner, boundary included.
    pub fn mismatches(&self) -> Vec<ClassicalMismatch> {
        let n = self.n;
        let mut out = Vec::new();
        for row in 0..n {
            for col in 0..n {
                let t = self.get(row, col);
                for side in Side::ALL {
                    let other = match side {
                        Side::Top => row.checked_sub(1).map(|r| (r, col)),
                        Side::Bottom => (row + 1 < n).then_some((row + 1, col)),
                        Side::Left => col.checked_sub(1).map(|c| (row, c)),
                        Side::Right => (col + 1 < n).then_some((row, col + 1)),
                    };
                    match other {
                        None if t.has_connection(side) => {
                            out.push(ClassicalMismatch { row, col, side, on_boundary: true })
                        }
                        Some((r, c)) if t.has_connection(side) != self.get(r, c).has_connection(side.opposite()) => {
                            out.push(ClassicalMismatch { row, col, side, on_boundary: false })
                        }
                        _ => {}
                    }
                }
            }
        }
        out
    }

    pub fn is_suitably_connected(&self) -> bool {
        self.mismatches().is_empty()
    }

    /// The picture turned counterclockwise by `quarter_turns` quarter turns.
    pub fn rotated(&self, quarter_turns: i32) -> ClassicalMosaic {
        let n = self.n;
        let mut out = self.clone();
        for _ in 0..quarter_turns.rem_euclid(4) {
            let src = out.clone();
            for r in 0..n {
                for c in 0..n {
                    out.set(n - 1 - c, r, rotate_tile(src.get(r, c), 1));
                }
            }
        }
        out
    }

    /// Surrounds the mosaic with `width` rings of blank tiles.
    pub fn padded(&self, width: usize) -> ClassicalMosaic {
        let m = self.n + 2 * width;
        let mut out = ClassicalMosaic::blank(m);
        for r in 0..self.n {
            for c in 0..self.n {
                out.set(r + width, c + width, self.get(r, c));
            }
        }
        out
    }

    /// Adds one blank row at the bottom and one blank column on the left.
    pub fn padded_bottom_left(&self) -> ClassicalMosaic {
        let mut out = ClassicalMosaic::blank(self.n + 1);
        for r in 0..self.n {
            for c in 0..self.n {
                out.set(r, c + 1, self.get(r, c));
            }
        }
        out
    }
}

impl ClassicalMosaic {
    /// A random suitably connected mosaic with no connection points on the
    /// outer boundary, drawn by row-major sampling with restarts.
    pub fn random(n: usize, rng: &mut impl Rng) -> ClassicalMosaic {
        'restart: loop {
            let mut m = ClassicalMosaic::blank(n);
            for r in 0..n {
                for c in 0..n {
                    let top = r > 0 && m.get(r - 1, c).has_connection(Side::Bottom);
                    let left = c > 0 && m.get(r, c - 1).has_connection(Side::Right);
                    let options: Vec<Tile> = Tile::all()
                        .filter(|t| t.has_connection(Side::Top) == top && t.has_connection(Side::Left) == left)
                        .filter(|t| c + 1 < n || !t.has_connection(Side::Right))
                        .filter(|t| r + 1 < n || !t.has_connection(Side::Bottom))
                        .collect();
                    if options.is_empty() {
                        continue 'restart;
                    }
                    m.set(r, c, options[rng.gen_range(0..options.len())]);
                }
            }
            return m;
        }
    }
}

impl fmt::Debug for ClassicalMosaic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassicalMosaic[")?;
        for r in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|c| self.get(r, c).kind().to_string()).collect();
            write!(f, "[{}]", row.join(","))?;
        }
        write!(f, "]")
    }
}
