//! The eleven mosaic tiles.
//!
//! Sides are named in the local frame of the face a tile sits on, with the
//! face drawn as seen from outside the cube. Connection points:
//!
//! | tile | sides          | strands                              |
//! |------|----------------|--------------------------------------|
//! | T0   | none           |                                      |
//! | T1   | Left, Bottom   | flat                                 |
//! | T2   | Bottom, Right  | flat                                 |
//! | T3   | Right, Top     | flat                                 |
//! | T4   | Top, Left      | flat                                 |
//! | T5   | Left, Right    | flat                                 |
//! | T6   | Top, Bottom    | flat                                 |
//! | T7   | all four       | {Top,Left} and {Bottom,Right}, flat  |
//! | T8   | all four       | {Top,Right} and {Bottom,Left}, flat  |
//! | T9   | all four       | {Left,Right} over, {Top,Bottom} under|
//! | T10  | all four       | {Top,Bottom} over, {Left,Right} under|

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Top,
    Right,
    Bottom,
    Left,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Top, Side::Right, Side::Bottom, Side::Left];

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub const fn from_index(i: usize) -> Side {
        Side::ALL[i & 3]
    }

    #[inline]
    pub const fn bit(self) -> u8 {
        1 << (self as u8)
    }

    #[inline]
    pub const fn opposite(self) -> Side {
        Side::from_index(self.index() + 2)
    }

    /// Counterclockwise quarter turns: Top -> Left -> Bottom -> Right -> Top.
    #[inline]
    pub fn rotate_ccw(self, quarter_turns: i32) -> Side {
        let k = quarter_turns.rem_euclid(4) as usize;
        Side::from_index(self.index() + 4 - k)
    }

    /// Clockwise quarter turns: Top -> Right -> Bottom -> Left -> Top.
    #[inline]
    pub fn rotate_cw(self, quarter_turns: i32) -> Side {
        self.rotate_ccw(-quarter_turns)
    }

    pub fn is_horizontal(self) -> bool {
        matches!(self, Side::Left | Side::Right)
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Top => "Top",
            Side::Right => "Right",
            Side::Bottom => "Bottom",
            Side::Left => "Left",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A set of sides, stored as a 4-bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SideSet(pub u8);

impl SideSet {
    pub const EMPTY: SideSet = SideSet(0);
    pub const ALL: SideSet = SideSet(0b1111);

    pub fn of(sides: &[Side]) -> SideSet {
        SideSet(sides.iter().fold(0, |m, s| m | s.bit()))
    }

    #[inline]
    pub fn contains(self, side: Side) -> bool {
        self.0 & side.bit() != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Side> {
        Side::ALL.into_iter().filter(move |s| self.contains(*s))
    }

    pub fn rotate_ccw(self, quarter_turns: i32) -> SideSet {
        SideSet(self.iter().fold(0, |m, s| m | s.rotate_ccw(quarter_turns).bit()))
    }
}

/// Over/under role of a strand inside a tile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Flat,
    Over,
    Under,
}

/// One strand drawn on a tile, joining two connection points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StrandPair {
    pub a: Side,
    pub b: Side,
    pub role: Role,
}

impl StrandPair {
    const fn flat(a: Side, b: Side) -> StrandPair {
        StrandPair { a, b, role: Role::Flat }
    }

    /// The other end of the strand, if `side` is one of its ends.
    pub fn other(&self, side: Side) -> Option<Side> {
        if side == self.a {
            Some(self.b)
        } else if side == self.b {
            Some(self.a)
        } else {
            None
        }
    }

    pub fn touches(&self, side: Side) -> bool {
        self.a == side || self.b == side
    }

    fn same_ends(&self, other: &StrandPair) -> bool {
        (self.a == other.a && self.b == other.b) || (self.a == other.b && self.b == other.a)
    }
}

/// Strands of a tile. Pairs partition the tile's connection points.
pub type StrandPairing = &'static [StrandPair];

use Side::{Bottom as B, Left as L, Right as R, Top as T};

const PAIRS: [&[StrandPair]; 11] = [
    &[],
    &[StrandPair::flat(L, B)],
    &[StrandPair::flat(B, R)],
    &[StrandPair::flat(R, T)],
    &[StrandPair::flat(T, L)],
    &[StrandPair::flat(L, R)],
    &[StrandPair::flat(T, B)],
    &[StrandPair::flat(T, L), StrandPair::flat(B, R)],
    &[StrandPair::flat(T, R), StrandPair::flat(B, L)],
    &[
        StrandPair { a: L, b: R, role: Role::Over },
        StrandPair { a: T, b: B, role: Role::Under },
    ],
    &[
        StrandPair { a: T, b: B, role: Role::Over },
        StrandPair { a: L, b: R, role: Role::Under },
    ],
];

const fn mask(sides: &[Side]) -> u8 {
    let mut m = 0;
    let mut i = 0;
    while i < sides.len() {
        m |= sides[i].bit();
        i += 1;
    }
    m
}

const MASKS: [u8; 11] = [
    0,
    mask(&[L, B]),
    mask(&[B, R]),
    mask(&[R, T]),
    mask(&[T, L]),
    mask(&[L, R]),
    mask(&[T, B]),
    0b1111,
    0b1111,
    0b1111,
    0b1111,
];

// image of each tile under one counterclockwise quarter turn
const ROTATE_CCW: [u8; 11] = [0, 2, 3, 4, 1, 6, 5, 8, 7, 10, 9];
const MIRROR: [u8; 11] = [0, 1, 2, 3, 4, 5, 6, 7, 8, 10, 9];

/// One of the eleven canonical mosaic tiles, `T0..=T10`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Tile(u8);

impl Tile {
    pub const T0: Tile = Tile(0);
    pub const T1: Tile = Tile(1);
    pub const T2: Tile = Tile(2);
    pub const T3: Tile = Tile(3);
    pub const T4: Tile = Tile(4);
    pub const T5: Tile = Tile(5);
    pub const T6: Tile = Tile(6);
    pub const T7: Tile = Tile(7);
    pub const T8: Tile = Tile(8);
    pub const T9: Tile = Tile(9);
    pub const T10: Tile = Tile(10);

    pub const COUNT: usize = 11;

    pub fn all() -> impl Iterator<Item = Tile> + Clone {
        (0..11u8).map(Tile)
    }

    pub const fn new(kind: u8) -> Option<Tile> {
        if kind <= 10 {
            Some(Tile(kind))
        } else {
            None
        }
    }

    #[inline]
    pub const fn kind(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn mask(self) -> u8 {
        MASKS[self.0 as usize]
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_crossing(self) -> bool {
        self.0 == 9 || self.0 == 10
    }

    #[inline]
    pub fn has_connection(self, side: Side) -> bool {
        self.mask() & side.bit() != 0
    }

    /// Line and crossing tiles, the ones a mosaic belt may run through.
    pub fn is_belt_tile(self) -> bool {
        matches!(self.0, 5 | 6 | 9 | 10)
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.0)
    }
}

pub fn connection_points(tile: Tile) -> SideSet {
    SideSet(tile.mask())
}

pub fn strand_pairs(tile: Tile) -> StrandPairing {
    PAIRS[tile.0 as usize]
}

/// The strand leaving `tile` through `side`, if any.
pub fn strand_through(tile: Tile, side: Side) -> Option<(usize, StrandPair)> {
    strand_pairs(tile)
        .iter()
        .copied()
        .enumerate()
        .find(|(_, p)| p.touches(side))
}

/// Rotates the drawn curve counterclockwise by `quarter_turns` quarter turns.
pub fn rotate_tile(tile: Tile, quarter_turns: i32) -> Tile {
    let mut k = tile.0;
    for _ in 0..quarter_turns.rem_euclid(4) {
        k = ROTATE_CCW[k as usize];
    }
    Tile(k)
}

/// Switches over and under at crossings.
pub fn mirror_tile(tile: Tile) -> Tile {
    Tile(MIRROR[tile.0 as usize])
}

/// Looks up the tile whose strands are exactly `pairs` (in any order).
pub fn tile_from_pairs(pairs: &[StrandPair]) -> Option<Tile> {
    Tile::all().find(|t| {
        let own = strand_pairs(*t);
        own.len() == pairs.len()
            && pairs
                .iter()
                .all(|p| own.iter().any(|q| q.role == p.role && q.same_ends(p)))
    })
}
