//! Diagram codes, polynomial invariants and knot classification.

mod bracket;
mod pd;
mod poly;
mod table;

use std::fmt;

use thiserror::Error;

pub use bracket::{
    coloring_determinant, determinant, jones, jones_from_bracket, kauffman_bracket, naive_bracket,
    DEFAULT_CROSSING_LIMIT,
};
pub use pd::{
    extract_codes, extract_gauss, extract_pd, is_alternating_diagram, writhe, DiagramCodes, GaussCode, GaussVisit,
    PDCode, Pass,
};
pub use poly::LaurentPoly;
pub use table::{KnotTable, TableEntry, TableError};

use crate::sphere::SphericalMosaic;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnotIdError {
    #[error("not a knot mosaic ({0} components)")]
    NotAKnot(usize),
    #[error("{crossings} crossings exceed the limit of {limit}")]
    TooManyCrossings { crossings: usize, limit: usize },
    #[error("Jones polynomial has a non-integer exponent")]
    NonIntegerExponent,
    #[error("determinant {coloring} from the coloring matrix disagrees with {jones} from the Jones polynomial")]
    DeterminantMismatch { coloring: u64, jones: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chirality {
    AsTabled,
    Mirror,
    /// The Jones polynomial cannot tell the knot from its mirror image.
    Amphichiral,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KnotId {
    pub name: String,
    pub chirality: Chirality,
}

impl KnotId {
    pub fn unknot() -> KnotId {
        KnotId { name: "0_1".into(), chirality: Chirality::Amphichiral }
    }

    pub fn unknown() -> KnotId {
        KnotId { name: "unknown".into(), chirality: Chirality::AsTabled }
    }

    pub fn is_unknown(&self) -> bool {
        self.name == "unknown"
    }

    pub fn is_mirror(&self) -> bool {
        self.chirality == Chirality::Mirror
    }

    pub fn mirrored(&self) -> KnotId {
        let chirality = match self.chirality {
            Chirality::AsTabled => Chirality::Mirror,
            Chirality::Mirror => Chirality::AsTabled,
            Chirality::Amphichiral => Chirality::Amphichiral,
        };
        KnotId { name: self.name.clone(), chirality }
    }
}

impl fmt::Display for KnotId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if self.is_mirror() {
            f.write_str(" mirror")?;
        }
        Ok(())
    }
}

/// Everything classification learns about a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub knot: KnotId,
    pub jones: LaurentPoly,
    pub determinant: u64,
    pub crossings: usize,
}

pub fn classify(m: &SphericalMosaic, table: &KnotTable) -> Result<KnotId, KnotIdError> {
    classify_with_limit(m, table, DEFAULT_CROSSING_LIMIT).map(|c| c.knot)
}

pub fn classify_with_limit(
    m: &SphericalMosaic,
    table: &KnotTable,
    limit: usize,
) -> Result<Classification, KnotIdError> {
    classify_pd(&extract_pd(m)?, table, limit)
}

pub fn classify_pd(pd: &PDCode, table: &KnotTable, limit: usize) -> Result<Classification, KnotIdError> {
    let jones = jones(pd, limit)?;
    let determinant = jones.eval(-1).expect("integer exponents").unsigned_abs();
    let coloring = coloring_determinant(pd);
    if coloring != determinant {
        return Err(KnotIdError::DeterminantMismatch { coloring, jones: determinant });
    }
    let knot = if jones == LaurentPoly::one() {
        KnotId::unknot()
    } else {
        match table.lookup(&jones) {
            Some((entry, mirrored)) => {
                let chirality = if entry.is_amphichiral_by_jones() {
                    Chirality::Amphichiral
                } else if mirrored {
                    Chirality::Mirror
                } else {
                    Chirality::AsTabled
                };
                KnotId { name: entry.name.clone(), chirality }
            }
            None => KnotId::unknown(),
        }
    };
    Ok(Classification { knot, jones, determinant, crossings: pd.len() })
}
