use std::sync::OnceLock;

use thiserror::Error;

use super::bracket::{coloring_determinant, jones};
use super::pd::PDCode;
use super::poly::LaurentPoly;

const BUNDLED: &str = include_str!("../../data/knot_table.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub name: String,
    pub crossings: usize,
    pub pd: PDCode,
    pub jones: LaurentPoly,
    pub determinant: u64,
}

impl TableEntry {
    pub fn is_amphichiral_by_jones(&self) -> bool {
        self.jones == self.jones.mirror()
    }
}

#[derive(Clone, Debug)]
pub struct KnotTable {
    entries: Vec<TableEntry>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{a} and {b} have the same Jones polynomial up to mirror")]
    Indistinct { a: String, b: String },
}

fn parse_pd(text: &str) -> Option<PDCode> {
    let inner = text.trim().strip_prefix('[')?.strip_suffix(']')?.trim();
    if inner.is_empty() {
        return Some(PDCode::default());
    }
    let body = inner.strip_prefix('(')?.strip_suffix(')')?;
    body.split("),")
        .map(|t| {
            let nums: Vec<u32> =
                t.trim().trim_start_matches('(').split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()?;
            <[u32; 4]>::try_from(nums).ok()
        })
        .collect::<Option<Vec<_>>>()
        .map(PDCode::new)
}

impl KnotTable {
    pub fn bundled() -> &'static KnotTable {
        static TABLE: OnceLock<KnotTable> = OnceLock::new();
        TABLE.get_or_init(|| KnotTable::parse(BUNDLED).expect("bundled knot table is consistent"))
    }

    /// Parses `name;crossings;pd=[...]` lines, computes each Jones polynomial
    /// and checks that no two entries agree up to mirror image.
    pub fn parse(text: &str) -> Result<KnotTable, TableError> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: &str| TableError::Syntax { line: i + 1, message: message.to_string() };
            let fields: Vec<&str> = line.split(';').collect();
            let [name, crossings, pd] = fields[..] else {
                return Err(err("expected three ';'-separated fields"));
            };
            let crossings: usize = crossings.trim().parse().map_err(|_| err("bad crossing number"))?;
            let pd = pd.trim().strip_prefix("pd=").and_then(parse_pd).ok_or_else(|| err("bad pd code"))?;
            if pd.len() != crossings || !pd.is_well_formed() {
                return Err(err("pd code does not match its crossing number"));
            }
            let jones = jones(&pd, usize::MAX).map_err(|e| err(&e.to_string()))?;
            let determinant = coloring_determinant(&pd);
            entries.push(TableEntry { name: name.trim().to_string(), crossings, pd, jones, determinant });
        }
        for (i, a) in entries.iter().enumerate() {
            for b in &entries[i + 1..] {
                if a.jones == b.jones || a.jones == b.jones.mirror() {
                    return Err(TableError::Indistinct { a: a.name.clone(), b: b.name.clone() });
                }
            }
        }
        Ok(KnotTable { entries })
    }

    pub fn entries(&self) -> &[TableEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&TableEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// The entry with this Jones polynomial, and whether it matched through
    /// the mirror map.
    pub fn lookup(&self, jones: &LaurentPoly) -> Option<(&TableEntry, bool)> {
        self.entries.iter().find_map(|e| {
            if e.jones == *jones {
                Some((e, false))
            } else if e.jones.mirror() == *jones {
                Some((e, true))
            } else {
                None
            }
        })
    }
}
