use std::fmt;

use crate::sphere::{CellAddr, SphericalMosaic};
use crate::tiles::{Role, Side};
use crate::trace;

use super::KnotIdError;

/// Planar diagram code. Each crossing lists its four arc labels
/// counterclockwise, seen from outside the sphere, starting at the incoming
/// under-strand. Labels run 1..=2c consecutively along the oriented knot.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PDCode {
    pub crossings: Vec<[u32; 4]>,
}

impl PDCode {
    pub fn new(crossings: Vec<[u32; 4]>) -> PDCode {
        PDCode { crossings }
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Every label appears exactly twice and labels are 1..=2c.
    pub fn is_well_formed(&self) -> bool {
        let arcs = 2 * self.crossings.len();
        let mut count = vec![0u8; arcs + 1];
        for x in self.crossings.iter().flatten() {
            let x = *x as usize;
            if x == 0 || x > arcs {
                return false;
            }
            count[x] += 1;
        }
        count[1..].iter().all(|c| *c == 2)
    }

    fn succ(&self, label: u32) -> u32 {
        label % (2 * self.crossings.len() as u32) + 1
    }

    /// +1 when the over-strand runs from position 3 to position 1.
    pub fn sign(&self, k: usize) -> i32 {
        let [a, b, _, d] = self.crossings[k];
        if self.crossings.len() == 1 {
            // labels 1 and 2 succeed each other both ways; arc `a` starts
            // where it appears the second time
            return if b == a { 1 } else { -1 };
        }
        if b == self.succ(d) {
            1
        } else {
            -1
        }
    }

    pub fn mirror(&self) -> PDCode {
        // switching a crossing moves the incoming under-strand to what was
        // the incoming over-strand, keeping counterclockwise order
        let crossings = (0..self.len())
            .map(|k| {
                let [a, b, c, d] = self.crossings[k];
                if self.sign(k) > 0 {
                    [d, a, b, c]
                } else {
                    [b, c, d, a]
                }
            })
            .collect();
        PDCode { crossings }
    }
}

impl fmt::Display for PDCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, [a, b, c, d]) in self.crossings.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({a},{b},{c},{d})")?;
        }
        f.write_str("]")
    }
}

pub fn writhe(pd: &PDCode) -> i32 {
    (0..pd.len()).map(|k| pd.sign(k)).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pass {
    Over,
    Under,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaussVisit {
    pub crossing: usize,
    pub pass: Pass,
    pub sign: i32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GaussCode {
    pub visits: Vec<GaussVisit>,
}

impl GaussCode {
    /// Builds a code from tokens such as `O1 U2 O3` (signs taken as +1).
    pub fn parse(text: &str) -> Option<GaussCode> {
        let visits = text
            .split_whitespace()
            .map(|tok| {
                let pass = match tok.chars().next()? {
                    'O' | 'o' => Pass::Over,
                    'U' | 'u' => Pass::Under,
                    _ => return None,
                };
                let crossing = tok[1..].parse().ok()?;
                Some(GaussVisit { crossing, pass, sign: 1 })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(GaussCode { visits })
    }

    pub fn is_well_formed(&self) -> bool {
        let mut seen: std::collections::HashMap<usize, (usize, usize)> = Default::default();
        for v in &self.visits {
            let e = seen.entry(v.crossing).or_default();
            match v.pass {
                Pass::Over => e.0 += 1,
                Pass::Under => e.1 += 1,
            }
        }
        seen.values().all(|&c| c == (1, 1))
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.visits.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let p = if v.pass == Pass::Over { 'O' } else { 'U' };
            let s = if v.sign > 0 { '+' } else { '-' };
            write!(f, "{p}{}{s}", v.crossing)?;
        }
        Ok(())
    }
}

/// Over and under strictly alternate along the cyclic sequence.
pub fn is_alternating_diagram(g: &GaussCode) -> bool {
    let v = &g.visits;
    (0..v.len()).all(|i| v[i].pass != v[(i + 1) % v.len()].pass)
}

/// Both codes of a knot mosaic, read off one traversal of its strand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramCodes {
    pub pd: PDCode,
    pub gauss: GaussCode,
    /// Crossing cells in PD order.
    pub cells: Vec<CellAddr>,
}

pub fn extract_pd(m: &SphericalMosaic) -> Result<PDCode, KnotIdError> {
    extract_codes(m).map(|c| c.pd)
}

pub fn extract_gauss(m: &SphericalMosaic) -> Result<GaussCode, KnotIdError> {
    extract_codes(m).map(|c| c.gauss)
}

pub fn extract_codes(m: &SphericalMosaic) -> Result<DiagramCodes, KnotIdError> {
    if !m.is_suitably_connected() {
        return Err(KnotIdError::NotAKnot(0));
    }
    let comps = trace::components(m).map_err(|_| KnotIdError::NotAKnot(0))?;
    if comps.len() != 1 {
        return Err(KnotIdError::NotAKnot(comps.len()));
    }
    Ok(codes_of_component(m.n(), &comps[0]))
}

fn codes_of_component(n: usize, comp: &trace::Component) -> DiagramCodes {
    // crossing passages in traversal order
    let passes: Vec<&trace::StrandStep> = comp.steps.iter().filter(|s| s.role != Role::Flat).collect();
    let arcs = passes.len() as u32;
    let mut order: Vec<CellAddr> = Vec::new();
    // per crossing: (entry, exit, in-label, out-label) of the under and over passage
    type Passage = (Side, Side, u32, u32);
    let mut under: Vec<Option<Passage>> = Vec::new();
    let mut over: Vec<Option<Passage>> = Vec::new();
    let mut slot_of = std::collections::HashMap::new();
    let mut visits = Vec::with_capacity(passes.len());
    for (j, step) in passes.iter().enumerate() {
        let slot = *slot_of.entry(step.cell.index(n)).or_insert_with(|| {
            order.push(step.cell);
            under.push(None);
            over.push(None);
            order.len() - 1
        });
        let label_in = j as u32 + 1;
        let label_out = (j as u32 + 1) % arcs + 1;
        let p = (step.entry, step.exit, label_in, label_out);
        let pass = if step.role == Role::Under {
            under[slot] = Some(p);
            Pass::Under
        } else {
            over[slot] = Some(p);
            Pass::Over
        };
        visits.push(GaussVisit { crossing: slot, pass, sign: 0 });
    }
    let crossings: Vec<[u32; 4]> = (0..order.len())
        .map(|k| {
            let u = under[k].expect("crossing visited twice");
            let o = over[k].expect("crossing visited twice");
            let label = |side: Side| {
                if side == u.0 {
                    u.2
                } else if side == u.1 {
                    u.3
                } else if side == o.0 {
                    o.2
                } else {
                    o.3
                }
            };
            let s = u.0;
            [label(s), label(s.rotate_ccw(1)), label(s.rotate_ccw(2)), label(s.rotate_ccw(3))]
        })
        .collect();
    let pd = PDCode { crossings };
    for v in &mut visits {
        v.sign = pd.sign(v.crossing);
    }
    DiagramCodes { pd, gauss: GaussCode { visits }, cells: order }
}
