//! Exhaustive and randomized search over spherical n-mosaics.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::knotid::{
    classify_pd, coloring_determinant, extract_pd, jones, KnotId, KnotTable, LaurentPoly, DEFAULT_CROSSING_LIMIT,
};
use crate::sphere::{FaceId, RotationTable, SphericalMosaic, Surface};
use crate::tiles::{Side, Tile};
use crate::trace::{component_count, stats_unchecked, MosaicStats};
use crate::transforms::max_crossings;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("inconsistent constraints: {0}")]
    InvalidConstraints(String),
}

pub const ALL_FACES: u8 = 0b11_1111;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConstraints {
    pub n: usize,
    pub max_tiles: Option<usize>,
    pub min_crossings: Option<usize>,
    pub max_crossings: Option<usize>,
    /// Bit `f.index()` set when face `f` may hold non-empty tiles.
    pub face_mask: u8,
    pub require_knot: bool,
    /// Placement limit; exceeding it aborts with [`SearchError::BudgetExceeded`].
    pub node_budget: Option<u64>,
}

impl SearchConstraints {
    pub fn new(n: usize) -> SearchConstraints {
        SearchConstraints {
            n,
            max_tiles: None,
            min_crossings: None,
            max_crossings: None,
            face_mask: ALL_FACES,
            require_knot: false,
            node_budget: None,
        }
    }

    pub fn knots(n: usize) -> SearchConstraints {
        SearchConstraints { require_knot: true, ..SearchConstraints::new(n) }
    }

    pub fn with_faces(mut self, faces: &[FaceId]) -> SearchConstraints {
        self.face_mask = faces.iter().fold(0, |m, f| m | 1 << f.index());
        self
    }

    fn check(&self) -> Result<(), SearchError> {
        let cells = 6 * self.n * self.n;
        let bad = |m: &str| Err(SearchError::InvalidConstraints(m.into()));
        if self.n == 0 {
            return bad("n must be positive");
        }
        if self.face_mask & !ALL_FACES != 0 {
            return bad("face mask has bits beyond the six faces");
        }
        let lo = self.min_crossings.unwrap_or(0);
        let hi = self.max_crossings.unwrap_or(cells);
        if lo > hi || hi > cells || self.max_tiles.is_some_and(|t| t > cells) {
            return bad("need min crossings <= max crossings <= 6n^2");
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
enum SideRule {
    /// Must agree with this side of an already assigned cell.
    Earlier(u32, Side),
    /// Abuts a face that stays blank.
    Blank,
    Later,
}

#[derive(Clone, Debug)]
struct State {
    tiles: Vec<Tile>,
    next: usize,
    used: usize,
    crossings: usize,
    /// Connection points facing cells not assigned yet.
    pending: usize,
}

/// Tiles by (mask of constrained sides, required connections on them).
fn candidate_table() -> &'static [[Vec<Tile>; 16]; 16] {
    static TABLE: OnceLock<[[Vec<Tile>; 16]; 16]> = OnceLock::new();
    TABLE.get_or_init(|| {
        std::array::from_fn(|known| {
            std::array::from_fn(|required| {
                Tile::all().filter(|t| t.mask() as usize & known == required & known).collect()
            })
        })
    })
}

struct Engine<'c> {
    c: &'c SearchConstraints,
    surface: Surface,
    allowed: Vec<bool>,
    rules: Vec<[SideRule; 4]>,
    /// Allowed cells at index >= i.
    allowed_from: Vec<usize>,
}

struct Ctx<'v> {
    nodes: u64,
    budget: Option<u64>,
    rng: Option<ChaCha8Rng>,
    visitor: &'v mut dyn FnMut(&[Tile]) -> ControlFlow<()>,
    /// When set, states reaching this depth are collected instead of expanded.
    split_depth: Option<usize>,
    prefixes: Vec<State>,
}

impl<'c> Engine<'c> {
    fn new(c: &'c SearchConstraints) -> Result<Engine<'c>, SearchError> {
        c.check()?;
        let n = c.n;
        let cells = 6 * n * n;
        let surface = Surface::new(n);
        let allowed: Vec<bool> = (0..cells).map(|i| c.face_mask >> (i / (n * n)) & 1 == 1).collect();
        let rules = (0..cells)
            .map(|i| {
                Side::ALL.map(|s| {
                    let (j, t) = surface.link(i, s);
                    if !allowed[j] {
                        SideRule::Blank
                    } else if j < i {
                        SideRule::Earlier(j as u32, t)
                    } else {
                        SideRule::Later
                    }
                })
            })
            .collect();
        let mut allowed_from = vec![0; cells + 1];
        for i in (0..cells).rev() {
            allowed_from[i] = allowed_from[i + 1] + allowed[i] as usize;
        }
        Ok(Engine { c, surface, allowed, rules, allowed_from })
    }

    fn root(&self) -> State {
        State { tiles: vec![Tile::T0; self.allowed.len()], next: 0, used: 0, crossings: 0, pending: 0 }
    }

    fn accept(&self, st: &State) -> bool {
        if st.crossings < self.c.min_crossings.unwrap_or(0) {
            return false;
        }
        !self.c.require_knot || (st.used > 0 && component_count(&self.surface, &st.tiles) == 1)
    }

    fn run(&self, st: &mut State, ctx: &mut Ctx) -> Result<ControlFlow<()>, SearchError> {
        let cells = self.allowed.len();
        // a knot is complete once every strand has closed up
        let closed = self.c.require_knot && st.pending == 0 && st.used > 0;
        let leaf = st.next == cells || closed;
        if ctx.split_depth.is_some_and(|d| st.next >= d || leaf) {
            ctx.prefixes.push(st.clone());
            return Ok(ControlFlow::Continue(()));
        }
        if leaf {
            if self.accept(st) {
                return Ok((ctx.visitor)(&st.tiles));
            }
            return Ok(ControlFlow::Continue(()));
        }
        let i = st.next;
        let (mut known, mut required, mut satisfied) = (0usize, 0usize, 0usize);
        if self.allowed[i] {
            for s in Side::ALL {
                match self.rules[i][s.index()] {
                    SideRule::Earlier(j, t) => {
                        known |= s.bit() as usize;
                        if st.tiles[j as usize].has_connection(t) {
                            required |= s.bit() as usize;
                            satisfied += 1;
                        }
                    }
                    SideRule::Blank => known |= s.bit() as usize,
                    SideRule::Later => {}
                }
            }
        } else {
            known = 0b1111;
        }
        let base = &candidate_table()[known][required];
        let shuffled;
        let options: &[Tile] = match ctx.rng.as_mut() {
            Some(rng) if self.allowed[i] => {
                let mut v = base.clone();
                v.shuffle(rng);
                shuffled = v;
                &shuffled
            }
            _ if self.allowed[i] => base,
            _ => &[Tile::T0],
        };
        let max_tiles = self.c.max_tiles.unwrap_or(usize::MAX);
        let max_crossings = self.c.max_crossings.unwrap_or(usize::MAX);
        let min_crossings = self.c.min_crossings.unwrap_or(0);
        for &t in options {
            let used = st.used + !t.is_empty() as usize;
            let crossings = st.crossings + t.is_crossing() as usize;
            let outgoing = t.mask().count_ones() as usize - satisfied;
            let pending = st.pending - satisfied + outgoing;
            if used + pending.div_ceil(4) > max_tiles
                || crossings > max_crossings
                || crossings + self.allowed_from[i + 1] < min_crossings
            {
                continue;
            }
            ctx.nodes += 1;
            if let Some(b) = ctx.budget {
                if ctx.nodes > b {
                    return Err(SearchError::BudgetExceeded(b));
                }
            }
            let saved = (st.used, st.crossings, st.pending);
            st.tiles[i] = t;
            st.used = used;
            st.crossings = crossings;
            st.pending = pending;
            st.next = i + 1;
            let flow = self.run(st, ctx);
            st.tiles[i] = Tile::T0;
            (st.used, st.crossings, st.pending) = saved;
            st.next = i;
            if flow?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Visits every suitably connected mosaic meeting the constraints, in
/// depth-first cell order. Returns the number of visits.
pub fn enumerate(
    c: &SearchConstraints,
    mut visitor: impl FnMut(&SphericalMosaic) -> ControlFlow<()>,
) -> Result<u64, SearchError> {
    let n = c.n;
    let mut visits = 0u64;
    let mut f = |tiles: &[Tile]| {
        visits += 1;
        visitor(&SphericalMosaic::from_tiles(n, tiles.to_vec()).expect("full assignment"))
    };
    walk(c, None, &mut f)?;
    Ok(visits)
}

fn walk(
    c: &SearchConstraints,
    rng: Option<ChaCha8Rng>,
    visitor: &mut dyn FnMut(&[Tile]) -> ControlFlow<()>,
) -> Result<u64, SearchError> {
    let engine = Engine::new(c)?;
    let mut ctx = Ctx { nodes: 0, budget: c.node_budget, rng, visitor, split_depth: None, prefixes: Vec::new() };
    let _ = engine.run(&mut engine.root(), &mut ctx)?;
    Ok(ctx.nodes)
}

/// Applies `f` to every visited mosaic on `jobs` workers; results keep the
/// serial visiting order. The node budget applies to each subtree below the
/// split depth separately.
pub fn par_collect<T: Send>(
    c: &SearchConstraints,
    jobs: usize,
    f: impl Fn(&SphericalMosaic) -> Option<T> + Sync,
) -> Result<Vec<T>, SearchError> {
    let engine = Engine::new(c)?;
    let n = c.n;
    // split after a handful of allowed cells
    let split = (0..engine.allowed.len()).filter(|i| engine.allowed[*i]).nth(4).unwrap_or(engine.allowed.len());
    let mut noop = |_: &[Tile]| ControlFlow::Continue(());
    let mut ctx =
        Ctx { nodes: 0, budget: c.node_budget, rng: None, visitor: &mut noop, split_depth: Some(split), prefixes: Vec::new() };
    let _ = engine.run(&mut engine.root(), &mut ctx)?;
    let prefixes = std::mem::take(&mut ctx.prefixes);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool");
    let parts: Result<Vec<Vec<T>>, SearchError> = pool.install(|| {
        prefixes
            .into_par_iter()
            .map(|mut st| {
                let mut out = Vec::new();
                let mut visit = |tiles: &[Tile]| {
                    if let Some(t) = f(&SphericalMosaic::from_tiles(n, tiles.to_vec()).expect("full")) {
                        out.push(t);
                    }
                    ControlFlow::Continue(())
                };
                let mut ctx = Ctx {
                    nodes: 0,
                    budget: c.node_budget,
                    rng: None,
                    visitor: &mut visit,
                    split_depth: None,
                    prefixes: Vec::new(),
                };
                let _ = engine.run(&mut st, &mut ctx)?;
                Ok(out)
            })
            .collect()
    });
    Ok(parts?.into_iter().flatten().collect())
}

/// Lexicographically least tile sequence (by tile number, face order
/// U,L,F,R,B,D, row-major) among the 24 rotation images.
pub struct Canonicalizer {
    table: RotationTable,
}

impl Canonicalizer {
    pub fn new(n: usize) -> Canonicalizer {
        Canonicalizer { table: RotationTable::new(n) }
    }

    pub fn canonical_tiles(&self, tiles: &[Tile]) -> Vec<Tile> {
        let mut best = tiles.to_vec();
        let mut buf = vec![Tile::T0; tiles.len()];
        for g in 1..self.table.rotations.len() {
            self.table.image_into(g, tiles, &mut buf);
            if buf < best {
                best.copy_from_slice(&buf);
            }
        }
        best
    }

    pub fn canonical(&self, m: &SphericalMosaic) -> SphericalMosaic {
        SphericalMosaic::from_tiles(m.n(), self.canonical_tiles(m.tiles())).expect("same size")
    }

    pub fn orbit_size(&self, m: &SphericalMosaic) -> usize {
        let mut images: Vec<Vec<Tile>> = (0..self.table.rotations.len())
            .map(|g| {
                let mut buf = vec![Tile::T0; m.tiles().len()];
                self.table.image_into(g, m.tiles(), &mut buf);
                buf
            })
            .collect();
        images.sort();
        images.dedup();
        images.len()
    }
}

pub fn canonical_form(m: &SphericalMosaic) -> SphericalMosaic {
    Canonicalizer::new(m.n()).canonical(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRecord {
    pub canonical: SphericalMosaic,
    pub stats: MosaicStats,
    /// `None` for links and for diagrams beyond the crossing limit.
    pub knot: Option<KnotId>,
    pub jones: Option<LaurentPoly>,
    pub orbit_size: usize,
}

/// Enumeration deduplicated by canonical form and classified, in canonical
/// order.
pub fn census(c: &SearchConstraints, table: &KnotTable, jobs: usize) -> Result<Vec<CensusRecord>, SearchError> {
    let canon = Canonicalizer::new(c.n);
    let mut keys = par_collect(c, jobs, |m| Some(canon.canonical_tiles(m.tiles())))?;
    keys.par_sort_unstable();
    keys.dedup();
    let surface = Surface::new(c.n);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool");
    Ok(pool.install(|| {
        keys.into_par_iter()
            .map(|tiles| {
                let m = SphericalMosaic::from_tiles(c.n, tiles).expect("same size");
                let stats = stats_unchecked(&surface, &m);
                let classified = (stats.components == 1)
                    .then(|| extract_pd(&m).ok())
                    .flatten()
                    .and_then(|pd| classify_pd(&pd, table, DEFAULT_CROSSING_LIMIT).ok());
                CensusRecord {
                    orbit_size: canon.orbit_size(&m),
                    knot: classified.as_ref().map(|k| k.knot.clone()),
                    jones: classified.map(|k| k.jones),
                    stats,
                    canonical: m,
                }
            })
            .collect()
    }))
}

/// Recognizes diagrams of one table knot, either chirality.
#[derive(Clone, Debug)]
pub struct KnotMatcher {
    pub name: String,
    pub crossings: usize,
    jones: LaurentPoly,
    determinant: u64,
}

impl KnotMatcher {
    pub fn new(table: &KnotTable, name: &str) -> Option<KnotMatcher> {
        let e = table.get(name)?;
        Some(KnotMatcher { name: e.name.clone(), crossings: e.crossings, jones: e.jones.clone(), determinant: e.determinant })
    }

    pub fn matches(&self, m: &SphericalMosaic) -> bool {
        let Ok(pd) = extract_pd(m) else { return false };
        if pd.len() < self.crossings || coloring_determinant(&pd) != self.determinant {
            return false;
        }
        match jones(&pd, DEFAULT_CROSSING_LIMIT) {
            Ok(j) => j == self.jones || j.mirror() == self.jones,
            Err(_) => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { mosaic: SphericalMosaic, nodes: u64 },
    /// `exhausted` is set when the whole space was covered.
    NotFound { nodes: u64, exhausted: bool },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&SphericalMosaic> {
        match self {
            SearchOutcome::Found { mosaic, .. } => Some(mosaic),
            SearchOutcome::NotFound { .. } => None,
        }
    }
}

/// Nodes per restart in the randomized search at n >= 2.
pub const RESTART_NODES: u64 = 4_000;

/// Seeded search for a knot mosaic of the target type. At n = 1 this is a
/// complete randomized depth-first search; above it runs randomized
/// restarts until `budget` nodes are spent.
pub fn search_knot(n: usize, target: &str, budget: u64, seed: u64, table: &KnotTable) -> SearchOutcome {
    let Some(matcher) = KnotMatcher::new(table, target) else {
        return SearchOutcome::NotFound { nodes: 0, exhausted: false };
    };
    if max_crossings(n) < matcher.crossings {
        return SearchOutcome::NotFound { nodes: 0, exhausted: true };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = SearchConstraints { min_crossings: Some(matcher.crossings), ..SearchConstraints::knots(n) };
    let mut spent = 0u64;
    while spent < budget {
        let restart_budget = if n == 1 { budget } else { RESTART_NODES.min(budget - spent) };
        let c = SearchConstraints { node_budget: Some(restart_budget), ..base.clone() };
        let mut found = None;
        let mut visit = |tiles: &[Tile]| {
            let m = SphericalMosaic::from_tiles(n, tiles.to_vec()).expect("full");
            if matcher.matches(&m) {
                found = Some(m);
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        };
        let result = walk(&c, Some(ChaCha8Rng::seed_from_u64(rng.gen())), &mut visit);
        let nodes = match result {
            Ok(nodes) => nodes,
            Err(_) => restart_budget,
        };
        spent += nodes;
        if let Some(mosaic) = found {
            return SearchOutcome::Found { mosaic, nodes: spent };
        }
        if n == 1 {
            return SearchOutcome::NotFound { nodes: spent, exhausted: result.is_ok() };
        }
    }
    SearchOutcome::NotFound { nodes: spent, exhausted: false }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certainty {
    /// The value is a minimum over a completely searched space.
    Exhaustive,
    /// A proven lower bound is met by a witness.
    BoundAndWitness,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariant {
    pub lower: usize,
    pub upper: Option<usize>,
    pub certainty: Certainty,
    pub witness: Option<SphericalMosaic>,
}

impl Invariant {
    fn undetermined(lower: usize) -> Invariant {
        Invariant { lower, upper: None, certainty: Certainty::Undetermined, witness: None }
    }

    pub fn value(&self) -> Option<usize> {
        (self.certainty != Certainty::Undetermined).then_some(self.lower)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub knot: String,
    pub sm: Invariant,
    pub st: Invariant,
    pub st_m: Invariant,
    pub sf: Invariant,
    pub sf_n: BTreeMap<usize, Invariant>,
    pub sf_m: Invariant,
}

/// Least n whose crossing capacity 6n^2 - 3n + 1 reaches c.
pub fn mosaic_lower_bound(crossings: usize) -> usize {
    (1..).find(|&n| max_crossings(n) >= crossings).expect("capacity grows")
}

/// Budgets for [`invariants_exhaustive`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvariantBudget {
    /// Tile limit for tile-minimizing searches at n >= 2.
    pub tiles: usize,
    /// Node limit for each exhaustive sub-search at n >= 2.
    pub nodes: u64,
    /// Node limit for the randomized witness search.
    pub witness_nodes: u64,
    pub seed: u64,
}

impl Default for InvariantBudget {
    fn default() -> Self {
        InvariantBudget { tiles: 6, nodes: 50_000_000, witness_nodes: 20_000_000, seed: 1 }
    }
}

struct Level {
    /// Least tiles and a witness, when known exactly.
    min_tiles: Option<(usize, SphericalMosaic)>,
    /// No witness can have fewer tiles than this.
    tiles_lower: usize,
    faces: Invariant,
    any: Option<SphericalMosaic>,
    /// No knot mosaic of the target exists at this n.
    excluded: bool,
}

fn first_match(c: &SearchConstraints, matcher: &KnotMatcher) -> Result<Option<SphericalMosaic>, SearchError> {
    let mut found = None;
    let mut visit = |tiles: &[Tile]| {
        let m = SphericalMosaic::from_tiles(c.n, tiles.to_vec()).expect("full");
        if matcher.matches(&m) {
            found = Some(m);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    };
    walk(c, None, &mut visit)?;
    Ok(found)
}

fn search_level(n: usize, matcher: &KnotMatcher, budget: &InvariantBudget) -> Level {
    let exhaustive = n == 1;
    let base = SearchConstraints {
        min_crossings: Some(matcher.crossings),
        node_budget: (!exhaustive).then_some(budget.nodes),
        ..SearchConstraints::knots(n)
    };
    // least tiles: everything at n = 1, otherwise all mosaics within the tile budget
    let tile_space = SearchConstraints { max_tiles: (!exhaustive).then_some(budget.tiles), ..base.clone() };
    let mut best: Option<(usize, SphericalMosaic)> = None;
    let mut visit = |tiles: &[Tile]| {
        let used = tiles.iter().filter(|t| !t.is_empty()).count();
        if best.as_ref().is_none_or(|(b, _)| used < *b) {
            let m = SphericalMosaic::from_tiles(n, tiles.to_vec()).expect("full");
            if matcher.matches(&m) {
                best = Some((used, m));
            }
        }
        ControlFlow::Continue(())
    };
    let complete = walk(&tile_space, None, &mut visit).is_ok();
    let universal = 3.max(matcher.crossings);
    let (min_tiles, tiles_lower) = match (&best, complete) {
        (Some(b), true) => (Some(b.clone()), b.0),
        (None, true) if exhaustive => (None, usize::MAX),
        (None, true) => (None, budget.tiles.max(universal - 1) + 1),
        (_, false) => (None, universal),
    };
    let excluded = exhaustive && complete && best.is_none();

    // least faces: try face sets in increasing size
    let mut faces = Invariant::undetermined(1);
    let mut all_excluded = true;
    'sizes: for size in 1..=6u32 {
        for mask in (1u8..=ALL_FACES).filter(|m| m.count_ones() == size) {
            let c = SearchConstraints { face_mask: mask, ..base.clone() };
            match first_match(&c, matcher) {
                Ok(Some(m)) => {
                    if all_excluded {
                        faces = Invariant {
                            lower: size as usize,
                            upper: Some(size as usize),
                            certainty: Certainty::Exhaustive,
                            witness: Some(m),
                        };
                    } else {
                        faces.upper = Some(size as usize);
                        faces.witness = Some(m);
                    }
                    break 'sizes;
                }
                Ok(None) => {}
                Err(_) => all_excluded = false,
            }
        }
        if all_excluded {
            faces.lower = size as usize + 1;
        }
    }
    if excluded {
        faces = Invariant::undetermined(7);
    }
    let any = best.as_ref().map(|b| b.1.clone()).or_else(|| faces.witness.clone());
    Level { min_tiles, tiles_lower, faces, any, excluded }
}

/// Computes sm, st, st_M, sf, sf_n and sf_M for a table knot by constrained
/// search over n <= n_max.
pub fn invariants_exhaustive(
    target: &str,
    n_max: usize,
    budget: InvariantBudget,
    table: &KnotTable,
) -> Option<InvariantReport> {
    let matcher = KnotMatcher::new(table, target)?;
    let crossing_floor = mosaic_lower_bound(matcher.crossings);
    let mut levels: BTreeMap<usize, Level> = BTreeMap::new();
    for n in crossing_floor..=n_max {
        let mut level = search_level(n, &matcher, &budget);
        if level.any.is_none() && !level.excluded {
            if let Some(m) = search_knot(n, target, budget.witness_nodes, budget.seed, table).witness() {
                level.any = Some(m.clone());
            }
        }
        levels.insert(n, level);
    }

    // sm: excluded levels raise the bound, the first witness caps it
    let mut sm = Invariant::undetermined(crossing_floor);
    for (&n, level) in &levels {
        if level.excluded {
            sm.lower = n + 1;
            continue;
        }
        if let Some(w) = &level.any {
            sm.upper = Some(n);
            sm.witness = Some(w.clone());
            if sm.lower == n {
                sm.certainty =
                    if n == 1 { Certainty::Exhaustive } else { Certainty::BoundAndWitness };
            }
        }
        break;
    }
    let sm_value = sm.value();

    let universal = 3.max(matcher.crossings);
    let mut st = Invariant::undetermined(universal);
    for level in levels.values() {
        if let Some((t, w)) = &level.min_tiles {
            if st.upper.is_none_or(|u| *t < u) {
                st.upper = Some(*t);
                st.witness = Some(w.clone());
            }
        }
    }
    if st.upper == Some(st.lower) {
        st.certainty = Certainty::BoundAndWitness;
    }

    let st_m = match sm_value.and_then(|n| levels.get(&n)) {
        Some(level) => match &level.min_tiles {
            Some((t, w)) => Invariant {
                lower: *t,
                upper: Some(*t),
                certainty: Certainty::Exhaustive,
                witness: Some(w.clone()),
            },
            None => Invariant::undetermined(level.tiles_lower.min(universal)),
        },
        None => Invariant::undetermined(universal),
    };

    let sf_n: BTreeMap<usize, Invariant> =
        levels.iter().filter(|(_, l)| !l.excluded).map(|(n, l)| (*n, l.faces.clone())).collect();
    let mut sf = Invariant::undetermined(1);
    for f in sf_n.values() {
        if let Some(u) = f.upper {
            if sf.upper.is_none_or(|s| u < s) {
                sf.upper = Some(u);
                sf.witness = f.witness.clone();
            }
        }
    }
    if sf.upper == Some(1) {
        sf.certainty = Certainty::BoundAndWitness;
    }
    let sf_m = sm_value.and_then(|n| sf_n.get(&n).cloned()).unwrap_or_else(|| Invariant::undetermined(1));
    Some(InvariantReport { knot: matcher.name, sm, st, st_m, sf, sf_n, sf_m })
}
