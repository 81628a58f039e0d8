use std::collections::HashMap;

use super::pd::{writhe, PDCode};
use super::poly::LaurentPoly;
use super::KnotIdError;
use crate::util::UnionFind;

pub const DEFAULT_CROSSING_LIMIT: usize = 24;

/// The loop value -A^2 - A^-2.
fn loop_value() -> LaurentPoly {
    LaurentPoly::from_terms([(2, -1), (-2, -1)])
}

/// Label pairs joined by the A- and B-smoothings of a crossing.
fn smoothing(x: [u32; 4], use_a: bool) -> [(u32, u32); 2] {
    let [a, b, c, d] = x;
    if use_a {
        [(a, b), (c, d)]
    } else {
        [(a, d), (b, c)]
    }
}

/// Kauffman bracket in A, normalized so a single loop is 1.
pub fn kauffman_bracket(pd: &PDCode, limit: usize) -> Result<LaurentPoly, KnotIdError> {
    if pd.len() > limit {
        return Err(KnotIdError::TooManyCrossings { crossings: pd.len(), limit });
    }
    Ok(frontier_bracket(pd))
}

/// Reference state sum over all 2^c smoothings.
pub fn naive_bracket(pd: &PDCode) -> LaurentPoly {
    let c = pd.len();
    assert!(c < 32, "state sum too large");
    let arcs = 2 * c;
    let d = loop_value();
    let mut counts: HashMap<(i64, usize), i64> = HashMap::new();
    for state in 0u64..(1u64 << c) {
        let mut uf = UnionFind::new(arcs + 1);
        let mut a_count = 0i64;
        for (k, x) in pd.crossings.iter().enumerate() {
            let use_a = state >> k & 1 == 0;
            a_count += use_a as i64;
            for (p, q) in smoothing(*x, use_a) {
                uf.union(p as usize, q as usize);
            }
        }
        // index 0 is an unused singleton
        let loops = if c == 0 { 1 } else { uf.sets() - 1 };
        *counts.entry((2 * a_count - c as i64, loops)).or_default() += 1;
    }
    let mut out = LaurentPoly::zero();
    for ((exp, loops), mult) in counts {
        let term = &LaurentPoly::monomial(mult, exp) * &d.pow(loops as u32 - 1);
        out += &term;
    }
    out
}

/// Open arcs paired by the partial curves built so far, sorted by first label.
type Matching = Vec<(u32, u32)>;

fn frontier_bracket(pd: &PDCode) -> LaurentPoly {
    let c = pd.len();
    if c == 0 {
        return LaurentPoly::one();
    }
    let d = loop_value();
    let a_plus = LaurentPoly::monomial(1, 1);
    let a_minus = LaurentPoly::monomial(1, -1);
    let order = processing_order(pd);
    let mut states: HashMap<(Matching, bool), LaurentPoly> = HashMap::new();
    states.insert((Vec::new(), false), LaurentPoly::one());
    for k in order {
        let x = pd.crossings[k];
        let mut next: HashMap<(Matching, bool), LaurentPoly> = HashMap::with_capacity(states.len() * 2);
        for ((matching, closed_any), weight) in &states {
            for use_a in [true, false] {
                let (m2, loops) = resolve(matching, smoothing(x, use_a));
                let mut w = if use_a { &a_plus * weight } else { &a_minus * weight };
                let mut closed = *closed_any;
                for _ in 0..loops {
                    if closed {
                        w = &w * &d;
                    }
                    closed = true;
                }
                *next.entry((m2, closed)).or_default() += &w;
            }
        }
        next.retain(|_, w| !w.is_zero());
        states = next;
    }
    states.into_iter().filter(|((m, _), _)| m.is_empty()).fold(LaurentPoly::zero(), |acc, (_, w)| &acc + &w)
}

/// Order crossings so each next one shares as many open arcs as possible.
fn processing_order(pd: &PDCode) -> Vec<usize> {
    let c = pd.len();
    let mut done = vec![false; c];
    let mut seen = vec![0u8; 2 * c + 1];
    let mut order = Vec::with_capacity(c);
    for _ in 0..c {
        let best = (0..c)
            .filter(|k| !done[*k])
            .max_by_key(|k| {
                let open = pd.crossings[*k].iter().filter(|l| seen[**l as usize] == 1).count();
                (open, std::cmp::Reverse(*k))
            })
            .expect("crossing left");
        done[best] = true;
        for l in pd.crossings[best] {
            seen[l as usize] += 1;
        }
        order.push(best);
    }
    order
}

/// Applies one smoothing to a matching; returns the new matching and the
/// number of loops it closes.
fn resolve(matching: &Matching, edges: [(u32, u32); 2]) -> (Matching, usize) {
    let partner = |x: u32| {
        matching.iter().find_map(|&(p, q)| if p == x { Some(q) } else if q == x { Some(p) } else { None })
    };
    let mut graph: Vec<(u32, u32)> = edges.to_vec();
    let mut touched: Vec<(u32, u32)> = Vec::new();
    for &(p, q) in &edges {
        for x in [p, q] {
            if let Some(y) = partner(x) {
                let e = (x.min(y), x.max(y));
                if !touched.contains(&e) {
                    touched.push(e);
                    graph.push(e);
                }
            }
        }
    }
    let degree = |v: u32, g: &[(u32, u32)]| g.iter().map(|&(p, q)| (p == v) as usize + (q == v) as usize).sum::<usize>();
    let nodes: Vec<u32> = {
        let mut v: Vec<u32> = graph.iter().flat_map(|&(p, q)| [p, q]).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let mut used = vec![false; graph.len()];
    let mut out: Matching = matching.iter().copied().filter(|e| !touched.contains(e)).collect();
    for &start in &nodes {
        if degree(start, &graph) != 1 || used.iter().zip(&graph).any(|(u, e)| *u && (e.0 == start || e.1 == start)) {
            continue;
        }
        let mut v = start;
        loop {
            let i = (0..graph.len()).find(|&i| !used[i] && (graph[i].0 == v || graph[i].1 == v)).expect("path continues");
            used[i] = true;
            v = if graph[i].0 == v { graph[i].1 } else { graph[i].0 };
            if degree(v, &graph) == 1 {
                break;
            }
        }
        out.push((start.min(v), start.max(v)));
    }
    let mut loops = 0;
    while let Some(i) = used.iter().position(|u| !u) {
        loops += 1;
        used[i] = true;
        let (first, mut v) = graph[i];
        while v != first {
            let j = (0..graph.len()).find(|&j| !used[j] && (graph[j].0 == v || graph[j].1 == v)).expect("cycle closes");
            used[j] = true;
            v = if graph[j].0 == v { graph[j].1 } else { graph[j].0 };
        }
    }
    out.sort_unstable();
    (out, loops)
}

/// Jones polynomial in t from the bracket: (-A^3)^(-w) <D> with A = t^(-1/4).
pub fn jones(pd: &PDCode, limit: usize) -> Result<LaurentPoly, KnotIdError> {
    let bracket = kauffman_bracket(pd, limit)?;
    jones_from_bracket(&bracket, writhe(pd))
}

pub fn jones_from_bracket(bracket: &LaurentPoly, writhe: i32) -> Result<LaurentPoly, KnotIdError> {
    let w = writhe as i64;
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    let in_a = &LaurentPoly::monomial(sign, -3 * w) * bracket;
    in_a.mirror().divide_exponents(4).ok_or(KnotIdError::NonIntegerExponent)
}

/// |V(-1)|.
pub fn determinant(pd: &PDCode, limit: usize) -> Result<u64, KnotIdError> {
    let j = jones(pd, limit)?;
    Ok(j.eval(-1).expect("evaluation at -1").unsigned_abs())
}

/// Determinant from the coloring matrix, independent of the bracket.
pub fn coloring_determinant(pd: &PDCode) -> u64 {
    let c = pd.len();
    if c == 0 {
        return 1;
    }
    let mut uf = UnionFind::new(2 * c + 1);
    for &[_, b, _, d] in &pd.crossings {
        uf.union(b as usize, d as usize);
    }
    let mut arc_of = HashMap::new();
    let mut arc = |uf: &mut UnionFind, label: u32| {
        let root = uf.find(label as usize);
        let next = arc_of.len();
        *arc_of.entry(root).or_insert(next)
    };
    let mut rows = vec![vec![0i128; c]; c];
    for (k, &[a, b, cc, _]) in pd.crossings.iter().enumerate() {
        rows[k][arc(&mut uf, b)] += 2;
        rows[k][arc(&mut uf, a)] -= 1;
        rows[k][arc(&mut uf, cc)] -= 1;
    }
    let minor: Vec<Vec<i128>> = rows[1..].iter().map(|r| r[1..].to_vec()).collect();
    bareiss_determinant(minor).unsigned_abs() as u64
}

fn bareiss_determinant(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> PDCode {
        PDCode::new(vec![[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]])
    }

    fn figure_eight() -> PDCode {
        PDCode::new(vec![[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]])
    }

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn empty_diagram() {
        assert_eq!(kauffman_bracket(&PDCode::default(), 24).unwrap(), LaurentPoly::one());
        assert_eq!(jones(&PDCode::default(), 24).unwrap(), LaurentPoly::one());
        assert_eq!(coloring_determinant(&PDCode::default()), 1);
    }

    #[test]
    fn kinks() {
        let pos = PDCode::new(vec![[1, 1, 2, 2]]);
        let neg = PDCode::new(vec![[1, 2, 2, 1]]);
        assert_eq!(naive_bracket(&pos), p(&[(3, -1)]));
        assert_eq!(naive_bracket(&neg), p(&[(-3, -1)]));
        assert_eq!(kauffman_bracket(&pos, 24).unwrap(), p(&[(3, -1)]));
        assert_eq!(jones(&pos, 24).unwrap(), LaurentPoly::one());
        assert_eq!(jones(&neg, 24).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn trefoil_and_figure_eight() {
        let j = jones(&trefoil(), 24).unwrap();
        assert_eq!(j, p(&[(1, 1), (3, 1), (4, -1)]));
        assert_eq!(jones(&trefoil().mirror(), 24).unwrap(), j.mirror());
        let j4 = jones(&figure_eight(), 24).unwrap();
        assert_eq!(j4, j4.mirror());
        assert_eq!(determinant(&trefoil(), 24).unwrap(), 3);
        assert_eq!(determinant(&figure_eight(), 24).unwrap(), 5);
        assert_eq!(coloring_determinant(&trefoil()), 3);
        assert_eq!(coloring_determinant(&figure_eight()), 5);
    }

    #[test]
    fn memoized_equals_state_sum() {
        for pd in [trefoil(), figure_eight(), trefoil().mirror()] {
            assert_eq!(frontier_bracket(&pd), naive_bracket(&pd));
        }
    }

    #[test]
    fn crossing_limit() {
        assert_eq!(
            kauffman_bracket(&trefoil(), 2),
            Err(KnotIdError::TooManyCrossings { crossings: 3, limit: 2 })
        );
    }
}
