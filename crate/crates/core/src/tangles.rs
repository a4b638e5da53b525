//! k-tangles for k ≤ 4: axiom checking, exhaustive enumeration, lifting along
//! minor-maps, tangle direction, distinguishers, and the forced orientations
//! coming from claw sides.

use crate::error::{Error, Result};
use crate::graph::{components, Graph, VertexSet};
use crate::minors::{induced_separation, is_cubic, validate_model, MinorMap};
use crate::separations::{enumerate_separations, OrientedSeparation, Separation, Star};
use serde::Serialize;
use std::collections::BTreeMap;

/// A k-tangle, stored as the chosen orientation of every proper separation of
/// order below `k`. Improper separations are implicitly oriented towards the
/// full side and materialised on demand.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct Tangle {
    pub k: usize,
    /// Canonical separation -> true iff oriented towards `side1`.
    orientation: BTreeMap<Separation, bool>,
}

impl Tangle {
    pub fn new(k: usize, members: impl IntoIterator<Item = OrientedSeparation>) -> Self {
        let mut orientation = BTreeMap::new();
        for m in members {
            let s = m.to_separation();
            orientation.insert(s, m.big == s.side1());
        }
        Tangle { k, orientation }
    }

    /// The stored orientations (proper separations only), in canonical order.
    pub fn members(&self) -> impl Iterator<Item = OrientedSeparation> + '_ {
        self.orientation.iter().map(|(s, &towards1)| {
            if towards1 {
                s.towards(s.side1())
            } else {
                s.towards(s.side0())
            }
        })
    }

    pub fn member_count(&self) -> usize {
        self.orientation.len()
    }

    /// The orientation this tangle gives to `s`: the stored one for proper
    /// separations, the forced one (towards the full side) for improper ones.
    pub fn orients(&self, s: &Separation) -> OrientedSeparation {
        if let Some(&towards1) = self.orientation.get(s) {
            return if towards1 { s.towards(s.side1()) } else { s.towards(s.side0()) };
        }
        debug_assert!(!s.is_proper(), "tangle queried with an unknown proper separation");
        // Improper: side0 ⊇ side1 in canonical storage never holds; the full
        // side is the one equal to the union.
        let full = s.side0().union(s.side1());
        if s.side0() == full {
            s.towards(s.side0())
        } else {
            s.towards(s.side1())
        }
    }

    /// True iff the tangle contains this oriented separation.
    pub fn contains(&self, o: &OrientedSeparation) -> bool {
        self.orients(&o.to_separation()) == *o
    }
}

/// Outcome of a tangle axiom check.
#[derive(Clone, Debug, Default, Serialize)]
pub struct TangleCheck {
    pub ok: bool,
    pub missing: Vec<Separation>,
    pub unexpected: Vec<Separation>,
    /// Small sides of up to ten violating triples.
    pub violations: Vec<[VertexSet; 3]>,
}

fn edge_mask(g: &Graph, side: VertexSet) -> u128 {
    let mut mask = 0u128;
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if side.contains(u) && side.contains(v) {
            mask |= 1 << i;
        }
    }
    mask
}

/// The small sides available to a covering triple: the tangle's proper member
/// sides plus every improper small side (the (k-1)-subsets, precomputed once
/// per graph). Sides carry their induced edge masks.
pub(crate) struct TripleArena {
    all_vertices: VertexSet,
    all_edges: u128,
    edge_ends: Vec<(usize, usize)>,
    k: usize,
    /// Member small sides plus (k-1)-subsets, sorted by size descending.
    sides: Vec<(VertexSet, u128)>,
    /// Proper member sides only, for completing a pair into a triple.
    proper_sides: Vec<(VertexSet, u128)>,
}

/// Precomputed improper small sides of a graph: all (k-1)-subsets with masks.
pub(crate) fn improper_sides(g: &Graph, k: usize) -> Vec<(VertexSet, u128)> {
    let verts = g.vertices().to_vec();
    let mut sets = Vec::new();
    let mut cur = Vec::new();
    subsets_exact(&verts, k - 1, 0, &mut cur, &mut sets);
    sets.into_iter().map(|s| (s, edge_mask(g, s))).collect()
}

pub(crate) fn triple_arena<'a>(
    g: &Graph,
    k: usize,
    members: impl Iterator<Item = &'a OrientedSeparation>,
    improper: &[(VertexSet, u128)],
) -> TripleArena {
    assert!(g.edge_count() <= 128, "tangle machinery supports at most 128 edges");
    let proper_sides: Vec<(VertexSet, u128)> =
        members.map(|m| (m.small, edge_mask(g, m.small))).collect();
    let mut sides = proper_sides.clone();
    sides.extend_from_slice(improper);
    sides.sort_by_key(|s| std::cmp::Reverse(s.0.len()));
    TripleArena {
        all_vertices: g.vertices(),
        all_edges: edge_mask(g, g.vertices()),
        edge_ends: g.edges().to_vec(),
        k,
        sides,
        proper_sides,
    }
}

fn subsets_exact(verts: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<VertexSet>) {
    if cur.len() == size {
        out.push(VertexSet::from_iter(cur.iter().copied()));
        return;
    }
    if verts.len() - start < size - cur.len() {
        return;
    }
    for i in start..verts.len() {
        cur.push(verts[i]);
        subsets_exact(verts, size, i + 1, cur, out);
        cur.pop();
    }
}

/// Searches for triples (with repetition) of small sides whose induced
/// subgraphs cover the whole graph. Pairs are enumerated largest-first with
/// early size cutoffs; a third side completing a pair is found in constant
/// time for improper candidates (any (k-1)-subset containing the uncovered
/// vertices and edge endpoints works) and by scanning the proper members.
pub(crate) fn find_covering_triples(arena: &TripleArena, limit: usize) -> Vec<[VertexSet; 3]> {
    let n = arena.all_vertices.len();
    let sides = &arena.sides;
    let max_improper_edges = (arena.k - 1) * (arena.k - 2) / 2;
    let mut found = Vec::new();
    for i in 0..sides.len() {
        if 3 * sides[i].0.len() < n {
            break; // sorted by size: nothing later can cover
        }
        for j in i..sides.len() {
            if sides[i].0.len() + 2 * sides[j].0.len() < n {
                break;
            }
            let vij = sides[i].0.union(sides[j].0);
            let eij = sides[i].1 | sides[j].1;
            let missing_v = arena.all_vertices.difference(vij);
            let missing_e = arena.all_edges & !eij;
            // Improper completion.
            if missing_e.count_ones() as usize <= max_improper_edges {
                let mut t = missing_v;
                let mut bits = missing_e;
                while bits != 0 {
                    let e = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    t.insert(arena.edge_ends[e].0);
                    t.insert(arena.edge_ends[e].1);
                }
                if t.len() <= arena.k - 1 {
                    found.push([sides[i].0, sides[j].0, t]);
                    if found.len() >= limit {
                        return found;
                    }
                    continue;
                }
            }
            // Proper completion.
            for &(sv, se) in &arena.proper_sides {
                if missing_v.is_subset(&sv) && missing_e & !se == 0 {
                    found.push([sides[i].0, sides[j].0, sv]);
                    if found.len() >= limit {
                        return found;
                    }
                    break;
                }
            }
        }
    }
    found
}

/// Checks totality, antisymmetry and the triple condition for a candidate
/// k-tangle. The report lists missing or unexpected separations and up to ten
/// offending triples.
pub fn check_tangle(g: &Graph, k: usize, t: &Tangle) -> TangleCheck {
    assert!((1..=4).contains(&k), "only tangles of order up to four are supported");
    let mut report = TangleCheck::default();
    if g.vertex_count() < k {
        // The separation {V, V} has order < k and each orientation's small
        // side induces the whole graph.
        report.violations.push([g.vertices(), g.vertices(), g.vertices()]);
        return report;
    }
    let expected: Vec<Separation> = enumerate_separations(g, k - 1)
        .into_iter()
        .filter(|s| s.is_proper())
        .collect();
    for s in &expected {
        if !t.orientation.contains_key(s) {
            report.missing.push(*s);
        }
    }
    for s in t.orientation.keys() {
        if !expected.contains(s) {
            report.unexpected.push(*s);
        }
    }
    if report.missing.is_empty() && report.unexpected.is_empty() {
        let members: Vec<OrientedSeparation> = t.members().collect();
        let improper = improper_sides(g, k);
        let arena = triple_arena(g, k, members.iter(), &improper);
        report.violations = find_covering_triples(&arena, 10);
    }
    report.ok = report.missing.is_empty() && report.unexpected.is_empty() && report.violations.is_empty();
    report
}

/// A choice, for every separator candidate, of one component of `g − X`; by
/// the tangle direction lemma these choices are in bijection with candidate
/// orientations.
#[derive(Clone, Debug)]
pub struct DirectionTable {
    pub choices: BTreeMap<VertexSet, VertexSet>,
}

impl DirectionTable {
    /// The total orientation induced by the table: every proper separation is
    /// oriented towards the side including the chosen component at its
    /// separator.
    pub fn orient(&self, k: usize, propers: &[Separation]) -> Tangle {
        let members = propers.iter().map(|s| {
            let c = self.choices[&s.separator()];
            if c.is_subset(&s.side0()) {
                s.towards(s.side0())
            } else {
                s.towards(s.side1())
            }
        });
        Tangle::new(k, members)
    }
}

fn induced_claw_side(g: &Graph, side: VertexSet, sep: VertexSet) -> bool {
    // A claw with leaf set equal to the separator: 4 vertices, the vertex
    // outside the separator adjacent to all three separator vertices, and the
    // separator independent.
    if side.len() != 4 || sep.len() != 3 || !sep.is_subset(&side) {
        return false;
    }
    let center = side.difference(sep).min().unwrap();
    if g.neighbors(center).intersection(side) != sep {
        return false;
    }
    sep.iter().all(|u| g.neighbors(u).intersection(sep).is_empty())
}

/// The orientation of a (≤3)-order separation forced on every 4-tangle: away
/// from a side of three vertices and away from a claw side.
pub fn orients_toward_big_side(g: &Graph, s: &Separation) -> Result<OrientedSeparation> {
    let forced_away = |side: VertexSet, other: VertexSet| -> bool {
        side.len() == 3 && side == s.separator() && other == g.vertices()
            || induced_claw_side(g, side, s.separator())
    };
    let q0 = forced_away(s.side0(), s.side1());
    let q1 = forced_away(s.side1(), s.side0());
    match (q0, q1) {
        (true, false) => Ok(s.towards(s.side1())),
        (false, true) => Ok(s.towards(s.side0())),
        // Neither side qualifies, or both do (then no consistent forced
        // orientation exists and no 4-tangle survives anyway).
        _ => Err(Error::NotForced),
    }
}

/// All k-tangles of `g`, each exactly once, in canonical order.
///
/// Direction tables are enumerated over all separator candidates with at
/// least two components; for k = 4, components inside claw sides are pruned
/// first (sound by the forced-orientation lemma) and the survivors are
/// filtered through the tangle axioms.
pub fn enumerate_tangles(g: &Graph, k: usize) -> Vec<Tangle> {
    assert!((1..=4).contains(&k), "only tangles of order up to four are supported");
    if g.vertex_count() < k {
        return Vec::new();
    }
    let propers: Vec<Separation> = enumerate_separations(g, k - 1)
        .into_iter()
        .filter(|s| s.is_proper())
        .collect();

    // Group separations by separator and collect allowed components.
    let mut separators: BTreeMap<VertexSet, Vec<Separation>> = BTreeMap::new();
    for s in &propers {
        separators.entry(s.separator()).or_default().push(*s);
    }
    let mut candidates: Vec<(VertexSet, Vec<VertexSet>)> = Vec::new();
    for (&x, seps) in &separators {
        let comps = components(g, x);
        debug_assert!(comps.len() >= 2);
        let mut allowed = comps;
        if k == 4 {
            for s in seps {
                for (side, other) in [(s.side0(), s.side1()), (s.side1(), s.side0())] {
                    if induced_claw_side(g, side, x) {
                        // No 4-tangle points into a claw side.
                        allowed.retain(|c| !c.is_subset(&side.difference(other)));
                    }
                }
            }
        }
        if allowed.is_empty() {
            return Vec::new();
        }
        candidates.push((x, allowed));
    }

    let improper = improper_sides(g, k);
    let mut tangles = Vec::new();
    let mut choice_idx = vec![0usize; candidates.len()];
    loop {
        let table = DirectionTable {
            choices: candidates
                .iter()
                .zip(&choice_idx)
                .map(|((x, allowed), &i)| (*x, allowed[i]))
                .collect(),
        };
        let t = table.orient(k, &propers);
        let members: Vec<OrientedSeparation> = t.members().collect();
        let arena = triple_arena(g, k, members.iter(), &improper);
        if find_covering_triples(&arena, 1).is_empty() {
            tangles.push(t);
        }
        // Odometer step.
        let mut pos = 0;
        loop {
            if pos == candidates.len() {
                tangles.sort();
                return tangles;
            }
            choice_idx[pos] += 1;
            if choice_idx[pos] < candidates[pos].1.len() {
                break;
            }
            choice_idx[pos] = 0;
            pos += 1;
        }
    }
}

/// The unique component of `g − x` consistent with all of the tangle's
/// orientations at separator `x`.
pub fn tangle_direction(g: &Graph, t: &Tangle, x: VertexSet) -> Result<VertexSet> {
    assert!(x.len() < t.k);
    let comps = components(g, x);
    if comps.len() == 1 {
        return Ok(comps[0]);
    }
    let mut chosen = Vec::new();
    for &c in &comps {
        let toward = Separation::new(g, g.vertices().difference(c), c.union(x))
            .expect("component split is a separation");
        if t.orients(&toward) == toward.towards(c.union(x)) {
            chosen.push(c);
        }
    }
    if chosen.len() == 1 {
        Ok(chosen[0])
    } else {
        Err(Error::Inconsistent(format!("{x:?}")))
    }
}

/// The lift of a codomain tangle along a minor-map: all oriented separations
/// of the domain whose induced separation lies in the tangle.
pub fn lift_tangle(m: &MinorMap, t: &Tangle) -> Tangle {
    debug_assert!(validate_model(m).is_ok());
    let propers: Vec<Separation> = enumerate_separations(&m.domain, t.k - 1)
        .into_iter()
        .filter(|s| s.is_proper())
        .collect();
    let members = propers.iter().map(|s| {
        let [o1, o2] = s.orientations();
        let img = induced_separation(m, &o1);
        let img_sep = img.to_separation();
        if t.orients(&img_sep) == img {
            o1
        } else {
            o2
        }
    });
    Tangle::new(t.k, members)
}

/// Orients every proper 3-separation of an internally 4-connected graph
/// towards its strictly larger side; this is its unique 4-tangle.
pub fn internal_tangle(g: &Graph) -> Result<Tangle> {
    if !crate::connectivity::is_internally_4connected(g) {
        return Err(Error::NotInternally4Connected);
    }
    let members = enumerate_separations(g, 3)
        .into_iter()
        .filter(Separation::is_proper)
        .map(|s| {
            assert!(
                s.side0().len() != s.side1().len(),
                "internally 4-connected graphs have no balanced 3-separation"
            );
            if s.side0().len() > s.side1().len() {
                s.towards(s.side0())
            } else {
                s.towards(s.side1())
            }
        })
        .collect::<Vec<_>>();
    Ok(Tangle::new(4, members))
}

/// All separations the two tangles orient differently.
pub fn distinguishers(g: &Graph, t1: &Tangle, t2: &Tangle) -> Vec<Separation> {
    assert_eq!(t1.k, t2.k);
    enumerate_separations(g, t1.k - 1)
        .into_iter()
        .filter(|s| s.is_proper() && t1.orients(s) != t2.orients(s))
        .collect()
}

/// The distinguishers of minimal order.
pub fn efficient_distinguishers(g: &Graph, t1: &Tangle, t2: &Tangle) -> Vec<Separation> {
    let all = distinguishers(g, t1, t2);
    let min = all.iter().map(Separation::order).min();
    match min {
        None => Vec::new(),
        Some(m) => all.into_iter().filter(|s| s.order() == m).collect(),
    }
}

/// True iff every element of the star belongs to the tangle.
pub fn includes_star(t: &Tangle, star: &Star) -> bool {
    star.elements().iter().all(|e| t.contains(e))
}

/// The canonical star of 3-separations at a cubic set `x`: one element per
/// 3-subset `Y` of `x`, separating off all components with neighborhood `Y`,
/// oriented towards `x`.
pub fn cubic_star(g: &Graph, x: VertexSet) -> Result<Star> {
    if is_cubic(g, x)?.is_none() {
        return Err(Error::NotCubic);
    }
    let comps = components(g, x);
    let mut elements = Vec::new();
    for v in x.iter() {
        let y = x.difference(VertexSet::singleton(v));
        let mut u = VertexSet::EMPTY;
        for c in &comps {
            if crate::graph::neighborhood(g, *c) == y {
                u = u.union(*c);
            }
        }
        elements.push(OrientedSeparation { small: u.union(y), big: g.vertices().difference(u) });
    }
    Star::new(elements)
}

/// Searches for a cubic 4-set whose canonical star lies in the tangle.
pub fn is_cubic_tangle(g: &Graph, t: &Tangle) -> Option<VertexSet> {
    assert_eq!(t.k, 4);
    let verts = g.vertices().to_vec();
    let mut cur = Vec::new();
    let mut sets = Vec::new();
    subsets_exact(&verts, 4, 0, &mut cur, &mut sets);
    for x in sets {
        if is_cubic(g, x).unwrap_or(None).is_some() {
            let star = cubic_star(g, x).expect("cubic set has a canonical star");
            if includes_star(t, &star) {
                return Some(x);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs;

    fn cube_tangle() -> (Graph, Tangle) {
        let q = graphs::cube();
        let ts = enumerate_tangles(&q, 4);
        assert_eq!(ts.len(), 1);
        (q, ts[0].clone())
    }

    #[test]
    fn cube_has_unique_4tangle_oriented_to_large_sides() {
        let (q, t) = cube_tangle();
        assert!(check_tangle(&q, 4, &t).ok);
        for m in t.members() {
            assert!(m.big.len() > m.small.len());
        }
        assert_eq!(t, internal_tangle(&q).unwrap());
    }

    #[test]
    fn k4_has_no_4tangle() {
        assert!(enumerate_tangles(&graphs::complete(4), 4).is_empty());
        // Directly: any total orientation fails because three triangles cover.
        let k4 = graphs::complete(4);
        let t = Tangle::new(4, Vec::<OrientedSeparation>::new());
        let report = check_tangle(&k4, 4, &t);
        assert!(!report.ok);
        assert!(!report.violations.is_empty());
    }

    #[test]
    fn double_orientation_is_rejected() {
        let q = graphs::cube();
        let s = Separation::new(
            &q,
            VertexSet::singleton(0).union(q.neighbors(0)),
            q.vertices().difference(VertexSet::singleton(0)),
        )
        .unwrap();
        // A candidate whose member map misses every other proper separation.
        let t = Tangle::new(4, s.orientations());
        let report = check_tangle(&q, 4, &t);
        assert!(!report.ok);
        assert!(!report.missing.is_empty());
    }

    #[test]
    fn named_graph_tangle_counts() {
        assert_eq!(enumerate_tangles(&graphs::complete(3), 4).len(), 0);
        assert_eq!(enumerate_tangles(&graphs::complete(4), 4).len(), 0);
        assert_eq!(enumerate_tangles(&graphs::complete(5), 4).len(), 1);
        assert_eq!(enumerate_tangles(&graphs::complete_bipartite(3, 3), 4).len(), 0);
        assert_eq!(enumerate_tangles(&graphs::cube(), 4).len(), 1);
    }

    #[test]
    fn tangle_direction_on_cube() {
        let (q, t) = cube_tangle();
        let c = tangle_direction(&q, &t, q.neighbors(0)).unwrap();
        assert_eq!(c.len(), 4);
        assert!(!c.contains(0));
        let k5 = graphs::complete(5);
        let t5 = enumerate_tangles(&k5, 4).remove(0);
        assert_eq!(tangle_direction(&k5, &t5, VertexSet::from_iter([0, 1, 2])).unwrap(), VertexSet::from_iter([3, 4]));
    }

    #[test]
    fn tangle_direction_rejects_corrupted_input() {
        let (q, t) = cube_tangle();
        // Flip every orientation: now each neighborhood separation points at
        // the singleton component, which is inconsistent.
        let flipped = Tangle::new(4, t.members().map(|m| m.reverse()));
        assert!(tangle_direction(&q, &flipped, q.neighbors(0)).is_err());
    }

    #[test]
    fn lift_along_identity_is_identity() {
        let (q, t) = cube_tangle();
        let id = MinorMap::identity(&q);
        assert_eq!(lift_tangle(&id, &t), t);
    }

    #[test]
    fn forced_orientation_examples() {
        let q = graphs::cube();
        let s = Separation::new(
            &q,
            VertexSet::singleton(0).union(q.neighbors(0)),
            q.vertices().difference(VertexSet::singleton(0)),
        )
        .unwrap();
        let forced = orients_toward_big_side(&q, &s).unwrap();
        assert_eq!(forced.big, q.vertices().difference(VertexSet::singleton(0)));

        let improper = Separation::new(&q, VertexSet::from_iter([0, 1, 2]), q.vertices()).unwrap();
        assert_eq!(orients_toward_big_side(&q, &improper).unwrap().big, q.vertices());

        let gadget = graphs::two_cube_gadget();
        let matching = graphs::two_cube_matching_separation();
        assert!(orients_toward_big_side(&gadget, &matching).is_err());
    }

    #[test]
    fn internal_tangle_of_k5() {
        let k5 = graphs::complete(5);
        let t = internal_tangle(&k5).unwrap();
        assert_eq!(t.member_count(), 0);
        assert!(check_tangle(&k5, 4, &t).ok);
        assert!(internal_tangle(&graphs::complete_bipartite(3, 3)).is_err());
    }

    #[test]
    fn distinguisher_examples() {
        let g = graphs::two_cube_gadget();
        let ts = enumerate_tangles(&g, 4);
        assert_eq!(ts.len(), 2);
        assert!(distinguishers(&g, &ts[0], &ts[0]).is_empty());
        let eff = efficient_distinguishers(&g, &ts[0], &ts[1]);
        assert!(eff.contains(&graphs::two_cube_matching_separation()));
        assert!(!distinguishers(&g, &ts[0], &ts[1]).is_empty());
    }

    #[test]
    fn star_inclusion() {
        let (q, t) = cube_tangle();
        assert!(includes_star(&t, &Star::empty()));
        let star = cubic_star(&q, VertexSet::from_iter([4, 5, 6, 7])).unwrap();
        assert!(includes_star(&t, &star));
        let bad = Star::new(vec![star.elements()[0].reverse()]).unwrap();
        assert!(!includes_star(&t, &bad));
    }

    #[test]
    fn cubic_tangle_detection() {
        let (q, t) = cube_tangle();
        assert!(is_cubic_tangle(&q, &t).is_some());
        let k5 = graphs::complete(5);
        let t5 = enumerate_tangles(&k5, 4).remove(0);
        assert!(is_cubic_tangle(&k5, &t5).is_none());
    }

    #[test]
    fn blown_up_cube_has_unique_cubic_tangle() {
        let g = graphs::blown_up_cube();
        let ts = enumerate_tangles(&g, 4);
        let cubic: Vec<_> = ts.iter().filter(|t| is_cubic_tangle(&g, t).is_some()).collect();
        assert_eq!(cubic.len(), 1);
        assert_eq!(is_cubic_tangle(&g, cubic[0]).unwrap(), VertexSet::from_iter([4, 5, 6, 7]));
    }
}
