//! Claw-freeable nested sets of proper 3-separations (3-chops), the greedy
//! maximal chop, the derived tree-decomposition with torsos and faithful
//! torso minor-maps, and distinguisher insertion.

use crate::connectivity::{is_claw_free, is_internally_4connected};
use crate::error::{Error, Result};
use crate::graph::{disjoint_paths, find_cycle_in, is_k_connected, Graph, VertexSet};
use crate::minors::{compose, is_delta_minor_map, is_faithful, validate_model, MinorMap};
use crate::separations::{
    decomposition_tree, enumerate_separations, interlaces, is_nested, OrientedSeparation,
    Separation, SplittingStar,
};
use crate::tangles::{
    efficient_distinguishers, enumerate_tangles, includes_star, internal_tangle, is_cubic_tangle,
    lift_tangle, Tangle,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A nested, claw-freeable set of proper 3-separations together with a
/// claw-freeing enumeration witnessing it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Chop {
    separations: Vec<Separation>,
    witness: Vec<Separation>,
}

impl Chop {
    pub fn empty() -> Self {
        Chop { separations: Vec::new(), witness: Vec::new() }
    }

    /// Builds a chop from a set of separations, re-deriving the witness.
    pub fn new(g: &Graph, separations: Vec<Separation>) -> Result<Self> {
        for (i, s) in separations.iter().enumerate() {
            for t in &separations[i + 1..] {
                if !is_nested(s, t) {
                    return Err(Error::NotNested);
                }
            }
        }
        let witness = claw_freeing_order(g, &separations)?.ok_or_else(|| {
            Error::ConstructionFailure("separation set is not claw-freeable".into())
        })?;
        let mut separations = separations;
        separations.sort();
        separations.dedup();
        Ok(Chop { separations, witness })
    }

    pub fn separations(&self) -> &[Separation] {
        &self.separations
    }

    /// The claw-freeing enumeration.
    pub fn witness(&self) -> &[Separation] {
        &self.witness
    }

    pub fn len(&self) -> usize {
        self.separations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.separations.is_empty()
    }

    pub fn contains(&self, s: &Separation) -> bool {
        self.separations.binary_search(s).is_ok()
    }
}

/// Separator intersection size of two separations.
fn separator_overlap(s: &Separation, t: &Separation) -> usize {
    s.separator().intersection(t.separator()).len()
}

/// A claw-freeing enumeration of `s`, or `None`. Monotone closure: activate
/// the claw-free members first (canonical order), then repeatedly activate
/// members whose separator meets an activated separator in two or more
/// vertices. Succeeds iff everything activates.
pub fn claw_freeing_order(g: &Graph, s: &[Separation]) -> Result<Option<Vec<Separation>>> {
    let mut pending: Vec<Separation> = s.to_vec();
    pending.sort();
    pending.dedup();
    for sep in &pending {
        if !sep.is_proper() || sep.order() != 3 {
            return Err(Error::NotApplicable);
        }
    }
    let mut active: Vec<Separation> = Vec::new();
    for sep in std::mem::take(&mut pending) {
        if is_claw_free(g, &sep)? {
            active.push(sep);
        } else {
            pending.push(sep);
        }
    }
    loop {
        let mut progressed = false;
        let mut still = Vec::new();
        for sep in std::mem::take(&mut pending) {
            if active.iter().any(|a| separator_overlap(a, &sep) >= 2) {
                active.push(sep);
                progressed = true;
            } else {
                still.push(sep);
            }
        }
        pending = still;
        if pending.is_empty() {
            return Ok(Some(active));
        }
        if !progressed {
            return Ok(None);
        }
    }
}

/// True iff `c ∪ {s}` is again a 3-chop: `s` is new, nested with every
/// member, and claw-free or sharing two separator vertices with a member.
/// Appending at the end of the witness suffices: a non-claw-free separation
/// with no such partner cannot appear anywhere in any enumeration.
pub fn can_extend(g: &Graph, c: &Chop, s: &Separation) -> bool {
    if !s.is_proper() || s.order() != 3 || c.contains(s) {
        return false;
    }
    if !c.separations.iter().all(|t| is_nested(s, t)) {
        return false;
    }
    is_claw_free(g, s).unwrap_or(false)
        || c.separations.iter().any(|t| separator_overlap(s, t) >= 2)
}

/// Greedily grows a maximal 3-chop. The candidate list (all proper
/// 3-separations) is shuffled by the seed; afterwards rounds of `can_extend`
/// run to fixpoint, so the result is maximal and deterministic per seed.
pub fn greedy_maximal_3chop(g: &Graph, seed: u64) -> Result<Chop> {
    if !is_k_connected(g, 3) {
        return Err(Error::NotThreeConnected);
    }
    let mut candidates: Vec<Separation> = enumerate_separations(g, 3)
        .into_iter()
        .filter(|s| s.is_proper() && s.order() == 3)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    candidates.shuffle(&mut rng);
    let mut chop = Chop::empty();
    loop {
        let mut grown = false;
        for s in &candidates {
            if can_extend(g, &chop, s) {
                chop.witness.push(*s);
                chop.separations.push(*s);
                chop.separations.sort();
                grown = true;
            }
        }
        if !grown {
            return Ok(chop);
        }
    }
}

/// Classification of a torso.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum TorsoClass {
    Internally4Connected,
    K4,
    K3,
    /// At most four vertices, not a complete K4/K3.
    Small,
    /// Five or more vertices, not internally 4-connected.
    Other,
}

pub fn classify_torso(t: &Graph) -> TorsoClass {
    let n = t.vertex_count();
    let complete = t.edge_count() == n * (n - 1) / 2;
    match n {
        4 if complete => TorsoClass::K4,
        3 if complete => TorsoClass::K3,
        _ if n >= 5 && is_internally_4connected(t) => TorsoClass::Internally4Connected,
        _ if n <= 4 => TorsoClass::Small,
        _ => TorsoClass::Other,
    }
}

/// One node of a chop's tree-decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionNode {
    pub star: SplittingStar,
    pub bag: VertexSet,
    pub torso: Graph,
    pub map: MinorMap,
    pub class: TorsoClass,
}

/// The tree-decomposition derived from a nested set: one node per splitting
/// star, with bags, torsos, faithful minor-maps and torso classes attached.
#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub nodes: Vec<DecompositionNode>,
    /// `(node, node, separation)` per chop member.
    pub edges: Vec<(usize, usize, Separation)>,
}

/// Builds the full tree-decomposition of a chop, including the faithful torso
/// minor-maps.
pub fn decomposition(g: &Graph, c: &Chop) -> Result<Decomposition> {
    let (stars, edges) = decomposition_tree(g, &c.separations)?;
    let maps = node_maps(g, &c.witness)?;
    let mut nodes = Vec::new();
    for star in stars {
        let bag = star.bag(g);
        let torso = star.torso(g)?;
        let key = star.star.elements().to_vec();
        let map = maps
            .iter()
            .find(|(k, _)| *k == key)
            .ok_or_else(|| Error::ConstructionFailure("missing node map".into()))?
            .1
            .clone();
        if map.codomain != torso {
            return Err(Error::ConstructionFailure("node map codomain differs from torso".into()));
        }
        let class = classify_torso(&torso);
        nodes.push(DecompositionNode { star, bag, torso, map, class });
    }
    Ok(Decomposition { nodes, edges })
}

/// The faithful Δ-minor-map from `g` onto the torso of one splitting star of
/// the chop.
pub fn faithful_torso_map(g: &Graph, c: &Chop, star: &SplittingStar) -> Result<MinorMap> {
    let maps = node_maps(g, &c.witness)?;
    let key = star.star.elements().to_vec();
    maps.into_iter()
        .find(|(k, _)| *k == key)
        .map(|(_, m)| m)
        .ok_or_else(|| Error::ConstructionFailure("star is not a splitting star of the chop".into()))
}

type StarKey = Vec<OrientedSeparation>;

/// Recursive torso-map construction: chop off the first (claw-free) witness
/// element, contract each far side onto its separator triangle through a
/// cycle and three disjoint paths, restrict the remaining witness to either
/// side, and recurse.
fn node_maps(g: &Graph, witness: &[Separation]) -> Result<Vec<(StarKey, MinorMap)>> {
    if witness.is_empty() {
        return Ok(vec![(Vec::new(), MinorMap::identity(g))]);
    }
    let s0 = witness[0];
    if !is_claw_free(g, &s0).map_err(|_| {
        Error::ConstructionFailure("witness head is not classifiable; graph not 3-connected?".into())
    })? {
        return Err(Error::ConstructionFailure("witness head is not claw-free".into()));
    }

    let (stars, _) = decomposition_tree(g, witness)?;
    let mut result = Vec::new();
    let mut side_data: Vec<Option<(Graph, MinorMap, Vec<(StarKey, MinorMap)>)>> = vec![None, None];

    for star in &stars {
        let (side_idx, restricted) = restrict_star(&star.star.elements().to_vec(), &s0)?;
        if side_data[side_idx].is_none() {
            let (keep, far) = if side_idx == 0 {
                (s0.side0(), s0.side1())
            } else {
                (s0.side1(), s0.side0())
            };
            let (sub, psi) = side_contraction(g, keep, far)?;
            let sub_witness = restrict_witness(&witness[1..], &s0, side_idx, &sub)?;
            let sub_maps = node_maps(&sub, &sub_witness)?;
            side_data[side_idx] = Some((sub, psi, sub_maps));
        }
        let (_, psi, sub_maps) = side_data[side_idx].as_ref().unwrap();
        let child = sub_maps
            .iter()
            .find(|(k, _)| *k == restricted)
            .ok_or_else(|| Error::ConstructionFailure("restricted star not found in recursion".into()))?;
        let map = compose(psi, &child.1)?;
        if validate_model(&map).is_err() || !is_faithful(&map) || !is_delta_minor_map(&map) {
            return Err(Error::ConstructionFailure("composed torso map is not a faithful Δ-map".into()));
        }
        result.push((star.star.elements().to_vec(), map));
    }
    Ok(result)
}

/// Determines which side of `s0` a splitting star lives on (0 for `side0`)
/// and its restriction to that side, dropping the orientation of `s0` itself
/// for the two incident nodes.
fn restrict_star(elements: &StarKey, s0: &Separation) -> Result<(usize, StarKey)> {
    let into0 = s0.towards(s0.side0());
    let into1 = s0.towards(s0.side1());
    let (side_idx, keep, without_s0): (usize, VertexSet, Vec<OrientedSeparation>) =
        if elements.contains(&into0) {
            (0, s0.side0(), elements.iter().filter(|e| **e != into0).copied().collect())
        } else if elements.contains(&into1) {
            (1, s0.side1(), elements.iter().filter(|e| **e != into1).copied().collect())
        } else {
            // A far node: the element dominating an orientation of s0 tells
            // the side. `into1 <= e` forces `e.big ⊆ side1`, so the node's
            // bag lies inside side1.
            let mut side = None;
            for e in elements {
                if into1.below_eq(e) {
                    side = Some(1);
                } else if into0.below_eq(e) {
                    side = Some(0);
                }
            }
            let side = side.ok_or_else(|| {
                Error::ConstructionFailure("splitting star does not dominate the witness head".into())
            })?;
            let keep = if side == 0 { s0.side0() } else { s0.side1() };
            (side, keep, elements.clone())
        };
    let mut restricted: StarKey = without_s0
        .iter()
        .map(|e| OrientedSeparation { small: e.small.intersection(keep), big: e.big.intersection(keep) })
        .collect();
    restricted.sort();
    Ok((side_idx, restricted))
}

/// Restricts the tail of the witness to the members on one side of `s0`,
/// keeping the original order.
fn restrict_witness(
    tail: &[Separation],
    s0: &Separation,
    side_idx: usize,
    sub: &Graph,
) -> Result<Vec<Separation>> {
    let (keep, far) = if side_idx == 0 {
        (s0.side0(), s0.side1())
    } else {
        (s0.side1(), s0.side0())
    };
    // A member lies on the keep side iff one of its orientations is strictly
    // below (keep, far): its small side inside keep, its big side over far.
    let into_far = s0.towards(far);
    let mut out = Vec::new();
    for t in tail {
        let on_side = t
            .orientations()
            .iter()
            .any(|o| o.strictly_below(&into_far));
        if on_side {
            let r = Separation::new(sub, t.side0().intersection(keep), t.side1().intersection(keep))?;
            out.push(r);
        }
    }
    Ok(out)
}

/// Contracts the far side of a claw-free proper 3-separation onto the
/// separator triangle: the torso `G[keep] + triangle` is realized by a cycle
/// in the far side linked to the separator by three disjoint paths, split
/// into arcs at the landing points.
fn side_contraction(g: &Graph, keep: VertexSet, far: VertexSet) -> Result<(Graph, MinorMap)> {
    let sep = keep.intersection(far);
    let mut sub = g.induced(keep);
    let sep_list = sep.to_vec();
    for (i, &u) in sep_list.iter().enumerate() {
        for &v in &sep_list[i + 1..] {
            sub.add_edge(u, v);
        }
    }
    if !is_k_connected(&sub, 3) && sub.vertex_count() > 3 {
        return Err(Error::ConstructionFailure("side torso is not 3-connected".into()));
    }

    let far_graph = g.induced(far);
    let cycle = find_cycle_in(g, far)
        .ok_or_else(|| Error::ConstructionFailure("far side of a claw-free separation has no cycle".into()))?;
    let cycle_set = VertexSet::from_iter(cycle.iter().copied());
    let paths = disjoint_paths(&far_graph, sep, cycle_set, sep.len())
        .ok_or_else(|| Error::ConstructionFailure("no disjoint path family to the cycle".into()))?;

    // Canonical cycle orientation: start at the smallest vertex, towards its
    // smaller neighbor on the cycle.
    let cycle = canonical_cycle(&cycle);
    let landings: Vec<usize> = paths.iter().map(|p| *p.last().unwrap()).collect();
    let positions: Vec<usize> = landings
        .iter()
        .map(|&v| cycle.iter().position(|&c| c == v).expect("path lands on the cycle"))
        .collect();

    // Arc starting at each landing position, up to (excluding) the next one.
    let mut order: Vec<usize> = (0..paths.len()).collect();
    order.sort_by_key(|&i| positions[i]);
    let mut assignment = std::collections::BTreeMap::new();
    for v in keep.difference(sep).iter() {
        assignment.insert(v, v);
    }
    for (rank, &i) in order.iter().enumerate() {
        let source = paths[i][0];
        debug_assert!(sep.contains(source));
        let start = positions[i];
        let next = positions[order[(rank + 1) % order.len()]];
        let len = if order.len() == 1 {
            cycle.len()
        } else {
            (next + cycle.len() - start) % cycle.len()
        };
        for step in 0..len {
            assignment.insert(cycle[(start + step) % cycle.len()], source);
        }
        for &v in &paths[i] {
            assignment.insert(v, source);
        }
    }
    let psi = MinorMap::new(g.clone(), sub.clone(), assignment);
    if validate_model(&psi).is_err() || !is_faithful(&psi) {
        return Err(Error::ConstructionFailure("side contraction is not a faithful model".into()));
    }
    Ok((sub, psi))
}

fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let n = cycle.len();
    let start = (0..n).min_by_key(|&i| cycle[i]).unwrap();
    let prev = cycle[(start + n - 1) % n];
    let next = cycle[(start + 1) % n];
    let mut out = Vec::with_capacity(n);
    if next <= prev {
        for i in 0..n {
            out.push(cycle[(start + i) % n]);
        }
    } else {
        for i in 0..n {
            out.push(cycle[(start + n - i) % n]);
        }
    }
    out
}

/// The unique splitting star of `n` included in the tangle.
pub fn tangle_location(g: &Graph, n: &[Separation], t: &Tangle) -> Result<SplittingStar> {
    let stars = crate::separations::splitting_stars(g, n)?;
    let mut found = Vec::new();
    for star in stars {
        if includes_star(t, &star.star) {
            found.push(star);
        }
    }
    if found.len() == 1 {
        Ok(found.remove(0))
    } else {
        Err(Error::NoSuchTorso)
    }
}

/// A claw-free proper 3-separation that efficiently distinguishes two
/// 4-tangles sharing a splitting star of `n`, interlaces that star, and is
/// nested with `n`. Among the efficient distinguishers the one crossing the
/// fewest star elements is chosen; the count is asserted to be zero.
pub fn add_distinguisher(g: &Graph, n: &[Separation], t1: &Tangle, t2: &Tangle) -> Result<Separation> {
    if t1 == t2 {
        return Err(Error::NoDistinguisher);
    }
    let s1 = tangle_location(g, n, t1).map_err(|_| Error::NoDistinguisher)?;
    let s2 = tangle_location(g, n, t2).map_err(|_| Error::NoDistinguisher)?;
    if s1 != s2 {
        return Err(Error::NoDistinguisher);
    }
    let sigma = s1;
    let eff = efficient_distinguishers(g, t1, t2);
    let best = eff
        .iter()
        .min_by_key(|s| {
            let crossings = sigma
                .star
                .elements()
                .iter()
                .filter(|e| !is_nested(s, &e.to_separation()))
                .count();
            (crossings, **s)
        })
        .copied()
        .ok_or(Error::NoDistinguisher)?;
    let crossings = sigma
        .star
        .elements()
        .iter()
        .filter(|e| !is_nested(&best, &e.to_separation()))
        .count();
    assert_eq!(crossings, 0, "an efficient distinguisher crossing no star element exists");
    assert!(is_claw_free(g, &best)?, "distinguishers of 4-tangles are claw-free");
    assert!(interlaces(&best, &sigma.star));
    assert!(n.iter().all(|m| is_nested(&best, m)));
    Ok(best)
}

/// Per-node outcome in a chop-theorem verification.
#[derive(Clone, Debug, Serialize)]
pub struct NodeReport {
    pub bag: VertexSet,
    pub class: TorsoClass,
    pub cubic: bool,
    pub located_tangles: usize,
}

/// Structured verification of the decomposition theorem for a maximal chop.
#[derive(Clone, Debug, Serialize)]
pub struct ChopTheoremReport {
    pub tangle_count: usize,
    pub node_count: usize,
    pub nodes: Vec<NodeReport>,
    /// Index of the node carrying each tangle.
    pub tangle_nodes: Vec<usize>,
}

/// Verifies items (i)-(iv) of the decomposition theorem against the
/// brute-force tangle enumeration. Any failing check is an error, never a
/// silent skip.
pub fn verify_chop_theorem(g: &Graph, c: &Chop) -> Result<ChopTheoremReport> {
    if !is_k_connected(g, 3) {
        return Err(Error::NotThreeConnected);
    }
    // The chop must be maximal.
    for s in enumerate_separations(g, 3) {
        if s.is_proper() && s.order() == 3 && can_extend(g, c, &s) {
            return Err(Error::TheoremViolation(format!("chop is not maximal: {s:?} extends it")));
        }
    }
    // Re-validate claw-freeability from scratch.
    let reordered = claw_freeing_order(g, &c.separations)?;
    if reordered.is_none() {
        return Err(Error::TheoremViolation("chop is not claw-freeable".into()));
    }

    let decomp = decomposition(g, c)?;
    let tangles = enumerate_tangles(g, 4);
    let is_k33 = crate::graph::are_isomorphic(g, &crate::graphs::complete_bipartite(3, 3)).is_some();

    // Locate every tangle at its unique node.
    let mut tangle_nodes = Vec::new();
    for t in &tangles {
        let holders: Vec<usize> = decomp
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, node)| includes_star(t, &node.star.star))
            .map(|(i, _)| i)
            .collect();
        if holders.len() != 1 {
            return Err(Error::TheoremViolation(format!(
                "tangle included in {} splitting stars instead of one",
                holders.len()
            )));
        }
        tangle_nodes.push(holders[0]);
    }
    // (i) distinct tangles in distinct nodes, every pair efficiently
    // distinguished by a chop member.
    for i in 0..tangles.len() {
        for j in i + 1..tangles.len() {
            if tangle_nodes[i] == tangle_nodes[j] {
                return Err(Error::TheoremViolation("two tangles include the same splitting star".into()));
            }
            let eff = efficient_distinguishers(g, &tangles[i], &tangles[j]);
            if !eff.iter().any(|s| c.contains(s)) {
                return Err(Error::TheoremViolation(
                    "no chop member efficiently distinguishes a tangle pair".into(),
                ));
            }
        }
    }
    // (ii) every torso map is a faithful Δ-model.
    for node in &decomp.nodes {
        if validate_model(&node.map).is_err() || !is_faithful(&node.map) || !is_delta_minor_map(&node.map) {
            return Err(Error::TheoremViolation("torso map is not a faithful Δ-model".into()));
        }
    }
    // (iii) and (iv) per node.
    let mut reports = Vec::new();
    for (idx, node) in decomp.nodes.iter().enumerate() {
        let located: Vec<usize> = tangle_nodes
            .iter()
            .enumerate()
            .filter(|(_, &n)| n == idx)
            .map(|(t, _)| t)
            .collect();
        let bag = node.bag;
        let cubic = bag.len() == 4 && crate::minors::is_cubic(g, bag)?.is_some();
        if bag.len() <= 4 {
            if cubic != !located.is_empty() {
                return Err(Error::TheoremViolation(format!(
                    "small bag {bag:?}: cubic={cubic} but {} tangles include its star",
                    located.len()
                )));
            }
            if cubic {
                let t = &tangles[located[0]];
                let m = crate::minors::standard_cube_minor(g, bag)?;
                let lifted = lift_tangle(&m, &internal_tangle(&crate::graphs::cube())?);
                if &lifted != t {
                    return Err(Error::TheoremViolation(
                        "standard cube-minor lift differs from the located tangle".into(),
                    ));
                }
            }
        } else if !is_k33 {
            if node.class != TorsoClass::Internally4Connected {
                return Err(Error::TheoremViolation(format!(
                    "large torso on {bag:?} is not internally 4-connected"
                )));
            }
            if located.len() != 1 {
                return Err(Error::TheoremViolation(format!(
                    "large torso on {bag:?} carries {} tangles instead of one",
                    located.len()
                )));
            }
            let t = &tangles[located[0]];
            let lifted = lift_tangle(&node.map, &internal_tangle(&node.torso)?);
            if &lifted != t {
                return Err(Error::TheoremViolation(
                    "faithful torso map lift differs from the located tangle".into(),
                ));
            }
        }
        reports.push(NodeReport { bag, class: node.class, cubic, located_tangles: located.len() });
    }
    Ok(ChopTheoremReport {
        tangle_count: tangles.len(),
        node_count: decomp.nodes.len(),
        nodes: reports,
        tangle_nodes,
    })
}

/// Convenience: all 4-tangles paired with whether they are cubic.
pub fn tangles_with_cubicness(g: &Graph) -> Vec<(Tangle, Option<VertexSet>)> {
    enumerate_tangles(g, 4)
        .into_iter()
        .map(|t| {
            let c = is_cubic_tangle(g, &t);
            (t, c)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs;

    #[test]
    fn ordered_example_has_unique_claw_freeing_order() {
        let (g, seps) = graphs::ordered_chop_example();
        let order = claw_freeing_order(&g, &seps).unwrap().unwrap();
        assert_eq!(order, seps.to_vec());
        // Exhaustively: s1 must come first, s3 cannot follow s1 directly.
        let perms: Vec<Vec<usize>> = vec![
            vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2],
            vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0],
        ];
        let valid = |perm: &[usize]| -> bool {
            let mut active: Vec<Separation> = Vec::new();
            for &i in perm {
                let s = seps[i];
                let ok = is_claw_free(&g, &s).unwrap()
                    || active.iter().any(|a| separator_overlap(a, &s) >= 2);
                if !ok {
                    return false;
                }
                active.push(s);
            }
            true
        };
        let valid_perms: Vec<_> = perms.iter().filter(|p| valid(p)).collect();
        assert_eq!(valid_perms, vec![&vec![0, 1, 2]]);
    }

    #[test]
    fn claw_free_sets_get_canonical_order() {
        let g = graphs::two_cube_gadget();
        let m = graphs::two_cube_matching_separation();
        let order = claw_freeing_order(&g, &[m]).unwrap().unwrap();
        assert_eq!(order, vec![m]);
    }

    #[test]
    fn donut_set_is_not_claw_freeable() {
        let (g, seps) = graphs::donut_example();
        assert!(claw_freeing_order(&g, &seps).unwrap().is_none());
    }

    #[test]
    fn can_extend_examples() {
        let g = graphs::two_cube_gadget();
        let m = graphs::two_cube_matching_separation();
        assert!(can_extend(&g, &Chop::empty(), &m));

        let q = graphs::cube();
        for s in enumerate_separations(&q, 3) {
            if s.is_proper() {
                assert!(!can_extend(&q, &Chop::empty(), &s), "cube separations are all claw-type");
            }
        }
    }

    #[test]
    fn greedy_chop_on_cube_and_k5_is_empty() {
        assert!(greedy_maximal_3chop(&graphs::cube(), 0).unwrap().is_empty());
        assert!(greedy_maximal_3chop(&graphs::complete(5), 0).unwrap().is_empty());
        assert!(greedy_maximal_3chop(&graphs::complete(3), 0).is_err());
    }

    #[test]
    fn greedy_chop_on_gadget_contains_a_matching_separation() {
        let g = graphs::two_cube_gadget();
        for seed in 0..3 {
            let chop = greedy_maximal_3chop(&g, seed).unwrap();
            assert!(!chop.is_empty());
            // Some member separates the two cubes: separator one endpoint per
            // matching edge.
            let found = chop.separations().iter().any(|s| {
                let sep = s.separator();
                [(0usize, 8usize), (1, 9), (4, 12)]
                    .iter()
                    .all(|&(a, b)| sep.contains(a) != sep.contains(b))
                    && sep.len() == 3
            });
            assert!(found);
        }
    }

    #[test]
    fn decomposition_of_empty_chop_is_single_node() {
        let q = graphs::cube();
        let d = decomposition(&q, &Chop::empty()).unwrap();
        assert_eq!(d.nodes.len(), 1);
        assert_eq!(d.nodes[0].torso, q);
        assert!(is_faithful(&d.nodes[0].map));
    }

    #[test]
    fn decomposition_of_ordered_example() {
        let (g, seps) = graphs::ordered_chop_example();
        let chop = Chop::new(&g, seps.to_vec()).unwrap();
        let d = decomposition(&g, &chop).unwrap();
        assert_eq!(d.nodes.len(), 4);
        // The central torso is the restored K10.
        let central = d.nodes.iter().find(|n| n.bag.len() == 10).unwrap();
        assert_eq!(central.torso.edge_count(), 45);
        assert_eq!(central.class, TorsoClass::Internally4Connected);
        for node in &d.nodes {
            assert!(validate_model(&node.map).is_ok());
            assert!(is_faithful(&node.map));
            assert!(is_delta_minor_map(&node.map));
        }
    }

    #[test]
    fn decomposition_of_gadget_matching_chop_has_two_nodes() {
        let g = graphs::two_cube_gadget();
        let chop = Chop::new(&g, vec![graphs::two_cube_matching_separation()]).unwrap();
        let d = decomposition(&g, &chop).unwrap();
        assert_eq!(d.nodes.len(), 2);
        for node in &d.nodes {
            assert!(validate_model(&node.map).is_ok());
            assert!(is_faithful(&node.map));
            assert!(is_delta_minor_map(&node.map));
            // Each torso contracts the far cube onto the matching endpoints.
            assert_eq!(node.bag.len(), 11);
        }
    }

    #[test]
    fn add_distinguisher_on_gadget() {
        let g = graphs::two_cube_gadget();
        let ts = enumerate_tangles(&g, 4);
        assert_eq!(ts.len(), 2);
        let s = add_distinguisher(&g, &[], &ts[0], &ts[1]).unwrap();
        assert!(is_claw_free(&g, &s).unwrap());
        assert!(add_distinguisher(&g, &[], &ts[0], &ts[0]).is_err());
    }

    #[test]
    fn verify_theorem_on_simple_graphs() {
        for g in [graphs::cube(), graphs::complete(5), graphs::complete(6)] {
            let chop = greedy_maximal_3chop(&g, 0).unwrap();
            let report = verify_chop_theorem(&g, &chop).unwrap();
            assert_eq!(report.tangle_count, 1);
            assert_eq!(report.node_count, 1);
        }
        let k33 = graphs::complete_bipartite(3, 3);
        let chop = greedy_maximal_3chop(&k33, 0).unwrap();
        let report = verify_chop_theorem(&k33, &chop).unwrap();
        assert_eq!(report.tangle_count, 0);
    }

    #[test]
    fn verify_theorem_on_gadget() {
        let g = graphs::two_cube_gadget();
        let chop = greedy_maximal_3chop(&g, 0).unwrap();
        let report = verify_chop_theorem(&g, &chop).unwrap();
        assert_eq!(report.tangle_count, 2);
    }
}
