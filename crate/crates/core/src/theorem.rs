//! End-to-end drivers: reduction to 3-connectivity, the main-theorem witness
//! extractor, the quasi-4-connected star-decomposition, and the universality
//! checker.

use crate::chops::{
    classify_torso, faithful_torso_map, greedy_maximal_3chop, tangle_location, TorsoClass,
};
use crate::connectivity::{is_claw_free, is_internally_4connected, is_quasi_4connected};
use crate::error::{Error, Result};
use crate::graph::{
    are_isomorphic, blocks, components, is_k_connected, neighborhood, Graph, VertexSet,
};
use crate::graphs;
use crate::minors::{
    compose, is_delta_minor_map, is_faithful, standard_cube_minor, validate_model, MinorMap,
};
use crate::separations::{
    enumerate_separations, is_nested, lift_separation, torso, OrientedSeparation, Separation, Star,
};
use crate::tangles::{
    check_tangle, enumerate_tangles, internal_tangle, is_cubic_tangle, lift_tangle,
    tangle_direction, Tangle,
};
use serde::Serialize;
use std::collections::BTreeMap;

/// Witness for the main theorem: an internally 4-connected minor whose unique
/// 4-tangle lifts to the input tangle.
#[derive(Clone, Debug, Serialize)]
pub struct MainWitness {
    pub minor: Graph,
    pub map: MinorMap,
    /// Confirmation that the lift of the minor's unique 4-tangle equals the
    /// input tangle.
    pub tangle_check: bool,
}

/// Locates the block of `g` carrying the tangle and contracts everything else
/// into its cut vertices; then splits the block along a maximal nested set of
/// proper 2-separations and keeps the 3-connected torso the tangle points to.
///
/// Returns the torso, a faithful minor-map onto it, and the tangle
/// transported to the torso (re-checked from scratch).
pub fn reduce_to_3connected(g: &Graph, t: &Tangle) -> Result<(Graph, MinorMap, Tangle)> {
    assert!(t.k >= 3, "reduction expects a tangle of order at least three");
    if is_k_connected(g, 3) {
        return Ok((g.clone(), MinorMap::identity(g), t.clone()));
    }

    // Stage 1: the block carrying the tangle, via tangle directions at the
    // cut vertices (and at the empty set, for disconnected inputs).
    let home = tangle_direction(g, t, VertexSet::EMPTY)?;
    let cuts = crate::graph::cut_vertices(g);
    let mut host_blocks = Vec::new();
    for bl in blocks(g) {
        if !bl.vertices().is_subset(&home) {
            continue;
        }
        let mut ok = true;
        for &v in &cuts {
            let c = tangle_direction(g, t, VertexSet::singleton(v))?;
            if !bl.vertices().difference(VertexSet::singleton(v)).is_subset(&c) {
                ok = false;
                break;
            }
        }
        if ok {
            host_blocks.push(bl);
        }
    }
    if host_blocks.len() != 1 {
        return Err(Error::NoSuchTorso);
    }
    let block = host_blocks.remove(0);

    // Contract each hanging part into its attachment vertex.
    let mut assignment: BTreeMap<usize, usize> = BTreeMap::new();
    let mut hang: BTreeMap<usize, VertexSet> = BTreeMap::new();
    for v in block.vertices().iter() {
        assignment.insert(v, v);
        let mut h = VertexSet::EMPTY;
        for c in components(g, VertexSet::singleton(v)) {
            if c.intersection(block.vertices()).is_empty() && neighborhood(g, c).contains(v) {
                h = h.union(c);
            }
        }
        hang.insert(v, h);
        for u in h.iter() {
            assignment.insert(u, v);
        }
    }
    let m1 = MinorMap::new(g.clone(), block.clone(), assignment);
    if validate_model(&m1).is_err() || !is_faithful(&m1) {
        return Err(Error::NoSuchTorso);
    }
    // Expands a block separation to the ambient graph, tracking which side
    // the block side `one` expands into (separator hangs and unreachable
    // components join the other side).
    let expand = |zero: VertexSet, one: VertexSet| -> (Separation, VertexSet) {
        let sep = zero.intersection(one);
        let mut a = zero;
        let mut b = one;
        for v in block.vertices().iter() {
            let h = hang[&v];
            if sep.contains(v) || (zero.contains(v) && !one.contains(v)) {
                a = a.union(h);
            } else {
                b = b.union(h);
            }
        }
        a = a.union(g.vertices().difference(a.union(b)));
        let s = Separation::new(g, a, b).expect("block expansion is a separation");
        (s, b)
    };
    let t_block = transport(&block, t.k, |u| {
        let (amb, b_side) = expand(u.side0(), u.side1());
        t.orients(&amb).big == b_side
    });
    if !check_tangle(&block, t.k, &t_block).ok {
        return Err(Error::InvalidTangle);
    }

    // Stage 2: a maximal nested set of proper 2-separations of the block.
    let mut n2: Vec<Separation> = Vec::new();
    for s in enumerate_separations(&block, 2) {
        if s.is_proper() && n2.iter().all(|m| is_nested(&s, m)) {
            n2.push(s);
        }
    }
    let sigma = tangle_location(&block, &n2, &t_block)?;
    let h = torso(&block, &sigma.star)?;
    if !is_k_connected(&h, 3) {
        return Err(Error::NoSuchTorso);
    }

    // Contract each far side of the splitting star onto its 2-separator
    // through a connecting path.
    let mut assignment: BTreeMap<usize, usize> = h.vertices().iter().map(|v| (v, v)).collect();
    for e in sigma.star.elements() {
        let sep: Vec<usize> = e.separator().to_vec();
        let (p, q) = (sep[0], sep[1]);
        if block.has_edge(p, q) {
            continue;
        }
        let inside = block.induced(e.small);
        let path = crate::graph::disjoint_paths(&inside, VertexSet::singleton(p), VertexSet::singleton(q), 1)
            .ok_or_else(|| Error::ConstructionFailure("no connecting path through the far side".into()))?;
        for &v in &path[0] {
            if v != q {
                assignment.insert(v, p);
            }
        }
    }
    let m2 = MinorMap::new(block.clone(), h.clone(), assignment);
    if validate_model(&m2).is_err() || !is_faithful(&m2) {
        return Err(Error::ConstructionFailure("torso contraction is not a faithful model".into()));
    }

    let m_total = compose(&m1, &m2)?;
    let t_torso = transport(&h, t.k, |u| {
        let lifted = lift_separation(&block, &n2, &sigma, u).expect("torso separations lift");
        // The lift restricts to `u` on the torso; identify the side expanding
        // the torso side `u.side1()`.
        let (lifted_zero, lifted_one) = if lifted.side1().intersection(h.vertices()) == u.side1() {
            (lifted.side0(), lifted.side1())
        } else {
            (lifted.side1(), lifted.side0())
        };
        let (amb, b_side) = expand(lifted_zero, lifted_one);
        t.orients(&amb).big == b_side
    });
    if !check_tangle(&h, t.k, &t_torso).ok {
        return Err(Error::InvalidTangle);
    }
    Ok((h, m_total, t_torso))
}

/// Builds a tangle on `g` by orienting every proper separation of order below
/// `k` with the given predicate (`true` = towards `side1`).
fn transport(g: &Graph, k: usize, towards_side1: impl Fn(&Separation) -> bool) -> Tangle {
    let members: Vec<OrientedSeparation> = enumerate_separations(g, k - 1)
        .into_iter()
        .filter(Separation::is_proper)
        .map(|s| if towards_side1(&s) { s.towards(s.side1()) } else { s.towards(s.side0()) })
        .collect();
    Tangle::new(k, members)
}

/// Extracts, for a 4-tangle, an internally 4-connected minor whose unique
/// 4-tangle lifts to it: reduce to a 3-connected torso, build a maximal
/// 3-chop, and take the torso (or standard cube-minor) at the splitting star
/// the tangle includes.
pub fn main_witness(g: &Graph, t: &Tangle, seed: u64) -> Result<MainWitness> {
    assert_eq!(t.k, 4);
    if !check_tangle(g, 4, t).ok {
        return Err(Error::InvalidTangle);
    }
    let (g3, m1, t3) = reduce_to_3connected(g, t)?;
    // K3,3 has no 4-tangle, so a valid input can never land here.
    if are_isomorphic(&g3, &graphs::complete_bipartite(3, 3)).is_some() {
        return Err(Error::InvalidTangle);
    }
    let chop = greedy_maximal_3chop(&g3, seed)?;
    let sigma = tangle_location(&g3, chop.separations(), &t3)?;
    let bag = sigma.bag(&g3);
    let (h, phi) = if bag.len() >= 5 {
        let phi = faithful_torso_map(&g3, &chop, &sigma)?;
        (sigma.torso(&g3)?, phi)
    } else if bag.len() == 4 {
        let phi = standard_cube_minor(&g3, bag)?;
        (graphs::cube(), phi)
    } else {
        return Err(Error::NoSuchTorso);
    };
    let map = compose(&m1, &phi)?;
    if !is_internally_4connected(&h) {
        return Err(Error::TheoremViolation("witness minor is not internally 4-connected".into()));
    }
    let lifted = lift_tangle(&map, &internal_tangle(&h)?);
    let tangle_check = &lifted == t;
    if !tangle_check {
        return Err(Error::TheoremViolation("lift of the witness tangle differs from the input".into()));
    }
    Ok(MainWitness { minor: h, map, tangle_check })
}

/// A star-decomposition with one central bag and size-four leaf bags.
#[derive(Clone, Debug, Serialize)]
pub struct StarDecomposition {
    pub central_bag: VertexSet,
    pub central_torso: Graph,
    pub central_class: TorsoClass,
    pub leaf_bags: Vec<VertexSet>,
    pub adhesions: Vec<VertexSet>,
}

/// The star-decomposition of a quasi 4-connected graph: trivial when there is
/// no proper 3-separation; the two-bag split when some proper 3-separation
/// has equal sides; otherwise the star of all size-four sides of a maximal
/// 3-chop. `K3,3` needs its own witness star, built from the bipartition.
pub fn quasi4_star_decomposition(g: &Graph, seed: u64) -> Result<StarDecomposition> {
    if !is_quasi_4connected(g) {
        return Err(Error::NotQuasi4Connected);
    }
    let propers: Vec<Separation> = enumerate_separations(g, 3)
        .into_iter()
        .filter(Separation::is_proper)
        .collect();
    if propers.is_empty() {
        return Ok(StarDecomposition {
            central_bag: g.vertices(),
            central_torso: g.clone(),
            central_class: classify_torso(g),
            leaf_bags: Vec::new(),
            adhesions: Vec::new(),
        });
    }
    if let Some(s) = propers.iter().find(|s| s.side0().len() == s.side1().len()) {
        // Both sides have exactly four vertices; either can be central.
        let star = Star::new(vec![s.towards(s.side0())]).unwrap();
        return Ok(StarDecomposition {
            central_bag: s.side0(),
            central_torso: torso(g, &star)?,
            central_class: classify_torso(&torso(g, &star)?),
            leaf_bags: vec![s.side1()],
            adhesions: vec![s.separator()],
        });
    }
    let elements: Vec<OrientedSeparation> = if let Some(iso) = bipartition_of_k33(g) {
        // The chop recipe breaks down on K3,3 (its maximal 3-chop is empty
        // while K3,3 itself is not internally 4-connected); cut off two
        // vertices of one class instead.
        let (class_p, class_q) = iso;
        let qs: Vec<usize> = class_q.to_vec();
        qs[..2]
            .iter()
            .map(|&q| {
                let small = class_p.union(VertexSet::singleton(q));
                let big = g.vertices().difference(VertexSet::singleton(q));
                Separation::new(g, small, big).unwrap().towards(big)
            })
            .collect()
    } else {
        let chop = greedy_maximal_3chop(g, seed)?;
        chop.separations()
            .iter()
            .map(|s| {
                let (small, big) = if s.side0().len() == 4 {
                    (s.side0(), s.side1())
                } else {
                    assert_eq!(s.side1().len(), 4, "quasi 4-connected: some side has four vertices");
                    (s.side1(), s.side0())
                };
                OrientedSeparation { small, big }
            })
            .collect()
    };
    let star = Star::new(elements.clone()).map_err(|_| {
        Error::TheoremViolation("size-four sides of the chop do not form a star".into())
    })?;
    let central_torso = torso(g, &star)?;
    let central_class = classify_torso(&central_torso);
    if !matches!(
        central_class,
        TorsoClass::Internally4Connected | TorsoClass::K4 | TorsoClass::K3
    ) {
        return Err(Error::TheoremViolation(format!(
            "central torso class {central_class:?} outside the corollary's list"
        )));
    }
    Ok(StarDecomposition {
        central_bag: crate::separations::bag(g, &star),
        central_torso,
        central_class,
        leaf_bags: elements.iter().map(|e| e.small).collect(),
        adhesions: elements.iter().map(|e| e.separator()).collect(),
    })
}

fn bipartition_of_k33(g: &Graph) -> Option<(VertexSet, VertexSet)> {
    are_isomorphic(g, &graphs::complete_bipartite(3, 3))?;
    let v0 = g.vertices().min()?;
    let class_q = g.neighbors(v0);
    let class_p = g.vertices().difference(class_q);
    Some((class_p, class_q))
}

/// Universality record for one 4-tangle.
#[derive(Clone, Debug, Serialize)]
pub struct TangleUniversality {
    pub cubic: Option<VertexSet>,
    /// Bag size of the splitting star included in the tangle, per seed.
    pub bag_sizes: Vec<usize>,
    /// Vertex count of the (isomorphic) internally 4-connected torsos, for
    /// non-cubic tangles.
    pub torso_order: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct UniversalityReport {
    pub trials: usize,
    pub tangles: Vec<TangleUniversality>,
}

/// Checks that across seeded maximal chops, every non-cubic 4-tangle receives
/// pairwise isomorphic internally 4-connected torsos. Cubic tangles are
/// reported but exempt.
pub fn universality_check(g: &Graph, trials: usize, seed: u64) -> Result<UniversalityReport> {
    if trials < 2 {
        return Err(Error::PreconditionUnmet("universality needs at least two trials".into()));
    }
    if !is_k_connected(g, 3) {
        return Err(Error::NotThreeConnected);
    }
    let tangles = enumerate_tangles(g, 4);
    let chops: Vec<_> = (0..trials)
        .map(|i| greedy_maximal_3chop(g, seed.wrapping_add(i as u64)))
        .collect::<Result<_>>()?;
    let mut reports = Vec::new();
    for t in &tangles {
        let cubic = is_cubic_tangle(g, t);
        let mut bag_sizes = Vec::new();
        let mut torsos: Vec<Graph> = Vec::new();
        for chop in &chops {
            let sigma = tangle_location(g, chop.separations(), t)?;
            bag_sizes.push(sigma.bag(g).len());
            if cubic.is_none() {
                let torso = sigma.torso(g)?;
                if !is_internally_4connected(&torso) {
                    return Err(Error::UniversalityViolation(format!(
                        "torso at {:?} of a non-cubic tangle is not internally 4-connected",
                        sigma.bag(g)
                    )));
                }
                torsos.push(torso);
            }
        }
        let torso_order = torsos.first().map(Graph::vertex_count);
        for (i, a) in torsos.iter().enumerate() {
            for b in &torsos[i + 1..] {
                if a.vertex_count() != b.vertex_count() || are_isomorphic(a, b).is_none() {
                    return Err(Error::UniversalityViolation(format!(
                        "non-isomorphic torsos across seeds: orders {} and {}",
                        a.vertex_count(),
                        b.vertex_count()
                    )));
                }
            }
        }
        reports.push(TangleUniversality { cubic, bag_sizes, torso_order });
    }
    Ok(UniversalityReport { trials, tangles: reports })
}

/// Checks, under the stated preconditions (Δ-map onto an internally
/// 4-connected codomain matching the tangle, `s` a claw-free member), that
/// every branch set meets the big side of `s`.
pub fn branch_set_meets_big_side(
    m: &MinorMap,
    t: &Tangle,
    s: &OrientedSeparation,
) -> Result<bool> {
    if validate_model(m).is_err() {
        return Err(Error::PreconditionUnmet("not a valid model".into()));
    }
    if !is_delta_minor_map(m) {
        return Err(Error::PreconditionUnmet("not a Δ-minor-map".into()));
    }
    if !is_internally_4connected(&m.codomain) {
        return Err(Error::PreconditionUnmet("codomain is not internally 4-connected".into()));
    }
    if !is_k_connected(&m.domain, 3) {
        return Err(Error::PreconditionUnmet("domain is not 3-connected".into()));
    }
    if lift_tangle(m, &internal_tangle(&m.codomain)?) != *t {
        return Err(Error::PreconditionUnmet("tangle does not match the codomain tangle".into()));
    }
    if !t.contains(s) {
        return Err(Error::PreconditionUnmet("separation is not a member of the tangle".into()));
    }
    let sep = s.to_separation();
    if !is_claw_free(&m.domain, &sep)? {
        return Err(Error::PreconditionUnmet("separation is not claw-free".into()));
    }
    Ok(m.codomain
        .vertices()
        .iter()
        .all(|h| !m.fiber(h).intersection(s.big).is_empty()))
}

/// The `K5` sanity check from the Kuratowski section: deleting the endpoints
/// of any edge of `K5` leaves a cycle.
pub fn k5_edge_deletion_leaves_cycle() -> bool {
    let k5 = graphs::complete(5);
    k5.edges().iter().all(|&(u, v)| {
        let rest = k5.induced(
            k5.vertices()
                .difference(VertexSet::from_iter([u, v])),
        );
        rest.is_connected() && rest.vertices().iter().all(|w| rest.degree(w) == 2)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs;

    #[test]
    fn reduce_on_3connected_graph_is_identity() {
        let q = graphs::cube();
        let t = enumerate_tangles(&q, 4).remove(0);
        let (h, m, t2) = reduce_to_3connected(&q, &t).unwrap();
        assert_eq!(h, q);
        assert_eq!(t2, t);
        assert!(is_faithful(&m));
    }

    #[test]
    fn reduce_two_cubes_sharing_an_edge() {
        let g = graphs::two_cubes_sharing_edge();
        let ts = enumerate_tangles(&g, 4);
        assert_eq!(ts.len(), 2);
        for t in &ts {
            let (h, m, t2) = reduce_to_3connected(&g, t).unwrap();
            assert_eq!(h.vertex_count(), 8);
            assert!(is_k_connected(&h, 3));
            assert!(are_isomorphic(&h, &graphs::cube()).is_some());
            assert!(check_tangle(&h, 4, &t2).ok);
            assert!(is_faithful(&m));
            // The lift of the transported tangle agrees with the original.
            let lifted = lift_tangle(&m, &t2);
            assert_eq!(&lifted, t);
        }
    }

    #[test]
    fn reduce_two_cubes_sharing_a_vertex() {
        let g = graphs::two_cubes_sharing_vertex();
        let ts = enumerate_tangles(&g, 4);
        assert_eq!(ts.len(), 2);
        for t in &ts {
            let (h, _, t2) = reduce_to_3connected(&g, t).unwrap();
            assert!(are_isomorphic(&h, &graphs::cube()).is_some());
            assert!(check_tangle(&h, 4, &t2).ok);
        }
    }

    #[test]
    fn main_witness_on_cube_and_k5() {
        for g in [graphs::cube(), graphs::complete(5)] {
            let t = enumerate_tangles(&g, 4).remove(0);
            let w = main_witness(&g, &t, 0).unwrap();
            assert!(w.tangle_check);
            assert_eq!(w.minor, g, "empty chop keeps the whole graph");
        }
    }

    #[test]
    fn main_witness_on_blown_up_cube_cubic_tangle() {
        let g = graphs::blown_up_cube();
        let ts = enumerate_tangles(&g, 4);
        let cubic = ts.iter().find(|t| is_cubic_tangle(&g, t).is_some()).unwrap();
        let w = main_witness(&g, cubic, 0).unwrap();
        assert_eq!(w.minor, graphs::cube());
        assert!(w.tangle_check);
    }

    #[test]
    fn quasi4_star_decomposition_examples() {
        let k5 = graphs::complete(5);
        let d = quasi4_star_decomposition(&k5, 0).unwrap();
        assert!(d.leaf_bags.is_empty());
        assert_eq!(d.central_torso, k5);

        let q = graphs::cube();
        let d = quasi4_star_decomposition(&q, 0).unwrap();
        assert!(d.leaf_bags.iter().all(|b| b.len() == 4));
        assert!(d.adhesions.iter().all(|a| a.len() == 3));
        assert!(matches!(
            d.central_class,
            TorsoClass::Internally4Connected | TorsoClass::K4 | TorsoClass::K3
        ));

        assert!(matches!(
            quasi4_star_decomposition(&graphs::two_cube_gadget(), 0),
            Err(Error::NotQuasi4Connected)
        ));
        assert!(matches!(
            quasi4_star_decomposition(&graphs::quasi4_converse_example(), 0),
            Err(Error::NotQuasi4Connected)
        ));
    }

    #[test]
    fn quasi4_on_k33_uses_the_witness_star() {
        let k33 = graphs::complete_bipartite(3, 3);
        let d = quasi4_star_decomposition(&k33, 0).unwrap();
        assert_eq!(d.central_class, TorsoClass::K4);
        assert_eq!(d.leaf_bags.len(), 2);
        assert!(d.leaf_bags.iter().all(|b| b.len() == 4));
    }

    #[test]
    fn universality_on_gadget_and_cube() {
        let g = graphs::two_cube_gadget();
        let r = universality_check(&g, 3, 0).unwrap();
        assert_eq!(r.tangles.len(), 2);
        for tu in &r.tangles {
            assert!(tu.cubic.is_none(), "gadget tangles are non-cubic");
            assert!(tu.torso_order.is_some());
        }

        let q = graphs::cube();
        let r = universality_check(&q, 2, 0).unwrap();
        assert_eq!(r.tangles.len(), 1);
        assert!(r.tangles[0].cubic.is_some());
        assert_eq!(r.tangles[0].bag_sizes, vec![8, 8]);
    }

    #[test]
    fn universality_on_blown_up_cube_reports_cubic_exemption() {
        let g = graphs::blown_up_cube();
        let r = universality_check(&g, 3, 0).unwrap();
        let cubic: Vec<_> = r.tangles.iter().filter(|t| t.cubic.is_some()).collect();
        assert_eq!(cubic.len(), 1);
        for size in &cubic[0].bag_sizes {
            assert!((4..=8).contains(size));
        }
    }

    #[test]
    fn branch_sets_meet_big_side_on_gadget_torso() {
        let g = graphs::two_cube_gadget();
        let chop = crate::chops::Chop::new(&g, vec![graphs::two_cube_matching_separation()]).unwrap();
        let d = crate::chops::decomposition(&g, &chop).unwrap();
        for node in &d.nodes {
            if !is_internally_4connected(&node.torso) {
                continue;
            }
            let t = lift_tangle(&node.map, &internal_tangle(&node.torso).unwrap());
            let s = graphs::two_cube_matching_separation();
            let o = t.orients(&s);
            assert!(branch_set_meets_big_side(&node.map, &t, &o).unwrap());
            // Claw-side members violate the precondition.
            let claw = {
                let small = VertexSet::singleton(2).union(g.neighbors(2));
                Separation::new(&g, small, g.vertices().difference(VertexSet::singleton(2))).unwrap()
            };
            let claw_oriented = t.orients(&claw);
            assert!(matches!(
                branch_set_meets_big_side(&node.map, &t, &claw_oriented),
                Err(Error::PreconditionUnmet(_))
            ));
        }
    }

    #[test]
    fn kuratowski_sanity() {
        assert!(k5_edge_deletion_leaves_cycle());
    }
}
