//! Minor-maps `φ: G ≽ H`, induced separations, faithful and Δ-minor
//! predicates, cubic vertex sets, and standard cube-minors.

use crate::error::{Error, Result};
use crate::graph::{components, neighborhood, Graph, VertexSet};
use crate::graphs;
use crate::separations::OrientedSeparation;
use serde::Serialize;
use std::collections::BTreeMap;

/// A minor-map: a support set `U ⊆ V(G)` together with a surjection onto
/// `V(H)` whose fibers are the branch sets of a model of `H` in `G`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MinorMap {
    pub domain: Graph,
    pub codomain: Graph,
    pub support: VertexSet,
    pub assignment: BTreeMap<usize, usize>,
}

impl MinorMap {
    pub fn new(domain: Graph, codomain: Graph, assignment: BTreeMap<usize, usize>) -> Self {
        let support = VertexSet::from_iter(assignment.keys().copied());
        MinorMap { domain, codomain, support, assignment }
    }

    pub fn identity(g: &Graph) -> Self {
        let assignment = g.vertices().iter().map(|v| (v, v)).collect();
        MinorMap::new(g.clone(), g.clone(), assignment)
    }

    /// The branch set `f⁻¹(h)`.
    pub fn fiber(&self, h: usize) -> VertexSet {
        VertexSet::from_iter(
            self.assignment
                .iter()
                .filter(|&(_, &img)| img == h)
                .map(|(&v, _)| v),
        )
    }

    pub fn fibers(&self) -> BTreeMap<usize, VertexSet> {
        let mut f: BTreeMap<usize, VertexSet> = BTreeMap::new();
        for (&v, &h) in &self.assignment {
            f.entry(h).or_insert(VertexSet::EMPTY).insert(v);
        }
        f
    }
}

/// Checks all minor-map invariants; on failure the violations are listed.
pub fn validate_model(m: &MinorMap) -> std::result::Result<(), Vec<String>> {
    let mut reasons = Vec::new();
    if !m.support.is_subset(&m.domain.vertices()) {
        reasons.push("support is not a subset of the domain vertices".into());
    }
    let fibers = m.fibers();
    for h in m.codomain.vertices().iter() {
        match fibers.get(&h) {
            None => reasons.push(format!("no branch set for codomain vertex {h}")),
            Some(f) => {
                if components(&m.domain.induced(*f), VertexSet::EMPTY).len() != 1 {
                    reasons.push(format!("branch set of {h} is not connected"));
                }
            }
        }
    }
    for (&v, &h) in &m.assignment {
        if !m.codomain.vertices().contains(h) {
            reasons.push(format!("vertex {v} maps outside the codomain"));
        }
    }
    for &(x, y) in m.codomain.edges() {
        let (fx, fy) = (fibers.get(&x), fibers.get(&y));
        if let (Some(fx), Some(fy)) = (fx, fy) {
            let realized = fx
                .iter()
                .any(|u| !m.domain.neighbors(u).intersection(*fy).is_empty());
            if !realized {
                reasons.push(format!("codomain edge {x}-{y} has no realizing edge"));
            }
        }
    }
    if reasons.is_empty() {
        Ok(())
    } else {
        Err(reasons)
    }
}

/// Faithful iff every codomain vertex lies in its own branch set.
pub fn is_faithful(m: &MinorMap) -> bool {
    m.codomain
        .vertices()
        .iter()
        .all(|h| m.assignment.get(&h) == Some(&h))
}

/// Δ-minor-map iff every codomain vertex with a branch set of more than one
/// vertex lies in a triangle of the codomain.
pub fn is_delta_minor_map(m: &MinorMap) -> bool {
    m.fibers().iter().all(|(&h, f)| {
        if f.len() <= 1 {
            return true;
        }
        let nb = m.codomain.neighbors(h);
        let in_triangle = nb
            .iter()
            .any(|x| !m.codomain.neighbors(x).intersection(nb).is_empty());
        in_triangle
    })
}

/// The separation of the codomain induced by an oriented separation of the
/// domain: each side consists of the codomain vertices whose branch set meets
/// the corresponding side. The order never exceeds the order of `s`.
pub fn induced_separation(m: &MinorMap, s: &OrientedSeparation) -> OrientedSeparation {
    let mut small = VertexSet::EMPTY;
    let mut big = VertexSet::EMPTY;
    for (h, f) in m.fibers() {
        if !f.intersection(s.small).is_empty() {
            small.insert(h);
        }
        if !f.intersection(s.big).is_empty() {
            big.insert(h);
        }
        if f.intersection(s.small.union(s.big)) == VertexSet::EMPTY {
            // Branch sets always meet A ∪ B = V(G) ∩ support side; a fiber
            // outside both sides cannot occur for a separation of the domain.
            unreachable!("branch set misses both sides of a separation");
        }
    }
    let out = OrientedSeparation { small, big };
    debug_assert!(out.order() <= s.order());
    out
}

/// Witness that a 4-set is cubic: for every vertex `v` of the set, a chosen
/// component whose neighborhood is exactly the other three vertices.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CubicWitness {
    pub x: VertexSet,
    /// Keyed by the excluded vertex `v ∈ x`; the component has neighborhood
    /// `x − v`. Each entry is the component containing the smallest vertex id
    /// among the eligible ones.
    pub component_choice: BTreeMap<usize, VertexSet>,
}

/// Decides whether the neighborhoods of the components of `g − x` realize
/// exactly all four 3-subsets of `x`.
pub fn is_cubic(g: &Graph, x: VertexSet) -> Result<Option<CubicWitness>> {
    if x.len() != 4 {
        return Err(Error::WrongSize(x.len()));
    }
    let comps = components(g, x);
    let mut choice: BTreeMap<usize, VertexSet> = BTreeMap::new();
    for comp in comps {
        let nb = neighborhood(g, comp);
        if nb.len() != 3 || !nb.is_subset(&x) {
            return Ok(None);
        }
        let excluded = x.difference(nb).min().expect("x minus a 3-subset is a single vertex");
        choice.entry(excluded).or_insert(comp); // components arrive smallest-first
    }
    if choice.len() == 4 {
        Ok(Some(CubicWitness { x, component_choice: choice }))
    } else {
        Ok(None)
    }
}

/// The standard cube-minor at a cubic set `x`: class-A branch sets are the
/// witness components, class-B branch sets the singletons of `x`. The
/// codomain is the fixed cube of [`graphs::cube`], with the `i`-th smallest
/// vertex of `x` as cube vertex `i + 4`.
pub fn standard_cube_minor(g: &Graph, x: VertexSet) -> Result<MinorMap> {
    let witness = is_cubic(g, x)?.ok_or(Error::NotCubic)?;
    let xs: Vec<usize> = x.to_vec();
    let mut assignment = BTreeMap::new();
    for (i, &xv) in xs.iter().enumerate() {
        assignment.insert(xv, i + 4);
        for u in witness.component_choice[&xv].iter() {
            assignment.insert(u, i);
        }
    }
    let m = MinorMap::new(g.clone(), graphs::cube(), assignment);
    debug_assert!(validate_model(&m).is_ok());
    Ok(m)
}

/// Composition of `m1: G ≽ H` and `m2: H ≽ K`.
pub fn compose(m1: &MinorMap, m2: &MinorMap) -> Result<MinorMap> {
    if m1.codomain != m2.domain {
        return Err(Error::DomainMismatch);
    }
    let mut assignment = BTreeMap::new();
    for (&v, &h) in &m1.assignment {
        if let Some(&k) = m2.assignment.get(&h) {
            assignment.insert(v, k);
        }
    }
    let m = MinorMap::new(m1.domain.clone(), m2.codomain.clone(), assignment);
    debug_assert!(validate_model(&m).is_ok(), "composite of valid models must be valid");
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs;
    use crate::separations::Separation;

    #[test]
    fn identity_is_valid_faithful_delta() {
        let q = graphs::cube();
        let id = MinorMap::identity(&q);
        assert!(validate_model(&id).is_ok());
        assert!(is_faithful(&id));
        assert!(is_delta_minor_map(&id));
    }

    #[test]
    fn contracting_one_cube_edge_gives_valid_model() {
        let q = graphs::cube();
        // Contract the edge 0-5 onto vertex 0: the codomain is the cube with
        // 5 removed and 5's other neighbors joined to 0.
        let mut h = q.induced(q.vertices().difference(VertexSet::singleton(5)));
        for w in q.neighbors(5).iter() {
            if w != 0 {
                h.add_edge(0, w);
            }
        }
        let mut assignment: BTreeMap<usize, usize> = q
            .vertices()
            .iter()
            .filter(|&v| v != 5)
            .map(|v| (v, v))
            .collect();
        assignment.insert(5, 0);
        let m = MinorMap::new(q.clone(), h, assignment);
        assert!(validate_model(&m).is_ok());
        assert!(is_faithful(&m));

        // A disconnected fiber is rejected: 4 is adjacent to neither 0 nor 5.
        let mut bad_assignment = m.assignment.clone();
        bad_assignment.insert(4, 0);
        let bad_codomain = m.codomain.induced(m.codomain.vertices().difference(VertexSet::singleton(4)));
        let bad = MinorMap::new(q, bad_codomain, bad_assignment);
        assert!(validate_model(&bad).is_err());
    }

    #[test]
    fn fresh_relabeling_is_not_faithful() {
        let q = graphs::cube();
        // Standard cube-minor of the cube at a class: codomain ids are the
        // fixed cube ids, branch sets live elsewhere.
        let m = standard_cube_minor(&q, VertexSet::from_iter([4, 5, 6, 7])).unwrap();
        // Class-B cube vertices map to themselves here, but class-A vertices
        // map components; faithfulness fails in general on relabeled inputs.
        let shifted = {
            let mut g = Graph::new(9);
            for &(u, v) in q.edges() {
                g.add_edge(u + 1, v + 1);
            }
            g.induced(VertexSet::from_iter(1..9))
        };
        let m2 = MinorMap::new(
            shifted.clone(),
            graphs::cube(),
            shifted.vertices().iter().map(|v| (v, v - 1)).collect(),
        );
        assert!(validate_model(&m2).is_ok());
        assert!(!is_faithful(&m2));
        let _ = m;
    }

    #[test]
    fn delta_fails_on_claw_codomain() {
        // Contract K4 onto a claw: center fiber of size > 1, no triangle.
        let mut g = Graph::new(5);
        for &(u, v) in &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 4)] {
            g.add_edge(u, v);
        }
        let claw = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        // Branch sets: {0,1} -> 0 (uses edge 0-1), {2} -> 1, {3} -> 2, {4} -> 3.
        let mut assignment = BTreeMap::new();
        assignment.insert(0, 0);
        assignment.insert(1, 0);
        assignment.insert(2, 1);
        assignment.insert(3, 2);
        assignment.insert(4, 3);
        let m = MinorMap::new(g, claw, assignment);
        assert!(validate_model(&m).is_ok());
        assert!(!is_delta_minor_map(&m));
    }

    #[test]
    fn induced_separation_identity_and_improper() {
        let q = graphs::cube();
        let id = MinorMap::identity(&q);
        let s = Separation::new(
            &q,
            VertexSet::singleton(0).union(q.neighbors(0)),
            q.vertices().difference(VertexSet::singleton(0)),
        )
        .unwrap();
        for o in s.orientations() {
            assert_eq!(induced_separation(&id, &o), o);
        }
        let improper = OrientedSeparation { small: VertexSet::from_iter([0, 1]), big: q.vertices() };
        let img = induced_separation(&id, &improper);
        assert_eq!(img.big, q.vertices());
    }

    #[test]
    fn cubic_classes_of_the_cube() {
        let q = graphs::cube();
        for class in [VertexSet::from_iter([0, 1, 2, 3]), VertexSet::from_iter([4, 5, 6, 7])] {
            let w = is_cubic(&q, class).unwrap().expect("bipartition classes are cubic");
            assert_eq!(w.component_choice.len(), 4);
        }
        // K5: one component with a size-4 neighborhood.
        let k5 = graphs::complete(5);
        assert!(is_cubic(&k5, VertexSet::from_iter([0, 1, 2, 3])).unwrap().is_none());
        // A cube face is not cubic.
        assert!(is_cubic(&q, VertexSet::from_iter([0, 1, 4, 5])).unwrap().is_none());
        assert!(matches!(is_cubic(&q, VertexSet::from_iter([0, 1, 2])), Err(Error::WrongSize(3))));
    }

    #[test]
    fn standard_cube_minor_on_cube_class() {
        let q = graphs::cube();
        let m = standard_cube_minor(&q, VertexSet::from_iter([4, 5, 6, 7])).unwrap();
        assert!(validate_model(&m).is_ok());
        assert_eq!(m.codomain, graphs::cube());
        // Components of cube minus a class are singletons.
        for i in 0..4 {
            assert_eq!(m.fiber(i).len(), 1);
        }
        assert!(matches!(standard_cube_minor(&graphs::complete(5), VertexSet::from_iter([0, 1, 2, 3])), Err(Error::NotCubic)));
    }

    #[test]
    fn standard_cube_minor_with_blown_up_vertex() {
        let g = graphs::blown_up_cube();
        let m = standard_cube_minor(&g, VertexSet::from_iter([4, 5, 6, 7])).unwrap();
        assert!(validate_model(&m).is_ok());
        // The triangle blob {0,8,9} is one branch set, the K5 blob another.
        let sizes: Vec<usize> = (0..4).map(|i| m.fiber(i).len()).collect();
        let mut sorted = sizes.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 1, 3, 5]);
    }

    #[test]
    fn composition_with_identity() {
        let q = graphs::cube();
        let m = standard_cube_minor(&q, VertexSet::from_iter([4, 5, 6, 7])).unwrap();
        let idq = MinorMap::identity(&q);
        let idc = MinorMap::identity(&graphs::cube());
        assert_eq!(compose(&idq, &m).unwrap(), m);
        assert_eq!(compose(&m, &idc).unwrap(), m);
        assert!(compose(&m, &m).is_err());
    }

    #[test]
    fn composition_of_two_contractions() {
        let q = graphs::cube();
        let contract = |g: &Graph, keep: usize, gone: usize| -> MinorMap {
            let mut h = g.induced(g.vertices().difference(VertexSet::singleton(gone)));
            for w in g.neighbors(gone).iter() {
                if w != keep && h.vertices().contains(w) {
                    h.add_edge(keep, w);
                }
            }
            let mut assignment: BTreeMap<usize, usize> =
                g.vertices().iter().filter(|&v| v != gone).map(|v| (v, v)).collect();
            assignment.insert(gone, keep);
            MinorMap::new(g.clone(), h, assignment)
        };
        let m1 = contract(&q, 0, 5);
        let m2 = contract(&m1.codomain, 0, 6);
        let c = compose(&m1, &m2).unwrap();
        assert!(validate_model(&c).is_ok());
        assert_eq!(c.fiber(0), VertexSet::from_iter([0, 5, 6]));
    }
}
