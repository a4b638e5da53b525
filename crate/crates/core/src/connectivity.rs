//! Classification predicates: the claw/two-cycles dichotomy for proper
//! 3-separations of 3-connected graphs, internal 4-connectivity, and quasi
//! 4-connectivity.

use crate::error::{Error, Result};
use crate::graph::{components, find_cycle_in, is_k_connected, Graph, VertexSet};
use crate::separations::{enumerate_separations, Separation};
use serde::Serialize;

/// The dichotomy for a proper 3-separation of a 3-connected graph.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum SepClass {
    /// One side induces a claw with leaf set equal to the separator; the
    /// other side includes a cycle. Carries the claw side.
    Claw { claw_side: VertexSet },
    /// Both sides include cycles.
    TwoCycles,
}

fn side_is_claw(g: &Graph, side: VertexSet, sep: VertexSet) -> bool {
    if side.len() != 4 {
        return false;
    }
    let center = match side.difference(sep).min() {
        Some(c) => c,
        None => return false,
    };
    g.neighbors(center).intersection(side) == sep
        && sep.iter().all(|u| g.neighbors(u).intersection(sep).is_empty())
}

/// Classifies a proper 3-separation of a 3-connected graph as claw-type or
/// two-cycles-type. Detection is structural (degree pattern of the side), and
/// the cycle claims of the dichotomy are re-checked as assertions.
pub fn classify_3sep(g: &Graph, s: &Separation) -> Result<SepClass> {
    if !is_k_connected(g, 3) || !s.is_proper() || s.order() != 3 {
        return Err(Error::NotApplicable);
    }
    let sep = s.separator();
    let claw0 = side_is_claw(g, s.side0(), sep);
    let claw1 = side_is_claw(g, s.side1(), sep);
    assert!(!(claw0 && claw1), "two claw sides cannot occur in a 3-connected graph");
    if claw0 || claw1 {
        let (claw_side, other) = if claw0 { (s.side0(), s.side1()) } else { (s.side1(), s.side0()) };
        assert!(find_cycle_in(g, claw_side).is_none());
        assert!(find_cycle_in(g, other).is_some(), "the non-claw side must include a cycle");
        Ok(SepClass::Claw { claw_side })
    } else {
        assert!(
            find_cycle_in(g, s.side0()).is_some() && find_cycle_in(g, s.side1()).is_some(),
            "a proper 3-separation of a 3-connected graph without a claw side has cycles on both sides"
        );
        Ok(SepClass::TwoCycles)
    }
}

/// True iff the separation satisfies the two-cycles case of the dichotomy.
pub fn is_claw_free(g: &Graph, s: &Separation) -> Result<bool> {
    Ok(matches!(classify_3sep(g, s)?, SepClass::TwoCycles))
}

/// 3-connected, more than four vertices, and every disconnecting 3-set is
/// independent, leaves exactly two components, and cuts off a single vertex.
pub fn is_internally_4connected(g: &Graph) -> bool {
    if g.vertex_count() <= 4 || !is_k_connected(g, 3) {
        return false;
    }
    let verts = g.vertices().to_vec();
    let m = verts.len();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let x = VertexSet::from_iter([verts[a], verts[b], verts[c]]);
                let comps = components(g, x);
                if comps.len() < 2 {
                    continue;
                }
                let independent = x.iter().all(|u| g.neighbors(u).intersection(x).is_empty());
                if !independent || comps.len() != 2 || comps.iter().all(|c| c.len() > 1) {
                    return false;
                }
            }
        }
    }
    true
}

/// 3-connected, more than four vertices, and every 3-separation has a side of
/// at most four vertices.
pub fn is_quasi_4connected(g: &Graph) -> bool {
    if g.vertex_count() <= 4 || !is_k_connected(g, 3) {
        return false;
    }
    enumerate_separations(g, 3)
        .into_iter()
        .filter(Separation::is_proper)
        .all(|s| s.side0().len().min(s.side1().len()) <= 4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs;

    #[test]
    fn cube_neighborhood_separations_are_claws() {
        let q = graphs::cube();
        let small = VertexSet::singleton(0).union(q.neighbors(0));
        let s = Separation::new(&q, small, q.vertices().difference(VertexSet::singleton(0))).unwrap();
        assert_eq!(classify_3sep(&q, &s).unwrap(), SepClass::Claw { claw_side: small });
        assert!(!is_claw_free(&q, &s).unwrap());
    }

    #[test]
    fn matching_separation_has_two_cycles() {
        let g = graphs::two_cube_gadget();
        let s = graphs::two_cube_matching_separation();
        assert_eq!(classify_3sep(&g, &s).unwrap(), SepClass::TwoCycles);
        assert!(is_claw_free(&g, &s).unwrap());
    }

    #[test]
    fn k4_has_no_classifiable_separation() {
        let k4 = graphs::complete(4);
        let v = k4.vertices();
        let s = Separation::new(&k4, VertexSet::from_iter([0, 1, 2]), v).unwrap();
        assert!(matches!(classify_3sep(&k4, &s), Err(Error::NotApplicable)));
    }

    #[test]
    fn internal_4connectivity_of_named_graphs() {
        assert!(is_internally_4connected(&graphs::complete(5)));
        assert!(is_internally_4connected(&graphs::cube()));
        assert!(is_internally_4connected(&graphs::petersen()));
        assert!(!is_internally_4connected(&graphs::complete_bipartite(3, 3)));
        assert!(!is_internally_4connected(&graphs::complete(4)));
    }

    #[test]
    fn quasi_4connectivity() {
        assert!(is_quasi_4connected(&graphs::cube()));
        assert!(is_quasi_4connected(&graphs::complete(5)));
        assert!(is_quasi_4connected(&graphs::complete_bipartite(3, 3)));
        // The matching separation splits the gadget 8 / 11.
        let g = graphs::two_cube_gadget();
        let s = graphs::two_cube_matching_separation();
        assert_eq!(s.side0().len().min(s.side1().len()), 8);
        assert_eq!(s.side0().len().max(s.side1().len()), 11);
        assert!(!is_quasi_4connected(&g));
    }

    #[test]
    fn implication_chain_on_fixtures() {
        for g in [
            graphs::cube(),
            graphs::complete(5),
            graphs::complete(6),
            graphs::petersen(),
            graphs::complete_bipartite(3, 3),
            graphs::two_cube_gadget(),
            graphs::blown_up_cube(),
        ] {
            if is_internally_4connected(&g) {
                assert!(is_quasi_4connected(&g));
            }
            if is_quasi_4connected(&g) {
                assert!(is_k_connected(&g, 3));
            }
        }
    }
}
