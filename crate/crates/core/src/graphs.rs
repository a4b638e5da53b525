//! Named graphs and the fixture constructions used across the test corpus.

use crate::graph::{Graph, VertexSet};
use crate::separations::Separation;

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

/// Complete bipartite graph with classes `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::new(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v);
        }
    }
    g
}

/// Cycle on `n` vertices.
pub fn cycle(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for v in 0..n {
        g.add_edge(v, (v + 1) % n);
    }
    g
}

/// The cube, as a bipartite graph with classes `{0,1,2,3}` and `{4,5,6,7}`,
/// partner pairing `i <-> i+4`, and edges `{i, j+4}` for `i != j`.
pub fn cube() -> Graph {
    let mut g = Graph::new(8);
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                g.add_edge(i, j + 4);
            }
        }
    }
    g
}

/// Petersen graph: outer 5-cycle `0..5`, spokes, inner pentagram `5..10`.
pub fn petersen() -> Graph {
    let mut g = Graph::new(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(i + 5, (i + 2) % 5 + 5);
    }
    g
}

/// Two disjoint cubes joined by a 3-edge matching `0-8, 1-9, 4-12`.
///
/// The mixed-class attachment (two class-A vertices and one class-B vertex of
/// each cube) leaves the gadget with no cubic vertex set, so both of its
/// 4-tangles are non-cubic.
pub fn two_cube_gadget() -> Graph {
    let mut g = Graph::new(16);
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                g.add_edge(i, j + 4);
                g.add_edge(8 + i, 8 + j + 4);
            }
        }
    }
    g.add_edge(0, 8);
    g.add_edge(1, 9);
    g.add_edge(4, 12);
    g
}

/// The separation of [`two_cube_gadget`] along the matching, with the first
/// cube as one side.
pub fn two_cube_matching_separation() -> Separation {
    let g = two_cube_gadget();
    let cube1 = VertexSet::from_iter(0..8);
    let rest = VertexSet::from_iter((8..16).chain([0, 1, 4]));
    Separation::new(&g, cube1, rest).expect("matching separation is valid")
}

/// A `K10` with three degree-3 vertices `10, 11, 12` attached at overlapping
/// neighborhoods `{0,1,2}`, `{1,2,3}`, `{2,3,4}`; all edges inside a
/// neighborhood are deleted except `{0,1}`.
///
/// The three attachment separations admit exactly one claw-freeing order.
pub fn ordered_chop_example() -> (Graph, [Separation; 3]) {
    let mut g = complete(10);
    // Grow the universe to 13 vertices.
    let mut full = Graph::new(13);
    for &(u, v) in g.edges() {
        full.add_edge(u, v);
    }
    g = full;
    let nbhds = [[0usize, 1, 2], [1, 2, 3], [2, 3, 4]];
    for (i, nb) in nbhds.iter().enumerate() {
        for &x in nb {
            g.add_edge(10 + i, x);
        }
        for a in 0..3 {
            for b in a + 1..3 {
                if !(i == 0 && nb[a] == 0 && nb[b] == 1) {
                    g.remove_edge(nb[a], nb[b]);
                }
            }
        }
    }
    let seps = [0, 1, 2].map(|i| {
        let small = VertexSet::from_iter(nbhds[i].iter().copied().chain([10 + i]));
        let big = g.vertices().difference(VertexSet::singleton(10 + i));
        Separation::new(&g, small, big).expect("attachment separation is valid")
    });
    (g, seps)
}

/// Six-vertex complete core on `0..6` reduced to its "distance 3" matching,
/// with six degree-3 vertices `6..12` attached at the consecutive triples
/// `{i, i+1, i+2}` (mod 6).
///
/// Every attachment separation has a claw side, so the nested set is not
/// claw-freeable, yet all of its torsos are faithful minors: the central torso
/// is the `K6` restored by contracting each attached vertex into the first
/// vertex of its triple.
pub fn donut_example() -> (Graph, Vec<Separation>) {
    let mut g = Graph::new(12);
    for i in 0..6 {
        g.add_edge(i, (i + 3) % 6);
    }
    for i in 0..6 {
        for d in 0..3 {
            g.add_edge(6 + i, (i + d) % 6);
        }
    }
    let seps = (0..6)
        .map(|i| {
            let small = VertexSet::from_iter([(6 + i), i % 6, (i + 1) % 6, (i + 2) % 6]);
            let big = g.vertices().difference(VertexSet::singleton(6 + i));
            Separation::new(&g, small, big).expect("attachment separation is valid")
        })
        .collect();
    (g, seps)
}

/// Cube with class-A vertices blown up into cliques: vertex `0` becomes the
/// triangle `{0,8,9}` and vertex `1` the `K5` `{1,10,11,12,13}`, each clique
/// joined completely to the original vertex's neighbors in class B.
pub fn blown_up_cube() -> Graph {
    let mut g = Graph::new(14);
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                g.add_edge(i, j + 4);
            }
        }
    }
    let blob0 = [0, 8, 9];
    let blob1 = [1, 10, 11, 12, 13];
    for w in [8, 9] {
        for a in blob0 {
            if a != w {
                g.add_edge(w, a);
            }
        }
        for j in 0..4 {
            if j != 0 {
                g.add_edge(w, j + 4);
            }
        }
    }
    for w in [10, 11, 12, 13] {
        for a in blob1 {
            if a != w {
                g.add_edge(w, a);
            }
        }
        for j in 0..4 {
            if j != 1 {
                g.add_edge(w, j + 4);
            }
        }
    }
    g
}

/// `K6` core with two degree-3 vertices `6, 7` sharing the neighborhood
/// `{0,1,2}`: it has a star-decomposition with internally 4-connected central
/// torso and size-4 leaf bags, but it is not quasi 4-connected.
pub fn quasi4_converse_example() -> Graph {
    let mut g = complete(6);
    let mut full = Graph::new(8);
    for &(u, v) in g.edges() {
        full.add_edge(u, v);
    }
    g = full;
    for r in [6, 7] {
        for x in [0, 1, 2] {
            g.add_edge(r, x);
        }
    }
    g
}

/// Two cubes sharing the single edge `{0, 5}`: 2-connected but not
/// 3-connected.
pub fn two_cubes_sharing_edge() -> Graph {
    let mut g = Graph::new(14);
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                g.add_edge(i, j + 4);
            }
        }
    }
    // Second cube: reuse the edge 0-5 (0 in class A, 5 = 1+4 in class B);
    // remaining six vertices get fresh ids 8..14.
    let relabel = |v: usize| -> usize {
        match v {
            0 => 0,
            5 => 5,
            1 => 8,
            2 => 9,
            3 => 10,
            4 => 11,
            6 => 12,
            _ => 13,
        }
    };
    for i in 0..4usize {
        for j in 0..4usize {
            if i != j {
                g.add_edge(relabel(i), relabel(j + 4));
            }
        }
    }
    g
}

/// Two cubes sharing the single vertex `0`.
pub fn two_cubes_sharing_vertex() -> Graph {
    let mut g = Graph::new(15);
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                g.add_edge(i, j + 4);
            }
        }
    }
    let relabel = |v: usize| -> usize {
        if v == 0 {
            0
        } else {
            7 + v
        }
    };
    for i in 0..4usize {
        for j in 0..4usize {
            if i != j {
                g.add_edge(relabel(i), relabel(j + 4));
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_k_connected;

    #[test]
    fn cube_shape() {
        let q = cube();
        assert_eq!(q.vertex_count(), 8);
        assert_eq!(q.edge_count(), 12);
        assert!(q.vertices().iter().all(|v| q.degree(v) == 3));
        assert!(!q.has_edge(0, 4));
    }

    #[test]
    fn petersen_shape() {
        let p = petersen();
        assert_eq!(p.vertex_count(), 10);
        assert_eq!(p.edge_count(), 15);
        assert!(is_k_connected(&p, 3));
    }

    #[test]
    fn fixtures_are_3_connected() {
        assert!(is_k_connected(&two_cube_gadget(), 3));
        assert!(is_k_connected(&ordered_chop_example().0, 3));
        assert!(is_k_connected(&donut_example().0, 3));
        assert!(is_k_connected(&blown_up_cube(), 3));
        assert!(is_k_connected(&quasi4_converse_example(), 3));
    }

    #[test]
    fn shared_edge_fixture_is_2_but_not_3_connected() {
        let g = two_cubes_sharing_edge();
        assert!(is_k_connected(&g, 2));
        assert!(!is_k_connected(&g, 3));
    }
}
