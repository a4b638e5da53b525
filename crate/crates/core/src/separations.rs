//! Separations, orientations, nestedness, stars, splitting stars, bags,
//! torsos, and lifting separations from torsos back to the ambient graph.

use crate::error::{Error, Result};
use crate::graph::{components, Graph, VertexSet};
use serde::Serialize;

/// An unordered separation `{A, B}` in canonical storage: the side containing
/// the smallest vertex id outside the separator comes first; ties (improper
/// separations with no such vertex) are resolved by size, then lexicographic
/// order of the masks.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Separation {
    side0: VertexSet,
    side1: VertexSet,
}

impl Separation {
    /// Validates the cover and cross-edge invariants and stores canonically.
    pub fn new(g: &Graph, a: VertexSet, b: VertexSet) -> Result<Self> {
        if a.union(b) != g.vertices() {
            return Err(Error::InvalidSeparation("sides do not cover the vertex set".into()));
        }
        if !a.is_subset(&g.vertices()) || !b.is_subset(&g.vertices()) {
            return Err(Error::InvalidSeparation("side contains foreign vertices".into()));
        }
        let sep = a.intersection(b);
        for u in a.difference(sep).iter() {
            if !g.neighbors(u).intersection(b.difference(sep)).is_empty() {
                return Err(Error::InvalidSeparation(format!("edge from {u} crosses the separation")));
            }
        }
        Ok(Self::canonical(a, b))
    }

    fn canonical(a: VertexSet, b: VertexSet) -> Self {
        let sep = a.intersection(b);
        let a_rest = a.difference(sep);
        let b_rest = b.difference(sep);
        let first_a = match (a_rest.min(), b_rest.min()) {
            (Some(x), Some(y)) => x < y,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => (a.len(), a.0) <= (b.len(), b.0),
        };
        if first_a {
            Separation { side0: a, side1: b }
        } else {
            Separation { side0: b, side1: a }
        }
    }

    pub fn side0(&self) -> VertexSet {
        self.side0
    }

    pub fn side1(&self) -> VertexSet {
        self.side1
    }

    /// The separator `A ∩ B`.
    pub fn separator(&self) -> VertexSet {
        self.side0.intersection(self.side1)
    }

    /// `|A ∩ B|`.
    pub fn order(&self) -> usize {
        self.separator().len()
    }

    /// Proper iff both `A \ B` and `B \ A` are nonempty.
    pub fn is_proper(&self) -> bool {
        !self.side0.difference(self.side1).is_empty() && !self.side1.difference(self.side0).is_empty()
    }

    /// The two orientations, `(side0, side1)` first.
    pub fn orientations(&self) -> [OrientedSeparation; 2] {
        [
            OrientedSeparation { small: self.side0, big: self.side1 },
            OrientedSeparation { small: self.side1, big: self.side0 },
        ]
    }

    /// The orientation of `self` pointing towards `big`.
    pub fn towards(&self, big: VertexSet) -> OrientedSeparation {
        debug_assert!(big == self.side0 || big == self.side1);
        if big == self.side1 {
            OrientedSeparation { small: self.side0, big: self.side1 }
        } else {
            OrientedSeparation { small: self.side1, big: self.side0 }
        }
    }
}

/// An oriented separation `(A, B)`, read as pointing towards `B`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct OrientedSeparation {
    pub small: VertexSet,
    pub big: VertexSet,
}

impl OrientedSeparation {
    pub fn separator(&self) -> VertexSet {
        self.small.intersection(self.big)
    }

    pub fn order(&self) -> usize {
        self.separator().len()
    }

    pub fn reverse(&self) -> OrientedSeparation {
        OrientedSeparation { small: self.big, big: self.small }
    }

    pub fn to_separation(&self) -> Separation {
        Separation::canonical(self.small, self.big)
    }

    /// `(A,B) <= (C,D)` in the separation order: `A ⊆ C` and `B ⊇ D`.
    /// (Distinct from the derived `Ord`, which is the storage order.)
    pub fn below_eq(&self, other: &OrientedSeparation) -> bool {
        self.small.is_subset(&other.small) && other.big.is_subset(&self.big)
    }

    pub fn strictly_below(&self, other: &OrientedSeparation) -> bool {
        self.below_eq(other) && self != other
    }
}

/// Every separation of `g` of order at most `max_order`, each exactly once in
/// canonical order. For each candidate separator `X` and each bipartition of
/// the components of `g − X`, the separation `{L ∪ X, R ∪ X}` is emitted;
/// improper separations (one part empty) are included.
///
/// A separator leaving `c` components contributes `2^(c-1)` bipartitions, so
/// this is only meant for small graphs (roughly a dozen vertices).
pub fn enumerate_separations(g: &Graph, max_order: usize) -> Vec<Separation> {
    let mut out = std::collections::BTreeSet::new();
    let verts = g.vertices().to_vec();
    let mut stack = vec![VertexSet::EMPTY];
    // All subsets of size <= max_order.
    fn subsets(verts: &[usize], start: usize, cur: VertexSet, left: usize, acc: &mut Vec<VertexSet>) {
        acc.push(cur);
        if left == 0 {
            return;
        }
        for i in start..verts.len() {
            let mut next = cur;
            next.insert(verts[i]);
            subsets(verts, i + 1, next, left - 1, acc);
        }
    }
    let mut xs = Vec::new();
    subsets(&verts, 0, VertexSet::EMPTY, max_order, &mut xs);
    stack.clear();
    for x in xs {
        let comps = components(g, x);
        let c = comps.len();
        for mask in 0..(1u32 << c) {
            let mut left = x;
            let mut right = x;
            for (i, comp) in comps.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    left = left.union(*comp);
                } else {
                    right = right.union(*comp);
                }
            }
            let s = Separation::canonical(left, right);
            if s.order() <= max_order {
                out.insert(s);
            }
        }
    }
    out.into_iter().collect()
}

/// True iff some orientations `(A,B)` of `s` and `(C,D)` of `t` satisfy
/// `A ⊆ C` and `B ⊇ D`.
pub fn is_nested(s: &Separation, t: &Separation) -> bool {
    s.orientations()
        .iter()
        .any(|o| t.orientations().iter().any(|p| o.below_eq(p)))
}

/// The four corner separations of two oriented separations.
pub fn corners(s: &OrientedSeparation, t: &OrientedSeparation) -> [Separation; 4] {
    let (a, b, c, d) = (s.small, s.big, t.small, t.big);
    [
        Separation::canonical(a.intersection(c), b.union(d)),
        Separation::canonical(a.intersection(d), b.union(c)),
        Separation::canonical(b.intersection(c), a.union(d)),
        Separation::canonical(b.intersection(d), a.union(c)),
    ]
}

/// A set of oriented separations pointing pairwise away from each other.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct Star(pub Vec<OrientedSeparation>);

impl Star {
    pub fn new(mut elements: Vec<OrientedSeparation>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let star = Star(elements);
        if star.is_valid() {
            Ok(star)
        } else {
            Err(Error::NotAStar)
        }
    }

    pub fn empty() -> Self {
        Star(Vec::new())
    }

    fn is_valid(&self) -> bool {
        is_star(&self.0)
    }

    pub fn elements(&self) -> &[OrientedSeparation] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// True iff `(Ai,Bi) <= (Bj,Aj)` for all pairs `i != j`.
pub fn is_star(elements: &[OrientedSeparation]) -> bool {
    for (i, s) in elements.iter().enumerate() {
        for (j, t) in elements.iter().enumerate() {
            if i != j && !s.below_eq(&t.reverse()) {
                return false;
            }
        }
    }
    true
}

/// The bag of a star: the intersection of the big sides, with the empty
/// intersection set to `V(G)`.
pub fn bag(g: &Graph, star: &Star) -> VertexSet {
    star.0
        .iter()
        .fold(g.vertices(), |acc, s| acc.intersection(s.big))
}

/// The torso of a star: the induced subgraph on its bag with every separator
/// turned into a clique.
pub fn torso(g: &Graph, star: &Star) -> Result<Graph> {
    if !star.is_valid() {
        return Err(Error::NotAStar);
    }
    let b = bag(g, star);
    let mut t = g.induced(b);
    for s in &star.0 {
        let sep: Vec<usize> = s.separator().to_vec();
        for (i, &u) in sep.iter().enumerate() {
            for &v in &sep[i + 1..] {
                t.add_edge(u, v);
            }
        }
    }
    Ok(t)
}

/// True iff every element of the star is strictly below one of the two
/// orientations of `s`.
pub fn interlaces(s: &Separation, star: &Star) -> bool {
    let [o1, o2] = s.orientations();
    star.0.iter().all(|e| e.strictly_below(&o1) || e.strictly_below(&o2))
}

/// A splitting star of a nested set: a star within the orientations of the
/// set that dominates every member. These are the nodes of the derived
/// tree-decomposition.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SplittingStar {
    pub star: Star,
}

impl SplittingStar {
    pub fn bag(&self, g: &Graph) -> VertexSet {
        bag(g, &self.star)
    }

    pub fn torso(&self, g: &Graph) -> Result<Graph> {
        torso(g, &self.star)
    }
}

fn check_nested_proper(n: &[Separation]) -> Result<()> {
    for s in n {
        assert!(s.is_proper(), "nested-set machinery expects proper separations");
    }
    for (i, s) in n.iter().enumerate() {
        for t in &n[i + 1..] {
            if !is_nested(s, t) {
                return Err(Error::NotNested);
            }
        }
    }
    Ok(())
}

/// All splitting stars of the nested set `n`, computed by materialising, for
/// every orientation `(A,B)`, the consistent orientation of `n` that points
/// towards the region just inside `B`, and taking its maximal elements. The
/// stars are returned together with the tree structure: `tree_edges[i]`
/// records which two stars the `i`-th separation joins.
pub fn splitting_stars(g: &Graph, n: &[Separation]) -> Result<Vec<SplittingStar>> {
    Ok(decomposition_tree(g, n)?.0)
}

/// Splitting stars plus, for each separation of `n`, the indices of the two
/// incident stars (the side0-pointing star first).
pub fn decomposition_tree(
    g: &Graph,
    n: &[Separation],
) -> Result<(Vec<SplittingStar>, Vec<(usize, usize, Separation)>)> {
    check_nested_proper(n)?;
    let _ = g;
    if n.is_empty() {
        return Ok((vec![SplittingStar { star: Star::empty() }], Vec::new()));
    }
    let mut stars: Vec<SplittingStar> = Vec::new();
    let mut node_of = std::collections::BTreeMap::new();
    let mut index_of = |star: Star, stars: &mut Vec<SplittingStar>| -> usize {
        if let Some(&i) = node_of.get(&star.0) {
            return i;
        }
        stars.push(SplittingStar { star: star.clone() });
        node_of.insert(star.0, stars.len() - 1);
        stars.len() - 1
    };
    let mut edges = Vec::new();
    for s in n {
        let mut ends = [0usize; 2];
        for (k, ab) in s.orientations().iter().enumerate() {
            // Orientation of every member pointing towards the region just
            // inside ab.big at the separator.
            let mut oriented = vec![*ab];
            for t in n {
                if t == s {
                    continue;
                }
                let mut chosen = None;
                for o in t.orientations() {
                    if o.below_eq(ab) || o.below_eq(&ab.reverse()) {
                        chosen = Some(o);
                        break;
                    }
                }
                oriented.push(chosen.ok_or(Error::NotNested)?);
            }
            // Maximal elements form the node's star.
            let maximal: Vec<OrientedSeparation> = oriented
                .iter()
                .filter(|o| !oriented.iter().any(|p| o.strictly_below(p)))
                .copied()
                .collect();
            let star = Star::new(maximal).map_err(|_| Error::NotNested)?;
            ends[k] = index_of(star, &mut stars);
        }
        edges.push((ends[1], ends[0], *s));
    }
    Ok((stars, edges))
}

/// Lifts a proper separation of the torso of a splitting star back to the
/// ambient graph: the far side of every star element is attached entirely to
/// the side of `s` containing that element's separator. When a separator lies
/// inside `A ∩ B`, its far side is attached to the canonically-first side.
///
/// The lift has the same separator as `s`, restricts to `s` on the torso,
/// interlaces the star, and is nested with `n`.
pub fn lift_separation(
    g: &Graph,
    n: &[Separation],
    star: &SplittingStar,
    s: &Separation,
) -> Result<Separation> {
    if !s.is_proper() {
        return Err(Error::NotProper);
    }
    let t = torso(g, &star.star)?;
    // Revalidate against the torso: garbage inputs surface here.
    Separation::new(&t, s.side0(), s.side1())?;
    let mut lifted0 = s.side0();
    let mut lifted1 = s.side1();
    let tie = s.separator();
    for e in star.star.elements() {
        let sep = e.separator();
        let far = e.small.difference(e.big);
        if sep.is_subset(&tie) {
            lifted0 = lifted0.union(far);
        } else if sep.is_subset(&s.side0()) {
            lifted0 = lifted0.union(far);
        } else if sep.is_subset(&s.side1()) {
            lifted1 = lifted1.union(far);
        } else {
            return Err(Error::SeparatorSplit);
        }
    }
    let lift = Separation::new(g, lifted0, lifted1)?;
    debug_assert_eq!(lift.separator(), s.separator());
    debug_assert!(n.iter().all(|m| is_nested(&lift, m)));
    debug_assert!(interlaces(&lift, &star.star));
    Ok(lift)
}
