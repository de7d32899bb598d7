//! Affine Dynkin diagrams, their automorphism groups and special vertices.
//!
//! Vertex labelling is fixed per family. Vertex 0 is always the affine vertex
//! and removing it leaves the finite diagram of the same family and rank.
//!
//! | family | labelling |
//! |--------|-----------|
//! | `A1`   | `0 = 1` joined by the [`BondKind::AffineA1`] sentinel bond |
//! | `An`   | cycle `0 - 1 - ... - n - 0` |
//! | `B2`   | `0 => 2 <= 1` |
//! | `Bn`   | fork `{0, 1} - 2`, path `2 - ... - (n-1) => n` |
//! | `Cn`   | `0 => 1 - 2 - ... - (n-1) <= n` |
//! | `Dn`   | fork `{0, 1} - 2`, path `2 - ... - (n-2)`, fork `(n-2) - {n-1, n}` |
//! | `E6`   | Bourbaki `1-3-4-5-6`, `2-4`, plus `0-2` |
//! | `E7`   | Bourbaki `1-3-4-5-6-7`, `2-4`, plus `0-1` |
//! | `E8`   | Bourbaki `1-3-4-5-6-7-8`, `2-4`, plus `0-8` |
//! | `F4`   | `0 - 1 - 2 => 3 - 4` |
//! | `G2`   | `0 - 1 => 2` (triple bond) |
//!
//! Arrows point toward the shorter root. For `Dn` the four end vertices
//! `0, 1, n-1, n` are numbered `1, 2, 3, 4` in that order by [`d_ends`].

use std::fmt;
use std::ops::Range;

use serde::de::{SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::permgroups::{PermGroup, Permutation};

/// Diagrams are stored with 64-bit vertex masks.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E6,
        Family::E7,
        Family::E8,
        Family::F4,
        Family::G2,
    ];

    /// The only admissible rank for exceptional families.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            Family::F4 => Some(4),
            Family::G2 => Some(2),
            Family::A | Family::B | Family::C | Family::D => None,
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B => 2,
            Family::C => 3,
            Family::D => 4,
            other => other.fixed_rank().unwrap(),
        }
    }

    pub fn check_rank(self, rank: usize) -> Result<()> {
        let invalid = |reason: String| Error::InvalidRank {
            family: self,
            rank,
            reason,
        };
        if let Some(fixed) = self.fixed_rank() {
            if rank != fixed {
                return Err(invalid(format!("rank must be {fixed}")));
            }
        } else if rank < self.min_rank() {
            return Err(invalid(format!("rank must be at least {}", self.min_rank())));
        }
        if rank + 1 > MAX_VERTICES {
            return Err(invalid(format!(
                "at most {} vertices are supported",
                MAX_VERTICES
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A set of diagram vertices, ordered lexicographically by its sorted members.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        assert!(v < MAX_VERTICES);
        VertexSet(1 << v)
    }

    /// Builds a set from vertex ids, rejecting duplicates and out-of-range ids.
    pub fn try_from_slice(members: &[usize]) -> Result<Self> {
        let mut set = VertexSet::EMPTY;
        for &v in members {
            if v >= MAX_VERTICES {
                return Err(Error::Domain(format!("vertex {v} out of range")));
            }
            if set.contains(v) {
                return Err(Error::Domain(format!("duplicate vertex {v}")));
            }
            set.insert(v);
        }
        Ok(set)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < MAX_VERTICES);
        self.0 |= 1 << v;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    /// Largest member plus one, or 0 for the empty set.
    pub fn span(self) -> usize {
        MAX_VERTICES - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct SetVisitor;

        impl<'de> Visitor<'de> for SetVisitor {
            type Value = VertexSet;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a list of distinct vertex ids below {MAX_VERTICES}")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<VertexSet, A::Error> {
                let mut members = Vec::new();
                while let Some(v) = seq.next_element::<usize>()? {
                    members.push(v);
                }
                VertexSet::try_from_slice(&members).map_err(serde::de::Error::custom)
            }
        }

        deserializer.deserialize_seq(SetVisitor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BondKind {
    Single,
    Double,
    Triple,
    /// Stand-in for the infinite bond of affine `A1`. Carries no arrow, so the
    /// two vertices stay interchangeable.
    AffineA1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bond {
    pub a: usize,
    pub b: usize,
    pub kind: BondKind,
    /// Endpoint the arrow points to (the shorter root), for double and triple bonds.
    pub arrow_to: Option<usize>,
}

impl Bond {
    fn simple(a: usize, b: usize) -> Self {
        Bond {
            a,
            b,
            kind: BondKind::Single,
            arrow_to: None,
        }
    }

    fn arrowed(a: usize, b: usize, kind: BondKind, toward: usize) -> Self {
        Bond {
            a,
            b,
            kind,
            arrow_to: Some(toward),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Arrow {
    None,
    /// Points from the row vertex to the column vertex.
    Out,
    In,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct EdgeLabel {
    kind: BondKind,
    arrow: Arrow,
}

/// Labelled undirected graph underlying a diagram, with bond kinds and arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BondGraph {
    n: usize,
    labels: Vec<Option<EdgeLabel>>,
}

impl BondGraph {
    pub fn new(n: usize, bonds: &[Bond]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Domain(format!("{n} vertices exceeds {MAX_VERTICES}")));
        }
        let mut labels = vec![None; n * n];
        for bond in bonds {
            let Bond { a, b, kind, arrow_to } = *bond;
            if a >= n || b >= n || a == b {
                return Err(Error::Domain(format!("bad bond {a}-{b} on {n} vertices")));
            }
            if labels[a * n + b].is_some() {
                return Err(Error::Domain(format!("duplicate bond {a}-{b}")));
            }
            let (ab, ba) = match (kind, arrow_to) {
                (BondKind::Single | BondKind::AffineA1, None) => (Arrow::None, Arrow::None),
                (BondKind::Double | BondKind::Triple, Some(t)) if t == b => (Arrow::Out, Arrow::In),
                (BondKind::Double | BondKind::Triple, Some(t)) if t == a => (Arrow::In, Arrow::Out),
                _ => {
                    return Err(Error::Domain(format!(
                        "bond {a}-{b} of kind {kind:?} has arrow {arrow_to:?}"
                    )))
                }
            };
            labels[a * n + b] = Some(EdgeLabel { kind, arrow: ab });
            labels[b * n + a] = Some(EdgeLabel { kind, arrow: ba });
        }
        Ok(BondGraph { n, labels })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    fn label(&self, v: usize, w: usize) -> Option<EdgeLabel> {
        self.labels[v * self.n + w]
    }

    pub fn adjacent(&self, v: usize, w: usize) -> bool {
        self.label(v, w).is_some()
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&w| self.adjacent(v, w)).count()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = VertexSet::singleton(0);
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for w in 0..self.n {
                if self.adjacent(v, w) && !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen.len() == self.n
    }

    /// True iff `image` (indexed by source vertex) is a bijection onto `other`'s
    /// vertices that carries every bond, multiplicity and arrow across.
    pub fn maps_onto(&self, other: &BondGraph, image: &[usize]) -> bool {
        if self.n != other.n || image.len() != self.n {
            return false;
        }
        let mut hit = vec![false; self.n];
        for &w in image {
            if w >= self.n || std::mem::replace(&mut hit[w], true) {
                return false;
            }
        }
        (0..self.n).all(|v| (0..self.n).all(|w| self.label(v, w) == other.label(image[v], image[w])))
    }

    /// Sorted multiset of incident edge labels; invariant under isomorphism.
    fn signature(&self, v: usize) -> Vec<EdgeLabel> {
        let mut sig: Vec<_> = (0..self.n).filter_map(|w| self.label(v, w)).collect();
        sig.sort();
        sig
    }

    /// All isomorphisms `self -> other`, as image vectors, by backtracking over
    /// signature-compatible assignments.
    pub fn isomorphisms(&self, other: &BondGraph) -> Vec<Vec<usize>> {
        let mut found = Vec::new();
        if self.n != other.n {
            return found;
        }
        let sig_a: Vec<_> = (0..self.n).map(|v| self.signature(v)).collect();
        let sig_b: Vec<_> = (0..other.n).map(|v| other.signature(v)).collect();
        let mut image = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        self.extend(other, &sig_a, &sig_b, 0, &mut image, &mut used, &mut found);
        found
    }

    pub fn is_isomorphic(&self, other: &BondGraph) -> bool {
        !self.isomorphisms(other).is_empty()
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        other: &BondGraph,
        sig_a: &[Vec<EdgeLabel>],
        sig_b: &[Vec<EdgeLabel>],
        v: usize,
        image: &mut [usize],
        used: &mut [bool],
        found: &mut Vec<Vec<usize>>,
    ) {
        if v == self.n {
            found.push(image.to_vec());
            return;
        }
        for w in 0..other.n {
            if used[w] || sig_a[v] != sig_b[w] {
                continue;
            }
            if (0..v).any(|u| self.label(v, u) != other.label(w, image[u])) {
                continue;
            }
            image[v] = w;
            used[w] = true;
            self.extend(other, sig_a, sig_b, v + 1, image, used, found);
            used[w] = false;
        }
        image[v] = usize::MAX;
    }
}

/// An untwisted affine Dynkin diagram with the labelling documented above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    family: Family,
    rank: usize,
    bonds: Vec<Bond>,
    graph: BondGraph,
}

impl Diagram {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.rank + 1
    }

    pub fn vertices(&self) -> Range<usize> {
        0..self.vertex_count()
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn graph(&self) -> &BondGraph {
        &self.graph
    }

    /// The diagram with `v` deleted and the remaining vertices renumbered in order.
    pub fn without_vertex(&self, v: usize) -> BondGraph {
        let rename = |u: usize| if u < v { u } else { u - 1 };
        let bonds: Vec<Bond> = self
            .bonds
            .iter()
            .filter(|b| b.a != v && b.b != v)
            .map(|b| Bond {
                a: rename(b.a),
                b: rename(b.b),
                kind: b.kind,
                arrow_to: b.arrow_to.map(rename),
            })
            .collect();
        BondGraph::new(self.vertex_count() - 1, &bonds).expect("sub-diagram of a valid diagram")
    }

    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.vertex_count() && self.graph.maps_onto(&self.graph, p.images())
    }
}

/// Vertex ids of the four numbered end vertices `1, 2, 3, 4` of affine `Dn`.
pub fn d_ends(rank: usize) -> [usize; 4] {
    [0, 1, rank - 1, rank]
}

pub fn build_affine_diagram(family: Family, rank: usize) -> Result<Diagram> {
    family.check_rank(rank)?;
    let n = rank;
    let path = |from: usize, to: usize| (from..to).map(|v| Bond::simple(v, v + 1)).collect::<Vec<_>>();
    let bonds: Vec<Bond> = match family {
        Family::A if n == 1 => vec![Bond {
            a: 0,
            b: 1,
            kind: BondKind::AffineA1,
            arrow_to: None,
        }],
        Family::A => {
            let mut bonds = path(0, n);
            bonds.push(Bond::simple(n, 0));
            bonds
        }
        Family::B if n == 2 => vec![
            Bond::arrowed(0, 2, BondKind::Double, 2),
            Bond::arrowed(1, 2, BondKind::Double, 2),
        ],
        Family::B => {
            let mut bonds = vec![Bond::simple(0, 2)];
            bonds.extend(path(1, n - 1));
            bonds.push(Bond::arrowed(n - 1, n, BondKind::Double, n));
            bonds
        }
        Family::C => {
            let mut bonds = vec![Bond::arrowed(0, 1, BondKind::Double, 1)];
            bonds.extend(path(1, n - 1));
            bonds.push(Bond::arrowed(n - 1, n, BondKind::Double, n - 1));
            bonds
        }
        Family::D => {
            let mut bonds = vec![Bond::simple(0, 2)];
            bonds.extend(path(1, n - 1));
            bonds.push(Bond::simple(n - 2, n));
            bonds
        }
        Family::E6 => vec![
            Bond::simple(1, 3),
            Bond::simple(3, 4),
            Bond::simple(4, 5),
            Bond::simple(5, 6),
            Bond::simple(2, 4),
            Bond::simple(0, 2),
        ],
        Family::E7 => {
            let mut bonds = vec![Bond::simple(0, 1), Bond::simple(1, 3), Bond::simple(2, 4)];
            bonds.extend(path(3, 7));
            bonds
        }
        Family::E8 => {
            let mut bonds = vec![Bond::simple(1, 3), Bond::simple(2, 4), Bond::simple(8, 0)];
            bonds.extend(path(3, 8));
            bonds
        }
        Family::F4 => vec![
            Bond::simple(0, 1),
            Bond::simple(1, 2),
            Bond::arrowed(2, 3, BondKind::Double, 3),
            Bond::simple(3, 4),
        ],
        Family::G2 => vec![Bond::simple(0, 1), Bond::arrowed(1, 2, BondKind::Triple, 2)],
    };
    let graph = BondGraph::new(n + 1, &bonds)?;
    Ok(Diagram {
        family,
        rank,
        bonds,
        graph,
    })
}

/// The group of all bond-, multiplicity- and arrow-preserving vertex permutations.
pub fn diagram_automorphisms(d: &Diagram) -> PermGroup {
    let gens: Vec<Permutation> = d
        .graph
        .isomorphisms(&d.graph)
        .into_iter()
        .map(|images| Permutation::from_images(images).expect("isomorphisms are bijections"))
        .collect();
    PermGroup::from_elements(d.vertex_count(), gens).expect("automorphisms form a group")
}

/// Orbit of the affine vertex under the full automorphism group.
pub fn special_vertices(d: &Diagram) -> VertexSet {
    diagram_automorphisms(d)
        .elements()
        .iter()
        .map(|g| g.apply(0))
        .collect()
}
