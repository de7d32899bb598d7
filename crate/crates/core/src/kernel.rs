//! The brute-force kernel oracle.
//!
//! For a Galois-stable multifacet of type `t`, the kernel of
//! `H¹(Γ, H̃_F̃) → H¹(Γ, H̃)` is in bijection with
//!
//! ```text
//!     { ω·t : ω ∈ Ξⁿʳ, ω·t ⊆ t_max, ω·t strongly Γ-invariant } / Ξ
//! ```
//!
//! and this module evaluates that set literally: orbit, Galois filter,
//! incidence filter, then Ξ-classes via union-find.
//!
//! A facet type is the set of diagram vertices spanning the facet, so the
//! chamber type is the full vertex set and incidence is containment.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dynkin::{Diagram, VertexSet};
use crate::error::{Error, Result};
use crate::permgroups::{conjugation_fixed, PermGroup, Permutation};

/// A set of pairwise-disjoint vertex sets, kept sorted and deduplicated.
///
/// A single part is an ordinary facet type.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiType(Vec<VertexSet>);

impl MultiType {
    pub fn new(parts: Vec<VertexSet>) -> Result<Self> {
        let mut parts = parts;
        parts.sort();
        parts.dedup();
        for (i, a) in parts.iter().enumerate() {
            if let Some(b) = parts[i + 1..].iter().find(|b| !a.is_disjoint(**b)) {
                return Err(Error::Domain(format!("parts {a} and {b} overlap")));
            }
        }
        Ok(MultiType(parts))
    }

    pub fn single(part: VertexSet) -> Self {
        MultiType(vec![part])
    }

    /// The multitype with no parts.
    pub fn empty() -> Self {
        MultiType(Vec::new())
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.0
    }

    /// The lone part, if there is exactly one.
    pub fn as_single(&self) -> Option<VertexSet> {
        match self.0.as_slice() {
            [part] => Some(*part),
            _ => None,
        }
    }

    /// Union of all parts.
    pub fn support(&self) -> VertexSet {
        self.0.iter().fold(VertexSet::EMPTY, |acc, p| acc.union(*p))
    }

    /// True iff every `σ` in `gamma` maps every part onto itself.
    pub fn is_strongly_invariant(&self, gamma: &PermGroup) -> bool {
        self.violating_element(gamma).is_none()
    }

    /// A generator of `gamma` moving some part, if any.
    pub fn violating_element<'a>(&self, gamma: &'a PermGroup) -> Option<&'a Permutation> {
        gamma
            .generators()
            .iter()
            .find(|s| self.0.iter().any(|p| !s.stabilizes(*p)))
    }
}

impl fmt::Display for MultiType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for MultiType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for MultiType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<VertexSet>::deserialize(deserializer)?;
        MultiType::new(parts).map_err(serde::de::Error::custom)
    }
}

/// One affine Tits index plus a type: everything the kernel depends on.
#[derive(Debug, Clone)]
pub struct KernelProblem {
    diagram: Diagram,
    xi_nr: PermGroup,
    gamma: PermGroup,
    xi: PermGroup,
    t: MultiType,
    t_max: VertexSet,
}

impl KernelProblem {
    pub fn new(
        diagram: Diagram,
        xi_nr: PermGroup,
        gamma: PermGroup,
        xi: PermGroup,
        t: MultiType,
        t_max: VertexSet,
    ) -> Result<Self> {
        let n = diagram.vertex_count();
        for (name, g) in [("xi_nr", &xi_nr), ("gamma", &gamma), ("xi", &xi)] {
            if g.degree() != n {
                return Err(Error::Domain(format!(
                    "{name} acts on {} points, diagram has {n}",
                    g.degree()
                )));
            }
        }
        if !xi.is_subgroup_of(&xi_nr) {
            return Err(Error::Contract("xi is not contained in xi_nr".into()));
        }
        if !t_max.is_subset(diagram.all_vertices()) {
            return Err(Error::Domain(format!(
                "t_max {t_max} is not a set of diagram vertices"
            )));
        }
        if let Some(part) = t.parts().iter().find(|p| !p.is_subset(t_max)) {
            return Err(Error::Contract(format!(
                "part {part} is not contained in t_max {t_max}"
            )));
        }
        if let Some(s) = gamma.generators().iter().find(|s| !s.stabilizes(t_max)) {
            return Err(Error::Contract(format!("t_max {t_max} is moved by {s}")));
        }
        Ok(KernelProblem {
            diagram,
            xi_nr,
            gamma,
            xi,
            t,
            t_max,
        })
    }

    /// The quasi-split adjoint case: `Ξ = (Ξⁿʳ)^Γ` and `t_max` is the chamber.
    pub fn quasi_split(diagram: Diagram, xi_nr: PermGroup, gamma: PermGroup, t: MultiType) -> Result<Self> {
        let xi = conjugation_fixed(&xi_nr, &gamma)?;
        let t_max = diagram.all_vertices();
        KernelProblem::new(diagram, xi_nr, gamma, xi, t, t_max)
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn xi_nr(&self) -> &PermGroup {
        &self.xi_nr
    }

    pub fn gamma(&self) -> &PermGroup {
        &self.gamma
    }

    pub fn xi(&self) -> &PermGroup {
        &self.xi
    }

    pub fn t(&self) -> &MultiType {
        &self.t
    }

    pub fn t_max(&self) -> VertexSet {
        self.t_max
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    /// Size `m` of the `Ξⁿʳ`-orbit of the type.
    pub orbit_size: usize,
    /// Orbit members that are strongly Γ-invariant and incident to `t_max`.
    pub fixed_count: usize,
    /// Number of Ξ-classes among them: the kernel's cardinality.
    pub quotient_count: usize,
    /// Least member of each Ξ-class, sorted.
    pub witnesses: Vec<MultiType>,
}

pub fn act_on_multitype(p: &Permutation, t: &MultiType) -> MultiType {
    let mut parts: Vec<VertexSet> = t.0.iter().map(|part| p.apply_set(*part)).collect();
    parts.sort();
    MultiType(parts)
}

/// Breadth-first orbit of `t` under `g`, starting with `t` itself.
pub fn orbit_of(t: &MultiType, g: &PermGroup) -> Vec<MultiType> {
    let mut seen = BTreeSet::from([t.clone()]);
    let mut orbit = vec![t.clone()];
    let mut queue = VecDeque::from([t.clone()]);
    let gens = g.generators();
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = act_on_multitype(s, &x);
            if seen.insert(y.clone()) {
                orbit.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    orbit
}

pub fn strongly_invariant_filter(orbit: &[MultiType], gamma: &PermGroup) -> Vec<MultiType> {
    orbit
        .iter()
        .filter(|t| t.is_strongly_invariant(gamma))
        .cloned()
        .collect()
}

pub fn incidence_filter(types: &[MultiType], t_max: VertexSet) -> Vec<MultiType> {
    types
        .iter()
        .filter(|t| t.support().is_subset(t_max))
        .cloned()
        .collect()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Links the larger root under the smaller, so roots are least indices.
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
        }
    }
}

/// Counts the orbits of `xi` on `fixed`, returning one (least) witness per orbit.
///
/// Fails if some element of `xi` carries a member of `fixed` outside of it.
pub fn count_xi_classes(fixed: &[MultiType], xi: &PermGroup) -> Result<(usize, Vec<MultiType>)> {
    let mut sorted = fixed.to_vec();
    sorted.sort();
    sorted.dedup();
    let index: HashMap<&MultiType, usize> = sorted.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut uf = UnionFind::new(sorted.len());
    for (i, t) in sorted.iter().enumerate() {
        for w in xi.generators() {
            let image = act_on_multitype(w, t);
            match index.get(&image) {
                Some(&j) => uf.union(i, j),
                None => {
                    return Err(Error::Contract(format!(
                        "{w} maps {t} to {image}, outside the fixed set"
                    )))
                }
            }
        }
    }
    let witnesses: Vec<MultiType> = (0..sorted.len())
        .filter(|&i| uf.find(i) == i)
        .map(|i| sorted[i].clone())
        .collect();
    Ok((witnesses.len(), witnesses))
}

pub fn kernel_size(p: &KernelProblem) -> Result<KernelReport> {
    let orbit = orbit_of(&p.t, &p.xi_nr);
    let invariant = strongly_invariant_filter(&orbit, &p.gamma);
    let fixed = incidence_filter(&invariant, p.t_max);
    let (quotient_count, witnesses) = count_xi_classes(&fixed, &p.xi)?;
    Ok(KernelReport {
        orbit_size: orbit.len(),
        fixed_count: fixed.len(),
        quotient_count,
        witnesses,
    })
}

/// Elements of `(Ξⁿʳ_{t_max})^Γ` fixing every Γ-orbit of vertices inside `t_max`
/// setwise: the kernel of the map to the automorphisms of the descended diagram.
pub fn ext_action_kernel(
    d: &Diagram,
    gamma: &PermGroup,
    xi_nr: &PermGroup,
    t_max: VertexSet,
) -> Result<PermGroup> {
    let n = d.vertex_count();
    if gamma.degree() != n || xi_nr.degree() != n {
        return Err(Error::Domain(
            "groups do not act on the diagram's vertices".into(),
        ));
    }
    let stab = xi_nr.set_stabilizer(t_max);
    let fixed = conjugation_fixed(&stab, gamma)?;
    let orbits: Vec<VertexSet> = gamma
        .vertex_orbits()
        .into_iter()
        .filter(|o| o.is_subset(t_max))
        .collect();
    let kernel = fixed
        .elements()
        .iter()
        .filter(|w| orbits.iter().all(|o| w.stabilizes(*o)))
        .cloned()
        .collect();
    PermGroup::from_elements(n, kernel)
}
