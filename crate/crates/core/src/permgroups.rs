//! Vertex permutations, explicitly enumerated permutation groups, and the
//! per-form action presets: the group `Ξⁿʳ` induced on the diagram by the
//! adjoint group over the maximal unramified extension, and the finite image
//! of the unramified Galois group.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dynkin::{d_ends, Diagram, Family, VertexSet};
use crate::error::{Error, Result};

/// A bijection of `{0, ..., n-1}`; `images()[v]` is the image of `v`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &w in &images {
            if w >= images.len() || std::mem::replace(&mut seen[w], true) {
                return Err(Error::Domain(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    /// Builds a permutation of `{0, ..., n-1}` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &v) in cycle.iter().enumerate() {
                if v >= n || std::mem::replace(&mut touched[v], true) {
                    return Err(Error::Domain(format!("bad cycle {cycle:?} on {n} points")));
                }
                images[v] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation(images))
    }

    /// `v ↦ f(v)` over `{0, ..., n-1}`; panics if `f` is not a bijection.
    pub(crate) fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Self {
        Permutation::from_images((0..n).map(f).collect()).expect("preset maps are bijective")
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn apply_set(&self, set: VertexSet) -> VertexSet {
        set.iter().map(|v| self.0[v]).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(v, &w)| v == w)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (v, &w) in self.0.iter().enumerate() {
            inv[w] = v;
        }
        Permutation(inv)
    }

    /// `self ∘ q`, i.e. `v ↦ self(q(v))`.
    pub fn after(&self, q: &Permutation) -> Result<Permutation> {
        compose(self, q)
    }

    /// `s ∘ self ∘ s⁻¹`.
    pub fn conjugated_by(&self, s: &Permutation) -> Result<Permutation> {
        compose(&compose(s, self)?, &s.inverse())
    }

    /// True iff `self` maps `set` onto itself.
    pub fn stabilizes(&self, set: VertexSet) -> bool {
        self.apply_set(set) == set
    }

    /// Disjoint cycles of length at least 2, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut cycles = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut v = self.0[start];
            while v != start {
                seen[v] = true;
                cycle.push(v);
                v = self.0[v];
            }
            cycles.push(cycle);
        }
        cycles
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, v) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `p ∘ q`: the permutation `v ↦ p(q(v))`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    if p.degree() != q.degree() {
        return Err(Error::Domain(format!(
            "cannot compose permutations of degree {} and {}",
            p.degree(),
            q.degree()
        )));
    }
    Ok(Permutation(q.0.iter().map(|&v| p.0[v]).collect()))
}

/// A finite permutation group with all of its elements listed.
///
/// The identity comes first; the rest follow breadth-first discovery order
/// from the generators.
#[derive(Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            elements: vec![Permutation::identity(degree)],
            generators: Vec::new(),
        }
    }

    /// Closure of `gens` under composition.
    pub fn generate(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::Domain(format!(
                "generator {g} has degree {}, expected {degree}",
                g.degree()
            )));
        }
        let identity = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::from([identity.clone()]);
        let mut elements = vec![identity.clone()];
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = compose(g, &x)?;
                if seen.insert(y.clone()) {
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(PermGroup {
            degree,
            elements,
            generators: gens,
        })
    }

    /// Group whose element set is exactly `elements`, which must already be
    /// closed under composition. A small generating set is picked greedily.
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let mut group = PermGroup::trivial(degree);
        for x in &elements {
            if !group.contains(x) {
                let mut gens = group.generators.clone();
                gens.push(x.clone());
                group = PermGroup::generate(degree, gens)?;
            }
        }
        if group.order() != elements.len() {
            return Err(Error::Contract(format!(
                "{} permutations are not closed under composition",
                elements.len()
            )));
        }
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|x| other.contains(x))
    }

    /// Elements mapping `set` onto itself.
    pub fn set_stabilizer(&self, set: VertexSet) -> PermGroup {
        let elements = self
            .elements
            .iter()
            .filter(|g| g.stabilizes(set))
            .cloned()
            .collect();
        PermGroup::from_elements(self.degree, elements).expect("stabilizers are subgroups")
    }

    /// Orbits of the group on vertices, as sets ordered by least member.
    pub fn vertex_orbits(&self) -> Vec<VertexSet> {
        let mut covered = VertexSet::EMPTY;
        let mut orbits = Vec::new();
        for v in 0..self.degree {
            if covered.contains(v) {
                continue;
            }
            let orbit: VertexSet = self.elements.iter().map(|g| g.apply(v)).collect();
            covered = covered.union(orbit);
            orbits.push(orbit);
        }
        orbits
    }

    /// Elements as a set, for order-independent comparisons.
    pub fn element_set(&self) -> HashSet<Permutation> {
        self.elements.iter().cloned().collect()
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// `{ω ∈ g : σωσ⁻¹ = ω for every σ ∈ gamma}`.
pub fn conjugation_fixed(g: &PermGroup, gamma: &PermGroup) -> Result<PermGroup> {
    if g.degree() != gamma.degree() {
        return Err(Error::Domain(format!(
            "groups of degree {} and {}",
            g.degree(),
            gamma.degree()
        )));
    }
    let mut fixed = Vec::new();
    for w in g.elements() {
        let mut commutes = true;
        for s in gamma.generators() {
            if compose(s, w)? != compose(w, s)? {
                commutes = false;
                break;
            }
        }
        if commutes {
            fixed.push(w.clone());
        }
    }
    PermGroup::from_elements(g.degree(), fixed)
}

/// Outer twist of a quasi-split form, named by its Tits index superscript.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Twist {
    #[serde(rename = "split")]
    Split,
    #[serde(rename = "2A")]
    TwoA,
    #[serde(rename = "2D")]
    TwoD,
    #[serde(rename = "3D4")]
    ThreeD4,
    #[serde(rename = "6D4")]
    SixD4,
    #[serde(rename = "2E6")]
    TwoE6,
}

impl Twist {
    pub const ALL: [Twist; 6] = [
        Twist::Split,
        Twist::TwoA,
        Twist::TwoD,
        Twist::ThreeD4,
        Twist::SixD4,
        Twist::TwoE6,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Twist::Split => "split",
            Twist::TwoA => "2A",
            Twist::TwoD => "2D",
            Twist::ThreeD4 => "3D4",
            Twist::SixD4 => "6D4",
            Twist::TwoE6 => "2E6",
        }
    }

    /// The family every non-split twist belongs to.
    pub fn family(self) -> Option<Family> {
        match self {
            Twist::Split => None,
            Twist::TwoA => Some(Family::A),
            Twist::TwoD | Twist::ThreeD4 | Twist::SixD4 => Some(Family::D),
            Twist::TwoE6 => Some(Family::E6),
        }
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Twist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Twist::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::IncompatibleForm(format!("unknown twist `{s}`")))
    }
}

/// A quasi-split form: family, rank and outer twist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwistedForm {
    family: Family,
    rank: usize,
    twist: Twist,
}

impl TwistedForm {
    pub fn new(family: Family, rank: usize, twist: Twist) -> Result<Self> {
        family.check_rank(rank)?;
        let ok = match twist {
            Twist::Split => true,
            Twist::TwoA => family == Family::A,
            Twist::TwoD => family == Family::D,
            Twist::ThreeD4 | Twist::SixD4 => family == Family::D && rank == 4,
            Twist::TwoE6 => family == Family::E6,
        };
        if !ok {
            return Err(Error::IncompatibleForm(format!(
                "twist {twist} does not apply to {family}{rank}"
            )));
        }
        Ok(TwistedForm { family, rank, twist })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn twist(&self) -> Twist {
        self.twist
    }

    fn check_diagram(&self, d: &Diagram) -> Result<()> {
        if d.family() != self.family || d.rank() != self.rank {
            return Err(Error::IncompatibleForm(format!(
                "form {}{}{} applied to diagram {}{}",
                self.twist,
                self.family,
                self.rank,
                d.family(),
                d.rank()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for TwistedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.twist {
            Twist::Split => write!(f, "{}{}", self.family, self.rank),
            Twist::TwoA | Twist::TwoD => write!(f, "{}{}", self.twist, self.rank),
            Twist::ThreeD4 | Twist::SixD4 | Twist::TwoE6 => f.write_str(self.twist.as_str()),
        }
    }
}

/// Affine `An`: `v ↦ v + 1 (mod n + 1)`.
pub fn a_rotation(rank: usize) -> Permutation {
    let m = rank + 1;
    Permutation::from_fn(m, |v| (v + 1) % m)
}

/// Affine `An`: the axial reflection `v ↦ -v (mod n + 1)` through vertex 0.
pub fn a_reflection(rank: usize) -> Permutation {
    let m = rank + 1;
    Permutation::from_fn(m, |v| (m - v) % m)
}

/// Affine `Dn`: `τ`, the left-right mirror sending the end pair `{0, 1}` to
/// `{n-1, n}` (`0 ↔ n-1`, `1 ↔ n`) and `i ↦ n - i` on the inner path.
pub fn d_tau(rank: usize) -> Permutation {
    let n = rank;
    Permutation::from_fn(n + 1, |v| match v {
        0 => n - 1,
        1 => n,
        v if v == n - 1 => 0,
        v if v == n => 1,
        v => n - v,
    })
}

/// Affine `Dn`: `τ' = (0 1)(n-1 n)`, swapping the leaves of both forks.
pub fn d_tau_prime(rank: usize) -> Permutation {
    let n = rank;
    Permutation::from_cycles(n + 1, &[&[0, 1], &[n - 1, n]]).unwrap()
}

/// Affine `Dn`: `σ = (n-1 n)`, the unramified Galois action of `²Dn`.
pub fn d_sigma(rank: usize) -> Permutation {
    let n = rank;
    Permutation::from_cycles(n + 1, &[&[n - 1, n]]).unwrap()
}

/// Affine `Dn`: `φ = τ ∘ σ`, of order 4 with `φ² = τ'`.
pub fn d_phi(rank: usize) -> Permutation {
    compose(&d_tau(rank), &d_sigma(rank)).unwrap()
}

/// Affine `E6`: the order-3 rotation `1 → 6 → 0 → 1`, `3 → 5 → 2 → 3`.
pub fn e6_rotation() -> Permutation {
    Permutation::from_cycles(7, &[&[1, 6, 0], &[3, 5, 2]]).unwrap()
}

/// Affine `E6`: the reflection `(1 6)(3 5)` fixing the affine leg.
pub fn e6_reflection() -> Permutation {
    Permutation::from_cycles(7, &[&[1, 6], &[3, 5]]).unwrap()
}

/// The group `Ξⁿʳ` of the adjoint form, i.e. the diagram automorphisms
/// coming from the fundamental group: cyclic rotations for `A`, `⟨τ, τ'⟩` or
/// `⟨φ⟩` for `D` of even or odd rank, the order-3 rotation for `E6`, the
/// end flip for `B`, `C`, `E7`, and nothing for `E8`, `F4`, `G2`.
///
/// The twist does not change this group, only how Galois acts on it.
pub fn preset_xi_nr(form: &TwistedForm, d: &Diagram) -> Result<PermGroup> {
    form.check_diagram(d)?;
    let n = form.rank;
    let deg = d.vertex_count();
    let gens = match form.family {
        Family::A => vec![a_rotation(n)],
        Family::B => vec![Permutation::from_cycles(deg, &[&[0, 1]])?],
        Family::C => vec![Permutation::from_fn(deg, |v| n - v)],
        Family::D if n.is_multiple_of(2) => vec![d_tau(n), d_tau_prime(n)],
        Family::D => vec![d_phi(n)],
        Family::E6 => vec![e6_rotation()],
        Family::E7 => vec![Permutation::from_cycles(deg, &[&[0, 7], &[1, 6], &[3, 5]])?],
        Family::E8 | Family::F4 | Family::G2 => vec![],
    };
    PermGroup::generate(deg, gens)
}

/// Finite image of the unramified Galois group acting on the diagram.
pub fn preset_galois(form: &TwistedForm, d: &Diagram) -> Result<PermGroup> {
    form.check_diagram(d)?;
    let n = form.rank;
    let deg = d.vertex_count();
    let gens = match form.twist {
        Twist::Split => vec![],
        Twist::TwoA => vec![a_reflection(n)],
        Twist::TwoD => vec![d_sigma(n)],
        Twist::ThreeD4 | Twist::SixD4 => {
            // The three leaves other than the affine one.
            let [_, a, b, c] = d_ends(4);
            let mut gens = vec![Permutation::from_cycles(deg, &[&[a, b, c]])?];
            if form.twist == Twist::SixD4 {
                gens.push(Permutation::from_cycles(deg, &[&[b, c]])?);
            }
            gens
        }
        Twist::TwoE6 => vec![e6_reflection()],
    };
    PermGroup::generate(deg, gens)
}
