//! Brute-force reference implementations shared by the integration tests.
//!
//! Everything here works on raw image vectors and sorted `Vec`s so that it
//! shares no logic with the library beyond the presets it is handed.

#![allow(dead_code)]

use std::collections::BTreeSet;

use facet_kernel::{Family, MultiType, PermGroup, QuasiSplit, VertexSet};

pub type Images = Vec<usize>;
pub type Parts = Vec<Vec<usize>>;

/// All permutations of `0..n` as image vectors.
pub fn all_permutations(n: usize) -> Vec<Images> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Images>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Edges of the simply-laced affine diagrams, written out by hand.
pub fn simply_laced_edges(family: Family, rank: usize) -> Vec<(usize, usize)> {
    let n = rank;
    match family {
        Family::A => (0..=n).map(|v| (v, (v + 1) % (n + 1))).collect(),
        Family::D => {
            let mut e = vec![(0, 2), (1, 2), (n - 2, n - 1), (n - 2, n)];
            e.extend((2..n - 2).map(|v| (v, v + 1)));
            e
        }
        Family::E6 => vec![(1, 3), (3, 4), (4, 5), (5, 6), (2, 4), (0, 2)],
        Family::E7 => vec![(0, 1), (1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
        Family::E8 => vec![(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4), (8, 0)],
        other => panic!("{other} is not simply laced"),
    }
}

/// Automorphisms of an undirected simple graph by trying every permutation.
pub fn brute_automorphisms(n: usize, edges: &[(usize, usize)]) -> BTreeSet<Images> {
    let set: BTreeSet<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    all_permutations(n)
        .into_iter()
        .filter(|p| {
            set.iter().all(|&(a, b)| {
                let (x, y) = (p[a], p[b]);
                set.contains(&(x.min(y), x.max(y)))
            })
        })
        .collect()
}

pub fn parts_of(t: &MultiType) -> Parts {
    let mut parts: Parts = t.parts().iter().map(|p| p.to_vec()).collect();
    parts.sort();
    parts
}

pub fn act(p: &[usize], t: &Parts) -> Parts {
    let mut out: Parts = t
        .iter()
        .map(|part| {
            let mut q: Vec<usize> = part.iter().map(|&v| p[v]).collect();
            q.sort();
            q
        })
        .collect();
    out.sort();
    out
}

pub fn compose(p: &[usize], q: &[usize]) -> Images {
    q.iter().map(|&v| p[v]).collect()
}

pub fn elements(g: &PermGroup) -> Vec<Images> {
    g.elements().iter().map(|p| p.images().to_vec()).collect()
}

/// `(orbit size, fixed count, quotient count)` computed from whole-group
/// element lists, with Ξ recomputed as the Γ-centralizer in Ξⁿʳ.
pub fn brute_kernel(qs: &QuasiSplit, t: &MultiType) -> (usize, usize, usize) {
    let t = parts_of(t);
    let xi_nr = elements(qs.xi_nr());
    let gamma = elements(qs.gamma());
    let xi: Vec<Images> = xi_nr
        .iter()
        .filter(|w| gamma.iter().all(|s| compose(s, w) == compose(w, s)))
        .cloned()
        .collect();
    let orbit: BTreeSet<Parts> = xi_nr.iter().map(|w| act(w, &t)).collect();
    let fixed: Vec<&Parts> = orbit
        .iter()
        .filter(|u| {
            gamma
                .iter()
                .all(|s| u.iter().all(|part| act(s, &vec![part.clone()])[0] == *part))
        })
        .collect();
    let classes: BTreeSet<BTreeSet<Parts>> = fixed
        .iter()
        .map(|u| xi.iter().map(|w| act(w, u)).collect())
        .collect();
    (orbit.len(), fixed.len(), classes.len())
}

/// Rotation-orbit size of a subset of `Z/(n+1)`: the least shift fixing it.
pub fn rotation_period(n: usize, t: VertexSet) -> usize {
    let m = n + 1;
    let v = t.to_vec();
    (1..=m)
        .find(|d| {
            let mut s: Vec<usize> = v.iter().map(|x| (x + d) % m).collect();
            s.sort();
            s == v
        })
        .unwrap()
}

pub fn single(v: &[usize]) -> MultiType {
    MultiType::single(VertexSet::try_from_slice(v).unwrap())
}

use facet_kernel::{FactorSpec, GroupSpec, Mode, Splitting, Twist, TwistedForm, WeilRestriction};
use rand::seq::SliceRandom;
use rand::Rng;

/// A random quasi-split form of moderate size.
pub fn random_form<R: Rng>(rng: &mut R) -> TwistedForm {
    let (family, rank, twist) = match rng.gen_range(0..6) {
        0 => (Family::A, rng.gen_range(1..=11), Twist::TwoA),
        1 => (Family::D, rng.gen_range(4..=9), Twist::TwoD),
        2 => (Family::D, 4, *[Twist::ThreeD4, Twist::SixD4].choose(rng).unwrap()),
        3 => (Family::E6, 6, Twist::TwoE6),
        _ => {
            let family = *Family::ALL.choose(rng).unwrap();
            let rank = match family.fixed_rank() {
                Some(r) => r,
                None => rng.gen_range(family.min_rank()..=family.min_rank() + 5),
            };
            (family, rank, Twist::Split)
        }
    };
    TwistedForm::new(family, rank, twist).unwrap()
}

/// A random strongly Γ-invariant multitype with `1..=max_parts` nonempty parts,
/// each a union of Γ-orbits.
pub fn random_invariant_type<R: Rng>(rng: &mut R, qs: &QuasiSplit, max_parts: usize) -> MultiType {
    let orbits = qs.gamma().vertex_orbits();
    let k = rng.gen_range(1..=max_parts);
    let mut parts = vec![VertexSet::EMPTY; k];
    for o in &orbits {
        let slot = rng.gen_range(0..=k);
        if slot < k {
            parts[slot] = parts[slot].union(*o);
        }
    }
    parts.retain(|p| !p.is_empty());
    if parts.is_empty() {
        parts.push(*orbits.choose(rng).unwrap());
    }
    MultiType::new(parts).unwrap()
}

/// Whether a factor may contribute a factor 2 to the kernel.
pub fn may_double(f: &FactorSpec) -> bool {
    f.splitting == Splitting::Unramified
        && match f.twist {
            Twist::TwoD => true,
            Twist::TwoA => f.rank % 4 == 3,
            _ => false,
        }
}

pub fn random_factor<R: Rng>(rng: &mut R) -> FactorSpec {
    let form = random_form(rng);
    let qs = QuasiSplit::new(form).unwrap();
    let max_parts = if rng.gen_bool(0.7) { 1 } else { 3 };
    FactorSpec {
        family: form.family(),
        rank: form.rank(),
        twist: form.twist(),
        splitting: if rng.gen_bool(0.8) {
            Splitting::Unramified
        } else {
            Splitting::Ramified
        },
        weil_restriction: rng.gen_bool(0.2).then(|| WeilRestriction {
            label: format!("L{}", rng.gen_range(1..5)),
        }),
        facet_type: random_invariant_type(rng, &qs, max_parts),
    }
}

pub fn random_spec<R: Rng>(rng: &mut R, mode: Mode) -> GroupSpec {
    let n = rng.gen_range(1..=4);
    GroupSpec {
        mode,
        factors: (0..n).map(|_| random_factor(rng)).collect(),
    }
}
