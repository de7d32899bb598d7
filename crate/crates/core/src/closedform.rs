//! Closed-form kernel counts for the quasi-split adjoint forms.
//!
//! Only `²An` and `²Dn` can have a nontrivial kernel; every other form gives
//! `(1, 1)`. The orbit size `m` used by `²An` still comes from the oracle's
//! orbit enumeration, the closed form only replaces the fixed-point and
//! quotient counting.

use std::fmt;

use serde::Serialize;

use crate::dynkin::{build_affine_diagram, d_ends, Family, VertexSet};
use crate::error::{Error, Result};
use crate::kernel::{orbit_of, MultiType};
use crate::permgroups::{d_tau, preset_galois, preset_xi_nr, Twist, TwistedForm};

/// `(#fixed types in the orbit, #Ξ-classes among them)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KernelCounts {
    pub fixed_count: usize,
    pub quotient_count: usize,
}

impl KernelCounts {
    pub const TRIVIAL: KernelCounts = KernelCounts::new(1, 1);

    pub const fn new(fixed_count: usize, quotient_count: usize) -> Self {
        KernelCounts {
            fixed_count,
            quotient_count,
        }
    }
}

impl fmt::Display for KernelCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.fixed_count, self.quotient_count)
    }
}

/// Split of a `Dn` type into its inner part `S` and its numbered-end part `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoDnDecomposition {
    rank: usize,
    pub s_part: VertexSet,
    pub r_part: VertexSet,
}

impl TwoDnDecomposition {
    pub fn new(rank: usize, t: VertexSet) -> Result<Self> {
        if rank < 4 {
            return Err(Error::InvalidRank {
                family: Family::D,
                rank,
                reason: "rank must be at least 4".into(),
            });
        }
        if !t.is_subset(VertexSet::full(rank + 1)) {
            return Err(Error::Domain(format!("{t} is not a set of D{rank} vertices")));
        }
        let ends: VertexSet = d_ends(rank).into_iter().collect();
        Ok(TwoDnDecomposition {
            rank,
            s_part: t.difference(ends),
            r_part: t.intersection(ends),
        })
    }

    /// `R` written with the end numbering `1, 2, 3, 4`.
    pub fn r_labels(&self) -> Vec<usize> {
        d_ends(self.rank)
            .into_iter()
            .enumerate()
            .filter(|(_, v)| self.r_part.contains(*v))
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Whether the mirror `τ` maps `S` to itself.
    pub fn s_is_tau_stable(&self) -> bool {
        d_tau(self.rank).stabilizes(self.s_part)
    }

    /// `R={1,2};tauS=S`-style summary of the case.
    pub fn case_label(&self) -> String {
        let labels: Vec<String> = self.r_labels().iter().map(|l| l.to_string()).collect();
        let tau = if self.s_is_tau_stable() { "S" } else { "!S" };
        format!("R={{{}}};tauS={}", labels.join(","), tau).replace("=!S", "!=S")
    }
}

fn single_part(t: &MultiType) -> Result<VertexSet> {
    t.as_single()
        .ok_or_else(|| Error::Domain(format!("closed forms need a single-part type, got {t}")))
}

fn check_invariant(form: &TwistedForm, t: &MultiType) -> Result<()> {
    let d = build_affine_diagram(form.family(), form.rank())?;
    if !t.support().is_subset(d.all_vertices()) {
        return Err(Error::Domain(format!("{t} is not a type of {form}")));
    }
    let gamma = preset_galois(form, &d)?;
    if let Some(s) = t.violating_element(&gamma) {
        return Err(Error::Domain(format!(
            "{t} is not invariant under {s} for {form}"
        )));
    }
    Ok(())
}

/// `²An`: with `m` the rotation-orbit size of `t`,
/// odd `m` gives `(1, 1)`; even `m` gives `(2, 1)` or `(2, 2)` as `(n+1)/m`
/// is odd or even.
pub fn kernel_2a(n: usize, t: &MultiType) -> Result<KernelCounts> {
    let form = TwistedForm::new(Family::A, n, Twist::TwoA)?;
    single_part(t)?;
    check_invariant(&form, t)?;
    let d = build_affine_diagram(Family::A, n)?;
    let m = orbit_of(t, &preset_xi_nr(&form, &d)?).len();
    Ok(if m % 2 == 1 {
        KernelCounts::new(1, 1)
    } else if ((n + 1) / m) % 2 == 1 {
        KernelCounts::new(2, 1)
    } else {
        KernelCounts::new(2, 2)
    })
}

/// `²Dn`, `n ≥ 4` (non-trialitarian): by the size of `R`.
pub fn kernel_2d(n: usize, t: &MultiType) -> Result<KernelCounts> {
    let form = TwistedForm::new(Family::D, n, Twist::TwoD)?;
    let part = single_part(t)?;
    check_invariant(&form, t)?;
    let split = TwoDnDecomposition::new(n, part)?;
    Ok(match split.r_part.len() {
        0 | 4 if split.s_is_tau_stable() => KernelCounts::new(1, 1),
        0 | 4 => KernelCounts::new(2, 2),
        1 | 3 => KernelCounts::new(2, 1),
        2 => KernelCounts::new(2, 2),
        _ => unreachable!("R has at most four vertices"),
    })
}

/// Every form other than `²An` and `²Dn` has trivial kernel on every type.
pub fn kernel_const(form: &TwistedForm, _t: &MultiType) -> Result<KernelCounts> {
    match form.twist() {
        Twist::TwoA | Twist::TwoD => Err(Error::IncompatibleForm(format!(
            "{form} has a non-constant closed form"
        ))),
        _ => Ok(KernelCounts::TRIVIAL),
    }
}

/// Whether oracle counts agree with the closed form for `form`.
///
/// A split form has trivial Galois action, so every orbit member is fixed
/// and the oracle's `fixed_count` is the orbit size; only the kernel order
/// is comparable there.
pub fn agrees(form: &TwistedForm, oracle: KernelCounts, closed: KernelCounts) -> bool {
    match form.twist() {
        Twist::Split => oracle.quotient_count == closed.quotient_count,
        _ => oracle == closed,
    }
}

pub fn dispatch(form: &TwistedForm, t: &MultiType) -> Result<KernelCounts> {
    check_invariant(form, t)?;
    match form.twist() {
        Twist::TwoA => kernel_2a(form.rank(), t),
        Twist::TwoD => kernel_2d(form.rank(), t),
        _ => kernel_const(form, t),
    }
}
