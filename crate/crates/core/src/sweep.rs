//! Exhaustive comparison of the closed forms against the oracle.

use rayon::prelude::*;
use serde::Serialize;

use crate::closedform::{agrees, dispatch, KernelCounts};
use crate::dynkin::{Family, VertexSet};
use crate::error::{Error, Result};
use crate::kernel::MultiType;
use crate::permgroups::{Twist, TwistedForm};
use crate::pipeline::QuasiSplit;

/// Largest diagram the sweep enumerates all vertex subsets of.
pub const MAX_SWEEP_VERTICES: usize = 24;

/// Every strongly Γ-invariant single-part type of the form, in canonical order,
/// together with the number of subsets examined to find them.
pub fn invariant_types(qs: &QuasiSplit) -> Result<(Vec<VertexSet>, u64)> {
    let n = qs.diagram().vertex_count();
    if n > MAX_SWEEP_VERTICES {
        return Err(Error::Domain(format!(
            "{} has {n} vertices; exhaustive enumeration stops at {MAX_SWEEP_VERTICES}",
            qs.form()
        )));
    }
    let gens = qs.gamma().generators();
    let mut types: Vec<VertexSet> = (0..1u64 << n)
        .map(VertexSet::from_mask)
        .filter(|t| gens.iter().all(|s| s.stabilizes(*t)))
        .collect();
    types.sort();
    Ok((types, 1u64 << n))
}

/// Forms covered by a sweep with the given `A` and `D` rank bounds.
pub fn sweep_forms(max_a: usize, max_d: usize) -> Result<Vec<TwistedForm>> {
    Family::A.check_rank(max_a)?;
    Family::D.check_rank(max_d)?;
    let mut forms = Vec::new();
    for n in 1..=max_a {
        forms.push(TwistedForm::new(Family::A, n, Twist::TwoA)?);
        forms.push(TwistedForm::new(Family::A, n, Twist::Split)?);
    }
    for n in 4..=max_d {
        forms.push(TwistedForm::new(Family::D, n, Twist::TwoD)?);
        forms.push(TwistedForm::new(Family::D, n, Twist::Split)?);
    }
    forms.push(TwistedForm::new(Family::D, 4, Twist::ThreeD4)?);
    forms.push(TwistedForm::new(Family::D, 4, Twist::SixD4)?);
    forms.push(TwistedForm::new(Family::E6, 6, Twist::TwoE6)?);
    for family in [Family::E6, Family::E7, Family::E8, Family::F4, Family::G2] {
        forms.push(TwistedForm::new(family, family.min_rank(), Twist::Split)?);
    }
    for n in 2..=max_d {
        forms.push(TwistedForm::new(Family::B, n, Twist::Split)?);
    }
    for n in 3..=max_d {
        forms.push(TwistedForm::new(Family::C, n, Twist::Split)?);
    }
    Ok(forms)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub form: String,
    pub facet_type: VertexSet,
    pub oracle: Option<KernelCounts>,
    pub closed_form: Option<KernelCounts>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormSummary {
    pub form: String,
    pub subsets_examined: u64,
    pub cases_checked: usize,
    /// How many checked types have a kernel of order 2.
    pub nontrivial_kernels: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub forms: Vec<FormSummary>,
    pub subsets_examined: u64,
    pub cases_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl SweepSummary {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn check_type(qs: &QuasiSplit, t: VertexSet) -> std::result::Result<KernelCounts, Mismatch> {
    let mt = MultiType::single(t);
    let oracle = qs
        .kernel(&mt)
        .map(|r| KernelCounts::new(r.fixed_count, r.quotient_count));
    let closed = dispatch(qs.form(), &mt);
    match (oracle, closed) {
        (Ok(o), Ok(c)) if agrees(qs.form(), o, c) => Ok(o),
        (oracle, closed) => {
            let error = [oracle.as_ref().err(), closed.as_ref().err()]
                .into_iter()
                .flatten()
                .map(|e| e.to_string())
                .collect::<Vec<_>>();
            Err(Mismatch {
                form: qs.form().to_string(),
                facet_type: t,
                oracle: oracle.ok(),
                closed_form: closed.ok(),
                error: (!error.is_empty()).then(|| error.join("; ")),
            })
        }
    }
}

fn sweep_form(form: TwistedForm) -> (FormSummary, Vec<Mismatch>) {
    let fail = |e: Error| {
        let summary = FormSummary {
            form: form.to_string(),
            subsets_examined: 0,
            cases_checked: 0,
            nontrivial_kernels: 0,
        };
        let m = Mismatch {
            form: form.to_string(),
            facet_type: VertexSet::EMPTY,
            oracle: None,
            closed_form: None,
            error: Some(e.to_string()),
        };
        (summary, vec![m])
    };
    let qs = match QuasiSplit::new(form) {
        Ok(qs) => qs,
        Err(e) => return fail(e),
    };
    let (types, examined) = match invariant_types(&qs) {
        Ok(x) => x,
        Err(e) => return fail(e),
    };
    let results: Vec<_> = types.par_iter().map(|&t| check_type(&qs, t)).collect();
    let nontrivial = results
        .iter()
        .filter(|r| matches!(r, Ok(c) if c.quotient_count > 1))
        .count();
    let mismatches: Vec<Mismatch> = results.into_iter().filter_map(|r| r.err()).collect();
    let summary = FormSummary {
        form: form.to_string(),
        subsets_examined: examined,
        cases_checked: types.len(),
        nontrivial_kernels: nontrivial,
    };
    (summary, mismatches)
}

/// Compares closed form and oracle on every strongly Γ-invariant single-part
/// type of every form within the bounds. Mismatches are collected, not raised.
pub fn verify_sweep(max_a: usize, max_d: usize) -> Result<SweepSummary> {
    let forms = sweep_forms(max_a, max_d)?;
    let per_form: Vec<_> = forms.into_par_iter().map(sweep_form).collect();
    let mut summary = SweepSummary {
        forms: Vec::with_capacity(per_form.len()),
        subsets_examined: 0,
        cases_checked: 0,
        mismatches: Vec::new(),
    };
    for (f, m) in per_form {
        summary.subsets_examined += f.subsets_examined;
        summary.cases_checked += f.cases_checked;
        summary.forms.push(f);
        summary.mismatches.extend(m);
    }
    Ok(summary)
}
