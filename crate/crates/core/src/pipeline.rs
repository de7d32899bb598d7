//! Reduction of a group specification to per-factor kernel computations.

use serde::Serialize;

use crate::closedform::{agrees, dispatch, KernelCounts};
use crate::dynkin::{build_affine_diagram, Diagram};
use crate::error::{Error, Result};
use crate::kernel::{kernel_size, KernelProblem, KernelReport, MultiType};
use crate::permgroups::{conjugation_fixed, preset_galois, preset_xi_nr, PermGroup, TwistedForm};
use crate::spec::{FactorSpec, GroupSpec, Mode, Splitting};

/// How a factor's counts were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    /// Oracle only; no closed form covers the type.
    #[serde(rename = "oracle")]
    Oracle,
    /// Oracle, confirmed by the closed form.
    #[serde(rename = "closedform")]
    ClosedForm,
    #[serde(rename = "ramified-trivial")]
    RamifiedTrivial,
    #[serde(rename = "parahoric-trivial")]
    ParahoricTrivial,
    /// Weil restriction: computed on the underlying factor.
    #[serde(rename = "weil-delegated")]
    WeilDelegated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorReport {
    pub factor: FactorSpec,
    pub fixed_count: usize,
    pub quotient_count: usize,
    pub rule_applied: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub per_factor: Vec<FactorReport>,
    pub total_kernel: u64,
    pub k_exponent: u32,
}

/// The presets of one quasi-split form, built once and reused across types.
#[derive(Debug, Clone)]
pub struct QuasiSplit {
    form: TwistedForm,
    diagram: Diagram,
    xi_nr: PermGroup,
    gamma: PermGroup,
    xi: PermGroup,
}

impl QuasiSplit {
    pub fn new(form: TwistedForm) -> Result<Self> {
        let diagram = build_affine_diagram(form.family(), form.rank())?;
        let xi_nr = preset_xi_nr(&form, &diagram)?;
        let gamma = preset_galois(&form, &diagram)?;
        let xi = conjugation_fixed(&xi_nr, &gamma)?;
        Ok(QuasiSplit {
            form,
            diagram,
            xi_nr,
            gamma,
            xi,
        })
    }

    pub fn form(&self) -> &TwistedForm {
        &self.form
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

    /// The oracle with `t_max` the full chamber.
    pub fn kernel(&self, t: &MultiType) -> Result<KernelReport> {
        let problem = KernelProblem::new(
            self.diagram.clone(),
            self.xi_nr.clone(),
            self.gamma.clone(),
            self.xi.clone(),
            t.clone(),
            self.diagram.all_vertices(),
        )?;
        kernel_size(&problem)
    }

    /// Oracle counts, cross-checked against the closed form for single-part types.
    ///
    /// Returns whether the closed form applied; a disagreement is a
    /// [`Error::Consistency`].
    pub fn checked_kernel(&self, t: &MultiType) -> Result<(KernelReport, bool)> {
        let report = self.kernel(t)?;
        if t.as_single().is_none() {
            return Ok((report, false));
        }
        let closed = dispatch(&self.form, t)?;
        let oracle = KernelCounts::new(report.fixed_count, report.quotient_count);
        if !agrees(&self.form, oracle, closed) {
            return Err(Error::Consistency(format!(
                "{}, type {t}: oracle gives {oracle}, closed form gives {closed}",
                self.form
            )));
        }
        Ok((report, true))
    }
}

pub fn oracle_kernel(form: &TwistedForm, t: &MultiType) -> Result<KernelReport> {
    QuasiSplit::new(*form)?.kernel(t)
}

fn factor_counts(mode: Mode, f: &FactorSpec) -> Result<FactorReport> {
    let trivial = |rule| FactorReport {
        factor: f.clone(),
        fixed_count: 1,
        quotient_count: 1,
        rule_applied: rule,
    };
    if mode == Mode::Parahoric {
        return Ok(trivial(Rule::ParahoricTrivial));
    }
    if f.splitting == Splitting::Ramified {
        return Ok(trivial(Rule::RamifiedTrivial));
    }
    let (report, closed) = QuasiSplit::new(f.form()?)?.checked_kernel(&f.facet_type)?;
    let rule = match (f.weil_restriction.is_some(), closed) {
        (true, _) => Rule::WeilDelegated,
        (false, true) => Rule::ClosedForm,
        (false, false) => Rule::Oracle,
    };
    Ok(FactorReport {
        factor: f.clone(),
        fixed_count: report.fixed_count,
        quotient_count: report.quotient_count,
        rule_applied: rule,
    })
}

/// The kernel of the whole product: the product of the factor kernels.
pub fn compute_kernel(spec: &GroupSpec) -> Result<Report> {
    spec.validate()?;
    let per_factor = spec
        .factors
        .iter()
        .enumerate()
        .map(|(i, f)| {
            factor_counts(spec.mode, f).map_err(|e| match e {
                Error::Consistency(_) => e,
                other => Error::Semantic {
                    factor: i,
                    message: other.to_string(),
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let total = per_factor
        .iter()
        .try_fold(1u64, |acc, r| acc.checked_mul(r.quotient_count as u64));
    let total_kernel = total.ok_or_else(|| Error::Consistency("kernel order overflows u64".into()))?;
    if !total_kernel.is_power_of_two() {
        return Err(Error::Consistency(format!(
            "kernel order {total_kernel} is not a power of 2"
        )));
    }
    Ok(Report {
        per_factor,
        total_kernel,
        k_exponent: total_kernel.trailing_zeros(),
    })
}
