//! Kernel tables: one row per rank and `Ξⁿʳ`-class of Galois-invariant types.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::closedform::TwoDnDecomposition;
use crate::dynkin::VertexSet;
use crate::error::{Error, Result};
use crate::kernel::{orbit_of, MultiType};
use crate::permgroups::{Twist, TwistedForm};
use crate::pipeline::QuasiSplit;
use crate::sweep::invariant_types;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Tsv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tsv" => Ok(TableFormat::Tsv),
            "json" => Ok(TableFormat::Json),
            other => Err(Error::Domain(format!("unknown table format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub rank: usize,
    #[serde(rename = "type")]
    pub facet_type: VertexSet,
    pub case: String,
    pub fixed_count: usize,
    pub quotient_count: usize,
    /// Orbit size, for `²An`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// End labels `1..=4` in the type, for `²Dn`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_labels: Option<Vec<usize>>,
    /// Inner part of the type, for `²Dn`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_part: Option<VertexSet>,
}

fn forms_for(twist: Twist, max_rank: usize) -> Result<Vec<TwistedForm>> {
    let family = twist
        .family()
        .ok_or_else(|| Error::Domain("split forms have no kernel table".into()))?;
    let ranks = match twist {
        Twist::TwoA | Twist::TwoD => family.min_rank()..=max_rank,
        _ => family.min_rank()..=family.min_rank(),
    };
    if max_rank < *ranks.start() {
        return Err(Error::Domain(format!(
            "{twist} needs rank at least {}, got {max_rank}",
            ranks.start()
        )));
    }
    ranks.map(|n| TwistedForm::new(family, n, twist)).collect()
}

fn rows_for(form: TwistedForm) -> Result<Vec<TableRow>> {
    let qs = QuasiSplit::new(form)?;
    let (types, _) = invariant_types(&qs)?;
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for t in types {
        if seen.contains(&t) {
            continue;
        }
        let orbit = orbit_of(&MultiType::single(t), qs.xi_nr());
        seen.extend(orbit.iter().filter_map(MultiType::as_single));
        reps.push((t, orbit.len()));
    }
    reps.into_par_iter()
        .map(|(t, m)| {
            let (report, _) = qs.checked_kernel(&MultiType::single(t))?;
            let mut row = TableRow {
                rank: form.rank(),
                facet_type: t,
                case: "trivial".into(),
                fixed_count: report.fixed_count,
                quotient_count: report.quotient_count,
                m: None,
                r_labels: None,
                s_part: None,
            };
            match form.twist() {
                Twist::TwoA => {
                    row.case = format!("m={m}");
                    row.m = Some(m);
                }
                Twist::TwoD => {
                    let dec = TwoDnDecomposition::new(form.rank(), t)?;
                    row.case = dec.case_label();
                    row.r_labels = Some(dec.r_labels());
                    row.s_part = Some(dec.s_part);
                }
                _ => {}
            }
            Ok(row)
        })
        .collect()
}

/// All rows for `twist` up to `max_rank`, rank ascending then canonical type order.
pub fn table_rows(twist: Twist, max_rank: usize) -> Result<Vec<TableRow>> {
    let forms = forms_for(twist, max_rank)?;
    let per_rank = forms.into_par_iter().map(rows_for).collect::<Result<Vec<_>>>()?;
    Ok(per_rank.into_iter().flatten().collect())
}

pub fn emit_table(twist: Twist, max_rank: usize, format: TableFormat) -> Result<String> {
    let rows = table_rows(twist, max_rank)?;
    Ok(match format {
        TableFormat::Tsv => {
            let mut out = String::from("rank\ttype\tcase\tfixed_count\tquotient_count\n");
            for r in &rows {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}",
                    r.rank, r.facet_type, r.case, r.fixed_count, r.quotient_count
                )
                .unwrap();
            }
            out
        }
        TableFormat::Json => {
            let mut out = serde_json::to_string_pretty(&rows).expect("rows serialize");
            out.push('\n');
            out
        }
    })
}
