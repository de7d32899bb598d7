//! Exact kernel computations for Galois cohomology of quasi-split adjoint
//! groups over local fields, carried out at the level of facet types on
//! affine Dynkin diagrams.
//!
//! - [`dynkin`]: affine diagrams, automorphisms, special vertices.
//! - [`permgroups`]: permutations, small permutation groups, twisted-form presets.
//! - [`kernel`]: the orbit / Galois-filter / quotient oracle.
//! - [`closedform`]: closed-form counts for `²An` and `²Dn`.
//! - [`spec`], [`pipeline`], [`table`], [`sweep`]: group specifications,
//!   the product reduction, kernel tables and the verification sweep.

pub mod closedform;
pub mod dynkin;
pub mod error;
pub mod kernel;
pub mod permgroups;
pub mod pipeline;
pub mod spec;
pub mod sweep;
pub mod table;

pub use closedform::{dispatch, kernel_2a, kernel_2d, kernel_const, KernelCounts, TwoDnDecomposition};
pub use dynkin::{build_affine_diagram, diagram_automorphisms, special_vertices, Diagram, Family, VertexSet};
pub use error::{Error, Result};
pub use kernel::{ext_action_kernel, kernel_size, KernelProblem, KernelReport, MultiType};
pub use permgroups::{
    conjugation_fixed, preset_galois, preset_xi_nr, PermGroup, Permutation, Twist, TwistedForm,
};
pub use pipeline::{compute_kernel, FactorReport, QuasiSplit, Report, Rule};
pub use spec::{parse_group_spec, FactorSpec, GroupSpec, Mode, Splitting, WeilRestriction};
pub use sweep::{verify_sweep, SweepSummary};
pub use table::{emit_table, TableFormat};
