//! Exact computation of the two-parameter Tevelev degrees `Tev_{g,ℓ,r}`.
//!
//! Four independent evaluation routes are provided and cross-checked
//! against each other:
//!
//! * [`recursion`]: the boundary recursion down to genus 0, memoized.
//! * [`closed_form`]: the master binomial formulas.
//! * [`lattice_paths`]: summation of `E_s` vectors over lattice paths in the
//!   quadrant `ℓ ≤ 0, r ≥ 1`, by exhaustive enumeration.
//! * [`coefficients`]: closed forms for the refined path counts `c^s_{ℓ,r}`.
//!
//! [`verify`] sweeps parameter grids and reports any disagreement, and
//! [`cli`] is the command-line front end.
//!
//! All arithmetic is exact (`num-bigint`); there is no floating point.

pub mod cli;
pub mod closed_form;
pub mod coefficients;
pub mod error;
pub mod lattice_paths;
pub mod primitives;
pub mod recursion;
pub mod verify;

pub use closed_form::{tev_closed, tev_nonneg_ell};
pub use coefficients::{c_coeff, d_closed_axis, expand, t_ell1_j1, Expansion};
pub use error::{Error, Result};
pub use lattice_paths::{
    count_paths_by_index, d_count, enumerate_paths, path_stats, tev_via_paths, LatticePath,
    PathStats, Step,
};
pub use primitives::{binom, catalan, e_entry, is_valid, BigCount, TevParams};
pub use recursion::{tev_recursive, MemoTable};
pub use verify::{cross_check, CheckReport, GridSpec, Method};
