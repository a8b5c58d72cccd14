//! K3 curve-counting series: BPS and Hodge tables, Kawai-Yoshioka Euler
//! characteristics, point insertions on the Gromov-Witten and pairs sides,
//! and their correspondence as exact series identities.
//!
//! The equivariant parameter never appears: both sides of every identity
//! carry the same power of it.

mod bps;
mod gw;
mod pairs;
mod table;

use thiserror::Error;

use crate::modforms::ModFormError;
use crate::series::{Rational, SeriesError};

pub use bps::{bps_transform_check, corollary2_log_identity, kkv_r_table, kkv_R_table, r_table_checks};
pub use gw::{
    exp_factor, gw_pairs_check, gw_pairs_checks, point_factor_gw, point_series_gw, quasimodularity_audit,
    gw_point_generating_series, AuditEntry, CorrespondenceReport,
};
pub use pairs::{
    euler_pk, euler_pk_table, inverse_euler_pk, ky_euler_table, pairs_signed_z, pairs_signed_z_table,
    point_numerators, point_series_pairs, point_series_pairs_upto, SignedZ,
};
pub use table::{InvariantTable, TableKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KkvError {
    #[error("{check}: mismatch at {location}")]
    Mismatch { check: &'static str, location: String },
    #[error("nonzero odd power u^{u} at q^{q}")]
    OddPower { u: i64, q: i64 },
    #[error("{what} violated at {index:?}")]
    Support { what: &'static str, index: Vec<i64> },
    #[error("{kind} table has no entry at {index:?}")]
    MissingEntry { kind: TableKind, index: Vec<i64> },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    ModForm(#[from] ModFormError),
}

/// `(-1)^n` as a rational.
pub(crate) fn sign(n: i64) -> Rational {
    Rational::from_integer(if n.rem_euclid(2) == 0 { 1 } else { -1 }.into())
}
