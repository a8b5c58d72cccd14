//! Tables of invariants keyed by integer index tuples.

use std::collections::BTreeMap;
use std::fmt;

use crate::series::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableKind {
    /// BPS counts `r_{g,h}`.
    BpsR,
    /// Hodge integrals `R_{g,h}`.
    HodgeR,
    /// Euler characteristics `e(P_n(S,h))`.
    Euler,
    /// Signed Euler characteristics, the coefficients of `Z^P_h(y)`.
    SignedZ,
    /// Point integrals `C^k_{n,h}` on the pairs side.
    CPoint,
    /// Euler characteristics `e(P^k_n(S,h))`.
    EulerPk,
    /// Point invariants `<(-1)^{g-k} lambda_{g-k} tau_0(p)^k>_{g,h}`.
    GwPoint,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::BpsR => "r",
            TableKind::HodgeR => "R",
            TableKind::Euler => "euler",
            TableKind::SignedZ => "signedZ",
            TableKind::CPoint => "C_point",
            TableKind::EulerPk => "euler_pk",
            TableKind::GwPoint => "gw_point",
        }
    }

    pub fn index_names(self) -> &'static [&'static str] {
        match self {
            TableKind::BpsR | TableKind::HodgeR => &["g", "h"],
            TableKind::Euler | TableKind::SignedZ => &["n", "h"],
            TableKind::CPoint | TableKind::EulerPk => &["k", "n", "h"],
            TableKind::GwPoint => &["k", "g", "h"],
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Values indexed by tuples, ordered lexicographically by index.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantTable {
    kind: TableKind,
    entries: BTreeMap<Vec<i64>, Rational>,
}

impl InvariantTable {
    pub fn new(kind: TableKind) -> Self {
        Self { kind, entries: BTreeMap::new() }
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn insert(&mut self, index: &[i64], value: Rational) {
        assert_eq!(index.len(), self.kind.index_names().len(), "index arity for {}", self.kind);
        self.entries.insert(index.to_vec(), value);
    }

    pub fn get(&self, index: &[i64]) -> Option<&Rational> {
        self.entries.get(index)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[i64], &Rational)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Merge another table of the same kind; later entries win.
    pub fn extend(&mut self, other: InvariantTable) {
        assert_eq!(self.kind, other.kind);
        self.entries.extend(other.entries);
    }
}
