//! The one-leg stable-pairs vertex: torus-fixed pairs on `C^3` along a leg
//! of profile `mu`, encoded as chains of skew diagrams, their Laurent
//! polynomial `H`, and the constant-term criterion behind divisibility of
//! the vertex by `s1 + s2`.
//!
//! A box `(a, b)` of a partition sits in part `b` at position `a` (both
//! zero-based) and carries the weight `t1^a t2^b`.

mod laurent3;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use thiserror::Error;

pub use laurent3::{Exps, Laurent3};

use crate::par;
use crate::series::rational::{rat, ratio};
use crate::series::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VertexError {
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<u32>),
    #[error("cannot parse partition from {0:?}")]
    ParsePartition(String),
    #[error("invalid box configuration: {0}")]
    InvalidConfig(String),
    #[error("H did not reduce to a Laurent polynomial: (1-t3)^{0} remains")]
    NotPolynomial(u32),
    #[error("constant term requested of a fraction with (1-t3)^{0} in the denominator")]
    NonzeroDenominator(u32),
}

/// A Young diagram.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, VertexError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(VertexError::InvalidPartition(parts));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, (a, b): (i64, i64)) -> bool {
        a >= 0 && b >= 0 && (b as usize) < self.parts.len() && a < self.parts[b as usize] as i64
    }

    pub fn boxes(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::with_capacity(self.size() as usize);
        for (b, &p) in self.parts.iter().enumerate() {
            for a in 0..p {
                out.push((a as i64, b as i64));
            }
        }
        out
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.parts.len() <= other.parts.len() && self.parts.iter().zip(&other.parts).all(|(x, y)| x <= y)
    }

    pub fn transpose(&self) -> Self {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width).map(|a| self.parts.iter().filter(|&&p| p > a).count() as u32).collect();
        Self { parts }
    }

    /// Every partition contained in `self`, in lexicographic order of parts.
    pub fn subpartitions(&self) -> Vec<Partition> {
        fn go(bounds: &[u32], cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition { parts: prefix.clone() });
            if let Some((&first, rest)) = bounds.split_first() {
                for p in 1..=first.min(cap) {
                    prefix.push(p);
                    go(rest, p, prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(&self.parts, u32::MAX, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Accepts `2,1`, `(2,1)`, and `""`, `()` or `0` for the empty partition.
impl FromStr for Partition {
    type Err = VertexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if inner.is_empty() || inner == "0" {
            return Ok(Self::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| VertexError::ParsePartition(s.to_string()))?;
        Self::new(parts)
    }
}

/// A skew diagram `mu \ nu`, stored as its set of boxes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SkewDiagram {
    boxes: BTreeSet<(i64, i64)>,
}

impl SkewDiagram {
    pub fn difference(mu: &Partition, nu: &Partition) -> Self {
        Self { boxes: mu.boxes().into_iter().filter(|&x| !nu.contains(x)).collect() }
    }

    pub fn from_partition(mu: &Partition) -> Self {
        Self { boxes: mu.boxes().into_iter().collect() }
    }

    pub fn from_boxes<I: IntoIterator<Item = (i64, i64)>>(boxes: I) -> Self {
        Self { boxes: boxes.into_iter().collect() }
    }

    pub fn boxes(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.boxes.iter().copied()
    }

    pub fn size(&self) -> u32 {
        self.boxes.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }
}

/// A torus-fixed pair along a leg: `rho_k = mu \ nu_k` for `-m <= k <= -1`
/// and `rho_k = mu` for `k >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxConfig {
    mu: Partition,
    /// `nu_{-m}, ..., nu_{-1}`.
    nus: Vec<Partition>,
}

impl BoxConfig {
    /// Validates `nu_{-m} = mu`, the decreasing chain, and canonical form.
    pub fn new(mu: Partition, nus: Vec<Partition>) -> Result<Self, VertexError> {
        let bad = |why: &str| Err(VertexError::InvalidConfig(why.to_string()));
        match nus.first() {
            None => return bad("the chain must start with nu_{-m} = mu"),
            Some(first) if *first != mu => return bad("the chain must start with nu_{-m} = mu"),
            _ => {}
        }
        if nus.windows(2).any(|w| !w[1].is_subset_of(&w[0])) {
            return bad("the chain nu_{-m} ⊇ ... ⊇ nu_{-1} is not decreasing");
        }
        if nus.len() > 1 && nus[1] == mu {
            return bad("redundant leading empty rho");
        }
        Ok(Self { mu, nus })
    }

    /// The config with no boxes below level 0.
    pub fn trivial(mu: Partition) -> Self {
        Self { nus: vec![mu.clone()], mu }
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    pub fn nus(&self) -> &[Partition] {
        &self.nus
    }

    /// `m`, the depth of the chain.
    pub fn depth(&self) -> i64 {
        self.nus.len() as i64
    }

    /// `rho_k`, for any integer `k`; empty below `-m`.
    pub fn rho(&self, k: i64) -> SkewDiagram {
        let m = self.depth();
        if k >= 0 {
            SkewDiagram::from_partition(&self.mu)
        } else if k < -m {
            SkewDiagram::default()
        } else {
            SkewDiagram::difference(&self.mu, &self.nus[(k + m) as usize])
        }
    }

    /// `|Q| = sum_{k=-m}^{-1} |rho_k|`.
    pub fn q_size(&self) -> u32 {
        self.nus.iter().map(|nu| self.mu.size() - nu.size()).sum()
    }

    pub fn transpose(&self) -> Self {
        Self { mu: self.mu.transpose(), nus: self.nus.iter().map(Partition::transpose).collect() }
    }

    fn chain_key(&self) -> Vec<Vec<u32>> {
        self.nus.iter().map(|n| n.parts.clone()).collect()
    }
}

impl fmt::Display for BoxConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chain: Vec<String> = self.nus.iter().map(Partition::to_string).collect();
        write!(f, "mu={} nu=[{}]", self.mu, chain.join(" ⊇ "))
    }
}

/// All canonical configs with `|Q| <= |mu| + q_excess_max`, ordered by
/// `(|Q|, chain)`.
pub fn enumerate_configs(mu: &Partition, q_excess_max: u32) -> Vec<BoxConfig> {
    let bound = mu.size() + q_excess_max;
    let subs = mu.subpartitions();
    let mut out = vec![BoxConfig::trivial(mu.clone())];
    // Each level after the first contributes at least one box, so the
    // recursion depth is bounded by `bound`.
    fn extend(
        mu: &Partition,
        subs: &[Partition],
        chain: &mut Vec<Partition>,
        used: u32,
        bound: u32,
        out: &mut Vec<BoxConfig>,
    ) {
        let last = chain.last().expect("nonempty").clone();
        for nu in subs.iter().filter(|nu| nu.is_subset_of(&last) && *nu != mu) {
            let used = used + mu.size() - nu.size();
            if used > bound {
                continue;
            }
            chain.push(nu.clone());
            out.push(BoxConfig { mu: mu.clone(), nus: chain.clone() });
            extend(mu, subs, chain, used, bound, out);
            chain.pop();
        }
    }
    extend(mu, &subs, &mut vec![mu.clone()], 0, bound, &mut out);
    out.sort_by_key(|x| (x.q_size(), x.chain_key()));
    out
}

fn diagram_weights<I: IntoIterator<Item = (i64, i64)>>(boxes: I, c: i64) -> Laurent3 {
    Laurent3::from_terms(boxes.into_iter().map(|(a, b)| ((a, b, c), 1)))
}

/// `G = sum_{(a,b) in mu} t1^a t2^b`.
fn weight_g(mu: &Partition) -> Laurent3 {
    diagram_weights(mu.boxes(), 0)
}

/// `F = G/(1-t3) + sum_{k<0} t3^k sum_{(a,b) in rho_k} t1^a t2^b`.
pub fn weight_series_f(c: &BoxConfig) -> Laurent3 {
    let mut f = weight_g(&c.mu).mul(&Laurent3::inv_one_minus_t3());
    for k in -c.depth()..0 {
        f = f.add(&diagram_weights(c.rho(k).boxes(), k));
    }
    f
}

/// `H = F - Fbar/(t1 t2 t3) + F Fbar prod_i (1-t_i)/t_i
///   - (G + Gbar/(t1 t2) - G Gbar (1-t1)(1-t2)/(t1 t2)) / (1-t3)`.
pub fn vertex_h(c: &BoxConfig) -> Result<Laurent3, VertexError> {
    let f = weight_series_f(c);
    let fb = f.bar();
    let g = weight_g(&c.mu);
    let gb = g.bar();
    let one_minus = |m: Exps| Laurent3::from_terms([((0, 0, 0), 1), (m, -1)]);
    let p12 = one_minus((1, 0, 0)).mul(&one_minus((0, 1, 0))).shift((-1, -1, 0));
    let p123 = p12.mul(&one_minus((0, 0, 1))).shift((0, 0, -1));

    let leg = g.add(&gb.shift((-1, -1, 0))).sub(&g.mul(&gb).mul(&p12)).mul(&Laurent3::inv_one_minus_t3());
    let h = f.sub(&fb.shift((-1, -1, -1))).add(&f.mul(&fb).mul(&p123)).sub(&leg);
    match h.denominator_exponent() {
        0 => Ok(h),
        e => Err(VertexError::NotPolynomial(e)),
    }
}

/// The constant term of `H(t, 1/t, u)`: coefficients with `a = b`, `c = 0`.
pub fn constant_term_specialized(h: &Laurent3) -> Result<Rational, VertexError> {
    match h.denominator_exponent() {
        0 => Ok(rat(h.numerator_terms().filter(|((a, b, c), _)| a == b && *c == 0).map(|(_, v)| v).sum())),
        e => Err(VertexError::NonzeroDenominator(e)),
    }
}

/// `c_r`: boxes with `a - b = r`.
pub fn profile_c(rho: &SkewDiagram, r: i64) -> i64 {
    rho.boxes().filter(|(a, b)| a - b == r).count() as i64
}

/// `d_r = c_r - c_{r+1}`.
pub fn profile_d(rho: &SkewDiagram, r: i64) -> i64 {
    profile_c(rho, r) - profile_c(rho, r + 1)
}

/// Diagonal indices `r` at which some `d_r` of the chain can be nonzero.
fn diagonal_range(mu: &Partition) -> std::ops::RangeInclusive<i64> {
    -(mu.parts.len() as i64) - 1..=mu.parts.first().copied().unwrap_or(0) as i64
}

/// `d_r(rho_k) - d_r(rho_{k-1})` for `k = -m+1, ..., 0`, keyed by `r`.
pub fn d_jumps(c: &BoxConfig) -> BTreeMap<i64, Vec<i64>> {
    let rhos: Vec<SkewDiagram> = (-c.depth()..=0).map(|k| c.rho(k)).collect();
    diagonal_range(&c.mu)
        .map(|r| {
            let d: Vec<i64> = rhos.iter().map(|rho| profile_d(rho, r)).collect();
            (r, d.windows(2).map(|w| w[1] - w[0]).collect())
        })
        .collect()
}

/// `-c_0(rho_{-1}) + 1/2 sum_r (d_r(rho_0)^2 - sum_{k=-m+1}^{0} (d_r(rho_k) - d_r(rho_{k-1}))^2)`.
pub fn h677_value(c: &BoxConfig) -> Rational {
    let mu = SkewDiagram::from_partition(&c.mu);
    let mut twice: i64 = 0;
    for (r, jumps) in d_jumps(c) {
        let top = profile_d(&mu, r);
        twice += top * top - jumps.iter().map(|j| j * j).sum::<i64>();
    }
    rat(-profile_c(&c.rho(-1), 0)) + ratio(twice, 2)
}

/// One config's row of the divisibility audit.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigAudit {
    pub config: BoxConfig,
    pub q_size: u32,
    pub h677: Rational,
    pub direct: Rational,
    /// `h677 == direct`.
    pub formula_matches: bool,
    /// `h677 <= 0`.
    pub nonpositive: bool,
    /// `h677 <= -1` when `|Q| > |mu|`; vacuously true otherwise.
    pub negative_when_excess: bool,
    /// `H` has a nonzero `t1^0 t2^0 t3^0` coefficient.
    pub zero_weight_monomial: bool,
}

impl ConfigAudit {
    pub fn passes(&self) -> bool {
        self.formula_matches && self.nonpositive && self.negative_when_excess
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivisibilityReport {
    pub mu: Partition,
    pub q_excess_max: u32,
    pub rows: Vec<ConfigAudit>,
}

impl DivisibilityReport {
    pub fn violations(&self) -> impl Iterator<Item = &ConfigAudit> {
        self.rows.iter().filter(|r| !r.passes())
    }

    pub fn zero_weight_flags(&self) -> impl Iterator<Item = &ConfigAudit> {
        self.rows.iter().filter(|r| r.zero_weight_monomial)
    }

    pub fn passes(&self) -> bool {
        self.violations().next().is_none()
    }
}

pub fn audit_config(config: &BoxConfig) -> Result<ConfigAudit, VertexError> {
    let h = vertex_h(config)?;
    let direct = constant_term_specialized(&h)?;
    let h677 = h677_value(config);
    let q_size = config.q_size();
    Ok(ConfigAudit {
        q_size,
        formula_matches: h677 == direct,
        nonpositive: h677 <= Rational::zero(),
        negative_when_excess: q_size <= config.mu.size() || h677 <= rat(-1),
        zero_weight_monomial: h.coeff((0, 0, 0)) != 0,
        h677,
        direct,
        config: config.clone(),
    })
}

/// Audit every config with `|Q| <= |mu| + q_excess_max`.
pub fn divisibility_audit(mu: &Partition, q_excess_max: u32) -> Result<DivisibilityReport, VertexError> {
    let configs = enumerate_configs(mu, q_excess_max);
    let rows = par::map_slice(&configs, audit_config).into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(DivisibilityReport { mu: mu.clone(), q_excess_max, rows })
}
