//! Verification suites: each returns one named pass/fail check per identity.

use anyhow::Result;
use kkv_core::kkv::{
    bps_transform_check, corollary2_log_identity, euler_pk_table, gw_pairs_checks, inverse_euler_pk, kkv_R_table,
    kkv_r_table, ky_euler_table, pairs_signed_z_table, point_numerators, point_series_pairs, point_series_pairs_upto,
    quasimodularity_audit, r_table_checks, KkvError,
};
use kkv_core::lowgenus::{appendix_identities, boundary_reports, closed_form_identities};
use kkv_core::vertex::{divisibility_audit, Partition};
use num_traits::Zero;
use serde_json::json;

use crate::output::Record;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Where the check failed, or a short summary when it passed.
    pub detail: String,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed: true, detail: detail.into() }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed: false, detail: detail.into() }
    }

    fn from_result(name: &str, r: Result<(), KkvError>) -> Self {
        match r {
            Ok(()) => Self::pass(name, ""),
            Err(e) => Self::fail(name, e.to_string()),
        }
    }

    /// `name` passes iff `failures` is empty; otherwise report the first.
    fn from_failures(name: &str, total: usize, failures: Vec<String>) -> Self {
        match failures.first() {
            None => Self::pass(name, format!("{total} cases")),
            Some(first) => Self::fail(name, format!("{} of {total} fail; first: {first}", failures.len())),
        }
    }

    pub fn record(&self) -> Record {
        let mut r = Record::new();
        r.insert("check".into(), json!(self.name));
        r.insert("passed".into(), json!(self.passed));
        r.insert("detail".into(), json!(self.detail));
        r
    }

    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            format!("{status}  {}", self.name)
        } else {
            format!("{status}  {}: {}", self.name, self.detail)
        }
    }
}

pub struct KkvBounds {
    pub g_max: u32,
    pub h_max: u32,
    pub n_max: u32,
    pub u_order: u32,
    pub q_order: u32,
}

pub fn kkv_suite(b: &KkvBounds) -> Result<Vec<Check>> {
    let r = kkv_r_table(b.g_max, b.h_max);
    let (_, reports) = pairs_signed_z_table(b.n_max as i64, b.h_max);
    let bad_z: Vec<String> =
        reports.iter().filter(|z| !(z.symmetric && z.matches_euler)).map(|z| format!("h = {}", z.h)).collect();
    Ok(vec![
        Check::from_result("r integrality and g <= h support", r_table_checks(&r)),
        Check::from_result("R odd u-powers vanish", kkv_R_table(b.g_max, b.h_max).map(|_| ())),
        Check::from_result("BPS transform r -> R", bps_transform_check(b.g_max, b.h_max)),
        Check::from_result(
            "log identity of the exponential formula",
            corollary2_log_identity(b.u_order as i64, b.q_order as i64),
        ),
        Check::from_result("Euler characteristics vanish for n < 1-h", ky_euler_table(b.n_max as i64, b.h_max).map(|_| ())),
        Check::from_failures("signed Z = y/(1+y)^2 N_h(y), N_h symmetric", reports.len(), bad_z),
    ])
}

pub struct PointBounds {
    pub k: u32,
    pub n_max: u32,
    pub h_max: u32,
}

pub fn points_suite(b: &PointBounds) -> Result<Vec<Check>> {
    let n_max = b.n_max as i64;
    let c0 = point_series_pairs(0, n_max, b.h_max);
    let (z, _) = pairs_signed_z_table(n_max, b.h_max);
    let k0: Vec<String> = z
        .entries()
        .filter(|(idx, v)| c0.get(&[0, idx[0], idx[1]]) != Some(*v))
        .map(|(idx, _)| format!("n = {}, h = {}", idx[0], idx[1]))
        .collect();

    let top = (n_max + 2 * b.h_max as i64 - 1).max(b.k as i64) as u32;
    let c = point_series_pairs_upto(top, n_max, b.h_max);
    let support: Vec<String> = c
        .entries()
        .filter(|(idx, v)| idx[0] > idx[2] && !v.is_zero())
        .map(|(idx, _)| format!("{idx:?}"))
        .collect();

    let mut asym = Vec::new();
    for k in 0..=b.k {
        for (h, a) in point_numerators(k, b.h_max).iter().enumerate() {
            if !a.is_symmetric() {
                asym.push(format!("k = {k}, h = {h}"));
            }
        }
    }

    let euler = euler_pk_table(top, n_max, b.h_max)?;
    let mut round_trip = Vec::new();
    let mut cells = 0;
    for (idx, v) in c.entries() {
        let (k, n, h) = (idx[0], idx[1], idx[2]);
        if k > b.k as i64 || k > n + 2 * h - 1 {
            continue;
        }
        cells += 1;
        if inverse_euler_pk(&euler, k as u32, n, h)? != *v {
            round_trip.push(format!("k = {k}, n = {n}, h = {h}"));
        }
    }
    Ok(vec![
        Check::from_failures("k = 0 point series reproduces signed Euler characteristics", z.len(), k0),
        Check::from_failures("C^k_{n,h} = 0 for k > h", c.len(), support),
        Check::from_failures("point numerators symmetric in y <-> 1/y", (b.k as usize + 1) * (b.h_max as usize + 1), asym),
        Check::from_failures("Euler characteristics of P^k invert back to C^k", cells, round_trip),
    ])
}

pub struct GwBounds {
    pub k: u32,
    pub g_max: u32,
    pub h_max: u32,
    pub u_order: u32,
}

pub fn gwpt_suite(b: &GwBounds) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for k in 0..=b.k {
        let reports = gw_pairs_checks(b.h_max, b.u_order as i64, k)?;
        let bad: Vec<String> = reports
            .iter()
            .filter(|r| !r.equal)
            .map(|r| {
                let at = r.gw_side.first_mismatch(&r.pairs_side_substituted);
                format!("h = {}, u^{}", r.h, at.map_or("?".to_string(), |e| e.to_string()))
            })
            .collect();
        out.push(Check::from_failures(&format!("GW = pairs under y = -e^(iu), k = {k}"), reports.len(), bad));
    }
    let audit = quasimodularity_audit(b.k, b.g_max)?;
    let weight: Vec<String> = audit
        .iter()
        .filter(|e| !e.element.is_zero() && e.homogeneous_weight != Some(e.max_weight))
        .map(|e| format!("k = {}, g = {}", e.k, e.g))
        .collect();
    out.push(Check::from_failures("Delta * u-rows quasimodular of weight 2g + 2k", audit.len(), weight));
    let diag: Vec<_> = audit.iter().filter(|e| e.matches_t0_power.is_some()).collect();
    let t0: Vec<String> =
        diag.iter().filter(|e| e.matches_t0_power != Some(true)).map(|e| format!("g = {}", e.g)).collect();
    out.push(Check::from_failures("k = g rows equal T0^g / Delta", diag.len(), t0));
    Ok(out)
}

pub fn appendix_suite(q_order: u32, h_max: u32) -> Result<Vec<Check>> {
    let mut out: Vec<Check> = appendix_identities(q_order as i64)
        .into_iter()
        .chain(closed_form_identities(q_order as i64))
        .map(|c| match c.first_mismatch {
            None => Check::pass(c.name, format!("through q^{q_order}")),
            Some(e) => Check::fail(c.name, format!("first mismatch at q^{e}")),
        })
        .collect();
    for rep in boundary_reports(h_max)? {
        let name = format!("genus {} boundary closed form matches R_(g,h) for h <= {h_max}", rep.genus);
        let bad: Vec<&str> = rep.intermediate_checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect();
        out.push(match (rep.matches_kkv, bad.first()) {
            (false, _) => Check::fail(name, "table mismatch"),
            (true, Some(first)) => Check::fail(name, format!("intermediate step fails: {first}")),
            (true, None) => Check::pass(name, format!("{} intermediate steps", rep.intermediate_checks.len())),
        });
    }
    Ok(out)
}

pub fn vertex_suite(mu: &Partition, excess: u32) -> Result<Vec<Check>> {
    let report = divisibility_audit(mu, excess)?;
    let n = report.rows.len();
    let collect = |f: &dyn Fn(&kkv_core::vertex::ConfigAudit) -> bool| -> Vec<String> {
        report.rows.iter().filter(|r| !f(r)).map(|r| r.config.to_string()).collect()
    };
    let flags = report.zero_weight_flags().count();
    Ok(vec![
        Check::from_failures("closed form equals constant term of H(t, 1/t, u)", n, collect(&|r| r.formula_matches)),
        Check::from_failures("constant term <= 0", n, collect(&|r| r.nonpositive)),
        Check::from_failures("constant term <= -1 when |Q| > |mu|", n, collect(&|r| r.negative_when_excess)),
        Check::pass("t1^0 t2^0 t3^0 monomial in H (flag only)", format!("{flags} of {n} configs flagged")),
    ])
}
