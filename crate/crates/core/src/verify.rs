//! Exhaustive desk-scale verification.
//!
//! For an instance (g,r,d,k) this module enumerates every k-uniform
//! displacement tableau on `[r+1] x [g-d+r]` with alphabet `[g]`, builds the
//! deduplicated torus poset, and checks the structural statements: maximal
//! tori are exactly the scrollar-backed ones, scrollarization lands inside a
//! containing scrollar torus, brute-force splitting-type maximality matches
//! the closed form, and torus dimensions match the expected dimensions.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::Error;
use crate::scrollarize::scrollarize_certified;
use crate::splitting::{
    compare_dominance, enumerate_types_with_h0, expected_dim, h0_twist, is_maximal, magnitude,
    mu_alpha, rho, rho_k, valid_alphas, Alpha, BNParams, Dominance,
};
use crate::tableau::Tableau;
use crate::torus::{contains, membership, sample_general, torus_of, TorusClass};

/// Per-instance resource limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct SweepLimits {
    /// Maximum number of tableaux enumerated per instance.
    pub max_tableaux: u64,
    /// Wall-time budget per instance, in milliseconds.
    pub max_millis: u64,
}

impl Default for SweepLimits {
    fn default() -> Self {
        SweepLimits {
            max_tableaux: 1_000_000,
            max_millis: 60_000,
        }
    }
}

/// The instances to verify plus their shared limits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct SweepManifest {
    pub instances: Vec<BNParams>,
    #[serde(default)]
    pub limits: SweepLimits,
}

impl SweepManifest {
    /// The default sweep: every valid (g,r,d,k) with g <= 8, k in {2,3,4},
    /// and grid area (r+1)(g-d+r) <= 6.
    pub fn default_sweep() -> Self {
        let mut instances = Vec::new();
        for g in 1..=8 {
            for k in 2..=4 {
                for r in 0..=5 {
                    for d in 1..g + r {
                        let Ok(p) = BNParams::new(g, r, d, k) else {
                            continue;
                        };
                        if p.grid_width() * p.grid_height() <= 6 {
                            instances.push(p);
                        }
                    }
                }
            }
        }
        SweepManifest {
            instances,
            limits: SweepLimits::default(),
        }
    }
}

/// Enumerate every k-uniform displacement tableau of the instance in
/// row-major lexicographic order.
///
/// The search fills boxes row-major; a symbol is admissible when it exceeds
/// the left and upper neighbors, leaves room for a strictly increasing
/// completion, and does not clash with an earlier residue assignment. The
/// congruence is pruned incrementally rather than filtered afterwards.
pub fn enumerate_tableaux(params: &BNParams) -> TableauIter {
    TableauIter::new(params)
}

pub struct TableauIter {
    a: i64,
    b: i64,
    g: i64,
    k: i64,
    n: usize,
    cells: Vec<i64>,
    /// Last symbol tried at each position (0 = fresh).
    tried: Vec<i64>,
    /// residue[s] and count[s] of placed symbol s (1-based).
    residue: Vec<i64>,
    count: Vec<u32>,
    pos: usize,
    done: bool,
}

impl TableauIter {
    fn new(params: &BNParams) -> Self {
        let (a, b, g, k) = (
            params.grid_width(),
            params.grid_height(),
            params.g(),
            params.k(),
        );
        let n = (a * b) as usize;
        TableauIter {
            a,
            b,
            g,
            k,
            n,
            cells: vec![0; n],
            tried: vec![0; n],
            residue: vec![0; (g + 1) as usize],
            count: vec![0; (g + 1) as usize],
            pos: 0,
            done: n == 0 || g < a + b - 1,
        }
    }

    fn coords(&self, p: usize) -> (i64, i64) {
        ((p as i64) % self.a + 1, (p as i64) / self.a + 1)
    }

    fn place(&mut self, p: usize, s: i64) {
        let (x, y) = self.coords(p);
        self.cells[p] = s;
        self.tried[p] = s;
        if self.count[s as usize] == 0 {
            self.residue[s as usize] = (x - y).rem_euclid(self.k);
        }
        self.count[s as usize] += 1;
    }

    fn unplace(&mut self, p: usize) {
        let s = self.cells[p];
        if s > 0 {
            self.count[s as usize] -= 1;
            self.cells[p] = 0;
        }
    }
}

impl Iterator for TableauIter {
    type Item = Tableau;

    fn next(&mut self) -> Option<Tableau> {
        if self.done {
            return None;
        }
        loop {
            if self.pos == self.n {
                // Emit, then resume the scan at the last box.
                let rows = self
                    .cells
                    .chunks(self.a as usize)
                    .map(|c| c.to_vec())
                    .collect();
                let t = Tableau::from_rows(self.g, rows)
                    .expect("enumeration only builds valid tableaux");
                self.pos -= 1;
                self.unplace(self.pos);
                return Some(t);
            }
            let p = self.pos;
            let (x, y) = self.coords(p);
            let left = if x > 1 { self.cells[p - 1] } else { 0 };
            let up = if y > 1 { self.cells[p - self.a as usize] } else { 0 };
            let lo = (left.max(up) + 1).max(self.tried[p] + 1);
            // A strictly increasing completion to (a,b) needs this headroom.
            let hi = self.g - (self.a - x) - (self.b - y);
            let res = (x - y).rem_euclid(self.k);
            let mut found = None;
            for s in lo..=hi {
                if self.count[s as usize] == 0 || self.residue[s as usize] == res {
                    found = Some(s);
                    break;
                }
            }
            match found {
                Some(s) => {
                    self.place(p, s);
                    self.pos += 1;
                }
                None => {
                    self.tried[p] = 0;
                    if p == 0 {
                        self.done = true;
                        return None;
                    }
                    self.pos -= 1;
                    self.unplace(self.pos);
                }
            }
        }
    }
}

/// Deduplicated torus classes of all enumerated tableaux, sorted by their
/// constraint maps.
pub fn all_tori(params: &BNParams) -> Result<Vec<TorusClass>, Error> {
    let mut seen = BTreeMap::new();
    for t in enumerate_tableaux(params) {
        let u = torus_of(&t, params)?;
        seen.entry(u.constraints().clone()).or_insert(u);
    }
    Ok(seen.into_values().collect())
}

/// The containment-maximal elements of `all_tori`.
pub fn maximal_tori(params: &BNParams) -> Result<Vec<TorusClass>, Error> {
    let tori = all_tori(params)?;
    Ok(maximal_of(&tori))
}

fn maximal_of(tori: &[TorusClass]) -> Vec<TorusClass> {
    tori.iter()
        .filter(|u| {
            !tori
                .iter()
                .any(|v| v.constraints() != u.constraints() && contains(u, v))
        })
        .cloned()
        .collect()
}

/// Outcome of one checked statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
    LimitExceeded,
}

/// One checked statement with an optional counterexample payload.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<serde_json::Value>,
}

impl CheckResult {
    fn pass(name: &str, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Pass,
            detail: detail.into(),
            counterexample: None,
        }
    }

    fn fail(name: &str, detail: impl Into<String>, witness: serde_json::Value) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Fail,
            detail: detail.into(),
            counterexample: Some(witness),
        }
    }

    fn skip(name: &str, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Skip,
            detail: detail.into(),
            counterexample: None,
        }
    }

    fn limit(name: &str, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::LimitExceeded,
            detail: detail.into(),
            counterexample: None,
        }
    }
}

/// Instance-level counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct InstanceStats {
    pub tableau_count: u64,
    pub torus_count: u64,
    pub maximal_torus_count: u64,
    pub scrollar_torus_count: u64,
    pub max_torus_dimension: Option<i64>,
}

/// Everything verified about one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceReport {
    pub params: BNParams,
    pub stats: InstanceStats,
    pub checks: Vec<CheckResult>,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| matches!(c.status, CheckStatus::Pass | CheckStatus::Skip))
    }

    pub fn limited(&self) -> bool {
        self.checks
            .iter()
            .any(|c| c.status == CheckStatus::LimitExceeded)
    }
}

/// Sweep-level report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub instances: Vec<InstanceReport>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.instances.iter().all(|i| i.passed() && !i.limited())
    }

    pub fn any_failed(&self) -> bool {
        self.instances
            .iter()
            .any(|i| i.checks.iter().any(|c| c.status == CheckStatus::Fail))
    }

    pub fn any_limited(&self) -> bool {
        self.instances.iter().any(|i| i.limited())
    }
}

/// The shared enumeration context for one instance.
struct Context {
    params: BNParams,
    tableaux: Vec<Tableau>,
    /// constraint map -> (torus, indices of tableaux, scrollar types seen)
    tori: BTreeMap<BTreeMap<i64, i64>, TorusEntry>,
    limit: Option<String>,
}

struct TorusEntry {
    torus: TorusClass,
    members: Vec<usize>,
    scrollar_types: Vec<i64>,
}

impl Context {
    fn build(params: &BNParams, limits: &SweepLimits) -> Result<Context, Error> {
        let deadline = Instant::now() + Duration::from_millis(limits.max_millis);
        let mut tableaux = Vec::new();
        let mut limit = None;
        if limits.max_tableaux == 0 || limits.max_millis == 0 {
            limit = Some("limit is zero".to_string());
        } else {
            for (i, t) in enumerate_tableaux(params).enumerate() {
                if i as u64 >= limits.max_tableaux {
                    limit = Some(format!("more than {} tableaux", limits.max_tableaux));
                    break;
                }
                if i % 1024 == 0 && Instant::now() > deadline {
                    limit = Some(format!("wall time above {} ms", limits.max_millis));
                    break;
                }
                tableaux.push(t);
            }
        }
        let mut tori: BTreeMap<BTreeMap<i64, i64>, TorusEntry> = BTreeMap::new();
        if limit.is_none() {
            let k = params.k();
            for (i, t) in tableaux.iter().enumerate() {
                let u = torus_of(t, params)?;
                let entry = tori.entry(u.constraints().clone()).or_insert_with(|| TorusEntry {
                    torus: u,
                    members: Vec::new(),
                    scrollar_types: Vec::new(),
                });
                entry.members.push(i);
                for ty in t.scrollar_types(k) {
                    if !entry.scrollar_types.contains(&ty) {
                        entry.scrollar_types.push(ty);
                    }
                }
            }
        }
        Ok(Context {
            params: *params,
            tableaux,
            tori,
            limit,
        })
    }

    fn stats(&self) -> InstanceStats {
        let maximal = self.maximal_maps();
        InstanceStats {
            tableau_count: self.tableaux.len() as u64,
            torus_count: self.tori.len() as u64,
            maximal_torus_count: maximal.len() as u64,
            scrollar_torus_count: self
                .tori
                .values()
                .filter(|e| !e.scrollar_types.is_empty())
                .count() as u64,
            max_torus_dimension: self
                .tori
                .values()
                .map(|e| e.torus.dimension())
                .max(),
        }
    }

    fn maximal_maps(&self) -> Vec<&BTreeMap<i64, i64>> {
        self.tori
            .keys()
            .filter(|m| {
                !self
                    .tori
                    .keys()
                    .any(|n| n != *m && n.iter().all(|(j, r)| m.get(j) == Some(r)))
            })
            .collect()
    }
}

fn tableau_json(t: &Tableau) -> serde_json::Value {
    serde_json::to_value(t).expect("tableau serializes")
}

/// Both directions of the maximal-torus classification plus the
/// scrollarization postconditions, checked tableau by tableau.
fn check_max_scrollar(ctx: &Context) -> CheckResult {
    const NAME: &str = "max_scrollar";
    if let Some(why) = &ctx.limit {
        return CheckResult::limit(NAME, why.clone());
    }
    let params = &ctx.params;
    let k = params.k();

    // (a) maximal tori = scrollar-backed tori, as constraint-map sets.
    let maximal: Vec<_> = ctx.maximal_maps().into_iter().cloned().collect();
    for (map, entry) in &ctx.tori {
        let is_max = maximal.contains(map);
        let is_scrollar = !entry.scrollar_types.is_empty();
        if is_max != is_scrollar {
            let t = &ctx.tableaux[entry.members[0]];
            return CheckResult::fail(
                NAME,
                format!(
                    "torus is {} but {}",
                    if is_max { "maximal" } else { "not maximal" },
                    if is_scrollar {
                        "scrollar-backed"
                    } else {
                        "not scrollar-backed"
                    }
                ),
                tableau_json(t),
            );
        }
    }

    // (b) scrollarize postconditions for every tableau.
    for t in &ctx.tableaux {
        let (out, path) = match scrollarize_certified(t, k) {
            Ok(v) => v,
            Err(e) => return CheckResult::fail(NAME, format!("scrollarize failed: {e}"), tableau_json(t)),
        };
        if !out.is_k_uniform(k) {
            return CheckResult::fail(NAME, "scrollarize output not k-uniform", tableau_json(t));
        }
        let alpha = match &path {
            Some(p) => p.path_type,
            None => t.width(), // trivial case: scrollar of type a
        };
        match out.is_scrollar(k, alpha) {
            Ok(true) => {}
            Ok(false) => {
                return CheckResult::fail(
                    NAME,
                    format!("scrollarize output not scrollar of type {alpha}"),
                    tableau_json(t),
                )
            }
            Err(e) => return CheckResult::fail(NAME, format!("scrollar check failed: {e}"), tableau_json(t)),
        }
        let ut = torus_of(t, params).expect("enumerated tableau");
        let uo = match torus_of(&out, params) {
            Ok(u) => u,
            Err(e) => return CheckResult::fail(NAME, format!("output torus failed: {e}"), tableau_json(t)),
        };
        if !contains(&ut, &uo) {
            return CheckResult::fail(
                NAME,
                "T(t) not contained in T(scrollarize(t))",
                tableau_json(t),
            );
        }
        // Fringe preservation along the last row and column.
        let (a, b) = (t.width(), t.height());
        if path.is_some() {
            let ok_row = (0..alpha.min(a)).all(|i| out.get(a - i, b) == t.get(a - i, b));
            let ok_col = (0..(k - alpha).min(b)).all(|j| out.get(a, b - j) == t.get(a, b - j));
            if !ok_row || !ok_col {
                return CheckResult::fail(NAME, "fringe not preserved", tableau_json(t));
            }
        }
    }
    CheckResult::pass(
        NAME,
        format!(
            "{} tableaux, {} tori, {} maximal = scrollar-backed",
            ctx.tableaux.len(),
            ctx.tori.len(),
            maximal.len()
        ),
    )
}

/// Brute-force splitting-type maximality against the closed form, the
/// expected-dimension identity, and the dominance chain below the threshold.
pub fn verify_splitting(params: &BNParams) -> CheckResult {
    const NAME: &str = "splitting";
    let (g, r, d, k) = (params.g(), params.r(), params.d(), params.k());
    let maximal: Vec<_> = valid_alphas(params)
        .iter()
        .map(|&a| mu_alpha(params, a))
        .collect();

    for lam in enumerate_types_with_h0(k, params.target_sum(), r + 1) {
        let brute = match is_maximal(&lam, params) {
            Ok(v) => v,
            Err(e) => {
                return CheckResult::fail(
                    NAME,
                    format!("is_maximal failed: {e}"),
                    serde_json::to_value(&lam).unwrap(),
                )
            }
        };
        let closed = maximal.contains(&lam);
        if brute != closed {
            return CheckResult::fail(
                NAME,
                format!("brute-force maximality {brute} but closed form {closed}"),
                serde_json::to_value(&lam).unwrap(),
            );
        }
        // Every count-(r+1) type is dominated by the balanced type of its
        // shape, when that index is defined.
        let a = lam.nonnegative_count();
        if (1..=params.alpha_max()).contains(&a) {
            let ma = mu_alpha(params, Alpha::new(params, a).unwrap());
            let cmp = compare_dominance(&lam, &ma).unwrap();
            if !matches!(cmp, Dominance::Less | Dominance::Equal) {
                return CheckResult::fail(
                    NAME,
                    format!("type with {a} nonnegative entries not below mu_{a}"),
                    serde_json::to_value(&lam).unwrap(),
                );
            }
        }
    }

    // Expected dimension identity for every defined index.
    for a in 1..=params.alpha_max() {
        let alpha = Alpha::new(params, a).unwrap();
        let lhs = expected_dim(params, alpha);
        let rhs = rho(g, a - 1, d) - (r + 1 - a) * k;
        if lhs != rhs {
            return CheckResult::fail(
                NAME,
                format!("g - |mu_{a}| = {lhs} but rho(g,{},d) - (r+1-{a})k = {rhs}", a - 1),
                serde_json::json!({ "alpha": a }),
            );
        }
        let mu = mu_alpha(params, alpha);
        if mu.sum() != params.target_sum()
            || h0_twist(&mu, 0) != r + 1
            || mu.nonnegative_count() != a
        {
            return CheckResult::fail(
                NAME,
                format!("mu_{a} violates its construction postconditions"),
                serde_json::to_value(&mu).unwrap(),
            );
        }
    }

    // Strict growth below the threshold.
    let threshold = (k - params.grid_height()).min(r + 1);
    for a in 1..threshold.min(params.alpha_max()) {
        let lo = mu_alpha(params, Alpha::new(params, a).unwrap());
        let hi = mu_alpha(params, Alpha::new(params, a + 1).unwrap());
        if compare_dominance(&lo, &hi).unwrap() != Dominance::Less {
            return CheckResult::fail(
                NAME,
                format!("mu_{a} not strictly below mu_{}", a + 1),
                serde_json::json!({ "alpha": a }),
            );
        }
    }

    // Pairwise incomparability of the maximal family.
    for (i, x) in maximal.iter().enumerate() {
        for y in maximal.iter().skip(i + 1) {
            if compare_dominance(x, y).unwrap() != Dominance::Incomparable {
                return CheckResult::fail(
                    NAME,
                    "maximal types are comparable",
                    serde_json::json!([x, y]),
                );
            }
        }
    }

    CheckResult::pass(
        NAME,
        format!("{} maximal types, closed form matches brute force", maximal.len()),
    )
}

/// Torus dimensions: the maximum equals rho_k and every maximal torus has
/// the expected dimension of its scrollar type.
fn check_dimension(ctx: &Context) -> CheckResult {
    const NAME: &str = "dimension";
    if let Some(why) = &ctx.limit {
        return CheckResult::limit(NAME, why.clone());
    }
    let params = &ctx.params;
    if ctx.tableaux.is_empty() {
        return CheckResult::skip(NAME, "no tableaux for this instance");
    }
    let max_dim = ctx
        .tori
        .values()
        .map(|e| e.torus.dimension())
        .max()
        .unwrap();
    let expected = rho_k(params);
    if max_dim != expected {
        return CheckResult::fail(
            NAME,
            format!("max torus dimension {max_dim} but rho_k = {expected}"),
            serde_json::json!({ "max_dim": max_dim, "rho_k": expected }),
        );
    }
    let maximal = ctx.maximal_maps();
    for (map, entry) in &ctx.tori {
        if !maximal.contains(&map) {
            continue;
        }
        for &ty in &entry.scrollar_types {
            let alpha = match Alpha::new(params, ty) {
                Ok(a) => a,
                Err(e) => {
                    return CheckResult::fail(
                        NAME,
                        format!("scrollar type {ty} invalid: {e}"),
                        tableau_json(&ctx.tableaux[entry.members[0]]),
                    )
                }
            };
            let want = params.g() - magnitude(&mu_alpha(params, alpha));
            if entry.torus.dimension() != want {
                return CheckResult::fail(
                    NAME,
                    format!(
                        "maximal torus of type {ty} has dimension {} but g - |mu_{ty}| = {want}",
                        entry.torus.dimension()
                    ),
                    tableau_json(&ctx.tableaux[entry.members[0]]),
                );
            }
        }
    }
    CheckResult::pass(NAME, format!("max dimension {max_dim} = rho_k"))
}

/// Sampled divisor classes respect the containment order: a general point
/// of a torus lies exactly on the tori containing it.
fn check_sampling(ctx: &Context, seed: u64) -> CheckResult {
    const NAME: &str = "sampling";
    if let Some(why) = &ctx.limit {
        return CheckResult::limit(NAME, why.clone());
    }
    if ctx.tori.is_empty() {
        return CheckResult::skip(NAME, "no tori to sample");
    }
    let tori: Vec<&TorusClass> = ctx.tori.values().map(|e| &e.torus).collect();
    let budget = 64.min(tori.len());
    for (i, u) in tori.iter().take(budget).enumerate() {
        let div = sample_general(u, seed.wrapping_add(i as u64));
        for v in &tori {
            let member = match membership(&div, v) {
                Ok(m) => m,
                Err(e) => {
                    return CheckResult::fail(
                        NAME,
                        format!("membership failed: {e}"),
                        serde_json::to_value(u).unwrap(),
                    )
                }
            };
            if member != contains(u, v) {
                return CheckResult::fail(
                    NAME,
                    "sampled point does not respect containment",
                    serde_json::json!({ "sampled_from": u, "against": v, "divisor": div }),
                );
            }
        }
    }
    CheckResult::pass(NAME, format!("{budget} sampled divisors respect containment"))
}

/// Run every check for one instance.
pub fn verify_instance(params: &BNParams, limits: &SweepLimits, seed: u64) -> InstanceReport {
    match Context::build(params, limits) {
        Ok(ctx) => {
            let checks = vec![
                check_max_scrollar(&ctx),
                verify_splitting(params),
                check_dimension(&ctx),
                check_sampling(&ctx, seed),
            ];
            let mut checks = checks;
            if let Some(why) = &ctx.limit {
                // A tripped limit poisons the whole instance.
                for c in &mut checks {
                    c.status = CheckStatus::LimitExceeded;
                    c.detail = why.clone();
                    c.counterexample = None;
                }
            }
            InstanceReport {
                params: *params,
                stats: ctx.stats(),
                checks,
            }
        }
        Err(e) => InstanceReport {
            params: *params,
            stats: InstanceStats::default(),
            checks: vec![CheckResult::fail(
                "setup",
                format!("context construction failed: {e}"),
                serde_json::Value::Null,
            )],
        },
    }
}

/// Theorem-level entry points mirroring the per-statement checks.
pub fn verify_max_scrollar(params: &BNParams, limits: &SweepLimits) -> Result<CheckResult, Error> {
    Ok(check_max_scrollar(&Context::build(params, limits)?))
}

pub fn verify_dimension(params: &BNParams, limits: &SweepLimits) -> Result<CheckResult, Error> {
    Ok(check_dimension(&Context::build(params, limits)?))
}

/// Run the whole sweep. Instances are verified independently (in parallel
/// when a rayon pool is active) and reported in manifest order; a failing
/// instance never aborts the rest.
pub fn run_sweep(manifest: &SweepManifest) -> VerificationReport {
    run_sweep_seeded(manifest, 0)
}

pub fn run_sweep_seeded(manifest: &SweepManifest, seed: u64) -> VerificationReport {
    use rayon::prelude::*;
    let instances = manifest
        .instances
        .par_iter()
        .map(|p| verify_instance(p, &manifest.limits, seed))
        .collect();
    VerificationReport { instances }
}
