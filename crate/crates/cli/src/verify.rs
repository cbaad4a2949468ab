//! Verification suites behind `kannappan verify`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use kannappan_core::algebra::{
    check_involution, index_period, verify_associativity, Associativity,
};
use kannappan_core::classify::{
    classify, construct, lemma_suite_t36, lemma_suite_t44, verify_prop31, ClassifyError,
};
use kannappan_core::equations::{
    ks_scale, monoid_reduction_check, residual, residual_table, EquationError, EquationId,
};
use kannappan_core::functions::enumerate_exponentials;
use kannappan_core::{
    CFunction, DiscreteMeasure, FiniteSemigroup, InvolutiveAutomorphism, Setting, ToleranceProfile,
    C64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::catalog::{self, CatalogEntry};
use crate::formats::RawTable;
use crate::instances::{sweep, Instance, SweepError};
use crate::report;
use crate::search::{default_grid, grid_completeness_search};

/// Acceptance bound on normalized residuals and round-trip errors.
pub const SWEEP_TOL: f64 = 1e-9;
/// Bound for the point-mass reduction comparison.
pub const REDUCTION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Catalog,
    Exponentials,
    T36,
    T44,
    Lemmas,
    Prop31,
    Reduction,
    Grid,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Catalog,
        Suite::Exponentials,
        Suite::T36,
        Suite::T44,
        Suite::Lemmas,
        Suite::Prop31,
        Suite::Reduction,
        Suite::Grid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Catalog => "catalog",
            Suite::Exponentials => "exponentials",
            Suite::T36 => "t36",
            Suite::T44 => "t44",
            Suite::Lemmas => "lemmas",
            Suite::Prop31 => "prop31",
            Suite::Reduction => "reduction",
            Suite::Grid => "grid",
        }
    }

    fn needs_sweep(self) -> bool {
        matches!(
            self,
            Suite::T36 | Suite::T44 | Suite::Lemmas | Suite::Reduction
        )
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `all` or a single suite name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteSelection(pub Option<Suite>);

impl SuiteSelection {
    pub fn suites(self) -> Vec<Suite> {
        self.0.map_or_else(|| Suite::ALL.to_vec(), |s| vec![s])
    }
}

impl FromStr for SuiteSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(SuiteSelection(None));
        }
        Suite::ALL
            .iter()
            .find(|x| x.name() == s)
            .map(|&x| SuiteSelection(Some(x)))
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub per_family: usize,
    pub tol: ToleranceProfile,
    pub jobs: usize,
    /// User-supplied tables checked alongside the catalog.
    pub extra_tables: Vec<(String, RawTable)>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 20240601,
            per_family: 40,
            tol: ToleranceProfile::default(),
            jobs: 1,
            extra_tables: Vec::new(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub passed: bool,
    pub summary: Value,
    pub records: Vec<Value>,
}

impl SuiteOutcome {
    fn new(
        suite: Suite,
        records: Vec<(bool, Value)>,
        mut summary: BTreeMap<String, Value>,
    ) -> Self {
        let failures = records.iter().filter(|(ok, _)| !ok).count();
        summary.insert("records".into(), json!(records.len()));
        summary.insert("failures".into(), json!(failures));
        let passed = failures == 0 && !records.is_empty();
        SuiteOutcome {
            suite,
            passed,
            summary: Value::Object(summary.into_iter().collect()),
            records: records.into_iter().map(|(_, v)| v).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"passed": self.passed, "summary": self.summary, "records": self.records})
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub passed: bool,
    pub outcomes: Vec<SuiteOutcome>,
    pub config: Value,
}

impl RunReport {
    pub fn to_json(&self) -> Value {
        let suites: serde_json::Map<String, Value> = self
            .outcomes
            .iter()
            .map(|o| (o.suite.name().to_string(), o.to_json()))
            .collect();
        json!({"config": self.config, "passed": self.passed, "suites": suites})
    }

    pub fn render(&self) -> String {
        report::to_json_string(&self.to_json())
    }

    pub fn outcome(&self, suite: Suite) -> Option<&SuiteOutcome> {
        self.outcomes.iter().find(|o| o.suite == suite)
    }
}

pub fn run(config: &VerifyConfig, selection: SuiteSelection) -> Result<RunReport, SweepError> {
    let suites = selection.suites();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| {
        let instances = if suites.iter().any(|s| s.needs_sweep()) {
            sweep(config.seed, config.per_family, config.tol)?
        } else {
            Vec::new()
        };
        let outcomes: Vec<SuiteOutcome> = suites
            .iter()
            .map(|&s| match s {
                Suite::Catalog => catalog_suite(&config.extra_tables),
                Suite::Exponentials => exponentials_suite(),
                Suite::T36 => sweep_suite(Suite::T36, EquationId::KSSub, &instances),
                Suite::T44 => sweep_suite(Suite::T44, EquationId::KSAdd, &instances),
                Suite::Lemmas => lemmas_suite(&instances),
                Suite::Prop31 => prop31_suite(config.tol),
                Suite::Reduction => reduction_suite(config, &instances),
                Suite::Grid => grid_suite(config.tol),
            })
            .collect();
        let config_json = json!({
            "seed": config.seed,
            "per_family": config.per_family,
            "eps": config.tol.residual_eps,
            "rank_eps": config.tol.rank_eps,
            "suites": suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
            "extra_tables": config.extra_tables.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>(),
        });
        Ok(RunReport {
            passed: outcomes.iter().all(|o| o.passed),
            outcomes,
            config: config_json,
        })
    })
}

fn summary() -> BTreeMap<String, Value> {
    BTreeMap::new()
}

fn check_table(name: &str, rows: &[Vec<usize>], identity: Option<usize>) -> (bool, Value) {
    match verify_associativity(rows) {
        Err(e) => (
            false,
            json!({"name": name, "associative": false, "error": e.to_string()}),
        ),
        Ok(Associativity::Violations(v)) => {
            let triples: Vec<Value> = v.iter().map(|&(x, y, z)| json!([x, y, z])).collect();
            (
                false,
                json!({"name": name, "associative": false, "violations": triples}),
            )
        }
        Ok(Associativity::Valid) => {
            let s = FiniteSemigroup::new(rows.to_vec()).expect("validated table");
            let ok = identity.is_none_or(|e| s.identity() == Some(e));
            (
                ok,
                json!({"name": name, "associative": true, "identity": s.identity(), "identity_matches": ok}),
            )
        }
    }
}

pub fn catalog_suite(extra: &[(String, RawTable)]) -> SuiteOutcome {
    let mut records = Vec::new();
    for entry in catalog::all() {
        let (mut ok, mut rec) = check_table(
            &entry.name,
            &entry.semigroup.to_rows(),
            entry.semigroup.identity(),
        );
        let inv_ok = entry
            .involutions
            .iter()
            .all(|s| check_involution(&entry.semigroup, s.as_slice()).is_ok());
        let has_id = entry.involutions.iter().any(|s| s.is_identity());
        ok &= inv_ok && has_id;
        rec["involutions"] = json!(entry
            .involutions
            .iter()
            .map(|s| s.as_slice().to_vec())
            .collect::<Vec<_>>());
        rec["involutions_valid"] = json!(inv_ok && has_id);
        records.push((ok, rec));
    }
    for (name, raw) in extra {
        records.push(check_table(name, &raw.rows, raw.identity));
    }
    SuiteOutcome::new(Suite::Catalog, records, summary())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Every nonzero multiplicative map into `{0} ∪ U_L`, by exhaustive search.
pub fn brute_force_exponentials(s: &FiniteSemigroup) -> Vec<Vec<C64>> {
    let n = s.len();
    let l = (0..n)
        .map(|x| index_period(s, x).period)
        .fold(1, |a, p| a / gcd(a, p) * p);
    let mut values = vec![C64::new(0.0, 0.0)];
    values.extend((0..l).map(|j| C64::from_polar(1.0, 2.0 * PI * j as f64 / l as f64)));
    let k = values.len();
    let total = k.checked_pow(n as u32).expect("search space fits in usize");
    (0..total)
        .map(|code| {
            (0..n)
                .map(|i| values[(code / k.pow(i as u32)) % k])
                .collect::<Vec<C64>>()
        })
        .filter(|f| f.iter().any(|v| v.norm() > 0.0))
        .filter(|f| (0..n).all(|x| (0..n).all(|y| (f[s.op(x, y)] - f[x] * f[y]).norm() < 1e-9)))
        .collect()
}

fn same_function_set(a: &[Vec<C64>], b: &[Vec<C64>]) -> bool {
    let eq = |u: &Vec<C64>, v: &Vec<C64>| u.iter().zip(v).all(|(p, q)| (p - q).norm() < 1e-9);
    a.len() == b.len() && a.iter().all(|u| b.iter().any(|v| eq(u, v)))
}

pub fn exponentials_suite() -> SuiteOutcome {
    let entries: Vec<CatalogEntry> = catalog::all()
        .into_iter()
        .filter(|e| e.semigroup.len() <= 4)
        .collect();
    let records = entries
        .par_iter()
        .map(|e| {
            let got: Vec<Vec<C64>> =
                enumerate_exponentials(&e.semigroup).iter().map(|x| x.function().values().to_vec()).collect();
            let brute = brute_force_exponentials(&e.semigroup);
            let ok = same_function_set(&got, &brute);
            (ok, json!({"name": e.name, "enumerated": got.len(), "brute_force": brute.len(), "match": ok}))
        })
        .collect();
    SuiteOutcome::new(Suite::Exponentials, records, summary())
}

/// Measure-dependent residual divided by the size of its terms.
pub fn normalized_residual(st: &Setting, eq: EquationId, f: &CFunction, g: &CFunction) -> f64 {
    let r = residual(
        st.semigroup(),
        st.sigma(),
        Some(st.measure()),
        eq,
        f,
        Some(g),
        st.tol(),
    )
    .map(|r| r.max_residual)
    .unwrap_or(f64::INFINITY);
    r / ks_scale(st.measure(), f, g)
}

fn sweep_record(inst: &Instance, eq: EquationId) -> (bool, Value) {
    let st = &inst.setting;
    let res = normalized_residual(st, eq, &inst.f, &inst.g);
    let mut rec = json!({
        "label": inst.label,
        "family": inst.desc.tag().name(),
        "residual": res,
        "forward_ok": res <= SWEEP_TOL,
    });
    let scale = inst.f.norm_inf().max(inst.g.norm_inf()).max(1.0);
    let round_trip = classify(st, eq, &inst.f, &inst.g).and_then(|(desc, trace)| {
        let (f2, g2) = construct(st, &desc)?;
        let err = inst.f.max_diff(&f2).max(inst.g.max_diff(&g2)) / scale;
        Ok((desc.tag(), trace.branches, err))
    });
    let ok = match round_trip {
        Ok((tag, branches, err)) => {
            rec["classified_as"] = json!(tag.name());
            rec["branches"] = json!(branches);
            rec["round_trip_error"] = json!(err);
            err <= SWEEP_TOL
        }
        Err(e) => {
            rec["classify_error"] = json!(e.to_string());
            false
        }
    };
    rec["round_trip_ok"] = json!(ok);
    (ok && res <= SWEEP_TOL, rec)
}

fn tally(records: &[(bool, Value)], key: &str) -> Value {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for (_, r) in records {
        if let Some(k) = r.get(key).and_then(Value::as_str) {
            *counts.entry(k.to_string()).or_default() += 1;
        }
    }
    json!(counts)
}

pub fn sweep_suite(suite: Suite, eq: EquationId, instances: &[Instance]) -> SuiteOutcome {
    let records: Vec<(bool, Value)> = instances
        .par_iter()
        .filter(|i| i.desc.tag().equation() == eq)
        .map(|i| sweep_record(i, eq))
        .collect();
    let mut s = summary();
    s.insert("families".into(), tally(&records, "family"));
    s.insert("classified_as".into(), tally(&records, "classified_as"));
    let worst = records
        .iter()
        .filter_map(|(_, r)| r["residual"].as_f64())
        .fold(0.0, f64::max);
    s.insert("max_residual".into(), json!(worst));
    let worst_rt = records
        .iter()
        .filter_map(|(_, r)| r.get("round_trip_error").and_then(Value::as_f64))
        .fold(0.0, f64::max);
    s.insert("max_round_trip_error".into(), json!(worst_rt));
    SuiteOutcome::new(suite, records, s)
}

fn lemma_record(inst: &Instance) -> Option<(bool, Value)> {
    let st = &inst.setting;
    let report = match inst.desc.tag().equation() {
        EquationId::KSSub => lemma_suite_t36(st, &inst.f, &inst.g),
        _ => lemma_suite_t44(st, &inst.f, &inst.g),
    };
    match report {
        Err(ClassifyError::PreconditionViolation(_)) => None,
        Err(e) => Some((false, json!({"label": inst.label, "error": e.to_string()}))),
        Ok(r) => {
            let checks: serde_json::Map<String, Value> = r
                .checks
                .iter()
                .map(|c| {
                    (
                        c.name.to_string(),
                        json!({"value": c.value, "passed": c.passed}),
                    )
                })
                .collect();
            Some((
                r.passed(),
                json!({"label": inst.label, "passed": r.passed(), "checks": checks}),
            ))
        }
    }
}

pub fn lemmas_suite(instances: &[Instance]) -> SuiteOutcome {
    let all: Vec<Option<(bool, Value)>> = instances.par_iter().map(lemma_record).collect();
    let skipped = all.iter().filter(|r| r.is_none()).count();
    let records: Vec<(bool, Value)> = all.into_iter().flatten().collect();
    let mut s = summary();
    s.insert("skipped_dependent".into(), json!(skipped));
    SuiteOutcome::new(Suite::Lemmas, records, s)
}

/// Deterministic measures used by the `prop31` suite: a point mass at `0`
/// and a spread measure with weights `1/(k+1)` on the first three points.
fn prop31_measures(n: usize) -> Vec<(&'static str, DiscreteMeasure)> {
    let spread = (0..n.min(3))
        .map(|k| (k, C64::new(1.0 / (k as f64 + 1.0), 0.0)))
        .collect();
    vec![
        ("delta0", DiscreteMeasure::point_mass(0)),
        ("spread", DiscreteMeasure::new(n, spread).expect("in range")),
    ]
}

pub fn prop31_suite(tol: ToleranceProfile) -> SuiteOutcome {
    let mut jobs = Vec::new();
    for entry in catalog::all() {
        for (si, sigma) in entry.involutions.iter().enumerate() {
            for (mname, mu) in prop31_measures(entry.semigroup.len()) {
                jobs.push((
                    entry.name.clone(),
                    si,
                    sigma.clone(),
                    entry.semigroup.clone(),
                    mname,
                    mu,
                ));
            }
        }
    }
    let records: Vec<(bool, Value)> = jobs
        .into_par_iter()
        .flat_map_iter(|(name, si, sigma, s, mname, mu)| {
            let st = Setting::new(s, sigma, mu, tol).expect("catalog setting");
            let mut out = Vec::new();
            let zero = verify_prop31(&st, &CFunction::zeros(st.len()));
            let zero_ok = matches!(&zero, Ok(r) if r.passed() && r.chi.is_none());
            out.push((zero_ok, json!({"name": name, "sigma": si, "measure": mname, "chi": Value::Null, "zero_case": zero_ok})));
            for (ci, chi) in st.exponentials().iter().enumerate() {
                if !chi.is_sigma_invariant(st.sigma()) {
                    continue;
                }
                let m = st.integral(chi.function());
                if st.moment_is_zero(m, chi.function()) {
                    continue;
                }
                let f = chi.function().scale(m);
                let rec = match verify_prop31(&st, &f) {
                    Ok(r) => {
                        let exact = r.chi.as_ref().is_some_and(|c| c.exact_values() == chi.exact_values());
                        let ok = r.passed() && exact;
                        (ok, json!({"name": name, "sigma": si, "measure": mname, "chi": ci, "exact_match": exact,
                                    "pointwise_residual": r.pointwise_residual}))
                    }
                    Err(e) => (false, json!({"name": name, "sigma": si, "measure": mname, "chi": ci, "error": e.to_string()})),
                };
                out.push(rec);
            }
            out
        })
        .collect();
    let recovered = records.iter().filter(|(_, r)| !r["chi"].is_null()).count();
    let mut s = summary();
    s.insert("recovered".into(), json!(recovered));
    SuiteOutcome::new(Suite::Prop31, records, s)
}

fn max_table_diff(a: &[Vec<C64>], b: &[Vec<C64>]) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest pointwise gap between the integral laws at `μ = δ_e` and the
/// plain sine laws, over random `(f, g)`.
pub fn point_mass_gap(
    s: &FiniteSemigroup,
    sigma: &InvolutiveAutomorphism,
    rng: &mut ChaCha8Rng,
) -> Option<f64> {
    let e = s.identity()?;
    let n = s.len();
    let mu = DiscreteMeasure::point_mass(e);
    let mut draw = || {
        CFunction::new(
            (0..n)
                .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
    };
    let (f, g) = (draw(), draw());
    let mut worst: f64 = 0.0;
    for (ks, plain) in [
        (EquationId::KSSub, EquationId::SineSub),
        (EquationId::KSAdd, EquationId::SineAdd),
    ] {
        let a = residual_table(s, sigma, Some(&mu), ks, &f, Some(&g)).ok()?;
        let b = residual_table(s, sigma, None, plain, &f, Some(&g)).ok()?;
        worst = worst.max(max_table_diff(&a, &b));
    }
    Some(worst)
}

fn reduction_record(inst: &Instance) -> Option<(bool, Value)> {
    let st = &inst.setting;
    st.semigroup().identity()?;
    let sign = if inst.desc.tag().equation() == EquationId::KSSub {
        -1.0
    } else {
        1.0
    };
    let r = monoid_reduction_check(
        st.semigroup(),
        st.sigma(),
        st.measure(),
        &inst.f,
        &inst.g,
        sign,
        st.tol(),
    );
    let scale = ks_scale(st.measure(), &inst.f, &inst.g);
    Some(match r {
        Ok(rep) => {
            let checks: serde_json::Map<String, Value> = rep
                .checks
                .iter()
                .map(|c| {
                    (
                        c.label.to_string(),
                        json!({"residual": c.residual, "passed": c.passed}),
                    )
                })
                .collect();
            (
                rep.passed(),
                json!({"label": inst.label, "outcome": "reduced", "checks": checks}),
            )
        }
        Err(EquationError::DegenerateGe { identity_residual }) => {
            let ok = identity_residual <= st.tol().residual_eps * scale;
            (
                ok,
                json!({"label": inst.label, "outcome": "degenerate_g_at_identity", "identity_residual": identity_residual}),
            )
        }
        Err(e) => (false, json!({"label": inst.label, "error": e.to_string()})),
    })
}

pub fn reduction_suite(config: &VerifyConfig, instances: &[Instance]) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5eed);
    let mut records = Vec::new();
    for entry in catalog::all() {
        if entry.semigroup.identity().is_none() {
            continue;
        }
        for (si, sigma) in entry.involutions.iter().enumerate() {
            let mut worst: f64 = 0.0;
            for _ in 0..4 {
                worst = worst.max(
                    point_mass_gap(&entry.semigroup, sigma, &mut rng).unwrap_or(f64::INFINITY),
                );
            }
            let ok = worst <= REDUCTION_TOL;
            records.push((
                ok,
                json!({"name": entry.name, "sigma": si, "point_mass_gap": worst}),
            ));
        }
    }
    let point_mass = records.len();
    let checked: Vec<(bool, Value)> = instances.par_iter().filter_map(reduction_record).collect();
    let degenerate = checked
        .iter()
        .filter(|(_, r)| r["outcome"] == "degenerate_g_at_identity")
        .count();
    records.extend(checked);
    let mut s = summary();
    s.insert("point_mass_comparisons".into(), json!(point_mass));
    s.insert("degenerate_g_at_identity".into(), json!(degenerate));
    SuiteOutcome::new(Suite::Reduction, records, s)
}

/// The three settings probed by the grid suite.
pub fn grid_settings(tol: ToleranceProfile) -> Vec<(&'static str, Setting, EquationId)> {
    let z3 = catalog::lookup("Z3").expect("Z3");
    let d0 = DiscreteMeasure::point_mass(0);
    let mk = |s: FiniteSemigroup, sigma: InvolutiveAutomorphism| {
        Setting::new(s, sigma, d0.clone(), tol).expect("setting")
    };
    vec![
        (
            "Z3-neg/KSSub",
            mk(z3.semigroup.clone(), z3.preferred_involution()),
            EquationId::KSSub,
        ),
        (
            "Z2-id/KSAdd",
            mk(catalog::cyclic(2), InvolutiveAutomorphism::identity(2)),
            EquationId::KSAdd,
        ),
        (
            "Trunc4-id/KSAdd",
            mk(catalog::truncated(4), InvolutiveAutomorphism::identity(4)),
            EquationId::KSAdd,
        ),
    ]
}

pub fn grid_suite(tol: ToleranceProfile) -> SuiteOutcome {
    let grid = default_grid();
    let records = grid_settings(tol)
        .par_iter()
        .map(|(name, st, eq)| match grid_completeness_search(st, *eq, &grid) {
            Ok(hits) => {
                let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
                for h in &hits {
                    *counts.entry(h.desc.tag().name()).or_default() += 1;
                }
                (!hits.is_empty(), json!({"setting": name, "hits": hits.len(), "families": counts, "unclassified": 0}))
            }
            Err(e) => (false, json!({"setting": name, "error": e.to_string(), "unclassified": 1})),
        })
        .collect();
    SuiteOutcome::new(Suite::Grid, records, summary())
}
