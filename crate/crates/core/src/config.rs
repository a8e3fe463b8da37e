//! Run configuration, suite selection and the drivers behind the CLI.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::galois::{GaloisObject, IDENTITY_LABELS};
use crate::qalgebra::{parse_element, parse_scalar, Window};
use crate::reflection::Reflection;
use crate::report::{CheckResult, Report};
use crate::scalar::Scalar;

/// Suites that can be selected by name. Any identity label (i, ii, ...,
/// lemma-*, kms) selects that single identity.
pub const SUITES: [&str; 12] =
    ["hopf", "identities", "galois", "galois-maps", "cocycle", "rep", "dual", "hatx", "B", "bi-galois", "reflection", "all"];

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub n: u32,
    pub m: u32,
    pub lambda_exp: i64,
    pub mu: String,
    pub window: u32,
    pub suites: BTreeSet<String>,
}

impl RunConfig {
    pub fn new(n: u32, m: u32, lambda_exp: i64, mu: &str, window: u32) -> RunConfig {
        RunConfig { n, m, lambda_exp, mu: mu.to_string(), window, suites: BTreeSet::from(["all".to_string()]) }
    }

    /// Parses a comma list of suite names.
    pub fn with_suites(mut self, list: &str) -> Result<RunConfig> {
        let mut out = BTreeSet::new();
        for s in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if !SUITES.contains(&s) && !IDENTITY_LABELS.contains(&s) {
                return Err(Error::Config(format!("unknown suite '{s}'")));
            }
            out.insert(s.to_string());
        }
        if out.is_empty() {
            return Err(Error::Config("empty suite list".into()));
        }
        self.suites = out;
        Ok(self)
    }

    pub fn validate(&self) -> Result<Scalar> {
        if self.n < 2 {
            return Err(Error::Config(format!("n must be at least 2, got {}", self.n)));
        }
        if self.m == 0 || self.m.gcd(&self.n) != 1 {
            return Err(Error::Config(format!("gcd(m, n) must be 1, got m={} n={}", self.m, self.n)));
        }
        if self.lambda_exp.gcd(&(self.n as i64)) != 1 {
            return Err(Error::Config(format!("gcd(lambda-exp, n) must be 1, got {}", self.lambda_exp)));
        }
        parse_scalar(&self.mu, self.n)
    }

    pub fn echo(&self) -> BTreeMap<String, String> {
        BTreeMap::from([
            ("n".to_string(), self.n.to_string()),
            ("m".to_string(), self.m.to_string()),
            ("lambda_exp".to_string(), self.lambda_exp.to_string()),
            ("mu".to_string(), self.mu.clone()),
            ("window".to_string(), self.window.to_string()),
            ("suites".to_string(), self.suites.iter().cloned().collect::<Vec<_>>().join(",")),
        ])
    }

    fn wants(&self, s: &str) -> bool {
        self.suites.contains("all") || self.suites.contains(s)
    }

    fn wants_reflection(&self) -> bool {
        ["reflection", "dual", "hatx", "B", "bi-galois"].iter().any(|s| self.wants(s))
    }
}

/// The objects a config describes. The reflection is built on demand.
pub struct Built {
    pub galois: Arc<GaloisObject>,
    reflection: Option<Arc<Reflection>>,
}

impl Built {
    pub fn new(cfg: &RunConfig, with_reflection: bool) -> Result<Built> {
        let mu = cfg.validate()?;
        let galois = GaloisObject::build(cfg.n, cfg.m, cfg.lambda_exp, mu, cfg.window)?;
        let reflection = if with_reflection { Some(Reflection::new(&galois)?) } else { None };
        Ok(Built { galois, reflection })
    }

    pub fn reflection(&self) -> Result<&Arc<Reflection>> {
        self.reflection.as_ref().ok_or_else(|| Error::Config("reflection data was not built".into()))
    }

    /// φ/ψ/δ/σ/τ of A, the X data, C_q and the C presentation.
    pub fn table(&self) -> BTreeMap<String, String> {
        let mut t = self.galois.hopf().table("");
        t.extend(self.galois.table());
        if let Some(r) = &self.reflection {
            t.extend(r.table());
        }
        t
    }
}

/// Runs the selected suites; the report carries the structure table.
pub fn verify(cfg: &RunConfig) -> Result<Report> {
    let built = Built::new(cfg, cfg.wants_reflection())?;
    let w = Window::new(cfg.window);
    let g = &built.galois;
    let mut checks: Vec<CheckResult> = Vec::new();
    if cfg.wants("hopf") {
        checks.extend(g.hopf().verify_axioms(w));
    }
    if cfg.wants("identities") {
        checks.extend(g.verify_identities(w));
    } else if IDENTITY_LABELS.iter().any(|l| cfg.suites.contains(*l)) {
        checks.extend(g.verify_identities(w).into_iter().filter(|c| cfg.suites.contains(&c.name)));
    }
    if cfg.wants("galois") {
        checks.extend(g.verify_structure(w));
    }
    if cfg.wants("galois-maps") {
        checks.extend(g.verify_galois_maps(w));
    }
    if cfg.wants("cocycle") {
        checks.extend(g.verify_cocycle(&crate::galois::Cocycle::new(g), w));
    }
    if cfg.wants("rep") {
        checks.extend(g.verify_representation(w));
    }
    if cfg.wants_reflection() {
        let r = built.reflection()?;
        let all = cfg.wants("reflection");
        if all || cfg.wants("dual") {
            checks.extend(r.verify_dual(w));
        }
        if all || cfg.wants("hatx") {
            checks.extend(r.verify_hatx(w));
        }
        if all || cfg.wants("B") {
            checks.extend(r.verify_b(w));
        }
        if all || cfg.wants("bi-galois") {
            checks.extend(r.verify_bi_galois(w));
        }
    }
    let mut report = Report::new(cfg.echo());
    report.table = built.table();
    report.extend(checks);
    Ok(report)
}

/// The structure table alone.
pub fn table(cfg: &RunConfig) -> Result<Report> {
    let built = Built::new(cfg, true)?;
    let mut report = Report::new(cfg.echo());
    report.table = built.table();
    Ok(report)
}

/// Maps accepted by [`eval`], with the algebra their argument lives in.
pub const MAPS: [(&str, &str); 19] = [
    ("alpha", "X"),
    ("sigma_X", "X"),
    ("sigma_X_inv", "X"),
    ("theta_X", "X"),
    ("phi_X", "X"),
    ("psi_X", "X"),
    ("gamma", "X"),
    ("beta", "A"),
    ("Delta", "A"),
    ("S", "A"),
    ("S_inv", "A"),
    ("sigma", "A"),
    ("epsilon", "A"),
    ("phi", "A"),
    ("psi", "A"),
    ("beta_C", "C"),
    ("Delta_C", "C"),
    ("S_C", "C"),
    ("id", "X"),
];

/// Applies a named structure map to a parsed literal and prints the result.
pub fn eval(cfg: &RunConfig, expr: &str, map: &str) -> Result<String> {
    let Some(&(_, alg)) = MAPS.iter().find(|(name, _)| *name == map) else {
        let names: Vec<&str> = MAPS.iter().map(|(n, _)| *n).collect();
        return Err(Error::Config(format!("unknown map '{map}', expected one of {}", names.join(", "))));
    };
    let built = Built::new(cfg, alg == "C" || map == "gamma")?;
    let g = &built.galois;
    let h = g.hopf();
    let pres = match alg {
        "X" => g.x().clone(),
        "A" => g.a().clone(),
        _ => built.reflection()?.c().clone(),
    };
    let e = parse_element(expr, &pres)?;
    let out = match map {
        "alpha" => g.alpha(&e).to_string(),
        "sigma_X" => g.sigma_x().apply(&e).to_string(),
        "sigma_X_inv" => g.sigma_x_inv().apply(&e).to_string(),
        "theta_X" => g.theta_x().apply(&e).to_string(),
        "phi_X" => g.phi_x().eval(&e).to_string(),
        "psi_X" => g.psi_x().eval(&e).to_string(),
        "gamma" => built.reflection()?.reflected().gamma(&e).to_string(),
        "beta" => g.beta(&e).to_string(),
        "Delta" => h.coproduct(&e).to_string(),
        "S" => h.antipode().apply(&e).to_string(),
        "S_inv" => h.antipode_inv().apply(&e).to_string(),
        "sigma" => h.sigma().apply(&e).to_string(),
        "epsilon" => h.counit(&e).to_string(),
        "phi" => h.left_integral().eval(&e).to_string(),
        "psi" => h.right_integral().eval(&e).to_string(),
        "beta_C" => built.reflection()?.reflected().beta_c(&e).to_string(),
        "Delta_C" => built.reflection()?.reflected().hopf().coproduct(&e).to_string(),
        "S_C" => built.reflection()?.reflected().hopf().antipode().apply(&e).to_string(),
        _ => e.to_string(),
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_rejects_bad_parameters() {
        assert!(matches!(RunConfig::new(1, 1, 1, "1", 1).validate(), Err(Error::Config(_))));
        assert!(matches!(RunConfig::new(4, 2, 1, "1", 1).validate(), Err(Error::Config(_))));
        assert!(matches!(RunConfig::new(4, 1, 2, "1", 1).validate(), Err(Error::Config(_))));
        assert!(RunConfig::new(4, 1, 3, "1", 1).validate().is_ok());
        assert!(RunConfig::new(3, 1, 1, "1", 1).with_suites("hopf,bogus").is_err());
        assert!(RunConfig::new(3, 1, 1, "1", 1).with_suites("iv,kms").is_ok());
    }

    #[test]
    fn eval_examples() {
        let cfg = RunConfig::new(3, 2, 1, "1", 1);
        assert_eq!(eval(&cfg, "y", "alpha").unwrap(), "1 (x) b + y (x) a^2");
        assert_eq!(eval(&cfg, "1", "theta_X").unwrap(), "1");
        assert_eq!(eval(&cfg, "x", "gamma").unwrap(), "u (x) x");
        assert!(matches!(eval(&cfg, "y +", "alpha"), Err(Error::Parse { .. })));
    }

    #[test]
    fn selecting_one_identity() {
        let cfg = RunConfig::new(2, 1, 1, "1", 1).with_suites("iv").unwrap();
        let r = verify(&cfg).unwrap();
        assert_eq!(r.checks.len(), 1);
        assert!(r.all_passed());
    }

    #[test]
    fn table_rows() {
        let t = table(&RunConfig::new(2, 1, 1, "1", 1)).unwrap().table;
        assert_eq!(t["delta_X"], "x");
        assert!(t.contains_key("C_1"));
        let t = table(&RunConfig::new(3, 1, 1, "1", 1)).unwrap().table;
        assert_eq!(t["theta_X(y)"], "z^1*y");
    }
}
