//! The named checks, their default instances, resampling on non-generic
//! draws, and time budgets.

use std::sync::mpsc::{self, RecvTimeoutError};
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use super::sample::{to_field, to_poly, to_ratfun, Sampler, MAX_ATTEMPTS};
use super::{ArithMode, InstanceConfig, ParamMode};
use crate::arith::{Coeff, Fp, MPoly, RatFun, Rat, Ring, Var};
use crate::duality::{verify_degeneration, verify_hamiltonian_duality, verify_main3, verify_rep_duality, verify_residues, verify_tg_routes};
use crate::error::Error;
use crate::glk::WeightModule;
use crate::ore::identities::{falling_ratio_identity, rising_power_identity, scalar_dj_identity, subsets, wronskian_factorization};
use crate::ore::pencil::{apply_f, f_reverses_product, mixed};
use crate::ore::OperatorPencil;
use crate::rep::Margins;
use crate::report::{Status, VerificationReport};
use crate::unm::{offsets_by_height, verify_main1, BlockContext};
use crate::yangian::{build_t, check_commutativity};

pub struct CheckInfo {
    pub name: &'static str,
    pub about: &'static str,
    /// Default budget in seconds.
    pub budget: u64,
}

pub const CHECKS: &[CheckInfo] = &[
    CheckInfo { name: "ore-identities", about: "scalar Ore identities; F reverses products and is an involution", budget: 60 },
    CheckInfo { name: "commutativity", about: "Bethe generators commute, qdet is central, minor forms agree", budget: 300 },
    CheckInfo { name: "main1", about: "F(D_n) = D_m on Verma weight spaces", budget: 900 },
    CheckInfo { name: "duality-rep-spectra", about: "D_m, D_n via theta: support, commuting entries, equal spectra", budget: 600 },
    CheckInfo { name: "main3", about: "XXX grid equals transposed trigonometric Gaudin grid", budget: 600 },
    CheckInfo { name: "hamiltonians", about: "dynamical Hamiltonians G_i and H_i agree", budget: 120 },
    CheckInfo { name: "residues", about: "G_i and H_i as residues of operator coefficients", budget: 300 },
    CheckInfo { name: "degeneration", about: "r -> infinity limits give the XXX and Gaudin grids", budget: 900 },
    CheckInfo { name: "tg-routes", about: "trigonometric Gaudin operator: theta route = quotient route", budget: 600 },
];

pub fn info(name: &str) -> Option<&'static CheckInfo> {
    CHECKS.iter().find(|c| c.name == name)
}

#[derive(Clone, Copy)]
struct Deadline(Instant);

impl Deadline {
    fn expired(&self) -> bool {
        Instant::now() >= self.0
    }
}

fn base_params(cfg: &InstanceConfig) -> Value {
    let mut v = json!({
        "n": cfg.n(), "m": cfg.m(), "a": cfg.a, "b": cfg.b,
        "params": cfg.params, "height": cfg.height, "depth": cfg.depth,
        "instances": cfg.instances, "trials": cfg.trials,
    });
    if cfg.mode == ArithMode::Modular {
        v["prime"] = json!(cfg.prime);
    }
    v
}

/// Every check named by `cfg.check`, in listing order.
pub fn run_checks(cfg: &InstanceConfig) -> Vec<VerificationReport> {
    let names: Vec<&str> = if cfg.check == "all" { CHECKS.iter().map(|c| c.name).collect() } else { vec![cfg.check.as_str()] };
    names.into_iter().map(|n| run_with_budget(n, cfg)).collect()
}

/// Runs one check on a worker thread. When the budget runs out first the
/// report says so; the abandoned worker is left to the process exit.
pub fn run_with_budget(name: &str, cfg: &InstanceConfig) -> VerificationReport {
    let budget = cfg.budget.unwrap_or_else(|| Duration::from_secs(info(name).map_or(600, |c| c.budget)));
    let start = Instant::now();
    let deadline = Deadline(start + budget);
    let (tx, rx) = mpsc::channel();
    let (name2, cfg2) = (name.to_string(), cfg.clone());
    std::thread::spawn(move || {
        let _ = tx.send(dispatch(&name2, &cfg2, deadline));
    });
    let mode = match cfg.mode {
        ArithMode::Exact => "exact",
        ArithMode::Modular => "modular",
    };
    let mut rep = match rx.recv_timeout(budget) {
        Ok(r) => r,
        Err(e) => {
            let mut r = VerificationReport::new(name, base_params(cfg), cfg.seed, mode);
            match e {
                RecvTimeoutError::Timeout => r.error(Status::Exceeded, format!("time budget of {}s exceeded", budget.as_secs_f64())),
                RecvTimeoutError::Disconnected => r.error(Status::Error, "check panicked".into()),
            }
            r
        }
    };
    if cfg.timing {
        rep.elapsed_ms = start.elapsed().as_millis() as u64;
    }
    rep
}

fn dispatch(name: &str, cfg: &InstanceConfig, dl: Deadline) -> VerificationReport {
    match cfg.mode {
        ArithMode::Exact => run_k::<Rat>(name, cfg, dl),
        ArithMode::Modular => {
            Fp::set_modulus(cfg.prime);
            run_k::<Fp>(name, cfg, dl)
        }
    }
}

fn run_k<K: Coeff + 'static>(name: &str, cfg: &InstanceConfig, dl: Deadline) -> VerificationReport {
    let mut rep = VerificationReport::new(name, base_params(cfg), cfg.seed, K::mode_name());
    match name {
        "ore-identities" => ore_identities::<K>(&mut rep, cfg, dl),
        "commutativity" => commutativity::<K>(&mut rep, cfg, dl),
        "main1" => main1::<K>(&mut rep, cfg, dl),
        _ => parametric::<K>(name, &mut rep, cfg, dl),
    }
    rep
}

/// Records a group of boolean sub-checks as one item; the first failing
/// member is the witness.
fn group(rep: &mut VerificationReport, label: &str, results: Outcomes) {
    let count = results.len();
    let bad = results.into_iter().find(|(_, r)| !matches!(r, Ok(true)));
    rep.record(json!({ "identity": label, "instances": count }), bad.is_none(), || {
        let (item, r) = bad.clone().expect("failing member");
        json!({ "identity": label, "instance": item, "error": r.err() })
    });
}

fn ore_identities<K: Coeff>(rep: &mut VerificationReport, cfg: &InstanceConfig, dl: Deadline) {
    let c = RatFun::var(Var::C);
    group(rep, "rising-power", (0..=6).map(|i| (json!({ "i": i }), Ok(rising_power_identity::<K>(i, &c).holds()))).collect());

    let mut dj = Vec::new();
    for s in 2..=6usize {
        for n in 1..s {
            for j in subsets(1, s) {
                let r = scalar_dj_identity::<K>(n, s - n, &j).map(|r| r.holds()).map_err(|e| e.to_string());
                dj.push((json!({ "n": n, "m": s - n, "J": j }), r));
            }
        }
    }
    group(rep, "subset-factorization", dj);

    let mut wr = Vec::new();
    for s in 2..=5usize {
        for n in 1..s {
            for j in subsets(n + 1, s) {
                wr.push((json!({ "n": n, "m": s - n, "J": j }), Ok(wronskian_factorization::<K>(n, s - n, &j))));
            }
        }
    }
    group(rep, "wronskian-factorization", wr);

    let mut fr = Vec::new();
    for n in 0..=3i64 {
        for m in 0..=4u32 {
            for l in 0..=m {
                fr.push((json!({ "n": n, "m": m, "l": l }), Ok(falling_ratio_identity::<K>(n, m, l))));
            }
        }
    }
    group(rep, "falling-ratio", fr);
    if dl.expired() {
        rep.error(Status::Exceeded, "time budget exceeded before the pencil checks".into());
        return;
    }
    let (anti, inv) = f_samples::<K>(cfg.seed, 100, 20);
    group(rep, "f-reverses-products", anti);
    group(rep, "f-involution", inv);
}

type Pencil<K> = OperatorPencil<RatFun<K>, K>;

pub type Outcomes = Vec<(Value, Result<bool, String>)>;

/// `pairs` random monomial pairs for `ℱ(XY) = ℱ(Y)ℱ(X)` and `singles`
/// random pencils for `ℱ∘ℱ = id`, with `1 ≤ n, m ≤ 3`.
pub fn f_samples<K: Coeff>(seed: u64, pairs: usize, singles: usize) -> (Outcomes, Outcomes) {
    let mut s = Sampler::new(seed, 5);
    let mut anti = Vec::new();
    for _ in 0..pairs {
        let (n, m) = (1 + s.below(3) as i64, 1 + s.below(3) as i64);
        let (a, b) = ((s.below(4), s.below(4)), (s.below(4), s.below(4)));
        let mono = |k: (u32, u32)| Pencil::<K> { basis: mixed(m, 1 - n), grid: [(k, RatFun::one())].into_iter().collect() };
        let r = f_reverses_product(&mono(a), &mono(b)).map_err(|e| e.to_string());
        anti.push((json!({ "n": n, "m": m, "x": [a.0, a.1], "y": [b.0, b.1] }), r));
    }
    let mut inv = Vec::new();
    for _ in 0..singles {
        let (n, m) = (1 + s.below(3) as i64, 1 + s.below(3) as i64);
        let mut grid = std::collections::BTreeMap::new();
        for _ in 0..4 {
            let c = s.int();
            if c != 0 {
                grid.insert((s.below(4), s.below(4)), RatFun::from_i64(c));
            }
        }
        let p = Pencil::<K> { basis: mixed(m, 1 - n), grid };
        let r = apply_f(&p).and_then(|q| apply_f(&q)).map(|q| q == p).map_err(|e| e.to_string());
        inv.push((json!({ "n": n, "m": m, "terms": p.grid.len() }), r));
    }
    (anti, inv)
}

/// Tensor modules `S^{d_1}ℂ^k ⊗ …` of dimension at most 20.
pub const COMMUTATIVITY_MODULES: &[(usize, &[u32])] = &[(2, &[1, 1, 1]), (2, &[1, 2, 1]), (2, &[2, 2]), (3, &[1, 1]), (3, &[2, 1])];

fn commutativity<K: Coeff>(rep: &mut VerificationReport, cfg: &InstanceConfig, dl: Deadline) {
    let mut s = Sampler::new(cfg.seed, cfg.height);
    for &(k, degs) in COMMUTATIVITY_MODULES {
        let one = |s: &mut Sampler| -> Option<Result<VerificationReport, Error>> {
            let z = to_field::<K>(&s.xi(degs.len())?)?;
            let c = to_field::<K>(&s.xi(k)?)?;
            let factors: Vec<(WeightModule<K>, K)> = degs.iter().zip(z).map(|(&d, zi)| (WeightModule::sym_power(k, d), zi)).collect();
            let t = match build_t(&factors) {
                Ok(t) => t,
                Err(e) => return Some(Err(e.into())),
            };
            let cr = check_commutativity(&t, &c);
            let item = json!({ "k": k, "degrees": degs, "dim": cr.dim, "z": factors.iter().map(|f| f.1.to_string()).collect::<Vec<_>>(), "c": c.iter().map(|x| x.to_string()).collect::<Vec<_>>() });
            let mut r = VerificationReport::new("commutativity", item.clone(), 0, K::mode_name());
            r.record(item, cr.pass(), || {
                json!({
                    "failing_pairs": cr.failing_pairs, "qdet_central": cr.qdet_central,
                    "minor_forms_agree": cr.minor_forms_agree, "top_is_qdet": cr.top_is_qdet,
                    "preserves_weights": cr.preserves_weights,
                })
            });
            Some(Ok(r))
        };
        if !resampled(rep, &mut s, dl, 1, one) {
            return;
        }
    }
}

fn main1<K: Coeff>(rep: &mut VerificationReport, cfg: &InstanceConfig, dl: Deadline) {
    let (n, m) = (cfg.n(), cfg.m());
    let kappas = offsets_by_height(n + m, cfg.depth);
    let chunk = rayon_width();
    let run_ctx = |rep: &mut VerificationReport, ctx: &BlockContext<K>| -> bool {
        for (p, part) in kappas.chunks(chunk).enumerate() {
            if dl.expired() {
                rep.error(Status::Exceeded, format!("time budget exceeded after {} of {} weight spaces", p * chunk, kappas.len()));
                return false;
            }
            rep.merge(verify_main1(ctx, part, cfg.seed));
        }
        true
    };
    match cfg.params {
        ParamMode::Symbolic => {
            run_ctx(rep, &BlockContext::symbolic(n, m));
        }
        ParamMode::Random => {
            let mut s = Sampler::new(cfg.seed, cfg.height);
            for idx in 0..cfg.instances {
                let lam = (0..MAX_ATTEMPTS).find_map(|_| to_field::<K>(&s.lambda(n + m)?));
                let Some(lam) = lam else {
                    rep.error(Status::Exhausted, format!("{MAX_ATTEMPTS} draws of lambda were all non-generic (instance {idx})"));
                    return;
                };
                if !run_ctx(rep, &BlockContext::numeric(n, m, &lam)) {
                    return;
                }
            }
        }
    }
}

fn rayon_width() -> usize {
    if crate::par::is_parallel() {
        std::thread::available_parallelism().map_or(4, |x| x.get()).max(1)
    } else {
        1
    }
}

/// Runs `count` instances of `f`, redrawing parameters while the draw is
/// rejected or the check reports a non-generic failure. Returns `false`
/// when the report has been closed with a non-pass status.
fn resampled<F>(rep: &mut VerificationReport, s: &mut Sampler, dl: Deadline, count: usize, mut f: F) -> bool
where
    F: FnMut(&mut Sampler) -> Option<Result<VerificationReport, Error>>,
{
    for idx in 0..count {
        if dl.expired() {
            rep.error(Status::Exceeded, format!("time budget exceeded after {idx} of {count} instances"));
            return false;
        }
        let mut rejected = 0;
        let mut done = false;
        for _ in 0..MAX_ATTEMPTS {
            match f(s) {
                None => rejected += 1,
                Some(Err(e)) if e.is_non_generic() => rejected += 1,
                Some(Err(e)) => {
                    rep.error(Status::Error, e.to_string());
                    return false;
                }
                Some(Ok(r)) => {
                    rep.merge(r);
                    done = true;
                    break;
                }
            }
        }
        let log = rep.params.as_object_mut().map(|o| o.entry("rejected_draws").or_insert_with(|| json!([])));
        if let Some(Value::Array(v)) = log {
            v.push(json!(rejected));
        }
        if !done {
            rep.error(Status::Exhausted, format!("{MAX_ATTEMPTS} draws were all non-generic (instance {idx})"));
            return false;
        }
    }
    true
}

fn sym_rf<K: Coeff>(k: usize, var: fn(usize) -> Var) -> Vec<RatFun<K>> {
    (1..=k).map(|i| RatFun::var(var(i))).collect()
}

fn sym_poly<K: Coeff>(k: usize, first: usize, var: fn(usize) -> Var) -> Vec<MPoly<K>> {
    (first..first + k).map(|i| MPoly::var(var(i))).collect()
}

/// Checks whose instances are `(margins, parameters)`.
fn parametric<K: Coeff>(name: &str, rep: &mut VerificationReport, cfg: &InstanceConfig, dl: Deadline) {
    let mg = match Margins::new(cfg.a.clone(), cfg.b.clone()) {
        Ok(mg) => mg,
        Err(e) => return rep.error(Status::Error, e.to_string()),
    };
    let (n, m) = (mg.n(), mg.m());
    let symbolic = cfg.params == ParamMode::Symbolic;
    let count = if symbolic { 1 } else { cfg.instances };
    let mut s = Sampler::new(cfg.seed, cfg.height);
    let mut idx = 0u64;
    let seed = cfg.seed;
    let trials = cfg.trials;
    // symbolic mode: ξ, λ^{(n)}, z symbolic; for the θ pencils only λ^{(m)}
    // is, and for the degeneration only r
    let f = |s: &mut Sampler| -> Option<Result<VerificationReport, Error>> {
        idx += 1;
        let draw_xi = |s: &mut Sampler| -> Option<Vec<RatFun<K>>> { Some(if symbolic { sym_rf(m, Var::xi) } else { to_ratfun(&to_field::<K>(&s.xi(m)?)?) }) };
        Some(match name {
            "main3" | "residues" | "tg-routes" => {
                let xi = draw_xi(s)?;
                let lam = if symbolic { sym_poly(n, 1, Var::lambda) } else { to_poly(&to_field::<K>(&s.lambda(n)?)?) };
                match name {
                    "main3" => verify_main3(&mg, &xi, &lam, seed),
                    "residues" => verify_residues(&mg, &xi, &lam, seed),
                    _ => verify_tg_routes(&mg, &xi, &lam, seed),
                }
            }
            "hamiltonians" => {
                let xi = draw_xi(s)?;
                let z = if symbolic { sym_rf(n, Var::z) } else { to_ratfun(&to_field::<K>(&s.rationals(n))?) };
                verify_hamiltonian_duality(&mg, &xi, &z, seed)
            }
            "degeneration" => {
                let xi = to_poly(&to_field::<K>(&s.xi(m)?)?);
                let lam = to_poly(&to_field::<K>(&s.lambda(n)?)?);
                verify_degeneration(&mg, &lam, &xi, seed)
            }
            "duality-rep-spectra" => {
                let lam = to_field::<K>(&s.lambda(n + m)?)?;
                let lam_n = to_poly(&lam[..n]);
                let lam_m = if symbolic { sym_poly(m, n + 1, Var::lambda) } else { to_poly(&lam[n..]) };
                verify_rep_duality(&mg, &lam_n, &lam_m, trials, seed.wrapping_add(idx))
            }
            other => Err(Error::Config(format!("unknown check {other:?}"))),
        })
    };
    resampled(rep, &mut s, dl, count, f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::{resolve, RunArgs};

    fn cfg(check: &str) -> InstanceConfig {
        resolve(&RunArgs { check: Some(check.into()), ..Default::default() }, None).unwrap()
    }

    #[test]
    fn every_check_has_budget() {
        assert!(CHECKS.iter().all(|c| c.budget > 0));
        assert!(info("main3").is_some());
    }

    #[test]
    fn hamiltonians_default_instances_pass() {
        let r = run_with_budget("hamiltonians", &cfg("hamiltonians"));
        assert!(r.pass, "{:?}", r.witness);
        assert_eq!(r.covered.len(), 3);
        assert_eq!(r.elapsed_ms, 0);
    }

    #[test]
    fn f_samples_pass() {
        let (a, b) = f_samples::<Rat>(3, 20, 5);
        assert!(a.iter().chain(&b).all(|(_, r)| r == &Ok(true)));
    }

    #[test]
    fn tiny_budget_is_reported() {
        let mut c = cfg("main1");
        c.budget = Some(Duration::from_millis(1));
        c.a = vec![1, 1, 1];
        c.b = vec![1, 1, 1];
        c.allow_large = true;
        let r = run_with_budget("main1", &c);
        assert_eq!(r.status, Status::Exceeded);
        assert!(r.witness.is_some());
    }

    #[test]
    fn exhausted_draws_are_not_failures() {
        let mut c = cfg("main3");
        c.height = 1;
        let r = run_with_budget("main3", &c);
        // height 1 makes every lambda draw resonant
        assert_eq!(r.status, Status::Exhausted);
    }
}
