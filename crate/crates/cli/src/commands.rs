//! Subcommand bodies. Each returns a report; input problems are usage errors.

use crate::acceptance::{self, identity_tolerance, Level};
use crate::report::Report;
use num_complex::Complex64 as C;
use qtetra_core::ncqd::{check_identity, default_samples, Dilog, Identity, ModularParams};
use qtetra_core::qseries::verify_qbinomial_duality;
use qtetra_core::qtorus::*;
use qtetra_core::quiver::{builtin_quiver, BuiltinQuiver, Permutation, Seed};
use qtetra_core::qweylrep::*;
use qtetra_core::tropical::{sign_char, TropSeed};
use qtetra_core::weylcalc::*;
use qtetra_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::time::Instant;

#[derive(Debug)]
pub enum CliError {
    /// bad input; exit 2
    Usage(String),
    /// a computation could not be carried out; exit 1
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "usage error: {s}"),
            CliError::Failed(s) => write!(f, "error: {s}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownName(_)
            | Error::Parse(_)
            | Error::InvalidSeed(_)
            | Error::BadPermutation(_)
            | Error::VertexOutOfRange(_)
            | Error::FrozenVertex(_)
            | Error::LengthMismatch(_) => CliError::Usage(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn usage(s: impl Into<String>) -> CliError {
    CliError::Usage(s.into())
}

pub fn parse_ints(s: &str) -> CliResult<Vec<i64>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| usage(format!("not an integer: {t}"))))
        .collect()
}

pub fn parse_complex(s: &str) -> CliResult<C> {
    s.trim().parse::<C>().map_err(|_| usage(format!("not a complex number: {s}")))
}

fn parse_q(s: &Option<String>) -> CliResult<Q> {
    match s {
        None => Ok(q(0)),
        Some(t) => t.parse::<Q>().map_err(|_| usage(format!("not a rational: {t}"))),
    }
}

/// A builtin name or a JSON file `{ "n", "B2", "d" }`.
pub fn load_seed(spec: &str) -> CliResult<Seed> {
    if let Ok(b) = spec.parse::<BuiltinQuiver>() {
        return Ok(builtin_quiver(b));
    }
    let text = std::fs::read_to_string(spec).map_err(|_| usage(format!("no builtin quiver or readable file named {spec}")))?;
    let s: Seed = serde_json::from_str(&text).map_err(|e| usage(format!("bad seed JSON: {e}")))?;
    s.validate()?;
    if s.n != s.d.len() {
        return Err(usage("seed field n does not match d"));
    }
    Ok(s)
}

fn builtin_match(s: &Seed) -> Option<&'static str> {
    qtetra_core::quiver::ALL_BUILTINS.iter().find(|b| builtin_quiver(**b) == *s).map(|b| b.name())
}

/// Returns the JSON printed on stdout and the report.
pub fn quiver_mutate(seed: &str, at: &[usize], perm: Option<&str>) -> CliResult<(Value, Report)> {
    let t = Instant::now();
    let s0 = load_seed(seed)?;
    let mut s = s0.mutate_seq(at)?;
    if let Some(p) = perm {
        s = s.permute(&Permutation::parse(s.n, p)?)?;
    }
    let out = serde_json::to_value(&s).map_err(|e| CliError::Failed(e.to_string()))?;
    let mut r = Report::new("quiver mutate");
    r.push(
        "mutate",
        json!({ "seed": seed, "at": at, "perm": perm }),
        Value::Null,
        json!({ "seed": out, "builtin": builtin_match(&s) }),
        true,
    );
    Ok((out, r.finish(t)))
}

pub fn tropical_signs(seed: &str, seq: &[usize]) -> CliResult<(Value, Report)> {
    let t = Instant::now();
    let s = load_seed(seed)?;
    let (ts, signs) = TropSeed::initial(&s).mutate_seq(seq)?;
    let signs: Vec<String> = signs.iter().map(|e| sign_char(*e).to_string()).collect();
    let out = json!({ "schema": 1, "signs": signs, "finalC": ts.c, "finalB2": ts.seed.b2 });
    let mut r = Report::new("tropical signs");
    r.push("signs", json!({ "seed": seed, "seq": seq }), Value::Null, out.clone(), true);
    Ok((out, r.finish(t)))
}

fn unit(n: usize, idx: &[usize]) -> Vec<i64> {
    let mut v = vec![0; n];
    for &i in idx {
        v[i - 1] += 1;
    }
    v
}

fn outcome_case(r: &mut Report, name: &str, inputs: Value, o: &IdentityOutcome) {
    let got = match &o.first_difference {
        None => json!("equal"),
        Some((k, a, b)) => json!({ "first_difference_at": k, "lhs": a, "rhs": b }),
    };
    r.push(name, inputs, json!("equal"), got, o.holds);
}

pub fn identity(name: &str, order: i64) -> CliResult<Report> {
    if order < 1 {
        return Err(usage("order must be positive"));
    }
    let t = Instant::now();
    let mut r = Report::new(&format!("identity {name}"));
    let inp = json!({ "order": order });
    match name {
        "pentagon" => {
            let tor = Torus::new(&builtin_quiver(BuiltinQuiver::J121));
            let o = pentagon_check(&tor, &unit(5, &[2]), &unit(5, &[4]), order)?;
            outcome_case(&mut r, "pentagon on J121 (Y2, Y4)", inp.clone(), &o);
            for base in [1, 2] {
                let o = recursion_check(&tor, &unit(5, &[2, 4]), base, order)?;
                outcome_case(&mut r, &format!("recursion base q^{base}"), inp.clone(), &o);
            }
        }
        "ad-tau" => {
            let o = verify_ad_tau_decomposition(&builtin_quiver(BuiltinQuiver::J121), &[4], &[1], order)?;
            outcome_case(&mut r, "mu4 on J121", inp.clone(), &o);
            let o = verify_ad_tau_decomposition(&builtin_quiver(BuiltinQuiver::J1212), &[2, 5, 2], &[1, 1, -1], order)?;
            outcome_case(&mut r, "mu2 mu5 mu2 on J1212", inp, &o);
        }
        "dilog-r" | "dilog-k" => {
            let o = instance(&name[6..])?.verify_dilog(order)?;
            outcome_case(&mut r, name, inp, &o);
        }
        "tau-r" | "tau-k" => {
            let o = instance(&name[4..])?.verify_tau()?;
            let got = json!({ "first_difference": o.first_difference, "preserves_pairing": o.preserves_pairing });
            r.push(name, inp, json!({ "first_difference": null, "preserves_pairing": true }), got, o.holds);
        }
        _ => return Err(usage(format!("unknown identity {name}"))),
    }
    Ok(r.finish(t))
}

pub fn weyl_verify(what: &str, alpha: &Option<String>, beta: &Option<String>, gamma: &Option<String>) -> CliResult<Report> {
    let t = Instant::now();
    let p = Params { alpha: parse_q(alpha)?, beta: parse_q(beta)?, gamma: parse_q(gamma)? };
    let inp = json!({ "alpha": p.alpha.to_string(), "beta": p.beta.to_string(), "gamma": p.gamma.to_string() });
    let mut r = Report::new(&format!("weyl verify {what}"));
    let mut simple = |name: &str, ok: bool| r.push(name, inp.clone(), json!(true), json!(ok), ok);
    match what {
        "pi-tetra" => simple("pi tetrahedron", verify_pi_tetrahedron(&p.alpha)?),
        "p-tetra" => simple("P tetrahedron", verify_p_tetrahedron(&p.alpha)?),
        "pi-refl" => simple("pi reflection", verify_pi_reflection(&p)?),
        "p-refl" => simple("P reflection", verify_p_reflection(&p)?),
        "diagrams" => {
            for (n, c) in [("R", DiagramCase::R), ("K", DiagramCase::K)] {
                let o = verify_diagram(c)?;
                let rows: Vec<Value> = o.rows.iter().map(|(i, a, b)| json!([i, a, b])).collect();
                r.push(format!("diagram {n}"), Value::Null, json!(true), json!(rows), o.holds);
            }
        }
        "chains" => {
            for case in [ChainCase::Tetra, ChainCase::Reflection] {
                for side in [Side::L, Side::R] {
                    let o = verify_full_conjugation_chain(side, case)?;
                    let steps: Vec<Value> = o.steps.iter().map(|s| json!([s.op, s.conjugated, s.exponent])).collect();
                    r.push(format!("chain {case:?} {side:?}"), Value::Null, json!(true), json!(steps), o.holds);
                }
            }
        }
        _ => return Err(usage(format!("unknown weyl check {what}"))),
    }
    Ok(r.finish(t))
}

pub fn rep_element(op: &str, basis: &str, a: &str, b: &str, n: Option<&str>) -> CliResult<Report> {
    let t = Instant::now();
    let basis: Basis = basis.parse()?;
    let (a, b) = (parse_ints(a)?, parse_ints(b)?);
    let legs = match op {
        "r" => 3,
        "k" => 4,
        _ => return Err(usage(format!("unknown operator {op}"))),
    };
    let n = match n {
        Some(s) => parse_ints(s)?,
        None => vec![0; legs],
    };
    if a.len() != legs || b.len() != legs || n.len() != legs {
        return Err(usage(format!("operator {op} takes {legs} indices per argument")));
    }
    let (closed, kind) = if op == "r" {
        let (a3, b3, n3) = ([a[0], a[1], a[2]], [b[0], b[1], b[2]], [n[0], n[1], n[2]]);
        let v = match basis {
            Basis::U => r_elem_u(a3, b3, n3),
            Basis::P => r_elem_p(a3, b3, n3),
        };
        (Some(v), OpKind::R)
    } else {
        if n.iter().any(|x| *x != 0) {
            return Err(usage("K is available at zero spectral parameters only"));
        }
        let (a4, b4) = ([a[0], a[1], a[2], a[3]], [b[0], b[1], b[2], b[3]]);
        let e = match basis {
            Basis::U => k_elem_u_checked(a4, b4),
            Basis::P => k_elem_p_checked(a4, b4),
        };
        (e.to_ratq(), OpKind::K)
    };
    let oracle = oracle_elem(kind, basis, &a, &b, &n)?;
    let (closed_str, pass) = match closed {
        Some(v) => (v.to_string(), v == oracle),
        None => ("indeterminate".to_string(), oracle.is_zero()),
    };
    let mut r = Report::new("rep element");
    r.push(
        format!("<{a:?}|{}|{b:?}>", op.to_uppercase()),
        json!({ "op": op, "basis": format!("{basis:?}").to_lowercase(), "in": a, "out": b, "n": n }),
        json!(oracle.to_string()),
        json!(closed_str),
        pass,
    );
    Ok(r.finish(t))
}

fn sweep_case(r: &mut Report, name: &str, inputs: Value, rep: &SweepReport) {
    r.push(
        name,
        inputs,
        json!({ "failures": 0 }),
        json!({ "cases": rep.cases, "passed": rep.passed, "nonzero": rep.nonzero, "corners": rep.corners,
                "max_paths": rep.max_paths, "counterexamples": rep.failures }),
        rep.ok(),
    );
}

pub fn verify_tetra_rep(window: i64, n_range: i64, samples: usize, seed: u64) -> CliResult<Report> {
    if !(0..=2).contains(&window) || n_range < 0 {
        return Err(usage("window must be 0, 1 or 2 and n-range nonnegative"));
    }
    let t = Instant::now();
    let mut r = Report::new("verify tetra-rep");
    let rep = sweep_window(&WordPair::tetra(Basis::U, &[0; 6])?, window)?;
    sweep_case(&mut r, "n = 0", json!({ "window": window, "n": vec![0; 6] }), &rep);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let n: Vec<i64> = (0..6).map(|_| rng.gen_range(-n_range..=n_range)).collect();
        let rep = sweep_window(&WordPair::tetra(Basis::U, &n)?, window)?;
        sweep_case(&mut r, &format!("n = {n:?}"), json!({ "window": window, "n": n }), &rep);
    }
    Ok(r.finish(t))
}

pub fn verify_refl_rep(window: i64, enlarge: usize) -> CliResult<Report> {
    if !(0..=1).contains(&window) {
        return Err(usage("window must be 0 or 1"));
    }
    let t = Instant::now();
    let mut r = Report::new("verify refl-rep");
    let pair = WordPair::reflection()?;
    let rep = sweep_window(&pair, window)?;
    sweep_case(&mut r, "exhaustive window", json!({ "window": window }), &rep);
    let buckets = law_buckets(&pair.lhs.conservation_laws(), pair.lhs.m, window);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..enlarge {
        let b = &buckets[rng.gen_range(0..buckets.len())];
        let (a, c) = (&b[rng.gen_range(0..b.len())], &b[rng.gen_range(0..b.len())]);
        let ok = pair.enlargement_stable(a, c, 2)?;
        r.push("range enlargement +2", json!({ "a": a, "c": c }), json!(true), json!(ok), ok);
    }
    Ok(r.finish(t))
}

pub fn verify_qbinomial(max: i64, random: usize) -> CliResult<Report> {
    let t = Instant::now();
    let mut r = Report::new("verify qbinomial");
    let mut triples = vec![];
    for a in 0..=max {
        for b in 0..=max {
            for c in 0..=max {
                triples.push((a, b, c));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..random {
        triples.push((rng.gen_range(-3..=8), rng.gen_range(-3..=8), rng.gen_range(-3..=8)));
    }
    for (a, b, c) in triples {
        let ok = verify_qbinomial_duality(a, b, c);
        r.push(format!("(r,s,t) = ({a},{b},{c})"), json!([a, b, c]), json!(true), json!(ok), ok);
    }
    Ok(r.finish(t))
}

pub fn verify_all(level: &str, only: &[u8]) -> CliResult<(Vec<String>, Report)> {
    let level: Level = level.parse().map_err(usage)?;
    if only.iter().any(|i| !(1..=9).contains(i)) {
        return Err(usage("criteria are numbered 1 to 9"));
    }
    let t = Instant::now();
    let ids: Vec<u8> = if only.is_empty() { (1..=9).collect() } else { only.to_vec() };
    let results: Vec<_> = ids.iter().map(|i| acceptance::criterion(*i, level)).collect();
    let lines = results.iter().map(|c| c.line()).collect();
    Ok((lines, acceptance::to_report(&results, t)))
}

fn dilog(b: &str) -> CliResult<Dilog> {
    let b = parse_complex(b)?;
    Ok(Dilog::new(ModularParams::new(b).map_err(|e| usage(e.to_string()))?))
}

pub fn ncqd_eval(z: &str, b: &str) -> CliResult<Report> {
    let t = Instant::now();
    let d = dilog(b)?;
    let z = parse_complex(z)?;
    let v = d.phi(z)?;
    let mut r = Report::new("ncqd eval");
    r.push(
        "phi",
        json!({ "z": [z.re, z.im], "b": [d.params.b.re, d.params.b.im] }),
        Value::Null,
        json!({ "re": v.re, "im": v.im }),
        true,
    );
    Ok(r.finish(t))
}

pub fn ncqd_check(identity: &str, b: &str, tol: Option<f64>, args: Option<&str>) -> CliResult<Report> {
    let t = Instant::now();
    let id: Identity = identity.parse()?;
    let d = dilog(b)?;
    let tol = tol.unwrap_or_else(|| identity_tolerance(id));
    let samples = match args {
        Some(s) => vec![s.split(';').map(parse_complex).collect::<CliResult<Vec<C>>>()?],
        None => default_samples(&d, id),
    };
    let mut r = Report::new(&format!("ncqd check {identity}"));
    for a in samples {
        let c = check_identity(&d, id, &a)?;
        let args: Vec<String> = a.iter().map(|z| z.to_string()).collect();
        r.push(
            format!("{identity} at {}", args.join(", ")),
            json!({ "args": args, "b": b }),
            json!({ "residual_below": tol }),
            json!({ "residual": c.residual, "quadrature_change": c.quad_error }),
            c.residual < tol,
        );
    }
    Ok(r.finish(t))
}
