use std::collections::BTreeMap;
use std::time::Instant;

use moduli_core::exact::rational::{parse_rational, to_f64};
use moduli_core::oracles::{svol_value, szenes_check, thaddeus_value, witten_sum, LatticeSumConfig, SzenesFunction};
use moduli_core::pairing::{pair, pairing_a, PairingSpec, Route};
use moduli_core::selftest::run_selftest;
use moduli_core::verlinde::{verlinde_check, VerlindeSpec};
use moduli_core::Error;
use num_traits::Zero;

use crate::args::{LatticeArgs, OracleCommand, PairArgs, SzenesArgs, ThaddeusArgs, VerlindeArgs, WittenArgs};
use crate::report::JobReport;

/// Why a job stopped before producing a report.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Computation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) => Failure::Input(e.to_string()),
            _ => Failure::Computation(e.to_string()),
        }
    }
}

type JobResult = Result<Vec<JobReport>, Failure>;

fn parse_pair<A: std::str::FromStr, B: std::str::FromStr>(s: &str, sep: char, what: &str) -> Result<(A, B), Failure> {
    let bad = || Failure::Input(format!("cannot parse {what} '{s}'"));
    let (x, y) = s.split_once(sep).ok_or_else(bad)?;
    Ok((x.trim().parse().map_err(|_| bad())?, y.trim().parse().map_err(|_| bad())?))
}

fn exponents(items: &[String], what: &str) -> Result<BTreeMap<usize, u32>, Failure> {
    let mut out = BTreeMap::new();
    for s in items {
        let (r, m): (usize, u32) = parse_pair(s, '=', what)?;
        *out.entry(r).or_insert(0) += m;
    }
    Ok(out)
}

fn join_map(m: &BTreeMap<usize, u32>) -> String {
    m.iter().map(|(r, e)| format!("{r}={e}")).collect::<Vec<_>>().join(",")
}

fn timed(timing: bool, f: impl FnOnce() -> Result<JobReport, Failure>) -> Result<JobReport, Failure> {
    let start = Instant::now();
    let mut r = f()?;
    if timing {
        r.timing_ms = Some(start.elapsed().as_millis());
    }
    Ok(r)
}

fn grid<T: Copy, U: Copy, V: Copy>(a: &[T], b: &[U], c: &[V]) -> Vec<(T, U, V)> {
    let mut out = Vec::new();
    for &x in a {
        for &y in b {
            for &z in c {
                out.push((x, y, z));
            }
        }
    }
    out
}

fn sci(x: f64, digits: usize) -> String {
    format!("{:.*e}", digits.saturating_sub(1), x)
}

pub fn pair_job(args: &PairArgs, timing: bool) -> JobResult {
    let a = exponents(&args.a, "a-class r=m")?;
    let f = exponents(&args.f, "f-class r=m")?;
    let b: Vec<(usize, usize)> = args.b.iter().map(|s| parse_pair(s, ':', "b-class r:j")).collect::<Result<_, _>>()?;
    let epsilon = args.epsilon.as_deref().map(parse_rational).transpose()?;
    let route = args.route.as_deref().map(Route::parse).transpose()?;
    let mut out = Vec::new();
    for (n, d, g) in grid(&args.n, &args.d, &args.g) {
        out.push(timed(timing, || {
            let mut spec = PairingSpec::new(n, d, g);
            spec.a = a.clone();
            spec.f = f.clone();
            spec.b = b.clone();
            spec.epsilon = epsilon.clone();
            spec.validate()?;
            let mut req = BTreeMap::new();
            req.insert("n".into(), n.to_string());
            req.insert("d".into(), d.to_string());
            req.insert("g".into(), g.to_string());
            req.insert("a".into(), join_map(&a));
            req.insert("f".into(), join_map(&f));
            req.insert("b".into(), b.iter().map(|(r, j)| format!("{r}:{j}")).collect::<Vec<_>>().join(","));
            req.insert("epsilon".into(), epsilon.as_ref().map(|e| e.to_string()).unwrap_or_default());
            req.insert("route".into(), route.map(|r| r.name()).unwrap_or("auto").into());
            let mut rep = JobReport::new(req);
            let res = pair(&spec, route)?;
            rep.set("value", &res.value);
            rep.set("route", res.route.name());
            rep.set("pi_exponent", 0);
            rep.set("class_degree", spec.class_degree());
            rep.set("dimension", spec.real_dimension());
            for (k, v) in &res.metadata {
                rep.set(k, v);
            }
            let (deg, dim) = (spec.class_degree(), spec.real_dimension());
            if deg > dim || (dim - deg) % 2 == 1 {
                rep.diagnostics
                    .push(format!("class degree {deg} cannot be completed to dimension {dim}; the pairing vanishes"));
            }
            if res.route == Route::BinverseCheck {
                let holds = res.metadata.get("identity").map(String::as_str) == Some("holds");
                let direct = res.metadata.get("direct_value").cloned().unwrap_or_default();
                rep.check("binverse-identity", holds, format!("direct={direct} substituted={}", res.value));
            }
            Ok(rep)
        })?);
    }
    Ok(out)
}

pub fn verlinde_job(args: &VerlindeArgs, timing: bool) -> JobResult {
    let mut out = Vec::new();
    for (n, d, g) in grid(&args.n, &args.d, &args.g) {
        for &k in &args.k {
            out.push(timed(timing, || {
                let spec = VerlindeSpec::new(n, d, g, k);
                let mut req = BTreeMap::new();
                req.insert("n".into(), n.to_string());
                req.insert("d".into(), d.to_string());
                req.insert("g".into(), g.to_string());
                req.insert("k".into(), k.to_string());
                req.insert("precision".into(), args.precision.to_string());
                let mut rep = JobReport::new(req);
                let r = verlinde_check(&spec, args.precision)?;
                rep.set("D", &r.d);
                rep.set("V", r.v.decimal());
                rep.set("V_imag", moduli_core::exact::rational::to_decimal(&r.v.imag, r.v.digits));
                rep.set("terms", r.v.terms);
                rep.set("pi_exponent", 0);
                rep.check("verlinde", r.passed(), r.failures.join("; "));
                Ok(rep)
            })?);
        }
    }
    Ok(out)
}

fn lattice_request(req: &mut BTreeMap<String, String>, l: &LatticeArgs) -> Result<LatticeSumConfig, Failure> {
    if l.tolerance.is_nan() || l.tolerance <= 0.0 {
        return Err(Failure::Input(format!("tolerance must be positive, got {}", l.tolerance)));
    }
    if l.digits == 0 || l.digits > 17 {
        return Err(Failure::Input(format!("digits must lie in 1..=17, got {}", l.digits)));
    }
    req.insert("cutoff".into(), l.cutoff.to_string());
    req.insert("doublings".into(), l.doublings.to_string());
    req.insert("tolerance".into(), sci(l.tolerance, 3));
    Ok(LatticeSumConfig { cutoff: l.cutoff, doublings: l.doublings })
}

fn witten_job(args: &WittenArgs, timing: bool) -> JobResult {
    let a = exponents(&args.a, "a-class r=m")?;
    let l = &args.lattice;
    let mut out = Vec::new();
    for (n, d, g) in grid(&args.n, &args.d, &args.g) {
        out.push(timed(timing, || {
            let mut req = BTreeMap::new();
            req.insert("n".into(), n.to_string());
            req.insert("d".into(), d.to_string());
            req.insert("g".into(), g.to_string());
            req.insert("a".into(), join_map(&a));
            let config = lattice_request(&mut req, l)?;
            let mut spec = PairingSpec::new(n, d, g);
            spec.a = a.clone();
            spec.validate()?;
            let mut rep = JobReport::new(req);
            let w = witten_sum(n, d, g, &a, &config)?;
            let exact = pairing_a(&spec)?.value;
            let exact_f = to_f64(&exact);
            rep.set("value", sci(w.value, l.digits));
            rep.set("imag", sci(w.imag, l.digits));
            rep.set("pi_exponent", 0);
            rep.set("summand_pi_exponent", w.pi_exponent);
            rep.set("sequence", w.sequence.iter().map(|v| sci(*v, l.digits)).collect::<Vec<_>>().join(","));
            rep.set("window", sci(w.window, 3));
            rep.set("exact", &exact);
            if exact.is_zero() {
                let err = w.value.abs();
                rep.set("absolute_error", sci(err, 3));
                rep.check("agreement", err < l.tolerance, format!("|sum| = {}", sci(err, 3)));
            } else {
                let err = ((w.value - exact_f) / exact_f).abs();
                rep.set("relative_error", sci(err, 3));
                rep.check("agreement", err < l.tolerance, format!("relative error {}", sci(err, 3)));
            }
            if w.window.is_nan() {
                rep.diagnostics.push("single cutoff; no convergence window".into());
            } else if w.window >= l.tolerance {
                rep.diagnostics.push(format!(
                    "successive cutoffs differ by {} relative; the sum may converge slowly or diverge",
                    sci(w.window, 3)
                ));
            }
            Ok(rep)
        })?);
    }
    Ok(out)
}

fn szenes_job(args: &SzenesArgs, timing: bool) -> JobResult {
    let functions: Vec<SzenesFunction> = if args.function.is_empty() {
        SzenesFunction::ALL.to_vec()
    } else {
        args.function.iter().map(|s| SzenesFunction::parse(s)).collect::<Result<_, _>>()?
    };
    let l = &args.lattice;
    let mut out = Vec::new();
    for f in functions {
        out.push(timed(timing, || {
            let mut req = BTreeMap::new();
            req.insert("function".into(), f.id().to_string());
            req.insert("n".into(), f.n().to_string());
            let config = lattice_request(&mut req, l)?;
            let mut rep = JobReport::new(req);
            let s = szenes_check(f, &config)?;
            rep.set("lhs", sci(s.lhs, l.digits));
            rep.set("lhs_imag", sci(s.lhs_imag, l.digits));
            rep.set("rhs", &s.rhs);
            rep.set("pi_exponent", 0);
            rep.set("differences", s.differences.iter().map(|v| sci(*v, 3)).collect::<Vec<_>>().join(","));
            rep.check("agreement", s.difference() < l.tolerance, format!("|lhs - rhs| = {}", sci(s.difference(), 3)));
            Ok(rep)
        })?);
    }
    Ok(out)
}

fn thaddeus_job(args: &ThaddeusArgs, timing: bool) -> JobResult {
    let mut out = Vec::new();
    for &g in &args.g {
        for &j in &args.j {
            out.push(timed(timing, || {
                let mut req = BTreeMap::new();
                req.insert("g".into(), g.to_string());
                req.insert("j".into(), j.to_string());
                req.insert("regularize".into(), args.regularize.to_string());
                let mut rep = JobReport::new(req);
                let t = thaddeus_value(g, j, args.regularize)?;
                rep.set("value", &t.coeff);
                rep.set("pi_exponent", t.pi_exponent);
                if let Some(v) = t.as_rational() {
                    let exp = u32::try_from(j).map_err(|_| Failure::Input(format!("j={j} too large")))?;
                    let residue = pairing_a(&PairingSpec::new(2, 1, g).with_a(2, exp))?.value;
                    rep.check("residue-agreement", &residue == v, format!("residue={residue}"));
                }
                Ok(rep)
            })?);
        }
    }
    Ok(out)
}

fn svol_job(g: &[usize], timing: bool) -> JobResult {
    g.iter()
        .map(|&g| {
            timed(timing, || {
                let mut req = BTreeMap::new();
                req.insert("g".into(), g.to_string());
                let mut rep = JobReport::new(req);
                let v = svol_value(g)?;
                let residue = pairing_a(&PairingSpec::new(2, 1, g))?.value;
                rep.set("value", &v);
                rep.set("pi_exponent", 0);
                rep.check("residue-agreement", residue == v, format!("residue={residue}"));
                Ok(rep)
            })
        })
        .collect()
}

pub fn oracle_job(cmd: &OracleCommand, timing: bool) -> JobResult {
    match cmd {
        OracleCommand::Witten(a) => witten_job(a, timing),
        OracleCommand::Szenes(a) => szenes_job(a, timing),
        OracleCommand::Thaddeus(a) => thaddeus_job(a, timing),
        OracleCommand::Svol(a) => svol_job(&a.g, timing),
    }
}

pub fn selftest_job(timing: bool) -> JobResult {
    let r = timed(timing, || {
        let mut rep = JobReport::new(BTreeMap::new());
        let outcomes = run_selftest();
        let failed = outcomes.iter().filter(|c| !c.passed).count();
        rep.set("checks_run", outcomes.len());
        rep.set("checks_failed", failed);
        for c in outcomes {
            rep.check(&c.name, c.passed, c.detail);
        }
        Ok(rep)
    })?;
    Ok(vec![r])
}
