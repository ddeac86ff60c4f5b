//! Acceptance criteria 1–9, one line per criterion. Exits nonzero if any fails.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use moduli_core::exact::rational::{int, powi, rat, to_f64};
use moduli_core::oracles::{
    joint_expansion_residue, random_expression, svol_value, szenes_check, thaddeus_value, witten_sum, LatticeSumConfig,
    SzenesFunction,
};
use moduli_core::pairing::{
    binverse_identity_check, epsilon_scaled_pairing, pairing_a, pairing_b, pairing_f, PairingSpec,
};
use moduli_core::residue::iterated_residue;
use moduli_core::verlinde::{verlinde_check, verlinde_residue_d, VerlindeSpec, DEFAULT_DIGITS};
use moduli_core::{Rational, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Result<Verdict> {
    Ok(Verdict { passed, detail: detail.into() })
}

fn a_spec(n: usize, g: usize, a: &[(usize, u32)]) -> PairingSpec {
    a.iter().fold(PairingSpec::new(n, 1, g), |s, &(r, m)| s.with_a(r, m))
}

fn a_monomials(n: usize, max_weight: usize) -> Vec<Vec<(usize, u32)>> {
    let mut out = vec![vec![]];
    for r in 2..=n {
        let mut next = Vec::new();
        for m in &out {
            let used: usize = m.iter().map(|(r, e): &(usize, u32)| r * *e as usize).sum();
            for e in 0..=((max_weight - used) / r) as u32 {
                let mut m = m.clone();
                if e > 0 {
                    m.push((r, e));
                }
                next.push(m);
            }
        }
        out = next;
    }
    out
}

fn volumes() -> Result<Verdict> {
    let mut ok = true;
    let mut parts = Vec::new();
    for g in 2..=5usize {
        let v = pairing_a(&a_spec(2, g, &[]))?.value;
        ok &= v == svol_value(g)?;
        parts.push(v.to_string());
    }
    ok &= parts[..3] == ["1/12", "7/1440", "31/120960"];
    verdict(ok, format!("g=2..5: {}", parts.join(", ")))
}

fn thaddeus() -> Result<Verdict> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (g, j, reg) in [(3, 1, false), (4, 1, false), (4, 2, false), (2, 1, true)] {
        let v = pairing_a(&a_spec(2, g, &[(2, j as u32)]))?.value;
        ok &= thaddeus_value(g, j, reg)?.as_rational() == Some(&v);
        parts.push(format!("({g},{j})={v}"));
    }
    ok &= parts[3] == "(2,1)=1/2";
    verdict(ok, parts.join(", "))
}

fn witten() -> Result<Verdict> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, g, a, cutoff) in
        [(2, 3, vec![], 4000), (2, 4, vec![], 4000), (3, 2, vec![], 600), (3, 2, vec![(2, 1)], 600)]
    {
        let start = Instant::now();
        let m: BTreeMap<usize, u32> = a.iter().copied().collect();
        let exact = to_f64(&pairing_a(&a_spec(n, g, &a))?.value);
        let w = witten_sum(n, 1, g, &m, &LatticeSumConfig::new(cutoff))?;
        let err = ((w.value - exact) / exact).abs();
        ok &= err < 1e-5 && start.elapsed() < Duration::from_secs(60);
        parts.push(format!("({n},{g},{m:?}) rel {err:.1e}"));
    }
    verdict(ok, parts.join(", "))
}

fn szenes() -> Result<Verdict> {
    let mut ok = true;
    let mut parts = Vec::new();
    for f in SzenesFunction::ALL {
        let cutoff = if f.n() == 2 { 10_000 } else { 200 };
        let r = szenes_check(f, &LatticeSumConfig::new(cutoff))?;
        ok &= r.difference() < 1e-5;
        parts.push(format!("{} {:.1e}", f.id(), r.difference()));
    }
    ok &= szenes_check(SzenesFunction::HalfSquare, &LatticeSumConfig::new(1))?.rhs == rat(1, 24);
    verdict(ok, parts.join(", "))
}

fn verlinde() -> Result<Verdict> {
    let mut ok = true;
    let mut count = 0;
    for (n, ds) in [(2usize, vec![1i64]), (3, vec![1, 2])] {
        for d in ds {
            for g in 2..=3 {
                for level in 0..=3u64 {
                    ok &= verlinde_check(&VerlindeSpec::new(n, d, g, level * n as u64), DEFAULT_DIGITS)?.passed();
                    count += 1;
                }
            }
        }
    }
    let spots = [(2, 0, 1), (2, 2, 6), (3, 2, 28)]
        .map(|(g, k, want)| verlinde_residue_d(&VerlindeSpec::new(2, 1, g, k)).map(|d| d == int(want)));
    for s in spots {
        ok &= s?;
    }
    verdict(ok, format!("{count} specs, spot values 1, 6, 28"))
}

fn internal_identities() -> Result<Verdict> {
    let mut reduced = 0;
    let mut ok = true;
    for n in 2..=3 {
        for g in 2..=3 {
            for a in a_monomials(n, 8) {
                let s = a_spec(n, g, &a);
                ok &= pairing_f(&s)?.value == pairing_a(&s)?.value;
                reduced += 1;
            }
        }
    }
    let mut binverse = 0;
    for n in 2..=3usize {
        for g in 2..=3 {
            let caps: Vec<Vec<u32>> = if n == 2 { vec![vec![]] } else { (0..=2).map(|c| vec![c]).collect() };
            for cap in caps {
                for a in a_monomials(n, 4) {
                    let m: BTreeMap<usize, u32> = a.iter().copied().collect();
                    ok &= binverse_identity_check(n, 1, g, &m, &cap)?.holds;
                    binverse += 1;
                }
            }
        }
    }
    let mut eps = 0;
    for (n, g, a) in [(2, 3, vec![(2, 3)]), (3, 2, vec![(2, 4)]), (3, 2, vec![(2, 1), (3, 2)]), (2, 3, vec![(2, 2)])] {
        let s = a_spec(n, g, &a);
        let k = ((s.real_dimension() - s.class_degree()) / 2) as i64;
        let plain = pairing_a(&s)?.value;
        for e in [int(1), int(2), rat(1, 3)] {
            ok &= epsilon_scaled_pairing(&s, &e)?.value / powi(&e, k) == plain;
            eps += 1;
        }
    }
    verdict(ok, format!("{reduced} cap-0 reductions, {binverse} B-inverse checks, {eps} epsilon evaluations"))
}

fn b_sector() -> Result<Verdict> {
    let zero = Rational::from_integer(0.into());
    let unpaired = [
        PairingSpec::new(2, 1, 2).with_b(2, 1),
        PairingSpec::new(2, 1, 3).with_b(2, 1).with_b(2, 2),
        PairingSpec::new(3, 1, 2).with_b(2, 1).with_b(3, 1),
    ];
    let mut ok = true;
    for s in &unpaired {
        ok &= pairing_b(s)?.value == zero;
    }
    let b = pairing_b(&PairingSpec::new(2, 1, 3).with_a(2, 1).with_b(2, 1).with_b(2, 4))?;
    let lower = pairing_a(&a_spec(2, 2, &[(2, 1)]))?.value;
    ok &= b.value == lower && lower == rat(1, 2);
    verdict(
        ok,
        format!(
            "unpaired 0; reduced {} (literal {}, sign {})",
            b.value, b.metadata["literal_value"], b.metadata["b_pair_sign"]
        ),
    )
}

fn engine_oracle() -> Result<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(2718);
    let mut agree = 0;
    for i in 0..50 {
        let f = random_expression(&mut rng, 2 + i % 2, 6)?;
        if iterated_residue(&f.to_expression()?)? == joint_expansion_residue(&f)? {
            agree += 1;
        }
    }
    verdict(agree == 50, format!("{agree}/50 agree"))
}

fn determinism() -> Result<Verdict> {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_moduli"))
            .arg("selftest")
            .env("MODULI_THREADS", threads)
            .output()
            .expect("binary runs")
    };
    let outs = [run("1"), run("1"), run("8"), run("8")];
    let ok = outs.iter().all(|o| o.status.success() && o.stdout == outs[0].stdout && !o.stdout.is_empty());
    verdict(ok, format!("{} runs, {} bytes each", outs.len(), outs[0].stdout.len()))
}

type Criterion = (&'static str, fn() -> Result<Verdict>, Duration);

fn main() {
    let criteria: [Criterion; 9] = [
        ("symplectic volumes", volumes, Duration::from_secs(5)),
        ("Thaddeus pairings", thaddeus, Duration::from_secs(5)),
        ("Witten lattice sums", witten, Duration::from_secs(240)),
        ("Szenes identity", szenes, Duration::from_secs(60)),
        ("Verlinde", verlinde, Duration::from_secs(120)),
        ("internal identities", internal_identities, Duration::MAX),
        ("b-sector", b_sector, Duration::MAX),
        ("engine oracle", engine_oracle, Duration::MAX),
        ("determinism", determinism, Duration::MAX),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (passed, detail) = match run() {
            Ok(v) => (v.passed, v.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let elapsed = start.elapsed();
        let passed = passed && elapsed < *limit;
        if !passed {
            failed += 1;
        }
        println!(
            "criterion {}: {} {name} ({detail}; {} ms)",
            i + 1,
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_millis()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
