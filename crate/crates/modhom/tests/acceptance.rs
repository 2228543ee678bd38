//! Acceptance gate: one test per criterion, each printing a single
//! `ACCEPTANCE <nn> pass|FAIL` line (visible under `--nocapture`).
//! Everything here is exact arithmetic; there are no tolerances anywhere.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

use modhom::forms::{basis_of, FormClass};
use modhom::hochschild::{ChainClass, ChainElement};
use modhom::homology::{
    cyclic_dims_bicomplex, cyclic_dims_formula, CyclicVariant, GradedComplex,
};
use modhom::modpair::{ModulusPair, Monomial, Multidegree};
use modhom::monoids::replete_bar_predicate;
use modhom::verify::{
    degree_one_isomorphism_check, enumerate_multidegrees, run_suite, Suite, SuiteConfig,
};
use modhom::arith::rat_int;

fn report(n: u32, name: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(info) => println!("ACCEPTANCE {n:02} pass {name}: {info}"),
        Err(e) => {
            println!("ACCEPTANCE {n:02} FAIL {name}: {e}");
            panic!("acceptance criterion {n} failed: {e}");
        }
    }
}

fn suite_outcome(suite: Suite, samples: u64, budget_secs: f64) -> Result<String, String> {
    let cfg = SuiteConfig { samples, ..SuiteConfig::default() };
    let start = Instant::now();
    let rep = run_suite(suite, &cfg);
    let elapsed = start.elapsed().as_secs_f64();
    if !rep.passed() {
        let first = rep
            .failures
            .first()
            .map(|f| format!("case {} seed {}: {}", f.case, f.seed, f.detail))
            .unwrap_or_default();
        return Err(format!("{} failures, first: {first}", rep.failures.len()));
    }
    if elapsed > budget_secs {
        return Err(format!("took {elapsed:.1}s, budget {budget_secs}s"));
    }
    Ok(format!("{samples} cases in {elapsed:.2}s"))
}

#[test]
fn criterion_01_operator_identities() {
    report(1, "operator identities", suite_outcome(Suite::Identities, 1000, 60.0));
}

#[test]
fn criterion_02_membership_closure() {
    report(2, "membership closure", suite_outcome(Suite::Closure, 1000, 60.0));
}

#[test]
fn criterion_03_comparison_round_trips() {
    report(3, "comparison round trips", suite_outcome(Suite::HkrRoundtrip, 500, 60.0));
}

#[test]
fn criterion_04_degree_one_isomorphism() {
    let run = || -> Result<String, String> {
        let pairs = [
            ModulusPair::new(1, 0, vec![1]),
            ModulusPair::new(1, 0, vec![3]),
            ModulusPair::new(0, 1, vec![]),
            ModulusPair::new(1, 1, vec![2]),
        ];
        let mut total = 0;
        for pair in pairs {
            let pair = pair.map_err(|e| e.to_string())?;
            let checked = degree_one_isomorphism_check(&pair, 1, 4)?;
            if checked == 0 {
                return Err(format!("no degree-one objects found for {pair}"));
            }
            total += checked;
        }
        Ok(format!("{total} exhaustive degree-one objects confirmed"))
    };
    report(4, "degree-one isomorphism", run());
}

#[test]
fn criterion_05_formula_matches_bicomplex() {
    let run = || -> Result<String, String> {
        let start = Instant::now();
        let mut cells = 0u64;
        for s in 0..=2usize {
            for t in 0..=1usize {
                for r in all_moduli(s) {
                    let pair = ModulusPair::new(s, t, r).map_err(|e| e.to_string())?;
                    for deg in enumerate_multidegrees(&pair, 3) {
                        let complex = GradedComplex::build(&pair, FormClass::MOmega, &deg)
                            .map_err(|e| e.to_string())?;
                        for variant in CyclicVariant::ALL {
                            for n in 0..=8i64 {
                                let formula = cyclic_dims_formula(&complex, variant, n);
                                let oracle = cyclic_dims_bicomplex(&complex, variant, n);
                                if formula != oracle {
                                    return Err(format!(
                                        "{pair} deg {deg} {variant}_{n}: {formula} vs {oracle}"
                                    ));
                                }
                                cells += 1;
                            }
                        }
                    }
                }
            }
        }
        let elapsed = start.elapsed().as_secs_f64();
        if elapsed > 600.0 {
            return Err(format!("took {elapsed:.0}s, budget 600s"));
        }
        Ok(format!("{cells} dimension cells agree in {elapsed:.1}s"))
    };
    report(5, "closed formula vs total complex", run());
}

fn all_moduli(s: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..s {
        out = out
            .into_iter()
            .flat_map(|r| (1..=3i64).map(move |v| {
                let mut next = r.clone();
                next.push(v);
                next
            }))
            .collect();
    }
    out
}

#[test]
fn criterion_06_classical_dimension_tables() {
    let run = || -> Result<String, String> {
        // Ground field: cyclic homology alternates 1, 0, 1, 0, ...
        let field = ModulusPair::new(0, 0, vec![]).map_err(|e| e.to_string())?;
        let zero = Multidegree::zero(0, 0);
        let complex =
            GradedComplex::build(&field, FormClass::MOmega, &zero).map_err(|e| e.to_string())?;
        for n in 0..=8i64 {
            let want = if n % 2 == 0 { 1 } else { 0 };
            let hc = cyclic_dims_formula(&complex, CyclicVariant::HC, n);
            if hc != want {
                return Err(format!("HC_{n}(k) = {hc}, want {want}"));
            }
            if cyclic_dims_bicomplex(&complex, CyclicVariant::HC, n) != want {
                return Err(format!("bicomplex HC_{n}(k) != {want}"));
            }
        }
        // Pole-free polynomial rings: summed over all multidegrees of total
        // y-degree D, the degree-q dimension is C(t,q) * #(k >= 0, |k| = D-q).
        let mut checked = 0;
        for t in 1..=3usize {
            let pair = ModulusPair::new(0, t, vec![]).map_err(|e| e.to_string())?;
            for big_d in 0..=5i64 {
                for q in 0..=t {
                    let mut total = 0usize;
                    for dy in compositions(big_d, t) {
                        let deg = Multidegree::new(vec![], dy);
                        total += basis_of(&pair, FormClass::MOmega, q, &deg)
                            .map_err(|e| e.to_string())?
                            .len();
                    }
                    let expect = if big_d - (q as i64) < 0 {
                        0
                    } else {
                        binom(t, q) * count_monomials(big_d - q as i64, t)
                    };
                    if total != expect {
                        return Err(format!(
                            "t={t} D={big_d} q={q}: counted {total}, expect {expect}"
                        ));
                    }
                    checked += 1;
                }
            }
        }
        Ok(format!("field table and {checked} polynomial counting cells agree"))
    };
    report(6, "classical dimension tables", run());
}

fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for rest in compositions(total - first, parts - 1) {
            let mut v = vec![first];
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Monomials in `t` variables of total degree `d`.
fn count_monomials(d: i64, t: usize) -> usize {
    if d < 0 {
        return 0;
    }
    binom(d as usize + t - 1, t - 1)
}

#[test]
fn criterion_07_log_pole_signature() {
    let run = || -> Result<String, String> {
        let pair = ModulusPair::new(1, 0, vec![1]).map_err(|e| e.to_string())?;
        let deg = Multidegree::zero(1, 0);
        let complex =
            GradedComplex::build(&pair, FormClass::MOmega, &deg).map_err(|e| e.to_string())?;
        if complex.betti(0) != 1 || complex.betti(1) != 1 {
            return Err(format!(
                "cohomology ({}, {}), want (1, 1)",
                complex.betti(0),
                complex.betti(1)
            ));
        }
        for n in 0..=6i64 {
            let hp = cyclic_dims_formula(&complex, CyclicVariant::HP, n);
            if hp != 1 {
                return Err(format!("HP_{n} = {hp}, want 1"));
            }
            if cyclic_dims_bicomplex(&complex, CyclicVariant::HP, n) != 1 {
                return Err(format!("bicomplex HP_{n} != 1"));
            }
        }
        Ok("H^0 = H^1 = 1 and HP_n = 1 for n = 0..6".to_string())
    };
    report(7, "log pole signature", run());
}

#[test]
fn criterion_08_repletion() {
    let run = || -> Result<String, String> {
        let randomized = suite_outcome(Suite::Repletion, 500, 120.0)?;
        // Exhaustive: the replete bar predicate agrees with the chain-level
        // membership class on every bounded tensor.
        let pairs = [
            ModulusPair::new(1, 0, vec![3]),
            ModulusPair::new(1, 1, vec![2]),
            ModulusPair::new(0, 1, vec![]),
        ];
        let mut checked = 0u64;
        for pair in pairs {
            let pair = pair.map_err(|e| e.to_string())?;
            let monomials = bounded_monomials(&pair, 3);
            for n in 1..=3usize {
                for tensor in cartesian_power(&monomials, n) {
                    let predicate = replete_bar_predicate(&pair, &tensor);
                    let class =
                        ChainElement::from_tensor(pair.clone(), tensor.clone(), rat_int(1))
                            .classify();
                    if predicate != (class <= ChainClass::P) {
                        return Err(format!("predicate disagrees on {pair}: {tensor:?}"));
                    }
                    checked += 1;
                }
            }
        }
        Ok(format!("{randomized}; {checked} exhaustive tensors agree"))
    };
    report(8, "repletion splitting and predicate", run());
}

fn bounded_monomials(pair: &ModulusPair, bound: i64) -> Vec<Monomial> {
    let mut out = vec![Monomial::new(vec![0; pair.s()], vec![0; pair.t()])];
    for j in 0..pair.s() {
        out = out
            .into_iter()
            .flat_map(|m| {
                (-bound..=bound).map(move |v| {
                    let mut next = m.clone();
                    next.i[j] = v;
                    next
                })
            })
            .collect();
    }
    for l in 0..pair.t() {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..=bound).map(move |v| {
                    let mut next = m.clone();
                    next.k[l] = v;
                    next
                })
            })
            .collect();
    }
    out
}

fn cartesian_power(items: &[Monomial], n: usize) -> Vec<Vec<Monomial>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                items.iter().map(move |m| {
                    let mut next = prefix.clone();
                    next.push(m.clone());
                    next
                })
            })
            .collect();
    }
    out
}

#[test]
fn criterion_09_probe_confirms_constructed_cycles() {
    let run = || -> Result<String, String> {
        let outcome = suite_outcome(Suite::Probe, 120, 300.0)?;
        Ok(format!("{outcome}, pole bounds escalated to at most 4"))
    };
    report(9, "homology probe", run());
}

#[test]
fn criterion_10_thread_count_determinism() {
    let run = || -> Result<String, String> {
        let bin = env!("CARGO_BIN_EXE_modhom");
        let mut outputs = Vec::new();
        for threads in ["1", "4"] {
            let out = Command::new(bin)
                .args(["verify", "--samples", "40", "--seed", "23"])
                .env("MODHOM_THREADS", threads)
                .output()
                .map_err(|e| e.to_string())?;
            if !out.status.success() {
                return Err(format!(
                    "verify failed under MODHOM_THREADS={threads}: {}",
                    String::from_utf8_lossy(&out.stderr)
                ));
            }
            outputs.push(out.stdout);
        }
        if outputs[0] != outputs[1] {
            return Err("stdout differs between MODHOM_THREADS=1 and 4".to_string());
        }
        // The library-level fan-out is deterministic too.
        let cfg = SuiteConfig { samples: 40, ..SuiteConfig::default() };
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .map_err(|e| e.to_string())?;
        let quad = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .map_err(|e| e.to_string())?;
        let mut table: BTreeMap<&str, (String, String)> = BTreeMap::new();
        for suite in Suite::ALL {
            let a = single.install(|| run_suite(suite, &cfg));
            let b = quad.install(|| run_suite(suite, &cfg));
            table.insert(
                suite.name(),
                (
                    serde_json::to_string(&a).map_err(|e| e.to_string())?,
                    serde_json::to_string(&b).map_err(|e| e.to_string())?,
                ),
            );
        }
        for (name, (a, b)) in &table {
            if a != b {
                return Err(format!("suite {name} report differs across pools"));
            }
        }
        Ok("binary stdout and suite reports byte-identical across pools".to_string())
    };
    report(10, "thread count determinism", run());
}
