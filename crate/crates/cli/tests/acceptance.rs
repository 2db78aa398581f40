//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed; exits nonzero if any
//! gating criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use symq_core::closed_forms::{
    a202828, check_a202828, check_conjecture_59, dihedral_count, nontrivial_linear_good_count,
    reference_count, REFERENCE_LINEAR_COUNTS,
};
use symq_core::constructors::{
    conj_quandle, dihedral_quandle, galex_quandle, linear_context, linear_quandle, takasaki_kei,
    twisted_conj_quandle, twisted_conj_subquandle, TwistedConjContext,
};
use symq_core::group::{
    gcd, is_automorphism, make_cyclic_group, FiniteGroup, GroupMap, TableCheck,
};
use symq_core::involution::{
    enumerate_brute, enumerate_linear, enumerate_theorem, parametrization_bound,
    verify_good_involution, EnumOptions, Method,
};
use symq_core::quandle::{are_isomorphic, check_quandle_axioms, ISOMORPHISM_NODE_BUDGET};
use symq_core::tables::{linear_table, nontrivial_units, LinearTable, TableConfig};
use symq_core::Error;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fixture_path(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", "groups", name]
        .iter()
        .collect()
}

fn fixture(name: &str) -> Arc<FiniteGroup> {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    Arc::new(FiniteGroup::parse_table(&text, TableCheck::default()).unwrap())
}

const SMALL_GROUPS: &[&str] = &[
    "z1.txt", "z2.txt", "z3.txt", "z4.txt", "z5.txt", "z6.txt", "z7.txt", "z8.txt",
    "z2xz2.txt", "s3.txt", "d4.txt", "q8.txt", "z2xz4.txt",
];

/// All automorphisms, by walking every permutation that fixes the identity.
fn automorphisms(g: &FiniteGroup) -> Vec<Vec<usize>> {
    fn walk(g: &FiniteGroup, f: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if f.len() == g.order() {
            if is_automorphism(g, f).unwrap() {
                out.push(f.clone());
            }
            return;
        }
        for y in 0..g.order() {
            if !used[y] {
                used[y] = true;
                f.push(y);
                walk(g, f, used, out);
                f.pop();
                used[y] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; g.order()];
    used[g.identity()] = true;
    let mut f = vec![g.identity()];
    walk(g, &mut f, &mut used, &mut out);
    out
}

fn count_str(table: &LinearTable, n: usize, k: usize) -> Option<String> {
    table.row(n, k).and_then(|r| r.count()).map(ToString::to_string)
}

fn criterion_1(table: &LinearTable) -> Outcome {
    let mut checked = 0;
    for &(n, k, expected) in REFERENCE_LINEAR_COUNTS.iter().filter(|r| r.0 <= 23) {
        let k = k.rem_euclid(n as i64) as usize;
        let row = table.row(n, k).ok_or(format!("row ({n},{k}) missing"))?;
        ensure!(row.method() == Some(Method::Theorem), "({n},{k}) not enumerated");
        ensure!(
            count_str(table, n, k) == Some(expected.to_string()),
            "({n},{k}): expected {expected}, got {:?}",
            count_str(table, n, k)
        );
        checked += 1;
    }
    let produced = table.rows.iter().filter(|r| r.n <= 23).count();
    ensure!(produced == checked, "{produced} rows produced, {checked} expected");
    Ok(format!("{checked} rows with n <= 23 match by enumeration"))
}

fn criterion_2(table: &LinearTable) -> Outcome {
    for (k, expected) in [(5, 36u64), (7, 400), (11, 4), (17, 764), (19, 400), (23, 4)] {
        let row = table.row(24, k).ok_or(format!("row (24,{k}) missing"))?;
        ensure!(row.method() == Some(Method::Theorem), "(24,{k}) not enumerated");
        ensure!(
            count_str(table, 24, k) == Some(expected.to_string()),
            "(24,{k}): expected {expected}, got {:?}",
            count_str(table, 24, k)
        );
    }
    ensure!(a202828(6).to_string() == "1915456", "a202828(6) = {}", a202828(6));
    ensure!(a202828(7).to_string() == "42406144", "a202828(7) = {}", a202828(7));
    ensure!(reference_count(24, 13) == Some(1915456), "reference (24,13)");
    ensure!(reference_count(28, 15) == Some(42406144), "reference (28,15)");
    ensure!(count_str(table, 24, 13).as_deref() == Some("1915456"), "table (24,13)");
    ensure!(count_str(table, 28, 15).as_deref() == Some("42406144"), "table (28,15)");
    Ok("(24,*) rows by enumeration; (24,13), (28,15) match a202828(6), a202828(7)".into())
}

fn criterion_2_stretch() -> Outcome {
    let started = Instant::now();
    let opts = EnumOptions::count_only().with_deadline(Some(Instant::now() + Duration::from_secs(3600)));
    let set = enumerate_linear(24, 13, &opts).map_err(|e| e.to_string())?;
    ensure!(set.count == 1915456, "enumerated {}", set.count);
    Ok(format!(
        "(24,13) = 1915456 enumerated in {:.1}s",
        started.elapsed().as_secs_f64()
    ))
}

fn criterion_3(table: &LinearTable) -> Outcome {
    let report = table.totals_report();
    ensure!(report.is_ok(), "mismatched totals at n = {:?}", report.mismatches);
    ensure!(report.terms.len() == 27, "{} orders", report.terms.len());
    for (n, expected) in [(8, "44"), (20, "97358"), (28, "42406158")] {
        ensure!(
            table.total(n).map(ToString::to_string).as_deref() == Some(expected),
            "total at n = {n}"
        );
    }
    Ok("totals for 3 <= n <= 29 match".into())
}

fn same_mappings(ctx: &TwistedConjContext) -> Result<(), String> {
    let opts = EnumOptions::default();
    let t = enumerate_theorem(ctx, &opts).map_err(|e| e.to_string())?;
    let b = enumerate_brute(ctx.quandle(), &opts).map_err(|e| e.to_string())?;
    let tm: Vec<_> = t.mappings.unwrap().into_iter().map(|m| m.mapping).collect();
    let bm: Vec<_> = b.mappings.unwrap().into_iter().map(|m| m.mapping).collect();
    ensure!(tm == bm, "carrier {:?}: theorem {} vs brute {}", ctx.carrier(), tm.len(), bm.len());
    Ok(())
}

fn criterion_4() -> Outcome {
    let started = Instant::now();
    let mut linear = 0;
    for n in 1..=10usize {
        for k in 1..n.max(2) as i64 {
            if gcd(n, k as usize) == 1 {
                same_mappings(&linear_context(n, k).map_err(|e| e.to_string())?)?;
                linear += 1;
            }
        }
    }
    let mut subquandles = 0;
    for name in SMALL_GROUPS {
        let g = fixture(name);
        let n = g.order();
        for image in automorphisms(&g) {
            let phi = GroupMap::automorphism(Arc::clone(&g), image).unwrap();
            for mask in 1u32..(1 << n) {
                let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                match twisted_conj_subquandle(Arc::clone(&g), phi.clone(), &subset) {
                    Ok(ctx) => {
                        same_mappings(&ctx).map_err(|e| format!("{name}: {e}"))?;
                        subquandles += 1;
                    }
                    Err(Error::NotClosed(_)) => {}
                    Err(e) => return Err(format!("{name}: {e}")),
                }
            }
        }
    }
    let elapsed = started.elapsed();
    ensure!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    Ok(format!(
        "{linear} linear quandles and {subquandles} group subquandles agree ({:.1}s)",
        elapsed.as_secs_f64()
    ))
}

fn criterion_5() -> Outcome {
    let report = check_a202828(5, &EnumOptions::count_only()).map_err(|e| e.to_string())?;
    ensure!(report.is_ok(), "a202828 mismatches at {:?}", report.mismatches);
    let terms: Vec<String> = report.terms.iter().map(|(_, v)| v.to_string()).collect();
    ensure!(terms == ["4", "36", "400", "5776", "97344"], "terms {terms:?}");

    for n in 1..=200usize {
        let set = enumerate_linear(n, -1, &EnumOptions::count_only()).map_err(|e| e.to_string())?;
        ensure!(set.count == dihedral_count(n as u64), "R_{n}: {} vs {}", set.count, dihedral_count(n as u64));
    }

    for n in 1..=50usize {
        let found = nontrivial_units(n)
            .into_iter()
            .filter(|&k| {
                let opts = EnumOptions {
                    stop_after: Some(1),
                    ..EnumOptions::count_only()
                };
                enumerate_linear(n, k as i64, &opts).unwrap().count > 0
            })
            .count();
        ensure!(
            found == nontrivial_linear_good_count(n),
            "n = {n}: {found} vs {}",
            nontrivial_linear_good_count(n)
        );
    }
    Ok("a202828 for n <= 5, dihedral counts for n <= 200, nontrivial counts for n <= 50".into())
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    for n in [3, 5, 7] {
        let started = Instant::now();
        let r = check_conjecture_59(n, &EnumOptions::count_only()).map_err(|e| e.to_string())?;
        let elapsed = started.elapsed();
        ensure!(r.count == 10, "n = {n}: count {}", r.count);
        ensure!(r.fixed_points_ok, "n = {n}: fixed points {:?}", r.fixed_points);
        ensure!(elapsed < Duration::from_secs(600), "n = {n} took {elapsed:?}");
        parts.push(format!("n={n}: 10"));
    }
    Ok(parts.join(", "))
}

fn criterion_6_informational() -> Outcome {
    let r = check_conjecture_59(9, &EnumOptions::count_only()).map_err(|e| e.to_string())?;
    Ok(format!("n=9: count {} (L({}, {}))", r.count, r.modulus, r.k))
}

fn check_emitted(ctx: &TwistedConjContext) -> Result<u64, String> {
    let set = enumerate_theorem(ctx, &EnumOptions::default()).map_err(|e| e.to_string())?;
    let parts = ctx.quandle().components();
    for m in set.mappings.as_deref().unwrap_or_default() {
        ensure!(verify_good_involution(ctx.quandle(), &m.mapping).unwrap(), "not good: {:?}", m.mapping);
        let psi = m.inducing_psi.as_ref().ok_or("missing psi")?;
        for x in 0..m.mapping.len() {
            let y = m.mapping[x];
            ensure!(
                psi[parts.component_of(x)] == psi[parts.component_of(y)],
                "psi not constant on a rho-orbit"
            );
            ensure!(
                ctx.induced_image(psi[parts.component_of(x)], x) == ctx.carrier()[y],
                "psi does not induce rho"
            );
            // Constancy on components: the recovered ψ* agrees with the
            // recorded one, which has one value per component.
            ensure!(ctx.inducing_psi(&m.mapping).as_ref() == Some(psi), "psi not constant on a component");
        }
    }
    let bound = parametrization_bound(ctx);
    ensure!(num_le(set.count, &bound.to_string()), "count {} above bound {bound}", set.count);
    if ctx.is_whole_group() {
        ensure!(set.count >= ctx.s_set().len() as u64, "count below |S|");
    }
    Ok(set.count)
}

fn num_le(count: u64, bound: &str) -> bool {
    bound.len() > 20 || bound.parse::<u64>().map_or(true, |b| count <= b)
}

fn criterion_7() -> Outcome {
    for n in 1..=24usize {
        for k in 1..n.max(2) as i64 {
            if gcd(n, k as usize) != 1 {
                continue;
            }
            let q = linear_quandle(n, k).map_err(|e| e.to_string())?;
            ensure!(check_quandle_axioms(&q.rows()).unwrap(), "L({n},{k}) axioms");
            let kei = (k * k) as usize % n == 1 % n;
            ensure!(q.is_kei() == kei, "L({n},{k}) kei flag");
            let expected = n % 2 == 1 && k == n as i64 - 1;
            ensure!(
                (q.is_connected() && q.is_kei()) == expected || n == 1,
                "L({n},{k}) connected kei"
            );
            // Bounds are asserted inside every theorem run as well. Trivial
            // quandles (k = 1) have every involution as a good involution,
            // too many to walk past n = 10.
            if k == 1 && n > 10 {
                continue;
            }
            let ctx = linear_context(n, k).map_err(|e| e.to_string())?;
            let set = enumerate_theorem(&ctx, &EnumOptions::count_only()).map_err(|e| e.to_string())?;
            ensure!(num_le(set.count, &parametrization_bound(&ctx).to_string()), "L({n},{k}) upper bound");
            ensure!(set.count >= ctx.s_set().len() as u64, "L({n},{k}) lower bound");
        }
    }
    for n in 1..=16 {
        let z = Arc::new(make_cyclic_group(n).unwrap());
        ensure!(takasaki_kei(&z).unwrap().satisfies_axioms(), "Takasaki Z/{n}");
        ensure!(dihedral_quandle(n).unwrap().satisfies_axioms(), "R_{n}");
        let inv = GroupMap::inversion(Arc::clone(&z)).unwrap();
        ensure!(galex_quandle(&z, &inv).unwrap().satisfies_axioms(), "GAlex Z/{n}");
    }
    let mut emitted = 0;
    for name in SMALL_GROUPS {
        let g = fixture(name);
        ensure!(conj_quandle(&g).satisfies_axioms(), "Conj {name}");
        for image in automorphisms(&g) {
            let phi = GroupMap::automorphism(Arc::clone(&g), image).unwrap();
            ensure!(galex_quandle(&g, &phi).unwrap().satisfies_axioms(), "GAlex {name}");
            let ctx = twisted_conj_quandle(Arc::clone(&g), phi).unwrap();
            ensure!(ctx.quandle().satisfies_axioms(), "Conj({name}, phi)");
            emitted += check_emitted(&ctx)?;
        }
    }
    for (n, k) in [(8, 5), (12, 7), (16, 9), (15, 4), (21, 8), (24, 17)] {
        emitted += check_emitted(&linear_context(n, k).unwrap())?;
    }
    let l83 = linear_quandle(8, 3).unwrap();
    let r8 = dihedral_quandle(8).unwrap();
    let theta = are_isomorphic(&l83, &r8, ISOMORPHISM_NODE_BUDGET).map_err(|e| e.to_string())?;
    ensure!(theta.is_some(), "L(8,3) and R_8 not found isomorphic");
    Ok(format!("axioms, kei, bounds, connectivity, isomorphism; {emitted} emitted mappings checked"))
}

fn criterion_8() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_symq");
    let run = |workers: &str| {
        Command::new(exe)
            .args(["--workers", workers, "linear", "--n", "16", "--k", "9", "--emit-mappings"])
            .env_remove("SYMQ_WORKERS")
            .output()
            .map_err(|e| e.to_string())
    };
    let one = run("1")?;
    let eight = run("8")?;
    ensure!(one.status.success() && eight.status.success(), "nonzero exit");
    ensure!(one.stdout == eight.stdout, "outputs differ");
    let doc: serde_json::Value = serde_json::from_slice(&one.stdout).map_err(|e| e.to_string())?;
    ensure!(doc["count"] == 5776, "count {}", doc["count"]);
    Ok(format!("{} bytes identical across 1 and 8 workers", one.stdout.len()))
}

fn report(label: &str, gating: bool, f: impl FnOnce() -> Outcome) -> bool {
    let started = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into()))
    });
    let secs = started.elapsed().as_secs_f64();
    let tag = if gating { "" } else { " (non-gating)" };
    match &outcome {
        Ok(detail) => println!("{label}: PASS{tag} [{secs:.1}s] {detail}"),
        Err(detail) => println!("{label}: FAIL{tag} [{secs:.1}s] {detail}"),
    }
    outcome.is_ok() || !gating
}

fn main() {
    // Rows past the budget fall back to the closed form where it applies,
    // which criterion 2 allows for (24,13) and (28,15).
    let config = TableConfig {
        max_n: 29,
        workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        time_budget: Some(Duration::from_secs(120)),
    };
    let started = Instant::now();
    let table = linear_table(&config);
    println!("table up to n = 29 computed in {:.1}s", started.elapsed().as_secs_f64());

    let mut ok = true;
    match &table {
        Ok(table) => {
            ok &= report("criterion 1 (row counts, n <= 23)", true, || criterion_1(table));
            ok &= report("criterion 2 (row counts, n = 24, closed forms)", true, || criterion_2(table));
            ok &= report("criterion 3 (per-order totals)", true, || criterion_3(table));
        }
        Err(e) => {
            for label in ["criterion 1", "criterion 2", "criterion 3"] {
                println!("{label}: FAIL table construction failed: {e}");
            }
            ok = false;
        }
    }
    ok &= report("criterion 2 stretch ((24,13) by enumeration)", false, criterion_2_stretch);
    ok &= report("criterion 4 (oracle equivalence)", true, criterion_4);
    ok &= report("criterion 5 (closed forms)", true, criterion_5);
    ok &= report("criterion 6 (conjecture, n = 3, 5, 7)", true, criterion_6);
    ok &= report("criterion 6 informational (n = 9)", false, criterion_6_informational);
    ok &= report("criterion 7 (structural properties)", true, criterion_7);
    ok &= report("criterion 8 (determinism)", true, criterion_8);
    if !ok {
        std::process::exit(1);
    }
}
