//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Exits 0 after printing every line so that an honest FAIL does not break
//! the workspace test run; set `ACCEPTANCE_STRICT=1` to exit 1 on any FAIL.

use std::time::{Duration, Instant};

use ltoral::report::VerificationReport;
use ltoral_cli::run_args;

type Verdict = (bool, String);

fn reports(args: &[&str]) -> Result<Vec<VerificationReport>, String> {
    let out = run_args(args);
    let reps: Vec<VerificationReport> = out.reports().cloned().collect();
    if reps.is_empty() {
        return Err(format!("`{}` produced no report: {}", args.join(" "), out.render().trim()));
    }
    Ok(reps)
}

fn report(args: &[&str]) -> Result<VerificationReport, String> {
    Ok(reports(args)?.remove(0))
}

fn get(r: &VerificationReport, k: &str) -> i64 {
    r.get(k).unwrap_or(i64::MIN)
}

fn awc_family_a() -> Result<Verdict, String> {
    let mut ok = true;
    let mut seen = Vec::new();
    for ell in [3, 5, 7] {
        let r = report(&["awc", "--family", "A", "--ell", &ell.to_string()])?;
        let (w, irr) = (get(&r, "w"), get(&r, "irr_W"));
        ok &= r.pass && w == ell && irr == ell;
        seen.push(format!("l={ell}: w={w} |Irr(W)|={irr}"));
    }
    Ok((ok, seen.join(", ")))
}

fn awc_g2() -> Result<Verdict, String> {
    let r = report(&["awc", "--preset", "G2"])?;
    let terms = (get(&r, "z_W"), get(&r, "z_OutS"), get(&r, "z_OutQ"));
    let ok = r.pass && terms == (0, 4, 2) && get(&r, "w") == 6 && get(&r, "irr_W") == 6;
    Ok((ok, format!("w = {} + {} + {} = {}, |Irr(W)| = {}", terms.0, terms.1, terms.2, get(&r, "w"), get(&r, "irr_W"))))
}

fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

fn thev_corpus() -> Result<Verdict, String> {
    let mut groups: Vec<(String, u64)> =
        ["S3", "S5", "S7", "A5"].iter().map(|s| (s.to_string(), 0)).collect();
    for ell in [3u64, 5, 7] {
        groups.push((format!("SL2({ell})"), 0));
        groups.push((format!("GL2({ell})"), 0));
        for d in (1..ell).filter(|d| (ell - 1) % d == 0) {
            groups.push((format!("Frob({ell},{d})"), 0));
        }
    }
    let orders = |g: &str| -> u64 {
        let spec = ltoral_cli::commands::group_from_text(g).expect("corpus parses").1;
        ltoral::group::build_group(&spec).expect("corpus builds").order() as u64
    };
    let mut ok = true;
    let mut runs = 0;
    let mut failed = Vec::new();
    for (g, _) in &groups {
        let n = orders(g);
        for ell in [3u64, 5, 7].into_iter().filter(|&l| valuation(n, l) == 1) {
            let r = report(&["lemma", "thev", g, "--ell", &ell.to_string()])?;
            runs += 1;
            if !r.pass || r.chains.iter().map(|c| c.links.len()).sum::<usize>() != 3 {
                ok = false;
                failed.push(format!("{g}@{ell}"));
            }
        }
    }
    let s5 = report(&["lemma", "thev", "S5", "--ell", "5"])?;
    let spot = (get(&s5, "irr_W"), get(&s5, "z_W"), get(&s5, "irr_N_W_U"));
    ok &= spot == (7, 2, 5);
    Ok((ok, format!("{runs} (W, l) pairs, failures {failed:?}; S5 at l=5: |Irr|={} z={} |Irr(N)|={}", spot.0, spot.1, spot.2)))
}

fn chars_sweep() -> Result<Verdict, String> {
    let dir = std::env::temp_dir().join(format!("ltoral-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let cfg = dir.join("chars.json");
    std::fs::write(&cfg, r#"{"command": "chars", "ell": [3, 5], "x1": ["1", "C2", "C4", "S3"]}"#)
        .map_err(|e| e.to_string())?;
    let out = run_args(&["sweep", cfg.to_str().expect("utf-8 path")]);
    let _ = std::fs::remove_dir_all(&dir);
    let mut ok = out.exit_code == 0;
    let mut cells = 0;
    let mut failed = Vec::new();
    for r in out.reports() {
        cells += 1;
        let fiber = r.chains.iter().find(|c| c.name == "fiber count");
        if !(r.pass && fiber.is_some_and(|c| c.holds())) {
            ok = false;
            let link = fiber.and_then(|c| c.links.first());
            failed.push(format!(
                "case {} X1={} e={} l={}: {}",
                r.inputs["case"], r.inputs["x1"], r.inputs["e"], r.inputs["ell"],
                link.map(|l| format!("{} = {} vs {} = {}", l.lhs_label, l.lhs, l.rhs_label, l.rhs)).unwrap_or_default()
            ));
        }
    }
    let summary = out.records.last().map(|r| serde_json::to_string(r).unwrap_or_default()).unwrap_or_default();
    ok &= cells > 0;
    Ok((ok, format!("{cells} cells meeting the hypotheses, failures {failed:?}; {summary}")))
}

fn am_tower() -> Result<Verdict, String> {
    let mut ok = true;
    let mut parts = Vec::new();
    let a3 = report(&["am", "--family", "A", "--ell", "3", "--levels", "1..4"])?;
    let mut a3_vals = Vec::new();
    for n in 1..=4 {
        let (m, r) = (get(&a3, &format!("n{n}.m_count")), get(&a3, &format!("n{n}.r_count")));
        ok &= m == 6 && r == 6;
        a3_vals.push(format!("({m},{r})"));
    }
    parts.push(format!("A l=3 levels 1..4 (m,r) = {}", a3_vals.join(" ")));
    for (args, label) in [
        (&["am", "--preset", "G2", "--levels", "1..3"][..], "G2 levels 1..3"),
        (&["am", "--family", "A", "--ell", "5", "--levels", "1..1"][..], "A l=5 level 1"),
    ] {
        let r = report(args)?;
        let levels: Vec<u32> = r
            .integers
            .keys()
            .filter_map(|k| k.strip_suffix(".m_count")?.strip_prefix('n')?.parse().ok())
            .collect();
        let vals: Vec<String> = levels
            .iter()
            .map(|n| {
                let (m, rr) = (get(&r, &format!("n{n}.m_count")), get(&r, &format!("n{n}.r_count")));
                ok &= m == rr;
                format!("({m},{rr})")
            })
            .collect();
        ok &= !levels.is_empty();
        parts.push(format!("{label} (m,r) = {}", vals.join(" ")));
    }
    Ok((ok, parts.join("; ")))
}

fn connectivity() -> Result<Verdict, String> {
    let mut ok = true;
    let mut parts = Vec::new();
    for args in [
        &["connectivity", "--family", "A", "--ell", "3", "--levels", "1..2"][..],
        &["connectivity", "--family", "A", "--ell", "5", "--levels", "1..2"][..],
        &["connectivity", "--preset", "G2", "--levels", "1..2"][..],
    ] {
        for r in reports(args)? {
            let (outer, fused) = (get(&r, "outer_classes"), get(&r, "fused_into_T"));
            ok &= r.pass && outer == fused && outer > 0;
            parts.push(format!("{}@{}: {fused}/{outer}", r.inputs["family"], r.inputs["level"]));
        }
    }
    Ok((ok, parts.join(", ")))
}

/// Every catalog family at parameters up to order 5040. Cyclic and dihedral
/// groups stop at order 128 and 256: their tables grow as k^2 phi(e).
fn chartab_corpus() -> Vec<String> {
    let mut v = Vec::new();
    for n in 1..=128 {
        v.push(format!("C{n}"));
    }
    for n in (6..=256).step_by(2) {
        v.push(format!("D{n}"));
    }
    for n in 1..=7 {
        v.push(format!("S{n}"));
    }
    for n in 3..=7 {
        v.push(format!("A{n}"));
    }
    for p in [3u64, 5, 7, 11, 13, 17] {
        v.push(format!("SL2({p})"));
    }
    for p in [3u64, 5, 7] {
        v.push(format!("GL2({p})"));
    }
    for p in [3u64, 5, 7, 11, 13] {
        v.push(format!("NGL2U({p})"));
    }
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71] {
        for d in (1..p).filter(|d| (p - 1) % d == 0) {
            if p * d <= 5040 {
                v.push(format!("Frob({p},{d})"));
            }
        }
    }
    v
}

fn chartab_suite() -> Result<Verdict, String> {
    use rayon::prelude::*;
    let corpus = chartab_corpus();
    let results: Vec<(String, Result<VerificationReport, String>)> =
        corpus.par_iter().map(|g| (g.clone(), report(&["chartab", g]))).collect();
    let mut failed = Vec::new();
    let mut oracle = 0;
    for (g, r) in &results {
        match r {
            Ok(r) => {
                let order = get(r, "order");
                let checks_ok = r.pass
                    && r.checks.get("orthogonality") == Some(&true)
                    && (order > 200 || r.checks.get("permutation oracle") == Some(&true));
                if order <= 200 {
                    oracle += 1;
                }
                if !checks_ok {
                    failed.push(g.clone());
                }
            }
            Err(e) => failed.push(format!("{g}: {e}")),
        }
    }
    Ok((failed.is_empty(), format!("{} groups ({oracle} with the permutation oracle), failures {failed:?}", results.len())))
}

fn little_groups() -> Result<Verdict, String> {
    let pairs = [
        ("S3", "C3", Some(3)),
        ("Frob(5,4)", "C5", Some(5)),
        ("Frob(5,2)", "C5", None),
        ("Frob(7,3)", "C7", None),
        ("Frob(7,6)", "C7", None),
        ("Frob(11,5)", "C11", None),
        ("S4", "C2 x C2", None),
        ("A4", "C2 x C2", None),
        ("D8", "C4", None),
        ("D10", "C5", None),
        ("D12", "C6", None),
        ("NGL2U(3)", "C3", None),
        ("NGL2U(5)", "C5", None),
        ("S3 x C2", "C3", None),
    ];
    let mut ok = true;
    let mut passed = 0;
    let mut failed = Vec::new();
    for (g, n, want) in pairs {
        let r = report(&["lemma", "little", g, "--normal", n])?;
        let good = r.pass && want.is_none_or(|w| get(&r, "sum_irr_inertia_quotients") == w);
        if good {
            passed += 1;
        } else {
            failed.push(format!("({g}, {n})"));
        }
        ok &= good;
    }
    Ok((ok && passed >= 10, format!("{passed}/{} pairs, failures {failed:?}", pairs.len())))
}

fn main() {
    let criteria: [(u32, &str, Duration, fn() -> Result<Verdict, String>); 8] = [
        (1, "AWC family A, l in {3,5,7}", Duration::from_secs(30), awc_family_a),
        (2, "AWC family B witness G2", Duration::from_secs(10), awc_g2),
        (3, "normalizer chain corpus", Duration::from_secs(60), thev_corpus),
        (4, "fiber-product character counts sweep", Duration::from_secs(60), chars_sweep),
        (5, "Alperin-McKay tower counts", Duration::from_secs(90), am_tower),
        (6, "connectivity into the torus", Duration::from_secs(30), connectivity),
        (7, "character-table property suite", Duration::from_secs(120), chartab_suite),
        (8, "little-group counts", Duration::from_secs(10), little_groups),
    ];
    let mut failures = 0;
    for (i, name, limit, f) in criteria {
        let t0 = Instant::now();
        let res = f();
        let dt = t0.elapsed();
        let (ok, detail) = match res {
            Ok((ok, d)) => (ok && dt <= limit, d),
            Err(e) => (false, e),
        };
        let slow = if dt > limit { format!(" over the {}s limit", limit.as_secs()) } else { String::new() };
        if !ok {
            failures += 1;
        }
        println!(
            "{} criterion {i}: {name} [{:.1}s{slow}] {detail}",
            if ok { "PASS" } else { "FAIL" },
            dt.as_secs_f64()
        );
    }
    println!("acceptance: {}/8 criteria pass", 8 - failures);
    if failures > 0 && std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
