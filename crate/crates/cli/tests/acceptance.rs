//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use gyrogroup::catalog::{order_27_catalog, standard_catalog};
use gyrogroup::io::{parse_table_structured, serialize_table_structured};
use gyrogroup::theorems::{check_aut_containment, check_corollary4, check_proof_identities, check_theorem2, check_theorem3};
use gyrogroup::{
    associated_gyro, build_gyrogroup, build_preset, check_gyr_formula, cubes_central, enumerate_automorphisms,
    find_isomorphism, is_central_by_2_engel, is_gyrocommutative, is_homomorphism, parse_table, serialize_table,
    verify_gyrogroup, Group, OpTable, Permutation, Preset, SearchLimits, Subject,
};

const CRITERION1_TIME_LIMIT: Duration = Duration::from_secs(60);
const CRITERION4_TIME_LIMIT: Duration = Duration::from_secs(120);
const ORACLE_MAX_ORDER: usize = 12;
const DETERMINISM_JOBS: [usize; 2] = [1, 8];
const DETERMINISM_REPEATS: usize = 2;

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn preset(s: &str) -> Group {
    build_preset(&s.parse::<Preset>().unwrap()).unwrap()
}

fn subject(s: &str) -> Subject {
    Subject::new(s, preset(s))
}

fn catalog() -> Vec<(String, Group)> {
    standard_catalog().iter().map(|p| (p.to_string(), build_preset(p).unwrap())).collect()
}

// deterministic shuffle, so relabeled copies are reproducible
fn scramble(n: usize, seed: u64) -> Permutation {
    let mut image: Vec<usize> = (0..n).collect();
    let mut state = seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    for i in (1..n).rev() {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        image.swap(i, (state >> 33) as usize % (i + 1));
    }
    Permutation::from_images(image).unwrap()
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let mut both_false = 0;
    for (name, g) in catalog() {
        let pred = is_central_by_2_engel(&g);
        let axioms = verify_gyrogroup(&associated_gyro(&g));
        ensure(pred.holds() == axioms.passed, || {
            format!("{name}: predicate {} but axioms {}", pred.holds(), axioms.passed)
        })?;
        if name.starts_with("symmetric") || name.starts_with("alternating") {
            ensure(!pred.holds() && pred.witness().is_some() && !axioms.failures.is_empty(), || {
                format!("{name}: expected a both-false case with witnesses")
            })?;
            both_false += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= CRITERION1_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("{} groups agree, {both_false} both-false with witnesses, {elapsed:.2?}", catalog().len()))
}

fn criterion2() -> Outcome {
    let mut checked = 0;
    for (name, g) in catalog() {
        if !is_central_by_2_engel(&g).holds() {
            continue;
        }
        let gyro = build_gyrogroup(&g).map_err(|e| format!("{name}: {e}"))?;
        let cubes = cubes_central(&g).holds();
        let gc = is_gyrocommutative(&gyro).holds();
        let exp = g.inner_group().exponent();
        ensure(cubes == gc, || format!("{name}: cubes central {cubes}, gyrocommutative {gc}"))?;
        ensure(cubes == (exp == 1 || exp == 3), || format!("{name}: cubes central {cubes}, exp(Inn) {exp}"))?;
        let rep = check_theorem2(&Subject::new(name.clone(), g)).map_err(|e| e.to_string())?;
        ensure(rep.agreement == Some(true), || format!("{name}: report disagrees"))?;
        checked += 1;
    }
    let h = preset("heisenberg:3");
    ensure(is_gyrocommutative(&build_gyrogroup(&h).unwrap()).holds() && !h.is_abelian(), || {
        "heisenberg:3 should be gyrocommutative and non-commutative".into()
    })?;
    for name in ["dicyclic:2", "dihedral:4", "dihedral:8"] {
        let g = preset(name);
        ensure(!is_gyrocommutative(&build_gyrogroup(&g).unwrap()).holds(), || {
            format!("{name} should not be gyrocommutative")
        })?;
    }
    Ok(format!("{checked} groups agree; heisenberg:3 gyrocommutative, Q8/D4/D8 not"))
}

fn criterion3() -> Outcome {
    let mut checked = 0;
    for (name, g) in catalog() {
        if !is_central_by_2_engel(&g).holds() {
            continue;
        }
        let gyro = build_gyrogroup(&g).map_err(|e| format!("{name}: {e}"))?;
        let r = check_gyr_formula(&g, &gyro).map_err(|e| e.to_string())?;
        ensure(r.holds(), || format!("{name}: formula fails at {:?}", r.witness()))?;
        checked += 1;
    }
    // D8: [r, s⁻¹] = r², not central, so gyr[r, s] is conjugation by r²
    let d8 = preset("dihedral:8");
    let (r, s) = (1, 8);
    let c = d8.commutator(r, d8.inv(s));
    ensure(c == 2 && !d8.is_central(c), || format!("D8: [r, s^-1] = {c}"))?;
    let gyro = build_gyrogroup(&d8).unwrap();
    ensure(!gyro.gyr(r, s).is_identity() && gyro.has_nontrivial_gyration(), || {
        "D8: expected a nontrivial gyration".into()
    })?;
    Ok(format!("{checked} groups satisfy the formula; D8 gyr[r,s] nontrivial"))
}

fn criterion4() -> Outcome {
    let start = Instant::now();
    let names = ["cyclic:8", "direct_product:4,2", "elementary_abelian:2,3", "dihedral:4", "dicyclic:2"];
    // each group together with a relabeled copy
    let mut subjects: Vec<(usize, Subject)> = Vec::new();
    for (k, name) in names.iter().enumerate() {
        let s = subject(name);
        let copy = s.group.relabel(&scramble(8, k as u64 + 1)).unwrap();
        subjects.push((k, Subject::new(format!("{name}'"), copy)));
        subjects.push((k, s));
    }
    let limits = SearchLimits::default();
    let mut found = 0;
    for (k1, s1) in &subjects {
        for (k2, s2) in &subjects {
            let (f, _) = find_isomorphism(&associated_gyro(&s1.group), &associated_gyro(&s2.group));
            ensure(f.is_some() == (k1 == k2), || {
                format!("{} vs {}: gyro isomorphism {}", s1.name, s2.name, f.is_some())
            })?;
            if let Some(f) = f {
                found += 1;
                ensure(is_homomorphism(&f, s1.group.table(), s2.group.table()).unwrap().holds(), || {
                    format!("{} vs {}: gyro isomorphism is not a group homomorphism", s1.name, s2.name)
                })?;
                let ids = check_proof_identities(&f, s1, s2).map_err(|e| e.to_string())?;
                ensure(ids.agreement == Some(true), || format!("{} vs {}: proof identities", s1.name, s2.name))?;
            }
            let rep = check_theorem3(s1, s2, &limits).map_err(|e| e.to_string())?;
            ensure(rep.agreement == Some(true), || format!("{} vs {}: theorem report disagrees", s1.name, s2.name))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= CRITERION4_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("{} ordered pairs, {found} gyro isomorphisms all on the diagonal, {elapsed:.2?}", subjects.len().pow(2)))
}

fn aut_set(t: &OpTable) -> BTreeSet<Vec<usize>> {
    enumerate_automorphisms(t).0.iter().map(|m| m.images().to_vec()).collect()
}

fn criterion5() -> Outcome {
    let limits = SearchLimits::default();
    for name in ["elementary_abelian:2,3", "dihedral:4", "dicyclic:2", "dihedral:8"] {
        let g = preset(name);
        let a = aut_set(g.table());
        let b = aut_set(&associated_gyro(&g));
        ensure(a == b, || format!("{name}: |Aut(G)| = {}, |Aut(gyro)| = {}", a.len(), b.len()))?;
        let rep = check_corollary4(&Subject::new(name, g), &limits).map_err(|e| e.to_string())?;
        ensure(rep.agreement == Some(true), || format!("{name}: report disagrees"))?;
    }
    let q8 = preset("dicyclic:2");
    let brute = oracle::isomorphisms_unpruned(q8.table(), q8.table());
    let found = aut_set(q8.table());
    ensure(brute.len() == 24 && found.len() == 24, || {
        format!("|Aut(Q8)|: search {}, enumeration {}", found.len(), brute.len())
    })?;
    ensure(brute.into_iter().collect::<BTreeSet<_>>() == found, || "Aut(Q8) sets differ".into())?;

    let h = preset("heisenberg:3");
    let (a, b) = (aut_set(h.table()), aut_set(&associated_gyro(&h)));
    ensure(a.is_subset(&b), || "heisenberg:3: group automorphism not a gyro automorphism".into())?;
    let rep = check_aut_containment(&Subject::new("heisenberg:3", h), &limits).map_err(|e| e.to_string())?;
    ensure(rep.agreement == Some(true), || "heisenberg:3: containment report disagrees".into())?;
    Ok(format!("equal on Z2^3, D4, Q8, D8; |Aut(Q8)| = 24; heisenberg:3 {} ⊆ {}", a.len(), b.len()))
}

fn criterion6() -> Outcome {
    let mut tables: Vec<(String, OpTable)> = Vec::new();
    for (name, g) in catalog() {
        if g.order() <= ORACLE_MAX_ORDER {
            tables.push((format!("gyro({name})"), associated_gyro(&g)));
            tables.push((name, g.into_table()));
        }
    }
    let all = |a: &OpTable, b: &OpTable| {
        if a.size() <= 8 {
            oracle::isomorphisms_unpruned(a, b)
        } else {
            oracle::isomorphisms(a, b)
        }
    };
    let mut pairs = 0;
    for (i, (n1, t1)) in tables.iter().enumerate() {
        let auts: Vec<Vec<usize>> = enumerate_automorphisms(t1).0.iter().map(|m| m.images().to_vec()).collect();
        ensure(auts == all(t1, t1), || format!("{n1}: automorphism lists differ"))?;

        let copy = t1.relabel(&scramble(t1.size(), 7)).unwrap();
        let mut others: Vec<(&str, &OpTable)> = vec![("relabeled copy", &copy)];
        others.extend(tables[i + 1..].iter().filter(|(_, t)| t.size() == t1.size()).map(|(n, t)| (n.as_str(), t)));
        for (n2, t2) in others {
            let expected = all(t1, t2).into_iter().next();
            let got = find_isomorphism(t1, t2).0.map(|m| m.images().to_vec());
            ensure(got == expected, || format!("{n1} vs {n2}: search {got:?}, oracle {expected:?}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{} tables, {pairs} pairs agree with exhaustive enumeration", tables.len()))
}

fn criterion7() -> Outcome {
    let mut count = 0;
    for p in standard_catalog().iter().chain(order_27_catalog().iter()) {
        let g = build_preset(p).unwrap();
        let rep = verify_gyrogroup(g.table());
        ensure(rep.passed && rep.nontrivial_gyrations == Some(0), || {
            format!("{p}: passed {}, nontrivial gyrations {:?}", rep.passed, rep.nontrivial_gyrations)
        })?;
        count += 1;
    }
    Ok(format!("{count} group tables are gyrogroups with trivial gyrations"))
}

fn run_screen(args: &[&str]) -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_gyro"))
        .arg("screen")
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code().unwrap_or(-1)))
}

fn criterion8() -> Outcome {
    let mut tables = 0;
    for (name, g) in catalog() {
        for t in [g.table().clone(), associated_gyro(&g), g.table().clone().without_names()] {
            ensure(parse_table(&serialize_table(&t)).as_ref() == Ok(&t), || format!("{name}: text round trip"))?;
            ensure(parse_table_structured(&serialize_table_structured(&t)).as_ref() == Ok(&t), || {
                format!("{name}: structured round trip")
            })?;
            tables += 1;
        }
    }
    let mut outputs = Vec::new();
    for jobs in DETERMINISM_JOBS {
        for _ in 0..DETERMINISM_REPEATS {
            let jobs = jobs.to_string();
            let (out, code) = run_screen(&["--builtin", "--format", "structured", "--jobs", &jobs])?;
            ensure(code == 0, || format!("screen --jobs {jobs} exited {code}"))?;
            outputs.push(out);
        }
    }
    ensure(outputs.windows(2).all(|w| w[0] == w[1]), || "screen output differs between runs".into())?;
    Ok(format!("{tables} tables round-trip; {} screen runs byte-identical ({} bytes)", outputs.len(), outputs[0].len()))
}

fn criterion9() -> Outcome {
    let list: Vec<String> = order_27_catalog().iter().map(ToString::to_string).collect();
    let (out, code) = run_screen(&["--presets", &list.join(","), "--format", "structured"])?;
    ensure(code == 0, || format!("exit code {code}"))?;
    let text = String::from_utf8(out).map_err(|e| e.to_string())?;
    let mut found = Vec::new();
    let mut reports = 0;
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).map_err(|e| e.to_string())?;
        if v["theorem"] == "exploration" {
            reports += 1;
            if v["brute_force"] == true {
                found.push(format!("{} ~ {}", v["subjects"][0].as_str().unwrap(), v["subjects"][1].as_str().unwrap()));
            }
        }
    }
    ensure(reports == 6, || format!("expected 6 pairwise reports, got {reports}"))?;
    Ok(format!("{reports} pairwise reports; gyro-isomorphic pairs: [{}]", found.join(", ")))
}

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("1 central-by-2-Engel iff gyrogroup", criterion1),
        ("2 cubes central iff gyrocommutative", criterion2),
        ("3 gyration formula", criterion3),
        ("4 isomorphism transfer, order 8", criterion4),
        ("5 automorphism sets", criterion5),
        ("6 search vs exhaustive oracle", criterion6),
        ("7 groups as gyrogroups", criterion7),
        ("8 round trip and determinism", criterion8),
        ("9 order-27 exploration", criterion9),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(msg) => println!("PASS  criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name}: {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
