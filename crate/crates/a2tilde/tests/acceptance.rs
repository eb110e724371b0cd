//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

use a2tilde::apartment::{Shape, T1, T2};
use a2tilde::building::build_ball;
use a2tilde::building::counts::{regular_shapes, sphere_constancy, y_laws, z_laws};
use a2tilde::building::sectors::ShapeMap;
use a2tilde::diffset::plane_from_difference_set;
use a2tilde::diffset::singer_difference_set;
use a2tilde::group::{abelianization, perfect_check, SubgroupSpec, DEFAULT_MAX_COSETS};
use a2tilde::measure::{
    disintegration_check, is_probability, m_mass_of_fx, measure_constants, refinement_check, rn_check, visual_table,
};
use a2tilde::plane::perm::tuple_orbit_size;
use a2tilde::plane::{
    check_axioms, find_isomorphism, nontriv_configurations, nontriv_fixed_point_check, pg2_of_order, projectivity_group,
    transitivity_report, Vertex,
};
use a2tilde::presentation::{essert_presentation, gamma0};
use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_a2tilde")).args(args).output().expect("run binary");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf8"))
}

fn cli_json(args: &[&str]) -> (i32, Value) {
    let (code, text) = cli(args);
    (code, serde_json::from_str(&text).unwrap_or(Value::Null))
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("a2tilde-acceptance-{}-{name}", std::process::id()))
}

type Outcome = Result<String, String>;

/// Writes past the test harness capture, so the verdicts show in plain `cargo test` output.
fn say(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn singer_sets() -> Outcome {
    let mut sizes = Vec::new();
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let (code, v) = cli_json(&["diffset", "singer", "--q", &q.to_string()]);
        ensure(code == 0 && v["record"]["verified"] == true, format!("q={q}: exit {code}, not verified"))?;
        let n = v["record"]["n"].as_u64().unwrap();
        let set: Vec<u64> = v["record"]["D"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
        ensure(n == q * q + q + 1 && set.len() as u64 == q + 1, format!("q={q}: wrong size"))?;
        // every nonzero residue exactly once
        let mut reps = vec![0; n as usize];
        for &a in &set {
            for &b in &set {
                if a != b {
                    reps[((a + n - b) % n) as usize] += 1;
                }
            }
        }
        ensure(reps[1..].iter().all(|&c| c == 1), format!("q={q}: uniqueness fails"))?;
        if q == 2 {
            ensure(v["normalized"] == serde_json::json!([0, 1, 3]), "q=2 does not normalize to {0,1,3}")?;
        }
        sizes.push(n);
    }
    Ok(format!("n = {sizes:?}, q=2 normalizes to {{0,1,3}}"))
}

fn nesting() -> Outcome {
    for e in [1, 2, 4, 5] {
        let (code, v) = cli_json(&["diffset", "embed", "--q0", "2", "--e", &e.to_string()]);
        ensure(code == 0 && v["scaled_inclusion"] == true, format!("e={e}: exit {code}"))?;
        let pair = &v["pair"];
        let (n0, n, scale) = (pair["base"]["n"].as_u64().unwrap(), pair["big"]["n"].as_u64().unwrap(), pair["scale"].as_u64().unwrap());
        ensure(n0 * scale == n, format!("e={e}: n0 * scale != n"))?;
        let big: Vec<u64> = pair["big"]["D"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
        for d in pair["base"]["D"].as_array().unwrap() {
            ensure(big.contains(&(d.as_u64().unwrap() * scale % n)), format!("e={e}: inclusion"))?;
        }
    }
    let (code, _) = cli(&["diffset", "embed", "--q0", "2", "--e", "3"]);
    ensure(code == 2, format!("e=3 exit code {code}"))?;
    Ok("e in {1,2,4,5} nest with scaled inclusion, e=3 rejected".into())
}

fn planes() -> Outcome {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let plane = plane_from_difference_set(&singer_difference_set(q).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(check_axioms(&plane).pass, format!("q={q}: axioms fail"))?;
        ensure(plane.num_points as u64 == q * q + q + 1, format!("q={q}: point count"))?;
        if q <= 4 {
            let pg = pg2_of_order(q as u32).map_err(|e| e.to_string())?;
            ensure(find_isomorphism(&plane, &pg).is_some(), format!("q={q}: no isomorphism to PG(2,q)"))?;
        }
    }
    Ok("axioms hold for q <= 9, isomorphic to PG(2,q) for q = 2, 3, 4".into())
}

fn projectivities() -> Outcome {
    let mut orders = Vec::new();
    for (q, degree, order) in [(2, 3, 6), (3, 4, 24), (4, 5, 60)] {
        let plane = pg2_of_order(q).map_err(|e| e.to_string())?;
        for v in [Vertex::Point(0), Vertex::Line(0)] {
            let g = projectivity_group(&plane, v).map_err(|e| e.to_string())?;
            let rep = transitivity_report(&g);
            ensure(g.degree == degree && g.order == order, format!("q={q} {v}: degree {} order {}", g.degree, g.order))?;
            let triples = degree * (degree - 1) * (degree - 2);
            ensure(tuple_orbit_size(&g.elements, 3) == triples, format!("q={q} {v}: not 3-transitive"))?;
            ensure(rep.sharply_3_transitive, format!("q={q} {v}: not sharply 3-transitive"))?;
        }
        orders.push(order);
    }
    Ok(format!("orders {orders:?} on degrees [3, 4, 5], sharply 3-transitive"))
}

fn closed_chains() -> Outcome {
    let mut total = 0;
    for q in [2, 3] {
        let plane = pg2_of_order(q).map_err(|e| e.to_string())?;
        for cfg in nontriv_configurations(&plane) {
            let r = nontriv_fixed_point_check(&plane, &cfg).map_err(|e| e.to_string())?;
            ensure(r.fixed == vec![cfg.c0], format!("q={q}: fixed set {:?} for {cfg:?}", r.fixed))?;
            total += 1;
        }
    }
    Ok(format!("{total} configurations, fixed set always {{C0}}"))
}

fn abelianization_and_perfect() -> Outcome {
    let p = essert_presentation(&gamma0());
    let ab = abelianization(&p);
    ensure(ab.to_string() == "Z/7", format!("abelianization {ab}"))?;
    let rep = perfect_check(&p, &SubgroupSpec::Derived, DEFAULT_MAX_COSETS).map_err(|e| e.to_string())?;
    ensure(rep.index == 7 && rep.enumerated_index == 7, format!("index {}", rep.index))?;
    ensure(rep.perfect && rep.abelianization_dfs.is_trivial(), "derived subgroup not perfect")?;
    Ok(format!("Z/7, derived subgroup of index 7 with {} Schreier generators is perfect", rep.schreier_generators))
}

fn exotic() -> Outcome {
    for q in [4, 16] {
        let (code, v) = cli_json(&["lattice", "exotic", "--q", &q.to_string()]);
        let cert = &v["certificate"];
        ensure(code == 0 && cert["valid"] == true, format!("q={q}: exit {code}"))?;
        let conds = cert["conditions"].as_array().unwrap();
        ensure(conds.len() == 3 && conds.iter().all(|c| c["pass"] == true), format!("q={q}: a condition fails"))?;
        ensure(cert["witness"]["finite"] == false, format!("q={q}: witness not infinite"))?;
    }
    let (code, _) = cli(&["lattice", "exotic", "--q", "8"]);
    ensure(code == 2, format!("q=8 exit code {code}"))?;
    Ok("q = 4, 16 certified with infinite-order witness, q = 8 rejected".into())
}

fn building_counts() -> Outcome {
    let b = build_ball(2, 3).map_err(|e| e.to_string())?;
    let o = b.origin();
    let mut basepoints = vec![o];
    for t in [1, 2] {
        basepoints.extend(b.neighbors(o).iter().copied().find(|&v| b.vertex_type(v) == t));
    }
    let n = sphere_constancy(&b, &basepoints).map_err(|e| e.to_string())?;
    let used: std::collections::BTreeSet<u32> = n.rows.iter().map(|r| r.basepoint).collect();
    ensure(n.pass && used.len() >= 3, format!("sphere constancy {} over {} basepoints", n.pass, used.len()))?;
    let shapes = regular_shapes(6);
    let ys: Vec<Shape> = shapes.iter().copied().filter(|s| s.length() <= 4).collect();
    let y = y_laws(b.ring, &ys);
    ensure(y.identity_is_one && y.laws_hold && y.pass, "Y laws fail")?;
    let zs: Vec<Shape> = shapes.into_iter().filter(|s| s.i.max(s.j) + s.length() <= 6).collect();
    let z = z_laws(&b, o, &zs).map_err(|e| e.to_string())?;
    ensure(z.pass, "Z laws fail")?;
    Ok(format!(
        "K = {} on {} spheres, Y on {} shapes, K+ = {}, K- = {} on {} shapes",
        n.k,
        n.rows.len(),
        y.rows.len(),
        z.k_plus,
        z.k_minus,
        z.rows.len()
    ))
}

fn measures() -> Outcome {
    let b = build_ball(2, 3).map_err(|e| e.to_string())?;
    let o = b.origin();
    let sm = ShapeMap::new(&b, o);
    let e = |x: a2tilde::Error| x.to_string();
    for s in regular_shapes(6).into_iter().filter(|s| s.i <= 3 && s.j <= 3) {
        ensure(is_probability(&visual_table(&b, &sm, s).map_err(e)?), format!("{s}: total != 1"))?;
    }
    for s in [Shape::new(1, 1), Shape::new(2, 1), Shape::new(1, 2), Shape::new(2, 2)] {
        for d in [T1, T2] {
            ensure(refinement_check(&b, &sm, s, d).map_err(e)?.consistent, format!("refinement {s} by {d}"))?;
        }
    }
    let mut shared = 0;
    for t in [1, 2] {
        let y = b.neighbors(o).iter().copied().find(|&v| b.vertex_type(v) == t).unwrap();
        let rn = rn_check(&b, o, y, Shape::new(3, 3)).map_err(e)?;
        ensure(rn.pass && rn.matches == rn.shared && rn.shared > 0, format!("rn to {y}: {}/{}", rn.matches, rn.shared))?;
        shared += rn.shared;
    }
    let m = m_mass_of_fx(&b, o, Shape::new(2, 2), 1).map_err(e)?;
    ensure(m.equal && m.beta_zero == m.beta_evaluated && m.beta_evaluated as u64 == m.pairs as u64, "finite mass")?;
    let c = measure_constants(&b, &sm).map_err(e)?;
    for s in [Shape::new(1, 1), Shape::new(2, 1)] {
        let d = disintegration_check(&b, o, s, Some(c.clone())).map_err(e)?;
        ensure(d.pass && d.identity_holds == d.cells, format!("disintegration at {s}"))?;
    }
    Ok(format!(
        "tables sum to 1, refinement exact, ratio q^(-2l(h)) on {shared} shared cells, beta = 0 on {} pairs with mass {}, disintegration with K' = {}",
        m.pairs, m.product, c.k_prime
    ))
}

fn determinism() -> Outcome {
    let plane_file = tmp("plane.json");
    let gap_file = tmp("gamma0.g");
    let pf = plane_file.to_str().unwrap();
    let gf = gap_file.to_str().unwrap();
    ensure(cli(&["plane", "gen", "--q", "3", "--full", "--out", pf]).0 == 0, "plane gen --out")?;
    std::fs::write(&gap_file, essert_presentation(&gamma0()).to_gap()).map_err(|e| e.to_string())?;
    let runs: Vec<Vec<&str>> = vec![
        vec!["plane", "gen", "--q", "4"],
        vec!["plane", "check", "--input", pf],
        vec!["diffset", "singer", "--q", "9"],
        vec!["diffset", "check", "--n", "7", "--set", "0,1,2"],
        vec!["diffset", "embed", "--q0", "2", "--e", "4"],
        vec!["diffset", "plane", "--q", "4"],
        vec!["proj", "group", "--q", "4"],
        vec!["proj", "classify", "--q", "3"],
        vec!["proj", "nontriv", "--q", "2"],
        vec!["lattice", "present"],
        vec!["lattice", "torsion", "--d", "1"],
        vec!["lattice", "morphism", "--q", "4"],
        vec!["lattice", "abelianize", "--input", gf],
        vec!["lattice", "perfect"],
        vec!["lattice", "exotic", "--q", "16"],
        vec!["building", "ball", "--r", "2"],
        vec!["building", "sphere", "--r", "2", "--shape", "2,1"],
        vec!["building", "counts", "--r", "3"],
        vec!["measure", "table", "--r", "3", "--shape", "2,2"],
        vec!["measure", "rn", "--r", "3", "--shape", "3,3"],
        vec!["measure", "beta", "--r", "3", "--shape", "3,3", "--stride", "997"],
        vec!["measure", "mfx", "--r", "3", "--shape", "2,2"],
        vec!["measure", "pm", "--r", "3", "--shape", "2,1"],
        vec!["measure", "disint", "--r", "3"],
    ];
    for args in &runs {
        let (c1, a) = cli(args);
        let (c2, b) = cli(args);
        ensure(c1 == c2 && a == b && !a.is_empty(), format!("`{}` differs between runs", args.join(" ")))?;
        ensure(serde_json::from_str::<Value>(&a).is_ok(), format!("`{}` is not JSON", args.join(" ")))?;
    }
    let _ = std::fs::remove_file(&plane_file);
    let _ = std::fs::remove_file(&gap_file);
    Ok(format!("{} invocations byte-identical across two runs", runs.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Singer difference sets", singer_sets),
        ("nested difference sets", nesting),
        ("difference-set planes", planes),
        ("projectivity groups", projectivities),
        ("closed chains fix only C0", closed_chains),
        ("abelianization and perfect derived subgroup", abelianization_and_perfect),
        ("exotic lattice certificates", exotic),
        ("building counts", building_counts),
        ("boundary measures", measures),
        ("CLI determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = f();
        let secs = start.elapsed().as_secs_f64();
        match &r {
            Ok(msg) => say(&format!("criterion {:>2} PASS [{secs:.1}s] {name}: {msg}", i + 1)),
            Err(msg) => {
                say(&format!("criterion {:>2} FAIL [{secs:.1}s] {name}: {msg}", i + 1));
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
