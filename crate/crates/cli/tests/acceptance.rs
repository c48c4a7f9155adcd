//! Acceptance suite: one line per criterion, with pinned inputs, seeds and budgets.
//!
//! Runs without the libtest harness so the lines always show up in `cargo test`.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use troploc_cli::commands::{self, Mode};
use troploc_cli::dto::{JsonInt, Output};
use troploc_core::arc::{arc_weight, PuiseuxOptions};
use troploc_core::fan::validate_fan;
use troploc_core::splice::SpliceDiagram;
use troploc_core::troploc::{
    check_structure, extended_cone, supports_agree, troploc_divisor, troploc_plane_curve, troploc_toric_germ,
    Tropicalization,
};
use troploc_core::{Cone, Fan, LatticeVector, Role, Series};

const SEED: u64 = 0x7209_2024;
const BOX: i64 = 12;
const PUISEUX_DEPTH: usize = 10;
const MIN_RESIDUAL_ORDER: usize = 10;
const FLOAT_TOL: f64 = 1e-10;
const FLOAT_RESIDUAL_MAX: f64 = 1e-8;

struct Outcome {
    passed: bool,
    detail: String,
    /// Set when part of the criterion cannot hold; the reason is printed and
    /// the attainable parts are still required to pass.
    unattainable: Option<String>,
}

impl Outcome {
    fn from_checks(checks: Vec<(bool, String)>) -> Outcome {
        let failed: Vec<&String> = checks.iter().filter(|c| !c.0).map(|c| &c.1).collect();
        Outcome {
            passed: failed.is_empty(),
            detail: if failed.is_empty() {
                checks.iter().map(|c| c.1.as_str()).collect::<Vec<_>>().join("; ")
            } else {
                format!("failed: {}", failed.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("; "))
            },
            unattainable: None,
        }
    }
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn troploc(args: &[&str]) -> (i32, Output) {
    let out = Command::new(env!("CARGO_BIN_EXE_troploc"))
        .args(args)
        .env_remove("TROPLOC_BOX")
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout).expect("utf-8");
    let parsed = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"));
    (out.status.code().unwrap_or(-1), parsed)
}

/// Exit status only, for commands writing to a file.
fn troploc_status(args: &[&str]) -> i32 {
    let s = Command::new(env!("CARGO_BIN_EXE_troploc")).args(args).status().expect("binary runs");
    s.code().unwrap_or(-1)
}

fn v(c: &[i64]) -> Vec<JsonInt> {
    c.iter().map(|&x| JsonInt(x.into())).collect()
}

fn w(c: &[i64]) -> LatticeVector {
    LatticeVector::weight(c.iter().copied())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Independent initial-weight oracle: at least two terms attain the minimum of `<w, m>`.
fn oracle_initial(f: &Series, w: &[i64]) -> bool {
    let values: Vec<i64> = f
        .terms()
        .keys()
        .map(|m| m.coords().iter().zip(w).map(|(a, b)| i64::try_from(a).unwrap() * b).sum())
        .collect();
    let min = *values.iter().min().unwrap();
    values.iter().filter(|&&x| x == min).count() >= 2
}

fn random_interior_series(rng: &mut ChaCha8Rng, n: usize) -> Series {
    let sigma = Cone::orthant(n, Role::Weight).unwrap();
    loop {
        let k = rng.gen_range(2..=6);
        let terms: Vec<(LatticeVector, BigRational)> = (0..k)
            .map(|_| {
                let e: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=8)).collect();
                let c = [-3i64, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
                (LatticeVector::exponent(e), BigRational::from_integer(c.into()))
            })
            .collect();
        let Ok(f) = Series::new(&sigma, terms) else { continue };
        let unit = f.terms().keys().any(|m| m.is_zero());
        if !f.is_empty() && !unit && f.is_interior_divisor().unwrap() {
            return f;
        }
    }
}

/// Products of distinct factors whose edge equations have rational roots.
fn random_plane_series(rng: &mut ChaCha8Rng) -> Series {
    loop {
        let k = rng.gen_range(1..=3);
        let mut factors: Vec<Series> = Vec::new();
        for _ in 0..k {
            let f = if rng.gen_bool(0.5) {
                let c1 = rng.gen_range(1..=3i64);
                let b1 = rng.gen_range(1..=4i64);
                let c2 = rng.gen_range(-3..=3i64);
                let db = rng.gen_range(1..=3i64);
                Series::over_orthant(2, &[(&[0, 1], 1), (&[b1, 0], -c1), (&[b1 + db, 0], -c2)]).unwrap()
            } else {
                let a = rng.gen_range(2..=3i64);
                let b = rng.gen_range(1..=5i64);
                if gcd(a, b) != 1 {
                    continue;
                }
                let r = rng.gen_range(1..=2i64);
                Series::over_orthant(2, &[(&[0, a], 1), (&[b, 0], -r.pow(a as u32))]).unwrap()
            };
            if !factors.contains(&f) {
                factors.push(f);
            }
        }
        if factors.is_empty() {
            continue;
        }
        let mut p = factors[0].clone();
        for f in &factors[1..] {
            p = p.multiply(f).unwrap();
        }
        return p;
    }
}

fn pham_brieskorn(a: i64, b: i64, c: i64) -> Series {
    Series::over_orthant(3, &[(&[a, 0, 0], 1), (&[0, b, 0], 1), (&[0, 0, c], 1)]).unwrap()
}

const TRIPLES: [(i64, i64, i64); 5] = [(2, 3, 5), (2, 3, 7), (2, 5, 7), (3, 4, 5), (2, 3, 11)];

fn criterion_1() -> Outcome {
    let cusp = data("cusp.series.json");
    let cusp = cusp.to_str().unwrap();
    let mut checks = Vec::new();
    let (code, out) = troploc(&["plane-curve", cusp]);
    let rays = match out {
        Output::PlaneCurve(p) => p.rays,
        _ => Vec::new(),
    };
    checks.push((code == 0 && rays == vec![v(&[2, 3])], format!("plane-curve rays {:?}", fmt_rays(&rays))));
    let (code, out) = troploc(&["polyhedron", cusp]);
    let Output::Polyhedron(p) = out else {
        return Outcome::from_checks(vec![(false, "polyhedron output kind".into())]);
    };
    let verts: BTreeSet<Vec<JsonInt>> = p.vertices.iter().cloned().collect();
    let expected: BTreeSet<Vec<JsonInt>> = [v(&[0, 2]), v(&[3, 0])].into_iter().collect();
    checks.push((code == 0 && verts == expected, format!("vertices {:?}", fmt_rays(&p.vertices))));
    let edges: Vec<_> = p.compact_faces.iter().filter(|f| f.dim == 1).collect();
    checks.push((edges.len() == 1, format!("{} compact edge", edges.len())));
    let mut out = Outcome::from_checks(checks);
    // Compare the pairing of (2,1) with the edge normal against the edge's level.
    if let Some(e) = edges.first() {
        let normal = &e.normal_cone.rays[0];
        let pair = |m: &[JsonInt]| -> BigInt { normal.iter().zip(m).map(|(a, b)| &a.0 * &b.0).sum() };
        let level = pair(&e.vertices[0]);
        let at = pair(&v(&[2, 1]));
        if at != level {
            out.unattainable = Some(format!(
                "(2,1) on the compact edge: <{}, (2,1)> = {at} but the edge lies at level {level}, so (2,1) is off the edge",
                fmt_rays(std::slice::from_ref(normal))[0]
            ));
        }
    }
    out
}

fn fmt_rays(r: &[Vec<JsonInt>]) -> Vec<String> {
    r.iter()
        .map(|x| format!("({})", x.iter().map(|c| c.0.to_string()).collect::<Vec<_>>().join(",")))
        .collect()
}

fn criterion_2() -> Outcome {
    let mut checks = Vec::new();
    for (a, b, c) in TRIPLES {
        let t = troploc_divisor(&pham_brieskorn(a, b, c)).unwrap();
        let (p, q, r) = (b * c, c * a, a * b);
        let g = gcd(gcd(p, q), r);
        let centre = w(&[p / g, q / g, r / g]);
        let expected: BTreeSet<Cone> = (0..3)
            .map(|i| Cone::from_generators(3, Role::Weight, &[centre.clone(), LatticeVector::unit(Role::Weight, 3, i)]).unwrap())
            .collect();
        let got: BTreeSet<Cone> = t.maximal_cones().into_iter().cloned().collect();
        let splice = SpliceDiagram::one_node(a as u64, b as u64, c as u64)
            .unwrap()
            .splice_tropicalization()
            .unwrap();
        let mutual = t.fan.witnesses().iter().all(|x| splice.fan.support_contains_lattice(x).unwrap())
            && splice.fan.witnesses().iter().all(|x| t.fan.support_contains_lattice(x).unwrap());
        let agree = supports_agree(&t.fan, &splice.fan).unwrap();
        checks.push((
            got == expected && mutual && agree,
            format!("({a},{b},{c}): 3 cones around {centre}"),
        ));
    }
    Outcome::from_checks(checks)
}

fn criterion_3() -> Outcome {
    let two_node = data("two_node.splice.json");
    let two_node = two_node.to_str().unwrap();
    let coefs = data("two_node.coefficients.json");
    let mut checks = Vec::new();
    let (code, out) = troploc(&["splice", "validate", two_node]);
    if let Output::SpliceReport(r) = out {
        let d: Vec<_> = r.nodes.iter().map(|n| (n.name.clone(), n.d.clone(), n.weight_vector.clone())).collect();
        let e = &r.edge_determinant[0];
        checks.push((
            code == 0 && r.passed && r.coprime.iter().all(|c| c.ok) && r.semigroup.iter().all(|s| s.ok),
            "coprime, semigroup".into(),
        ));
        checks.push((
            d == vec![
                ("u".into(), JsonInt(42.into()), v(&[21, 14, 12, 30])),
                ("v".into(), JsonInt(110.into()), v(&[30, 20, 22, 55])),
            ],
            "d_u = 42, d_v = 110, w_u = (21,14,12,30), w_v = (30,20,22,55)".into(),
        ));
        checks.push((
            e.ok && e.linking == JsonInt(60.into()) && e.product == JsonInt(4620.into()),
            "edge determinant 4620 > 3600".into(),
        ));
    } else {
        checks.push((false, "splice-report output".into()));
    }
    let (code, out) = troploc(&["splice", "system", two_node, "--coefficients", coefs.to_str().unwrap()]);
    let expected = [
        Series::over_orthant(4, &[(&[2, 0, 0, 0], 1), (&[0, 3, 0, 0], -1), (&[0, 0, 1, 1], 1)]).unwrap(),
        Series::over_orthant(4, &[(&[0, 0, 5, 0], 1), (&[0, 0, 0, 2], -1), (&[1, 4, 0, 0], 1)]).unwrap(),
    ];
    let got: Vec<Series> = match out {
        Output::SpliceSystem(s) => s.equations.iter().map(|e| e.series.to_series().unwrap()).collect(),
        _ => Vec::new(),
    };
    checks.push((code == 0 && got == expected, "system x1^2 - x2^3 + x3*x4, x3^5 - x4^2 + x1*x2^4".into()));
    let (code, out) = troploc(&["splice", "crosscheck", two_node]);
    let n = match out {
        Output::SpliceCrosscheck(c) if c.passed => c.witnesses.iter().filter(|w| w.initial).count(),
        _ => 0,
    };
    checks.push((code == 0 && n == 5, format!("crosscheck {n}/5 witnesses")));
    Outcome::from_checks(checks)
}

fn criterion_4(rng: &mut ChaCha8Rng) -> Outcome {
    let mut points = 0usize;
    let mut bad = Vec::new();
    for k in 0..50 {
        let n = if k % 2 == 0 { 2 } else { 3 };
        let f = random_interior_series(rng, n);
        let t = troploc_divisor(&f).unwrap();
        let mut cur = vec![1i64; n];
        loop {
            points += 1;
            let inside = t.fan.support_contains_lattice(&w(&cur)).unwrap();
            if inside != oracle_initial(&f, &cur) {
                bad.push(format!("{f} at {cur:?}"));
            }
            let mut i = 0;
            while i < n && cur[i] == BOX {
                cur[i] = 1;
                i += 1;
            }
            if i == n {
                break;
            }
            cur[i] += 1;
        }
    }
    Outcome::from_checks(vec![(
        bad.is_empty(),
        format!("50 series, {points} weights in the box, {} mismatches {:?}", bad.len(), bad.iter().take(3).collect::<Vec<_>>()),
    )])
}

fn plane_curve_check(f: &Series, mode: Mode) -> Result<(), String> {
    let mut opts = PuiseuxOptions::new(PUISEUX_DEPTH);
    opts.tol = FLOAT_TOL;
    let rays = troploc_plane_curve(f).map_err(|e| e.to_string())?;
    let Output::Puiseux(out) = commands::puiseux(f, &opts, mode).map_err(|e| e.to_string())? else {
        return Err("wrong output kind".into());
    };
    let mut hit = vec![false; rays.len()];
    for a in &out.arcs {
        let weight = LatticeVector::weight(a.weight.iter().map(|x| x.0.clone()));
        let p = weight.primitive().map_err(|e| e.to_string())?;
        let i = rays.iter().position(|r| r == &p).ok_or(format!("{f}: weight {p} is not a ray"))?;
        hit[i] = true;
        let r = &a.residual;
        let order = r.order.unwrap_or(r.valid_below);
        if r.valid_below < MIN_RESIDUAL_ORDER || order < MIN_RESIDUAL_ORDER {
            return Err(format!("{f}: residual order {order} (valid below {})", r.valid_below));
        }
        if mode == Mode::Float && r.max_magnitude >= FLOAT_RESIDUAL_MAX {
            return Err(format!("{f}: residual magnitude {:e}", r.max_magnitude));
        }
        // The arc file parses back to an arc with the same weight.
        let parsed = match a.arc.parse().map_err(|e| e.to_string())? {
            troploc_cli::dto::ParsedArc::Exact(x) => arc_weight(&x),
            troploc_cli::dto::ParsedArc::Float(x) => arc_weight(&x),
        };
        if parsed.as_ref() != Ok(&weight) {
            return Err(format!("{f}: arc file round trip"));
        }
    }
    if hit.iter().all(|h| *h) {
        Ok(())
    } else {
        Err(format!("{f}: some ray of {rays:?} has no arc"))
    }
}

fn criterion_5(curves: &[Series]) -> Outcome {
    let mut checks = Vec::new();
    for mode in [Mode::Exact, Mode::Float] {
        let errors: Vec<String> = curves.iter().filter_map(|f| plane_curve_check(f, mode).err()).collect();
        checks.push((
            errors.is_empty(),
            match errors.first() {
                None => format!("{mode:?} mode: {n}/{n} curves", n = curves.len()),
                Some(e) => format!("{mode:?} mode: {}/{} curves, first failure {e}", curves.len() - errors.len(), curves.len()),
            },
        ));
    }
    Outcome::from_checks(checks)
}

fn criterion_6(rng: &mut ChaCha8Rng) -> Outcome {
    let mut bad = 0;
    for k in 0..200 {
        let n = if k % 2 == 0 { 2 } else { 3 };
        let f = random_interior_series(rng, n);
        let g = random_interior_series(rng, n);
        let prod = f.multiply(&g).unwrap().newton_polyhedron().unwrap();
        let (pf, pg) = (f.newton_polyhedron().unwrap(), g.newton_polyhedron().unwrap());
        let sum = pf.minkowski_sum(&pg).unwrap();
        let a: BTreeSet<_> = prod.vertices().iter().cloned().collect();
        let b: BTreeSet<_> = sum.vertices().iter().cloned().collect();
        // Every vertex of a Minkowski sum is a sum of vertices of the summands.
        let sums: BTreeSet<_> = pf
            .vertices()
            .iter()
            .flat_map(|x| pg.vertices().iter().map(move |y| x.add(y).unwrap()))
            .collect();
        if a != b || !a.is_subset(&sums) {
            bad += 1;
        }
    }
    Outcome::from_checks(vec![(bad == 0, format!("200 pairs, {bad} vertex-set mismatches"))])
}

fn criterion_7(curves: &[Series]) -> Outcome {
    let mut checks = Vec::new();
    let run = |t: &Tropicalization, dim: usize, seed: u64| check_structure(t, dim, seed).map(|r| r.passed()).unwrap_or(false);
    let plane = curves
        .iter()
        .enumerate()
        .filter(|(i, f)| !run(&troploc_divisor(f).unwrap(), 1, SEED + *i as u64))
        .count();
    checks.push((plane == 0, format!("dim 1 on {} plane curves ({plane} failures)", curves.len())));
    let mut surfaces = Vec::new();
    for (a, b, c) in TRIPLES {
        surfaces.push(troploc_divisor(&pham_brieskorn(a, b, c)).unwrap());
        surfaces.push(SpliceDiagram::one_node(a as u64, b as u64, c as u64).unwrap().splice_tropicalization().unwrap());
    }
    let two_node: troploc_cli::dto::SpliceFile =
        serde_json::from_str(&std::fs::read_to_string(data("two_node.splice.json")).unwrap()).unwrap();
    surfaces.push(two_node.to_diagram().unwrap().splice_tropicalization().unwrap());
    let failed = surfaces.iter().enumerate().filter(|(i, t)| !run(t, 2, SEED + *i as u64)).count();
    checks.push((failed == 0, format!("dim 2 on {} surface tropicalizations ({failed} failures)", surfaces.len())));
    // The command-line path on one of them.
    let dir = std::env::temp_dir().join(format!("troploc-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let trop = dir.join("two_node.trop.json");
    let code = troploc_status(&["splice", "trop", data("two_node.splice.json").to_str().unwrap(), "-o", trop.to_str().unwrap()]);
    let (code2, out) = troploc(&["check-structure", trop.to_str().unwrap(), "--dim", "2", "--seed", "7"]);
    let cli_ok = code == 0 && code2 == 0 && matches!(out, Output::StructureReport(ref r) if r.passed);
    checks.push((cli_ok, "check-structure --dim 2 on the splice tropicalization file".into()));
    let _ = std::fs::remove_dir_all(&dir);
    Outcome::from_checks(checks)
}

fn criterion_8() -> Outcome {
    let mut checks = Vec::new();
    let (code, out) = troploc(&["extended-cone", data("orthant2.cone.json").to_str().unwrap()]);
    let mut ranks: Vec<usize> = match out {
        Output::ExtendedCone(e) => e.strata.iter().map(|s| s.quotient_rank).collect(),
        _ => Vec::new(),
    };
    ranks.sort();
    checks.push((code == 0 && ranks == vec![0, 1, 1, 2], format!("rank 2: quotient ranks {ranks:?}")));
    let e3 = extended_cone(&Cone::orthant(3, Role::Weight).unwrap()).unwrap();
    checks.push((e3.strata.len() == 8, format!("rank 3: {} strata", e3.strata.len())));
    let sigma = Cone::orthant(3, Role::Weight).unwrap();
    let t = troploc_toric_germ(&sigma).unwrap();
    checks.push((
        t.maximal_cones() == vec![&sigma] && t.fan == Fan::from_cone(&sigma).unwrap(),
        "toric germ tropicalizes to its cone".into(),
    ));
    Outcome::from_checks(checks)
}

fn criterion_9(rng: &mut ChaCha8Rng) -> Outcome {
    let mut sub_bad = 0;
    for k in 0..100 {
        let n = if k % 2 == 0 { 2 } else { 3 };
        let base = Fan::from_cone(&Cone::orthant(n, Role::Weight).unwrap()).unwrap();
        let mut fan = base.clone();
        for _ in 0..rng.gen_range(1..=3) {
            let r: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=5)).collect();
            if r.iter().all(|&x| x == 0) {
                continue;
            }
            fan = fan.star_subdivide(&w(&r)).unwrap();
        }
        if !validate_fan(&fan).unwrap().is_valid() || !fan.support_equals(&base).unwrap() {
            sub_bad += 1;
        }
    }
    let mut bi_bad = 0;
    let mut made = 0;
    while made < 100 {
        let n = rng.gen_range(1..=4usize);
        let gens: Vec<LatticeVector> = (0..rng.gen_range(1..=5))
            .map(|_| LatticeVector::weight((0..n).map(|_| rng.gen_range(-4i64..=4))))
            .collect();
        let Ok(c) = Cone::from_generators(n, Role::Weight, &gens) else { continue };
        made += 1;
        if c.dual().dual() != c {
            bi_bad += 1;
        }
    }
    Outcome::from_checks(vec![
        (sub_bad == 0, format!("100 star subdivisions, {sub_bad} invalid or support-changing")),
        (bi_bad == 0, format!("100 cones, {bi_bad} biduality failures")),
    ])
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let curves: Vec<Series> = (0..20).map(|_| random_plane_series(&mut rng)).collect();
    let mut rng4 = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut rng6 = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut rng9 = ChaCha8Rng::seed_from_u64(SEED + 9);
    type Run<'a> = Box<dyn FnOnce() -> Outcome + 'a>;
    let criteria: Vec<(&str, u64, Run)> = vec![
        ("cusp reproduction", 1, Box::new(criterion_1)),
        ("Pham-Brieskorn divisors vs one-node splice fans", 5, Box::new(criterion_2)),
        ("two-node splice diagram", 5, Box::new(criterion_3)),
        ("initial weights vs divisor fan, brute force", 60, Box::new(|| criterion_4(&mut rng4))),
        ("Puiseux arcs vs plane-curve rays", 60, Box::new(|| criterion_5(&curves))),
        ("Newton polyhedron of a product", 30, Box::new(|| criterion_6(&mut rng6))),
        ("structure checks", 60, Box::new(|| criterion_7(&curves))),
        ("extended cone and toric germ", 1, Box::new(criterion_8)),
        ("fan subdivision and cone biduality", 30, Box::new(|| criterion_9(&mut rng9))),
    ];
    let mut unexpected = 0;
    for (i, (name, budget, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(budget);
        let tag = match (&out.unattainable, out.passed && in_time) {
            (None, true) => "PASS",
            _ => "FAIL",
        };
        println!(
            "[{tag}] criterion {}: {name}: {} ({:.2} s, budget {budget} s)",
            i + 1,
            out.detail,
            took.as_secs_f64()
        );
        if let Some(why) = &out.unattainable {
            println!("       unattainable as stated: {why}; all other checks of this criterion passed={}", out.passed);
        }
        if !(out.passed && in_time) {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed");
        ExitCode::FAILURE
    }
}
