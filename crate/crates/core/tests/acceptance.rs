//! Acceptance suite: one PASS/FAIL line per criterion, then a single assertion.
//!
//! Set `STEINITZ_REGEN_GOLDEN=1` to rewrite `tests/golden/rt_corpus.json` from the current
//! engine instead of comparing against it.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use steinitz_core::classgroup::{is_fundamental_negative, reduced_forms};
use steinitz_core::cyclotomic::{w_group, WConfig};
use steinitz_core::grouptree::is_solvable_a_group;
use steinitz_core::steinitz::{beta_l, mcdle_gcd};
use steinitz_core::{
    rt_dihedral, rt_with, AbelianGroup, ApGroupTree, ClassGroup, ClassSubgroup, GroupSpec, QuadField, QuadForm,
    RtConfig, RtResult,
};

const FIELDS: [i64; 10] = [-3, -4, -7, -8, -11, -15, -20, -23, -47, -71];
const EXPECTED_ORDERS: [u64; 10] = [1, 1, 1, 1, 1, 2, 2, 3, 5, 7];
const CROSS_FIELDS: [i64; 3] = [-23, -47, -71];
const DIHEDRAL_N: [u64; 5] = [3, 5, 7, 9, 15];
const MCDLE_MAX_M: u64 = 2000;
const BETA_MAX_L: u64 = 50;
const BETA_MAX_O: u64 = 1000;
const BETA_MAX_N: u64 = 10_000;
const W_BOUND_FACTOR: u64 = 4;
const TABLE_MAX_ORDER: u64 = 200;

/// Runtime budgets, seconds, per criterion.
const BUDGET: [f64; 10] = [1.0, 5.0, 10.0, 10.0, 60.0, 60.0, 120.0, 30.0, 60.0, 60.0];

const GOLDEN_FIELDS: [i64; 8] = [-15, -23, -39, -47, -56, -87, -239, -3299];
const GOLDEN_GROUPS: [&str; 7] = ["c3", "c15", "c3xc3", "d3", "frobenius21", "c7xc3", "d3xc5"];

fn examples_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/examples")
}

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/rt_corpus.json")
}

fn load(name: &str) -> ApGroupTree {
    let text = std::fs::read_to_string(examples_dir().join(format!("{name}.json"))).unwrap();
    GroupSpec::from_json(&text).unwrap().build(100_000).unwrap()
}

fn corpus() -> Vec<(String, ApGroupTree)> {
    let mut names: Vec<String> = std::fs::read_dir(examples_dir())
        .unwrap()
        .filter_map(|e| {
            let p = e.ok()?.path();
            let stem = p.file_stem()?.to_string_lossy().into_owned();
            (p.extension()? == "json").then_some(stem)
        })
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), load(&n))).collect()
}

fn c(n: u64) -> ApGroupTree {
    ApGroupTree::cyclic(n).unwrap()
}

/// Reduced primitive forms counted by looping over `(a, c)` and solving for `b`.
fn count_reduced_by_ac(d: i64) -> usize {
    let n = -d;
    let mut count = 0;
    let mut a = 1;
    while 3 * a * a <= n {
        let mut cc = a;
        loop {
            let sq = d + 4 * a * cc;
            if sq > a * a {
                break;
            }
            if sq >= 0 {
                let b = (sq as f64).sqrt().round() as i64;
                if b * b == sq {
                    let bs: &[i64] = if b == 0 { &[0] } else { &[b, -b] };
                    for &bb in bs {
                        let f = QuadForm::new(a, bb, cc);
                        if f.is_reduced() && f.is_primitive() {
                            count += 1;
                        }
                    }
                }
            }
            cc += 1;
        }
        a += 1;
    }
    count
}

struct Report {
    lines: Vec<String>,
    failed: usize,
    rt_runs: Vec<(i64, String, RtResult)>,
}

impl Report {
    fn record(&mut self, id: usize, name: &str, elapsed: Duration, outcome: Result<String, String>) {
        let secs = elapsed.as_secs_f64();
        let (ok, detail) = match outcome {
            Ok(d) if secs <= BUDGET[id - 1] => (true, d),
            Ok(d) => (false, format!("{d}; over budget of {}s", BUDGET[id - 1])),
            Err(e) => (false, e),
        };
        if !ok {
            self.failed += 1;
        }
        let line = format!(
            "[{}] {id:>2} {name} ({secs:.2}s): {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
        println!("{line}");
        self.lines.push(line);
    }

    fn rt(&mut self, cg: &ClassGroup, name: &str, tree: &ApGroupTree) -> Result<ClassSubgroup, String> {
        let r = rt_with(cg, tree, &RtConfig::default()).map_err(|e| format!("{name} over D={}: {e}", cg.disc()))?;
        let s = r.subgroup.clone();
        self.rt_runs.push((cg.disc(), name.to_string(), r));
        Ok(s)
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Result<String, String> {
    for (&d, &h) in FIELDS.iter().zip(&EXPECTED_ORDERS) {
        let cg = ClassGroup::from_disc(d).map_err(|e| e.to_string())?;
        let oracle = count_reduced_by_ac(d);
        ensure(cg.order() as usize == oracle, || {
            format!("D={d}: {} vs oracle {oracle}", cg.order())
        })?;
        ensure(oracle as u64 == h, || {
            format!("D={d}: oracle gives {oracle}, expected {h}")
        })?;
        let forms = reduced_forms(d);
        let id = QuadForm::principal(d);
        let comp = |f: &QuadForm, g: &QuadForm| f.compose(g).unwrap();
        for f in &forms {
            ensure(comp(&id, f) == *f, || format!("D={d}: identity fails at {f}"))?;
            ensure(forms.iter().any(|g| comp(f, g) == id), || {
                format!("D={d}: {f} has no inverse")
            })?;
            for g in &forms {
                let fg = comp(f, g);
                ensure(forms.contains(&fg), || format!("D={d}: {f}*{g} not reduced"))?;
                ensure(fg == comp(g, f), || format!("D={d}: {f},{g} do not commute"))?;
                for k in &forms {
                    ensure(comp(&fg, k) == comp(f, &comp(g, k)), || format!("D={d}: associativity"))?;
                }
            }
        }
    }
    Ok(format!(
        "orders {EXPECTED_ORDERS:?} match the (a, c) enumeration; axioms hold"
    ))
}

fn criterion_2(rep: &mut Report) -> Result<String, String> {
    for d in FIELDS {
        let cg = ClassGroup::from_disc(d).unwrap();
        let s = rep.rt(&cg, "c2", &c(2))?;
        let all: Vec<usize> = (0..cg.order() as usize).collect();
        ensure(s.members() == all.as_slice(), || {
            format!("D={d}: R_t(C(2)) has order {}", s.order())
        })?;
    }
    Ok("R_t(C(2)) = Cl(k) on all ten fields".into())
}

fn criterion_3() -> Result<String, String> {
    let mut pairs = 0u64;
    for m in 2..=MCDLE_MAX_M {
        for e in 2..=m {
            if m % e == 0 {
                let (g, divides) = mcdle_gcd(e, m).map_err(|x| x.to_string())?;
                ensure(divides, || format!("e={e} m={m}: gcd {g} does not divide"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs (e, m), m <= {MCDLE_MAX_M}"))
}

fn criterion_4() -> Result<String, String> {
    let mut triples = 0u64;
    for l in (3..=BETA_MAX_L).filter(|&l| steinitz_core::arith::is_prime(l)) {
        let mut o = l;
        while o <= BETA_MAX_O {
            for n in (o..=BETA_MAX_N).step_by(o as usize).filter(|n| n % 2 == 1) {
                beta_l(l, o, n).map_err(|e| e.to_string())?;
                triples += 1;
            }
            o *= l;
        }
    }
    Ok(format!("{triples} triples (l, o, n) agree"))
}

fn criterion_5(rep: &mut Report) -> Result<String, String> {
    let leaves: Vec<(&str, AbelianGroup)> = vec![
        ("c3", AbelianGroup::cyclic(3).unwrap()),
        ("c5", AbelianGroup::cyclic(5).unwrap()),
        ("c9", AbelianGroup::cyclic(9).unwrap()),
        ("c3xc3", AbelianGroup::new(vec![3, 3]).unwrap()),
        ("c15", AbelianGroup::cyclic(15).unwrap()),
    ];
    let mut checks = 0;
    for d in CROSS_FIELDS {
        let cg = ClassGroup::from_disc(d).unwrap();
        let a = rep.rt(&cg, "c15", &c(15))?;
        let b = rep.rt(&cg, "direct_c3_c5", &ApGroupTree::direct(c(3), c(5)).unwrap())?;
        ensure(a == b, || {
            format!("D={d}: C(15) gives order {}, C(3)xC(5) gives {}", a.order(), b.order())
        })?;
        checks += 1;
        for (name, h) in &leaves {
            let leaf = rep.rt(&cg, name, &ApGroupTree::abelian(h.clone()))?;
            let semi = ApGroupTree::semidirect_trivial(h.clone(), ApGroupTree::trivial()).unwrap();
            let via = rep.rt(&cg, &format!("{name}_rtimes_1"), &semi)?;
            ensure(leaf == via, || format!("D={d}: leaf {name} differs from H x| 1"))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} exact equalities"))
}

fn criterion_6(rep: &mut Report) -> Result<String, String> {
    let mut checks = 0;
    for d in CROSS_FIELDS {
        let k = QuadField::new(d).unwrap();
        let cg = ClassGroup::new(k).unwrap();
        for n in DIHEDRAL_N {
            let closed = rt_dihedral(k, n, &RtConfig::default()).map_err(|e| e.to_string())?;
            let tree = rep.rt(&cg, &format!("d{n}"), &ApGroupTree::dihedral(n).unwrap())?;
            ensure(closed.subgroup == tree, || {
                format!("D={d} n={n}: closed form differs from tree engine")
            })?;
            rep.rt_runs.push((d, format!("d{n}_closed"), closed));
            checks += 1;
        }
    }
    Ok(format!("{checks} dihedral pairs agree"))
}

fn criterion_7(rep: &Report) -> Result<String, String> {
    let mut seen = BTreeSet::new();
    let mut jobs = Vec::new();
    for (d, _, r) in &rep.rt_runs {
        for f in r.trace.steps.iter().flat_map(|s| &s.factors) {
            jobs.push((
                *d,
                f.descriptor.clone(),
                f.certificate.initial_bound,
                f.w_members.clone(),
            ));
        }
    }
    for (d, desc, bound, members) in jobs {
        if !seen.insert((d, desc.clone(), bound)) {
            continue;
        }
        let cg = ClassGroup::from_disc(d).unwrap();
        let cfg = WConfig::default().with_bound(Some(bound * W_BOUND_FACTOR));
        let w = w_group(&cg, &desc.subgroup().unwrap(), &cfg).map_err(|e| e.to_string())?;
        ensure(w.subgroup.members() == members.as_slice(), || {
            format!("D={d} {desc}: 4x bound changes W")
        })?;
    }
    Ok(format!(
        "{} distinct W-groups stable under a {W_BOUND_FACTOR}x bound",
        seen.len()
    ))
}

fn criterion_8() -> Result<String, String> {
    let mut trees = corpus();
    trees.push(("d15_built".into(), ApGroupTree::dihedral(15).unwrap()));
    let mut checked = Vec::new();
    for (name, t) in &trees {
        if t.order() > TABLE_MAX_ORDER {
            continue;
        }
        let table = t.to_multiplication_table(4096).map_err(|e| format!("{name}: {e}"))?;
        let ok = is_solvable_a_group(&table).map_err(|e| format!("{name}: {e}"))?;
        ensure(ok, || format!("{name} is not a solvable A-group"))?;
        checked.push(format!("{name}({})", t.order()));
    }
    ensure(checked.iter().any(|s| s.starts_with("frobenius21")), || {
        "Frobenius group missing".into()
    })?;
    ensure(checked.iter().any(|s| s.starts_with("d15")), || "D_15 missing".into())?;
    Ok(format!("{} trees: {}", checked.len(), checked.join(", ")))
}

fn criterion_9(rep: &mut Report) -> Result<String, String> {
    for d in GOLDEN_FIELDS {
        let cg = ClassGroup::from_disc(d).unwrap();
        for (name, t) in corpus() {
            rep.rt(&cg, &name, &t)?;
        }
    }
    for (d, name, r) in &rep.rt_runs {
        let cg = ClassGroup::from_disc(*d).unwrap();
        let s = &r.subgroup;
        ensure(s.contains(cg.principal()), || {
            format!("D={d} {name}: no principal class")
        })?;
        for x in s.classes() {
            ensure(s.contains(cg.inverse(x)), || {
                format!("D={d} {name}: not closed under inverse")
            })?;
            for y in s.classes() {
                ensure(s.contains(cg.compose(x, y)), || format!("D={d} {name}: not closed"))?;
            }
        }
    }
    Ok(format!(
        "{} runs closed under composition and inverse",
        rep.rt_runs.len()
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct GoldenEntry {
    disc: i64,
    group: String,
    class_number: u64,
    order: u64,
    index: u64,
    invariant_factors: Vec<u64>,
    members: Vec<QuadForm>,
}

fn golden_entries() -> Result<Vec<GoldenEntry>, String> {
    let mut out = Vec::new();
    for d in GOLDEN_FIELDS {
        let cg = ClassGroup::from_disc(d).unwrap();
        for g in GOLDEN_GROUPS {
            let r = rt_with(&cg, &load(g), &RtConfig::default()).map_err(|e| e.to_string())?;
            let (invariant_factors, _) = cg.subgroup_structure(&r.subgroup).unwrap();
            let mut members: Vec<QuadForm> = r.subgroup.classes().map(|x| cg.form(x)).collect();
            members.sort();
            out.push(GoldenEntry {
                disc: d,
                group: g.into(),
                class_number: cg.order(),
                order: r.subgroup.order(),
                index: cg.index_of(&r.subgroup),
                invariant_factors,
                members,
            });
        }
    }
    Ok(out)
}

fn criterion_10() -> Result<String, String> {
    let entries = golden_entries()?;
    let path = golden_path();
    if std::env::var_os("STEINITZ_REGEN_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, serde_json::to_string_pretty(&entries).unwrap() + "\n").unwrap();
    }
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let golden: Vec<GoldenEntry> = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    ensure(golden == entries, || {
        let diff = entries.iter().zip(&golden).find(|(a, b)| a != b);
        format!("golden mismatch: {diff:?}")
    })?;

    let proper: Vec<String> = entries
        .iter()
        .filter(|e| e.order > 1 && e.order < e.class_number)
        .map(|e| format!("{}@{}", e.group, e.disc))
        .collect();
    ensure(!proper.is_empty(), || "no proper nontrivial R_t in the corpus".into())?;

    // R_t(C(3)) over Q(sqrt(-23)) is all of Cl although Cl^3 is trivial
    let cg = ClassGroup::from_disc(-23).unwrap();
    let cubes = cg.subgroup_power(&cg.full_subgroup(), 3).unwrap();
    let r = rt_with(&cg, &c(3), &RtConfig::default()).unwrap().subgroup;
    ensure(cubes.is_trivial() && r.order() == 3, || {
        "C(3) over -23 witness failed".into()
    })?;
    // R_t(C(3)) over Q(sqrt(-15)) is trivial although Cl^3 = Cl
    let cg = ClassGroup::from_disc(-15).unwrap();
    let cubes = cg.subgroup_power(&cg.full_subgroup(), 3).unwrap();
    let r = rt_with(&cg, &c(3), &RtConfig::default()).unwrap().subgroup;
    ensure(cubes.order() == 2 && r.is_trivial(), || {
        "C(3) over -15 witness failed".into()
    })?;

    Ok(format!(
        "{} golden entries match; proper nontrivial: {}",
        entries.len(),
        proper.join(", ")
    ))
}

fn timed<T>(f: impl FnOnce() -> T) -> (Duration, T) {
    let start = Instant::now();
    let out = f();
    (start.elapsed(), out)
}

#[test]
fn acceptance() {
    assert!(FIELDS.iter().all(|&d| is_fundamental_negative(d)));
    let mut rep = Report {
        lines: Vec::new(),
        failed: 0,
        rt_runs: Vec::new(),
    };
    let (t, o) = timed(criterion_1);
    rep.record(1, "class-group oracle", t, o);
    let (t, o) = timed(|| criterion_2(&mut rep));
    rep.record(2, "R_t(C(2)) = Cl(k)", t, o);
    let (t, o) = timed(criterion_3);
    rep.record(3, "gcd lemma exhaustive", t, o);
    let (t, o) = timed(criterion_4);
    rep.record(4, "beta_l two forms agree", t, o);
    let (t, o) = timed(|| criterion_5(&mut rep));
    rep.record(5, "formula cross-paths", t, o);
    let (t, o) = timed(|| criterion_6(&mut rep));
    rep.record(6, "dihedral closed form vs tree engine", t, o);
    let (t, o) = timed(|| criterion_7(&rep));
    rep.record(7, "W stabilization", t, o);
    let (t, o) = timed(criterion_8);
    rep.record(8, "corpus trees are solvable A-groups", t, o);
    let (t, o) = timed(|| criterion_9(&mut rep));
    rep.record(9, "R_t is a subgroup", t, o);
    let (t, o) = timed(criterion_10);
    rep.record(10, "nontriviality witness (golden)", t, o);
    println!(
        "{} of {} criteria passed",
        rep.lines.len() - rep.failed,
        rep.lines.len()
    );
    assert_eq!(rep.failed, 0, "{}", rep.lines.join("\n"));
}
