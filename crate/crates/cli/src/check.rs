//! The bundled invariant suites behind `steinitz check`.

use std::fmt::Write as _;

use steinitz_core::realizable::rt_trace_replay_with;
use steinitz_core::steinitz::{beta_l, mcdle_gcd, theorem_exponent};
use steinitz_core::{rt_with, AbelianGroup, ApGroupTree, ClassGroup, GroupSpec, QuadField, Result, RtConfig};

use crate::Suite;

pub const EXAMPLES: &[(&str, &str)] = &[
    ("c2", include_str!("../examples/c2.json")),
    ("c3", include_str!("../examples/c3.json")),
    ("c15", include_str!("../examples/c15.json")),
    ("c3xc3", include_str!("../examples/c3xc3.json")),
    ("d3", include_str!("../examples/d3.json")),
    ("d15", include_str!("../examples/d15.json")),
    ("c7xc3", include_str!("../examples/c7xc3.json")),
    ("frobenius21", include_str!("../examples/frobenius21.json")),
    ("direct_c3_c5", include_str!("../examples/direct_c3_c5.json")),
    ("c7_rtimes_c9", include_str!("../examples/c7_rtimes_c9.json")),
    ("d3xc5", include_str!("../examples/d3xc5.json")),
    ("c5xc5_rtimes_c3", include_str!("../examples/c5xc5_rtimes_c3.json")),
];

type Check = fn(&ClassGroup) -> Result<std::result::Result<String, String>>;

fn suites(s: Suite) -> Vec<(&'static str, Check)> {
    let cl: Vec<(&'static str, Check)> = vec![
        ("class group order", order_oracle),
        ("class group axioms", axioms),
        ("prime classes", prime_classes),
    ];
    let ex: Vec<(&'static str, Check)> = vec![("gcd lemma", gcd_lemma), ("beta two forms", beta_forms)];
    let rt: Vec<(&'static str, Check)> = vec![
        ("R_t(C2) = Cl", c2_full),
        ("corpus subgroups and replay", corpus),
        ("cyclic vs direct", cyclic_vs_direct),
        ("dihedral closed form", dihedral),
    ];
    match s {
        Suite::All => cl.into_iter().chain(ex).chain(rt).collect(),
        Suite::Classgroup => cl,
        Suite::Exponents => ex,
        Suite::Rt => rt,
    }
}

/// Runs the selected suites over `Q(sqrt(disc))`; returns whether all passed and the report.
pub fn run_suites(suite: Suite, disc: i64) -> (bool, String) {
    let mut out = String::new();
    let cg = match QuadField::new(disc).and_then(ClassGroup::new) {
        Ok(cg) => cg,
        Err(e) => return (false, format!("FAIL setup: {e}\n")),
    };
    let mut ok = true;
    for (name, f) in suites(suite) {
        let (pass, detail) = match f(&cg) {
            Ok(Ok(d)) => (true, d),
            Ok(Err(d)) => (false, d),
            Err(e) => (false, format!("error: {e}")),
        };
        ok &= pass;
        writeln!(out, "{} {name}: {detail}", if pass { "PASS" } else { "FAIL" }).unwrap();
    }
    (ok, out)
}

fn verdict(pass: bool, detail: String) -> Result<std::result::Result<String, String>> {
    Ok(if pass { Ok(detail) } else { Err(detail) })
}

fn order_oracle(cg: &ClassGroup) -> Result<std::result::Result<String, String>> {
    let d = cg.disc();
    let count = if d == 0 {
        1
    } else {
        let n = -d;
        let mut count = 0u64;
        let mut a = 1;
        while 3 * a * a <= n {
            for b in -a + 1..=a {
                if (b * b - d) % (4 * a) != 0 {
                    continue;
                }
                let c = (b * b - d) / (4 * a);
                if c < a || (c == a && b < 0) {
                    continue;
                }
                if gcd3(a, b, c) == 1 {
                    count += 1;
                }
            }
            a += 1;
        }
        count
    };
    verdict(
        count == cg.order(),
        format!("h = {} by composition, {count} by enumeration", cg.order()),
    )
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    fn g(x: i64, y: i64) -> i64 {
        if y == 0 {
            x.abs()
        } else {
            g(y, x % y)
        }
    }
    g(g(a, b), c)
}

fn axioms(cg: &ClassGroup) -> Result<std::result::Result<String, String>> {
    let xs: Vec<_> = cg.elements().collect();
    let e = cg.principal();
    let sample: Vec<_> = xs.iter().copied().take(40).collect();
    for &x in &xs {
        if cg.compose(x, e) != x || cg.compose(x, cg.inverse(x)) != e {
            return verdict(false, format!("identity or inverse fails at {}", cg.form(x)));
        }
    }
    for &x in &sample {
        for &y in &sample {
            let xy = cg.compose(x, y);
            if xy != cg.compose(y, x) {
                return verdict(false, format!("{} and {} do not commute", cg.form(x), cg.form(y)));
            }
            let f = cg.form(x).compose(&cg.form(y))?;
            if cg.class_of_form(&f)? != xy {
                return verdict(
                    false,
                    format!("form composition disagrees at {} * {}", cg.form(x), cg.form(y)),
                );
            }
            for &z in &sample {
                if cg.compose(xy, z) != cg.compose(x, cg.compose(y, z)) {
                    return verdict(false, "associativity fails".into());
                }
            }
        }
    }
    verdict(
        true,
        format!("{} elements, {} sampled triples", xs.len(), sample.len().pow(3)),
    )
}

fn prime_classes(cg: &ClassGroup) -> Result<std::result::Result<String, String>> {
    let mut n = 0;
    for p in (2..200u64).filter(|&p| (2..p).take_while(|q| q * q <= p).all(|q| p % q != 0)) {
        let Ok(x) = cg.prime_class(p) else { continue };
        let f = cg.form(x);
        let represented = (-30..=30i64).any(|u| (-30..=30i64).any(|v| f.eval(u, v) == p as i128));
        if cg.order() > 1 && !represented {
            return verdict(false, format!("{f} does not represent {p}"));
        }
        if cg.compose(x, cg.inverse(x)) != cg.principal() {
            return verdict(false, format!("class above {p} has no inverse"));
        }
        n += 1;
    }
    verdict(
        true,
        format!("{n} non-inert primes below 200 represented by their classes"),
    )
}

fn gcd_lemma(_: &ClassGroup) -> Result<std::result::Result<String, String>> {
    let mut pairs = 0;
    for m in 2..=300u64 {
        for e in (2..=m).filter(|e| m % e == 0) {
            if !mcdle_gcd(e, m)?.1 {
                return verdict(false, format!("fails at e = {e}, m = {m}"));
            }
            pairs += 1;
        }
    }
    verdict(true, format!("{pairs} pairs, m <= 300"))
}

fn beta_forms(_: &ClassGroup) -> Result<std::result::Result<String, String>> {
    let mut n_checked = 0;
    for l in [3u64, 5, 7, 11, 13] {
        let mut o = l;
        while o <= 200 {
            for n in (o..=1000).step_by(2 * o as usize) {
                let b = beta_l(l, o, n)?;
                if theorem_exponent(l, o, 1, n)? % b != 0 {
                    return verdict(
                        false,
                        format!("beta {b} does not divide the exponent at ({l}, {o}, {n})"),
                    );
                }
                n_checked += 1;
            }
            o *= l;
        }
    }
    verdict(true, format!("{n_checked} triples"))
}

fn c2_full(cg: &ClassGroup) -> Result<std::result::Result<String, String>> {
    let r = rt_with(cg, &ApGroupTree::cyclic(2)?, &RtConfig::default())?;
    verdict(
        r.subgroup == cg.full_subgroup(),
        format!("order {} of {}", r.subgroup.order(), cg.order()),
    )
}

fn corpus(cg: &ClassGroup) -> Result<std::result::Result<String, String>> {
    let cfg = RtConfig::default();
    let mut orders = Vec::new();
    for (name, text) in EXAMPLES {
        let tree = GroupSpec::from_json(text)?.build(cfg.cap)?;
        let r = rt_with(cg, &tree, &cfg)?;
        cg.verify_subgroup(&r.subgroup)?;
        if rt_trace_replay_with(cg, &r)? != r.subgroup {
            return verdict(false, format!("{name}: replay differs"));
        }
        orders.push(format!("{name}:{}", r.subgroup.order()));
    }
    verdict(true, orders.join(" "))
}

fn cyclic_vs_direct(cg: &ClassGroup) -> Result<std::result::Result<String, String>> {
    let cfg = RtConfig::default();
    let a = rt_with(cg, &ApGroupTree::cyclic(15)?, &cfg)?;
    let b = rt_with(
        cg,
        &ApGroupTree::direct(ApGroupTree::cyclic(3)?, ApGroupTree::cyclic(5)?)?,
        &cfg,
    )?;
    let h = AbelianGroup::new(vec![3, 3])?;
    let c = rt_with(cg, &ApGroupTree::abelian(h.clone()), &cfg)?;
    let d = rt_with(cg, &ApGroupTree::semidirect_trivial(h, ApGroupTree::trivial())?, &cfg)?;
    verdict(
        a.subgroup == b.subgroup && c.subgroup == d.subgroup,
        format!(
            "C15 and C3 x C5 give order {}; C3 x C3 as leaf and as semidirect give order {}",
            a.subgroup.order(),
            c.subgroup.order()
        ),
    )
}

fn dihedral(cg: &ClassGroup) -> Result<std::result::Result<String, String>> {
    for n in [3, 5, 9, 15] {
        if !crate::dihedral_and_tree(cg, n)? {
            return verdict(false, format!("D{n} differs"));
        }
    }
    verdict(true, "D3, D5, D9, D15 agree".into())
}
