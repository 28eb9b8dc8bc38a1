//! Argument parsing, dispatch and rendering for the `steinitz` binary.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use steinitz_core::classgroup::is_fundamental_negative;
use steinitz_core::cyclotomic::{w_group, StopReason};
use steinitz_core::realizable::rt_trace_replay_with;
use steinitz_core::steinitz::{
    alpha_l3_scaled, alphas_l, beta_l, mcdle_gcd, steinitz_from_ramification, theorem_exponent, RamificationDatum,
};
use steinitz_core::{
    rt_dihedral, rt_with, ApGroupTree, ClassGroup, ClassSubgroup, CycloSubgroup, Error, ErrorKind, GroupSpec,
    IdealClass, QuadField, RtConfig, WConfig,
};

pub mod check;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CEILING: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "steinitz",
    version,
    about = "Realizable Steinitz classes over Q and imaginary quadratic fields"
)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Fundamental discriminant D < 0, or 0 for Q.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_disc)]
    pub disc: i64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Class group order, structure and generators.
    Classgroup {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// W-group for a subgroup of (Z/m)^*, given by generators.
    Wgroup {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        modulus: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        subgroup: Vec<u64>,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Steinitz class of a tame extension from its ramification.
    Steinitz {
        #[command(flatten)]
        field: FieldArgs,
        /// Comma-separated `p:e`; write `p':e` for the conjugate prime.
        #[arg(long, value_delimiter = ',', value_parser = parse_ram)]
        ram: Vec<RamificationDatum>,
        #[arg(long)]
        order: u64,
        /// The Galois group has a noncyclic 2-Sylow subgroup.
        #[arg(long)]
        noncyclic_two_sylow: bool,
    },
    /// Exponents attached to an element of order `otau` in a group of order `n`.
    Exponents {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        otau: u64,
        #[arg(long, default_value_t = 1)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// R_t(k, G) for a group spec file.
    Rt {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        no_dedupe: bool,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(skip)]
        spec: Option<GroupSpec>,
    },
    /// Run the bundled invariant suites.
    Check {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_disc, default_value_t = -23)]
        disc: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Classgroup,
    Exponents,
    Rt,
}

fn parse_disc(s: &str) -> Result<i64, String> {
    let d: i64 = s.trim().parse().map_err(|_| format!("{s} is not an integer"))?;
    if d == 0 || is_fundamental_negative(d) {
        Ok(d)
    } else {
        Err(format!("{d} is not a fundamental discriminant <= 0"))
    }
}

fn parse_ram(s: &str) -> Result<RamificationDatum, String> {
    let (p, e) = s.split_once(':').ok_or_else(|| format!("{s}: expected p:e"))?;
    let (p, conjugate) = match p.strip_suffix('\'') {
        Some(p) => (p, true),
        None => (p, false),
    };
    let p = p.trim().parse().map_err(|_| format!("{s}: bad prime"))?;
    let e = e.trim().parse().map_err(|_| format!("{s}: bad index"))?;
    Ok(RamificationDatum { p, conjugate, e })
}

/// Parses `argv` (including the program name) and loads any group spec it names.
pub fn parse_args<I, T>(argv: I) -> Result<CliConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut cfg = CliConfig::try_parse_from(argv)?;
    if let Command::Rt { group, spec, .. } = &mut cfg.command {
        let text = std::fs::read_to_string(&*group).map_err(|e| {
            clap::Error::raw(
                clap::error::ErrorKind::Io,
                format!("cannot read {}: {e}\n", group.display()),
            )
        })?;
        let parsed = GroupSpec::from_json(&text).map_err(|e| {
            clap::Error::raw(
                clap::error::ErrorKind::InvalidValue,
                format!("{}: {e}\n", group.display()),
            )
        })?;
        *spec = Some(parsed);
    }
    Ok(cfg)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::InvalidInput => EXIT_INPUT,
        ErrorKind::Ceiling => EXIT_CEILING,
        ErrorKind::Internal => EXIT_INTERNAL,
    }
}

pub fn run(cfg: &CliConfig) -> Outcome {
    let res = match &cfg.command {
        Command::Classgroup { field } => classgroup(field),
        Command::Wgroup {
            field,
            modulus,
            subgroup,
            bound,
        } => wgroup(field, *modulus, subgroup, *bound),
        Command::Steinitz {
            field,
            ram,
            order,
            noncyclic_two_sylow,
        } => steinitz(field, ram, *order, *noncyclic_two_sylow),
        Command::Exponents { l, otau, m, n, json } => exponents(*l, *otau, *m, *n, *json),
        Command::Rt {
            field,
            group,
            bound,
            no_dedupe,
            trace,
            spec,
        } => match spec {
            Some(spec) => rt(field, spec, *bound, *no_dedupe, trace.as_deref()),
            None => load_spec(group).and_then(|s| rt(field, &s, *bound, *no_dedupe, trace.as_deref())),
        },
        Command::Check { suite, disc } => {
            let (ok, text) = check::run_suites(*suite, *disc);
            return Outcome {
                code: if ok { EXIT_OK } else { EXIT_INTERNAL },
                stdout: text,
                stderr: String::new(),
            };
        }
    };
    match res {
        Ok(stdout) => Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn load_spec(path: &std::path::Path) -> steinitz_core::Result<GroupSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Spec(format!("{}: {e}", path.display())))?;
    GroupSpec::from_json(&text)
}

fn class_group(disc: i64) -> steinitz_core::Result<ClassGroup> {
    ClassGroup::new(QuadField::new(disc)?)
}

fn structure(factors: &[u64]) -> String {
    if factors.is_empty() {
        return "1".into();
    }
    factors.iter().map(|n| format!("C{n}")).collect::<Vec<_>>().join(" x ")
}

fn forms_text(cg: &ClassGroup, xs: &[IdealClass]) -> String {
    if xs.is_empty() {
        return "none".into();
    }
    xs.iter()
        .map(|&x| cg.form(x).to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serialises");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: u64,
    pub invariant_factors: Vec<u64>,
    pub generators: Vec<[i64; 3]>,
}

impl GroupJson {
    fn of_class_group(cg: &ClassGroup) -> Self {
        GroupJson {
            order: cg.order(),
            invariant_factors: cg.invariant_factors().to_vec(),
            generators: cg.generators().into_iter().map(|x| cg.form(x).into()).collect(),
        }
    }

    fn of_subgroup(cg: &ClassGroup, s: &ClassSubgroup) -> steinitz_core::Result<Self> {
        let (invariant_factors, gens) = cg.subgroup_structure(s)?;
        Ok(GroupJson {
            order: s.order(),
            invariant_factors,
            generators: gens.into_iter().map(|x| cg.form(x).into()).collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGroupJson {
    pub disc: i64,
    #[serde(flatten)]
    pub group: GroupJson,
}

fn classgroup(f: &FieldArgs) -> steinitz_core::Result<String> {
    let cg = class_group(f.disc)?;
    if f.json {
        return Ok(json(&ClassGroupJson {
            disc: f.disc,
            group: GroupJson::of_class_group(&cg),
        }));
    }
    Ok(format!(
        "h = {}, Cl ≅ {}, generators: {}\n",
        cg.order(),
        structure(cg.invariant_factors()),
        forms_text(&cg, &cg.generators())
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WGroupJson {
    pub disc: i64,
    pub modulus: u64,
    pub subgroup: Vec<u64>,
    pub w: GroupJson,
    pub index: u64,
    pub primes: Vec<u64>,
    pub initial_bound: u64,
    pub final_bound: u64,
    pub stop: String,
}

fn closure_mod(m: u64, gens: &[u64]) -> Vec<u64> {
    let mut set = std::collections::BTreeSet::from([1 % m]);
    let mut frontier = vec![1 % m];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = ((x as u128 * g as u128) % m as u128) as u64;
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set.into_iter().collect()
}

fn stop_name(r: StopReason) -> &'static str {
    match r {
        StopReason::TrivialClassGroup => "trivial class group",
        StopReason::FullGroup => "full class group",
        StopReason::Stable => "stable",
    }
}

fn wgroup(f: &FieldArgs, m: u64, gens: &[u64], bound: Option<u64>) -> steinitz_core::Result<String> {
    let cg = class_group(f.disc)?;
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let s = CycloSubgroup::new(m, closure_mod(m, gens))?;
    let w = w_group(&cg, &s, &WConfig::from_env()?.with_bound(bound))?;
    let out = WGroupJson {
        disc: f.disc,
        modulus: m,
        subgroup: s.members().to_vec(),
        w: GroupJson::of_subgroup(&cg, &w.subgroup)?,
        index: cg.index_of(&w.subgroup),
        primes: w.generators.iter().map(|g| g.prime).collect(),
        initial_bound: w.certificate.initial_bound,
        final_bound: w.certificate.final_bound,
        stop: stop_name(w.certificate.reason).into(),
    };
    if f.json {
        return Ok(json(&out));
    }
    let gens: Vec<String> = w
        .generators
        .iter()
        .map(|g| format!("{} [p = {}]", g.form, g.prime))
        .collect();
    Ok(format!(
        "W ≅ {}, order {}, index {}, generators: {}\nstop: {} at bound {} (initial {})\n",
        structure(&out.w.invariant_factors),
        out.w.order,
        out.index,
        if gens.is_empty() {
            "none".into()
        } else {
            gens.join(", ")
        },
        out.stop,
        out.final_bound,
        out.initial_bound
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinitzJson {
    pub disc: i64,
    pub order: u64,
    pub ram: Vec<RamificationDatum>,
    pub class: [i64; 3],
}

fn steinitz(f: &FieldArgs, ram: &[RamificationDatum], n: u64, noncyclic: bool) -> steinitz_core::Result<String> {
    let cg = class_group(f.disc)?;
    let x = steinitz_from_ramification(&cg, ram, n, noncyclic)?;
    let out = SteinitzJson {
        disc: f.disc,
        order: n,
        ram: ram.to_vec(),
        class: cg.form(x).into(),
    };
    if f.json {
        return Ok(json(&out));
    }
    Ok(format!("St = {}\n", cg.form(x)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentsJson {
    pub l: u64,
    pub otau: u64,
    pub m: u64,
    pub n: u64,
    pub alpha: [u64; 3],
    pub alpha3_scaled: u64,
    pub beta: u64,
    pub theorem_exponent: u64,
    pub mcdle_gcd: u64,
}

fn exponents(l: u64, otau: u64, m: u64, n: u64, as_json: bool) -> steinitz_core::Result<String> {
    let (a1, a2, a3) = alphas_l(l, otau, n)?;
    let out = ExponentsJson {
        l,
        otau,
        m,
        n,
        alpha: [a1, a2, a3],
        alpha3_scaled: alpha_l3_scaled(l, otau, n)?,
        beta: beta_l(l, otau, n)?,
        theorem_exponent: theorem_exponent(l, otau, m, n)?,
        mcdle_gcd: mcdle_gcd(otau, n)?.0,
    };
    if as_json {
        return Ok(json(&out));
    }
    Ok(format!(
        "alpha = ({}, {}, {}), alpha3 scaled = {}\nbeta = {}\ntheorem exponent = {}\ngcd over e | n = {}\n",
        a1, a2, a3, out.alpha3_scaled, out.beta, out.theorem_exponent, out.mcdle_gcd
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RtJson {
    pub disc: i64,
    pub class_group: GroupJson,
    pub rt: RtGroupJson,
    pub trace_file: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RtGroupJson {
    #[serde(flatten)]
    pub group: GroupJson,
    pub index: u64,
}

fn rt(
    f: &FieldArgs,
    spec: &GroupSpec,
    bound: Option<u64>,
    no_dedupe: bool,
    trace: Option<&std::path::Path>,
) -> steinitz_core::Result<String> {
    let cg = class_group(f.disc)?;
    let mut cfg = RtConfig::from_env()?;
    cfg.w = cfg.w.with_bound(bound);
    cfg.dedupe = !no_dedupe;
    let tree = spec.build(cfg.cap)?;
    let r = rt_with(&cg, &tree, &cfg)?;
    if let Some(path) = trace {
        std::fs::write(path, r.to_json()?)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
    }
    let out = RtJson {
        disc: f.disc,
        class_group: GroupJson::of_class_group(&cg),
        rt: RtGroupJson {
            group: GroupJson::of_subgroup(&cg, &r.subgroup)?,
            index: cg.index_of(&r.subgroup),
        },
        trace_file: trace.map(|p| p.display().to_string()),
    };
    if f.json {
        return Ok(json(&out));
    }
    let mut s = String::new();
    let g = &out.rt.group;
    if out.rt.index == 1 {
        writeln!(s, "R_t = Cl(k), index 1").unwrap();
    } else if g.order == 1 {
        writeln!(s, "R_t = 1, index {}", out.rt.index).unwrap();
    } else {
        let gens: Vec<IdealClass> = g
            .generators
            .iter()
            .map(|&f| cg.class_of_form(&f.into()))
            .collect::<steinitz_core::Result<_>>()?;
        writeln!(
            s,
            "R_t ≅ {}, order {}, index {}, generators: {}",
            structure(&g.invariant_factors),
            g.order,
            out.rt.index,
            forms_text(&cg, &gens)
        )
        .unwrap();
    }
    writeln!(
        s,
        "G = {tree} (order {}), Cl ≅ {} (h = {})",
        tree.order(),
        structure(cg.invariant_factors()),
        cg.order()
    )
    .unwrap();
    if let Some(p) = &out.trace_file {
        writeln!(s, "trace: {p}").unwrap();
    }
    Ok(s)
}

/// Re-checks a trace file against a fresh class group.
pub fn replay_file(path: &std::path::Path) -> steinitz_core::Result<ClassSubgroup> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let r = steinitz_core::RtResult::from_json(&text)?;
    let cg = ClassGroup::new(r.field)?;
    rt_trace_replay_with(&cg, &r)
}

pub(crate) fn dihedral_and_tree(cg: &ClassGroup, n: u64) -> steinitz_core::Result<bool> {
    let cfg = RtConfig::default();
    let a = rt_dihedral(cg.field(), n, &cfg)?;
    let b = rt_with(cg, &ApGroupTree::dihedral(n)?, &cfg)?;
    Ok(a.subgroup == b.subgroup)
}
