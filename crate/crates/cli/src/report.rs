use std::fmt::Write as _;
use std::path::PathBuf;

use clap::ValueEnum;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use logchern::arrangements::{
    build_lattice, parse_arrangement, poincare_affine, poincare_projective, Arrangement, IntersectionLattice,
};
use logchern::chern_csm::{
    chern_from_resolution, compare_sides, csm_complement, csm_of_divisor, verify_main_theorem, ChowClass,
    VerificationReport, VerifyOptions,
};
use logchern::examples::{bundled, bundled_examples};
use logchern::groebner::{with_stats, EngineStats};
use logchern::log_geometry::{
    defining_data, derivation_module, derivation_module_d0, freeness_test, log_forms, nonfree_locus,
    relative_log_forms, LogModule, NonFreeLocusReport, NonFreeOptions,
};
use logchern::Error;

pub const SCHEMA: &str = "logchern-report/1";

#[derive(Clone, Debug)]
pub enum Source {
    File(PathBuf),
    Bundled(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModuleChoice {
    D,
    D0,
    Omega,
    Omega0,
}

#[derive(Clone, Debug)]
pub enum Task {
    Lattice,
    Poincare,
    Csm,
    Modules,
    Resolution(ModuleChoice),
    Chern,
    Nval { chart: Option<usize>, seed: Option<u64> },
    Verify { chart: Option<usize>, seed: Option<u64>, assume_locally_tame: bool },
}

impl Task {
    fn name(&self) -> &'static str {
        match self {
            Task::Lattice => "lattice",
            Task::Poincare => "poincare",
            Task::Csm => "csm",
            Task::Modules => "modules",
            Task::Resolution(_) => "resolution",
            Task::Chern => "chern",
            Task::Nval { .. } => "nval",
            Task::Verify { .. } => "verify",
        }
    }
}

#[derive(Clone, Debug)]
pub struct JobConfig {
    pub source: Source,
    pub task: Task,
    pub degree_cap: i64,
}

pub struct Report {
    pub text: String,
    pub json: Value,
    pub exit_code: u8,
}

#[derive(Debug)]
pub enum JobError {
    Input(String),
    Hypothesis(String),
    Mismatch(String),
}

impl std::fmt::Display for JobError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            JobError::Input(m) | JobError::Mismatch(m) => write!(f, "{m}"),
            JobError::Hypothesis(m) => write!(f, "hypothesis failure: {m}"),
        }
    }
}

impl JobError {
    pub fn exit_code(&self) -> u8 {
        match self {
            JobError::Input(_) => 1,
            JobError::Hypothesis(_) => 2,
            JobError::Mismatch(_) => 3,
        }
    }
}

impl From<Error> for JobError {
    fn from(e: Error) -> Self {
        match e {
            Error::Hypothesis(_) | Error::NonIsolatedNonFreeLocus { .. } => JobError::Hypothesis(e.to_string()),
            Error::CrossCheckMismatch(_) => JobError::Mismatch(e.to_string()),
            other => JobError::Input(other.to_string()),
        }
    }
}

type JobResult<T> = Result<T, JobError>;

fn load(source: &Source) -> JobResult<Arrangement> {
    match source {
        Source::File(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| JobError::Input(format!("{}: {e}", p.display())))?;
            Ok(parse_arrangement(&text)?)
        }
        Source::Bundled(name) => match bundled(name) {
            Some(a) => Ok(a?),
            None => Err(JobError::Input(format!("unknown example {name:?}; see `logchern examples`"))),
        },
    }
}

pub fn examples() -> Report {
    let list = bundled_examples();
    let mut text = String::new();
    for (name, desc) in &list {
        let _ = writeln!(text, "{name:<14} {desc}");
    }
    let entries: Vec<Value> = list.iter().map(|(n, d)| json!({ "name": n, "description": d })).collect();
    Report { text, json: json!({ "schema": SCHEMA, "command": "examples", "examples": entries }), exit_code: 0 }
}

/// Result of one command before the common header is attached.
struct Body {
    text: String,
    json: Value,
    exit_code: u8,
}

impl Body {
    fn ok(text: String, json: Value) -> JobResult<Body> {
        Ok(Body { text, json, exit_code: 0 })
    }
}

pub fn run(cfg: &JobConfig) -> JobResult<Report> {
    let a = load(&cfg.source)?;
    let (body, stats) = with_stats(|| body(&a, cfg));
    let body = body?;

    let mut text = describe(&a);
    text.push_str(&body.text);
    let _ = writeln!(
        text,
        "engine: {} Groebner runs, {} S-pairs reduced, max degree {}",
        stats.groebner_runs, stats.spairs_reduced, stats.max_degree
    );
    let mut arrangement = a.to_json();
    arrangement["forms"] = json!(a.render_forms());
    let json = json!({
        "schema": SCHEMA,
        "command": cfg.task.name(),
        "degree_cap": cfg.degree_cap,
        "arrangement": arrangement,
        "result": body.json,
        "engine": engine_json(&stats),
    });
    Ok(Report { text, json, exit_code: body.exit_code })
}

fn engine_json(s: &EngineStats) -> Value {
    json!({
        "groebner_runs": s.groebner_runs,
        "spairs_reduced": s.spairs_reduced,
        "zero_reductions": s.zero_reductions,
        "max_degree": s.max_degree,
    })
}

fn describe(a: &Arrangement) -> String {
    let mut s = String::new();
    let kind = if a.is_central() { "central" } else { "affine" };
    let _ = writeln!(s, "arrangement: {} hyperplanes in C^{} ({kind}, rank {})", a.len(), a.dim(), a.rank());
    let forms = a.render_forms();
    let labels = a.labels();
    for (i, f) in forms.iter().enumerate() {
        match labels {
            Some(l) if l[i].replace(' ', "") != f.replace(' ', "") => {
                let _ = writeln!(s, "  H{i}: {f}  [{}]", l[i]);
            }
            _ => {
                let _ = writeln!(s, "  H{i}: {f}");
            }
        }
    }
    s
}

fn body(a: &Arrangement, cfg: &JobConfig) -> JobResult<Body> {
    match &cfg.task {
        Task::Lattice => lattice(a),
        Task::Poincare => poincare(a),
        Task::Csm => csm(a),
        Task::Modules => modules(a),
        Task::Resolution(m) => resolution(a, *m),
        Task::Chern => chern(a),
        Task::Nval { chart, seed } => nval(a, *chart, *seed, cfg.degree_cap),
        Task::Verify { chart, seed, assume_locally_tame } => {
            verify(a, VerifyOptions { assume_locally_tame: *assume_locally_tame, per_flat_check: true, chart: *chart, degree_cap: cfg.degree_cap }, *seed)
        }
    }
}

fn lattice(a: &Arrangement) -> JobResult<Body> {
    let lat: IntersectionLattice = build_lattice(a);
    let mut text = String::new();
    for c in 0..=lat.rank() {
        let flats = lat.codim(c);
        let _ = writeln!(text, "codim {c}: {} flat{}", flats.len(), if flats.len() == 1 { "" } else { "s" });
        for f in flats {
            let _ = writeln!(text, "  {:?}  mu = {}", f.indices, f.mobius);
        }
    }
    Body::ok(text, lat.to_json())
}

fn poincare(a: &Arrangement) -> JobResult<Body> {
    let affine = poincare_affine(a);
    let mut text = format!("affine:     {affine}");
    let factored = affine.render_factored();
    if factored != affine.to_string() {
        let _ = write!(text, " = {factored}");
    }
    text.push('\n');
    let mut out = json!({ "affine": affine.coeffs(), "affine_factored": factored });
    if a.is_central() && !a.is_empty() {
        let proj = poincare_projective(a)?;
        let _ = write!(text, "projective: {proj}");
        let factored = proj.render_factored();
        if factored != proj.to_string() {
            let _ = write!(text, " = {factored}");
        }
        text.push('\n');
        out["projective"] = json!(proj.coeffs());
        out["projective_factored"] = json!(factored);
    }
    Body::ok(text, out)
}

fn csm(a: &Arrangement) -> JobResult<Body> {
    a.require_central_nonempty()?;
    let pi = poincare_projective(a)?;
    let l = a.dim();
    let complement = csm_complement(&pi, l);
    let divisor = csm_of_divisor(&pi, l);
    let chi = complement.coeff(l - 1);
    let text = format!(
        "c_SM(complement)  = {complement}\nc_SM(arrangement) = {divisor}\nEuler characteristic of the complement: {chi}\n"
    );
    Body::ok(text, json!({ "complement": complement, "divisor": divisor, "euler_characteristic": chi }))
}

struct AllModules {
    d: LogModule,
    d0: LogModule,
    omega: LogModule,
    omega0: LogModule,
}

fn all_modules(a: &Arrangement) -> JobResult<AllModules> {
    a.require_central_nonempty()?;
    let dd = defining_data(a)?;
    let omega = log_forms(&dd)?;
    let omega0 = relative_log_forms(&dd, &omega)?;
    Ok(AllModules { d: derivation_module(a)?, d0: derivation_module_d0(&dd)?, omega, omega0 })
}

fn module_line(m: &LogModule) -> String {
    let f = freeness_test(m);
    let status = match &f.exponents {
        Some(e) => format!("free, exponents {e:?}"),
        None => format!("not free, projective dimension {}", f.pdim),
    };
    format!("{:<9} {} generators in degrees {:?}; {status}\n", m.kind.name(), m.generators.len(), m.generator_degrees())
}

fn modules(a: &Arrangement) -> JobResult<Body> {
    let m = all_modules(a)?;
    let mut text = String::new();
    let mut out = serde_json::Map::new();
    for lm in [&m.d, &m.d0, &m.omega, &m.omega0] {
        text.push_str(&module_line(lm));
        let mut j = lm.to_json();
        j["freeness"] = json!(freeness_test(lm));
        out.insert(lm.kind.name().to_string(), j);
    }
    text.push_str("forms are graded so that df/f has degree 0\n");
    Body::ok(text, Value::Object(out))
}

fn resolution(a: &Arrangement, which: ModuleChoice) -> JobResult<Body> {
    let m = all_modules(a)?;
    let lm = match which {
        ModuleChoice::D => m.d,
        ModuleChoice::D0 => m.d0,
        ModuleChoice::Omega => m.omega,
        ModuleChoice::Omega0 => m.omega0,
    };
    let text = format!("minimal free resolution of {}\n{}", lm.kind.name(), lm.resolution.render());
    Body::ok(text, json!({ "module": lm.kind.name(), "resolution": lm.resolution.to_json() }))
}

fn chern(a: &Arrangement) -> JobResult<Body> {
    let m = all_modules(a)?;
    let l = a.dim();
    let dual = chern_from_resolution(&m.d0.resolution, 1, l);
    let twisted = chern_from_resolution(&m.omega0.resolution, 1, l);
    let pi = poincare_projective(a)?;
    let text = format!(
        "c_t(dual of log forms on P^{p})       = {}\nc_t(log forms on P^{p}, twisted by 1) = {}\npi(PA, t)                           = {pi}\n",
        dual.render("t"),
        twisted.render("t"),
        p = l - 1
    );
    let ints = |c: &logchern::algebra::TruncatedPoly| c.integer_coeffs();
    Body::ok(
        text,
        json!({ "dual_forms": ints(&dual), "forms_twisted": ints(&twisted), "poincare_projective": pi.coeffs() }),
    )
}

/// The arrangement with its hyperplanes in a seeded random order.
fn permuted(a: &Arrangement, seed: u64) -> JobResult<(Arrangement, Vec<usize>)> {
    let mut perm: Vec<usize> = (0..a.len()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let normals = perm.iter().map(|&i| a.normals()[i].clone()).collect();
    let mut b = Arrangement::central(a.dim(), normals)?;
    if let Some(l) = a.labels() {
        b = b.with_labels(perm.iter().map(|&i| l[i].clone()).collect())?;
    }
    Ok((b, perm))
}

fn nonfree(a: &Arrangement, chart: Option<usize>, cap: i64) -> JobResult<(LogModule, NonFreeLocusReport)> {
    a.require_central_nonempty()?;
    let dd = defining_data(a)?;
    let omega0 = relative_log_forms(&dd, &log_forms(&dd)?)?;
    let nf = nonfree_locus(a, &omega0, NonFreeOptions { per_flat: true, chart, degree_cap: cap })?;
    Ok((omega0, nf))
}

fn nval(a: &Arrangement, chart: Option<usize>, seed: Option<u64>, cap: i64) -> JobResult<Body> {
    let (omega0, nf) = nonfree(a, chart, cap)?;
    let total = nf.per_flat_total().unwrap_or(0);
    if total != nf.n_projective {
        return Err(JobError::Mismatch(format!("N = {} over the cone but {total} summed over points", nf.n_projective)));
    }
    let note = if omega0.pdim() <= 0 {
        "free"
    } else if nf.n_projective == 0 {
        "locally free, not free"
    } else {
        "not locally free"
    };
    let mut text = format!("N = {}  ({note})\n", nf.n_projective);
    let _ = writeln!(text, "Ext^1 dimension over the cone: {}", nf.cone_dim);
    let mut points = Vec::new();
    for c in nf.per_flat.iter().flatten() {
        if c.n != 0 {
            let _ = writeln!(text, "  point {:?}: {} (chart z{})", c.hyperplanes, c.n, c.chart + 1);
        }
        points.push(json!({ "hyperplanes": c.hyperplanes, "chart": c.chart, "n": c.n }));
    }
    let mut out = json!({
        "N": nf.n_projective,
        "cone_dim": nf.cone_dim,
        "pdim_omega0": omega0.pdim(),
        "note": note,
        "per_point": points,
    });
    if let Some(seed) = seed {
        let (b, perm) = permuted(a, seed)?;
        let (_, other) = nonfree(&b, chart, cap)?;
        let agrees = other.n_projective == nf.n_projective;
        let _ = writeln!(text, "reordered hyperplanes (seed {seed}): N = {}", other.n_projective);
        out["self_test"] = json!({ "seed": seed, "permutation": perm, "agrees": agrees });
        if !agrees {
            return Err(JobError::Mismatch(format!("N changed from {} to {} under reordering", nf.n_projective, other.n_projective)));
        }
    }
    Body::ok(text, out)
}

fn render_ints(c: &[i64], var: &str) -> String {
    let l = c.len().max(1);
    ChowClass::new(l, c).render().replace('h', var)
}

fn verify_text(r: &VerificationReport) -> String {
    let l = r.hypotheses.l;
    let mut s = String::new();
    let _ = writeln!(s, "c(dual of log forms)  = {}", r.lhs);
    let _ = writeln!(s, "c_SM(complement)      = {}", r.rhs_csm);
    let _ = writeln!(s, "N = {}, defect coefficient {} in dimension {l}", r.n, r.defect_coeff);
    let _ = writeln!(s, "predicted defect      = {}", r.predicted_defect);
    let _ = writeln!(s, "residual              = {}", r.residual);
    let _ = writeln!(s, "pi(PA, t)             = {}", r.poincare_projective);
    let _ = writeln!(s, "c_t(forms, twisted)   = {}", render_ints(&r.chern_omega_twisted, "t"));
    let _ = writeln!(s, "  minus pi            = {}", render_ints(&r.mustata_schenck_residual, "t"));
    let _ = writeln!(s, "  minus pi + N t^{}    = {}", l - 1, render_ints(&r.denham_schulze_residual, "t"));
    let _ = writeln!(s, "local tameness: {}", r.hypotheses.local_tameness);
    let _ = writeln!(s, "{}", if r.holds() { "identity holds" } else { "identity FAILS" });
    s
}

fn verify(a: &Arrangement, opts: VerifyOptions, seed: Option<u64>) -> JobResult<Body> {
    let r = match verify_main_theorem(a, opts) {
        Ok(r) => r,
        Err(Error::NonIsolatedNonFreeLocus { cone_dim }) => {
            let sides = compare_sides(a)?;
            let text = format!(
                "c(dual of log forms)  = {}\nc_SM(complement)      = {}\nnon-free locus has dimension {} in P^{}; N is undefined and the identity does not apply\n",
                sides.lhs,
                sides.csm,
                cone_dim - 1,
                a.dim() - 1
            );
            let out = json!({ "lhs": sides.lhs, "csm": sides.csm, "cone_dim": cone_dim, "applicable": false });
            return Ok(Body { text, json: out, exit_code: 2 });
        }
        Err(e) => return Err(e.into()),
    };
    let mut text = verify_text(&r);
    let mut out = serde_json::to_value(&r).expect("serializable report");
    out["holds"] = json!(r.holds());
    if let Some(seed) = seed {
        let (b, perm) = permuted(a, seed)?;
        let other = verify_main_theorem(&b, opts)?;
        let agrees = other.lhs == r.lhs && other.rhs_csm == r.rhs_csm && other.n == r.n;
        let _ = writeln!(text, "reordered hyperplanes (seed {seed}): {}", if agrees { "same classes and N" } else { "DIFFERENT" });
        out["self_test"] = json!({ "seed": seed, "permutation": perm, "agrees": agrees });
        if !agrees {
            return Err(JobError::Mismatch("verification changed under reordering".into()));
        }
    }
    Ok(Body { text, json: out, exit_code: if r.holds() { 0 } else { 3 } })
}
