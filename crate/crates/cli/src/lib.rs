//! Command-line front end: argument parsing, a JSON result cache and the
//! per-size verification suite.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use hessgkm::cohomology::{
    invariant_quotient_hilbert, is_degree2_generated, subring_hilbert, CohomError, Limits, SpanModel,
};
use hessgkm::gkm::{build_graph_with_limit, GkmError};
use hessgkm::hessfn::{enumerate, HessError, HessenbergFunction};
use hessgkm::qseries::{
    hilb_invariants, poincare_direct, poincare_h1_closed, poincare_recursive, subring_bounds, QPoly,
};

mod verify;

pub use verify::{verify_size, CheckResult};

/// Bumped whenever cached output could change.
pub const VERSION_TAG: &str = concat!("v", env!("CARGO_PKG_VERSION"));

pub const CACHE_ENV: &str = "HESSGKM_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(name = "hessgkm", version, about = "Cohomology of regular semisimple Hessenberg varieties via GKM graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
    #[command(flatten)]
    pub options: GlobalOptions,
}

#[derive(Debug, Args, Clone, Default)]
pub struct GlobalOptions {
    /// Indented JSON instead of one line.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Cache directory; defaults to $HESSGKM_CACHE_DIR, then ~/.cache/hessgkm.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Worker threads for the compute kernels.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Lift every size limit.
    #[arg(long, global = true)]
    pub override_gate: bool,
}

#[derive(Debug, Subcommand, Clone)]
pub enum CommandArgs {
    /// Diagram data, bottom and L sets, dimension, connectivity, lollipop form.
    Analyze { h: String },
    /// Poincaré polynomial by every available method.
    Poincare { h: String },
    /// Whether the cohomology ring is generated in degree two.
    #[command(name = "check-gen2")]
    CheckGen2 {
        h: String,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Lollipop form against the generation checker for every function of size N.
    Classify {
        #[arg(short = 'n')]
        n: usize,
        #[command(flatten)]
        model: ModelArgs,
        /// Also list disconnected functions (no verdict).
        #[arg(long)]
        include_disconnected: bool,
    },
    /// The verification suite at size N.
    Verify {
        #[arg(short = 'n')]
        n: usize,
    },
    /// The labeled GKM graph.
    Graph {
        h: String,
        /// Graphviz output instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Invariant-ring series, subring generated in degree two, and bounds.
    Hilbert {
        h: String,
        /// Highest degree of the invariant quotient; defaults to the dimension.
        #[arg(long)]
        max_degree: Option<usize>,
    },
}

#[derive(Debug, Args, Clone, Default)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value_t = ModelChoice::Line)]
    pub model: ModelChoice,
    /// Shorthand for `--model modular`.
    #[arg(long, conflicts_with = "model")]
    pub modular: bool,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum ModelChoice {
    #[default]
    Line,
    Full,
    Modular,
}

impl ModelArgs {
    fn resolve(&self) -> SpanModel {
        if self.modular {
            return SpanModel::Modular;
        }
        match self.model {
            ModelChoice::Line => SpanModel::Line,
            ModelChoice::Full => SpanModel::Full,
            ModelChoice::Modular => SpanModel::Modular,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Analyze,
    Poincare,
    CheckGen2,
    Classify,
    Verify,
    Graph,
    Hilbert,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Analyze => "analyze",
            CommandKind::Poincare => "poincare",
            CommandKind::CheckGen2 => "check-gen2",
            CommandKind::Classify => "classify",
            CommandKind::Verify => "verify",
            CommandKind::Graph => "graph",
            CommandKind::Hilbert => "hilbert",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    H(String),
    N(usize),
}

/// Everything one invocation needs, independent of how it was parsed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub target: Target,
    pub model: SpanModel,
    pub max_degree: Option<usize>,
    pub threads: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub connected_only: bool,
    pub dot: bool,
    pub override_gate: bool,
    pub pretty: bool,
    pub no_cache: bool,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let o = cli.options;
        let mut config = RunConfig {
            command: CommandKind::Analyze,
            target: Target::N(0),
            model: SpanModel::Line,
            max_degree: None,
            threads: o.threads,
            cache_dir: o.cache_dir,
            connected_only: true,
            dot: false,
            override_gate: o.override_gate,
            pretty: o.pretty,
            no_cache: o.no_cache,
        };
        match cli.command {
            CommandArgs::Analyze { h } => {
                config.command = CommandKind::Analyze;
                config.target = Target::H(h);
            }
            CommandArgs::Poincare { h } => {
                config.command = CommandKind::Poincare;
                config.target = Target::H(h);
            }
            CommandArgs::CheckGen2 { h, model } => {
                config.command = CommandKind::CheckGen2;
                config.target = Target::H(h);
                config.model = model.resolve();
            }
            CommandArgs::Classify { n, model, include_disconnected } => {
                config.command = CommandKind::Classify;
                config.target = Target::N(n);
                config.model = model.resolve();
                config.connected_only = !include_disconnected;
            }
            CommandArgs::Verify { n } => {
                config.command = CommandKind::Verify;
                config.target = Target::N(n);
            }
            CommandArgs::Graph { h, dot } => {
                config.command = CommandKind::Graph;
                config.target = Target::H(h);
                config.dot = dot;
            }
            CommandArgs::Hilbert { h, max_degree } => {
                config.command = CommandKind::Hilbert;
                config.target = Target::H(h);
                config.max_degree = max_degree;
            }
        }
        config
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{what} is {size}, above the limit {limit}; pass --override-gate to run anyway")]
    TooLarge { what: String, size: usize, limit: usize },
    #[error("invariant violated: {message}")]
    Invariant { message: String, details: Value },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::TooLarge { .. } => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let kind = match self {
            CliError::Input(_) => "invalid_input",
            CliError::TooLarge { .. } => "too_large",
            CliError::Invariant { .. } => "invariant_violation",
            CliError::Io(_) => "io",
        };
        let mut body = json!({ "kind": kind, "message": self.to_string() });
        if let CliError::Invariant { details, .. } = self {
            body["details"] = details.clone();
        }
        json!({ "error": body })
    }
}

impl From<HessError> for CliError {
    fn from(e: HessError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<CohomError> for CliError {
    fn from(e: CohomError) -> Self {
        match e {
            CohomError::TooLarge { what, size, limit } => CliError::TooLarge { what, size, limit },
            CohomError::Disconnected(h) => CliError::Input(format!("{h} is disconnected")),
            other => CliError::Invariant { message: other.to_string(), details: Value::Null },
        }
    }
}

impl From<GkmError> for CliError {
    fn from(e: GkmError) -> Self {
        match e {
            GkmError::TooLarge { n, max } => CliError::TooLarge { what: "graph size".into(), size: n, limit: max },
            other => CliError::Invariant { message: other.to_string(), details: Value::Null },
        }
    }
}

/// Rendered result of a command: JSON for everything except DOT export.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Json(Value),
    Text(String),
}

impl Output {
    pub fn render(&self, pretty: bool) -> String {
        match self {
            Output::Json(v) if pretty => serde_json::to_string_pretty(v).expect("JSON values serialize"),
            Output::Json(v) => v.to_string(),
            Output::Text(s) => s.trim_end().to_string(),
        }
    }
}

impl RunConfig {
    pub fn limits(&self) -> Limits {
        if self.override_gate {
            Limits::unbounded()
        } else {
            Limits::default()
        }
    }

    fn h(&self) -> Result<HessenbergFunction, CliError> {
        match &self.target {
            Target::H(s) => Ok(s.parse()?),
            Target::N(_) => Err(CliError::Input(format!("{} needs a Hessenberg function", self.command.name()))),
        }
    }

    fn n(&self) -> Result<usize, CliError> {
        match self.target {
            Target::N(n) if n >= 1 => Ok(n),
            Target::N(_) => Err(CliError::Input("n must be positive".into())),
            Target::H(_) => Err(CliError::Input(format!("{} needs -n", self.command.name()))),
        }
    }

    /// File name for this result; everything that changes the output is in it.
    pub fn cache_key(&self) -> String {
        let target = match &self.target {
            Target::H(s) => {
                s.parse::<HessenbergFunction>().map_or_else(|_| s.trim().replace(' ', ""), |h| h.to_string())
            }
            Target::N(n) => format!("n{n}"),
        };
        let mut key = format!("{}_{}_{}", self.command.name(), target, VERSION_TAG);
        match self.command {
            CommandKind::CheckGen2 | CommandKind::Classify => key.push_str(&format!("_{}", self.model)),
            _ => {}
        }
        if !self.connected_only {
            key.push_str("_all");
        }
        if let Some(d) = self.max_degree {
            key.push_str(&format!("_d{d}"));
        }
        if self.override_gate {
            key.push_str("_ungated");
        }
        key.push_str(if self.dot { ".dot" } else { ".json" });
        key
    }

    pub fn resolved_cache_dir(&self) -> Option<PathBuf> {
        if self.no_cache {
            return None;
        }
        self.cache_dir
            .clone()
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .or_else(|| std::env::var_os("HOME").map(|home| Path::new(&home).join(".cache").join("hessgkm")))
    }
}

/// Runs the command, consulting and filling the cache. Returns the rendered
/// output and whether it came from the cache.
pub fn run(config: &RunConfig) -> Result<(String, bool), CliError> {
    if let Some(threads) = config.threads {
        // A second initialization in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let cache = config.resolved_cache_dir().map(|dir| dir.join(config.cache_key()));
    let stored = match &cache {
        Some(path) => fs::read_to_string(path).ok(),
        None => None,
    };
    if let Some(text) = stored {
        return Ok((render_stored(&text, config), true));
    }
    let output = execute(config)?;
    let canonical = output.render(false);
    if let Some(path) = &cache {
        if let Err(e) = write_atomic(path, &canonical) {
            eprintln!("warning: could not write cache file {}: {e}", path.display());
        }
    }
    Ok((output.render(config.pretty), false))
}

fn render_stored(text: &str, config: &RunConfig) -> String {
    if config.dot || !config.pretty {
        return text.to_string();
    }
    match serde_json::from_str::<Value>(text) {
        Ok(v) => Output::Json(v).render(true),
        Err(_) => text.to_string(),
    }
}

/// Writes to a temporary file in the same directory, then renames it over
/// the destination.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Runs the command without the cache.
pub fn execute(config: &RunConfig) -> Result<Output, CliError> {
    let limits = config.limits();
    match config.command {
        CommandKind::Analyze => analyze(&config.h()?).map(Output::Json),
        CommandKind::Poincare => Ok(Output::Json(poincare(&config.h()?))),
        CommandKind::CheckGen2 => {
            let report = is_degree2_generated(&config.h()?, config.model, &limits)?;
            Ok(Output::Json(serde_json::to_value(report).expect("report serializes")))
        }
        CommandKind::Classify => classify(config.n()?, config.model, config.connected_only, &limits).map(Output::Json),
        CommandKind::Verify => {
            let n = config.n()?;
            let results = verify_size(n, &limits);
            let table = json!({
                "n": n,
                "checks": results,
                "all_passed": results.iter().all(|r| r.passed != Some(false)),
            });
            if results.iter().any(|r| r.passed == Some(false)) {
                return Err(CliError::Invariant { message: format!("verification failed at n = {n}"), details: table });
            }
            Ok(Output::Json(table))
        }
        CommandKind::Graph => {
            let h = config.h()?;
            let graph = build_graph_with_limit(&h, limits.max_graph_n)?;
            Ok(if config.dot { Output::Text(graph.export_dot()) } else { Output::Json(graph.to_json()) })
        }
        CommandKind::Hilbert => hilbert(&config.h()?, config.max_degree, &limits).map(Output::Json),
    }
}

fn diagram(h: &HessenbergFunction) -> Vec<String> {
    let n = h.n();
    (1..=n).map(|i| (1..=n).map(|j| if i <= h.get(j) { '#' } else { '.' }).collect()).collect()
}

pub fn analyze(h: &HessenbergFunction) -> Result<Value, CliError> {
    let (bottom, ell) = h.bottom_and_ell_sets();
    Ok(json!({
        "h": h.to_string(),
        "n": h.n(),
        "diagram": diagram(h),
        "dimension": h.dimension(),
        "connected": h.is_connected(),
        "bottom": bottom,
        "ell": ell,
        "lollipop": h.lollipop_form(),
        "forbidden_minor": h.has_forbidden_minor(),
    }))
}

fn is_h1_family(h: &HessenbergFunction) -> bool {
    let n = h.n();
    n >= 2 && h.get(1) >= 2 && (2..=n).all(|j| h.get(j) == n)
}

pub fn poincare(h: &HessenbergFunction) -> Value {
    let direct = poincare_direct(h);
    let recursive = poincare_recursive(h);
    let closed = is_h1_family(h).then(|| poincare_h1_closed(h.n(), h.get(1)));
    let agree = direct == recursive && closed.as_ref().is_none_or(|c| *c == direct);
    json!({
        "h": h.to_string(),
        "direct": direct.to_string(),
        "recursive": recursive.to_string(),
        "closed_form": closed.map(|c| c.to_string()),
        "betti": direct.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "agree": agree,
    })
}

/// The lollipop shapes need `1 <= a < b <= n`, so the comparison starts at
/// `n = 2`; the single point `n = 1` has no shape yet is trivially generated.
pub fn classify(n: usize, model: SpanModel, connected_only: bool, limits: &Limits) -> Result<Value, CliError> {
    if n < 2 {
        return Err(CliError::Input("classification needs n >= 2".into()));
    }
    let mut rows = Vec::new();
    let mut disagreements = Vec::new();
    for h in enumerate(n, connected_only) {
        let lollipop = h.lollipop_form();
        if !h.is_connected() {
            rows.push(json!({ "h": h.to_string(), "connected": false, "lollipop": lollipop, "generated": null }));
            continue;
        }
        let report = is_degree2_generated(&h, model, limits)?;
        let agree = report.generated_in_degree_2 == lollipop.is_some();
        if !agree {
            disagreements.push(h.to_string());
        }
        rows.push(json!({
            "h": h.to_string(),
            "connected": true,
            "lollipop": lollipop,
            "generated": report.generated_in_degree_2,
            "first_failure_degree": report.first_failure_cohomological,
            "agree": agree,
        }));
    }
    let generated = rows.iter().filter(|r| r["generated"] == json!(true)).count();
    let table = json!({
        "n": n,
        "model": model,
        "rows": rows,
        "generated_count": generated,
        "all_agree": disagreements.is_empty(),
    });
    if !disagreements.is_empty() {
        return Err(CliError::Invariant {
            message: format!("checker and lollipop form disagree on {}", disagreements.join(" ")),
            details: table,
        });
    }
    Ok(table)
}

pub fn hilbert(h: &HessenbergFunction, max_degree: Option<usize>, limits: &Limits) -> Result<Value, CliError> {
    if !h.is_connected() {
        return Err(CliError::Input(format!("{h} is disconnected")));
    }
    let n = h.n();
    let d_max = max_degree.unwrap_or(h.dimension());
    let quotient = invariant_quotient_hilbert(h, d_max, limits)?;
    let subring = subring_hilbert(h, limits)?;
    let poincare = poincare_direct(h);
    let is_family = n >= 4 && HessenbergFunction::lollipop_p(n).is_ok_and(|p| p == *h);
    let bounds = is_family.then(|| subring_bounds(n));
    let deficit = &poincare - &subring;
    Ok(json!({
        "h": h.to_string(),
        "poincare": poincare.to_string(),
        "invariants": hilb_invariants(h).to_string(),
        "invariant_quotient": quotient.to_string(),
        "invariant_quotient_max_degree": d_max,
        "subring": subring.to_string(),
        "deficit": deficit.to_string(),
        "generated_in_degree_2": deficit == QPoly::zero(),
        "bounds": bounds,
    }))
}
