//! Command-line front-end: generation, detection, strip and separator
//! operations, tree extraction and the verification harness. Every command
//! except `gen` prints one JSON certificate.
//!
//! Exit codes: 0 for a definitive answer, 1 for bad input, 2 when a cap or
//! an inconclusive search prevented one.

pub mod harness;

use std::fs;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use tpfree::extraction::{
    banana, connectify, extract_tree, forest_pipeline, kp_trichotomy, validate_connectified, verify_banana,
    BananaOutcome, Extraction, StageStatus, Trichotomy,
};
use tpfree::generators::{
    line_graph, make_a_seed, make_config, make_t_d_r, make_wall, random_class_graph, subdivide_each_edge,
    CaterpillarSpec, SampleError,
};
use tpfree::graph::io::{parse_any, to_graph6, to_json};
use tpfree::graph::{treewidth, validate_decomposition, DecompositionReport};
use tpfree::obstructions::{
    class_membership, find_biclique, find_clique, find_prism, find_pyramid, find_strong_block, find_theta, ConfigKind,
    Obstruction, Outcome,
};
use tpfree::separators::{seed_separator, SeparatorCertificate, SeparatorContext, SeparatorError};
use tpfree::strips::{saturate_strip, validate_strip, SaturationError, StripStructure};
use tpfree::{Error, Graph, PathSystem, VertexSet};

pub const SCHEMA: &str = "v1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exit {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(name = "tpfree", version, about = "Constructive tools for theta- and prism-free graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Io {
    /// Input graph (graph6 or edge JSON); "-" reads standard input.
    #[arg(long = "in", default_value = "-")]
    input: String,
    /// Output path; "-" writes standard output.
    #[arg(long, default_value = "-")]
    out: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run searches past their size caps.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Theta,
    Prism,
    Pyramid,
    Wall,
    Tdr,
    Caterpillar,
    Seed,
    LineGraph,
    Subdivide,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum DetectKind {
    Theta,
    Prism,
    Pyramid,
    Clique,
    Biclique,
    StrongBlock,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit a named graph.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Three path lengths for theta, prism and pyramid.
        #[arg(long, value_delimiter = ',', default_values_t = [2, 2, 2])]
        lengths: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        t: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Caterpillar legs along the spine, e.g. "L.LL".
        #[arg(long, default_value = "L")]
        spec: String,
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        format: Format,
        #[command(flatten)]
        io: Io,
    },
    /// Search for one obstruction.
    Detect {
        #[arg(long, value_enum)]
        kind: DetectKind,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[command(flatten)]
        io: Io,
    },
    /// Membership in 𝒞, 𝒞_t and 𝒞_t(F).
    Class {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        forest: Option<String>,
        #[command(flatten)]
        io: Io,
    },
    /// Exact treewidth with a decomposition.
    Tw {
        #[command(flatten)]
        io: Io,
    },
    /// Validate or saturate a strip-structure
    Strip {
        #[command(subcommand)]
        op: StripOp,
    },
    /// Separate a vertex from the apex of a strip-structure or an a-seed.
    Sep {
        #[arg(long)]
        apex: usize,
        #[arg(long)]
        target: usize,
        #[arg(long, conflicts_with = "seed_set", required_unless_present = "seed_set")]
        strip: Option<String>,
        /// JSON list of the vertices of H.
        #[arg(long = "seed-set", alias = "seed-json")]
        seed_set: Option<String>,
        #[arg(long, default_value_t = 3)]
        t: usize,
        #[command(flatten)]
        io: Io,
    },
    /// Bananas, tree extraction and the forest pipeline
    Tree {
        #[command(subcommand)]
        op: TreeOp,
    },
    /// Run a registered check.
    Verify {
        #[arg(long)]
        lemma: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long = "max-n", default_value_t = 13)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value = "-")]
        out: String,
    },
}

#[derive(Subcommand)]
enum StripOp {
    /// Check the strip axioms against the graph
    Validate {
        #[arg(long)]
        strip: String,
        #[command(flatten)]
        io: Io,
    },
    /// Saturate a rich strip-structure
    Saturate {
        #[arg(long)]
        strip: String,
        #[command(flatten)]
        io: Io,
    },
}

#[derive(Args, Clone)]
struct PathsArgs {
    #[arg(long)]
    a: usize,
    #[arg(long)]
    b: usize,
    /// JSON list of paths, each a vertex list from a to b.
    #[arg(long)]
    paths: String,
}

#[derive(Subcommand)]
enum TreeOp {
    /// Grow T_d^r from forward-wired a-b paths
    Extract {
        #[command(flatten)]
        ps: PathsArgs,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        io: Io,
    },
    /// Pick nu paths with a transitive wiring
    Banana {
        #[command(flatten)]
        ps: PathsArgs,
        #[arg(long)]
        nu: usize,
        #[command(flatten)]
        io: Io,
    },
    /// Connect a vertex set by a path, star or line graph
    Connectify {
        /// JSON list of the vertices of S.
        #[arg(long)]
        set: String,
        #[arg(long)]
        h: usize,
        #[command(flatten)]
        io: Io,
    },
    /// Biclique, clique or induced T_d^r
    Kp {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        io: Io,
    },
    /// Run every stage for a forest F
    Pipeline {
        #[arg(long)]
        forest: String,
        #[arg(long)]
        t: usize,
        #[arg(long = "block-order")]
        block_order: Option<usize>,
        #[command(flatten)]
        io: Io,
    },
}

/// A failed command: exit code and message.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::CapExceeded { .. }) { 2 } else { 1 };
        Failure(code, e.to_string())
    }
}

fn input_error(msg: impl Into<String>) -> Failure {
    Failure(1, msg.into())
}

type Res<T> = std::result::Result<T, Failure>;

/// Reads inputs and hashes them, in order, into the certificate digest.
#[derive(Default)]
struct Inputs {
    hasher: Sha256,
    stdin_used: bool,
}

impl Inputs {
    fn read(&mut self, path: &str) -> Res<String> {
        let text = if path == "-" {
            if self.stdin_used {
                return Err(input_error("standard input can feed only one argument"));
            }
            self.stdin_used = true;
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| input_error(format!("stdin: {e}")))?;
            s
        } else {
            fs::read_to_string(path).map_err(|e| input_error(format!("{path}: {e}")))?
        };
        self.hasher.update((text.len() as u64).to_le_bytes());
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    fn graph(&mut self, path: &str) -> Res<Graph> {
        Ok(parse_any(&self.read(path)?)?)
    }

    fn json<T: serde::de::DeserializeOwned>(&mut self, path: &str) -> Res<T> {
        let text = self.read(path)?;
        serde_json::from_str(&text).map_err(|e| input_error(format!("{path}: {e}")))
    }

    fn digest(&self) -> String {
        format!("{:x}", self.hasher.clone().finalize())
    }
}

/// The JSON printed by every command but `gen`.
#[derive(Serialize)]
pub struct Certificate {
    pub schema: &'static str,
    pub kind: String,
    pub version: &'static str,
    pub seed: u64,
    pub input_digest: String,
    pub outcome: String,
    pub verified: bool,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
    pub witness: Value,
}

/// What a command hands back before the certificate is assembled.
struct Report {
    outcome: &'static str,
    verified: bool,
    code: i32,
    extra: Map<String, Value>,
    witness: Value,
}

impl Report {
    fn new(outcome: &'static str, verified: bool, witness: Value) -> Self {
        Report { outcome, verified, code: 0, extra: Map::new(), witness }
    }

    fn inconclusive(mut self) -> Self {
        self.code = 2;
        self
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("witnesses serialize")
}

pub fn run<I, S>(argv: I) -> Exit
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Exit { code: 1, stdout: String::new(), stderr: text }
            } else {
                Exit { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut inputs = Inputs::default();
    let (kind, seed, out) = describe(&cli.cmd);
    let result = match cli.cmd {
        Cmd::Gen { kind, lengths, t, d, r, k, n, spec, format, io } => {
            return finish(gen(&mut inputs, kind, &lengths, t, d, r, k, n, &spec, format, &io), &out);
        }
        Cmd::Detect { kind, k, io } => detect(&mut inputs, kind, k, &io),
        Cmd::Class { t, forest, io } => class(&mut inputs, t, forest.as_deref(), &io),
        Cmd::Tw { io } => tw(&mut inputs, &io),
        Cmd::Strip { op: StripOp::Validate { strip, io } } => strip_validate(&mut inputs, &strip, &io),
        Cmd::Strip { op: StripOp::Saturate { strip, io } } => strip_saturate(&mut inputs, &strip, &io),
        Cmd::Sep { apex, target, strip, seed_set, t, io } => {
            sep(&mut inputs, apex, target, strip.as_deref(), seed_set.as_deref(), t, &io)
        }
        Cmd::Tree { op } => tree(&mut inputs, op),
        Cmd::Verify { lemma, samples, max_n, seed, jobs, .. } => verify(&lemma, samples, max_n, seed, jobs),
    };
    let text = result.map(|rep| {
        let cert = Certificate {
            schema: SCHEMA,
            kind,
            version: VERSION,
            seed,
            input_digest: inputs.digest(),
            outcome: rep.outcome.into(),
            verified: rep.verified,
            extra: rep.extra,
            witness: rep.witness,
        };
        let mut s = serde_json::to_string_pretty(&cert).expect("certificates serialize");
        s.push('\n');
        (rep.code, s)
    });
    finish(text, &out)
}

fn describe(cmd: &Cmd) -> (String, u64, String) {
    let io_of = |io: &Io| (io.seed, io.out.clone());
    let (kind, (seed, out)) = match cmd {
        Cmd::Gen { io, .. } => ("gen", io_of(io)),
        Cmd::Detect { io, .. } => ("detect", io_of(io)),
        Cmd::Class { io, .. } => ("class", io_of(io)),
        Cmd::Tw { io } => ("tw", io_of(io)),
        Cmd::Strip { op: StripOp::Validate { io, .. } } => ("strip-validate", io_of(io)),
        Cmd::Strip { op: StripOp::Saturate { io, .. } } => ("strip-saturate", io_of(io)),
        Cmd::Sep { io, .. } => ("sep", io_of(io)),
        Cmd::Tree { op } => match op {
            TreeOp::Extract { io, .. } => ("tree-extract", io_of(io)),
            TreeOp::Banana { io, .. } => ("tree-banana", io_of(io)),
            TreeOp::Connectify { io, .. } => ("tree-connectify", io_of(io)),
            TreeOp::Kp { io, .. } => ("tree-kp", io_of(io)),
            TreeOp::Pipeline { io, .. } => ("tree-pipeline", io_of(io)),
        },
        Cmd::Verify { seed, out, .. } => ("verify", (*seed, out.clone())),
    };
    (kind.into(), seed, out)
}

fn finish(result: Res<(i32, String)>, out: &str) -> Exit {
    match result {
        Ok((code, text)) if out == "-" => Exit { code, stdout: text, stderr: String::new() },
        Ok((code, text)) => match fs::write(out, text) {
            Ok(()) => Exit { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Exit { code: 1, stdout: String::new(), stderr: format!("error: {out}: {e}\n") },
        },
        Err(Failure(code, msg)) => Exit { code, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

#[allow(clippy::too_many_arguments)]
fn gen(
    inputs: &mut Inputs,
    kind: GenKind,
    lengths: &[usize],
    t: usize,
    d: usize,
    r: usize,
    k: usize,
    n: usize,
    spec: &str,
    format: Format,
    io: &Io,
) -> Res<(i32, String)> {
    let config = |c: ConfigKind| -> Res<Graph> {
        let &[a, b, l] = lengths else {
            return Err(input_error("--lengths takes exactly three values"));
        };
        Ok(make_config(c, [a, b, l])?.0)
    };
    let g = match kind {
        GenKind::Theta => config(ConfigKind::Theta)?,
        GenKind::Prism => config(ConfigKind::Prism)?,
        GenKind::Pyramid => config(ConfigKind::Pyramid)?,
        GenKind::Wall => make_wall(t)?,
        GenKind::Tdr => make_t_d_r(d, r)?.0,
        GenKind::Caterpillar => spec.parse::<CaterpillarSpec>()?.build(),
        GenKind::Seed => make_a_seed(&spec.parse::<CaterpillarSpec>()?)?.graph,
        GenKind::LineGraph => line_graph(&inputs.graph(&io.input)?)?,
        GenKind::Subdivide => subdivide_each_edge(&inputs.graph(&io.input)?, k),
        GenKind::Random => match random_class_graph(n, t, io.seed) {
            Ok(g) => g,
            Err(SampleError::Input(e)) => return Err(e.into()),
            Err(e @ SampleError::Exhausted { .. }) => return Err(Failure(2, e.to_string())),
        },
    };
    let text = match format {
        Format::Graph6 => to_graph6(&g),
        Format::Json => to_json(&g),
    };
    Ok((0, text + "\n"))
}

fn obstruction_witness(g: &Graph, o: &Obstruction) -> (bool, Value) {
    let paths: Vec<Vec<usize>> = match o {
        Obstruction::Theta(t) => t.paths.iter().map(|p| p.vertices().to_vec()).collect(),
        Obstruction::Prism(p) => p.paths.iter().map(|p| p.vertices().to_vec()).collect(),
        _ => Vec::new(),
    };
    let verified = o.validate(g).is_ok();
    let kind = to_value(o)["kind"].clone();
    (verified, json!({ "kind": kind, "vertices": o.vertices(), "paths": paths, "verified": verified, "detail": o }))
}

fn outcome_report<T>(outcome: Outcome<T>, witness: impl FnOnce(T) -> (bool, Value)) -> Report {
    match outcome {
        Outcome::Found(x) => {
            let (ok, w) = witness(x);
            Report::new("found", ok, w)
        }
        Outcome::Absent => Report::new("absent", true, Value::Null),
        Outcome::Inconclusive(why) => Report::new("inconclusive", false, json!({ "reason": why })).inconclusive(),
    }
}

fn found_or_absent<T>(x: Option<T>) -> Outcome<T> {
    x.map_or(Outcome::Absent, Outcome::Found)
}

fn detect(inputs: &mut Inputs, kind: DetectKind, k: usize, io: &Io) -> Res<Report> {
    let g = inputs.graph(&io.input)?;
    let obstruction = |o: Obstruction| obstruction_witness(&g, &o);
    Ok(match kind {
        DetectKind::Theta => outcome_report(find_theta(&g, io.force).map(Obstruction::Theta), obstruction),
        DetectKind::Prism => outcome_report(find_prism(&g, io.force).map(Obstruction::Prism), obstruction),
        DetectKind::Pyramid => outcome_report(find_pyramid(&g, io.force), |p| {
            let ok = p.validate(&g).is_ok();
            let paths: Vec<Vec<usize>> = p.paths.iter().map(|q| q.vertices().to_vec()).collect();
            (ok, json!({ "kind": "pyramid", "vertices": p.vertices(), "paths": paths, "verified": ok, "detail": p }))
        }),
        DetectKind::Clique => outcome_report(found_or_absent(find_clique(&g, k).map(Obstruction::Clique)), obstruction),
        DetectKind::Biclique => outcome_report(
            found_or_absent(find_biclique(&g, k).map(|(left, right)| Obstruction::Biclique { left, right })),
            obstruction,
        ),
        DetectKind::StrongBlock => outcome_report(find_strong_block(&g, k)?, |w| {
            let ok = w.validate(&g, k).is_ok();
            let paths: Vec<Vec<usize>> = w.systems.iter().flat_map(|s| s.paths.clone()).collect();
            (ok, json!({ "kind": "strong_block", "vertices": w.block, "paths": paths, "verified": ok, "detail": w }))
        }),
    })
}

fn class(inputs: &mut Inputs, t: usize, forest: Option<&str>, io: &Io) -> Res<Report> {
    let g = inputs.graph(&io.input)?;
    let f = forest.map(|p| inputs.graph(p)).transpose()?;
    let rep = class_membership(&g, t, f.as_ref(), io.force)?;
    let verified = rep.witnesses.iter().all(|w| w.validate(&g).is_ok());
    let answer = if f.is_some() { rep.in_c_t_f } else { rep.in_c_t };
    let report = match answer {
        Some(true) => Report::new("member", verified, to_value(&rep)),
        Some(false) => Report::new("non_member", verified, to_value(&rep)),
        None => Report::new("inconclusive", false, to_value(&rep)).inconclusive(),
    };
    Ok(report)
}

fn tw(inputs: &mut Inputs, io: &Io) -> Res<Report> {
    let g = inputs.graph(&io.input)?;
    let res = treewidth(&g)?;
    let verified = matches!(validate_decomposition(&g, &res.decomposition), DecompositionReport::Valid { width } if width == res.width);
    let mut rep = Report::new(if res.exact { "exact" } else { "bounds" }, verified, to_value(&res.decomposition));
    if res.exact {
        rep.extra.insert("treewidth".into(), json!(res.width));
    } else {
        rep = rep.inconclusive();
    }
    rep.extra.insert("lower".into(), json!(res.lower));
    rep.extra.insert("upper".into(), json!(res.upper));
    Ok(rep)
}

fn strip_input(inputs: &mut Inputs, strip: &str, io: &Io) -> Res<(Graph, StripStructure)> {
    let g = inputs.graph(&io.input)?;
    let s: StripStructure = inputs.json(strip)?;
    let touched = s.support_plus();
    if let Some(v) = touched.iter().find(|&&v| v >= g.n()) {
        return Err(input_error(format!("strip uses vertex {v} outside the graph")));
    }
    Ok((g, s))
}

fn strip_validate(inputs: &mut Inputs, strip: &str, io: &Io) -> Res<Report> {
    let (g, s) = strip_input(inputs, strip, io)?;
    Ok(match validate_strip(&g, &s) {
        Ok(r) => Report::new("valid", true, to_value(&r)),
        Err(v) => Report::new("invalid", true, json!({ "axiom": v.axiom.to_string(), "detail": v.detail, "vertices": v.witness })),
    })
}

fn saturation_failure(g: &Graph, e: SaturationError) -> Res<Report> {
    match e {
        SaturationError::NotEligible(why) => Err(input_error(why)),
        SaturationError::Obstruction { stage, witness } => {
            let (ok, w) = obstruction_witness(g, &witness);
            Ok(Report::new("obstruction", ok, json!({ "stage": stage, "obstruction": w })))
        }
        SaturationError::Failed { stage, detail } => {
            Ok(Report::new("failed", false, json!({ "stage": stage, "detail": detail })).inconclusive())
        }
    }
}

fn strip_saturate(inputs: &mut Inputs, strip: &str, io: &Io) -> Res<Report> {
    let (g, s) = strip_input(inputs, strip, io)?;
    match saturate_strip(&g, &s) {
        Ok(sat) => {
            let ok = s.le(&sat.strip) && validate_strip(&g, &sat.strip).is_ok_and(|r| r.substantial && r.rich);
            Ok(Report::new("saturated", ok, to_value(&sat)))
        }
        Err(e) => saturation_failure(&g, e),
    }
}

fn separator_witness(g: &Graph, c: &SeparatorCertificate) -> (bool, Value) {
    let ok = c.verify(g).is_ok();
    let w = json!({
        "S": c.set,
        "L": c.left,
        "R": c.right,
        "bound": c.bound,
        "within_bound": c.within_bound,
        "case": c.case,
        "parts": c.parts,
        "source": c.source,
        "target": c.target,
        "verified": ok,
    });
    (ok && c.verified, w)
}

fn separator_failure(g: &Graph, e: SeparatorError) -> Res<Report> {
    match e {
        SeparatorError::Precondition(why) => Err(input_error(why)),
        SeparatorError::NotASeed(f) => Err(input_error(format!("not an a-seed: {f}"))),
        SeparatorError::Saturation(s) => saturation_failure(g, s),
        other => Ok(Report::new("obstruction", false, json!({ "detail": other.to_string() }))),
    }
}

fn sep(
    inputs: &mut Inputs,
    apex: usize,
    target: usize,
    strip: Option<&str>,
    seed_set: Option<&str>,
    t: usize,
    io: &Io,
) -> Res<Report> {
    let cert = if let Some(path) = strip {
        let (g, s) = strip_input(inputs, path, io)?;
        if s.apex != apex {
            return Err(input_error(format!("strip apex is {}, not {apex}", s.apex)));
        }
        let sat = match saturate_strip(&g, &s) {
            Ok(sat) => sat,
            Err(e) => return saturation_failure(&g, e),
        };
        let ctx = SeparatorContext::with_jewels(&g, &sat.strip, sat.jewels.clone(), t);
        match ctx.and_then(|c| c.apex_separator(target)) {
            Ok(c) => (g, c),
            Err(e) => return separator_failure(&g, e),
        }
    } else {
        let g = inputs.graph(&io.input)?;
        let h: VertexSet = inputs.json(seed_set.expect("clap requires one source"))?;
        match seed_separator(&g, apex, &h, target, t) {
            Ok(c) => (g, c),
            Err(e) => return separator_failure(&g, e),
        }
    };
    let (ok, w) = separator_witness(&cert.0, &cert.1);
    Ok(Report::new("separated", ok, w))
}

fn path_system(inputs: &mut Inputs, g: &Graph, ps: &PathsArgs) -> Res<PathSystem> {
    let paths: Vec<Vec<usize>> = inputs.json(&ps.paths)?;
    Ok(PathSystem::new(g, ps.a, ps.b, paths)?)
}

fn tree(inputs: &mut Inputs, op: TreeOp) -> Res<Report> {
    match op {
        TreeOp::Extract { ps, d, r, io } => {
            let g = inputs.graph(&io.input)?;
            let system = path_system(inputs, &g, &ps)?;
            Ok(match extract_tree(&g, &system, d, r)? {
                Extraction::Found(t) => {
                    let ok = t.validate_extraction(&g, &system, d, r).is_ok();
                    Report::new("found", ok, to_value(&t))
                }
                Extraction::Failed(f) => Report::new("failed", false, to_value(&f)),
            })
        }
        TreeOp::Banana { ps, nu, io } => {
            let g = inputs.graph(&io.input)?;
            let system = path_system(inputs, &g, &ps)?;
            Ok(match banana(&g, &system, nu)? {
                BananaOutcome::Selected(sel) => {
                    let ok = verify_banana(&g, &system, nu, &sel).is_ok();
                    Report::new("selected", ok, to_value(&sel))
                }
                BananaOutcome::Failed(f) => {
                    let mut w = to_value(&f);
                    w["stage_number"] = json!(f.stage.number());
                    Report::new("failed", false, w)
                }
            })
        }
        TreeOp::Connectify { set, h, io } => {
            let g = inputs.graph(&io.input)?;
            let s: VertexSet = inputs.json(&set)?;
            Ok(match connectify(&g, &s, h)? {
                Some(w) => Report::new("found", validate_connectified(&g, &s, h, &w).is_ok(), to_value(&w)),
                None => Report::new("absent", true, Value::Null),
            })
        }
        TreeOp::Kp { d, r, s, t, io } => {
            let g = inputs.graph(&io.input)?;
            let out = kp_trichotomy(&g, d, r, s, t)?;
            let ok = trichotomy_holds(&g, d, r, s, t, &out)?;
            let name = match out {
                Trichotomy::Biclique { .. } => "biclique",
                Trichotomy::Clique { .. } => "clique",
                Trichotomy::InducedTree { .. } => "induced_tree",
                Trichotomy::None => "none",
            };
            Ok(Report::new(name, ok, to_value(&out)))
        }
        TreeOp::Pipeline { forest, t, block_order, io } => {
            let g = inputs.graph(&io.input)?;
            let f = inputs.graph(&forest)?;
            let rep = forest_pipeline(&g, &f, t, block_order, io.force)?;
            let stuck = rep.stages.iter().any(|s| s.status == StageStatus::Inconclusive);
            let failed = rep.stages.iter().any(|s| s.status == StageStatus::Failed);
            let outcome = if stuck { "inconclusive" } else if failed { "stopped" } else { "completed" };
            let r = Report::new(outcome, !stuck, to_value(&rep));
            Ok(if stuck { r.inconclusive() } else { r })
        }
    }
}

/// Re-checks a trichotomy answer from the definitions.
fn trichotomy_holds(g: &Graph, d: usize, r: usize, s: usize, t: usize, out: &Trichotomy) -> Res<bool> {
    Ok(match out {
        Trichotomy::Biclique { left, right } => {
            left.len() == s
                && right.len() == s
                && g.is_stable(left)
                && g.is_stable(right)
                && left.iter().all(|&u| right.iter().all(|&v| g.adjacent(u, v)))
        }
        Trichotomy::Clique { vertices } => vertices.len() == t && g.is_clique(vertices),
        Trichotomy::InducedTree { map } => {
            let (pattern, _) = make_t_d_r(d, r)?;
            let distinct: VertexSet = map.iter().copied().collect();
            map.len() == pattern.n()
                && distinct.len() == map.len()
                && (0..map.len())
                    .all(|i| (i + 1..map.len()).all(|j| pattern.adjacent(i, j) == g.adjacent(map[i], map[j])))
        }
        Trichotomy::None => true,
    })
}

fn verify(lemma: &str, samples: usize, max_n: usize, seed: u64, jobs: usize) -> Res<Report> {
    let Some(check) = harness::lookup(lemma) else {
        let known: Vec<String> = harness::REGISTRY
            .iter()
            .map(|c| format!("  {:<16} {:<6} {}", c.id, c.aliases.join(","), c.description))
            .collect();
        return Err(input_error(format!("unknown check {lemma:?}; registered:\n{}", known.join("\n"))));
    };
    let cfg = harness::HarnessConfig { samples, max_n, seed, jobs };
    let summary = (check.run)(&cfg);
    let mut rep = Report::new(if summary.ok() { "pass" } else { "fail" }, summary.ok(), to_value(&summary));
    rep.extra.insert("check".into(), json!(check.id));
    rep.extra.insert("samples".into(), json!(samples));
    rep.extra.insert("max_n".into(), json!(max_n));
    Ok(rep)
}
