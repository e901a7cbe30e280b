use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

mod schema;

use rcmlab::enet::{crossing_resistance, restricted_crossing, solve_pair, Network, Orientation, ResistanceReport};
use rcmlab::exper::{self, ExperimentConfig, GammaUnit, Knobs, Quantity};
use rcmlab::fieldlab::io::{read_field, sidecar_path, write_field};
use rcmlab::fieldlab::{DgffSampler, DirichletSpec, FieldSample, PinnedWindowSampler};
use rcmlab::linalg::SolverKind;
use rcmlab::walklab::io::{occupation_pgm, trajectory_to_csv};
use rcmlab::walklab::{
    expected_exit_time_exact, interpolated_generator, return_probability_exact, simulate_ctmc, simulate_walk,
    Boundary, HeatKernelReport, WalkKernel, WalkType,
};
use rcmlab::{LatticeBox, Point};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Core(#[from] rcmlab::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Invariant(_) => 4,
            CliError::Core(e) => e.exit_code() as u8,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}

/// Random walks among DGFF conductances: samplers, resistances, walks and
/// scaling experiments.
#[derive(Parser, Debug)]
#[command(name = "rcmlab", version)]
struct Cli {
    /// Worker threads for replica sweeps (output does not depend on it).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Omit the timestamp so that identical invocations give identical bytes.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Print the JSON schema of the subcommand's output and exit.
    #[arg(long, global = true)]
    schema: bool,
    /// JSON file supplying defaults for the subcommand's flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a field and write it as CSV with a JSON sidecar.
    Sample(SampleArgs),
    /// Effective resistance between two vertex sets.
    Resistance(ResistanceArgs),
    /// Simulate one trajectory.
    Walk(WalkArgs),
    /// Exact return probability P(X_2T = 0).
    Heatkernel(HeatArgs),
    /// Exact expected exit time from B(N) with identity checks.
    Exittime(ExitArgs),
    /// Replicated sweep over gammas and sizes.
    Scaling(ScalingArgs),
    /// Crossing resistance of a rectangle.
    Crossing(CrossingArgs),
}

fn parse_serde<T: DeserializeOwned>(s: &str) -> std::result::Result<T, String> {
    serde_json::from_value(Value::String(s.to_string())).map_err(|e| e.to_string())
}

fn parse_point(s: &str) -> std::result::Result<Point, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y, got {s:?}"))?;
    Ok((x.trim().parse().map_err(|e| format!("{e}"))?, y.trim().parse().map_err(|e| format!("{e}"))?))
}

fn parse_points(s: &str) -> Result<Vec<Point>> {
    s.split(';').filter(|t| !t.trim().is_empty()).map(|t| parse_point(t).map_err(CliError::Usage)).collect()
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SampleArgs {
    /// Domain radius: the field lives on B(size).
    #[arg(long)]
    size: Option<i32>,
    /// `dgff` (zero on the ring of B(size)) or `pinned` (zero at the origin).
    #[arg(long, value_parser = ["dgff", "pinned"])]
    kind: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Margin factor of the pinned sampler.
    #[arg(long)]
    margin: Option<f64>,
    /// Field CSV path; the sidecar goes next to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ResistanceArgs {
    /// Field CSV; conductances exp(gamma (eta_u + eta_v)).
    #[arg(long, conflicts_with = "network")]
    field: Option<PathBuf>,
    /// Edge-list CSV `x1,y1,x2,y2,log_conductance`.
    #[arg(long)]
    network: Option<PathBuf>,
    #[arg(long)]
    gamma: Option<f64>,
    /// Source vertices `x,y;x,y;...` (default: the origin).
    #[arg(long, allow_hyphen_values = true)]
    source: Option<String>,
    /// Target vertices `x,y;x,y;...`.
    #[arg(long, conflicts_with = "boundary", allow_hyphen_values = true)]
    target: Option<String>,
    /// Use the outer boundary of B(N) as target, in the network on B(N+1).
    #[arg(long)]
    boundary: Option<i32>,
    #[arg(long, value_parser = parse_serde::<SolverKind>)]
    solver: Option<SolverKind>,
    /// Edge-current CSV `x1,y1,x2,y2,current` of the unit flow.
    #[arg(long)]
    currents: Option<PathBuf>,
    /// Field CSV of the voltage (1 on the source, 0 on the target).
    #[arg(long)]
    voltage: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WalkArgs {
    /// Box radius.
    #[arg(long)]
    size: Option<i32>,
    #[arg(long)]
    gamma: Option<f64>,
    /// Field CSV covering the box; sampled (pinned) when absent.
    #[arg(long)]
    field: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, value_parser = parse_serde::<Boundary>)]
    boundary: Option<Boundary>,
    /// Continuous-time chain interpolating towards the LRW (1 = LRW).
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    margin: Option<f64>,
    /// Trajectory CSV `t,x,y`.
    #[arg(long)]
    traj: Option<PathBuf>,
    /// Occupation image (plain PGM).
    #[arg(long)]
    pgm: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HeatArgs {
    #[arg(long = "T")]
    #[serde(rename = "T")]
    t: Option<usize>,
    #[arg(long)]
    gamma: Option<f64>,
    /// Radius of the reflecting box (default 2T).
    #[arg(long)]
    size: Option<i32>,
    #[arg(long)]
    field: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    margin: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExitArgs {
    /// N: exit from B(N).
    #[arg(long)]
    size: Option<i32>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    field: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    margin: Option<f64>,
    /// Field CSV of P(hit 0 before the boundary) over B(N).
    #[arg(long)]
    voltage: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScalingArgs {
    #[arg(long, value_parser = parse_serde::<Quantity>)]
    quantity: Option<Quantity>,
    #[arg(long, value_delimiter = ',')]
    gammas: Option<Vec<f64>>,
    #[arg(long, value_parser = parse_serde::<GammaUnit>)]
    gamma_unit: Option<GammaUnit>,
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<i32>>,
    #[arg(long)]
    replicas: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    margin: Option<f64>,
    #[arg(long, value_parser = parse_serde::<SolverKind>)]
    solver: Option<SolverKind>,
    /// Raw per-replica values, `gamma,N,replica,seed,value_log`.
    #[arg(long = "ledger")]
    ledger_path: Option<String>,
    #[arg(skip)]
    knobs: Option<Knobs>,
    #[arg(skip)]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CrossingArgs {
    /// Rectangle `WxH` (vertices), centred at the origin.
    #[arg(long)]
    rect: Option<String>,
    #[arg(long, value_parser = parse_serde::<Orientation>)]
    orientation: Option<Orientation>,
    /// Restricted crossing to `{n} x [a, b]` of a square `B(n)`.
    #[arg(long, allow_hyphen_values = true)]
    restricted: Option<String>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    field: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    margin: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Overlays the explicitly given flags on the config file's values.
fn resolve<T: Serialize + DeserializeOwned>(explicit: &T, config: &Option<Value>) -> Result<T> {
    let mut base = match config {
        None => json!({}),
        Some(v) if v.is_object() => v.clone(),
        Some(_) => return usage("the config file must hold a JSON object"),
    };
    let ex = serde_json::to_value(explicit).map_err(|e| CliError::Usage(e.to_string()))?;
    for (k, v) in ex.as_object().into_iter().flatten() {
        if !v.is_null() {
            base[k] = v.clone();
        }
    }
    serde_json::from_value(base).map_err(|e| CliError::Usage(format!("config: {e}")))
}

fn need_seed(seed: Option<u64>) -> Result<u64> {
    seed.ok_or_else(|| CliError::Usage("--seed is required for randomized runs".into()))
}

fn json_err(e: serde_json::Error) -> CliError {
    CliError::Core(e.into())
}

struct Ctx {
    deterministic: bool,
    workers: Option<usize>,
}

impl Ctx {
    fn emit(&self, command: &str, config: &impl Serialize, result: Value, out: Option<&Path>) -> Result<()> {
        let mut doc = json!({ "command": command, "config": config, "result": result });
        if !self.deterministic {
            let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
            doc["timestamp"] = json!(now);
        }
        let text = serde_json::to_string_pretty(&doc).map_err(json_err)? + "\n";
        match out {
            Some(p) => fs::write(p, text)?,
            None => stdout(&text)?,
        }
        Ok(())
    }
}

/// Field on `window`: read from `path`, flat when `gamma = 0`, else sampled
/// pinned at the origin.
fn field_on(window: LatticeBox, path: &Option<PathBuf>, gamma: f64, seed: Option<u64>, margin: f64) -> Result<FieldSample> {
    if let Some(p) = path {
        let f = read_field(p)?;
        if !f.domain.contains_box(&window) {
            return usage(format!("field in {} does not cover the requested box", p.display()));
        }
        return Ok(f.restrict(&window)?);
    }
    if gamma == 0.0 {
        return Ok(FieldSample::constant(window, 0.0));
    }
    Ok(PinnedWindowSampler::new(window, margin)?.sample(need_seed(seed)?, 0))
}

fn sample(ctx: &Ctx, mut a: SampleArgs) -> Result<()> {
    let size = *a.size.get_or_insert(8);
    if size < 0 {
        return usage("--size must be nonnegative");
    }
    let seed = need_seed(a.seed)?;
    let dom = LatticeBox::ball(size);
    let field = match a.kind.get_or_insert_with(|| "dgff".into()).as_str() {
        "dgff" => DgffSampler::new(dom, DirichletSpec::Boundary.mask(&dom)?)?.sample(seed, 0),
        _ => PinnedWindowSampler::new(dom, *a.margin.get_or_insert(4.0))?.sample(seed, 0),
    };
    let mut result = json!({
        "domain": [dom.x0, dom.x1, dom.y0, dom.y1],
        "kind": field.kind,
        "seed": seed,
        "max": field.max(),
        "origin": field.at((0, 0))?,
    });
    match &a.out {
        Some(p) => {
            write_field(&field, p)?;
            result["csv"] = json!(p);
            result["sidecar"] = json!(sidecar_path(p));
        }
        None => result["values"] = json!(field.values),
    }
    ctx.emit("sample", &a, result, None)
}

fn network_for(field: &Option<PathBuf>, network: &Option<PathBuf>, gamma: Option<f64>, boundary: Option<i32>) -> Result<Network> {
    match (field, network) {
        (Some(f), None) => {
            let gamma = gamma.ok_or_else(|| CliError::Usage("--gamma is required with --field".into()))?;
            let mut fs = read_field(f)?;
            if let Some(n) = boundary {
                fs = fs.restrict(&LatticeBox::ball(n + 1))?;
            }
            Ok(Network::from_field(&fs, gamma)?)
        }
        (None, Some(n)) => Ok(Network::from_csv(&fs::read_to_string(n)?)?),
        _ => usage("give exactly one of --field and --network"),
    }
}

fn write_currents(net: &Network, flow: &[f64], path: &Path) -> Result<()> {
    let mut s = String::from("x1,y1,x2,y2,current\n");
    for (e, &(u, v)) in net.edges().iter().enumerate() {
        if let (Some(p), Some(q)) = (net.coord(u), net.coord(v)) {
            s.push_str(&format!("{},{},{},{},{}\n", p.0, p.1, q.0, q.1, flow[e]));
        }
    }
    Ok(fs::write(path, s)?)
}

/// Writes `values` (per network vertex) as a field over the bounding box of
/// the vertex coordinates, zero where there is no vertex.
fn write_voltage(net: &Network, values: &[f64], path: &Path) -> Result<()> {
    let pts: Vec<(Point, f64)> = (0..net.n_vertices()).filter_map(|v| net.coord(v).map(|p| (p, values[v]))).collect();
    if pts.is_empty() {
        return usage("the network has no coordinates");
    }
    let (x0, x1) = (pts.iter().map(|p| p.0 .0).min().unwrap(), pts.iter().map(|p| p.0 .0).max().unwrap());
    let (y0, y1) = (pts.iter().map(|p| p.0 .1).min().unwrap(), pts.iter().map(|p| p.0 .1).max().unwrap());
    let dom = LatticeBox::new(x0, x1, y0, y1)?;
    let mut vals = vec![0.0; dom.len()];
    for (p, v) in pts {
        vals[dom.index(p).unwrap()] = v;
    }
    write_field(&FieldSample::synthetic(dom, |p| vals[dom.index(p).unwrap()]), path)?;
    Ok(())
}

fn resistance(ctx: &Ctx, a: ResistanceArgs) -> Result<()> {
    let net = network_for(&a.field, &a.network, a.gamma, a.boundary)?;
    let src = match &a.source {
        Some(s) => parse_points(s)?,
        None => vec![(0, 0)],
    };
    let dst = match (&a.target, a.boundary) {
        (Some(t), None) => parse_points(t)?,
        (None, Some(n)) => LatticeBox::ball(n).outer_boundary(),
        _ => return usage("give exactly one of --target and --boundary"),
    };
    let (av, bv) = (net.vertices_of(&src)?, net.vertices_of(&dst)?);
    let sol = solve_pair(&net, &av, &bv, a.solver.unwrap_or_default())?;
    if let Some(p) = &a.currents {
        write_currents(&net, &sol.flow.values, p)?;
    }
    if let Some(p) = &a.voltage {
        write_voltage(&net, &sol.potential.values, p)?;
    }
    let report = ResistanceReport::new(&net, &av, &bv, &sol);
    let result = serde_json::to_value(&report).map_err(json_err)?;
    ctx.emit("resistance", &a, result, a.out.as_deref())?;
    if !sol.resistance.is_infinite() {
        sol.flow.check_unit(&net).map_err(|e| CliError::Invariant(e.to_string()))?;
    }
    Ok(())
}

fn walk(ctx: &Ctx, mut a: WalkArgs) -> Result<()> {
    let size = *a.size.get_or_insert(32);
    let gamma = *a.gamma.get_or_insert(0.0);
    let seed = need_seed(a.seed)?;
    let steps = *a.steps.get_or_insert(1000);
    let boundary = *a.boundary.get_or_insert_with(Boundary::default);
    let dom = LatticeBox::ball(size);
    let field = field_on(dom, &a.field, gamma, Some(seed), *a.margin.get_or_insert(4.0))?;
    let rec = match a.theta {
        None => simulate_walk(&WalkKernel::new(&field, gamma, boundary)?, (0, 0), steps, seed)?,
        Some(theta) => simulate_ctmc(&interpolated_generator(&field, gamma, theta)?, (0, 0), steps, seed)?,
    };
    if let Some(p) = &a.traj {
        fs::write(p, trajectory_to_csv(&rec))?;
    }
    if let Some(p) = &a.pgm {
        fs::write(p, occupation_pgm(&dom, &rec.occupation(&dom)))?;
    }
    let last = *rec.steps.last().unwrap();
    let walk_type = match a.theta {
        None => WalkType::Conductance,
        Some(t) => WalkType::Interpolated(t),
    };
    let result = json!({
        "walk": walk_type,
        "boundary": boundary,
        "seed": seed,
        "steps_taken": rec.steps.len() - 1,
        "final_time": last.0,
        "final_position": [last.1 .0, last.1 .1],
        "exited": dom.is_ring(last.1) && boundary == Boundary::Absorb,
        "max_distance": rec.positions().map(|p| p.0.abs().max(p.1.abs())).max().unwrap_or(0),
    });
    ctx.emit("walk", &a, result, a.out.as_deref())?;
    if !rec.is_nearest_neighbour() {
        return Err(CliError::Invariant("trajectory has a non-nearest-neighbour step".into()));
    }
    Ok(())
}

fn heatkernel(ctx: &Ctx, mut a: HeatArgs) -> Result<()> {
    let t = a.t.ok_or_else(|| CliError::Usage("--T is required".into()))?;
    let gamma = *a.gamma.get_or_insert(0.0);
    let size = *a.size.get_or_insert((2 * t).max(1) as i32);
    let field = field_on(LatticeBox::ball(size), &a.field, gamma, a.seed, *a.margin.get_or_insert(4.0))?;
    let kernel = WalkKernel::new(&field, gamma, Boundary::Reflect)?;
    let p = return_probability_exact(&kernel, t)?;
    let report = HeatKernelReport { t: t as u64, p_return: p, field_seed: field.seed, gamma };
    ctx.emit("heatkernel", &a, serde_json::to_value(&report).map_err(json_err)?, a.out.as_deref())
}

fn exittime(ctx: &Ctx, mut a: ExitArgs) -> Result<()> {
    let n = *a.size.get_or_insert(8);
    if n < 1 {
        return usage("--size must be positive");
    }
    let gamma = *a.gamma.get_or_insert(0.0);
    let field = field_on(LatticeBox::ball(n + 1), &a.field, gamma, a.seed, *a.margin.get_or_insert(4.0))?;
    let report = expected_exit_time_exact(&WalkKernel::new(&field, gamma, Boundary::Absorb)?, n)?;
    if let Some(p) = &a.voltage {
        let dom = LatticeBox::ball(n);
        write_field(&FieldSample::synthetic(dom, |q| report.voltage[dom.index(q).unwrap()]), p)?;
    }
    let mut result = serde_json::to_value(&report).map_err(json_err)?;
    result.as_object_mut().unwrap().remove("voltage");
    ctx.emit("exittime", &a, result, a.out.as_deref())?;
    let worst = report.hitting_residual.max(report.commute_residual).max(report.voltage_residual);
    if !(worst <= 1e-6) {
        return Err(CliError::Invariant(format!("identity residual {worst:e} exceeds 1e-6")));
    }
    Ok(())
}

fn scaling(ctx: &Ctx, a: ScalingArgs) -> Result<()> {
    let quantity = a.quantity.ok_or_else(|| CliError::Usage("--quantity is required".into()))?;
    let mut cfg = ExperimentConfig::new(
        quantity,
        a.gammas.clone().unwrap_or_default(),
        a.sizes.clone().ok_or_else(|| CliError::Usage("--sizes is required".into()))?,
        a.replicas.unwrap_or(1),
        need_seed(a.seed)?,
    );
    cfg.gamma_unit = a.gamma_unit.unwrap_or_default();
    cfg.margin = a.margin.unwrap_or(cfg.margin);
    cfg.solver = a.solver.unwrap_or_default();
    cfg.knobs = a.knobs.clone().unwrap_or_default();
    cfg.workers = ctx.workers.or(a.workers);
    cfg.ledger_path = a.ledger_path.clone();
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let (output, ledger) = exper::run(&cfg)?;
    if let (Some(p), Some(rows)) = (&cfg.ledger_path, &ledger) {
        fs::write(p, exper::ledger_csv(rows))?;
    }
    let mut shown = cfg.clone();
    shown.workers = None;
    let result = serde_json::to_value(&output).map_err(json_err)?;
    ctx.emit("scaling", &shown, result, a.out.as_deref())
}

fn crossing(ctx: &Ctx, mut a: CrossingArgs) -> Result<()> {
    let rect_s = a.rect.get_or_insert_with(|| "17x17".into()).clone();
    let (w, h) = rect_s
        .split_once(['x', 'X'])
        .and_then(|(w, h)| Some((w.trim().parse::<i32>().ok()?, h.trim().parse::<i32>().ok()?)))
        .ok_or_else(|| CliError::Usage(format!("--rect must be WxH, got {rect_s:?}")))?;
    if w < 2 || h < 2 {
        return usage("both rectangle sides need at least two vertices");
    }
    let x0 = -(w - 1) / 2;
    let y0 = -(h - 1) / 2;
    let rect = LatticeBox::new(x0, x0 + w - 1, y0, y0 + h - 1)?;
    let gamma = *a.gamma.get_or_insert(0.0);
    let field = field_on(rect, &a.field, gamma, a.seed, *a.margin.get_or_insert(4.0))?;
    let net = Network::from_field(&field, gamma)?;
    let orientation = *a.orientation.get_or_insert(Orientation::Lr);
    let mut result = json!({ "rect": [rect.x0, rect.x1, rect.y0, rect.y1], "orientation": orientation });
    let value = match &a.restricted {
        Some(r) => {
            if w != h || w % 2 == 0 {
                return usage("--restricted needs an odd square rectangle B(n)");
            }
            let (lo, hi) = parse_point(r).map_err(CliError::Usage)?;
            result["restricted"] = json!([lo, hi]);
            restricted_crossing(&net, (w - 1) / 2, lo, hi)?
        }
        None => {
            let other = match orientation {
                Orientation::Lr => Orientation::Ud,
                Orientation::Ud => Orientation::Lr,
            };
            let dual = crossing_resistance(&net.reciprocal(), &rect, other)?;
            result["dual_value_log"] = json!(rcmlab::numfmt::text(dual.ln()));
            crossing_resistance(&net, &rect, orientation)?
        }
    };
    result["value_log"] = json!(value.ln());
    result["value"] = json!(value.value());
    if value.is_infinite() {
        result["value_log"] = json!("inf");
        result["value"] = json!("inf");
    }
    ctx.emit("crossing", &a, result, a.out.as_deref())
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
fn stdout(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<()> {
    let name = match &cli.command {
        Command::Sample(_) => "sample",
        Command::Resistance(_) => "resistance",
        Command::Walk(_) => "walk",
        Command::Heatkernel(_) => "heatkernel",
        Command::Exittime(_) => "exittime",
        Command::Scaling(_) => "scaling",
        Command::Crossing(_) => "crossing",
    };
    if cli.schema {
        stdout(&(serde_json::to_string_pretty(&schema::schema(name)).map_err(json_err)? + "\n"))?;
        return Ok(());
    }
    let config: Option<Value> = match &cli.config {
        Some(p) => Some(serde_json::from_str(&fs::read_to_string(p)?).map_err(|e| CliError::Usage(format!("config: {e}")))?),
        None => None,
    };
    let ctx = Ctx { deterministic: cli.deterministic, workers: cli.workers };
    match &cli.command {
        Command::Sample(a) => sample(&ctx, resolve(a, &config)?),
        Command::Resistance(a) => resistance(&ctx, resolve(a, &config)?),
        Command::Walk(a) => walk(&ctx, resolve(a, &config)?),
        Command::Heatkernel(a) => heatkernel(&ctx, resolve(a, &config)?),
        Command::Exittime(a) => exittime(&ctx, resolve(a, &config)?),
        Command::Scaling(a) => scaling(&ctx, resolve(a, &config)?),
        Command::Crossing(a) => crossing(&ctx, resolve(a, &config)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
