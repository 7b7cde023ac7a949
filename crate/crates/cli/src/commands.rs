//! The experiments behind each subcommand.

use analysis::{
    convergence_study, direction_check, direction_scan, dt_bound_scan, scalar_cfl_scan, vanishing_ic_probe,
    OneStepMethod, ScanGrid,
};
use problems::{exponential_time_grid_with, uniform_time_grid, ProblemSpec};
use schemes::tableau::all_tableaus;
use schemes::{lookup_tableau, rk_positivity_threshold, Scheme, SchemeSpec, Threshold, ThresholdKind};

use crate::args::{
    Command, ConvergenceArgs, DirectionArgs, Family, GridArgs, GridKind, MethodArgs, ProblemArgs, ScalarCflArgs,
    ScanArgs, SolveArgs, StabilityArgs, SweepArgs, VanishingArgs,
};
use crate::output::{num, Invocation, Table};
use crate::CliError;

/// Methods probed by `vanishing-ic` when none is given.
pub const DEFAULT_PROBE_SCHEMES: &[&str] = &[
    "mpe",
    "mprk22:alpha=0.5",
    "mprk22:alpha=0.7",
    "mprk22:alpha=1",
    "mprk22:alpha=2",
    "mprk22:alpha=5",
    "mprk43:alpha=0.9,beta=0.6",
    "mprk43:alpha=5,beta=0.5",
    "mprkso22:alpha=0,beta=8",
    "mprkso43",
    "mprk32",
    "sirk2",
    "sirk3",
    "mpdec:order=2,nodes=gl",
    "mpdec:order=5,nodes=gl",
    "mpdec:order=8,nodes=gl",
    "mpdec:order=2,nodes=eq",
    "mpdec:order=5,nodes=eq",
    "mpdec:order=8,nodes=eq",
    "mpdec:order=9,nodes=eq",
    "mpdec:order=11,nodes=eq",
];

/// Defaults of a scan grid: `(dt_min, dt_max, per_octave, eps_min, eps_points, theta_min, theta_points)`.
type GridDefaults = (f64, f64, usize, f64, usize, f64, usize);

/// Full-resolution grid used by `scan-dt` and `direction`.
const FULL_GRID: GridDefaults = (1.0 / 64.0, 64.0, 16, 1e-8, 25, 1e-8, 25);
/// Coarse grid used by `param-sweep`.
const COARSE_GRID: GridDefaults = (1.0 / 64.0, 64.0, 8, 1e-8, 9, 1e-8, 9);

pub fn dispatch(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Solve(a) => solve(a),
        Command::ScanDt(a) => scan_dt(a),
        Command::Convergence(a) => convergence(a),
        Command::VanishingIc(a) => vanishing_ic(a),
        Command::Direction(a) => direction(a),
        Command::Stability(a) => stability(a),
        Command::ScalarCfl(a) => scalar_cfl(a),
        Command::ParamSweep(a) => param_sweep(a),
    }
}

fn config<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Config(e.to_string())
}

fn numerical<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Numerical(e.to_string())
}

fn parse_scheme(text: &str) -> Result<Scheme, CliError> {
    let spec: SchemeSpec = text.parse().map_err(config)?;
    Scheme::new(spec).map_err(config)
}

fn parse_method(m: &MethodArgs) -> Result<OneStepMethod, CliError> {
    match (&m.scheme, &m.tableau) {
        (Some(s), None) => Ok(OneStepMethod::Patankar(parse_scheme(s)?)),
        (None, Some(t)) => Ok(OneStepMethod::RungeKutta(lookup_tableau(t).map_err(config)?)),
        _ => Err(CliError::Config("give exactly one of --scheme and --tableau".into())),
    }
}

fn method_flag(inv: &mut Invocation, method: &OneStepMethod) {
    match method {
        OneStepMethod::Patankar(s) => inv.arg("scheme", s.spec()),
        OneStepMethod::RungeKutta(t) => inv.arg("tableau", t.name()),
    };
}

fn parse_problem(p: &ProblemArgs) -> Result<ProblemSpec, CliError> {
    let mut spec: ProblemSpec = p.problem.parse().map_err(config)?;
    let name = spec.name();
    let unused = |flag: &str| CliError::Config(format!("--{flag} does not apply to problem '{name}'"));
    match &mut spec {
        ProblemSpec::Linear2x2 { theta, eps } => {
            if p.k.is_some() {
                return Err(unused("k"));
            }
            *theta = p.theta.unwrap_or(*theta);
            *eps = p.eps.unwrap_or(*eps);
        }
        ProblemSpec::Scalar { k, .. } => {
            if p.theta.is_some() || p.eps.is_some() {
                return Err(unused(if p.theta.is_some() { "theta" } else { "eps" }));
            }
            *k = p.k.unwrap_or(*k);
        }
        ProblemSpec::Robertson { eps } | ProblemSpec::Hires { eps } => {
            if p.theta.is_some() || p.k.is_some() {
                return Err(unused(if p.theta.is_some() { "theta" } else { "k" }));
            }
            *eps = p.eps.unwrap_or(*eps);
        }
    }
    // Validate the parameters now so that a bad value is a configuration error.
    spec.build().map_err(config)?;
    Ok(spec)
}

fn resolve_grid(g: &GridArgs, d: GridDefaults, inv: &mut Invocation) -> Result<ScanGrid, CliError> {
    let dt_min = g.dt_min.unwrap_or(d.0);
    let dt_max = g.dt_max.unwrap_or(d.1);
    let per_octave = g.dt_per_octave.unwrap_or(d.2);
    let eps_min = g.eps_min.unwrap_or(d.3);
    let eps_points = g.eps_points.unwrap_or(d.4);
    let theta_min = g.theta_min.unwrap_or(d.5);
    let theta_points = g.theta_points.unwrap_or(d.6);
    inv.float("dt-min", dt_min)
        .float("dt-max", dt_max)
        .arg("dt-per-octave", per_octave)
        .float("eps-min", eps_min)
        .arg("eps-points", eps_points)
        .float("theta-min", theta_min)
        .arg("theta-points", theta_points);
    ScanGrid::new(eps_min, eps_points, theta_min, theta_points, dt_min, dt_max, per_octave).map_err(CliError::from)
}

fn solve(a: &SolveArgs) -> Result<String, CliError> {
    let scheme = parse_scheme(&a.scheme)?;
    let spec = parse_problem(&a.problem)?;
    let pb = spec.build().map_err(config)?;
    let t_end = a.t_end.unwrap_or(pb.t_end);
    if a.steps == 0 || a.every == 0 {
        return Err(CliError::Config("--steps and --every must be positive".into()));
    }
    let times = match a.grid {
        GridKind::Uniform => uniform_time_grid(0.0, t_end, a.steps),
        GridKind::Exponential => exponential_time_grid_with(0.0, t_end, a.steps, a.first_step_fraction),
    }
    .map_err(config)?;

    let mut inv = Invocation::new("solve");
    inv.arg("scheme", scheme.spec())
        .arg("problem", spec)
        .arg("steps", a.steps)
        .float("t-end", t_end)
        .arg("grid", a.grid.as_str());
    if a.grid == GridKind::Exponential {
        inv.float("first-step-fraction", a.first_step_fraction);
    }
    inv.arg("every", a.every);
    let mut columns = vec!["t".to_string()];
    columns.extend((1..=pb.initial.len()).map(|i| format!("u{i}")));
    let columns: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut table = Table::new(&inv, &columns)?;

    let write = |table: &mut Table, t: f64, u: &[f64]| {
        table.row(std::iter::once(num(t)).chain(u.iter().map(|&v| num(v))))
    };
    let mut u = pb.initial.clone();
    write(&mut table, times[0], &u)?;
    for (n, w) in times.windows(2).enumerate() {
        u = scheme
            .advance(&pb.system, &u, w[1] - w[0])
            .map_err(|e| CliError::Numerical(format!("step {} (t = {}): {e}", n + 1, w[1])))?;
        let step = n + 1;
        if step % a.every == 0 || step == a.steps {
            write(&mut table, w[1], &u)?;
        }
    }
    table.finish()
}

fn scan_dt(a: &ScanArgs) -> Result<String, CliError> {
    let method = parse_method(&a.method)?;
    let mut inv = Invocation::new("scan-dt");
    method_flag(&mut inv, &method);
    let grid = resolve_grid(&a.grid, FULL_GRID, &mut inv)?;
    if a.by_theta {
        inv.switch("by-theta");
    }
    let result = dt_bound_scan(&method, &grid)?;
    let mut table;
    if a.by_theta {
        table = Table::new(&inv, &["theta", "dt_bound"])?;
        for (i, &theta) in result.theta_values.iter().enumerate() {
            table.row([num(theta), result.bound_for_theta(i).to_string()])?;
        }
    } else {
        table = Table::new(
            &inv,
            &["dt", "worst_measure", "worst_eps", "worst_theta", "failures", "pass"],
        )?;
        for r in &result.records {
            table.row([
                num(r.dt),
                num(r.worst_measure),
                num(r.worst_eps),
                num(r.worst_theta),
                r.failures.to_string(),
                r.passes(result.tolerance).to_string(),
            ])?;
        }
    }
    table.row(["dt_bound".to_string(), result.dt_bound.to_string()])?;
    table.finish()
}

fn convergence(a: &ConvergenceArgs) -> Result<String, CliError> {
    let scheme = parse_scheme(&a.scheme)?;
    let spec = parse_problem(&a.problem)?;
    let dts: Vec<f64> = if a.dts.is_empty() {
        (4..=9).map(|k| 2f64.powi(-k)).collect()
    } else {
        a.dts.clone()
    };
    let mut inv = Invocation::new("convergence");
    inv.arg("scheme", scheme.spec())
        .arg("problem", spec)
        .float("t-end", a.t_end)
        .floats("dts", &dts);
    let est = convergence_study(&scheme, &spec, &dts, a.t_end)?;
    let orders = est.pairwise_orders();
    let mut table = Table::new(&inv, &["dt", "steps", "error", "order"])?;
    for (i, (&dt, &err)) in est.dts.iter().zip(&est.errors).enumerate() {
        let order = if i == 0 { String::new() } else { num(orders[i - 1]) };
        table.row([num(dt), format!("{}", (a.t_end / dt).round()), num(err), order])?;
    }
    table.row(["slope".to_string(), num(est.slope)])?;
    table.finish()
}

fn vanishing_ic(a: &VanishingArgs) -> Result<String, CliError> {
    let mut methods = Vec::new();
    for s in &a.scheme {
        methods.push(OneStepMethod::Patankar(parse_scheme(s)?));
    }
    for t in &a.tableau {
        methods.push(OneStepMethod::RungeKutta(lookup_tableau(t).map_err(config)?));
    }
    if methods.is_empty() {
        for s in DEFAULT_PROBE_SCHEMES {
            methods.push(OneStepMethod::Patankar(parse_scheme(s)?));
        }
    }
    let mut inv = Invocation::new("vanishing-ic");
    for m in &methods {
        method_flag(&mut inv, m);
    }
    let mut table = Table::new(&inv, &["scheme", "u1", "u2", "class"])?;
    for m in &methods {
        let p = vanishing_ic_probe(m)?;
        table.row([m.to_string(), num(p.u1), num(p.u2), p.class.to_string()])?;
    }
    table.finish()
}

fn direction(a: &DirectionArgs) -> Result<String, CliError> {
    let method = parse_method(&a.method)?;
    let mut inv = Invocation::new("direction");
    method_flag(&mut inv, &method);
    if let (Some(theta), Some(eps), Some(dt)) = (a.theta, a.eps, a.dt) {
        inv.float("theta", theta).float("eps", eps).float("dt", dt);
        if !(0.0..=1.0).contains(&theta) || !(eps > 0.0 && eps < 1.0) || !(dt > 0.0 && dt.is_finite()) {
            return Err(CliError::Config("need θ ∈ [0, 1], ε ∈ (0, 1) and Δt > 0".into()));
        }
        let u = method.linear_step(theta, eps, dt)?;
        let ok = direction_check(&method, eps, theta, dt)?;
        let mut table = Table::new(&inv, &["theta", "eps", "dt", "u1", "u2", "correct"])?;
        table.row([num(theta), num(eps), num(dt), num(u[0]), num(u[1]), ok.to_string()])?;
        return table.finish();
    }
    let grid = resolve_grid(&a.grid, FULL_GRID, &mut inv)?;
    let s = direction_scan(&method, &grid)?;
    let mut table = Table::new(
        &inv,
        &["points", "failures", "first_failure_theta", "first_failure_eps", "first_failure_dt"],
    )?;
    let (ft, fe, fd) = match s.first_failure {
        Some((t, e, d)) => (num(t), num(e), num(d)),
        None => Default::default(),
    };
    table.row([s.points.to_string(), s.failures.to_string(), ft, fe, fd])?;
    table.row(["all_correct".to_string(), s.all_correct().to_string()])?;
    table.finish()
}

fn stability(a: &StabilityArgs) -> Result<String, CliError> {
    if !(a.dt_max > 0.0 && a.dt_max.is_finite()) {
        return Err(CliError::Config(format!("--dt-max must be positive, got {}", a.dt_max)));
    }
    let tableaus = if a.tableau == "all" {
        all_tableaus()
    } else {
        vec![lookup_tableau(&a.tableau).map_err(config)?]
    };
    let mut inv = Invocation::new("stability");
    inv.arg("tableau", &a.tableau).float("dt-max", a.dt_max);
    let mut table = Table::new(&inv, &["tableau", "threshold", "kind"])?;
    for t in &tableaus {
        let th = rk_positivity_threshold(t, a.dt_max);
        let kind = match th {
            Threshold::Unbounded => "none",
            Threshold::Finite { kind, .. } => match kind {
                ThresholdKind::SignChange => "sign-change",
                ThresholdKind::Pole => "pole",
                ThresholdKind::Touch => "touch",
            },
        };
        table.row([t.name().to_string(), th.to_string(), kind.to_string()])?;
    }
    table.finish()
}

fn scalar_cfl(a: &ScalarCflArgs) -> Result<String, CliError> {
    let scheme = parse_scheme(&a.scheme)?;
    if !(a.k > 0.0 && a.k.is_finite()) {
        return Err(CliError::Config(format!("--k must be positive, got {}", a.k)));
    }
    let mut inv = Invocation::new("scalar-cfl");
    inv.arg("scheme", scheme.spec()).float("k", a.k).floats("cfls", &a.cfls);
    let records = scalar_cfl_scan(&scheme, a.k, &a.cfls)?;
    let mut table = Table::new(&inv, &["cfl", "dt", "steps", "measure", "first_step_measure"])?;
    for r in records {
        table.row([
            num(r.cfl),
            num(r.dt),
            r.steps.to_string(),
            num(r.measure),
            num(r.first_step_measure),
        ])?;
    }
    table.finish()
}

/// Parameter points of a sweep: an 11-point (or 11×11) grid plus named extra points.
pub fn sweep_points(family: Family) -> Vec<(f64, Option<f64>)> {
    match family {
        Family::Mprk43 => {
            let mut pts: Vec<(f64, Option<f64>)> = (0..11)
                .flat_map(|i| (0..11).map(move |j| (0.2 * (i + 1) as f64, Some(0.1 + 0.2 * j as f64))))
                .collect();
            pts.extend([(0.9, Some(0.6)), (5.0, Some(0.5))]);
            pts
        }
        Family::Mprk22 => [0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0]
            .iter()
            .map(|&a| (a, None))
            .collect(),
        Family::Mprkso22 => (0..11)
            .flat_map(|i| {
                [0.5, 1.0, 1.5, 2.5, 3.0, 4.0, 6.0, 8.0, 10.0, 12.0, 16.0]
                    .into_iter()
                    .map(move |b| (0.1 * i as f64, Some(b)))
            })
            .collect(),
    }
}

fn sweep_spec(family: Family, alpha: f64, beta: Option<f64>) -> SchemeSpec {
    match (family, beta) {
        (Family::Mprk22, _) => SchemeSpec::Mprk22 { alpha },
        (Family::Mprk43, b) => SchemeSpec::Mprk43 {
            alpha,
            beta: b.unwrap_or(0.0),
        },
        (Family::Mprkso22, b) => SchemeSpec::Mprkso22 {
            alpha,
            beta: b.unwrap_or(0.0),
        },
    }
}

fn param_sweep(a: &SweepArgs) -> Result<String, CliError> {
    let mut inv = Invocation::new("param-sweep");
    inv.arg("family", a.family.as_str());
    let grid = resolve_grid(&a.grid, COARSE_GRID, &mut inv)?;
    let mut table = Table::new(
        &inv,
        &["family", "alpha", "beta", "dt_bound", "probe_u1", "class", "in_positive_region"],
    )?;
    for (alpha, beta) in sweep_points(a.family) {
        let beta_text = beta.map(num).unwrap_or_default();
        // Parameters on a singular set of the family are reported, not swept.
        let Ok(scheme) = sweep_spec(a.family, alpha, beta).validate().and_then(Scheme::new) else {
            table.row([
                a.family.as_str().to_string(),
                num(alpha),
                beta_text,
                String::new(),
                String::new(),
                "singular".to_string(),
                String::new(),
            ])?;
            continue;
        };
        let positive = scheme.has_nonnegative_weights();
        let method = OneStepMethod::Patankar(scheme);
        let scan = dt_bound_scan(&method, &grid).map_err(numerical)?;
        // Outside the positive region some denominators saturate on the
        // vanishing initial value; such cells are reported, not fatal.
        let (u1, class) = match vanishing_ic_probe(&method) {
            Ok(p) => (num(p.u1), p.class.to_string()),
            Err(_) => (String::new(), "failed".to_string()),
        };
        table.row([
            a.family.as_str().to_string(),
            num(alpha),
            beta_text,
            scan.dt_bound.to_string(),
            u1,
            class,
            positive.to_string(),
        ])?;
    }
    table.finish()
}
