use impulse_front::analytic::{
    critical_size, dirichlet_growth_exponent, ray_speed, ray_speed_closed_form, scenario_bounds, speed, Direction, DomainRegime, DomainShape,
    GaussianMeasure, ScenarioInputs, ScenarioReport,
};
use impulse_front::hybrid::{
    auto_grid, classify_persistence, critical_length_search, default_initial, estimate_speed, front_position,
    simulation_pi1, HybridModel, PersistenceVerdict, Trajectory,
};
use impulse_front::model::{Field, GrowthSpec, Grid, ModelParams};
use impulse_front::oracle::{mgf_speed_bound, weinberger_speed, OracleConfig};
use impulse_front::season::DirichletBox;
use impulse_front::{Error, Matrix, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{
    directions, CriticalTask, Numerics, OracleTask, RayTask, RunConfig, ScenarioTask, ShapeChoice, SimulateTask,
    SpeedTask, SweepParameter, SweepTask, Task,
};
use crate::exit::CliError;
use crate::output::{Cell, Plot, Report, Table};

pub const SEED_VAR: &str = "IMPULSE_FRONT_SEED";

pub fn run(cfg: &RunConfig, jobs: usize) -> Result<Report, CliError> {
    match &cfg.task {
        Task::Speed(t) => speed_task(cfg, t),
        Task::CriticalDomain(t) => critical_task(cfg, t),
        Task::Ray(t) => ray_task(cfg, t),
        Task::Simulate(t) => simulate_task(cfg, t),
        Task::Oracle(t) => oracle_task(cfg, t),
        Task::Scenario(t) => scenario_task(t),
        Task::Sweep(t) => sweep_task(cfg, t, jobs),
    }
}

fn require_growth(p: &ModelParams<f64>) -> Result<(), CliError> {
    let rho = p.net_growth().rho;
    if rho <= 0.0 {
        return Err(Error::ExtinctionRegime { rho }.into());
    }
    Ok(())
}

fn rng() -> Result<ChaCha8Rng, CliError> {
    let seed = match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse::<u64>().map_err(|_| CliError::Config(format!("{SEED_VAR} must be an unsigned integer, got {s:?}")))?,
        Err(_) => {
            let s = rand::random::<u64>();
            log::info!("jitter seed {s} (set {SEED_VAR} to reproduce)");
            s
        }
    };
    Ok(ChaCha8Rng::seed_from_u64(seed))
}

struct Simulation {
    traj: Trajectory<f64>,
    threshold: f64,
}

fn simulate(p: &ModelParams<f64>, n: &Numerics) -> Result<Simulation, CliError> {
    require_growth(p)?;
    let grid = match n.half_width {
        Some(w) => Grid::centered(p.dim(), w, n.spacing)?,
        None => auto_grid(p, n.spacing, n.generations)?,
    };
    let mut initial = default_initial(p, &grid)?;
    if n.jitter > 0.0 {
        let mut rng = rng()?;
        let values = initial.values().iter().map(|v| v * (1.0 + n.jitter * rng.gen_range(-1.0..1.0))).collect();
        initial = Field::new(grid, values)?;
    }
    let traj = HybridModel::free(p.clone(), grid, n.season())?.run(initial, n.generations)?;
    if let Some(err) = traj.abort.clone() {
        return Err(err.into());
    }
    let threshold = match n.threshold {
        Some(t) => t,
        None => simulation_pi1(p)? * 0.5,
    };
    Ok(Simulation { traj, threshold })
}

fn direction_columns(dim: usize) -> Vec<&'static str> {
    if dim == 1 { vec!["e_x[1]"] } else { vec!["e_x[1]", "e_y[1]"] }
}

fn direction_cells(e: &Direction<f64>) -> Vec<Cell> {
    e.vector().as_slice().iter().map(|v| Cell::Num(*v)).collect()
}

fn with_columns(lead: Vec<&'static str>, rest: &[&'static str]) -> Vec<&'static str> {
    lead.into_iter().chain(rest.iter().copied()).collect()
}

fn speed_task(cfg: &RunConfig, t: &SpeedTask) -> Result<Report, CliError> {
    let p = cfg.params()?;
    let n = &cfg.numerics;
    let dirs = directions(&t.directions, p.dim())?;
    let analytic: Vec<f64> = dirs.iter().map(|e| speed(&p, e)).collect::<Result<_, _>>()?;
    let oracle: Vec<Option<f64>> = if t.oracle {
        dirs.iter().map(|e| oracle_estimate(&p, e, n, None).map(Some)).collect::<Result<_, _>>()?
    } else {
        vec![None; dirs.len()]
    };
    let sim = if t.simulate { Some(simulate(&p, n)?) } else { None };
    let header = with_columns(
        direction_columns(p.dim()),
        &[
            "analytic_speed[length/generation]",
            "oracle_speed[length/generation]",
            "simulated_speed[length/generation]",
            "fit_residual[length]",
            "generations_used[count]",
            "threshold[density]",
        ],
    );
    let mut table = Table::new("speed", &header);
    for ((e, c), o) in dirs.iter().zip(&analytic).zip(&oracle) {
        let mut row = direction_cells(e);
        row.push(Cell::Num(*c));
        row.push((*o).into());
        match &sim {
            Some(s) => {
                let r = estimate_speed(&s.traj, e, s.threshold, n.burn_in, n.fit())?;
                row.extend([Cell::Num(r.slope), Cell::Num(r.residual), Cell::Int(r.generations_used), Cell::Num(r.threshold)]);
            }
            None => row.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty]),
        }
        table.push(row);
    }
    Ok(Report { tables: vec![table], plots: vec![] })
}

fn simulate_task(cfg: &RunConfig, t: &SimulateTask) -> Result<Report, CliError> {
    let p = cfg.params()?;
    let n = &cfg.numerics;
    let dirs = directions(&t.directions, p.dim())?;
    let sim = simulate(&p, n)?;
    let cell_volume = sim.traj.fields[0].grid().cell_volume();
    let mut header = vec!["generation[count]".to_string()];
    for k in 0..dirs.len() {
        header.push(format!("front_{k}[length]"));
    }
    header.push("max_density[density]".into());
    header.push("total_mass[density*volume]".into());
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut table = Table::new("simulate", &header);
    let mut curves = vec![Vec::new(); dirs.len()];
    for (m, f) in sim.traj.fields.iter().enumerate() {
        let mut row = vec![Cell::Int(m)];
        for (k, e) in dirs.iter().enumerate() {
            match front_position(f, sim.threshold, e) {
                Ok(x) => {
                    curves[k].push((m as f64, x));
                    row.push(Cell::Num(x));
                }
                Err(Error::FrontNotFound) => row.push(Cell::Empty),
                Err(err) => return Err(err.into()),
            }
        }
        row.push(Cell::Num(f.max()));
        row.push(Cell::Num(f.values().iter().sum::<f64>() * cell_volume));
        table.push(row);
    }
    let mut speeds = Table::new(
        "simulate_speeds",
        &with_columns(
            with_columns(vec!["front[index]"], &direction_columns(p.dim())),
            &["analytic_speed[length/generation]", "simulated_speed[length/generation]", "fit_residual[length]"],
        ),
    );
    for (k, e) in dirs.iter().enumerate() {
        let mut row = vec![Cell::Int(k)];
        row.extend(direction_cells(e));
        let r = estimate_speed(&sim.traj, e, sim.threshold, n.burn_in, n.fit())?;
        row.extend([Cell::from(r.analytic), Cell::Num(r.slope), Cell::Num(r.residual)]);
        speeds.push(row);
    }
    Ok(Report { tables: vec![table, speeds], plots: vec![Plot { name: "simulate".into(), curves }] })
}

fn shape_for(p: &ModelParams<f64>, choice: Option<ShapeChoice>) -> Result<DomainShape, CliError> {
    match (choice, p.dim()) {
        (None | Some(ShapeChoice::Interval), 1) => Ok(DomainShape::Interval),
        (None | Some(ShapeChoice::Square), 2) => Ok(DomainShape::Hypercube(2)),
        (s, d) => Err(CliError::Config(format!("shape {s:?} does not fit a {d}D model"))),
    }
}

fn critical_task(cfg: &RunConfig, t: &CriticalTask) -> Result<Report, CliError> {
    let p = cfg.params()?;
    require_growth(&p)?;
    let shape = shape_for(&p, t.shape)?;
    let report = critical_size(&p, shape)?;
    let regime = match report.regime {
        DomainRegime::Finite => "finite",
        DomainRegime::Infinite => "infinite",
    };
    let mut row = vec![
        Cell::Int(shape.dim()),
        Cell::Num(report.size),
        regime.into(),
        Cell::Num(report.blowup_advection),
    ];
    if t.simulate {
        let bracket = match (t.bracket, report.regime) {
            (Some([lo, hi]), _) => (lo, hi),
            (None, DomainRegime::Finite) => (0.5 * report.size, 1.5 * report.size),
            (None, DomainRegime::Infinite) => {
                return Err(CliError::Config("critical_domain: no finite size to bracket; give bracket explicitly".into()))
            }
        };
        let est = critical_length_search(&p, shape, bracket, cfg.numerics.classification_generations, &cfg.numerics.season())?;
        row.extend([Cell::Num(est.length), Cell::Num(est.lo), Cell::Num(est.hi), Cell::Int(est.probes)]);
    } else {
        row.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty]);
    }
    let mut table = Table::new(
        "critical_domain",
        &[
            "dimension[count]",
            "critical_size[length]",
            "regime",
            "blowup_advection[length/generation]",
            "simulated_size[length]",
            "bracket_lo[length]",
            "bracket_hi[length]",
            "probes[count]",
        ],
    );
    table.push(row);
    Ok(Report { tables: vec![table], plots: vec![] })
}

fn ray_or_inf(r: Result<f64, Error>) -> Result<Cell, CliError> {
    match r {
        Ok(v) => Ok(Cell::Num(v)),
        Err(Error::RayUnbounded) => Ok(Cell::Num(f64::INFINITY)),
        Err(e) => Err(e.into()),
    }
}

fn ray_task(cfg: &RunConfig, t: &RayTask) -> Result<Report, CliError> {
    let p = cfg.params()?;
    if p.dim() != 2 {
        return Err(CliError::Config("ray needs a 2D model".into()));
    }
    let angles: Vec<f64> = t.angles_deg.clone().unwrap_or_else(|| (0..=90).map(f64::from).collect());
    if angles.is_empty() {
        return Err(CliError::Config("ray: no angles".into()));
    }
    let mut table = Table::new(
        "ray",
        &["theta[deg]", "speed[length/generation]", "ray_speed[length/generation]", "ray_speed_closed_form[length/generation]"],
    );
    let mut curves = vec![Vec::new(), Vec::new()];
    for theta in angles {
        let e = Direction::from_angle(theta.to_radians());
        let c = speed(&p, &e)?;
        let ray = ray_or_inf(ray_speed(&p, &e))?;
        let closed = match ray_speed_closed_form(&p, &e) {
            Ok(v) => Cell::Num(v),
            Err(Error::RayUnbounded) => Cell::Num(f64::INFINITY),
            Err(Error::AnisotropyUnsupported | Error::KernelUnsupported | Error::InvalidArgument(_)) => Cell::Empty,
            Err(e) => return Err(e.into()),
        };
        curves[0].push((theta, c));
        if let Cell::Num(w) = ray {
            curves[1].push((theta, w));
        }
        table.push(vec![Cell::Num(theta), Cell::Num(c), ray, closed]);
    }
    Ok(Report { tables: vec![table], plots: vec![Plot { name: "ray".into(), curves }] })
}

fn oracle_estimate(p: &ModelParams<f64>, e: &Direction<f64>, n: &Numerics, tolerance: Option<f64>) -> Result<f64, CliError> {
    require_growth(p)?;
    let mut oc = OracleConfig::new(*e);
    oc.iterations = n.oracle_iterations;
    if let Some(tol) = tolerance {
        oc.tolerance = tol;
    }
    Ok(weinberger_speed(&GaussianMeasure::for_model(p), &oc)?)
}

fn oracle_task(cfg: &RunConfig, t: &OracleTask) -> Result<Report, CliError> {
    let p = cfg.params()?;
    let n = &cfg.numerics;
    if let Some(tol) = t.tolerance {
        if !(tol > 0.0) {
            return Err(CliError::Config("oracle: tolerance must be positive".into()));
        }
    }
    let dirs = directions(&t.directions, p.dim())?;
    let measure = GaussianMeasure::for_model(&p);
    let mut table = Table::new(
        "oracle",
        &with_columns(
            direction_columns(p.dim()),
            &[
                "analytic_speed[length/generation]",
                "mgf_bound[length/generation]",
                "oracle_speed[length/generation]",
                "relative_gap[1]",
            ],
        ),
    );
    for e in &dirs {
        let c = speed(&p, e)?;
        let bound = mgf_speed_bound(&measure, e)?;
        let w = oracle_estimate(&p, e, n, t.tolerance)?;
        let mut row = direction_cells(e);
        row.extend([Cell::Num(c), Cell::Num(bound), Cell::Num(w), Cell::Num((w - c).abs() / c.abs().max(1e-12))]);
        table.push(row);
    }
    Ok(Report { tables: vec![table], plots: vec![] })
}

fn scenario_task(t: &ScenarioTask) -> Result<Report, CliError> {
    let inputs = match t {
        ScenarioTask::Climate(c) => ScenarioInputs::Climate(c.into()),
        ScenarioTask::Stream(s) => ScenarioInputs::Stream(s.into()),
        ScenarioTask::Savannah(s) => ScenarioInputs::Savannah(s.into()),
    };
    let mut report = Report::default();
    match scenario_bounds(&inputs)? {
        ScenarioReport::Climate(r) => {
            let ScenarioInputs::Climate(inp) = inputs else { unreachable!() };
            let mut table = Table::new(
                "climate",
                &[
                    "rho[1/generation]",
                    "c_max[length/generation]",
                    "shift[length/generation]",
                    "persists",
                    "speed_with[length/generation]",
                    "speed_against[length/generation]",
                    "box_growth_exponent[1/generation]",
                    "spread_consistent",
                ],
            );
            // Persistence on the moving box should come with a front that
            // still advances against the shift.
            let exponent = dirichlet_growth_exponent(&inp.params(), &[inp.l1, inp.l2])?;
            let consistent = match (r.persists, r.speed_against) {
                (Some(true), Some(c)) => Cell::Bool(c > 0.0),
                (Some(false), _) => Cell::Bool(true),
                _ => Cell::Empty,
            };
            table.push(vec![
                Cell::Num(inp.rho()),
                Cell::Num(r.c_max),
                inp.shift.into(),
                r.persists.map_or(Cell::Empty, Cell::Bool),
                r.speed_with.into(),
                r.speed_against.into(),
                Cell::Num(exponent),
                consistent,
            ]);
            report.tables.push(table);
        }
        ScenarioReport::Stream(r) => {
            let mut table = Table::new(
                "stream",
                &[
                    "persists",
                    "spreads_both_ways",
                    "threshold[1]",
                    "speed_downstream[length/generation]",
                    "speed_upstream[length/generation]",
                ],
            );
            table.push(vec![
                Cell::Bool(r.persists),
                Cell::Bool(r.spreads_both_ways),
                Cell::Num(r.threshold),
                r.speed_down.into(),
                r.speed_up.into(),
            ]);
            report.tables.push(table);
        }
        ScenarioReport::Savannah(r) => {
            let mut summary = Table::new("savannah_summary", &["nstar[density]"]);
            summary.push(vec![Cell::Num(r.nstar)]);
            let mut table =
                Table::new("savannah", &["theta[deg]", "speed[length/generation]", "ray_speed[length/generation]"]);
            let mut curves = vec![Vec::new(), Vec::new()];
            for row in &r.rows {
                let deg = row.theta.to_degrees().round();
                table.push(vec![Cell::Num(deg), Cell::Num(row.speed), Cell::Num(row.ray_speed)]);
                curves[0].push((deg, row.speed));
                curves[1].push((deg, row.ray_speed));
            }
            report.tables.extend([summary, table]);
            report.plots.push(Plot { name: "savannah".into(), curves });
        }
    }
    Ok(report)
}

fn axis(t: &SweepTask, dim: usize) -> Result<Vector<f64>, CliError> {
    let raw = t.axis.clone().unwrap_or_else(|| if dim == 1 { vec![1.0] } else { vec![1.0, 0.0] });
    if raw.len() != dim {
        return Err(CliError::Config(format!("sweep axis must have {dim} components")));
    }
    let v = Vector::from_slice(&raw)?;
    let norm = v.norm();
    if !(norm > 0.0) {
        return Err(CliError::Config("sweep axis must be nonzero".into()));
    }
    Ok(v.scale(1.0 / norm))
}

fn set_rate(g: GrowthSpec<f64>, r: f64) -> GrowthSpec<f64> {
    match g {
        GrowthSpec::Linear { .. } => GrowthSpec::Linear { rate: r },
        GrowthSpec::Quadratic { gamma, .. } => GrowthSpec::Quadratic { rate: r, gamma },
        GrowthSpec::Logistic { .. } => GrowthSpec::Logistic { r },
    }
}

fn sweep_task(cfg: &RunConfig, t: &SweepTask, jobs: usize) -> Result<Report, CliError> {
    let base = cfg.params()?;
    let points = t.points()?;
    let axis = axis(t, base.dim())?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let rows: Vec<Result<Vec<Cell>, CliError>> =
        pool.install(|| points.par_iter().map(|&v| sweep_row(cfg, t.parameter, &base, &axis, v)).collect());
    let rows: Vec<Vec<Cell>> = rows.into_iter().collect::<Result<_, _>>()?;
    let header: &[&str] = match t.parameter {
        SweepParameter::Q => &["q[length/generation]", "speed_upstream[length/generation]", "critical_size[length]", "status"],
        SweepParameter::D => &["d[length^2/generation]", "speed[length/generation]", "critical_size[length]", "status"],
        SweepParameter::R => &["r[1/generation]", "speed[length/generation]", "critical_size[length]", "status"],
        SweepParameter::Length => &["length[length]", "verdict", "analytic_persists", "status"],
    };
    let mut table = Table::new("sweep", header);
    let mut curves = vec![Vec::new(), Vec::new()];
    for row in rows {
        if let (Cell::Num(x), Cell::Num(a), Cell::Num(b)) = (&row[0], &row[1], &row[2]) {
            curves[0].push((*x, *a));
            curves[1].push((*x, *b));
        }
        table.push(row);
    }
    let mut report = Report { tables: vec![table], plots: vec![] };
    if t.parameter != SweepParameter::Length {
        report.plots.push(Plot { name: "sweep".into(), curves });
    }
    Ok(report)
}

fn sweep_row(
    cfg: &RunConfig,
    which: SweepParameter,
    base: &ModelParams<f64>,
    axis: &Vector<f64>,
    v: f64,
) -> Result<Vec<Cell>, CliError> {
    let mut p = base.clone();
    let mut e = Direction::normalize(*axis)?;
    match which {
        SweepParameter::Q => {
            p.advection = axis.scale(v);
            let toward = if v > 0.0 { -1.0 } else if v < 0.0 { 1.0 } else { -1.0 };
            e = Direction::normalize(axis.scale(toward))?;
        }
        SweepParameter::D => {
            if !(v > 0.0) {
                return Err(CliError::Config(format!("sweep: diffusion {v} must be positive")));
            }
            p.diffusion = Matrix::scalar(p.dim(), v);
        }
        SweepParameter::R => p.growth = set_rate(p.growth, v),
        SweepParameter::Length => return length_row(cfg, &p, v),
    }
    let rho = p.net_growth().rho;
    if rho <= 0.0 {
        return Ok(vec![Cell::Num(v), Cell::Num(f64::NAN), Cell::Num(f64::INFINITY), "extinction regime".into()]);
    }
    let c = speed(&p, &e)?;
    let size = match critical_size(&p, shape_for(&p, None)?) {
        Ok(r) => Cell::Num(r.size),
        Err(Error::AnisotropyUnsupported) => Cell::Empty,
        Err(err) => return Err(err.into()),
    };
    Ok(vec![Cell::Num(v), Cell::Num(c), size, "ok".into()])
}

fn length_row(cfg: &RunConfig, p: &ModelParams<f64>, l: f64) -> Result<Vec<Cell>, CliError> {
    if !(l > 0.0) {
        return Err(CliError::Config(format!("sweep: length {l} must be positive")));
    }
    let shape = shape_for(p, None)?;
    let analytic = match critical_size(p, shape) {
        Ok(r) => Cell::Bool(l > r.size),
        Err(Error::AnisotropyUnsupported) => Cell::Empty,
        Err(err) => return Err(err.into()),
    };
    let pi1 = simulation_pi1(p).unwrap_or(1.0);
    let domain = DirichletBox::new(&vec![l; shape.dim()])?;
    let verdict = classify_persistence(p, &domain, cfg.numerics.classification_generations, pi1 * 1e-6, &cfg.numerics.season())?;
    let verdict = match verdict {
        PersistenceVerdict::Persistent => "persistent",
        PersistenceVerdict::Extinct => "extinct",
        PersistenceVerdict::Undecided => "undecided",
    };
    Ok(vec![Cell::Num(l), verdict.into(), analytic, "ok".into()])
}
