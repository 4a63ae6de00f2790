use std::path::Path;

use didsim::simulator::{run_experiment, sweep, Axis, ExperimentConfig, SweepResult};
use didsim::Mode;
use log::info;

use crate::error::CliError;
use crate::output::{format_float, Table};
use crate::scenario::Scenario;
use crate::svg::{Plot, Series};
use crate::{Command, RunArgs, ScenarioArgs};

pub const BOUNDS_HEADER: [&str; 9] = [
    "mode",
    "ps_lower",
    "ps_upper",
    "ps_raw_lower",
    "ps_raw_upper",
    "t_lower_s",
    "t_upper_s",
    "tps_lower",
    "tps_upper",
];

pub const SIMULATE_HEADER: [&str; 9] = [
    "mode",
    "n",
    "trials",
    "mean_latency_s",
    "ci95_s",
    "mean_tps",
    "bound_lower_s",
    "bound_upper_s",
    "seed",
];

pub const SWEEP_HEADER: [&str; 11] = [
    "mode",
    "axis",
    "axis_value",
    "n_nodes",
    "trials",
    "mean_latency_s",
    "ci95_s",
    "mean_tps",
    "bound_lower_s",
    "bound_upper_s",
    "seed",
];

pub const FIG_POWERS_DBM: [f64; 5] = [30.0, 35.0, 40.0, 45.0, 50.0];
pub const FIG_NODES: [f64; 5] = [4.0, 6.0, 8.0, 10.0, 12.0];
pub const FIG3_NODES: usize = 5;
pub const FIG3B_POWER_DBM: f64 = 40.0;
pub const FIG4_NODES: [usize; 2] = [6, 9];

pub(crate) fn dispatch(command: Command, env_seed: Option<&str>) -> Result<(), CliError> {
    match command {
        Command::Bounds { scenario, out } => bounds(&scenario, &out),
        Command::Simulate { scenario, run, out } => simulate(&scenario, &run, env_seed, &out),
        Command::Sweep { scenario, run, axis, values, out, svg } => {
            sweep_cmd(&scenario, &run, env_seed, &axis, &values, &out, svg.as_deref())
        }
        Command::Figures { scenario, seed, trials, out } => {
            let base = load(scenario.as_deref())?;
            let run = RunArgs { seed, trials, n_nodes: None };
            figures(&apply_run(base, &run, env_seed)?, &out)
        }
        Command::Scenario { scenario, out } => {
            let s = with_mode(&scenario)?;
            s.to_config()?;
            write_text(&out, &s.to_json())
        }
    }
}

fn load(path: Option<&Path>) -> Result<Scenario, CliError> {
    match path {
        Some(p) => Scenario::load(p),
        None => Ok(Scenario::default()),
    }
}

fn with_mode(args: &ScenarioArgs) -> Result<Scenario, CliError> {
    let mut s = load(args.scenario.as_deref())?;
    if let Some(m) = args.mode {
        s.mode = m;
    }
    Ok(s)
}

/// Seed precedence: `--seed`, then the environment, then the scenario.
pub fn resolve_seed(flag: Option<u64>, env: Option<&str>, scenario_seed: u64) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match env {
        Some(raw) => raw
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("{} must be an unsigned 64-bit integer, got {raw:?}", crate::SEED_ENV))),
        None => Ok(scenario_seed),
    }
}

fn apply_run(mut s: Scenario, run: &RunArgs, env_seed: Option<&str>) -> Result<Scenario, CliError> {
    s.master_seed = resolve_seed(run.seed, env_seed, s.master_seed)?;
    if let Some(t) = run.trials {
        s.trials = t;
    }
    if let Some(n) = run.n_nodes {
        s.n_nodes = n;
    }
    Ok(s)
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn bounds_table(config: &ExperimentConfig) -> Result<Table, CliError> {
    let b = config.bounds()?;
    let mut t = Table::new(&BOUNDS_HEADER);
    t.push(vec![
        config.mode.to_string(),
        format_float(b.ps.lower.value()),
        format_float(b.ps.upper.value()),
        format_float(b.ps.raw_lower()),
        format_float(b.ps.raw_upper()),
        format_float(b.t_lower_s),
        format_float(b.t_upper_s),
        format_float(b.tps_lower),
        format_float(b.tps_upper),
    ]);
    Ok(t)
}

fn bounds(args: &ScenarioArgs, out: &Path) -> Result<(), CliError> {
    let config = with_mode(args)?.to_config()?;
    bounds_table(&config)?.write(out)?;
    info!("wrote {}", out.display());
    Ok(())
}

pub fn simulate_table(config: &ExperimentConfig) -> Result<Table, CliError> {
    info!("mode {} n {}: {} trials", config.mode, config.n_nodes, config.trials);
    let s = run_experiment(config)?;
    let b = config.bounds()?;
    let mut t = Table::new(&SIMULATE_HEADER);
    t.push(vec![
        config.mode.to_string(),
        config.n_nodes.to_string(),
        config.trials.to_string(),
        format_float(s.mean_latency_s),
        format_float(s.ci95_halfwidth_s),
        format_float(s.mean_tps),
        format_float(b.t_lower_s),
        format_float(b.t_upper_s),
        config.master_seed.to_string(),
    ]);
    Ok(t)
}

fn simulate(args: &ScenarioArgs, run: &RunArgs, env_seed: Option<&str>, out: &Path) -> Result<(), CliError> {
    let config = apply_run(with_mode(args)?, run, env_seed)?.to_config()?;
    simulate_table(&config)?.write(out)?;
    info!("wrote {}", out.display());
    Ok(())
}

/// Parses a comma-separated, strictly increasing list of numbers.
pub fn parse_values(raw: &str) -> Result<Vec<f64>, CliError> {
    let values = raw
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Config(format!("--values: {s:?} is not a finite number")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(CliError::Config("--values must list at least one value".into()));
    }
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Config("--values must be strictly increasing".into()));
    }
    Ok(values)
}

fn run_sweep(config: &ExperimentConfig, axis: Axis, values: &[f64]) -> Result<SweepResult, CliError> {
    info!("mode {} {} sweep over {values:?}: {} trials per point", config.mode, axis.name(), config.trials);
    Ok(sweep(config, axis, values)?)
}

fn push_sweep_rows(table: &mut Table, config: &ExperimentConfig, r: &SweepResult) {
    for k in 0..r.len() {
        let n = match r.axis {
            Axis::NNodes => r.axis_values[k] as usize,
            Axis::TxPowerDbm => config.n_nodes,
        };
        table.push(vec![
            config.mode.to_string(),
            r.axis_name().to_string(),
            format_float(r.axis_values[k]),
            n.to_string(),
            config.trials.to_string(),
            format_float(r.mean_latency_s[k]),
            format_float(r.ci95_halfwidth_s[k]),
            format_float(r.mean_tps[k]),
            format_float(r.bound_lower_s[k]),
            format_float(r.bound_upper_s[k]),
            config.master_seed.to_string(),
        ]);
    }
}

fn mean_series(label: String, r: &SweepResult, color: usize) -> Series {
    Series {
        label,
        x: r.axis_values.clone(),
        y: r.mean_latency_s.clone(),
        whiskers: Some(r.ci95_halfwidth_s.clone()),
        dashed: false,
        color,
    }
}

fn bound_series(label: &str, r: &SweepResult, color: usize) -> [Series; 2] {
    let b = |which: &str, y: &Vec<f64>| Series {
        label: format!("{label} {which}"),
        x: r.axis_values.clone(),
        y: y.clone(),
        whiskers: None,
        dashed: true,
        color,
    };
    [b("lower bound", &r.bound_lower_s), b("upper bound", &r.bound_upper_s)]
}

fn axis_label(axis: Axis) -> &'static str {
    match axis {
        Axis::TxPowerDbm => "transmit power (dBm)",
        Axis::NNodes => "chain nodes n",
    }
}

#[allow(clippy::too_many_arguments)]
fn sweep_cmd(
    args: &ScenarioArgs,
    run: &RunArgs,
    env_seed: Option<&str>,
    axis: &str,
    values: &str,
    out: &Path,
    svg: Option<&Path>,
) -> Result<(), CliError> {
    let axis: Axis = axis.parse()?;
    let values = parse_values(values)?;
    let config = apply_run(with_mode(args)?, run, env_seed)?.to_config()?;
    let r = run_sweep(&config, axis, &values)?;
    let mut table = Table::new(&SWEEP_HEADER);
    push_sweep_rows(&mut table, &config, &r);
    table.write(out)?;
    info!("wrote {}", out.display());
    if let Some(path) = svg {
        let mut series = vec![mean_series(format!("mode {} simulated", config.mode), &r, 0)];
        series.extend(bound_series("theory", &r, 1));
        let plot = Plot {
            title: format!("Mode {} latency", config.mode),
            x_label: axis_label(axis).into(),
            y_label: "latency (s)".into(),
            series,
        };
        write_text(path, &plot.to_svg())?;
        info!("wrote {}", path.display());
    }
    Ok(())
}

/// Names of the CSV files written by [`figures`].
pub const FIGURE_FILES: [&str; 5] = ["fig3a.csv", "fig3b.csv", "fig4_mode1.csv", "fig4_mode2.csv", "fig4_mode3.csv"];

/// Writes every figure's CSV and SVG into `dir`.
pub fn figures(base: &Scenario, dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let config_for = |mode: Mode, n: usize| -> Result<ExperimentConfig, CliError> {
        let mut s = base.clone();
        s.mode = mode.index();
        s.n_nodes = n;
        s.to_config()
    };
    let emit = |name: &str, table: &Table, plot: Plot| -> Result<(), CliError> {
        table.write(&dir.join(format!("{name}.csv")))?;
        write_text(&dir.join(format!("{name}.svg")), &plot.to_svg())?;
        info!("wrote {name}.csv and {name}.svg");
        Ok(())
    };

    let mut table = Table::new(&SWEEP_HEADER);
    let mut series = Vec::new();
    for (k, mode) in Mode::ALL.into_iter().enumerate() {
        let c = config_for(mode, FIG3_NODES)?;
        let r = run_sweep(&c, Axis::TxPowerDbm, &FIG_POWERS_DBM)?;
        push_sweep_rows(&mut table, &c, &r);
        series.push(mean_series(format!("mode {mode}"), &r, k));
    }
    emit(
        "fig3a",
        &table,
        Plot {
            title: format!("Latency vs transmit power, n = {FIG3_NODES}"),
            x_label: axis_label(Axis::TxPowerDbm).into(),
            y_label: "latency (s)".into(),
            series,
        },
    )?;

    let mut table = Table::new(&SWEEP_HEADER);
    let mut series = Vec::new();
    for (k, mode) in Mode::ALL.into_iter().enumerate() {
        let c = Axis::TxPowerDbm.apply(&config_for(mode, FIG3_NODES)?, FIG3B_POWER_DBM)?;
        let r = run_sweep(&c, Axis::NNodes, &FIG_NODES)?;
        push_sweep_rows(&mut table, &c, &r);
        series.push(mean_series(format!("mode {mode}"), &r, k));
    }
    emit(
        "fig3b",
        &table,
        Plot {
            title: format!("Latency vs chain nodes, {FIG3B_POWER_DBM} dBm"),
            x_label: axis_label(Axis::NNodes).into(),
            y_label: "latency (s)".into(),
            series,
        },
    )?;

    for mode in Mode::ALL {
        let mut table = Table::new(&SWEEP_HEADER);
        let mut series = Vec::new();
        let mut bounds = None;
        for (k, n) in FIG4_NODES.into_iter().enumerate() {
            let c = config_for(mode, n)?;
            let r = run_sweep(&c, Axis::TxPowerDbm, &FIG_POWERS_DBM)?;
            push_sweep_rows(&mut table, &c, &r);
            series.push(mean_series(format!("n = {n}"), &r, k));
            bounds.get_or_insert_with(|| bound_series("theory", &r, 3));
        }
        series.extend(bounds.into_iter().flatten());
        emit(
            &format!("fig4_mode{mode}"),
            &table,
            Plot {
                title: format!("Mode {mode} latency and bounds"),
                x_label: axis_label(Axis::TxPowerDbm).into(),
                y_label: "latency (s)".into(),
                series,
            },
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_precedence() {
        assert_eq!(resolve_seed(Some(1), Some("2"), 3).unwrap(), 1);
        assert_eq!(resolve_seed(None, Some(" 2 "), 3).unwrap(), 2);
        assert_eq!(resolve_seed(None, None, 3).unwrap(), 3);
        assert!(matches!(resolve_seed(None, Some("x"), 3), Err(CliError::Config(_))));
    }

    #[test]
    fn value_lists() {
        assert_eq!(parse_values("30, 35,40").unwrap(), vec![30.0, 35.0, 40.0]);
        assert_eq!(parse_values("-5,0").unwrap(), vec![-5.0, 0.0]);
        assert!(parse_values("").is_err());
        assert!(parse_values("40,30").is_err());
        assert!(parse_values("30,30").is_err());
        assert!(parse_values("30,abc").is_err());
    }

    #[test]
    fn reference_bounds_row() {
        let config = ExperimentConfig::reference(Mode::SatelliteChain, 5);
        let t = bounds_table(&config).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0][0], "3");
        assert_eq!(t.rows[0][2], "0.999775");
        let config = ExperimentConfig::reference(Mode::GroundChain, 5);
        let row = &bounds_table(&config).unwrap().rows[0];
        // The unclamped upper value is exactly 1 in double precision.
        assert_eq!(row[4], "1");
        let raw_lower: f64 = row[3].parse().unwrap();
        assert!((raw_lower - 0.078_004_054_601_811_08).abs() < 1e-9);
    }
}
