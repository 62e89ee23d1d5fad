//! Executes a [`RunConfig`]: computes the datasets for the chosen command
//! and writes them (plus plot scripts) into the output directory.

use std::path::PathBuf;

use crate::config::{Command, RunConfig};
use crate::dataset::{emit_dataset, Dataset};
use crate::error::Result;
use crate::experiments::{
    absorption_datasets_lines, convergence_dataset, convergence_study_with, fig5_dataset,
    regimes_dataset, run_sweep_with, solve_point, spectrum_dataset, sweep_datasets,
};
use crate::model::build_basis;
use crate::plot::{emit_plot_script, FigureId};

/// Files written by one run, in emission order.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct RunOutput {
    pub files: Vec<PathBuf>,
    /// Short human-readable summary lines.
    pub summary: Vec<String>,
}

struct Writer<'a> {
    config: &'a RunConfig,
    out: RunOutput,
    written: Vec<(String, PathBuf)>,
}

impl Writer<'_> {
    fn dataset(&mut self, d: &Dataset) -> Result<()> {
        let path =
            self.config
                .output_dir
                .join(format!("{}.{}", d.name(), self.config.format.extension()));
        emit_dataset(d, self.config.format, &path)?;
        self.written.push((d.name().to_string(), path.clone()));
        self.out.files.push(path);
        Ok(())
    }

    fn script(&mut self, fig: FigureId) -> Result<()> {
        let path = self
            .config
            .output_dir
            .join(format!("plot_{}.py", fig.as_str()));
        emit_plot_script(fig, &self.written, &path)?;
        self.out.files.push(path);
        Ok(())
    }
}

pub fn run(config: &RunConfig) -> Result<RunOutput> {
    let mut w = Writer {
        config,
        out: RunOutput::default(),
        written: Vec::new(),
    };
    let solver = config.solver();
    let params = &config.params;
    match config.command {
        Command::Spectrum => {
            let basis = build_basis(config.n_max);
            let sol = solve_point(params, &basis, &solver)?;
            w.dataset(&spectrum_dataset(&sol, &basis)?)?;
            w.out.summary.push(format!(
                "lambda = {}: E0(full) = {}, E0(rwa) = {}",
                params.lambda(),
                sol.full.eigenvalue(0),
                sol.rwa.eigenvalue(0)
            ));
        }
        Command::Sweep | Command::Observables => {
            let grid = config.grid_or_default();
            let rows = run_sweep_with(&grid, config.n_max, config.k_states, &solver)?;
            let (sweep, fig2, fig3, fig4l, fig4r) = sweep_datasets(&rows, grid.base())?;
            if config.command == Command::Sweep {
                for d in [&sweep, &fig2, &fig3] {
                    w.dataset(d)?;
                }
            }
            w.dataset(&fig4l)?;
            w.dataset(&fig4r)?;
            if config.command == Command::Sweep {
                w.script(FigureId::Fig2)?;
                w.script(FigureId::Fig3)?;
            }
            w.script(FigureId::Fig4)?;
            w.out.summary.push(format!(
                "{} grid points, lambda in [{}, {}]",
                rows.len(),
                grid.lambda_min(),
                grid.lambda_max()
            ));
        }
        Command::Absorption => {
            let lines = absorption_datasets_lines(
                params,
                config.n_max,
                config.threshold,
                config.dipole(),
                &solver,
            )?;
            w.dataset(&fig5_dataset(&lines)?)?;
            w.script(FigureId::Fig5)?;
            for (c, l) in &lines {
                w.out.summary.push(format!(
                    "{:>4}  0 -> {:<3} nu = {:.6}  I = {:.6}",
                    c.as_str(),
                    l.to_index,
                    l.frequency,
                    l.intensity
                ));
            }
        }
        Command::Converge => {
            let table =
                convergence_study_with(params, &config.n_max_list, config.k_states, &solver)?;
            w.dataset(&convergence_dataset(&table)?)?;
            for r in &table.rows {
                w.out.summary.push(format!(
                    "n_max = {:>3}: max |dE| = {:e}",
                    r.n_max, r.max_deviation
                ));
            }
        }
        Command::Regimes => {
            let d = regimes_dataset(&config.grid_or_default())?;
            w.dataset(&d)?;
        }
    }
    Ok(w.out)
}
