//! Self-contained matplotlib scripts that render the figures from the
//! emitted datasets. Nothing is rendered in-process.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

impl FigureId {
    pub const ALL: [FigureId; 4] = [
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
        }
    }

    /// Dataset names the script reads.
    pub fn datasets(&self) -> &'static [&'static str] {
        match self {
            FigureId::Fig2 => &["fig2"],
            FigureId::Fig3 => &["fig3"],
            FigureId::Fig4 => &["fig4_left", "fig4_right"],
            FigureId::Fig5 => &["fig5"],
        }
    }

    fn body(&self) -> &'static str {
        match self {
            FigureId::Fig2 => FIG2,
            FigureId::Fig3 => FIG3,
            FigureId::Fig4 => FIG4,
            FigureId::Fig5 => FIG5,
        }
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown figure id '{s}' (expected fig2..fig5)")))
    }
}

const PRELUDE: &str = r#"#!/usr/bin/env python3
# Generated by polariscope. Renders @FIG@ from the datasets listed in DATA.
import csv
import json
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = @DATA@


def _num(v):
    try:
        return float(v)
    except (TypeError, ValueError):
        return v


def load(name):
    path = os.path.join(HERE, DATA[name])
    if path.endswith(".json"):
        with open(path) as f:
            return [{k: _num(v) for k, v in r.items()} for r in json.load(f)]
    with open(path, newline="") as f:
        return [{k: _num(v) for k, v in r.items()} for r in csv.DictReader(f)]


def col(rows, key):
    return [r[key] for r in rows]


def n_states(rows, prefix):
    return sum(1 for k in rows[0] if k.startswith(prefix + "_"))

"#;

const FIG2: &str = r#"
rows = load("fig2")
lam = col(rows, "lambda")
fig, ax = plt.subplots(figsize=(5, 4))
for key, color in [("e_rwa_g0", "black"), ("e_rwa_p1_minus", "red"), ("e_rwa_p1_plus", "blue")]:
    ax.plot(lam, col(rows, key), "-", color=color)
for k, color in enumerate(["black", "red", "blue"]):
    ax.plot(lam, col(rows, "e_full_%d" % k), "--", color=color)
ax.set_xlabel(r"$\lambda/\omega_c$")
ax.set_ylabel("energy")
fig.tight_layout()
fig.savefig(os.path.join(HERE, "fig2.png"), dpi=150)
"#;

const FIG3: &str = r#"
rows = load("fig3")
lam = col(rows, "lambda")
fig, ax = plt.subplots(figsize=(5, 4))
ax.plot(lam, col(rows, "nu_rwa_p1_minus"), "-", color="red")
ax.plot(lam, col(rows, "nu_rwa_p1_plus"), "-", color="blue")
ax.plot(lam, col(rows, "nu_full_1"), "--", color="red")
ax.plot(lam, col(rows, "nu_full_2"), "--", color="blue")
ax.plot(lam, col(rows, "nu_bare"), "--", color="gray")
ax.set_xlabel(r"$\lambda/\omega_c$")
ax.set_ylabel(r"$\nu$")
inset = ax.inset_axes([0.12, 0.58, 0.35, 0.35])
inset.plot(lam, col(rows, "delta_nu_full"), "--", color="black")
inset.set_title(r"$\Delta\nu$", fontsize=8)
fig.tight_layout()
fig.savefig(os.path.join(HERE, "fig3.png"), dpi=150)
"#;

const FIG4: &str = r#"
COLORS = ["black", "red", "green", "orange", "brown", "gray", "pink"]
BLOCK_COLORS = ["cyan", "blue", "magenta", "purple"]


def panel(ax, rows, full, rwa, ylabel):
    lam = col(rows, "lambda")
    k = n_states(rows, full)
    # full-H curves follow the tracked labels; even dashed, odd dotted
    for label in range(k):
        xs, ys, style = [], [], "--"
        for r in rows:
            for j in range(k):
                if int(r["trk_full_%d" % j]) == label:
                    xs.append(r["lambda"])
                    ys.append(r["%s_%d" % (full, j)])
                    style = "--" if r["parity_full_%d" % j] == "even" else ":"
        ax.plot(xs, ys, style, color=COLORS[label % len(COLORS)])
    # RWA curves grouped by excitation block, solid
    for block in range(len(BLOCK_COLORS)):
        series = {}
        for r in rows:
            rank = 0
            for j in range(k):
                if int(r["block_rwa_%d" % j]) == block:
                    series.setdefault(rank, ([], []))
                    series[rank][0].append(r["lambda"])
                    series[rank][1].append(r["%s_%d" % (rwa, j)])
                    rank += 1
        for xs, ys in series.values():
            ax.plot(xs, ys, "-", color=BLOCK_COLORS[block])
    ax.set_xlabel(r"$\lambda/\omega_c$")
    ax.set_ylabel(ylabel)


fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))
panel(left, load("fig4_left"), "nbar_full", "nbar_rwa", r"$\bar n$")
panel(right, load("fig4_right"), "eatom_full", "eatom_rwa", r"$\bar E$")
fig.tight_layout()
fig.savefig(os.path.join(HERE, "fig4.png"), dpi=150)
"#;

const FIG5: &str = r#"
ENHANCE = 10.0
rows = load("fig5")
full = sorted((r for r in rows if r["hamiltonian"] == "full"), key=lambda r: r["frequency"])
rwa = [r for r in rows if r["hamiltonian"] == "rwa"]
fig, ax = plt.subplots(figsize=(5, 4))
for i, r in enumerate(full[:4]):
    h = r["intensity"] * (ENHANCE if i in (2, 3) else 1.0)
    ax.vlines(r["frequency"], 0.0, h, colors="red", linestyles="solid")
for r in rwa:
    ax.vlines(r["frequency"], 0.0, r["intensity"], colors="blue", linestyles="dashed")
ax.set_xlabel(r"$\nu/\omega_c$")
ax.set_ylabel("relative intensity")
fig.tight_layout()
fig.savefig(os.path.join(HERE, "fig5.png"), dpi=150)
"#;

/// Write the plotting script for `figure`. `dataset_paths` must cover every
/// name in [`FigureId::datasets`]; they are referenced relative to the
/// script's directory when possible.
pub fn emit_plot_script(
    figure: FigureId,
    dataset_paths: &[(String, PathBuf)],
    out: &Path,
) -> Result<()> {
    let script_dir = out.parent().unwrap_or(Path::new(""));
    let mut entries = Vec::new();
    for &name in figure.datasets() {
        let path = dataset_paths
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
            .ok_or_else(|| Error::Usage(format!("{} needs dataset '{name}'", figure.as_str())))?;
        if !path.exists() {
            return Err(Error::io(
                path,
                std::io::Error::new(std::io::ErrorKind::NotFound, "dataset missing"),
            ));
        }
        let rel = path.strip_prefix(script_dir).unwrap_or(path);
        entries.push(format!(
            "{}: {}",
            py_str(name),
            py_str(&rel.to_string_lossy())
        ));
    }
    let data = format!("{{{}}}", entries.join(", "));
    let script = PRELUDE
        .replace("@FIG@", figure.as_str())
        .replace("@DATA@", &data)
        + figure.body();
    if !script_dir.as_os_str().is_empty() {
        fs::create_dir_all(script_dir).map_err(|e| Error::io(script_dir, e))?;
    }
    fs::write(out, script).map_err(|e| Error::io(out, e))
}

fn py_str(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_id_is_usage_error() {
        assert!(matches!("fig9".parse::<FigureId>(), Err(Error::Usage(_))));
        assert_eq!("fig5".parse::<FigureId>().unwrap(), FigureId::Fig5);
    }

    #[test]
    fn fig2_script_draws_solid_and_dashed() {
        let dir = tempfile::tempdir().unwrap();
        let data = dir.path().join("fig2.csv");
        fs::write(&data, "lambda\n").unwrap();
        let out = dir.path().join("plot_fig2.py");
        emit_plot_script(FigureId::Fig2, &[("fig2".into(), data)], &out).unwrap();
        let s = fs::read_to_string(out).unwrap();
        assert!(s.contains("DATA = {\"fig2\": \"fig2.csv\"}"));
        assert_eq!(s.matches("\"-\", color=color").count(), 1);
        assert_eq!(s.matches("\"--\", color=color").count(), 1);
        assert!(s.contains("[\"black\", \"red\", \"blue\"]"));
    }

    #[test]
    fn fig5_script_enhances_third_and_fourth_lines() {
        let dir = tempfile::tempdir().unwrap();
        let data = dir.path().join("fig5.json");
        fs::write(&data, "[]").unwrap();
        let out = dir.path().join("plot_fig5.py");
        emit_plot_script(FigureId::Fig5, &[("fig5".into(), data)], &out).unwrap();
        let s = fs::read_to_string(out).unwrap();
        assert!(s.contains("ENHANCE = 10.0"));
        assert!(s.contains("i in (2, 3)"));
        assert!(s.contains("colors=\"red\", linestyles=\"solid\""));
        assert!(s.contains("colors=\"blue\", linestyles=\"dashed\""));
    }

    #[test]
    fn missing_dataset_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("plot_fig4.py");
        assert!(matches!(
            emit_plot_script(FigureId::Fig4, &[], &out),
            Err(Error::Usage(_))
        ));
        let gone = dir.path().join("nope.csv");
        assert!(matches!(
            emit_plot_script(FigureId::Fig2, &[("fig2".into(), gone)], &out),
            Err(Error::Io { .. })
        ));
    }
}
