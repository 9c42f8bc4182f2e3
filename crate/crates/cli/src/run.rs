//! Executes a resolved configuration into a [`Table`].

use qnet_core::propagate::{output_intensities, propagate, single_mode_input, superposition_input};
use qnet_core::spectrum::{critical_point, gammas, regime_classify, sweep_gamma0};
use qnet_core::{NetworkSpec, Regime};

use crate::config::{InputSpec, Job};
use crate::table::{Cell, Summary, Table};
use crate::CliError;

pub const SPECTRUM_COLUMNS: &[&str] = &["n", "re_gamma", "im_gamma", "abs_exp_gamma"];
pub const SWEEP_COLUMNS: &[&str] = &[
    "phi",
    "gamma0",
    "dleft",
    "dright",
    "gain_or_transmittance",
    "theta_gain",
    "label",
];
pub const KINK_COLUMNS: &[&str] = &["phi", "gamma0", "jump", "background"];
pub const PROPAGATE_COLUMNS: &[&str] = &["index", "re_amp", "im_amp", "intensity"];
pub const CRITICAL_COLUMNS: &[&str] = &[
    "regime",
    "phi_c",
    "gain_c",
    "transmittance_c",
    "kt_c_over_eps",
];
pub const REGIME_COLUMNS: &[&str] = &["regime", "phi", "label"];

fn opt(x: Option<f64>) -> Cell {
    x.map_or(Cell::Empty, Cell::Float)
}

fn regime_cell(r: Regime) -> Cell {
    Cell::Text(r.to_string())
}

pub fn execute(job: &Job) -> Result<Table, CliError> {
    match job {
        Job::Spectrum(spec) => Ok(spectrum(spec)),
        Job::Sweep(cfg) => {
            let sweep = sweep_gamma0(cfg)?;
            let mut t = Table::new("sweep", SWEEP_COLUMNS);
            for r in &sweep.rows {
                t.push(vec![
                    Cell::Float(r.phi),
                    Cell::Float(r.gamma0),
                    Cell::Float(r.dleft),
                    Cell::Float(r.dright),
                    Cell::Float(r.gain_or_transmittance),
                    opt(r.theta_gain),
                    Cell::Text(r.label.to_string()),
                ]);
            }
            let kink = sweep.kink.map(|k| {
                vec![
                    Cell::Float(k.phi),
                    Cell::Float(k.gamma0),
                    Cell::Float(k.jump),
                    Cell::Float(k.background),
                ]
            });
            t.summary = Some(Summary {
                name: "kink",
                columns: KINK_COLUMNS,
                cells: kink,
            });
            Ok(t)
        }
        Job::Propagate(spec, input) => {
            let n = spec.n_pairs();
            let state = match *input {
                InputSpec::Superposition(k) => superposition_input(n, k)?,
                InputSpec::Mode(j) => single_mode_input(n, j)?,
            };
            let out = propagate(&state, spec)?;
            let mut t = Table::new("propagate", PROPAGATE_COLUMNS);
            for (i, (z, p)) in out
                .amplitudes()
                .iter()
                .zip(output_intensities(&out))
                .enumerate()
            {
                t.push(vec![
                    Cell::Int(i + 1),
                    Cell::Float(z.re),
                    Cell::Float(z.im),
                    Cell::Float(p),
                ]);
            }
            Ok(t)
        }
        Job::Critical(regime) => {
            let c = critical_point(*regime);
            let mut t = Table::new("critical", CRITICAL_COLUMNS);
            t.push(vec![
                regime_cell(c.regime),
                Cell::Float(c.phi_c),
                opt(c.gain_c),
                opt(c.transmittance_c),
                opt(c.kt_c_over_eps),
            ]);
            Ok(t)
        }
        Job::Regime(spec) => {
            let label = regime_classify(spec)?;
            let mut t = Table::new("regime", REGIME_COLUMNS);
            t.push(vec![
                regime_cell(spec.regime()),
                Cell::Float(spec.phi().magnitude()),
                Cell::Text(label.to_string()),
            ]);
            Ok(t)
        }
    }
}

fn spectrum(spec: &NetworkSpec) -> Table {
    let mut t = Table::new("spectrum", SPECTRUM_COLUMNS);
    for (n, g) in gammas(spec).into_iter().enumerate() {
        t.push(vec![
            Cell::Int(n),
            Cell::Float(g.re),
            Cell::Float(g.im),
            Cell::Float(g.re.exp()),
        ]);
    }
    t
}
