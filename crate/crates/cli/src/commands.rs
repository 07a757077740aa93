//! One table per subcommand. All values are computed before anything is written.

use fracwave::{
    coefficient_sweep, green, hyperbola_track, product_constant, propagation_speed, ExtremumCoeffs,
    ExtremumOptions, FracOrder, GreenQuery,
};
use rayon::prelude::*;

use crate::args::{Command, NuRange, Spacing, TRange, XRange};
use crate::error::CliError;
use crate::table::Table;

const FIELD: &[&str] = &["nu", "t", "x", "G", "abs_err"];
const COEFFS: &[&str] = &["nu", "c", "m", "c_err", "m_err"];

pub fn run(command: &Command, eps: f64) -> Result<Table, CliError> {
    match command {
        Command::Eval { nu, x, t } => {
            let r = green(GreenQuery::new(order(*nu)?, *x, *t)?, eps)?;
            let mut table = Table::new(&["nu", "x", "t", "G", "abs_err"]);
            table.push(vec![*nu, *x, *t, r.value, r.abs_err]);
            Ok(table)
        }
        Command::Coeffs { nu } => coeff_table(&[*nu], eps),
        Command::Profile { nu, t, x } => field(nu, &[*t], &x_grid(x)?, eps),
        Command::Surface { nu, t, x } => field(nu, &t_grid(t)?, &x_grid(x)?, eps),
        Command::Speed { nu, t } => {
            let ts = t_grid(t)?;
            let mut table = Table::new(&["nu", "t", "speed", "abs_err"]);
            for k in sweep(nu, eps)? {
                let v = k.nu.get();
                for &t in &ts {
                    let err = v * k.c_tol * t.powf(v - 1.0);
                    table.push(vec![v, t, propagation_speed(&k, t), err]);
                }
            }
            Ok(table)
        }
        Command::Hyperbola { nu, t } => {
            let ts = t_grid(t)?;
            let mut table = Table::new(&["nu", "t", "x", "G", "x_err", "G_err"]);
            for k in sweep(nu, eps)? {
                let v = k.nu.get();
                for (&t, (x, g)) in ts.iter().zip(hyperbola_track(&k, &ts)) {
                    table.push(vec![v, t, x, g, k.c_tol * t.powf(v), k.m_tol * t.powf(-v)]);
                }
            }
            Ok(table)
        }
        Command::Product { nu } => {
            let mut table = Table::new(&["nu", "c", "m", "product", "abs_err"]);
            for k in sweep(&nu_grid(nu)?, eps)? {
                // c_tol is exactly zero at the wave endpoint, where m is infinite
                let c_part = if k.c_tol > 0.0 { k.m * k.c_tol } else { 0.0 };
                let err = k.c * k.m_tol + c_part;
                table.push(vec![k.nu.get(), k.c, k.m, product_constant(&k), err]);
            }
            Ok(table)
        }
        Command::CoeffCurve { nu } => coeff_table(&nu_grid(nu)?, eps),
    }
}

fn order(nu: f64) -> Result<FracOrder, CliError> {
    Ok(FracOrder::new(nu)?)
}

fn sweep(nus: &[f64], eps: f64) -> Result<Vec<ExtremumCoeffs>, CliError> {
    let orders = nus
        .iter()
        .map(|&v| order(v))
        .collect::<Result<Vec<_>, _>>()?;
    let opts = ExtremumOptions {
        eps,
        ..ExtremumOptions::default()
    };
    Ok(coefficient_sweep(&orders, &opts)?)
}

fn coeff_table(nus: &[f64], eps: f64) -> Result<Table, CliError> {
    let mut table = Table::new(COEFFS);
    for k in sweep(nus, eps)? {
        table.push(vec![k.nu.get(), k.c, k.m, k.c_tol, k.m_tol]);
    }
    Ok(table)
}

fn field(nus: &[f64], ts: &[f64], xs: &[f64], eps: f64) -> Result<Table, CliError> {
    let mut points = Vec::with_capacity(nus.len() * ts.len() * xs.len());
    for &nu in nus {
        let nu = order(nu)?;
        for &t in ts {
            for &x in xs {
                points.push(GreenQuery::new(nu, x, t)?);
            }
        }
    }
    let rows = points
        .par_iter()
        .map(|&q| {
            let r = green(q, eps)?;
            Ok(vec![q.nu().get(), q.t(), q.x(), r.value, r.abs_err])
        })
        .collect::<Result<Vec<_>, fracwave::Error>>()?;
    let mut table = Table::new(FIELD);
    for row in rows {
        table.push(row);
    }
    Ok(table)
}

fn x_grid(r: &XRange) -> Result<Vec<f64>, CliError> {
    grid("x", r.x_from, r.x_to, r.x_steps, Spacing::Linear)
}

fn t_grid(r: &TRange) -> Result<Vec<f64>, CliError> {
    grid("t", r.t_from, r.t_to, r.t_steps, r.spacing)
}

fn nu_grid(r: &NuRange) -> Result<Vec<f64>, CliError> {
    grid("nu", r.nu_from, r.nu_to, r.steps, Spacing::Linear)
}

/// `n ≥ 2` points from `lo` to `hi`, both endpoints hit exactly.
fn grid(name: &str, lo: f64, hi: f64, n: u32, spacing: Spacing) -> Result<Vec<f64>, CliError> {
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(CliError::Usage(format!(
            "{name} range [{lo}, {hi}] must be finite and increasing"
        )));
    }
    if spacing == Spacing::Log && lo <= 0.0 {
        return Err(CliError::Usage(format!(
            "logarithmic {name} grid needs a positive start, got {lo}"
        )));
    }
    let last = (n - 1) as f64;
    Ok((0..n)
        .map(|i| {
            if i == n - 1 {
                return hi;
            }
            let s = i as f64 / last;
            match spacing {
                Spacing::Linear => lo + (hi - lo) * s,
                Spacing::Log => lo * (hi / lo).powf(s),
            }
        })
        .collect())
}
