use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Default accuracy target when neither `--eps` nor `FRACWAVE_EPS` is given.
pub const DEFAULT_EPS: f64 = 1e-10;

/// Evaluate the fundamental solution of the time-fractional
/// diffusion-wave equation and the trajectory of its maximum.
#[derive(Debug, Parser, Serialize)]
#[command(name = "fracwave", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Absolute accuracy target for every value.
    #[arg(long, global = true, env = "FRACWAVE_EPS", default_value_t = DEFAULT_EPS)]
    pub eps: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// G(x, t) at a single point.
    Eval {
        #[arg(long)]
        nu: f64,
        #[arg(long)]
        x: f64,
        #[arg(long)]
        t: f64,
    },
    /// Maximum location and value coefficients c and m for one order.
    Coeffs {
        #[arg(long)]
        nu: f64,
    },
    /// G(x, t) on an x-grid at fixed t, for one or more orders.
    Profile {
        #[arg(long, required = true, num_args = 1..)]
        nu: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[command(flatten)]
        x: XRange,
    },
    /// G(x, t) on an x-by-t grid.
    Surface {
        #[arg(long, required = true, num_args = 1..)]
        nu: Vec<f64>,
        #[command(flatten)]
        t: TRange,
        #[command(flatten)]
        x: XRange,
    },
    /// Speed of the maximum over time.
    Speed {
        #[arg(long, required = true, num_args = 1..)]
        nu: Vec<f64>,
        #[command(flatten)]
        t: TRange,
    },
    /// Location and height of the maximum over time.
    Hyperbola {
        #[arg(long, required = true, num_args = 1..)]
        nu: Vec<f64>,
        #[command(flatten)]
        t: TRange,
    },
    /// The time-invariant product c·m over a range of orders.
    Product {
        #[command(flatten)]
        nu: NuRange,
    },
    /// c and m over a range of orders.
    CoeffCurve {
        #[command(flatten)]
        nu: NuRange,
    },
}

#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct XRange {
    #[arg(long, default_value_t = 0.0)]
    pub x_from: f64,
    #[arg(long, default_value_t = 3.0)]
    pub x_to: f64,
    /// Number of grid points, endpoints included.
    #[arg(long = "steps", visible_alias = "x-steps", default_value_t = 61, value_parser = clap::value_parser!(u32).range(2..))]
    pub x_steps: u32,
}

#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct TRange {
    #[arg(long, default_value_t = 1.0)]
    pub t_from: f64,
    #[arg(long, default_value_t = 2.0)]
    pub t_to: f64,
    /// Number of time points, endpoints included.
    #[arg(long, default_value_t = 21, value_parser = clap::value_parser!(u32).range(2..))]
    pub t_steps: u32,
    #[arg(long, value_enum, default_value_t = Spacing::Linear)]
    pub spacing: Spacing,
}

#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct NuRange {
    #[arg(long, default_value_t = 0.5)]
    pub nu_from: f64,
    #[arg(long, default_value_t = 0.99)]
    pub nu_to: f64,
    /// Number of orders, endpoints included.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(2..))]
    pub steps: u32,
}
