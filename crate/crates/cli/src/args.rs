use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "orbifold",
    version,
    about = "Fuchsian group spectra, automorphic kernels and index coefficients"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub output: Format,
    /// Directory for cached length spectra.
    #[arg(long, global = true, env = "ORBIFOLD_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChiArg {
    Trivial,
    Sign,
}

/// `g,n,m1,m2,...`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigArg {
    pub genus: u32,
    pub cusps: u32,
    pub orders: Vec<u32>,
}

fn parse_sig(s: &str) -> Result<SigArg, String> {
    let nums = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("{t:?} is not a non-negative integer"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if nums.len() < 2 {
        return Err("expected g,n[,m1,...]".into());
    }
    Ok(SigArg {
        genus: nums[0],
        cusps: nums[1],
        orders: nums[2..].to_vec(),
    })
}

/// `x,y` with `y > 0`.
fn parse_point(s: &str) -> Result<Complex64, String> {
    let (x, y) = s.split_once(',').ok_or("expected x,y")?;
    let x: f64 = x.trim().parse().map_err(|_| format!("bad real part {x:?}"))?;
    let y: f64 = y.trim().parse().map_err(|_| format!("bad imaginary part {y:?}"))?;
    if !(x.is_finite() && y.is_finite() && y > 0.0) {
        return Err(format!("{s} is not in the upper half-plane"));
    }
    Ok(Complex64::new(x, y))
}

fn parse_nmax(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 1.0 && v <= 1e6 => Ok(v),
        _ => Err(format!("N_max must be a number in (1, 1e6], got {s:?}")),
    }
}

fn parse_s(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 1.0 && v.is_finite() => Ok(v),
        _ => Err(format!("s must be a finite number > 1, got {s:?}")),
    }
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("tolerance must be positive, got {s:?}")),
    }
}

fn parse_height(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("height must be positive, got {s:?}")),
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Root-of-unity sums against their closed forms.
    VerifyIdentities {
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(2..=2000))]
        mmax: u32,
        #[arg(long, default_value_t = 1e-10, value_parser = parse_tol)]
        tol: f64,
    },
    /// Chern-form coefficients of the weight-k determinant bundle.
    Chern {
        #[arg(long, value_parser = parse_sig)]
        sig: SigArg,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// dim Ω^{k,0} for k = 0..kmax.
    Dims {
        #[arg(long, value_parser = parse_sig)]
        sig: SigArg,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(i64).range(0..=1000))]
        kmax: i64,
    },
    /// Hyperbolic area of an orbifold signature.
    Area {
        #[arg(long, value_parser = parse_sig)]
        sig: SigArg,
    },
    /// Primitive length spectrum.
    Spectrum {
        #[arg(long)]
        group: String,
        #[arg(long, value_parser = parse_nmax)]
        nmax: f64,
    },
    /// Truncated Selberg zeta function.
    Zeta {
        #[arg(long)]
        group: String,
        #[arg(long, value_parser = parse_s)]
        s: f64,
        #[arg(long, value_parser = parse_nmax)]
        nmax: f64,
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(0..=1000))]
        imax: u32,
        #[arg(long, value_enum, default_value_t = ChiArg::Trivial)]
        chi: ChiArg,
    },
    /// Index-two factorisation of the zeta function for the built-in pair.
    Factorization {
        #[arg(long, default_value_t = 3.0, value_parser = parse_s)]
        s: f64,
        #[arg(long, value_parser = parse_nmax)]
        nmax: f64,
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(0..=1000))]
        imax: u32,
    },
    /// Eisenstein series at the group's cusp.
    Eisenstein {
        #[arg(long)]
        group: String,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, default_value_t = 2.0, value_parser = parse_s)]
        s: f64,
        /// Word-ball radius of the coset enumeration.
        #[arg(long = "L", default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=14))]
        radius: u32,
    },
    /// Automorphic Green function at s = 2.
    Green {
        #[arg(long)]
        group: String,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        zp: Complex64,
        #[arg(long = "L", default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=14))]
        radius: u32,
    },
    /// Cusp asymptotics of the Green function (cusp-frame coordinates).
    Fay {
        #[arg(long, default_value = "builtin:punctured-torus")]
        group: String,
        #[arg(long, default_value = "0.3,4.9", value_parser = parse_point, allow_hyphen_values = true)]
        zp: Complex64,
        #[arg(long = "ylist", value_delimiter = ',', default_value = "6,9,12", value_parser = parse_height)]
        ylist: Vec<f64>,
        #[arg(long = "L", default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=14))]
        radius: u32,
        /// Bound on the deviation at the largest height.
        #[arg(long, default_value_t = 0.05, value_parser = parse_tol)]
        tol: f64,
    },
    /// Elliptic family T_m and its parabolic limit.
    LimitTm {
        #[arg(long = "mlist", value_delimiter = ',', value_parser = clap::value_parser!(u32).range(2..=100000))]
        mlist: Vec<u32>,
        /// Used when --mlist is absent: m = 2..=mmax.
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(2..=100000))]
        mmax: u32,
    },
    /// Radial mode of (Δ₀ + ½)f = μν̄ near a cone point.
    OdeCheck {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=64))]
        m: u32,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        n: i64,
        /// Number of coefficients in each local expansion.
        #[arg(long = "J", default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=64))]
        j: u32,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        c0: f64,
    },
}
