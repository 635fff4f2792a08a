use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use skelsig_core::genvec::DEFAULT_BUDGET;

#[derive(Debug, Parser)]
#[command(name = "skelsig", version, about = "Skeletal signatures of group actions on Riemann surfaces")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Global {
    /// Catalog directory holding manifest.json (defaults to the bundled catalog).
    #[arg(long, global = true, env = "SKELSIG_CATALOG", value_name = "DIR")]
    pub catalog: Option<PathBuf>,
    /// Search budget in candidate entries per signature.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Riemann–Hurwitz genus of a signature, or admissibility of a point.
    Rh(RhArgs),
    /// Gap regions after L(σ,N).
    Gaps(GapsArgs),
    /// Check that a gap holds no skeletal signature.
    VerifyGap(VerifyGapArgs),
    /// Points (h, [2σ/3 − k]) inside G(σ,4,6).
    Missing(MissingArgs),
    /// Admissible and realized skeletal signatures of one genus.
    Kspace(KspaceArgs),
    /// The points (h,1) on genera p+1 and 2n(2h−1)−1.
    Sporadic(SporadicArgs),
    /// Search for, or verify, a generating vector.
    Genvec(GenvecArgs),
    /// Draw the (h,r)-plane as SVG (or its dataset as CSV/JSON).
    Plot(PlotArgs),
    /// List or validate a group catalog.
    Catalog(CatalogArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RhArgs {
    #[arg(long)]
    pub order: Option<u64>,
    /// Signature literal such as "(2;2,3)".
    #[arg(long)]
    pub sig: Option<String>,
    #[arg(long)]
    pub sigma: Option<u64>,
    #[arg(long)]
    pub h: Option<u64>,
    #[arg(long)]
    pub r: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GapsArgs {
    #[arg(long)]
    pub sigma: u64,
    #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [3, 4])]
    pub n: Vec<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyGapArgs {
    #[arg(long)]
    pub sigma: u64,
    #[arg(long)]
    pub n: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MissingArgs {
    #[arg(long)]
    pub sigma: u64,
    #[arg(long)]
    pub h: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct KspaceArgs {
    #[arg(long)]
    pub sigma: u64,
    /// Largest group order searched.
    #[arg(long, default_value_t = 15)]
    pub max_order: usize,
    #[arg(long)]
    pub h_max: Option<u64>,
    #[arg(long)]
    pub r_max: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SporadicArgs {
    #[arg(long)]
    pub h: u64,
    #[arg(long, value_delimiter = ',', required = true)]
    pub primes: Vec<u64>,
    #[arg(long, value_delimiter = ',')]
    pub witness_n: Vec<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenvecArgs {
    /// Group spec, e.g. "cyclic:5", "quaternion:2", "perm:4:(1 2 3);(2 3 4)".
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub sig: String,
    /// Vector to verify instead of searching: "a1,b1,...;c1,c2,..." as element indices.
    #[arg(long)]
    pub vector: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PlotArgs {
    #[arg(long)]
    pub sigma: u64,
    /// Also search the catalog for realized points.
    #[arg(long)]
    pub realized: bool,
    #[arg(long, default_value_t = 15)]
    pub max_order: usize,
    /// Also write the h,r,status table here.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CatalogArgs {
    /// Only groups of this order.
    #[arg(long)]
    pub order: Option<usize>,
}
