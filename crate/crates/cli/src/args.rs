use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "chamberforge", version, about = "Exact combinatorics of framed bundle chains")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Upper bound on the number of Weyl group elements enumerated.
    #[arg(long, global = true, value_name = "N")]
    pub weyl_cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    /// Named preset, e.g. PGL3, SL2, B2-adjoint, G2, GL2.
    #[arg(long, conflicts_with = "root_datum")]
    pub preset: Option<String>,
    /// Root datum JSON file.
    #[arg(long, value_name = "FILE")]
    pub root_datum: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Root data.
    #[command(subcommand)]
    Rootdata(RootdataCmd),
    /// Stacky fans.
    #[command(subcommand)]
    Fan(FanCmd),
    /// Σ-stability of splitting types.
    #[command(subcommand)]
    Stability(StabilityCmd),
    /// Cohomology dimensions of ad E(β).
    Cohomology(TypeArgs),
    /// Automorphism group shape and stabilizer order of E(β).
    Aut(TypeArgs),
    /// Vinberg monoid faces and their GIT classification.
    #[command(subcommand)]
    Vinberg(VinbergCmd),
    /// Cox construction and stratum classification.
    #[command(subcommand)]
    Cox(CoxCmd),
    /// Orbit posets and the worked families.
    #[command(subcommand)]
    Moduli(ModuliCmd),
}

#[derive(Subcommand, Debug)]
pub enum RootdataCmd {
    /// Print a root datum with its Cartan matrix and Weyl group order.
    Show(GroupArgs),
    /// List the preset names.
    List,
}

#[derive(Args, Debug)]
pub struct FanArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Fan JSON file: {"rays": [[..]], "cones": [[..]], "ordered": true}.
    #[arg(long, value_name = "FILE")]
    pub fan: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum FanCmd {
    /// Check the fan axioms (and chamber support when a group is given).
    Validate(FanArgs),
    /// The complete fan of Weyl translates.
    Weyl(FanArgs),
    /// Search for a strictly convex support function.
    Normal(FanArgs),
    /// Convex support and the projection-closure check.
    Support(FanArgs),
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub fan: FanArgs,
    /// Splitting type as JSON, e.g. "[[1,0],[1,1]]".
    #[arg(long = "type", value_name = "JSON", allow_hyphen_values = true)]
    pub beta: String,
}

#[derive(Subcommand, Debug)]
pub enum StabilityCmd {
    /// Decide Σ-stability of a splitting type.
    Classify(ClassifyArgs),
}

#[derive(Args, Debug)]
pub struct TypeArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Splitting type as JSON, e.g. "[[1,0],[0,1]]".
    #[arg(long = "type", value_name = "JSON", allow_hyphen_values = true)]
    pub beta: String,
}

#[derive(Args, Debug)]
pub struct RhoArg {
    /// Character ρ as a rational vector, e.g. "1,1/2"; defaults to Σϖ_i.
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum VinbergCmd {
    /// Every pair (I, J) with its face data and essentiality.
    Faces {
        #[command(flatten)]
        group: GroupArgs,
        /// Only list essential pairs.
        #[arg(long)]
        essential_only: bool,
    },
    /// Hilbert–Mumford classification of the orbits O_{I,J}.
    Git {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        rho: RhoArg,
        /// Restrict to one pair: simple-root indices of I, e.g. "0,1".
        #[arg(long = "i", value_name = "LIST", requires = "j_set")]
        i_set: Option<String>,
        /// Simple-root indices of J.
        #[arg(long = "j", value_name = "LIST", requires = "i_set")]
        j_set: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CoxCmd {
    /// Kernel, base map and the classification of every stratum (H, J).
    Classify {
        #[command(flatten)]
        fan: FanArgs,
        #[command(flatten)]
        rho: RhoArg,
    },
    /// Solve -α_i^∨ = Σ ℓ_j β_j with ℓ_j ≥ 0 on H.
    Destabilize {
        #[command(flatten)]
        fan: FanArgs,
        /// Simple-root index i (0-based).
        #[arg(long = "i")]
        index: usize,
        /// Ray indices of H, e.g. "0,2".
        #[arg(long = "h", value_name = "LIST", default_value = "")]
        h_set: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrbitFormat {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum ModuliCmd {
    /// Same as `stability classify`.
    Classify(ClassifyArgs),
    /// The orbit poset of a fan.
    Orbits {
        #[command(flatten)]
        group: GroupArgs,
        /// Fan JSON file; defaults to the canonical fan.
        #[arg(long, value_name = "FILE", conflicts_with = "kgl")]
        fan: Option<PathBuf>,
        /// Use the KGL_r fan; `r` defaults to the rank of a GL_r preset.
        #[arg(long, value_name = "R", num_args = 0..=1, default_missing_value = "0")]
        kgl: Option<usize>,
        /// Also write the poset as DOT to this file.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<OrbitFormat>,
    },
    /// The KGL_r fan as fan JSON.
    Kgl {
        #[arg(long)]
        r: usize,
    },
    /// The Losev–Manin splitting type of a marked chain.
    LosevManin {
        #[arg(long)]
        r: usize,
        /// Labels per component from p_+ to p_-, e.g. "0|1,2".
        #[arg(long, value_name = "BLOCKS", conflicts_with = "enumerate")]
        partition: Option<String>,
        /// Every ordered set partition, grouped by number of nodes.
        #[arg(long)]
        enumerate: bool,
    },
}
