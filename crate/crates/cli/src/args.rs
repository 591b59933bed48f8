use clap::{value_parser, Args, Parser, Subcommand, ValueEnum};

use lenspec::rootsys::Family;

#[derive(Parser, Debug)]
#[command(
    name = "lenspec",
    version,
    about = "Root systems, Galois modules, quadratic units and quaternion algebras for length-spectrum computations"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Options shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Working precision of interval arithmetic, in bits
    #[arg(long, global = true, env = "LENSPEC_PRECISION", default_value_t = 256,
          value_parser = value_parser!(u32).range(16..=8192))]
    pub precision: u32,
    /// Coefficient bound for relation searches
    #[arg(long, global = true, default_value_t = 1000, value_parser = value_parser!(u64).range(1..))]
    pub coeff_bound: u64,
    /// Enumeration height for norm-one elements
    #[arg(long, global = true, default_value_t = 30, value_parser = value_parser!(u64).range(1..=65536))]
    pub height: u64,
    /// Largest power tried when matching eigenvalues across spectra
    #[arg(long, global = true, default_value_t = 6, value_parser = value_parser!(u32).range(1..=64))]
    pub power_bound: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: lenspec::Error| e.to_string())
}

#[derive(Args, Debug, Clone)]
pub struct SystemArgs {
    /// Killing–Cartan family letter (A–G)
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub rank: u32,
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArgs {
    /// Parameter a with i² = a
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    /// Parameter b with j² = b
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weyl group order of a root system
    Weyl(SystemArgs),
    /// Weyl group order attached to hyperbolic d-space
    HyperbolicWeyl {
        #[arg(long)]
        d: u32,
    },
    /// Root system in standard coordinates
    Roots(SystemArgs),
    /// Geodesic-length functional of a torus element
    Lambda {
        #[command(flatten)]
        system: SystemArgs,
        /// Eigenvalue parameters: rationals or lambda:T[^E]
        #[arg(long, allow_hyphen_values = true, conflicts_with = "mu")]
        values: Option<String>,
        /// Logarithmic coordinates (rationals)
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
    },
    /// Length ratio of the B_n element and its C_n partner
    Ratio {
        #[arg(long)]
        n: u32,
        /// Logarithmic coordinates; defaults to the first basis vector
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
    },
    /// Number of nontrivial conjugacy classes of the Weyl group
    Classes(SystemArgs),
    /// Hilbert symbol (a, b) at a place
    Hilbert {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// A prime or "real"
        #[arg(long)]
        place: String,
    },
    /// Ramification set of (a, b)
    Ramify(AlgebraArgs),
    /// Smallest (a, b) with a prescribed ramification set
    Mkalg {
        /// Comma-separated places, e.g. 2,3 or 2,real
        #[arg(long)]
        places: String,
        #[arg(long, default_value_t = lenspec::quatarith::DEFAULT_SEARCH_BOUND)]
        search_bound: u64,
    },
    /// Whether Q(sqrt d) embeds in (a, b)
    Embedfield {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
    },
    /// Norm-one elements of Z<1, i, j, k> up to the configured height
    Enumerate(AlgebraArgs),
    /// Hyperbolic trace spectrum up to the configured height
    Spectrum(AlgebraArgs),
    /// Check the source spectrum against a target algebra
    Compare {
        /// Source algebra "a,b"
        #[arg(long, allow_hyphen_values = true)]
        source: String,
        /// Target algebra "a,b"
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        /// Height of the target spectrum searched for power witnesses
        #[arg(long)]
        target_height: Option<u64>,
    },
    /// Bounded multiplicative-independence verdict
    Indep {
        /// Elements: rationals or lambda:T[^E], comma separated
        #[arg(long, allow_hyphen_values = true)]
        values: String,
    },
    /// Weak-containment search between two lists of positive values
    Contain {
        #[arg(long, allow_hyphen_values = true)]
        side1: String,
        #[arg(long, allow_hyphen_values = true)]
        side2: String,
        #[arg(long, default_value_t = 20, value_parser = value_parser!(u64).range(1..))]
        exponent_bound: u64,
    },
    /// Exponent d with d·X contained in the orbit lattice of σχ − χ
    Unscramble {
        /// Use the weight lattice of this family
        #[arg(long, value_parser = parse_family, requires = "rank", conflicts_with = "module")]
        family: Option<Family>,
        #[arg(long)]
        rank: Option<u32>,
        /// Galois module as JSON, or @path to a JSON file
        #[arg(long)]
        module: Option<String>,
        /// Character coordinates, comma separated
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
    },
    /// Embedding criteria for étale algebras in central simple algebras
    EtaleEmbed {
        /// Local mode: degrees of the factors
        #[arg(long)]
        degrees: Option<String>,
        /// Local mode: index of the local division algebra
        #[arg(long, requires = "degrees")]
        index: Option<u32>,
        /// Global mode: étale profile as JSON or @path
        #[arg(long, requires = "csa")]
        etale: Option<String>,
        /// Global mode: central simple algebra profile as JSON or @path
        #[arg(long)]
        csa: Option<String>,
        /// Compare maximal étale subalgebras of --csa and this profile
        #[arg(long, requires = "csa", conflicts_with = "etale")]
        csa2: Option<String>,
    },
    /// Divide a reciprocal characteristic polynomial by (x − 1)
    Truncate {
        /// Coefficients from the leading one down, comma separated
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Packaged experiments
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Subcommand, Debug)]
pub enum Experiment {
    /// Spectrum inclusion between the algebras ramified at {2,3} and {2,3,5,7}
    #[command(name = "example-7-4")]
    SpectrumInclusion {
        /// Height of the spectrum searched for power witnesses
        #[arg(long, default_value_t = 200)]
        witness_height: u64,
    },
    /// Seeded sweep of the B_n/C_n length ratio
    BcRatio {
        #[arg(long, default_value_t = 3)]
        n_min: u32,
        #[arg(long, default_value_t = 10)]
        n_max: u32,
        #[arg(long, default_value_t = 100, value_parser = value_parser!(u32).range(1..))]
        samples: u32,
        /// Evaluate a single n at the vector given by --mu instead
        #[arg(long, requires = "mu")]
        n: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
    },
}
