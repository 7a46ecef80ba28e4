use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "ogr", version, about = "Mod-2 cohomology of real and oriented Grassmannians")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Directory for cached relation rows.
    #[arg(long, env = "OGR_CACHE_DIR", global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, env = "OGR_THREADS", default_value_t = 0, global = true)]
    pub threads: usize,
    /// Largest degree to build; defaults to the top degree.
    #[arg(long, global = true)]
    pub max_degree: Option<u32>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Mod-2 Betti numbers of Gr_k(n) or its oriented double cover.
    Betti {
        k: usize,
        n: usize,
        #[arg(long)]
        oriented: bool,
    },
    /// Degrees of 4-torsion in H*(oriented Gr_k(n); Z).
    Torsion4 {
        k: usize,
        n: usize,
        /// Scan every n from N through this value.
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Characteristic rank of the oriented Grassmannian.
    Charrank { k: usize, n: usize },
    /// Deficiency (0 or 1) of the oriented Grassmannian.
    Deficiency { k: usize, n: usize },
    /// Height of w1.
    Height {
        k: usize,
        n: usize,
        #[arg(long, value_enum, default_value_t = Oracle::Quotient)]
        oracle: Oracle,
    },
    /// Relations among q_{n-k+1}..q_n and their boundaries in ker w1.
    Koszul {
        k: usize,
        n: usize,
        /// Largest relation degree to scan (default n + k).
        #[arg(long)]
        degree_max: Option<u32>,
    },
    /// Find, verify or print a separating-monomial certificate.
    Certificate {
        #[arg(required_unless_present_any = ["verify", "appendix"])]
        k: Option<usize>,
        #[arg(required_unless_present_any = ["verify", "appendix"])]
        n: Option<usize>,
        #[arg(required_unless_present_any = ["verify", "appendix"])]
        degree: Option<u32>,
        /// Verify a certificate stored as JSON instead of searching.
        #[arg(long, conflicts_with = "appendix")]
        verify: Option<PathBuf>,
        /// Print the hand-built table for Gr_5(2^T - 1).
        #[arg(long, value_name = "T")]
        appendix: Option<u32>,
        /// With --appendix: degree 2^T - 3 + OFFSET.
        #[arg(long, default_value_t = 0, requires = "appendix")]
        offset: u32,
    },
    /// Check the class identities in the free polynomial rings.
    VerifyIdentities,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    #[value(name = "2")]
    #[serde(rename = "2")]
    Two,
    #[value(name = "3")]
    #[serde(rename = "3")]
    Three,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Oracle {
    Quotient,
    Schubert,
    Both,
}

/// Everything that determines a run, echoed into every output.
#[derive(Serialize, Debug, Clone)]
pub struct RunConfig {
    pub command: &'static str,
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub n_max: Option<usize>,
    pub t: Option<u32>,
    pub degree: Option<u32>,
    pub max_degree: Option<u32>,
    pub method: Option<Method>,
    pub oracle: Option<Oracle>,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub threads: usize,
}

impl RunConfig {
    pub fn resolve(cli: &Cli) -> Result<Self, String> {
        let g = &cli.global;
        let mut cfg = RunConfig {
            command: "",
            k: None,
            n: None,
            n_max: None,
            t: None,
            degree: None,
            max_degree: g.max_degree,
            method: None,
            oracle: None,
            format: g.format,
            cache_dir: g.cache_dir.clone(),
            threads: g.threads,
        };
        let mut kn = |k: usize, n: usize| {
            cfg.k = Some(k);
            cfg.n = Some(n);
        };
        let command = match &cli.command {
            Command::Betti { k, n, .. } => {
                kn(*k, *n);
                "betti"
            }
            Command::Torsion4 { k, n, n_max, method } => {
                kn(*k, *n);
                cfg.n_max = *n_max;
                cfg.method = Some(*method);
                "torsion4"
            }
            Command::Charrank { k, n } => {
                kn(*k, *n);
                "charrank"
            }
            Command::Deficiency { k, n } => {
                kn(*k, *n);
                "deficiency"
            }
            Command::Height { k, n, oracle } => {
                kn(*k, *n);
                cfg.oracle = Some(*oracle);
                "height"
            }
            Command::Koszul { k, n, degree_max } => {
                kn(*k, *n);
                cfg.degree = *degree_max;
                "koszul"
            }
            Command::Certificate {
                k,
                n,
                degree,
                appendix,
                ..
            } => {
                cfg.k = *k;
                cfg.n = *n;
                cfg.degree = *degree;
                cfg.t = *appendix;
                "certificate"
            }
            Command::VerifyIdentities => "verify-identities",
        };
        cfg.command = command;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), String> {
        if let (Some(k), Some(n)) = (self.k, self.n) {
            if k == 0 || k > n {
                return Err(format!("need 1 <= k <= n, got k = {k}, n = {n}"));
            }
            if self.command == "deficiency" && k < 2 {
                return Err("deficiency needs k >= 2".into());
            }
        }
        if let (Some(n), Some(m)) = (self.n, self.n_max) {
            if m < n {
                return Err(format!("--n-max {m} is below n = {n}"));
            }
        }
        if let Some(t) = self.t {
            if !(4..=8).contains(&t) {
                return Err(format!("--appendix needs 4 <= T <= 8, got {t}"));
            }
        }
        Ok(())
    }
}
