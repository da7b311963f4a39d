use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    MirrorTest,
    Stringy,
    Twisted,
    Dims,
    LemmaSweep,
    DualitySweep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Exact checks for the Hitchin-system topological mirror test.
#[derive(Debug, Parser)]
#[command(name = "hitchin-mirror", version)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long)]
    pub g: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<i64>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub count: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// A validated invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub seed: Option<u64>,
    pub params: BTreeMap<&'static str, i64>,
    pub format: Format,
}

impl RunConfig {
    pub fn from_args(args: Args) -> Result<Self, CliError> {
        let mut params = BTreeMap::new();
        let unsigned = [
            ("g", args.g),
            ("n", args.n),
            ("m", args.m),
            ("k", args.k),
            ("count", args.count),
        ];
        for (key, value) in unsigned {
            if let Some(v) = value {
                params.insert(key, v as i64);
            }
        }
        for (key, value) in [("c", args.c), ("d", args.d)] {
            if let Some(v) = value {
                params.insert(key, v);
            }
        }
        let default_format = match args.command {
            Command::Dims => Format::Csv,
            _ => Format::Text,
        };
        let config = Self {
            command: args.command,
            input_path: args.input,
            output_path: args.out,
            seed: args.seed,
            params,
            format: args.format.unwrap_or(default_format),
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), CliError> {
        let required: &[&str] = match self.command {
            Command::MirrorTest => &["g", "m"],
            Command::Dims => &["n", "g"],
            Command::Stringy if self.input_path.is_none() => &["n", "g", "m"],
            Command::Twisted if self.input_path.is_none() => &["n", "g", "m", "c"],
            Command::Twisted => &["c"],
            _ => &[],
        };
        for key in required {
            if !self.params.contains_key(key) {
                return Err(CliError::Usage(format!(
                    "{} requires --{key}",
                    self.command_name()
                )));
            }
        }
        let sweep = matches!(self.command, Command::LemmaSweep | Command::DualitySweep);
        if sweep && self.output_path.is_some() && self.seed.is_none() {
            return Err(CliError::Usage(
                "writing sweep output requires an explicit --seed".into(),
            ));
        }
        Ok(())
    }

    pub fn command_name(&self) -> &'static str {
        match self.command {
            Command::MirrorTest => "mirror-test",
            Command::Stringy => "stringy",
            Command::Twisted => "twisted",
            Command::Dims => "dims",
            Command::LemmaSweep => "lemma-sweep",
            Command::DualitySweep => "duality-sweep",
        }
    }

    pub fn get(&self, key: &str) -> Option<i64> {
        self.params.get(key).copied()
    }

    pub fn get_u32(&self, key: &str) -> Result<Option<u32>, CliError> {
        self.get(key)
            .map(|v| u32::try_from(v).map_err(|_| CliError::Usage(format!("--{key} out of range"))))
            .transpose()
    }

    pub fn require_u32(&self, key: &str) -> Result<u32, CliError> {
        self.get_u32(key)?
            .ok_or_else(|| CliError::Usage(format!("{} requires --{key}", self.command_name())))
    }
}
