//! Optional TOML defaults. Command-line flags and `WFLAG_JOBS` take
//! precedence over the file.
//!
//! ```toml
//! jobs = 8
//! emit = "csv"
//! strict_geometry = false
//! kernel_rule = "unrestricted"
//! progress = true
//! ```

use std::path::Path;

use anyhow::Context;
use serde::Deserialize;

use crate::emit::Emit;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum KernelRuleArg {
    #[default]
    Unrestricted,
    Admissible,
}

impl From<KernelRuleArg> for wflag_core::search::KernelRule {
    fn from(k: KernelRuleArg) -> Self {
        match k {
            KernelRuleArg::Unrestricted => Self::Unrestricted,
            KernelRuleArg::Admissible => Self::Admissible,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub jobs: Option<usize>,
    pub emit: Option<Emit>,
    pub strict_geometry: Option<bool>,
    pub kernel_rule: Option<KernelRuleArg>,
    pub progress: Option<bool>,
}

impl Settings {
    pub fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    /// Worker count: explicit value, then the file, then the machine.
    pub fn jobs(&self, explicit: Option<usize>) -> usize {
        explicit
            .or(self.jobs)
            .filter(|&j| j > 0)
            .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
    }
}
