use std::path::Path;

use coprime_compositions::{Budget, Error, Result};
use serde::Deserialize;

use crate::args::{BudgetArgs, Format};

pub const DEFAULT_TABLE_LIMIT: u64 = 1_000_000;
pub const DEFAULT_WIDTH: f64 = 1e-5;
pub const DEFAULT_MAX_CUTOFF: u64 = 200_000_000;

/// Settings read from a TOML file. Every field is optional.
#[derive(Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub threads: Option<usize>,
    pub table_limit: Option<u64>,
    pub format: Option<Format>,
    pub budget: Option<BudgetFile>,
    pub constants: Option<ConstantsFile>,
}

#[derive(Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BudgetFile {
    pub enumeration: Option<u64>,
    pub fast_n_max: Option<u64>,
    pub fast_k_max: Option<u32>,
    pub dp_states: Option<u64>,
}

#[derive(Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ConstantsFile {
    pub width: Option<f64>,
    pub max_cutoff: Option<u64>,
    /// Width for the constants behind sweep main terms.
    pub main_term_width: Option<f64>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Budget with file values over defaults and flags over both.
    pub fn budget(&self, flags: &BudgetArgs) -> Budget {
        let mut b = Budget::default();
        if let Some(f) = &self.budget {
            b.enumeration = f.enumeration.unwrap_or(b.enumeration);
            b.fast_n_max = f.fast_n_max.unwrap_or(b.fast_n_max);
            b.fast_k_max = f.fast_k_max.unwrap_or(b.fast_k_max);
            b.dp_states = f.dp_states.unwrap_or(b.dp_states);
        }
        b.enumeration = flags.enumeration_budget.unwrap_or(b.enumeration);
        b.fast_n_max = flags.fast_n_max.unwrap_or(b.fast_n_max);
        b.fast_k_max = flags.fast_k_max.unwrap_or(b.fast_k_max);
        b
    }

    pub fn width(&self, flag: Option<f64>) -> f64 {
        flag.or(self.constants.as_ref().and_then(|c| c.width)).unwrap_or(DEFAULT_WIDTH)
    }

    pub fn main_term_width(&self, flag: Option<f64>) -> f64 {
        flag.or(self.constants.as_ref().and_then(|c| c.main_term_width))
            .unwrap_or(coprime_compositions::bounds::DEFAULT_CONSTANT_WIDTH)
    }

    pub fn max_cutoff(&self, flag: Option<u64>) -> u64 {
        flag.or(self.constants.as_ref().and_then(|c| c.max_cutoff)).unwrap_or(DEFAULT_MAX_CUTOFF)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_layers() {
        let cfg = FileConfig::parse(
            "threads = 2\nformat = \"csv\"\n[budget]\nenumeration = 500\n[constants]\nwidth = 1e-4\n",
        )
        .unwrap();
        assert_eq!(cfg.threads, Some(2));
        assert_eq!(cfg.format, Some(Format::Csv));
        let flags = BudgetArgs {
            fast_n_max: Some(10),
            ..BudgetArgs::default()
        };
        let b = cfg.budget(&flags);
        assert_eq!((b.enumeration, b.fast_n_max), (500, 10));
        assert_eq!(cfg.width(None), 1e-4);
        assert_eq!(cfg.width(Some(1e-6)), 1e-6);
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(FileConfig::parse("thread = 2").is_err());
        assert!(FileConfig::parse("[budget]\nfoo = 1").is_err());
        assert!(FileConfig::parse("format = \"xml\"").is_err());
    }
}
