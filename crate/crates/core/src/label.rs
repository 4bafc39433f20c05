use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Appearance class of a logo.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum LogoClass {
    /// Text and symbol together.
    Both,
    Text,
    Symbol,
}

impl LogoClass {
    pub const ALL: [LogoClass; 3] = [LogoClass::Both, LogoClass::Text, LogoClass::Symbol];

    pub fn name(self) -> &'static str {
        match self {
            LogoClass::Both => "BOTH",
            LogoClass::Text => "TEXT",
            LogoClass::Symbol => "SYMBOL",
        }
    }
}

impl fmt::Display for LogoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LogoClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        LogoClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Label(s.to_string()))
    }
}
