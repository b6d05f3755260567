//! Short names for theories and coefficient rings, as used on the command
//! line and in reports.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgl::{FormalGroupLaw, MoravaSpec};
use crate::quadric::{QuadricTheory, TheoryKind};
use crate::scalar::Base;

/// `chow`, `k0`, `k<n>` (Morava, `v` inverted) or `ck<n>` (connective).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Theory {
    Chow,
    K0,
    Morava(u32),
    Connective(u32),
}

impl Theory {
    pub fn kind(self) -> TheoryKind {
        match self {
            Theory::Chow => TheoryKind::Chow,
            Theory::K0 => TheoryKind::K0,
            Theory::Morava(n) => TheoryKind::Morava { n, connective: false },
            Theory::Connective(n) => TheoryKind::Morava { n, connective: true },
        }
    }

    pub fn morava_n(self) -> Option<u32> {
        match self {
            Theory::Morava(n) | Theory::Connective(n) => Some(n),
            _ => None,
        }
    }

    /// The formal group law over `coeff`, known up to degree `trunc`.
    pub fn law(self, coeff: Coeff, trunc: u32) -> Result<FormalGroupLaw> {
        let base = coeff.base();
        match self {
            Theory::Chow => FormalGroupLaw::additive(trunc)?.with_base(base),
            Theory::K0 => FormalGroupLaw::multiplicative(true, trunc)?.with_base(base),
            Theory::Morava(n) | Theory::Connective(n) => {
                let integral = if base == Base::F2 { Base::F2 } else { Base::Zloc2 };
                let spec = MoravaSpec::new(n, integral, matches!(self, Theory::Morava(_)));
                let f = FormalGroupLaw::morava(spec, trunc)?;
                if base == Base::Q {
                    f.with_base(Base::Q)
                } else {
                    Ok(f)
                }
            }
        }
    }

    /// The quadric of dimension `dim`, with the default truncation unless
    /// `trunc` asks for more.
    pub fn quadric(self, coeff: Coeff, dim: u32, trunc: Option<u32>) -> Result<QuadricTheory> {
        match trunc {
            Some(t) => QuadricTheory::standard_with_trunc(self.kind(), coeff.base(), dim, t),
            None => QuadricTheory::standard(self.kind(), coeff.base(), dim),
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theory::Chow => f.write_str("chow"),
            Theory::K0 => f.write_str("k0"),
            Theory::Morava(n) => write!(f, "k{n}"),
            Theory::Connective(n) => write!(f, "ck{n}"),
        }
    }
}

impl FromStr for Theory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let morava = |rest: &str| -> Option<u32> { rest.parse().ok().filter(|n| (1..=6).contains(n)) };
        match s.as_str() {
            "chow" | "ch" | "additive" => Ok(Theory::Chow),
            "k0" | "multiplicative" => Ok(Theory::K0),
            _ => {
                if let Some(n) = s.strip_prefix("ck").and_then(morava) {
                    Ok(Theory::Connective(n))
                } else if let Some(n) = s.strip_prefix('k').and_then(morava) {
                    Ok(Theory::Morava(n))
                } else {
                    Err(Error::Parse(format!("unknown theory `{s}` (expected chow, k0, k<n> or ck<n>)")))
                }
            }
        }
    }
}

impl TryFrom<String> for Theory {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Theory> for String {
    fn from(t: Theory) -> String {
        t.to_string()
    }
}

/// `f2`, `z2loc` or `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Coeff {
    F2,
    Z2loc,
    Q,
}

impl Coeff {
    pub const ALL: [Coeff; 3] = [Coeff::F2, Coeff::Z2loc, Coeff::Q];

    pub fn base(self) -> Base {
        match self {
            Coeff::F2 => Base::F2,
            Coeff::Z2loc => Base::Zloc2,
            Coeff::Q => Base::Q,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coeff::F2 => "f2",
            Coeff::Z2loc => "z2loc",
            Coeff::Q => "q",
        })
    }
}

impl FromStr for Coeff {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "f2" => Ok(Coeff::F2),
            "z2loc" | "zloc2" | "z2" | "z_(2)" => Ok(Coeff::Z2loc),
            "q" => Ok(Coeff::Q),
            other => Err(Error::Parse(format!("unknown coefficients `{other}` (expected f2, z2loc or q)"))),
        }
    }
}

impl TryFrom<String> for Coeff {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Coeff> for String {
    fn from(c: Coeff) -> String {
        c.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for t in [Theory::Chow, Theory::K0, Theory::Morava(2), Theory::Connective(3)] {
            assert_eq!(t.to_string().parse::<Theory>().unwrap(), t);
        }
        for c in Coeff::ALL {
            assert_eq!(c.to_string().parse::<Coeff>().unwrap(), c);
        }
        assert!("k9".parse::<Theory>().is_err());
        assert_eq!("Zloc2".parse::<Coeff>().unwrap(), Coeff::Z2loc);
        assert_eq!(serde_json::to_string(&Theory::Morava(3)).unwrap(), "\"k3\"");
    }
}
