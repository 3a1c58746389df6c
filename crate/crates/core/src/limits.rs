use crate::error::{Error, Result};

/// Size limits for the exhaustive and transfer-matrix oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Limits {
    /// Maximum number of matchings an enumeration may produce.
    pub enumeration: u64,
    /// Maximum number of matchings for exhaustive moment oracles.
    pub exhaustive: u64,
    /// Maximum band window (lo + hi + 1) for the transfer DP.
    pub bandwidth: usize,
    /// Largest n accepted for exact rational arithmetic.
    pub exact_n: usize,
    /// Largest n for the Ryser permanent fallback.
    pub ryser_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: 1_000_000,
            exhaustive: 100_000,
            bandwidth: 20,
            exact_n: 20,
            ryser_n: 30,
        }
    }
}

pub const LIMITS_ENV: &str = "SIMATCH_LIMITS";

impl Limits {
    /// Parses `key=value` pairs separated by commas, e.g. `enum=5000000,band=16`.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut lim = Limits::default();
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("bad limit entry '{part}'")))?;
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad limit value '{part}'")))?;
            match k.trim() {
                "enum" | "enumeration" => lim.enumeration = v,
                "exhaustive" => lim.exhaustive = v,
                "band" | "bandwidth" => lim.bandwidth = v as usize,
                "exact" | "exact_n" => lim.exact_n = v as usize,
                "ryser" | "ryser_n" => lim.ryser_n = v as usize,
                other => return Err(Error::InvalidParameter(format!("unknown limit '{other}'"))),
            }
        }
        if lim.bandwidth > 30 {
            return Err(Error::InvalidParameter("bandwidth limit above 30".into()));
        }
        Ok(lim)
    }

    /// Defaults overridden by `SIMATCH_LIMITS` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(LIMITS_ENV) {
            Ok(s) => Self::parse(&s),
            Err(_) => Ok(Self::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_overrides() {
        let l = Limits::parse("enum=10, band=8").unwrap();
        assert_eq!(l.enumeration, 10);
        assert_eq!(l.bandwidth, 8);
        assert_eq!(l.exhaustive, Limits::default().exhaustive);
        assert!(Limits::parse("bogus=1").is_err());
        assert!(Limits::parse("enum").is_err());
    }
}
