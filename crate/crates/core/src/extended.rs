use std::fmt;

/// A non-negative magnitude that may be infinite.
///
/// Used wherever a quantity has a legitimate infinite value (zero wavenumber,
/// phase velocity of a particle at rest, a stencil ratio with a vanishing
/// denominator) so that infinity is carried as a tag rather than as a float
/// overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended {
    Finite(f64),
    Infinite,
}

impl Extended {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            Extended::Finite(x) => Some(x),
            Extended::Infinite => None,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(x) => write!(f, "{x}"),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

/// Lattice wavelength `M` in space steps. `Infinite` is the zero-wavenumber mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Wavelength {
    Sites(u32),
    Infinite,
}

impl Wavelength {
    /// `1/M`, zero for the infinite wavelength.
    pub fn reciprocal(&self) -> f64 {
        match *self {
            Wavelength::Sites(m) => 1.0 / m as f64,
            Wavelength::Infinite => 0.0,
        }
    }

    pub fn sites(&self) -> Option<u32> {
        match *self {
            Wavelength::Sites(m) => Some(m),
            Wavelength::Infinite => None,
        }
    }
}

impl fmt::Display for Wavelength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Wavelength::Sites(m) => write!(f, "{m}"),
            Wavelength::Infinite => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for Wavelength {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Wavelength::Infinite),
            other => other
                .parse::<u32>()
                .map(Wavelength::Sites)
                .map_err(|e| format!("invalid wavelength {other:?}: {e}")),
        }
    }
}

impl serde::Serialize for Wavelength {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Wavelength::Sites(m) => s.serialize_u32(*m),
            Wavelength::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> serde::Deserialize<'de> for Wavelength {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(m) => Ok(Wavelength::Sites(m)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
