use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::EneError;

pub const DEFAULT_COMPLEX_EPS: f64 = 1e-9;

/// Names one of the supported coefficient rings.
///
/// The JSON form is tagged by `kind`; the short text form (`Q`, `Z`,
/// `Zmod:7`, `C:1e-9`) is what the command line accepts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RingDescriptor {
    BigRational,
    BigInteger,
    Modular { modulus: u64 },
    ComplexFloat { eps: f64 },
    GaussianRational,
    MultivariatePoly { base: Box<RingDescriptor>, vars: Vec<String> },
}

impl RingDescriptor {
    pub fn is_q_algebra(&self) -> bool {
        match self {
            RingDescriptor::BigRational
            | RingDescriptor::ComplexFloat { .. }
            | RingDescriptor::GaussianRational => true,
            RingDescriptor::BigInteger | RingDescriptor::Modular { .. } => false,
            RingDescriptor::MultivariatePoly { base, .. } => base.is_q_algebra(),
        }
    }

    /// Whether equality is exact rather than up to a tolerance.
    pub fn is_exact(&self) -> bool {
        match self {
            RingDescriptor::ComplexFloat { .. } => false,
            RingDescriptor::MultivariatePoly { base, .. } => base.is_exact(),
            _ => true,
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::BigRational => write!(f, "Q"),
            RingDescriptor::BigInteger => write!(f, "Z"),
            RingDescriptor::Modular { modulus } => write!(f, "Zmod:{modulus}"),
            RingDescriptor::ComplexFloat { eps } => write!(f, "C:{eps:e}"),
            RingDescriptor::GaussianRational => write!(f, "Q(i)"),
            RingDescriptor::MultivariatePoly { base, vars } => {
                write!(f, "{base}[{}]", vars.join(","))
            }
        }
    }
}

impl FromStr for RingDescriptor {
    type Err = EneError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(open) = s.find('[') {
            let inner = s[open + 1..]
                .strip_suffix(']')
                .ok_or_else(|| EneError::parse(s.len(), "missing ']' in ring"))?;
            let base: RingDescriptor = s[..open].parse()?;
            let vars: Vec<String> = inner
                .split(',')
                .map(|v| v.trim().to_string())
                .filter(|v| !v.is_empty())
                .collect();
            if vars.is_empty() {
                return Err(EneError::parse(open, "polynomial ring needs variables"));
            }
            return Ok(RingDescriptor::MultivariatePoly {
                base: Box::new(base),
                vars,
            });
        }
        match s {
            "Q" => return Ok(RingDescriptor::BigRational),
            "Z" => return Ok(RingDescriptor::BigInteger),
            "Q(i)" => return Ok(RingDescriptor::GaussianRational),
            "C" => {
                return Ok(RingDescriptor::ComplexFloat {
                    eps: DEFAULT_COMPLEX_EPS,
                })
            }
            _ => {}
        }
        if let Some(m) = s.strip_prefix("Zmod:") {
            let modulus: u64 = m
                .parse()
                .map_err(|_| EneError::parse(5, format!("bad modulus '{m}'")))?;
            if modulus < 2 {
                return Err(EneError::parse(5, "modulus must be at least 2"));
            }
            return Ok(RingDescriptor::Modular { modulus });
        }
        if let Some(e) = s.strip_prefix("C:") {
            let eps: f64 = e
                .parse()
                .map_err(|_| EneError::parse(2, format!("bad tolerance '{e}'")))?;
            if !(eps >= 0.0) {
                return Err(EneError::parse(2, "tolerance must be nonnegative"));
            }
            return Ok(RingDescriptor::ComplexFloat { eps });
        }
        Err(EneError::parse(0, format!("unknown ring '{s}'")))
    }
}
