use std::fmt;
use std::ops::Mul;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// A positive natural number or `Infinite`.
///
/// Sectional invariants are minima over covers that may not exist, so they
/// land here. The derived order puts every finite value below `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(u32),
    Infinite,
}

impl ExtNat {
    pub const ONE: ExtNat = ExtNat::Finite(1);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            ExtNat::Finite(n) => Some(n),
            ExtNat::Infinite => None,
        }
    }
}

impl Mul for ExtNat {
    type Output = ExtNat;

    fn mul(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => a
                .checked_mul(b)
                .map(ExtNat::Finite)
                .unwrap_or(ExtNat::Infinite),
            _ => ExtNat::Infinite,
        }
    }
}

impl From<u32> for ExtNat {
    fn from(n: u32) -> Self {
        ExtNat::Finite(n)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::Infinite => f.write_str("infinite"),
        }
    }
}

// Finite values serialize as JSON numbers, `Infinite` as the string "infinite".
impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtNat::Finite(n) => s.serialize_u32(*n),
            ExtNat::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct ExtNatVisitor;

        impl Visitor<'_> for ExtNatVisitor {
            type Value = ExtNat;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a positive integer or \"infinite\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ExtNat, E> {
                u32::try_from(v)
                    .ok()
                    .filter(|&n| n >= 1)
                    .map(ExtNat::Finite)
                    .ok_or_else(|| E::custom("expected a positive 32-bit count"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ExtNat, E> {
                if v == "infinite" {
                    Ok(ExtNat::Infinite)
                } else {
                    Err(E::custom(format!("unknown value {v:?}")))
                }
            }
        }

        d.deserialize_any(ExtNatVisitor)
    }
}
