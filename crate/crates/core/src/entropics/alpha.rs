//! The admissible Renyi orders `2a/(2b-1)` and grids over them.

use crate::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An admissible order: `2a/(2b-1)` with `a >= b >= 1`, or infinity.
///
/// Serialises as the string `"2a/(2b-1)"` with concrete integers
/// substituted, e.g. `"4/3"` for `a = 2, b = 2`, or `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlphaIndex {
    Finite { a: u32, b: u32 },
    Inf,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl AlphaIndex {
    pub fn finite(a: u32, b: u32) -> Result<Self> {
        if b == 0 || a < b {
            return Err(Error::Invalid(format!(
                "order 2*{a}/(2*{b}-1) is not admissible (need a >= b >= 1)"
            )));
        }
        Ok(Self::Finite { a, b })
    }

    pub fn value(&self) -> f64 {
        match self {
            Self::Finite { a, b } => 2.0 * *a as f64 / (2.0 * *b as f64 - 1.0),
            Self::Inf => f64::INFINITY,
        }
    }

    /// Reduced fraction `(numerator, denominator)`; `None` for infinity.
    pub fn reduced(&self) -> Option<(u64, u64)> {
        match self {
            Self::Finite { a, b } => {
                let num = 2 * *a as u64;
                let den = 2 * *b as u64 - 1;
                let g = gcd(num, den);
                Some((num / g, den / g))
            }
            Self::Inf => None,
        }
    }

    pub fn label(&self) -> String {
        match self.reduced() {
            Some((num, 1)) => format!("{num}"),
            Some((num, den)) => format!("{num}/{den}"),
            None => "inf".into(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.eq_ignore_ascii_case("inf") {
            return Ok(Self::Inf);
        }
        let (nums, dens) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num: u64 = nums
            .parse()
            .map_err(|_| Error::Parse(format!("bad order '{text}'")))?;
        let den: u64 = dens
            .parse()
            .map_err(|_| Error::Parse(format!("bad order '{text}'")))?;
        // recover (a, b) from num/den = 2a/(2b-1): den must be odd and the
        // reduced numerator even
        if den % 2 == 0 || num % 2 != 0 || den == 0 || num == 0 {
            return Err(Error::Invalid(format!(
                "'{text}' is not of the form 2a/(2b-1)"
            )));
        }
        Self::finite((num / 2) as u32, ((den + 1) / 2) as u32)
    }
}

impl std::fmt::Display for AlphaIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl Serialize for AlphaIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

impl<'de> Deserialize<'de> for AlphaIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        AlphaIndex::parse(&text).map_err(D::Error::custom)
    }
}

/// All admissible orders with `a <= a_max`, `b <= b_max` and value at most
/// `cap`, deduplicated by reduced fraction and sorted ascending.
pub fn alpha_grid(a_max: u32, b_max: u32, cap: f64, include_inf: bool) -> Vec<AlphaIndex> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for a in 1..=a_max {
        for b in 1..=b_max.min(a) {
            let idx = AlphaIndex::Finite { a, b };
            if idx.value() > cap + 1e-12 {
                continue;
            }
            if seen.insert(idx.reduced()) {
                out.push(idx);
            }
        }
    }
    out.sort_by(|x, y| x.value().partial_cmp(&y.value()).unwrap());
    if include_inf {
        out.push(AlphaIndex::Inf);
    }
    out
}
