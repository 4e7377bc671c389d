//! CSS codes and the circuits built from them.
//!
//! A CSS code is stored as two blocks of generator bit rows (X-type and
//! Z-type) with signs. The text format round-trips bit exactly:
//!
//! ```text
//! [[7,1]] steane
//! X 0001111 +
//! ...
//! Z 1010101 -
//! ```
//!
//! Qubit 1 is the leftmost character of a row, matching the most
//! significant bit convention of the phase space module.

mod circuit;
mod encoder;
mod project;
mod states;

pub use circuit::{circuit_to_channel, hadamard_channel, CssCircuit, Gate, Step};
pub use encoder::{synth_encoder, Encoder, LogicalFrame};
pub use project::{
    acceptance_from_channel, codespace_projector, simulate_projection, simulate_projection_dense,
    tp_code_projection, ProtocolOutcome, StabilizerGroup,
};
pub use states::{
    enumerate_pure_css, enumerate_pure_stabilizer, is_css_state, logical_zero, CssStateSet,
    HullResult, StabState,
};
pub(crate) use states::project_simplex;

use crate::{Error, Result};

/// An `[[n, k]]` CSS stabilizer code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    n: usize,
    k: usize,
    name: String,
    x_rows: Vec<u64>,
    x_negs: Vec<bool>,
    z_rows: Vec<u64>,
    z_negs: Vec<bool>,
}

impl CssCode {
    pub fn new(
        n: usize,
        k: usize,
        name: &str,
        x_rows: Vec<u64>,
        x_negs: Vec<bool>,
        z_rows: Vec<u64>,
        z_negs: Vec<bool>,
    ) -> Result<Self> {
        let code = Self {
            n,
            k,
            name: name.to_string(),
            x_rows,
            x_negs,
            z_rows,
            z_negs,
        };
        code.validate()?;
        Ok(code)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn x_rows(&self) -> &[u64] {
        &self.x_rows
    }

    pub fn z_rows(&self) -> &[u64] {
        &self.z_rows
    }

    pub fn x_negs(&self) -> &[bool] {
        &self.x_negs
    }

    pub fn z_negs(&self) -> &[bool] {
        &self.z_negs
    }

    /// Generator count `n - k`.
    pub fn num_generators(&self) -> usize {
        self.x_rows.len() + self.z_rows.len()
    }

    /// Structural validation: counts, ranks, pairwise commutation.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > 64 || self.k >= self.n {
            return Err(Error::Invalid(format!(
                "bad parameters [[{},{}]]",
                self.n, self.k
            )));
        }
        if self.num_generators() != self.n - self.k {
            return Err(Error::Invalid(format!(
                "expected {} generators, found {}",
                self.n - self.k,
                self.num_generators()
            )));
        }
        if self.x_negs.len() != self.x_rows.len() || self.z_negs.len() != self.z_rows.len() {
            return Err(Error::Invalid("sign count mismatch".into()));
        }
        let mask = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        for &r in self.x_rows.iter().chain(&self.z_rows) {
            if r & !mask != 0 {
                return Err(Error::Invalid("generator row exceeds n bits".into()));
            }
            if r == 0 {
                return Err(Error::Invalid("trivial generator row".into()));
            }
        }
        if gf2_rank(&self.x_rows) != self.x_rows.len() {
            return Err(Error::Invalid("X generators dependent".into()));
        }
        if gf2_rank(&self.z_rows) != self.z_rows.len() {
            return Err(Error::Invalid("Z generators dependent".into()));
        }
        for &x in &self.x_rows {
            for &z in &self.z_rows {
                if (x & z).count_ones() % 2 != 0 {
                    return Err(Error::Invalid(
                        "X and Z generators anticommute".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Parses the `[[n,k]] name` text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty code file".into()))?;
        let header = header.trim();
        let close = header
            .find("]]")
            .ok_or_else(|| Error::Parse("missing [[n,k]] header".into()))?;
        if !header.starts_with("[[") {
            return Err(Error::Parse("missing [[n,k]] header".into()));
        }
        let params = &header[2..close];
        let (ns, ks) = params
            .split_once(',')
            .ok_or_else(|| Error::Parse("header needs n,k".into()))?;
        let n: usize = ns
            .trim()
            .parse()
            .map_err(|_| Error::Parse("bad n".into()))?;
        let k: usize = ks
            .trim()
            .parse()
            .map_err(|_| Error::Parse("bad k".into()))?;
        let name = header[close + 2..].trim().to_string();
        let mut x_rows = Vec::new();
        let mut x_negs = Vec::new();
        let mut z_rows = Vec::new();
        let mut z_negs = Vec::new();
        for line in lines {
            let mut parts = line.split_whitespace();
            let kind = parts
                .next()
                .ok_or_else(|| Error::Parse("empty generator line".into()))?;
            let bits = parts
                .next()
                .ok_or_else(|| Error::Parse("missing bit row".into()))?;
            let sign = parts.next().unwrap_or("+");
            if bits.len() != n {
                return Err(Error::Parse(format!(
                    "row '{bits}' has {} bits, expected {n}",
                    bits.len()
                )));
            }
            let mut row = 0u64;
            for (i, ch) in bits.chars().enumerate() {
                match ch {
                    '1' => row |= 1u64 << (n - 1 - i),
                    '0' => {}
                    _ => return Err(Error::Parse(format!("bad bit '{ch}'"))),
                }
            }
            let neg = match sign {
                "+" => false,
                "-" => true,
                _ => return Err(Error::Parse(format!("bad sign '{sign}'"))),
            };
            match kind {
                "X" => {
                    x_rows.push(row);
                    x_negs.push(neg);
                }
                "Z" => {
                    z_rows.push(row);
                    z_negs.push(neg);
                }
                _ => return Err(Error::Parse(format!("bad generator kind '{kind}'"))),
            }
        }
        Self::new(n, k, &name, x_rows, x_negs, z_rows, z_negs)
    }

    /// Renders back to the text format (inverse of [`CssCode::parse`]).
    pub fn render(&self) -> String {
        let mut out = format!("[[{},{}]] {}\n", self.n, self.k, self.name);
        let row_str = |row: u64| -> String {
            (0..self.n)
                .map(|i| {
                    if (row >> (self.n - 1 - i)) & 1 == 1 {
                        '1'
                    } else {
                        '0'
                    }
                })
                .collect()
        };
        for (r, neg) in self.x_rows.iter().zip(&self.x_negs) {
            out.push_str(&format!("X {} {}\n", row_str(*r), if *neg { '-' } else { '+' }));
        }
        for (r, neg) in self.z_rows.iter().zip(&self.z_negs) {
            out.push_str(&format!("Z {} {}\n", row_str(*r), if *neg { '-' } else { '+' }));
        }
        out
    }

    /// The `[[2,1]]` single-check code used for small stochasticity tests.
    pub fn rep2() -> Self {
        Self::parse(include_str!("../../data/rep2.code")).expect("bundled code is valid")
    }

    /// The `[[7,1]]` Steane code.
    pub fn steane() -> Self {
        Self::parse(include_str!("../../data/steane.code")).expect("bundled code is valid")
    }

    /// The `[[15,1]]` punctured Reed-Muller code.
    pub fn rm15() -> Self {
        Self::parse(include_str!("../../data/rm15.code")).expect("bundled code is valid")
    }

    /// The `[[23,1]]` Golay code.
    pub fn golay() -> Self {
        Self::parse(include_str!("../../data/golay.code")).expect("bundled code is valid")
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "rep2" => Ok(Self::rep2()),
            "steane" => Ok(Self::steane()),
            "rm15" => Ok(Self::rm15()),
            "golay" => Ok(Self::golay()),
            _ => Err(Error::Invalid(format!("unknown bundled code '{name}'"))),
        }
    }
}

/// Rank of a set of bit rows over GF(2).
pub(crate) fn gf2_rank(rows: &[u64]) -> usize {
    let mut rows: Vec<u64> = rows.to_vec();
    let mut rank = 0;
    for bit in (0..64).rev() {
        let Some(pos) = rows.iter().position(|r| (r >> bit) & 1 == 1) else {
            continue;
        };
        let pivot = rows.swap_remove(pos);
        rank += 1;
        for r in rows.iter_mut() {
            if (*r >> bit) & 1 == 1 {
                *r ^= pivot;
            }
        }
    }
    rank
}

/// Free-function form of structural validation.
pub fn validate_code(code: &CssCode) -> Result<()> {
    code.validate()
}
