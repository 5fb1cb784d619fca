//! Generators of a theory presentation.
//!
//! A generator has an arity (the table of dimensions its applications are
//! shaped by), a target dimension, and a declared boundary: two terms over
//! the arity, one dimension down.  Its identity is a content hash over stage,
//! arity, boundary text, flavor, and a salt, so re-deriving the same
//! presentation always reproduces the same ids and serialized output is
//! stable.  The salt counts earlier generators with identical content, which
//! keeps repeated liftings of the same boundary pair distinguishable.

use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::error::KernelError;
use crate::term::{ArityId, TermId};

/// How a generator came to exist: freely added, or added as the unique
/// filler the strict theory provides for its boundary pair.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Flavor {
    Free,
    Unique,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Free => "free",
            Flavor::Unique => "unique",
        })
    }
}

impl FromStr for Flavor {
    type Err = KernelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "free" => Ok(Flavor::Free),
            "unique" => Ok(Flavor::Unique),
            _ => Err(KernelError::Parse {
                line: 0,
                col: 0,
                expected: "flavor `free` or `unique`".into(),
            }),
        }
    }
}

/// Content-derived generator identity, printed as `g#<12 hex digits>`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenId(pub [u8; 6]);

impl GenId {
    pub fn derive(
        stage: u32,
        arity_text: &str,
        src_text: &str,
        tgt_text: &str,
        flavor: Flavor,
        salt: u32,
    ) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(stage.to_le_bytes());
        hasher.update([0]);
        hasher.update(arity_text.as_bytes());
        hasher.update([0]);
        hasher.update(src_text.as_bytes());
        hasher.update([0]);
        hasher.update(tgt_text.as_bytes());
        hasher.update([0]);
        hasher.update(flavor.to_string().as_bytes());
        hasher.update([0]);
        hasher.update(salt.to_le_bytes());
        let digest = hasher.finalize();
        let mut id = [0u8; 6];
        id.copy_from_slice(&digest[..6]);
        GenId(id)
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g#")?;
        for byte in self.0 {
            write!(f, "{byte:02x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GenId {
    type Err = KernelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let hex = s.strip_prefix("g#").ok_or_else(|| KernelError::Parse {
            line: 0,
            col: 0,
            expected: "generator reference `g#<12 hex digits>`".into(),
        })?;
        if hex.len() != 12 || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(KernelError::Parse {
                line: 0,
                col: 0,
                expected: "12 hex digits after `g#`".into(),
            });
        }
        let mut id = [0u8; 6];
        for (i, chunk) in hex.as_bytes().chunks(2).enumerate() {
            let text = std::str::from_utf8(chunk).expect("ascii hex");
            id[i] = u8::from_str_radix(text, 16).expect("checked hex");
        }
        Ok(GenId(id))
    }
}

/// Index of a generator within one presentation, in creation order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GenIdx(pub u32);

#[derive(Clone, Debug)]
pub struct Generator {
    pub id: GenId,
    pub stage: u32,
    pub arity: ArityId,
    pub target_dim: u8,
    /// Boundary terms over the arity, `None` exactly at target dimension 0.
    pub src: Option<TermId>,
    pub tgt: Option<TermId>,
    pub flavor: Flavor,
    pub salt: u32,
}
