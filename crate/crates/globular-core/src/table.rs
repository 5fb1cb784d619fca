//! Tables of dimensions: the zigzag sequences indexing globular pasting schemes.
//!
//! A table is an odd-length sequence `(n_1, n_2, ..., n_{2k+1})` whose odd
//! positions (the peaks) strictly dominate their even neighbours (the
//! valleys): `n_1 > n_2 < n_3 > n_4 < ...`.  Each peak contributes a globe of
//! that dimension to the realized diagram and each valley records the
//! dimension along which adjacent globes are glued.  The single-entry table
//! `(n)` denotes the bare `n`-globe.

use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::GlobularError;

/// An odd-length zigzag of dimensions, e.g. `(1,0,1)` for two 1-globes glued
/// at a point.  Entries are kept small on purpose; nothing in the engine needs
/// dimensions beyond a handful.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableOfDimensions {
    entries: SmallVec<[u8; 7]>,
}

impl TableOfDimensions {
    /// Validates the zigzag shape: odd length and peaks strictly above the
    /// valleys on both sides.
    pub fn new(entries: impl Into<SmallVec<[u8; 7]>>) -> Result<Self, GlobularError> {
        let entries = entries.into();
        if entries.is_empty() || entries.len() % 2 == 0 {
            return Err(GlobularError::InvalidTable {
                entries: entries.to_vec(),
                reason: "length must be odd".into(),
            });
        }
        for i in (1..entries.len()).step_by(2) {
            if entries[i] >= entries[i - 1] || entries[i] >= entries[i + 1] {
                return Err(GlobularError::InvalidTable {
                    entries: entries.to_vec(),
                    reason: format!("valley at position {i} is not below both peaks"),
                });
            }
        }
        Ok(Self { entries })
    }

    /// The bare `n`-globe `(n)`.
    pub fn globe(n: u8) -> Self {
        Self { entries: SmallVec::from_slice(&[n]) }
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// Number of entries (peaks plus valleys), the `length` that fragment
    /// bounds cap.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest entry; a table of height `h` realizes to a diagram with cells
    /// up to dimension `h`.
    pub fn height(&self) -> u8 {
        *self.entries.iter().max().expect("tables are nonempty")
    }

    /// Peak dimensions in order, i.e. the entries at even positions.
    pub fn peaks(&self) -> impl Iterator<Item = u8> + '_ {
        self.entries.iter().copied().step_by(2)
    }

    pub fn peak_count(&self) -> usize {
        self.entries.len() / 2 + 1
    }

    /// Valley dimensions in order; empty for a bare globe.
    pub fn valleys(&self) -> impl Iterator<Item = u8> + '_ {
        self.entries.iter().copied().skip(1).step_by(2)
    }

    /// Whether this is a single globe `(n)`.
    pub fn is_globe(&self) -> bool {
        self.entries.len() == 1
    }

    /// All tables with height at most `max_height` and length at most
    /// `max_len`, in canonical order (shorter first, then lexicographic).
    pub fn enumerate(max_height: u8, max_len: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut len = 1;
        while len <= max_len {
            let mut partial: Vec<u8> = Vec::with_capacity(len);
            extend_zigzag(&mut partial, len, max_height, &mut out);
            len += 2;
        }
        out
    }
}

fn extend_zigzag(partial: &mut Vec<u8>, len: usize, max_height: u8, out: &mut Vec<TableOfDimensions>) {
    if partial.len() == len {
        out.push(TableOfDimensions { entries: SmallVec::from_slice(partial) });
        return;
    }
    let at_peak = partial.len() % 2 == 0;
    for d in 0..=max_height {
        let ok = if at_peak {
            // A peak must dominate the valley to its left (if any).
            partial.last().map_or(d <= max_height, |&v| d > v)
        } else {
            // A valley must sit below the peak to its left; the constraint
            // against the next peak is enforced when that peak is chosen.
            d < *partial.last().expect("valley has a left peak") && d < max_height
        };
        if ok {
            partial.push(d);
            extend_zigzag(partial, len, max_height, out);
            partial.pop();
        }
    }
}

impl fmt::Display for TableOfDimensions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for TableOfDimensions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for TableOfDimensions {
    type Err = GlobularError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| GlobularError::TableParse {
                input: s.to_string(),
                reason: "expected parenthesized list like (1,0,1)".into(),
            })?;
        let mut entries: SmallVec<[u8; 7]> = SmallVec::new();
        for piece in inner.split(',') {
            let piece = piece.trim();
            let value = piece.parse::<u8>().map_err(|_| GlobularError::TableParse {
                input: s.to_string(),
                reason: format!("entry `{piece}` is not a small natural"),
            })?;
            entries.push(value);
        }
        Self::new(entries).map_err(|e| GlobularError::TableParse {
            input: s.to_string(),
            reason: e.to_string(),
        })
    }
}
