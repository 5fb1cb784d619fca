use std::fmt;

/// Finite window onto the otherwise transfinite constructions.
///
/// * `max_arity_len` caps the length of tables used as arities.
/// * `max_dim` caps the dimension any stage works at; lift generators are
///   created at target dimensions up to `max_dim`.
/// * `max_depth` caps the number of generator applications inside one term
///   (`0` restricts enumeration to bare cells).
/// * `max_iter` caps the one-step extensions a single fibrant-replacement
///   pass may run before reporting that it hit the bound.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FragmentBounds {
    pub max_arity_len: usize,
    pub max_dim: u8,
    pub max_depth: u16,
    pub max_iter: u32,
}

impl FragmentBounds {
    pub fn new(max_arity_len: usize, max_dim: u8, max_depth: u16, max_iter: u32) -> Self {
        Self {
            max_arity_len,
            max_dim,
            max_depth,
            max_iter,
        }
    }
}

impl fmt::Display for FragmentBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "max_arity_len={} max_dim={} max_depth={} max_iter={}",
            self.max_arity_len, self.max_dim, self.max_depth, self.max_iter
        )
    }
}
