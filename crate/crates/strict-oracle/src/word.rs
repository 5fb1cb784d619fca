//! Word reduction in the free groupoid on a realized height-one table.
//!
//! A word is a chain of signed edges read left to right: each letter walks
//! one edge forward or backward, and consecutive letters must continue where
//! the previous one ended.  Reduction cancels adjacent inverse pairs.  One
//! stack pass suffices because removing a pair can only bring two letters
//! together that the stack already holds next to each other, and the result
//! is independent of cancellation order, which the property tests pin down.

use std::fmt;

use globular_core::{CellId, PastingDiagram, TableOfDimensions};

use crate::error::OracleError;
use crate::homs::realized_tree;

/// One letter of a word: an edge of the realized diagram, walked forward
/// (source to target) or backward.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SignedEdge {
    pub edge: u8,
    pub inverted: bool,
}

impl SignedEdge {
    pub fn forward(edge: u8) -> Self {
        Self { edge, inverted: false }
    }

    pub fn backward(edge: u8) -> Self {
        Self { edge, inverted: true }
    }

    pub fn inverse(self) -> Self {
        Self { inverted: !self.inverted, ..self }
    }
}

impl fmt::Display for SignedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverted {
            write!(f, "e{}^-1", self.edge)
        } else {
            write!(f, "e{}", self.edge)
        }
    }
}

/// Cancels every adjacent inverse pair of `word` over the realization of
/// `table` and returns the reduced word.  The word must chain: an error names
/// the first letter that starts away from where the walk stands.
pub fn strict_reduce_word(
    table: &TableOfDimensions,
    word: &[SignedEdge],
) -> Result<Vec<SignedEdge>, OracleError> {
    let d = realized_tree(table)?;
    for (position, letter) in word.iter().enumerate() {
        if letter.edge as usize >= d.cell_count(1) {
            return Err(OracleError::UnknownEdge {
                table: table.to_string(),
                edge: letter.edge,
            });
        }
        if position > 0 {
            let expected = end(&d, word[position - 1]);
            let found = start(&d, *letter);
            if expected != found {
                return Err(OracleError::NotComposable {
                    position,
                    expected: expected.to_string(),
                    found: found.to_string(),
                });
            }
        }
    }
    let mut stack: Vec<SignedEdge> = Vec::new();
    for &letter in word {
        if stack.last() == Some(&letter.inverse()) {
            stack.pop();
        } else {
            stack.push(letter);
        }
    }
    Ok(stack)
}

fn start(d: &PastingDiagram, letter: SignedEdge) -> CellId {
    let cell = CellId { dim: 1, idx: letter.edge };
    let boundary = if letter.inverted { d.tgt(cell) } else { d.src(cell) };
    boundary.expect("edges have endpoints")
}

fn end(d: &PastingDiagram, letter: SignedEdge) -> CellId {
    start(d, letter.inverse())
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn table(text: &str) -> TableOfDimensions {
        text.parse().unwrap()
    }

    #[test]
    fn an_edge_against_its_inverse_cancels_away() {
        let f = SignedEdge::forward(0);
        let reduced = strict_reduce_word(&table("(1)"), &[f, f.inverse()]).unwrap();
        assert!(reduced.is_empty());
    }

    #[test]
    fn cancellations_chain_through_the_whole_word() {
        // (1,0,1) realizes as the chain e1: v2 -> v0, e0: v0 -> v1, so this
        // walk loops v0 -> v2 -> v0 -> v1 -> v0 and collapses completely.
        let word = [
            SignedEdge::backward(1),
            SignedEdge::forward(1),
            SignedEdge::forward(0),
            SignedEdge::backward(0),
        ];
        let reduced = strict_reduce_word(&table("(1,0,1)"), &word).unwrap();
        assert!(reduced.is_empty());
    }

    #[test]
    fn irreducible_words_come_back_unchanged() {
        let word = [SignedEdge::forward(1), SignedEdge::forward(0)];
        let reduced = strict_reduce_word(&table("(1,0,1)"), &word).unwrap();
        assert_eq!(reduced, word);
    }

    #[test]
    fn broken_chains_are_refused() {
        let word = [SignedEdge::forward(0), SignedEdge::forward(1)];
        let err = strict_reduce_word(&table("(1,0,1)"), &word).unwrap_err();
        assert!(matches!(err, OracleError::NotComposable { position: 1, .. }));
    }

    #[test]
    fn letters_must_name_real_edges() {
        let word = [SignedEdge::forward(3)];
        let err = strict_reduce_word(&table("(1)"), &word).unwrap_err();
        assert!(matches!(err, OracleError::UnknownEdge { edge: 3, .. }));
    }

    fn leaving(d: &PastingDiagram, vertex: CellId) -> Vec<SignedEdge> {
        let mut out = Vec::new();
        for edge in d.cells(1) {
            if d.src(edge) == Some(vertex) {
                out.push(SignedEdge::forward(edge.idx));
            }
            if d.tgt(edge) == Some(vertex) {
                out.push(SignedEdge::backward(edge.idx));
            }
        }
        out
    }

    fn walk(t: &TableOfDimensions, seed: usize, steps: &[bool]) -> Vec<SignedEdge> {
        let d = PastingDiagram::realize(t);
        let vertices = d.cell_count(0);
        let mut at = CellId { dim: 0, idx: (seed % vertices) as u8 };
        let mut word = Vec::new();
        for &step in steps {
            let options = leaving(&d, at);
            let letter = options[usize::from(step) % options.len()];
            word.push(letter);
            at = end(&d, letter);
        }
        word
    }

    fn reduce_in_given_order(word: &[SignedEdge], choices: &[u8]) -> Vec<SignedEdge> {
        let mut w = word.to_vec();
        let mut next = 0;
        loop {
            let sites: Vec<usize> = (0..w.len().saturating_sub(1))
                .filter(|&k| w[k + 1] == w[k].inverse())
                .collect();
            if sites.is_empty() {
                return w;
            }
            let pick = sites[choices.get(next).copied().unwrap_or(0) as usize % sites.len()];
            next += 1;
            w.drain(pick..pick + 2);
        }
    }

    proptest! {
        #[test]
        fn reduction_ignores_cancellation_order(
            pick in 0usize..3,
            seed in 0usize..4,
            steps in prop::collection::vec(any::<bool>(), 0..8),
            choices in prop::collection::vec(any::<u8>(), 0..8),
        ) {
            let t = table(["(1)", "(1,0,1)", "(1,0,1,0,1)"][pick]);
            let word = walk(&t, seed, &steps);
            let reduced = strict_reduce_word(&t, &word).unwrap();
            prop_assert!(reduced.len() <= word.len());
            prop_assert_eq!(&strict_reduce_word(&t, &reduced).unwrap(), &reduced);
            prop_assert_eq!(&reduce_in_given_order(&word, &choices), &reduced);
        }
    }
}
