//! Text form of terms.
//!
//! The grammar matches what `Presentation::term_text` prints, plus boundary
//! operators that are evaluated away while parsing:
//!
//! ```text
//! term  := "cell(" nat "," nat ")"
//!        | "g#" hex12 "[" term (";" term)* "]"
//!        | "s(" term ")"
//!        | "t(" term ")"
//! ```
//!
//! `s(...)` and `t(...)` are input conveniences only: the result is the
//! source or target term, so round-tripping prints the evaluated form.

use globular_core::CellId;

use crate::error::KernelError;
use crate::generator::GenId;
use crate::term::{ArityId, Presentation, TermId};

pub fn parse_term(
    p: &mut Presentation,
    context: ArityId,
    input: &str,
) -> Result<TermId, KernelError> {
    let mut cursor = Cursor { input, pos: 0 };
    let term = cursor.term(p, context)?;
    cursor.skip_ws();
    if cursor.pos < input.len() {
        return Err(cursor.expected("end of input"));
    }
    Ok(term)
}

struct Cursor<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn term(&mut self, p: &mut Presentation, context: ArityId) -> Result<TermId, KernelError> {
        self.skip_ws();
        if self.eat("cell(") {
            let dim = self.nat()?;
            self.expect(",")?;
            let idx = self.nat()?;
            self.expect(")")?;
            let cell = CellId {
                dim: self.narrow(dim, "cell dimension")?,
                idx: self.narrow(idx, "cell index")?,
            };
            return p.mk_cell(context, cell);
        }
        if self.eat("s(") {
            let inner = self.term(p, context)?;
            self.expect(")")?;
            return p
                .term_src(inner)
                .ok_or_else(|| self.expected("term of positive dimension under s(...)"));
        }
        if self.peek_is("t(") {
            self.pos += 2;
            let inner = self.term(p, context)?;
            self.expect(")")?;
            return p
                .term_tgt(inner)
                .ok_or_else(|| self.expected("term of positive dimension under t(...)"));
        }
        if self.peek_is("g#") {
            let start = self.pos;
            let end = start + 14;
            if end > self.input.len() {
                return Err(self.expected("generator reference `g#<12 hex digits>`"));
            }
            let id: GenId = self.input[start..end].parse().map_err(|_| {
                self.expected("generator reference `g#<12 hex digits>`")
            })?;
            self.pos = end;
            let g = p.gen_by_id(id).ok_or(KernelError::UnknownGenerator {
                hash: id.to_string(),
            })?;
            self.expect("[")?;
            let mut args = vec![self.term(p, context)?];
            loop {
                self.skip_ws();
                if self.eat(";") {
                    args.push(self.term(p, context)?);
                } else {
                    break;
                }
            }
            self.expect("]")?;
            return p.mk_app(g, &args);
        }
        Err(self.expected("a term: cell(d,i), g#...[...], s(...), or t(...)"))
    }

    fn skip_ws(&mut self) {
        while self.input[self.pos..].starts_with([' ', '\t']) {
            self.pos += 1;
        }
    }

    fn peek_is(&self, what: &str) -> bool {
        self.input[self.pos..].starts_with(what)
    }

    fn eat(&mut self, what: &str) -> bool {
        if self.peek_is(what) {
            self.pos += what.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, what: &str) -> Result<(), KernelError> {
        self.skip_ws();
        if self.eat(what) {
            Ok(())
        } else {
            Err(self.expected(&format!("`{what}`")))
        }
    }

    fn nat(&mut self) -> Result<u32, KernelError> {
        self.skip_ws();
        let digits: String = self.input[self.pos..]
            .chars()
            .take_while(char::is_ascii_digit)
            .collect();
        if digits.is_empty() {
            return Err(self.expected("a number"));
        }
        self.pos += digits.len();
        digits
            .parse()
            .map_err(|_| self.expected("a smaller number"))
    }

    fn narrow(&self, value: u32, what: &str) -> Result<u8, KernelError> {
        u8::try_from(value).map_err(|_| self.expected(&format!("{what} below 256")))
    }

    fn expected(&self, expected: &str) -> KernelError {
        let consumed = &self.input[..self.pos];
        let line = consumed.matches('\n').count() + 1;
        let col = consumed
            .rfind('\n')
            .map_or(self.pos, |nl| self.pos - nl - 1)
            + 1;
        KernelError::Parse {
            line,
            col,
            expected: expected.into(),
        }
    }
}
