//! The `.lie` definition language: a line-oriented format for Lie
//! algebras by structure constants, plus the canonical printer.
//!
//! ```text
//! # comments run to the end of the line
//! algebra h12
//! dim 5
//! [e1,e2] = e5
//! [e3,e4] = e5
//! ```
//!
//! Rationals are written `p` or `p/q` with `q > 0` (`p` may carry a
//! sign); a missing coefficient means 1. Brackets may be declared in
//! either order (antisymmetry is completed), each unordered pair at most
//! once. Undeclared brackets are zero. Jacobi is validated after parsing
//! and reported as its own error class.

use crate::exactlin::{format_rational, Rational};
use crate::liealg::{BracketDecl, LieAlgebra, LieAlgebraError};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// Largest accepted dimension; exterior-algebra machinery is bounded,
/// and the decision problem lives at dimension 2m+1 <= 9 anyway.
pub const MAX_DIM: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LangError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: {message}")]
    Semantic {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("Jacobi identity fails at (e{}, e{}, e{})", i + 1, j + 1, k + 1)]
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
        residual: Vec<Rational>,
    },
}

impl LangError {
    pub fn class(&self) -> &'static str {
        match self {
            LangError::Syntax { .. } => "syntax",
            LangError::Semantic { .. } => "semantic",
            LangError::Jacobi { .. } => "jacobi",
        }
    }

    pub fn position(&self) -> Option<(usize, usize)> {
        match self {
            LangError::Syntax { line, col, .. } | LangError::Semantic { line, col, .. } => {
                Some((*line, *col))
            }
            LangError::Jacobi { .. } => None,
        }
    }
}

/// A parsed algebra file: the declared name and the validated algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedAlgebra {
    pub name: String,
    pub algebra: LieAlgebra,
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(line_text: &str, line: usize) -> Self {
        Cursor {
            chars: line_text.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c == ' ' || c == '\t') {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    fn syntax(&self, message: impl Into<String>) -> LangError {
        LangError::Syntax {
            line: self.line,
            col: self.col(),
            message: message.into(),
        }
    }

    fn semantic(&self, col: usize, message: impl Into<String>) -> LangError {
        LangError::Semantic {
            line: self.line,
            col,
            message: message.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), LangError> {
        self.skip_ws();
        match self.peek() {
            Some(found) if found == c => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => Err(self.syntax(format!("expected '{c}', found '{found}'"))),
            None => Err(self.syntax(format!("expected '{c}', found end of line"))),
        }
    }

    fn integer(&mut self) -> Result<BigInt, LangError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('+') | Some('-')) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.syntax("expected an integer"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        Ok(text.parse().expect("scanned digit string"))
    }

    /// `p` or `p/q`; q must be positive.
    fn rational(&mut self) -> Result<Rational, LangError> {
        let numer = self.integer()?;
        self.skip_ws();
        if self.peek() == Some('/') {
            self.pos += 1;
            let denom_col = self.col();
            let denom = self.integer()?;
            if denom <= BigInt::zero() {
                return Err(self.semantic(denom_col, "denominator must be positive".to_string()));
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    /// `e<INT>`, returned 0-based with the token's column.
    fn generator(&mut self, dim: usize) -> Result<(usize, usize), LangError> {
        self.skip_ws();
        let col = self.col();
        match self.peek() {
            Some('e') => {
                self.pos += 1;
            }
            Some(found) => {
                return Err(self.syntax(format!("expected a generator 'e<k>', found '{found}'")))
            }
            None => return Err(self.syntax("expected a generator 'e<k>', found end of line")),
        }
        let digits_start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.syntax("expected a generator index after 'e'"));
        }
        let text: String = self.chars[digits_start..self.pos].iter().collect();
        let index: usize = text
            .parse()
            .map_err(|_| self.syntax("generator index too large"))?;
        if index == 0 || index > dim {
            return Err(self.semantic(col, format!("index out of range: e{index} (dim {dim})")));
        }
        Ok((index - 1, col))
    }

    fn ident(&mut self) -> Result<String, LangError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                self.pos += 1;
            }
            _ => return Err(self.syntax("expected an identifier")),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn keyword(&mut self, word: &str) -> Result<(), LangError> {
        self.skip_ws();
        let end = self.pos + word.len();
        let slice: String = self
            .chars
            .get(self.pos..end.min(self.chars.len()))
            .unwrap_or(&[])
            .iter()
            .collect();
        if slice == word {
            self.pos = end;
            Ok(())
        } else {
            Err(self.syntax(format!("expected keyword '{word}'")))
        }
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(at) => &line[..at],
        None => line,
    }
}

/// Parses the definition language; Jacobi is validated post-parse.
pub fn parse_algebra(text: &str) -> Result<ParsedAlgebra, LangError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, strip_comment(raw)))
        .filter(|(_, l)| !l.trim().is_empty());

    let (line_no, header) = lines.next().ok_or(LangError::Syntax {
        line: 1,
        col: 1,
        message: "empty input: expected 'algebra <name>'".to_string(),
    })?;
    let mut cursor = Cursor::new(header, line_no);
    cursor.keyword("algebra")?;
    let name = cursor.ident()?;
    if !cursor.at_end() {
        return Err(cursor.syntax("unexpected trailing input after the algebra name"));
    }

    let (line_no, dim_line) = lines.next().ok_or(LangError::Syntax {
        line: line_no + 1,
        col: 1,
        message: "expected 'dim <n>'".to_string(),
    })?;
    let mut cursor = Cursor::new(dim_line, line_no);
    cursor.keyword("dim")?;
    let dim_col = {
        cursor.skip_ws();
        cursor.col()
    };
    let dim_value = cursor.integer()?;
    if !cursor.at_end() {
        return Err(cursor.syntax("unexpected trailing input after the dimension"));
    }
    if dim_value < BigInt::one() || dim_value > BigInt::from(MAX_DIM) {
        return Err(LangError::Semantic {
            line: line_no,
            col: dim_col,
            message: format!("dimension must be between 1 and {MAX_DIM}"),
        });
    }
    let dim: usize = dim_value.to_string().parse().expect("bounded above");

    let mut decls: Vec<BracketDecl> = Vec::new();
    let mut seen: Vec<(usize, usize, usize, usize)> = Vec::new(); // (i, j, line, col)
    for (line_no, decl_line) in lines {
        let mut cursor = Cursor::new(decl_line, line_no);
        cursor.skip_ws();
        let bracket_col = cursor.col();
        cursor.expect('[')?;
        let (i, _) = cursor.generator(dim)?;
        cursor.expect(',')?;
        let (j, j_col) = cursor.generator(dim)?;
        cursor.expect(']')?;
        cursor.expect('=')?;
        if i == j {
            return Err(cursor.semantic(
                j_col,
                format!(
                    "bracket [e{}, e{}] of a generator with itself",
                    i + 1,
                    i + 1
                ),
            ));
        }
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        if let Some((_, _, first_line, _)) = seen.iter().find(|(a, b, _, _)| (*a, *b) == (lo, hi)) {
            return Err(cursor.semantic(
                bracket_col,
                format!(
                    "bracket [e{}, e{}] already declared on line {first_line}",
                    lo + 1,
                    hi + 1
                ),
            ));
        }
        seen.push((lo, hi, line_no, bracket_col));

        let mut value = Vec::new();
        loop {
            cursor.skip_ws();
            let coeff = match cursor.peek() {
                Some(c) if c.is_ascii_digit() || c == '+' || c == '-' => cursor.rational()?,
                _ => Rational::one(),
            };
            let (k, _) = cursor.generator(dim)?;
            value.push((k, coeff));
            cursor.skip_ws();
            match cursor.peek() {
                Some('+') => {
                    cursor.pos += 1;
                }
                Some(other) => {
                    return Err(
                        cursor.syntax(format!("expected '+' or end of line, found '{other}'"))
                    )
                }
                None => break,
            }
        }
        decls.push(BracketDecl { i, j, value });
    }

    match LieAlgebra::new(dim, &decls) {
        Ok(algebra) => Ok(ParsedAlgebra { name, algebra }),
        Err(LieAlgebraError::JacobiViolation { i, j, k, residual }) => {
            Err(LangError::Jacobi { i, j, k, residual })
        }
        Err(other) => Err(LangError::Semantic {
            line: 1,
            col: 1,
            message: other.to_string(),
        }),
    }
}

/// Canonical printer; `parse_algebra(print_algebra(name, l))` returns the
/// same table.
pub fn print_algebra(name: &str, l: &LieAlgebra) -> String {
    let mut out = String::new();
    out.push_str(&format!("algebra {name}\n"));
    out.push_str(&format!("dim {}\n", l.dim()));
    for (i, j, terms) in l.nonzero_brackets() {
        let rendered: Vec<String> = terms
            .iter()
            .map(|(k, c)| {
                if c.is_one() {
                    format!("e{}", k + 1)
                } else {
                    format!("{} e{}", format_rational(c), k + 1)
                }
            })
            .collect();
        out.push_str(&format!(
            "[e{},e{}] = {}\n",
            i + 1,
            j + 1,
            rendered.join(" + ")
        ));
    }
    out
}

impl fmt::Display for ParsedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.name, self.algebra)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::exactlin::{rat, ratio};

    #[test]
    fn parses_h11() {
        let parsed = parse_algebra("algebra h11\ndim 3\n[e1,e2] = e3\n").unwrap();
        assert_eq!(parsed.name, "h11");
        assert_eq!(parsed.algebra, LieAlgebra::heisenberg(1).unwrap());
    }

    #[test]
    fn parses_abelian_without_declarations() {
        let parsed = parse_algebra("algebra a3\ndim 3\n").unwrap();
        assert_eq!(parsed.algebra, LieAlgebra::abelian(3));
    }

    #[test]
    fn parses_coefficients_and_sums() {
        let parsed = parse_algebra("algebra t\ndim 4\n[e1,e2] = 2 e3 + -1/2 e4\n").unwrap();
        assert_eq!(
            parsed.algebra.bracket_basis(0, 1),
            vec![rat(0), rat(0), rat(2), ratio(-1, 2)]
        );
    }

    #[test]
    fn tolerates_comments_and_spacing() {
        let text =
            "# a Heisenberg algebra\nalgebra h11   # name\n dim 3\n[ e1 , e2 ]=   e3 # bracket\n";
        let parsed = parse_algebra(text).unwrap();
        assert_eq!(parsed.algebra, LieAlgebra::heisenberg(1).unwrap());
    }

    #[test]
    fn reports_index_out_of_range_with_position() {
        let err = parse_algebra("algebra t\ndim 3\n[e1,e2] = e5\n").unwrap_err();
        match err {
            LangError::Semantic { line, col, message } => {
                assert_eq!(line, 3);
                assert_eq!(col, 11);
                assert!(message.contains("out of range"));
            }
            other => panic!("expected a semantic error, got {other:?}"),
        }
    }

    #[test]
    fn reports_duplicate_pair_even_in_flipped_order() {
        let err = parse_algebra("algebra t\ndim 3\n[e1,e2] = e3\n[e2,e1] = e3\n").unwrap_err();
        match err {
            LangError::Semantic { line, message, .. } => {
                assert_eq!(line, 4);
                assert!(message.contains("already declared on line 3"));
            }
            other => panic!("expected a semantic error, got {other:?}"),
        }
    }

    #[test]
    fn reports_jacobi_failure_as_its_own_class() {
        let err = parse_algebra("algebra bad\ndim 3\n[e1,e2] = e1\n[e1,e3] = e3\n").unwrap_err();
        match err {
            LangError::Jacobi { i, j, k, residual } => {
                assert_eq!((i, j, k), (0, 1, 2));
                assert!(residual.iter().any(|c| !c.is_zero()));
            }
            other => panic!("expected a Jacobi error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_zero_denominator() {
        let err = parse_algebra("algebra t\ndim 3\n[e1,e2] = 1/0 e3\n").unwrap_err();
        assert_eq!(err.class(), "semantic");
        assert!(err.to_string().contains("denominator"));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_algebra("algebra t\ndim 3\n[e1 e2] = e3\n").unwrap_err();
        match err {
            LangError::Syntax { line, col, .. } => {
                assert_eq!(line, 3);
                assert!(col >= 4);
            }
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn round_trips_the_whole_catalog() {
        for entry in catalog() {
            let text = print_algebra(entry.name, &entry.algebra);
            let reparsed = parse_algebra(&text).unwrap_or_else(|e| {
                panic!("printer output for {} fails to parse: {e}", entry.name)
            });
            assert_eq!(reparsed.name, entry.name);
            assert_eq!(
                reparsed.algebra, entry.algebra,
                "round trip of {}",
                entry.name
            );
        }
    }
}
