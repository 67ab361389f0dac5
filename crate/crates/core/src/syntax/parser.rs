//! Hand-written lexer and recursive-descent parser.
//!
//! Precedence, tightest first: `!` and modal prefixes, `&`, `|`, `->`
//! (right-associative), `<->`. `&`, `|` and `<->` associate to the left.

use thiserror::Error;

use super::{Formula, NameSet};

/// A lexing or parsing failure. Offsets are byte offsets into the input.
///
/// When the input ends early, the reported offset is that of the last
/// non-whitespace byte, i.e. the point where the input ran out.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown character {found:?} at offset {offset}")]
    UnknownChar { offset: usize, found: char },
    #[error("expected {expected}, found {found} at offset {offset}")]
    Unexpected {
        offset: usize,
        expected: &'static str,
        found: String,
    },
    #[error("unclosed '{delim}' opened at offset {open}; input ends at offset {offset}")]
    Unclosed {
        offset: usize,
        open: usize,
        delim: char,
    },
    #[error("unbalanced '{delim}' at offset {offset}")]
    Unbalanced { offset: usize, delim: char },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::UnknownChar { offset, .. }
            | ParseError::Unexpected { offset, .. }
            | ParseError::Unclosed { offset, .. }
            | ParseError::Unbalanced { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Belief,
    Know,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Semi,
    Bang,
    Amp,
    Pipe,
    Arrow,
    Iff,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("identifier '{name}'"),
            Tok::True => "'true'".into(),
            Tok::False => "'false'".into(),
            Tok::Belief => "'B'".into(),
            Tok::Know => "'K'".into(),
            Tok::LBrace => "'{'".into(),
            Tok::RBrace => "'}'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Semi => "';'".into(),
            Tok::Bang => "'!'".into(),
            Tok::Amp => "'&'".into(),
            Tok::Pipe => "'|'".into(),
            Tok::Arrow => "'->'".into(),
            Tok::Iff => "'<->'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b';' => Tok::Semi,
            b'!' => Tok::Bang,
            b'&' => Tok::Amp,
            b'|' => Tok::Pipe,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::Iff
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                match &text[start..=i] {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "B" => Tok::Belief,
                    "K" => Tok::Know,
                    word => Tok::Ident(word.to_string()),
                }
            }
            _ => {
                let found = text[start..].chars().next().unwrap_or('\u{fffd}');
                return Err(ParseError::UnknownChar {
                    offset: start,
                    found,
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    let end = text.trim_end().len().saturating_sub(1);
    out.push((Tok::Eof, end));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError::Unexpected {
            offset: self.offset(),
            expected,
            found: self.peek().describe(),
        }
    }

    /// Consumes the closing delimiter matching an opener at `open`.
    fn close(&mut self, tok: Tok, delim: char, open: usize, expected: &'static str) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else if *self.peek() == Tok::Eof {
            Err(ParseError::Unclosed {
                offset: self.offset(),
                open,
                delim,
            })
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.implication()?;
        while self.eat(&Tok::Iff) {
            let rhs = self.implication()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Pipe) {
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::neg(self.unary()?))
            }
            Tok::Belief => {
                self.bump();
                let trust = self.set()?;
                let data = self.set()?;
                Ok(Formula::belief(trust, data, self.unary()?))
            }
            Tok::Know => {
                self.bump();
                let data = self.set()?;
                Ok(Formula::know(data, self.unary()?))
            }
            Tok::LBracket => {
                let (_, open) = self.bump();
                let coalition = self.idlist(&Tok::RBracket)?;
                self.close(Tok::RBracket, '[', open, "',' or ']'")?;
                let (ante, post) = self.trust_sets()?;
                let data = self.set()?;
                let body = self.unary()?;
                Ok(Formula::strategy(coalition, ante, post, data, body))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Atom(name))
            }
            Tok::True => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::LParen => {
                let (_, open) = self.bump();
                let inner = self.formula()?;
                self.close(Tok::RParen, '(', open, "')'")?;
                Ok(inner)
            }
            Tok::Eof => Err(self.unexpected("a formula")),
            Tok::RParen => Err(ParseError::Unbalanced {
                offset: self.offset(),
                delim: ')',
            }),
            Tok::RBrace => Err(ParseError::Unbalanced {
                offset: self.offset(),
                delim: '}',
            }),
            Tok::RBracket => Err(ParseError::Unbalanced {
                offset: self.offset(),
                delim: ']',
            }),
            _ => Err(self.unexpected("a formula")),
        }
    }

    /// `{T}` or `{A;P}`.
    fn trust_sets(&mut self) -> Result<(NameSet, NameSet), ParseError> {
        let open = self.offset();
        if !self.eat(&Tok::LBrace) {
            return Err(self.unexpected("'{'"));
        }
        let ante = self.idlist(&Tok::RBrace)?;
        if self.eat(&Tok::Semi) {
            let post = self.idlist(&Tok::RBrace)?;
            self.close(Tok::RBrace, '{', open, "',' or '}'")?;
            Ok((ante, post))
        } else {
            self.close(Tok::RBrace, '{', open, "',', ';' or '}'")?;
            Ok((ante.clone(), ante))
        }
    }

    fn set(&mut self) -> Result<NameSet, ParseError> {
        let open = self.offset();
        if !self.eat(&Tok::LBrace) {
            return Err(self.unexpected("'{'"));
        }
        let names = self.idlist(&Tok::RBrace)?;
        self.close(Tok::RBrace, '{', open, "',' or '}'")?;
        Ok(names)
    }

    /// Possibly empty comma-separated identifiers, stopping before `end` or
    /// `;`.
    fn idlist(&mut self, end: &Tok) -> Result<NameSet, ParseError> {
        let mut names = NameSet::new();
        if self.peek() == end || *self.peek() == Tok::Semi {
            return Ok(names);
        }
        loop {
            match self.peek().clone() {
                Tok::Ident(name) => {
                    self.bump();
                    names.insert(name);
                }
                _ => return Err(self.unexpected("an identifier")),
            }
            if !self.eat(&Tok::Comma) {
                return Ok(names);
            }
        }
    }
}

/// Parses the concrete syntax into a [`Formula`]. Sugar is preserved.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0 };
    let f = parser.formula()?;
    match parser.peek() {
        Tok::Eof => Ok(f),
        Tok::RParen => Err(ParseError::Unbalanced {
            offset: parser.offset(),
            delim: ')',
        }),
        Tok::RBrace => Err(ParseError::Unbalanced {
            offset: parser.offset(),
            delim: '}',
        }),
        Tok::RBracket => Err(ParseError::Unbalanced {
            offset: parser.offset(),
            delim: ']',
        }),
        _ => Err(parser.unexpected("an operator or end of input")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::names;

    fn atom(p: &str) -> Formula {
        Formula::atom(p)
    }

    #[test]
    fn single_atom() {
        assert_eq!(parse("p").unwrap(), atom("p"));
        assert_eq!(parse("  p \n").unwrap(), atom("p"));
    }

    #[test]
    fn belief_with_two_sets() {
        let f = parse("B{x,v}{x,v} can_destroy").unwrap();
        assert_eq!(
            f,
            Formula::belief(names!["x", "v"], names!["x", "v"], atom("can_destroy"))
        );
    }

    #[test]
    fn single_superscript_strategy_sets_ante_and_post() {
        let f = parse("[patriot]{x,v,t}{x,v,t} destroyed").unwrap();
        let xvt = names!["x", "v", "t"];
        assert_eq!(
            f,
            Formula::strategy(names!["patriot"], xvt.clone(), xvt.clone(), xvt, atom("destroyed"))
        );
    }

    #[test]
    fn two_superscript_strategy() {
        let f = parse("[alice]{yea;n}{yea} approved").unwrap();
        assert_eq!(
            f,
            Formula::strategy(names!["alice"], names!["yea"], names!["n"], names!["yea"], atom("approved"))
        );
        let g = parse("[]{;}{} p").unwrap();
        assert_eq!(
            g,
            Formula::strategy(names![], names![], names![], names![], atom("p"))
        );
        let h = parse("[a,b]{;t}{} p").unwrap();
        assert_eq!(
            h,
            Formula::strategy(names!["a", "b"], names![], names!["t"], names![], atom("p"))
        );
    }

    #[test]
    fn unbalanced_paren_reports_offset_13() {
        let err = parse("(p -> (q -> p)").unwrap_err();
        assert_eq!(err.offset(), 13);
        assert!(matches!(err, ParseError::Unclosed { open: 0, delim: '(', .. }));
    }

    #[test]
    fn unbalanced_braces_and_unknown_tokens() {
        assert!(matches!(parse("B{x p").unwrap_err(), ParseError::Unexpected { .. }));
        assert!(matches!(parse("B{x").unwrap_err(), ParseError::Unclosed { delim: '{', .. }));
        assert!(matches!(
            parse("p)").unwrap_err(),
            ParseError::Unbalanced { offset: 1, delim: ')' }
        ));
        assert!(matches!(
            parse("p } q").unwrap_err(),
            ParseError::Unbalanced { offset: 2, delim: '}' }
        ));
        assert_eq!(
            parse("p # q").unwrap_err(),
            ParseError::UnknownChar { offset: 2, found: '#' }
        );
        assert!(matches!(parse("p - q").unwrap_err(), ParseError::UnknownChar { offset: 2, .. }));
        assert!(parse("").is_err());
        assert!(parse("p q").is_err());
        assert!(parse("B{}p").is_err());
    }

    #[test]
    fn precedence() {
        let p = || atom("p");
        let q = || atom("q");
        let r = || atom("r");
        assert_eq!(
            parse("p -> q -> r").unwrap(),
            Formula::implies(p(), Formula::implies(q(), r()))
        );
        assert_eq!(
            parse("p & q | r").unwrap(),
            Formula::or(Formula::and(p(), q()), r())
        );
        assert_eq!(
            parse("p | q -> r <-> p").unwrap(),
            Formula::iff(Formula::implies(Formula::or(p(), q()), r()), p())
        );
        assert_eq!(
            parse("!p & q").unwrap(),
            Formula::and(Formula::neg(p()), q())
        );
        assert_eq!(
            parse("B{}{}p -> q").unwrap(),
            Formula::implies(Formula::belief(names![], names![], p()), q())
        );
        assert_eq!(
            parse("p & q & r").unwrap(),
            Formula::and(Formula::and(p(), q()), r())
        );
        assert_eq!(parse("true | false").unwrap(), Formula::or(Formula::True, Formula::False));
    }
}
