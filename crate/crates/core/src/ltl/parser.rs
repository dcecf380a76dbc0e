//! Recursive-descent parser for the LTL concrete syntax.
//!
//! Precedence, tightest first: unary (`!`, `X`, `F`, `G`), `U` (right
//! associative), `&`, `|`, `->` (right associative), `<->`.

use thiserror::Error;

use super::Ltl;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("LTL syntax error at column {column}: {message}")]
pub struct LtlParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Next,
    Until,
    Eventually,
    Always,
    LParen,
    RParen,
}

fn describe(tok: Option<&(Tok, usize)>) -> String {
    match tok {
        None => "end of input".into(),
        Some((Tok::Ident(s), _)) => format!("`{s}`"),
        Some((t, _)) => format!("{t:?}"),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, LtlParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let rest: String = chars[i..].iter().take(3).collect();
        let (tok, len) = if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("->") {
            (Tok::Implies, 2)
        } else {
            match c {
                '!' => (Tok::Not, 1),
                '&' => (Tok::And, 1),
                '|' => (Tok::Or, 1),
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                'X' => (Tok::Next, 1),
                'U' => (Tok::Until, 1),
                'F' => (Tok::Eventually, 1),
                'G' => (Tok::Always, 1),
                c if c.is_ascii_lowercase() => {
                    let mut j = i;
                    while j < chars.len()
                        && (chars[j].is_ascii_lowercase() || chars[j].is_ascii_digit() || chars[j] == '_')
                    {
                        j += 1;
                    }
                    let word: String = chars[i..j].iter().collect();
                    let tok = match word.as_str() {
                        "true" => Tok::True,
                        "false" => Tok::False,
                        _ => Tok::Ident(word),
                    };
                    (tok, j - i)
                }
                other => {
                    return Err(LtlParseError {
                        column: col,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        };
        // Upper-case operators must not run into an identifier, e.g. `Xp`.
        if matches!(tok, Tok::Next | Tok::Until | Tok::Eventually | Tok::Always)
            && chars
                .get(i + 1)
                .is_some_and(|n| n.is_ascii_alphanumeric() || *n == '_')
        {
            return Err(LtlParseError {
                column: col,
                message: format!("operator `{c}` must be followed by a space or parenthesis"),
            });
        }
        toks.push((tok, col));
        i += len;
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: String) -> LtlParseError {
        LtlParseError {
            column: self.col(),
            message,
        }
    }

    fn iff(&mut self) -> Result<Ltl, LtlParseError> {
        let mut lhs = self.implies()?;
        while self.eat(&Tok::Iff) {
            let rhs = self.implies()?;
            lhs = Ltl::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Ltl, LtlParseError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implies()?;
            return Ok(Ltl::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Ltl, LtlParseError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            let rhs = self.and()?;
            lhs = Ltl::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Ltl, LtlParseError> {
        let mut lhs = self.until()?;
        while self.eat(&Tok::And) {
            let rhs = self.until()?;
            lhs = Ltl::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<Ltl, LtlParseError> {
        let lhs = self.unary()?;
        if self.eat(&Tok::Until) {
            let rhs = self.until()?;
            return Ok(Ltl::until(lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ltl, LtlParseError> {
        let col = self.col();
        let tok = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match tok.map(|(t, _)| t) {
            Some(Tok::Not) => Ok(Ltl::not(self.unary()?)),
            Some(Tok::Next) => Ok(Ltl::next(self.unary()?)),
            Some(Tok::Eventually) => Ok(Ltl::eventually(self.unary()?)),
            Some(Tok::Always) => Ok(Ltl::always(self.unary()?)),
            Some(Tok::True) => Ok(Ltl::True),
            Some(Tok::False) => Ok(Ltl::False),
            Some(Tok::Ident(p)) => Ok(Ltl::Atom(p)),
            Some(Tok::LParen) => {
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error(format!(
                        "expected `)`, found {}",
                        describe(self.toks.get(self.pos))
                    )));
                }
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(LtlParseError {
                    column: col,
                    message: format!("expected a formula, found {}", describe(self.toks.get(self.pos))),
                })
            }
        }
    }
}

/// Parses the LTL concrete syntax, expanding `F`, `G`, `->` and `<->`.
pub fn parse_ltl(text: &str) -> Result<Ltl, LtlParseError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end_col: text.chars().count() + 1,
    };
    let formula = parser.iff()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.error(format!(
            "unexpected trailing {}",
            describe(parser.toks.get(parser.pos))
        )));
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Ltl {
        Ltl::atom(s)
    }

    #[test]
    fn always_of_conjunction() {
        assert_eq!(
            parse_ltl("G (p & q)").unwrap(),
            Ltl::always(Ltl::and(p("p"), p("q")))
        );
    }

    #[test]
    fn next_binds_unary_chain() {
        assert_eq!(parse_ltl("X G p").unwrap(), Ltl::next(Ltl::always(p("p"))));
    }

    #[test]
    fn until_is_right_associative() {
        assert_eq!(
            parse_ltl("p U q U r").unwrap(),
            Ltl::until(p("p"), Ltl::until(p("q"), p("r")))
        );
    }

    #[test]
    fn precedence_ladder() {
        // ! > U > & > | > -> > <->
        let f = parse_ltl("!a U b & c | d -> e <-> f").unwrap();
        let expected = Ltl::iff(
            Ltl::implies(
                Ltl::or(
                    Ltl::and(Ltl::until(Ltl::not(p("a")), p("b")), p("c")),
                    p("d"),
                ),
                p("e"),
            ),
            p("f"),
        );
        assert_eq!(f, expected);
        assert_eq!(
            parse_ltl("a -> b -> c").unwrap(),
            Ltl::implies(p("a"), Ltl::implies(p("b"), p("c")))
        );
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_ltl("p & ").unwrap_err();
        assert_eq!(e.column, 5);
        let e = parse_ltl("p $ q").unwrap_err();
        assert_eq!(e.column, 3);
        let e = parse_ltl("(p & q").unwrap_err();
        assert!(e.message.contains("expected `)`"));
        let e = parse_ltl("Xp").unwrap_err();
        assert_eq!(e.column, 1);
        assert!(parse_ltl("p q").is_err());
    }

    #[test]
    fn atoms_with_digits_and_underscores() {
        assert_eq!(parse_ltl("s1 | x_2").unwrap(), Ltl::or(p("s1"), p("x_2")));
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "G (p & q)",
            "X G p",
            "p U q U r",
            "!(p U q)",
            "F !p",
            "G F (p -> X q)",
            "true U false",
            "!F p",
            "X (s1 | s2 | s3)",
        ] {
            let f = parse_ltl(text).unwrap();
            let printed = f.to_string();
            assert_eq!(parse_ltl(&printed).unwrap(), f, "{text} printed as {printed}");
        }
    }
}
