//! Recursive-descent parser for the event grammar:
//!
//! ```text
//! expr   := term ("v" term)*
//! term   := factor ("&" factor)*
//! factor := "~" factor | "(" expr ")" | ident | "T" | "F"
//! cond   := expr "|" expr
//! ```
//!
//! Positions in errors are byte offsets into the input.

use alloc::format;
use alloc::string::{String, ToString};

use super::{ConditionalEvent, Event, Vocabulary};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token<'a> {
    Ident(&'a str),
    Not,
    And,
    Or,
    Bar,
    Open,
    Close,
    Top,
    Bottom,
    End,
}

fn describe(token: &Token<'_>) -> String {
    match token {
        Token::Ident(name) => format!("identifier `{name}`"),
        Token::Not => "`~`".into(),
        Token::And => "`&`".into(),
        Token::Or => "`v`".into(),
        Token::Bar => "`|`".into(),
        Token::Open => "`(`".into(),
        Token::Close => "`)`".into(),
        Token::Top => "`T`".into(),
        Token::Bottom => "`F`".into(),
        Token::End => "end of input".into(),
    }
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next_token(&mut self) -> Result<(Token<'a>, usize), Error> {
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&b) = bytes.get(start) else {
            return Ok((Token::End, start));
        };
        let single = match b {
            b'~' => Some(Token::Not),
            b'&' => Some(Token::And),
            b'|' => Some(Token::Bar),
            b'(' => Some(Token::Open),
            b')' => Some(Token::Close),
            _ => None,
        };
        if let Some(token) = single {
            self.pos += 1;
            return Ok((token, start));
        }
        if b.is_ascii_alphabetic() {
            let mut end = start + 1;
            while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                end += 1;
            }
            self.pos = end;
            let word = &self.text[start..end];
            let token = match word {
                "v" => Token::Or,
                "T" => Token::Top,
                "F" => Token::Bottom,
                _ => Token::Ident(word),
            };
            return Ok((token, start));
        }
        let ch = self.text[start..].chars().next().unwrap_or('?');
        Err(Error::Syntax {
            position: start,
            message: format!("unexpected character `{ch}`"),
        })
    }
}

struct Parser<'a, 'v> {
    lexer: Lexer<'a>,
    current: Token<'a>,
    position: usize,
    vocab: &'v Vocabulary,
}

impl<'a, 'v> Parser<'a, 'v> {
    fn new(text: &'a str, vocab: &'v Vocabulary) -> Result<Self, Error> {
        let mut lexer = Lexer { text, pos: 0 };
        let (current, position) = lexer.next_token()?;
        Ok(Parser {
            lexer,
            current,
            position,
            vocab,
        })
    }

    fn advance(&mut self) -> Result<(), Error> {
        let (token, position) = self.lexer.next_token()?;
        self.current = token;
        self.position = position;
        Ok(())
    }

    fn unexpected(&self, expected: &str) -> Error {
        Error::Syntax {
            position: self.position,
            message: format!("expected {expected}, found {}", describe(&self.current)),
        }
    }

    fn expr(&mut self) -> Result<Event, Error> {
        let mut lhs = self.term()?;
        while self.current == Token::Or {
            self.advance()?;
            let rhs = self.term()?;
            lhs = lhs.or(rhs);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Event, Error> {
        let mut lhs = self.factor()?;
        while self.current == Token::And {
            self.advance()?;
            let rhs = self.factor()?;
            lhs = lhs.and(rhs);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Event, Error> {
        match self.current.clone() {
            Token::Not => {
                self.advance()?;
                Ok(self.factor()?.not())
            }
            Token::Open => {
                self.advance()?;
                let inner = self.expr()?;
                if self.current != Token::Close {
                    return Err(self.unexpected("`)`"));
                }
                self.advance()?;
                Ok(inner)
            }
            Token::Ident(name) => {
                let Some(atom) = self.vocab.lookup(name) else {
                    return Err(Error::UndeclaredAtom {
                        name: name.to_string(),
                        position: self.position,
                    });
                };
                self.advance()?;
                Ok(Event::Atom(atom))
            }
            Token::Top => {
                self.advance()?;
                Ok(Event::Top)
            }
            Token::Bottom => {
                self.advance()?;
                Ok(Event::Bottom)
            }
            _ => Err(self.unexpected("an event")),
        }
    }

    fn finish(&self) -> Result<(), Error> {
        if self.current == Token::End {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}

/// Parses an unconditional event over the declared atoms of `vocab`.
pub fn parse_event(text: &str, vocab: &Vocabulary) -> Result<Event, Error> {
    let mut parser = Parser::new(text, vocab)?;
    let event = parser.expr()?;
    parser.finish()?;
    Ok(event)
}

/// Parses `<event> | <event>`; the antecedent must be satisfiable.
pub fn parse_conditional(text: &str, vocab: &Vocabulary) -> Result<ConditionalEvent, Error> {
    let mut parser = Parser::new(text, vocab)?;
    let consequent = parser.expr()?;
    if parser.current != Token::Bar {
        return Err(parser.unexpected("`|`"));
    }
    parser.advance()?;
    let antecedent = parser.expr()?;
    parser.finish()?;
    ConditionalEvent::new(consequent, antecedent, vocab)
}
