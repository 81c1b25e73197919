//! Tokenizer and cursor shared by the word, formula and boolean parsers.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(u64),
    Star,
    Caret,
    Minus,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Eq,
    Neq,
    Bang,
    Amp,
    Pipe,
    Arrow,
    End,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Int(n) => format!("integer {n}"),
            Tok::End => "end of input".to_string(),
            other => format!("{:?}", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Star => "*",
            Tok::Caret => "^",
            Tok::Minus => "-",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Colon => ":",
            Tok::Eq => "=",
            Tok::Neq => "!=",
            Tok::Bang => "!",
            Tok::Amp => "&",
            Tok::Pipe => "|",
            Tok::Arrow => "->",
            _ => "",
        }
    }
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
            continue;
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let n = digits.parse().map_err(|_| Error::Syntax {
                pos: start,
                message: format!("integer {digits} is too large"),
            })?;
            out.push((Tok::Int(n), start));
            continue;
        } else {
            let next = chars.get(i + 1).copied();
            match (c, next) {
                ('!', Some('=')) => {
                    i += 1;
                    Tok::Neq
                }
                ('-', Some('>')) => {
                    i += 1;
                    Tok::Arrow
                }
                ('*', _) => Tok::Star,
                ('^', _) => Tok::Caret,
                ('-', _) => Tok::Minus,
                ('(', _) => Tok::LParen,
                (')', _) => Tok::RParen,
                ('[', _) => Tok::LBracket,
                (']', _) => Tok::RBracket,
                (',', _) => Tok::Comma,
                (':', _) => Tok::Colon,
                ('=', _) => Tok::Eq,
                ('!', _) => Tok::Bang,
                ('&', _) => Tok::Amp,
                ('|', _) => Tok::Pipe,
                _ => {
                    return Err(Error::Syntax {
                        pos: start,
                        message: format!("unexpected character {c:?}"),
                    })
                }
            }
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

#[derive(Clone, Debug)]
pub(crate) struct Cursor {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Cursor {
    pub(crate) fn new(text: &str) -> Result<Self> {
        Ok(Cursor { toks: tokenize(text)?, pos: 0 })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    pub(crate) fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    pub(crate) fn mark(&self) -> usize {
        self.pos
    }

    pub(crate) fn reset(&mut self, mark: usize) {
        self.pos = mark;
    }

    pub(crate) fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: &Tok) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {}, found {}", tok.describe(), self.peek().describe())))
        }
    }

    pub(crate) fn error(&self, message: String) -> Error {
        Error::Syntax { pos: self.offset(), message }
    }

    pub(crate) fn finish(&self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error(format!("unexpected {}", self.peek().describe())))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_character_operators() {
        let toks: Vec<Tok> = tokenize("a!=b -> !c - d").unwrap().into_iter().map(|t| t.0).collect();
        assert_eq!(
            toks,
            vec![
                Tok::Ident("a".into()),
                Tok::Neq,
                Tok::Ident("b".into()),
                Tok::Arrow,
                Tok::Bang,
                Tok::Ident("c".into()),
                Tok::Minus,
                Tok::Ident("d".into()),
                Tok::End
            ]
        );
    }

    #[test]
    fn reports_position_of_bad_character() {
        assert_eq!(
            tokenize("x * $").unwrap_err(),
            Error::Syntax { pos: 4, message: "unexpected character '$'".into() }
        );
    }
}
