use super::Word;
use crate::error::{Error, Result};
use crate::syntax::{Cursor, Tok};

/// Identifiers reserved by the formula grammar; never read as letters.
pub(crate) const KEYWORDS: &[&str] = &["exists", "forall"];

fn starts_factor(tok: &Tok) -> bool {
    match tok {
        Tok::Ident(name) => !KEYWORDS.contains(&name.as_str()),
        Tok::Int(1) | Tok::LParen | Tok::LBracket => true,
        _ => false,
    }
}

/// `product := factor ('*'? factor)*`
pub(crate) fn parse_product(c: &mut Cursor) -> Result<Word> {
    let mut acc = parse_factor(c)?;
    loop {
        if c.eat(&Tok::Star) || starts_factor(c.peek()) {
            acc = acc.mul(&parse_factor(c)?);
        } else {
            return Ok(acc);
        }
    }
}

fn parse_factor(c: &mut Cursor) -> Result<Word> {
    let mut base = parse_primary(c)?;
    while c.eat(&Tok::Caret) {
        match integer_exponent(c)? {
            Some(e) => base = base.pow(e),
            None => {
                let by = parse_primary(c)?;
                base = base.conjugate(&by);
            }
        }
    }
    Ok(base)
}

/// Reads `n`, `-n`, `(n)` or `(-n)` if present; otherwise leaves the cursor alone.
fn integer_exponent(c: &mut Cursor) -> Result<Option<i64>> {
    let mark = c.mark();
    let parenthesized = c.eat(&Tok::LParen);
    let negative = c.eat(&Tok::Minus);
    let pos = c.offset();
    let n = match c.peek() {
        Tok::Int(n) => *n,
        _ if negative => return Err(c.error("expected integer after '-'".into())),
        _ => {
            c.reset(mark);
            return Ok(None);
        }
    };
    c.bump();
    if parenthesized {
        c.expect(&Tok::RParen)?;
    }
    if n == 0 {
        return Err(Error::ZeroExponent { pos });
    }
    let n = i64::try_from(n).map_err(|_| Error::Syntax { pos, message: "exponent too large".into() })?;
    Ok(Some(if negative { -n } else { n }))
}

fn parse_primary(c: &mut Cursor) -> Result<Word> {
    match c.peek().clone() {
        Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
            c.bump();
            Ok(Word::letter(name))
        }
        Tok::Int(1) => {
            c.bump();
            Ok(Word::identity())
        }
        Tok::LParen => {
            c.bump();
            let w = parse_product(c)?;
            c.expect(&Tok::RParen)?;
            Ok(w)
        }
        Tok::LBracket => {
            c.bump();
            let mut acc = parse_product(c)?;
            c.expect(&Tok::Comma)?;
            loop {
                let next = parse_product(c)?;
                acc = Word::commutator(&acc, &next);
                if !c.eat(&Tok::Comma) {
                    break;
                }
            }
            c.expect(&Tok::RBracket)?;
            Ok(acc)
        }
        other => Err(c.error(format!("expected a word, found {}", other.describe()))),
    }
}
