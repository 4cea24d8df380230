use num_bigint::BigUint;

use super::{Ordinal, OrdinalError};
use crate::text::Cursor;

/// Parses ordinal text such as `w^w + w*2 + 3` or `e0`. Non-canonical
/// input (`w + w`, `1 + w`) is normalised by ordinal addition.
pub fn parse_ordinal(text: &str) -> Result<Ordinal, OrdinalError> {
    let mut cur = Cursor::new(text);
    let ord = parse_ord(&mut cur)?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(ord)
}

pub(crate) fn parse_ord(cur: &mut Cursor<'_>) -> Result<Ordinal, OrdinalError> {
    cur.skip_ws();
    if cur.eat_word("e0") {
        return Ok(Ordinal::epsilon_zero());
    }
    if cur.peek() == Some('0') {
        cur.bump();
        if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(cur.error("leading zero in number"));
        }
        return Ok(Ordinal::zero());
    }
    let mut acc = parse_term(cur)?;
    loop {
        cur.skip_ws();
        if !cur.eat("+") {
            return Ok(acc);
        }
        let pos = cur.pos();
        let t = parse_term(cur)?;
        acc = acc.add(&t).map_err(|e| Cursor::error_at::<OrdinalError>(pos, &e.to_string()))?;
    }
}

pub(crate) fn parse_term(cur: &mut Cursor<'_>) -> Result<Ordinal, OrdinalError> {
    cur.skip_ws();
    match cur.peek() {
        Some('w') => {
            cur.bump();
            cur.skip_ws();
            let exponent = if cur.eat("^") {
                parse_atom(cur)?
            } else {
                Ordinal::one()
            };
            cur.skip_ws();
            let coefficient = if cur.eat("*") {
                cur.skip_ws();
                parse_nat(cur)?
            } else {
                BigUint::from(1u32)
            };
            let pos = cur.pos();
            Ordinal::monomial(exponent, coefficient).map_err(|e| Cursor::error_at::<OrdinalError>(pos, &e.to_string()))
        }
        Some(c) if c.is_ascii_digit() => Ok(Ordinal::finite(parse_nat(cur)?)),
        _ => Err(cur.error("expected a term (`w...` or a positive number)")),
    }
}

fn parse_atom(cur: &mut Cursor<'_>) -> Result<Ordinal, OrdinalError> {
    cur.skip_ws();
    match cur.peek() {
        Some('w') => {
            cur.bump();
            Ok(Ordinal::omega())
        }
        Some('(') => {
            cur.bump();
            let inner = parse_ord(cur)?;
            cur.skip_ws();
            if !cur.eat(")") {
                return Err(cur.error("expected `)`"));
            }
            if inner.is_epsilon_zero() {
                return Err(cur.error("e0 cannot be an exponent"));
            }
            Ok(inner)
        }
        Some(c) if c.is_ascii_digit() => Ok(Ordinal::finite(parse_nat(cur)?)),
        _ => Err(cur.error("expected an exponent (`w`, a number or a parenthesised ordinal)")),
    }
}

fn parse_nat(cur: &mut Cursor<'_>) -> Result<BigUint, OrdinalError> {
    let start = cur.pos();
    match cur.peek() {
        Some('1'..='9') => {}
        _ => return Err(cur.error("expected a positive number")),
    }
    while cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        cur.bump();
    }
    let digits = cur.slice(start);
    Ok(digits.parse().expect("digits"))
}
