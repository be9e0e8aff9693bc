//! Text form of polynomial elements.
//!
//! ```text
//! element  := ['+'|'-'] term (('+'|'-') term)*
//! term     := coeff ['*' factor+] | factor+
//! factor   := 's[' letters ']' | 't[' letters ']'      (t[J] is s_J^*)
//! coeff    := rational | rational ('+'|'-') rational 'i'
//! rational := integer ['/' positive-integer]
//! ```
//!
//! Letters are single digits `1..=N`, so the text form supports `N <= 9`.
//! Whitespace is insignificant.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::element::{AlgebraElement, Monomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::word::Word;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit run parses"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.integer()?;
        if self.eat(b'/') {
            let at = self.pos;
            let den = self.integer()?;
            if den.is_zero() {
                self.pos = at;
                return self.err("zero denominator");
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    /// A real coefficient, optionally followed by `± rational i`.
    fn coeff(&mut self) -> Result<Scalar> {
        let re = self.rational()?;
        let save = self.pos;
        if let Some(sign @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                let im = self.rational()?;
                if self.eat(b'i') {
                    let im = if sign == b'-' { -im } else { im };
                    return Ok(Scalar::new(re, im));
                }
            }
            self.pos = save;
        }
        Ok(Scalar::from_real(re))
    }

    fn factor(&mut self) -> Result<AlgebraElement> {
        let kind = self.peek();
        let star = match kind {
            Some(b's') => false,
            Some(b't') => true,
            _ => return self.err("expected factor 's[..]' or 't[..]'"),
        };
        self.pos += 1;
        if !self.eat(b'[') {
            return self.err("expected '['");
        }
        let mut letters = Vec::new();
        loop {
            match self.peek() {
                Some(b']') => {
                    self.pos += 1;
                    break;
                }
                Some(c @ b'0'..=b'9') => {
                    let l = (c - b'0') as usize;
                    if l == 0 || l > self.n {
                        return Err(Error::LetterOutOfRange { letter: l, n: self.n });
                    }
                    letters.push(l as u8);
                    self.pos += 1;
                }
                _ => return self.err("expected letter or ']'"),
            }
        }
        let word = Word::from_letters(letters);
        Ok(if star {
            AlgebraElement::s_star(self.n, word)
        } else {
            AlgebraElement::s(self.n, word)
        })
    }

    fn factors(&mut self) -> Result<AlgebraElement> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(b's' | b't')) {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<AlgebraElement> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.coeff()?;
                if self.eat(b'*') || matches!(self.peek(), Some(b's' | b't')) {
                    Ok(self.factors()?.scale(&c))
                } else {
                    Ok(AlgebraElement::scalar(self.n, c))
                }
            }
            Some(b's' | b't') => self.factors(),
            None => self.err("unexpected end of input"),
            _ => self.err("expected term"),
        }
    }

    fn element(&mut self) -> Result<AlgebraElement> {
        let mut negate = self.eat(b'-');
        if !negate {
            self.eat(b'+');
        }
        let mut acc = AlgebraElement::zero(self.n);
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                None => return Ok(acc),
                _ => return self.err("expected '+', '-' or end of input"),
            }
            self.pos += 1;
        }
    }
}

/// Parses an element of `O_n` from its text form.
pub fn parse_element(text: &str, n: usize) -> Result<AlgebraElement> {
    if !(2..=9).contains(&n) {
        return Err(Error::BadAlphabet(n));
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
    };
    p.element()
}

fn write_factors(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut parts = Vec::new();
    if !m.left.is_empty() {
        parts.push(format!("s[{}]", m.left));
    }
    if !m.right.is_empty() {
        parts.push(format!("t[{}]", m.right));
    }
    write!(f, "{}", parts.join(" "))
}

/// Canonical printer: sibling-contracted form, terms ordered by left word
/// (length, then lexicographic), then right word.
impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let canon = self.canonicalize();
        let mut terms: Vec<(&Monomial, &Scalar)> = canon.terms().iter().collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        terms.sort_by(|(a, _), (b, _)| {
            (a.left.len(), &a.left, a.right.len(), &a.right).cmp(&(
                b.left.len(),
                &b.left,
                b.right.len(),
                &b.right,
            ))
        });
        for (idx, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.re().is_negative() || (c.re().is_zero() && c.im().is_negative());
            let mag = if negative { -c.clone() } else { c.clone() };
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let scalar_only = m.left.is_empty() && m.right.is_empty();
            if scalar_only {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write_factors(f, m)?;
            } else {
                write!(f, "{mag} * ")?;
                write_factors(f, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    #[test]
    fn parses_the_flip_unitary() {
        let x = parse_element("s[1] t[2] + s[2] t[1]", 2).unwrap();
        let expect = &AlgebraElement::monomial(2, w("1"), w("2"))
            + &AlgebraElement::monomial(2, w("2"), w("1"));
        assert_eq!(x.terms(), expect.terms());
        assert_eq!(x.to_string(), "s[1] t[2] + s[2] t[1]");
    }

    #[test]
    fn parses_projection_e() {
        let e = parse_element("1/2 + 1/2 * s[1] t[2] + 1/2 * s[2] t[1]", 2).unwrap();
        assert_eq!(e.terms().len(), 3);
        assert_eq!(e.to_string(), "1/2 + 1/2 * s[1] t[2] + 1/2 * s[2] t[1]");
        assert_eq!(&e * &e, e);
    }

    #[test]
    fn multi_letter_factors() {
        let m = parse_element("s[12] t[21]", 2).unwrap();
        assert_eq!(
            m.terms().keys().next().unwrap(),
            &Monomial::new(w("12"), w("21"))
        );
        // s_1 s_2^* s_2 = s_1
        let p = parse_element("s[1] t[2] s[2]", 2).unwrap();
        assert_eq!(p.to_string(), "s[1]");
    }

    #[test]
    fn complex_and_signed_coefficients() {
        let a = parse_element("-1/3 * s[1] + 2-1/2i * t[2] - 0+1i", 2).unwrap();
        let printed = a.to_string();
        let b = parse_element(&printed, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(printed, "-0+1i + 2-1/2i * t[2] - 1/3 * s[1]");
    }

    #[test]
    fn errors_carry_positions() {
        match parse_element("s[1] + x", 2) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_element("s[13]", 2),
            Err(Error::LetterOutOfRange { letter: 3, n: 2 })
        ));
        assert!(matches!(parse_element("1/0", 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse_element("", 2), Err(Error::Syntax { .. })));
    }

    #[test]
    fn zero_prints_as_zero() {
        let z = parse_element("s[1] - s[1]", 2).unwrap();
        assert_eq!(z.to_string(), "0");
    }
}
