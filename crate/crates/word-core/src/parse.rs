use thiserror::Error;

use crate::{Gen, Syllable, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("expected digits after '^'")]
    MissingExponent,
    #[error("exponent out of range")]
    ExponentOverflow,
}

/// Parse the compact grammar: `a b` generators, `A B` inverses, optional `^-?n`.
/// Whitespace is ignored; `a^0` is accepted and drops out.
pub fn parse_word(text: &str) -> Result<Word, ParseError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut syl = Vec::new();
    let err = |offset, kind| ParseError { offset, kind };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let (gen, sign) = match c {
            b'a' => (Gen::A, 1),
            b'b' => (Gen::B, 1),
            b'A' => (Gen::A, -1),
            b'B' => (Gen::B, -1),
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(err(i, ParseErrorKind::UnexpectedChar(ch)));
            }
        };
        i += 1;
        let mut exp: i64 = 1;
        // exponent may follow after optional whitespace
        let mut j = i;
        while j < bytes.len() && bytes[j].is_ascii_whitespace() {
            j += 1;
        }
        if j < bytes.len() && bytes[j] == b'^' {
            let caret = j;
            j += 1;
            while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                j += 1;
            }
            let neg = j < bytes.len() && bytes[j] == b'-';
            if neg {
                j += 1;
            }
            let start = j;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if start == j {
                return Err(err(caret, ParseErrorKind::MissingExponent));
            }
            let mag: i64 = text[start..j]
                .parse()
                .map_err(|_| err(start, ParseErrorKind::ExponentOverflow))?;
            exp = if neg { -mag } else { mag };
            i = j;
        }
        syl.push(Syllable::new(gen, sign * exp));
    }
    Ok(Word::from_syllables(syl))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        assert_eq!(parse_word("a^-1 b^2 a").unwrap(), parse_word("Abba").unwrap());
        assert_eq!(parse_word("A^2").unwrap(), parse_word("AA").unwrap());
        assert_eq!(parse_word("A^-1").unwrap(), parse_word("a").unwrap());
        assert!(parse_word("a^0").unwrap().is_identity());
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_word("ab c").unwrap_err();
        assert_eq!(e.offset, 3);
        let e = parse_word("a^").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingExponent);
        assert_eq!(e.offset, 1);
        assert!(parse_word("a^99999999999999999999").is_err());
    }
}
