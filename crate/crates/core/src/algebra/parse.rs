use num_traits::One;
use thiserror::Error;

use super::symbol::{GenSymbol, Side};
use super::word::Word;
use super::{NCPoly, Scalar};

/// Errors from the textual polynomial syntax.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParsePolyError {
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("malformed generator symbol at `{0}`; expected e1[q,a] or e2[q,a]")]
    BadSymbol(String),
    #[error("unexpected character `{0}` at byte {1}")]
    Unexpected(char, usize),
    #[error("empty term in polynomial")]
    EmptyTerm,
    #[error("empty input")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Plus,
    Minus,
    Star,
    Number(String),
    Symbol(GenSymbol),
}

fn lex(input: &str) -> Result<Vec<Token>, ParsePolyError> {
    let bytes = input.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                // Optional /q part.
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    let denom_start = i;
                    while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                        i += 1;
                    }
                    if i == denom_start {
                        return Err(ParsePolyError::BadRational(input[start..i].to_string()));
                    }
                }
                tokens.push(Token::Number(input[start..i].to_string()));
            }
            'e' => {
                let rest = &input[i..];
                let (sym, used) = lex_symbol(rest)?;
                tokens.push(Token::Symbol(sym));
                i += used;
            }
            other => return Err(ParsePolyError::Unexpected(other, i)),
        }
    }
    Ok(tokens)
}

fn lex_symbol(s: &str) -> Result<(GenSymbol, usize), ParsePolyError> {
    let err = || ParsePolyError::BadSymbol(s.chars().take(12).collect());
    let bytes = s.as_bytes();
    if bytes.len() < 6 || bytes[0] != b'e' {
        return Err(err());
    }
    let side = match bytes[1] {
        b'1' => Side::Alice,
        b'2' => Side::Bob,
        _ => return Err(err()),
    };
    if bytes[2] != b'[' {
        return Err(err());
    }
    let close = s.find(']').ok_or_else(err)?;
    let inner = &s[3..close];
    let (q, a) = inner.split_once(',').ok_or_else(err)?;
    let question: u32 = q.trim().parse().map_err(|_| err())?;
    let answer: u32 = a.trim().parse().map_err(|_| err())?;
    Ok((
        GenSymbol {
            side,
            question,
            answer,
        },
        close + 1,
    ))
}

/// Parses the textual polynomial syntax, e.g. `1/4 e1[0,0]*e2[0,0] - 1`.
pub fn parse_poly(input: &str) -> Result<NCPoly, ParsePolyError> {
    let tokens = lex(input)?;
    if tokens.is_empty() {
        return Err(ParsePolyError::Empty);
    }
    let mut terms: Vec<(Word, Scalar)> = Vec::new();
    let mut i = 0;
    let mut first = true;
    while i < tokens.len() {
        let mut sign = Scalar::one();
        loop {
            match tokens.get(i) {
                Some(Token::Plus) => {
                    i += 1;
                    first = false;
                }
                Some(Token::Minus) => {
                    sign = -sign;
                    i += 1;
                    first = false;
                }
                _ => break,
            }
        }
        if !first && i == tokens.len() {
            return Err(ParsePolyError::EmptyTerm);
        }
        first = false;
        let mut coeff = sign;
        let mut has_number = false;
        if let Some(Token::Number(n)) = tokens.get(i) {
            coeff = coeff * super::scalar_from_str(n)?;
            has_number = true;
            i += 1;
            // Optional explicit `*` between coefficient and word.
            if matches!(tokens.get(i), Some(Token::Star))
                && matches!(tokens.get(i + 1), Some(Token::Symbol(_)))
            {
                i += 1;
            }
        }
        let mut symbols = Vec::new();
        if let Some(Token::Symbol(s)) = tokens.get(i) {
            symbols.push(*s);
            i += 1;
            while matches!(tokens.get(i), Some(Token::Star)) {
                match tokens.get(i + 1) {
                    Some(Token::Symbol(s2)) => {
                        symbols.push(*s2);
                        i += 2;
                    }
                    _ => return Err(ParsePolyError::EmptyTerm),
                }
            }
        } else if !has_number {
            return Err(ParsePolyError::EmptyTerm);
        }
        terms.push((Word::from_symbols(symbols), coeff));
    }
    Ok(NCPoly::from_terms(terms))
}

/// Parses a single word (no coefficients, no sums); `1` denotes the empty word.
pub fn parse_word(input: &str) -> Result<Word, ParsePolyError> {
    let input = input.trim();
    if input == "1" {
        return Ok(Word::empty());
    }
    let tokens = lex(input)?;
    let mut symbols = Vec::new();
    let mut expect_symbol = true;
    for t in tokens {
        match (expect_symbol, t) {
            (true, Token::Symbol(s)) => {
                symbols.push(s);
                expect_symbol = false;
            }
            (false, Token::Star) => expect_symbol = true,
            _ => return Err(ParsePolyError::EmptyTerm),
        }
    }
    if expect_symbol {
        return Err(ParsePolyError::EmptyTerm);
    }
    Ok(Word::from_symbols(symbols))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spec_example() {
        let p = parse_poly("1/4 e1[0,0]*e2[0,0] - 1").unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.to_string(), "1/4 e1[0,0]*e2[0,0] - 1");
    }

    #[test]
    fn parses_constants_and_signs() {
        assert_eq!(parse_poly("-1").unwrap(), NCPoly::constant(-Scalar::one()));
        assert_eq!(parse_poly("0").unwrap(), NCPoly::zero());
        let p = parse_poly("e1[0,0] + e1[0,1] - 1").unwrap();
        assert_eq!(p.num_terms(), 3);
    }

    #[test]
    fn coefficient_star_word_accepted() {
        let a = parse_poly("3/2*e1[1,0]").unwrap();
        let b = parse_poly("3/2 e1[1,0]").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("e3[0,0]").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("+").is_err());
        assert!(parse_poly("").is_err());
        assert!(parse_poly("e1[0,0]*").is_err());
    }

    #[test]
    fn word_round_trip() {
        let w = parse_word("e1[0,0]*e2[1,1]").unwrap();
        assert_eq!(w.to_string(), "e1[0,0]*e2[1,1]");
        assert_eq!(parse_word("1").unwrap(), Word::empty());
    }

    #[test]
    fn print_parse_round_trip_is_exact() {
        let texts = [
            "1/4 e1[0,0]*e2[0,0] - 1",
            "e1[0,0] + e1[0,1] - 1",
            "-2/7 e2[3,1]*e2[3,1] + 5",
        ];
        for t in texts {
            let p = parse_poly(t).unwrap();
            assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        }
    }
}
