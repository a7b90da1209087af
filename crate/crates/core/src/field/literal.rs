//! The scalar literal grammar shared by every file format:
//!
//! ```text
//! rat   ::= [+-]? digits ("/" digits)?
//! gauss ::= rat | rat ("+"|"-") rat? "i" | [+-]? rat? "i"
//! ```

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::Rational;

/// A scanned Gaussian literal: `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gauss {
    pub re: Rational,
    pub im: Rational,
}

/// Failure while scanning a literal: character offset and what was expected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanError {
    pub offset: usize,
    pub expected: &'static str,
}

fn scan_sign(s: &[char], pos: &mut usize) -> Option<bool> {
    match s.get(*pos) {
        Some('+') => {
            *pos += 1;
            Some(false)
        }
        Some('-') => {
            *pos += 1;
            Some(true)
        }
        _ => None,
    }
}

fn scan_digits(s: &[char], pos: &mut usize) -> Option<BigInt> {
    let start = *pos;
    while s.get(*pos).is_some_and(char::is_ascii_digit) {
        *pos += 1;
    }
    (start < *pos).then(|| s[start..*pos].iter().collect::<String>().parse().unwrap())
}

fn scan_unsigned_rat(s: &[char], pos: &mut usize) -> Result<Option<Rational>, ScanError> {
    let Some(n) = scan_digits(s, pos) else {
        return Ok(None);
    };
    if s.get(*pos) != Some(&'/') {
        return Ok(Some(Rational::from_integer(n)));
    }
    *pos += 1;
    let at = *pos;
    match scan_digits(s, pos) {
        Some(d) if !d.is_zero() => Ok(Some(Rational::new(n, d))),
        Some(_) => Err(ScanError {
            offset: at,
            expected: "nonzero denominator",
        }),
        None => Err(ScanError {
            offset: at,
            expected: "digits after '/'",
        }),
    }
}

/// Longest Gaussian literal at the start of `s`, with the number of chars consumed.
/// Returns `Ok(None)` when `s` does not start with a literal.
pub fn scan_gauss(s: &[char]) -> Result<Option<(usize, Gauss)>, ScanError> {
    let mut pos = 0;
    let neg = scan_sign(s, &mut pos).unwrap_or(false);
    let apply = |neg: bool, q: Rational| if neg { -q } else { q };
    let first = scan_unsigned_rat(s, &mut pos)?;
    if s.get(pos) == Some(&'i') {
        pos += 1;
        let im = apply(neg, first.unwrap_or_else(Rational::one));
        return Ok(Some((
            pos,
            Gauss {
                re: Rational::zero(),
                im,
            },
        )));
    }
    let Some(first) = first else {
        return Ok(None);
    };
    let re = apply(neg, first);
    let real_only = (pos, Gauss {
        re: re.clone(),
        im: Rational::zero(),
    });
    let mut look = pos;
    let Some(neg2) = scan_sign(s, &mut look) else {
        return Ok(Some(real_only));
    };
    let second = match scan_unsigned_rat(s, &mut look) {
        Ok(x) => x,
        Err(_) => return Ok(Some(real_only)),
    };
    if s.get(look) == Some(&'i') {
        let im = apply(neg2, second.unwrap_or_else(Rational::one));
        return Ok(Some((look + 1, Gauss { re, im })));
    }
    Ok(Some(real_only))
}

/// Parses a complete Gaussian literal.
pub fn parse_gauss(s: &str) -> Option<Gauss> {
    let chars: Vec<char> = s.trim().chars().collect();
    match scan_gauss(&chars) {
        Ok(Some((n, g))) if n == chars.len() => Some(g),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::rat;

    fn g(re: Rational, im: Rational) -> Gauss {
        Gauss { re, im }
    }

    #[test]
    fn literal_forms() {
        assert_eq!(parse_gauss("2"), Some(g(rat(2, 1), rat(0, 1))));
        assert_eq!(parse_gauss("-1/3"), Some(g(rat(-1, 3), rat(0, 1))));
        assert_eq!(parse_gauss("3/5+4/5i"), Some(g(rat(3, 5), rat(4, 5))));
        assert_eq!(parse_gauss("-i"), Some(g(rat(0, 1), rat(-1, 1))));
        assert_eq!(parse_gauss("2i"), Some(g(rat(0, 1), rat(2, 1))));
        assert_eq!(parse_gauss("-2-i"), Some(g(rat(-2, 1), rat(-1, 1))));
        assert_eq!(parse_gauss("i"), Some(g(rat(0, 1), rat(1, 1))));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "+", "1/0", "1/", "i2", "1+", "--1", "1+2"] {
            assert_eq!(parse_gauss(bad), None, "{bad}");
        }
    }

    #[test]
    fn scan_stops_before_term_separator() {
        let s: Vec<char> = "2*x1+3*x2".chars().collect();
        assert_eq!(scan_gauss(&s).unwrap().unwrap().0, 1);
        let s: Vec<char> = "1+i*x3".chars().collect();
        assert_eq!(scan_gauss(&s).unwrap().unwrap().0, 3);
        let s: Vec<char> = "x1".chars().collect();
        assert_eq!(scan_gauss(&s).unwrap(), None);
    }
}
