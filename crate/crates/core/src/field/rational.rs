//! Helpers on top of `BigRational`: square roots, square-free parts, divisors.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rationals, always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Trial division stops after this many candidate divisors.
const TRIAL_LIMIT: u64 = 2_000_000;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Square root in ℚ, if it exists.
pub fn sqrt_rational(q: &Rational) -> Option<Rational> {
    let n = exact_isqrt(q.numer())?;
    let d = exact_isqrt(q.denom())?;
    Some(Rational::new(n, d))
}

/// Writes `q = c² · r` with `c > 0` rational and `r` an integer whose square
/// factors below the trial-division limit have been removed.
pub fn squarefree_split(q: &Rational) -> (Rational, BigInt) {
    // q = n/d = (n·d) / d²
    let mut m = q.numer() * q.denom();
    let sign = m.sign();
    m = m.abs();
    let mut outside = BigInt::one();
    let mut p = BigInt::from(2u32);
    let mut steps = 0u64;
    while &p * &p <= m && steps < TRIAL_LIMIT {
        let sq = &p * &p;
        while (&m % &sq).is_zero() {
            m /= &sq;
            outside *= &p;
        }
        p += 1u32;
        steps += 1;
    }
    if sign == Sign::Minus {
        m = -m;
    }
    (Rational::new(outside, q.denom().clone()), m)
}

/// Positive divisors of `n ≠ 0` in increasing order, or `None` when `n` is too
/// large to factor by trial division.
pub fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut m = n.abs();
    if m.is_zero() {
        return None;
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2u32);
    let mut steps = 0u64;
    while &p * &p <= m {
        if steps >= TRIAL_LIMIT {
            return None;
        }
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1u32;
        steps += 1;
    }
    if !m.is_one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    // guard against pathological divisor counts
    if divs.len().to_u64().unwrap_or(u64::MAX) > 100_000 {
        return None;
    }
    Some(divs)
}

/// Least common multiple of the denominators.
pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Parses `[+-]? digits ("/" digits)?`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (neg, body) = match s.as_bytes().first()? {
        b'+' => (false, &s[1..]),
        b'-' => (true, &s[1..]),
        _ => (false, s),
    };
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(n) || !digits(d) {
        return None;
    }
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    let q = Rational::new(n, d);
    Some(if neg { -q } else { q })
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_squares() {
        assert_eq!(sqrt_rational(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(sqrt_rational(&rat(2, 1)), None);
        assert_eq!(sqrt_rational(&rat(-4, 1)), None);
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_split(&int(8)), (int(2), BigInt::from(2)));
        assert_eq!(squarefree_split(&int(-4)), (int(2), BigInt::from(-1)));
        // 5/12 = (1/6)^2 * 15
        assert_eq!(squarefree_split(&rat(5, 12)), (rat(1, 6), BigInt::from(15)));
    }

    #[test]
    fn divisor_lists() {
        let d: Vec<i64> = divisors(&BigInt::from(12))
            .unwrap()
            .iter()
            .map(|x| x.to_i64().unwrap())
            .collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(&BigInt::from(-7)).unwrap().len(), 2);
    }

    #[test]
    fn literal_round_trip() {
        for s in ["2", "-1/3", "0", "+5/7"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(parse_rational(&format_rational(&q)), Some(q));
        }
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/"), None);
        assert_eq!(parse_rational("-"), None);
    }
}
