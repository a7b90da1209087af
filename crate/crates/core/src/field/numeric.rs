//! Numerically guided search for rational roots and rational quadratic
//! factors. Every candidate is confirmed by exact division, so numerical
//! trouble can only cost completeness, never correctness.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;

/// Bits of absolute precision after exact refinement.
const PREC: u32 = 320;
const ABERTH_ITERS: usize = 2000;

type Exact = Complex<Rational>;

fn round_to(x: &Rational, scale: &BigInt) -> Rational {
    let n = (x * Rational::from_integer(scale.clone())).round().to_integer();
    Rational::new(n, scale.clone())
}

fn horner<T>(coeffs: &[T], z: &T) -> (T, T)
where
    T: Clone + std::ops::Add<Output = T> + std::ops::Mul<Output = T> + Zero,
{
    let mut p = T::zero();
    let mut dp = T::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z.clone() + p.clone();
        p = p * z.clone() + c.clone();
    }
    (p, dp)
}

/// Simultaneous approximation of all complex roots of a monic polynomial.
fn aberth(coeffs: &[f64]) -> Option<Vec<Complex<f64>>> {
    let n = coeffs.len() - 1;
    let cs: Vec<Complex<f64>> = coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect();
    let radius = (0..n)
        .map(|k| coeffs[k].abs().powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3)
        * 2.0;
    let mut z: Vec<Complex<f64>> = (0..n)
        .map(|k| Complex::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    for _ in 0..ABERTH_ITERS {
        let mut done = true;
        for k in 0..n {
            let (p, dp) = horner(&cs, &z[k]);
            if p == Complex::zero() {
                continue;
            }
            let ratio = p / dp;
            let s: Complex<f64> = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step: Complex<f64> = ratio / (Complex::new(1.0, 0.0) - ratio * s);
            if !step.is_finite() {
                return None;
            }
            z[k] -= step;
            if step.norm() > 1e-14 * (1.0 + z[k].norm()) {
                done = false;
            }
        }
        if done {
            return Some(z);
        }
    }
    Some(z)
}

fn to_exact(z: Complex<f64>) -> Option<Exact> {
    Some(Complex::new(
        Rational::from_float(z.re)?,
        Rational::from_float(z.im)?,
    ))
}

/// Newton steps in exact arithmetic, rounded to `2^-PREC` after each step.
fn refine(coeffs: &[Rational], z: Exact) -> Exact {
    let cs: Vec<Exact> = coeffs.iter().map(|c| Complex::new(c.clone(), Rational::zero())).collect();
    let scale = BigInt::one() << PREC;
    let tiny = Rational::new(BigInt::one(), scale.clone());
    let mut z = z;
    for _ in 0..12 {
        let (p, dp) = horner(&cs, &z);
        if dp.is_zero() {
            break;
        }
        let step = p / dp;
        z = Complex::new(round_to(&(&z.re - &step.re), &scale), round_to(&(&z.im - &step.im), &scale));
        if step.re.abs() < tiny && step.im.abs() < tiny {
            break;
        }
    }
    z
}

/// The rational with the largest denominator below `2^(PREC/2 - 8)` among
/// the continued-fraction convergents of `x`.
fn best_rational(x: &Rational) -> Rational {
    let limit = BigInt::one() << (PREC / 2 - 8);
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = x.clone();
    let mut best = Rational::from_integer(x.floor().to_integer());
    for _ in 0..400 {
        let a = rest.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if k2 > limit {
            break;
        }
        best = Rational::new(h2.clone(), k2.clone());
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = &rest - Rational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        rest = frac.recip();
    }
    best
}

fn small(x: &Rational) -> bool {
    x.abs() < Rational::new(BigInt::one(), BigInt::one() << (PREC / 3))
}

/// Candidate rational roots and monic quadratic factors `t² + b t + c`
/// (as `(b, c)`) of a monic rational polynomial. Candidates are not verified.
pub(crate) fn candidates(coeffs: &[Rational]) -> (Vec<Rational>, Vec<(Rational, Rational)>) {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return (vec![], vec![]);
    }
    let Some(approx) = coeffs
        .iter()
        .map(|c| c.to_f64().filter(|x| x.is_finite()))
        .collect::<Option<Vec<f64>>>()
    else {
        return (vec![], vec![]);
    };
    let Some(roots) = aberth(&approx) else {
        return (vec![], vec![]);
    };
    let exact: Vec<Exact> = roots
        .into_iter()
        .filter_map(to_exact)
        .map(|z| refine(coeffs, z))
        .collect();

    let mut linear = Vec::new();
    for z in &exact {
        if small(&z.im) {
            linear.push(best_rational(&z.re));
        }
    }
    let mut quadratic = Vec::new();
    for i in 0..exact.len() {
        for j in i + 1..exact.len() {
            let s = &exact[i] + &exact[j];
            let p = &exact[i] * &exact[j];
            if small(&s.im) && small(&p.im) {
                quadratic.push((-best_rational(&s.re), best_rational(&p.re)));
            }
        }
    }
    linear.sort();
    linear.dedup();
    quadratic.sort();
    quadratic.dedup();
    (linear, quadratic)
}
