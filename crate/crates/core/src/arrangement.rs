//! Central hyperplane arrangements from the distinct linear factors of a
//! characteristic polynomial: intersection lattice, Möbius function and
//! Poincaré polynomial of the complement.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::matrix::span_basis;
use crate::spectral::LinearFactorization;

/// Largest arrangement accepted by [`intersection_lattice`].
pub const MAX_HYPERPLANES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    normal: Vec<FieldElement>,
}

impl Hyperplane {
    /// A hyperplane `⟨z, v⟩ = 0`; the `z0` coordinate of `v` must be 1.
    pub fn new(normal: Vec<FieldElement>) -> Result<Self> {
        match normal.first() {
            Some(c) if c.is_one() => Ok(Hyperplane { normal }),
            _ => Err(Error::DimensionMismatch(
                "hyperplane normal must have z0 coefficient 1".into(),
            )),
        }
    }

    pub fn normal(&self) -> &[FieldElement] {
        &self.normal
    }
}

/// Checks lengths and rejects repeated normals.
pub fn arrangement(normals: Vec<Vec<FieldElement>>) -> Result<Vec<Hyperplane>> {
    let mut out: Vec<Hyperplane> = Vec::with_capacity(normals.len());
    for n in normals {
        let h = Hyperplane::new(n)?;
        if out.first().is_some_and(|f| f.normal.len() != h.normal.len()) {
            return Err(Error::DimensionMismatch("normals of different lengths".into()));
        }
        if out.contains(&h) {
            return Err(Error::DuplicateHyperplane);
        }
        out.push(h);
    }
    Ok(out)
}

/// One hyperplane per distinct factor other than `z0`.
pub fn build_arrangement(f: &LinearFactorization) -> Result<Vec<Hyperplane>> {
    if !f.is_complete() {
        return Err(Error::NotFullyFactorable {
            residual_degree: f.residual_degree() as usize,
        });
    }
    arrangement(
        f.factors
            .iter()
            .filter(|(form, _)| form[1..].iter().any(|x| !x.is_zero()))
            .map(|(form, _)| form.clone())
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    /// Row-reduced basis of the span of the normals of the hyperplanes
    /// containing the flat.
    pub normal_span: Vec<Vec<FieldElement>>,
    pub codim: usize,
    /// Bit `j` set when hyperplane `j` contains the flat.
    pub hyperplanes: u32,
    pub mobius: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    /// Sorted by codimension, then by span; the ambient space comes first.
    pub flats: Vec<Flat>,
}

pub fn intersection_lattice(hs: &[Hyperplane]) -> Result<Lattice> {
    if hs.len() > MAX_HYPERPLANES {
        return Err(Error::ArrangementTooLarge {
            got: hs.len(),
            max: MAX_HYPERPLANES,
        });
    }
    let dim = hs.first().map_or(0, |h| h.normal.len());
    let contained = |span: &[Vec<FieldElement>]| -> u32 {
        let mut bits = 0u32;
        for (j, h) in hs.iter().enumerate() {
            let mut ext = span.to_vec();
            ext.push(h.normal.clone());
            if span_basis(&ext, dim).len() == span.len() {
                bits |= 1 << j;
            }
        }
        bits
    };

    let mut seen: HashMap<Vec<Vec<FieldElement>>, usize> = HashMap::new();
    let mut flats = vec![Flat {
        normal_span: Vec::new(),
        codim: 0,
        hyperplanes: 0,
        mobius: 0,
    }];
    seen.insert(Vec::new(), 0);
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &fi in &frontier {
            let base = flats[fi].clone();
            for (j, h) in hs.iter().enumerate() {
                if base.hyperplanes & (1 << j) != 0 {
                    continue;
                }
                let mut ext = base.normal_span.clone();
                ext.push(h.normal.clone());
                let span = span_basis(&ext, dim);
                if seen.contains_key(&span) {
                    continue;
                }
                let bits = contained(&span);
                seen.insert(span.clone(), flats.len());
                next.push(flats.len());
                flats.push(Flat {
                    codim: span.len(),
                    normal_span: span,
                    hyperplanes: bits,
                    mobius: 0,
                });
            }
        }
        frontier = next;
    }
    flats.sort_by(|a, b| {
        a.codim
            .cmp(&b.codim)
            .then_with(|| a.normal_span.cmp(&b.normal_span))
    });
    for x in 0..flats.len() {
        flats[x].mobius = if x == 0 {
            1
        } else {
            let hx = flats[x].hyperplanes;
            -flats[..x]
                .iter()
                .filter(|y| y.hyperplanes & hx == y.hyperplanes && y.hyperplanes != hx)
                .map(|y| y.mobius)
                .sum::<i64>()
        };
    }
    Ok(Lattice { flats })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PoincarePoly {
    /// `b_0, b_1, …` without trailing zeros.
    pub coeffs: Vec<u64>,
}

impl PoincarePoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0i64, |acc, &c| acc * t + c as i64)
    }
}

impl fmt::Display for PoincarePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (j, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{c}t")?,
                (_, 1) => write!(f, "t^{j}")?,
                _ => write!(f, "{c}t^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `P(t) = Σ_X |μ(X)| t^codim(X)`.
pub fn poincare_polynomial(lattice: &Lattice) -> PoincarePoly {
    let top = lattice.flats.iter().map(|x| x.codim).max().unwrap_or(0);
    let mut coeffs = vec![0u64; top + 1];
    for x in &lattice.flats {
        coeffs[x.codim] += x.mobius.unsigned_abs();
    }
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    PoincarePoly { coeffs }
}

pub fn betti_numbers(lattice: &Lattice) -> Vec<u64> {
    poincare_polynomial(lattice).coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn normals(rows: &[&[i64]]) -> Vec<Vec<FieldElement>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| FieldElement::from_int(x)).collect())
            .collect()
    }

    fn poincare(rows: &[&[i64]]) -> Vec<u64> {
        let hs = arrangement(normals(rows)).unwrap();
        betti_numbers(&intersection_lattice(&hs).unwrap())
    }

    #[test]
    fn small_lattices() {
        assert_eq!(poincare(&[]), vec![1]);
        assert_eq!(poincare(&[&[1, 1, 0]]), vec![1, 1]);
        assert_eq!(poincare(&[&[1, 1, 0], &[1, 0, 1]]), vec![1, 2, 1]);
        // three lines through the origin of a plane
        assert_eq!(poincare(&[&[1, 1], &[1, 2], &[1, 3]]), vec![1, 3, 2]);
    }

    #[test]
    fn mobius_values() {
        let hs = arrangement(normals(&[&[1, 1], &[1, 2], &[1, 3]])).unwrap();
        let l = intersection_lattice(&hs).unwrap();
        let mu: Vec<i64> = l.flats.iter().map(|x| x.mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, -1, 2]);
        assert_eq!(mu.iter().sum::<i64>(), 0);
    }

    #[test]
    fn rejections() {
        assert_eq!(
            arrangement(normals(&[&[1, 2], &[1, 2]])).unwrap_err(),
            Error::DuplicateHyperplane
        );
        let many: Vec<Vec<FieldElement>> = (0..21)
            .map(|k| vec![FieldElement::one(), FieldElement::from_int(k)])
            .collect();
        let hs = arrangement(many).unwrap();
        assert_eq!(
            intersection_lattice(&hs).unwrap_err(),
            Error::ArrangementTooLarge { got: 21, max: 20 }
        );
    }

    #[test]
    fn display() {
        let p = PoincarePoly { coeffs: vec![1, 3, 2] };
        assert_eq!(p.to_string(), "1 + 3t + 2t^2");
        assert_eq!(p.eval(-1), 0);
    }
}
