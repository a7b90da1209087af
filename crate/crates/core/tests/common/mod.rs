#![allow(dead_code)]

use liespectra::field::Rational;
use liespectra::spectral::{invariant_report, InvariantReport};
use liespectra::{catalog, Error, FieldElement, LieAlgebra, MatrixK, MultiPoly, TowerContext};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fe(n: i64) -> FieldElement {
    FieldElement::from_int(n)
}

pub fn frac(n: i64, d: i64) -> FieldElement {
    FieldElement::frac(n, d)
}

pub fn gauss(re: (i64, i64), im: (i64, i64)) -> FieldElement {
    TowerContext::gaussian()
        .gaussian_element(Rational::new(re.0.into(), re.1.into()), Rational::new(im.0.into(), im.1.into()))
        .unwrap()
}

pub fn small_rational(r: &mut impl Rng) -> FieldElement {
    let d = [1, 1, 1, 2, 3][r.gen_range(0..5)];
    frac(r.gen_range(-4..=4), d)
}

pub fn random_matrix(r: &mut impl Rng, n: usize) -> MatrixK {
    let rows = (0..n).map(|_| (0..n).map(|_| small_rational(r)).collect()).collect();
    MatrixK::from_rows(rows).unwrap()
}

pub fn random_invertible(r: &mut impl Rng, n: usize) -> MatrixK {
    loop {
        let b = random_matrix(r, n);
        if !b.det().is_zero() {
            return b;
        }
    }
}

/// Every catalog entry at the parameter values used throughout the tests.
pub fn catalog_algebras() -> Vec<LieAlgebra> {
    vec![
        catalog::su2(),
        catalog::sl2(),
        catalog::heisenberg3(),
        catalog::abelian(3).unwrap(),
        catalog::l_ab(&fe(1), &fe(1)).unwrap(),
        catalog::l_ab(&fe(-1), &fe(2)).unwrap(),
        catalog::a_ab(&fe(1), &fe(2)).unwrap(),
        catalog::a_ab(&gauss((2, 1), (1, 1)), &fe(2)).unwrap(),
    ]
}

/// Upper triangular integer matrix with small diagonal, or a rotation-like
/// 2×2 block, conjugated by a random invertible matrix.
fn random_operator(r: &mut impl Rng, n: usize) -> MatrixK {
    let mut t = MatrixK::zeros(n, n);
    for i in 0..n {
        t.set(i, i, fe(r.gen_range(-2..=2)));
        for j in i + 1..n {
            if r.gen_bool(0.4) {
                t.set(i, j, fe(r.gen_range(-2..=2)));
            }
        }
    }
    if n >= 2 && r.gen_bool(0.3) {
        // eigenvalues d ± c√e or d ± c i
        t.set(1, 0, fe(r.gen_range(-2..=2)));
        t.set(0, 1, fe(r.gen_range(-2..=2)));
    }
    let p = random_invertible(r, n);
    p.mul(&t).mul(&p.inverse().unwrap())
}

fn random_derivation(r: &mut impl Rng, alg: &LieAlgebra) -> MatrixK {
    let basis = alg.derivation_basis();
    let n = alg.dim();
    basis.iter().fold(MatrixK::zeros(n, n), |acc, d| {
        acc.add(&d.scale(&fe(r.gen_range(-2..=2))))
    })
}

/// A random `L1 ⋉_τ L2` of dimension at most 6, together with its factors.
pub struct Semidirect {
    pub alg: LieAlgebra,
    pub left: LieAlgebra,
    pub right: LieAlgebra,
    pub tau: Vec<MatrixK>,
}

pub fn random_semidirect(r: &mut impl Rng) -> Semidirect {
    loop {
        let (left, right, tau) = match r.gen_range(0..6) {
            0 => {
                let q = r.gen_range(1..=4);
                let d = random_operator(r, q);
                (LieAlgebra::abelian(1), LieAlgebra::abelian(q), vec![d])
            }
            1 => {
                let q = r.gen_range(2..=4);
                let d = random_operator(r, q);
                let e = d.mul(&d).add(&d.scale(&fe(r.gen_range(-2..=2))));
                (LieAlgebra::abelian(2), LieAlgebra::abelian(q), vec![d, e])
            }
            2 => {
                let h = match r.gen_range(0..3) {
                    0 => catalog::heisenberg3(),
                    1 => catalog::l_ab(&fe(r.gen_range(-2..=2)), &fe(r.gen_range(1..=2))).unwrap(),
                    _ => catalog::a_ab(&fe(r.gen_range(1..=2)), &fe(r.gen_range(-1..=1))).unwrap(),
                };
                let d = random_derivation(r, &h);
                (LieAlgebra::abelian(1), h, vec![d])
            }
            3 => {
                let h = catalog::heisenberg3();
                let d = random_derivation(r, &h);
                let c = fe(r.gen_range(-2..=2));
                (LieAlgebra::abelian(2), h, vec![d.clone(), d.scale(&c)])
            }
            4 => {
                let m = r.gen_range(0..=2);
                let rho = catalog::sl2_irrep(m);
                let p = random_invertible(r, m + 1);
                let pinv = p.inverse().unwrap();
                let tau = rho.iter().map(|x| p.mul(x).mul(&pinv)).collect();
                (catalog::sl2(), LieAlgebra::abelian(m + 1), tau)
            }
            _ => {
                let h = catalog::sl2();
                let v: Vec<FieldElement> = (0..3).map(|_| fe(r.gen_range(-2..=2))).collect();
                (LieAlgebra::abelian(1), h.clone(), vec![h.ad(&v)])
            }
        };
        let alg = left.semidirect_sum(&right, &tau).expect("τ is a homomorphism into Der");
        match invariant_report(&alg) {
            Ok(_) => return Semidirect { alg, left, right, tau },
            Err(Error::UnsupportedFieldExtension { .. } | Error::TowerDepthExceeded { .. }) => continue,
            Err(e) => panic!("{}: {e}", alg.name()),
        }
    }
}

pub fn report(alg: &LieAlgebra) -> InvariantReport {
    invariant_report(alg).unwrap_or_else(|e| panic!("{}: {e}", alg.name()))
}

/// Determinant by first-row cofactor expansion, written independently of the
/// library routines.
pub fn cofactor_det(m: &[Vec<FieldElement>]) -> FieldElement {
    let n = m.len();
    if n == 0 {
        return FieldElement::one();
    }
    let mut acc = FieldElement::zero();
    for j in 0..n {
        let minor: Vec<Vec<FieldElement>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * &cofactor_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Polynomial analogue of [`cofactor_det`].
pub fn cofactor_det_poly(m: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(nvars);
    }
    let mut acc = MultiPoly::zero(nvars);
    for j in 0..n {
        let minor: Vec<Vec<MultiPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = m[0][j].mul(&cofactor_det_poly(&minor, nvars));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// `z0 I + Σ z_i M_i` entrywise.
pub fn pencil_entries(mats: &[MatrixK], nvars: usize, offset: usize) -> Vec<Vec<MultiPoly>> {
    let d = mats.first().map_or(0, MatrixK::rows);
    (0..d)
        .map(|r| {
            (0..d)
                .map(|c| {
                    let mut p = if r == c { MultiPoly::var(nvars, 0) } else { MultiPoly::zero(nvars) };
                    for (i, m) in mats.iter().enumerate() {
                        let z = MultiPoly::var(nvars, offset + i + 1);
                        p = p.add(&z.scale(m.get(r, c)));
                    }
                    p
                })
                .collect()
        })
        .collect()
}

pub fn sorted_columns(m: &MatrixK) -> Vec<Vec<FieldElement>> {
    let mut cols: Vec<_> = (0..m.cols()).map(|j| m.column(j)).collect();
    cols.sort();
    cols
}

/// Each entry rewritten into `ctx`.
pub fn embed_vec(ctx: &TowerContext, v: &[FieldElement]) -> Vec<FieldElement> {
    let mut ctx = ctx.clone();
    v.iter()
        .map(|x| {
            let (next, y) = ctx.embed(x).unwrap();
            ctx = next;
            y
        })
        .collect()
}
