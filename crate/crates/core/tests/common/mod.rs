#![allow(dead_code)]

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::Rng;
use subres_core::{MultiRootSet, Scalar};

/// A small rational, numerator in `-6..=6`, denominator mostly 1.
pub fn rand_rational(rng: &mut StdRng) -> Scalar {
    let num = rng.gen_range(-6..=6);
    let den = [1, 1, 1, 2, 3][rng.gen_range(0..5)];
    Scalar::from_ratio(num, den)
}

/// Random multiplicities summing to `d`, each at most `max_mult`.
pub fn rand_multiplicities(rng: &mut StdRng, d: usize, max_mult: usize) -> Vec<usize> {
    let mut left = d;
    let mut out = Vec::new();
    while left > 0 {
        let m = rng.gen_range(1..=max_mult.min(left));
        out.push(m);
        left -= m;
    }
    out
}

/// A root set of degree `d`; roots differ from each other and from `avoid`.
pub fn rand_root_set(rng: &mut StdRng, d: usize, max_mult: usize, avoid: &[Scalar]) -> MultiRootSet {
    let mults = rand_multiplicities(rng, d, max_mult);
    let mut roots: Vec<Scalar> = Vec::new();
    while roots.len() < mults.len() {
        let r = rand_rational(rng);
        if roots.iter().chain(avoid).all(|q| !(q - &r).is_zero()) {
            roots.push(r);
        }
    }
    MultiRootSet::new(roots.into_iter().zip(mults).collect()).unwrap()
}

pub fn roots_of(a: &MultiRootSet) -> Vec<Scalar> {
    a.entries().iter().map(|(r, _)| r.clone()).collect()
}

/// A pair `(A, B)` with `1 <= d <= e <= max_deg`; with probability
/// `share` one root of `B` is taken from `A`.
pub fn rand_pair(rng: &mut StdRng, max_deg: usize, max_mult: usize, share: f64) -> (MultiRootSet, MultiRootSet) {
    let d = rng.gen_range(1..=max_deg);
    let e = rng.gen_range(d..=max_deg);
    let a = rand_root_set(rng, d, max_mult, &[]);
    if rng.gen_bool(share) {
        let shared = a.root(rng.gen_range(0..a.m())).clone();
        let mults = rand_multiplicities(rng, e, max_mult);
        let mut avoid = roots_of(&a);
        let mut entries = vec![(shared, mults[0])];
        for &m in &mults[1..] {
            let r = loop {
                let r = rand_rational(rng);
                if avoid.iter().chain(entries.iter().map(|(q, _)| q)).all(|q| !(q - &r).is_zero()) {
                    break r;
                }
            };
            avoid.push(r.clone());
            entries.push((r, m));
        }
        (a, MultiRootSet::new(entries).unwrap())
    } else {
        let b = rand_root_set(rng, e, max_mult, &[]);
        (a, b)
    }
}

/// The orders `t` for which `Sres_t` is defined when `d <= e`.
pub fn valid_orders(d: usize, e: usize) -> std::ops::RangeInclusive<usize> {
    if d == e {
        0..=d - 1
    } else {
        0..=d
    }
}

pub mod systems {
    use num_traits::Zero;
    use rand::rngs::StdRng;
    use rand::Rng;
    use subres_core::mv::{MVSystem, MultiPoly, Point};
    use subres_core::{ExactMatrix, Scalar};

    use super::rand_rational;

    /// `f(M y + c)`.
    pub fn compose_affine(f: &MultiPoly, m: &ExactMatrix, c: &[Scalar]) -> MultiPoly {
        let n = f.nvars();
        let images: Vec<MultiPoly> = (0..n)
            .map(|i| {
                let mut l = MultiPoly::constant(n, c[i].clone());
                for j in 0..n {
                    l = &l + &MultiPoly::var(n, j).scale(m.get(i, j));
                }
                l
            })
            .collect();
        let mut out = MultiPoly::zero(n);
        for (e, coeff) in f.terms() {
            let mut term = MultiPoly::constant(n, coeff.clone());
            for (img, &k) in images.iter().zip(e) {
                term = &term * &img.pow(k);
            }
            out = &out + &term;
        }
        out
    }

    /// A unimodular integer matrix `L U` with unit diagonals.
    pub fn rand_unimodular(rng: &mut StdRng, n: usize) -> ExactMatrix {
        let mut l = ExactMatrix::identity(n);
        let mut u = ExactMatrix::identity(n);
        for i in 0..n {
            for j in 0..i {
                l.set(i, j, Scalar::from_int(rng.gen_range(-2..=2)));
                u.set(j, i, Scalar::from_int(rng.gen_range(-2..=2)));
            }
        }
        l.mul(&u).unwrap()
    }

    pub fn inverse(m: &ExactMatrix) -> ExactMatrix {
        let n = m.rows();
        let (r, _) = m.hstack(&ExactMatrix::identity(n)).unwrap().rref().unwrap();
        let cols: Vec<usize> = (n..2 * n).collect();
        r.submatrix(&(0..n).collect::<Vec<_>>(), &cols)
    }

    /// `n = 3` system whose first three equations factor over the rationals
    /// before a random affine change of variables.
    pub struct TriSystem {
        pub sys: MVSystem,
        /// Distinct roots of `f_1, f_2, f_3` with their multiplicities.
        pub roots: Vec<(Point, usize)>,
    }

    fn affine(n: usize, coeffs: &[Scalar]) -> MultiPoly {
        let mut l = MultiPoly::constant(n, coeffs[0].clone());
        for (j, c) in coeffs[1..].iter().enumerate() {
            l = &l + &MultiPoly::var(n, j).scale(c);
        }
        l
    }

    fn eval_affine(coeffs: &[Scalar], point: &[Scalar]) -> Scalar {
        coeffs[1..]
            .iter()
            .zip(point)
            .fold(coeffs[0].clone(), |acc, (c, x)| &acc + &(c * x))
    }

    /// `double_x1` makes every root of multiplicity 2; `last_degree` is
    /// `D_4` (1 or 2).
    pub fn rand_tri_system(rng: &mut StdRng, double_x1: bool, last_degree: u32) -> TriSystem {
        let n = 3;
        loop {
            let a = rand_rational(rng);
            let b = if double_x1 { a.clone() } else { rand_rational(rng) };
            if !double_x1 && (&a - &b).is_zero() {
                continue;
            }
            let p: Vec<Scalar> = (0..2).map(|_| rand_rational(rng)).collect();
            let q: Vec<Scalar> = (0..2).map(|_| rand_rational(rng)).collect();
            let r: Vec<Scalar> = (0..3).map(|_| rand_rational(rng)).collect();
            let s: Vec<Scalar> = (0..3).map(|_| rand_rational(rng)).collect();
            if (&p[1] - &q[1]).is_zero() || (&r[2] - &s[2]).is_zero() {
                continue;
            }
            let x1s = if double_x1 { vec![a.clone()] } else { vec![a.clone(), b.clone()] };
            let mut pts = Vec::new();
            let mut ok = true;
            for x1 in &x1s {
                let x2s = [eval_affine(&p, std::slice::from_ref(x1)), eval_affine(&q, std::slice::from_ref(x1))];
                ok &= !(&x2s[0] - &x2s[1]).is_zero();
                for x2 in &x2s {
                    let x3s = [
                        eval_affine(&r, &[x1.clone(), x2.clone()]),
                        eval_affine(&s, &[x1.clone(), x2.clone()]),
                    ];
                    ok &= !(&x3s[0] - &x3s[1]).is_zero();
                    for x3 in x3s {
                        pts.push(vec![x1.clone(), x2.clone(), x3]);
                    }
                }
            }
            if !ok {
                continue;
            }
            let x = |i| MultiPoly::var(n, i);
            let c = |v: &Scalar| MultiPoly::constant(n, v.clone());
            let f1 = &(&x(0) - &c(&a)) * &(&x(0) - &c(&b));
            let f2 = &(&x(1) - &affine(n, &[p[0].clone(), p[1].clone(), Scalar::zero(), Scalar::zero()]))
                * &(&x(1) - &affine(n, &[q[0].clone(), q[1].clone(), Scalar::zero(), Scalar::zero()]));
            let f3 = &(&x(2) - &affine(n, &[r[0].clone(), r[1].clone(), r[2].clone(), Scalar::zero()]))
                * &(&x(2) - &affine(n, &[s[0].clone(), s[1].clone(), s[2].clone(), Scalar::zero()]));
            let mut f4 = MultiPoly::zero(n);
            for e in subres_core::mv::monomials::monomials_up_to(n, last_degree) {
                f4 = &f4 + &MultiPoly::monomial(e, rand_rational(rng));
            }
            if f4.total_degree() != Some(last_degree) {
                continue;
            }

            let m = rand_unimodular(rng, n);
            let shift: Vec<Scalar> = (0..n).map(|_| Scalar::from_int(rng.gen_range(-2..=2))).collect();
            let polys: Vec<MultiPoly> = [f1, f2, f3, f4].iter().map(|f| compose_affine(f, &m, &shift)).collect();
            let minv = inverse(&m);
            let mult = if double_x1 { 2 } else { 1 };
            let roots = pts
                .into_iter()
                .map(|x| {
                    let y: Vec<Scalar> = (0..n)
                        .map(|i| (0..n).fold(Scalar::zero(), |acc, j| &acc + &(minv.get(i, j) * &(&x[j] - &shift[j]))))
                        .collect();
                    (Point::new(y), mult)
                })
                .collect();
            let sys = MVSystem::new(polys, vec![2, 2, 2, last_degree]).unwrap();
            return TriSystem { sys, roots };
        }
    }
}
