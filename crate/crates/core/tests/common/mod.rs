//! Independent test oracles: dense truncated polynomials in `X`, `Y` over
//! `num_complex::Complex<BigRational>`, built without the library's jet code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use focaljet::{Basis, GaussRational, PiGaussCoeff, PlaneJet, Rational, SmoothJet};
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

pub type C = Complex<BigRational>;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn c(re: (i64, i64), im: (i64, i64)) -> C {
    Complex::new(q(re.0, re.1), q(im.0, im.1))
}

pub fn cr(n: i64, d: i64) -> C {
    Complex::new(q(n, d), BigRational::zero())
}

pub fn ci(n: i64, d: i64) -> C {
    Complex::new(BigRational::zero(), q(n, d))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    pub n: u32,
    pub c: BTreeMap<(u32, u32), C>,
}

impl Poly {
    pub fn zero(n: u32) -> Self {
        Poly { n, c: BTreeMap::new() }
    }

    pub fn mono(n: u32, p: u32, qq: u32, v: C) -> Self {
        let mut out = Poly::zero(n);
        out.add_term(p, qq, v);
        out
    }

    pub fn x(n: u32) -> Self {
        Poly::mono(n, 1, 0, C::one())
    }

    pub fn y(n: u32) -> Self {
        Poly::mono(n, 0, 1, C::one())
    }

    pub fn constant(n: u32, v: C) -> Self {
        Poly::mono(n, 0, 0, v)
    }

    pub fn add_term(&mut self, p: u32, qq: u32, v: C) {
        if p + qq > self.n || v.is_zero() {
            return;
        }
        let e = self.c.entry((p, qq)).or_insert_with(C::zero);
        *e = &*e + &v;
        if e.is_zero() {
            self.c.remove(&(p, qq));
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (&(p, qq), v) in &o.c {
            out.add_term(p, qq, v.clone());
        }
        out
    }

    pub fn scale(&self, s: &C) -> Poly {
        let mut out = Poly::zero(self.n);
        for (&(p, qq), v) in &self.c {
            out.add_term(p, qq, v * s);
        }
        out
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&cr(-1, 1)))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero(self.n);
        for (&(p1, q1), a) in &self.c {
            for (&(p2, q2), b) in &o.c {
                out.add_term(p1 + p2, q1 + q2, a * b);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::constant(self.n, C::one()), |acc, _| acc.mul(self))
    }

    /// `self(u, v)` by summing monomials.
    pub fn compose(&self, u: &Poly, v: &Poly) -> Poly {
        let mut out = Poly::zero(self.n);
        for (&(p, qq), a) in &self.c {
            out = out.add(&u.pow(p).mul(&v.pow(qq)).scale(a));
        }
        out
    }

    /// Coefficientwise imaginary part; for real `X`, `Y` this is `Im` of the
    /// function.
    pub fn im(&self) -> Poly {
        let mut out = Poly::zero(self.n);
        for (&(p, qq), v) in &self.c {
            out.add_term(p, qq, Complex::new(v.im.clone(), BigRational::zero()));
        }
        out
    }

    pub fn conj(&self) -> Poly {
        let mut out = Poly::zero(self.n);
        for (&(p, qq), v) in &self.c {
            out.add_term(p, qq, v.conj());
        }
        out
    }

    pub fn truncate(&self, n: u32) -> Poly {
        let mut out = Poly::zero(n);
        for (&(p, qq), v) in &self.c {
            out.add_term(p, qq, v.clone());
        }
        out
    }

    /// From a π-free XY-basis jet.
    pub fn from_jet(f: &SmoothJet) -> Poly {
        assert_eq!(f.basis(), &Basis::XY);
        let mut out = Poly::zero(f.order());
        for ((p, qq), v) in f.terms() {
            let g = v.as_gauss().expect("pi-free coefficient");
            out.add_term(p, qq, Complex::new(g.re.as_big().clone(), g.im.as_big().clone()));
        }
        out
    }

    pub fn to_jet(&self) -> SmoothJet {
        SmoothJet::from_terms(
            self.n,
            Basis::XY,
            self.c.iter().map(|(&k, v)| {
                let g = GaussRational::new(Rational::from_big(v.re.clone()), Rational::from_big(v.im.clone()));
                (k, PiGaussCoeff::from_gauss(g))
            }),
        )
    }
}

pub fn pair(g: &PlaneJet) -> (Poly, Poly) {
    (Poly::from_jet(g.first()), Poly::from_jet(g.second()))
}

/// `(f ∘ h)` for plane maps given by component polynomials.
pub fn compose_pair(f: &(Poly, Poly), h: &(Poly, Poly)) -> (Poly, Poly) {
    (f.0.compose(&h.0, &h.1), f.1.compose(&h.0, &h.1))
}

/// The plane map with complex form `Z + a Z Zbar`, i.e.
/// `(X + Re a (X²+Y²), Y + Im a (X²+Y²))`.
pub fn z_plus_a_zzbar(n: u32, a: &C) -> (Poly, Poly) {
    let r2 = Poly::x(n).pow(2).add(&Poly::y(n).pow(2));
    (Poly::x(n).add(&r2.scale(&Complex::new(a.re.clone(), BigRational::zero()))), Poly::y(n).add(&r2.scale(&Complex::new(a.im.clone(), BigRational::zero()))))
}

fn double_factorial(k: i64) -> BigInt {
    // (2l-3)!! with (-1)!! = 1
    let mut out = BigInt::one();
    let mut j = k;
    while j > 1 {
        out *= j;
        j -= 2;
    }
    out
}

fn factorial(l: u32) -> BigInt {
    (1..=l as i64).fold(BigInt::one(), |a, k| a * k)
}

/// `Σ_{l≥1} (−2a)^{l−1} (2l−3)!!/l! · t^l`, truncated at `n`.
pub fn catalan_series(n: u32, a: &C, t: &Poly) -> Poly {
    let mut out = Poly::zero(n);
    let m2a = a * cr(-2, 1);
    for l in 1..=n {
        let coef = C::new(BigRational::new(double_factorial(2 * l as i64 - 3), factorial(l)), BigRational::zero());
        let w = (0..l - 1).fold(coef, |acc, _| acc * &m2a);
        out = out.add(&t.pow(l).scale(&w));
    }
    out
}

/// Closed-form inverse of `(X + a(X²+Y²), Y)`, read formally with `Y`
/// fixed: `(Σ (−2a)^{l−1}(2l−3)!!/l! (X − aY²)^l, Y)`.
pub fn closed_form_inverse(n: u32, a: &C) -> (Poly, Poly) {
    let t = Poly::x(n).sub(&Poly::y(n).pow(2).scale(a));
    (catalan_series(n, a, &t), Poly::y(n))
}

/// Inverse of `Z + iα Z Zbar` for real `α`: `(X, Σ (−2α)^{l−1}(2l−3)!!/l! (Y − αX²)^l)`.
pub fn closed_form_inverse_imaginary(n: u32, alpha: &C) -> (Poly, Poly) {
    let t = Poly::y(n).sub(&Poly::x(n).pow(2).scale(alpha));
    (Poly::x(n), catalan_series(n, alpha, &t))
}

/// `Σ_{l=1}^{n} (−1)^{l−1}/l · Im(k_l · w · conj(w)^{l+1})` with
/// `k_l = a^{l+1} + b^{l+1} − (a+b)^{l+1}` and `w = re + i·im` the inverse
/// in complex form.
pub fn closed_form_seed_series(n: u32, a: &C, b: &C, inv: &(Poly, Poly)) -> Poly {
    let i = ci(1, 1);
    let w = inv.0.add(&inv.1.scale(&i));
    let wbar = inv.0.conj().sub(&inv.1.conj().scale(&i));
    let ab = a + b;
    let mut out = Poly::zero(n);
    for l in 1..=n {
        let e = l + 1;
        let k = pow_c(a, e) + pow_c(b, e) - pow_c(&ab, e);
        let sign = if l % 2 == 1 { 1 } else { -1 };
        let term = w.mul(&wbar.pow(e)).scale(&k).im().scale(&cr(sign, l as i64));
        out = out.add(&term);
    }
    out
}

pub fn pow_c(a: &C, e: u32) -> C {
    (0..e).fold(C::one(), |acc, _| acc * a)
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let num = rng.gen_range(-3i64..=3);
    let den = [1i64, 2, 3][rng.gen_range(0..3)];
    Rational::frac(num, den)
}

pub fn nonzero_small_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let r = small_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// A random real XY series `g` with positive `Y` coefficient and no
/// constant term, with at most `terms` higher-order entries.
pub fn random_g<R: Rng>(rng: &mut R, n: u32, terms: usize) -> SmoothJet {
    let mut f = SmoothJet::zero(n, Basis::XY);
    let y = Rational::frac(rng.gen_range(1..=3), [1i64, 2][rng.gen_range(0..2)]);
    f = f + SmoothJet::monomial(n, Basis::XY, 0, 1, PiGaussCoeff::from_rational(y));
    if rng.gen_bool(0.5) {
        f = f + SmoothJet::monomial(n, Basis::XY, 1, 0, PiGaussCoeff::from_rational(small_rational(rng)));
    }
    for _ in 0..terms {
        let d = rng.gen_range(2..=n.max(2));
        if d > n {
            break;
        }
        let p = rng.gen_range(0..=d);
        f = f + SmoothJet::monomial(n, Basis::XY, p, d - p, PiGaussCoeff::from_rational(small_rational(rng)));
    }
    f
}

/// A random real XY series, optionally with a constant term.
pub fn random_series<R: Rng>(rng: &mut R, n: u32, terms: usize, constant: bool) -> SmoothJet {
    let mut f = SmoothJet::zero(n, Basis::XY);
    for _ in 0..terms {
        let d = rng.gen_range(if constant { 0 } else { 1 }..=n);
        let p = rng.gen_range(0..=d);
        f = f + SmoothJet::monomial(n, Basis::XY, p, d - p, PiGaussCoeff::from_rational(small_rational(rng)));
    }
    f
}
