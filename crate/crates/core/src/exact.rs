//! Exact coefficient arithmetic for the side-pairing matrices of regular
//! 4p-gon groups.
//!
//! With N = 4p and c = cos(pi/N), every entry of every group matrix lies in
//! K(r), where K = Q(c) and r = sqrt(cos(pi/2p)). This uses two collapses:
//! cos(k pi/N) = T_k(c) and sin(k pi/N) = T_(2p-k)(c) (Chebyshev), so no
//! separate sine generator is needed, and the translation-length constants
//! (c ± r)/s, (1 ± c)/s have denominator s = sin(pi/N) which is invertible
//! in K. K is represented as Q[x]/(minpoly of c); r is carried as a formal
//! second component. r is never an element of K (it is not totally real),
//! so a two-component element is zero iff both components are zero: equality
//! tests are exact and complete, which is what lets relator identities be
//! decided rather than approximated.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{Ival, NumError, Prec};

/// Polygon geometry selecting the translation length of the side pairings:
/// `Compact` closes a regular 4p-gon with vertex angle 2pi/4p, `Ideal` a
/// regular ideal 4p-gon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polygon {
    Compact,
    Ideal,
}

// ---------------------------------------------------------------------------
// Dense rational polynomials, just enough for modular number-field work.

#[derive(Clone, PartialEq, Eq)]
struct PolyQ {
    /// Coefficients, ascending degree, no trailing zeros.
    co: Vec<BigRational>,
}

impl PolyQ {
    fn zero() -> Self {
        PolyQ { co: Vec::new() }
    }

    fn from_coeffs(mut co: Vec<BigRational>) -> Self {
        while co.last().is_some_and(|c| c.is_zero()) {
            co.pop();
        }
        PolyQ { co }
    }

    fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    fn one() -> Self {
        Self::constant(BigRational::one())
    }

    fn x() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    fn is_zero(&self) -> bool {
        self.co.is_empty()
    }

    fn degree(&self) -> isize {
        self.co.len() as isize - 1
    }

    fn coeff(&self, k: usize) -> BigRational {
        self.co.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add(&self, other: &PolyQ) -> PolyQ {
        let n = self.co.len().max(other.co.len());
        let co = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        PolyQ::from_coeffs(co)
    }

    fn sub(&self, other: &PolyQ) -> PolyQ {
        let n = self.co.len().max(other.co.len());
        let co = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        PolyQ::from_coeffs(co)
    }

    fn neg(&self) -> PolyQ {
        PolyQ {
            co: self.co.iter().map(|c| -c.clone()).collect(),
        }
    }

    fn mul(&self, other: &PolyQ) -> PolyQ {
        if self.is_zero() || other.is_zero() {
            return PolyQ::zero();
        }
        let mut co = vec![BigRational::zero(); self.co.len() + other.co.len() - 1];
        for (i, a) in self.co.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.co.iter().enumerate() {
                co[i + j] += a * b;
            }
        }
        PolyQ::from_coeffs(co)
    }

    fn scale(&self, s: &BigRational) -> PolyQ {
        PolyQ::from_coeffs(self.co.iter().map(|c| c * s).collect())
    }

    /// Quotient and remainder; divisor need not be monic.
    fn div_rem(&self, d: &PolyQ) -> (PolyQ, PolyQ) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut rem = self.clone();
        let mut quo = vec![BigRational::zero(); (self.degree() - d.degree() + 1).max(0) as usize];
        let dl = d.co.last().unwrap();
        while rem.degree() >= d.degree() {
            let k = (rem.degree() - d.degree()) as usize;
            let f = rem.co.last().unwrap() / dl;
            let mut shifted = vec![BigRational::zero(); k];
            shifted.extend(d.co.iter().map(|c| c * &f));
            rem = rem.sub(&PolyQ::from_coeffs(shifted));
            quo[k] = f;
        }
        (PolyQ::from_coeffs(quo), rem)
    }

    fn rem(&self, m: &PolyQ) -> PolyQ {
        self.div_rem(m).1
    }

    /// Inverse of self modulo m (coprime, m nonconstant), by extended Euclid.
    fn inv_mod(&self, m: &PolyQ) -> PolyQ {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut t0, mut t1) = (PolyQ::zero(), PolyQ::one());
        while !r1.is_zero() {
            let (q, r2) = r0.div_rem(&r1);
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r2;
            t0 = t1;
            t1 = t2;
        }
        assert!(r0.degree() == 0, "not invertible modulo minpoly");
        t0.scale(&(BigRational::one() / r0.coeff(0))).rem(m)
    }

    fn eval_ival(&self, x: &Ival, prec: Prec) -> Ival {
        let mut acc = Ival::zero();
        for c in self.co.iter().rev() {
            let cv = Ival::from_big_ratio(c.numer(), c.denom(), prec);
            acc = acc.mul(x, prec).add(&cv, prec);
        }
        acc
    }
}

impl fmt::Debug for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyQ{:?}", self.co.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials and the minimal polynomial of cos(pi/N).

fn cyclotomic(n: u64, memo: &mut BTreeMap<u64, PolyQ>) -> PolyQ {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by the cyclotomic polynomials of all proper divisors.
    let mut co = vec![BigRational::zero(); n as usize + 1];
    co[0] = -BigRational::one();
    co[n as usize] = BigRational::one();
    let mut p = PolyQ::from_coeffs(co);
    for d in 1..n {
        if n % d == 0 {
            let (q, r) = p.div_rem(&cyclotomic(d, memo));
            assert!(r.is_zero());
            p = q;
        }
    }
    memo.insert(n, p.clone());
    p
}

/// Monic minimal polynomial of cos(pi/n) over Q, for even n >= 4.
///
/// cos(pi/n) = cos(2pi/2n); the cyclotomic polynomial of order 2n is
/// palindromic of even degree 2m and factors through y = z + 1/z, giving the
/// minimal polynomial of 2cos(2pi/2n); rescaling the variable finishes.
fn minpoly_cos(n: u64) -> PolyQ {
    let mut memo = BTreeMap::new();
    let phi = cyclotomic(2 * n, &mut memo);
    let m = phi.degree() as usize / 2;
    let mut rem = phi;
    let mut f = vec![BigRational::zero(); m + 1];
    // Peel z^(m-j) (z^2+1)^j, the image of y^j, from the top degree down.
    let zsq1 = PolyQ::from_coeffs(vec![
        BigRational::one(),
        BigRational::zero(),
        BigRational::one(),
    ]);
    for j in (0..=m).rev() {
        let b = rem.coeff(m + j);
        f[j] = b.clone();
        if b.is_zero() {
            continue;
        }
        let mut term = PolyQ::one();
        for _ in 0..j {
            term = term.mul(&zsq1);
        }
        let mut shifted = vec![BigRational::zero(); m - j];
        shifted.extend(term.co);
        rem = rem.sub(&PolyQ::from_coeffs(shifted).scale(&b));
    }
    assert!(rem.is_zero(), "cyclotomic polynomial not palindromic");
    // y = 2x, then normalize monic.
    let two = BigRational::from_integer(BigInt::from(2));
    let mut pow = BigRational::one();
    for co in f.iter_mut() {
        *co *= &pow;
        pow *= &two;
    }
    let g = PolyQ::from_coeffs(f);
    let lead = g.co.last().unwrap().clone();
    g.scale(&(BigRational::one() / lead))
}

// ---------------------------------------------------------------------------
// The number field K = Q(cos(pi/4p)) and its radical extension K(r).

/// Shared context: genus, minimal polynomial, and the handful of field
/// constants every matrix entry is built from.
pub struct NumField {
    pub genus: u32,
    /// Polygon side count N = 4p.
    pub sides: i64,
    minpoly: PolyQ,
    /// 1 / sin(pi/N) as a polynomial in c.
    s_inv: PolyQ,
    /// r^2 = cos(pi/2p) = 2c^2 - 1 as a polynomial in c.
    rsq: PolyQ,
}

impl fmt::Debug for NumField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumField(genus {}, degree {})", self.genus, self.minpoly.degree())
    }
}

impl NumField {
    pub fn new(genus: u32) -> Arc<NumField> {
        assert!(genus >= 2, "polygon construction needs genus >= 2");
        let n = 4 * genus as i64;
        let minpoly = minpoly_cos(n as u64);
        // sin(pi/N) = cos((2p-1) pi/N) = T_(2p-1)(c).
        let s = chebyshev_raw(2 * genus as i64 - 1).rem(&minpoly);
        let s_inv = s.inv_mod(&minpoly);
        let rsq = chebyshev_raw(2).rem(&minpoly);
        Arc::new(NumField {
            genus,
            sides: n,
            minpoly,
            s_inv,
            rsq,
        })
    }

    fn reduce(&self, p: PolyQ) -> PolyQ {
        p.rem(&self.minpoly)
    }

    /// cos(k pi/N) as a field element.
    fn cos_k(self: &Arc<Self>, k: i64) -> FieldElem {
        FieldElem {
            ctx: self.clone(),
            p: self.reduce(chebyshev_raw(k.abs())),
        }
    }

    /// sin(k pi/N) as a field element.
    fn sin_k(self: &Arc<Self>, k: i64) -> FieldElem {
        let e = self.cos_k((2 * self.genus as i64 - k).abs());
        if k.signum() == -1 {
            e.neg()
        } else {
            e
        }
    }

    fn elem(self: &Arc<Self>, p: PolyQ) -> FieldElem {
        FieldElem {
            ctx: self.clone(),
            p: self.reduce(p),
        }
    }

    /// Certified interval for c = cos(pi/N).
    fn c_ival(&self, prec: Prec) -> Ival {
        crate::scalar::trig_pi(1, self.sides, prec).0
    }

    /// Certified interval for r = sqrt(cos(2pi/N)).
    fn r_ival(&self, prec: Prec) -> Result<Ival, NumError> {
        crate::scalar::trig_pi(2, self.sides, prec).0.sqrt(prec)
    }

    /// The side-pairing matrices of the letters a1, b1, ..., ap, bp.
    pub fn letter_matrices(self: &Arc<Self>, poly: Polygon) -> Vec<ExactMat> {
        let mut out = Vec::with_capacity(2 * self.genus as usize);
        for i in 0..self.genus as i64 {
            out.push(self.gamma(4 * i, poly));
            out.push(self.gamma(4 * i + 1, poly).inverse());
        }
        out
    }

    /// Side pairing carrying side s+2 onto side s of the regular 4p-gon:
    /// rotate, translate across the polygon, flip.
    fn gamma(self: &Arc<Self>, s: i64, poly: Polygon) -> ExactMat {
        let (ep, em) = self.translation_diag(poly);
        let zero = self.alg_zero();
        let rot = ExactMat {
            e: [
                [self.cos_k(s).alg(), self.sin_k(s).alg()],
                [self.sin_k(s).neg().alg(), self.cos_k(s).alg()],
            ],
        };
        let trans = ExactMat {
            e: [[ep, zero.clone()], [zero, em]],
        };
        // R(pi - mu_{s+2}) folded into one matrix.
        let flip = ExactMat {
            e: [
                [self.sin_k(s + 2).alg(), self.cos_k(s + 2).alg()],
                [self.cos_k(s + 2).neg().alg(), self.sin_k(s + 2).alg()],
            ],
        };
        rot.mul(&trans).mul(&flip)
    }

    /// diag entries (e^q, e^-q) of the cross-polygon translation.
    fn translation_diag(self: &Arc<Self>, poly: Polygon) -> (AlgNum, AlgNum) {
        let s_inv = self.elem(self.s_inv.clone());
        match poly {
            Polygon::Compact => {
                // e^q = (c + r)/s, e^-q = (c - r)/s.
                let cs = s_inv.mul(&self.cos_k(1));
                (
                    AlgNum {
                        re: cs.clone(),
                        rad: s_inv.clone(),
                    },
                    AlgNum {
                        re: cs,
                        rad: s_inv.neg(),
                    },
                )
            }
            Polygon::Ideal => {
                // e^q = (1 + c)/s, e^-q = (1 - c)/s.
                let one = self.elem(PolyQ::one());
                (
                    s_inv.mul(&one.add(&self.cos_k(1))).alg(),
                    s_inv.mul(&one.sub(&self.cos_k(1))).alg(),
                )
            }
        }
    }

    fn alg_zero(self: &Arc<Self>) -> AlgNum {
        AlgNum {
            re: self.elem(PolyQ::zero()),
            rad: self.elem(PolyQ::zero()),
        }
    }

    pub fn identity(self: &Arc<Self>) -> ExactMat {
        let one = self.elem(PolyQ::one()).alg();
        let zero = self.alg_zero();
        ExactMat {
            e: [[one.clone(), zero.clone()], [zero, one]],
        }
    }
}

/// Chebyshev polynomial T_k as a raw polynomial (cos(k t) = T_k(cos t)).
fn chebyshev_raw(k: i64) -> PolyQ {
    let k = k.abs();
    let mut t0 = PolyQ::one();
    let mut t1 = PolyQ::x();
    if k == 0 {
        return t0;
    }
    let two_x = PolyQ::x().scale(&BigRational::from_integer(BigInt::from(2)));
    for _ in 1..k {
        let t2 = two_x.mul(&t1).sub(&t0);
        t0 = t1;
        t1 = t2;
    }
    t1
}

/// Element of K, reduced mod the minimal polynomial.
#[derive(Clone)]
pub struct FieldElem {
    ctx: Arc<NumField>,
    p: PolyQ,
}

impl FieldElem {
    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    fn add(&self, o: &FieldElem) -> FieldElem {
        self.ctx.elem(self.p.add(&o.p))
    }

    fn sub(&self, o: &FieldElem) -> FieldElem {
        self.ctx.elem(self.p.sub(&o.p))
    }

    fn mul(&self, o: &FieldElem) -> FieldElem {
        self.ctx.elem(self.p.mul(&o.p))
    }

    fn neg(&self) -> FieldElem {
        self.ctx.elem(self.p.neg())
    }

    fn alg(self) -> AlgNum {
        let zero = self.ctx.elem(PolyQ::zero());
        AlgNum {
            re: self,
            rad: zero,
        }
    }

    fn eval(&self, prec: Prec) -> Ival {
        let c = self.ctx.c_ival(prec);
        self.p.eval_ival(&c, prec)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({:?})", self.p)
    }
}

/// Element of K(r), stored as re + rad * r.
#[derive(Clone, Debug)]
pub struct AlgNum {
    pub re: FieldElem,
    pub rad: FieldElem,
}

impl AlgNum {
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.rad.is_zero()
    }

    pub fn equals(&self, o: &AlgNum) -> bool {
        self.sub(o).is_zero()
    }

    pub fn add(&self, o: &AlgNum) -> AlgNum {
        AlgNum {
            re: self.re.add(&o.re),
            rad: self.rad.add(&o.rad),
        }
    }

    pub fn sub(&self, o: &AlgNum) -> AlgNum {
        AlgNum {
            re: self.re.sub(&o.re),
            rad: self.rad.sub(&o.rad),
        }
    }

    pub fn neg(&self) -> AlgNum {
        AlgNum {
            re: self.re.neg(),
            rad: self.rad.neg(),
        }
    }

    pub fn mul(&self, o: &AlgNum) -> AlgNum {
        let rsq = self.re.ctx.elem(self.re.ctx.rsq.clone());
        AlgNum {
            re: self.re.mul(&o.re).add(&self.rad.mul(&o.rad).mul(&rsq)),
            rad: self.re.mul(&o.rad).add(&self.rad.mul(&o.re)),
        }
    }

    pub fn from_int(ctx: &Arc<NumField>, k: i64) -> AlgNum {
        AlgNum::from_ratio(ctx, k, 1)
    }

    pub fn from_ratio(ctx: &Arc<NumField>, n: i64, d: i64) -> AlgNum {
        ctx.elem(PolyQ::constant(BigRational::new(BigInt::from(n), BigInt::from(d))))
            .alg()
    }

    pub fn ctx(&self) -> &Arc<NumField> {
        &self.re.ctx
    }

    /// Certified interval at the given precision.
    pub fn eval(&self, prec: Prec) -> Result<Ival, NumError> {
        let re = self.re.eval(prec);
        if self.rad.is_zero() {
            return Ok(re);
        }
        let r = self.re.ctx.r_ival(prec)?;
        Ok(re.add(&self.rad.eval(prec).mul(&r, prec), prec))
    }

    /// Certified sign: -1, 0 (exact), or +1; asks for escalation room via Err.
    pub fn sign(&self, prec: Prec) -> Result<i8, NumError> {
        if self.is_zero() {
            return Ok(0);
        }
        let iv = self.eval(prec)?;
        match iv.sign() {
            Some(s) => Ok(s),
            None => Err(NumError::PrecisionExhausted(
                prec,
                "sign of nonzero algebraic number".into(),
            )),
        }
    }
}

/// 2x2 matrix over K(r); all group matrices have exact determinant one.
#[derive(Clone, Debug)]
pub struct ExactMat {
    pub e: [[AlgNum; 2]; 2],
}

impl ExactMat {
    pub fn ctx(&self) -> &Arc<NumField> {
        self.e[0][0].ctx()
    }

    /// Matrix with rational entries (numerator, denominator); determinant is
    /// the caller's responsibility.
    pub fn from_ratios(ctx: &Arc<NumField>, e: [[(i64, i64); 2]; 2]) -> ExactMat {
        let f = |(n, d)| AlgNum::from_ratio(ctx, n, d);
        ExactMat {
            e: [[f(e[0][0]), f(e[0][1])], [f(e[1][0]), f(e[1][1])]],
        }
    }

    pub fn mul(&self, o: &ExactMat) -> ExactMat {
        let f = |i: usize, j: usize| {
            self.e[i][0]
                .mul(&o.e[0][j])
                .add(&self.e[i][1].mul(&o.e[1][j]))
        };
        ExactMat {
            e: [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]],
        }
    }

    pub fn det(&self) -> AlgNum {
        self.e[0][0]
            .mul(&self.e[1][1])
            .sub(&self.e[0][1].mul(&self.e[1][0]))
    }

    pub fn trace(&self) -> AlgNum {
        self.e[0][0].add(&self.e[1][1])
    }

    /// Inverse by adjugate; valid because determinant is exactly one.
    pub fn inverse(&self) -> ExactMat {
        let ctx = &self.e[0][0].re.ctx;
        debug_assert!(self.det().sub(&AlgNum::from_int(ctx, 1)).is_zero());
        ExactMat {
            e: [
                [self.e[1][1].clone(), self.e[0][1].neg()],
                [self.e[1][0].neg(), self.e[0][0].clone()],
            ],
        }
    }

    pub fn equals(&self, o: &ExactMat) -> bool {
        (0..2).all(|i| (0..2).all(|j| self.e[i][j].equals(&o.e[i][j])))
    }

    pub fn is_identity(&self) -> bool {
        let ctx = &self.e[0][0].re.ctx;
        self.equals(&ctx.identity())
    }

    pub fn is_neg_identity(&self) -> bool {
        let ctx = &self.e[0][0].re.ctx;
        let one = AlgNum::from_int(ctx, 1);
        self.e[0][0].add(&one).is_zero()
            && self.e[1][1].add(&one).is_zero()
            && self.e[0][1].is_zero()
            && self.e[1][0].is_zero()
    }

    pub fn eval(&self, prec: Prec) -> Result<[[Ival; 2]; 2], NumError> {
        Ok([
            [self.e[0][0].eval(prec)?, self.e[0][1].eval(prec)?],
            [self.e[1][0].eval(prec)?, self.e[1][1].eval(prec)?],
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn minpoly_small_genus() {
        // cos(pi/8): x^4 - x^2 + 1/8; cos(pi/12): x^4 - x^2 + 1/16.
        let m8 = minpoly_cos(8);
        assert_eq!(
            m8.co,
            vec![rat(1, 8), rat(0, 1), rat(-1, 1), rat(0, 1), rat(1, 1)]
        );
        let m12 = minpoly_cos(12);
        assert_eq!(
            m12.co,
            vec![rat(1, 16), rat(0, 1), rat(-1, 1), rat(0, 1), rat(1, 1)]
        );
    }

    #[test]
    fn sine_collapse_is_pythagorean() {
        for genus in [2u32, 3, 4] {
            let f = NumField::new(genus);
            let s = f.sin_k(1);
            let c = f.cos_k(1);
            let one = f.elem(PolyQ::one());
            assert!(s.mul(&s).add(&c.mul(&c)).sub(&one).is_zero());
            // s * s_inv = 1 closes the denominator bookkeeping.
            let si = f.elem(f.s_inv.clone());
            assert!(s.mul(&si).sub(&one).is_zero());
        }
    }

    #[test]
    fn compact_relator_is_identity() {
        for genus in [2u32, 3] {
            let f = NumField::new(genus);
            let letters = f.letter_matrices(Polygon::Compact);
            let mut m = f.identity();
            for i in 0..genus as usize {
                let a = &letters[2 * i];
                let b = &letters[2 * i + 1];
                m = m.mul(a).mul(b).mul(&a.inverse()).mul(&b.inverse());
            }
            assert!(m.is_identity(), "genus {genus} commutator product");
        }
    }

    #[test]
    fn ideal_relator_is_parabolic() {
        let f = NumField::new(2);
        let letters = f.letter_matrices(Polygon::Ideal);
        let mut m = f.identity();
        for i in 0..2 {
            let a = &letters[2 * i];
            let b = &letters[2 * i + 1];
            m = m.mul(a).mul(b).mul(&a.inverse()).mul(&b.inverse());
        }
        let tr = m.trace();
        assert!(tr.add(&AlgNum::from_int(&f, 2)).is_zero(), "trace -2");
        assert!(!m.is_identity() && !m.is_neg_identity());
    }

    #[test]
    fn determinants_and_inverses() {
        let f = NumField::new(2);
        for poly in [Polygon::Compact, Polygon::Ideal] {
            for l in f.letter_matrices(poly) {
                assert!(l.det().sub(&AlgNum::from_int(&f, 1)).is_zero());
                assert!(l.mul(&l.inverse()).is_identity());
            }
        }
    }

    #[test]
    fn first_letter_trace_constant() {
        // Genus 2: trace(a1) = 4 cos^2(pi/8), and (tr - 2)^2 = 2 exactly.
        let f = NumField::new(2);
        let a1 = &f.letter_matrices(Polygon::Compact)[0];
        let d = a1.trace().sub(&AlgNum::from_int(&f, 2));
        assert!(d.mul(&d).sub(&AlgNum::from_int(&f, 2)).is_zero());
    }

    #[test]
    fn interval_views_bracket_exact_values() {
        let f = NumField::new(2);
        let a1 = &f.letter_matrices(Polygon::Compact)[0];
        let tr = a1.trace().eval(96).unwrap();
        // tr - 2 is positive with square 2.
        let d = tr.sub(&Ival::from_int(2), 96);
        assert_eq!(d.sign(), Some(1));
        assert!(d.mul(&d, 96).contains_int(2));
        let det = a1.det().eval(96).unwrap();
        assert!(det.contains_int(1));
        // Sign certification at modest precision.
        assert_eq!(a1.trace().sub(&AlgNum::from_int(&f, 2)).sign(64).unwrap(), 1);
    }
}
