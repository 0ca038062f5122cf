//! Dyadic interval arithmetic with outward rounding.
//!
//! A `Dyadic` is an exact value m * 2^e with arbitrary-precision mantissa; an
//! `Ival` is a closed interval [lo, hi] of dyadics containing the true real.
//! Every operation rounds outward at a caller-supplied working precision, so
//! any certified sign or comparison is sound regardless of precision; higher
//! precision only shrinks intervals.  Transcendental constants (pi, sine and
//! cosine of rational multiples of pi) are produced as bracketing intervals
//! from integer fixed-point series with explicit slop accounting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::sync::Mutex;
use std::sync::OnceLock;

/// Working precision in mantissa bits.
pub type Prec = u32;

/// Guard bits added internally to series evaluations.
const GUARD: u32 = 32;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum NumError {
    #[error("precision exhausted at {0} bits: {1}")]
    PrecisionExhausted(Prec, String),
    #[error("interval division by interval containing zero")]
    DivByZero,
    #[error("square root of interval with negative lower bound")]
    NegativeSqrt,
    #[error("invalid operand: {0}")]
    Invalid(String),
}

/// Exact dyadic rational m * 2^e.  Zero is canonically (0, 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    Down,
    Up,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic { mant: BigInt::from(n), exp: 0 }
    }

    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        // strip trailing zero bits when plentiful, keeping mantissas small
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz >= 32 {
            self.mant = &self.mant >> tz;
            self.exp += tz as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> i8 {
        if self.mant.is_zero() {
            0
        } else if self.mant.is_positive() {
            1
        } else {
            -1
        }
    }

    fn bits(&self) -> u64 {
        self.mant.magnitude().bits()
    }

    fn add_exact(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &o.mant << (o.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    fn neg(&self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    fn sub_exact(&self, o: &Dyadic) -> Dyadic {
        self.add_exact(&o.neg())
    }

    fn mul_exact(&self, o: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &o.mant, self.exp + o.exp)
    }

    /// Directed rounding to at most `prec` mantissa bits.
    fn round(&self, prec: Prec, dir: Dir) -> Dyadic {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = (bits - prec as u64) as i64;
        // BigInt shr rounds toward -inf (floor)
        let q = &self.mant >> shift as u64;
        let back = &q << shift as u64;
        let exact = back == self.mant;
        let q = match dir {
            Dir::Down => q,
            Dir::Up => {
                if exact {
                    q
                } else {
                    q + 1
                }
            }
        };
        Dyadic::new(q, self.exp + shift)
    }

    fn div_dir(&self, o: &Dyadic, prec: Prec, dir: Dir) -> Dyadic {
        assert!(!o.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // scale numerator so the quotient keeps prec+GUARD significant bits
        let scale = (prec as u64 + GUARD as u64 + o.bits()).saturating_sub(self.bits()) as i64 + 1;
        let scale = scale.max(0);
        let num = &self.mant << scale as u64;
        let (q, r) = num.div_rem(&o.mant);
        let exact = r.is_zero();
        let q = match dir {
            Dir::Down => {
                // BigInt div_rem truncates toward zero; fix negatives to floor
                if !exact && q.is_negative() || (!exact && q.is_zero() && (self.sign() as i64 * o.sign() as i64) < 0) {
                    q - 1
                } else {
                    q
                }
            }
            Dir::Up => {
                if !exact && (q.is_positive() || q.is_zero() && (self.sign() as i64 * o.sign() as i64) > 0) {
                    q + 1
                } else {
                    q
                }
            }
        };
        Dyadic::new(q, self.exp - o.exp - scale)
    }

    /// Floor of sqrt (dir Down) or ceiling-to-1ulp (dir Up), at ~prec bits.
    fn sqrt_dir(&self, prec: Prec, dir: Dir) -> Dyadic {
        assert!(self.sign() >= 0);
        if self.is_zero() {
            return Dyadic::zero();
        }
        // scale to even exponent with >= 2*(prec+GUARD) mantissa bits
        let want = 2 * (prec as u64 + GUARD as u64);
        let have = self.bits();
        let mut shift = want.saturating_sub(have) as i64;
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m = &self.mant << shift as u64;
        let root = m.sqrt();
        let exact = &root * &root == m;
        let root = match dir {
            Dir::Down => root,
            Dir::Up => {
                if exact {
                    root
                } else {
                    root + 1
                }
            }
        };
        Dyadic::new(root, (self.exp - shift) / 2)
    }

    pub fn cmp_val(&self, o: &Dyadic) -> std::cmp::Ordering {
        self.sub_exact(o).mant.cmp(&BigInt::zero())
    }

    /// Approximate f64 value (for rendering only, never for decisions).
    pub fn to_f64(&self) -> f64 {
        let bits = self.bits();
        if bits == 0 {
            return 0.0;
        }
        let (m, e) = if bits > 64 {
            let s = bits - 64;
            (&self.mant >> s, self.exp + s as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let m: f64 = m.to_string().parse().unwrap_or(0.0);
        m * 2f64.powi(e as i32)
    }

    /// Exact decimal string with `places` fractional digits, rounding toward
    /// negative infinity.  Deterministic across platforms.
    pub fn to_decimal(&self, places: u32) -> String {
        let ten_p = BigInt::from(10u32).pow(places);
        let scaled = &self.mant * &ten_p;
        let shifted = if self.exp >= 0 {
            scaled << self.exp as u64
        } else {
            scaled >> (-self.exp) as u64 // floor
        };
        let neg = shifted.is_negative();
        let mag = shifted.magnitude().clone();
        let s = mag.to_string();
        let s = if s.len() <= places as usize {
            format!("0.{}{}", "0".repeat(places as usize - s.len()), s)
        } else {
            let (int, frac) = s.split_at(s.len() - places as usize);
            if places == 0 {
                int.to_string()
            } else {
                format!("{int}.{frac}")
            }
        };
        if neg {
            format!("-{s}")
        } else {
            s
        }
    }
}

/// Closed interval [lo, hi] of dyadics; invariant lo <= hi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ival {
    lo: Dyadic,
    hi: Dyadic,
}

impl Ival {
    pub fn point(d: Dyadic) -> Self {
        Ival { lo: d.clone(), hi: d }
    }

    pub fn from_int(n: i64) -> Self {
        Ival::point(Dyadic::from_int(n))
    }

    pub fn zero() -> Self {
        Ival::point(Dyadic::zero())
    }

    pub fn one() -> Self {
        Ival::from_int(1)
    }

    pub fn make(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo.cmp_val(&hi) != std::cmp::Ordering::Greater);
        Ival { lo, hi }
    }

    /// Exact rational p/q rounded outward at prec.
    pub fn from_ratio(p: i64, q: i64, prec: Prec) -> Self {
        Ival::from_big_ratio(&BigInt::from(p), &BigInt::from(q), prec)
    }

    /// Exact rational p/q with big components, rounded outward at prec.
    pub fn from_big_ratio(p: &BigInt, q: &BigInt, prec: Prec) -> Self {
        assert!(!q.is_zero());
        let (p, q) = if q.is_negative() {
            (-p.clone(), -q.clone())
        } else {
            (p.clone(), q.clone())
        };
        let n = Dyadic::new(p, 0);
        let d = Dyadic::new(q, 0);
        Ival {
            lo: n.div_dir(&d, prec, Dir::Down),
            hi: n.div_dir(&d, prec, Dir::Up),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn add(&self, o: &Ival, prec: Prec) -> Ival {
        Ival {
            lo: self.lo.add_exact(&o.lo).round(prec, Dir::Down),
            hi: self.hi.add_exact(&o.hi).round(prec, Dir::Up),
        }
    }

    pub fn sub(&self, o: &Ival, prec: Prec) -> Ival {
        Ival {
            lo: self.lo.sub_exact(&o.hi).round(prec, Dir::Down),
            hi: self.hi.sub_exact(&o.lo).round(prec, Dir::Up),
        }
    }

    pub fn neg(&self) -> Ival {
        Ival { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn mul(&self, o: &Ival, prec: Prec) -> Ival {
        let c = [
            self.lo.mul_exact(&o.lo),
            self.lo.mul_exact(&o.hi),
            self.hi.mul_exact(&o.lo),
            self.hi.mul_exact(&o.hi),
        ];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if v.cmp_val(&lo) == std::cmp::Ordering::Less {
                lo = v.clone();
            }
            if v.cmp_val(&hi) == std::cmp::Ordering::Greater {
                hi = v.clone();
            }
        }
        Ival { lo: lo.round(prec, Dir::Down), hi: hi.round(prec, Dir::Up) }
    }

    pub fn mul_int(&self, k: i64, prec: Prec) -> Ival {
        self.mul(&Ival::from_int(k), prec)
    }

    pub fn div(&self, o: &Ival, prec: Prec) -> Result<Ival, NumError> {
        let s = o.sign();
        match s {
            Some(s) if s != 0 => {
                let c = [
                    self.lo.div_dir(&o.lo, prec, Dir::Down),
                    self.lo.div_dir(&o.hi, prec, Dir::Down),
                    self.hi.div_dir(&o.lo, prec, Dir::Down),
                    self.hi.div_dir(&o.hi, prec, Dir::Down),
                ];
                let cu = [
                    self.lo.div_dir(&o.lo, prec, Dir::Up),
                    self.lo.div_dir(&o.hi, prec, Dir::Up),
                    self.hi.div_dir(&o.lo, prec, Dir::Up),
                    self.hi.div_dir(&o.hi, prec, Dir::Up),
                ];
                let mut lo = c[0].clone();
                for v in &c[1..] {
                    if v.cmp_val(&lo) == std::cmp::Ordering::Less {
                        lo = v.clone();
                    }
                }
                let mut hi = cu[0].clone();
                for v in &cu[1..] {
                    if v.cmp_val(&hi) == std::cmp::Ordering::Greater {
                        hi = v.clone();
                    }
                }
                Ok(Ival { lo, hi })
            }
            _ => Err(NumError::DivByZero),
        }
    }

    pub fn sqrt(&self, prec: Prec) -> Result<Ival, NumError> {
        if self.lo.sign() < 0 {
            return Err(NumError::NegativeSqrt);
        }
        Ok(Ival {
            lo: self.lo.sqrt_dir(prec, Dir::Down),
            hi: self.hi.sqrt_dir(prec, Dir::Up),
        })
    }

    /// Certified sign: Some(+1/-1/0) or None when the interval straddles zero.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.sign() > 0 {
            Some(1)
        } else if self.hi.sign() < 0 {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.sign() <= 0 && self.hi.sign() >= 0
    }

    pub fn contains_int(&self, n: i64) -> bool {
        let d = Dyadic::from_int(n);
        self.lo.cmp_val(&d) != std::cmp::Ordering::Greater
            && self.hi.cmp_val(&d) != std::cmp::Ordering::Less
    }

    /// self < o certified.
    pub fn lt_certain(&self, o: &Ival) -> bool {
        self.hi.cmp_val(&o.lo) == std::cmp::Ordering::Less
    }

    pub fn gt_certain(&self, o: &Ival) -> bool {
        o.lt_certain(self)
    }

    /// Intervals are disjoint (so the underlying reals certifiably differ).
    pub fn separated_from(&self, o: &Ival) -> bool {
        self.lt_certain(o) || self.gt_certain(o)
    }

    pub fn abs(&self) -> Ival {
        if self.lo.sign() >= 0 {
            self.clone()
        } else if self.hi.sign() <= 0 {
            self.neg()
        } else {
            let m = if self.lo.neg().cmp_val(&self.hi) == std::cmp::Ordering::Greater {
                self.lo.neg()
            } else {
                self.hi.clone()
            };
            Ival { lo: Dyadic::zero(), hi: m }
        }
    }

    /// Width as an upper-bound dyadic.
    pub fn width(&self) -> Dyadic {
        self.hi.sub_exact(&self.lo)
    }

    pub fn mid_f64(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add_exact(&self.hi).div_dir(&Dyadic::from_int(2), 4096, Dir::Down)
    }

    /// Conservative f64 enclosure of this interval. The radius inflation
    /// covers the midpoint and width conversions; Ball ops keep inflating,
    /// so a certified Ball sign is a certified interval sign.
    pub fn ball(&self) -> Ball {
        let c = self.mid_f64();
        let w = self.width().to_f64();
        Ball {
            c,
            r: (0.5 * w + (c.abs() + w) * 1e-15) * (1.0 + 1e-12) + f64::MIN_POSITIVE,
        }
    }
}

/// Midpoint/radius enclosure in f64, used as a fast prefilter for sign
/// decisions. Every operation widens the radius by a relative slop far
/// above accumulated f64 rounding; an uncertified sign (None) means the
/// caller must fall back to interval arithmetic, never that an answer is
/// wrong.
#[derive(Clone, Copy, Debug)]
pub struct Ball {
    pub c: f64,
    pub r: f64,
}

const BALL_SLOP: f64 = 1e-13;

impl Ball {
    pub fn mul(self, o: Ball) -> Ball {
        let c = self.c * o.c;
        Ball {
            c,
            r: self.c.abs() * o.r
                + o.c.abs() * self.r
                + self.r * o.r
                + c.abs() * BALL_SLOP
                + f64::MIN_POSITIVE,
        }
    }

    pub fn sub(self, o: Ball) -> Ball {
        Ball {
            c: self.c - o.c,
            r: self.r + o.r + (self.c.abs() + o.c.abs()) * BALL_SLOP + f64::MIN_POSITIVE,
        }
    }

    pub fn sign(self) -> Option<i8> {
        if !self.c.is_finite() || !self.r.is_finite() {
            return None;
        }
        if self.c > self.r {
            Some(1)
        } else if self.c < -self.r {
            Some(-1)
        } else {
            None
        }
    }
}

fn fixed_atan_inv_scaled(x: i64, scale_bits: u32) -> (BigInt, BigInt) {
    // (lower, upper) integer bounds of atan(1/x) * 2^scale_bits
    let scale = BigInt::one() << scale_bits;
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut term = scale / BigInt::from(x); // floor; slop counted below
    let mut sum_lo = BigInt::zero();
    let mut sum_hi = BigInt::zero();
    let mut k: u64 = 0;
    let mut steps: u64 = 0;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum_lo += &t;
            sum_hi += &t;
        } else {
            sum_lo -= &t;
            sum_hi -= &t;
        }
        term = &term / &x2;
        k += 1;
        steps += 1;
    }
    // alternating truncation error bounded by one ulp of the last term (<1),
    // each floor division loses < 1: total slop < 2*steps + 2
    let slop = BigInt::from(2 * steps + 2);
    (sum_lo - &slop, sum_hi + slop)
}

static PI_CACHE: OnceLock<Mutex<BTreeMap<Prec, Ival>>> = OnceLock::new();

/// Bracketing interval for pi at the given precision.
pub fn pi(prec: Prec) -> Ival {
    let cache = PI_CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&prec) {
        return v.clone();
    }
    let sb = prec + GUARD;
    let (l5, u5) = fixed_atan_inv_scaled(5, sb);
    let (l239, u239) = fixed_atan_inv_scaled(239, sb);
    let lo = BigInt::from(16) * l5 - BigInt::from(4) * u239;
    let hi = BigInt::from(16) * u5 - BigInt::from(4) * l239;
    let v = Ival {
        lo: Dyadic::new(lo, -(sb as i64)).round(prec + GUARD, Dir::Down),
        hi: Dyadic::new(hi, -(sb as i64)).round(prec + GUARD, Dir::Up),
    };
    cache.lock().unwrap().insert(prec, v.clone());
    v
}

fn cos_series_fixed(t_lo: &BigInt, t_hi: &BigInt, sb: u32, sine: bool) -> (BigInt, BigInt) {
    // bounds for cos(t) (or sin) * 2^sb given integer brackets of t * 2^sb,
    // 0 <= t <= 0.8; monotone: cos decreasing, sin increasing on [0, 0.8]
    let eval = |t: &BigInt, _dir: Dir| -> (BigInt, BigInt) {
        // returns (lo, hi) of the series at exact argument t/2^sb
        let t2 = t * t; // scaled 2^(2sb)
        // term t^num/num!, scaled 2^sb; cos starts at 1, sin at t
        let (mut term, mut num) = if sine {
            (t.clone(), 1u64)
        } else {
            (BigInt::one() << sb, 0u64)
        };
        let mut sum_lo = BigInt::zero();
        let mut sum_hi = BigInt::zero();
        let mut steps = 0u64;
        while !term.is_zero() {
            if steps % 2 == 0 {
                sum_lo += &term;
                sum_hi += &term;
            } else {
                sum_lo -= &term;
                sum_hi -= &term;
            }
            // next term = term * t^2 / ((num+1)(num+2))
            term = (&term * &t2) >> (2 * sb as u64);
            term = &term / BigInt::from((num + 1) * (num + 2));
            num += 2;
            steps += 1;
            if steps > 10_000 {
                break;
            }
        }
        let slop = BigInt::from(3 * steps + 3);
        (sum_lo - &slop, sum_hi + slop)
    };
    if sine {
        // increasing: lower at t_lo, upper at t_hi
        let (l, _) = eval(t_lo, Dir::Down);
        let (_, u) = eval(t_hi, Dir::Up);
        (l, u)
    } else {
        // decreasing: lower at t_hi, upper at t_lo
        let (l, _) = eval(t_hi, Dir::Down);
        let (_, u) = eval(t_lo, Dir::Up);
        (l, u)
    }
}

static TRIG_CACHE: OnceLock<Mutex<BTreeMap<(i64, i64, Prec), (Ival, Ival)>>> = OnceLock::new();

/// (cos, sin) of pi * num/den as bracketing intervals.
pub fn trig_pi(num: i64, den: i64, prec: Prec) -> (Ival, Ival) {
    assert!(den != 0);
    let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
    n = n.rem_euclid(2 * d); // angle in [0, 2pi)
    let g = gcd_i64(n, d);
    if g > 1 {
        n /= g;
        d /= g;
    }
    let key = (n, d, prec);
    let cache = TRIG_CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = trig_pi_uncached(n, d, prec);
    cache.lock().unwrap().insert(key, v.clone());
    v
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

fn trig_pi_uncached(n: i64, d: i64, prec: Prec) -> (Ival, Ival) {
    // a = n/d in [0,2); reduce to [0,1) by a half turn
    let (n, neg) = if n >= d { (n - d, true) } else { (n, false) };
    // a in [0,1); a > 1/2 reduces by a quarter turn: (c,s) = (-s', c')
    let (c, s) = if 2 * n > d {
        let (c2, s2) = trig_half(2 * n - d, 2 * d, prec);
        (s2.neg(), c2)
    } else {
        trig_half(2 * n, 2 * d, prec)
    };
    if neg {
        (c.neg(), s.neg())
    } else {
        (c, s)
    }
}

fn trig_half(n: i64, d: i64, prec: Prec) -> (Ival, Ival) {
    // a = n/d in [0, 1/2]; a > 1/4 reflects: cos(a) = sin(1/2 - a)
    if 4 * n > d {
        let (c, s) = trig_quarter(d - 2 * n, 2 * d, prec);
        (s, c)
    } else {
        trig_quarter(n, d, prec)
    }
}

fn trig_quarter(num: i64, den: i64, prec: Prec) -> (Ival, Ival) {
    // cos/sin of pi*num/den with num/den <= 1/4 (argument <= pi/4 < 0.8)
    debug_assert!(4 * num <= den + 3, "fold invariant: {num}/{den}");
    let sb = prec + GUARD;
    let p = pi(prec + GUARD);
    let t = p.mul(&Ival::from_ratio(num, den, sb).clone(), sb);
    // integer brackets of t * 2^sb
    let t_lo = dyadic_scale_floor(&t.lo, sb);
    let t_hi = dyadic_scale_ceil(&t.hi, sb);
    let (cl, ch) = cos_series_fixed(&t_lo, &t_hi, sb, false);
    let (sl, sh) = cos_series_fixed(&t_lo, &t_hi, sb, true);
    (
        Ival {
            lo: Dyadic::new(cl, -(sb as i64)),
            hi: Dyadic::new(ch, -(sb as i64)),
        },
        Ival {
            lo: Dyadic::new(sl, -(sb as i64)),
            hi: Dyadic::new(sh, -(sb as i64)),
        },
    )
}

fn dyadic_scale_floor(d: &Dyadic, sb: u32) -> BigInt {
    let sh = d.exp + sb as i64;
    if sh >= 0 {
        &d.mant << sh as u64
    } else {
        &d.mant >> (-sh) as u64
    }
}

fn dyadic_scale_ceil(d: &Dyadic, sb: u32) -> BigInt {
    let sh = d.exp + sb as i64;
    if sh >= 0 {
        &d.mant << sh as u64
    } else {
        let q = &d.mant >> (-sh) as u64;
        let back = &q << (-sh) as u64;
        if back == d.mant {
            q
        } else {
            q + 1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(iv: &Ival) -> f64 {
        iv.mid_f64()
    }

    #[test]
    fn dyadic_rounding_directions() {
        let d = Dyadic::new(BigInt::from(0b10110111), 0);
        let down = d.round(4, Dir::Down);
        let up = d.round(4, Dir::Up);
        assert!(down.cmp_val(&d) != std::cmp::Ordering::Greater);
        assert!(up.cmp_val(&d) != std::cmp::Ordering::Less);
        assert!(down.cmp_val(&up) == std::cmp::Ordering::Less);
        let neg = Dyadic::new(BigInt::from(-183), 0);
        let nd = neg.round(4, Dir::Down);
        let nu = neg.round(4, Dir::Up);
        assert!(nd.cmp_val(&neg) != std::cmp::Ordering::Greater);
        assert!(nu.cmp_val(&neg) != std::cmp::Ordering::Less);
    }

    #[test]
    fn interval_mul_signs() {
        let prec = 64;
        let a = Ival::make(Dyadic::from_int(-3), Dyadic::from_int(2));
        let b = Ival::make(Dyadic::from_int(-1), Dyadic::from_int(4));
        let p = a.mul(&b, prec);
        assert_eq!(p.lo.cmp_val(&Dyadic::from_int(-12)), std::cmp::Ordering::Equal);
        assert_eq!(p.hi.cmp_val(&Dyadic::from_int(8)), std::cmp::Ordering::Equal);
    }

    #[test]
    fn division_brackets() {
        let prec = 64;
        let a = Ival::from_int(1);
        let b = Ival::from_int(3);
        let q = a.div(&b, prec).unwrap();
        assert!(q.mul(&Ival::from_int(3), prec).contains_int(1));
        assert!(q.width().to_f64() < 1e-15);
        assert!(a.div(&Ival::make(Dyadic::from_int(-1), Dyadic::from_int(1)), prec).is_err());
    }

    #[test]
    fn sqrt_brackets() {
        let prec = 128;
        let two = Ival::from_int(2);
        let r = two.sqrt(prec).unwrap();
        let sq = r.mul(&r, prec);
        assert!(sq.contains_int(2));
        assert!((approx(&r) - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(Ival::from_int(-1).sqrt(prec).is_err());
    }

    #[test]
    fn pi_value() {
        for prec in [64u32, 128, 256] {
            let p = pi(prec);
            // 3.14159265 < pi < 355/113
            assert!(p.gt_certain(&Ival::from_ratio(314159265, 100000000, prec)));
            assert!(p.lt_certain(&Ival::from_ratio(355, 113, prec)));
            assert!(p.width().to_f64() < 2f64.powi(-(prec as i32) + 4));
        }
    }

    #[test]
    fn trig_octant_values() {
        let prec = 128;
        // cos(pi/3) = 1/2 exactly bracketed
        let (c, s) = trig_pi(1, 3, prec);
        assert!((approx(&c) - 0.5).abs() < 1e-20);
        assert!((approx(&s) - 0.75f64.sqrt()).abs() < 1e-12);
        // quadrant signs
        let (c, s) = trig_pi(5, 4, prec); // angle 225 deg
        assert!(c.sign() == Some(-1) && s.sign() == Some(-1));
        let (c, s) = trig_pi(7, 4, prec); // 315 deg
        assert!(c.sign() == Some(1) && s.sign() == Some(-1));
        // pythagorean identity contains 1
        for (n, d) in [(1i64, 8i64), (3, 8), (1, 5), (2, 7), (9, 5)] {
            let (c, s) = trig_pi(n, d, prec);
            let one = c.mul(&c, prec).add(&s.mul(&s, prec), prec);
            assert!(one.contains_int(1), "identity fails for {n}/{d}");
        }
    }

    #[test]
    fn trig_matches_f64() {
        let prec = 96;
        for n in 0..16i64 {
            let (c, s) = trig_pi(n, 8, prec);
            let t = std::f64::consts::PI * n as f64 / 8.0;
            assert!((approx(&c) - t.cos()).abs() < 1e-10, "cos pi*{n}/8");
            assert!((approx(&s) - t.sin()).abs() < 1e-10, "sin pi*{n}/8");
        }
    }

    #[test]
    fn decimal_rendering() {
        let d = Dyadic::new(BigInt::from(5), -2); // 1.25
        assert_eq!(d.to_decimal(4), "1.2500");
        let d = Dyadic::new(BigInt::from(-5), -2);
        assert_eq!(d.to_decimal(1), "-1.3"); // floor(-1.25 * 10)/10
        assert_eq!(Dyadic::zero().to_decimal(2), "0.00");
    }
}
