//! Coefficient domains.
//!
//! Every algebraic routine in this crate is generic over a coefficient
//! domain, expressed by the [`Ring`] and [`Field`] traits. Two scalar
//! domains are provided:
//!
//! * [`Rat`]: arbitrary-precision rationals. Exact; used for all identity
//!   tests and anywhere a statement is supposed to hold on the nose.
//! * [`Cplx`]: arbitrary-precision complex floats (MPFR/MPC backed,
//!   mantissa >= 128 bits by default). Used on paths that depend on
//!   numerically computed Bethe roots.
//!
//! Mixing domains is a type error by construction. Laurent polynomials
//! ([`crate::poly::MultiPoly`]) form a third, purely structural domain on
//! top of these.

use rug::ops::Pow;
use rug::{Complex, Float, Rational};
use std::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Default mantissa precision in bits for [`Cplx`] values.
pub const DEFAULT_PREC: u32 = 128;

/// A commutative ring with 1 that is also a Q-algebra (division by a
/// nonzero integer is always possible). All coefficient domains used in
/// this crate satisfy this.
pub trait Ring:
    Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Exact division by a nonzero integer.
    ///
    /// Panics if `n == 0`.
    fn div_int(&self, n: i64) -> Self;

    /// Nonnegative integer power by binary exponentiation.
    fn pow_u(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// A field, with enough metric structure to drive pivoting and tolerance
/// decisions.
pub trait Field: Ring {
    /// True for domains in which equality is decidable on the nose.
    const EXACT: bool;

    /// Multiplicative inverse. Panics on zero; callers guard.
    fn inv(&self) -> Self;

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    /// Magnitude as `f64`, used for pivot selection and verdict reporting.
    fn abs_f64(&self) -> f64;

    /// Relative equality tolerance of this value's domain: `0.0` in exact
    /// domains, `2^-(precision_bits - 24)` for floats (24 bits of headroom
    /// for accumulated rounding).
    fn rel_eps(&self) -> f64;

    /// Integer power, negative exponents via the inverse.
    fn pow_i(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow_u(e as u32)
        } else {
            self.inv().pow_u((-e) as u32)
        }
    }

    /// Equality up to the domain tolerance: exact `==` for exact domains,
    /// `|a - b| <= rel_eps * max(|a|, |b|)` for floats.
    fn approx_eq(&self, rhs: &Self) -> bool;

    /// `|self| <= rel_eps * scale`, with `scale` a caller-provided magnitude;
    /// exact domains test `is_zero` regardless of scale.
    fn approx_zero(&self, scale: f64) -> bool;
}

// ---------------------------------------------------------------------------
// Exact rationals
// ---------------------------------------------------------------------------

/// Arbitrary-precision rational scalar.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(pub Rational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(Rational::from((num, den)))
    }

    /// Parses `"p"`, `"p/q"` or a plain decimal such as `"-3.25"` exactly.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Ok(r) = s.parse::<Rational>() {
            return Some(Rat(r));
        }
        // Decimal form: scale the fractional part by a power of ten.
        let (sign, body) = match s.strip_prefix('-') {
            Some(rest) => (-1i64, rest),
            None => (1i64, s),
        };
        let (int_part, frac_part) = body.split_once('.')?;
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let int_part = if int_part.is_empty() { "0" } else { int_part };
        let digits = format!("{int_part}{frac_part}");
        let num = digits.parse::<rug::Integer>().ok()?;
        let den = rug::Integer::from(10).pow(frac_part.len() as u32);
        Some(Rat(Rational::from((num, den)) * Rational::from(sign)))
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Ring for Rat {
    fn zero() -> Self {
        Rat(Rational::new())
    }
    fn one() -> Self {
        Rat(Rational::from(1))
    }
    fn from_i64(n: i64) -> Self {
        Rat(Rational::from(n))
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        Rat(Rational::from(&self.0 + &rhs.0))
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rat(Rational::from(&self.0 - &rhs.0))
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rat(Rational::from(&self.0 * &rhs.0))
    }
    fn neg(&self) -> Self {
        Rat(Rational::from(-&self.0))
    }
    fn div_int(&self, n: i64) -> Self {
        assert!(n != 0, "division by zero integer");
        Rat(Rational::from(&self.0 / Rational::from(n)))
    }
}

impl Field for Rat {
    const EXACT: bool = true;

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Rat(Rational::from(self.0.recip_ref()))
    }
    fn abs_f64(&self) -> f64 {
        self.0.to_f64().abs()
    }
    fn rel_eps(&self) -> f64 {
        0.0
    }
    fn approx_eq(&self, rhs: &Self) -> bool {
        self == rhs
    }
    fn approx_zero(&self, _scale: f64) -> bool {
        self.is_zero()
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0).into())
            }
        }
    };
}
rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);
rat_binop!(Div, div);

impl std::ops::Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Ring::neg(self)
    }
}

// ---------------------------------------------------------------------------
// Arbitrary-precision complex floats
// ---------------------------------------------------------------------------

/// Complex scalar with configurable mantissa precision.
///
/// Invariants: real and imaginary parts carry the same precision; binary
/// operations produce results at the larger of the two operand precisions,
/// so precision propagates deterministically through any expression.
#[derive(Clone, PartialEq)]
pub struct Cplx(pub Complex);

impl Cplx {
    pub fn zero_with(prec: u32) -> Self {
        Cplx(Complex::new(prec))
    }

    pub fn with_val_i64(prec: u32, n: i64) -> Self {
        Cplx(Complex::with_val(prec, n))
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Cplx(Complex::with_val(prec, (re, im)))
    }

    pub fn from_parts(re: Float, im: Float) -> Self {
        let prec = re.prec().max(im.prec());
        Cplx(Complex::with_val(prec, (re, im)))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec().0
    }

    /// Rounds (or extends) to the given precision.
    pub fn to_prec(&self, prec: u32) -> Self {
        Cplx(Complex::with_val(prec, &self.0))
    }

    pub fn re(&self) -> &Float {
        self.0.real()
    }

    pub fn im(&self) -> &Float {
        self.0.imag()
    }

    /// Modulus as a `Float` at this value's precision.
    pub fn abs_float(&self) -> Float {
        Float::with_val(self.prec(), self.0.abs_ref())
    }

    pub fn conj(&self) -> Self {
        Cplx(Complex::with_val(self.prec(), self.0.conj_ref()))
    }

    pub fn exp(&self) -> Self {
        Cplx(Complex::with_val(self.prec(), self.0.exp_ref()))
    }

    /// Principal branch of the logarithm.
    pub fn ln(&self) -> Self {
        Cplx(Complex::with_val(self.prec(), self.0.ln_ref()))
    }

    pub fn scale_i64(&self, n: i64) -> Self {
        Cplx(Complex::with_val(self.prec(), &self.0 * n))
    }

    /// Parses `"a"`, `"bi"`, `"a+bi"`, `"a-bi"` with decimal parts.
    pub fn parse(s: &str, prec: u32) -> Option<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return None;
        }
        let parse_float = |t: &str| -> Option<Float> {
            let t = if t.is_empty() || t == "+" {
                "1"
            } else if t == "-" {
                "-1"
            } else {
                t
            };
            Float::parse(t).ok().map(|i| Float::with_val(prec, i))
        };
        if let Some(body) = s.strip_suffix('i') {
            // Split into real part and imaginary coefficient at the last
            // sign that is not a leading sign or part of an exponent.
            let bytes = body.as_bytes();
            let mut split = None;
            for k in (1..bytes.len()).rev() {
                let c = bytes[k];
                if (c == b'+' || c == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                    split = Some(k);
                    break;
                }
            }
            match split {
                Some(k) => {
                    let re = parse_float(&body[..k])?;
                    let im = parse_float(&body[k..])?;
                    Some(Cplx(Complex::with_val(prec, (re, im))))
                }
                None => {
                    let im = parse_float(body)?;
                    Some(Cplx(Complex::with_val(prec, (Float::with_val(prec, 0), im))))
                }
            }
        } else {
            let re = parse_float(&s)?;
            Some(Cplx(Complex::with_val(prec, re)))
        }
    }
}

impl fmt::Debug for Cplx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Cplx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! cplx_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<&Cplx> for &Cplx {
            type Output = Cplx;
            fn $method(self, rhs: &Cplx) -> Cplx {
                let prec = self.prec().max(rhs.prec());
                Cplx(Complex::with_val(prec, (&self.0).$method(&rhs.0)))
            }
        }
    };
}
cplx_binop!(Add, add);
cplx_binop!(Sub, sub);
cplx_binop!(Mul, mul);
cplx_binop!(Div, div);

impl std::ops::Neg for &Cplx {
    type Output = Cplx;
    fn neg(self) -> Cplx {
        Cplx(Complex::with_val(self.prec(), -&self.0))
    }
}

impl Ring for Cplx {
    fn zero() -> Self {
        Cplx(Complex::new(DEFAULT_PREC))
    }
    fn one() -> Self {
        Cplx(Complex::with_val(DEFAULT_PREC, 1))
    }
    fn from_i64(n: i64) -> Self {
        Cplx(Complex::with_val(DEFAULT_PREC, n))
    }
    fn is_zero(&self) -> bool {
        self.0.real().is_zero() && self.0.imag().is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_int(&self, n: i64) -> Self {
        assert!(n != 0, "division by zero integer");
        Cplx(Complex::with_val(self.prec(), &self.0 / Complex::with_val(self.prec(), n)))
    }
}

impl Field for Cplx {
    const EXACT: bool = false;

    fn inv(&self) -> Self {
        Cplx(Complex::with_val(self.prec(), self.0.recip_ref()))
    }
    fn abs_f64(&self) -> f64 {
        self.abs_float().to_f64()
    }
    fn rel_eps(&self) -> f64 {
        let prec = self.prec();
        2f64.powi(-(prec.saturating_sub(24) as i32))
    }
    fn approx_eq(&self, rhs: &Self) -> bool {
        let prec = self.prec().min(rhs.prec());
        let diff = (self - rhs).abs_float();
        if diff.is_zero() {
            return true;
        }
        let sa = self.abs_float();
        let sb = rhs.abs_float();
        let scale = if sa > sb { sa } else { sb };
        let eps = Float::with_val(64, 1) >> prec.saturating_sub(24);
        diff <= eps * scale
    }
    fn approx_zero(&self, scale: f64) -> bool {
        if self.is_zero() {
            return true;
        }
        let eps = Float::with_val(64, 1) >> self.prec().saturating_sub(24);
        self.abs_float() <= eps * Float::with_val(64, scale)
    }
}

/// `e^u - e^{-u}`, the trigonometric bracket in additive variables.
pub fn bracket(u: &Cplx) -> Cplx {
    let eu = u.exp();
    let inv = eu.inv();
    &eu - &inv
}

// ---------------------------------------------------------------------------
// Deterministic random scalars for tests and perturbations
// ---------------------------------------------------------------------------

/// Seeded deterministic generator used everywhere randomness is needed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in `[0, 1)`.
pub fn rng_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// Uniform integer in `[lo, hi]` (inclusive).
pub fn rng_i64(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    assert!(lo <= hi);
    let span = (hi - lo) as u64 + 1;
    lo + (rng.next_u64() % span) as i64
}

/// Random rational with numerator in `[-bound, bound]` and denominator in
/// `[1, bound]`.
pub fn random_rat(rng: &mut ChaCha8Rng, bound: i64) -> Rat {
    Rat::new(rng_i64(rng, -bound, bound), rng_i64(rng, 1, bound))
}

/// Random nonzero rational.
pub fn random_rat_nonzero(rng: &mut ChaCha8Rng, bound: i64) -> Rat {
    loop {
        let r = random_rat(rng, bound);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Random complex value with modulus in `[0.5, 1.5]` and uniform phase.
pub fn random_cplx(rng: &mut ChaCha8Rng, prec: u32) -> Cplx {
    let r = 0.5 + rng_f64(rng);
    let phi = 2.0 * std::f64::consts::PI * rng_f64(rng);
    Cplx::from_f64(prec, r * phi.cos(), r * phi.sin())
}
