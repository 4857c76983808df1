//! High-precision real and complex arithmetic, and exact sums of roots of unity.
//!
//! Character values of the polyhedral groups live in cyclotomic fields. They are
//! stored exactly as [`RootSum`]s and evaluated on demand at a chosen
//! [`Precision`]. Everything that leaves the rationals (square roots of
//! `3 - chi_V`, tangents) is carried as a [`Real`] or [`Complex`].

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Working precision, counted in decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision {
    digits: u32,
}

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 64;

    pub fn digits(digits: u32) -> Self {
        Precision { digits: digits.max(16) }
    }

    pub fn decimal_digits(&self) -> u32 {
        self.digits
    }

    /// Mantissa bits, with a guard word on top of `digits * log2(10)`.
    pub fn bits(&self) -> usize {
        (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64
    }

    /// `10^-exponent` at this precision.
    pub fn epsilon(&self, exponent: u32) -> Real {
        Real::pow10_neg(exponent, *self)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::digits(Self::DEFAULT_DIGITS)
    }
}

/// A real number with an explicit mantissa precision.
#[derive(Clone)]
pub struct Real {
    v: BigFloat,
    p: usize,
}

impl Real {
    pub fn zero(prec: Precision) -> Self {
        Real::from_i64(0, prec)
    }

    pub fn one(prec: Precision) -> Self {
        Real::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: Precision) -> Self {
        let p = prec.bits();
        Real {
            v: BigFloat::from_i64(v, p),
            p,
        }
    }

    pub fn from_bigint(v: &BigInt, prec: Precision) -> Self {
        if let Some(small) = v.to_i64() {
            return Real::from_i64(small, prec);
        }
        let p = prec.bits();
        let v = with_consts(|cc| BigFloat::parse(&v.to_string(), Radix::Dec, p, RM, cc));
        Real { v, p }
    }

    pub fn from_ratio(r: &BigRational, prec: Precision) -> Self {
        Real::from_bigint(r.numer(), prec) / Real::from_bigint(r.denom(), prec)
    }

    pub fn from_small_ratio(r: Ratio<i64>, prec: Precision) -> Self {
        Real::from_i64(*r.numer(), prec) / Real::from_i64(*r.denom(), prec)
    }

    pub fn pi(prec: Precision) -> Self {
        let p = prec.bits();
        let v = with_consts(|cc| cc.pi(p, RM));
        Real { v, p }
    }

    fn pow10_neg(exponent: u32, prec: Precision) -> Self {
        let ten = Real::from_i64(10, prec);
        Real::one(prec) / ten.powi(exponent as usize)
    }

    pub fn precision_bits(&self) -> usize {
        self.p
    }

    pub fn precision(&self) -> Precision {
        Precision::digits(0).with_bits(self.p)
    }

    fn wrap(&self, v: BigFloat) -> Self {
        Real { v, p: self.p }
    }

    pub fn sqrt(&self) -> Self {
        self.wrap(self.v.sqrt(self.p, RM))
    }

    pub fn sin(&self) -> Self {
        self.wrap(with_consts(|cc| self.v.sin(self.p, RM, cc)))
    }

    pub fn cos(&self) -> Self {
        self.wrap(with_consts(|cc| self.v.cos(self.p, RM, cc)))
    }

    pub fn tan(&self) -> Self {
        self.wrap(with_consts(|cc| self.v.tan(self.p, RM, cc)))
    }

    pub fn exp(&self) -> Self {
        self.wrap(with_consts(|cc| self.v.exp(self.p, RM, cc)))
    }

    pub fn sinh(&self) -> Self {
        self.wrap(with_consts(|cc| self.v.sinh(self.p, RM, cc)))
    }

    pub fn cosh(&self) -> Self {
        self.wrap(with_consts(|cc| self.v.cosh(self.p, RM, cc)))
    }

    pub fn powi(&self, n: usize) -> Self {
        self.wrap(self.v.powi(n, self.p, RM))
    }

    pub fn abs(&self) -> Self {
        self.wrap(self.v.abs())
    }

    pub fn floor(&self) -> Self {
        self.wrap(self.v.floor())
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self * &Real {
            v: BigFloat::from_i64(k, self.p),
            p: self.p,
        }
    }

    pub fn div_i64(&self, k: i64) -> Self {
        self / &Real {
            v: BigFloat::from_i64(k, self.p),
            p: self.p,
        }
    }

    pub fn mul_ratio(&self, r: &BigRational) -> Self {
        let prec = Precision::digits(0).with_bits(self.p);
        self * &Real::from_ratio(r, prec)
    }

    /// Nearest integer, or `None` when the value does not fit in `i64`.
    pub fn round_to_i64(&self) -> Option<i64> {
        let half = Real {
            v: BigFloat::from_f64(0.5, self.p),
            p: self.p,
        };
        let r = (self + &half).floor();
        r.to_f64().round().to_i64()
    }

    pub fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        self.to_scientific(20).parse().unwrap_or(f64::NAN)
    }

    /// Decimal digits of `|self|` (leading digit first) and the decimal exponent
    /// `e` such that `|self| = 0.d1 d2 ... * 10^e`, rounded half-up to `sig` digits.
    fn rounded_digits(&self, sig: usize) -> (bool, Vec<u8>, i64) {
        let (sign, mut digits, e) = with_consts(|cc| {
            self.v
                .convert_to_radix(Radix::Dec, RoundingMode::None, cc)
                .expect("finite value")
        });
        let negative = sign == astro_float::Sign::Neg;
        let mut e = e as i64;
        if digits.len() > sig {
            let round_up = digits[sig] >= 5;
            digits.truncate(sig);
            if round_up {
                let mut i = sig;
                loop {
                    if i == 0 {
                        digits.insert(0, 1);
                        digits.truncate(sig);
                        e += 1;
                        break;
                    }
                    i -= 1;
                    if digits[i] == 9 {
                        digits[i] = 0;
                    } else {
                        digits[i] += 1;
                        break;
                    }
                }
            }
        }
        while digits.last() == Some(&0) {
            digits.pop();
        }
        (negative, digits, e)
    }

    /// Scientific notation with at most `sig` significant digits, e.g. `-1.0416e-1`.
    pub fn to_scientific(&self, sig: usize) -> String {
        if self.v.is_zero() {
            return "0".to_string();
        }
        let (negative, digits, e) = self.rounded_digits(sig.max(1));
        if digits.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        if negative {
            s.push('-');
        }
        s.push((b'0' + digits[0]) as char);
        if digits.len() > 1 {
            s.push('.');
            s.extend(digits[1..].iter().map(|d| (b'0' + d) as char));
        }
        s.push_str(&format!("e{}", e - 1));
        s
    }

    /// Positional decimal notation with `sig` significant digits, trailing zeros removed.
    pub fn to_decimal(&self, sig: usize) -> String {
        if self.v.is_zero() {
            return "0".to_string();
        }
        let (negative, digits, e) = self.rounded_digits(sig.max(1));
        if digits.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        if negative {
            s.push('-');
        }
        let ds: String = digits.iter().map(|d| (b'0' + d) as char).collect();
        if e <= 0 {
            s.push_str("0.");
            s.extend(std::iter::repeat_n('0', (-e) as usize));
            s.push_str(&ds);
        } else if (e as usize) >= ds.len() {
            s.push_str(&ds);
            s.extend(std::iter::repeat_n('0', e as usize - ds.len()));
        } else {
            s.push_str(&ds[..e as usize]);
            s.push('.');
            s.push_str(&ds[e as usize..]);
        }
        s
    }

    /// Best rational approximation with denominator at most `max_den` lying
    /// within `tol` of `self`, found by continued fractions.
    pub fn rational_guess(&self, max_den: i64, tol: &Real) -> Option<Ratio<i64>> {
        let prec = Precision::digits(0).with_bits(self.p);
        let mut x = self.clone();
        let (mut h0, mut h1) = (0i128, 1i128);
        let (mut k0, mut k1) = (1i128, 0i128);
        for _ in 0..64 {
            let a = x.floor();
            let ai = a.round_to_i64()? as i128;
            let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
            let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
            if k2 > max_den as i128 {
                return None;
            }
            let cand = Ratio::new(h2 as i64, k2 as i64);
            let err = (self - &Real::from_small_ratio(cand, prec)).abs();
            if err <= *tol {
                return Some(cand);
            }
            let frac = &x - &a;
            if frac.is_zero() {
                return None;
            }
            x = Real::one(prec) / frac;
            h0 = h1;
            h1 = h2;
            k0 = k1;
            k1 = k2;
        }
        None
    }
}

impl Precision {
    fn with_bits(self, bits: usize) -> Self {
        let digits = ((bits.saturating_sub(64)) as f64 / std::f64::consts::LOG2_10).floor() as u32;
        Precision { digits: digits.max(1) }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_scientific(30))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_scientific(30))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.partial_cmp(&other.v)
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a Real> for &'a Real {
            type Output = Real;
            fn $method(self, rhs: &'a Real) -> Real {
                let p = self.p.max(rhs.p);
                Real {
                    v: self.v.$method(&rhs.v, p, RM),
                    p,
                }
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &'a Real) -> Real {
                (&self).$method(rhs)
            }
        }
    };
}

real_binop!(Add, add);
real_binop!(Sub, sub);
real_binop!(Mul, mul);
real_binop!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            v: self.v.neg(),
            p: self.p,
        }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            v: self.v.clone().neg(),
            p: self.p,
        }
    }
}

/// A complex number over [`Real`].
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn zero(prec: Precision) -> Self {
        Complex::new(Real::zero(prec), Real::zero(prec))
    }

    pub fn one(prec: Precision) -> Self {
        Complex::new(Real::one(prec), Real::zero(prec))
    }

    pub fn from_real(re: Real) -> Self {
        let p = re.p;
        Complex {
            re,
            im: Real {
                v: BigFloat::from_i64(0, p),
                p,
            },
        }
    }

    pub fn i(prec: Precision) -> Self {
        Complex::new(Real::zero(prec), Real::one(prec))
    }

    /// `exp(2 pi i * turns)`.
    pub fn from_turns(turns: Ratio<i64>, prec: Precision) -> Self {
        let t = reduce_turns(turns);
        // exact values on the axes keep integer characters exact
        let z = Real::zero(prec);
        let o = Real::one(prec);
        match (*t.numer(), *t.denom()) {
            (0, _) => return Complex::new(o, z),
            (1, 2) => return Complex::new(-o, z),
            (1, 4) => return Complex::new(z, o),
            (3, 4) => return Complex::new(z, -o),
            _ => {}
        }
        let angle = Real::pi(prec).mul_i64(2 * *t.numer()).div_i64(*t.denom());
        Complex::new(angle.cos(), angle.sin())
    }

    /// `exp(i * theta)` for real `theta`.
    pub fn cis(theta: &Real) -> Self {
        Complex::new(theta.cos(), theta.sin())
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, k: &Real) -> Self {
        Complex::new(&self.re * k, &self.im * k)
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        Complex::new(self.re.mul_i64(k), self.im.mul_i64(k))
    }

    pub fn mul_i(&self) -> Self {
        Complex::new(-&self.im, self.re.clone())
    }

    pub fn powi(&self, n: u32) -> Self {
        let prec = Precision::digits(0).with_bits(self.re.p);
        let mut acc = Complex::one(prec);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        Complex::new(&m * &self.im.cos(), &m * &self.im.sin())
    }

    /// `tan(z) = (sin 2a + i sinh 2b) / (cos 2a + cosh 2b)` for `z = a + ib`.
    pub fn tan(&self) -> Self {
        if self.im.is_zero() {
            return Complex::from_real(self.re.tan());
        }
        let a2 = self.re.mul_i64(2);
        let b2 = self.im.mul_i64(2);
        let den = &a2.cos() + &b2.cosh();
        Complex::new(&a2.sin() / &den, &b2.sinh() / &den)
    }

    /// `cos(z)` for `z = a + ib`.
    pub fn cos(&self) -> Self {
        Complex::new(&self.re.cos() * &self.im.cosh(), -(&self.re.sin() * &self.im.sinh()))
    }
}

impl<'a> Add<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn add(self, rhs: &'a Complex) -> Complex {
        Complex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn sub(self, rhs: &'a Complex) -> Complex {
        Complex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn mul(self, rhs: &'a Complex) -> Complex {
        Complex::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl<'a> Div<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn div(self, rhs: &'a Complex) -> Complex {
        let den = rhs.norm_sqr();
        let num = self * &rhs.conj();
        Complex::new(&num.re / &den, &num.im / &den)
    }
}

impl Add for Complex {
    type Output = Complex;
    fn add(self, rhs: Complex) -> Complex {
        &self + &rhs
    }
}

impl Sub for Complex {
    type Output = Complex;
    fn sub(self, rhs: Complex) -> Complex {
        &self - &rhs
    }
}

impl Mul for Complex {
    type Output = Complex;
    fn mul(self, rhs: Complex) -> Complex {
        &self * &rhs
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re, -self.im)
    }
}

fn reduce_turns(t: Ratio<i64>) -> Ratio<i64> {
    let (n, d) = (*t.numer(), *t.denom());
    Ratio::new(n.mod_floor(&d), d)
}

/// An exact element `sum_k c_k exp(2 pi i t_k)` of a cyclotomic field.
///
/// Terms are kept with `t_k` reduced into `[0, 1)`, merged, and sorted, so two
/// `RootSum`s built from the same data compare equal. Distinct presentations of
/// the same number (e.g. `e(1/3) + e(2/3)` versus `-1`) are not identified.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootSum {
    terms: Vec<(Ratio<i64>, i64)>,
}

impl RootSum {
    pub fn zero() -> Self {
        RootSum { terms: Vec::new() }
    }

    pub fn int(n: i64) -> Self {
        RootSum::from_terms([(Ratio::zero(), n)])
    }

    /// `exp(2 pi i * num/den)`.
    pub fn root(num: i64, den: i64) -> Self {
        RootSum::from_terms([(Ratio::new(num, den), 1)])
    }

    /// `2 cos(2 pi * num/den)`.
    pub fn two_cos(num: i64, den: i64) -> Self {
        RootSum::from_terms([(Ratio::new(num, den), 1), (Ratio::new(-num, den), 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Ratio<i64>, i64)>) -> Self {
        let mut acc: Vec<(Ratio<i64>, i64)> = Vec::new();
        for (t, c) in terms {
            let mut t = reduce_turns(t);
            let mut c = c;
            // fold -1 = e(1/2) onto the rational axis
            if t == Ratio::new(1, 2) {
                t = Ratio::zero();
                c = -c;
            }
            match acc.iter_mut().find(|(s, _)| *s == t) {
                Some((_, d)) => *d += c,
                None => acc.push((t, c)),
            }
        }
        acc.retain(|&(_, c)| c != 0);
        acc.sort();
        RootSum { terms: acc }
    }

    pub fn terms(&self) -> &[(Ratio<i64>, i64)] {
        &self.terms
    }

    /// The value when it is an integer, decided exactly by reducing modulo the
    /// cyclotomic polynomial of the common denominator.
    pub fn as_integer(&self) -> Option<i64> {
        let reduced = self.cyclotomic_coefficients();
        if reduced.iter().skip(1).all(|&c| c == 0) {
            Some(reduced.first().copied().unwrap_or(0))
        } else {
            None
        }
    }

    /// Coordinates in the basis `1, z, ..., z^(phi(N)-1)` of `Q(z)`, where `z`
    /// is a primitive `N`-th root of unity and `N` the common denominator.
    pub fn cyclotomic_coefficients(&self) -> Vec<i64> {
        let n = self.terms.iter().fold(1i64, |acc, (t, _)| acc.lcm(t.denom()));
        let mut poly = vec![0i64; n as usize];
        for &(t, c) in &self.terms {
            poly[(t.numer() * (n / t.denom())) as usize] += c;
        }
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        for k in (deg..poly.len()).rev() {
            let c = poly[k];
            if c != 0 {
                for (j, &p) in phi.iter().enumerate() {
                    poly[k - deg + j] -= c * p;
                }
            }
        }
        poly.truncate(deg.max(1));
        poly
    }

    pub fn conj(&self) -> Self {
        RootSum::from_terms(self.terms.iter().map(|&(t, c)| (-t, c)))
    }

    pub fn scale(&self, k: i64) -> Self {
        RootSum::from_terms(self.terms.iter().map(|&(t, c)| (t, c * k)))
    }

    pub fn eval(&self, prec: Precision) -> Complex {
        let mut acc = Complex::zero(prec);
        for &(t, c) in &self.terms {
            acc = &acc + &Complex::from_turns(t, prec).scale_i64(c);
        }
        acc
    }
}

impl Add for &RootSum {
    type Output = RootSum;
    fn add(self, rhs: &RootSum) -> RootSum {
        RootSum::from_terms(self.terms.iter().chain(rhs.terms.iter()).copied())
    }
}

impl Mul for &RootSum {
    type Output = RootSum;
    fn mul(self, rhs: &RootSum) -> RootSum {
        RootSum::from_terms(
            self.terms
                .iter()
                .flat_map(|&(a, c)| rhs.terms.iter().map(move |&(b, d)| (a + b, c * d))),
        )
    }
}

impl Neg for &RootSum {
    type Output = RootSum;
    fn neg(self) -> RootSum {
        self.scale(-1)
    }
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, constant term first.
fn cyclotomic_polynomial(n: i64) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_polynomial(d);
            num = poly_div_monic(&num, &div);
        }
    }
    num
}

fn poly_div_monic(num: &[i64], div: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = div.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (j, &p) in div.iter().enumerate() {
            rem[k + j] -= c * p;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Formats an exact rational as `p` or `p/q`.
pub fn ratio_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` into an exact rational.
pub fn parse_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `true` when `|x| < tol`.
pub fn below(x: &Real, tol: &Real) -> bool {
    x.abs() < *tol
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tan_pi_over_three_is_sqrt3() {
        let prec = Precision::default();
        let t = (Real::pi(prec) / Real::from_i64(3, prec)).tan();
        let s = Real::from_i64(3, prec).sqrt();
        assert!(below(&(t - s), &prec.epsilon(60)));
    }

    #[test]
    fn decimal_rendering() {
        let prec = Precision::default();
        let x = Real::from_ratio(&rat(-5, 48), prec);
        assert_eq!(x.to_decimal(6), "-0.104167");
        assert_eq!(Real::from_i64(1234, prec).to_decimal(10), "1234");
        assert_eq!(Real::from_ratio(&rat(3, 2), prec).to_scientific(5), "1.5e0");
        assert_eq!(Real::zero(prec).to_decimal(5), "0");
    }

    #[test]
    fn continued_fraction_guess() {
        let prec = Precision::default();
        let x = Real::from_ratio(&rat(-5, 48), prec);
        let tol = prec.epsilon(40);
        assert_eq!(x.rational_guess(1_000_000, &tol), Some(Ratio::new(-5, 48)));
        let sqrt2 = Real::from_i64(2, prec).sqrt();
        assert_eq!(sqrt2.rational_guess(1_000_000, &tol), None);
    }

    #[test]
    fn root_sums_merge_and_fold_minus_one() {
        let a = RootSum::from_terms([(Ratio::new(1, 2), 1), (Ratio::new(3, 2), 1)]);
        assert_eq!(a.as_integer(), Some(-2));
        let w = RootSum::root(1, 3);
        assert_eq!((&w * &w.conj()).as_integer(), Some(1));
        assert_eq!((&w + &(&w * &w)).as_integer(), Some(-1));
        assert_eq!((&RootSum::int(1) + &RootSum::two_cos(1, 3)).as_integer(), Some(0));
        let s5 = &RootSum::two_cos(1, 5) + &RootSum::two_cos(2, 5);
        assert_eq!(s5.as_integer(), Some(-1));
        assert_eq!(RootSum::two_cos(1, 5).as_integer(), None);
        let sqrt2 = RootSum::two_cos(1, 8);
        assert_eq!((&sqrt2 * &sqrt2).as_integer(), Some(2));
        let golden = &RootSum::int(1) + &RootSum::two_cos(1, 5);
        let prec = Precision::default();
        let phi = (Real::one(prec) + Real::from_i64(5, prec).sqrt()).div_i64(2);
        assert!(below(&(golden.eval(prec).re - phi), &prec.epsilon(60)));
    }

    #[test]
    fn complex_tan_matches_real_tan_on_axis() {
        let prec = Precision::default();
        let z = Complex::from_real(Real::from_ratio(&rat(1, 3), prec));
        let t = z.tan();
        assert!(below(
            &(t.re - Real::from_ratio(&rat(1, 3), prec).tan()),
            &prec.epsilon(60)
        ));
        let w = Complex::new(Real::from_ratio(&rat(1, 5), prec), Real::from_ratio(&rat(1, 7), prec));
        // tan(w) * cos(w) = sin(w) = (e^{iw} - e^{-iw}) / 2i
        let iw = w.mul_i();
        let sin_w = &(&iw.exp() - &(-iw).exp()) / &Complex::i(prec).scale_i64(2);
        let lhs = &w.tan() * &w.cos();
        assert!(below(&(&lhs - &sin_w).abs(), &prec.epsilon(55)));
    }
}
