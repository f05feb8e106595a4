//! Exact arithmetic in `Q(q)`.
//!
//! [`LaurentPoly`] stores a Laurent polynomial in `q` as a dense coefficient
//! vector with an exponent offset. [`ScalarQ`] is an element of the fraction
//! field, always kept in canonical form so that structural equality is
//! mathematical equality. [`CScalar`] adjoins `i` with `i^2 = -1`; complex
//! conjugation fixes `q`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Laurent polynomial `sum_k c_k q^(low + k)` with rational coefficients.
///
/// Invariant: the first and last stored coefficients are nonzero; the zero
/// polynomial has no coefficients and `low == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^exp`.
    pub fn monomial(c: BigRational, exp: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: exp, coeffs: vec![c] }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i32, BigRational)>>(terms: I) -> Self {
        let terms: Vec<(i32, BigRational)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let low = terms.iter().map(|t| t.0).min().unwrap();
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigRational::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::normalized(low, coeffs)
    }

    fn normalized(mut low: i32, mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        if lead_zeros > 0 {
            coeffs.drain(..lead_zeros);
            low += lead_zeros as i32;
        }
        LaurentPoly { low, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for a single term `c q^k`; these are the units of `Q[q, q^-1]`.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low_exp(&self) -> i32 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high_exp(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    /// Number of exponents spanned, `high - low + 1` (0 for zero).
    pub fn span(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, exp: i32) -> BigRational {
        let k = exp - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            BigRational::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (self.low + k as i32, c))
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn shift(&self, by: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + by, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc * rational_pow(x, self.low)
    }

    /// Polynomial part shifted so the lowest exponent is 0.
    fn stripped(&self) -> Self {
        LaurentPoly { low: 0, coeffs: self.coeffs.clone() }
    }

    /// Divides by the leading coefficient.
    fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division of ordinary polynomials (`low == 0` on both).
    fn div_rem_poly(&self, d: &Self) -> (Self, Self) {
        debug_assert!(!d.is_zero());
        if self.is_zero() || self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let mut rem: Vec<BigRational> = self.coeffs.clone();
        let dl = d.coeffs.len();
        let lc_inv = d.coeffs[dl - 1].recip();
        let mut quot = vec![BigRational::zero(); rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dl - 1] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dl - 1);
        (Self::normalized(0, quot), Self::normalized(0, rem))
    }

    /// Monic gcd of the polynomial parts (exponent shifts ignored, since
    /// powers of `q` are units).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.stripped();
        let mut b = other.stripped();
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_monomial() || b.is_monomial() {
            return Self::one();
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem_poly(&b);
            a = b;
            b = r.stripped().monic();
        }
        a.monic()
    }

    /// Exact quotient; `None` if `d` does not divide `self` in `Q[q, q^-1]`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (quot, rem) = self.stripped().div_rem_poly(&d.stripped());
        if !rem.is_zero() {
            return None;
        }
        Some(quot.shift(self.low - d.low))
    }
}

fn rational_pow(x: &BigRational, e: i32) -> BigRational {
    let mut acc = BigRational::one();
    let base = if e < 0 { x.recip() } else { x.clone() };
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

fn add_dense(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let low = a.low.min(b.low);
    let high = a.high_exp().max(b.high_exp());
    let mut coeffs = vec![BigRational::zero(); (high - low + 1) as usize];
    for (k, c) in a.coeffs.iter().enumerate() {
        coeffs[(a.low - low) as usize + k] += c;
    }
    for (k, c) in b.coeffs.iter().enumerate() {
        let slot = &mut coeffs[(b.low - low) as usize + k];
        if negate_b {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
    LaurentPoly::normalized(low, coeffs)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_dense(self, rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_dense(self, rhs, true)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if rhs.is_monomial() {
            return self.scale(&rhs.coeffs[0]).shift(rhs.low);
        }
        if self.is_monomial() {
            return rhs.scale(&self.coeffs[0]).shift(self.low);
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::normalized(self.low + rhs.low, coeffs)
    }
}

/// Element of `Q(q)` in canonical form.
///
/// Canonical form: `num / den` with `gcd(num, den) = 1`, `den` monic with
/// lowest exponent 0. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ScalarQ {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for ScalarQ {
    fn default() -> Self {
        Self::zero()
    }
}

impl ScalarQ {
    pub fn zero() -> Self {
        ScalarQ { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(p: i64, r: i64) -> Self {
        assert!(r != 0, "zero denominator in rational literal");
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(r)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        ScalarQ { num: LaurentPoly::constant(c), den: LaurentPoly::one() }
    }

    /// `q^k`.
    pub fn q_pow(k: i32) -> Self {
        ScalarQ { num: LaurentPoly::monomial(BigRational::one(), k), den: LaurentPoly::one() }
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        ScalarQ { num: p, den: LaurentPoly::one() }
    }

    /// Builds `num / den` and brings it to canonical form.
    pub fn from_parts(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let shift = num.low - den.low;
        let mut n = num.stripped();
        let mut d = den.stripped();
        if !d.is_monomial() {
            let g = n.gcd(&d);
            if !g.is_one() {
                n = n.exact_div(&g).expect("gcd divides numerator");
                d = d.exact_div(&g).expect("gcd divides denominator");
            }
        }
        let lc = d.leading_coeff().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        ScalarQ { num: n.shift(shift), den: d }
    }

    /// Re-canonicalizes; the identity on canonical values.
    pub fn canon(&self) -> Self {
        Self::canonical(self.num.clone(), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1, i.e. the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Rational constant value, if the scalar does not depend on `q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.den.is_one() && self.num.is_monomial() && self.num.low == 0 {
            return Some(self.num.coeffs[0].clone());
        }
        None
    }

    /// A size measure used for pivot selection: total span of numerator and
    /// denominator.
    pub fn complexity(&self) -> usize {
        self.num.span() + self.den.span()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.num.is_monomial() {
            // (c q^k)^-1 * den stays a Laurent polynomial over a unit.
            let c = self.num.coeffs[0].recip();
            let k = self.num.low;
            return Ok(ScalarQ { num: self.den.scale(&c).shift(-k), den: LaurentPoly::one() });
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Numerical value at `q = q0`.
    ///
    /// Poles are detected exactly: `q0` is converted to the rational number
    /// it represents and the denominator is evaluated without rounding.
    pub fn eval(&self, q0: f64) -> Result<f64> {
        if q0 == 0.0 || !q0.is_finite() {
            return Err(Error::Domain(format!("cannot specialize at q = {q0}")));
        }
        let x = BigRational::from_float(q0).expect("finite float");
        let d = self.den.eval_exact(&x);
        if d.is_zero() {
            return Err(Error::Pole(q0));
        }
        let n = self.num.eval_exact(&x);
        Ok((n / d).to_f64().unwrap_or(f64::NAN))
    }

    /// Whether the value is nonzero at `q0` (exactly).
    pub fn vanishes_at(&self, q0: f64) -> Result<bool> {
        let x = BigRational::from_float(q0).ok_or_else(|| Error::Domain(format!("cannot specialize at q = {q0}")))?;
        if self.den.eval_exact(&x).is_zero() {
            return Err(Error::Pole(q0));
        }
        Ok(self.num.eval_exact(&x).is_zero())
    }
}

impl Add for &ScalarQ {
    type Output = ScalarQ;
    fn add(self, rhs: &ScalarQ) -> ScalarQ {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ScalarQ { num: &self.num + &rhs.num, den: LaurentPoly::one() };
        }
        if self.den == rhs.den {
            return ScalarQ::canonical(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        ScalarQ::canonical(num, &self.den * &rhs.den)
    }
}

impl Sub for &ScalarQ {
    type Output = ScalarQ;
    fn sub(self, rhs: &ScalarQ) -> ScalarQ {
        self + &(-rhs)
    }
}

impl Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &ScalarQ {
    type Output = ScalarQ;
    fn mul(self, rhs: &ScalarQ) -> ScalarQ {
        if self.is_zero() || rhs.is_zero() {
            return ScalarQ::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ScalarQ { num: &self.num * &rhs.num, den: LaurentPoly::one() };
        }
        ScalarQ::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(LaurentPoly, Add add, Sub sub, Mul mul);
forward_owned!(ScalarQ, Add add, Sub sub, Mul mul);

/// Element of `Q(q)[i]`, `re + i * im`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CScalar {
    pub re: ScalarQ,
    pub im: ScalarQ,
}

impl From<ScalarQ> for CScalar {
    fn from(re: ScalarQ) -> Self {
        CScalar { re, im: ScalarQ::zero() }
    }
}

impl CScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        ScalarQ::one().into()
    }

    pub fn i() -> Self {
        CScalar { re: ScalarQ::zero(), im: ScalarQ::one() }
    }

    pub fn from_int(n: i64) -> Self {
        ScalarQ::from_int(n).into()
    }

    pub fn q_pow(k: i32) -> Self {
        ScalarQ::q_pow(k).into()
    }

    pub fn new(re: ScalarQ, im: ScalarQ) -> Self {
        CScalar { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugation; `q` is fixed.
    pub fn conj(&self) -> Self {
        CScalar { re: self.re.clone(), im: -&self.im }
    }

    pub fn complexity(&self) -> usize {
        self.re.complexity() + self.im.complexity()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.im.is_zero() {
            return Ok(self.re.inv()?.into());
        }
        // Q(q) is formally real, so re^2 + im^2 vanishes only at zero.
        let norm = &(&self.re * &self.re) + &(&self.im * &self.im);
        let inv = norm.inv()?;
        Ok(CScalar { re: &self.re * &inv, im: -&(&self.im * &inv) })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn eval(&self, q0: f64) -> Result<(f64, f64)> {
        Ok((self.re.eval(q0)?, self.im.eval(q0)?))
    }
}

impl Add for &CScalar {
    type Output = CScalar;
    fn add(self, rhs: &CScalar) -> CScalar {
        CScalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &CScalar {
    type Output = CScalar;
    fn sub(self, rhs: &CScalar) -> CScalar {
        CScalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Neg for &CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        CScalar { re: -&self.re, im: -&self.im }
    }
}

impl Mul for &CScalar {
    type Output = CScalar;
    fn mul(self, rhs: &CScalar) -> CScalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return (&self.re * &rhs.re).into();
        }
        CScalar { re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im), im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re) }
    }
}

forward_owned!(CScalar, Add add, Sub sub, Mul mul);

impl Neg for CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        -&self
    }
}

impl Neg for ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        -&self
    }
}

// ---------------------------------------------------------------------------
// Printing in the expression grammar
// ---------------------------------------------------------------------------

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_q_power(e: i32) -> String {
    match e {
        1 => "q".to_string(),
        _ => format!("q^{e}"),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest exponent first.
        let terms: Vec<(i32, &BigRational)> = self.terms().collect();
        for (e, c) in terms.into_iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (e, abs.is_one()) {
                (0, _) => write!(f, "{}", fmt_rational(&abs))?,
                (_, true) => write!(f, "{}", fmt_q_power(e))?,
                (_, false) => write!(f, "{}*{}", fmt_rational(&abs), fmt_q_power(e))?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &LaurentPoly| {
            if p.terms().count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Display for CScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "({})*i", self.im),
            (false, false) => write!(f, "({}) + ({})*i", self.re, self.im),
        }
    }
}

/// Whether printing `s` as a coefficient needs parentheses.
pub(crate) fn needs_parens(s: &CScalar) -> bool {
    !s.is_real() || !s.re.denom().is_one() || s.re.numer().terms().count() > 1
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.low, self.coeffs.len()).cmp(&(other.low, other.coeffs.len())).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ScalarQ {
        ScalarQ::q()
    }

    fn poly(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, BigRational::from_integer(BigInt::from(c)))))
    }

    #[test]
    fn q_plus_q_inverse() {
        let s = &q() + &ScalarQ::q_pow(-1);
        // (q^2 + 1) / q, which in Laurent form is q + q^-1 with denominator 1.
        let expected = ScalarQ::from_parts(poly(&[(2, 1), (0, 1)]), poly(&[(1, 1)])).unwrap();
        assert_eq!(s, expected);
        assert!(s.is_laurent());
    }

    #[test]
    fn adding_zero_is_identity() {
        let x = ScalarQ::from_parts(poly(&[(0, 3), (2, -1)]), poly(&[(0, 1), (1, 1)])).unwrap();
        assert_eq!(&x + &ScalarQ::zero(), x);
    }

    #[test]
    fn partial_fractions_combine() {
        let one = ScalarQ::one();
        let a = ScalarQ::from_parts(poly(&[(0, 1)]), poly(&[(1, 1), (0, -1)])).unwrap();
        let b = ScalarQ::from_parts(poly(&[(0, 1)]), poly(&[(1, 1), (0, 1)])).unwrap();
        let sum = &a + &b;
        // Cross-multiplied by hand: ((q+1) + (q-1)) / ((q-1)(q+1)) = 2q/(q^2-1).
        let expected = ScalarQ::from_parts(poly(&[(1, 2)]), poly(&[(2, 1), (0, -1)])).unwrap();
        assert_eq!(sum, expected);
        assert_eq!(&sum * &ScalarQ::zero(), ScalarQ::zero());
        assert_eq!(&(&a * &a.inv().unwrap()), &one);
    }

    #[test]
    fn products() {
        assert_eq!(&q() * &ScalarQ::q_pow(-1), ScalarQ::one());
        let q_minus_qinv = &q() - &ScalarQ::q_pow(-1);
        assert_eq!(&q_minus_qinv * &q(), ScalarQ::from_laurent(poly(&[(2, 1), (0, -1)])));
    }

    #[test]
    fn inverses() {
        assert_eq!(q().inv().unwrap(), ScalarQ::q_pow(-1));
        let x = ScalarQ::from_laurent(poly(&[(2, 1), (0, -1)]));
        let xi = x.inv().unwrap();
        assert_eq!(xi, ScalarQ::from_parts(poly(&[(0, 1)]), poly(&[(2, 1), (0, -1)])).unwrap());
        assert!(matches!(ScalarQ::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn evaluation() {
        let s = &q() + &ScalarQ::q_pow(-1);
        assert_eq!(s.eval(2.0).unwrap(), 2.5);
        let pole = ScalarQ::from_parts(poly(&[(0, 1)]), poly(&[(1, 1), (0, -1)])).unwrap();
        assert!(matches!(pole.eval(1.0), Err(Error::Pole(_))));
        let d = &q() - &ScalarQ::q_pow(-1);
        assert_eq!(d.eval(1.0).unwrap(), 0.0);
        assert!(matches!(d.eval(0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn canonical_denominator_is_monic_with_zero_low_exponent() {
        let x = ScalarQ::from_parts(poly(&[(3, 4)]), poly(&[(2, 2), (4, 6)])).unwrap();
        assert_eq!(x.denom().low_exp(), 0);
        assert!(x.denom().leading_coeff().unwrap().is_one());
        assert_eq!(x.canon(), x);
    }

    #[test]
    fn complex_inverse() {
        let z = CScalar::new(q(), ScalarQ::one());
        let prod = &z * &z.inv().unwrap();
        assert!(prod.is_one());
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn display_matches_grammar() {
        let s = &(&q() - &ScalarQ::q_pow(-1)) + &ScalarQ::from_ratio(1, 2);
        assert_eq!(s.to_string(), "q + 1/2 - q^-1");
    }
}
