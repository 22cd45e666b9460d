//! Laurent polynomials and their quotients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::fps::{rat, Rat, Series, SeriesError};
use crate::poly::Poly;

/// A Laurent polynomial `sum_e c_e z^e` with finitely many integer exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<Rat>,
}

impl LaurentPoly {
    /// `coeffs[i]` is the coefficient of `z^(low + i)`.
    pub fn new(low: i64, coeffs: Vec<Rat>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(terms: &[(i64, Rat)]) -> Self {
        terms.iter().fold(LaurentPoly::zero(), |acc, (e, c)| {
            &acc + &LaurentPoly::monomial(c.clone(), *e)
        })
    }

    /// Builds from `(exponent, integer coefficient)` pairs.
    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        let terms: Vec<(i64, Rat)> = terms.iter().map(|&(e, c)| (e, rat(c))).collect();
        Self::from_terms(&terms)
    }

    /// The zero Laurent polynomial.
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    /// The constant `c`.
    pub fn constant(c: Rat) -> Self {
        Self::new(0, vec![c])
    }

    /// The monomial `c z^e`.
    pub fn monomial(c: Rat, e: i64) -> Self {
        Self::new(e, vec![c])
    }

    /// Embeds an ordinary polynomial.
    pub fn from_poly(p: &Poly) -> Self {
        Self::new(0, p.coeffs().to_vec())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    /// Whether this is the zero Laurent polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Coefficient of `z^e`.
    pub fn coeff(&self, e: i64) -> Rat {
        if e < self.low {
            return Rat::zero();
        }
        self.coeffs
            .get((e - self.low) as usize)
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Nonzero terms as `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> Vec<(i64, Rat)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.low + i as i64, c.clone()))
            .collect()
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Multiplies by a scalar.
    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Reciprocal `z^(min + max) p(1/z)`.
    pub fn reciprocal(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(self.low, coeffs)
    }

    /// `p(1/z)`.
    pub fn invert_variable(&self) -> Self {
        match self.max_exp() {
            None => self.clone(),
            Some(hi) => {
                let mut coeffs = self.coeffs.clone();
                coeffs.reverse();
                Self::new(-hi, coeffs)
            }
        }
    }

    /// Power with a nonnegative exponent.
    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(LaurentPoly::constant(Rat::one()), |acc, _| &acc * self)
    }

    /// Value at a nonzero rational point (any point if all exponents are nonnegative).
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        if x.is_zero() && self.low < 0 {
            return None;
        }
        let mut acc = Rat::zero();
        for (e, c) in self.terms() {
            acc += c * crate::fps::rat_powi(x, e);
        }
        Some(acc)
    }

    /// Value at a series; negative exponents need a nonzero constant term.
    pub fn eval_series(&self, s: &Series) -> Result<Series, SeriesError> {
        if self.is_zero() {
            return Ok(Series::zero(s.order()));
        }
        let body = Poly::new(self.coeffs.clone()).eval_series(s);
        if self.low == 0 {
            return Ok(body);
        }
        Ok(s.pow_int(self.low)?.mul_series(&body))
    }

    /// Whether `p(1/z) = p(z)`.
    pub fn is_symmetric(&self) -> bool {
        *self == self.invert_variable()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.low.min(rhs.low);
        let hi = self.max_exp().unwrap().max(rhs.max_exp().unwrap());
        LaurentPoly::new(lo, (lo..=hi).map(|e| self.coeff(e) + rhs.coeff(e)).collect())
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::new(self.low, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let p = &Poly::new(self.coeffs.clone()) * &Poly::new(rhs.coeffs.clone());
        LaurentPoly::new(self.low + rhs.low, p.coeffs().to_vec())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{e}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// A quotient of Laurent polynomials `num / den`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentRational {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// Outcome of the generalized palindrome test `gamma(z) / gamma(1/z) = z^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DargaResult {
    /// Whether the quotient is a generalized palindrome.
    pub is_generalized_palindrome: bool,
    /// The exponent `d`, present when the test succeeds.
    pub darga: Option<i64>,
}

/// Errors building Laurent quotients.
#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("denominator is zero")]
    ZeroDenominator,
}

impl LaurentRational {
    /// Builds `num / den`, scaling so that the lowest denominator coefficient is 1.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, LaurentError> {
        let Some(lo) = den.min_exp() else {
            return Err(LaurentError::ZeroDenominator);
        };
        let c = den.coeff(lo).recip();
        Ok(LaurentRational {
            num: num.scale(&c),
            den: den.scale(&c),
        })
    }

    /// A Laurent polynomial viewed as a quotient with denominator 1.
    pub fn from_laurent(num: LaurentPoly) -> Self {
        LaurentRational {
            num,
            den: LaurentPoly::constant(Rat::one()),
        }
    }

    /// Numerator.
    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    /// Denominator.
    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    /// Product of two quotients.
    pub fn mul(&self, other: &LaurentRational) -> LaurentRational {
        LaurentRational::new(&self.num * &other.num, &self.den * &other.den)
            .expect("product of nonzero denominators")
    }

    /// Quotient of two quotients.
    pub fn div(&self, other: &LaurentRational) -> Result<LaurentRational, LaurentError> {
        LaurentRational::new(&self.num * &other.den, &self.den * &other.num)
    }

    /// Sum of two quotients.
    pub fn add(&self, other: &LaurentRational) -> LaurentRational {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        LaurentRational::new(num, &self.den * &other.den).expect("product of nonzero denominators")
    }

    /// Negation.
    pub fn neg(&self) -> LaurentRational {
        LaurentRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    /// Integer power; negative exponents need a nonzero numerator.
    pub fn powi(&self, e: i64) -> Result<LaurentRational, LaurentError> {
        let (n, d) = (self.num.pow(e.unsigned_abs() as u32), self.den.pow(e.unsigned_abs() as u32));
        if e >= 0 {
            LaurentRational::new(n, d)
        } else {
            LaurentRational::new(d, n)
        }
    }

    /// `gamma(1/z)`.
    pub fn invert_variable(&self) -> LaurentRational {
        LaurentRational::new(self.num.invert_variable(), self.den.invert_variable())
            .expect("nonzero denominator stays nonzero")
    }

    /// Value at a rational point, if defined.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x)? / d)
    }

    /// Value at a series with nonzero constant term.
    pub fn eval_series(&self, s: &Series) -> Result<Series, SeriesError> {
        self.num.eval_series(s)?.div(&self.den.eval_series(s)?)
    }

    /// Generalized palindrome test.
    ///
    /// The candidate exponent is `(min + max)(num) - (min + max)(den)`; it is
    /// accepted when `num * den^* = num^* * den` for the reciprocals `^*`.
    pub fn darga(&self) -> DargaResult {
        let span = |p: &LaurentPoly| p.min_exp().unwrap() + p.max_exp().unwrap();
        if self.num.is_zero() {
            return DargaResult {
                is_generalized_palindrome: false,
                darga: None,
            };
        }
        let d = span(&self.num) - span(&self.den);
        let ok = &self.num * &self.den.reciprocal() == &self.num.reciprocal() * &self.den;
        DargaResult {
            is_generalized_palindrome: ok,
            darga: ok.then_some(d),
        }
    }
}

impl fmt::Display for LaurentRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::constant(Rat::one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
