//! Truncated formal power series over the rationals.
//!
//! A [`Series`] stores the coefficients `a_0, ..., a_N` of a power series
//! known modulo `z^(N+1)`. `N` is the truncation order. Every operation
//! returns a series whose truncation order only covers coefficients that are
//! fully determined by the inputs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number.
pub type Rat = num_rational::BigRational;

/// Builds a rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Builds the rational `p / q`.
///
/// # Panics
///
/// Panics if `q` is zero.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient `C(n, k)` for a nonnegative `n`; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rat_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer();
    let d = x.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rat::new(rn, rd))
    } else {
        None
    }
}

/// Integer power of a rational; negative exponents need a nonzero base.
pub fn rat_powi(x: &Rat, e: i64) -> Rat {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// Valuation of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    /// Index of the first nonzero coefficient.
    Finite(usize),
    /// Every known coefficient is zero.
    AllZero,
}

impl Valuation {
    /// The valuation as an integer, `None` for an all-zero prefix.
    pub fn finite(self) -> Option<usize> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::AllZero => None,
        }
    }
}

/// Failures of series operations.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum SeriesError {
    #[error("divisor has valuation {divisor:?}, dividend has valuation {dividend:?}")]
    DivisionByHigherValuation {
        dividend: Valuation,
        divisor: Valuation,
    },
    #[error("inner series of a composition must have positive valuation")]
    NonpositiveInnerValuation,
    #[error("series is not compositionally invertible (needs a_0 = 0 and a_1 != 0)")]
    NotInvertible,
    #[error("fractional power needs constant term 1, found {0}")]
    NonUnitConstantTerm(Rat),
    #[error("square root needs even valuation, found {0}")]
    OddValuation(usize),
    #[error("leading coefficient {0} is not a rational square")]
    NonSquareLeadingCoefficient(Rat),
    #[error("expected constant term {expected}, found {found}")]
    BadConstantTerm { expected: Rat, found: Rat },
    #[error("fixed point iteration left a residual at order {order}")]
    NotContracting { order: usize },
}

/// A power series over the rationals truncated at a fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<Rat>,
}

impl Series {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    ///
    /// # Panics
    ///
    /// Panics if `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Series { coeffs }
    }

    /// Series with integer coefficients; the order is `coeffs.len() - 1`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// Series whose `i`-th coefficient is `f(i)` for `i <= order`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rat) -> Self {
        Series {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    /// The zero series.
    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| Rat::zero())
    }

    /// The constant series `c`.
    pub fn constant(c: Rat, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The constant series `1`.
    pub fn one(order: usize) -> Self {
        Self::constant(Rat::one(), order)
    }

    /// The monomial `c z^k`.
    pub fn monomial(c: Rat, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The identity series `z`.
    pub fn z(order: usize) -> Self {
        Self::monomial(Rat::one(), 1, order)
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^i`.
    ///
    /// # Panics
    ///
    /// Panics if `i` exceeds the truncation order.
    pub fn coeff(&self, i: usize) -> &Rat {
        &self.coeffs[i]
    }

    /// Coefficient of `z^i`, or `None` above the truncation order.
    pub fn get(&self, i: usize) -> Option<&Rat> {
        self.coeffs.get(i)
    }

    /// All known coefficients.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Consumes the series and returns its coefficients.
    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    /// Constant term.
    pub fn constant_term(&self) -> &Rat {
        &self.coeffs[0]
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Valuation {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map_or(Valuation::AllZero, Valuation::Finite)
    }

    /// Whether every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Keeps coefficients up to `min(order, self.order())`.
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Series {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    /// Pads with zero coefficients up to `order`.
    ///
    /// This claims knowledge the series does not carry; it is only meant for
    /// polynomials and for seeding iterations.
    pub fn extend_with_zeros(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order.max(self.order()) + 1, Rat::zero());
        Series { coeffs }
    }

    /// First index below both truncation orders where the coefficients differ.
    pub fn first_difference(&self, other: &Series) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }

    /// Whether the two series agree through their common truncation order.
    pub fn agrees_with(&self, other: &Series) -> bool {
        self.first_difference(other).is_none()
    }

    /// Multiplies by a scalar.
    pub fn scale(&self, c: &Rat) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `z^k`; the order grows by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// Divides by `z^k`; the order shrinks by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self, SeriesError> {
        let divisor = Valuation::Finite(k);
        match self.valuation() {
            Valuation::Finite(v) if v < k => {
                return Err(SeriesError::DivisionByHigherValuation {
                    dividend: Valuation::Finite(v),
                    divisor,
                })
            }
            _ => {}
        }
        if k > self.order() {
            return Err(SeriesError::DivisionByHigherValuation {
                dividend: Valuation::AllZero,
                divisor,
            });
        }
        Ok(Series {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Formal derivative; the order drops by one (order 0 gives the zero series).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Series::zero(0);
        }
        Series::from_fn(self.order() - 1, |i| &self.coeffs[i + 1] * rat(i as i64 + 1))
    }

    /// Multiplies coefficient `n` by `n!`, mapping an EGF to its counting sequence.
    pub fn egf_to_counts(&self) -> Self {
        let mut f = BigInt::one();
        Series::from_fn(self.order(), |i| {
            if i > 0 {
                f *= BigInt::from(i);
            }
            &self.coeffs[i] * Rat::from_integer(f.clone())
        })
    }

    /// Divides coefficient `n` by `n!`, mapping a counting sequence to its EGF.
    pub fn counts_to_egf(&self) -> Self {
        let mut f = BigInt::one();
        Series::from_fn(self.order(), |i| {
            if i > 0 {
                f *= BigInt::from(i);
            }
            &self.coeffs[i] / Rat::from_integer(f.clone())
        })
    }

    /// Truncated product; the order is the smaller of the two orders.
    pub fn mul_series(&self, other: &Series) -> Self {
        let n = self.order().min(other.order());
        mul_truncated(&self.coeffs, &other.coeffs, n)
    }

    /// Quotient `self / divisor`.
    ///
    /// Requires `valuation(divisor) <= valuation(self)`. The result has order
    /// `min(orders) - valuation(divisor)`.
    pub fn div(&self, divisor: &Series) -> Result<Self, SeriesError> {
        let vb = match divisor.valuation() {
            Valuation::Finite(v) => v,
            Valuation::AllZero => {
                return Err(SeriesError::DivisionByHigherValuation {
                    dividend: self.valuation(),
                    divisor: Valuation::AllZero,
                })
            }
        };
        if let Valuation::Finite(va) = self.valuation() {
            if va < vb {
                return Err(SeriesError::DivisionByHigherValuation {
                    dividend: Valuation::Finite(va),
                    divisor: Valuation::Finite(vb),
                });
            }
        }
        let n = self.order().min(divisor.order());
        if vb > n {
            return Err(SeriesError::DivisionByHigherValuation {
                dividend: self.valuation(),
                divisor: Valuation::AllZero,
            });
        }
        let a = &self.coeffs[vb.min(self.order())..];
        let b = &divisor.coeffs[vb..];
        let m = n - vb;
        let inv_b0 = b[0].recip();
        let mut q: Vec<Rat> = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let mut acc = a.get(i).cloned().unwrap_or_else(Rat::zero);
            for j in 1..=i.min(b.len() - 1) {
                acc -= &b[j] * &q[i - j];
            }
            q.push(acc * &inv_b0);
        }
        Ok(Series { coeffs: q })
    }

    /// Multiplicative inverse `1 / self`; needs a nonzero constant term.
    pub fn recip(&self) -> Result<Self, SeriesError> {
        Series::one(self.order()).div(self)
    }

    /// Composition `self(inner)`.
    ///
    /// Requires `valuation(inner) >= 1`. With `v = valuation(inner)`, the
    /// result is determined through order `min(inner.order, (self.order + 1) v - 1)`.
    pub fn compose(&self, inner: &Series) -> Result<Self, SeriesError> {
        let v = match inner.valuation() {
            Valuation::Finite(0) => return Err(SeriesError::NonpositiveInnerValuation),
            Valuation::Finite(v) => v,
            Valuation::AllZero => {
                if !inner.coeffs[0].is_zero() {
                    return Err(SeriesError::NonpositiveInnerValuation);
                }
                inner.order() + 1
            }
        };
        let n = inner
            .order()
            .min((self.order() + 1).saturating_mul(v) - 1);
        let top = (n / v).min(self.order());
        let inner_t = inner.truncate(n);
        let mut acc = Series::constant(self.coeffs[top].clone(), n);
        for i in (0..top).rev() {
            acc = acc.mul_series(&inner_t);
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }

    /// Compositional inverse; needs `a_0 = 0` and `a_1 != 0`. Keeps the order.
    pub fn comp_inverse(&self) -> Result<Self, SeriesError> {
        if self.order() == 0 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let n = self.order();
        let phi = self.shift_down(1)?.recip()?;
        let mut out = vec![Rat::zero(); n + 1];
        let mut power = Series::one(n - 1);
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            power = power.mul_series(&phi);
            *slot = power.coeffs[k - 1].clone() / rat(k as i64);
        }
        Ok(Series { coeffs: out })
    }

    /// `self^e` for an integer exponent.
    ///
    /// Nonnegative powers exist for every series; negative powers need a
    /// nonzero constant term.
    pub fn pow_int(&self, e: i64) -> Result<Self, SeriesError> {
        if e == 0 {
            return Ok(Series::one(self.order()));
        }
        if !self.coeffs[0].is_zero() {
            let b0 = rat_powi(&self.coeffs[0], e);
            return Ok(self.miller_power(&rat(e), b0));
        }
        if e < 0 {
            return Err(SeriesError::NotInvertible);
        }
        match self.valuation() {
            Valuation::AllZero => {
                let n = self.order();
                let known = ((n + 1) * e as usize).saturating_sub(1);
                Ok(Series::zero(known))
            }
            Valuation::Finite(v) => {
                let unit = self.shift_down(v)?;
                let b0 = rat_powi(&unit.coeffs[0], e);
                Ok(unit.miller_power(&rat(e), b0).shift_up(v * e as usize))
            }
        }
    }

    /// `self^r` for a rational exponent.
    ///
    /// Integer exponents go through [`Series::pow_int`]; other exponents use
    /// the binomial series and need constant term 1.
    pub fn pow_rational(&self, r: &Rat) -> Result<Self, SeriesError> {
        if r.is_integer() {
            if let Some(e) = r.to_integer().to_i64() {
                return self.pow_int(e);
            }
        }
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::NonUnitConstantTerm(self.coeffs[0].clone()));
        }
        Ok(self.miller_power(r, Rat::one()))
    }

    // a b' = r a' b, solved coefficientwise; needs a_0 != 0.
    fn miller_power(&self, r: &Rat, b0: Rat) -> Self {
        let a = &self.coeffs;
        let n = self.order();
        let inv_a0 = a[0].recip();
        let r1 = r + Rat::one();
        let mut b = Vec::with_capacity(n + 1);
        b.push(b0);
        for m in 1..=n {
            let mut acc = Rat::zero();
            for k in 1..=m {
                if a[k].is_zero() {
                    continue;
                }
                let w = &r1 * rat(k as i64) - rat(m as i64);
                acc += w * &a[k] * &b[m - k];
            }
            b.push(acc * &inv_a0 / rat(m as i64));
        }
        Series { coeffs: b }
    }

    /// Square root with positive leading coefficient.
    ///
    /// Needs even valuation `2m` and a rational square leading coefficient;
    /// the result has order `N - m`.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        match self.valuation() {
            Valuation::AllZero => {
                let known = (self.order() + 1).div_ceil(2).saturating_sub(1);
                Ok(Series::zero(known))
            }
            Valuation::Finite(v) if v % 2 == 1 => Err(SeriesError::OddValuation(v)),
            Valuation::Finite(v) => {
                let lead = self.coeffs[v].clone();
                let root = rat_sqrt(&lead)
                    .ok_or_else(|| SeriesError::NonSquareLeadingCoefficient(lead.clone()))?;
                let unit = self.shift_down(v)?.scale(&lead.recip());
                let half = unit.miller_power(&ratio(1, 2), Rat::one());
                Ok(half.scale(&root).shift_up(v / 2))
            }
        }
    }

    /// `exp(self)`; needs constant term 0.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::BadConstantTerm {
                expected: Rat::zero(),
                found: self.coeffs[0].clone(),
            });
        }
        let a = &self.coeffs;
        let n = self.order();
        let mut b = Vec::with_capacity(n + 1);
        b.push(Rat::one());
        for m in 1..=n {
            let mut acc = Rat::zero();
            for k in 1..=m {
                if !a[k].is_zero() {
                    acc += &a[k] * &b[m - k] * rat(k as i64);
                }
            }
            b.push(acc / rat(m as i64));
        }
        Ok(Series { coeffs: b })
    }

    /// `log(self)`; needs constant term 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::BadConstantTerm {
                expected: Rat::one(),
                found: self.coeffs[0].clone(),
            });
        }
        let a = &self.coeffs;
        let n = self.order();
        let mut c: Vec<Rat> = Vec::with_capacity(n + 1);
        c.push(Rat::zero());
        for m in 1..=n {
            let mut acc = Rat::zero();
            for k in 1..m {
                if !a[m - k].is_zero() {
                    acc += &c[k] * &a[m - k] * rat(k as i64);
                }
            }
            c.push(&a[m] - acc / rat(m as i64));
        }
        Ok(Series { coeffs: c })
    }

    /// Substitutes `z -> z^q`; the order becomes `q N`.
    ///
    /// # Panics
    ///
    /// Panics if `q` is zero.
    pub fn aerate(&self, q: usize) -> Self {
        assert!(q > 0, "aeration factor must be positive");
        let mut coeffs = vec![Rat::zero(); q * self.order() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[q * i] = c.clone();
        }
        Series { coeffs }
    }

    /// Substitutes `z -> -z`.
    pub fn negate_variable(&self) -> Self {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Keeps the coefficients of `z^(q m + r)` as a series in `z^m`.
    pub fn extract_section(&self, q: usize, r: usize) -> Self {
        assert!(q > 0 && r < q && r <= self.order());
        let top = (self.order() - r) / q;
        Series::from_fn(top, |m| self.coeffs[q * m + r].clone())
    }

    /// Substitutes `z -> c z`.
    pub fn scale_variable(&self, c: &Rat) -> Self {
        let mut p = Rat::one();
        Series::from_fn(self.order(), |i| {
            if i > 0 {
                p *= c;
            }
            &self.coeffs[i] * &p
        })
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rat::is_integer)
    }
}

// Cauchy product over a common denominator, truncated at order n.
fn mul_truncated(a: &[Rat], b: &[Rat], n: usize) -> Series {
    let (ai, da) = to_integers(&a[..=n.min(a.len() - 1)]);
    let (bi, db) = to_integers(&b[..=n.min(b.len() - 1)]);
    let den = da * db;
    let coeffs = (0..=n)
        .map(|k| {
            let mut acc = BigInt::zero();
            let lo = k.saturating_sub(bi.len() - 1);
            let hi = k.min(ai.len() - 1);
            for i in lo..=hi {
                let (x, y) = (&ai[i], &bi[k - i]);
                if !x.is_zero() && !y.is_zero() {
                    acc += x * y;
                }
            }
            Rat::new(acc, den.clone())
        })
        .collect();
    Series { coeffs }
}

fn to_integers(xs: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let den = xs.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints = xs
        .iter()
        .map(|x| x.numer() * (&den / x.denom()))
        .collect();
    (ints, den)
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        Series::from_fn(n, |i| &self.coeffs[i] + &rhs.coeffs[i])
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        Series::from_fn(n, |i| &self.coeffs[i] - &rhs.coeffs[i])
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.mul_series(rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $m(self, rhs: &Series) -> Series {
                (&self).$m(rhs)
            }
        }
        impl $tr<Series> for &Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

/// Solves `g = update(g)` for a contracting `update`.
///
/// Iterates from `seed`, raising the working order by one per step so that
/// step `i` fixes coefficient `i`, then checks that the residual
/// `update(g) - g` vanishes through order `order`.
pub fn solve_fixpoint<F>(update: F, seed: &Series, order: usize) -> Result<Series, SeriesError>
where
    F: Fn(&Series) -> Result<Series, SeriesError>,
{
    let mut g = seed.extend_with_zeros(order).truncate(0);
    for i in 0..=order {
        let next = update(&g.extend_with_zeros(i).truncate(i))?;
        if next.order() < i {
            return Err(SeriesError::NotContracting { order: next.order() + 1 });
        }
        g = next.truncate(i);
    }
    let check = update(&g)?;
    if check.order() < order {
        return Err(SeriesError::NotContracting { order: check.order() + 1 });
    }
    if let Some(k) = check.first_difference(&g) {
        return Err(SeriesError::NotContracting { order: k });
    }
    Ok(g)
}
