//! Ordinary Riordan arrays `(g, f)` and their B-functions.

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::fps::{Rat, Series, SeriesError, Valuation};
use crate::matrix::TriMatrix;

/// Errors from Riordan array operations.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum RiordanError {
    #[error("g must have constant term 1, found {0}")]
    BadG(Rat),
    #[error("f must have valuation 1 with linear coefficient 1 or -1, found {0}")]
    BadF(String),
    #[error("matrix of size {requested} needs truncation order {needed}, available {available}")]
    InsufficientTruncation {
        requested: usize,
        needed: usize,
        available: usize,
    },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// An ordinary Riordan array `(g, f)` with `g(0) = 1` and `f'(0) = +-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiordanArray {
    g: Series,
    f: Series,
}

impl RiordanArray {
    /// Validates and builds `(g, f)`.
    pub fn new(g: Series, f: Series) -> Result<Self, RiordanError> {
        check_normalized(&g, &f)?;
        Ok(RiordanArray { g, f })
    }

    /// The Pascal array `(1/(1-z), z/(1-z))`.
    pub fn pascal(order: usize) -> Self {
        let one_minus_z = Series::one(order) - Series::z(order);
        let g = one_minus_z.recip().expect("1 - z is a unit");
        let f = Series::z(order) * &g;
        RiordanArray { g, f }
    }

    /// The identity array `(1, z)`.
    pub fn identity(order: usize) -> Self {
        RiordanArray {
            g: Series::one(order),
            f: Series::z(order),
        }
    }

    /// The first column generating function.
    pub fn g(&self) -> &Series {
        &self.g
    }

    /// The multiplier function.
    pub fn f(&self) -> &Series {
        &self.f
    }

    /// The smaller of the two truncation orders.
    pub fn order(&self) -> usize {
        self.g.order().min(self.f.order())
    }

    /// Truncates both components.
    pub fn truncate(&self, order: usize) -> Self {
        RiordanArray {
            g: self.g.truncate(order),
            f: self.f.truncate(order),
        }
    }

    /// The leading `size x size` block `d_{n,k} = [z^n] g f^k`.
    pub fn build_matrix(&self, size: usize) -> Result<TriMatrix, RiordanError> {
        column_matrix(&self.g, &self.f, size)
    }

    /// Riordan product `(g, f) * (G, F) = (g G(f), F(f))`.
    pub fn multiply(&self, other: &RiordanArray) -> Result<Self, RiordanError> {
        let g = self.g.mul_series(&other.g.compose(&self.f)?);
        let f = other.f.compose(&self.f)?;
        RiordanArray::new(g, f)
    }

    /// Inverse `(1 / g(fbar), fbar)`.
    pub fn inverse(&self) -> Result<Self, RiordanError> {
        let fbar = self.f.comp_inverse()?;
        let g = self.g.compose(&fbar)?.recip()?;
        RiordanArray::new(g, fbar)
    }

    /// Fundamental theorem action `g * h(f)`.
    pub fn apply_ftra(&self, h: &Series) -> Result<Series, RiordanError> {
        Ok(self.g.mul_series(&h.compose(&self.f)?))
    }

    /// The A-sequence `z / fbar`.
    pub fn a_sequence(&self) -> Result<Series, RiordanError> {
        let fbar = self.f.comp_inverse()?;
        Ok(fbar.shift_down(1)?.recip()?)
    }

    /// The Z-sequence `((g - 1) / (z g))(fbar)`.
    pub fn z_sequence(&self) -> Result<Series, RiordanError> {
        let fbar = self.f.comp_inverse()?;
        let n = self.g.order();
        let zg = self.g.shift_up(1).truncate(n);
        let q = (&self.g - &Series::one(n)).div(&zg)?;
        Ok(q.compose(&fbar)?)
    }

    /// Checks `g(-f) g = 1` and `fbar = -f(-z)` through order `order`.
    pub fn is_pseudo_involution(&self, order: usize) -> PseudoInvolutionReport {
        pseudo_involution_report(&self.g, &self.f, order)
    }

    /// Checks that the inverse matrix equals the sign-twisted matrix.
    ///
    /// Returns the first entry where they differ.
    pub fn sign_twist_mismatch(&self, size: usize) -> Result<Option<(usize, usize)>, RiordanError> {
        let m = self.build_matrix(size)?;
        let inv = self.inverse()?.build_matrix(size)?;
        Ok(inv.first_difference(&m.sign_twisted()))
    }

    /// The integer `k` with `f = z g^k`, searched over `|k| <= 2N`.
    pub fn detect_k_bell(&self) -> Option<i64> {
        detect_k_bell(&self.g, &self.f)
    }
}

pub(crate) fn check_normalized(g: &Series, f: &Series) -> Result<(), RiordanError> {
    if !g.constant_term().is_one() {
        return Err(RiordanError::BadG(g.constant_term().clone()));
    }
    let ok = f.order() >= 1 && f.coeff(0).is_zero() && f.coeff(1).abs().is_one();
    if !ok {
        return Err(RiordanError::BadF(f.to_string()));
    }
    Ok(())
}

pub(crate) fn column_matrix(g: &Series, f: &Series, size: usize) -> Result<TriMatrix, RiordanError> {
    let available = g.order().min(f.order());
    if size == 0 {
        return Ok(TriMatrix::from_rows(Vec::new()));
    }
    if size - 1 > available {
        return Err(RiordanError::InsufficientTruncation {
            requested: size,
            needed: size - 1,
            available,
        });
    }
    let n = size - 1;
    let f = f.truncate(n);
    let mut col = g.truncate(n);
    let mut rows: Vec<Vec<Rat>> = (0..size).map(|i| Vec::with_capacity(i + 1)).collect();
    for k in 0..size {
        for (i, row) in rows.iter_mut().enumerate().skip(k) {
            row.push(col.coeff(i).clone());
        }
        if k + 1 < size {
            col = col.mul_series(&f);
        }
    }
    Ok(TriMatrix::from_rows(rows))
}

/// Which pseudo-involution identity failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvolutionIdentity {
    /// `g(-f) g = 1`.
    ReciprocalG,
    /// `fbar = -f(-z)`.
    InverseF,
}

/// Result of a pseudo-involution check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoInvolutionReport {
    /// Whether both identities hold through `checked_order`.
    pub holds: bool,
    /// Order through which the identities were checked.
    pub checked_order: usize,
    /// First failing identity and the order where it fails.
    pub first_failure: Option<(InvolutionIdentity, usize)>,
}

pub(crate) fn pseudo_involution_report(g: &Series, f: &Series, order: usize) -> PseudoInvolutionReport {
    let n = order.min(g.order()).min(f.order());
    let g = g.truncate(n);
    let f = f.truncate(n);
    let fail = |id, k| PseudoInvolutionReport {
        holds: false,
        checked_order: n,
        first_failure: Some((id, k)),
    };
    let minus_f = -&f;
    match g.compose(&minus_f) {
        Ok(gm) => {
            let prod = gm.mul_series(&g);
            if let Some(k) = prod.first_difference(&Series::one(n)) {
                return fail(InvolutionIdentity::ReciprocalG, k);
            }
        }
        Err(_) => return fail(InvolutionIdentity::ReciprocalG, 0),
    }
    match f.comp_inverse() {
        Ok(fbar) => {
            let twisted = -&f.negate_variable();
            if let Some(k) = fbar.first_difference(&twisted) {
                return fail(InvolutionIdentity::InverseF, k);
            }
        }
        Err(_) => return fail(InvolutionIdentity::InverseF, 1),
    }
    PseudoInvolutionReport {
        holds: true,
        checked_order: n,
        first_failure: None,
    }
}

pub(crate) fn detect_k_bell(g: &Series, f: &Series) -> Option<i64> {
    let n = g.order().min(f.order());
    if n < 1 || !f.coeff(1).is_one() {
        return None;
    }
    let quotient = f.shift_down(1).ok()?;
    let lg = g.truncate(n - 1).log().ok()?;
    let lq = quotient.log().ok()?;
    let k = match lg.valuation() {
        Valuation::AllZero => {
            return lq.is_zero().then_some(0);
        }
        Valuation::Finite(v) => {
            let k = lq.coeff(v) / lg.coeff(v);
            if !k.is_integer() {
                return None;
            }
            k.to_integer().to_i64()?
        }
    };
    if k.unsigned_abs() > 2 * n as u64 {
        return None;
    }
    let candidate = g.pow_int(k).ok()?.shift_up(1);
    f.agrees_with(&candidate).then_some(k)
}

/// B-function of a pseudo-involutory `f`, extracted from `f - z = z f B(z f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BReport {
    /// `B` truncated at order `floor((N - 2) / 2)`.
    pub b: Series,
    /// Truncation order of `f` that was used.
    pub verified_order: usize,
    /// Odd orders where the consistency check failed.
    pub residual_orders: Vec<usize>,
}

impl BReport {
    /// Whether `f` satisfied every consistency check.
    pub fn is_consistent(&self) -> bool {
        self.residual_orders.is_empty()
    }
}

/// Solves `f - z = sum_j b_j (z f)^(j+1)` order by order.
///
/// Even orders `m` determine `b_{(m-2)/2}`; odd orders must already cancel and
/// are reported in `residual_orders` when they do not.
pub fn b_function_from_f(f: &Series) -> Result<BReport, RiordanError> {
    let n = f.order();
    if n < 2 || !f.coeff(0).is_zero() || !f.coeff(1).is_one() {
        return Err(RiordanError::BadF(f.to_string()));
    }
    let mut residual = f - &Series::z(n);
    let zf = f.shift_up(1).truncate(n);
    let mut power = zf.clone();
    let len = (n - 2) / 2 + 1;
    let mut b = Vec::with_capacity(len);
    let mut residual_orders = Vec::new();
    for j in 0..len {
        let m = 2 * j + 2;
        if !residual.coeff(m - 1).is_zero() {
            residual_orders.push(m - 1);
        }
        let bj = residual.coeff(m).clone();
        if !bj.is_zero() {
            residual = &residual - &power.scale(&bj);
        }
        b.push(bj);
        if j + 1 < len {
            power = power.mul_series(&zf);
        }
    }
    if n % 2 == 1 && !residual.coeff(n).is_zero() {
        residual_orders.push(n);
    }
    Ok(BReport {
        b: Series::from_coeffs(b),
        verified_order: n,
        residual_orders,
    })
}

/// Cells that violate a recurrence check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecurrenceReport {
    /// Number of cells checked.
    pub checked: usize,
    /// Cells `(n, k)` where the recurrence fails.
    pub failures: Vec<(usize, usize)>,
}

impl RecurrenceReport {
    /// Whether no cell failed.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `d_{n+1,k+1} = d_{n,k} + sum_j b_j d_{n-j,k+j+1}`; missing `b_j` count as zero.
pub fn verify_b_recurrence(m: &TriMatrix, b: &[Rat]) -> RecurrenceReport {
    let mut report = RecurrenceReport::default();
    for n in 0..m.size().saturating_sub(1) {
        for k in 0..=n {
            let mut rhs = m.get(n, k);
            for (j, bj) in b.iter().enumerate() {
                if j > n || k + j + 1 > n - j {
                    break;
                }
                rhs += bj * m.get(n - j, k + j + 1);
            }
            report.checked += 1;
            if m.get(n + 1, k + 1) != rhs {
                report.failures.push((n + 1, k + 1));
            }
        }
    }
    report
}

/// Checks `d_{n+1,k+1} = sum_j a_j d_{n,k+j}`.
pub fn verify_a_recurrence(m: &TriMatrix, a: &Series) -> RecurrenceReport {
    let mut report = RecurrenceReport::default();
    for n in 0..m.size().saturating_sub(1) {
        for k in 0..=n {
            if n - k > a.order() {
                continue;
            }
            let rhs = (0..=n - k).fold(Rat::zero(), |acc, j| acc + a.coeff(j) * m.get(n, k + j));
            report.checked += 1;
            if m.get(n + 1, k + 1) != rhs {
                report.failures.push((n + 1, k + 1));
            }
        }
    }
    report
}

/// Checks `d_{n+1,0} = sum_j zeta_j d_{n,j}`.
pub fn verify_z_recurrence(m: &TriMatrix, zeta: &Series) -> RecurrenceReport {
    let mut report = RecurrenceReport::default();
    for n in 0..m.size().saturating_sub(1) {
        if n > zeta.order() {
            continue;
        }
        let rhs = (0..=n).fold(Rat::zero(), |acc, j| acc + zeta.coeff(j) * m.get(n, j));
        report.checked += 1;
        if m.get(n + 1, 0) != rhs {
            report.failures.push((n + 1, 0));
        }
    }
    report
}

