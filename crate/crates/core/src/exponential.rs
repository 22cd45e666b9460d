//! Exponential Riordan arrays `[g, f]` and their reduced form.
//!
//! Both components are exponential generating functions, stored as the
//! ordinary coefficient prefixes of the functions themselves.

use num_traits::Zero;

use crate::fps::{binomial, factorial, Rat, Series};
use crate::matrix::TriMatrix;
use crate::riordan::{
    b_function_from_f, check_normalized, column_matrix, detect_k_bell, pseudo_involution_report,
    PseudoInvolutionReport, RecurrenceReport, RiordanArray, RiordanError,
};

/// An exponential Riordan array `[g, f]` with `g(0) = 1` and `f'(0) = +-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpRiordanArray {
    g: Series,
    f: Series,
}

impl ExpRiordanArray {
    /// Validates and builds `[g, f]`.
    pub fn new(g: Series, f: Series) -> Result<Self, RiordanError> {
        check_normalized(&g, &f)?;
        Ok(ExpRiordanArray { g, f })
    }

    /// The exponential Pascal array `[e^z, z]`.
    pub fn pascal(order: usize) -> Self {
        ExpRiordanArray {
            g: Series::z(order).exp().expect("z has no constant term"),
            f: Series::z(order),
        }
    }

    /// The first column EGF.
    pub fn g(&self) -> &Series {
        &self.g
    }

    /// The multiplier EGF.
    pub fn f(&self) -> &Series {
        &self.f
    }

    /// The smaller of the two truncation orders.
    pub fn order(&self) -> usize {
        self.g.order().min(self.f.order())
    }

    /// The same pair viewed as an ordinary array.
    pub fn as_ordinary(&self) -> RiordanArray {
        RiordanArray::new(self.g.clone(), self.f.clone()).expect("validated on construction")
    }

    /// Entries `a_{n,k} = (n! / k!) [z^n] g f^k`.
    pub fn build_exp_matrix(&self, size: usize) -> Result<TriMatrix, RiordanError> {
        let d = column_matrix(&self.g, &self.f, size)?;
        let facts: Vec<Rat> = (0..size).map(|i| Rat::from_integer(factorial(i))).collect();
        Ok(TriMatrix::from_fn(size, |n, k| {
            d.get(n, k) * &facts[n] / &facts[k]
        }))
    }

    /// Reduced entries `alpha_{n,k} = a_{n,k} / C(n, k)`.
    pub fn reduce(&self, size: usize) -> Result<ReducedArray, RiordanError> {
        let a = self.build_exp_matrix(size)?;
        Ok(ReducedArray::from_exp_matrix(&a))
    }

    /// Product `[g, f] [G, F] = [g G(f), F(f)]`.
    pub fn multiply(&self, other: &ExpRiordanArray) -> Result<Self, RiordanError> {
        let p = self.as_ordinary().multiply(&other.as_ordinary())?;
        ExpRiordanArray::new(p.g().clone(), p.f().clone())
    }

    /// Inverse `[1 / g(fbar), fbar]`.
    pub fn inverse(&self) -> Result<Self, RiordanError> {
        let p = self.as_ordinary().inverse()?;
        ExpRiordanArray::new(p.g().clone(), p.f().clone())
    }

    /// Checks `g(-f) g = 1` and `fbar = -f(-z)` through order `order`.
    pub fn is_pseudo_involution(&self, order: usize) -> PseudoInvolutionReport {
        pseudo_involution_report(&self.g, &self.f, order)
    }

    /// Checks that the inverse matrix equals the sign-twisted matrix.
    pub fn sign_twist_mismatch(&self, size: usize) -> Result<Option<(usize, usize)>, RiordanError> {
        let m = self.build_exp_matrix(size)?;
        let inv = self.inverse()?.build_exp_matrix(size)?;
        Ok(inv.first_difference(&m.sign_twisted()))
    }

    /// The integer `k` with `f = z g^k`.
    pub fn detect_k_bell(&self) -> Option<i64> {
        detect_k_bell(&self.g, &self.f)
    }
}

/// The reduced matrix `alpha_{n,k} = a_{n,k} / C(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedArray {
    matrix: TriMatrix,
}

impl ReducedArray {
    /// Reduces an exponential Riordan matrix.
    pub fn from_exp_matrix(a: &TriMatrix) -> Self {
        ReducedArray {
            matrix: TriMatrix::from_fn(a.size(), |n, k| {
                a.get(n, k) / Rat::from_integer(binomial(n as i64, k as i64))
            }),
        }
    }

    /// The reduced entries.
    pub fn matrix(&self) -> &TriMatrix {
        &self.matrix
    }
}

/// The sequence `beta_j = (2j + 1)! b_j` for a pseudo-involutory EGF `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaReport {
    /// `beta_0, beta_1, ...`.
    pub beta: Vec<Rat>,
    /// The underlying B-function coefficients.
    pub b: Series,
    /// Odd orders where the consistency check on `f` failed.
    pub residual_orders: Vec<usize>,
}

/// Computes `beta_j = (2j + 1)! b_j` from the B-function of `f`.
pub fn beta_sequence(f: &Series) -> Result<BetaReport, RiordanError> {
    let report = b_function_from_f(f)?;
    let beta = report
        .b
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, b)| b * Rat::from_integer(factorial(2 * j + 1)))
        .collect();
    Ok(BetaReport {
        beta,
        b: report.b,
        residual_orders: report.residual_orders,
    })
}

/// Checks `alpha_{n+1,k+1} = alpha_{n,k} + sum_j C(n-k, 2j+1) beta_j alpha_{n-j,k+j+1}`.
pub fn verify_reduced_recurrence(r: &ReducedArray, beta: &[Rat]) -> RecurrenceReport {
    let m = &r.matrix;
    let mut report = RecurrenceReport::default();
    for n in 0..m.size().saturating_sub(1) {
        for k in 0..=n {
            let mut rhs = m.get(n, k);
            for (j, bj) in beta.iter().enumerate() {
                if j > n || k + 2 * j + 1 > n {
                    break;
                }
                if bj.is_zero() {
                    continue;
                }
                let c = binomial((n - k) as i64, (2 * j + 1) as i64);
                rhs += Rat::from_integer(c) * bj * m.get(n - j, k + j + 1);
            }
            report.checked += 1;
            if m.get(n + 1, k + 1) != rhs {
                report.failures.push((n + 1, k + 1));
            }
        }
    }
    report
}

