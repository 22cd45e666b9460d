//! Named generating functions used throughout the catalog.

use crate::fps::{rat, solve_fixpoint, Rat, Series, SeriesError};
use crate::laurent::{LaurentPoly, LaurentRational};
use crate::poly::Poly;
use crate::theorems::ogf_root;

/// `T_k` with `T_k = 1 + z T_k^k`, for any integer `k`.
///
/// `T_0 = 1 + z`, and negative indices use `T_{-m}(z) = 1 / T_{m+1}(-z)`.
pub fn tree(k: i64, order: usize) -> Result<Series, SeriesError> {
    match k {
        0 => Ok(Poly::from_ints(&[1, 1]).to_series(order)),
        k if k < 0 => tree(1 - k, order)?.negate_variable().recip(),
        _ => solve_fixpoint(
            |t| Ok(&Series::one(t.order()) + &t.pow_int(k)?.shift_up(1).truncate(t.order())),
            &Series::one(0),
            order,
        ),
    }
}

/// Catalan generating function `C = T_2`.
pub fn catalan(order: usize) -> Result<Series, SeriesError> {
    tree(2, order)
}

/// `m_k = 1 + k z m_k + z^2 m_k^2`; `k = 1` gives the Motzkin numbers.
pub fn k_motzkin(k: &Rat, order: usize) -> Result<Series, SeriesError> {
    solve_fixpoint(
        |m| {
            let n = m.order();
            let lin = m.scale(k).shift_up(1).truncate(n);
            let quad = m.mul_series(m).shift_up(2).truncate(n);
            Ok(&(&Series::one(n) + &lin) + &quad)
        },
        &Series::one(0),
        order,
    )
}

/// Motzkin generating function `m`.
pub fn motzkin(order: usize) -> Result<Series, SeriesError> {
    k_motzkin(&rat(1), order)
}

/// Large Schroeder generating function `r = 1 + z r + z r^2`.
pub fn schroder(order: usize) -> Result<Series, SeriesError> {
    gen_schroder(2, order)
}

/// `r_k = 1 + z (r_k^(k-1) + r_k^k)`.
pub fn gen_schroder(k: i64, order: usize) -> Result<Series, SeriesError> {
    ogf_root(&gen_schroder_gamma(k), order)
}

/// `z^(k-1) + z^k`.
pub fn gen_schroder_gamma(k: i64) -> LaurentRational {
    LaurentRational::from_laurent(LaurentPoly::from_int_terms(&[(k - 1, 1), (k, 1)]))
}

/// `t_k = 2 T_k - 1`.
pub fn double_root(k: i64, order: usize) -> Result<Series, SeriesError> {
    let t = tree(k, order)?;
    Ok(&t.scale(&rat(2)) - &Series::one(order))
}

/// `u_k = 1 + z (1 + u_k^k)`.
pub fn double_leaf(k: i64, order: usize) -> Result<Series, SeriesError> {
    ogf_root(&LaurentRational::from_laurent(LaurentPoly::from_int_terms(&[(0, 1), (k, 1)])), order)
}

/// `v_k = 1 + z (v_k + v_k^k)`; negative indices use `v_{-k}(z) = 1 / u_{k+1}(-z)`.
pub fn v_series(k: i64, order: usize) -> Result<Series, SeriesError> {
    if k < 0 {
        return double_leaf(1 - k, order)?.negate_variable().recip();
    }
    ogf_root(&LaurentRational::from_laurent(LaurentPoly::from_int_terms(&[(1, 1), (k, 1)])), order)
}

/// `1 / (1 - z - z^2)`.
pub fn fibonacci(order: usize) -> Series {
    Poly::from_ints(&[1, -1, -1])
        .to_series(order)
        .recip()
        .expect("unit constant term")
}

/// `1 - z + z^2`.
pub fn motzkin_trinomial() -> LaurentPoly {
    LaurentPoly::from_int_terms(&[(0, 1), (1, -1), (2, 1)])
}
