//! Chebyshev polynomials and the polynomial families `p_k` and `P_l`.
//!
//! `p_k` is defined by `z^(k+1) + z^(-(k+1)) - 2 = w p_k(w)` with
//! `w = (z - 1)^2 / z`, and `P_l = p_l - p_{l-1}` satisfies `P_l^2 = p_{2l}`.

use num_traits::{One, Zero};

use crate::fps::{binomial, rat, ratio, Rat, Series};
use crate::matrix::TriMatrix;
use crate::poly::Poly;
use crate::riordan::RiordanArray;

/// Chebyshev polynomial of the second kind `U_n(x)`; `U_{-1} = 0`.
pub fn cheb_u(n: i64) -> Poly {
    assert!(n >= -1, "U_n is defined here for n >= -1");
    let two_x = Poly::from_ints(&[0, 2]);
    let (mut prev, mut cur) = (Poly::zero(), Poly::from_ints(&[1]));
    if n == -1 {
        return prev;
    }
    for _ in 0..n {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Chebyshev polynomial of the first kind `T_n(x)`.
pub fn cheb_t(n: usize) -> Poly {
    let two_x = Poly::from_ints(&[0, 2]);
    let (mut prev, mut cur) = (Poly::from_ints(&[1]), Poly::from_ints(&[0, 1]));
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `c_{k,n}`: coefficient of `z^n` in `U_k(z/2)`.
pub fn cheb_coeff(k: usize, n: usize) -> Rat {
    if n > k || (k - n) % 2 == 1 {
        return Rat::zero();
    }
    let m = (k + n) / 2;
    let sign = if (k - n) / 2 % 2 == 0 { 1 } else { -1 };
    rat(sign) * Rat::from_integer(binomial(m as i64, n as i64))
}

/// `U_k(z/2)` from the closed-form coefficients.
pub fn cheb_u_half(k: usize) -> Poly {
    Poly::new((0..=k).map(|n| cheb_coeff(k, n)).collect())
}

/// Triangle of `c_{k,n}`.
pub fn cheb_table(size: usize) -> TriMatrix {
    TriMatrix::from_fn(size, cheb_coeff)
}

/// The Riordan array `(1/(1+z^2), z/(1+z^2))` whose entries are `c_{k,n}`.
pub fn cheb_array(order: usize) -> RiordanArray {
    let den = Poly::from_ints(&[1, 0, 1]).to_series(order);
    let g = den.recip().expect("unit constant term");
    let f = Series::z(order).mul_series(&g);
    RiordanArray::new(g, f).expect("normalized")
}

/// Coefficient of `z^j` in `p_k`: `(k+1)/(j+1) C(k+j+1, 2j+1)`.
pub fn p_coeff(k: usize, j: usize) -> Rat {
    ratio(k as i64 + 1, j as i64 + 1) * Rat::from_integer(binomial((k + j + 1) as i64, (2 * j + 1) as i64))
}

/// `p_k`; `p_{-1} = 0`.
pub fn p_poly(k: i64) -> Poly {
    assert!(k >= -1, "p_k is defined here for k >= -1");
    if k < 0 {
        return Poly::zero();
    }
    let k = k as usize;
    Poly::new((0..=k).map(|j| p_coeff(k, j)).collect())
}

/// Coefficient of `z^j` in `P_l`: `(2l+1)/(2j+1) C(l+j, 2j)`.
pub fn big_p_coeff(l: usize, j: usize) -> Rat {
    ratio(2 * l as i64 + 1, 2 * j as i64 + 1) * Rat::from_integer(binomial((l + j) as i64, (2 * j) as i64))
}

/// `P_l`; `P_{-1} = 0`.
pub fn big_p_poly(l: i64) -> Poly {
    assert!(l >= -1, "P_l is defined here for l >= -1");
    if l < 0 {
        return Poly::zero();
    }
    let l = l as usize;
    Poly::new((0..=l).map(|j| big_p_coeff(l, j)).collect())
}

/// Triangle of `p_k` coefficients.
pub fn p_table(size: usize) -> TriMatrix {
    TriMatrix::from_fn(size, p_coeff)
}

/// Triangle of `P_l` coefficients.
pub fn big_p_table(size: usize) -> TriMatrix {
    TriMatrix::from_fn(size, big_p_coeff)
}

fn over_one_minus_z(num: &[i64], power: i64, order: usize) -> Series {
    let base = Poly::from_ints(&[1, -1]).to_series(order);
    Poly::from_ints(num)
        .to_series(order)
        .mul_series(&base.pow_int(-power).expect("unit constant term"))
}

/// The Riordan array `((1+z)/(1-z)^3, z/(1-z)^2)` whose rows are the `p_k`.
pub fn p_array(order: usize) -> RiordanArray {
    let g = over_one_minus_z(&[1, 1], 3, order);
    let f = over_one_minus_z(&[0, 1], 2, order);
    RiordanArray::new(g, f).expect("normalized")
}

/// The Riordan array `((1+z)/(1-z)^2, z/(1-z)^2)` whose rows are the `P_l`.
pub fn big_p_array(order: usize) -> RiordanArray {
    let g = over_one_minus_z(&[1, 1], 2, order);
    let f = over_one_minus_z(&[0, 1], 2, order);
    RiordanArray::new(g, f).expect("normalized")
}

/// `x = (z + 2) / 2`, the argument in the Chebyshev forms of `p_k`.
pub fn half_shift() -> Poly {
    Poly::new(vec![Rat::one(), ratio(1, 2)])
}

/// `p_k` from `U_l(x) + U_{l-1}(x)` (even `k = 2l`) or `(z + 4) U_l(x)^2` (odd `k = 2l + 1`).
pub fn p_poly_from_chebyshev(k: usize) -> Poly {
    let x = half_shift();
    let l = (k / 2) as i64;
    if k % 2 == 0 {
        let s = &cheb_u(l).compose(&x) + &cheb_u(l - 1).compose(&x);
        &s * &s
    } else {
        let u = cheb_u(l).compose(&x);
        &Poly::from_ints(&[4, 1]) * &(&u * &u)
    }
}
