//! Constructions of pseudo-involutions from palindromic data and closed forms
//! for their B-functions.
//!
//! A pseudo-involution `(g, z g^(d-1))` with `g = 1 + z gamma(g)` (or
//! `[g, z g^d]` with `g = exp(z gamma(g))`) is driven by a function `gamma`
//! satisfying `gamma(z) / gamma(1/z) = z^d`. The B-function of the companion
//! then follows from the auxiliary series `delta^2`, `z D^2` (ordinary case)
//! or `epsilon`, `z E` (exponential case).

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::families::chebyshev::{big_p_coeff, big_p_poly, cheb_coeff, p_poly};
use crate::fps::{rat, rat_powi, ratio, Rat, Series, SeriesError};
use crate::laurent::{DargaResult, LaurentPoly, LaurentRational};
use crate::poly::Poly;
use crate::riordan::{b_function_from_f, RiordanArray, RiordanError};

/// Errors from the constructions in this module.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum TheoremError {
    #[error("gamma(1) = 0, so delta^2 has no usable constant term")]
    GammaVanishesAtOne,
    #[error("gamma is not a generalized palindrome")]
    NotPalindromic,
    #[error("delta^2(0) = {0} is not a rational square, so D is irrational")]
    NonSquareConstant(Rat),
    #[error("coefficient of z^{index} lies outside the support required by the twin-power identity")]
    SupportViolation { index: usize },
    #[error("construction check failed: {0}")]
    CheckFailed(String),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Riordan(#[from] RiordanError),
}

/// Whether generating functions are ordinary or exponential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratingKind {
    /// `g = 1 + z gamma(g)`.
    Ordinary,
    /// `g = exp(z gamma(g))`.
    Exponential,
}

/// Solves `g = 1 + z gamma(g)` through order `order`.
pub fn ogf_root(gamma: &LaurentRational, order: usize) -> Result<Series, SeriesError> {
    crate::fps::solve_fixpoint(
        |g| {
            let zg = gamma.eval_series(g)?.shift_up(1).truncate(g.order());
            Ok(&Series::one(g.order()) + &zg)
        },
        &Series::one(0),
        order,
    )
}

/// Solves `g = exp(z gamma(g))` through order `order`.
pub fn egf_root(gamma: &LaurentRational, order: usize) -> Result<Series, SeriesError> {
    crate::fps::solve_fixpoint(
        |g| {
            gamma
                .eval_series(g)?
                .shift_up(1)
                .truncate(g.order())
                .exp()
        },
        &Series::one(0),
        order,
    )
}

/// The companion of `gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Companion {
    /// The root `g`.
    pub g: Series,
    /// `f` from the general formula.
    pub f: Series,
    /// `z g^(d-1)` (ordinary) or `z g^d` (exponential) when `gamma` has darga `d`.
    pub f_shortcut: Option<Series>,
    /// The darga of `gamma`, if any.
    pub darga: Option<i64>,
}

/// Builds `g` and the unique `f` making `(g, f)` a pseudo-involution.
///
/// The general formula is `f = z gamma(g) / (g gamma(1/g))` in the ordinary
/// case and `f = z gamma(g) / gamma(1/g)` in the exponential case.
pub fn companion_from_gamma(
    gamma: &LaurentRational,
    kind: GeneratingKind,
    order: usize,
) -> Result<Companion, TheoremError> {
    let g = match kind {
        GeneratingKind::Ordinary => ogf_root(gamma, order)?,
        GeneratingKind::Exponential => egf_root(gamma, order)?,
    };
    let zgamma = gamma.eval_series(&g)?.shift_up(1).truncate(order);
    let gamma_inv = gamma.eval_series(&g.recip()?)?;
    let den = match kind {
        GeneratingKind::Ordinary => g.mul_series(&gamma_inv),
        GeneratingKind::Exponential => gamma_inv,
    };
    let f = zgamma.div(&den)?;
    let darga = gamma.darga().darga;
    let f_shortcut = match darga {
        Some(d) => {
            let e = match kind {
                GeneratingKind::Ordinary => d - 1,
                GeneratingKind::Exponential => d,
            };
            Some(g.pow_int(e)?.shift_up(1).truncate(order))
        }
        None => None,
    };
    Ok(Companion {
        g,
        f,
        f_shortcut,
        darga,
    })
}

/// Darga of `gamma`.
pub fn darga(gamma: &LaurentRational) -> DargaResult {
    gamma.darga()
}

/// Darga of `gamma = outer * eta(inner)` where `inner` has darga 0.
///
/// Composing with a darga-0 argument does not change the darga, so the
/// answer is the darga of `outer`.
pub fn darga_with_darga_zero_factor(
    outer: &LaurentRational,
    inner: &LaurentRational,
) -> Result<DargaResult, TheoremError> {
    if inner.darga().darga != Some(0) {
        return Err(TheoremError::CheckFailed(
            "inner argument does not have darga 0".into(),
        ));
    }
    Ok(outer.darga())
}

// A Laurent polynomial symmetric under z -> 1/z, rewritten in w = (z-1)^2/z.
fn symmetric_to_w(l: &LaurentPoly) -> Result<Poly, TheoremError> {
    if !l.is_symmetric() {
        return Err(TheoremError::NotPalindromic);
    }
    let mut out = Poly::constant(l.coeff(0));
    let top = l.max_exp().unwrap_or(0);
    for j in 1..=top {
        let c = l.coeff(j);
        if c.is_zero() {
            continue;
        }
        let basis = &(&Poly::monomial(Rat::one(), 1) * &p_poly(j - 1)) + &Poly::constant(rat(2));
        out = &out + &basis.scale(&c);
    }
    Ok(out)
}

fn centered_square(p: &LaurentPoly) -> LaurentPoly {
    let s = p.min_exp().unwrap() + p.max_exp().unwrap();
    (p * p).shift(-s)
}

/// `delta^2(w)` with `delta^2((z-1)^2/z) = gamma(z)^2 / z^d`, as a series in `w`.
///
/// Writes `gamma = (num den^*) / (den den^*)`; both factors are palindromic,
/// so their centered squares are symmetric Laurent polynomials and rewrite
/// through `z^j + z^(-j) - 2 = w p_{j-1}(w)`.
pub fn delta_squared_from_gamma(
    gamma: &LaurentRational,
    d: i64,
    order: usize,
) -> Result<Series, TheoremError> {
    let g1 = gamma.eval(&Rat::one()).ok_or(TheoremError::GammaVanishesAtOne)?;
    if g1.is_zero() {
        return Err(TheoremError::GammaVanishesAtOne);
    }
    if gamma.darga().darga != Some(d) {
        return Err(TheoremError::NotPalindromic);
    }
    let dstar = gamma.den().reciprocal();
    let top = gamma.num() * &dstar;
    let bottom = gamma.den() * &dstar;
    let pn = symmetric_to_w(&centered_square(&top))?;
    let pd = symmetric_to_w(&centered_square(&bottom))?;
    Ok(pn.to_series(order).div(&pd.to_series(order))?)
}

/// `z D^2` and, when `delta^2(0)` is a rational square, `D` itself.
#[derive(Clone, Debug, PartialEq)]
pub struct DFunction {
    /// `z D^2`, the compositional inverse of `z / delta^2`.
    pub zd2: Series,
    /// `D` on the branch with `D(0) > 0`.
    pub d: Result<Series, TheoremError>,
}

/// Computes `z D^2 = inverse(z / delta^2)` and `D = sqrt(z D^2 / z)`.
pub fn d_from_delta_squared(delta_sq: &Series) -> Result<DFunction, TheoremError> {
    let zd2 = delta_sq.recip()?.shift_up(1).comp_inverse()?;
    let d = match zd2.shift_down(1)?.sqrt() {
        Ok(d) => Ok(d),
        Err(SeriesError::NonSquareLeadingCoefficient(c)) => Err(TheoremError::NonSquareConstant(c)),
        Err(e) => Err(e.into()),
    };
    Ok(DFunction { zd2, d })
}

fn rat_sign(x: &Rat) -> Rat {
    if x.is_negative() {
        rat(-1)
    } else {
        rat(1)
    }
}

/// B-function of `z g^(d-1)` for `g = 1 + z gamma(g)`, through order `order`.
///
/// Uses `z B^2 = (z p_{|d-1|-1}) o (z D^2)`. The square root is taken on the
/// branch whose constant term `(d-1) gamma(1)` matches `[z^2] z g^(d-1)`.
pub fn b_function_via_ogf_theorem(gamma: &LaurentRational, order: usize) -> Result<Series, TheoremError> {
    let d = gamma.darga().darga.ok_or(TheoremError::NotPalindromic)?;
    let g1 = gamma.eval(&Rat::one()).ok_or(TheoremError::GammaVanishesAtOne)?;
    if g1.is_zero() {
        return Err(TheoremError::GammaVanishesAtOne);
    }
    if d == 1 {
        return Ok(Series::zero(order));
    }
    let delta_sq = delta_squared_from_gamma(gamma, d, order)?;
    let dfun = d_from_delta_squared(&delta_sq)?;
    let zp = &Poly::monomial(Rat::one(), 1) * &p_poly((d - 1).abs() - 1);
    let zb2 = zp.compose_series(&dfun.zd2)?;
    let b = zb2.shift_down(1)?.sqrt()?;
    let sign = rat_sign(&g1) * rat(if d > 1 { 1 } else { -1 });
    Ok(b.scale(&sign))
}

/// B-function of `z g^d` for `g = exp(z gamma(g))`, through order `order`.
///
/// With `epsilon(z) = gamma(e^z) / e^(d z / 2)` and `z E = inverse(z / epsilon)`,
/// `b_j` is the coefficient of `z^(2j+1)` in `2 sinh((d/2) z E)`.
pub fn b_function_via_egf_theorem(gamma: &LaurentRational, order: usize) -> Result<Series, TheoremError> {
    let d = gamma.darga().darga.ok_or(TheoremError::NotPalindromic)?;
    let n = 2 * order + 1;
    let ez = Series::z(n).exp()?;
    let half = Series::z(n).scale(&ratio(d, 2)).exp()?;
    let eps = gamma.eval_series(&ez)?.div(&half)?;
    let ze = eps.recip()?.shift_up(1).truncate(n).comp_inverse()?;
    let x = ze.scale(&ratio(d, 2));
    let y = &x.exp()? - &(-&x).exp()?;
    for i in (0..=n).step_by(2) {
        if !y.coeff(i).is_zero() {
            return Err(TheoremError::CheckFailed(format!(
                "2 sinh((d/2) z E) has a nonzero even coefficient at order {i}"
            )));
        }
    }
    Ok(y.extract_section(2, 1))
}

/// Direction of the twin-power map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwinDirection {
    /// From the B-function of the aerated `f` to that of `h`.
    BfToBh,
    /// From the B-function of `h` to that of the aerated `f`.
    BhToBf,
}

/// Maps between `B_f` and `B_h` through `(z B_h^2) o z^(2l+1) = (z P_l^2) o (z B_f^2)`.
///
/// Both directions factor through `D` with `B_f = z^l D(z^(2l+1))` and
/// `B_h = D P_l(z D^2)`, which is the same identity read in the variable
/// `z^(2l+1)`.
pub fn twin_powers(b: &Series, l: usize, direction: TwinDirection) -> Result<Series, TheoremError> {
    let q = 2 * l + 1;
    match direction {
        TwinDirection::BfToBh => {
            for (i, c) in b.coeffs().iter().enumerate() {
                if !c.is_zero() && (i < l || (i - l) % q != 0) {
                    return Err(TheoremError::SupportViolation { index: i });
                }
            }
            if b.order() < l {
                return Ok(Series::zero(0));
            }
            let d = b.extract_section(q, l);
            Ok(bh_bf_via_d(&d, l)?.0)
        }
        TwinDirection::BhToBf => {
            let n = b.order();
            if b.is_zero() {
                return Ok(Series::zero(q * n + l));
            }
            let zp2 = &Poly::monomial(Rat::one(), 1) * &big_p_poly(l as i64).pow(2);
            let zb2 = b.mul_series(b).shift_up(1);
            let inv = zp2.to_series(n + 1).comp_inverse()?;
            let zd2 = inv.compose(&zb2)?;
            let lead = b.coeffs().iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(Rat::one);
            let d = zd2.shift_down(1)?.sqrt()?.scale(&rat_sign(&lead));
            Ok(d.aerate(q).shift_up(l))
        }
    }
}

/// `(B_h, B_f) = (D P_l(z D^2), z^l D(z^(2l+1)))`.
pub fn bh_bf_via_d(d: &Series, l: usize) -> Result<(Series, Series), TheoremError> {
    let zd2 = d.mul_series(d).shift_up(1);
    let bh = d.mul_series(&big_p_poly(l as i64).compose_series(&zd2)?);
    let bf = d.aerate(2 * l + 1).shift_up(l);
    Ok((bh, bf))
}

/// `B_{z t_k^(k-1)} = sum_n 2^(n+1) c_{k-2,n} T_k^((k+n)/2)` for the double-root family.
pub fn double_root_b(k: usize, order: usize) -> Result<Series, TheoremError> {
    if k == 0 {
        return Err(TheoremError::BadParameter("k must be positive".into()));
    }
    if k == 1 {
        return Ok(Series::zero(order));
    }
    let t = crate::families::series::tree(k as i64, order)?;
    let mut acc = Series::zero(order);
    for n in 0..=k - 2 {
        let c = cheb_coeff(k - 2, n);
        if c.is_zero() {
            continue;
        }
        let term = t.pow_int(((k + n) / 2) as i64)?;
        acc = &acc + &term.scale(&(c * rat_powi(&rat(2), n as i64 + 1)));
    }
    Ok(acc)
}

/// Output of the quadratic-`f` construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadB {
    /// `t` with `(t, z t)` a pseudo-involution.
    pub t: Series,
    /// `h = z t`.
    pub h: Series,
    /// The closed form of `B_h`.
    pub b: Series,
}

/// For `f = z(a + b f + c f^2)`: `t = 1 + (b/a) f`, `h = z t`, `B_h = b C(a c z)`.
///
/// Checks the closed form against the triangular solve on `h`.
pub fn quad_b(a: &Rat, b: &Rat, c: &Rat, order: usize) -> Result<QuadB, TheoremError> {
    if a.is_zero() {
        return Err(TheoremError::BadParameter("a must be nonzero".into()));
    }
    let (a, b, c) = (a.clone(), b.clone(), c.clone());
    let f = crate::fps::solve_fixpoint(
        |f| {
            let n = f.order();
            let inner = &(&Series::constant(a.clone(), n) + &f.scale(&b)) + &f.mul_series(f).scale(&c);
            Ok(inner.shift_up(1).truncate(n))
        },
        &Series::zero(0),
        order,
    )?;
    let t = &Series::one(order) + &f.scale(&(&b / &a));
    quad_finish(t, &b, &(&a * &c), order)
}

/// For `g = 1 + z(a + b g + c g^2)`: `t = 1 + ((b+2c)/(a+b+c))(g-1)` and
/// `B_{z t} = (b+2c) C((a+b+c) c z)`.
pub fn large_little_b(a: &Rat, b: &Rat, c: &Rat, order: usize) -> Result<QuadB, TheoremError> {
    let s = a + b + c;
    if s.is_zero() {
        return Err(TheoremError::BadParameter("a + b + c must be nonzero".into()));
    }
    let b2 = b + c * rat(2);
    quad_b(&s, &b2, c, order)
}

fn quad_finish(t: Series, b: &Rat, ac: &Rat, order: usize) -> Result<QuadB, TheoremError> {
    let h = t.shift_up(1).truncate(order);
    let bo = order.saturating_sub(2) / 2;
    let cat = crate::families::series::tree(2, bo)?.scale_variable(ac).scale(b);
    if order >= 2 {
        let solved = b_function_from_f(&h)?;
        if !solved.is_consistent() || !solved.b.agrees_with(&cat) {
            return Err(TheoremError::CheckFailed(
                "triangular B-function disagrees with b C(a c z)".into(),
            ));
        }
    }
    Ok(QuadB { t, h, b: cat })
}

/// The palindromic `gamma = b z + (a c / b)(z - 1)^2` driving the quadratic construction.
pub fn quad_gamma(a: &Rat, b: &Rat, c: &Rat) -> Result<LaurentRational, TheoremError> {
    if b.is_zero() {
        return Err(TheoremError::BadParameter("b must be nonzero".into()));
    }
    let k = a * c / b;
    let num = LaurentPoly::new(0, vec![k.clone(), b - &k * rat(2), k]);
    Ok(LaurentRational::from_laurent(num))
}

/// Pseudo-inverse `h^ = (-z) o hbar o (-z)`.
pub fn pseudo_inverse(h: &Series) -> Result<Series, TheoremError> {
    Ok(-&h.comp_inverse()?.negate_variable())
}

/// Pseudo-conjugate `(g o h, h^ o f o h)` of `(g, f)` by `h`.
pub fn pseudo_conjugate(g: &Series, f: &Series, h: &Series) -> Result<(Series, Series), TheoremError> {
    let hat = pseudo_inverse(h)?;
    let g2 = g.compose(h)?;
    let f2 = hat.compose(&f.compose(h)?)?;
    Ok((g2, f2))
}

/// Pseudo-conjugate of an ordinary array.
pub fn pseudo_conjugate_array(a: &RiordanArray, h: &Series) -> Result<RiordanArray, TheoremError> {
    let (g, f) = pseudo_conjugate(a.g(), a.f(), h)?;
    Ok(RiordanArray::new(g, f)?)
}

/// `(g(z^q), z g^(k/q)(z^q))` from a pseudo-involution `(g, z g^k)`.
///
/// Checks that the inverse is `(g(-z^q), z g^(k/q)(-z^q))` and, for odd `q`,
/// that the result is again a pseudo-involution.
pub fn q_aerate(g: &Series, k: i64, q: usize) -> Result<RiordanArray, TheoremError> {
    if q == 0 {
        return Err(TheoremError::BadParameter("q must be positive".into()));
    }
    let p = Rat::new(k.into(), (q as i64).into());
    let gp = g.pow_rational(&p)?;
    let n = q * g.order();
    let big_g = g.aerate(q);
    let big_f = gp.aerate(q).shift_up(1).truncate(n);
    let arr = RiordanArray::new(big_g, big_f)?;
    let inv = arr.inverse()?;
    let gm = g.negate_variable().aerate(q);
    let fm = gp.negate_variable().aerate(q).shift_up(1).truncate(n);
    if !inv.g().agrees_with(&gm) || !inv.f().agrees_with(&fm) {
        return Err(TheoremError::CheckFailed("inverse of the aerated array".into()));
    }
    if q % 2 == 1 && !arr.is_pseudo_involution(n).holds {
        return Err(TheoremError::CheckFailed("aerated array is not a pseudo-involution".into()));
    }
    Ok(arr)
}

/// Checks `sum_j a_{l,j} (u v)^(l-j) (u - v)^(2j+1) = u^(2l+1) - v^(2l+1)`.
pub fn girard_waring_check(l: usize, u: &Rat, v: &Rat) -> bool {
    let uv = u * v;
    let diff = u - v;
    let lhs = (0..=l).fold(Rat::zero(), |acc, j| {
        acc + big_p_coeff(l, j) * rat_powi(&uv, (l - j) as i64) * rat_powi(&diff, 2 * j as i64 + 1)
    });
    let e = 2 * l as i64 + 1;
    lhs == rat_powi(u, e) - rat_powi(v, e)
}

/// Checks the two substitution identities behind the explicit inverse-function
/// formulas for `z D^2` and `z B_h^2`:
/// `(g - 1)^2 / g = (z D^2) o (z h)` and `g^(d-1) + g^(1-d) - 2 = (z B_h^2) o (z h)`
/// with `h = z g^(d-1)`.
pub fn explicit_route_check(gamma: &LaurentRational, order: usize) -> Result<bool, TheoremError> {
    let d = gamma.darga().darga.ok_or(TheoremError::NotPalindromic)?;
    let g = ogf_root(gamma, order)?;
    let zh = g.pow_int(d - 1)?.shift_up(2).truncate(order);
    let half = order / 2 + 1;
    let delta_sq = delta_squared_from_gamma(gamma, d, half)?;
    let dfun = d_from_delta_squared(&delta_sq)?;
    let gm1 = &g - &Series::one(order);
    let lhs_d = gm1.mul_series(&gm1).div(&g)?;
    let rhs_d = dfun.zd2.compose(&zh)?;
    let b = b_function_via_ogf_theorem(gamma, half)?;
    let zb2 = b.mul_series(&b).shift_up(1);
    let gd = g.pow_int(d - 1)?;
    let lhs_b = &(&gd + &gd.recip()?) - &Series::constant(rat(2), order);
    let rhs_b = zb2.compose(&zh)?;
    Ok(lhs_d.agrees_with(&rhs_d) && lhs_b.agrees_with(&rhs_b))
}

/// `gamma` in the shape `sum_e c_e z^e`, from integer pairs.
pub fn laurent_gamma(terms: &[(i64, i64)]) -> LaurentRational {
    LaurentRational::from_laurent(LaurentPoly::from_int_terms(terms))
}

