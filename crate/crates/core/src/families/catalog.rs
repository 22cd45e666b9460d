use num_traits::{One, Zero};

use super::chebyshev::{big_p_poly, cheb_u};
use super::series::{catalan, double_leaf, double_root, fibonacci, gen_schroder_gamma, k_motzkin, motzkin, tree, v_series};
use super::{int_param, nonzero, rat_param, ArrayKind, FamilyError, FamilyInstance, OeisTag, Params};
use crate::fps::{binomial, factorial, rat, ratio, Rat, Series};
use crate::laurent::{LaurentPoly, LaurentRational};
use crate::poly::Poly;
use crate::theorems::{
    companion_from_gamma, double_root_b, egf_root, large_little_b, ogf_root, pseudo_conjugate, q_aerate, quad_b,
    quad_gamma, twin_powers, GeneratingKind, TwinDirection,
};

/// Catalog entry: name, kind, parameters with defaults, and a one-line summary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyDescriptor {
    pub name: &'static str,
    pub kind: ArrayKind,
    pub params: &'static [(&'static str, i64)],
    pub summary: &'static str,
}

type Builder = fn(&Params, usize) -> Result<Parts, FamilyError>;

const fn ord(name: &'static str, params: &'static [(&'static str, i64)], summary: &'static str) -> FamilyDescriptor {
    FamilyDescriptor {
        name,
        kind: ArrayKind::Ordinary,
        params,
        summary,
    }
}

const fn exp(name: &'static str, params: &'static [(&'static str, i64)], summary: &'static str) -> FamilyDescriptor {
    FamilyDescriptor {
        name,
        kind: ArrayKind::Exponential,
        params,
        summary,
    }
}

const CATALOG: &[(FamilyDescriptor, Builder)] = &[
    (ord("pascal", &[], "(1/(1-z), z/(1-z))"), pascal),
    (ord("k_ary", &[("k", 2), ("a", 1)], "(T_k(az), z T_k^(2k-1)(az)), gamma = a z^k"), k_ary),
    (ord("catalan", &[], "(C, z C^3)"), catalan_family),
    (ord("schroder", &[("a", 1)], "(r(az), z r^2(az)), gamma = a(z + z^2)"), schroder),
    (ord("gen_schroder", &[("k", 3)], "(r_k, z r_k^(2k-2)), gamma = z^(k-1) + z^k"), gen_schroder),
    (ord("motzkin", &[], "(m~, z m~), gamma = 1 - z + z^2"), motzkin_family),
    (ord("k_motzkin", &[("k", 2)], "(m~_k, z m~_k) with m~_k = 1 + k z m_k"), k_motzkin_family),
    (ord("double_root", &[("k", 2)], "(t_k, z t_k^(k-1)), t_k = 2 T_k - 1"), double_root_family),
    (ord("double_leaf", &[("k", 2)], "(u_k, z u_k^(k-1)), u_k = 1 + z(1 + u_k^k)"), double_leaf_family),
    (ord("central_binomial", &[], "(1/sqrt(1-4z), z/(1-4z)), gamma = 4z^2/(1+z)"), central_binomial),
    (ord("rna", &[], "(g, z g) with g = 1 + z g + z^2 g (g - 1)"), rna),
    (ord("quad", &[("a", 2), ("b", 3), ("c", 1)], "(t, z t) from f = z(a + b f + c f^2)"), quad),
    (ord("large_little", &[("a", 1), ("b", 1), ("c", 1)], "(t, z t) from g = 1 + z(a + b g + c g^2)"), large_little),
    (ord("non_palindrome", &[("a", 1), ("b", 2)], "((1-az)/(1-bz), z/(1-(a+b)z)), gamma = b z - a"), non_palindrome),
    (ord("fibonacci", &[], "(F, (zC) o (F - 1)), F = 1/(1 - z - z^2)"), fibonacci_family),
    (ord("ct_pos", &[("n", 2)], "(C(z T_n^(n-1)), z C^(2n+1)(z T_n^(n-1)))"), ct_pos),
    (ord("ct_neg", &[("n", 2)], "(1/C(-z T_n^n), z/C^(2n-3)(-z T_n^n))"), ct_neg),
    (ord("basketball", &[], "(1/C(-z C^2), z/C(-z C^2))"), basketball),
    (ord("m_gen", &[("k", 1), ("n", 1)], "(g, z g^(2k+2n-1)), gamma = z^k (1 - z + z^2)^n"), m_gen),
    (ord("parity_rna", &[("k", 2)], "(g, z g^(2k-1)), g = 1 + z g^(k-1)(1 - g + g^2)"), parity_rna),
    (ord("v_k", &[("k", 2)], "(v_k, z v_k^k), v_k = 1 + z(v_k + v_k^k)"), v_k),
    (ord("w_k", &[("k", 2), ("d", 3)], "(w_k, z w_k^(d-1)), 1 + z w_k^(d-1) = (1 - z) w_k^k"), w_k),
    (ord("motzkin_companion", &[], "(m, (m - 1) C(z m~))"), motzkin_companion),
    (ord("two_m_minus_one", &[], "(2m - 1, (z m~) o (z m~))"), two_m_minus_one),
    (ord("two_mtilde_minus_one", &[], "(2m~ - 1, z(2m~ - 1)/(1 + 2 z m~))"), two_mtilde_minus_one),
    (ord("k_ary_aerated", &[("k", 2)], "(T_k(z^(2k-1)), z T_k(z^(2k-1)))"), k_ary_aerated),
    (ord("double_root_aerated", &[("k", 2)], "(t_k(z^(k-1)), z t_k(z^(k-1))), k even"), double_root_aerated),
    (ord("ct_pos_aerated", &[("n", 2)], "Bell-subgroup aeration of ct_pos"), ct_pos_aerated),
    (ord("ct_neg_aerated", &[("n", 3)], "Bell-subgroup aeration of ct_neg"), ct_neg_aerated),
    (exp("exp_t", &[], "[T, z T^2], T = exp(z T)"), exp_t),
    (exp("exp_s", &[], "[S, z S], S = exp(z(1 + S))"), exp_s),
    (exp("involutions", &[], "[exp(z + z^2/2), 1 - sqrt(1 - 2z - z^2)]"), involutions),
    (exp("bell", &[], "[exp(e^z - 1), log(1/(2 - e^z))]"), bell),
    (exp("bell_marked", &[], "[exp(z e^z), z S]"), bell_marked),
    (exp("increasing_tree", &[("c", 3), ("d", 3)], "[1, z (1 - c z^d)^(-1/d)], d odd"), increasing_tree),
];

/// Every family in the catalog.
pub fn list_families() -> Vec<FamilyDescriptor> {
    CATALOG.iter().map(|(d, _)| *d).collect()
}

pub(crate) fn build(name: &str, params: &Params, order: usize) -> Result<FamilyInstance, FamilyError> {
    let (desc, builder) = CATALOG
        .iter()
        .find(|(d, _)| d.name == name)
        .ok_or_else(|| FamilyError::UnknownFamily(name.to_string()))?;
    if let Some(unknown) = params.keys().find(|k| !desc.params.iter().any(|(p, _)| p == k)) {
        return Err(FamilyError::BadParameter {
            name: unknown.clone(),
            reason: format!("not a parameter of `{}`", desc.name),
        });
    }
    let full: Params = desc
        .params
        .iter()
        .map(|(p, default)| (p.to_string(), params.get(*p).cloned().unwrap_or_else(|| rat(*default))))
        .collect();
    let parts = builder(&full, order)?;
    if parts.g.order() < order || parts.f.order() < order {
        return Err(FamilyError::ConstructionCheckFailed {
            family: desc.name.into(),
            detail: format!(
                "only reached order {} of {order}",
                parts.g.order().min(parts.f.order())
            ),
        });
    }
    Ok(FamilyInstance {
        name: desc.name.to_string(),
        params: full,
        kind: parts.kind,
        g: parts.g.truncate(order),
        f: parts.f.truncate(order),
        gamma: parts.gamma,
        expected_b: parts.expected_b,
        extras: parts
            .extras
            .into_iter()
            .map(|(n, s)| (n, s.truncate(order)))
            .collect(),
        oeis: parts.oeis,
    })
}

struct Parts {
    kind: ArrayKind,
    g: Series,
    f: Series,
    gamma: Option<LaurentRational>,
    expected_b: Option<Series>,
    extras: Vec<(String, Series)>,
    oeis: Vec<OeisTag>,
}

impl Parts {
    fn ordinary(g: Series, f: Series) -> Self {
        Parts {
            kind: ArrayKind::Ordinary,
            g,
            f,
            gamma: None,
            expected_b: None,
            extras: Vec::new(),
            oeis: Vec::new(),
        }
    }

    fn exponential(g: Series, f: Series) -> Self {
        Parts {
            kind: ArrayKind::Exponential,
            ..Parts::ordinary(g, f)
        }
    }

    fn gamma(mut self, gamma: LaurentRational) -> Self {
        self.gamma = Some(gamma);
        self
    }

    fn b(mut self, b: Series) -> Self {
        self.expected_b = Some(b);
        self
    }

    fn extra(mut self, name: &str, s: Series) -> Self {
        self.extras.push((name.to_string(), s));
        self
    }

    fn tag(self, id: &str, target: &str, shift: i64) -> Self {
        self.push_tag(id, target, shift, false)
    }

    fn egf_tag(self, id: &str, target: &str, shift: i64) -> Self {
        self.push_tag(id, target, shift, true)
    }

    fn tag_if(self, cond: bool, id: &str, target: &str, shift: i64) -> Self {
        if cond {
            self.tag(id, target, shift)
        } else {
            self
        }
    }

    fn push_tag(mut self, id: &str, target: &str, shift: i64, egf: bool) -> Self {
        self.oeis.push(OeisTag {
            id: id.into(),
            target: target.into(),
            shift,
            egf,
        });
        self
    }
}

fn bad(name: &str, reason: &str) -> FamilyError {
    FamilyError::BadParameter {
        name: name.into(),
        reason: reason.into(),
    }
}

fn at_least(name: &str, v: i64, min: i64) -> Result<(), FamilyError> {
    if v < min {
        Err(bad(name, &format!("must be at least {min}")))
    } else {
        Ok(())
    }
}

fn slack(order: usize) -> usize {
    order + 2
}

fn z_times(s: &Series, order: usize) -> Series {
    s.shift_up(1).truncate(order)
}

fn zg_pow(g: &Series, e: i64, order: usize) -> Result<Series, FamilyError> {
    Ok(z_times(&g.pow_int(e)?, order))
}

fn one_minus_z_plus_z2() -> LaurentPoly {
    LaurentPoly::from_int_terms(&[(0, 1), (1, -1), (2, 1)])
}

fn p_of(l: i64, inner: &Series) -> Result<Series, FamilyError> {
    Ok(big_p_poly(l).compose_series(inner)?)
}

fn pascal(_: &Params, n: usize) -> Result<Parts, FamilyError> {
    let g = Poly::from_ints(&[1, -1]).to_series(n).recip()?;
    let f = z_times(&g, n);
    Ok(Parts::ordinary(g, f)
        .gamma(LaurentRational::from_laurent(LaurentPoly::from_int_terms(&[(1, 1)])))
        .b(Series::one(n)))
}

fn k_ary(p: &Params, n: usize) -> Result<Parts, FamilyError> {
    let k = int_param(p, "k", 2)?;
    at_least("k", k, 1)?;
    let a = rat_param(p, "a", rat(1));
    nonzero("a", &a)?;
    let g = tree(k, slack(n))?.scale_variable(&a);
    let f = zg_pow(&g, 2 * k - 1, n)?;
    let b = big_p_poly(k - 1).to_series(n).scale_variable(&(&a * &a)).scale(&a);
    let std = a.is_one();
    Ok(Parts::ordinary(g, f)
        .gamma(LaurentRational::from_laurent(LaurentPoly::monomial(a.clone(), k)))
        .b(b)
        .tag_if(std && k == 2, "A000108", "g", 0)
        .tag_if(std && k == 2, "A000245", "f", 0))
}

fn catalan_family(_: &Params, n: usize) -> Result<Parts, FamilyError> {
    let mut p = Params::new();
    p.insert("k".into(), rat(2));
    p.insert("a".into(), rat(1));
    k_ary(&p, n)
}

fn schroder(p: &Params, n: usize) -> Result<Parts, FamilyError> {
    let a = rat_param(p, "a", rat(1));
    nonzero("a", &a)?;
    let r = ogf_root(&gen_schroder_gamma(2), slack(n))?;
    let g = r.scale_variable(&a);
    let f = zg_pow(&g, 2, n)?;
    let a2 = &a * &a;
    let b = Poly::new(vec![Rat::one(), -a2]).to_series(n).recip()?.scale(&(&a * rat(4)));
    let s = (&r + &Series::one(r.order())).scale(&ratio(1, 2)).scale_variable(&a);
    let gamma = LaurentRational::from_laurent(LaurentPoly::from_terms(&[(1, a.clone()), (2, a.clone())]));
    let std = a.is_one();
    Ok(Parts::ordinary(g, f)
        .gamma(gamma)
        .b(b)
        .extra("s", s)
        .tag_if(std, "A006318", "g", 0)
        .tag_if(std, "A001003", "s", 0))
}

/// `4/(1-z) U_{k-2}((1+z)/(1-z))`.
fn gen_schroder_b(k: i64, n: usize) -> Result<Series, FamilyError> {
    if k < 2 {
        return Ok(Series::zero(n));
    }
    let inv = Poly::from_ints(&[1, -1]).to_series(n).recip()?;
    let x = Poly::from_ints(&[1, 1]).to_series(n).mul_series(&inv);
    let u = cheb_u(k - 2).eval_series(&x);
    Ok(u.mul_series(&inv).scale(&rat(4)))
}

fn gen_schroder(p: &Params, n: usize) -> Result<Parts, FamilyError> {
    let k = int_param(p, "k", 3)?;
    at_least("k", k, 1)?;
    let gamma = gen_schroder_gamma(k);
    let g = ogf_root(&gamma, slack(n))?;
    let f = zg_pow(&g, 2 * k - 2, n)?;
    Ok(Parts::ordinary(g, f)
        .gamma(gamma)
        .b(gen_schroder_b(k, n)?)
        .tag_if(k == 2, "A006318", "g", 0)
        .tag_if(k == 3, "A027307", "g", 0))
}

fn motzkin_family(_: &Params, n: usize) -> Result<Parts, FamilyError> {
    let gamma = LaurentRational::from_laurent(one_minus_z_plus_z2());
    let g = ogf_root(&gamma, slack(n))?;
    let f = z_times(&g, n);
    Ok(Parts::ordinary(g, f)
        .gamma(gamma)
        .b(catalan(n)?)
        .extra("m", motzkin(slack(n))?)
        .tag("A001006", "m", 0)
        .tag("A086246", "f", 0))
}

fn k_motzkin_family(p: &Params, n: usize) -> Result<Parts, FamilyError> {
    let k = rat_param(p, "k", rat(2));
    nonzero("k", &k)?;
    let q = quad_b(&rat(1), &k, &rat(1), slack(n))?;
    let gamma = quad_gamma(&rat(1), &k, &rat(1))?;
    let m = k_motzkin(&k, slack(n))?;
    let expected = catalan(n)?.scale(&k);
    Ok(Parts::ordinary(q.t, q.h)
        .gamma(gamma)
        .b(expected)
        .extra("m", m)
        .tag_if(k == rat(3), "A002212", "m", -1))
}

fn double_root_family(p: &Params, n: usize) -> Result<Parts, FamilyError> {
    let k = int_param(p, "k", 2)?;
    at_least("k", k, 1)?;
    let g = double_root(k, slack(n))?;
    let f = zg_pow(&g, k - 1, n)?;
    let half = LaurentPoly::new(0, vec![ratio(1, 2), ratio(1, 2)]);
    let gamma = LaurentRational::from_laurent(half.pow(k as u32).scale(&rat(2)));
    Ok(Parts::ordinary(g, f)
        .gamma(gamma)
        .b(double_root_b(k as usize, n)?)
        .tag_if(k == 2, "A068875", "g", 0))
}

fn double_leaf_family(p: &Params, n: usize) -> Result<Parts, FamilyError> {
    let k = int_param(p, "k", 2)?;
    at_least("k", k, 1)?;
    let g = double_leaf(k, slack(n))?;
    let f = zg_pow(&g, k - 1, n)?;
    let gamma = LaurentRational::from_laurent(LaurentPoly::from_int_terms(&[(0, 1), (k, 1)]));
    let mut parts = Parts::ordinary(g, f).gamma(gamma);
    if k == 2 {
        parts = parts.b(catalan(n)?.scale_variable(&rat(2)).scale(&rat(2))).tag("A025227", "f", 0);
    }
    Ok(parts)
}

fn central_binomial(_: &Params, n: usize) -> Result<Parts, FamilyError> {
    let g = Poly::from_ints(&[1, -4]).to_series(slack(n)).pow_rational(&ratio(-1, 2))?;
    let f = zg_pow(&g, 2, n)?;
    let num = LaurentPoly::from_int_terms(&[(2, 4)]);
    let den = LaurentPoly::from_int_terms(&[(0, 1), (1, 1)]);
    let gamma = LaurentRational::new(num, den).expect("nonzero denominator");
    Ok(Parts::ordinary(g, f).gamma(gamma).b(Series::constant(rat(4), n)))
}

fn rna(_: &Params, n: usize) -> Result<Parts, FamilyError> {
    let g = crate::fps::solve_fixpoint(
        |g| {
            let m = g.order();
            let zg = z_times(g, m);
            let gm1 = g - &Series::one(m);
            let quad = g.mul_series(&gm1).shift_up(2).truncate(m);
            Ok(&(&Series::one(m) + &zg) + &quad)
        },
        &Series::one(0),
        slack(n),
    )?;
    let f = z_times(&g, n);
    Ok(Parts::ordinary(g, f).tag("A004148", "g", 0))
}

fn quad(p: &Params, n: usize) -> Result<Parts, FamilyError> {
    let (a, b, c) = (rat_param(p, "a", rat(2)), rat_param(p, "b", rat(3)), rat_param(p, "c", rat(1)));
    nonzero("a", &a)?;
    let q = quad_b(&a, &b, &c, slack(n))?;
    let std = (a == rat(2)) && (b == rat(3)) && c.is_one();
    let mut parts = Parts::ordinary(q.t, q.h).b(q.b);
    if !b.is_zero() {
        parts = parts.gamma(quad_gamma(&a, &b, &c)?);
    }
    Ok(parts.tag_if(std, "A238113", "g", 0))
}

fn large_little(p: &Params, n: usize) -> Result<Parts, FamilyError> {
    let (a, b, c) = (rat_param(p, "a", rat(1)), rat_param(p, "b", rat(1)), rat_param(p, "c", rat(1)));
    let s = &a + &b + &c;
    if s.is_zero() {
        return Err(bad("a", "a + b + c must be nonzero"));
    }
    let q = large_little_b(&a, &b, &c, slack(n))?;
    let b2 = &b + &c * rat(2);
    let mut parts = Parts::ordinary(q.t, q.h).b(q.b);
    if !b2.is_zero() {
        parts = parts.gamma(quad_gamma(&s, &b2, &c)?);
    }
    Ok(parts)
}

fn non_palindrome(p: &Params, n: usize) -> Result<Parts, FamilyError> {
    let (a, b) = (rat_param(p, "a", rat(1)), rat_param(p, "b", rat(2)));
    if a == b {
        return Err(bad("b", "must differ from a"));
    }
    let gamma = LaurentRational::from_laurent(LaurentPoly::from_terms(&[(0, -a.clone()), (1, b.clone())]));
    let comp = companion_from_gamma(&gamma, GeneratingKind::Ordinary, slack(n))?;
    let closed_g = Poly::new(vec![Rat::one(), -a.clone()])
        .to_series(n)
        .div(&Poly::new(vec![Rat::one(), -b.clone()]).to_series(n))?;
    let closed_f = z_times(&Poly::new(vec![Rat::one(), -(&a + &b)]).to_series(n).recip()?, n);
    if !comp.g.agrees_with(&closed_g) || !comp.f.agrees_with(&closed_f) {
        return Err(FamilyError::ConstructionCheckFailed {
            family: "non_palindrome".into(),
            detail: "general companion formula disagrees with the closed form".into(),
        });
    }
    Ok(Parts::ordinary(comp.g, comp.f)
        .gamma(gamma)
        .b(Series::constant(&a + &b, n)))
}

/// `(1 + z - sqrt(1 - 10z + 5z^2)) / (2z)`.
pub(crate) fn fibonacci_b(n: usize) -> Result<Series, FamilyError> {
    let root = Poly::from_ints(&[1, -10, 5]).to_series(n + 1).sqrt()?;
    let num = &Poly::from_ints(&[1, 1]).to_series(n + 1) - &root;
    Ok(num.shift_down(1)?.scale(&ratio(1, 2)))
}

fn fibonacci_family(_: &Params, n: usize) -> Result<Parts, FamilyError> {
    let w = slack(n);
    let g = fibonacci(w);
    let zc = z_times(&catalan(w)?, w);
    let f = zc.compose(&(&g - &Series::one(w)))?;
    let b = fibonacci_b(n)?;
    let mut shifted = b.clone().into_coeffs();
    shifted[0] -= rat(2);
    Ok(Parts::ordinary(g, f)
        .b(b)
        .extra("b_minus_2", Series::from_coeffs(shifted))
        .tag("A344623", "f", 0)
        .tag("A200031", "b_minus_2", 0))
}

/// `(C(z T_n^(n-1)), z C^(2n+1)(z T_n^(n-1)))` and `B_h = T_{2n-1}^(n-1)(-z) P_n(z T_{2n-1}^(2n-2)(-z))`.
fn ct_pos_parts(m: i64, n: usize) -> Result<Parts, FamilyError> {
    let w = slack(n);
    let inner = zg_pow(&tree(m, w)?, m - 1, w)?;
    let g = catalan(w)?.compose(&inner)?;
    let f = zg_pow(&g, 2 * m + 1, n)?;
    let t = tree(2 * m - 1, n)?.negate_variable();
    let d = t.pow_int(m - 1)?;
    let b = d.mul_series(&p_of(m, &zg_pow(&t, 2 * m - 2, n)?)?);
    let num = LaurentPoly::monomial(Rat::one(), 2 * m);
    let gamma = LaurentRational::new(num, LaurentPoly::constant(Rat::one()))
        .expect("nonzero denominator")
        .div(&LaurentRational::from_laurent(one_minus_z_plus_z2()).powi(m - 1).expect("nonzero"))
        .expect("nonzero");
    Ok(Parts::ordinary(g, f).gamma(gamma).b(b))
}

fn ct_pos(p: &Params, n: usize) -> Result<Parts, FamilyError> {
    let m = int_param(p, "n", 2)?;
    at_least("n", m, 0)?;
    Ok(ct_pos_parts(m, n)?
        .tag_if(m == 2, "A127632", "g", 0)
        .tag_if(m == 3, "A153295", "g", 0)
        .tag_if(m == 4, "A153396", "g", 0))
}

/// `(1/C(-z T_n^n), z/C^(2n-3)(-z T_n^n))` and `B_h = T_{2n}^n P_{n-2}(z T_{2n}^(2n))`.
fn ct_neg_parts(m: i64, n: usize) -> Result<Parts, FamilyError> {
    let w = slack(n);
    let inner = -&zg_pow(&tree(m, w)?, m, w)?;
    let g = catalan(w)?.compose(&inner)?.recip()?;
    let f = zg_pow(&g, 2 * m - 3, n)?;
    let num = one_minus_z_plus_z2().pow(m as u32);
    let gamma = LaurentRational::new(num, LaurentPoly::monomial(Rat::one(), 1)).expect("nonzero denominator");
    let mut parts = Parts::ordinary(g, f).gamma(gamma);
    if m >= 2 {
        let t = tree(2 * m, n)?;
        let b = t.pow_int(m)?.mul_series(&p_of(m - 2, &zg_pow(&t, 2 * m, n)?)?);
        parts = parts.b(b);
    }
    Ok(parts)
}

fn ct_neg(p: &Params, n: usize) -> Result<Parts, FamilyError> {
    let m = int_param(p, "n", 2)?;
    at_least("n", m, 1)?;
    Ok(ct_neg_parts(m, n)?
        .tag_if(m == 2, "A166135", "g", 0)
        .tag_if(m == 2, "A069271", "B", 0)
        .tag_if(m == 3, "A347953", "g", 0))
}

fn basketball(_: &Params, n: usize) -> Result<Parts, FamilyError> {
    Ok(ct_neg_parts(2, n)?.tag("A166135", "g", 0).tag("A069271", "B", 0))
}

fn m_gen_gamma(k: i64, m: i64) -> LaurentRational {
    LaurentRational::from_laurent(LaurentPoly::monomial(Rat::one(), k))
        .mul(&LaurentRational::from_laurent(one_minus_z_plus_z2()).powi(m).expect("nonzero"))
}

/// `(g, z g^(2k+2n-1))` for `gamma = z^k (1 - z + z^2)^n` with `B_h = T_{2n}^n P_{k+n-1}(z T_{2n}^(2n))`.
fn m_gen_parts(k: i64, m: i64, n: usize) -> Result<Parts, FamilyError> {
    if k + m < 1 {
        return Err(bad("k", "k + n must be positive"));
    }
    let gamma = m_gen_gamma(k, m);
    let g = ogf_root(&gamma, slack(n))?;
    let f = zg_pow(&g, 2 * k + 2 * m - 1, n)?;
    let t = tree(2 * m, n)?;
    let b = t.pow_int(m)?.mul_series(&p_of(k + m - 1, &zg_pow(&t, 2 * m, n)?)?);
    Ok(Parts::ordinary(g, f).gamma(gamma).b(b))
}

fn m_gen(p: &Params, n: usize) -> Result<Parts, FamilyError> {
    m_gen_parts(int_param(p, "k", 1)?, int_param(p, "n", 1)?, n)
}

fn parity_rna(p: &Params, n: usize) -> Result<Parts, FamilyError> {
    let k = int_param(p, "k", 2)?;
    at_least("k", k, 1)?;
    let parts = m_gen_parts(k - 1, 1, n)?;
    let g = parts.g.clone();
    let last = (&g - &Series::one(g.order())).shift_down(1)?;
    let zg_last = &g - &Series::one(g.order());
    let g0 = (&Series::one(g.order()) + &zg_last) + zg_last.mul_series(&zg_last);
    let mut blocks = vec![g0.truncate(last.order())];
    for i in 1..k as usize {
        let next = g.mul_series(&blocks[i - 1]);
        blocks.push(next);
    }
    let top = k as usize * last.order();
    let mut all = Series::zero(top);
    for (i, b) in blocks.iter().enumerate() {
        all = &all + &b.aerate(k as usize).shift_up(i).truncate(top);
    }
    Ok(parts
        .extra("G0", blocks[0].clone())
        .extra("matchings", all)
        .tag_if(k == 2, "A106228", "g", 0)
        .tag_if(k == 2, "A038629", "B", 0)
        .tag_if(k == 2, "A109081", "G0", 0)
        .tag_if(k == 2, "A215067", "matchings", 0))
}

fn v_k(p: &Params, n: usize) -> Result<Parts, FamilyError> {
    let k = int_param(p, "k", 2)?;
    if k == -1 {
        return Err(bad("k", "gamma = z + 1/z has darga 0 and v_{-1} is not normalized"));
    }
    let g = v_series(k, slack(n))?;
    let f = zg_pow(&g, k, n)?;
    let gamma = LaurentRational::from_laurent(LaurentPoly::from_int_terms(&[(1, 1), (k, 1)]));
    Ok(Parts::ordinary(g, f).gamma(gamma))
}

fn w_k(p: &Params, n: usize) -> Result<Parts, FamilyError> {
    let k = int_param(p, "k", 2)?;
    let d = int_param(p, "d", 3)?;
    at_least("k", k, 1)?;
    let num = LaurentPoly::from_int_terms(&[(d - 1, 1), (k, 1)]);
    if num.is_zero() {
        return Err(bad("d", "z^(d-1) + z^k vanishes"));
    }
    let den = LaurentPoly::from_terms(&(0..k).map(|j| (j, Rat::one())).collect::<Vec<_>>());
    let gamma = LaurentRational::new(num, den).expect("nonzero denominator");
    let g = ogf_root(&gamma, slack(n))?;
    let lhs = &Series::one(g.order()) + &zg_pow(&g, d - 1, g.order())?;
    let rhs = g.pow_int(k)?.mul_series(&Poly::from_ints(&[1, -1]).to_series(g.order()));
    if let Some(i) = lhs.first_difference(&rhs) {
        return Err(FamilyError::ConstructionCheckFailed {
            family: "w_k".into(),
            detail: format!("1 + z w^(d-1) = (1 - z) w^k fails at order {i}"),
        });
    }
    let f = zg_pow(&g, d - 1, n)?;
    Ok(Parts::ordinary(g, f).gamma(gamma))
}

fn mtilde(n: usize) -> Result<Series, FamilyError> {
    Ok(ogf_root(&LaurentRational::from_laurent(one_minus_z_plus_z2()), n)?)
}

fn motzkin_companion(_: &Params, n: usize) -> Result<Parts, FamilyError> {
    let w = slack(n);
    let pascal_g = Poly::from_ints(&[1, -1]).to_series(w).recip()?;
    let pascal_f = z_times(&pascal_g, w);
    let h = z_times(&mtilde(w)?, w);
    let (g, f) = pseudo_conjugate(&pascal_g, &pascal_f, &h)?;
    let m = motzkin(w)?;
    let closed = (&m - &Series::one(w)).mul_series(&catalan(w)?.compose(&h)?);
    if !f.agrees_with(&closed) || !g.agrees_with(&m) {
        return Err(FamilyError::ConstructionCheckFailed {
            family: "motzkin_companion".into(),
            detail: "pseudo-conjugate disagrees with (m, (m - 1) C(z m~))".into(),
        });
    }
    Ok(Parts::ordinary(g, f).tag("A001006", "g", 0))
}

fn two_m_minus_one(_: &Params, n: usize) -> Result<Parts, FamilyError> {
    let w = slack(n);
    let m = motzkin(w)?;
    let g = &m.scale(&rat(2)) - &Series::one(w);
    let h = z_times(&mtilde(w)?, w);
    let f = h.compose(&h)?;
    Ok(Parts::ordinary(g, f).tag("A348197", "f", 0))
}

fn two_mtilde_minus_one(_: &Params, n: usize) -> Result<Parts, FamilyError> {
    let w = slack(n);
    let mt = mtilde(w)?;
    let g = &mt.scale(&rat(2)) - &Series::one(w);
    let den = &Series::one(w) + &z_times(&mt, w).scale(&rat(2));
    let f = z_times(&g, w).div(&den)?;
    Ok(Parts::ordinary(g, f).tag("A348189", "f", 0))
}

/// Aerates `(g, z g^q)` to `(g(z^q), z g(z^q))` at order `n`.
fn aerated(g: &Series, q: i64, n: usize) -> Result<(Series, Series), FamilyError> {
    let arr = q_aerate(g, q, q as usize)?;
    Ok((arr.g().truncate(n), arr.f().truncate(n)))
}

fn base_order(q: i64, n: usize) -> usize {
    n / q as usize + 2
}

fn k_ary_aerated(p: &Params, n: usize) -> Result<Parts, FamilyError> {
    let k = int_param(p, "k", 2)?;
    at_least("k", k, 1)?;
    let q = 2 * k - 1;
    let (g, f) = aerated(&tree(k, base_order(q, n))?, q, n)?;
    Ok(Parts::ordinary(g, f).b(Series::monomial(Rat::one(), (k - 1) as usize, n)))
}

fn double_root_aerated(p: &Params, n: usize) -> Result<Parts, FamilyError> {
    let k = int_param(p, "k", 2)?;
    at_least("k", k, 2)?;
    if k % 2 == 1 {
        return Err(bad("k", "must be even"));
    }
    let l = k / 2;
    let q = k - 1;
    let (g, f) = aerated(&double_root(k, base_order(q, n))?, q, n)?;
    let t = tree(2 * l, n)?.pow_int(l)?;
    let b = t.aerate((2 * l - 1) as usize).shift_up((l - 1) as usize).truncate(n).scale(&rat(2));
    Ok(Parts::ordinary(g, f).b(b))
}

fn ct_pos_aerated(p: &Params, n: usize) -> Result<Parts, FamilyError> {
    let m = int_param(p, "n", 2)?;
    at_least("n", m, 0)?;
    let q = 2 * m + 1;
    let base = ct_pos_parts(m, base_order(q, n))?;
    let (g, f) = aerated(&base.g, q, n)?;
    let t = tree(2 * m - 1, n)?.pow_int(m - 1)?.negate_variable();
    let b = t.aerate(q as usize).shift_up(m as usize).truncate(n);
    Ok(Parts::ordinary(g, f).b(b))
}

fn ct_neg_aerated(p: &Params, n: usize) -> Result<Parts, FamilyError> {
    let m = int_param(p, "n", 3)?;
    at_least("n", m, 2)?;
    let q = 2 * m - 3;
    let base = ct_neg_parts(m, base_order(q, n))?;
    let (g, f) = aerated(&base.g, q, n)?;
    let t = tree(2 * m, n)?.pow_int(m)?;
    let b = t.aerate(q as usize).shift_up((m - 2) as usize).truncate(n);
    Ok(Parts::ordinary(g, f).b(b).tag_if(m == 3, "A212072", "B", 1))
}

fn egf_b_from_beta(beta: impl Fn(usize) -> Rat, n: usize) -> Series {
    Series::from_fn(n, |j| beta(j) / Rat::from_integer(factorial(2 * j + 1)))
}

fn exp_t(_: &Params, n: usize) -> Result<Parts, FamilyError> {
    let gamma = LaurentRational::from_laurent(LaurentPoly::from_int_terms(&[(1, 1)]));
    let g = egf_root(&gamma, slack(n))?;
    let f = zg_pow(&g, 2, n)?;
    Ok(Parts::exponential(g, f)
        .gamma(gamma)
        .b(egf_b_from_beta(|_| rat(2), n))
        .egf_tag("A000272", "g", -1)
        .egf_tag("A089946", "f", 1))
}

/// `beta_j` of `z S`: 2 for `j = 0`, else `sum_i C(2j+2, i) (j+1-i)^(2j)`.
pub(crate) fn exp_s_beta(j: usize) -> Rat {
    if j == 0 {
        return rat(2);
    }
    let j = j as i64;
    let s = (0..=j).fold(num_bigint::BigInt::zero(), |acc, i| {
        acc + binomial(2 * j + 2, i) * num_bigint::BigInt::from(j + 1 - i).pow((2 * j) as u32)
    });
    Rat::from_integer(s)
}

fn exp_s(_: &Params, n: usize) -> Result<Parts, FamilyError> {
    let gamma = LaurentRational::from_laurent(LaurentPoly::from_int_terms(&[(0, 1), (1, 1)]));
    let g = egf_root(&gamma, slack(n))?;
    let f = z_times(&g, n);
    let half = Series::from_fn(n, |j| exp_s_beta(j) / rat(2));
    Ok(Parts::exponential(g, f)
        .gamma(gamma)
        .b(egf_b_from_beta(exp_s_beta, n))
        .extra("beta_half", half)
        .egf_tag("A349562", "g", 0)
        .egf_tag("A038049", "f", 0)
        .egf_tag("A216857", "f", 0)
        .tag("A007106", "beta_half", -1))
}

fn involutions(_: &Params, n: usize) -> Result<Parts, FamilyError> {
    let g = Series::from_coeffs(vec![Rat::zero(), Rat::one(), ratio(1, 2)])
        .extend_with_zeros(n)
        .exp()?;
    let root = Poly::from_ints(&[1, -2, -1]).to_series(n).sqrt()?;
    let f = &Series::one(n) - &root;
    Ok(Parts::exponential(g, f)
        .egf_tag("A000085", "g", 0)
        .egf_tag("A182037", "f", 0))
}

fn bell(_: &Params, n: usize) -> Result<Parts, FamilyError> {
    let ez = Series::z(n).exp()?;
    let g = (&ez - &Series::one(n)).exp()?;
    let f = -&(&Series::constant(rat(2), n) - &ez).log()?;
    Ok(Parts::exponential(g, f)
        .egf_tag("A000110", "g", 0)
        .egf_tag("A000629", "f", 1))
}

fn bell_marked(_: &Params, n: usize) -> Result<Parts, FamilyError> {
    let g = z_times(&Series::z(n).exp()?, n).exp()?;
    let s = egf_root(&LaurentRational::from_laurent(LaurentPoly::from_int_terms(&[(0, 1), (1, 1)])), n)?;
    let f = z_times(&s, n);
    Ok(Parts::exponential(g, f).egf_tag("A000248", "g", 0))
}

fn increasing_tree(p: &Params, n: usize) -> Result<Parts, FamilyError> {
    let c = rat_param(p, "c", rat(3));
    nonzero("c", &c)?;
    let d = int_param(p, "d", 3)?;
    at_least("d", d, 1)?;
    if d % 2 == 0 {
        return Err(bad("d", "must be odd"));
    }
    let du = d as usize;
    let base = Poly::new({
        let mut v = vec![Rat::zero(); du + 1];
        v[0] = Rat::one();
        v[du] = -c.clone();
        v
    })
    .to_series(n);
    let f = z_times(&base.pow_rational(&ratio(-1, d))?, n);
    let g = Series::one(n);
    let l = (du - 1) / 2;
    let b = if d == 1 {
        Series::constant(c.clone(), n)
    } else if d == 3 {
        let inner = -&Series::monomial(&c * &c / rat(27), 1, n);
        let t3 = tree(3, n / 3 + 1)?.compose(&inner.truncate(n / 3 + 1))?;
        t3.aerate(3).shift_up(1).truncate(n).scale(&(&c / rat(3)))
    } else {
        twin_powers(&Series::constant(c.clone(), n / du + 1), l, TwinDirection::BhToBf)?.truncate(n)
    };
    let top = (n - 1) / du;
    let section = Series::from_fn(top, |j| f.coeff(du * j + 1) * Rat::from_integer(factorial(j)));
    let std = c == rat(3) && d == 3;
    Ok(Parts::exponential(g, f)
        .b(b)
        .extra("section", section)
        .tag_if(std, "A007559", "section", 0))
}
