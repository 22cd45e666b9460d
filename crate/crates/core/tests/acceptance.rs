//! Acceptance run: prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

mod common;

use std::cell::Cell;
use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::{family, gamma_family_cases, route_check, tagged_instances, twin_cases, twin_round_trip};
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use riordan::exponential::beta_sequence;
use riordan::families::chebyshev::{big_p_array, cheb_array, cheb_table, big_p_table, p_array, p_table};
use riordan::families::series::{catalan, double_root, tree};
use riordan::families::{list_families, make_family, ArrayKind, Params};
use riordan::fps::{binomial, rat, ratio, Rat, Series};
use riordan::oeis::{builtin_fixtures, check_family_tags, oeis_check_triangle};
use riordan::riordan::{b_function_from_f, verify_b_recurrence};
use riordan::theorems::{girard_waring_check, quad_gamma, twin_powers, TheoremError, TwinDirection};
use riordan::{ExpRiordanArray, Poly, RiordanArray, TriMatrix};

type Outcome = Result<String, String>;

const B_ORDER: usize = 20;
const F_ORDER: usize = 2 * B_ORDER + 2;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rows(r: &[&[i64]]) -> TriMatrix {
    TriMatrix::from_int_rows(r)
}

fn compare(label: &str, got: &TriMatrix, want: &TriMatrix) -> Result<(), String> {
    match got.first_difference(want) {
        None => Ok(()),
        Some((n, k)) => Err(format!("{label}: entry ({n}, {k}) is {}, printed {}", got.get(n, k), want.get(n, k))),
    }
}

fn ordinary(name: &str, params: &[(&str, i64)], size: usize) -> TriMatrix {
    family(name, params, size + 2).array().build_matrix(size).unwrap()
}

fn exponential(name: &str, size: usize) -> TriMatrix {
    family(name, &[], size + 2).exp_array().build_exp_matrix(size).unwrap()
}

fn lagrange(name: &str, size: usize) -> TriMatrix {
    let inst = family(name, &[], size + 2);
    ExpRiordanArray::new(Series::one(size + 2), inst.f)
        .unwrap()
        .build_exp_matrix(size)
        .unwrap()
}

fn criterion_matrices() -> Outcome {
    let checks: Vec<(&str, TriMatrix, TriMatrix)> = vec![
        (
            "(C, zC^3)",
            ordinary("catalan", &[], 6),
            rows(&[&[1], &[1, 1], &[2, 4, 1], &[5, 14, 7, 1], &[14, 48, 35, 10, 1], &[42, 165, 154, 65, 13, 1]]),
        ),
        (
            "(r_3, z r_3^4)",
            ordinary("gen_schroder", &[("k", 3)], 5),
            rows(&[&[1], &[2, 1], &[10, 10, 1], &[66, 90, 18, 1], &[498, 810, 234, 26, 1]]),
        ),
        (
            "(F, (zC) o (F - 1))",
            ordinary("fibonacci", &[], 6),
            rows(&[&[1], &[1, 1], &[2, 4, 1], &[3, 14, 7, 1], &[5, 50, 35, 10, 1], &[8, 190, 160, 65, 13, 1]]),
        ),
        (
            "((1-z)/(1-2z), z/(1-3z))",
            ordinary("non_palindrome", &[("a", 1), ("b", 2)], 5),
            rows(&[&[1], &[1, 1], &[2, 4, 1], &[4, 14, 7, 1], &[8, 46, 35, 10, 1]]),
        ),
        (
            "basketball",
            ordinary("basketball", &[], 9),
            rows(&[
                &[1],
                &[1, 1],
                &[1, 2, 1],
                &[3, 3, 3, 1],
                &[7, 8, 6, 4, 1],
                &[22, 21, 16, 10, 5, 1],
                &[65, 64, 45, 28, 15, 6, 1],
                &[213, 197, 138, 83, 45, 21, 7, 1],
                &[693, 642, 436, 260, 140, 68, 28, 8, 1],
            ]),
        ),
        (
            "[T, zT^2]",
            exponential("exp_t", 6),
            rows(&[&[1], &[1, 1], &[3, 6, 1], &[16, 45, 15, 1], &[125, 432, 210, 28, 1], &[1296, 5145, 3200, 630, 45, 1]]),
        ),
        (
            "[1, zT^2]",
            lagrange("exp_t", 6),
            rows(&[&[1], &[0, 1], &[0, 4, 1], &[0, 24, 12, 1], &[0, 200, 144, 24, 1], &[0, 2160, 1960, 480, 40, 1]]),
        ),
        (
            "[S, zS]",
            exponential("exp_s", 6),
            rows(&[&[1], &[2, 1], &[8, 8, 1], &[56, 72, 18, 1], &[576, 832, 288, 32, 1], &[7872, 12160, 5040, 800, 50, 1]]),
        ),
        (
            "[1, zS]",
            lagrange("exp_s", 6),
            rows(&[&[1], &[0, 1], &[0, 4, 1], &[0, 24, 12, 1], &[0, 224, 144, 24, 1], &[0, 2880, 2080, 480, 40, 1]]),
        ),
        (
            "red[S, zS]",
            family("exp_s", &[], 8).exp_array().reduce(6).unwrap().matrix().clone(),
            rows(&[&[1], &[2, 1], &[8, 4, 1], &[56, 24, 6, 1], &[576, 208, 48, 8, 1], &[7872, 2432, 504, 80, 10, 1]]),
        ),
        (
            "[e^(e^z-1), log(1/(2-e^z))]",
            exponential("bell", 6),
            rows(&[&[1], &[1, 1], &[2, 4, 1], &[5, 18, 9, 1], &[15, 94, 72, 16, 1], &[52, 575, 600, 200, 25, 1]]),
        ),
        (
            "[e^(z e^z), zS]",
            exponential("bell_marked", 5),
            rows(&[&[1], &[1, 1], &[3, 6, 1], &[10, 45, 15, 1], &[41, 432, 210, 28, 1]]),
        ),
        (
            "p_k array",
            p_array(8).build_matrix(5).unwrap(),
            rows(&[&[1], &[4, 1], &[9, 6, 1], &[16, 20, 8, 1], &[25, 50, 35, 10, 1]]),
        ),
        (
            "P_l array",
            big_p_array(8).build_matrix(5).unwrap(),
            rows(&[&[1], &[3, 1], &[5, 5, 1], &[7, 14, 7, 1], &[9, 30, 27, 9, 1]]),
        ),
        (
            "c_{k,n} array",
            cheb_array(8).build_matrix(7).unwrap(),
            rows(&[
                &[1],
                &[0, 1],
                &[-1, 0, 1],
                &[0, -2, 0, 1],
                &[1, 0, -3, 0, 1],
                &[0, 3, 0, -4, 0, 1],
                &[-1, 0, 6, 0, -5, 0, 1],
            ]),
        ),
    ];
    for (label, got, want) in &checks {
        compare(label, got, want)?;
    }
    compare("p_k table", &p_table(5), &p_array(8).build_matrix(5).unwrap())?;
    compare("P_l table", &big_p_table(5), &big_p_array(8).build_matrix(5).unwrap())?;
    compare("c_{k,n} table", &cheb_table(7), &cheb_array(8).build_matrix(7).unwrap())?;
    Ok(format!("{} matrices reproduced", checks.len()))
}

fn b_of(name: &str, params: &[(&str, i64)]) -> Result<Series, String> {
    let report = b_function_from_f(&family(name, params, F_ORDER).f).map_err(|e| e.to_string())?;
    ensure(report.is_consistent(), || format!("{name}: residuals {:?}", report.residual_orders))?;
    Ok(report.b)
}

fn poly(c: &[i64]) -> Series {
    Poly::from_ints(c).to_series(B_ORDER)
}

fn one_minus_z_pow(e: i64) -> Series {
    poly(&[1, -1]).pow_int(e).unwrap()
}

fn expect_series(label: &str, got: &Series, want: &Series) -> Result<(), String> {
    ensure(got.order() >= B_ORDER && want.order() >= B_ORDER, || format!("{label}: too short"))?;
    match got.truncate(B_ORDER).first_difference(&want.truncate(B_ORDER)) {
        None => Ok(()),
        Some(i) => Err(format!("{label}: coefficient {i} is {}, expected {}", got.coeff(i), want.coeff(i))),
    }
}

fn expect_prefix(label: &str, got: &Series, want: &[i64]) -> Result<(), String> {
    for (i, w) in want.iter().enumerate() {
        ensure(*got.coeff(i) == rat(*w), || format!("{label}: coefficient {i} is {}, expected {w}", got.coeff(i)))?;
    }
    Ok(())
}

fn criterion_b_functions() -> Outcome {
    let n = B_ORDER;
    let count = Cell::new(0);
    let check = |label: &str, got: Series, want: Series| -> Result<(), String> {
        count.set(count.get() + 1);
        expect_series(label, &got, &want)
    };
    check("z/(1-z)", b_of("pascal", &[])?, Series::one(n))?;
    check("zC^3", b_of("catalan", &[])?, poly(&[3, 1]))?;
    check("zT_3^5", b_of("k_ary", &[("k", 3)])?, poly(&[5, 5, 1]))?;
    check("zr^2", b_of("schroder", &[])?, one_minus_z_pow(-1).scale(&rat(4)))?;
    check("zr_3^4", b_of("gen_schroder", &[("k", 3)])?, poly(&[8, 8]).mul_series(&one_minus_z_pow(-2)))?;
    check(
        "zr_4^6",
        b_of("gen_schroder", &[("k", 4)])?,
        poly(&[12, 40, 12]).mul_series(&one_minus_z_pow(-3)),
    )?;
    let c = catalan(n).unwrap();
    check("z mtilde", b_of("motzkin", &[])?, c.clone())?;
    check("zt_2", b_of("double_root", &[("k", 2)])?, c.scale(&rat(2)))?;
    let t3 = tree(3, n).unwrap();
    check("zt_3^2", b_of("double_root", &[("k", 3)])?, t3.pow_int(2).unwrap().scale(&rat(4)))?;
    let t4 = tree(4, n).unwrap();
    let t4d = double_root(4, n).unwrap();
    let want = t4
        .pow_int(2)
        .unwrap()
        .scale(&rat(2))
        .mul_series(&(&t4d.scale(&rat(2)) + &Series::one(n)));
    check("zt_4^3", b_of("double_root", &[("k", 4)])?, want)?;

    let b = b_of("ct_pos", &[("n", 2)])?;
    expect_prefix("zC^5(zC)", &b, &[5, 0, 1, -5, 25, -130])?;
    let closed = Series::from_fn(n, |j| {
        if j < 2 {
            return rat(if j == 0 { 5 } else { 0 });
        }
        let j = j as i64;
        let sign = if j % 2 == 0 { 1 } else { -1 };
        ratio(5 * sign, 2 * j + 1) * Rat::from_integer(binomial(3 * j - 2, j - 2))
    });
    check("zC^5(zC) closed form", b, closed)?;

    let b = b_of("basketball", &[])?;
    expect_prefix("z/C(-zC^2)", &b, &[1, 2, 9, 52, 340])?;
    let closed = Series::from_fn(n, |j| {
        let j = j as i64;
        ratio(2, 3 * j + 2) * Rat::from_integer(binomial(4 * j + 1, j))
    });
    check("z/C(-zC^2) closed form", b.clone(), closed)?;
    check("z/C(-zC^2) = T_4^2", b, t4.pow_int(2).unwrap())?;

    let b = b_of("ct_neg", &[("n", 3)])?;
    expect_prefix("z/C^3(-zT_3^3)", &b, &[3, 10, 72, 660, 6825])?;
    let t6 = tree(6, n).unwrap();
    check(
        "z/C^3(-zT_3^3) = 2T_6^3 + T_6^4",
        b,
        &t6.pow_int(3).unwrap().scale(&rat(2)) + &t6.pow_int(4).unwrap(),
    )?;

    let beta = beta_sequence(&family("exp_t", &[], F_ORDER).f).map_err(|e| e.to_string())?;
    ensure(beta.beta.len() > n && beta.beta.iter().all(|b| *b == rat(2)), || {
        format!("beta of zT^2: {:?}", &beta.beta[..4])
    })?;
    count.set(count.get() + 1);

    let beta = beta_sequence(&family("exp_s", &[], F_ORDER).f).map_err(|e| e.to_string())?;
    ensure(beta.beta.len() > n, || "beta of zS too short".into())?;
    let fixture = builtin_fixtures().get("A007106").cloned().ok_or("A007106 fixture missing")?;
    for (j, bj) in beta.beta.iter().enumerate() {
        let direct = if j == 0 {
            rat(2)
        } else {
            let j = j as i64;
            (0..=j).fold(Rat::zero(), |acc, i| {
                acc + Rat::from_integer(binomial(2 * j + 2, i)) * rat(j + 1 - i).pow((2 * j) as i32)
            })
        };
        ensure(*bj == direct, || format!("beta_{j} of zS is {bj}, formula gives {direct}"))?;
        if let Some(t) = fixture.terms.get(j) {
            ensure(*bj == Rat::from_integer(t * 2), || format!("beta_{j} of zS is {bj}, fixture gives 2 * {t}"))?;
        }
    }
    count.set(count.get() + 1);

    let b = b_of("fibonacci", &[])?;
    let y = b.truncate(n);
    let rhs = &(&(&poly(&[3, -1]) - &y.shift_up(1).truncate(n)) + &y.mul_series(&y).shift_up(1).truncate(n))
        - &Series::zero(n);
    check("y = 3 - z - zy + zy^2", y.clone(), rhs)?;
    let root = Poly::from_ints(&[1, -10, 5]).to_series(n + 1).sqrt().unwrap();
    let closed = (&poly(&[1, 1]).extend_with_zeros(n + 1) - &root)
        .shift_down(1)
        .unwrap()
        .scale(&ratio(1, 2));
    check("Fibonacci closed form", y, closed)?;
    Ok(format!("{} identities exact to order {n}", count.get()))
}

fn criterion_routes() -> Outcome {
    let mut count = 0;
    for (name, params) in gamma_family_cases() {
        let gamma = family(name, &params, 8).gamma.ok_or(format!("{name} has no gamma"))?;
        route_check(&gamma, B_ORDER).map_err(|e| format!("{name} {params:?}: {e}"))?;
        count += 1;
    }
    let mut rng = StdRng::seed_from_u64(2024);
    let mut quads = 0;
    while quads < 20 {
        let (a, b, c) = (rng.gen_range(-4i64..=4), rng.gen_range(-4i64..=4), rng.gen_range(-4i64..=4));
        if a == 0 || b == 0 || a + b + c == 0 {
            continue;
        }
        let gamma = quad_gamma(&rat(a), &rat(b), &rat(c)).map_err(|e| e.to_string())?;
        route_check(&gamma, B_ORDER).map_err(|e| format!("quad ({a}, {b}, {c}): {e}"))?;
        quads += 1;
    }
    Ok(format!("{count} catalog cases and {quads} random quadratic cases agree"))
}

fn criterion_structure() -> Outcome {
    let n = 20;
    let families = list_families();
    for d in &families {
        let inst = make_family(d.name, &Params::new(), n).map_err(|e| e.to_string())?;
        let (report, twist) = match inst.kind {
            ArrayKind::Ordinary => {
                let a = inst.array();
                (a.is_pseudo_involution(n), a.sign_twist_mismatch(n + 1))
            }
            ArrayKind::Exponential => {
                let a = inst.exp_array();
                (a.is_pseudo_involution(n), a.sign_twist_mismatch(n + 1))
            }
        };
        ensure(report.holds, || format!("{}: {:?}", d.name, report.first_failure))?;
        let twist = twist.map_err(|e| e.to_string())?;
        ensure(twist.is_none(), || format!("{}: sign twist differs at {twist:?}", d.name))?;
    }
    let cases = twin_cases();
    for (name, params, l) in &cases {
        twin_round_trip(&family(name, params, 56), *l).map_err(|e| format!("{name} {params:?}: {e}"))?;
    }
    for c in [3, 9] {
        let inst = family("increasing_tree", &[("c", c), ("d", 3)], 40);
        let bf = b_function_from_f(&inst.f).map_err(|e| e.to_string())?.b;
        let bh = twin_powers(&bf, 1, TwinDirection::BfToBh).map_err(|e| e.to_string())?;
        ensure(bh.agrees_with(&Series::constant(rat(c), bh.order())), || format!("increasing tree c={c}: {bh}"))?;
        let again = twin_powers(&bh, 1, TwinDirection::BhToBf).map_err(|e| e.to_string())?;
        ensure(again.agrees_with(&bf), || format!("increasing tree c={c}: round trip"))?;
    }
    let mut rng = StdRng::seed_from_u64(99);
    for _ in 0..10 {
        let u = ratio(rng.gen_range(-30..=30), rng.gen_range(1..=12));
        let v = ratio(rng.gen_range(-30..=30), rng.gen_range(1..=12));
        for l in 0..=8 {
            ensure(girard_waring_check(l, &u, &v), || format!("Girard-Waring l={l} u={u} v={v}"))?;
        }
    }
    Ok(format!(
        "{} families involutive, {} twin-power round trips, Girard-Waring on 10 pairs",
        families.len(),
        cases.len() + 2
    ))
}

fn criterion_fixtures() -> Outcome {
    let fx = builtin_fixtures();
    let mut passed = BTreeSet::new();
    let mut failed = Vec::new();
    for inst in tagged_instances(24) {
        for check in check_family_tags(&inst, &fx) {
            if check.passed() {
                passed.insert(check.tag.id.clone());
            } else {
                failed.push(format!("{} {}", inst.name, check.tag.id));
            }
        }
    }
    for (id, table) in [("A049310", cheb_table(12)), ("A111125", big_p_table(12)), ("A156308", p_table(12))] {
        let fixture = fx.get(id).ok_or(format!("{id} missing"))?;
        if oeis_check_triangle(&table, fixture).passed() {
            passed.insert(id.to_string());
        } else {
            failed.push(id.to_string());
        }
    }
    ensure(failed.is_empty(), || format!("mismatches: {failed:?}"))?;
    ensure(passed.len() >= 30, || format!("only {} sequences matched", passed.len()))?;
    Ok(format!("{} of {} fixtures matched", passed.len(), fx.len()))
}

fn criterion_negative_controls() -> Outcome {
    let c = catalan(20).unwrap();
    let bad = RiordanArray::new(c.clone(), c.mul_series(&c).shift_up(1).truncate(20)).unwrap();
    ensure(!bad.is_pseudo_involution(20).holds, || "(C, zC^2) passed the pseudo-involution check".into())?;

    let good = family("catalan", &[], 12).array().build_matrix(10).unwrap();
    let b = [rat(3), rat(1)];
    ensure(verify_b_recurrence(&good, &b).passed(), || "unperturbed matrix failed".into())?;
    let cell = (6, 3);
    let perturbed = good.with_entry(cell.0, cell.1, good.get(cell.0, cell.1) + rat(1));
    let report = verify_b_recurrence(&perturbed, &b);
    ensure(report.failures.first() == Some(&cell), || format!("first failure {:?}", report.failures.first()))?;

    let g = family("k_ary", &[("k", 3)], 40).g;
    let bf = b_function_from_f(&common::aerated_f(&g, 5, 40)).map_err(|e| e.to_string())?.b;
    match twin_powers(&bf, 1, TwinDirection::BfToBh) {
        Err(TheoremError::SupportViolation { index }) => Ok(format!(
            "involution check rejects (C, zC^2), perturbed cell {cell:?} caught, support violation at z^{index}"
        )),
        other => Err(format!("mismatched l gave {other:?}")),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("matrix reproductions", criterion_matrices),
        ("B-function identities", criterion_b_functions),
        ("route agreement", criterion_routes),
        ("group and structure properties", criterion_structure),
        ("sequence fixtures", criterion_fixtures),
        ("negative controls", criterion_negative_controls),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}; {secs:.1}s)", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {}: {name} ({detail}; {secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        criteria.len() - failures,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
