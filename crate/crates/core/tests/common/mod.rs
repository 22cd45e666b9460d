#![allow(dead_code)]

use riordan::families::{list_families, make_family_with, FamilyInstance};
use riordan::fps::Series;
use riordan::riordan::b_function_from_f;
use riordan::theorems::{b_function_via_ogf_theorem, companion_from_gamma, twin_powers, GeneratingKind, TwinDirection};
use riordan::LaurentRational;

pub type Params = Vec<(&'static str, i64)>;

pub fn family(name: &str, params: &[(&str, i64)], order: usize) -> FamilyInstance {
    make_family_with(name, params, order).unwrap_or_else(|e| panic!("{name} {params:?}: {e}"))
}

/// Catalog members whose sequence tags are switched on: every default
/// instance plus the parameter values that select further fixtures.
pub fn tagged_instances(order: usize) -> Vec<FamilyInstance> {
    let extra: &[(&str, &[(&str, i64)])] = &[
        ("ct_pos", &[("n", 3)]),
        ("ct_pos", &[("n", 4)]),
        ("ct_neg", &[("n", 3)]),
        ("k_motzkin", &[("k", 3)]),
        ("gen_schroder", &[("k", 2)]),
    ];
    list_families()
        .iter()
        .map(|d| (d.name, &[][..]))
        .chain(extra.iter().copied())
        .map(|(name, params)| family(name, params, order))
        .collect()
}

/// Ordinary families built from a palindromic `gamma`, with parameters.
pub fn gamma_family_cases() -> Vec<(&'static str, Params)> {
    let mut cases = Vec::new();
    for a in [1, 2] {
        for k in 1..=4 {
            cases.push(("k_ary", vec![("k", k), ("a", a)]));
        }
    }
    for k in 1..=5 {
        cases.push(("double_root", vec![("k", k)]));
    }
    for k in 1..=4 {
        cases.push(("double_leaf", vec![("k", k)]));
        cases.push(("gen_schroder", vec![("k", k)]));
        cases.push(("v_k", vec![("k", k)]));
    }
    for k in 0..=3 {
        for n in 1..=3 {
            cases.push(("m_gen", vec![("k", k), ("n", n)]));
        }
    }
    for (k, d) in [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)] {
        cases.push(("w_k", vec![("k", k), ("d", d)]));
    }
    cases
}

/// Compares the theorem route with the triangular solve on the companion,
/// and the general companion formula with the Bell-power shortcut.
pub fn route_check(gamma: &LaurentRational, b_order: usize) -> Result<(), String> {
    let f_order = 2 * b_order + 2;
    let comp = companion_from_gamma(gamma, GeneratingKind::Ordinary, f_order).map_err(|e| e.to_string())?;
    match &comp.f_shortcut {
        Some(s) if *s == comp.f => {}
        Some(_) => return Err("general formula differs from the shortcut".into()),
        None => return Err("gamma has no darga".into()),
    }
    let solved = b_function_from_f(&comp.f).map_err(|e| e.to_string())?;
    if !solved.is_consistent() {
        return Err(format!("residuals at {:?}", solved.residual_orders));
    }
    let via = b_function_via_ogf_theorem(gamma, b_order).map_err(|e| e.to_string())?;
    if via.order() < b_order || solved.b.order() < b_order {
        return Err("B shorter than requested".into());
    }
    if !via.agrees_with(&solved.b) {
        return Err(format!("{via} vs {}", solved.b));
    }
    Ok(())
}

/// `z g(z^q)` truncated at `order`.
pub fn aerated_f(g: &Series, q: usize, order: usize) -> Series {
    g.aerate(q).shift_up(1).truncate(order)
}

/// For `f = z g^(2l+1)`, checks that the twin-power map carries `B_f` to
/// the B-function of `z g(z^(2l+1))` and back.
pub fn twin_round_trip(inst: &FamilyInstance, l: usize) -> Result<(), String> {
    let q = 2 * l + 1;
    let err = |e: &dyn std::fmt::Display| e.to_string();
    let bh = b_function_from_f(&inst.f).map_err(|e| err(&e))?.b;
    let bf = b_function_from_f(&aerated_f(&inst.g, q, inst.order())).map_err(|e| err(&e))?;
    if !bf.is_consistent() {
        return Err("aerated f is not pseudo-involutory".into());
    }
    let forward = twin_powers(&bh, l, TwinDirection::BhToBf).map_err(|e| err(&e))?;
    if forward.order() < 8 || !forward.agrees_with(&bf.b) {
        return Err(format!("forward: {forward} vs {}", bf.b));
    }
    let back = twin_powers(&bf.b, l, TwinDirection::BfToBh).map_err(|e| err(&e))?;
    if back.order() < 1 || !back.agrees_with(&bh) {
        return Err(format!("backward: {back} vs {bh}"));
    }
    Ok(())
}

/// Families for the twin-power round trip with their `l`.
pub fn twin_cases() -> Vec<(&'static str, Params, usize)> {
    let mut cases = Vec::new();
    for k in 2..=4 {
        cases.push(("k_ary", vec![("k", k)], (k - 1) as usize));
    }
    for k in [2, 4, 6, 8] {
        cases.push(("double_root", vec![("k", k)], ((k - 2) / 2) as usize));
    }
    for n in 1..=3 {
        cases.push(("ct_pos", vec![("n", n)], n as usize));
    }
    for n in 2..=3 {
        cases.push(("ct_neg", vec![("n", n)], (n - 2) as usize));
    }
    cases
}
