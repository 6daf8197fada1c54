//! Acceptance battery: verification sweeps across every construction,
//! independent oracles for the derived quantities, and mutation probes
//! that must be caught with explicit witnesses.
//!
//! Each test prints a single summary line; run with `--nocapture` to see
//! them on a passing build.

use wmha_core::algebra::{check_algebra, Algebra, Multiplier};
use wmha_core::constructions::{
    cb_counit_forms, cb_wmha, check_cb_structure, check_smash_compatibility,
    check_smash_structure, dqg_wmha, function_wmha, gamma_map, groupoid_algebra_wmha, set_wmha,
    smash_algebra, smash_wmha,
};
use wmha_core::groupoid::{
    action_groupoid, disjoint_union, group_groupoid, pair_groupoid, FiniteGroup, FiniteGroupoid,
    GroupAction,
};
use wmha_core::hopf::{function_left_action, function_right_action, group_hopf};
use wmha_core::linalg::{tensor_svec, LinMap};
use wmha_core::report::{CheckResult, Status};
use wmha_core::separability::{diagonal_on_set, from_dqg};
use wmha_core::source_target::leg_spans;
use wmha_core::wmha::{verify_all, Verifier, WmhaBundle};
use wmha_core::{rat, Rat};

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn groupoids() -> Vec<FiniteGroupoid> {
    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    vec![
        pair_groupoid(2),
        pair_groupoid(3),
        group_groupoid(&z2),
        group_groupoid(&z3),
        disjoint_union(&group_groupoid(&z2), &group_groupoid(&z3)),
        action_groupoid(&names(3), &z2, &GroupAction::swap(3, 0, 1)),
    ]
}

/// Function and convolution bundles over each of the six groupoids.
fn twelve_bundles() -> Vec<WmhaBundle<Rat>> {
    groupoids()
        .iter()
        .flat_map(|g| [function_wmha(g), groupoid_algebra_wmha(g)])
        .collect()
}

/// Every check that is not an outright pass, labelled with its instance.
fn not_passing(instance: &str, checks: &[CheckResult]) -> Vec<String> {
    checks
        .iter()
        .filter(|c| c.status != Status::Pass)
        .map(|c| format!("{instance}: {c}"))
        .collect()
}

fn conclude(criterion: usize, summary: &str, problems: Vec<String>) {
    if problems.is_empty() {
        println!("criterion {criterion}: PASS — {summary}");
    } else {
        println!("criterion {criterion}: FAIL — {summary}");
        panic!("{}", problems.join("\n"));
    }
}

#[test]
fn criterion_1_axiom_suite_over_all_groupoid_bundles() {
    let bundles = twelve_bundles();
    assert_eq!(bundles.len(), 12);
    let mut problems = Vec::new();
    let mut total = 0;
    for w in &bundles {
        let checks = verify_all(w);
        total += checks.len();
        problems.extend(not_passing(&w.name, &checks));
    }
    conclude(1, &format!("12 bundles, {total} checks, all passing"), problems);
}

#[test]
fn criterion_2_leg_structure_suite_present_on_every_bundle() {
    // One representative check per structural claim about the legs of E.
    let required = [
        "source-leg-span",
        "target-leg-span",
        "leg-coproducts",
        "invariant-subalgebras-commute",
        "counital-exchange",
        "leg-absorption",
        "legs-idempotent",
        "leg-multipliers-inside-invariants",
        "leg-multipliers-exhaust-invariants",
        "leg-antipode-injective",
        "leg-antipode-non-degenerate",
        "separability-antipodal-anti-multiplicative",
        "idempotent-leg-containments",
        "separability-certificate",
        "separability-regular",
        "functional-composition",
        "leg-local-units",
        "algebra-local-units",
        "reduced-counital-spans",
    ];
    let mut problems = Vec::new();
    for w in &twelve_bundles() {
        let checks = verify_all(w);
        for name in required {
            match checks.iter().find(|c| c.name == name) {
                None => problems.push(format!("{}: {name} missing", w.name)),
                Some(c) if c.status != Status::Pass => {
                    problems.push(format!("{}: {c}", w.name));
                }
                Some(_) => {}
            }
        }
    }
    conclude(
        2,
        &format!("{} leg-structure checks pass on each of 12 bundles", required.len()),
        problems,
    );
}

#[test]
fn criterion_3_cb_bundles_verify_with_agreeing_counit_forms() {
    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    let seps = [
        diagonal_on_set::<Rat>(&names(3)),
        from_dqg::<Rat>(&z2),
        from_dqg::<Rat>(&z3),
    ];
    let bundles = [
        cb_wmha(&seps[0]).expect("diagonal C⊗B bundle"),
        dqg_wmha(&z2).expect("group C⊗B bundle"),
        dqg_wmha(&z3).expect("group C⊗B bundle"),
    ];
    let mut problems = Vec::new();
    for (sep, w) in seps.iter().zip(&bundles) {
        if w.expect_regular != Some(true) {
            problems.push(format!("{}: not built as regular", w.name));
        }
        let checks = verify_all(w);
        problems.extend(not_passing(&w.name, &checks));
        let v = Verifier::new(w);
        problems.extend(not_passing(&w.name, &check_cb_structure(&v, sep)));
        let (via_c, via_b) = cb_counit_forms(sep).expect("counit forms");
        if via_c != via_b {
            problems.push(format!("{}: the two counit forms disagree", w.name));
        }
        if w.counit != via_c {
            problems.push(format!("{}: bundle counit differs from the closed form", w.name));
        }
    }
    conclude(3, "3 C⊗B bundles regular, fully verified, counit forms agree", problems);
}

/// Rank deficiency of the multiplication map C⊗B → A, computed directly
/// from a column-by-column matrix rank.
fn multiplication_rank_deficiency(w: &WmhaBundle<Rat>) -> usize {
    let v = Verifier::new(w);
    let (b_sub, c_sub) = leg_spans(&v).expect("leg spans");
    let (nb, nc) = (b_sub.dim(), c_sub.dim());
    let alg = &w.algebra;
    let m = LinMap::from_cols(
        alg.dim,
        (0..nc * nb)
            .map(|r| alg.mult(&c_sub.basis()[r / nb], &b_sub.basis()[r % nb]))
            .collect(),
    );
    nc * nb - m.rank()
}

#[test]
fn criterion_4_gamma_intertwines_and_kernel_matches_rank_oracle() {
    let mut problems = Vec::new();
    // γ is injective on pair-groupoid functions; on the functions of a
    // bare n-point set its kernel has dimension n²−n.
    let mut bundles: Vec<(WmhaBundle<Rat>, Option<usize>)> = vec![
        (function_wmha(&pair_groupoid(2)), Some(0)),
        (function_wmha(&pair_groupoid(3)), Some(0)),
        (set_wmha(&names(2)), Some(2)),
        (set_wmha(&names(3)), Some(6)),
    ];
    for w in twelve_bundles() {
        bundles.push((w, None));
    }
    for (w, expected) in &bundles {
        let rep = match gamma_map(w) {
            Ok(r) => r,
            Err(e) => {
                problems.push(format!("{}: γ not constructible: {e}", w.name));
                continue;
            }
        };
        problems.extend(not_passing(&w.name, &rep.checks));
        let oracle = multiplication_rank_deficiency(w);
        if rep.kernel_dim != oracle {
            problems.push(format!(
                "{}: recorded kernel {} but rank deficiency {oracle}",
                w.name, rep.kernel_dim
            ));
        }
        if let Some(k) = expected {
            if rep.kernel_dim != *k {
                problems.push(format!("{}: kernel {} ≠ expected {k}", w.name, rep.kernel_dim));
            }
        }
    }
    let k2 = gamma_map(&set_wmha::<Rat>(&names(2))).expect("γ on 2-point set functions").kernel_dim;
    if k2 == 0 {
        problems.push("set(2): γ unexpectedly injective".to_string());
    }
    conclude(4, "γ intertwines on 16 bundles, kernels match the rank oracle", problems);
}

#[test]
fn criterion_5_smash_instance_full_battery() {
    let x = names(3);
    let z2 = FiniteGroup::cyclic(2);
    let q = group_hopf::<Rat>(&z2);
    let sep = diagonal_on_set::<Rat>(&x);
    let action = GroupAction::swap(3, 0, 1);
    let act_r = function_right_action(&z2, &action);
    let act_l = function_left_action(&z2, &action);
    let mut problems = Vec::new();

    let p = smash_algebra(&sep.b, &sep.c, &q, &act_r, &act_l).expect("smash algebra");
    if p.dim != 18 {
        problems.push(format!("smash dimension {} ≠ 18", p.dim));
    }
    problems.extend(not_passing("smash algebra", &check_algebra(&p)));

    let compat = check_smash_compatibility(&sep, &q, &act_r, &act_l);
    problems.extend(not_passing("smash", std::slice::from_ref(&compat)));

    let w = smash_wmha(&sep, &q, &act_r, &act_l).expect("smash bundle");
    if w.expect_regular != Some(true) {
        problems.push("smash: not built as regular".to_string());
    }
    problems.extend(not_passing(&w.name, &verify_all(&w)));

    let v = Verifier::new(&w);
    let extra = check_smash_structure(&v, &sep, &q, &act_r, &act_l);
    for name in [
        "smash-compatibility",
        "smash-idempotent-commutes",
        "smash-counital-forms",
        "smash-functional-invariance",
        "smash-functional-exchange",
    ] {
        if !extra.iter().any(|c| c.name == name) {
            problems.push(format!("smash: {name} missing"));
        }
    }
    problems.extend(not_passing(&w.name, &extra));
    conclude(5, "18-dim smash bundle fully verified with closed-form counital maps", problems);
}

/// The named check must fail and must carry a non-empty witness.
fn expect_caught(checks: &[CheckResult], name: &str, what: &str, problems: &mut Vec<String>) {
    match checks.iter().find(|c| c.name == name && c.status == Status::Fail) {
        None => {
            let failing: Vec<&str> = checks
                .iter()
                .filter(|c| c.status == Status::Fail)
                .map(|c| c.name.as_str())
                .collect();
            problems.push(format!("{what}: {name} did not fail; failing: {failing:?}"));
        }
        Some(c) => match &c.witness {
            Some(wtn) if !wtn.is_empty() => {}
            _ => problems.push(format!("{what}: {name} failed without a witness")),
        },
    }
}

#[test]
fn criterion_6_mutations_are_caught_with_witnesses() {
    let mut problems = Vec::new();
    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);

    // Dropping one unit's term from the supplied idempotent.
    let g = disjoint_union(&group_groupoid(&z2), &group_groupoid(&z3));
    let mut w = groupoid_algebra_wmha::<Rat>(&g);
    let e0 = g.units[0];
    let partial = tensor_svec(&w.algebra.basis(e0), &w.algebra.basis(e0));
    w.supplied_e = Some(Multiplier::from_element(&w.sq, &partial));
    expect_caught(
        &verify_all(&w),
        "canonical-idempotent-matches-supplied",
        "dropped unit term",
        &mut problems,
    );

    // Forcing the antipode to the identity on a non-group groupoid.
    let mut w = function_wmha::<Rat>(&pair_groupoid(2));
    w.antipode = (0..w.algebra.dim)
        .map(|i| Multiplier::from_element(&w.algebra, &w.algebra.basis(i)))
        .collect();
    expect_caught(&verify_all(&w), "antipode-section-left", "identity antipode", &mut problems);

    // Scaling one structure constant of the convolution product.
    let base = groupoid_algebra_wmha::<Rat>(&pair_groupoid(2));
    let n = base.algebra.dim;
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let row = base.algebra.basis_mult(i, j).clone();
            table.push(if (i, j) == (1, 2) { row.scale(&rat(2, 1)) } else { row });
        }
    }
    let perturbed = Algebra::new(base.algebra.labels.clone(), table);
    expect_caught(&check_algebra(&perturbed), "associativity", "scaled product", &mut problems);

    // Zeroing one coproduct entry. The remaining slices still span, so the
    // damage surfaces where (ε⊗ι) must collapse T1 back to the product.
    let mut w = function_wmha::<Rat>(&pair_groupoid(2));
    w.delta[0] = Multiplier::zero(w.sq.dim);
    expect_caught(&verify_all(&w), "counit-unique", "zeroed coproduct entry", &mut problems);

    // Pairing incompatible actions in the smash construction.
    let sep = diagonal_on_set::<Rat>(&names(3));
    let q = group_hopf::<Rat>(&z2);
    let act_r = function_right_action(&z2, &GroupAction::swap(3, 0, 1));
    let act_l = function_left_action(&z2, &GroupAction::trivial(2, 3));
    let compat = check_smash_compatibility(&sep, &q, &act_r, &act_l);
    expect_caught(
        std::slice::from_ref(&compat),
        "smash-compatibility",
        "non-equivariant action",
        &mut problems,
    );
    if smash_wmha(&sep, &q, &act_r, &act_l).is_ok() {
        problems.push("non-equivariant action: smash construction did not refuse".to_string());
    }

    conclude(6, "5 mutations each caught with a named witness", problems);
}

#[test]
fn criterion_7_cb_over_diagonal_reproduces_pair_groupoid_functions() {
    let mut problems = Vec::new();
    let sep = diagonal_on_set::<Rat>(&names(2));
    let cb = cb_wmha(&sep).expect("diagonal C⊗B bundle");
    let fw = function_wmha::<Rat>(&pair_groupoid(2));
    if cb.dim() != fw.dim() {
        problems.push(format!("dimension {} ≠ {}", cb.dim(), fw.dim()));
    }
    let n = fw.dim();
    for i in 0..n {
        for j in 0..n {
            if cb.algebra.basis_mult(i, j) != fw.algebra.basis_mult(i, j) {
                problems.push(format!("product table differs at ({i},{j})"));
            }
        }
    }
    if cb.delta != fw.delta {
        problems.push("coproduct tables differ".to_string());
    }
    if cb.counit != fw.counit {
        problems.push("counits differ".to_string());
    }
    if cb.antipode != fw.antipode {
        problems.push("antipodes differ".to_string());
    }
    if cb.supplied_e != fw.supplied_e {
        problems.push("idempotents differ".to_string());
    }
    conclude(7, "C⊗B over a 2-point diagonal equals the pair-groupoid function bundle", problems);
}
