//! Stock constructions emitting bundles ready for `verify_all`.
//!
//! Two groupoid models (functions and convolution), the two-leg algebra
//! C⊗B over a separability idempotent, the multiplication map γ back into
//! the original algebra, and the two-sided smash product C⊗Q⊗B for a Hopf
//! algebra Q acting on both legs.

use crate::algebra::{tensor_multiplier, Algebra, Multiplier};
use crate::groupoid::{FiniteGroup, FiniteGroupoid};
use crate::hopf::{check_left_module_algebra, check_right_module_algebra, HopfAlgebra, LeftAction, RightAction};
use crate::linalg::{kron, tensor_svec, LinMap, RowReducer, SVec};
use crate::report::CheckResult;
use crate::scalar::Scalar;
use crate::separability::{from_dqg, is_regular, verify_sep, SepSolved, SeparabilityIdempotent};
use crate::source_target::{certify_separability, leg_spans};
use crate::wmha::{Verifier, WmhaBundle};

/// Functions on a finite groupoid: Δ(f)(p,q) = f(pq) when pq is defined
/// and 0 otherwise, S(f)(p) = f(p⁻¹), ε(f) = Σ f(unit).
pub fn function_wmha<F: Scalar>(g: &FiniteGroupoid) -> WmhaBundle<F> {
    assert!(g.validate().is_empty(), "invalid groupoid");
    let n = g.len();
    let alg: Algebra<F> = crate::algebra::function_algebra(&g.labels);
    let sq = alg.tensor(&alg);
    let delta: Vec<Multiplier<F>> = (0..n)
        .map(|r| {
            let mut terms = Vec::new();
            for p in 0..n {
                for q in 0..n {
                    if g.compose(p, q) == Some(r) {
                        terms.push((p * n + q, F::one()));
                    }
                }
            }
            Multiplier::from_element(&sq, &SVec::from_terms(n * n, terms))
        })
        .collect();
    let counit: Vec<F> = (0..n).map(|p| if g.is_unit(p) { F::one() } else { F::zero() }).collect();
    let antipode: Vec<Multiplier<F>> =
        (0..n).map(|p| Multiplier::from_element(&alg, &alg.basis(g.inverse[p]))).collect();
    let mut b = WmhaBundle::assemble(
        &format!("groupoid-functions(dim {n})"),
        alg,
        sq,
        delta,
        counit,
        antipode,
    );
    // The canonical idempotent is the indicator of the composable pairs.
    let mut e_terms = Vec::new();
    for p in 0..n {
        for q in 0..n {
            if g.compose(p, q).is_some() {
                e_terms.push((p * n + q, F::one()));
            }
        }
    }
    b.supplied_e = Some(Multiplier::from_element(&b.sq, &SVec::from_terms(n * n, e_terms)));
    b.expect_regular = Some(true);
    b
}

/// Convolution algebra of a finite groupoid: λ_pλ_q = λ_{pq} when defined
/// and 0 otherwise, Δ(λ_p) = λ_p⊗λ_p, S(λ_p) = λ_{p⁻¹}, ε(λ_p) = 1.
pub fn groupoid_algebra_wmha<F: Scalar>(g: &FiniteGroupoid) -> WmhaBundle<F> {
    assert!(g.validate().is_empty(), "invalid groupoid");
    let n = g.len();
    let mut table = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in 0..n {
            table.push(match g.compose(p, q) {
                Some(r) => SVec::unit(n, r),
                None => SVec::zero(n),
            });
        }
    }
    let labels = g.labels.iter().map(|l| format!("λ{l}")).collect();
    let alg: Algebra<F> = Algebra::new(labels, table);
    let sq = alg.tensor(&alg);
    let delta: Vec<Multiplier<F>> =
        (0..n).map(|p| Multiplier::from_element(&sq, &SVec::unit(n * n, p * n + p))).collect();
    let counit = vec![F::one(); n];
    let antipode: Vec<Multiplier<F>> =
        (0..n).map(|p| Multiplier::from_element(&alg, &alg.basis(g.inverse[p]))).collect();
    let mut b = WmhaBundle::assemble(
        &format!("groupoid-convolution(dim {n})"),
        alg,
        sq,
        delta,
        counit,
        antipode,
    );
    // The canonical idempotent sums the diagonal over the units only.
    let e_terms: Vec<(usize, F)> = g.units.iter().map(|&e| (e * n + e, F::one())).collect();
    b.supplied_e = Some(Multiplier::from_element(&b.sq, &SVec::from_terms(n * n, e_terms)));
    b.expect_regular = Some(true);
    b
}

/// Both closed forms of the counit on C⊗B: φ_C(c·S_B(b)) and φ_B(S_C(c)·b).
pub fn cb_counit_forms<F: Scalar>(
    sep: &SeparabilityIdempotent<F>,
) -> Result<(Vec<F>, Vec<F>), String> {
    let solved = sep_structure(sep)?;
    let (nb, nc) = (sep.b.dim, sep.c.dim);
    let mut via_c = Vec::with_capacity(nc * nb);
    let mut via_b = Vec::with_capacity(nc * nb);
    for gamma in 0..nc {
        for beta in 0..nb {
            let cs = solved.s_b[beta].right.apply(&sep.c.basis(gamma));
            via_c.push(dot_dense(&solved.phi_c, &cs));
            let sb = solved.s_c[gamma].left.apply(&sep.b.basis(beta));
            via_b.push(dot_dense(&solved.phi_b, &sb));
        }
    }
    Ok((via_c, via_b))
}

fn dot_dense<F: Scalar>(phi: &[F], v: &SVec<F>) -> F {
    let mut acc = F::zero();
    for (i, c) in v.terms() {
        acc = acc + phi[*i].clone() * c.clone();
    }
    acc
}

fn sep_structure<F: Scalar>(sep: &SeparabilityIdempotent<F>) -> Result<SepSolved<F>, String> {
    sep.resolved().or_else(|_| sep.solve_structure())
}

/// The bundle on P = C⊗B over a separability idempotent: Δ_P(c⊗b) places E
/// between the legs, S_P(c⊗b) = S_B(b)⊗S_C(c), ε_P(c⊗b) = φ_C(c·S_B(b)).
pub fn cb_wmha<F: Scalar>(sep: &SeparabilityIdempotent<F>) -> Result<WmhaBundle<F>, String> {
    let battery = verify_sep(sep);
    if let Some(f) = battery.iter().find(|c| !c.passed()) {
        return Err(format!("separability battery failed at {}", f.name));
    }
    let solved = sep_structure(sep)?;
    let (nb, nc) = (sep.b.dim, sep.c.dim);
    let np = nc * nb;
    let p_alg = sep.c.tensor(&sep.b);
    let sq = p_alg.tensor(&p_alg);

    // Δ_P(c⊗b)·((c₁⊗b₁)⊗(c₂⊗b₂)) = Σ cc₁⊗u ⊗ v⊗bb₂ with E(b₁⊗c₂) = Σ u⊗v,
    // and the mirror formula for the right action.
    let pair = |i: usize| (i / nb, i % nb);
    let mut delta = Vec::with_capacity(np);
    for r in 0..np {
        let (gamma, beta) = pair(r);
        let mut lcols = Vec::with_capacity(np * np);
        let mut rcols = Vec::with_capacity(np * np);
        for x in 0..np {
            let (g1, b1) = pair(x);
            for y in 0..np {
                let (g2, b2) = pair(y);
                let slot = tensor_svec(&sep.b.basis(b1), &sep.c.basis(g2));
                let cc1 = sep.c.basis_mult(gamma, g1);
                let bb2 = sep.b.basis_mult(beta, b2);
                lcols.push(middle_expand(&sep.e.left.apply(&slot), nc, cc1, bb2));
                let c1c = sep.c.basis_mult(g1, gamma);
                let b2b = sep.b.basis_mult(b2, beta);
                rcols.push(middle_expand(&sep.e.right.apply(&slot), nc, c1c, b2b));
            }
        }
        delta.push(Multiplier {
            left: LinMap::from_cols(np * np, lcols),
            right: LinMap::from_cols(np * np, rcols),
        });
    }

    let (via_c, via_b) = cb_counit_forms(sep)?;
    if via_c != via_b {
        return Err("the two counit forms on C⊗B disagree".to_string());
    }

    let antipode: Vec<Multiplier<F>> = (0..np)
        .map(|r| {
            let (gamma, beta) = pair(r);
            tensor_multiplier(&solved.s_b[beta], &solved.s_c[gamma])
        })
        .collect();

    let mut bundle = WmhaBundle::assemble(
        &format!("cb({})", sep.name),
        p_alg,
        sq,
        delta,
        via_c,
        antipode,
    );

    // E_P = 1⊗E⊗1 with the same middle expansion and trivial outer products.
    let mut lcols = Vec::with_capacity(np * np);
    let mut rcols = Vec::with_capacity(np * np);
    for x in 0..np {
        let (g1, b1) = pair(x);
        for y in 0..np {
            let (g2, b2) = pair(y);
            let slot = tensor_svec(&sep.b.basis(b1), &sep.c.basis(g2));
            let cpart = sep.c.basis(g1);
            let bpart = sep.b.basis(b2);
            lcols.push(middle_expand(&sep.e.left.apply(&slot), nc, &cpart, &bpart));
            rcols.push(middle_expand(&sep.e.right.apply(&slot), nc, &cpart, &bpart));
        }
    }
    bundle.supplied_e = Some(Multiplier {
        left: LinMap::from_cols(np * np, lcols),
        right: LinMap::from_cols(np * np, rcols),
    });
    bundle.expect_regular = Some(is_regular(sep).0);
    Ok(bundle)
}

/// Distributes a B⊗C vector into the middle slots of C⊗B ⊗ C⊗B, with fixed
/// outer C and B parts.
fn middle_expand<F: Scalar>(
    mid: &SVec<F>,
    nc: usize,
    cpart: &SVec<F>,
    bpart: &SVec<F>,
) -> SVec<F> {
    let nb = if mid.dim == 0 { 0 } else { mid.dim / nc };
    let np = nc * nb;
    let mut out = SVec::zero(np * np);
    for (uv, co) in mid.terms() {
        let (u, v) = (uv / nc, uv % nc);
        let first = tensor_svec(cpart, &SVec::unit(nb, u));
        let second = tensor_svec(&SVec::unit(nc, v), bpart);
        out = out.add_scaled(&tensor_svec(&first, &second), co);
    }
    out
}

/// Functions on a set as a bundle with the diagonal coproduct; legs are
/// the whole algebra.
pub fn set_wmha<F: Scalar>(points: &[String]) -> WmhaBundle<F> {
    let mut b = function_wmha(&crate::groupoid::units_groupoid(points));
    b.name = format!("set-functions(dim {})", points.len());
    b
}

/// `cb_wmha` over the group-algebra separability idempotent of a finite
/// group, the discrete-quantum-group shape.
pub fn dqg_wmha<F: Scalar>(h: &FiniteGroup) -> Result<WmhaBundle<F>, String> {
    let sep = from_dqg::<F>(h);
    let mut b = cb_wmha(&sep)?;
    b.name = format!("dqg(group of order {})", h.len());
    Ok(b)
}

/// Closed forms of the counital maps on a C⊗B bundle, against the maps the
/// verifier computed from the coproduct.
pub fn check_cb_structure<F: Scalar>(
    v: &Verifier<F>,
    sep: &SeparabilityIdempotent<F>,
) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let (nb, nc) = (sep.b.dim, sep.c.dim);
    let np = nc * nb;
    let (Some(eps_s), Some(eps_t), Some(unit)) =
        (&v.eps_s, &v.eps_t, &v.bundle.algebra.unit)
    else {
        out.push(CheckResult::skipped(
            "cb-counital-forms",
            "closed forms of the counital maps on C⊗B",
            "needs solved counital maps on a unital algebra",
        ));
        return out;
    };
    let solved = match sep_structure(sep) {
        Ok(s) => s,
        Err(e) => {
            out.push(CheckResult::fail(
                "cb-counital-forms",
                "closed forms of the counital maps on C⊗B",
                e,
            ));
            return out;
        }
    };
    let (Some(cu), Some(bu)) = (&sep.c.unit, &sep.b.unit) else {
        out.push(CheckResult::skipped(
            "cb-counital-forms",
            "closed forms of the counital maps on C⊗B",
            "needs unital legs",
        ));
        return out;
    };
    let mut w = None;
    for r in 0..np {
        let (gamma, beta) = (r / nb, r % nb);
        // ε_s(c⊗b) = 1⊗S_C(c)b and ε_t(c⊗b) = cS_B(b)⊗1.
        let scb = solved.s_c[gamma].left.apply(&sep.b.basis(beta));
        let expected_s = tensor_svec(cu, &scb);
        if eps_s[r].left.apply(unit) != expected_s {
            w = Some(format!("source form fails at {}", v.bundle.algebra.labels[r]));
            break;
        }
        let csb = solved.s_b[beta].right.apply(&sep.c.basis(gamma));
        let expected_t = tensor_svec(&csb, bu);
        if eps_t[r].left.apply(unit) != expected_t {
            w = Some(format!("target form fails at {}", v.bundle.algebra.labels[r]));
            break;
        }
    }
    out.push(CheckResult::from_flag(
        "cb-counital-forms",
        "ε_s(c⊗b) = 1⊗S_C(c)b and ε_t(c⊗b) = cS_B(b)⊗1",
        w.is_none(),
        || w.unwrap(),
    ));
    out
}

/// The multiplication map γ: C⊗B → M(A) of a verified bundle, with its
/// intertwining report and kernel dimension.
pub struct GammaReport<F: Scalar> {
    pub checks: Vec<CheckResult>,
    pub kernel_dim: usize,
    /// The bundle on C⊗B that γ maps out of.
    pub p: WmhaBundle<F>,
}

pub fn gamma_map<F: Scalar>(w: &WmhaBundle<F>) -> Result<GammaReport<F>, String> {
    let v = Verifier::new(w);
    let sep = certify_separability(&v)?;
    let (b_sub, c_sub) = leg_spans(&v).ok_or("no leg spans available")?;
    let p = cb_wmha(&sep)?;
    let alg = &w.algebra;
    let n = alg.dim;
    let (nb, nc) = (sep.b.dim, sep.c.dim);
    let np = nc * nb;
    let g = LinMap::from_cols(
        n,
        (0..np).map(|r| alg.mult(&c_sub.basis()[r / nb], &b_sub.basis()[r % nb])).collect(),
    );
    let gv: Vec<SVec<F>> = (0..np).map(|r| g.apply(&SVec::unit(np, r))).collect();
    let mut checks = Vec::new();

    let mut wtn = None;
    'mul: for r in 0..np {
        for s in 0..np {
            let lhs = g.apply(p.algebra.basis_mult(r, s));
            if lhs != alg.mult(&gv[r], &gv[s]) {
                wtn = Some(format!("γ fails to respect the product at ({r}, {s})"));
                break 'mul;
            }
        }
    }
    checks.push(CheckResult::from_flag(
        "gamma-multiplicative",
        "γ(x⊗y) = xy is a homomorphism on C⊗B",
        wtn.is_none(),
        || wtn.unwrap(),
    ));

    let mut left = RowReducer::new(n);
    let mut right = RowReducer::new(n);
    for x in &gv {
        for i in 0..n {
            let _ = left.insert(alg.mult(x, &alg.basis(i)));
            let _ = right.insert(alg.mult(&alg.basis(i), x));
        }
    }
    checks.push(CheckResult::from_flag(
        "gamma-non-degenerate",
        "γ(C⊗B)A = A = Aγ(C⊗B)",
        left.rank() == n && right.rank() == n,
        || format!("spans have dimensions {} and {}, expected {n}", left.rank(), right.rank()),
    ));

    let gg = kron(&g, &g);
    let mut wtn = None;
    'com: for r in 0..np {
        let dm = w.delta_of(&gv[r]);
        for x in 0..np {
            for y in 0..np {
                let u = SVec::unit(np * np, x * np + y);
                let pair = tensor_svec(&gv[x], &gv[y]);
                if gg.apply(&p.delta[r].left.apply(&u)) != dm.left.apply(&pair) {
                    wtn = Some(format!("left coproduct intertwining fails at ({r}, {x}, {y})"));
                    break 'com;
                }
                if gg.apply(&p.delta[r].right.apply(&u)) != dm.right.apply(&pair) {
                    wtn = Some(format!("right coproduct intertwining fails at ({r}, {x}, {y})"));
                    break 'com;
                }
            }
        }
    }
    checks.push(CheckResult::from_flag(
        "gamma-comultiplicative",
        "Δ∘γ = (γ⊗γ)∘Δ_P against all basis slices",
        wtn.is_none(),
        || wtn.unwrap(),
    ));

    match (&v.s_matrix, &p.algebra.unit) {
        (Some(sm), Some(pu)) => {
            let mut wtn = None;
            for r in 0..np {
                let sp = p.antipode[r].left.apply(pu);
                if g.apply(&sp) != sm.apply(&gv[r]) {
                    wtn = Some(format!("S(γ(x)) ≠ γ(S_P(x)) at index {r}"));
                    break;
                }
            }
            checks.push(CheckResult::from_flag(
                "gamma-antipode",
                "S∘γ = γ∘S_P",
                wtn.is_none(),
                || wtn.unwrap(),
            ));
        }
        _ => checks.push(CheckResult::skipped(
            "gamma-antipode",
            "S∘γ = γ∘S_P",
            "needs the antipode inside A and a unital C⊗B",
        )),
    }

    // With a unital A the target map commutes with γ.
    if alg.unit.is_some() {
        let pv = Verifier::new(&p);
        match (&pv.eps_t, &v.eps_t, &p.algebra.unit, &alg.unit) {
            (Some(pt), Some(wt), Some(pu), Some(au)) => {
                let mut wtn = None;
                for r in 0..np {
                    let lhs = g.apply(&pt[r].left.apply(pu));
                    let mut rhs = SVec::zero(n);
                    for (i, c) in gv[r].terms() {
                        rhs = rhs.add_scaled(&wt[*i].left.apply(au), c);
                    }
                    if lhs != rhs {
                        wtn = Some(format!("γ(ε_t(x)) ≠ ε_t(γ(x)) at index {r}"));
                        break;
                    }
                }
                checks.push(CheckResult::from_flag(
                    "gamma-target-counital",
                    "γ∘ε_t on C⊗B equals ε_t∘γ",
                    wtn.is_none(),
                    || wtn.unwrap(),
                ));
            }
            _ => checks.push(CheckResult::skipped(
                "gamma-target-counital",
                "γ∘ε_t on C⊗B equals ε_t∘γ",
                "needs solved counital maps on both sides",
            )),
        }
    }

    let kernel_dim = np - g.rank();
    checks.push(CheckResult::pass_with(
        "gamma-kernel",
        "kernel dimension of γ is recorded, not asserted",
        format!("kernel dimension {kernel_dim}"),
    ));
    Ok(GammaReport { checks, kernel_dim, p })
}

/// The two-sided smash product C⊗Q⊗B with the module-algebra product
/// (c⊗q⊗b)(c'⊗q'⊗b') = Σ c(q₁▷c') ⊗ q₂q'₁ ⊗ (b◁q'₂)b'.
pub fn smash_algebra<F: Scalar>(
    b: &Algebra<F>,
    c: &Algebra<F>,
    q: &HopfAlgebra<F>,
    act_r: &RightAction<F>,
    act_l: &LeftAction<F>,
) -> Result<Algebra<F>, String> {
    for chk in check_right_module_algebra(b, q, act_r) {
        if !chk.passed() {
            return Err(format!(
                "right module law {} fails: {}",
                chk.name,
                chk.witness.unwrap_or_default()
            ));
        }
    }
    for chk in check_left_module_algebra(c, q, act_l) {
        if !chk.passed() {
            return Err(format!(
                "left module law {} fails: {}",
                chk.name,
                chk.witness.unwrap_or_default()
            ));
        }
    }
    let (nb, nc, nq) = (b.dim, c.dim, q.dim());
    let np = nc * nq * nb;
    let qa = &q.algebra;
    let mut table = Vec::with_capacity(np * np);
    for r in 0..np {
        let (gamma, kappa, beta) = ((r / nb) / nq, (r / nb) % nq, r % nb);
        for s in 0..np {
            let (gamma2, kappa2, beta2) = ((s / nb) / nq, (s / nb) % nq, s % nb);
            let mut out = SVec::zero(np);
            for (kk, co1) in q.cop[kappa].terms() {
                let (k1, k2) = (kk / nq, kk % nq);
                for (jj, co2) in q.cop[kappa2].terms() {
                    let (j1, j2) = (jj / nq, jj % nq);
                    let cpart = c.mult(&c.basis(gamma), &act_l.maps[k1].apply(&c.basis(gamma2)));
                    let qpart = qa.basis_mult(k2, j1);
                    let bpart = b.mult(&act_r.maps[j2].apply(&b.basis(beta)), &b.basis(beta2));
                    let term = tensor_svec(&tensor_svec(&cpart, qpart), &bpart);
                    out = out.add_scaled(&term, &(co1.clone() * co2.clone()));
                }
            }
            table.push(out);
        }
    }
    let mut labels = Vec::with_capacity(np);
    for gamma in 0..nc {
        for kappa in 0..nq {
            for beta in 0..nb {
                labels.push(format!(
                    "{}·{}·{}",
                    c.labels[gamma], qa.labels[kappa], b.labels[beta]
                ));
            }
        }
    }
    Ok(Algebra::new(labels, table))
}

/// E is invariant under acting with q across its legs:
/// (E₁◁q)⊗E₂ = E₁⊗(q▷E₂) for every q.
pub fn check_smash_compatibility<F: Scalar>(
    sep: &SeparabilityIdempotent<F>,
    q: &HopfAlgebra<F>,
    act_r: &RightAction<F>,
    act_l: &LeftAction<F>,
) -> CheckResult {
    let (nb, nc) = (sep.b.dim, sep.c.dim);
    let Some(e) = sep.e.as_element(&sep.bc) else {
        return CheckResult::skipped(
            "smash-compatibility",
            "(E₁◁q)⊗E₂ = E₁⊗(q▷E₂)",
            "needs E inside B⊗C",
        );
    };
    let mut w = None;
    for kappa in 0..q.dim() {
        let lhs = kron(&act_r.maps[kappa], &LinMap::identity(nc)).apply(&e);
        let rhs = kron(&LinMap::identity(nb), &act_l.maps[kappa]).apply(&e);
        if lhs != rhs {
            w = Some(format!("fails at {}", q.algebra.labels[kappa]));
            break;
        }
    }
    CheckResult::from_flag(
        "smash-compatibility",
        "(E₁◁q)⊗E₂ = E₁⊗(q▷E₂)",
        w.is_none(),
        || w.unwrap(),
    )
}

struct SmashParts<F: Scalar> {
    p_alg: Algebra<F>,
    solved: SepSolved<F>,
    nb: usize,
    nc: usize,
    nq: usize,
    c_unit: SVec<F>,
    q_unit: SVec<F>,
    b_unit: SVec<F>,
}

impl<F: Scalar> SmashParts<F> {
    fn c_hat(&self, c: &SVec<F>) -> SVec<F> {
        tensor_svec(&tensor_svec(c, &self.q_unit), &self.b_unit)
    }

    fn q_hat(&self, q: &SVec<F>) -> SVec<F> {
        tensor_svec(&tensor_svec(&self.c_unit, q), &self.b_unit)
    }

    fn b_hat(&self, b: &SVec<F>) -> SVec<F> {
        tensor_svec(&tensor_svec(&self.c_unit, &self.q_unit), b)
    }

    /// E with its B leg in the first factor and C leg in the second.
    fn e_hat(&self, e: &SVec<F>) -> SVec<F> {
        let np = self.p_alg.dim;
        let mut out = SVec::zero(np * np);
        for (uv, co) in e.terms() {
            let (u, v) = (uv / self.nc, uv % self.nc);
            out = out.add_scaled(
                &tensor_svec(
                    &self.b_hat(&SVec::unit(self.nb, u)),
                    &self.c_hat(&SVec::unit(self.nc, v)),
                ),
                co,
            );
        }
        out
    }
}

fn smash_parts<F: Scalar>(
    sep: &SeparabilityIdempotent<F>,
    q: &HopfAlgebra<F>,
    act_r: &RightAction<F>,
    act_l: &LeftAction<F>,
) -> Result<SmashParts<F>, String> {
    let p_alg = smash_algebra(&sep.b, &sep.c, q, act_r, act_l)?;
    let solved = sep_structure(sep)?;
    let c_unit = sep.c.unit.clone().ok_or("smash needs a unital C")?;
    let b_unit = sep.b.unit.clone().ok_or("smash needs a unital B")?;
    let q_unit = q.algebra.unit.clone().ok_or("smash needs a unital Q")?;
    Ok(SmashParts {
        p_alg,
        solved,
        nb: sep.b.dim,
        nc: sep.c.dim,
        nq: q.dim(),
        c_unit,
        q_unit,
        b_unit,
    })
}

/// The smash bundle: Δ_P(cqb) = (c⊗1)Δ(q)E(1⊗b), S_P(cqb) = S_B(b)S(q)S_C(c),
/// ε_P(cqb) = φ_C(c·(q▷S_B(b))) = φ_B((S_C(c)◁q)·b).
pub fn smash_wmha<F: Scalar>(
    sep: &SeparabilityIdempotent<F>,
    q: &HopfAlgebra<F>,
    act_r: &RightAction<F>,
    act_l: &LeftAction<F>,
) -> Result<WmhaBundle<F>, String> {
    let battery = verify_sep(sep);
    if let Some(f) = battery.iter().find(|c| !c.passed()) {
        return Err(format!("separability battery failed at {}", f.name));
    }
    let compat = check_smash_compatibility(sep, q, act_r, act_l);
    if !compat.passed() {
        return Err(format!(
            "action incompatible with E: {}",
            compat.witness.unwrap_or_default()
        ));
    }
    let parts = smash_parts(sep, q, act_r, act_l)?;
    let (nb, nq) = (parts.nb, parts.nq);
    let np = parts.p_alg.dim;
    let sq = parts.p_alg.tensor(&parts.p_alg);
    let p_unit = parts.p_alg.unit.clone().ok_or("smash product lost its unit")?;
    let e_elem = sep.e.as_element(&sep.bc).ok_or("E is not inside B⊗C")?;
    let e_hat = parts.e_hat(&e_elem);

    let dq_hat: Vec<SVec<F>> = (0..nq)
        .map(|kappa| {
            let mut out = SVec::zero(np * np);
            for (kk, co) in q.cop[kappa].terms() {
                let (k1, k2) = (kk / nq, kk % nq);
                out = out.add_scaled(
                    &tensor_svec(
                        &parts.q_hat(&SVec::unit(nq, k1)),
                        &parts.q_hat(&SVec::unit(nq, k2)),
                    ),
                    co,
                );
            }
            out
        })
        .collect();

    let mut delta = Vec::with_capacity(np);
    let mut counit = Vec::with_capacity(np);
    let mut antipode = Vec::with_capacity(np);
    for r in 0..np {
        let (gamma, kappa, beta) = ((r / nb) / nq, (r / nb) % nq, r % nb);
        let front = tensor_svec(&parts.c_hat(&sep.c.basis(gamma)), &p_unit);
        let back = tensor_svec(&p_unit, &parts.b_hat(&sep.b.basis(beta)));
        let elem = sq.mult(&sq.mult(&sq.mult(&front, &dq_hat[kappa]), &e_hat), &back);
        delta.push(Multiplier::from_element(&sq, &elem));

        let sb_elem = parts.solved.s_b[beta].as_element_unchecked(&sep.c);
        let sc_elem = parts.solved.s_c[gamma].as_element_unchecked(&sep.b);

        let cs = sep.c.mult(&sep.c.basis(gamma), &act_l.maps[kappa].apply(&sb_elem));
        let via_c = dot_dense(&parts.solved.phi_c, &cs);
        let sb = sep.b.mult(&act_r.maps[kappa].apply(&sc_elem), &sep.b.basis(beta));
        let via_b = dot_dense(&parts.solved.phi_b, &sb);
        if via_c != via_b {
            return Err("the two counit forms on the smash product disagree".to_string());
        }
        counit.push(via_c);

        let sq_elem = q.antipode.apply(&q.algebra.basis(kappa));
        let s_elem = parts.p_alg.mult(
            &parts.p_alg.mult(&parts.c_hat(&sb_elem), &parts.q_hat(&sq_elem)),
            &parts.b_hat(&sc_elem),
        );
        antipode.push(Multiplier::from_element(&parts.p_alg, &s_elem));
    }

    let mut bundle = WmhaBundle::assemble(
        &format!("smash({}, action of dim-{nq} Hopf algebra)", sep.name),
        parts.p_alg,
        sq,
        delta,
        counit,
        antipode,
    );
    bundle.supplied_e = Some(Multiplier::from_element(&bundle.sq, &e_hat));
    bundle.expect_regular = Some(is_regular(sep).0 && q.antipode_inv().is_some());
    Ok(bundle)
}

/// Structure checks specific to a smash bundle: the idempotent commutes
/// with the coproducts of Q, the counital maps take their closed forms,
/// and the functionals are invariant under the actions.
pub fn check_smash_structure<F: Scalar>(
    v: &Verifier<F>,
    sep: &SeparabilityIdempotent<F>,
    q: &HopfAlgebra<F>,
    act_r: &RightAction<F>,
    act_l: &LeftAction<F>,
) -> Vec<CheckResult> {
    let mut out = vec![check_smash_compatibility(sep, q, act_r, act_l)];
    let parts = match smash_parts(sep, q, act_r, act_l) {
        Ok(p) => p,
        Err(e) => {
            out.push(CheckResult::fail(
                "smash-structure",
                "smash structure checks",
                e,
            ));
            return out;
        }
    };
    let (nb, nq) = (parts.nb, parts.nq);
    let np = parts.p_alg.dim;
    let sq = &v.bundle.sq;
    let Some(e_elem) = sep.e.as_element(&sep.bc) else {
        out.push(CheckResult::skipped(
            "smash-idempotent-commutes",
            "EΔ(q) = Δ(q)E in M(P⊗P)",
            "needs E inside B⊗C",
        ));
        return out;
    };
    let e_hat = parts.e_hat(&e_elem);

    let mut w = None;
    for kappa in 0..nq {
        let mut dq = SVec::zero(np * np);
        for (kk, co) in q.cop[kappa].terms() {
            let (k1, k2) = (kk / nq, kk % nq);
            dq = dq.add_scaled(
                &tensor_svec(
                    &parts.q_hat(&SVec::unit(nq, k1)),
                    &parts.q_hat(&SVec::unit(nq, k2)),
                ),
                co,
            );
        }
        if sq.mult(&e_hat, &dq) != sq.mult(&dq, &e_hat) {
            w = Some(format!("fails at {}", q.algebra.labels[kappa]));
            break;
        }
    }
    out.push(CheckResult::from_flag(
        "smash-idempotent-commutes",
        "EΔ(q) = Δ(q)E in M(P⊗P)",
        w.is_none(),
        || w.unwrap(),
    ));

    match (&v.eps_s, &v.eps_t, &v.bundle.algebra.unit) {
        (Some(eps_s), Some(eps_t), Some(unit)) => {
            let mut w = None;
            for r in 0..np {
                let (gamma, kappa, beta) = ((r / nb) / nq, (r / nb) % nq, r % nb);
                // ε_s(cqb) = (S_C(c)◁q)b and ε_t(cqb) = c(q▷S_B(b)).
                let sc_elem = parts.solved.s_c[gamma].as_element_unchecked(&sep.b);
                let src = sep.b.mult(&act_r.maps[kappa].apply(&sc_elem), &sep.b.basis(beta));
                if eps_s[r].left.apply(unit) != parts.b_hat(&src) {
                    w = Some(format!("source form fails at {}", v.bundle.algebra.labels[r]));
                    break;
                }
                let sb_elem = parts.solved.s_b[beta].as_element_unchecked(&sep.c);
                let tgt = sep.c.mult(&sep.c.basis(gamma), &act_l.maps[kappa].apply(&sb_elem));
                if eps_t[r].left.apply(unit) != parts.c_hat(&tgt) {
                    w = Some(format!("target form fails at {}", v.bundle.algebra.labels[r]));
                    break;
                }
            }
            out.push(CheckResult::from_flag(
                "smash-counital-forms",
                "ε_s(cqb) = (S_C(c)◁q)b and ε_t(cqb) = c(q▷S_B(b))",
                w.is_none(),
                || w.unwrap(),
            ));
        }
        _ => out.push(CheckResult::skipped(
            "smash-counital-forms",
            "ε_s(cqb) = (S_C(c)◁q)b and ε_t(cqb) = c(q▷S_B(b))",
            "needs solved counital maps on a unital algebra",
        )),
    }

    let mut w = None;
    'inv: for kappa in 0..nq {
        for beta in 0..nb {
            let lhs = dot_dense(&parts.solved.phi_b, &act_r.maps[kappa].apply(&sep.b.basis(beta)));
            let rhs = q.counit[kappa].clone() * parts.solved.phi_b[beta].clone();
            if lhs != rhs {
                w = Some(format!(
                    "φ_B({} ◁ {}) ≠ ε({})φ_B({})",
                    sep.b.labels[beta], q.algebra.labels[kappa], q.algebra.labels[kappa], sep.b.labels[beta]
                ));
                break 'inv;
            }
        }
        for gamma in 0..parts.nc {
            let lhs = dot_dense(&parts.solved.phi_c, &act_l.maps[kappa].apply(&sep.c.basis(gamma)));
            let rhs = q.counit[kappa].clone() * parts.solved.phi_c[gamma].clone();
            if lhs != rhs {
                w = Some(format!(
                    "φ_C({} ▷ {}) ≠ ε({})φ_C({})",
                    q.algebra.labels[kappa], sep.c.labels[gamma], q.algebra.labels[kappa], sep.c.labels[gamma]
                ));
                break 'inv;
            }
        }
    }
    out.push(CheckResult::from_flag(
        "smash-functional-invariance",
        "φ_B(b◁q) = ε(q)φ_B(b) and φ_C(q▷c) = ε(q)φ_C(c)",
        w.is_none(),
        || w.unwrap(),
    ));

    let mut w = None;
    'exch: for kappa in 0..nq {
        for gamma in 0..parts.nc {
            for beta in 0..nb {
                let sb_elem = parts.solved.s_b[beta].as_element_unchecked(&sep.c);
                let lhs = dot_dense(
                    &parts.solved.phi_c,
                    &sep.c.mult(&sep.c.basis(gamma), &act_l.maps[kappa].apply(&sb_elem)),
                );
                let sc_elem = parts.solved.s_c[gamma].as_element_unchecked(&sep.b);
                let rhs = dot_dense(
                    &parts.solved.phi_b,
                    &sep.b.mult(&act_r.maps[kappa].apply(&sc_elem), &sep.b.basis(beta)),
                );
                if lhs != rhs {
                    w = Some(format!(
                        "fails at ({}, {}, {})",
                        sep.c.labels[gamma], q.algebra.labels[kappa], sep.b.labels[beta]
                    ));
                    break 'exch;
                }
            }
        }
    }
    out.push(CheckResult::from_flag(
        "smash-functional-exchange",
        "φ_C(c(q▷S_B(b))) = φ_B((S_C(c)◁q)b)",
        w.is_none(),
        || w.unwrap(),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{disjoint_union, group_groupoid, pair_groupoid, units_groupoid, GroupAction};
    use crate::hopf::{function_left_action, function_right_action, group_hopf};
    use crate::report::Status;
    use crate::separability::diagonal_on_set;
    use crate::wmha::verify_all;
    use crate::Rat;

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    fn assert_clean(checks: &[crate::report::CheckResult]) {
        let failed: Vec<_> = checks.iter().filter(|c| c.status == Status::Fail).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }

    #[test]
    fn pair_groupoid_functions_pass() {
        let b = function_wmha::<Rat>(&pair_groupoid(2));
        assert_clean(&verify_all(&b));
    }

    #[test]
    fn pair_groupoid_convolution_passes() {
        let b = groupoid_algebra_wmha::<Rat>(&pair_groupoid(2));
        assert_clean(&verify_all(&b));
    }

    #[test]
    fn convolution_source_algebra_has_one_dimension_per_unit() {
        // Two units in ℤ/2 ⊔ ℤ/3 viewed as a groupoid, so dim B = 2.
        let g = disjoint_union(
            &group_groupoid(&crate::groupoid::FiniteGroup::cyclic(2)),
            &group_groupoid(&crate::groupoid::FiniteGroup::cyclic(3)),
        );
        let b = groupoid_algebra_wmha::<Rat>(&g);
        assert_eq!(b.dim(), 5);
        let v = Verifier::new(&b);
        let (bs, cs) = leg_spans(&v).unwrap();
        assert_eq!(bs.dim(), 2);
        assert_eq!(cs.dim(), 2);
    }

    #[test]
    fn duality_pairing_between_the_two_models() {
        // ⟨Δ(f), λ_p⊗λ_q⟩ = ⟨f, λ_p λ_q⟩ with ⟨δ_r, λ_p⟩ = [r = p].
        let g = pair_groupoid(2);
        let f = function_wmha::<Rat>(&g);
        let n = g.len();
        for r in 0..n {
            let df = f.delta[r].left.apply(f.sq.unit.as_ref().unwrap());
            for p in 0..n {
                for q in 0..n {
                    let lhs = df.get(p * n + q);
                    let rhs = match g.compose(p, q) {
                        Some(s) if s == r => Rat::from_integer(1.into()),
                        _ => Rat::from_integer(0.into()),
                    };
                    assert_eq!(lhs, rhs, "pairing mismatch at ({r}, {p}, {q})");
                }
            }
        }
    }

    #[test]
    fn cb_over_diagonal_matches_pair_groupoid_functions() {
        let cb = cb_wmha::<Rat>(&diagonal_on_set(&names(2))).unwrap();
        let fw = function_wmha::<Rat>(&pair_groupoid(2));
        assert_eq!(cb.dim(), fw.dim());
        let n = cb.dim();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(cb.algebra.basis_mult(i, j), fw.algebra.basis_mult(i, j));
            }
        }
        for i in 0..n {
            assert_eq!(cb.delta[i], fw.delta[i], "coproduct slot {i}");
            assert_eq!(cb.antipode[i], fw.antipode[i], "antipode slot {i}");
            assert_eq!(cb.counit[i], fw.counit[i], "counit slot {i}");
        }
        assert_eq!(cb.supplied_e, fw.supplied_e);
    }

    #[test]
    fn cb_over_group_idempotent_passes() {
        let b = dqg_wmha::<Rat>(&crate::groupoid::FiniteGroup::cyclic(2)).unwrap();
        assert_eq!(b.dim(), 4);
        assert_clean(&verify_all(&b));
    }

    #[test]
    fn gamma_on_set_functions_has_rank_of_the_diagonal() {
        // Pointwise multiplication K(X)⊗K(X) → K(X) has rank |X|.
        let w = set_wmha::<Rat>(&names(2));
        let rep = gamma_map(&w).unwrap();
        assert_clean(&rep.checks);
        assert_eq!(rep.kernel_dim, 2);
    }

    #[test]
    fn gamma_on_pair_groupoid_functions_is_injective() {
        let w = function_wmha::<Rat>(&pair_groupoid(2));
        let rep = gamma_map(&w).unwrap();
        assert_clean(&rep.checks);
        assert_eq!(rep.kernel_dim, 0);
    }

    #[test]
    fn smash_with_swap_action_is_consistent() {
        let x = names(3);
        let h = crate::groupoid::FiniteGroup::cyclic(2);
        let q = group_hopf::<Rat>(&h);
        let sep = diagonal_on_set::<Rat>(&x);
        let action = GroupAction::swap(3, 0, 1);
        let act_r = function_right_action(&h, &action);
        let act_l = function_left_action(&h, &action);
        assert!(check_smash_compatibility(&sep, &q, &act_r, &act_l).passed());
        let p = smash_algebra(&sep.b, &sep.c, &q, &act_r, &act_l).unwrap();
        assert_eq!(p.dim, 18);
        assert_clean(&crate::algebra::check_algebra(&p));
        // The swap moves points, so the counit must see the action twist.
        let w = smash_wmha(&sep, &q, &act_r, &act_l).unwrap();
        assert_clean(&verify_all(&w));
    }

    #[test]
    fn non_equivariant_action_is_rejected() {
        let x = names(3);
        let h = crate::groupoid::FiniteGroup::cyclic(2);
        let q = group_hopf::<Rat>(&h);
        let sep = diagonal_on_set::<Rat>(&x);
        // Trivial left action against a genuine swap on the right breaks
        // the invariance of the diagonal idempotent.
        let act_r = function_right_action(&h, &GroupAction::swap(3, 0, 1));
        let act_l = function_left_action(&h, &GroupAction::trivial(2, 3));
        let chk = check_smash_compatibility(&sep, &q, &act_r, &act_l);
        assert_eq!(chk.status, Status::Fail);
        assert!(chk.witness.is_some());
        assert!(smash_wmha(&sep, &q, &act_r, &act_l).is_err());
    }

    #[test]
    fn trivial_group_smash_reduces_to_cb() {
        let x = names(2);
        let h = crate::groupoid::FiniteGroup::cyclic(1);
        let q = group_hopf::<Rat>(&h);
        let sep = diagonal_on_set::<Rat>(&x);
        let act_r = function_right_action(&h, &GroupAction::trivial(1, 2));
        let act_l = function_left_action(&h, &GroupAction::trivial(1, 2));
        let s = smash_wmha(&sep, &q, &act_r, &act_l).unwrap();
        let cb = cb_wmha(&sep).unwrap();
        assert_eq!(s.dim(), cb.dim());
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                assert_eq!(s.algebra.basis_mult(i, j), cb.algebra.basis_mult(i, j));
            }
        }
        assert_eq!(s.counit, cb.counit);
    }

    #[test]
    fn units_groupoid_functions_match_diagonal_cb() {
        let w = set_wmha::<Rat>(&names(3));
        assert_eq!(w.dim(), 3);
        assert_clean(&verify_all(&w));
        let _ = units_groupoid(&names(3));
    }
}
