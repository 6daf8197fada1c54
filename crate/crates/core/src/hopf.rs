//! Ordinary finite-dimensional Hopf algebras, and module-algebra actions of
//! such a Hopf algebra on another algebra.
//!
//! Here the coproduct lands in the tensor square itself, so Sweedler sums
//! are finite sums over the stored slices of Δ. This is the acting object
//! of the two-sided smash product; the weak multiplier structures live in
//! their own module.

use crate::algebra::Algebra;
use crate::groupoid::{FiniteGroup, GroupAction};
use crate::linalg::{tensor_svec, LinMap, SVec};
use crate::report::CheckResult;
use crate::scalar::Scalar;

/// Finite-dimensional Hopf algebra: unital algebra, coproduct into the
/// tensor square, counit, antipode.
#[derive(Clone, Debug)]
pub struct HopfAlgebra<F> {
    pub algebra: Algebra<F>,
    /// `cop[i] = Δ(e_i)` as a vector over the tensor-square basis.
    pub cop: Vec<SVec<F>>,
    /// `counit[i] = ε(e_i)`.
    pub counit: Vec<F>,
    pub antipode: LinMap<F>,
}

impl<F: Scalar> HopfAlgebra<F> {
    pub fn dim(&self) -> usize {
        self.algebra.dim
    }

    pub fn cop_of(&self, v: &SVec<F>) -> SVec<F> {
        let n2 = self.dim() * self.dim();
        let mut out = SVec::zero(n2);
        for (i, c) in v.terms() {
            out = out.add_scaled(&self.cop[*i], c);
        }
        out
    }

    pub fn counit_of(&self, v: &SVec<F>) -> F {
        let mut acc = F::zero();
        for (i, c) in v.terms() {
            acc = acc + self.counit[*i].clone() * c.clone();
        }
        acc
    }

    /// Checks the bialgebra and antipode laws; empty failure list certifies
    /// a Hopf algebra.
    pub fn verify(&self) -> Vec<CheckResult> {
        let a = &self.algebra;
        let n = a.dim;
        let sq = a.tensor(a);
        let mut out = crate::algebra::check_algebra(a);
        out.push(CheckResult::from_flag(
            "unit-exists",
            "the algebra has a unit",
            a.unit.is_some(),
            || "no unit element".to_string(),
        ));
        let Some(unit) = &a.unit else {
            return out;
        };

        let mut w = None;
        'hom: for i in 0..n {
            for j in 0..n {
                if self.cop_of(a.basis_mult(i, j)) != sq.mult(&self.cop[i], &self.cop[j]) {
                    w = Some(format!("Δ({}·{}) ≠ Δ({})·Δ({})", a.labels[i], a.labels[j], a.labels[i], a.labels[j]));
                    break 'hom;
                }
            }
        }
        out.push(CheckResult::from_flag(
            "coproduct-homomorphism",
            "Δ(xy) = Δ(x)Δ(y)",
            w.is_none(),
            || w.unwrap(),
        ));
        out.push(CheckResult::from_flag(
            "coproduct-unital",
            "Δ(1) = 1⊗1",
            self.cop_of(unit) == tensor_svec(unit, unit),
            || "Δ(1) ≠ 1⊗1".to_string(),
        ));

        // Coassociativity in the cube, term by term on the Δ slices.
        let mut w = None;
        for i in 0..n {
            let mut lhs = SVec::zero(n * n * n);
            let mut rhs = SVec::zero(n * n * n);
            for (pq, c) in self.cop[i].terms() {
                let (p, q) = (pq / n, pq % n);
                lhs = lhs.add_scaled(&tensor_svec(&self.cop[p], &a.basis(q)), c);
                rhs = rhs.add_scaled(&tensor_svec(&a.basis(p), &self.cop[q]), c);
            }
            if lhs != rhs {
                w = Some(format!("(Δ⊗ι)Δ ≠ (ι⊗Δ)Δ at {}", a.labels[i]));
                break;
            }
        }
        out.push(CheckResult::from_flag(
            "coassociativity",
            "(Δ⊗ι)Δ = (ι⊗Δ)Δ",
            w.is_none(),
            || w.unwrap(),
        ));

        let mut w = None;
        for i in 0..n {
            let mut left = SVec::zero(n);
            let mut right = SVec::zero(n);
            for (pq, c) in self.cop[i].terms() {
                let (p, q) = (pq / n, pq % n);
                left = left.add_scaled(&a.basis(q), &(self.counit[p].clone() * c.clone()));
                right = right.add_scaled(&a.basis(p), &(self.counit[q].clone() * c.clone()));
            }
            if left != a.basis(i) || right != a.basis(i) {
                w = Some(format!("counit law fails at {}", a.labels[i]));
                break;
            }
        }
        out.push(CheckResult::from_flag(
            "counit-law",
            "(ε⊗ι)Δ = ι = (ι⊗ε)Δ",
            w.is_none(),
            || w.unwrap(),
        ));

        let mut w = None;
        'ceps: for i in 0..n {
            for j in 0..n {
                if self.counit_of(a.basis_mult(i, j))
                    != self.counit[i].clone() * self.counit[j].clone()
                {
                    w = Some(format!("ε({0}·{1}) ≠ ε({0})ε({1})", a.labels[i], a.labels[j]));
                    break 'ceps;
                }
            }
        }
        out.push(CheckResult::from_flag(
            "counit-homomorphism",
            "ε(xy) = ε(x)ε(y)",
            w.is_none(),
            || w.unwrap(),
        ));

        let mut w = None;
        for i in 0..n {
            let mut left = SVec::zero(n);
            let mut right = SVec::zero(n);
            for (pq, c) in self.cop[i].terms() {
                let (p, q) = (pq / n, pq % n);
                left = left.add_scaled(&a.mult(&self.antipode.apply(&a.basis(p)), &a.basis(q)), c);
                right = right.add_scaled(&a.mult(&a.basis(p), &self.antipode.apply(&a.basis(q))), c);
            }
            let target = unit.scale(&self.counit[i]);
            if left != target || right != target {
                w = Some(format!("antipode law fails at {}", a.labels[i]));
                break;
            }
        }
        out.push(CheckResult::from_flag(
            "antipode-law",
            "Σ S(x₁)x₂ = ε(x)1 = Σ x₁S(x₂)",
            w.is_none(),
            || w.unwrap(),
        ));

        out
    }

    /// Inverse antipode when it exists; present in all bundled instances.
    pub fn antipode_inv(&self) -> Option<LinMap<F>> {
        self.antipode.inverse()
    }
}

/// Group algebra of a finite group as a Hopf algebra: Δ(λ_g) = λ_g⊗λ_g,
/// ε(λ_g) = 1, S(λ_g) = λ_{g⁻¹}.
pub fn group_hopf<F: Scalar>(g: &FiniteGroup) -> HopfAlgebra<F> {
    let n = g.len();
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(SVec::unit(n, g.mult[a][b]));
        }
    }
    let labels = g.labels.iter().map(|l| format!("λ_{l}")).collect();
    let algebra = Algebra::with_known_unit(labels, table, Some(SVec::unit(n, g.identity)));
    let cop = (0..n).map(|i| SVec::unit(n * n, i * n + i)).collect();
    let counit = vec![F::one(); n];
    let antipode = LinMap::from_cols(n, (0..n).map(|i| SVec::unit(n, g.inv[i])).collect());
    HopfAlgebra { algebra, cop, counit, antipode }
}

/// Function algebra of a finite group as a Hopf algebra:
/// Δ(δ_g) = Σ_{ab=g} δ_a⊗δ_b, ε(δ_g) = [g = e], S(δ_g) = δ_{g⁻¹}.
pub fn function_hopf<F: Scalar>(g: &FiniteGroup) -> HopfAlgebra<F> {
    let n = g.len();
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(if a == b { SVec::unit(n, a) } else { SVec::zero(n) });
        }
    }
    let labels = g.labels.iter().map(|l| format!("δ_{l}")).collect();
    let unit = SVec::from_terms(n, (0..n).map(|i| (i, F::one())).collect());
    let algebra = Algebra::with_known_unit(labels, table, Some(unit));
    let cop = (0..n)
        .map(|i| {
            let mut terms = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if g.mult[a][b] == i {
                        terms.push((a * n + b, F::one()));
                    }
                }
            }
            SVec::from_terms(n * n, terms)
        })
        .collect();
    let counit = (0..n).map(|i| if i == g.identity { F::one() } else { F::zero() }).collect();
    let antipode = LinMap::from_cols(n, (0..n).map(|i| SVec::unit(n, g.inv[i])).collect());
    HopfAlgebra { algebra, cop, counit, antipode }
}

/// Right action of a Hopf algebra on an algebra: `maps[j]` sends `b` to
/// `b ◁ e_j`.
#[derive(Clone, Debug)]
pub struct RightAction<F> {
    pub maps: Vec<LinMap<F>>,
}

/// Left action of a Hopf algebra on an algebra: `maps[j]` sends `c` to
/// `e_j ▷ c`.
#[derive(Clone, Debug)]
pub struct LeftAction<F> {
    pub maps: Vec<LinMap<F>>,
}

impl<F: Scalar> RightAction<F> {
    pub fn act(&self, b: &SVec<F>, q: &SVec<F>) -> SVec<F> {
        let mut out = SVec::zero(b.dim);
        for (j, c) in q.terms() {
            out = out.add_scaled(&self.maps[*j].apply(b), c);
        }
        out
    }
}

impl<F: Scalar> LeftAction<F> {
    pub fn act(&self, q: &SVec<F>, c: &SVec<F>) -> SVec<F> {
        let mut out = SVec::zero(c.dim);
        for (j, x) in q.terms() {
            out = out.add_scaled(&self.maps[*j].apply(c), x);
        }
        out
    }
}

/// Trivial actions: every element acts by its counit.
pub fn trivial_right_action<F: Scalar>(b_dim: usize, q: &HopfAlgebra<F>) -> RightAction<F> {
    RightAction {
        maps: (0..q.dim()).map(|j| LinMap::identity(b_dim).scale(&q.counit[j])).collect(),
    }
}

pub fn trivial_left_action<F: Scalar>(c_dim: usize, q: &HopfAlgebra<F>) -> LeftAction<F> {
    LeftAction {
        maps: (0..q.dim()).map(|j| LinMap::identity(c_dim).scale(&q.counit[j])).collect(),
    }
}

/// Right action of the group algebra on functions over a group-acted set:
/// `(f ◁ λ_h)(x) = f(h ▷ x)`, so `δ_y ◁ λ_h = δ_{h⁻¹ ▷ y}`.
pub fn function_right_action<F: Scalar>(g: &FiniteGroup, action: &GroupAction) -> RightAction<F> {
    let nx = action.set_size();
    let maps = (0..g.len())
        .map(|h| {
            let hinv = g.inv[h];
            LinMap::from_cols(nx, (0..nx).map(|y| SVec::unit(nx, action.act(hinv, y))).collect())
        })
        .collect();
    RightAction { maps }
}

/// Left action of the group algebra on functions:
/// `(λ_h ▷ f)(x) = f(h⁻¹ ▷ x)`, so `λ_h ▷ δ_y = δ_{h ▷ y}`.
pub fn function_left_action<F: Scalar>(g: &FiniteGroup, action: &GroupAction) -> LeftAction<F> {
    let nx = action.set_size();
    let maps = (0..g.len())
        .map(|h| {
            LinMap::from_cols(nx, (0..nx).map(|y| SVec::unit(nx, action.act(h, y))).collect())
        })
        .collect();
    LeftAction { maps }
}

/// Laws making `b` a unital right module algebra over `q`.
pub fn check_right_module_algebra<F: Scalar>(
    b: &Algebra<F>,
    q: &HopfAlgebra<F>,
    act: &RightAction<F>,
) -> Vec<CheckResult> {
    let (n, m) = (b.dim, q.dim());
    let mut out = Vec::new();
    let qa = &q.algebra;
    let qunit = qa.unit.as_ref().expect("acting algebra is unital");

    let ok = (0..n).all(|i| act.act(&b.basis(i), qunit) == b.basis(i));
    out.push(CheckResult::from_flag(
        "module-unit",
        "b ◁ 1 = b",
        ok,
        || "some b with b◁1 ≠ b".to_string(),
    ));

    let mut w = None;
    'law: for i in 0..n {
        for j in 0..m {
            for k in 0..m {
                let step = act.act(&act.act(&b.basis(i), &qa.basis(j)), &qa.basis(k));
                let joined = act.act(&b.basis(i), qa.basis_mult(j, k));
                if step != joined {
                    w = Some(format!(
                        "({} ◁ {}) ◁ {} ≠ {} ◁ ({}·{})",
                        b.labels[i], qa.labels[j], qa.labels[k], b.labels[i], qa.labels[j], qa.labels[k]
                    ));
                    break 'law;
                }
            }
        }
    }
    out.push(CheckResult::from_flag(
        "module-law",
        "(b ◁ q) ◁ q' = b ◁ (qq')",
        w.is_none(),
        || w.unwrap(),
    ));

    let mut w = None;
    'prod: for i in 0..n {
        for i2 in 0..n {
            for j in 0..m {
                let lhs = act.act(b.basis_mult(i, i2), &qa.basis(j));
                let mut rhs = SVec::zero(n);
                for (pq, c) in q.cop[j].terms() {
                    let (p, qk) = (pq / m, pq % m);
                    rhs = rhs.add_scaled(
                        &b.mult(
                            &act.act(&b.basis(i), &qa.basis(p)),
                            &act.act(&b.basis(i2), &qa.basis(qk)),
                        ),
                        c,
                    );
                }
                if lhs != rhs {
                    w = Some(format!(
                        "({}·{}) ◁ {} ≠ Σ ({}◁q₁)({}◁q₂)",
                        b.labels[i], b.labels[i2], qa.labels[j], b.labels[i], b.labels[i2]
                    ));
                    break 'prod;
                }
            }
        }
    }
    out.push(CheckResult::from_flag(
        "module-algebra-product",
        "(bb') ◁ q = Σ (b◁q₁)(b'◁q₂)",
        w.is_none(),
        || w.unwrap(),
    ));

    out.push(match &b.unit {
        Some(u) => {
            let ok = (0..m).all(|j| act.act(u, &qa.basis(j)) == u.scale(&q.counit[j]));
            CheckResult::from_flag("module-algebra-unit", "1 ◁ q = ε(q)1", ok, || {
                "some q with 1◁q ≠ ε(q)1".to_string()
            })
        }
        None => CheckResult::skipped("module-algebra-unit", "1 ◁ q = ε(q)1", "module algebra has no unit"),
    });

    out
}

/// Laws making `c` a unital left module algebra over `q`.
pub fn check_left_module_algebra<F: Scalar>(
    c: &Algebra<F>,
    q: &HopfAlgebra<F>,
    act: &LeftAction<F>,
) -> Vec<CheckResult> {
    let (n, m) = (c.dim, q.dim());
    let mut out = Vec::new();
    let qa = &q.algebra;
    let qunit = qa.unit.as_ref().expect("acting algebra is unital");

    let ok = (0..n).all(|i| act.act(qunit, &c.basis(i)) == c.basis(i));
    out.push(CheckResult::from_flag(
        "module-unit",
        "1 ▷ c = c",
        ok,
        || "some c with 1▷c ≠ c".to_string(),
    ));

    let mut w = None;
    'law: for i in 0..n {
        for j in 0..m {
            for k in 0..m {
                let step = act.act(&qa.basis(j), &act.act(&qa.basis(k), &c.basis(i)));
                let joined = act.act(qa.basis_mult(j, k), &c.basis(i));
                if step != joined {
                    w = Some(format!(
                        "{} ▷ ({} ▷ {}) ≠ ({}·{}) ▷ {}",
                        qa.labels[j], qa.labels[k], c.labels[i], qa.labels[j], qa.labels[k], c.labels[i]
                    ));
                    break 'law;
                }
            }
        }
    }
    out.push(CheckResult::from_flag(
        "module-law",
        "q ▷ (q' ▷ c) = (qq') ▷ c",
        w.is_none(),
        || w.unwrap(),
    ));

    let mut w = None;
    'prod: for i in 0..n {
        for i2 in 0..n {
            for j in 0..m {
                let lhs = act.act(&qa.basis(j), c.basis_mult(i, i2));
                let mut rhs = SVec::zero(n);
                for (pq, x) in q.cop[j].terms() {
                    let (p, qk) = (pq / m, pq % m);
                    rhs = rhs.add_scaled(
                        &c.mult(
                            &act.act(&qa.basis(p), &c.basis(i)),
                            &act.act(&qa.basis(qk), &c.basis(i2)),
                        ),
                        x,
                    );
                }
                if lhs != rhs {
                    w = Some(format!(
                        "{} ▷ ({}·{}) ≠ Σ (q₁▷{})(q₂▷{})",
                        qa.labels[j], c.labels[i], c.labels[i2], c.labels[i], c.labels[i2]
                    ));
                    break 'prod;
                }
            }
        }
    }
    out.push(CheckResult::from_flag(
        "module-algebra-product",
        "q ▷ (cc') = Σ (q₁▷c)(q₂▷c')",
        w.is_none(),
        || w.unwrap(),
    ));

    out.push(match &c.unit {
        Some(u) => {
            let ok = (0..m).all(|j| act.act(&qa.basis(j), u) == u.scale(&q.counit[j]));
            CheckResult::from_flag("module-algebra-unit", "q ▷ 1 = ε(q)1", ok, || {
                "some q with q▷1 ≠ ε(q)1".to_string()
            })
        }
        None => CheckResult::skipped("module-algebra-unit", "q ▷ 1 = ε(q)1", "module algebra has no unit"),
    });

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn all_pass(rep: &[CheckResult]) -> bool {
        rep.iter().all(|c| c.passed())
    }

    #[test]
    fn group_hopf_verifies() {
        for n in 1..=4 {
            let h: HopfAlgebra<Rat> = group_hopf(&FiniteGroup::cyclic(n));
            let rep = h.verify();
            assert!(all_pass(&rep), "n = {n}: {rep:?}");
            assert!(h.antipode_inv().is_some());
        }
    }

    #[test]
    fn function_hopf_verifies() {
        let h: HopfAlgebra<Rat> = function_hopf(&FiniteGroup::cyclic(2));
        assert!(all_pass(&h.verify()), "{:?}", h.verify());
        // Δ(δ_e) = δ_e⊗δ_e + δ_g⊗δ_g over index (a,b) ↦ 2a+b.
        let expected = SVec::unit(4, 0).add(&SVec::unit(4, 3));
        assert_eq!(h.cop[0], expected);
    }

    #[test]
    fn identity_antipode_fails_on_z3() {
        let mut h: HopfAlgebra<Rat> = group_hopf(&FiniteGroup::cyclic(3));
        h.antipode = LinMap::identity(3);
        let rep = h.verify();
        let law = rep.iter().find(|c| c.name == "antipode-law").unwrap();
        assert_eq!(law.status, crate::report::Status::Fail);
        assert!(law.witness.as_ref().unwrap().contains("λ_g"));
    }

    #[test]
    fn swap_actions_are_module_algebras() {
        let g = FiniteGroup::cyclic(2);
        let action = GroupAction::swap(3, 0, 1);
        let q: HopfAlgebra<Rat> = group_hopf(&g);
        let b = crate::algebra::function_algebra(&["1".into(), "2".into(), "3".into()]);
        let right = function_right_action(&g, &action);
        let left = function_left_action(&g, &action);
        assert!(all_pass(&check_right_module_algebra(&b, &q, &right)));
        assert!(all_pass(&check_left_module_algebra(&b, &q, &left)));
        // δ_y ◁ λ_h = δ_{h⁻¹▷y}: with the swap, δ_0 ◁ λ_g = δ_1.
        assert_eq!(right.act(&b.basis(0), &q.algebra.basis(1)), b.basis(1));
        assert_eq!(left.act(&q.algebra.basis(1), &b.basis(2)), b.basis(2));
    }

    #[test]
    fn trivial_actions_are_module_algebras() {
        let q: HopfAlgebra<Rat> = group_hopf(&FiniteGroup::cyclic(3));
        let b = crate::algebra::function_algebra(&["1".into(), "2".into()]);
        assert!(all_pass(&check_right_module_algebra(&b, &q, &trivial_right_action(2, &q))));
        assert!(all_pass(&check_left_module_algebra(&b, &q, &trivial_left_action(2, &q))));
    }

    #[test]
    fn broken_action_is_flagged() {
        // Identity on the fixed point, but a non-involutive cycle for g:
        // fails the module law (g·g = e must act as the identity).
        let g = FiniteGroup::cyclic(2);
        let q: HopfAlgebra<Rat> = group_hopf(&g);
        let b = crate::algebra::function_algebra(&["1".into(), "2".into(), "3".into()]);
        let cycle = LinMap::from_cols(
            3,
            vec![SVec::unit(3, 1), SVec::unit(3, 2), SVec::unit(3, 0)],
        );
        let bad = RightAction { maps: vec![LinMap::identity(3), cycle] };
        let rep = check_right_module_algebra(&b, &q, &bad);
        assert!(rep.iter().any(|c| !c.passed()));
    }
}
