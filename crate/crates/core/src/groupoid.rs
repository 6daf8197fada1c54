//! Finite groupoids: a finite set with a partially defined associative
//! product, a total inverse, and a distinguished set of units.
//!
//! The partial product is stored as a dense table of options. `validate`
//! checks every groupoid axiom and returns the complete list of violations,
//! so an empty report certifies the structure. Constructors cover the stock
//! of examples used by the algebra layer: pair groupoids, groups viewed as
//! one-unit groupoids, transformation (action) groupoids, and disjoint
//! unions.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A violated groupoid axiom together with a concrete witness.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub law: String,
    pub witness: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.witness)
    }
}

/// Finite groupoid on elements `0..len()` with labelled elements.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteGroupoid {
    pub labels: Vec<String>,
    /// Sorted indices of the unit elements.
    pub units: Vec<usize>,
    /// Row-major partial product table: `product[p * n + q]` is `pq`.
    product: Vec<Option<usize>>,
    pub inverse: Vec<usize>,
}

impl FiniteGroupoid {
    pub fn new(
        labels: Vec<String>,
        units: Vec<usize>,
        product: Vec<Option<usize>>,
        inverse: Vec<usize>,
    ) -> Self {
        let n = labels.len();
        assert_eq!(product.len(), n * n);
        assert_eq!(inverse.len(), n);
        let mut units = units;
        units.sort_unstable();
        units.dedup();
        FiniteGroupoid { labels, units, product, inverse }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn compose(&self, p: usize, q: usize) -> Option<usize> {
        self.product[p * self.len() + q]
    }

    pub fn is_unit(&self, p: usize) -> bool {
        self.units.binary_search(&p).is_ok()
    }

    /// Source unit `p⁻¹ p`, when the table provides it.
    pub fn source(&self, p: usize) -> Option<usize> {
        self.compose(self.inverse[p], p)
    }

    /// Target unit `p p⁻¹`, when the table provides it.
    pub fn target(&self, p: usize) -> Option<usize> {
        self.compose(p, self.inverse[p])
    }

    pub fn defined_pairs(&self) -> usize {
        self.product.iter().filter(|x| x.is_some()).count()
    }

    fn l(&self, p: usize) -> &str {
        &self.labels[p]
    }

    /// Checks every axiom; the empty report certifies a valid groupoid.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.len();
        let mut out: Vec<Violation> = Vec::new();
        fn push(out: &mut Vec<Violation>, law: &str, witness: String) {
            out.push(Violation { law: law.to_string(), witness });
        }
        for p in 0..n {
            if self.inverse[p] >= n {
                push(&mut out, "inverse-range", format!("inverse of {} out of range", self.l(p)));
            }
        }
        for v in self.product.iter().flatten() {
            if *v >= n {
                push(&mut out, "product-range", format!("product value {} out of range", v));
            }
        }
        if out.iter().any(|v| v.law.ends_with("range")) {
            return out;
        }
        for &e in &self.units {
            if self.inverse[e] != e {
                push(&mut out, "unit-self-inverse", format!("{}⁻¹ ≠ {}", self.l(e), self.l(e)));
            }
            if self.compose(e, e) != Some(e) {
                push(&mut out, "unit-idempotent", format!("{}·{} ≠ {}", self.l(e), self.l(e), self.l(e)));
            }
        }
        for p in 0..n {
            let ip = self.inverse[p];
            if self.inverse[ip] != p {
                push(&mut out, "inverse-involution", format!("({}⁻¹)⁻¹ ≠ {}", self.l(p), self.l(p)));
            }
            match self.source(p) {
                Some(s) if self.is_unit(s) => {}
                Some(s) => push(&mut out, "source-is-unit", format!("{}⁻¹·{} = {} not a unit", self.l(p), self.l(p), self.l(s))),
                None => push(&mut out, "source-defined", format!("{}⁻¹·{} undefined", self.l(p), self.l(p))),
            }
            match self.target(p) {
                Some(t) if self.is_unit(t) => {}
                Some(t) => push(&mut out, "target-is-unit", format!("{}·{}⁻¹ = {} not a unit", self.l(p), self.l(p), self.l(t))),
                None => push(&mut out, "target-defined", format!("{}·{}⁻¹ undefined", self.l(p), self.l(p))),
            }
        }
        if !out.is_empty() {
            // Definedness and associativity reference source/target units.
            return out;
        }
        for p in 0..n {
            for q in 0..n {
                let should = self.source(p) == self.target(q);
                let is = self.compose(p, q).is_some();
                if should && !is {
                    push(
                        &mut out,
                        "composability",
                        format!("{}·{} undefined though s({}) = t({})", self.l(p), self.l(q), self.l(p), self.l(q)),
                    );
                }
                if !should && is {
                    push(
                        &mut out,
                        "composability",
                        format!("{}·{} defined though s({}) ≠ t({})", self.l(p), self.l(q), self.l(p), self.l(q)),
                    );
                }
            }
        }
        for p in 0..n {
            let (s, t) = (self.source(p).unwrap(), self.target(p).unwrap());
            if self.compose(t, p) != Some(p) {
                push(&mut out, "unit-neutral-left", format!("t({0})·{0} ≠ {0}", self.l(p)));
            }
            if self.compose(p, s) != Some(p) {
                push(&mut out, "unit-neutral-right", format!("{0}·s({0}) ≠ {0}", self.l(p)));
            }
            if self.compose(self.inverse[p], p) != Some(s) {
                push(&mut out, "inverse-source", format!("{}⁻¹·{} ≠ s({})", self.l(p), self.l(p), self.l(p)));
            }
        }
        for p in 0..n {
            for q in 0..n {
                let pq = self.compose(p, q);
                for r in 0..n {
                    let qr = self.compose(q, r);
                    match (pq, qr) {
                        (Some(a), Some(b)) => {
                            let left = self.compose(a, r);
                            let right = self.compose(p, b);
                            if left != right || left.is_none() {
                                push(
                                    &mut out,
                                    "associativity",
                                    format!("({}·{})·{} ≠ {}·({}·{})", self.l(p), self.l(q), self.l(r), self.l(p), self.l(q), self.l(r)),
                                );
                            }
                        }
                        (Some(a), None) => {
                            if self.compose(a, r).is_some() {
                                push(
                                    &mut out,
                                    "associativity",
                                    format!("({}·{})·{} defined but {}·{} is not", self.l(p), self.l(q), self.l(r), self.l(q), self.l(r)),
                                );
                            }
                        }
                        (None, Some(b)) => {
                            if self.compose(p, b).is_some() {
                                push(
                                    &mut out,
                                    "associativity",
                                    format!("{}·({}·{}) defined but {}·{} is not", self.l(p), self.l(q), self.l(r), self.l(p), self.l(q)),
                                );
                            }
                        }
                        (None, None) => {}
                    }
                }
            }
        }
        out
    }

    /// Serializes to the interchange format (element names throughout).
    pub fn to_json(&self) -> serde_json::Value {
        let file = GroupoidFile {
            elements: self.labels.clone(),
            units: self.units.iter().map(|&u| self.labels[u].clone()).collect(),
            product: {
                let mut v = Vec::new();
                for p in 0..self.len() {
                    for q in 0..self.len() {
                        if let Some(r) = self.compose(p, q) {
                            v.push((
                                self.labels[p].clone(),
                                self.labels[q].clone(),
                                self.labels[r].clone(),
                            ));
                        }
                    }
                }
                v
            },
            inverse: self
                .labels
                .iter()
                .enumerate()
                .map(|(p, l)| (l.clone(), self.labels[self.inverse[p]].clone()))
                .collect(),
        };
        serde_json::to_value(file).expect("groupoid serialization")
    }

    /// Parses the interchange format. Structural errors (unknown names,
    /// duplicate entries, missing inverses) are reported here; the groupoid
    /// axioms themselves are left to [`FiniteGroupoid::validate`].
    pub fn from_json(v: &serde_json::Value) -> Result<FiniteGroupoid, String> {
        let file: GroupoidFile =
            serde_json::from_value(v.clone()).map_err(|e| format!("malformed groupoid file: {e}"))?;
        let n = file.elements.len();
        let index: BTreeMap<&str, usize> =
            file.elements.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        if index.len() != n {
            return Err("duplicate element names".to_string());
        }
        let lookup = |name: &str| -> Result<usize, String> {
            index.get(name).copied().ok_or_else(|| format!("unknown element name {name:?}"))
        };
        let mut units = Vec::new();
        for u in &file.units {
            units.push(lookup(u)?);
        }
        let mut product = vec![None; n * n];
        for (p, q, r) in &file.product {
            let (p, q, r) = (lookup(p)?, lookup(q)?, lookup(r)?);
            if product[p * n + q].is_some() {
                return Err(format!(
                    "duplicate product entry for ({:?}, {:?})",
                    file.elements[p], file.elements[q]
                ));
            }
            product[p * n + q] = Some(r);
        }
        let mut inverse = vec![None; n];
        for (p, q) in &file.inverse {
            inverse[lookup(p)?] = Some(lookup(q)?);
        }
        let inverse: Vec<usize> = inverse
            .into_iter()
            .enumerate()
            .map(|(p, v)| v.ok_or_else(|| format!("missing inverse for {:?}", file.elements[p])))
            .collect::<Result<_, _>>()?;
        Ok(FiniteGroupoid::new(file.elements, units, product, inverse))
    }
}

#[derive(Serialize, Deserialize)]
struct GroupoidFile {
    elements: Vec<String>,
    units: Vec<String>,
    product: Vec<(String, String, String)>,
    inverse: BTreeMap<String, String>,
}

/// Units-only groupoid on a point set: every element is its own source,
/// target, and inverse, and `pp` is the only defined product.
pub fn units_groupoid(points: &[String]) -> FiniteGroupoid {
    let n = points.len();
    assert!(n > 0);
    let mut product = vec![None; n * n];
    for p in 0..n {
        product[p * n + p] = Some(p);
    }
    FiniteGroupoid::new(points.to_vec(), (0..n).collect(), product, (0..n).collect())
}

/// Pair groupoid on `n` points: elements `(i,j)`, product `(i,j)(j,k) = (i,k)`.
pub fn pair_groupoid(n: usize) -> FiniteGroupoid {
    assert!(n > 0);
    let idx = |i: usize, j: usize| i * n + j;
    let labels: Vec<String> = (0..n * n)
        .map(|e| format!("({},{})", e / n + 1, e % n + 1))
        .collect();
    let mut product = vec![None; n * n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                product[idx(i, j) * n * n + idx(j, k)] = Some(idx(i, k));
            }
        }
    }
    let inverse = (0..n * n).map(|e| idx(e % n, e / n)).collect();
    let units = (0..n).map(|i| idx(i, i)).collect();
    FiniteGroupoid::new(labels, units, product, inverse)
}

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteGroup {
    pub labels: Vec<String>,
    pub mult: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub identity: usize,
}

impl FiniteGroup {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Cyclic group of order `n`, labels `e, g, g2, ...`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n > 0);
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{k}"),
            })
            .collect();
        let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let inv = (0..n).map(|a| (n - a) % n).collect();
        FiniteGroup { labels, mult, inv, identity: 0 }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            if self.mult[self.identity][a] != a || self.mult[a][self.identity] != a {
                out.push(Violation {
                    law: "group-identity".into(),
                    witness: format!("identity fails on {}", self.labels[a]),
                });
            }
            if self.mult[a][self.inv[a]] != self.identity || self.mult[self.inv[a]][a] != self.identity {
                out.push(Violation {
                    law: "group-inverse".into(),
                    witness: format!("inverse fails on {}", self.labels[a]),
                });
            }
            for b in 0..n {
                for c in 0..n {
                    if self.mult[self.mult[a][b]][c] != self.mult[a][self.mult[b][c]] {
                        out.push(Violation {
                            law: "group-associativity".into(),
                            witness: format!(
                                "({}·{})·{} ≠ {}·({}·{})",
                                self.labels[a], self.labels[b], self.labels[c],
                                self.labels[a], self.labels[b], self.labels[c]
                            ),
                        });
                    }
                }
            }
        }
        out
    }
}

/// A group viewed as a groupoid with a single unit.
pub fn group_groupoid(g: &FiniteGroup) -> FiniteGroupoid {
    let n = g.len();
    let mut product = vec![None; n * n];
    for a in 0..n {
        for b in 0..n {
            product[a * n + b] = Some(g.mult[a][b]);
        }
    }
    FiniteGroupoid::new(g.labels.clone(), vec![g.identity], product, g.inv.clone())
}

/// Left action of a finite group on a finite set, `table[h][x] = h ▷ x`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAction {
    pub table: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn act(&self, h: usize, x: usize) -> usize {
        self.table[h][x]
    }

    pub fn set_size(&self) -> usize {
        self.table.first().map(|r| r.len()).unwrap_or(0)
    }

    /// Action of a cyclic group of order two that swaps points `a` and `b`.
    pub fn swap(n: usize, a: usize, b: usize) -> GroupAction {
        assert!(a < n && b < n);
        let id: Vec<usize> = (0..n).collect();
        let mut sw = id.clone();
        sw.swap(a, b);
        GroupAction { table: vec![id, sw] }
    }

    pub fn trivial(group_len: usize, n: usize) -> GroupAction {
        GroupAction { table: vec![(0..n).collect(); group_len] }
    }

    pub fn validate(&self, g: &FiniteGroup) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.set_size();
        if self.table.len() != g.len() {
            out.push(Violation {
                law: "action-shape".into(),
                witness: "one row per group element required".into(),
            });
            return out;
        }
        for x in 0..n {
            if self.act(g.identity, x) != x {
                out.push(Violation {
                    law: "action-identity".into(),
                    witness: format!("e ▷ {x} ≠ {x}"),
                });
            }
        }
        for k in 0..g.len() {
            for h in 0..g.len() {
                for x in 0..n {
                    if self.act(g.mult[k][h], x) != self.act(k, self.act(h, x)) {
                        out.push(Violation {
                            law: "action-compatibility".into(),
                            witness: format!(
                                "({}·{}) ▷ {x} ≠ {} ▷ ({} ▷ {x})",
                                g.labels[k], g.labels[h], g.labels[k], g.labels[h]
                            ),
                        });
                    }
                }
            }
        }
        out
    }
}

/// Transformation groupoid of a group action: elements `(y,h,x)` with
/// `y = h ▷ x`, product `(z,k,y)(y,h,x) = (z,kh,x)`.
pub fn action_groupoid(x_labels: &[String], g: &FiniteGroup, action: &GroupAction) -> FiniteGroupoid {
    assert!(action.validate(g).is_empty(), "not a group action");
    let nx = x_labels.len();
    assert_eq!(action.set_size(), nx);
    // Elements are parameterized bijectively by (h, x).
    let idx = |h: usize, x: usize| h * nx + x;
    let n = g.len() * nx;
    let labels = (0..n)
        .map(|e| {
            let (h, x) = (e / nx, e % nx);
            format!("({},{},{})", x_labels[action.act(h, x)], g.labels[h], x_labels[x])
        })
        .collect();
    let mut product = vec![None; n * n];
    for k in 0..g.len() {
        for y in 0..nx {
            for h in 0..g.len() {
                for x in 0..nx {
                    if action.act(h, x) == y {
                        product[idx(k, y) * n + idx(h, x)] = Some(idx(g.mult[k][h], x));
                    }
                }
            }
        }
    }
    let inverse = (0..n)
        .map(|e| {
            let (h, x) = (e / nx, e % nx);
            idx(g.inv[h], action.act(h, x))
        })
        .collect();
    let units = (0..nx).map(|x| idx(g.identity, x)).collect();
    FiniteGroupoid::new(labels, units, product, inverse)
}

/// Disjoint union: the two blocks never compose.
pub fn disjoint_union(a: &FiniteGroupoid, b: &FiniteGroupoid) -> FiniteGroupoid {
    let (na, nb) = (a.len(), b.len());
    let n = na + nb;
    let mut labels: Vec<String> = a.labels.iter().map(|l| format!("0:{l}")).collect();
    labels.extend(b.labels.iter().map(|l| format!("1:{l}")));
    let mut product = vec![None; n * n];
    for p in 0..na {
        for q in 0..na {
            product[p * n + q] = a.compose(p, q);
        }
    }
    for p in 0..nb {
        for q in 0..nb {
            product[(na + p) * n + (na + q)] = b.compose(p, q).map(|r| na + r);
        }
    }
    let mut inverse: Vec<usize> = a.inverse.clone();
    inverse.extend(b.inverse.iter().map(|&i| na + i));
    let mut units = a.units.clone();
    units.extend(b.units.iter().map(|&u| na + u));
    FiniteGroupoid::new(labels, units, product, inverse)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Oracle: the pair groupoid on n points has n² elements, n units, and
    // exactly n³ composable pairs.
    #[test]
    fn pair_groupoid_counts() {
        for n in 1..=4 {
            let g = pair_groupoid(n);
            assert_eq!(g.len(), n * n);
            assert_eq!(g.units.len(), n);
            assert_eq!(g.defined_pairs(), n * n * n);
            assert!(g.validate().is_empty(), "n = {n}: {:?}", g.validate());
        }
    }

    #[test]
    fn pair_groupoid_products() {
        let g = pair_groupoid(3);
        let find = |l: &str| g.labels.iter().position(|x| x == l).unwrap();
        let (a, b) = (find("(1,2)"), find("(2,3)"));
        assert_eq!(g.compose(a, b), Some(find("(1,3)")));
        assert_eq!(g.compose(b, a), None);
        assert_eq!(g.inverse[a], find("(2,1)"));
        assert_eq!(g.source(a), Some(find("(2,2)")));
        assert_eq!(g.target(a), Some(find("(1,1)")));
    }

    #[test]
    fn cyclic_groups_validate() {
        for n in 1..=6 {
            let g = FiniteGroup::cyclic(n);
            assert!(g.validate().is_empty());
            let gg = group_groupoid(&g);
            assert!(gg.validate().is_empty());
            assert_eq!(gg.units, vec![0]);
            assert_eq!(gg.defined_pairs(), n * n);
        }
    }

    // Oracle: X = {1,2,3} with the order-two swap of 1 and 2 gives a
    // transformation groupoid with 6 elements and 3 units; the fixed point
    // contributes a copy of the group, the swapped pair a pair-like block.
    #[test]
    fn action_groupoid_swap_counts() {
        let h = FiniteGroup::cyclic(2);
        let act = GroupAction::swap(3, 0, 1);
        let labels: Vec<String> = (1..=3).map(|i| i.to_string()).collect();
        let g = action_groupoid(&labels, &h, &act);
        assert_eq!(g.len(), 6);
        assert_eq!(g.units.len(), 3);
        assert!(g.validate().is_empty(), "{:?}", g.validate());
        let find = |l: &str| g.labels.iter().position(|x| x == l).unwrap();
        // (2,g,1)(1,g,2) = (2,e,2)
        let p = find("(2,g,1)");
        let q = find("(1,g,2)");
        assert_eq!(g.compose(p, q), Some(find("(2,e,2)")));
        assert_eq!(g.compose(p, p), None);
        assert_eq!(g.inverse[p], q);
    }

    #[test]
    fn disjoint_union_blocks_do_not_interact() {
        let a = group_groupoid(&FiniteGroup::cyclic(2));
        let b = group_groupoid(&FiniteGroup::cyclic(3));
        let u = disjoint_union(&a, &b);
        assert_eq!(u.len(), 5);
        assert_eq!(u.units.len(), 2);
        assert!(u.validate().is_empty());
        for p in 0..2 {
            for q in 2..5 {
                assert_eq!(u.compose(p, q), None);
                assert_eq!(u.compose(q, p), None);
            }
        }
        assert_eq!(u.defined_pairs(), 4 + 9);
    }

    #[test]
    fn validate_reports_broken_axioms() {
        let mut g = pair_groupoid(2);
        // Redirect (1,2)(2,1) to a wrong value: associativity and unit laws break.
        let find = |g: &FiniteGroupoid, l: &str| g.labels.iter().position(|x| x == l).unwrap();
        let (a, b) = (find(&g, "(1,2)"), find(&g, "(2,1)"));
        let n = g.len();
        g.product[a * n + b] = Some(find(&g, "(2,2)"));
        let report = g.validate();
        assert!(!report.is_empty());
        assert!(report.iter().any(|v| v.law == "associativity" || v.law.starts_with("target")));
    }

    #[test]
    fn validate_reports_missing_composable_product() {
        let mut g = pair_groupoid(2);
        let find = |g: &FiniteGroupoid, l: &str| g.labels.iter().position(|x| x == l).unwrap();
        let (a, b) = (find(&g, "(1,2)"), find(&g, "(2,2)"));
        let n = g.len();
        g.product[a * n + b] = None;
        let report = g.validate();
        assert!(report.iter().any(|v| v.law == "composability"), "{report:?}");
    }

    #[test]
    fn json_roundtrip() {
        let g = action_groupoid(
            &["1".into(), "2".into(), "3".into()],
            &FiniteGroup::cyclic(2),
            &GroupAction::swap(3, 0, 1),
        );
        let v = g.to_json();
        let back = FiniteGroupoid::from_json(&v).expect("roundtrip");
        assert_eq!(g, back);
    }

    #[test]
    fn json_rejects_malformed_input() {
        let v = serde_json::json!({
            "elements": ["a", "b"],
            "units": ["a"],
            "product": [["a", "a", "c"]],
            "inverse": {"a": "a", "b": "b"}
        });
        assert!(FiniteGroupoid::from_json(&v).unwrap_err().contains("unknown element"));
        let v = serde_json::json!({
            "elements": ["a"],
            "units": ["a"],
            "product": [["a", "a", "a"], ["a", "a", "a"]],
            "inverse": {"a": "a"}
        });
        assert!(FiniteGroupoid::from_json(&v).unwrap_err().contains("duplicate product"));
        let v = serde_json::json!({
            "elements": ["a"],
            "units": ["a"],
            "product": [],
            "inverse": {}
        });
        assert!(FiniteGroupoid::from_json(&v).unwrap_err().contains("missing inverse"));
    }

    #[test]
    fn swap_action_validates() {
        let h = FiniteGroup::cyclic(2);
        assert!(GroupAction::swap(4, 1, 3).validate(&h).is_empty());
        assert!(GroupAction::trivial(3, 5).validate(&FiniteGroup::cyclic(3)).is_empty());
        // A non-action: the table row for g is not an involution companion.
        let bad = GroupAction { table: vec![vec![0, 1, 2], vec![1, 2, 0]] };
        assert!(!bad.validate(&h).is_empty());
    }
}
