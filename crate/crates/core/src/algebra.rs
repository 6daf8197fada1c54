//! Finite-dimensional algebras presented by structure constants, and the
//! multiplier formalism built on top of them.
//!
//! An [`Algebra`] stores the products of basis elements as sparse vectors.
//! It need not have a unit; a unit is searched for once at construction and
//! recorded when it exists. A [`Multiplier`] is a pair of linear maps
//! (left action, right action) obeying the module laws; the algebra embeds
//! into its multipliers, and for unital algebras the embedding is onto.
//!
//! Tensor conventions: the basis of `A⊗B` is indexed by `i·dim(B) + j`, and
//! a multiplier flattens to a single coordinate vector by stacking the
//! columns of its left action, then of its right action.

use crate::linalg::{kron, tensor_svec, LinMap, LinSystem, PreimageSolver, RowReducer, SVec, Subspace};
use crate::report::CheckResult;
use crate::scalar::Scalar;

/// Finite-dimensional algebra over `F` with a labelled basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra<F> {
    pub labels: Vec<String>,
    pub dim: usize,
    /// Row-major structure constants: `table[i * dim + j] = e_i · e_j`.
    table: Vec<SVec<F>>,
    /// The unit element, if one exists (solved for once at construction).
    pub unit: Option<SVec<F>>,
}

impl<F: Scalar> Algebra<F> {
    pub fn new(labels: Vec<String>, table: Vec<SVec<F>>) -> Self {
        let dim = labels.len();
        assert!(dim > 0);
        assert_eq!(table.len(), dim * dim);
        for t in &table {
            assert_eq!(t.dim, dim);
        }
        let mut a = Algebra { labels, dim, table, unit: None };
        a.unit = a.solve_unit();
        a
    }

    /// Constructor for callers that already know the unit (or its absence),
    /// e.g. tensor products of unital algebras. The claim is verified.
    pub fn with_known_unit(labels: Vec<String>, table: Vec<SVec<F>>, unit: Option<SVec<F>>) -> Self {
        let dim = labels.len();
        assert!(dim > 0);
        assert_eq!(table.len(), dim * dim);
        let a = Algebra { labels, dim, table, unit: None };
        if let Some(u) = &unit {
            for j in 0..dim {
                assert_eq!(&a.mult(u, &a.basis(j)), &a.basis(j), "claimed unit fails");
                assert_eq!(&a.mult(&a.basis(j), u), &a.basis(j), "claimed unit fails");
            }
        }
        Algebra { unit, ..a }
    }

    fn solve_unit(&self) -> Option<SVec<F>> {
        let n = self.dim;
        let mut sys = LinSystem::new(n);
        for j in 0..n {
            // Σ_i u_i (e_i e_j) = e_j and Σ_i u_i (e_j e_i) = e_j.
            let left: Vec<SVec<F>> = (0..n).map(|i| self.table[i * n + j].clone()).collect();
            sys.add_vec_eq(&left, &self.basis(j));
            let right: Vec<SVec<F>> = (0..n).map(|i| self.table[j * n + i].clone()).collect();
            sys.add_vec_eq(&right, &self.basis(j));
        }
        // Any solution is a two-sided unit, and a unit is unique; take the
        // particular solution.
        sys.solve().particular()
    }

    pub fn basis(&self, i: usize) -> SVec<F> {
        SVec::unit(self.dim, i)
    }

    pub fn basis_mult(&self, i: usize, j: usize) -> &SVec<F> {
        &self.table[i * self.dim + j]
    }

    pub fn mult(&self, a: &SVec<F>, b: &SVec<F>) -> SVec<F> {
        assert_eq!(a.dim, self.dim);
        assert_eq!(b.dim, self.dim);
        let mut out = SVec::zero(self.dim);
        for (i, x) in a.terms() {
            for (j, y) in b.terms() {
                out = out.add_scaled(&self.table[i * self.dim + j], &(x.clone() * y.clone()));
            }
        }
        out
    }

    /// Left multiplication `b ↦ a·b` as a linear map.
    pub fn left_mult_map(&self, a: &SVec<F>) -> LinMap<F> {
        let mut cols = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let mut c = SVec::zero(self.dim);
            for (i, x) in a.terms() {
                c = c.add_scaled(&self.table[i * self.dim + j], x);
            }
            cols.push(c);
        }
        LinMap::from_cols(self.dim, cols)
    }

    /// Right multiplication `b ↦ b·a` as a linear map.
    pub fn right_mult_map(&self, a: &SVec<F>) -> LinMap<F> {
        let mut cols = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut c = SVec::zero(self.dim);
            for (j, x) in a.terms() {
                c = c.add_scaled(&self.table[i * self.dim + j], x);
            }
            cols.push(c);
        }
        LinMap::from_cols(self.dim, cols)
    }

    /// Tensor product algebra with basis index `i·dim(other) + j`.
    pub fn tensor(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let mut labels = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                labels.push(format!("{}⊗{}", self.labels[i], other.labels[j]));
            }
        }
        let mut table = Vec::with_capacity(n * m * n * m);
        for i1 in 0..n {
            for i2 in 0..m {
                for j1 in 0..n {
                    for j2 in 0..m {
                        table.push(tensor_svec(self.basis_mult(i1, j1), other.basis_mult(i2, j2)));
                    }
                }
            }
        }
        let unit = match (&self.unit, &other.unit) {
            (Some(u), Some(v)) => Some(tensor_svec(u, v)),
            _ => None,
        };
        // The tensor-of-units shortcut skips a large unit solve; the claim
        // is still verified by the constructor.
        Algebra::with_known_unit(labels, table, unit)
    }

    /// Opposite algebra: same basis, reversed product.
    pub fn opposite(&self) -> Self {
        let n = self.dim;
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(self.table[j * n + i].clone());
            }
        }
        Algebra {
            labels: self.labels.clone(),
            dim: n,
            table,
            unit: self.unit.clone(),
        }
    }

    /// Renders an element against the basis labels, for witnesses.
    pub fn show(&self, v: &SVec<F>) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in v.terms() {
            parts.push(format!("{}·{}", c, self.labels[*i]));
        }
        parts.join(" + ")
    }

    /// The span of all products `e_i e_j`.
    pub fn product_span(&self) -> Subspace<F> {
        Subspace::from_rows(self.dim, self.table.iter().cloned())
    }

    /// Flattened two-sided regular representation `t ↦ (L_t, R_t)`,
    /// the embedding of the algebra into its multipliers.
    pub fn embedding_map(&self) -> LinMap<F> {
        let cols = (0..self.dim)
            .map(|i| flatten_multiplier(&Multiplier::from_element(self, &self.basis(i))))
            .collect();
        LinMap::from_cols(2 * self.dim * self.dim, cols)
    }
}

/// Function algebra on a labelled finite set: pointwise product, unit the
/// sum of all points.
pub fn function_algebra<F: Scalar>(labels: &[String]) -> Algebra<F> {
    let n = labels.len();
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            table.push(if i == j { SVec::unit(n, i) } else { SVec::zero(n) });
        }
    }
    let unit = SVec::from_terms(n, (0..n).map(|i| (i, F::one())).collect());
    Algebra::with_known_unit(
        labels.iter().map(|l| format!("δ_{l}")).collect(),
        table,
        Some(unit),
    )
}

/// Axiom report for a bare algebra: associativity, idempotency (products
/// span), two-sided non-degeneracy, plus observations of unitality and of a
/// basis-wide local unit. The observations never fail; whether such algebras
/// must be unital is left open, and nothing downstream assumes it.
pub fn check_algebra<F: Scalar>(a: &Algebra<F>) -> Vec<CheckResult> {
    let n = a.dim;
    let mut out = Vec::new();

    let mut assoc_witness = None;
    'assoc: for i in 0..n {
        for j in 0..n {
            let ij = a.basis_mult(i, j).clone();
            for k in 0..n {
                let left = a.mult(&ij, &a.basis(k));
                let right = a.mult(&a.basis(i), a.basis_mult(j, k));
                if left != right {
                    assoc_witness = Some(format!(
                        "({0}·{1})·{2} = {3} but {0}·({1}·{2}) = {4}",
                        a.labels[i], a.labels[j], a.labels[k], a.show(&left), a.show(&right)
                    ));
                    break 'assoc;
                }
            }
        }
    }
    out.push(CheckResult::from_flag(
        "associativity",
        "(x·y)·z = x·(y·z) on all basis triples",
        assoc_witness.is_none(),
        || assoc_witness.unwrap(),
    ));

    let span = a.product_span();
    out.push(CheckResult::from_flag(
        "idempotent",
        "span{x·y} = A",
        span.is_full(),
        || format!("products span a subspace of dimension {} < {}", span.dim(), n),
    ));

    // a·A = 0 ⟹ a = 0 and A·a = 0 ⟹ a = 0, via kernels of the stacked
    // regular representations.
    let left_rep = LinMap::from_cols(
        n * n,
        (0..n)
            .map(|i| {
                let mut c = SVec::zero(n * n);
                for j in 0..n {
                    c = c.add(&a.basis_mult(i, j).shift_into(n * n, j * n));
                }
                c
            })
            .collect(),
    );
    let right_rep = LinMap::from_cols(
        n * n,
        (0..n)
            .map(|j| {
                let mut c = SVec::zero(n * n);
                for i in 0..n {
                    c = c.add(&a.basis_mult(i, j).shift_into(n * n, i * n));
                }
                c
            })
            .collect(),
    );
    let lk = left_rep.kernel();
    let rk = right_rep.kernel();
    out.push(CheckResult::from_flag(
        "non-degenerate",
        "x·A = 0 ⟹ x = 0 and A·x = 0 ⟹ x = 0",
        lk.is_empty() && rk.is_empty(),
        || {
            let w = lk.first().or(rk.first()).unwrap();
            let side = if lk.is_empty() { "A·x = 0" } else { "x·A = 0" };
            format!("{} for x = {}", side, a.show(w))
        },
    ));

    out.push(match &a.unit {
        Some(u) => CheckResult::pass_with("unital-observed", "record whether a unit exists", format!("unit = {}", a.show(u))),
        None => CheckResult::pass_with("unital-observed", "record whether a unit exists", "no unit element".to_string()),
    });

    let lu = local_units_for(a, &(0..n).map(|i| a.basis(i)).collect::<Vec<_>>(), Side::Both);
    out.push(match lu {
        Some(u) => CheckResult::pass_with(
            "local-units-observed",
            "record a two-sided local unit for the full basis",
            format!("u = {}", a.show(&u)),
        ),
        None => CheckResult::pass_with(
            "local-units-observed",
            "record a two-sided local unit for the full basis",
            "none for the full basis".to_string(),
        ),
    });

    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Both,
}

/// Solves for `u` with `u·x = x` (left), `x·u = x` (right), or both, for
/// every `x` in the given family. Returns a witness or certified absence.
pub fn local_units_for<F: Scalar>(a: &Algebra<F>, elements: &[SVec<F>], side: Side) -> Option<SVec<F>> {
    let n = a.dim;
    let mut sys = LinSystem::new(n);
    for x in elements {
        if side != Side::Right {
            let cols: Vec<SVec<F>> = (0..n).map(|i| a.mult(&a.basis(i), x)).collect();
            sys.add_vec_eq(&cols, x);
        }
        if side != Side::Left {
            let cols: Vec<SVec<F>> = (0..n).map(|i| a.mult(x, &a.basis(i))).collect();
            sys.add_vec_eq(&cols, x);
        }
    }
    sys.solve().particular()
}

/// Like [`local_units_for`], but the candidate is constrained to a span.
pub fn local_unit_in<F: Scalar>(
    a: &Algebra<F>,
    span: &Subspace<F>,
    elements: &[SVec<F>],
    side: Side,
) -> Option<SVec<F>> {
    let k = span.dim();
    let mut sys = LinSystem::new(k);
    for x in elements {
        if side != Side::Right {
            let cols: Vec<SVec<F>> = span.basis().iter().map(|w| a.mult(w, x)).collect();
            sys.add_vec_eq(&cols, x);
        }
        if side != Side::Left {
            let cols: Vec<SVec<F>> = span.basis().iter().map(|w| a.mult(x, w)).collect();
            sys.add_vec_eq(&cols, x);
        }
    }
    let coords = sys.solve().particular()?;
    let mut u = SVec::zero(a.dim);
    for (i, c) in coords.terms() {
        u = u.add_scaled(&span.basis()[*i], c);
    }
    Some(u)
}

/// A multiplier of a non-degenerate algebra: a compatible pair of a left
/// action `a ↦ m·a` and a right action `a ↦ a·m`.
#[derive(Clone, Debug, PartialEq)]
pub struct Multiplier<F> {
    pub left: LinMap<F>,
    pub right: LinMap<F>,
}

impl<F: Scalar> Multiplier<F> {
    pub fn dim(&self) -> usize {
        self.left.dim_in
    }

    pub fn identity(dim: usize) -> Self {
        Multiplier { left: LinMap::identity(dim), right: LinMap::identity(dim) }
    }

    pub fn zero(dim: usize) -> Self {
        Multiplier { left: LinMap::zero(dim, dim), right: LinMap::zero(dim, dim) }
    }

    pub fn from_element(alg: &Algebra<F>, a: &SVec<F>) -> Self {
        Multiplier { left: alg.left_mult_map(a), right: alg.right_mult_map(a) }
    }

    /// `m·a` for an algebra element `a`.
    pub fn apply_left(&self, a: &SVec<F>) -> SVec<F> {
        self.left.apply(a)
    }

    /// `a·m` for an algebra element `a`.
    pub fn apply_right(&self, a: &SVec<F>) -> SVec<F> {
        self.right.apply(a)
    }

    /// Multiplier product: `(m₁m₂)·a = m₁·(m₂·a)`, `a·(m₁m₂) = (a·m₁)·m₂`.
    pub fn product(&self, other: &Self) -> Self {
        Multiplier {
            left: self.left.compose(&other.left),
            right: other.right.compose(&self.right),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Multiplier { left: self.left.add(&other.left), right: self.right.add(&other.right) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Multiplier { left: self.left.sub(&other.left), right: self.right.sub(&other.right) }
    }

    pub fn scale(&self, c: &F) -> Self {
        Multiplier { left: self.left.scale(c), right: self.right.scale(c) }
    }

    pub fn is_zero(&self) -> bool {
        self.left.is_zero() && self.right.is_zero()
    }

    /// Checks the module laws `m·(ab) = (m·a)b`, `(ab)·m = a(b·m)` and the
    /// compatibility `(a·m)b = a(m·b)` on all basis pairs; returns a witness
    /// of the first failure. Quadratic in the dimension, so called at
    /// boundaries rather than in inner loops.
    pub fn is_valid(&self, alg: &Algebra<F>) -> Option<String> {
        let n = alg.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = alg.basis_mult(i, j);
                if self.left.apply(ij) != alg.mult(&self.left.apply(&alg.basis(i)), &alg.basis(j)) {
                    return Some(format!("m·({0}·{1}) ≠ (m·{0})·{1}", alg.labels[i], alg.labels[j]));
                }
                if self.right.apply(ij) != alg.mult(&alg.basis(i), &self.right.apply(&alg.basis(j))) {
                    return Some(format!("({0}·{1})·m ≠ {0}·({1}·m)", alg.labels[i], alg.labels[j]));
                }
                if alg.mult(&self.right.apply(&alg.basis(i)), &alg.basis(j))
                    != alg.mult(&alg.basis(i), &self.left.apply(&alg.basis(j)))
                {
                    return Some(format!("({0}·m)·{1} ≠ {0}·(m·{1})", alg.labels[i], alg.labels[j]));
                }
            }
        }
        None
    }

    /// Recognizes the multiplier as an algebra element when possible.
    ///
    /// With a unit, the candidate is `m·1` and the answer is complete: if
    /// that candidate does not reproduce both actions the multiplier is not
    /// a valid one. Without a unit, the flattened actions are solved against
    /// the regular representation.
    pub fn as_element(&self, alg: &Algebra<F>) -> Option<SVec<F>> {
        if let Some(u) = &alg.unit {
            let t = self.left.apply(u);
            if &Multiplier::from_element(alg, &t) == self {
                return Some(t);
            }
            return None;
        }
        let solver = PreimageSolver::new(&alg.embedding_map());
        solver.solve(&flatten_multiplier(self))
    }

    /// Element extraction for unital algebras on the fast path: `m·1`
    /// without re-verifying the actions. Sound whenever the multiplier is
    /// valid by construction (products and sums of valid multipliers).
    pub fn as_element_unchecked(&self, alg: &Algebra<F>) -> SVec<F> {
        let u = alg.unit.as_ref().expect("unital algebra required");
        self.left.apply(u)
    }
}

/// Stacks the columns of the left action, then of the right action, into a
/// single vector of dimension `2·dim²`.
pub fn flatten_multiplier<F: Scalar>(m: &Multiplier<F>) -> SVec<F> {
    let n = m.dim();
    let mut out = SVec::zero(2 * n * n);
    for j in 0..n {
        out = out.add(&m.left.col(j).shift_into(2 * n * n, j * n));
        out = out.add(&m.right.col(j).shift_into(2 * n * n, n * n + j * n));
    }
    out
}

/// Inverse of [`flatten_multiplier`].
pub fn multiplier_from_flat<F: Scalar>(dim: usize, v: &SVec<F>) -> Multiplier<F> {
    assert_eq!(v.dim, 2 * dim * dim);
    let mut left = Vec::with_capacity(dim);
    let mut right = Vec::with_capacity(dim);
    for j in 0..dim {
        left.push(v.slice(j * dim, (j + 1) * dim));
        right.push(v.slice(dim * dim + j * dim, dim * dim + (j + 1) * dim));
    }
    Multiplier { left: LinMap::from_cols(dim, left), right: LinMap::from_cols(dim, right) }
}

/// A basis of the multiplier algebra, in flattened coordinates.
///
/// For unital algebras this is the embedded basis of the algebra itself.
/// Otherwise the space of action pairs satisfying the module laws is solved
/// directly; the cubic row count keeps this to small dimensions, hence the
/// guard.
pub fn multiplier_basis<F: Scalar>(alg: &Algebra<F>) -> Result<Vec<Multiplier<F>>, String> {
    let n = alg.dim;
    if alg.unit.is_some() {
        return Ok((0..n).map(|i| Multiplier::from_element(alg, &alg.basis(i))).collect());
    }
    if n > 16 {
        return Err(format!(
            "multiplier basis of a non-unital algebra needs a direct law solve, kept to dimension ≤ 16 (got {n})"
        ));
    }
    // Unknowns: the 2n² entries of (L, R) in flattened order. Conditions,
    // one scalar row per output coordinate k:
    //   L(e_i e_j) = L(e_i)·e_j,  R(e_i e_j) = e_i·R(e_j),  R(e_i)·e_j = e_i·L(e_j).
    let unknowns = 2 * n * n;
    let lidx = |row: usize, col: usize| col * n + row;
    let ridx = |row: usize, col: usize| n * n + col * n + row;
    let mut red = RowReducer::new(unknowns);
    let mut add_row = |terms: Vec<(usize, F)>| {
        let mut v = SVec::zero(unknowns);
        for (i, c) in terms {
            v = v.add(&SVec::single(unknowns, i, c));
        }
        let _ = red.insert(v);
    };
    for i in 0..n {
        for j in 0..n {
            let ij = alg.basis_mult(i, j);
            for k in 0..n {
                // Σ_p ij_p L[k,p] − Σ_q table[q,j]_k L[q,i] = 0
                let mut terms: Vec<(usize, F)> = Vec::new();
                for (p, c) in ij.terms() {
                    terms.push((lidx(k, *p), c.clone()));
                }
                for q in 0..n {
                    let c = alg.basis_mult(q, j).get(k);
                    if !c.is_zero() {
                        terms.push((lidx(q, i), -c));
                    }
                }
                add_row(terms);
                // Σ_p ij_p R[k,p] − Σ_q table[i,q]_k R[q,j] = 0
                let mut terms: Vec<(usize, F)> = Vec::new();
                for (p, c) in ij.terms() {
                    terms.push((ridx(k, *p), c.clone()));
                }
                for q in 0..n {
                    let c = alg.basis_mult(i, q).get(k);
                    if !c.is_zero() {
                        terms.push((ridx(q, j), -c));
                    }
                }
                add_row(terms);
                // Σ_q table[q,j]_k R[q,i] − Σ_q table[i,q]_k L[q,j] = 0
                let mut terms: Vec<(usize, F)> = Vec::new();
                for q in 0..n {
                    let c = alg.basis_mult(q, j).get(k);
                    if !c.is_zero() {
                        terms.push((ridx(q, i), c));
                    }
                }
                for q in 0..n {
                    let c = alg.basis_mult(i, q).get(k);
                    if !c.is_zero() {
                        terms.push((lidx(q, j), -c));
                    }
                }
                add_row(terms);
            }
        }
    }
    // The solution space is the kernel of the constraint rows: compute it as
    // the kernel of the map with those rows, i.e. via the reducer's row
    // space turned into a matrix and its nullspace.
    let rows = red.basis();
    let map = LinMap::from_cols(
        rows.len().max(1),
        (0..unknowns)
            .map(|c| {
                SVec::from_terms(
                    rows.len().max(1),
                    rows.iter()
                        .enumerate()
                        .filter_map(|(r, row)| {
                            let x = row.get(c);
                            if x.is_zero() { None } else { Some((r, x)) }
                        })
                        .collect(),
                )
            })
            .collect(),
    );
    Ok(map.kernel().into_iter().map(|v| multiplier_from_flat(n, &v)).collect())
}

/// Coordinates of the subspace of a multiplier basis that preserves a given
/// subspace on both sides: `{ c : (Σ c_k m_k)·V ⊆ V and V·(Σ c_k m_k) ⊆ V }`.
pub fn relative_multipliers<F: Scalar>(
    mbasis: &[Multiplier<F>],
    sub: &Subspace<F>,
) -> Subspace<F> {
    let k = mbasis.len();
    let funcs = sub.membership_rows();
    let mut red = RowReducer::new(k);
    for v in sub.basis() {
        for f in &funcs {
            let mut lrow = SVec::zero(k);
            let mut rrow = SVec::zero(k);
            for (t, m) in mbasis.iter().enumerate() {
                let lc = f.dot(&m.left.apply(v));
                if !lc.is_zero() {
                    lrow = lrow.add(&SVec::single(k, t, lc));
                }
                let rc = f.dot(&m.right.apply(v));
                if !rc.is_zero() {
                    rrow = rrow.add(&SVec::single(k, t, rc));
                }
            }
            let _ = red.insert(lrow);
            let _ = red.insert(rrow);
        }
    }
    let rows = red.basis();
    if rows.is_empty() {
        return Subspace::full(k);
    }
    let map = LinMap::from_cols(
        rows.len(),
        (0..k)
            .map(|c| {
                SVec::from_terms(
                    rows.len(),
                    rows.iter()
                        .enumerate()
                        .filter_map(|(r, row)| {
                            let x = row.get(c);
                            if x.is_zero() { None } else { Some((r, x)) }
                        })
                        .collect(),
                )
            })
            .collect(),
    );
    Subspace::from_rows(k, map.kernel())
}

/// Tensor of two multipliers, acting on the tensor algebra.
pub fn tensor_multiplier<F: Scalar>(a: &Multiplier<F>, b: &Multiplier<F>) -> Multiplier<F> {
    Multiplier { left: kron(&a.left, &b.left), right: kron(&a.right, &b.right) }
}

/// Products of a multiplier of A₁⊗A₂ with 1⊗x or x⊗1, realized as elements
/// of the tensor algebra. With a unital leg the product is a single sparse
/// apply; otherwise the product multiplier is solved back to an element and
/// `None` reports that it lies outside A₁⊗A₂.
pub fn mult_one_tensor<F: Scalar>(
    a1: &Algebra<F>,
    a2: &Algebra<F>,
    prod: &Algebra<F>,
    m: &Multiplier<F>,
    x: &SVec<F>,
    on_left: bool,
) -> Option<SVec<F>> {
    if let Some(u) = &a1.unit {
        let elem = tensor_svec(u, x);
        return Some(if on_left { m.left.apply(&elem) } else { m.right.apply(&elem) });
    }
    let other = tensor_multiplier(&Multiplier::identity(a1.dim), &Multiplier::from_element(a2, x));
    let p = if on_left { m.product(&other) } else { other.product(m) };
    p.as_element(prod)
}

pub fn mult_tensor_one<F: Scalar>(
    a1: &Algebra<F>,
    a2: &Algebra<F>,
    prod: &Algebra<F>,
    m: &Multiplier<F>,
    x: &SVec<F>,
    on_left: bool,
) -> Option<SVec<F>> {
    if let Some(u) = &a2.unit {
        let elem = tensor_svec(x, u);
        return Some(if on_left { m.left.apply(&elem) } else { m.right.apply(&elem) });
    }
    let other = tensor_multiplier(&Multiplier::from_element(a1, x), &Multiplier::identity(a2.dim));
    let p = if on_left { m.product(&other) } else { other.product(m) };
    p.as_element(prod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use crate::Rat;
    use proptest::prelude::*;

    fn group_algebra_z2() -> Algebra<Rat> {
        // e, g with g² = e.
        let d = 2;
        let sv = |i: usize| SVec::<Rat>::unit(d, i);
        let table = vec![sv(0), sv(1), sv(1), sv(0)];
        Algebra::new(vec!["e".into(), "g".into()], table)
    }

    fn diagonal_k2() -> Algebra<Rat> {
        let d = 2;
        let sv = |i: usize| SVec::<Rat>::unit(d, i);
        let z = SVec::zero(d);
        let table = vec![sv(0), z.clone(), z.clone(), sv(1)];
        Algebra::new(vec!["δ1".into(), "δ2".into()], table)
    }

    // x² = x, xy = y, yx = 0, y² = 0: associative, no unit, degenerate
    // (y·A = 0 from the left-representation side).
    fn no_unit_algebra() -> Algebra<Rat> {
        let d = 2;
        let sv = |i: usize| SVec::<Rat>::unit(d, i);
        let z = SVec::zero(d);
        let table = vec![sv(0), sv(1), z.clone(), z.clone()];
        Algebra::new(vec!["x".into(), "y".into()], table)
    }

    #[test]
    fn units_found() {
        let a = group_algebra_z2();
        assert_eq!(a.unit, Some(a.basis(0)));
        let k = diagonal_k2();
        assert_eq!(k.unit, Some(k.basis(0).add(&k.basis(1))));
        assert_eq!(no_unit_algebra().unit, None);
    }

    #[test]
    fn check_algebra_passes_on_good_instances() {
        for a in [group_algebra_z2(), diagonal_k2()] {
            let rep = check_algebra(&a);
            assert!(rep.iter().all(|c| c.passed()), "{rep:?}");
            assert_eq!(rep.len(), 5);
        }
    }

    #[test]
    fn check_algebra_flags_degeneracy() {
        let rep = check_algebra(&no_unit_algebra());
        let nd = rep.iter().find(|c| c.name == "non-degenerate").unwrap();
        assert_eq!(nd.status, crate::report::Status::Fail);
        assert!(nd.witness.as_ref().unwrap().contains("y"), "{:?}", nd.witness);
    }

    #[test]
    fn check_algebra_flags_broken_associativity() {
        // Perturb one structure constant of K(2): δ1·δ2 = δ1.
        let d = 2;
        let sv = |i: usize| SVec::<Rat>::unit(d, i);
        let table = vec![sv(0), sv(0), SVec::zero(d), sv(1)];
        let a = Algebra::new(vec!["δ1".into(), "δ2".into()], table);
        let rep = check_algebra(&a);
        let assoc = rep.iter().find(|c| c.name == "associativity").unwrap();
        assert_eq!(assoc.status, crate::report::Status::Fail);
    }

    #[test]
    fn tensor_algebra_oracle() {
        let t = diagonal_k2().tensor(&group_algebra_z2());
        assert_eq!(t.dim, 4);
        assert_eq!(t.labels[1], "δ1⊗g");
        // (δ1⊗g)·(δ1⊗g) = δ1⊗e
        assert_eq!(t.basis_mult(1, 1), &t.basis(0));
        // (δ1⊗g)·(δ2⊗g) = 0
        assert!(t.basis_mult(1, 3).is_zero());
        assert!(t.unit.is_some());
        assert!(check_algebra(&t).iter().all(|c| c.passed()));
    }

    #[test]
    fn multiplier_embedding_is_homomorphism() {
        let a = group_algebra_z2();
        let x = a.basis(0).add(&a.basis(1).scale(&rat(2, 1)));
        let y = a.basis(1).scale(&rat(1, 3));
        let mx = Multiplier::from_element(&a, &x);
        let my = Multiplier::from_element(&a, &y);
        assert_eq!(mx.product(&my), Multiplier::from_element(&a, &a.mult(&x, &y)));
        assert_eq!(mx.is_valid(&a), None);
        assert_eq!(mx.as_element(&a), Some(x));
    }

    #[test]
    fn identity_multiplier_extracts_to_unit() {
        let a = diagonal_k2();
        let one = Multiplier::<Rat>::identity(2);
        assert_eq!(one.as_element(&a), a.unit);
        assert_eq!(one.as_element_unchecked(&a), a.unit.clone().unwrap());
    }

    #[test]
    fn invalid_multiplier_rejected() {
        let a = diagonal_k2();
        // Swap map is not a multiplier of K(2): it breaks the module law.
        let swap = LinMap::from_cols(2, vec![SVec::unit(2, 1), SVec::unit(2, 0)]);
        let m = Multiplier { left: swap.clone(), right: swap };
        assert!(m.is_valid(&a).is_some());
        assert_eq!(m.as_element(&a), None);
    }

    #[test]
    fn brute_multiplier_basis_matches_unital_answer() {
        // ℤ/3 group algebra with the unit hidden: the law solve must
        // recover a 3-dimensional multiplier algebra equal to the embedding.
        let d = 3;
        let sv = |i: usize| SVec::<Rat>::unit(d, i);
        let mut table = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                table.push(sv((i + j) % 3));
            }
        }
        let labels = vec!["e".into(), "g".into(), "g2".into()];
        let open = Algebra { labels, dim: 3, table, unit: None };
        let basis = multiplier_basis(&open).unwrap();
        assert_eq!(basis.len(), 3);
        let flat = Subspace::from_rows(2 * 9, basis.iter().map(flatten_multiplier));
        for i in 0..3 {
            let emb = flatten_multiplier(&Multiplier::from_element(&open, &open.basis(i)));
            assert!(flat.contains_vec(&emb));
        }
    }

    #[test]
    fn flatten_roundtrip() {
        let a = group_algebra_z2();
        let m = Multiplier::from_element(&a, &a.basis(1));
        assert_eq!(multiplier_from_flat(2, &flatten_multiplier(&m)), m);
    }

    #[test]
    fn relative_multipliers_oracle() {
        let a = group_algebra_z2();
        let mbasis = multiplier_basis(&a).unwrap();
        // Only multiples of e preserve span{e} on both sides.
        let sub = Subspace::from_rows(2, vec![a.basis(0)]);
        let rel = relative_multipliers(&mbasis, &sub);
        assert_eq!(rel.dim(), 1);
        assert!(rel.contains_vec(&SVec::unit(2, 0)));
        // Everything preserves span{e+g}.
        let sym = Subspace::from_rows(2, vec![a.basis(0).add(&a.basis(1))]);
        assert_eq!(relative_multipliers(&mbasis, &sym).dim(), 2);
    }

    #[test]
    fn local_units_oracle() {
        let a = no_unit_algebra();
        let (x, y) = (a.basis(0), a.basis(1));
        // x is a left local unit for {x, y} but no right one exists for y.
        assert!(local_units_for(&a, &[x.clone(), y.clone()], Side::Left).is_some());
        assert_eq!(local_units_for(&a, &[y.clone()], Side::Right), None);
        assert_eq!(local_units_for(&a, &[x, y], Side::Both), None);
    }

    #[test]
    fn tensor_multiplier_matches_element_tensor() {
        let a = diagonal_k2();
        let b = group_algebra_z2();
        let t = a.tensor(&b);
        let x = a.basis(0);
        let y = b.basis(1);
        let m = tensor_multiplier(&Multiplier::from_element(&a, &x), &Multiplier::from_element(&b, &y));
        assert_eq!(m.as_element(&t), Some(tensor_svec(&x, &y)));
    }

    fn small_elem(dim: usize) -> impl Strategy<Value = SVec<Rat>> {
        prop::collection::vec(-3i64..=3, dim).prop_map(move |cs| {
            SVec::from_terms(
                dim,
                cs.into_iter()
                    .enumerate()
                    .filter(|(_, c)| *c != 0)
                    .map(|(i, c)| (i, rat(c, 1)))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn embedding_linear_and_multiplicative(x in small_elem(2), y in small_elem(2)) {
            let a = group_algebra_z2();
            let mx = Multiplier::from_element(&a, &x);
            let my = Multiplier::from_element(&a, &y);
            prop_assert_eq!(mx.add(&my), Multiplier::from_element(&a, &x.add(&y)));
            prop_assert_eq!(mx.product(&my), Multiplier::from_element(&a, &a.mult(&x, &y)));
            prop_assert_eq!(mx.as_element(&a), Some(x));
        }

        #[test]
        fn multiplier_product_associative(x in small_elem(2), y in small_elem(2), z in small_elem(2)) {
            let a = diagonal_k2();
            let (mx, my, mz) = (
                Multiplier::from_element(&a, &x),
                Multiplier::from_element(&a, &y),
                Multiplier::from_element(&a, &z),
            );
            prop_assert_eq!(mx.product(&my).product(&mz), mx.product(&my.product(&mz)));
        }
    }
}
