//! Exact linear algebra over a [`Scalar`] field.
//!
//! Everything here is deterministic: row reduction always pivots on the
//! leftmost available column using the first row that reaches it, reduced
//! bases are kept in fully reduced row echelon form (so a subspace has one
//! canonical basis and subspace equality is plain equality of bases), and
//! kernel bases are emitted in free-column order. No tolerances anywhere;
//! a pivot is any exactly nonzero entry.

use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Sparse vector: terms sorted by coordinate, never storing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SVec<F> {
    pub dim: usize,
    terms: Vec<(usize, F)>,
}

impl<F: Scalar> SVec<F> {
    pub fn zero(dim: usize) -> Self {
        SVec { dim, terms: Vec::new() }
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        SVec { dim, terms: vec![(i, F::one())] }
    }

    pub fn single(dim: usize, i: usize, c: F) -> Self {
        assert!(i < dim);
        if c.is_zero() {
            return SVec::zero(dim);
        }
        SVec { dim, terms: vec![(i, c)] }
    }

    /// Builds from (coordinate, value) pairs in any order, merging duplicates.
    pub fn from_terms(dim: usize, mut terms: Vec<(usize, F)>) -> Self {
        terms.sort_by_key(|t| t.0);
        let mut out: Vec<(usize, F)> = Vec::with_capacity(terms.len());
        for (i, c) in terms {
            assert!(i < dim);
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc = acc.clone() + c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SVec { dim, terms: out }
    }

    pub fn from_dense(v: &[F]) -> Self {
        let terms = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        SVec { dim: v.len(), terms }
    }

    pub fn to_dense(&self) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, c) in &self.terms {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(usize, F)] {
        &self.terms
    }

    pub fn get(&self, i: usize) -> F {
        match self.terms.binary_search_by_key(&i, |t| t.0) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => F::zero(),
        }
    }

    /// Leading coordinate (smallest index with a nonzero entry).
    pub fn leading(&self) -> Option<usize> {
        self.terms.first().map(|t| t.0)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return SVec::zero(self.dim);
        }
        SVec {
            dim: self.dim,
            terms: self.terms.iter().map(|(i, a)| (*i, a.clone() * c.clone())).collect(),
        }
    }

    /// `self + c * other`, merging sorted term lists.
    pub fn add_scaled(&self, other: &Self, c: &F) -> Self {
        assert_eq!(self.dim, other.dim);
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out: Vec<(usize, F)> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (0usize, 0usize);
        while a < self.terms.len() || b < other.terms.len() {
            let pick_a = match (self.terms.get(a), other.terms.get(b)) {
                (Some(x), Some(y)) => {
                    if x.0 == y.0 {
                        let v = x.1.clone() + c.clone() * y.1.clone();
                        if !v.is_zero() {
                            out.push((x.0, v));
                        }
                        a += 1;
                        b += 1;
                        continue;
                    }
                    x.0 < y.0
                }
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            if pick_a {
                out.push(self.terms[a].clone());
                a += 1;
            } else {
                let (i, v) = &other.terms[b];
                out.push((*i, c.clone() * v.clone()));
                b += 1;
            }
        }
        SVec { dim: self.dim, terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &F::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &(-F::one()))
    }

    pub fn neg(&self) -> Self {
        self.scale(&(-F::one()))
    }

    /// Concatenates two sparse vectors into one over the sum of the ambients.
    pub fn concat(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|(i, c)| (i + self.dim, c.clone())));
        SVec { dim: self.dim + other.dim, terms }
    }

    /// Reindexes into a larger ambient space, offsetting every coordinate.
    pub fn shift_into(&self, dim: usize, offset: usize) -> Self {
        assert!(self.dim + offset <= dim);
        SVec {
            dim,
            terms: self.terms.iter().map(|(i, c)| (i + offset, c.clone())).collect(),
        }
    }

    /// Euclidean pairing `Σ_i self_i · other_i`.
    pub fn dot(&self, other: &Self) -> F {
        assert_eq!(self.dim, other.dim);
        let mut acc = F::zero();
        for (i, c) in &self.terms {
            let o = other.get(*i);
            if !o.is_zero() {
                acc = acc + c.clone() * o;
            }
        }
        acc
    }

    /// Restriction to coordinates `[lo, hi)`, reindexed to start at zero.
    pub fn slice(&self, lo: usize, hi: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(i, _)| *i >= lo && *i < hi)
            .map(|(i, c)| (i - lo, c.clone()))
            .collect();
        SVec { dim: hi - lo, terms }
    }
}

impl<F: Scalar> fmt::Display for SVec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*e{}", c, i)?;
        }
        Ok(())
    }
}

/// Sparse linear map stored by columns: column `k` is the image of the
/// `k`-th standard basis vector.
#[derive(Clone, Debug, PartialEq)]
pub struct LinMap<F> {
    pub dim_in: usize,
    pub dim_out: usize,
    cols: Vec<SVec<F>>,
}

impl<F: Scalar> LinMap<F> {
    pub fn zero(dim_in: usize, dim_out: usize) -> Self {
        LinMap { dim_in, dim_out, cols: vec![SVec::zero(dim_out); dim_in] }
    }

    pub fn identity(dim: usize) -> Self {
        LinMap {
            dim_in: dim,
            dim_out: dim,
            cols: (0..dim).map(|i| SVec::unit(dim, i)).collect(),
        }
    }

    pub fn from_cols(dim_out: usize, cols: Vec<SVec<F>>) -> Self {
        for c in &cols {
            assert_eq!(c.dim, dim_out);
        }
        LinMap { dim_in: cols.len(), dim_out, cols }
    }

    pub fn from_fn(dim_in: usize, dim_out: usize, f: impl Fn(usize) -> SVec<F>) -> Self {
        let cols: Vec<_> = (0..dim_in)
            .map(|k| {
                let c = f(k);
                assert_eq!(c.dim, dim_out);
                c
            })
            .collect();
        LinMap { dim_in, dim_out, cols }
    }

    pub fn col(&self, k: usize) -> &SVec<F> {
        &self.cols[k]
    }

    pub fn cols(&self) -> &[SVec<F>] {
        &self.cols
    }

    pub fn apply(&self, v: &SVec<F>) -> SVec<F> {
        assert_eq!(v.dim, self.dim_in);
        let mut out = SVec::zero(self.dim_out);
        for (i, c) in v.terms() {
            out = out.add_scaled(&self.cols[*i], c);
        }
        out
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(other.dim_out, self.dim_in);
        LinMap {
            dim_in: other.dim_in,
            dim_out: self.dim_out,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim_in, other.dim_in);
        assert_eq!(self.dim_out, other.dim_out);
        LinMap {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&(-F::one())))
    }

    pub fn scale(&self, c: &F) -> Self {
        LinMap {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            cols: self.cols.iter().map(|v| v.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn rank(&self) -> usize {
        let mut red = RowReducer::new(self.dim_out);
        for c in &self.cols {
            let _ = red.insert(c.clone());
        }
        red.rank()
    }

    /// Canonical basis of the kernel, via a preimage solver.
    pub fn kernel(&self) -> Vec<SVec<F>> {
        PreimageSolver::new(self).kernel
    }

    /// Column span as a canonical subspace.
    pub fn image(&self) -> Subspace<F> {
        Subspace::from_rows(self.dim_out, self.cols.iter().cloned())
    }

    /// Two-sided inverse, when the map is square and bijective.
    pub fn inverse(&self) -> Option<LinMap<F>> {
        if self.dim_in != self.dim_out {
            return None;
        }
        let solver = PreimageSolver::new(self);
        if !solver.kernel.is_empty() {
            return None;
        }
        let mut cols = Vec::with_capacity(self.dim_out);
        for i in 0..self.dim_out {
            cols.push(solver.solve(&SVec::unit(self.dim_out, i))?);
        }
        Some(LinMap::from_cols(self.dim_in, cols))
    }

    pub fn to_matrix(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.dim_out, self.dim_in);
        for (k, c) in self.cols.iter().enumerate() {
            for (i, v) in c.terms() {
                m.set(*i, k, v.clone());
            }
        }
        m
    }

    pub fn from_matrix(m: &Matrix<F>) -> Self {
        LinMap::from_fn(m.cols, m.rows, |k| {
            SVec::from_terms(
                m.rows,
                (0..m.rows)
                    .filter(|i| !m.get(*i, k).is_zero())
                    .map(|i| (i, m.get(i, k).clone()))
                    .collect(),
            )
        })
    }
}

/// Tensor of coordinate vectors under the convention `(i, j) ↦ i·dim_b + j`.
pub fn tensor_svec<F: Scalar>(a: &SVec<F>, b: &SVec<F>) -> SVec<F> {
    let mut terms = Vec::with_capacity(a.terms().len() * b.terms().len());
    for (i, x) in a.terms() {
        for (j, y) in b.terms() {
            terms.push((i * b.dim + j, x.clone() * y.clone()));
        }
    }
    // Index blocks from distinct i never interleave, so the result is sorted.
    SVec::from_terms(a.dim * b.dim, terms)
}

/// Kronecker product acting on tensors with the [`tensor_svec`] convention.
pub fn kron<F: Scalar>(a: &LinMap<F>, b: &LinMap<F>) -> LinMap<F> {
    let mut cols = Vec::with_capacity(a.dim_in * b.dim_in);
    for i in 0..a.dim_in {
        for j in 0..b.dim_in {
            cols.push(tensor_svec(a.col(i), b.col(j)));
        }
    }
    LinMap::from_cols(a.dim_out * b.dim_out, cols)
}

/// Incremental fully reduced row echelon form.
///
/// Rows are inserted one at a time; the reducer keeps a set of pivot rows,
/// each normalized to leading coefficient one and with every other pivot
/// column eliminated, so the stored rows are the canonical basis of the row
/// space. Columns at or beyond `pivot_limit` never become pivots; a row whose
/// reduction is supported entirely there is handed back instead of inserted.
#[derive(Clone, Debug)]
pub struct RowReducer<F> {
    pub ncols: usize,
    pivot_limit: usize,
    pivots: BTreeMap<usize, SVec<F>>,
}

impl<F: Scalar> RowReducer<F> {
    pub fn new(ncols: usize) -> Self {
        RowReducer { ncols, pivot_limit: ncols, pivots: BTreeMap::new() }
    }

    pub fn with_pivot_limit(ncols: usize, pivot_limit: usize) -> Self {
        RowReducer { ncols, pivot_limit, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_cols(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SVec<F>> {
        self.pivots.get(&col)
    }

    /// Eliminates all pivot columns from `row` without modifying the reducer.
    pub fn reduce(&self, mut row: SVec<F>) -> SVec<F> {
        assert_eq!(row.dim, self.ncols);
        // A pivot row has its leading entry at the pivot column and all its
        // other support on non-pivot columns, so one ascending sweep is
        // complete: eliminated columns never reappear.
        loop {
            let hit = row
                .terms()
                .iter()
                .find(|(i, _)| self.pivots.contains_key(i))
                .map(|(i, c)| (*i, c.clone()));
            match hit {
                Some((i, c)) => {
                    let p = &self.pivots[&i];
                    row = row.add_scaled(p, &(-c));
                }
                None => return row,
            }
        }
    }

    /// Inserts a row. Returns the new pivot column if the rank grew, or the
    /// residual row (possibly zero, or supported beyond the pivot limit).
    pub fn insert(&mut self, row: SVec<F>) -> Result<usize, SVec<F>> {
        let red = self.reduce(row);
        let lead = match red.leading() {
            Some(l) => l,
            None => return Err(red),
        };
        if lead >= self.pivot_limit {
            return Err(red);
        }
        let inv = F::one() / red.get(lead);
        let norm = red.scale(&inv);
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        for c in cols {
            let r = &self.pivots[&c];
            let coef = r.get(lead);
            if !coef.is_zero() {
                let updated = r.add_scaled(&norm, &(-coef));
                self.pivots.insert(c, updated);
            }
        }
        self.pivots.insert(lead, norm);
        Ok(lead)
    }

    /// Canonical basis rows in pivot-column order.
    pub fn basis(&self) -> Vec<SVec<F>> {
        self.pivots.values().cloned().collect()
    }
}

/// A subspace held by its canonical reduced-row-echelon basis, so that
/// derived equality is subspace equality.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F> {
    pub ambient: usize,
    rows: Vec<SVec<F>>,
}

impl<F: Scalar> Subspace<F> {
    pub fn from_rows(ambient: usize, rows: impl IntoIterator<Item = SVec<F>>) -> Self {
        let mut red = RowReducer::new(ambient);
        for r in rows {
            let _ = red.insert(r);
        }
        Subspace { ambient, rows: red.basis() }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_rows(ambient, (0..ambient).map(|i| SVec::unit(ambient, i)))
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SVec<F>] {
        &self.rows
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn reducer(&self) -> RowReducer<F> {
        let mut red = RowReducer::new(self.ambient);
        for r in &self.rows {
            let _ = red.insert(r.clone());
        }
        red
    }

    pub fn contains_vec(&self, v: &SVec<F>) -> bool {
        self.reducer().reduce(v.clone()).is_zero()
    }

    pub fn contains(&self, other: &Subspace<F>) -> bool {
        let red = self.reducer();
        other.rows.iter().all(|r| red.reduce(r.clone()).is_zero())
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        assert_eq!(self.ambient, other.ambient);
        Subspace::from_rows(self.ambient, self.rows.iter().chain(&other.rows).cloned())
    }

    /// Intersection, computed from the kernel of `(a, b) -> a·U - b·V`.
    pub fn intersect(&self, other: &Subspace<F>) -> Subspace<F> {
        assert_eq!(self.ambient, other.ambient);
        let cols: Vec<SVec<F>> = self
            .rows
            .iter()
            .cloned()
            .chain(other.rows.iter().map(|r| r.neg()))
            .collect();
        let map = LinMap::from_cols(self.ambient, cols);
        let nu = self.rows.len();
        let mut vecs = Vec::new();
        for k in map.kernel() {
            let mut w = SVec::zero(self.ambient);
            for (i, c) in k.terms() {
                if *i < nu {
                    w = w.add_scaled(&self.rows[*i], c);
                }
            }
            vecs.push(w);
        }
        Subspace::from_rows(self.ambient, vecs)
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the space.
    pub fn coords(&self, v: &SVec<F>) -> Option<Vec<F>> {
        let c: Vec<F> = self.rows.iter().map(|r| v.get(r.leading().unwrap())).collect();
        let mut acc = SVec::zero(self.ambient);
        for (r, ci) in self.rows.iter().zip(&c) {
            acc = acc.add_scaled(r, ci);
        }
        if &acc == v {
            Some(c)
        } else {
            None
        }
    }

    /// Linear functionals (as rows over the ambient space) whose common
    /// kernel is exactly this subspace: one per non-pivot column.
    pub fn membership_rows(&self) -> Vec<SVec<F>> {
        let pivots: Vec<usize> = self.rows.iter().map(|r| r.leading().unwrap()).collect();
        let is_pivot = {
            let mut v = vec![false; self.ambient];
            for p in &pivots {
                v[*p] = true;
            }
            v
        };
        let mut out = Vec::new();
        for k in 0..self.ambient {
            if is_pivot[k] {
                continue;
            }
            let mut terms = vec![(k, F::one())];
            for (r, p) in self.rows.iter().zip(&pivots) {
                let c = r.get(k);
                if !c.is_zero() {
                    terms.push((*p, -c));
                }
            }
            out.push(SVec::from_terms(self.ambient, terms));
        }
        out
    }
}

/// Outcome of an affine solve.
#[derive(Clone, Debug, PartialEq)]
pub enum AffineSolution<F> {
    /// The system is unsolvable; `row` indexes the first offending input row
    /// (the one that reduced to `0 = c` with `c` nonzero).
    Inconsistent { row: usize },
    Solvable {
        /// Particular solution with every free variable set to zero.
        particular: Vec<F>,
        /// Canonical kernel basis, one vector per free column in column order.
        kernel: Vec<Vec<F>>,
    },
}

impl<F: Scalar> AffineSolution<F> {
    pub fn unique(&self) -> Option<&Vec<F>> {
        match self {
            AffineSolution::Solvable { particular, kernel } if kernel.is_empty() => Some(particular),
            _ => None,
        }
    }

    /// Any solution, as a sparse vector; `None` when inconsistent.
    pub fn particular(&self) -> Option<SVec<F>> {
        match self {
            AffineSolution::Solvable { particular, .. } => {
                Some(SVec::from_dense(particular))
            }
            AffineSolution::Inconsistent { .. } => None,
        }
    }
}

/// Incrementally assembled linear system `coeffs · x = rhs`.
pub struct LinSystem<F> {
    pub unknowns: usize,
    red: RowReducer<F>,
    inconsistent_at: Option<usize>,
    rows_seen: usize,
}

impl<F: Scalar> LinSystem<F> {
    pub fn new(unknowns: usize) -> Self {
        LinSystem {
            unknowns,
            red: RowReducer::with_pivot_limit(unknowns + 1, unknowns),
            inconsistent_at: None,
            rows_seen: 0,
        }
    }

    /// Adds the equation `coeffs · x = rhs`.
    pub fn add_row(&mut self, coeffs: SVec<F>, rhs: F) {
        assert_eq!(coeffs.dim, self.unknowns);
        let row = coeffs.concat(&SVec::single(1, 0, rhs));
        match self.red.insert(row) {
            Ok(_) => {}
            Err(residual) => {
                if !residual.is_zero() && self.inconsistent_at.is_none() {
                    self.inconsistent_at = Some(self.rows_seen);
                }
            }
        }
        self.rows_seen += 1;
    }

    /// Adds the vector equation `Σ_i x_i · cols[i] = rhs`, one scalar row per
    /// coordinate of the output space.
    pub fn add_vec_eq(&mut self, cols: &[SVec<F>], rhs: &SVec<F>) {
        assert_eq!(cols.len(), self.unknowns);
        let out_dim = rhs.dim;
        let mut by_coord: BTreeMap<usize, Vec<(usize, F)>> = BTreeMap::new();
        for (k, c) in cols.iter().enumerate() {
            assert_eq!(c.dim, out_dim);
            for (i, v) in c.terms() {
                by_coord.entry(*i).or_default().push((k, v.clone()));
            }
        }
        for (i, _) in rhs.terms() {
            by_coord.entry(*i).or_default();
        }
        for (i, terms) in by_coord {
            self.add_row(SVec::from_terms(self.unknowns, terms), rhs.get(i));
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.inconsistent_at.is_none()
    }

    pub fn rank(&self) -> usize {
        self.red.rank()
    }

    pub fn solve(&self) -> AffineSolution<F> {
        if let Some(row) = self.inconsistent_at {
            return AffineSolution::Inconsistent { row };
        }
        let n = self.unknowns;
        let mut particular = vec![F::zero(); n];
        let pivots: Vec<usize> = self.red.pivot_cols().collect();
        for p in &pivots {
            particular[*p] = self.red.pivot_row(*p).unwrap().get(n);
        }
        let is_pivot = {
            let mut v = vec![false; n];
            for p in &pivots {
                v[*p] = true;
            }
            v
        };
        let mut kernel = Vec::new();
        for f in 0..n {
            if is_pivot[f] {
                continue;
            }
            let mut k = vec![F::zero(); n];
            k[f] = F::one();
            for p in &pivots {
                let c = self.red.pivot_row(*p).unwrap().get(f);
                if !c.is_zero() {
                    k[*p] = -c;
                }
            }
            kernel.push(k);
        }
        AffineSolution::Solvable { particular, kernel }
    }
}

/// Solves `A x = b` for a dense matrix, returning a particular solution with
/// a canonical kernel basis, or the index of the first inconsistent row.
pub fn solve_affine<F: Scalar>(a: &Matrix<F>, b: &[F]) -> AffineSolution<F> {
    assert_eq!(a.rows, b.len());
    let mut sys = LinSystem::new(a.cols);
    for i in 0..a.rows {
        sys.add_row(a.row_svec(i), b[i].clone());
    }
    sys.solve()
}

/// Factorized solver for repeated preimage problems `T x = y` under a fixed
/// map `T`, which also yields the canonical kernel basis of `T`.
pub struct PreimageSolver<F> {
    out_dim: usize,
    in_dim: usize,
    red: RowReducer<F>,
    /// Canonical kernel basis of the map.
    pub kernel: Vec<SVec<F>>,
}

impl<F: Scalar> PreimageSolver<F> {
    pub fn new(map: &LinMap<F>) -> Self {
        let (o, i) = (map.dim_out, map.dim_in);
        let mut red = RowReducer::with_pivot_limit(o + i, o);
        let mut kernel = Vec::new();
        for k in 0..i {
            let row = map.col(k).concat(&SVec::unit(i, k));
            if let Err(residual) = red.insert(row) {
                // Residual supported beyond the output block encodes a kernel
                // combination of the inserted columns.
                if !residual.is_zero() {
                    kernel.push(residual.slice(o, o + i));
                }
            }
        }
        PreimageSolver { out_dim: o, in_dim: i, red, kernel }
    }

    /// Some x with `T x = y`, when `y` is in the range (free part zero).
    pub fn solve(&self, y: &SVec<F>) -> Option<SVec<F>> {
        assert_eq!(y.dim, self.out_dim);
        let row = y.concat(&SVec::zero(self.in_dim));
        let res = self.red.reduce(row);
        if res.slice(0, self.out_dim).is_zero() {
            Some(res.slice(self.out_dim, self.out_dim + self.in_dim).neg())
        } else {
            None
        }
    }

    pub fn in_range(&self, y: &SVec<F>) -> bool {
        self.solve(y).is_some()
    }

    pub fn rank(&self) -> usize {
        self.red.rank()
    }
}

/// Dense matrix, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row_svec(&self, i: usize) -> SVec<F> {
        SVec::from_dense(&self.data[i * self.cols..(i + 1) * self.cols])
    }

    pub fn transpose(&self) -> Matrix<F> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows);
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = F::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc = acc + a.clone() * other.get(k, j).clone();
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc = acc + a.clone() * v[k].clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut red = RowReducer::new(self.cols);
        for i in 0..self.rows {
            let _ = red.insert(self.row_svec(i));
        }
        red.rank()
    }

    /// Canonical reduced row echelon form.
    pub fn rref(&self) -> Matrix<F> {
        let mut red = RowReducer::new(self.cols);
        for i in 0..self.rows {
            let _ = red.insert(self.row_svec(i));
        }
        let basis = red.basis();
        let mut out = Matrix::zeros(basis.len(), self.cols);
        for (i, r) in basis.iter().enumerate() {
            for (j, c) in r.terms() {
                out.set(i, *j, c.clone());
            }
        }
        out
    }

    pub fn row_space(&self) -> Subspace<F> {
        Subspace::from_rows(self.cols, (0..self.rows).map(|i| self.row_svec(i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Rat};
    use num::Zero;

    fn sv(v: &[i64]) -> SVec<Rat> {
        SVec::from_dense(&v.iter().map(|x| rat(*x, 1)).collect::<Vec<_>>())
    }

    #[test]
    fn svec_merge_arithmetic() {
        let a = sv(&[1, 0, 2, 0]);
        let b = sv(&[0, 3, -2, 1]);
        assert_eq!(a.add(&b), sv(&[1, 3, 0, 1]));
        assert_eq!(a.sub(&a), SVec::zero(4));
        assert_eq!(a.add_scaled(&b, &rat(2, 1)), sv(&[1, 6, -2, 2]));
        assert_eq!(a.get(2), rat(2, 1));
        assert_eq!(a.get(1), rat(0, 1));
        assert_eq!(a.leading(), Some(0));
    }

    #[test]
    fn svec_concat_slice_roundtrip() {
        let a = sv(&[1, 0, 2]);
        let b = sv(&[0, 5]);
        let c = a.concat(&b);
        assert_eq!(c.dim, 5);
        assert_eq!(c.slice(0, 3), a);
        assert_eq!(c.slice(3, 5), b);
    }

    // Oracle: by-hand elimination of [[1,2,1],[2,4,0],[0,0,1]] gives
    // pivots in columns 0 and 2 with canonical rows (1,2,0) and (0,0,1).
    #[test]
    fn rref_canonical_form() {
        let m = Matrix::from_rows(vec![
            vec![rat(1, 1), rat(2, 1), rat(1, 1)],
            vec![rat(2, 1), rat(4, 1), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rat(1, 1)],
        ]);
        let r = m.rref();
        assert_eq!(r.rows, 2);
        assert_eq!(r.row_svec(0), sv(&[1, 2, 0]));
        assert_eq!(r.row_svec(1), sv(&[0, 0, 1]));
        assert_eq!(m.rank(), 2);
    }

    // Oracle: x + y = 1 has particular solution (1,0) and kernel spanned by
    // (-1,1); as subspaces this is the line through (1,-1).
    #[test]
    fn solve_affine_underdetermined() {
        let a = Matrix::from_rows(vec![vec![rat(1, 1), rat(1, 1)]]);
        let sol = solve_affine(&a, &[rat(1, 1)]);
        match sol {
            AffineSolution::Solvable { particular, kernel } => {
                assert_eq!(particular, vec![rat(1, 1), rat(0, 1)]);
                assert_eq!(kernel, vec![vec![rat(-1, 1), rat(1, 1)]]);
                let k = Subspace::from_rows(2, kernel.iter().map(|v| SVec::from_dense(v)));
                assert!(k.contains_vec(&sv(&[1, -1])));
            }
            _ => panic!("expected solvable"),
        }
    }

    #[test]
    fn solve_affine_inconsistent_certificate() {
        let a = Matrix::from_rows(vec![
            vec![rat(1, 1), rat(1, 1)],
            vec![rat(2, 1), rat(2, 1)],
        ]);
        let sol = solve_affine(&a, &[rat(1, 1), rat(3, 1)]);
        assert_eq!(sol, AffineSolution::Inconsistent { row: 1 });
    }

    #[test]
    fn solve_affine_unique() {
        let a = Matrix::from_rows(vec![
            vec![rat(2, 1), rat(0, 1)],
            vec![rat(1, 1), rat(1, 1)],
        ]);
        let sol = solve_affine(&a, &[rat(1, 1), rat(1, 1)]);
        assert_eq!(
            sol.unique(),
            Some(&vec![rat(1, 2), rat(1, 2)])
        );
    }

    // Oracle: U = span{(1,0,1),(0,1,0)}, V = span{(1,1,1)}; the intersection
    // is the line through (1,1,1) and the sum is U.
    #[test]
    fn subspace_sum_intersect_membership() {
        let u = Subspace::from_rows(3, vec![sv(&[1, 0, 1]), sv(&[0, 1, 0])]);
        let v = Subspace::from_rows(3, vec![sv(&[1, 1, 1])]);
        assert_eq!(u.dim(), 2);
        let cap = u.intersect(&v);
        assert_eq!(cap.dim(), 1);
        assert!(cap.contains_vec(&sv(&[1, 1, 1])));
        assert_eq!(u.sum(&v), u);
        assert!(u.contains_vec(&sv(&[2, 3, 2])));
        assert!(!u.contains_vec(&sv(&[1, 0, 0])));
        assert!(u.contains(&cap));
    }

    #[test]
    fn subspace_coords_and_membership_rows() {
        let u = Subspace::from_rows(3, vec![sv(&[1, 0, 1]), sv(&[0, 1, 0])]);
        assert_eq!(u.coords(&sv(&[2, 3, 2])), Some(vec![rat(2, 1), rat(3, 1)]));
        assert_eq!(u.coords(&sv(&[1, 0, 0])), None);
        let rows = u.membership_rows();
        assert_eq!(rows.len(), 1);
        for r in &rows {
            for b in u.basis() {
                let dot: Rat = r
                    .terms()
                    .iter()
                    .map(|(i, c)| c.clone() * b.get(*i))
                    .sum();
                assert!(dot.is_zero());
            }
        }
    }

    // Oracle: T = [[1,2],[2,4]] has rank 1, kernel spanned by (-2,1), and
    // (1,2) pulls back to (1,0).
    #[test]
    fn preimage_solver_kernel_and_solve() {
        let t = LinMap::from_matrix(&Matrix::from_rows(vec![
            vec![rat(1, 1), rat(2, 1)],
            vec![rat(2, 1), rat(4, 1)],
        ]));
        let solver = PreimageSolver::new(&t);
        assert_eq!(solver.kernel.len(), 1);
        assert_eq!(solver.kernel[0], sv(&[-2, 1]));
        assert_eq!(solver.solve(&sv(&[1, 2])), Some(sv(&[1, 0])));
        assert_eq!(solver.solve(&sv(&[1, 0])), None);
        assert_eq!(t.rank(), 1);
    }

    #[test]
    fn linmap_compose_inverse() {
        let m = LinMap::from_matrix(&Matrix::from_rows(vec![
            vec![rat(0, 1), rat(1, 1)],
            vec![rat(1, 1), rat(1, 1)],
        ]));
        let inv = m.inverse().expect("invertible");
        assert_eq!(m.compose(&inv), LinMap::identity(2));
        assert_eq!(inv.compose(&m), LinMap::identity(2));
        let sing = LinMap::from_matrix(&Matrix::from_rows(vec![
            vec![rat(1, 1), rat(2, 1)],
            vec![rat(2, 1), rat(4, 1)],
        ]));
        assert!(sing.inverse().is_none());
    }
}
