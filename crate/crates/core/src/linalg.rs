//! Small dense matrices and elimination kernels shared by both backends.

use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::scalar::{rationalize, Scalar, Q};

pub type Vector<S> = Vec<S>;

#[derive(Clone, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: fmt::Debug> fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, got: row.len() });
            }
            data.extend(row.iter().cloned());
        }
        Ok(Mat { rows: r, cols: c, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v: Vec<Vec<S>> = rows.iter().map(|r| r.iter().map(|&x| S::from_i64(x)).collect()).collect();
        Self::from_rows(&v).expect("ragged integer matrix")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<S>]) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn diag(d: &[S]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero_exact() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero_exact() {
                        continue;
                    }
                    let t = a.clone() * b;
                    let e = &mut m.data[i * other.cols + j];
                    *e = e.clone() + t;
                }
            }
        }
        m
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if a.is_zero_exact() || b.is_zero_exact() {
                        continue;
                    }
                    acc = acc + a.clone() * b;
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() - b)
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|a| a.clone() * s)
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn map_into<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn is_zero_eps(&self, eps: f64) -> bool {
        self.data.iter().all(|x| x.is_zero_eps(eps))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.sub(other).is_zero_eps(eps)
    }

    pub fn to_f64(&self) -> Mat<f64> {
        self.map_into(|x| x.to_f64())
    }

    pub fn to_nalgebra(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_f64())
    }

    pub fn from_nalgebra(m: &DMatrix<f64>) -> Mat<f64> {
        let mut out = Mat::zeros(m.nrows(), m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                out[(i, j)] = m[(i, j)];
            }
        }
        out
    }

    pub fn det(&self) -> S {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.rows_vec();
        let mut det = S::one();
        for k in 0..n {
            let piv = if S::EXACT {
                (k..n).find(|&i| !a[i][k].is_zero_exact())
            } else {
                (k..n).max_by(|&i, &j| a[i][k].to_f64().abs().total_cmp(&a[j][k].to_f64().abs()))
            };
            let Some(p) = piv else { return S::zero() };
            if a[p][k].is_zero_exact() {
                return S::zero();
            }
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            let pv = a[k][k].clone();
            det = det * &pv;
            for i in k + 1..n {
                if a[i][k].is_zero_exact() {
                    continue;
                }
                let f = a[i][k].clone() / &pv;
                for j in k..n {
                    let t = f.clone() * &a[k][j];
                    a[i][j] = a[i][j].clone() - t;
                }
            }
        }
        det
    }

    pub fn inverse(&self, eps: f64) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug: Vec<Vec<S>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
                r
            })
            .collect();
        let (_, piv) = rref_in_place(&mut aug, n, eps);
        if piv.len() < n {
            return None;
        }
        let rows: Vec<Vec<S>> = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        Mat::from_rows(&rows).ok()
    }

    /// Characteristic polynomial det(xI - M) as coefficients c_0..c_n (c_n = 1),
    /// computed with the Faddeev-LeVerrier recursion.
    pub fn char_poly(&self) -> Vec<S> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![S::zero(); n + 1];
        coeffs[n] = S::one();
        let mut mk = Mat::<S>::zeros(n, n);
        let id = Mat::<S>::identity(n);
        for k in 1..=n {
            mk = self.mul(&mk).add(&id.scale(&coeffs[n - k + 1]));
            let amk = self.mul(&mk);
            coeffs[n - k] = -(amk.trace() / S::from_i64(k as i64));
        }
        coeffs
    }
}

impl<S> std::ops::Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

pub fn vadd<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y).collect()
}

pub fn vsub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y).collect()
}

pub fn vscale<S: Scalar>(a: &[S], s: &S) -> Vec<S> {
    a.iter().map(|x| x.clone() * s).collect()
}

/// `a + s*b`
pub fn vaxpy<S: Scalar>(a: &[S], s: &S, b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + s.clone() * y).collect()
}

pub fn vzero<S: Scalar>(n: usize) -> Vec<S> {
    vec![S::zero(); n]
}

pub fn unit<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vzero(n);
    v[i] = S::one();
    v
}

pub fn vint<S: Scalar>(v: &[i64]) -> Vec<S> {
    v.iter().map(|&x| S::from_i64(x)).collect()
}

pub fn vq<S: Scalar>(v: &[Q]) -> Vec<S> {
    v.iter().map(S::from_q).collect()
}

pub fn is_zero_vec<S: Scalar>(v: &[S], eps: f64) -> bool {
    v.iter().all(|x| x.is_zero_eps(eps))
}

pub fn max_abs<S: Scalar>(v: &[S]) -> f64 {
    v.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
}

/// Scales a float vector to unit max-norm; exact vectors are scaled so the first
/// nonzero entry is 1. Returns `None` for a zero vector.
pub fn normalize<S: Scalar>(v: &[S], eps: f64) -> Option<Vec<S>> {
    if S::EXACT {
        let lead = v.iter().find(|x| !x.is_zero_exact())?.clone();
        Some(v.iter().map(|x| x.clone() / &lead).collect())
    } else {
        let m = max_abs(v);
        if m <= eps {
            return None;
        }
        let mut w: Vec<S> = v.iter().map(|x| x.clone() / S::from_f64(m)).collect();
        let lead = w.iter().find(|x| x.to_f64().abs() > 1e-9).cloned()?;
        if lead.to_f64() < 0.0 {
            w = w.into_iter().map(|x| -x).collect();
        }
        Some(w)
    }
}

/// Reduced row echelon form in place over the first `ncols` columns. Returns the
/// rank and pivot columns. Float elimination uses partial pivoting with a
/// tolerance relative to the largest entry.
pub fn rref_in_place<S: Scalar>(a: &mut [Vec<S>], ncols: usize, eps: f64) -> (usize, Vec<usize>) {
    let nrows = a.len();
    let scale = if S::EXACT {
        1.0
    } else {
        a.iter().flat_map(|r| r[..ncols].iter()).map(|x| x.to_f64().abs()).fold(0.0, f64::max).max(1.0)
    };
    let tol = eps * scale;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let piv = if S::EXACT {
            (r..nrows).find(|&i| !a[i][c].is_zero_exact())
        } else {
            let best = (r..nrows).max_by(|&i, &j| a[i][c].to_f64().abs().total_cmp(&a[j][c].to_f64().abs()));
            best.filter(|&i| a[i][c].to_f64().abs() > tol)
        };
        let Some(p) = piv else { continue };
        a.swap(p, r);
        let pv = a[r][c].clone();
        let width = a[r].len();
        for j in 0..width {
            a[r][j] = a[r][j].clone() / &pv;
        }
        for i in 0..nrows {
            if i == r || a[i][c].is_zero_exact() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..width {
                if a[r][j].is_zero_exact() {
                    continue;
                }
                let t = f.clone() * &a[r][j];
                a[i][j] = a[i][j].clone() - t;
            }
            if !S::EXACT {
                a[i][c] = S::zero();
            }
        }
        pivots.push(c);
        r += 1;
    }
    if !S::EXACT {
        for row in a.iter_mut().skip(r) {
            for x in row.iter_mut().take(ncols) {
                if x.to_f64().abs() <= tol {
                    *x = S::zero();
                }
            }
        }
    }
    (r, pivots)
}

pub fn rank<S: Scalar>(vectors: &[Vec<S>], eps: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let n = vectors[0].len();
    let mut a = vectors.to_vec();
    rref_in_place(&mut a, n, eps).0
}

/// A basis (in reduced echelon form) of the span of `vectors`.
pub fn span_basis<S: Scalar>(vectors: &[Vec<S>], eps: f64) -> Vec<Vec<S>> {
    if vectors.is_empty() {
        return vec![];
    }
    let n = vectors[0].len();
    let mut a = vectors.to_vec();
    let (r, _) = rref_in_place(&mut a, n, eps);
    a.truncate(r);
    a
}

/// Largest subset of `vectors`, in order, that is linearly independent.
pub fn independent_subset<S: Scalar>(vectors: &[Vec<S>], eps: f64) -> Vec<Vec<S>> {
    let mut out: Vec<Vec<S>> = Vec::new();
    for v in vectors {
        let mut trial = out.clone();
        trial.push(v.clone());
        if rank(&trial, eps) == trial.len() {
            out = trial;
        }
    }
    out
}

/// Basis of {x : M x = 0} for M given by rows.
pub fn nullspace_rows<S: Scalar>(rows: &[Vec<S>], ncols: usize, eps: f64) -> Vec<Vec<S>> {
    let mut a = rows.to_vec();
    let (_, piv) = rref_in_place(&mut a, ncols, eps);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !piv.contains(c)) {
        let mut v = vzero::<S>(ncols);
        v[free] = S::one();
        for (i, &pc) in piv.iter().enumerate() {
            v[pc] = -a[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn nullspace<S: Scalar>(m: &Mat<S>, eps: f64) -> Vec<Vec<S>> {
    nullspace_rows(&m.rows_vec(), m.ncols(), eps)
}

/// Coefficients c with sum c_i basis_i = v, if v lies in the span.
pub fn solve_in_span<S: Scalar>(basis: &[Vec<S>], v: &[S], eps: f64) -> Option<Vec<S>> {
    let k = basis.len();
    let n = v.len();
    if k == 0 {
        return is_zero_vec(v, eps).then(Vec::new);
    }
    let mut aug: Vec<Vec<S>> = (0..n)
        .map(|i| {
            let mut r: Vec<S> = basis.iter().map(|b| b[i].clone()).collect();
            r.push(v[i].clone());
            r
        })
        .collect();
    let scale = if S::EXACT { 1.0 } else { max_abs(v).max(1.0) };
    let (rk, piv) = rref_in_place(&mut aug, k, eps);
    for row in aug.iter().skip(rk) {
        if !row[k].is_zero_eps(eps * scale * 10.0) {
            return None;
        }
    }
    let mut x = vzero::<S>(k);
    for (i, &pc) in piv.iter().enumerate() {
        x[pc] = aug[i][k].clone();
    }
    Some(x)
}

pub fn in_span<S: Scalar>(basis: &[Vec<S>], v: &[S], eps: f64) -> bool {
    if S::EXACT {
        let mut all = basis.to_vec();
        all.push(v.to_vec());
        rank(&all, eps) == rank(basis, eps)
    } else {
        solve_in_span(basis, v, eps).is_some()
    }
}

/// Intersection of two subspaces given by bases.
pub fn intersect<S: Scalar>(u: &[Vec<S>], w: &[Vec<S>], eps: f64) -> Vec<Vec<S>> {
    if u.is_empty() || w.is_empty() {
        return vec![];
    }
    let n = u[0].len();
    let cols: Vec<Vec<S>> = u.iter().cloned().chain(w.iter().map(|x| x.iter().map(|y| -y.clone()).collect())).collect();
    let rows: Vec<Vec<S>> = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let ker = nullspace_rows(&rows, cols.len(), eps);
    let vecs: Vec<Vec<S>> = ker
        .iter()
        .map(|c| {
            let mut acc = vzero::<S>(n);
            for (ci, ui) in c.iter().zip(u) {
                acc = vaxpy(&acc, ci, ui);
            }
            acc
        })
        .collect();
    span_basis(&vecs, eps)
}

/// Inertia (negative, positive, zero) of a symmetric matrix. Exact matrices are
/// diagonalized by congruence; float matrices by a symmetric eigensolver, with
/// eigenvalues below `eps` (relative to the largest entry) counted as zero.
pub fn inertia<S: Scalar>(g: &Mat<S>, eps: f64) -> (usize, usize, usize) {
    let n = g.nrows();
    if n == 0 {
        return (0, 0, 0);
    }
    if !S::EXACT {
        let m = g.to_nalgebra();
        let sym = (&m + m.transpose()) * 0.5;
        let eig = nalgebra::SymmetricEigen::new(sym);
        let tol = eps * g.max_abs().max(1.0);
        let (mut neg, mut pos, mut zero) = (0, 0, 0);
        for &l in eig.eigenvalues.iter() {
            if l.abs() <= tol {
                zero += 1;
            } else if l < 0.0 {
                neg += 1;
            } else {
                pos += 1;
            }
        }
        return (neg, pos, zero);
    }
    let mut a = g.rows_vec();
    let (mut neg, mut pos) = (0, 0);
    let mut k = 0;
    while k < n {
        if let Some(i) = (k..n).find(|&i| !a[i][i].is_zero_exact()) {
            swap_sym(&mut a, i, k);
        } else if let Some((i, j)) = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero_exact()) {
            // a[i][i] = a[j][j] = 0, a[i][j] != 0: row/col i += row/col j gives 2a[i][j] on the diagonal
            for c in 0..n {
                let t = a[j][c].clone();
                a[i][c] = a[i][c].clone() + t;
            }
            for r in 0..n {
                let t = a[r][j].clone();
                a[r][i] = a[r][i].clone() + t;
            }
            swap_sym(&mut a, i, k);
        } else {
            break;
        }
        let pv = a[k][k].clone();
        if pv.sign_eps(0.0) < 0 {
            neg += 1;
        } else {
            pos += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero_exact() {
                continue;
            }
            let f = a[i][k].clone() / &pv;
            for j in k..n {
                let t = f.clone() * &a[k][j];
                a[i][j] = a[i][j].clone() - t;
            }
            for r in k..n {
                let t = f.clone() * &a[r][k];
                a[r][i] = a[r][i].clone() - t;
            }
        }
        k += 1;
    }
    (neg, pos, n - neg - pos)
}

fn swap_sym<S: Scalar>(a: &mut [Vec<S>], i: usize, k: usize) {
    if i == k {
        return;
    }
    a.swap(i, k);
    for row in a.iter_mut() {
        row.swap(i, k);
    }
}

/// Real roots of sum c_i x^i. Exact polynomials return their rational roots only;
/// float polynomials return the real parts of numerically real eigenvalues of the
/// companion matrix, with clustered roots averaged.
pub fn real_roots<S: Scalar>(coeffs: &[S], eps: f64) -> Vec<S> {
    let mut c: Vec<S> = coeffs.to_vec();
    while c.len() > 1 && c.last().is_some_and(|x| x.is_zero_exact()) {
        c.pop();
    }
    if S::EXACT {
        // repeated roots make the companion eigenvalues ill-conditioned
        c = squarefree(&c);
    }
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return vec![];
    }
    let mut roots: Vec<S> = Vec::new();
    // strip zero roots
    let mut shift = 0;
    while shift < deg && c[shift].is_zero_eps(if S::EXACT { 0.0 } else { eps }) {
        shift += 1;
    }
    if shift > 0 {
        roots.push(S::zero());
        c.drain(..shift);
    }
    let deg = c.len() - 1;
    if deg == 0 {
        return roots;
    }
    let lead = c[deg].to_f64();
    let mut comp = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -c[i].to_f64() / lead;
    }
    // complex_eigenvalues() iterates without a cap and can stall on companion matrices
    let eig = match nalgebra::linalg::Schur::try_new(comp.clone(), f64::EPSILON, 5000) {
        Some(s) => s.complex_eigenvalues(),
        None => nalgebra::linalg::Schur::try_new(comp.transpose(), 1e-13, 50_000).map(|s| s.complex_eigenvalues()).unwrap_or_else(|| DVector::from_element(0, nalgebra::Complex::new(0.0, 0.0))),
    };
    let mut approx: Vec<f64> = eig
        .iter()
        .filter(|z| z.im.abs() <= 1e-4 * (1.0 + z.re.abs()) || (!S::EXACT && z.im.abs() <= eps.sqrt() * (1.0 + z.re.abs())))
        .map(|z| z.re)
        .collect();
    approx.sort_by(f64::total_cmp);
    if S::EXACT {
        let mut cands: Vec<Q> = Vec::new();
        for a in &approx {
            for den in [1000, 100, 12] {
                if let Some(r) = rationalize(*a, den) {
                    cands.push(r);
                }
            }
        }
        for r in cands {
            let rs = S::from_q(&r);
            if roots.contains(&rs) {
                continue;
            }
            if poly_eval(&c, &rs).is_zero_exact() {
                roots.push(rs);
            }
        }
    } else {
        let mut clusters: Vec<Vec<f64>> = Vec::new();
        for a in approx {
            match clusters.last_mut() {
                Some(cl) if (a - cl[cl.len() - 1]).abs() <= 1e-3 * (1.0 + a.abs()) => cl.push(a),
                _ => clusters.push(vec![a]),
            }
        }
        for cl in clusters {
            let m = cl.iter().sum::<f64>() / cl.len() as f64;
            let rs = S::from_f64(m);
            if !roots.iter().any(|r| (r.to_f64() - m).abs() <= 1e-9) {
                roots.push(rs);
            }
        }
    }
    roots.sort_by(|a, b| a.to_f64().total_cmp(&b.to_f64()));
    roots
}

fn poly_trim<S: Scalar>(mut c: Vec<S>) -> Vec<S> {
    while c.len() > 1 && c.last().is_some_and(|x| x.is_zero_exact()) {
        c.pop();
    }
    c
}

/// Remainder of exact polynomial division.
fn poly_rem<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let mut r = poly_trim(a.to_vec());
    let b = poly_trim(b.to_vec());
    let db = b.len() - 1;
    if db == 0 {
        return vec![S::zero()];
    }
    while r.len() > db && !(r.len() == 1 && r[0].is_zero_exact()) {
        let f = r[r.len() - 1].clone() / &b[db];
        let shift = r.len() - 1 - db;
        for (i, bi) in b.iter().enumerate() {
            let t = f.clone() * bi;
            r[i + shift] = r[i + shift].clone() - t;
        }
        r.pop();
        r = poly_trim(r);
    }
    r
}

fn poly_quo<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let mut r = poly_trim(a.to_vec());
    let b = poly_trim(b.to_vec());
    let db = b.len() - 1;
    if r.len() <= db {
        return vec![S::zero()];
    }
    let mut q = vec![S::zero(); r.len() - db];
    while r.len() > db {
        let f = r[r.len() - 1].clone() / &b[db];
        let shift = r.len() - 1 - db;
        for (i, bi) in b.iter().enumerate() {
            let t = f.clone() * bi;
            r[i + shift] = r[i + shift].clone() - t;
        }
        q[shift] = f;
        r.pop();
    }
    q
}

/// p / gcd(p, p'), which has the same roots as p, each simple.
fn squarefree<S: Scalar>(p: &[S]) -> Vec<S> {
    let p = poly_trim(p.to_vec());
    if p.len() <= 2 {
        return p;
    }
    let dp: Vec<S> = (1..p.len()).map(|i| p[i].clone() * S::from_i64(i as i64)).collect();
    let (mut a, mut b) = (p.clone(), dp);
    while !(b.len() == 1 && b[0].is_zero_exact()) {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    if a.len() == 1 {
        return p;
    }
    poly_quo(&p, &a)
}

pub fn poly_eval<S: Scalar>(c: &[S], x: &S) -> S {
    c.iter().rev().fold(S::zero(), |acc, ci| acc * x + ci)
}
