//! Indefinite scalar-product spaces R^{m,n} and their subspaces.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::scalar::Scalar;

pub const DEFAULT_EPS: f64 = 1e-10;

/// R^{m+n} with q(v) = -v_1^2 - ... - v_m^2 + v_{m+1}^2 + ... + v_{m+n}^2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadSpace {
    pub neg: usize,
    pub pos: usize,
    /// Tolerance for rank and sign decisions in the float backend.
    pub eps: f64,
}

impl QuadSpace {
    pub const fn new(neg: usize, pos: usize) -> Self {
        QuadSpace { neg, pos, eps: DEFAULT_EPS }
    }

    /// R^{2,3}, the ambient space of Ein^{1,2}.
    pub const fn r23() -> Self {
        Self::new(2, 3)
    }

    /// R^{1,2}, the Minkowski space.
    pub const fn r12() -> Self {
        Self::new(1, 2)
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn dim(&self) -> usize {
        self.neg + self.pos
    }

    pub fn eta(&self, i: usize) -> i64 {
        if i < self.neg {
            -1
        } else {
            1
        }
    }

    fn check<S>(&self, v: &[S]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        Ok(())
    }

    pub fn inner<S: Scalar>(&self, u: &[S], v: &[S]) -> Result<S> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.dot(u, v))
    }

    /// Unchecked bilinear form; callers guarantee lengths.
    pub fn dot<S: Scalar>(&self, u: &[S], v: &[S]) -> S {
        let mut acc = S::zero();
        for (i, (a, b)) in u.iter().zip(v).enumerate() {
            if a.is_zero_exact() || b.is_zero_exact() {
                continue;
            }
            let t = a.clone() * b;
            acc = if i < self.neg { acc - t } else { acc + t };
        }
        acc
    }

    pub fn norm2<S: Scalar>(&self, v: &[S]) -> S {
        self.dot(v, v)
    }

    /// Q v, the vector representing the covector u -> <v,u>.
    pub fn lower<S: Scalar>(&self, v: &[S]) -> Vec<S> {
        v.iter().enumerate().map(|(i, x)| if i < self.neg { -x.clone() } else { x.clone() }).collect()
    }

    pub fn form_matrix<S: Scalar>(&self) -> Mat<S> {
        Mat::diag(&(0..self.dim()).map(|i| S::from_i64(self.eta(i))).collect::<Vec<_>>())
    }

    /// Tolerance scaled to the size of the vectors involved.
    pub fn tol_for<S: Scalar>(&self, vs: &[&[S]]) -> f64 {
        if S::EXACT {
            return 0.0;
        }
        let m = vs.iter().map(|v| linalg::max_abs(v)).fold(0.0, f64::max);
        self.eps * m.max(1.0) * m.max(1.0)
    }

    pub fn causal_character<S: Scalar>(&self, v: &[S]) -> Result<VectorCharacter> {
        self.check(v)?;
        if linalg::is_zero_vec(v, if S::EXACT { 0.0 } else { self.eps }) {
            return Err(Error::ZeroVector);
        }
        let tol = self.tol_for(&[v]);
        Ok(match self.norm2(v).sign_eps(tol) {
            0 => VectorCharacter::Lightlike,
            s if s < 0 => VectorCharacter::Timelike,
            _ => VectorCharacter::Spacelike,
        })
    }

    pub fn gram<S: Scalar>(&self, vs: &[Vec<S>]) -> Mat<S> {
        let k = vs.len();
        let mut g = Mat::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let x = self.dot(&vs[i], &vs[j]);
                g[(i, j)] = x.clone();
                g[(j, i)] = x;
            }
        }
        g
    }

    /// Signature of the span of arbitrary (possibly dependent) vectors.
    pub fn signature_of_span<S: Scalar>(&self, vs: &[Vec<S>]) -> Signature {
        let basis = if S::EXACT { linalg::span_basis(vs, 0.0) } else { orthonormal_euclidean(vs, self.eps) };
        self.signature_of_basis(&basis)
    }

    fn signature_of_basis<S: Scalar>(&self, basis: &[Vec<S>]) -> Signature {
        let (p, q, r) = linalg::inertia(&self.gram(basis), self.eps);
        Signature { p, q, r }
    }

    pub fn standard_basis<S: Scalar>(&self) -> Vec<Vec<S>> {
        (0..self.dim()).map(|i| linalg::unit(self.dim(), i)).collect()
    }
}

/// Euclidean Gram-Schmidt with tolerance; used so float Gram matrices are well scaled.
pub(crate) fn orthonormal_euclidean<S: Scalar>(vs: &[Vec<S>], eps: f64) -> Vec<Vec<S>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    let scale = vs.iter().map(|v| linalg::max_abs(v)).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    for v in vs {
        let mut w: Vec<f64> = v.iter().map(|x| x.to_f64() / scale).collect();
        for _ in 0..2 {
            for b in &out {
                let d: f64 = w.iter().zip(b).map(|(a, c)| a * c).sum();
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= d * bi;
                }
            }
        }
        let n = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > eps.sqrt().max(eps * 1e3) {
            out.push(w.iter().map(|x| x / n).collect());
        }
    }
    out.into_iter().map(|w| w.into_iter().map(S::from_f64).collect()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VectorCharacter {
    Spacelike,
    Timelike,
    Lightlike,
}

impl fmt::Display for VectorCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VectorCharacter::Spacelike => "spacelike",
            VectorCharacter::Timelike => "timelike",
            VectorCharacter::Lightlike => "lightlike",
        })
    }
}

/// (p, q, r): negative, positive and isotropic counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl Signature {
    pub const fn new(p: usize, q: usize, r: usize) -> Self {
        Signature { p, q, r }
    }
    pub fn dim(&self) -> usize {
        self.p + self.q + self.r
    }
    pub fn is_spacelike(&self) -> bool {
        self.q > 0 && self.p == 0 && self.r == 0
    }
    pub fn is_timelike(&self) -> bool {
        self.p > 0 && self.q == 0 && self.r == 0
    }
    pub fn is_lightlike(&self) -> bool {
        self.r > 0 && self.p == 0 && self.q == 0
    }
    pub fn is_lorentzian(&self) -> bool {
        self.p == 1 && self.q > 0 && self.r == 0
    }
    pub fn is_degenerate(&self) -> bool {
        self.r > 0 && self.p + self.q > 0
    }
    /// Whether the subspace contains a vector of the given causal character.
    pub fn admits(&self, c: VectorCharacter) -> bool {
        match c {
            VectorCharacter::Spacelike => self.q > 0,
            VectorCharacter::Timelike => self.p > 0,
            VectorCharacter::Lightlike => self.r > 0 || (self.p > 0 && self.q > 0),
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.r)
    }
}

/// A linear subspace given by an independent basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<S> {
    pub space: QuadSpace,
    basis: Vec<Vec<S>>,
}

impl<S: Scalar> Subspace<S> {
    /// Validates dimensions and independence of the basis.
    pub fn new(space: QuadSpace, basis: Vec<Vec<S>>) -> Result<Self> {
        for v in &basis {
            space.check(v)?;
        }
        if linalg::rank(&basis, space.eps) != basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(Subspace { space, basis })
    }

    /// Span of arbitrary vectors; dependent ones are dropped.
    pub fn span(space: QuadSpace, vectors: &[Vec<S>]) -> Result<Self> {
        for v in vectors {
            space.check(v)?;
        }
        let basis = linalg::independent_subset(vectors, space.eps);
        Ok(Subspace { space, basis })
    }

    pub fn zero(space: QuadSpace) -> Self {
        Subspace { space, basis: vec![] }
    }

    pub fn whole(space: QuadSpace) -> Self {
        Subspace { space, basis: space.standard_basis() }
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn gram(&self) -> Mat<S> {
        self.space.gram(&self.basis)
    }

    /// Signature of the restricted form. The zero subspace has signature (0,0,0).
    pub fn signature(&self) -> Signature {
        self.space.signature_of_span(&self.basis)
    }

    pub fn contains(&self, v: &[S]) -> bool {
        linalg::in_span(&self.basis, v, self.space.eps)
    }

    pub fn contains_subspace(&self, other: &Subspace<S>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn same_as(&self, other: &Subspace<S>) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    pub fn orthogonal_complement(&self) -> Subspace<S> {
        let n = self.space.dim();
        if self.basis.is_empty() {
            return Subspace::whole(self.space);
        }
        let rows: Vec<Vec<S>> = self.basis.iter().map(|b| self.space.lower(b)).collect();
        let ker = linalg::nullspace_rows(&rows, n, self.space.eps);
        Subspace { space: self.space, basis: ker }
    }

    pub fn intersection(&self, other: &Subspace<S>) -> Subspace<S> {
        let b = linalg::intersect(&self.basis, &other.basis, self.space.eps);
        Subspace { space: self.space, basis: b }
    }

    pub fn sum(&self, other: &Subspace<S>) -> Subspace<S> {
        let all: Vec<Vec<S>> = self.basis.iter().chain(other.basis.iter()).cloned().collect();
        Subspace { space: self.space, basis: linalg::span_basis(&all, self.space.eps) }
    }

    /// Radical s ∩ s^⊥ of the restricted form.
    pub fn radical(&self) -> Subspace<S> {
        self.intersection(&self.orthogonal_complement())
    }

    pub fn is_totally_isotropic(&self) -> bool {
        let tol = self.space.tol_for(&self.basis.iter().map(|v| v.as_slice()).collect::<Vec<_>>());
        self.gram().is_zero_eps(tol)
    }

    /// Image under a linear map.
    pub fn image(&self, m: &Mat<S>) -> Subspace<S> {
        let vs: Vec<Vec<S>> = self.basis.iter().map(|b| m.apply(b)).collect();
        Subspace { space: self.space, basis: linalg::span_basis(&vs, self.space.eps) }
    }

    pub fn is_invariant(&self, m: &Mat<S>) -> bool {
        self.basis.iter().all(|b| self.contains(&m.apply(b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vint;
    use crate::scalar::{q, Q};

    #[test]
    fn inner_examples() {
        let s = QuadSpace::r12();
        assert_eq!(s.inner::<Q>(&vint(&[1, 0, 0]), &vint(&[1, 0, 0])).unwrap(), q(-1));
        assert_eq!(s.inner::<Q>(&vint(&[1, 1, 0]), &vint(&[1, 1, 0])).unwrap(), q(0));
        let s5 = QuadSpace::r23();
        assert_eq!(s5.inner::<Q>(&vint(&[1, 0, 1, 0, 0]), &vint(&[0, 1, 0, 1, 0])).unwrap(), q(0));
        assert!(s.inner::<Q>(&vint(&[1, 0]), &vint(&[1, 0, 0])).is_err());
    }

    #[test]
    fn signatures() {
        let s = QuadSpace::r12();
        let pi = Subspace::<Q>::new(s, vec![vint(&[1, 1, 0]), vint(&[0, 0, 1])]).unwrap();
        assert_eq!(pi.signature(), Signature::new(0, 1, 1));
        let s5 = QuadSpace::r23();
        let w = Subspace::<Q>::new(s5, vec![vint(&[1, 0, 0, 0, 0]), vint(&[0, 1, 0, 0, 0]), vint(&[0, 0, 1, 0, 0])]).unwrap();
        assert_eq!(w.signature(), Signature::new(2, 1, 0));
        assert!(Subspace::<Q>::new(s5, vec![vint(&[1, 0, 0, 0, 0]), vint(&[2, 0, 0, 0, 0])]).is_err());
    }

    #[test]
    fn complements() {
        let s5 = QuadSpace::r23();
        let l = Subspace::<Q>::new(s5, vec![vint(&[1, 0, 0, 0, 0])]).unwrap();
        let c = l.orthogonal_complement();
        assert_eq!(c.dim(), 4);
        assert_eq!(c.signature(), Signature::new(1, 3, 0));
        let v = Subspace::<Q>::new(s5, vec![vint(&[0, 0, 0, 1, 0]), vint(&[0, 0, 0, 0, 1])]).unwrap();
        assert_eq!(v.orthogonal_complement().signature(), Signature::new(2, 1, 0));
        let p = Subspace::<Q>::new(s5, vec![vint(&[1, 0, 0, 1, 0])]).unwrap();
        assert!(p.orthogonal_complement().contains(&vint(&[1, 0, 0, 1, 0])));
    }

    #[test]
    fn isotropy_and_characters() {
        let s5 = QuadSpace::r23();
        let t = Subspace::<Q>::new(s5, vec![vint(&[1, 0, 1, 0, 0]), vint(&[0, 1, 0, 1, 0])]).unwrap();
        assert!(t.is_totally_isotropic());
        assert!(!Subspace::<Q>::new(s5, vec![vint(&[0, 0, 1, 0, 0])]).unwrap().is_totally_isotropic());
        assert!(Subspace::<Q>::new(s5, vec![vint(&[1, 0, 1, 0, 0])]).unwrap().is_totally_isotropic());
        let s = QuadSpace::r12();
        assert_eq!(s.causal_character::<Q>(&vint(&[0, 0, 1])).unwrap(), VectorCharacter::Spacelike);
        assert_eq!(s.causal_character::<Q>(&vint(&[1, 0, 0])).unwrap(), VectorCharacter::Timelike);
        assert_eq!(s.causal_character::<Q>(&vint(&[1, 1, 0])).unwrap(), VectorCharacter::Lightlike);
        assert_eq!(s.causal_character::<Q>(&vint(&[0, 0, 0])), Err(Error::ZeroVector));
        assert_eq!(s.causal_character::<f64>(&vint(&[1, 1, 0])).unwrap(), VectorCharacter::Lightlike);
    }
}
