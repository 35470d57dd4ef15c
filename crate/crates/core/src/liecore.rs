//! so(1,2), sl(2,R), the conformal algebra of R^{1,2}, so(2,3), exponentials and
//! element classification, including the photon-stabilizer kernel.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::einstein::{MinkowskiChart, R12, R23};
use crate::error::{Error, Result};
use crate::linalg::{self, vaxpy, vscale, Mat};
use crate::scalar::{Scalar, Q};

fn tol<S: Scalar>() -> f64 {
    if S::EXACT {
        0.0
    } else {
        1e-9
    }
}

/// so(1,2) basis as 3x3 matrices on R^{1,2} (e1 timelike): E, H, P.
pub fn so12_basis<S: Scalar>() -> [Mat<S>; 3] {
    [
        Mat::from_i64(&[&[0, 0, 0], &[0, 0, 1], &[0, -1, 0]]),
        Mat::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]),
        Mat::from_i64(&[&[0, 0, 1], &[0, 0, 1], &[1, -1, 0]]),
    ]
}

/// sl(2,R) basis as 2x2 matrices: E, H, P.
pub fn sl2_basis<S: Scalar>() -> [Mat<S>; 3] {
    [Mat::from_i64(&[&[0, 1], &[-1, 0]]), Mat::from_i64(&[&[1, 0], &[0, -1]]), Mat::from_i64(&[&[0, 1], &[0, 0]])]
}

fn combo<S: Scalar>(basis: &[Mat<S>; 3], c: &[S; 3]) -> Mat<S> {
    basis[0].scale(&c[0]).add(&basis[1].scale(&c[1])).add(&basis[2].scale(&c[2]))
}

#[derive(Clone, Debug, PartialEq)]
pub struct So12Element<S>(Mat<S>);

impl<S: Scalar> So12Element<S> {
    pub fn new(m: Mat<S>) -> Result<Self> {
        if m.nrows() != 3 || !m.is_square() {
            return Err(Error::DimensionMismatch { expected: 3, got: m.nrows() });
        }
        let q = R12.form_matrix::<S>();
        if !m.transpose().mul(&q).add(&q.mul(&m)).is_zero_eps(tol::<S>()) {
            return Err(Error::InvalidElement("not in so(1,2)".into()));
        }
        Ok(So12Element(m))
    }

    pub fn from_coeffs(c: &[S; 3]) -> Self {
        So12Element(combo(&so12_basis(), c))
    }

    /// Coefficients on (E, H, P). A general element is [[0,a,b],[a,0,c],[b,-c,0]].
    pub fn coeffs(&self) -> [S; 3] {
        let m = &self.0;
        let (a, b, c) = (m[(0, 1)].clone(), m[(0, 2)].clone(), m[(1, 2)].clone());
        [c - &b, a, b]
    }

    pub fn matrix(&self) -> &Mat<S> {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Element<S>(Mat<S>);

impl<S: Scalar> Sl2Element<S> {
    pub fn new(m: Mat<S>) -> Result<Self> {
        if m.nrows() != 2 || !m.is_square() {
            return Err(Error::DimensionMismatch { expected: 2, got: m.nrows() });
        }
        if !m.trace().is_zero_eps(tol::<S>()) {
            return Err(Error::InvalidElement("not traceless".into()));
        }
        Ok(Sl2Element(m))
    }

    pub fn from_coeffs(c: &[S; 3]) -> Self {
        Sl2Element(combo(&sl2_basis(), c))
    }

    /// Coefficients on (E, H, P). A general element is [[h, e+p],[-e, -h]].
    pub fn coeffs(&self) -> [S; 3] {
        let m = &self.0;
        let e = -m[(1, 0)].clone();
        [e.clone(), m[(0, 0)].clone(), m[(0, 1)].clone() - &e]
    }

    pub fn matrix(&self) -> &Mat<S> {
        &self.0
    }
}

pub fn bracket_so12<S: Scalar>(x: &So12Element<S>, y: &So12Element<S>) -> So12Element<S> {
    So12Element(x.0.commutator(&y.0))
}

pub fn bracket_sl2<S: Scalar>(x: &Sl2Element<S>, y: &Sl2Element<S>) -> Sl2Element<S> {
    Sl2Element(x.0.commutator(&y.0))
}

/// λ + X + v in (R ⊕ so(1,2)) ⋉ R^{1,2}; X is stored by its (E, H, P) coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfAlgElement<S> {
    pub lambda: S,
    pub x: [S; 3],
    pub v: [S; 3],
}

impl<S: Scalar> ConfAlgElement<S> {
    pub fn new(lambda: S, x: [S; 3], v: [S; 3]) -> Self {
        ConfAlgElement { lambda, x, v }
    }

    pub fn zero() -> Self {
        Self::from_vec7(&linalg::vzero(7))
    }

    pub fn homothety(l: S) -> Self {
        let mut e = Self::zero();
        e.lambda = l;
        e
    }

    pub fn translation(v: [S; 3]) -> Self {
        ConfAlgElement { lambda: S::zero(), x: [S::zero(), S::zero(), S::zero()], v }
    }

    pub fn linear(x: [S; 3]) -> Self {
        ConfAlgElement { lambda: S::zero(), x, v: [S::zero(), S::zero(), S::zero()] }
    }

    /// The 7 coordinates (λ, cE, cH, cP, v1, v2, v3).
    pub fn to_vec7(&self) -> Vec<S> {
        let mut out = vec![self.lambda.clone()];
        out.extend(self.x.iter().cloned());
        out.extend(self.v.iter().cloned());
        out
    }

    pub fn from_vec7(c: &[S]) -> Self {
        ConfAlgElement {
            lambda: c[0].clone(),
            x: [c[1].clone(), c[2].clone(), c[3].clone()],
            v: [c[4].clone(), c[5].clone(), c[6].clone()],
        }
    }

    /// The seven basis elements 1, E, H, P, e1, e2, e3.
    pub fn basis() -> Vec<Self> {
        (0..7).map(|i| Self::from_vec7(&linalg::unit(7, i))).collect()
    }

    pub fn x_matrix(&self) -> Mat<S> {
        combo(&so12_basis(), &self.x)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_vec7(&linalg::vadd(&self.to_vec7(), &o.to_vec7()))
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_vec7(&vscale(&self.to_vec7(), s))
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vec(&self.to_vec7(), tol::<S>())
    }

    /// The conformal vector field at a chart point y: λy + X(y) + v.
    pub fn act(&self, y: &[S]) -> Vec<S> {
        let xy = self.x_matrix().apply(y);
        let lv = vaxpy(&xy, &self.lambda, y);
        linalg::vadd(&lv, &self.v)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lambda": self.lambda.to_json(),
            "X": self.x.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "v": self.v.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let three = |k: &str| -> Result<[S; 3]> {
            let a = v[k].as_array().ok_or_else(|| Error::Parse(format!("missing array {k}")))?;
            if a.len() != 3 {
                return Err(Error::DimensionMismatch { expected: 3, got: a.len() });
            }
            Ok([S::from_json(&a[0])?, S::from_json(&a[1])?, S::from_json(&a[2])?])
        };
        Ok(ConfAlgElement { lambda: S::from_json(&v["lambda"])?, x: three("X")?, v: three("v")? })
    }
}

impl<S: Scalar> fmt::Display for ConfAlgElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["1", "E", "H", "P", "e1", "e2", "e3"];
        let terms: Vec<String> = self
            .to_vec7()
            .iter()
            .zip(names)
            .filter(|(c, _)| !c.is_zero_exact())
            .map(|(c, n)| if *c == S::one() { n.to_string() } else { format!("{}*{}", c.show(), n) })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// [a+V+v, b+W+w] = [V,W] + V(w) + a w - W(v) - b v.
pub fn bracket_conf<S: Scalar>(a: &ConfAlgElement<S>, b: &ConfAlgElement<S>) -> ConfAlgElement<S> {
    let (va, vb) = (a.x_matrix(), b.x_matrix());
    let x = So12Element(va.commutator(&vb)).coeffs();
    let mut t = va.apply(&b.v);
    t = vaxpy(&t, &a.lambda, &b.v);
    t = linalg::vsub(&t, &vb.apply(&a.v));
    t = vaxpy(&t, &(-b.lambda.clone()), &a.v);
    ConfAlgElement { lambda: S::zero(), x, v: [t[0].clone(), t[1].clone(), t[2].clone()] }
}

/// Element x -> rAx + v of (R_+^* x SO_0(1,2)) ⋉ R^{1,2}.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfGroupElement<S> {
    pub r: S,
    pub a: Mat<S>,
    pub v: [S; 3],
}

impl<S: Scalar> ConfGroupElement<S> {
    pub fn new(r: S, a: Mat<S>, v: [S; 3]) -> Result<Self> {
        if r.sign_eps(tol::<S>()) <= 0 {
            return Err(Error::InvalidElement("homothety factor must be positive".into()));
        }
        check_so0_12(&a)?;
        Ok(ConfGroupElement { r, a, v })
    }

    pub fn identity() -> Self {
        ConfGroupElement { r: S::one(), a: Mat::identity(3), v: [S::zero(), S::zero(), S::zero()] }
    }

    pub fn apply(&self, x: &[S]) -> Vec<S> {
        let ax = vscale(&self.a.apply(x), &self.r);
        linalg::vadd(&ax, &self.v)
    }

    /// self ∘ other.
    pub fn compose(&self, o: &Self) -> Self {
        let v = self.apply(&o.v);
        ConfGroupElement { r: self.r.clone() * &o.r, a: self.a.mul(&o.a), v: [v[0].clone(), v[1].clone(), v[2].clone()] }
    }

    pub fn inverse(&self) -> Self {
        let ainv = so12_inverse(&self.a);
        let rinv = self.r.recip();
        let v = vscale(&ainv.apply(&self.v), &(-rinv.clone()));
        ConfGroupElement { r: rinv, a: ainv, v: [v[0].clone(), v[1].clone(), v[2].clone()] }
    }

    /// The isometry of R^{2,3} inducing this map on the chart: it fixes [p] and
    /// sends chart_embed(x) to chart_embed(rAx + v).
    pub fn to_so23(&self, c: &MinkowskiChart<S>) -> Mat<S> {
        let w = &self.v;
        let w2 = R12.norm2(w) / S::from_i64(2);
        let gp = vscale(c.p(), &self.r);
        let gq = vscale(&vaxpy(&linalg::vadd(c.q(), &c.lift(w)), &w2, c.p()), &self.r.recip());
        let gf: Vec<Vec<S>> = (0..3)
            .map(|i| {
                let ai = self.a.col(i);
                vaxpy(&c.lift(&ai), &R12.dot(&ai, w), c.p())
            })
            .collect();
        chart_linear_map(c, &gp, &gq, &gf)
    }
}

/// Ad_{(r,A,v)}(a+W+w) = a + AWA^{-1} + rA(w) - a v - AWA^{-1}(v).
pub fn adjoint_conf<S: Scalar>(g: &ConfGroupElement<S>, x: &ConfAlgElement<S>) -> ConfAlgElement<S> {
    let ainv = so12_inverse(&g.a);
    let w_conj = g.a.mul(&x.x_matrix()).mul(&ainv);
    let mut t = vscale(&g.a.apply(&x.v), &g.r);
    t = vaxpy(&t, &(-x.lambda.clone()), &g.v);
    t = linalg::vsub(&t, &w_conj.apply(&g.v));
    ConfAlgElement { lambda: x.lambda.clone(), x: So12Element(w_conj).coeffs(), v: [t[0].clone(), t[1].clone(), t[2].clone()] }
}

pub fn so12_inverse<S: Scalar>(a: &Mat<S>) -> Mat<S> {
    let q = R12.form_matrix::<S>();
    q.mul(&a.transpose()).mul(&q)
}

fn check_so0_12<S: Scalar>(a: &Mat<S>) -> Result<()> {
    if a.nrows() != 3 || !a.is_square() {
        return Err(Error::DimensionMismatch { expected: 3, got: a.nrows() });
    }
    let q = R12.form_matrix::<S>();
    let t = tol::<S>();
    if !a.transpose().mul(&q).mul(a).sub(&q).is_zero_eps(t) {
        return Err(Error::InvalidElement("not an isometry of R^{1,2}".into()));
    }
    if !(a.det() - S::one()).is_zero_eps(t) || a[(0, 0)].to_f64() <= 0.0 {
        return Err(Error::InvalidElement("not in the identity component SO_0(1,2)".into()));
    }
    Ok(())
}

/// Assembles the 5x5 matrix with prescribed images of p, q and the frame.
fn chart_linear_map<S: Scalar>(c: &MinkowskiChart<S>, mp: &[S], mq: &[S], mf: &[Vec<S>]) -> Mat<S> {
    // u = αp + βq + Σ γ_i f_i with α = -<u,q>, β = -<u,p>, γ_i = η_i <u,f_i>
    let mut m = Mat::<S>::zeros(5, 5);
    let mut add_rank_one = |img: &[S], cov: Vec<S>, sign: S| {
        for i in 0..5 {
            if img[i].is_zero_exact() {
                continue;
            }
            for j in 0..5 {
                if cov[j].is_zero_exact() {
                    continue;
                }
                let t = img[i].clone() * &cov[j] * &sign;
                m[(i, j)] = m[(i, j)].clone() + t;
            }
        }
    };
    add_rank_one(mp, R23.lower(c.q()), -S::one());
    add_rank_one(mq, R23.lower(c.p()), -S::one());
    for (i, img) in mf.iter().enumerate() {
        add_rank_one(img, R23.lower(&c.frame()[i]), S::from_i64(R12.eta(i)));
    }
    m
}

/// so(2,3) element: 5x5 matrix M with M^T Q5 + Q5 M = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct So23Element<S>(Mat<S>);

impl<S: Scalar> So23Element<S> {
    pub fn new(m: Mat<S>) -> Result<Self> {
        if m.nrows() != 5 || !m.is_square() {
            return Err(Error::DimensionMismatch { expected: 5, got: m.nrows() });
        }
        if !is_so23(&m, tol::<S>() * m.max_abs().max(1.0)) {
            return Err(Error::InvalidElement("not in so(2,3)".into()));
        }
        Ok(So23Element(m))
    }
    pub fn matrix(&self) -> &Mat<S> {
        &self.0
    }
    pub fn into_matrix(self) -> Mat<S> {
        self.0
    }
}

pub fn is_so23<S: Scalar>(m: &Mat<S>, eps: f64) -> bool {
    let q = R23.form_matrix::<S>();
    m.transpose().mul(&q).add(&q.mul(m)).is_zero_eps(eps)
}

pub fn is_o23<S: Scalar>(g: &Mat<S>, eps: f64) -> bool {
    let q = R23.form_matrix::<S>();
    g.transpose().mul(&q).mul(g).sub(&q).is_zero_eps(eps)
}

/// Images of the seven basis elements of the conformal algebra in so(2,3) for a
/// fixed chart; the embedding of a general element is the linear combination.
#[derive(Clone, Debug)]
pub struct ConfEmbedding<S> {
    images: Vec<Mat<S>>,
}

impl<S: Scalar> ConfEmbedding<S> {
    pub fn new(c: &MinkowskiChart<S>) -> Self {
        ConfEmbedding { images: ConfAlgElement::basis().iter().map(|b| conf_to_so23_direct(b, c)).collect() }
    }

    pub fn apply(&self, x: &ConfAlgElement<S>) -> Mat<S> {
        let mut m = Mat::zeros(5, 5);
        for (c, img) in x.to_vec7().iter().zip(&self.images) {
            if !c.is_zero_exact() {
                m = m.add(&img.scale(c));
            }
        }
        m
    }
}

/// M p = λp, M q = -λq + v, M f_i = X f_i + <e_i, v> p, written in the chart basis.
fn conf_to_so23_direct<S: Scalar>(x: &ConfAlgElement<S>, c: &MinkowskiChart<S>) -> Mat<S> {
    let xm = x.x_matrix();
    let mp = vscale(c.p(), &x.lambda);
    let mq = linalg::vadd(&vscale(c.q(), &(-x.lambda.clone())), &c.lift(&x.v));
    let mf: Vec<Vec<S>> = (0..3)
        .map(|i| {
            let coef = S::from_i64(R12.eta(i)) * &x.v[i];
            vaxpy(&c.lift(&xm.col(i)), &coef, c.p())
        })
        .collect();
    chart_linear_map(c, &mp, &mq, &mf)
}

pub fn conf_to_so23<S: Scalar>(x: &ConfAlgElement<S>, c: &MinkowskiChart<S>) -> So23Element<S> {
    So23Element(ConfEmbedding::new(c).apply(x))
}

/// exp(tX). Floats use nalgebra's Padé scaling-and-squaring; the exact backend
/// handles nilpotent X (and t = 0) and refuses anything else.
pub fn exp_matrix<S: Scalar>(x: &Mat<S>, t: &S) -> Result<Mat<S>> {
    let n = x.nrows();
    let tx = x.scale(t);
    if !S::EXACT {
        let e = tx.to_nalgebra().exp();
        let m = Mat::<f64>::from_nalgebra(&e);
        return Ok(m.map_into(|v| S::from_f64(*v)));
    }
    exp_nilpotent(&tx).ok_or_else(|| Error::Unsupported("exact exp needs a nilpotent matrix; use exp_exact_growth, exp_exact_rotation or the float backend".into()))
        .or_else(|e| if tx.is_zero_eps(0.0) { Ok(Mat::identity(n)) } else { Err(e) })
}

/// Finite exponential series if the matrix is nilpotent.
pub fn exp_nilpotent<S: Scalar>(x: &Mat<S>) -> Option<Mat<S>> {
    let n = x.nrows();
    let mut acc = Mat::identity(n);
    let mut term = Mat::identity(n);
    for k in 1..=n {
        term = term.mul(x).scale(&S::from_ratio(1, k as i64));
        if term.is_zero_eps(0.0) {
            return Some(acc);
        }
        acc = acc.add(&term);
    }
    term.mul(x).is_zero_eps(0.0).then_some(acc)
}

/// exp(tX) for diagonalizable X with eigenvalues k_j μ (k_j integers, μ > 0 the
/// smallest positive |eigenvalue|), written through τ = e^{μt}: Σ τ^{k_j} P_j.
pub fn exp_exact_growth(x: &Mat<Q>, tau: &Q) -> Result<Mat<Q>> {
    let n = x.nrows();
    let eig = linalg::real_roots(&x.char_poly(), 0.0);
    let mu = eig
        .iter()
        .filter(|l| l.sign_eps(0.0) != 0)
        .map(|l| l.abs_val())
        .min_by(|a, b| a.cmp(b))
        .ok_or_else(|| Error::Unsupported("no nonzero real eigenvalue".into()))?;
    let mut out = Mat::zeros(n, n);
    let mut total = Mat::zeros(n, n);
    for (j, lj) in eig.iter().enumerate() {
        let mut pj = Mat::identity(n);
        for (i, li) in eig.iter().enumerate() {
            if i != j {
                let d = lj.clone() - li;
                pj = pj.mul(&x.sub(&Mat::identity(n).scale(li))).scale(&d.recip());
            }
        }
        if !x.mul(&pj).sub(&pj.scale(lj)).is_zero_eps(0.0) {
            return Err(Error::Unsupported("matrix is not diagonalizable over Q".into()));
        }
        let k = lj.clone() / &mu;
        if !k.is_integer() {
            return Err(Error::Irrational("eigenvalue ratios must be integers".into()));
        }
        let k = k.to_integer();
        let k: i32 = k.try_into().map_err(|_| Error::Unsupported("eigenvalue ratio too large".into()))?;
        out = out.add(&pj.scale(&num_traits::pow::Pow::pow(tau, k)));
        total = total.add(&pj);
    }
    if total != Mat::identity(n) {
        return Err(Error::Unsupported("eigenvalues are not all real and rational".into()));
    }
    Ok(out)
}

/// exp(θX) for X with X^3 = -ω^2 X and rational ω, given the rational point
/// (cos θ, sin θ) on the unit circle: I + (s/ω) X + ((1-c)/ω^2) X^2.
pub fn exp_exact_rotation(x: &Mat<Q>, c: &Q, s: &Q) -> Result<Mat<Q>> {
    let n = x.nrows();
    let x2 = x.mul(x);
    let x3 = x2.mul(x);
    // find ω^2 with x3 = -ω^2 x
    let idx = (0..n * n).find(|&k| !x[(k / n, k % n)].is_zero_exact()).ok_or_else(|| Error::Unsupported("zero matrix".into()))?;
    let (i, j) = (idx / n, idx % n);
    let w2 = -(x3[(i, j)].clone() / &x[(i, j)]);
    if x3.add(&x.scale(&w2)) != Mat::zeros(n, n) || w2.sign_eps(0.0) <= 0 {
        return Err(Error::Unsupported("matrix does not satisfy X^3 = -w^2 X".into()));
    }
    let w = w2.sqrt_opt().ok_or_else(|| Error::Irrational(format!("rotation speed^2 = {}", w2.show())))?;
    let one = <Q as Scalar>::one();
    Ok(Mat::identity(n).add(&x.scale(&(s.clone() / &w))).add(&x2.scale(&((one - c) / &w2))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementClass {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl fmt::Display for ElementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementClass::Identity => "identity",
            ElementClass::Elliptic => "elliptic",
            ElementClass::Parabolic => "parabolic",
            ElementClass::Hyperbolic => "hyperbolic",
        })
    }
}

/// Trace criterion on SO_0(1,2): the eigenvalues are 1 and a pair with sum tr - 1.
pub fn classify_so12<S: Scalar>(a: &Mat<S>) -> Result<ElementClass> {
    check_so0_12(a)?;
    let t = tol::<S>();
    let tr3 = a.trace() - S::from_i64(3);
    Ok(match tr3.sign_eps(t) {
        0 if a.sub(&Mat::identity(3)).is_zero_eps(t) => ElementClass::Identity,
        0 => ElementClass::Parabolic,
        s if s > 0 => ElementClass::Hyperbolic,
        _ => ElementClass::Elliptic,
    })
}

pub fn classify_sl2<S: Scalar>(a: &Mat<S>) -> Result<ElementClass> {
    if a.nrows() != 2 || !a.is_square() {
        return Err(Error::DimensionMismatch { expected: 2, got: a.nrows() });
    }
    let t = tol::<S>();
    if !(a.det() - S::one()).is_zero_eps(t) {
        return Err(Error::InvalidElement("det must be 1".into()));
    }
    let id = Mat::identity(2);
    if a.sub(&id).is_zero_eps(t) || a.add(&id).is_zero_eps(t) {
        return Ok(ElementClass::Identity);
    }
    let tr = a.trace().abs_val() - S::from_i64(2);
    Ok(match tr.sign_eps(t) {
        0 => ElementClass::Parabolic,
        s if s > 0 => ElementClass::Hyperbolic,
        _ => ElementClass::Elliptic,
    })
}

/// Identification ψ of sl(2,R) with R^{1,2}: P -> -(e1+e2)/2, H -> e3, [[0,0],[1,0]] -> (e1-e2)/2.
/// It intertwines the adjoint action with SO_0(1,2), and ad_H with 2H.
pub fn sl2_to_r12<S: Scalar>(m: &Mat<S>) -> Vec<S> {
    let h = S::from_ratio(1, 2);
    vec![(m[(1, 0)].clone() - &m[(0, 1)]) * &h, -(m[(0, 1)].clone() + &m[(1, 0)]) * &h, m[(0, 0)].clone()]
}

pub fn r12_to_sl2<S: Scalar>(x: &[S]) -> Mat<S> {
    crate::ads::mat2(x[2].clone(), -(x[0].clone() + &x[1]), x[0].clone() - &x[1], -x[2].clone())
}

/// The SO_0(1,2) matrix of Ad_g for g in SL(2,R).
pub fn sl2_adjoint_so12<S: Scalar>(g: &Mat<S>) -> Mat<S> {
    let ginv = crate::ads::mat2(g[(1, 1)].clone(), -g[(0, 1)].clone(), -g[(1, 0)].clone(), g[(0, 0)].clone());
    let cols: Vec<Vec<S>> = (0..3).map(|i| sl2_to_r12(&g.mul(&r12_to_sl2(&linalg::unit::<S>(3, i))).mul(&ginv))).collect();
    Mat::from_cols(&cols).expect("3x3")
}

/// Element of the photon-stabilizer kernel: homothety-hyperbolic part t, parabolic
/// part s, translation (u, v) and the sign ε of the SL(2,R) lift.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelElement<S> {
    pub t: S,
    pub s: S,
    pub u: S,
    pub v: S,
    pub eps: i8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelClass {
    Identity,
    Lightlike,
    Spacelike,
    Parabolic,
    HTransformation,
}

impl fmt::Display for KernelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelClass::Identity => "identity",
            KernelClass::Lightlike => "lightlike",
            KernelClass::Spacelike => "spacelike",
            KernelClass::Parabolic => "parabolic",
            KernelClass::HTransformation => "H_transformation",
        })
    }
}

impl<S: Scalar> KernelElement<S> {
    pub fn new(t: S, s: S, u: S, v: S, eps: i8) -> Result<Self> {
        if eps != 1 && eps != -1 {
            return Err(Error::InvalidElement("eps must be +1 or -1".into()));
        }
        Ok(KernelElement { t, s, u, v, eps })
    }

    /// τ = e^t on floats; the exact backend needs integer t and uses τ = 2^t.
    pub fn tau(&self) -> Result<S> {
        if S::EXACT {
            let tf = self.t.to_f64();
            if tf.fract() != 0.0 || tf.abs() > 60.0 || S::from_i64(tf as i64) != self.t {
                return Err(Error::Irrational("exact kernel elements need integer t".into()));
            }
            Ok(S::from_q(&num_traits::pow::Pow::pow(&crate::scalar::q(2), tf as i32)))
        } else {
            Ok(S::from_f64(self.t.to_f64().exp()))
        }
    }

    /// The conformal map x -> τ² A x + w with A = Ad([[ετ, s],[0, ε/τ]]) and
    /// w = u e3 - (v/2)(e1 + e2).
    pub fn conf_group(&self) -> Result<ConfGroupElement<S>> {
        let tau = self.tau()?;
        let e = S::from_i64(self.eps as i64);
        let g = crate::ads::mat2(e.clone() * &tau, self.s.clone(), S::zero(), e / &tau);
        let a = sl2_adjoint_so12(&g);
        let hv = self.v.clone() / S::from_i64(2);
        let w = [-hv.clone(), -hv, self.u.clone()];
        ConfGroupElement::new(tau.clone() * &tau, a, w)
    }

    pub fn to_so23(&self, c: &MinkowskiChart<S>) -> Result<Mat<S>> {
        Ok(self.conf_group()?.to_so23(c))
    }

    pub fn to_json(&self) -> Value {
        json!({"t": self.t.to_json(), "s": self.s.to_json(), "u": self.u.to_json(), "v": self.v.to_json(), "eps": self.eps})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let eps = v["eps"].as_i64().ok_or_else(|| Error::Parse("eps must be ±1".into()))?;
        Self::new(S::from_json(&v["t"])?, S::from_json(&v["s"])?, S::from_json(&v["u"])?, S::from_json(&v["v"])?, eps as i8)
    }
}

/// Rule-based class of a kernel element. The mixed translation case (u, v both
/// nonzero) fixes a second photon through the chart vertex and is spacelike
/// relative to that vertex.
pub fn classify_kernel<S: Scalar>(k: &KernelElement<S>) -> KernelClass {
    let t = tol::<S>();
    let z = |x: &S| x.is_zero_eps(t);
    if !z(&k.t) {
        KernelClass::HTransformation
    } else if !z(&k.s) {
        KernelClass::Parabolic
    } else if !z(&k.u) {
        KernelClass::Spacelike
    } else if !z(&k.v) {
        KernelClass::Lightlike
    } else {
        KernelClass::Identity
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    fn so(c: [i64; 3]) -> So12Element<Q> {
        So12Element::from_coeffs(&[q(c[0]), q(c[1]), q(c[2])])
    }

    #[test]
    fn coefficients_roundtrip() {
        let x = So12Element::<Q>::from_coeffs(&[q(2), qf(-1, 3), q(5)]);
        assert_eq!(x.coeffs(), [q(2), qf(-1, 3), q(5)]);
        let y = Sl2Element::<Q>::from_coeffs(&[q(2), qf(-1, 3), q(5)]);
        assert_eq!(y.coeffs(), [q(2), qf(-1, 3), q(5)]);
        assert!(So12Element::new(Mat::<Q>::identity(3)).is_err());
        assert!(Sl2Element::new(Mat::<Q>::identity(2)).is_err());
    }

    #[test]
    fn so12_brackets_as_printed() {
        let [e, h, p] = [so([1, 0, 0]), so([0, 1, 0]), so([0, 0, 1])];
        assert_eq!(bracket_so12(&e, &h).coeffs(), [q(1), q(0), q(-1)]);
        assert_eq!(bracket_so12(&e, &p).coeffs(), [q(0), q(1), q(0)]);
        assert_eq!(bracket_so12(&h, &p).coeffs(), [q(0), q(0), q(1)]);
    }

    #[test]
    fn conf_bracket_rules() {
        let h = ConfAlgElement::<Q>::linear([q(0), q(1), q(0)]);
        let p = ConfAlgElement::<Q>::linear([q(0), q(0), q(1)]);
        assert_eq!(bracket_conf(&h, &p), p);
        let w = ConfAlgElement::translation([q(1), q(2), q(3)]);
        assert_eq!(bracket_conf(&ConfAlgElement::homothety(q(1)), &w), w);
        assert!(bracket_conf(&w, &w).is_zero());
    }

    #[test]
    fn embedding_is_skew_and_fixes_vertex() {
        let c = MinkowskiChart::<Q>::default_chart();
        for b in ConfAlgElement::<Q>::basis() {
            let m = conf_to_so23(&b, &c);
            assert!(So23Element::new(m.matrix().clone()).is_ok());
            let mp = m.matrix().apply(c.p());
            assert_eq!(linalg::rank(&[mp, c.p().to_vec()], 0.0), 1);
        }
    }

    #[test]
    fn group_embedding_maps_chart_points() {
        let c = MinkowskiChart::<Q>::default_chart();
        let a = sl2_adjoint_so12(&crate::ads::mat2(q(2), q(3), q(1), q(2)));
        let g = ConfGroupElement::new(qf(3, 2), a, [q(1), qf(-1, 2), q(2)]).unwrap();
        let m = g.to_so23(&c);
        assert!(is_o23(&m, 0.0));
        let x = [qf(1, 3), q(2), qf(-3, 4)];
        let image = c.embed(&g.apply(&x));
        let moved = crate::einstein::EinPoint::new(m.apply(&c.embed_vec(&x))).unwrap();
        assert_eq!(image, moved);
    }

    #[test]
    fn exponentials() {
        let [e, h, p] = so12_basis::<Q>();
        let ep = exp_matrix(&p, &q(2)).unwrap();
        assert_eq!(p.mul(&p).mul(&p), Mat::zeros(3, 3));
        assert_eq!(classify_so12(&ep).unwrap(), ElementClass::Parabolic);
        assert!(exp_matrix(&h, &q(1)).is_err());
        assert_eq!(exp_matrix(&h, &q(0)).unwrap(), Mat::identity(3));
        let eh = exp_exact_growth(&h, &q(2)).unwrap();
        assert_eq!(classify_so12(&eh).unwrap(), ElementClass::Hyperbolic);
        let ev = linalg::real_roots(&eh.char_poly(), 0.0);
        assert_eq!(ev, vec![qf(1, 2), q(1), q(2)]);
        let (c, s) = crate::einstein::circle_point(&qf(1, 3));
        let ee = exp_exact_rotation(&e, &c, &s).unwrap();
        assert_eq!(classify_so12(&ee).unwrap(), ElementClass::Elliptic);
        let ef = exp_matrix(&e.to_f64(), &0.7).unwrap();
        assert!((ef.trace() - (1.0 + 2.0 * 0.7f64.cos())).abs() < 1e-12);
    }

    #[test]
    fn sl2_classes() {
        let r = |a, b, c, d| crate::ads::mat2(a, b, c, d);
        assert_eq!(classify_sl2(&r(q(1), q(1), q(0), q(1))).unwrap(), ElementClass::Parabolic);
        assert_eq!(classify_sl2(&r(q(2), q(0), q(0), qf(1, 2))).unwrap(), ElementClass::Hyperbolic);
        assert_eq!(classify_sl2(&r(q(-1), q(0), q(0), q(-1))).unwrap(), ElementClass::Identity);
        let a = std::f64::consts::FRAC_PI_4;
        assert_eq!(classify_sl2(&crate::ads::mat2(a.cos(), -a.sin(), a.sin(), a.cos())).unwrap(), ElementClass::Elliptic);
        assert!(classify_sl2(&r(q(2), q(0), q(0), q(2))).is_err());
    }

    #[test]
    fn kernel_rules() {
        let k = |t, s, u, v| KernelElement::new(q(t), q(s), q(u), q(v), 1).unwrap();
        assert_eq!(classify_kernel(&k(1, 0, 0, 0)), KernelClass::HTransformation);
        assert_eq!(classify_kernel(&k(0, 0, 0, 1)), KernelClass::Lightlike);
        assert_eq!(classify_kernel(&k(0, 0, 1, 0)), KernelClass::Spacelike);
        assert_eq!(classify_kernel(&k(0, 1, 0, 0)), KernelClass::Parabolic);
        assert_eq!(classify_kernel(&k(0, 0, 0, 0)), KernelClass::Identity);
        let j = k(1, 2, -1, 3).to_json();
        assert_eq!(KernelElement::<Q>::from_json(&j).unwrap(), k(1, 2, -1, 3));
    }

    #[test]
    fn psi_intertwines_adjoint_actions() {
        let [e, h, p] = sl2_basis::<Q>();
        for (m, so) in [(&e, 0), (&h, 1), (&p, 2)] {
            let _ = so;
            assert_eq!(r12_to_sl2(&sl2_to_r12(m)), *m);
        }
        assert_eq!(sl2_to_r12(&h), vec![q(0), q(0), q(1)]);
        let g = crate::ads::mat2(q(2), q(1), q(3), q(2));
        let a = sl2_adjoint_so12(&g);
        assert!(check_so0_12(&a).is_ok());
    }
}
