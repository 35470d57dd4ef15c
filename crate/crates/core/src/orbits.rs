//! Orbit analysis: tangent spaces of orbits, their causal character, invariant
//! subspaces and fixed points, translation parts, and the sampled verdicts that
//! are compared against a catalog entry's expected outcome.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ads::{ads_form, ads_point_embed, j_embed};
use crate::catalog::{instantiate, Catalog, Claim, FixedKind, Model, Params, SubgroupSpec};
use crate::einstein::{circle_point, sphere_point, EinPoint, MinkowskiChart, R12, R23};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::liecore::{bracket_conf, ConfAlgElement, KernelClass};
use crate::qspace::{QuadSpace, Signature, Subspace, VectorCharacter, DEFAULT_EPS};
use crate::scalar::{fmt_q, parse_q, q, qf, Scalar, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitCharacter {
    Point,
    Spacelike,
    Timelike,
    Lightlike,
    Lorentzian,
    Degenerate,
    Open,
}

impl OrbitCharacter {
    pub fn name(&self) -> &'static str {
        match self {
            OrbitCharacter::Point => "point",
            OrbitCharacter::Spacelike => "spacelike",
            OrbitCharacter::Timelike => "timelike",
            OrbitCharacter::Lightlike => "lightlike",
            OrbitCharacter::Lorentzian => "lorentzian",
            OrbitCharacter::Degenerate => "degenerate",
            OrbitCharacter::Open => "open",
        }
    }

    /// Character of a tangent subspace of a 3-dimensional Lorentzian space.
    pub fn of(sig: Signature) -> Self {
        match (sig.dim(), sig.p, sig.q, sig.r) {
            (0, ..) => OrbitCharacter::Point,
            (3, ..) => OrbitCharacter::Open,
            (_, _, _, r) if r > 0 && sig.dim() == 1 => OrbitCharacter::Lightlike,
            (_, _, _, r) if r > 0 => OrbitCharacter::Degenerate,
            (_, 0, _, _) => OrbitCharacter::Spacelike,
            (_, _, 0, _) => OrbitCharacter::Timelike,
            _ => OrbitCharacter::Lorentzian,
        }
    }
}

impl fmt::Display for OrbitCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct TangentReport<S> {
    /// None for points of the special Aff chart, which is not a chart of Ein.
    pub point: Option<EinPoint<S>>,
    pub dim: usize,
    pub signature: Signature,
    pub character: OrbitCharacter,
    /// A basis of the tangent space in the coordinates used to compute it.
    pub basis: Vec<Vec<S>>,
}

impl<S: Scalar> TangentReport<S> {
    fn from_basis(point: Option<EinPoint<S>>, basis: Vec<Vec<S>>, signature: Signature) -> Self {
        TangentReport { point, dim: basis.len(), signature, character: OrbitCharacter::of(signature), basis }
    }

    pub fn contains(&self, v: &[S]) -> bool {
        linalg::in_span(&self.basis, v, if S::EXACT { 0.0 } else { 1e-8 })
    }
}

fn rank_eps<S: Scalar>(eps: f64) -> f64 {
    if S::EXACT {
        0.0
    } else {
        eps
    }
}

fn scaled<S: Scalar>(vs: Vec<Vec<S>>) -> Vec<Vec<S>> {
    if S::EXACT {
        return vs;
    }
    let m = vs.iter().map(|v| linalg::max_abs(v)).fold(0.0, f64::max);
    if m == 0.0 {
        return vs;
    }
    let s = S::from_f64(1.0 / m);
    vs.iter().map(|v| linalg::vscale(v, &s)).collect()
}

/// Tangent space of the orbit through x, computed in T_x Ein = x^⊥/Rx.
pub fn tangent_at<S: Scalar>(gens: &[Mat<S>], x: &EinPoint<S>) -> TangentReport<S> {
    tangent_at_eps(gens, x, DEFAULT_EPS)
}

pub fn tangent_at_eps<S: Scalar>(gens: &[Mat<S>], x: &EinPoint<S>, eps: f64) -> TangentReport<S> {
    if !S::EXACT {
        return tangent_at_float(gens, x, eps);
    }
    let xr = x.rep();
    // y pairs positively with x, so x^⊥ ∩ y^⊥ is a complement of Rx in x^⊥
    let y: Vec<S> = xr.iter().enumerate().map(|(i, a)| if i < 2 { -a.clone() } else { a.clone() }).collect();
    let xy = R23.dot(xr, &y);
    let us: Vec<Vec<S>> = gens
        .iter()
        .map(|m| {
            let u = m.apply(xr);
            let c = R23.dot(&u, &y) / &xy;
            linalg::vaxpy(&u, &-c, xr)
        })
        .collect();
    let basis = linalg::span_basis(&us, 0.0);
    let sig = R23.signature_of_span(&basis);
    TangentReport::from_basis(Some(x.clone()), basis, sig)
}

/// Float path. With x of unit length the complement W = x^⊥ ∩ (Q₅x)^⊥ is
/// Euclidean-orthogonal to x and Q₅x and preserved by Q₅, so in a Euclidean
/// orthonormal basis of a subspace of W the Gram matrix has eigenvalues in
/// [-1, 1]. Rank and signature then share one absolute threshold.
///
/// Inside the default patch the round picture squeezes far regions, so there
/// the velocities are read in the flat chart instead and `basis` holds
/// (e2, e3, e5) frame coordinates.
fn tangent_at_float<S: Scalar>(gens: &[Mat<S>], x: &EinPoint<S>, eps: f64) -> TangentReport<S> {
    let xr: Vec<f64> = x.rep().iter().map(|a| a.to_f64()).collect();
    let n = xr.iter().map(|a| a * a).sum::<f64>().sqrt();
    let xr: Vec<f64> = xr.iter().map(|a| a / n).collect();
    let eta = [-1.0, -1.0, 1.0, 1.0, 1.0];
    let y: Vec<f64> = xr.iter().zip(eta).map(|(a, e)| a * e).collect();
    let qdot = |u: &[f64], v: &[f64]| u.iter().zip(v).zip(eta).map(|((a, b), e)| a * b * e).sum::<f64>();
    let xy = qdot(&xr, &y);
    // <x, e1+e4>
    let xp = -xr[0] + xr[3];
    let in_patch = xp.abs() > 1e-6;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for m in gens {
        let u = m.to_f64().apply(&xr);
        if in_patch {
            let c = (-u[0] + u[3]) / xp;
            let v: Vec<f64> = u.iter().zip(&xr).map(|(a, b)| a - c * b).collect();
            rows.push(vec![v[1], v[2], v[4]]);
        } else {
            let c = qdot(&u, &y) / xy;
            rows.push(u.iter().zip(&xr).map(|(a, b)| a - c * b).collect());
        }
    }
    let metric: &[f64] = if in_patch { &[-1.0, 1.0, 1.0] } else { &eta };
    let (basis, sig) = gs_signature(rows, metric, eps);
    let basis: Vec<Vec<S>> = basis.into_iter().map(|v| v.into_iter().map(S::from_f64).collect()).collect();
    TangentReport::from_basis(Some(x.clone()), basis, sig)
}

/// Pivoted Gram-Schmidt (longest remaining vector first) followed by the
/// eigenvalue signs of the Gram matrix under the diagonal `metric`.
/// nalgebra's SVD misplaces singular vectors on some rank-deficient inputs.
fn gs_signature(rows: Vec<Vec<f64>>, metric: &[f64], eps: f64) -> (Vec<Vec<f64>>, Signature) {
    use nalgebra::{DMatrix, SymmetricEigen};
    let norm = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>().sqrt();
    // each row scaled to unit length, tiny ones dropped as zero fields
    let top = rows.iter().map(|r| norm(r)).fold(0.0, f64::max);
    let mut rest: Vec<Vec<f64>> = rows
        .iter()
        .filter_map(|r| {
            let n = norm(r);
            (n > eps * top && n > 0.0).then(|| r.iter().map(|a| a / n).collect())
        })
        .collect();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    while !rest.is_empty() && basis.len() < metric.len() {
        let (i, n) = rest.iter().enumerate().map(|(i, v)| (i, norm(v))).fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if n <= eps {
            break;
        }
        let b: Vec<f64> = rest.swap_remove(i).iter().map(|a| a / n).collect();
        for v in rest.iter_mut() {
            for _ in 0..2 {
                let d: f64 = v.iter().zip(&b).map(|(x, y)| x * y).sum();
                for (x, y) in v.iter_mut().zip(&b) {
                    *x -= d * y;
                }
            }
        }
        basis.push(b);
    }
    let k = basis.len();
    let dot = |u: &[f64], v: &[f64]| u.iter().zip(v).zip(metric).map(|((a, b), e)| a * b * e).sum::<f64>();
    let g = DMatrix::from_fn(k, k, |i, j| dot(&basis[i], &basis[j]));
    let (mut p, mut q, mut r) = (0, 0, 0);
    if k > 0 {
        for ev in SymmetricEigen::new(g).eigenvalues.iter() {
            if *ev < -eps {
                p += 1;
            } else if *ev > eps {
                q += 1;
            } else {
                r += 1;
            }
        }
    }
    (basis, Signature::new(p, q, r))
}

/// Tangent space at a chart point: span of the conformal vector fields λy + X(y) + v.
pub fn chart_tangent_at<S: Scalar>(gens: &[ConfAlgElement<S>], x: &[S; 3]) -> TangentReport<S> {
    let vs: Vec<Vec<S>> = gens.iter().map(|g| g.act(x)).collect();
    let eps = DEFAULT_EPS;
    let basis = linalg::span_basis(&scaled(vs), rank_eps::<S>(eps));
    let sig = R12.signature_of_span(&basis);
    let point = MinkowskiChart::<S>::default_chart().embed(x);
    TangentReport::from_basis(Some(point), basis, sig)
}

/// Tangent space at an AdS point P: span of X P - P Y, measured with the
/// polarization of -det. The basis is returned as 2x2 matrices flattened row-wise.
pub fn ads_tangent_at<S: Scalar>(gens: &[(Mat<S>, Mat<S>)], p: &Mat<S>) -> Result<TangentReport<S>> {
    let point = ads_point_embed(p)?;
    let vs: Vec<Mat<S>> = gens.iter().map(|(x, y)| x.mul(p).sub(&p.mul(y))).collect();
    let flat: Vec<Vec<S>> = vs.iter().map(|m| m.rows_vec().concat()).collect();
    let eps = DEFAULT_EPS;
    let basis = linalg::span_basis(&scaled(flat), rank_eps::<S>(eps));
    let mats: Vec<Mat<S>> = basis.iter().map(|b| Mat::from_rows(&[b[..2].to_vec(), b[2..].to_vec()]).expect("2x2")).collect();
    let mut g = Mat::zeros(mats.len(), mats.len());
    for i in 0..mats.len() {
        for j in 0..mats.len() {
            g[(i, j)] = ads_form(&mats[i], &mats[j]);
        }
    }
    let (p_, q_, r_) = linalg::inertia(&g, eps);
    Ok(TangentReport::from_basis(Some(point), basis, Signature::new(p_, q_, r_)))
}

// ---------------------------------------------------------------------------
// the special chart of the irreducible Aff orbit

trait Ring: Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {
    fn int(n: i64) -> Self;
}

impl<S: Scalar> Ring for S {
    fn int(n: i64) -> Self {
        S::from_i64(n)
    }
}

/// First-order jets a + b ε with ε² = 0.
#[derive(Clone, Debug)]
struct Dual<S> {
    re: S,
    eps: S,
}

impl<S: Scalar> Add for Dual<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual { re: self.re + o.re, eps: self.eps + o.eps }
    }
}

impl<S: Scalar> Sub for Dual<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual { re: self.re - o.re, eps: self.eps - o.eps }
    }
}

impl<S: Scalar> Mul for Dual<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual { re: self.re.clone() * &o.re, eps: self.re * o.eps + self.eps * o.re }
    }
}

impl<S: Scalar> Ring for Dual<S> {
    fn int(n: i64) -> Self {
        Dual { re: S::from_i64(n), eps: S::zero() }
    }
}

fn pw<R: Ring>(x: &R, n: u32) -> R {
    (0..n).fold(R::int(1), |acc, _| acc * x.clone())
}

fn aff_orbit_ring<R: Ring>(p: &[R; 3], tau: &R, s: &R) -> [R; 3] {
    let [x, y, z] = p.clone();
    let c = |n| R::int(n);
    [
        x * pw(tau, 6) + c(3) * y.clone() * pw(tau, 4) * pw(s, 2) - c(2) * z.clone() * pw(tau, 5) * s.clone() - c(4) * pw(tau, 3) * pw(s, 3),
        y.clone() * pw(tau, 2) - c(4) * tau.clone() * s.clone(),
        z * pw(tau, 4) - c(3) * y * pw(tau, 3) * s.clone() + c(6) * pw(tau, 2) * pw(s, 2),
    ]
}

/// The orbit map of the irreducible Aff action in its special chart, with τ = e^t.
pub fn aff_irreducible_orbit<S: Scalar>(p: &[S; 3], tau: &S, s: &S) -> [S; 3] {
    aff_orbit_ring(p, tau, s)
}

/// The conformal form -ab/2 + c²/6 of the special chart, polarized.
pub fn aff_form<S: Scalar>(u: &[S], v: &[S]) -> S {
    let quarter = S::from_ratio(1, 4);
    let sixth = S::from_ratio(1, 6);
    -(quarter * (u[0].clone() * &v[1] + u[1].clone() * &v[0])) + sixth * (u[2].clone() * &v[2])
}

/// Tangent space of the special-chart orbit at p: derivatives of the orbit map
/// in s and in t at the identity.
pub fn aff_irreducible_tangent<S: Scalar>(p: &[S; 3]) -> TangentReport<S> {
    let lift = |a: &S| Dual { re: a.clone(), eps: S::zero() };
    let pd = [lift(&p[0]), lift(&p[1]), lift(&p[2])];
    let ds = aff_orbit_ring(&pd, &Dual { re: S::one(), eps: S::zero() }, &Dual { re: S::zero(), eps: S::one() });
    // dτ/dt = τ = 1 at t = 0
    let dt = aff_orbit_ring(&pd, &Dual { re: S::one(), eps: S::one() }, &Dual { re: S::zero(), eps: S::zero() });
    let vs = vec![ds.iter().map(|d| d.eps.clone()).collect::<Vec<S>>(), dt.iter().map(|d| d.eps.clone()).collect()];
    let basis = linalg::span_basis(&scaled(vs), rank_eps::<S>(DEFAULT_EPS));
    let mut g = Mat::zeros(basis.len(), basis.len());
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            g[(i, j)] = aff_form(&basis[i], &basis[j]);
        }
    }
    let (a, b, c) = linalg::inertia(&g, DEFAULT_EPS);
    TangentReport::from_basis(None, basis, Signature::new(a, b, c))
}

// ---------------------------------------------------------------------------
// translation part and the projections

fn conf_eps<S: Scalar>() -> f64 {
    if S::EXACT {
        0.0
    } else {
        1e-9
    }
}

/// Errors unless the span of `gens` is closed under the bracket.
pub fn check_subalgebra<S: Scalar>(gens: &[ConfAlgElement<S>]) -> Result<()> {
    let flat: Vec<Vec<S>> = gens.iter().map(|g| g.to_vec7()).collect();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = bracket_conf(a, b);
            if !linalg::in_span(&flat, &c.to_vec7(), conf_eps::<S>()) {
                return Err(Error::NotSubalgebra(format!("[{a}, {b}] = {c} leaves the span")));
            }
        }
    }
    Ok(())
}

/// Same check for so(2,3) matrices.
pub fn check_matrix_subalgebra<S: Scalar>(gens: &[Mat<S>]) -> Result<()> {
    let flat: Vec<Vec<S>> = gens.iter().map(|m| m.rows_vec().concat()).collect();
    let eps = if S::EXACT { 0.0 } else { 1e-9 };
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if !linalg::in_span(&flat, &a.commutator(b).rows_vec().concat(), eps) {
                return Err(Error::NotSubalgebra(format!("generators {i} and a later one bracket outside the span")));
            }
        }
    }
    Ok(())
}

fn projected_span<S: Scalar>(gens: &[ConfAlgElement<S>], range: std::ops::Range<usize>) -> Vec<Vec<S>> {
    let vs: Vec<Vec<S>> = gens.iter().map(|g| g.to_vec7()[range.clone()].to_vec()).collect();
    linalg::span_basis(&vs, conf_eps::<S>())
}

/// T(G): the pure translations in the span of the generators.
pub fn translation_part<S: Scalar>(gens: &[ConfAlgElement<S>]) -> Result<Subspace<S>> {
    check_subalgebra(gens)?;
    let flat: Vec<Vec<S>> = gens.iter().map(|g| g.to_vec7()).collect();
    let trans: Vec<Vec<S>> = (4..7).map(|i| linalg::unit(7, i)).collect();
    let both = linalg::intersect(&flat, &trans, conf_eps::<S>());
    let vs: Vec<Vec<S>> = both.iter().map(|v| v[4..].to_vec()).collect();
    Subspace::span(R12, &vs)
}

/// Span of the (λ, X) components.
pub fn proj_linear<S: Scalar>(gens: &[ConfAlgElement<S>]) -> Result<Vec<Vec<S>>> {
    check_subalgebra(gens)?;
    Ok(projected_span(gens, 0..4))
}

/// Span of the X components.
pub fn proj_linear_isometry<S: Scalar>(gens: &[ConfAlgElement<S>]) -> Result<Vec<Vec<S>>> {
    check_subalgebra(gens)?;
    Ok(projected_span(gens, 1..4))
}

/// Span of the homothety components.
pub fn proj_homothety<S: Scalar>(gens: &[ConfAlgElement<S>]) -> Result<Vec<Vec<S>>> {
    check_subalgebra(gens)?;
    Ok(projected_span(gens, 0..1))
}

/// dim ≥ 2 and (nontrivial linear isometry projection or dim T ≤ 2).
pub fn thm302_predicate<S: Scalar>(gens: &[ConfAlgElement<S>]) -> Result<bool> {
    let dim = linalg::rank(&gens.iter().map(|g| g.to_vec7()).collect::<Vec<_>>(), conf_eps::<S>());
    let t = translation_part(gens)?;
    let li = proj_linear_isometry(gens)?;
    Ok(dim >= 2 && (!li.is_empty() || t.dim() <= 2))
}

/// Caption label of a translation part.
pub fn translation_label<S: Scalar>(t: &Subspace<S>) -> &'static str {
    let sig = t.signature();
    match t.dim() {
        0 => "trivial",
        3 => "full",
        1 if sig.is_timelike() => "timelike_line",
        1 if sig.is_spacelike() => "spacelike_line",
        1 => "lightlike_line",
        _ if sig.is_lorentzian() => "lorentzian",
        _ if sig.is_spacelike() => "spacelike",
        _ => "degenerate",
    }
}

// ---------------------------------------------------------------------------
// invariant subspaces

#[derive(Clone, Debug)]
pub struct InvariantLine<S> {
    pub vector: Vec<S>,
    pub character: VectorCharacter,
}

fn combine<S: Scalar>(basis: &[Vec<S>], c: &[S]) -> Vec<S> {
    let mut acc = linalg::vzero::<S>(basis[0].len());
    for (ci, b) in c.iter().zip(basis) {
        if !ci.is_zero_exact() {
            acc = linalg::vaxpy(&acc, ci, b);
        }
    }
    acc
}

fn edot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y)
}

/// Largest subspace of span(basis) preserved by every generator.
fn max_invariant<S: Scalar>(gens: &[Mat<S>], basis: Vec<Vec<S>>, eps: f64) -> Vec<Vec<S>> {
    let mut b = basis;
    'outer: loop {
        if b.is_empty() {
            return b;
        }
        let ann = linalg::nullspace_rows(&b, b[0].len(), eps);
        if ann.is_empty() {
            return b;
        }
        for m in gens {
            let mb: Vec<Vec<S>> = b.iter().map(|v| m.apply(v)).collect();
            let rows: Vec<Vec<S>> = ann.iter().map(|a| mb.iter().map(|w| edot(a, w)).collect()).collect();
            let cs = linalg::nullspace_rows(&rows, b.len(), eps);
            if cs.len() < b.len() {
                b = linalg::span_basis(&cs.iter().map(|c| combine(&b, c)).collect::<Vec<_>>(), eps);
                continue 'outer;
            }
        }
        return b;
    }
}

fn restricted<S: Scalar>(m: &Mat<S>, basis: &[Vec<S>], eps: f64) -> Mat<S> {
    let k = basis.len();
    let mut r = Mat::zeros(k, k);
    for (j, b) in basis.iter().enumerate() {
        let c = linalg::solve_in_span(basis, &m.apply(b), eps.max(if S::EXACT { 0.0 } else { 1e-8 })).expect("invariant subspace");
        for i in 0..k {
            r[(i, j)] = c[i].clone();
        }
    }
    r
}

fn is_scalar_mat<S: Scalar>(m: &Mat<S>, eps: f64) -> bool {
    let c = m[(0, 0)].clone();
    m.sub(&Mat::identity(m.nrows()).scale(&c)).is_zero_eps(eps)
}

/// Orthogonal basis of a nondegenerate span, by Gram-Schmidt with the indefinite form.
fn orthogonalize<S: Scalar>(space: QuadSpace, vs: &[Vec<S>]) -> Vec<(Vec<S>, S)> {
    let tol = |v: &[S]| space.tol_for(&[v]);
    let mut rest: Vec<Vec<S>> = vs.to_vec();
    let mut out = Vec::new();
    while !rest.is_empty() {
        let pick = rest.iter().position(|v| !space.norm2(v).is_zero_eps(tol(v)));
        let v = match pick {
            Some(i) => rest.remove(i),
            None => {
                // all remaining vectors are null: u + w with <u,w> ≠ 0 is not
                let mut found = None;
                'find: for i in 0..rest.len() {
                    for j in i + 1..rest.len() {
                        let s = linalg::vadd(&rest[i], &rest[j]);
                        if !space.norm2(&s).is_zero_eps(tol(&s)) {
                            found = Some((i, s));
                            break 'find;
                        }
                    }
                }
                match found {
                    Some((i, s)) => {
                        rest.remove(i);
                        s
                    }
                    None => break,
                }
            }
        };
        let n = space.norm2(&v);
        rest = rest
            .into_iter()
            .map(|w| {
                let c = space.dot(&w, &v) / &n;
                linalg::vaxpy(&w, &-c, &v)
            })
            .filter(|w| !linalg::is_zero_vec(w, rank_eps::<S>(space.eps)))
            .collect();
        out.push((v, n));
    }
    out
}

/// Representative lines of a pencil (a subspace on which every generator is scalar):
/// its radical, an orthogonal basis of a complement, and the null lines of each
/// hyperbolic pair that are defined over the scalars.
fn pencil_lines<S: Scalar>(space: QuadSpace, basis: &[Vec<S>]) -> Vec<Vec<S>> {
    if basis.len() == 1 {
        return basis.to_vec();
    }
    let sub = Subspace::span(space, basis).expect("pencil basis");
    let rad = sub.radical();
    let mut lines: Vec<Vec<S>> = rad.basis().to_vec();
    let mut compl: Vec<Vec<S>> = Vec::new();
    let mut acc = rad.basis().to_vec();
    for b in basis {
        let mut trial = acc.clone();
        trial.push(b.clone());
        if linalg::rank(&trial, space.eps) == trial.len() {
            acc = trial;
            compl.push(b.clone());
        }
    }
    let orth = orthogonalize(space, &compl);
    for (v, _) in &orth {
        lines.push(v.clone());
    }
    let neg: Vec<&(Vec<S>, S)> = orth.iter().filter(|(_, n)| n.sign_eps(0.0) < 0).collect();
    let pos: Vec<&(Vec<S>, S)> = orth.iter().filter(|(_, n)| n.sign_eps(0.0) > 0).collect();
    for (a, na) in &neg {
        for (b, nb) in &pos {
            // (r a ± b) is null when r² = -nb/na
            if let Some(r) = (-(nb.clone() / na)).sqrt_opt() {
                let ra = linalg::vscale(a, &r);
                lines.push(linalg::vadd(&ra, b));
                lines.push(linalg::vsub(&ra, b));
            }
        }
    }
    lines
}

fn lines_rec<S: Scalar>(gens: &[Mat<S>], basis: Vec<Vec<S>>, eps: f64, out: &mut Vec<Vec<S>>, pencils: &mut Vec<Vec<Vec<S>>>) {
    let b = max_invariant(gens, basis, eps);
    if b.is_empty() {
        return;
    }
    let rs: Vec<Mat<S>> = gens.iter().map(|m| restricted(m, &b, eps)).collect();
    match rs.iter().find(|r| !is_scalar_mat(r, eps.max(if S::EXACT { 0.0 } else { 1e-8 }))) {
        None => {
            out.extend(pencil_lines(R23.with_eps(eps.max(DEFAULT_EPS)), &b));
            pencils.push(b);
        }
        Some(r) => {
            for mu in linalg::real_roots(&r.char_poly(), eps.max(1e-9)) {
                let shifted = r.sub(&Mat::identity(r.nrows()).scale(&mu));
                let coords = linalg::nullspace(&shifted, if S::EXACT { 0.0 } else { 1e-7 });
                if coords.is_empty() {
                    continue;
                }
                let vecs: Vec<Vec<S>> = coords.iter().map(|c| combine(&b, c)).collect();
                lines_rec(gens, vecs, eps, out, pencils);
            }
        }
    }
}

fn dedupe_lines<S: Scalar>(vs: Vec<Vec<S>>, eps: f64) -> Vec<Vec<S>> {
    let mut out: Vec<Vec<S>> = Vec::new();
    for v in vs {
        let Some(n) = linalg::normalize(&v, eps.max(if S::EXACT { 0.0 } else { 1e-12 })) else { continue };
        if !out.iter().any(|w| linalg::rank(&[w.clone(), n.clone()], if S::EXACT { 0.0 } else { 1e-7 }) == 1) {
            out.push(n);
        }
    }
    out
}

fn invariant_structure<S: Scalar>(gens: &[Mat<S>]) -> (Vec<Vec<S>>, Vec<Vec<Vec<S>>>) {
    let eps = if S::EXACT { 0.0 } else { 1e-9 };
    let mut out = Vec::new();
    let mut pencils = Vec::new();
    lines_rec(gens, R23.standard_basis(), eps, &mut out, &mut pencils);
    (dedupe_lines(out, eps), pencils)
}

/// Common real eigendirections of the generators, each tagged with its causal
/// character. When every generator is scalar on a subspace of dimension ≥ 2
/// (a pencil of invariant lines) a finite set of representatives is returned.
pub fn invariant_lines<S: Scalar>(gens: &[Mat<S>]) -> Vec<InvariantLine<S>> {
    let (lines, _) = invariant_structure(gens);
    lines
        .into_iter()
        .map(|v| {
            let character = R23.with_eps(1e-8).causal_character(&v).expect("nonzero line");
            InvariantLine { vector: v, character }
        })
        .collect()
}

/// Projective fixed points: the null invariant lines.
pub fn fixed_points_in_ein<S: Scalar>(gens: &[Mat<S>]) -> Vec<EinPoint<S>> {
    invariant_lines(gens)
        .into_iter()
        .filter(|l| l.character == VectorCharacter::Lightlike)
        .filter_map(|l| EinPoint::new_eps(l.vector, 1e-8).ok())
        .collect()
}

fn spin_up<S: Scalar>(gens: &[Mat<S>], seed: &[S], cap: usize, eps: f64) -> Vec<Vec<S>> {
    let mut basis = vec![seed.to_vec()];
    let mut frontier = basis.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for m in gens {
                let w = m.apply(v);
                if !linalg::in_span(&basis, &w, eps) {
                    basis.push(w.clone());
                    next.push(w);
                    if basis.len() > cap {
                        return basis;
                    }
                }
            }
        }
        frontier = next;
    }
    basis
}

/// Invariant 2-planes: 2-dimensional pencils, sums of two invariant lines, and
/// 2-dimensional spin-ups from eigenvectors of each generator. With `lattice`
/// set, every seed in {-2..2}^5 is spun up as well.
pub fn invariant_planes<S: Scalar>(gens: &[Mat<S>], lattice: bool) -> Vec<Subspace<S>> {
    let eps: f64 = if S::EXACT { 0.0 } else { 1e-9 };
    let space = R23.with_eps(eps.max(DEFAULT_EPS));
    let (lines, pencils) = invariant_structure(gens);
    let mut cands: Vec<Vec<Vec<S>>> = pencils.into_iter().filter(|p| p.len() == 2).collect();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            cands.push(vec![lines[i].clone(), lines[j].clone()]);
        }
    }
    let mut seeds: Vec<Vec<S>> = Vec::new();
    for m in gens {
        for mu in linalg::real_roots(&m.char_poly(), eps.max(1e-9)) {
            let shifted = m.sub(&Mat::identity(5).scale(&mu));
            seeds.extend(linalg::nullspace(&shifted, if S::EXACT { 0.0 } else { 1e-7 }));
        }
    }
    if lattice {
        for n in 0..5usize.pow(5) {
            let v: Vec<i64> = (0..5).map(|k| (n / 5usize.pow(k) % 5) as i64 - 2).collect();
            if v.iter().any(|&c| c != 0) {
                seeds.push(linalg::vint(&v));
            }
        }
    }
    for s in &seeds {
        let b = spin_up(gens, s, 2, eps);
        if b.len() == 2 {
            cands.push(b);
        }
    }
    let mut out: Vec<Subspace<S>> = Vec::new();
    for c in cands {
        let Ok(sub) = Subspace::span(space, &c) else { continue };
        if sub.dim() == 2 && gens.iter().all(|m| sub.is_invariant(m)) && !out.iter().any(|o| o.same_as(&sub)) {
            out.push(sub);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// the photon-stabilizer kernel

/// Photons fixed pointwise by a group element: isotropic planes inside its
/// real eigenspaces.
pub fn pointwise_fixed_photons(g: &Mat<Q>) -> Vec<Subspace<Q>> {
    let mut out: Vec<Subspace<Q>> = Vec::new();
    for mu in linalg::real_roots(&g.char_poly(), 0.0) {
        let e = linalg::nullspace(&g.sub(&Mat::identity(5).scale(&mu)), 0.0);
        let sub = Subspace::new(R23, e).expect("eigenspace basis");
        let rad = sub.radical();
        let mut planes: Vec<Subspace<Q>> = Vec::new();
        if rad.dim() == 2 {
            planes.push(rad.clone());
        }
        if rad.dim() == 1 {
            // the null lines of a complement, each joined with the radical
            let compl: Vec<Vec<Q>> = {
                let mut acc = rad.basis().to_vec();
                let mut c = Vec::new();
                for b in sub.basis() {
                    let mut t = acc.clone();
                    t.push(b.clone());
                    if linalg::rank(&t, 0.0) == t.len() {
                        acc = t;
                        c.push(b.clone());
                    }
                }
                c
            };
            if compl.len() == 2 {
                for l in pencil_lines(R23, &compl) {
                    if R23.norm2(&l) == q(0) {
                        planes.push(Subspace::span(R23, &[rad.basis()[0].clone(), l]).expect("plane"));
                    }
                }
            }
        }
        if rad.dim() == 0 && sub.dim() == 2 && sub.is_totally_isotropic() {
            planes.push(sub.clone());
        }
        for p in planes {
            if p.dim() == 2 && p.is_totally_isotropic() && !out.iter().any(|o| o.same_as(&p)) {
                out.push(p);
            }
        }
    }
    out
}

/// Class of a kernel element read off from the photons it fixes pointwise,
/// relative to the invariant photon Φ = P(span(p, e1+e2)) of the chart.
pub fn kernel_fixed_class(g: &Mat<Q>, chart: &MinkowskiChart<Q>) -> (KernelClass, Vec<Subspace<Q>>) {
    if g.sub(&Mat::identity(5).scale(&g[(0, 0)])).is_zero_eps(0.0) {
        return (KernelClass::Identity, Vec::new());
    }
    let phi = Subspace::span(R23, &[chart.p().to_vec(), chart.lift(&linalg::vint(&[1, 1, 0]))]).expect("phi");
    let photons = pointwise_fixed_photons(g);
    let extra: Vec<Subspace<Q>> = photons.iter().filter(|w| !w.same_as(&phi)).cloned().collect();
    let p_line = Subspace::span(R23, &[chart.p().to_vec()]).expect("p");
    let meets = |w: &Subspace<Q>| w.intersection(&phi);
    let class = if extra.iter().any(|w| meets(w).dim() == 0) {
        KernelClass::HTransformation
    } else if extra.iter().any(|w| {
        let m = meets(w);
        m.dim() == 1 && !m.same_as(&p_line)
    }) {
        KernelClass::Parabolic
    } else if !extra.is_empty() {
        KernelClass::Spacelike
    } else {
        KernelClass::Lightlike
    };
    let disjoint = extra.into_iter().filter(|w| meets(w).dim() == 0).collect();
    (class, disjoint)
}

// ---------------------------------------------------------------------------
// sampling

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    /// Chart grid [-r, r]^3 with the given rational step.
    pub grid_radius: i64,
    pub grid_step: String,
    pub random_count: usize,
    pub lightcone_count: usize,
    pub include_lightcone: bool,
    pub rng_seed: u64,
    /// Points drawn per orbit claim.
    pub claim_samples: usize,
    /// Float backend tolerance.
    pub eps: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            grid_radius: 2,
            grid_step: "1/2".into(),
            random_count: 271,
            lightcone_count: 100,
            include_lightcone: true,
            rng_seed: 0,
            claim_samples: 8,
            eps: DEFAULT_EPS,
        }
    }
}

const DENOMS: [i64; 4] = [7, 11, 13, 17];

pub fn rng_for(seed: u64, label: &str) -> ChaCha8Rng {
    // FNV-1a, so streams are stable across platforms and releases
    let mut h: u64 = 0xcbf29ce484222325;
    for b in label.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x100000001b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// A nonzero rational ±n/d with n ≤ 60 and d a small prime.
pub fn random_q(rng: &mut ChaCha8Rng) -> Q {
    let n: i64 = rng.gen_range(1..=60);
    let d = DENOMS[rng.gen_range(0..DENOMS.len())];
    if rng.gen_bool(0.5) {
        qf(n, d)
    } else {
        qf(-n, d)
    }
}

fn q12(x: &[Q; 3]) -> Q {
    -(x[0].clone() * &x[0]) + x[1].clone() * &x[1] + x[2].clone() * &x[2]
}

/// Off every special locus named in the catalog.
fn generic_chart_point(x: &[Q; 3]) -> bool {
    let [a, b, c] = x;
    let h = qf(1, 2);
    let zero = q(0);
    let checks = [
        a.clone(),
        b.clone(),
        c.clone(),
        a.clone() - b,
        a.clone() + b,
        q12(x),
        a.clone() + b + &h,
        a.clone() - b - &h,
        q(2) * c - (a.clone() - b) * (a.clone() - b),
    ];
    checks.iter().all(|v| *v != zero)
}

pub fn random_chart_point(rng: &mut ChaCha8Rng) -> [Q; 3] {
    loop {
        let x = [random_q(rng), random_q(rng), random_q(rng)];
        if generic_chart_point(&x) {
            return x;
        }
    }
}

fn filter_holds(f: &str, x: &[Q; 3]) -> Result<bool> {
    let [a, b, _] = x;
    let h = qf(1, 2);
    let abs = |v: &Q| if *v < q(0) { -v.clone() } else { v.clone() };
    Ok(match f.trim() {
        "q>0" => q12(x) > q(0),
        "q<0" => q12(x) < q(0),
        "|x|>|y|" => abs(a) > abs(b),
        "|y|>|x|" => abs(b) > abs(a),
        "x<y" => a < b,
        "x>y" => a > b,
        "x+y<-1/2" => a.clone() + b < -h.clone(),
        "x+y>-1/2" => a.clone() + b > -h.clone(),
        "x-y<1/2" => a.clone() - b < h.clone(),
        "x-y>1/2" => a.clone() - b > h.clone(),
        other => return Err(Error::Parse(format!("unknown region filter {other:?}"))),
    })
}

fn lightcone_point(chart: &MinkowskiChart<Q>, d: &[Q], alpha: &Q) -> EinPoint<Q> {
    EinPoint::new(linalg::vaxpy(&chart.lift(d), alpha, chart.p())).expect("null lightcone vector")
}

fn generic_null_r12(rng: &mut ChaCha8Rng) -> Vec<Q> {
    loop {
        let (c, s) = circle_point(&random_q(rng));
        if c != q(1) && c != q(-1) && s != q(0) {
            return vec![q(1), c, s];
        }
    }
}

/// Unit vector in R^k with rational entries.
fn rational_unit(k: usize, rng: &mut ChaCha8Rng) -> Vec<Q> {
    match k {
        1 => vec![q(1)],
        2 => {
            let (c, s) = circle_point(&random_q(rng));
            vec![c, s]
        }
        3 => {
            let (a, b, c) = sphere_point(&random_q(rng), &random_q(rng));
            vec![a, b, c]
        }
        _ => panic!("rational_unit: unsupported dimension {k}"),
    }
}

fn random_sl2(rng: &mut ChaCha8Rng) -> Mat<Q> {
    let (a, b, c) = (random_q(rng), random_q(rng), random_q(rng));
    let d = (q(1) + b.clone() * &c) / &a;
    crate::ads::mat2(a, b, c, d)
}

/// A point of a named region, in the default chart or the fixed AdS identification.
pub fn region_point(region: &str, rng: &mut ChaCha8Rng) -> Result<EinPoint<Q>> {
    let chart = MinkowskiChart::<Q>::default_chart();
    let emb = |x: [Q; 3]| chart.embed(&x);
    if let Some(filters) = region.strip_prefix("patch where ") {
        let fs: Vec<&str> = filters.split(',').collect();
        for _ in 0..100_000 {
            let x = random_chart_point(rng);
            let mut ok = true;
            for f in &fs {
                ok &= filter_holds(f, &x)?;
            }
            if ok {
                return Ok(emb(x));
            }
        }
        return Err(Error::EmptySample);
    }
    if let Some(idx) = region.strip_prefix("nullcone(").and_then(|s| s.strip_suffix(')')) {
        let idx: Vec<usize> = idx.split(',').map(|s| s.trim().parse::<usize>().map_err(|_| Error::Parse(region.into()))).collect::<Result<_>>()?;
        let neg: Vec<usize> = idx.iter().copied().filter(|&i| i <= 2).collect();
        let pos: Vec<usize> = idx.iter().copied().filter(|&i| i > 2).collect();
        if neg.is_empty() || pos.is_empty() || neg.len() > 2 || pos.len() > 3 {
            return Err(Error::Parse(format!("region {region} has no null vectors to sample")));
        }
        let mut v = vec![q(0); 5];
        for (i, c) in neg.iter().zip(rational_unit(neg.len(), rng)) {
            v[i - 1] = c;
        }
        for (i, c) in pos.iter().zip(rational_unit(pos.len(), rng)) {
            v[i - 1] = c;
        }
        return EinPoint::new(v);
    }
    let t = random_q(rng);
    let u = random_q(rng);
    let h = qf(1, 2);
    let pt = match region {
        "patch" => emb(random_chart_point(rng)),
        "origin" => chart.origin(),
        "x=y" => emb([t.clone(), t, u]),
        "x=-y" => emb([t.clone(), -t, u]),
        "z=0" => loop {
            let x = random_chart_point(rng);
            break emb([x[0].clone(), x[1].clone(), q(0)]);
        },
        "x=0" => loop {
            let x = random_chart_point(rng);
            if x[1].clone() * &x[1] != x[2].clone() * &x[2] {
                break emb([q(0), x[1].clone(), x[2].clone()]);
            }
        },
        "line_L" => emb([t.clone(), t, q(0)]),
        "line_l0" => emb([t.clone(), -t, q(0)]),
        "line_e1" => emb([t, q(0), q(0)]),
        "line_e3" => emb([q(0), q(0), t]),
        "nullcone" => {
            let d = generic_null_r12(rng);
            emb([t.clone() * &d[0], t.clone() * &d[1], t * &d[2]])
        }
        "parabola_S" => {
            let z = (t.clone() - &u) * (t.clone() - &u) / q(2);
            emb([t, u, z])
        }
        "x+y=-1/2" => emb([t.clone(), -h - t, u]),
        "x-y=1/2" => emb([t.clone(), t - h, u]),
        "lightcone" => lightcone_point(&chart, &generic_null_r12(rng), &t),
        "phi" => lightcone_point(&chart, &linalg::vint(&[1, 1, 0]), &t),
        "psi" => lightcone_point(&chart, &linalg::vint(&[1, -1, 0]), &t),
        "S_inf" => lightcone_point(&chart, &generic_null_r12(rng), &q(0)),
        "vertex" => chart.vertex(),
        "ein" => {
            let mut v = rational_unit(2, rng);
            v.extend(rational_unit(3, rng));
            EinPoint::new(v)?
        }
        "ads" => ads_point_embed(&random_sl2(rng))?,
        "ein11" => {
            let (a, b, c, d) = (random_q(rng), random_q(rng), random_q(rng), random_q(rng));
            EinPoint::new(j_embed(&crate::ads::mat2(a.clone() * &c, a * &d, b.clone() * &c, b * &d)))?
        }
        "ein11_phi" => EinPoint::new(j_embed(&crate::ads::mat2(q(0), t, q(0), u)))?,
        "ein11_psi" => EinPoint::new(j_embed(&crate::ads::mat2(t, q(0), u, q(0))))?,
        other => return Err(Error::Parse(format!("unknown region {other:?}"))),
    };
    Ok(pt)
}

fn grid_values(cfg: &SampleConfig) -> Result<Vec<Q>> {
    let step = parse_q(&cfg.grid_step)?;
    if step <= q(0) {
        return Err(Error::BadParameter("grid step must be positive".into()));
    }
    let r = q(cfg.grid_radius);
    let mut out = Vec::new();
    let mut v = -r.clone();
    while v <= r {
        out.push(v.clone());
        v = v + &step;
    }
    Ok(out)
}

/// The sample used for cohomogeneity verdicts: a chart grid, random chart points,
/// lightcone points (generic, on φ, on ψ, and the vertex) and, for AdS entries,
/// an integer SL(2) grid and boundary points.
pub fn scan_points(spec: &SubgroupSpec, cfg: &SampleConfig) -> Result<Vec<(&'static str, EinPoint<Q>)>> {
    if cfg.random_count == 0 {
        return Err(Error::EmptySample);
    }
    let chart = MinkowskiChart::<Q>::default_chart();
    let mut pts = Vec::new();
    let g = grid_values(cfg)?;
    for a in &g {
        for b in &g {
            for c in &g {
                pts.push(("patch", chart.embed(&[a.clone(), b.clone(), c.clone()])));
            }
        }
    }
    let mut rng = rng_for(cfg.rng_seed, &format!("scan:{}", spec.name));
    for _ in 0..cfg.random_count {
        pts.push(("patch", chart.embed(&[random_q(&mut rng), random_q(&mut rng), random_q(&mut rng)])));
    }
    if cfg.include_lightcone {
        let n = cfg.lightcone_count;
        let special = n / 10;
        for _ in 0..n.saturating_sub(2 * special) {
            pts.push(("lightcone", region_point("lightcone", &mut rng)?));
        }
        for _ in 0..special {
            pts.push(("phi", region_point("phi", &mut rng)?));
            pts.push(("psi", region_point("psi", &mut rng)?));
        }
        pts.push(("vertex", chart.vertex()));
    }
    if spec.model == Model::Sl2Pair || spec.table == "AdS" {
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                for c in -2i64..=2 {
                    for d in -2i64..=2 {
                        let m = crate::ads::mat2(q(a), q(b), q(c), q(d));
                        let det = a * d - b * c;
                        if det == 1 {
                            pts.push(("ads", ads_point_embed(&m)?));
                        } else if det == 0 && (a, b, c, d) != (0, 0, 0, 0) {
                            pts.push(("ein11", EinPoint::new(j_embed(&m))?));
                        }
                    }
                }
            }
        }
    }
    let (tags, pts): (Vec<&'static str>, Vec<EinPoint<Q>>) = pts.into_iter().unzip();
    Ok(tags.into_iter().zip(transport_points(spec, pts)?).collect())
}

fn transport_points(spec: &SubgroupSpec, pts: Vec<EinPoint<Q>>) -> Result<Vec<EinPoint<Q>>> {
    match spec.transport_matrix::<Q>()? {
        None => Ok(pts),
        Some(t) => pts.into_iter().map(|p| EinPoint::new(t.apply(p.rep()))).collect(),
    }
}

/// A random rational element of O(2,3): the Cayley transform of a random
/// element of so(2,3), composed with a reflection half of the time.
pub fn random_isometry(rng: &mut ChaCha8Rng) -> Mat<Q> {
    let id = Mat::<Q>::identity(5);
    loop {
        let mut k = Mat::<Q>::zeros(5, 5);
        for i in 0..5 {
            for j in i + 1..5 {
                let c = qf(rng.gen_range(-3..=3), rng.gen_range(1..=4));
                k[(i, j)] = c.clone();
                k[(j, i)] = -c;
            }
        }
        let a = R23.form_matrix::<Q>().mul(&k);
        let Some(inv) = id.sub(&a).inverse(0.0) else { continue };
        let mut g = inv.mul(&id.add(&a));
        if rng.gen_bool(0.5) {
            g = g.mul(&Mat::diag(&linalg::vint(&[1, 1, 1, 1, -1])));
        }
        return g;
    }
}

// ---------------------------------------------------------------------------
// reports

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub entry: String,
    pub check: String,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: expected {}, found {}", self.entry, self.check, self.expected, self.found)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub region: String,
    pub dim: usize,
    pub character: String,
    pub samples: usize,
    /// "dim:character" of every sampled point, with counts.
    pub found: BTreeMap<String, usize>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub entry: String,
    pub table: String,
    pub label: String,
    pub params: BTreeMap<String, String>,
    pub backend: String,
    pub sample_size: usize,
    pub max_dim: usize,
    pub histogram: BTreeMap<String, usize>,
    /// The same counts split by the kind of sample point: patch, lightcone,
    /// phi, psi, vertex, ads, ein11.
    pub regions: BTreeMap<String, BTreeMap<String, usize>>,
    pub cohomogeneity_one: bool,
    pub thm302: Option<bool>,
    pub translation: Option<String>,
    /// Causal characters of the invariant lines found, without repetition.
    pub invariant_lines: Vec<String>,
    pub fixed_points: usize,
    pub claims: Vec<ClaimResult>,
    pub discrepancies: Vec<Discrepancy>,
}

impl OrbitReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

fn hist_key(dim: usize, c: OrbitCharacter) -> String {
    format!("{dim}:{c}")
}

fn to_backend<S: Scalar>(p: &EinPoint<Q>) -> EinPoint<S> {
    let v: Vec<S> = p.rep().iter().map(S::from_q).collect();
    EinPoint::new_eps(v, 1e-9).expect("converted point stays null")
}

fn character_matches(claim: &str, c: OrbitCharacter) -> bool {
    claim == "any" || claim.split('|').any(|alt| alt.trim() == c.name())
}

fn fixed_kind_name(c: VectorCharacter) -> String {
    c.to_string()
}

/// Full analysis of one catalog instance in the backend S.
pub fn analyze<S: Scalar>(spec: &SubgroupSpec, params: &Params, cfg: &SampleConfig) -> Result<OrbitReport> {
    let label = spec.instance_label(params);
    let chart_q = MinkowskiChart::<Q>::default_chart();
    let gens_q = instantiate(spec, params, &chart_q)?;
    let gens: Vec<Mat<S>> = gens_q.iter().map(|m| m.map_into(S::from_q)).collect();
    let mut disc = Vec::new();
    let mut push = |check: &str, expected: String, found: String| {
        disc.push(Discrepancy { entry: label.clone(), check: check.into(), expected, found });
    };

    // structure (always exact: every generator is rational)
    let flat: Vec<Vec<Q>> = gens_q.iter().map(|m| m.rows_vec().concat()).collect();
    let dim = linalg::rank(&flat, 0.0);
    if dim != spec.expected.dim {
        push("dimension", spec.expected.dim.to_string(), dim.to_string());
    }
    if let Err(e) = check_matrix_subalgebra(&gens_q) {
        push("subalgebra", "closed under brackets".into(), e.to_string());
    }
    let mut thm302 = None;
    let mut translation = None;
    if let Some(cg) = spec.conf_generators::<Q>(params)? {
        let pred = thm302_predicate(&cg)?;
        thm302 = Some(pred);
        if pred != spec.expected.cohomogeneity_one {
            push("thm302 predicate", spec.expected.cohomogeneity_one.to_string(), pred.to_string());
        }
        let t = translation_label(&translation_part(&cg)?).to_string();
        if let Some(exp) = &spec.expected.translation {
            if *exp != t {
                push("translation part", exp.clone(), t.clone());
            }
        }
        translation = Some(t);
    }
    let lines = invariant_lines(&gens_q);
    let mut kinds: Vec<String> = lines.iter().map(|l| fixed_kind_name(l.character)).collect();
    kinds.sort();
    kinds.dedup();
    let fixed_points = lines.iter().filter(|l| l.character == VectorCharacter::Lightlike).count();
    match spec.expected.fixed_point_rp4 {
        FixedKind::None => {
            if !lines.is_empty() {
                push("invariant line", "none".into(), kinds.join("|"));
            }
        }
        k => {
            if !kinds.iter().any(|c| *c == k.to_string()) {
                push("invariant line", k.to_string(), if kinds.is_empty() { "none".into() } else { kinds.join("|") });
            }
        }
    }

    // sampled verdict
    let pts = scan_points(spec, cfg)?;
    let results: Vec<(usize, OrbitCharacter)> = pts
        .par_iter()
        .map(|(_, p)| {
            let t = tangent_at_eps(&gens, &to_backend::<S>(p), cfg.eps);
            (t.dim, t.character)
        })
        .collect();
    let mut histogram = BTreeMap::new();
    let mut regions: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
    for ((tag, _), (d, c)) in pts.iter().zip(&results) {
        *histogram.entry(hist_key(*d, *c)).or_insert(0) += 1;
        *regions.entry(tag.to_string()).or_default().entry(hist_key(*d, *c)).or_insert(0) += 1;
    }
    let max_dim = results.iter().map(|r| r.0).max().unwrap_or(0);
    let coh = results.iter().any(|r| r.0 == 2);
    if coh != spec.expected.cohomogeneity_one {
        push("cohomogeneity one", spec.expected.cohomogeneity_one.to_string(), coh.to_string());
    }

    // orbit claims
    let mut claims = Vec::new();
    for (i, c) in spec.expected.orbit_summary.iter().enumerate() {
        let r = check_claim::<S>(spec, &gens, c, cfg, i)?;
        if !r.passed {
            let found: Vec<String> = r.found.iter().map(|(k, v)| format!("{k}×{v}")).collect();
            push(&format!("orbit of {}", c.region), format!("{}:{}", c.dim, c.character), found.join(" "));
        }
        claims.push(r);
    }

    Ok(OrbitReport {
        entry: spec.name.clone(),
        table: spec.table.clone(),
        label: label.clone(),
        params: params.iter().map(|(k, v)| (k.clone(), fmt_q(v))).collect(),
        backend: S::NAME.to_string(),
        sample_size: pts.len(),
        max_dim,
        histogram,
        regions,
        cohomogeneity_one: coh,
        thm302,
        translation,
        invariant_lines: kinds,
        fixed_points,
        claims,
        discrepancies: disc,
    })
}

fn check_claim<S: Scalar>(spec: &SubgroupSpec, gens: &[Mat<S>], c: &Claim, cfg: &SampleConfig, idx: usize) -> Result<ClaimResult> {
    let mut rng = rng_for(cfg.rng_seed, &format!("claim:{}:{idx}", spec.name));
    let n = if matches!(c.region.as_str(), "origin" | "vertex") { 1 } else { cfg.claim_samples.max(1) };
    let pts: Vec<EinPoint<Q>> = (0..n).map(|_| region_point(&c.region, &mut rng)).collect::<Result<_>>()?;
    let pts = transport_points(spec, pts)?;
    let mut found = BTreeMap::new();
    let mut passed = true;
    for p in &pts {
        let t = tangent_at_eps(gens, &to_backend::<S>(p), cfg.eps);
        passed &= t.dim == c.dim && character_matches(&c.character, t.character);
        *found.entry(hist_key(t.dim, t.character)).or_insert(0) += 1;
    }
    Ok(ClaimResult { region: c.region.clone(), dim: c.dim, character: c.character.clone(), samples: pts.len(), found, passed })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl std::str::FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            other => Err(Error::Parse(format!("unknown backend {other:?}"))),
        }
    }
}

pub fn analyze_with(backend: Backend, spec: &SubgroupSpec, params: &Params, cfg: &SampleConfig) -> Result<OrbitReport> {
    match backend {
        Backend::Exact => analyze::<Q>(spec, params, cfg),
        Backend::Float => analyze::<f64>(spec, params, cfg),
    }
}

/// Every entry at every parameter sample.
pub fn verify_catalog(catalog: &Catalog, backend: Backend, cfg: &SampleConfig) -> Result<Vec<OrbitReport>> {
    let mut out = Vec::new();
    for spec in catalog.filter(None) {
        for params in spec.param_samples()? {
            out.push(analyze_with(backend, spec, &params, cfg)?);
        }
    }
    Ok(out)
}

/// Chart and ambient tangent computations agree at `n` random chart points.
/// Returns the points where they disagree.
pub fn chart_ambient_mismatches(spec: &SubgroupSpec, params: &Params, n: usize, seed: u64) -> Result<Vec<[Q; 3]>> {
    let Some(cg) = spec.conf_generators::<Q>(params)? else { return Ok(Vec::new()) };
    let chart = MinkowskiChart::<Q>::default_chart();
    let gens = instantiate(spec, params, &chart)?;
    let mut rng = rng_for(seed, &format!("chart:{}", spec.name));
    let pts: Vec<[Q; 3]> = (0..n).map(|_| [random_q(&mut rng), random_q(&mut rng), random_q(&mut rng)]).collect();
    Ok(pts
        .into_par_iter()
        .filter(|x| {
            let a = chart_tangent_at(&cg, x);
            let b = tangent_at(&gens, &chart.embed(x));
            a.dim != b.dim || a.signature != b.signature
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::{classify_kernel, KernelElement};

    fn conf(l: i64, x: [i64; 3], v: [i64; 3]) -> ConfAlgElement<Q> {
        ConfAlgElement::new(q(l), [q(x[0]), q(x[1]), q(x[2])], [q(v[0]), q(v[1]), q(v[2])])
    }

    #[test]
    fn character_map() {
        assert_eq!(OrbitCharacter::of(Signature::new(0, 0, 0)), OrbitCharacter::Point);
        assert_eq!(OrbitCharacter::of(Signature::new(0, 1, 0)), OrbitCharacter::Spacelike);
        assert_eq!(OrbitCharacter::of(Signature::new(1, 0, 0)), OrbitCharacter::Timelike);
        assert_eq!(OrbitCharacter::of(Signature::new(0, 0, 1)), OrbitCharacter::Lightlike);
        assert_eq!(OrbitCharacter::of(Signature::new(1, 1, 0)), OrbitCharacter::Lorentzian);
        assert_eq!(OrbitCharacter::of(Signature::new(0, 2, 0)), OrbitCharacter::Spacelike);
        assert_eq!(OrbitCharacter::of(Signature::new(0, 1, 1)), OrbitCharacter::Degenerate);
        assert_eq!(OrbitCharacter::of(Signature::new(1, 2, 0)), OrbitCharacter::Open);
    }

    #[test]
    fn empty_generators_fix_everything() {
        let chart = MinkowskiChart::<Q>::default_chart();
        let t = tangent_at::<Q>(&[], &chart.embed(&[q(1), q(2), q(3)]));
        assert_eq!(t.dim, 0);
        assert_eq!(t.character, OrbitCharacter::Point);
    }

    #[test]
    fn chart_tangent_examples() {
        let x = [qf(3, 7), qf(-5, 11), qf(2, 13)];
        let t = chart_tangent_at(&[conf(0, [0, 1, 0], [0, 0, 1])], &x);
        assert!(t.contains(&[x[1].clone(), x[0].clone(), q(1)]));
        let t = chart_tangent_at(&[conf(1, [0, 1, 0], [1, 0, 0])], &x);
        let s = x[0].clone() + &x[1];
        assert!(t.contains(&[s.clone() + q(1), s, x[2].clone()]));
    }

    #[test]
    fn aff_special_chart() {
        let o = [q(0), q(0), q(0)];
        let t = aff_irreducible_tangent(&o);
        assert_eq!(t.dim, 1);
        assert_eq!(t.character, OrbitCharacter::Lightlike);
        assert!(t.contains(&[q(0), q(-4), q(0)]));
        let p = [qf(1, 3), q(2), qf(-1, 5)];
        assert_eq!(aff_irreducible_orbit(&p, &q(1), &q(0)), p);
        let t = aff_irreducible_tangent(&p);
        let [x, y, z] = p.clone();
        assert!(t.contains(&[q(-2) * &z, q(-4), q(-3) * &y]));
        assert!(t.contains(&[q(6) * &x, q(2) * &y, q(4) * &z]));
    }

    #[test]
    fn aff_group_law() {
        let p = [qf(2, 7), qf(-3, 5), qf(1, 3)];
        let (t1, s1, t2, s2) = (qf(3, 2), qf(-1, 4), qf(2, 5), qf(7, 3));
        let lhs = aff_irreducible_orbit(&aff_irreducible_orbit(&p, &t1, &s1), &t2, &s2);
        let rhs = aff_irreducible_orbit(&p, &(t1.clone() * &t2), &(s1 * &t2 + s2 / &t1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn translation_parts() {
        let c = Catalog::builtin();
        let chart_free = |name: &str| c.lookup(name).unwrap().conf_generators::<Q>(&Params::new()).unwrap().unwrap();
        let t = translation_part(&chart_free("Table4:Aff⋉Pi_phi")).unwrap();
        assert_eq!(t.signature(), Signature::new(0, 1, 1));
        assert_eq!(translation_part(&chart_free("Table8:SO0(1,2)")).unwrap().dim(), 0);
        assert_eq!(translation_part(&chart_free("Table1:R12")).unwrap().dim(), 3);
        assert!(!thm302_predicate(&chart_free("Table1:R12")).unwrap());
        assert!(!thm302_predicate(&chart_free("Table1:R+*⋉R12")).unwrap());
        assert!(thm302_predicate(&chart_free("Table4:Aff⋉Pi_phi")).unwrap());
        // E and H alone do not close
        let bad = vec![conf(0, [1, 0, 0], [0, 0, 0]), conf(0, [0, 1, 0], [0, 0, 0])];
        assert!(matches!(translation_part(&bad), Err(Error::NotSubalgebra(_))));
    }

    #[test]
    fn invariant_lines_examples() {
        let c = Catalog::builtin();
        let chart = MinkowskiChart::<Q>::default_chart();
        let gens = |name: &str| instantiate(c.lookup(name).unwrap(), &Params::new(), &chart).unwrap();
        let so3 = invariant_lines(&gens("Compact:SO(3)"));
        assert!(!so3.is_empty() && so3.iter().all(|l| l.character == VectorCharacter::Timelike));
        let aff = invariant_lines(&gens("Table4:Aff⋉Pi_phi"));
        assert!(aff.iter().any(|l| linalg::rank(&[l.vector.clone(), chart.p().to_vec()], 0.0) == 1));
        assert!(fixed_points_in_ein(&gens("dS:SO0(1,3)")).is_empty());
        assert!(fixed_points_in_ein(&gens("AdS:Y_E×Y_H")).is_empty());
        let k = invariant_planes(&gens("K"), false);
        assert!(k.iter().any(|p| p.is_totally_isotropic()));
        let sl2aff = invariant_planes(&gens("AdS:SL2×Aff"), true);
        assert!(sl2aff.iter().any(|p| p.is_totally_isotropic()));
    }

    #[test]
    fn kernel_fixed_sets_match_rules() {
        let chart = MinkowskiChart::<Q>::default_chart();
        let vals = [qf(-1, 1), qf(-1, 2), q(0), qf(1, 2), q(1)];
        for t in [-1i64, 0, 1] {
            for s in &vals {
                for u in [q(0), qf(1, 2)] {
                    for v in [q(0), q(-1)] {
                        let k = KernelElement::new(q(t), s.clone(), u.clone(), v.clone(), 1).unwrap();
                        let g = k.to_so23(&chart).unwrap();
                        let (class, disjoint) = kernel_fixed_class(&g, &chart);
                        assert_eq!(class, classify_kernel(&k), "t={t} s={s} u={u} v={v}");
                        if class == KernelClass::HTransformation {
                            assert_eq!(disjoint.len(), 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn regions_lie_where_named() {
        let chart = MinkowskiChart::<Q>::default_chart();
        let mut rng = rng_for(0, "regions");
        for _ in 0..10 {
            let x = chart.project(&region_point("x=y", &mut rng).unwrap()).unwrap();
            assert_eq!(x[0], x[1]);
            let x = chart.project(&region_point("nullcone", &mut rng).unwrap()).unwrap();
            assert_eq!(q12(&x), q(0));
            let x = chart.project(&region_point("patch where q>0, |y|>|x|", &mut rng).unwrap()).unwrap();
            assert!(q12(&x) > q(0));
            let p = region_point("phi", &mut rng).unwrap();
            assert!(crate::einstein::on_lightcone(&chart.vertex(), &p));
            let p = region_point("nullcone(1,2,5)", &mut rng).unwrap();
            assert!(p.rep()[2] == q(0) && p.rep()[3] == q(0));
        }
        assert!(region_point("nowhere", &mut rng).is_err());
    }
}
