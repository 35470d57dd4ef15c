//! The anti-de Sitter model: (M(2,R), -det) identified with span(e1..e4) in R^{2,3},
//! SL(2,R) as AdS^{1,2} and the singular matrices as the boundary Ein^{1,1}.
//!
//! The identification J is fixed once:
//! Id -> e1, [[0,1],[-1,0]] -> e2, [[1,0],[0,-1]] -> e3, [[0,1],[1,0]] -> e4,
//! and the orthogonal spacelike line is e5.

use crate::einstein::EinPoint;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::scalar::Scalar;

pub fn mat2<S: Scalar>(a: S, b: S, c: S, d: S) -> Mat<S> {
    Mat::from_rows(&[vec![a, b], vec![c, d]]).expect("2x2")
}

fn check2<S: Scalar>(m: &Mat<S>) -> Result<()> {
    if m.nrows() != 2 || m.ncols() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: m.nrows().max(m.ncols()) });
    }
    Ok(())
}

/// Polarization of -det: -(tr U tr V - tr(UV))/2.
pub fn ads_form<S: Scalar>(u: &Mat<S>, v: &Mat<S>) -> S {
    -((u.trace() * v.trace() - u.mul(v).trace()) / S::from_i64(2))
}

/// Coordinates of a 2x2 matrix in R^{2,3} (e5 component zero).
pub fn j_embed<S: Scalar>(m: &Mat<S>) -> Vec<S> {
    let two = S::from_i64(2);
    let (p11, p12, p21, p22) = (&m[(0, 0)], &m[(0, 1)], &m[(1, 0)], &m[(1, 1)]);
    vec![
        (p11.clone() + p22) / &two,
        (p12.clone() - p21) / &two,
        (p11.clone() - p22) / &two,
        (p12.clone() + p21) / &two,
        S::zero(),
    ]
}

pub fn j_inverse<S: Scalar>(v: &[S]) -> Mat<S> {
    let (a, b, c, d) = (&v[0], &v[1], &v[2], &v[3]);
    mat2(a.clone() + c, b.clone() + d, d.clone() - b, a.clone() - c)
}

pub fn ads_point_embed<S: Scalar>(p: &Mat<S>) -> Result<EinPoint<S>> {
    check2(p)?;
    let det = p.det();
    if !(det - S::one()).is_zero_eps(1e-9) {
        return Err(Error::InvalidElement("AdS point must have det 1".into()));
    }
    let mut v = j_embed(p);
    v[4] = S::one();
    EinPoint::new(v)
}

pub fn ads_boundary_embed<S: Scalar>(x: &Mat<S>) -> Result<EinPoint<S>> {
    check2(x)?;
    if !x.det().is_zero_eps(1e-9) {
        return Err(Error::InvalidElement("boundary point must be singular".into()));
    }
    EinPoint::new(j_embed(x))
}

/// The SL(2,R) point represented by an Ein point off the boundary hypersphere.
pub fn ads_point_of<S: Scalar>(x: &EinPoint<S>) -> Option<Mat<S>> {
    let r = x.rep();
    if r[4].is_zero_eps(1e-12) {
        return None;
    }
    let s = r[4].clone();
    Some(j_inverse(&r[..4].iter().map(|a| a.clone() / &s).collect::<Vec<_>>()))
}

/// Canonical representative of a point of RP^1.
pub fn rp1<S: Scalar>(v: Vec<S>) -> Vec<S> {
    linalg::normalize(&v, 1e-12).expect("nonzero RP^1 vector")
}

/// ([ker X], [Im X]) for a nonzero singular 2x2 matrix.
pub fn ein11_coords<S: Scalar>(x: &Mat<S>) -> Result<(Vec<S>, Vec<S>)> {
    check2(x)?;
    let eps = 1e-10;
    if x.is_zero_eps(eps) {
        return Err(Error::ZeroVector);
    }
    if !x.det().is_zero_eps(eps) {
        return Err(Error::InvalidElement("matrix is not singular".into()));
    }
    let (a, b, c, d) = (&x[(0, 0)], &x[(0, 1)], &x[(1, 0)], &x[(1, 1)]);
    let ker = if a.is_zero_eps(eps) && b.is_zero_eps(eps) { vec![-d.clone(), c.clone()] } else { vec![-b.clone(), a.clone()] };
    let im = if a.is_zero_eps(eps) && c.is_zero_eps(eps) { vec![b.clone(), d.clone()] } else { vec![a.clone(), c.clone()] };
    Ok((rp1(ker), rp1(im)))
}

/// The so(2,3) matrix of the vector field P -> XP - PY, acting on span(e1..e4)
/// and killing e5.
pub fn sl2_pair_to_so23<S: Scalar>(x: &Mat<S>, y: &Mat<S>) -> Mat<S> {
    let mut m = Mat::zeros(5, 5);
    for k in 0..4 {
        let pk = j_inverse(&linalg::unit::<S>(4, k));
        let img = j_embed(&x.mul(&pk).sub(&pk.mul(y)));
        for i in 0..5 {
            m[(i, k)] = img[i].clone();
        }
    }
    m
}
