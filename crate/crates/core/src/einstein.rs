//! Ein^{1,2} as the projectivized nullcone of R^{2,3}: points, photons, lightcones,
//! Minkowski charts and the hypersurfaces cut out by linear subspaces.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{self, vadd, vaxpy, vscale, vzero};
use crate::qspace::{QuadSpace, Signature, Subspace, VectorCharacter, DEFAULT_EPS};
use crate::scalar::{Scalar, Q};

pub const R23: QuadSpace = QuadSpace::r23();
pub const R12: QuadSpace = QuadSpace::r12();

/// A point of Ein^{1,2}: a null line in R^{2,3}, stored by a canonical representative.
///
/// Float points use the double-cover normalization (both blocks of unit norm, first
/// clearly nonzero entry positive). Exact points are scaled so their first nonzero
/// entry is 1, since the double-cover norm is irrational for most rational points.
#[derive(Clone, Debug)]
pub struct EinPoint<S> {
    rep: Vec<S>,
}

impl<S: Scalar> EinPoint<S> {
    pub fn new(v: Vec<S>) -> Result<Self> {
        Self::new_eps(v, DEFAULT_EPS)
    }

    pub fn new_eps(v: Vec<S>, eps: f64) -> Result<Self> {
        if v.len() != 5 {
            return Err(Error::DimensionMismatch { expected: 5, got: v.len() });
        }
        let m = linalg::max_abs(&v);
        if S::EXACT && linalg::is_zero_vec(&v, 0.0) || !S::EXACT && m <= eps {
            return Err(Error::ZeroVector);
        }
        let tol = if S::EXACT { 0.0 } else { eps * m * m * 10.0 };
        if !R23.norm2(&v).is_zero_eps(tol) {
            return Err(Error::NotNull);
        }
        Ok(EinPoint { rep: canonical(&v) })
    }

    pub fn rep(&self) -> &[S] {
        &self.rep
    }

    pub fn into_rep(self) -> Vec<S> {
        self.rep
    }

    /// Same projective point (parallel representatives).
    pub fn same(&self, other: &EinPoint<S>) -> bool {
        if S::EXACT {
            self.rep == other.rep
        } else {
            linalg::rank(&[self.rep.clone(), other.rep.clone()], 1e-8) == 1
        }
    }

    pub fn key(&self) -> String {
        self.rep.iter().map(|x| x.key()).collect::<Vec<_>>().join(",")
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.rep.iter().map(|x| x.to_json()).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("EinPoint must be an array".into()))?;
        let rep = arr.iter().map(S::from_json).collect::<Result<Vec<S>>>()?;
        Self::new(rep)
    }

    pub fn to_f64(&self) -> EinPoint<f64> {
        EinPoint { rep: canonical(&self.rep.iter().map(|x| x.to_f64()).collect::<Vec<f64>>()) }
    }
}

impl<S: Scalar> PartialEq for EinPoint<S> {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl<S: Scalar> fmt::Display for EinPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rep.iter().map(|x| x.show()).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

fn canonical<S: Scalar>(v: &[S]) -> Vec<S> {
    if S::EXACT {
        return linalg::normalize(v, 0.0).expect("nonzero");
    }
    let x: Vec<f64> = v.iter().map(|a| a.to_f64()).collect();
    let n = ((x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3] + x[4] * x[4]) / 2.0).sqrt();
    let mut y: Vec<f64> = x.iter().map(|a| a / n).collect();
    if let Some(first) = y.iter().find(|a| a.abs() > 1e-9) {
        if *first < 0.0 {
            y.iter_mut().for_each(|a| *a = -*a);
        }
    }
    y.into_iter().map(S::from_f64).collect()
}

/// Coordinates on S^1 x S^2 of the point, for the representative with
/// positive orientation under the canonical sign rule.
pub fn double_cover_coords<S: Scalar>(x: &EinPoint<S>) -> Result<(Vec<S>, Vec<S>)> {
    let r = x.rep();
    let n2 = r[0].clone() * &r[0] + r[1].clone() * &r[1];
    let n = n2.sqrt_opt().ok_or_else(|| Error::Irrational(format!("block norm^2 = {}", n2.show())))?;
    let a = vec![r[0].clone() / &n, r[1].clone() / &n];
    let b = vec![r[2].clone() / &n, r[3].clone() / &n, r[4].clone() / &n];
    Ok((a, b))
}

pub fn on_lightcone<S: Scalar>(vertex: &EinPoint<S>, x: &EinPoint<S>) -> bool {
    let tol = R23.tol_for(&[vertex.rep(), x.rep()]);
    R23.dot(vertex.rep(), x.rep()).is_zero_eps(tol)
}

/// A photon: the projectivization of a totally isotropic 2-plane.
#[derive(Clone, Debug)]
pub struct Photon<S> {
    plane: Subspace<S>,
}

impl<S: Scalar> Photon<S> {
    pub fn new(plane: Subspace<S>) -> Result<Self> {
        if plane.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: plane.dim() });
        }
        if !plane.is_totally_isotropic() {
            return Err(Error::InvalidElement("photon plane is not totally isotropic".into()));
        }
        Ok(Photon { plane })
    }

    pub fn through(a: &EinPoint<S>, b: &EinPoint<S>) -> Result<Self> {
        Self::new(Subspace::new(R23, vec![a.rep().to_vec(), b.rep().to_vec()])?)
    }

    pub fn plane(&self) -> &Subspace<S> {
        &self.plane
    }

    pub fn contains(&self, x: &EinPoint<S>) -> bool {
        self.plane.contains(x.rep())
    }

    /// The point [a + t b] for the stored basis (a, b).
    pub fn point(&self, t: &S) -> EinPoint<S> {
        let b = self.plane.basis();
        EinPoint::new(vaxpy(&b[0], t, &b[1])).expect("isotropic plane")
    }
}

/// A Minkowski chart: the complement of the lightcone of [p], identified with R^{1,2}
/// through x -> [q + x^1 f1 + x^2 f2 + x^3 f3 + (q12(x)/2) p].
#[derive(Clone, Debug, PartialEq)]
pub struct MinkowskiChart<S> {
    p: Vec<S>,
    q: Vec<S>,
    frame: [Vec<S>; 3],
}

impl<S: Scalar> MinkowskiChart<S> {
    pub fn new(p: Vec<S>, q: Vec<S>, frame: [Vec<S>; 3]) -> Result<Self> {
        for v in [&p, &q, &frame[0], &frame[1], &frame[2]] {
            if v.len() != 5 {
                return Err(Error::DimensionMismatch { expected: 5, got: v.len() });
            }
        }
        let tol = R23.tol_for(&[&p, &q]).max(if S::EXACT { 0.0 } else { 1e-9 });
        let bad = |what: &str| Err(Error::InvalidElement(format!("chart: {what}")));
        if !R23.norm2(&p).is_zero_eps(tol) || !R23.norm2(&q).is_zero_eps(tol) {
            return bad("p and q must be null");
        }
        if !(R23.dot(&p, &q) + S::one()).is_zero_eps(tol) {
            return bad("<p,q> must be -1");
        }
        for (i, f) in frame.iter().enumerate() {
            if !R23.dot(&p, f).is_zero_eps(tol) || !R23.dot(&q, f).is_zero_eps(tol) {
                return bad("frame must be orthogonal to p and q");
            }
            for (j, g) in frame.iter().enumerate() {
                let want = if i != j { 0 } else if i == 0 { -1 } else { 1 };
                if !(R23.dot(f, g) - S::from_i64(want)).is_zero_eps(tol) {
                    return bad("frame Gram matrix must be diag(-1,1,1)");
                }
            }
        }
        Ok(MinkowskiChart { p, q, frame })
    }

    /// p = e1 + e4, q = (e1 - e4)/2, frame (e2, e3, e5).
    pub fn default_chart() -> Self {
        let h = S::from_ratio(1, 2);
        let p = linalg::vint(&[1, 0, 0, 1, 0]);
        let q = vec![h.clone(), S::zero(), S::zero(), -h, S::zero()];
        let frame = [linalg::unit(5, 1), linalg::unit(5, 2), linalg::unit(5, 4)];
        MinkowskiChart { p, q, frame }
    }

    pub fn p(&self) -> &[S] {
        &self.p
    }
    pub fn q(&self) -> &[S] {
        &self.q
    }
    pub fn frame(&self) -> &[Vec<S>; 3] {
        &self.frame
    }

    pub fn vertex(&self) -> EinPoint<S> {
        EinPoint::new(self.p.clone()).expect("null p")
    }

    pub fn origin(&self) -> EinPoint<S> {
        EinPoint::new(self.q.clone()).expect("null q")
    }

    /// x^1 f1 + x^2 f2 + x^3 f3.
    pub fn lift(&self, x: &[S]) -> Vec<S> {
        let mut acc = vzero(5);
        for (xi, f) in x.iter().zip(&self.frame) {
            if !xi.is_zero_exact() {
                acc = vaxpy(&acc, xi, f);
            }
        }
        acc
    }

    /// The unnormalized representative q + lift(x) + (q12(x)/2) p.
    pub fn embed_vec(&self, x: &[S]) -> Vec<S> {
        let half_q = R12.norm2(x) / S::from_i64(2);
        vaxpy(&vadd(&self.q, &self.lift(x)), &half_q, &self.p)
    }

    pub fn embed(&self, x: &[S]) -> EinPoint<S> {
        EinPoint::new(self.embed_vec(x)).expect("chart image is null")
    }

    /// Frame coordinates of a representative, without the p-normalization.
    pub fn frame_coords(&self, v: &[S]) -> [S; 3] {
        [-R23.dot(v, &self.frame[0]), R23.dot(v, &self.frame[1]), R23.dot(v, &self.frame[2])]
    }

    /// Inverse of `embed` on the complement of the lightcone of [p].
    pub fn project_vec(&self, v: &[S]) -> Result<[S; 3]> {
        let a = R23.dot(v, &self.p);
        let tol = if S::EXACT { 0.0 } else { R23.eps.max(1e-12) * linalg::max_abs(v).max(1.0) };
        if a.is_zero_eps(tol) {
            return Err(Error::OnLightcone);
        }
        let s = -(S::one() / a);
        let v = vscale(v, &s);
        Ok(self.frame_coords(&v))
    }

    pub fn project(&self, e: &EinPoint<S>) -> Result<[S; 3]> {
        self.project_vec(e.rep())
    }

    /// Projective limit of embed(base + t dir) as t -> ±∞ for lightlike dir.
    pub fn limit_point(&self, base: &[S], dir: &[S]) -> Result<EinPoint<S>> {
        if R12.causal_character(dir)? != VectorCharacter::Lightlike {
            return Err(Error::NotLightlike);
        }
        let c = R12.dot(base, dir);
        EinPoint::new(vaxpy(&self.lift(dir), &c, &self.p))
    }

    pub fn to_json(&self) -> Value {
        let enc = |v: &[S]| Value::Array(v.iter().map(|x| x.to_json()).collect());
        json!({
            "p": enc(&self.p),
            "q": enc(&self.q),
            "frame": self.frame.iter().map(|f| enc(f)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let vec5 = |x: &Value| -> Result<Vec<S>> {
            x.as_array().ok_or_else(|| Error::Parse("chart vectors must be arrays".into()))?.iter().map(S::from_json).collect()
        };
        let p = vec5(&v["p"])?;
        let q = vec5(&v["q"])?;
        let fr = v["frame"].as_array().ok_or_else(|| Error::Parse("chart frame must be an array".into()))?;
        if fr.len() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, got: fr.len() });
        }
        Self::new(p, q, [vec5(&fr[0])?, vec5(&fr[1])?, vec5(&fr[2])?])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypersurfaceKind {
    EinsteinHypersphere,
    SpacelikeHypersphere,
    TimelikeCircle,
    IdealCircle,
    Lightcone,
}

#[derive(Clone, Debug)]
pub enum Datum<S> {
    Vector(Vec<S>),
    Subspace(Subspace<S>),
    Point(EinPoint<S>),
}

/// A locus P(W ∩ N) or P(v^⊥ ∩ N) cut out of Ein^{1,2} by linear data.
#[derive(Clone, Debug)]
pub struct HypersurfaceDescriptor<S> {
    pub kind: HypersurfaceKind,
    pub datum: Datum<S>,
}

impl<S: Scalar> HypersurfaceDescriptor<S> {
    pub fn new(kind: HypersurfaceKind, datum: Datum<S>) -> Result<Self> {
        use HypersurfaceKind::*;
        let ok = match (&kind, &datum) {
            (EinsteinHypersphere, Datum::Vector(v)) => R23.causal_character(v)? == VectorCharacter::Spacelike,
            (SpacelikeHypersphere, Datum::Vector(v)) => R23.causal_character(v)? == VectorCharacter::Timelike,
            (TimelikeCircle, Datum::Subspace(w)) => w.dim() == 3 && w.signature() == Signature::new(2, 1, 0),
            (IdealCircle, Datum::Subspace(w)) => w.dim() == 3 && w.signature() == Signature::new(1, 2, 0),
            (Lightcone, Datum::Point(_)) => true,
            _ => false,
        };
        if !ok {
            return Err(Error::InvalidElement(format!("{kind:?}: datum has the wrong type or signature")));
        }
        Ok(HypersurfaceDescriptor { kind, datum })
    }

    pub fn contains(&self, x: &EinPoint<S>) -> bool {
        match &self.datum {
            Datum::Vector(v) => R23.dot(x.rep(), v).is_zero_eps(R23.tol_for(&[x.rep(), v])),
            Datum::Subspace(w) => w.contains(x.rep()),
            Datum::Point(p) => on_lightcone(p, x),
        }
    }
}

/// Exact null vector sampler: a rational point on the unit circle from a slope.
pub fn circle_point(m: &Q) -> (Q, Q) {
    let one = <Q as Scalar>::one();
    let d = one.clone() + m * m;
    ((one - m * m) / &d, (Q::from_integer(2.into()) * m) / d)
}

/// Rational point on the unit sphere S^2 from two slopes (inverse stereographic).
pub fn sphere_point(u: &Q, v: &Q) -> (Q, Q, Q) {
    let one = <Q as Scalar>::one();
    let two = Q::from_integer(2.into());
    let d = one.clone() + u * u + v * v;
    ((two.clone() * u) / &d, (two * v) / &d, (u * u + v * v - one) / d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vint;
    use crate::scalar::{q, qf};

    fn ep(v: &[i64]) -> EinPoint<Q> {
        EinPoint::new(vint(v)).unwrap()
    }

    #[test]
    fn double_cover_examples() {
        let (a, b) = double_cover_coords(&ep(&[1, 0, 1, 0, 0])).unwrap();
        assert_eq!(a, vec![q(1), q(0)]);
        assert_eq!(b, vec![q(1), q(0), q(0)]);
        let (a, b) = double_cover_coords(&ep(&[2, 0, 0, 2, 0])).unwrap();
        assert_eq!(a, vec![q(1), q(0)]);
        assert_eq!(b, vec![q(0), q(1), q(0)]);
        // irrational block norm is reported, not rounded
        assert!(double_cover_coords(&ep(&[1, 1, 1, 1, 0])).is_err());
        let f = EinPoint::<f64>::new(vint(&[1, 1, 1, 1, 0])).unwrap();
        let (a, b) = double_cover_coords(&f).unwrap();
        let na: f64 = a.iter().map(|x| x * x).sum();
        let nb: f64 = b.iter().map(|x| x * x).sum();
        assert!((na - 1.0).abs() < 1e-12 && (nb - 1.0).abs() < 1e-12);
    }

    #[test]
    fn points_are_projective() {
        assert_eq!(ep(&[1, 0, 1, 0, 0]), ep(&[-3, 0, -3, 0, 0]));
        assert!(EinPoint::<Q>::new(vint(&[1, 0, 0, 0, 0])).is_err());
        assert!(EinPoint::<Q>::new(vint(&[0, 0, 0, 0, 0])).is_err());
    }

    #[test]
    fn default_chart_is_valid_and_roundtrips() {
        let c = MinkowskiChart::<Q>::default_chart();
        let c2 = MinkowskiChart::new(c.p().to_vec(), c.q().to_vec(), c.frame().clone()).unwrap();
        assert_eq!(c, c2);
        assert_eq!(c.project(&c.origin()).unwrap(), [q(0), q(0), q(0)]);
        let x = [qf(1, 3), qf(-5, 2), q(7)];
        let e = c.embed(&x);
        assert!(!on_lightcone(&c.vertex(), &e));
        assert_eq!(c.project(&e).unwrap(), x);
        assert_eq!(c.project(&c.vertex()), Err(Error::OnLightcone));
        let back = MinkowskiChart::<Q>::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn limit_points() {
        let c = MinkowskiChart::<Q>::default_chart();
        let d = vint(&[1, 1, 0]);
        let o = vint(&[0, 0, 0]);
        let l = c.limit_point(&o, &d).unwrap();
        assert_eq!(l, EinPoint::new(c.lift(&d)).unwrap());
        assert!(on_lightcone(&c.vertex(), &l));
        assert!(!l.same(&c.vertex()));
        let shifted = vaxpy(&vint(&[2, 0, 5]), &q(3), &d);
        assert_eq!(c.limit_point(&vint(&[2, 0, 5]), &d).unwrap(), c.limit_point(&shifted, &d).unwrap());
        assert!(c.limit_point(&o, &vint(&[1, 0, 0])).is_err());
    }

    #[test]
    fn hypersurfaces() {
        let x = ep(&[1, 0, 1, 0, 0]);
        let h = HypersurfaceDescriptor::new(HypersurfaceKind::EinsteinHypersphere, Datum::Vector(vint(&[0, 0, 0, 0, 1]))).unwrap();
        assert!(h.contains(&x));
        let s = HypersurfaceDescriptor::new(HypersurfaceKind::SpacelikeHypersphere, Datum::Vector(vint(&[1, 0, 0, 0, 0]))).unwrap();
        assert!(!s.contains(&x));
        assert!(HypersurfaceDescriptor::<Q>::new(HypersurfaceKind::SpacelikeHypersphere, Datum::Vector(vint(&[0, 0, 1, 0, 0]))).is_err());
        let w = Subspace::new(R23, vec![vint(&[1, 0, 0, 0, 0]), vint(&[0, 1, 0, 0, 0]), vint(&[0, 0, 1, 0, 0])]).unwrap();
        let t = HypersurfaceDescriptor::new(HypersurfaceKind::TimelikeCircle, Datum::Subspace(w)).unwrap();
        assert!(t.contains(&x));
        assert!(!t.contains(&ep(&[1, 0, 0, 1, 0])));
    }

    #[test]
    fn rational_spheres() {
        let (a, b) = circle_point(&qf(2, 3));
        assert_eq!(a.clone() * &a + b.clone() * &b, q(1));
        let (x, y, z) = sphere_point(&qf(1, 2), &qf(-3, 5));
        assert_eq!(x.clone() * &x + y.clone() * &y + z.clone() * &z, q(1));
    }
}
