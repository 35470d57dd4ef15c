//! Tangent vectors as printed in the orbit narratives, each paired with the
//! catalog entry whose orbit they describe.

use einkit_core::ads::{ads_point_of, mat2};
use einkit_core::catalog::{Catalog, Params};
use einkit_core::liecore::ConfAlgElement;
use einkit_core::linalg::Mat;
use einkit_core::orbits::{ads_tangent_at, aff_irreducible_tangent, chart_tangent_at, random_chart_point, region_point, rng_for, translation_part};
use einkit_core::scalar::q;
use einkit_core::Q;

type V3 = [Q; 3];

pub enum Field {
    /// Minkowski chart of the entry, (x, y, z) and the parameter a. The
    /// vector is checked against the one-parameter group that induces it
    /// together with the translation part of the entry.
    Chart(fn(&V3, &Q) -> V3, Inducer),
    /// The special chart of the irreducible affine group.
    AffChart(fn(&V3) -> V3),
    /// AdS as SL(2,R), the point P and the parameter lambda.
    Ads(fn(&Mat<Q>, &Q) -> Mat<Q>),
}

pub struct Formula {
    pub text: &'static str,
    pub entry: &'static str,
    pub param: Option<(&'static str, &'static str)>,
    pub field: Field,
}

fn c(x: &V3) -> (Q, Q, Q) {
    (x[0].clone(), x[1].clone(), x[2].clone())
}

/// lambda, linear part in the (E, H, P) basis, translation; `a` stands in
/// for lambda when `None`.
pub type Inducer = (Option<i64>, [i64; 3], [i64; 3]);

fn g(l: i64, x: [i64; 3], v: [i64; 3]) -> Inducer {
    (Some(l), x, v)
}

fn ga(x: [i64; 3]) -> Inducer {
    (None, x, [0, 0, 0])
}

fn f(text: &'static str, by: Inducer, entry: &'static str, param: Option<(&'static str, &'static str)>, v: fn(&V3, &Q) -> V3) -> Formula {
    Formula { text, entry, param, field: Field::Chart(v, by) }
}

fn inducer(by: &Inducer, a: &Q) -> ConfAlgElement<Q> {
    let (l, x, v) = by;
    let l = l.map(q).unwrap_or_else(|| a.clone());
    ConfAlgElement::new(l, x.map(q), v.map(q))
}

pub fn formulas() -> Vec<Formula> {
    vec![
        f("(y,x,1)", g(0, [0, 1, 0], [0, 0, 1]), "Table2:exp(Y_H+e3)⋉(Re1⊕Re2)", None, |x, _| {
            let (x, y, _) = c(x);
            [y, x, q(1)]
        }),
        f("(1,z,-y)", g(0, [1, 0, 0], [1, 0, 0]), "Table3:exp(Y_E+e1)⋉(Re2⊕Re3)", None, |x, _| {
            let (_, y, z) = c(x);
            [q(1), z, -y]
        }),
        f("(x+y,x+y,z)", g(1, [0, 1, 0], [0, 0, 0]), "Table4:exp(a+Y_H,Y_P)⋉Pi_phi", Some(("a", "1")), |x, _| {
            let (x, y, z) = c(x);
            [x.clone() + &y, x + y, z]
        }),
        f("(z,z,x-y)", g(0, [0, 0, 1], [0, 0, 0]), "Table4:exp(a+Y_H,Y_P)⋉Pi_phi", Some(("a", "1")), |x, _| {
            let (x, y, z) = c(x);
            [z.clone(), z, x - y]
        }),
        f("(y,x,z)", g(0, [0, 1, 0], [0, 0, 0]), "Table4:Y_H⋉Pi_phi", None, |x, _| {
            let (x, y, z) = c(x);
            [y, x, z]
        }),
        f("(x+y+1,x+y,z)", g(1, [0, 1, 0], [1, 0, 0]), "Table4:exp(1+Y_H+e1)⋉Pi_phi", None, |x, _| {
            let (x, y, z) = c(x);
            [x.clone() + &y + q(1), x + y, z]
        }),
        f("(x,y,z)", g(1, [0, 0, 0], [0, 0, 0]), "Table5:(R+*×Y_E)⋉Re1", None, |x, _| x.clone()),
        f("(0,z,-y)", g(0, [1, 0, 0], [0, 0, 0]), "Table5:(R+*×Y_E)⋉Re1", None, |x, _| {
            let (_, y, z) = c(x);
            [q(0), z, -y]
        }),
        f("(x,y,z)", g(1, [0, 0, 0], [0, 0, 0]), "Table6:R+*⋉Re3", None, |x, _| x.clone()),
        f("(y,x,0)", g(0, [0, 1, 0], [0, 0, 0]), "Table6:Y_H×Re3", None, |x, _| {
            let (x, y, _) = c(x);
            [y, x, q(0)]
        }),
        f("(y,x,0)", g(0, [0, 1, 0], [0, 0, 0]), "Table6:(R+*×Y_H)⋉Re3", None, |x, _| {
            let (x, y, _) = c(x);
            [y, x, q(0)]
        }),
        f("(ax+y,x+ay,az)", ga([0, 1, 0]), "Table6:exp(a+Y_H)⋉Re3", Some(("a", "2")), |x, a| {
            let (x, y, z) = c(x);
            [a.clone() * &x + &y, x + a.clone() * &y, a.clone() * &z]
        }),
        f("(x+y,x+y,z)", g(1, [0, 1, 0], [0, 0, 0]), "Table6:exp(a+Y_H)⋉Re3", Some(("a", "1")), |x, _| {
            let (x, y, z) = c(x);
            [x.clone() + &y, x + y, z]
        }),
        f("(-x+y,x-y,z)", g(-1, [0, 1, 0], [0, 0, 0]), "Table6:exp(a+Y_H)⋉Re3", Some(("a", "-1")), |x, _| {
            let (x, y, z) = c(x);
            [y.clone() - &x, x - y, z]
        }),
        f("(x+y+1,x+y,z)", g(1, [0, 1, 0], [1, 0, 0]), "Table6:exp(1+Y_H+e1)⋉Re3", None, |x, _| {
            let (x, y, z) = c(x);
            [x.clone() + &y + q(1), x + y, z]
        }),
        f("(-x+y+1,x-y,z)", g(-1, [0, 1, 0], [1, 0, 0]), "Table6:exp(-1+Y_H+e1)⋉Re3", None, |x, _| {
            let (x, y, z) = c(x);
            [y.clone() - &x + q(1), x - y, z]
        }),
        f("(-x+y+1,x-y,-z)", g(-1, [0, 1, 0], [1, 0, 0]), "Table6:exp(-1+Y_H+e1)⋉Re3", None, |x, _| {
            let (x, y, z) = c(x);
            [y.clone() - &x + q(1), x - y, -z]
        }),
        f("(x,y,z)", g(1, [0, 0, 0], [0, 0, 0]), "Table7:(R+*×Aff)⋉L", None, |x, _| x.clone()),
        f("(z,z,x-y)", g(0, [0, 0, 1], [0, 0, 0]), "Table7:Aff⋉L", None, |x, _| {
            let (x, y, z) = c(x);
            [z.clone(), z, x - y]
        }),
        f("(y,x,0)", g(0, [0, 1, 0], [0, 0, 0]), "Table7:Aff⋉L", None, |x, _| {
            let (x, y, _) = c(x);
            [y, x, q(0)]
        }),
        f("(x+y,x+y,z)", g(1, [0, 1, 0], [0, 0, 0]), "Table7:exp(a+Y_H,Y_P)⋉L", Some(("a", "1")), |x, _| {
            let (x, y, z) = c(x);
            [x.clone() + &y, x + y, z]
        }),
        f("(2x+y,x+2y,2z)", g(2, [0, 1, 0], [0, 0, 0]), "Table7:exp(2+Y_H,Y_P+e1)⋉L", None, |x, _| {
            let (x, y, z) = c(x);
            [q(2) * &x + &y, x + q(2) * &y, q(2) * &z]
        }),
        f("(z+1,z,x-y)", g(0, [0, 0, 1], [1, 0, 0]), "Table7:exp(2+Y_H,Y_P+e1)⋉L", None, |x, _| {
            let (x, y, z) = c(x);
            [z.clone() + q(1), z, x - y]
        }),
        f("(y,x,1)", g(0, [0, 1, 0], [0, 0, 1]), "Table7:exp(Y_H+e3,Y_P)⋉L", None, |x, _| {
            let (x, y, _) = c(x);
            [y, x, q(1)]
        }),
        f("(z,z,x-y)", g(0, [0, 0, 1], [0, 0, 0]), "Table7:Y_P×L", None, |x, _| {
            let (x, y, z) = c(x);
            [z.clone(), z, x - y]
        }),
        f("(ax+z,ay+z,x-y+az)", ga([0, 0, 1]), "Table7:exp(a+Y_P)⋉L", Some(("a", "-1/2")), |x, a| {
            let (x, y, z) = c(x);
            [a.clone() * &x + &z, a.clone() * &y + &z, x - y + a.clone() * &z]
        }),
        f("(z+1,z,x-y)", g(0, [0, 0, 1], [1, 0, 0]), "Table7:exp(Y_P+e1)⋉L", None, |x, _| {
            let (x, y, z) = c(x);
            [z.clone() + q(1), z, x - y]
        }),
        f("(ax+y,x+ay,az)", ga([0, 1, 0]), "Table7:exp(a+Y_H)⋉L", Some(("a", "3")), |x, a| {
            let (x, y, z) = c(x);
            [a.clone() * &x + &y, x + a.clone() * &y, a.clone() * &z]
        }),
        f("(y,x,1)", g(0, [0, 1, 0], [0, 0, 1]), "Table7:exp(Y_H+e3)⋉L", None, |x, _| {
            let (x, y, _) = c(x);
            [y, x, q(1)]
        }),
        f("(x+y+1,x+y,z)", g(1, [0, 1, 0], [1, 0, 0]), "Table7:exp(1+Y_H+e1)⋉L", None, |x, _| {
            let (x, y, z) = c(x);
            [x.clone() + &y + q(1), x + y, z]
        }),
        f("(ax+y,x+ay,az)", ga([0, 1, 0]), "Table8:exp(a+Y_H,Y_P)", Some(("a", "1/2")), |x, a| {
            let (x, y, z) = c(x);
            [a.clone() * &x + &y, x + a.clone() * &y, a.clone() * &z]
        }),
        f("(z,z,x-y)", g(0, [0, 0, 1], [0, 0, 0]), "Table8:R+*×Y_P", None, |x, _| {
            let (x, y, z) = c(x);
            [z.clone(), z, x - y]
        }),
        f("(x,y,z)", g(1, [0, 0, 0], [0, 0, 0]), "Table8:R+*×Y_E", None, |x, _| x.clone()),
        f("(0,z,-y)", g(0, [1, 0, 0], [0, 0, 0]), "Table8:R+*×Y_E", None, |x, _| {
            let (_, y, z) = c(x);
            [q(0), z, -y]
        }),
        f("(-x+y+1,x-y+1,-z)", g(-1, [0, 1, 0], [1, 1, 0]), "Table8:exp(-1+Y_H+e1+e2,Y_P)", None, |x, _| {
            let (x, y, z) = c(x);
            [y.clone() - &x + q(1), x - y + q(1), -z]
        }),
        Formula {
            text: "(-2z,-4,-3y)",
            entry: "Table8:Aff",
            param: None,
            field: Field::AffChart(|x| {
                let (_, y, z) = c(x);
                [q(-2) * &z, q(-4), q(-3) * &y]
            }),
        },
        Formula {
            text: "(6x,2y,4z)",
            entry: "Table8:Aff",
            param: None,
            field: Field::AffChart(|x| {
                let (x, y, z) = c(x);
                [q(6) * &x, q(2) * &y, q(4) * &z]
            }),
        },
        Formula {
            text: "v_lambda = lambda[[-p21,p22],[p11,-p12]]",
            entry: "AdS:G_lambda",
            param: Some(("lambda", "2")),
            field: Field::Ads(|p, l| {
                let e = |i, j| p[(i, j)].clone();
                mat2(-e(1, 0), e(1, 1), e(0, 0), -e(0, 1)).scale(l)
            }),
        },
        Formula {
            text: "v_P = [[0,-p11],[0,-p21]]",
            entry: "AdS:G_lambda",
            param: Some(("lambda", "2")),
            field: Field::Ads(|p, _| {
                let e = |i, j| p[(i, j)].clone();
                mat2(q(0), -e(0, 0), q(0), -e(1, 0))
            }),
        },
    ]
}

/// Number of the `points` random rational points where the printed vector
/// falls outside the computed tangent space.
pub fn misses(fm: &Formula, points: usize) -> usize {
    let cat = Catalog::builtin();
    let spec = cat.lookup(fm.entry).unwrap();
    let mut over = Params::new();
    if let Some((k, v)) = fm.param {
        over.insert(k.to_string(), v.parse().unwrap());
    }
    // a = ±1 rows are split off as their own cases in the catalog, but the
    // generators are the same expression with the value substituted
    let params = spec.resolve_params(&over).unwrap_or(over);
    let a = fm.param.map(|(k, _)| params[k].clone()).unwrap_or_else(|| q(0));
    let gens = spec.conf_generators::<Q>(&params).unwrap().unwrap_or_default();
    let trans: Vec<ConfAlgElement<Q>> = if gens.is_empty() {
        Vec::new()
    } else {
        translation_part(&gens).unwrap().basis().iter().map(|t| ConfAlgElement::translation([t[0].clone(), t[1].clone(), t[2].clone()])).collect()
    };
    if let Field::Chart(_, by) = &fm.field {
        // the inducing field must itself belong to the entry's algebra
        let tan = |x: &V3| chart_tangent_at(&gens, x);
        let probe = [q(2), q(-3), q(5)];
        assert!(tan(&probe).contains(&inducer(by, &a).act(&probe)), "{}: inducer outside {}", fm.text, fm.entry);
    }
    let mut rng = rng_for(0, &format!("formula:{}:{}", fm.entry, fm.text));
    (0..points)
        .filter(|_| match &fm.field {
            Field::Chart(v, by) => {
                let x = random_chart_point(&mut rng);
                !chart_tangent_at(&gens, &x).contains(&v(&x, &a))
                    || !chart_tangent_at(&[vec![inducer(by, &a)], trans.clone()].concat(), &x).contains(&v(&x, &a))
            }
            Field::AffChart(g) => {
                let x = random_chart_point(&mut rng);
                !aff_irreducible_tangent(&x).contains(&g(&x))
            }
            Field::Ads(g) => {
                let gens = spec.sl2_generators::<Q>(&params).unwrap().unwrap();
                let p = ads_point_of(&region_point("ads", &mut rng).unwrap()).unwrap();
                let t = ads_tangent_at(&gens, &p).unwrap();
                !t.contains(&g(&p, &a).rows_vec().concat())
            }
        })
        .count()
}

/// Chart formulas only: points where the printed vector differs from the
/// vector field of its inducing one-parameter group.
pub fn field_mismatches(fm: &Formula, points: usize) -> Option<usize> {
    let Field::Chart(v, by) = &fm.field else { return None };
    let a = match fm.param {
        Some((_, s)) => s.parse().unwrap(),
        None => q(0),
    };
    let gen = inducer(by, &a);
    let mut rng = rng_for(1, &format!("field:{}:{}", fm.entry, fm.text));
    Some(
        (0..points)
            .filter(|_| {
                let x = random_chart_point(&mut rng);
                gen.act(&x) != v(&x, &a).to_vec()
            })
            .count(),
    )
}
