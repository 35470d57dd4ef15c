//! The registry of subgroups: Tables 1-8 of the Minkowski-patch classification,
//! the AdS list, the compact and de Sitter cases, and the photon kernel K.
//!
//! Entries are plain data (strings for coefficients) so the shipped JSON file
//! and the builder below describe exactly the same thing.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ads::sl2_pair_to_so23;
use crate::einstein::MinkowskiChart;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::liecore::{conf_to_so23, is_o23, ConfAlgElement, Sl2Element};
use crate::scalar::{fmt_q, parse_q, q, Scalar, Q};

pub const SHIPPED_JSON: &str = include_str!("../data/catalog.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    ConfMinkowski,
    So23Direct,
    Sl2Pair,
    LinearSo13,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixedKind {
    None,
    Lightlike,
    Spacelike,
    Timelike,
}

impl std::fmt::Display for FixedKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FixedKind::None => "none",
            FixedKind::Lightlike => "lightlike",
            FixedKind::Spacelike => "spacelike",
            FixedKind::Timelike => "timelike",
        })
    }
}

/// One generator. Coefficients are strings: rationals, a parameter name, or
/// `c*name`, each optionally negated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GenSpec {
    Conf {
        lambda: String,
        #[serde(rename = "X")]
        x: [String; 3],
        v: [String; 3],
    },
    Sl2Pair {
        left: [String; 3],
        right: [String; 3],
    },
    Matrix {
        matrix: Vec<Vec<String>>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamRange {
    /// a in R*
    Nonzero,
    /// λ in R_+^*
    Positive,
    /// a in [-1, 1]
    UnitInterval,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamSpec {
    pub name: String,
    pub range: ParamRange,
    pub samples: Vec<String>,
    /// Values the orbit description treats separately.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exclude: Vec<String>,
}

/// An orbit claim: every sampled point of `region` has an orbit of dimension `dim`
/// whose causal character is one of the `|`-separated alternatives in `character`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub region: String,
    pub dim: usize,
    pub character: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpectedOutcome {
    pub dim: usize,
    pub cohomogeneity_one: bool,
    pub fixed_point_rp4: FixedKind,
    /// Causal type of the translation part, for Minkowski-patch entries.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translation: Option<String>,
    pub orbit_summary: Vec<Claim>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubgroupSpec {
    pub name: String,
    pub table: String,
    pub model: Model,
    pub generators: Vec<GenSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<ParamSpec>,
    pub expected: ExpectedOutcome,
    /// Isometry g applied to sampled points after a conjugation by g.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transport: Option<Vec<Vec<String>>>,
}

pub type Params = BTreeMap<String, Q>;

/// Evaluate `[-]c`, `[-]name` or `[-]c*name`.
pub fn eval_coef(s: &str, params: &Params) -> Result<Q> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(r) => (true, r.trim()),
        None => (false, s),
    };
    let val = if let Some((c, name)) = body.split_once('*') {
        parse_q(c)? * lookup_param(name.trim(), params)?
    } else if body.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
        parse_q(body)?
    } else {
        lookup_param(body, params)?
    };
    Ok(if neg { -val } else { val })
}

fn lookup_param(name: &str, params: &Params) -> Result<Q> {
    params.get(name).cloned().ok_or_else(|| Error::BadParameter(format!("parameter {name} has no value")))
}

fn eval3(c: &[String; 3], params: &Params) -> Result<[Q; 3]> {
    Ok([eval_coef(&c[0], params)?, eval_coef(&c[1], params)?, eval_coef(&c[2], params)?])
}

fn q_to<S: Scalar>(v: [Q; 3]) -> [S; 3] {
    [S::from_q(&v[0]), S::from_q(&v[1]), S::from_q(&v[2])]
}

impl ParamSpec {
    pub fn check(&self, v: &Q) -> Result<()> {
        let ok = match self.range {
            ParamRange::Nonzero => *v != q(0),
            ParamRange::Positive => *v > q(0),
            ParamRange::UnitInterval => *v >= q(-1) && *v <= q(1),
        };
        if !ok {
            return Err(Error::BadParameter(format!("{} = {} is outside its range {:?}", self.name, fmt_q(v), self.range)));
        }
        for e in &self.exclude {
            if parse_q(e)? == *v {
                return Err(Error::BadParameter(format!("{} = {} is treated as a separate case", self.name, fmt_q(v))));
            }
        }
        Ok(())
    }
}

impl SubgroupSpec {
    /// All sampled parameter combinations (one empty map for unparametrized rows).
    pub fn param_samples(&self) -> Result<Vec<Params>> {
        let mut out = vec![Params::new()];
        for p in &self.params {
            let mut next = Vec::new();
            for base in &out {
                for s in &p.samples {
                    let mut m = base.clone();
                    m.insert(p.name.clone(), parse_q(s)?);
                    next.push(m);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Validate user-supplied values; unspecified parameters take their first sample.
    pub fn resolve_params(&self, overrides: &Params) -> Result<Params> {
        for k in overrides.keys() {
            if !self.params.iter().any(|p| &p.name == k) {
                return Err(Error::BadParameter(format!("{} has no parameter {k}", self.name)));
            }
        }
        let mut out = Params::new();
        for p in &self.params {
            let v = match overrides.get(&p.name) {
                Some(v) => v.clone(),
                None => parse_q(&p.samples[0])?,
            };
            p.check(&v)?;
            out.insert(p.name.clone(), v);
        }
        Ok(out)
    }

    pub fn instance_label(&self, params: &Params) -> String {
        if params.is_empty() {
            self.name.clone()
        } else {
            let ps: Vec<String> = params.iter().map(|(k, v)| format!("{k}={}", fmt_q(v))).collect();
            format!("{}[{}]", self.name, ps.join(","))
        }
    }

    pub fn conf_generators<S: Scalar>(&self, params: &Params) -> Result<Option<Vec<ConfAlgElement<S>>>> {
        if self.model != Model::ConfMinkowski {
            return Ok(None);
        }
        let mut out = Vec::new();
        for g in &self.generators {
            match g {
                GenSpec::Conf { lambda, x, v } => out.push(ConfAlgElement::new(
                    S::from_q(&eval_coef(lambda, params)?),
                    q_to(eval3(x, params)?),
                    q_to(eval3(v, params)?),
                )),
                _ => return Err(Error::InvalidElement(format!("{}: conformal entry with a non-conformal generator", self.name))),
            }
        }
        Ok(Some(out))
    }

    pub fn sl2_generators<S: Scalar>(&self, params: &Params) -> Result<Option<Vec<(Mat<S>, Mat<S>)>>> {
        if self.model != Model::Sl2Pair {
            return Ok(None);
        }
        let mut out = Vec::new();
        for g in &self.generators {
            match g {
                GenSpec::Sl2Pair { left, right } => {
                    let l = Sl2Element::<S>::from_coeffs(&q_to(eval3(left, params)?));
                    let r = Sl2Element::<S>::from_coeffs(&q_to(eval3(right, params)?));
                    out.push((l.matrix().clone(), r.matrix().clone()));
                }
                _ => return Err(Error::InvalidElement(format!("{}: sl2 entry with a non-sl2 generator", self.name))),
            }
        }
        Ok(Some(out))
    }

    pub fn transport_matrix<S: Scalar>(&self) -> Result<Option<Mat<S>>> {
        match &self.transport {
            None => Ok(None),
            Some(rows) => Ok(Some(matrix_of(rows, &Params::new())?)),
        }
    }
}

fn matrix_of<S: Scalar>(rows: &[Vec<String>], params: &Params) -> Result<Mat<S>> {
    let mut m = Vec::new();
    for r in rows {
        let mut row = Vec::new();
        for c in r {
            row.push(S::from_q(&eval_coef(c, params)?));
        }
        m.push(row);
    }
    Mat::from_rows(&m)
}

/// The so(2,3) generators of an entry. Conformal entries go through the chart;
/// sl2 pairs through the fixed AdS identification; linear_so13 matrices act on
/// span(e2..e5) and kill e1.
pub fn instantiate<S: Scalar>(spec: &SubgroupSpec, params: &Params, chart: &MinkowskiChart<S>) -> Result<Vec<Mat<S>>> {
    let mut out = Vec::new();
    match spec.model {
        Model::ConfMinkowski => {
            for g in spec.conf_generators::<S>(params)?.unwrap_or_default() {
                out.push(conf_to_so23(&g, chart).into_matrix());
            }
        }
        Model::Sl2Pair => {
            for (l, r) in spec.sl2_generators::<S>(params)?.unwrap_or_default() {
                out.push(sl2_pair_to_so23(&l, &r));
            }
        }
        Model::So23Direct => {
            for g in &spec.generators {
                let GenSpec::Matrix { matrix } = g else {
                    return Err(Error::InvalidElement(format!("{}: expected a matrix generator", spec.name)));
                };
                out.push(matrix_of(matrix, params)?);
            }
        }
        Model::LinearSo13 => {
            for g in &spec.generators {
                let GenSpec::Matrix { matrix } = g else {
                    return Err(Error::InvalidElement(format!("{}: expected a matrix generator", spec.name)));
                };
                let b: Mat<S> = matrix_of(matrix, params)?;
                let mut m = Mat::zeros(5, 5);
                for i in 0..4 {
                    for j in 0..4 {
                        m[(i + 1, j + 1)] = b[(i, j)].clone();
                    }
                }
                out.push(m);
            }
        }
    }
    for m in &out {
        if !crate::liecore::is_so23(m, 1e-9) {
            return Err(Error::InvalidElement(format!("{}: generator is not in so(2,3)", spec.name)));
        }
    }
    Ok(out)
}

/// The entry conjugated by an isometry g: generators gMg^{-1} as direct so(2,3)
/// matrices, expected outcomes unchanged, sample points transported by g.
/// The name is kept, so sampling draws the same points before moving them.
pub fn conjugate_spec(spec: &SubgroupSpec, params: &Params, g: &Mat<Q>) -> Result<SubgroupSpec> {
    if !is_o23(g, 0.0) {
        return Err(Error::InvalidElement("conjugating matrix is not an isometry of R^{2,3}".into()));
    }
    let ginv = g.inverse(0.0).ok_or(Error::DependentBasis)?;
    let chart = MinkowskiChart::<Q>::default_chart();
    let gens = instantiate(spec, params, &chart)?;
    let show = |m: &Mat<Q>| -> Vec<Vec<String>> { m.rows_vec().iter().map(|r| r.iter().map(fmt_q).collect()).collect() };
    let generators = gens.iter().map(|m| GenSpec::Matrix { matrix: show(&g.mul(m).mul(&ginv)) }).collect();
    let transport = match spec.transport_matrix::<Q>()? {
        Some(t) => g.mul(&t),
        None => g.clone(),
    };
    Ok(SubgroupSpec {
        name: spec.name.clone(),
        table: spec.table.clone(),
        model: Model::So23Direct,
        generators,
        params: Vec::new(),
        expected: spec.expected.clone(),
        transport: Some(show(&transport)),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Catalog {
    pub entries: Vec<SubgroupSpec>,
}

impl Catalog {
    pub fn builtin() -> Self {
        Catalog { entries: catalog_entries() }
    }

    pub fn shipped() -> Result<Self> {
        Self::from_json(SHIPPED_JSON)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let entries: Vec<SubgroupSpec> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Catalog { entries })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries).expect("catalog serializes") + "\n"
    }

    pub fn lookup(&self, name: &str) -> Result<&SubgroupSpec> {
        self.entries.iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownEntry(name.to_string()))
    }

    /// Entries whose name matches a shell glob, ordered by (table, name).
    /// A malformed pattern matches nothing.
    pub fn filter(&self, pattern: Option<&str>) -> Vec<&SubgroupSpec> {
        let pat = match pattern {
            None => None,
            Some(p) => match glob::Pattern::new(p) {
                Ok(p) => Some(p),
                Err(_) => return Vec::new(),
            },
        };
        let mut v: Vec<&SubgroupSpec> =
            self.entries.iter().filter(|e| pat.as_ref().map_or(true, |p| p.matches(&e.name))).collect();
        v.sort_by(|a, b| (table_order(&a.table), &a.name).cmp(&(table_order(&b.table), &b.name)));
        v
    }
}

fn table_order(t: &str) -> (u32, String) {
    match t.strip_prefix("Table").and_then(|n| n.parse::<u32>().ok()) {
        Some(n) => (n, String::new()),
        None => (100, t.to_string()),
    }
}

// ---------------------------------------------------------------------------
// builder

fn s(x: &str) -> String {
    x.to_string()
}

/// Parse a conformal generator written like "a+H", "1+H+e1", "P+e1-e2", "-1+H+e1+e2".
fn cg(text: &str) -> GenSpec {
    let mut lambda = s("0");
    let mut x = [s("0"), s("0"), s("0")];
    let mut v = [s("0"), s("0"), s("0")];
    let mut terms = Vec::new();
    let mut cur = String::new();
    for ch in text.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    for t in terms {
        let (sign, body) = match t.strip_prefix('-') {
            Some(b) => ("-", b),
            None => ("", t.trim_start_matches('+')),
        };
        let (coef, sym) = match body.split_once('*') {
            Some((c, b)) => (c.to_string(), b),
            None => (s("1"), body),
        };
        let c = if coef == "1" { format!("{sign}1") } else { format!("{sign}{coef}") };
        let slot = match sym {
            "E" => &mut x[0],
            "H" => &mut x[1],
            "P" => &mut x[2],
            "e1" => &mut v[0],
            "e2" => &mut v[1],
            "e3" => &mut v[2],
            scalar => {
                lambda = format!("{sign}{scalar}");
                continue;
            }
        };
        *slot = c;
    }
    GenSpec::Conf { lambda, x, v }
}

fn translations(t: &str) -> (Vec<&'static str>, &'static str) {
    match t {
        "R12" => (vec!["e1", "e2", "e3"], "full"),
        "Re1⊕Re2" => (vec!["e1", "e2"], "lorentzian"),
        "Re2⊕Re3" => (vec!["e2", "e3"], "spacelike"),
        "Pi_phi" => (vec!["e1+e2", "e3"], "degenerate"),
        "Re1" => (vec!["e1"], "timelike_line"),
        "Re3" => (vec!["e3"], "spacelike_line"),
        "L" => (vec!["e1+e2"], "lightlike_line"),
        "" => (vec![], "trivial"),
        other => panic!("unknown translation part {other}"),
    }
}

fn claim(region: &str, dim: usize, character: &str) -> Claim {
    Claim { region: region.into(), dim, character: character.into(), note: None }
}

fn noted(region: &str, dim: usize, character: &str, note: &str) -> Claim {
    Claim { region: region.into(), dim, character: character.into(), note: Some(note.into()) }
}

fn a_nonzero(exclude: &[&str]) -> Vec<ParamSpec> {
    vec![ParamSpec {
        name: s("a"),
        range: ParamRange::Nonzero,
        samples: ["1/2", "-1/2", "2", "-2"].iter().map(|x| s(x)).collect(),
        exclude: exclude.iter().map(|x| s(x)).collect(),
    }]
}

struct Row<'a> {
    table: &'a str,
    label: &'a str,
    linear: &'a [&'a str],
    trans: &'a str,
    params: Vec<ParamSpec>,
    claims: Vec<Claim>,
}

fn conf_row(r: Row) -> SubgroupSpec {
    let (tv, tkind) = translations(r.trans);
    let mut generators: Vec<GenSpec> = r.linear.iter().map(|g| cg(g)).collect();
    generators.extend(tv.iter().map(|g| cg(g)));
    let mut claims = r.claims;
    claims.push(claim("vertex", 0, "point"));
    let coh = !(r.table == "Table1" && (r.label == "R12" || r.label == "R+*⋉R12"));
    SubgroupSpec {
        name: format!("{}:{}", r.table, r.label),
        table: r.table.into(),
        model: Model::ConfMinkowski,
        expected: ExpectedOutcome {
            dim: generators.len(),
            cohomogeneity_one: coh,
            fixed_point_rp4: FixedKind::Lightlike,
            translation: Some(tkind.into()),
            orbit_summary: claims,
        },
        generators,
        params: r.params,
        transport: None,
    }
}

fn table1() -> Vec<SubgroupSpec> {
    let p3 = || claim("patch", 3, "open");
    let lc2 = || claim("lightcone", 2, "degenerate");
    let lc1 = || claim("lightcone", 1, "lightlike");
    let phi1 = || claim("phi", 1, "lightlike");
    let psi1 = || claim("psi", 1, "lightlike");
    let phi2 = || claim("phi", 2, "degenerate");
    let sinf2 = || claim("S_inf", 2, "degenerate");
    let elliptic = || vec![p3(), lc2(), phi2(), sinf2()];
    let parabolic = || vec![p3(), lc2(), phi1()];
    let hyperbolic = || vec![p3(), lc2(), phi1(), psi1()];
    let t = "Table1";
    let tr = "R12";
    let none: Vec<ParamSpec> = Vec::new();
    let rows: Vec<(&str, &[&str], Vec<ParamSpec>, Vec<Claim>)> = vec![
        ("R+*⋉R12", &["1"], none.clone(), vec![p3(), lc1()]),
        ("(R+*×SO0(1,2))⋉R12", &["1", "E", "H", "P"], none.clone(), vec![p3(), lc2(), phi2(), sinf2()]),
        ("SO0(1,2)⋉R12", &["E", "H", "P"], none.clone(), vec![p3(), lc2(), phi2(), sinf2()]),
        ("exp(a+Y_E)⋉R12", &["a+E"], a_nonzero(&[]), elliptic()),
        ("R12", &[], none.clone(), vec![p3(), lc1()]),
        ("(R+*×Aff)⋉R12", &["1", "H", "P"], none.clone(), parabolic()),
        ("Aff⋉R12", &["H", "P"], none.clone(), parabolic()),
        ("exp(a+Y_P)⋉R12", &["a+P"], a_nonzero(&[]), parabolic()),
        ("Y_H⋉R12", &["H"], none.clone(), hyperbolic()),
        ("(R+×Y_H)⋉R12", &["1", "H"], none.clone(), hyperbolic()),
        ("Y_P⋉R12", &["P"], none.clone(), parabolic()),
        ("exp(a+Y_H,Y_P)⋉R12", &["a+H", "P"], a_nonzero(&[]), parabolic()),
        ("Y_E⋉R12", &["E"], none.clone(), elliptic()),
        ("(R+×Y_P)⋉R12", &["1", "P"], none.clone(), parabolic()),
        ("(R+×Y_E)⋉R12", &["1", "E"], none.clone(), elliptic()),
        ("exp(a+Y_H)⋉R12", &["a+H"], a_nonzero(&[]), hyperbolic()),
    ];
    rows.into_iter()
        .map(|(label, linear, params, claims)| conf_row(Row { table: t, label, linear, trans: tr, params, claims }))
        .collect()
}

fn table2() -> Vec<SubgroupSpec> {
    let lor = |r: &str, d| claim(r, d, "lorentzian");
    let lc2 = || claim("lightcone", 2, "degenerate");
    let lc1 = || claim("lightcone", 1, "lightlike");
    let pp = || vec![claim("phi", 1, "lightlike"), claim("psi", 1, "lightlike")];
    let t = "Table2";
    let tr = "Re1⊕Re2";
    let none: Vec<ParamSpec> = Vec::new();
    let with = |mut a: Vec<Claim>, b: Vec<Claim>| {
        a.extend(b);
        a
    };
    let rows: Vec<(&str, &[&str], Vec<ParamSpec>, Vec<Claim>)> = vec![
        ("(R+*×Y_H)⋉(Re1⊕Re2)", &["1", "H"], none.clone(), with(vec![claim("patch", 3, "open"), lor("z=0", 2), lc2()], pp())),
        ("Y_H⋉(Re1⊕Re2)", &["H"], none.clone(), with(vec![lor("patch", 2), lc2()], pp())),
        ("exp(a+Y_H)⋉(Re1⊕Re2)", &["a+H"], a_nonzero(&[]), with(vec![claim("patch", 3, "open"), lor("z=0", 2), lc2()], pp())),
        ("exp(Y_H+e3)⋉(Re1⊕Re2)", &["H+e3"], none.clone(), with(vec![claim("patch", 3, "open"), lc2()], pp())),
        ("R+*⋉(Re1⊕Re2)", &["1"], none.clone(), vec![claim("patch", 3, "open"), lor("z=0", 2), lc1()]),
        ("Re1⊕Re2", &[], none.clone(), vec![lor("patch", 2), lc1()]),
    ];
    rows.into_iter()
        .map(|(label, linear, params, claims)| conf_row(Row { table: t, label, linear, trans: tr, params, claims }))
        .collect()
}

fn table3() -> Vec<SubgroupSpec> {
    let sp = |r: &str, d| claim(r, d, "spacelike");
    let lc2 = || claim("lightcone", 2, "degenerate");
    let lc1 = || claim("lightcone", 1, "lightlike");
    let t = "Table3";
    let tr = "Re2⊕Re3";
    let none: Vec<ParamSpec> = Vec::new();
    let rows: Vec<(&str, &[&str], Vec<ParamSpec>, Vec<Claim>)> = vec![
        ("(R+*×Y_E)⋉(Re2⊕Re3)", &["1", "E"], none.clone(), vec![claim("patch", 3, "open"), sp("x=0", 2), lc2()]),
        ("Y_E⋉(Re2⊕Re3)", &["E"], none.clone(), vec![sp("patch", 2), lc2()]),
        ("exp(a+Y_E)⋉(Re2⊕Re3)", &["a+E"], a_nonzero(&[]), vec![claim("patch", 3, "open"), sp("x=0", 2), lc2()]),
        (
            "exp(Y_E+e1)⋉(Re2⊕Re3)",
            &["E+e1"],
            none.clone(),
            vec![
                claim("patch", 3, "open"),
                lc2(),
                noted("phi", 2, "degenerate", "E preserves no photon of L(p); the whole vertex-less lightcone is one orbit"),
            ],
        ),
        ("R+*⋉(Re2⊕Re3)", &["1"], none.clone(), vec![claim("patch", 3, "open"), sp("x=0", 2), lc1()]),
        ("Re2⊕Re3", &[], none.clone(), vec![sp("patch", 2), lc1()]),
    ];
    rows.into_iter()
        .map(|(label, linear, params, claims)| conf_row(Row { table: t, label, linear, trans: tr, params, claims }))
        .collect()
}

fn table4() -> Vec<SubgroupSpec> {
    let p3 = || claim("patch", 3, "open");
    let xy2 = || claim("x=y", 2, "degenerate");
    let xy3 = || claim("x=y", 3, "open");
    let lc2 = || claim("lightcone", 2, "degenerate");
    let lc1 = || claim("lightcone", 1, "lightlike");
    let phi0 = || claim("phi", 0, "point");
    let phi1 = || claim("phi", 1, "lightlike");
    let psi1 = || claim("psi", 1, "lightlike");
    let t = "Table4";
    let tr = "Pi_phi";
    let none: Vec<ParamSpec> = Vec::new();
    let rows: Vec<(&str, &[&str], Vec<ParamSpec>, Vec<Claim>)> = vec![
        ("Aff⋉Pi_phi", &["H", "P"], none.clone(), vec![p3(), xy2(), lc2(), phi1()]),
        ("exp(a+Y_H,Y_P)⋉Pi_phi", &["a+H", "P"], a_nonzero(&["1"]), vec![p3(), xy2(), lc2(), phi1()]),
        ("(R+*×Aff)⋉Pi_phi", &["1", "H", "P"], none.clone(), vec![p3(), xy2(), lc2(), phi1()]),
        ("exp(a+Y_P)⋉Pi_phi", &["a+P"], a_nonzero(&[]), vec![p3(), xy2(), lc2(), phi1()]),
        ("Y_P⋉Pi_phi", &["P"], none.clone(), vec![claim("patch", 2, "degenerate"), xy2(), lc2(), phi0()]),
        ("exp(a+Y_H)⋉Pi_phi", &["a+H"], a_nonzero(&["1"]), vec![p3(), xy2(), lc2(), phi1(), psi1()]),
        ("(R+*×Y_P)⋉Pi_phi", &["1", "P"], none.clone(), vec![p3(), xy2(), lc2(), phi1()]),
        ("exp(1+Y_H+e1,Y_P)⋉Pi_phi", &["1+H+e1", "P"], none.clone(), vec![p3(), xy3(), lc2()]),
        (
            "Y_H⋉Pi_phi",
            &["H"],
            none.clone(),
            vec![p3(), noted("x=y", 2, "degenerate", "the Y_H tangent vector is (y,x,0); the printed (y,x,z) differs by z e3, which lies in Pi_phi"), lc2(), phi1(), psi1()],
        ),
        ("exp(Y_P+e1)⋉Pi_phi", &["P+e1"], none.clone(), vec![p3(), xy3(), lc2()]),
        ("(R+*×Y_H)⋉Pi_phi", &["1", "H"], none.clone(), vec![p3(), xy2(), lc2(), phi1(), psi1()]),
        ("exp(1+Y_H+e1)⋉Pi_phi", &["1+H+e1"], none.clone(), vec![p3(), xy3(), lc2(), phi1(), psi1()]),
        ("Pi_phi", &[], none.clone(), vec![claim("patch", 2, "degenerate"), lc1(), phi0()]),
        ("exp(2+Y_H,Y_P+e1)⋉Pi_phi", &["2+H", "P+e1"], none.clone(), vec![p3(), xy3(), lc2()]),
        ("R+*⋉Pi_phi", &["1"], none.clone(), vec![p3(), xy2(), lc1()]),
    ];
    rows.into_iter()
        .map(|(label, linear, params, claims)| conf_row(Row { table: t, label, linear, trans: tr, params, claims }))
        .collect()
}

fn table5() -> Vec<SubgroupSpec> {
    let le1 = || claim("line_e1", 1, "timelike");
    let lc2 = || claim("lightcone", 2, "degenerate");
    let t = "Table5";
    let tr = "Re1";
    let none: Vec<ParamSpec> = Vec::new();
    let rows: Vec<(&str, &[&str], Vec<ParamSpec>, Vec<Claim>)> = vec![
        ("R+*⋉Re1", &["1"], none.clone(), vec![claim("patch", 2, "lorentzian"), le1(), claim("lightcone", 1, "lightlike")]),
        ("(R+*×Y_E)⋉Re1", &["1", "E"], none.clone(), vec![claim("patch", 3, "open"), le1(), lc2()]),
        ("Y_E×Re1", &["E"], none.clone(), vec![claim("patch", 2, "lorentzian"), le1(), lc2()]),
        ("exp(a+Y_E)⋉Re1", &["a+E"], a_nonzero(&[]), vec![claim("patch", 2, "lorentzian"), le1(), lc2()]),
    ];
    rows.into_iter()
        .map(|(label, linear, params, claims)| conf_row(Row { table: t, label, linear, trans: tr, params, claims }))
        .collect()
}

fn table6() -> Vec<SubgroupSpec> {
    let le3 = || claim("line_e3", 1, "spacelike");
    let lc2 = || claim("lightcone", 2, "degenerate");
    let xy = || vec![claim("x=y", 2, "degenerate"), claim("x=-y", 2, "degenerate")];
    let t = "Table6";
    let tr = "Re3";
    let none: Vec<ParamSpec> = Vec::new();
    let cat = |a: Vec<Claim>, b: Vec<Claim>| a.into_iter().chain(b).collect::<Vec<_>>();
    let rows: Vec<(&str, &[&str], Vec<ParamSpec>, Vec<Claim>)> = vec![
        (
            "R+*⋉Re3",
            &["1"],
            none.clone(),
            cat(
                vec![
                    claim("patch where |y|>|x|", 2, "spacelike"),
                    claim("patch where |x|>|y|", 2, "lorentzian"),
                    le3(),
                    claim("lightcone", 1, "lightlike"),
                ],
                xy(),
            ),
        ),
        ("(R+*×Y_H)⋉Re3", &["1", "H"], none.clone(), cat(vec![claim("patch", 3, "open"), le3(), lc2()], xy())),
        (
            "Y_H×Re3",
            &["H"],
            none.clone(),
            cat(vec![claim("patch where |x|>|y|", 2, "spacelike"), claim("patch where |y|>|x|", 2, "lorentzian"), le3(), lc2()], xy()),
        ),
        (
            "exp(a+Y_H)⋉Re3",
            &["a+H"],
            a_nonzero(&["1", "-1"]),
            cat(vec![claim("patch", 2, "spacelike|lorentzian"), le3(), lc2()], xy()),
        ),
        (
            "exp(1+Y_H+e1)⋉Re3",
            &["1+H+e1"],
            none.clone(),
            vec![
                claim("patch where x+y>-1/2", 2, "lorentzian"),
                claim("patch where x+y<-1/2", 2, "spacelike"),
                claim("x+y=-1/2", 2, "degenerate"),
                claim("line_e3", 2, "lorentzian"),
                lc2(),
            ],
        ),
        (
            "exp(-1+Y_H+e1)⋉Re3",
            &["-1+H+e1"],
            none.clone(),
            vec![
                claim("patch where x-y<1/2", 2, "lorentzian"),
                claim("patch where x-y>1/2", 2, "spacelike"),
                claim("x-y=1/2", 2, "degenerate"),
                lc2(),
            ],
        ),
    ];
    rows.into_iter()
        .map(|(label, linear, params, claims)| conf_row(Row { table: t, label, linear, trans: tr, params, claims }))
        .collect()
}

fn table7() -> Vec<SubgroupSpec> {
    let p3 = || claim("patch", 3, "open");
    let xy2 = || claim("x=y", 2, "degenerate");
    let ll = || claim("line_L", 1, "lightlike");
    let lc2 = || claim("lightcone", 2, "degenerate");
    let lor = || claim("patch", 2, "lorentzian");
    let t = "Table7";
    let tr = "L";
    let none: Vec<ParamSpec> = Vec::new();
    let rows: Vec<(&str, &[&str], Vec<ParamSpec>, Vec<Claim>)> = vec![
        ("(R+*×Aff)⋉L", &["1", "H", "P"], none.clone(), vec![p3(), xy2(), ll(), lc2()]),
        ("exp(a+Y_H,Y_P)⋉L", &["a+H", "P"], a_nonzero(&["1"]), vec![p3(), xy2(), ll(), lc2()]),
        ("Y_H⋉L", &["H"], none.clone(), vec![lor(), claim("x=y", 1, "lightlike"), lc2()]),
        ("exp(a+Y_P)⋉L", &["a+P"], a_nonzero(&[]), vec![lor(), xy2(), ll(), lc2()]),
        (
            "Aff⋉L",
            &["H", "P"],
            none.clone(),
            vec![
                p3(),
                claim("x=y", 1, "lightlike"),
                lc2(),
                claim("phi", 1, "lightlike"),
                noted("psi", 2, "degenerate", "Y_P moves psi, so psi minus the vertex lies in the open lightcone orbit"),
            ],
        ),
        ("exp(Y_H+e3,Y_P)⋉L", &["H+e3", "P"], none.clone(), vec![p3(), xy2(), lc2()]),
        ("(R+*×Y_P)⋉L", &["1", "P"], none.clone(), vec![p3(), xy2(), ll(), lc2()]),
        ("exp(Y_P+e1)⋉L", &["P+e1"], none.clone(), vec![lor(), claim("x=y", 2, "lorentzian"), claim("line_L", 2, "lorentzian"), lc2()]),
        ("Y_P×L", &["P"], none.clone(), vec![claim("patch", 2, "degenerate"), claim("x=y", 1, "lightlike"), lc2(), claim("phi", 0, "point")]),
        ("exp(2+Y_H,Y_P+e1)⋉L", &["2+H", "P+e1"], none.clone(), vec![p3(), claim("parabola_S", 2, "lorentzian"), lc2()]),
        (
            "(R+*×Y_H)⋉L",
            &["1", "H"],
            none.clone(),
            vec![p3(), claim("z=0", 2, "lorentzian"), xy2(), ll(), lc2(), claim("phi", 1, "lightlike"), claim("psi", 1, "lightlike")],
        ),
        ("exp(1+Y_H+e1)⋉L", &["1+H+e1"], none.clone(), vec![lor(), claim("x=y", 2, "lorentzian"), lc2()]),
        ("exp(a+Y_H)⋉L", &["a+H"], a_nonzero(&["1"]), vec![lor(), xy2(), ll(), lc2()]),
        ("exp(Y_H+e3)⋉L", &["H+e3"], none.clone(), vec![lor(), xy2(), lc2()]),
    ];
    rows.into_iter()
        .map(|(label, linear, params, claims)| conf_row(Row { table: t, label, linear, trans: tr, params, claims }))
        .collect()
}

fn table8() -> Vec<SubgroupSpec> {
    let o = || claim("origin", 0, "point");
    let nc2 = || claim("nullcone", 2, "degenerate");
    let lc2 = || claim("lightcone", 2, "degenerate");
    let sinf1 = || claim("S_inf", 1, "spacelike");
    let ll = || claim("line_L", 1, "lightlike");
    let t = "Table8";
    let tr = "";
    let none: Vec<ParamSpec> = Vec::new();
    let unit = vec![ParamSpec {
        name: s("a"),
        range: ParamRange::UnitInterval,
        samples: vec![s("-1/2"), s("1/2")],
        exclude: vec![s("-1"), s("0"), s("1")],
    }];
    let rows: Vec<(&str, &[&str], Vec<ParamSpec>, Vec<Claim>)> = vec![
        (
            "SO0(1,2)",
            &["E", "H", "P"],
            none.clone(),
            vec![
                claim("patch where q>0", 2, "lorentzian"),
                claim("patch where q<0", 2, "spacelike"),
                nc2(),
                o(),
                lc2(),
                sinf1(),
            ],
        ),
        ("R+*×SO0(1,2)", &["1", "E", "H", "P"], none.clone(), vec![claim("patch", 3, "open"), nc2(), o(), lc2(), sinf1()]),
        (
            "Aff",
            &["H", "P"],
            none.clone(),
            vec![
                claim("patch where q<0", 2, "spacelike"),
                claim("patch where q>0", 2, "lorentzian"),
                nc2(),
                claim("x=y", 1, "lightlike"),
                ll(),
                o(),
                lc2(),
            ],
        ),
        ("R+*×Aff", &["1", "H", "P"], none.clone(), vec![claim("patch", 3, "open"), nc2(), claim("x=y", 2, "degenerate"), ll(), o(), lc2()]),
        (
            "R+*×Y_E",
            &["1", "E"],
            none.clone(),
            vec![
                claim("patch where q>0", 2, "spacelike"),
                claim("patch where q<0", 2, "lorentzian"),
                nc2(),
                noted("line_e1", 1, "timelike", "the two tangent vectors are dependent exactly when y = z = 0"),
                o(),
                lc2(),
            ],
        ),
        (
            "exp(a+Y_H,Y_P)",
            &["a+H", "P"],
            unit,
            vec![claim("patch", 2, "spacelike|lorentzian"), claim("x=y", 2, "degenerate"), nc2(), ll(), o(), lc2(), sinf1()],
        ),
        (
            "R+*×Y_P",
            &["1", "P"],
            none.clone(),
            vec![
                claim("patch where q<0", 2, "lorentzian"),
                claim("patch where q>0", 2, "spacelike"),
                claim("x=y", 2, "degenerate"),
                nc2(),
                ll(),
                o(),
                lc2(),
            ],
        ),
        (
            "exp(2+Y_H,Y_P+e1-e2)",
            &["2+H", "P+e1-e2"],
            none.clone(),
            vec![claim("origin", 1, "lightlike"), claim("patch", 2, "any")],
        ),
        (
            "R+*×Y_H",
            &["1", "H"],
            none.clone(),
            vec![
                noted("patch where q>0, |x|>|y|", 2, "spacelike", "the tangent basis (x,y,z), (y,x,0) is orthogonal with norms q and x^2-y^2"),
                noted("patch where q>0, |y|>|x|", 2, "lorentzian", "q > 0 alone does not force a spacelike orbit"),
                claim("patch where q<0", 2, "lorentzian"),
                nc2(),
                claim("x=y", 2, "degenerate"),
                claim("x=-y", 2, "degenerate"),
                ll(),
                claim("line_l0", 1, "lightlike"),
                claim("line_e3", 1, "spacelike"),
                o(),
                lc2(),
            ],
        ),
        (
            "exp(-1+Y_H+e1+e2,Y_P)",
            &["-1+H+e1+e2", "P"],
            none.clone(),
            vec![
                noted("patch where x>y", 2, "spacelike", "Gram determinant of the tangent basis is 4(x-y)^3"),
                noted("patch where x<y", 2, "lorentzian", "Gram determinant of the tangent basis is 4(x-y)^3"),
                claim("x=y", 2, "degenerate"),
                ll(),
                lc2(),
            ],
        ),
    ];
    rows.into_iter()
        .map(|(label, linear, params, claims)| conf_row(Row { table: t, label, linear, trans: tr, params, claims }))
        .collect()
}

fn kernel_k() -> SubgroupSpec {
    let mut k = conf_row(Row {
        table: "Kernel",
        label: "K",
        linear: &["1+H", "P"],
        trans: "Pi_phi",
        params: Vec::new(),
        claims: vec![claim("patch", 2, "degenerate"), claim("phi", 0, "point"), claim("lightcone", 2, "degenerate")],
    });
    k.name = s("K");
    k
}

fn sl2(e: &str, h: &str, p: &str) -> [String; 3] {
    [s(e), s(h), s(p)]
}

const Z: (&str, &str, &str) = ("0", "0", "0");
const E: (&str, &str, &str) = ("1", "0", "0");
const H: (&str, &str, &str) = ("0", "1", "0");
const P: (&str, &str, &str) = ("0", "0", "1");

fn pair(l: (&str, &str, &str), r: (&str, &str, &str)) -> GenSpec {
    GenSpec::Sl2Pair { left: sl2(l.0, l.1, l.2), right: sl2(r.0, r.1, r.2) }
}

fn ads_entry(label: &str, generators: Vec<GenSpec>, params: Vec<ParamSpec>, claims: Vec<Claim>) -> SubgroupSpec {
    SubgroupSpec {
        name: format!("AdS:{label}"),
        table: s("AdS"),
        model: Model::Sl2Pair,
        expected: ExpectedOutcome {
            dim: generators.len(),
            cohomogeneity_one: true,
            fixed_point_rp4: FixedKind::Spacelike,
            translation: None,
            orbit_summary: claims,
        },
        generators,
        params,
        transport: None,
    }
}

fn ads_entries() -> Vec<SubgroupSpec> {
    let open = || claim("ads", 3, "open");
    let b2 = || claim("ein11", 2, "lorentzian");
    let phi = || claim("ein11_phi", 1, "lightlike");
    let psi = || claim("ein11_psi", 1, "lightlike");
    let ads2 = || claim("ads", 2, "lorentzian");
    let sl2l = || vec![pair(E, Z), pair(H, Z), pair(P, Z)];
    let with = |mut a: Vec<GenSpec>, b: Vec<GenSpec>| {
        a.extend(b);
        a
    };
    vec![
        ads_entry("Y_E×Y_P", vec![pair(E, Z), pair(Z, P)], vec![], vec![ads2(), b2(), phi()]),
        ads_entry("Y_E×Y_H", vec![pair(E, Z), pair(Z, H)], vec![], vec![ads2(), b2(), phi(), psi()]),
        ads_entry(
            "Y_E×Y_E",
            vec![pair(E, Z), pair(Z, E)],
            vec![],
            vec![claim("ein", 2, "lorentzian"), b2(), claim("nullcone(1,2,5)", 1, "timelike")],
        ),
        ads_entry(
            "G_lambda",
            vec![pair(("lambda", "0", "0"), H), pair(Z, P)],
            vec![ParamSpec { name: s("lambda"), range: ParamRange::Positive, samples: vec![s("1"), s("2")], exclude: vec![] }],
            vec![ads2(), b2(), phi()],
        ),
        ads_entry("Y_E×Aff", vec![pair(E, Z), pair(Z, H), pair(Z, P)], vec![], vec![open(), b2(), phi()]),
        ads_entry("Y_E×SL2", vec![pair(E, Z), pair(Z, E), pair(Z, H), pair(Z, P)], vec![], vec![open(), b2()]),
        ads_entry(
            "graph(phi)",
            vec![pair(E, ("-1", "0", "0")), pair(H, H), pair(P, ("0", "0", "-1"))],
            vec![],
            vec![
                noted("ein", 2, "lorentzian", "phi is conjugation by diag(1,-1); the fixed (0,2)-plane is span(e3,e5)"),
                claim("nullcone(1,2,4)", 1, "timelike"),
            ],
        ),
        ads_entry("SL2×Y_H", with(sl2l(), vec![pair(Z, H)]), vec![], vec![open(), b2(), phi(), psi()]),
        ads_entry("SL2×Y_P", with(sl2l(), vec![pair(Z, P)]), vec![], vec![open(), b2(), phi()]),
        ads_entry("SL2×Aff", with(sl2l(), vec![pair(Z, H), pair(Z, P)]), vec![], vec![open(), b2(), phi()]),
        ads_entry("SL2×SL2", with(sl2l(), vec![pair(Z, E), pair(Z, H), pair(Z, P)]), vec![], vec![open(), b2()]),
    ]
}

/// Skew generator e_i e_j^T - e_j e_i^T (rotation) or e_i e_j^T + e_j e_i^T (boost),
/// 1-based indices, n x n.
fn elementary(n: usize, i: usize, j: usize, boost: bool) -> GenSpec {
    let mut m = vec![vec![s("0"); n]; n];
    m[i - 1][j - 1] = s("1");
    m[j - 1][i - 1] = s(if boost { "1" } else { "-1" });
    GenSpec::Matrix { matrix: m }
}

fn direct_entry(name: &str, table: &str, model: Model, generators: Vec<GenSpec>, fixed: FixedKind, claims: Vec<Claim>) -> SubgroupSpec {
    SubgroupSpec {
        name: name.into(),
        table: table.into(),
        model,
        expected: ExpectedOutcome {
            dim: generators.len(),
            cohomogeneity_one: true,
            fixed_point_rp4: fixed,
            translation: None,
            orbit_summary: claims,
        },
        generators,
        params: Vec::new(),
        transport: None,
    }
}

fn direct_entries() -> Vec<SubgroupSpec> {
    vec![
        direct_entry(
            "Compact:SO(3)",
            "Compact",
            Model::So23Direct,
            vec![elementary(5, 3, 4, false), elementary(5, 3, 5, false), elementary(5, 4, 5, false)],
            FixedKind::Timelike,
            vec![claim("ein", 2, "spacelike")],
        ),
        direct_entry(
            "Compact:SO(2)×SO(2)",
            "Compact",
            Model::So23Direct,
            vec![elementary(5, 1, 2, false), elementary(5, 3, 4, false)],
            FixedKind::Spacelike,
            vec![claim("ein", 2, "lorentzian"), claim("nullcone(1,2,5)", 1, "timelike")],
        ),
        direct_entry(
            "AdS:SO0(2,1)",
            "AdS",
            Model::So23Direct,
            vec![elementary(5, 1, 2, false), elementary(5, 1, 3, true), elementary(5, 2, 3, true)],
            FixedKind::Spacelike,
            vec![claim("ein", 2, "lorentzian"), claim("nullcone(1,2,3)", 1, "timelike")],
        ),
        // the Lorentz algebra of span(e2..e5), e2 timelike
        direct_entry(
            "dS:SO0(1,3)",
            "dS",
            Model::LinearSo13,
            vec![
                elementary(4, 1, 2, true),
                elementary(4, 1, 3, true),
                elementary(4, 1, 4, true),
                elementary(4, 2, 3, false),
                elementary(4, 2, 4, false),
                elementary(4, 3, 4, false),
            ],
            FixedKind::Timelike,
            vec![claim("ein", 3, "open"), claim("nullcone(2,3,4,5)", 2, "spacelike")],
        ),
    ]
}

pub fn catalog_entries() -> Vec<SubgroupSpec> {
    let mut v = Vec::new();
    v.extend(table1());
    v.extend(table2());
    v.extend(table3());
    v.extend(table4());
    v.extend(table5());
    v.extend(table6());
    v.extend(table7());
    v.extend(table8());
    v.push(kernel_k());
    v.extend(ads_entries());
    v.extend(direct_entries());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::liecore::bracket_conf;

    #[test]
    fn table_sizes() {
        let c = Catalog::builtin();
        let count = |t: &str| c.entries.iter().filter(|e| e.table == t).count();
        let sizes: Vec<usize> = (1..=8).map(|i| count(&format!("Table{i}"))).collect();
        assert_eq!(sizes, vec![16, 6, 6, 15, 4, 6, 14, 10]);
        assert!(c.entries.len() >= 60);
        let mut names: Vec<&str> = c.entries.iter().map(|e| e.name.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), c.entries.len());
    }

    #[test]
    fn generator_parser() {
        let g = cg("-1+H+e1+e2");
        assert_eq!(
            g,
            GenSpec::Conf { lambda: s("-1"), x: [s("0"), s("1"), s("0")], v: [s("1"), s("1"), s("0")] }
        );
        let GenSpec::Conf { lambda, x, .. } = cg("a+E") else { panic!() };
        assert_eq!(lambda, "a");
        assert_eq!(x[0], "1");
        let GenSpec::Conf { v, .. } = cg("P+e1-e2") else { panic!() };
        assert_eq!(v, [s("1"), s("-1"), s("0")]);
    }

    #[test]
    fn coefficients() {
        let mut p = Params::new();
        p.insert(s("a"), Q::new(1.into(), 2.into()));
        assert_eq!(eval_coef("-a", &p).unwrap(), Q::new((-1).into(), 2.into()));
        assert_eq!(eval_coef("2*a", &p).unwrap(), q(1));
        assert_eq!(eval_coef("-3/4", &p).unwrap(), Q::new((-3).into(), 4.into()));
        assert!(eval_coef("b", &p).is_err());
    }

    #[test]
    fn every_entry_is_a_subalgebra_of_the_stated_dimension() {
        let chart = MinkowskiChart::<Q>::default_chart();
        for e in catalog_entries() {
            for params in e.param_samples().unwrap() {
                let gens = instantiate(&e, &params, &chart).unwrap();
                let flat: Vec<Vec<Q>> = gens.iter().map(|m| m.rows_vec().concat()).collect();
                assert_eq!(linalg::rank(&flat, 0.0), e.expected.dim, "{}", e.name);
                for a in &gens {
                    for b in &gens {
                        let c = a.commutator(b).rows_vec().concat();
                        assert!(linalg::in_span(&flat, &c, 0.0), "{} not closed", e.name);
                    }
                }
                if let Some(cs) = e.conf_generators::<Q>(&params).unwrap() {
                    let flat: Vec<Vec<Q>> = cs.iter().map(|g| g.to_vec7()).collect();
                    for a in &cs {
                        for b in &cs {
                            assert!(linalg::in_span(&flat, &bracket_conf(a, b).to_vec7(), 0.0), "{}", e.name);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lookup_examples() {
        let c = Catalog::builtin();
        let aff = c.lookup("Table4:Aff⋉Pi_phi").unwrap();
        assert_eq!(aff.generators, vec![cg("H"), cg("P"), cg("e1+e2"), cg("e3")]);
        assert!(aff.expected.cohomogeneity_one);
        assert!(!c.lookup("Table1:R12").unwrap().expected.cohomogeneity_one);
        let k = c.lookup("K").unwrap();
        assert_eq!(k.generators, vec![cg("1+H"), cg("P"), cg("e1+e2"), cg("e3")]);
        assert!(matches!(c.lookup("nope"), Err(Error::UnknownEntry(_))));
        assert_eq!(c.filter(Some("Table5:*")).len(), 4);
        assert!(c.filter(Some("[")).is_empty());
    }

    #[test]
    fn parameter_ranges() {
        let c = Catalog::builtin();
        let e = c.lookup("Table8:exp(a+Y_H,Y_P)").unwrap();
        let mut p = Params::new();
        p.insert(s("a"), q(2));
        assert!(e.resolve_params(&p).is_err());
        p.insert(s("a"), Q::new(1.into(), 3.into()));
        assert!(e.resolve_params(&p).is_ok());
        let g = c.lookup("AdS:G_lambda").unwrap();
        p.clear();
        p.insert(s("lambda"), q(-1));
        assert!(g.resolve_params(&p).is_err());
        let r = c.lookup("Table1:exp(a+Y_E)⋉R12").unwrap();
        p.clear();
        p.insert(s("a"), q(0));
        assert!(r.resolve_params(&p).is_err());
    }

    #[test]
    fn shipped_json_matches_builder() {
        let built = Catalog::builtin();
        if std::env::var("EINKIT_BLESS").is_ok() {
            std::fs::write(concat!(env!("CARGO_MANIFEST_DIR"), "/data/catalog.json"), built.to_json()).unwrap();
        }
        let shipped = Catalog::shipped().unwrap();
        assert_eq!(shipped, built, "data/catalog.json is stale; rerun with EINKIT_BLESS=1");
        assert_eq!(Catalog::from_json(&built.to_json()).unwrap(), built);
    }
}
