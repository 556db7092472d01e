//! JSON persistence for fields, matrices, representations, certificates and catalogs.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::action::Certificate;
use crate::catalog::CatalogEntry;
use crate::double::{DoubleError, YDModule};
use crate::field::{Fe, Field, FieldError};
use crate::groups::{DihedralParams, GroupElem, GroupError, Subgroup, SubgroupKind};
use crate::matrix::{Matrix, MatrixError};
use crate::rep::{RepError, Representation};
use crate::ydcatalog::YdCatalogEntry;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field element has {got} coefficients, expected {want}")]
    ElementLength { got: usize, want: usize },
    #[error("matrix has ragged rows")]
    Ragged,
    #[error("missing generator {0}")]
    MissingGenerator(String),
    #[error("unexpected generator {0}")]
    UnexpectedGenerator(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Double(#[from] DoubleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

impl FieldJson {
    pub fn of(field: &Field) -> FieldJson {
        FieldJson { p: field.characteristic(), m: field.degree(), modulus: field.modulus().to_vec() }
    }

    pub fn build(&self) -> Result<Field, IoError> {
        let f = Field::from_modulus(self.p as u64, &self.modulus)?;
        if f.degree() != self.m {
            return Err(IoError::ElementLength { got: self.modulus.len(), want: self.m as usize + 1 });
        }
        Ok(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<u32>>>,
}

impl MatrixJson {
    pub fn of(m: &Matrix) -> MatrixJson {
        let f = m.field();
        let entries = (0..m.rows()).map(|i| (0..m.cols()).map(|j| f.coeffs(m.get(i, j))).collect()).collect();
        MatrixJson { rows: m.rows(), cols: m.cols(), entries }
    }

    pub fn build(&self, field: &Field) -> Result<Matrix, IoError> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(IoError::Ragged);
        }
        let want = field.degree() as usize;
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for c in self.entries.iter().flatten() {
            if c.len() != want {
                return Err(IoError::ElementLength { got: c.len(), want });
            }
            data.push(field.from_coeffs(c)?);
        }
        Ok(Matrix::from_vec(field, self.rows, self.cols, data))
    }
}

pub fn element_json(field: &Field, x: Fe) -> Value {
    json!(field.coeffs(x))
}

fn subgroup_json(h: &Subgroup) -> Value {
    match h.kind() {
        SubgroupKind::Cyclic { step } => json!({"kind": "cyclic", "step": step}),
        SubgroupKind::Dihedral { step, refl } => json!({"kind": "dihedral", "step": step, "refl": refl}),
    }
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum SubgroupSpec {
    Cyclic { step: u32 },
    Dihedral { step: u32, refl: u32 },
}

/// `{"group", "subgroup"?, "degree", "field", "generators": {name: Matrix}}`; the
/// subgroup key is omitted for the whole group, generator names are their displays.
pub fn rep_to_json(rep: &Representation) -> Value {
    let mut obj = Map::new();
    obj.insert("group".into(), serde_json::to_value(rep.params()).expect("params serialize"));
    if rep.subgroup() != &rep.params().full_group() {
        obj.insert("subgroup".into(), subgroup_json(rep.subgroup()));
    }
    obj.insert("degree".into(), json!(rep.degree()));
    obj.insert("field".into(), serde_json::to_value(FieldJson::of(rep.field())).expect("field serializes"));
    let mut gens = Map::new();
    for (g, m) in rep.subgroup().generators().iter().zip(rep.generators()) {
        gens.insert(g.to_string(), serde_json::to_value(MatrixJson::of(m)).expect("matrix serializes"));
    }
    obj.insert("generators".into(), Value::Object(gens));
    Value::Object(obj)
}

#[derive(Deserialize)]
struct RepJson {
    group: DihedralParams,
    subgroup: Option<SubgroupSpec>,
    degree: usize,
    field: FieldJson,
    generators: Map<String, Value>,
}

pub fn rep_from_json(v: &Value) -> Result<Representation, IoError> {
    let raw: RepJson = serde_json::from_value(v.clone())?;
    let field = raw.field.build()?;
    let params = raw.group;
    let sub = match raw.subgroup {
        None => params.full_group(),
        Some(SubgroupSpec::Cyclic { step }) => subgroup_checked(params, step, None)?,
        Some(SubgroupSpec::Dihedral { step, refl }) => subgroup_checked(params, step, Some(refl))?,
    };
    let names: Vec<String> = sub.generators().iter().map(|g| g.to_string()).collect();
    if let Some(extra) = raw.generators.keys().find(|k| !names.contains(k)) {
        return Err(IoError::UnexpectedGenerator(extra.clone()));
    }
    let mut gens = Vec::new();
    for name in &names {
        let m = raw.generators.get(name).ok_or_else(|| IoError::MissingGenerator(name.clone()))?;
        let mj: MatrixJson = serde_json::from_value(m.clone())?;
        gens.push(mj.build(&field)?);
    }
    Ok(Representation::with_degree(sub, &field, raw.degree, gens)?)
}

fn subgroup_checked(params: DihedralParams, step: u32, refl: Option<u32>) -> Result<Subgroup, IoError> {
    if step == 0 || !params.n().is_multiple_of(step) {
        return Err(IoError::Group(GroupError::NotASubgroup { n: params.n() }));
    }
    Ok(match refl {
        None => Subgroup::cyclic(params, step),
        Some(r) => Subgroup::dihedral(params, step, r),
    })
}

pub fn yd_to_json(m: &YDModule) -> Value {
    let mut v = rep_to_json(m.rep());
    v["grading"] = serde_json::to_value(m.grading()).expect("elements serialize");
    v
}

pub fn yd_from_json(v: &Value) -> Result<YDModule, IoError> {
    let rep = rep_from_json(v)?;
    let grading: Vec<GroupElem> = serde_json::from_value(v.get("grading").cloned().unwrap_or(Value::Null))?;
    Ok(YDModule::new(rep, grading)?)
}

/// `{"status", "witness"?, "summands"?}`.
pub fn certificate_to_json(c: &Certificate) -> Value {
    match c {
        Certificate::Indecomposable { end_dim } | Certificate::Inconclusive { end_dim } => {
            json!({"status": c.status(), "end_dim": end_dim})
        }
        Certificate::Decomposed { first, second } => json!({
            "status": c.status(),
            "summands": [MatrixJson::of(first), MatrixJson::of(second)],
        }),
    }
}

pub fn catalog_to_json(entries: &[CatalogEntry]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|e| json!({"label": e.label.to_string(), "construction": e.construction, "rep": rep_to_json(&e.rep)}))
            .collect(),
    )
}

pub fn yd_catalog_to_json(entries: &[YdCatalogEntry]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|e| {
                json!({
                    "label": e.label.to_string(),
                    "class": e.class,
                    "dimension": e.yd.dimension(),
                    "yd": yd_to_json(&e.yd),
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Setting;
    use crate::ydcatalog::yd_catalog;

    #[test]
    fn representations_round_trip() {
        let s = Setting::new(3, 6).unwrap();
        for e in
            s.full_catalog().unwrap().iter().chain(&s.klein_simples(1).unwrap()).chain(&s.cyclic_catalog().unwrap())
        {
            let v = rep_to_json(&e.rep);
            assert_eq!(rep_from_json(&v).unwrap(), e.rep);
        }
    }

    #[test]
    fn extension_field_matrices_round_trip() {
        let s = Setting::new(5, 15).unwrap();
        assert_eq!(s.field.degree(), 2);
        let m = s.a_matrix(2, 1).unwrap();
        let j = MatrixJson::of(&m);
        assert!(j.entries.iter().flatten().all(|c| c.len() == 2));
        assert_eq!(j.build(&s.field).unwrap(), m);
    }

    #[test]
    fn yd_modules_round_trip() {
        let s = Setting::new(3, 3).unwrap();
        for e in yd_catalog(&s).unwrap() {
            assert_eq!(yd_from_json(&yd_to_json(&e.yd)).unwrap(), e.yd);
        }
    }

    #[test]
    fn malformed_input_is_rejected() {
        let s = Setting::new(3, 3).unwrap();
        let mut v = rep_to_json(&s.full_catalog().unwrap()[0].rep);
        v["generators"]["c"] = v["generators"]["a"].clone();
        assert!(matches!(rep_from_json(&v), Err(IoError::UnexpectedGenerator(_))));
        let wide = s.full_catalog().unwrap().into_iter().find(|e| e.rep.degree() == 2).unwrap();
        let mut v = rep_to_json(&wide.rep);
        v["generators"]["a"]["entries"][0] = json!([[1]]);
        assert!(matches!(rep_from_json(&v), Err(IoError::Ragged)));
        let mut v = rep_to_json(&wide.rep);
        v["generators"]["a"] = v["generators"]["b"].clone();
        assert!(matches!(rep_from_json(&v), Err(IoError::Rep(RepError::Relation { .. }))));
    }
}
