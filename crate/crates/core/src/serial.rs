//! JSON data formats.
//!
//! Elements are coefficient tuples, low degree first, relative to the field's
//! modulus. Matrices are row-major nested arrays of elements. Every document
//! carries its field description so it can be read back standalone.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::{CodeClass, CodeError, LinearCode};
use crate::fflinalg::{FFMatrix, FFVector, LinalgError};
use crate::gf::{elements_from_coeffs, elements_to_coeffs, Field, FieldDesc, Gf, GfError};
use crate::gtrs::{GtrsError, GtrsParams, Twist, TwistSpec};
use crate::selfdual::{ConstructionClass, ConstructionResult, SelfDualError};

#[derive(Debug, Error)]
pub enum SerialError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field mismatch between document parts")]
    FieldMismatch,
    #[error("malformed document: {0}")]
    Shape(String),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Gtrs(#[from] GtrsError),
    #[error(transparent)]
    SelfDual(#[from] SelfDualError),
}

pub type Result<T> = std::result::Result<T, SerialError>;

pub type Coeffs = Vec<u32>;

pub fn element_to_json(field: &Field, x: Gf) -> Coeffs {
    field.to_coeffs(x)
}

pub fn element_from_json(field: &Field, c: &[u32]) -> Result<Gf> {
    Ok(field.from_coeffs(c)?)
}

pub fn vector_to_json(v: &FFVector) -> Vec<Coeffs> {
    elements_to_coeffs(v.field(), v.entries())
}

pub fn vector_from_json(field: &Field, cs: &[Coeffs]) -> Result<FFVector> {
    Ok(FFVector::new(field, elements_from_coeffs(field, cs)?))
}

pub fn matrix_to_json(m: &FFMatrix) -> Vec<Vec<Coeffs>> {
    m.to_rows().iter().map(|r| elements_to_coeffs(m.field(), r)).collect()
}

pub fn matrix_from_json(field: &Field, cols: usize, rows: &[Vec<Coeffs>]) -> Result<FFMatrix> {
    if rows.is_empty() {
        return Ok(FFMatrix::empty(field, cols));
    }
    let rows = rows
        .iter()
        .map(|r| elements_from_coeffs(field, r))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let m = FFMatrix::from_rows(field, rows)?;
    if m.cols() != cols {
        return Err(SerialError::Shape(format!("generator has {} columns, n = {cols}", m.cols())));
    }
    Ok(m)
}

/// `{field, n, k, generator}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeJson {
    pub field: FieldDesc,
    pub n: usize,
    pub k: usize,
    pub generator: Vec<Vec<Coeffs>>,
}

impl CodeJson {
    pub fn from_code(code: &LinearCode) -> Self {
        CodeJson {
            field: code.field().desc(),
            n: code.n(),
            k: code.k(),
            generator: matrix_to_json(code.generator()),
        }
    }

    pub fn to_code(&self) -> Result<LinearCode> {
        let field = Field::from_desc(&self.field)?;
        let gen = matrix_from_json(&field, self.n, &self.generator)?;
        let code = LinearCode::new(gen)?;
        if code.k() != self.k {
            return Err(SerialError::Shape(format!("k = {} but generator has rank {}", self.k, code.k())));
        }
        Ok(code)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistJson {
    pub t: usize,
    pub h: usize,
    pub eta: Coeffs,
}

/// `{field, alpha, v, k, twists: [{t, h, eta}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GtrsJson {
    pub field: FieldDesc,
    pub alpha: Vec<Coeffs>,
    pub v: Vec<Coeffs>,
    pub k: usize,
    pub twists: Vec<TwistJson>,
}

impl GtrsJson {
    pub fn from_params(p: &GtrsParams) -> Self {
        let f = p.field();
        GtrsJson {
            field: f.desc(),
            alpha: vector_to_json(p.alpha()),
            v: vector_to_json(p.v()),
            k: p.k(),
            twists: p
                .twist()
                .twists()
                .iter()
                .map(|tw| TwistJson { t: tw.t, h: tw.h, eta: f.to_coeffs(tw.eta) })
                .collect(),
        }
    }

    pub fn to_params(&self) -> Result<GtrsParams> {
        let field = Field::from_desc(&self.field)?;
        self.to_params_in(&field)
    }

    fn to_params_in(&self, field: &Field) -> Result<GtrsParams> {
        let alpha = vector_from_json(field, &self.alpha)?;
        let v = vector_from_json(field, &self.v)?;
        let twists = self
            .twists
            .iter()
            .map(|tw| Ok(Twist { t: tw.t, h: tw.h, eta: element_from_json(field, &tw.eta)? }))
            .collect::<Result<Vec<_>>>()?;
        let spec = TwistSpec::new(self.k, alpha.len(), twists)?;
        Ok(GtrsParams::new(alpha, v, spec)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EtaJson {
    pub eta: Coeffs,
    pub class: CodeClass,
}

/// `{class, q, n, a_l, m?, x_subset, alpha, v, a, eta_list: [{eta, class}], field}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructionJson {
    pub class: ConstructionClass,
    pub q: u32,
    pub n: usize,
    pub a_l: Coeffs,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    pub x_subset: Vec<Coeffs>,
    pub alpha: Vec<Coeffs>,
    pub v: Vec<Coeffs>,
    pub a: Coeffs,
    pub eta_list: Vec<EtaJson>,
    pub field: FieldDesc,
}

impl ConstructionJson {
    pub fn from_result(r: &ConstructionResult) -> Self {
        let f = &r.field;
        ConstructionJson {
            class: r.class,
            q: r.q,
            n: r.n,
            a_l: f.to_coeffs(r.a_l),
            m: r.m,
            x_subset: elements_to_coeffs(f, &r.x_subset),
            alpha: vector_to_json(&r.alpha),
            v: vector_to_json(&r.v),
            a: f.to_coeffs(r.a),
            eta_list: r
                .eta_candidates
                .iter()
                .map(|c| EtaJson { eta: f.to_coeffs(c.eta), class: c.class })
                .collect(),
            field: f.desc(),
        }
    }

    /// One (+)-GTRS datum per listed η, in list order.
    pub fn instances(&self) -> Result<Vec<(GtrsParams, CodeClass)>> {
        let field = Field::from_desc(&self.field)?;
        if self.n % 2 != 0 {
            return Err(SerialError::SelfDual(SelfDualError::OddLength));
        }
        let alpha = vector_from_json(&field, &self.alpha)?;
        let v = vector_from_json(&field, &self.v)?;
        if alpha.len() != self.n || v.len() != self.n {
            return Err(SerialError::Shape("alpha/v length differs from n".into()));
        }
        self.eta_list
            .iter()
            .map(|e| {
                let eta = element_from_json(&field, &e.eta)?;
                let p = crate::gtrs::plus_gtrs(alpha.clone(), v.clone(), eta, self.n / 2)?;
                Ok((p, e.class))
            })
            .collect()
    }
}

/// Any document the command-line tool accepts as a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Document {
    Construction(ConstructionJson),
    Gtrs(GtrsJson),
    Code(CodeJson),
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gtrs::plus_gtrs;
    use crate::selfdual::construct_class1;
    use crate::Caps;

    #[test]
    fn field_and_element_format() {
        let f = Field::new(7, 2).unwrap();
        let json = serde_json::to_value(f.desc()).unwrap();
        assert_eq!(json, serde_json::json!({"p": 7, "m": 2, "modulus": [1, 0, 1], "generator": f.generator_coeffs()}));
        let x = f.from_coeffs(&[3, 5]).unwrap();
        assert_eq!(element_to_json(&f, x), vec![3, 5]);
        assert_eq!(element_from_json(&f, &[3, 5]).unwrap(), x);
        assert!(element_from_json(&f, &[7, 0]).is_err());
    }

    #[test]
    fn gtrs_round_trip() {
        let f = Field::new(7, 2).unwrap();
        let alpha = FFVector::new(&f, (1..=6).map(|i| f.from_int(i)).collect());
        let v = FFVector::new(&f, f.nonzero_elements().step_by(5).take(6).collect());
        let p = plus_gtrs(alpha, v, f.omega_pow(9), 3).unwrap();
        let j = GtrsJson::from_params(&p);
        let text = serde_json::to_string(&j).unwrap();
        let back = match Document::parse(&text).unwrap() {
            Document::Gtrs(g) => g.to_params().unwrap(),
            d => panic!("parsed as {d:?}"),
        };
        assert_eq!(back, p);
    }

    #[test]
    fn code_round_trip() {
        let f = Field::quadratic_over(3).unwrap();
        let p = plus_gtrs(
            FFVector::new(&f, f.nonzero_elements().take(4).collect()),
            FFVector::new(&f, vec![Gf::ONE; 4]),
            f.omega_pow(3),
            2,
        )
        .unwrap();
        let code = p.code().unwrap();
        let text = serde_json::to_string(&CodeJson::from_code(&code)).unwrap();
        match Document::parse(&text).unwrap() {
            Document::Code(c) => assert!(c.to_code().unwrap().equals(&code).unwrap()),
            d => panic!("parsed as {d:?}"),
        }
    }

    #[test]
    fn construction_round_trip() {
        let f = Field::new(7, 2).unwrap();
        let x: Vec<Gf> = (1..=6).map(|i| f.from_int(i)).collect();
        let r = construct_class1(&f, Gf::ZERO, &x, &Caps::default()).unwrap();
        let j = ConstructionJson::from_result(&r);
        let value = serde_json::to_value(&j).unwrap();
        assert!(value.get("m").is_none());
        assert_eq!(value["class"], "I");
        assert_eq!(value["eta_list"][0]["class"], "MDS");
        let text = serde_json::to_string(&j).unwrap();
        let Document::Construction(back) = Document::parse(&text).unwrap() else {
            panic!("not a construction");
        };
        let inst = back.instances().unwrap();
        assert_eq!(inst.len(), 6);
        for ((p, class), c) in inst.iter().zip(&r.eta_candidates) {
            assert_eq!(p, &r.params(c.eta).unwrap());
            assert_eq!(*class, c.class);
        }
    }

    #[test]
    fn rejects_malformed() {
        assert!(Document::parse("{\"field\": 1}").is_err());
        let f = Field::new(5, 1).unwrap();
        let j = CodeJson { field: f.desc(), n: 3, k: 2, generator: vec![vec![vec![1], vec![0], vec![0]]] };
        assert!(j.to_code().is_err());
    }
}
