//! JSON formats for polynomials, matrices, presentations, candidates and
//! wreath elements.
//!
//! A polynomial literal is a list of `[exponent, coefficient]` pairs, e.g.
//! `[[0,1],[1,1],[2,1]]` for `x^2 + x + 1`. Relations of a presentation are
//! listed relator by relator; each relator holds one literal per generator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp_poly::{FieldSpec, FpPoly, LaurentPoly};
use crate::poly_matrix::PolyMatrix;
use crate::rp_module::ModulePresentation;
use crate::wreath::{LamplighterSpec, WreathElement};

pub type PolyLiteral = Vec<(i64, i64)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<PolyLiteral>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub p: u64,
    pub generators: usize,
    pub relations: Vec<Vec<PolyLiteral>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationsJson {
    pub generators: usize,
    pub relations: Vec<Vec<PolyLiteral>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateJson {
    pub p: u64,
    pub n: usize,
    pub presentation: RelationsJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub lamps: Vec<(i64, Vec<i64>)>,
    pub shift: i64,
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
}

pub fn to_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

pub fn poly_from_literal(field: FieldSpec, lit: &[(i64, i64)]) -> Result<FpPoly> {
    FpPoly::from_terms(field, lit)
}

pub fn laurent_from_literal(field: FieldSpec, lit: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::canonicalize(field, lit)
}

pub fn poly_to_literal(f: &FpPoly) -> PolyLiteral {
    f.terms().map(|(e, c)| (e as i64, c as i64)).collect()
}

pub fn laurent_to_literal(f: &LaurentPoly) -> PolyLiteral {
    f.terms().map(|(e, c)| (e, c as i64)).collect()
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<PolyMatrix> {
        let field = FieldSpec::new(self.p)?;
        if self.entries.len() != self.rows {
            return Err(Error::ShapeMismatch(format!("{} rows listed, {} declared", self.entries.len(), self.rows)));
        }
        let rows = self
            .entries
            .iter()
            .map(|row| row.iter().map(|lit| poly_from_literal(field, lit)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_rows(field, self.cols, rows)
    }

    pub fn from_matrix(m: &PolyMatrix) -> Self {
        MatrixJson {
            p: m.field().p(),
            rows: m.rows(),
            cols: m.cols(),
            entries: m.to_rows().iter().map(|r| r.iter().map(poly_to_literal).collect()).collect(),
        }
    }
}

impl RelationsJson {
    pub fn to_presentation(&self, field: FieldSpec) -> Result<ModulePresentation> {
        let relators: Vec<Vec<LaurentPoly>> = self
            .relations
            .iter()
            .map(|rel| rel.iter().map(|lit| laurent_from_literal(field, lit)).collect())
            .collect();
        ModulePresentation::from_laurent_relators(field, self.generators, &relators)
    }

    pub fn from_presentation(p: &ModulePresentation) -> Self {
        let rel = p.relations();
        RelationsJson {
            generators: p.generators(),
            relations: (0..rel.cols()).map(|c| rel.column(c).iter().map(poly_to_literal).collect()).collect(),
        }
    }
}

impl PresentationJson {
    pub fn to_presentation(&self) -> Result<ModulePresentation> {
        let field = FieldSpec::new(self.p)?;
        RelationsJson { generators: self.generators, relations: self.relations.clone() }.to_presentation(field)
    }

    pub fn from_presentation(p: &ModulePresentation) -> Self {
        let r = RelationsJson::from_presentation(p);
        PresentationJson { p: p.field().p(), generators: r.generators, relations: r.relations }
    }
}

impl ElementJson {
    pub fn to_element(&self, spec: LamplighterSpec) -> Result<WreathElement> {
        WreathElement::new(spec, self.lamps.iter().cloned(), self.shift)
    }

    pub fn from_element(e: &WreathElement) -> Self {
        ElementJson {
            lamps: e.lamps().iter().map(|(&i, v)| (i, v.iter().map(|&c| c as i64).collect())).collect(),
            shift: e.shift(),
        }
    }
}
