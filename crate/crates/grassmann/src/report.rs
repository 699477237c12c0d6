//! Serializable views of elements, endomorphisms and factorizations.
//!
//! Elements are written as lists of `{mask, coefficient}` terms, where bit
//! i − 1 of `mask` stands for xᵢ and the coefficient is its text form. The
//! `text` fields carry the same value in the parser's grammar.

use serde::{Deserialize, Serialize};

use crate::algebra::{GrassmannElement, Mask};
use crate::coeff::Coefficient;
use crate::endo::{Endomorphism, Matrix};
use crate::error::{Error, Result};
use crate::groups::{FactoredAutomorphism, UFactor};

/// Version of the JSON layout produced by this module.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub mask: Mask,
    pub coefficient: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ElementJson {
    pub n: usize,
    pub text: String,
    pub terms: Vec<TermJson>,
}

impl ElementJson {
    pub fn new<C: Coefficient>(e: &GrassmannElement<C>) -> Self {
        ElementJson {
            n: e.n(),
            text: e.to_string(),
            terms: e.iter().map(|(mask, c)| TermJson { mask, coefficient: c.to_string() }).collect(),
        }
    }

    /// Rebuilds the element from its terms.
    pub fn to_element<C: Coefficient>(&self) -> Result<GrassmannElement<C>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if self.n < 32 && t.mask >> self.n != 0 {
                return Err(Error::InvalidParameter(format!("mask {:#b} exceeds n = {}", t.mask, self.n)));
            }
            let c = C::parse_literal(&t.coefficient).ok_or_else(|| Error::Parse {
                position: 0,
                message: format!("bad coefficient '{}'", t.coefficient),
            })?;
            terms.push((t.mask, c));
        }
        crate::algebra::check_n(self.n)?;
        Ok(GrassmannElement::from_terms(self.n, terms))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EndoJson {
    pub n: usize,
    pub text: String,
    pub images: Vec<ElementJson>,
}

impl EndoJson {
    pub fn new<C: Coefficient>(sigma: &Endomorphism<C>) -> Self {
        EndoJson { n: sigma.n(), text: sigma.to_string(), images: sigma.images().iter().map(ElementJson::new).collect() }
    }

    pub fn to_endomorphism<C: Coefficient>(&self) -> Result<Endomorphism<C>> {
        Endomorphism::new(self.images.iter().map(|e| e.to_element()).collect::<Result<Vec<_>>>()?)
    }
}

fn matrix_json<C: Coefficient>(m: &Matrix<C>) -> Vec<Vec<String>> {
    m.rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect()
}

fn elements<C: Coefficient>(v: &[GrassmannElement<C>]) -> Vec<ElementJson> {
    v.iter().map(ElementJson::new).collect()
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "factor", rename_all = "kebab-case")]
pub enum LevelJson {
    Inner { degree: usize, a: ElementJson },
    Shift { degree: usize, b: Vec<ElementJson> },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct XiJson {
    pub degree: usize,
    pub shifts: Vec<ElementJson>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RhoCoordinate {
    pub s: usize,
    pub i: usize,
    pub alpha: Mask,
    pub coefficient: String,
}

/// The defining data of a factorization, per kind.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ParametersJson {
    Oga { a: ElementJson, shifts: Vec<ElementJson>, matrix: Vec<Vec<String>> },
    Unipotent { levels: Vec<LevelJson> },
    Gamma { phi: EndoJson, xis: Vec<XiJson> },
    SigmaPrime { coordinates: Vec<RhoCoordinate> },
    Layers { parts: Vec<ElementJson>, sigma: EndoJson },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FactorJson {
    pub label: String,
    pub groups: Vec<String>,
    pub map: EndoJson,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub schema: u32,
    pub kind: String,
    pub n: usize,
    pub characteristic: u64,
    pub input: EndoJson,
    pub factors: Vec<FactorJson>,
    pub parameters: ParametersJson,
    pub verified: bool,
}

impl FactorizationReport {
    /// Builds the report and runs [`FactoredAutomorphism::verify`] against `input`.
    pub fn new<C: Coefficient>(input: &Endomorphism<C>, f: &FactoredAutomorphism<C>) -> Result<Self> {
        let parameters = match f {
            FactoredAutomorphism::Oga { a, b, matrix } => {
                ParametersJson::Oga { a: ElementJson::new(a), shifts: elements(b), matrix: matrix_json(matrix) }
            }
            FactoredAutomorphism::UWord { levels, .. } => ParametersJson::Unipotent {
                levels: levels
                    .iter()
                    .map(|l| match l {
                        UFactor::Inner { degree, a } => LevelJson::Inner { degree: *degree, a: ElementJson::new(a) },
                        UFactor::Shift { degree, b } => LevelJson::Shift { degree: *degree, b: elements(b) },
                    })
                    .collect(),
            },
            FactoredAutomorphism::GammaWord { phi, xis } => ParametersJson::Gamma {
                phi: EndoJson::new(phi),
                xis: xis.iter().map(|x| XiJson { degree: x.degree, shifts: elements(&x.shifts) }).collect(),
            },
            FactoredAutomorphism::SigmaPrimeWord { coordinates, .. } => ParametersJson::SigmaPrime {
                coordinates: coordinates
                    .iter()
                    .map(|(&(s, i, alpha), c)| RhoCoordinate { s, i, alpha, coefficient: c.to_string() })
                    .collect(),
            },
            FactoredAutomorphism::LayerWord { parts, gamma } => {
                ParametersJson::Layers { parts: elements(parts), sigma: EndoJson::new(gamma) }
            }
        };
        Ok(FactorizationReport {
            schema: SCHEMA_VERSION,
            kind: f.kind().to_string(),
            n: f.n(),
            characteristic: C::characteristic(),
            input: EndoJson::new(input),
            factors: f
                .factors()
                .into_iter()
                .map(|x| FactorJson {
                    label: x.label,
                    groups: x.groups.iter().map(|g| g.to_string()).collect(),
                    map: EndoJson::new(&x.map),
                })
                .collect(),
            parameters,
            verified: f.verify(input)?,
        })
    }
}
