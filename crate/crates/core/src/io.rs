//! JSON input files.
//!
//! A complex is `{"n": 4, "facets": [[1, 2], [3, 4]]}` with 1-based
//! vertices; an ideal is `{"n": 3, "generators": [[1, 0, 1], [0, 1, 1]]}`
//! with one exponent vector per generator. Unknown fields are ignored.

use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::ideal::{Monomial, MonomialIdeal};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub n: u32,
    pub facets: Vec<Vec<Vertex>>,
}

impl ComplexFile {
    pub fn from_complex(complex: &SimplicialComplex) -> Self {
        ComplexFile { n: complex.n(), facets: complex.facets().iter().map(|f| f.to_vec()).collect() }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        let facets = self
            .facets
            .iter()
            .map(|f| {
                if let Some(&v) = f.iter().find(|&&v| v == 0 || v > self.n) {
                    return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
                }
                Face::new(f.iter().copied())
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialComplex::new(self.n, facets)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealFile {
    pub n: u32,
    pub generators: Vec<Vec<u32>>,
}

impl IdealFile {
    pub fn from_ideal(ideal: &MonomialIdeal) -> Self {
        IdealFile { n: ideal.n(), generators: ideal.generators().iter().map(|m| m.exponents().to_vec()).collect() }
    }

    pub fn to_ideal(&self) -> Result<MonomialIdeal> {
        MonomialIdeal::new(self.n, self.generators.iter().cloned().map(Monomial::new).collect())
    }
}

/// Either input shape; a complex is recognized by its `facets` field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Input {
    Complex(ComplexFile),
    Ideal(IdealFile),
}

impl Input {
    pub fn parse(text: &str) -> Result<Input> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// The complex itself, or the complex of a squarefree ideal.
    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        match self {
            Input::Complex(c) => c.to_complex(),
            Input::Ideal(i) => i.to_ideal()?.to_complex(),
        }
    }

    /// The ideal itself, or the Stanley–Reisner ideal of a complex.
    pub fn to_ideal(&self) -> Result<MonomialIdeal> {
        match self {
            Input::Complex(c) => MonomialIdeal::stanley_reisner(&c.to_complex()?),
            Input::Ideal(i) => i.to_ideal(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_shapes() {
        let c = Input::parse(r#"{"n": 4, "facets": [[1, 2], [3, 4]], "comment": "ignored"}"#).unwrap();
        assert!(matches!(c, Input::Complex(_)));
        let ideal = c.to_ideal().unwrap();
        assert_eq!(ideal.generators().len(), 4);

        let i = Input::parse(r#"{"n": 3, "generators": [[1, 0, 1], [0, 1, 1]]}"#).unwrap();
        let complex = i.to_complex().unwrap();
        assert_eq!(complex.facets(), &[Face::of(&[1, 2]), Face::of(&[3])]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Input::parse("{").unwrap_err().kind(), "ParseError");
        assert_eq!(Input::parse(r#"{"n": 2}"#).unwrap_err().kind(), "ParseError");
        let out_of_range = Input::parse(r#"{"n": 2, "facets": [[1, 3]]}"#).unwrap();
        assert_eq!(out_of_range.to_complex().unwrap_err(), Error::VertexOutOfRange { vertex: 3, n: 2 });
        let uncovered = Input::parse(r#"{"n": 3, "facets": [[1, 2]]}"#).unwrap();
        assert_eq!(uncovered.to_complex().unwrap_err(), Error::UncoveredVertex(3));
        let short = Input::parse(r#"{"n": 3, "generators": [[1, 1]]}"#).unwrap();
        assert!(matches!(short.to_ideal().unwrap_err(), Error::LengthMismatch { .. }));
        let not_sf = Input::parse(r#"{"n": 2, "generators": [[2, 0]]}"#).unwrap();
        assert_eq!(not_sf.to_complex().unwrap_err(), Error::NotSquarefree);
    }

    #[test]
    fn round_trip() {
        let c = SimplicialComplex::new(5, [Face::of(&[1, 2, 5]), Face::of(&[3, 4])]).unwrap();
        let text = serde_json::to_string(&ComplexFile::from_complex(&c)).unwrap();
        assert_eq!(Input::parse(&text).unwrap().to_complex().unwrap(), c);
        let i = MonomialIdeal::stanley_reisner(&c).unwrap();
        let text = serde_json::to_string(&IdealFile::from_ideal(&i)).unwrap();
        assert_eq!(Input::parse(&text).unwrap().to_ideal().unwrap(), i);
    }
}
