//! The matrix file format:
//!
//! ```text
//! {"rows": m, "cols": n, "backend": "exact"|"float", "entries": [[[re, im], ...], ...]}
//! ```
//!
//! Exact entries are `"p/q"` strings, float entries are JSON numbers.

use std::fs;
use std::path::Path;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Backend, GaussRational, Scalar, C64};

#[derive(Serialize, Deserialize)]
struct Wire {
    rows: usize,
    cols: usize,
    backend: Backend,
    entries: Vec<Vec<[Value; 2]>>,
}

impl<S: Scalar> Matrix<S> {
    fn to_wire(&self) -> Wire {
        Wire {
            rows: self.rows(),
            cols: self.cols(),
            backend: S::BACKEND,
            entries: self
                .iter_rows()
                .map(|row| row.iter().map(Scalar::encode).collect())
                .collect(),
        }
    }

    fn from_wire(w: Wire) -> Result<Self> {
        if w.backend != S::BACKEND {
            return Err(Error::BackendMismatch(S::BACKEND, w.backend));
        }
        if w.entries.len() != w.rows {
            return Err(Error::Malformed(format!(
                "expected {} rows, found {}",
                w.rows,
                w.entries.len()
            )));
        }
        let mut data = Vec::with_capacity(w.rows * w.cols);
        for (i, row) in w.entries.iter().enumerate() {
            if row.len() != w.cols {
                return Err(Error::Malformed(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    w.cols
                )));
            }
            for [re, im] in row {
                data.push(S::decode(re, im)?);
            }
        }
        Matrix::new(w.rows, w.cols, data)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_wire()).expect("matrix serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_wire(serde_json::from_str(text)?)
    }
}

impl<S: Scalar> Serialize for Matrix<S> {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        self.to_wire().serialize(s)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for Matrix<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Self::from_wire(Wire::deserialize(d)?).map_err(D::Error::custom)
    }
}

/// A matrix file whose backend is only known after reading it.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMatrix {
    Exact(Matrix<GaussRational>),
    Float(Matrix<C64>),
}

impl AnyMatrix {
    pub fn backend(&self) -> Backend {
        match self {
            AnyMatrix::Exact(_) => Backend::Exact,
            AnyMatrix::Float(_) => Backend::Float,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            AnyMatrix::Exact(m) => m.shape(),
            AnyMatrix::Float(m) => m.shape(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let wire: Wire = serde_json::from_str(text)?;
        Ok(match wire.backend {
            Backend::Exact => AnyMatrix::Exact(Matrix::from_wire(wire)?),
            Backend::Float => AnyMatrix::Float(Matrix::from_wire(wire)?),
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
    }

    /// Converts to `backend`. Float to exact is refused: a double has no
    /// canonical rational it stands for.
    pub fn convert(self, backend: Backend) -> Result<AnyMatrix> {
        match (self, backend) {
            (m @ AnyMatrix::Exact(_), Backend::Exact) => Ok(m),
            (m @ AnyMatrix::Float(_), Backend::Float) => Ok(m),
            (AnyMatrix::Exact(m), Backend::Float) => Ok(AnyMatrix::Float(m.to_float())),
            (AnyMatrix::Float(_), Backend::Exact) => Err(Error::InvalidArgument(
                "cannot convert a float matrix to the exact backend".into(),
            )),
        }
    }

    pub fn to_float(&self) -> Matrix<C64> {
        match self {
            AnyMatrix::Exact(m) => m.to_float(),
            AnyMatrix::Float(m) => m.clone(),
        }
    }
}

impl Serialize for AnyMatrix {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        match self {
            AnyMatrix::Exact(m) => m.serialize(s),
            AnyMatrix::Float(m) => m.serialize(s),
        }
    }
}

pub fn save<S: Scalar>(m: &Matrix<S>, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, m.to_json() + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat;

    #[test]
    fn exact_round_trip() {
        let mut a: Matrix<GaussRational> = mat![[0, 1], [-2, 3]];
        a[(0, 0)] = GaussRational::from_fractions(-1, 2, 3, 4);
        let text = a.to_json();
        assert_eq!(
            text,
            r#"{"rows":2,"cols":2,"backend":"exact","entries":[[["-1/2","3/4"],["1/1","0/1"]],[["-2/1","0/1"],["3/1","0/1"]]]}"#
        );
        assert_eq!(Matrix::<GaussRational>::from_json(&text).unwrap(), a);
        assert_eq!(AnyMatrix::parse(&text).unwrap(), AnyMatrix::Exact(a));
    }

    #[test]
    fn float_round_trip() {
        let mut a: Matrix<C64> = mat![[1, 2, 3]];
        a[(0, 1)] = C64::new(0.1, -2.5e-300);
        let text = a.to_json();
        assert_eq!(Matrix::<C64>::from_json(&text).unwrap(), a);
    }

    #[test]
    fn empty_matrix() {
        let a: Matrix<C64> = Matrix::zeros(0, 3);
        let b = Matrix::<C64>::from_json(&a.to_json()).unwrap();
        assert_eq!(b.shape(), (0, 3));
    }

    #[test]
    fn malformed_inputs() {
        let bad = [
            r#"{"rows":1,"cols":2,"backend":"exact","entries":[[["1/1","0/1"]]]}"#,
            r#"{"rows":2,"cols":1,"backend":"exact","entries":[[["1/1","0/1"]]]}"#,
            r#"{"rows":1,"cols":1,"backend":"exact","entries":[[["1/0","0/1"]]]}"#,
            r#"{"rows":1,"cols":1,"backend":"exact","entries":[[[1,0]]]}"#,
            r#"{"rows":1,"cols":1,"backend":"float","entries":[[["1/1","0/1"]]]}"#,
            r#"{"rows":1,"cols":1,"backend":"complex","entries":[[[1,0]]]}"#,
            "not json",
        ];
        for text in bad {
            assert!(AnyMatrix::parse(text).is_err(), "{text}");
        }
        let float = r#"{"rows":1,"cols":1,"backend":"float","entries":[[[1,0]]]}"#;
        assert!(matches!(
            Matrix::<GaussRational>::from_json(float),
            Err(Error::BackendMismatch(Backend::Exact, Backend::Float))
        ));
    }

    #[test]
    fn conversion() {
        let a: Matrix<GaussRational> = mat![[1, 2]];
        let f = AnyMatrix::Exact(a).convert(Backend::Float).unwrap();
        assert_eq!(f, AnyMatrix::Float(mat![[1, 2]]));
        assert!(f.convert(Backend::Exact).is_err());
    }
}
