use serde_json::{json, Value};

use super::field::Field;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// A chain `F(q_0) ⊆ F(q_1) ⊆ ...` with `dim F(q_i) = q_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialFlag {
    shape: Vec<usize>,
    spaces: Vec<Subspace>,
}

impl PartialFlag {
    pub fn new(shape: Vec<usize>, spaces: Vec<Subspace>) -> Result<PartialFlag> {
        if shape.len() != spaces.len() {
            return Err(Error::usage(format!(
                "flag shape has {} entries but {} spaces were given",
                shape.len(),
                spaces.len()
            )));
        }
        for (i, (q, s)) in shape.iter().zip(&spaces).enumerate() {
            if s.dim() != *q {
                return Err(Error::usage(format!("F(q_{i}) has dimension {} not {q}", s.dim())));
            }
        }
        for i in 1..spaces.len() {
            if !spaces[i].contains(&spaces[i - 1])? {
                return Err(Error::usage(format!("F(q_{}) is not contained in F(q_{i})", i - 1)));
            }
        }
        Ok(PartialFlag { shape, spaces })
    }

    /// The coordinate flag `E(q_0) ⊆ E(q_1) ⊆ ...`.
    pub fn standard(field: Field, n: usize, shape: &[usize]) -> PartialFlag {
        PartialFlag {
            shape: shape.to_vec(),
            spaces: shape.iter().map(|&q| Subspace::standard(field, n, q)).collect(),
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn space(&self, i: usize) -> &Subspace {
        &self.spaces[i]
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "shape": self.shape,
            "spaces": self.spaces.iter().map(Subspace::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value, field: Field) -> Result<PartialFlag> {
        let shape = v
            .get("shape")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::usage("flag needs a \"shape\" array"))?
            .iter()
            .map(|q| q.as_u64().map(|q| q as usize))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::usage("flag shape entries must be integers"))?;
        let spaces = v
            .get("spaces")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::usage("flag needs a \"spaces\" array"))?
            .iter()
            .map(|s| Subspace::from_json(s, field))
            .collect::<Result<Vec<_>>>()?;
        PartialFlag::new(shape, spaces)
    }
}
