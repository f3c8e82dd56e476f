use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A total labeling `V -> {0, 1, 2}`; serializes as a digit string.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RdFunction {
    values: Vec<u8>,
}

impl RdFunction {
    pub fn new(values: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|&&c| c > 2) {
            return Err(Error::InvalidLabel(bad));
        }
        Ok(RdFunction { values })
    }

    pub(crate) fn from_trusted(values: Vec<u8>) -> Self {
        debug_assert!(values.iter().all(|&c| c <= 2));
        RdFunction { values }
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: usize) -> u8 {
        self.values[v]
    }

    pub fn weight(&self) -> usize {
        self.values.iter().map(|&c| c as usize).sum()
    }

    /// Vertices carrying label `c`.
    pub fn class(&self, c: u8) -> Vec<usize> {
        (0..self.values.len()).filter(|&v| self.values[v] == c).collect()
    }
}

impl fmt::Debug for RdFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RdFunction({self})")
    }
}

impl fmt::Display for RdFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.values {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for RdFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .bytes()
            .map(|b| match b {
                b'0'..=b'2' => Ok(b - b'0'),
                other => Err(Error::InvalidLabel(other)),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(RdFunction { values })
    }
}

impl Serialize for RdFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RdFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Whether every 0-vertex of `g` has a neighbor labeled 2 under `f`.
pub fn is_rdf(g: &Graph, f: &RdFunction) -> Result<bool> {
    if f.len() != g.order() {
        return Err(Error::SizeMismatch { expected: g.order(), got: f.len() });
    }
    Ok((0..g.order())
        .all(|v| f.get(v) != 0 || g.neighbors(v).iter().any(|&w| f.get(w) == 2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rdf_examples() {
        let p3 = Graph::path(3);
        assert!(is_rdf(&p3, &"020".parse().unwrap()).unwrap());
        assert!(!is_rdf(&p3, &"101".parse().unwrap()).unwrap());
        assert!(is_rdf(&Graph::path(4), &"1020".parse().unwrap()).unwrap());
        assert!(matches!(is_rdf(&p3, &"02".parse().unwrap()), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn parse_and_print() {
        let f: RdFunction = "0201".parse().unwrap();
        assert_eq!(f.weight(), 3);
        assert_eq!(f.to_string(), "0201");
        assert_eq!(serde_json::to_string(&f).unwrap(), "\"0201\"");
        assert!("013".parse::<RdFunction>().is_err());
        assert!(RdFunction::new(vec![0, 3]).is_err());
    }
}
