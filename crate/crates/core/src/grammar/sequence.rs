use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grammar::catalog::Catalog;
use crate::grammar::labeled::LabeledTree;
use crate::grammar::ops::{self, Applied, OpId, PieceId, Step};

/// A construction certificate: a base piece and the operations applied to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TSequence {
    pub base: PieceId,
    pub steps: Vec<Step>,
}

impl TSequence {
    pub fn new(base: PieceId) -> Self {
        TSequence { base, steps: Vec::new() }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("certificates serialize")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidCertificate(e.to_string()))
    }

    pub fn ops_used(&self) -> BTreeSet<OpId> {
        self.steps.iter().map(|s| s.op).collect()
    }

    /// The labeled base tree. Accepted bases are catalog entries, F3, and
    /// labeled coronas with at least two stems.
    pub fn base_tree(&self, catalog: &Catalog) -> Result<LabeledTree> {
        match self.base {
            PieceId::H(_) | PieceId::F(3) | PieceId::Corona(_) => catalog.piece(&self.base),
            PieceId::F(a) => Err(Error::InvalidCertificate(format!("F{a} is not a base"))),
        }
    }

    pub fn replay(&self, catalog: &Catalog) -> Result<LabeledTree> {
        self.replay_with(catalog, |_, _, _| Ok(()))
    }

    /// Replay, calling `visit(i, before, applied)` after step `i`.
    pub fn replay_with(
        &self,
        catalog: &Catalog,
        mut visit: impl FnMut(usize, &LabeledTree, &Applied) -> Result<()>,
    ) -> Result<LabeledTree> {
        let mut t = self.base_tree(catalog)?;
        for (i, step) in self.steps.iter().enumerate() {
            let applied = ops::apply_step(&t, step, catalog)
                .map_err(|e| Error::InvalidCertificate(format!("step {i}: {e}")))?;
            visit(i, &t, &applied)?;
            t = applied.tree;
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::catalog::catalog;

    #[test]
    fn json_shape() {
        let cert = TSequence {
            base: PieceId::H(2),
            steps: vec![Step { op: OpId::O3, host_vertex: 3, piece: PieceId::H(4), piece_vertex: 0 }],
        };
        let s = cert.to_json_string();
        assert_eq!(s, r#"{"base":"H2","steps":[{"op":"O3","host_vertex":3,"piece":"H4","piece_vertex":0}]}"#);
        assert_eq!(TSequence::from_json_str(&s).unwrap(), cert);
    }

    #[test]
    fn replay_checks_host_status() {
        let cat = catalog().unwrap();
        let good = TSequence {
            base: PieceId::H(2),
            steps: vec![Step { op: OpId::O3, host_vertex: 3, piece: PieceId::H(2), piece_vertex: 0 }],
        };
        let t = good.replay(cat).unwrap();
        assert_eq!(t.order(), 7);
        let mut bad = good.clone();
        bad.steps[0].host_vertex = 1;
        assert!(matches!(bad.replay(cat), Err(Error::InvalidCertificate(_))));
        let bare = TSequence::new(PieceId::F(1));
        assert!(bare.replay(cat).is_err());
    }
}
