use std::path::Path;

use serde::{Deserialize, Serialize};
use slocc_core::exactnum::{ExactMatrix, GaussianRational};
use slocc_core::pencil::PencilState;

use crate::CliError;

/// JSON interchange form of a state: exact scalar strings, never floats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    pub m: usize,
    pub n: usize,
    pub gamma1: Vec<Vec<String>>,
    pub gamma2: Vec<Vec<String>>,
}

impl StateDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed state document: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_state(s: &PencilState) -> Self {
        let strings = |a: &ExactMatrix| (0..a.rows()).map(|i| a.row(i).iter().map(ToString::to_string).collect()).collect();
        StateDocument { m: s.m_dim(), n: s.n_dim(), gamma1: strings(s.gamma1()), gamma2: strings(s.gamma2()) }
    }

    pub fn to_state(&self) -> Result<PencilState, CliError> {
        let g1 = self.matrix("gamma1", &self.gamma1)?;
        let g2 = self.matrix("gamma2", &self.gamma2)?;
        PencilState::new(g1, g2).map_err(|e| CliError::Input(e.to_string()))
    }

    fn matrix(&self, name: &str, rows: &[Vec<String>]) -> Result<ExactMatrix, CliError> {
        if rows.len() != self.m || rows.iter().any(|r| r.len() != self.n) {
            return Err(CliError::Input(format!("{name} is not {}x{}", self.m, self.n)));
        }
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|x| x.parse::<GaussianRational>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Input(format!("{name}: {e}")))?;
        ExactMatrix::from_rows(parsed).map_err(|e| CliError::Input(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"m":2,"n":3,"gamma1":[["1","0","0"],["0","1","0"]],"gamma2":[["0","1/2","0"],["0","0","-i"]]}"#;
        let doc = StateDocument::from_json(text).unwrap();
        let s = doc.to_state().unwrap();
        assert_eq!(StateDocument::from_state(&s), doc);
        assert_eq!(serde_json::to_string(&s).unwrap(), text);
    }

    #[test]
    fn rejects_bad_documents() {
        for text in [
            r#"{"m":2,"n":2,"gamma1":[["1","0"]],"gamma2":[["1","0"],["0","1"]]}"#,
            r#"{"m":2,"n":2,"gamma1":[["1","0"],["0","0.5"]],"gamma2":[["1","0"],["0","1"]]}"#,
            r#"{"m":2,"n":2,"gamma1":[[1,0],[0,1]],"gamma2":[["1","0"],["0","1"]]}"#,
            r#"{"m":2,"n":2,"gamma1":[["1","0"],["0","1"]],"gamma2":[["1","0"],["0","1"]],"x":1}"#,
        ] {
            let r = StateDocument::from_json(text).and_then(|d| d.to_state());
            assert!(matches!(r, Err(CliError::Input(_))), "{text}");
        }
    }
}
