use serde::{Deserialize, Serialize};

use super::congruence::Congruence;
use super::semigroup::{Elem, FiniteSemigroup};
use crate::error::Result;

/// `{ "elements": [names...], "table": [[ids...]...] }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupJson {
    pub elements: Vec<String>,
    pub table: Vec<Vec<Elem>>,
}

impl SemigroupJson {
    pub fn build(self) -> Result<FiniteSemigroup> {
        FiniteSemigroup::with_names(self.table, self.elements)
    }
}

impl From<&FiniteSemigroup> for SemigroupJson {
    fn from(s: &FiniteSemigroup) -> Self {
        SemigroupJson { elements: s.names().to_vec(), table: s.table_rows() }
    }
}

impl FiniteSemigroup {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<SemigroupJson>(text)?.build()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SemigroupJson::from(self)).expect("plain data serializes")
    }
}

/// `{ "blocks": [[ids...]...] }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceJson {
    pub blocks: Vec<Vec<Elem>>,
}

impl CongruenceJson {
    pub fn build(self, s: &FiniteSemigroup) -> Result<Congruence> {
        let c = Congruence::from_blocks(s.size(), self.blocks)?;
        c.validate(s)?;
        Ok(c)
    }
}

impl From<&Congruence> for CongruenceJson {
    fn from(c: &Congruence) -> Self {
        CongruenceJson { blocks: c.blocks().to_vec() }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::gallery;

    #[test]
    fn semigroup_round_trip() {
        let s = gallery::ab_star_monoid();
        let back = FiniteSemigroup::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn bad_json_is_reported() {
        assert!(matches!(FiniteSemigroup::from_json("{\"elements\": 3}"), Err(Error::Json(_))));
        let text = r#"{"elements":["x","y"],"table":[[1,1],[0,0]]}"#;
        assert!(matches!(FiniteSemigroup::from_json(text), Err(Error::AssociativityViolation { .. })));
    }

    #[test]
    fn congruence_json_is_validated() {
        let z4 = gallery::cyclic(4);
        let ok: CongruenceJson = serde_json::from_str(r#"{"blocks":[[0,2],[1,3]]}"#).unwrap();
        assert_eq!(ok.build(&z4).unwrap().block_count(), 2);
        let bad: CongruenceJson = serde_json::from_str(r#"{"blocks":[[0,1],[2,3]]}"#).unwrap();
        assert!(bad.build(&z4).is_err());
    }
}
