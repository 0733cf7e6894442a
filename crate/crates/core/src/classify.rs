//! Variety type from the number of vanishing even theta constants.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::theta::SquaredThetaNullPoint;

/// Decomposition type of a principally polarized abelian surface or threefold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VarietyKind {
    PlaneQuartic,
    Hyperelliptic3,
    #[serde(rename = "E_x_Jac2")]
    EJac2,
    #[serde(rename = "E_x_E_x_E")]
    EEE,
    Jacobian2,
    #[serde(rename = "E_x_E")]
    EE,
}

impl VarietyKind {
    /// True for Jacobians of smooth curves.
    pub fn is_jacobian(&self) -> bool {
        matches!(
            self,
            Self::PlaneQuartic | Self::Hyperelliptic3 | Self::Jacobian2
        )
    }
}

/// Genus, vanishing count and kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarietyType {
    pub g: usize,
    pub n_van: usize,
    pub kind: VarietyKind,
}

/// Maps a vanishing count to a kind, rejecting counts of singular varieties.
pub fn kind_of(g: usize, n_van: usize) -> Result<VarietyKind> {
    use VarietyKind::*;
    match (g, n_van) {
        (3, 0) => Ok(PlaneQuartic),
        (3, 1) => Ok(Hyperelliptic3),
        (3, 6) => Ok(EJac2),
        (3, 9) => Ok(EEE),
        (2, 0) => Ok(Jacobian2),
        (2, 1) => Ok(EE),
        _ => Err(Error::SingularOrCorrupt { g, n_van }),
    }
}

/// Counts vanishing even entries and classifies.
pub fn vanishing_count(th: &SquaredThetaNullPoint) -> Result<VarietyType> {
    let g = th.genus();
    let n_van = th.n_van();
    Ok(VarietyType {
        g,
        n_van,
        kind: kind_of(g, n_van)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table() {
        assert_eq!(kind_of(3, 9).unwrap(), VarietyKind::EEE);
        assert_eq!(kind_of(2, 1).unwrap(), VarietyKind::EE);
        assert!(kind_of(3, 2).is_err());
        assert!(kind_of(3, 10).is_err());
        assert_eq!(
            serde_json::to_string(&VarietyKind::EJac2).unwrap(),
            "\"E_x_Jac2\""
        );
    }
}
