use std::sync::Arc;

use crate::error::Result;
use crate::orbit::Orbit;
use crate::permgroup::GroupTable;
use crate::representation::{IsotypicDecomposition, Representation};

/// Everything derived once from S4: the group, `D`, `D ⊗ D`, its isotypic
/// projectors and the labeled reference orbit of `x_0^1`.
#[derive(Clone, Debug)]
pub struct S4Context {
    pub group: Arc<GroupTable>,
    pub standard: Representation,
    pub square: Representation,
    pub decomposition: IsotypicDecomposition,
    pub orbit: Orbit,
}

impl S4Context {
    pub fn new() -> Result<S4Context> {
        let group = Arc::new(GroupTable::symmetric(4));
        let standard = Representation::standard(Arc::clone(&group))?;
        let square = standard.tensor_product(&standard)?;
        let decomposition = IsotypicDecomposition::of_tensor_square(&standard)?;
        let orbit = Orbit::reference(&standard)?;
        Ok(S4Context {
            group,
            standard,
            square,
            decomposition,
            orbit,
        })
    }
}
