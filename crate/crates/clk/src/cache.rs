use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use clk_core::cassonlin::AtomData;
use clk_core::knotspec::TwoBridgeParams;

static ATOMS: OnceLock<RwLock<HashMap<TwoBridgeParams, Arc<AtomData>>>> = OnceLock::new();

/// Character and Alexander polynomials per atom, computed once per process.
pub fn atom(params: TwoBridgeParams) -> clk_core::Result<Arc<AtomData>> {
    let map = ATOMS.get_or_init(Default::default);
    if let Some(hit) = map.read().unwrap().get(&params) {
        log::debug!("atom cache hit for {params}");
        return Ok(Arc::clone(hit));
    }
    let data = Arc::new(AtomData::of(params)?);
    let mut guard = map.write().unwrap();
    Ok(Arc::clone(guard.entry(params).or_insert(data)))
}
