//! The example algebras shipped with the crate.

use std::sync::Arc;

use crate::algebra::Dga;
use crate::error::{Error, Result};
use crate::format::parse_dga;

/// `(file name, contents)` of every bundled algebra.
pub const FILES: &[(&str, &str)] = &[
    ("unknot.dga", include_str!("../corpus/unknot.dga")),
    ("trefoil.dga", include_str!("../corpus/trefoil.dga")),
    (
        "chekanov_eliashberg.dga",
        include_str!("../corpus/chekanov_eliashberg.dga"),
    ),
    ("broken.dga", include_str!("../corpus/broken.dga")),
    ("signed_a.dga", include_str!("../corpus/signed_a.dga")),
    ("signed_b.dga", include_str!("../corpus/signed_b.dga")),
];

/// Bundled algebras that are honest DGAs (everything except `broken.dga`).
pub const VALID: &[&str] = &[
    "unknot.dga",
    "trefoil.dga",
    "chekanov_eliashberg.dga",
    "signed_a.dga",
    "signed_b.dga",
];

pub fn source(name: &str) -> Result<&'static str> {
    FILES
        .iter()
        .find(|(n, _)| *n == name || n.trim_end_matches(".dga") == name)
        .map(|(_, s)| *s)
        .ok_or_else(|| Error::Invalid(format!("no bundled algebra named `{name}`")))
}

pub fn load(name: &str) -> Result<Arc<Dga>> {
    Ok(Arc::new(parse_dga(source(name)?)?))
}
