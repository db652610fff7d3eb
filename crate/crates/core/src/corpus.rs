//! The bundled worked examples.

pub const T3: &str = include_str!("../corpus/t3.iaf");
pub const HEISENBERG: &str = include_str!("../corpus/heisenberg.iaf");
pub const MAPPING_TORUS: &str = include_str!("../corpus/mapping_torus.iaf");

/// `(name, text)` for every bundled example.
pub const ALL: [(&str, &str); 3] = [("t3", T3), ("heisenberg", HEISENBERG), ("mapping_torus", MAPPING_TORUS)];

pub fn by_name(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
