//! Arrangement files shipped with the crate.

use crate::arrangements::{parse_arrangement, Arrangement};
use crate::error::Result;

/// `(name, description, JSON source)` for every bundled arrangement.
pub const BUNDLED: &[(&str, &str, &str)] = &[
    (
        "eight_planes",
        "xyzw(x-w)(y-w)(x+y+z)(x-y+z) in C^4, not locally free",
        include_str!("../data/eight_planes.json"),
    ),
    ("boolean2", "coordinate hyperplanes in C^2", include_str!("../data/boolean2.json")),
    ("boolean3", "coordinate hyperplanes in C^3", include_str!("../data/boolean3.json")),
    ("boolean4", "coordinate hyperplanes in C^4", include_str!("../data/boolean4.json")),
    ("boolean5", "coordinate hyperplanes in C^5", include_str!("../data/boolean5.json")),
    ("three_lines", "three lines through the origin of C^2", include_str!("../data/three_lines.json")),
    ("rank2_triple", "x-y, x-z, y-z in C^3 (rank 2)", include_str!("../data/rank2_triple.json")),
    ("generic4_c3", "x, y, z, x+y+z in C^3", include_str!("../data/generic4_c3.json")),
    ("generic5_c4", "x, y, z, w, x+y+z+w in C^4", include_str!("../data/generic5_c4.json")),
];

pub fn bundled_examples() -> Vec<(&'static str, &'static str)> {
    BUNDLED.iter().map(|(n, d, _)| (*n, *d)).collect()
}

pub fn bundled_source(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _, _)| *n == name).map(|(_, _, s)| *s)
}

/// Parses a bundled example by name.
pub fn bundled(name: &str) -> Option<Result<Arrangement>> {
    bundled_source(name).map(parse_arrangement)
}
