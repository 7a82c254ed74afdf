//! The shipped example structure files.

pub const HYPERELLIPTIC: &str = include_str!("../../../fixtures/hyperelliptic.alg");
pub const SOLV6: &str = include_str!("../../../fixtures/solv6.alg");
pub const TORUS4: &str = include_str!("../../../fixtures/torus4.alg");

/// `(name, text)` for every fixture, in a stable order.
pub const ALL: [(&str, &str); 3] = [("hyperelliptic", HYPERELLIPTIC), ("solv6", SOLV6), ("torus4", TORUS4)];

pub fn by_name(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
