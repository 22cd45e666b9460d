//! Shared inputs for the benchmarks.

use riordan::families::series::catalan;
use riordan::families::{make_family, FamilyInstance, Params};
use riordan::fps::Series;

/// The Catalan series truncated at `order`.
pub fn catalan_series(order: usize) -> Series {
    catalan(order).expect("catalan series")
}

/// `z C(z)`, a compositionally invertible series.
pub fn z_catalan(order: usize) -> Series {
    catalan_series(order).shift_up(1).truncate(order)
}

/// A catalog family with default parameters.
pub fn family(name: &str, order: usize) -> FamilyInstance {
    make_family(name, &Params::new(), order).expect("catalog family")
}
