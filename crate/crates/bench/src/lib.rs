//! Shared fixtures for the benchmarks.

use rings_core::{FrequencyVariable, NecklaceVector, RingTopology};

/// Macro-vertices of the four reference loci.
pub const REFERENCE_NECKLACES: [&str; 4] = ["1", "2,1", "2,1,1", "2,2,1"];

pub fn necklace(text: &str) -> NecklaceVector {
    NecklaceVector::parse(text).expect("fixture necklaces are valid")
}

pub fn ring(text: &str, m: usize) -> RingTopology {
    RingTopology::new(necklace(text), m).expect("fixture rings are valid")
}

pub fn absolute_velocity(gamma: f64) -> FrequencyVariable {
    FrequencyVariable::absolute_velocity(gamma).expect("positive gamma")
}
