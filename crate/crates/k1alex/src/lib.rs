pub mod coeff;
pub mod groupring;
pub mod invariants;
pub mod presentations;
pub mod skewlaurent;
pub mod upsilon;
pub mod words;

#[cfg(feature = "cli")]
pub mod cli;
