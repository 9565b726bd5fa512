pub mod cli;
pub mod crinvariants;
pub mod geometry;
pub mod grauert;
pub mod jetcalc;
pub mod maps;
