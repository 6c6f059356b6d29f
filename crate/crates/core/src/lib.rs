pub mod boundary;
pub mod cli;
pub mod complex;
pub mod cycles;
pub mod cyclotomic;
pub mod fixtures;
pub mod homology;
pub mod linalg;
pub mod omega;
pub mod report;
pub mod structure;
