pub mod cli;
pub mod coordring;
pub mod curve;
pub mod fields;
pub mod identities;
pub mod points;
pub mod poly;
pub mod scan;
