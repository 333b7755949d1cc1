pub mod baseb;
pub mod cli;
pub mod error;
pub mod fibcore;
pub mod group;
pub mod orderq;
pub mod rewrite;
pub mod typology;
pub mod wheels;
