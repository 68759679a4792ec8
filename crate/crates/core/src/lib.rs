pub mod arith;
pub mod claims;
pub mod cli;
pub mod ehrhart;
pub mod factory;
pub mod geometry;
pub mod markov;
pub mod spec;
