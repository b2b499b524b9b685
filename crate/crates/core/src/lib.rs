pub mod clustering;
pub mod instance;
pub mod optima;
pub mod seeds;
pub mod aco;
pub mod rng;
pub mod pipeline;
pub mod bench;
