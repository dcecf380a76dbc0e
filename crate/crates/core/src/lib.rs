pub mod arena;
pub mod bisim;
pub mod cli;
pub mod coop;
pub mod error;
pub mod format;
pub mod game;
pub mod gen;
pub mod graph;
pub mod lasso;
pub mod ltl;
pub mod mp;
pub mod strategy;
