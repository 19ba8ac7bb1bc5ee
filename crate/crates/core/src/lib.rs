pub mod lambda;
pub mod text;
pub mod tree;
pub mod types;
pub mod susp;
pub mod rewrite;
pub mod measures;
pub mod trace;
pub mod typing;
pub mod gen;
pub mod alt;
pub mod cli;
