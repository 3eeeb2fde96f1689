pub mod admissible;
pub mod coalgebra;
pub mod decoration;
pub mod dual;
pub mod enumerate;
pub mod error;
pub mod graft;
pub mod linear;
pub mod parse;
pub mod primitives;
pub mod rota_baxter;
pub mod shuffle;
pub mod tree;
pub mod verify;
pub mod word;
