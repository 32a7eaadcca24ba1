pub mod catalog;
pub mod double;
pub mod embedding;
pub mod equiv;
pub mod exactnum;
pub mod fusion;
pub mod group;
pub mod io;
mod modp;
pub mod pointed;
pub mod premodular;
pub mod relprod;
