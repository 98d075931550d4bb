pub mod analysis;
pub mod bench;
pub mod counters;
pub mod decoder;
pub mod dense;
pub mod error;
pub mod field;
pub mod files;
pub mod gf2;
pub mod inner;
pub mod outer;
pub mod packet;
pub mod rlnc;
pub mod sim;
pub mod subcode;
