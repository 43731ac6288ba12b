//! Exact arithmetic for linear determinantal representations of smooth plane
//! cubics over finite fields.

pub mod counting;
pub mod detrep;
pub mod gf;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod parse;
pub mod plane;
pub mod render;
