pub mod complex;
pub mod cover;
pub mod hyperbolic;
pub mod io;
pub mod local;
pub mod lueck;
