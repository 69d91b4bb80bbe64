pub mod linalg;
pub mod placement;
pub mod bench;
pub mod exact;
pub mod algebroid;
pub mod sim;
pub mod io;
pub mod cli;
