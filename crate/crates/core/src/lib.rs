pub mod kernel;
pub mod engine;
pub mod algdef;
pub mod verify;
pub mod bialgebra;
pub mod observables;
pub mod momentum;
pub mod wavepacket;
pub mod report;
