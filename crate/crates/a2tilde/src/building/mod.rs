pub mod ball;
pub mod counts;
pub mod flats;
pub mod lattice;
pub mod orbits;
pub mod poly;
pub mod sectors;

pub use ball::{build_ball, BuildingBall};
pub use lattice::{shape, Vertex};
pub use poly::{Poly, Ring};
