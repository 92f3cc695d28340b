pub mod cartan;
pub mod exactalg;
pub mod fgl;
pub mod quiver;
pub mod serre;
pub mod shuffle;
pub mod yangian;
