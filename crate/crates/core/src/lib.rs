pub mod algebra;
pub mod cert;
pub mod game;
pub mod ideal;
pub mod ratmat;
pub mod sos;
