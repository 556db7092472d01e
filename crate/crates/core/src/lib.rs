pub mod action;
pub mod catalog;
pub mod double;
pub mod field;
pub mod groups;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod probe;
pub mod rep;
pub mod verify;
pub mod ydcatalog;
