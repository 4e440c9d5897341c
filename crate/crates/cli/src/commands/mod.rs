pub mod domain;
pub mod secular;
pub mod spectrum;
pub mod sturmian;
pub mod verify;
