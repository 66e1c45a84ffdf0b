#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bases;
pub mod crystal;
pub mod exactalg;
pub mod quiver;
pub mod repmodule;
