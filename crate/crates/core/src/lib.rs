#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod poly;
pub mod puiseux;
pub mod cycles;
pub mod cerf;
pub mod monodromy;
