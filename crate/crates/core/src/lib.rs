pub mod algebraic;
pub mod cert;
pub mod error;
pub mod haar;
pub mod interval;
pub mod padic;
pub mod parse;
pub mod places;
pub mod poly;
pub mod primes;
pub mod projaut;
pub mod rational;
pub mod roots;
