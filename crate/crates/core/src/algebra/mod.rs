//! Exact arithmetic over `F_q`, `F_q[T]`, `F_q(T)` and finite extensions.

pub mod artin_schreier;
pub mod display;
pub mod ffactor;
pub mod field;
pub mod finite;
pub mod fq;
pub mod kummer;
pub mod poly;
pub mod primes;
pub mod ratfunc;

pub use field::{FiniteField, Field, FqAlgebra};
pub use finite::Gf;
pub use fq::{FfOp, Fq, FqConfig, FqElem};
pub use poly::{Poly, PolyRing};
pub use primes::{enumerate_primes, poly_factor, PrimePoly};
pub use ratfunc::{Place, RationalField, RationalFunc};
pub use artin_schreier::{as_reduce, AsClass};
pub use kummer::{kummer_class, KummerClass};
