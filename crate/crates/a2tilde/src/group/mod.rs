//! Finitely presented groups: abelianization, coset enumeration and
//! subgroup presentations.

pub mod abelian;
pub mod coset;
pub mod schreier;
pub mod words;

pub use abelian::{abelian_map, abelianization, AbelianInvariants};
pub use coset::{abelian_kernel_table, todd_coxeter, CosetTable, DEFAULT_MAX_COSETS};
pub use schreier::{perfect_check, reidemeister_schreier, PerfectReport, SubgroupSpec, Transversal};
pub use words::{Presentation, Word};
