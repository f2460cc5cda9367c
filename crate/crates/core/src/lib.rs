//! Holonomic D-modules over ℚ, ℚ(z) and ℚ[z]: Weyl-algebra arithmetic,
//! Gröbner bases for modules, Ext and characteristic cycles, z-adic lattices
//! and algebraic de Rham cohomology.

pub mod scalars;
pub mod weyl;
pub mod groebner;
pub mod factor;
pub mod linalg;
pub mod module_theory;
pub mod lattice;
pub mod derham;
