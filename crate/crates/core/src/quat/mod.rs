//! Definite quaternion algebras: elements, lattices, orders, ideals and
//! ideal classes.

pub mod algebra;
pub mod classset;
pub mod enumerate;
pub mod ideal;
pub mod lattice;

pub use algebra::{Coords, QuatElement, QuaternionAlgebra};
pub use classset::{class_set, ClassSet, CrossLattice};
pub use enumerate::{short_vectors, vectors_by_norm, vectors_up_to};
pub use ideal::{find_equivalence, ideal_equivalent, two_sided_ideal};
pub use lattice::{gram_matrix, left_right_order, Lattice, LatticeOrder, QuatIdeal};
