//! The bundled level-17 example: algebra, orders, ideal, forms, lift
//! polynomials and the printed expansion data.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::io::{from_json, AlgebraDoc, FormDoc, LatticeDoc};
use crate::poly::Poly;
use crate::quat::algebra::QuaternionAlgebra;
use crate::quat::classset::ClassSet;
use crate::quat::lattice::{Lattice, LatticeOrder};
use crate::rational::Rational;

pub const ALGEBRA_JSON: &str = include_str!("../fixtures/n17/algebra.json");
pub const R1_JSON: &str = include_str!("../fixtures/n17/r1.json");
pub const R2_JSON: &str = include_str!("../fixtures/n17/r2.json");
pub const I12_JSON: &str = include_str!("../fixtures/n17/i12.json");
pub const GOLDEN_JSON: &str = include_str!("../fixtures/n17/golden.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramSet {
    pub r1: Vec<Vec<i64>>,
    pub r2: Vec<Vec<i64>>,
    pub i12: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisplayBox {
    pub a_max: i64,
    pub c_max: i64,
}

/// Reference values for the level-17 example.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Golden {
    pub level: u64,
    pub weight: u32,
    pub class_number: usize,
    pub type_number: usize,
    pub unit_counts: Vec<usize>,
    pub gram: GramSet,
    pub phi1: FormDoc,
    pub phi2: FormDoc,
    /// Lift polynomials for the two classes, in the eight lattice
    /// coordinates of `(x₁, x₂)`.
    pub p1: Poly,
    pub p12: Poly,
    pub display_box: DisplayBox,
    pub coefficients: Vec<(i64, i64, i64, Rational)>,
    pub hecke_eigenvalues: BTreeMap<u64, Rational>,
}

pub fn algebra() -> Arc<QuaternionAlgebra> {
    static CELL: OnceLock<Arc<QuaternionAlgebra>> = OnceLock::new();
    CELL.get_or_init(|| {
        let doc: AlgebraDoc = from_json(ALGEBRA_JSON).expect("bundled algebra parses");
        Arc::new(doc.build().expect("bundled algebra is valid"))
    })
    .clone()
}

fn lattice(text: &str) -> Lattice {
    let doc: LatticeDoc = from_json(text).expect("bundled lattice parses");
    doc.lattice(algebra()).expect("bundled lattice is valid")
}

pub fn r1() -> LatticeOrder {
    LatticeOrder::new(lattice(R1_JSON)).expect("R1 is an order")
}

pub fn r2() -> LatticeOrder {
    LatticeOrder::new(lattice(R2_JSON)).expect("R2 is an order")
}

pub fn i12() -> Lattice {
    lattice(I12_JSON)
}

/// Classes `[R₁, I₁₂]` of right `R₁`-ideals.
pub fn class_set() -> ClassSet {
    static CELL: OnceLock<ClassSet> = OnceLock::new();
    CELL.get_or_init(|| {
        let r = r1();
        ClassSet::from_representatives(r.clone(), vec![r.lattice().clone(), i12()])
            .expect("bundled representatives are valid")
    })
    .clone()
}

pub fn golden() -> Golden {
    static CELL: OnceLock<Golden> = OnceLock::new();
    CELL.get_or_init(|| from_json(GOLDEN_JSON).expect("bundled golden data parses"))
        .clone()
}

/// Hamilton quaternions `i² = j² = −1`, ramified at 2 and ∞.
pub fn hurwitz_algebra() -> Arc<QuaternionAlgebra> {
    static CELL: OnceLock<Arc<QuaternionAlgebra>> = OnceLock::new();
    CELL.get_or_init(|| {
        let z = |v: [i64; 4]| v.map(Rational::from);
        // products of 1, i, j, k
        let table = [
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]],
            [[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]],
            [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]],
        ];
        let constants = table.iter().map(|r| r.iter().map(|&c| z(c)).collect()).collect();
        let names = ["1", "i", "j", "k"].map(String::from);
        Arc::new(QuaternionAlgebra::new(names, constants, z([1, 0, 0, 0])).expect("Hamilton quaternions"))
    })
    .clone()
}

/// The Hurwitz order `⟨1, i, j, (1+i+j+k)/2⟩`.
pub fn hurwitz_order() -> LatticeOrder {
    let h = Rational::new(1, 2);
    let o = Rational::zero();
    let l = Rational::one();
    let basis = vec![
        [l.clone(), o.clone(), o.clone(), o.clone()],
        [o.clone(), l.clone(), o.clone(), o.clone()],
        [o.clone(), o.clone(), l.clone(), o.clone()],
        [h.clone(), h.clone(), h.clone(), h],
    ];
    LatticeOrder::new(Lattice::new(hurwitz_algebra(), basis).expect("independent")).expect("Hurwitz order")
}
