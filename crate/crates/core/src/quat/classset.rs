//! Right ideal classes of an order and the cross lattices `IᵢĪⱼ`.

use super::ideal::{find_equivalence, ideal_equivalent, neighbours, two_sided_ideal};
use super::lattice::{Lattice, LatticeOrder, QuatIdeal};
use crate::arith::{is_prime, prime_divisors};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// The lattice `IᵢĪⱼ` with left order `Rᵢ` and right order `Rⱼ`, and its
/// norm scale `n(Iᵢ)·n(Iⱼ)`.
#[derive(Clone, Debug)]
pub struct CrossLattice {
    pub lattice: Lattice,
    pub scale: Rational,
}

impl CrossLattice {
    /// Gram matrix divided by the norm scale; integral for ideals of an order.
    pub fn normalized_gram(&self) -> crate::linalg::Matrix {
        self.lattice.gram().scale(&self.scale.recip())
    }
}

#[derive(Clone, Debug)]
pub struct ClassSet {
    order: LatticeOrder,
    reps: Vec<QuatIdeal>,
    cross: Vec<Vec<CrossLattice>>,
}

impl ClassSet {
    /// Validates explicit representatives: each is a right ideal of `order`,
    /// the first equals `order`, and no two are equivalent.
    pub fn from_representatives(order: LatticeOrder, reps: Vec<Lattice>) -> Result<Self> {
        let mut ideals = Vec::with_capacity(reps.len());
        for (k, l) in reps.into_iter().enumerate() {
            let ideal = QuatIdeal::new(l)?;
            if ideal.right_order() != &order {
                return Err(Error::Usage(format!(
                    "representative {k} is not a right ideal of the order"
                )));
            }
            ideals.push(ideal);
        }
        if ideals.first().map(|i| i.lattice() != order.lattice()).unwrap_or(true) {
            return Err(Error::Usage("first representative must be the order itself".into()));
        }
        for a in 0..ideals.len() {
            for b in a + 1..ideals.len() {
                if ideal_equivalent(&ideals[a], &ideals[b])? {
                    return Err(Error::Usage(format!("representatives {a} and {b} are equivalent")));
                }
            }
        }
        Ok(ClassSet::assemble(order, ideals))
    }

    fn assemble(order: LatticeOrder, reps: Vec<QuatIdeal>) -> Self {
        let cross = reps
            .iter()
            .map(|a| {
                reps.iter()
                    .map(|b| CrossLattice {
                        lattice: a.lattice().product(&b.lattice().conj()),
                        scale: a.norm() * b.norm(),
                    })
                    .collect()
            })
            .collect();
        ClassSet { order, reps, cross }
    }

    pub fn order(&self) -> &LatticeOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representatives(&self) -> &[QuatIdeal] {
        &self.reps
    }

    /// Left orders `Rᵢ` of the representatives.
    pub fn left_orders(&self) -> Vec<&LatticeOrder> {
        self.reps.iter().map(QuatIdeal::left_order).collect()
    }

    /// `eᵢ = #Rᵢ^×`.
    pub fn unit_counts(&self) -> Vec<usize> {
        self.reps.iter().map(|r| r.left_order().unit_count()).collect()
    }

    /// `Σ 1/eᵢ`.
    pub fn mass(&self) -> Rational {
        self.unit_counts().iter().map(|&e| Rational::new(1, e as i64)).sum()
    }

    pub fn cross(&self, i: usize, j: usize) -> &CrossLattice {
        &self.cross[i][j]
    }

    /// Index of the class containing `ideal`, with an element `γ` such that
    /// `ideal = γ·I_k`.
    pub fn locate(&self, ideal: &QuatIdeal) -> Result<(usize, super::algebra::Coords)> {
        for (k, rep) in self.reps.iter().enumerate() {
            if let Some(g) = find_equivalence(ideal, rep)? {
                return Ok((k, g));
            }
        }
        Err(Error::Usage("ideal lies in no known class".into()))
    }

    /// Class permutation `i ↦ k` with `IᵢP ~ I_k` for a two-sided ideal `P`,
    /// with the elements `γᵢ` satisfying `IᵢP = γᵢ·I_k`.
    pub fn two_sided_action(&self, p: &QuatIdeal) -> Result<Vec<(usize, super::algebra::Coords)>> {
        self.reps
            .iter()
            .map(|rep| {
                let prod = QuatIdeal::new(rep.lattice().product(p.lattice()))?;
                self.locate(&prod)
            })
            .collect()
    }

    /// Type number: classes whose left orders are conjugate differ by a
    /// two-sided ideal, so this counts orbits under the ideals `P_p` for the
    /// primes dividing the discriminant.
    pub fn type_number(&self) -> Result<usize> {
        let h = self.len();
        let mut parent: Vec<usize> = (0..h).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                x = parent[x];
            }
            x
        }
        for p in prime_divisors(self.order.discriminant()?) {
            let ideal = two_sided_ideal(&self.order, p)?;
            for (i, (k, _)) in self.two_sided_action(&ideal)?.into_iter().enumerate() {
                let (a, b) = (root(&mut parent, i), root(&mut parent, k));
                parent[a.max(b)] = a.min(b);
            }
        }
        Ok((0..h).filter(|&i| root(&mut parent, i) == i).count())
    }
}

/// Breadth-first search over `p`-neighbours, starting from `R` itself. Each
/// round expands every ideal found in the previous round; the search stops
/// once a round adds no class, so the mass has stabilized.
pub fn class_set(order: &LatticeOrder, p_seed: u64) -> Result<ClassSet> {
    if !is_prime(p_seed) {
        return Err(Error::Usage(format!("{p_seed} is not prime")));
    }
    if order.discriminant()? % p_seed == 0 {
        return Err(Error::Usage(format!(
            "seed prime {p_seed} divides the discriminant; local order is not a matrix ring"
        )));
    }
    let first = QuatIdeal::new(order.lattice().clone())?;
    let mut reps = vec![first.clone()];
    let mut frontier = vec![first];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for ideal in &frontier {
            for l in neighbours(ideal, order, p_seed)? {
                let cand = QuatIdeal::new(l)?;
                let mut known = false;
                for r in &reps {
                    if ideal_equivalent(&cand, r)? {
                        known = true;
                        break;
                    }
                }
                if !known {
                    reps.push(cand.clone());
                    next.push(cand);
                }
            }
        }
        frontier = next;
    }
    Ok(ClassSet::assemble(order.clone(), reps))
}
