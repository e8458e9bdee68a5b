//! Resolution of simplicial cones into unimodular ones with a certified
//! dilation ledger.
//!
//! Repeated stellar subdivision at box points drives the multiplicity to
//! one. The ledger tracks, for every inserted vector, its generation and
//! the exact membership in the corresponding multiple of the input base
//! simplex given by the `h` sequence; the final bound on every member
//! generator is `(d/2) * (3/2)^(mu - 2)` times the base simplex (dimension
//! two resolves within the base simplex itself).

use num_traits::{One, Signed, Zero};

use crate::exactmath::{
    adjugate, int, integer_determinant, primitive_vector, rat, Int, IntMatrix, IntVector, Rat,
    RatVector,
};
use crate::geom::{base_simplex, lattice_points_in_box, SimplicialCone};
use crate::{Error, Result};

/// Exact value of the recursive dilation sequence: 1 for `k <= 1`, `d/2`
/// at `k = 2`, and half the sum of the previous `d` values afterwards.
pub fn h_value(d: usize, k: i64) -> Rat {
    HSequence::new(d, k).value(k)
}

/// Memoized prefix of the dilation sequence for a fixed dimension.
#[derive(Clone, Debug)]
pub struct HSequence {
    d: usize,
    kmax: i64,
    /// values[i] = h_{i+2}; everything at index k <= 1 is constant 1
    values: Vec<Rat>,
}

impl HSequence {
    pub fn new(d: usize, kmax: i64) -> Self {
        assert!(d >= 2, "sequence is defined for dimension at least 2");
        let mut values = Vec::new();
        if kmax >= 2 {
            values.push(rat(d as i64, 2));
            for k in 3..=kmax {
                let mut sum = Rat::zero();
                for j in 1..=d as i64 {
                    sum += value_at(&values, k - j);
                }
                values.push(sum / rat(2, 1));
            }
        }
        HSequence { d, kmax, values }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn value(&self, k: i64) -> Rat {
        assert!(k <= self.kmax, "index beyond the computed prefix");
        value_at(&self.values, k)
    }
}

fn value_at(values: &[Rat], k: i64) -> Rat {
    if k <= 1 {
        Rat::one()
    } else {
        values[(k - 2) as usize].clone()
    }
}

/// `(3/2)^e` for a possibly negative exponent.
pub fn three_halves_pow(e: i64) -> Rat {
    let th = rat(3, 2);
    let mut acc = Rat::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &th;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// The certified bound factor of a resolution: `(d/2) * (3/2)^(mu-2)` for
/// dimension at least 3, and 1 in dimension 2.
pub fn resolution_bound_factor(d: usize, mu: &Int) -> Rat {
    if d == 2 {
        return Rat::one();
    }
    let exp: i64 = (mu - 2u32).try_into().unwrap_or(i64::MAX);
    rat(d as i64, 2) * three_halves_pow(exp)
}

/// One subdivision event: the inserted primitive vector, its generation,
/// the generations of the parent cone's generators, and the certified
/// dilation budget the vector was checked against.
#[derive(Clone, Debug)]
pub struct LedgerEntry {
    pub vector: IntVector,
    pub generation: usize,
    pub parent_generations: Vec<usize>,
    pub budget: Rat,
}

/// Unimodular triangulation of a simplicial cone with a per-event ledger.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub input: SimplicialCone,
    pub members: Vec<SimplicialCone>,
    pub ledger: Vec<LedgerEntry>,
    pub bound_factor: Rat,
    pub generations: usize,
}

/// Resolve a simplicial cone into unimodular subcones by stellar
/// subdivision at box points. Each chosen box point is replaced by its
/// complement in the support sum whenever that lowers the weighted
/// dilation budget, which keeps every inserted vector inside the ledger
/// bound.
pub fn resolve_cone(c: &SimplicialCone) -> Result<Resolution> {
    let d = c.dim();
    if d < 2 {
        return Err(Error::Dimension("resolution requires dimension at least 2".into()));
    }
    let base = base_simplex(c);
    let mu = c.multiplicity();
    let bound_factor = resolution_bound_factor(d, &mu);
    let mu_i64: i64 = mu.clone().try_into().map_err(|_| {
        Error::Precondition("multiplicity too large for desk-scale resolution".into())
    })?;
    let hseq = HSequence::new(d, mu_i64.max(2));

    struct Item {
        gens: Vec<IntVector>,
        stages: Vec<usize>,
        generation: usize,
    }

    let mut members = Vec::new();
    let mut ledger = Vec::new();
    let mut max_generation = 1usize;
    let mut work = vec![Item {
        gens: c.generators().to_vec(),
        stages: vec![1; d],
        generation: 1,
    }];

    while let Some(item) = work.pop() {
        max_generation = max_generation.max(item.generation);
        let m = IntMatrix::from_columns(&item.gens);
        let det = integer_determinant(&m)?;
        if det.abs().is_one() {
            members.push(SimplicialCone::new(item.gens)?);
            continue;
        }
        let adj = adjugate(&m)?;

        // box point with minimal barycentric coordinate sum, ties lexicographic
        let mut chosen: Option<(Rat, IntVector, RatVector)> = None;
        for p in lattice_points_in_box(&item.gens)? {
            if p.is_zero() {
                continue;
            }
            let xi = coords_from_adjugate(&adj, &det, &p);
            let sum = xi.coord_sum();
            match &chosen {
                Some((s, b, _)) if (s, b) <= (&sum, &p) => {}
                _ => chosen = Some((sum, p, xi)),
            }
        }
        let (_, w, xi) =
            chosen.expect("a non-unimodular cone has a nonzero box point");

        let support: Vec<usize> = (0..d).filter(|&i| xi[i].is_positive()).collect();
        debug_assert!(support.len() >= 2, "box points never lie on a ray");

        // replacement trick: swap w for (sum of support generators) - w when
        // that strictly lowers the weighted budget
        let weight = |coeffs: &dyn Fn(usize) -> Rat| -> Rat {
            support
                .iter()
                .map(|&j| coeffs(j) * hseq.value(item.stages[j] as i64))
                .sum()
        };
        let w_weight = weight(&|j| xi[j].clone());
        let alt_weight = weight(&|j| Rat::one() - &xi[j]);
        let chosen_vec = if alt_weight < w_weight {
            let mut alt = IntVector::zero(d);
            for &j in &support {
                alt = alt.add(&item.gens[j]);
            }
            alt.sub(&w)
        } else {
            w
        };
        let inserted = primitive_vector(&chosen_vec)?;

        let generation = item.generation + 1;
        let budget = if d == 2 {
            Rat::one()
        } else {
            hseq.value(generation as i64)
        };
        if !base.scaled(&budget).contains(&inserted.to_rat()) {
            return Err(Error::Precondition(format!(
                "resolution ledger violated: {inserted} is outside {budget} times the base simplex"
            )));
        }
        let created: Vec<usize> = item
            .stages
            .iter()
            .copied()
            .filter(|&s| s >= 2)
            .collect();
        let mut distinct = created.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != created.len() {
            return Err(Error::Precondition(
                "resolution ledger violated: created generators share a generation".into(),
            ));
        }
        ledger.push(LedgerEntry {
            vector: inserted.clone(),
            generation,
            parent_generations: item.stages.clone(),
            budget,
        });

        for &j in &support {
            let mut gens = item.gens.clone();
            let mut stages = item.stages.clone();
            gens[j] = inserted.clone();
            stages[j] = generation;
            work.push(Item {
                gens,
                stages,
                generation,
            });
        }
    }

    // final certificate: every member generator within the bound
    let scaled = base.scaled(&bound_factor);
    for member in &members {
        for g in member.generators() {
            if !scaled.contains(&g.to_rat()) {
                return Err(Error::Precondition(format!(
                    "resolution bound violated: generator {g} escapes {bound_factor} times the base simplex"
                )));
            }
        }
    }

    members.sort_by(|a, b| a.generators().cmp(b.generators()));
    Ok(Resolution {
        input: c.clone(),
        members,
        ledger,
        bound_factor,
        generations: max_generation,
    })
}

fn coords_from_adjugate(adj: &IntMatrix, det: &Int, p: &IntVector) -> RatVector {
    let scaled = adj.mul_vec(p);
    let det_rat = Rat::from_integer(det.clone());
    RatVector::new(
        scaled
            .coords()
            .iter()
            .map(|c| Rat::from_integer(c.clone()) / &det_rat)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subdivide::{facet_functional, truncated_cone_volume};

    fn iv(coords: &[i64]) -> IntVector {
        IntVector::from_i64s(coords)
    }

    #[test]
    fn h_examples() {
        for d in 2..=12 {
            assert_eq!(h_value(d, 1), Rat::one());
            assert_eq!(h_value(d, 0), Rat::one());
            assert_eq!(h_value(d, 2), rat(d as i64, 2));
        }
        // d = 3, k = 3: (h2 + h1 + h0)/2 = (3/2 + 1 + 1)/2 = 7/4
        assert_eq!(h_value(3, 3), rat(7, 4));
    }

    #[test]
    fn h_recurrence_identity_and_bound() {
        // h_k = (3/2) h_{k-1} - (1/2) h_{k-d-1} for k >= 3, and
        // h_k <= (d/2) (3/2)^{k-2} for k >= 2
        for d in 2..=12usize {
            let hs = HSequence::new(d, 64);
            for k in 3..=64i64 {
                let lhs = hs.value(k);
                let rhs = rat(3, 2) * hs.value(k - 1) - rat(1, 2) * hs.value(k - 1 - d as i64);
                assert_eq!(lhs, rhs, "identity fails at d={d}, k={k}");
            }
            for k in 2..=64i64 {
                let bound = rat(d as i64, 2) * three_halves_pow(k - 2);
                assert!(hs.value(k) <= bound, "bound fails at d={d}, k={k}");
                assert!(hs.value(k) >= hs.value(k - 1), "monotonicity fails at d={d}, k={k}");
            }
        }
    }

    #[test]
    fn resolve_unimodular_is_identity() {
        let c = SimplicialCone::new(vec![iv(&[1, 0]), iv(&[0, 1])]).unwrap();
        let r = resolve_cone(&c).unwrap();
        assert_eq!(r.members.len(), 1);
        assert!(r.ledger.is_empty());
    }

    #[test]
    fn resolve_2d_example() {
        let c = SimplicialCone::new(vec![iv(&[1, 0]), iv(&[1, 2])]).unwrap();
        let r = resolve_cone(&c).unwrap();
        assert_eq!(r.members.len(), 2);
        assert!(r.members.iter().all(|m| m.is_unimodular()));
        assert_eq!(r.ledger.len(), 1);
        assert_eq!(r.ledger[0].vector, iv(&[1, 1]));
        // dimension 2 resolves inside the base simplex itself
        let base = base_simplex(&c);
        for m in &r.members {
            for g in m.generators() {
                assert!(base.contains(&g.to_rat()));
            }
        }
    }

    #[test]
    fn resolve_3d_example() {
        let c = SimplicialCone::new(vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[1, 1, 2])]).unwrap();
        let r = resolve_cone(&c).unwrap();
        assert_eq!(r.ledger.len(), 1);
        assert_eq!(r.ledger[0].vector, iv(&[1, 1, 1]));
        assert_eq!(r.members.len(), 3);
        assert!(r.members.iter().all(|m| m.is_unimodular()));
    }

    #[test]
    fn resolve_is_a_triangulation() {
        for gens in [
            vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[1, 1, 5])],
            vec![iv(&[2, 1, 0]), iv(&[0, 3, 1]), iv(&[1, 1, 4])],
            vec![iv(&[1, 0]), iv(&[3, 7])],
        ] {
            let c = SimplicialCone::new(gens).unwrap();
            let r = resolve_cone(&c).unwrap();
            let ell = facet_functional(&c);
            let total = truncated_cone_volume(&c, &ell).unwrap();
            let sum: Rat = r
                .members
                .iter()
                .map(|m| truncated_cone_volume(m, &ell).unwrap())
                .sum();
            assert_eq!(total, sum);
            assert!(r.members.iter().all(|m| m.is_unimodular()));
            // generation count never exceeds the multiplicity
            assert!(Int::from(r.generations as i64) <= c.multiplicity());
        }
    }

    #[test]
    fn ledger_budgets_hold() {
        let c = SimplicialCone::new(vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[1, 2, 7])]).unwrap();
        let r = resolve_cone(&c).unwrap();
        let base = base_simplex(&c);
        for entry in &r.ledger {
            assert!(base.scaled(&entry.budget).contains(&entry.vector.to_rat()));
            // parents created in pairwise different generations
            let created: Vec<usize> = entry
                .parent_generations
                .iter()
                .copied()
                .filter(|&s| s >= 2)
                .collect();
            let mut d = created.clone();
            d.sort_unstable();
            d.dedup();
            assert_eq!(d.len(), created.len());
        }
        let bound = resolution_bound_factor(3, &c.multiplicity());
        let scaled = base.scaled(&bound);
        for m in &r.members {
            for g in m.generators() {
                assert!(scaled.contains(&g.to_rat()));
            }
        }
    }

    #[test]
    fn bound_factor_values() {
        assert_eq!(resolution_bound_factor(2, &int(5)), Rat::one());
        assert_eq!(resolution_bound_factor(3, &int(2)), rat(3, 2));
        assert_eq!(resolution_bound_factor(3, &int(4)), rat(27, 8));
        assert_eq!(resolution_bound_factor(4, &int(1)), rat(4, 3));
    }
}
