//! Hilbert bases of pointed rational cones.
//!
//! For a simplicial cone the candidates are the extreme generators together
//! with the nonzero lattice points of the fundamental half-open box; the
//! basis is the set of candidates that admit no splitting `x = y + z` into
//! nonzero semigroup elements. General pointed cones triangulate first and
//! the union of the simplicial bases is reduced once more.

use num_traits::Signed;

use crate::exactmath::{IntVector, Rat};
use crate::geom::{lattice_points_in_box, Cone, Simplex, SimplicialCone};
use crate::subdivide::triangulate_cone;
use crate::Result;

/// Minimal generating set of the semigroup of lattice points of a pointed
/// cone, canonically sorted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertBasis {
    dim: usize,
    cone_generators: Vec<IntVector>,
    elements: Vec<IntVector>,
}

impl HilbertBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Generators of the cone the basis belongs to.
    pub fn cone_generators(&self) -> &[IntVector] {
        &self.cone_generators
    }

    pub fn elements(&self) -> &[IntVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Hilbert basis of a simplicial cone.
pub fn hilbert_basis_simplicial(c: &SimplicialCone) -> Result<HilbertBasis> {
    let mut candidates: Vec<IntVector> = c.generators().to_vec();
    for p in lattice_points_in_box(c.generators())? {
        if !p.is_zero() {
            candidates.push(p);
        }
    }
    candidates.sort();
    candidates.dedup();

    let contains = |p: &IntVector| c.contains_int(p);
    let elements = reduce_to_irreducible(candidates, &contains);
    Ok(HilbertBasis {
        dim: c.dim(),
        cone_generators: c.generators().to_vec(),
        elements,
    })
}

/// Hilbert basis of a pointed full-dimensional cone: triangulate, take the
/// union of the simplicial bases, and reduce to irreducibles of the whole
/// semigroup. The result does not depend on the triangulation.
pub fn hilbert_basis(c: &Cone) -> Result<HilbertBasis> {
    let fan = triangulate_cone(c)?;
    let pieces: Vec<SimplicialCone> = fan.members().into_iter().cloned().collect();
    let mut candidates: Vec<IntVector> = Vec::new();
    for piece in &pieces {
        candidates.extend(hilbert_basis_simplicial(piece)?.elements().iter().cloned());
    }
    candidates.sort();
    candidates.dedup();

    let contains = |p: &IntVector| pieces.iter().any(|piece| piece.contains_int(p));
    let elements = reduce_to_irreducible(candidates, &contains);
    Ok(HilbertBasis {
        dim: c.dim(),
        cone_generators: c.generators().to_vec(),
        elements,
    })
}

/// Remove every candidate that splits as `y + z` with `y` a candidate and
/// `z` a nonzero semigroup element. Any splitting of an irreducible-looking
/// candidate can be rewritten to use a candidate summand, so this test is
/// exhaustive for candidate sets obtained from box points and generators.
fn reduce_to_irreducible(
    candidates: Vec<IntVector>,
    contains: &dyn Fn(&IntVector) -> bool,
) -> Vec<IntVector> {
    let mut elements = Vec::new();
    for x in &candidates {
        let reducible = candidates.iter().any(|y| {
            if y == x {
                return false;
            }
            let z = x.sub(y);
            !z.is_zero() && contains(&z)
        });
        if !reducible {
            elements.push(x.clone());
        }
    }
    elements
}

/// True iff every basis element lies in `factor * base` (exact membership,
/// closed region).
pub fn check_hilbert_containment(hb: &HilbertBasis, base: &Simplex, factor: &Rat) -> bool {
    if factor.is_negative() {
        return false;
    }
    let scaled = base.scaled(factor);
    hb.elements().iter().all(|e| scaled.contains(&e.to_rat()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::geom::base_simplex;

    fn iv(coords: &[i64]) -> IntVector {
        IntVector::from_i64s(coords)
    }

    #[test]
    fn unimodular_basis_is_generators() {
        let c = SimplicialCone::new(vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[0, 0, 1])]).unwrap();
        let hb = hilbert_basis_simplicial(&c).unwrap();
        assert_eq!(hb.elements(), c.generators());
    }

    #[test]
    fn simplicial_2d_examples() {
        let c = SimplicialCone::new(vec![iv(&[1, 0]), iv(&[1, 2])]).unwrap();
        let hb = hilbert_basis_simplicial(&c).unwrap();
        assert_eq!(hb.elements(), &[iv(&[1, 0]), iv(&[1, 1]), iv(&[1, 2])]);

        let c = SimplicialCone::new(vec![iv(&[1, 0]), iv(&[1, 3])]).unwrap();
        let hb = hilbert_basis_simplicial(&c).unwrap();
        assert_eq!(
            hb.elements(),
            &[iv(&[1, 0]), iv(&[1, 1]), iv(&[1, 2]), iv(&[1, 3])]
        );
    }

    #[test]
    fn general_cone_examples() {
        // non-extreme middle generator collapses to the simplicial basis
        let c = Cone::new(2, vec![iv(&[1, 0]), iv(&[1, 1]), iv(&[1, 2])]).unwrap();
        let hb = hilbert_basis(&c).unwrap();
        assert_eq!(hb.elements(), &[iv(&[1, 0]), iv(&[1, 1]), iv(&[1, 2])]);

        let c = Cone::new(2, vec![iv(&[0, 1]), iv(&[4, 1])]).unwrap();
        let hb = hilbert_basis(&c).unwrap();
        assert_eq!(
            hb.elements(),
            &[iv(&[0, 1]), iv(&[1, 1]), iv(&[2, 1]), iv(&[3, 1]), iv(&[4, 1])]
        );
    }

    #[test]
    fn containment_examples() {
        let c = SimplicialCone::new(vec![iv(&[1, 0]), iv(&[0, 1])]).unwrap();
        let hb = hilbert_basis_simplicial(&c).unwrap();
        assert!(check_hilbert_containment(&hb, &base_simplex(&c), &rat(1, 1)));

        let c = SimplicialCone::new(vec![iv(&[1, 0]), iv(&[1, 2])]).unwrap();
        let hb = hilbert_basis_simplicial(&c).unwrap();
        assert!(check_hilbert_containment(&hb, &base_simplex(&c), &rat(1, 1)));

        // (3,1) lies outside 2*conv(O, e1, e2)
        let unit = SimplicialCone::new(vec![iv(&[1, 0]), iv(&[0, 1])]).unwrap();
        let hb = HilbertBasis {
            dim: 2,
            cone_generators: unit.generators().to_vec(),
            elements: vec![iv(&[3, 1])],
        };
        assert!(!check_hilbert_containment(&hb, &base_simplex(&unit), &rat(2, 1)));
    }

    /// Brute-force irreducibility oracle for 2D cones: enumerate all lattice
    /// points of the cone inside the doubled box and keep those with no
    /// decomposition into two nonzero cone points.
    pub(crate) fn brute_force_hilbert_2d(c: &SimplicialCone) -> Vec<IntVector> {
        assert_eq!(c.dim(), 2);
        let g = c.generators();
        let corners = [
            IntVector::zero(2),
            g[0].clone(),
            g[1].clone(),
            g[0].add(&g[1]),
        ];
        let lo: Vec<i64> = (0..2)
            .map(|i| {
                corners
                    .iter()
                    .map(|p| {
                        let v: i64 = p[i].clone().try_into().unwrap();
                        v
                    })
                    .min()
                    .unwrap()
            })
            .collect();
        let hi: Vec<i64> = (0..2)
            .map(|i| {
                corners
                    .iter()
                    .map(|p| {
                        let v: i64 = p[i].clone().try_into().unwrap();
                        v
                    })
                    .max()
                    .unwrap()
            })
            .collect();
        // candidate region: [0,1)^2 box plus the generators themselves
        let mut cone_points = Vec::new();
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                let p = iv(&[x, y]);
                if !p.is_zero() && c.contains_int(&p) {
                    let xi = c.coordinates(&p.to_rat());
                    if xi.coords().iter().all(|v| *v <= rat(1, 1)) {
                        cone_points.push(p);
                    }
                }
            }
        }
        let mut out = Vec::new();
        for p in &cone_points {
            let mut reducible = false;
            'split: for q in &cone_points {
                let r = p.sub(q);
                if !r.is_zero() && !q.is_zero() && c.contains_int(&r) {
                    reducible = true;
                    break 'split;
                }
            }
            if !reducible {
                out.push(p.clone());
            }
        }
        out.sort();
        out
    }

    #[test]
    fn matches_brute_force_oracle_2d() {
        for gens in [
            [iv(&[1, 0]), iv(&[1, 5])],
            [iv(&[2, 1]), iv(&[1, 3])],
            [iv(&[3, -1]), iv(&[2, 5])],
            [iv(&[5, 2]), iv(&[1, 1])],
        ] {
            let c = SimplicialCone::new(gens.to_vec()).unwrap();
            let hb = hilbert_basis_simplicial(&c).unwrap();
            assert_eq!(hb.elements(), brute_force_hilbert_2d(&c));
        }
    }

    #[test]
    fn triangulation_independence() {
        // same cone, generator lists in different redundancy patterns
        let a = Cone::new(2, vec![iv(&[0, 1]), iv(&[4, 1])]).unwrap();
        let b = Cone::new(2, vec![iv(&[0, 1]), iv(&[2, 1]), iv(&[4, 1])]).unwrap();
        assert_eq!(
            hilbert_basis(&a).unwrap().elements(),
            hilbert_basis(&b).unwrap().elements()
        );
    }

    #[test]
    fn minimality_by_removal() {
        let c = SimplicialCone::new(vec![iv(&[1, 0]), iv(&[1, 3])]).unwrap();
        let hb = hilbert_basis_simplicial(&c).unwrap();
        // removing any element leaves the removed one non-representable as a
        // nonnegative integer combination of the rest (small brute force)
        for skip in 0..hb.len() {
            let rest: Vec<&IntVector> = hb
                .elements()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, v)| v)
                .collect();
            let target = &hb.elements()[skip];
            let mut representable = false;
            let bound = 4i64;
            let k = rest.len();
            let mut coeffs = vec![0i64; k];
            'outer: loop {
                let mut acc = IntVector::zero(2);
                for (i, &v) in rest.iter().enumerate() {
                    acc = acc.add(&v.scale(&coeffs[i].into()));
                }
                if &acc == target {
                    representable = true;
                    break;
                }
                for i in (0..k).rev() {
                    coeffs[i] += 1;
                    if coeffs[i] <= bound {
                        continue 'outer;
                    }
                    coeffs[i] = 0;
                }
                break;
            }
            assert!(!representable, "basis element {target} is redundant");
        }
    }
}
