//! Triangulations and stellar subdivisions.
//!
//! Cones triangulate into simplicial pieces spanned by their extreme
//! generators; simplicial cones refine further into empty ones by stellar
//! subdivision at interior lattice points of the base simplex; polytopes
//! triangulate into empty simplices by placing all their lattice points.
//! Every subdivision records provenance so downstream ledgers can be
//! audited.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::exactmath::{
    hyperplane_normal, Int, IntMatrix, IntVector, Rat, RatMatrix, RatVector,
};
use crate::geom::{extreme_generators, Cone, LatticePolytope, Simplex, SimplicialCone};
use crate::{Error, Result};

/// Node of a subdivision forest. Roots carry no subdivision point.
#[derive(Clone, Debug)]
pub struct FanNode {
    pub cone: SimplicialCone,
    pub parent: Option<usize>,
    /// Lattice point whose stellar subdivision produced this node.
    pub point: Option<IntVector>,
    pub generation: usize,
    pub children: Vec<usize>,
}

/// Simplicial fan with provenance. Members are the leaves of the forest;
/// they have pairwise disjoint interiors and their union is the input.
#[derive(Clone, Debug)]
pub struct Fan {
    nodes: Vec<FanNode>,
}

impl Fan {
    fn from_roots(roots: Vec<SimplicialCone>) -> Fan {
        Fan {
            nodes: roots
                .into_iter()
                .map(|cone| FanNode {
                    cone,
                    parent: None,
                    point: None,
                    generation: 1,
                    children: Vec::new(),
                })
                .collect(),
        }
    }

    pub fn nodes(&self) -> &[FanNode] {
        &self.nodes
    }

    pub fn members(&self) -> Vec<&SimplicialCone> {
        let mut leaves: Vec<&SimplicialCone> = self
            .nodes
            .iter()
            .filter(|n| n.children.is_empty())
            .map(|n| &n.cone)
            .collect();
        leaves.sort_by(|a, b| a.generators().cmp(b.generators()));
        leaves
    }

    fn attach_children(&mut self, parent: usize, point: IntVector, cones: Vec<SimplicialCone>) {
        let generation = self.nodes[parent].generation + 1;
        for cone in cones {
            let idx = self.nodes.len();
            self.nodes.push(FanNode {
                cone,
                parent: Some(parent),
                point: Some(point.clone()),
                generation,
                children: Vec::new(),
            });
            self.nodes[parent].children.push(idx);
        }
    }
}

/// Triangulate a pointed full-dimensional cone into simplicial cones spanned
/// by its extreme generators, by placing the generators in lexicographic
/// order.
pub fn triangulate_cone(c: &Cone) -> Result<Fan> {
    let dim = c.dim();
    if !c.is_full_dimensional() {
        return Err(Error::Dimension(
            "triangulation requires a full-dimensional cone".into(),
        ));
    }
    let gens = extreme_generators(c)?;
    let pieces = placing_rays(&gens, dim)?;
    let roots = pieces
        .into_iter()
        .map(|idx| SimplicialCone::new(idx.iter().map(|&i| gens[i].clone()).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Fan::from_roots(roots))
}

/// Stellar subdivision of a simplicial cone at `w`: one subcone per
/// generator with positive coefficient in the representation of `w`, with
/// that generator replaced by the primitive vector on the ray of `w`.
pub fn stellar_subdivision(c: &SimplicialCone, w: &IntVector) -> Result<Vec<SimplicialCone>> {
    if w.is_zero() {
        return Err(Error::Precondition("stellar point must be nonzero".into()));
    }
    if w.dim() != c.dim() {
        return Err(Error::Dimension("stellar point dimension mismatch".into()));
    }
    let xi = c.coordinates(&w.to_rat());
    if xi.coords().iter().any(|x| x.is_negative()) {
        return Err(Error::Precondition("stellar point lies outside the cone".into()));
    }
    let positive: Vec<usize> = (0..c.dim()).filter(|&i| xi[i].is_positive()).collect();
    if positive.len() < 2 {
        return Err(Error::Precondition(
            "stellar point lies on an extreme ray".into(),
        ));
    }
    let wp = crate::exactmath::primitive_vector(w)?;
    let mut out = Vec::with_capacity(positive.len());
    for &i in &positive {
        let mut gens = c.generators().to_vec();
        gens[i] = wp.clone();
        out.push(SimplicialCone::new(gens)?);
    }
    Ok(out)
}

/// Lattice points of the base simplex of a simplicial cone, by exact
/// integer membership over the bounding box.
pub fn base_simplex_lattice_points(c: &SimplicialCone) -> Vec<IntVector> {
    let d = c.dim();
    let det = c.determinant();
    let mut lo = vec![Int::zero(); d];
    let mut hi = vec![Int::zero(); d];
    for g in c.generators() {
        for i in 0..d {
            if g[i] < lo[i] {
                lo[i] = g[i].clone();
            }
            if g[i] > hi[i] {
                hi[i] = g[i].clone();
            }
        }
    }
    let adj = crate::exactmath::adjugate(&IntMatrix::from_columns(c.generators()))
        .expect("simplicial cone generator matrix is square");
    let mut out = Vec::new();
    let mut cursor = lo.clone();
    'outer: loop {
        let z = IntVector::new(cursor.clone());
        let y = adj.mul_vec(&z);
        let inside = if det.is_negative() {
            y.coords().iter().all(|v| !v.is_positive()) && y.coord_sum() >= *det
        } else {
            y.coords().iter().all(|v| !v.is_negative()) && y.coord_sum() <= *det
        };
        if inside {
            out.push(z);
        }
        for i in (0..d).rev() {
            cursor[i] += 1;
            if cursor[i] <= hi[i] {
                continue 'outer;
            }
            cursor[i] = lo[i].clone();
        }
        break;
    }
    out.sort();
    out
}

/// Refine a simplicial cone into empty simplicial cones by repeated
/// stellar subdivision. The subdivision point is the non-vertex lattice
/// point of the base simplex with minimal barycentric coordinate sum,
/// ties broken lexicographically.
pub fn refine_to_empty(c: &SimplicialCone) -> Result<Fan> {
    let mut fan = Fan::from_roots(vec![c.clone()]);
    let mut work = vec![0usize];
    while let Some(idx) = work.pop() {
        let cone = fan.nodes[idx].cone.clone();
        let Some(point) = pick_refinement_point(&cone) else {
            continue;
        };
        let children = stellar_subdivision(&cone, &point)?;
        if cfg!(debug_assertions) {
            let parent_count = base_simplex_lattice_points(&cone).len();
            for child in &children {
                debug_assert!(child.multiplicity() < cone.multiplicity());
                debug_assert!(base_simplex_lattice_points(child).len() < parent_count);
            }
        }
        let first_child = fan.nodes.len();
        fan.attach_children(idx, point, children);
        for i in first_child..fan.nodes.len() {
            work.push(i);
        }
    }
    Ok(fan)
}

fn pick_refinement_point(c: &SimplicialCone) -> Option<IntVector> {
    let pts = base_simplex_lattice_points(c);
    let zero = IntVector::zero(c.dim());
    let mut best: Option<(Rat, IntVector)> = None;
    for p in pts {
        if p == zero || c.generators().contains(&p) {
            continue;
        }
        let sum = c.coordinates(&p.to_rat()).coord_sum();
        match &best {
            Some((s, b)) if (s, b) <= (&sum, &p) => {}
            _ => best = Some((sum, p)),
        }
    }
    best.map(|(_, p)| p)
}

/// Triangulate a full-dimensional lattice polytope into empty simplices by
/// placing all of its lattice points in lexicographic order.
pub fn triangulate_polytope_empty(p: &LatticePolytope) -> Result<Vec<Simplex>> {
    if !p.is_full_dimensional() {
        return Err(Error::Dimension(
            "triangulation requires a full-dimensional polytope".into(),
        ));
    }
    let points = p.lattice_points()?;
    let cells = placing_affine(&points, p.dim())?;
    let mut out = Vec::with_capacity(cells.len());
    for cell in cells {
        out.push(Simplex::from_int_vertices(
            cell.iter().map(|&i| points[i].clone()).collect(),
        )?);
    }
    out.sort();
    Ok(out)
}

/// Triangulate a full-dimensional lattice polytope into lattice simplices
/// using only its vertices (no interior points). The cells need not be
/// empty; this is the decomposition the verifier uses for region
/// bookkeeping.
pub fn triangulate_polytope_vertices(p: &LatticePolytope) -> Result<Vec<Simplex>> {
    if !p.is_full_dimensional() {
        return Err(Error::Dimension(
            "triangulation requires a full-dimensional polytope".into(),
        ));
    }
    let points = p.vertices().to_vec();
    let cells = placing_affine(&points, p.dim())?;
    let mut out = Vec::with_capacity(cells.len());
    for cell in cells {
        out.push(Simplex::from_int_vertices(
            cell.iter().map(|&i| points[i].clone()).collect(),
        )?);
    }
    out.sort();
    Ok(out)
}

/// Volume of `cone` truncated by the half-space `ell(x) <= 1`, exact. The
/// functional must be positive on every generator. Used to check volume
/// conservation of conical subdivisions against a fixed cross-section.
pub fn truncated_cone_volume(cone: &SimplicialCone, ell: &RatVector) -> Result<Rat> {
    let d = cone.dim();
    let mut denom = Rat::one();
    for g in cone.generators() {
        let v = ell.dot(&g.to_rat());
        if !v.is_positive() {
            return Err(Error::Precondition(
                "functional must be positive on the generators".into(),
            ));
        }
        denom *= v;
    }
    let mut fact = Int::one();
    for i in 1..=d {
        fact *= Int::from(i as i64);
    }
    Ok(Rat::from_integer(cone.multiplicity()) / (Rat::from_integer(fact) * denom))
}

/// The covector taking value 1 on every generator of the cone (the far
/// facet of the base simplex).
pub fn facet_functional(c: &SimplicialCone) -> RatVector {
    let m = IntMatrix::from_columns(c.generators()).transpose().to_rat();
    let ones = RatVector::new(vec![Rat::one(); c.dim()]);
    m.solve(&ones)
        .unique()
        .cloned()
        .expect("generator matrix is invertible")
}

// ---------------------------------------------------------------------------
// placing (beneath-beyond) engines
// ---------------------------------------------------------------------------

/// Triangulate the cone over `rays` (assumed extreme, pairwise distinct) by
/// inserting them in lexicographic order. Returns index sets of the pieces.
fn placing_rays(rays: &[IntVector], dim: usize) -> Result<Vec<Vec<usize>>> {
    let mut order: Vec<usize> = (0..rays.len()).collect();
    order.sort_by(|&a, &b| rays[a].cmp(&rays[b]));

    // seed: greedily collect a linearly independent set in lex order
    let mut seed: Vec<usize> = Vec::new();
    let mut deferred: Vec<usize> = Vec::new();
    let mut rest: Vec<usize> = Vec::new();
    for &i in &order {
        if seed.len() == dim {
            rest.push(i);
            continue;
        }
        let mut candidate: Vec<RatVector> = seed.iter().map(|&j| rays[j].to_rat()).collect();
        candidate.push(rays[i].to_rat());
        if RatMatrix::from_columns(&candidate).rank() == candidate.len() {
            seed.push(i);
        } else {
            deferred.push(i);
        }
    }
    if seed.len() < dim {
        return Err(Error::Dimension("rays do not span the ambient space".into()));
    }

    let mut pieces: Vec<Vec<usize>> = vec![seed.clone()];
    let mut boundary: BTreeMap<Vec<usize>, IntVector> = BTreeMap::new();
    for skip in 0..dim {
        let facet: Vec<usize> = seed
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != skip)
            .map(|(_, &i)| i)
            .collect();
        let normal = outward_ray_normal(rays, &facet, &rays[seed[skip]])?;
        boundary.insert(sorted(facet), normal);
    }

    for &i in deferred.iter().chain(rest.iter()) {
        let visible: Vec<Vec<usize>> = boundary
            .iter()
            .filter(|(_, n)| n.dot(&rays[i]).is_positive())
            .map(|(f, _)| f.clone())
            .collect();
        if visible.is_empty() {
            return Err(Error::Degenerate(format!(
                "ray {} is not outside the current cone hull",
                rays[i]
            )));
        }
        for facet in visible {
            let mut piece = facet.clone();
            piece.push(i);
            for skip in 0..piece.len() {
                let sub: Vec<usize> = piece
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != skip)
                    .map(|(_, &j)| j)
                    .collect();
                let key = sorted(sub.clone());
                if boundary.remove(&key).is_none() {
                    let normal = outward_ray_normal(rays, &sub, &rays[piece[skip]])?;
                    boundary.insert(key, normal);
                }
            }
            pieces.push(piece);
        }
    }
    Ok(pieces)
}

fn outward_ray_normal(
    rays: &[IntVector],
    facet: &[usize],
    opposite: &IntVector,
) -> Result<IntVector> {
    let spanning: Vec<IntVector> = facet.iter().map(|&i| rays[i].clone()).collect();
    let n = hyperplane_normal(&spanning)?;
    let side = n.dot(opposite);
    if side.is_zero() {
        return Err(Error::Degenerate("facet normal degenerates".into()));
    }
    Ok(if side.is_positive() { n.neg() } else { n })
}

/// Placing triangulation of a point set in affine space, inserting in
/// lexicographic order (points that are affinely dependent on the seed
/// prefix are deferred until the seed simplex exists). Every input point
/// becomes a vertex of the triangulation.
fn placing_affine(points: &[IntVector], dim: usize) -> Result<Vec<Vec<usize>>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]));

    let mut seed: Vec<usize> = Vec::new();
    let mut deferred: Vec<usize> = Vec::new();
    let mut rest: Vec<usize> = Vec::new();
    for &i in &order {
        if seed.len() == dim + 1 {
            rest.push(i);
            continue;
        }
        if seed.is_empty() {
            seed.push(i);
            continue;
        }
        let base = points[seed[0]].to_rat();
        let mut edges: Vec<RatVector> = seed[1..]
            .iter()
            .map(|&j| points[j].to_rat().sub(&base))
            .collect();
        edges.push(points[i].to_rat().sub(&base));
        if RatMatrix::from_columns(&edges).rank() == edges.len() {
            seed.push(i);
        } else {
            deferred.push(i);
        }
    }
    if seed.len() < dim + 1 {
        return Err(Error::Dimension("points do not span the ambient space".into()));
    }

    let mut cells: Vec<Vec<usize>> = vec![seed.clone()];
    let mut boundary: BTreeMap<Vec<usize>, (IntVector, Int)> = BTreeMap::new();
    for skip in 0..seed.len() {
        let facet: Vec<usize> = seed
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != skip)
            .map(|(_, &i)| i)
            .collect();
        let oriented = outward_affine_facet(points, &facet, &points[seed[skip]])?;
        boundary.insert(sorted(facet), oriented);
    }

    for &i in deferred.iter().chain(rest.iter()) {
        let visible: Vec<Vec<usize>> = boundary
            .iter()
            .filter(|(_, (n, b))| n.dot(&points[i]) > *b)
            .map(|(f, _)| f.clone())
            .collect();
        if visible.is_empty() {
            return Err(Error::Degenerate(format!(
                "point {} is not outside the current hull",
                points[i]
            )));
        }
        for facet in visible {
            let mut cell = facet.clone();
            cell.push(i);
            for skip in 0..cell.len() {
                let sub: Vec<usize> = cell
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != skip)
                    .map(|(_, &j)| j)
                    .collect();
                let key = sorted(sub.clone());
                if boundary.remove(&key).is_none() {
                    let oriented = outward_affine_facet(points, &sub, &points[cell[skip]])?;
                    boundary.insert(key, oriented);
                }
            }
            cells.push(cell);
        }
    }
    Ok(cells)
}

/// Outward (normal, offset) pair for the affine hyperplane through the
/// facet points: `n . x = b` on the facet and `n . opposite < b`.
fn outward_affine_facet(
    points: &[IntVector],
    facet: &[usize],
    opposite: &IntVector,
) -> Result<(IntVector, Int)> {
    let base = &points[facet[0]];
    let spanning: Vec<IntVector> = facet[1..].iter().map(|&i| points[i].sub(base)).collect();
    let n = hyperplane_normal(&spanning)?;
    let b = n.dot(base);
    let side = n.dot(opposite);
    if side == b {
        return Err(Error::Degenerate("facet hyperplane degenerates".into()));
    }
    Ok(if side > b { (n.neg(), -b) } else { (n, b) })
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    fn iv(coords: &[i64]) -> IntVector {
        IntVector::from_i64s(coords)
    }

    fn volume_sum_matches(input: &SimplicialCone, pieces: &[&SimplicialCone]) -> bool {
        let ell = facet_functional(input);
        let total = truncated_cone_volume(input, &ell).unwrap();
        let sum: Rat = pieces
            .iter()
            .map(|p| truncated_cone_volume(p, &ell).unwrap())
            .sum();
        total == sum
    }

    #[test]
    fn triangulate_simplicial_is_identity() {
        let c = Cone::new(2, vec![iv(&[1, 0]), iv(&[1, 2])]).unwrap();
        let fan = triangulate_cone(&c).unwrap();
        assert_eq!(fan.members().len(), 1);
        assert_eq!(fan.members()[0].generators(), c.generators());
    }

    #[test]
    fn triangulate_four_ray_cone() {
        let c = Cone::new(
            3,
            vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[-1, 0, 1]), iv(&[0, -1, 1])],
        )
        .unwrap();
        let fan = triangulate_cone(&c).unwrap();
        assert_eq!(fan.members().len(), 2);
    }

    #[test]
    fn stellar_examples() {
        let c = SimplicialCone::new(vec![iv(&[1, 0]), iv(&[1, 2])]).unwrap();
        let parts = stellar_subdivision(&c, &iv(&[1, 1])).unwrap();
        assert_eq!(parts.len(), 2);
        let gens: Vec<_> = parts.iter().map(|p| p.generators().to_vec()).collect();
        assert!(gens.contains(&vec![iv(&[1, 0]), iv(&[1, 1])]));
        assert!(gens.contains(&vec![iv(&[1, 1]), iv(&[1, 2])]));

        let c = SimplicialCone::new(vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[1, 1, 2])]).unwrap();
        let parts = stellar_subdivision(&c, &iv(&[1, 1, 1])).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(volume_sum_matches(&c, &parts.iter().collect::<Vec<_>>()));

        let c = SimplicialCone::new(vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[0, 0, 1])]).unwrap();
        let parts = stellar_subdivision(&c, &iv(&[1, 1, 0])).unwrap();
        assert_eq!(parts.len(), 2);
    }

    #[test]
    fn stellar_rejects_ray_points() {
        let c = SimplicialCone::new(vec![iv(&[1, 0]), iv(&[1, 2])]).unwrap();
        assert!(stellar_subdivision(&c, &iv(&[2, 0])).is_err());
        assert!(stellar_subdivision(&c, &iv(&[-1, 0])).is_err());
        assert!(stellar_subdivision(&c, &iv(&[0, 0])).is_err());
    }

    #[test]
    fn refine_examples() {
        // already empty: single member
        let c = SimplicialCone::new(vec![iv(&[1, 0]), iv(&[1, 1])]).unwrap();
        let fan = refine_to_empty(&c).unwrap();
        assert_eq!(fan.members().len(), 1);

        // contains (1,1): two unimodular pieces
        let c = SimplicialCone::new(vec![iv(&[1, 0]), iv(&[1, 2])]).unwrap();
        let fan = refine_to_empty(&c).unwrap();
        let members = fan.members();
        assert_eq!(members.len(), 2);
        assert!(members.iter().all(|m| m.is_unimodular()));
        assert!(volume_sum_matches(&c, &members));

        let c = SimplicialCone::new(vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[1, 1, 3])]).unwrap();
        let fan = refine_to_empty(&c).unwrap();
        let members = fan.members();
        let base = crate::geom::base_simplex(&c);
        for m in &members {
            let s = crate::geom::base_simplex(m);
            assert!(s.is_empty_lattice_simplex().unwrap());
            for g in m.generators() {
                assert!(base.contains(&g.to_rat()));
            }
        }
        assert!(volume_sum_matches(&c, &members));
    }

    #[test]
    fn polytope_triangulation_examples() {
        // unit square: two unimodular triangles
        let p = LatticePolytope::new(
            2,
            vec![iv(&[0, 0]), iv(&[1, 0]), iv(&[0, 1]), iv(&[1, 1])],
        )
        .unwrap();
        let cells = triangulate_polytope_empty(&p).unwrap();
        assert_eq!(cells.len(), 2);
        for c in &cells {
            assert_eq!(c.multiplicity().unwrap(), int(1));
        }

        // conv(O, 2e1, e2) splits at e1
        let p = LatticePolytope::new(2, vec![iv(&[0, 0]), iv(&[2, 0]), iv(&[0, 1])]).unwrap();
        let cells = triangulate_polytope_empty(&p).unwrap();
        assert_eq!(cells.len(), 2);
        for c in &cells {
            assert!(c.is_empty_lattice_simplex().unwrap());
        }

        // an empty simplex is returned as itself
        let p = LatticePolytope::new(2, vec![iv(&[0, 0]), iv(&[1, 0]), iv(&[0, 1])]).unwrap();
        let cells = triangulate_polytope_empty(&p).unwrap();
        assert_eq!(cells.len(), 1);
    }

    #[test]
    fn polytope_triangulation_volume_conservation() {
        let p = LatticePolytope::new(
            2,
            vec![iv(&[0, 0]), iv(&[3, 0]), iv(&[0, 3]), iv(&[3, 3])],
        )
        .unwrap();
        let cells = triangulate_polytope_empty(&p).unwrap();
        let total: Rat = cells.iter().map(|c| c.volume().unwrap()).sum();
        assert_eq!(total, Rat::from_integer(int(9)));
        for c in &cells {
            assert!(c.is_empty_lattice_simplex().unwrap());
        }
    }

    #[test]
    fn degenerate_triangulation_inputs_rejected() {
        let p = LatticePolytope::new(2, vec![iv(&[0, 0]), iv(&[2, 0])]).unwrap();
        assert!(triangulate_polytope_empty(&p).is_err());
    }

    #[test]
    fn refine_terminates_on_3d_reeve_simplices() {
        for lambda in 1..=6i64 {
            let c = SimplicialCone::new(vec![
                iv(&[1, 0, 0]),
                iv(&[0, 1, 0]),
                iv(&[1, 1, lambda]),
            ])
            .unwrap();
            let fan = refine_to_empty(&c).unwrap();
            for m in fan.members() {
                assert!(crate::geom::base_simplex(m).is_empty_lattice_simplex().unwrap());
            }
        }
    }
}
