//! Cones, simplices, polytopes, affine lattices, and their exact predicates.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactmath::{
    adjugate, integer_determinant, primitive_vector, smith_normal_form, Int, IntMatrix,
    IntVector, LinearSolution, Rat, RatMatrix, RatVector,
};
use crate::{Error, Result};

/// Pointed rational cone, given by primitive generators in canonical
/// (sorted, deduplicated) order. Not necessarily simplicial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cone {
    dim: usize,
    generators: Vec<IntVector>,
}

impl Cone {
    pub fn new(dim: usize, generators: Vec<IntVector>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Degenerate("cone needs at least one generator".into()));
        }
        let mut prim = Vec::with_capacity(generators.len());
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::Dimension(format!(
                    "generator {} has dimension {}, expected {}",
                    g,
                    g.dim(),
                    dim
                )));
            }
            prim.push(primitive_vector(g)?);
        }
        prim.sort();
        prim.dedup();
        let cone = Cone {
            dim,
            generators: prim,
        };
        if !cone.is_pointed() {
            return Err(Error::NotPointed);
        }
        Ok(cone)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    /// A cone is pointed iff the origin is not a nontrivial nonnegative
    /// combination of the generators, i.e. not in their convex hull.
    pub fn is_pointed(&self) -> bool {
        let pts: Vec<RatVector> = self.generators.iter().map(|g| g.to_rat()).collect();
        !convex_hull_contains(&pts, &RatVector::zero(self.dim))
    }

    pub fn is_full_dimensional(&self) -> bool {
        let m = RatMatrix::from_columns(
            &self.generators.iter().map(|g| g.to_rat()).collect::<Vec<_>>(),
        );
        m.rank() == self.dim
    }

    pub fn contains(&self, p: &RatVector) -> Result<bool> {
        if p.dim() != self.dim {
            return Err(Error::Dimension("point dimension mismatch".into()));
        }
        Ok(cone_contains(&self.generators, p))
    }

    /// Convex hull of the origin and the extreme generators.
    pub fn base_polytope(&self) -> Result<LatticePolytope> {
        let mut verts = extreme_generators(self)?;
        verts.push(IntVector::zero(self.dim));
        LatticePolytope::new(self.dim, verts)
    }
}

/// One primitive generator per edge ray, in canonical order.
pub fn extreme_generators(c: &Cone) -> Result<Vec<IntVector>> {
    let gens = c.generators();
    let mut extreme = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let others: Vec<IntVector> = gens
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.clone())
            .collect();
        if others.is_empty() || !cone_contains(&others, &g.to_rat()) {
            extreme.push(g.clone());
        }
    }
    if extreme.is_empty() {
        return Err(Error::Degenerate("cone has no extreme ray".into()));
    }
    Ok(extreme)
}

/// Full-dimensional simplicial cone: `dim` linearly independent primitive
/// generators. The generator matrix determinant and adjugate are cached so
/// membership tests stay cheap.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialCone {
    dim: usize,
    generators: Vec<IntVector>,
    det: Int,
    adj: IntMatrix,
}

impl SimplicialCone {
    pub fn new(generators: Vec<IntVector>) -> Result<Self> {
        let dim = generators
            .first()
            .ok_or_else(|| Error::Degenerate("simplicial cone needs generators".into()))?
            .dim();
        if generators.len() != dim {
            return Err(Error::Dimension(format!(
                "simplicial cone in dimension {} needs exactly {} generators, got {}",
                dim,
                dim,
                generators.len()
            )));
        }
        let mut prim = Vec::with_capacity(dim);
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::Dimension("generator dimension mismatch".into()));
            }
            prim.push(primitive_vector(g)?);
        }
        prim.sort();
        let m = IntMatrix::from_columns(&prim);
        let det = integer_determinant(&m)?;
        if det.is_zero() {
            return Err(Error::Degenerate(
                "simplicial cone generators are linearly dependent".into(),
            ));
        }
        let adj = adjugate(&m)?;
        Ok(SimplicialCone {
            dim,
            generators: prim,
            det,
            adj,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    /// Multiplicity of the base simplex; for a full-dimensional cone this is
    /// the absolute determinant of the generator matrix.
    pub fn multiplicity(&self) -> Int {
        self.det.abs()
    }

    pub fn is_unimodular(&self) -> bool {
        self.multiplicity().is_one()
    }

    pub fn determinant(&self) -> &Int {
        &self.det
    }

    /// Coordinates of `p` in the generator basis.
    pub fn coordinates(&self, p: &RatVector) -> RatVector {
        let scaled = self.adj.mul_rat_vec(p);
        let det = Rat::from_integer(self.det.clone());
        RatVector::new(scaled.coords().iter().map(|c| c / &det).collect())
    }

    pub fn contains(&self, p: &RatVector) -> bool {
        let scaled = self.adj.mul_rat_vec(p);
        let neg = self.det.is_negative();
        scaled.coords().iter().all(|c| {
            if neg {
                !c.is_positive()
            } else {
                !c.is_negative()
            }
        })
    }

    /// Fast integer-only membership test.
    pub fn contains_int(&self, p: &IntVector) -> bool {
        let scaled = self.adj.mul_vec(p);
        let neg = self.det.is_negative();
        scaled.coords().iter().all(|c| {
            if neg {
                !c.is_positive()
            } else {
                !c.is_negative()
            }
        })
    }

    pub fn to_cone(&self) -> Cone {
        Cone {
            dim: self.dim,
            generators: self.generators.clone(),
        }
    }
}

/// Convex hull of the origin and the generators of a simplicial cone.
pub fn base_simplex(c: &SimplicialCone) -> Simplex {
    let mut verts: Vec<RatVector> = c.generators().iter().map(|g| g.to_rat()).collect();
    verts.push(RatVector::zero(c.dim()));
    Simplex::new(verts).expect("base simplex of a simplicial cone is nondegenerate")
}

/// Simplex with exact rational vertices; lattice simplices are the integral
/// case. Lower-dimensional simplices are allowed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Simplex {
    vertices: Vec<RatVector>,
}

impl Simplex {
    pub fn new(mut vertices: Vec<RatVector>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Degenerate("simplex needs vertices".into()));
        }
        let ambient = vertices[0].dim();
        if vertices.iter().any(|v| v.dim() != ambient) {
            return Err(Error::Dimension("simplex vertex dimensions differ".into()));
        }
        vertices.sort();
        vertices.dedup();
        let s = Simplex { vertices };
        if !s.is_affinely_independent() {
            return Err(Error::Degenerate(
                "simplex vertices are affinely dependent".into(),
            ));
        }
        Ok(s)
    }

    pub fn from_int_vertices(vertices: Vec<IntVector>) -> Result<Self> {
        Self::new(vertices.into_iter().map(|v| v.to_rat()).collect())
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    /// Intrinsic dimension (number of vertices minus one).
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|v| v.is_integral())
    }

    fn edge_vectors(&self) -> Vec<RatVector> {
        let v0 = &self.vertices[0];
        self.vertices[1..].iter().map(|v| v.sub(v0)).collect()
    }

    fn is_affinely_independent(&self) -> bool {
        if self.vertices.len() == 1 {
            return true;
        }
        let edges = self.edge_vectors();
        RatMatrix::from_columns(&edges).rank() == edges.len()
    }

    pub fn barycenter(&self) -> RatVector {
        let n = Rat::from_integer(Int::from(self.vertices.len() as i64));
        let mut acc = RatVector::zero(self.ambient_dim());
        for v in &self.vertices {
            acc = acc.add(v);
        }
        acc.scale(&n.recip())
    }

    /// Dilation about the origin.
    pub fn scaled(&self, c: &Rat) -> Simplex {
        Simplex {
            vertices: {
                let mut vs: Vec<RatVector> =
                    self.vertices.iter().map(|v| v.scale(c)).collect();
                vs.sort();
                vs
            },
        }
    }

    pub fn translated(&self, t: &RatVector) -> Simplex {
        Simplex {
            vertices: {
                let mut vs: Vec<RatVector> =
                    self.vertices.iter().map(|v| v.add(t)).collect();
                vs.sort();
                vs
            },
        }
    }

    /// Exact membership; boundary points count as contained. Points outside
    /// the affine hull are rejected by the consistency of the solve.
    pub fn contains(&self, p: &RatVector) -> bool {
        self.barycentric_coordinates(p).is_some()
    }

    /// Affine coefficients of `p` with respect to the vertices (summing to
    /// one, any sign), if `p` lies in the affine hull.
    pub fn affine_coordinates(&self, p: &RatVector) -> Option<RatVector> {
        if p.dim() != self.ambient_dim() {
            return None;
        }
        let d = self.ambient_dim();
        let k = self.vertices.len();
        let mut m = RatMatrix::zero(d + 1, k);
        for (j, v) in self.vertices.iter().enumerate() {
            for i in 0..d {
                *m.entry_mut(i, j) = v[i].clone();
            }
            *m.entry_mut(d, j) = Rat::one();
        }
        let mut rhs: Vec<Rat> = p.coords().to_vec();
        rhs.push(Rat::one());
        m.solve(&RatVector::new(rhs)).unique().cloned()
    }

    /// Convex coefficients of `p` with respect to the vertices, if `p` lies
    /// in the simplex.
    pub fn barycentric_coordinates(&self, p: &RatVector) -> Option<RatVector> {
        if p.dim() != self.ambient_dim() {
            return None;
        }
        let d = self.ambient_dim();
        let k = self.vertices.len();
        let mut m = RatMatrix::zero(d + 1, k);
        for (j, v) in self.vertices.iter().enumerate() {
            for i in 0..d {
                *m.entry_mut(i, j) = v[i].clone();
            }
            *m.entry_mut(d, j) = Rat::one();
        }
        let mut rhs: Vec<Rat> = p.coords().to_vec();
        rhs.push(Rat::one());
        match m.solve(&RatVector::new(rhs)) {
            LinearSolution::Unique(alpha) => {
                if alpha.coords().iter().all(|a| !a.is_negative()) {
                    Some(alpha)
                } else {
                    None
                }
            }
            // vertices are affinely independent, so the system is never
            // underdetermined
            _ => None,
        }
    }

    /// Multiplicity of a lattice simplex: the torsion order of the ambient
    /// lattice modulo the edge-difference lattice (Smith normal form), which
    /// for full-dimensional simplices equals |det| of the edge matrix.
    pub fn multiplicity(&self) -> Result<Int> {
        if !self.is_lattice() {
            return Err(Error::Precondition(
                "multiplicity requires a lattice simplex".into(),
            ));
        }
        if self.vertices.len() == 1 {
            return Ok(Int::one());
        }
        let edges: Vec<IntVector> = self
            .edge_vectors()
            .iter()
            .map(|e| e.to_int().expect("lattice simplex edges are integral"))
            .collect();
        let snf = smith_normal_form(&IntMatrix::from_rows(&edges));
        let mut mu = Int::one();
        for d in &snf.diag {
            if d.is_zero() {
                return Err(Error::Degenerate("degenerate vertex set".into()));
            }
            mu *= d;
        }
        Ok(mu)
    }

    /// All lattice points of the simplex, by exact membership over the
    /// integer bounding box.
    pub fn lattice_points(&self) -> Vec<IntVector> {
        let d = self.ambient_dim();
        let mut lo = Vec::with_capacity(d);
        let mut hi = Vec::with_capacity(d);
        for i in 0..d {
            let mut min = self.vertices[0][i].clone();
            let mut max = min.clone();
            for v in &self.vertices[1..] {
                if v[i] < min {
                    min = v[i].clone();
                }
                if v[i] > max {
                    max = v[i].clone();
                }
            }
            lo.push(min.ceil().to_integer());
            hi.push(max.floor().to_integer());
        }
        let mut out = Vec::new();
        let mut cursor = lo.clone();
        'outer: loop {
            let p = IntVector::new(cursor.clone());
            if self.contains(&p.to_rat()) {
                out.push(p);
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

    /// True iff the lattice points of the simplex are exactly its vertices.
    pub fn is_empty_lattice_simplex(&self) -> Result<bool> {
        if !self.is_lattice() {
            return Err(Error::Precondition(
                "emptiness requires a lattice simplex".into(),
            ));
        }
        let verts: std::collections::BTreeSet<IntVector> = self
            .vertices
            .iter()
            .map(|v| v.to_int().expect("lattice vertices"))
            .collect();
        Ok(self.lattice_points().into_iter().all(|p| verts.contains(&p)))
    }

    /// Euclidean volume of a full-dimensional simplex.
    pub fn volume(&self) -> Result<Rat> {
        if !self.is_full_dimensional() {
            return Err(Error::Dimension("volume requires a full-dimensional simplex".into()));
        }
        let edges = self.edge_vectors();
        let m = RatMatrix::from_columns(&edges);
        let d = self.dim();
        // rational determinant via scaling to integers
        let mut scale = Int::one();
        for e in &edges {
            scale = scale.lcm(&e.denominator_lcm());
        }
        let int_edges: Vec<IntVector> = edges
            .iter()
            .map(|e| e.scale(&Rat::from_integer(scale.clone())).to_int().unwrap())
            .collect();
        let det = integer_determinant(&IntMatrix::from_rows(&int_edges))?;
        let mut fact = Int::one();
        for i in 1..=d {
            fact *= Int::from(i as i64);
        }
        let _ = m;
        let num = Rat::from_integer(det.abs());
        let den = Rat::from_integer(fact) * Rat::from_integer(scale.pow(d as u32));
        Ok(num / den)
    }
}

impl std::fmt::Display for Simplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "conv(")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Lattice polytope with canonicalized vertex list (extreme points only).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<IntVector>,
}

impl LatticePolytope {
    pub fn new(dim: usize, points: Vec<IntVector>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Degenerate("polytope needs vertices".into()));
        }
        for p in &points {
            if p.dim() != dim {
                return Err(Error::Dimension("vertex dimension mismatch".into()));
            }
        }
        let mut pts = points;
        pts.sort();
        pts.dedup();
        // keep extreme points only
        let rats: Vec<RatVector> = pts.iter().map(|p| p.to_rat()).collect();
        let mut vertices = Vec::new();
        for (i, p) in pts.iter().enumerate() {
            let others: Vec<RatVector> = rats
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, v)| v.clone())
                .collect();
            if others.is_empty() || !convex_hull_contains(&others, &rats[i]) {
                vertices.push(p.clone());
            }
        }
        Ok(LatticePolytope { dim, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    pub fn is_full_dimensional(&self) -> bool {
        if self.vertices.len() < self.dim + 1 {
            return false;
        }
        let v0 = self.vertices[0].to_rat();
        let edges: Vec<RatVector> = self.vertices[1..]
            .iter()
            .map(|v| v.to_rat().sub(&v0))
            .collect();
        RatMatrix::from_columns(&edges).rank() == self.dim
    }

    pub fn contains(&self, p: &RatVector) -> Result<bool> {
        if p.dim() != self.dim {
            return Err(Error::Dimension("point dimension mismatch".into()));
        }
        let verts: Vec<RatVector> = self.vertices.iter().map(|v| v.to_rat()).collect();
        Ok(convex_hull_contains(&verts, p))
    }

    /// Membership in the dilation `c * P` (about the origin).
    pub fn contains_scaled(&self, c: &Rat, p: &RatVector) -> Result<bool> {
        if c.is_zero() {
            return Ok(p.is_zero());
        }
        self.contains(&p.scale(&c.recip()))
    }

    /// All lattice points, via a triangulation by the vertices.
    pub fn lattice_points(&self) -> Result<Vec<IntVector>> {
        let d = self.dim;
        let mut lo = vec![Int::zero(); d];
        let mut hi = vec![Int::zero(); d];
        for i in 0..d {
            lo[i] = self.vertices.iter().map(|v| v[i].clone()).min().unwrap();
            hi[i] = self.vertices.iter().map(|v| v[i].clone()).max().unwrap();
        }
        let verts: Vec<RatVector> = self.vertices.iter().map(|v| v.to_rat()).collect();
        let mut out = Vec::new();
        let mut cursor = lo.clone();
        'outer: loop {
            let p = IntVector::new(cursor.clone());
            if convex_hull_contains(&verts, &p.to_rat()) {
                out.push(p);
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
        Ok(out)
    }
}

/// Affine lattice: origin plus integral combinations of the basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineLattice {
    origin: RatVector,
    basis: Vec<RatVector>,
}

impl AffineLattice {
    pub fn new(origin: RatVector, basis: Vec<RatVector>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::Degenerate("lattice needs a basis".into()));
        }
        if RatMatrix::from_columns(&basis).rank() != basis.len() {
            return Err(Error::Degenerate("lattice basis is linearly dependent".into()));
        }
        Ok(AffineLattice { origin, basis })
    }

    /// Difference lattice of a simplex, based at its first vertex.
    pub fn from_simplex(s: &Simplex) -> Result<Self> {
        let v0 = s.vertices()[0].clone();
        let basis: Vec<RatVector> = s.vertices()[1..].iter().map(|v| v.sub(&v0)).collect();
        AffineLattice::new(v0, basis)
    }

    pub fn origin(&self) -> &RatVector {
        &self.origin
    }

    pub fn basis(&self) -> &[RatVector] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `p` in the lattice basis, if `p` lies in the affine
    /// span of the lattice.
    pub fn coordinates(&self, p: &RatVector) -> Option<RatVector> {
        let m = RatMatrix::from_columns(&self.basis);
        m.solve(&p.sub(&self.origin)).unique().cloned()
    }

    pub fn contains(&self, p: &RatVector) -> bool {
        self.coordinates(p).is_some_and(|c| c.is_integral())
    }

    /// A simplex is unimodular for this lattice when its difference lattice
    /// is exactly the lattice: vertices are lattice members and the edge
    /// coordinate matrix is invertible over the integers.
    pub fn is_unimodular_simplex(&self, s: &Simplex) -> bool {
        if s.dim() != self.rank() {
            return false;
        }
        let coords: Option<Vec<RatVector>> =
            s.vertices().iter().map(|v| self.coordinates(v)).collect();
        let Some(coords) = coords else { return false };
        if coords.iter().any(|c| !c.is_integral()) {
            return false;
        }
        let c0 = &coords[0];
        let edges: Vec<IntVector> = coords[1..]
            .iter()
            .map(|c| c.sub(c0).to_int().unwrap())
            .collect();
        matches!(
            integer_determinant(&IntMatrix::from_rows(&edges)),
            Ok(d) if d.abs().is_one()
        )
    }
}

/// Lattice points of the semi-open parallelotope spanned by `dim`
/// independent generators (coefficients in `[0, 1)`), enumerated through
/// Smith normal form coset representatives. The count always equals the
/// absolute determinant.
pub fn lattice_points_in_box(gens: &[IntVector]) -> Result<Vec<IntVector>> {
    let d = gens
        .first()
        .ok_or_else(|| Error::Degenerate("box needs generators".into()))?
        .dim();
    if gens.len() != d {
        return Err(Error::Dimension(format!(
            "box in dimension {} needs {} generators",
            d, d
        )));
    }
    let g = IntMatrix::from_columns(gens);
    let det = integer_determinant(&g)?;
    if det.is_zero() {
        return Err(Error::Degenerate("box generators are linearly dependent".into()));
    }
    let adj = adjugate(&g)?;
    let snf = smith_normal_form(&g);
    // left is unimodular: inverse = adjugate / det with det = ±1
    let left_det = integer_determinant(&snf.left)?;
    let left_adj = adjugate(&snf.left)?;
    let left_inv = if left_det.is_negative() {
        IntMatrix::from_rows(
            &(0..left_adj.rows())
                .map(|r| left_adj.row(r).neg())
                .collect::<Vec<_>>(),
        )
    } else {
        left_adj
    };

    let mut out = Vec::new();
    let mut counters = vec![Int::zero(); d];
    'outer: loop {
        let rep = left_inv.mul_vec(&IntVector::new(counters.clone()));
        // reduce the representative into the box: subtract integral parts
        let scaled = adj.mul_vec(&rep);
        let mut floors = Vec::with_capacity(d);
        for i in 0..d {
            floors.push(scaled[i].div_floor(&det));
        }
        let offset = g.mul_vec(&IntVector::new(floors));
        out.push(rep.sub(&offset));

        for i in (0..d).rev() {
            counters[i] += 1;
            if counters[i] < snf.diag[i] {
                continue 'outer;
            }
            counters[i] = Int::zero();
        }
        break;
    }
    out.sort();
    out.dedup();
    debug_assert_eq!(Int::from(out.len() as i64), det.abs());
    Ok(out)
}

/// Exact membership of `p` in the convex hull of `points`, by Caratheodory
/// enumeration of affinely independent subsets.
pub fn convex_hull_contains(points: &[RatVector], p: &RatVector) -> bool {
    if points.is_empty() {
        return false;
    }
    let d = p.dim();
    let max_size = (d + 1).min(points.len());
    let mut indices = Vec::new();
    subsets_up_to(points.len(), max_size, &mut indices, 0, &mut |subset| {
        let k = subset.len();
        let mut m = RatMatrix::zero(d + 1, k);
        for (j, &idx) in subset.iter().enumerate() {
            for i in 0..d {
                *m.entry_mut(i, j) = points[idx][i].clone();
            }
            *m.entry_mut(d, j) = Rat::one();
        }
        let mut rhs: Vec<Rat> = p.coords().to_vec();
        rhs.push(Rat::one());
        match m.solve(&RatVector::new(rhs)) {
            LinearSolution::Unique(alpha) => {
                alpha.coords().iter().all(|a| !a.is_negative())
            }
            _ => false,
        }
    })
}

/// Exact membership of `p` in the cone spanned by `gens`, by Caratheodory
/// enumeration of linearly independent subsets.
pub fn cone_contains(gens: &[IntVector], p: &RatVector) -> bool {
    if p.is_zero() {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    let d = p.dim();
    let max_size = d.min(gens.len());
    let mut indices = Vec::new();
    subsets_up_to(gens.len(), max_size, &mut indices, 0, &mut |subset| {
        let k = subset.len();
        let mut m = RatMatrix::zero(d, k);
        for (j, &idx) in subset.iter().enumerate() {
            for i in 0..d {
                *m.entry_mut(i, j) = Rat::from_integer(gens[idx][i].clone());
            }
        }
        match m.solve(p) {
            LinearSolution::Unique(lambda) => {
                lambda.coords().iter().all(|a| !a.is_negative())
            }
            _ => false,
        }
    })
}

/// Visit subsets of `{0..n}` of size `1..=max_size`; stop early when the
/// visitor returns true.
fn subsets_up_to(
    n: usize,
    max_size: usize,
    current: &mut Vec<usize>,
    start: usize,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if !current.is_empty() && visit(current) {
        return true;
    }
    if current.len() == max_size {
        return false;
    }
    for i in start..n {
        current.push(i);
        if subsets_up_to(n, max_size, current, i + 1, visit) {
            current.pop();
            return true;
        }
        current.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};
    use proptest::prelude::*;

    fn iv(coords: &[i64]) -> IntVector {
        IntVector::from_i64s(coords)
    }

    fn rv(coords: &[i64]) -> RatVector {
        IntVector::from_i64s(coords).to_rat()
    }

    #[test]
    fn extreme_generators_examples() {
        let c = Cone::new(2, vec![iv(&[1, 0]), iv(&[0, 1])]).unwrap();
        assert_eq!(extreme_generators(&c).unwrap(), vec![iv(&[0, 1]), iv(&[1, 0])]);

        let c = Cone::new(2, vec![iv(&[2, 0]), iv(&[3, 3])]).unwrap();
        assert_eq!(extreme_generators(&c).unwrap(), vec![iv(&[1, 0]), iv(&[1, 1])]);

        let c = Cone::new(2, vec![iv(&[1, 0]), iv(&[1, 1]), iv(&[1, 2])]).unwrap();
        assert_eq!(extreme_generators(&c).unwrap(), vec![iv(&[1, 0]), iv(&[1, 2])]);
    }

    #[test]
    fn non_pointed_is_rejected() {
        assert!(matches!(
            Cone::new(2, vec![iv(&[1, 0]), iv(&[-1, 0])]),
            Err(Error::NotPointed)
        ));
        assert!(matches!(
            Cone::new(2, vec![iv(&[1, 0]), iv(&[-1, 1]), iv(&[0, -1])]),
            Err(Error::NotPointed)
        ));
    }

    #[test]
    fn base_simplex_examples() {
        let c = SimplicialCone::new(vec![iv(&[1, 0]), iv(&[1, 2])]).unwrap();
        let s = base_simplex(&c);
        assert_eq!(s.vertices().len(), 3);
        assert!(s.contains(&rv(&[0, 0])));
        assert!(s.contains(&rv(&[1, 2])));

        let c = SimplicialCone::new(vec![iv(&[2, 0]), iv(&[0, 2])]).unwrap();
        let s = base_simplex(&c);
        // generators primitivize on construction
        assert!(s.vertices().contains(&rv(&[1, 0])));
        assert!(s.vertices().contains(&rv(&[0, 1])));
    }

    #[test]
    fn multiplicity_examples() {
        let s = Simplex::from_int_vertices(vec![iv(&[0, 0, 0]), iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[0, 0, 1])])
            .unwrap();
        assert_eq!(s.multiplicity().unwrap(), int(1));

        let s = Simplex::from_int_vertices(vec![
            iv(&[0, 0, 0]),
            iv(&[1, 0, 0]),
            iv(&[0, 1, 0]),
            iv(&[1, 1, 5]),
        ])
        .unwrap();
        assert_eq!(s.multiplicity().unwrap(), int(5));

        // degenerate inside the plane: conv(O, 2e1) in Z^2
        let s = Simplex::from_int_vertices(vec![iv(&[0, 0]), iv(&[2, 0])]).unwrap();
        assert_eq!(s.multiplicity().unwrap(), int(2));
    }

    #[test]
    fn emptiness_examples() {
        let s = Simplex::from_int_vertices(vec![iv(&[0, 0]), iv(&[1, 0]), iv(&[0, 1])]).unwrap();
        assert!(s.is_empty_lattice_simplex().unwrap());

        let s = Simplex::from_int_vertices(vec![
            iv(&[0, 0, 0]),
            iv(&[1, 0, 0]),
            iv(&[0, 1, 0]),
            iv(&[1, 1, 2]),
        ])
        .unwrap();
        assert!(s.is_empty_lattice_simplex().unwrap());

        let s = Simplex::from_int_vertices(vec![iv(&[0, 0]), iv(&[2, 0]), iv(&[0, 1])]).unwrap();
        assert!(!s.is_empty_lattice_simplex().unwrap());
    }

    #[test]
    fn contains_examples() {
        let c = Cone::new(2, vec![iv(&[1, 0]), iv(&[0, 1])]).unwrap();
        assert!(c.contains(&rv(&[3, 5])).unwrap());

        let s = Simplex::from_int_vertices(vec![iv(&[0, 0]), iv(&[1, 0]), iv(&[0, 1])]).unwrap();
        let doubled = s.scaled(&rat(2, 1));
        assert!(doubled.contains(&rv(&[1, 1]))); // boundary point

        let c = Cone::new(2, vec![iv(&[1, 0]), iv(&[1, 2])]).unwrap();
        assert!(!c.contains(&rv(&[0, 1])).unwrap());
    }

    #[test]
    fn box_points_examples() {
        let pts = lattice_points_in_box(&[iv(&[1, 0]), iv(&[0, 1])]).unwrap();
        assert_eq!(pts, vec![iv(&[0, 0])]);

        let pts = lattice_points_in_box(&[iv(&[1, 0]), iv(&[1, 2])]).unwrap();
        assert_eq!(pts, vec![iv(&[0, 0]), iv(&[1, 1])]);

        let pts = lattice_points_in_box(&[
            iv(&[1, 0, 0]),
            iv(&[0, 1, 0]),
            iv(&[1, 1, 2]),
        ])
        .unwrap();
        assert_eq!(pts, vec![iv(&[0, 0, 0]), iv(&[1, 1, 1])]);
    }

    #[test]
    fn box_points_brute_force_oracle() {
        // scan the integer bounding rectangle and solve exactly
        let gens = [iv(&[2, 1]), iv(&[-1, 3])];
        let fast = lattice_points_in_box(&gens).unwrap();
        let g = IntMatrix::from_columns(&gens);
        let det = integer_determinant(&g).unwrap();
        let adj = adjugate(&g).unwrap();
        let mut brute = Vec::new();
        for x in -10i64..=10 {
            for y in -10i64..=10 {
                let p = iv(&[x, y]);
                let scaled = adj.mul_vec(&p);
                let inside = (0..2).all(|i| {
                    let num = scaled[i].clone();
                    let lo_ok = if det.is_negative() { num <= int(0) } else { num >= int(0) };
                    let hi_ok = if det.is_negative() { num > det.clone() } else { num < det.clone() };
                    lo_ok && hi_ok
                });
                if inside {
                    brute.push(p);
                }
            }
        }
        brute.sort();
        assert_eq!(fast, brute);
    }

    #[test]
    fn polytope_canonicalizes_to_extreme_points() {
        let p = LatticePolytope::new(
            2,
            vec![iv(&[0, 0]), iv(&[2, 0]), iv(&[1, 0]), iv(&[0, 2])],
        )
        .unwrap();
        assert_eq!(p.vertices(), &[iv(&[0, 0]), iv(&[0, 2]), iv(&[2, 0])]);
    }

    #[test]
    fn affine_lattice_membership() {
        let l = AffineLattice::new(rv(&[0, 0]), vec![rv(&[1, 0]), rv(&[1, 2])]).unwrap();
        assert!(l.contains(&rv(&[2, 2])));
        assert!(!l.contains(&rv(&[0, 1])));
        let s = Simplex::from_int_vertices(vec![iv(&[0, 0]), iv(&[1, 0]), iv(&[1, 2])]).unwrap();
        assert!(l.is_unimodular_simplex(&s));
        let t = Simplex::from_int_vertices(vec![iv(&[0, 0]), iv(&[2, 0]), iv(&[1, 2])]).unwrap();
        assert!(!l.is_unimodular_simplex(&t));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn box_count_is_determinant(vals in proptest::collection::vec(-9i64..=9, 4)) {
            let gens = [iv(&vals[0..2]), iv(&vals[2..4])];
            let m = IntMatrix::from_columns(&gens);
            let det = integer_determinant(&m).unwrap();
            prop_assume!(!det.is_zero());
            let pts = lattice_points_in_box(&gens).unwrap();
            prop_assert_eq!(Int::from(pts.len() as i64), det.abs());
        }

        #[test]
        fn cone_multiplicity_divides_simplex_multiplicity(
            vals in proptest::collection::vec(-6i64..=6, 4),
            scale in 1i64..=3,
        ) {
            // simplex with vertex O whose nonzero vertices may be imprimitive
            let v1 = iv(&[vals[0] * scale, vals[1] * scale]);
            let v2 = iv(&vals[2..4]);
            prop_assume!(!v1.is_zero() && !v2.is_zero());
            let m = IntMatrix::from_columns(&[v1.clone(), v2.clone()]);
            prop_assume!(!integer_determinant(&m).unwrap().is_zero());
            let s = Simplex::from_int_vertices(vec![IntVector::zero(2), v1.clone(), v2.clone()]).unwrap();
            let cone = SimplicialCone::new(vec![v1, v2]).unwrap();
            let mu_simplex = s.multiplicity().unwrap();
            let mu_cone = cone.multiplicity();
            prop_assert!(mu_simplex.mod_floor(&mu_cone).is_zero());
        }

        #[test]
        fn contains_agrees_with_barycentric_oracle(
            vals in proptest::collection::vec(-5i64..=5, 6),
            px in -6i64..=6, py in -6i64..=6, q in 1i64..=3,
        ) {
            let verts = vec![iv(&vals[0..2]), iv(&vals[2..4]), iv(&vals[4..6])];
            let Ok(s) = Simplex::from_int_vertices(verts.clone()) else {
                return Ok(());
            };
            prop_assume!(s.vertices().len() == 3);
            let p = RatVector::new(vec![rat(px, q), rat(py, q)]);
            // brute-force barycentric oracle over the vertex triple
            let m = RatMatrix::from_columns(
                &s.vertices().iter().map(|v| {
                    let mut c = v.coords().to_vec();
                    c.push(Rat::one());
                    RatVector::new(c)
                }).collect::<Vec<_>>(),
            );
            let mut rhs = p.coords().to_vec();
            rhs.push(Rat::one());
            let oracle = match m.solve(&RatVector::new(rhs)) {
                LinearSolution::Unique(a) => a.coords().iter().all(|x| !x.is_negative()),
                _ => false,
            };
            prop_assert_eq!(s.contains(&p), oracle);
        }
    }
}
