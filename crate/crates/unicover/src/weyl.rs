//! Staircase simplices of the unit cube and slope-independent tile covers.
//!
//! The permutation simplices of the standard unimodular triangulation of
//! the unit cube tile all of space by integral translates. Inside any
//! dilated simplex, the translates that fit cover everything except a
//! boundary collar whose relative thickness depends only on the dimension,
//! not on the shape of the simplex. `tile_cover` makes that constructive:
//! it returns an explicit family of frame-lattice-unimodular tiles whose
//! union provably contains the shrunken dilation.

use num_traits::{One, Signed, Zero};

use crate::exactmath::{Int, IntVector, Rat, RatVector};
use crate::geom::{AffineLattice, Simplex};
use crate::{Error, Result};

/// A simplex of the staircase triangulation of the unit cube: a vertex
/// chain starting at `translate`, adding one unit vector per step in the
/// order given by the permutation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylSimplex {
    permutation: Vec<usize>,
    translate: IntVector,
}

impl WeylSimplex {
    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn translate(&self) -> &IntVector {
        &self.translate
    }

    /// Vertex chain `x_0, ..., x_d` with `x_{i+1} - x_i` the unit vector
    /// selected by the permutation at step `i`.
    pub fn vertex_chain(&self) -> Vec<IntVector> {
        let d = self.permutation.len();
        let mut out = Vec::with_capacity(d + 1);
        let mut x = self.translate.clone();
        out.push(x.clone());
        for i in 0..d {
            x = x.add(&IntVector::unit(d, self.permutation[i]));
            out.push(x.clone());
        }
        out
    }

    pub fn to_simplex(&self) -> Simplex {
        Simplex::from_int_vertices(self.vertex_chain())
            .expect("staircase chains are affinely independent")
    }
}

/// Build the staircase simplex for a permutation of `{0, .., d-1}` and an
/// integral translate.
pub fn weyl_simplex(permutation: &[usize], translate: &IntVector) -> Result<WeylSimplex> {
    let d = permutation.len();
    if translate.dim() != d {
        return Err(Error::Dimension("translate dimension mismatch".into()));
    }
    let mut seen = vec![false; d];
    for &p in permutation {
        if p >= d || seen[p] {
            return Err(Error::Precondition("not a permutation".into()));
        }
        seen[p] = true;
    }
    Ok(WeylSimplex {
        permutation: permutation.to_vec(),
        translate: translate.clone(),
    })
}

/// All permutations of `{0, .., n-1}` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                current.push(i);
                rec(n, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Squared Euclidean width of a vertex set in direction `a`: the squared
/// distance between the two extreme hyperplanes orthogonal to `a` that
/// touch the set. Kept squared so every comparison stays rational.
pub fn directional_width_sq(vertices: &[RatVector], a: &RatVector) -> Result<Rat> {
    if a.is_zero() {
        return Err(Error::ZeroVector);
    }
    let first = vertices
        .first()
        .ok_or_else(|| Error::Degenerate("width of an empty vertex set".into()))?;
    let mut min = a.dot(first);
    let mut max = min.clone();
    for v in &vertices[1..] {
        let val = a.dot(v);
        if val < min {
            min = val.clone();
        }
        if val > max {
            max = val;
        }
    }
    let spread = max - min;
    Ok(&spread * &spread / a.norm_sq())
}

/// Permutation sorting the ray ratios `|target_i| / |frame_i|` in weakly
/// decreasing order (stable; ties keep the original index order). Every
/// target ray must be a positive rational multiple of the matching frame
/// ray.
pub fn reorder_by_ratio(frame_rays: &[RatVector], target_rays: &[RatVector]) -> Result<Vec<usize>> {
    if frame_rays.len() != target_rays.len() {
        return Err(Error::Dimension("ray count mismatch".into()));
    }
    let mut ratios = Vec::with_capacity(frame_rays.len());
    for (v, w) in frame_rays.iter().zip(target_rays) {
        ratios.push(ray_ratio(v, w)?);
    }
    let mut order: Vec<usize> = (0..ratios.len()).collect();
    order.sort_by(|&a, &b| ratios[b].cmp(&ratios[a]).then(a.cmp(&b)));
    Ok(order)
}

/// The positive rational `r` with `w = r * v`, if it exists.
fn ray_ratio(v: &RatVector, w: &RatVector) -> Result<Rat> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let k = v
        .coords()
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero vector has a nonzero coordinate");
    let r = &w[k] / &v[k];
    if !r.is_positive() || &v.scale(&r) != w {
        return Err(Error::Precondition(format!(
            "target ray {w} does not lie on the frame ray through {v}"
        )));
    }
    Ok(r)
}

/// Tile cover produced by [`tile_cover`]: a family of frame-unimodular
/// simplices inside `c * target` whose union contains
/// `(1 - epsilon) * c * target` (dilations taken about the shared apex).
#[derive(Clone, Debug)]
pub struct TileCover {
    pub frame: Simplex,
    pub target: Simplex,
    pub apex: RatVector,
    pub scale: Rat,
    pub epsilon: Rat,
    pub tiles: Vec<Simplex>,
}

impl TileCover {
    /// The affine lattice of the frame, with the apex as its origin.
    pub fn frame_lattice(&self) -> Result<AffineLattice> {
        let rays: Vec<RatVector> = self
            .frame
            .vertices()
            .iter()
            .filter(|v| **v != self.apex)
            .map(|v| v.sub(&self.apex))
            .collect();
        AffineLattice::new(self.apex.clone(), rays)
    }

    /// The region the tiles are guaranteed to cover.
    pub fn guaranteed_region(&self) -> Simplex {
        let f = (Rat::one() - &self.epsilon) * &self.scale;
        dilate_about(&self.target, &self.apex, &f)
    }

    /// The region the tiles are confined to.
    pub fn bounding_region(&self) -> Simplex {
        dilate_about(&self.target, &self.apex, &self.scale)
    }
}

/// Dilation of a simplex about a center.
pub fn dilate_about(s: &Simplex, center: &RatVector, factor: &Rat) -> Simplex {
    Simplex::new(
        s.vertices()
            .iter()
            .map(|v| center.add(&v.sub(center).scale(factor)))
            .collect(),
    )
    .expect("dilation preserves affine independence")
}

/// Smallest integer `n >= 0` with `n^2 >= r`.
pub fn min_integer_with_square_at_least(r: &Rat) -> Int {
    if !r.is_positive() {
        return Int::zero();
    }
    let p = r.numer();
    let q = r.denom();
    let mut n = crate::exactmath::isqrt_ceil(&r.ceil().to_integer());
    while n.is_positive() {
        let m = &n - 1u32;
        if &(&m * &m) * q >= *p {
            n = m;
        } else {
            break;
        }
    }
    n
}

/// Explicit slope-independent tile cover. `frame` and `target` are
/// simplices of the same dimension sharing the vertex `apex` and spanning
/// the same cone there, every target vertex on a frame ray at ratio >= 1.
/// For `0 < epsilon < 1` and `c` with `c^2 * epsilon^2 >= dim`, the
/// returned tiles are frame-lattice unimodular, lie in `c * target`, and
/// their union contains `(1 - epsilon) * c * target` (dilations about the
/// apex).
pub fn tile_cover(
    frame: &Simplex,
    target: &Simplex,
    apex: &RatVector,
    epsilon: &Rat,
    c: &Rat,
) -> Result<TileCover> {
    if !epsilon.is_positive() || *epsilon >= Rat::one() {
        return Err(Error::Precondition("epsilon must lie in (0, 1)".into()));
    }
    if frame.dim() != target.dim() {
        return Err(Error::Dimension("frame and target dimensions differ".into()));
    }
    if !frame.vertices().contains(apex) || !target.vertices().contains(apex) {
        return Err(Error::Precondition(
            "apex must be a vertex of both simplices".into(),
        ));
    }
    let e = frame.dim();
    let dim_rat = Rat::from_integer(Int::from(e as i64));
    if &(c * c) * (epsilon * epsilon) < dim_rat {
        let minimal = min_integer_with_square_at_least(&(dim_rat / (epsilon * epsilon)));
        return Err(Error::InadmissibleScale {
            given: c.to_string(),
            minimal: minimal.to_string(),
        });
    }
    if !c.is_positive() {
        return Err(Error::Precondition("scale must be positive".into()));
    }

    let frame_rays: Vec<RatVector> = frame
        .vertices()
        .iter()
        .filter(|v| *v != apex)
        .map(|v| v.sub(apex))
        .collect();
    // match target vertices to frame rays
    let mut target_rays: Vec<Option<RatVector>> = vec![None; e];
    'outer: for v in target.vertices() {
        if v == apex {
            continue;
        }
        let w = v.sub(apex);
        for (i, f) in frame_rays.iter().enumerate() {
            if target_rays[i].is_none() && ray_ratio(f, &w).is_ok() {
                target_rays[i] = Some(w);
                continue 'outer;
            }
        }
        return Err(Error::Precondition(format!(
            "target vertex {v} lies on no frame ray"
        )));
    }
    let target_rays: Vec<RatVector> = target_rays
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Precondition("target does not match the frame rays".into()))?;

    let order = reorder_by_ratio(&frame_rays, &target_rays)?;
    let mut lambdas = Vec::with_capacity(e);
    for &i in &order {
        let r = ray_ratio(&frame_rays[i], &target_rays[i])?;
        if r < Rat::one() {
            return Err(Error::Precondition(
                "frame must be contained in target (all ratios >= 1)".into(),
            ));
        }
        lambdas.push(r);
    }

    // Standard coordinates: the i-th reordered frame ray maps to
    // e_1 + ... + e_{i+1}; the frame lattice becomes Z^e and the scaled
    // target becomes conv(O, c*lambda_i * (e_1 + ... + e_i)).
    let cl: Vec<Rat> = lambdas.iter().map(|l| l * c).collect();

    // membership in the scaled target in standard coordinates:
    // alpha_i = (x_i - x_{i+1}) / cl_i nonnegative with sum <= 1
    let inside_scaled_target = |x: &[Int]| -> bool {
        let mut sum = Rat::zero();
        for i in 0..e {
            let next = if i + 1 < e { x[i + 1].clone() } else { Int::zero() };
            let a = Rat::from_integer(x[i].clone() - next) / &cl[i];
            if a.is_negative() {
                return false;
            }
            sum += a;
        }
        sum <= Rat::one()
    };

    let bound_int = cl[0].floor().to_integer();
    let bound: i64 = bound_int.clone().try_into().map_err(|_| {
        Error::Precondition(format!(
            "tile enumeration bound {bound_int} is too large for this build"
        ))
    })?;
    if bound > 4096 {
        return Err(Error::Precondition(format!(
            "tile enumeration bound {bound} exceeds the desk-scale limit"
        )));
    }

    let perms = permutations(e);
    let mut std_tiles: Vec<Vec<Vec<i64>>> = Vec::new();
    let mut z = vec![0i64; e];
    enumerate_monotone(&mut z, 0, bound, &mut |z| {
        let zi: Vec<Int> = z.iter().map(|&v| Int::from(v)).collect();
        if !inside_scaled_target(&zi) {
            return;
        }
        'perm: for perm in &perms {
            let mut chain = vec![z.to_vec()];
            let mut x = z.to_vec();
            for &axis in perm {
                x[axis] += 1;
                chain.push(x.clone());
            }
            for v in &chain[1..] {
                let vi: Vec<Int> = v.iter().map(|&c| Int::from(c)).collect();
                if !inside_scaled_target(&vi) {
                    continue 'perm;
                }
            }
            std_tiles.push(chain);
        }
    });

    // map standard points back: x -> apex + sum_i (x_i - x_{i+1}) * ray_{order[i]}
    let to_ambient = |x: &[i64]| -> RatVector {
        let mut p = apex.clone();
        for i in 0..e {
            let next = if i + 1 < e { x[i + 1] } else { 0 };
            let coeff = Rat::from_integer(Int::from(x[i] - next));
            p = p.add(&frame_rays[order[i]].scale(&coeff));
        }
        p
    };

    let mut tiles: Vec<Simplex> = std_tiles
        .iter()
        .map(|chain| {
            Simplex::new(chain.iter().map(|v| to_ambient(v)).collect())
                .expect("tile chains are affinely independent")
        })
        .collect();
    tiles.sort();
    tiles.dedup();

    Ok(TileCover {
        frame: frame.clone(),
        target: target.clone(),
        apex: apex.clone(),
        scale: c.clone(),
        epsilon: epsilon.clone(),
        tiles,
    })
}

/// Visit all monotone tuples `z_1 >= z_2 >= ... >= z_e >= 0` with entries
/// at most `bound`.
fn enumerate_monotone(z: &mut Vec<i64>, idx: usize, bound: i64, visit: &mut dyn FnMut(&[i64])) {
    if idx == z.len() {
        visit(z);
        return;
    }
    let hi = if idx == 0 { bound } else { z[idx - 1] };
    for v in 0..=hi {
        z[idx] = v;
        enumerate_monotone(z, idx + 1, bound, visit);
    }
    z[idx] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    fn iv(coords: &[i64]) -> IntVector {
        IntVector::from_i64s(coords)
    }

    fn rv(coords: &[i64]) -> RatVector {
        IntVector::from_i64s(coords).to_rat()
    }

    #[test]
    fn weyl_identity_chain() {
        let w = weyl_simplex(&[0, 1, 2], &IntVector::zero(3)).unwrap();
        assert_eq!(
            w.vertex_chain(),
            vec![iv(&[0, 0, 0]), iv(&[1, 0, 0]), iv(&[1, 1, 0]), iv(&[1, 1, 1])]
        );
    }

    #[test]
    fn weyl_reversed_chain_2d() {
        let w = weyl_simplex(&[1, 0], &IntVector::zero(2)).unwrap();
        assert_eq!(w.vertex_chain(), vec![iv(&[0, 0]), iv(&[0, 1]), iv(&[1, 1])]);
    }

    #[test]
    fn weyl_simplices_are_unimodular() {
        for perm in permutations(3) {
            let w = weyl_simplex(&perm, &iv(&[5, -3, 2])).unwrap();
            assert_eq!(w.to_simplex().multiplicity().unwrap(), int(1));
        }
    }

    #[test]
    fn width_examples() {
        let cube: Vec<RatVector> = (0..8)
            .map(|k| rv(&[(k & 1) as i64, ((k >> 1) & 1) as i64, ((k >> 2) & 1) as i64]))
            .collect();
        assert_eq!(directional_width_sq(&cube, &rv(&[1, 0, 0])).unwrap(), rat(1, 1));

        let seg = vec![rv(&[0]), rv(&[3])];
        assert_eq!(directional_width_sq(&seg, &rv(&[1])).unwrap(), rat(9, 1));

        // staircase simplices: squared width at most d in any direction
        for perm in permutations(3) {
            let w = weyl_simplex(&perm, &IntVector::zero(3)).unwrap();
            let verts: Vec<RatVector> = w.vertex_chain().iter().map(|v| v.to_rat()).collect();
            for a in [rv(&[1, 0, 0]), rv(&[1, 1, 0]), rv(&[2, -1, 3]), rv(&[1, 1, 1])] {
                assert!(directional_width_sq(&verts, &a).unwrap() <= rat(3, 1));
            }
        }
    }

    #[test]
    fn reorder_examples() {
        let f = vec![rv(&[1, 0]), rv(&[0, 1])];
        let t = vec![rv(&[3, 0]), rv(&[0, 2])];
        assert_eq!(reorder_by_ratio(&f, &t).unwrap(), vec![0, 1]);

        let t = vec![rv(&[2, 0]), rv(&[0, 5])];
        assert_eq!(reorder_by_ratio(&f, &t).unwrap(), vec![1, 0]);

        // equal ratios: stable identity
        let t = vec![rv(&[2, 0]), rv(&[0, 2])];
        assert_eq!(reorder_by_ratio(&f, &t).unwrap(), vec![0, 1]);

        // ray mismatch
        let t = vec![rv(&[1, 1]), rv(&[0, 2])];
        assert!(reorder_by_ratio(&f, &t).is_err());
    }

    #[test]
    fn tile_cover_1d() {
        let frame = Simplex::from_int_vertices(vec![iv(&[0]), iv(&[1])]).unwrap();
        let cover = tile_cover(&frame, &frame, &rv(&[0]), &rat(1, 2), &rat(2, 1)).unwrap();
        assert_eq!(cover.tiles.len(), 2);
        assert!(cover
            .tiles
            .contains(&Simplex::from_int_vertices(vec![iv(&[0]), iv(&[1])]).unwrap()));
        assert!(cover
            .tiles
            .contains(&Simplex::from_int_vertices(vec![iv(&[1]), iv(&[2])]).unwrap()));
    }

    #[test]
    fn tile_cover_triangulates_exact_multiple() {
        let frame =
            Simplex::from_int_vertices(vec![iv(&[0, 0]), iv(&[1, 0]), iv(&[1, 1])]).unwrap();
        let c = rat(3, 1);
        let cover = tile_cover(&frame, &frame, &rv(&[0, 0]), &rat(1, 2), &c).unwrap();
        assert_eq!(cover.tiles.len(), 9);
        let lattice = cover.frame_lattice().unwrap();
        let bound = cover.bounding_region();
        for t in &cover.tiles {
            assert!(lattice.is_unimodular_simplex(t));
            for v in t.vertices() {
                assert!(bound.contains(v));
            }
        }
        let total: Rat = cover.tiles.iter().map(|t| t.volume().unwrap()).sum();
        assert_eq!(total, bound.volume().unwrap());
    }

    #[test]
    fn tile_cover_rejects_small_scale() {
        let frame =
            Simplex::from_int_vertices(vec![iv(&[0, 0]), iv(&[1, 0]), iv(&[1, 1])]).unwrap();
        let err = tile_cover(&frame, &frame, &rv(&[0, 0]), &rat(1, 2), &rat(2, 1));
        match err {
            Err(Error::InadmissibleScale { minimal, .. }) => assert_eq!(minimal, "3"),
            other => panic!("expected inadmissible scale, got {other:?}"),
        }
    }

    #[test]
    fn tile_cover_stretched_target() {
        let frame =
            Simplex::from_int_vertices(vec![iv(&[0, 0]), iv(&[1, 0]), iv(&[1, 1])]).unwrap();
        let target =
            Simplex::from_int_vertices(vec![iv(&[0, 0]), iv(&[1, 0]), iv(&[3, 3])]).unwrap();
        let cover = tile_cover(&frame, &target, &rv(&[0, 0]), &rat(1, 2), &rat(3, 1)).unwrap();
        let lattice = cover.frame_lattice().unwrap();
        let bound = cover.bounding_region();
        assert!(!cover.tiles.is_empty());
        for t in &cover.tiles {
            assert!(lattice.is_unimodular_simplex(t));
            for v in t.vertices() {
                assert!(bound.contains(v));
            }
        }
        // outer-facet distance consistency in standard coordinates after
        // reordering: the coefficient vector of the hyperplane through the
        // target's outer vertices has squared norm at most 1
        let frame_rays = vec![rv(&[1, 0]), rv(&[1, 1])];
        let target_rays = vec![rv(&[1, 0]), rv(&[3, 3])];
        let order = reorder_by_ratio(&frame_rays, &target_rays).unwrap();
        let lambdas: Vec<Rat> = order
            .iter()
            .map(|&i| super::ray_ratio(&frame_rays[i], &target_rays[i]).unwrap())
            .collect();
        let mut coeff_sq_sum = Rat::zero();
        let mut prev_inv = Rat::zero();
        for l in &lambdas {
            let inv = l.recip();
            let coeff = &inv - &prev_inv;
            coeff_sq_sum += &coeff * &coeff;
            prev_inv = inv;
        }
        assert!(coeff_sq_sum <= rat(1, 1));
    }

    #[test]
    fn min_square_scale() {
        assert_eq!(min_integer_with_square_at_least(&rat(2, 1)), int(2));
        assert_eq!(min_integer_with_square_at_least(&rat(4, 1)), int(2));
        assert_eq!(min_integer_with_square_at_least(&rat(9, 2)), int(3));
        assert_eq!(min_integer_with_square_at_least(&rat(1, 4)), int(1));
    }
}
