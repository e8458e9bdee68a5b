//! Constructive unimodular covers.
//!
//! Three constructions live here. Corner covers lift a cover of the
//! projected cone one dimension down back to a family of unimodular
//! subcones around a chosen extreme generator. The full cone cover splits
//! an empty simplicial cone into corner sectors, extends each corner cover
//! across its sector hyperplane with a slope-independent tile cover, and
//! resolves the resulting bounded-multiplicity cones. The polytope cover
//! dilates a lattice polytope far enough that the corner covers of its
//! empty cells, tiled out by the same machinery, exhaust the multiple.
//!
//! Every certificate carries an explicit dilation factor; the exact bounds
//! are computed in [`cone_cover_bounds`]. Certificates are claims; the
//! [`crate::verify`] module is the judge.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactmath::{
    isqrt_ceil, rat, Int, IntMatrix, IntVector, Rat, RatMatrix, RatVector,
};
use crate::geom::{
    base_simplex, Cone, LatticePolytope, Simplex, SimplicialCone,
};
use crate::resolve::{resolve_cone, three_halves_pow};
use crate::subdivide::{refine_to_empty, triangulate_cone, triangulate_polytope_empty};
use crate::weyl::{min_integer_with_square_at_least, tile_cover};
use crate::{Error, Result};

/// Closed-form bounds for the cover constructions in a fixed dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundParams {
    pub d: usize,
    /// Tile scale of the sector extension step.
    pub gamma: Int,
    /// Certified dilation factor of the cone cover.
    pub kappa: Rat,
    /// Minimal admissible outer multiple of the polytope passage.
    pub pol_factor: Int,
    /// Resulting polytope-side bound.
    pub pol_bound: Rat,
}

/// Exact bound parameters: `gamma = ceil(sqrt(d-1)) * (d-1)`,
/// `kappa = gamma * d(d+1)/2 * (3/2)^(gamma-2)`, the minimal integer whose
/// square is at least `d (d+1)^2`, and their product.
pub fn cone_cover_bounds(d: usize) -> Result<BoundParams> {
    if d < 2 {
        return Err(Error::Dimension(
            "cover bounds are defined for dimension at least 2".into(),
        ));
    }
    let dm1 = Int::from((d - 1) as i64);
    let gamma = isqrt_ceil(&dm1) * &dm1;
    let gamma_i64: i64 = gamma
        .clone()
        .try_into()
        .map_err(|_| Error::Dimension("dimension too large".into()))?;
    let kappa = Rat::from_integer(gamma.clone())
        * rat((d * (d + 1)) as i64, 2)
        * three_halves_pow(gamma_i64 - 2);
    let pol_factor = min_integer_with_square_at_least(&rat((d * (d + 1) * (d + 1)) as i64, 1));
    let pol_bound = Rat::from_integer(pol_factor.clone()) * &kappa;
    Ok(BoundParams {
        d,
        gamma,
        kappa,
        pol_factor,
        pol_bound,
    })
}

/// Family of unimodular subcones covering a neighborhood of one extreme
/// generator inside the cone, together with the certified neighborhood
/// radius and dilation factor.
#[derive(Clone, Debug)]
pub struct CornerCover {
    pub cone: SimplicialCone,
    pub vertex: IntVector,
    pub members: Vec<SimplicialCone>,
    /// Certified radius: every `v + sum b_i (v_i - v)` with `0 <= b_i` and
    /// `sum b_i <= eta` lies in some member.
    pub eta: Rat,
    pub containment_factor: Rat,
}

/// Cover the corner of a simplicial cone at the given generator: project
/// along the generator onto the quotient lattice, cover the projected cone
/// recursively, and lift every Hilbert basis vector back with the unique
/// integral shift that lands its first coordinate in `[0, 1)`.
pub fn corner_cover(c: &SimplicialCone, vertex_index: usize) -> Result<CornerCover> {
    let d = c.dim();
    if d < 2 {
        return Err(Error::Dimension("corner covers need dimension at least 2".into()));
    }
    if vertex_index >= d {
        return Err(Error::Dimension("vertex index out of range".into()));
    }
    let gens = c.generators();
    let v1 = gens[vertex_index].clone();
    let others: Vec<IntVector> = gens
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != vertex_index)
        .map(|(_, g)| g.clone())
        .collect();
    let rays: Vec<IntVector> = others.iter().map(|g| g.sub(&v1)).collect();

    // the projection sends x to x - s(x) v1 where s is the coordinate sum
    // in the generator basis
    let vinv = IntMatrix::from_columns(gens)
        .to_rat()
        .invert()
        .expect("generator matrix is invertible");
    let coord_sum_covector = {
        let mut acc = RatVector::zero(d);
        for r in 0..d {
            let row = RatVector::new((0..d).map(|cidx| vinv.entry(r, cidx).clone()).collect());
            acc = acc.add(&row);
        }
        acc
    };
    let project = |x: &RatVector| -> RatVector {
        let s = coord_sum_covector.dot(x);
        x.sub(&v1.to_rat().scale(&s))
    };

    // image lattice of the standard lattice under the projection, as
    // integer coordinates with respect to a Hermite basis in ray coordinates
    let ray_matrix = RatMatrix::from_columns(&rays.iter().map(|r| r.to_rat()).collect::<Vec<_>>());
    let ray_coords = |x: &RatVector| -> Result<RatVector> {
        ray_matrix.solve(x).unique().cloned().ok_or_else(|| {
            Error::Degenerate("projected point leaves the quotient subspace".into())
        })
    };
    let mut images = Vec::with_capacity(d);
    for k in 0..d {
        images.push(ray_coords(&project(&IntVector::unit(d, k).to_rat()))?);
    }
    let mut denom = Int::one();
    for img in &images {
        denom = denom.lcm(&img.denominator_lcm());
    }
    let denom_rat = Rat::from_integer(denom.clone());
    let scaled_rows: Vec<IntVector> = images
        .iter()
        .map(|img| img.scale(&denom_rat).to_int().expect("cleared denominators"))
        .collect();
    let hnf = crate::exactmath::hermite_normal_form(&IntMatrix::from_rows(&scaled_rows));
    let mut basis_rows: Vec<IntVector> = Vec::new();
    for r in 0..d {
        let row = hnf.h.row(r);
        if !row.is_zero() {
            basis_rows.push(row);
        }
    }
    if basis_rows.len() != d - 1 {
        return Err(Error::Degenerate("projected lattice is rank deficient".into()));
    }
    let basis_matrix_t = IntMatrix::from_rows(&basis_rows).transpose().to_rat();

    // lattice coordinates of a point given in ray coordinates
    let lattice_coords = |alpha: &RatVector| -> Result<RatVector> {
        basis_matrix_t
            .solve(&alpha.scale(&denom_rat))
            .unique()
            .cloned()
            .ok_or_else(|| Error::Degenerate("lattice basis degenerated".into()))
    };
    // ray coordinates of a point given in lattice coordinates
    let ray_coords_of_lattice = |ell: &RatVector| -> RatVector {
        basis_matrix_t.mul_vec(ell).scale(&denom_rat.recip())
    };

    let mut projected_gens = Vec::with_capacity(d - 1);
    for i in 0..d - 1 {
        let unit = RatVector::new(
            (0..d - 1)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect(),
        );
        let ell = lattice_coords(&unit)?;
        let g = ell
            .to_int()
            .ok_or_else(|| Error::Degenerate("projected generator is not a lattice point".into()))?;
        projected_gens.push(g);
    }

    // cover the projected cone one dimension down
    let (lifted_gen_sets, recursive_factor): (Vec<Vec<IntVector>>, Rat) = if d - 1 == 1 {
        let g = crate::exactmath::primitive_vector(&projected_gens[0])?;
        (vec![vec![g]], Rat::one())
    } else {
        let projected = Cone::new(d - 1, projected_gens.clone())?;
        let cover = cover_cone(&projected, None)?;
        let sets = cover
            .members
            .iter()
            .map(|m| m.generators().to_vec())
            .collect();
        (sets, cone_cover_bounds(d - 1)?.kappa)
    };

    let mut members = Vec::with_capacity(lifted_gen_sets.len());
    let mut eta = Rat::one();
    for gen_set in &lifted_gen_sets {
        let mut member_gens = vec![v1.clone()];
        let mut lift_max = Int::zero();
        for x in gen_set {
            let alpha = ray_coords_of_lattice(&x.to_rat());
            if alpha.coords().iter().any(|a| a.is_negative()) {
                return Err(Error::Degenerate(
                    "projected cover member leaves the projected cone".into(),
                ));
            }
            let sigma = alpha.coord_sum();
            let shift = sigma.ceil().to_integer();
            let mut ambient = v1.to_rat().scale(&Rat::from_integer(shift.clone()));
            for (j, a) in alpha.coords().iter().enumerate() {
                ambient = ambient.add(&rays[j].to_rat().scale(a));
            }
            let lifted = ambient.to_int().ok_or_else(|| {
                Error::Degenerate("lifted vector is not integral".into())
            })?;
            // first coordinate in [0, 1): the lift lands strictly below the
            // next layer of the distinguished generator
            let xi1 = {
                let coords = c.coordinates(&lifted.to_rat());
                coords[vertex_index].clone()
            };
            if xi1.is_negative() || xi1 >= Rat::one() {
                return Err(Error::Degenerate("lift height escaped [0, 1)".into()));
            }
            if shift > lift_max {
                lift_max = shift;
            }
            member_gens.push(lifted);
        }
        let member = SimplicialCone::new(member_gens)?;
        if !member.is_unimodular() {
            return Err(Error::Degenerate("lifted corner member is not unimodular".into()));
        }

        if lift_max.is_positive() {
            // basis change from the ray basis to the member basis, measured
            // in lattice coordinates; the operator infinity norm bounds how
            // far a small ray-coordinate neighborhood can stretch
            let x_cols = RatMatrix::from_columns(
                &gen_set.iter().map(|x| x.to_rat()).collect::<Vec<_>>(),
            );
            let w_cols = RatMatrix::from_columns(
                &projected_gens.iter().map(|g| g.to_rat()).collect::<Vec<_>>(),
            );
            let xinv = x_cols
                .invert()
                .ok_or_else(|| Error::Degenerate("member basis is singular".into()))?;
            let change = xinv.mul(&w_cols);
            let mut norm = Rat::zero();
            for r in 0..d - 1 {
                let mut row_sum = Rat::zero();
                for cidx in 0..d - 1 {
                    let e = change.entry(r, cidx);
                    row_sum += if e.is_negative() { -e.clone() } else { e.clone() };
                }
                if row_sum > norm {
                    norm = row_sum;
                }
            }
            if norm.is_positive() {
                let constraint = (rat((d - 1) as i64, 1)
                    * norm
                    * Rat::from_integer(lift_max))
                .recip();
                if constraint < eta {
                    eta = constraint;
                }
            }
        }
        members.push(member);
    }

    members.sort_by(|a, b| a.generators().cmp(b.generators()));
    Ok(CornerCover {
        cone: c.clone(),
        vertex: v1,
        members,
        eta,
        containment_factor: recursive_factor + Rat::one(),
    })
}

/// Unimodular cover certificate for a cone: members, the base polytope of
/// the input, and the claimed dilation factor.
#[derive(Clone, Debug)]
pub struct ConeCover {
    pub input: Cone,
    pub base: LatticePolytope,
    pub claimed_factor: Rat,
    pub members: Vec<SimplicialCone>,
}

/// Unimodular cover certificate for a dilated polytope.
#[derive(Clone, Debug)]
pub struct PolytopeCover {
    pub input: LatticePolytope,
    pub multiple: Int,
    pub members: Vec<Simplex>,
}

/// A cover claim, checkable by [`crate::verify::verify_cover`].
#[derive(Clone, Debug)]
pub enum CoverCertificate {
    Cone(ConeCover),
    Polytope(PolytopeCover),
}

/// Cover a pointed full-dimensional cone by unimodular subcones whose
/// generators lie in `kappa(d)` times the base polytope. With a factor
/// override the certificate claims that factor instead (and may then fail
/// verification; that is the point of the override).
pub fn cover_cone(c: &Cone, factor_override: Option<Rat>) -> Result<ConeCover> {
    let d = c.dim();
    if d < 2 {
        return Err(Error::Dimension("cone covers need dimension at least 2".into()));
    }
    if !c.is_full_dimensional() {
        return Err(Error::Dimension("cone covers need a full-dimensional cone".into()));
    }
    let bounds = cone_cover_bounds(d)?;

    let mut pieces: Vec<SimplicialCone> = Vec::new();
    for simplicial in triangulate_cone(c)?.members() {
        for empty in refine_to_empty(simplicial)?.members() {
            pieces.push(empty.clone());
        }
    }

    let mut member_set: BTreeSet<Vec<IntVector>> = BTreeSet::new();
    if d == 2 {
        for piece in &pieces {
            // empty two-dimensional cones are unimodular
            debug_assert!(piece.is_unimodular());
            member_set.insert(piece.generators().to_vec());
        }
    } else {
        for piece in &pieces {
            cover_empty_piece(piece, &bounds, &mut member_set)?;
        }
    }

    let members = member_set
        .into_iter()
        .map(SimplicialCone::new)
        .collect::<Result<Vec<_>>>()?;
    Ok(ConeCover {
        input: c.clone(),
        base: c.base_polytope()?,
        claimed_factor: factor_override.unwrap_or(bounds.kappa),
        members,
    })
}

/// Cover one empty simplicial piece, corner by corner.
fn cover_empty_piece(
    piece: &SimplicialCone,
    bounds: &BoundParams,
    out: &mut BTreeSet<Vec<IntVector>>,
) -> Result<()> {
    let d = piece.dim();
    let gens = piece.generators();
    let base = base_simplex(piece);
    let kappa_region = base.scaled(&bounds.kappa);
    let phi_region = base.scaled(&rat((d + 1) as i64, 1));
    let vinv = IntMatrix::from_columns(gens)
        .to_rat()
        .invert()
        .expect("piece generator matrix is invertible");
    let gamma_rat = Rat::from_integer(bounds.gamma.clone());
    let theta_factor = rat(d as i64, (d - 1) as i64);
    // tile scale of the sector extension: gamma * d / (d-1), an integer
    let lemma_scale = Rat::from_integer(isqrt_ceil(&Int::from((d - 1) as i64)) * Int::from(d as i64));
    let epsilon = rat(1, d as i64);

    for corner in 0..d {
        let v1 = &gens[corner];
        // sector functional: zero on the hyperplane through the barycenter
        // direction, positive on the corner side
        let sector = {
            let mut acc = RatVector::zero(d);
            for r in 0..d {
                let row = RatVector::new((0..d).map(|cidx| vinv.entry(r, cidx).clone()).collect());
                let coeff = if r == corner {
                    rat((d - 1) as i64, 1)
                } else {
                    -Rat::one()
                };
                acc = acc.add(&row.scale(&coeff));
            }
            acc
        };
        let sector_v1 = sector.dot(&v1.to_rat());
        debug_assert!(sector_v1.is_positive());

        let cc = corner_cover(piece, corner)?;
        for member in &cc.members {
            for g in member.generators() {
                if !kappa_region.contains(&g.to_rat()) {
                    return Err(Error::Degenerate(format!(
                        "corner cover member generator {g} escapes the certified region"
                    )));
                }
            }
            out.insert(member.generators().to_vec());

            let lifted: Vec<&IntVector> =
                member.generators().iter().filter(|g| *g != v1).collect();
            let mut bad: Vec<&IntVector> = Vec::new();
            let mut good: Vec<&IntVector> = Vec::new();
            for m in &lifted {
                if sector.dot(&m.to_rat()).is_positive() {
                    bad.push(m);
                } else {
                    good.push(m);
                }
            }
            if bad.is_empty() {
                continue;
            }

            // crossing points of the rays from the corner through the
            // lifted generators with the sector hyperplane
            let crossing = |m: &IntVector| -> RatVector {
                let t = &sector_v1 / (&sector_v1 - sector.dot(&m.to_rat()));
                v1.to_rat().add(&m.to_rat().sub(&v1.to_rat()).scale(&t))
            };
            for m in &lifted {
                let y = crossing(m);
                let theta_y = v1
                    .to_rat()
                    .add(&y.sub(&v1.to_rat()).scale(&theta_factor));
                if !phi_region.contains(&theta_y) {
                    return Err(Error::Degenerate(
                        "sector extension leaves the dilated base simplex".into(),
                    ));
                }
            }

            let apex = v1.to_rat().scale(&gamma_rat);
            let mut frame_verts = vec![apex.clone()];
            let mut target_verts = vec![apex.clone()];
            for m in &bad {
                frame_verts.push(apex.add(&m.to_rat().sub(&v1.to_rat())));
                target_verts.push(apex.add(&crossing(m).sub(&v1.to_rat())));
            }
            let frame = Simplex::new(frame_verts)?;
            let target = Simplex::new(target_verts)?;
            let tiles = tile_cover(&frame, &target, &apex, &epsilon, &lemma_scale)?;
            let needed = tiles.guaranteed_region();

            // basis of the sublattice spanned by the corner generator and
            // the bad directions; tiles live at level gamma of it
            let mut sub_basis = vec![v1.clone()];
            for m in &bad {
                sub_basis.push(m.sub(v1));
            }
            let sub_matrix = IntMatrix::from_columns(&sub_basis);
            let sub_rat = sub_matrix.to_rat();

            for tile in &tiles.tiles {
                if tile_misses_region(tile, &needed) {
                    continue;
                }
                let mut level_gens = Vec::with_capacity(bad.len() + 1);
                for vert in tile.vertices() {
                    let ell = sub_rat.solve(vert).unique().cloned().ok_or_else(|| {
                        Error::Degenerate("tile vertex leaves the sector sublattice".into())
                    })?;
                    let ell = ell.to_int().ok_or_else(|| {
                        Error::Degenerate("tile vertex is not a sublattice point".into())
                    })?;
                    debug_assert_eq!(ell[0], bounds.gamma);
                    level_gens.push(ell);
                }
                let level_cone = SimplicialCone::new(level_gens)?;
                debug_assert!(bounds.gamma.mod_floor(&level_cone.multiplicity()).is_zero());
                let resolution = resolve_cone(&level_cone)?;
                for delta in &resolution.members {
                    let mut gens_ambient: Vec<IntVector> = delta
                        .generators()
                        .iter()
                        .map(|g| sub_matrix.mul_vec(g))
                        .collect();
                    for g in &good {
                        gens_ambient.push((*g).clone());
                    }
                    let dt = SimplicialCone::new(gens_ambient)?;
                    if !dt.is_unimodular() {
                        return Err(Error::Degenerate(
                            "assembled sector cone is not unimodular".into(),
                        ));
                    }
                    for g in dt.generators() {
                        if !kappa_region.contains(&g.to_rat()) {
                            return Err(Error::Degenerate(format!(
                                "sector cone generator {g} escapes the certified region"
                            )));
                        }
                    }
                    out.insert(dt.generators().to_vec());
                }
            }
        }
    }
    Ok(())
}

/// Conservative separation test: the tile misses the region when all of
/// its vertices lie strictly outside one facet of the region simplex.
fn tile_misses_region(tile: &Simplex, region: &Simplex) -> bool {
    let coords: Vec<RatVector> = match tile
        .vertices()
        .iter()
        .map(|v| region.affine_coordinates(v))
        .collect::<Option<Vec<_>>>()
    {
        Some(cs) => cs,
        None => return false,
    };
    let k = region.vertices().len();
    (0..k).any(|i| coords.iter().all(|c| c[i].is_negative()))
}

/// Cover a dilation `multiple * P` of a full-dimensional lattice polytope
/// by unimodular lattice simplices. The multiple must factor as an inner
/// integer at least the tight corner-cover dilation times an outer integer
/// whose square is at least `d (d+1)^2`; otherwise the minimal admissible
/// multiple is reported.
pub fn cover_polytope_multiple(p: &LatticePolytope, multiple: &Int) -> Result<PolytopeCover> {
    let d = p.dim();
    if d == 0 {
        return Err(Error::Dimension("polytope covers need dimension at least 1".into()));
    }
    if !multiple.is_positive() {
        return Err(Error::Precondition("multiple must be positive".into()));
    }
    if d == 1 {
        // a segment dilates into unit segments
        let lo = p.vertices()[0][0].clone() * multiple;
        let hi = p.vertices().last().unwrap()[0].clone() * multiple;
        let mut members = Vec::new();
        let mut k = lo;
        while k < hi {
            let next = &k + 1u32;
            members.push(Simplex::from_int_vertices(vec![
                IntVector::new(vec![k.clone()]),
                IntVector::new(vec![next.clone()]),
            ])?);
            k = next;
        }
        return Ok(PolytopeCover {
            input: p.clone(),
            multiple: multiple.clone(),
            members,
        });
    }

    let cells = triangulate_polytope_empty(p)?;

    // corner covers of every cell, with the corner functionals and the
    // tight inner dilation
    struct Corner {
        translate: IntVector,
        functional: RatVector,
        members: Vec<SimplicialCone>,
    }
    let mut corners: Vec<Corner> = Vec::new();
    let mut tight = Rat::one();
    for cell in &cells {
        let verts: Vec<IntVector> = cell
            .vertices()
            .iter()
            .map(|v| v.to_int().expect("cells are lattice simplices"))
            .collect();
        for i in 0..verts.len() {
            let rays: Vec<IntVector> = verts
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, u)| u.sub(&verts[i]))
                .collect();
            let functional = {
                let m = IntMatrix::from_columns(&rays).transpose().to_rat();
                m.solve(&RatVector::new(vec![Rat::one(); d]))
                    .unique()
                    .cloned()
                    .expect("cell corner rays are independent")
            };
            let cone = Cone::new(d, rays)?;
            let cover = cover_cone(&cone, None)?;
            for member in &cover.members {
                for g in member.generators() {
                    let v = functional.dot(&g.to_rat());
                    if v > tight {
                        tight = v;
                    }
                }
            }
            corners.push(Corner {
                translate: verts[i].clone(),
                functional,
                members: cover.members,
            });
        }
    }
    let inner_min = tight.ceil().to_integer().max(Int::one());
    let outer_min = min_integer_with_square_at_least(&rat((d * (d + 1) * (d + 1)) as i64, 1));

    // smallest divisor of the multiple that accommodates the inner factor
    // while leaving an admissible outer factor
    let mut inner: Option<Int> = None;
    let mut a = inner_min.clone();
    while &a * &outer_min <= *multiple {
        if multiple.mod_floor(&a).is_zero() && multiple.div_floor(&a) >= outer_min {
            inner = Some(a);
            break;
        }
        a += 1u32;
    }
    let Some(inner) = inner else {
        return Err(Error::InadmissibleScale {
            given: multiple.to_string(),
            minimal: (&inner_min * &outer_min).to_string(),
        });
    };
    let outer = multiple.div_floor(&inner);
    let inner_rat = Rat::from_integer(inner.clone());
    let outer_rat = Rat::from_integer(outer.clone());
    let epsilon = rat(1, (d + 1) as i64);

    let mut member_set: BTreeSet<Vec<IntVector>> = BTreeSet::new();
    let origin = RatVector::zero(d);
    for corner in &corners {
        let shift = corner.translate.scale(multiple).to_rat();
        for member in &corner.members {
            let frame = base_simplex(member);
            let mut target_verts = vec![origin.clone()];
            for g in member.generators() {
                let v = corner.functional.dot(&g.to_rat());
                debug_assert!(v.is_positive());
                target_verts.push(g.to_rat().scale(&(&inner_rat / &v)));
            }
            let target = Simplex::new(target_verts)?;
            let tiles = tile_cover(&frame, &target, &origin, &epsilon, &outer_rat)?;
            let needed = tiles.guaranteed_region();
            for tile in &tiles.tiles {
                if tile_misses_region(tile, &needed) {
                    continue;
                }
                let translated = tile.translated(&shift);
                let verts: Option<Vec<IntVector>> = translated
                    .vertices()
                    .iter()
                    .map(|v| v.to_int())
                    .collect();
                let verts = verts.ok_or_else(|| {
                    Error::Degenerate("emitted tile is not a lattice simplex".into())
                })?;
                let s = Simplex::from_int_vertices(verts.clone())?;
                if !s.multiplicity()?.is_one() {
                    return Err(Error::Degenerate("emitted tile is not unimodular".into()));
                }
                member_set.insert(verts);
            }
        }
    }

    let members = member_set
        .into_iter()
        .map(Simplex::from_int_vertices)
        .collect::<Result<Vec<_>>>()?;
    Ok(PolytopeCover {
        input: p.clone(),
        multiple: multiple.clone(),
        members,
    })
}

/// Input selector for factor probing.
#[derive(Clone, Debug)]
pub enum ProbeInput {
    Cone(Cone),
    Polytope(LatticePolytope),
}

/// One probed factor with its verification verdict.
#[derive(Clone, Debug)]
pub struct ProbeRow {
    pub factor: Int,
    pub pass: bool,
    pub detail: String,
}

/// Probe a range of integer factors: construct the cover once (cone mode)
/// or per multiple (polytope mode), and record which claimed factors the
/// verifier accepts. No claim is made beyond the recorded verdicts.
pub fn probe_minimal_factor(
    input: &ProbeInput,
    lo: i64,
    hi: i64,
    max_depth: usize,
) -> Result<Vec<ProbeRow>> {
    let mut rows = Vec::new();
    match input {
        ProbeInput::Cone(c) => {
            let cover = cover_cone(c, None)?;
            let cert = CoverCertificate::Cone(cover.clone());
            let member_checks = crate::verify::check_members(&cert)?;
            let structure_ok = member_checks.iter().all(|m| m.unimodular && m.inside);
            let coverage = crate::verify::check_coverage(&cert, max_depth)?;
            let coverage_ok = coverage.verdict == crate::verify::Verdict::Pass;
            for f in lo..=hi {
                let factor = Rat::from_integer(Int::from(f));
                let contained = cover.members.iter().all(|m| {
                    m.generators()
                        .iter()
                        .all(|g| cover.base.contains_scaled(&factor, &g.to_rat()).unwrap_or(false))
                });
                let pass = structure_ok && coverage_ok && contained;
                let detail = if pass {
                    "ok".to_string()
                } else if !contained {
                    "containment fails".to_string()
                } else {
                    "structure or coverage fails".to_string()
                };
                rows.push(ProbeRow {
                    factor: Int::from(f),
                    pass,
                    detail,
                });
            }
        }
        ProbeInput::Polytope(p) => {
            for f in lo..=hi {
                let multiple = Int::from(f);
                match cover_polytope_multiple(p, &multiple) {
                    Ok(cover) => {
                        let cert = CoverCertificate::Polytope(cover);
                        let report = crate::verify::verify_cover(&cert, max_depth)?;
                        let pass = report.verdict == crate::verify::Verdict::Pass;
                        rows.push(ProbeRow {
                            factor: multiple,
                            pass,
                            detail: if pass { "ok".into() } else { "verification fails".into() },
                        });
                    }
                    Err(Error::InadmissibleScale { minimal, .. }) => {
                        rows.push(ProbeRow {
                            factor: multiple,
                            pass: false,
                            detail: format!("inadmissible (minimal multiple {minimal})"),
                        });
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(rows)
}
