//! Relative group cohomology with respect to a subgroup family, computed
//! over the orbit category, together with an independent group-ring-side
//! pipeline (evaluation of the resolution at the trivial orbit), the
//! permutation-module tensor construction, F-split and X-split checkers,
//! and periodicity reports.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, SubgroupFamily};
use crate::homalg::{ext_dims, resolve, HullStrategy, ResolveCaps};
use crate::linalg::{Matrix, PrimeField};
use crate::module::{constant_module, fixed_point_module, perm_rep_gset, GGRep};
use crate::orbit::build_orbit_category;
use serde::Serialize;

/// FH^q(G, M) for q = 0..=degree: Ext over the orbit category from the
/// constant module to the fixed-point module of the coefficients.
pub fn relative_cohomology_dims(
    group: &FiniteGroup,
    family: &SubgroupFamily,
    rep: &GGRep,
    degree: usize,
    caps: ResolveCaps,
) -> Result<Vec<usize>> {
    let cat = build_orbit_category(group, family)?;
    let rbar = constant_module(&cat, rep.field);
    let coeff = fixed_point_module(&cat, rep)?;
    ext_dims(&rbar, &coeff, degree, HullStrategy::Minimized, caps)
}

/// Dimensions of the cohomology of Hom_RG(C_•, M) for a complex of
/// representations given by boundary matrices; ranks only, no bases of the
/// outgoing space are needed.
fn rg_cochain_dims(
    terms: &[GGRep],
    boundaries: &[Matrix], // boundaries[q]: terms[q+1] → terms[q]
    coeff: &GGRep,
    degree: usize,
) -> Vec<usize> {
    let field = coeff.field;
    let gens = coeff.group.generators();
    let hom_basis = |c: &GGRep| -> Vec<Matrix> {
        let unknowns = coeff.dim * c.dim;
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for &g in &gens {
            for r in 0..coeff.dim {
                for cc in 0..c.dim {
                    let mut row = vec![0u64; unknowns];
                    for k in 0..c.dim {
                        let v = c.rho[g].get(k, cc);
                        if v != 0 {
                            let idx = r * c.dim + k;
                            row[idx] = (row[idx] + v) % field.p();
                        }
                    }
                    for k in 0..coeff.dim {
                        let v = coeff.rho[g].get(r, k);
                        if v != 0 {
                            let idx = k * c.dim + cc;
                            row[idx] = (row[idx] + field.neg(v)) % field.p();
                        }
                    }
                    if row.iter().any(|&x| x != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        let system = if rows.is_empty() {
            Matrix::zeros(field, 0, unknowns)
        } else {
            Matrix::from_rows(field, rows.len(), unknowns, &rows)
        };
        let kernel = system.kernel_basis();
        (0..kernel.cols())
            .map(|j| {
                let mut x = Matrix::zeros(field, coeff.dim, c.dim);
                for r in 0..coeff.dim {
                    for cc in 0..c.dim {
                        x.set(r, cc, kernel.get(r * c.dim + cc, j));
                    }
                }
                x
            })
            .collect()
    };
    let bases: Vec<Vec<Matrix>> = terms[..=degree].iter().map(hom_basis).collect();
    // delta rank in raw coordinates: columns vec(X_b ∘ ∂_{q+1})
    let delta_rank = |q: usize| -> usize {
        let basis = &bases[q];
        if basis.is_empty() {
            return 0;
        }
        let bnd = &boundaries[q];
        let rows_dim = coeff.dim * bnd.cols();
        let mut cols: Vec<Vec<u64>> = Vec::with_capacity(basis.len());
        for x in basis {
            let composed = x.mul(bnd);
            let mut v = Vec::with_capacity(rows_dim);
            for r in 0..composed.rows() {
                for c in 0..composed.cols() {
                    v.push(composed.get(r, c));
                }
            }
            cols.push(v);
        }
        Matrix::from_rows(field, cols.len(), rows_dim, &cols).rank()
    };
    let mut dims = Vec::with_capacity(degree + 1);
    let mut prev_rank = 0;
    for q in 0..=degree {
        let rk = delta_rank(q);
        dims.push(bases[q].len() - rk - prev_rank);
        prev_rank = rk;
    }
    dims
}

/// The group-ring-side pipeline: resolve the constant module over the
/// orbit category, evaluate the resolution at the trivial orbit to get a
/// split-relative resolution of R by relatively projective modules, and
/// take cohomology of Hom_RG(P_•(1), M). Must agree with
/// [`relative_cohomology_dims`] in every degree.
pub fn rg_side_pipeline(
    group: &FiniteGroup,
    family: &SubgroupFamily,
    rep: &GGRep,
    degree: usize,
    caps: ResolveCaps,
) -> Result<Vec<usize>> {
    let cat = build_orbit_category(group, family)?;
    let rbar = constant_module(&cat, rep.field);
    let res = resolve(&rbar, degree + 1, HullStrategy::Minimized, caps)?;
    let triv_obj = cat
        .object_index(&Subgroup::trivial())
        .expect("families always contain the trivial subgroup");
    let evaluate = |q: usize| -> GGRep {
        let module = &res.terms[q].module;
        let rho = (0..group.order())
            .map(|g| {
                let mor = cat
                    .morphism_with_rep(triv_obj, triv_obj, g)
                    .expect("all endomorphisms exist at the trivial orbit");
                module.act(mor).clone()
            })
            .collect();
        GGRep {
            group: group.clone(),
            field: rep.field,
            dim: module.dim(triv_obj),
            rho,
        }
    };
    let terms: Vec<GGRep> = (0..res.terms.len()).map(evaluate).collect();
    let boundaries: Vec<Matrix> = res
        .diffs
        .iter()
        .map(|d| d.component(triv_obj).clone())
        .collect();
    Ok(rg_cochain_dims(&terms, &boundaries, rep, degree))
}

/// The permutation-module tensor construction: with X a G-set whose fixed
/// points realize the family, resolve R by the spliced sequences
/// 0 → K ⊗ RX → ... built from 0 → ker ε → RX → R → 0, and take
/// cohomology of Hom_RG against the coefficients. Term dimensions grow
/// geometrically, so the degree window stays small.
pub fn tensor_pipeline(
    group: &FiniteGroup,
    xset: &[Subgroup],
    rep: &GGRep,
    degree: usize,
) -> Result<Vec<usize>> {
    let field = rep.field;
    let rx = perm_rep_gset(group, field, xset);
    let xdim = rx.dim;
    let mut eps = Matrix::zeros(field, 1, xdim);
    for c in 0..xdim {
        eps.set(0, c, 1);
    }
    // kernel of the augmentation as a representation
    let kb = eps.kernel_basis();
    let k0 = GGRep {
        group: group.clone(),
        field,
        dim: kb.cols(),
        rho: (0..group.order())
            .map(|g| {
                kb.solve(&rx.rho[g].mul(&kb))
                    .expect("augmentation kernel is invariant")
            })
            .collect(),
    };
    // P_q = k0^{⊗q} ⊗ RX; ∂_q = I_{k0^{⊗(q-1)}} ⊗ D with D = kb·(I ⊗ ε)
    let d_small = kb.mul(&Matrix::identity(field, k0.dim).kronecker(&eps));
    let mut terms: Vec<GGRep> = Vec::with_capacity(degree + 1);
    let mut power = GGRep::trivial(group, field); // k0^{⊗0}
    for _ in 0..=degree {
        let term = GGRep {
            group: group.clone(),
            field,
            dim: power.dim * xdim,
            rho: (0..group.order())
                .map(|g| power.rho[g].kronecker(&rx.rho[g]))
                .collect(),
        };
        terms.push(term);
        power = GGRep {
            group: group.clone(),
            field,
            dim: power.dim * k0.dim,
            rho: (0..group.order())
                .map(|g| power.rho[g].kronecker(&k0.rho[g]))
                .collect(),
        };
    }
    // ∂_{q+1}: P_{q+1} → P_q is I ⊗ D on the k0^{⊗q} tensor factor; the
    // top boundary P_{degree+1} → P_{degree} is needed for the last rank
    let boundaries: Vec<Matrix> = (0..=degree)
        .map(|q| {
            let id_dim = terms[q].dim / xdim;
            Matrix::identity(field, id_dim).kronecker(&d_small)
        })
        .collect();
    Ok(rg_cochain_dims(&terms, &boundaries, rep, degree))
}

/// Splitting data for one subgroup: either a verified section or the rank
/// certificate of an inconsistent linear system.
#[derive(Debug, Clone, Serialize)]
pub struct SplitWitness {
    pub subgroup: usize,
    pub split: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub section: Option<Matrix>,
    pub system_rank: usize,
    pub augmented_rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FSplitReport {
    pub per_subgroup: Vec<SplitWitness>,
    pub all_split: bool,
}

/// A surjective equivariant map between representations.
pub struct EquivariantSurjection {
    pub source: GGRep,
    pub target: GGRep,
    pub map: Matrix,
}

impl EquivariantSurjection {
    pub fn new(source: GGRep, target: GGRep, map: Matrix) -> Result<Self> {
        if map.rows() != target.dim || map.cols() != source.dim {
            return Err(Error::DimensionMismatch {
                context: "surjection shape".into(),
            });
        }
        for g in 0..source.group.order() {
            if map.mul(&source.rho[g]) != target.rho[g].mul(&map) {
                return Err(Error::NotEquivariant { element: g });
            }
        }
        let rank = map.rank();
        if rank != target.dim {
            return Err(Error::NotSurjective {
                rank,
                needed: target.dim,
            });
        }
        Ok(EquivariantSurjection {
            source,
            target,
            map,
        })
    }

    /// The canonical split candidate M ⊗ RX → M, id ⊗ ε.
    pub fn canonical(group: &FiniteGroup, rep: &GGRep, xset: &[Subgroup]) -> Result<Self> {
        let field = rep.field;
        let rx = perm_rep_gset(group, field, xset);
        let source = GGRep {
            group: group.clone(),
            field,
            dim: rep.dim * rx.dim,
            rho: (0..group.order())
                .map(|g| rep.rho[g].kronecker(&rx.rho[g]))
                .collect(),
        };
        let mut eps = Matrix::zeros(field, 1, rx.dim);
        for c in 0..rx.dim {
            eps.set(0, c, 1);
        }
        let map = Matrix::identity(field, rep.dim).kronecker(&eps);
        EquivariantSurjection::new(source, rep.clone(), map)
    }
}

/// Searches for an H-equivariant section s of the map with π·s = id,
/// returning the witness or the inconsistency ranks.
fn equivariant_section(
    pi: &EquivariantSurjection,
    subgroup_elements: &[usize],
) -> (Option<Matrix>, usize, usize) {
    let field = pi.source.field;
    let (bd, cd) = (pi.source.dim, pi.target.dim);
    let unknowns = bd * cd; // s: bd × cd, vec index r·cd + c
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut rhs: Vec<u64> = Vec::new();
    // π·s = I
    for r in 0..cd {
        for c in 0..cd {
            let mut row = vec![0u64; unknowns];
            for k in 0..bd {
                let v = pi.map.get(r, k);
                if v != 0 {
                    row[k * cd + c] = v;
                }
            }
            rows.push(row);
            rhs.push(u64::from(r == c));
        }
    }
    // equivariance: rho_B[h]·s = s·rho_C[h]
    for &h in subgroup_elements {
        if h == 0 {
            continue;
        }
        for r in 0..bd {
            for c in 0..cd {
                let mut row = vec![0u64; unknowns];
                for k in 0..bd {
                    let v = pi.source.rho[h].get(r, k);
                    if v != 0 {
                        row[k * cd + c] = (row[k * cd + c] + v) % field.p();
                    }
                }
                for k in 0..cd {
                    let v = pi.target.rho[h].get(k, c);
                    if v != 0 {
                        row[r * cd + k] = (row[r * cd + k] + field.neg(v)) % field.p();
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                    rhs.push(0);
                }
            }
        }
    }
    let a = Matrix::from_rows(field, rows.len(), unknowns, &rows);
    let b = Matrix::from_rows(
        field,
        rhs.len(),
        1,
        &rhs.iter().map(|&v| vec![v]).collect::<Vec<_>>(),
    );
    let system_rank = a.rank();
    match a.solve(&b) {
        Some(x) => {
            let mut s = Matrix::zeros(field, bd, cd);
            for r in 0..bd {
                for c in 0..cd {
                    s.set(r, c, x.get(r * cd + c, 0));
                }
            }
            debug_assert_eq!(pi.map.mul(&s), Matrix::identity(field, cd));
            (Some(s), system_rank, system_rank)
        }
        None => (None, system_rank, a.hstack(&b).rank()),
    }
}

/// Per-subgroup splitting verdicts for every member of the family.
pub fn fsplit_check(pi: &EquivariantSurjection, family: &SubgroupFamily) -> Result<FSplitReport> {
    let mut per_subgroup = Vec::with_capacity(family.len());
    for (i, h) in family.members().iter().enumerate() {
        let (section, system_rank, augmented_rank) = equivariant_section(pi, h.elements());
        per_subgroup.push(SplitWitness {
            subgroup: i,
            split: section.is_some(),
            section,
            system_rank,
            augmented_rank,
        });
    }
    let all_split = per_subgroup.iter().all(|w| w.split);
    Ok(FSplitReport {
        per_subgroup,
        all_split,
    })
}

/// X-split verdict: tensor the surjection with the permutation module of X
/// and search for a fully equivariant section.
pub fn xsplit_check(pi: &EquivariantSurjection, xset: &[Subgroup]) -> Result<SplitWitness> {
    let group = &pi.source.group;
    let field = pi.source.field;
    let rx = perm_rep_gset(group, field, xset);
    let tensor = |rep: &GGRep| GGRep {
        group: group.clone(),
        field,
        dim: rep.dim * rx.dim,
        rho: (0..group.order())
            .map(|g| rep.rho[g].kronecker(&rx.rho[g]))
            .collect(),
    };
    let tensored = EquivariantSurjection {
        source: tensor(&pi.source),
        target: tensor(&pi.target),
        map: pi.map.kronecker(&Matrix::identity(field, rx.dim)),
    };
    let all: Vec<usize> = (0..group.order()).collect();
    let (section, system_rank, augmented_rank) = equivariant_section(&tensored, &all);
    Ok(SplitWitness {
        subgroup: usize::MAX,
        split: section.is_some(),
        section,
        system_rank,
        augmented_rank,
    })
}

/// The short exact sequence 0 → R_0 ⊕ R_0 → ⊕_i R_{H_i} → constant → 0 on
/// a category whose non-trivial objects are three incomparable lines:
/// gamma is (u, v) ↦ (−u, u+v, −v) at the trivial orbit and zero
/// elsewhere, pi is the identity at each line and the coordinate sum at
/// the trivial orbit. Returns (gamma, pi); exactness is verified.
pub fn klein_gamma(
    cat: &std::sync::Arc<crate::orbit::OrbitCategory>,
    field: PrimeField,
) -> Result<(crate::module::GammaHom, crate::module::GammaHom)> {
    use crate::module::{direct_sum, interval_module, GammaHom};
    let triv = cat
        .object_index(&Subgroup::trivial())
        .expect("family contains the trivial subgroup");
    let lines: Vec<usize> = (0..cat.object_count()).filter(|&o| o != triv).collect();
    if lines.len() != 3 {
        return Err(Error::BadSpec {
            reason: "need exactly three lines".into(),
        });
    }
    let r0 = interval_module(cat, field, &[triv])?;
    let r0r0 = direct_sum(&[&r0, &r0])?;
    let tops: Vec<_> = lines
        .iter()
        .map(|&l| interval_module(cat, field, &[triv, l]))
        .collect::<Result<Vec<_>>>()?;
    let middle = direct_sum(&tops.iter().collect::<Vec<_>>())?;
    let rbar = constant_module(cat, field);
    let neg = field.neg(1);
    let mut gamma_comp = Vec::with_capacity(cat.object_count());
    let mut pi_comp = Vec::with_capacity(cat.object_count());
    for o in 0..cat.object_count() {
        if o == triv {
            gamma_comp.push(Matrix::from_rows(
                field,
                3,
                2,
                &[vec![neg, 0], vec![1, 1], vec![0, neg]],
            ));
            pi_comp.push(Matrix::from_rows(field, 1, 3, &[vec![1, 1, 1]]));
        } else {
            gamma_comp.push(Matrix::zeros(field, middle.dim(o), 0));
            pi_comp.push(Matrix::identity(field, middle.dim(o)));
        }
    }
    let gamma = GammaHom::from_components(r0r0, middle.clone(), gamma_comp)?;
    let pi = GammaHom::from_components(middle, rbar, pi_comp)?;
    // exactness: gamma injective, pi surjective, im gamma = ker pi
    for o in 0..cat.object_count() {
        let g = gamma.component(o);
        let p = pi.component(o);
        if g.rank() != g.cols() || p.rank() != p.rows() || g.rank() + p.rank() != p.cols() {
            return Err(Error::NotFunctorial {
                context: format!("sequence not exact at object {o}"),
            });
        }
        if !p.mul(g).is_zero() {
            return Err(Error::NotFunctorial {
                context: "pi ∘ gamma nonzero".into(),
            });
        }
    }
    Ok((gamma, pi))
}

/// Maximal members of a family; the disjoint union of their orbits has
/// fixed points exactly on the family.
pub fn maximal_members(family: &SubgroupFamily) -> Vec<Subgroup> {
    family
        .members()
        .iter()
        .filter(|h| {
            !family
                .members()
                .iter()
                .any(|k| k.len() > h.len() && h.is_subset_of(k))
        })
        .cloned()
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct PeriodicityReport {
    pub window: usize,
    pub offset: usize,
    pub period: Option<usize>,
    pub strictly_increasing_tail: bool,
    pub verdict: String,
}

/// Searches for the smallest period of the dimension sequence beyond the
/// stabilization offset. A none verdict is a bounded-window statement.
pub fn periodicity_report(dims: &[usize], offset: usize) -> Result<PeriodicityReport> {
    if dims.len() < 2 * (offset + 1) {
        return Err(Error::WindowTooShort {
            len: dims.len(),
            offset,
        });
    }
    let tail = &dims[offset..];
    let max_d = tail.len() / 2;
    let mut period = None;
    for d in 1..=max_d {
        if (0..tail.len() - d).all(|i| tail[i] == tail[i + d]) {
            period = Some(d);
            break;
        }
    }
    let strictly_increasing_tail = tail.windows(2).all(|w| w[0] < w[1]);
    let verdict = match period {
        Some(d) => format!(
            "period {d} verified on degrees [{offset}, {}]",
            dims.len() - 1
        ),
        None => format!(
            "no period <= {max_d} detected in degrees [{offset}, {}]",
            dims.len() - 1
        ),
    };
    Ok(PeriodicityReport {
        window: dims.len() - 1,
        offset,
        period,
        strictly_increasing_tail,
        verdict,
    })
}
