//! The E2 page of the spectral sequence converging to group cohomology
//! whose rows are Ext groups of the constant module against the subgroup
//! cohomology functors, together with both edge homomorphisms and
//! essential / relative-essential cohomology.
//!
//! Only the E2 page and the edges are computed; no differentials d_r with
//! r ≥ 2 and no limit page. Convergence is checked as the subquotient
//! inequality dim H^n ≤ Σ_{p+q=n} dim E2^{p,q}.

use crate::error::{Error, Result};
use crate::group::{make_family, FiniteGroup, Subgroup, SubgroupFamily};
use crate::groupcoh::{comparison_maps, CohomologyWorkspace, SubgroupCohomology};
use crate::homalg::{
    hom_complex, induced_ext_map_with, realize_free, resolve, FreeDecl, HullStrategy, Resolution,
    ResolveCaps,
};
use crate::linalg::Matrix;
use crate::module::{
    constant_module, fixed_point_module, interval_module, limit_basis, GGRep, GammaHom,
};
use crate::orbit::{build_orbit_category, OrbitCategory};
use std::sync::Arc;

/// Printed with every E2 report.
pub const E2_BANNER: &str = "E2 + edges only; differentials not computed";

pub struct E2Page {
    pub max_p: usize,
    pub max_q: usize,
    /// dims[p][q] = dim Ext^p(constant, H^q(?, M)).
    pub dims: Vec<Vec<usize>>,
    /// target_dims[n] = dim H^n(G, M) for n ≤ max_p + max_q.
    pub target_dims: Vec<usize>,
    /// vertical_edge[n]: H^n(G, M) → lim H^n(?, M), n ≤ max_p + max_q.
    pub vertical_edge: Vec<Matrix>,
    /// horizontal_edge[n]: Ext^n(constant, M^?) → H^n(G, M), n ≤ max_p.
    pub horizontal_edge: Vec<Matrix>,
}

impl E2Page {
    pub fn vertical_kernel_dims(&self) -> Vec<usize> {
        self.vertical_edge
            .iter()
            .map(|m| m.cols() - m.rank())
            .collect()
    }

    pub fn horizontal_ranks(&self) -> Vec<usize> {
        self.horizontal_edge.iter().map(Matrix::rank).collect()
    }

    /// dim(im horizontal ∩ ker vertical) per degree n ≤ max_p: the part of
    /// relative cohomology surviving as essential classes.
    pub fn relative_essential_dims(&self) -> Vec<usize> {
        self.horizontal_edge
            .iter()
            .zip(&self.vertical_edge)
            .map(|(h, v)| {
                let ker = v.kernel_basis();
                let dim_u = h.rank();
                let dim_w = ker.cols();
                let sum = h.hstack(&ker).rank();
                dim_u + dim_w - sum
            })
            .collect()
    }

    /// Subquotient bound dim H^n ≤ Σ_{p+q=n} dims[p][q], checkable for
    /// n ≤ min(max_p, max_q) where the full antidiagonal is in the window.
    pub fn subquotient_bound_holds(&self) -> bool {
        let n_max = self.max_p.min(self.max_q);
        (0..=n_max).all(|n| {
            let total: usize = (0..=n).map(|p| self.dims[p][n - p]).sum();
            self.target_dims[n] <= total
        })
    }
}

/// Workspace shared by the E2 page and both edges: the orbit category, the
/// subgroup cohomology of every object and of the whole group, and the
/// resolution of the constant module.
pub struct SpectralWorkspace {
    pub cat: Arc<OrbitCategory>,
    pub rep: GGRep,
    pub coh: CohomologyWorkspace,
    pub whole_group: SubgroupCohomology,
    pub rbar_res: Resolution,
    max_n: usize,
}

impl SpectralWorkspace {
    pub fn new(
        group: &FiniteGroup,
        family: &SubgroupFamily,
        rep: &GGRep,
        max_p: usize,
        max_q: usize,
        caps: ResolveCaps,
    ) -> Result<Self> {
        let cat = build_orbit_category(group, family)?;
        let max_n = max_p + max_q;
        let coh = CohomologyWorkspace::new(&cat, rep, max_n, caps)?;
        let whole_group = SubgroupCohomology::new(group, &Subgroup::full(group), rep, max_n, caps)?;
        let rbar = constant_module(&cat, rep.field);
        let rbar_res = resolve(&rbar, max_p + 1, HullStrategy::Minimized, caps)?;
        Ok(SpectralWorkspace {
            cat,
            rep: rep.clone(),
            coh,
            whole_group,
            rbar_res,
            max_n,
        })
    }

    /// Restriction H^n(G, M) → H^n(H, M) for every object H, stacked and
    /// corestricted to the compatible-tuple subspace of H^n(?, M).
    pub fn vertical_edge(&self, n: usize) -> Result<Matrix> {
        assert!(n <= self.max_n);
        let functor = self.coh.functor(n)?;
        let (offsets, basis) = limit_basis(&functor.values);
        let field = self.rep.field;
        let g_dim = self.whole_group.dims[n];
        let total = *offsets.last().unwrap();
        let mut stacked = Matrix::zeros(field, total, g_dim);
        for (obj, sub) in self.coh.per_object.iter().enumerate() {
            let mats = comparison_maps(self.cat.group(), &self.rep, sub, &self.whole_group, 0)?;
            let m = &mats[n];
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    stacked.set(offsets[obj] + r, c, m.get(r, c));
                }
            }
        }
        basis.solve(&stacked).ok_or(Error::LiftFailed {
            degree: n,
            object: 0,
        })
    }

    /// The map induced by the hom R_0 → constant that is the identity at
    /// the trivial orbit, with the source Ext identified with H^*(G, M)
    /// through the promoted one-object resolution.
    pub fn horizontal_edges(&self, up_to: usize) -> Result<Vec<Matrix>> {
        let field = self.rep.field;
        let cat = &self.cat;
        let triv_obj = cat
            .object_index(&Subgroup::trivial())
            .expect("families contain the trivial subgroup");
        let r0 = interval_module(cat, field, &[triv_obj])?;
        let rbar = self.rbar_res.target.clone();
        // promote the one-object resolution of the whole group to a
        // resolution of R_0 over the family category
        let g_res = &self.whole_group.res;
        let nobj = cat.object_count();
        let mut terms = Vec::with_capacity(g_res.terms.len());
        for t in &g_res.terms {
            let decl = FreeDecl {
                summands: vec![triv_obj; t.decl.summands.len()],
            };
            terms.push(realize_free(cat, field, decl));
        }
        let aug_comp: Vec<Matrix> = (0..nobj)
            .map(|o| {
                if o == triv_obj {
                    g_res.aug.component(0).clone()
                } else {
                    Matrix::zeros(field, r0.dim(o), terms[0].dim(o))
                }
            })
            .collect();
        let aug = GammaHom::from_components(terms[0].module.clone(), r0.clone(), aug_comp)?;
        let mut diffs = Vec::with_capacity(g_res.diffs.len());
        for (q, d) in g_res.diffs.iter().enumerate() {
            let comp: Vec<Matrix> = (0..nobj)
                .map(|o| {
                    if o == triv_obj {
                        d.component(0).clone()
                    } else {
                        Matrix::zeros(field, terms[q].dim(o), terms[q + 1].dim(o))
                    }
                })
                .collect();
            diffs.push(GammaHom::from_components(
                terms[q + 1].module.clone(),
                terms[q].module.clone(),
                comp,
            )?);
        }
        let promoted = Resolution {
            target: r0.clone(),
            terms,
            diffs,
            aug,
        };
        promoted.verify()?;
        // the promoted Hom complex must literally reproduce the one-object
        // complex, so its cohomology coordinates are H^*(G, M) coordinates
        let coeff = fixed_point_module(cat, &self.rep)?;
        let promoted_cx = hom_complex(&promoted, &coeff)?;
        for (q, d) in self.whole_group.complex.deltas.iter().enumerate() {
            if q < promoted_cx.deltas.len() && &promoted_cx.deltas[q] != d {
                return Err(Error::NotFunctorial {
                    context: format!("promoted complex differs at degree {q}"),
                });
            }
        }
        // alpha: R_0 → constant, identity at the trivial orbit
        let alpha_comp: Vec<Matrix> = (0..nobj)
            .map(|o| {
                if o == triv_obj {
                    Matrix::identity(field, 1)
                } else {
                    Matrix::zeros(field, rbar.dim(o), r0.dim(o))
                }
            })
            .collect();
        let alpha = GammaHom::from_components(r0, rbar, alpha_comp)?;
        let mats = induced_ext_map_with(&alpha, &promoted, &self.rbar_res, &coeff)?;
        Ok(mats.into_iter().take(up_to + 1).collect())
    }
}

/// Computes the full page with both edges and verifies the wiring
/// invariants (row q = 0 is relative cohomology, column p = 0 is the limit
/// of subgroup cohomology, and the subquotient bound).
pub fn e2_page(
    group: &FiniteGroup,
    family: &SubgroupFamily,
    rep: &GGRep,
    max_p: usize,
    max_q: usize,
    caps: ResolveCaps,
) -> Result<E2Page> {
    let ws = SpectralWorkspace::new(group, family, rep, max_p, max_q, caps)?;
    let mut dims = vec![vec![0usize; max_q + 1]; max_p + 1];
    for q in 0..=max_q {
        let functor = ws.coh.functor(q)?;
        let cx = hom_complex(&ws.rbar_res, &functor.values)?;
        let col = cx.cohomology_dims();
        for p in 0..=max_p {
            dims[p][q] = col[p];
        }
        // column p = 0 is the inverse limit of the coefficient functor
        let lim = crate::module::limit(&functor.values);
        if dims[0][q] != lim {
            return Err(Error::NotFunctorial {
                context: format!("E2[0][{q}] = {} differs from limit {lim}", dims[0][q]),
            });
        }
    }
    // row q = 0 is relative cohomology of the same coefficients
    let coeff = fixed_point_module(&ws.cat, rep)?;
    let relcoh = {
        let cx = hom_complex(&ws.rbar_res, &coeff)?;
        cx.cohomology_dims()
    };
    for p in 0..=max_p {
        if dims[p][0] != relcoh[p] {
            return Err(Error::NotFunctorial {
                context: format!("E2[{p}][0] differs from relative cohomology"),
            });
        }
    }
    let max_n = max_p + max_q;
    let target_dims: Vec<usize> = ws.whole_group.dims[..=max_n].to_vec();
    let mut vertical_edge = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        vertical_edge.push(ws.vertical_edge(n)?);
    }
    let horizontal_edge = ws.horizontal_edges(max_p)?;
    let page = E2Page {
        max_p,
        max_q,
        dims,
        target_dims,
        vertical_edge,
        horizontal_edge,
    };
    if !page.subquotient_bound_holds() {
        return Err(Error::NotFunctorial {
            context: "subquotient bound violated".into(),
        });
    }
    Ok(page)
}

/// Kernel dimensions of the vertical edge with the family forced to all
/// proper subgroups: the essential cohomology of the group.
pub fn essential_dims(
    group: &FiniteGroup,
    rep: &GGRep,
    degree: usize,
    caps: ResolveCaps,
) -> Result<Vec<usize>> {
    let family = make_family(group, "all_proper")?;
    let ws = SpectralWorkspace::new(group, &family, rep, degree, 0, caps)?;
    (0..=degree)
        .map(|n| ws.vertical_edge(n).map(|m| m.cols() - m.rank()))
        .collect()
}
