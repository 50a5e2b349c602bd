//! Ordinary group cohomology H^q(H, M) for subgroups H ≤ G, computed by
//! the resolution engine on one-object orbit categories, and assembled into
//! the coefficient system H^q(?, M) over an orbit category with restriction
//! and conjugation maps built from chain lifts. Also inflation maps along
//! quotients, and a truncated bar-resolution oracle for cross-checks.

use crate::error::{Error, Result};
use crate::group::{quotient_group, FiniteGroup, Subgroup, SubgroupFamily, SubgroupGroup};
use crate::homalg::{
    hom_complex, induced_on_cohomology, lift_against, resolve, AcyclicComplex, CochainComplex,
    CohBasis, HullStrategy, Resolution, ResolveCaps,
};
use crate::linalg::Matrix;
use crate::module::{constant_module, fixed_point_module, GGRep, GammaHom, GammaModule};
use crate::orbit::{build_orbit_category, OrbitCategory};
use std::sync::Arc;

/// The cohomology of one subgroup through a fixed degree: its one-object
/// orbit category, resolution, Hom complex against the restricted
/// coefficients, and deterministic cohomology bases. These are the
/// provenance handles for every map built out of this subgroup.
pub struct SubgroupCohomology {
    pub subgroup: Subgroup,
    pub sub: SubgroupGroup,
    pub cat: Arc<OrbitCategory>,
    pub res: Resolution,
    pub coeff: GammaModule,
    pub complex: CochainComplex,
    pub bases: Vec<CohBasis>,
    pub dims: Vec<usize>,
}

impl SubgroupCohomology {
    pub fn new(
        group: &FiniteGroup,
        subgroup: &Subgroup,
        rep: &GGRep,
        degree: usize,
        caps: ResolveCaps,
    ) -> Result<Self> {
        let sub = SubgroupGroup::new(group, subgroup);
        let family = SubgroupFamily::new(&sub.group, vec![Subgroup::trivial()])?;
        let cat = build_orbit_category(&sub.group, &family)?;
        let restricted = rep.restrict(&sub);
        let coeff = fixed_point_module(&cat, &restricted)?;
        let trivial = constant_module(&cat, rep.field);
        let res = resolve(&trivial, degree + 1, HullStrategy::Minimized, caps)?;
        let complex = hom_complex(&res, &coeff)?;
        let bases = complex.bases();
        let dims = complex.cohomology_dims();
        Ok(SubgroupCohomology {
            subgroup: subgroup.clone(),
            sub,
            cat,
            res,
            coeff,
            complex,
            bases,
            dims,
        })
    }

    /// Morphism id of a local group element in the one-object category
    /// (cosets of the trivial subgroup list elements in index order).
    fn element_morphism(&self, local: usize) -> usize {
        self.cat.mor(0, 0)[local]
    }
}

/// H^q(H, Res_H M) dimensions for q = 0..=degree.
pub fn group_cohomology_dims(
    group: &FiniteGroup,
    subgroup: &Subgroup,
    rep: &GGRep,
    degree: usize,
    caps: ResolveCaps,
) -> Result<Vec<usize>> {
    Ok(SubgroupCohomology::new(group, subgroup, rep, degree, caps)?.dims)
}

/// Matrices H^q(to, M) → H^q(from, M) for all computed q, induced by the
/// compatible pair (conjugation k ↦ g⁻¹kg : from → to, m ↦ g·m on
/// coefficients); requires from^g ≤ to in the ambient group.
pub fn comparison_maps(
    group: &FiniteGroup,
    rep: &GGRep,
    from: &SubgroupCohomology,
    to: &SubgroupCohomology,
    g: usize,
) -> Result<Vec<Matrix>> {
    let field = rep.field;
    // the group homomorphism φ: from → to, k ↦ g⁻¹ k g, in local indices
    let phi: Vec<usize> = from
        .sub
        .emb
        .iter()
        .map(|&k| {
            to.sub
                .to_local(group.conj_right(k, g))
                .expect("conjugate must land in the target subgroup")
        })
        .collect();
    // the target's resolution viewed over the source's category: same value
    // spaces and matrices, action restricted along φ
    let wrap_module = |m: &GammaModule| -> Result<GammaModule> {
        let dims = vec![m.dim(0)];
        let act = (0..from.cat.morphism_count())
            .map(|id| {
                let local = from.cat.morphism(id).rep;
                m.act(to.element_morphism(phi[local])).clone()
            })
            .collect();
        GammaModule::new(from.cat.clone(), field, dims, act)
    };
    let target = wrap_module(&to.res.target)?;
    let terms: Vec<GammaModule> = to
        .res
        .terms
        .iter()
        .map(|t| wrap_module(&t.module))
        .collect::<Result<_>>()?;
    let aug = GammaHom::from_components(
        terms[0].clone(),
        target.clone(),
        vec![to.res.aug.component(0).clone()],
    )?;
    let diffs: Vec<GammaHom> = (0..to.res.diffs.len())
        .map(|q| {
            GammaHom::from_components(
                terms[q + 1].clone(),
                terms[q].clone(),
                vec![to.res.diffs[q].component(0).clone()],
            )
        })
        .collect::<Result<_>>()?;
    let dst = AcyclicComplex {
        target: target.clone(),
        terms,
        diffs,
        aug,
    };
    let alpha = GammaHom::from_components(
        from.res.target.clone(),
        target,
        vec![Matrix::identity(field, 1)],
    )?;
    let lift = lift_against(&alpha, &from.res, &dst)?;

    // cochain maps Hom_to(P_q, M) → Hom_from(Q_q, M):
    // ψ ↦ ρ(g) ∘ ψ ∘ t_q in Yoneda block coordinates
    let m = rep.dim;
    let mut cmaps = Vec::with_capacity(lift.maps.len());
    for q in 0..lift.maps.len() {
        let from_summands = from.res.terms[q].decl.summands.len();
        let to_summands = to.res.terms[q].decl.summands.len();
        let mut t = Matrix::zeros(field, from_summands * m, to_summands * m);
        for (i, y) in lift.generator_images(q).iter().enumerate() {
            for j in 0..to_summands {
                let mut block = Matrix::zeros(field, m, m);
                for (w, rho_w) in to.sub.emb.iter().enumerate() {
                    let c = y[to.res.terms[q].position(0, j, w)];
                    if c != 0 {
                        block = block.add(&rep.rho[*rho_w].scale(c));
                    }
                }
                let block = rep.rho[g].mul(&block);
                for r in 0..m {
                    for cc in 0..m {
                        t.set(i * m + r, j * m + cc, block.get(r, cc));
                    }
                }
            }
        }
        cmaps.push(t);
    }
    for q in 0..cmaps.len().saturating_sub(1) {
        let lhs = cmaps[q + 1].mul(&to.complex.deltas[q]);
        let rhs = from.complex.deltas[q].mul(&cmaps[q]);
        if lhs != rhs {
            return Err(Error::LiftFailed {
                degree: q,
                object: 0,
            });
        }
    }
    Ok(induced_on_cohomology(&cmaps, &from.bases, &to.bases))
}

/// The group-cohomology coefficient system in one degree: a module over the
/// orbit category whose value at H is H^q(H, M).
pub struct CohomologyFunctor {
    pub q: usize,
    pub values: GammaModule,
}

/// Per-object cohomology workspaces plus the comparison maps for every
/// morphism of the category, reusable across all degrees up to the bound.
pub struct CohomologyWorkspace {
    pub cat: Arc<OrbitCategory>,
    pub rep: GGRep,
    pub max_degree: usize,
    pub per_object: Vec<SubgroupCohomology>,
    mor_maps: Vec<Vec<Matrix>>, // [morphism][degree]
}

impl CohomologyWorkspace {
    pub fn new(
        cat: &Arc<OrbitCategory>,
        rep: &GGRep,
        max_degree: usize,
        caps: ResolveCaps,
    ) -> Result<Self> {
        if rep.group != *cat.group() {
            return Err(Error::CategoryMismatch);
        }
        let per_object: Vec<SubgroupCohomology> = cat
            .objects()
            .iter()
            .map(|h| SubgroupCohomology::new(cat.group(), h, rep, max_degree, caps))
            .collect::<Result<_>>()?;
        let mut mor_maps = Vec::with_capacity(cat.morphism_count());
        for id in 0..cat.morphism_count() {
            let mo = cat.morphism(id);
            if cat.is_identity(id) {
                let mats = (0..=max_degree)
                    .map(|q| Matrix::identity(rep.field, per_object[mo.source].dims[q]))
                    .collect();
                mor_maps.push(mats);
                continue;
            }
            let mats = comparison_maps(
                cat.group(),
                rep,
                &per_object[mo.source],
                &per_object[mo.target],
                mo.rep,
            )?;
            mor_maps.push(mats);
        }
        Ok(CohomologyWorkspace {
            cat: cat.clone(),
            rep: rep.clone(),
            max_degree,
            per_object,
            mor_maps,
        })
    }

    pub fn value_dims(&self, q: usize) -> Vec<usize> {
        self.per_object.iter().map(|s| s.dims[q]).collect()
    }

    /// Assembles and verifies the degree-q coefficient system.
    pub fn functor(&self, q: usize) -> Result<CohomologyFunctor> {
        assert!(q <= self.max_degree, "degree beyond workspace bound");
        let dims = self.value_dims(q);
        let act: Vec<Matrix> = (0..self.cat.morphism_count())
            .map(|id| self.mor_maps[id][q].clone())
            .collect();
        let values = GammaModule::new(self.cat.clone(), self.rep.field, dims, act)?;
        Ok(CohomologyFunctor { q, values })
    }
}

/// One-shot construction of H^q(?, M) over a category.
pub fn cohomology_functor(
    cat: &Arc<OrbitCategory>,
    rep: &GGRep,
    q: usize,
    caps: ResolveCaps,
) -> Result<CohomologyFunctor> {
    CohomologyWorkspace::new(cat, rep, q, caps)?.functor(q)
}

/// Matrices H^n(G/H, M) → H^n(G, inf M) of the inflation along the
/// quotient map, for n = 0..=degree; H must be normal.
pub fn inflation_map(
    group: &FiniteGroup,
    normal: &Subgroup,
    rep_of_quotient: &GGRep,
    degree: usize,
    caps: ResolveCaps,
) -> Result<Vec<Matrix>> {
    let (quotient, proj) = quotient_group(group, normal)?;
    if rep_of_quotient.group != quotient {
        return Err(Error::CategoryMismatch);
    }
    let field = rep_of_quotient.field;
    let inflated = rep_of_quotient.inflate(group, &proj);
    let g_side = SubgroupCohomology::new(group, &Subgroup::full(group), &inflated, degree, caps)?;
    let q_side = SubgroupCohomology::new(
        &quotient,
        &Subgroup::full(&quotient),
        rep_of_quotient,
        degree,
        caps,
    )?;
    // the quotient resolution inflated to a complex over the group's
    // one-object category
    let wrap_module = |m: &GammaModule| -> Result<GammaModule> {
        let dims = vec![m.dim(0)];
        let act = (0..g_side.cat.morphism_count())
            .map(|id| {
                let local = g_side.cat.morphism(id).rep;
                m.act(q_side.element_morphism(proj[g_side.sub.emb[local]]))
                    .clone()
            })
            .collect();
        GammaModule::new(g_side.cat.clone(), field, dims, act)
    };
    let target = wrap_module(&q_side.res.target)?;
    let terms: Vec<GammaModule> = q_side
        .res
        .terms
        .iter()
        .map(|t| wrap_module(&t.module))
        .collect::<Result<_>>()?;
    let aug = GammaHom::from_components(
        terms[0].clone(),
        target.clone(),
        vec![q_side.res.aug.component(0).clone()],
    )?;
    let diffs: Vec<GammaHom> = (0..q_side.res.diffs.len())
        .map(|q| {
            GammaHom::from_components(
                terms[q + 1].clone(),
                terms[q].clone(),
                vec![q_side.res.diffs[q].component(0).clone()],
            )
        })
        .collect::<Result<_>>()?;
    let dst = AcyclicComplex {
        target: target.clone(),
        terms,
        diffs,
        aug,
    };
    let alpha = GammaHom::from_components(
        g_side.res.target.clone(),
        target,
        vec![Matrix::identity(field, 1)],
    )?;
    let lift = lift_against(&alpha, &g_side.res, &dst)?;
    let m = rep_of_quotient.dim;
    let mut cmaps = Vec::with_capacity(lift.maps.len());
    for q in 0..lift.maps.len() {
        let g_summands = g_side.res.terms[q].decl.summands.len();
        let q_summands = q_side.res.terms[q].decl.summands.len();
        let mut t = Matrix::zeros(field, g_summands * m, q_summands * m);
        for (i, y) in lift.generator_images(q).iter().enumerate() {
            for j in 0..q_summands {
                let mut block = Matrix::zeros(field, m, m);
                for w in 0..quotient.order() {
                    let c = y[q_side.res.terms[q].position(0, j, w)];
                    if c != 0 {
                        block = block.add(&rep_of_quotient.rho[w].scale(c));
                    }
                }
                for r in 0..m {
                    for cc in 0..m {
                        t.set(i * m + r, j * m + cc, block.get(r, cc));
                    }
                }
            }
        }
        cmaps.push(t);
    }
    for q in 0..cmaps.len().saturating_sub(1) {
        let lhs = cmaps[q + 1].mul(&q_side.complex.deltas[q]);
        let rhs = g_side.complex.deltas[q].mul(&cmaps[q]);
        if lhs != rhs {
            return Err(Error::LiftFailed {
                degree: q,
                object: 0,
            });
        }
    }
    Ok(induced_on_cohomology(&cmaps, &g_side.bases, &q_side.bases))
}

/// Truncated bar-resolution cohomology dimensions (degrees 0..=limit,
/// limit ≤ 3): an implementation-independent oracle for small inputs.
pub fn bar_cohomology_dims(group: &FiniteGroup, rep: &GGRep, limit: usize) -> Vec<usize> {
    assert!(limit <= 3, "bar oracle is truncated at degree 3");
    let n = group.order();
    let m = rep.dim;
    let field = rep.field;
    let cdim = |q: usize| m * n.pow(q as u32);
    // delta^q: C^q -> C^{q+1}; a cochain is a table of vectors indexed by
    // q-tuples (base-n encoding, most significant first)
    let delta = |q: usize| -> Matrix {
        let rows = cdim(q + 1);
        let cols = cdim(q);
        let mut d = Matrix::zeros(field, rows, cols);
        let tuples = n.pow((q + 1) as u32);
        for t in 0..tuples {
            let mut gs = vec![0usize; q + 1];
            let mut rest = t;
            for slot in (0..q + 1).rev() {
                gs[slot] = rest % n;
                rest /= n;
            }
            let row_base = t * m;
            let mut add_face = |tuple: &[usize], sign_neg: bool, action: Option<usize>| {
                let mut idx = 0usize;
                for &g in tuple {
                    idx = idx * n + g;
                }
                let col_base = idx * m;
                match action {
                    Some(g) => {
                        for r in 0..m {
                            for c in 0..m {
                                let v = rep.rho[g].get(r, c);
                                if v == 0 {
                                    continue;
                                }
                                let v = if sign_neg { field.neg(v) } else { v };
                                let old = d.get(row_base + r, col_base + c);
                                d.set(row_base + r, col_base + c, (old + v) % field.p());
                            }
                        }
                    }
                    None => {
                        let v = if sign_neg { field.neg(1) } else { 1 };
                        for r in 0..m {
                            let old = d.get(row_base + r, col_base + r);
                            d.set(row_base + r, col_base + r, (old + v) % field.p());
                        }
                    }
                }
            };
            // (δf)(g_0..g_q) = g_0·f(g_1..g_q) + Σ (-1)^i f(..g_{i-1}g_i..)
            //                  + (-1)^{q+1} f(g_0..g_{q-1})
            add_face(&gs[1..], false, Some(gs[0]));
            for i in 1..=q {
                let mut tuple = Vec::with_capacity(q);
                tuple.extend_from_slice(&gs[..i - 1]);
                tuple.push(group.mul(gs[i - 1], gs[i]));
                tuple.extend_from_slice(&gs[i + 1..]);
                add_face(&tuple, i % 2 == 1, None);
            }
            add_face(&gs[..q], q.is_multiple_of(2), None);
        }
        d
    };
    let mut dims = Vec::with_capacity(limit + 1);
    let mut prev_rank = 0;
    for q in 0..=limit {
        let d = delta(q);
        let ker = cdim(q) - d.rank();
        dims.push(ker - prev_rank);
        prev_rank = d.rank();
    }
    dims
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{all_subgroups, builtin_group, make_family};
    use crate::linalg::PrimeField;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn dims_for_klein4_and_lines() {
        let g = builtin_group("klein4").unwrap();
        let triv = GGRep::trivial(&g, gf(2));
        let caps = ResolveCaps::default();
        let subs = all_subgroups(&g);
        let c2 = group_cohomology_dims(&g, &subs[1], &triv, 5, caps).unwrap();
        assert_eq!(c2, vec![1; 6], "polynomial algebra on one generator");
        let whole = group_cohomology_dims(&g, &Subgroup::full(&g), &triv, 5, caps).unwrap();
        assert_eq!(
            whole,
            vec![1, 2, 3, 4, 5, 6],
            "polynomial algebra on two generators"
        );
        let trivial_sub = group_cohomology_dims(&g, &subs[0], &triv, 4, caps).unwrap();
        assert_eq!(trivial_sub, vec![1, 0, 0, 0, 0]);
        let reg = GGRep::regular(&g, gf(2));
        let free_coeff = group_cohomology_dims(&g, &Subgroup::full(&g), &reg, 4, caps).unwrap();
        assert_eq!(free_coeff, vec![1, 0, 0, 0, 0], "free modules are acyclic");
    }

    #[test]
    fn bar_oracle_agrees() {
        let caps = ResolveCaps::default();
        for (name, p) in [
            ("klein4", 2u64),
            ("cyclic:2", 2),
            ("symmetric:3", 2),
            ("symmetric:3", 3),
            ("cyclic:4", 2),
        ] {
            let g = builtin_group(name).unwrap();
            let triv = GGRep::trivial(&g, gf(p));
            let engine = group_cohomology_dims(&g, &Subgroup::full(&g), &triv, 3, caps).unwrap();
            let oracle = bar_cohomology_dims(&g, &triv, 3);
            assert_eq!(engine, oracle, "{name} at p={p}");
        }
        // non-trivial coefficients
        let g = builtin_group("klein4").unwrap();
        let reg = GGRep::regular(&g, gf(2));
        let engine = group_cohomology_dims(&g, &Subgroup::full(&g), &reg, 3, caps).unwrap();
        assert_eq!(engine, bar_cohomology_dims(&g, &reg, 3));
    }

    #[test]
    fn functor_dims_and_maps() {
        let g = builtin_group("klein4").unwrap();
        let fam = make_family(&g, "cyclic").unwrap();
        let cat = build_orbit_category(&g, &fam).unwrap();
        let triv = GGRep::trivial(&g, gf(2));
        let ws = CohomologyWorkspace::new(&cat, &triv, 3, ResolveCaps::default()).unwrap();
        // q = 0: the fixed-point module of the trivial rep, all ones
        let f0 = ws.functor(0).unwrap();
        assert_eq!(f0.values.dims(), &[1, 1, 1, 1]);
        // q = 1: H^1 vanishes at the trivial subgroup, is a line elsewhere
        let f1 = ws.functor(1).unwrap();
        assert_eq!(f1.values.dims(), &[0, 1, 1, 1]);
        for id in 0..cat.morphism_count() {
            if !cat.is_identity(id) {
                let mo = cat.morphism(id);
                if mo.source == 0 {
                    assert!(
                        f1.values.act(id).is_zero(),
                        "maps into degree-1 value at 1 vanish"
                    );
                }
            }
        }
        for q in 2..=3 {
            let fq = ws.functor(q).unwrap();
            assert_eq!(
                fq.values.dims(),
                &[0, 1, 1, 1],
                "top intervals in degree {q}"
            );
        }
    }

    #[test]
    fn degree_zero_matches_fixed_points() {
        let g = builtin_group("symmetric:3").unwrap();
        let fam = make_family(&g, "cyclic").unwrap();
        let cat = build_orbit_category(&g, &fam).unwrap();
        for p in [2u64, 3] {
            let reg = GGRep::regular(&g, gf(p));
            let ws = CohomologyWorkspace::new(&cat, &reg, 1, ResolveCaps::default()).unwrap();
            let f0 = ws.functor(0).unwrap();
            let fp = fixed_point_module(&cat, &reg).unwrap();
            assert_eq!(f0.values.dims(), fp.dims(), "p = {p}");
        }
    }

    #[test]
    fn hull_strategy_independence() {
        // group cohomology dimensions do not depend on the hull strategy
        use crate::homalg::{ext_dims, HullStrategy};
        use crate::module::constant_module;
        let g = builtin_group("klein4").unwrap();
        let triv = GGRep::trivial(&g, gf(2));
        let caps = ResolveCaps::default();
        let ws = SubgroupCohomology::new(&g, &Subgroup::full(&g), &triv, 3, caps).unwrap();
        let full = ext_dims(
            &constant_module(&ws.cat, gf(2)),
            &ws.coeff,
            3,
            HullStrategy::FullBasis,
            caps,
        )
        .unwrap();
        assert_eq!(ws.dims[..=3], full[..]);
    }

    #[test]
    fn inner_conjugation_acts_trivially() {
        // conjugation by an element of H itself induces the identity
        let g = builtin_group("quaternion8").unwrap();
        let triv = GGRep::trivial(&g, gf(2));
        let caps = ResolveCaps::default();
        let subs = all_subgroups(&g);
        let h = subs.iter().find(|s| s.len() == 4).unwrap();
        let ws = SubgroupCohomology::new(&g, h, &triv, 3, caps).unwrap();
        for &x in h.elements() {
            let mats = comparison_maps(&g, &triv, &ws, &ws, x).unwrap();
            for (q, m) in mats.iter().enumerate() {
                assert_eq!(
                    m,
                    &Matrix::identity(gf(2), ws.dims[q]),
                    "degree {q}, element {x}"
                );
            }
        }
    }

    #[test]
    fn restriction_klein4_to_line() {
        let g = builtin_group("klein4").unwrap();
        let triv = GGRep::trivial(&g, gf(2));
        let caps = ResolveCaps::default();
        let subs = all_subgroups(&g);
        let whole = SubgroupCohomology::new(&g, &Subgroup::full(&g), &triv, 4, caps).unwrap();
        let line = SubgroupCohomology::new(&g, &subs[1], &triv, 4, caps).unwrap();
        let mats = comparison_maps(&g, &triv, &line, &whole, 0).unwrap();
        // restriction H^1(G) → H^1(C2) is onto (x ↦ t or 0)
        assert_eq!(mats[1].rows(), 1);
        assert_eq!(mats[1].cols(), 2);
        assert_eq!(mats[1].rank(), 1);
    }

    #[test]
    fn inflation_examples() {
        let g = builtin_group("klein4").unwrap();
        let caps = ResolveCaps::default();
        // H = G: inflation from the trivial group
        let full = Subgroup::full(&g);
        let (q, _) = quotient_group(&g, &full).unwrap();
        let triv_q = GGRep::trivial(&q, gf(2));
        let mats = inflation_map(&g, &full, &triv_q, 3, caps).unwrap();
        assert_eq!(mats[0].rank(), 1);
        for m in &mats[1..] {
            assert_eq!(
                m.rank(),
                0,
                "inflation from the trivial group vanishes above 0"
            );
        }
        // H = H_1: the inflated degree-one class survives
        let subs = all_subgroups(&g);
        let (q, _) = quotient_group(&g, &subs[1]).unwrap();
        let triv_q = GGRep::trivial(&q, gf(2));
        let mats = inflation_map(&g, &subs[1], &triv_q, 4, caps).unwrap();
        for (n, m) in mats.iter().enumerate() {
            assert_eq!(m.rank(), 1, "inf of t^{n} is a nonzero power of x");
        }
    }
}
