//! Modules over an orbit category: contravariant functors to
//! finite-dimensional GF(p)-spaces, their homomorphisms, and the standard
//! constructors (free modules, interval modules, fixed-point modules,
//! tensor products, restriction and two-family limits, permutation
//! representations).
//!
//! A module stores one matrix per morphism. For f: G/A → G/B the matrix
//! act[f] has shape dim(A) × dim(B) and carries the value at the target to
//! the value at the source (contravariance). Functoriality is verified
//! exhaustively on construction; categories here are small.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, SubgroupGroup};
use crate::linalg::{Matrix, PrimeField};
use crate::orbit::OrbitCategory;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Debug)]
struct ModuleData {
    dims: Vec<usize>,
    act: Vec<Matrix>,
}

/// A finitely generated module over the category algebra of an orbit
/// category (a coefficient system). Cheap to clone.
#[derive(Debug, Clone)]
pub struct GammaModule {
    cat: Arc<OrbitCategory>,
    field: PrimeField,
    data: Arc<ModuleData>,
}

impl GammaModule {
    /// Wraps per-object dimensions and per-morphism matrices, verifying
    /// shapes, identities, and functoriality.
    pub fn new(
        cat: Arc<OrbitCategory>,
        field: PrimeField,
        dims: Vec<usize>,
        act: Vec<Matrix>,
    ) -> Result<Self> {
        let m = GammaModule {
            cat,
            field,
            data: Arc::new(ModuleData { dims, act }),
        };
        m.verify()?;
        Ok(m)
    }

    /// For composites whose functoriality is forced by the construction
    /// (block sums of functors, kernels along natural maps). Fully
    /// verified in debug builds.
    pub(crate) fn new_functorial(
        cat: Arc<OrbitCategory>,
        field: PrimeField,
        dims: Vec<usize>,
        act: Vec<Matrix>,
    ) -> Self {
        let m = GammaModule {
            cat,
            field,
            data: Arc::new(ModuleData { dims, act }),
        };
        debug_assert!(m.verify().is_ok());
        m
    }

    pub fn verify(&self) -> Result<()> {
        let cat = &self.cat;
        if self.data.dims.len() != cat.object_count() || self.data.act.len() != cat.morphism_count()
        {
            return Err(Error::NotFunctorial {
                context: "wrong table sizes".into(),
            });
        }
        for id in 0..cat.morphism_count() {
            let m = cat.morphism(id);
            let a = &self.data.act[id];
            if a.rows() != self.data.dims[m.source] || a.cols() != self.data.dims[m.target] {
                return Err(Error::NotFunctorial {
                    context: format!("matrix shape at morphism {id}"),
                });
            }
        }
        for obj in 0..cat.object_count() {
            let id = cat.identity_morphism(obj);
            if self.data.act[id] != Matrix::identity(self.field, self.data.dims[obj]) {
                return Err(Error::NotFunctorial {
                    context: format!("identity morphism at object {obj} not the identity"),
                });
            }
        }
        for f in 0..cat.morphism_count() {
            let mf = cat.morphism(f);
            for g in 0..cat.morphism_count() {
                let mg = cat.morphism(g);
                if mf.target != mg.source {
                    continue;
                }
                let fg = cat.compose(f, g);
                let lhs = &self.data.act[fg];
                let rhs = self.data.act[f].mul(&self.data.act[g]);
                if *lhs != rhs {
                    return Err(Error::NotFunctorial {
                        context: format!("act[{f}]·act[{g}] != act[compose]"),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn cat(&self) -> &Arc<OrbitCategory> {
        &self.cat
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self, obj: usize) -> usize {
        self.data.dims[obj]
    }

    pub fn dims(&self) -> &[usize] {
        &self.data.dims
    }

    pub fn total_dim(&self) -> usize {
        self.data.dims.iter().sum()
    }

    pub fn act(&self, morphism: usize) -> &Matrix {
        &self.data.act[morphism]
    }

    pub fn is_zero(&self) -> bool {
        self.data.dims.iter().all(|&d| d == 0)
    }

    pub fn same_category(&self, other: &GammaModule) -> bool {
        Arc::ptr_eq(&self.cat, &other.cat)
    }
}

/// Zero module.
pub fn zero_module(cat: &Arc<OrbitCategory>, field: PrimeField) -> GammaModule {
    let dims = vec![0; cat.object_count()];
    let act = (0..cat.morphism_count())
        .map(|_| Matrix::zeros(field, 0, 0))
        .collect();
    GammaModule::new(cat.clone(), field, dims, act).unwrap()
}

/// The free (representable) module P_K: value at H is the linearized
/// morphism set Mor(G/H, G/K), structure maps are precomposition.
pub fn free_module(cat: &Arc<OrbitCategory>, field: PrimeField, k: usize) -> GammaModule {
    let dims: Vec<usize> = (0..cat.object_count())
        .map(|h| cat.mor(h, k).len())
        .collect();
    let mut act = Vec::with_capacity(cat.morphism_count());
    for id in 0..cat.morphism_count() {
        let f = cat.morphism(id);
        let mut a = Matrix::zeros(field, dims[f.source], dims[f.target]);
        for (col, &m) in cat.mor(f.target, k).iter().enumerate() {
            let composite = cat.compose(id, m);
            let row = cat
                .mor(f.source, k)
                .iter()
                .position(|&x| x == composite)
                .unwrap();
            a.set(row, col, 1);
        }
        act.push(a);
    }
    GammaModule::new(cat.clone(), field, dims, act).expect("free modules are functorial")
}

/// Interval module: value R on a downward- and conjugation-closed support,
/// zero elsewhere; identity structure maps inside the support.
pub fn interval_module(
    cat: &Arc<OrbitCategory>,
    field: PrimeField,
    support: &[usize],
) -> Result<GammaModule> {
    let mut in_s = vec![false; cat.object_count()];
    for &o in support {
        in_s[o] = true;
    }
    // functoriality needs: anything mapping into the support lies in it
    for id in 0..cat.morphism_count() {
        let m = cat.morphism(id);
        if in_s[m.target] && !in_s[m.source] {
            return Err(Error::NotDownwardClosed { member: m.target });
        }
    }
    let dims: Vec<usize> = in_s.iter().map(|&b| usize::from(b)).collect();
    let act = (0..cat.morphism_count())
        .map(|id| {
            let m = cat.morphism(id);
            if in_s[m.source] && in_s[m.target] {
                Matrix::identity(field, 1)
            } else {
                Matrix::zeros(field, dims[m.source], dims[m.target])
            }
        })
        .collect();
    GammaModule::new(cat.clone(), field, dims, act)
}

/// The constant module: value R everywhere, identity maps.
pub fn constant_module(cat: &Arc<OrbitCategory>, field: PrimeField) -> GammaModule {
    let all: Vec<usize> = (0..cat.object_count()).collect();
    interval_module(cat, field, &all).expect("full support is closed")
}

/// A finite-dimensional representation of a finite group over GF(p).
#[derive(Debug, Clone)]
pub struct GGRep {
    pub group: FiniteGroup,
    pub field: PrimeField,
    pub dim: usize,
    pub rho: Vec<Matrix>,
}

impl GGRep {
    pub fn verify(&self) -> Result<()> {
        let n = self.group.order();
        if self.rho.len() != n {
            return Err(Error::DimensionMismatch {
                context: "rho table size".into(),
            });
        }
        if self.rho[0] != Matrix::identity(self.field, self.dim) {
            return Err(Error::NotEquivariant { element: 0 });
        }
        for g in 0..n {
            if self.rho[g].rows() != self.dim || self.rho[g].cols() != self.dim {
                return Err(Error::DimensionMismatch {
                    context: format!("rho[{g}] shape"),
                });
            }
            for h in 0..n {
                if self.rho[g].mul(&self.rho[h]) != self.rho[self.group.mul(g, h)] {
                    return Err(Error::NotEquivariant { element: g });
                }
            }
        }
        Ok(())
    }

    pub fn trivial(group: &FiniteGroup, field: PrimeField) -> GGRep {
        GGRep {
            group: group.clone(),
            field,
            dim: 1,
            rho: (0..group.order())
                .map(|_| Matrix::identity(field, 1))
                .collect(),
        }
    }

    pub fn regular(group: &FiniteGroup, field: PrimeField) -> GGRep {
        perm_rep(group, field, &Subgroup::trivial())
    }

    pub fn direct_sum(parts: &[&GGRep]) -> GGRep {
        let first = parts[0];
        let rho = (0..first.group.order())
            .map(|g| {
                let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.rho[g]).collect();
                Matrix::block_diag(first.field, &blocks)
            })
            .collect();
        GGRep {
            group: first.group.clone(),
            field: first.field,
            dim: parts.iter().map(|p| p.dim).sum(),
            rho,
        }
    }

    /// Restriction along a subgroup embedding.
    pub fn restrict(&self, sub: &SubgroupGroup) -> GGRep {
        GGRep {
            group: sub.group.clone(),
            field: self.field,
            dim: self.dim,
            rho: sub.emb.iter().map(|&g| self.rho[g].clone()).collect(),
        }
    }

    /// Inflation along a quotient projection table.
    pub fn inflate(&self, group: &FiniteGroup, proj: &[usize]) -> GGRep {
        GGRep {
            group: group.clone(),
            field: self.field,
            dim: self.dim,
            rho: (0..group.order())
                .map(|g| self.rho[proj[g]].clone())
                .collect(),
        }
    }

    /// Completes generator images to the full table by word enumeration.
    pub fn from_generator_images(
        group: &FiniteGroup,
        field: PrimeField,
        dim: usize,
        images: &[(usize, Matrix)],
    ) -> Result<GGRep> {
        let n = group.order();
        let mut rho: Vec<Option<Matrix>> = vec![None; n];
        rho[0] = Some(Matrix::identity(field, dim));
        let mut frontier = vec![0usize];
        while let Some(g) = frontier.pop() {
            for (gen, img) in images {
                let h = group.mul(g, *gen);
                if rho[h].is_none() {
                    rho[h] = Some(rho[g].as_ref().unwrap().mul(img));
                    frontier.push(h);
                }
            }
        }
        if rho.iter().any(|r| r.is_none()) {
            return Err(Error::BadSpec {
                reason: "images do not generate the group".into(),
            });
        }
        let rep = GGRep {
            group: group.clone(),
            field,
            dim,
            rho: rho.into_iter().map(Option::unwrap).collect(),
        };
        rep.verify()?;
        Ok(rep)
    }
}

/// Permutation representation of G on the cosets G/K.
pub fn perm_rep(group: &FiniteGroup, field: PrimeField, k: &Subgroup) -> GGRep {
    let mut coset_of = vec![usize::MAX; group.order()];
    let mut reps = Vec::new();
    for g in 0..group.order() {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(g);
        for &x in k.elements() {
            coset_of[group.mul(g, x)] = idx;
        }
    }
    let m = reps.len();
    let rho = (0..group.order())
        .map(|g| {
            let mut mat = Matrix::zeros(field, m, m);
            for (c, &r) in reps.iter().enumerate() {
                mat.set(coset_of[group.mul(g, r)], c, 1);
            }
            mat
        })
        .collect();
    GGRep {
        group: group.clone(),
        field,
        dim: m,
        rho,
    }
}

/// Permutation representation of a disjoint union of orbits G/K_i.
pub fn perm_rep_gset(group: &FiniteGroup, field: PrimeField, parts: &[Subgroup]) -> GGRep {
    let reps: Vec<GGRep> = parts.iter().map(|k| perm_rep(group, field, k)).collect();
    let refs: Vec<&GGRep> = reps.iter().collect();
    GGRep::direct_sum(&refs)
}

/// The fixed-point module M^?: value at H is the H-fixed subspace of M in
/// a deterministic basis (kernel pivot basis); the map for a morphism with
/// coset representative g is m ↦ g·m expressed in the chosen bases.
pub fn fixed_point_module(cat: &Arc<OrbitCategory>, rep: &GGRep) -> Result<GammaModule> {
    if rep.group != *cat.group() {
        return Err(Error::CategoryMismatch);
    }
    let field = rep.field;
    let mut bases = Vec::with_capacity(cat.object_count());
    for h in cat.objects() {
        let rows: Vec<Matrix> = h
            .elements()
            .iter()
            .filter(|&&x| x != 0)
            .map(|&x| rep.rho[x].sub(&Matrix::identity(field, rep.dim)))
            .collect();
        let basis = if rows.is_empty() {
            Matrix::identity(field, rep.dim)
        } else {
            let parts: Vec<&Matrix> = rows.iter().collect();
            Matrix::vstack_all(field, rep.dim, &parts).kernel_basis()
        };
        bases.push(basis);
    }
    let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
    let mut act = Vec::with_capacity(cat.morphism_count());
    for id in 0..cat.morphism_count() {
        let m = cat.morphism(id);
        let translated = rep.rho[m.rep].mul(&bases[m.target]);
        let mat = bases[m.source]
            .solve(&translated)
            .ok_or(Error::InducedMapFailure { object: m.source })?;
        act.push(mat);
    }
    GammaModule::new(cat.clone(), field, dims, act)
}

/// A homomorphism of modules: one matrix per object, natural with respect
/// to every structure map.
#[derive(Debug, Clone)]
pub struct GammaHom {
    src: GammaModule,
    tgt: GammaModule,
    comp: Arc<Vec<Matrix>>,
}

impl GammaHom {
    pub fn from_components(src: GammaModule, tgt: GammaModule, comp: Vec<Matrix>) -> Result<Self> {
        let h = GammaHom {
            src,
            tgt,
            comp: Arc::new(comp),
        };
        h.verify()?;
        Ok(h)
    }

    pub fn verify(&self) -> Result<()> {
        let cat = self.src.cat();
        if !self.src.same_category(&self.tgt) {
            return Err(Error::CategoryMismatch);
        }
        for obj in 0..cat.object_count() {
            let c = &self.comp[obj];
            if c.rows() != self.tgt.dim(obj) || c.cols() != self.src.dim(obj) {
                return Err(Error::DimensionMismatch {
                    context: format!("hom component at object {obj}"),
                });
            }
        }
        for id in 0..cat.morphism_count() {
            let m = cat.morphism(id);
            let lhs = self.comp[m.source].mul(self.src.act(id));
            let rhs = self.tgt.act(id).mul(&self.comp[m.target]);
            if lhs != rhs {
                return Err(Error::NotFunctorial {
                    context: format!("naturality fails at morphism {id}"),
                });
            }
        }
        Ok(())
    }

    pub fn zero(src: GammaModule, tgt: GammaModule) -> Self {
        let field = src.field();
        let comp = (0..src.cat().object_count())
            .map(|o| Matrix::zeros(field, tgt.dim(o), src.dim(o)))
            .collect();
        GammaHom {
            src,
            tgt,
            comp: Arc::new(comp),
        }
    }

    pub fn identity(m: &GammaModule) -> Self {
        let comp = (0..m.cat().object_count())
            .map(|o| Matrix::identity(m.field(), m.dim(o)))
            .collect();
        GammaHom {
            src: m.clone(),
            tgt: m.clone(),
            comp: Arc::new(comp),
        }
    }

    pub fn source(&self) -> &GammaModule {
        &self.src
    }

    pub fn target(&self) -> &GammaModule {
        &self.tgt
    }

    pub fn component(&self, obj: usize) -> &Matrix {
        &self.comp[obj]
    }

    /// self: X → Y, then: Y → Z, result X → Z.
    pub fn then(&self, then: &GammaHom) -> GammaHom {
        let comp = (0..self.src.cat().object_count())
            .map(|o| then.comp[o].mul(&self.comp[o]))
            .collect();
        GammaHom {
            src: self.src.clone(),
            tgt: then.tgt.clone(),
            comp: Arc::new(comp),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().all(|m| m.is_zero())
    }
}

/// Direct sum with block-diagonal structure maps.
pub fn direct_sum(parts: &[&GammaModule]) -> Result<GammaModule> {
    let first = parts[0];
    for p in parts {
        if !p.same_category(first) {
            return Err(Error::CategoryMismatch);
        }
    }
    let cat = first.cat().clone();
    let dims: Vec<usize> = (0..cat.object_count())
        .map(|o| parts.iter().map(|p| p.dim(o)).sum())
        .collect();
    let act = (0..cat.morphism_count())
        .map(|id| {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| p.act(id)).collect();
            Matrix::block_diag(first.field(), &blocks)
        })
        .collect();
    Ok(GammaModule::new_functorial(cat, first.field(), dims, act))
}

/// Objectwise tensor product (Kronecker on values and structure maps).
pub fn tensor_module(m: &GammaModule, n: &GammaModule) -> Result<GammaModule> {
    if !m.same_category(n) {
        return Err(Error::CategoryMismatch);
    }
    let cat = m.cat().clone();
    let dims: Vec<usize> = (0..cat.object_count())
        .map(|o| m.dim(o) * n.dim(o))
        .collect();
    let act = (0..cat.morphism_count())
        .map(|id| m.act(id).kronecker(n.act(id)))
        .collect();
    GammaModule::new(cat, m.field(), dims, act)
}

/// Objectwise kernel of a hom, with the induced structure maps and the
/// inclusion into the source.
pub fn kernel_module(h: &GammaHom) -> Result<(GammaModule, GammaHom)> {
    let cat = h.source().cat().clone();
    let field = h.source().field();
    let bases: Vec<Matrix> = (0..cat.object_count())
        .map(|o| h.component(o).kernel_basis())
        .collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
    let mut act = Vec::with_capacity(cat.morphism_count());
    for id in 0..cat.morphism_count() {
        let m = cat.morphism(id);
        let mapped = h.source().act(id).mul(&bases[m.target]);
        let mat = bases[m.source]
            .solve(&mapped)
            .ok_or(Error::InducedMapFailure { object: m.source })?;
        act.push(mat);
    }
    // the induced maps inherit functoriality: the inclusions are injective
    // and intertwine them with the source's structure maps
    let module = GammaModule::new_functorial(cat, field, dims, act);
    let incl = GammaHom::from_components(module.clone(), h.source().clone(), bases)?;
    Ok((module, incl))
}

/// Basis of the space of homomorphisms M → N, by solving the naturality
/// system over all non-identity morphisms.
pub fn hom_space(m: &GammaModule, n: &GammaModule) -> Result<Vec<GammaHom>> {
    if !m.same_category(n) {
        return Err(Error::CategoryMismatch);
    }
    let cat = m.cat().clone();
    let field = m.field();
    let nobj = cat.object_count();
    let mut offset = vec![0usize; nobj + 1];
    for o in 0..nobj {
        offset[o + 1] = offset[o] + n.dim(o) * m.dim(o);
    }
    let unknowns = offset[nobj];
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for id in 0..cat.morphism_count() {
        if cat.is_identity(id) {
            continue;
        }
        let mo = cat.morphism(id);
        let (a, b) = (mo.source, mo.target);
        let ma = m.act(id);
        let na = n.act(id);
        // comp[A]·M(f) = N(f)·comp[B], one equation per (r, c)
        for r in 0..n.dim(a) {
            for c in 0..m.dim(b) {
                let mut row = vec![0u64; unknowns];
                for k in 0..m.dim(a) {
                    let v = ma.get(k, c);
                    if v != 0 {
                        row[offset[a] + r * m.dim(a) + k] =
                            (row[offset[a] + r * m.dim(a) + k] + v) % field.p();
                    }
                }
                for k in 0..n.dim(b) {
                    let v = na.get(r, k);
                    if v != 0 {
                        let idx = offset[b] + k * m.dim(b) + c;
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
    let mut basis = Vec::with_capacity(kernel.cols());
    for j in 0..kernel.cols() {
        let comp: Vec<Matrix> = (0..nobj)
            .map(|o| {
                let mut mat = Matrix::zeros(field, n.dim(o), m.dim(o));
                for r in 0..n.dim(o) {
                    for c in 0..m.dim(o) {
                        mat.set(r, c, kernel.get(offset[o] + r * m.dim(o) + c, j));
                    }
                }
                mat
            })
            .collect();
        basis.push(GammaHom {
            src: m.clone(),
            tgt: n.clone(),
            comp: Arc::new(comp),
        });
    }
    Ok(basis)
}

/// Restriction of a module to a category over a subfamily (same group).
pub fn restrict_to_category(m: &GammaModule, sub: &Arc<OrbitCategory>) -> Result<GammaModule> {
    let src_cat = m.cat();
    let mut obj_map = Vec::with_capacity(sub.object_count());
    for (o, s) in sub.objects().iter().enumerate() {
        let idx = src_cat
            .object_index(s)
            .ok_or(Error::NotSubfamily { object: o })?;
        obj_map.push(idx);
    }
    let dims: Vec<usize> = obj_map.iter().map(|&i| m.dim(i)).collect();
    let mut act = Vec::with_capacity(sub.morphism_count());
    for id in 0..sub.morphism_count() {
        let mo = sub.morphism(id);
        let big = src_cat
            .morphism_with_rep(obj_map[mo.source], obj_map[mo.target], mo.rep)
            .ok_or(Error::NotSubfamily { object: mo.source })?;
        act.push(m.act(big).clone());
    }
    GammaModule::new(sub.clone(), m.field(), dims, act)
}

struct TupleSpace {
    below: Vec<usize>,   // source-category object indices K ≤ H
    offsets: Vec<usize>, // block offsets, len = below.len() + 1
    basis: Matrix,       // columns span the compatible-tuple subspace
}

fn compatible_tuple_space(m: &GammaModule, host: &Subgroup, restrict_to_host: bool) -> TupleSpace {
    let cat = m.cat();
    let group = cat.group();
    let field = m.field();
    let below: Vec<usize> = (0..cat.object_count())
        .filter(|&k| !restrict_to_host || cat.objects()[k].is_subset_of(host))
        .collect();
    let mut offsets = vec![0usize];
    for &k in &below {
        offsets.push(offsets.last().unwrap() + m.dim(k));
    }
    let total = *offsets.last().unwrap();
    let block_of = |obj: usize| below.iter().position(|&k| k == obj);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for id in 0..cat.morphism_count() {
        if cat.is_identity(id) {
            continue;
        }
        let mo = cat.morphism(id);
        let (Some(lb), Some(kb)) = (block_of(mo.source), block_of(mo.target)) else {
            continue;
        };
        if restrict_to_host {
            // the defining coset must meet the host subgroup
            let target = &cat.objects()[mo.target];
            let meets = target
                .elements()
                .iter()
                .any(|&x| host.contains(group.mul(mo.rep, x)));
            if !meets {
                continue;
            }
        }
        // M(φ)·m_K − m_L = 0
        let a = m.act(id);
        for r in 0..m.dim(mo.source) {
            let mut row = vec![0u64; total];
            for c in 0..m.dim(mo.target) {
                row[offsets[kb] + c] = a.get(r, c);
            }
            row[offsets[lb] + r] = (row[offsets[lb] + r] + field.neg(1)) % field.p();
            rows.push(row);
        }
    }
    let system = if rows.is_empty() {
        Matrix::zeros(field, 0, total)
    } else {
        Matrix::from_rows(field, rows.len(), total, &rows)
    };
    TupleSpace {
        below,
        offsets,
        basis: system.kernel_basis(),
    }
}

/// The two-family limit: for each object H of the larger category, the
/// space of compatible tuples (m_K) over the members K ≤ H of the smaller
/// family, with tuple restriction/translation as structure maps.
pub fn two_family_limit(m: &GammaModule, sup: &Arc<OrbitCategory>) -> Result<GammaModule> {
    let cat = m.cat();
    let group = cat.group();
    let field = m.field();
    for (o, s) in cat.objects().iter().enumerate() {
        if sup.object_index(s).is_none() {
            return Err(Error::NotSuperfamily { object: o });
        }
    }
    let spaces: Vec<TupleSpace> = sup
        .objects()
        .iter()
        .map(|h| compatible_tuple_space(m, h, true))
        .collect();
    let dims: Vec<usize> = spaces.iter().map(|s| s.basis.cols()).collect();
    let mut act = Vec::with_capacity(sup.morphism_count());
    for id in 0..sup.morphism_count() {
        let psi = sup.morphism(id);
        let g = psi.rep;
        let src_space = &spaces[psi.source];
        let tgt_space = &spaces[psi.target];
        // raw tuple map: entry at L pulls the entry at L^g through the
        // morphism L → L^g with coset g·(L^g)
        let mut t = Matrix::zeros(
            field,
            *src_space.offsets.last().unwrap(),
            *tgt_space.offsets.last().unwrap(),
        );
        for (lpos, &l) in src_space.below.iter().enumerate() {
            let lg = cat.objects()[l].conj_right(group, g);
            let lg_idx = cat
                .object_index(&lg)
                .expect("family closed under conjugation");
            let kpos = tgt_space
                .below
                .iter()
                .position(|&k| k == lg_idx)
                .expect("conjugate stays below the target");
            let phi = cat
                .morphism_with_rep(l, lg_idx, g)
                .expect("conjugation morphism exists");
            let a = m.act(phi);
            for r in 0..a.rows() {
                for c in 0..a.cols() {
                    t.set(
                        src_space.offsets[lpos] + r,
                        tgt_space.offsets[kpos] + c,
                        a.get(r, c),
                    );
                }
            }
        }
        let mapped = t.mul(&tgt_space.basis);
        let mat = src_space
            .basis
            .solve(&mapped)
            .ok_or(Error::InducedMapFailure { object: psi.source })?;
        act.push(mat);
    }
    GammaModule::new(sup.clone(), field, dims, act)
}

/// Dimension of the inverse limit over the whole family; cross-checked
/// against dim Hom(constant, M).
pub fn limit(m: &GammaModule) -> usize {
    let dim = limit_basis(m).1.cols();
    let via_hom = hom_space(&constant_module(m.cat(), m.field()), m)
        .expect("same category")
        .len();
    assert_eq!(dim, via_hom, "limit must agree with Hom(constant, -)");
    dim
}

/// Basis of the compatible-tuple space over the whole family, inside the
/// direct sum of all values (block offsets in object order).
pub fn limit_basis(m: &GammaModule) -> (Vec<usize>, Matrix) {
    let space = compatible_tuple_space(m, &Subgroup::full(m.cat().group()), false);
    (space.offsets, space.basis)
}

/// Serialization form for module files: dims per object, one matrix per
/// morphism index.
#[derive(Serialize, Deserialize)]
pub struct ModuleFile {
    pub schema: u32,
    pub p: u64,
    pub dims: Vec<usize>,
    pub act: Vec<Matrix>,
}

pub fn module_from_json(cat: &Arc<OrbitCategory>, text: &str) -> Result<GammaModule> {
    let file: ModuleFile =
        serde_json::from_str(text).map_err(|e| Error::Io(format!("module file: {e}")))?;
    let field = PrimeField::new(file.p)?;
    GammaModule::new(cat.clone(), field, file.dims, file.act)
}

pub fn module_to_json(m: &GammaModule) -> String {
    let file = ModuleFile {
        schema: 1,
        p: m.field().p(),
        dims: m.dims().to_vec(),
        act: (0..m.cat().morphism_count())
            .map(|i| m.act(i).clone())
            .collect(),
    };
    serde_json::to_string_pretty(&file).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin_group, make_family};
    use crate::orbit::build_orbit_category;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn klein_cyclic() -> Arc<OrbitCategory> {
        let g = builtin_group("klein4").unwrap();
        let f = make_family(&g, "cyclic").unwrap();
        build_orbit_category(&g, &f).unwrap()
    }

    #[test]
    fn free_module_dims() {
        let cat = klein_cyclic();
        let p1 = free_module(&cat, gf(2), 1);
        assert_eq!(p1.dims(), &[2, 2, 0, 0]);
        let p0 = free_module(&cat, gf(2), 0);
        assert_eq!(p0.dims(), &[4, 0, 0, 0]);
        // structure maps are permutation matrices
        for id in 0..cat.morphism_count() {
            let a = p0.act(id);
            for r in 0..a.rows() {
                let ones = (0..a.cols()).filter(|&c| a.get(r, c) == 1).count();
                assert!(ones <= 1);
            }
        }
    }

    #[test]
    fn interval_modules() {
        let cat = klein_cyclic();
        let rbar = constant_module(&cat, gf(2));
        assert_eq!(rbar.dims(), &[1, 1, 1, 1]);
        let r0 = interval_module(&cat, gf(2), &[0]).unwrap();
        assert_eq!(r0.dims(), &[1, 0, 0, 0]);
        let rh1 = interval_module(&cat, gf(2), &[0, 1]).unwrap();
        assert_eq!(rh1.dims(), &[1, 1, 0, 0]);
        // the structure map from the top of the interval down is identity
        let down = cat.mor(0, 1)[0];
        assert_eq!(rh1.act(down), &Matrix::identity(gf(2), 1));
        // support missing the trivial subgroup is not downward closed
        assert!(matches!(
            interval_module(&cat, gf(2), &[1]),
            Err(Error::NotDownwardClosed { .. })
        ));
    }

    #[test]
    fn fixed_points() {
        let cat = klein_cyclic();
        let g = cat.group().clone();
        let triv = GGRep::trivial(&g, gf(2));
        let m = fixed_point_module(&cat, &triv).unwrap();
        let rbar = constant_module(&cat, gf(2));
        assert_eq!(m.dims(), rbar.dims());
        for id in 0..cat.morphism_count() {
            assert_eq!(m.act(id), rbar.act(id));
        }
        let reg = GGRep::regular(&g, gf(2));
        reg.verify().unwrap();
        let m = fixed_point_module(&cat, &reg).unwrap();
        assert_eq!(m.dims(), &[4, 2, 2, 2]);
        assert_eq!(
            limit(&m),
            1,
            "fixed vectors of the regular rep of a 2-group"
        );
    }

    #[test]
    fn hom_spaces() {
        let cat = klein_cyclic();
        let f = gf(2);
        let rbar = constant_module(&cat, f);
        let p1 = free_module(&cat, f, 1);
        assert_eq!(hom_space(&p1, &rbar).unwrap().len(), 1, "Yoneda: R̄(H_1)");
        let r0 = interval_module(&cat, f, &[0]).unwrap();
        assert_eq!(hom_space(&r0, &rbar).unwrap().len(), 1);
        assert_eq!(hom_space(&rbar, &r0).unwrap().len(), 0);
        // Yoneda against the fixed-point module of the regular rep
        let m = fixed_point_module(&cat, &GGRep::regular(cat.group(), f)).unwrap();
        for k in 0..cat.object_count() {
            let pk = free_module(&cat, f, k);
            assert_eq!(hom_space(&pk, &m).unwrap().len(), m.dim(k));
        }
    }

    #[test]
    fn kernels() {
        let cat = klein_cyclic();
        let f = gf(2);
        let rbar = constant_module(&cat, f);
        let (z, _) = kernel_module(&GammaHom::identity(&rbar)).unwrap();
        assert!(z.is_zero());
        let m = fixed_point_module(&cat, &GGRep::regular(cat.group(), f)).unwrap();
        let (k, incl) = kernel_module(&GammaHom::zero(m.clone(), rbar)).unwrap();
        assert_eq!(k.dims(), m.dims());
        for o in 0..cat.object_count() {
            assert_eq!(incl.component(o), &Matrix::identity(f, m.dim(o)));
        }
    }

    #[test]
    fn tensor_products() {
        let cat = klein_cyclic();
        let f = gf(2);
        let rbar = constant_module(&cat, f);
        let m = fixed_point_module(&cat, &GGRep::regular(cat.group(), f)).unwrap();
        let t = tensor_module(&rbar, &m).unwrap();
        assert_eq!(t.dims(), m.dims());
        for id in 0..cat.morphism_count() {
            assert_eq!(
                t.act(id),
                m.act(id),
                "tensoring with the constant module is the identity"
            );
        }
        let p1 = free_module(&cat, f, 1);
        let tt = tensor_module(&p1, &p1).unwrap();
        assert_eq!(tt.dims(), &[4, 4, 0, 0]);
        let z = zero_module(&cat, f);
        assert!(tensor_module(&p1, &z).unwrap().is_zero());
    }

    #[test]
    fn restriction_and_limits() {
        let g = builtin_group("klein4").unwrap();
        let f2 = gf(2);
        let all = make_family(&g, "all").unwrap();
        let cyc = make_family(&g, "cyclic").unwrap();
        let cat_all = build_orbit_category(&g, &all).unwrap();
        let cat_cyc = build_orbit_category(&g, &cyc).unwrap();

        let rbar_all = constant_module(&cat_all, f2);
        let restricted = restrict_to_category(&rbar_all, &cat_cyc).unwrap();
        assert_eq!(restricted.dims(), constant_module(&cat_cyc, f2).dims());

        // limit of the constant module over the big family, valued at G
        let rbar_cyc = constant_module(&cat_cyc, f2);
        let lim_mod = two_family_limit(&rbar_cyc, &cat_all).unwrap();
        let g_obj = cat_all
            .object_index(&crate::group::Subgroup::full(&g))
            .unwrap();
        assert_eq!(lim_mod.dim(g_obj), 1);

        assert_eq!(limit(&rbar_cyc), 1);
        let r0 = interval_module(&cat_cyc, f2, &[0]).unwrap();
        assert_eq!(limit(&r0), 0);
    }

    #[test]
    fn one_object_limit_is_fixed_points() {
        let g = builtin_group("klein4").unwrap();
        let f2 = gf(2);
        let trivial_fam = make_family(&g, "list:S0").unwrap();
        let one = build_orbit_category(&g, &trivial_fam).unwrap();
        let cyc = make_family(&g, "cyclic").unwrap();
        let cat = build_orbit_category(&g, &cyc).unwrap();
        let reg = GGRep::regular(&g, f2);
        let as_module = fixed_point_module(&one, &reg).unwrap();
        let lifted = two_family_limit(&as_module, &cat).unwrap();
        let direct = fixed_point_module(&cat, &reg).unwrap();
        assert_eq!(lifted.dims(), direct.dims());
    }

    #[test]
    fn perm_reps() {
        let g = builtin_group("klein4").unwrap();
        let f2 = gf(2);
        let full = perm_rep(&g, f2, &Subgroup::full(&g));
        assert_eq!(full.dim, 1);
        let reg = perm_rep(&g, f2, &Subgroup::trivial());
        assert_eq!(reg.dim, 4);
        reg.verify().unwrap();
        let subs = crate::group::all_subgroups(&g);
        let x = perm_rep_gset(&g, f2, &[subs[1].clone(), subs[2].clone(), subs[3].clone()]);
        assert_eq!(x.dim, 6);
        x.verify().unwrap();
        // X^H nonempty exactly for H in the cyclic family: fixed vectors of
        // a permutation rep on coset sums detect fixed points
        let fam = make_family(&g, "cyclic").unwrap();
        let cat = build_orbit_category(&g, &make_family(&g, "all").unwrap()).unwrap();
        let xmod = fixed_point_module(&cat, &x).unwrap();
        for (o, h) in cat.objects().iter().enumerate() {
            // a G-set Y has Y^H nonempty iff the fixed submodule of R[Y]
            // contains a 0/1 vector supported on a fixed point; for
            // permutation modules dim(R[Y]^H) counts H-orbits, and Y^H ≠ ∅
            // iff some orbit has size 1. Count directly instead.
            let mut fixed_points = 0;
            for part in [&subs[1], &subs[2], &subs[3]] {
                let pr = perm_rep(&g, f2, part);
                'c: for c in 0..pr.dim {
                    for &a in h.elements() {
                        if pr.rho[a].get(c, c) != 1 {
                            continue 'c;
                        }
                    }
                    fixed_points += 1;
                }
            }
            assert_eq!(fixed_points > 0, fam.contains(h), "object {o}");
            let _ = xmod.dim(o);
        }
    }

    #[test]
    fn restricting_free_modules() {
        // restriction of a representable at K agrees with the small
        // category's representable when everything mapping into K stays in
        // the subfamily
        let g = builtin_group("klein4").unwrap();
        let f2 = gf(2);
        let cat_all = build_orbit_category(&g, &make_family(&g, "all").unwrap()).unwrap();
        let cat_cyc = build_orbit_category(&g, &make_family(&g, "cyclic").unwrap()).unwrap();
        let k = cat_all.object_index(&cat_cyc.objects()[1].clone()).unwrap();
        let big = free_module(&cat_all, f2, k);
        let restricted = restrict_to_category(&big, &cat_cyc).unwrap();
        let small = free_module(&cat_cyc, f2, 1);
        assert_eq!(restricted.dims(), small.dims());
        for id in 0..cat_cyc.morphism_count() {
            assert_eq!(restricted.act(id), small.act(id));
        }
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<crate::group::FiniteGroup>();
        assert_send_sync::<crate::orbit::OrbitCategory>();
        assert_send_sync::<GammaModule>();
        assert_send_sync::<GammaHom>();
        assert_send_sync::<GGRep>();
        // immutable values evaluate concurrently with no coordination
        let cat = klein_cyclic();
        let m = fixed_point_module(&cat, &GGRep::regular(cat.group(), gf(2))).unwrap();
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let m = m.clone();
                std::thread::spawn(move || limit(&m))
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), 1);
        }
    }

    #[test]
    fn module_json_roundtrip() {
        let cat = klein_cyclic();
        let m = fixed_point_module(&cat, &GGRep::regular(cat.group(), gf(3))).unwrap();
        let text = module_to_json(&m);
        let back = module_from_json(&cat, &text).unwrap();
        assert_eq!(back.dims(), m.dims());
    }
}
