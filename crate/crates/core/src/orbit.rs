//! The orbit category of a finite group relative to a subgroup family:
//! objects G/H for H in the family, morphisms G/H → G/K as canonical coset
//! representatives, and the full composition table.
//!
//! A G-map G/H → G/K is H ↦ gK for a coset with g⁻¹Hg ≤ K; the canonical
//! representative is the minimum element of gK, which makes morphism
//! equality an integer comparison and composition deterministic.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, SubgroupFamily};
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub rep: usize,
}

#[derive(Debug)]
pub struct OrbitCategory {
    group: FiniteGroup,
    objects: Vec<Subgroup>,
    conj_class: Vec<usize>,
    morphisms: Vec<Morphism>,
    mor_ids: Vec<Vec<Vec<usize>>>, // [source][target] -> global morphism ids
    comp: HashMap<(usize, usize), usize>,
    identity: Vec<usize>, // per object
}

/// Builds the orbit category of a validated family. All morphism sets and
/// the composition table are populated; category axioms are re-verified.
pub fn build_orbit_category(
    group: &FiniteGroup,
    family: &SubgroupFamily,
) -> Result<Arc<OrbitCategory>> {
    let cat = build_from_objects(group, family.members().to_vec())?;
    Ok(cat)
}

/// Builds an orbit-category-like category on an explicit object list (used
/// for skeletal variants on conjugacy-class representatives). The list must
/// be closed enough for composition to stay inside it, which holds for any
/// set of subgroups since composites reuse source and target objects only.
pub fn build_from_objects(
    group: &FiniteGroup,
    objects: Vec<Subgroup>,
) -> Result<Arc<OrbitCategory>> {
    let nobj = objects.len();
    let mut morphisms = Vec::new();
    let mut mor_ids = vec![vec![Vec::new(); nobj]; nobj];
    for (src, h) in objects.iter().enumerate() {
        for (tgt, k) in objects.iter().enumerate() {
            // distinct cosets gK in ascending-minimum order
            let mut in_coset = vec![false; group.order()];
            for g in 0..group.order() {
                if in_coset[g] {
                    continue;
                }
                for &x in k.elements() {
                    in_coset[group.mul(g, x)] = true;
                }
                // g is the minimum of its coset: smaller elements are marked
                let ok = h
                    .elements()
                    .iter()
                    .all(|&a| k.contains(group.conj_right(a, g)));
                if ok {
                    mor_ids[src][tgt].push(morphisms.len());
                    morphisms.push(Morphism {
                        source: src,
                        target: tgt,
                        rep: g,
                    });
                }
            }
        }
    }
    // lookup (source, target, canonical rep) -> id
    let mut by_rep: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (id, m) in morphisms.iter().enumerate() {
        by_rep.insert((m.source, m.target, m.rep), id);
    }
    let min_of_coset = |g: usize, k: &Subgroup| -> usize {
        k.elements().iter().map(|&x| group.mul(g, x)).min().unwrap()
    };
    let mut comp = HashMap::new();
    for f in 0..morphisms.len() {
        let mf = morphisms[f];
        for g in 0..morphisms.len() {
            let mg = morphisms[g];
            if mf.target != mg.source {
                continue;
            }
            let rep = min_of_coset(group.mul(mf.rep, mg.rep), &objects[mg.target]);
            let id =
                *by_rep
                    .get(&(mf.source, mg.target, rep))
                    .ok_or_else(|| Error::FamilyInvalid {
                        reason: "composite morphism missing".into(),
                    })?;
            comp.insert((f, g), id);
        }
    }
    let mut identity = vec![usize::MAX; nobj];
    for (obj, ids) in mor_ids.iter().enumerate() {
        let id = ids[obj]
            .iter()
            .copied()
            .find(|&i| morphisms[i].rep == 0)
            .expect("identity coset always qualifies");
        identity[obj] = id;
    }
    let conj_class = {
        let mut class = vec![usize::MAX; nobj];
        let mut next = 0;
        for i in 0..nobj {
            if class[i] != usize::MAX {
                continue;
            }
            for g in 0..group.order() {
                let c = objects[i].conj_right(group, g);
                if let Some(j) = objects.iter().position(|m| *m == c) {
                    if class[j] == usize::MAX {
                        class[j] = next;
                    }
                }
            }
            next += 1;
        }
        class
    };
    let cat = OrbitCategory {
        group: group.clone(),
        objects,
        conj_class,
        morphisms,
        mor_ids,
        comp,
        identity,
    };
    let report = check_category(&cat);
    if !report.pass {
        return Err(Error::FamilyInvalid {
            reason: report.counterexample.unwrap_or_default(),
        });
    }
    Ok(Arc::new(cat))
}

impl OrbitCategory {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn objects(&self) -> &[Subgroup] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_index(&self, s: &Subgroup) -> Option<usize> {
        self.objects.iter().position(|o| o == s)
    }

    pub fn conj_class(&self, obj: usize) -> usize {
        self.conj_class[obj]
    }

    pub fn morphism(&self, id: usize) -> Morphism {
        self.morphisms[id]
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn mor(&self, source: usize, target: usize) -> &[usize] {
        &self.mor_ids[source][target]
    }

    /// Position of a morphism inside its (source, target) hom-set.
    pub fn mor_position(&self, id: usize) -> usize {
        let m = self.morphisms[id];
        self.mor_ids[m.source][m.target]
            .iter()
            .position(|&i| i == id)
            .unwrap()
    }

    pub fn identity_morphism(&self, obj: usize) -> usize {
        self.identity[obj]
    }

    /// Composite of f: A→B then g: B→C, as a morphism A→C.
    pub fn compose(&self, f: usize, g: usize) -> usize {
        self.comp[&(f, g)]
    }

    pub fn is_identity(&self, id: usize) -> bool {
        let m = self.morphisms[id];
        m.source == m.target && m.rep == 0
    }

    /// In an EI category a morphism is invertible iff source and target
    /// orbits have the same size.
    pub fn is_iso(&self, id: usize) -> bool {
        let m = self.morphisms[id];
        self.objects[m.source].len() == self.objects[m.target].len()
    }

    /// Morphism with the coset representative g between the given objects,
    /// if g⁻¹·source·g ≤ target.
    pub fn morphism_with_rep(&self, source: usize, target: usize, g: usize) -> Option<usize> {
        let k = &self.objects[target];
        let rep = k
            .elements()
            .iter()
            .map(|&x| self.group.mul(g, x))
            .min()
            .unwrap();
        self.mor_ids[source][target]
            .iter()
            .copied()
            .find(|&i| self.morphisms[i].rep == rep)
    }

    /// Morphism census: census[h][k] = |mor(G/H, G/K)|.
    pub fn census(&self) -> Vec<Vec<usize>> {
        self.mor_ids
            .iter()
            .map(|row| row.iter().map(|ids| ids.len()).collect())
            .collect()
    }

    #[cfg(test)]
    fn corrupt_composition_for_test(&mut self) {
        // redirect one non-identity composite to a wrong morphism
        let key = *self
            .comp
            .iter()
            .find(|((f, g), &v)| {
                !self.is_identity(*f) && !self.is_identity(*g) && {
                    let m = self.morphisms[v];
                    self.mor_ids[m.source][m.target].len() > 1
                }
            })
            .map(|(k, _)| k)
            .expect("need a corruptible entry");
        let v = self.comp[&key];
        let m = self.morphisms[v];
        let other = self.mor_ids[m.source][m.target]
            .iter()
            .copied()
            .find(|&i| i != v)
            .unwrap();
        self.comp.insert(key, other);
    }
}

#[derive(Debug, Clone)]
pub struct CategoryReport {
    pub pass: bool,
    pub counterexample: Option<String>,
    pub total_morphisms: usize,
}

/// Exhaustively verifies unit laws, associativity, the EI property, and the
/// fixed-point-count formula |mor(G/H, G/K)| = |(G/K)^H|.
pub fn check_category(cat: &OrbitCategory) -> CategoryReport {
    let fail = |msg: String| CategoryReport {
        pass: false,
        counterexample: Some(msg),
        total_morphisms: cat.morphisms.len(),
    };
    let group = &cat.group;
    // unit laws
    for f in 0..cat.morphisms.len() {
        let m = cat.morphisms[f];
        let ids = cat.identity[m.source];
        let idt = cat.identity[m.target];
        if cat.comp[&(ids, f)] != f || cat.comp[&(f, idt)] != f {
            return fail(format!("unit law fails for morphism {f}"));
        }
    }
    // associativity over all composable triples
    for f in 0..cat.morphisms.len() {
        let mf = cat.morphisms[f];
        for &g in cat.mor_ids[mf.target].iter().flatten() {
            let mg = cat.morphisms[g];
            if mg.source != mf.target {
                continue;
            }
            let fg = cat.comp[&(f, g)];
            for &h in cat.mor_ids[mg.target].iter().flatten() {
                let mh = cat.morphisms[h];
                if mh.source != mg.target {
                    continue;
                }
                let gh = cat.comp[&(g, h)];
                if cat.comp[&(fg, h)] != cat.comp[&(f, gh)] {
                    return fail(format!("associativity fails at ({f},{g},{h})"));
                }
            }
        }
    }
    // census formula by direct action enumeration
    for (hi, h) in cat.objects.iter().enumerate() {
        for (ki, k) in cat.objects.iter().enumerate() {
            let mut coset_of = vec![usize::MAX; group.order()];
            let mut ncosets = 0;
            for g in 0..group.order() {
                if coset_of[g] != usize::MAX {
                    continue;
                }
                for &x in k.elements() {
                    coset_of[group.mul(g, x)] = ncosets;
                }
                ncosets += 1;
            }
            let mut fixed = 0;
            'coset: for c in 0..ncosets {
                let rep = (0..group.order()).find(|&g| coset_of[g] == c).unwrap();
                for &a in h.elements() {
                    if coset_of[group.mul(a, rep)] != c {
                        continue 'coset;
                    }
                }
                fixed += 1;
            }
            if fixed != cat.mor_ids[hi][ki].len() {
                return fail(format!(
                    "census mismatch at ({hi},{ki}): {} morphisms vs {} fixed points",
                    cat.mor_ids[hi][ki].len(),
                    fixed
                ));
            }
        }
    }
    // EI property: endomorphisms are invertible
    for (obj, _) in cat.objects.iter().enumerate() {
        for &f in &cat.mor_ids[obj][obj] {
            let id = cat.identity[obj];
            let invertible = cat.mor_ids[obj][obj]
                .iter()
                .any(|&g| cat.comp[&(f, g)] == id && cat.comp[&(g, f)] == id);
            if !invertible {
                return fail(format!("endomorphism {f} at object {obj} not invertible"));
            }
        }
    }
    CategoryReport {
        pass: true,
        counterexample: None,
        total_morphisms: cat.morphisms.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin_group, make_family};

    fn klein_cyclic() -> Arc<OrbitCategory> {
        let g = builtin_group("klein4").unwrap();
        let f = make_family(&g, "cyclic").unwrap();
        build_orbit_category(&g, &f).unwrap()
    }

    #[test]
    fn klein4_census() {
        let cat = klein_cyclic();
        // objects: 1, H1, H2, H3 in canonical order
        assert_eq!(cat.object_count(), 4);
        assert_eq!(cat.mor(0, 0).len(), 4);
        assert_eq!(cat.mor(1, 1).len(), 2);
        assert_eq!(cat.mor(1, 2).len(), 0);
        assert_eq!(cat.mor(0, 1).len(), 2);
        // full census: 4 + 2·3 at object 1, 2 per H_i
        assert_eq!(cat.morphism_count(), 16);
    }

    #[test]
    fn built_categories_pass_checks() {
        for (name, fam) in [
            ("klein4", "cyclic"),
            ("klein4", "all"),
            ("symmetric:3", "cyclic"),
            ("quaternion8", "cyclic"),
            ("cyclic:4", "all"),
        ] {
            let g = builtin_group(name).unwrap();
            let f = make_family(&g, fam).unwrap();
            let cat = build_orbit_category(&g, &f).unwrap();
            assert!(check_category(&cat).pass, "{name}/{fam}");
        }
    }

    #[test]
    fn corrupted_composition_detected() {
        let cat = klein_cyclic();
        let mut broken = OrbitCategory {
            group: cat.group.clone(),
            objects: cat.objects.clone(),
            conj_class: cat.conj_class.clone(),
            morphisms: cat.morphisms.clone(),
            mor_ids: cat.mor_ids.clone(),
            comp: cat.comp.clone(),
            identity: cat.identity.clone(),
        };
        broken.corrupt_composition_for_test();
        let report = check_category(&broken);
        assert!(!report.pass);
        assert!(report.counterexample.is_some());
    }

    #[test]
    fn identity_and_composition() {
        let cat = klein_cyclic();
        for f in 0..cat.morphism_count() {
            let m = cat.morphism(f);
            assert_eq!(cat.compose(cat.identity_morphism(m.source), f), f);
            assert_eq!(cat.compose(f, cat.identity_morphism(m.target)), f);
        }
        // identity morphisms have rep 0
        for obj in 0..cat.object_count() {
            assert_eq!(cat.morphism(cat.identity_morphism(obj)).rep, 0);
        }
    }

    #[test]
    fn weyl_group_sizes() {
        // |mor(H, H)| = |N_G(H)/H|
        let g = builtin_group("symmetric:3").unwrap();
        let f = make_family(&g, "cyclic").unwrap();
        let cat = build_orbit_category(&g, &f).unwrap();
        for (i, h) in cat.objects().iter().enumerate() {
            let n = (0..g.order())
                .filter(|&x| &h.conj_right(&g, x) == h)
                .count();
            assert_eq!(cat.mor(i, i).len(), n / h.len());
        }
    }
}
