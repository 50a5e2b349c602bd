//! Finite groups as indexed element sets with Cayley tables, their
//! subgroups, conjugation, and subgroup families closed under conjugation
//! and taking subgroups.
//!
//! Elements are dense indices 0..n-1 with the identity normalized to 0 at
//! construction. Subgroups are strictly sorted element lists, so equality
//! is plain sequence equality and the canonical order (size, then lex) is
//! stable across runs.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};

/// Default cap on permutation-closure enumeration.
pub const DEFAULT_CLOSURE_BOUND: usize = 5040;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    cayley: Vec<usize>, // row-major order×order
    inverse: Vec<usize>,
    element_orders: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table and normalizes the identity to index 0.
    pub fn from_cayley(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MalformedTable {
                reason: "empty table".into(),
            });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable {
                    reason: format!("row {} has length {}, expected {}", i, row.len(), n),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::MalformedTable {
                        reason: format!("entry ({i},{j}) = {v} out of range"),
                    });
                }
            }
        }
        // locate a two-sided identity
        let mut identity = None;
        'outer: for e in 0..n {
            for x in 0..n {
                if table[e][x] != x || table[x][e] != x {
                    continue 'outer;
                }
            }
            identity = Some(e);
            break;
        }
        let Some(e) = identity else {
            return Err(Error::NoIdentity);
        };
        // relabel so the identity sits at 0 (swap 0 <-> e)
        let sigma = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut cayley = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                cayley[sigma(a) * n + sigma(b)] = sigma(table[a][b]);
            }
        }
        Self::finish_validated(n, cayley)
    }

    fn finish_validated(n: usize, cayley: Vec<usize>) -> Result<Self> {
        let mul = |a: usize, b: usize| cayley[a * n + b];
        // rows and columns must be permutations
        for a in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for b in 0..n {
                seen_row[mul(a, b)] = true;
                seen_col[mul(b, a)] = true;
            }
            if seen_row.iter().any(|&s| !s) || seen_col.iter().any(|&s| !s) {
                return Err(Error::MalformedTable {
                    reason: format!("row or column of element {a} is not a permutation"),
                });
            }
        }
        // two-sided inverses
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            let mut found = None;
            for b in 0..n {
                if mul(a, b) == 0 && mul(b, a) == 0 {
                    found = Some(b);
                    break;
                }
            }
            match found {
                Some(b) => inverse[a] = b,
                None => return Err(Error::NoInverse { element: a }),
            }
        }
        // associativity: exhaustive at small order, 10^5 random triples above
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                            return Err(Error::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5EED);
            for _ in 0..100_000 {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                    return Err(Error::NotAssociative { a, b, c });
                }
            }
        }
        let mut element_orders = vec![0usize; n];
        for a in 0..n {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = mul(x, a);
                k += 1;
            }
            element_orders[a] = k;
        }
        Ok(FiniteGroup {
            order: n,
            cayley,
            inverse,
            element_orders,
        })
    }

    /// Closes permutation generators under composition and builds the
    /// resulting group; element 0 is the identity.
    pub fn from_permutations(generators: &[Vec<usize>], bound: usize) -> Result<Self> {
        let m = match generators.first() {
            Some(g) => g.len(),
            None => 1,
        };
        for (i, g) in generators.iter().enumerate() {
            if g.len() != m {
                return Err(Error::NotAPermutation { index: i });
            }
            let mut seen = vec![false; m];
            for &x in g {
                if x >= m || seen[x] {
                    return Err(Error::NotAPermutation { index: i });
                }
                seen[x] = true;
            }
        }
        let idp: Vec<usize> = (0..m).collect();
        let mut elems: Vec<Vec<usize>> = vec![idp.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(idp, 0);
        let mut queue = 0;
        while queue < elems.len() {
            let cur = elems[queue].clone();
            for g in generators {
                // (cur ∘ g)(x) = cur[g[x]]
                let prod: Vec<usize> = (0..m).map(|x| cur[g[x]]).collect();
                if !index.contains_key(&prod) {
                    if elems.len() >= bound {
                        return Err(Error::GroupTooLarge { bound });
                    }
                    index.insert(prod.clone(), elems.len());
                    elems.push(prod);
                }
            }
            queue += 1;
        }
        let n = elems.len();
        let mut cayley = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<usize> = (0..m).map(|x| elems[a][elems[b][x]]).collect();
                cayley[a * n + b] = index[&prod];
            }
        }
        Self::finish_validated(n, cayley)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn order_of(&self, a: usize) -> usize {
        self.element_orders[a]
    }

    /// g⁻¹ h g.
    pub fn conj_right(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), h), g)
    }

    /// g h g⁻¹.
    pub fn conj_left(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    /// A small deterministic generating set (greedy closure growth).
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut have = Subgroup::generate(self, &[]);
        for g in 0..self.order {
            if !have.contains(g) {
                gens.push(g);
                let mut next = have.elements().to_vec();
                next.push(g);
                have = Subgroup::generate(self, &next);
                if have.len() == self.order {
                    break;
                }
            }
        }
        gens
    }
}

/// A subgroup as a strictly sorted element list; two subgroups are equal
/// iff their sequences are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup { elements: vec![0] }
    }

    pub fn full(group: &FiniteGroup) -> Self {
        Subgroup {
            elements: (0..group.order()).collect(),
        }
    }

    /// Wraps a sorted element list after checking the subgroup axioms.
    pub fn from_elements(group: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let mut e = elements.to_vec();
        e.sort_unstable();
        e.dedup();
        let set: HashSet<usize> = e.iter().copied().collect();
        if !set.contains(&0) {
            return Err(Error::NotASubgroup);
        }
        for &a in &e {
            if a >= group.order() || !set.contains(&group.inv(a)) {
                return Err(Error::NotASubgroup);
            }
            for &b in &e {
                if !set.contains(&group.mul(a, b)) {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        Ok(Subgroup { elements: e })
    }

    /// Subgroup generated by the given elements.
    pub fn generate(group: &FiniteGroup, gens: &[usize]) -> Self {
        let mut set: HashSet<usize> = HashSet::new();
        set.insert(0);
        let mut stack: Vec<usize> = vec![0];
        for &g in gens {
            if set.insert(g) {
                stack.push(g);
            }
        }
        while let Some(x) = stack.pop() {
            let candidates: Vec<usize> = set
                .iter()
                .flat_map(|&y| [group.mul(x, y), group.mul(y, x)])
                .collect();
            for c in candidates {
                if set.insert(c) {
                    stack.push(c);
                }
            }
            let ix = group.inv(x);
            if set.insert(ix) {
                stack.push(ix);
            }
        }
        let mut elements: Vec<usize> = set.into_iter().collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// g⁻¹ H g.
    pub fn conj_right(&self, group: &FiniteGroup, g: usize) -> Subgroup {
        let mut elements: Vec<usize> = self
            .elements
            .iter()
            .map(|&h| group.conj_right(h, g))
            .collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn is_normal(&self, group: &FiniteGroup) -> bool {
        (0..group.order()).all(|g| &self.conj_right(group, g) == self)
    }
}

/// Every subgroup exactly once, in canonical order (size, then lex).
///
/// Enumeration closes all cyclic subgroups upward: each known subgroup is
/// extended by every outside element and the generated subgroup recorded.
pub fn all_subgroups(group: &FiniteGroup) -> Vec<Subgroup> {
    let mut seen: HashSet<Subgroup> = HashSet::new();
    let mut list: Vec<Subgroup> = Vec::new();
    let mut push = |s: Subgroup, list: &mut Vec<Subgroup>| {
        if seen.insert(s.clone()) {
            list.push(s);
        }
    };
    push(Subgroup::trivial(), &mut list);
    for g in 1..group.order() {
        push(Subgroup::generate(group, &[g]), &mut list);
    }
    let mut i = 0;
    while i < list.len() {
        let h = list[i].clone();
        for g in 1..group.order() {
            if !h.contains(g) {
                let mut gens = h.elements().to_vec();
                gens.push(g);
                push(Subgroup::generate(group, &gens), &mut list);
            }
        }
        i += 1;
    }
    list.sort();
    list.sort_by_key(|s| s.len());
    list
}

/// The largest k with an elementary abelian p^k subgroup, maximized over
/// primes p (0 for the trivial group).
pub fn subgroup_rank(group: &FiniteGroup, subgroup: &Subgroup) -> usize {
    let local = SubgroupGroup::new(group, subgroup);
    let mut best = 0usize;
    for s in all_subgroups(&local.group) {
        if let Some(k) = elementary_abelian_rank(&local.group, &s) {
            best = best.max(k);
        }
    }
    best
}

fn elementary_abelian_rank(group: &FiniteGroup, s: &Subgroup) -> Option<usize> {
    if s.len() == 1 {
        return Some(0);
    }
    let p = group.order_of(s.elements()[1]);
    let mut d = 2;
    let mut isprime = p >= 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            isprime = false;
            break;
        }
        d += 1;
    }
    if !isprime {
        return None;
    }
    for &a in s.elements() {
        if a != 0 && group.order_of(a) != p {
            return None;
        }
        for &b in s.elements() {
            if group.mul(a, b) != group.mul(b, a) {
                return None;
            }
        }
    }
    let mut k = 0;
    let mut n = s.len();
    while n > 1 {
        if !n.is_multiple_of(p) {
            return None;
        }
        n /= p;
        k += 1;
    }
    Some(k)
}

/// A set of subgroups closed under conjugation and taking subgroups,
/// in canonical order with conjugacy-class ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupFamily {
    members: Vec<Subgroup>,
    conj_class: Vec<usize>,
}

impl SubgroupFamily {
    /// Validates closure under conjugation and under taking subgroups.
    pub fn new(group: &FiniteGroup, members: Vec<Subgroup>) -> Result<Self> {
        let mut ms = members;
        ms.sort();
        ms.dedup();
        ms.sort_by_key(|s| s.len());
        let set: HashSet<Subgroup> = ms.iter().cloned().collect();
        for (i, h) in ms.iter().enumerate() {
            for g in 0..group.order() {
                if !set.contains(&h.conj_right(group, g)) {
                    return Err(Error::FamilyInvalid {
                        reason: format!("member {i} not closed under conjugation"),
                    });
                }
            }
            let local = SubgroupGroup::new(group, h);
            for s in all_subgroups(&local.group) {
                if !set.contains(&local.lift(&s)) {
                    return Err(Error::FamilyInvalid {
                        reason: format!("member {i} has a subgroup outside the family"),
                    });
                }
            }
        }
        let conj_class = conjugacy_classes(group, &ms);
        Ok(SubgroupFamily {
            members: ms,
            conj_class,
        })
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn conj_class(&self, i: usize) -> usize {
        self.conj_class[i]
    }

    pub fn position(&self, s: &Subgroup) -> Option<usize> {
        self.members.iter().position(|m| m == s)
    }

    pub fn contains(&self, s: &Subgroup) -> bool {
        self.position(s).is_some()
    }
}

fn conjugacy_classes(group: &FiniteGroup, members: &[Subgroup]) -> Vec<usize> {
    let mut class = vec![usize::MAX; members.len()];
    let mut next = 0;
    for i in 0..members.len() {
        if class[i] != usize::MAX {
            continue;
        }
        class[i] = next;
        for g in 0..group.order() {
            let c = members[i].conj_right(group, g);
            if let Some(j) = members.iter().position(|m| *m == c) {
                class[j] = next;
            }
        }
        next += 1;
    }
    class
}

/// The smallest family containing the seeds and closed under conjugation
/// and taking subgroups.
pub fn family_closure(group: &FiniteGroup, seeds: &[Subgroup]) -> SubgroupFamily {
    let all = all_subgroups(group);
    let mut members = Vec::new();
    for k in &all {
        'search: for g in 0..group.order() {
            let kg = k.conj_right(group, g);
            for s in seeds {
                if kg.is_subset_of(s) {
                    members.push(k.clone());
                    break 'search;
                }
            }
        }
    }
    SubgroupFamily::new(group, members).expect("closure is closed by construction")
}

/// Family construction tokens: `cyclic`, `all_proper`, `all`,
/// `rank_at_most:k`, `list:<subgroup ids>`.
pub fn make_family(group: &FiniteGroup, spec: &str) -> Result<SubgroupFamily> {
    let all = all_subgroups(group);
    if spec == "cyclic" {
        let mut members: Vec<Subgroup> = Vec::new();
        for g in 0..group.order() {
            let c = Subgroup::generate(group, &[g]);
            if !members.contains(&c) {
                members.push(c);
            }
        }
        return SubgroupFamily::new(group, members);
    }
    if spec == "all_proper" {
        let members = all
            .into_iter()
            .filter(|s| s.len() < group.order())
            .collect();
        return SubgroupFamily::new(group, members);
    }
    if spec == "all" {
        return SubgroupFamily::new(group, all);
    }
    if let Some(k) = spec.strip_prefix("rank_at_most:") {
        let k: usize = k.parse().map_err(|_| Error::BadSpec {
            reason: format!("bad rank bound in `{spec}`"),
        })?;
        let members = all
            .into_iter()
            .filter(|s| subgroup_rank(group, s) <= k)
            .collect();
        return SubgroupFamily::new(group, members);
    }
    if let Some(list) = spec.strip_prefix("list:") {
        let mut seeds = Vec::new();
        for id in list.split(',').filter(|s| !s.is_empty()) {
            seeds.push(parse_subgroup_id(&all, id)?);
        }
        return Ok(family_closure(group, &seeds));
    }
    Err(Error::BadSpec {
        reason: format!("unknown family spec `{spec}`"),
    })
}

/// Resolves a subgroup id of the form "S<k>" against the canonical
/// all_subgroups order.
pub fn parse_subgroup_id(all: &[Subgroup], id: &str) -> Result<Subgroup> {
    let k = id
        .strip_prefix('S')
        .and_then(|t| t.parse::<usize>().ok())
        .ok_or_else(|| Error::UnknownSubgroupId { id: id.into() })?;
    all.get(k)
        .cloned()
        .ok_or_else(|| Error::UnknownSubgroupId { id: id.into() })
}

/// A subgroup re-packaged as a standalone group, with the embedding into
/// the ambient element indices.
pub struct SubgroupGroup {
    pub group: FiniteGroup,
    pub emb: Vec<usize>,
    inv_emb: HashMap<usize, usize>,
}

impl SubgroupGroup {
    pub fn new(ambient: &FiniteGroup, subgroup: &Subgroup) -> Self {
        let emb = subgroup.elements().to_vec();
        let inv_emb: HashMap<usize, usize> = emb.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let n = emb.len();
        let mut table = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                table[i][j] = inv_emb[&ambient.mul(emb[i], emb[j])];
            }
        }
        // elements are sorted so the ambient identity 0 is local 0 already
        let group = FiniteGroup::from_cayley(&table).expect("subgroup table is a group");
        SubgroupGroup {
            group,
            emb,
            inv_emb,
        }
    }

    pub fn to_local(&self, ambient_element: usize) -> Option<usize> {
        self.inv_emb.get(&ambient_element).copied()
    }

    /// Maps a subgroup of the local group back to ambient indices.
    pub fn lift(&self, local: &Subgroup) -> Subgroup {
        let mut elements: Vec<usize> = local.elements().iter().map(|&i| self.emb[i]).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }
}

/// Quotient group G/N for normal N; returns the group together with the
/// projection table (element -> coset index). Coset 0 is N itself.
pub fn quotient_group(group: &FiniteGroup, normal: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
    if !normal.is_normal(group) {
        return Err(Error::NotNormal);
    }
    let mut coset_of = vec![usize::MAX; group.order()];
    let mut reps: Vec<usize> = Vec::new();
    for g in 0..group.order() {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(g); // g is minimal in its coset: earlier elements are taken
        for &h in normal.elements() {
            coset_of[group.mul(g, h)] = idx;
        }
    }
    let m = reps.len();
    let mut table = vec![vec![0usize; m]; m];
    for i in 0..m {
        for j in 0..m {
            table[i][j] = coset_of[group.mul(reps[i], reps[j])];
        }
    }
    let q = FiniteGroup::from_cayley(&table)?;
    Ok((q, coset_of))
}

/// Builtin groups: `trivial`, `cyclic:n`, `klein4`, `elem_abelian:p:k`,
/// `dihedral:n`, `quaternion8`, `symmetric:n` (n ≤ 4).
pub fn builtin_group(name: &str) -> Result<FiniteGroup> {
    if name == "trivial" {
        return group_from_fn(1, |_, _| 0);
    }
    if name == "klein4" {
        return builtin_group("elem_abelian:2:2");
    }
    if name == "quaternion8" {
        return quaternion8();
    }
    if let Some(n) = name.strip_prefix("cyclic:") {
        let n: usize = parse_positive(n, name)?;
        return group_from_fn(n, |a, b| (a + b) % n);
    }
    if let Some(rest) = name.strip_prefix("elem_abelian:") {
        let mut it = rest.split(':');
        let p: usize = parse_positive(it.next().unwrap_or(""), name)?;
        let k: u32 = parse_positive(it.next().unwrap_or(""), name)? as u32;
        let n = p
            .checked_pow(k)
            .filter(|&n| n <= DEFAULT_CLOSURE_BOUND)
            .ok_or(Error::GroupTooLarge {
                bound: DEFAULT_CLOSURE_BOUND,
            })?;
        return group_from_fn(n, move |a, b| {
            let (mut a, mut b, mut out, mut mult) = (a, b, 0usize, 1usize);
            for _ in 0..k {
                out += (a % p + b % p) % p * mult;
                a /= p;
                b /= p;
                mult *= p;
            }
            out
        });
    }
    if let Some(n) = name.strip_prefix("dihedral:") {
        let n: usize = parse_positive(n, name)?;
        // element a + n*b  <->  r^a s^b with s r = r^{-1} s
        return group_from_fn(2 * n, move |x, y| {
            let (a1, b1) = (x % n, x / n);
            let (a2, b2) = (y % n, y / n);
            let a = if b1 == 0 {
                (a1 + a2) % n
            } else {
                (a1 + n - a2 % n) % n
            };
            a + n * ((b1 + b2) % 2)
        });
    }
    if let Some(n) = name.strip_prefix("symmetric:") {
        let n: usize = parse_positive(n, name)?;
        if n > 4 {
            return Err(Error::UnknownName { name: name.into() });
        }
        let perms = all_permutations(n);
        let index: HashMap<Vec<usize>, usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let prod: Vec<usize> = (0..n).map(|x| a[b[x]]).collect();
                        index[&prod]
                    })
                    .collect()
            })
            .collect();
        return FiniteGroup::from_cayley(&table);
    }
    Err(Error::UnknownName { name: name.into() })
}

fn parse_positive(token: &str, name: &str) -> Result<usize> {
    token
        .parse::<usize>()
        .ok()
        .filter(|&v| v >= 1)
        .ok_or_else(|| Error::UnknownName { name: name.into() })
}

fn group_from_fn(n: usize, mul: impl Fn(usize, usize) -> usize) -> Result<FiniteGroup> {
    let table: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| mul(a, b)).collect())
        .collect();
    FiniteGroup::from_cayley(&table)
}

fn quaternion8() -> Result<FiniteGroup> {
    // elements: (sign, basis) with basis 1,i,j,k; index = basis*2 + sign
    let basis_mul = |a: usize, b: usize| -> (usize, usize) {
        // returns (sign flip, basis) for products of 1,i,j,k
        match (a, b) {
            (0, x) => (0, x),
            (x, 0) => (0, x),
            (1, 1) => (1, 0),
            (2, 2) => (1, 0),
            (3, 3) => (1, 0),
            (1, 2) => (0, 3),
            (2, 1) => (1, 3),
            (2, 3) => (0, 1),
            (3, 2) => (1, 1),
            (3, 1) => (0, 2),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    };
    group_from_fn(8, move |x, y| {
        let (sa, ba) = (x & 1, x >> 1);
        let (sb, bb) = (y & 1, y >> 1);
        let (flip, b) = basis_mul(ba, bb);
        b * 2 + (sa ^ sb ^ flip)
    })
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    permute(&mut cur, 0, &mut out);
    out.sort();
    out
}

fn permute(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute(cur, k + 1, out);
        cur.swap(k, i);
    }
}

/// JSON group file: either a Cayley table or permutation generators.
#[derive(Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cayley: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
}

pub fn group_from_json(text: &str) -> Result<FiniteGroup> {
    let file: GroupFile =
        serde_json::from_str(text).map_err(|e| Error::Io(format!("group file: {e}")))?;
    if let Some(cayley) = &file.cayley {
        return FiniteGroup::from_cayley(cayley);
    }
    if let Some(generators) = &file.generators {
        for (i, g) in generators.iter().enumerate() {
            if Some(g.len()) != file.points {
                return Err(Error::NotAPermutation { index: i });
            }
        }
        return FiniteGroup::from_permutations(generators, DEFAULT_CLOSURE_BOUND);
    }
    Err(Error::Io(
        "group file needs `cayley` or `points`+`generators`".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::from_cayley(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn klein4_table() {
        let g = builtin_group("klein4").unwrap();
        assert_eq!(g.order(), 4);
        for a in 1..4 {
            assert_eq!(g.order_of(a), 2);
        }
    }

    #[test]
    fn nonassociative_rejected() {
        // a 3x3 Latin square that is not a group (no identity works out):
        // force a non-associative triple by using a quasigroup
        let table = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]];
        let err = FiniteGroup::from_cayley(&table).unwrap_err();
        assert!(matches!(
            err,
            Error::NotAssociative { .. } | Error::NoIdentity | Error::MalformedTable { .. }
        ));
    }

    #[test]
    fn identity_relabeled_to_zero() {
        // Z/2 with identity at index 1
        let table = vec![vec![1, 0], vec![0, 1]];
        let g = FiniteGroup::from_cayley(&table).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn perm_groups() {
        let g = FiniteGroup::from_permutations(&[vec![1, 0]], 100).unwrap();
        assert_eq!(g.order(), 2);
        let g = FiniteGroup::from_permutations(&[vec![1, 0, 2, 3], vec![0, 1, 3, 2]], 100).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.order_of(1) == 2 && g.order_of(2) == 2 && g.order_of(3) == 2);
        assert!(FiniteGroup::from_permutations(&[vec![0, 0]], 100).is_err());
        assert!(matches!(
            FiniteGroup::from_permutations(&[vec![1, 2, 3, 4, 0]], 4),
            Err(Error::GroupTooLarge { bound: 4 })
        ));
    }

    #[test]
    fn quaternion_as_permutation_closure() {
        // regular representation: rows of the Cayley table as permutations
        let q8 = builtin_group("quaternion8").unwrap();
        let gens: Vec<Vec<usize>> = [2usize, 4]
            .iter()
            .map(|&a| (0..8).map(|b| q8.mul(a, b)).collect())
            .collect();
        let g = FiniteGroup::from_permutations(&gens, 100).unwrap();
        assert_eq!(g.order(), 8);
        let involutions = (0..8).filter(|&a| g.order_of(a) == 2).count();
        assert_eq!(involutions, 1, "Q8 has exactly one element of order 2");
    }

    /// Brute-force oracle: subsets closed as groups, counted exhaustively.
    fn subgroup_count_oracle(g: &FiniteGroup) -> usize {
        let n = g.order();
        assert!(n <= 16);
        let mut count = 0;
        for mask in 0u32..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let elems: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if Subgroup::from_elements(g, &elems).is_ok() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn subgroup_enumeration() {
        let klein = builtin_group("klein4").unwrap();
        assert_eq!(all_subgroups(&klein).len(), 5);
        let c4 = builtin_group("cyclic:4").unwrap();
        assert_eq!(all_subgroups(&c4).len(), 3);
        let q8 = builtin_group("quaternion8").unwrap();
        let subs = all_subgroups(&q8);
        assert_eq!(subs.len(), subgroup_count_oracle(&q8));
        assert_eq!(subs.len(), 6);
        // canonical order: sizes ascending
        let sizes: Vec<usize> = subs.iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![1, 2, 4, 4, 4, 8]);
    }

    #[test]
    fn builtin_klein4_order_two_subgroups() {
        let g = builtin_group("klein4").unwrap();
        let twos = all_subgroups(&g)
            .into_iter()
            .filter(|s| s.len() == 2)
            .count();
        assert_eq!(twos, 3);
        assert_eq!(builtin_group("cyclic:1").unwrap().order(), 1);
        assert!(builtin_group("nope").is_err());
        assert!(builtin_group("symmetric:5").is_err());
    }

    #[test]
    fn families() {
        let g = builtin_group("klein4").unwrap();
        let f = make_family(&g, "cyclic").unwrap();
        assert_eq!(f.len(), 4);

        let t = builtin_group("trivial").unwrap();
        assert_eq!(make_family(&t, "all").unwrap().len(), 1);

        let q8 = builtin_group("quaternion8").unwrap();
        let f = make_family(&q8, "cyclic").unwrap();
        assert_eq!(f.len(), 5);
        let sizes: Vec<usize> = f.members().iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![1, 2, 4, 4, 4]);
    }

    #[test]
    fn family_closure_examples() {
        let g = builtin_group("klein4").unwrap();
        let subs = all_subgroups(&g);
        let h1 = subs[1].clone();
        let f = family_closure(&g, &[h1]);
        assert_eq!(f.len(), 2);
        let f = family_closure(&g, &[Subgroup::full(&g)]);
        assert_eq!(f.len(), 5);

        let s3 = builtin_group("symmetric:3").unwrap();
        let two = all_subgroups(&s3)
            .into_iter()
            .find(|s| s.len() == 2)
            .unwrap();
        let f = family_closure(&s3, &[two]);
        assert_eq!(f.len(), 4, "trivial plus three conjugate order-2 subgroups");
    }

    #[test]
    fn closure_idempotent_and_all_proper() {
        let g = builtin_group("symmetric:4").unwrap();
        let subs = all_subgroups(&g);
        assert_eq!(subs.len(), 30);
        let seed = vec![subs[10].clone(), subs[3].clone()];
        let once = family_closure(&g, &seed);
        let twice = family_closure(&g, once.members());
        assert_eq!(once, twice);

        let proper = make_family(&g, "all_proper").unwrap();
        let mut with_g = proper.members().to_vec();
        with_g.push(Subgroup::full(&g));
        with_g.sort();
        let mut all = subs;
        all.sort();
        assert_eq!(with_g, all);
    }

    #[test]
    fn rank_families() {
        let g = builtin_group("klein4").unwrap();
        // rank(klein4) = 2; subgroups of rank <= 1 are the cyclic ones
        let f = make_family(&g, "rank_at_most:1").unwrap();
        assert_eq!(f.len(), 4);
        let f2 = make_family(&g, "rank_at_most:2").unwrap();
        assert_eq!(f2.len(), 5);
    }

    #[test]
    fn list_family_and_ids() {
        let g = builtin_group("cyclic:4").unwrap();
        // S0 = trivial, S1 = C2, S2 = C4
        let f = make_family(&g, "list:S1").unwrap();
        assert_eq!(f.len(), 2);
        assert!(matches!(
            make_family(&g, "list:S9"),
            Err(Error::UnknownSubgroupId { .. })
        ));
    }

    #[test]
    fn quotients() {
        let g = builtin_group("klein4").unwrap();
        let h = all_subgroups(&g)[1].clone();
        let (q, proj) = quotient_group(&g, &h).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj[0], 0);

        let s3 = builtin_group("symmetric:3").unwrap();
        let two = all_subgroups(&s3)
            .into_iter()
            .find(|s| s.len() == 2)
            .unwrap();
        assert!(matches!(quotient_group(&s3, &two), Err(Error::NotNormal)));
    }

    #[test]
    fn dihedral_and_symmetric() {
        let d4 = builtin_group("dihedral:4").unwrap();
        assert_eq!(d4.order(), 8);
        let s4 = builtin_group("symmetric:4").unwrap();
        assert_eq!(s4.order(), 24);
        let s3 = builtin_group("symmetric:3").unwrap();
        assert_eq!(all_subgroups(&s3).len(), 6);
    }
}
