//! Subgroup machinery: closures, derived series, solvability verdicts,
//! normality, quotients and the solvable radical.

use std::sync::OnceLock;

use dashmap::DashMap;
use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

/// A subgroup of a parent [`FiniteGroup`], held as element indices.
#[derive(Clone, Debug)]
pub struct SubgroupSet {
    members: Vec<usize>,
    bits: FixedBitSet,
    generators: Vec<usize>,
    key: u64,
    solvable: OnceLock<bool>,
    derived_lengths: OnceLock<Vec<usize>>,
}

impl PartialEq for SubgroupSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for SubgroupSet {}

impl SubgroupSet {
    fn new(n: usize, mut members: Vec<usize>, generators: Vec<usize>) -> Self {
        members.sort_unstable();
        let mut bits = FixedBitSet::with_capacity(n);
        for &m in &members {
            bits.insert(m);
        }
        let key = canonical_key(&members);
        SubgroupSet {
            members,
            bits,
            generators,
            key,
            solvable: OnceLock::new(),
            derived_lengths: OnceLock::new(),
        }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::new(g.order(), vec![g.identity()], Vec::new())
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self::new(
            g.order(),
            (0..g.order()).collect(),
            g.generator_indices().to_vec(),
        )
    }

    /// Sorted member indices.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Stable 64-bit hash of the sorted member list.
    pub fn key(&self) -> u64 {
        self.key
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub fn is_subset(&self, other: &SubgroupSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Cached derived-series lengths, if a verdict has been computed.
    pub fn derived_lengths(&self) -> Option<&[usize]> {
        self.derived_lengths.get().map(Vec::as_slice)
    }
}

/// FNV-1a over the sorted members; stable across runs and platforms.
pub fn canonical_key(sorted_members: &[usize]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &m in sorted_members {
        for b in (m as u64).to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

/// Breadth-first closure of `gens` from the identity.
fn close(g: &FiniteGroup, gens: &[usize]) -> (Vec<usize>, FixedBitSet) {
    let mut bits = FixedBitSet::with_capacity(g.order());
    bits.insert(g.identity());
    let mut out = vec![g.identity()];
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        for &s in gens {
            let y = g.mul(x, s);
            if !bits.put(y) {
                out.push(y);
            }
        }
        i += 1;
    }
    (out, bits)
}

/// Smallest subgroup containing `seed`. Redundant seed elements are dropped
/// from the recorded generator list.
pub fn closure(g: &FiniteGroup, seed: &[usize]) -> SubgroupSet {
    let mut gens: Vec<usize> = Vec::new();
    let mut current = FixedBitSet::with_capacity(g.order());
    current.insert(g.identity());
    let mut members = vec![g.identity()];
    for &s in seed {
        if current.contains(s) {
            continue;
        }
        gens.push(s);
        (members, current) = close(g, &gens);
    }
    SubgroupSet::new(g.order(), members, gens)
}

/// `<x, y>`.
pub fn two_generated(g: &FiniteGroup, x: usize, y: usize) -> SubgroupSet {
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    closure(g, &[lo, hi])
}

/// Normal closure of `seed` inside the subgroup generated by `ambient_gens`.
fn normal_closure_in(g: &FiniteGroup, ambient_gens: &[usize], seed: &[usize]) -> SubgroupSet {
    let mut current = closure(g, seed);
    loop {
        let mut extra = None;
        'scan: for &d in current.generators() {
            for &a in ambient_gens {
                let c = g.conjugate(g.inv(a), d);
                if !current.contains(c) {
                    extra = Some(c);
                    break 'scan;
                }
            }
        }
        match extra {
            Some(c) => {
                let mut gens = current.generators.clone();
                gens.push(c);
                current = closure(g, &gens);
            }
            None => return current,
        }
    }
}

/// Normal closure of `seed` in the whole group.
pub fn normal_closure(g: &FiniteGroup, seed: &[usize]) -> SubgroupSet {
    normal_closure_in(g, g.generator_indices(), seed)
}

/// Derived subgroup: the normal closure in `s` of the commutators of its
/// generators, which equals the subgroup generated by all commutators.
pub fn derived_subgroup(g: &FiniteGroup, s: &SubgroupSet) -> SubgroupSet {
    let gens = s.generators();
    let mut comms = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            comms.push(g.commutator(a, b));
        }
    }
    normal_closure_in(g, gens, &comms)
}

/// `S ⊇ S' ⊇ S'' ...`, ending at the first term equal to its own derived
/// subgroup.
pub fn derived_series(g: &FiniteGroup, s: &SubgroupSet) -> Vec<SubgroupSet> {
    let mut series = vec![s.clone()];
    loop {
        let last = series.last().expect("series is nonempty");
        if last.is_trivial() {
            return series;
        }
        let next = derived_subgroup(g, last);
        if next.len() == last.len() {
            return series;
        }
        series.push(next);
    }
}

fn compute_verdict(g: &FiniteGroup, s: &SubgroupSet) -> (bool, Vec<usize>) {
    let series = derived_series(g, s);
    let solvable = series.last().is_some_and(SubgroupSet::is_trivial);
    (solvable, series.iter().map(SubgroupSet::len).collect())
}

/// Uncached solvability test through the derived series. The verdict is
/// memoized on `s` itself.
pub fn is_solvable(g: &FiniteGroup, s: &SubgroupSet) -> bool {
    *s.solvable.get_or_init(|| {
        let (solvable, lengths) = compute_verdict(g, s);
        let _ = s.derived_lengths.set(lengths);
        solvable
    })
}

/// A subgroup remembered by the verdict cache.
#[derive(Clone, Debug)]
pub struct CachedVerdict {
    pub solvable: bool,
    pub derived_lengths: Vec<usize>,
    pub generators: Vec<usize>,
    /// Reached as `<x, y>` during a pair sweep.
    pub two_generated: bool,
}

/// Solvability verdicts keyed by subgroup membership. Safe for concurrent
/// readers and writers.
#[derive(Default)]
pub struct VerdictCache {
    map: DashMap<FixedBitSet, CachedVerdict>,
}

impl VerdictCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Cached [`is_solvable`].
    pub fn is_solvable(&self, g: &FiniteGroup, s: &SubgroupSet) -> bool {
        self.lookup_or_insert(g, s, false)
    }

    pub(crate) fn pair_verdict(&self, g: &FiniteGroup, s: &SubgroupSet) -> bool {
        self.lookup_or_insert(g, s, true)
    }

    fn lookup_or_insert(&self, g: &FiniteGroup, s: &SubgroupSet, two_generated: bool) -> bool {
        if let Some(mut hit) = self.map.get_mut(s.bits()) {
            hit.two_generated |= two_generated;
            let _ = s.solvable.set(hit.solvable);
            return hit.solvable;
        }
        let solvable = is_solvable(g, s);
        let lengths = s.derived_lengths().map(<[usize]>::to_vec).unwrap_or_default();
        self.map
            .entry(s.bits().clone())
            .and_modify(|e| e.two_generated |= two_generated)
            .or_insert(CachedVerdict {
                solvable,
                derived_lengths: lengths,
                generators: s.generators().to_vec(),
                two_generated,
            });
        solvable
    }

    /// All cached subgroups that arose as `<x, y>`, sorted by size then
    /// members so downstream consumers are deterministic.
    pub fn two_generated_subgroups(&self, g: &FiniteGroup) -> Vec<SubgroupSet> {
        let mut out: Vec<SubgroupSet> = self
            .map
            .iter()
            .filter(|e| e.value().two_generated)
            .map(|e| {
                let s = SubgroupSet::new(g.order(), e.key().ones().collect(), e.value().generators.clone());
                let _ = s.solvable.set(e.value().solvable);
                let _ = s.derived_lengths.set(e.value().derived_lengths.clone());
                s
            })
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
        out
    }
}

/// `g S g^-1 = S` for every generator `g` of the parent.
pub fn is_normal(g: &FiniteGroup, s: &SubgroupSet) -> bool {
    g.generator_indices()
        .iter()
        .all(|&a| s.generators().iter().all(|&x| s.contains(g.conjugate(a, x))))
}

/// `N_G(S)` by direct scan.
pub fn normalizer(g: &FiniteGroup, s: &SubgroupSet) -> SubgroupSet {
    let members: Vec<usize> = (0..g.order())
        .filter(|&h| s.generators().iter().all(|&x| s.contains(g.conjugate(h, x))))
        .collect();
    closure(g, &members)
}

/// Checks that `members` is a solvable normal subgroup, the three facts
/// forced by the radical being the set of universally solvable-pairing
/// elements.
pub fn validate_radical(g: &FiniteGroup, members: &[usize]) -> Result<SubgroupSet> {
    let r = closure(g, members);
    if r.len() != members.len() {
        return Err(Error::InvariantViolation(format!(
            "radical candidate of size {} is not closed (closure has {})",
            members.len(),
            r.len()
        )));
    }
    if !is_normal(g, &r) {
        return Err(Error::InvariantViolation(
            "radical candidate is not normal".into(),
        ));
    }
    if !is_solvable(g, &r) {
        return Err(Error::InvariantViolation(
            "radical candidate is not solvable".into(),
        ));
    }
    Ok(r)
}

/// The solvable radical, computed as `{x : <x, y> solvable for all y}`.
/// The radical is a union of classes, so one representative per class is
/// tested.
pub fn solvable_radical(g: &FiniteGroup, cache: &VerdictCache) -> Result<SubgroupSet> {
    let classes = g.conjugacy_classes();
    let mut members = Vec::new();
    for class in &classes.classes {
        let x = class[0];
        if (0..g.order()).all(|y| cache.pair_verdict(g, &two_generated(g, x, y))) {
            members.extend_from_slice(class);
        }
    }
    members.sort_unstable();
    validate_radical(g, &members)
}

/// All subgroups that are normal in `g` and contained in `within`
/// (itself normal). Built from normal closures of single classes, then
/// closed under joins.
pub fn normal_subgroups_within(g: &FiniteGroup, within: &SubgroupSet) -> Vec<SubgroupSet> {
    let classes = g.conjugacy_classes();
    let mut found: Vec<SubgroupSet> = vec![SubgroupSet::trivial(g)];
    let push = |found: &mut Vec<SubgroupSet>, s: SubgroupSet| {
        if !found.iter().any(|t| t.bits == s.bits) {
            found.push(s);
            true
        } else {
            false
        }
    };
    for class in &classes.classes {
        let x = class[0];
        if x != g.identity() && within.contains(x) {
            push(&mut found, normal_closure(g, &[x]));
        }
    }
    let mut i = 0;
    while i < found.len() {
        let mut j = 0;
        while j < i {
            let mut gens = found[i].generators.clone();
            gens.extend_from_slice(&found[j].generators);
            let join = closure(g, &gens);
            push(&mut found, join);
            j += 1;
        }
        i += 1;
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
    found
}

/// `G/N` realized on coset indices. Coset `k` is quotient element `k`, and
/// coset 0 is `N` itself.
#[derive(Debug)]
pub struct QuotientGroup {
    pub normal: SubgroupSet,
    /// Least element of each coset.
    pub representatives: Vec<usize>,
    pub coset_of: Vec<usize>,
    pub group: FiniteGroup,
}

/// Builds `G/N`. Each quotient element is the row of the coset
/// multiplication table read as a permutation of coset indices (the right
/// regular action), so no new faithful representation is searched for.
pub fn quotient_group(g: &FiniteGroup, normal: &SubgroupSet) -> Result<QuotientGroup> {
    if !is_normal(g, normal) {
        return Err(Error::Precondition("quotient requires a normal subgroup".into()));
    }
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    for r in 0..n {
        if coset_of[r] != usize::MAX {
            continue;
        }
        let c = representatives.len();
        representatives.push(r);
        for &m in normal.members() {
            coset_of[g.mul(r, m)] = c;
        }
    }
    let m = representatives.len();
    let perm_of = |k: usize| -> Result<Permutation> {
        let images = representatives
            .iter()
            .map(|&rc| coset_of[g.mul(rc, representatives[k])] as u32)
            .collect();
        Permutation::from_images(images)
    };
    let elements = (0..m).map(perm_of).collect::<Result<Vec<_>>>()?;
    let generators = g
        .generator_indices()
        .iter()
        .map(|&x| elements[coset_of[x]].clone())
        .collect();
    let group = FiniteGroup::from_elements(m, generators, elements)?;
    Ok(QuotientGroup {
        normal: normal.clone(),
        representatives,
        coset_of,
        group,
    })
}

/// Realizes a subgroup as a standalone group. Returns the group and the
/// embedding from its element indices to parent indices.
pub fn subgroup_as_group(g: &FiniteGroup, s: &SubgroupSet) -> Result<(FiniteGroup, Vec<usize>)> {
    let elements = s.members().iter().map(|&x| g.element(x).clone()).collect();
    let generators = s.generators().iter().map(|&x| g.element(x).clone()).collect();
    let h = FiniteGroup::from_elements(g.degree(), generators, elements)?;
    Ok((h, s.members().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_GUARD;

    fn group(degree: usize, gens: &[&str]) -> FiniteGroup {
        let gens: Vec<_> = gens
            .iter()
            .map(|s| Permutation::parse(s, degree).unwrap())
            .collect();
        FiniteGroup::generate(degree, &gens, DEFAULT_GUARD).unwrap()
    }

    fn idx(g: &FiniteGroup, s: &str) -> usize {
        g.index_of(&Permutation::parse(s, g.degree()).unwrap()).unwrap()
    }

    fn a5() -> FiniteGroup {
        group(5, &["(1 2 3 4 5)", "(1 2 3)"])
    }

    fn is_closed(g: &FiniteGroup, s: &SubgroupSet) -> bool {
        s.members()
            .iter()
            .all(|&a| s.contains(g.inv(a)) && s.members().iter().all(|&b| s.contains(g.mul(a, b))))
    }

    #[test]
    fn closure_examples() {
        let g = a5();
        let d10 = closure(&g, &[idx(&g, "(1 2 3 4 5)"), idx(&g, "(2 5)(3 4)")]);
        assert_eq!(d10.len(), 10);
        assert!(is_closed(&g, &d10));
        assert!(closure(&g, &[0]).is_trivial());
        assert_eq!(closure(&g, g.generator_indices()).len(), 60);
    }

    #[test]
    fn two_generated_examples() {
        let g = a5();
        let x = idx(&g, "(1 2 3 4 5)");
        let y = idx(&g, "(1 2 3)");
        assert_eq!(two_generated(&g, x, x).len(), 5);
        assert_eq!(two_generated(&g, x, y).len(), 60);
        assert_eq!(two_generated(&g, 0, y).members(), g.cyclic_subgroup(y));
        assert_eq!(two_generated(&g, x, y), two_generated(&g, y, x));
    }

    #[test]
    fn derived_subgroups() {
        let g = a5();
        let whole = SubgroupSet::whole(&g);
        assert_eq!(derived_subgroup(&g, &whole).len(), 60);
        let c5 = closure(&g, &[idx(&g, "(1 2 3 4 5)")]);
        assert!(derived_subgroup(&g, &c5).is_trivial());
        let s3 = closure(&g, &[idx(&g, "(1 2 3)"), idx(&g, "(1 2)(4 5)")]);
        assert_eq!(s3.len(), 6);
        let d = derived_subgroup(&g, &s3);
        assert_eq!(d.members(), g.cyclic_subgroup(idx(&g, "(1 2 3)")));
        let s4 = closure(&g, &[idx(&g, "(1 2 3)"), idx(&g, "(1 2)(3 4)")]);
        assert_eq!(s4.len(), 12);
        let series: Vec<_> = derived_series(&g, &s4).iter().map(SubgroupSet::len).collect();
        assert_eq!(series, vec![12, 4, 1]);
    }

    #[test]
    fn solvability_examples() {
        let g = a5();
        let d10 = closure(&g, &[idx(&g, "(1 2 3 4 5)"), idx(&g, "(2 5)(3 4)")]);
        assert!(is_solvable(&g, &d10));
        assert!(!is_solvable(&g, &SubgroupSet::whole(&g)));
        assert!(is_solvable(&g, &SubgroupSet::trivial(&g)));
        let cache = VerdictCache::new();
        assert!(cache.is_solvable(&g, &d10));
        assert_eq!(cache.len(), 1);
        assert!(cache.is_solvable(&g, &d10));
        assert_eq!(cache.len(), 1);
    }

    #[test]
    fn normality() {
        let g = a5();
        let d10 = closure(&g, &[idx(&g, "(1 2 3 4 5)"), idx(&g, "(2 5)(3 4)")]);
        assert!(!is_normal(&g, &d10));
        assert!(is_normal(&g, &SubgroupSet::whole(&g)));
        assert!(is_normal(&g, &SubgroupSet::trivial(&g)));
        assert_eq!(normalizer(&g, &d10).len(), 10);
    }

    #[test]
    fn radicals() {
        let g = a5();
        let cache = VerdictCache::new();
        assert!(solvable_radical(&g, &cache).unwrap().is_trivial());
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        assert_eq!(solvable_radical(&s4, &VerdictCache::new()).unwrap().len(), 24);
        let a5c2 = group(7, &["(1 2 3 4 5)", "(1 2 3)", "(6 7)"]);
        let r = solvable_radical(&a5c2, &VerdictCache::new()).unwrap();
        assert_eq!(r.members(), &[0, idx(&a5c2, "(6 7)")]);
    }

    #[test]
    fn validate_radical_rejects_garbage() {
        let g = a5();
        let x = idx(&g, "(1 2 3)");
        assert!(matches!(
            validate_radical(&g, &[0, x]),
            Err(Error::InvariantViolation(_))
        ));
        let a4 = closure(&g, &[x, idx(&g, "(1 2)(3 4)")]);
        assert!(matches!(
            validate_radical(&g, a4.members()),
            Err(Error::InvariantViolation(_))
        ));
        assert!(matches!(
            validate_radical(&g, &(0..60).collect::<Vec<_>>()),
            Err(Error::InvariantViolation(_))
        ));
    }

    #[test]
    fn quotients() {
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        let v4 = normal_closure(&s4, &[idx(&s4, "(1 2)(3 4)")]);
        assert_eq!(v4.len(), 4);
        let q = quotient_group(&s4, &v4).unwrap();
        assert_eq!(q.group.order(), 6);
        assert!(!q.group.is_abelian());
        for (c, &r) in q.representatives.iter().enumerate() {
            assert_eq!(q.coset_of[r], c);
        }
        for x in 0..24 {
            for y in 0..24 {
                assert_eq!(
                    q.coset_of[s4.mul(x, y)],
                    q.group.mul(q.coset_of[x], q.coset_of[y])
                );
            }
        }
        let same = quotient_group(&s4, &SubgroupSet::trivial(&s4)).unwrap();
        assert_eq!(same.group.order(), 24);
        let mut sizes: Vec<_> = same
            .group
            .conjugacy_classes()
            .classes
            .iter()
            .map(Vec::len)
            .collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert_eq!(
            quotient_group(&s4, &SubgroupSet::whole(&s4))
                .unwrap()
                .group
                .order(),
            1
        );
        let s3 = closure(&s4, &[idx(&s4, "(1 2 3)"), idx(&s4, "(1 2)")]);
        assert!(matches!(quotient_group(&s4, &s3), Err(Error::Precondition(_))));
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        let sizes: Vec<_> = normal_subgroups_within(&s4, &SubgroupSet::whole(&s4))
            .iter()
            .map(SubgroupSet::len)
            .collect();
        assert_eq!(sizes, vec![1, 4, 12, 24]);
    }

    #[test]
    fn standalone_subgroup() {
        let g = a5();
        let d10 = closure(&g, &[idx(&g, "(1 2 3 4 5)"), idx(&g, "(2 5)(3 4)")]);
        let (h, embed) = subgroup_as_group(&g, &d10).unwrap();
        assert_eq!(h.order(), 10);
        for a in 0..10 {
            for b in 0..10 {
                assert_eq!(embed[h.mul(a, b)], g.mul(embed[a], embed[b]));
            }
        }
    }

    #[test]
    fn derived_series_strictly_decreases() {
        let s5 = group(5, &["(1 2 3 4 5)", "(1 2)"]);
        for x in (0..s5.order()).step_by(7) {
            for y in (0..s5.order()).step_by(5) {
                let s = two_generated(&s5, x, y);
                assert_eq!(120 % s.len(), 0);
                let series = derived_series(&s5, &s);
                for w in series.windows(2) {
                    assert!(w[1].len() < w[0].len());
                    assert!(w[1].is_subset(&w[0]));
                }
            }
        }
    }
}
