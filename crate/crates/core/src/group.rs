//! Fully enumerated finite permutation groups.
//!
//! Elements are indexed in breadth-first order from the identity (index 0)
//! over the generator list, and the whole Cayley table is kept in memory.
//! Everything downstream works on element indices.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on the group order accepted by [`FiniteGroup::generate`].
pub const DEFAULT_GUARD: usize = 2000;

pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    generator_indices: Vec<usize>,
    elements: Vec<Permutation>,
    index_of: HashMap<Permutation, usize>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
    classes: OnceLock<ConjugacyClasses>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementInfo {
    pub index: usize,
    pub order: usize,
    pub centralizer_size: usize,
    pub class_id: usize,
    pub cyclic_subgroup: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    /// Classes ordered by their least member; members sorted.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// `transversal[z]` conjugates the least member `l` of z's class onto z:
    /// `t l t^-1 = z`.
    transversal: Vec<u32>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn leader(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    /// An element `t` with `t * leader * t^-1 = z`.
    pub fn conjugator_from_leader(&self, z: usize) -> usize {
        self.transversal[z] as usize
    }
}

impl FiniteGroup {
    /// Breadth-first closure of `generators` starting at the identity.
    pub fn generate(degree: usize, generators: &[Permutation], guard: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Precondition("degree must be at least 1".into()));
        }
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let identity = Permutation::identity(degree);
        let mut index_of = HashMap::new();
        index_of.insert(identity.clone(), 0);
        let mut elements = vec![identity];
        let mut i = 0;
        while i < elements.len() {
            for g in generators {
                let y = elements[i].compose_unchecked(g);
                if !index_of.contains_key(&y) {
                    if elements.len() == guard {
                        return Err(Error::GuardExceeded { guard });
                    }
                    index_of.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
            i += 1;
        }
        Self::assemble(degree, generators.to_vec(), elements, index_of)
    }

    /// Builds a group from an explicit element list. `elements[0]` must be
    /// the identity and `generators` must generate exactly `elements`.
    pub fn from_elements(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
    ) -> Result<Self> {
        if elements.first().is_none_or(|e| !e.is_identity()) {
            return Err(Error::Precondition(
                "element list must start with the identity".into(),
            ));
        }
        let mut index_of = HashMap::with_capacity(elements.len());
        for (k, e) in elements.iter().enumerate() {
            if e.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: e.degree(),
                });
            }
            if index_of.insert(e.clone(), k).is_some() {
                return Err(Error::Precondition(format!("duplicate element {e}")));
            }
        }
        Self::assemble(degree, generators, elements, index_of)
    }

    fn assemble(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
        index_of: HashMap<Permutation, usize>,
    ) -> Result<Self> {
        let n = elements.len();
        let k = generators.len();
        let mut generator_indices = Vec::with_capacity(k);
        for g in &generators {
            let idx = index_of
                .get(g)
                .copied()
                .ok_or_else(|| Error::Precondition(format!("generator {g} is not among the elements")))?;
            generator_indices.push(idx);
        }
        // right multiplication by each generator
        let mut right = vec![0u32; n * k];
        for (x, e) in elements.iter().enumerate() {
            for (j, g) in generators.iter().enumerate() {
                let y = index_of
                    .get(&e.compose_unchecked(g))
                    .ok_or_else(|| Error::Precondition("element list is not closed under products".into()))?;
                right[x * k + j] = *y as u32;
            }
        }
        // spanning tree of the Cayley graph: y = parent * gen
        let mut parent: Vec<Option<(u32, u32)>> = vec![None; n];
        let mut order = Vec::with_capacity(n);
        let mut seen = FixedBitSet::with_capacity(n);
        seen.insert(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for j in 0..k {
                let y = right[x * k + j] as usize;
                if !seen.put(y) {
                    parent[y] = Some((x as u32, j as u32));
                    queue.push_back(y);
                }
            }
        }
        if order.len() != n {
            return Err(Error::Precondition(
                "generators do not generate the element list".into(),
            ));
        }
        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            let row = &mut mul[x * n..(x + 1) * n];
            row[0] = x as u32;
            for &y in &order[1..] {
                let (w, j) = parent[y].expect("non-root vertex has a parent");
                row[y] = right[row[w as usize] as usize * k + j as usize];
            }
        }
        let mut inv = vec![0u32; n];
        for x in 0..n {
            let y = mul[x * n..(x + 1) * n]
                .iter()
                .position(|&z| z == 0)
                .expect("every row of a group table contains the identity");
            inv[x] = y as u32;
        }
        let orders = elements.iter().map(|e| e.order() as u32).collect();
        Ok(FiniteGroup {
            degree,
            generators,
            generator_indices,
            elements,
            index_of,
            mul,
            inv,
            orders,
            classes: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, x: usize) -> &Permutation {
        &self.elements[x]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index_of.get(p).copied()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.elements.len() + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `x^-1 y^-1 x y`.
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn pow(&self, x: usize, e: usize) -> usize {
        (0..e).fold(0, |acc, _| self.mul(acc, x))
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.orders[x] as usize
    }

    pub fn max_element_order(&self) -> usize {
        self.orders.iter().copied().max().unwrap_or(1) as usize
    }

    /// Sorted members of `<x>`.
    pub fn cyclic_subgroup(&self, x: usize) -> Vec<usize> {
        let mut out = self.powers(x);
        out.sort_unstable();
        out
    }

    /// `[1, x, x^2, ...]` up to `x^(o(x)-1)`.
    pub fn powers(&self, x: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.element_order(x));
        let mut p = 0;
        loop {
            out.push(p);
            p = self.mul(p, x);
            if p == 0 {
                return out;
            }
        }
    }

    pub fn label(&self, x: usize) -> String {
        self.elements[x].to_string()
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generator_indices;
        g.iter()
            .all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn conjugacy_classes(&self) -> &ConjugacyClasses {
        self.classes.get_or_init(|| self.compute_classes())
    }

    fn compute_classes(&self) -> ConjugacyClasses {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut transversal = vec![0u32; n];
        let mut classes = Vec::new();
        for leader in 0..n {
            if class_of[leader] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[leader] = id;
            let mut members = vec![leader];
            let mut i = 0;
            while i < members.len() {
                let z = members[i];
                for &g in &self.generator_indices {
                    let w = self.conjugate(g, z);
                    if class_of[w] == usize::MAX {
                        class_of[w] = id;
                        transversal[w] = self.mul(g, transversal[z] as usize) as u32;
                        members.push(w);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        ConjugacyClasses {
            classes,
            class_of,
            transversal,
        }
    }

    /// `{g : g x = x g}` by direct scan.
    pub fn centralizer(&self, x: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&g| self.mul(g, x) == self.mul(x, g))
            .collect()
    }

    /// `{g : g <x> g^-1 = <x>}` by direct scan. Since conjugation preserves
    /// order, it suffices that `g x g^-1` lands in `<x>`.
    pub fn normalizer_of_cyclic(&self, x: usize) -> Vec<usize> {
        let mut cyclic = FixedBitSet::with_capacity(self.order());
        for p in self.powers(x) {
            cyclic.insert(p);
        }
        (0..self.order())
            .filter(|&g| cyclic.contains(self.conjugate(g, x)))
            .collect()
    }

    pub fn element_info(&self, x: usize) -> ElementInfo {
        let classes = self.conjugacy_classes();
        let class_id = classes.class_of[x];
        ElementInfo {
            index: x,
            order: self.element_order(x),
            centralizer_size: self.order() / classes.classes[class_id].len(),
            class_id,
            cyclic_subgroup: self.cyclic_subgroup(x),
        }
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Parses a generator file: a `degree N` line followed by one permutation
/// per line in cycle notation. `#` starts a comment; blank lines are ignored.
pub fn parse_generator_file(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match degree {
            None => {
                let n = line
                    .strip_prefix("degree")
                    .and_then(|r| r.trim().parse::<usize>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| {
                        Error::Parse(format!(
                            "line {}: expected `degree N` header, found `{line}`",
                            lineno + 1
                        ))
                    })?;
                degree = Some(n);
            }
            Some(n) => gens.push(
                Permutation::parse(line, n).map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?,
            ),
        }
    }
    let degree = degree.ok_or_else(|| Error::Parse("missing `degree N` header".into()))?;
    Ok((degree, gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(degree: usize, gens: &[&str]) -> FiniteGroup {
        let gens: Vec<_> = gens
            .iter()
            .map(|s| Permutation::parse(s, degree).unwrap())
            .collect();
        FiniteGroup::generate(degree, &gens, DEFAULT_GUARD).unwrap()
    }

    fn a5() -> FiniteGroup {
        group(5, &["(1 2 3 4 5)", "(1 2 3)"])
    }

    fn idx(g: &FiniteGroup, s: &str) -> usize {
        g.index_of(&Permutation::parse(s, g.degree()).unwrap()).unwrap()
    }

    #[test]
    fn generate_small_groups() {
        assert_eq!(a5().order(), 60);
        let trivial = FiniteGroup::generate(1, &[], DEFAULT_GUARD).unwrap();
        assert_eq!(trivial.order(), 1);
        let v4 = group(4, &["(1 2)", "(3 4)"]);
        assert_eq!(v4.order(), 4);
        assert!((0..4).all(|x| v4.inv(x) == x));
        assert!(v4.is_abelian());
    }

    #[test]
    fn guard_is_enforced() {
        let gens = [
            Permutation::parse("(1 2 3 4 5)", 5).unwrap(),
            Permutation::parse("(1 2)", 5).unwrap(),
        ];
        assert!(matches!(
            FiniteGroup::generate(5, &gens, 100),
            Err(Error::GuardExceeded { guard: 100 })
        ));
        assert_eq!(FiniteGroup::generate(5, &gens, 120).unwrap().order(), 120);
    }

    #[test]
    fn table_matches_permutation_products() {
        let g = group(4, &["(1 2 3 4)", "(1 2)"]);
        for x in 0..g.order() {
            for y in 0..g.order() {
                let p = g.element(x).compose(g.element(y)).unwrap();
                assert_eq!(g.index_of(&p), Some(g.mul(x, y)));
            }
            assert!(g.element(g.inv(x)).compose(g.element(x)).unwrap().is_identity());
        }
    }

    #[test]
    fn regenerating_from_all_elements_is_idempotent() {
        let g = a5();
        let again = FiniteGroup::generate(5, g.elements(), DEFAULT_GUARD).unwrap();
        assert_eq!(again.order(), g.order());
    }

    #[test]
    fn a5_classes() {
        let g = a5();
        let classes = g.conjugacy_classes();
        let mut sizes: Vec<_> = classes.classes.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
        assert_eq!(classes.classes[0], vec![0]);
        for class in &classes.classes {
            let o = g.element_order(class[0]);
            assert!(class.iter().all(|&z| g.element_order(z) == o));
        }
        for z in 0..g.order() {
            let l = classes.leader(classes.class_of[z]);
            let t = classes.conjugator_from_leader(z);
            assert_eq!(g.conjugate(t, l), z);
        }
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let g = group(4, &["(1 2)", "(3 4)"]);
        assert_eq!(g.conjugacy_classes().len(), 4);
        let t = FiniteGroup::generate(1, &[], DEFAULT_GUARD).unwrap();
        assert_eq!(t.conjugacy_classes().classes, vec![vec![0]]);
    }

    #[test]
    fn centralizers_and_normalizers_in_a5() {
        let g = a5();
        let five = idx(&g, "(1 2 3 4 5)");
        let three = idx(&g, "(1 2 3)");
        assert_eq!(g.centralizer(five), g.cyclic_subgroup(five));
        assert_eq!(g.normalizer_of_cyclic(five).len(), 10);
        assert_eq!(g.normalizer_of_cyclic(three).len(), 6);
        assert_eq!(g.centralizer(0).len(), 60);
        assert_eq!(g.normalizer_of_cyclic(0).len(), 60);
        for x in 0..g.order() {
            let info = g.element_info(x);
            assert_eq!(info.centralizer_size, g.centralizer(x).len());
            assert_eq!(info.cyclic_subgroup.len(), info.order);
            assert_eq!(60 % info.order, 0);
        }
    }

    #[test]
    fn abelian_centralizer_is_everything() {
        let g = group(6, &["(1 2 3 4 5 6)"]);
        assert!((0..6).all(|x| g.centralizer(x).len() == 6));
    }

    #[test]
    fn centralizer_and_normalizer_are_subgroups() {
        let g = group(5, &["(1 2 3 4 5)", "(1 2)"]);
        for x in 0..g.order() {
            let c = g.centralizer(x);
            let nrm = g.normalizer_of_cyclic(x);
            for set in [&c, &nrm] {
                for &a in set.iter() {
                    assert!(set.binary_search(&g.inv(a)).is_ok());
                    for &b in set.iter() {
                        assert!(set.binary_search(&g.mul(a, b)).is_ok());
                    }
                }
            }
            assert!(c.iter().all(|z| nrm.binary_search(z).is_ok()));
        }
    }

    #[test]
    fn conjugation_preserves_order() {
        let g = a5();
        for x in 0..g.order() {
            for h in 0..g.order() {
                assert_eq!(g.element_order(g.conjugate(h, x)), g.element_order(x));
            }
        }
    }

    #[test]
    fn from_elements_rejects_non_closed_lists() {
        let d = 3;
        let id = Permutation::identity(d);
        let t = Permutation::parse("(1 2 3)", d).unwrap();
        let err = FiniteGroup::from_elements(d, vec![t.clone()], vec![id, t]);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn generator_file() {
        let text = "# A5\n degree 5 \n(1 2 3 4 5)  # five-cycle\n\n(1,2,3)\n";
        let (n, gens) = parse_generator_file(text).unwrap();
        assert_eq!(n, 5);
        assert_eq!(gens.len(), 2);
        assert!(parse_generator_file("(1 2)\n").is_err());
        assert!(parse_generator_file("degree 3\n(1 4)\n").is_err());
        assert!(parse_generator_file("# nothing\n").is_err());
    }
}
