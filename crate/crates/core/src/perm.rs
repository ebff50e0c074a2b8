//! Permutations on points `1..=degree`, stored 0-based.
//!
//! Products are composed left to right: `a.compose(&b)` applies `a` first,
//! then `b`. Every product in the crate follows this convention, including
//! conjugates `g x g^-1`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &p in &images {
            let p = p as usize;
            if p >= n {
                return Err(Error::PointOutOfRange {
                    point: p + 1,
                    degree: n,
                });
            }
            if seen[p] {
                return Err(Error::RepeatedPoint(p + 1));
            }
            seen[p] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Parses disjoint-cycle notation such as `(1 2 3)(4 5)`. Commas may
    /// separate points. `()` or an empty string is the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Parse("degree must be at least 1".into()));
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_end = match (rest.strip_prefix('('), rest.find(')')) {
                (Some(_), Some(end)) => end,
                _ => return Err(Error::Parse(format!("malformed cycle notation `{text}`"))),
            };
            let body = &rest[1..body_end];
            if body.contains('(') {
                return Err(Error::Parse(format!("nested parenthesis in `{text}`")));
            }
            let mut points = Vec::new();
            for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let p: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point `{tok}` in `{text}`")))?;
                if p == 0 || p > degree {
                    return Err(Error::PointOutOfRange { point: p, degree });
                }
                if std::mem::replace(&mut seen[p - 1], true) {
                    return Err(Error::RepeatedPoint(p));
                }
                points.push(p - 1);
            }
            for (i, &p) in points.iter().enumerate() {
                images[p] = points[(i + 1) % points.len()] as u32;
            }
            rest = rest[body_end + 1..].trim_start();
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image table.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    /// Product applying `self` first: `i -> other(self(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&p| other.images[p as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// Non-trivial cycles, each starting at its least point, 0-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start] as usize;
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least `k >= 1` with `self^k` the identity: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn one_based(perm: &Permutation) -> Vec<usize> {
        (1..=perm.degree()).map(|i| perm.apply(i)).collect()
    }

    #[test]
    fn parse_cycle_expansion() {
        assert_eq!(one_based(&p("(1 2 3)(4 5)", 5)), vec![2, 3, 1, 5, 4]);
        assert_eq!(one_based(&p("()", 4)), vec![1, 2, 3, 4]);
        assert_eq!(one_based(&p("", 3)), vec![1, 2, 3]);
        assert_eq!(one_based(&p("(1,3)", 3)), vec![3, 2, 1]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Permutation::parse("(1 2)(2 3)", 3),
            Err(Error::RepeatedPoint(2))
        ));
        assert!(matches!(
            Permutation::parse("(1 1)", 3),
            Err(Error::RepeatedPoint(1))
        ));
        assert!(matches!(
            Permutation::parse("(1 4)", 3),
            Err(Error::PointOutOfRange { point: 4, degree: 3 })
        ));
        assert!(matches!(Permutation::parse("(1 2", 3), Err(Error::Parse(_))));
        assert!(matches!(Permutation::parse("1 2)", 3), Err(Error::Parse(_))));
        assert!(matches!(Permutation::parse("(1 x)", 3), Err(Error::Parse(_))));
        assert!(matches!(Permutation::parse("()", 0), Err(Error::Parse(_))));
    }

    #[test]
    fn compose_applies_left_first() {
        let ab = p("(1 2)", 3).compose(&p("(2 3)", 3)).unwrap();
        assert_eq!(ab, p("(1 3 2)", 3));
        let b = p("(1 3)(2 4)", 4);
        assert_eq!(Permutation::identity(4).compose(&b).unwrap(), b);
        assert!(p("(1 2 3)", 3).compose(&p("(1 3 2)", 3)).unwrap().is_identity());
        assert!(matches!(
            p("(1 2)", 2).compose(&p("(1 2)", 3)),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn orders() {
        assert_eq!(p("(1 2 3 4 5)", 5).order(), 5);
        assert_eq!(p("(1 2)(3 4 5)", 5).order(), 6);
        assert_eq!(Permutation::identity(7).order(), 1);
    }

    #[test]
    fn display_round_trip() {
        let x = p("(4 5)(1 2 3)", 6);
        assert_eq!(x.to_string(), "(1 2 3)(4 5)");
        assert_eq!(Permutation::identity(2).to_string(), "()");
    }

    fn arb_perm() -> impl Strategy<Value = Permutation> {
        (1usize..12)
            .prop_flat_map(|n| Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_cancels(a in arb_perm()) {
            prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
            prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
        }

        #[test]
        fn order_is_least_power(a in arb_perm()) {
            let k = a.order();
            let mut q = Permutation::identity(a.degree());
            for i in 1..=k {
                q = q.compose(&a).unwrap();
                prop_assert_eq!(q.is_identity(), i == k);
            }
        }

        #[test]
        fn display_parses_back(a in arb_perm()) {
            prop_assert_eq!(Permutation::parse(&a.to_string(), a.degree()).unwrap(), a);
        }
    }
}
