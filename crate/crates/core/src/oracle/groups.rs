//! Abstract finite groups: identification and subgroup lattices.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rings::factorize;

/// Largest group order accepted by [`subgroup_lattice`].
pub const LATTICE_BOUND: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupTag {
    Cyclic { n: usize },
    /// Non-cyclic abelian, by invariant factors.
    Product { factors: Vec<usize> },
    S3,
    Other { exponent: usize, abelian: bool, center: usize },
}

impl std::fmt::Display for GroupTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupTag::Cyclic { n } => write!(f, "Z/{n}"),
            GroupTag::Product { factors } => {
                let parts: Vec<String> = factors.iter().map(|n| format!("Z/{n}")).collect();
                f.write_str(&parts.join(" x "))
            }
            GroupTag::S3 => f.write_str("S3"),
            GroupTag::Other { exponent, abelian, center } => {
                write!(f, "group of exponent {exponent} (abelian: {abelian}, center {center})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbstractGroup {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl AbstractGroup {
    pub fn new(table: Vec<Vec<usize>>) -> Result<AbstractGroup> {
        let n = table.len();
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::Internal("table has no identity".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == identity) {
                return Err(Error::Internal(format!("element {a} has no inverse")));
            }
            for b in 0..n {
                if (0..n).any(|c| table[table[a][b]][c] != table[a][table[b][c]]) {
                    return Err(Error::Internal("table is not associative".into()));
                }
            }
        }
        Ok(AbstractGroup { order: n, table, identity })
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let (mut x, mut k) = (a, 1);
        while x != self.identity {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    pub fn center_size(&self) -> usize {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.table[a][b] == self.table[b][a]))
            .count()
    }

    /// Invariant factors of an abelian group, from the counts of elements
    /// of each order in each primary component.
    fn invariant_factors(&self) -> Vec<usize> {
        let mut per_prime: Vec<Vec<usize>> = Vec::new();
        for (p, _) in factorize(self.order as u64) {
            let p = p as usize;
            let torsion = |k: u32| {
                (0..self.order).filter(|&a| p.pow(k) % self.element_order(a) == 0).count()
            };
            let mut k = 1;
            let mut ranks = Vec::new();
            let mut prev = 1;
            loop {
                let t = torsion(k);
                if t == prev {
                    break;
                }
                ranks.push(ilog(t / prev, p));
                prev = t;
                k += 1;
            }
            // ranks[k-1] = number of cyclic factors of order ≥ p^k
            let mut exps = Vec::new();
            for (i, &r) in ranks.iter().enumerate() {
                let next = ranks.get(i + 1).copied().unwrap_or(0);
                for _ in 0..(r - next) {
                    exps.push(p.pow(i as u32 + 1));
                }
            }
            exps.sort_unstable_by(|a, b| b.cmp(a));
            per_prime.push(exps);
        }
        let len = per_prime.iter().map(Vec::len).max().unwrap_or(0);
        let mut factors: Vec<usize> = (0..len)
            .map(|i| per_prime.iter().map(|v| v.get(i).copied().unwrap_or(1)).product())
            .collect();
        factors.reverse();
        factors
    }

    pub fn identify(&self) -> GroupTag {
        if self.is_abelian() {
            let factors = self.invariant_factors();
            if factors.len() <= 1 {
                return GroupTag::Cyclic { n: self.order };
            }
            return GroupTag::Product { factors };
        }
        if self.order == 6 {
            return GroupTag::S3;
        }
        GroupTag::Other { exponent: self.exponent(), abelian: false, center: self.center_size() }
    }

    pub fn closure(&self, gens: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut frontier: Vec<usize> = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.table[x][g];
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    pub fn is_normal_subset(&self, h: &BTreeSet<usize>) -> bool {
        let inv = |a: usize| (0..self.order).find(|&b| self.table[a][b] == self.identity).expect("inverse");
        (0..self.order).all(|g| h.iter().all(|&x| h.contains(&self.table[self.table[g][x]][inv(g)])))
    }
}

fn ilog(mut x: usize, p: usize) -> usize {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupEntry {
    pub elements: Vec<usize>,
    pub order: usize,
    pub normal: bool,
    /// The prime p when this is a p-Sylow subgroup.
    pub sylow: Option<u64>,
}

/// All subgroups, sorted by order and then by element list, with a
/// Sylow self-check.
pub fn subgroup_lattice(a: &AbstractGroup) -> Result<Vec<SubgroupEntry>> {
    if a.order > LATTICE_BOUND {
        return Err(Error::Budget(format!("group order {} exceeds the lattice bound {LATTICE_BOUND}", a.order)));
    }
    let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let trivial = BTreeSet::from([a.identity]);
    let mut queue = vec![trivial.clone()];
    found.insert(trivial);
    while let Some(h) = queue.pop() {
        for g in 0..a.order {
            if h.contains(&g) {
                continue;
            }
            let mut gens = h.clone();
            gens.insert(g);
            let k = a.closure(&gens);
            if found.insert(k.clone()) {
                queue.push(k);
            }
        }
    }
    let primes = factorize(a.order as u64);
    let mut out: Vec<SubgroupEntry> = found
        .into_iter()
        .map(|h| {
            let order = h.len();
            let sylow = primes
                .iter()
                .find(|(p, e)| order == (*p as usize).pow(*e))
                .map(|(p, _)| *p);
            SubgroupEntry { normal: a.is_normal_subset(&h), elements: h.into_iter().collect(), order, sylow }
        })
        .collect();
    out.sort_by(|x, y| (x.order, &x.elements).cmp(&(y.order, &y.elements)));
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for s in &out {
        if let Some(p) = s.sylow {
            *counts.entry(p).or_default() += 1;
        }
    }
    for (p, e) in &primes {
        let n = counts.get(p).copied().unwrap_or(0);
        let index = a.order / (*p as usize).pow(*e);
        if n % *p as usize != 1 || index % n != 0 {
            return Err(Error::Internal(format!("{n} Sylow {p}-subgroups contradicts Sylow's theorems")));
        }
    }
    Ok(out)
}

/// Subgroups of a given order.
pub fn subgroups_of_order(lattice: &[SubgroupEntry], d: usize) -> Vec<&SubgroupEntry> {
    lattice.iter().filter(|s| s.order == d).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn abstract_of(g: &FiniteGroup) -> AbstractGroup {
        AbstractGroup::new(g.table.clone()).unwrap()
    }

    #[test]
    fn lattices() {
        let z6 = abstract_of(&FiniteGroup::cyclic(6));
        let l = subgroup_lattice(&z6).unwrap();
        assert_eq!(l.len(), 4);
        assert!(l.iter().all(|s| s.normal));
        let s3 = abstract_of(&FiniteGroup::symmetric3());
        let l = subgroup_lattice(&s3).unwrap();
        assert_eq!(l.len(), 6);
        let syl3: Vec<_> = l.iter().filter(|s| s.sylow == Some(3)).collect();
        let syl2: Vec<_> = l.iter().filter(|s| s.sylow == Some(2)).collect();
        assert_eq!((syl3.len(), syl2.len()), (1, 3));
        assert!(syl3[0].normal && syl2.iter().all(|s| !s.normal));
        let one = abstract_of(&FiniteGroup::cyclic(1));
        assert_eq!(subgroup_lattice(&one).unwrap().len(), 1);
        let big = abstract_of(&FiniteGroup::cyclic(65));
        assert!(subgroup_lattice(&big).is_err());
    }

    #[test]
    fn identification() {
        assert_eq!(abstract_of(&FiniteGroup::cyclic(6)).identify(), GroupTag::Cyclic { n: 6 });
        assert_eq!(abstract_of(&FiniteGroup::symmetric3()).identify(), GroupTag::S3);
        let v4 = abstract_of(&FiniteGroup::named("V4").unwrap());
        assert_eq!(v4.identify(), GroupTag::Product { factors: vec![2, 2] });
        let z2z4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4));
        assert_eq!(abstract_of(&z2z4).identify(), GroupTag::Product { factors: vec![2, 4] });
        let z2z6 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(6));
        assert_eq!(abstract_of(&z2z6).identify(), GroupTag::Product { factors: vec![2, 6] });
        let s3z2 = FiniteGroup::direct_product(&FiniteGroup::symmetric3(), &FiniteGroup::cyclic(2));
        assert_eq!(
            abstract_of(&s3z2).identify(),
            GroupTag::Other { exponent: 6, abelian: false, center: 2 }
        );
    }
}
