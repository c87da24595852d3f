//! Finite abstract groups given by multiplication tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Dimension("group table must be square with entries below its size".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::Precondition("group table has no identity".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == identity) {
                return Err(Error::Precondition(format!("element {a} has no inverse")));
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Precondition(format!(
                            "table is not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, identity, name: None })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup { table, identity: 0, name: Some(format!("Z{n}")) }
    }

    /// S₃ on permutations of {0,1,2} in lexicographic order, (στ)(i) = σ(τ(i)).
    pub fn symmetric3() -> FiniteGroup {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
        let table = perms
            .iter()
            .map(|s| perms.iter().map(|t| idx([s[t[0]], s[t[1]], s[t[2]]])).collect())
            .collect();
        FiniteGroup { table, identity: 0, name: Some("S3".into()) }
    }

    /// G × H with index i·|H| + j.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (g.order(), h.order());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| g.table[x / m][y / m] * m + h.table[x % m][y % m])
                    .collect()
            })
            .collect();
        FiniteGroup { table, identity: g.identity * m + h.identity, name: None }
    }

    /// Named groups: `S3`, `Z<n>`, `V4`.
    pub fn named(name: &str) -> Result<FiniteGroup> {
        match name {
            "S3" => Ok(FiniteGroup::symmetric3()),
            "V4" => Ok(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
                .with_name("V4")),
            _ => {
                let n = name
                    .strip_prefix('Z')
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| Error::Parse(format!("unknown group name {name:?}")))?;
                Ok(FiniteGroup::cyclic(n))
            }
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == self.identity).expect("inverse")
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.table[x][a];
            k += 1;
        }
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_groups_validate() {
        for name in ["S3", "Z1", "Z6", "V4"] {
            let g = FiniteGroup::named(name).unwrap();
            assert_eq!(FiniteGroup::from_table(g.table.clone()).unwrap().identity, g.identity);
        }
        let s3 = FiniteGroup::symmetric3();
        assert!(!s3.is_abelian());
        assert_eq!((0..6).map(|a| s3.element_order(a)).collect::<Vec<_>>(), vec![1, 2, 2, 3, 3, 2]);
        assert!(FiniteGroup::named("Q8").is_err());
    }

    #[test]
    fn rejects_non_groups() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![0, 1]]).is_err());
    }
}
