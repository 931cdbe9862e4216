//! Finite groups given by multiplication tables, and their l1 group algebras.

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Cayley table of a finite group: `table[g][h]` is the index of `gh`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    #[serde(alias = "labels")]
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl GroupTable {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let g = GroupTable { elements, table };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.elements.len();
        if n == 0 {
            return Err(Error::Invariant("a group has at least one element".into()));
        }
        if self.table.len() != n || self.table.iter().any(|r| r.len() != n) {
            return Err(Error::Invariant(format!("multiplication table must be {n} x {n}")));
        }
        if self.table.iter().flatten().any(|&k| k >= n) {
            return Err(Error::Invariant("table entry out of range".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return Err(Error::Invariant(format!(
                            "table is not associative on ({}, {}, {})",
                            self.elements[a], self.elements[b], self.elements[c]
                        )));
                    }
                }
            }
        }
        let e = self.find_identity().ok_or_else(|| Error::Invariant("table has no identity".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| self.table[a][b] == e && self.table[b][a] == e) {
                return Err(Error::Invariant(format!("`{}` has no inverse", self.elements[a])));
            }
        }
        Ok(())
    }

    fn find_identity(&self) -> Option<usize> {
        let n = self.elements.len();
        (0..n).find(|&e| (0..n).all(|a| self.table[e][a] == a && self.table[a][e] == a))
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.find_identity().expect("validated group")
    }

    pub fn inverse(&self, g: usize) -> usize {
        let e = self.identity();
        (0..self.order()).find(|&h| self.table[g][h] == e).expect("validated group")
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Cyclic group `C_n` with elements `g^0, ..., g^{n-1}`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order zero");
        let elements = (0..n).map(|k| if k == 0 { "e".to_string() } else { format!("g{k}") }).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable { elements, table }
    }

    /// Symmetric group `S_n` on permutations in lexicographic order; `(pq)(x) = p(q(x))`.
    pub fn symmetric(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
        loop {
            let mut p = perms.last().expect("non-empty").clone();
            // next lexicographic permutation
            let Some(i) = (0..p.len().saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
                break;
            };
            let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).expect("successor exists");
            p.swap(i, j);
            p[i + 1..].reverse();
            perms.push(p);
        }
        let index = |p: &Vec<usize>| perms.iter().position(|x| x == p).expect("closed");
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index(&q.iter().map(|&x| p[x]).collect()))
                    .collect()
            })
            .collect();
        let elements = perms
            .iter()
            .map(|p| {
                if p.iter().enumerate().all(|(i, &x)| i == x) {
                    "e".to_string()
                } else {
                    format!("[{}]", p.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(""))
                }
            })
            .collect();
        GroupTable { elements, table }
    }

    /// Direct product `G x H`, element `(g, h)` at index `g * |H| + h`.
    pub fn product(&self, other: &GroupTable) -> Self {
        let (n, m) = (self.order(), other.order());
        let elements = (0..n * m)
            .map(|k| format!("({},{})", self.elements[k / m], other.elements[k % m]))
            .collect();
        let table = (0..n * m)
            .map(|a| {
                (0..n * m)
                    .map(|b| self.table[a / m][b / m] * m + other.table[a % m][b % m])
                    .collect()
            })
            .collect();
        GroupTable { elements, table }
    }

    /// Relabels elements by a permutation: new index `perm[old]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.order();
        assert_eq!(perm.len(), n);
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let elements = (0..n).map(|new| self.elements[inv[new]].clone()).collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| perm[self.table[inv[a]][inv[b]]]).collect())
            .collect();
        GroupTable { elements, table }
    }

    /// `l1(G)` with basis `delta_g`, unit weights and unit `delta_e`.
    pub fn algebra<S: Scalar>(&self) -> AlgebraPresentation<S> {
        let n = self.order();
        let mut table = vec![Vec::new(); n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = vec![(self.table[a][b], S::one())];
            }
        }
        let mut unit = vec![S::zero(); n];
        unit[self.identity()] = S::one();
        AlgebraPresentation::from_trusted_table(
            None,
            self.elements.iter().map(|g| format!("d[{g}]")).collect(),
            vec![S::one(); n],
            table,
            Some(unit),
            crate::scalar::DEFAULT_FLOAT_TOL,
        )
    }
}
