use super::ConstructionError;

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// `table[g][h] = g·h`. Checks closure, identity, inverses and
    /// associativity.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, ConstructionError> {
        let n = names.len();
        if n == 0 {
            return Err(ConstructionError::Group("no elements".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(ConstructionError::Group("table is not a square table over the elements".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| ConstructionError::Group("no identity".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| ConstructionError::Group(format!("{} has no inverse", names[g])))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(ConstructionError::Group(format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(Self {
            names,
            table,
            identity,
            inverse,
        })
    }

    /// `Z_n` with elements `e, g, g2, …`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(names, table).expect("cyclic group")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// A left action `g·p` of a finite group on a finite set of points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    points: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl GroupAction {
    /// `table[g][p] = g·p`. Checks that the identity fixes everything and
    /// that `(gh)·p = g·(h·p)`.
    pub fn new(group: FiniteGroup, points: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, ConstructionError> {
        let (n, k) = (group.order(), points.len());
        if table.len() != n || table.iter().any(|r| r.len() != k || r.iter().any(|&v| v >= k)) {
            return Err(ConstructionError::Action("table must map every element and point to a point".into()));
        }
        let e = group.identity();
        if let Some(p) = (0..k).find(|&p| table[e][p] != p) {
            return Err(ConstructionError::Action(format!("identity moves {}", points[p])));
        }
        for g in 0..n {
            for h in 0..n {
                for p in 0..k {
                    if table[group.mul(g, h)][p] != table[g][table[h][p]] {
                        return Err(ConstructionError::Action(format!(
                            "({}{})·{} ≠ {}·({}·{})",
                            group.name(g),
                            group.name(h),
                            points[p],
                            group.name(g),
                            group.name(h),
                            points[p]
                        )));
                    }
                }
            }
        }
        Ok(Self { group, points, table })
    }

    pub fn trivial(group: FiniteGroup, points: Vec<String>) -> Self {
        let table = vec![(0..points.len()).collect(); group.order()];
        Self::new(group, points, table).expect("trivial action")
    }

    /// The action of a group on itself by left multiplication.
    pub fn regular(group: FiniteGroup) -> Self {
        let points = group.names().to_vec();
        let table = group.table().to_vec();
        Self::new(group, points, table).expect("regular action")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn act(&self, g: usize, p: usize) -> usize {
        self.table[g][p]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}
