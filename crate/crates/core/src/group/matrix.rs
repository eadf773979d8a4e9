use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// Symmetric matrix of pairwise orders `m_rs`; `None` stands for infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    names: Vec<String>,
    // row-major, 0 encodes infinity
    entries: Vec<u32>,
}

impl CoxeterMatrix {
    /// Builds a matrix from generator names and rows in file encoding (0 = infinity).
    pub fn new(names: Vec<String>, rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Invalid("Coxeter matrix needs at least one generator".into()));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() || name.contains('.') || name.contains(char::is_whitespace) {
                return Err(Error::Invalid(format!("bad generator name `{name}`")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::Invalid(format!("duplicate generator name `{name}`")));
            }
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(format!("matrix must be {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                let m = rows[i][j];
                if m != rows[j][i] {
                    return Err(Error::Invalid(format!("matrix not symmetric at ({i}, {j})")));
                }
                if i == j && m != 1 {
                    return Err(Error::Invalid(format!("diagonal entry ({i}, {i}) must be 1")));
                }
                if i != j && m == 1 {
                    return Err(Error::Invalid(format!("off-diagonal entry ({i}, {j}) must be >= 2 or 0")));
                }
            }
        }
        Ok(Self { names, entries: rows.into_iter().flatten().collect() })
    }

    /// Same as [`CoxeterMatrix::new`] with default single-letter names `a, b, c, ...`.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let names = default_names(rows.len());
        Self::new(names, rows)
    }

    /// Standard finite and affine types: `A<n>`, `B<n>`, `D<n>`, `F4`, `G2`, `H3`, `H4`,
    /// `I2(<m>)` (m = 0 for infinity), `~A<n>`, `~B2`, `~C<n>`.
    pub fn from_type(ty: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("unknown Coxeter type `{ty}`"));
        let (affine, body) = match ty.strip_prefix('~') {
            Some(rest) => (true, rest),
            None => (false, ty),
        };
        if let Some(m) = body.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            let m: u32 = m.parse().map_err(|_| bad())?;
            if m == 1 {
                return Err(bad());
            }
            return Self::from_rows(vec![vec![1, m], vec![m, 1]]);
        }
        let letter = body.chars().next().ok_or_else(bad)?;
        let n: usize = body[1..].parse().map_err(|_| bad())?;
        let mut edges: Vec<(usize, usize, u32)> = Vec::new();
        let path = |k: usize, edges: &mut Vec<(usize, usize, u32)>| {
            for i in 1..k {
                edges.push((i - 1, i, 3));
            }
        };
        let rank = match (affine, letter, n) {
            (false, 'A', n) if n >= 1 => {
                path(n, &mut edges);
                n
            }
            (false, 'B', n) if n >= 2 => {
                path(n, &mut edges);
                edges[0].2 = 4;
                n
            }
            (false, 'D', n) if n >= 4 => {
                path(n - 1, &mut edges);
                edges.push((n - 3, n - 1, 3));
                n
            }
            (false, 'F', 4) => {
                path(4, &mut edges);
                edges[1].2 = 4;
                4
            }
            (false, 'G', 2) => {
                edges.push((0, 1, 6));
                2
            }
            (false, 'H', n @ (3 | 4)) => {
                path(n, &mut edges);
                edges[0].2 = 5;
                n
            }
            (true, 'A', 1) => {
                edges.push((0, 1, 0));
                2
            }
            (true, 'A', n) if n >= 2 => {
                path(n + 1, &mut edges);
                edges.push((0, n, 3));
                n + 1
            }
            (true, 'B', 2) | (true, 'C', 2) => {
                edges.push((0, 1, 4));
                edges.push((1, 2, 4));
                3
            }
            (true, 'C', n) if n >= 3 => {
                path(n + 1, &mut edges);
                edges[0].2 = 4;
                edges[n - 1].2 = 4;
                n + 1
            }
            _ => return Err(bad()),
        };
        let mut rows = vec![vec![2u32; rank]; rank];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        for (i, j, m) in edges {
            rows[i][j] = m;
            rows[j][i] = m;
        }
        Self::from_rows(rows)
    }

    /// Replaces the generator names, keeping the entries.
    pub fn with_names(mut self, names: &[&str]) -> Result<Self> {
        if names.len() != self.rank() {
            return Err(Error::Invalid("wrong number of generator names".into()));
        }
        let rows = self.rows();
        self = Self::new(names.iter().map(|s| s.to_string()).collect(), rows)?;
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Order of `s_i s_j`; `None` means infinite.
    pub fn order(&self, i: usize, j: usize) -> Option<u32> {
        match self.entries[i * self.rank() + j] {
            0 => None,
            m => Some(m),
        }
    }

    /// Rows in file encoding (0 = infinity).
    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.rank()).map(|c| c.to_vec()).collect()
    }

    pub fn submatrix(&self, idx: &[usize]) -> Result<Self> {
        let rows = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.entries[i * self.rank() + j]).collect())
            .collect();
        Self::new(idx.iter().map(|&i| self.names[i].clone()).collect(), rows)
    }

    /// Stable identifier used to detect elements of different groups being mixed.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.hash(&mut h);
        h.finish()
    }

    /// Gram matrix of the cosine form, `B_ij = -cos(pi / m_ij)` and `-1` for infinity.
    pub fn cosine_form(&self) -> Vec<Vec<f64>> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match self.order(i, j) {
                        None => -1.0,
                        Some(m) => -(std::f64::consts::PI / m as f64).cos(),
                    })
                    .collect()
            })
            .collect()
    }

    /// W is finite iff the cosine form is positive definite.
    pub fn is_finite_type(&self) -> bool {
        cholesky(&self.cosine_form()).is_some()
    }

    /// Positive semidefinite cosine form: every component finite or affine.
    pub fn is_semidefinite(&self) -> bool {
        let mut b = self.cosine_form();
        for (i, row) in b.iter_mut().enumerate() {
            row[i] += 1e-9;
        }
        cholesky(&b).is_some()
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("s{}", i + 1)).collect()
    }
}

/// Lower-triangular factor of a positive definite matrix, or `None`.
pub(crate) fn cholesky(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = a[i][i] - s;
                if d <= 1e-12 {
                    return None;
                }
                l[i][j] = d.sqrt();
            } else {
                l[i][j] = (a[i][j] - s) / l[j][j];
            }
        }
    }
    Some(l)
}
