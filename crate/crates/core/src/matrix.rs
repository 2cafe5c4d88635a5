//! Square nonnegative integer matrices indexed by an alphabet.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    n: usize,
    entries: Vec<u64>,
}

impl IncidenceMatrix {
    pub fn zero(n: usize) -> Self {
        IncidenceMatrix { n, entries: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.entries[a * self.n + b]
    }

    pub fn add(&mut self, a: usize, b: usize, v: u64) {
        self.entries[a * self.n + b] += v;
    }

    pub fn row(&self, a: usize) -> &[u64] {
        &self.entries[a * self.n..(a + 1) * self.n]
    }

    pub fn row_sum(&self, a: usize) -> u64 {
        self.row(a).iter().sum()
    }

    pub fn mul(&self, other: &IncidenceMatrix) -> IncidenceMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = x.saturating_mul(other.get(k, j));
                    let e = &mut out.entries[i * n + j];
                    *e = e.saturating_add(v);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> IncidenceMatrix {
        (0..k).fold(Self::identity(self.n), |acc, _| acc.mul(self))
    }

    /// Restriction to the given index set, in the order given.
    pub fn restrict(&self, idx: &[usize]) -> IncidenceMatrix {
        let mut out = Self::zero(idx.len());
        for (i, &a) in idx.iter().enumerate() {
            for (j, &b) in idx.iter().enumerate() {
                out.entries[i * idx.len() + j] = self.get(a, b);
            }
        }
        out
    }

    /// Primitivity test: some power up to Wielandt's bound (n−1)²+1 is
    /// strictly positive.
    pub fn is_primitive(&self) -> bool {
        let n = self.n;
        if n == 0 {
            return false;
        }
        let bound = (n - 1) * (n - 1) + 1;
        let pattern = |m: &IncidenceMatrix| {
            let mut b = m.clone();
            b.entries.iter_mut().for_each(|e| *e = (*e > 0) as u64);
            b
        };
        let base = pattern(self);
        let mut cur = base.clone();
        for _ in 0..bound {
            if cur.entries.iter().all(|&e| e > 0) {
                return true;
            }
            cur = pattern(&cur.mul(&base));
        }
        false
    }
}

impl fmt::Display for IncidenceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(u64::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_checks() {
        let mut m = IncidenceMatrix::zero(2);
        m.add(0, 0, 1);
        m.add(0, 1, 1);
        m.add(1, 0, 1);
        assert!(m.is_primitive());
        let mut p = IncidenceMatrix::zero(2);
        p.add(0, 1, 1);
        p.add(1, 0, 1);
        assert!(!p.is_primitive());
        assert!(!IncidenceMatrix::identity(2).is_primitive());
        assert!(IncidenceMatrix::identity(1).is_primitive());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let mut m = IncidenceMatrix::zero(2);
        m.add(0, 0, 1);
        m.add(0, 1, 2);
        m.add(1, 0, 1);
        assert_eq!(m.pow(3), m.mul(&m).mul(&m));
        assert_eq!(m.pow(0), IncidenceMatrix::identity(2));
    }
}
