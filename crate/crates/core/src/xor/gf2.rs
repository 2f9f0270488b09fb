//! Gaussian elimination over GF(2) with packed rows.

/// A linear system `A x = b` over GF(2), reduced incrementally.
#[derive(Clone, Debug)]
pub struct Gf2System {
    vars: usize,
    words: usize,
    /// Reduced rows keyed by pivot column; the last bit of each row is the rhs.
    rows: Vec<(usize, Vec<u64>)>,
    inconsistent: bool,
}

impl Gf2System {
    pub fn new(vars: usize) -> Self {
        Self {
            vars,
            words: (vars + 1).div_ceil(64),
            rows: Vec::new(),
            inconsistent: false,
        }
    }

    fn pack(&self, support: &[usize], rhs: bool) -> Vec<u64> {
        let mut row = vec![0u64; self.words];
        for &v in support {
            assert!(v < self.vars, "variable {v} out of range");
            row[v / 64] ^= 1 << (v % 64);
        }
        if rhs {
            row[self.vars / 64] ^= 1 << (self.vars % 64);
        }
        row
    }

    fn reduce(&self, row: &mut [u64]) {
        for (pivot, r) in &self.rows {
            if row[pivot / 64] >> (pivot % 64) & 1 == 1 {
                for (a, b) in row.iter_mut().zip(r) {
                    *a ^= b;
                }
            }
        }
    }

    fn leading(&self, row: &[u64]) -> Option<usize> {
        (0..self.vars).find(|&v| row[v / 64] >> (v % 64) & 1 == 1)
    }

    fn rhs(&self, row: &[u64]) -> bool {
        row[self.vars / 64] >> (self.vars % 64) & 1 == 1
    }

    /// Adds `xor(support) = rhs`; returns false once the system is inconsistent.
    pub fn add(&mut self, support: &[usize], rhs: bool) -> bool {
        let mut row = self.pack(support, rhs);
        self.reduce(&mut row);
        match self.leading(&row) {
            Some(p) => {
                // keep rows fully reduced against the new pivot
                for (_, r) in self.rows.iter_mut() {
                    if r[p / 64] >> (p % 64) & 1 == 1 {
                        for (a, b) in r.iter_mut().zip(&row) {
                            *a ^= b;
                        }
                    }
                }
                self.rows.push((p, row));
            }
            None => {
                if self.rhs(&row) {
                    self.inconsistent = true;
                }
            }
        }
        !self.inconsistent
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The parity of `support` when it is determined by the system, `None` if
    /// it is free. An inconsistent system determines everything; the value
    /// reported then is arbitrary.
    pub fn implied(&self, support: &[usize]) -> Option<bool> {
        let mut row = self.pack(support, false);
        self.reduce(&mut row);
        if self.leading(&row).is_some() {
            None
        } else {
            Some(self.rhs(&row))
        }
    }

    /// One solution (free variables set to 0), if consistent.
    pub fn solution(&self) -> Option<Vec<bool>> {
        if self.inconsistent {
            return None;
        }
        let mut x = vec![false; self.vars];
        for (p, r) in &self.rows {
            x[*p] = self.rhs(r);
        }
        Some(x)
    }
}
