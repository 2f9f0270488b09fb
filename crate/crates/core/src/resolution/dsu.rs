/// Union-find where every element carries a parity relative to its root.
#[derive(Clone, Debug)]
pub struct ParityDsu {
    parent: Vec<u32>,
    parity: Vec<bool>,
    rank: Vec<u8>,
}

impl ParityDsu {
    pub fn new() -> Self {
        Self { parent: Vec::new(), parity: Vec::new(), rank: Vec::new() }
    }

    pub fn push(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id as u32);
        self.parity.push(false);
        self.rank.push(0);
        id
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Root of `x` and the parity of `x` relative to it.
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] as usize != cur {
            path.push(cur);
            cur = self.parent[cur] as usize;
        }
        let root = cur;
        // compress from the top so each parity is relative to the root
        let mut acc = false;
        for &node in path.iter().rev() {
            acc ^= self.parity[node];
            self.parity[node] = acc;
            self.parent[node] = root as u32;
        }
        (root, if path.is_empty() { false } else { self.parity[x] })
    }

    /// Records `parity(a) ^ parity(b) = rel`. Returns `Err` with the
    /// conflicting relation if `a` and `b` are already joined the other way.
    pub fn union(&mut self, a: usize, b: usize, rel: bool) -> Result<(), bool> {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return if pa ^ pb == rel { Ok(()) } else { Err(pa ^ pb) };
        }
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[lo] = hi as u32;
        self.parity[lo] = pa ^ pb ^ rel;
        if self.rank[hi] == self.rank[lo] {
            self.rank[hi] += 1;
        }
        Ok(())
    }
}

impl Default for ParityDsu {
    fn default() -> Self {
        Self::new()
    }
}
