//! Coset enumeration over the trivial subgroup (HLT strategy with
//! coincidence processing).

/// Generator columns: 2g is generator g, 2g+1 its inverse.
pub type Word = Vec<usize>;

fn inv(x: usize) -> usize {
    x ^ 1
}

struct Table {
    cols: usize,
    rows: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    limit: usize,
    overflow: bool,
}

impl Table {
    fn rep(&mut self, mut c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        while self.parent[c] != r {
            let n = self.parent[c];
            self.parent[c] = r;
            c = n;
        }
        r
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) {
        if self.rows.len() >= self.limit {
            self.overflow = true;
            return;
        }
        let n = self.rows.len();
        self.rows.push(vec![None; self.cols]);
        self.parent.push(n);
        self.rows[c][x] = Some(n);
        self.rows[n][inv(x)] = Some(c);
    }

    fn merge(&mut self, k: usize, l: usize, queue: &mut Vec<usize>) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k == l {
            return;
        }
        let (lo, hi) = if k < l { (k, l) } else { (l, k) };
        self.parent[hi] = lo;
        queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let Some(f) = self.rows[e][x] else { continue };
                self.rows[f][inv(x)] = None;
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if let Some(t) = self.rows[e1][x] {
                    self.merge(f1, t, &mut queue);
                } else if let Some(t) = self.rows[f1][inv(x)] {
                    self.merge(e1, t, &mut queue);
                } else {
                    self.rows[e1][x] = Some(f1);
                    self.rows[f1][inv(x)] = Some(e1);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) {
        if w.is_empty() {
            return;
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                match self.rows[f][w[i]] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i as isize {
                match self.rows[b][inv(w[j as usize])] {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return;
            }
            if j == i as isize {
                self.rows[f][w[i]] = Some(b);
                self.rows[b][inv(w[i])] = Some(f);
                return;
            }
            self.define(f, w[i]);
            if self.overflow {
                return;
            }
        }
    }
}

/// Enumerates the cosets of the trivial subgroup, returning the right action
/// `action[coset][column]` on the compacted coset numbering (coset 0 is the
/// identity). `None` if more than `limit` cosets were needed.
pub fn enumerate(ngens: usize, relators: &[Word], limit: usize) -> Option<Vec<Vec<usize>>> {
    let cols = 2 * ngens;
    let mut t = Table { cols, rows: vec![vec![None; cols]], parent: vec![0], limit, overflow: false };
    let mut c = 0;
    while c < t.rows.len() {
        if t.live(c) {
            for r in relators {
                t.scan_and_fill(c, r);
                if t.overflow {
                    return None;
                }
                if !t.live(c) {
                    break;
                }
            }
            if t.live(c) {
                for x in 0..cols {
                    if t.rows[c][x].is_none() {
                        t.define(c, x);
                        if t.overflow {
                            return None;
                        }
                    }
                }
            }
        }
        c += 1;
    }
    let live: Vec<usize> = (0..t.rows.len()).filter(|&c| t.live(c)).collect();
    let mut index = vec![usize::MAX; t.rows.len()];
    for (k, &c) in live.iter().enumerate() {
        index[c] = k;
    }
    let mut out = Vec::with_capacity(live.len());
    for &c in &live {
        let mut row = Vec::with_capacity(cols);
        for x in 0..cols {
            let target = t.rows[c][x].expect("complete coset table");
            let target = t.rep(target);
            row.push(index[target]);
        }
        out.push(row);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn power(w: &[usize], k: usize) -> Word {
        w.iter().copied().cycle().take(w.len() * k).collect()
    }

    #[test]
    fn dihedral_and_quaternion_orders() {
        // ⟨a, b | a², b², (ab)^n⟩ has order 2n.
        for n in 2..9 {
            let rels = vec![vec![0, 0], vec![2, 2], power(&[0, 2], n)];
            assert_eq!(enumerate(2, &rels, 10_000).unwrap().len(), 2 * n);
        }
        // Q8 = ⟨i, j | i⁴, i²j⁻², j⁻¹iji⟩.
        let rels = vec![vec![0, 0, 0, 0], vec![0, 0, 3, 3], vec![3, 0, 2, 0]];
        assert_eq!(enumerate(2, &rels, 10_000).unwrap().len(), 8);
    }
}
