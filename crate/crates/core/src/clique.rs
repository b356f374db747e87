//! Exact maximum clique by branch and bound with a greedy-colouring bound.
//!
//! Vertices are explored in index order, so the returned clique is fully
//! determined by the adjacency matrix.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Self::new(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersection(&self, other: &Bitset) -> Bitset {
        Bitset { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    fn difference_in_place(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }

    fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}

/// Undirected graph as adjacency bitsets.
#[derive(Debug, Clone)]
pub struct Graph {
    adj: Vec<Bitset>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self { adj: vec![Bitset::new(n); n] }
    }

    pub fn from_fn(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::new(n);
        for a in 0..n {
            for b in a + 1..n {
                if edge(a, b) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.adj[a].insert(b);
            self.adj[b].insert(a);
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbours(&self, v: usize) -> &Bitset {
        &self.adj[v]
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| self.adj[a].contains(b)))
    }
}

/// Maximum clique among all vertices.
pub fn max_clique(g: &Graph) -> Vec<usize> {
    max_clique_within(g, &Bitset::full(g.len()), usize::MAX)
}

/// Maximum clique inside `candidates`; the search stops as soon as a clique
/// of size `stop_at` is found.
pub fn max_clique_within(g: &Graph, candidates: &Bitset, stop_at: usize) -> Vec<usize> {
    let mut search = Search { g, best: Vec::new(), stop_at };
    let mut current = Vec::new();
    search.expand(&mut current, candidates.clone());
    search.best
}

struct Search<'a> {
    g: &'a Graph,
    best: Vec<usize>,
    stop_at: usize,
}

impl Search<'_> {
    fn expand(&mut self, current: &mut Vec<usize>, mut cand: Bitset) {
        if cand.is_empty() {
            if current.len() > self.best.len() {
                self.best = current.clone();
            }
            return;
        }
        let (order, colours) = self.colour_sort(&cand);
        for i in (0..order.len()).rev() {
            if self.best.len() >= self.stop_at || current.len() + colours[i] <= self.best.len() {
                return;
            }
            let v = order[i];
            current.push(v);
            let next = cand.intersection(self.g.neighbours(v));
            self.expand(current, next);
            current.pop();
            cand.remove(v);
        }
    }

    /// Greedy sequential colouring; returns vertices by non-decreasing colour
    /// together with the colour count reached at each position.
    fn colour_sort(&self, cand: &Bitset) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = cand.clone();
        let mut order = Vec::with_capacity(cand.count());
        let mut colours = Vec::with_capacity(order.capacity());
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut avail = uncoloured.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                avail.difference_in_place(self.g.neighbours(v));
                uncoloured.remove(v);
                order.push(v);
                colours.push(colour);
            }
        }
        // reverse iteration in `expand` visits high colours first; keep the
        // low-index vertices last within each colour so they are tried first
        let mut pairs: Vec<(usize, usize)> = order.into_iter().zip(colours).collect();
        pairs.sort_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)));
        pairs.into_iter().unzip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(g: &Graph) -> usize {
        let n = g.len();
        (0u32..1 << n)
            .filter(|mask| {
                let vs: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                g.is_clique(&vs)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn complete_and_empty() {
        let k5 = Graph::from_fn(5, |_, _| true);
        assert_eq!(max_clique(&k5).len(), 5);
        let e4 = Graph::new(4);
        assert_eq!(max_clique(&e4).len(), 1);
        assert!(max_clique(&Graph::new(0)).is_empty());
    }

    #[test]
    fn matches_brute_force_on_pseudorandom_graphs() {
        let mut state = 0x2545_f491_4f6c_dd1du64;
        for trial in 0..40 {
            let n = 6 + trial % 9;
            let g = Graph::from_fn(n, |_, _| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state % 100 < 55
            });
            let c = max_clique(&g);
            assert!(g.is_clique(&c));
            assert_eq!(c.len(), brute_force(&g), "trial {trial}");
        }
    }

    #[test]
    fn complement_of_perfect_matching() {
        // 2m vertices, every pair adjacent except (2i, 2i+1)
        let g = Graph::from_fn(64, |a, b| a / 2 != b / 2);
        assert_eq!(max_clique(&g).len(), 32);
    }

    #[test]
    fn stop_bound_short_circuits() {
        let g = Graph::from_fn(10, |_, _| true);
        let c = max_clique_within(&g, &Bitset::full(10), 3);
        assert!(c.len() >= 3);
        assert!(g.is_clique(&c));
    }
}
