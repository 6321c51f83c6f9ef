//! Brute-force induced-subgraph search, used to cross-check the recognizers.

use std::collections::HashSet;

use thiserror::Error;

use super::Pattern;
use crate::bitset::BitSet;
use crate::graph::UndirectedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchPattern {
    P4,
    C4,
    C5,
    TwoK2,
    /// A hole of length at least `k >= 4`.
    HoleAtLeast(usize),
}

impl SearchPattern {
    /// Tag of a witness found for this search.
    pub fn pattern(self) -> Pattern {
        match self {
            SearchPattern::P4 => Pattern::P4,
            SearchPattern::C4 => Pattern::C4,
            SearchPattern::C5 => Pattern::C5,
            SearchPattern::TwoK2 => Pattern::TwoK2,
            SearchPattern::HoleAtLeast(k) => Pattern::cycle(k),
        }
    }
}

impl From<Pattern> for SearchPattern {
    fn from(p: Pattern) -> Self {
        match p {
            Pattern::P4 => SearchPattern::P4,
            Pattern::C4 => SearchPattern::C4,
            Pattern::C5 => SearchPattern::C5,
            Pattern::TwoK2 => SearchPattern::TwoK2,
            Pattern::Hole(k) => SearchPattern::HoleAtLeast(k),
        }
    }
}

impl std::str::FromStr for SearchPattern {
    type Err = String;

    /// `P4`, `C4`, `C5`, `2K2`, or `hole:<k>` for a hole of length at least `k`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        if let Some(k) = t.strip_prefix("hole:") {
            return match k.parse::<usize>() {
                Ok(k) if k >= 4 => Ok(SearchPattern::HoleAtLeast(k)),
                _ => Err(format!("hole length must be an integer of at least 4: {s:?}")),
            };
        }
        match t.as_str() {
            "p4" => Ok(SearchPattern::P4),
            "c4" => Ok(SearchPattern::C4),
            "c5" => Ok(SearchPattern::C5),
            "2k2" => Ok(SearchPattern::TwoK2),
            _ => Err(format!("unknown pattern {s:?}, expected P4, C4, C5, 2K2 or hole:k")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("hole length must be at least 4, got {0}")]
    BadLength(usize),
    #[error("hole search exceeded the length cap {cap}")]
    LengthCapExceeded { cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    /// Longest hole searched for.
    pub hole_cap: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { hole_cap: 64 }
    }
}

pub fn find_induced(g: &UndirectedGraph, pattern: SearchPattern) -> Result<Option<Vec<usize>>, OracleError> {
    find_induced_with(g, pattern, OracleOptions::default())
}

/// Lexicographically least occurrence of the pattern.
///
/// For the fixed patterns the least vertex *set* (as a sorted list) is
/// found first and then listed in witness order, choosing the least such
/// listing. For holes the result is the least cyclic sequence starting at
/// its smallest vertex, found by depth-first search over induced paths in
/// ascending order. If no hole within the cap exists but some search branch
/// was cut by the cap, the result is [`OracleError::LengthCapExceeded`].
pub fn find_induced_with(
    g: &UndirectedGraph,
    pattern: SearchPattern,
    options: OracleOptions,
) -> Result<Option<Vec<usize>>, OracleError> {
    match pattern {
        SearchPattern::HoleAtLeast(k) => {
            if k < 4 {
                return Err(OracleError::BadLength(k));
            }
            if k > options.hole_cap {
                return Err(OracleError::LengthCapExceeded { cap: options.hole_cap });
            }
            HoleSearch::new(g, k, options.hole_cap).run()
        }
        fixed => Ok(find_fixed(g, fixed.pattern())),
    }
}

/// Bit of the pair `(i, j)`, `i < j`, in a mask over positions.
fn pair_bit(i: usize, j: usize) -> u32 {
    (j * (j - 1) / 2 + i) as u32
}

/// For each prefix size `j`, the labelled graphs on `j` positions that occur
/// as induced subgraphs of the template, as pair masks.
fn allowed_masks(template: &UndirectedGraph) -> Vec<HashSet<u32>> {
    let k = template.vertex_count();
    let mut out = vec![HashSet::new(); k + 1];
    fn rec(t: &UndirectedGraph, chosen: &mut Vec<usize>, out: &mut [HashSet<u32>]) {
        let mut mask = 0;
        for j in 0..chosen.len() {
            for i in 0..j {
                if t.has_edge(chosen[i], chosen[j]) {
                    mask |= 1 << pair_bit(i, j);
                }
            }
        }
        out[chosen.len()].insert(mask);
        if chosen.len() == t.vertex_count() {
            return;
        }
        for v in 0..t.vertex_count() {
            if !chosen.contains(&v) {
                chosen.push(v);
                rec(t, chosen, out);
                chosen.pop();
            }
        }
    }
    rec(template, &mut Vec::new(), &mut out);
    out
}

fn find_fixed(g: &UndirectedGraph, pattern: Pattern) -> Option<Vec<usize>> {
    let template = pattern.template();
    let k = template.vertex_count();
    let allowed = allowed_masks(&template);
    let n = g.vertex_count();
    let mut chosen = Vec::with_capacity(k);
    let set = search_sets(g, n, k, &allowed, &mut chosen, 0)?;
    Some(best_listing(g, &set, &template))
}

/// Depth-first over increasing vertex lists; candidates for the next
/// position are assembled with bit operations from the allowed adjacency
/// patterns to the vertices already chosen.
fn search_sets(
    g: &UndirectedGraph,
    n: usize,
    k: usize,
    allowed: &[HashSet<u32>],
    chosen: &mut Vec<usize>,
    mask: u32,
) -> Option<Vec<usize>> {
    let d = chosen.len();
    if d == k {
        return Some(chosen.clone());
    }
    let start = chosen.last().map_or(0, |&v| v + 1);
    let mut candidates = BitSet::new(n);
    for ext in 0u32..1 << d {
        let mut m = mask;
        for (i, _) in chosen.iter().enumerate() {
            if ext >> i & 1 == 1 {
                m |= 1 << pair_bit(i, d);
            }
        }
        if !allowed[d + 1].contains(&m) {
            continue;
        }
        let mut c = BitSet::full(n);
        c.clear_below(start);
        for (i, &v) in chosen.iter().enumerate() {
            if ext >> i & 1 == 1 {
                c.and_with(g.row(v));
            } else {
                c.and_not_with(g.row(v));
            }
        }
        candidates.or_with(c.words());
    }
    for v in candidates.iter() {
        let mut m = mask;
        for (i, &u) in chosen.iter().enumerate() {
            if g.has_edge(u, v) {
                m |= 1 << pair_bit(i, d);
            }
        }
        chosen.push(v);
        let found = search_sets(g, n, k, allowed, chosen, m);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Least ordering of `set` whose induced graph equals the template.
fn best_listing(g: &UndirectedGraph, set: &[usize], template: &UndirectedGraph) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    let mut perm = set.to_vec();
    permutations(&mut perm, 0, &mut |p| {
        if g.induced_on(p) == *template && best.as_deref().is_none_or(|b| p < b) {
            best = Some(p.to_vec());
        }
    });
    best.expect("set induces the template")
}

fn permutations(v: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == v.len() {
        f(v);
        return;
    }
    for j in i..v.len() {
        v.swap(i, j);
        permutations(v, i + 1, f);
        v.swap(i, j);
    }
}

struct HoleSearch<'a> {
    g: &'a UndirectedGraph,
    min_len: usize,
    cap: usize,
    truncated: bool,
}

impl<'a> HoleSearch<'a> {
    fn new(g: &'a UndirectedGraph, min_len: usize, cap: usize) -> Self {
        HoleSearch {
            g,
            min_len,
            cap,
            truncated: false,
        }
    }

    fn run(mut self) -> Result<Option<Vec<usize>>, OracleError> {
        let n = self.g.vertex_count();
        for s in 0..n {
            let mut below = BitSet::new(n);
            for x in 0..=s {
                below.insert(x);
            }
            let mut closed_s = self.g.neighbor_set(s);
            closed_s.insert(s);
            let firsts: Vec<usize> = self.g.neighbors(s).filter(|&v| v > s).collect();
            for p1 in firsts {
                let mut path = vec![s, p1];
                if self.extend(&mut path, &below, &closed_s) {
                    return Ok(Some(path));
                }
            }
        }
        if self.truncated {
            Err(OracleError::LengthCapExceeded { cap: self.cap })
        } else {
            Ok(None)
        }
    }

    /// `b_path` holds vertices `<= s` and `N[p1..p_{t-1}]`. Returns true with
    /// the hole left in `path`.
    fn extend(&mut self, path: &mut Vec<usize>, b_path: &BitSet, closed_s: &BitSet) -> bool {
        let g = self.g;
        let s = path[0];
        let t = path.len() - 1;
        let pt = path[t];
        // closers: common neighbours of s and pt not blocked by the interior
        let mut closers = BitSet::from_words(g.vertex_count(), g.row(pt).to_vec());
        closers.and_with(g.row(s));
        closers.and_not_with(b_path.words());
        if !self.reachable(s, pt, b_path, closed_s, t + 1) {
            return false;
        }
        let mut ext = BitSet::from_words(g.vertex_count(), g.row(pt).to_vec());
        ext.and_not_with(b_path.words());
        ext.and_not_with(closed_s.words());
        let mut next_block = b_path.clone();
        next_block.or_with(g.row(pt));
        next_block.insert(pt);
        let mut cands: Vec<(usize, bool)> = closers
            .iter()
            .map(|v| (v, true))
            .chain(ext.iter().map(|v| (v, false)))
            .collect();
        cands.sort_unstable();
        for (w, closes) in cands {
            if closes {
                if t + 2 >= self.min_len {
                    path.push(w);
                    return true;
                }
                continue;
            }
            if t + 3 > self.cap {
                self.truncated = true;
                continue;
            }
            path.push(w);
            if self.extend(path, &next_block, closed_s) {
                return true;
            }
            path.pop();
        }
        false
    }

    /// Whether some neighbour of `s` that could close the cycle is reachable
    /// from `pt` through unblocked vertices within the cap. `len` is the
    /// current path size.
    fn reachable(&mut self, s: usize, pt: usize, b_path: &BitSet, closed_s: &BitSet, len: usize) -> bool {
        let g = self.g;
        let n = g.vertex_count();
        let mut targets = g.neighbor_set(s);
        targets.and_not_with(b_path.words());
        targets.remove(pt);
        let mut open = BitSet::full(n);
        open.and_not_with(b_path.words());
        open.and_not_with(closed_s.words());
        let mut frontier = vec![pt];
        let mut seen = BitSet::new(n);
        seen.insert(pt);
        let mut dist = 0;
        while !frontier.is_empty() {
            dist += 1;
            let mut layer = BitSet::new(n);
            for &v in &frontier {
                layer.or_with(g.row(v));
            }
            if layer.intersects(targets.words()) {
                if len + dist > self.cap {
                    self.truncated = true;
                    return false;
                }
                return true;
            }
            layer.and_with(open.words());
            layer.and_not_with(seen.words());
            seen.or_with(layer.words());
            frontier = layer.iter().collect();
        }
        false
    }
}

/// A shortest hole, or `None` for chordal graphs. For each `s` and each
/// neighbour `a`, a breadth-first search from `a` that avoids `N[s]` finds
/// the nearest other neighbour `b` of `s` not adjacent to `a`; the path
/// closes through `s` into an induced cycle, and every hole through `s`
/// arises this way with at least that length.
pub fn shortest_hole(g: &UndirectedGraph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut best: Option<Vec<usize>> = None;
    for s in 0..n {
        let mut allowed = BitSet::full(n);
        allowed.and_not_with(g.row(s));
        allowed.remove(s);
        for a in g.neighbors(s) {
            let mut targets = g.neighbor_set(s);
            targets.and_not_with(g.row(a));
            targets.remove(a);
            if targets.is_empty() {
                continue;
            }
            if let Some(path) = nearest(g, a, &targets, &allowed) {
                if best.as_ref().is_none_or(|b| path.len() + 1 < b.len()) {
                    let mut hole = vec![s];
                    hole.extend(path);
                    best = Some(hole);
                }
            }
        }
    }
    best
}

/// Shortest path from `from` to any target, interior within `allowed`.
fn nearest(g: &UndirectedGraph, from: usize, targets: &BitSet, allowed: &BitSet) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut seen = BitSet::new(n);
    seen.insert(from);
    let mut frontier = vec![from];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &v in &frontier {
            let mut hit = targets.clone();
            hit.and_with(g.row(v));
            if let Some(b) = hit.first() {
                let mut path = vec![b, v];
                let mut x = v;
                while x != from {
                    x = parent[x];
                    path.push(x);
                }
                path.reverse();
                return Some(path);
            }
            let mut cand = allowed.clone();
            cand.and_with(g.row(v));
            cand.and_not_with(seen.words());
            for w in cand.iter() {
                seen.insert(w);
                parent[w] = v;
                next.push(w);
            }
        }
        frontier = next;
    }
    None
}
