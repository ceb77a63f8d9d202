use super::{Graph, GraphError, ImplicitGraph};
use rayon::prelude::*;
use std::collections::HashMap;

/// Finds a 4-cycle by common-neighbor counting: `u` lies on a C4 iff some
/// vertex at distance two is reached through two different middle vertices.
pub fn contains_c4(g: &Graph) -> Option<[u32; 4]> {
    let n = g.n();
    let mut via = vec![0u32; n];
    let mut stamp = vec![u32::MAX; n];
    for u in 0..n as u32 {
        for &v in g.neighbors(u) {
            for &w in g.neighbors(v) {
                if w == u {
                    continue;
                }
                if stamp[w as usize] == u {
                    return Some([u, via[w as usize], w, v]);
                }
                stamp[w as usize] = u;
                via[w as usize] = v;
            }
        }
    }
    None
}

fn check_kmax(kmax: u32) -> Result<(), GraphError> {
    if (2..=5).contains(&kmax) {
        Ok(())
    } else {
        Err(GraphError::KmaxOutOfRange(kmax))
    }
}

/// Shortest even cycle of length at most `2·kmax`, if any. Exact.
pub fn even_cycle_free_upto(g: &Graph, kmax: u32) -> Result<Option<Vec<u32>>, GraphError> {
    check_kmax(kmax)?;
    Ok((2..=kmax).find_map(|h| find_cycle_of_length(g, 2 * h as usize)))
}

/// A cycle with exactly `len ≥ 3` vertices. The witness starts at its smallest
/// vertex; the search runs from every start in vertex order and returns the
/// first hit, so the result is deterministic.
pub fn find_cycle_of_length(g: &Graph, len: usize) -> Option<Vec<u32>> {
    assert!(len >= 3, "cycles have at least three vertices");
    let n = g.n();
    (0..n as u32)
        .into_par_iter()
        .map_init(Vec::new, |path: &mut Vec<u32>, s| {
            path.clear();
            path.push(s);
            if extend_to_cycle(g, path, len) {
                Some(path.clone())
            } else {
                None
            }
        })
        .find_first(Option::is_some)
        .flatten()
}

fn extend_to_cycle(g: &Graph, path: &mut Vec<u32>, len: usize) -> bool {
    let s = path[0];
    let last = *path.last().unwrap();
    if path.len() == len {
        return g.is_edge(last, s);
    }
    for &w in g.neighbors(last) {
        if w <= s || path.contains(&w) {
            continue;
        }
        path.push(w);
        if extend_to_cycle(g, path, len) {
            return true;
        }
        path.pop();
    }
    false
}

/// Girth by breadth-first search from every vertex; `None` for forests.
pub fn girth(g: &Graph) -> Option<u32> {
    let n = g.n();
    (0..n as u32)
        .into_par_iter()
        .map_init(
            || (vec![u32::MAX; n], vec![u32::MAX; n], Vec::new()),
            |(dist, parent, touched), s| shortest_cycle_from(g, s, dist, parent, touched),
        )
        .flatten()
        .min()
}

fn shortest_cycle_from(
    g: &Graph,
    s: u32,
    dist: &mut [u32],
    parent: &mut [u32],
    touched: &mut Vec<u32>,
) -> Option<u32> {
    for &v in touched.iter() {
        dist[v as usize] = u32::MAX;
        parent[v as usize] = u32::MAX;
    }
    touched.clear();
    let mut best = u32::MAX;
    dist[s as usize] = 0;
    touched.push(s);
    let mut head = 0;
    while head < touched.len() {
        let u = touched[head];
        head += 1;
        let du = dist[u as usize];
        if 2 * du + 1 >= best {
            break;
        }
        for &w in g.neighbors(u) {
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = du + 1;
                parent[w as usize] = u;
                touched.push(w);
            } else if parent[u as usize] != w {
                best = best.min(du + dist[w as usize] + 1);
            }
        }
    }
    (best != u32::MAX).then_some(best)
}

const UNSEEN: u32 = 0;
const MANY: u32 = u32::MAX;

/// A cycle of length exactly `2·half` through `s`, found by meeting in the
/// middle: such a cycle is two internally disjoint `s`–`t` paths of length
/// `half` that leave `s` through different neighbors.
///
/// Works on implicit graphs; memory is one `u32` per vertex plus the paths
/// that end at collision vertices.
pub fn find_even_cycle_through<G: ImplicitGraph + ?Sized>(
    g: &G,
    s: u32,
    half: u32,
) -> Option<Vec<u32>> {
    assert!(half >= 2, "even cycles have length at least 4");
    let n = g.vertex_count();
    let first: Vec<u32> = g.neighbors_vec(s);
    let branch_of: HashMap<u32, u32> = first
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as u32 + 1))
        .collect();

    // Pass 1: mark endpoints reached from more than one first step.
    let mut mark = vec![UNSEEN; n];
    let mut candidates = Vec::new();
    walk_paths(g, s, &first, half as usize, &mut |path| {
        let t = *path.last().unwrap() as usize;
        let b = branch_of[&path[1]];
        match mark[t] {
            UNSEEN => mark[t] = b,
            MANY => {}
            m if m != b => {
                mark[t] = MANY;
                candidates.push(t as u32);
            }
            _ => {}
        }
    });
    if candidates.is_empty() {
        return None;
    }
    drop(mark);

    // Pass 2: keep the full paths into collision vertices and look for a
    // disjoint pair.
    let wanted: std::collections::HashSet<u32> = candidates.into_iter().collect();
    let mut stored: HashMap<u32, Vec<Vec<u32>>> = HashMap::new();
    let mut found: Option<Vec<u32>> = None;
    walk_paths(g, s, &first, half as usize, &mut |path| {
        if found.is_some() {
            return;
        }
        let t = *path.last().unwrap();
        if !wanted.contains(&t) {
            return;
        }
        let inner = &path[1..path.len() - 1];
        let bucket = stored.entry(t).or_default();
        for other in bucket.iter() {
            let other_inner = &other[1..other.len() - 1];
            if other[1] != path[1] && inner.iter().all(|v| !other_inner.contains(v)) {
                let mut cyc = path[..path.len()].to_vec();
                cyc.extend(other_inner.iter().rev());
                found = Some(cyc);
                return;
            }
        }
        bucket.push(path.to_vec());
    });
    found
}

/// Visits every simple path `s = v0, v1, .., v_len` in neighbor order.
fn walk_paths<G: ImplicitGraph + ?Sized>(
    g: &G,
    s: u32,
    first: &[u32],
    len: usize,
    visit: &mut dyn FnMut(&[u32]),
) {
    let mut path = Vec::with_capacity(len + 1);
    path.push(s);
    for &v in first {
        path.push(v);
        walk_rec(g, &mut path, len, visit);
        path.pop();
    }
}

fn walk_rec<G: ImplicitGraph + ?Sized>(
    g: &G,
    path: &mut Vec<u32>,
    len: usize,
    visit: &mut dyn FnMut(&[u32]),
) {
    if path.len() == len + 1 {
        visit(path);
        return;
    }
    let last = *path.last().unwrap();
    let mut next = Vec::new();
    g.for_each_neighbor(last, &mut |w| next.push(w));
    for w in next {
        if path.contains(&w) {
            continue;
        }
        path.push(w);
        walk_rec(g, path, len, visit);
        path.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> Graph {
        Graph::from_edges(n as usize, (0..n).map(|i| (i, (i + 1) % n)), []).unwrap()
    }

    fn path(n: u32) -> Graph {
        Graph::from_edges(n as usize, (0..n - 1).map(|i| (i, i + 1)), []).unwrap()
    }

    fn is_cycle(g: &Graph, c: &[u32]) -> bool {
        let mut sorted = c.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == c.len() && (0..c.len()).all(|i| g.is_edge(c[i], c[(i + 1) % c.len()]))
    }

    #[test]
    fn c4_witnesses() {
        let k22 = Graph::from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)], []).unwrap();
        let w = contains_c4(&k22).unwrap();
        assert!(is_cycle(&k22, &w));
        assert!(contains_c4(&cycle(5)).is_none());
        assert!(contains_c4(&cycle(6)).is_none());
    }

    #[test]
    fn hexagon_even_cycles() {
        let c6 = cycle(6);
        let w = even_cycle_free_upto(&c6, 3).unwrap().unwrap();
        assert_eq!(w.len(), 6);
        assert!(is_cycle(&c6, &w));
        assert!(even_cycle_free_upto(&c6, 2).unwrap().is_none());
        assert_eq!(
            even_cycle_free_upto(&c6, 1).unwrap_err(),
            GraphError::KmaxOutOfRange(1)
        );
        assert_eq!(
            even_cycle_free_upto(&c6, 6).unwrap_err(),
            GraphError::KmaxOutOfRange(6)
        );
    }

    #[test]
    fn girth_of_small_graphs() {
        assert_eq!(girth(&path(3)), None);
        assert_eq!(girth(&cycle(3)), Some(3));
        assert_eq!(girth(&cycle(7)), Some(7));
        // Loops do not make cycles.
        let g = Graph::from_edges(2, [(0, 1)], [0, 1]).unwrap();
        assert_eq!(girth(&g), None);
    }

    #[test]
    fn meet_in_the_middle_on_cycles() {
        let c8 = cycle(8);
        assert!(find_even_cycle_through(&c8, 0, 3).is_none());
        let w = find_even_cycle_through(&c8, 3, 4).unwrap();
        assert!(is_cycle(&c8, &w) && w.len() == 8 && w[0] == 3);
        // Odd cycles never produce a collision at equal depth.
        assert!(find_even_cycle_through(&cycle(7), 0, 3).is_none());
    }
}
