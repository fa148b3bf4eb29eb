//! Enumeration of induced paths.

use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;

use super::Graph;

/// Visits every induced path that starts at `s`, ends in `targets` and has
/// its interior in `through`, in depth-first ascending order. `s` must lie
/// in neither set and the two sets must be disjoint.
pub fn for_each_induced_path<B>(
    g: &Graph,
    s: usize,
    targets: &FixedBitSet,
    through: &FixedBitSet,
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    // `blocked[v] > 0` iff v is in the closed neighbourhood of a path vertex
    // other than the current last one.
    let mut blocked = vec![0u32; g.n()];
    let mut path = vec![s];
    grow(g, targets, through, &mut blocked, &mut path, visit)
}

fn grow<B>(
    g: &Graph,
    targets: &FixedBitSet,
    through: &FixedBitSet,
    blocked: &mut [u32],
    path: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let last = *path.last().unwrap();
    let mut next = Vec::new();
    for &w in g.neighbors(last) {
        if blocked[w] > 0 {
            continue;
        }
        if targets.contains(w) {
            path.push(w);
            let r = visit(path);
            path.pop();
            r?;
        } else if through.contains(w) {
            next.push(w);
        }
    }
    if next.is_empty() {
        return ControlFlow::Continue(());
    }
    mark(g, last, blocked, 1);
    // Every target is now blocked: no continuation can end anywhere.
    if targets.ones().all(|t| blocked[t] > 0) {
        mark(g, last, blocked, -1);
        return ControlFlow::Continue(());
    }
    for w in next {
        path.push(w);
        let r = grow(g, targets, through, blocked, path, visit);
        path.pop();
        if r.is_break() {
            mark(g, last, blocked, -1);
            return r;
        }
    }
    mark(g, last, blocked, -1);
    ControlFlow::Continue(())
}

fn mark(g: &Graph, v: usize, blocked: &mut [u32], delta: i32) {
    let apply = |x: &mut u32| *x = (*x as i32 + delta) as u32;
    apply(&mut blocked[v]);
    for &w in g.neighbors(v) {
        apply(&mut blocked[w]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect(g: &Graph, s: usize, targets: &[usize], through: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = Vec::new();
        let _ = for_each_induced_path::<()>(
            g,
            s,
            &g.bits_of(targets),
            &g.bits_of(through),
            &mut |p| {
                seen.push(p.to_vec());
                ControlFlow::Continue(())
            },
        );
        seen
    }

    #[test]
    fn induced_path_enumeration_on_a_cycle() {
        let g = Graph::cycle(6);
        assert_eq!(
            collect(&g, 0, &[3], &[1, 2, 4, 5]),
            vec![vec![0, 1, 2, 3], vec![0, 5, 4, 3]]
        );
    }

    #[test]
    fn paths_with_chords_are_skipped() {
        // 0-1-2-3 with chord 0-2: the only induced 0..3 path is 0-2-3.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 2)]).unwrap();
        assert_eq!(collect(&g, 0, &[3], &[1, 2]), vec![vec![0, 2, 3]]);
    }

    #[test]
    fn several_targets() {
        let g = Graph::path(5);
        assert_eq!(
            collect(&g, 0, &[2, 4], &[1, 3]),
            vec![vec![0, 1, 2]]
        );
        assert_eq!(
            collect(&g, 0, &[1, 4], &[2, 3]),
            vec![vec![0, 1]]
        );
    }
}
