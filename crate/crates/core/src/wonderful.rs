//! Building sets, nested sets and blowup orders on a strata poset.
//!
//! Everything works on indices into a [`StrataPoset`]. The arrangement `Λ`
//! is the set of all strata except the whole variety. Intersections are
//! taken component by component, so "their intersection is `Λᵢ`" reads as
//! "`Λᵢ` is a component of their intersection".

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::strata::StrataPoset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WonderfulError {
    #[error("more than {0} nested sets")]
    CapExceeded(usize),
    #[error("initial segment of length {0} is not building")]
    NotBuilding(usize),
    #[error("stratum {0} is not in the arrangement")]
    NotInArrangement(usize),
}

/// `Λ`: every stratum but the whole variety.
pub fn arrangement_elements(p: &StrataPoset) -> Vec<usize> {
    (0..p.len()).filter(|&i| i != p.top()).collect()
}

/// Codimensions add up along every component of the intersection. An empty
/// intersection counts as transversal.
pub fn is_transversal(p: &StrataPoset, items: &[usize]) -> bool {
    let total: usize = items.iter().map(|&i| p.codim(i)).sum();
    p.intersect_all(items).into_iter().all(|c| p.codim(c) == total)
}

/// Minimal elements of `{ g ∈ G : x ⊆ g }`.
pub fn g_factors(p: &StrataPoset, g: &BTreeSet<usize>, x: usize) -> Vec<usize> {
    let above: Vec<usize> = g.iter().copied().filter(|&a| p.leq(x, a)).collect();
    above
        .iter()
        .copied()
        .filter(|&a| !above.iter().any(|&b| p.lt(b, a)))
        .collect()
}

fn is_factored_by(p: &StrataPoset, factors: &[usize], x: usize) -> bool {
    is_transversal(p, factors) && p.intersect_all(factors).contains(&x)
}

/// Building condition on an explicit `Λ`.
pub fn is_building_in(p: &StrataPoset, g: &BTreeSet<usize>, lambda: &[usize]) -> bool {
    lambda
        .iter()
        .filter(|x| !g.contains(x))
        .all(|&x| is_factored_by(p, &g_factors(p, g, x), x))
}

pub fn is_building(p: &StrataPoset, g: &BTreeSet<usize>) -> bool {
    is_building_in(p, g, &arrangement_elements(p))
}

/// Greedy from the top: a stratum is kept unless the strata already kept
/// above it factor it transversally.
pub fn minimal_building_set(p: &StrataPoset) -> BTreeSet<usize> {
    let mut order = arrangement_elements(p);
    order.sort_by_key(|&i| std::cmp::Reverse(p.dim(i)));
    let mut g = BTreeSet::new();
    for x in order {
        if !is_factored_by(p, &g_factors(p, &g, x), x) {
            g.insert(x);
        }
    }
    g
}

/// Closure of `items` under taking components of pairwise intersections.
pub fn induced_arrangement(p: &StrataPoset, items: &[usize]) -> Vec<usize> {
    let mut set = BTreeSet::new();
    close_with(p, &mut set, items);
    set.into_iter().collect()
}

fn close_with(p: &StrataPoset, set: &mut BTreeSet<usize>, items: &[usize]) {
    let mut queue: Vec<usize> = items.iter().copied().filter(|&x| set.insert(x)).collect();
    while let Some(x) = queue.pop() {
        let current: Vec<usize> = set.iter().copied().collect();
        for y in current {
            for c in p.intersect(x, y) {
                if set.insert(c) {
                    queue.push(c);
                }
            }
        }
    }
}

/// Orders `G` by nondecreasing dimension (ties by stratum key) and checks
/// that each initial segment is building for the arrangement it generates.
pub fn blowup_schedule(p: &StrataPoset, g: &BTreeSet<usize>) -> Result<Vec<usize>, WonderfulError> {
    if let Some(&x) = g.iter().find(|&&x| x == p.top() || x >= p.len()) {
        return Err(WonderfulError::NotInArrangement(x));
    }
    let mut order: Vec<usize> = g.iter().copied().collect();
    order.sort_by(|&a, &b| p.dim(a).cmp(&p.dim(b)).then_with(|| p.stratum(a).cmp(p.stratum(b))));
    let mut induced = BTreeSet::new();
    let mut prefix = BTreeSet::new();
    for (k, &x) in order.iter().enumerate() {
        prefix.insert(x);
        close_with(p, &mut induced, &[x]);
        let lambda: Vec<usize> = induced.iter().copied().collect();
        if !is_building_in(p, &prefix, &lambda) {
            return Err(WonderfulError::NotBuilding(k + 1));
        }
    }
    Ok(order)
}

/// `T ⊆ G` is nested: its minimal elements, if more than one, are the
/// `G`-factors of some element of `Λ`, and recursively above each.
pub fn is_nested(p: &StrataPoset, g: &BTreeSet<usize>, t: &[usize]) -> bool {
    let t: BTreeSet<usize> = t.iter().copied().collect();
    if !t.is_subset(g) {
        return false;
    }
    nested_rec(p, g, &t)
}

fn nested_rec(p: &StrataPoset, g: &BTreeSet<usize>, t: &BTreeSet<usize>) -> bool {
    let minimal: Vec<usize> = t
        .iter()
        .copied()
        .filter(|&a| !t.iter().any(|&b| p.lt(b, a)))
        .collect();
    if minimal.len() > 1 {
        let want: BTreeSet<usize> = minimal.iter().copied().collect();
        let factored = p
            .intersect_all(&minimal)
            .into_iter()
            .any(|x| g_factors(p, g, x).into_iter().collect::<BTreeSet<_>>() == want);
        if !factored {
            return false;
        }
    }
    minimal.iter().all(|&a| {
        let upper: BTreeSet<usize> = t.iter().copied().filter(|&b| p.lt(a, b)).collect();
        nested_rec(p, g, &upper)
    })
}

/// All nested subsets of `G`, the empty set included, in lexicographic
/// order of sorted index lists. Fails once more than `cap` are found.
pub fn nested_sets(p: &StrataPoset, g: &BTreeSet<usize>, cap: usize) -> Result<Vec<Vec<usize>>, WonderfulError> {
    let elems: Vec<usize> = g.iter().copied().collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    // nested sets are closed under subsets, so extension can prune
    fn dfs(
        p: &StrataPoset,
        g: &BTreeSet<usize>,
        elems: &[usize],
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<(), WonderfulError> {
        out.push(current.clone());
        if out.len() > cap {
            return Err(WonderfulError::CapExceeded(cap));
        }
        for i in start..elems.len() {
            current.push(elems[i]);
            if is_nested(p, g, current) {
                dfs(p, g, elems, i + 1, current, out, cap)?;
            }
            current.pop();
        }
        Ok(())
    }
    dfs(p, g, &elems, 0, &mut current, &mut out, cap)?;
    Ok(out)
}

/// The nested set complex as an undirected graph on `G`: an edge joins two
/// elements that form a nested pair.
pub fn nested_complex_dot(p: &StrataPoset, g: &BTreeSet<usize>, sets: &[Vec<usize>]) -> String {
    let mut s = String::from("graph nested {\n");
    for &x in g {
        let _ = writeln!(s, "  s{} [label=\"{} (dim {})\"];", x, p.label(x).replace('"', "'"), p.dim(x));
    }
    for set in sets.iter().filter(|t| t.len() == 2) {
        let _ = writeln!(s, "  s{} -- s{};", set[0], set[1]);
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{xi_of, Arrangement};
    use crate::fan::make_orthant_fan;
    use crate::ivec;
    use crate::strata::build_strata_poset;
    use crate::subdiv::resolve_all;

    fn axes() -> StrataPoset {
        let a = Arrangement::divisorial(2, &[ivec![1, 0], ivec![0, 1]]).unwrap();
        build_strata_poset(&make_orthant_fan(2), &a).unwrap()
    }

    fn diagonals() -> StrataPoset {
        let a = Arrangement::divisorial(2, &[ivec![1, 1], ivec![1, -1]]).unwrap();
        let (f, _) = resolve_all(&make_orthant_fan(2), &xi_of(&a)).unwrap();
        build_strata_poset(&f, &a).unwrap()
    }

    fn find_layer(p: &StrataPoset, chars: &[crate::lattice::IntVector]) -> usize {
        (0..p.len())
            .find(|&i| p.stratum(i).cone.dim() == 0 && p.layer_of(i).characters() == chars)
            .unwrap()
    }

    #[test]
    fn transversality() {
        let p = axes();
        let x = find_layer(&p, &[ivec![1, 0]]);
        let y = find_layer(&p, &[ivec![0, 1]]);
        assert!(is_transversal(&p, &[x, y]));
        assert!(!is_transversal(&p, &[x, x]));
        assert!(is_transversal(&p, &[p.top(), p.top()]));

        let p = diagonals();
        let a = find_layer(&p, &[ivec![1, 1]]);
        let b = find_layer(&p, &[ivec![1, -1]]);
        assert_eq!(p.intersect(a, b).len(), 2);
        assert!(is_transversal(&p, &[a, b]));
    }

    #[test]
    fn building_sets() {
        let p = axes();
        let all: BTreeSet<usize> = arrangement_elements(&p).into_iter().collect();
        assert!(is_building(&p, &all));
        let g = minimal_building_set(&p);
        assert!(is_building(&p, &g));
        assert_eq!(g.len(), 6);
        assert!(g.iter().all(|&i| p.dim(i) == 1));
        for &x in &g {
            let mut smaller = g.clone();
            smaller.remove(&x);
            assert!(!is_building(&p, &smaller));
        }
    }

    #[test]
    fn non_product_stratum_is_needed() {
        // three lines through one point: the point is not a transversal intersection
        let a = Arrangement::divisorial(2, &[ivec![1, 0], ivec![0, 1], ivec![1, 1]]).unwrap();
        let (f, _) = resolve_all(&make_orthant_fan(2), &xi_of(&a)).unwrap();
        let p = build_strata_poset(&f, &a).unwrap();
        let g = minimal_building_set(&p);
        assert!(is_building(&p, &g));
        let point = (0..p.len())
            .find(|&i| p.dim(i) == 0 && p.layer_of(i).codim() == 2 && p.layer_of(i).values()[0].is_identity())
            .unwrap();
        assert!(g.contains(&point));
        let mut without = g.clone();
        without.remove(&point);
        assert!(!is_building(&p, &without));
    }

    #[test]
    fn schedules() {
        let p = diagonals();
        let g = minimal_building_set(&p);
        let s = blowup_schedule(&p, &g).unwrap();
        assert_eq!(s.len(), g.len());
        for w in s.windows(2) {
            assert!(p.dim(w[0]) <= p.dim(w[1]));
        }
        let one: BTreeSet<usize> = [s[0]].into();
        assert_eq!(blowup_schedule(&p, &one).unwrap(), vec![s[0]]);
        let all: BTreeSet<usize> = arrangement_elements(&p).into_iter().collect();
        let s = blowup_schedule(&p, &all).unwrap();
        assert!(s.iter().take_while(|&&i| p.dim(i) == 0).count() > 0);
    }

    #[test]
    fn nestedness() {
        let p = axes();
        let g = minimal_building_set(&p);
        let x = find_layer(&p, &[ivec![1, 0]]);
        let y = find_layer(&p, &[ivec![0, 1]]);
        assert!(is_nested(&p, &g, &[x]));
        assert!(is_nested(&p, &g, &[x, y]));
        // x = 1 and the divisor of the ray (1,0) are disjoint
        let dx = (0..p.len())
            .find(|&i| p.layer_of(i).is_top() && p.fan().cone_vectors(&p.stratum(i).cone) == vec![ivec![1, 0]])
            .unwrap();
        assert!(g.contains(&dx));
        assert!(!is_nested(&p, &g, &[x, dx]));
        let sets = nested_sets(&p, &g, 10_000).unwrap();
        assert!(sets.contains(&vec![]));
        for t in &sets {
            for k in 0..t.len() {
                let mut sub = t.clone();
                sub.remove(k);
                assert!(is_nested(&p, &g, &sub));
            }
        }
        assert!(matches!(nested_sets(&p, &g, 3), Err(WonderfulError::CapExceeded(3))));
    }

    #[test]
    fn chains_and_singletons() {
        let p = axes();
        let x = find_layer(&p, &[ivec![1, 0]]);
        let on_x = (0..p.len())
            .find(|&i| p.lt(i, x) && p.dim(i) == 0 && !p.layer_of(i).is_top() && p.layer_of(i).codim() == 1)
            .unwrap();
        let g: BTreeSet<usize> = [x, on_x].into();
        let sets = nested_sets(&p, &g, 100).unwrap();
        assert_eq!(sets.len(), 4);
        let single: BTreeSet<usize> = [x].into();
        assert_eq!(nested_sets(&p, &single, 100).unwrap(), vec![vec![], vec![x]]);
    }
}
