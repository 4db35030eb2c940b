//! Cliques of a transitive relation and the order they inherit.

use crate::logic::{Distinguished, Structure};

use super::CliqueError;

/// How two elements sit relative to `t`: identical, in one clique, or in
/// distinct cliques ordered one way, the other, or not at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderAtom {
    Same,
    Equiv,
    Less,
    Greater,
    Incomparable,
}

impl std::fmt::Display for OrderAtom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OrderAtom::Same => "=",
            OrderAtom::Equiv => "≡",
            OrderAtom::Less => "<",
            OrderAtom::Greater => ">",
            OrderAtom::Incomparable => "∼",
        })
    }
}

pub fn order_atom(a: &Structure, x: usize, y: usize) -> OrderAtom {
    if x == y {
        return OrderAtom::Same;
    }
    match (a.dist(x, y), a.dist(y, x)) {
        (true, true) => OrderAtom::Equiv,
        (true, false) => OrderAtom::Less,
        (false, true) => OrderAtom::Greater,
        (false, false) => OrderAtom::Incomparable,
    }
}

/// The partition of a domain into `T`-cliques together with `<_T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueDecomposition {
    /// Members of each clique in increasing order; cliques are numbered by
    /// their least member.
    pub cliques: Vec<Vec<usize>>,
    pub clique_of: Vec<usize>,
    /// `order[i][j]` iff clique `i` lies `<_T` below clique `j`.
    pub order: Vec<Vec<bool>>,
}

impl CliqueDecomposition {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.order[i][j]
    }

    pub fn largest(&self) -> usize {
        self.cliques.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Splits a transitive structure into its cliques.
///
/// Two distinct elements share a clique iff `t` holds both ways between
/// them; every other element is a singleton clique. The induced order on
/// cliques is checked to be a strict partial order.
pub fn cliques_of(a: &Structure) -> Result<CliqueDecomposition, CliqueError> {
    if a.signature().distinguished() != Distinguished::Transitive {
        return Err(CliqueError::NotTransitive("the signature has no `t`".into()));
    }
    if let Some(v) = a.check_distinguished().first() {
        return Err(CliqueError::NotTransitive(v.to_string()));
    }
    let n = a.size();
    let mut clique_of = vec![usize::MAX; n];
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if clique_of[x] != usize::MAX {
            continue;
        }
        let id = cliques.len();
        let members: Vec<usize> = (0..n)
            .filter(|&y| y == x || (a.dist(x, y) && a.dist(y, x)))
            .collect();
        for &y in &members {
            clique_of[y] = id;
        }
        cliques.push(members);
    }
    let k = cliques.len();
    let mut order = vec![vec![false; k]; k];
    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            let (x, y) = (cliques[i][0], cliques[j][0]);
            order[i][j] = a.dist(x, y);
        }
    }
    let d = CliqueDecomposition { cliques, clique_of, order };
    for i in 0..k {
        for j in 0..k {
            if !d.order[i][j] {
                continue;
            }
            if d.order[j][i] {
                return Err(CliqueError::Internal(format!("cliques {i} and {j} are ordered both ways")));
            }
            if let Some(l) = (0..k).find(|&l| d.order[j][l] && !d.order[i][l]) {
                return Err(CliqueError::Internal(format!("the clique order is not transitive at {i}, {j}, {l}")));
            }
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Signature;
    use proptest::prelude::*;

    fn trans(n: usize, edges: &[(usize, usize)]) -> Structure {
        let mut s = Structure::new(Signature::empty(Distinguished::Transitive), n);
        for &(x, y) in edges {
            s.set_dist(x, y, true);
        }
        s
    }

    #[test]
    fn loops_and_cycles() {
        // {0,1} a clique with loops, 2 a reflexive singleton above, 3 isolated
        let a = trans(4, &[(0, 1), (1, 0), (0, 0), (1, 1), (0, 2), (1, 2), (2, 2)]);
        let d = cliques_of(&a).unwrap();
        assert_eq!(d.cliques, vec![vec![0, 1], vec![2], vec![3]]);
        assert!(d.less(0, 1) && !d.less(1, 0) && !d.less(0, 2));
        assert_eq!(order_atom(&a, 0, 1), OrderAtom::Equiv);
        assert_eq!(order_atom(&a, 2, 1), OrderAtom::Greater);
        assert_eq!(order_atom(&a, 3, 3), OrderAtom::Same);
        assert_eq!(order_atom(&a, 3, 0), OrderAtom::Incomparable);
    }

    #[test]
    fn rejects_non_transitive() {
        assert!(cliques_of(&trans(3, &[(0, 1), (1, 2)])).is_err());
    }

    /// Transitive closure of a random relation.
    pub(crate) fn random_transitive(n: usize, edges: &[bool]) -> Structure {
        let mut s = Structure::new(Signature::empty(Distinguished::Transitive), n);
        for x in 0..n {
            for y in 0..n {
                s.set_dist(x, y, edges[x * n + y]);
            }
        }
        for k in 0..n {
            for x in 0..n {
                for y in 0..n {
                    if s.dist(x, k) && s.dist(k, y) {
                        s.set_dist(x, y, true);
                    }
                }
            }
        }
        s
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn cliques_are_strong_components(
            (n, edges) in (1usize..9).prop_flat_map(|n| (Just(n), prop::collection::vec(prop::bool::weighted(0.2), n * n)))
        ) {
            let a = random_transitive(n, &edges);
            let mut g = petgraph::graph::DiGraph::<(), ()>::new();
            let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
            for x in 0..n {
                for y in 0..n {
                    if a.dist(x, y) {
                        g.add_edge(nodes[x], nodes[y], ());
                    }
                }
            }
            let mut sccs: Vec<Vec<usize>> = petgraph::algo::tarjan_scc(&g)
                .into_iter()
                .map(|c| { let mut v: Vec<usize> = c.into_iter().map(|i| i.index()).collect(); v.sort_unstable(); v })
                .collect();
            sccs.sort();
            let d = cliques_of(&a).unwrap();
            let mut ours = d.cliques.clone();
            ours.sort();
            prop_assert_eq!(ours, sccs);
        }
    }
}
