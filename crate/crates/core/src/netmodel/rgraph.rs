use super::network::ReactionNetwork;
use petgraph::algo::{connected_components, tarjan_scc};
use petgraph::graph::DiGraph;

/// Reaction influence graph: `i → j` when a species changed by `i` can affect the rate of `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RGraph {
    pub nodes: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub scc_count: usize,
    /// Weak connectivity.
    pub connected: bool,
    /// Weakly connected components as sorted reaction index lists, ordered by least member.
    pub components: Vec<Vec<usize>>,
}

impl RGraph {
    pub fn strongly_connected(&self) -> bool {
        self.scc_count == 1
    }
}

pub fn r_graph(net: &ReactionNetwork) -> RGraph {
    let m = net.n_reactions();
    let supports: Vec<Vec<usize>> = net.reactions().iter().map(|r| r.support()).collect();
    let kinetic: Vec<Vec<usize>> = net.reactions().iter().map(|r| r.kinetic_coords()).collect();
    let mut g = DiGraph::<usize, ()>::with_capacity(m, 0);
    let idx: Vec<_> = (0..m).map(|j| g.add_node(j)).collect();
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i != j && supports[i].iter().any(|s| kinetic[j].contains(s)) {
                edges.push((i, j));
                g.add_edge(idx[i], idx[j], ());
            }
        }
    }
    let scc_count = tarjan_scc(&g).len();
    let ncomp = connected_components(&g);
    // Union-find over the edge list gives the weak components themselves.
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in &edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for j in 0..m {
        let r = find(&mut parent, j);
        match roots.iter().position(|&x| x == r) {
            Some(k) => components[k].push(j),
            None => {
                roots.push(r);
                components.push(vec![j]);
            }
        }
    }
    debug_assert_eq!(components.len(), ncomp);
    RGraph {
        nodes: (0..m).collect(),
        edges,
        scc_count,
        connected: ncomp <= 1,
        components,
    }
}
